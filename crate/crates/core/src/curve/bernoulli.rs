use num_bigint::BigInt;

use crate::algebra::rational::{self, Coefficient};
use crate::error::{Error, Result};

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `B_k` for even `k ≥ 2`, from `x e^x / (e^x - 1) = Σ B_n x^n / n!`.
pub fn bernoulli(k: i64) -> Result<Coefficient> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::BernoulliIndex(k));
    }
    Ok(bernoulli_table(k as usize).swap_remove(k as usize))
}

/// `B_0 ..= B_n` with `B_1 = +1/2`.
pub fn bernoulli_table(n: usize) -> Vec<Coefficient> {
    // Σ_{j<m+1} C(m+1, j) B_j = 0 gives the B_1 = -1/2 table; flip B_1 afterwards.
    let mut b: Vec<Coefficient> = vec![rational::one()];
    for m in 1..=n as u64 {
        let mut acc = rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Coefficient::from_integer(binomial(m + 1, j as u64)) * bj;
        }
        b.push(-acc / rational::int(m as i64 + 1));
    }
    if n >= 1 {
        b[1] = rational::q(1, 2);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::algebra::series::ZSeries;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn generating_function() {
        // x / (1 - e^{-x}) = Σ B_n x^n / n!  with B_1 = +1/2
        let k = 9;
        let e_minus = ZSeries::from_fn(k, |n| {
            let f = Coefficient::from_integer(rational::factorial(n as u64 + 1));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            rational::int(sign) / f
        });
        let gen = e_minus.recip().unwrap();
        let table = bernoulli_table(k as usize);
        for n in 0..=k {
            let f = Coefficient::from_integer(rational::factorial(n as u64));
            assert_eq!(gen.coeff(n), &table[n as usize] / f, "n = {n}");
        }
    }
}
