use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::build::{build_from_denominator, CurveSeries};
use crate::algebra::rational::{self, double_factorial, q, Coefficient};
use crate::algebra::series::ZSeries;
use crate::error::{Error, Result};

/// Square matrix of rationals with an index offset (`first` is the label of row 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    first: usize,
    entries: Vec<Vec<Coefficient>>,
}

impl Matrix {
    fn zeros(first: usize, size: usize) -> Self {
        Self { first, entries: vec![vec![rational::zero(); size]; size] }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn first_index(&self) -> usize {
        self.first
    }

    /// Entry with labels `(k, m)`.
    pub fn get(&self, k: usize, m: usize) -> &Coefficient {
        &self.entries[k - self.first][m - self.first]
    }

    fn set(&mut self, k: usize, m: usize, v: Coefficient) {
        self.entries[k - self.first][m - self.first] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// Labels `(k, m, value)` of nonzero entries.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Coefficient)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push((i + self.first, j + self.first, v.clone()));
                }
            }
        }
        out
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(rational::format).collect())
            .collect();
        let mut st = s.serialize_struct("Matrix", 2)?;
        st.serialize_field("firstIndex", &self.first)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// Grunsky coefficients `v_{km}`, `1 ≤ k, m ≤ size`.
pub type GrunskyMatrix = Matrix;
/// Givental coefficients `V_{kl}`, `0 ≤ k, l < size`.
pub type GiventalMatrix = Matrix;

/// Dense bivariate series `Σ a[i][j] u^i w^j` truncated at total degree `n`.
struct Bivariate {
    n: usize,
    a: Vec<Vec<Coefficient>>,
}

impl Bivariate {
    fn zero(n: usize) -> Self {
        Self { n, a: (0..=n).map(|i| vec![rational::zero(); n + 1 - i]).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..=n - i - j {
                    for l in 0..=n - i - j - k {
                        let y = &other.a[k][l];
                        if !y.is_zero() {
                            out.a[i + k][j + l] += x * y;
                        }
                    }
                }
            }
        }
        out
    }

    /// `log(1 + self)` for a series with zero constant term.
    fn log1p(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        let mut power = Self::zero(n);
        power.a[0][0] = rational::one();
        for m in 1..=n {
            power = power.mul(self);
            let c = q(if m % 2 == 1 { 1 } else { -1 }, m as i64);
            for i in 0..=n {
                for j in 0..=n - i {
                    if !power.a[i][j].is_zero() {
                        out.a[i][j] += &power.a[i][j] * &c;
                    }
                }
            }
        }
        out
    }
}

/// `v_{km} = [η₁^k η₂^m] log((h(η₁) - h(η₂)) / (η₁ - η₂))`.
pub fn grunsky_matrix(h: &ZSeries, size: usize) -> Result<GrunskyMatrix> {
    let n = 2 * size;
    if (h.order() as usize) < n + 1 {
        return Err(Error::InsufficientOrder { needed: n as i64 + 1, available: h.order() as i64 });
    }
    if !h.coeff(0).is_zero() {
        return Err(Error::NonzeroConstant("grunsky"));
    }
    if !h.coeff(1).is_one() {
        return Err(Error::BadNormalization("grunsky"));
    }
    // (h(a) - h(b)) / (a - b) - 1 = Σ_{N≥2} h_N Σ_{i+j=N-1} a^i b^j
    let mut a = Bivariate::zero(n);
    for big_n in 2..=n + 1 {
        let c = h.coeff(big_n as i32);
        if c.is_zero() {
            continue;
        }
        for i in 0..big_n {
            a.a[i][big_n - 1 - i] += &c;
        }
    }
    let log = a.log1p();
    let mut out = Matrix::zeros(1, size);
    for k in 1..=size {
        for m in 1..=size {
            out.set(k, m, log.a[k][m].clone());
        }
    }
    Ok(out)
}

/// `V_{kl} = [w^k z^l] (1 - R(-w) R(-z)) / (w + z)`.
pub fn givental_v_matrix(r: &ZSeries, size: usize) -> Result<GiventalMatrix> {
    if !r.coeff(0).is_one() {
        return Err(Error::RNotNormalized);
    }
    let top = 2 * size - 1;
    if (r.order() as usize) < top {
        return Err(Error::InsufficientOrder { needed: top as i64, available: r.order() as i64 });
    }
    let rm = r.reflect();
    let num = |i: usize, j: usize| -> Coefficient {
        let base = if i == 0 && j == 0 { rational::one() } else { rational::zero() };
        base - rm.coeff(i as i32) * rm.coeff(j as i32)
    };
    if !num(0, 0).is_zero() {
        return Err(Error::NotSymplectic);
    }
    // num(i+1, j) = V(i, j) + V(i+1, j-1), solved per total degree from the top row down.
    let mut v = Bivariate::zero(top);
    for d in 0..top {
        for i in (0..=d).rev() {
            let j = d - i;
            let mut val = num(i + 1, j);
            if j >= 1 {
                val -= &v.a[i + 1][j - 1];
            }
            v.a[i][j] = val;
        }
        if num(0, d + 1) != v.a[0][d] {
            return Err(Error::NotSymplectic);
        }
    }
    let mut out = Matrix::zeros(0, size);
    for k in 0..size {
        for l in 0..size {
            out.set(k, l, v.a[k][l].clone());
        }
    }
    Ok(out)
}

fn odd_df(k: usize) -> Coefficient {
    Coefficient::from_integer(double_factorial(2 * k as i64 + 1))
}

/// `V_{km} - (2k+1)!!(2m+1)!! v_{2k+1,2m+1}` for `0 ≤ k, m < size`.
pub fn identification_residual(curve: &CurveSeries, size: usize) -> Result<Matrix> {
    let needed = 2 * (2 * size - 1) + 1;
    if (curve.order as usize) < needed {
        return Err(Error::InsufficientOrder { needed: needed as i64, available: curve.order as i64 });
    }
    let v = givental_v_matrix(&curve.r, size)?;
    let g = grunsky_matrix(&curve.h, 2 * size - 1)?;
    let mut out = Matrix::zeros(0, size);
    for k in 0..size {
        for m in 0..size {
            let gv = g.get(2 * k + 1, 2 * m + 1) * odd_df(k) * odd_df(m);
            out.set(k, m, v.get(k, m) - gv);
        }
    }
    Ok(out)
}

/// Denominator of the negative control: `1 + (5/2) z + z^2 + z^4`.
pub fn perturbed_denominator() -> Vec<Coefficient> {
    vec![rational::one(), q(5, 2), rational::one(), rational::zero(), rational::one()]
}

/// Curve of the negative control, with `R` obtained from the moment transform.
pub fn perturbed_curve(order: i32) -> Result<CurveSeries> {
    build_from_denominator(&perturbed_denominator(), order)
}

/// Identification residual of the negative control. Its `R` is not
/// symplectic, so the quotient by `w + z` is taken by the same triangular
/// solve without the exactness check.
pub fn perturbed_residual(size: usize) -> Result<Matrix> {
    let order = (2 * (2 * size - 1) + 1) as i32;
    let curve = perturbed_curve(order)?;
    let g = grunsky_matrix(&curve.h, 2 * size - 1)?;
    let v = givental_v_matrix_unchecked(&curve.r, size);
    let mut out = Matrix::zeros(0, size);
    for k in 0..size {
        for m in 0..size {
            let gv = g.get(2 * k + 1, 2 * m + 1) * odd_df(k) * odd_df(m);
            out.set(k, m, v.get(k, m) - gv);
        }
    }
    Ok(out)
}

/// The same triangular solve as [`givental_v_matrix`] without the exactness check.
fn givental_v_matrix_unchecked(r: &ZSeries, size: usize) -> Matrix {
    let top = 2 * size - 1;
    let rm = r.reflect();
    let num = |i: usize, j: usize| -> Coefficient {
        let base = if i == 0 && j == 0 { rational::one() } else { rational::zero() };
        base - rm.coeff(i as i32) * rm.coeff(j as i32)
    };
    let mut v = Bivariate::zero(top);
    for d in 0..top {
        for i in (0..=d).rev() {
            let j = d - i;
            let mut val = num(i + 1, j);
            if j >= 1 {
                val -= &v.a[i + 1][j - 1];
            }
            v.a[i][j] = val;
        }
    }
    let mut out = Matrix::zeros(0, size);
    for k in 0..size {
        for l in 0..size {
            out.set(k, l, v.a[k][l].clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::curve::{build_curve, catalog, CurveParams};

    #[test]
    fn grunsky_trivial_and_cubic() {
        assert!(grunsky_matrix(&ZSeries::z(9), 4).unwrap().is_zero());
        let c = q(2, 7);
        let h = ZSeries::new(vec![int(0), int(1), int(0), c.clone()], 9);
        let g = grunsky_matrix(&h, 4).unwrap();
        assert_eq!(g.get(1, 1), &c);
        assert_eq!(g.get(2, 1), &int(0));
    }

    #[test]
    fn givental_trivial_and_first_order() {
        assert!(givental_v_matrix(&ZSeries::one(9), 4).unwrap().is_zero());
        let r = build_curve(&CurveParams::from_ints(1, 3, 2).unwrap(), 12).unwrap().r;
        let v = givental_v_matrix(&r, 6).unwrap();
        assert_eq!(v.get(0, 0), &q(-13, 48));
        assert!(v.is_symmetric());
        let bad = ZSeries::new(vec![int(1), int(1)], 9);
        assert_eq!(givental_v_matrix(&bad, 4), Err(Error::NotSymplectic));
    }

    #[test]
    fn residual_vanishes_on_family() {
        for p in catalog() {
            let c = build_curve(&p, 15).unwrap();
            assert!(identification_residual(&c, 4).unwrap().is_zero(), "{p}");
            assert!(grunsky_matrix(&c.h, 7).unwrap().is_symmetric());
        }
    }

    #[test]
    fn perturbed_control_is_detected() {
        let res = perturbed_residual(4).unwrap();
        let low: Vec<_> = res.nonzero_entries().into_iter().filter(|(k, m, _)| k + m <= 4).collect();
        assert!(!low.is_empty());
        assert_eq!(res.get(0, 1), &int(-1));
    }
}
