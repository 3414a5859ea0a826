//! Intersection numbers of ψ-classes (Kontsevich–Witten) and of ψ-classes
//! against Θ-classes (Brézin–Gross–Witten), from their Virasoro recursions.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::rational::{self, double_factorial, q, Coefficient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    KontsevichWitten,
    BrezinGrossWitten,
}

fn df(n: i64) -> Coefficient {
    Coefficient::from_integer(double_factorial(n))
}

/// Memoized `⟨τ_{a_1} … τ_{a_n}⟩_g`.
pub struct Intersections {
    base: Base,
    memo: HashMap<(u32, Vec<u8>), Coefficient>,
}

impl Intersections {
    pub fn new(base: Base) -> Self {
        Self { base, memo: HashMap::new() }
    }

    /// Genus for which the dimension constraint holds, if any.
    pub fn genus_for(&self, a: &[u8]) -> Option<u32> {
        let n = a.len() as i64;
        let sum: i64 = a.iter().map(|x| *x as i64).sum();
        match self.base {
            Base::KontsevichWitten => {
                let three_g = sum + 3 - n;
                (three_g >= 0 && three_g % 3 == 0).then_some((three_g / 3) as u32)
            }
            Base::BrezinGrossWitten => Some((sum + 1) as u32),
        }
    }

    fn admissible(&self, g: u32, a: &[u8]) -> bool {
        let n = a.len() as i64;
        n >= 1 && 2 * g as i64 - 2 + n > 0 && self.genus_for(a) == Some(g)
    }

    pub fn correlator(&mut self, g: u32, a: &[u8]) -> Coefficient {
        if !self.admissible(g, a) {
            return rational::zero();
        }
        let mut key: Vec<u8> = a.to_vec();
        key.sort_unstable_by(|x, y| y.cmp(x));
        if let Some(v) = self.memo.get(&(g, key.clone())) {
            return v.clone();
        }
        let v = self.compute(g, &key);
        self.memo.insert((g, key), v.clone());
        v
    }

    fn compute(&mut self, g: u32, a: &[u8]) -> Coefficient {
        let kw = self.base == Base::KontsevichWitten;
        match (kw, g, a) {
            (true, 0, [0, 0, 0]) => return rational::one(),
            (true, 1, [1]) => return q(1, 24),
            (false, 1, [0]) => return q(1, 8),
            _ => {}
        }
        let a1 = a[0] as i64;
        let rest = &a[1..];
        // shift of the merged index and of the genus-reduction budget
        let (merge_shift, split_total) = if kw { (-1, a1 - 2) } else { (0, a1 - 1) };
        let mut acc = rational::zero();
        for j in 0..rest.len() {
            let aj = rest[j] as i64;
            let merged = a1 + aj + merge_shift;
            if merged < 0 {
                continue;
            }
            let num = df(2 * a1 + 2 * aj + 2 * merge_shift + 1);
            let den = df(2 * aj - 1);
            let mut next: Vec<u8> = Vec::with_capacity(rest.len());
            next.push(merged as u8);
            next.extend(rest.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, x)| *x));
            let c = self.correlator(g, &next);
            if !c.is_zero() {
                acc += num / den * c;
            }
        }
        if split_total >= 0 {
            let half = q(1, 2);
            for i in 0..=split_total {
                let j = split_total - i;
                let w = df(2 * i + 1) * df(2 * j + 1) * &half;
                let mut inner = rational::zero();
                if g >= 1 {
                    let mut next = vec![i as u8, j as u8];
                    next.extend_from_slice(rest);
                    inner += self.correlator(g - 1, &next);
                }
                let m = rest.len();
                for mask in 0..(1u32 << m) {
                    let mut left = vec![i as u8];
                    let mut right = vec![j as u8];
                    for (bit, x) in rest.iter().enumerate() {
                        if mask & (1 << bit) != 0 {
                            left.push(*x);
                        } else {
                            right.push(*x);
                        }
                    }
                    let (Some(g1), Some(g2)) = (self.genus_for(&left), self.genus_for(&right)) else {
                        continue;
                    };
                    if g1 + g2 != g {
                        continue;
                    }
                    let l = self.correlator(g1, &left);
                    if l.is_zero() {
                        continue;
                    }
                    let r = self.correlator(g2, &right);
                    inner += l * r;
                }
                if !inner.is_zero() {
                    acc += w * inner;
                }
            }
        }
        acc / df(2 * a1 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kontsevich_witten_values() {
        let mut kw = Intersections::new(Base::KontsevichWitten);
        assert_eq!(kw.correlator(0, &[0, 0, 0]), q(1, 1));
        assert_eq!(kw.correlator(0, &[1, 0, 0, 0]), q(1, 1));
        assert_eq!(kw.correlator(1, &[1]), q(1, 24));
        assert_eq!(kw.correlator(1, &[0, 2]), q(1, 24));
        assert_eq!(kw.correlator(1, &[1, 1]), q(1, 24));
        assert_eq!(kw.correlator(2, &[4]), q(1, 1152));
        assert_eq!(kw.correlator(3, &[7]), q(1, 82944));
        assert_eq!(kw.correlator(2, &[2, 3]), q(29, 5760));
    }

    #[test]
    fn brezin_gross_witten_values() {
        let mut b = Intersections::new(Base::BrezinGrossWitten);
        assert_eq!(b.correlator(1, &[0]), q(1, 8));
        assert_eq!(b.correlator(1, &[0, 0]), q(1, 8));
        assert_eq!(b.correlator(1, &[0, 0, 0]), q(2, 8));
        assert_eq!(b.correlator(2, &[1]), q(3, 128));
    }
}
