use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::{self, q, Coefficient};
use crate::error::{Error, Result};

/// A parameter point `(q, p)` together with a chosen square root `s` of `p + q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveParams {
    #[serde(with = "rational::serde_str")]
    q: Coefficient,
    #[serde(with = "rational::serde_str")]
    p: Coefficient,
    #[serde(with = "rational::serde_str")]
    s: Coefficient,
}

impl CurveParams {
    pub fn new(q: Coefficient, p: Coefficient, s: Coefficient) -> Result<Self> {
        let sum = &p + &q;
        if sum.is_zero() {
            return Err(Error::ExcludedLocus);
        }
        if &s * &s != sum {
            return Err(Error::BadSquareRoot {
                s_squared: rational::format(&(&s * &s)),
                sum: rational::format(&sum),
            });
        }
        Ok(Self { q, p, s })
    }

    pub fn from_ints(q_: i64, p_: i64, s_: i64) -> Result<Self> {
        Self::new(q(q_, 1), q(p_, 1), q(s_, 1))
    }

    pub fn parse(q_: &str, p_: &str, s_: &str) -> Result<Self> {
        Self::new(rational::parse(q_)?, rational::parse(p_)?, rational::parse(s_)?)
    }

    pub fn q(&self) -> &Coefficient {
        &self.q
    }

    pub fn p(&self) -> &Coefficient {
        &self.p
    }

    pub fn s(&self) -> &Coefficient {
        &self.s
    }

    /// The same point with the other square root.
    pub fn flipped(&self) -> Self {
        Self { q: self.q.clone(), p: self.p.clone(), s: -&self.s }
    }

    /// `p ↔ q` with the same `s`.
    pub fn swapped(&self) -> Self {
        Self { q: self.p.clone(), p: self.q.clone(), s: self.s.clone() }
    }

    /// Miwa parameters `(-p, -q, pq/(p+q))`.
    pub fn miwa(&self) -> [Coefficient; 3] {
        let sum = &self.p + &self.q;
        [-&self.p, -&self.q, &self.p * &self.q / sum]
    }

    /// Short label like `q=1,p=3,s=2`.
    pub fn label(&self) -> String {
        format!(
            "q={},p={},s={}",
            rational::format(&self.q),
            rational::format(&self.p),
            rational::format(&self.s)
        )
    }

    /// File-name friendly label.
    pub fn slug(&self) -> String {
        format!(
            "q{}_p{}_s{}",
            rational::format(&self.q),
            rational::format(&self.p),
            rational::format(&self.s)
        )
        .replace('/', "o")
        .replace('-', "m")
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", rational::format(&self.q), rational::format(&self.p), rational::format(&self.s))
    }
}

/// The shipped parameter points.
pub fn catalog() -> Vec<CurveParams> {
    [(1, 3, 2), (-1, 2, 1), (0, 4, 2), (4, 0, 2), (3, 1, 2)]
        .into_iter()
        .map(|(a, b, c)| CurveParams::from_ints(a, b, c).expect("catalog point"))
        .collect()
}
