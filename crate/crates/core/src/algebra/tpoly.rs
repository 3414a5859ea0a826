//! Weight-truncated sparse polynomials in the times `t_1, t_2, …` (small
//! side) or `T_0, T_1, …` (big side) with [`HbarPoly`] coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use super::hbar::HbarPoly;
use super::rational::{self, Coefficient};
use crate::error::{Error, Result};

/// Which family of times a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// `t_k`, `k ≥ 1`, weight `k`.
    Small,
    /// `T_m`, `m ≥ 0`, weight `2m + 1`.
    Big,
}

impl VarKind {
    pub fn weight(self, index: usize) -> u32 {
        match self {
            VarKind::Small => index as u32,
            VarKind::Big => 2 * index as u32 + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VarKind::Small => "t",
            VarKind::Big => "T",
        }
    }

    /// Smallest legal index.
    pub fn first_index(self) -> usize {
        match self {
            VarKind::Small => 1,
            VarKind::Big => 0,
        }
    }

    /// Largest index whose variable has weight at most `w`.
    pub fn max_index(self, w: u32) -> Option<usize> {
        match self {
            VarKind::Small if w >= 1 => Some(w as usize),
            VarKind::Big if w >= 1 => Some(((w - 1) / 2) as usize),
            _ => None,
        }
    }
}

/// Exponent vector: slot `i` holds the power of the variable with index `i`.
/// Trailing zeros are always trimmed so equal monomials compare equal.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u8; 12]>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        Self::power(index, 1)
    }

    pub fn power(index: usize, e: u8) -> Self {
        let mut m = Self::one();
        if e > 0 {
            m.0.resize(index + 1, 0);
            m.0[index] = e;
        }
        m
    }

    pub fn from_pairs(pairs: &[(usize, u8)]) -> Self {
        let mut m = Self::one();
        for &(i, e) in pairs {
            m = m.mul(&Self::power(i, e));
        }
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u8 {
        self.0.get(index).copied().unwrap_or(0)
    }

    /// `(index, exponent)` pairs with nonzero exponent, by increasing index.
    pub fn vars(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| (i, *e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| *e as u32).sum()
    }

    pub fn weight(&self, kind: VarKind) -> u32 {
        self.vars().map(|(i, e)| kind.weight(i) * e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut out = long.clone();
        for (i, e) in short.0.iter().enumerate() {
            out.0[i] += e;
        }
        out
    }

    pub fn mul_var(&self, index: usize) -> Self {
        let mut out = self.clone();
        if out.0.len() <= index {
            out.0.resize(index + 1, 0);
        }
        out.0[index] += 1;
        out
    }

    /// Lowers the power of `index` by one, returning the old exponent.
    pub fn div_var(&self, index: usize) -> Option<(Self, u8)> {
        let e = self.exponent(index);
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[index] -= 1;
        out.trim();
        Some((out, e))
    }

    /// Componentwise `self ≥ other`.
    pub fn divisible_by(&self, other: &Self) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// `self / other` (requires divisibility).
    pub fn div(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, e) in other.0.iter().enumerate() {
            out.0[i] -= e;
        }
        out.trim();
        out
    }

    /// `Π e_i!`.
    pub fn factorial(&self) -> Coefficient {
        let mut acc = rational::one();
        for (_, e) in self.vars() {
            acc *= Coefficient::from_integer(rational::factorial(e as u64));
        }
        acc
    }

    /// All monomials dividing `self`.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for (i, e) in self.vars() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for m in &out {
                for k in 0..=e {
                    next.push(m.mul(&Monomial::power(i, k)));
                }
            }
            out = next;
        }
        out
    }

    pub fn display(&self, kind: VarKind) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.vars()
            .map(|(i, e)| {
                if e == 1 {
                    format!("{}{}", kind.name(), i)
                } else {
                    format!("{}{}^{}", kind.name(), i, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vars().collect::<Vec<_>>())
    }
}

/// Every monomial of weight `≤ max_weight` in the given kind, including 1.
pub fn monomial_basis(kind: VarKind, max_weight: u32, odd_only: bool) -> Vec<Monomial> {
    let mut out = Vec::new();
    let Some(top) = kind.max_index(max_weight) else {
        return vec![Monomial::one()];
    };
    fn rec(
        kind: VarKind,
        idx: usize,
        first: usize,
        budget: u32,
        odd_only: bool,
        cur: Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if idx < first {
            out.push(cur);
            return;
        }
        let w = kind.weight(idx);
        let allowed = !(odd_only && kind == VarKind::Small && idx % 2 == 0);
        let max_e = if allowed { budget / w } else { 0 };
        for e in 0..=max_e {
            let next = if e == 0 { cur.clone() } else { cur.mul(&Monomial::power(idx, e as u8)) };
            if idx == first {
                out.push(next);
            } else {
                rec(kind, idx - 1, first, budget - e * w, odd_only, next, out);
            }
        }
    }
    let first = kind.first_index();
    rec(kind, top, first, max_weight, odd_only, Monomial::one(), &mut out);
    out.sort();
    out
}

/// Sparse polynomial `Σ c_m(ħ) m` truncated at total weight `max_weight`.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    kind: VarKind,
    max_weight: u32,
    terms: BTreeMap<Monomial, HbarPoly>,
}

impl TPoly {
    pub fn zero(kind: VarKind, max_weight: u32) -> Self {
        Self { kind, max_weight, terms: BTreeMap::new() }
    }

    pub fn constant(kind: VarKind, max_weight: u32, c: HbarPoly) -> Self {
        let mut p = Self::zero(kind, max_weight);
        p.add_term(Monomial::one(), &c);
        p
    }

    pub fn one(kind: VarKind, max_weight: u32) -> Self {
        Self::constant(kind, max_weight, HbarPoly::one())
    }

    /// The single variable with the given index (zero if its weight exceeds the bound).
    pub fn var(kind: VarKind, max_weight: u32, index: usize) -> Self {
        assert!(index >= kind.first_index(), "variable index {index} out of range");
        Self::monomial(kind, max_weight, Monomial::var(index), HbarPoly::one())
    }

    pub fn monomial(kind: VarKind, max_weight: u32, m: Monomial, c: HbarPoly) -> Self {
        let mut p = Self::zero(kind, max_weight);
        p.add_term(m, &c);
        p
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &HbarPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> HbarPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Rational coefficient of `ħ^e · m`.
    pub fn coeff_at(&self, m: &Monomial, e: i32) -> Coefficient {
        self.terms.get(m).map(|c| c.coeff(e)).unwrap_or_else(rational::zero)
    }

    pub fn weight_of(&self, m: &Monomial) -> u32 {
        m.weight(self.kind)
    }

    /// Highest weight actually present.
    pub fn top_weight(&self) -> u32 {
        self.terms.keys().map(|m| m.weight(self.kind)).max().unwrap_or(0)
    }

    /// Adds `c·m`, silently dropping it if `m` is too heavy.
    pub fn add_term(&mut self, m: Monomial, c: &HbarPoly) {
        if c.is_zero() || m.weight(self.kind) > self.max_weight {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scalar_term(&mut self, m: Monomial, e: i32, c: &Coefficient) {
        if c.is_zero() || m.weight(self.kind) > self.max_weight {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        slot.add_term(e, c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_kind(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::MixedKinds);
        }
        Ok(())
    }

    pub fn add_assign_scaled(&mut self, other: &Self, by: &HbarPoly) -> Result<()> {
        self.check_kind(other)?;
        if by.is_zero() {
            return Ok(());
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(c * by));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        let mut out = self.clone();
        out.max_weight = self.max_weight.min(other.max_weight);
        let (kind, w) = (out.kind, out.max_weight);
        out.retain(|m, _| m.weight(kind) <= w);
        out.add_assign_scaled(other, &HbarPoly::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, by: &Coefficient) -> Self {
        if by.is_zero() {
            return Self::zero(self.kind, self.max_weight);
        }
        self.map_coeffs(|c| c.scale(by))
    }

    pub fn scale_hbar(&self, by: &HbarPoly) -> Self {
        let mut out = Self::zero(self.kind, self.max_weight);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &(c * by));
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&HbarPoly) -> HbarPoly) -> Self {
        let mut out = Self::zero(self.kind, self.max_weight);
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        let w = self.max_weight.min(other.max_weight);
        let mut out = Self::zero(self.kind, w);
        let right: Vec<(&Monomial, &HbarPoly, u32)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, m.weight(self.kind)))
            .collect();
        for (m1, c1) in &self.terms {
            let w1 = m1.weight(self.kind);
            if w1 > w {
                continue;
            }
            for (m2, c2, w2) in &right {
                if w1 + w2 <= w {
                    out.add_term(m1.mul(m2), &(c1 * c2));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.kind, self.max_weight);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `∂/∂x_index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.kind, self.max_weight);
        for (m, c) in &self.terms {
            if let Some((d, e)) = m.div_var(index) {
                out.add_term(d, &c.scale(&rational::int(e as i64)));
            }
        }
        out
    }

    /// Multiplication by the variable `x_index`.
    pub fn mul_var(&self, index: usize) -> Self {
        let mut out = Self::zero(self.kind, self.max_weight);
        for (m, c) in &self.terms {
            out.add_term(m.mul_var(index), c);
        }
        out
    }

    /// Ring homomorphism sending each variable to its image; the result has
    /// the kind and weight bound of the images.
    pub fn substitute(&self, images: &BTreeMap<usize, TPoly>) -> Result<Self> {
        let first = images.values().next().ok_or_else(|| {
            if let Some((m, _)) = self.terms.iter().find(|(m, _)| !m.is_one()) {
                Error::MissingImage(m.display(self.kind))
            } else {
                Error::Invariant("substitution without images".into())
            }
        });
        let (kind, w) = match first {
            Ok(p) => (p.kind, p.max_weight),
            Err(e) => {
                if self.terms.keys().all(Monomial::is_one) {
                    return Ok(self.clone());
                }
                return Err(e);
            }
        };
        if images.values().any(|p| p.kind != kind) {
            return Err(Error::MixedKinds);
        }
        let mut powers: BTreeMap<(usize, u8), TPoly> = BTreeMap::new();
        let mut out = Self::zero(kind, w);
        for (m, c) in &self.terms {
            let mut prod = Self::constant(kind, w, c.clone());
            for (i, e) in m.vars() {
                if !powers.contains_key(&(i, e)) {
                    let img = images
                        .get(&i)
                        .ok_or_else(|| Error::MissingImage(format!("{}{}", self.kind.name(), i)))?;
                    powers.insert((i, e), img.pow(e as u32)?);
                }
                prod = prod.mul(&powers[&(i, e)])?;
                if prod.is_zero() {
                    break;
                }
            }
            out.add_assign_scaled(&prod, &HbarPoly::one())?;
        }
        Ok(out)
    }

    /// Evaluates every coefficient at `ħ = value`.
    pub fn specialize_hbar(&self, value: &Coefficient) -> Result<Self> {
        let mut out = Self::zero(self.kind, self.max_weight);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &HbarPoly::constant(c.evaluate(value)?));
        }
        Ok(out)
    }

    /// Substitutes `ħ ↦ c·ħ`.
    pub fn rescale_hbar(&self, c: &Coefficient) -> Self {
        self.map_coeffs(|p| p.rescale(c))
    }

    /// True when every coefficient is a constant in ħ.
    pub fn is_hbar_free(&self) -> bool {
        self.terms.values().all(|c| c.terms().all(|(e, _)| e == 0))
    }

    /// Keeps the `ħ^e · m` terms for which `keep(m, e)` holds.
    pub fn retain(&mut self, mut keep: impl FnMut(&Monomial, i32) -> bool) {
        self.terms.retain(|m, c| {
            c.retain(|e| keep(m, e));
            !c.is_zero()
        });
    }

    pub fn filtered(&self, keep: impl FnMut(&Monomial, i32) -> bool) -> Self {
        let mut out = self.clone();
        out.retain(keep);
        out
    }

    /// Same polynomial with a different weight bound (lowering truncates).
    pub fn with_max_weight(&self, max_weight: u32) -> Self {
        let mut out = self.clone();
        out.max_weight = max_weight;
        let kind = self.kind;
        out.terms.retain(|m, _| m.weight(kind) <= max_weight);
        out
    }

    /// Rewrites a big-side polynomial in small times via `T_m = (2m+1)!! t_{2m+1}`.
    pub fn big_to_small(&self) -> Result<Self> {
        if self.kind != VarKind::Big {
            return Err(Error::WrongKind { expected: "T-side" });
        }
        let mut out = Self::zero(VarKind::Small, self.max_weight);
        for (m, c) in &self.terms {
            let mut scale = rational::one();
            let mut mono = Monomial::one();
            for (i, e) in m.vars() {
                let df = Coefficient::from_integer(rational::double_factorial(2 * i as i64 + 1));
                scale *= rational::pow(&df, e as i64);
                mono = mono.mul(&Monomial::power(2 * i + 1, e));
            }
            out.add_term(mono, &c.scale(&scale));
        }
        Ok(out)
    }

    /// Inverse of [`TPoly::big_to_small`]; fails if an even time occurs.
    pub fn small_to_big(&self) -> Result<Self> {
        if self.kind != VarKind::Small {
            return Err(Error::WrongKind { expected: "t-side" });
        }
        if self.contains_even_times() {
            return Err(Error::Invariant("even time in small_to_big".into()));
        }
        let mut out = Self::zero(VarKind::Big, self.max_weight);
        for (m, c) in &self.terms {
            let mut scale = rational::one();
            let mut mono = Monomial::one();
            for (i, e) in m.vars() {
                let k = (i - 1) / 2;
                let df = Coefficient::from_integer(rational::double_factorial(i as i64));
                scale *= rational::pow(&df, -(e as i64));
                mono = mono.mul(&Monomial::power(k, e));
            }
            out.add_term(mono, &c.scale(&scale));
        }
        Ok(out)
    }

    /// Whether some monomial contains `t_{2k}` (small side only).
    pub fn contains_even_times(&self) -> bool {
        self.kind == VarKind::Small
            && self.terms.keys().any(|m| m.vars().any(|(i, _)| i % 2 == 0))
    }

    /// Splits into homogeneous weight components `0..=max_weight`.
    pub fn by_weight(&self) -> Vec<TPoly> {
        let mut parts = vec![Self::zero(self.kind, self.max_weight); self.max_weight as usize + 1];
        for (m, c) in &self.terms {
            parts[m.weight(self.kind) as usize].terms.insert(m.clone(), c.clone());
        }
        parts
    }

    /// `exp(self)` for a polynomial without weight-zero terms, via the
    /// weight-graded recursion `w Z_w = Σ_j j F_j Z_{w-j}`.
    pub fn exp_positive(&self) -> Result<Self> {
        if self.terms.keys().any(Monomial::is_one) {
            return Err(Error::NonzeroConstant("exp of a polynomial"));
        }
        let f = self.by_weight();
        let mut z: Vec<TPoly> = vec![Self::one(self.kind, self.max_weight)];
        for w in 1..=self.max_weight as usize {
            let mut acc = Self::zero(self.kind, self.max_weight);
            for j in 1..=w {
                if f[j].is_zero() || z[w - j].is_zero() {
                    continue;
                }
                let prod = f[j].mul(&z[w - j])?;
                acc.add_assign_scaled(&prod, &HbarPoly::constant(rational::int(j as i64)))?;
            }
            z.push(acc.scale(&rational::q(1, w as i64)));
        }
        let mut out = Self::zero(self.kind, self.max_weight);
        for part in z {
            out.terms.extend(part.terms);
        }
        Ok(out)
    }

    /// Degree in the variables (ignoring ħ).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms as `(monomial, ħ-exponent, coefficient)` triples in canonical order.
    pub fn flat_terms(&self) -> impl Iterator<Item = (&Monomial, i32, &Coefficient)> + '_ {
        self.terms.iter().flat_map(|(m, c)| c.terms().map(move |(e, v)| (m, e, v)))
    }

    /// First term on which two polynomials of the same kind differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, HbarPoly)> {
        let diff = self.sub(other).ok()?;
        diff.terms.into_iter().next()
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .flat_terms()
            .map(|(m, e, c)| {
                let h = if e == 0 { String::new() } else { format!("h^{e}*") };
                format!("({}){}{}", rational::format(c), h, m.display(self.kind))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

struct MonomialJson<'a>(&'a Monomial, VarKind);

impl Serialize for MonomialJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (i, e) in self.0.vars() {
            map.serialize_entry(&format!("{}{}", self.1.name(), i), &e)?;
        }
        map.end()
    }
}

struct Record<'a>(&'a Monomial, &'a HbarPoly, VarKind);

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Record", 2)?;
        st.serialize_field("monomial", &MonomialJson(self.0, self.2))?;
        st.serialize_field("coeff", self.1)?;
        st.end()
    }
}

impl Serialize for TPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&Record(m, c, self.kind))?;
        }
        seq.end()
    }
}
