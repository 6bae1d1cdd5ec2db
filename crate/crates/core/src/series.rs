//! Sparse non-commutative polynomials over F_p truncated past a fixed degree.
//!
//! A [`TruncatedSeries`] is an element of `F_p⟨X_1..X_d⟩ / I^{N+1}` where `I`
//! is the ideal generated by the variables. Terms are kept in canonical
//! order: by degree, then lexicographically on the letters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;

/// A word in the non-commuting variables; the empty word is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Monomial(letters)
    }

    pub fn letter(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: Prime,
    truncation: usize,
    d: usize,
    terms: BTreeMap<Monomial, u16>,
}

impl TruncatedSeries {
    pub fn zero(p: Prime, truncation: usize, d: usize) -> Self {
        TruncatedSeries { p, truncation, d, terms: BTreeMap::new() }
    }

    pub fn one(p: Prime, truncation: usize, d: usize) -> Self {
        Self::constant(p, truncation, d, 1)
    }

    pub fn constant(p: Prime, truncation: usize, d: usize, c: u16) -> Self {
        let mut s = Self::zero(p, truncation, d);
        s.add_term(Monomial::unit(), c);
        s
    }

    /// The variable `X_i`.
    pub fn variable(p: Prime, truncation: usize, d: usize, i: usize) -> Result<Self> {
        Self::from_terms(p, truncation, d, [(Monomial::letter(i), 1)])
    }

    /// Builds a series from terms; coefficients are reduced mod p, repeated
    /// monomials summed and terms of degree above the truncation dropped.
    pub fn from_terms(
        p: Prime,
        truncation: usize,
        d: usize,
        terms: impl IntoIterator<Item = (Monomial, i64)>,
    ) -> Result<Self> {
        let mut s = Self::zero(p, truncation, d);
        for (m, c) in terms {
            if let Some(&bad) = m.letters().iter().find(|&&l| l >= d) {
                return Err(Error::IndexOutOfRange { index: bad, count: d });
            }
            s.add_term(m, p.reduce(c));
        }
        Ok(s)
    }

    /// Adds `c·m` in place, ignoring monomials past the truncation.
    pub(crate) fn add_term(&mut self, m: Monomial, c: u16) {
        if c == 0 || m.degree() > self.truncation {
            return;
        }
        let p = self.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = p.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn num_generators(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u16)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u16 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u16 {
        self.coefficient(&Monomial::unit())
    }

    /// Smallest degree carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The homogeneous component of degree `k`.
    pub fn homogeneous(&self, k: usize) -> TruncatedSeries {
        let mut s = Self::zero(self.p, self.truncation, self.d);
        s.terms = self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, &c)| (m.clone(), c)).collect();
        s
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.truncation != other.truncation || self.d != other.d {
            return Err(Error::ParamMismatch(format!(
                "(p={}, N={}, d={}) vs (p={}, N={}, d={})",
                self.p, self.truncation, self.d, other.p, other.truncation, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = p.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u16) -> Self {
        let p = self.p;
        let c = c % p.get();
        if c == 0 {
            return Self::zero(p, self.truncation, self.d);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = p.mul(*v, c);
        }
        out
    }

    /// Concatenation product; terms past the truncation are discarded.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.truncation;
        let p = self.p;
        let mut acc: BTreeMap<Monomial, u16> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            let room = n - ma.degree();
            for (mb, &cb) in &other.terms {
                if mb.degree() > room {
                    break;
                }
                let c = p.mul(ca, cb);
                let e = acc.entry(ma.concat(mb)).or_insert(0);
                *e = p.add(*e, c);
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(TruncatedSeries { p, truncation: n, d: self.d, terms: acc })
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.truncation, self.d);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same parameters");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same parameters");
            }
        }
        acc
    }

    /// Inverse of a series with constant term 1, as `Σ_{i≤N} (1 − a)^i`.
    pub fn unit_inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c != 1 {
            return Err(Error::NotUnit(c));
        }
        let q = Self::one(self.p, self.truncation, self.d).sub(self)?;
        // Horner: 1 + q(1 + q(1 + ...))
        let one = Self::one(self.p, self.truncation, self.d);
        let mut acc = one.clone();
        for _ in 0..self.truncation {
            acc = one.add(&q.mul(&acc)?)?;
        }
        Ok(acc)
    }

    /// `u · self · v` for monomials `u`, `v`, truncated.
    pub fn sandwich(&self, u: &Monomial, v: &Monomial) -> Self {
        let mut out = Self::zero(self.p, self.truncation, self.d);
        let room = self.truncation.saturating_sub(u.degree() + v.degree());
        if u.degree() + v.degree() > self.truncation {
            return out;
        }
        for (m, &c) in &self.terms {
            if m.degree() > room {
                break;
            }
            out.terms.insert(u.concat(m).concat(v), c);
        }
        out
    }

    /// Same element viewed with a different truncation (dropping higher terms).
    pub fn retruncate(&self, truncation: usize) -> Self {
        let mut out = Self::zero(self.p, truncation, self.d);
        out.terms = self.terms.iter().filter(|(m, _)| m.degree() <= truncation).map(|(m, &c)| (m.clone(), c)).collect();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeriesJson::from(self)).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: SeriesJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::InvalidInput(format!("series JSON: {e}")))?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    mono: Vec<usize>,
    coef: u16,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    p: u64,
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    terms: Vec<TermJson>,
}

impl From<&TruncatedSeries> for SeriesJson {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesJson {
            p: s.p.get() as u64,
            n: s.truncation,
            d: s.d,
            terms: s.terms().map(|(m, c)| TermJson { mono: m.letters().to_vec(), coef: c }).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = Error;

    fn try_from(raw: SeriesJson) -> Result<Self> {
        let p = Prime::new(raw.p)?;
        let mut s = TruncatedSeries::zero(p, raw.n, raw.d);
        for t in raw.terms {
            let m = Monomial::new(t.mono);
            if m.degree() > raw.n {
                return Err(Error::InvalidInput(format!("monomial of degree {} exceeds N", m.degree())));
            }
            if t.coef == 0 || t.coef >= p.get() {
                return Err(Error::InvalidInput(format!("coefficient {} not in 1..p", t.coef)));
            }
            if let Some(&bad) = m.letters().iter().find(|&&l| l >= raw.d) {
                return Err(Error::IndexOutOfRange { index: bad, count: raw.d });
            }
            if s.terms.insert(m, t.coef).is_some() {
                return Err(Error::InvalidInput("repeated monomial".into()));
            }
        }
        Ok(s)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            for (j, l) in m.letters().iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "X{}", l + 1)?;
            }
        }
        write!(f, " + O(deg {})", self.truncation + 1)
    }
}
