//! Fox free differential calculus in the group ring `F_p[F]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::magnus::magnus_expand;
use crate::series::TruncatedSeries;
use crate::word::{GroupWord, Presentation};

/// A finite F_p-linear combination of reduced words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    p: Prime,
    terms: BTreeMap<GroupWord, u16>,
}

impl GroupRingElement {
    pub fn zero(p: Prime) -> Self {
        GroupRingElement { p, terms: BTreeMap::new() }
    }

    pub fn one(p: Prime) -> Self {
        Self::from_word(p, GroupWord::identity())
    }

    pub fn from_word(p: Prime, w: GroupWord) -> Self {
        let mut e = Self::zero(p);
        e.add_term(w, 1);
        e
    }

    pub fn from_terms(p: Prime, terms: impl IntoIterator<Item = (GroupWord, i64)>) -> Self {
        let mut e = Self::zero(p);
        for (w, c) in terms {
            e.add_term(w, p.reduce(c));
        }
        e
    }

    fn add_term(&mut self, w: GroupWord, c: u16) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e = p.add(*e, c);
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, u16)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Coefficient sum (the augmentation).
    pub fn augmentation(&self) -> u16 {
        self.terms.values().fold(0, |a, &c| self.p.add(a, c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ParamMismatch(format!("p={} vs p={}", self.p, other.p)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.p.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.p;
        let mut acc: BTreeMap<GroupWord, u16> = BTreeMap::new();
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                let e = acc.entry(u.multiply(v)).or_insert(0);
                *e = p.add(*e, p.mul(a, b));
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(GroupRingElement { p, terms: acc })
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> RingDisplay<'a> {
        RingDisplay { e: self, names }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&[]).fmt(f)
    }
}

pub struct RingDisplay<'a> {
    e: &'a GroupRingElement,
    names: &'a [String],
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, &c)) in self.e.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match (c, w.is_identity()) {
                (1, _) => write!(f, "{}", w.display_with(self.names))?,
                (c, true) => write!(f, "{c}")?,
                (c, false) => write!(f, "{c}*{}", w.display_with(self.names))?,
            }
        }
        Ok(())
    }
}

/// `∂(x^e)/∂x`: `Σ_{k<e} x^k` for `e > 0`, `−Σ_{k=1}^{|e|} x^{−k}` for `e < 0`.
fn power_derivative(gen: usize, exp: i64) -> impl Iterator<Item = (GroupWord, bool)> {
    let (range, negative) = if exp > 0 { (0..exp, false) } else { (exp..0, true) };
    range.map(move |k| (GroupWord::power(gen, k), negative))
}

/// The Fox derivative `∂w/∂x_j` with `∂x_j/∂x_j = 1` and `∂(uv) = ∂u + u ∂v`.
pub fn fox_derivative(w: &GroupWord, j: usize, num_generators: usize, p: Prime) -> Result<GroupRingElement> {
    if j >= num_generators {
        return Err(Error::IndexOutOfRange { index: j, count: num_generators });
    }
    if let Some(g) = w.max_generator() {
        if g >= num_generators {
            return Err(Error::IndexOutOfRange { index: g, count: num_generators });
        }
    }
    let mut out = GroupRingElement::zero(p);
    let mut prefix = GroupWord::identity();
    for s in w.syllables() {
        if s.gen == j {
            for (tail, negative) in power_derivative(s.gen, s.exp) {
                out.add_term(prefix.multiply(&tail), if negative { p.neg(1) } else { 1 });
            }
        }
        prefix = prefix.multiply(&GroupWord::power(s.gen, s.exp));
    }
    Ok(out)
}

/// Checks `w − 1 = Σ_j (∂w/∂x_j)(x_j − 1)` in the group ring.
pub fn fundamental_identity_check(w: &GroupWord, p: Prime) -> bool {
    let d = w.max_generator().map_or(0, |g| g + 1);
    let lhs = GroupRingElement::from_word(p, w.clone()).sub(&GroupRingElement::one(p)).expect("same p");
    let mut rhs = GroupRingElement::zero(p);
    for j in 0..d {
        let dj = fox_derivative(w, j, d, p).expect("index in range");
        let xj_minus_1 = GroupRingElement::from_terms(p, [(GroupWord::generator(j), 1), (GroupWord::identity(), -1)]);
        rhs = rhs.add(&dj.mul(&xj_minus_1).expect("same p")).expect("same p");
    }
    lhs == rhs
}

/// Matrix of Fox derivatives, one row per relator and one column per generator.
pub fn fox_jacobian(pres: &Presentation) -> Vec<Vec<GroupRingElement>> {
    let d = pres.num_generators();
    pres.relators()
        .iter()
        .map(|r| (0..d).map(|j| fox_derivative(r, j, d, pres.prime()).expect("validated presentation")).collect())
        .collect()
}

/// F_p-linear extension of the Magnus expansion.
pub fn magnus_image(e: &GroupRingElement, truncation: usize, num_generators: usize) -> Result<TruncatedSeries> {
    let p = e.prime();
    let mut acc = TruncatedSeries::zero(p, truncation, num_generators);
    for (w, c) in e.terms() {
        acc = acc.add(&magnus_expand(w, p, truncation, num_generators)?.scale(c))?;
    }
    Ok(acc)
}
