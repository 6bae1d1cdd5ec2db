//! The Magnus embedding `x_i ↦ 1 + X_i` of free-group words into truncated
//! series, with valuations and leading forms.
//!
//! Leading forms are taken from `1 − Magnus(w)`. Substituting `X̃ = 1 − x`
//! instead would multiply the degree-k form by `(−1)^k`; the obstruction
//! condition is homogeneous in the form, so verdicts do not depend on this.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::series::{Monomial, TruncatedSeries};
use crate::word::GroupWord;

/// Valuation of `1 − w`, either exact or bounded below by the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Valuation {
    Exact(usize),
    AtLeast(usize),
}

impl Valuation {
    pub fn exact(self) -> Option<usize> {
        match self {
            Valuation::Exact(k) => Some(k),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(k) => write!(f, "{k}"),
            Valuation::AtLeast(k) => write!(f, ">= {k}"),
        }
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub(crate) fn binomial_mod(mut n: u64, mut k: u64, p: Prime) -> u16 {
    let q = p.get() as u64;
    let mut acc = 1u16;
    while k > 0 {
        let (ni, ki) = (n % q, k % q);
        if ki > ni {
            return 0;
        }
        // C(ni, ki) with ni < p
        let mut num = 1u16;
        let mut den = 1u16;
        for j in 0..ki {
            num = p.mul(num, ((ni - j) % q) as u16);
            den = p.mul(den, ((j + 1) % q) as u16);
        }
        acc = p.mul(acc, p.mul(num, p.inv(den)));
        n /= q;
        k /= q;
    }
    acc
}

/// `(1 + X_gen)^exp` truncated at degree `n`, for any integer exponent.
fn syllable_series(gen: usize, exp: i64, p: Prime, n: usize, d: usize) -> TruncatedSeries {
    let mut terms = Vec::with_capacity(n + 1);
    for i in 0..=n as u64 {
        let c = if exp >= 0 {
            binomial_mod(exp as u64, i, p)
        } else {
            // C(-m, i) = (-1)^i C(m + i - 1, i)
            let m = exp.unsigned_abs();
            let c = binomial_mod(m + i - 1, i, p);
            if i % 2 == 1 {
                p.neg(c)
            } else {
                c
            }
        };
        if c != 0 {
            terms.push((Monomial::new(vec![gen; i as usize]), c as i64));
        }
    }
    TruncatedSeries::from_terms(p, n, d, terms).expect("generator within range")
}

/// Magnus expansion of `w` in `F_p⟨X_1..X_d⟩ / I^{n+1}`.
pub fn magnus_expand(w: &GroupWord, p: Prime, n: usize, d: usize) -> Result<TruncatedSeries> {
    if let Some(g) = w.max_generator() {
        if g >= d {
            return Err(Error::IndexOutOfRange { index: g, count: d });
        }
    }
    let mut acc = TruncatedSeries::one(p, n, d);
    for s in w.syllables() {
        acc = acc.mul(&syllable_series(s.gen, s.exp, p, n, d))?;
    }
    Ok(acc)
}

/// `1 − Magnus(w)`.
pub fn augmentation_defect(w: &GroupWord, p: Prime, n: usize, d: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::one(p, n, d).sub(&magnus_expand(w, p, n, d)?)
}

fn min_generators(w: &GroupWord) -> usize {
    w.max_generator().map_or(0, |g| g + 1)
}

/// Lowest degree of `1 − Magnus(w)`, or `AtLeast(n+1)` when it vanishes through degree `n`.
pub fn valuation(w: &GroupWord, p: Prime, n: usize) -> Valuation {
    let defect = augmentation_defect(w, p, n, min_generators(w)).expect("sized to the word");
    match defect.lowest_degree() {
        Some(k) => Valuation::Exact(k),
        None => Valuation::AtLeast(n + 1),
    }
}

/// The lowest-degree homogeneous component of `1 − Magnus(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingForm {
    p: Prime,
    degree: usize,
    num_generators: usize,
    coefficients: BTreeMap<Monomial, u16>,
}

impl LeadingForm {
    /// Validates homogeneity and nonvanishing.
    pub fn new(p: Prime, num_generators: usize, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Result<Self> {
        let mut coefficients: BTreeMap<Monomial, u16> = BTreeMap::new();
        let mut degree = None;
        for (m, c) in terms {
            if let Some(&bad) = m.letters().iter().find(|&&l| l >= num_generators) {
                return Err(Error::IndexOutOfRange { index: bad, count: num_generators });
            }
            match degree {
                None => degree = Some(m.degree()),
                Some(k) if k != m.degree() => {
                    return Err(Error::InvalidInput("leading form must be homogeneous".into()))
                }
                _ => {}
            }
            let e = coefficients.entry(m).or_insert(0);
            *e = p.add(*e, p.reduce(c));
        }
        coefficients.retain(|_, c| *c != 0);
        let degree = match degree {
            Some(k) if !coefficients.is_empty() => k,
            _ => return Err(Error::InvalidInput("leading form is zero".into())),
        };
        if degree == 0 {
            return Err(Error::InvalidInput("leading form of degree 0".into()));
        }
        Ok(LeadingForm { p, degree, num_generators, coefficients })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u16)> + '_ {
        self.coefficients.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scale(&self, c: u16) -> Result<Self> {
        if c.is_multiple_of(self.p.get()) {
            return Err(Error::InvalidInput("scaling a leading form by zero".into()));
        }
        let mut out = self.clone();
        for v in out.coefficients.values_mut() {
            *v = self.p.mul(*v, c);
        }
        Ok(out)
    }

    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            self.p,
            self.degree,
            self.num_generators,
            self.terms().map(|(m, c)| (m.clone(), c as i64)),
        )
        .expect("validated on construction")
    }
}

impl fmt::Display for LeadingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_series();
        let text = s.to_string();
        f.write_str(text.rsplit_once(" + O(").map_or(&text, |(a, _)| a))
    }
}

/// Degree-k component of `1 − Magnus(w)` where `k` is the valuation.
pub fn leading_form(w: &GroupWord, p: Prime, n: usize, d: usize) -> Result<LeadingForm> {
    let defect = augmentation_defect(w, p, n, d)?;
    let Some(k) = defect.lowest_degree() else {
        return Err(Error::ValuationExceedsTruncation { valuation: Valuation::AtLeast(n + 1), truncation: n });
    };
    LeadingForm::new(p, d, defect.homogeneous(k).terms().map(|(m, c)| (m.clone(), c as i64)))
}
