//! Truncated completed group algebras `F_p⟨⟨X⟩⟩ / (I^{N+1} + J)` of finitely
//! presented pro-p groups and their Zassenhaus dimension sequences.
//!
//! `J` is the two-sided ideal generated by `Magnus(r) − 1` for each relator.
//! In the finite-dimensional truncation it is spanned by `u·(Magnus(r) − 1)·v`
//! for monomials `u`, `v`, so it is computed by Gaussian elimination with
//! coordinates ordered by degree. The pivot columns of the echelon basis are
//! exactly the leading monomials of `J`, hence
//! `b_n = d^n − #{pivots of degree n}`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::fox::{magnus_image, GroupRingElement};
use crate::magnus::magnus_expand;
use crate::series::{Monomial, TruncatedSeries};
use crate::word::Presentation;

/// Largest ambient dimension `Σ_{n≤N} d^n` accepted without an override.
pub const AMBIENT_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, Default)]
pub struct QuotientOptions {
    pub override_guardrail: bool,
}

type SparseRow = Vec<(usize, u16)>;

#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    pres: Presentation,
    truncation: usize,
    d: usize,
    offsets: Vec<usize>,
    pivots: BTreeMap<usize, SparseRow>,
    b: Vec<u64>,
    c: Vec<u64>,
    warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    #[serde(rename = "N")]
    pub n: usize,
    pub exact_through: usize,
}

/// An element to be read in a quotient algebra.
#[derive(Debug, Clone, Copy)]
pub enum AlgebraElement<'a> {
    Series(&'a TruncatedSeries),
    Ring(&'a GroupRingElement),
}

impl<'a> From<&'a TruncatedSeries> for AlgebraElement<'a> {
    fn from(s: &'a TruncatedSeries) -> Self {
        AlgebraElement::Series(s)
    }
}

impl<'a> From<&'a GroupRingElement> for AlgebraElement<'a> {
    fn from(e: &'a GroupRingElement) -> Self {
        AlgebraElement::Ring(e)
    }
}

/// Coordinates of an element in the complement basis, one vector per degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub coords: Vec<Vec<u16>>,
}

impl Projection {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|v| v.iter().all(|&c| c == 0))
    }
}

fn ambient_dimension(d: usize, n: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..=n {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(d as u64)?;
    }
    Some(total)
}

fn monomials_of_degree(d: usize, k: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::unit()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|m| (0..d).map(move |i| m.concat(&Monomial::letter(i)))).collect();
    }
    out
}

impl QuotientAlgebra {
    fn index(&self, m: &Monomial) -> usize {
        self.offsets[m.degree()] + m.letters().iter().fold(0, |acc, &l| acc * self.d + l)
    }

    fn monomial_at(&self, idx: usize) -> Monomial {
        let deg = self.offsets.partition_point(|&o| o <= idx) - 1;
        let mut rem = idx - self.offsets[deg];
        let mut letters = vec![0; deg];
        for slot in letters.iter_mut().rev() {
            *slot = rem % self.d;
            rem /= self.d;
        }
        Monomial::new(letters)
    }

    fn degree_of(&self, idx: usize) -> usize {
        self.offsets.partition_point(|&o| o <= idx) - 1
    }

    fn to_sparse(&self, s: &TruncatedSeries) -> BTreeMap<usize, u16> {
        s.terms().map(|(m, c)| (self.index(m), c)).collect()
    }

    fn subtract_row(&self, v: &mut BTreeMap<usize, u16>, row: &SparseRow, factor: u16) {
        let p = self.prime();
        for &(col, c) in row {
            let e = v.entry(col).or_insert(0);
            *e = p.sub(*e, p.mul(factor, c));
            if *e == 0 {
                v.remove(&col);
            }
        }
    }

    /// Reduces `v` by the current pivots; inserts the remainder as a new pivot row.
    fn insert(&mut self, mut v: BTreeMap<usize, u16>) {
        let p = self.prime();
        while let Some((&col, &c)) = v.iter().next() {
            match self.pivots.get(&col) {
                Some(row) => {
                    let row = row.clone();
                    self.subtract_row(&mut v, &row, c);
                }
                None => {
                    let inv = p.inv(c);
                    let row = v.into_iter().map(|(k, x)| (k, p.mul(x, inv))).collect();
                    self.pivots.insert(col, row);
                    return;
                }
            }
        }
    }

    fn normal_form(&self, mut v: BTreeMap<usize, u16>) -> BTreeMap<usize, u16> {
        let mut out = BTreeMap::new();
        while let Some((&col, &c)) = v.iter().next() {
            match self.pivots.get(&col) {
                Some(row) => self.subtract_row(&mut v, row, c),
                None => {
                    out.insert(col, c);
                    v.remove(&col);
                }
            }
        }
        out
    }

    pub fn prime(&self) -> Prime {
        self.pres.prime()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn num_generators(&self) -> usize {
        self.d
    }

    /// `b_n = dim (I^n + J)/(I^{n+1} + J)` for `n = 0..=N`.
    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Dimension of the ideal `J` inside the truncated free algebra.
    pub fn ideal_dimension(&self) -> usize {
        self.pivots.len()
    }

    /// Monomials of degree `n` spanning the complement of the ideal, in canonical order.
    pub fn complement_basis(&self, n: usize) -> Vec<Monomial> {
        (self.offsets[n]..self.offsets[n + 1])
            .filter(|i| !self.pivots.contains_key(i))
            .map(|i| self.monomial_at(i))
            .collect()
    }

    pub fn report(&self) -> GradingReport {
        GradingReport { b: self.b.clone(), c: self.c.clone(), n: self.truncation, exact_through: self.truncation }
    }

    fn series_of(&self, e: AlgebraElement<'_>) -> Result<TruncatedSeries> {
        let s = match e {
            AlgebraElement::Series(s) => s.clone(),
            AlgebraElement::Ring(r) => {
                if r.prime() != self.prime() {
                    return Err(Error::ParamMismatch(format!("p={} vs p={}", r.prime(), self.prime())));
                }
                magnus_image(r, self.truncation, self.d)?
            }
        };
        if s.prime() != self.prime() || s.num_generators() != self.d {
            return Err(Error::ParamMismatch(format!(
                "series over (p={}, d={}) read in quotient over (p={}, d={})",
                s.prime(),
                s.num_generators(),
                self.prime(),
                self.d
            )));
        }
        if s.truncation() < self.truncation {
            return Err(Error::ParamMismatch(format!(
                "series truncated at {} but quotient needs {}",
                s.truncation(),
                self.truncation
            )));
        }
        Ok(s.retruncate(self.truncation))
    }

    /// Coordinates of the image of `e` in the complement basis, degree by degree.
    pub fn project<'a>(&self, e: impl Into<AlgebraElement<'a>>) -> Result<Projection> {
        let s = self.series_of(e.into())?;
        let nf = self.normal_form(self.to_sparse(&s));
        let mut coords = Vec::with_capacity(self.truncation + 1);
        for n in 0..=self.truncation {
            let basis: Vec<usize> =
                (self.offsets[n]..self.offsets[n + 1]).filter(|i| !self.pivots.contains_key(i)).collect();
            coords.push(basis.iter().map(|i| nf.get(i).copied().unwrap_or(0)).collect());
        }
        Ok(Projection { coords })
    }

    pub fn is_zero_in_quotient<'a>(&self, e: impl Into<AlgebraElement<'a>>) -> Result<bool> {
        let s = self.series_of(e.into())?;
        Ok(self.normal_form(self.to_sparse(&s)).is_empty())
    }

    /// Valuation of an element inside the quotient, with "at least N+1" semantics.
    pub fn valuation<'a>(&self, e: impl Into<AlgebraElement<'a>>) -> Result<crate::magnus::Valuation> {
        let s = self.series_of(e.into())?;
        let nf = self.normal_form(self.to_sparse(&s));
        Ok(match nf.keys().next() {
            Some(&i) => crate::magnus::Valuation::Exact(self.degree_of(i)),
            None => crate::magnus::Valuation::AtLeast(self.truncation + 1),
        })
    }
}

/// Builds the quotient of the truncated free algebra by the relator ideal.
pub fn build_quotient(pres: &Presentation, truncation: usize, opts: QuotientOptions) -> Result<QuotientAlgebra> {
    if truncation < 1 {
        return Err(Error::InvalidInput("truncation N must be at least 1".into()));
    }
    let d = pres.num_generators();
    let ambient = ambient_dimension(d, truncation);
    if !opts.override_guardrail && ambient.is_none_or(|a| a > AMBIENT_LIMIT) {
        return Err(Error::Guardrail(format!("ambient dimension sum_(n<={truncation}) {d}^n exceeds {AMBIENT_LIMIT}")));
    }
    let mut offsets = Vec::with_capacity(truncation + 2);
    let mut acc = 0usize;
    let mut pow = 1usize;
    for _ in 0..=truncation + 1 {
        offsets.push(acc);
        acc += pow;
        pow = pow.saturating_mul(d);
    }
    let mut qa = QuotientAlgebra {
        pres: pres.clone(),
        truncation,
        d,
        offsets,
        pivots: BTreeMap::new(),
        b: Vec::new(),
        c: Vec::new(),
        warnings: Vec::new(),
    };
    let p = pres.prime();
    let one = TruncatedSeries::one(p, truncation, d);
    let mut visible = 0;
    for (idx, r) in pres.relators().iter().enumerate() {
        let rho = magnus_expand(r, p, truncation, d)?.sub(&one)?;
        let Some(k) = rho.lowest_degree() else {
            qa.warnings.push(format!("relator {idx} is invisible through degree {truncation}"));
            continue;
        };
        visible += 1;
        for s in 0..=truncation - k {
            let pairs: Vec<(usize, usize)> = (0..=s).map(|a| (a, s - a)).collect();
            let rows: Vec<BTreeMap<usize, u16>> = pairs
                .par_iter()
                .flat_map_iter(|&(a, b)| {
                    let us = monomials_of_degree(d, a);
                    let vs = monomials_of_degree(d, b);
                    let rho = &rho;
                    let qa = &qa;
                    us.into_iter()
                        .flat_map(move |u| vs.clone().into_iter().map(move |v| qa.to_sparse(&rho.sandwich(&u, &v))))
                })
                .collect();
            for row in rows {
                qa.insert(row);
            }
        }
    }
    if visible == 0 && !pres.relators().is_empty() {
        qa.warnings
            .push(format!("no relator is visible through degree {truncation}; grading equals the free algebra's"));
    }
    let mut pivots_per_degree = vec![0u64; truncation + 1];
    for &col in qa.pivots.keys() {
        pivots_per_degree[qa.degree_of(col)] += 1;
    }
    let mut running = 0;
    for (n, &pivots) in pivots_per_degree.iter().enumerate() {
        let full = (qa.offsets[n + 1] - qa.offsets[n]) as u64;
        let bn = full - pivots;
        running += bn;
        qa.b.push(bn);
        qa.c.push(running);
    }
    Ok(qa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::GroupWord;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn free_algebra_dimensions() {
        for d in 1..=3 {
            let pres = Presentation::with_default_names(p(2), d, vec![]).unwrap();
            let qa = build_quotient(&pres, 4, QuotientOptions::default()).unwrap();
            let want: Vec<u64> = (0..=4).map(|n| (d as u64).pow(n)).collect();
            assert_eq!(qa.b(), &want[..]);
            assert_eq!(qa.b()[0], 1);
        }
    }

    #[test]
    fn cyclic_of_order_two() {
        let pres = Presentation::with_default_names(p(2), 1, vec![GroupWord::power(0, 2)]).unwrap();
        let qa = build_quotient(&pres, 3, QuotientOptions::default()).unwrap();
        assert_eq!(qa.b(), &[1, 1, 0, 0]);
        assert_eq!(qa.c(), &[1, 2, 2, 2]);
    }

    #[test]
    fn cyclic_of_order_p_has_dimension_p() {
        // F_p[C_p] = F_p[X]/(X^p)
        for pr in [3u64, 5] {
            let pres = Presentation::with_default_names(p(pr), 1, vec![GroupWord::power(0, pr as i64)]).unwrap();
            let qa = build_quotient(&pres, pr as usize + 2, QuotientOptions::default()).unwrap();
            assert_eq!(*qa.c().last().unwrap(), pr);
        }
    }

    #[test]
    fn unit_projects_to_degree_zero() {
        let pres = Presentation::with_default_names(p(3), 2, vec![GroupWord::power(0, 3)]).unwrap();
        let qa = build_quotient(&pres, 4, QuotientOptions::default()).unwrap();
        let one = TruncatedSeries::one(p(3), 4, 2);
        let proj = qa.project(&one).unwrap();
        assert_eq!(proj.coords[0], vec![1]);
        assert!(proj.coords[1..].iter().all(|v| v.iter().all(|&c| c == 0)));
    }

    #[test]
    fn relator_vanishes_in_own_quotient() {
        let r = GroupWord::from_syllables([(0, 2), (1, -1), (0, 1), (1, 3)]);
        let pres = Presentation::with_default_names(p(2), 2, vec![r.clone()]).unwrap();
        let qa = build_quotient(&pres, 5, QuotientOptions::default()).unwrap();
        let rho = magnus_expand(&r, p(2), 5, 2).unwrap().sub(&TruncatedSeries::one(p(2), 5, 2)).unwrap();
        assert!(qa.is_zero_in_quotient(&rho).unwrap());
        let x1 = TruncatedSeries::variable(p(2), 5, 2, 0).unwrap();
        let free =
            build_quotient(&Presentation::with_default_names(p(2), 2, vec![]).unwrap(), 5, Default::default()).unwrap();
        assert!(!free.is_zero_in_quotient(&x1).unwrap());
    }

    #[test]
    fn invisible_relator_warns() {
        let pres = Presentation::with_default_names(p(2), 1, vec![GroupWord::power(0, 8)]).unwrap();
        let qa = build_quotient(&pres, 4, QuotientOptions::default()).unwrap();
        assert_eq!(qa.b(), &[1, 1, 1, 1, 1]);
        assert!(!qa.warnings().is_empty());
    }

    #[test]
    fn guardrail_and_override() {
        let pres = Presentation::with_default_names(p(2), 4, vec![]).unwrap();
        let err = build_quotient(&pres, 11, QuotientOptions::default()).unwrap_err();
        assert!(err.is_guardrail());
        assert!(build_quotient(&pres, 0, QuotientOptions::default()).is_err());
    }

    #[test]
    fn mismatched_series_rejected() {
        let pres = Presentation::with_default_names(p(2), 2, vec![]).unwrap();
        let qa = build_quotient(&pres, 3, QuotientOptions::default()).unwrap();
        assert!(qa.project(&TruncatedSeries::one(p(3), 3, 2)).is_err());
        assert!(qa.project(&TruncatedSeries::one(p(2), 2, 2)).is_err());
        assert!(qa.project(&TruncatedSeries::one(p(2), 3, 3)).is_err());
        assert!(qa.project(&TruncatedSeries::one(p(2), 5, 2)).is_ok());
    }

    #[test]
    fn monomial_indexing_round_trips() {
        let pres = Presentation::with_default_names(p(2), 3, vec![]).unwrap();
        let qa = build_quotient(&pres, 3, QuotientOptions::default()).unwrap();
        for n in 0..=3 {
            for m in monomials_of_degree(3, n) {
                assert_eq!(qa.monomial_at(qa.index(&m)), m);
            }
        }
        assert_eq!(qa.complement_basis(2).len(), 9);
    }
}
