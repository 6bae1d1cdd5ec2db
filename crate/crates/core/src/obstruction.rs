//! Linear necessary condition for an epimorphism from a one-relator pro-p
//! group onto a free pro-p group of rank `m`, and a positive verifier for
//! explicit candidate homomorphisms.
//!
//! If `φ: G ↠ F(m)` exists, the induced map on degree-one generators is an
//! `n×m` matrix `B` of rank `m`, and the leading form `η` of the relator
//! must vanish after substituting `X_i ↦ Σ_j b_ij Y_j`. The condition only
//! depends on the column space of `B`, so one reduced column echelon
//! representative per `m`-dimensional subspace of `F_p^n` is tested.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::magnus::{leading_form, valuation, LeadingForm, Valuation};
use crate::matrix::FpMatrix;
use crate::word::{GroupWord, Presentation};

/// Largest number of index tuples `m^k` searched without an override.
pub const TUPLE_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NO_EPI_CERTIFIED")]
    NoEpiCertified,
    /// The necessary condition is satisfiable. This does not prove that an
    /// epimorphism exists.
    #[serde(rename = "CANDIDATE_EXISTS")]
    CandidateExists,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NoEpiCertified => f.write_str("NO_EPI_CERTIFIED"),
            Verdict::CandidateExists => f.write_str("CANDIDATE_EXISTS (necessary condition only)"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// Worker threads for the candidate search; 0 or 1 runs sequentially.
    pub threads: usize,
    pub override_guardrail: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub m: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_u128")]
    pub spaces: u128,
    pub verdict: Verdict,
    #[serde(serialize_with = "ser_witnesses")]
    pub witnesses: Vec<FpMatrix>,
}

fn ser_u128<S: Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

fn ser_witnesses<S: Serializer>(w: &[FpMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<u16>>> = w.iter().map(FpMatrix::to_rows).collect();
    rows.serialize(s)
}

/// Number of `m`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial(n: usize, m: usize, p: Prime) -> u128 {
    if m > n {
        return 0;
    }
    let q = p.get() as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Whether `η(Σ_j b_1j Y_j, …, Σ_j b_nj Y_j) = 0`, i.e. every coefficient
/// `Σ a_{i_1…i_k} b_{i_1 j_1}⋯b_{i_k j_k}` vanishes.
pub fn satisfies_condition(eta: &LeadingForm, b: &FpMatrix) -> bool {
    let p = eta.prime();
    let m = b.cols();
    let k = eta.degree();
    let terms: Vec<(&[usize], u16)> = eta.terms().map(|(mono, a)| (mono.letters(), a)).collect();
    let mut tuple = vec![0usize; k];
    loop {
        let mut sum = 0u16;
        for &(idx, a) in &terms {
            let mut prod = a;
            for (l, &i) in idx.iter().enumerate() {
                prod = p.mul(prod, b.get(i, tuple[l]));
                if prod == 0 {
                    break;
                }
            }
            sum = p.add(sum, prod);
        }
        if sum != 0 {
            return false;
        }
        // next tuple in [m]^k, last index fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < m {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Pivot sets and free positions of reduced echelon forms of rank `m` in `F_p^n`.
struct EchelonShape {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

fn echelon_shapes(n: usize, m: usize) -> Vec<EchelonShape> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..m).collect();
    loop {
        let mut free = Vec::new();
        for (row, &c) in combo.iter().enumerate() {
            for col in c + 1..n {
                if !combo.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        out.push(EchelonShape { pivots: combo.clone(), free });
        // next combination
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] < n - m + i {
                combo[i] += 1;
                for j in i + 1..m {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The `n×m` column-echelon matrix for a shape and a free-entry assignment index.
fn shape_matrix(shape: &EchelonShape, n: usize, m: usize, mut assignment: u128, p: Prime) -> FpMatrix {
    let q = p.get() as u128;
    let mut b = FpMatrix::zeros(p, n, m);
    for (row, &c) in shape.pivots.iter().enumerate() {
        b.set(c, row, 1);
    }
    for &(row, col) in shape.free.iter().rev() {
        b.set(col, row, (assignment % q) as u16);
        assignment /= q;
    }
    b
}

/// Tests one echelon representative per `m`-dimensional column space.
pub fn search_obstruction(eta: &LeadingForm, n: usize, m: usize, opts: SearchOptions) -> Result<ObstructionReport> {
    let p = eta.prime();
    let k = eta.degree();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!("target rank m={m} must satisfy 1 <= m <= n={n}")));
    }
    if eta.num_generators() != n {
        return Err(Error::ParamMismatch(format!(
            "leading form has {} generators, expected {n}",
            eta.num_generators()
        )));
    }
    if k == 0 {
        return Err(Error::InvalidInput("leading form of degree 0".into()));
    }
    let tuples = (m as u64).checked_pow(k as u32);
    if !opts.override_guardrail && tuples.is_none_or(|t| t > TUPLE_LIMIT) {
        return Err(Error::Guardrail(format!("{m}^{k} index tuples exceed {TUPLE_LIMIT}")));
    }

    let shapes = echelon_shapes(n, m);
    let q = p.get() as u128;
    let mut tasks: Vec<(usize, u128)> = Vec::new();
    let mut spaces: u128 = 0;
    for (s, shape) in shapes.iter().enumerate() {
        let count = q
            .checked_pow(shape.free.len() as u32)
            .ok_or_else(|| Error::Guardrail("too many column spaces to enumerate".into()))?;
        spaces += count;
        tasks.push((s, count));
    }

    let run_shape = |&(s, count): &(usize, u128)| -> Vec<FpMatrix> {
        let shape = &shapes[s];
        (0..count).map(|a| shape_matrix(shape, n, m, a, p)).filter(|b| satisfies_condition(eta, b)).collect()
    };
    let witnesses: Vec<FpMatrix> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| tasks.par_iter().map(run_shape).collect::<Vec<_>>()).into_iter().flatten().collect()
    } else {
        tasks.iter().flat_map(run_shape).collect()
    };
    let verdict = if witnesses.is_empty() { Verdict::NoEpiCertified } else { Verdict::CandidateExists };
    Ok(ObstructionReport { m, k, spaces, verdict, witnesses })
}

/// Images of the generators of `G` in the free group `F(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCandidate {
    pub images: Vec<GroupWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EpiCheck {
    #[serde(rename = "EPI_CONFIRMED")]
    EpiConfirmed,
    #[serde(rename = "NOT_HOM")]
    NotHom,
    #[serde(rename = "NOT_SURJECTIVE")]
    NotSurjective,
}

impl fmt::Display for EpiCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpiCheck::EpiConfirmed => "EPI_CONFIRMED",
            EpiCheck::NotHom => "NOT_HOM",
            EpiCheck::NotSurjective => "NOT_SURJECTIVE",
        })
    }
}

/// Checks that the candidate kills every relator and that its images span
/// `F(m)` modulo the Frattini subgroup.
pub fn verify_epimorphism(pres: &Presentation, cand: &HomCandidate, m: usize) -> Result<EpiCheck> {
    let n = pres.num_generators();
    if cand.images.len() != n {
        return Err(Error::InvalidInput(format!("candidate has {} images for {n} generators", cand.images.len())));
    }
    for img in &cand.images {
        if let Some(g) = img.max_generator() {
            if g >= m {
                return Err(Error::IndexOutOfRange { index: g, count: m });
            }
        }
    }
    for r in pres.relators() {
        if !r.substitute(&cand.images)?.is_identity() {
            return Ok(EpiCheck::NotHom);
        }
    }
    let rows: Vec<Vec<i64>> = (0..m).map(|t| cand.images.iter().map(|img| img.exponent_sums(m)[t]).collect()).collect();
    let rank = if n == 0 { 0 } else { FpMatrix::from_rows(pres.prime(), &rows).rank() };
    Ok(if rank < m { EpiCheck::NotSurjective } else { EpiCheck::EpiConfirmed })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub m: usize,
    #[serde(serialize_with = "ser_u128")]
    pub spaces: u128,
    pub verdict: Verdict,
    pub witnesses: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<EpiCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<RankEntry>,
    /// Largest `m` with no epimorphism certified.
    pub largest_no_epi: Option<usize>,
    /// `Ir_p(G) <= smallest certified m − 1`.
    pub upper_bound: Option<usize>,
    /// Largest `m` for which a supplied candidate was confirmed.
    pub largest_confirmed: Option<usize>,
}

/// Per-rank verdicts for a one-relator presentation, optionally confirming
/// supplied candidates `(m, candidate)`.
pub fn internal_rank_report(
    pres: &Presentation,
    truncation: usize,
    m_max: usize,
    candidates: &[(usize, HomCandidate)],
    opts: SearchOptions,
) -> Result<RankReport> {
    let n = pres.num_generators();
    let [r] = pres.relators() else {
        return Err(Error::Unsupported(format!(
            "the obstruction is stated for one relator, got {}",
            pres.relators().len()
        )));
    };
    if m_max > n {
        return Err(Error::InvalidInput(format!("m_max={m_max} exceeds the number of generators {n}")));
    }
    let v = valuation(r, pres.prime(), truncation);
    if let Valuation::AtLeast(_) = v {
        return Err(Error::ValuationExceedsTruncation { valuation: v, truncation });
    }
    let eta = leading_form(r, pres.prime(), truncation, n)?;
    let mut entries = Vec::new();
    for m in 1..=m_max {
        let rep = search_obstruction(&eta, n, m, opts)?;
        let candidate = candidates
            .iter()
            .filter(|(cm, _)| *cm == m)
            .map(|(_, c)| verify_epimorphism(pres, c, m))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max_by_key(|c| *c == EpiCheck::EpiConfirmed);
        entries.push(RankEntry {
            m,
            spaces: rep.spaces,
            verdict: rep.verdict,
            witnesses: rep.witnesses.len(),
            candidate,
        });
    }
    let largest_no_epi = entries.iter().filter(|e| e.verdict == Verdict::NoEpiCertified).map(|e| e.m).max();
    let upper_bound = entries.iter().find(|e| e.verdict == Verdict::NoEpiCertified).map(|e| e.m - 1);
    let largest_confirmed = entries.iter().filter(|e| e.candidate == Some(EpiCheck::EpiConfirmed)).map(|e| e.m).max();
    Ok(RankReport { n, k: eta.degree(), entries, largest_no_epi, upper_bound, largest_confirmed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Monomial;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn squares_form(n: usize) -> LeadingForm {
        LeadingForm::new(p(2), n, (0..n).map(|i| (Monomial::new(vec![i, i]), 1))).unwrap()
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 2, p(2)), 7);
        assert_eq!(gaussian_binomial(4, 2, p(2)), 35);
        assert_eq!(gaussian_binomial(4, 1, p(3)), 40);
        assert_eq!(gaussian_binomial(5, 0, p(5)), 1);
        assert_eq!(gaussian_binomial(2, 3, p(2)), 0);
    }

    #[test]
    fn shapes_enumerate_gaussian_binomial() {
        for (n, m, pr) in [(3, 2, 2u64), (4, 2, 3), (5, 3, 2), (4, 4, 5)] {
            let total: u128 = echelon_shapes(n, m).iter().map(|s| (pr as u128).pow(s.free.len() as u32)).sum();
            assert_eq!(total, gaussian_binomial(n, m, p(pr)));
        }
    }

    #[test]
    fn two_squares_rank_two_is_obstructed() {
        let rep = search_obstruction(&squares_form(2), 2, 2, SearchOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NoEpiCertified);
        assert_eq!(rep.spaces, 1);
        assert!(rep.witnesses.is_empty());
    }

    #[test]
    fn two_squares_rank_one_witness() {
        let rep = search_obstruction(&squares_form(2), 2, 1, SearchOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CandidateExists);
        assert_eq!(rep.spaces, 3);
        assert_eq!(rep.witnesses, vec![FpMatrix::from_rows(p(2), &[vec![1], vec![1]])]);
    }

    #[test]
    fn commutator_form_always_passes_mod_two() {
        let eta = LeadingForm::new(p(2), 2, [(Monomial::new(vec![0, 1]), 1), (Monomial::new(vec![1, 0]), 1)]).unwrap();
        let rep = search_obstruction(&eta, 2, 1, SearchOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CandidateExists);
        assert_eq!(rep.witnesses.len(), 3);
    }

    #[test]
    fn rejects_bad_ranks_and_guardrail() {
        let eta = squares_form(2);
        assert!(search_obstruction(&eta, 2, 3, SearchOptions::default()).is_err());
        assert!(search_obstruction(&eta, 2, 0, SearchOptions::default()).is_err());
        let big = LeadingForm::new(p(2), 3, [(Monomial::new(vec![0; 25]), 1)]).unwrap();
        let err = search_obstruction(&big, 3, 2, SearchOptions::default()).unwrap_err();
        assert!(err.is_guardrail());
    }

    #[test]
    fn parallel_matches_sequential() {
        let eta = squares_form(4);
        for m in 1..=4 {
            let seq = search_obstruction(&eta, 4, m, SearchOptions::default()).unwrap();
            let par = search_obstruction(&eta, 4, m, SearchOptions { threads: 4, ..Default::default() }).unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn verify_examples() {
        let pres = Presentation::with_default_names(
            p(2),
            4,
            vec![GroupWord::from_syllables([(0, 2), (1, 2), (2, 2), (3, 2)])],
        )
        .unwrap();
        let y1 = GroupWord::generator(0);
        let y2 = GroupWord::generator(1);
        let good = HomCandidate { images: vec![y1.clone(), y1.inverse(), y2.clone(), y2.inverse()] };
        assert_eq!(verify_epimorphism(&pres, &good, 2).unwrap(), EpiCheck::EpiConfirmed);
        let trivial = HomCandidate { images: vec![GroupWord::identity(); 4] };
        assert_eq!(verify_epimorphism(&pres, &trivial, 1).unwrap(), EpiCheck::NotSurjective);
        let bad = HomCandidate { images: vec![y1.clone(), y1.clone(), y2.clone(), y2.clone()] };
        assert_eq!(verify_epimorphism(&pres, &bad, 2).unwrap(), EpiCheck::NotHom);
        assert!(verify_epimorphism(&pres, &good, 1).is_err());

        let cyclic = Presentation::with_default_names(p(2), 1, vec![GroupWord::power(0, 2)]).unwrap();
        let c = HomCandidate { images: vec![y1] };
        assert_eq!(verify_epimorphism(&cyclic, &c, 1).unwrap(), EpiCheck::NotHom);
    }

    #[test]
    fn report_json_shape() {
        let rep = search_obstruction(&squares_form(2), 2, 1, SearchOptions::default()).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v, serde_json::json!({"m":1,"k":2,"spaces":3,"verdict":"CANDIDATE_EXISTS","witnesses":[[[1],[1]]]}));
    }

    #[test]
    fn multi_relator_unsupported() {
        let pres =
            Presentation::with_default_names(p(2), 2, vec![GroupWord::power(0, 2), GroupWord::power(1, 2)]).unwrap();
        assert!(matches!(internal_rank_report(&pres, 4, 1, &[], SearchOptions::default()), Err(Error::Unsupported(_))));
    }
}
