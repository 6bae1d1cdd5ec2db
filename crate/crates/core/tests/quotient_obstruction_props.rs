//! Property suites for truncated quotient algebras and the epimorphism obstruction.

use prop_core::obstruction::{gaussian_binomial, satisfies_condition};
use prop_core::{
    build_quotient, leading_form, search_obstruction, valuation, verify_epimorphism, EpiCheck, FpMatrix, GroupWord,
    HomCandidate, LeadingForm, Monomial, Presentation, Prime, QuotientOptions, SearchOptions, TruncatedSeries, Verdict,
};
use proptest::prelude::*;

fn prime_small() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3]).prop_map(|p| Prime::new(p).unwrap())
}

fn word(d: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..d, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_len).prop_map(GroupWord::from_syllables)
}

fn nontrivial(d: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    word(d, max_len).prop_filter("nontrivial relator", |w| !w.is_identity())
}

fn b_of(p: Prime, d: usize, rels: Vec<GroupWord>, n: usize) -> Vec<u64> {
    let pres = Presentation::with_default_names(p, d, rels).unwrap();
    build_quotient(&pres, n, QuotientOptions::default()).unwrap().b().to_vec()
}

/// A random homogeneous nonzero form of degree `k` in `n` variables.
fn form(p: Prime, n: usize, k: usize) -> impl Strategy<Value = LeadingForm> {
    prop::collection::vec((prop::collection::vec(0..n, k), 1..p.get() as i64), 1..5)
        .prop_map(move |terms| LeadingForm::new(p, n, terms.into_iter().map(|(m, c)| (Monomial::new(m), c))))
        .prop_filter_map("zero form", Result::ok)
}

fn form_case() -> impl Strategy<Value = (LeadingForm, usize)> {
    (prime_small(), 2usize..=3, 1usize..=3).prop_flat_map(|(p, n, k)| (form(p, n, k), 1..=n))
}

/// `η(X_i ↦ Σ_j g_ij X_j)` expanded monomial by monomial.
fn substitute(eta: &LeadingForm, g: &FpMatrix) -> Option<LeadingForm> {
    let p = eta.prime();
    let n = eta.num_generators();
    let mut terms = Vec::new();
    for (mono, a) in eta.terms() {
        let mut partial: Vec<(Vec<usize>, u16)> = vec![(vec![], a)];
        for &i in mono.letters() {
            partial = partial
                .into_iter()
                .flat_map(|(m, c)| {
                    (0..n).filter(|&j| g.get(i, j) != 0).map(move |j| {
                        let mut m = m.clone();
                        m.push(j);
                        (m, p.mul(c, g.get(i, j)))
                    })
                })
                .collect();
        }
        terms.extend(partial.into_iter().map(|(m, c)| (Monomial::new(m), c as i64)));
    }
    LeadingForm::new(p, n, terms).ok()
}

fn all_matrices(p: Prime, n: usize, m: usize) -> impl Iterator<Item = FpMatrix> {
    let q = p.get() as u64;
    (0..q.pow((n * m) as u32)).map(move |mut code| {
        let mut b = FpMatrix::zeros(p, n, m);
        for i in 0..n {
            for j in 0..m {
                b.set(i, j, (code % q) as u16);
                code /= q;
            }
        }
        b
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adding_relators_never_grows_the_algebra(p in prime_small(), r in nontrivial(2, 5), s in nontrivial(2, 5)) {
        let one = b_of(p, 2, vec![r.clone()], 4);
        let two = b_of(p, 2, vec![r, s], 4);
        let free = b_of(p, 2, vec![], 4);
        for n in 0..=4 {
            prop_assert!(two[n] <= one[n] && one[n] <= free[n]);
        }
    }

    #[test]
    fn conjugate_and_inverse_relators_give_the_same_algebra(p in prime_small(), r in nontrivial(2, 5), u in word(2, 4)) {
        let base = b_of(p, 2, vec![r.clone()], 4);
        let conj = u.multiply(&r).multiply(&u.inverse());
        prop_assert_eq!(b_of(p, 2, vec![conj], 4), base.clone());
        prop_assert_eq!(b_of(p, 2, vec![r.inverse()], 4), base);
    }

    #[test]
    fn degree_one_dimension_is_the_frattini_rank(p in prime_small(), rels in prop::collection::vec(nontrivial(3, 5), 0..3)) {
        let sums: Vec<Vec<i64>> = rels.iter().map(|r| r.exponent_sums(3)).collect();
        let rank = if sums.is_empty() { 0 } else { FpMatrix::from_rows(p, &sums).rank() };
        prop_assert_eq!(b_of(p, 3, rels, 2)[1], 3 - rank as u64);
    }

    #[test]
    fn projection_is_linear(p in prime_small(), r in nontrivial(2, 5), u in word(2, 5), v in word(2, 5)) {
        let pres = Presentation::with_default_names(p, 2, vec![r]).unwrap();
        let q = build_quotient(&pres, 4, QuotientOptions::default()).unwrap();
        let e = |w: &GroupWord| prop_core::magnus_expand(w, p, 4, 2).unwrap();
        let sum: TruncatedSeries = e(&u).add(&e(&v)).unwrap();
        let (pu, pv, ps) = (q.project(&e(&u)).unwrap(), q.project(&e(&v)).unwrap(), q.project(&sum).unwrap());
        for n in 0..pu.coords.len() {
            let added: Vec<u16> = pu.coords[n].iter().zip(&pv.coords[n]).map(|(&a, &b)| p.add(a, b)).collect();
            prop_assert_eq!(&ps.coords[n], &added);
        }
    }

    #[test]
    fn echelon_search_is_exhaustive((eta, m) in form_case()) {
        let p = eta.prime();
        let n = eta.num_generators();
        let rep = search_obstruction(&eta, n, m, SearchOptions::default()).unwrap();
        prop_assert_eq!(rep.spaces, gaussian_binomial(n, m, p));
        let brute = all_matrices(p, n, m).any(|b| b.rank() == m && satisfies_condition(&eta, &b));
        prop_assert_eq!(rep.verdict == Verdict::CandidateExists, brute);
        for w in &rep.witnesses {
            prop_assert!(satisfies_condition(&eta, w));
            prop_assert_eq!(w.rank(), m);
        }
    }

    #[test]
    fn verdict_is_invariant_under_linear_change_and_scaling((eta, m) in form_case(), entries in prop::collection::vec(0u16..3, 9), c in 1u16..3) {
        let p = eta.prime();
        let n = eta.num_generators();
        let mut g = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, entries[i * 3 + j] % p.get());
            }
        }
        prop_assume!(g.rank() == n);
        let base = search_obstruction(&eta, n, m, SearchOptions::default()).unwrap();
        if let Some(moved) = substitute(&eta, &g) {
            let other = search_obstruction(&moved, n, m, SearchOptions::default()).unwrap();
            prop_assert_eq!(other.verdict, base.verdict);
            prop_assert_eq!(other.witnesses.len(), base.witnesses.len());
        } else {
            // a form cannot vanish under an invertible substitution
            prop_assert!(false, "substitution killed the form");
        }
        let c = c % p.get();
        prop_assume!(c != 0);
        let scaled = search_obstruction(&eta.scale(c).unwrap(), n, m, SearchOptions::default()).unwrap();
        prop_assert_eq!(scaled, base);
    }

    #[test]
    fn confirmed_epimorphisms_are_never_obstructed(
        p in prime_small(),
        w in word(3, 5),
        u in word(2, 4),
    ) {
        // x1 ↦ y1, x2 ↦ y2, x3 ↦ u(y1, y2); the relator w · ψ(w)⁻¹ lies in the kernel
        let images = vec![GroupWord::generator(0), GroupWord::generator(1), u.clone()];
        let psi = w.substitute(&images).unwrap();
        let r = w.multiply(&psi.inverse());
        prop_assume!(!r.is_identity());
        let pres = Presentation::with_default_names(p, 3, vec![r.clone()]).unwrap();
        let cand = HomCandidate { images };
        prop_assert_eq!(verify_epimorphism(&pres, &cand, 2).unwrap(), EpiCheck::EpiConfirmed);
        let Some(k) = valuation(&r, p, 5).exact() else { return Ok(()); };
        let eta = leading_form(&r, p, k, 3).unwrap();
        let rep = search_obstruction(&eta, 3, 2, SearchOptions::default()).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::CandidateExists);
    }

    #[test]
    fn parallel_search_is_deterministic((eta, m) in form_case()) {
        let n = eta.num_generators();
        let seq = search_obstruction(&eta, n, m, SearchOptions::default()).unwrap();
        let par = search_obstruction(&eta, n, m, SearchOptions { threads: 3, override_guardrail: false }).unwrap();
        prop_assert_eq!(seq, par);
    }
}

#[test]
fn cyclic_groups_have_truncated_polynomial_algebras() {
    for pv in [2u64, 3, 5] {
        let p = Prime::new(pv).unwrap();
        let b = b_of(p, 1, vec![GroupWord::power(0, pv as i64)], 6);
        let want: Vec<u64> = (0..=6).map(|n| u64::from(n < pv as usize)).collect();
        assert_eq!(b, want, "p = {pv}");
    }
}
