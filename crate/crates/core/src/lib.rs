//! Exact computations on finitely presented pro-p groups.
//!
//! Words and presentations live in [`word`] and [`parse`]; [`series`] and
//! [`matrix`] provide the F_p arithmetic that the Magnus embedding
//! ([`magnus`]), Fox calculus ([`fox`]) and truncated group algebras
//! ([`quotient`]) are built on. [`obstruction`] decides the linear
//! necessary condition for epimorphisms onto free pro-p groups, [`gs`]
//! evaluates Golod–Shafarevich and Koch inequalities, and [`simplicial`]
//! holds the desk-scale simplicial machinery.

pub mod error;
pub mod field;
pub mod fox;
pub mod gs;
pub mod magnus;
pub mod matrix;
pub mod obstruction;
pub mod parse;
pub mod quotient;
pub mod selftest;
pub mod series;
pub mod simplicial;
pub mod word;

pub use error::{Error, Result};
pub use field::Prime;
pub use fox::{fox_derivative, fox_jacobian, fundamental_identity_check, magnus_image, GroupRingElement};
pub use gs::{gs_quadratic, gs_report, koch_power_bound, koch_report, relator_degree_sequence, GsReport};
pub use magnus::{leading_form, magnus_expand, valuation, LeadingForm, Valuation};
pub use matrix::{sparse_rank, FpMatrix};
pub use obstruction::{
    internal_rank_report, search_obstruction, verify_epimorphism, EpiCheck, HomCandidate, ObstructionReport,
    RankReport, SearchOptions, Verdict,
};
pub use parse::{parse_presentation, parse_word};
pub use quotient::{build_quotient, GradingReport, Projection, QuotientAlgebra, QuotientOptions};
pub use series::{Monomial, TruncatedSeries};
pub use simplicial::{
    build_one_skeleton, e1_dimensions, peiffer_commutator, peiffer_lifting, peiffer_lifting_check, wbar_homology,
    FiniteGroupTable, SimplicialFpModule, SimplicialSkeleton,
};
pub use word::{GroupWord, Presentation, Syllable};
