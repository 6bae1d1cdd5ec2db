//! Peiffer commutators in level 1 of a skeleton and the Peiffer lifting in level 2.

use rand::Rng;

use super::{SimplicialOp, SimplicialSkeleton};
use crate::error::{Error, Result};
use crate::word::GroupWord;

use SimplicialOp::{Degeneracy as S, Face as D};

/// Group commutator `aba⁻¹b⁻¹`, the convention under which the lifting
/// identities below hold exactly.
fn group_commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
    a.multiply(b).multiply(&a.inverse()).multiply(&b.inverse())
}

fn require_level(sk: &SimplicialSkeleton, level: usize) -> Result<()> {
    if sk.max_level() < level {
        return Err(Error::Precondition(format!("skeleton must reach level {level}")));
    }
    Ok(())
}

/// `⟨a,b⟩ = a b a⁻¹ (s b s⁻¹)⁻¹` with `s = s_0 d_1(a)`, for level-1 words.
pub fn peiffer_commutator(a: &GroupWord, b: &GroupWord, sk: &SimplicialSkeleton) -> Result<GroupWord> {
    require_level(sk, 1)?;
    let s = sk.apply(0, S(0), &sk.apply(1, D(1), a)?)?;
    // substituting validates that `b` lives in level 1
    sk.apply(1, D(0), b)?;
    let acted = s.multiply(b).multiply(&s.inverse());
    Ok(a.multiply(b).multiply(&a.inverse()).multiply(&acted.inverse()))
}

/// `{x,y} = [s_0 x, s_1 y][s_1 y, s_1 x]` in level 2.
pub fn peiffer_lifting(x: &GroupWord, y: &GroupWord, sk: &SimplicialSkeleton) -> Result<GroupWord> {
    require_level(sk, 2)?;
    let s0x = sk.apply(1, S(0), x)?;
    let s1x = sk.apply(1, S(1), x)?;
    let s1y = sk.apply(1, S(1), y)?;
    Ok(group_commutator(&s0x, &s1y).multiply(&group_commutator(&s1y, &s1x)))
}

/// Checks `d_0{x,y} = d_1{x,y} = 1` and `d_2{x,y}·⟨x,y⟩ = 1` for `x, y ∈ Ker d_0`.
///
/// With the commutator convention above, `d_2{x,y}` is the inverse of the
/// Peiffer commutator.
pub fn peiffer_lifting_check(x: &GroupWord, y: &GroupWord, sk: &SimplicialSkeleton) -> Result<bool> {
    for (name, w) in [("x", x), ("y", y)] {
        if !sk.apply(1, D(0), w)?.is_identity() {
            return Err(Error::Precondition(format!("{name} is not in the kernel of d0")));
        }
    }
    let lift = peiffer_lifting(x, y, sk)?;
    let d0 = sk.apply(2, D(0), &lift)?;
    let d1 = sk.apply(2, D(1), &lift)?;
    let d2 = sk.apply(2, D(2), &lift)?;
    let pc = peiffer_commutator(x, y, sk)?;
    Ok(d0.is_identity() && d1.is_identity() && d2.multiply(&pc).is_identity())
}

/// A random element of `Ker d_0` in level 1: `w · s_0 d_0(w)⁻¹` for a random word `w`.
pub fn random_kernel_word<R: Rng + ?Sized>(sk: &SimplicialSkeleton, rng: &mut R, length: usize) -> GroupWord {
    let count = sk.num_generators(1);
    let w = GroupWord::from_syllables((0..length).map(|_| {
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        (rng.gen_range(0..count), e * rng.gen_range(1..=2))
    }));
    let back = sk.apply(1, D(0), &w).and_then(|v| sk.apply(0, S(0), &v)).expect("level-1 word");
    w.multiply(&back.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;
    use crate::simplicial::build_one_skeleton;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sk(text: &str) -> SimplicialSkeleton {
        build_one_skeleton(&parse_presentation(text).unwrap(), 2).unwrap()
    }

    #[test]
    fn single_relator_generator() {
        let sk = sk("p=2 gens: x rels: x^2");
        let y = GroupWord::generator(sk.relator_generator(0, 1, 1));
        assert!(peiffer_lifting_check(&y, &y, &sk).unwrap());
        // ⟨y,y⟩ = y y y⁻¹ (x² y x⁻²)⁻¹ = y x² y⁻¹ x⁻², nontrivial in the free group
        let pc = peiffer_commutator(&y, &y, &sk).unwrap();
        assert_eq!(pc, GroupWord::from_syllables([(1, 1), (0, 2), (1, -1), (0, -2)]));
    }

    #[test]
    fn identity_arguments() {
        let sk = sk("p=2 gens: x rels: x^2");
        let y = GroupWord::generator(1);
        let one = GroupWord::identity();
        assert!(peiffer_commutator(&one, &y, &sk).unwrap().is_identity());
        assert!(peiffer_lifting_check(&one, &y, &sk).unwrap());
    }

    #[test]
    fn base_generator_is_outside_kernel() {
        let sk = sk("p=2 gens: x rels: x^2");
        let x = GroupWord::generator(0);
        assert!(matches!(peiffer_lifting_check(&x, &x, &sk), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_kernel_pairs() {
        let sk = sk("p=3 gens: a, b rels: a^3; [a,b]");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_kernel_word(&sk, &mut rng, 4);
            let y = random_kernel_word(&sk, &mut rng, 4);
            assert!(peiffer_lifting_check(&x, &y, &sk).unwrap());
        }
    }
}
