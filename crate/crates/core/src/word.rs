//! Freely reduced words in a free group and finite presentations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;

/// A power `x_gen^exp` of a single generator, `exp != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced word: adjacent syllables use distinct generators and no
/// exponent is zero. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord {
    syllables: Vec<Syllable>,
}

fn push_reduced(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exp == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.gen == s.gen => {
            last.exp += s.exp;
            if last.exp == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(gen: usize) -> Self {
        Self::power(gen, 1)
    }

    pub fn power(gen: usize, exp: i64) -> Self {
        Self::from_syllables([(gen, exp)])
    }

    /// Builds a word from arbitrary `(generator, exponent)` pairs, freely reducing.
    pub fn from_syllables(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out = Vec::new();
        for (gen, exp) in pairs {
            push_reduced(&mut out, Syllable { gen, exp });
        }
        GroupWord { syllables: out }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_reduced(&mut out, s);
        }
        GroupWord { syllables: out }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { syllables: self.syllables.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect() }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> GroupWord {
        if self.syllables.len() == 1 {
            let s = self.syllables[0];
            return GroupWord::power(s.gen, s.exp * k);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// The commutator `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &GroupWord, v: &GroupWord) -> GroupWord {
        u.inverse().multiply(&v.inverse()).multiply(u).multiply(v)
    }

    /// Applies the homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[GroupWord]) -> Result<GroupWord> {
        let mut out = GroupWord::identity();
        for s in &self.syllables {
            let img = images.get(s.gen).ok_or(Error::IndexOutOfRange { index: s.gen, count: images.len() })?;
            out = out.multiply(&img.pow(s.exp));
        }
        Ok(out)
    }

    /// Exponent sum of each of the first `d` generators.
    pub fn exponent_sums(&self, d: usize) -> Vec<i64> {
        let mut sums = vec![0; d];
        for s in &self.syllables {
            if s.gen < d {
                sums[s.gen] += s.exp;
            }
        }
        sums
    }

    /// Renders the word with the given generator names; falls back to `x<i+1>`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&[]).fmt(f)
    }
}

pub struct WordDisplay<'a> {
    word: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (k, s) in self.word.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(s.gen) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "x{}", s.gen + 1)?,
            }
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

/// A finite presentation of a pro-p group: prime, named generators, relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    prime: Prime,
    generators: Vec<String>,
    relators: Vec<GroupWord>,
}

impl Presentation {
    pub fn new(prime: Prime, generators: Vec<String>, relators: Vec<GroupWord>) -> Result<Self> {
        for (i, name) in generators.iter().enumerate() {
            if generators[..i].contains(name) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        for (k, r) in relators.iter().enumerate() {
            if r.is_identity() {
                return Err(Error::TrivialRelator(k));
            }
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(Error::IndexOutOfRange { index: g, count: generators.len() });
                }
            }
        }
        Ok(Presentation { prime, generators, relators })
    }

    /// Presentation with generators named `x1..xd`.
    pub fn with_default_names(prime: Prime, d: usize, relators: Vec<GroupWord>) -> Result<Self> {
        Self::new(prime, (1..=d).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn display_word<'a>(&'a self, w: &'a GroupWord) -> WordDisplay<'a> {
        w.display_with(&self.generators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} gens: {} rels: ", self.prime, self.generators.join(","))?;
        for (k, r) in self.relators.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", self.display_word(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(usize, i64)]) -> GroupWord {
        GroupWord::from_syllables(pairs.iter().copied())
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(w(&[(0, 2)]).multiply(&w(&[(0, -1)])), w(&[(0, 1)]));
        assert!(w(&[(0, 1), (1, 1)]).multiply(&w(&[(1, -1), (0, -1)])).is_identity());
        assert_eq!(w(&[(0, 1)]).multiply(&w(&[(1, 1)])).syllables().len(), 2);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(&[(0, 1), (1, 1)]).inverse(), w(&[(1, -1), (0, -1)]));
        assert!(GroupWord::identity().inverse().is_identity());
        assert_eq!(w(&[(0, 3)]).inverse(), w(&[(0, -3)]));
    }

    #[test]
    fn commutator_convention() {
        let x1 = GroupWord::generator(0);
        let x2 = GroupWord::generator(1);
        assert_eq!(GroupWord::commutator(&x1, &x2), w(&[(0, -1), (1, -1), (0, 1), (1, 1)]));
        assert!(GroupWord::commutator(&x1, &x1).is_identity());
        for p in [2i64, 3, 5] {
            let x1p = GroupWord::power(0, p);
            let r = x1p.multiply(&GroupWord::commutator(&x2, &x1p));
            assert_eq!(r, w(&[(0, p), (1, -1), (0, -p), (1, 1), (0, p)]));
        }
    }

    #[test]
    fn from_syllables_reduces() {
        assert!(w(&[(0, 1), (1, 2), (1, -2), (0, -1)]).is_identity());
        assert_eq!(w(&[(0, 0), (1, 1)]), GroupWord::generator(1));
    }

    #[test]
    fn substitute_and_exponent_sums() {
        let r = w(&[(0, 2), (1, 2), (2, 2), (3, 2)]);
        let y1 = GroupWord::generator(0);
        let y2 = GroupWord::generator(1);
        let images = [y1.clone(), y1.inverse(), y2.clone(), y2.inverse()];
        assert_eq!(r.substitute(&images).unwrap(), w(&[(0, 2), (0, -2), (1, 2), (1, -2)]));
        assert_eq!(r.exponent_sums(4), vec![2, 2, 2, 2]);
        assert!(r.substitute(&images[..2]).is_err());
    }

    #[test]
    fn presentation_validation() {
        let p = Prime::new(2).unwrap();
        assert!(Presentation::with_default_names(p, 1, vec![GroupWord::identity()]).is_err());
        assert!(Presentation::with_default_names(p, 1, vec![GroupWord::generator(1)]).is_err());
        assert!(Presentation::new(p, vec!["a".into(), "a".into()], vec![]).is_err());
    }
}
