//! The simplicial free group obtained by attaching one relator generator per
//! monotone surjection `[n] ↠ [1]` over a presentation.
//!
//! Generator indices at level `n`: the `d` base generators first, then
//! `y_{λ,j}` at `d + λ·n + (j − 1)`, where `j ∈ 1..=n` is the position of the
//! step of the surjection (`t(x) = 1` iff `x ≥ j`).

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{identity_instances, IdentityInstance, SimplicialOp};
use crate::error::{Error, Result};
use crate::word::{GroupWord, Presentation};

#[derive(Debug, Clone)]
struct Level {
    labels: Vec<String>,
    /// `faces[i][g]` is the image of generator `g` under `d_i` (empty at level 0).
    faces: Vec<Vec<GroupWord>>,
    /// `degeneracies[i][g]`; empty at the top level.
    degeneracies: Vec<Vec<GroupWord>>,
}

#[derive(Debug, Clone)]
pub struct SimplicialSkeleton {
    pres: Presentation,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: String,
    pub level: usize,
    pub generator: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// Number of (identity instance, generator) pairs evaluated.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Values of the surjection with step `j` on `[n]`.
fn step_values(n: usize, j: usize) -> Vec<bool> {
    (0..=n).map(|x| x >= j).collect()
}

enum Image {
    Step(usize),
    AllZero,
    AllOne,
}

fn classify(values: &[bool]) -> Image {
    match values.iter().position(|&v| v) {
        None => Image::AllZero,
        Some(0) => Image::AllOne,
        Some(j) => Image::Step(j),
    }
}

fn coface(i: usize, x: usize) -> usize {
    if x < i {
        x
    } else {
        x + 1
    }
}

fn codegeneracy(i: usize, x: usize) -> usize {
    if x <= i {
        x
    } else {
        x - 1
    }
}

impl SimplicialSkeleton {
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn num_generators(&self, level: usize) -> usize {
        self.levels[level].labels.len()
    }

    /// Number of relator generators at `level`: one per relator and surjection.
    pub fn relator_generator_count(&self, level: usize) -> usize {
        self.num_generators(level) - self.pres.num_generators()
    }

    pub fn labels(&self, level: usize) -> &[String] {
        &self.levels[level].labels
    }

    /// Index of `y_{λ,t}` at `level`, where `t` has its step at `step ∈ 1..=level`.
    pub fn relator_generator(&self, relator: usize, level: usize, step: usize) -> usize {
        assert!(relator < self.pres.relators().len() && (1..=level).contains(&step));
        self.pres.num_generators() + relator * level + step - 1
    }

    pub fn face(&self, level: usize, i: usize) -> &[GroupWord] {
        &self.levels[level].faces[i]
    }

    pub fn degeneracy(&self, level: usize, i: usize) -> &[GroupWord] {
        &self.levels[level].degeneracies[i]
    }

    fn check_word(&self, level: usize, w: &GroupWord) -> Result<()> {
        let count = self.num_generators(level);
        match w.max_generator() {
            Some(g) if g >= count => Err(Error::IndexOutOfRange { index: g, count }),
            _ => Ok(()),
        }
    }

    /// Applies `op` to a word of `level`.
    pub fn apply(&self, level: usize, op: SimplicialOp, w: &GroupWord) -> Result<GroupWord> {
        let lvl = self.levels.get(level).ok_or(Error::IndexOutOfRange { index: level, count: self.levels.len() })?;
        let maps = match op {
            SimplicialOp::Face(_) => &lvl.faces,
            SimplicialOp::Degeneracy(_) => &lvl.degeneracies,
        };
        let (SimplicialOp::Face(i) | SimplicialOp::Degeneracy(i)) = op;
        let map = maps.get(i).ok_or_else(|| Error::InvalidInput(format!("{op} is not defined on level {level}")))?;
        w.substitute(map)
    }

    fn apply_all(&self, level: usize, ops: &[SimplicialOp], w: &GroupWord) -> Result<GroupWord> {
        let mut level = level;
        let mut w = w.clone();
        for &op in ops {
            w = self.apply(level, op, &w)?;
            level = op.target_level(level);
        }
        Ok(w)
    }

    /// Replaces the image of one generator under `d_i` at `level`.
    pub fn override_face(&mut self, level: usize, i: usize, generator: usize, image: GroupWord) -> Result<()> {
        if level == 0 || level > self.max_level() || i > level || generator >= self.num_generators(level) {
            return Err(Error::InvalidInput(format!("no face d{i} of generator {generator} on level {level}")));
        }
        self.check_word(level - 1, &image)?;
        self.levels[level].faces[i][generator] = image;
        Ok(())
    }

    /// Evaluates every applicable simplicial identity on every generator.
    pub fn check_identities(&self) -> IdentityReport {
        let instances = identity_instances(self.max_level());
        let jobs: Vec<(&IdentityInstance, usize)> =
            instances.iter().flat_map(|inst| (0..self.num_generators(inst.level)).map(move |g| (inst, g))).collect();
        let violations: Vec<Violation> = jobs
            .par_iter()
            .filter_map(|&(inst, g)| {
                let w = GroupWord::generator(g);
                let lhs = self.apply_all(inst.level, &inst.lhs, &w).expect("instances are in range");
                let rhs = self.apply_all(inst.level, &inst.rhs, &w).expect("instances are in range");
                (lhs != rhs).then(|| {
                    let target = inst.lhs.iter().fold(inst.level, |l, op| op.target_level(l));
                    let names = self.labels(target);
                    Violation {
                        identity: inst.to_string(),
                        level: inst.level,
                        generator: self.labels(inst.level)[g].clone(),
                        lhs: lhs.display_with(names).to_string(),
                        rhs: rhs.display_with(names).to_string(),
                    }
                })
            })
            .collect();
        IdentityReport { checked: jobs.len(), violations }
    }

    /// Generator labels with their face and degeneracy images, level by level.
    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, lvl)| {
                let gens: Vec<Value> = lvl
                    .labels
                    .iter()
                    .enumerate()
                    .map(|(g, label)| {
                        let faces: Vec<String> =
                            lvl.faces.iter().map(|m| m[g].display_with(self.labels(n - 1)).to_string()).collect();
                        let degs: Vec<String> = lvl
                            .degeneracies
                            .iter()
                            .map(|m| m[g].display_with(self.labels(n + 1)).to_string())
                            .collect();
                        json!({"label": label, "faces": faces, "degeneracies": degs})
                    })
                    .collect();
                json!({"level": n, "generators": gens})
            })
            .collect();
        json!({"max_level": self.max_level(), "levels": levels})
    }
}

/// Builds levels `0..=max_level` of the one-skeleton of `pres`.
///
/// A face of `y_{λ,t}` whose composite `t∘δ_i` is constant at 0 is the relator
/// word itself, read in the base generators of the lower level (the base
/// generators are fixed by every degeneracy, so iterated `s_0` is the identity
/// on them).
pub fn build_one_skeleton(pres: &Presentation, max_level: usize) -> Result<SimplicialSkeleton> {
    if max_level < 1 {
        return Err(Error::InvalidInput("skeleton needs at least one level above 0".into()));
    }
    let d = pres.num_generators();
    let rels = pres.relators().len();
    let base: Vec<GroupWord> = (0..d).map(GroupWord::generator).collect();
    let y = |level: usize, lambda: usize, step: usize| GroupWord::generator(d + lambda * level + step - 1);

    let mut levels = Vec::with_capacity(max_level + 1);
    for n in 0..=max_level {
        let mut labels: Vec<String> = pres.generators().to_vec();
        for lambda in 0..rels {
            for j in 1..=n {
                let t: String = step_values(n, j).iter().map(|&v| if v { '1' } else { '0' }).collect();
                labels.push(format!("y{}.{t}", lambda + 1));
            }
        }

        let faces: Vec<Vec<GroupWord>> = if n == 0 {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| {
                    let mut map = base.clone();
                    for (lambda, r) in pres.relators().iter().enumerate() {
                        for j in 1..=n {
                            let t = step_values(n, j);
                            let u: Vec<bool> = (0..n).map(|x| t[coface(i, x)]).collect();
                            map.push(match classify(&u) {
                                Image::Step(k) => y(n - 1, lambda, k),
                                Image::AllZero => r.clone(),
                                Image::AllOne => GroupWord::identity(),
                            });
                        }
                    }
                    map
                })
                .collect()
        };

        let degeneracies: Vec<Vec<GroupWord>> = if n == max_level {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| {
                    let mut map = base.clone();
                    for lambda in 0..rels {
                        for j in 1..=n {
                            let t = step_values(n, j);
                            let u: Vec<bool> = (0..=n + 1).map(|x| t[codegeneracy(i, x)]).collect();
                            let Image::Step(k) = classify(&u) else {
                                unreachable!("degeneracies of surjections are surjective")
                            };
                            map.push(y(n + 1, lambda, k));
                        }
                    }
                    map
                })
                .collect()
        };
        levels.push(Level { labels, faces, degeneracies });
    }
    Ok(SimplicialSkeleton { pres: pres.clone(), levels })
}
