//! Desk-scale simplicial machinery: the one-skeleton of a presentation,
//! Peiffer identities, Moore homology of simplicial F_p-modules, bar-complex
//! homology of finite groups and E¹-page dimensions.

mod e1;
mod module;
mod peiffer;
mod skeleton;
mod wbar;

pub use e1::e1_dimensions;
pub use module::SimplicialFpModule;
pub use peiffer::{peiffer_commutator, peiffer_lifting, peiffer_lifting_check, random_kernel_word};
pub use skeleton::{build_one_skeleton, IdentityReport, SimplicialSkeleton, Violation};
pub use wbar::{wbar_homology, FiniteGroupTable, WBAR_LIMIT};

use std::fmt;

/// A face `d_i` or degeneracy `s_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplicialOp {
    Face(usize),
    Degeneracy(usize),
}

impl SimplicialOp {
    /// Level reached by applying the operation to an element of `level`.
    pub fn target_level(self, level: usize) -> usize {
        match self {
            SimplicialOp::Face(_) => level - 1,
            SimplicialOp::Degeneracy(_) => level + 1,
        }
    }
}

impl fmt::Display for SimplicialOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicialOp::Face(i) => write!(f, "d{i}"),
            SimplicialOp::Degeneracy(i) => write!(f, "s{i}"),
        }
    }
}

/// One instance of a simplicial identity, applied to elements of `level`.
/// Operations are listed in the order they are applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityInstance {
    pub identity: &'static str,
    pub level: usize,
    pub lhs: Vec<SimplicialOp>,
    pub rhs: Vec<SimplicialOp>,
}

impl fmt::Display for IdentityInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ops: &[SimplicialOp]| {
            if ops.is_empty() {
                "id".to_string()
            } else {
                ops.iter().rev().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            }
        };
        write!(f, "{} = {} on level {}", side(&self.lhs), side(&self.rhs), self.level)
    }
}

/// Every instance of the simplicial identities whose intermediate levels stay within `0..=max_level`.
pub fn identity_instances(max_level: usize) -> Vec<IdentityInstance> {
    use SimplicialOp::{Degeneracy as S, Face as D};
    let mut out = Vec::new();
    let mut push = |identity, level, lhs: Vec<SimplicialOp>, rhs: Vec<SimplicialOp>| {
        out.push(IdentityInstance { identity, level, lhs, rhs })
    };
    for n in 0..=max_level {
        // d_i d_j = d_{j-1} d_i for i < j
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    push("d_i d_j = d_{j-1} d_i", n, vec![D(j), D(i)], vec![D(i), D(j - 1)]);
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        if n + 2 <= max_level {
            for j in 0..=n {
                for i in 0..=j {
                    push("s_i s_j = s_{j+1} s_i", n, vec![S(j), S(i)], vec![S(i), S(j + 1)]);
                }
            }
        }
        if n < max_level {
            for j in 0..=n {
                // d_i s_j = s_{j-1} d_i for i < j
                if n >= 1 {
                    for i in 0..j {
                        push("d_i s_j = s_{j-1} d_i", n, vec![S(j), D(i)], vec![D(i), S(j - 1)]);
                    }
                }
                push("d_j s_j = id", n, vec![S(j), D(j)], vec![]);
                push("d_{j+1} s_j = id", n, vec![S(j), D(j + 1)], vec![]);
                // d_i s_j = s_j d_{i-1} for i > j + 1
                if n >= 1 {
                    for i in j + 2..=n + 1 {
                        push("d_i s_j = s_j d_{i-1}", n, vec![S(j), D(i)], vec![D(i - 1), S(j)]);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_stay_in_range() {
        for max in 0..5 {
            for inst in identity_instances(max) {
                for side in [&inst.lhs, &inst.rhs] {
                    let mut level = inst.level;
                    for &op in side.iter() {
                        match op {
                            SimplicialOp::Face(i) => assert!(level >= 1 && i <= level),
                            SimplicialOp::Degeneracy(i) => assert!(level < max && i <= level),
                        }
                        level = op.target_level(level);
                    }
                }
            }
        }
    }

    #[test]
    fn display() {
        let inst = &identity_instances(2)[0];
        assert_eq!(inst.to_string(), "s0 s0 = s1 s0 on level 0");
    }
}
