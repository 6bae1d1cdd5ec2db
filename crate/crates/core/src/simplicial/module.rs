//! Simplicial F_p-modules given by face and degeneracy matrices, and their
//! homotopy via the normalized (Moore) complex.
//!
//! Matrices act on column vectors: `d_i` at level `n` is `dim_{n-1} × dim_n`.

use std::collections::BTreeSet;

use rand::Rng;

use super::{identity_instances, SimplicialOp};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::FpMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialFpModule {
    p: Prime,
    dims: Vec<usize>,
    faces: Vec<Vec<FpMatrix>>,
    degeneracies: Vec<Vec<FpMatrix>>,
}

impl SimplicialFpModule {
    /// Levels `0..dims.len()`. `faces[n]` holds `d_0..d_n` (empty for `n = 0`);
    /// `degeneracies[n]` holds `s_0..s_n` for every level below the top.
    pub fn new(
        p: Prime,
        dims: Vec<usize>,
        faces: Vec<Vec<FpMatrix>>,
        degeneracies: Vec<Vec<FpMatrix>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InconsistentModule(msg));
        let top = match dims.len().checked_sub(1) {
            Some(t) => t,
            None => return bad("no levels".into()),
        };
        if faces.len() != dims.len() || degeneracies.len() != dims.len() {
            return bad("one list of faces and of degeneracies per level is required".into());
        }
        for n in 0..=top {
            let want_faces = if n == 0 { 0 } else { n + 1 };
            let want_degs = if n == top { 0 } else { n + 1 };
            if faces[n].len() != want_faces || degeneracies[n].len() != want_degs {
                return bad(format!("level {n} needs {want_faces} faces and {want_degs} degeneracies"));
            }
            for (i, m) in faces[n].iter().enumerate() {
                if m.rows() != dims[n - 1] || m.cols() != dims[n] || m.prime() != p {
                    return bad(format!("d{i} on level {n} has the wrong shape or field"));
                }
            }
            for (i, m) in degeneracies[n].iter().enumerate() {
                if m.rows() != dims[n + 1] || m.cols() != dims[n] || m.prime() != p {
                    return bad(format!("s{i} on level {n} has the wrong shape or field"));
                }
            }
        }
        let module = SimplicialFpModule { p, dims, faces, degeneracies };
        for inst in identity_instances(top) {
            if module.compose(inst.level, &inst.lhs) != module.compose(inst.level, &inst.rhs) {
                return bad(format!("simplicial identity fails: {inst}"));
            }
        }
        Ok(module)
    }

    /// `V` at every level with all faces and degeneracies the identity.
    pub fn constant(p: Prime, dim: usize, max_level: usize) -> Self {
        let id = FpMatrix::identity(p, dim);
        let faces = (0..=max_level).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect();
        let degs = (0..=max_level).map(|n| if n == max_level { vec![] } else { vec![id.clone(); n + 1] }).collect();
        SimplicialFpModule { p, dims: vec![dim; max_level + 1], faces, degeneracies: degs }
    }

    /// F_p-chains on the ordered simplicial set of a simplicial complex: level `n`
    /// has one basis vector per nondecreasing vertex sequence of length `n + 1`
    /// whose vertex set is a face of one of `facets`.
    pub fn from_complex(p: Prime, facets: &[Vec<usize>], max_level: usize) -> Self {
        let mut faces_of_complex: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for mask in 1u32..(1 << f.len()) {
                faces_of_complex.insert((0..f.len()).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect());
            }
        }
        let in_complex = |seq: &[usize]| {
            let mut s = seq.to_vec();
            s.dedup();
            faces_of_complex.contains(&s)
        };
        let vertices: Vec<usize> = faces_of_complex.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
        let mut bases: Vec<Vec<Vec<usize>>> = vec![vertices.iter().map(|&v| vec![v]).collect()];
        for n in 1..=max_level {
            let next: Vec<Vec<usize>> = bases[n - 1]
                .iter()
                .flat_map(|s| {
                    let last = *s.last().expect("nonempty");
                    vertices.iter().filter(move |&&v| v >= last).map(move |&v| {
                        let mut t = s.clone();
                        t.push(v);
                        t
                    })
                })
                .filter(|s| in_complex(s))
                .collect();
            bases.push(next);
        }
        let index = |level: usize, seq: &[usize]| {
            bases[level].binary_search_by(|s| s.as_slice().cmp(seq)).expect("closed under faces and degeneracies")
        };
        let map = |from: usize, to: usize, f: &dyn Fn(&[usize]) -> Vec<usize>| {
            let mut m = FpMatrix::zeros(p, bases[to].len(), bases[from].len());
            for (col, s) in bases[from].iter().enumerate() {
                m.set(index(to, &f(s)), col, 1);
            }
            m
        };
        let dims = bases.iter().map(Vec::len).collect();
        let faces = (0..=max_level)
            .map(|n| {
                if n == 0 {
                    return vec![];
                }
                (0..=n)
                    .map(|i| {
                        map(n, n - 1, &|s| {
                            let mut t = s.to_vec();
                            t.remove(i);
                            t
                        })
                    })
                    .collect()
            })
            .collect();
        let degeneracies = (0..=max_level)
            .map(|n| {
                if n == max_level {
                    return vec![];
                }
                (0..=n)
                    .map(|i| {
                        map(n, n + 1, &|s| {
                            let mut t = s.to_vec();
                            t.insert(i, s[i]);
                            t
                        })
                    })
                    .collect()
            })
            .collect();
        SimplicialFpModule { p, dims, faces, degeneracies }
    }

    /// Chains on a random complex on at most `vertices` vertices, with every
    /// level optionally rewritten in a random basis.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        p: Prime,
        vertices: usize,
        max_level: usize,
        change_basis: bool,
    ) -> Self {
        let vertices = vertices.max(1);
        let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let size = rng.gen_range(1..=3.min(vertices));
                (0..size).map(|_| rng.gen_range(0..vertices)).collect()
            })
            .collect();
        let module = Self::from_complex(p, &facets, max_level);
        if !change_basis {
            return module;
        }
        let changes: Vec<(FpMatrix, FpMatrix)> = module.dims.iter().map(|&n| random_invertible(rng, p, n)).collect();
        let conj = |m: &FpMatrix, from: usize, to: usize| changes[to].0.mul(m).mul(&changes[from].1);
        let faces =
            module.faces.iter().enumerate().map(|(n, fs)| fs.iter().map(|m| conj(m, n, n - 1)).collect()).collect();
        let degeneracies = module
            .degeneracies
            .iter()
            .enumerate()
            .map(|(n, ss)| ss.iter().map(|m| conj(m, n, n + 1)).collect())
            .collect();
        SimplicialFpModule { faces, degeneracies, ..module }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn max_level(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn face(&self, level: usize, i: usize) -> &FpMatrix {
        &self.faces[level][i]
    }

    pub fn degeneracy(&self, level: usize, i: usize) -> &FpMatrix {
        &self.degeneracies[level][i]
    }

    fn compose(&self, level: usize, ops: &[SimplicialOp]) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.p, self.dims[level]);
        let mut level = level;
        for &op in ops {
            let m = match op {
                SimplicialOp::Face(i) => &self.faces[level][i],
                SimplicialOp::Degeneracy(i) => &self.degeneracies[level][i],
            };
            acc = m.mul(&acc);
            level = op.target_level(level);
        }
        acc
    }

    fn check_depth(&self, q_max: usize) -> Result<()> {
        if q_max >= self.max_level() {
            return Err(Error::InvalidInput(format!(
                "homology through degree {q_max} needs levels up to {}, module has {}",
                q_max + 1,
                self.max_level()
            )));
        }
        Ok(())
    }

    /// Basis of `N_n = ⋂_{i<n} Ker d_i` as columns.
    fn normalized_basis(&self, n: usize) -> FpMatrix {
        if n == 0 {
            return FpMatrix::identity(self.p, self.dims[0]);
        }
        let stacked = self.faces[n][..n].iter().skip(1).fold(self.faces[n][0].clone(), |acc, m| acc.vstack(m));
        stacked.kernel()
    }

    /// Dimensions of `π_0..π_{q_max}` from the Moore complex `(N_*, d_n)`.
    pub fn moore_homology(&self, q_max: usize) -> Result<Vec<usize>> {
        self.check_depth(q_max)?;
        let bases: Vec<FpMatrix> = (0..=q_max + 1).map(|n| self.normalized_basis(n)).collect();
        // rank of ∂_n on N_n, with ∂_0 = 0
        let ranks: Vec<usize> =
            (0..=q_max + 1).map(|n| if n == 0 { 0 } else { self.faces[n][n].mul(&bases[n]).rank() }).collect();
        Ok((0..=q_max).map(|n| bases[n].cols() - ranks[n] - ranks[n + 1]).collect())
    }

    /// Homology of the unnormalized complex with `∂_n = Σ (−1)^i d_i`.
    pub fn unnormalized_homology(&self, q_max: usize) -> Result<Vec<usize>> {
        self.check_depth(q_max)?;
        let p = self.p;
        let ranks: Vec<usize> = (0..=q_max + 1)
            .map(|n| {
                if n == 0 {
                    return 0;
                }
                let mut sum = FpMatrix::zeros(p, self.dims[n - 1], self.dims[n]);
                for (i, d) in self.faces[n].iter().enumerate() {
                    for r in 0..sum.rows() {
                        for c in 0..sum.cols() {
                            let v = d.get(r, c);
                            let acc = sum.get(r, c);
                            sum.set(r, c, if i % 2 == 0 { p.add(acc, v) } else { p.sub(acc, v) });
                        }
                    }
                }
                sum.rank()
            })
            .collect();
        Ok((0..=q_max).map(|n| self.dims[n] - ranks[n] - ranks[n + 1]).collect())
    }
}

/// A random invertible matrix and its inverse.
fn random_invertible<R: Rng + ?Sized>(rng: &mut R, p: Prime, n: usize) -> (FpMatrix, FpMatrix) {
    loop {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rng.gen_range(0..p.get()));
            }
        }
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}
