//! Homology of a finite group with F_p coefficients from the bar construction:
//! level `n` of `W̄G` has basis `G^n`, `d_0` and `d_n` drop the outer entries
//! and the inner faces multiply neighbours.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::sparse_rank;

/// Largest `|G|^{q_max+1}` accepted without an override.
pub const WBAR_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroupTable {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    identity: usize,
}

#[derive(Deserialize)]
struct RawTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroupTable {
    /// Validates closure, associativity, a two-sided identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGroupTable(msg));
        let n = table.len();
        if n == 0 {
            return bad("empty table".into());
        }
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return bad(format!("row {i} has {} entries, expected {n}", row.len()));
        }
        if let Some(&x) = table.iter().flatten().find(|&&x| x >= n) {
            return bad(format!("entry {x} is not an element"));
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity element".into());
        };
        for (a, row) in table.iter().enumerate() {
            if !(0..n).any(|b| row[b] == e && table[b][a] == e) {
                return bad(format!("element {a} has no inverse"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { order: n, table, identity: e })
    }

    /// Parses `{"order": n, "table": [[...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(text).map_err(|e| Error::InvalidGroupTable(e.to_string()))?;
        if raw.order != raw.table.len() {
            return Err(Error::InvalidGroupTable(format!(
                "order {} does not match {} table rows",
                raw.order,
                raw.table.len()
            )));
        }
        Self::new(raw.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroupTable { order: n, table, identity: 0 }
    }

    /// `G × H` with element `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(&self, other: &FiniteGroupTable) -> Self {
        let m = other.order;
        let n = self.order * m;
        let table =
            (0..n).map(|a| (0..n).map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m)).collect()).collect();
        FiniteGroupTable { order: n, table, identity: self.identity * m + other.identity }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// Dimensions of `H_0..H_{q_max}(G, F_p)` from the unnormalized bar complex.
pub fn wbar_homology(g: &FiniteGroupTable, p: Prime, q_max: usize, override_guardrail: bool) -> Result<Vec<usize>> {
    let order = g.order() as u64;
    let top = order.checked_pow(q_max as u32 + 1);
    if !override_guardrail && top.is_none_or(|t| t > WBAR_LIMIT) {
        return Err(Error::Guardrail(format!("|G|^{} exceeds {WBAR_LIMIT}", q_max + 1)));
    }
    let top = top.ok_or_else(|| Error::Guardrail("bar complex too large to index".into()))?;
    usize::try_from(top).map_err(|_| Error::Guardrail("bar complex too large to index".into()))?;

    let o = g.order();
    let dim = |n: usize| o.pow(n as u32);
    // rank of ∂_n : C_n → C_{n−1}
    let boundary_rank = |n: usize| -> usize {
        if n == 0 {
            return 0;
        }
        let rows = (0..dim(n)).map(|idx| {
            let mut tuple = vec![0usize; n];
            let mut r = idx;
            for slot in tuple.iter_mut().rev() {
                *slot = r % o;
                r /= o;
            }
            let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &a| acc * o + a);
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            *acc.entry(encode(&tuple[1..])).or_default() += 1;
            for i in 1..n {
                let mut t = Vec::with_capacity(n - 1);
                t.extend_from_slice(&tuple[..i - 1]);
                t.push(g.mul(tuple[i - 1], tuple[i]));
                t.extend_from_slice(&tuple[i + 1..]);
                *acc.entry(encode(&t)).or_default() += if i % 2 == 0 { 1 } else { -1 };
            }
            *acc.entry(encode(&tuple[..n - 1])).or_default() += if n.is_multiple_of(2) { 1 } else { -1 };
            acc.into_iter().map(|(c, v)| (c, p.reduce(v))).filter(|&(_, v)| v != 0).collect::<Vec<_>>()
        });
        sparse_rank(p, rows)
    };
    let ranks: Vec<usize> = (0..=q_max + 1).map(boundary_rank).collect();
    Ok((0..=q_max).map(|n| dim(n) - ranks[n] - ranks[n + 1]).collect())
}
