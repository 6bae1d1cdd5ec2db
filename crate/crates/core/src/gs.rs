//! Golod–Shafarevich and Koch inequality values.
//!
//! Reports only numbers and flags. Nothing here concludes whether a group is
//! finite.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::magnus::{valuation, Valuation};
use crate::quotient::{build_quotient, QuotientOptions};
use crate::word::Presentation;

pub const INTERPRETATION_NOTE: &str =
    "the inequality is a consistency condition associated with finiteness; the tool reports values only";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerBound {
    pub m: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GsReport {
    pub d: u64,
    /// Total number of relators counted in `r_seq`.
    pub r: u64,
    pub r_seq: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u128>,
    /// `e[n-1]` holds `E_n` for `1 <= n <= n_max`.
    pub e: Vec<i128>,
    pub e_at_least_one: Vec<bool>,
    pub quadratic: bool,
    pub power_bounds: Vec<PowerBound>,
    pub note: &'static str,
}

impl GsReport {
    pub fn n_max(&self) -> usize {
        self.e.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Plain-text table, one row per degree.
    pub fn table(&self) -> String {
        let mut out = format!(
            "d={} r={}\n{:>3} {:>6} {:>8} {:>10} {:>8}  E_n>=1\n",
            self.d, self.r, "n", "r_n", "b_n", "c_n", "E_n"
        );
        for n in 0..=self.n_max() {
            let (e, flag) = if n == 0 {
                ("-".to_string(), "-".to_string())
            } else {
                (self.e[n - 1].to_string(), self.e_at_least_one[n - 1].to_string())
            };
            out.push_str(&format!("{n:>3} {:>6} {:>8} {:>10} {e:>8}  {flag}\n", self.r_seq[n], self.b[n], self.c[n]));
        }
        out.push_str(&format!("4r > d^2: {}\n", self.quadratic));
        for pb in &self.power_bounds {
            out.push_str(&format!("r*m^m > d^m*(m-1)^(m-1) for m={}: {}\n", pb.m, pb.holds));
        }
        out.push_str(&format!("note: {}\n", self.note));
        out
    }
}

/// `r_0 = 1` and `r_n` = number of relators of valuation exactly `n`.
pub fn relator_degree_sequence(pres: &Presentation, truncation: usize) -> Result<Vec<u64>> {
    let mut r = vec![0u64; truncation + 1];
    r[0] = 1;
    for w in pres.relators() {
        match valuation(w, pres.prime(), truncation) {
            Valuation::Exact(k) => r[k] += 1,
            v @ Valuation::AtLeast(_) => return Err(Error::ValuationExceedsTruncation { valuation: v, truncation }),
        }
    }
    Ok(r)
}

/// `4r > d²`.
pub fn gs_quadratic(d: u64, r: u64) -> bool {
    4 * r as u128 > (d as u128) * (d as u128)
}

/// `r·m^m > d^m·(m−1)^(m−1)` in exact arithmetic.
pub fn koch_power_bound(d: u64, r: u64, m: u32) -> Result<bool> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("power bound needs m >= 2, got {m}")));
    }
    let lhs = BigUint::from(r) * BigUint::from(m).pow(m);
    let rhs = BigUint::from(d).pow(m) * BigUint::from(m - 1).pow(m - 1);
    Ok(lhs > rhs)
}

/// Evaluates `E_n = −d·c_{n−1} + Σ_{ν=0}^n c_ν r_{n−ν}` with `c` the partial sums of `b`.
pub fn koch_report(d: u64, r_seq: &[u64], b_seq: &[u64], n_max: usize) -> Result<GsReport> {
    if d == 0 {
        return Err(Error::InvalidInput("generator count d must be at least 1".into()));
    }
    if r_seq.len() <= n_max || b_seq.len() <= n_max {
        return Err(Error::ParamMismatch(format!(
            "sequences of length {} and {} are too short for n_max={n_max}",
            r_seq.len(),
            b_seq.len()
        )));
    }
    if r_seq[0] != 1 || b_seq[0] != 1 {
        return Err(Error::InvalidInput("r_0 and b_0 must both be 1".into()));
    }
    let r_seq = &r_seq[..=n_max];
    let b = &b_seq[..=n_max];
    let c: Vec<u128> = b
        .iter()
        .scan(0u128, |acc, &x| {
            *acc += x as u128;
            Some(*acc)
        })
        .collect();
    let e: Vec<i128> = (1..=n_max)
        .map(|n| {
            let sum: i128 = (0..=n).map(|nu| c[nu] as i128 * r_seq[n - nu] as i128).sum();
            sum - d as i128 * c[n - 1] as i128
        })
        .collect();
    let r: u64 = r_seq[1..].iter().sum();
    let power_bounds = (2..=d.max(2) as u32)
        .map(|m| Ok(PowerBound { m, holds: koch_power_bound(d, r, m)? }))
        .collect::<Result<_>>()?;
    Ok(GsReport {
        d,
        r,
        r_seq: r_seq.to_vec(),
        b: b.to_vec(),
        c,
        e_at_least_one: e.iter().map(|&x| x >= 1).collect(),
        e,
        quadratic: gs_quadratic(d, r),
        power_bounds,
        note: INTERPRETATION_NOTE,
    })
}

/// Builds the quotient through degree `truncation` and reports on it.
pub fn gs_report(pres: &Presentation, truncation: usize, opts: QuotientOptions) -> Result<GsReport> {
    let r = relator_degree_sequence(pres, truncation)?;
    let q = build_quotient(pres, truncation, opts)?;
    let b = q.b().to_vec();
    koch_report(pres.num_generators() as u64, &r, &b, truncation)
}
