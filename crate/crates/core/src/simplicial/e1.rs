//! Dimensions of the E¹ page of the lower central series spectral sequence
//! from the mod-p homology of a group.

use crate::error::{Error, Result};

/// `Σ_{i_1+…+i_n = m, i_j ≥ 0} h_{i_1+1}⋯h_{i_n+1}` where `h[q−1] = dim H_q`.
pub fn e1_dimensions(h: &[u64], n: usize, m: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if h.len() < m + 1 {
        return Err(Error::InvalidInput(format!("need dim H_q for q <= {}, got {} values", m + 1, h.len())));
    }
    let overflow = || Error::InvalidInput("E1 dimension overflows u128".into());
    // ways[s]: weighted count of compositions of s into the factors so far
    let mut ways = vec![0u128; m + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; m + 1];
        for (s, &w) in ways.iter().enumerate().filter(|(_, w)| **w != 0) {
            for i in 0..=m - s {
                let term = w.checked_mul(h[i] as u128).ok_or_else(overflow)?;
                next[s + i] = next[s + i].checked_add(term).ok_or_else(overflow)?;
            }
        }
        ways = next;
    }
    Ok(ways[m])
}
