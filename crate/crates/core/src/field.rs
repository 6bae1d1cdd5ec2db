//! Arithmetic in the prime field F_p for primes below 2^16.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated prime `p < 2^16`. Field elements are `u16` residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u16);

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = u64::deserialize(d)?;
        Prime::new(raw).map_err(serde::de::Error::custom)
    }
}

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 16).contains(&p) {
            return Err(Error::NonPrime(p));
        }
        let mut q = 2;
        while q * q <= p {
            if p.is_multiple_of(q) {
                return Err(Error::NonPrime(p));
            }
            q += 1;
        }
        Ok(Prime(p as u16))
    }

    #[inline]
    pub fn get(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u16 {
        x.rem_euclid(self.0 as i64) as u16
    }

    #[inline]
    pub fn add(self, a: u16, b: u16) -> u16 {
        ((a as u32 + b as u32) % self.0 as u32) as u16
    }

    #[inline]
    pub fn sub(self, a: u16, b: u16) -> u16 {
        ((a as u32 + self.0 as u32 - b as u32) % self.0 as u32) as u16
    }

    #[inline]
    pub fn neg(self, a: u16) -> u16 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u16, b: u16) -> u16 {
        ((a as u32 * b as u32) % self.0 as u32) as u16
    }

    pub fn pow(self, mut base: u16, mut exp: u64) -> u16 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(self, a: u16) -> u16 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(65537).is_err());
        assert_eq!(Prime::new(65521).unwrap().get(), 65521);
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 65521] {
            let p = Prime::new(p).unwrap();
            for a in 1..p.get().min(200) {
                assert_eq!(p.mul(a, p.inv(a)), 1);
            }
        }
    }

    #[test]
    fn signed_reduction() {
        let p = Prime::new(5).unwrap();
        assert_eq!(p.reduce(-1), 4);
        assert_eq!(p.reduce(-10), 0);
        assert_eq!(p.sub(1, 3), 3);
        assert_eq!(p.neg(0), 0);
    }
}
