use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::mul_mod;
use crate::{Error, Result};

/// The progression `{offset + modulus·t : t ≥ 0}`.
///
/// An offset at or above the modulus is allowed; it drops the first few
/// members of the congruence class. [`normalized`](Self::normalized) gives the
/// full class with `0 ≤ offset < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueClass {
    offset: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(offset: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus", "must be at least 1"));
        }
        Ok(ResidueClass { offset, modulus })
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn normalized(&self) -> Self {
        ResidueClass {
            offset: self.offset % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.offset < self.modulus
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        n >= self.offset && (n - self.offset).is_multiple_of(self.modulus)
    }

    /// Intersection of two progressions, `None` when it is empty.
    ///
    /// The result has modulus `lcm(M1, M2)` and its offset is the least common
    /// member, so normalized inputs give a normalized output. Coprime moduli
    /// always intersect (CRT).
    pub fn intersect(&self, other: &ResidueClass) -> Result<Option<ResidueClass>> {
        let (r1, m1) = (self.offset as i128, self.modulus as i128);
        let (r2, m2) = (other.offset as i128, other.modulus as i128);
        let g = m1.gcd(&m2);
        if (r2 - r1) % g != 0 {
            return Ok(None);
        }
        let lcm = match (m1 / g).checked_mul(m2) {
            Some(l) if l <= u64::MAX as i128 => l,
            _ => return Err(Error::Overflow(format!("lcm({m1}, {m2})"))),
        };
        // r1 + m1·t ≡ r2 (mod m2)  ⇔  (m1/g)·t ≡ (r2 - r1)/g (mod m2/g)
        let m2g = m2 / g;
        let inv = (m1 / g).extended_gcd(&m2g).x.rem_euclid(m2g);
        let t = mul_mod(
            ((r2 - r1) / g).rem_euclid(m2g) as u64,
            inv as u64,
            m2g as u64,
        ) as i128;
        let c = (r1 + m1 * t).rem_euclid(lcm);
        let floor = r1.max(r2);
        let first = floor + (c - floor).rem_euclid(lcm);
        if first > u64::MAX as i128 {
            return Err(Error::Overflow("intersection offset".into()));
        }
        Ok(Some(ResidueClass {
            offset: first as u64,
            modulus: lcm as u64,
        }))
    }
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} mod {}", self.offset, self.modulus)
    }
}
