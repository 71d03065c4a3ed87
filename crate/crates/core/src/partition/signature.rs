use serde::{Deserialize, Serialize};

use crate::padic::{is_prime, Prime};
use crate::{Error, Result};

use super::{check_distinct_primes, PartitionHandle, PartitionSpec};

/// Split of the last base part into `pieces` parts by `(n mod modulus) mod pieces`.
///
/// `modulus` is the least prime `q ≥ pieces` outside the construction primes.
/// Membership of a base part only depends on `n` modulo powers of the
/// construction primes, so every base part meets every residue mod `q` and no
/// piece is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refinement {
    pub base_part: usize,
    pub pieces: u64,
    pub modulus: u64,
}

fn refinement_modulus(pieces: u64, primes: &[Prime]) -> u64 {
    (pieces.max(2)..)
        .find(|&q| is_prime(q) && primes.iter().all(|p| p.get() != q))
        .expect("primes are unbounded")
}

/// Shared shape of the valuation-parity and Legendre-signature partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignaturePartition {
    primes: Vec<Prime>,
    refinement: Option<Refinement>,
}

/// `⌊log₂ k⌋` for `k ≥ 1`.
pub(crate) fn floor_log2(k: usize) -> usize {
    (usize::BITS - 1 - k.leading_zeros()) as usize
}

impl SignaturePartition {
    fn new(k: usize, primes: &[u64]) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k", "must be at least 1"));
        }
        let ell = floor_log2(k);
        if primes.len() != ell {
            return Err(Error::WrongPrimeCount {
                expected: ell,
                got: primes.len(),
            });
        }
        let primes = check_distinct_primes(primes)?;
        let h = 1usize << ell;
        let refinement = (k > h).then(|| {
            let pieces = (k - h + 1) as u64;
            Refinement {
                base_part: h,
                pieces,
                modulus: refinement_modulus(pieces, &primes),
            }
        });
        Ok(SignaturePartition { primes, refinement })
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn refinement(&self) -> Option<Refinement> {
        self.refinement
    }

    pub fn base_parts(&self) -> usize {
        1 << self.primes.len()
    }

    /// `1 + Σ_i [ν_{p_i}(n) odd]·2^{i}`.
    pub(crate) fn valuation_parity_base(&self, n: u64) -> Result<usize> {
        let mut bits = 0usize;
        for (i, p) in self.primes.iter().enumerate() {
            if p.valuation(n)? % 2 == 1 {
                bits |= 1 << i;
            }
        }
        Ok(bits + 1)
    }

    /// `1 + Σ_i [(u_i / p_i) = -1]·2^{i}` with `u_i` the unit part at `p_i`.
    pub(crate) fn legendre_base(&self, n: u64) -> Result<usize> {
        let mut bits = 0usize;
        for (i, p) in self.primes.iter().enumerate() {
            let unit = p.unit_part(n)?;
            if p.legendre((unit % (4 * p.get())) as i64)? == -1 {
                bits |= 1 << i;
            }
        }
        Ok(bits + 1)
    }

    pub(crate) fn refine(&self, n: u64, base: usize) -> Result<usize> {
        match self.refinement {
            Some(r) if base == r.base_part => Ok(base + (n % r.modulus % r.pieces) as usize),
            _ => Ok(base),
        }
    }

    pub(crate) fn describe(&self, k: usize) -> String {
        let primes: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        let mut out = format!(
            "k={k}, primes [{}], {} base parts",
            primes.join(", "),
            self.base_parts()
        );
        if let Some(r) = self.refinement {
            out.push_str(&format!(
                ", base part {} split into {} pieces by (n mod {}) mod {}",
                r.base_part, r.pieces, r.modulus, r.pieces
            ));
        }
        out
    }
}

/// Base part `j` holds the `n` whose valuation parities at the primes spell
/// the binary expansion of `j - 1`.
pub fn build_valuation_parity_partition(k: usize, primes: &[u64]) -> Result<PartitionHandle> {
    let sig = SignaturePartition::new(k, primes)?;
    Ok(PartitionHandle::from_spec(
        PartitionSpec::ValuationParity(sig),
        k,
    ))
}

/// Base part `j` holds the `n` whose unit parts are non-residues exactly at
/// the primes selected by the binary expansion of `j - 1` (mod-4 character at
/// `p = 2`).
pub fn build_legendre_partition(k: usize, primes: &[u64]) -> Result<PartitionHandle> {
    let sig = SignaturePartition::new(k, primes)?;
    Ok(PartitionHandle::from_spec(
        PartitionSpec::LegendreSignature(sig),
        k,
    ))
}
