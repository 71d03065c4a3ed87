//! Partitions of ℕ = {1, 2, 3, …} into `k` parts, numbered `1..=k`.
//!
//! Three families are supported:
//!
//! * [`ModularTable`]: a part index for every vector of residues
//!   `(n mod p_i^{e_i})_i`. The greedy builder puts each vector in the part
//!   `j + 1` where `j` is the smallest value in `0..k` absent from its
//!   components, so part `j + 1` misses the class `j (mod p_i^{e_i})` for
//!   every `i`.
//! * valuation parity: `n` goes to the base part keyed by the parity vector of
//!   `(ν_{p_i}(n))_i`.
//! * Legendre signature: `n` goes to the base part keyed by the signs of the
//!   (extended) Legendre symbols of its unit parts at each `p_i`.
//!
//! The two signature families have `h = 2^ℓ` base parts with `ℓ = ⌊log₂ k⌋`.
//! Base part `j` corresponds to the subset of prime indices given by the
//! binary expansion of `j - 1`. When `h < k` the last base part is refined
//! into `k - h + 1` pieces by the residue of `n` modulo a prime outside the
//! construction primes (see [`Refinement`]).

mod document;
mod modular;
mod signature;

use serde::{Deserialize, Serialize};

pub use document::{PartitionDocument, RefinementDoc, TableEntry, REFINEMENT_RULE};
pub use modular::{
    build_modular_partition, build_modular_partition_with_cap, ModularTable, DEFAULT_TABLE_CAP,
};
pub use signature::{
    build_legendre_partition, build_valuation_parity_partition, Refinement, SignaturePartition,
};

use crate::padic::Prime;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Modular,
    ValuationParity,
    Legendre,
}

impl Construction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Construction::Modular => "modular",
            Construction::ValuationParity => "valuation-parity",
            Construction::Legendre => "legendre",
        }
    }
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modular" => Ok(Construction::Modular),
            "valuation-parity" => Ok(Construction::ValuationParity),
            "legendre" => Ok(Construction::Legendre),
            other => Err(Error::invalid(
                "construction",
                format!("unknown construction {other:?} (expected modular, valuation-parity or legendre)"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSpec {
    ModularTable(ModularTable),
    ValuationParity(SignaturePartition),
    LegendreSignature(SignaturePartition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub construction: Construction,
    pub description: String,
}

/// An immutable, validated partition of ℕ into `k` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionHandle {
    spec: PartitionSpec,
    k: usize,
    metadata: Metadata,
}

impl PartitionHandle {
    fn from_spec(spec: PartitionSpec, k: usize) -> Self {
        let (construction, detail) = match &spec {
            PartitionSpec::ModularTable(t) => (Construction::Modular, t.describe(k)),
            PartitionSpec::ValuationParity(s) => (Construction::ValuationParity, s.describe(k)),
            PartitionSpec::LegendreSignature(s) => (Construction::Legendre, s.describe(k)),
        };
        let description = format!("{construction}: {detail}");
        PartitionHandle {
            spec,
            k,
            metadata: Metadata {
                construction,
                description,
            },
        }
    }

    pub fn spec(&self) -> &PartitionSpec {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn construction(&self) -> Construction {
        self.metadata.construction
    }

    /// The primes the construction is built from, in declaration order.
    pub fn construction_primes(&self) -> Vec<Prime> {
        match &self.spec {
            PartitionSpec::ModularTable(t) => t.moduli().iter().map(|m| m.prime()).collect(),
            PartitionSpec::ValuationParity(s) | PartitionSpec::LegendreSignature(s) => {
                s.primes().to_vec()
            }
        }
    }

    /// Part index of `n` in `1..=k`.
    pub fn classify(&self, n: u64) -> Result<usize> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        match &self.spec {
            PartitionSpec::ModularTable(t) => Ok(t.part_of(n)),
            PartitionSpec::ValuationParity(s) => s.refine(n, s.valuation_parity_base(n)?),
            PartitionSpec::LegendreSignature(s) => s.refine(n, s.legendre_base(n)?),
        }
    }

    /// Part index before refinement, in `1..=h`. Modular tables are never
    /// refined, so this agrees with [`classify`](Self::classify) for them.
    pub fn classify_base(&self, n: u64) -> Result<usize> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        match &self.spec {
            PartitionSpec::ModularTable(t) => Ok(t.part_of(n)),
            PartitionSpec::ValuationParity(s) => s.valuation_parity_base(n),
            PartitionSpec::LegendreSignature(s) => s.legendre_base(n),
        }
    }

    /// Number of base parts (`h` for signature partitions, `k` otherwise).
    pub fn base_parts(&self) -> usize {
        match &self.spec {
            PartitionSpec::ModularTable(_) => self.k,
            PartitionSpec::ValuationParity(s) | PartitionSpec::LegendreSignature(s) => {
                s.base_parts()
            }
        }
    }
}

pub(crate) fn check_distinct_primes(primes: &[u64]) -> Result<Vec<Prime>> {
    let mut out: Vec<Prime> = Vec::with_capacity(primes.len());
    for &p in primes {
        let p = Prime::new(p)?;
        if out.contains(&p) {
            return Err(Error::DuplicatePrime(p.get()));
        }
        out.push(p);
    }
    Ok(out)
}
