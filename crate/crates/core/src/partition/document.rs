use serde::{Deserialize, Serialize};

use crate::padic::{Prime, PrimePower};
use crate::{Error, Result};

use super::modular::{table_size, DEFAULT_TABLE_CAP};
use super::{
    build_legendre_partition, build_valuation_parity_partition, Construction, ModularTable,
    PartitionHandle, PartitionSpec,
};

pub const REFINEMENT_RULE: &str = "coprime-prime-residue";

/// On-disk form of a partition. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDocument {
    pub construction: Construction,
    pub k: usize,
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refinement: Option<RefinementDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub vector: Vec<u64>,
    /// One-based part index.
    pub part: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementDoc {
    pub base_part: usize,
    pub pieces: u64,
    pub modulus: u64,
    pub rule: String,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidDocument(msg.into())
}

impl PartitionHandle {
    pub fn to_document(&self) -> PartitionDocument {
        let primes = self
            .construction_primes()
            .into_iter()
            .map(Prime::get)
            .collect();
        match self.spec() {
            PartitionSpec::ModularTable(t) => PartitionDocument {
                construction: Construction::Modular,
                k: self.k(),
                primes,
                exponents: Some(t.moduli().iter().map(|m| m.exponent()).collect()),
                table: Some(
                    t.entries()
                        .map(|(vector, part)| TableEntry { vector, part })
                        .collect(),
                ),
                refinement: None,
            },
            PartitionSpec::ValuationParity(s) | PartitionSpec::LegendreSignature(s) => {
                PartitionDocument {
                    construction: self.construction(),
                    k: self.k(),
                    primes,
                    exponents: None,
                    table: None,
                    refinement: s.refinement().map(|r| RefinementDoc {
                        base_part: r.base_part,
                        pieces: r.pieces,
                        modulus: r.modulus,
                        rule: REFINEMENT_RULE.to_string(),
                    }),
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PartitionDocument = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        PartitionHandle::from_document(&doc)
    }

    /// Validates a document and rebuilds the handle.
    ///
    /// Modular documents may carry any table that covers `V` exactly once and
    /// respects the avoidance rule (no component of a vector in part `j + 1`
    /// equals `j`); the greedy table is just one such choice.
    pub fn from_document(doc: &PartitionDocument) -> Result<Self> {
        match doc.construction {
            Construction::Modular => modular_from_document(doc),
            Construction::ValuationParity | Construction::Legendre => {
                if doc.exponents.is_some() || doc.table.is_some() {
                    return Err(bad(format!(
                        "{} documents carry no exponents or table",
                        doc.construction
                    )));
                }
                let handle = if doc.construction == Construction::ValuationParity {
                    build_valuation_parity_partition(doc.k, &doc.primes)?
                } else {
                    build_legendre_partition(doc.k, &doc.primes)?
                };
                let expected = handle.to_document().refinement;
                if doc.refinement != expected {
                    return Err(bad(format!(
                        "refinement {:?} does not match the convention for k={} ({:?})",
                        doc.refinement, doc.k, expected
                    )));
                }
                Ok(handle)
            }
        }
    }
}

fn modular_from_document(doc: &PartitionDocument) -> Result<PartitionHandle> {
    let k = doc.k;
    if k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    if doc.primes.len() != k - 1 {
        return Err(Error::WrongPrimeCount {
            expected: k - 1,
            got: doc.primes.len(),
        });
    }
    if doc.refinement.is_some() {
        return Err(bad("modular documents carry no refinement"));
    }
    let primes = super::check_distinct_primes(&doc.primes)?;
    let exponents = doc
        .exponents
        .as_ref()
        .ok_or_else(|| bad("missing `exponents`"))?;
    if exponents.len() != primes.len() {
        return Err(bad("`exponents` and `primes` differ in length"));
    }
    let moduli = primes
        .iter()
        .zip(exponents)
        .map(|(&p, &e)| {
            let pp = PrimePower::new(p, e)?;
            if pp.modulus() < k as u64 {
                return Err(bad(format!("{p}^{e} is smaller than k={k}")));
            }
            Ok(pp)
        })
        .collect::<Result<Vec<_>>>()?;
    let size = table_size(&moduli, DEFAULT_TABLE_CAP)?;
    let entries = doc.table.as_ref().ok_or_else(|| bad("missing `table`"))?;
    if entries.len() != size {
        return Err(bad(format!(
            "table has {} entries, expected {size}",
            entries.len()
        )));
    }

    let mut table = ModularTable::from_parts(moduli, Vec::new());
    let mut slots: Vec<Option<u32>> = vec![None; size];
    for entry in entries {
        if entry.vector.len() != table.moduli().len()
            || entry
                .vector
                .iter()
                .zip(table.moduli())
                .any(|(&r, m)| r >= m.modulus())
        {
            return Err(bad(format!("vector {:?} is outside V", entry.vector)));
        }
        if !(1..=k).contains(&entry.part) {
            return Err(bad(format!("part {} is outside 1..={k}", entry.part)));
        }
        let j = (entry.part - 1) as u64;
        if entry.vector.contains(&j) {
            return Err(bad(format!(
                "vector {:?} assigned to part {} has a component equal to {j}",
                entry.vector, entry.part
            )));
        }
        let idx = table.index_of(&entry.vector);
        if slots[idx].replace(j as u32).is_some() {
            return Err(bad(format!("vector {:?} listed twice", entry.vector)));
        }
    }
    // entries.len() == size and no duplicates, so every slot is filled
    table = ModularTable::from_parts(
        table.moduli().to_vec(),
        slots.into_iter().map(|s| s.expect("slot filled")).collect(),
    );
    Ok(PartitionHandle::from_spec(
        PartitionSpec::ModularTable(table),
        k,
    ))
}
