use serde::Serialize;

use crate::partition::{Construction, PartitionHandle};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Part {
        construction: Construction,
        part: usize,
    },
    Explicit,
}

/// `X ∩ [1, bound]`, sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSet {
    bound: u64,
    elements: Vec<u64>,
    provenance: Provenance,
}

impl WindowSet {
    pub fn from_elements(bound: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut elements: Vec<u64> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&n| n == 0 || n > bound) {
            return Err(Error::invalid(
                "window",
                format!("element {bad} is outside [1, {bound}]"),
            ));
        }
        Ok(WindowSet {
            bound,
            elements,
            provenance: Provenance::Explicit,
        })
    }

    /// All of `[1, bound]`.
    pub fn full(bound: u64) -> Self {
        WindowSet {
            bound,
            elements: (1..=bound).collect(),
            provenance: Provenance::Explicit,
        }
    }

    pub fn from_part(handle: &PartitionHandle, part: usize, bound: u64) -> Result<Self> {
        if !(1..=handle.k()).contains(&part) {
            return Err(Error::invalid(
                "part",
                format!("{part} is outside 1..={}", handle.k()),
            ));
        }
        let mut elements = Vec::new();
        for n in 1..=bound {
            if handle.classify(n)? == part {
                elements.push(n);
            }
        }
        Ok(WindowSet {
            bound,
            elements,
            provenance: Provenance::Part {
                construction: handle.construction(),
                part,
            },
        })
    }

    /// One window per part (index `part - 1`) from a single classification pass.
    pub fn partition_windows(handle: &PartitionHandle, bound: u64) -> Result<Vec<Self>> {
        let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); handle.k()];
        for n in 1..=bound {
            buckets[handle.classify(n)? - 1].push(n);
        }
        Ok(buckets
            .into_iter()
            .enumerate()
            .map(|(i, elements)| WindowSet {
                bound,
                elements,
                provenance: Provenance::Part {
                    construction: handle.construction(),
                    part: i + 1,
                },
            })
            .collect())
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}
