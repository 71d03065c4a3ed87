use std::fmt::Write as _;

use serde::Serialize;

use super::{exceptional_bound, ScanConfig, ScanMode};
use crate::density::AvoidanceCertificate;
use crate::padic::Prime;
use crate::partition::{Construction, PartitionHandle};

pub const CSV_HEADER: &str = "prime,part,verdict,certificate";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every residue (or cell) at the configured precision is hit in the window.
    CoveredToDepth,
    /// A window-independent certificate rules out denseness.
    Avoids,
    /// Something is missed in the window and no certificate is known.
    UndeterminedMissing,
}

impl Verdict {
    pub(crate) fn classify(certified: bool, complete: bool) -> Self {
        if certified {
            Verdict::Avoids
        } else if complete {
            Verdict::CoveredToDepth
        } else {
            Verdict::UndeterminedMissing
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::CoveredToDepth => "covered_to_depth",
            Verdict::Avoids => "avoids",
            Verdict::UndeterminedMissing => "undetermined_missing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartVerdict {
    pub part: usize,
    pub verdict: Verdict,
    /// Members of the part inside the window.
    pub size: u64,
    /// Residues mod `p^j` hit (Zp), or target cells met by the ratio set (Qp).
    pub hit: u64,
    pub total: u64,
    /// Qp only: `#V_{p^w,0,m}` of the part itself, `m` one past its largest valuation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells_hit: Option<u64>,
    /// Qp only: the trivial bound `m·φ(p^w)` for `cells_hit`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<AvoidanceCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeScan {
    pub p: u64,
    pub parts: Vec<PartVerdict>,
    /// No part is covered at this prime.
    pub exceptional: bool,
    /// Exceptional, but at least one part lacks a certificate, so a larger
    /// window might change the verdict.
    pub window_limited: bool,
}

impl PrimeScan {
    pub(crate) fn new(p: u64, parts: Vec<PartVerdict>) -> Self {
        let exceptional = parts.iter().all(|pv| pv.verdict != Verdict::CoveredToDepth);
        let window_limited = exceptional
            && parts
                .iter()
                .any(|pv| pv.verdict == Verdict::UndeterminedMissing);
        PrimeScan {
            p,
            parts,
            exceptional,
            window_limited,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub mode: ScanMode,
    pub construction: Construction,
    pub k: usize,
    pub construction_primes: Vec<u64>,
    pub config: ScanConfig,
    pub primes: Vec<PrimeScan>,
    pub exceptional_primes: Vec<u64>,
    pub bound: usize,
    pub bound_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

impl ScanReport {
    pub(crate) fn new(
        handle: &PartitionHandle,
        config: ScanConfig,
        primes: Vec<PrimeScan>,
    ) -> Self {
        let exceptional_primes: Vec<u64> = primes
            .iter()
            .filter(|p| p.exceptional)
            .map(|p| p.p)
            .collect();
        let bound = exceptional_bound(config.mode, handle.k());
        let bound_holds = exceptional_primes.len() <= bound;
        let violation = (!bound_holds).then(|| {
            let limited: Vec<u64> = primes
                .iter()
                .filter(|p| p.window_limited)
                .map(|p| p.p)
                .collect();
            format!(
                "{} exceptional primes {:?} exceed the bound {}; window-limited: {:?}",
                exceptional_primes.len(),
                exceptional_primes,
                bound,
                limited
            )
        });
        ScanReport {
            mode: config.mode,
            construction: handle.construction(),
            k: handle.k(),
            construction_primes: handle
                .construction_primes()
                .into_iter()
                .map(Prime::get)
                .collect(),
            config,
            primes,
            exceptional_primes,
            bound,
            bound_holds,
            violation,
        }
    }

    pub fn prime(&self, p: u64) -> Option<&PrimeScan> {
        self.primes.iter().find(|s| s.p == p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per (prime, part), sorted by prime then part.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for scan in &self.primes {
            for pv in &scan.parts {
                let cert = pv
                    .certificate
                    .as_ref()
                    .map_or("", |c| c.justification.as_str());
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    scan.p,
                    pv.part,
                    pv.verdict.as_str(),
                    cert
                );
            }
        }
        out
    }

    /// Primes at which `part` is not covered.
    pub fn misses_of(&self, part: usize) -> Vec<u64> {
        self.primes
            .iter()
            .filter(|s| {
                s.parts
                    .iter()
                    .any(|pv| pv.part == part && pv.verdict != Verdict::CoveredToDepth)
            })
            .map(|s| s.p)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartMisses {
    pub part: usize,
    pub primes: Vec<u64>,
}

fn misses_per_part(report: &ScanReport) -> Vec<PartMisses> {
    (1..=report.k)
        .map(|part| PartMisses {
            part,
            primes: report.misses_of(part),
        })
        .collect()
}

/// Whether one part is covered at all scanned primes but at most `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformMemberReport {
    pub bound: usize,
    pub per_part: Vec<PartMisses>,
    pub qualifying_parts: Vec<usize>,
    pub holds: bool,
}

impl UniformMemberReport {
    pub fn from_scan(report: &ScanReport) -> Self {
        let bound = report.k.saturating_sub(1);
        let per_part = misses_per_part(report);
        let qualifying_parts: Vec<usize> = per_part
            .iter()
            .filter(|m| m.primes.len() <= bound)
            .map(|m| m.part)
            .collect();
        UniformMemberReport {
            bound,
            holds: !qualifying_parts.is_empty(),
            per_part,
            qualifying_parts,
        }
    }
}

pub const MIN_EXCEPTIONS_NOTE: &str = "empirical count over the scanned primes and window only; \
it brackets nothing beyond this scan and is not a value of the open quantity";

/// Fewest scanned primes at which a single part's ratio set misses a cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinExceptionsReport {
    pub value: usize,
    pub per_part: Vec<PartMisses>,
    /// Known lower bound `⌊log₂ k⌋`.
    pub lower_bound: usize,
    /// Known upper bound `k - 1`.
    pub upper_bound: usize,
    pub note: &'static str,
}

impl MinExceptionsReport {
    pub fn from_scan(report: &ScanReport) -> Self {
        let per_part = misses_per_part(report);
        MinExceptionsReport {
            value: per_part.iter().map(|m| m.primes.len()).min().unwrap_or(0),
            per_part,
            lower_bound: exceptional_bound(ScanMode::QpRatio, report.k),
            upper_bound: report.k.saturating_sub(1),
            note: MIN_EXCEPTIONS_NOTE,
        }
    }
}
