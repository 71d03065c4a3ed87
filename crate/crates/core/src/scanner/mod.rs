//! Prime sweeps over a partition.
//!
//! For each prime `p ≤ P` every part gets one of three verdicts:
//! covered to the requested depth inside the window, certified to avoid
//! something (window-independent), or missing something without a known
//! reason. A prime is exceptional when no part is covered there.
//!
//! Per-prime work runs on the rayon pool; results are collected in prime
//! order, so reports do not depend on scheduling.

mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::{
    MinExceptionsReport, PartVerdict, PrimeScan, ScanReport, UniformMemberReport, Verdict,
    CSV_HEADER,
};

use crate::density::{
    find_avoided_cell, find_avoided_class, zp_coverage, AvoidanceCertificate, RatioIndex, WindowSet,
};
use crate::padic::{primes_up_to, units_mod, Prime};
use crate::partition::{PartitionHandle, PartitionSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Zp,
    QpRatio,
}

impl ScanMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanMode::Zp => "zp",
            ScanMode::QpRatio => "qp-ratio",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub mode: ScanMode,
    /// Scan every prime `p ≤ prime_bound`.
    pub prime_bound: u64,
    /// Window `[1, window]`.
    pub window: u64,
    /// Residue depth `j` for `Z_p` coverage (modulus `p^j`).
    pub depth: u32,
    /// Cell precision `w` for `Q_p` ratio coverage.
    pub w: u32,
    pub s_min: i64,
    pub s_max: i64,
}

impl ScanConfig {
    pub fn zp() -> Self {
        ScanConfig {
            mode: ScanMode::Zp,
            prime_bound: 50,
            window: 100_000,
            depth: 2,
            w: 2,
            s_min: -2,
            s_max: 2,
        }
    }

    pub fn qp_ratio() -> Self {
        ScanConfig {
            mode: ScanMode::QpRatio,
            ..ScanConfig::zp()
        }
    }

    pub fn validate(&self, handle: &PartitionHandle) -> Result<()> {
        if self.prime_bound < 2 {
            return Err(Error::invalid("prime_bound", "must be at least 2"));
        }
        if self.window == 0 {
            return Err(Error::invalid("window", "must be at least 1"));
        }
        if self.depth == 0 {
            return Err(Error::invalid("depth", "must be at least 1"));
        }
        if self.w == 0 {
            return Err(Error::invalid("w", "must be at least 1"));
        }
        if self.s_min > self.s_max {
            return Err(Error::invalid(
                "s_range",
                format!("empty range {}..{}", self.s_min, self.s_max),
            ));
        }
        if let Some(max) = handle.construction_primes().iter().map(|p| p.get()).max() {
            if self.prime_bound < max {
                return Err(Error::invalid(
                    "prime_bound",
                    format!("{} is below the construction prime {max}", self.prime_bound),
                ));
            }
        }
        Ok(())
    }

    fn expect_mode(&self, mode: ScanMode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::invalid(
                "mode",
                format!("expected {}, got {}", mode.as_str(), self.mode.as_str()),
            ));
        }
        Ok(())
    }
}

/// Exceptional-prime bound for a `k`-part partition: `k - 1` in `Z_p`,
/// `⌊log₂ k⌋` for ratio sets in `Q_p`.
pub fn exceptional_bound(mode: ScanMode, k: usize) -> usize {
    match mode {
        ScanMode::Zp => k.saturating_sub(1),
        ScanMode::QpRatio => (usize::BITS - 1 - k.max(1).leading_zeros()) as usize,
    }
}

pub fn scan(handle: &PartitionHandle, cfg: &ScanConfig) -> Result<ScanReport> {
    match cfg.mode {
        ScanMode::Zp => scan_zp(handle, cfg),
        ScanMode::QpRatio => scan_qp_ratio(handle, cfg),
    }
}

pub fn scan_zp(handle: &PartitionHandle, cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.expect_mode(ScanMode::Zp)?;
    run(handle, cfg, zp_part)
}

pub fn scan_qp_ratio(handle: &PartitionHandle, cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.expect_mode(ScanMode::QpRatio)?;
    run(handle, cfg, qp_part)
}

type PartScan = fn(&PartitionHandle, &ScanConfig, Prime, usize, &WindowSet) -> Result<PartVerdict>;

fn run(handle: &PartitionHandle, cfg: &ScanConfig, part_scan: PartScan) -> Result<ScanReport> {
    cfg.validate(handle)?;
    let windows = WindowSet::partition_windows(handle, cfg.window)?;
    let primes = primes_up_to(cfg.prime_bound);
    let scans = primes
        .par_iter()
        .map(|&p| {
            let parts = windows
                .iter()
                .enumerate()
                .map(|(i, x)| part_scan(handle, cfg, p, i + 1, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(PrimeScan::new(p.get(), parts))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::new(handle, cfg.clone(), scans))
}

fn certified(cert: AvoidanceCertificate, x: &WindowSet) -> Result<AvoidanceCertificate> {
    if !cert.spot_check(x)? {
        return Err(Error::CertificateRefuted(format!(
            "{:?} for part {} at p = {}",
            cert.obstruction, cert.part, cert.p
        )));
    }
    Ok(cert)
}

fn zp_part(
    handle: &PartitionHandle,
    cfg: &ScanConfig,
    p: Prime,
    part: usize,
    x: &WindowSet,
) -> Result<PartVerdict> {
    let cov = zp_coverage(x, p.get(), cfg.depth)?;
    let cert = match handle.spec() {
        PartitionSpec::ModularTable(_) => find_avoided_class(handle, part, p.get())?,
        _ => None,
    };
    let cert = cert.map(|c| certified(c, x)).transpose()?;
    let verdict = Verdict::classify(cert.is_some(), cov.is_complete());
    Ok(PartVerdict {
        part,
        verdict,
        size: x.len() as u64,
        hit: cov.hit.len() as u64,
        total: cov.modulus,
        cells_hit: None,
        cell_bound: None,
        certificate: cert,
    })
}

fn qp_part(
    handle: &PartitionHandle,
    cfg: &ScanConfig,
    p: Prime,
    part: usize,
    x: &WindowSet,
) -> Result<PartVerdict> {
    let index = RatioIndex::new(x, p, cfg.w)?;
    let modulus = p.pow(cfg.w)?;
    let mut hit = 0u64;
    let mut total = 0u64;
    for s in cfg.s_min..=cfg.s_max {
        for a in units_mod(p, modulus) {
            total += 1;
            if index.witness(a, s).is_some() {
                hit += 1;
            }
        }
    }
    let own = index.cell_hits(0, index.max_valuation() as i64 + 1)?;
    let cert = find_avoided_cell(handle, part, p.get(), cfg.w)?
        .map(|c| certified(c, x))
        .transpose()?;
    let verdict = Verdict::classify(cert.is_some(), hit == total);
    Ok(PartVerdict {
        part,
        verdict,
        size: x.len() as u64,
        hit,
        total,
        cells_hit: Some(own.len() as u64),
        cell_bound: Some(own.trivial_bound() as u64),
        certificate: cert,
    })
}

/// Is there a single part that is covered at all but at most `k - 1` of the
/// scanned primes?
pub fn check_uniform_member(
    handle: &PartitionHandle,
    cfg: &ScanConfig,
) -> Result<UniformMemberReport> {
    cfg.expect_mode(ScanMode::Zp)?;
    Ok(UniformMemberReport::from_scan(&scan_zp(handle, cfg)?))
}

/// Smallest number of scanned primes at which some part's ratio set misses
/// a cell. Empirical only.
pub fn empirical_min_exceptions(
    handle: &PartitionHandle,
    cfg: &ScanConfig,
) -> Result<MinExceptionsReport> {
    cfg.expect_mode(ScanMode::QpRatio)?;
    Ok(MinExceptionsReport::from_scan(&scan_qp_ratio(handle, cfg)?))
}

/// Primes where some part is covered in `Z_p` yet the `Q_p` ratio scan calls
/// the prime exceptional. A dense set in `Z_p` has a dense ratio set in `Q_p`,
/// so this should be empty. With finite windows the comparison is only
/// airtight when the `Z_p` depth is at least `w + max|s|`; at smaller depths a
/// residue-level cover can hide a missed cell.
pub fn zp_qp_inconsistencies(zp: &ScanReport, qp: &ScanReport) -> Result<Vec<u64>> {
    if zp.mode != ScanMode::Zp || qp.mode != ScanMode::QpRatio {
        return Err(Error::invalid(
            "mode",
            "expected a zp report and a qp-ratio report",
        ));
    }
    if zp.config.window != qp.config.window {
        return Err(Error::invalid("window", "reports use different windows"));
    }
    if !(qp.config.s_min..=qp.config.s_max).contains(&0) {
        return Err(Error::invalid("s_range", "ratio scan must include s = 0"));
    }
    let mut out = Vec::new();
    for z in &zp.primes {
        let covered = z
            .parts
            .iter()
            .any(|pv| pv.verdict == Verdict::CoveredToDepth);
        let q = qp.primes.iter().find(|q| q.p == z.p);
        if covered && q.is_some_and(|q| q.exceptional) {
            out.push(z.p);
        }
    }
    Ok(out)
}
