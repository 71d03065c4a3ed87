use serde::Serialize;

use super::WindowSet;
use crate::padic::Prime;
use crate::{Error, Result};

/// Largest modulus `p^j` a coverage query may allocate.
pub const RESIDUE_BUDGET: u64 = 1 << 24;

/// Residues mod `p^depth` hit and missed by a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub p: u64,
    pub depth: u32,
    pub modulus: u64,
    pub window: u64,
    pub hit: Vec<u64>,
    pub missed: Vec<u64>,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.missed.is_empty()
    }
}

pub fn zp_coverage(x: &WindowSet, p: u64, depth: u32) -> Result<CoverageReport> {
    let prime = Prime::new(p)?;
    if depth == 0 {
        return Err(Error::invalid("depth", "must be at least 1"));
    }
    let modulus = prime.pow(depth)?;
    if modulus > RESIDUE_BUDGET {
        return Err(Error::invalid(
            "depth",
            format!("{p}^{depth} exceeds the residue budget {RESIDUE_BUDGET}"),
        ));
    }
    let mut seen = vec![false; modulus as usize];
    for &n in x.elements() {
        seen[(n % modulus) as usize] = true;
    }
    let (hit, missed): (Vec<u64>, Vec<u64>) = (0..modulus).partition(|&r| seen[r as usize]);
    Ok(CoverageReport {
        p,
        depth,
        modulus,
        window: x.bound(),
        hit,
        missed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::v_p;

    #[test]
    fn odds_miss_zero_mod_two() {
        let odds = WindowSet::from_elements(100, (1..=100).filter(|n| n % 2 == 1)).unwrap();
        let r = zp_coverage(&odds, 2, 1).unwrap();
        assert_eq!((r.hit, r.missed), (vec![1], vec![0]));
    }

    #[test]
    fn consecutive_integers_cover_everything() {
        let r = zp_coverage(&WindowSet::full(100), 3, 2).unwrap();
        assert_eq!(r.hit.len(), 9);
        assert!(r.is_complete());
    }

    #[test]
    fn even_two_adic_valuation_covers_mod_nine() {
        let x = WindowSet::from_elements(
            10_000,
            (1..=10_000).filter(|&n| v_p(n, 2).unwrap().is_multiple_of(2)),
        )
        .unwrap();
        let mut brute = [false; 9];
        x.elements()
            .iter()
            .for_each(|&n| brute[(n % 9) as usize] = true);
        assert!(brute.iter().all(|&b| b));
        assert!(zp_coverage(&x, 3, 2).unwrap().is_complete());
    }

    #[test]
    fn rejects_bad_parameters() {
        let x = WindowSet::full(10);
        assert!(zp_coverage(&x, 4, 1).is_err());
        assert!(zp_coverage(&x, 2, 0).is_err());
        assert!(zp_coverage(&x, 2, 30).is_err());
    }

    #[test]
    fn coverage_is_monotone() {
        let small = WindowSet::from_elements(50, [1, 2, 7, 30]).unwrap();
        let big = WindowSet::from_elements(50, [1, 2, 7, 30, 11, 45]).unwrap();
        let a = zp_coverage(&small, 5, 2).unwrap();
        let b = zp_coverage(&big, 5, 2).unwrap();
        assert!(a.hit.iter().all(|r| b.hit.contains(r)));
        assert_eq!(a.hit.len() + a.missed.len(), 25);
    }
}
