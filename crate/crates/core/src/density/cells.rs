use serde::Serialize;

use super::WindowSet;
use crate::padic::{
    cell_of, inverse_mod, mul_mod, totient_prime_power, PositiveRational, Prime, QpCell,
};
use crate::{Error, Result};

// dense (valuation × residue) table of a RatioIndex
const INDEX_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellKey {
    pub a: u64,
    pub s: i64,
}

/// The cells with valuation in `[t, m)` at precision `w` that a window meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellHitSet {
    pub p: u64,
    pub w: u32,
    pub t: i64,
    pub m: i64,
    cells: Vec<CellKey>,
}

impl CellHitSet {
    pub fn cells(&self) -> &[CellKey] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, a: u64, s: i64) -> bool {
        self.cells.binary_search(&CellKey { a, s }).is_ok()
    }

    /// `(m - t)·φ(p^w)`, the number of cells in the range.
    pub fn trivial_bound(&self) -> u128 {
        let phi =
            totient_prime_power(Prime::new(self.p).expect("validated"), self.w).expect("validated");
        (self.m - self.t) as u128 * phi as u128
    }

    pub fn within_trivial_bound(&self) -> bool {
        self.len() as u128 <= self.trivial_bound()
    }
}

/// A lexicographically smallest pair `(x, y)` with `x/y` in the queried cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioWitness {
    pub numerator: u64,
    pub denominator: u64,
}

/// Per-cell minimal representatives of a window at fixed `(p, w)`.
///
/// `x/y` lies in cell `c` iff `cell(x) = c · cell(y)`, so ratio queries reduce
/// to lookups in the group of hit cells instead of a pass over all pairs.
#[derive(Debug, Clone)]
pub struct RatioIndex {
    p: Prime,
    w: u32,
    modulus: u64,
    max_s: u32,
    // min_rep[s * modulus + a], 0 when the cell is missed
    min_rep: Vec<u64>,
    // (rep, a, s) for each hit cell, ascending by rep
    by_rep: Vec<(u64, u64, u32)>,
}

impl RatioIndex {
    pub fn new(x: &WindowSet, p: Prime, w: u32) -> Result<Self> {
        if w == 0 {
            return Err(Error::invalid("w", "precision must be at least 1"));
        }
        let modulus = p.pow(w)?;
        let mut coords = Vec::with_capacity(x.len());
        let mut max_s = 0;
        for &n in x.elements() {
            let (s, u) = p.split(n)?;
            max_s = max_s.max(s);
            coords.push((n, u % modulus, s));
        }
        let size = (max_s as u64 + 1).saturating_mul(modulus);
        if size > INDEX_BUDGET {
            return Err(Error::invalid(
                "w",
                format!("cell index of {size} slots exceeds the budget {INDEX_BUDGET}"),
            ));
        }
        let mut min_rep = vec![0u64; size as usize];
        let mut by_rep = Vec::new();
        // elements arrive ascending, so the first visit to a cell is its minimum
        for (n, a, s) in coords {
            let slot = &mut min_rep[(s as u64 * modulus + a) as usize];
            if *slot == 0 {
                *slot = n;
                by_rep.push((n, a, s));
            }
        }
        Ok(RatioIndex {
            p,
            w,
            modulus,
            max_s,
            min_rep,
            by_rep,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.w
    }

    /// Largest valuation among the window's elements (0 for an empty window).
    pub fn max_valuation(&self) -> u32 {
        self.max_s
    }

    /// Number of distinct cells the window meets (all valuations).
    pub fn hit_cell_count(&self) -> usize {
        self.by_rep.len()
    }

    fn rep(&self, a: u64, s: i64) -> Option<u64> {
        if s < 0 || s > self.max_s as i64 {
            return None;
        }
        match self.min_rep[(s as u64 * self.modulus + a) as usize] {
            0 => None,
            n => Some(n),
        }
    }

    pub fn cell_hits(&self, t: i64, m: i64) -> Result<CellHitSet> {
        if t >= m {
            return Err(Error::invalid("t", format!("need t < m, got t={t}, m={m}")));
        }
        let mut cells: Vec<CellKey> = self
            .by_rep
            .iter()
            .filter(|&&(_, _, s)| (t..m).contains(&(s as i64)))
            .map(|&(_, a, s)| CellKey { a, s: s as i64 })
            .collect();
        cells.sort_unstable();
        Ok(CellHitSet {
            p: self.p.get(),
            w: self.w,
            t,
            m,
            cells,
        })
    }

    /// Smallest `(x, y)` in the window with `x/y` in cell `(a, s)`.
    pub fn witness(&self, a: u64, s: i64) -> Option<RatioWitness> {
        let inv = inverse_mod(a % self.modulus, self.modulus)?;
        self.by_rep.iter().find_map(|&(x, ax, sx)| {
            let y = self.rep(mul_mod(ax, inv, self.modulus), sx as i64 - s)?;
            Some(RatioWitness {
                numerator: x,
                denominator: y,
            })
        })
    }
}

pub fn cell_hits(x: &WindowSet, p: u64, w: u32, t: i64, m: i64) -> Result<CellHitSet> {
    RatioIndex::new(x, Prime::new(p)?, w)?.cell_hits(t, m)
}

fn check_cell(cell: &QpCell) -> Result<()> {
    QpCell::new(cell.p, cell.w, cell.a, cell.s).map(|_| ())
}

/// Does `R(X)` meet `cell`? Answered through the group quotient of the hit
/// cells of `X`.
pub fn ratio_cell_hit(x: &WindowSet, cell: &QpCell) -> Result<Option<RatioWitness>> {
    check_cell(cell)?;
    Ok(RatioIndex::new(x, cell.prime(), cell.w)?.witness(cell.a, cell.s))
}

/// Same question by reducing every fraction `x/y` and classifying it.
/// Quadratic in `|X|`.
pub fn ratio_cell_hit_brute(x: &WindowSet, cell: &QpCell) -> Result<Option<RatioWitness>> {
    check_cell(cell)?;
    for &num in x.elements() {
        for &den in x.elements() {
            if cell_of(&PositiveRational::new(num, den)?, cell.p, cell.w)? == *cell {
                return Ok(Some(RatioWitness {
                    numerator: num,
                    denominator: den,
                }));
            }
        }
    }
    Ok(None)
}

/// Runs both oracles and fails if they disagree on the answer or the witness.
pub fn ratio_cell_hit_checked(x: &WindowSet, cell: &QpCell) -> Result<Option<RatioWitness>> {
    let fast = ratio_cell_hit(x, cell)?;
    let slow = ratio_cell_hit_brute(x, cell)?;
    if fast != slow {
        return Err(Error::OracleDisagreement(format!(
            "cell {cell}: quotient gave {fast:?}, brute force gave {slow:?}"
        )));
    }
    Ok(fast)
}
