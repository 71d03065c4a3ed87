use serde::{Deserialize, Serialize};

use super::{RatioIndex, WindowSet};
use crate::padic::{totient_prime_power, units_mod, PositiveRational, Prime, QpCell};
use crate::{Error, Result};

/// Parameters of the cell-counting lemma: if `X` meets at least
/// `c·m·φ(p^w)` cells with valuation in `[0, m)`, where `c > 1/2` and
/// `m > t/(2c - 1)`, then `R(X)` meets every cell with valuation in `[0, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaParams {
    pub p: u64,
    pub w: u32,
    pub t: u32,
    pub c: PositiveRational,
    pub m: u32,
}

impl LemmaParams {
    pub fn validate(&self) -> Result<Prime> {
        let prime = Prime::new(self.p)?;
        if self.w == 0 {
            return Err(Error::invalid("w", "must be a positive integer"));
        }
        if self.t == 0 {
            return Err(Error::invalid("t", "must be a positive integer"));
        }
        if self.m == 0 {
            return Err(Error::invalid("m", "must be a positive integer"));
        }
        let (cn, cd) = (self.c.numer() as u128, self.c.denom() as u128);
        if 2 * cn <= cd {
            return Err(Error::Precondition(format!(
                "c = {} must exceed 1/2",
                self.c
            )));
        }
        // m > t/(2c - 1)  ⇔  m·(2·cn - cd) > t·cd
        if self.m as u128 * (2 * cn - cd) <= self.t as u128 * cd {
            return Err(Error::Precondition(format!(
                "m = {} must exceed t/(2c - 1) with t = {}, c = {}",
                self.m, self.t, self.c
            )));
        }
        Ok(prime)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub params: LemmaParams,
    /// `#V_{p^w,0,m}(X)`.
    pub cells_hit: u64,
    /// `(m - 0)·φ(p^w)`.
    pub cell_bound: u64,
    pub hypothesis: bool,
    /// `None` when the hypothesis fails and the conclusion is not examined.
    pub conclusion: Option<bool>,
    pub counterexample: Option<QpCell>,
}

impl LemmaVerdict {
    /// Hypothesis holds but the conclusion does not. For finite `X` this
    /// cannot happen unless the oracles are wrong.
    pub fn is_violation(&self) -> bool {
        self.hypothesis && self.conclusion == Some(false)
    }
}

pub fn verify_ratio_lemma(x: &WindowSet, params: &LemmaParams) -> Result<LemmaVerdict> {
    let prime = params.validate()?;
    let index = RatioIndex::new(x, prime, params.w)?;
    let hits = index.cell_hits(0, params.m as i64)?;
    let phi = totient_prime_power(prime, params.w)?;
    let cells_hit = hits.len() as u64;
    // #V ≥ c·m·φ  ⇔  #V·cd ≥ cn·m·φ
    let hypothesis = cells_hit as u128 * params.c.denom() as u128
        >= params.c.numer() as u128 * params.m as u128 * phi as u128;

    let (conclusion, counterexample) = if hypothesis {
        let modulus = prime.pow(params.w)?;
        let missed = (0..params.t as i64)
            .flat_map(|s| units_mod(prime, modulus).map(move |a| (a, s)))
            .find(|&(a, s)| index.witness(a, s).is_none());
        match missed {
            Some((a, s)) => (Some(false), Some(QpCell::new(params.p, params.w, a, s)?)),
            None => (Some(true), None),
        }
    } else {
        (None, None)
    };

    Ok(LemmaVerdict {
        params: *params,
        cells_hit,
        cell_bound: hits.trivial_bound() as u64,
        hypothesis,
        conclusion,
        counterexample,
    })
}
