use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A positive rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveRational {
    num: u64,
    den: u64,
}

impl PositiveRational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::invalid(
                "rational",
                format!("{num}/{den} is not a positive rational"),
            ));
        }
        let g = num.gcd(&den);
        Ok(PositiveRational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Result<Self> {
        PositiveRational::new(n, 1)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn recip(&self) -> Self {
        PositiveRational {
            num: self.den,
            den: self.num,
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        // cross-reduce first to keep intermediates small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = (self.num / g1).checked_mul(other.num / g2);
        let den = (self.den / g2).checked_mul(other.den / g1);
        match (num, den) {
            (Some(num), Some(den)) => Ok(PositiveRational { num, den }),
            _ => Err(Error::Overflow(format!("{self} * {other}"))),
        }
    }

    /// `self > other`, exactly.
    pub fn gt(&self, other: &Self) -> bool {
        (self.num as u128) * (other.den as u128) > (other.num as u128) * (self.den as u128)
    }
}

impl std::fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `a/b`, an integer, or a finite decimal such as `0.75`.
impl FromStr for PositiveRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("rational", format!("cannot parse {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return PositiveRational::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let scale = 10u64.pow(frac.len() as u32);
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let num = int
                .checked_mul(scale)
                .and_then(|x| x.checked_add(frac))
                .ok_or_else(bad)?;
            return PositiveRational::new(num, scale);
        }
        PositiveRational::integer(s.parse().map_err(|_| bad())?)
    }
}
