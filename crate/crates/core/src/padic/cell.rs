use serde::{Deserialize, Serialize};

use super::{inverse_mod, mul_mod, PositiveRational, Prime};
use crate::{Error, Result};

/// The basic open set of `Q_p*` made of elements with valuation `s` whose
/// unit part is congruent to `a` modulo `p^w`.
///
/// Cells with the same `(p, w)` form a group under multiplication: valuations
/// add and unit residues multiply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QpCell {
    pub p: u64,
    pub w: u32,
    pub a: u64,
    pub s: i64,
}

/// `φ(p^w) = p^{w-1}(p - 1)`.
pub fn totient_prime_power(p: Prime, w: u32) -> Result<u64> {
    if w == 0 {
        return Ok(1);
    }
    Ok(p.pow(w - 1)? * (p.get() - 1))
}

/// The unit group `(Z/p^wZ)*` as `{a ∈ [1, p^w) : p ∤ a}`.
pub fn units_mod(p: Prime, modulus: u64) -> impl Iterator<Item = u64> {
    let p = p.get();
    (1..modulus).filter(move |a| a % p != 0)
}

impl QpCell {
    pub fn new(p: u64, w: u32, a: u64, s: i64) -> Result<Self> {
        let prime = Prime::new(p)?;
        if w == 0 {
            return Err(Error::invalid("w", "precision must be at least 1"));
        }
        let modulus = prime.pow(w)?;
        if a == 0 || a >= modulus || a.is_multiple_of(p) {
            return Err(Error::invalid(
                "a",
                format!("{a} is not a unit representative mod {p}^{w}"),
            ));
        }
        Ok(QpCell { p, w, a, s })
    }

    /// `p^w`. Only valid on cells built through [`QpCell::new`] or [`cell_of`].
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.w)
    }

    pub fn prime(&self) -> Prime {
        Prime::new(self.p).expect("cell prime validated on construction")
    }

    fn check_compatible(&self, other: &QpCell) -> Result<()> {
        if self.p != other.p || self.w != other.w {
            return Err(Error::invalid(
                "cell",
                format!(
                    "cells over ({}, {}) and ({}, {}) do not compose",
                    self.p, self.w, other.p, other.w
                ),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, other: &QpCell) -> Result<QpCell> {
        self.check_compatible(other)?;
        let s = self
            .s
            .checked_add(other.s)
            .ok_or_else(|| Error::Overflow("cell valuation".into()))?;
        Ok(QpCell {
            a: mul_mod(self.a, other.a, self.modulus()),
            s,
            ..*self
        })
    }

    pub fn inverse(&self) -> QpCell {
        let a = inverse_mod(self.a, self.modulus()).expect("cell residue is a unit");
        QpCell {
            a,
            s: -self.s,
            ..*self
        }
    }

    pub fn contains(&self, x: &PositiveRational) -> bool {
        cell_of(x, self.p, self.w).is_ok_and(|c| c == *self)
    }
}

impl std::fmt::Display for QpCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} mod {}^{}, s={})", self.a, self.p, self.w, self.s)
    }
}

/// The unique cell of precision `w` at `p` containing `x`.
pub fn cell_of(x: &PositiveRational, p: u64, w: u32) -> Result<QpCell> {
    let prime = Prime::new(p)?;
    if w == 0 {
        return Err(Error::invalid("w", "precision must be at least 1"));
    }
    let modulus = prime.pow(w)?;
    let (vn, un) = prime.split(x.numer())?;
    let (vd, ud) = prime.split(x.denom())?;
    let inv = inverse_mod(ud % modulus, modulus).expect("unit part is coprime to p");
    Ok(QpCell {
        p,
        w,
        a: mul_mod(un % modulus, inv, modulus),
        s: vn as i64 - vd as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(n: u64, d: u64) -> PositiveRational {
        PositiveRational::new(n, d).unwrap()
    }

    #[test]
    fn cell_of_examples() {
        let c = cell_of(&q(40, 1), 2, 2).unwrap();
        assert_eq!((c.a, c.s), (1, 3));
        for p in [2, 3, 5, 7, 11] {
            for w in 1..4 {
                let c = cell_of(&q(1, 1), p, w).unwrap();
                assert_eq!((c.a, c.s), (1, 0));
            }
        }
        // 5/6 = 3^{-1}·(5/2) and 5·2^{-1} ≡ 1 (mod 3)
        let brute_a = (1..3u64).find(|a| (a * 2) % 3 == 5 % 3).unwrap();
        let c = cell_of(&q(5, 6), 3, 1).unwrap();
        assert_eq!((c.a, c.s), (brute_a, -1));
    }

    #[test]
    fn cell_validation() {
        assert!(QpCell::new(2, 2, 3, -1).is_ok());
        assert!(QpCell::new(2, 2, 2, 0).is_err());
        assert!(QpCell::new(2, 2, 4, 0).is_err());
        assert!(QpCell::new(4, 1, 1, 0).is_err());
        assert!(QpCell::new(3, 0, 1, 0).is_err());
        assert!(cell_of(&q(3, 1), 2, 0).is_err());
    }

    #[test]
    fn totients() {
        let five = Prime::new(5).unwrap();
        assert_eq!(totient_prime_power(five, 2), Ok(20));
        assert_eq!(units_mod(five, 25).count(), 20);
        let two = Prime::new(2).unwrap();
        assert_eq!(totient_prime_power(two, 1), Ok(1));
        assert_eq!(units_mod(two, 4).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn incompatible_cells_do_not_compose() {
        let a = QpCell::new(2, 2, 1, 0).unwrap();
        let b = QpCell::new(2, 3, 1, 0).unwrap();
        assert!(a.mul(&b).is_err());
    }

    proptest! {
        #[test]
        fn cell_of_is_a_homomorphism(
            pi in 0usize..5, w in 1u32..4,
            xn in 1u64..5000, xd in 1u64..5000, yn in 1u64..5000, yd in 1u64..5000,
        ) {
            let p = [2u64, 3, 5, 7, 13][pi];
            let x = q(xn, xd);
            let y = q(yn, yd);
            let cx = cell_of(&x, p, w).unwrap();
            let cy = cell_of(&y, p, w).unwrap();
            let cxy = cell_of(&x.checked_mul(&y).unwrap(), p, w).unwrap();
            prop_assert_eq!(cxy, cx.mul(&cy).unwrap());
            prop_assert_eq!(cell_of(&x.recip(), p, w).unwrap(), cx.inverse());
            prop_assert!(cx.contains(&x));
            prop_assert_eq!(QpCell::new(cx.p, cx.w, cx.a, cx.s), Ok(cx));
        }

        #[test]
        fn unit_decomposition(n in 1u64..1_000_000, pi in 0usize..6) {
            let p = Prime::new([2u64, 3, 5, 7, 11, 97][pi]).unwrap();
            let (v, u) = p.split(n).unwrap();
            prop_assert_eq!(p.pow(v).unwrap() * u, n);
            prop_assert_eq!(u.gcd(&p.get()), 1);
        }

        #[test]
        fn legendre_is_multiplicative(a in 1i64..10_000, b in 1i64..10_000, pi in 0usize..6) {
            let p = Prime::new([2u64, 3, 5, 7, 11, 97][pi]).unwrap();
            let (a, b) = if p.get() == 2 { (2 * a - 1, 2 * b - 1) } else { (a, b) };
            prop_assume!(a % p.get() as i64 != 0 && b % p.get() as i64 != 0);
            prop_assert_eq!(
                p.legendre(a).unwrap() * p.legendre(b).unwrap(),
                p.legendre(a * b).unwrap()
            );
        }
    }
}
