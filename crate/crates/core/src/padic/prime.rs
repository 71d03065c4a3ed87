use serde::{Deserialize, Serialize};

use super::{mul_mod, pow_mod};
use crate::{Error, Result};

// Deterministic for every 64-bit input.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin test, exact on all of `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p ≤ bound` in ascending order.
pub fn primes_up_to(bound: u64) -> Vec<Prime> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(Prime(i as u64));
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// A rational prime, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `(ν_p(n), n / p^{ν_p(n)})`.
    #[inline]
    pub fn split(self, mut n: u64) -> Result<(u32, u64)> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let mut v = 0;
        while n.is_multiple_of(self.0) {
            n /= self.0;
            v += 1;
        }
        Ok((v, n))
    }

    pub fn valuation(self, n: u64) -> Result<u32> {
        self.split(n).map(|(v, _)| v)
    }

    pub fn unit_part(self, n: u64) -> Result<u64> {
        self.split(n).map(|(_, u)| u)
    }

    /// `p^e`, or an overflow error.
    pub fn pow(self, e: u32) -> Result<u64> {
        self.0
            .checked_pow(e)
            .ok_or_else(|| Error::Overflow(format!("{}^{}", self.0, e)))
    }

    /// Legendre symbol for odd `p`; the mod-4 character on odd `a` for `p = 2`.
    pub fn legendre(self, a: i64) -> Result<i8> {
        let p = self.0;
        if p == 2 {
            return match a.rem_euclid(4) {
                1 => Ok(1),
                3 => Ok(-1),
                _ => Err(Error::EvenAtTwo(a)),
            };
        }
        let r = (a as i128).rem_euclid(p as i128) as u64;
        if r == 0 {
            return Ok(0);
        }
        // Euler's criterion
        Ok(if pow_mod(r, (p - 1) / 2, p) == 1 {
            1
        } else {
            -1
        })
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `p^e` with `e ≥ 1`, the modulus precomputed and overflow-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: Prime,
    e: u32,
    modulus: u64,
}

impl PrimePower {
    pub fn new(p: Prime, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::invalid("exponent", "must be at least 1"));
        }
        Ok(PrimePower {
            p,
            e,
            modulus: p.pow(e)?,
        })
    }

    /// Smallest `e ≥ 1` with `p^e ≥ floor`.
    pub fn at_least(p: Prime, floor: u64) -> Result<Self> {
        let mut e = 1;
        while p.pow(e)? < floor {
            e += 1;
        }
        PrimePower::new(p, e)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// `ν_p(n)`.
pub fn v_p(n: u64, p: u64) -> Result<u32> {
    Prime::new(p)?.valuation(n)
}

/// `n / p^{ν_p(n)}`.
pub fn unit_part(n: u64, p: u64) -> Result<u64> {
    Prime::new(p)?.unit_part(n)
}

/// Legendre symbol `(a/p)` for odd `p`; for `p = 2`, `+1` when `a ≡ 1 (mod 4)`
/// and `-1` when `a ≡ 3 (mod 4)`. Even `a` at `p = 2` is rejected.
pub fn legendre_ext(a: i64, p: u64) -> Result<i8> {
    Prime::new(p)?.legendre(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division(n), "n={n}");
        }
    }

    #[test]
    fn primality_large_known_values() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(18_446_744_073_709_551_615));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn sieve_matches_primality() {
        let sieved: Vec<u64> = primes_up_to(500).into_iter().map(Prime::get).collect();
        let direct: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, direct);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(50).len(), 15);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(v_p(12, 2), Ok(2));
        assert_eq!(v_p(1, 5), Ok(0));
        assert_eq!(v_p(54, 3), Ok(3));
    }

    #[test]
    fn unit_part_examples() {
        assert_eq!(unit_part(12, 2), Ok(3));
        assert_eq!(unit_part(7, 3), Ok(7));
        assert_eq!(unit_part(40, 2), Ok(5));
    }

    #[test]
    fn valuation_rejects_zero_and_composites() {
        assert_eq!(v_p(0, 2), Err(Error::ZeroArgument));
        assert_eq!(unit_part(0, 3), Err(Error::ZeroArgument));
        assert_eq!(v_p(12, 4), Err(Error::NotPrime(4)));
        assert_eq!(v_p(12, 1), Err(Error::NotPrime(1)));
    }

    fn legendre_by_squares(a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as u64;
        if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_ext(2, 7), Ok(1));
        assert_eq!(legendre_ext(3, 2), Ok(-1));
        assert_eq!(legendre_ext(5, 2), Ok(1));
        assert_eq!(legendre_ext(-1, 2), Ok(-1));
        for p in [3, 5, 7, 11, 13, 101, 1_000_000_007] {
            assert_eq!(legendre_ext(1, p), Ok(1));
        }
        assert_eq!(legendre_ext(14, 7), Ok(0));
        assert_eq!(legendre_ext(4, 2), Err(Error::EvenAtTwo(4)));
    }

    #[test]
    fn legendre_matches_enumerated_squares() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in -300i64..300 {
                assert_eq!(
                    p.legendre(a).unwrap(),
                    legendre_by_squares(a, p.get()),
                    "a={a} p={p}"
                );
            }
        }
    }

    #[test]
    fn prime_power_minimal_exponent() {
        let two = Prime::new(2).unwrap();
        let pp = PrimePower::at_least(two, 3).unwrap();
        assert_eq!((pp.exponent(), pp.modulus()), (2, 4));
        let pp = PrimePower::at_least(Prime::new(5).unwrap(), 2).unwrap();
        assert_eq!((pp.exponent(), pp.modulus()), (1, 5));
        assert!(matches!(PrimePower::new(two, 64), Err(Error::Overflow(_))));
        assert!(PrimePower::new(two, 0).is_err());
    }

    #[test]
    fn prime_serde_checks_primality() {
        let p: Prime = serde_json::from_str("7").unwrap();
        assert_eq!(p.get(), 7);
        assert!(serde_json::from_str::<Prime>("9").is_err());
    }
}
