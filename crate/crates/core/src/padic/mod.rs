//! Exact arithmetic primitives.
//!
//! Everything is `u64`/`i64` at the boundary with `u128`/`i128` intermediates;
//! overflow surfaces as [`Error::Overflow`](crate::Error::Overflow) instead of
//! wrapping.

mod cell;
mod prime;
mod rational;
mod residue;

pub use cell::{cell_of, totient_prime_power, units_mod, QpCell};
pub use prime::{is_prime, legendre_ext, primes_up_to, unit_part, v_p, Prime, PrimePower};
pub use rational::PositiveRational;
pub use residue::ResidueClass;

use num_integer::Integer;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let eg = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if eg.gcd != 1 {
        return None;
    }
    Some(eg.x.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_small_moduli() {
        for m in 2u64..60 {
            for a in 0..m {
                let brute = (0..m).find(|&x| (a * x) % m == 1);
                assert_eq!(inverse_mod(a, m), brute, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        for m in 1u64..40 {
            for b in 0..m {
                let mut acc = 1 % m;
                for e in 0..12u64 {
                    assert_eq!(pow_mod(b, e, m), acc);
                    acc = acc * b % m;
                }
            }
        }
        assert_eq!(pow_mod(u64::MAX - 1, 3, u64::MAX), u64::MAX - 1);
    }
}
