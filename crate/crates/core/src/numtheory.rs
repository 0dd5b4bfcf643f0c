// SPDX-License-Identifier: Apache-2.0

//! Small-integer number theory used to precompute circuit constants and to
//! serve as the classical reference for the arithmetic circuits.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut result = 1u128;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Multiplicative inverse by the extended Euclidean algorithm.
pub fn mod_inverse(value: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::InvalidParams("modulus must be positive".into()));
    }
    let a = (value % modulus) as i128;
    let m = modulus as i128;
    let egcd = a.extended_gcd(&m);
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible { value, modulus });
    }
    Ok(egcd.x.rem_euclid(m) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(k)` when `n == 2^k - 1` with `k >= 2`.
pub fn mersenne_exponent(n: u64) -> Option<u32> {
    let k = (n + 1).trailing_zeros();
    (n >= 3 && (n + 1).is_power_of_two()).then_some(k)
}

/// Order of `g` in the multiplicative group mod `p`, or `None` if `g` is
/// not a unit.
pub fn multiplicative_order(g: u64, p: u64) -> Option<u64> {
    if p < 2 || gcd(g % p, p) != 1 {
        return None;
    }
    let mut acc = g % p;
    let mut k = 1;
    while acc != 1 {
        acc = (acc as u128 * g as u128 % p as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Smallest bit width holding every value below `n` (at least 1).
pub fn bits_for(n: u64) -> usize {
    if n <= 2 {
        1
    } else {
        (64 - (n - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(1, 7).unwrap(), 1);
        assert_eq!(mod_inverse(2, 7).unwrap(), 4);
        assert!(matches!(
            mod_inverse(2, 6),
            Err(Error::NotInvertible { value: 2, modulus: 6 })
        ));
        for a in 1..31 {
            assert_eq!(a * mod_inverse(a, 31).unwrap() % 31, 1);
        }
    }

    #[test]
    fn powers() {
        assert_eq!(mod_pow(3, 4, 7), 4);
        assert_eq!(mod_pow(3, 0, 7), 1);
        assert_eq!(mod_pow(3, 5, 7), 5);
        assert_eq!(mod_pow(5, 4, 7), 2);
        assert_eq!(mod_pow(4, 5, 7), 2);
    }

    #[test]
    fn mersenne_and_primes() {
        assert_eq!(mersenne_exponent(7), Some(3));
        assert_eq!(mersenne_exponent(31), Some(5));
        assert_eq!(mersenne_exponent(6), None);
        assert_eq!(mersenne_exponent(1), None);
        assert!(is_prime(7) && is_prime(31) && !is_prime(15));
        assert_eq!(multiplicative_order(3, 7), Some(6));
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 31), Some(30));
    }

    #[test]
    fn widths() {
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(2), 1);
        assert_eq!(bits_for(3), 2);
        assert_eq!(bits_for(4), 2);
        assert_eq!(bits_for(5), 3);
        assert_eq!(bits_for(7), 3);
        assert_eq!(bits_for(8), 3);
        assert_eq!(bits_for(9), 4);
    }
}
