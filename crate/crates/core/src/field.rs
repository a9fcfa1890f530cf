//! Arithmetic in the prime field `F_p`.
//!
//! Coefficients are residues in `[0, p)` stored as `u64`. The
//! characteristic is restricted to `2 <= p < 2^31`, so a product of two
//! residues fits in 64 bits before reduction.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A validated prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeChar(u64);

impl PrimeChar {
    pub const MAX: u64 = (1 << 31) - 1;

    /// Construct from an integer, running a deterministic primality
    /// check (trial division; exact for the supported range).
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > Self::MAX {
            return Err(Error::precondition(format!(
                "characteristic must satisfy 2 <= p < 2^31, got {p}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::precondition(format!("{p} is not prime")));
        }
        Ok(PrimeChar(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduce an arbitrary signed integer to its residue in `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, n: i64) -> u64 {
        let p = self.0 as i64;
        (n.rem_euclid(p)) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.0 != 0, "inverse of zero");
        self.pow(a, self.0 - 2)
    }
}

impl fmt::Display for PrimeChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for PrimeChar {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeChar::new(p)
    }
}

impl From<PrimeChar> for u64 {
    fn from(p: PrimeChar) -> u64 {
        p.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_primes_rejects_composites() {
        for p in [2u64, 3, 5, 7, 11, 13, 101, 2147483647] {
            assert!(PrimeChar::new(p).is_ok(), "{p} should be prime");
        }
        for n in [0u64, 1, 4, 9, 15, 2147483646] {
            assert!(PrimeChar::new(n).is_err(), "{n} should be rejected");
        }
        // 2^31 itself is out of range even though the check is exact.
        assert!(PrimeChar::new(1 << 31).is_err());
    }

    #[test]
    fn field_ops() {
        let p = PrimeChar::new(7).unwrap();
        assert_eq!(p.add(5, 4), 2);
        assert_eq!(p.sub(2, 5), 4);
        assert_eq!(p.mul(3, 5), 1);
        assert_eq!(p.neg(0), 0);
        assert_eq!(p.neg(3), 4);
        for a in 1..7 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
        assert_eq!(p.reduce_i64(-1), 6);
        assert_eq!(p.reduce_i64(14), 0);
    }

    #[test]
    fn fermat_fixed_points() {
        // c^(p^e) = c for every residue: the Frobenius is the identity
        // on the prime field.
        for p in [2u64, 3, 5, 13] {
            let f = PrimeChar::new(p).unwrap();
            for c in 0..p {
                assert_eq!(f.pow(c, p), c);
            }
        }
    }
}
