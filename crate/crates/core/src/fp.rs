//! Prime fields `F_p`.
//!
//! Residues are stored as `u32` in `[0, p)`. All arithmetic goes through a
//! [`Prime`], which is cheap to copy and carries no other state.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Self, Error> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::NotPrime(p));
        }
        // keeps every product of two residues inside u64 and every residue inside u32
        if p > 65_521 {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
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

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.0 != 0, "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 - 2)
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(self, odd: bool) -> u32 {
        if odd {
            self.neg(1)
        } else {
            1 % self.0
        }
    }

    /// Binomial coefficient `C(n, k)` reduced mod p, via Lucas' theorem.
    pub fn binomial(self, mut n: u64, mut k: u64) -> u32 {
        if k > n {
            return 0;
        }
        let p = self.0 as u64;
        let mut acc = 1u32;
        while n > 0 || k > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, small_binomial(self, nd as u32, kd as u32));
            n /= p;
            k /= p;
        }
        acc
    }
}

fn small_binomial(p: Prime, n: u32, k: u32) -> u32 {
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = p.mul(num, p.reduce((n - i) as i64));
        den = p.mul(den, p.reduce((i + 1) as i64));
    }
    p.mul(num, p.inv(den))
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = u32::deserialize(d)?;
        Prime::new(p).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self, Error> {
        Prime::new(p)
    }
}

/// A single element of `F_p` together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    prime: Prime,
}

impl FpScalar {
    pub fn new(value: i64, prime: Prime) -> Self {
        FpScalar { value: prime.reduce(value), prime }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar { value: self.prime.inv(self.value), prime: self.prime })
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, rhs.prime);
        FpScalar { value: self.prime.add(self.value, rhs.value), prime: self.prime }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, rhs.prime);
        FpScalar { value: self.prime.sub(self.value, rhs.value), prime: self.prime }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, rhs.prime);
        FpScalar { value: self.prime.mul(self.value, rhs.value), prime: self.prime }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar { value: self.prime.neg(self.value), prime: self.prime }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
