//! Arithmetic in prime fields GF(p) for odd primes p < 2^32.
//!
//! Values are stored as canonical residues in `[0, p)`. Hot loops elsewhere in
//! the crate work on raw `u32` residues through the [`PrimeField`] methods;
//! [`FieldElement`] is the self-describing value type used at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// The prime used by default for experiments.
pub const DEFAULT_PRIME: u32 = 65521;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is not an odd prime below 2^32")]
    InvalidModulus(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("elements from different fields: GF({0}) and GF({1})")]
    FieldMismatch(u32, u32),
}

/// A prime field GF(p) with `3 <= p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, GfError> {
        if p < 3 || p > u32::MAX as u64 || !is_prime_u32(p as u32) {
            return Err(GfError::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn elem(self, v: u64) -> FieldElement {
        FieldElement {
            value: (v % self.p as u64) as u32,
            p: self.p,
        }
    }

    /// Reduces a signed integer into the field.
    pub fn from_i64(self, v: i64) -> FieldElement {
        FieldElement {
            value: self.reduce_i64(v),
            p: self.p,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32, GfError> {
        let a = a % self.p;
        if a == 0 {
            return Err(GfError::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i64(t0))
    }

    /// Legendre symbol style test: true for 0 and for nonzero squares.
    pub fn is_square(self, a: u32) -> bool {
        let a = a % self.p;
        a == 0 || self.pow(a, ((self.p - 1) / 2) as u64) == 1
    }

    /// Square roots `(r, p - r)` with `r <= p - r`, or `None` for a non-residue.
    /// For `a = 0` both roots are 0.
    pub fn sqrt(self, a: u32) -> Option<(u32, u32)> {
        let a = a % self.p;
        if a == 0 {
            return Some((0, 0));
        }
        if !self.is_square(a) {
            return None;
        }
        let r = self.tonelli_shanks(a);
        let s = self.neg(r);
        Some((r.min(s), r.max(s)))
    }

    fn tonelli_shanks(self, a: u32) -> u32 {
        let p = self.p;
        if p % 4 == 3 {
            return self.pow(a, ((p as u64) + 1) / 4);
        }
        // p - 1 = q * 2^s with q odd
        let mut q = (p - 1) as u64;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u32;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// Largest `k` such that `k` terms of size `< p^2` can be added to a value
    /// `< p` without overflowing a `u64`.
    pub(crate) fn lazy_budget(self) -> u64 {
        let p = self.p as u64;
        let sq = (p - 1) * (p - 1);
        ((u64::MAX - p) / sq).max(1)
    }
}

/// Deterministic Miller-Rabin for 32-bit integers.
pub fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let n64 = n as u64;
    let mut d = n64 - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| a * b % n64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 7, 61] {
        if a % n64 == 0 {
            continue;
        }
        let mut x = powmod(a, d);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element of GF(p), always stored in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<FieldElement, GfError> {
        let v = self.field().inv(self.value)?;
        Ok(FieldElement { value: v, p: self.p })
    }

    pub fn pow(self, e: u64) -> FieldElement {
        FieldElement {
            value: self.field().pow(self.value, e),
            p: self.p,
        }
    }

    pub fn sqrt(self) -> Option<(FieldElement, FieldElement)> {
        self.field().sqrt(self.value).map(|(r, s)| {
            (
                FieldElement { value: r, p: self.p },
                FieldElement { value: s, p: self.p },
            )
        })
    }

    pub fn checked_add(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_mul(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }

    fn same_field(self, rhs: FieldElement) -> Result<(), GfError> {
        if self.p == rhs.p {
            Ok(())
        } else {
            Err(GfError::FieldMismatch(self.p, rhs.p))
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.p, rhs.p);
        FieldElement {
            value: self.field().add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.p, rhs.p);
        FieldElement {
            value: self.field().sub(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.p, rhs.p);
        FieldElement {
            value: self.field().mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }
}
