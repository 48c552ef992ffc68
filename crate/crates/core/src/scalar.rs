//! Real scalar fields used by the generic pipelines.
//!
//! Three fields implement [`Scalar`]: exact rationals ([`BigRational`]),
//! multiprecision floats ([`MpFloat`]) and `f64`. Complex values are
//! `num_complex::Complex<T>` over any of them.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::mpfloat::MpFloat;

pub type Cx<T> = Complex<T>;

pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    /// Rounds `r` to this field at `prec` bits (ignored by exact and fixed-width fields).
    fn from_rational(r: &BigRational, prec: u32) -> Self;

    /// Exact for every field except `f64` beyond 2^53.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    fn to_f64(&self) -> f64;

    /// Working precision in bits; `None` for exact arithmetic.
    fn precision(&self) -> Option<u32>;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `None` when the root is not representable (irrational root of a rational) or the input is negative.
    fn sqrt(&self) -> Option<Self>;

    /// `None` for exact fields.
    fn pi(prec: u32) -> Option<Self>;

    /// `(sin, cos)`; `None` for exact fields.
    fn sin_cos(&self) -> Option<(Self, Self)>;

    /// Marks the value as carrying `prec` bits so later arithmetic rounds there; identity for other fields.
    fn at_precision(&self, _prec: u32) -> Self {
        self.clone()
    }

    /// `2^-bits` at the given precision, used for tolerances.
    fn eps(bits: u32, prec: u32) -> Self {
        let den = BigInt::one() << bits as usize;
        Self::from_rational(&BigRational::new(BigInt::one(), den), prec)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational, _prec: u32) -> Self {
        r.clone()
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn precision(&self) -> Option<u32> {
        None
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    fn pi(_prec: u32) -> Option<Self> {
        None
    }

    fn sin_cos(&self) -> Option<(Self, Self)> {
        if self.is_zero() {
            Some((Self::zero(), Self::one()))
        } else {
            None
        }
    }
}

impl Scalar for MpFloat {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational, prec: u32) -> Self {
        MpFloat::from_ratio(r.numer(), r.denom(), prec)
    }

    fn from_bigint(n: &BigInt) -> Self {
        MpFloat::from_bigint(n)
    }

    fn to_f64(&self) -> f64 {
        MpFloat::to_f64(self)
    }

    fn precision(&self) -> Option<u32> {
        Some(MpFloat::precision(self))
    }

    fn abs(&self) -> Self {
        MpFloat::abs(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if *self < Self::zero() {
            None
        } else {
            Some(MpFloat::sqrt(self))
        }
    }

    fn pi(prec: u32) -> Option<Self> {
        Some(MpFloat::pi(prec))
    }

    fn sin_cos(&self) -> Option<(Self, Self)> {
        Some((self.sin(), self.cos()))
    }

    fn eps(bits: u32, prec: u32) -> Self {
        MpFloat::pow2(-(bits as i32), prec)
    }

    fn at_precision(&self, prec: u32) -> Self {
        if prec > self.precision() {
            self.with_precision(prec)
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational, _prec: u32) -> Self {
        ratio_to_f64(r)
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn precision(&self) -> Option<u32> {
        Some(53)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }

    fn pi(_prec: u32) -> Option<Self> {
        Some(std::f64::consts::PI)
    }

    fn sin_cos(&self) -> Option<(Self, Self)> {
        Some(f64::sin_cos(*self))
    }

    fn eps(bits: u32, _prec: u32) -> Self {
        2f64.powi(-(bits as i32))
    }
}

/// Rounds a rational to the nearest `f64`, without overflow for huge numerators and denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    // scale so that the integer quotient carries ~64 significant bits
    let shift = 64 - (nb - db);
    let q = if shift >= 0 {
        (r.numer() << shift as usize) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as usize)
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(shift as i32))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn cx<T: Scalar>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

pub fn cx_real<T: Scalar>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

pub fn cx_to_f64<T: Scalar>(z: &Cx<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// `i^k` for integer `k`, reduced mod 4 without touching floating point.
pub fn i_pow<T: Scalar>(k: i64) -> Cx<T> {
    match k.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

pub fn norm_sqr<T: Scalar>(z: &Cx<T>) -> T {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

pub fn conj<T: Scalar>(z: &Cx<T>) -> Cx<T> {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// Integer power by repeated squaring; negative exponents invert.
pub fn powi<T: Scalar>(x: &T, e: i64) -> T {
    let mut base = if e < 0 { T::one() / x.clone() } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = T::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        n >>= 1;
    }
    acc
}

pub fn cpowi<T: Scalar>(z: &Cx<T>, e: u32) -> Cx<T> {
    let mut acc = cx_real(T::one());
    for _ in 0..e {
        acc = acc * z.clone();
    }
    acc
}
