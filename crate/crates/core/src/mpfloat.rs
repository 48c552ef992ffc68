//! Multiprecision binary floating point backed by `astro-float`.
//!
//! Every value carries the precision it was created with. Binary operations
//! round to the larger of the two operand precisions, so integer constants
//! (created at 64 bits, exactly) never lower the working precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{Num, One, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
const MIN_PREC: u32 = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct MpFloat {
    value: BigFloat,
    prec: u32,
}

impl MpFloat {
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        MpFloat { value: BigFloat::from_f64(v, prec as usize), prec }
    }

    /// Exact conversion: the precision grows to hold every bit of `n`.
    pub fn from_bigint(n: &BigInt) -> Self {
        let (sign, digits) = n.to_u64_digits();
        if digits.is_empty() {
            return Self::zero_with(MIN_PREC);
        }
        let bits = (digits.len() * 64) as u32;
        let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let value = BigFloat::from_words(&digits, s, bits as i32);
        MpFloat { value, prec: bits.max(MIN_PREC) }
    }

    /// Correctly rounded quotient `num/den` at `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        let n = Self::from_bigint(num);
        let d = Self::from_bigint(den);
        MpFloat { value: n.value.div(&d.value, prec as usize, RM), prec }
    }

    pub fn zero_with(prec: u32) -> Self {
        MpFloat { value: BigFloat::from_word(0, MIN_PREC as usize), prec: prec.max(MIN_PREC) }
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        let mut value = self.value.clone();
        // precision changes on finite values cannot fail for valid sizes
        let _ = value.set_precision(prec as usize, RM);
        MpFloat { value, prec }
    }

    pub fn pi(prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        let value = with_consts(|cc| cc.pi(prec as usize, RM));
        MpFloat { value, prec }
    }

    pub fn sqrt(&self) -> Self {
        MpFloat { value: self.value.sqrt(self.prec as usize, RM), prec: self.prec }
    }

    pub fn sin(&self) -> Self {
        let value = with_consts(|cc| self.value.sin(self.prec as usize, RM, cc));
        MpFloat { value, prec: self.prec }
    }

    pub fn cos(&self) -> Self {
        let value = with_consts(|cc| self.value.cos(self.prec as usize, RM, cc));
        MpFloat { value, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        MpFloat { value: self.value.abs(), prec: self.prec }
    }

    pub fn is_nan(&self) -> bool {
        self.value.is_nan()
    }

    /// `2^exp` at the given precision.
    pub fn pow2(exp: i32, prec: u32) -> Self {
        let mut value = BigFloat::from_word(1, MIN_PREC as usize);
        value.set_exponent(exp + 1);
        MpFloat { value, prec: prec.max(MIN_PREC) }
    }

    pub fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.value.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        match self.value.as_raw_parts() {
            None => f64::NAN,
            Some((words, _, sign, exp, _)) => {
                let Some(&top) = words.last() else { return 0.0 };
                if top == 0 {
                    return 0.0;
                }
                let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
                let mag = (top as f64 + next as f64 / 18446744073709551616.0) * 2f64.powi(exp - 64);
                if sign == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    fn binary(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }
}

impl Add for MpFloat {
    type Output = MpFloat;
    fn add(self, rhs: Self) -> Self {
        let p = self.binary(&rhs);
        MpFloat { value: self.value.add(&rhs.value, p as usize, RM), prec: p }
    }
}

impl Sub for MpFloat {
    type Output = MpFloat;
    fn sub(self, rhs: Self) -> Self {
        let p = self.binary(&rhs);
        MpFloat { value: self.value.sub(&rhs.value, p as usize, RM), prec: p }
    }
}

impl Mul for MpFloat {
    type Output = MpFloat;
    fn mul(self, rhs: Self) -> Self {
        let p = self.binary(&rhs);
        MpFloat { value: self.value.mul(&rhs.value, p as usize, RM), prec: p }
    }
}

impl Div for MpFloat {
    type Output = MpFloat;
    fn div(self, rhs: Self) -> Self {
        let p = self.binary(&rhs);
        MpFloat { value: self.value.div(&rhs.value, p as usize, RM), prec: p }
    }
}

impl Rem for MpFloat {
    type Output = MpFloat;
    fn rem(self, rhs: Self) -> Self {
        let p = self.binary(&rhs);
        MpFloat { value: self.value.rem(&rhs.value), prec: p }
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> Self {
        MpFloat { value: self.value.neg(), prec: self.prec }
    }
}

impl Zero for MpFloat {
    fn zero() -> Self {
        Self::zero_with(MIN_PREC)
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for MpFloat {
    fn one() -> Self {
        MpFloat { value: BigFloat::from_word(1, MIN_PREC as usize), prec: MIN_PREC }
    }
}

impl Num for MpFloat {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        let rdx = match radix {
            2 => Radix::Bin,
            8 => Radix::Oct,
            10 => Radix::Dec,
            16 => Radix::Hex,
            _ => return Err(format!("unsupported radix {radix}")),
        };
        let prec = 256;
        let value = with_consts(|cc| BigFloat::parse(s, rdx, prec, RM, cc));
        if value.is_nan() {
            return Err(format!("cannot parse {s:?}"));
        }
        Ok(MpFloat { value, prec: prec as u32 })
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Debug for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.value, self.prec)
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_rounds_at_requested_precision() {
        let third = MpFloat::from_ratio(&BigInt::from(1), &BigInt::from(3), 256);
        let back = third.clone() * MpFloat::from_bigint(&BigInt::from(3));
        let err = (back - MpFloat::one()).abs();
        assert!(err < MpFloat::pow2(-250, 256));
        assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn integer_constants_do_not_lower_precision() {
        let x = MpFloat::from_ratio(&BigInt::from(2), &BigInt::from(7), 512);
        let y = x + MpFloat::one();
        assert_eq!(y.precision(), 512);
    }

    #[test]
    fn to_f64_handles_sign_and_scale() {
        for v in [1.0, -2.5, 1e-30, -3.25e40, 0.0] {
            assert_eq!(MpFloat::from_f64(v, 128).to_f64(), v);
        }
        let big = MpFloat::from_bigint(&BigInt::from(1u64 << 60));
        assert_eq!(big.to_f64(), (1u64 << 60) as f64);
    }

    #[test]
    fn sqrt_two_squared() {
        let two = MpFloat::from_f64(2.0, 300);
        let r = two.sqrt();
        let err = (r.clone() * r - two).abs();
        assert!(err < MpFloat::pow2(-290, 300));
    }
}
