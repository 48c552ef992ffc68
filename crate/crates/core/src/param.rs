//! Exact parameter values: rationals and rational multiples of square roots.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{ratio_to_f64, Scalar};

/// `coef * sqrt(radicand)`, with `radicand == 1` for plain rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub coef: BigRational,
    pub radicand: BigRational,
}

impl Param {
    pub fn rational(r: BigRational) -> Self {
        Param { coef: r, radicand: BigRational::one() }
    }

    pub fn int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn sqrt_of(r: BigRational) -> Self {
        Param { coef: BigRational::one(), radicand: r }.normalized()
    }

    fn normalized(self) -> Self {
        if let Some(root) = Scalar::sqrt(&self.radicand) {
            Param::rational(self.coef * root)
        } else {
            self
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.radicand.is_one() || self.coef.is_zero() {
            Some(&self.coef)
        } else {
            None
        }
    }

    pub fn is_exact(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.coef) * ratio_to_f64(&self.radicand).sqrt()
    }

    pub fn to_scalar<T: Scalar>(&self, prec: u32) -> Result<T> {
        let c = T::from_rational(&self.coef, prec);
        if let Some(r) = self.as_rational() {
            return Ok(T::from_rational(r, prec));
        }
        let root = T::from_rational(&self.radicand, prec)
            .sqrt()
            .ok_or_else(|| Error::NotExact(format!("sqrt({})", self.radicand)))?;
        Ok(c * root)
    }

    pub fn is_positive(&self) -> bool {
        self.coef.is_positive()
    }

    /// Exact square, always rational.
    pub fn square(&self) -> BigRational {
        &self.coef * &self.coef * &self.radicand
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(num * ten.pow(scale as u32))
    } else {
        BigRational::new(num, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

impl FromStr for Param {
    type Err = Error;

    /// Accepts `p/q`, decimals (`1.25`, `2e-3`), `sqrt(r)` and `c*sqrt(r)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(pos) = s.find("sqrt(") {
            let inner =
                s[pos + 5..].strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced sqrt in {s:?}")))?;
            let radicand = parse_rational(inner)?;
            if radicand.is_negative() {
                return Err(Error::Parse(format!("negative radicand in {s:?}")));
            }
            let prefix = s[..pos].trim();
            let coef = match prefix {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                p => parse_rational(p.strip_suffix('*').unwrap_or(p))?,
            };
            return Ok(Param { coef, radicand }.normalized());
        }
        Ok(Param::rational(parse_rational(s)?))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None if self.coef.is_one() => write!(f, "sqrt({})", self.radicand),
            None => write!(f, "{}*sqrt({})", self.coef, self.radicand),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
            F(f64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(Param::int(i)),
            // floats are taken at their shortest decimal representation
            Raw::F(x) => x.to_string().parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!("1/4".parse::<Param>().unwrap(), Param::ratio(1, 4));
        assert_eq!("1.408".parse::<Param>().unwrap(), Param::ratio(1408, 1000));
        assert_eq!("-2.5e-1".parse::<Param>().unwrap(), Param::ratio(-1, 4));
        assert_eq!("3".parse::<Param>().unwrap(), Param::int(3));
        assert!("abc".parse::<Param>().is_err());
        assert!("1/0".parse::<Param>().is_err());
    }

    #[test]
    fn parses_roots() {
        let p: Param = "sqrt(2)".parse().unwrap();
        assert!(!p.is_exact());
        assert_eq!(p.square(), rat(2, 1));
        let q: Param = "sqrt(9/4)".parse().unwrap();
        assert_eq!(q, Param::ratio(3, 2));
        let r: Param = "-1/3*sqrt(2)".parse().unwrap();
        assert!((r.to_f64() + 2f64.sqrt() / 3.0).abs() < 1e-15);
        assert_eq!(r.to_string(), "-1/3*sqrt(2)");
    }

    #[test]
    fn irrational_to_exact_scalar_fails() {
        let p: Param = "sqrt(2)".parse().unwrap();
        assert!(p.to_scalar::<BigRational>(0).is_err());
        assert!((p.to_scalar::<f64>(53).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }
}
