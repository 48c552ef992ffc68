use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::scalar::{conj, cx_real, cx_to_f64, Cx, Scalar};

/// Complex polynomial in the monomial basis, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial<T: Scalar> {
    coeffs: Vec<Cx<T>>,
}

impl<T: Scalar> ComplexPolynomial<T> {
    pub fn new(mut coeffs: Vec<Cx<T>>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Cx::zero());
        }
        ComplexPolynomial { coeffs }
    }

    pub fn from_real(coeffs: Vec<T>) -> Self {
        Self::new(coeffs.into_iter().map(cx_real).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn one() -> Self {
        Self::constant(cx_real(T::one()))
    }

    pub fn constant(c: Cx<T>) -> Self {
        Self::new(vec![c])
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Cx::zero(); n + 1];
        c[n] = cx_real(T::one());
        Self::new(c)
    }

    /// `z - root`.
    pub fn linear(root: Cx<T>) -> Self {
        Self::new(vec![-root, cx_real(T::one())])
    }

    pub fn coeffs(&self) -> &[Cx<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cx<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(Cx::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> Cx<T> {
        self.coeffs[self.degree()].clone()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == cx_real(T::one())
    }

    pub fn eval(&self, z: &Cx<T>) -> Cx<T> {
        self.coeffs.iter().rev().fold(Cx::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn scale(&self, s: &Cx<T>) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * cx_real(T::from_i64(k as i64))).collect(),
        )
    }

    /// Reversed, conjugated coefficients relative to degree `n`: `z^n conj(p(1/conj z))`.
    ///
    /// Panics if `n` is below the degree.
    pub fn star(&self, n: usize) -> Self {
        assert!(n >= self.degree(), "star degree {n} below polynomial degree {}", self.degree());
        Self::new((0..=n).map(|k| conj(&self.coeff(n - k))).collect())
    }

    /// Divides by `z`, returning the quotient and the discarded constant term.
    pub fn div_z(&self) -> (Self, Cx<T>) {
        let rem = self.coeffs[0].clone();
        if self.coeffs.len() == 1 {
            return (Self::zero(), rem);
        }
        (Self::new(self.coeffs[1..].to_vec()), rem)
    }

    /// Multiplies by `z`.
    pub fn shift(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(Cx::zero());
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn to_f64(&self) -> ComplexPolynomial<f64> {
        ComplexPolynomial::new(self.coeffs.iter().map(cx_to_f64).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&Cx<T>) -> Cx<U>) -> ComplexPolynomial<U> {
        ComplexPolynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficients as `[re, im]` string pairs, lowest degree first.
    pub fn to_string_pairs(&self) -> Vec<[String; 2]> {
        self.coeffs.iter().map(|c| [c.re.to_string(), c.im.to_string()]).collect()
    }
}

impl ComplexPolynomial<f64> {
    pub fn eval_c64(&self, z: Complex<f64>) -> Complex<f64> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, c| acc * z + c)
    }
}

impl<T: Scalar> Add for &ComplexPolynomial<T> {
    type Output = ComplexPolynomial<T>;
    fn add(self, rhs: Self) -> ComplexPolynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &ComplexPolynomial<T> {
    type Output = ComplexPolynomial<T>;
    fn sub(self, rhs: Self) -> ComplexPolynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &ComplexPolynomial<T> {
    type Output = ComplexPolynomial<T>;
    fn mul(self, rhs: Self) -> ComplexPolynomial<T> {
        let mut out = vec![Cx::<T>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        ComplexPolynomial::new(out)
    }
}

impl<T: Scalar> fmt::Display for ComplexPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            let (neg, body) = if c.im.is_zero() {
                let neg = c.re < T::zero();
                let mag = if neg { -c.re.clone() } else { c.re.clone() };
                let text = if k > 0 && mag == T::one() { String::new() } else { mag.to_string() };
                (neg, text)
            } else {
                (false, format!("({} + {}i)", c.re, c.im))
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let sep = if body.is_empty() || k == 0 { "" } else { " " };
            write!(f, "{body}{sep}")?;
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> Serialize for ComplexPolynomial<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string_pairs().serialize(s)
    }
}
