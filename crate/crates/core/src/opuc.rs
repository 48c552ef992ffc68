//! Orthogonal polynomials on the unit circle: Szegő recursion, its inverse, second-kind
//! polynomials and the Herglotz function of `|p(e^{iθ})|^{-2} dθ/2π`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;
use crate::scalar::{conj, cx_real, norm_sqr, Cx, Scalar};

/// Verblunsky coefficients `α_0, …, α_{n-1}`, each of modulus below 1.
#[derive(Clone, Debug, PartialEq)]
pub struct VerblunskySequence<T: Scalar>(Vec<Cx<T>>);

impl<T: Scalar> VerblunskySequence<T> {
    pub fn new(alphas: Vec<Cx<T>>) -> Result<Self> {
        if let Some(index) = alphas.iter().position(|a| norm_sqr(a) >= T::one()) {
            return Err(Error::InvalidCoefficient { index });
        }
        Ok(VerblunskySequence(alphas))
    }

    pub fn as_slice(&self) -> &[Cx<T>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        VerblunskySequence(self.0.iter().map(|a| -a.clone()).collect())
    }
}

/// `z^n conj(p(1/z̄))`; fails when `n` is below the degree.
pub fn star<T: Scalar>(p: &ComplexPolynomial<T>, n: usize) -> Result<ComplexPolynomial<T>> {
    if n < p.degree() {
        return Err(Error::Precondition(format!("star degree {n} below polynomial degree {}", p.degree())));
    }
    Ok(p.star(n))
}

/// `Φ_0, …, Φ_n` from `Φ_{k+1} = zΦ_k - ᾱ_k Φ_k^*`.
pub fn szego_forward_all<T: Scalar>(alphas: &VerblunskySequence<T>) -> Vec<ComplexPolynomial<T>> {
    let mut out = vec![ComplexPolynomial::one()];
    for (k, a) in alphas.as_slice().iter().enumerate() {
        let phi = &out[k];
        let next = &phi.shift() - &phi.star(k).scale(&conj(a));
        out.push(next);
    }
    out
}

pub fn szego_forward<T: Scalar>(alphas: &VerblunskySequence<T>) -> ComplexPolynomial<T> {
    szego_forward_all(alphas).pop().expect("Φ_0 is always present")
}

/// Second-kind polynomial `Ψ_n`: the forward recursion on `-α`.
pub fn second_kind<T: Scalar>(alphas: &VerblunskySequence<T>) -> ComplexPolynomial<T> {
    szego_forward(&alphas.negated())
}

fn remainder_tolerance<T: Scalar>(p: &ComplexPolynomial<T>) -> T {
    if T::EXACT {
        return T::zero();
    }
    let prec = p.coeff(0).re.precision().unwrap_or(53);
    let scale = p.coeffs().iter().map(norm_sqr).fold(T::zero(), |m, v| if v > m { v } else { m });
    T::eps(prec / 2, prec) * (T::one() + scale.sqrt().unwrap_or_else(T::one))
}

/// Recovers `α` and `Φ_0, …, Φ_{n-1}` from a monic `Φ_n` by
/// `Φ_k = (Φ_{k+1} + ᾱ_k Φ_{k+1}^*) / (z(1-|α_k|²))`, `α_k = -conj(Φ_{k+1}(0))`.
pub fn szego_inverse<T: Scalar>(
    phi_n: &ComplexPolynomial<T>,
) -> Result<(VerblunskySequence<T>, Vec<ComplexPolynomial<T>>)> {
    if !phi_n.is_monic() {
        return Err(Error::Precondition("polynomial is not monic".into()));
    }
    let n = phi_n.degree();
    let mut alphas = vec![Cx::<T>::zero(); n];
    let mut phis = vec![ComplexPolynomial::zero(); n];
    let mut cur = phi_n.clone();
    for k in (0..n).rev() {
        let alpha = -conj(&cur.coeff(0));
        let m = norm_sqr(&alpha);
        if m >= T::one() {
            return Err(Error::NotOpuc { step: k });
        }
        let numer = &cur + &cur.star(k + 1).scale(&conj(&alpha));
        let (q, rem) = numer.div_z();
        if norm_sqr(&rem) > remainder_tolerance(&numer) {
            return Err(Error::Inconsistent(format!("nonzero remainder dividing by z at step {k}")));
        }
        let prev = q.scale(&cx_real(T::one() / (T::one() - m)));
        alphas[k] = alpha;
        phis[k] = prev.clone();
        cur = prev;
    }
    Ok((VerblunskySequence(alphas), phis))
}

/// `F = Ψ_n^* / Φ_n^*` with the denominator made monic.
#[derive(Clone, Debug, PartialEq)]
pub struct HerglotzRational<T: Scalar> {
    pub numerator: ComplexPolynomial<T>,
    pub denominator: ComplexPolynomial<T>,
    pub alphas: VerblunskySequence<T>,
    pub phi_n: ComplexPolynomial<T>,
    pub psi_n: ComplexPolynomial<T>,
    /// `∫ |p|^{-2} dθ/2π` from the Verblunsky product.
    pub mass: T,
}

impl<T: Scalar> HerglotzRational<T> {
    pub fn eval(&self, z: &Cx<T>) -> Cx<T> {
        self.numerator.eval(z) / self.denominator.eval(z)
    }

    /// Taylor coefficients `f_0..f_{m}` by series division.
    pub fn taylor(&self, m: usize) -> Vec<Cx<T>> {
        let d0 = self.denominator.coeff(0);
        let mut out: Vec<Cx<T>> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = self.numerator.coeff(k);
            for l in 1..=k.min(self.denominator.degree()) {
                acc = acc - self.denominator.coeff(l) * out[k - l].clone();
            }
            out.push(acc / d0.clone());
        }
        out
    }

    /// True when `a/b == c/d` as rational functions, by cross multiplication.
    pub fn same_function(&self, num: &ComplexPolynomial<T>, den: &ComplexPolynomial<T>) -> bool {
        &self.numerator * den == num * &self.denominator
    }
}

impl HerglotzRational<f64> {
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let n = self.numerator.eval_c64(z);
        let d = self.denominator.eval_c64(z);
        let dn = self.numerator.derivative().eval_c64(z);
        let dd = self.denominator.derivative().eval_c64(z);
        (n / d, (dn * d - n * dd) / (d * d))
    }
}

/// Herglotz function of `dμ = |p|^{-2} dθ/2π` with `p = √scale_sq · q`.
///
/// The zeros of `q` must lie outside the closed disk (detected exactly by the inverse
/// recursion), and the measure must have unit mass. The mass is
/// `1/(scale_sq |q(0)|² Π(1-|α_k|²))`.
pub fn herglotz_from_reciprocal_poly<T: Scalar>(q: &ComplexPolynomial<T>, scale_sq: &T) -> Result<HerglotzRational<T>> {
    let n = q.degree();
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return Err(Error::InvalidMap("p(0) = 0".into()));
    }
    if *scale_sq <= T::zero() {
        return Err(Error::InvalidMap("scale_sq must be positive".into()));
    }
    let kappa = conj(&q0);
    let phi_n = q.star(n).scale(&(cx_real(T::one()) / kappa));
    let (alphas, _) = szego_inverse(&phi_n).map_err(|e| match e {
        Error::NotOpuc { .. } => Error::InvalidMap("p has a zero in the closed unit disk".into()),
        other => other,
    })?;
    let prod = alphas.as_slice().iter().fold(T::one(), |acc, a| acc * (T::one() - norm_sqr(a)));
    let mass = T::one() / (scale_sq.clone() * norm_sqr(&q0) * prod);
    let ok = if T::EXACT {
        mass == T::one()
    } else {
        (mass.clone() - T::one()).abs() <= T::eps(30, mass.precision().unwrap_or(53))
    };
    if !ok {
        return Err(Error::Normalization { measured: mass.to_f64() });
    }
    let psi_n = second_kind(&alphas);
    let den = phi_n.star(n);
    let lead = cx_real(T::one()) / den.leading();
    Ok(HerglotzRational {
        numerator: psi_n.star(n).scale(&lead),
        denominator: den.scale(&lead),
        alphas,
        phi_n,
        psi_n,
        mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type P = ComplexPolynomial<BigRational>;

    fn real(cs: &[(i64, i64)]) -> P {
        P::from_real(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn seq(v: &[(i64, i64)]) -> VerblunskySequence<BigRational> {
        VerblunskySequence::new(v.iter().map(|&(n, d)| cx_real(rat(n, d))).collect()).unwrap()
    }

    fn worked_alphas() -> VerblunskySequence<BigRational> {
        seq(&[(-10, 11), (-4, 7), (-1, 8)])
    }

    #[test]
    fn star_examples() {
        let cube = real(&[(1, 8), (3, 4), (3, 2), (1, 1)]); // (z+1/2)^3
        let expect = real(&[(1, 1), (3, 2), (3, 4), (1, 8)]); // (1+z/2)^3
        assert_eq!(star(&cube, 3).unwrap(), expect);
        assert!(star(&cube, 2).is_err());
    }

    #[test]
    fn forward_examples() {
        assert_eq!(szego_forward(&seq(&[(0, 1), (0, 1), (0, 1)])), P::monomial(3));
        assert_eq!(szego_forward(&worked_alphas()), real(&[(1, 8), (3, 4), (3, 2), (1, 1)]));
        let a0 = crate::scalar::cx(rat(1, 3), rat(-1, 5));
        let one = VerblunskySequence::new(vec![a0.clone()]).unwrap();
        assert_eq!(szego_forward(&one), P::linear(conj(&a0)));
        assert!(matches!(
            VerblunskySequence::new(vec![cx_real(rat(1, 1))]),
            Err(Error::InvalidCoefficient { index: 0 })
        ));
    }

    #[test]
    fn inverse_worked_example() {
        let (alphas, phis) = szego_inverse(&real(&[(1, 8), (3, 4), (3, 2), (1, 1)])).unwrap();
        assert_eq!(alphas, worked_alphas());
        assert_eq!(phis[2], real(&[(4, 7), (10, 7), (1, 1)]));
        assert_eq!(phis[1], real(&[(10, 11), (1, 1)]));
        assert_eq!(phis[0], P::one());
        let (zeros, _) = szego_inverse(&P::monomial(4)).unwrap();
        assert!(zeros.as_slice().iter().all(|a| a.is_zero()));
    }

    #[test]
    fn inverse_rejects_outside_zeros() {
        // z - 2 has its zero outside the disk, so it is not an OPUC polynomial
        assert!(matches!(szego_inverse(&real(&[(-2, 1), (1, 1)])), Err(Error::NotOpuc { step: 0 })));
    }

    #[test]
    fn alpha_recoverable_from_forward_iterates() {
        let a = worked_alphas();
        for (k, phi) in szego_forward_all(&a).iter().enumerate().skip(1) {
            assert_eq!(-conj(&phi.coeff(0)), a.as_slice()[k - 1]);
        }
    }

    #[test]
    fn second_kind_examples() {
        assert_eq!(second_kind(&worked_alphas()), real(&[(-1, 8), (-23, 44), (-7, 22), (1, 1)]));
        assert_eq!(second_kind(&seq(&[(0, 1), (0, 1)])), P::monomial(2));
        let a0 = crate::scalar::cx(rat(1, 3), rat(1, 7));
        assert_eq!(second_kind(&VerblunskySequence::new(vec![a0.clone()]).unwrap()), P::linear(-conj(&a0)));
    }

    #[test]
    fn herglotz_worked_example() {
        let q = real(&[(8, 1), (12, 1), (6, 1), (1, 1)]); // (z+2)^3
        let f = herglotz_from_reciprocal_poly(&q, &rat(11, 81)).unwrap();
        let num = real(&[(24, 1), (-84, 11), (-138, 11), (-3, 1)]);
        let den = real(&[(24, 1), (36, 1), (18, 1), (3, 1)]);
        assert!(f.same_function(&num, &den));
        assert_eq!(f.mass, rat(1, 1));
        assert_eq!(f.eval(&cx_real(rat(0, 1))), cx_real(rat(1, 1)));
        // boundary values: Re F = 1/|p|^2 with p = sqrt(11/81) q
        for z in
            [cx_real(rat(1, 1)), crate::scalar::cx(rat(3, 5), rat(4, 5)), crate::scalar::cx(rat(-5, 13), rat(12, 13))]
        {
            let qz = q.eval(&z);
            let expect = rat(81, 11) / (&qz.re * &qz.re + &qz.im * &qz.im);
            assert_eq!(f.eval(&z).re, expect);
        }
        assert!(matches!(herglotz_from_reciprocal_poly(&q, &rat(1, 9)), Err(Error::Normalization { .. })));
    }

    #[test]
    fn herglotz_trivial_measure() {
        // p = 1 + 0z: Lebesgue measure, F = 1
        let q = P::from_real(vec![rat(1, 1)]);
        let f = herglotz_from_reciprocal_poly(&q, &rat(1, 1)).unwrap();
        assert_eq!(f.eval(&cx_real(rat(1, 3))), cx_real(rat(1, 1)));
    }

    #[test]
    fn herglotz_rejects_inside_zero() {
        let q = real(&[(1, 2), (1, 1)]);
        assert!(matches!(herglotz_from_reciprocal_poly(&q, &rat(1, 1)), Err(Error::InvalidMap(_))));
    }
}
