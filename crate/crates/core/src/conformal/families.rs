//! Built-in conformal families: the dented disk, Neumann's oval, reciprocal-polynomial maps,
//! and the equilateral triangle.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ConformalMap, TaylorSeries};
use crate::error::{Error, Result};
use crate::moments::{moment_table_of_polygon, MomentTable};
use crate::mpfloat::MpFloat;
use crate::opuc::{herglotz_from_reciprocal_poly, HerglotzRational};
use crate::param::Param;
use crate::poly::ComplexPolynomial;
use crate::regions::{realize_polygon, RegionSpec};
use crate::scalar::{cx_real, rat, Scalar};

const VALIDITY_GRID: usize = 4096;

/// Which of the three dented-disk conditions hold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DentedDiskValidity {
    /// `a ≠ 0` and `|b| > 1`.
    pub nonzero_and_outside: bool,
    /// `|b ± √a| > 1`, so `ψ' ≠ 0` in the disk.
    pub critical_points_outside: bool,
    /// `|b + a/(e^{it} - b)| > 1` for all `t`, checked on a grid with a Lipschitz margin.
    pub injective: bool,
}

impl DentedDiskValidity {
    pub fn is_valid(&self) -> bool {
        self.nonzero_and_outside && self.critical_points_outside && self.injective
    }

    pub fn into_result(self) -> Result<()> {
        let mut failed = Vec::new();
        if !self.nonzero_and_outside {
            failed.push("condition (i): a != 0 and |b| > 1");
        }
        if !self.critical_points_outside {
            failed.push("condition (ii): |b ± sqrt(a)| > 1");
        }
        if !self.injective {
            failed.push("condition (iii): |b + a/(e^{it} - b)| > 1 for all t");
        }
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("dented disk fails {}", failed.join("; "))))
        }
    }
}

pub fn dented_disk_validity(a: Complex64, b: Complex64) -> DentedDiskValidity {
    let nonzero_and_outside = a.norm() > 0.0 && b.norm() > 1.0;
    let sa = a.sqrt();
    let critical_points_outside = (b + sa).norm() > 1.0 && (b - sa).norm() > 1.0;
    let injective = if b.norm() <= 1.0 {
        false
    } else {
        // |d/dt (a/(e^{it}-b))| <= |a|/(|b|-1)^2 bounds the drift between grid points
        let lip = a.norm() / (b.norm() - 1.0).powi(2);
        let half_step = PI / VALIDITY_GRID as f64;
        let min = (0..VALIDITY_GRID)
            .map(|k| {
                let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / VALIDITY_GRID as f64);
                (b + a / (e - b)).norm()
            })
            .fold(f64::INFINITY, f64::min);
        min - lip * half_step > 1.0
    };
    DentedDiskValidity { nonzero_and_outside, critical_points_outside, injective }
}

/// `ψ(z) = z + a/(z - b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DentedDisk {
    pub a: Complex64,
    pub b: Complex64,
}

pub fn dented_disk_family(a: Complex64, b: Complex64) -> Result<DentedDisk> {
    dented_disk_validity(a, b).into_result()?;
    Ok(DentedDisk { a, b })
}

impl DentedDisk {
    pub fn taylor(&self, m: usize) -> Result<TaylorSeries> {
        let (a, b) = (self.a, self.b);
        let mut c = Vec::with_capacity(m + 1);
        let mut binv = Complex64::new(1.0, 0.0) / b;
        for k in 0..=m {
            // a/(z-b) = -(a/b) Σ (z/b)^k
            let mut v = -a * binv;
            if k == 1 {
                v += 1.0;
            }
            c.push(v);
            binv /= b;
        }
        TaylorSeries::new(c, b.norm())
    }

    fn g(&self) -> Complex64 {
        let (a, b) = (self.a, self.b);
        a.norm_sqr() / (b.norm_sqr() - 1.0) - a / (b * b)
    }

    fn f1(&self) -> Complex64 {
        let (a, b) = (self.a, self.b);
        a.norm_sqr() / (b * (b.norm_sqr() - 1.0)) - a / (b * b * b) - a.conj() / b.conj()
    }

    /// Closed-form Fourier coefficients of `|ψ|²/2`.
    pub fn h_closed(&self, j: usize) -> Complex64 {
        let (a, b) = (self.a, self.b);
        match j {
            0 => Complex64::new(0.5 * (1.0 - 2.0 * (a / (b * b)).re + a.norm_sqr() / (b.norm_sqr() - 1.0)), 0.0),
            1 => self.f1() * 0.5,
            _ => self.g() / (b.powu(j as u32) * 2.0),
        }
    }

    /// Closed-form torsional rigidity; the `j >= 2` series is summed until a geometric
    /// bound on the remainder falls below `1e-17` relative. Returns `(value, tail)`.
    pub fn rho_closed(&self) -> (f64, f64) {
        let (a, b) = (self.a, self.b);
        let b2 = b * b;
        let bn2 = b.norm_sqr();
        let first = (a / b * (a / b2 - 1.0)).norm_sqr();
        let fpart = self.f1().norm_sqr() + self.g().norm_sqr() * (2.0 - 1.0 / bn2) / (bn2 - 1.0).powi(2);
        let last = 0.5 * (1.0 + a * (3.0 * a / b2 - 2.0) / b2).norm_sqr();
        let term = |j: usize| {
            (j as f64 + 1.0) * a.norm_sqr() / bn2.powi(j as i32 + 1) * (a * (j as f64 + 2.0) / b2 - 2.0).norm_sqr()
        };
        let mut sum = 0.0;
        let mut tail = f64::INFINITY;
        let mut j = 2;
        loop {
            let t = term(j);
            sum += t;
            let q = term(j + 1) / t.max(f64::MIN_POSITIVE);
            if q < 1.0 {
                let rest = term(j + 1) / (1.0 - q);
                // the ratio of consecutive terms decreases toward 1/|b|^2, so this overestimates
                let bound = rest.max(term(j + 1) / (1.0 - 1.0 / bn2).max(1e-300));
                if bound <= 1e-17 * sum.max(1e-300) || j > 100_000 {
                    tail = PI / 4.0 * bound;
                    break;
                }
            }
            j += 1;
            if j > 1_000_000 {
                break;
            }
        }
        let value = PI * (first - fpart) + PI / 4.0 * sum + PI * last;
        (value, tail)
    }

    /// Closed-form `F(w)`.
    pub fn f_closed(&self, w: Complex64) -> Complex64 {
        let u = w / self.b;
        self.h_closed(0) + self.f1() * w + self.g() * u * u / (1.0 - u)
    }

    fn f_closed_prime(&self, w: Complex64) -> Complex64 {
        let u = w / self.b;
        self.f1() + self.g() / self.b * (2.0 * u - u * u) / ((1.0 - u) * (1.0 - u))
    }
}

impl ConformalMap for DentedDisk {
    fn psi(&self, w: Complex64) -> Complex64 {
        w + self.a / (w - self.b)
    }

    fn dpsi(&self, w: Complex64) -> Complex64 {
        1.0 - self.a / ((w - self.b) * (w - self.b))
    }

    fn herglotz(&self, w: Complex64) -> (Complex64, Complex64) {
        (self.f_closed(w), self.f_closed_prime(w))
    }

    /// Root of `w² - (b+z)w + bz + a = 0` inside the disk.
    fn phi(&self, z: Complex64) -> Complex64 {
        let (a, b) = (self.a, self.b);
        let disc = (b * b + z * z - 4.0 * a - 2.0 * b * z).sqrt();
        let w1 = (b + z - disc) / 2.0;
        let w2 = (b + z + disc) / 2.0;
        if w1.norm() <= w2.norm() {
            w1
        } else {
            w2
        }
    }
}

/// `ψ(z) = (R⁴-1)z / (R(R²-z²))`, `R = (a + √(a²+4))/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NeumannOval {
    pub a: f64,
    pub r: f64,
}

pub fn neumann_oval_family(a: f64) -> Result<NeumannOval> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("Neumann oval parameter a = {a} must be positive")));
    }
    Ok(NeumannOval { a, r: (a + (a * a + 4.0).sqrt()) / 2.0 })
}

impl NeumannOval {
    /// Odd-only coefficients `(R⁴-1)/R^(2n+3)` at `z^(2n+1)`.
    pub fn taylor(&self, m: usize) -> Result<TaylorSeries> {
        let r = self.r;
        let r4m1 = r.powi(4) - 1.0;
        let c =
            (0..=m)
                .map(|k| {
                    if k % 2 == 1 {
                        Complex64::new(r4m1 / r.powi(k as i32 + 2), 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
        TaylorSeries::new(c, r)
    }

    pub fn rho_closed(&self) -> f64 {
        let a = self.a;
        PI * (a.powi(4) / 2.0 + 2.0 * a * a + 1.0)
    }

    /// The same value written in `R`.
    pub fn rho_closed_r(&self) -> f64 {
        PI * (self.r.powi(4) + self.r.powi(-4)) / 2.0
    }

    pub fn h_closed(&self, k: usize) -> f64 {
        if k % 2 == 1 {
            0.0
        } else {
            (self.r.powi(4) - 1.0) / (2.0 * self.r.powi(k as i32 + 2))
        }
    }

    /// `‖ψψ'‖²` from `π(R⁴-1)⁴/(2R¹²) Σ (n+1)³/R^{4n}`.
    pub fn psi_psi_prime_normsq_closed(&self) -> f64 {
        let r = self.r;
        let x = r.powi(-4);
        // Σ (n+1)³ x^n = (1 + 4x + x²)/(1-x)⁴
        let s = (1.0 + 4.0 * x + x * x) / (1.0 - x).powi(4);
        PI * (r.powi(4) - 1.0).powi(4) / (2.0 * r.powi(12)) * s
    }

    pub fn nu_closed(&self, z: Complex64) -> f64 {
        let r = self.r;
        (r.powi(4) - 1.0) / (2.0 * r * r) + (z * self.phi(z)).re / r - z.norm_sqr() / 2.0
    }

    pub fn q_closed(&self, z: Complex64) -> Complex64 {
        let w = self.phi(z);
        (w + z / self.dpsi(w)) / self.r
    }
}

impl ConformalMap for NeumannOval {
    fn psi(&self, w: Complex64) -> Complex64 {
        let r = self.r;
        (r.powi(4) - 1.0) * w / (r * (r * r - w * w))
    }

    fn dpsi(&self, w: Complex64) -> Complex64 {
        let r = self.r;
        let d = r * r - w * w;
        (r.powi(4) - 1.0) * (r * r + w * w) / (r * d * d)
    }

    fn herglotz(&self, w: Complex64) -> (Complex64, Complex64) {
        let r = self.r;
        let f = (r.powi(4) - 1.0) / (2.0 * r * r) + w * self.psi(w) / r;
        let fp = (self.psi(w) + w * self.dpsi(w)) / r;
        (f, fp)
    }

    /// `(1 - R⁴ + √((R⁴-1)² + 4R⁴z²)) / (2Rz)`, taking the root inside the disk.
    fn phi(&self, z: Complex64) -> Complex64 {
        if z.norm() == 0.0 {
            return z;
        }
        let r = self.r;
        let r4 = r.powi(4);
        let s = ((r4 - 1.0) * (r4 - 1.0) + 4.0 * r4 * z * z).sqrt();
        let w1 = (1.0 - r4 + s) / (2.0 * r * z);
        let w2 = (1.0 - r4 - s) / (2.0 * r * z);
        if w1.norm() <= w2.norm() {
            w1
        } else {
            w2
        }
    }
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Complex moments of Neumann's oval as disk integrals `c_ij = ⟨ψ^i ψ', ψ^j ψ'⟩_D`.
///
/// `ψ^i ψ' = C^{i+1} z^i (1+u)/(1-u)^{i+2}` with `u = z²/R²` and `C = (R⁴-1)/R³`; the
/// series is summed until the terms drop below `2^-(prec+32)` relative.
pub fn neumann_oval_moment_table<T: Scalar>(a: &Param, degree: usize, prec: u32) -> Result<MomentTable<T>> {
    if !a.is_positive() {
        return Err(Error::Domain(format!("Neumann oval parameter a = {a} must be positive")));
    }
    let av: T = a.to_scalar(prec)?;
    let root = (av.clone() * av.clone() + T::from_i64(4))
        .sqrt()
        .ok_or_else(|| Error::NotExact("Neumann oval radius".into()))?;
    let pi = T::pi(prec).ok_or_else(|| Error::NotExact("disk integrals involve pi".into()))?;
    let r = (av + root) / T::from_i64(2);
    let r2 = r.clone() * r.clone();
    let r4 = r2.clone() * r2.clone();
    let c = (r4 - T::one()) / (r2.clone() * r.clone());
    let rf = r.to_f64();
    let size = degree + 2;
    // terms behave like n^{2 size} R^{-4n}
    let mut n_max = 8usize;
    loop {
        let n = n_max as f64;
        let log2_term = 2.0 * size as f64 * (n + size as f64).log2() - 4.0 * n * rf.log2();
        if log2_term < -((prec as f64) + 32.0) {
            break;
        }
        n_max += 8;
    }
    let inv_r2 = T::one() / r2;
    // g[i][n] = coefficient of z^{i+2n} in ψ^i ψ'
    let mut g: Vec<Vec<T>> = Vec::with_capacity(size);
    let mut cpow = c.clone();
    for i in 0..size {
        let mut row = Vec::with_capacity(n_max + 1);
        let mut rp = T::one();
        for n in 0..=n_max {
            let coef = binom(n + i + 1, i + 1) + if n >= 1 { binom(n + i, i + 1) } else { BigInt::zero() };
            row.push(cpow.clone() * rp.clone() * T::from_bigint(&coef));
            rp = rp * inv_r2.clone();
        }
        g.push(row);
        cpow = cpow * c.clone();
    }
    Ok(MomentTable::from_lower(degree, Some(prec), |i, j| {
        if (i - j) % 2 == 1 {
            return cx_real(T::zero());
        }
        let d = (i - j) / 2;
        let mut s = T::zero();
        for n in 0..=n_max - d {
            s = s + g[i][n].clone() * g[j][n + d].clone() / T::from_i64((i + 2 * n + 1) as i64);
        }
        cx_real(pi.clone() * s)
    }))
}

/// `ψ = √2/p` with `p = √scale_sq · q` zero-free on the closed disk.
#[derive(Clone, Debug)]
pub struct ReciprocalPolyMap {
    q: ComplexPolynomial<f64>,
    scale_sq: f64,
    herglotz: HerglotzRational<f64>,
    mass: f64,
}

impl ReciprocalPolyMap {
    /// Checks that `q` has no zeros in the closed disk and that `∫|p|^{-2} dθ/2π = 1`.
    pub fn new(q: ComplexPolynomial<f64>, scale_sq: f64) -> Result<Self> {
        if q.degree() < 1 {
            return Err(Error::InvalidMap("p must have degree at least 1".into()));
        }
        let n = 4096;
        let mut min_abs = f64::INFINITY;
        let mut winding = 0.0;
        let mut mass = 0.0;
        let mut prev = q.eval_c64(Complex64::new(1.0, 0.0));
        for k in 1..=n {
            let w = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            let v = q.eval_c64(w);
            min_abs = min_abs.min(v.norm());
            winding += (v / prev).arg();
            mass += 1.0 / (scale_sq * v.norm_sqr());
            prev = v;
        }
        mass /= n as f64;
        if min_abs < 1e-12 || (winding / (2.0 * PI)).round() != 0.0 {
            return Err(Error::InvalidMap("p has a zero in the closed unit disk".into()));
        }
        let herglotz = herglotz_from_reciprocal_poly(&q, &scale_sq)?;
        if (mass - 1.0).abs() > 1e-9 {
            return Err(Error::Normalization { measured: mass });
        }
        Ok(ReciprocalPolyMap { q, scale_sq, herglotz, mass })
    }

    pub fn from_spec(spec: &RegionSpec) -> Result<Self> {
        match spec {
            RegionSpec::ReciprocalPolyMap { coefficients, scale_sq } => {
                let q = ComplexPolynomial::new(
                    coefficients.iter().map(|(re, im)| Complex64::new(re.to_f64(), im.to_f64())).collect(),
                );
                Self::new(q, scale_sq.to_f64())
            }
            other => {
                Err(Error::UnsupportedVariant(format!("{} is not a reciprocal polynomial map", other.family_name())))
            }
        }
    }

    /// Trapezoid-rule value of `∫|p|^{-2} dθ/2π`.
    pub fn measured_mass(&self) -> f64 {
        self.mass
    }

    pub fn herglotz_rational(&self) -> &HerglotzRational<f64> {
        &self.herglotz
    }

    /// Taylor coefficients of `√2/p` by series division.
    pub fn taylor(&self, m: usize) -> Result<TaylorSeries> {
        let s = self.scale_sq.sqrt();
        let p: Vec<Complex64> = self.q.coeffs().iter().map(|c| c * s).collect();
        let mut b = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = if k == 0 { Complex64::new(2f64.sqrt(), 0.0) } else { Complex64::new(0.0, 0.0) };
            for l in 1..=k.min(p.len() - 1) {
                acc -= p[l] * b[k - l];
            }
            b.push(acc / p[0]);
        }
        let ratio = super::decay_ratio(&b);
        let radius = if ratio > 0.0 && ratio < 1.0 { 1.0 / ratio } else { 1.0 };
        TaylorSeries::new(b, radius.max(1.0))
    }
}

impl ConformalMap for ReciprocalPolyMap {
    fn psi(&self, w: Complex64) -> Complex64 {
        2f64.sqrt() / (self.scale_sq.sqrt() * self.q.eval_c64(w))
    }

    fn dpsi(&self, w: Complex64) -> Complex64 {
        let p = self.q.eval_c64(w);
        let dp = self.q.derivative().eval_c64(w);
        -2f64.sqrt() * dp / (self.scale_sq.sqrt() * p * p)
    }

    fn herglotz(&self, w: Complex64) -> (Complex64, Complex64) {
        self.herglotz.eval_with_derivative(w)
    }
}

/// The equilateral triangle with vertices `(1,0), (-1/2, ±√3/2)`.
#[derive(Clone, Debug)]
pub struct EquilateralReport {
    /// The Bergman projection of `z̄`, which is `z²`.
    pub q: ComplexPolynomial<BigRational>,
    /// `c_11 - ‖z²‖²` from the triangle moments.
    pub rho: MpFloat,
    /// Largest `|2 Re(z³/3 + 1/6) - |z|²|` over sampled boundary points, computed exactly.
    pub boundary_residual: BigRational,
    /// Same residual at the three vertices.
    pub vertex_residual: BigRational,
    pub samples: usize,
}

/// `2 Re(z³/3 + 1/6) - |z|²` at a point given by `x` and `y²`, both rational.
fn equilateral_u(x: &BigRational, y2: &BigRational) -> BigRational {
    let re_z3 = x * x * x - rat(3, 1) * x * y2;
    rat(2, 3) * re_z3 + rat(1, 3) - x * x - y2
}

pub fn equilateral_triangle_exact(prec: u32) -> Result<EquilateralReport> {
    // the factored form vanishes on each edge; check the complex form exactly using y² only
    let vertices = [(rat(1, 1), rat(0, 1)), (rat(-1, 2), rat(3, 4)), (rat(-1, 2), rat(3, 4))];
    let vertex_residual = vertices
        .iter()
        .map(|(x, y2)| num_traits::Signed::abs(&equilateral_u(x, y2)))
        .fold(BigRational::zero(), |m, v| if v > m { v } else { m });
    let samples = 64;
    let mut boundary_residual = BigRational::zero();
    for k in 0..samples {
        let t = rat(k as i64, samples as i64);
        // edges from (1,0) to (-1/2, ±√3/2): x = 1 - 3t/2, y² = 3t²/4; the left edge x = -1/2
        let slanted = (rat(1, 1) - rat(3, 2) * &t, rat(3, 4) * &t * &t);
        let left = (rat(-1, 2), rat(3, 4) * (rat(1, 1) - rat(2, 1) * &t) * (rat(1, 1) - rat(2, 1) * &t));
        for (x, y2) in [slanted, left] {
            let v = num_traits::Signed::abs(&equilateral_u(&x, &y2));
            if v > boundary_residual {
                boundary_residual = v;
            }
        }
    }
    let tri = realize_polygon::<MpFloat>(&RegionSpec::EquilateralTriangle, prec)?;
    let table = moment_table_of_polygon(&tri, 1);
    let rho = table.get(1, 1).re.clone() - table.get(2, 2).re.clone();
    let q = ComplexPolynomial::monomial(2);
    Ok(EquilateralReport { q, rho, boundary_residual, vertex_residual, samples })
}

#[cfg(test)]
mod tests {
    use super::super::{fourier_h, herglotz_series, rho_conformal, stress_and_projection};
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn dented_validity_conditions() {
        assert!(dented_disk_validity(c(0.2), c(1.5)).is_valid());
        let bad = dented_disk_validity(c(0.0), c(2.0));
        assert!(!bad.nonzero_and_outside);
        let msg = bad.into_result().unwrap_err().to_string();
        assert!(msg.contains("condition (i)"), "{msg}");
        // critical point at b - sqrt(a) = 0.5 inside the disk
        assert!(!dented_disk_validity(c(1.0), c(1.5)).critical_points_outside);
    }

    #[test]
    fn dented_h_table_matches_series() {
        let d = dented_disk_family(c(0.2), c(1.5)).unwrap();
        let psi = d.taylor(400).unwrap();
        for j in 0..6 {
            let diff = (fourier_h(&psi, j) - d.h_closed(j)).norm();
            assert!(diff < 1e-14, "h_{j}: {diff}");
        }
    }

    #[test]
    fn dented_rho_series_vs_closed() {
        let d = dented_disk_family(c(0.2), c(1.5)).unwrap();
        let (closed, tail) = d.rho_closed();
        assert!(tail < 1e-12);
        let series = rho_conformal(&d.taylor(200).unwrap()).unwrap();
        assert!(rel(series.value, closed) < 1e-6, "{} vs {closed}", series.value);
        // independent value from a direct Taylor-series evaluation at high order
        assert!((closed - 1.113_205_984_18).abs() < 1e-9, "{closed}");
    }

    #[test]
    fn dented_rho_tends_to_disk() {
        let gaps: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&b| (dented_disk_family(c(0.2), c(b)).unwrap().rho_closed().0 - PI / 2.0).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 1e-3, "{gaps:?}");
    }

    #[test]
    fn dented_stress_vanishes_on_boundary() {
        let d = dented_disk_family(c(0.2), c(1.5)).unwrap();
        assert!(stress_and_projection(&d).boundary_residual(64) < 1e-12);
    }

    #[test]
    fn oval_identities() {
        for a in [0.5, 1.0, 2.0] {
            let o = neumann_oval_family(a).unwrap();
            assert!(rel(o.rho_closed_r(), o.rho_closed()) < 1e-14);
            let psi = o.taylor(200).unwrap();
            for k in 0..8 {
                assert!((fourier_h(&psi, k).re - o.h_closed(k)).abs() < 1e-12);
            }
            let pp = super::super::psi_psi_prime(&psi);
            assert!(rel(super::super::disk_l2_normsq(&pp), o.psi_psi_prime_normsq_closed()) < 1e-12);
            let rho = rho_conformal(&psi).unwrap();
            assert!(rel(rho.value, o.rho_closed()) < 1e-8);
        }
        assert!((neumann_oval_family(1.0).unwrap().rho_closed() - 3.5 * PI).abs() < 1e-13);
        assert!(neumann_oval_family(0.0).is_err());
    }

    #[test]
    fn oval_large_r_like_disk() {
        let o = neumann_oval_family(50.0).unwrap();
        assert!((o.rho_closed() / (PI * o.r.powi(4) / 2.0) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn oval_herglotz_and_stress() {
        let o = neumann_oval_family(1.0).unwrap();
        let f = herglotz_series(&o.taylor(200).unwrap());
        let w = Complex64::new(0.3, 0.4);
        assert!((f.eval(w) - o.herglotz(w).0).norm() < 1e-12);
        let sp = stress_and_projection(&o);
        assert!(sp.boundary_residual(64) < 1e-12);
        let z = Complex64::new(0.4, -0.2);
        assert!((sp.nu(z) - o.nu_closed(z)).abs() < 1e-13);
        assert!((sp.q(z) - o.q_closed(z)).norm() < 1e-13);
        assert!((o.psi(o.phi(z)) - z).norm() < 1e-13);
    }

    #[test]
    fn oval_moment_table_consistency() {
        let t: MomentTable<MpFloat> = neumann_oval_moment_table(&Param::int(1), 3, 256).unwrap();
        let o = neumann_oval_family(1.0).unwrap();
        // area = ‖ψ'‖² and the polar moment c_11 = ‖ψψ'‖²
        let dpsi = o.taylor(400).unwrap().derivative_coeffs();
        assert!(rel(t.get(0, 0).re.to_f64(), super::super::disk_l2_normsq(&dpsi)) < 1e-13);
        assert!(rel(t.get(1, 1).re.to_f64(), o.psi_psi_prime_normsq_closed()) < 1e-13);
        assert!(t.get(1, 0).re.is_zero());
    }

    #[test]
    fn reciprocal_map_worked_example() {
        let q = ComplexPolynomial::new(vec![c(8.0), c(12.0), c(6.0), c(1.0)]);
        let m = ReciprocalPolyMap::new(q.clone(), 11.0 / 81.0).unwrap();
        assert!((m.measured_mass() - 1.0).abs() < 1e-12);
        let psi = m.taylor(200).unwrap();
        let f = herglotz_series(&psi);
        for (k, fk) in m.herglotz_rational().taylor(10).iter().enumerate() {
            assert!((f.f_coeffs()[k] - fk).norm() < 1e-12, "f_{k}");
        }
        assert!(f.min_real_part(0.95) > 0.0);
        assert!(ReciprocalPolyMap::new(q.clone(), 1.0).is_err());
        let inside = ComplexPolynomial::new(vec![c(0.5), c(1.0)]);
        assert!(matches!(ReciprocalPolyMap::new(inside, 1.0), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn equilateral_triangle() {
        let rep = equilateral_triangle_exact(256).unwrap();
        assert!(rep.vertex_residual.is_zero());
        assert!(rep.boundary_residual.is_zero());
        assert_eq!(rep.q, ComplexPolynomial::monomial(2));
        let expect = 9.0 * 3f64.sqrt() / 80.0;
        assert!((rep.rho.to_f64() - expect).abs() < 1e-15);
    }
}
