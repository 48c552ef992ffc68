//! Poisson-kernel route: torsional rigidity and stress function from a conformal map `ψ: D → Ω`.

pub mod families;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimate::{BoundDirection, Method, RigidityEstimate};

pub use families::{
    dented_disk_family, dented_disk_validity, equilateral_triangle_exact, neumann_oval_family,
    neumann_oval_moment_table, DentedDisk, DentedDiskValidity, EquilateralReport, NeumannOval, ReciprocalPolyMap,
};

pub const DEFAULT_TRUNCATION: usize = 200;
const DECAY_WINDOW: usize = 20;

/// Truncated Taylor expansion `Σ a_k z^k`, `k = 0..=M`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
    radius: f64,
}

impl TaylorSeries {
    /// `radius` is the declared radius of validity of the underlying function.
    pub fn new(coeffs: Vec<Complex64>, radius: f64) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidMap("Taylor series needs truncation order at least 1".into()));
        }
        if radius < 1.0 {
            return Err(Error::InvalidMap(format!("radius of validity {radius} is below 1")));
        }
        Ok(TaylorSeries { coeffs, radius })
    }

    /// A polynomial map, valid everywhere.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs, f64::INFINITY)
    }

    /// The identity map of the disk.
    pub fn identity() -> Self {
        TaylorSeries { coeffs: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], radius: f64::INFINITY }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn derivative_coeffs(&self) -> Vec<Complex64> {
        derivative(&self.coeffs)
    }

    /// Geometric decay ratio of the coefficients estimated from the last window of 20,
    /// compared with the window before it. `0` when the tail is identically zero.
    pub fn decay_ratio(&self) -> f64 {
        decay_ratio(&self.coeffs)
    }

    /// True when the coefficients do not decay although the declared radius exceeds 1.
    pub fn decay_warning(&self) -> bool {
        self.radius > 1.0 && self.decay_ratio() >= 1.0
    }

    /// Bounds `Σ_{k>M} k^p |a_k|` under the geometric model `|a_k| <= A r^(k-M)`.
    pub fn tail_weighted(&self, p: i32) -> f64 {
        if self.radius.is_infinite() {
            // a polynomial has no tail
            return 0.0;
        }
        let r = self.decay_ratio();
        if r == 0.0 {
            return 0.0;
        }
        if r >= 1.0 {
            return f64::INFINITY;
        }
        let m = self.order();
        let a = window_max(&self.coeffs, m + 1 - DECAY_WINDOW.min(m + 1), m + 1);
        let mut s = 0.0;
        let mut rt = 1.0;
        for t in 1..1_000_000usize {
            rt *= r;
            let term = a * rt * ((m + t) as f64).powi(p);
            s += term;
            if term < s * 1e-18 || term == 0.0 {
                break;
            }
        }
        s
    }
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

fn window_max(c: &[Complex64], lo: usize, hi: usize) -> f64 {
    c[lo..hi].iter().map(|a| a.norm()).fold(0.0, f64::max)
}

fn decay_ratio(c: &[Complex64]) -> f64 {
    let n = c.len();
    let w = DECAY_WINDOW.min(n / 2).max(1);
    let last = window_max(c, n - w, n);
    if last == 0.0 {
        return 0.0;
    }
    let prev = window_max(c, n - 2 * w, n - w);
    if prev == 0.0 {
        return 1.0;
    }
    (last / prev).powf(1.0 / w as f64)
}

/// Product of two coefficient lists, truncated at degree `max_deg`.
pub fn mul_series(a: &[Complex64], b: &[Complex64], max_deg: usize) -> Vec<Complex64> {
    let n = (a.len() + b.len()).saturating_sub(1).min(max_deg + 1);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (i, x) in a.iter().enumerate() {
        if i >= n || *x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `h_j = (1/2) Σ_m a_{m+j} conj(a_m)`, the `j`-th Fourier coefficient of `|ψ|²/2` on the circle.
pub fn fourier_h(psi: &TaylorSeries, j: usize) -> Complex64 {
    let a = psi.coeffs();
    let mut s = Complex64::new(0.0, 0.0);
    for m in 0..a.len().saturating_sub(j) {
        s += a[m + j] * a[m].conj();
    }
    s * 0.5
}

/// `F(z) = h_0 + 2 Σ h_j z^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HerglotzSeries {
    h: Vec<Complex64>,
}

impl HerglotzSeries {
    pub fn from_h(h: Vec<Complex64>) -> Self {
        HerglotzSeries { h }
    }

    pub fn h(&self) -> &[Complex64] {
        &self.h
    }

    pub fn h0(&self) -> f64 {
        self.h[0].re
    }

    /// Taylor coefficients `f_0 = h_0`, `f_j = 2 h_j`.
    pub fn f_coeffs(&self) -> Vec<Complex64> {
        self.h.iter().enumerate().map(|(j, h)| if j == 0 { *h } else { h * 2.0 }).collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.f_coeffs(), z)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        horner(&derivative(&self.f_coeffs()), z)
    }

    /// Minimum of `Re F` on a polar grid of radius at most `rmax`.
    pub fn min_real_part(&self, rmax: f64) -> f64 {
        let f = self.f_coeffs();
        let mut m = f64::INFINITY;
        for i in 0..=16 {
            let r = rmax * i as f64 / 16.0;
            for k in 0..64 {
                let t = 2.0 * PI * k as f64 / 64.0;
                m = m.min(horner(&f, Complex64::from_polar(r, t)).re);
            }
        }
        m
    }
}

pub fn herglotz_series(psi: &TaylorSeries) -> HerglotzSeries {
    HerglotzSeries::from_h((0..=psi.order()).map(|j| fourier_h(psi, j)).collect())
}

/// `∫_D |Σ b_k z^k|² dA = π Σ |b_k|²/(k+1)`.
pub fn disk_l2_normsq(b: &[Complex64]) -> f64 {
    PI * b.iter().enumerate().map(|(k, c)| c.norm_sqr() / (k + 1) as f64).sum::<f64>()
}

/// `ψψ'` as a coefficient list of the truncated map.
pub fn psi_psi_prime(psi: &TaylorSeries) -> Vec<Complex64> {
    let d = psi.derivative_coeffs();
    mul_series(psi.coeffs(), &d, 2 * psi.order())
}

/// `‖ψψ'‖² - ‖F'‖²` over the disk, for the truncated map.
pub fn rho_conformal(psi: &TaylorSeries) -> Result<RigidityEstimate> {
    let pp = psi_psi_prime(psi);
    let f = herglotz_series(psi).f_coeffs();
    let fp = derivative(&f);
    let value = disk_l2_normsq(&pp) - disk_l2_normsq(&fp);
    let tail = truncation_tail(psi);
    if value < -tail {
        return Err(Error::Inconsistent(format!(
            "negative torsional rigidity {value:e} (tail {tail:e}); map is likely not univalent"
        )));
    }
    let mut est = RigidityEstimate::new(value, BoundDirection::Exact, Method::Conformal, psi.order())
        .with_precision(Some(53))
        .with_tail(tail);
    if psi.decay_warning() {
        est = est.flag("coefficients do not decay");
    }
    Ok(est)
}

/// Tail estimate for `rho_conformal` from the geometric coefficient model.
///
/// With `S0 = Σ|a_k|`, `S1 = Σ k|a_k|` bounding `sup|ψ|`, `sup|ψ'|` and `T0`, `T1` the
/// same sums over the missing coefficients, both `‖ψψ'‖²` and `‖F'‖²` move by at most a
/// small multiple of `π S0 S1 (S0 T1 + T0 S1)`.
pub fn truncation_tail(psi: &TaylorSeries) -> f64 {
    let a = psi.coeffs();
    let s0: f64 = a.iter().map(|c| c.norm()).sum();
    let s1: f64 = a.iter().enumerate().map(|(k, c)| k as f64 * c.norm()).sum();
    let t0 = psi.tail_weighted(0);
    let t1 = psi.tail_weighted(1);
    10.0 * PI * s0 * s1 * (s0 * t1 + t0 * s1)
}

/// Runs `rho_conformal` on `make(M)` for `M = m0, 2 m0, …` until `tail <= rel_tol |ρ|`.
pub fn rho_conformal_adaptive(
    make: impl Fn(usize) -> Result<TaylorSeries>,
    m0: usize,
    rel_tol: f64,
) -> Result<RigidityEstimate> {
    let mut m = m0.max(2);
    loop {
        let est = rho_conformal(&make(m)?)?;
        if est.tail <= rel_tol * est.value.abs() || m >= 12_800 {
            return Ok(est);
        }
        m *= 2;
    }
}

/// A conformal bijection of the disk onto a region, with its inverse and Herglotz function.
pub trait ConformalMap: Send + Sync {
    fn psi(&self, w: Complex64) -> Complex64;
    fn dpsi(&self, w: Complex64) -> Complex64;
    /// `(F(w), F'(w))`.
    fn herglotz(&self, w: Complex64) -> (Complex64, Complex64);

    /// Inverse map `φ = ψ^{-1}`; the default is a grid search followed by Newton's method.
    fn phi(&self, z: Complex64) -> Complex64 {
        let mut best = Complex64::new(0.0, 0.0);
        let mut err = (self.psi(best) - z).norm();
        for i in 1..=32 {
            let r = i as f64 / 32.0;
            for k in 0..128 {
                let w = Complex64::from_polar(r, 2.0 * PI * k as f64 / 128.0);
                let e = (self.psi(w) - z).norm();
                if e < err {
                    err = e;
                    best = w;
                }
            }
        }
        let mut w = best;
        for _ in 0..60 {
            let step = (self.psi(w) - z) / self.dpsi(w);
            w -= step;
            if step.norm() < 1e-16 {
                break;
            }
        }
        w
    }
}

/// Evaluators for `Q = F'(φ)φ'` and `ν = Re F(φ) - |z|²/2`.
pub struct StressProjection<'a, M: ConformalMap + ?Sized> {
    map: &'a M,
}

pub fn stress_and_projection<M: ConformalMap + ?Sized>(map: &M) -> StressProjection<'_, M> {
    StressProjection { map }
}

impl<M: ConformalMap + ?Sized> StressProjection<'_, M> {
    pub fn q(&self, z: Complex64) -> Complex64 {
        let w = self.map.phi(z);
        let (_, fp) = self.map.herglotz(w);
        fp / self.map.dpsi(w)
    }

    pub fn nu(&self, z: Complex64) -> f64 {
        let w = self.map.phi(z);
        self.map.herglotz(w).0.re - z.norm_sqr() / 2.0
    }

    /// Largest `|ν|` over `n` boundary points `ψ(e^{it})`, evaluated through `φ`.
    pub fn boundary_residual(&self, n: usize) -> f64 {
        (0..n)
            .map(|k| {
                let w = Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / n as f64);
                self.nu(self.map.psi(w)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// The unit disk with `ψ(z) = z`.
pub struct UnitDiskMap;

impl ConformalMap for UnitDiskMap {
    fn psi(&self, w: Complex64) -> Complex64 {
        w
    }

    fn dpsi(&self, _w: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn herglotz(&self, _w: Complex64) -> (Complex64, Complex64) {
        (Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0))
    }

    fn phi(&self, z: Complex64) -> Complex64 {
        z
    }
}
