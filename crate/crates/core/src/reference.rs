//! Classical series for the rectangle and the isosceles right triangle, with rigorous
//! truncation bounds, and the disk constant.

use std::f64::consts::PI;

use crate::estimate::{BoundDirection, Method, RigidityEstimate};

/// A truncated positive series: `value <= true sum <= value + tail`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail: f64,
}

impl SeriesValue {
    pub fn contains(&self, x: f64) -> bool {
        // slack for the rounding of the partial sum itself
        let slack = 1e-13 * self.value.abs();
        x >= self.value - slack && x <= self.value + self.tail + slack
    }

    pub fn estimate(&self, order: usize) -> RigidityEstimate {
        RigidityEstimate::new(self.value, BoundDirection::Lower, Method::Series, order).with_tail(self.tail)
    }
}

/// `Σ_{k>=0} 1/(2k+1)²`.
const ODD_ZETA2: f64 = PI * PI / 8.0;

/// `Σ_{j>J} 1/(2j+1)^4 <= ∫_J^∞ (2x+1)^-4 dx`.
fn odd_quartic_tail(cap: usize) -> f64 {
    let q = (2 * cap + 1) as f64;
    1.0 / (6.0 * q * q * q)
}

/// Rectangle `a × b`: partial sum over `j <= J`, `k <= K`.
///
/// The tail drops one of the two squares from the last factor and sums the rest in closed form.
pub fn rectangle_rho_series(a: f64, b: f64, j_cap: usize, k_cap: usize) -> SeriesValue {
    let (a2, b2) = (a * a, b * b);
    let mut s = 0.0;
    // smallest terms first
    for j in (0..=j_cap).rev() {
        let p = (2 * j + 1) as f64;
        let p2 = p * p;
        let mut row = 0.0;
        for k in (0..=k_cap).rev() {
            let q = (2 * k + 1) as f64;
            let q2 = q * q;
            row += 1.0 / (p2 * q2 * (p2 * a2 + q2 * b2));
        }
        s += row;
    }
    let c = 256.0 * a.powi(3) * b.powi(3) / PI.powi(6);
    let tail = ODD_ZETA2 * (odd_quartic_tail(j_cap) / a2 + odd_quartic_tail(k_cap) / b2);
    SeriesValue { value: c * s, tail: c * tail }
}

/// `R(a)`: the area-one rectangle `a × 1/a` summed to `j, k <= 85`.
pub fn rectangle_r(a: f64) -> SeriesValue {
    rectangle_rho_series(a, 1.0 / a, 85, 85)
}

/// `(a³b³/(4(a²+b²)), a³b³/(3(a²+b²)))`.
pub fn rectangle_rho_bracket(a: f64, b: f64) -> (f64, f64) {
    let num = a.powi(3) * b.powi(3);
    let s = a * a + b * b;
    (num / (4.0 * s), num / (3.0 * s))
}

/// Isosceles right triangle with unit legs: partial sum over `m <= M`, `n <= N`.
///
/// With `q = 2n-1`, each term is `m²/(q² (4m²-q²)² (4m²+q²)) > 0`. Bounding `Σ_n` for fixed
/// `m` by `3π²/(256 m⁴)` and `Σ_m` for fixed `n` by `3π²/(64 q⁴)` gives the tail.
pub fn isosceles_right_triangle_rho_series(m_cap: usize, n_cap: usize) -> SeriesValue {
    let mut s = 0.0;
    for m in (1..=m_cap).rev() {
        let mf = m as f64;
        let four_m2 = 4.0 * mf * mf;
        let mut row = 0.0;
        for n in (1..=n_cap).rev() {
            let q = (2 * n - 1) as f64;
            let q2 = q * q;
            let d = four_m2 - q2;
            row += mf * mf / (q2 * d * d * (four_m2 + q2));
        }
        s += row;
    }
    let c = 1024.0 / PI.powi(6);
    let mc = m_cap.max(1) as f64;
    let tail = PI * PI / (256.0 * mc.powi(3)) + 3.0 * PI * PI / 64.0 * odd_quartic_tail(n_cap.max(1) - 1);
    SeriesValue { value: c * s, tail: c * tail }
}

/// `πr⁴/2`.
pub fn disk_rho(r: f64) -> f64 {
    PI * r.powi(4) / 2.0
}
