//! Rayleigh-quotient lower bounds `4(∫u)²/∫|∇u|²` for piecewise-polynomial trial
//! functions, integrated exactly cell by cell.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::estimate::{BoundDirection, Method, RigidityEstimate};
use crate::moments::polygon_real_moments;
use crate::regions::{area_and_centroid, dedup_cyclic, Point, PolygonRegion};
use crate::scalar::Scalar;

/// `Σ c[i][j] x^i y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<T: Scalar> {
    c: Vec<Vec<T>>,
}

impl<T: Scalar> Poly2<T> {
    pub fn new(mut c: Vec<Vec<T>>) -> Self {
        for row in &mut c {
            while row.last().is_some_and(|v| v.is_zero()) {
                row.pop();
            }
        }
        while c.last().is_some_and(|r| r.is_empty()) {
            c.pop();
        }
        Poly2 { c }
    }

    pub fn zero() -> Self {
        Poly2 { c: vec![] }
    }

    pub fn constant(v: T) -> Self {
        Poly2::new(vec![vec![v]])
    }

    pub fn x() -> Self {
        Poly2::new(vec![vec![], vec![T::one()]])
    }

    pub fn y() -> Self {
        Poly2::new(vec![vec![T::zero(), T::one()]])
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.c.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        let mut d = 0;
        for (i, r) in self.c.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly2::new(
            (0..n)
                .map(|i| {
                    let m = self.c.get(i).map_or(0, |r| r.len()).max(o.c.get(i).map_or(0, |r| r.len()));
                    (0..m).map(|j| self.coeff(i, j) + o.coeff(i, j)).collect()
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Poly2 { c: self.c.iter().map(|r| r.iter().map(|v| -v.clone()).collect()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly2::new(self.c.iter().map(|r| r.iter().map(|v| v.clone() * s.clone()).collect()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly2::zero();
        }
        let rows = self.c.len() + o.c.len() - 1;
        let cols = self.c.iter().map(|r| r.len()).max().unwrap_or(0) + o.c.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut out = vec![vec![T::zero(); cols]; rows];
        for (i, r) in self.c.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, s) in o.c.iter().enumerate() {
                    for (l, b) in s.iter().enumerate() {
                        if !b.is_zero() {
                            out[i + k][j + l] = out[i + k][j + l].clone() + a.clone() * b.clone();
                        }
                    }
                }
            }
        }
        Poly2::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly2::constant(T::one()), |acc, _| acc.mul(self))
    }

    pub fn dx(&self) -> Self {
        Poly2::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.iter().map(|v| v.clone() * T::from_i64(i as i64)).collect())
                .collect(),
        )
    }

    pub fn dy(&self) -> Self {
        Poly2::new(
            self.c
                .iter()
                .map(|r| r.iter().enumerate().skip(1).map(|(j, v)| v.clone() * T::from_i64(j as i64)).collect())
                .collect(),
        )
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        let mut s = T::zero();
        for r in self.c.iter().rev() {
            let mut row = T::zero();
            for v in r.iter().rev() {
                row = row * y.clone() + v.clone();
            }
            s = s * x.clone() + row;
        }
        s
    }

    pub fn to_f64(&self) -> Poly2<f64> {
        Poly2 { c: self.c.iter().map(|r| r.iter().map(|v| v.to_f64()).collect()).collect() }
    }

    /// `∫_cell p dA`, exact for exact coordinates.
    pub fn integrate(&self, cell: &PolygonRegion<T>) -> T {
        if self.is_zero() {
            return T::zero();
        }
        let m = polygon_real_moments(cell, self.total_degree());
        let mut s = T::zero();
        for (i, r) in self.c.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    s = s + v.clone() * m.get(i, j);
                }
            }
        }
        s
    }
}

impl<T: Scalar> fmt::Display for Poly2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, r) in self.c.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({v})x^{i}y^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Polygonal cells with one polynomial each.
#[derive(Clone, Debug)]
pub struct PiecewisePolynomial2D<T: Scalar> {
    cells: Vec<(PolygonRegion<T>, Poly2<T>)>,
}

impl<T: Scalar> PiecewisePolynomial2D<T> {
    pub fn new(cells: Vec<(PolygonRegion<T>, Poly2<T>)>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::DegenerateTrial("no cells".into()));
        }
        Ok(PiecewisePolynomial2D { cells })
    }

    pub fn single(cell: PolygonRegion<T>, u: Poly2<T>) -> Self {
        PiecewisePolynomial2D { cells: vec![(cell, u)] }
    }

    pub fn cells(&self) -> &[(PolygonRegion<T>, Poly2<T>)] {
        &self.cells
    }

    pub fn integral(&self) -> T {
        self.cells.iter().fold(T::zero(), |acc, (cell, u)| acc + u.integrate(cell))
    }

    pub fn dirichlet(&self) -> T {
        self.cells.iter().fold(T::zero(), |acc, (cell, u)| {
            let (ux, uy) = (u.dx(), u.dy());
            acc + ux.mul(&ux).add(&uy.mul(&uy)).integrate(cell)
        })
    }

    /// Largest jump across shared cell edges, sampled at 16 points per edge.
    pub fn continuity_residual(&self) -> f64 {
        let cells: Vec<(PolygonRegion<f64>, Poly2<f64>)> =
            self.cells.iter().map(|(c, u)| (c.to_f64(), u.to_f64())).collect();
        let mut worst = 0f64;
        for (i, (ci, ui)) in cells.iter().enumerate() {
            for (a, b) in ci.edges() {
                for s in 1..16 {
                    let t = s as f64 / 16.0;
                    let (x, y) = (a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
                    for (j, (cj, uj)) in cells.iter().enumerate() {
                        if i != j && on_boundary(cj, x, y) {
                            worst = worst.max((ui.eval(&x, &y) - uj.eval(&x, &y)).abs());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest `|u|` over 32 samples per edge of `region`, using every cell touching the sample.
    pub fn boundary_residual(&self, region: &PolygonRegion<T>) -> f64 {
        let cells: Vec<(PolygonRegion<f64>, Poly2<f64>)> =
            self.cells.iter().map(|(c, u)| (c.to_f64(), u.to_f64())).collect();
        let r = region.to_f64();
        let mut worst = 0f64;
        for (a, b) in r.edges() {
            for s in 0..32 {
                let t = s as f64 / 32.0;
                let (x, y) = (a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
                for (c, u) in &cells {
                    if on_boundary(c, x, y) {
                        worst = worst.max(u.eval(&x, &y).abs());
                    }
                }
            }
        }
        worst
    }
}

fn on_boundary(poly: &PolygonRegion<f64>, x: f64, y: f64) -> bool {
    poly.edges().any(|(a, b)| {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let len2 = dx * dx + dy * dy;
        let t = ((x - a.x) * dx + (y - a.y) * dy) / len2;
        if !(-1e-12..=1.0 + 1e-12).contains(&t) {
            return false;
        }
        let (px, py) = (a.x + t * dx - x, a.y + t * dy - y);
        px * px + py * py < 1e-24 * (1.0 + len2)
    })
}

/// `4(∫u)²/∫|∇u|²` and its two integrals.
#[derive(Clone, Debug)]
pub struct RayleighQuotient<T: Scalar> {
    pub integral: T,
    pub dirichlet: T,
    pub value: T,
}

/// Exact Rayleigh quotient; checks that the cells tile `region` by area.
pub fn rayleigh_quotient<T: Scalar>(
    u: &PiecewisePolynomial2D<T>,
    region: &PolygonRegion<T>,
) -> Result<RayleighQuotient<T>> {
    let (area, _) = area_and_centroid(region);
    let cell_area = u.cells.iter().fold(T::zero(), |acc, (c, _)| acc + area_and_centroid(c).0);
    let mismatch = (cell_area - area.clone()).abs();
    let tol = if T::EXACT { T::zero() } else { T::eps(40, region.prec_bits()) * area };
    if mismatch > tol {
        return Err(Error::DegenerateTrial("cells do not cover the region".into()));
    }
    let integral = u.integral();
    let dirichlet = u.dirichlet();
    if dirichlet <= T::zero() {
        return Err(Error::DegenerateTrial("trial function is constant".into()));
    }
    let value = T::from_i64(4) * integral.clone() * integral.clone() / dirichlet.clone();
    Ok(RayleighQuotient { integral, dirichlet, value })
}

/// Boundary samples above this are flagged on the estimate.
pub const BOUNDARY_TOL: f64 = 1e-9;

pub fn rayleigh_lower<T: Scalar>(u: &PiecewisePolynomial2D<T>, region: &PolygonRegion<T>) -> Result<RigidityEstimate> {
    let q = rayleigh_quotient(u, region)?;
    let degree = u.cells.iter().map(|(_, p)| p.total_degree()).max().unwrap_or(0);
    let mut est = RigidityEstimate::new(q.value.to_f64(), BoundDirection::Lower, Method::Lower, degree)
        .with_precision(region.precision());
    if T::EXACT {
        est = est.with_exact(q.value.to_string());
    }
    if u.boundary_residual(region) > BOUNDARY_TOL {
        est = est.flag("trial function does not vanish on the boundary");
    }
    if u.continuity_residual() > BOUNDARY_TOL {
        est = est.flag("trial function is discontinuous across cells");
    }
    Ok(est)
}

fn check_house_param<T: Scalar>(a: &T) -> Result<()> {
    let half = T::from_rational(&BigRational::new(1.into(), 2.into()), a.precision().unwrap_or(0));
    if *a < T::zero() || *a > half {
        return Err(Error::Domain(format!("house parameter a = {a} must lie in [0, 1/2]")));
    }
    Ok(())
}

/// The house `(-1,0), (1,0), (1,a), (0,1-a), (-1,a)` and its halves `x <= 0`, `x >= 0`.
fn house_cells<T: Scalar>(a: &T) -> Result<(PolygonRegion<T>, PolygonRegion<T>, PolygonRegion<T>)> {
    let one = T::one();
    let zero = T::zero();
    let p = |x: &T, y: &T| Point::new(x.clone(), y.clone());
    let top = one.clone() - a.clone();
    let full = PolygonRegion::new(dedup_cyclic(vec![
        p(&-one.clone(), &zero),
        p(&one, &zero),
        p(&one, a),
        p(&zero, &top),
        p(&-one.clone(), a),
    ]))?;
    let left = PolygonRegion::new(dedup_cyclic(vec![
        p(&-one.clone(), &zero),
        p(&zero, &zero),
        p(&zero, &top),
        p(&-one.clone(), a),
    ]))?;
    let right = PolygonRegion::new(dedup_cyclic(vec![p(&zero, &zero), p(&one, &zero), p(&one, a), p(&zero, &top)]))?;
    Ok((full, left, right))
}

/// `y² − h²` where `h = 1 − a ∓ (1−2a)x` is the roof height on the right (`sign = -1`) or left (`+1`).
fn roof_factor<T: Scalar>(a: &T, sign: i64) -> Poly2<T> {
    let one = T::one();
    let two = T::from_i64(2);
    let slope = (one.clone() - two * a.clone()) * T::from_i64(sign);
    let h = Poly2::constant(one - a.clone()).add(&Poly2::x().scale(&slope));
    Poly2::y().pow(2).sub(&h.mul(&h))
}

/// `1 − x^k`.
fn side_factor<T: Scalar>(k: u32) -> Poly2<T> {
    Poly2::constant(T::one()).sub(&Poly2::x().pow(k))
}

/// The three house trial functions, `u_3` split along `x = 0`.
///
/// In `u_3` each half carries the roof factor of its own half, so the function vanishes on both roof edges.
pub fn house_trials<T: Scalar>(a: &T) -> Result<[PiecewisePolynomial2D<T>; 3]> {
    check_house_param(a)?;
    let (full, left, right) = house_cells(a)?;
    let y = Poly2::<T>::y();
    let one = Poly2::constant(T::one());
    let two = Poly2::constant(T::from_i64(2));
    let (r_right, r_left) = (roof_factor(a, -1), roof_factor(a, 1));
    let roofs = r_right.mul(&r_left);
    let u1 = y.mul(&two.sub(&y)).mul(&side_factor(8)).mul(&roofs);
    let u2 = y.mul(&side_factor(4)).mul(&roofs);
    let base3 = y.mul(&one.sub(&y)).mul(&side_factor(4));
    let u3 = PiecewisePolynomial2D::new(vec![(left, base3.mul(&r_left)), (right, base3.mul(&r_right))])?;
    Ok([PiecewisePolynomial2D::single(full.clone(), u1), PiecewisePolynomial2D::single(full, u2), u3])
}

/// Best of the three house bounds.
#[derive(Clone, Debug)]
pub struct HouseLower {
    pub estimate: RigidityEstimate,
    /// Index of the winning trial, 0-based (`u_1` is 0).
    pub best: usize,
    pub values: [f64; 3],
    /// All three bounds, flagged `u1`, `u2`, `u3`.
    pub trials: Vec<RigidityEstimate>,
}

pub fn house_lower<T: Scalar>(a: &T) -> Result<HouseLower> {
    let trials = house_trials(a)?;
    let (full, _, _) = house_cells(a)?;
    let mut ests = Vec::with_capacity(3);
    let mut exact = Vec::with_capacity(3);
    for u in &trials {
        let q = rayleigh_quotient(u, &full)?;
        exact.push(q.value.clone());
        ests.push(rayleigh_lower(u, &full)?.flag(format!("u{}", ests.len() + 1)));
    }
    let best = (0..3).fold(0, |b, i| if exact[i] > exact[b] { i } else { b });
    let values = [ests[0].value, ests[1].value, ests[2].value];
    let estimate = ests[best].clone();
    Ok(HouseLower { estimate, best, values, trials: ests })
}

/// Values of `a` in `[0, 1/2]` where the best house trial changes, located by bisection to `tol`.
pub fn house_crossovers(tol: f64) -> Result<Vec<f64>> {
    let best_at = |a: f64| -> Result<usize> { Ok(house_lower(&a)?.best) };
    let mut out = vec![];
    let grid: Vec<f64> = (0..=50).map(|k| 0.5 * k as f64 / 50.0).collect();
    let mut prev = best_at(grid[0])?;
    for w in grid.windows(2) {
        let b = best_at(w[1])?;
        if b != prev {
            let (mut lo, mut hi) = (w[0], w[1]);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if best_at(mid)? == prev {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
            prev = b;
        }
    }
    Ok(out)
}

/// Regular `n`-gon inscribed in the unit circle with `u = 1 − x² − y²`, the disk's maximizer.
pub fn disk_trial(
    n: usize,
    prec: u32,
) -> Result<(PolygonRegion<crate::mpfloat::MpFloat>, PiecewisePolynomial2D<crate::mpfloat::MpFloat>)> {
    use crate::mpfloat::MpFloat;
    let poly = crate::regions::regular_polygon::<MpFloat>(n, prec)?;
    let one = Poly2::constant(MpFloat::from_f64(1.0, prec));
    let u = one.sub(&Poly2::x().pow(2)).sub(&Poly2::y().pow(2));
    Ok((poly.clone(), PiecewisePolynomial2D::single(poly, u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::triangle_monomial_moment;
    use crate::scalar::rat;
    use num_traits::Zero;

    type Q = BigRational;

    #[test]
    fn poly_arithmetic() {
        let x = Poly2::<Q>::x();
        let y = Poly2::<Q>::y();
        let p = x.add(&y).pow(2);
        assert_eq!(p.coeff(1, 1), rat(2, 1));
        assert_eq!(p.dx().coeff(0, 1), rat(2, 1));
        assert_eq!(p.eval(&rat(1, 2), &rat(1, 3)), rat(25, 36));
        assert_eq!(p.sub(&p), Poly2::zero());
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn integration_matches_triangle_moments() {
        let tri =
            [Point::new(rat(0, 1), rat(0, 1)), Point::new(rat(2, 1), rat(1, 3)), Point::new(rat(1, 2), rat(3, 2))];
        let cell = PolygonRegion::new(tri.to_vec()).unwrap();
        for i in 0..5 {
            for j in 0..5 - i {
                let mut c = vec![vec![Q::zero(); j + 1]; i + 1];
                c[i][j] = rat(1, 1);
                assert_eq!(Poly2::new(c).integrate(&cell), triangle_monomial_moment(&tri, i, j));
            }
        }
    }

    #[test]
    fn trial_basics() {
        let a = rat(1, 4);
        let [u1, u2, u3] = house_trials(&a).unwrap();
        assert_eq!(u1.cells()[0].1.eval(&rat(0, 1), &rat(0, 1)), rat(0, 1));
        let (full, _, _) = house_cells(&a).unwrap();
        for u in [&u1, &u2, &u3] {
            assert!(u.boundary_residual(&full) < 1e-14);
        }
        assert!(u3.continuity_residual() < 1e-14);
        // both roof edges for u2, sampled exactly
        let roof = |x: Q| rat(3, 4) - rat(1, 2) * x;
        for x in [rat(0, 1), rat(1, 3), rat(1, 1)] {
            let y = roof(x.clone());
            assert!(u2.cells()[0].1.eval(&x, &y).is_zero());
            assert!(u2.cells()[0].1.eval(&-x.clone(), &y).is_zero());
        }
        assert!(house_trials(&rat(3, 4)).is_err());
        assert!(house_trials(&rat(-1, 4)).is_err());
    }

    #[test]
    fn scale_invariance() {
        let a = rat(1, 3);
        let [u1, _, _] = house_trials(&a).unwrap();
        let (full, _, _) = house_cells(&a).unwrap();
        let q1 = rayleigh_quotient(&u1, &full).unwrap().value;
        let scaled = PiecewisePolynomial2D::single(full.clone(), u1.cells()[0].1.scale(&rat(-7, 3)));
        assert_eq!(rayleigh_quotient(&scaled, &full).unwrap().value, q1);
    }

    #[test]
    fn lower_below_upper_and_references() {
        let e = house_lower(&rat(1, 2)).unwrap();
        assert!(e.estimate.value <= 0.0702032 + 1e-6);
        assert_eq!(e.estimate.direction, BoundDirection::Lower);
        let e0 = house_lower(&rat(0, 1)).unwrap();
        assert!(e0.estimate.value <= 0.1043586);
        assert!(e0.estimate.value > 0.09);
    }

    #[test]
    fn disk_limit() {
        let (poly, u) = disk_trial(256, 128).unwrap();
        let q = rayleigh_quotient(&u, &poly).unwrap().value.to_f64();
        assert!((q - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
        // u is positive on the polygon's edges, which the estimate reports
        assert!(!rayleigh_lower(&u, &poly).unwrap().flags.is_empty());
    }

    #[test]
    fn degenerate_trial() {
        let (full, _, _) = house_cells(&rat(1, 4)).unwrap();
        let u = PiecewisePolynomial2D::single(full.clone(), Poly2::constant(rat(1, 1)));
        assert!(matches!(rayleigh_quotient(&u, &full), Err(Error::DegenerateTrial(_))));
        let e = rayleigh_lower(&PiecewisePolynomial2D::single(full.clone(), Poly2::y()), &full);
        assert!(e.unwrap().flags.iter().any(|f| f.contains("boundary")));
    }
}
