//! Bergman polynomials from a moment table, the projection of `z̄` onto polynomials
//! of degree at most `N`, and the resulting upper bounds `ρ_N`.

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::conformal::families::neumann_oval_moment_table;
use crate::error::{Error, Result};
use crate::estimate::{BoundDirection, Method, RigidityEstimate};
use crate::linalg::{determinant, ldl_hermitian, unit_lower_inverse, Matrix};
use crate::moments::{moment_table, MomentTable, RealMoments};
use crate::mpfloat::MpFloat;
use crate::poly::ComplexPolynomial;
use crate::regions::RegionSpec;
use crate::scalar::{conj, cx, cx_real, norm_sqr, Cx, Scalar};

pub const START_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 4096;

/// Monic Bergman polynomials `P_0..P_N` with `‖P_n‖²`.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis<T: Scalar> {
    monic: Vec<ComplexPolynomial<T>>,
    norms_sq: Vec<T>,
    precision: Option<u32>,
}

impl<T: Scalar> OrthonormalBasis<T> {
    pub fn degree(&self) -> usize {
        self.monic.len() - 1
    }

    pub fn monic(&self, n: usize) -> &ComplexPolynomial<T> {
        &self.monic[n]
    }

    pub fn norm_sq(&self, n: usize) -> &T {
        &self.norms_sq[n]
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    /// `p_n = P_n / ‖P_n‖`; `None` for exact fields where the norm is irrational.
    pub fn orthonormal(&self, n: usize) -> Option<ComplexPolynomial<T>> {
        let norm = self.norms_sq[n].sqrt()?;
        Some(self.monic[n].scale(&cx_real(T::one() / norm)))
    }

    /// Largest `|⟨P_m,P_n⟩/(‖P_m‖‖P_n‖) − δ_mn|`, measured through the table.
    pub fn gram_residual(&self, table: &MomentTable<T>) -> f64 {
        let n = self.degree();
        let mut worst = 0f64;
        for i in 0..=n {
            for j in 0..=i {
                let ip = inner(table, &self.monic[i], &self.monic[j]);
                let scale = (self.norms_sq[i].to_f64() * self.norms_sq[j].to_f64()).sqrt();
                let target = if i == j { 1.0 } else { 0.0 };
                let re = ip.re.to_f64() / scale - target;
                let im = ip.im.to_f64() / scale;
                worst = worst.max(re.hypot(im));
            }
        }
        worst
    }
}

/// `⟨f, g⟩ = Σ f_i conj(g_j) c_{i,j}`.
pub fn inner<T: Scalar>(table: &MomentTable<T>, f: &ComplexPolynomial<T>, g: &ComplexPolynomial<T>) -> Cx<T> {
    let mut s = Cx::<T>::zero();
    for (i, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            s = s + a.clone() * conj(b) * table.get(i, j).clone();
        }
    }
    s
}

/// Relative pivot floor `2^(-prec/2)` for floating fields, none for exact ones.
fn pivot_floor<T: Scalar>(table: &MomentTable<T>) -> Option<T> {
    if T::EXACT {
        return None;
    }
    let prec = table.precision().unwrap_or(53);
    Some(T::eps(prec / 2, prec))
}

/// Factors the Gram matrix `(c_{j,k})_{j,k<=N}` as `L D L^H`; row `n` of `L^{-1}` holds `P_n`.
pub fn orthonormalize<T: Scalar>(table: &MomentTable<T>, n: usize) -> Result<OrthonormalBasis<T>> {
    if n > table.degree() {
        return Err(Error::Precondition(format!("degree {n} exceeds the table's cap {}", table.degree())));
    }
    let gram = table.gram(n);
    let floor = pivot_floor(table);
    let ldl = ldl_hermitian(&gram, floor.as_ref())
        .map_err(|k| Error::PrecisionExhausted { degree: k, bits: table.precision().unwrap_or(0) })?;
    let b = unit_lower_inverse(&ldl.l);
    let monic = (0..=n).map(|i| ComplexPolynomial::new(b[i][..=i].to_vec())).collect();
    Ok(OrthonormalBasis { monic, norms_sq: ldl.d, precision: table.precision() })
}

/// Determinant data for `R_n`, the `(n+1)×(n+1)` determinant whose last row is `1, z, …, z^n`.
#[derive(Clone, Debug)]
pub struct DeterminantForm<T: Scalar> {
    /// `R_n / σ_n`.
    pub monic: ComplexPolynomial<T>,
    /// Leading coefficient of `R_n`, the Gram determinant of degree `n-1`.
    pub sigma: T,
    pub zbar_inner: Cx<T>,
    /// `⟨w^n, R_n⟩`, equal to `σ_{n+1}`.
    pub wn_inner: T,
}

impl<T: Scalar> DeterminantForm<T> {
    /// `|⟨z̄,R_n⟩|² / (σ_n ⟨w^n,R_n⟩)`.
    pub fn d_sq(&self) -> T {
        norm_sqr(&self.zbar_inner) / (self.sigma.clone() * self.wn_inner.clone())
    }
}

fn moment_rows<T: Scalar>(table: &MomentTable<T>, n: usize, last: Vec<Cx<T>>) -> Matrix<T> {
    let mut m: Matrix<T> = (0..n).map(|l| (0..=n).map(|k| table.get(k, l).clone()).collect()).collect();
    m.push(last);
    m
}

pub fn monic_via_determinant<T: Scalar>(table: &MomentTable<T>, n: usize) -> Result<DeterminantForm<T>> {
    if n == 0 || n > table.degree() {
        return Err(Error::Precondition(format!("determinant route needs 1 <= n <= {}", table.degree())));
    }
    let bits = table.precision().unwrap_or(0);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        // cofactor of the last-row entry z^k
        let minor: Matrix<T> =
            (0..n).map(|l| (0..=n).filter(|&c| c != k).map(|c| table.get(c, l).clone()).collect()).collect();
        let d = determinant(minor);
        coeffs.push(if (n + k).is_multiple_of(2) { d } else { -d });
    }
    let sigma = coeffs[n].re.clone();
    let singular = match pivot_floor(table) {
        None => sigma.is_zero(),
        Some(f) => sigma <= T::zero() || sigma.abs() < f.clone() * f,
    };
    if singular {
        return Err(Error::PrecisionExhausted { degree: n, bits });
    }
    let zbar = determinant(moment_rows(table, n, (0..=n).map(|k| table.get(k + 1, 0).clone()).collect()));
    let wn = determinant(moment_rows(table, n, (0..=n).map(|k| table.get(k, n).clone()).collect()));
    let inv = cx_real(T::one() / sigma.clone());
    Ok(DeterminantForm {
        monic: ComplexPolynomial::new(coeffs.into_iter().map(|c| c * inv.clone()).collect()),
        sigma,
        zbar_inner: conj(&zbar),
        wn_inner: wn.re,
    })
}

/// Projection of `z̄` onto polynomials of degree at most `N`.
#[derive(Clone, Debug)]
pub struct ProjectionResult<T: Scalar> {
    /// `⟨z̄, P_n⟩` for the monic polynomials.
    pub e: Vec<Cx<T>>,
    /// `|d_n|² = |⟨z̄, p_n⟩|²`.
    pub d_sq: Vec<T>,
    pub q: ComplexPolynomial<T>,
    /// `ρ_0, …, ρ_N`.
    pub rho: Vec<T>,
    pub precision: Option<u32>,
}

impl<T: Scalar> ProjectionResult<T> {
    pub fn degree(&self) -> usize {
        self.rho.len() - 1
    }

    pub fn rho_n(&self) -> &T {
        self.rho.last().expect("nonempty")
    }

    /// `d_n = ⟨z̄, p_n⟩`, available when the norms have square roots.
    pub fn d(&self, basis: &OrthonormalBasis<T>, n: usize) -> Option<Cx<T>> {
        let norm = basis.norm_sq(n).sqrt()?;
        Some(self.e[n].clone() / cx_real(norm))
    }

    pub fn estimate(&self) -> RigidityEstimate {
        let mut est =
            RigidityEstimate::new(self.rho_n().to_f64(), BoundDirection::Upper, Method::Moment, self.degree())
                .with_precision(self.precision);
        if T::EXACT {
            est = est.with_exact(self.rho_n().to_string());
        }
        est
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree(),
            "exact": T::EXACT,
            "precision": self.precision,
            "rho": self.rho_n().to_string(),
            "rho_sequence": self.rho.iter().map(|r| r.to_f64()).collect::<Vec<_>>(),
            "d_abs": self.d_sq.iter().map(|d| d.to_f64().max(0.0).sqrt()).collect::<Vec<_>>(),
            "q": self.q.to_string_pairs(),
        })
    }
}

pub fn project_zbar<T: Scalar>(table: &MomentTable<T>, basis: &OrthonormalBasis<T>) -> ProjectionResult<T> {
    let n = basis.degree();
    let c11 = table.get(1, 1).re.clone();
    let mut e = Vec::with_capacity(n + 1);
    let mut d_sq = Vec::with_capacity(n + 1);
    let mut rho = Vec::with_capacity(n + 1);
    let mut q = ComplexPolynomial::zero();
    let mut acc = c11;
    for k in 0..=n {
        let p = basis.monic(k);
        let mut s = Cx::<T>::zero();
        for (j, b) in p.coeffs().iter().enumerate() {
            s = s + b.clone() * table.get(j + 1, 0).clone();
        }
        let ek = conj(&s);
        let dk = norm_sqr(&ek) / basis.norm_sq(k).clone();
        q = &q + &p.scale(&(ek.clone() / cx_real(basis.norm_sq(k).clone())));
        acc = acc - dk.clone();
        e.push(ek);
        d_sq.push(dk);
        rho.push(acc.clone());
    }
    ProjectionResult { e, d_sq, q, rho, precision: basis.precision() }
}

/// Orthonormalizes and projects in one call.
pub fn rho_sequence<T: Scalar>(table: &MomentTable<T>, n: usize) -> Result<ProjectionResult<T>> {
    let basis = orthonormalize(table, n)?;
    Ok(project_zbar(table, &basis))
}

/// Degree-one bound `4(I20 I02 − I11²)/(I20 + I02)` and `α = c02/c11`.
pub fn rho1_closed<T: Scalar>(i20: &T, i02: &T, i11: &T) -> Result<(T, Cx<T>)> {
    let polar = i20.clone() + i02.clone();
    if polar.is_zero() {
        return Err(Error::DegenerateRegion("zero polar moment".into()));
    }
    let four = T::from_i64(4);
    let rho = four * (i20.clone() * i02.clone() - i11.clone() * i11.clone()) / polar.clone();
    let two = T::from_i64(2);
    let c02 = cx(i20.clone() - i02.clone(), -(two * i11.clone()));
    Ok((rho, c02 / cx_real(polar)))
}

/// Tolerance for "vanishing" normalization moments: zero when exact, else `2^(-prec/2)` times their scale.
fn normalization_tol<T: Scalar>(m: &RealMoments<T>) -> T {
    if T::EXACT {
        return T::zero();
    }
    let mut scale = T::zero();
    for (a, b) in [(3, 0), (2, 1), (1, 2), (0, 3), (2, 0), (0, 2)] {
        scale = scale + m.get(a, b).abs();
    }
    let prec = m.get(0, 0).precision().unwrap_or(53);
    T::eps(prec / 2, prec) * scale
}

/// Degree-two bound for a region with zero centroid and `I21 = 0`, from real moments of order 4.
pub fn rho2_closed<T: Scalar>(m: &RealMoments<T>) -> Result<T> {
    if m.order() < 4 {
        return Err(Error::Precondition("rho2 needs moments of order 4".into()));
    }
    let tol = normalization_tol(m);
    for (name, a, b) in [("I10", 1, 0), ("I01", 0, 1), ("I21", 2, 1)] {
        if m.get(a, b).abs() > tol {
            return Err(Error::Precondition(format!("{name} = {} is not zero", m.get(a, b))));
        }
    }
    let g = |a, b| m.get(a, b);
    let (i00, i20, i02, i11) = (g(0, 0), g(2, 0), g(0, 2), g(1, 1));
    let (i30, i12, i03) = (g(3, 0), g(1, 2), g(0, 3));
    let (i40, i22, i04) = (g(4, 0), g(2, 2), g(0, 4));
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let polar = i20.clone() + i02.clone();
    if polar.is_zero() {
        return Err(Error::DegenerateRegion("zero polar moment".into()));
    }
    let first = (i20.clone() * i02.clone() - i11.clone() * i11.clone()) / polar.clone();
    let u =
        i02.clone() * (i30.clone() - i12.clone()) - two.clone() * i20.clone() * i12.clone() + i11.clone() * i03.clone();
    let v = i20.clone() * i03.clone() + i11.clone() * (i30.clone() + i12.clone());
    let s = i12.clone() + i30.clone();
    let inner = i40 + two * i22 + i04 - (s.clone() * s + i03.clone() * i03) / polar.clone();
    let diff = i20 - i02;
    let den = polar.clone() * polar * (i00.clone() * inner - diff.clone() * diff - four.clone() * i11.clone() * i11);
    if den.is_zero() {
        return Err(Error::DegenerateRegion("degree-two Gram determinant vanishes".into()));
    }
    Ok(four * (first - i00 * (u.clone() * u + v.clone() * v) / den))
}

/// The same bound from complex moments of a centered region.
pub fn rho2_closed_c<T: Scalar>(t: &MomentTable<T>) -> Result<T> {
    if t.degree() < 2 {
        return Err(Error::Precondition("rho2 needs a table of degree 2".into()));
    }
    let c = |i, j| t.get(i, j).clone();
    let c00 = c(0, 0).re;
    let c11 = c(1, 1).re;
    let c22 = c(2, 2).re;
    if c11.is_zero() {
        return Err(Error::DegenerateRegion("zero polar moment".into()));
    }
    let c11c = cx_real(c11.clone());
    let first = c11.clone() - norm_sqr(&c(0, 2)) / c11.clone();
    let num = norm_sqr(&(c(0, 3) - c(1, 2) * c(0, 2) / c11c));
    let den = c00.clone() * c11.clone() * c22 - c00.clone() * norm_sqr(&c(2, 1)) - c11.clone() * norm_sqr(&c(2, 0));
    if den.is_zero() {
        return Err(Error::DegenerateRegion("degree-two Gram determinant vanishes".into()));
    }
    Ok(first - c00 * c11 * num / den)
}

/// Runs `f` at 256 bits, doubling on precision exhaustion up to 4096. Returns the bits used.
pub fn with_precision_retry<R>(start: u32, mut f: impl FnMut(u32) -> Result<R>) -> Result<(R, u32)> {
    let mut bits = start.max(64);
    loop {
        match f(bits) {
            Err(Error::PrecisionExhausted { degree, .. }) => {
                if bits >= MAX_PRECISION {
                    return Err(Error::PrecisionExhausted { degree, bits });
                }
                bits = (bits * 2).min(MAX_PRECISION);
            }
            other => return other.map(|r| (r, bits)),
        }
    }
}

/// Moment table for any family with a moment route, including Neumann's oval.
pub fn table_for<T: Scalar>(spec: &RegionSpec, degree: usize, prec: u32) -> Result<MomentTable<T>> {
    match spec {
        RegionSpec::NeumannOval { a } => neumann_oval_moment_table(a, degree, prec),
        other => moment_table(other, degree, prec),
    }
}

/// `ρ_N` for a region: exact rationals when every coordinate is rational, otherwise
/// multiprecision with automatic precision doubling from `prec`.
pub fn rho_moment(spec: &RegionSpec, degree: usize, prec: u32) -> Result<RigidityEstimate> {
    spec.validate()?;
    if spec.is_exact() {
        let table: MomentTable<BigRational> = table_for(spec, degree, 0)?;
        return Ok(rho_sequence(&table, degree)?.estimate());
    }
    let (proj, _) = with_precision_retry(prec, |bits| {
        let table: MomentTable<MpFloat> = table_for(spec, degree, bits)?;
        rho_sequence(&table, degree)
    })?;
    Ok(proj.estimate())
}

/// Floating `ρ_0..ρ_N` for a region, with the precision that succeeded.
pub fn rho_moment_sequence(spec: &RegionSpec, degree: usize, prec: u32) -> Result<(Vec<f64>, u32)> {
    spec.validate()?;
    let (proj, bits) = with_precision_retry(prec, |bits| {
        let table: MomentTable<MpFloat> = table_for(spec, degree, bits)?;
        rho_sequence(&table, degree)
    })?;
    Ok((proj.rho.iter().map(|r| r.to_f64()).collect(), bits))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceProbe {
    /// `(n, ρ_n − ρ)`.
    pub gaps: Vec<(usize, f64)>,
    /// `exp` of the least-squares slope of `ln gap` against `n`.
    pub ratio: Option<f64>,
}

/// Geometric ratio fitted to the gaps with `lo <= n <= hi` that exceed `floor`.
pub fn fit_ratio(gaps: &[(usize, f64)], lo: usize, hi: usize, floor: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        gaps.iter().filter(|(n, g)| *n >= lo && *n <= hi && *g > floor).map(|(n, g)| (*n as f64, g.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some((sxy / sxx).exp())
}

/// Gaps `ρ_n − ρ` for `n <= n_max` and the ratio fitted over the final third of the range.
pub fn convergence_probe(spec: &RegionSpec, n_max: usize, rho_true: f64, prec: u32) -> Result<ConvergenceProbe> {
    let (rho, bits) = rho_moment_sequence(spec, n_max, prec)?;
    let gaps: Vec<(usize, f64)> = rho.iter().enumerate().map(|(n, r)| (n, r - rho_true)).collect();
    let floor = rho_true.abs().max(1.0) * 2f64.powi(-((bits / 2).min(1000) as i32)).max(1e-300);
    let floor = floor.max(rho_true.abs() * 1e-15);
    let lo = n_max - n_max / 3;
    Ok(ConvergenceProbe { ratio: fit_ratio(&gaps, lo, n_max, floor), gaps })
}

/// Exact `ρ_N` as a rational, for exact regions.
pub fn rho_exact(spec: &RegionSpec, degree: usize) -> Result<BigRational> {
    let table: MomentTable<BigRational> = table_for(spec, degree, 0)?;
    Ok(rho_sequence(&table, degree)?.rho_n().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{moment_table_of_polygon, polygon_real_moments};
    use crate::param::Param;
    use crate::regions::{realize_polygon, rotate_to_zero_i21, translate_to_zero_centroid, Point, PolygonRegion};
    use crate::scalar::rat;

    type Q = BigRational;

    fn symmetric_triangle() -> PolygonRegion<Q> {
        // legs 1, centroid 0: the standard triangle rotated by 45 degrees
        PolygonRegion::new(vec![
            Point::new(rat(-1, 3), rat(-1, 3)),
            Point::new(rat(2, 3), rat(-1, 3)),
            Point::new(rat(-1, 3), rat(2, 3)),
        ])
        .unwrap()
    }

    fn house(a: BigRational) -> RegionSpec {
        RegionSpec::House { a: Param::rational(a) }
    }

    #[test]
    fn disk_has_monomial_basis() {
        let t: MomentTable<MpFloat> = crate::moments::unit_disk_table(6, 256).unwrap();
        let b = orthonormalize(&t, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(b.monic(n), &ComplexPolynomial::monomial(n));
            let expect = (n as f64 + 1.0) / std::f64::consts::PI;
            let p = b.orthonormal(n).unwrap();
            assert!((p.coeff(n).re.to_f64() - expect.sqrt()).abs() < 1e-15);
        }
        let proj = project_zbar(&t, &b);
        for d in &proj.d_sq {
            assert!(d.is_zero());
        }
        assert!((proj.rho_n().to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn square_monic_degree_one_is_z() {
        let t: MomentTable<Q> =
            moment_table(&RegionSpec::Rectangle { a: Param::int(1), b: Param::int(1) }, 3, 0).unwrap();
        let b = orthonormalize(&t, 3).unwrap();
        assert_eq!(b.monic(1), &ComplexPolynomial::monomial(1));
        assert_eq!(monic_via_determinant(&t, 1).unwrap().monic, ComplexPolynomial::monomial(1));
    }

    #[test]
    fn symmetric_triangle_bounds() {
        let t = moment_table_of_polygon(&symmetric_triangle(), 2);
        let p = rho_sequence(&t, 2).unwrap();
        assert_eq!(p.rho[1], rat(1, 24));
        assert_eq!(p.rho[2], rat(11, 408));
    }

    #[test]
    fn closed_forms_on_symmetric_triangle() {
        // the axis-symmetric orientation has irrational vertices; evaluate at high precision
        let s = MpFloat::from_f64(2.0, 256).sqrt();
        let three = MpFloat::from_f64(3.0, 256);
        let half = MpFloat::from_f64(0.5, 256);
        let x0 = -(s.clone() / three.clone());
        let x1 = half.clone() * s.clone() + x0.clone();
        let y1 = half * s;
        let zero = MpFloat::zero_with(256);
        let tri =
            PolygonRegion::new(vec![Point::new(x0, zero), Point::new(x1.clone(), -y1.clone()), Point::new(x1, y1)])
                .unwrap();
        let m = polygon_real_moments(&tri, 4);
        let (r1, _) = rho1_closed(&m.get(2, 0), &m.get(0, 2), &m.get(1, 1)).unwrap();
        assert!((r1.to_f64() - 1.0 / 24.0).abs() < 1e-30);
        let r2 = rho2_closed(&m).unwrap();
        assert!((r2.to_f64() - 11.0 / 408.0).abs() < 1e-30);
        let t = moment_table_of_polygon(&tri, 2);
        assert!((rho2_closed_c(&t).unwrap().to_f64() - 11.0 / 408.0).abs() < 1e-30);
    }

    #[test]
    fn rho1_rectangle_and_ellipse() {
        // rectangle a×b: I20 = a³b/12, I02 = ab³/12
        let (a, b) = (rat(3, 1), rat(1, 2));
        let i20 = &a * &a * &a * &b / rat(12, 1);
        let i02 = &a * &b * &b * &b / rat(12, 1);
        let (r, _) = rho1_closed(&i20, &i02, &rat(0, 1)).unwrap();
        let a3b3 = &a * &a * &a * &b * &b * &b;
        assert_eq!(r, &a3b3 / (rat(3, 1) * (&a * &a + &b * &b)));
        // ellipse with semiaxes p, q: I20 = π p³ q / 4
        let (p, q) = (2.0f64, 0.5f64);
        let pi = std::f64::consts::PI;
        let (r, alpha) = rho1_closed(&(pi * p.powi(3) * q / 4.0), &(pi * p * q.powi(3) / 4.0), &0.0).unwrap();
        assert!((r - pi * p.powi(3) * q.powi(3) / (p * p + q * q)).abs() < 1e-12);
        assert!((alpha.re - (p * p - q * q) / (p * p + q * q)).abs() < 1e-12);
        assert!(rho1_closed(&rat(0, 1), &rat(0, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn rho2_matches_rho1_on_rectangles() {
        for (a, b) in [(rat(2, 1), rat(1, 2)), (rat(1, 1), rat(1, 1)), (rat(5, 3), rat(1, 7))] {
            let spec = RegionSpec::Rectangle { a: Param::rational(a), b: Param::rational(b) };
            let p: PolygonRegion<Q> = realize_polygon(&spec, 0).unwrap();
            let m = polygon_real_moments(&p, 4);
            let (r1, _) = rho1_closed(&m.get(2, 0), &m.get(0, 2), &m.get(1, 1)).unwrap();
            assert_eq!(rho2_closed(&m).unwrap(), r1);
            let t = moment_table_of_polygon(&p, 2);
            assert_eq!(rho2_closed_c(&t).unwrap(), r1);
        }
    }

    #[test]
    fn rho2_checks_normalization() {
        let p: PolygonRegion<Q> = realize_polygon(&house(rat(1, 4)), 0).unwrap();
        assert!(matches!(rho2_closed(&polygon_real_moments(&p, 4)), Err(Error::Precondition(_))));
    }

    #[test]
    fn rho2_forms_agree_with_pipeline_on_house() {
        let p: PolygonRegion<MpFloat> = realize_polygon(&house(rat(1, 4)), 256).unwrap();
        let (r, _) = rotate_to_zero_i21(&translate_to_zero_centroid(&p)).unwrap();
        let m = polygon_real_moments(&r, 4);
        let i_form = rho2_closed(&m).unwrap().to_f64();
        let t = moment_table_of_polygon(&r, 2);
        let c_form = rho2_closed_c(&t).unwrap().to_f64();
        let pipeline = rho_sequence(&t, 2).unwrap().rho[2].to_f64();
        assert!((i_form - pipeline).abs() < 1e-40 && (c_form - pipeline).abs() < 1e-40);
    }

    #[test]
    fn determinant_route_agrees() {
        let specs = [house(rat(1, 4)), RegionSpec::EquilateralTriangle, house(rat(0, 1))];
        for spec in specs {
            let t: MomentTable<MpFloat> = moment_table(&spec, 6, 256).unwrap();
            let b = orthonormalize(&t, 6).unwrap();
            let proj = project_zbar(&t, &b);
            for n in 1..=6 {
                let det = monic_via_determinant(&t, n).unwrap();
                for k in 0..=n {
                    let d = det.monic.coeff(k) - b.monic(n).coeff(k);
                    assert!(norm_sqr(&d).to_f64() < 1e-80, "{spec} n={n} k={k}");
                }
                let rel = (det.d_sq().to_f64() - proj.d_sq[n].to_f64()).abs() / (1e-300 + proj.d_sq[n].to_f64().abs());
                assert!(rel < 1e-30 || proj.d_sq[n].to_f64().abs() < 1e-60, "{spec} n={n}");
            }
        }
    }

    #[test]
    fn determinant_route_exact() {
        let t: MomentTable<Q> = moment_table(&house(rat(1, 4)), 4, 0).unwrap();
        let b = orthonormalize(&t, 4).unwrap();
        let proj = project_zbar(&t, &b);
        for n in 1..=4 {
            let det = monic_via_determinant(&t, n).unwrap();
            assert_eq!(&det.monic, b.monic(n));
            assert_eq!(det.d_sq(), proj.d_sq[n]);
            assert_eq!(det.sigma * b.norm_sq(n).clone(), det.wn_inner);
        }
    }

    #[test]
    fn residual_small() {
        let t: MomentTable<MpFloat> = moment_table(&house(rat(1, 8)), 10, 256).unwrap();
        let b = orthonormalize(&t, 10).unwrap();
        assert!(b.gram_residual(&t) < 2f64.powi(-128));
    }

    #[test]
    fn monotone_and_positive() {
        let t: MomentTable<Q> = moment_table(&house(rat(3, 8)), 6, 0).unwrap();
        let p = rho_sequence(&t, 6).unwrap();
        for w in p.rho.windows(2) {
            assert!(w[1] <= w[0]);
        }
        assert!(p.rho_n() > &rat(0, 1));
    }

    #[test]
    fn equilateral_projection_is_z_squared() {
        let t: MomentTable<MpFloat> = moment_table(&RegionSpec::EquilateralTriangle, 8, 256).unwrap();
        let p = rho_sequence(&t, 8).unwrap();
        for k in 0..=8 {
            let c = p.q.coeff(k);
            let target = if k == 2 { 1.0 } else { 0.0 };
            assert!((c.re.to_f64() - target).abs() < 2f64.powi(-128) && c.im.to_f64().abs() < 2f64.powi(-128));
        }
        let expect = 9.0 * 3f64.sqrt() / 80.0;
        assert!((p.rho_n().to_f64() - expect).abs() < 1e-14);
    }

    #[test]
    fn precision_retry_doubles() {
        let mut seen = vec![];
        let r = with_precision_retry(256, |b| {
            seen.push(b);
            if b < 1024 {
                Err(Error::PrecisionExhausted { degree: 3, bits: b })
            } else {
                Ok(b)
            }
        })
        .unwrap();
        assert_eq!(r, (1024, 1024));
        assert_eq!(seen, vec![256, 512, 1024]);
        let e = with_precision_retry(2048, |b| -> Result<()> { Err(Error::PrecisionExhausted { degree: 9, bits: b }) });
        assert!(matches!(e, Err(Error::PrecisionExhausted { degree: 9, bits: 4096 })));
    }

    #[test]
    fn rho_moment_dispatch() {
        let e = rho_moment(&house(rat(1, 2)), 3, 256).unwrap();
        assert_eq!(e.direction, BoundDirection::Upper);
        assert!(e.exact.is_some());
        let e = rho_moment(&RegionSpec::RightTriangle { a: "sqrt(2)".parse().unwrap() }, 2, 256).unwrap();
        assert_eq!(e.precision, Some(256));
        assert!((e.value - 4.0 * 11.0 / 408.0).abs() < 1e-30);
    }

    #[test]
    fn oval_probe_converges() {
        let spec = RegionSpec::NeumannOval { a: Param::int(1) };
        let probe = convergence_probe(&spec, 12, 3.5 * std::f64::consts::PI, 256).unwrap();
        for w in probe.gaps.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-12);
        }
        assert!(probe.ratio.unwrap() < 1.0);
        let disk = convergence_probe(&RegionSpec::UnitDisk, 6, std::f64::consts::FRAC_PI_2, 256).unwrap();
        assert!(disk.gaps.iter().all(|(_, g)| g.abs() < 1e-15));
        assert_eq!(disk.ratio, None);
    }

    #[test]
    fn fit_ratio_recovers_geometric() {
        let gaps: Vec<(usize, f64)> = (0..30).map(|n| (n, 3.0 * 0.7f64.powi(n as i32))).collect();
        assert!((fit_ratio(&gaps, 10, 29, 0.0).unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(fit_ratio(&gaps, 10, 29, 10.0), None);
    }

    #[test]
    fn json_export() {
        let t: MomentTable<Q> = moment_table(&house(rat(1, 2)), 2, 0).unwrap();
        let v = rho_sequence(&t, 2).unwrap().to_json();
        assert_eq!(v["degree"], 2);
        assert_eq!(v["d_abs"].as_array().unwrap().len(), 3);
    }
}
