//! Real and complex area moments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergeometric::gauss_2f1_terminating;
use crate::param::Param;
use crate::regions::{realize_polygon, Point, PolygonRegion, RegionSpec};
use crate::scalar::{conj, cx, cx_real, i_pow, powi, Cx, Scalar};

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = BigInt::one();
        for j in 1..=i {
            c[i][j] = &c[i - 1][j - 1] + &c[i - 1][j];
        }
    }
    c
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        f[i] = &f[i - 1] * i;
    }
    f
}

/// `I_mn = ∫ x^m y^n dA` for all `m + n <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMoments<T: Scalar> {
    order: usize,
    table: Vec<Vec<T>>,
}

impl<T: Scalar> RealMoments<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Panics when `m + n` exceeds the order.
    pub fn get(&self, m: usize, n: usize) -> T {
        assert!(m + n <= self.order, "moment ({m},{n}) beyond order {}", self.order);
        self.table[m][n].clone()
    }
}

/// Weights `C(m,k) C(n,l) (k+l)! (m+n-k-l)! / (m+n+2)!` of the simplex integral, indexed `[m][n][k][l]`.
struct SimplexWeights<T> {
    w: Vec<Vec<Vec<Vec<T>>>>,
}

impl<T: Scalar> SimplexWeights<T> {
    fn new(order: usize, prec: u32) -> Self {
        let c = binomials(order);
        let f = factorials(order + 2);
        let w = (0..=order)
            .map(|m| {
                (0..=order - m)
                    .map(|n| {
                        (0..=m)
                            .map(|k| {
                                (0..=n)
                                    .map(|l| {
                                        let num = &c[m][k] * &c[n][l] * &f[k + l] * &f[m + n - k - l];
                                        T::from_rational(&BigRational::new(num, f[m + n + 2].clone()), prec)
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SimplexWeights { w }
    }
}

fn power_table<T: Scalar>(x: &T, n: usize) -> Vec<T> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(T::one());
    for i in 1..=n {
        let next = v[i - 1].clone() * x.clone();
        v.push(next);
    }
    v
}

/// Signed moments of the triangle `(0, p, q)`, accumulated into `acc`.
fn accumulate_origin_triangle<T: Scalar>(
    p: (&T, &T),
    q: (&T, &T),
    order: usize,
    weights: &SimplexWeights<T>,
    acc: &mut [Vec<T>],
) {
    let (a, c) = p;
    let (b, d) = q;
    let jac = a.clone() * d.clone() - b.clone() * c.clone();
    if jac.is_zero() {
        return;
    }
    let (pa, pb, pc, pd) = (power_table(a, order), power_table(b, order), power_table(c, order), power_table(d, order));
    for m in 0..=order {
        for n in 0..=order - m {
            let w = &weights.w[m][n];
            let mut s = T::zero();
            for k in 0..=m {
                let xk = pa[k].clone() * pb[m - k].clone();
                if xk.is_zero() {
                    continue;
                }
                let mut inner = T::zero();
                for l in 0..=n {
                    let yl = pc[l].clone() * pd[n - l].clone();
                    if yl.is_zero() {
                        continue;
                    }
                    inner = inner + w[k][l].clone() * yl;
                }
                s = s + xk * inner;
            }
            acc[m][n] = acc[m][n].clone() + jac.clone() * s;
        }
    }
}

/// `∫ x^m y^n` over a triangle, independent of vertex orientation. Degenerate triangles give zero.
pub fn triangle_monomial_moment<T: Scalar>(tri: &[Point<T>; 3], m: usize, n: usize) -> T {
    let order = m + n;
    let weights = SimplexWeights::<T>::new(order, prec_of(tri));
    let mut rel = vec![vec![T::zero(); order + 1]; order + 1];
    let (ax, ay) = (tri[1].x.clone() - tri[0].x.clone(), tri[1].y.clone() - tri[0].y.clone());
    let (bx, by) = (tri[2].x.clone() - tri[0].x.clone(), tri[2].y.clone() - tri[0].y.clone());
    accumulate_origin_triangle((&ax, &ay), (&bx, &by), order, &weights, &mut rel);
    let shifted = shift_moments(&rel, order, &tri[0].x, &tri[0].y);
    let orient = ax * by - bx * ay;
    if orient < T::zero() {
        -shifted[m][n].clone()
    } else {
        shifted[m][n].clone()
    }
}

pub fn is_degenerate_triangle<T: Scalar>(tri: &[Point<T>; 3]) -> bool {
    let (ax, ay) = (tri[1].x.clone() - tri[0].x.clone(), tri[1].y.clone() - tri[0].y.clone());
    let (bx, by) = (tri[2].x.clone() - tri[0].x.clone(), tri[2].y.clone() - tri[0].y.clone());
    (ax * by - bx * ay).is_zero()
}

fn prec_of<T: Scalar>(pts: &[Point<T>]) -> u32 {
    pts.iter().filter_map(|p| p.x.precision().max(p.y.precision())).max().unwrap_or(0)
}

/// Binomial translation: moments about the origin from moments relative to `(x0, y0)`.
fn shift_moments<T: Scalar>(rel: &[Vec<T>], order: usize, x0: &T, y0: &T) -> Vec<Vec<T>> {
    if x0.is_zero() && y0.is_zero() {
        return rel.to_vec();
    }
    let c = binomials(order);
    let px = power_table(x0, order);
    let py = power_table(y0, order);
    let mut out = vec![vec![T::zero(); order + 1]; order + 1];
    for m in 0..=order {
        for n in 0..=order - m {
            let mut s = T::zero();
            for al in 0..=m {
                let cx_ = T::from_bigint(&c[m][al]) * px[m - al].clone();
                if cx_.is_zero() {
                    continue;
                }
                for be in 0..=n {
                    let cy = T::from_bigint(&c[n][be]) * py[n - be].clone();
                    if cy.is_zero() {
                        continue;
                    }
                    s = s + cx_.clone() * cy * rel[al][be].clone();
                }
            }
            out[m][n] = s;
        }
    }
    out
}

/// All `I_mn` with `m + n <= order`, by fan triangulation from vertex 0 with signed areas.
pub fn polygon_real_moments<T: Scalar>(poly: &PolygonRegion<T>, order: usize) -> RealMoments<T> {
    let v = poly.vertices();
    let weights = SimplexWeights::<T>::new(order, poly.prec_bits());
    let mut rel = vec![vec![T::zero(); order + 1]; order + 1];
    let (x0, y0) = (v[0].x.clone(), v[0].y.clone());
    for i in 1..v.len() - 1 {
        let p = (v[i].x.clone() - x0.clone(), v[i].y.clone() - y0.clone());
        let q = (v[i + 1].x.clone() - x0.clone(), v[i + 1].y.clone() - y0.clone());
        accumulate_origin_triangle((&p.0, &p.1), (&q.0, &q.1), order, &weights, &mut rel);
    }
    RealMoments { order, table: shift_moments(&rel, order, &x0, &y0) }
}

pub fn polygon_real_moment<T: Scalar>(poly: &PolygonRegion<T>, m: usize, n: usize) -> T {
    polygon_real_moments(poly, m + n).get(m, n)
}

/// `c_ij` from real moments: `z^i z̄^j` expanded with `i`-powers reduced mod 4.
pub fn complex_from_real<T: Scalar>(real: &RealMoments<T>, i: usize, j: usize) -> Cx<T> {
    let c = binomials(i.max(j));
    let mut s = Cx::<T>::zero();
    for a in 0..=i {
        for b in 0..=j {
            let coef = T::from_bigint(&(&c[i][a] * &c[j][b]));
            // (iy)^(i-a) (-iy)^(j-b) = i^((i-a) + 3(j-b)) y^(i+j-a-b)
            let phase: Cx<T> = i_pow((i - a) as i64 + 3 * (j - b) as i64);
            let val = real.get(a + b, i + j - a - b) * coef;
            s = s + phase * cx_real(val);
        }
    }
    s
}

pub fn complex_moment<T: Scalar>(poly: &PolygonRegion<T>, i: usize, j: usize) -> Cx<T> {
    complex_from_real(&polygon_real_moments(poly, i + j), i, j)
}

fn check_house_param<T: Scalar>(a: &T) -> Result<()> {
    let half = T::one() / T::from_i64(2);
    if *a < T::zero() || *a > half {
        return Err(Error::Domain(format!("house parameter a = {a} outside [0, 1/2]")));
    }
    Ok(())
}

/// `∫_0^1 x^p (1-a-(1-2a)x)^q dx`, expanded as a polynomial integral.
fn house_half_integral<T: Scalar>(a: &T, p: usize, q: usize) -> T {
    let c = binomials(q);
    let base = T::one() - a.clone();
    let slope = T::one() - T::from_i64(2) * a.clone();
    let mut s = T::zero();
    for l in 0..=q {
        let sign = if l % 2 == 0 { T::one() } else { -T::one() };
        s = s + sign * T::from_bigint(&c[q][l]) * powi(&base, (q - l) as i64) * powi(&slope, l as i64)
            / T::from_i64((p + l + 1) as i64);
    }
    s
}

/// House moment `c_{n,m}` by integrating both halves directly.
pub fn house_moment_closed<T: Scalar>(a: &T, n: usize, m: usize) -> Result<Cx<T>> {
    check_house_param(a)?;
    house_moment_with(a, n, m, |p, q| Ok(house_half_integral(a, p, q)))
}

/// Same moment with each half integral evaluated as a terminating `₂F₁` at `(1-2a)/(1-a)`.
pub fn house_moment_hypergeometric<T: Scalar>(a: &T, n: usize, m: usize) -> Result<Cx<T>> {
    check_house_param(a)?;
    let base = T::one() - a.clone();
    let x = (T::one() - T::from_i64(2) * a.clone()) / base.clone();
    house_moment_with(a, n, m, |p, q| {
        let f = gauss_2f1_terminating(-(q as i64), &T::from_i64(p as i64 + 1), &T::from_i64(p as i64 + 2), &x)?;
        Ok(powi(&base, q as i64) * f / T::from_i64(p as i64 + 1))
    })
}

fn house_moment_with<T: Scalar>(a: &T, n: usize, m: usize, half: impl Fn(usize, usize) -> Result<T>) -> Result<Cx<T>> {
    let cn = binomials(n.max(m));
    let prec = a.precision().unwrap_or(0);
    let mut s = Cx::<T>::zero();
    for j in 0..=n {
        for k in 0..=m {
            let p = j + k;
            if p % 2 == 1 {
                // the mirrored halves cancel
                continue;
            }
            let q = n + m - p;
            let coef = T::from_bigint(&(&cn[n][j] * &cn[m][k])) * T::from_i64(2);
            let sign = if (m - k).is_multiple_of(2) { T::one() } else { -T::one() };
            let phase: Cx<T> = i_pow(q as i64);
            let den = T::from_rational(&BigRational::from_integer(BigInt::from(q + 1)), prec);
            let val = coef * sign * half(p, q + 1)? / den;
            s = s + phase * cx_real(val);
        }
    }
    Ok(s)
}

/// Moments of the area-one right triangle `(0,0), (a,0), (a,2/a)`.
pub fn right_triangle_moment_closed<T: Scalar>(a: &T, n: usize, m: usize) -> Result<Cx<T>> {
    if *a <= T::zero() {
        return Err(Error::Domain(format!("right triangle parameter a = {a} must be positive")));
    }
    let c = binomials(n.max(m));
    let prec = a.precision().unwrap_or(0);
    let mut s = Cx::<T>::zero();
    let total = n + m;
    for j in 0..=n {
        for k in 0..=m {
            let q = total - j - k;
            let sign = if (m - k).is_multiple_of(2) { T::one() } else { -T::one() };
            let coef = T::from_bigint(&(&c[n][j] * &c[m][k] * (BigInt::one() << (q + 1))));
            let ap = powi(a, 2 * (j + k) as i64 - total as i64);
            // rounded at the working precision so exact-integer terms do not fall back to the minimum
            let den = T::from_rational(&BigRational::from_integer(BigInt::from((total + 2) * (q + 1))), prec);
            let phase: Cx<T> = i_pow(q as i64);
            s = s + phase * cx_real(sign * coef * ap / den);
        }
    }
    Ok(s)
}

/// Complex moments `c[i][j]` for `0 <= i, j <= N+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable<T: Scalar> {
    degree: usize,
    entries: Vec<Vec<Cx<T>>>,
    precision: Option<u32>,
}

impl<T: Scalar> MomentTable<T> {
    /// Builds a table from `f(i, j)` for `i >= j`, filling the rest by conjugation.
    pub fn from_lower(degree: usize, precision: Option<u32>, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        let size = degree + 2;
        let mut entries = vec![vec![Cx::<T>::zero(); size]; size];
        for i in 0..size {
            for j in 0..=i {
                let v = f(i, j);
                if i != j {
                    entries[j][i] = conj(&v);
                    entries[i][j] = v;
                } else {
                    // diagonal moments are real
                    entries[i][i] = cx_real(v.re);
                }
            }
        }
        MomentTable { degree, entries, precision: if T::EXACT { None } else { precision } }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_exact(&self) -> bool {
        T::EXACT
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn get(&self, i: usize, j: usize) -> &Cx<T> {
        &self.entries[i][j]
    }

    /// Gram matrix `(c_{j,k})` for `0 <= j, k <= n`.
    pub fn gram(&self, n: usize) -> Vec<Vec<Cx<T>>> {
        (0..=n).map(|j| self.entries[j][..=n].to_vec()).collect()
    }

    pub fn truncate(&self, degree: usize) -> Self {
        assert!(degree <= self.degree);
        MomentTable {
            degree,
            entries: self.entries[..degree + 2].iter().map(|r| r[..degree + 2].to_vec()).collect(),
            precision: self.precision,
        }
    }

    pub fn convert<U: Scalar>(&self, prec: u32, f: impl Fn(&T, u32) -> U) -> MomentTable<U> {
        MomentTable {
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|z| cx(f(&z.re, prec), f(&z.im, prec))).collect())
                .collect(),
            precision: if U::EXACT { None } else { Some(prec) },
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|r| Value::Array(r.iter().map(|z| json!([z.re.to_string(), z.im.to_string()])).collect()))
            .collect();
        json!({
            "degree": self.degree,
            "exact": T::EXACT,
            "precision": self.precision,
            "c": rows,
        })
    }
}

impl MomentTable<BigRational> {
    pub fn to_scalar<U: Scalar>(&self, prec: u32) -> MomentTable<U> {
        self.convert(prec, |r, p| U::from_rational(r, p))
    }
}

pub fn moment_table_of_polygon<T: Scalar>(poly: &PolygonRegion<T>, degree: usize) -> MomentTable<T> {
    let real = polygon_real_moments(poly, 2 * degree + 2);
    MomentTable::from_lower(degree, poly.precision(), |i, j| complex_from_real(&real, i, j))
}

/// Unit disk: `c_{n,m} = δ_{nm} π/(n+1)`.
pub fn unit_disk_table<T: Scalar>(degree: usize, prec: u32) -> Result<MomentTable<T>> {
    let pi = T::pi(prec).ok_or_else(|| Error::NotExact("disk moments involve pi".into()))?;
    Ok(MomentTable::from_lower(degree, Some(prec), |i, j| {
        if i == j {
            cx_real(pi.clone() / T::from_i64(i as i64 + 1))
        } else {
            Cx::zero()
        }
    }))
}

pub fn moment_table<T: Scalar>(spec: &RegionSpec, degree: usize, prec: u32) -> Result<MomentTable<T>> {
    match spec {
        RegionSpec::UnitDisk => unit_disk_table(degree, prec),
        s if s.is_polygonal() => Ok(moment_table_of_polygon(&realize_polygon::<T>(s, prec)?, degree)),
        other => Err(Error::UnsupportedVariant(format!(
            "{} has no moment table; use the conformal route",
            other.family_name()
        ))),
    }
}

/// Moments from a closed form when the family has one, else the polygon pipeline.
pub fn moment_table_closed<T: Scalar>(spec: &RegionSpec, degree: usize, prec: u32) -> Result<MomentTable<T>> {
    let param = |p: &Param| p.to_scalar::<T>(prec);
    let build = |f: &dyn Fn(usize, usize) -> Result<Cx<T>>| -> Result<MomentTable<T>> {
        let mut err = None;
        let t = MomentTable::from_lower(degree, Some(prec), |i, j| {
            f(i, j).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Cx::zero()
            })
        });
        err.map_or(Ok(t), Err)
    };
    match spec {
        RegionSpec::House { a } => {
            spec.validate()?;
            let a = param(a)?;
            build(&|i, j| house_moment_closed(&a, i, j))
        }
        RegionSpec::RightTriangle { a } => {
            spec.validate()?;
            let a = param(a)?;
            build(&|i, j| right_triangle_moment_closed(&a, i, j))
        }
        _ => moment_table(spec, degree, prec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpfloat::MpFloat;
    use crate::scalar::{norm_sqr, rat};

    type Q = BigRational;

    fn pts(v: &[(Q, Q)]) -> Vec<Point<Q>> {
        v.iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect()
    }

    fn unit_square() -> PolygonRegion<Q> {
        realize_polygon(&RegionSpec::Rectangle { a: Param::int(1), b: Param::int(1) }, 0).unwrap()
    }

    // oracle: ∫_0^1 ∫_0^{1-x} x^m y^n dy dx = m! n! / (m+n+2)!
    fn unit_simplex(m: usize, n: usize) -> Q {
        let f = factorials(m + n + 2);
        Q::new(&f[m] * &f[n], f[m + n + 2].clone())
    }

    // oracle: ∫ over the centered rectangle a×b of x^m y^n, by separated 1D integrals
    fn rect_oracle(a: &Q, b: &Q, m: usize, n: usize) -> Q {
        let one_d = |len: &Q, k: usize| -> Q {
            if k % 2 == 1 {
                return Q::zero();
            }
            let h = len / Q::from_integer(2.into());
            Q::from_integer(2.into()) * powi(&h, k as i64 + 1) / Q::from_integer(((k + 1) as i64).into())
        };
        one_d(a, m) * one_d(b, n)
    }

    #[test]
    fn triangle_moments_unit_simplex() {
        let tri: [Point<Q>; 3] =
            pts(&[(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(0, 1)), (rat(0, 1), rat(1, 1))]).try_into().unwrap();
        assert_eq!(triangle_monomial_moment(&tri, 0, 0), rat(1, 2));
        assert_eq!(triangle_monomial_moment(&tri, 1, 0), rat(1, 6));
        assert_eq!(triangle_monomial_moment(&tri, 1, 1), rat(1, 24));
        for m in 0..5 {
            for n in 0..5 {
                assert_eq!(triangle_monomial_moment(&tri, m, n), unit_simplex(m, n));
            }
        }
        // orientation does not matter
        let rev: [Point<Q>; 3] = [tri[0].clone(), tri[2].clone(), tri[1].clone()];
        assert_eq!(triangle_monomial_moment(&rev, 2, 1), unit_simplex(2, 1));
        let flat: [Point<Q>; 3] =
            pts(&[(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(1, 1)), (rat(2, 1), rat(2, 1))]).try_into().unwrap();
        assert!(is_degenerate_triangle(&flat));
        assert!(triangle_monomial_moment(&flat, 1, 1).is_zero());
    }

    #[test]
    fn square_moments() {
        let sq = unit_square();
        assert_eq!(polygon_real_moment(&sq, 2, 0), rat(1, 12));
        assert!(polygon_real_moment(&sq, 1, 1).is_zero());
        assert_eq!(complex_moment(&sq, 0, 0), cx_real(rat(1, 1)));
        assert_eq!(complex_moment(&sq, 1, 1), cx_real(rat(1, 6)));
        assert!(complex_moment(&sq, 1, 0).is_zero());
    }

    #[test]
    fn rectangle_matches_separated_oracle() {
        let (a, b) = (rat(2, 1), rat(1, 2));
        let r: PolygonRegion<Q> =
            realize_polygon(&RegionSpec::Rectangle { a: Param::rational(a.clone()), b: Param::rational(b.clone()) }, 0)
                .unwrap();
        let m = polygon_real_moments(&r, 6);
        for p in 0..=6 {
            for q in 0..=6 - p {
                assert_eq!(m.get(p, q), rect_oracle(&a, &b, p, q), "I_{p}{q}");
            }
        }
        let t: MomentTable<Q> =
            moment_table(&RegionSpec::Rectangle { a: Param::int(2), b: Param::ratio(1, 2) }, 1, 0).unwrap();
        // c_11 = I20 + I02, c_20 = I20 - I02
        assert_eq!(t.get(1, 1).re, rect_oracle(&a, &b, 2, 0) + rect_oracle(&a, &b, 0, 2));
        assert_eq!(t.get(2, 0).re, rect_oracle(&a, &b, 2, 0) - rect_oracle(&a, &b, 0, 2));
        assert!(t.get(1, 0).is_zero());
    }

    #[test]
    fn house_area_is_one() {
        let p: PolygonRegion<Q> = realize_polygon(&RegionSpec::House { a: Param::ratio(1, 4) }, 0).unwrap();
        assert_eq!(polygon_real_moment(&p, 0, 0), rat(1, 1));
    }

    #[test]
    fn house_closed_forms_agree_with_polygon() {
        for a in [rat(0, 1), rat(1, 8), rat(1, 4), rat(3, 8), rat(1, 2)] {
            let p: PolygonRegion<Q> = realize_polygon(&RegionSpec::House { a: Param::rational(a.clone()) }, 0).unwrap();
            let real = polygon_real_moments(&p, 6);
            for n in 0..=6 {
                for m in 0..=6 - n {
                    let poly = complex_from_real(&real, n, m);
                    assert_eq!(house_moment_closed(&a, n, m).unwrap(), poly, "a={a} ({n},{m})");
                    assert_eq!(house_moment_hypergeometric(&a, n, m).unwrap(), poly, "a={a} ({n},{m})");
                }
            }
        }
        assert!(house_moment_closed(&rat(3, 4), 0, 0).is_err());
    }

    #[test]
    fn house_half_matches_rectangle() {
        let r: PolygonRegion<Q> =
            realize_polygon(&RegionSpec::Rectangle { a: Param::int(2), b: Param::ratio(1, 2) }, 0).unwrap();
        // the a = 1/2 house is this rectangle shifted up by 1/4
        let shifted = r.translate(&rat(0, 1), &rat(1, 4));
        assert_eq!(house_moment_closed(&rat(1, 2), 1, 1).unwrap(), complex_moment(&shifted, 1, 1));
    }

    #[test]
    fn right_triangle_closed_agrees() {
        for a in [rat(1, 2), rat(1, 1), rat(3, 1), rat(2, 1)] {
            let p: PolygonRegion<Q> =
                realize_polygon(&RegionSpec::RightTriangle { a: Param::rational(a.clone()) }, 0).unwrap();
            let real = polygon_real_moments(&p, 6);
            for n in 0..=6 {
                for m in 0..=6 - n {
                    assert_eq!(right_triangle_moment_closed(&a, n, m).unwrap(), complex_from_real(&real, n, m));
                }
            }
        }
        let spec = RegionSpec::RightTriangle { a: "sqrt(2)".parse().unwrap() };
        let p: PolygonRegion<MpFloat> = realize_polygon(&spec, 256).unwrap();
        let a = MpFloat::from_f64(2.0, 256).sqrt();
        let real = polygon_real_moments(&p, 6);
        for n in 0..=6 {
            for m in 0..=6 - n {
                let d = right_triangle_moment_closed(&a, n, m).unwrap() - complex_from_real(&real, n, m);
                assert!(norm_sqr(&d).to_f64() < 1e-140);
            }
        }
        assert!(right_triangle_moment_closed(&rat(0, 1), 0, 0).is_err());
    }

    #[test]
    fn disk_table() {
        let t: MomentTable<f64> = moment_table(&RegionSpec::UnitDisk, 2, 53).unwrap();
        let pi = std::f64::consts::PI;
        assert_eq!(t.get(0, 0).re, pi);
        assert_eq!(t.get(1, 1).re, pi / 2.0);
        assert_eq!(t.get(2, 2).re, pi / 3.0);
        assert!(t.get(1, 2).is_zero());
        assert!(moment_table::<Q>(&RegionSpec::UnitDisk, 2, 0).is_err());
        assert!(matches!(
            moment_table::<f64>(&RegionSpec::NeumannOval { a: Param::int(1) }, 2, 53),
            Err(Error::UnsupportedVariant(_))
        ));
    }

    #[test]
    fn table_json_uses_rational_strings() {
        let t: MomentTable<Q> =
            moment_table(&RegionSpec::Rectangle { a: Param::int(2), b: Param::ratio(1, 2) }, 1, 0).unwrap();
        let j = t.to_json();
        assert_eq!(j["exact"], true);
        assert_eq!(j["c"][1][1][0], "17/48");
    }
}
