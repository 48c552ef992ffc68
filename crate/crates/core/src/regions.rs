//! Region descriptions and polygon realization.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::moments::polygon_real_moments;
use crate::param::Param;
use crate::scalar::{rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Point<T: Scalar> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

fn cross<T: Scalar>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.x.clone() - o.x.clone()) * (b.y.clone() - o.y.clone())
        - (a.y.clone() - o.y.clone()) * (b.x.clone() - o.x.clone())
}

fn sign<T: Scalar>(v: &T) -> i8 {
    if *v > T::zero() {
        1
    } else if *v < T::zero() {
        -1
    } else {
        0
    }
}

fn on_segment<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
    let min = |u: &T, v: &T| if u < v { u.clone() } else { v.clone() };
    let max = |u: &T, v: &T| if u > v { u.clone() } else { v.clone() };
    p.x >= min(&a.x, &b.x) && p.x <= max(&a.x, &b.x) && p.y >= min(&a.y, &b.y) && p.y <= max(&a.y, &b.y)
}

fn segments_intersect<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    let d1 = sign(&cross(c, d, a));
    let d2 = sign(&cross(c, d, b));
    let d3 = sign(&cross(a, b, c));
    let d4 = sign(&cross(a, b, d));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(a, c, d))
        || (d2 == 0 && on_segment(b, c, d))
        || (d3 == 0 && on_segment(c, a, b))
        || (d4 == 0 && on_segment(d, a, b))
}

/// A simple, counter-clockwise polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonRegion<T: Scalar> {
    vertices: Vec<Point<T>>,
    precision: Option<u32>,
}

impl<T: Scalar> PolygonRegion<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidRegion(format!("{n} vertices; at least 3 required")));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidRegion(format!("vertices {i} and {} coincide", (i + 1) % n)));
            }
        }
        for i in 0..n {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (c, d) = (&vertices[j], &vertices[(j + 1) % n]);
                if segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidRegion(format!("edges {i} and {j} intersect")));
                }
            }
        }
        let precision = vertices.iter().filter_map(|p| p.x.precision().max(p.y.precision())).max();
        let poly = PolygonRegion { vertices, precision };
        if poly.signed_area_twice() <= T::zero() {
            return Err(Error::InvalidRegion(
                "signed area is not positive (vertices must be counter-clockwise)".into(),
            ));
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    /// Working precision of the coordinates; `None` when exact.
    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn prec_bits(&self) -> u32 {
        self.precision.unwrap_or(0)
    }

    fn signed_area_twice(&self) -> T {
        let n = self.vertices.len();
        (0..n).fold(T::zero(), |acc, i| {
            let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            acc + p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone()
        })
    }

    /// Edges as `(start, end)` pairs in boundary order.
    pub fn edges(&self) -> impl Iterator<Item = (&Point<T>, &Point<T>)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn map_points(&self, f: impl Fn(&Point<T>) -> Point<T>) -> Result<Self> {
        PolygonRegion::new(self.vertices.iter().map(f).collect())
    }

    pub fn translate(&self, dx: &T, dy: &T) -> Self {
        PolygonRegion {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(p.x.clone() + dx.clone(), p.y.clone() + dy.clone()))
                .collect(),
            precision: self.precision,
        }
    }

    pub fn scale(&self, r: &T) -> Self {
        PolygonRegion {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(p.x.clone() * r.clone(), p.y.clone() * r.clone()))
                .collect(),
            precision: self.precision,
        }
    }

    pub fn to_f64(&self) -> PolygonRegion<f64> {
        PolygonRegion {
            vertices: self.vertices.iter().map(|p| Point::new(p.x.to_f64(), p.y.to_f64())).collect(),
            precision: Some(53),
        }
    }

    /// Point-in-polygon by the crossing rule; boundary points may land on either side.
    pub fn contains(&self, p: &Point<T>) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let t = (p.y.clone() - a.y.clone()) / (b.y.clone() - a.y.clone());
                let x = a.x.clone() + t * (b.x.clone() - a.x.clone());
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// Shoelace area and centroid; exact for exact coordinates.
pub fn area_and_centroid<T: Scalar>(poly: &PolygonRegion<T>) -> (T, Point<T>) {
    let two_a = poly.signed_area_twice();
    let (mut cx, mut cy) = (T::zero(), T::zero());
    for (p, q) in poly.edges() {
        let w = p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone();
        cx = cx + (p.x.clone() + q.x.clone()) * w.clone();
        cy = cy + (p.y.clone() + q.y.clone()) * w;
    }
    let three_two_a = T::from_i64(3) * two_a.clone();
    let area = two_a / T::from_i64(2);
    (area, Point::new(cx / three_two_a.clone(), cy / three_two_a))
}

pub fn translate_to_zero_centroid<T: Scalar>(poly: &PolygonRegion<T>) -> PolygonRegion<T> {
    let (_, c) = area_and_centroid(poly);
    poly.translate(&-c.x, &-c.y)
}

/// `I_21` of `e^{iθ}Ω` from the third-order complex moments of `Ω`.
fn rotated_i21<T: Scalar>(c30: &(T, T), c21: &(T, T), theta: &T) -> Result<T> {
    let three = T::from_i64(3) * theta.clone();
    let (s1, c1) = theta.sin_cos().ok_or_else(|| Error::NotExact("rotation angle".into()))?;
    let (s3, c3) = three.sin_cos().ok_or_else(|| Error::NotExact("rotation angle".into()))?;
    // Im(e^{3iθ} c30) + Im(e^{iθ} c21), divided by 4
    let im30 = s3 * c30.0.clone() + c3 * c30.1.clone();
    let im21 = s1 * c21.0.clone() + c1 * c21.1.clone();
    Ok((im30 + im21) / T::from_i64(4))
}

pub fn rotate<T: Scalar>(poly: &PolygonRegion<T>, theta: &T) -> Result<PolygonRegion<T>> {
    let (s, c) = theta.sin_cos().ok_or_else(|| Error::NotExact("rotation angle".into()))?;
    Ok(PolygonRegion {
        vertices: poly
            .vertices
            .iter()
            .map(|p| {
                Point::new(
                    p.x.clone() * c.clone() - p.y.clone() * s.clone(),
                    p.x.clone() * s.clone() + p.y.clone() * c.clone(),
                )
            })
            .collect(),
        precision: poly.precision,
    })
}

/// Tolerance on `|I_21|` after rotation, relative to the size of the third-order moments.
pub fn i21_tolerance<T: Scalar>(poly: &PolygonRegion<T>) -> T {
    if T::EXACT {
        return T::zero();
    }
    let prec = poly.prec_bits().max(53);
    let i = polygon_real_moments(poly, 3);
    let scale = i.get(3, 0).abs() + i.get(2, 1).abs() + i.get(1, 2).abs() + i.get(0, 3).abs();
    T::eps(prec / 2, prec) * scale
}

/// Rotates a centered polygon so that `I_21 = 0`, by bisection on the sign change of
/// `θ ↦ I_21(e^{iθ}Ω)` over `[0, π]` (the function flips sign under rotation by π).
pub fn rotate_to_zero_i21<T: Scalar>(poly: &PolygonRegion<T>) -> Result<(PolygonRegion<T>, T)> {
    let i = polygon_real_moments(poly, 3);
    if i.get(2, 1).is_zero() {
        return Ok((poly.clone(), T::zero()));
    }
    let prec = poly.prec_bits();
    let pi = T::pi(prec).ok_or_else(|| Error::NotExact("rotation requires floating point coordinates".into()))?;
    let (i30, i21, i12, i03) = (i.get(3, 0), i.get(2, 1), i.get(1, 2), i.get(0, 3));
    // c30 = I30 - 3 I12 + i(3 I21 - I03), c21 = I30 + I12 + i(I21 + I03)
    let three = T::from_i64(3);
    let c30 = (i30.clone() - three.clone() * i12.clone(), three * i21.clone() - i03.clone());
    let c21 = (i30 + i12, i21 + i03);

    let mut lo = T::zero();
    let mut hi = pi;
    let f_lo = rotated_i21(&c30, &c21, &lo)?;
    let f_hi = rotated_i21(&c30, &c21, &hi)?;
    if sign(&f_lo) * sign(&f_hi) > 0 {
        return Err(Error::Internal("I_21 does not change sign over [0, pi]".into()));
    }
    let width_tol = T::eps(prec.max(53) / 2 + 8, prec);
    let mut s_lo = sign(&f_lo);
    let two = T::from_i64(2);
    while hi.clone() - lo.clone() > width_tol {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let f_mid = rotated_i21(&c30, &c21, &mid)?;
        let s_mid = sign(&f_mid);
        if s_mid == 0 {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if s_mid == s_lo {
            lo = mid;
            s_lo = s_mid;
        } else {
            hi = mid;
        }
    }
    let theta = (lo + hi) / two;
    let rotated = rotate(poly, &theta)?;
    let check = polygon_real_moments(&rotated, 3).get(2, 1);
    if check.abs() > i21_tolerance(&rotated) {
        return Err(Error::Internal(format!("rotation left |I_21| = {:e}", check.to_f64())));
    }
    Ok((rotated, theta))
}

/// Tagged region description.
#[derive(Clone, Debug, PartialEq)]
pub enum RegionSpec {
    Polygon(Vec<(Param, Param)>),
    /// `(-a/2, a/2) × (-b/2, b/2)`.
    Rectangle {
        a: Param,
        b: Param,
    },
    /// Pentagon `(-1,0), (1,0), (1,a), (0,1-a), (-1,a)`, area 1.
    House {
        a: Param,
    },
    /// Triangle `(0,0), (a,0), (a,2/a)`, area 1.
    RightTriangle {
        a: Param,
    },
    /// Vertices `(1,0)`, `(-1/2, ±√3/2)`.
    EquilateralTriangle,
    UnitDisk,
    /// Image of the disk under `z + a/(z - b)`.
    DentedDisk {
        a: Param,
        b: Param,
    },
    /// Image of the disk under `(R^4-1)z / (R(R^2-z^2))` with `R = (a + sqrt(a^2+4))/2`.
    NeumannOval {
        a: Param,
    },
    /// Image of the disk under `sqrt(2)/p` with `p = sqrt(scale_sq) * Σ coefficients[k] z^k`.
    ReciprocalPolyMap {
        coefficients: Vec<(Param, Param)>,
        scale_sq: Param,
    },
}

impl RegionSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            RegionSpec::Polygon(_) => "polygon",
            RegionSpec::Rectangle { .. } => "rectangle",
            RegionSpec::House { .. } => "house",
            RegionSpec::RightTriangle { .. } => "right_triangle",
            RegionSpec::EquilateralTriangle => "equilateral_triangle",
            RegionSpec::UnitDisk => "unit_disk",
            RegionSpec::DentedDisk { .. } => "dented_disk",
            RegionSpec::NeumannOval { .. } => "neumann_oval",
            RegionSpec::ReciprocalPolyMap { .. } => "reciprocal_poly_map",
        }
    }

    pub fn is_polygonal(&self) -> bool {
        matches!(
            self,
            RegionSpec::Polygon(_)
                | RegionSpec::Rectangle { .. }
                | RegionSpec::House { .. }
                | RegionSpec::RightTriangle { .. }
                | RegionSpec::EquilateralTriangle
        )
    }

    /// True when every coordinate of the realized polygon is rational.
    pub fn is_exact(&self) -> bool {
        match self {
            RegionSpec::Polygon(v) => v.iter().all(|(x, y)| x.is_exact() && y.is_exact()),
            RegionSpec::Rectangle { a, b } => a.is_exact() && b.is_exact(),
            RegionSpec::House { a } => a.is_exact(),
            // 2/a stays in Q(sqrt) only when a^2 is rational, but vertices need a itself
            RegionSpec::RightTriangle { a } => a.is_exact(),
            RegionSpec::EquilateralTriangle | RegionSpec::UnitDisk => false,
            RegionSpec::DentedDisk { .. } | RegionSpec::NeumannOval { .. } | RegionSpec::ReciprocalPolyMap { .. } => {
                false
            }
        }
    }

    /// Checks the family's parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, p: &Param| {
            if p.is_positive() {
                Ok(())
            } else {
                Err(Error::DegenerateRegion(format!("{name} = {p} must be positive")))
            }
        };
        match self {
            RegionSpec::Polygon(v) => {
                if v.len() < 3 {
                    return Err(Error::InvalidRegion("polygon needs at least 3 vertices".into()));
                }
                Ok(())
            }
            RegionSpec::Rectangle { a, b } => positive("a", a).and(positive("b", b)),
            RegionSpec::House { a } => {
                let sq = a.square();
                if a.coef.is_negative() || sq > rat(1, 4) {
                    Err(Error::Domain(format!("house parameter a = {a} outside [0, 1/2]")))
                } else {
                    Ok(())
                }
            }
            RegionSpec::RightTriangle { a } => positive("a", a),
            RegionSpec::EquilateralTriangle | RegionSpec::UnitDisk => Ok(()),
            RegionSpec::NeumannOval { a } => {
                if a.is_positive() {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("Neumann oval parameter a = {a} must be positive")))
                }
            }
            RegionSpec::DentedDisk { a, b } => {
                let v = crate::conformal::families::dented_disk_validity(
                    num_complex::Complex::new(a.to_f64(), 0.0),
                    num_complex::Complex::new(b.to_f64(), 0.0),
                );
                v.into_result()
            }
            RegionSpec::ReciprocalPolyMap { coefficients, scale_sq } => {
                if coefficients.len() < 2 {
                    return Err(Error::InvalidMap("p must have degree at least 1".into()));
                }
                if !scale_sq.is_positive() {
                    return Err(Error::InvalidMap("scale_sq must be positive".into()));
                }
                Ok(())
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    /// `{"family":"house","a":"1/4"}` or `{"polygon":[["-1","0"],["1","0"],...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let param = |key: &str| -> Result<Param> {
            let raw = v.get(key).ok_or_else(|| Error::Parse(format!("missing parameter {key:?}")))?;
            serde_json::from_value(raw.clone()).map_err(|e| Error::Parse(format!("{key}: {e}")))
        };
        let pairs = |raw: &Value| -> Result<Vec<(Param, Param)>> {
            let arr = raw.as_array().ok_or_else(|| Error::Parse("expected an array of pairs".into()))?;
            arr.iter()
                .map(|p| match p {
                    Value::Array(xy) if xy.len() == 2 => {
                        let x = serde_json::from_value(xy[0].clone()).map_err(|e| Error::Parse(e.to_string()))?;
                        let y = serde_json::from_value(xy[1].clone()).map_err(|e| Error::Parse(e.to_string()))?;
                        Ok((x, y))
                    }
                    other => {
                        let x: Param =
                            serde_json::from_value(other.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                        Ok((x, Param::int(0)))
                    }
                })
                .collect()
        };
        if let Some(poly) = v.get("polygon") {
            return Ok(RegionSpec::Polygon(pairs(poly)?));
        }
        let family = v
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("expected \"family\" or \"polygon\" key".into()))?;
        let spec = match family {
            "rectangle" => RegionSpec::Rectangle { a: param("a")?, b: param("b")? },
            "house" => RegionSpec::House { a: param("a")? },
            "right_triangle" => RegionSpec::RightTriangle { a: param("a")? },
            "equilateral_triangle" => RegionSpec::EquilateralTriangle,
            "unit_disk" => RegionSpec::UnitDisk,
            "dented_disk" => RegionSpec::DentedDisk { a: param("a")?, b: param("b")? },
            "neumann_oval" => RegionSpec::NeumannOval { a: param("a")? },
            "reciprocal_poly_map" => RegionSpec::ReciprocalPolyMap {
                coefficients: pairs(
                    v.get("coefficients").ok_or_else(|| Error::Parse("missing \"coefficients\"".into()))?,
                )?,
                scale_sq: param("scale_sq")?,
            },
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        let s = |p: &Param| Value::String(p.to_string());
        let pairs = |v: &[(Param, Param)]| Value::Array(v.iter().map(|(x, y)| json!([s(x), s(y)])).collect());
        match self {
            RegionSpec::Polygon(v) => json!({ "polygon": pairs(v) }),
            RegionSpec::Rectangle { a, b } => json!({"family": "rectangle", "a": s(a), "b": s(b)}),
            RegionSpec::House { a } => json!({"family": "house", "a": s(a)}),
            RegionSpec::RightTriangle { a } => json!({"family": "right_triangle", "a": s(a)}),
            RegionSpec::EquilateralTriangle => json!({"family": "equilateral_triangle"}),
            RegionSpec::UnitDisk => json!({"family": "unit_disk"}),
            RegionSpec::DentedDisk { a, b } => json!({"family": "dented_disk", "a": s(a), "b": s(b)}),
            RegionSpec::NeumannOval { a } => json!({"family": "neumann_oval", "a": s(a)}),
            RegionSpec::ReciprocalPolyMap { coefficients, scale_sq } => json!({
                "family": "reciprocal_poly_map",
                "coefficients": pairs(coefficients),
                "scale_sq": s(scale_sq),
            }),
        }
    }

    /// Same family with its single free parameter replaced (used by sweeps).
    pub fn with_param(&self, value: Param) -> Result<Self> {
        Ok(match self {
            RegionSpec::Rectangle { .. } => {
                // area-one rectangle Ω(a) with sides a and 1/a
                let inv = value
                    .as_rational()
                    .map(|r| Param::rational(r.recip()))
                    .ok_or_else(|| Error::NotExact("rectangle sweep parameter must be rational".into()))?;
                RegionSpec::Rectangle { a: value, b: inv }
            }
            RegionSpec::House { .. } => RegionSpec::House { a: value },
            RegionSpec::RightTriangle { .. } => RegionSpec::RightTriangle { a: value },
            RegionSpec::NeumannOval { .. } => RegionSpec::NeumannOval { a: value },
            RegionSpec::DentedDisk { b, .. } => RegionSpec::DentedDisk { a: value, b: b.clone() },
            other => {
                return Err(Error::UnsupportedVariant(format!("{} has no single sweep parameter", other.family_name())))
            }
        })
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

fn pt<T: Scalar>(x: &Param, y: &Param, prec: u32) -> Result<Point<T>> {
    Ok(Point::new(x.to_scalar(prec)?, y.to_scalar(prec)?))
}

pub(crate) fn dedup_cyclic<T: Scalar>(mut v: Vec<Point<T>>) -> Vec<Point<T>> {
    v.dedup();
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    v
}

/// Realizes a polygonal family as explicit counter-clockwise vertices.
///
/// `prec` is the working precision for irrational coordinates; ignored by exact fields.
pub fn realize_polygon<T: Scalar>(spec: &RegionSpec, prec: u32) -> Result<PolygonRegion<T>> {
    if !spec.is_polygonal() {
        return Err(Error::UnsupportedVariant(format!("{} is not a polygon", spec.family_name())));
    }
    spec.validate()?;
    let verts: Vec<Point<T>> = match spec {
        RegionSpec::Polygon(v) => v.iter().map(|(x, y)| pt(x, y, prec)).collect::<Result<_>>()?,
        RegionSpec::Rectangle { a, b } => {
            let ha: T = a.to_scalar::<T>(prec)? / T::from_i64(2);
            let hb: T = b.to_scalar::<T>(prec)? / T::from_i64(2);
            vec![
                Point::new(-ha.clone(), -hb.clone()),
                Point::new(ha.clone(), -hb.clone()),
                Point::new(ha.clone(), hb.clone()),
                Point::new(-ha, hb),
            ]
        }
        RegionSpec::House { a } => {
            let a: T = a.to_scalar(prec)?;
            let one = T::one();
            // boundary order; the apex sits between the two eaves
            dedup_cyclic(vec![
                Point::new(-one.clone(), T::zero()),
                Point::new(one.clone(), T::zero()),
                Point::new(one.clone(), a.clone()),
                Point::new(T::zero(), one.clone() - a.clone()),
                Point::new(-one, a),
            ])
        }
        RegionSpec::RightTriangle { a } => {
            let av: T = a.to_scalar(prec)?;
            let h = T::from_i64(2) / av.clone();
            vec![Point::new(T::zero(), T::zero()), Point::new(av.clone(), T::zero()), Point::new(av, h)]
        }
        RegionSpec::EquilateralTriangle => {
            let h: T = Param::sqrt_of(rat(3, 4)).to_scalar(prec)?;
            let half = T::from_rational(&rat(-1, 2), prec);
            vec![Point::new(T::one(), T::zero()), Point::new(half.clone(), h.clone()), Point::new(half, -h)]
        }
        _ => unreachable!("non-polygonal variants rejected above"),
    };
    if verts.len() < 3 {
        return Err(Error::DegenerateRegion("fewer than 3 distinct vertices".into()));
    }
    let verts = verts.into_iter().map(|p| Point::new(p.x.at_precision(prec), p.y.at_precision(prec))).collect();
    PolygonRegion::new(verts).map_err(|e| match e {
        Error::InvalidRegion(m) => Error::DegenerateRegion(m),
        other => other,
    })
}

/// Regular `n`-gon inscribed in the unit circle.
pub fn regular_polygon<T: Scalar>(n: usize, prec: u32) -> Result<PolygonRegion<T>> {
    let two_pi = T::pi(prec).ok_or_else(|| Error::NotExact("regular polygon".into()))? * T::from_i64(2);
    let verts = (0..n)
        .map(|k| {
            let t = two_pi.clone() * T::from_i64(k as i64) / T::from_i64(n as i64);
            let (s, c) = t.sin_cos().expect("floating field");
            Point::new(c, s)
        })
        .collect();
    PolygonRegion::new(verts)
}

pub fn rational_point(x: BigRational, y: BigRational) -> Point<BigRational> {
    Point::new(x, y)
}

/// The exact centered isosceles right triangle with legs √2,
/// hypotenuse on the line x = 1/3. Scaling by 1/√2 gives legs 1.
pub fn centered_isosceles_right_triangle_legs_sqrt2() -> PolygonRegion<BigRational> {
    PolygonRegion::new(vec![
        Point::new(rat(-2, 3), BigRational::zero()),
        Point::new(rat(1, 3), -BigRational::one()),
        Point::new(rat(1, 3), BigRational::one()),
    ])
    .expect("valid triangle")
}
