//! Named verification checks: published reference numbers, cross-method agreement and
//! invariants. Each check reports measured and expected values with its tolerance.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::bergman::{convergence_probe, rho_exact, rho_moment_sequence, rho_sequence, START_PRECISION};
use crate::conformal::families::{dented_disk_family, equilateral_triangle_exact, neumann_oval_family};
use crate::conformal::rho_conformal;
use crate::error::Result;
use crate::lowerbound::house_lower;
use crate::moments::{moment_table, moment_table_closed, moment_table_of_polygon, MomentTable};
use crate::mpfloat::MpFloat;
use crate::opuc::{herglotz_from_reciprocal_poly, second_kind, szego_forward, szego_inverse, VerblunskySequence};
use crate::param::Param;
use crate::poly::ComplexPolynomial;
use crate::reference::{isosceles_right_triangle_rho_series, rectangle_r, rectangle_rho_series};
use crate::regions::{realize_polygon, Point, PolygonRegion, RegionSpec};
use crate::scalar::{cx, cx_real, rat, Scalar};

pub const GROUPS: &[&str] = &[
    "reference",
    "opuc",
    "series",
    "conformal",
    "equilateral",
    "sandwich",
    "properties",
    "rectangles",
    "sweep",
    "convergence",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub measured: String,
    pub expected: String,
    pub tolerance: String,
    pub passed: bool,
}

impl Check {
    fn exact(group: &'static str, name: impl Into<String>, measured: impl ToString, expected: impl ToString) -> Self {
        let (m, e) = (measured.to_string(), expected.to_string());
        Check { group, name: name.into(), passed: m == e, measured: m, expected: e, tolerance: "exact".into() }
    }

    fn close(group: &'static str, name: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Check {
            group,
            name: name.into(),
            measured: fmt_num(measured),
            expected: fmt_num(expected),
            tolerance: format!("{tol:e}"),
            passed: (measured - expected).abs() <= tol,
        }
    }

    fn truth(
        group: &'static str,
        name: impl Into<String>,
        measured: impl Into<String>,
        expected: &str,
        ok: bool,
    ) -> Self {
        Check {
            group,
            name: name.into(),
            measured: measured.into(),
            expected: expected.into(),
            tolerance: "-".into(),
            passed: ok,
        }
    }

    fn error(group: &'static str, name: impl Into<String>, err: crate::Error) -> Self {
        Check::truth(group, name, format!("error: {err}"), "success", false)
    }
}

fn fmt_num(x: f64) -> String {
    if x == 0.0 || x.abs() >= 1e-4 {
        format!("{x:.10}")
    } else {
        format!("{x:.3e}")
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {}/{}: measured {} expected {} (tol {})",
            if self.passed { "PASS" } else { "FAIL" },
            self.group,
            self.name,
            self.measured,
            self.expected,
            self.tolerance
        )
    }
}

/// Runs the selected groups, or all of them.
pub fn run(only: Option<&[String]>) -> Vec<Check> {
    let wanted = |g: &str| only.is_none_or(|o| o.iter().any(|x| x == g));
    let mut out = vec![];
    for g in GROUPS {
        if !wanted(g) {
            continue;
        }
        let checks = match *g {
            "reference" => reference_values(),
            "opuc" => opuc(),
            "series" => series(),
            "conformal" => conformal(),
            "equilateral" => equilateral(),
            "sandwich" => sandwich(),
            "properties" => properties(),
            "rectangles" => rectangles(),
            "sweep" => sweep(),
            "convergence" => convergence(),
            _ => unreachable!(),
        };
        out.extend(checks);
    }
    out
}

/// The legs-1 isosceles right triangle with zero centroid, rotated so its vertices are rational.
pub fn unit_isosceles_triangle() -> PolygonRegion<BigRational> {
    PolygonRegion::new(vec![
        Point::new(rat(-1, 3), rat(-1, 3)),
        Point::new(rat(2, 3), rat(-1, 3)),
        Point::new(rat(-1, 3), rat(2, 3)),
    ])
    .expect("valid triangle")
}

fn house(a: BigRational) -> RegionSpec {
    RegionSpec::House { a: Param::rational(a) }
}

fn reference_values() -> Vec<Check> {
    let g = "reference";
    let mut out = vec![];
    let t = moment_table_of_polygon(&unit_isosceles_triangle(), 2);
    match rho_sequence(&t, 2) {
        Ok(p) => {
            out.push(Check::exact(g, "isosceles rho_1 = 1/24", &p.rho[1], "1/24"));
            out.push(Check::exact(g, "isosceles rho_2 = 11/408", &p.rho[2], "11/408"));
        }
        Err(e) => out.push(Check::error(g, "isosceles rho_N", e)),
    }
    match rho_exact(&house(rat(1, 2)), 7) {
        Ok(r) => {
            let v = r.to_f64();
            out.push(Check::close(g, "house(1/2) rho_7 = 0.0703208", v, 0.0703208, 1e-5));
            out.push(Check::truth(
                g,
                "house(1/2) rho_7 exceeds the rectangle series",
                format!("{v:.10}"),
                "> 0.0702032",
                v > 0.0702032,
            ));
        }
        Err(e) => out.push(Check::error(g, "house rho_7", e)),
    }
    out
}

fn real_poly(c: &[(i64, i64)]) -> ComplexPolynomial<BigRational> {
    ComplexPolynomial::from_real(c.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn opuc() -> Vec<Check> {
    let g = "opuc";
    let mut out = vec![];
    let cube = real_poly(&[(1, 8), (3, 4), (3, 2), (1, 1)]);
    match szego_inverse(&cube) {
        Ok((alphas, phis)) => {
            let set: Vec<String> = alphas.as_slice().iter().map(|a| a.re.to_string()).collect();
            out.push(Check::exact(g, "Verblunsky coefficients", set.join(", "), "-10/11, -4/7, -1/8"));
            out.push(Check::exact(g, "Phi_2", &phis[2], real_poly(&[(4, 7), (10, 7), (1, 1)])));
            out.push(Check::exact(g, "Phi_1", &phis[1], real_poly(&[(10, 11), (1, 1)])));
            out.push(Check::exact(g, "forward recursion returns (z+1/2)^3", szego_forward(&alphas), &cube));
            let psi = second_kind(&alphas);
            out.push(Check::exact(g, "Psi_3 (published)", &psi, real_poly(&[(-1, 8), (-23, 24), (-7, 22), (1, 1)])));
        }
        Err(e) => out.push(Check::error(g, "inverse recursion", e)),
    }
    let q = real_poly(&[(8, 1), (12, 1), (6, 1), (1, 1)]);
    match herglotz_from_reciprocal_poly(&q, &rat(11, 81)) {
        Ok(f) => {
            let num = real_poly(&[(24, 1), (-84, 11), (-23, 1), (-3, 1)]);
            let den = real_poly(&[(24, 1), (36, 1), (18, 1), (3, 1)]);
            out.push(Check::truth(
                g,
                "F (published)",
                format!("({}) / ({})", f.numerator, f.denominator),
                "(24 - 84/11 z - 23 z^2 - 3 z^3) / (3 (z+2)^3)",
                f.same_function(&num, &den),
            ));
            // boundary identity Re F(e^{it}) = 1/|p(e^{it})|² at rational points of the circle
            let mut ok = true;
            for (x, y) in
                [(rat(1, 1), rat(0, 1)), (rat(3, 5), rat(4, 5)), (rat(-5, 13), rat(12, 13)), (rat(-1, 1), rat(0, 1))]
            {
                let z = cx(x, y);
                let qz = q.eval(&z);
                let expect = rat(81, 11) / (&qz.re * &qz.re + &qz.im * &qz.im);
                ok &= f.eval(&z).re == expect;
            }
            let measured = if ok { "holds at 4 points" } else { "violated" };
            out.push(Check::truth(g, "Re F = |p|^-2 on the circle", measured, "identity holds", ok));
            out.push(Check::exact(g, "F(0) = 1", &f.eval(&cx_real(rat(0, 1))).re, "1"));
        }
        Err(e) => out.push(Check::error(g, "Herglotz function", e)),
    }
    out
}

fn series() -> Vec<Check> {
    let g = "series";
    let tri = isosceles_right_triangle_rho_series(600, 600);
    vec![
        Check::close(g, "isosceles right triangle series", tri.value, 0.0260897, 1e-6),
        Check::close(g, "legs sqrt(2) scaling", 4.0 * tri.value, 0.1043586, 4e-6),
        Check::close(g, "rectangle (2, 1/2) series", rectangle_rho_series(2.0, 0.5, 85, 85).value, 0.0702032, 1e-6),
    ]
}

fn conformal() -> Vec<Check> {
    let g = "conformal";
    let mut out = vec![];
    for a in [0.5f64, 1.0, 2.0] {
        let closed = PI * (a.powi(4) / 2.0 + 2.0 * a * a + 1.0);
        let r = neumann_oval_family(a).and_then(|o| o.taylor(200)).and_then(|s| rho_conformal(&s));
        match r {
            Ok(e) => out.push(Check::close(g, format!("Neumann oval a={a}"), e.value / closed, 1.0, 1e-8)),
            Err(e) => out.push(Check::error(g, format!("Neumann oval a={a}"), e)),
        }
    }
    let c = |x: f64| Complex64::new(x, 0.0);
    match dented_disk_family(c(0.2), c(1.5)) {
        Ok(d) => {
            let closed = d.rho_closed().0;
            match d.taylor(400).and_then(|s| rho_conformal(&s)) {
                Ok(e) => out.push(Check::close(g, "dented disk (1/5, 3/2)", e.value / closed, 1.0, 1e-6)),
                Err(e) => out.push(Check::error(g, "dented disk (1/5, 3/2)", e)),
            }
        }
        Err(e) => out.push(Check::error(g, "dented disk (1/5, 3/2)", e)),
    }
    let gaps: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .filter_map(|&b| dented_disk_family(c(0.2), c(b)).ok().map(|d| (d.rho_closed().0 - PI / 2.0).abs()))
        .collect();
    let ok = gaps.len() == 3 && gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 1e-3;
    out.push(Check::truth(
        g,
        "dented disk tends to pi/2 as b grows",
        format!("{:?}", gaps.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>()),
        "decreasing gaps",
        ok,
    ));
    out
}

fn equilateral() -> Vec<Check> {
    let g = "equilateral";
    let mut out = vec![];
    match equilateral_triangle_exact(START_PRECISION) {
        Ok(r) => {
            out.push(Check::close(g, "rho = 9 sqrt(3)/80", r.rho.to_f64(), 9.0 * 3f64.sqrt() / 80.0, 1e-10));
            out.push(Check::exact(g, "boundary residual", &r.boundary_residual, "0"));
        }
        Err(e) => out.push(Check::error(g, "exact report", e)),
    }
    let tol = 2f64.powi(-(START_PRECISION as i32) / 2);
    match moment_table::<MpFloat>(&RegionSpec::EquilateralTriangle, 8, START_PRECISION) {
        Ok(t) => {
            for n in 2..=8 {
                let res = rho_sequence(&t.truncate(n), n).map(|p| {
                    (0..=n)
                        .map(|k| {
                            let c = p.q.coeff(k);
                            let target = if k == 2 { 1.0 } else { 0.0 };
                            (c.re.to_f64() - target).abs().max(c.im.to_f64().abs())
                        })
                        .fold(0.0, f64::max)
                });
                match res {
                    Ok(dev) => out.push(Check::close(g, format!("Q_{n} = z^2"), dev, 0.0, tol)),
                    Err(e) => out.push(Check::error(g, format!("Q_{n}"), e)),
                }
            }
        }
        Err(e) => out.push(Check::error(g, "moments", e)),
    }
    out
}

/// `a = k/(count-1) · 1/2`, the house grid.
pub fn house_grid(count: usize) -> Vec<BigRational> {
    (0..count).map(|k| BigRational::new(BigInt::from(k), BigInt::from(2 * (count - 1)))).collect()
}

/// `(a, lower, upper)` over the house grid, exact.
pub fn house_sandwich(count: usize) -> Vec<Result<(BigRational, f64, f64)>> {
    house_grid(count)
        .into_par_iter()
        .map(|a| {
            let lower = house_lower(&a)?.estimate.value;
            let upper = rho_exact(&house(a.clone()), 7)?.to_f64();
            Ok((a, lower, upper))
        })
        .collect()
}

fn sandwich() -> Vec<Check> {
    let g = "sandwich";
    let rows = house_sandwich(32);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let mut errors = vec![];
    for r in rows {
        match r {
            Ok((_, lo, hi)) => {
                if lo > hi {
                    violations += 1;
                }
                worst = worst.min(hi - lo);
            }
            Err(e) => errors.push(e),
        }
    }
    let mut out = vec![Check::exact(g, "house lower <= rho_7 on 32 points (violations)", violations, 0)];
    out.push(Check::truth(g, "smallest gap", format!("{worst:.3e}"), ">= 0", worst >= 0.0));
    out.extend(errors.into_iter().map(|e| Check::error(g, "house grid", e)));
    out
}

fn properties() -> Vec<Check> {
    let g = "properties";
    let mut out = vec![];
    // deterministic rational sequences with |α| < 1
    let mut failures = 0;
    for s in 0..100i64 {
        let len = (s % 8 + 1) as usize;
        let alphas: Vec<_> =
            (0..len as i64).map(|k| cx(rat((s * 7 + k * 3) % 11 - 5, 9), rat((s * 5 + k) % 9 - 4, 11))).collect();
        let seq = VerblunskySequence::new(alphas).expect("moduli below 1");
        match szego_inverse(&szego_forward(&seq)) {
            Ok((back, _)) if back == seq => {}
            _ => failures += 1,
        }
    }
    out.push(Check::exact(g, "Szego roundtrip failures over 100 sequences", failures, 0));

    let bad: Vec<String> = builtin_exact_regions()
        .par_iter()
        .filter(|spec| {
            !moment_table::<BigRational>(spec, 10, 0)
                .is_ok_and(|t| hermitian(&t) && crate::bergman::orthonormalize(&t, 10).is_ok())
        })
        .map(|s| s.to_string())
        .collect();
    out.push(Check::truth(
        g,
        "Hermitian positive definite Gram to degree 10",
        bad.join("; "),
        "no failures",
        bad.is_empty(),
    ));

    let closed_grid: Vec<RegionSpec> = house_grid(32)
        .into_iter()
        .map(house)
        .chain((0..=10).map(|k| RegionSpec::RightTriangle { a: Param::ratio(500 + 50 * k, 500) }))
        .collect();
    let mismatches: Vec<String> = closed_grid
        .par_iter()
        .filter(|spec| {
            !moment_table_closed::<BigRational>(spec, 6, 0)
                .and_then(|c| Ok(same_entries(&c, &moment_table::<BigRational>(spec, 6, 0)?)))
                .unwrap_or(false)
        })
        .map(|s| s.to_string())
        .collect();
    out.push(Check::truth(
        g,
        "closed-form moments equal polygon moments to degree 6 (house 32 points, right triangle 11 points)",
        mismatches.join("; "),
        "no mismatches",
        mismatches.is_empty(),
    ));

    let poly = realize_polygon::<BigRational>(&house(rat(1, 3)), 0).expect("house");
    let base = rho_sequence(&moment_table_of_polygon(&poly, 6), 6).map(|p| p.rho);
    let moved = rho_sequence(&moment_table_of_polygon(&poly.translate(&rat(3, 7), &rat(-5, 2)), 6), 6).map(|p| p.rho);
    let s = rat(5, 3);
    let scaled = rho_sequence(&moment_table_of_polygon(&poly.scale(&s), 6), 6).map(|p| p.rho);
    let s4 = &s * &s * &s * &s;
    match (base, moved, scaled) {
        (Ok(b), Ok(m), Ok(sc)) => {
            out.push(Check::truth(g, "rho_N translation invariant (exact)", "", "identical", b == m));
            let law = b.iter().zip(&sc).all(|(x, y)| x * &s4 == *y);
            out.push(Check::truth(g, "rho_N(r Omega) = r^4 rho_N(Omega) (exact)", "", "identical", law));
        }
        _ => out.push(Check::truth(g, "exact invariance", "error", "success", false)),
    }

    let spec = house(rat(1, 3));
    let mono = rho_moment_sequence(&spec, 8, START_PRECISION)
        .map(|(r, _)| r.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-15)))
        .unwrap_or(false);
    out.push(Check::truth(g, "rho_N nonincreasing (house 1/3)", "", "monotone", mono));
    out
}

pub fn builtin_exact_regions() -> Vec<RegionSpec> {
    vec![
        RegionSpec::Rectangle { a: Param::int(2), b: Param::ratio(1, 2) },
        house(rat(0, 1)),
        house(rat(1, 4)),
        house(rat(1, 2)),
        RegionSpec::RightTriangle { a: Param::ratio(3, 2) },
        RegionSpec::Polygon(vec![
            (Param::int(0), Param::int(0)),
            (Param::int(3), Param::int(0)),
            (Param::int(2), Param::int(1)),
            (Param::int(1), Param::int(3)),
            (Param::int(-1), Param::int(1)),
        ]),
    ]
}

fn same_entries<T: Scalar>(a: &MomentTable<T>, b: &MomentTable<T>) -> bool {
    let n = a.degree() + 2;
    a.degree() == b.degree() && (0..n).all(|i| (0..n).all(|j| a.get(i, j) == b.get(i, j)))
}

pub fn hermitian<T: Scalar>(t: &MomentTable<T>) -> bool {
    let n = t.degree() + 2;
    (0..n).all(|i| (0..n).all(|j| *t.get(i, j) == crate::scalar::conj(t.get(j, i))))
}

/// `a_k = 1 + 9k/19`, twenty points of `[1, 10]`.
pub fn rectangle_grid() -> Vec<BigRational> {
    (0..20).map(|k| BigRational::new(BigInt::from(19 + 9 * k), BigInt::from(19))).collect()
}

/// `ρ_12(Ω(a))/R(a) − 1` for the area-one rectangle `a × 1/a`.
pub fn rectangle_ratio(a: &BigRational) -> Result<f64> {
    let spec = RegionSpec::Rectangle { a: Param::rational(a.clone()), b: Param::rational(a.recip()) };
    let (rho, _) = rho_moment_sequence(&spec, 12, START_PRECISION)?;
    Ok(rho[12] / rectangle_r(a.to_f64()).value - 1.0)
}

fn rectangles() -> Vec<Check> {
    let g = "rectangles";
    let ratios: Vec<Result<f64>> = rectangle_grid().par_iter().map(rectangle_ratio).collect();
    let mut worst = (f64::INFINITY, f64::NEG_INFINITY);
    for r in &ratios {
        match r {
            Ok(v) => worst = (worst.0.min(*v), worst.1.max(*v)),
            Err(e) => return vec![Check::error(g, "ratio", e.clone())],
        }
    }
    vec![Check::truth(
        g,
        "rho_12/R - 1 in (0, 0.005) on 20 points",
        format!("[{:.3e}, {:.3e}]", worst.0, worst.1),
        "(0, 0.005)",
        worst.0 > 0.0 && worst.1 < 0.005,
    )]
}

pub const TRIANGLE_BRACKET: (f64, f64) = (1.408131, 1.4203223);
pub const TRIANGLE_RHO_SQRT2: f64 = 0.1043586;

/// `a = 1 + k/500` for `k = 0..=500`.
pub fn triangle_grid() -> Vec<BigRational> {
    (0..=500).map(|k| BigRational::new(BigInt::from(500 + k), BigInt::from(500))).collect()
}

pub fn triangle_rho10(a: &BigRational) -> Result<f64> {
    let spec = RegionSpec::RightTriangle { a: Param::rational(a.clone()) };
    Ok(rho_moment_sequence(&spec, 10, START_PRECISION)?.0[10])
}

fn sweep() -> Vec<Check> {
    let g = "sweep";
    let grid = triangle_grid();
    let vals: Vec<Result<f64>> = grid.par_iter().map(triangle_rho10).collect();
    let mut pts = vec![];
    for (a, v) in grid.iter().zip(vals) {
        match v {
            Ok(v) => pts.push((a.to_f64(), v)),
            Err(e) => return vec![Check::error(g, "rho_10", e)],
        }
    }
    let (amax, vmax) = pts.iter().cloned().fold((0.0, f64::NEG_INFINITY), |m, p| if p.1 > m.1 { p } else { m });
    let (lo, hi) = TRIANGLE_BRACKET;
    let outside_ok = pts.iter().filter(|(a, _)| *a < lo || *a > hi).all(|(_, v)| *v < TRIANGLE_RHO_SQRT2);
    vec![
        Check::truth(
            g,
            "argmax of rho_10 inside the bracket",
            format!("a = {amax:.3}, rho_10 = {vmax:.8}"),
            "1.408131 <= a <= 1.4203223",
            amax >= lo && amax <= hi,
        ),
        Check::truth(g, "rho_10 < 0.1043586 outside the bracket", "", "all grid points", outside_ok),
    ]
}

fn convergence() -> Vec<Check> {
    let g = "convergence";
    let spec = RegionSpec::NeumannOval { a: Param::int(1) };
    match convergence_probe(&spec, 20, 3.5 * PI, START_PRECISION) {
        Ok(p) => {
            let r = crate::bergman::fit_ratio(&p.gaps, 5, 20, 1e-60);
            vec![Check::truth(
                g,
                "Neumann oval fitted ratio over n in [5, 20]",
                format!("{:?}", r),
                "< 0.9",
                r.is_some_and(|r| r < 0.9),
            )]
        }
        Err(e) => vec![Check::error(g, "probe", e)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_groups_report() {
        let only: Vec<String> = ["opuc", "series", "equilateral"].iter().map(|s| s.to_string()).collect();
        let checks = run(Some(&only));
        assert!(checks.iter().all(|c| ["opuc", "series", "equilateral"].contains(&c.group)));
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        // the published Ψ_3 and F carry a misprint; everything else must pass
        assert_eq!(failed, vec!["Psi_3 (published)", "F (published)"]);
    }

    #[test]
    fn display_line() {
        let c = Check::close("series", "x", 1.0, 1.0, 1e-6);
        assert!(c.to_string().starts_with("[PASS] series/x"));
    }
}
