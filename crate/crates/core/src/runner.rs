//! Dispatch from a region and a method name to an estimate, plus sweep rows.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::bergman::{rho_moment, START_PRECISION};
use crate::conformal::families::{
    dented_disk_family, equilateral_triangle_exact, neumann_oval_family, ReciprocalPolyMap,
};
use crate::conformal::{rho_conformal_adaptive, ConformalMap, TaylorSeries, UnitDiskMap};
use crate::error::{Error, Result};
use crate::estimate::{BoundDirection, Method, RigidityEstimate};
use crate::lowerbound::{disk_trial, house_lower, rayleigh_lower};
use crate::mpfloat::MpFloat;
use crate::param::Param;
use crate::reference::{disk_rho, isosceles_right_triangle_rho_series, rectangle_rho_series};
use crate::regions::RegionSpec;

/// Relative tail target for the adaptive conformal truncation.
pub const CONFORMAL_REL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trial {
    Best,
    /// `u_k`, 1-based.
    Preset(usize),
}

impl FromStr for Trial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "best" => Ok(Trial::Best),
            "u1" => Ok(Trial::Preset(1)),
            "u2" => Ok(Trial::Preset(2)),
            "u3" => Ok(Trial::Preset(3)),
            other => Err(Error::Parse(format!("unknown trial {other:?}; expected best, u1, u2 or u3"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub degree: usize,
    pub truncation: usize,
    pub precision: u32,
    pub trial: Trial,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree: 10, truncation: 200, precision: START_PRECISION, trial: Trial::Best }
    }
}

/// A method with an optional per-method override: `moment:12`, `conformal:400`, `lower:u2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodSpec {
    pub method: Method,
    pub arg: Option<String>,
}

impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (m, arg) = match s.split_once(':') {
            Some((m, a)) => (m, Some(a.to_string())),
            None => (s, None),
        };
        Ok(MethodSpec { method: m.trim().parse()?, arg })
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.arg {
            Some(a) => write!(f, "{}:{a}", self.method),
            None => write!(f, "{}", self.method),
        }
    }
}

impl MethodSpec {
    /// Options with this method's override applied.
    pub fn apply(&self, base: &Options) -> Result<Options> {
        let mut o = base.clone();
        let Some(arg) = &self.arg else { return Ok(o) };
        let count = || arg.parse::<usize>().map_err(|_| Error::Parse(format!("bad count {arg:?} for {}", self.method)));
        match self.method {
            Method::Moment => o.degree = count()?,
            Method::Conformal | Method::Series => o.truncation = count()?,
            Method::Lower => o.trial = arg.parse()?,
            Method::Closed => return Err(Error::Parse("closed takes no argument".into())),
        }
        Ok(o)
    }
}

fn unsupported(spec: &RegionSpec, method: Method) -> Error {
    Error::UnsupportedVariant(format!("method {method} is not available for {}", spec.family_name()))
}

fn c64(p: &Param) -> Complex64 {
    Complex64::new(p.to_f64(), 0.0)
}

/// Conformal Taylor series of `ψ` for the families that have one.
pub fn taylor_series(spec: &RegionSpec, m: usize) -> Result<TaylorSeries> {
    spec.validate()?;
    match spec {
        RegionSpec::UnitDisk => Ok(TaylorSeries::identity()),
        RegionSpec::NeumannOval { a } => neumann_oval_family(a.to_f64())?.taylor(m),
        RegionSpec::DentedDisk { a, b } => dented_disk_family(c64(a), c64(b))?.taylor(m),
        RegionSpec::ReciprocalPolyMap { .. } => ReciprocalPolyMap::from_spec(spec)?.taylor(m),
        other => Err(unsupported(other, Method::Conformal)),
    }
}

pub fn conformal_map(spec: &RegionSpec) -> Result<Box<dyn ConformalMap>> {
    spec.validate()?;
    Ok(match spec {
        RegionSpec::UnitDisk => Box::new(UnitDiskMap),
        RegionSpec::NeumannOval { a } => Box::new(neumann_oval_family(a.to_f64())?),
        RegionSpec::DentedDisk { a, b } => Box::new(dented_disk_family(c64(a), c64(b))?),
        RegionSpec::ReciprocalPolyMap { .. } => Box::new(ReciprocalPolyMap::from_spec(spec)?),
        other => return Err(unsupported(other, Method::Conformal)),
    })
}

pub fn estimate(spec: &RegionSpec, method: Method, opts: &Options) -> Result<RigidityEstimate> {
    spec.validate()?;
    match method {
        Method::Moment => match spec {
            RegionSpec::DentedDisk { .. } | RegionSpec::ReciprocalPolyMap { .. } => Err(unsupported(spec, method)),
            _ => rho_moment(spec, opts.degree, opts.precision),
        },
        Method::Conformal => match spec {
            RegionSpec::EquilateralTriangle => closed(spec, opts),
            _ => rho_conformal_adaptive(|m| taylor_series(spec, m), opts.truncation, CONFORMAL_REL_TOL),
        },
        Method::Lower => lower(spec, opts),
        Method::Series => series(spec, opts),
        Method::Closed => closed(spec, opts),
    }
}

fn lower(spec: &RegionSpec, opts: &Options) -> Result<RigidityEstimate> {
    match spec {
        RegionSpec::House { a } => {
            let h = match a.as_rational() {
                Some(r) => house_lower(r)?,
                None => house_lower(&a.to_scalar::<MpFloat>(opts.precision)?)?,
            };
            let prec = if a.is_exact() { None } else { Some(opts.precision) };
            Ok(match opts.trial {
                Trial::Best => h.estimate.with_precision(prec),
                Trial::Preset(k) => h.trials[k - 1].clone().with_precision(prec),
            })
        }
        RegionSpec::UnitDisk => {
            // 1 - |z|² on an inscribed polygon with `truncation` sides
            let (poly, u) = disk_trial(opts.truncation.max(3), opts.precision)?;
            Ok(rayleigh_lower(&u, &poly)?.with_precision(Some(opts.precision)))
        }
        other => Err(unsupported(other, Method::Lower)),
    }
}

/// Series caps default to 85 (rectangle) and 600 (triangle) unless `--truncation` was set.
fn series_cap(opts: &Options, default: usize) -> usize {
    if opts.truncation == Options::default().truncation {
        default
    } else {
        opts.truncation.max(1)
    }
}

fn series(spec: &RegionSpec, opts: &Options) -> Result<RigidityEstimate> {
    match spec {
        RegionSpec::Rectangle { a, b } => {
            let cap = series_cap(opts, 85);
            Ok(rectangle_rho_series(a.to_f64(), b.to_f64(), cap, cap).estimate(cap))
        }
        // the isosceles member a = √2; legs √2 scale the unit-leg series by 4
        RegionSpec::RightTriangle { a } if a.square() == BigRational::from_integer(BigInt::from(2)) => {
            let cap = series_cap(opts, 600);
            let s = isosceles_right_triangle_rho_series(cap, cap);
            Ok(RigidityEstimate::new(4.0 * s.value, BoundDirection::Lower, Method::Series, cap).with_tail(4.0 * s.tail))
        }
        RegionSpec::UnitDisk | RegionSpec::NeumannOval { .. } | RegionSpec::DentedDisk { .. } => closed(spec, opts),
        other => Err(unsupported(other, Method::Series)),
    }
}

fn closed(spec: &RegionSpec, opts: &Options) -> Result<RigidityEstimate> {
    let est = |v: f64| RigidityEstimate::new(v, BoundDirection::Exact, Method::Closed, 0);
    match spec {
        RegionSpec::UnitDisk => Ok(est(disk_rho(1.0))),
        RegionSpec::NeumannOval { a } => Ok(est(neumann_oval_family(a.to_f64())?.rho_closed())),
        RegionSpec::DentedDisk { a, b } => {
            let (v, tail) = dented_disk_family(c64(a), c64(b))?.rho_closed();
            Ok(est(v).with_tail(tail))
        }
        RegionSpec::EquilateralTriangle => {
            let r = equilateral_triangle_exact(opts.precision)?;
            Ok(est(r.rho.to_f64()).with_precision(Some(opts.precision)))
        }
        other => Err(unsupported(other, Method::Closed)),
    }
}

/// `count` evenly spaced rational parameters from `start` to `stop` inclusive.
pub fn rational_grid(start: &BigRational, stop: &BigRational, count: usize) -> Result<Vec<BigRational>> {
    match count {
        0 => Err(Error::Parse("grid needs at least one point".into())),
        1 => Ok(vec![start.clone()]),
        n => {
            let step = (stop - start) / BigInt::from(n - 1);
            Ok((0..n).map(|k| start + &step * BigInt::from(k)).collect())
        }
    }
}

/// `START:STOP:COUNT` with rational endpoints.
pub fn parse_grid(s: &str) -> Result<Vec<BigRational>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(Error::Parse(format!("grid {s:?} is not START:STOP:COUNT")));
    };
    let rational = |x: &str| -> Result<BigRational> {
        x.parse::<Param>()?
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::Parse(format!("grid endpoint {x:?} must be rational")))
    };
    let count = count.parse().map_err(|_| Error::Parse(format!("bad grid count {count:?}")))?;
    rational_grid(&rational(start)?, &rational(stop)?, count)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub param: String,
    pub method: String,
    pub outcome: Result<RigidityEstimate>,
}

/// One sweep row: the family with its parameter replaced, estimated by one method.
pub fn sweep_row(family: &RegionSpec, value: &BigRational, method: &MethodSpec, base: &Options) -> SweepRow {
    let outcome = family
        .with_param(Param::rational(value.clone()))
        .and_then(|spec| estimate(&spec, method.method, &method.apply(base)?));
    SweepRow { param: value.to_string(), method: method.to_string(), outcome }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use std::f64::consts::PI;

    #[test]
    fn method_specs() {
        let m: MethodSpec = "moment:12".parse().unwrap();
        assert_eq!(m.apply(&Options::default()).unwrap().degree, 12);
        let l: MethodSpec = "lower:u2".parse().unwrap();
        assert_eq!(l.apply(&Options::default()).unwrap().trial, Trial::Preset(2));
        assert!("bogus".parse::<MethodSpec>().is_err());
        assert!("lower:u9".parse::<MethodSpec>().unwrap().apply(&Options::default()).is_err());
    }

    #[test]
    fn grid() {
        let g = parse_grid("1:2:5").unwrap();
        assert_eq!(g, vec![rat(1, 1), rat(5, 4), rat(3, 2), rat(7, 4), rat(2, 1)]);
        assert_eq!(parse_grid("1/2:1/2:1").unwrap(), vec![rat(1, 2)]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("sqrt(2):2:3").is_err());
    }

    #[test]
    fn dispatch() {
        let o = Options::default();
        let oval = RegionSpec::NeumannOval { a: Param::int(1) };
        let c = estimate(&oval, Method::Conformal, &o).unwrap();
        assert!((c.value - 3.5 * PI).abs() <= c.tail.max(1e-9));
        let disk = estimate(&RegionSpec::UnitDisk, Method::Closed, &o).unwrap();
        assert_eq!(disk.value, PI / 2.0);
        let lo = estimate(&RegionSpec::House { a: Param::ratio(1, 4) }, Method::Lower, &o).unwrap();
        assert_eq!(lo.direction, BoundDirection::Lower);
        let up =
            estimate(&RegionSpec::House { a: Param::ratio(1, 4) }, Method::Moment, &Options { degree: 5, ..o.clone() })
                .unwrap();
        assert!(lo.value < up.value);
        let tri = estimate(&RegionSpec::RightTriangle { a: Param::sqrt_of(rat(2, 1)) }, Method::Series, &o).unwrap();
        assert!((tri.value - 0.1043586).abs() < 4e-6);
    }

    #[test]
    fn dented_disk_condition_named() {
        let spec = RegionSpec::DentedDisk { a: Param::int(0), b: Param::int(2) };
        let err = estimate(&spec, Method::Conformal, &Options::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidParameters(_) | Error::Domain(_)), "{err}");
        assert!(err.to_string().contains("(i)"), "{err}");
    }

    #[test]
    fn sweep_rows_record_errors() {
        let family = RegionSpec::House { a: Param::int(0) };
        let m: MethodSpec = "lower".parse().unwrap();
        let ok = sweep_row(&family, &rat(1, 4), &m, &Options::default());
        assert!(ok.outcome.is_ok());
        let bad = sweep_row(&family, &rat(3, 4), &m, &Options::default());
        assert!(bad.outcome.is_err());
    }
}
