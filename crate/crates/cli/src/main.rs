use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use torsion_core::checks;
use torsion_core::conformal::stress_and_projection;
use torsion_core::runner::{self, MethodSpec, Options, SweepRow};
use torsion_core::{Error, Param, RegionSpec, RigidityEstimate};

const SCHEMA: &str = "torsion-rigidity v1";
const COLUMNS: [&str; 8] = ["param", "method", "degree", "value", "bound_direction", "tail", "precision", "status"];

#[derive(Parser)]
#[command(name = "torsion", version, about = "Torsional rigidity of planar regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate one region by one or more methods.
    Estimate {
        #[command(flatten)]
        region: RegionArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the free parameter of a family over a rational grid.
    Sweep {
        #[command(flatten)]
        region: RegionArgs,
        #[command(flatten)]
        run: RunArgs,
        /// START:STOP:COUNT, endpoints rational.
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        /// Comma-separated check groups.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
    /// Evaluate ψ and F at a disk point, or Q and ν at a region point.
    Eval {
        #[command(flatten)]
        region: RegionArgs,
        /// Disk point `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Region point `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
}

#[derive(Args)]
struct RegionArgs {
    /// JSON region spec file.
    #[arg(long, conflicts_with = "family")]
    spec: Option<PathBuf>,
    /// rectangle, house, right_triangle, equilateral_triangle, unit_disk, dented_disk, neumann_oval.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated methods, each optionally `name:arg` (`moment:12`, `lower:u2`).
    #[arg(long, value_delimiter = ',', default_value = "moment")]
    method: Vec<String>,
    #[arg(long, default_value_t = 10)]
    degree: usize,
    #[arg(long, default_value_t = 200)]
    truncation: usize,
    #[arg(long, default_value_t = 256)]
    precision: u32,
    /// Lower-bound trial: best, u1, u2 or u3.
    #[arg(long, default_value = "best")]
    trial: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// An error with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidRegion(_) | Error::DegenerateRegion(_) | Error::UnsupportedVariant(_) => 2,
        Error::PrecisionExhausted { .. } => 3,
        Error::Domain(_)
        | Error::InvalidParameters(_)
        | Error::InvalidMap(_)
        | Error::InvalidCoefficient { .. }
        | Error::Normalization { .. } => 4,
        _ => 1,
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

impl RegionArgs {
    /// `placeholder` fills a missing leading parameter (the swept one).
    fn spec(&self, placeholder: bool) -> Result<RegionSpec, Failure> {
        if let Some(path) = &self.spec {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?;
            return Ok(RegionSpec::from_json_str(&text)?);
        }
        let family = self
            .family
            .as_deref()
            .ok_or_else(|| Failure { code: 2, message: "either --spec or --family is required".into() })?;
        let mut v = json!({ "family": family });
        for (key, val) in [("a", &self.a), ("b", &self.b)] {
            if let Some(x) = val {
                x.parse::<Param>()?;
                v[key] = Value::String(x.clone());
            }
        }
        if placeholder && v.get("a").is_none() {
            v["a"] = Value::String("1".into());
        }
        if family == "rectangle" && v.get("b").is_none() && placeholder {
            v["b"] = Value::String("1".into());
        }
        Ok(RegionSpec::from_json(&v)?)
    }
}

impl RunArgs {
    fn options(&self) -> Result<Options, Failure> {
        Ok(Options {
            degree: self.degree,
            truncation: self.truncation,
            precision: self.precision,
            trial: self.trial.parse()?,
        })
    }

    fn methods(&self) -> Result<Vec<MethodSpec>, Failure> {
        Ok(self.method.iter().map(|m| m.parse()).collect::<Result<_, Error>>()?)
    }
}

fn csv_record(param: &str, method: &str, outcome: &Result<RigidityEstimate, Error>) -> Vec<String> {
    match outcome {
        Ok(e) => vec![
            param.to_string(),
            method.to_string(),
            e.order.to_string(),
            e.value.to_string(),
            e.direction.to_string(),
            e.tail.to_string(),
            e.precision.map_or("exact".into(), |p| p.to_string()),
            "ok".into(),
        ],
        Err(msg) => vec![
            param.to_string(),
            method.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            format!("error {}: {msg}", exit_code(msg)),
        ],
    }
}

fn json_record(param: &str, method: &str, outcome: &Result<RigidityEstimate, Error>) -> Value {
    match outcome {
        Ok(e) => json!({
            "param": param,
            "method": method,
            "degree": e.order,
            "value": e.value,
            "bound_direction": e.direction,
            "tail": e.tail,
            "precision": e.precision,
            "status": "ok",
            "exact": e.exact,
            "flags": e.flags,
        }),
        Err(msg) => json!({
            "param": param,
            "method": method,
            "status": "error",
            "code": exit_code(msg),
            "error": msg.to_string(),
        }),
    }
}

fn render(format: Format, header: &str, rows: &[SweepRow]) -> Result<String, Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(COLUMNS).map_err(io_failure)?;
            for r in rows {
                w.write_record(csv_record(&r.param, &r.method, &r.outcome)).map_err(io_failure)?;
            }
            let body = String::from_utf8(w.into_inner().map_err(io_failure)?).map_err(io_failure)?;
            Ok(format!("# {SCHEMA} {header}\n{body}"))
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|r| json_record(&r.param, &r.method, &r.outcome)).collect();
            let doc = json!({ "schema": SCHEMA, "context": header, "columns": COLUMNS, "rows": rows });
            Ok(serde_json::to_string_pretty(&doc).map_err(io_failure)? + "\n")
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(io_failure),
    }
}

/// The leading parameter of a family spec, for the `param` column.
fn param_label(spec: &RegionSpec) -> String {
    let v = spec.to_json();
    v.get("a").and_then(Value::as_str).unwrap_or("").to_string()
}

fn estimate(region: &RegionArgs, run: &RunArgs, format: Format, out: &Option<PathBuf>) -> Result<(), Failure> {
    let spec = region.spec(false)?;
    spec.validate()?;
    let opts = run.options()?;
    let methods = run.methods()?;
    let mut first_err: Option<Error> = None;
    let rows: Vec<SweepRow> = methods
        .iter()
        .map(|m| {
            let outcome = m.apply(&opts).and_then(|o| runner::estimate(&spec, m.method, &o));
            if let Err(e) = &outcome {
                first_err.get_or_insert(e.clone());
            }
            SweepRow { param: param_label(&spec), method: m.to_string(), outcome }
        })
        .collect();
    // a lone failing method is reported as an error, not as a row
    if let (Some(e), 1) = (&first_err, rows.len()) {
        return Err(e.clone().into());
    }
    emit(&render(format, &format!("spec={spec}"), &rows)?, out)?;
    match first_err {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn sweep(region: &RegionArgs, run: &RunArgs, grid: &str, format: Format, out: &Option<PathBuf>) -> Result<(), Failure> {
    let family = region.spec(true)?;
    family.with_param(Param::int(1))?;
    let opts = run.options()?;
    let methods = run.methods()?;
    let grid = runner::parse_grid(grid)?;
    let jobs: Vec<_> = grid.iter().flat_map(|a| methods.iter().map(move |m| (a, m))).collect();
    let rows: Vec<SweepRow> = jobs.par_iter().map(|(a, m)| runner::sweep_row(&family, a, m, &opts)).collect();
    let header = format!(
        "family={} methods={} degree={} truncation={} precision={}",
        family.family_name(),
        run.method.join(","),
        opts.degree,
        opts.truncation,
        opts.precision
    );
    emit(&render(format, &header, &rows)?, out)
}

fn verify(only: &Option<Vec<String>>) -> Result<(), Failure> {
    if let Some(groups) = only {
        if let Some(g) = groups.iter().find(|g| !checks::GROUPS.contains(&g.as_str())) {
            return Err(Failure {
                code: 2,
                message: format!("unknown group {g:?}; known: {}", checks::GROUPS.join(", ")),
            });
        }
    }
    let results = checks::run(only.as_deref());
    for c in &results {
        println!("{c}");
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("{} checks, {} failed", results.len(), failed);
    if failed > 0 {
        return Err(Failure { code: 1, message: format!("{failed} checks failed") });
    }
    Ok(())
}

fn parse_point(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure { code: 4, message: format!("point {s:?} is not re,im") };
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn eval(region: &RegionArgs, w: &Option<String>, z: &Option<String>) -> Result<(), Failure> {
    let spec = region.spec(false)?;
    let map = runner::conformal_map(&spec)?;
    let mut doc = json!({ "spec": spec.to_json() });
    if let Some(w) = w {
        let w = parse_point(w)?;
        if w.norm() >= 1.0 {
            return Err(Failure { code: 4, message: "w must lie in the open unit disk".into() });
        }
        let (f, fp) = map.herglotz(w);
        doc["w"] = c(w);
        doc["psi"] = c(map.psi(w));
        doc["dpsi"] = c(map.dpsi(w));
        doc["F"] = c(f);
        doc["dF"] = c(fp);
    }
    if let Some(z) = z {
        let z = parse_point(z)?;
        let sp = stress_and_projection(map.as_ref());
        doc["z"] = c(z);
        doc["phi"] = c(map.phi(z));
        doc["Q"] = c(sp.q(z));
        doc["nu"] = json!(sp.nu(z));
    }
    if w.is_none() && z.is_none() {
        return Err(Failure { code: 4, message: "give --w or --z".into() });
    }
    println!("{}", serde_json::to_string_pretty(&doc).map_err(io_failure)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate { region, run, format, out } => estimate(region, run, *format, out),
        Command::Sweep { region, run, grid, format, out } => sweep(region, run, grid, *format, out),
        Command::Verify { only } => verify(only),
        Command::Eval { region, w, z } => eval(region, w, z),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
