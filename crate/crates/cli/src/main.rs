mod encode;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quasinv::acceptance::run_all;
use quasinv::config::{check_hyperplane_identities, newton_sum, Configuration, SystemLabel};
use quasinv::harmonic::{
    default_quotient_bound, harmonic_profile, harmonic_space, hilbert_quotient, in_ideal_span, quotient_dim,
};
use quasinv::operators::gram_matrix;
use quasinv::quasi::{
    closed_form_numerator, default_bound, is_quasi_invariant, poincare_numerator, quasi_dims, quasi_space,
};
use quasinv::{Error, SeriesTable};

use encode::{dense_series, int, matrix, object, polynomial, quadratic, sparse_series};

#[derive(Parser)]
#[command(name = "quasinv", version, about = "Exact quasi-invariants of deformed Calogero–Moser configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// a2, c2, an or cn
    #[arg(long, default_value = "a2", value_parser = parse_label)]
    system: SystemLabel,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Rank parameter of the ambient families.
    #[arg(long, default_value_t = 2)]
    n: u32,
}

fn parse_label(s: &str) -> Result<SystemLabel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Roots, discriminant, hyperplane identities and Newton sums.
    CheckConfig(SystemArgs),
    /// Dimensions (or a basis, with --degree) of the graded quasi-invariants.
    QuasiDim {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    Poincare {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Deformed harmonic polynomials: a basis with --degree, else the profile.
    Harmonics {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Gram matrices of the bilinear form.
    Gram {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Hilbert function of the quotient by the Newton-sum ideal.
    Hilbert {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Run every acceptance criterion.
    VerifyAll,
    /// Low-degree dimensions for A3(m) and extra Newton sums of A2(m); no checks.
    ExploreStable {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckConfig(_) => "check-config",
            Command::QuasiDim { .. } => "quasi-dim",
            Command::Poincare { .. } => "poincare",
            Command::Harmonics { .. } => "harmonics",
            Command::Gram { .. } => "gram",
            Command::Hilbert { .. } => "hilbert",
            Command::VerifyAll => "verify-all",
            Command::ExploreStable { .. } => "explore-stable",
        }
    }
}

enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_) => Failure::Invalid(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Payload plus whether every check it carries passed.
type Outcome = Result<(Value, bool), Failure>;

fn build(s: &SystemArgs) -> Result<Configuration, Failure> {
    Ok(Configuration::build(s.system, s.m, s.l, s.n)?)
}

fn positive(bound: Option<u32>, default: u32) -> Result<u32, Failure> {
    match bound {
        Some(0) => Err(Failure::Invalid("--max-degree must be positive".into())),
        Some(b) => Ok(b),
        None => Ok(default),
    }
}

fn describe(c: &Configuration) -> Value {
    let p = c.params();
    json!({
        "name": c.name(),
        "system": c.label().name(),
        "m": p.m,
        "l": p.l,
        "n": p.n,
        "ambient_dim": c.ambient_dim(),
        "d": c.discriminant(),
    })
}

fn check_config(s: &SystemArgs) -> Outcome {
    let c = build(s)?;
    let report = check_hyperplane_identities(&c);
    let roots: Vec<Value> = c
        .roots()
        .iter()
        .zip(&report.entries)
        .map(|(r, e)| {
            json!({
                "form": r.form.coeffs().iter().map(quadratic).collect::<Vec<_>>(),
                "multiplicity": int(r.multiplicity),
                "identity": e.passed,
            })
        })
        .collect();
    let sums: Vec<Value> = c
        .generators()
        .iter()
        .map(|g| json!({ "polynomial": polynomial(g), "quasi_invariant": is_quasi_invariant(&c, g).passed() }))
        .collect();
    let ok = report.passed() && sums.iter().all(|v| v["quasi_invariant"] == true);
    let v = object(vec![
        ("configuration", describe(&c)),
        ("denominator_degrees", Value::Array(c.denominator_degrees().iter().map(int).collect())),
        ("newton_sums", Value::Array(sums)),
        ("roots", Value::Array(roots)),
    ]);
    Ok((v, ok))
}

fn quasi_dim(s: &SystemArgs, degree: Option<u32>, max_degree: Option<u32>) -> Outcome {
    let c = build(s)?;
    if let Some(d) = degree {
        let b = quasi_space(&c, d);
        let v = object(vec![
            ("configuration", describe(&c)),
            ("degree", json!(d)),
            ("dim", int(b.dim())),
            ("basis", Value::Array(b.basis.iter().map(polynomial).collect())),
        ]);
        return Ok((v, true));
    }
    let bound = positive(max_degree, default_bound(&c))?;
    let dims = quasi_dims(&c, bound);
    Ok((object(vec![("configuration", describe(&c)), ("dims", dense_series(&dims))]), true))
}

fn planar_closed_form(c: &Configuration) -> Option<SeriesTable> {
    let p = c.params();
    c.is_planar().then(|| closed_form_numerator(c.label(), p.m, p.l).expect("planar family"))
}

fn poincare(s: &SystemArgs, max_degree: Option<u32>) -> Outcome {
    let c = build(s)?;
    let bound = positive(max_degree, default_bound(&c))?;
    let r = match poincare_numerator(&c, bound) {
        Err(e @ Error::InsufficientDegreeBound { .. }) => {
            let v = object(vec![
                ("configuration", describe(&c)),
                ("bound", json!(bound)),
                ("dims", dense_series(&quasi_dims(&c, bound))),
                ("stabilized", json!(false)),
                ("diagnostic", json!(e.to_string())),
            ]);
            return Ok((v, false));
        }
        r => r?,
    };
    let ok = r.matches_closed_form.unwrap_or(true) && (r.palindromic || !c.is_planar());
    let v = object(vec![
        ("configuration", describe(&c)),
        ("bound", json!(bound)),
        ("dims", dense_series(&r.dims)),
        ("numerator", sparse_series(&r.numerator)),
        ("denominator_degrees", Value::Array(r.denominator_degrees.iter().map(int).collect())),
        ("palindromic", json!(r.palindromic)),
        ("stabilized", json!(true)),
        ("matches_closed_form", r.matches_closed_form.map_or(Value::Null, Value::Bool)),
    ]);
    Ok((v, ok))
}

fn harmonics(s: &SystemArgs, degree: Option<u32>, max_degree: Option<u32>) -> Outcome {
    let c = build(s)?;
    if let Some(d) = degree {
        let h = harmonic_space(&c, d);
        let qi = h.basis.iter().all(|p| is_quasi_invariant(&c, p).passed());
        let v = object(vec![
            ("configuration", describe(&c)),
            ("degree", json!(d)),
            ("dim", int(h.dim())),
            ("basis", Value::Array(h.basis.iter().map(polynomial).collect())),
            ("quasi_invariant", json!(qi)),
        ]);
        return Ok((v, qi));
    }
    let bound = positive(max_degree, default_bound(&c))?;
    let profile = harmonic_profile(&c, bound);
    let matches = planar_closed_form(&c).map(|cf| cf.truncated(bound as usize).trimmed() == profile.trimmed());
    let v = object(vec![
        ("configuration", describe(&c)),
        ("bound", json!(bound)),
        ("profile", sparse_series(&profile)),
        ("total", int(profile.sum())),
        ("matches_closed_form", matches.map_or(Value::Null, Value::Bool)),
    ]);
    Ok((v, matches.unwrap_or(true)))
}

fn gram(s: &SystemArgs, degree: Option<u32>, max_degree: Option<u32>) -> Outcome {
    let c = build(s)?;
    let degrees: Vec<u32> = match degree {
        Some(d) => vec![d],
        None => (0..=positive(max_degree, 8)?).collect(),
    };
    let mut ok = true;
    let mut entries = Vec::new();
    for d in degrees {
        let g = gram_matrix(&c, d)?;
        ok &= g.symmetric && g.non_degenerate();
        entries.push(json!({
            "degree": d,
            "dim": int(g.basis.dim()),
            "matrix": matrix(&g.matrix),
            "symmetric": g.symmetric,
            "determinant": quadratic(&g.determinant),
        }));
    }
    Ok((object(vec![("configuration", describe(&c)), ("degrees", Value::Array(entries))]), ok))
}

fn hilbert(s: &SystemArgs, max_degree: Option<u32>) -> Outcome {
    let c = build(s)?;
    let bound = positive(max_degree, default_quotient_bound(&c))?;
    let t = match hilbert_quotient(&c, bound) {
        Err(e @ Error::NotStabilized { .. }) => {
            let dims = SeriesTable::new((0..=bound).map(|d| quotient_dim(&c, d) as i64).collect());
            let v = object(vec![
                ("configuration", describe(&c)),
                ("bound", json!(bound)),
                ("dims", dense_series(&dims)),
                ("stabilized", json!(false)),
                ("diagnostic", json!(e.to_string())),
            ]);
            return Ok((v, false));
        }
        t => t?,
    };
    let v = object(vec![
        ("configuration", describe(&c)),
        ("bound", json!(bound)),
        ("dims", dense_series(&t.dims)),
        ("total", int(t.total)),
        ("stabilized", json!(t.stabilized)),
    ]);
    Ok((v, t.stabilized))
}

fn verify_all() -> Outcome {
    let results = run_all();
    let ok = results.iter().all(|r| r.passed);
    let list =
        results.iter().map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail })).collect();
    Ok((object(vec![("criteria", Value::Array(list))]), ok))
}

fn explore_stable(m: u32, max_degree: u32) -> Outcome {
    if max_degree == 0 || max_degree > 12 {
        return Err(Failure::Invalid("--max-degree must lie in 1..=12".into()));
    }
    let a3 = Configuration::an(3, m)?;
    let dims = quasi_dims(&a3, max_degree);
    let a2 = Configuration::an(2, m)?;
    let extra: Vec<Value> = (4..=5)
        .map(|s| {
            let p = newton_sum(&a2, s);
            json!({
                "s": s,
                "quasi_invariant": is_quasi_invariant(&a2, &p).passed(),
                "outside_ideal": !in_ideal_span(&a2, &p, s),
            })
        })
        .collect();
    let v = object(vec![
        ("a3", object(vec![("configuration", describe(&a3)), ("dims", dense_series(&dims))])),
        ("a2_extra_newton_sums", object(vec![("configuration", describe(&a2)), ("sums", Value::Array(extra))])),
    ]);
    Ok((v, true))
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("QUASINV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("QUASINV_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::CheckConfig(s) => check_config(s),
        Command::QuasiDim { system, degree, max_degree } => quasi_dim(system, *degree, *max_degree),
        Command::Poincare { system, max_degree } => poincare(system, *max_degree),
        Command::Harmonics { system, degree, max_degree } => harmonics(system, *degree, *max_degree),
        Command::Gram { system, degree, max_degree } => gram(system, *degree, *max_degree),
        Command::Hilbert { system, max_degree } => hilbert(system, *max_degree),
        Command::VerifyAll => verify_all(),
        Command::ExploreStable { m, max_degree } => explore_stable(*m, *max_degree),
    };
    let (payload, ok) = match outcome {
        Ok(x) => x,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let status = if ok { "ok" } else { "check-failed" };
    let report = object(vec![
        ("schema", json!(1)),
        ("command", json!(cli.command.name())),
        ("status", json!(status)),
        ("timing_ms", json!(start.elapsed().as_millis() as u64)),
        ("payload", payload),
    ]);
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Text => print!("{}", encode::to_text(&report)),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
