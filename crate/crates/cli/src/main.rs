//! `kacdt`: Kac polynomials, BPS invariants and related series from the command line.

mod error;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kacdt_core::bps::{self, DeformationData};
use kacdt_core::charser::GradedSeries;
use kacdt_core::fqrep::{count_abs_indec_classes, Caps};
use kacdt_core::kac::{HuaKac, KacCache, KacSource, OracleKac};
use kacdt_core::ncpot::{
    canonical_tripled_potential, check_conifold, check_gkw, jacobi_relations, mu_potential, NCPoly,
    Potential, Substitution,
};
use kacdt_core::quiver::{DimVector, Quiver};
use kacdt_core::{pairing, parse_rational_list, Rational};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "kacdt",
    version,
    about = "Kac polynomials and BPS invariants of deformed tripled quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Kac cache file (default: $KACDT_CACHE, else the user cache directory).
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Do not read or write the Kac cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// How Kac polynomials are obtained.
    #[arg(long, global = true, value_enum, default_value_t = Backend::Oracle)]
    kac_backend: Backend,

    /// Largest representation space the oracle may enumerate.
    #[arg(long, global = true, value_name = "N")]
    max_reps: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Interpolated finite-field counts (normative).
    Oracle,
    /// Hua's generating function.
    Hua,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kac polynomial a_{Q,d}(q).
    Kac(KacArgs),
    /// Refined and Hodge BPS invariants of the deformed tripled quiver.
    Dt(DtArgs),
    /// Free CoHA, PBW or deformed stack series.
    Series(SeriesArgs),
    /// Potentials on path algebras: derivatives, Jacobi relations, checks.
    Potential(PotentialArgs),
    /// Orbit statistics of d-dimensional representations over F_p.
    Count(CountArgs),
}

#[derive(Args, Debug)]
struct QuiverArg {
    /// Quiver JSON file; `point`, `jordan` and `affA1` (with or without
    /// `.json`) name built-in quivers when no such file exists.
    #[arg(long, value_name = "FILE")]
    quiver: String,
}

#[derive(Args, Debug)]
struct KacArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    /// Dimension vector, e.g. `1,1`.
    #[arg(long, value_name = "LIST")]
    dim: String,
}

#[derive(Args, Debug)]
struct DtArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    /// Deformation parameter, e.g. `1,-1` or `1/2,0`.
    #[arg(long, value_name = "LIST")]
    mu: String,
    #[arg(long, value_name = "LIST")]
    dim: String,
    /// Power n of the loop term (1/n) μ ω^n; 1 or 2.
    #[arg(long, default_value_t = 2)]
    power: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Stack,
    Coha,
    Free,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    #[arg(long, value_enum)]
    kind: SeriesKind,
    /// Required for `stack` and `coha`.
    #[arg(long, value_name = "LIST")]
    mu: Option<String>,
    /// Largest total dimension kept.
    #[arg(long, default_value_t = 6)]
    cutoff: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Action {
    Derive,
    Jacobi,
    Substitute,
    Tripled,
    CheckGkw,
    CheckConifold,
}

#[derive(Args, Debug)]
struct PotentialArgs {
    #[arg(long, value_enum)]
    action: Action,
    /// Not needed for `check-conifold`.
    #[arg(long, value_name = "FILE")]
    quiver: Option<String>,
    #[arg(long, value_name = "LIST")]
    mu: Option<String>,
    /// Power n of the loop term in the deformed potential.
    #[arg(long, default_value_t = 2)]
    power: u32,
    /// Potential text, e.g. `1/2 * w0.w0 - 1 * a.b`. Without it, `derive`
    /// and `jacobi` use the canonical potential of the tripled quiver
    /// (deformed by `--mu` if given).
    #[arg(long, value_name = "TEXT", allow_hyphen_values = true)]
    potential: Option<String>,
    /// Arrow to differentiate by.
    #[arg(long, value_name = "ID")]
    arrow: Option<String>,
    /// Substitution `arrow=poly`; repeatable.
    #[arg(long, value_name = "ARROW=POLY", allow_hyphen_values = true)]
    subst: Vec<String>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    #[arg(long, value_name = "LIST")]
    dim: String,
    #[arg(long)]
    prime: u32,
}

/// A command's result: JSON payload plus its text rendering.
struct Output {
    json: Value,
    text: String,
    /// Checks report failure through the exit code after printing.
    failed_check: Option<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            failed_check: None,
        }
    }
}

fn builtin_quiver(name: &str) -> Option<Quiver> {
    let stem = Path::new(name).file_stem()?.to_str()?;
    match stem {
        "point" => Some(Quiver::point()),
        "jordan" => Some(Quiver::jordan()),
        "affA1" => Some(Quiver::affine_a1()),
        _ => None,
    }
}

fn load_quiver(source: &str) -> Result<Quiver, CliError> {
    match std::fs::read_to_string(source) {
        Ok(text) => Ok(Quiver::from_json(&text)?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => builtin_quiver(source)
            .ok_or_else(|| CliError::Input(format!("{source}: no such quiver file"))),
        Err(e) => Err(CliError::Input(format!("{source}: {e}"))),
    }
}

fn parse_dim(s: &str) -> Result<DimVector, CliError> {
    Ok(s.parse::<DimVector>()?)
}

fn parse_mu(s: &str) -> Result<Vec<Rational>, CliError> {
    parse_rational_list(s).map_err(CliError::Input)
}

fn default_cache_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("KACDT_CACHE") {
        return Some(PathBuf::from(p));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("kacdt").join("kac_cache.json"))
}

fn caps(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(n) = cli.max_reps {
        caps.max_reps = n;
    }
    caps
}

fn kac_source(cli: &Cli) -> Result<Box<dyn KacSource>, CliError> {
    if cli.kac_backend == Backend::Hua {
        return Ok(Box::new(HuaKac::new()));
    }
    let path = if cli.no_cache {
        None
    } else {
        cli.cache.clone().or_else(default_cache_path)
    };
    Ok(match path {
        Some(p) => Box::new(OracleKac::with_cache(caps(cli), KacCache::open(p)?)),
        None => Box::new(OracleKac::new(caps(cli))),
    })
}

fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn run_kac(cli: &Cli, args: &KacArgs) -> Result<Output, CliError> {
    let q = load_quiver(&args.quiver.quiver)?;
    let d = parse_dim(&args.dim)?;
    let kac = kac_source(cli)?;
    let poly = kac.kac_polynomial(&q, &d)?;
    let json = json!({
        "quiver_hash": q.canonical_hash(),
        "d": d.0,
        "backend": kac.name(),
        "poly": poly,
        "text": poly.to_string(),
    });
    Ok(Output::ok(json, poly.to_string()))
}

fn run_dt(cli: &Cli, args: &DtArgs) -> Result<Output, CliError> {
    let q = load_quiver(&args.quiver.quiver)?;
    let mu = parse_mu(&args.mu)?;
    let d = parse_dim(&args.dim)?;
    let kac = kac_source(cli)?;
    let data = DeformationData::new(q.clone(), mu.clone(), args.power)?;
    let refined = bps::dt_refined_power(kac.as_ref(), &data, &d)?;
    let mut json = json!({
        "d": d.0,
        "mu": rational_strings(&mu),
        "power": args.power,
        "mu_dot_d": pairing(&mu, &d).to_string(),
        "refined": refined,
        "refined_text": refined.to_string(),
    });
    let mut text = refined.to_string();
    // the Hodge refinement is only defined for the quadratic deformation
    if args.power == 2 {
        let hodge = bps::dt_hodge(kac.as_ref(), &q, &mu, &d)?;
        json["hodge"] = json!(hodge);
        json["hodge_text"] = json!(hodge.to_string());
        text = format!("{text}\n{hodge}");
    }
    Ok(Output::ok(json, text))
}

fn run_series(cli: &Cli, args: &SeriesArgs) -> Result<Output, CliError> {
    let q = load_quiver(&args.quiver.quiver)?;
    let series: GradedSeries = match args.kind {
        SeriesKind::Free => bps::free_coha_series(&q, args.cutoff),
        SeriesKind::Stack | SeriesKind::Coha => {
            let mu = args
                .mu
                .as_deref()
                .ok_or_else(|| CliError::Input("--mu is required for this series".into()))?;
            let mu = parse_mu(mu)?;
            let kac = kac_source(cli)?;
            if args.kind == SeriesKind::Stack {
                bps::stack_series_deformed(kac.as_ref(), &q, &mu, args.cutoff)?
            } else {
                bps::coha_pbw_series(kac.as_ref(), &q, &mu, args.cutoff)?
            }
        }
    };
    let kind = format!("{:?}", args.kind).to_lowercase();
    let json = json!({
        "kind": kind,
        "cutoff": args.cutoff,
        "support": series.support().iter().map(|d| d.0.clone()).collect::<Vec<_>>(),
        "series": series,
    });
    Ok(Output::ok(json, series.to_string().trim_end().to_string()))
}

fn parse_substitution(q: &Arc<Quiver>, items: &[String]) -> Result<Substitution, CliError> {
    let mut sigma = Substitution::new();
    for item in items {
        let (arrow, image) = item.split_once('=').ok_or_else(|| {
            CliError::Input(format!(
                "substitution `{item}` is not of the form arrow=poly"
            ))
        })?;
        let a = q.require_arrow(arrow.trim())?;
        sigma.set(a, NCPoly::parse(q.clone(), image)?);
    }
    Ok(sigma)
}

/// The potential named by `--potential`, or the (deformed) canonical one on the tripled quiver.
fn potential_arg(args: &PotentialArgs, q: &Quiver) -> Result<Potential, CliError> {
    match &args.potential {
        Some(text) => Ok(Potential::parse(Arc::new(q.clone()), text)?),
        None => match &args.mu {
            Some(mu) => Ok(mu_potential(q, &parse_mu(mu)?, args.power)?),
            None => Ok(canonical_tripled_potential(q)?),
        },
    }
}

fn run_potential(args: &PotentialArgs) -> Result<Output, CliError> {
    if args.action == Action::CheckConifold {
        let r = check_conifold()?;
        let json = json!({
            "action": "check-conifold",
            "passes": r.passes,
            "wtilde_matches_display": r.wtilde_matches_display,
            "substituted": r.substituted.to_string(),
            "expected": r.expected.to_string(),
            "residual": r.residual.to_string(),
            "matches_after_negating_a": r.matches_after_negating_a,
        });
        let verdict = if r.passes { "PASS" } else { "FAIL" };
        let text = format!(
            "{verdict}\nsubstituted: {}\nexpected: {}\nresidual: {}\nmatches after a -> -a: {}",
            r.substituted, r.expected, r.residual, r.matches_after_negating_a
        );
        let failed = (!r.passes)
            .then(|| "substituted potential differs from the displayed target".to_string());
        return Ok(Output {
            json,
            text,
            failed_check: failed,
        });
    }
    let source = args
        .quiver
        .as_deref()
        .ok_or_else(|| CliError::Input("--quiver is required for this action".into()))?;
    let q = load_quiver(source)?;
    match args.action {
        Action::CheckGkw => {
            let mu = parse_mu(
                args.mu
                    .as_deref()
                    .unwrap_or(&vec!["0"; q.vertex_count()].join(",")),
            )?;
            let r = check_gkw(&q, &mu)?;
            let mismatches: Vec<Value> = r
                .mismatches
                .iter()
                .map(|m| json!({"arrow": m.arrow, "expected": m.expected, "actual": m.actual}))
                .collect();
            let json = json!({
                "action": "check-gkw",
                "mu": rational_strings(&mu),
                "passes": r.passes,
                "relations": r.relations,
                "mismatches": mismatches,
            });
            let mut text = format!(
                "{} ({} relations)",
                if r.passes { "PASS" } else { "FAIL" },
                r.relations
            );
            for m in &r.mismatches {
                text.push_str(&format!(
                    "\n{}: expected {}, got {}",
                    m.arrow, m.expected, m.actual
                ));
            }
            let failed = (!r.passes).then(|| {
                "Jacobi relations differ from the deformed preprojective relations".into()
            });
            Ok(Output {
                json,
                text,
                failed_check: failed,
            })
        }
        Action::Tripled => {
            let w = match &args.mu {
                Some(mu) => mu_potential(&q, &parse_mu(mu)?, args.power)?,
                None => canonical_tripled_potential(&q)?,
            };
            Ok(Output::ok(
                json!({"action": "tripled", "potential": w.to_string()}),
                w.to_string(),
            ))
        }
        Action::Derive => {
            let w = potential_arg(args, &q)?;
            let arrow = args
                .arrow
                .as_deref()
                .ok_or_else(|| CliError::Input("--arrow is required".into()))?;
            let der = w.cyclic_derivative_by_id(arrow)?;
            let json = json!({"action": "derive", "arrow": arrow, "potential": w.to_string(), "derivative": der.to_string()});
            Ok(Output::ok(json, der.to_string()))
        }
        Action::Jacobi => {
            let w = potential_arg(args, &q)?;
            let rels = jacobi_relations(w.quiver(), &w)?;
            let map: BTreeMap<&str, String> = rels
                .iter()
                .map(|(a, r)| (a.as_str(), r.to_string()))
                .collect();
            let text = rels
                .iter()
                .map(|(a, r)| format!("{a}: {r}"))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({"action": "jacobi", "potential": w.to_string(), "relations": map});
            Ok(Output::ok(json, text))
        }
        Action::Substitute => {
            let text = args
                .potential
                .as_deref()
                .ok_or_else(|| CliError::Input("--potential is required".into()))?;
            let qa = Arc::new(q);
            let w = Potential::parse(qa.clone(), text)?;
            let sigma = parse_substitution(&qa, &args.subst)?;
            let out = w.substitute(&sigma)?;
            let json = json!({"action": "substitute", "potential": w.to_string(), "result": out.to_string()});
            Ok(Output::ok(json, out.to_string()))
        }
        Action::CheckConifold => unreachable!("handled above"),
    }
}

fn run_count(cli: &Cli, args: &CountArgs) -> Result<Output, CliError> {
    let q = load_quiver(&args.quiver.quiver)?;
    let d = parse_dim(&args.dim)?;
    let r = count_abs_indec_classes(&q, &d, args.prime, &caps(cli))?;
    let mut json = serde_json::to_value(&r).expect("report serializes");
    json["group_order"] = json!(r.group_order.to_string());
    json["d"] = json!(d.0);
    json["prime"] = json!(args.prime);
    let text = format!(
        "abs_indec_orbit_count: {}\norbit_count_all: {}\ntotal_reps: {}\ngroup_order: {}",
        r.abs_indec_orbit_count, r.orbit_count_all, r.total_reps, r.group_order
    );
    Ok(Output::ok(json, text))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Kac(_) => "kac",
        Command::Dt(_) => "dt",
        Command::Series(_) => "series",
        Command::Potential(_) => "potential",
        Command::Count(_) => "count",
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Kac(a) => run_kac(cli, a),
        Command::Dt(a) => run_dt(cli, a),
        Command::Series(a) => run_series(cli, a),
        Command::Potential(a) => run_potential(a),
        Command::Count(a) => run_count(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Input(e.render().to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.kind().exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "kacdt_version": env!("CARGO_PKG_VERSION"),
                        "command": command_name(&cli.command),
                        "result": out.json,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("JSON output")
                    );
                }
                Format::Text => println!("{}", out.text),
            }
            match out.failed_check {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    let err = CliError::CheckFailed(msg);
                    eprintln!("{}", err.to_json());
                    ExitCode::from(err.kind().exit_code() as u8)
                }
            }
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.kind().exit_code() as u8)
        }
    }
}
