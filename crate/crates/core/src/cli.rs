//! The `rittforge` command line. Every subcommand prints JSON on success;
//! domain errors print `{"error": ...}` and exit 1, usage errors exit 2.
//!
//! Arguments documented as `<x.json>` accept either a file path or the JSON
//! text itself.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::acceptance::{Checks, DEFAULT_SEED};
use crate::characters::{evaluate, Base, Character};
use crate::corr::{verify_suite, Suite};
use crate::decompose::{apply_move, complete_decomposition, Decomposition, RittMove};
use crate::equivalence::{affine_biequiv, affine_conjugate, has_symmetries, SandwichSemigroup};
use crate::error::{Error, Result};
use crate::hcorr::HolCorr;
use crate::julia::{
    exact_orbit, float_orbit, parse_map, render, to_complex_coeffs, CellClass, FloatParams, Region, RenderBudgets,
};
use crate::poly::{GaussianRational, Poly, RatFun};

pub const SEED_ENV: &str = "RITTFORGE_SEED";

#[derive(Parser, Debug)]
#[command(name = "rittforge", version, about = "Composition semigroups of polynomials and correspondences")]
pub struct Cli {
    /// Force JSON output everywhere (the suite prints a table otherwise).
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complete prime decomposition with its invariants.
    Decompose { poly: String },
    /// Ritt moves on decompositions.
    #[command(subcommand)]
    Ritt(RittCmd),
    /// Semigroup characters.
    #[command(subcommand)]
    Char(CharCmd),
    /// Affine equivalence decisions.
    #[command(subcommand)]
    Equiv(EquivCmd),
    /// Sandwich semigroups.
    #[command(subcommand)]
    Sandwich(SandwichCmd),
    /// Finite-set correspondence suites.
    #[command(subcommand)]
    Corr(CorrCmd),
    /// Finite holomorphic correspondences.
    #[command(subcommand)]
    Hcorr(HcorrCmd),
    /// Orbit classification and Julia-set rendering.
    #[command(subcommand)]
    Julia(JuliaCmd),
    /// Run the acceptance checks (the default with no subcommand).
    Suite {
        #[arg(long)]
        seed: Option<u64>,
        /// Only these checks (1-based); repeatable.
        #[arg(long = "check")]
        checks: Vec<usize>,
        #[arg(long, default_value_t = 512)]
        res: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RittCmd {
    /// Apply one move to a decomposition.
    Apply { decomposition: String, r#move: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CharKind {
    Degree,
    Length,
    Orbit,
}

#[derive(Subcommand, Debug)]
pub enum CharCmd {
    /// Evaluate a character on a polynomial.
    Eval {
        #[arg(long, value_enum)]
        kind: CharKind,
        /// Length base (symbol or rational) or orbit value `a`.
        #[arg(long)]
        base: Option<String>,
        /// Prime generating the orbit character.
        #[arg(long)]
        prime: Option<String>,
        /// Exponent of the degree character.
        #[arg(long, default_value_t = 1)]
        s: u32,
        poly: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EquivCmd {
    /// Find `q = A∘p∘B`.
    Biorbit { p: String, q: String },
    /// Find `q = A∘p∘A⁻¹`.
    Conj { p: String, q: String },
    /// Nontrivial `p = A∘p∘B`.
    Symmetries { p: String },
}

#[derive(Subcommand, Debug)]
pub enum SandwichCmd {
    /// `f ∗_g h = f∘g∘h`.
    Compose { g: String, f: String, h: String },
}

#[derive(Subcommand, Debug)]
pub enum CorrCmd {
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
pub enum HcorrCmd {
    /// `k2∘k1`: first `k1`, then `k2`.
    Compose {
        k1: String,
        k2: String,
        #[arg(long)]
        squarefree: bool,
    },
    /// Numerical fiber over a point.
    Fiber {
        k: String,
        #[arg(long, value_parser = parse_point)]
        at: Complex64,
    },
}

#[derive(Subcommand, Debug)]
pub enum JuliaCmd {
    /// Classify a grid of starting points.
    Render {
        #[arg(long)]
        map: String,
        #[arg(long, value_parser = parse_point, default_value = "0,0")]
        center: Complex64,
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        #[arg(long, default_value_t = 512)]
        res: usize,
        /// PGM output; written to standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = crate::julia::DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, default_value_t = crate::julia::DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = crate::julia::DEFAULT_HEIGHT_BITS)]
        height_bits: u64,
    },
    /// Classify one orbit, exactly when the point is given as `p/q` parts.
    Orbit {
        #[arg(long)]
        map: String,
        /// `x,y`; exact rationals like `1/2,0` are iterated exactly.
        #[arg(long)]
        at: String,
        /// Iterate in floating point even for exact input.
        #[arg(long)]
        float: bool,
        #[arg(long, default_value_t = crate::julia::DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, default_value_t = crate::julia::DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = crate::julia::DEFAULT_HEIGHT_BITS)]
        height_bits: u64,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_point(s: &str) -> std::result::Result<Complex64, String> {
    let (x, y) = s.split_once(',').ok_or("expected `x,y`")?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(f(x)?, f(y)?))
}

fn exact_point(s: &str) -> Result<GaussianRational> {
    let (x, y) = s.split_once(',').ok_or_else(|| Error::Parse("expected `x,y`".into()))?;
    Ok(GaussianRational::new(crate::poly::parse_rational(x)?, crate::poly::parse_rational(y)?))
}

/// Inline JSON, or a path to a JSON file.
fn load<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with(['{', '[', '"']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

/// Text written to standard output, and the exit code.
enum Output {
    Json(Value, i32),
    Bytes(Vec<u8>),
    Text(String, i32),
}

fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

fn dispatch(cli: Cli) -> Result<Output> {
    let command = cli.command.unwrap_or(Command::Suite { seed: None, checks: Vec::new(), res: 512 });
    Ok(match command {
        Command::Decompose { poly } => {
            let p: Poly = load(&poly)?;
            Output::Json(serde_json::to_value(complete_decomposition(&p)?).expect("serializable"), 0)
        }
        Command::Ritt(RittCmd::Apply { decomposition, r#move }) => {
            let d: Decomposition = load(&decomposition)?;
            let m: RittMove = load(&r#move)?;
            Output::Json(serde_json::to_value(apply_move(&d, &m)?).expect("serializable"), 0)
        }
        Command::Char(CharCmd::Eval { kind, base, prime, s, poly }) => {
            let p: Poly = load(&poly)?;
            let chi = match kind {
                CharKind::Degree => Character::Degree { s },
                CharKind::Length => Character::Length { base: Base::parse(base.as_deref().unwrap_or("t")) },
                CharKind::Orbit => {
                    let prime: Poly = load(prime.as_deref().ok_or_else(|| Error::Parse("--prime is required for orbit".into()))?)?;
                    let a = base.as_deref().unwrap_or("1").parse()?;
                    Character::AffineOrbit { prime, a }
                }
            };
            Output::Json(json!({ "value": evaluate(&chi, &p)? }), 0)
        }
        Command::Equiv(EquivCmd::Biorbit { p, q }) => {
            let (p, q): (Poly, Poly) = (load(&p)?, load(&q)?);
            Output::Json(affine_biequiv(&p, &q).map_or_else(none, |w| serde_json::to_value(w).expect("serializable")), 0)
        }
        Command::Equiv(EquivCmd::Conj { p, q }) => {
            let (p, q): (Poly, Poly) = (load(&p)?, load(&q)?);
            Output::Json(affine_conjugate(&p, &q).map_or_else(none, |a| json!({ "A": a })), 0)
        }
        Command::Equiv(EquivCmd::Symmetries { p }) => {
            let p: Poly = load(&p)?;
            Output::Json(serde_json::to_value(has_symmetries(&p)).expect("serializable"), 0)
        }
        Command::Sandwich(SandwichCmd::Compose { g, f, h }) => {
            let (g, f, h): (Poly, Poly, Poly) = (load(&g)?, load(&f)?, load(&h)?);
            Output::Json(serde_json::to_value(SandwichSemigroup::new(g).compose(&f, &h)).expect("serializable"), 0)
        }
        Command::Corr(CorrCmd::Verify { n, suite }) => {
            let r = verify_suite(n, suite)?;
            Output::Json(r.to_json(), if r.pass { 0 } else { 1 })
        }
        Command::Hcorr(HcorrCmd::Compose { k1, k2, squarefree }) => {
            let (k1, k2): (HolCorr, HolCorr) = (load(&k1)?, load(&k2)?);
            Output::Json(serde_json::to_value(k2.compose(&k1, squarefree)?).expect("serializable"), 0)
        }
        Command::Hcorr(HcorrCmd::Fiber { k, at }) => {
            let k: HolCorr = load(&k)?;
            let pts: Vec<[f64; 2]> = k.fiber(at)?.iter().map(|w| [w.re, w.im]).collect();
            Output::Json(json!({ "fiber": pts }), 0)
        }
        Command::Julia(JuliaCmd::Render { map, center, width, res, out, csv, exact, max_iter, eps, height_bits }) => {
            let p = parse_map(&map)?;
            let budgets = RenderBudgets { max_iter, eps, exact, height_bound: height_bits, ..RenderBudgets::default() };
            let grid = render(&p, &Region::square(center, width), res, res, &budgets)?;
            if let Some(path) = &csv {
                std::fs::write(path, grid.to_csv()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            match &out {
                Some(path) => {
                    std::fs::write(path, grid.to_pgm()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    let counts: serde_json::Map<String, Value> =
                        [CellClass::Finite, CellClass::Undecided, CellClass::Attracted, CellClass::Escape]
                            .into_iter()
                            .map(|c| (c.name().to_string(), json!(grid.count(c))))
                            .collect();
                    Output::Json(json!({ "resolution": [res, res], "counts": counts, "pgm": path }), 0)
                }
                None => Output::Bytes(grid.to_pgm()),
            }
        }
        Command::Julia(JuliaCmd::Orbit { map, at, float, max_iter, eps, height_bits }) => {
            let p = parse_map(&map)?;
            let report = match exact_point(&at) {
                Ok(a) if !float => exact_orbit(&RatFun::from_poly(p), &a, max_iter, height_bits),
                _ => {
                    let a = parse_point(&at).map_err(Error::Parse)?;
                    let coeffs = to_complex_coeffs(&p);
                    let params = FloatParams { max_iter, eps, ..FloatParams::for_map(&coeffs) };
                    float_orbit(&coeffs, a, &params)
                }
            };
            Output::Json(serde_json::to_value(report).expect("serializable"), 0)
        }
        Command::Suite { seed, checks, res } => {
            let runner = Checks { seed: seed.unwrap_or_else(seed_from_env), render_resolution: res, ..Checks::default() };
            let reports = if checks.is_empty() { runner.run_all() } else { checks.iter().map(|&id| runner.run(id)).collect() };
            let code = if reports.iter().all(|r| r.pass) { 0 } else { 1 };
            if cli.json {
                Output::Json(json!({ "seed": runner.seed, "checks": reports, "pass": code == 0 }), code)
            } else {
                let mut table: String = reports.iter().map(|r| r.line() + "\n").collect();
                table.push_str(&format!("{}/{} passed (seed {})\n", reports.iter().filter(|r| r.pass).count(), reports.len(), runner.seed));
                Output::Text(table, code)
            }
        }
    })
}

fn none() -> Value {
    json!({ "result": "none" })
}

/// Parses `args` (program name first), runs the command, writes its output
/// and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let result = dispatch(cli);
    let written = match result {
        Ok(Output::Json(v, code)) => writeln!(out, "{v}").map(|_| code),
        Ok(Output::Bytes(b)) => out.write_all(&b).map(|_| 0),
        Ok(Output::Text(t, code)) => write!(out, "{t}").map(|_| code),
        Err(e) => writeln!(out, "{}", json!({ "error": e.to_string() })).map(|_| 1),
    };
    written.unwrap_or(1)
}
