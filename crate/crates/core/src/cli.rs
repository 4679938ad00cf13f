//! Batch command-line frontend. Every subcommand prints one JSON envelope
//! (or a plain listing with `--human`); exit codes are 0 on success, 2 on
//! input errors and 3 when a resource cap stops the computation.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bigint::TooLarge;
use crate::cohomology::{
    gamma_exact, hilbert_function, hilbert_polynomial, hilbert_series_numerator, CohomologyError, GammaConfig,
    HilbertPolynomial,
};
use crate::corpus::{corpus_audit, CorpusSpec};
use crate::field::{Field, Fp, Rational};
use crate::gotzmann::{gotzmann_decompose, gotzmann_decompose_ideal, hoa_bound, GotzmannError};
use crate::grassmann::{hilb_equations, plucker_point_of_subscheme, GrassmannError, HilbConfig};
use crate::groebner::{buchberger, dube_bound, initial_ideal, GroebnerConfig, GroebnerError};
use crate::mono_gamma::{audit_presentation, gamma_bound_general, gamma_bound_monomial, ModulePresentation, MonoGammaError};
use crate::poly::{parse_ideal, parse_polynomial, IdealPresentation, Monomial, MonomialOrder, PolyError};
use crate::towers::{chain_audit, generator_bounds, nns_bound, nori_bound, pi1_bound, BoundVariant, ChainConfig, TowerError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "torsion-bounds", version, about = "Exact computations behind effective bounds on Néron–Severi torsion")]
struct Cli {
    /// Print a plain key/value listing instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Include wall-clock time in the envelope (makes output non-deterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum FieldChoice {
    /// The prime field GF(32003).
    Fp,
    /// The rationals.
    Qq,
}

#[derive(Debug, Args, Serialize)]
struct IdealArgs {
    /// Ambient projective space P^r.
    #[arg(long)]
    r: usize,
    /// File with one homogeneous generator per line in x0..xr.
    #[arg(long)]
    ideal: PathBuf,
    #[arg(long, value_enum, default_value = "fp")]
    field: FieldChoice,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact dimension of the global sections of O_Y for Y = Proj R/I, by
    /// stabilizing graded Hom from powers of the irrelevant ideal.
    GammaExact {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Largest degree probed before giving up.
        #[arg(long, default_value_t = 24)]
        t_max: u32,
    },
    /// The recursive splitting bound on sections of O_Y (sharp for monomial
    /// ideals, via the initial ideal otherwise), with the d^r ceiling and the
    /// closed-form general bound.
    GammaBound {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value = "grevlex")]
        order: MonomialOrder,
        /// Include the full recursion trace.
        #[arg(long)]
        trace: bool,
    },
    /// Audit one presentation (m, I, d): exact sections against the
    /// recursion's bound and the #M/d majorant of the stronger monomial bound.
    GammaAudit {
        #[arg(long)]
        r: usize,
        /// Monomial ideal file.
        #[arg(long)]
        ideal: PathBuf,
        /// The shift monomial m, e.g. x0^2; defaults to 1.
        #[arg(long)]
        shift: Option<String>,
        /// Box size; defaults to the least admissible value.
        #[arg(long)]
        d: Option<u32>,
    },
    /// Reduced Gröbner basis by Buchberger's algorithm, and the initial ideal.
    Groebner {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value = "grevlex")]
        order: MonomialOrder,
    },
    /// Hilbert function, series numerator and Hilbert polynomial of R/I.
    Hilbert {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Hilbert function values are listed for t = 0..=t_max.
        #[arg(long, default_value_t = 10)]
        t_max: u32,
    },
    /// Gotzmann's binomial decomposition of a Hilbert polynomial and the
    /// Gotzmann number.
    Gotzmann {
        /// Polynomial in t, e.g. "3t+1" or "C(t+2,2) - 1".
        #[arg(long)]
        poly: String,
        /// Treat the polynomial as that of the ideal sheaf in P^r.
        #[arg(long)]
        ideal_r: Option<usize>,
    },
    /// Hoa's bound on the Gotzmann number from degree, Krull dimension and
    /// codimension.
    Hoa {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
    },
    /// Dubé's bound on the degrees of reduced Gröbner basis elements.
    Dube {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
    /// Equations of the Hilbert scheme inside the Plücker space: quadrics,
    /// Fitting minors of the multiplication matrix, and containment in X.
    HilbEqs {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: u32,
        /// Hilbert polynomial Q of the subschemes.
        #[arg(long)]
        q: String,
        /// Optional ideal file for the ambient scheme X.
        #[arg(long)]
        x: Option<PathBuf>,
        /// Write the equations, one per line, to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Proceed when t is below the Gotzmann threshold.
        #[arg(long)]
        allow_below_threshold: bool,
        /// Evaluate all equations at the coordinate points.
        #[arg(long)]
        check_coordinate_points: bool,
    },
    /// Plücker coordinates of the degree-t piece of the ideal of Z, the
    /// point of Z in Gotzmann's embedding.
    PluckerPoint {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        t: u32,
        /// Expected dimension of the degree-t piece.
        #[arg(long)]
        n: Option<usize>,
    },
    /// The iterated-exponential bound on Néron–Severi torsion.
    NnsBound {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "headline")]
        variant: BoundVariant,
    },
    /// The bound on torsion of the abelianized étale fundamental group.
    Pi1Bound {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
    /// The bound on torsion of the abelianized Nori fundamental group scheme.
    NoriBound {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
    /// Generator counts for Néron–Severi torsion from the degree of X.
    GenBound {
        #[arg(long)]
        deg: u64,
    },
    /// Step-by-step check of the inequality chain behind the torsion tower.
    ChainAudit {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        /// Quantities with more decimal digits are compared as towers.
        #[arg(long, default_value_t = 100_000)]
        digit_cap: u64,
    },
    /// Seeded corpus audit of the splitting recursion against exact sections,
    /// recording where the #M/d majorant of the stronger monomial bound fails.
    CorpusAudit {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        #[arg(long, default_value_t = 4)]
        d_max: u32,
    },
}

/// What one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Resource(String),
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<TooLarge> for CliError {
    fn from(e: TooLarge) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<MonoGammaError> for CliError {
    fn from(e: MonoGammaError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GotzmannError> for CliError {
    fn from(e: GotzmannError) -> Self {
        match e {
            GotzmannError::StepCap { .. } | GotzmannError::TooLarge(_) => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GrassmannError> for CliError {
    fn from(e: GrassmannError) -> Self {
        match e {
            GrassmannError::ColumnBudgetExceeded { .. }
            | GrassmannError::MinorBudgetExceeded { .. }
            | GrassmannError::ScaleExceeded { .. } => CliError::Resource(e.to_string()),
            GrassmannError::Gotzmann(g) => g.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::PrecisionLoss { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn load_ideal<F: Field>(path: &Path, r: usize) -> Result<IdealPresentation<F>, CliError> {
    let text = read_file(path)?;
    parse_ideal(&text, r).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn parse_hp(flag: &str, text: &str) -> Result<HilbertPolynomial, CliError> {
    text.parse().map_err(|e| CliError::input(format!("--{flag}: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize to JSON")
}

fn gamma_exact_cmd<F: Field>(a: &IdealArgs, t_max: u32) -> Result<Value, CliError> {
    let ideal: IdealPresentation<F> = load_ideal(&a.ideal, a.r)?;
    let res = gamma_exact(&ideal, &GammaConfig { t_max, ..GammaConfig::default() })?;
    Ok(json!({ "dim_gamma": res.dim, "threshold": res.threshold, "probes": res.probes, "field": F::name() }))
}

fn gamma_bound_cmd<F: Field>(a: &IdealArgs, order: MonomialOrder, trace: bool) -> Result<Value, CliError> {
    let ideal: IdealPresentation<F> = load_ideal(&a.ideal, a.r)?;
    let mut v = match ideal.as_monomial_ideal() {
        Some(mono) => {
            let b = gamma_bound_monomial(&mono);
            json!({ "monomial": true, "bound": b.bound, "d": b.d, "d_pow_r": b.d_pow_r.to_string(),
                    "depth": b.trace.depth(), "trace": to_value(&b.trace) })
        }
        None => {
            let g = gamma_bound_general(&ideal, order, &GroebnerConfig::default())?;
            json!({ "monomial": false, "order": order.name(), "initial_ideal": g.initial_ideal.to_string(),
                    "bound": g.sharp.bound, "d": g.sharp.d, "d_pow_r": g.sharp.d_pow_r.to_string(),
                    "input_d": g.input_d, "closed_form": g.closed_form.map(|c| c.to_string()),
                    "depth": g.sharp.trace.depth(), "trace": to_value(&g.sharp.trace) })
        }
    };
    if !trace {
        v.as_object_mut().unwrap().remove("trace");
    }
    Ok(v)
}

fn groebner_cmd<F: Field>(a: &IdealArgs, order: MonomialOrder) -> Result<Value, CliError> {
    let ideal: IdealPresentation<F> = load_ideal(&a.ideal, a.r)?;
    let gb = buchberger(&ideal, order, &GroebnerConfig::default())?;
    let basis: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
    Ok(json!({ "order": order.name(), "field": F::name(), "basis": basis,
               "initial_ideal": gb.initial_ideal().to_string(), "unit": gb.is_unit() }))
}

fn hilbert_cmd<F: Field>(a: &IdealArgs, t_max: u32) -> Result<Value, CliError> {
    let ideal: IdealPresentation<F> = load_ideal(&a.ideal, a.r)?;
    let cfg = GroebnerConfig::default();
    let init = initial_ideal(&ideal, MonomialOrder::GradedRevLex, &cfg)?;
    let values: Vec<u64> = (0..=t_max).map(|t| hilbert_function(&ideal, t, &cfg)).collect::<Result<_, _>>()?;
    let series = hilbert_series_numerator(&init)?;
    let hp = hilbert_polynomial(&ideal, &cfg)?;
    Ok(json!({ "hilbert_function": values, "series_numerator": series.to_string(),
               "series_coefficients": series.coeffs(), "hilbert_polynomial": hp.to_string() }))
}

fn parse_shift(text: &str, r: usize) -> Result<Monomial, CliError> {
    let p = parse_polynomial::<Fp>(text, r).map_err(|e| CliError::input(format!("--shift: {e}")))?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if *c == Fp::from_i64(1) => Ok(m.clone()),
        _ => Err(CliError::input(format!("--shift: `{text}` is not a monomial"))),
    }
}

fn run_command(cmd: &Command) -> Result<(&'static str, Value, Value), CliError> {
    use Command::*;
    Ok(match cmd {
        GammaExact { ideal, t_max } => {
            let v = match ideal.field {
                FieldChoice::Fp => gamma_exact_cmd::<Fp>(ideal, *t_max)?,
                FieldChoice::Qq => gamma_exact_cmd::<Rational>(ideal, *t_max)?,
            };
            ("gamma-exact", json!({ "ideal": ideal, "t_max": t_max }), v)
        }
        GammaBound { ideal, order, trace } => {
            let v = match ideal.field {
                FieldChoice::Fp => gamma_bound_cmd::<Fp>(ideal, *order, *trace)?,
                FieldChoice::Qq => gamma_bound_cmd::<Rational>(ideal, *order, *trace)?,
            };
            ("gamma-bound", json!({ "ideal": ideal, "order": order.name(), "trace": trace }), v)
        }
        GammaAudit { r, ideal, shift, d } => {
            let pres: IdealPresentation<Fp> = load_ideal(ideal, *r)?;
            let mono = pres
                .as_monomial_ideal()
                .ok_or_else(|| CliError::input(format!("{}: the ideal is not monomial", ideal.display())))?;
            let shift_m = match shift {
                Some(s) => parse_shift(s, *r)?,
                None => Monomial::one(r + 1),
            };
            let floor = mono.d().max(1).max(shift_m.exponents().iter().copied().max().unwrap_or(0));
            let p = ModulePresentation::new(shift_m, mono, d.unwrap_or(floor))?;
            let audit = audit_presentation(&p, &GammaConfig::default())?;
            ("gamma-audit", json!({ "r": r, "ideal": ideal, "shift": shift, "d": d }), to_value(&audit))
        }
        Groebner { ideal, order } => {
            let v = match ideal.field {
                FieldChoice::Fp => groebner_cmd::<Fp>(ideal, *order)?,
                FieldChoice::Qq => groebner_cmd::<Rational>(ideal, *order)?,
            };
            ("groebner", json!({ "ideal": ideal, "order": order.name() }), v)
        }
        Hilbert { ideal, t_max } => {
            let v = match ideal.field {
                FieldChoice::Fp => hilbert_cmd::<Fp>(ideal, *t_max)?,
                FieldChoice::Qq => hilbert_cmd::<Rational>(ideal, *t_max)?,
            };
            ("hilbert", json!({ "ideal": ideal, "t_max": t_max }), v)
        }
        Gotzmann { poly, ideal_r } => {
            let hp = parse_hp("poly", poly)?;
            let dec = match ideal_r {
                Some(r) => gotzmann_decompose_ideal(&hp, *r)?,
                None => gotzmann_decompose(&hp)?,
            };
            let v = json!({ "gotzmann_number": dec.s(), "a": dec.a, "runs": dec.runs(),
                            "reconstructed": dec.reconstruct().to_string() });
            ("gotzmann", json!({ "poly": poly, "ideal_r": ideal_r }), v)
        }
        Hoa { d, b, c } => ("hoa", json!({ "d": d, "b": b, "c": c }), json!({ "bound": hoa_bound(*d, *b, *c)?.to_string() })),
        Dube { d, r } => {
            if *d < 1 || *r < 1 {
                return Err(CliError::input("dube needs --d >= 1 and --r >= 1"));
            }
            ("dube", json!({ "d": d, "r": r }), json!({ "bound": dube_bound(*d, *r)?.to_string() }))
        }
        HilbEqs { r, t, q, x, out, allow_below_threshold, check_coordinate_points } => {
            let qp = parse_hp("q", q)?;
            let xi: Option<IdealPresentation<Rational>> = x.as_deref().map(|p| load_ideal(p, *r)).transpose()?;
            let cfg = HilbConfig { allow_below_threshold: *allow_below_threshold, ..HilbConfig::default() };
            let eqs = hilb_equations(*r, *t, &qp, xi.as_ref(), &cfg)?;
            if let Some(path) = out {
                std::fs::write(path, eqs.export())
                    .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut v = json!({ "manifest": to_value(&eqs.manifest()) });
            if *check_coordinate_points {
                let checks: Vec<Value> = eqs
                    .coordinate_points()
                    .iter()
                    .map(|(missing, pt)| {
                        let c = eqs.check_point(pt);
                        let missing: Vec<String> = missing.iter().map(|m| m.to_string()).collect();
                        json!({ "missing": missing, "accepted": c.accepted(), "check": to_value(&c) })
                    })
                    .collect();
                v["coordinate_points"] = Value::Array(checks);
            }
            let params = json!({ "r": r, "t": t, "q": q, "x": x, "out": out,
                                 "allow_below_threshold": allow_below_threshold });
            ("hilb-eqs", params, v)
        }
        PluckerPoint { r, ideal, t, n } => {
            let z: IdealPresentation<Rational> = load_ideal(ideal, *r)?;
            let (space, pt) = plucker_point_of_subscheme(&z, *t, *n)?;
            let coords: Vec<Value> = space
                .variables()
                .iter()
                .zip(&pt.coords)
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(v, c)| json!({ "variable": v.name(), "value": c.to_string() }))
                .collect();
            let v = json!({ "n": pt.n, "dim_v": pt.dim_v, "nonzero_coordinates": coords });
            ("plucker-point", json!({ "r": r, "ideal": ideal, "t": t, "n": n }), v)
        }
        NnsBound { d, r, variant } => {
            let b = nns_bound(*d, *r, *variant)?;
            ("nns-bound", json!({ "d": d, "r": r, "variant": variant }), to_value(&b))
        }
        Pi1Bound { d, r } => ("pi1-bound", json!({ "d": d, "r": r }), to_value(&pi1_bound(*d, *r)?)),
        NoriBound { d, r } => ("nori-bound", json!({ "d": d, "r": r }), to_value(&nori_bound(*d, *r)?)),
        GenBound { deg } => ("gen-bound", json!({ "deg": deg }), to_value(&generator_bounds(*deg)?)),
        ChainAudit { d, r, digit_cap } => {
            let a = chain_audit(*d, *r, &ChainConfig { digit_cap: *digit_cap })?;
            ("chain-audit", json!({ "d": d, "r": r, "digit_cap": digit_cap }), to_value(&a))
        }
        CorpusAudit { seed, count, r_max, d_max } => {
            if *r_max < 1 || *d_max < 1 {
                return Err(CliError::input("corpus-audit needs --r-max >= 1 and --d-max >= 1"));
            }
            let spec = CorpusSpec { seed: *seed, count: *count, r_max: *r_max, d_max: *d_max };
            let a = corpus_audit(&spec, &GammaConfig::default())?;
            let params = json!({ "seed": seed, "count": count, "r_max": r_max, "d_max": d_max });
            ("corpus-audit", params, to_value(&a))
        }
    })
}

fn human(command: &str, result: &Value) -> String {
    let mut out = format!("command: {command}\n");
    match result {
        Value::Object(map) => {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {shown}\n"));
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    out
}

/// Parse `args` (program name first) and run the command.
pub fn dispatch<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CliOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    match run_command(&cli.command) {
        Ok((name, params, result)) => {
            let stdout = if cli.human {
                human(name, &result)
            } else {
                let mut env = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "parameters": params,
                    "result": result,
                    "versions": { "torsion-bounds": env!("CARGO_PKG_VERSION") },
                });
                if cli.timing {
                    env["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
                }
                serde_json::to_string_pretty(&env).expect("envelope serializes") + "\n"
            };
            CliOutput { code: 0, stdout, stderr: String::new() }
        }
        Err(CliError::Input(msg)) => CliOutput { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(CliError::Resource(msg)) => {
            CliOutput { code: 3, stdout: String::new(), stderr: format!("error: resource limit: {msg}\n") }
        }
    }
}

/// Entry point for the binary: run and write the streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = dispatch(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
