//! Command-line front end: parse vector-field / periodic-system inputs,
//! run the resonance-bound analyses and the exact first-integral oracle,
//! and emit human-readable or machine-readable (`--json`) reports.
//!
//! Exit codes: 0 success; 1 oracle violation (rank exceeds an exact bound);
//! 2 input/parse error; 3 not a singularity; 4 tolerance infeasible;
//! 5 no balances found.

use clap::{Parser, Subcommand, ValueEnum};
use resint::floquet::{monodromy, parse_periodic_system};
use resint::oracle::{independence_rank, rational_first_integrals};
use resint::parse::{parse_rational_point, parse_vector_field};
use resint::quasihomog::theorem4_bound;
use resint::report::{
    AnalysisReport, BoundJson, ComparisonJson, OracleJson, BALANCE_COMPLETENESS_CAVEAT,
};
use resint::resonance::{
    additive_lattice_numeric, multiplicative_lattice, theorem1_bound, ResonanceError,
};
use resint::scalar::{GaussRat, ScalarValue};
use resint::vfield::VectorField;
use std::path::PathBuf;
use std::time::Instant;

const EXIT_VIOLATION: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_NOT_SINGULAR: i32 = 3;
const EXIT_TOL_INFEASIBLE: i32 = 4;
const EXIT_NO_BALANCES: i32 = 5;

#[derive(Parser)]
#[command(
    name = "resint",
    version,
    about = "Resonant-lattice upper bounds on the number of functionally independent generalized rational first integrals, cross-validated by an exact first-integral search"
)]
struct Cli {
    /// Emit one machine-readable JSON document on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Exact,
    Numeric,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bound at a singularity: rank of the additive resonant lattice of the
    /// Jacobian spectrum
    Bound {
        /// Vector-field file (format: `vars x,y; dx = ...; dy = ...`)
        file: PathBuf,
        /// Singular point, comma-separated rationals (default: origin)
        #[arg(long)]
        singularity: Option<String>,
        /// exact: refuse numeric spectra; numeric: force relation detection
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 50)]
        kmax: i64,
    },
    /// Quasi-homogeneous analysis: balances, Kowalevskaya exponents, and
    /// the min-over-balances bound
    Qh {
        file: PathBuf,
        /// Weight exponents, comma-separated nonzero integers
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 64)]
        attempts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Admit the trivial balance c = 0
        #[arg(long)]
        include_zero_balance: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 50)]
        kmax: i64,
    },
    /// Monodromy of a periodic linear system and the multiplier-lattice bound
    Floquet {
        /// Periodic-system file (format: `period 2*pi; n = 2; A[1][1] = ...`)
        file: PathBuf,
        #[arg(long, default_value_t = 10000)]
        steps: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 50)]
        kmax: i64,
    },
    /// Exact first-integral search with side-by-side bound comparison
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_deg: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compare against the quasi-homogeneous bound for these weights
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 50)]
        kmax: i64,
    },
    /// Multiplier-lattice bound from user-supplied periodic-orbit multipliers
    Multipliers {
        /// Comma-separated multipliers: rationals `p/q`, complex `a+bi`, or decimals
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 50)]
        kmax: i64,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn new(code: i32, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match &cli.cmd {
        Cmd::Bound { file, singularity, mode, tol, kmax } => {
            cmd_bound(file, singularity.as_deref(), *mode, *tol, *kmax)
        }
        Cmd::Qh { file, weights, attempts, seed, include_zero_balance, tol, kmax } => {
            cmd_qh(file, weights, *attempts, *seed, *include_zero_balance, *tol, *kmax)
        }
        Cmd::Floquet { file, steps, tol, kmax } => cmd_floquet(file, *steps, *tol, *kmax),
        Cmd::Oracle { file, max_deg, trials, seed, weights, tol, kmax } => {
            cmd_oracle(file, *max_deg, *trials, *seed, weights.as_deref(), *tol, *kmax)
        }
        Cmd::Multipliers { mu, tol, kmax } => cmd_multipliers(mu, *tol, *kmax),
    };
    match result {
        Ok((mut report, exit)) => {
            if cli.json {
                report.timing_ms = None;
                println!("{}", report.to_json());
            } else {
                report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
                print!("{}", render_human(&report));
            }
            std::process::exit(exit);
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            std::process::exit(f.code);
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

fn load_field(path: &PathBuf) -> Result<(String, VectorField), Failure> {
    let text = read_file(path)?;
    let field = parse_vector_field(&text).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    Ok((text, field))
}

fn map_resonance_err(e: ResonanceError) -> Failure {
    let code = match &e {
        ResonanceError::NotASingularity { .. } => EXIT_NOT_SINGULAR,
        ResonanceError::ToleranceInfeasible { .. } | ResonanceError::InvalidTolerance => {
            EXIT_TOL_INFEASIBLE
        }
        ResonanceError::ZeroMultiplier { .. } => EXIT_PARSE,
    };
    Failure::new(code, e.to_string())
}

fn cmd_bound(
    file: &PathBuf,
    singularity: Option<&str>,
    mode: Mode,
    tol: f64,
    kmax: i64,
) -> Result<(AnalysisReport, i32), Failure> {
    let (text, field) = load_field(file)?;
    let x0 = match singularity {
        Some(s) => parse_rational_point(s).map_err(|e| Failure::new(EXIT_PARSE, e))?,
        None => vec![GaussRat::zero(); field.nvars()],
    };
    if x0.len() != field.nvars() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("singularity has {} coordinates, field has {}", x0.len(), field.nvars()),
        ));
    }
    let bound = theorem1_bound(&field, &x0, tol, kmax).map_err(map_resonance_err)?;
    let mut report = AnalysisReport::new("bound", &text);
    match mode {
        Mode::Auto => {
            report.spectrum = Some((&bound.spectrum).into());
            report.set_lattice(&bound.lattice);
            report.bounds.push(BoundJson {
                theorem: "T1".into(),
                bound: Some(bound.bound),
                conditional: !bound.lattice.is_exact(),
                note: None,
            });
        }
        Mode::Exact => {
            if !bound.spectrum.is_exact() {
                return Err(Failure::new(
                    EXIT_TOL_INFEASIBLE,
                    "exact mode requested but the spectrum does not split over the Gaussian rationals",
                ));
            }
            report.spectrum = Some((&bound.spectrum).into());
            report.set_lattice(&bound.lattice);
            report.bounds.push(BoundJson {
                theorem: "T1".into(),
                bound: Some(bound.bound),
                conditional: false,
                note: None,
            });
        }
        Mode::Numeric => {
            let lattice = additive_lattice_numeric(&bound.spectrum.values_c64(), tol, kmax)
                .map_err(map_resonance_err)?;
            report.spectrum = Some((&bound.spectrum).into());
            report.set_lattice(&lattice);
            report.bounds.push(BoundJson {
                theorem: "T1".into(),
                bound: Some(lattice.rank),
                conditional: true,
                note: Some("forced numeric relation detection".into()),
            });
        }
    }
    Ok((report, 0))
}

fn parse_weights(s: &str) -> Result<Vec<i64>, Failure> {
    let weights: Vec<i64> = s
        .split(',')
        .map(|w| w.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::new(EXIT_PARSE, format!("bad weight list: {e}")))?;
    if weights.iter().any(|&w| w == 0) {
        return Err(Failure::new(EXIT_PARSE, "weights must be nonzero"));
    }
    Ok(weights)
}

fn cmd_qh(
    file: &PathBuf,
    weights: &str,
    attempts: usize,
    seed: u64,
    include_zero: bool,
    tol: f64,
    kmax: i64,
) -> Result<(AnalysisReport, i32), Failure> {
    let (text, field) = load_field(file)?;
    let s = parse_weights(weights)?;
    if s.len() != field.nvars() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("{} weights for a field in {} variables", s.len(), field.nvars()),
        ));
    }
    let t4 = theorem4_bound(&field, &s, attempts, seed, include_zero, tol, kmax)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let mut report = AnalysisReport::new("qh", &text);
    report.seed = Some(seed);
    report.set_balances(&t4);
    report.bounds.push(BoundJson {
        theorem: "T4".into(),
        bound: t4.d,
        conditional: true,
        note: Some(match t4.d {
            Some(_) => format!(
                "min d_c over {} balance(s); weights {:?}, degree {}",
                t4.balances.len(),
                t4.decomposition.weights,
                t4.decomposition.degree
            ),
            None => "no bound derived: no nonzero balance found".into(),
        }),
    });
    if t4.d.is_none() {
        return Ok((report, EXIT_NO_BALANCES));
    }
    Ok((report, 0))
}

fn cmd_floquet(
    file: &PathBuf,
    steps: usize,
    tol: f64,
    kmax: i64,
) -> Result<(AnalysisReport, i32), Failure> {
    let text = read_file(file)?;
    let sys =
        parse_periodic_system(&text).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let r = monodromy(&sys, steps, tol, kmax)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let mut report = AnalysisReport::new("floquet", &text);
    report.spectrum = Some((&r.multipliers).into());
    report.set_lattice(&r.lattice);
    report.monodromy = Some((&r).into());
    report.bounds.push(BoundJson {
        theorem: "T3".into(),
        bound: Some(r.bound),
        conditional: true,
        note: Some(format!("monodromy integrated with {steps} steps")),
    });
    Ok((report, 0))
}

fn cmd_oracle(
    file: &PathBuf,
    max_deg: u32,
    trials: usize,
    seed: u64,
    weights: Option<&str>,
    tol: f64,
    kmax: i64,
) -> Result<(AnalysisReport, i32), Failure> {
    let (text, field) = load_field(file)?;
    let integrals = rational_first_integrals(&field, max_deg, seed);
    let cert = independence_rank(&integrals, trials, seed)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let mut report = AnalysisReport::new("oracle", &text);
    report.seed = Some(seed);
    let mut comparisons = Vec::new();
    let mut violation = false;
    // Theorem 1 at the origin when it is a singularity.
    let origin = vec![GaussRat::zero(); field.nvars()];
    match theorem1_bound(&field, &origin, tol, kmax) {
        Ok(b) => {
            let consistent = cert.rank <= b.bound;
            if !consistent && b.lattice.is_exact() {
                violation = true;
            }
            report.spectrum = Some((&b.spectrum).into());
            report.set_lattice(&b.lattice);
            comparisons.push(ComparisonJson {
                theorem: "T1".into(),
                bound: Some(b.bound),
                rank: cert.rank,
                consistent,
            });
        }
        Err(ResonanceError::NotASingularity { .. }) => {
            report.caveats.push("origin is not a singularity; no T1 bound".into());
        }
        Err(e) => return Err(map_resonance_err(e)),
    }
    if let Some(wstr) = weights {
        let s = parse_weights(wstr)?;
        let t4 = theorem4_bound(&field, &s, 64, seed, false, tol, kmax)
            .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
        if let Some(d) = t4.d {
            let consistent = cert.rank <= d;
            let exact_balances = t4.balances.iter().all(|b| b.lattice.is_exact());
            if !consistent && exact_balances {
                violation = true;
            }
            comparisons.push(ComparisonJson {
                theorem: "T4".into(),
                bound: Some(d),
                rank: cert.rank,
                consistent,
            });
            if !report.caveats.iter().any(|c| c == BALANCE_COMPLETENESS_CAVEAT) {
                report.caveats.push(BALANCE_COMPLETENESS_CAVEAT.into());
            }
        } else {
            comparisons.push(ComparisonJson {
                theorem: "T4".into(),
                bound: None,
                rank: cert.rank,
                consistent: true,
            });
        }
    }
    let names = field.vars().to_vec();
    report.oracle = Some(OracleJson {
        integrals: integrals.iter().map(|f| f.to_string_with(&names)).collect(),
        independence_rank: cert.rank,
        trials: cert.trials,
        sample_count: cert.sample_points.len(),
        comparisons,
    });
    Ok((report, if violation { EXIT_VIOLATION } else { 0 }))
}

fn parse_multipliers(s: &str) -> Result<Vec<ScalarValue>, Failure> {
    s.split(',')
        .map(|item| {
            let item = item.trim();
            if let Ok(g) = item.parse::<GaussRat>() {
                return Ok(ScalarValue::Exact(g));
            }
            item.parse::<f64>()
                .map(|v| ScalarValue::Numeric(num_complex::Complex64::new(v, 0.0)))
                .map_err(|_| Failure::new(EXIT_PARSE, format!("bad multiplier `{item}`")))
        })
        .collect()
}

fn cmd_multipliers(mu: &str, tol: f64, kmax: i64) -> Result<(AnalysisReport, i32), Failure> {
    let values = parse_multipliers(mu)?;
    let lattice = multiplicative_lattice(&values, tol, kmax).map_err(map_resonance_err)?;
    let mut report = AnalysisReport::new("multipliers", mu);
    report.set_lattice(&lattice);
    report.bounds.push(BoundJson {
        theorem: "T5".into(),
        bound: Some(lattice.rank),
        conditional: !lattice.is_exact(),
        note: None,
    });
    Ok((report, 0))
}

fn render_human(r: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "== resint {} ==", r.command);
    if let Some(s) = &r.spectrum {
        let vals: Vec<String> = s
            .values
            .iter()
            .map(|v| {
                let base = match &v.value {
                    resint::report::ValueJson::Exact { value } => value.clone(),
                    resint::report::ValueJson::Numeric { re, im } => {
                        format!("{re:.12}{im:+.12}i (±{:.2e})", v.error_radius)
                    }
                };
                if v.multiplicity > 1 {
                    format!("{base} (x{})", v.multiplicity)
                } else {
                    base
                }
            })
            .collect();
        let _ = writeln!(out, "spectrum [{}]: {{{}}}", s.mode, vals.join(", "));
    }
    if let Some(l) = &r.lattice {
        let rows: Vec<String> = l.basis.iter().map(|b| format!("({})", b.join(", "))).collect();
        let _ = writeln!(out, "lattice [{}]: rank {} basis {{{}}}", l.mode, l.rank, rows.join(", "));
        if !l.residuals.is_empty() {
            let res: Vec<String> = l.residuals.iter().map(|x| format!("{x:.2e}")).collect();
            let _ = writeln!(
                out,
                "  residuals [{}]  (tol {:?}, kmax {:?})",
                res.join(", "),
                l.tolerance,
                l.search_bound
            );
        }
    }
    if let Some(balances) = &r.balances {
        let _ = writeln!(out, "balances: {}", balances.len());
        for b in balances {
            let pt: Vec<String> = b
                .point
                .iter()
                .map(|v| match v {
                    resint::report::ValueJson::Exact { value } => value.clone(),
                    resint::report::ValueJson::Numeric { re, im } => format!("{re:.9}{im:+.9}i"),
                })
                .collect();
            let exps: Vec<String> = b
                .exponents
                .values
                .iter()
                .map(|v| match &v.value {
                    resint::report::ValueJson::Exact { value } => value.clone(),
                    resint::report::ValueJson::Numeric { re, im } => format!("{re:.9}{im:+.9}i"),
                })
                .collect();
            let _ = writeln!(
                out,
                "  c = ({})  residual {:.1e}  exponents {{{}}}  d_c = {}",
                pt.join(", "),
                b.residual,
                exps.join(", "),
                b.d_c
            );
        }
    }
    if let Some(m) = &r.monodromy {
        let _ = writeln!(
            out,
            "monodromy: {} steps, est_error {:.2e}, |det M - exp(∫tr A)| = {:.2e}",
            m.steps, m.est_error, m.liouville_deviation
        );
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(out, "oracle integrals ({}):", o.integrals.len());
        for f in &o.integrals {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(
            out,
            "independence rank: {} ({} sample points, {} trials requested)",
            o.independence_rank, o.sample_count, o.trials
        );
        for c in &o.comparisons {
            match c.bound {
                Some(b) => {
                    let verdict = if c.consistent { "consistent" } else { "VIOLATION" };
                    let _ = writeln!(
                        out,
                        "compare [{}]: rank {} vs bound {} -> {}",
                        c.theorem, c.rank, b, verdict
                    );
                }
                None => {
                    let _ = writeln!(out, "compare [{}]: no bound derived", c.theorem);
                }
            }
        }
        if o.comparisons.iter().any(|c| !c.consistent) {
            let _ = writeln!(
                out,
                "*** VIOLATION: oracle rank exceeds a bound — theorem contradiction or bug ***"
            );
        }
    }
    for b in &r.bounds {
        match b.bound {
            Some(v) => {
                let cond = if b.conditional { " (conditional)" } else { "" };
                let _ = writeln!(out, "bound [{}]: {}{}", b.theorem, v, cond);
            }
            None => {
                let _ = writeln!(out, "bound [{}]: none derived", b.theorem);
            }
        }
        if let Some(n) = &b.note {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    for c in &r.caveats {
        let _ = writeln!(out, "caveat: {c}");
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time: {t:.1} ms");
    }
    out
}
