//! JSON-configured batch runs.
//!
//! A run reads one JSON document, executes one command and emits a JSON
//! report `{"command", "config", "results", "checks"}` (or CSV for the
//! `family` sweep). Angles are radians. Direction names follow the
//! particle numbering `e1, e2, …` with primed alternatives `e1p, e2p, …`;
//! the selector particle in `simulate` is numbered from 1 the same way.

use crate::bell::{
    chsh_condition_lhs, chsh_lambda_closed, chsh_operator, hardy_lambda_closed, hardy_operator,
    maximal_family, optimize_settings_with, singlet_equality_lhs, triplet_equality_lhs, BellKind,
    ChshSettings, FamilyKind, HardySettings, OptimizerOptions, Settings, ViolationReport,
};
use crate::correlations::{
    conditional_correlation_closed, correlation, expectation, unconditional_correlation_closed,
    Expectation,
};
use crate::direction::{Direction, SpinLabel};
use crate::error::Error;
use crate::experiment::{postselect, sample_shots_with};
use crate::linalg::{hermitian_eigen, spin_product, ComplexMatrix, DensityMatrix};
use crate::states::{
    branch_probability, condition_on, make_triorthogonal, reduced_density, Branch, Measurement,
    TriorthogonalSpec,
};
use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

pub const THREADS_ENV: &str = "BELLLAB_THREADS";
/// User-typed coefficients only need to be normalized to this tolerance;
/// they are rescaled exactly before use.
pub const CONFIG_NORM_TOL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

const DEFAULT_SHOTS: usize = 100_000;
const DEFAULT_RESTARTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Corr,
    Chsh,
    Eigen,
    Family,
    Optimize,
    Simulate,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit enum");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub n: usize,
    pub c1: f64,
    pub c2: f64,
    pub labels: Vec<SpinLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridAxis {
    fn points(&self) -> Vec<f64> {
        match self.steps {
            0 => vec![],
            1 => vec![self.start],
            s => (0..s)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / (s - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub phi0: GridAxis,
    pub theta0: GridAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// The configured state itself.
    Full,
    /// Reduced state of particles 1 and 2.
    Reduced,
    /// Conditional state of particles 1 and 2 after selecting on particle 3.
    Conditional,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Selector {
    /// 1-based particle number.
    pub particle: usize,
    pub outcome: SpinLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateConfig>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub directions: BTreeMap<String, Direction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<BellKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selector: Option<Selector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// A configuration problem, with the config line it refers to when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub message: String,
    pub line: Option<usize>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Runtime(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            RunError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => e.fmt(f),
            RunError::Runtime(e) => write!(f, "runtime error: {e}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Runtime(e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
}

impl Check {
    /// `|lhs − rhs| ≤ tolerance`.
    pub fn close(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: (lhs - rhs).abs() <= tolerance,
            lhs,
            rhs,
            tolerance,
        }
    }

    /// `lhs ≤ rhs + tolerance`.
    pub fn at_most(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: lhs <= rhs + tolerance,
            lhs,
            rhs,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub config: RunConfig,
    pub results: Value,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Json(Box<Report>),
    Csv(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Json(r) => {
                let mut s = serde_json::to_string_pretty(r).expect("report serializes");
                s.push('\n');
                s
            }
            Output::Csv(s) => s.clone(),
        }
    }
}

/// Parses a config document; syntax errors carry serde's line number and
/// semantic errors the line of the offending key.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError {
        message: e.to_string(),
        line: Some(e.line()),
    })?;
    validate(&config).map_err(|mut e| {
        if e.line.is_none() {
            e.line = locate_key(text, &e.message);
        }
        e
    })?;
    Ok(config)
}

/// Line of the first quoted key named inside `message` as `'key'`.
fn locate_key(text: &str, message: &str) -> Option<usize> {
    let start = message.find('\'')? + 1;
    let end = start + message[start..].find('\'')?;
    let needle = format!("\"{}\"", &message[start..end]);
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

fn config_err(message: impl Into<String>) -> ConfigError {
    ConfigError {
        message: message.into(),
        line: None,
    }
}

/// Structural validation that does not run any computation.
pub fn validate(config: &RunConfig) -> Result<(), ConfigError> {
    if let Some(s) = &config.state {
        state_spec(s)?;
    }
    for (name, d) in &config.directions {
        if !d.is_finite() {
            return Err(config_err(format!("direction '{name}' has non-finite angles")));
        }
    }
    let needs_state = !matches!(config.command, Command::Eigen | Command::Family);
    if needs_state && config.state.is_none() {
        return Err(config_err(format!("missing 'state' for command {}", config.command)));
    }
    if let Some(0) = config.shots {
        return Err(config_err("'shots' must be at least 1"));
    }
    if let Some(0) = config.restarts {
        return Err(config_err("'restarts' must be at least 1"));
    }
    let n = config.state.as_ref().map(|s| s.n).unwrap_or(0);
    let required: Vec<String> = match config.command {
        Command::Corr => {
            let keep = config.keep.unwrap_or(2);
            if keep == 0 || keep >= n {
                return Err(config_err(format!("'keep' must be in 1..{n}, got {keep}")));
            }
            (1..=keep).map(|k| format!("e{k}")).collect()
        }
        Command::Chsh => {
            if n != 3 {
                return Err(config_err(format!("'state' must have n = 3 for chsh, got {n}")));
            }
            names(&["e1", "e1p", "e2", "e2p", "e3"])
        }
        Command::Eigen => names(&["e1", "e1p", "e2", "e2p"]),
        Command::Family => vec![],
        Command::Optimize => {
            let kind = config.kind.unwrap_or(BellKind::Chsh);
            match (config.target.unwrap_or(Target::Full), kind) {
                (Target::Full, k) if k.particles() != n => {
                    return Err(config_err(format!(
                        "'target' full needs an n = {} state for {kind:?}, got {n}",
                        k.particles()
                    )))
                }
                (Target::Full, _) => vec![],
                (_, BellKind::Hardy) => {
                    return Err(config_err("'target' reduced/conditional only apply to kind chsh"))
                }
                (Target::Reduced, _) if n < 3 => {
                    return Err(config_err("'target' reduced needs n >= 3"))
                }
                (Target::Reduced, _) => vec![],
                (Target::Conditional, _) if n != 3 => {
                    return Err(config_err("'target' conditional needs n = 3"))
                }
                (Target::Conditional, _) => names(&["e3"]),
            }
        }
        Command::Simulate => {
            if let Some(sel) = config.selector {
                if sel.particle == 0 || sel.particle > n {
                    return Err(config_err(format!(
                        "'selector' particle must be in 1..={n}, got {}",
                        sel.particle
                    )));
                }
            }
            (1..=n).map(|k| format!("e{k}")).collect()
        }
    };
    for name in required {
        if !config.directions.contains_key(&name) {
            return Err(config_err(format!(
                "'directions' is missing '{name}' required by {}",
                config.command
            )));
        }
    }
    Ok(())
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn state_spec(s: &StateConfig) -> Result<TriorthogonalSpec, ConfigError> {
    if s.labels.len() != s.n {
        return Err(config_err(format!(
            "'labels' has {} entries but n = {}",
            s.labels.len(),
            s.n
        )));
    }
    let norm_sq = s.c1 * s.c1 + s.c2 * s.c2;
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > CONFIG_NORM_TOL {
        return Err(config_err(format!(
            "'c1'^2 + 'c2'^2 = {norm_sq}, must be 1 within {CONFIG_NORM_TOL:e}"
        )));
    }
    let r = norm_sq.sqrt();
    TriorthogonalSpec::new(s.c1 / r, s.c2 / r, s.labels.clone())
        .map_err(|e| config_err(format!("'state': {e}")))
}

struct Context<'a> {
    config: &'a RunConfig,
    threads: Option<usize>,
}

impl Context<'_> {
    fn dir(&self, name: &str) -> Direction {
        self.config.directions[name]
    }

    fn opt_dir(&self, name: &str) -> Option<Direction> {
        self.config.directions.get(name).copied()
    }

    fn spec(&self) -> TriorthogonalSpec {
        state_spec(self.config.state.as_ref().expect("validated")).expect("validated")
    }

    fn chsh_settings(&self) -> ChshSettings {
        ChshSettings::new(self.dir("e1"), self.dir("e1p"), self.dir("e2"), self.dir("e2p"))
    }
}

/// Executes one validated command.
pub fn run(config: &RunConfig, threads: Option<usize>) -> Result<Output, RunError> {
    validate(config).map_err(RunError::Config)?;
    let ctx = Context { config, threads };
    let (results, checks) = match config.command {
        Command::Corr => run_corr(&ctx)?,
        Command::Chsh => run_chsh(&ctx)?,
        Command::Eigen => run_eigen(&ctx)?,
        Command::Family => return Ok(Output::Csv(run_family(&ctx))),
        Command::Optimize => run_optimize(&ctx)?,
        Command::Simulate => run_simulate(&ctx)?,
    };
    Ok(Output::Json(Box::new(Report {
        command: config.command,
        config: config.clone(),
        results,
        checks,
    })))
}

type Outcome = Result<(Value, Vec<Check>), RunError>;

fn run_corr(ctx: &Context) -> Outcome {
    let spec = ctx.spec();
    let keep = ctx.config.keep.unwrap_or(2);
    let dirs: Vec<Direction> = (1..=keep).map(|k| ctx.dir(&format!("e{k}"))).collect();
    let record = unconditional_correlation_closed(&spec, &dirs)?;
    let rho = reduced_density(&spec, keep)?;
    let operator_value = correlation(&rho, &dirs)?;
    let mut checks = vec![Check::close(
        "unconditional closed form vs operator",
        record.value,
        operator_value,
        1e-10,
    )];
    let mut results = json!({
        "value": record.value,
        "operator_value": operator_value,
        "record": record,
    });
    if let (3, 2, Some(e3)) = (spec.particles(), keep, ctx.opt_dir("e3")) {
        let branch = ctx.config.branch.unwrap_or(Branch::Plus);
        let closed = conditional_correlation_closed(&spec, &dirs[0], &dirs[1], &e3, branch)?;
        let psi = make_triorthogonal(&spec);
        let outcome = branch.outcome(spec.label(2));
        let cond = condition_on(&psi, &[Measurement::new(2, e3, outcome)])?;
        let oracle = correlation(&cond.state, &dirs)?;
        checks.push(Check::close(
            "conditional closed form vs projection",
            closed.value,
            oracle,
            1e-10,
        ));
        results["conditional"] = json!({
            "branch": branch,
            "probability": cond.probability,
            "value": closed.value,
            "operator_value": oracle,
        });
    }
    Ok((results, checks))
}

fn run_chsh(ctx: &Context) -> Outcome {
    let spec = ctx.spec();
    let s = ctx.chsh_settings();
    let e3 = ctx.dir("e3");
    let branch = ctx.config.branch.unwrap_or(Branch::Plus);
    let lhs = chsh_condition_lhs(&spec, &s, &e3, branch)?;
    let probability = branch_probability(&spec, &[e3], branch)?;
    let psi = make_triorthogonal(&spec);
    let cond = condition_on(&psi, &[Measurement::new(2, e3, branch.outcome(spec.label(2)))])?;
    let operator_value = expectation(&cond.state, &chsh_operator(&s))?;
    let lambda = chsh_lambda_closed(&s);
    let report = ViolationReport::new(lhs);
    let checks = vec![
        Check::close("closed form vs projection", lhs, operator_value.abs(), 1e-10),
        Check::at_most("spectral ceiling", lhs, lambda, 1e-9),
        Check::at_most("quantum maximum", lhs, 2.0 * SQRT_2, 1e-9),
    ];
    let results = json!({
        "lhs": lhs,
        "violated": report.violated,
        "margin": report.margin,
        "bound": report.bound,
        "branch": branch,
        "probability": probability,
        "operator_value": operator_value,
        "lambda_closed": lambda,
    });
    Ok((results, checks))
}

fn spectrum_entry(op: &ComplexMatrix, closed: f64) -> Result<(Value, f64), Error> {
    let eig = hermitian_eigen(op)?;
    let numeric = eig.spectral_radius();
    Ok((
        json!({
            "spectrum": eig.values,
            "lambda_numeric": numeric,
            "lambda_closed": closed,
        }),
        numeric,
    ))
}

fn run_eigen(ctx: &Context) -> Outcome {
    let s = ctx.chsh_settings();
    let closed = chsh_lambda_closed(&s);
    let (mut entry, numeric) = spectrum_entry(&chsh_operator(&s), closed)?;
    let (t1, t2) = s.included_angles();
    entry["included_angles"] = json!([t1, t2]);
    let mut results = json!({ "chsh": entry });
    let mut checks = vec![Check::close("chsh largest eigenvalue", numeric, closed, 1e-9)];
    if let (Some(e3), Some(e3p)) = (ctx.opt_dir("e3"), ctx.opt_dir("e3p")) {
        let h = HardySettings::new(s.e1, s.e1p, s.e2, s.e2p, e3, e3p);
        let closed = hardy_lambda_closed(&h);
        let (mut entry, numeric) = spectrum_entry(&hardy_operator(&h), closed)?;
        let (t1, t2, t3) = h.included_angles();
        entry["included_angles"] = json!([t1, t2, t3]);
        results["hardy"] = entry;
        checks.push(Check::close("hardy largest eigenvalue", numeric, closed, 1e-9));
    }
    Ok((results, checks))
}

/// CSV rows `phi0,theta0,lhs,deviation` over the configured grid.
fn run_family(ctx: &Context) -> String {
    let which = ctx.config.family.unwrap_or(FamilyKind::Singlet);
    let grid = ctx.config.grid.unwrap_or(Grid {
        phi0: GridAxis {
            start: 0.0,
            stop: std::f64::consts::TAU,
            steps: 9,
        },
        theta0: GridAxis {
            start: 0.0,
            stop: std::f64::consts::PI,
            steps: 9,
        },
    });
    let mut out = String::from("phi0,theta0,lhs,deviation\n");
    for phi0 in grid.phi0.points() {
        for theta0 in grid.theta0.points() {
            let s = maximal_family(phi0, theta0, which);
            let lhs = match which {
                FamilyKind::Singlet => singlet_equality_lhs(&s),
                FamilyKind::Triplet => triplet_equality_lhs(&s),
            };
            out.push_str(&format!("{phi0},{theta0},{lhs},{}\n", lhs - 2.0 * SQRT_2));
        }
    }
    out
}

fn run_optimize(ctx: &Context) -> Outcome {
    let spec = ctx.spec();
    let kind = ctx.config.kind.unwrap_or(BellKind::Chsh);
    let target = ctx.config.target.unwrap_or(Target::Full);
    let opts = OptimizerOptions {
        restarts: ctx.config.restarts.unwrap_or(DEFAULT_RESTARTS),
        seed: ctx.config.seed.unwrap_or(0),
        threads: ctx.threads,
        ..Default::default()
    };
    let psi = make_triorthogonal(&spec);
    let (result, probability) = match target {
        Target::Full => (optimize_settings_with(&psi, kind, &opts)?, None),
        Target::Reduced => {
            let rho: DensityMatrix = reduced_density(&spec, 2)?;
            (optimize_settings_with(&rho, kind, &opts)?, None)
        }
        Target::Conditional => {
            let branch = ctx.config.branch.unwrap_or(Branch::Plus);
            let e3 = ctx.dir("e3");
            let cond = condition_on(&psi, &[Measurement::new(2, e3, branch.outcome(spec.label(2)))])?;
            (
                optimize_settings_with(&cond.state, kind, &opts)?,
                Some(cond.probability),
            )
        }
    };
    let lambda = match &result.settings {
        Settings::Chsh(s) => chsh_lambda_closed(s),
        Settings::Hardy(s) => hardy_lambda_closed(s),
    };
    let ceiling = match kind {
        BellKind::Chsh => 2.0 * SQRT_2,
        BellKind::Hardy => 4.0,
    };
    let checks = vec![
        Check::at_most("spectral ceiling", result.value, lambda, 1e-9),
        Check::at_most("quantum maximum", result.value, ceiling, 1e-9),
    ];
    let mut results = serde_json::to_value(&result).expect("serializable");
    results["target"] = json!(target);
    results["lambda_closed"] = json!(lambda);
    results["violated"] = json!(ViolationReport::new(result.value).violated);
    if let Some(p) = probability {
        results["probability"] = json!(p);
    }
    Ok((results, checks))
}

fn run_simulate(ctx: &Context) -> Outcome {
    let spec = ctx.spec();
    let n = spec.particles();
    let dirs: Vec<Direction> = (1..=n).map(|k| ctx.dir(&format!("e{k}"))).collect();
    let shots = ctx.config.shots.unwrap_or(DEFAULT_SHOTS);
    let seed = ctx.config.seed.unwrap_or(0);
    let selector = ctx.config.selector.unwrap_or(Selector {
        particle: n,
        outcome: SpinLabel::Up,
    });
    let psi = make_triorthogonal(&spec);
    let records = sample_shots_with(&psi, &dirs, shots, seed, ctx.threads)?;
    let stats = postselect(&records, selector.particle - 1, selector.outcome)?;
    let mut results = json!({ "subensemble": stats });
    let mut checks = Vec::new();

    // analytic values for the same selection, when particles 1 and 2 are not the selector
    if selector.particle > 2 {
        let sel = selector.particle - 1;
        let cond = condition_on(&psi, &[Measurement::new(sel, dirs[sel], selector.outcome)]);
        match cond {
            Ok(cond) => {
                let kept = n - 1;
                let mut op = spin_product(&dirs[..2]);
                if kept > 2 {
                    op = op.kron(&ComplexMatrix::identity(1 << (kept - 2)));
                }
                let e12 = cond.state.expectation(&op)?;
                let p = cond.probability;
                let p_sigma = (p * (1.0 - p) / shots as f64).sqrt();
                checks.push(Check::close("p_hat within 5 sigma", stats.p_hat, p, 5.0 * p_sigma));
                checks.push(Check::close(
                    "e12_hat within 5 stderr",
                    stats.e12_hat,
                    e12,
                    (5.0 * stats.stderr).max(1e-12),
                ));
                results["analytic"] = json!({ "probability": p, "e12": e12 });
            }
            Err(Error::ZeroProbability { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok((results, checks))
}

#[derive(Debug, Parser)]
#[command(name = "belllab", about = "Conditional entanglement analyses from a JSON config")]
pub struct Args {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output path (defaults to the config's `output`, then stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub shots: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
}

/// Worker cap from `BELLLAB_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Full command-line flow; returns the process exit code.
pub fn execute(args: &Args, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "cannot read {}: {e}", args.config.display());
            return EXIT_CONFIG;
        }
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "{}: {e}", args.config.display());
            return EXIT_CONFIG;
        }
    };
    if args.seed.is_some() {
        config.seed = args.seed;
    }
    if args.shots.is_some() {
        config.shots = args.shots;
    }
    if args.restarts.is_some() {
        config.restarts = args.restarts;
    }
    if args.output.is_some() {
        config.output = args.output.clone();
    }
    let output = match run(&config, threads_from_env()) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return e.exit_code();
        }
    };
    let rendered = output.render();
    let written = match &config.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => stdout.write_all(rendered.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "cannot write report: {e}");
            EXIT_RUNTIME
        }
    }
}
