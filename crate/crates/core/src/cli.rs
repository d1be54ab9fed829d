//! Command-line surface: argument parsing, config-file defaults, dispatch
//! and report assembly.
//!
//! Precedence for grid and tolerance settings: command-line flag, then the
//! file given by `--config`, then the file named by `SUSY_JACOBI_CONFIG`,
//! then built-in defaults. Config files hold `key = value` lines using the
//! long flag names (`grid-min`, `grid-max`, `grid-points`, `tol`, `format`);
//! `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::coordinate_maps::{first_derivative_coefficient, theta_of_z, w_of_z, z_of_theta, MapParams};
use crate::error::Error;
use crate::exact_algebra::{eigen_residual_symbolic, eval_wave, int, ladder_chain, parse_rational, to_f64, HypWave, Rational};
use crate::numeric_oracle::{grid_residual, reflection_coefficient, Grid, ScatterOptions, SCATTER_HALF_WIDTH};
use crate::report::{Check, Report, Table};
use crate::spectra::{
    bound_levels, deformed_default_grid, gamma_deformed_residual, gamma_deformed_residual_with, gegenbauer_spectrum,
    poschl_teller_spectrum, rosen_morse_eigenfunction, rosen_morse_spectrum, DeformedForm, LevelKind,
    PotentialFamily, SpectrumEntry,
};
use crate::verification::{self, DEFORMED_STEP, DEFORMED_TOL, REFLECTIONLESS_TOL, SPECTRUM_ORACLE_TOL};

pub const CONFIG_ENV: &str = "SUSY_JACOBI_CONFIG";
pub const TOOL: &str = "susy-jacobi";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "susy-jacobi", version, about = "Ladder algebra and oracles for sech^2, Rosen-Morse II and Jacobi-type wells")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Key-value config file with grid and tolerance defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Left end of the z grid
    #[arg(long = "grid-min", global = true)]
    grid_min: Option<f64>,

    /// Right end of the z grid
    #[arg(long = "grid-max", global = true)]
    grid_max: Option<f64>,

    /// Number of grid nodes, endpoints included
    #[arg(long = "grid-points", global = true)]
    grid_points: Option<usize>,

    /// Pass/fail tolerance (default depends on the subcommand)
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    /// Depth parameter of the sech^2 well
    #[arg(long)]
    l: Option<String>,
    /// Depth parameter n' of the Rosen-Morse II well
    #[arg(long)]
    nprime: Option<String>,
    /// Asymmetry B of the Rosen-Morse II well
    #[arg(long = "B")]
    b: Option<String>,
    /// Gegenbauer degree
    #[arg(long)]
    p: Option<u32>,
    /// Gegenbauer parameter
    #[arg(long)]
    q: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Closed-form levels of a well
    #[command(allow_negative_numbers = true)]
    Spectrum(FamilyArgs),
    /// Exact eigenfunction and its residual
    #[command(allow_negative_numbers = true)]
    Eigenfunction {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Evaluate the angular chart at one point
    #[command(allow_negative_numbers = true)]
    Map {
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
    },
    /// Run a verification suite
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest degree for the exact relation checks
        #[arg(long = "l-max", default_value_t = 8)]
        l_max: u32,
    },
    /// Reflection coefficient of a symmetric well
    #[command(allow_negative_numbers = true)]
    Scatter {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        k: Option<f64>,
        /// Integration half-width L
        #[arg(long = "half-width")]
        half_width: Option<f64>,
    },
    /// Finite-difference spectrum against the closed form
    #[command(allow_negative_numbers = true)]
    Oracle(FamilyArgs),
    /// Zero-energy residual of the gamma-deformed solutions
    #[command(allow_negative_numbers = true)]
    Deformed {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyName {
    PoschlTeller,
    RosenMorse,
    Gegenbauer,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Riccati,
    ShapeInvariance,
    Relations,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Riccati => "riccati",
            Suite::ShapeInvariance => "shape-invariance",
            Suite::Relations => "relations",
            Suite::All => "all",
        })
    }
}

/// Fully resolved family selection.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    PoschlTeller { l: Rational },
    RosenMorse { n_prime: Rational, b: Rational },
    Gegenbauer { p: u32, q: Rational },
}

impl FamilySpec {
    fn args(&self) -> Vec<String> {
        match self {
            FamilySpec::PoschlTeller { l } => vec!["--family".into(), "poschl-teller".into(), "--l".into(), l.to_string()],
            FamilySpec::RosenMorse { n_prime, b } => vec![
                "--family".into(),
                "rosen-morse".into(),
                "--nprime".into(),
                n_prime.to_string(),
                "--B".into(),
                b.to_string(),
            ],
            FamilySpec::Gegenbauer { p, q } => vec![
                "--family".into(),
                "gegenbauer".into(),
                "--p".into(),
                p.to_string(),
                "--q".into(),
                q.to_string(),
            ],
        }
    }

    fn params(&self, map: &mut Map<String, Value>) {
        match self {
            FamilySpec::PoschlTeller { l } => {
                map.insert("family".into(), json!("poschl-teller"));
                map.insert("l".into(), json!(l.to_string()));
            }
            FamilySpec::RosenMorse { n_prime, b } => {
                map.insert("family".into(), json!("rosen-morse"));
                map.insert("nprime".into(), json!(n_prime.to_string()));
                map.insert("B".into(), json!(b.to_string()));
            }
            FamilySpec::Gegenbauer { p, q } => {
                map.insert("family".into(), json!("gegenbauer"));
                map.insert("p".into(), json!(p));
                map.insert("q".into(), json!(q.to_string()));
            }
        }
    }

    /// The sech² or Rosen–Morse II potential this selection describes.
    fn potential(&self) -> PotentialFamily {
        match self {
            FamilySpec::PoschlTeller { l } => PotentialFamily::poschl_teller(l.clone()),
            FamilySpec::RosenMorse { n_prime, b } => PotentialFamily::rosen_morse(n_prime.clone(), b.clone()),
            FamilySpec::Gegenbauer { p, q } => {
                PotentialFamily::poschl_teller(int(*p as i64) + q - crate::exact_algebra::rat(1, 2))
            }
        }
    }

    fn spectrum(&self) -> crate::Result<Vec<SpectrumEntry>> {
        match self {
            FamilySpec::PoschlTeller { l } => poschl_teller_spectrum(l),
            FamilySpec::RosenMorse { n_prime, b } => rosen_morse_spectrum(n_prime, b),
            FamilySpec::Gegenbauer { p, q } => Ok(gegenbauer_spectrum(*p, q)?.levels),
        }
    }
}

/// Grid and tolerance settings after merging flags, config and defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub grid: Grid,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Action {
    Spectrum(FamilySpec),
    Eigenfunction { family: FamilySpec, n: u32 },
    Map { gamma: f64, z: f64 },
    Verify { suite: Suite, l_max: u32 },
    Scatter { family: FamilySpec, k: f64, half_width: f64 },
    Oracle(FamilySpec),
    Deformed { alpha: f64, beta: f64, n: u32 },
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::Spectrum(_) => "spectrum",
            Action::Eigenfunction { .. } => "eigenfunction",
            Action::Map { .. } => "map",
            Action::Verify { .. } => "verify",
            Action::Scatter { .. } => "scatter",
            Action::Oracle(_) => "oracle",
            Action::Deformed { .. } => "deformed",
        }
    }
}

/// A parsed, fully resolved invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Command {
    pub action: Action,
    pub settings: Settings,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Help or version output; not an error for the caller.
    Display(String),
    Usage(String),
    /// Argument-parser error, already formatted.
    Parse(String),
    /// A computation failed after a successful parse.
    Execution { subcommand: String, source: Error },
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Display(_) => EXIT_PASS,
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Execution { source, .. } => match source {
                Error::Numerical(_) | Error::MaxCountExceeded { .. } | Error::NonFinite(_) | Error::Degenerate(_) => {
                    EXIT_NUMERICAL
                }
                Error::NotProportional(_) => EXIT_CHECK_FAILED,
                _ => EXIT_USAGE,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Display(s) | CliError::Parse(s) => f.write_str(s.trim_end()),
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Execution { subcommand, source } => write!(f, "{subcommand}: {source}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `key = value` config text.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    const KEYS: [&str; 5] = ["grid-min", "grid-max", "grid-points", "tol", "format"];
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected 'key = value', got '{raw}'", i + 1)))?;
        let key = key.trim().trim_start_matches("--").to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(usage(format!("config line {}: unknown key '{key}'", i + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn load_config(explicit: Option<&Path>) -> Result<BTreeMap<String, String>, CliError> {
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(CONFIG_ENV).map(PathBuf::from),
    };
    match path {
        None => Ok(BTreeMap::new()),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| usage(format!("cannot read config file {}: {e}", p.display())))?;
            parse_config(&text)
        }
    }
}

fn config_f64(cfg: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>, CliError> {
    cfg.get(key)
        .map(|v| v.parse::<f64>().map_err(|_| usage(format!("config key '{key}': '{v}' is not a number"))))
        .transpose()
}

fn rational_flag(name: &str, value: &Option<String>) -> Result<Option<Rational>, CliError> {
    value
        .as_deref()
        .map(|s| parse_rational(s).map_err(|e| usage(format!("--{name}: {e}"))))
        .transpose()
}

fn require<T>(name: &str, family: &str, value: Option<T>) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("missing required parameter --{name} for family {family}")))
}

fn reject_extra(family: &str, present: &[(&str, bool)]) -> Result<(), CliError> {
    for (name, set) in present {
        if *set {
            return Err(usage(format!("conflicting options: --{name} does not apply to family {family}")));
        }
    }
    Ok(())
}

fn resolve_family(args: &FamilyArgs) -> Result<FamilySpec, CliError> {
    let family = args
        .family
        .ok_or_else(|| usage("missing required parameter --family (poschl-teller | rosen-morse | gegenbauer)"))?;
    let l = rational_flag("l", &args.l)?;
    let nprime = rational_flag("nprime", &args.nprime)?;
    let b = rational_flag("B", &args.b)?;
    let q = rational_flag("q", &args.q)?;
    match family {
        FamilyName::PoschlTeller => {
            reject_extra("poschl-teller", &[("nprime", nprime.is_some()), ("B", b.is_some()), ("p", args.p.is_some()), ("q", q.is_some())])?;
            let l = require("l", "poschl-teller", l)?;
            if l <= Rational::from_integer(0.into()) {
                return Err(usage(format!("--l {l}: the well needs l > 0")));
            }
            Ok(FamilySpec::PoschlTeller { l })
        }
        FamilyName::RosenMorse => {
            reject_extra("rosen-morse", &[("l", l.is_some()), ("p", args.p.is_some()), ("q", q.is_some())])?;
            let n_prime = require("nprime", "rosen-morse", nprime)?;
            let b = require("B", "rosen-morse", b)?;
            if n_prime <= Rational::from_integer(0.into()) {
                return Err(usage(format!("--nprime {n_prime}: must be positive")));
            }
            let bound = &n_prime * &n_prime;
            if num_traits::Signed::abs(&b) >= bound {
                return Err(usage(format!(
                    "--B {b} violates the Rosen-Morse II constraint |B| < nprime^2 = {bound}"
                )));
            }
            Ok(FamilySpec::RosenMorse { n_prime, b })
        }
        FamilyName::Gegenbauer => {
            reject_extra("gegenbauer", &[("l", l.is_some()), ("nprime", nprime.is_some()), ("B", b.is_some())])?;
            let p = require("p", "gegenbauer", args.p)?;
            let q = require("q", "gegenbauer", q)?;
            if q <= crate::exact_algebra::rat(1, 2) {
                return Err(usage(format!("--q {q}: must exceed 1/2")));
            }
            Ok(FamilySpec::Gegenbauer { p, q })
        }
    }
}

/// Parses `argv` (without the program name) into a resolved [`Command`].
pub fn parse_command<I, S>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from(TOOL)).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp
        | clap::error::ErrorKind::DisplayVersion
        | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => CliError::Display(e.to_string()),
        _ => CliError::Parse(e.to_string()),
    })?;
    let cfg = load_config(cli.config.as_deref())?;

    let format = match (cli.format, cfg.get("format").map(String::as_str)) {
        (Some(f), _) => f,
        (None, Some("json")) | (None, None) => Format::Json,
        (None, Some("csv")) => Format::Csv,
        (None, Some(other)) => return Err(usage(format!("config key 'format': unknown format '{other}'"))),
    };
    let grid_min = cli.grid_min.or(config_f64(&cfg, "grid-min")?);
    let grid_max = cli.grid_max.or(config_f64(&cfg, "grid-max")?);
    let grid_points = match cli.grid_points {
        Some(p) => Some(p),
        None => cfg
            .get("grid-points")
            .map(|v| v.parse::<usize>().map_err(|_| usage(format!("config key 'grid-points': '{v}' is not an integer"))))
            .transpose()?,
    };
    let tol = cli.tol.or(config_f64(&cfg, "tol")?);
    if let Some(t) = tol {
        if t <= 0.0 || !t.is_finite() {
            return Err(usage(format!("--tol {t}: must be a positive number")));
        }
    }

    let action = match &cli.command {
        Sub::Spectrum(f) => Action::Spectrum(resolve_family(f)?),
        Sub::Eigenfunction { family, n } => Action::Eigenfunction {
            family: resolve_family(family)?,
            n: n.ok_or_else(|| usage("missing required parameter --n"))?,
        },
        Sub::Map { gamma, z } => Action::Map {
            gamma: gamma.ok_or_else(|| usage("missing required parameter --gamma"))?,
            z: z.ok_or_else(|| usage("missing required parameter --z"))?,
        },
        Sub::Verify { suite, l_max } => Action::Verify {
            suite: *suite,
            l_max: *l_max,
        },
        Sub::Scatter { family, k, half_width } => {
            let family = resolve_family(family)?;
            if let FamilySpec::RosenMorse { b, .. } = &family {
                if !num_traits::Zero::is_zero(b) {
                    return Err(usage("conflicting options: scatter supports rosen-morse only with --B 0"));
                }
            }
            let k = k.ok_or_else(|| usage("missing required parameter --k"))?;
            if k <= 0.0 || !k.is_finite() {
                return Err(usage(format!("--k {k}: must be positive")));
            }
            Action::Scatter {
                family,
                k,
                half_width: half_width.unwrap_or(SCATTER_HALF_WIDTH),
            }
        }
        Sub::Oracle(f) => Action::Oracle(resolve_family(f)?),
        Sub::Deformed { alpha, beta, n } => {
            let alpha = alpha.ok_or_else(|| usage("missing required parameter --alpha"))?;
            let beta = beta.ok_or_else(|| usage("missing required parameter --beta"))?;
            if alpha <= -1.0 || beta <= -1.0 {
                return Err(usage(format!("--alpha {alpha} --beta {beta}: both must exceed -1")));
            }
            Action::Deformed {
                alpha,
                beta,
                n: n.unwrap_or(0),
            }
        }
    };

    let grid = match (&action, grid_min, grid_max, grid_points) {
        // the deformed problem defaults to its own chart grid
        (Action::Deformed { alpha, beta, .. }, None, None, None) => {
            deformed_default_grid(*alpha, *beta, DEFORMED_STEP).map_err(|e| usage(e.to_string()))?
        }
        _ => {
            let d = Grid::default_box();
            Grid::new(
                grid_min.unwrap_or(d.z_min()),
                grid_max.unwrap_or(d.z_max()),
                grid_points.unwrap_or(d.points()),
            )
            .map_err(|e| usage(format!("grid: {e}")))?
        }
    };
    let default_tol = match &action {
        Action::Oracle(_) | Action::Verify { .. } => SPECTRUM_ORACLE_TOL,
        Action::Deformed { .. } => DEFORMED_TOL,
        Action::Scatter { .. } => REFLECTIONLESS_TOL,
        Action::Map { .. } => verification::MAP_IDENTITY_TOL,
        Action::Spectrum(_) | Action::Eigenfunction { .. } => 1e-5,
    };
    Ok(Command {
        action,
        settings: Settings {
            grid,
            tol: tol.unwrap_or(default_tol),
        },
        format,
        output: cli.output,
    })
}

impl Command {
    /// Arguments reproducing this command with every default spelled out.
    pub fn echo_args(&self) -> Vec<String> {
        let mut v: Vec<String> = vec![self.action.name().into()];
        match &self.action {
            Action::Spectrum(f) | Action::Oracle(f) => v.extend(f.args()),
            Action::Eigenfunction { family, n } => {
                v.extend(family.args());
                v.extend(["--n".into(), n.to_string()]);
            }
            Action::Map { gamma, z } => v.extend(["--gamma".into(), fmt_f64(*gamma), "--z".into(), fmt_f64(*z)]),
            Action::Verify { suite, l_max } => v.extend([suite.to_string(), "--l-max".into(), l_max.to_string()]),
            Action::Scatter { family, k, half_width } => {
                v.extend(family.args());
                v.extend(["--k".into(), fmt_f64(*k), "--half-width".into(), fmt_f64(*half_width)]);
            }
            Action::Deformed { alpha, beta, n } => v.extend([
                "--alpha".into(),
                fmt_f64(*alpha),
                "--beta".into(),
                fmt_f64(*beta),
                "--n".into(),
                n.to_string(),
            ]),
        }
        let g = &self.settings.grid;
        v.extend([
            "--grid-min".into(),
            fmt_f64(g.z_min()),
            "--grid-max".into(),
            fmt_f64(g.z_max()),
            "--grid-points".into(),
            g.points().to_string(),
            "--tol".into(),
            fmt_f64(self.settings.tol),
            "--format".into(),
            self.format.to_string(),
        ]);
        v
    }

    fn parameters(&self) -> Map<String, Value> {
        let mut m = Map::new();
        match &self.action {
            Action::Spectrum(f) | Action::Oracle(f) => f.params(&mut m),
            Action::Eigenfunction { family, n } => {
                family.params(&mut m);
                m.insert("n".into(), json!(n));
            }
            Action::Map { gamma, z } => {
                m.insert("gamma".into(), json!(gamma));
                m.insert("z".into(), json!(z));
            }
            Action::Verify { suite, l_max } => {
                m.insert("suite".into(), json!(suite));
                m.insert("l_max".into(), json!(l_max));
            }
            Action::Scatter { family, k, half_width } => {
                family.params(&mut m);
                m.insert("k".into(), json!(k));
                m.insert("half_width".into(), json!(half_width));
                m.insert("step".into(), json!(ScatterOptions::default().step));
            }
            Action::Deformed { alpha, beta, n } => {
                m.insert("alpha".into(), json!(alpha));
                m.insert("beta".into(), json!(beta));
                m.insert("n".into(), json!(n));
            }
        }
        let g = &self.settings.grid;
        m.insert("grid_min".into(), json!(g.z_min()));
        m.insert("grid_max".into(), json!(g.z_max()));
        m.insert("grid_points".into(), json!(g.points()));
        m.insert("tol".into(), json!(self.settings.tol));
        m.insert("format".into(), json!(self.format));
        m
    }
}

/// Shortest decimal that parses back to the same `f64`.
fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn spectrum_table(entries: &[SpectrumEntry]) -> Table {
    let mut t = Table::new(&["n", "energy", "kind"]);
    for e in entries {
        t.push(vec![
            e.n.to_string(),
            fmt_f64(e.energy_f64()),
            match e.kind {
                LevelKind::Bound => "bound".into(),
                LevelKind::Threshold => "threshold".into(),
            },
        ]);
    }
    t
}

fn spectrum_json(entries: &[SpectrumEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| json!({"n": e.n, "energy": e.energy_f64(), "energy_exact": e.energy.to_string(), "kind": e.kind}))
            .collect(),
    )
}

fn wave_json(w: &HypWave) -> Value {
    json!({
        "a": w.a().to_string(),
        "b": w.b().to_string(),
        "prefactor": w.prefactor().to_string(),
        "poly": w.poly().coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "display": w.to_string(),
    })
}

fn checks_body(checks: &[Check]) -> (Value, bool) {
    let passed = checks.iter().all(|c| c.pass);
    let failed = checks.iter().filter(|c| !c.pass).count();
    (json!({"total": checks.len(), "failed": failed, "checks": checks}), passed)
}

/// Runs a parsed command.
pub fn execute_command(cmd: &Command) -> Result<Report, CliError> {
    let wrap = |source: Error| CliError::Execution {
        subcommand: cmd.action.name().into(),
        source,
    };
    let grid = &cmd.settings.grid;
    let tol = cmd.settings.tol;
    let (body, passed, table) = match &cmd.action {
        Action::Spectrum(f) => {
            let entries = f.spectrum().map_err(wrap)?;
            let mut body = json!({"levels": spectrum_json(&entries), "bound_count": bound_levels(&entries).len()});
            if let FamilySpec::Gegenbauer { p, q } = f {
                let g = gegenbauer_spectrum(*p, q).map_err(wrap)?;
                body["nprime"] = json!(g.n_prime.to_string());
                body["mprime"] = json!(g.m_prime.to_string());
                body["target"] = json!({"n": g.target.n, "energy": g.target.energy_f64(), "energy_exact": g.target.energy.to_string()});
                body["reflectionless"] = json!(g.reflectionless);
            }
            (body, true, Some(spectrum_table(&entries)))
        }
        Action::Eigenfunction { family, n } => {
            let (wave, energy) = match family {
                FamilySpec::PoschlTeller { l } => {
                    let w = ladder_chain(l, *n).map_err(wrap)?;
                    let s = l - int(*n as i64);
                    (w, -(&s * &s))
                }
                FamilySpec::RosenMorse { n_prime, b } => (
                    rosen_morse_eigenfunction(n_prime, b, *n).map_err(wrap)?,
                    crate::spectra::rosen_morse_energy(n_prime, b, *n),
                ),
                FamilySpec::Gegenbauer { .. } => {
                    let np = match family.potential() {
                        PotentialFamily::PoschlTeller { l } => l,
                        _ => unreachable!(),
                    };
                    let s = &np - int(*n as i64);
                    (ladder_chain(&np, *n).map_err(wrap)?, -(&s * &s))
                }
            };
            let fam = family.potential();
            let residual = eigen_residual_symbolic(&wave, &fam, &energy).map_err(wrap)?;
            let numeric = grid_residual(&wave, &fam, to_f64(&energy), grid).map_err(wrap)?;
            let mut table = Table::new(&["z", "value"]);
            for z in grid.nodes() {
                table.push(vec![fmt_f64(z), fmt_f64(eval_wave(&wave, z).map_err(wrap)?)]);
            }
            let passed = residual.is_zero() && numeric <= tol;
            (
                json!({
                    "wave": wave_json(&wave),
                    "energy": to_f64(&energy),
                    "energy_exact": energy.to_string(),
                    "symbolic_residual": residual.to_string(),
                    "grid_residual": numeric,
                }),
                passed,
                Some(table),
            )
        }
        Action::Map { gamma, z } => {
            let p = MapParams::new(*gamma).map_err(wrap)?;
            let theta = theta_of_z(p, *z).map_err(wrap)?;
            let w = w_of_z(p, *z).map_err(wrap)?;
            let back = z_of_theta(p, theta).map_err(wrap)?;
            let coeff = first_derivative_coefficient(p, 0.0, *z).map_err(wrap)?;
            let sech_w = 1.0 / w.cosh();
            let passed = (theta.sin() - sech_w).abs() <= tol
                && (theta.cos() + w.tanh()).abs() <= tol
                && (back - z).abs() <= tol * z.abs().max(1.0)
                && coeff.abs() <= verification::ELIMINATION_TOL;
            (
                json!({
                    "theta": theta,
                    "w": w,
                    "sin_theta": theta.sin(),
                    "sech_w": sech_w,
                    "cos_theta": theta.cos(),
                    "minus_tanh_w": -w.tanh(),
                    "z_round_trip": back,
                    "first_derivative_coefficient": coeff,
                }),
                passed,
                None,
            )
        }
        Action::Verify { suite, l_max } => {
            let checks = match suite {
                Suite::Riccati => verification::riccati_suite(grid),
                Suite::ShapeInvariance => verification::shape_invariance_suite(),
                Suite::Relations => verification::relations_suite(*l_max),
                Suite::All => verification::all_suites(grid, *l_max),
            }
            .map_err(wrap)?;
            let (body, passed) = checks_body(&checks);
            (body, passed, Some(Table::from_checks(&checks)))
        }
        Action::Scatter { family, k, half_width } => {
            let fam = family.potential();
            let s = reflection_coefficient(&fam, *k, *half_width, ScatterOptions::default()).map_err(wrap)?;
            let depth = match &fam {
                PotentialFamily::PoschlTeller { l } => l.clone(),
                PotentialFamily::RosenMorseII { n_prime, .. } => n_prime.clone(),
                _ => unreachable!(),
            };
            let integer = depth.is_integer();
            let reflection_ok = if integer { s.reflection <= tol } else { s.reflection > tol };
            let passed = reflection_ok && s.flux_ok();
            (
                json!({
                    "R2": s.reflection,
                    "T2": s.transmission,
                    "R2_half_step": s.reflection_half_step,
                    "flux_error": s.flux_error,
                    "flux_check": if s.flux_ok() { "pass" } else { "fail" },
                    "reflectionless_expected": integer,
                }),
                passed,
                None,
            )
        }
        Action::Oracle(f) => {
            let closed = bound_levels(&f.spectrum().map_err(wrap)?);
            let (rows, numeric) = verification::spectrum_oracle(&f.potential(), &closed, grid, tol).map_err(wrap)?;
            let passed = numeric.len() == closed.len() && rows.iter().all(|r| r.pass);
            let mut table = Table::new(&["n", "closed_form", "numeric", "abs_error", "pass"]);
            for r in &rows {
                table.push(vec![
                    r.n.to_string(),
                    fmt_f64(r.closed_form),
                    r.numeric.map(fmt_f64).unwrap_or_default(),
                    r.abs_error.map(fmt_f64).unwrap_or_default(),
                    r.pass.to_string(),
                ]);
            }
            (
                json!({"closed_count": closed.len(), "numeric_count": numeric.len(), "levels": rows}),
                passed,
                Some(table),
            )
        }
        Action::Deformed { alpha, beta, n } => {
            let r = gamma_deformed_residual(*alpha, *beta, *n, grid).map_err(wrap)?;
            let quoted = gamma_deformed_residual_with(DeformedForm::AsQuoted, *alpha, *beta, *n, grid).map_err(wrap)?;
            (
                json!({
                    "gamma": beta - alpha,
                    "m": 0.5 * (alpha + beta),
                    "nprime": *n as f64 + 0.5 * (alpha + beta),
                    "residual": r,
                    "residual_as_quoted_form": quoted,
                    "step": grid.spacing(),
                }),
                r <= tol,
                None,
            )
        }
    };
    Ok(Report {
        tool: TOOL,
        command: cmd.action.name().into(),
        argv: cmd.echo_args(),
        parameters: cmd.parameters(),
        passed,
        body,
        table,
    })
}

/// Renders a report in the command's format.
pub fn render(cmd: &Command, report: &Report) -> Result<String, CliError> {
    match cmd.format {
        Format::Json => Ok(report.to_json() + "\n"),
        Format::Csv => report.to_csv().map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Full CLI run; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let outcome = parse_command(argv).and_then(|cmd| {
        let report = execute_command(&cmd)?;
        let text = render(&cmd, &report)?;
        match &cmd.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(report.passed)
    });
    match outcome {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(CliError::Display(s)) => {
            print!("{s}");
            EXIT_PASS
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
