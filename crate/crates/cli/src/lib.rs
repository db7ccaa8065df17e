//! `werner` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 mixing weight above the
//! separability threshold, 3 verification failed, 4 capacity exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use werner_core::{
    certificate::write_certificate, decompose::DEFAULT_MAX_TERMS, fourth_moment, moment_sums, ppt_min_eig,
    threshold, verify, werner, worst_cauchy_schwarz, Config, Error, ExactRational, ScanMode, VerifyTolerances,
    WernerParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_THRESHOLD: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "werner", version, about = "Separability of generalized Werner states on n qudits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Shape {
    /// Local dimension of each qudit.
    #[arg(long = "d", value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
    /// Number of qudits.
    #[arg(long = "n", value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
}

impl Shape {
    fn dn(&self) -> (usize, usize) {
        (self.d as usize, self.n as usize)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact separability threshold 1/(1 + d^(n-1)).
    Threshold {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        json: bool,
    },
    /// Write a separable-decomposition certificate for W(s).
    Generate {
        #[command(flatten)]
        shape: Shape,
        /// Mixing weight, as a decimal or an exact fraction p/q.
        #[arg(long = "s")]
        s: ExactRational,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        term_cap: usize,
    },
    /// Check a certificate file against W(s).
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        shape: Shape,
        #[arg(long = "s")]
        s: ExactRational,
        #[arg(long, default_value_t = 1e-12)]
        tol_weights: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol_norms: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol_residual: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        term_cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the Cauchy-Schwarz and partial-transpose conditions on W(s).
    Criteria {
        #[command(flatten)]
        shape: Shape,
        #[arg(long = "s")]
        s: ExactRational,
        /// Scan every index quadruple instead of the two-symbol reduction.
        #[arg(long)]
        full_scan: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the moment identities of the 4^d phase-vector ensemble exactly.
    Moments {
        #[arg(long = "d", value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ThresholdExceeded { .. } => EXIT_THRESHOLD,
                Error::Capacity { .. } => EXIT_CAPACITY,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Threshold { shape, json } => cmd_threshold(shape, json, out),
        Command::Generate { shape, s, out: path, term_cap } => cmd_generate(shape, &s, path, term_cap, out, err),
        Command::Verify {
            cert,
            shape,
            s,
            tol_weights,
            tol_norms,
            tol_residual,
            term_cap,
            json,
        } => {
            let tol = VerifyTolerances {
                weights: tol_weights,
                norms: tol_norms,
                residual: tol_residual,
            };
            cmd_verify(&cert, shape, &s, &tol, term_cap, json, out)
        }
        Command::Criteria { shape, s, full_scan, json } => cmd_criteria(shape, &s, full_scan, json, out),
        Command::Moments { d, json } => cmd_moments(d as usize, json, out),
    }
}

fn werner_params(shape: &Shape, s: &ExactRational) -> Result<WernerParams, Failure> {
    if s.is_negative() || s > &ExactRational::one() {
        return Err(Failure::Usage(format!("s = {s} must lie in [0, 1]")));
    }
    let (d, n) = shape.dn();
    Ok(WernerParams::new(d, n, s.to_f64())?)
}

fn cmd_threshold(shape: Shape, json: bool, out: &mut dyn Write) -> CmdResult {
    let (d, n) = shape.dn();
    let t = threshold(d, n)?;
    if json {
        let doc = json!({"d": d, "n": n, "threshold": t.to_string(), "decimal": t.to_f64()});
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "{} = {}", t, t.to_f64())?;
    }
    Ok(EXIT_OK)
}

fn cmd_generate(
    shape: Shape,
    s: &ExactRational,
    path: Option<PathBuf>,
    term_cap: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (d, n) = shape.dn();
    let config = Config {
        max_terms: term_cap,
        ..Config::default()
    };
    let cert = werner_core::decompose_werner(d, n, s, &config)?;
    match path {
        Some(p) => {
            write_certificate(&cert, fs::File::create(&p)?)?;
            writeln!(err, "wrote {} terms to {}", cert.term_count(), p.display())?;
        }
        None => write_certificate(&cert, out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    path: &PathBuf,
    shape: Shape,
    s: &ExactRational,
    tol: &VerifyTolerances,
    term_cap: usize,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let params = werner_params(&shape, s)?;
    let bytes = fs::read(path)?;
    let cert = werner_core::certificate::parse_with_cap(&bytes, term_cap)?;
    let target = werner(&params)?;
    let report = verify(&cert, &target, tol)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    } else {
        writeln!(out, "# certificate {} against W(s), d = {}, n = {}, s = {s}", path.display(), params.d(), params.n())?;
        writeln!(out, "{report}")?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_criteria(shape: Shape, s: &ExactRational, full_scan: bool, json: bool, out: &mut dyn Write) -> CmdResult {
    let params = werner_params(&shape, s)?;
    let (d, n) = shape.dn();
    let rho = werner(&params)?;
    let star = threshold(d, n)?;
    let mode = if full_scan { ScanMode::Full } else { ScanMode::Symmetric };
    let (margin, quad) = worst_cauchy_schwarz(&rho, d, n, mode)?;
    let ppt = (0..n)
        .map(|cut| ppt_min_eig(&rho, &[cut], d, n))
        .collect::<Result<Vec<f64>, Error>>()?;
    if json {
        let doc = json!({
            "d": d,
            "n": n,
            "s": s.to_string(),
            "threshold": star.to_string(),
            "cauchy_schwarz": {
                "worst_margin": margin,
                "j": quad.j().digits(),
                "k": quad.k().digits(),
                "u": quad.u().digits(),
                "v": quad.v().digits(),
            },
            "ppt_min_eig": ppt.iter().enumerate().map(|(cut, e)| json!({"cut": [cut], "min_eig": e})).collect::<Vec<_>>(),
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "W(s) with d = {d}, n = {n}, s = {s} (threshold {star})")?;
        writeln!(out, "worst Cauchy-Schwarz margin: {margin:.6e} at {quad}")?;
        for (cut, e) in ppt.iter().enumerate() {
            writeln!(out, "PPT minimum eigenvalue, cut {{{cut}}}: {e:.6e}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_moments(d: usize, json: bool, out: &mut dyn Write) -> CmdResult {
    let sums = moment_sums(d)?;
    let mut fourth_ok = true;
    let mut checked = 0usize;
    for j in 0..d {
        for k in (0..d).filter(|&k| k != j) {
            for r in 0..d {
                for t in (0..d).filter(|&t| t != r) {
                    let expected = i64::from(j == r && k == t);
                    fourth_ok &= fourth_moment(d, j, k, r, t)? == werner_core::phases::GaussRational::from_integer(expected);
                    checked += 1;
                }
            }
        }
    }
    let all_ok = sums.identities_hold() && fourth_ok;
    if json {
        let doc = json!({
            "d": d,
            "vectors": sums.count,
            "first": sums.first.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "second": sums.second.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "abs_square": sums.abs_square,
            "cross_vanish": sums.identities_hold(),
            "fourth_moment_quadruples": checked,
            "fourth_moment_delta": fourth_ok,
            "all_hold": all_ok,
        });
        writeln!(out, "{doc}")?;
    } else {
        let list = |v: &[werner_core::GaussInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        writeln!(out, "phase vectors: {} (= 4^{d})", sums.count)?;
        writeln!(out, "sum_m z_r:      [{}]", list(&sums.first))?;
        writeln!(out, "sum_m z_r^2:    [{}]", list(&sums.second))?;
        writeln!(out, "sum_m |z_r|^2:  {:?}", sums.abs_square)?;
        writeln!(out, "cross sums sum_m conj(z_r) z_s, r != s: {}", if sums.identities_hold() { "all zero" } else { "NONZERO" })?;
        writeln!(out, "fourth moment = delta(j,r) delta(k,s) over {checked} quadruples: {}", if fourth_ok { "yes" } else { "NO" })?;
        writeln!(out, "{}", if all_ok { "all identities hold exactly" } else { "identity violated" })?;
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_USAGE })
}
