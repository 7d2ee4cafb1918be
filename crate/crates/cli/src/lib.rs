//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code:
//! 0 success, 1 usage or input format, 2 numeric failure,
//! 4 membership rejection under `check --strict`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use harmclass::bounds::{
    extremal_analytic, extremal_coanalytic, growth_envelope, sampled_membership, sufficient_membership,
    MembershipVerdict, SamplingGrid, Verdict,
};
use harmclass::coeff_csv::{read_coefficients, write_coefficients};
use harmclass::numfmt::format_sig;
use harmclass::radii::{curve, solve_radii, CurveSample};
use harmclass::{ClassParams, Complex64, Error, HarmonicSeries, SeriesEvalConfig};

pub mod svg;

/// The seven `(α, M)` pairs of the reference table with their published
/// `r*` and `r_c`, in column order.
pub const TABLE1: [(f64, f64, f64, f64); 7] = [
    (1.0, 0.5, 0.632121, 0.357799),
    (0.5, 0.25, 0.454395, 0.25),
    (0.5, 2.0, 0.176134, 0.0909091),
    (1.0 / 3.0, 1.0 / 9.0, 0.42966, 0.237029),
    (0.75, 0.01, 0.823912, 0.515173),
    (0.75, 0.1, 0.732081, 0.436194),
    (0.25, 0.2, 0.368607, 0.200939),
];

/// Plot samples per curve and the sampled interval.
pub const PLOT_POINTS: usize = 200;
pub const PLOT_R_MAX: f64 = 0.95;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_REJECTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "harmclass", version, about = "Bounds, radii and convolutions for the harmonic class P0_H(alpha, M)")]
struct Cli {
    /// Print 17 significant digits instead of 9
    #[arg(long, global = true)]
    full_precision: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    G1,
    G2,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PlotWhich {
    G1,
    G2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Sufficient,
    Sampled,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConvolveMode {
    Harmonic,
    Tilde,
    Rotation,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExtremalKind {
    Analytic,
    Coanalytic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the radii of starlikeness and convexity
    Radii {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Emit `alpha,M,r_star,r_c` CSV
        #[arg(long)]
        csv: bool,
    },
    /// Recompute the reference table of radii
    Table1 {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Sample G1 and/or G2 on a uniform grid
    Curve {
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        rmin: f64,
        #[arg(long, default_value_t = 0.95, allow_negative_numbers = true)]
        rmax: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw G1 or G2 for one or more (alpha, M) pairs as SVG
    Plot {
        /// Repeat once per curve, paired in order with --m
        #[arg(long, action = clap::ArgAction::Append)]
        alpha: Vec<f64>,
        #[arg(long, action = clap::ArgAction::Append)]
        m: Vec<f64>,
        #[arg(long, value_enum, default_value_t = PlotWhich::G1)]
        which: PlotWhich,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate the lower and upper growth envelopes
    Growth {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        /// Rows at r = i / samples for i = 0..samples
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Test a coefficient file for class membership
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[arg(long, value_enum, default_value_t = CheckMode::Both)]
        mode: CheckMode,
        /// Exit with status 4 when a violation witness is found
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 24)]
        n_radii: usize,
        #[arg(long, default_value_t = 48)]
        n_angles: usize,
        #[arg(long, default_value_t = 8)]
        eps_count: usize,
    },
    /// Convolve two coefficient files
    Convolve {
        #[arg(long)]
        file1: PathBuf,
        #[arg(long)]
        file2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ConvolveMode::Harmonic)]
        mode: ConvolveMode,
        /// Unit-modulus rotation `re,im` for rotation mode
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Write an extremal function as a coefficient file
    Extremal {
        #[arg(long, value_enum)]
        kind: ExtremalKind,
        /// Index of the single co-analytic term
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Truncation degree of the analytic extremal function
        #[arg(long, default_value_t = 16)]
        degree: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::BracketFailure { .. } => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // a reader such as `head` closing the pipe early is not an error
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure::usage(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name).
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
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let digits = if cli.full_precision { 17 } else { 9 };
    match dispatch(cli.command, digits, out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn params(alpha: f64, m: f64) -> Result<ClassParams, Failure> {
    ClassParams::new(alpha, m).map_err(|e| Failure::usage(format!("{e} (alpha must be in (0, 1], M > 0)")))
}

/// Shortest rendering that parses back to `x`, for comment lines.
fn num(x: f64) -> String {
    (1..17)
        .map(|d| format_sig(x, d))
        .find(|s| s.parse::<f64>() == Ok(x))
        .unwrap_or_else(|| format_sig(x, 17))
}

fn dispatch(command: Command, digits: usize, out: &mut dyn Write) -> CmdResult {
    let fmt = |x: f64| format_sig(x, digits);
    match command {
        Command::Radii { alpha, m, tol, csv } => {
            let p = params(alpha, m)?;
            if !(tol > 0.0) {
                return Err(Failure::usage(format!("--tol must be > 0, got {tol}")));
            }
            let res = solve_radii(&p, tol)?;
            writeln!(out, "# alpha={} m={} tol={}", num(alpha), num(m), num(tol))?;
            if csv {
                writeln!(out, "alpha,M,r_star,r_c")?;
                writeln!(out, "{},{},{},{}", fmt(alpha), fmt(m), fmt(res.r_star), fmt(res.r_c))?;
            } else {
                writeln!(out, "r_star={} r_c={}", fmt(res.r_star), fmt(res.r_c))?;
            }
            Ok(EXIT_OK)
        }
        Command::Table1 { tol } => {
            if !(tol > 0.0) {
                return Err(Failure::usage(format!("--tol must be > 0, got {tol}")));
            }
            writeln!(out, "# table1 tol={}", num(tol))?;
            writeln!(out, "alpha,M,r_star,r_c")?;
            for (alpha, m, _, _) in TABLE1 {
                let res = solve_radii(&params(alpha, m)?, tol)?;
                writeln!(out, "{},{},{},{}", fmt(alpha), fmt(m), fmt(res.r_star), fmt(res.r_c))?;
            }
            Ok(EXIT_OK)
        }
        Command::Curve {
            which,
            alpha,
            m,
            rmin,
            rmax,
            steps,
            out: path,
        } => {
            let p = params(alpha, m)?;
            let rows = curve(&p, rmin, rmax, steps, &SeriesEvalConfig::default())?;
            let mut text = Vec::new();
            write_curve(&mut text, &rows, which, alpha, m)?;
            emit(out, path.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Plot {
            alpha,
            m,
            which,
            out: path,
        } => {
            if alpha.is_empty() {
                return Err(Failure::usage("plot needs at least one --alpha/--m pair"));
            }
            if alpha.len() != m.len() {
                return Err(Failure::usage(format!(
                    "got {} --alpha values but {} --m values",
                    alpha.len(),
                    m.len()
                )));
            }
            let svg = plot_svg_inner(&alpha, &m, which.into())?;
            emit(out, Some(&path), svg.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Growth { alpha, m, samples } => {
            let p = params(alpha, m)?;
            if samples == 0 {
                return Err(Failure::usage("--samples must be >= 1"));
            }
            let cfg = SeriesEvalConfig::default();
            writeln!(out, "# alpha={} m={} samples={samples} tol={}", num(alpha), num(m), num(cfg.tolerance()))?;
            writeln!(out, "r,lower,upper")?;
            for i in 0..samples {
                let r = i as f64 / samples as f64;
                let env = growth_envelope(&p, r, &cfg)?;
                writeln!(out, "{},{},{}", fmt(r), fmt(env.lower), fmt(env.upper))?;
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            file,
            alpha,
            m,
            mode,
            strict,
            n_radii,
            n_angles,
            eps_count,
        } => {
            let p = params(alpha, m)?;
            let grid = SamplingGrid::new(n_radii, n_angles, eps_count)?;
            let f = read_file(&file)?;
            writeln!(
                out,
                "# file={} alpha={} m={} mode={} degree={}",
                file.display(),
                num(alpha),
                num(m),
                mode.to_possible_value().expect("named variant").get_name(),
                f.degree()
            )?;
            let mut rejected = false;
            if matches!(mode, CheckMode::Sufficient | CheckMode::Both) {
                let v = sufficient_membership(&f, &p);
                write_verdict(out, "sufficient", &v, &fmt)?;
            }
            if matches!(mode, CheckMode::Sampled | CheckMode::Both) {
                let v = sampled_membership(&f, &p, &grid);
                rejected |= v.verdict == Verdict::NotMemberWitness;
                write_verdict(out, "sampled", &v, &fmt)?;
            }
            Ok(if strict && rejected { EXIT_REJECTED } else { EXIT_OK })
        }
        Command::Convolve {
            file1,
            file2,
            out: path,
            mode,
            beta,
        } => {
            let f1 = read_file(&file1)?;
            let f2 = read_file(&file2)?;
            let mut comment = format!(
                "convolve mode={}",
                mode.to_possible_value().expect("named variant").get_name()
            );
            let result = match mode {
                ConvolveMode::Harmonic => f1.convolve(&f2),
                ConvolveMode::Tilde | ConvolveMode::Rotation => {
                    if f2.b_tail().iter().any(|b| b.norm() != 0.0) {
                        return Err(Failure::usage(format!(
                            "{}: second file must be analytic (all b columns zero) in {} mode",
                            file2.display(),
                            if mode == ConvolveMode::Tilde { "tilde" } else { "rotation" }
                        )));
                    }
                    let phi = f2.analytic().clone();
                    if mode == ConvolveMode::Tilde {
                        f1.convolve_tilde(&phi)
                    } else {
                        let spec = beta.ok_or_else(|| Failure::usage("rotation mode needs --beta re,im"))?;
                        let b = parse_complex(&spec)?;
                        comment.push_str(&format!(" beta={},{}", num(b.re), num(b.im)));
                        f1.convolve_rotation(&phi, b)?
                    }
                }
            };
            let mut text = Vec::new();
            write_coefficients(&mut text, &result, &[comment])?;
            emit(out, path.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Extremal {
            kind,
            n,
            degree,
            alpha,
            m,
            out: path,
        } => {
            let p = params(alpha, m)?;
            let (f, comment) = match kind {
                ExtremalKind::Coanalytic => (
                    extremal_coanalytic(n, &p)?,
                    format!("extremal kind=coanalytic n={n} alpha={} m={}", num(alpha), num(m)),
                ),
                ExtremalKind::Analytic => (
                    extremal_analytic(&p, degree)?,
                    format!("extremal kind=analytic degree={degree} alpha={} m={}", num(alpha), num(m)),
                ),
            };
            let mut text = Vec::new();
            write_coefficients(&mut text, &f, &[comment])?;
            emit(out, path.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            w.write_all(bytes)?;
            w.flush()?;
        }
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<HarmonicSeries, Failure> {
    let file = File::open(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    read_coefficients(file).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_complex(spec: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::usage(format!("expected `re,im`, got `{spec}`"));
    let (re, im) = spec.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn write_curve(out: &mut dyn Write, rows: &[CurveSample], which: Which, alpha: f64, m: f64) -> std::io::Result<()> {
    let first = rows.first().map_or(0.0, |r| r.r);
    let last = rows.last().map_or(0.0, |r| r.r);
    writeln!(
        out,
        "# alpha={} m={} rmin={} rmax={} steps={}",
        num(alpha),
        num(m),
        num(first),
        num(last),
        rows.len()
    )?;
    match which {
        Which::G1 => writeln!(out, "r,G1")?,
        Which::G2 => writeln!(out, "r,G2")?,
        Which::Both => writeln!(out, "r,G1,G2")?,
    }
    for row in rows {
        match which {
            Which::G1 => writeln!(out, "{},{}", num(row.r), num(row.g1))?,
            Which::G2 => writeln!(out, "{},{}", num(row.r), num(row.g2))?,
            Which::Both => writeln!(out, "{},{},{}", num(row.r), num(row.g1), num(row.g2))?,
        }
    }
    Ok(())
}

fn write_verdict(out: &mut dyn Write, label: &str, v: &MembershipVerdict, fmt: &dyn Fn(f64) -> String) -> std::io::Result<()> {
    write!(out, "{label}: verdict={} margin_min={}", v.verdict, fmt(v.margin_min))?;
    if let Some(s) = v.slice_margin_min {
        write!(out, " slice_margin_min={}", fmt(s))?;
    }
    if let Some(w) = v.witness {
        write!(out, " witness_z={},{} witness_margin={}", fmt(w.z.re), fmt(w.z.im), fmt(w.margin))?;
    }
    writeln!(out)
}

/// SVG of `G₁` or `G₂` for each `(α, M)` pair on `[0, 0.95]`.
pub fn plot_svg(alphas: &[f64], ms: &[f64], which: PlotChoice) -> Result<String, String> {
    plot_svg_inner(alphas, ms, which).map_err(|f| f.message)
}

/// Public mirror of the `--which` flag of `plot`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PlotChoice {
    G1,
    G2,
}

impl From<PlotWhich> for PlotChoice {
    fn from(w: PlotWhich) -> Self {
        match w {
            PlotWhich::G1 => PlotChoice::G1,
            PlotWhich::G2 => PlotChoice::G2,
        }
    }
}

fn plot_svg_inner(alphas: &[f64], ms: &[f64], which: PlotChoice) -> Result<String, Failure> {
    let cfg = SeriesEvalConfig::default();
    let mut series = Vec::with_capacity(alphas.len());
    for (&alpha, &m) in alphas.iter().zip(ms) {
        let p = params(alpha, m)?;
        let rows = curve(&p, 0.0, PLOT_R_MAX, PLOT_POINTS, &cfg)?;
        series.push(svg::Series {
            label: format!("alpha={}, M={}", format_sig(alpha, 9), format_sig(m, 9)),
            points: rows
                .iter()
                .map(|row| (row.r, if which == PlotChoice::G1 { row.g1 } else { row.g2 }))
                .collect(),
        });
    }
    let name = if which == PlotChoice::G1 { "G1" } else { "G2" };
    let frame = svg::Frame::fit(&series, 0.0, PLOT_R_MAX);
    Ok(svg::render(&series, &frame, &format!("{name}(r)"), "r", name))
}
