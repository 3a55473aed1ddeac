//! The `thetahull` command line: argument parsing, command dispatch and the
//! mapping from library errors to exit codes. [`run`] does everything except
//! printing, so tests can drive it in-process.

pub mod corpus;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thetahull_core::analysis::{analyze, Analysis, AnalysisError, AnalysisOptions, DEFAULT_SEED};
use thetahull_core::exactpoly::{parse_poly, BiPoly, ParseError};
use thetahull_core::quartic::QuarticError;
use thetahull_core::sepbodies::{
    facet_oracle, strongly_separated, support_functional_with, uniqueness_check, BodySet,
    Orientation, SepError,
};
use thetahull_core::thetacount::{
    bounds_table, brute_force_odd_with_signs, brute_force_real_theta, count_odd_with_signs,
    count_real_theta, hyperelliptic_oracle, hyperelliptic_totally_real_odd, CurveTopology,
    ThetaError,
};
use thetahull_core::trace::{render_svg, TraceError, DEFAULT_DUAL_RESOLUTION, DEFAULT_RESOLUTION};

use corpus::{table_row, Expected, TableRow, TABLE};
use report::Report;

pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const REJECTED_CURVE: i32 = 3;
    pub const DEGENERATE: i32 = 4;
    pub const UNSTABLE: i32 = 5;
    pub const NOT_SEPARATED: i32 = 6;
    pub const ITERATION_CAP: i32 = 7;
}

pub const THREADS_ENV: &str = "THETAHULL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "thetahull", version, about = "Totally real bitangents, hull faces and supporting hyperplanes")]
pub struct Cli {
    /// Worker threads (default: all cores, or THETAHULL_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Odd and even real theta characteristics of a curve type.
    ThetaCount(ThetaCountArgs),
    /// Lower and upper bounds on totally real odd thetas for every type of genus g.
    Bounds {
        #[arg(short = 'g')]
        g: u32,
    },
    /// Plane quartic pipeline.
    Quartic {
        #[command(subcommand)]
        action: QuarticCommand,
    },
    /// Run the pipeline on the embedded reference quartics and compare.
    VerifyTable(VerifyArgs),
    /// Separated convex bodies given as point clouds.
    Bodies {
        #[command(subcommand)]
        action: BodiesCommand,
    },
    /// Totally real odd thetas of a hyperelliptic curve with 2r real branch points.
    Hyperelliptic {
        #[arg(short = 'g')]
        g: u32,
        #[arg(short = 'r')]
        r: u32,
        /// Also count by subset enumeration and compare.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args, Debug)]
pub struct ThetaCountArgs {
    #[arg(short = 'g')]
    pub g: u32,
    #[arg(short = 's')]
    pub s: u32,
    #[arg(long)]
    pub dividing: bool,
    /// Also enumerate all characteristics and compare.
    #[arg(long)]
    pub brute_force: bool,
    /// Fixed signs on the first s-1 ovals, e.g. `+-+`.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum QuarticCommand {
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PipelineArgs {
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Half side of the dual lattice used for avoiding lines.
    #[arg(long, default_value_t = DEFAULT_DUAL_RESOLUTION)]
    pub dual_resolution: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

impl PipelineArgs {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            resolution: self.resolution,
            dual_resolution: self.dual_resolution,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Polynomial in x and y, e.g. "1 - x^4 - y^4".
    #[arg(allow_hyphen_values = true, required_unless_present = "table_row", conflicts_with = "table_row")]
    pub polynomial: Option<String>,
    /// Use the embedded reference quartic with this 1-based row number.
    #[arg(long)]
    pub table_row: Option<usize>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated 1-based rows (default: all).
    #[arg(long, value_delimiter = ',')]
    pub rows: Option<Vec<usize>>,
    /// Test mode: negate the constant term of this row before analysis.
    #[arg(long, hide = true)]
    pub perturb: Option<usize>,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

#[derive(Subcommand, Debug)]
pub enum BodiesCommand {
    /// Whether every bipartition of the bodies has disjoint hulls.
    Separated(BodiesIo),
    /// Common supporting hyperplane through one point of each body.
    Support(SupportArgs),
    /// Facets of the hull of the union meeting every body, by enumeration.
    Oracle(BodiesIo),
}

#[derive(Args, Debug)]
pub struct BodiesIo {
    /// Body-set document (`-` for standard input).
    #[arg(long)]
    pub input: PathBuf,
    /// Also write the result document here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SupportArgs {
    #[command(flatten)]
    pub io: BodiesIo,
    /// `+` for nonnegative on every body, `-` for nonpositive.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub orientation: Orientation,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also run this many randomized restarts and check they agree.
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
}

/// Exit code, the report (empty on error) and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<ThetaError> for CliError {
    fn from(e: ThetaError) -> Self {
        CliError::new(exit::INVALID_INPUT, e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::new(exit::INVALID_INPUT, e.to_string())
    }
}

impl From<QuarticError> for CliError {
    fn from(e: QuarticError) -> Self {
        let code = match e {
            QuarticError::Degree(_)
            | QuarticError::Singular { .. }
            | QuarticError::NonCompact { .. }
            | QuarticError::EmptyRealLocus => exit::REJECTED_CURVE,
            QuarticError::Degenerate(_) => exit::DEGENERATE,
            QuarticError::CountMismatch { .. } | QuarticError::Inconsistent { .. } => exit::UNSTABLE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<TraceError> for CliError {
    fn from(e: TraceError) -> Self {
        let code = match e {
            TraceError::DegenerateTangency { .. } => exit::DEGENERATE,
            TraceError::ResolutionUnstable { .. } | TraceError::MethodDisagreement { .. } => exit::UNSTABLE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Quartic(e) => e.into(),
            AnalysisError::Trace(e) => e.into(),
            AnalysisError::Theta(e) => e.into(),
        }
    }
}

impl From<SepError> for CliError {
    fn from(e: SepError) -> Self {
        let code = match e {
            SepError::NotSeparated { .. } => exit::NOT_SEPARATED,
            SepError::IterationCap { .. } | SepError::NotMonotone { .. } => exit::ITERATION_CAP,
            SepError::Indeterminate(_) => exit::UNSTABLE,
            _ => exit::INVALID_INPUT,
        };
        CliError::new(code, e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    configure_threads(cli.threads);
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    match dispatch(&cli.command, echo, start) {
        Ok(done) => done,
        Err(e) => Outcome {
            code: e.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
        },
    }
}

fn configure_threads(flag: Option<usize>) {
    let n = flag.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok());
    if let Some(n) = n.filter(|&n| n > 0) {
        // Only the first configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn finish(code: i32, echo: Vec<String>, input: &impl Serialize, body: &impl Serialize, start: Instant, note: String) -> Outcome {
    let elapsed: Duration = start.elapsed();
    Outcome {
        code,
        stdout: Report::new(echo, input, body, elapsed).to_json(),
        stderr: note,
    }
}

fn dispatch(cmd: &Command, echo: Vec<String>, start: Instant) -> Result<Outcome, CliError> {
    match cmd {
        Command::ThetaCount(a) => theta_count(a, echo, start),
        Command::Bounds { g } => {
            let rows = bounds_table(*g)?;
            #[derive(Serialize)]
            struct Body<'a> {
                g: u32,
                rows: &'a [thetahull_core::thetacount::BoundsRow],
            }
            let note = rows
                .iter()
                .map(|r| format!("s={} a={}: [{}, {}]\n", r.s, r.a, r.lower, r.upper))
                .collect();
            Ok(finish(exit::OK, echo, &("bounds", g), &Body { g: *g, rows: &rows }, start, note))
        }
        Command::Quartic { action: QuarticCommand::Analyze(a) } => quartic_analyze(a, echo, start),
        Command::VerifyTable(a) => verify_table(a, echo, start),
        Command::Bodies { action } => bodies(action, echo, start),
        Command::Hyperelliptic { g, r, oracle } => {
            let count = hyperelliptic_totally_real_odd(*g, *r)?;
            let enumerated = if *oracle { Some(hyperelliptic_oracle(*g, *r)?) } else { None };
            let agree = enumerated.as_ref().is_none_or(|e| *e == count);
            #[derive(Serialize)]
            struct Body {
                g: u32,
                r: u32,
                count: String,
                oracle: Option<String>,
                agree: bool,
            }
            let body = Body {
                g: *g,
                r: *r,
                count: count.to_string(),
                oracle: enumerated.map(|e| e.to_string()),
                agree,
            };
            let code = if agree { exit::OK } else { exit::MISMATCH };
            Ok(finish(code, echo, &("hyperelliptic", g, r), &body, start, format!("{count}\n")))
        }
    }
}

fn theta_count(a: &ThetaCountArgs, echo: Vec<String>, start: Instant) -> Result<Outcome, CliError> {
    let t = CurveTopology::new(a.g, a.s, a.dividing)?;
    let counts = count_real_theta(&t);
    let brute = if a.brute_force { Some(brute_force_real_theta(&t)?) } else { None };
    let signs: Option<Vec<bool>> = match &a.signs {
        None => None,
        Some(text) => Some(
            text.chars()
                .map(|c| match c {
                    '+' => Ok(true),
                    '-' => Ok(false),
                    _ => Err(CliError::new(exit::INVALID_INPUT, format!("sign pattern {text:?} must use + and -"))),
                })
                .collect::<Result<_, _>>()?,
        ),
    };
    #[derive(Serialize)]
    struct Signed {
        signs: String,
        odd: String,
        brute_force: Option<String>,
    }
    let signed = match &signs {
        None => None,
        Some(w) => {
            let odd = count_odd_with_signs(&t, w)?;
            let brute = if a.brute_force { Some(brute_force_odd_with_signs(&t, w)?) } else { None };
            Some((odd, brute))
        }
    };
    let agree = brute.as_ref().is_none_or(|b| *b == counts)
        && signed.as_ref().is_none_or(|(o, b)| b.as_ref().is_none_or(|b| b == o));
    #[derive(Serialize)]
    struct Body {
        topology: CurveTopology,
        a: u8,
        counts: thetahull_core::thetacount::ParityCounts,
        brute_force: Option<thetahull_core::thetacount::ParityCounts>,
        with_signs: Option<Signed>,
        agree: bool,
    }
    let note = format!("odd {} even {}\n", counts.odd, counts.even);
    let body = Body {
        a: t.a(),
        topology: t,
        counts,
        brute_force: brute,
        with_signs: signed.map(|(odd, b)| Signed {
            signs: a.signs.clone().unwrap_or_default(),
            odd: odd.to_string(),
            brute_force: b.map(|b| b.to_string()),
        }),
        agree,
    };
    let code = if agree { exit::OK } else { exit::MISMATCH };
    Ok(finish(code, echo, &("theta-count", a.g, a.s, a.dividing, &a.signs), &body, start, note))
}

#[derive(Serialize)]
struct PipelineInput<'a> {
    polynomial: String,
    table_row: Option<usize>,
    #[serde(flatten)]
    options: &'a AnalysisOptions,
}

fn quartic_analyze(a: &AnalyzeArgs, echo: Vec<String>, start: Instant) -> Result<Outcome, CliError> {
    let (f, row): (BiPoly, Option<&TableRow>) = match (a.table_row, &a.polynomial) {
        (Some(k), _) => {
            let row = table_row(k).ok_or_else(|| {
                CliError::new(exit::INVALID_INPUT, format!("table row must be 1..={}, got {k}", TABLE.len()))
            })?;
            (row.poly(), Some(row))
        }
        (None, Some(text)) => (parse_poly(text)?, None),
        (None, None) => return Err(CliError::new(exit::INVALID_INPUT, "no polynomial given")),
    };
    let opts = a.pipeline.options();
    let analysis = analyze(&f, &opts)?;
    let r = &analysis.report;
    let got = Expected { s: r.s, a: r.a, t: r.t, e: r.e };
    #[derive(Serialize)]
    struct Body<'a> {
        report: &'a thetahull_core::analysis::QuarticReport,
        expected: Option<Expected>,
        matches_table: Option<bool>,
    }
    let body = Body {
        report: r,
        expected: row.map(|x| x.expected),
        matches_table: row.map(|x| x.expected == got),
    };
    if let Some(path) = &a.svg {
        let svg = render_svg(&analysis.sampling, &analysis.set, &analysis.hull);
        write_file(path, &svg)?;
    }
    let input = PipelineInput {
        polynomial: f.to_string(),
        table_row: a.table_row,
        options: &opts,
    };
    let note = format!("s={} a={} T={} E={} avoidance={}\n", r.s, r.a, r.t, r.e, r.avoidance.components);
    let out = finish(exit::OK, echo, &input, &body, start, note);
    if let Some(path) = &a.json {
        write_file(path, &out.stdout)?;
    }
    Ok(out)
}

/// Invariants checked for every verified row besides `(s, a, T, E)`.
#[derive(Clone, Debug, Serialize)]
pub struct RowChecks {
    pub bitangents: usize,
    pub conjugation_closed: bool,
    pub max_residual: f64,
    pub real_lines: usize,
    pub expected_real_lines: usize,
    pub avoidance: usize,
    pub avoidance_counts: Vec<usize>,
    pub bounds_hold: bool,
}

impl RowChecks {
    pub fn from_analysis(a: &Analysis) -> RowChecks {
        let r = &a.report;
        let avoiding = (1usize << (r.s - 1)) - 1 + r.a as usize;
        RowChecks {
            bitangents: r.counts.total,
            conjugation_closed: a.set.conjugation_closed(1e-9),
            max_residual: a.set.max_residual(),
            real_lines: r.counts.real_lines,
            expected_real_lines: 4 * avoiding,
            avoidance: r.avoidance.components,
            avoidance_counts: r.avoidance.counts.clone(),
            bounds_hold: r.bounds.all_hold(),
        }
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.bitangents != 28 {
            out.push(format!("{} bitangents instead of 28", self.bitangents));
        }
        if !self.conjugation_closed {
            out.push("bitangents not closed under conjugation".into());
        }
        if !(self.max_residual <= 1e-8) {
            out.push(format!("perfect-square residual {:.2e} > 1e-8", self.max_residual));
        }
        if self.real_lines != self.expected_real_lines {
            out.push(format!("{} real lines, expected {}", self.real_lines, self.expected_real_lines));
        }
        if self.avoidance * 4 != self.expected_real_lines {
            out.push(format!("{} avoidance components, expected {}", self.avoidance, self.expected_real_lines / 4));
        }
        if !self.bounds_hold {
            out.push("a bound check failed".into());
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    pub row: usize,
    pub polynomial: String,
    pub expected: Expected,
    pub got: Option<Expected>,
    pub checks: Option<RowChecks>,
    pub diff: Vec<String>,
    pub error: Option<String>,
    pub pass: bool,
}

/// Analyzes one reference row (optionally perturbed) and compares.
pub fn verify_row(row: &TableRow, perturb: bool, opts: &AnalysisOptions) -> RowResult {
    let f = if perturb { row.perturbed() } else { row.poly() };
    let polynomial = f.to_string();
    match analyze(&f, opts) {
        Err(e) => RowResult {
            row: row.row,
            polynomial,
            expected: row.expected,
            got: None,
            checks: None,
            diff: vec![format!("analysis failed: {e}")],
            error: Some(e.to_string()),
            pass: false,
        },
        Ok(a) => {
            let r = &a.report;
            let got = Expected { s: r.s, a: r.a, t: r.t, e: r.e };
            let want = row.expected;
            let mut diff = Vec::new();
            for (name, w, g) in [
                ("s", want.s as usize, got.s as usize),
                ("a", want.a as usize, got.a as usize),
                ("T", want.t, got.t),
                ("E", want.e, got.e),
            ] {
                if w != g {
                    diff.push(format!("{name}: expected {w}, got {g}"));
                }
            }
            let checks = RowChecks::from_analysis(&a);
            diff.extend(checks.failures());
            RowResult {
                row: row.row,
                polynomial,
                expected: want,
                got: Some(got),
                checks: Some(checks),
                pass: diff.is_empty(),
                diff,
                error: None,
            }
        }
    }
}

fn verify_table(a: &VerifyArgs, echo: Vec<String>, start: Instant) -> Result<Outcome, CliError> {
    let wanted: Vec<usize> = a.rows.clone().unwrap_or_else(|| (1..=TABLE.len()).collect());
    let rows: Vec<&TableRow> = wanted
        .iter()
        .map(|&k| {
            table_row(k).ok_or_else(|| {
                CliError::new(exit::INVALID_INPUT, format!("table row must be 1..={}, got {k}", TABLE.len()))
            })
        })
        .collect::<Result<_, _>>()?;
    let opts = a.pipeline.options();
    let results: Vec<RowResult> = rows
        .par_iter()
        .map(|row| verify_row(row, a.perturb == Some(row.row), &opts))
        .collect();
    let passed = results.iter().filter(|r| r.pass).count();
    let mut note = String::new();
    for r in &results {
        let e = r.expected;
        if r.pass {
            note += &format!("row {}: PASS (s, a, T, E) = ({}, {}, {}, {})\n", r.row, e.s, e.a, e.t, e.e);
        } else {
            note += &format!("row {}: FAIL {}\n", r.row, r.diff.join("; "));
        }
    }
    note += &format!("{passed}/{} PASS\n", results.len());
    #[derive(Serialize)]
    struct Body {
        rows: Vec<RowResult>,
        passed: usize,
        total: usize,
        pass: bool,
        perturbed: Option<usize>,
    }
    let total = results.len();
    let body = Body { pass: passed == total, rows: results, passed, total, perturbed: a.perturb };
    let code = if body.pass { exit::OK } else { exit::MISMATCH };
    #[derive(Serialize)]
    struct Input<'a> {
        rows: &'a [usize],
        perturb: Option<usize>,
        #[serde(flatten)]
        options: &'a AnalysisOptions,
    }
    let input = Input { rows: &wanted, perturb: a.perturb, options: &opts };
    Ok(finish(code, echo, &input, &body, start, note))
}

fn read_bodies(path: &Path) -> Result<(String, BodySet), CliError> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::new(exit::INVALID_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let set: BodySet = serde_json::from_str(&text)
        .map_err(|e| CliError::new(exit::INVALID_INPUT, format!("malformed body-set document: {e}")))?;
    Ok((text, set))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::new(exit::INVALID_INPUT, format!("cannot write {}: {e}", path.display())))
}

fn bodies(cmd: &BodiesCommand, echo: Vec<String>, start: Instant) -> Result<Outcome, CliError> {
    let io = match cmd {
        BodiesCommand::Separated(io) | BodiesCommand::Oracle(io) => io,
        BodiesCommand::Support(s) => &s.io,
    };
    let (text, set) = read_bodies(&io.input)?;
    let bodies = set.to_bodies()?;
    #[derive(Serialize)]
    struct Document<'a, T: Serialize> {
        dimension: usize,
        bodies: &'a [Vec<Vec<f64>>],
        #[serde(flatten)]
        result: T,
    }
    let (body, note) = match cmd {
        BodiesCommand::Separated(_) => {
            let sep = strongly_separated(&bodies)?;
            let note = format!("separated: {}\n", sep.separated);
            (serde_json::json!({ "separation": sep }), note)
        }
        BodiesCommand::Oracle(_) => {
            let facets = facet_oracle(&bodies)?;
            let note = format!("{} facets meet every body\n", facets.len());
            (serde_json::json!({ "facets": facets }), note)
        }
        BodiesCommand::Support(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let cert = support_functional_with(&bodies, s.orientation, &mut rng)?;
            let unique = if s.trials > 0 {
                Some(uniqueness_check(&bodies, s.orientation, s.trials, s.seed)?)
            } else {
                None
            };
            let l = &cert.functional;
            let note = format!("functional normal {:?} offset {:.12}\n", l.normal, l.offset);
            (serde_json::json!({ "certificate": cert, "uniqueness": unique }), note)
        }
    };
    let doc = Document { dimension: set.dimension, bodies: &set.bodies, result: body };
    let code = match cmd {
        BodiesCommand::Support(s) if doc.result["uniqueness"] == serde_json::json!(false) && s.trials > 0 => {
            exit::MISMATCH
        }
        _ => exit::OK,
    };
    #[derive(Serialize)]
    struct Input<'a> {
        document: &'a str,
        orientation: Option<Orientation>,
        seed: Option<u64>,
        trials: Option<usize>,
    }
    let (orientation, seed, trials) = match cmd {
        BodiesCommand::Support(s) => (Some(s.orientation), Some(s.seed), Some(s.trials)),
        _ => (None, None, None),
    };
    let input = Input { document: &text, orientation, seed, trials };
    if let Some(path) = &io.output {
        let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
        s.push('\n');
        write_file(path, &s)?;
    }
    Ok(finish(code, echo, &input, &doc, start, note))
}
