//! The `inellipse` command-line tool.
//!
//! Exit codes: 0 ok, 1 fuzz violation, 2 bad input or configuration,
//! 3 non-convex input, 4 parallelogram, 5 I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::document::{MaximalEntry, NormalizedParams, QuadDocument, ResultDocument};
use crate::error::Error;
use crate::inscribed::{self, FamilyParam, InscribedEllipse};
use crate::oracle::{self, FuzzConfig, FuzzReport};
use crate::quad::{Classification, Quadrilateral};
use crate::svg::{self, Figure};
use crate::DEFAULT_TOL;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_NON_CONVEX: i32 = 3;
pub const EXIT_PARALLELOGRAM: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "inellipse", version, about = "Ellipses inscribed in convex quadrilaterals")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Relative tolerance (default 1e-9; fuzz targets have their own defaults).
    #[arg(long, global = true, env = "INELLIPSE_TOL")]
    tol: Option<f64>,
    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct QuadInput {
    /// JSON document {"vertices": [[x, y], ...]}.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Inline vertices: x1 y1 x2 y2 x3 y3 x4 y4.
    #[arg(allow_negative_numbers = true)]
    coords: Vec<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify and normalize a quadrilateral.
    Classify(QuadInput),
    /// Inscribed ellipses tangent at side midpoints.
    Midpoints(QuadInput),
    /// The maximal-area inscribed ellipse.
    Maxarea(QuadInput),
    /// Members of the inscribed family for given parameters.
    Family {
        #[command(flatten)]
        input: QuadInput,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
        q: Vec<f64>,
    },
    /// Randomized verification.
    Fuzz {
        target: FuzzTarget,
        /// Number of trials (10000 for t1, 100 for polygon, 1000 otherwise).
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// q-samples per trial.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Restrict sampling to one class (trapezoid, mdq-type-1, mdq-type-2, generic).
        #[arg(long)]
        class: Option<String>,
        /// Polygon vertex count for the `polygon` target.
        #[arg(long, default_value_t = 10_000)]
        polygon_sides: usize,
    },
    /// Write an SVG figure.
    Render {
        #[command(flatten)]
        input: QuadInput,
        #[arg(long, value_enum, default_value_t = RenderWhat::Midpoints)]
        what: RenderWhat,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
        q: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuzzTarget {
    /// No ellipse touches three side midpoints.
    T1,
    /// Number of multi-midpoint ellipses per class.
    Counts,
    /// Classification is affine invariant.
    Affine,
    /// Trapezoid area law and its maximizer.
    Area,
    /// Family tangency, interior contact and injectivity.
    Family,
    /// Polygonal area against the closed-form area.
    Polygon,
}

impl FuzzTarget {
    fn default_tol(self) -> f64 {
        match self {
            FuzzTarget::T1 | FuzzTarget::Counts => 1e-7,
            FuzzTarget::Affine | FuzzTarget::Area | FuzzTarget::Family => 1e-9,
            FuzzTarget::Polygon => 1e-5,
        }
    }

    fn default_trials(self) -> usize {
        match self {
            FuzzTarget::T1 => 10_000,
            FuzzTarget::Polygon => 100,
            _ => 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderWhat {
    Midpoints,
    Family,
    Maxarea,
}

#[derive(Debug)]
enum Failure {
    BadInput(String),
    NonConvex(String),
    Parallelogram,
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::BadInput(_) => EXIT_BAD_INPUT,
            Failure::NonConvex(_) => EXIT_NON_CONVEX,
            Failure::Parallelogram => EXIT_PARALLELOGRAM,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::BadInput(m) | Failure::NonConvex(m) | Failure::Io(m) => f.write_str(m),
            Failure::Parallelogram => f.write_str("quadrilateral is a parallelogram"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvex | Error::CollinearPoints => Failure::NonConvex(e.to_string()),
            Error::Parallelogram => Failure::Parallelogram,
            other => Failure::BadInput(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_BAD_INPUT;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli) {
        Ok((text, passed)) => match emit(cli.out.as_deref(), &text, stdout) {
            Ok(()) if passed => EXIT_OK,
            Ok(()) => EXIT_VIOLATION,
            Err(f) => {
                let _ = writeln!(stderr, "error: {f}");
                f.exit_code()
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.exit_code()
        }
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomically(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write output: {e}"))),
    }
}

/// Temp file in the target directory, then rename.
fn write_atomically(path: &Path, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn read_quad(input: &QuadInput) -> Result<Quadrilateral, Failure> {
    let doc = match (&input.input, input.coords.is_empty()) {
        (Some(path), true) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::BadInput(format!("cannot read {}: {e}", path.display())))?;
            QuadDocument::from_json(&text)?
        }
        (None, false) => QuadDocument::from_coords(&input.coords)?,
        (Some(_), false) => return Err(Failure::BadInput("give either --in or inline coordinates, not both".into())),
        (None, true) => return Err(Failure::BadInput("no quadrilateral given (use --in PATH or 8 numbers)".into())),
    };
    Ok(doc.quadrilateral()?)
}

fn tolerance(cli: &Cli) -> Result<f64, Failure> {
    match cli.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(Failure::BadInput(format!("tolerance must be positive, got {t}"))),
        Some(t) => Ok(t),
        None => Ok(DEFAULT_TOL),
    }
}

fn render_doc(cli: &Cli, doc: &ResultDocument) -> String {
    if cli.json {
        let mut s = doc.to_json();
        s.push('\n');
        s
    } else {
        doc.to_text()
    }
}

fn execute(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Classify(input) => {
            let quad = read_quad(input)?;
            let tol = tolerance(cli)?;
            let classification = quad.classify(tol);
            let normalized = match classification {
                Classification::Parallelogram => None,
                _ => Some(NormalizedParams::from(quad.normalize_with_tol(tol)?.nq)),
            };
            let doc = ResultDocument {
                classification,
                vertices: quad.vertices(),
                normalized,
                ellipses: Vec::new(),
                maximal: None,
            };
            Ok((render_doc(cli, &doc), true))
        }
        Command::Midpoints(input) => {
            let doc = midpoint_doc(cli, input)?;
            Ok((render_doc(cli, &doc), true))
        }
        Command::Maxarea(input) => {
            let doc = max_area_doc(cli, input)?;
            Ok((render_doc(cli, &doc), true))
        }
        Command::Family { input, q } => {
            let doc = family_doc(cli, input, q)?;
            Ok((render_doc(cli, &doc), true))
        }
        Command::Render { input, what, q } => {
            let (labeled, figure) = match what {
                RenderWhat::Midpoints => {
                    let doc = midpoint_doc(cli, input)?;
                    let marks = doc
                        .ellipses
                        .iter()
                        .flat_map(|e| e.midpoint_sides.iter().map(|j| e.tangency_points.get(j)))
                        .collect();
                    (doc.vertices, Figure { ellipses: doc.ellipses, marks })
                }
                RenderWhat::Family => {
                    let doc = family_doc(cli, input, q)?;
                    let marks = doc.ellipses.iter().flat_map(|e| e.tangency_points.0).collect();
                    (doc.vertices, Figure { ellipses: doc.ellipses, marks })
                }
                RenderWhat::Maxarea => {
                    let doc = max_area_doc(cli, input)?;
                    let max = doc.maximal.expect("maxarea fills the maximal entry").ellipse;
                    (doc.vertices, Figure { ellipses: vec![max], marks: max.tangency_points.0.to_vec() })
                }
            };
            let labeled = Quadrilateral::from_labeled(labeled)?;
            Ok((svg::render(&labeled, &figure)?, true))
        }
        Command::Fuzz {
            target,
            trials,
            seed,
            grid,
            class,
            polygon_sides,
        } => {
            let cfg = FuzzConfig {
                seed: *seed,
                trials: trials.unwrap_or(target.default_trials()),
                grid_size: *grid,
                tol: cli.tol.unwrap_or(target.default_tol()),
            };
            let classes = match class {
                Some(c) => vec![c.parse::<Classification>()?],
                None if *target == FuzzTarget::Affine => vec![Classification::MdqType1, Classification::MdqType2],
                None => oracle::NON_PARALLELOGRAMS.to_vec(),
            };
            let report = match target {
                FuzzTarget::T1 => oracle::fuzz_theorem_t1_classes(&cfg, &classes),
                FuzzTarget::Counts => oracle::fuzz_lemma_counts(&cfg, &classes),
                FuzzTarget::Affine => oracle::fuzz_affine_invariance(&cfg, &classes),
                FuzzTarget::Area => oracle::fuzz_trapezoid_area(&cfg),
                FuzzTarget::Family => oracle::fuzz_family(&cfg),
                FuzzTarget::Polygon => oracle::fuzz_polygon_area(&cfg, *polygon_sides),
            }?;
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                report_text(&report)
            };
            Ok((text, report.passed()))
        }
    }
}

fn midpoint_doc(cli: &Cli, input: &QuadInput) -> Result<ResultDocument, Failure> {
    let quad = read_quad(input)?;
    let norm = quad.normalize_with_tol(tolerance(cli)?)?;
    let found = inscribed::midpoint_tangent_ellipses_for(norm)?;
    Ok(ResultDocument {
        classification: norm.kind,
        vertices: norm.quad.vertices(),
        normalized: Some(norm.nq.into()),
        ellipses: found.ellipses,
        maximal: None,
    })
}

fn max_area_doc(cli: &Cli, input: &QuadInput) -> Result<ResultDocument, Failure> {
    let quad = read_quad(input)?;
    let norm = quad.normalize_with_tol(tolerance(cli)?)?;
    let max = inscribed::max_area_ellipse_for(norm)?;
    let note = (norm.kind == Classification::Trapezoid).then(|| "midpoint-tangent (S2,S4)".to_string());
    Ok(ResultDocument {
        classification: norm.kind,
        vertices: norm.quad.vertices(),
        normalized: Some(norm.nq.into()),
        ellipses: Vec::new(),
        maximal: Some(MaximalEntry { ellipse: max.ellipse, note }),
    })
}

fn family_doc(cli: &Cli, input: &QuadInput, qs: &[f64]) -> Result<ResultDocument, Failure> {
    let quad = read_quad(input)?;
    let norm = quad.normalize_with_tol(tolerance(cli)?)?;
    let ellipses = qs
        .iter()
        .map(|&q| inscribed::family_ellipse(&norm, FamilyParam::new(q)?))
        .collect::<Result<Vec<InscribedEllipse>, Error>>()?;
    Ok(ResultDocument {
        classification: norm.kind,
        vertices: norm.quad.vertices(),
        normalized: Some(norm.nq.into()),
        ellipses,
        maximal: None,
    })
}

fn report_text(r: &FuzzReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "target: {}", r.target);
    let _ = writeln!(
        s,
        "config: seed {} trials {} grid {} tol {:e}",
        r.config.seed, r.config.trials, r.config.grid_size, r.config.tol
    );
    let _ = writeln!(s, "trials run: {} (skipped {})", r.trials_run, r.skipped);
    let _ = writeln!(s, "max observed midpoint count: {}", r.max_observed_midpoint_count);
    let hist: Vec<String> = r.histogram.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    let _ = writeln!(s, "histogram: {}", hist.join(", "));
    let _ = writeln!(s, "violations: {}", r.violations.len());
    for v in &r.violations {
        let verts: Vec<String> = v.vertices.iter().map(|p| format!("({}, {})", p.x, p.y)).collect();
        let q = v.q.map(|q| format!(" q={q}")).unwrap_or_default();
        let _ = writeln!(s, "  trial {}{q}: {} [{}]", v.trial, v.detail, verts.join(" "));
    }
    let _ = writeln!(s, "elapsed: {:.3}s", r.elapsed.as_secs_f64());
    let _ = writeln!(s, "{}", if r.passed() { "PASS" } else { "FAIL" });
    s
}
