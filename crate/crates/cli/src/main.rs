//! Command-line front end: validation, frame reports, and dimension tables.
//!
//! Exit codes: 0 all executed checks passed, 1 a check failed, 2 usage or
//! parse error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use swcat_core::error::Error;
use swcat_core::frame::{naturality_report, FrameReport};
use swcat_core::heckealg::LocalRep;
use swcat_core::qtrace::{DimensionTable, IndependenceReport, OmegaReport, TraceContext};
use swcat_core::scalar::{parse_rat, QContext};
use swcat_core::symfunc::{lr_expand, partitions, Partition};
use swcat_core::symmetry::{build_uq_sln, load_with_backend, HeckeSymmetry, ValidationReport};

#[derive(Parser)]
#[command(
    name = "swcat",
    version,
    about = "Exact engine for Hecke symmetries: validation, rank frames, q-dimensions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Yang-Baxter and Hecke relations and q-genericity
    Validate(SourceArgs),
    /// Rank detection, Poincaré series, N/M matrices, naturality verdict
    Frame(FrameArgs),
    /// Dimension tables with both computation routes
    Qdim(QdimArgs),
    /// Run validation, frame, and the full dimension suite
    Report(ReportArgs),
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Builtin symmetry, e.g. `uqsln:2`
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// R-matrix file (JSON)
    #[arg(long)]
    input: Option<PathBuf>,
    /// `formal` or a rational value for q such as `3/2`
    #[arg(long)]
    backend: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FrameArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Highest degree of the symmetric Poincaré series
    #[arg(long, default_value_t = 5)]
    plus_degree: usize,
}

#[derive(Args)]
struct QdimArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Tabulate every partition of weight 1..=M (height ≤ p)
    #[arg(long, conflicts_with = "partition")]
    upto: Option<u32>,
    /// A single partition, e.g. `2,1`
    #[arg(long)]
    partition: Option<String>,
    /// Verify the antisymmetrizer trace table and its generating polynomial
    #[arg(long)]
    lemma_omega: bool,
    /// Verify multiplicativity through Littlewood-Richardson coefficients
    #[arg(long)]
    am_check: bool,
    #[arg(long, default_value_t = 5)]
    plus_degree: usize,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 3)]
    upto: u32,
    #[arg(long, default_value_t = 5)]
    plus_degree: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Validate(args) => cmd_validate(args),
        Cmd::Frame(args) => cmd_frame(args),
        Cmd::Qdim(args) => cmd_qdim(args),
        Cmd::Report(args) => cmd_report(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::DuplicateEntry(_)
        | Error::DimensionMismatch(_)
        | Error::OutOfRange(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Resolve the symmetry source and backend; numeric backends must pass the
/// genericity check up to the working degree bound before anything runs.
fn resolve(source: &SourceArgs, sites_needed: usize) -> Result<HeckeSymmetry, Error> {
    let backend = match source.backend.as_deref() {
        None => None,
        Some("formal") => Some(QContext::Formal),
        Some(text) => Some(QContext::Numeric(parse_rat(text)?)),
    };
    let mut h = match (&source.builtin, &source.input) {
        (Some(name), None) => {
            let n = parse_builtin(name)?;
            // default backend: formal up to n = 3, numeric q = 3/2 beyond
            // (rational-function entries grow quickly on V^⊗4 for n ≥ 4)
            let ctx = backend.unwrap_or(if n <= 3 {
                QContext::Formal
            } else {
                QContext::numeric_from_parts(3, 2)
            });
            build_uq_sln(n, &ctx)?
        }
        (None, Some(path)) => load_with_backend(path, backend)?,
        _ => {
            return Err(Error::OutOfRange(
                "exactly one of --builtin or --input is required".into(),
            ))
        }
    };
    if let QContext::Numeric(_) = h.ctx() {
        let report = h.ctx().genericity_check(2 * sites_needed.max(12) as u32);
        if !report.ok {
            return Err(Error::NonGenericQ(report.reason.unwrap_or_default()));
        }
    }
    let dim_needed = h.n().checked_pow(sites_needed as u32).unwrap_or(usize::MAX);
    if dim_needed > h.max_dim() {
        h.set_max_dim(dim_needed);
    }
    Ok(h)
}

fn parse_builtin(name: &str) -> Result<usize, Error> {
    let rest = name
        .strip_prefix("uqsln:")
        .ok_or_else(|| Error::Parse(format!("unknown builtin `{name}` (expected `uqsln:N`)")))?;
    rest.parse::<usize>()
        .ok()
        .filter(|n| *n >= 1)
        .ok_or_else(|| Error::Parse(format!("bad builtin dimension in `{name}`")))
}

fn emit<T: Serialize>(source: &SourceArgs, report: &T, text: String) -> Result<(), Error> {
    let body = match source.format {
        Format::Text => text,
        Format::Json => {
            serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?
        }
    };
    match &source.out {
        Some(path) => std::fs::write(path, body + "\n")?,
        None => println!("{body}"),
    }
    Ok(())
}

/// Sites the frame pipeline may touch: rank detection up to `n + 2` levels
/// plus the vanishing check, and the symmetric ladder.
fn source_dimension(source: &SourceArgs) -> Result<usize, Error> {
    match (&source.builtin, &source.input) {
        (Some(name), _) => parse_builtin(name),
        (None, Some(path)) => Ok(load_with_backend(path, None)?.n()),
        _ => Err(Error::OutOfRange(
            "exactly one of --builtin or --input is required".into(),
        )),
    }
}

fn frame_sites_needed(source: &SourceArgs, plus_degree: usize) -> Result<usize, Error> {
    let n = source_dimension(source)?;
    Ok((n + 3).max(plus_degree))
}

fn cmd_validate(args: SourceArgs) -> Result<bool, Error> {
    let mut h = resolve(&args, 3)?;
    let report = h.validate()?;
    let text = output::validation_text(&report);
    emit(&args, &report, text)?;
    Ok(report.all_ok)
}

#[derive(Serialize)]
struct FrameCommandReport {
    validation: ValidationReport,
    frame: Option<FrameReport>,
}

fn cmd_frame(args: FrameArgs) -> Result<bool, Error> {
    let sites = frame_sites_needed(&args.source, args.plus_degree)?;
    let mut h = resolve(&args.source, sites)?;
    let validation = h.validate()?;
    if !validation.all_ok {
        let text = output::validation_text(&validation);
        emit(
            &args.source,
            &FrameCommandReport {
                validation,
                frame: None,
            },
            text,
        )?;
        return Ok(false);
    }
    let rep = LocalRep::new(&h)?;
    let frame = naturality_report(&rep, None, args.plus_degree)?.report();
    let text = format!(
        "{}\n{}",
        output::validation_text(&validation),
        output::frame_text(&frame)
    );
    emit(
        &args.source,
        &FrameCommandReport {
            validation,
            frame: Some(frame),
        },
        text,
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct AmCheckRow {
    lam: Partition,
    mu: Partition,
    ok: bool,
}

#[derive(Serialize)]
struct AmCheckReport {
    rows: Vec<AmCheckRow>,
    all_ok: bool,
}

#[derive(Serialize)]
struct PipelineReport {
    validation: ValidationReport,
    frame: Option<FrameReport>,
    dimensions: Option<DimensionTable>,
    lemma_omega: Option<OmegaReport>,
    am_check: Option<AmCheckReport>,
    tableau_independence: Option<Vec<IndependenceReport>>,
}

impl PipelineReport {
    fn failed(validation: ValidationReport) -> Self {
        PipelineReport {
            validation,
            frame: None,
            dimensions: None,
            lemma_omega: None,
            am_check: None,
            tableau_independence: None,
        }
    }

    fn all_ok(&self) -> bool {
        self.validation.all_ok
            && self.dimensions.as_ref().is_none_or(|t| t.all_agree())
            && self.lemma_omega.as_ref().is_none_or(|o| o.all_ok())
            && self.am_check.as_ref().is_none_or(|a| a.all_ok)
            && self
                .tableau_independence
                .as_ref()
                .is_none_or(|v| v.iter().all(|r| r.ok))
    }

    fn text(&self) -> String {
        let mut text = output::validation_text(&self.validation);
        if let Some(f) = &self.frame {
            text.push('\n');
            text.push_str(&output::frame_text(f));
        }
        if let Some(t) = &self.dimensions {
            text.push('\n');
            text.push_str(&output::dimension_text(t));
        }
        if let Some(o) = &self.lemma_omega {
            text.push('\n');
            text.push_str(&output::omega_text(o));
        }
        if let Some(a) = &self.am_check {
            text.push('\n');
            text.push_str(&output::am_text(
                a.rows.iter().map(|r| (&r.lam, &r.mu, r.ok)),
                a.all_ok,
            ));
        }
        if let Some(ind) = &self.tableau_independence {
            text.push('\n');
            text.push_str(&output::independence_text(ind));
        }
        text
    }
}

fn cmd_qdim(args: QdimArgs) -> Result<bool, Error> {
    let shape_arg = match &args.partition {
        Some(text) => Some(Partition::from_str_list(text)?),
        None => None,
    };
    let upto = args.upto.unwrap_or(3);
    let table_weight = shape_arg.as_ref().map(|s| s.weight()).unwrap_or(upto);
    let sites = frame_sites_needed(&args.source, args.plus_degree)?.max(table_weight as usize);
    let mut h = resolve(&args.source, sites)?;
    let validation = h.validate()?;
    if !validation.all_ok {
        let report = PipelineReport::failed(validation);
        let text = report.text();
        emit(&args.source, &report, text)?;
        return Ok(false);
    }
    let rep = LocalRep::new(&h)?;
    let frame = naturality_report(&rep, None, args.plus_degree)?;
    let tc = TraceContext::from_rep(rep, &frame)?;
    let dimensions = match &shape_arg {
        Some(shape) => tc.dimension_table_for(std::slice::from_ref(shape))?,
        None => tc.dimension_table(upto)?,
    };
    let lemma_omega = if args.lemma_omega {
        Some(tc.lemma_omega_table()?)
    } else {
        None
    };
    let am = if args.am_check {
        Some(am_check(&tc, 4)?)
    } else {
        None
    };
    let report = PipelineReport {
        validation,
        frame: Some(frame.report()),
        dimensions: Some(dimensions),
        lemma_omega,
        am_check: am,
        tableau_independence: None,
    };
    let ok = report.all_ok();
    let text = report.text();
    emit(&args.source, &report, text)?;
    Ok(ok)
}

/// Multiplicativity of the categorical dimension through LR coefficients
/// for all |λ|+|μ| ≤ bound (heights above p drop out as zeros).
fn am_check(tc: &TraceContext<'_>, bound: u32) -> Result<AmCheckReport, Error> {
    let mut rows = Vec::new();
    for m1 in 1..bound {
        for m2 in 1..=(bound - m1) {
            for lam in partitions(m1) {
                for mu in partitions(m2) {
                    let left = tc.qdim(&lam)?.checked_mul(&tc.qdim(&mu)?)?;
                    let mut right = left.zero_like();
                    for (nu, c) in lr_expand(&lam, &mu) {
                        let term = tc.qdim(&nu)?;
                        for _ in 0..c {
                            right = right.checked_add(&term)?;
                        }
                    }
                    rows.push(AmCheckRow {
                        ok: left == right,
                        lam: lam.clone(),
                        mu,
                    });
                }
            }
        }
    }
    let all_ok = rows.iter().all(|r| r.ok);
    Ok(AmCheckReport { rows, all_ok })
}

fn cmd_report(args: ReportArgs) -> Result<bool, Error> {
    let sites = frame_sites_needed(&args.source, args.plus_degree)?
        .max(args.upto as usize)
        .max(4);
    let mut h = resolve(&args.source, sites)?;
    let validation = h.validate()?;
    if !validation.all_ok {
        let report = PipelineReport::failed(validation);
        let text = report.text();
        emit(&args.source, &report, text)?;
        return Ok(false);
    }
    let rep = LocalRep::new(&h)?;
    let frame = naturality_report(&rep, None, args.plus_degree)?;
    let tc = TraceContext::from_rep(rep, &frame)?;
    let dimensions = tc.dimension_table(args.upto)?;
    let lemma_omega = tc.lemma_omega_table()?;
    let am = am_check(&tc, args.upto.min(4))?;
    let mut independence = Vec::new();
    for shape in [
        Partition::new(vec![2, 1]).unwrap(),
        Partition::new(vec![2, 2]).unwrap(),
    ] {
        if shape.height() <= frame.p as usize {
            independence.push(tc.tableau_independence_check(&shape)?);
        }
    }
    let report = PipelineReport {
        validation,
        frame: Some(frame.report()),
        dimensions: Some(dimensions),
        lemma_omega: Some(lemma_omega),
        am_check: Some(am),
        tableau_independence: Some(independence),
    };
    let ok = report.all_ok();
    let text = report.text();
    emit(&args.source, &report, text)?;
    Ok(ok)
}
