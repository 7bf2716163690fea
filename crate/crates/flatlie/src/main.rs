//! Command-line front end: reads metric Lie algebras as JSON, runs the
//! exact-arithmetic checks from the library, and prints a JSON report to
//! stdout (one human-readable summary line goes to stderr).
//!
//! Exit codes: 0 — success and every check passed; 1 — a mathematical
//! check or precondition failed; 2 — unreadable input (I/O, JSON syntax,
//! schema, unknown catalog id).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use flatlie::catalog::{self, CatalogError, ParamSpec};
use flatlie::doubleext::{self, ExtensionData};
use flatlie::lie::ClassLabels;
use flatlie::linalg::Rational;
use flatlie::metric::{FlatDiagnostics, GeneralIdentities, MetricLieAlgebra, MetricLieAlgebraJson};
use flatlie::milnor::{self, MilnorData, MilnorVerdict};

#[derive(Parser)]
#[command(
    name = "flatlie",
    version,
    about = "Exact-arithmetic calculator for flat metric Lie algebras",
    long_about = "Levi-Civita products, curvature, structural subalgebras, the \
                  double-extension construction and its inverse, and a verified \
                  catalog of Lorentzian flat Lie algebras with degenerate center. \
                  All arithmetic is over arbitrary-precision rationals; every \
                  check is exact."
)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a metric Lie algebra and run the constructor checks
    /// (antisymmetry, Jacobi, symmetric nondegenerate metric).
    Validate { file: PathBuf },
    /// Full structural report: flatness, signature, center, mean
    /// curvature, distinguished subalgebras, class labels.
    Analyze { file: PathBuf },
    /// Apply the double extension to a flat base algebra; fails with the
    /// list of violated admissibility conditions if the data is bad.
    Extend { base: PathBuf, data: PathBuf },
    /// Invert the double extension on a Lorentzian flat algebra with
    /// nonzero degenerate center.
    Split { file: PathBuf },
    /// Build the Riemannian flat normal form from rotation-speed vectors
    /// ({"p": …, "u_vectors": […]}).
    MilnorBuild { file: PathBuf },
    /// Test Milnor's flatness criterion against actual flatness on a
    /// Riemannian metric Lie algebra.
    MilnorCheck { file: PathBuf },
    /// List the catalog of Lorentzian flat families in dimensions 3-6.
    CatalogList,
    /// Show one catalog entry together with a sample instance.
    CatalogShow { id: String },
    /// Machine-verify catalog entries at sampled parameter values.
    CatalogVerify {
        /// Verify a single entry instead of the whole catalog.
        #[arg(long)]
        id: Option<String>,
        /// Parameter assignments per entry.
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
}

/// A failed run: the exit code tells input problems (2) apart from
/// mathematical failures (1).
enum Failure {
    Input(String),
    Math(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Math(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Math(m) => m,
        }
    }
}

/// A successful run: a JSON report, a one-line summary, and the exit code
/// (verification commands exit 1 when the verdict is negative even though
/// they produced a report).
struct Outcome {
    report: serde_json::Value,
    summary: String,
    code: u8,
}

impl Outcome {
    fn pass(report: impl Serialize, summary: String) -> Result<Outcome, Failure> {
        Ok(Outcome {
            report: to_value(report)?,
            summary,
            code: 0,
        })
    }

    fn verdict(report: impl Serialize, summary: String, ok: bool) -> Result<Outcome, Failure> {
        Ok(Outcome {
            report: to_value(report)?,
            summary,
            code: if ok { 0 } else { 1 },
        })
    }
}

fn to_value(report: impl Serialize) -> Result<serde_json::Value, Failure> {
    serde_json::to_value(report).map_err(|e| Failure::Input(format!("serializing report: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            let mut text = match serde_json::to_string_pretty(&outcome.report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: serializing report: {e}");
                    return ExitCode::from(2);
                }
            };
            text.push('\n');
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            eprintln!("{}", outcome.summary);
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { file } => validate(file),
        Command::Analyze { file } => analyze(file),
        Command::Extend { base, data } => extend(base, data),
        Command::Split { file } => split(file),
        Command::MilnorBuild { file } => milnor_build(file),
        Command::MilnorCheck { file } => milnor_check(file),
        Command::CatalogList => catalog_list(),
        Command::CatalogShow { id } => catalog_show(id),
        Command::CatalogVerify { id, samples } => catalog_verify(id.as_deref(), *samples),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Two-stage parse so malformed JSON is an input error while a
/// well-formed file describing a non-algebra (Jacobi failure, degenerate
/// metric) is a mathematical one.
fn read_metric(path: &Path) -> Result<MetricLieAlgebra, Failure> {
    let text = read_text(path)?;
    let json: MetricLieAlgebraJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    MetricLieAlgebra::try_from(json).map_err(|e| Failure::Math(format!("{}: {e}", path.display())))
}

fn signature_summary(m: &MetricLieAlgebra) -> String {
    let (neg, null, pos) = m.signature();
    format!("({neg}, {null}, {pos})")
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    dim: usize,
    basis: Vec<String>,
    signature: (usize, usize, usize),
    flat: bool,
}

fn validate(file: &Path) -> Result<Outcome, Failure> {
    let m = read_metric(file)?;
    let report = ValidateReport {
        valid: true,
        dim: m.dim(),
        basis: m.algebra().basis_names().to_vec(),
        signature: m.signature(),
        flat: m.is_flat(),
    };
    let summary = format!(
        "valid metric Lie algebra of dimension {}, signature {}, {}",
        m.dim(),
        signature_summary(&m),
        if report.flat { "flat" } else { "not flat" }
    );
    Outcome::pass(report, summary)
}

#[derive(Serialize)]
struct AnalyzeReport {
    dim: usize,
    basis: Vec<String>,
    flat: bool,
    signature: (usize, usize, usize),
    unimodular: bool,
    mean_curvature: Vec<Rational>,
    center: Vec<Vec<Rational>>,
    center_degenerate: bool,
    killing_subalgebra: Vec<Vec<Rational>>,
    class_labels: ClassLabels,
    identities: GeneralIdentities,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<FlatDiagnostics>,
}

fn analyze(file: &Path) -> Result<Outcome, Failure> {
    let m = read_metric(file)?;
    let flat = m.is_flat();
    let diagnostics = if flat {
        Some(
            m.flat_diagnostics()
                .map_err(|e| Failure::Math(e.to_string()))?,
        )
    } else {
        None
    };
    let labels = m.algebra().class_labels();
    let report = AnalyzeReport {
        dim: m.dim(),
        basis: m.algebra().basis_names().to_vec(),
        flat,
        signature: m.signature(),
        unimodular: m.algebra().is_unimodular(),
        mean_curvature: m.mean_curvature(),
        center: m.algebra().center().basis_vectors(),
        center_degenerate: m.center_degenerate(),
        killing_subalgebra: m.killing_subalgebra().basis_vectors(),
        class_labels: labels,
        identities: m.general_identities(),
        diagnostics,
    };
    let summary = format!(
        "dimension {}, signature {}, {}, {}",
        m.dim(),
        signature_summary(&m),
        if flat { "flat" } else { "not flat" },
        if report.unimodular {
            "unimodular"
        } else {
            "not unimodular"
        }
    );
    Outcome::pass(report, summary)
}

fn read_extension_data(path: &Path) -> Result<ExtensionData, Failure> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn extend(base_path: &Path, data_path: &Path) -> Result<Outcome, Failure> {
    let base = read_metric(base_path)?;
    let data = read_extension_data(data_path)?;
    let extended =
        doubleext::extend(&base, &data).map_err(|e| Failure::Math(e.to_string()))?;
    let summary = format!(
        "extended dimension {} to {}: signature {}, {}",
        base.dim(),
        extended.dim(),
        signature_summary(&extended),
        if extended.center_degenerate() {
            "center degenerate"
        } else {
            "center nondegenerate"
        }
    );
    Outcome::pass(extended, summary)
}

fn split(file: &Path) -> Result<Outcome, Failure> {
    let m = read_metric(file)?;
    let result = doubleext::split(&m).map_err(|e| Failure::Math(e.to_string()))?;
    let summary = format!(
        "split dimension {} into a base of dimension {} plus extension data",
        m.dim(),
        result.base.dim()
    );
    Outcome::pass(result, summary)
}

fn milnor_build(file: &Path) -> Result<Outcome, Failure> {
    let text = read_text(file)?;
    let data: MilnorData = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let planes = data.u_vectors.len();
    let m =
        milnor::build_riemannian_flat(&data).map_err(|e| Failure::Math(e.to_string()))?;
    let summary = format!(
        "built flat Riemannian algebra of dimension {} (p = {}, r = {})",
        m.dim(),
        data.p,
        planes
    );
    Outcome::pass(m, summary)
}

#[derive(Serialize)]
struct MilnorCheckReport {
    verdict: MilnorVerdict,
    /// Whether left multiplication acts as the adjoint on the Killing
    /// part and as zero on the derived part; only defined on flat input.
    #[serde(skip_serializing_if = "Option::is_none")]
    left_multiplication_collapse: Option<bool>,
}

fn milnor_check(file: &Path) -> Result<Outcome, Failure> {
    let m = read_metric(file)?;
    let verdict = milnor::milnor_check(&m).map_err(|e| Failure::Math(e.to_string()))?;
    let collapse = if verdict.flat {
        Some(milnor::left_mult_collapse_check(&m).map_err(|e| Failure::Math(e.to_string()))?)
    } else {
        None
    };
    let ok = verdict.matches && collapse.unwrap_or(true);
    let summary = format!(
        "{}; criterion {} flatness",
        if verdict.flat { "flat" } else { "not flat" },
        if verdict.matches {
            "agrees with"
        } else {
            "CONTRADICTS"
        }
    );
    Outcome::verdict(
        MilnorCheckReport {
            verdict,
            left_multiplication_collapse: collapse,
        },
        summary,
        ok,
    )
}

#[derive(Serialize)]
struct EntryRow {
    id: &'static str,
    dim: usize,
    label: String,
    params: Vec<ParamSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

fn entry_row(entry: &catalog::CatalogEntry) -> EntryRow {
    EntryRow {
        id: entry.id,
        dim: entry.dim,
        label: entry.label.to_string(),
        params: entry.params.to_vec(),
        note: entry.note,
    }
}

fn catalog_list() -> Result<Outcome, Failure> {
    let rows: Vec<EntryRow> = catalog::ENTRIES.iter().map(entry_row).collect();
    let summary = format!("{} catalog entries, dimensions 3-6", rows.len());
    Outcome::pass(rows, summary)
}

fn catalog_failure(e: CatalogError) -> Failure {
    match e {
        CatalogError::UnknownEntry(_) => Failure::Input(e.to_string()),
        _ => Failure::Math(e.to_string()),
    }
}

#[derive(Serialize)]
struct EntryDetail {
    #[serde(flatten)]
    row: EntryRow,
    sample_params: catalog::ParamMap,
    sample_instance: MetricLieAlgebra,
}

fn catalog_show(id: &str) -> Result<Outcome, Failure> {
    let entry = catalog::find(id).map_err(catalog_failure)?;
    let params = entry.samples(1).remove(0);
    let instance = entry.build(&params).map_err(catalog_failure)?;
    let summary = format!(
        "{}: dimension {}, {}",
        entry.id, entry.dim, entry.label
    );
    Outcome::pass(
        EntryDetail {
            row: entry_row(entry),
            sample_params: params,
            sample_instance: instance,
        },
        summary,
    )
}

fn catalog_verify(id: Option<&str>, samples: usize) -> Result<Outcome, Failure> {
    match id {
        Some(id) => {
            let entry = catalog::find(id).map_err(catalog_failure)?;
            let report = catalog::verify_entry(entry, samples);
            let ok = report.passed;
            let summary = format!(
                "{}: {} on {} samples",
                report.id,
                if ok { "verified" } else { "FAILED" },
                samples
            );
            Outcome::verdict(report, summary, ok)
        }
        None => {
            let report = catalog::verify_all(samples);
            let ok = report.all_passed;
            let summary = format!(
                "{}/{} entries verified, {} samples each",
                report.passed, report.total, samples
            );
            Outcome::verdict(report, summary, ok)
        }
    }
}
