//! Command-line front end: generate the exact constructions as matrix files,
//! verify files against the SIC, MUB, MUS and incidence conditions, run the
//! fiducial search and check the incidence configurations.
//!
//! Exit codes: 0 when the check passes, 1 when it fails, 2 for usage,
//! input or parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use sicmub_core::bases::{check_mub_set, is_prime, mub_four, mub_prime, mus_check_labelled, BasisLabel, BasisSet};
use sicmub_core::format::{to_json_string, MatrixFile, MatrixKind};
use sicmub_core::geometry::{
    hesse::{inflection_labels, inflection_triangles, TRIANGLE_LABELS},
    hesse_configuration, inflection_points,
    kummer::kummer_reference_plane,
    kummer_configuration, segre_configuration, segre_intersection_check, segre_sharing_check, segre_signature,
    IncidenceStructure, Pairing, Signature, HESSE_SIGNATURE, KUMMER_SIGNATURE,
};
use sicmub_core::linalg::orthonormality_defect;
use sicmub_core::optimizer::{search, verify_fiducial, SearchConfig, Symmetry};
use sicmub_core::sic::{eddington_mus16, equiangular_2n, sic_d3, sic_d4, sic_defect_vectors};
use sicmub_core::{ComplexVector, Tolerance, VerificationReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sicmub_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "sicmub", version, about = "SIC, MUB and Heisenberg-group constructions and checks")]
pub struct Cli {
    /// Print reports as JSON on stdout instead of a one-line summary.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an exact construction as a matrix file.
    Gen(GenArgs),
    /// Check a matrix file and emit a report.
    Verify(VerifyArgs),
    /// Search numerically for a SIC fiducial.
    Search(SearchArgs),
    /// Check one of the incidence configurations.
    Geometry(GeometryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Mub,
    Sic,
    Equiangular,
    Eddington,
    Inflection,
    Triangles,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Dimension of the Hilbert space.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Sic,
    Mub,
    Mus,
    Incidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    Hermitian,
    Bilinear,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub kind: VerifyKind,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Block vectors for `incidence`.
    #[arg(long)]
    pub blocks: Option<PathBuf>,
    /// Expected configuration symbol `points,degree,blocks,size` for `incidence`.
    #[arg(long)]
    pub signature: Option<String>,
    #[arg(long, value_enum, default_value_t = PairingArg::Hermitian)]
    pub pairing: PairingArg,
    /// Also write the report to this path.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    None,
    ZaunerSubspace,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = SymmetryArg::None)]
    pub symmetry: SymmetryArg,
    /// Write the best fiducial here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryKind {
    Hesse,
    Segre,
    Kummer,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    #[arg(value_enum)]
    pub kind: GeometryKind,
    /// Odd prime dimension, for `segre`.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// What a command printed and whether its check passed.
#[derive(Debug)]
pub struct Outcome {
    pub pass: bool,
    pub stdout: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Gen(args) => gen(args),
        Command::Verify(args) => finish(verify(args)?, args.report.as_deref(), cli.json),
        Command::Search(args) => {
            let report = run_search(args)?;
            finish(report, args.report.as_deref(), cli.json)
        }
        Command::Geometry(args) => finish(geometry(args)?, args.report.as_deref(), cli.json),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn finish(report: VerificationReport, path: Option<&Path>, json: bool) -> CliResult<Outcome> {
    let text = to_json_string(&report);
    if let Some(path) = path {
        write_file(path, &text)?;
    }
    let stdout = if json {
        text
    } else {
        format!(
            "{} {}: max_deviation = {:e} (tolerance {:e})\n",
            if report.pass { "PASS" } else { "FAIL" },
            report.check,
            report.max_deviation,
            report.tolerance
        )
    };
    Ok(Outcome { pass: report.pass, stdout })
}

fn fixed_dim(kind: &str, requested: Option<usize>, only: usize) -> CliResult<usize> {
    match requested {
        None => Ok(only),
        Some(d) if d == only => Ok(d),
        Some(d) => Err(CliError::Usage(format!("gen {kind} is only available for dim {only}, not {d}"))),
    }
}

fn need_dim(kind: &str, requested: Option<usize>) -> CliResult<usize> {
    requested.ok_or_else(|| CliError::Usage(format!("{kind} requires --dim")))
}

/// Complete MUB set for an odd prime or 4.
fn mub_for(dim: usize) -> CliResult<BasisSet> {
    if dim == 4 {
        Ok(mub_four())
    } else if dim % 2 == 1 && is_prime(dim) {
        Ok(mub_prime(dim)?)
    } else {
        Err(CliError::Usage(format!("complete MUB sets are available for odd primes and 4, not {dim}")))
    }
}

pub fn gen_file(kind: GenKind, dim: Option<usize>) -> CliResult<MatrixFile> {
    Ok(match kind {
        GenKind::Mub => MatrixFile::from_bases(&mub_for(need_dim("gen mub", dim)?)?),
        GenKind::Sic => match need_dim("gen sic", dim)? {
            3 => MatrixFile::from_vectors(3, sic_d3().vectors()).with_labels(inflection_labels()),
            4 => MatrixFile::from_vectors(4, sic_d4().vectors()).with_formula("x = sqrt(2 + sqrt(5))"),
            d => {
                return Err(CliError::Usage(format!("exact SICs are shipped for dim 3 and 4, not {d}; use search")))
            }
        },
        GenKind::Equiangular => {
            let n = need_dim("gen equiangular", dim)?;
            let set = equiangular_2n(n)?;
            MatrixFile::from_vectors(n, set.vectors())
                .with_formula(format!("N = {}: (sqrt(N), 0, ..), then (1, sqrt(2) q^(k r^2)) for k in 0..N", 2 * n - 1))
        }
        GenKind::Eddington => {
            let d = fixed_dim("eddington", dim, 4)?;
            MatrixFile::from_vectors(d, &eddington_mus16())
                .with_formula("x = sqrt(2 + sqrt(5)), alpha = exp(i a), cos a = (sqrt(5) - 1) / (2 x)")
        }
        GenKind::Inflection => {
            let d = fixed_dim("inflection", dim, 3)?;
            MatrixFile::from_vectors(d, &inflection_points()).with_labels(inflection_labels())
        }
        GenKind::Triangles => {
            let d = fixed_dim("triangles", dim, 3)?;
            let vectors: Vec<ComplexVector> = inflection_triangles().into_iter().flatten().collect();
            MatrixFile { kind: MatrixKind::Bases, ..MatrixFile::from_vectors(d, &vectors) }
                .with_labels(TRIANGLE_LABELS.iter().map(ToString::to_string).collect())
                .with_formula("q = exp(2 pi i / 3)")
        }
    })
}

fn gen(args: &GenArgs) -> CliResult<Outcome> {
    let text = gen_file(args.kind, args.dim)?.to_json();
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome { pass: true, stdout: String::new() })
        }
        None => Ok(Outcome { pass: true, stdout: text }),
    }
}

pub fn read_matrix_file(path: &Path) -> CliResult<MatrixFile> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    MatrixFile::parse(&text).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })
}

fn tolerance(tol: f64) -> CliResult<Tolerance> {
    if !tol.is_finite() {
        return Err(CliError::Usage(format!("tolerance {tol} must be finite")));
    }
    Ok(Tolerance::new(tol)?)
}

fn parse_signature(text: &str) -> CliResult<Signature> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("bad --signature {text:?}: {e}")))?;
    match parts.as_slice() {
        [p, a, b, c] => Ok(Signature::new(*p, *a, *b, *c)),
        _ => Err(CliError::Usage(format!("--signature needs four numbers p,a,b,c, got {text:?}"))),
    }
}

fn normalize_all(vectors: &[ComplexVector]) -> CliResult<Vec<ComplexVector>> {
    Ok(vectors.iter().map(ComplexVector::normalized).collect::<Result<Vec<_>, _>>()?)
}

pub fn verify(args: &VerifyArgs) -> CliResult<VerificationReport> {
    let tol = tolerance(args.tol)?;
    let file = read_matrix_file(&args.input)?;
    let dim = file.dim;
    match args.kind {
        VerifyKind::Sic => {
            if file.data.len() != dim * dim {
                return Err(CliError::Usage(format!(
                    "a SIC in dim {dim} has {} vectors, the file has {}",
                    dim * dim,
                    file.data.len()
                )));
            }
            let defect = sic_defect_vectors(&file.vectors())?;
            Ok(VerificationReport::new("sic", 1.0 / (dim + 1) as f64, defect, tol)
                .with_detail(json!({"dim": dim, "vectors": file.data.len()})))
        }
        VerifyKind::Mub => {
            let bases = file
                .bases()
                .map_err(|e| CliError::Parse { path: args.input.clone(), message: e.to_string() })?;
            let bases = bases.iter().map(|b| normalize_all(b)).collect::<CliResult<Vec<_>>>()?;
            let labels: Vec<BasisLabel> = match &file.labels {
                Some(l) if l.len() == bases.len() => l.iter().map(|s| BasisLabel::Named(s.clone())).collect(),
                _ => (0..bases.len()).map(BasisLabel::Index).collect(),
            };
            let worst_basis =
                bases.iter().map(|b| orthonormality_defect(b)).collect::<Result<Vec<_>, _>>()?.into_iter().fold(0.0, f64::max);
            if worst_basis > tol.eps().max(1e-8) {
                return Ok(VerificationReport::new("mub", 1.0 / dim as f64, worst_basis, tol)
                    .with_detail(json!({"error": "input bases are not orthonormal"})));
            }
            let set = BasisSet::new(dim, bases, labels, Tolerance::new(1e-8)?)?;
            Ok(check_mub_set(&set, tol)?)
        }
        VerifyKind::Mus => {
            let set = mub_for(dim)?;
            let vectors = normalize_all(&file.vectors())?;
            let labels = file.labels.clone().filter(|l| l.len() == vectors.len());
            let parts = vectors
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let id = labels.as_ref().map_or_else(|| format!("v{k}"), |l| l[k].clone());
                    Ok(mus_check_labelled(&id, v, &set, tol)?.to_report())
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(VerificationReport::combine("mus", 2.0 / (dim + 1) as f64, tol, parts))
        }
        VerifyKind::Incidence => {
            let blocks_path =
                args.blocks.as_ref().ok_or_else(|| CliError::Usage("verify incidence requires --blocks".into()))?;
            let signature = parse_signature(
                args.signature.as_deref().ok_or_else(|| CliError::Usage("verify incidence requires --signature".into()))?,
            )?;
            let blocks_file = read_matrix_file(blocks_path)?;
            if blocks_file.dim != dim {
                return Err(CliError::Usage(format!("points have dim {dim}, blocks have dim {}", blocks_file.dim)));
            }
            let points = file.vectors();
            let blocks = blocks_file.vectors();
            let labels = |file: &MatrixFile, n: usize, prefix: &str| {
                file.labels.clone().filter(|l| l.len() == n).unwrap_or_else(|| (0..n).map(|k| format!("{prefix}{k}")).collect())
            };
            let pairing = match args.pairing {
                PairingArg::Hermitian => Pairing::Hermitian,
                PairingArg::Bilinear => Pairing::Bilinear,
            };
            let structure = IncidenceStructure::from_hyperplanes(
                "input",
                &points,
                &blocks,
                pairing,
                labels(&file, points.len(), "p"),
                labels(&blocks_file, blocks.len(), "b"),
            )?;
            Ok(structure.check_signature(signature))
        }
    }
}

pub fn run_search(args: &SearchArgs) -> CliResult<VerificationReport> {
    let tol = tolerance(args.tol)?;
    let config = SearchConfig {
        dim: args.dim,
        restarts: args.restarts,
        max_iter: args.max_iter,
        seed: args.seed,
        tolerance: args.tol,
        symmetry: match args.symmetry {
            SymmetryArg::None => Symmetry::None,
            SymmetryArg::ZaunerSubspace => Symmetry::ZaunerSubspace,
        },
    };
    let result = search(&config)?;
    if let Some(path) = &args.out {
        let file = MatrixFile::from_vectors(result.dim, std::slice::from_ref(&result.fiducial));
        write_file(path, &file.to_json())?;
    }
    let mut report = VerificationReport::new("search", 0.0, result.defect, tol)
        .with_detail(serde_json::to_value(&config).expect("config serializes"))
        .with_detail(serde_json::to_value(&result).expect("result serializes"));
    if result.converged {
        report = report.with_detail(
            serde_json::to_value(verify_fiducial(&result.fiducial, Tolerance::new(args.tol.max(1e-8))?)?)
                .expect("report serializes"),
        );
    }
    report.pass = result.converged;
    Ok(report)
}

pub fn geometry(args: &GeometryArgs) -> CliResult<VerificationReport> {
    Ok(match args.kind {
        GeometryKind::Hesse => {
            if args.dim.is_some_and(|d| d != 3) {
                return Err(CliError::Usage("the Hesse configuration lives in dim 3".into()));
            }
            hesse_configuration().check_signature(HESSE_SIGNATURE)
        }
        GeometryKind::Kummer => {
            if args.dim.is_some_and(|d| d != 4) {
                return Err(CliError::Usage("the Kummer configuration lives in dim 4".into()));
            }
            let r0 = kummer_reference_plane();
            let on_plane: Vec<usize> = eddington_mus16()
                .iter()
                .enumerate()
                .filter(|(_, p)| r0.bilinear(p).is_ok_and(|z| z.norm() < 1e-10))
                .map(|(k, _)| k)
                .collect();
            kummer_configuration().check_signature(KUMMER_SIGNATURE).with_detail(json!({"on_reference_plane": on_plane}))
        }
        GeometryKind::Segre => {
            let dim = need_dim("geometry segre", args.dim)?;
            let structure = segre_configuration(dim)?;
            let tol = Tolerance::new(1e-8)?;
            let parts = vec![
                structure.check_signature(segre_signature(dim)),
                segre_sharing_check(&structure, dim),
                segre_intersection_check(dim, tol)?,
            ];
            VerificationReport::combine(format!("incidence:segre-{dim}"), 0.0, tol, parts)
        }
    })
}
