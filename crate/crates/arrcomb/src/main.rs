use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use arrcomb_core::arrangement::{build_deformed_braid, build_family, Arrangement, Family};
use arrcomb_core::bijection::{phi, phi_inverse, OrderedPartition};
use arrcomb_core::faces::{face_from_signs, parse_signs};
use arrcomb_core::identities::CheckReport;
use arrcomb_core::poset::build_intersection_poset;
use arrcomb_core::{Error, Face};
use arrcomb::cache::Cache;
use arrcomb::format::{
    arrangement_to_json, describe, face_to_json, faces_to_json, partition_from_json, phi_to_json, polynomial_to_json,
    read_arrangement, reports_to_json, write_table_csv, PhiInput,
};
use arrcomb::verify::{parse_checks, verify_family, verify_random, Session, VerifyOptions};
use arrcomb::{CliError, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

/// Faces, levels and Whitney polynomials of deformed braid arrangements,
/// with exact verification of their counting identities.
#[derive(Debug, Parser)]
#[command(name = "arrcomb", version)]
struct Cli {
    /// Cache directory for face lists and count tables (ARRCOMB_CACHE_DIR wins).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write arrangement JSON for a family, or validate a hand-written file.
    Gen(GenArgs),
    /// List every face with dimension, level, sign vector and witness.
    Faces {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count table f(d, l) and b(d) as CSV.
    Table {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whitney or characteristic polynomial as JSON.
    #[command(group(ArgGroup::new("which").required(true).args(["whitney", "char"])))]
    Poly {
        file: PathBuf,
        #[arg(long)]
        whitney: bool,
        #[arg(long = "char")]
        char: bool,
    },
    /// Run the identity checks and print the report.
    Verify(VerifyArgs),
    /// Apply the level decomposition to a face, or invert it.
    #[command(group(ArgGroup::new("direction").required(true).args(["face", "inverse"])))]
    Bijection {
        file: PathBuf,
        /// Face id as numbered by `faces`.
        #[arg(long)]
        face: Option<usize>,
        /// Partition and parts, inline JSON or a file path.
        #[arg(long)]
        inverse: Option<String>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "spec"])))]
struct GenArgs {
    #[arg(long, value_parser = parse_family, requires = "n")]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    a: i64,
    /// Validate an existing arrangement file and print it in canonical form.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "random"])))]
struct VerifyArgs {
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Number of random deformed braid specs.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    a: i64,
    /// Comma-separated subset of zaslavsky, stirling, expansion, power,
    /// stanley, convolution, levels, bounded, bijection.
    #[arg(long, default_value = "")]
    checks: String,
    /// Truncation order of the series checks.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    trunc: u64,
    /// Also run the convolution and bijection checks above n = 3.
    #[arg(long)]
    deep: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_family(s: &str) -> std::result::Result<Family, Error> {
    Family::from_str(s)
}

enum Outcome {
    Done,
    ChecksFailed { failed: usize, total: usize },
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, text.as_bytes())
}

fn load(file: &Path) -> Result<(Arrangement, String)> {
    let (a, json) = read_arrangement(&fs::read_to_string(file)?)?;
    Ok((a, describe(&json)))
}

fn index_of(faces: &[Face], face: &Face) -> usize {
    faces.iter().position(|f| f.signs() == face.signs()).expect("face belongs to the list") + 1
}

fn run(cli: Cli) -> Result<Outcome> {
    let session = Session::new(Cache::from_env_or(cli.cache_dir));
    match cli.command {
        Command::Gen(args) => {
            let json = match (args.family, args.spec) {
                (Some(family), _) => {
                    let n = args.n.expect("clap requires --n with --family");
                    arrangement_to_json(&build_family(family, n, args.a)?, Some((family, args.a)))
                }
                (None, Some(spec)) => {
                    let (a, json) = read_arrangement(&fs::read_to_string(spec)?)?;
                    let family = match &json.family {
                        Some(f) => Some((Family::from_str(&f.name)?, f.a)),
                        None => None,
                    };
                    arrangement_to_json(&a, family)
                }
                (None, None) => unreachable!("clap requires a source"),
            };
            emit_json(args.out.as_deref(), &json)?;
        }
        Command::Faces { file, out } => {
            let (a, _) = load(&file)?;
            emit_json(out.as_deref(), &faces_to_json(&session.faces(&a)?))?;
        }
        Command::Table { file, out } => {
            let (a, _) = load(&file)?;
            let faces = session.faces(&a)?;
            let mut bytes = Vec::new();
            write_table_csv(&session.table(&a, &faces)?, &mut bytes)?;
            emit(out.as_deref(), &bytes)?;
        }
        Command::Poly { file, whitney, .. } => {
            let (a, _) = load(&file)?;
            let poset = build_intersection_poset(&a);
            let p = if whitney { poset.whitney_polynomial() } else { poset.characteristic_polynomial() };
            emit_json(None, &polynomial_to_json(&p))?;
        }
        Command::Verify(args) => {
            let options = VerifyOptions {
                checks: parse_checks(&args.checks)?,
                truncation: args.trunc as usize,
                deep: args.deep,
            };
            let reports: Vec<CheckReport> = match (args.family, args.random) {
                (Some(family), _) => verify_family(&session, family, args.n_max, args.a, &options)?,
                (None, Some(k)) => verify_random(&session, k, args.n_max, args.seed, &options)?,
                (None, None) => unreachable!("clap requires a source"),
            };
            emit_json(args.out.as_deref(), &reports_to_json(&reports))?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Ok(Outcome::ChecksFailed { failed, total: reports.len() });
            }
        }
        Command::Bijection { file, face, inverse } => {
            let (a, _) = load(&file)?;
            let spec = a.deformed_braid_spec().ok_or(Error::NotDeformedBraid)?.clone();
            let faces = session.faces(&a)?;
            if let Some(id) = face {
                let face = id
                    .checked_sub(1)
                    .and_then(|k| faces.get(k))
                    .ok_or_else(|| CliError::Format(format!("no face with id {id}")))?;
                let image = phi(&spec, face)?;
                let mut ids = Vec::new();
                for (block, part) in image.partition.blocks().iter().zip(&image.parts) {
                    let sub = session.faces(&build_deformed_braid(&spec.induced(block)?))?;
                    ids.push(index_of(&sub, part));
                }
                emit_json(None, &phi_to_json(&image, &ids))?;
            } else if let Some(source) = inverse {
                let text = if source.trim_start().starts_with('{') { source } else { fs::read_to_string(source)? };
                let input: PhiInput = serde_json::from_str(&text)?;
                let partition = OrderedPartition::new(spec.n(), partition_from_json(&input.partition)?)?;
                if input.parts.len() != partition.len() {
                    return Err(CliError::Format(format!(
                        "{} blocks but {} parts",
                        partition.len(),
                        input.parts.len()
                    )));
                }
                let mut parts = Vec::new();
                for (block, part) in partition.blocks().iter().zip(&input.parts) {
                    let signs = parse_signs(&part.sign)
                        .ok_or_else(|| CliError::Format(format!("bad sign vector {:?}", part.sign)))?;
                    parts.push(face_from_signs(&build_deformed_braid(&spec.induced(block)?), &signs)?);
                }
                let face = phi_inverse(&spec, &partition, &parts)?;
                emit_json(None, &face_to_json(index_of(&faces, &face), &face))?;
            }
        }
    }
    Ok(Outcome::Done)
}

fn report_error(kind: &str, message: String) {
    let body = json!({ "error": kind, "message": message });
    let _ = writeln!(io::stderr().lock(), "{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            report_error("usage", e.to_string());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed { failed, total }) => {
            let body = json!({ "error": "check_failed", "failed": failed, "total": total });
            let _ = writeln!(io::stderr().lock(), "{body}");
            ExitCode::from(1)
        }
        Err(e) => {
            report_error(e.kind(), e.to_string());
            ExitCode::from(2)
        }
    }
}
