use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use springer_dual::az::{az_dual, UnipotentParam};
use springer_dual::duality::{max_marked, min_marked};
use springer_dual::exceptional::{self, ExcGroup, TSV_HEADER};
use springer_dual::greens::verify::{p_at_one_tsv, solve_all, verify_type_a};
use springer_dual::greens::verify_theorems;
use springer_dual::orbits::{enumerate, parse_value_signs};
use springer_dual::symbols::{gsc_forward, gsc_inverse};
use springer_dual::{Bipartition, Degenerate, FamilyKey, GroupKind, MarkedPartition, Partition};

mod render;

use render::{DualOut, GscOut, TableRow};

#[derive(Parser, Debug)]
#[command(name = "springer-dual", version, about = "Generalized Springer correspondence and dual orbits for Sp and SO")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for `table` and `verify`.
    #[arg(long, global = true, env = "SPRINGER_DUAL_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Family and bipartition of a marked partition, or the inverse with --alpha/--beta.
    Gsc(GscArgs),
    /// The closure-maximal constituent.
    Max(OrbitArgs),
    /// The sign-twisted minimal constituent.
    Min(OrbitArgs),
    /// Orbit of the dual of the tempered parameter.
    Dual(OrbitArgs),
    /// Orbit of the Aubert–Zelevinsky dual for SO(2n+1).
    Az(AzArgs),
    /// Look up a row of the exceptional tables, or list a whole group.
    Exceptional(ExcArgs),
    /// Every marked partition up to a size with its image and dual.
    Table(TableArgs),
    /// Certify the max/min algorithms against the Green-function oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct OrbitArgs {
    #[arg(long)]
    group: Option<GroupKind>,
    /// Parts, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Partition>,
    /// Signs by part value, e.g. `2=+1,4=-1`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    eps: String,
    /// Tag of an SO orbit with only even parts.
    #[arg(long, allow_hyphen_values = true)]
    degenerate: Option<Degenerate>,
    /// A marked partition as inline JSON or a path to a JSON file.
    #[arg(long, conflicts_with_all = ["group", "lambda"])]
    input: Option<String>,
}

#[derive(Args, Debug)]
struct GscArgs {
    #[command(flatten)]
    orbit: OrbitArgs,
    /// Inverse direction: family size (2n or N).
    #[arg(long)]
    size: Option<u32>,
    #[arg(long)]
    defect: Option<u32>,
    #[arg(long)]
    alpha: Option<Partition>,
    #[arg(long)]
    beta: Option<Partition>,
    /// Split index 1 or 2 for equal halves in an unordered family.
    #[arg(long)]
    split: Option<u8>,
}

#[derive(Args, Debug)]
struct AzArgs {
    /// Parameter as inline JSON or a JSON file.
    #[arg(long)]
    input: Option<String>,
    /// GL block sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    gl: Vec<u32>,
    #[arg(long, default_value = "")]
    plus_lambda: Partition,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    plus_eps: String,
    #[arg(long, default_value = "")]
    minus_lambda: Partition,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    minus_eps: String,
    /// Rank n of SO(2n+1); defaults to the sum of the blocks.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args, Debug)]
struct ExcArgs {
    group: ExcGroup,
    orbit: Option<String>,
    eps: Option<String>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    group: GroupKind,
    #[arg(long, default_value_t = 8)]
    max_size: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyGroup {
    #[value(alias = "sp", alias = "C")]
    Sp,
    #[value(alias = "so", alias = "B", alias = "D")]
    SO,
    #[value(alias = "a", alias = "GL")]
    A,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, ignore_case = true)]
    group: VerifyGroup,
    #[arg(long, default_value_t = 8)]
    max_size: u32,
    /// Leave timing fields out of the report so repeated runs are identical.
    #[arg(long)]
    no_timing: bool,
}

/// Failure classes with distinct exit codes.
enum Outcome {
    Ok(String),
    VerificationFailed(String),
}

fn read_json_arg(s: &str) -> Result<String> {
    if s.trim_start().starts_with('{') {
        Ok(s.to_string())
    } else {
        fs::read_to_string(s).with_context(|| format!("reading {s}"))
    }
}

fn orbit_from(args: &OrbitArgs) -> Result<MarkedPartition> {
    if let Some(input) = &args.input {
        return serde_json::from_str(&read_json_arg(input)?).context("parsing marked partition JSON");
    }
    let (Some(group), Some(lambda)) = (args.group, args.lambda.clone()) else {
        bail!("either --input or both --group and --lambda are required");
    };
    let eps = parse_value_signs(&args.eps)?;
    Ok(MarkedPartition::new(group, lambda, eps, args.degenerate)?)
}

fn emit<T: Serialize>(format: Format, value: &T, tsv: impl FnOnce() -> String, pretty: impl FnOnce() -> String) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string(value)? + "\n",
        Format::Tsv => tsv(),
        Format::Pretty => pretty(),
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let format = if cli.json { Format::Json } else { cli.format };
    let text = match &cli.command {
        Command::Gsc(a) => {
            let out = if a.alpha.is_some() || a.beta.is_some() {
                let (Some(group), Some(size), Some(defect)) = (a.orbit.group, a.size, a.defect) else {
                    bail!("the inverse direction needs --group, --size and --defect");
                };
                let key = FamilyKey::new(group, size, defect)?;
                let bip = Bipartition {
                    alpha: a.alpha.clone().unwrap_or_default(),
                    beta: a.beta.clone().unwrap_or_default(),
                    split: a.split,
                };
                let orbit = gsc_inverse(&key, &bip)?;
                GscOut::new(orbit, key, bip)
            } else {
                let orbit = orbit_from(&a.orbit)?;
                let (key, bip) = gsc_forward(&orbit)?;
                GscOut::new(orbit, key, bip)
            };
            emit(format, &out, || out.tsv(), || out.pretty())?
        }
        Command::Max(a) | Command::Min(a) => {
            let m = orbit_from(a)?;
            let r = if matches!(cli.command, Command::Max(_)) { max_marked(&m)? } else { min_marked(&m)? };
            emit(format, &r, || render::orbit_tsv(&r), || format!("{m} -> {r}\n"))?
        }
        Command::Dual(a) => {
            let m = orbit_from(a)?;
            let d = DualOut::new(&m)?;
            emit(format, &d, || d.tsv(), || format!("{m} -> {}\n", d.orbit))?
        }
        Command::Az(a) => {
            let p: UnipotentParam = match &a.input {
                Some(input) => serde_json::from_str(&read_json_arg(input)?).context("parsing parameter JSON")?,
                None => {
                    let plus = MarkedPartition::sp(a.plus_lambda.clone(), parse_value_signs(&a.plus_eps)?)?;
                    let minus = MarkedPartition::sp(a.minus_lambda.clone(), parse_value_signs(&a.minus_eps)?)?;
                    let n = a.n.unwrap_or(a.gl.iter().sum::<u32>() + (plus.size() + minus.size()) / 2);
                    UnipotentParam::new(a.gl.clone(), plus, minus, n)?
                }
            };
            let d = az_dual(&p)?;
            emit(format, &d, || render::az_tsv(&d), || render::az_pretty(&d))?
        }
        Command::Exceptional(a) => match (&a.orbit, &a.eps) {
            (Some(o), Some(e)) => {
                let r = exceptional::lookup(a.group, o, e)?;
                emit(format, r, || format!("{TSV_HEADER}\n{}\n", r.to_tsv()), || {
                    format!("{} {} {} -> {} {} {}\n", r.group, r.orbit, r.eps, r.dual_orbit, r.dual_a_group, r.dual_eps)
                })?
            }
            (None, None) => {
                let rows = exceptional::enumerate_group(a.group);
                emit(
                    format,
                    &rows,
                    || std::iter::once(TSV_HEADER.to_string()).chain(rows.iter().map(|r| r.to_tsv())).collect::<Vec<_>>().join("\n") + "\n",
                    || rows.iter().map(|r| format!("{:<16} {:<14} -> {:<14} {}\n", r.orbit, r.eps, r.dual_orbit, r.dual_eps)).collect(),
                )?
            }
            _ => bail!("give both an orbit and a character, or neither"),
        },
        Command::Table(a) => {
            let inputs: Vec<MarkedPartition> = (0..=a.max_size).flat_map(|s| enumerate(a.group, s)).collect();
            let rows = inputs.par_iter().map(TableRow::new).collect::<Result<Vec<_>, _>>()?;
            emit(format, &rows, || render::table_tsv(&rows), || render::table_pretty(&rows))?
        }
        Command::Verify(a) => return verify(a, format),
    };
    Ok(Outcome::Ok(text))
}

fn verify(a: &VerifyArgs, format: Format) -> Result<Outcome> {
    if a.group == VerifyGroup::A {
        let reports = verify_type_a(a.max_size)?;
        let ok = reports.iter().all(|r| r.certificate.ok() && r.one_row_max);
        let text = emit(format, &reports, || render::type_a_tsv(&reports), || render::type_a_pretty(&reports))?;
        return Ok(if ok { Outcome::Ok(text) } else { Outcome::VerificationFailed(text) });
    }
    let group = if a.group == VerifyGroup::Sp { GroupKind::Sp } else { GroupKind::SO };
    let mut report = verify_theorems(group, a.max_size)?;
    if a.no_timing {
        report.elapsed_ms = 0;
        report.families.iter_mut().for_each(|f| f.elapsed_ms = 0);
    }
    let summary = render::VerifySummary::new(&report, !a.no_timing);
    let text = match format {
        Format::Json => serde_json::to_string(&summary)? + "\n",
        Format::Pretty => render::verify_pretty(&report),
        Format::Tsv => {
            let sols = solve_all(group, a.max_size)?;
            sols.iter().map(|(k, (s, _))| format!("# {k}\n{}", p_at_one_tsv(s))).collect()
        }
    };
    Ok(if report.all_pass() { Outcome::Ok(text) } else { Outcome::VerificationFailed(text) })
}

fn write_out(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match run(&cli).and_then(|o| {
        let (text, code) = match o {
            Outcome::Ok(t) => (t, 0),
            Outcome::VerificationFailed(t) => (t, 2),
        };
        write_out(&cli, &text)?;
        Ok(code)
    }) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
