//! Command-line front end: build a catalog family (or load an algebra from
//! a structure-constant file), compute the comaximal-graph invariant
//! bundle, compare against the closed-form predictions, and emit text,
//! JSON, and DOT artifacts.
//!
//! Exit status: 0 when every checked invariant matches (conflicts on claim
//! checks are reported but do not fail), 1 on any mismatch or undecided
//! checked invariant, 2 on operational errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use comax::catalog::{FamilyId, ALL_FAMILIES};
use comax::report::{self, Report, RunConfig, RunOutput};
use comax::solve::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(
    name = "comax",
    version,
    about = "Comaximal graphs of small Lie algebras over finite fields",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Verify families over a list of fields and print a summary table.
    Sweep(SweepArgs),
    /// Load an algebra from a structure-constant file and analyze it.
    Load(LoadArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Catalog family to build (e.g. sl2, heisenberg3, case3).
    #[arg(long)]
    family: Option<String>,

    /// Field, as a prime p or a prime power p^k.
    #[arg(long)]
    field: Option<String>,

    /// Family parameter, repeatable: --param key=value.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,

    /// Compare computed invariants against the closed-form predictions.
    #[arg(long)]
    check: bool,

    /// Export the star graph (isolated vertices removed) in the DOT
    /// output instead of the full graph.
    #[arg(long)]
    star: bool,

    /// Restrict the check table to a comma-separated list of invariants.
    #[arg(long, value_name = "NAMES")]
    invariants: Option<String>,

    /// Write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Write a Graphviz DOT rendering to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,

    /// Also write the text report (always printed to stdout) to this path.
    #[arg(long, value_name = "PATH")]
    text: Option<PathBuf>,

    /// Node budget for the exact NP-hard solvers; exhaustion reports
    /// "undecided", never a silent bound.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep every catalog family.
    #[arg(long)]
    all: bool,

    /// Comma-separated family list (alternative to --all).
    #[arg(long, value_name = "IDS", conflicts_with = "all")]
    families: Option<String>,

    /// Comma-separated field list, e.g. 2,3,5 or 2,4,3^2.
    #[arg(long, value_name = "FIELDS", required = true)]
    fields: String,

    /// Write the JSON sweep report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Node budget for the exact NP-hard solvers, per cell.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct LoadArgs {
    /// Structure-constant file (see README for the format).
    #[arg(long)]
    file: PathBuf,

    /// "laws" (default) checks the general structure laws; "none" (or
    /// "off") computes invariants without any verdicts.
    #[arg(long, default_value = "laws", value_name = "MODE")]
    check: String,

    /// Export the star graph in the DOT output instead of the full graph.
    #[arg(long)]
    star: bool,

    /// Write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Write a Graphviz DOT rendering to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,

    /// Also write the text report to this path.
    #[arg(long, value_name = "PATH")]
    text: Option<PathBuf>,

    /// Node budget for the exact NP-hard solvers.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

fn main() -> ExitCode {
    report::init_threads();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Some(Command::Sweep(args)) => run_sweep(args),
        Some(Command::Load(args)) => run_load(args),
        None => run_family(cli.run),
    }
}

fn parse_params(pairs: &[String]) -> Result<BTreeMap<String, String>> {
    let mut params = BTreeMap::new();
    for pair in pairs {
        let Some((key, value)) = pair.split_once('=') else {
            bail!("--param expects key=value, got {pair:?}");
        };
        params.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(params)
}

fn run_family(args: RunArgs) -> Result<u8> {
    let Some(family) = args.family.as_deref() else {
        bail!("--family is required (or use the sweep/load subcommands)");
    };
    let Some(field) = args.field.as_deref() else {
        bail!("--field is required");
    };
    let mut config = RunConfig::new(family, field);
    config.params = parse_params(&args.params)?;
    config.check = args.check;
    config.star_focus = args.star;
    config.budget = args.budget;
    let out = report::run(&config)?;
    finish(
        out,
        args.invariants.as_deref(),
        args.json.as_deref(),
        args.dot.as_deref(),
        args.text.as_deref(),
        args.star,
    )
}

fn run_load(args: LoadArgs) -> Result<u8> {
    let check = match args.check.as_str() {
        "laws" => true,
        "none" | "off" => false,
        other => bail!("--check expects \"laws\" or \"none\", got {other:?}"),
    };
    let text = fs::read_to_string(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))?;
    let algebra = comax::io::parse_algebra(&text)
        .with_context(|| format!("parsing {}", args.file.display()))?;
    let mut config = RunConfig::new("load", &algebra.field().designation());
    config.check = check;
    config.star_focus = args.star;
    config.budget = args.budget;
    let out = report::run_loaded(&algebra, &config)?;
    finish(
        out,
        None,
        args.json.as_deref(),
        args.dot.as_deref(),
        args.text.as_deref(),
        args.star,
    )
}

/// Write the requested artifacts and turn the verification summary into a
/// process exit code.
fn finish(
    out: RunOutput,
    invariants: Option<&str>,
    json: Option<&std::path::Path>,
    dot: Option<&std::path::Path>,
    text_path: Option<&std::path::Path>,
    star: bool,
) -> Result<u8> {
    let mut rep: Report = out.report;
    if let Some(subset) = invariants {
        let keep: Vec<&str> = subset.split(',').map(str::trim).collect();
        for name in &keep {
            if !rep.checks.iter().any(|c| c.invariant == *name) {
                bail!("unknown invariant {name:?} in --invariants (run with --check to see the full table)");
            }
        }
        rep.checks.retain(|c| keep.contains(&c.invariant.as_str()));
        rep.summary = report::summarize(&rep.checks);
    }
    if let Some(path) = json {
        fs::write(path, report::to_json_string(&rep))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = dot {
        let g = if star { &out.star } else { &out.graph };
        fs::write(path, comax::dot::to_dot(g))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let text = report::render_text(&rep);
    print!("{text}");
    if let Some(path) = text_path {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(u8::from(!rep.summary.ok))
}

fn run_sweep(args: SweepArgs) -> Result<u8> {
    let families: Vec<FamilyId> = if args.all {
        ALL_FAMILIES.to_vec()
    } else if let Some(list) = args.families.as_deref() {
        list.split(',')
            .map(|s| FamilyId::parse(s).map_err(anyhow::Error::from))
            .collect::<Result<_>>()?
    } else {
        bail!("sweep needs --all or --families");
    };
    let fields: Vec<String> = args
        .fields
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if fields.is_empty() {
        bail!("--fields needs at least one field");
    }
    let sw = report::sweep(&families, &fields, args.budget);
    if let Some(path) = args.json.as_deref() {
        fs::write(path, report::to_json_string(&sw))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    print!("{}", report::render_sweep_text(&sw));
    Ok(u8::from(!sw.ok))
}
