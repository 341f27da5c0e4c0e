//! dancekit command line: feasibility checks, exact minima, schedules,
//! census reports and format conversion.
//!
//! Exit codes: 0 success/feasible, 1 domain-negative (infeasible cuts,
//! link closures, census check failures), 2 usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dancekit::braid::braid_closure;
use dancekit::census::{self, CensusOptions};
use dancekit::choreography::{
    braid_schedule, render_schedule, schedule_from_cuts, DanceSchedule, RenderFormat,
    ScheduleContext,
};
use dancekit::codecs::{
    parse_braid, parse_gauss, parse_pd, serialize_gauss, serialize_pd, SCHEMA_VERSION,
};
use dancekit::diagram::{GaussSequence, PdCode};
use dancekit::engine::{is_feasible, min_dancers, CutSet, Feasibility, MinDancers, Orientation};
use dancekit::error::ChoreoError;

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "dancekit",
    about = "Knot-diagram danceability: feasibility, exact minima, schedules, census",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility of a cut set on a diagram.
    Check(CheckArgs),
    /// Compute the exact minimal dancer count of a diagram.
    Min(MinArgs),
    /// Build and render a dance schedule.
    Schedule(ScheduleArgs),
    /// Run the census analysis and write reports.
    Census(CensusArgs),
    /// Convert between diagram formats.
    Convert(ConvertArgs),
}

#[derive(Args, Clone)]
#[command(group(ArgGroup::new("input").required(true).args(["gauss", "pd", "braid"])))]
struct InputArgs {
    /// Gauss sequence, e.g. "O1U2O3U1O2U3"
    #[arg(long)]
    gauss: Option<String>,
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    #[arg(long)]
    pd: Option<String>,
    /// Braid word, e.g. "n=2; 1 1 1" (the closure diagram is used)
    #[arg(long)]
    braid: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScheduleFormat {
    Text,
    Svg,
    Json,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Cut set as "<F|R>:g1,g2,...", e.g. "F:0,3"
    #[arg(long)]
    cuts: String,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct MinArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Use the independent naive enumerator instead of the production search.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct ScheduleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Cut set as "<F|R>:g1,g2,..."
    #[arg(long, conflicts_with = "theorem3")]
    cuts: Option<String>,
    /// Use the strand-per-dancer construction (braid input only).
    #[arg(long)]
    theorem3: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: ScheduleFormat,
}

#[derive(Args)]
struct CensusArgs {
    /// Census CSV; defaults to $DANCEKIT_CENSUS or the bundled table.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Abort on the first malformed row instead of skipping it.
    #[arg(long)]
    strict: bool,
    /// Directory for dance_report.json / dance_report.csv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker count for row analysis.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    Gauss,
    Pd,
}

#[derive(Args)]
struct ConvertArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "gauss")]
    to: ConvertTarget,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

/// A failure with a chosen exit code; printed to stderr.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn negative(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_NEGATIVE,
        message: message.into(),
    }
}

fn parse_input(input: &InputArgs) -> Result<GaussSequence, Failure> {
    if let Some(text) = &input.gauss {
        return parse_gauss(text).map_err(|e| usage(format!("invalid --gauss: {e}")));
    }
    if let Some(text) = &input.pd {
        let pd = parse_pd(text).map_err(|e| usage(format!("invalid --pd: {e}")))?;
        return pd
            .to_gauss()
            .map_err(|e| usage(format!("invalid --pd: {e}")));
    }
    let text = input.braid.as_ref().expect("clap group guarantees input");
    let braid = parse_braid(text).map_err(|e| usage(format!("invalid --braid: {e}")))?;
    braid_closure(&braid).map_err(|e| negative(format!("--braid: {e}")))
}

fn parse_cuts(text: &str) -> Result<CutSet, Failure> {
    let (orient, gaps) = text
        .split_once(':')
        .ok_or_else(|| usage("cuts must look like \"F:0,3\""))?;
    let orientation = match orient.trim() {
        "F" | "f" | "forward" | "Forward" => Orientation::Forward,
        "R" | "r" | "reverse" | "Reverse" => Orientation::Reverse,
        other => return Err(usage(format!("unknown orientation {other:?}"))),
    };
    let mut parsed = Vec::new();
    for tok in gaps.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        parsed.push(
            tok.parse::<usize>()
                .map_err(|_| usage(format!("bad gap {tok:?}")))?,
        );
    }
    CutSet::new(orientation, parsed).map_err(|e| usage(format!("invalid cuts: {e}")))
}

fn event_names(seq: &GaussSequence, indices: &[usize]) -> Vec<String> {
    indices
        .iter()
        .map(|&e| seq.events()[e].to_string())
        .collect()
}

#[derive(Serialize)]
struct CheckOutput {
    schema_version: u32,
    feasible: bool,
    cuts: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blame: Option<Vec<String>>,
}

fn cmd_check(args: &CheckArgs) -> Result<u8, Failure> {
    let seq = parse_input(&args.input)?;
    let cuts = parse_cuts(&args.cuts)?;
    let result = is_feasible(&seq, &cuts).map_err(|e| usage(format!("invalid cuts: {e}")))?;
    let (code, output) = match &result {
        Feasibility::Feasible(w) => (
            0,
            CheckOutput {
                schema_version: SCHEMA_VERSION,
                feasible: true,
                cuts: cuts.to_string(),
                witness: Some(event_names(&seq, &w.order)),
                blame: None,
            },
        ),
        Feasibility::Infeasible(b) => (
            EXIT_NEGATIVE,
            CheckOutput {
                schema_version: SCHEMA_VERSION,
                feasible: false,
                cuts: cuts.to_string(),
                witness: None,
                blame: Some(event_names(&seq, &b.cycle)),
            },
        ),
    };
    match args.format {
        OutputFormat::Json => println!("{}", serde_json::to_string(&output).unwrap()),
        OutputFormat::Text => {
            if output.feasible {
                println!("feasible {}", output.cuts);
                println!("witness: {}", output.witness.as_ref().unwrap().join(" "));
            } else {
                println!("infeasible {}", output.cuts);
                println!(
                    "blame cycle: {}",
                    output.blame.as_ref().unwrap().join(" -> ")
                );
            }
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct MinOutput {
    schema_version: u32,
    min_dancers: usize,
    witness: String,
    oracle: bool,
}

fn cmd_min(args: &MinArgs) -> Result<u8, Failure> {
    let seq = parse_input(&args.input)?;
    let MinDancers { count, witness } = if args.oracle {
        dancekit::engine::oracle::naive_min_dancers(&seq)
    } else {
        min_dancers(&seq)
    };
    let output = MinOutput {
        schema_version: SCHEMA_VERSION,
        min_dancers: count,
        witness: witness.to_string(),
        oracle: args.oracle,
    };
    match args.format {
        OutputFormat::Json => println!("{}", serde_json::to_string(&output).unwrap()),
        OutputFormat::Text => {
            println!("min dancers: {count}");
            println!("witness: {}", output.witness);
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ScheduleEventOutput {
    event: String,
    step: usize,
    wait: bool,
}

#[derive(Serialize)]
struct ScheduleDancerOutput {
    dancer: usize,
    gap: usize,
    path: Vec<ScheduleEventOutput>,
}

#[derive(Serialize)]
struct ScheduleOutput {
    schema_version: u32,
    dancers: Vec<ScheduleDancerOutput>,
    steps: usize,
    cuts: String,
}

fn schedule_json(ctx: &ScheduleContext, s: &DanceSchedule) -> ScheduleOutput {
    let dancers = s
        .dancers
        .iter()
        .enumerate()
        .map(|(d, seg)| ScheduleDancerOutput {
            dancer: d + 1,
            gap: ctx.cuts.gaps()[d],
            path: seg
                .iter()
                .map(|&e| ScheduleEventOutput {
                    event: ctx.seq.events()[e].to_string(),
                    step: s.order[e],
                    wait: s.waits.contains(&(d, e)),
                })
                .collect(),
        })
        .collect();
    ScheduleOutput {
        schema_version: SCHEMA_VERSION,
        dancers,
        steps: s.steps(),
        cuts: ctx.cuts.to_string(),
    }
}

fn cmd_schedule(args: &ScheduleArgs) -> Result<u8, Failure> {
    let (ctx, schedule) = if args.theorem3 {
        let text = args
            .input
            .braid
            .as_ref()
            .ok_or_else(|| usage("--theorem3 requires --braid"))?;
        let braid = parse_braid(text).map_err(|e| usage(format!("invalid --braid: {e}")))?;
        let schedule = braid_schedule(&braid).map_err(|e| match e {
            ChoreoError::Braid(inner) => negative(format!("--braid: {inner}")),
            other => usage(other.to_string()),
        })?;
        let ctx = ScheduleContext::for_braid(braid)
            .map_err(|e| negative(format!("--braid: {e}")))?;
        (ctx, schedule)
    } else {
        let cuts_text = args
            .cuts
            .as_ref()
            .ok_or_else(|| usage("schedule needs --cuts (or --braid with --theorem3)"))?;
        let cuts = parse_cuts(cuts_text)?;
        let seq = parse_input(&args.input)?;
        let schedule = schedule_from_cuts(&seq, &cuts).map_err(|e| match e {
            ChoreoError::InfeasibleCuts(cycle) => negative(format!(
                "infeasible cuts; blame cycle over events {cycle:?}"
            )),
            other => usage(other.to_string()),
        })?;
        let ctx = match &args.input.braid {
            Some(text) => {
                let braid =
                    parse_braid(text).map_err(|e| usage(format!("invalid --braid: {e}")))?;
                ScheduleContext {
                    seq,
                    cuts,
                    braid: Some(braid),
                }
            }
            None => ScheduleContext::from_cuts(seq, cuts),
        };
        (ctx, schedule)
    };

    match args.format {
        ScheduleFormat::Json => {
            let output = schedule_json(&ctx, &schedule);
            println!("{}", serde_json::to_string(&output).unwrap());
        }
        ScheduleFormat::Text => {
            let text = render_schedule(&ctx, &schedule, RenderFormat::Text)
                .map_err(|e| usage(e.to_string()))?;
            print!("{text}");
        }
        ScheduleFormat::Svg => {
            let svg = render_schedule(&ctx, &schedule, RenderFormat::Svg).map_err(|e| match e {
                ChoreoError::UnsupportedLayout => {
                    usage("SVG layout requires a braid-closure input (use --braid)")
                }
                other => usage(other.to_string()),
            })?;
            print!("{svg}");
        }
    }
    Ok(0)
}

fn cmd_census(args: &CensusArgs) -> Result<u8, Failure> {
    let env_path = std::env::var_os("DANCEKIT_CENSUS").map(PathBuf::from);
    let (load, source) = match args.file.clone().or(env_path) {
        Some(path) => {
            let load = census::load_census(&path, args.strict)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            (load, path.display().to_string())
        }
        None => (census::bundled(), "bundled".to_string()),
    };
    for warning in &load.warnings {
        eprintln!("warning: {warning}");
    }
    let report = census::run_census(&load.records, &source, &CensusOptions { jobs: args.jobs });
    census::write_reports(&report, &args.out)
        .map_err(|e| usage(format!("writing reports: {e}")))?;

    match args.format {
        OutputFormat::Json => print!("{}", report.to_json()),
        OutputFormat::Text => {
            let s = &report.summary;
            println!(
                "census: {} record(s) from {}; checks: {} passed, {} failed, {} skipped",
                s.records, report.source, s.checks_passed, s.checks_failed, s.checks_skipped
            );
            for (flag, count) in &s.flags {
                println!("  flag {flag}: {count}");
            }
            for row in &report.rows {
                let checks: Vec<String> = row
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{}={}",
                            c.id,
                            match c.status {
                                census::CheckStatus::Pass => "pass",
                                census::CheckStatus::Fail => "FAIL",
                                census::CheckStatus::Skipped => "skip",
                            }
                        )
                    })
                    .collect();
                let upper = row
                    .best_upper
                    .map(|u| u.to_string())
                    .unwrap_or_else(|| "?".into());
                let exact = row
                    .da_exact
                    .map(|u| format!(" da={u}"))
                    .unwrap_or_default();
                let flags = if row.flags.is_empty() {
                    String::new()
                } else {
                    format!(
                        " [{}]",
                        row.flags
                            .iter()
                            .map(|f| f.code())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                };
                println!(
                    "  {}: da in [{},{upper}]{exact} {}{flags}",
                    row.name,
                    row.da_lower,
                    checks.join(" "),
                );
            }
            println!("reports written to {}", args.out.display());
        }
    }
    if report.has_check_failures() {
        return Ok(EXIT_NEGATIVE);
    }
    Ok(0)
}

#[derive(Serialize)]
struct ConvertOutput {
    schema_version: u32,
    to: &'static str,
    output: String,
}

fn cmd_convert(args: &ConvertArgs) -> Result<u8, Failure> {
    let seq = parse_input(&args.input)?;
    let (to, output) = match args.to {
        ConvertTarget::Gauss => ("gauss", serialize_gauss(&seq)),
        ConvertTarget::Pd => ("pd", serialize_pd(&PdCode::from_gauss(&seq))),
    };
    match args.format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string(&ConvertOutput {
                schema_version: SCHEMA_VERSION,
                to,
                output,
            })
            .unwrap()
        ),
        OutputFormat::Text => println!("{output}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Min(args) => cmd_min(args),
        Command::Schedule(args) => cmd_schedule(args),
        Command::Census(args) => cmd_census(args),
        Command::Convert(args) => cmd_convert(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
