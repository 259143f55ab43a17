//! `punctel`: registry inspection, puncturing, reliability sweeps, code
//! selection and oracle validation.

mod config;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use punctel::oracle::{self, ValidationConfig, DEFAULT_SAMPLES, DEFAULT_WORKERS};
use punctel::puncture::{self, apply_steps, parse_steps, search_puncture_sets};
use punctel::registry::parse_declarations;
use punctel::reliability::{self, f0_grid, find_crossing, select_code};
use punctel::{builtin_registry, CodeFamily, CodeRegistry, CssCode, PunctureError, PunctureKind};

use config::SweepConfig;

const EXIT_USAGE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_INFEASIBLE: u8 = 5;
const EXIT_VALIDATION: u8 = 6;

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {err}", path.display()))
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "punctel",
    version,
    about = "Punctured CSS codes over purified EPR links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print registry codes with parameters and matrices.
    Codes(CodesArgs),
    /// Apply a puncture lineage to a registry code, or search for puncture sets.
    Puncture(PunctureArgs),
    /// Write the logical error CSV over an F0 grid and round counts.
    Sweep(SweepArgs),
    /// Pick the shortest code meeting a logical error target.
    Select(SelectArgs),
    /// Run the exhaustive and Monte-Carlo oracle suite.
    Validate(ValidateArgs),
    /// Smallest F0 at which a code meets a target.
    Crossing(CrossingArgs),
}

#[derive(Args)]
struct CodesArgs {
    /// Print only this code.
    #[arg(long)]
    id: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PunctureArgs {
    /// Origin code id.
    #[arg(long = "from", default_value = "base-17")]
    from: String,
    /// Comma-separated steps "(0|1)@i" / "(1|0)@i", indices in origin numbering.
    #[arg(long, default_value = "")]
    steps: String,
    /// Search for puncture sets of this size instead of applying steps.
    #[arg(long)]
    search_size: Option<usize>,
    /// Puncture kind for --search-size: "(0|1)" / z or "(1|0)" / x.
    #[arg(long, default_value = "(0|1)")]
    search_kind: String,
    /// Required dX of search results (default: origin dX).
    #[arg(long)]
    target_dx: Option<usize>,
    /// Required dZ of search results (default: origin dZ).
    #[arg(long)]
    target_dz: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    f0_start: Option<f64>,
    #[arg(long)]
    f0_end: Option<f64>,
    #[arg(long)]
    f0_step: Option<f64>,
    /// Round counts, e.g. "0,1,2,3" or "0-3".
    #[arg(long)]
    rounds: Option<String>,
    /// Comma-separated code ids, or "all".
    #[arg(long)]
    codes: Option<String>,
    /// Also report each code's crossing F0 for this target.
    #[arg(long)]
    target: Option<f64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// key=value file with defaults for the options above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SelectArgs {
    #[arg(long)]
    f0: f64,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    target: f64,
    /// "all" or "punctured".
    #[arg(long, default_value = "all")]
    family: CodeFamily,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Base seed; seed + 1 and seed + 2 are also run.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_WORKERS, value_parser = parse_workers)]
    workers: usize,
    /// TOML code declarations to validate instead of the built-in registry.
    #[arg(long)]
    codes: Option<PathBuf>,
    /// Report CSV destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CrossingArgs {
    #[arg(long)]
    code: String,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    target: f64,
    #[arg(long, default_value_t = 0.8)]
    f0_min: f64,
    #[arg(long, default_value_t = 1.0)]
    f0_max: f64,
}

fn parse_workers(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("at least one worker is required".into()),
        Ok(w) => Ok(w),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Codes(a) => cmd_codes(a),
        Command::Puncture(a) => cmd_puncture(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Select(a) => cmd_select(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Crossing(a) => cmd_crossing(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn lookup(id: &str) -> Result<&'static CssCode, CliError> {
    builtin_registry().get(id).ok_or_else(|| {
        CliError::usage(format!(
            "unknown code id {id:?}; known: {}",
            builtin_registry().ids().join(", ")
        ))
    })
}

/// Six significant digits for human-readable output.
fn short(p: f64) -> String {
    format!("{p:.5e}")
}

fn print_code(out: &mut impl Write, code: &CssCode) -> io::Result<()> {
    writeln!(
        out,
        "{} {} n={} k={} dX={} dZ={} tX={} tZ={}",
        code.id(),
        code.parameters(),
        code.n(),
        code.k(),
        code.dx(),
        code.dz(),
        code.tx(),
        code.tz()
    )?;
    for (name, m) in [("h1", code.h1()), ("h2", code.h2())] {
        writeln!(out, "  {name} ({} x {}):", m.nrows(), m.ncols())?;
        for row in m.rows() {
            writeln!(out, "    {row}")?;
        }
    }
    Ok(())
}

fn stdout_error(e: io::Error) -> CliError {
    CliError::new(EXIT_IO, format!("stdout: {e}"))
}

fn cmd_codes(args: CodesArgs) -> CliResult {
    let codes: Vec<&CssCode> = match &args.id {
        Some(id) => vec![lookup(id)?],
        None => builtin_registry().iter().collect(),
    };
    let mut out = io::stdout().lock();
    if args.json {
        let summaries: Vec<_> = codes.iter().map(|c| c.summary()).collect();
        let text = serde_json::to_string_pretty(&summaries).expect("summaries serialize");
        writeln!(out, "{text}").map_err(stdout_error)?;
    } else {
        for c in codes {
            print_code(&mut out, c).map_err(stdout_error)?;
        }
    }
    Ok(())
}

fn puncture_error(e: PunctureError) -> CliError {
    match e {
        PunctureError::Degenerate { .. } | PunctureError::DistanceInvariant { .. } => {
            CliError::new(EXIT_DEGENERATE, e.to_string())
        }
        _ => CliError::usage(e.to_string()),
    }
}

fn cmd_puncture(args: PunctureArgs) -> CliResult {
    let origin = lookup(&args.from)?;
    let mut out = io::stdout().lock();
    if let Some(size) = args.search_size {
        let kind: PunctureKind = args.search_kind.parse().map_err(puncture_error)?;
        let dx = args.target_dx.unwrap_or(origin.dx());
        let dz = args.target_dz.unwrap_or(origin.dz());
        let sets = search_puncture_sets(origin, kind, size, dx, dz).map_err(puncture_error)?;
        writeln!(
            out,
            "{} {kind}-puncture sets of size {size} reaching dX={dx} dZ={dz}:",
            sets.len()
        )
        .map_err(stdout_error)?;
        for s in sets {
            let steps: Vec<String> = s.iter().map(|i| format!("{kind}@{i}")).collect();
            writeln!(out, "  {}", steps.join(",")).map_err(stdout_error)?;
        }
        return Ok(());
    }

    let steps = parse_steps(&args.steps).map_err(puncture_error)?;
    let derived = apply_steps(origin, &steps).map_err(puncture_error)?;
    let lineage = derived.lineage();
    let join = |labels: Vec<puncture::StabilizerLabel>| {
        labels
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut report = || -> io::Result<()> {
        writeln!(out, "origin: {}", origin.id())?;
        writeln!(out, "steps: {}", lineage.step_string())?;
        for s in &lineage.steps {
            writeln!(
                out,
                "  {}@{} (current index {}) removes [{}]",
                s.kind,
                s.original_qubit,
                s.qubit,
                join(s.removed_stabilizers.clone())
            )?;
        }
        writeln!(
            out,
            "removed stabilizers: [{}]",
            join(lineage.removed_stabilizers())
        )?;
        writeln!(out, "kept stabilizers: [{}]", join(lineage.kept_labels()))?;
        let qubits: Vec<String> = lineage.qubits.iter().map(ToString::to_string).collect();
        writeln!(out, "kept qubits (origin numbering): {}", qubits.join(","))?;
        print_code(&mut out, derived.code())?;
        match builtin_registry().find_equivalent(derived.code()) {
            Some(c) => writeln!(out, "matches registry code: {}", c.id()),
            None => writeln!(out, "matches registry code: none"),
        }
    };
    report().map_err(stdout_error)
}

fn parse_rounds(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::usage(format!("invalid round list {s:?}"));
    let mut rounds = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u32 = a.trim().parse().map_err(|_| bad())?;
                let b: u32 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                rounds.extend(a..=b);
            }
            None => rounds.push(part.parse().map_err(|_| bad())?),
        }
    }
    if rounds.is_empty() {
        return Err(bad());
    }
    if let Some(r) = rounds
        .iter()
        .find(|&&r| r > punctel::purification::MAX_ROUNDS)
    {
        return Err(CliError::usage(format!(
            "round count {r} exceeds {}",
            punctel::purification::MAX_ROUNDS
        )));
    }
    rounds.sort_unstable();
    rounds.dedup();
    Ok(rounds)
}

fn select_codes(list: &str) -> Result<CodeRegistry, CliError> {
    if list.trim() == "all" {
        return Ok(builtin_registry().clone());
    }
    let ids: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    for id in &ids {
        lookup(id)?;
    }
    if ids.is_empty() {
        return Err(CliError::usage("empty code list"));
    }
    Ok(builtin_registry().subset(&ids))
}

fn cmd_sweep(args: SweepArgs) -> CliResult {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            SweepConfig::parse(&text).map_err(CliError::usage)?
        }
        None => SweepConfig::default(),
    };
    let cfg = SweepConfig {
        f0_start: args.f0_start.unwrap_or(file.f0_start),
        f0_end: args.f0_end.unwrap_or(file.f0_end),
        f0_step: args.f0_step.unwrap_or(file.f0_step),
        rounds: args.rounds.unwrap_or(file.rounds),
        codes: args.codes.unwrap_or(file.codes),
        target: args.target.or(file.target),
        output: args.output.or(file.output),
    };

    let grid = f0_grid(cfg.f0_start, cfg.f0_end, cfg.f0_step)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let rounds = parse_rounds(&cfg.rounds)?;
    let registry = select_codes(&cfg.codes)?;
    let points = reliability::sweep(&registry, &grid, &rounds)
        .map_err(|e| CliError::usage(e.to_string()))?;

    match &cfg.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            reliability::write_csv(&mut w, &points)
                .and_then(|()| w.flush())
                .map_err(|e| CliError::io(path, e))?;
            println!("wrote {} rows to {}", points.len(), path.display());
        }
        None => {
            let mut out = io::stdout().lock();
            reliability::write_csv(&mut out, &points).map_err(stdout_error)?;
        }
    }
    eprintln!("{} rows", points.len());

    if let Some(target) = cfg.target {
        // Crossings go to stderr when the CSV occupies stdout.
        let mut lines = Vec::new();
        for code in &registry {
            for &r in &rounds {
                let line = match find_crossing(code, r, target, (cfg.f0_start, cfg.f0_end)) {
                    Ok(f) => format!(
                        "crossing {} r={r} target={target:e}: F0 = {f:.5}",
                        code.id()
                    ),
                    Err(e) => format!("crossing {} r={r} target={target:e}: none ({e})", code.id()),
                };
                lines.push(line);
            }
        }
        for line in lines {
            if cfg.output.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

fn cmd_select(args: SelectArgs) -> CliResult {
    let registry = args.family.restrict(builtin_registry());
    let sel = select_code(&registry, args.f0, args.r, args.target)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let mut out = io::stdout().lock();
    let mut text = || -> io::Result<()> {
        writeln!(
            out,
            "F0 = {}, r = {}, target = {:e}, family = {}",
            sel.f0, sel.r, sel.target, args.family
        )?;
        for p in &sel.evaluated {
            let mark = if p.p_l <= sel.target {
                "feasible"
            } else {
                "infeasible"
            };
            writeln!(
                out,
                "  {:<10} n={:<3} pL={}  {mark}",
                p.code_id,
                p.n,
                short(p.p_l)
            )?;
        }
        writeln!(out, "selected: {}", sel.chosen.as_deref().unwrap_or("none"))?;
        let json = serde_json::json!({
            "f0": sel.f0,
            "r": sel.r,
            "target": sel.target,
            "family": args.family.to_string(),
            "feasible": sel.feasible,
            "selected": sel.chosen,
            "n": sel.chosen_n,
            "evaluated": sel.evaluated.iter().map(|p| serde_json::json!({
                "code_id": p.code_id,
                "n": p.n,
                "pL": p.p_l,
            })).collect::<Vec<_>>(),
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json).expect("json serializes")
        )
    };
    text().map_err(stdout_error)?;
    match sel.chosen {
        Some(_) => Ok(()),
        None => Err(CliError::new(
            EXIT_INFEASIBLE,
            format!(
                "no code meets target {:e} at F0 = {}, r = {}",
                sel.target, sel.f0, sel.r
            ),
        )),
    }
}

fn cmd_validate(args: ValidateArgs) -> CliResult {
    let registry = match &args.codes {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse_declarations(&text).map_err(|e| CliError::usage(e.to_string()))?
        }
        None => builtin_registry().clone(),
    };
    let config = ValidationConfig {
        samples: args.samples,
        seed: args.seed,
        workers: args.workers,
    };
    let outcome = oracle::validate(&registry, &config);
    let reports = outcome.reports();
    match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            oracle::write_reports(&mut w, &reports)
                .and_then(|()| w.flush())
                .map_err(|e| CliError::io(path, e))?;
        }
        None => oracle::write_reports(io::stdout().lock(), &reports).map_err(stdout_error)?,
    }
    for c in &outcome.codes {
        let convention = c
            .convention
            .map_or("unresolved".to_string(), |v| v.to_string());
        eprintln!(
            "{}: convention {convention}, {} failures",
            c.code_id,
            c.failures.len()
        );
    }
    let failures = outcome.failures();
    if failures.is_empty() {
        eprintln!("validation passed: {} report rows", reports.len());
        Ok(())
    } else {
        Err(CliError::new(
            EXIT_VALIDATION,
            format!("validation failed:\n  {}", failures.join("\n  ")),
        ))
    }
}

fn cmd_crossing(args: CrossingArgs) -> CliResult {
    let code = lookup(&args.code)?;
    match find_crossing(code, args.r, args.target, (args.f0_min, args.f0_max)) {
        Ok(f) => {
            println!("{}", f);
            eprintln!(
                "{} r={} target={:e}: F0* = {f:.5}",
                code.id(),
                args.r,
                args.target
            );
            Ok(())
        }
        Err(e @ reliability::ReliabilityError::NoCrossing { .. }) => {
            Err(CliError::new(EXIT_INFEASIBLE, e.to_string()))
        }
        Err(e) => Err(CliError::usage(e.to_string())),
    }
}
