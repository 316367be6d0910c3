//! `cmsolver`: command-line front end for the Cookie Monster solver.
//!
//! Subcommands cover exact solving with certificates, heuristic playouts,
//! structural bounds, sequence families, ratio-targeted constructions, a
//! seeded benchmark harness, and plan verification. Output is JSON by
//! default; `--csv` and `--text` switch formats. Exit codes: 0 on success,
//! 1 on domain errors (bad input, invalid plan), 2 when a resource limit
//! (node budget, state cap, jar limit) stops a solver.

mod instance;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use cookie_monster::{
    build_ratio_sequence, cm_bfs, cm_exact, cm_two_powerful, construct_set_with_cm,
    is_superincreasing, is_two_powerful, lower_bound, plan_from_certificate, run_heuristic,
    upper_bound_binary, upper_bound_diameter, upper_bound_trivial, verify_plan, Algorithm, BfsCaps,
    Error, JarSet, MovePlan, NacciFamily, PlanVerdict, TargetRatio,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use report::{
    BenchReport, BenchResults, BenchTiming, BoundsReport, Format, HeuristicReport, RatioReport,
    RatioRow, RunRecord, SeqReport, SolveReport, VerifyReport,
};

/// Environment variable supplying the default node budget for the exact
/// search; the `--budget` flag overrides it.
const NODE_BUDGET_ENV: &str = "CM_NODE_BUDGET";

#[derive(Parser)]
#[command(
    name = "cmsolver",
    version,
    about = "Exact solver, bounds, heuristics, and sequence constructions for the Cookie Monster problem"
)]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    csv: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly: move count, certificate, and a replayable plan.
    Solve {
        /// Jar values: comma-separated integers, or @FILE.
        instance: String,
        /// Use the breadth-first state-space oracle instead of the cover
        /// search. Slower, capped, and produces no certificate.
        #[arg(long)]
        oracle: bool,
        /// Node budget for the cover search (overrides CM_NODE_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Play one greedy heuristic to completion.
    Heuristic {
        /// Which heuristic: emja, tca, or ba.
        #[arg(long)]
        alg: Algorithm,
        /// Jar values: comma-separated integers, or @FILE.
        instance: String,
    },
    /// Report structural lower and upper bounds without solving.
    Bounds {
        /// Jar values: comma-separated integers, or @FILE.
        instance: String,
    },
    /// Emit jar sets from sequence families with known move counts.
    Seq {
        /// Sum-of-previous-N family: emit its first K jars (requires --k).
        #[arg(long)]
        nacci: Option<usize>,
        /// Number of jars for --nacci.
        #[arg(long)]
        k: Option<usize>,
        /// Build a K-jar set needing exactly M moves, as "K,M".
        #[arg(long)]
        construct: Option<String>,
    },
    /// Build the greedy sequence whose cost-to-size ratio tracks a target.
    Ratio {
        /// Target ratio in [0, 1]: a fraction like 3/4 or a decimal like 0.75.
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Number of sequence terms to emit.
        #[arg(long)]
        terms: usize,
    },
    /// Generate seeded random instances and compare exact, heuristics, and bounds.
    Bench {
        /// Number of instances.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Jars per instance are drawn uniformly from [2, max-k].
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        /// Jar values are sampled without replacement from [1, max-value].
        #[arg(long, default_value_t = 40)]
        max_value: u64,
        /// RNG seed; identical seeds reproduce identical records.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock timings (off by default so identical seeds
        /// produce byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// Replay a plan produced by `solve` and check that it empties the instance.
    Verify {
        /// JSON file with "instance" and "plan" keys, as emitted by `solve`.
        #[arg(long)]
        plan: PathBuf,
        /// Optional instance overriding the one recorded in the file.
        instance: Option<String>,
    },
}

impl Cli {
    fn format(&self) -> Result<Format, CliError> {
        if [self.json, self.csv, self.text]
            .iter()
            .filter(|&&b| b)
            .count()
            > 1
        {
            return Err(CliError::Domain(
                "choose at most one of --json, --csv, --text".into(),
            ));
        }
        Ok(if self.csv {
            Format::Csv
        } else if self.text {
            Format::Text
        } else {
            Format::Json
        })
    }
}

/// Command failures split by exit code: domain errors (1) for bad input or
/// failed verification, resource errors (2) when a solver hits a limit.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Resource(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Resource(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Resource(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let message = err.to_string();
        if err.is_resource() {
            CliError::Resource(message)
        } else {
            CliError::Domain(message)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version are successes; any other command-line
            // problem is a domain error and must not collide with the
            // resource exit code 2.
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format()?;
    match cli.command {
        Command::Solve {
            instance,
            oracle,
            budget,
        } => solve(&instance, oracle, budget, format),
        Command::Heuristic { alg, instance } => heuristic(alg, &instance, format),
        Command::Bounds { instance } => bounds(&instance, format),
        Command::Seq {
            nacci,
            k,
            construct,
        } => seq(nacci, k, construct.as_deref(), format),
        Command::Ratio { r, terms } => ratio(&r, terms, format),
        Command::Bench {
            count,
            max_k,
            max_value,
            seed,
            timing,
        } => bench(count, max_k, max_value, seed, timing, format),
        Command::Verify { plan, instance } => verify(&plan, instance.as_deref(), format),
    }
}

fn resolve_budget(flag: Option<u64>) -> Result<Option<u64>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(NODE_BUDGET_ENV) {
        Ok(raw) => raw.trim().parse::<u64>().map(Some).map_err(|_| {
            CliError::Domain(format!(
                "{NODE_BUDGET_ENV} must be a positive integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(err) => Err(CliError::Domain(format!("{NODE_BUDGET_ENV}: {err}"))),
    }
}

fn solve(spec: &str, oracle: bool, budget: Option<u64>, format: Format) -> Result<(), CliError> {
    let set = instance::parse(spec)?;
    let report = if oracle {
        let cm = cm_bfs(&set, BfsCaps::default())?;
        SolveReport {
            instance: set,
            cm,
            certificate: None,
            plan: None,
        }
    } else {
        let result = cm_exact(&set, resolve_budget(budget)?)?;
        let plan = plan_from_certificate(&set, &result.certificate)?;
        SolveReport {
            instance: set,
            cm: result.cm,
            certificate: Some(result.certificate),
            plan: Some(plan),
        }
    };
    print!("{}", report.render(format));
    Ok(())
}

fn heuristic(alg: Algorithm, spec: &str, format: Format) -> Result<(), CliError> {
    let set = instance::parse(spec)?;
    let run = run_heuristic(&set, alg)?;
    let report = HeuristicReport {
        instance: set,
        algorithm: run.algorithm,
        move_count: run.move_count,
        cookies_removed: run.cookies_removed,
        plan: run.plan,
    };
    print!("{}", report.render(format));
    Ok(())
}

fn bounds(spec: &str, format: Format) -> Result<(), CliError> {
    let set = instance::parse(spec)?;
    let report = BoundsReport {
        lower: lower_bound(&set),
        upper_trivial: upper_bound_trivial(&set),
        upper_binary: upper_bound_binary(&set)?,
        upper_diameter: if set.len() >= 2 {
            Some(upper_bound_diameter(&set)?)
        } else {
            None
        },
        superincreasing: is_superincreasing(&set),
        two_powerful: is_two_powerful(&set),
        cm_if_two_powerful: cm_two_powerful(&set).ok(),
        instance: set,
    };
    print!("{}", report.render(format));
    Ok(())
}

fn seq(
    nacci: Option<usize>,
    k: Option<usize>,
    construct: Option<&str>,
    format: Format,
) -> Result<(), CliError> {
    let report = match (nacci, construct) {
        (Some(order), None) => {
            let k = k.ok_or_else(|| CliError::Domain("--nacci requires --k".into()))?;
            let family = NacciFamily::new(order)?;
            SeqReport {
                family: format!("{order}-nacci"),
                k,
                cm: family.cm(k),
                set: family.set(k)?,
            }
        }
        (None, Some(spec)) => {
            let (k, m) = spec
                .split_once(',')
                .and_then(|(k, m)| Some((k.trim().parse().ok()?, m.trim().parse().ok()?)))
                .ok_or_else(|| {
                    CliError::Domain(format!(
                        "--construct expects \"K,M\" with two integers, got {spec:?}"
                    ))
                })?;
            SeqReport {
                family: "prescribed".into(),
                k,
                cm: m,
                set: construct_set_with_cm(k, m)?,
            }
        }
        _ => {
            return Err(CliError::Domain(
                "use exactly one of --nacci N --k K or --construct K,M".into(),
            ))
        }
    };
    print!("{}", report.render(format));
    Ok(())
}

fn parse_ratio(spec: &str) -> Result<TargetRatio, CliError> {
    if let Some((num, den)) = spec.split_once('/') {
        let num: u64 = num
            .trim()
            .parse()
            .map_err(|_| CliError::Domain(format!("invalid ratio numerator {num:?}")))?;
        let den: u64 = den
            .trim()
            .parse()
            .map_err(|_| CliError::Domain(format!("invalid ratio denominator {den:?}")))?;
        Ok(TargetRatio::new(num, den)?)
    } else {
        let r: f64 = spec
            .trim()
            .parse()
            .map_err(|_| CliError::Domain(format!("invalid ratio {spec:?}")))?;
        Ok(TargetRatio::from_f64(r)?)
    }
}

fn ratio(spec: &str, terms: usize, format: Format) -> Result<(), CliError> {
    let target = parse_ratio(spec)?;
    let trajectory = build_ratio_sequence(target, terms);
    let rows = trajectory
        .terms
        .iter()
        .zip(&trajectory.cms)
        .zip(&trajectory.ratios)
        .enumerate()
        .map(|(i, ((&s_k, &cm), &ratio))| RatioRow {
            k: i + 1,
            s_k,
            cm,
            ratio,
        })
        .collect();
    let report = RatioReport {
        target: target.to_string(),
        rows,
    };
    print!("{}", report.render(format));
    Ok(())
}

fn bench(
    count: usize,
    max_k: usize,
    max_value: u64,
    seed: u64,
    timing: bool,
    format: Format,
) -> Result<(), CliError> {
    if max_k < 2 {
        return Err(CliError::Domain("--max-k must be at least 2".into()));
    }
    if max_value < max_k as u64 {
        return Err(CliError::Domain(
            "--max-value must be at least --max-k so values can be distinct".into(),
        ));
    }

    let budget = resolve_budget(None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(count);
    for _ in 0..count {
        let k = rng.gen_range(2..=max_k);
        let picks = rand::seq::index::sample(&mut rng, max_value as usize, k);
        let values: Vec<u64> = picks.iter().map(|i| i as u64 + 1).collect();
        let set = JarSet::new(values).expect("sampled values are distinct and positive");
        records.push(run_record(set, seed, timing, budget)?);
    }

    let report = BenchReport {
        seed,
        count,
        max_k,
        max_value,
        records,
    };
    print!("{}", report.render(format));
    Ok(())
}

fn run_record(
    set: JarSet,
    seed: u64,
    timing: bool,
    budget: Option<u64>,
) -> Result<RunRecord, CliError> {
    let started = Instant::now();
    let exact = cm_exact(&set, budget)?;
    let exact_us = started.elapsed().as_micros() as u64;

    let mut counts = [0usize; 3];
    let mut times = [0u64; 3];
    for (i, alg) in [Algorithm::Emja, Algorithm::Tca, Algorithm::Ba]
        .into_iter()
        .enumerate()
    {
        let started = Instant::now();
        let run = run_heuristic(&set, alg)?;
        times[i] = started.elapsed().as_micros() as u64;
        if run.move_count < exact.cm {
            return Err(CliError::Domain(format!(
                "internal error: {alg} reported {} moves on {set}, below the exact {}",
                run.move_count, exact.cm
            )));
        }
        counts[i] = run.move_count;
    }

    let results = BenchResults {
        exact: exact.cm,
        emja: counts[0],
        tca: counts[1],
        ba: counts[2],
        lower: lower_bound(&set),
        upper_trivial: upper_bound_trivial(&set),
        upper_binary: upper_bound_binary(&set)?,
        upper_diameter: if set.len() >= 2 {
            Some(upper_bound_diameter(&set)?)
        } else {
            None
        },
    };
    Ok(RunRecord {
        instance: set,
        results,
        timing: timing.then_some(BenchTiming {
            exact_us,
            emja_us: times[0],
            tca_us: times[1],
            ba_us: times[2],
        }),
        seed,
    })
}

/// The subset of `solve` output that `verify` consumes.
#[derive(Deserialize)]
struct PlanFile {
    instance: Option<JarSet>,
    plan: Option<MovePlan>,
}

fn verify(plan_path: &Path, instance: Option<&str>, format: Format) -> Result<(), CliError> {
    let raw = std::fs::read_to_string(plan_path)
        .map_err(|err| CliError::Domain(format!("{}: {err}", plan_path.display())))?;
    let file: PlanFile = serde_json::from_str(&raw)
        .map_err(|err| CliError::Domain(format!("{}: {err}", plan_path.display())))?;

    let set = match instance {
        Some(spec) => instance::parse(spec)?,
        None => file.instance.ok_or_else(|| {
            CliError::Domain("plan file records no instance; pass one as an argument".into())
        })?,
    };
    let plan = file.plan.ok_or_else(|| {
        CliError::Domain("plan file has no \"plan\" array (was it produced with --oracle?)".into())
    })?;

    let verdict = verify_plan(&set, &plan);
    let (valid, reason, certificate) = match &verdict {
        PlanVerdict::Valid(cert) => (true, None, Some(cert.clone())),
        PlanVerdict::InvalidMove { index, error } => (
            false,
            Some(format!("move {} cannot be applied: {error}", index + 1)),
            None,
        ),
        PlanVerdict::Unfinished { remaining } => (
            false,
            Some(format!("plan leaves {remaining} non-empty")),
            None,
        ),
    };
    let report = VerifyReport {
        instance: set,
        moves: plan.len(),
        valid,
        reason: reason.clone(),
        certificate,
    };
    print!("{}", report.render(format));
    match reason {
        None => Ok(()),
        Some(reason) => Err(CliError::Domain(reason)),
    }
}
