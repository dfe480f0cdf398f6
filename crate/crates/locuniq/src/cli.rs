//! Argument definitions and command implementations. Data goes to the writer passed
//! in (stdout in the binary); diagnostics are returned as [`CliError`].

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use locuniq_core::dp::MaskDisplay;
use locuniq_core::oracle::{brute_optimal_set, entropy_bound_check};
use locuniq_core::stats::{eps_thresholds, theorem_bound};
use locuniq_core::{delta_score, random_flip, solve, BinarySequence, Summary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::check::{all_dims, check_dims};
use crate::config::{resolve_mc, resolve_sweep, FileConfig, McOverrides, SweepOverrides};
use crate::output::{summary_table, to_csv_string, SummaryRow, TrialRow};
use crate::{parallel, svg, CliError};

/// Largest `n` the oracle check accepts without `--allow-large`.
pub const ORACLE_SAFE_MAX_N: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "locuniq", version, about = "Local uniqueness of optimal gapped alignments of binary sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal score and the leftmost/rightmost optimal alignments of x against y.
    Align {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
        format: PlainFormat,
    },
    /// Locally nonunique positions of x.
    Uniq {
        #[command(flatten)]
        pair: PairArgs,
        /// Also enumerate every alignment and cross-check.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
        format: PlainFormat,
    },
    /// Change in optimal score after flipping one symbol of x.
    Flip {
        #[command(flatten)]
        pair: PairArgs,
        /// 1-based position to flip.
        #[arg(long, conflicts_with = "seed")]
        t: Option<usize>,
        /// Draw the position uniformly with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
        format: PlainFormat,
    },
    /// Compare the DP with brute-force enumeration on every input up to a length.
    OracleCheck {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        allow_large: bool,
        /// Swap in a deliberately wrong solver (self-test of the harness).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Thresholds and the probability bound for (n, delta, epsilon).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
        format: PlainFormat,
    },
    /// Exact alignment count against the entropy bound, for n = 1..=max-n.
    Entropy {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
        format: PlainFormat,
    },
    /// Monte Carlo experiment for a single parameter set.
    Mc {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[command(flatten)]
        run: RunArgs,
        /// Write one CSV row per trial to this file.
        #[arg(long)]
        per_trial: Option<PathBuf>,
    },
    /// Monte Carlo experiments over the grid n x epsilon x delta.
    Sweep {
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Shorter sequence, e.g. 0110.
    #[arg(long)]
    pub x: String,
    /// Longer sequence.
    #[arg(long)]
    pub y: String,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = RunFormat::Table)]
    pub format: RunFormat,
    /// Write data here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Record event frequencies.
    #[arg(long)]
    pub events: bool,
    /// Record statement frequencies.
    #[arg(long)]
    pub statements: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlainFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunFormat {
    Table,
    Csv,
    Json,
    Svg,
}

fn parse_pair(p: &PairArgs) -> Result<(BinarySequence, BinarySequence), CliError> {
    let x: BinarySequence = p.x.parse()?;
    let y: BinarySequence = p.y.parse()?;
    Ok((x, y))
}

fn json_line(v: &impl serde::Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| CliError::Io(e.to_string()))
}

fn write_file(path: &Path, data: &str) -> Result<(), CliError> {
    std::fs::write(path, data).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    path.as_deref().map_or_else(|| Ok(FileConfig::default()), FileConfig::load)
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs a parsed command, writing its data to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Align { pair, format } => align(&pair, format)?,
        Command::Uniq { pair, oracle, format } => uniq(&pair, oracle, format)?,
        Command::Flip { pair, t, seed, format } => flip(&pair, t, seed, format)?,
        Command::OracleCheck { max_n, allow_large, inject_fault } => {
            let (text, verdict) = oracle_check(max_n, allow_large, inject_fault)?;
            out.write_all(text.as_bytes())?;
            return verdict;
        }
        Command::Bound { n, delta, epsilon, format } => bound(n, delta, epsilon, format)?,
        Command::Entropy { delta, max_n, format } => entropy(delta, max_n, format)?,
        Command::Mc { n, delta, epsilon, run, per_trial } => {
            let file = load_config(&run.config)?;
            let flags = McOverrides {
                n,
                delta,
                epsilon,
                trials: run.trials,
                seed: run.seed,
                events: run.events,
                statements: run.statements,
            };
            let config = resolve_mc(&flags, &file)?;
            let threads = run.threads.or(file.threads).unwrap_or_else(default_threads);
            let summary = parallel::run_experiment(&config, threads)?;
            if let Some(path) = &per_trial {
                let rows: Vec<TrialRow> =
                    parallel::trial_records(&config, threads)?.iter().map(TrialRow::from).collect();
                write_file(path, &to_csv_string(&rows))?;
            }
            let text = render_summaries(std::slice::from_ref(&summary), run.format, false)?;
            return emit(out, &run.out, &text);
        }
        Command::Sweep { n, delta, epsilon, run } => {
            let file = load_config(&run.config)?;
            let flags = SweepOverrides {
                n,
                delta,
                epsilon,
                trials: run.trials,
                seed: run.seed,
                events: run.events,
                statements: run.statements,
            };
            let configs = resolve_sweep(&flags, &file)?;
            let threads = run.threads.or(file.threads).unwrap_or_else(default_threads);
            let summaries = parallel::sweep(&configs, threads)?;
            let text = render_summaries(&summaries, run.format, true)?;
            return emit(out, &run.out, &text);
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Renders summaries in the requested format. `many` selects the sweep layouts
/// (JSON array, `U/m` plot) over the single-run ones (JSON object, histogram).
pub fn render_summaries(summaries: &[Summary], format: RunFormat, many: bool) -> Result<String, CliError> {
    let rows: Vec<SummaryRow> = summaries.iter().map(SummaryRow::from).collect();
    Ok(match format {
        RunFormat::Table => summaries.iter().map(summary_table).collect::<Vec<_>>().join("\n"),
        RunFormat::Csv => to_csv_string(&rows),
        RunFormat::Json if many => json_line(&rows)?,
        RunFormat::Json => json_line(&rows[0])?,
        RunFormat::Svg if many => svg::u_fraction_plot(summaries),
        RunFormat::Svg => svg::delta_histogram(&summaries[0]),
    })
}

fn align(p: &PairArgs, format: PlainFormat) -> Result<String, CliError> {
    let (x, y) = parse_pair(p)?;
    let pair = solve(&x, &y)?;
    Ok(match format {
        PlainFormat::Json => json_line(&pair)?,
        PlainFormat::Text => format!(
            "S*     {}\nxi     {}\nlambda {}\nU      {}\nmask   {}\n",
            pair.s_star,
            pair.xi,
            pair.lambda,
            pair.u_count,
            MaskDisplay(&pair.u)
        ),
    })
}

fn uniq(p: &PairArgs, oracle: bool, format: PlainFormat) -> Result<String, CliError> {
    let (x, y) = parse_pair(p)?;
    let pair = solve(&x, &y)?;
    let positions: Vec<usize> = (1..=pair.m()).filter(|&i| pair.u[i - 1]).collect();
    let brute = if oracle {
        let set = brute_optimal_set(&x, &y)?;
        let mask = set.nonunique_mask();
        if mask != pair.u {
            return Err(CliError::CheckFailed(format!(
                "oracle disagrees: dp={} brute={}",
                MaskDisplay(&pair.u),
                MaskDisplay(&mask)
            )));
        }
        Some(set.optimal.len())
    } else {
        None
    };
    Ok(match format {
        PlainFormat::Json => json_line(&json!({
            "U": pair.u_count,
            "m": pair.m(),
            "u_fraction": pair.u_count as f64 / pair.m() as f64,
            "positions": positions,
            "mask": MaskDisplay(&pair.u).to_string(),
            "optimal_alignments": brute,
        }))?,
        PlainFormat::Text => {
            let mut s = format!(
                "U          {} of {}\npositions  {:?}\nmask       {}\n",
                pair.u_count,
                pair.m(),
                positions,
                MaskDisplay(&pair.u)
            );
            if let Some(k) = brute {
                s.push_str(&format!("oracle     agrees ({k} optimal alignments)\n"));
            }
            s
        }
    })
}

fn flip(p: &PairArgs, t: Option<usize>, seed: Option<u64>, format: PlainFormat) -> Result<String, CliError> {
    let (x, y) = parse_pair(p)?;
    let outcome = match (t, seed) {
        (Some(t), _) => delta_score(&x, &y, t)?,
        (None, Some(seed)) => random_flip(&x, &y, &mut ChaCha8Rng::seed_from_u64(seed))?,
        (None, None) => return Err(CliError::Usage("flip needs --t or --seed".into())),
    };
    Ok(match format {
        PlainFormat::Json => json_line(&outcome)?,
        PlainFormat::Text => format!(
            "t         {}\ndelta     {:+}\ncategory  {}\nS* before {}\nS* after  {}\n",
            outcome.t, outcome.delta, outcome.category, outcome.s_star_before, outcome.s_star_after
        ),
    })
}

/// Returns the per-dimension table and, separately, the overall verdict, so the table
/// is written even when the check fails.
fn oracle_check(
    max_n: usize,
    allow_large: bool,
    inject_fault: bool,
) -> Result<(String, Result<(), CliError>), CliError> {
    if max_n > ORACLE_SAFE_MAX_N && !allow_large {
        return Err(CliError::Usage(format!(
            "--max-n {max_n} exceeds {ORACLE_SAFE_MAX_N}; pass --allow-large to run it anyway"
        )));
    }
    let faulty = |x: &BinarySequence, y: &BinarySequence| {
        let mut p = solve(x, y)?;
        p.lambda = p.xi.clone();
        Ok(p)
    };
    let mut text = String::new();
    let mut failed = Vec::new();
    for (m, n) in all_dims(max_n) {
        let r = if inject_fault { check_dims(m, n, faulty)? } else { check_dims(m, n, solve)? };
        let expectation = r.exact_expectation.map_or_else(|| "skipped".to_string(), |s| s.to_string());
        text.push_str(&format!(
            "m={m} n={n} instances={} mismatches={} exact_flip_sum={expectation} {}\n",
            r.instances,
            r.mismatches.len(),
            if r.passed() { "ok" } else { "FAIL" }
        ));
        if let Some(first) = r.mismatches.first() {
            failed.push(format!("({m},{n}) {first}"));
        } else if !r.passed() {
            failed.push(format!("({m},{n}) nonzero exact flip sum {expectation}"));
        }
    }
    let verdict = match failed.first() {
        None => Ok(()),
        Some(first) => Err(CliError::CheckFailed(format!("{} dimension(s) failed; first: {first}", failed.len()))),
    };
    Ok((text, verdict))
}

fn bound(n: usize, delta: f64, epsilon: f64, format: PlainFormat) -> Result<String, CliError> {
    let th = eps_thresholds(delta, epsilon)?;
    let b = theorem_bound(n, delta, epsilon)?;
    Ok(match format {
        PlainFormat::Json => json_line(&json!({ "thresholds": th, "bound": b }))?,
        PlainFormat::Text => format!(
            "eps1 {}\neps2 {}\neps3 {}\neps4 {}\nnumerator   {}\ndenominator {}\nraw         {}\nclamped     {}\nvacuous     {}\n",
            th.eps1,
            th.eps2,
            th.eps3,
            th.eps4,
            b.numerator,
            b.denominator,
            b.raw,
            b.clamped.map_or_else(|| "n/a".into(), |v| v.to_string()),
            b.vacuous
        ),
    })
}

fn entropy(delta: f64, max_n: usize, format: PlainFormat) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let r = entropy_bound_check(n, delta)?;
        rows.push(json!({
            "n": r.n, "m": r.m, "count": r.count.to_string(), "bound": r.bound,
            "holds": r.holds, "in_hypothesis": r.in_hypothesis,
        }));
    }
    Ok(match format {
        PlainFormat::Json => json_line(&rows)?,
        PlainFormat::Text => rows
            .iter()
            .map(|r| {
                format!(
                    "n={} m={} count={} bound={:.6} {}\n",
                    r["n"],
                    r["m"],
                    r["count"].as_str().unwrap_or(""),
                    r["bound"].as_f64().unwrap_or(f64::NAN),
                    if r["holds"] == true { "holds" } else { "VIOLATED" }
                )
            })
            .collect(),
    })
}
