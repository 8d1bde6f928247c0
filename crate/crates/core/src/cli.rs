//! Command-line front end. `run` is the whole program minus process exit.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::autotune::{
    alignment_report, apply_plateau_correction, evaluate, fit_knn, grid_search_k, recursion_sizes, split,
    DatasetKind, HeuristicModel, LabelSource, ObservationSet, SplitSpec, Target, DEFAULT_FOLDS, DEFAULT_SEED,
    DEFAULT_TOLERANCE,
};
use crate::bench::{
    generate_system, observation_set, sweep_m, sweep_r, Clock, FakeClock, MonotonicClock, DEFAULT_DOMINANCE,
};
use crate::io::{load_model, read_observation_sets, save_model, write_observation_sets};
use crate::solver::{residual_inf, solve_partition, thomas_solve, RecursionPolicy};
use crate::{Precision, Scalar};

/// Directory searched for relative input paths that do not exist under the working directory.
pub const DATA_DIR_ENV: &str = "TRIPART_DATA_DIR";

#[derive(Debug, Parser)]
#[command(name = "tripart", version, about = "Partition-method tridiagonal solver and its sub-system size autotuner")]
struct Cli {
    /// Fallback directory for relative input paths [env: TRIPART_DATA_DIR]
    #[arg(long, global = true, value_name = "DIR")]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a generated system and print its residual
    Solve(SolveArgs),
    /// Time the solver over candidate sizes or depths
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Add plateau-corrected labels to timed observations
    Correct(CorrectArgs),
    /// Fit a kNN model, choosing k by cross-validation
    Fit(FitArgs),
    /// Predict the sub-system size (and optionally the recursion policy) for a size
    Predict(PredictArgs),
    /// Score a model against a dataset
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Seed for the generated system
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Floating-point precision of the system
    #[arg(long, default_value = "fp64")]
    precision: Precision,
    /// Diagonal dominance factor, must exceed 1
    #[arg(long, default_value_t = DEFAULT_DOMINANCE)]
    dominance: f64,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Number of rows
    #[arg(long)]
    size: usize,
    /// Sub-system size used on every level
    #[arg(long)]
    m: usize,
    /// Number of recursive levels below the first
    #[arg(long, default_value_t = 0)]
    recursions: usize,
    /// Compare against the sequential Thomas solve and fail on disagreement
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    system: SystemArgs,
}

#[derive(Debug, Args)]
struct TimingArgs {
    /// Timed runs per candidate, after one warm-up
    #[arg(long, default_value_t = 5)]
    runs: usize,
    /// Replay durations (ms, one per line) instead of reading the clock
    #[arg(long, value_name = "TRACE")]
    fake_clock: Option<PathBuf>,
    /// Device name written to the output
    #[arg(long, default_value = "local")]
    device: String,
    /// Output CSV
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Sweep sub-system sizes with a flat partition
    SweepM {
        /// Comma-separated system sizes
        #[arg(long, value_delimiter = ',', required = true)]
        size: Vec<usize>,
        /// Comma-separated candidate sub-system sizes
        #[arg(long, value_delimiter = ',', required = true)]
        m_list: Vec<u32>,
        #[command(flatten)]
        timing: TimingArgs,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Sweep recursion depths with sizes from a size model
    SweepR {
        /// Comma-separated system sizes
        #[arg(long, value_delimiter = ',', required = true)]
        size: Vec<usize>,
        /// Deepest recursion to try
        #[arg(long, default_value_t = 4)]
        max_r: usize,
        /// Sub-system size model (JSON)
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        timing: TimingArgs,
        #[command(flatten)]
        system: SystemArgs,
    },
}

#[derive(Debug, Args)]
struct CorrectArgs {
    /// Timed observations CSV
    #[arg(long)]
    data: PathBuf,
    /// Relative slack over the fastest time for a candidate to count as optimal
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Output CSV
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Observations CSV holding a single (precision, device) group
    #[arg(long)]
    data: PathBuf,
    /// Learn the corrected labels instead of the observed ones
    #[arg(long)]
    use_corrected: bool,
    /// Fraction of rows held out for the test score
    #[arg(long, default_value_t = 0.25)]
    test_fraction: f64,
    /// Seed for the split and the cross-validation folds
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Cross-validation folds
    #[arg(long, default_value_t = DEFAULT_FOLDS)]
    folds: usize,
    /// Use this k instead of searching
    #[arg(long)]
    k: Option<usize>,
    /// Where to save the model fitted on all rows
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the held-out scores and misses
    #[arg(long)]
    report: bool,
}

#[derive(Debug, Args)]
struct PredictArgs {
    /// Sub-system size model (JSON)
    #[arg(long)]
    model: PathBuf,
    /// System size
    #[arg(long)]
    size: u64,
    /// Recursion depth, or `auto` to ask the depth model
    #[arg(long)]
    recursions: Option<String>,
    /// Recursion depth model (JSON), needed for `--recursions auto`
    #[arg(long)]
    depth_model: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Model (JSON)
    #[arg(long)]
    model: PathBuf,
    /// Observations CSV holding a single (precision, device) group
    #[arg(long)]
    data: PathBuf,
    /// Score against the corrected labels
    #[arg(long)]
    use_corrected: bool,
    /// Directory for the true-vs-predicted scatter data
    #[arg(long, value_name = "DIR")]
    plot_data: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

type CmdResult = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

struct Session<'a> {
    data_dir: Option<PathBuf>,
    out: &'a mut dyn Write,
}

impl Session<'_> {
    fn input(&self, path: &Path) -> PathBuf {
        match &self.data_dir {
            Some(dir) if path.is_relative() && !path.exists() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    fn line(&mut self, text: impl AsRef<str>) -> anyhow::Result<()> {
        writeln!(self.out, "{}", text.as_ref()).context("writing output")
    }

    fn read_model(&self, path: &Path) -> anyhow::Result<HeuristicModel> {
        let path = self.input(path);
        load_model(&path).with_context(|| format!("loading {}", path.display()))
    }

    fn read_sets(&self, path: &Path) -> anyhow::Result<Vec<ObservationSet>> {
        let path = self.input(path);
        read_observation_sets(&path).with_context(|| format!("reading {}", path.display()))
    }

    fn read_single(&self, path: &Path) -> anyhow::Result<ObservationSet> {
        let mut sets = self.read_sets(path)?;
        if sets.len() != 1 {
            bail!("{} holds {} (precision, device) groups, expected one", path.display(), sets.len());
        }
        Ok(sets.remove(0))
    }
}

/// Parses `args` (program name first), runs the command, and returns the exit code:
/// 0 on success, 1 on usage errors, 2 on data or solver errors.
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return 1;
        }
    };
    let data_dir = cli.data_dir.or_else(|| std::env::var_os(DATA_DIR_ENV).map(PathBuf::from));
    let mut ctx = Session { data_dir, out };
    let result = match cli.command {
        Command::Solve(a) => match a.system.precision {
            Precision::Fp64 => solve::<f64>(&mut ctx, &a),
            Precision::Fp32 => solve::<f32>(&mut ctx, &a),
        },
        Command::Bench(b) => bench(&mut ctx, b),
        Command::Correct(a) => correct(&mut ctx, &a),
        Command::Fit(a) => fit(&mut ctx, &a),
        Command::Predict(a) => predict(&mut ctx, &a),
        Command::Report(a) => report(&mut ctx, &a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn solve<T: Scalar>(ctx: &mut Session, a: &SolveArgs) -> CmdResult {
    let policy = RecursionPolicy::uniform(a.m, a.recursions).map_err(|e| Failure::Usage(e.to_string()))?;
    let system = generate_system::<T>(a.size, a.system.seed, a.system.dominance).map_err(|e| Failure::Usage(e.to_string()))?;
    let x = solve_partition(&system, &policy).context("partition solve")?;
    let residual = residual_inf(&system, &x);
    ctx.line(format!("n {} sizes {:?} precision {}", a.size, policy.sizes(), T::PRECISION))?;
    ctx.line(format!("residual {residual:e}"))?;
    if a.check {
        let reference = thomas_solve(&system).context("Thomas solve")?;
        let scale = reference.iter().fold(0.0_f64, |acc, v| acc.max(v.as_f64().abs())).max(f64::MIN_POSITIVE);
        let diff = x.iter().zip(&reference).fold(0.0_f64, |acc, (p, q)| acc.max((p.as_f64() - q.as_f64()).abs()));
        let rel = diff / scale;
        ctx.line(format!("thomas_relative_difference {rel:e}"))?;
        let limit = match T::PRECISION {
            Precision::Fp64 => 1e-10,
            Precision::Fp32 => 1e-4,
        };
        if !(rel <= limit) || !(residual <= T::RESIDUAL_GATE) {
            return Err(anyhow::anyhow!("check failed: relative difference {rel:e}, residual {residual:e}").into());
        }
        ctx.line("check ok")?;
    }
    Ok(())
}

fn clock_for(ctx: &Session, timing: &TimingArgs) -> anyhow::Result<Box<dyn Clock>> {
    Ok(match &timing.fake_clock {
        Some(path) => Box::new(FakeClock::read_trace(ctx.input(path))?),
        None => Box::new(MonotonicClock),
    })
}

fn bench(ctx: &mut Session, cmd: BenchCommand) -> CmdResult {
    match cmd {
        BenchCommand::SweepM { size, m_list, timing, system } => {
            if let Some(&bad) = m_list.iter().find(|&&m| m < 2) {
                return usage(format!("--m-list entries must be at least 2, got {bad}"));
            }
            let set = match system.precision {
                Precision::Fp64 => sweep_sizes::<f64>(ctx, &size, &timing, &system, |sys, clock| {
                    sweep_m(sys, &m_list, timing.runs, clock)
                })?,
                Precision::Fp32 => sweep_sizes::<f32>(ctx, &size, &timing, &system, |sys, clock| {
                    sweep_m(sys, &m_list, timing.runs, clock)
                })?,
            };
            write_sweep(ctx, &set, &timing.out)
        }
        BenchCommand::SweepR { size, max_r, model, timing, system } => {
            let model = ctx.read_model(&model)?;
            if model.metadata().target != Target::SubsystemSize {
                return usage("--model must be a sub-system size model");
            }
            let set = match system.precision {
                Precision::Fp64 => sweep_sizes::<f64>(ctx, &size, &timing, &system, |sys, clock| {
                    sweep_r(sys, max_r, &model, timing.runs, clock)
                })?,
                Precision::Fp32 => sweep_sizes::<f32>(ctx, &size, &timing, &system, |sys, clock| {
                    sweep_r(sys, max_r, &model, timing.runs, clock)
                })?,
            };
            write_sweep(ctx, &set, &timing.out)
        }
    }
}

fn sweep_sizes<T: Scalar>(
    ctx: &mut Session,
    sizes: &[usize],
    timing: &TimingArgs,
    system: &SystemArgs,
    mut sweep: impl FnMut(&crate::solver::TridiagonalSystem<T>, &mut dyn Clock) -> crate::bench::Result<crate::bench::SweepResult>,
) -> Result<ObservationSet, Failure> {
    if timing.runs == 0 {
        return usage("--runs must be at least 1");
    }
    let mut clock = clock_for(ctx, timing)?;
    let mut results = Vec::with_capacity(sizes.len());
    let mut kind = DatasetKind::SubsystemSize;
    for &n in sizes {
        let sys = generate_system::<T>(n, system.seed, system.dominance).map_err(|e| Failure::Usage(e.to_string()))?;
        let res = sweep(&sys, clock.as_mut()).with_context(|| format!("sweep at N={n}"))?;
        ctx.line(format!("N {n} best {} clock {}", res.argmin, res.clock_id))?;
        kind = res.kind;
        results.push(res);
    }
    Ok(observation_set(&results, kind, T::PRECISION, &timing.device).context("collecting sweep results")?)
}

fn write_sweep(ctx: &mut Session, set: &ObservationSet, out: &Path) -> CmdResult {
    write_observation_sets(std::slice::from_ref(set), out).with_context(|| format!("writing {}", out.display()))?;
    ctx.line(format!("wrote {} rows to {}", set.len(), out.display()))?;
    Ok(())
}

fn correct(ctx: &mut Session, a: &CorrectArgs) -> CmdResult {
    if !(a.tolerance >= 0.0) || !a.tolerance.is_finite() {
        return usage(format!("--tolerance must be a finite non-negative number, got {}", a.tolerance));
    }
    let sets = ctx.read_sets(&a.data)?;
    let corrected = sets
        .iter()
        .map(|s| apply_plateau_correction(s, a.tolerance).with_context(|| format!("correcting {}", s.device())))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let changed: usize = sets
        .iter()
        .zip(&corrected)
        .flat_map(|(s, c)| s.rows().iter().zip(c.rows()))
        .filter(|(r, c)| Some(r.label) != c.corrected_label)
        .count();
    write_observation_sets(&corrected, &a.out).with_context(|| format!("writing {}", a.out.display()))?;
    ctx.line(format!("relabelled {changed} rows; wrote {}", a.out.display()))?;
    Ok(())
}

fn source(use_corrected: bool) -> LabelSource {
    if use_corrected {
        LabelSource::Corrected
    } else {
        LabelSource::Observed
    }
}

fn fit(ctx: &mut Session, a: &FitArgs) -> CmdResult {
    if !(a.test_fraction > 0.0 && a.test_fraction < 1.0) {
        return usage(format!("--test-fraction must lie strictly between 0 and 1, got {}", a.test_fraction));
    }
    if a.folds < 2 {
        return usage("--folds must be at least 2");
    }
    let set = ctx.read_single(&a.data)?;
    let points = set.points(source(a.use_corrected)).context("selecting labels")?;
    let k = match (a.k, set.kind()) {
        (Some(k), _) => k,
        (None, DatasetKind::RecursionDepth) => 1,
        (None, DatasetKind::SubsystemSize) => {
            let grid = grid_search_k(&points, a.folds, a.seed).context("cross-validating k")?;
            if a.report {
                for (k, score) in &grid.scores {
                    ctx.line(format!("cv k={k} accuracy {score:?}"))?;
                }
            }
            grid.k
        }
    };
    ctx.line(format!("k {k}"))?;

    if a.report {
        let spec = SplitSpec { test_fraction: a.test_fraction, seed: a.seed, stratified: true };
        let (train, test) = split(&points, spec).context("splitting")?;
        let model = fit_knn(&train, k).context("fitting on the training split")?;
        let scores = evaluate(&model, &train, &test).context("scoring")?;
        ctx.line(format!("train {} test {}", train.len(), test.len()))?;
        ctx.line(format!("accuracy {:?}", scores.accuracy))?;
        ctx.line(format!("null_accuracy {:?}", scores.null_accuracy))?;
        for miss in scores.misses() {
            ctx.line(format!("miss N={} true={} predicted={}", miss.n, miss.truth, miss.predicted))?;
        }
    }

    let model = fit_knn(&points, k).context("fitting on all rows")?.with_source(&set);
    if let Some(out) = &a.out {
        save_model(&model, out).with_context(|| format!("writing {}", out.display()))?;
        ctx.line(format!("wrote {}", out.display()))?;
    }
    Ok(())
}

fn predict(ctx: &mut Session, a: &PredictArgs) -> CmdResult {
    if a.size == 0 {
        return usage("--size must be positive");
    }
    let model = ctx.read_model(&a.model)?;
    ctx.line(model.predict(a.size).to_string())?;
    let Some(rec) = &a.recursions else {
        if a.depth_model.is_some() {
            return usage("--depth-model needs --recursions auto");
        }
        return Ok(());
    };
    let depth = if rec == "auto" {
        let Some(path) = &a.depth_model else {
            return usage("--recursions auto needs --depth-model");
        };
        let depth_model = ctx.read_model(path)?;
        if depth_model.metadata().target != Target::RecursionDepth {
            return usage("--depth-model must be a recursion depth model");
        }
        depth_model.predict(a.size) as usize
    } else {
        match rec.parse() {
            Ok(r) => r,
            Err(_) => return usage(format!("--recursions takes a depth or `auto`, got `{rec}`")),
        }
    };
    let policy = recursion_sizes(a.size, depth, &model).context("deriving the policy")?;
    ctx.line(format!("depth {depth}"))?;
    let sizes: Vec<String> = policy.sizes().iter().map(ToString::to_string).collect();
    ctx.line(format!("sizes {}", sizes.join(",")))?;
    Ok(())
}

fn report(ctx: &mut Session, a: &ReportArgs) -> CmdResult {
    let model = ctx.read_model(&a.model)?;
    let set = ctx.read_single(&a.data)?;
    let points = set.points(source(a.use_corrected)).context("selecting labels")?;
    let scores = evaluate(&model, model.points(), &points).context("scoring")?;
    ctx.line(format!("k {} rows {}", model.k(), points.len()))?;
    ctx.line(format!("accuracy {:?}", scores.accuracy))?;
    ctx.line(format!("null_accuracy {:?}", scores.null_accuracy))?;
    for r in &scores.records {
        let mark = if r.correct() { "ok" } else { "MISS" };
        ctx.line(format!("N={} true={} predicted={} {mark}", r.n, r.truth, r.predicted))?;
    }
    if model.metadata().target == Target::SubsystemSize {
        let align = alignment_report(&model);
        ctx.line(format!("alignment {}", align.summary()))?;
        for e in align.misaligned() {
            ctx.line(format!("misaligned N={} predicted={}", e.n, e.predicted))?;
        }
    }
    if let Some(dir) = &a.plot_data {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let file = dir.join(format!("{}_{}_scatter.csv", set.device(), set.precision()));
        let mut text = String::from("N,true,predicted\n");
        for r in &scores.records {
            text.push_str(&format!("{},{},{}\n", r.n, r.truth, r.predicted));
        }
        std::fs::write(&file, text).with_context(|| format!("writing {}", file.display()))?;
        ctx.line(format!("wrote {}", file.display()))?;
    }
    Ok(())
}
