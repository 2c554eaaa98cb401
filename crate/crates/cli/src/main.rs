use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use auglab::algorithms::{BitScaleVariant, MuInit, CHECKED_ENV};
use auglab::experiment::{
    read_csv, run_experiment, run_grid, write_csv, AlgoKind, ExperimentConfig, InstanceSource,
    StartPoint,
};
use auglab::generate::{generate, Generated, GeneratorKind, GeneratorSpec};
use auglab::io::{loaded_to_json, write_json, write_worstcase};
use auglab::metrics::{shifted_geomean, TimeAxis};
use auglab::worstcase::{
    build_worstcase, predicted_adversarial_count, verify_orderings, WorstCaseParams,
};
use auglab::{OraclePolicy, PotentialKind};

#[derive(Parser)]
#[command(
    name = "auglab",
    version,
    about = "Primal augmentation lab for bounded integer programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as JSON.
    Generate(GenerateArgs),
    /// Run algorithms on instances and write a metrics CSV.
    Run(RunArgs),
    /// Build the worst-case family and check its ordering identities.
    VerifyWorstcase(VerifyArgs),
    /// Summarize a metrics CSV with shifted geometric means.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    RandomKnapsack,
    RandomSetpack,
    CardinalityK,
    Worstcase,
}

impl From<KindArg> for GeneratorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::RandomKnapsack => GeneratorKind::RandomKnapsack,
            KindArg::RandomSetpack => GeneratorKind::RandomSetpack,
            KindArg::CardinalityK => GeneratorKind::CardinalityK,
            KindArg::Worstcase => GeneratorKind::Worstcase,
        }
    }
}

#[derive(Args)]
struct GenSpecArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    p: usize,
    #[arg(long, default_value_t = 100)]
    c_max: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenSpecArgs {
    fn spec(&self, kind: KindArg) -> GeneratorSpec {
        GeneratorSpec::new(kind.into(), self.n, self.seed)
            .with_k(self.k)
            .with_p(self.p)
            .with_c_max(self.c_max)
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: KindArg,
    #[command(flatten)]
    spec: GenSpecArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Augment,
    Bitscale,
    Geom,
    Mra,
    MraExact,
}

impl From<AlgoArg> for AlgoKind {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Augment => AlgoKind::Augment,
            AlgoArg::Bitscale => AlgoKind::Bitscale,
            AlgoArg::Geom => AlgoKind::Geom,
            AlgoArg::Mra => AlgoKind::Mra,
            AlgoArg::MraExact => AlgoKind::MraExact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Classic,
    Incomplete,
    Noimprove,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Optimal,
    First,
    Least,
    Maxratio,
}

#[derive(Clone, Copy, ValueEnum)]
enum PotentialArg {
    Standard,
    L1,
}

#[derive(Clone, Copy, ValueEnum)]
enum MuInitArg {
    Theory,
    Solution,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Wall,
    Calls,
}

#[derive(Args)]
struct RunArgs {
    /// Instance files (H-rep or V-rep JSON).
    #[arg(long = "instance")]
    instances: Vec<PathBuf>,
    /// Generate the instance instead of reading a file.
    #[arg(long, value_enum, conflicts_with = "instances")]
    generate: Option<KindArg>,
    #[command(flatten)]
    spec: GenSpecArgs,
    /// Algorithms to run; repeat for a grid.
    #[arg(long = "algo", value_enum, required = true)]
    algos: Vec<AlgoArg>,
    #[arg(long, value_enum, default_value = "classic")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "optimal")]
    policy: PolicyArg,
    #[arg(long, value_enum, default_value = "l1")]
    potential: PotentialArg,
    #[arg(long, default_value_t = 2)]
    mu_factor: u32,
    #[arg(long, value_enum, default_value = "theory")]
    mu_init: MuInitArg,
    #[arg(long, default_value_t = auglab::algorithms::DEFAULT_MAX_ORACLE_CALLS)]
    budget_calls: u64,
    #[arg(long, value_enum, default_value = "wall")]
    time_axis: AxisArg,
    /// Start point as comma-separated integers (default: the worst point).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    start: Option<Vec<i64>>,
    /// Run bit scaling even on objectives it would refuse.
    #[arg(long)]
    force: bool,
    /// Trace file (JSON lines); only with a single cell.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Metrics CSV; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    p: usize,
    /// Also write the instance and its cost-level sidecar.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print every identity, not only failures.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct ReportArgs {
    csv: PathBuf,
    /// Shift for time aggregates.
    #[arg(long, default_value_t = 10.0)]
    time_shift: f64,
    /// Shift for count aggregates.
    #[arg(long, default_value_t = 100.0)]
    count_shift: f64,
}

fn checked_from_env() -> bool {
    std::env::var(CHECKED_ENV).is_ok_and(|v| v == "1")
}

fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let spec = args.spec.spec(args.kind);
    match generate(&spec)? {
        Generated::Worstcase(w) => {
            let side = write_worstcase(&w, &args.out)?;
            eprintln!("wrote {} and {}", args.out.display(), side.display());
        }
        Generated::Instance(inst) => {
            write_json(&args.out, &loaded_to_json(&inst))?;
            eprintln!("wrote {}", args.out.display());
        }
    }
    Ok(())
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let sources: Vec<InstanceSource> = match args.generate {
        Some(kind) => vec![InstanceSource::Generator(args.spec.spec(kind))],
        None if args.instances.is_empty() => bail!("give --instance FILE or --generate KIND"),
        None => args
            .instances
            .iter()
            .cloned()
            .map(InstanceSource::File)
            .collect(),
    };
    let potential = match args.potential {
        PotentialArg::Standard => PotentialKind::Standard,
        PotentialArg::L1 => PotentialKind::L1,
    };
    let mut configs = Vec::new();
    for src in &sources {
        for &algo in &args.algos {
            let mut cfg = ExperimentConfig::new(src.clone(), algo.into());
            cfg.variant = match args.variant {
                VariantArg::Classic => BitScaleVariant::Classic,
                VariantArg::Incomplete => BitScaleVariant::Incomplete,
                VariantArg::Noimprove => BitScaleVariant::NoImprove,
                VariantArg::Complete => BitScaleVariant::Complete,
            };
            cfg.policy = match args.policy {
                PolicyArg::Optimal => OraclePolicy::Optimal,
                PolicyArg::First => OraclePolicy::FirstImproving,
                PolicyArg::Least => OraclePolicy::LeastImproving,
                PolicyArg::Maxratio => OraclePolicy::MaxRatio(potential),
            };
            cfg.potential = potential;
            cfg.mu_factor = args.mu_factor;
            cfg.mu_init = match args.mu_init {
                MuInitArg::Theory => MuInit::Theory,
                MuInitArg::Solution => MuInit::SolutionPower,
            };
            cfg.budget_calls = args.budget_calls;
            cfg.time_axis = match args.time_axis {
                AxisArg::Wall => TimeAxis::Wall,
                AxisArg::Calls => TimeAxis::Calls,
            };
            cfg.checked = checked_from_env();
            cfg.force = args.force;
            if let Some(x) = &args.start {
                cfg.start = StartPoint::Given(x.clone());
            }
            configs.push(cfg);
        }
    }
    let rows = if let Some(trace) = &args.trace {
        if configs.len() != 1 {
            bail!("--trace needs exactly one instance and one algorithm");
        }
        configs[0].trace_path = Some(trace.clone());
        vec![run_experiment(&configs[0])?.0]
    } else {
        run_grid(&configs)?
    };
    match &args.out {
        Some(path) => {
            let f = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            write_csv(std::io::BufWriter::new(f), &rows)?;
        }
        None => write_csv(std::io::stdout().lock(), &rows)?,
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let params = WorstCaseParams::new(args.k, args.p)?;
    let inst = build_worstcase(params)?;
    let report = verify_orderings(&inst);
    for c in &report.checks {
        if args.verbose || !c.pass {
            println!(
                "{} level={} c·y^{}={} c·y^{}={} {:?}",
                if c.pass { "ok  " } else { "FAIL" },
                c.level,
                c.upper,
                c.upper_value,
                c.lower,
                c.lower_value,
                c.kind
            );
        }
    }
    let failed = report.failures().count();
    println!(
        "k={} p={} n={} identities={} failed={} predicted_adversarial_augmentations={}",
        params.k,
        params.p,
        params.dim(),
        report.checks.len(),
        failed,
        predicted_adversarial_count(params)
    );
    if let Some(out) = &args.out {
        if failed > 0 {
            bail!("not writing an instance that fails verification");
        }
        write_worstcase(&inst, out)?;
    }
    Ok(failed == 0)
}

fn cmd_report(args: &ReportArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.csv)
        .with_context(|| format!("reading {}", args.csv.display()))?;
    let rows = read_csv(&text)?;
    let mut groups: BTreeMap<&str, Vec<&auglab::experiment::MetricsRow>> = BTreeMap::new();
    for r in &rows {
        groups.entry(&r.algorithm).or_default().push(r);
    }
    println!("algorithm,runs,optimal,improv,subprob,phases,exhaust,prim_int,wall_secs");
    for (algo, rs) in groups {
        let sgm = |f: &dyn Fn(&auglab::experiment::MetricsRow) -> f64, s: f64| {
            shifted_geomean(&rs.iter().map(|r| f(r)).collect::<Vec<_>>(), s)
        };
        let pi: Vec<f64> = rs
            .iter()
            .filter_map(|r| r.primal_integral.as_ref())
            .map(auglab::numeric::to_f64)
            .collect();
        let pi_mean = if pi.is_empty() {
            String::new()
        } else {
            format!("{:.3}", shifted_geomean(&pi, args.time_shift)?)
        };
        println!(
            "{algo},{},{},{:.2},{:.2},{:.2},{:.2},{pi_mean},{:.4}",
            rs.len(),
            rs.iter().filter(|r| r.optimal).count(),
            sgm(&|r| r.n_improvements as f64, args.count_shift)?,
            sgm(&|r| r.n_subproblems as f64, args.count_shift)?,
            sgm(&|r| r.n_phases as f64, args.count_shift)?,
            sgm(&|r| r.n_exhaust as f64, args.count_shift)?,
            sgm(&|r| r.wall_secs, args.time_shift)?,
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a).map(|_| true),
        Command::Run(a) => cmd_run(a).map(|_| true),
        Command::VerifyWorstcase(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
