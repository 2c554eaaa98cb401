//! Experiment runner: one (instance, algorithm) cell per config, producing
//! a metrics row and a trace; grids run in parallel.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{
    augment, bit_scaling, geometric_scaling, mra_cutting_plane, mra_exact, BitScaleConfig,
    BitScaleVariant, Budget, GeoConfig, MraSearch, MuInit, RunOptions,
};
use crate::error::{Error, Result};
use crate::generate::{generate, Generated, GeneratorSpec};
use crate::instance::FeasibleSet;
use crate::io::{read_instance, LoadedInstance};
use crate::metrics::{primal_integral, TimeAxis};
use crate::numeric::{exact_string, to_f64};
use crate::oracle::{Oracle, OraclePolicy, Outcome};
use crate::potential::PotentialKind;
use crate::trace::{Status, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgoKind {
    Augment,
    Bitscale,
    Geom,
    Mra,
    MraExact,
}

impl std::str::FromStr for AlgoKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "augment" => Ok(AlgoKind::Augment),
            "bitscale" => Ok(AlgoKind::Bitscale),
            "geom" => Ok(AlgoKind::Geom),
            "mra" => Ok(AlgoKind::Mra),
            "mra-exact" => Ok(AlgoKind::MraExact),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSource {
    File(PathBuf),
    Generator(GeneratorSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartPoint {
    /// `y^{2k}` on the worst-case family, the minimizer of `c` elsewhere.
    Auto,
    Worst,
    Given(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instance: InstanceSource,
    pub algorithm: AlgoKind,
    pub variant: BitScaleVariant,
    pub policy: OraclePolicy,
    pub potential: PotentialKind,
    pub mu_factor: u32,
    pub mu_init: MuInit,
    pub budget_calls: u64,
    pub time_axis: TimeAxis,
    pub checked: bool,
    pub start: StartPoint,
    /// Skip bit-scaling's refusal of degenerate objectives.
    pub force: bool,
    pub trace_path: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(instance: InstanceSource, algorithm: AlgoKind) -> Self {
        ExperimentConfig {
            instance,
            algorithm,
            variant: BitScaleVariant::Classic,
            policy: OraclePolicy::Optimal,
            potential: PotentialKind::L1,
            mu_factor: 2,
            mu_init: MuInit::Theory,
            budget_calls: crate::algorithms::DEFAULT_MAX_ORACLE_CALLS,
            time_axis: TimeAxis::Calls,
            checked: false,
            start: StartPoint::Auto,
            force: false,
            trace_path: None,
        }
    }

    pub fn instance_id(&self) -> String {
        match &self.instance {
            InstanceSource::File(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            InstanceSource::Generator(g) => g.id(),
        }
    }

    pub fn algorithm_label(&self) -> String {
        let policy = policy_name(self.policy);
        let pot = potential_name(self.potential);
        match self.algorithm {
            AlgoKind::Augment => format!("augment-{policy}"),
            AlgoKind::Bitscale => format!(
                "bitscale-{}-{policy}",
                format!("{:?}", self.variant).to_lowercase()
            ),
            AlgoKind::Geom => {
                let init = match self.mu_init {
                    MuInit::Theory => "theory",
                    MuInit::SolutionPower => "solution",
                };
                format!("geom-{pot}-f{}-{init}-{policy}", self.mu_factor)
            }
            AlgoKind::Mra => "mra-l1".to_string(),
            AlgoKind::MraExact => format!("mra-exact-{pot}"),
        }
    }
}

pub fn policy_name(p: OraclePolicy) -> String {
    match p {
        OraclePolicy::Optimal => "optimal".into(),
        OraclePolicy::FirstImproving => "first".into(),
        OraclePolicy::LeastImproving => "least".into(),
        OraclePolicy::MaxRatio(k) => format!("maxratio-{}", potential_name(k)),
    }
}

pub fn potential_name(k: PotentialKind) -> &'static str {
    match k {
        PotentialKind::Standard => "standard",
        PotentialKind::L1 => "l1",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub instance: String,
    pub algorithm: String,
    pub status: String,
    pub n_improvements: u64,
    pub n_subproblems: u64,
    pub n_phases: u64,
    pub n_exhaust: u64,
    /// Objective values in file units (original scale and sense).
    pub final_value: Option<BigRational>,
    pub best_value: Option<BigRational>,
    pub optimal: bool,
    pub primal_integral: Option<BigRational>,
    pub wall_secs: f64,
    pub message: String,
}

impl MetricsRow {
    pub fn key(&self) -> (String, String) {
        (self.instance.clone(), self.algorithm.clone())
    }

    fn failed(cfg: &ExperimentConfig, status: Status, message: String, wall: f64) -> Self {
        MetricsRow {
            instance: cfg.instance_id(),
            algorithm: cfg.algorithm_label(),
            status: status.to_string(),
            n_improvements: 0,
            n_subproblems: 0,
            n_phases: 0,
            n_exhaust: 0,
            final_value: None,
            best_value: None,
            optimal: false,
            primal_integral: None,
            wall_secs: wall,
            message,
        }
    }
}

fn load(cfg: &ExperimentConfig) -> Result<Generated> {
    match &cfg.instance {
        InstanceSource::File(p) => Ok(Generated::Instance(read_instance(p)?)),
        InstanceSource::Generator(g) => generate(g),
    }
}

/// Minimizer of `c` (ties to the lexicographically smallest point).
pub fn worst_point<F: FeasibleSet + ?Sized>(set: &F, node_cap: u64) -> Result<Vec<i64>> {
    let neg: Vec<i64> = set.objective().coeffs().iter().map(|&c| -c).collect();
    match Oracle::new(set)
        .with_node_cap(node_cap)
        .solve_exact(&neg, None)?
        .outcome
    {
        Outcome::OptimalCertified { x, .. } | Outcome::Point { x, .. } => Ok(x),
        Outcome::Infeasible => Err(Error::InvalidInstance(
            "instance has no feasible point".into(),
        )),
    }
}

/// Maximum of `c·x`, in internal integer units.
pub fn optimum<F: FeasibleSet + ?Sized>(set: &F, node_cap: u64) -> Result<(Vec<i64>, i128)> {
    match Oracle::new(set)
        .with_node_cap(node_cap)
        .solve_exact(set.objective().coeffs(), None)?
        .outcome
    {
        Outcome::OptimalCertified { x, value } | Outcome::Point { x, value, .. } => Ok((x, value)),
        Outcome::Infeasible => Err(Error::InvalidInstance(
            "instance has no feasible point".into(),
        )),
    }
}

/// Converts an internal value to file units.
pub fn file_value(inst: &LoadedInstance, v: i128) -> BigRational {
    let q = BigRational::from_integer(BigInt::from(v)) / inst.set().objective().scale();
    if inst.negated {
        -q
    } else {
        q
    }
}

/// Runs one algorithm on a feasible set.
pub fn run_algorithm<F: FeasibleSet + ?Sized>(
    cfg: &ExperimentConfig,
    set: &F,
    x0: &[i64],
) -> Result<Trace> {
    let opts = RunOptions {
        budget: Budget {
            max_oracle_calls: cfg.budget_calls,
            wall_limit: None,
        },
        checked: cfg.checked,
        ..RunOptions::default()
    };
    match cfg.algorithm {
        AlgoKind::Augment => augment(set, x0, cfg.policy, &opts),
        AlgoKind::Bitscale => {
            let bc = BitScaleConfig {
                variant: cfg.variant,
                policy: cfg.policy,
                skip_proportional: true,
                require_applicable: !cfg.force,
            };
            bit_scaling(set, x0, &bc, &opts)
        }
        AlgoKind::Geom => {
            let gc = GeoConfig {
                potential: cfg.potential,
                mu_factor: cfg.mu_factor,
                mu_init: cfg.mu_init,
                use_cutoff: true,
            };
            geometric_scaling(set, x0, &gc, cfg.policy, &opts)
        }
        AlgoKind::Mra => mra_cutting_plane(set, x0, &MraSearch::default(), &opts),
        AlgoKind::MraExact => mra_exact(set, x0, cfg.potential, &opts),
    }
}

/// Runs one cell. Algorithm failures become `ERROR` rows and budget
/// exhaustion becomes `BUDGET_EXCEEDED` rows; only load and I/O problems
/// are returned as errors.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<(MetricsRow, Option<Trace>)> {
    let clock = Instant::now();
    let generated = load(cfg)?;
    let inst = generated.loaded();
    let set = inst.set();
    let node_cap = crate::instance::DEFAULT_NODE_CAP;
    let x0 = match (&cfg.start, &generated) {
        (StartPoint::Given(x), _) => x.clone(),
        (StartPoint::Auto, Generated::Worstcase(w)) => w.start(),
        _ => worst_point(set, node_cap)?,
    };
    let best = match optimum(set, node_cap) {
        Ok((_, v)) => v,
        Err(Error::ResourceLimit { cap }) => {
            let msg = format!("reference solve hit the node cap of {cap}");
            return Ok((
                MetricsRow::failed(
                    cfg,
                    Status::BudgetExceeded,
                    msg,
                    clock.elapsed().as_secs_f64(),
                ),
                None,
            ));
        }
        Err(e) => return Err(e),
    };
    let trace = match run_algorithm(cfg, set, &x0) {
        Ok(t) => t,
        Err(e @ (Error::Io(_) | Error::Json(_))) => return Err(e),
        Err(e) => {
            let row = MetricsRow::failed(
                cfg,
                Status::Error,
                e.to_string(),
                clock.elapsed().as_secs_f64(),
            );
            return Ok((row, None));
        }
    };
    let wall = clock.elapsed().as_secs_f64();
    let horizon = match cfg.time_axis {
        TimeAxis::Calls => {
            let calls = trace.events.last().map_or(0, |e| e.oracle_calls).max(1);
            BigRational::from_integer(BigInt::from(calls))
        }
        TimeAxis::Wall => {
            let t = trace
                .events
                .last()
                .map_or(0.0, |e| e.elapsed_secs)
                .max(1e-9);
            BigRational::from_float(t).unwrap_or_else(BigRational::zero)
        }
    };
    let pi = primal_integral(
        &trace,
        &BigRational::from_integer(BigInt::from(best)),
        &horizon,
        cfg.time_axis,
    );
    let status = trace.status.unwrap_or(Status::Error);
    let row = MetricsRow {
        instance: cfg.instance_id(),
        algorithm: cfg.algorithm_label(),
        status: status.to_string(),
        n_improvements: trace.counters.n_improvements,
        n_subproblems: trace.counters.n_subproblems,
        n_phases: trace.counters.n_phases,
        n_exhaust: trace.counters.n_exhaust,
        final_value: Some(file_value(&inst, trace.final_value)),
        best_value: Some(file_value(&inst, best)),
        optimal: status == Status::Optimal && trace.final_value == best,
        primal_integral: Some(pi),
        wall_secs: wall,
        message: trace.message.clone().unwrap_or_default(),
    };
    if let Some(path) = &cfg.trace_path {
        let f = std::io::BufWriter::new(std::fs::File::create(path)?);
        trace.write_jsonl(f, true)?;
    }
    Ok((row, Some(trace)))
}

/// Runs every cell in parallel; rows come back sorted by (instance, algorithm).
pub fn run_grid(configs: &[ExperimentConfig]) -> Result<Vec<MetricsRow>> {
    let mut rows = configs
        .par_iter()
        .map(|c| run_experiment(c).map(|(row, _)| row))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(MetricsRow::key);
    Ok(rows)
}

pub const CSV_HEADER: [&str; 16] = [
    "instance",
    "algorithm",
    "status",
    "n_improvements",
    "n_subproblems",
    "n_phases",
    "n_exhaust",
    "final_value",
    "final_value_exact",
    "best_value",
    "best_value_exact",
    "optimal",
    "primal_integral",
    "primal_integral_exact",
    "wall_secs",
    "message",
];

fn decimal(q: &Option<BigRational>) -> String {
    q.as_ref()
        .map_or(String::new(), |q| format!("{:.6}", to_f64(q)))
}

fn exact(q: &Option<BigRational>) -> String {
    q.as_ref().map_or(String::new(), exact_string)
}

/// Writes rows (sorted by key) with a header row.
pub fn write_csv<W: std::io::Write>(w: W, rows: &[MetricsRow]) -> Result<()> {
    let mut rows: Vec<&MetricsRow> = rows.iter().collect();
    rows.sort_by_key(|r| r.key());
    let mut out = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    out.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        out.write_record([
            r.instance.clone(),
            r.algorithm.clone(),
            r.status.clone(),
            r.n_improvements.to_string(),
            r.n_subproblems.to_string(),
            r.n_phases.to_string(),
            r.n_exhaust.to_string(),
            decimal(&r.final_value),
            exact(&r.final_value),
            decimal(&r.best_value),
            exact(&r.best_value),
            r.optimal.to_string(),
            decimal(&r.primal_integral),
            exact(&r.primal_integral),
            format!("{:.6}", r.wall_secs),
            r.message.clone(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv_file(path: &Path, rows: &[MetricsRow]) -> Result<()> {
    write_csv(std::io::BufWriter::new(std::fs::File::create(path)?), rows)
}

/// Parses a CSV written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<MetricsRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    let opt = |s: &str| -> Result<Option<BigRational>> {
        if s.is_empty() {
            Ok(None)
        } else {
            crate::numeric::parse_rational(s).map(Some)
        }
    };
    let num = |s: &str| {
        s.parse::<u64>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    };
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() != CSV_HEADER.len() {
            return Err(Error::Parse(format!(
                "expected {} columns, got {}",
                CSV_HEADER.len(),
                rec.len()
            )));
        }
        rows.push(MetricsRow {
            instance: rec[0].to_string(),
            algorithm: rec[1].to_string(),
            status: rec[2].to_string(),
            n_improvements: num(&rec[3])?,
            n_subproblems: num(&rec[4])?,
            n_phases: num(&rec[5])?,
            n_exhaust: num(&rec[6])?,
            final_value: opt(&rec[8])?,
            best_value: opt(&rec[10])?,
            optimal: &rec[11] == "true",
            primal_integral: opt(&rec[13])?,
            wall_secs: rec[14]
                .parse()
                .map_err(|e| Error::Parse(format!("wall_secs: {e}")))?,
            message: rec[15].to_string(),
        });
    }
    Ok(rows)
}
