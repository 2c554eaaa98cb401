//! Augmentation schemes: plain augmentation, bit scaling, geometric
//! scaling, and maximum-ratio augmentation (exact and cutting-plane).
//!
//! Every scheme runs through a [`Runner`], which owns the trace, enforces
//! the budget, exhausts each improving direction, and (in checked mode)
//! re-validates oracle answers and run-level invariants.

mod augment;
mod bitscale;
mod geometric;
mod mra;

pub use augment::augment;
pub use bitscale::{bit_scaling, BitScaleConfig, BitScaleVariant};
pub use geometric::{geometric_scaling, GeoConfig, MuInit, MU_SOLUTION_CAP};
pub use mra::{mra_cutting_plane, mra_exact, MraSearch};

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::instance::{difference, exhaust_direction, FeasibleSet, FlipMap};
use crate::numeric::{exact_string, rat};
use crate::oracle::{Oracle, OracleAnswer, OracleCounters, OraclePolicy, OracleQuery, Outcome};
use crate::trace::{EventKind, Status, Trace};

pub const DEFAULT_MAX_ORACLE_CALLS: u64 = 100_000;
pub const CHECKED_ENV: &str = "AUGLAB_CHECKED";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub max_oracle_calls: u64,
    pub wall_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_oracle_calls: DEFAULT_MAX_ORACLE_CALLS,
            wall_limit: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub budget: Budget,
    pub node_cap: u64,
    pub checked: bool,
    /// Feasibility tolerance ε behind the improving-cut δ.
    pub epsilon: BigRational,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: Budget::default(),
            node_cap: crate::instance::DEFAULT_NODE_CAP,
            checked: false,
            epsilon: rat(1, 1_000_000),
        }
    }
}

impl RunOptions {
    /// Defaults, with checked mode taken from `AUGLAB_CHECKED=1`.
    pub fn from_env() -> Self {
        let checked = std::env::var(CHECKED_ENV).is_ok_and(|v| v == "1");
        RunOptions {
            checked,
            ..RunOptions::default()
        }
    }

    pub fn checked(mut self) -> Self {
        self.checked = true;
        self
    }
}

/// δ for the cut `c·x ≥ c·x^k + δ`: `max(1, ⌈2ε|v|⌉)` for integral
/// objectives, `2ε|v|` otherwise.
pub fn improving_cut_delta(
    current_value: &BigRational,
    integral_objective: bool,
    epsilon: &BigRational,
) -> BigRational {
    let raw = rat(2, 1) * epsilon * current_value.abs();
    if integral_objective {
        let c = raw.ceil();
        if c < BigRational::from_integer(BigInt::from(1)) {
            BigRational::from_integer(BigInt::from(1))
        } else {
            c
        }
    } else {
        raw
    }
}

pub(crate) enum Halt {
    Budget(String),
    Invariant(String),
    Fatal(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Halt::Budget(e.to_string()),
            Error::InvariantViolated(m) => Halt::Invariant(m),
            other => Halt::Fatal(other),
        }
    }
}

/// Run-level properties verified in checked mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Check {
    /// `#phases + #improv = #subprob`
    Bookkeeping,
    /// Strictly increasing values, no repeated point.
    Monotone,
}

pub(crate) struct Runner<'a, F: FeasibleSet + ?Sized> {
    pub oracle: Oracle<'a, F>,
    pub opts: RunOptions,
    pub trace: Trace,
    start: Instant,
    calls: u64,
    report: Option<FlipMap>,
    pub x: Vec<i64>,
    pub value: i128,
}

impl<'a, F: FeasibleSet + ?Sized> Runner<'a, F> {
    pub fn new(
        set: &'a F,
        name: &str,
        x0: &[i64],
        opts: &RunOptions,
        report: Option<FlipMap>,
    ) -> Result<Self> {
        set.check_dim(x0)?;
        if !set.contains(x0) {
            return Err(Error::InfeasiblePoint);
        }
        let oracle = Oracle::new(set).with_node_cap(opts.node_cap);
        let value = set.objective().value(x0);
        let mut r = Runner {
            oracle,
            opts: opts.clone(),
            trace: Trace::new(name),
            start: Instant::now(),
            calls: 0,
            report,
            x: x0.to_vec(),
            value,
        };
        let (x, v) = (r.report_point(x0), r.report_value(value));
        r.log(EventKind::Start { x, value: v });
        Ok(r)
    }

    pub fn set(&self) -> &'a F {
        self.oracle.set()
    }

    pub fn objective(&self) -> &'a [i64] {
        self.oracle.set().objective().coeffs()
    }

    pub fn report_point(&self, x: &[i64]) -> Vec<i64> {
        match &self.report {
            Some(m) => m.unapply(x),
            None => x.to_vec(),
        }
    }

    pub fn report_value(&self, v: i128) -> i128 {
        v + self.report.as_ref().map_or(0, |m| m.offset())
    }

    /// Current value in reported (original) units, as a rational.
    pub fn reported_value(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.report_value(self.value)))
    }

    pub fn log(&mut self, kind: EventKind) {
        let t = self.start.elapsed().as_secs_f64();
        self.trace.push(t, self.calls, kind);
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.log(EventKind::Note {
            message: message.into(),
        });
    }

    pub fn charge_call(&mut self) -> std::result::Result<(), Halt> {
        if self.calls >= self.opts.budget.max_oracle_calls {
            return Err(Halt::Budget(format!(
                "oracle call budget of {} exhausted",
                self.opts.budget.max_oracle_calls
            )));
        }
        if let Some(limit) = self.opts.budget.wall_limit {
            if self.start.elapsed() > limit {
                return Err(Halt::Budget(format!(
                    "wall-clock limit of {limit:?} exceeded"
                )));
            }
        }
        self.calls += 1;
        self.trace.counters.n_subproblems += 1;
        Ok(())
    }

    pub fn delta(&self) -> BigRational {
        improving_cut_delta(
            &self.reported_value(),
            self.set().objective().integral_objective(),
            &self.opts.epsilon,
        )
    }

    /// Issues one oracle query (one subproblem).
    pub fn call(
        &mut self,
        query: &OracleQuery,
        policy: OraclePolicy,
    ) -> std::result::Result<OracleAnswer, Halt> {
        self.charge_call()?;
        let answer = self.oracle.answer(query, policy)?;
        if self.opts.checked {
            if let Some(x) = answer.point() {
                if !self.set().contains(x) {
                    return Err(Halt::Invariant(format!(
                        "oracle returned infeasible point {x:?}"
                    )));
                }
            }
            if let (Outcome::Point { improvement, .. }, Some(_)) = (&answer.outcome, &query.anchor)
            {
                if *improvement <= 0 {
                    return Err(Halt::Invariant(
                        "oracle returned a non-improving point".into(),
                    ));
                }
            }
        }
        if answer.counters.infinite_ratio_skipped > 0 {
            self.note(format!(
                "{} improving points with infinite potential excluded",
                answer.counters.infinite_ratio_skipped
            ));
        }
        let (q, a) = (query.digest(), answer.digest());
        self.log(EventKind::OracleCall {
            query: q,
            answer: a,
        });
        Ok(answer)
    }

    /// Scans every improving point as one subproblem.
    pub fn scan_improving(
        &mut self,
        c: &[i64],
        visit: &mut dyn FnMut(&[i64], i128) -> Result<()>,
    ) -> std::result::Result<OracleCounters, Halt> {
        self.charge_call()?;
        let mut counters = OracleCounters::default();
        let anchor = self.x.clone();
        self.oracle
            .for_each_improving(c, &anchor, &mut counters, visit)?;
        Ok(counters)
    }

    pub fn phase_start(&mut self, mu: String, objective: Option<Vec<i64>>) {
        self.log(EventKind::PhaseStart { mu, objective });
    }

    /// Closes a phase; `counts` when the closing subproblem found no improvement.
    pub fn phase_end(&mut self, mu: String, counts: bool) {
        if counts {
            self.trace.counters.n_phases += 1;
        }
        let (x, value) = (self.report_point(&self.x), self.report_value(self.value));
        self.log(EventKind::PhaseEnd { mu, x, value });
    }

    /// Moves to the exhausted point along `target − x`.
    pub fn advance(&mut self, target: &[i64]) -> std::result::Result<(), Halt> {
        let z = difference(target, &self.x);
        let alpha = exhaust_direction(self.set(), &self.x, &z)?;
        let next = crate::instance::step(&self.x, &z, alpha);
        if self.opts.checked && !self.set().contains(&next) {
            return Err(Halt::Invariant(format!(
                "exhausted point {next:?} is infeasible"
            )));
        }
        if alpha > 1 {
            self.trace.counters.n_exhaust += 1;
            self.log(EventKind::Exhaust { alpha });
        }
        let value = self.set().objective().value(&next);
        let improvement = value - self.value;
        self.x = next;
        self.value = value;
        self.trace.counters.n_improvements += 1;
        let (x, v) = (self.report_point(&self.x), self.report_value(value));
        self.log(EventKind::Improvement {
            x,
            value: v,
            improvement,
        });
        Ok(())
    }

    pub fn finish(
        mut self,
        outcome: std::result::Result<(), Halt>,
        checks: &[Check],
    ) -> Result<Trace> {
        let (mut status, mut message) = match outcome {
            Ok(()) => (Status::Optimal, None),
            Err(Halt::Budget(m)) => (Status::BudgetExceeded, Some(m)),
            Err(Halt::Invariant(m)) => (Status::Error, Some(m)),
            Err(Halt::Fatal(e)) => return Err(e),
        };
        if self.opts.checked && status != Status::Error {
            for check in checks {
                let c = &self.trace.counters;
                let violation = match check {
                    Check::Bookkeeping if c.n_phases + c.n_improvements != c.n_subproblems => {
                        Some(format!(
                            "bookkeeping: {} phases + {} improvements != {} subproblems",
                            c.n_phases, c.n_improvements, c.n_subproblems
                        ))
                    }
                    Check::Monotone if !self.trace.is_strictly_monotone() => {
                        Some("values not strictly increasing or a point was revisited".to_string())
                    }
                    _ => None,
                };
                if let Some(v) = violation {
                    status = Status::Error;
                    message = Some(v);
                    break;
                }
            }
        }
        let (x, value) = (self.report_point(&self.x), self.report_value(self.value));
        if let Some(m) = &message {
            self.note(m.clone());
        }
        self.log(EventKind::Terminate {
            status,
            x: x.clone(),
            value,
        });
        self.trace.status = Some(status);
        self.trace.final_x = x;
        self.trace.final_value = value;
        self.trace.message = message;
        Ok(self.trace)
    }
}

pub(crate) fn mu_string(mu: &BigRational) -> String {
    exact_string(mu)
}

pub(crate) fn is_positive_multiple(base: &[i64], candidate: &[i64]) -> bool {
    // candidate = g · base for a positive integer g, base ≠ 0.
    let Some(j) = base.iter().position(|&b| b != 0) else {
        return false;
    };
    if candidate[j] % base[j] != 0 {
        return false;
    }
    let g = candidate[j] / base[j];
    g > 0
        && base
            .iter()
            .zip(candidate)
            .all(|(&b, &c)| b.checked_mul(g) == Some(c))
}
