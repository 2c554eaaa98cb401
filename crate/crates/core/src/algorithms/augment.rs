use crate::error::Result;
use crate::instance::FeasibleSet;
use crate::oracle::{ImprovingCut, OraclePolicy, OracleQuery, Outcome};
use crate::trace::Trace;

use super::{Check, Halt, RunOptions, Runner};

/// Plain augmentation: query an improving point for `c`, exhaust the
/// direction, repeat until the oracle reports none.
///
/// Every subproblem is its own phase, so `n_phases = n_subproblems`.
pub fn augment<F: FeasibleSet + ?Sized>(
    set: &F,
    x0: &[i64],
    policy: OraclePolicy,
    opts: &RunOptions,
) -> Result<Trace> {
    let mut r = Runner::new(set, "augment", x0, opts, None)?;
    let outcome = run(&mut r, policy);
    r.finish(outcome, &[Check::Monotone])
}

fn run<F: FeasibleSet + ?Sized>(
    r: &mut Runner<'_, F>,
    policy: OraclePolicy,
) -> std::result::Result<(), Halt> {
    let c = r.objective().to_vec();
    loop {
        let cut = ImprovingCut::above(&c, &r.x, &r.delta());
        let q = OracleQuery::improve(c.clone(), r.x.clone()).with_cut(cut);
        let answer = r.call(&q, policy)?;
        r.trace.counters.n_phases += 1;
        match answer.outcome {
            Outcome::Point { x, .. } => r.advance(&x)?,
            _ => return Ok(()),
        }
    }
}
