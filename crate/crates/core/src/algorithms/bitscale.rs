use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{FeasibleSet, Flipped};
use crate::numeric::ceil_log2;
use crate::oracle::{ImprovingCut, OraclePolicy, OracleQuery, Outcome};
use crate::trace::{EventKind, Trace};

use super::{is_positive_multiple, Check, Halt, RunOptions, Runner};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BitScaleVariant {
    /// Improve each scaled objective to optimality with the given policy.
    Classic,
    /// First-improving points that also improve the original objective.
    Incomplete,
    /// First-improving points for the scaled objective only.
    NoImprove,
    /// One optimal solve per scaled objective.
    Complete,
}

impl std::str::FromStr for BitScaleVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "CLASSIC" => Ok(BitScaleVariant::Classic),
            "INCOMPLETE" => Ok(BitScaleVariant::Incomplete),
            "NOIMPROVE" => Ok(BitScaleVariant::NoImprove),
            "COMPLETE" => Ok(BitScaleVariant::Complete),
            other => Err(format!("unknown bit-scaling variant {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitScaleConfig {
    pub variant: BitScaleVariant,
    /// Oracle policy for the `Classic` variant.
    pub policy: OraclePolicy,
    /// Skip a phase whose objective is a positive multiple of the previous one.
    pub skip_proportional: bool,
    /// Refuse objectives whose scaling sequence is degenerate.
    pub require_applicable: bool,
}

impl Default for BitScaleConfig {
    fn default() -> Self {
        BitScaleConfig {
            variant: BitScaleVariant::Classic,
            policy: OraclePolicy::Optimal,
            skip_proportional: true,
            require_applicable: true,
        }
    }
}

impl BitScaleConfig {
    pub fn variant(variant: BitScaleVariant) -> Self {
        BitScaleConfig {
            variant,
            ..Self::default()
        }
    }
}

fn scaled(c: &[i64], e: u32) -> Vec<i64> {
    c.iter()
        .map(|&v| if e >= 63 { 0 } else { v >> e })
        .collect()
}

/// Bit scaling on a 0/1 set. Coordinates with negative cost are flipped so
/// the working objective is nonnegative; points in the trace are reported
/// in the original coordinates and values include the flip offset.
pub fn bit_scaling<F: FeasibleSet + ?Sized>(
    set: &F,
    x0: &[i64],
    cfg: &BitScaleConfig,
    opts: &RunOptions,
) -> Result<Trace> {
    set.check_dim(x0)?;
    let view = Flipped::new(set)?;
    let map = view.map().clone();
    let c = view.objective().coeffs().to_vec();
    let top = ceil_log2(view.objective().c_bit() as u128);

    if cfg.require_applicable {
        let nonzero: BTreeSet<i64> = c.iter().copied().filter(|&v| v != 0).collect();
        let distinct: BTreeSet<Vec<i64>> = (0..=top).map(|e| scaled(&c, e)).collect();
        if nonzero.len() <= 1 && distinct.len() <= 2 {
            return Err(Error::NotApplicable(
                "all nonzero costs are equal; scaling yields at most two distinct objectives"
                    .into(),
            ));
        }
    }

    let name = format!("bitscale-{:?}", cfg.variant).to_lowercase();
    let mut r = Runner::new(&view, &name, &map.apply(x0), opts, Some(map))?;
    let outcome = run(&mut r, cfg, &c, top);
    r.finish(outcome, &[Check::Bookkeeping])
}

fn run<F: FeasibleSet + ?Sized>(
    r: &mut Runner<'_, F>,
    cfg: &BitScaleConfig,
    c: &[i64],
    top: u32,
) -> std::result::Result<(), Halt> {
    let mut previous: Option<Vec<i64>> = None;
    for e in (0..=top).rev() {
        let mu = BigInt::from(1u8) << e;
        let mu_s = mu.to_string();
        let cmu = scaled(c, e);
        if cfg.skip_proportional {
            if let Some(p) = &previous {
                if is_positive_multiple(p, &cmu) {
                    r.trace.counters.n_skipped_phases += 1;
                    r.log(EventKind::PhaseSkipped { mu: mu_s });
                    previous = Some(cmu);
                    continue;
                }
            }
        }
        r.phase_start(mu_s.clone(), Some(cmu.clone()));
        match cfg.variant {
            BitScaleVariant::Complete => {
                let q = OracleQuery::improve(cmu.clone(), r.x.clone());
                let answer = r.call(&q, OraclePolicy::Optimal)?;
                match answer.outcome {
                    Outcome::Point { x, .. } => {
                        r.advance(&x)?;
                        r.phase_end(mu_s, false);
                    }
                    _ => r.phase_end(mu_s, true),
                }
            }
            variant => {
                let policy = match variant {
                    BitScaleVariant::Classic => cfg.policy,
                    _ => OraclePolicy::FirstImproving,
                };
                loop {
                    let mut q = OracleQuery::improve(cmu.clone(), r.x.clone());
                    if variant == BitScaleVariant::Incomplete {
                        q = q.with_cut(ImprovingCut::above(c, &r.x, &r.delta()));
                    }
                    let answer = r.call(&q, policy)?;
                    match answer.outcome {
                        Outcome::Point { x, .. } => r.advance(&x)?,
                        _ => {
                            r.phase_end(mu_s, true);
                            break;
                        }
                    }
                }
            }
        }
        previous = Some(cmu);
    }
    Ok(())
}
