use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::FeasibleSet;
use crate::numeric::{next_power_of_two_above, rat_int};
use crate::oracle::{ImprovingCut, OraclePolicy, OracleQuery, Outcome};
use crate::potential::PotentialKind;
use crate::trace::Trace;

use super::{mu_string, Check, Halt, RunOptions, Runner};

/// Upper cap on the solution-power initial μ.
pub const MU_SOLUTION_CAP: i64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MuInit {
    /// `2·C·(U − L)`
    Theory,
    /// Smallest power of two above `|c·x⁰|`, capped at 10⁸.
    SolutionPower,
}

impl std::str::FromStr for MuInit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "THEORY" => Ok(MuInit::Theory),
            "SOLUTION_POWER" => Ok(MuInit::SolutionPower),
            other => Err(format!("unknown mu init {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeoConfig {
    pub potential: PotentialKind,
    pub mu_factor: u32,
    pub mu_init: MuInit,
    /// Add the cut `c·x ≥ c·x̃ + δ` to every penalized query.
    pub use_cutoff: bool,
}

impl Default for GeoConfig {
    fn default() -> Self {
        GeoConfig {
            potential: PotentialKind::Standard,
            mu_factor: 2,
            mu_init: MuInit::Theory,
            use_cutoff: true,
        }
    }
}

/// `2·C·(U − L)` with `C = ‖c‖∞`.
pub(crate) fn theory_mu<F: FeasibleSet + ?Sized>(set: &F) -> BigRational {
    let span = (set.u_max() as i128 - set.l_min() as i128).max(0);
    rat_int(2)
        * BigRational::from_integer(BigInt::from(set.objective().c_geo()))
        * BigRational::from_integer(BigInt::from(span))
}

/// Largest possible ρ of an improving direction from an exhausted point.
pub(crate) fn rho_bound<F: FeasibleSet + ?Sized>(set: &F, kind: PotentialKind) -> BigRational {
    let n = set.dim() as i64;
    let total = match kind {
        PotentialKind::L1 if !set.is_binary() => set
            .lower()
            .iter()
            .zip(set.upper())
            .map(|(&l, &u)| (u as i128 - l as i128).max(0))
            .sum::<i128>(),
        _ => n as i128,
    };
    BigRational::from_integer(BigInt::from(total.max(1)))
}

/// Geometric scaling: maximize `c·x − μ·ρ(x̃, x − x̃)` over improving
/// points, exhaust every answer, and divide μ by `mu_factor` whenever no
/// penalized improvement exists.
pub fn geometric_scaling<F: FeasibleSet + ?Sized>(
    set: &F,
    x0: &[i64],
    cfg: &GeoConfig,
    policy: OraclePolicy,
    opts: &RunOptions,
) -> Result<Trace> {
    if cfg.mu_factor < 2 {
        return Err(Error::InvalidParameter(format!(
            "mu factor must be at least 2, got {}",
            cfg.mu_factor
        )));
    }
    let pot = match cfg.potential {
        PotentialKind::Standard => "standard",
        PotentialKind::L1 => "l1",
    };
    let mut r = Runner::new(set, &format!("geom-{pot}"), x0, opts, None)?;
    let outcome = run(&mut r, cfg, policy);
    r.finish(outcome, &[Check::Bookkeeping, Check::Monotone])
}

fn run<F: FeasibleSet + ?Sized>(
    r: &mut Runner<'_, F>,
    cfg: &GeoConfig,
    policy: OraclePolicy,
) -> std::result::Result<(), Halt> {
    let set = r.set();
    let c = r.objective().to_vec();
    let mut mu = match cfg.mu_init {
        MuInit::Theory => theory_mu(set),
        MuInit::SolutionPower => {
            let v = BigRational::from_integer(BigInt::from(r.value.abs()));
            next_power_of_two_above(&v).min(rat_int(MU_SOLUTION_CAP))
        }
    };
    let floor = rat_int(1) / rho_bound(set, cfg.potential);
    let factor = rat_int(cfg.mu_factor as i64);
    loop {
        let mu_s = mu_string(&mu);
        r.phase_start(mu_s.clone(), None);
        loop {
            let mut q = OracleQuery::improve(c.clone(), r.x.clone())
                .with_penalty(mu.clone(), cfg.potential);
            if cfg.use_cutoff {
                q = q.with_cut(ImprovingCut::above(&c, &r.x, &r.delta()));
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
        if mu < floor {
            break;
        }
        mu /= &factor;
    }
    if !set.objective().integral_objective() {
        r.phase_start("0".into(), None);
        let q = OracleQuery::improve(c.clone(), r.x.clone());
        let answer = r.call(&q, OraclePolicy::Optimal)?;
        match answer.outcome {
            Outcome::Point { x, .. } => {
                r.advance(&x)?;
                r.phase_end("0".into(), false);
            }
            _ => r.phase_end("0".into(), true),
        }
    }
    Ok(())
}
