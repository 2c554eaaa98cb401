//! Primal integral and shifted geometric mean.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trace::Trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeAxis {
    /// Seconds since the run started.
    #[default]
    Wall,
    /// Oracle calls issued so far; machine-independent.
    Calls,
}

impl std::str::FromStr for TimeAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "wall" => Ok(TimeAxis::Wall),
            "calls" => Ok(TimeAxis::Calls),
            other => Err(format!("unknown time axis {other:?}")),
        }
    }
}

/// `|p − b| / max(|p|, |b|)`, and 0 when both vanish.
pub fn primal_gap(p: &BigRational, b: &BigRational) -> BigRational {
    let scale = p.abs().max(b.abs());
    if scale.is_zero() {
        BigRational::zero()
    } else {
        (p - b).abs() / scale
    }
}

/// Integral over `[0, horizon]` of the piecewise-constant gap defined by
/// `(time, value)` solution events; the gap is 1 before the first event.
pub fn primal_integral_of(
    events: &[(BigRational, BigRational)],
    best: &BigRational,
    horizon: &BigRational,
) -> BigRational {
    let mut total = BigRational::zero();
    let mut last_t = BigRational::zero();
    let mut gap = BigRational::from_integer(BigInt::from(1));
    for (t, v) in events {
        let t = t.clone().max(BigRational::zero());
        if &t >= horizon {
            break;
        }
        if t > last_t {
            total += &gap * (&t - &last_t);
            last_t = t;
        }
        gap = primal_gap(v, best);
    }
    if horizon > &last_t {
        total += gap * (horizon - &last_t);
    }
    total
}

/// Primal integral of a trace on the chosen time axis.
pub fn primal_integral(
    trace: &Trace,
    best: &BigRational,
    horizon: &BigRational,
    axis: TimeAxis,
) -> BigRational {
    let events: Vec<(BigRational, BigRational)> = trace
        .solution_events()
        .map(|(e, v)| {
            let t = match axis {
                TimeAxis::Wall => {
                    BigRational::from_float(e.elapsed_secs).unwrap_or_else(BigRational::zero)
                }
                TimeAxis::Calls => BigRational::from_integer(BigInt::from(e.oracle_calls)),
            };
            (t, BigRational::from_integer(BigInt::from(v)))
        })
        .collect();
    primal_integral_of(&events, best, horizon)
}

/// `(∏(t_i + s))^{1/n} − s`, evaluated in log space.
pub fn shifted_geomean(values: &[f64], shift: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidParameter(
            "shifted geometric mean of an empty list".into(),
        ));
    }
    if shift < 0.0 || values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "values and shift must be finite and nonnegative".into(),
        ));
    }
    if values.iter().any(|&v| v + shift == 0.0) {
        return Ok(0.0 - shift);
    }
    let mean_log = values.iter().map(|&v| (v + shift).ln()).sum::<f64>() / values.len() as f64;
    Ok(mean_log.exp() - shift)
}
