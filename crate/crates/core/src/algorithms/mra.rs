use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::FeasibleSet;
use crate::numeric::{dot, mul, rat_int, rational_parts};
use crate::oracle::{ratio_of, OraclePolicy, OracleQuery, Outcome};
use crate::potential::PotentialKind;
use crate::trace::{EventKind, Trace};

use super::geometric::{rho_bound, theory_mu};
use super::{mu_string, Check, Halt, RunOptions, Runner};

/// Maximum-ratio augmentation with an exact max-ratio oracle.
///
/// Each oracle call is one phase; `n_phases = n_subproblems`.
pub fn mra_exact<F: FeasibleSet + ?Sized>(
    set: &F,
    x0: &[i64],
    potential: PotentialKind,
    opts: &RunOptions,
) -> Result<Trace> {
    let mut r = Runner::new(set, "mra-exact", x0, opts, None)?;
    let outcome = (|| {
        let c = r.objective().to_vec();
        loop {
            let q = OracleQuery::improve(c.clone(), r.x.clone());
            let answer = r.call(&q, OraclePolicy::MaxRatio(potential))?;
            r.trace.counters.n_phases += 1;
            match answer.outcome {
                Outcome::Point { x, .. } => r.advance(&x)?,
                _ => return Ok(()),
            }
        }
    })();
    r.finish(outcome, &[Check::Monotone])
}

/// Search parameters for the cutting-plane ratio search.
#[derive(Debug, Clone, PartialEq)]
pub struct MraSearch {
    /// Upper end of the μ interval; `2·C·(U − L)` when `None`.
    pub mu_hi: Option<BigRational>,
    /// Stop once `hi − lo` drops below this; `1/(2ρ̄²)` when `None`.
    pub tolerance: Option<BigRational>,
    pub max_outer: u32,
}

impl Default for MraSearch {
    fn default() -> Self {
        MraSearch {
            mu_hi: None,
            tolerance: None,
            max_outer: 200,
        }
    }
}

/// An improving point of the current anchor with its gain `c·z` and `‖z‖₁`.
struct Candidate {
    x: Vec<i64>,
    gain: i128,
    l1: i128,
}

/// Maximum-ratio augmentation with the ratio found by bisection on μ.
///
/// For each μ the master problem `max θ` over improving points, bounded by
/// supergradient cuts of `φ(x) = c(x − x̃) − μ‖x − x̃‖₁`, is solved by
/// adding cuts until the maximizer's own cut is tight. A positive optimum
/// moves the lower end of the interval up, otherwise the upper end down.
///
/// Each anchor opens with a pure improving query that also fixes the
/// candidate list; every master solve is a further subproblem and a phase.
pub fn mra_cutting_plane<F: FeasibleSet + ?Sized>(
    set: &F,
    x0: &[i64],
    search: &MraSearch,
    opts: &RunOptions,
) -> Result<Trace> {
    let mut r = Runner::new(set, "mra", x0, opts, None)?;
    let outcome = run(&mut r, search);
    r.finish(outcome, &[Check::Bookkeeping, Check::Monotone])
}

fn run<F: FeasibleSet + ?Sized>(
    r: &mut Runner<'_, F>,
    search: &MraSearch,
) -> std::result::Result<(), Halt> {
    let set = r.set();
    let c = r.objective().to_vec();
    let hi0 = search.mu_hi.clone().unwrap_or_else(|| theory_mu(set));
    let tol = match &search.tolerance {
        Some(t) => t.clone(),
        None => {
            let rho = rho_bound(set, PotentialKind::L1);
            rat_int(1) / (rat_int(2) * &rho * &rho)
        }
    };
    loop {
        let anchor = r.x.clone();
        let mut cands = Vec::new();
        r.scan_improving(&c, &mut |x, gain| {
            let l1 = x
                .iter()
                .zip(&anchor)
                .map(|(a, b)| (a - b).unsigned_abs() as i128)
                .sum();
            cands.push(Candidate {
                x: x.to_vec(),
                gain,
                l1,
            });
            Ok(())
        })?;
        if cands.is_empty() {
            r.trace.counters.n_phases += 1;
            return Ok(());
        }
        cands.sort_by(|a, b| a.x.cmp(&b.x));
        let flat: Vec<i64> = cands.iter().flat_map(|k| k.x.iter().copied()).collect();
        let mut best = 0usize;
        r.log(EventKind::Candidate {
            x: cands[0].x.clone(),
            value: dot(&c, &cands[0].x),
        });

        let (mut lo, mut hi) = (BigRational::zero(), hi0.clone());
        let mut iterations = 0u32;
        while &hi - &lo >= tol && iterations < search.max_outer {
            iterations += 1;
            let mid = (&lo + &hi) / rat_int(2);
            r.phase_start(mu_string(&mid), None);
            let (phi, i) = solve_master(r, &c, &anchor, &cands, &flat, &mid)?;
            if phi > 0 {
                lo = mid.clone();
                best = i;
            } else {
                hi = mid.clone();
            }
            r.phase_end(mu_string(&mid), false);
        }
        let target = cands[best].x.clone();
        let mu = BigRational::new(BigInt::from(cands[best].gain), BigInt::from(cands[best].l1));
        if r.opts.checked && &hi - &lo < tol {
            let exact = r.oracle.max_ratio_point(&c, &anchor, PotentialKind::L1)?;
            if let Some(x) = exact.point() {
                let want = ratio_of(set, &c, &anchor, x, PotentialKind::L1)?
                    .unwrap_or_else(BigRational::zero);
                if want != mu {
                    return Err(Halt::Invariant(format!(
                        "ratio search converged to {mu} but the maximum is {want}"
                    )));
                }
            }
        }
        r.log(EventKind::RatioConverged {
            anchor,
            mu: mu_string(&mu),
            iterations,
        });
        r.advance(&target)?;
    }
}

/// Returns `(φ(x*), index of x*)` for the maximizer `x*` of the master
/// problem at μ; values are scaled by the denominator of μ.
fn solve_master<F: FeasibleSet + ?Sized>(
    r: &mut Runner<'_, F>,
    c: &[i64],
    anchor: &[i64],
    cands: &[Candidate],
    flat: &[i64],
    mu: &BigRational,
) -> std::result::Result<(i128, usize), Halt> {
    r.charge_call()?;
    r.trace.counters.n_phases += 1;
    let (mn, md) = rational_parts(mu)?;
    let phi = |k: &Candidate| -> Result<i128> {
        mul(k.gain, md)?
            .checked_sub(mul(mn, k.l1)?)
            .ok_or(Error::Overflow("penalized gain"))
    };
    // Bounds every |k_j| so each h·k below stays in range once the cut fits.
    let reach = flat
        .iter()
        .map(|v| v.unsigned_abs() as i128)
        .max()
        .unwrap_or(0);
    // Initial cut at x̃: θ ≤ md·c(x − x̃).
    let mut theta: Vec<i128> = cands
        .iter()
        .map(|k| mul(k.gain, md))
        .collect::<Result<_>>()?;
    loop {
        let mut i = 0;
        for (j, t) in theta.iter().enumerate() {
            if *t > theta[i] {
                i = j;
            }
        }
        let x = &cands[i].x;
        r.log(EventKind::Candidate {
            x: x.clone(),
            value: dot(c, x),
        });
        let actual = phi(&cands[i])?;
        if theta[i] <= actual {
            return Ok((actual, i));
        }
        let h: Vec<i128> = (0..x.len())
            .map(|j| c[j] as i128 * md - mn * (x[j] - anchor[j]).signum() as i128)
            .collect();
        let hx = h.iter().zip(x).try_fold(0i128, |acc, (a, b)| {
            acc.checked_add(mul(*a, *b as i128)?)
                .ok_or(Error::Overflow("cut bound"))
        })?;
        let base = actual.checked_sub(hx).ok_or(Error::Overflow("cut bound"))?;
        let width = h
            .iter()
            .try_fold(0i128, |acc, v| {
                acc.checked_add(v.checked_abs()?.checked_mul(reach)?)
            })
            .ok_or(Error::Overflow("cut bound"))?;
        if base
            .checked_abs()
            .and_then(|b| b.checked_add(width))
            .is_none_or(|v| v >= i128::MAX / 2)
        {
            return Err(Error::Overflow("cut bound").into());
        }
        let rows = flat.chunks_exact(h.len());
        if width <= i64::MAX as i128 {
            let h64: Vec<i64> = h.iter().map(|v| *v as i64).collect();
            for (t, k) in theta.iter_mut().zip(rows) {
                let hk: i64 = h64.iter().zip(k).map(|(a, b)| a * b).sum();
                *t = (*t).min(base + hk as i128);
            }
        } else {
            for (t, k) in theta.iter_mut().zip(rows) {
                let hk: i128 = h.iter().zip(k).map(|(a, b)| a * *b as i128).sum();
                *t = (*t).min(base + hk);
            }
        }
        let subgradient = h
            .iter()
            .map(|v| mu_string(&BigRational::new(BigInt::from(*v), BigInt::from(md))))
            .collect();
        r.log(EventKind::Cut {
            at: x.clone(),
            subgradient,
        });
    }
}
