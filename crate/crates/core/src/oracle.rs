//! Exact augmentation oracles.
//!
//! Every answer comes from a complete scan of the feasible set (DFS with
//! row propagation for [`Instance`](crate::instance::Instance), a list scan
//! for point sets), filtered by the query predicates and then selected by
//! the policy. Nothing is approximate: all comparisons are integer or
//! exact-rational.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{difference, FeasibleSet, LinearCut, ScanRequest, Visit, DEFAULT_NODE_CAP};
use crate::numeric::{ceil_to_i128, dot, dot_diff, mul, rational_parts};
use crate::potential::{PotentialKind, PotentialWeights, ScaledPotential};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OraclePolicy {
    Optimal,
    FirstImproving,
    LeastImproving,
    MaxRatio(PotentialKind),
}

impl std::str::FromStr for OraclePolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "optimal" => Ok(OraclePolicy::Optimal),
            "first" => Ok(OraclePolicy::FirstImproving),
            "least" => Ok(OraclePolicy::LeastImproving),
            "maxratio" => Ok(OraclePolicy::MaxRatio(PotentialKind::L1)),
            "maxratio-standard" => Ok(OraclePolicy::MaxRatio(PotentialKind::Standard)),
            other => Err(format!("unknown policy {other:?}")),
        }
    }
}

/// `coeffs · x ≥ threshold`; built from an anchor value plus δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovingCut {
    pub coeffs: Vec<i64>,
    pub threshold: BigRational,
}

impl ImprovingCut {
    pub fn above(coeffs: &[i64], anchor: &[i64], delta: &BigRational) -> Self {
        let base = BigRational::from_integer(dot(coeffs, anchor).into());
        ImprovingCut {
            coeffs: coeffs.to_vec(),
            threshold: base + delta,
        }
    }

    fn as_linear(&self) -> Result<LinearCut> {
        Ok(LinearCut {
            coeffs: self.coeffs.clone(),
            min: ceil_to_i128(&self.threshold)?,
        })
    }
}

/// Turns the query into `objective·(x − x̃) − μ·ρ(x̃, x − x̃) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Penalty {
    pub mu: BigRational,
    pub potential: PotentialKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleQuery {
    pub objective: Vec<i64>,
    pub anchor: Option<Vec<i64>>,
    pub improving_cut: Option<ImprovingCut>,
    pub penalty: Option<Penalty>,
}

impl OracleQuery {
    /// Find x with `objective·(x − anchor) > 0`.
    pub fn improve(objective: Vec<i64>, anchor: Vec<i64>) -> Self {
        OracleQuery {
            objective,
            anchor: Some(anchor),
            improving_cut: None,
            penalty: None,
        }
    }

    pub fn maximize(objective: Vec<i64>) -> Self {
        OracleQuery {
            objective,
            anchor: None,
            improving_cut: None,
            penalty: None,
        }
    }

    pub fn with_cut(mut self, cut: ImprovingCut) -> Self {
        self.improving_cut = Some(cut);
        self
    }

    pub fn with_penalty(mut self, mu: BigRational, potential: PotentialKind) -> Self {
        self.penalty = Some(Penalty { mu, potential });
        self
    }

    /// Short stable description for traces.
    pub fn digest(&self) -> String {
        let mut s = format!("obj={:?}", self.objective);
        if let Some(a) = &self.anchor {
            s += &format!(" anchor={a:?}");
        }
        if let Some(c) = &self.improving_cut {
            s += &format!(" cut>={}", crate::numeric::exact_string(&c.threshold));
        }
        if let Some(p) = &self.penalty {
            s += &format!(
                " mu={} rho={:?}",
                crate::numeric::exact_string(&p.mu),
                p.potential
            );
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Point {
        x: Vec<i64>,
        #[serde(with = "crate::numeric::wide_int")]
        value: i128,
        #[serde(with = "crate::numeric::wide_int")]
        improvement: i128,
    },
    Infeasible,
    OptimalCertified {
        x: Vec<i64>,
        #[serde(with = "crate::numeric::wide_int")]
        value: i128,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCounters {
    pub points_scanned: u64,
    pub nodes: u64,
    pub nodes_pruned: u64,
    /// Improving points skipped because ρ = +∞ (max-ratio only).
    pub infinite_ratio_skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleAnswer {
    pub outcome: Outcome,
    pub counters: OracleCounters,
}

impl OracleAnswer {
    pub fn point(&self) -> Option<&[i64]> {
        match &self.outcome {
            Outcome::Point { x, .. } | Outcome::OptimalCertified { x, .. } => Some(x),
            Outcome::Infeasible => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, Outcome::Infeasible)
    }

    pub fn digest(&self) -> String {
        match &self.outcome {
            Outcome::Point {
                x,
                value,
                improvement,
            } => format!("point {x:?} value={value} improvement={improvement}"),
            Outcome::Infeasible => "infeasible".into(),
            Outcome::OptimalCertified { x, value } => format!("optimal {x:?} value={value}"),
        }
    }
}

/// Penalty evaluation at a fixed anchor, in integers scaled by `denom·μ_den`.
struct PenaltyEval {
    weights: PotentialWeights,
    mu_num: i128,
    mu_den: i128,
}

impl PenaltyEval {
    /// Scaled `improvement − μ·ρ`, or `None` when the predicate is violated
    /// by an infinite potential.
    fn score(&self, improvement: i128, z: &[i64]) -> Result<Option<i128>> {
        let lhs = mul(mul(improvement, self.weights.denom())?, self.mu_den)?;
        match self.weights.numer(z)? {
            ScaledPotential::Infinite if self.mu_num == 0 => Ok(Some(lhs)),
            ScaledPotential::Infinite => Ok(None),
            ScaledPotential::Finite(rho) => Ok(Some(lhs - mul(self.mu_num, rho)?)),
        }
    }
}

/// Receives `(x, improvement, penalty score)` for each candidate.
type CandidateVisitor<'v> = dyn FnMut(&[i64], i128, Option<i128>) -> Result<Visit> + 'v;

struct Best {
    x: Vec<i64>,
    value: i128,
    improvement: i128,
    key: (i128, i128),
}

/// Exact oracle over a feasible set.
pub struct Oracle<'a, F: FeasibleSet + ?Sized> {
    set: &'a F,
    node_cap: u64,
}

impl<'a, F: FeasibleSet + ?Sized> Oracle<'a, F> {
    pub fn new(set: &'a F) -> Self {
        Oracle {
            set,
            node_cap: DEFAULT_NODE_CAP,
        }
    }

    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }

    pub fn set(&self) -> &'a F {
        self.set
    }

    fn validate(&self, query: &OracleQuery) -> Result<()> {
        self.set.check_dim(&query.objective)?;
        if let Some(a) = &query.anchor {
            self.set.check_dim(a)?;
        }
        if let Some(c) = &query.improving_cut {
            self.set.check_dim(&c.coeffs)?;
        }
        if let Some(p) = &query.penalty {
            if p.mu.is_negative() {
                return Err(Error::InvalidParameter(
                    "penalty μ must be nonnegative".into(),
                ));
            }
            if query.anchor.is_none() {
                return Err(Error::MissingAnchor);
            }
        }
        Ok(())
    }

    /// Visits every point satisfying the improvement predicate, the
    /// improving cut, and the penalty predicate (when present), passing
    /// `(x, improvement, penalty score)`.
    fn scan_candidates(
        &self,
        query: &OracleQuery,
        counters: &mut OracleCounters,
        visit: &mut CandidateVisitor<'_>,
    ) -> Result<()> {
        self.validate(query)?;
        let mut cuts = Vec::new();
        if let Some(anchor) = &query.anchor {
            cuts.push(LinearCut {
                coeffs: query.objective.clone(),
                min: dot(&query.objective, anchor) + 1,
            });
        }
        if let Some(c) = &query.improving_cut {
            cuts.push(c.as_linear()?);
        }
        let penalty = match &query.penalty {
            Some(p) => {
                let (mu_num, mu_den) = rational_parts(&p.mu)?;
                let anchor = query.anchor.as_ref().ok_or(Error::MissingAnchor)?;
                Some(PenaltyEval {
                    weights: PotentialWeights::at(p.potential, self.set, anchor)?,
                    mu_num,
                    mu_den,
                })
            }
            None => None,
        };
        let req = ScanRequest {
            cuts: &cuts,
            guide: Some(&query.objective),
            node_cap: self.node_cap,
        };
        let mut failure = None;
        let stats = self.set.scan(&req, &mut |x| {
            let improvement = match &query.anchor {
                Some(a) => dot_diff(&query.objective, x, a),
                None => dot(&query.objective, x),
            };
            let score = match (&penalty, &query.anchor) {
                (Some(p), Some(a)) => match p.score(improvement, &difference(x, a)) {
                    Ok(Some(s)) if s > 0 => Some(s),
                    Ok(_) => return Visit::Continue,
                    Err(e) => {
                        failure = Some(e);
                        return Visit::Stop;
                    }
                },
                _ => None,
            };
            match visit(x, improvement, score) {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    Visit::Stop
                }
            }
        })?;
        counters.points_scanned += stats.points;
        counters.nodes += stats.nodes;
        counters.nodes_pruned += stats.pruned;
        match failure {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Answers `query` under `policy`.
    pub fn answer(&self, query: &OracleQuery, policy: OraclePolicy) -> Result<OracleAnswer> {
        if let OraclePolicy::MaxRatio(kind) = policy {
            let anchor = query.anchor.as_ref().ok_or(Error::MissingAnchor)?;
            return self.max_ratio_impl(query, anchor, kind);
        }
        let mut counters = OracleCounters::default();
        let mut best: Option<Best> = None;
        let raise = policy == OraclePolicy::Optimal && query.penalty.is_none();
        self.scan_candidates(query, &mut counters, &mut |x, improvement, score| {
            let value = dot(&query.objective, x);
            // Larger key wins; ties go to the lexicographically smaller point.
            let key = match policy {
                OraclePolicy::FirstImproving => {
                    best = Some(Best {
                        x: x.to_vec(),
                        value,
                        improvement,
                        key: (0, 0),
                    });
                    return Ok(Visit::Stop);
                }
                OraclePolicy::Optimal => (score.unwrap_or(improvement), 0),
                OraclePolicy::LeastImproving => (-improvement, 0),
                OraclePolicy::MaxRatio(_) => unreachable!(),
            };
            let better = match &best {
                None => true,
                Some(b) => match key.cmp(&b.key) {
                    Ordering::Greater => true,
                    Ordering::Equal => x < &b.x[..],
                    Ordering::Less => false,
                },
            };
            if better {
                best = Some(Best {
                    x: x.to_vec(),
                    value,
                    improvement,
                    key,
                });
            }
            Ok(if raise {
                Visit::Raise(best.as_ref().unwrap().value)
            } else {
                Visit::Continue
            })
        })?;
        Ok(self.finish(best, counters, query.anchor.is_none()))
    }

    fn finish(
        &self,
        best: Option<Best>,
        counters: OracleCounters,
        certified: bool,
    ) -> OracleAnswer {
        let outcome = match best {
            None => Outcome::Infeasible,
            Some(b) if certified => Outcome::OptimalCertified {
                x: b.x,
                value: b.value,
            },
            Some(b) => Outcome::Point {
                x: b.x,
                value: b.value,
                improvement: b.improvement,
            },
        };
        OracleAnswer { outcome, counters }
    }

    /// Maximizes `objective·x`, optionally subject to an improving cut.
    pub fn solve_exact(
        &self,
        objective: &[i64],
        improving_cut: Option<&ImprovingCut>,
    ) -> Result<OracleAnswer> {
        let mut q = OracleQuery::maximize(objective.to_vec());
        q.improving_cut = improving_cut.cloned();
        self.answer(&q, OraclePolicy::Optimal)
    }

    /// `argmax { c(x − x̃) / ρ(x̃, x − x̃) | c(x − x̃) > 0 }`.
    pub fn max_ratio_point(
        &self,
        c: &[i64],
        anchor: &[i64],
        potential: PotentialKind,
    ) -> Result<OracleAnswer> {
        let q = OracleQuery::improve(c.to_vec(), anchor.to_vec());
        self.max_ratio_impl(&q, anchor, potential)
    }

    fn max_ratio_impl(
        &self,
        query: &OracleQuery,
        anchor: &[i64],
        kind: PotentialKind,
    ) -> Result<OracleAnswer> {
        let weights = PotentialWeights::at(kind, self.set, anchor)?;
        let mut counters = OracleCounters::default();
        let mut skipped = 0u64;
        // key = (improvement, ρ numerator); ρ = 0 encodes an infinite ratio.
        let mut best: Option<Best> = None;
        self.scan_candidates(query, &mut counters, &mut |x, improvement, _| {
            let rho = match weights.numer(&difference(x, anchor))? {
                ScaledPotential::Infinite => {
                    skipped += 1;
                    return Ok(Visit::Continue);
                }
                ScaledPotential::Finite(r) => r,
            };
            let better = match &best {
                None => true,
                Some(b) => match compare_ratio((improvement, rho), b.key)? {
                    Ordering::Greater => true,
                    Ordering::Equal => match improvement.cmp(&b.improvement) {
                        Ordering::Greater => true,
                        Ordering::Equal => x < &b.x[..],
                        Ordering::Less => false,
                    },
                    Ordering::Less => false,
                },
            };
            if better {
                best = Some(Best {
                    x: x.to_vec(),
                    value: dot(&query.objective, x),
                    improvement,
                    key: (improvement, rho),
                });
            }
            Ok(Visit::Continue)
        })?;
        counters.infinite_ratio_skipped = skipped;
        Ok(self.finish(best, counters, false))
    }

    /// Visits every feasible `x` with `c(x − anchor) > 0`.
    pub fn for_each_improving(
        &self,
        c: &[i64],
        anchor: &[i64],
        counters: &mut OracleCounters,
        visit: &mut dyn FnMut(&[i64], i128) -> Result<()>,
    ) -> Result<()> {
        let q = OracleQuery::improve(c.to_vec(), anchor.to_vec());
        self.scan_candidates(&q, counters, &mut |x, imp, _| {
            visit(x, imp)?;
            Ok(Visit::Continue)
        })
    }
}

/// Compares `a.0 / a.1` with `b.0 / b.1` for positive numerators and
/// nonnegative denominators, where a zero denominator is +∞.
fn compare_ratio(a: (i128, i128), b: (i128, i128)) -> Result<Ordering> {
    Ok(match (a.1 == 0, b.1 == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => mul(a.0, b.1)?.cmp(&mul(b.0, a.1)?),
    })
}

/// The exact ratio `improvement / ρ` for reporting.
pub fn ratio_of<F: FeasibleSet + ?Sized>(
    set: &F,
    c: &[i64],
    anchor: &[i64],
    x: &[i64],
    kind: PotentialKind,
) -> Result<Option<BigRational>> {
    let z = difference(x, anchor);
    let imp = BigRational::from_integer(dot(c, &z).into());
    Ok(match crate::potential::evaluate(kind, set, anchor, &z) {
        crate::numeric::ExtendedValue::Finite(r) if !r.is_zero() => Some(imp / r),
        _ => None,
    })
}
