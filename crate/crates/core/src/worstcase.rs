//! Adversarial 0/1 family on which bit scaling needs `Ω(n log C)`
//! augmentations.
//!
//! The set has 2k points in dimension `n = 8k − 2`, laid out as four
//! blocks of lengths `k−1, k−1, 3k, 3k`. Costs are built bit by bit,
//! `c^ℓ = 2c^{ℓ−1} + d^ℓ`, so that bit scaling sees exactly `c¹, …, c^p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{ObjectiveVector, PointSetInstance};
use crate::numeric::dot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WorstCaseParams {
    pub k: usize,
    pub p: usize,
}

impl WorstCaseParams {
    pub fn new(k: usize, p: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "k must be at least 2, got {k}"
            )));
        }
        if p < 1 {
            return Err(Error::InvalidParameter("p must be at least 1".into()));
        }
        if p > 61 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} overflows 64-bit costs"
            )));
        }
        Ok(WorstCaseParams { k, p })
    }

    pub fn dim(&self) -> usize {
        8 * self.k - 2
    }
}

#[derive(Debug, Clone)]
pub struct WorstCaseInstance {
    pub params: WorstCaseParams,
    /// Points `y¹, …, y^{2k}` with objective `c^p`.
    pub pointset: PointSetInstance,
    /// `c⁰ = 0, c¹, …, c^p`
    pub cost_levels: Vec<Vec<i64>>,
    /// `d¹, …, d^p`
    pub layers: Vec<Vec<i64>>,
}

impl WorstCaseInstance {
    /// `y^j` for `j = 1..=2k`.
    pub fn point(&self, j: usize) -> &[i64] {
        &self.pointset.points()[j - 1]
    }

    /// Adversarial start point `y^{2k}`.
    pub fn start(&self) -> Vec<i64> {
        self.point(2 * self.params.k).to_vec()
    }

    pub fn cost(&self, level: usize) -> &[i64] {
        &self.cost_levels[level]
    }

    /// Index `j` of a point of the family.
    pub fn index_of(&self, x: &[i64]) -> Option<usize> {
        self.pointset
            .points()
            .iter()
            .position(|y| y == x)
            .map(|i| i + 1)
    }
}

fn assemble(b1: Vec<i64>, b2: Vec<i64>, b3: Vec<i64>, b4: Vec<i64>) -> Vec<i64> {
    [b1, b2, b3, b4].concat()
}

fn family_point(k: usize, j: usize) -> Vec<i64> {
    let first = j <= k;
    let shift = if first { j } else { j - k };
    let b1 = (1..k).map(|i| i64::from(i >= shift)).collect();
    let b2 = (1..k).map(|i| i64::from(i < shift)).collect();
    assemble(
        b1,
        b2,
        vec![i64::from(first); 3 * k],
        vec![i64::from(!first); 3 * k],
    )
}

fn layer(k: usize, level: usize) -> Vec<i64> {
    if level == 1 {
        let b3 = (1..=3 * k).map(|i| i64::from(i <= k)).collect();
        assemble(vec![1; k - 1], vec![0; k - 1], b3, vec![0; 3 * k])
    } else {
        let odd = level % 2 == 1;
        assemble(
            vec![0; k - 1],
            vec![1; k - 1],
            vec![i64::from(odd); 3 * k],
            vec![i64::from(!odd); 3 * k],
        )
    }
}

pub fn build_worstcase(params: WorstCaseParams) -> Result<WorstCaseInstance> {
    let WorstCaseParams { k, p } = WorstCaseParams::new(params.k, params.p)?;
    let n = params.dim();
    let layers: Vec<Vec<i64>> = (1..=p).map(|l| layer(k, l)).collect();
    let mut cost_levels = vec![vec![0i64; n]];
    for d in &layers {
        let prev = cost_levels.last().unwrap();
        cost_levels.push(prev.iter().zip(d).map(|(c, d)| 2 * c + d).collect());
    }
    let points = (1..=2 * k).map(|j| family_point(k, j)).collect();
    let pointset = PointSetInstance::new(points, ObjectiveVector::new(cost_levels[p].clone()))?;
    Ok(WorstCaseInstance {
        params,
        pointset,
        cost_levels,
        layers,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingKind {
    /// `c^ℓ y^j = c^ℓ y^{j+1} + 1` inside a group of k points.
    Intragroup,
    /// The unit gap linking the two groups at level ℓ.
    Intergroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingCheck {
    pub kind: OrderingKind,
    pub level: usize,
    /// Asserted identity `c^level y^upper = c^level y^lower + 1`.
    pub upper: usize,
    pub lower: usize,
    pub upper_value: i128,
    pub lower_value: i128,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingReport {
    pub params: WorstCaseParams,
    pub checks: Vec<OrderingCheck>,
}

impl OrderingReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &OrderingCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Evaluates every unit-difference identity of the family at every level.
pub fn verify_orderings(inst: &WorstCaseInstance) -> OrderingReport {
    let WorstCaseParams { k, p } = inst.params;
    let mut checks = Vec::new();
    for level in 1..=p {
        let c = inst.cost(level);
        let mut push = |kind, upper: usize, lower: usize| {
            let upper_value = dot(c, inst.point(upper));
            let lower_value = dot(c, inst.point(lower));
            checks.push(OrderingCheck {
                kind,
                level,
                upper,
                lower,
                upper_value,
                lower_value,
                pass: upper_value == lower_value + 1,
            });
        };
        for j in (1..k).chain(k + 1..2 * k) {
            push(OrderingKind::Intragroup, j, j + 1);
        }
        if level % 2 == 1 {
            push(OrderingKind::Intergroup, k, k + 1);
        } else {
            push(OrderingKind::Intergroup, 2 * k, 1);
        }
    }
    OrderingReport {
        params: inst.params,
        checks,
    }
}

/// Augmentations of the least-improving bit-scaling trajectory from
/// `y^{2k}`: all 2k points in the first phase, k per later phase.
pub fn predicted_adversarial_count(params: WorstCaseParams) -> u64 {
    let (k, p) = (params.k as u64, params.p as u64);
    (2 * k - 1) + (p - 1) * k
}

/// Point indices visited in phase `level` of the adversarial trajectory,
/// including the phase's starting point.
pub fn predicted_phase_path(params: WorstCaseParams, level: usize) -> Vec<usize> {
    let k = params.k;
    match level {
        1 => (1..=2 * k).rev().collect(),
        l if l % 2 == 0 => std::iter::once(1).chain((k + 1..=2 * k).rev()).collect(),
        _ => std::iter::once(k + 1).chain((1..=k).rev()).collect(),
    }
}
