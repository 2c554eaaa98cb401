//! Bounded integer programs, explicit point sets, and the geometric
//! predicates shared by every algorithm (membership, exhaustiveness,
//! exhaustion of a direction).

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::dot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<i64>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Row {
    pub fn new(coeffs: Vec<i64>, sense: Sense, rhs: i64) -> Self {
        Row { coeffs, sense, rhs }
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        let lhs = dot(&self.coeffs, x);
        let rhs = self.rhs as i128;
        match self.sense {
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
            Sense::Ge => lhs >= rhs,
        }
    }
}

/// Integer objective `c`; the original objective is `c / scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveVector {
    coeffs: Vec<i64>,
    scale: BigRational,
    integral_objective: bool,
}

impl ObjectiveVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        ObjectiveVector {
            coeffs,
            scale: BigRational::one(),
            integral_objective: true,
        }
    }

    pub fn with_scale(coeffs: Vec<i64>, scale: BigRational) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidInstance(
                "objective scale must be positive".into(),
            ));
        }
        Ok(ObjectiveVector {
            coeffs,
            scale,
            integral_objective: true,
        })
    }

    /// Marks the objective as possibly non-integral on feasible points
    /// (switches improving cuts to the fractional δ rule).
    pub fn non_integral(mut self) -> Self {
        self.integral_objective = false;
        self
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    pub fn integral_objective(&self) -> bool {
        self.integral_objective
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// `‖c‖∞ + 1`, the constant used by bit scaling.
    pub fn c_bit(&self) -> u64 {
        self.max_abs() + 1
    }

    /// `‖c‖∞`, the constant used by geometric scaling.
    pub fn c_geo(&self) -> u64 {
        self.max_abs()
    }

    pub fn value(&self, x: &[i64]) -> i128 {
        dot(&self.coeffs, x)
    }

    /// Objective value in the units of the original input.
    pub fn original_value(&self, x: &[i64]) -> BigRational {
        BigRational::from_integer(BigInt::from(self.value(x))) / &self.scale
    }
}

/// Common interface of the two feasible-set representations.
pub trait FeasibleSet: Sync {
    fn dim(&self) -> usize;
    fn lower(&self) -> &[i64];
    fn upper(&self) -> &[i64];
    fn objective(&self) -> &ObjectiveVector;

    /// Membership of an integer point.
    fn contains(&self, x: &[i64]) -> bool;

    /// Visits every feasible integer point satisfying `req.cuts` (and the
    /// dynamic guide threshold) in a deterministic order.
    fn scan(
        &self,
        req: &ScanRequest<'_>,
        visit: &mut dyn FnMut(&[i64]) -> Visit,
    ) -> Result<ScanStats>;

    fn is_binary(&self) -> bool {
        self.lower().iter().all(|&l| l == 0) && self.upper().iter().all(|&u| u == 1)
    }

    /// `U := max_j u_j`
    fn u_max(&self) -> i64 {
        self.upper().iter().copied().max().unwrap_or(0)
    }

    /// `L := min_j l_j`
    fn l_min(&self) -> i64 {
        self.lower().iter().copied().min().unwrap_or(0)
    }

    fn check_dim(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }
}

/// `coeffs · x ≥ min`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCut {
    pub coeffs: Vec<i64>,
    pub min: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
    /// Require `guide · x ≥ v` for the rest of the scan.
    Raise(i128),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub nodes: u64,
    pub pruned: u64,
    pub points: u64,
}

impl ScanStats {
    pub fn absorb(&mut self, other: ScanStats) {
        self.nodes += other.nodes;
        self.pruned += other.pruned;
        self.points += other.points;
    }
}

pub const DEFAULT_NODE_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone)]
pub struct ScanRequest<'a> {
    pub cuts: &'a [LinearCut],
    /// Objective used for value ordering and for `Visit::Raise` pruning.
    pub guide: Option<&'a [i64]>,
    pub node_cap: u64,
}

impl<'a> ScanRequest<'a> {
    pub fn new(cuts: &'a [LinearCut], guide: Option<&'a [i64]>) -> Self {
        ScanRequest {
            cuts,
            guide,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

/// Bounded integer program `max {cx | rows, l ≤ x ≤ u, x ∈ Zⁿ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    rows: Vec<Row>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    objective: ObjectiveVector,
    negated: bool,
}

impl Instance {
    pub fn new(
        rows: Vec<Row>,
        lower: Vec<i64>,
        upper: Vec<i64>,
        objective: ObjectiveVector,
    ) -> Result<Self> {
        let n = lower.len();
        if n == 0 {
            return Err(Error::InvalidInstance("dimension must be positive".into()));
        }
        if upper.len() != n || objective.len() != n {
            return Err(Error::InvalidInstance(
                "bounds and objective must have length n".into(),
            ));
        }
        if let Some(j) = (0..n).find(|&j| lower[j] > upper[j]) {
            return Err(Error::InvalidInstance(format!(
                "empty bound interval at variable {j}"
            )));
        }
        if let Some(i) = rows.iter().position(|r| r.coeffs.len() != n) {
            return Err(Error::InvalidInstance(format!(
                "row {i} does not have {n} coefficients"
            )));
        }
        Ok(Instance {
            n,
            rows,
            lower,
            upper,
            objective,
            negated: false,
        })
    }

    /// The 0/1 cube `{0,1}ⁿ` with no rows.
    pub fn binary_box(objective: Vec<i64>) -> Result<Self> {
        let n = objective.len();
        Instance::new(
            vec![],
            vec![0; n],
            vec![1; n],
            ObjectiveVector::new(objective),
        )
    }

    pub fn boxed(lower: Vec<i64>, upper: Vec<i64>, objective: Vec<i64>) -> Result<Self> {
        Instance::new(vec![], lower, upper, ObjectiveVector::new(objective))
    }

    /// Records that the objective was negated from a minimization input.
    pub fn mark_negated(mut self) -> Self {
        self.negated = true;
        self
    }

    pub fn negated(&self) -> bool {
        self.negated
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn with_objective(&self, objective: ObjectiveVector) -> Result<Self> {
        if objective.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: objective.len(),
            });
        }
        Ok(Instance {
            objective,
            ..self.clone()
        })
    }

    pub fn check_feasible(&self, x: &[i64]) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.contains(x))
    }

    pub fn flip_to_nonnegative(&self) -> Result<(Instance, FlipMap)> {
        if !self.is_binary() {
            return Err(Error::NotBinary);
        }
        let map = FlipMap::for_objective(self.objective.coeffs());
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let (coeffs, shift) = map.transform_linear(&row.coeffs);
            let rhs = (row.rhs as i128 - shift)
                .to_i64()
                .ok_or(Error::Overflow("flipped rhs"))?;
            rows.push(Row::new(coeffs, row.sense, rhs));
        }
        let (c, _) = map.transform_linear(self.objective.coeffs());
        let objective = ObjectiveVector {
            coeffs: c,
            scale: self.objective.scale.clone(),
            integral_objective: self.objective.integral_objective,
        };
        let flipped = Instance {
            n: self.n,
            rows,
            lower: self.lower.clone(),
            upper: self.upper.clone(),
            objective,
            negated: self.negated,
        };
        Ok((flipped, map))
    }

    /// Enumerates all feasible points (in DFS order).
    pub fn enumerate(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.scan(&ScanRequest::new(&[], None), &mut |x| {
            out.push(x.to_vec());
            Visit::Continue
        })?;
        Ok(out)
    }
}

/// Interval bookkeeping for one constraint `lo ≤ a·x ≤ hi` during DFS.
struct Propagator {
    coeffs: Vec<i64>,
    lo: Option<i128>,
    hi: Option<i128>,
    suffix_min: Vec<i128>,
    suffix_max: Vec<i128>,
}

impl Propagator {
    fn new(
        coeffs: &[i64],
        lo: Option<i128>,
        hi: Option<i128>,
        lower: &[i64],
        upper: &[i64],
    ) -> Self {
        let n = coeffs.len();
        let mut suffix_min = vec![0i128; n + 1];
        let mut suffix_max = vec![0i128; n + 1];
        for j in (0..n).rev() {
            let a = coeffs[j] as i128;
            let (p, q) = (a * lower[j] as i128, a * upper[j] as i128);
            suffix_min[j] = suffix_min[j + 1] + p.min(q);
            suffix_max[j] = suffix_max[j + 1] + p.max(q);
        }
        Propagator {
            coeffs: coeffs.to_vec(),
            lo,
            hi,
            suffix_min,
            suffix_max,
        }
    }

    /// Whether the attainable interval after fixing vars `< depth` meets the bounds.
    fn viable(&self, partial: i128, depth: usize) -> bool {
        if let Some(lo) = self.lo {
            if partial + self.suffix_max[depth] < lo {
                return false;
            }
        }
        if let Some(hi) = self.hi {
            if partial + self.suffix_min[depth] > hi {
                return false;
            }
        }
        true
    }
}

struct Dfs<'a, 'v> {
    lower: &'a [i64],
    upper: &'a [i64],
    props: Vec<Propagator>,
    partial: Vec<i128>,
    guide: Option<usize>,
    ascending: Vec<bool>,
    x: Vec<i64>,
    stats: ScanStats,
    cap: u64,
    stop: bool,
    visit: &'v mut dyn FnMut(&[i64]) -> Visit,
}

impl Dfs<'_, '_> {
    fn viable(&self, depth: usize) -> bool {
        self.props
            .iter()
            .zip(&self.partial)
            .all(|(p, &s)| p.viable(s, depth))
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        if self.stop {
            return Ok(());
        }
        if depth == self.x.len() {
            self.stats.points += 1;
            match (self.visit)(&self.x) {
                Visit::Continue => {}
                Visit::Stop => self.stop = true,
                Visit::Raise(v) => {
                    if let Some(g) = self.guide {
                        let lo = &mut self.props[g].lo;
                        *lo = Some(lo.map_or(v, |cur| cur.max(v)));
                    }
                }
            }
            return Ok(());
        }
        let (l, u) = (self.lower[depth], self.upper[depth]);
        let count = (u - l) as i128 + 1;
        for step in 0..count {
            let v = if self.ascending[depth] {
                l + step as i64
            } else {
                u - step as i64
            };
            self.stats.nodes += 1;
            if self.stats.nodes > self.cap {
                return Err(Error::ResourceLimit { cap: self.cap });
            }
            self.x[depth] = v;
            for (p, s) in self.props.iter().zip(self.partial.iter_mut()) {
                *s += p.coeffs[depth] as i128 * v as i128;
            }
            if self.viable(depth + 1) {
                self.run(depth + 1)?;
            } else {
                self.stats.pruned += 1;
            }
            for (p, s) in self.props.iter().zip(self.partial.iter_mut()) {
                *s -= p.coeffs[depth] as i128 * v as i128;
            }
            if self.stop {
                break;
            }
        }
        Ok(())
    }
}

impl FeasibleSet for Instance {
    fn dim(&self) -> usize {
        self.n
    }

    fn lower(&self) -> &[i64] {
        &self.lower
    }

    fn upper(&self) -> &[i64] {
        &self.upper
    }

    fn objective(&self) -> &ObjectiveVector {
        &self.objective
    }

    fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.n
            && x.iter().zip(&self.lower).all(|(v, l)| v >= l)
            && x.iter().zip(&self.upper).all(|(v, u)| v <= u)
            && self.rows.iter().all(|r| r.holds(x))
    }

    /// Depth-first search over the box in ascending variable order, pruning
    /// a partial assignment as soon as some row's attainable interval
    /// excludes its right-hand side.
    fn scan(
        &self,
        req: &ScanRequest<'_>,
        visit: &mut dyn FnMut(&[i64]) -> Visit,
    ) -> Result<ScanStats> {
        let (lower, upper) = (&self.lower[..], &self.upper[..]);
        let mut props: Vec<Propagator> = self
            .rows
            .iter()
            .map(|r| {
                let rhs = r.rhs as i128;
                let (lo, hi) = match r.sense {
                    Sense::Le => (None, Some(rhs)),
                    Sense::Eq => (Some(rhs), Some(rhs)),
                    Sense::Ge => (Some(rhs), None),
                };
                Propagator::new(&r.coeffs, lo, hi, lower, upper)
            })
            .collect();
        for cut in req.cuts {
            props.push(Propagator::new(
                &cut.coeffs,
                Some(cut.min),
                None,
                lower,
                upper,
            ));
        }
        let guide = req.guide.map(|g| {
            props.push(Propagator::new(g, None, None, lower, upper));
            props.len() - 1
        });
        let order_by = req
            .guide
            .or_else(|| req.cuts.first().map(|c| &c.coeffs[..]));
        let ascending = (0..self.n)
            .map(|j| order_by.is_some_and(|o| o[j] < 0))
            .collect();
        let mut dfs = Dfs {
            lower,
            upper,
            partial: vec![0; props.len()],
            props,
            guide,
            ascending,
            x: vec![0; self.n],
            stats: ScanStats::default(),
            cap: req.node_cap,
            stop: false,
            visit,
        };
        if dfs.viable(0) {
            dfs.run(0)?;
        }
        Ok(dfs.stats)
    }
}

/// Explicit list of integral points; the feasible set is exactly the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSetInstance {
    n: usize,
    points: Vec<Vec<i64>>,
    members: HashSet<Vec<i64>>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    objective: ObjectiveVector,
}

impl PointSetInstance {
    pub fn new(points: Vec<Vec<i64>>, objective: ObjectiveVector) -> Result<Self> {
        let n = objective.len();
        if n == 0 {
            return Err(Error::InvalidInstance("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidInstance("point set must be nonempty".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        let members: HashSet<Vec<i64>> = points.iter().cloned().collect();
        if members.len() != points.len() {
            return Err(Error::InvalidInstance(
                "points must be pairwise distinct".into(),
            ));
        }
        let lower = (0..n)
            .map(|j| points.iter().map(|p| p[j]).min().unwrap())
            .collect();
        let upper = (0..n)
            .map(|j| points.iter().map(|p| p[j]).max().unwrap())
            .collect();
        Ok(PointSetInstance {
            n,
            points,
            members,
            lower,
            upper,
            objective,
        })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// Every listed point lies in {0,1}ⁿ, so conv(points) ∩ Zⁿ is the list.
    pub fn all_points_binary(&self) -> bool {
        self.points.iter().flatten().all(|&v| v == 0 || v == 1)
    }

    pub fn with_objective(&self, objective: ObjectiveVector) -> Result<Self> {
        PointSetInstance::new(self.points.clone(), objective)
    }
}

impl FeasibleSet for PointSetInstance {
    fn dim(&self) -> usize {
        self.n
    }

    fn lower(&self) -> &[i64] {
        &self.lower
    }

    fn upper(&self) -> &[i64] {
        &self.upper
    }

    fn objective(&self) -> &ObjectiveVector {
        &self.objective
    }

    fn contains(&self, x: &[i64]) -> bool {
        self.members.contains(x)
    }

    fn is_binary(&self) -> bool {
        self.all_points_binary()
    }

    fn scan(
        &self,
        req: &ScanRequest<'_>,
        visit: &mut dyn FnMut(&[i64]) -> Visit,
    ) -> Result<ScanStats> {
        let mut stats = ScanStats::default();
        let mut floor: Option<i128> = None;
        for p in &self.points {
            stats.nodes += 1;
            if stats.nodes > req.node_cap {
                return Err(Error::ResourceLimit { cap: req.node_cap });
            }
            let cut_ok = req.cuts.iter().all(|c| dot(&c.coeffs, p) >= c.min);
            let guide_ok = match (req.guide, floor) {
                (Some(g), Some(f)) => dot(g, p) >= f,
                _ => true,
            };
            if !(cut_ok && guide_ok) {
                stats.pruned += 1;
                continue;
            }
            stats.points += 1;
            match visit(p) {
                Visit::Continue => {}
                Visit::Stop => break,
                Visit::Raise(v) => floor = Some(floor.map_or(v, |f| f.max(v))),
            }
        }
        Ok(stats)
    }
}

/// Coordinate flips `x_i ↦ 1 − x_i` that make an objective nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlipMap {
    mask: Vec<bool>,
    /// Constant added to flipped objective values to recover original ones:
    /// `c·x = c'·x' + offset`.
    offset: i128,
}

impl FlipMap {
    pub fn for_objective(c: &[i64]) -> Self {
        let mask: Vec<bool> = c.iter().map(|&v| v < 0).collect();
        let offset = c
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(&v, _)| v as i128)
            .sum();
        FlipMap { mask, offset }
    }

    pub fn identity(n: usize) -> Self {
        FlipMap {
            mask: vec![false; n],
            offset: 0,
        }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn offset(&self) -> i128 {
        self.offset
    }

    pub fn is_identity(&self) -> bool {
        !self.mask.iter().any(|&m| m)
    }

    /// Maps a point into flipped coordinates; involutive.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.mask)
            .map(|(&v, &m)| if m { 1 - v } else { v })
            .collect()
    }

    pub fn unapply(&self, x: &[i64]) -> Vec<i64> {
        self.apply(x)
    }

    /// Rewrites `a·x` as `a''·x' + shift` where `x'` are flipped coordinates.
    pub fn transform_linear(&self, a: &[i64]) -> (Vec<i64>, i128) {
        let coeffs = a
            .iter()
            .zip(&self.mask)
            .map(|(&v, &m)| if m { -v } else { v })
            .collect();
        let shift = a
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(&v, _)| v as i128)
            .sum();
        (coeffs, shift)
    }
}

/// View of a 0/1 feasible set in flipped coordinates.
pub struct Flipped<'a, F: FeasibleSet + ?Sized> {
    inner: &'a F,
    map: FlipMap,
    objective: ObjectiveVector,
}

impl<'a, F: FeasibleSet + ?Sized> Flipped<'a, F> {
    pub fn new(inner: &'a F) -> Result<Self> {
        if !inner.is_binary() {
            return Err(Error::NotBinary);
        }
        let map = FlipMap::for_objective(inner.objective().coeffs());
        let (c, _) = map.transform_linear(inner.objective().coeffs());
        let mut objective = ObjectiveVector::with_scale(c, inner.objective().scale().clone())?;
        if !inner.objective().integral_objective() {
            objective = objective.non_integral();
        }
        Ok(Flipped {
            inner,
            map,
            objective,
        })
    }

    pub fn map(&self) -> &FlipMap {
        &self.map
    }
}

impl<F: FeasibleSet + ?Sized> FeasibleSet for Flipped<'_, F> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn lower(&self) -> &[i64] {
        self.inner.lower()
    }

    fn upper(&self) -> &[i64] {
        self.inner.upper()
    }

    fn objective(&self) -> &ObjectiveVector {
        &self.objective
    }

    fn contains(&self, x: &[i64]) -> bool {
        x.iter().all(|&v| v == 0 || v == 1) && self.inner.contains(&self.map.unapply(x))
    }

    fn is_binary(&self) -> bool {
        true
    }

    fn scan(
        &self,
        req: &ScanRequest<'_>,
        visit: &mut dyn FnMut(&[i64]) -> Visit,
    ) -> Result<ScanStats> {
        // a·x' ≥ m  ⇔  a''·x ≥ m − shift, with x the unflipped point.
        let cuts: Vec<LinearCut> = req
            .cuts
            .iter()
            .map(|c| {
                let (coeffs, shift) = self.map.transform_linear(&c.coeffs);
                LinearCut {
                    coeffs,
                    min: c.min - shift,
                }
            })
            .collect();
        let guide = req.guide.map(|g| self.map.transform_linear(g));
        let inner_req = ScanRequest {
            cuts: &cuts,
            guide: guide.as_ref().map(|(g, _)| &g[..]),
            node_cap: req.node_cap,
        };
        let guide_shift = guide.as_ref().map_or(0, |(_, s)| *s);
        let map = &self.map;
        self.inner
            .scan(&inner_req, &mut |x| match visit(&map.apply(x)) {
                Visit::Raise(v) => Visit::Raise(v - guide_shift),
                other => other,
            })
    }
}

/// Integer direction `z` anchored at `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction {
    pub base: Vec<i64>,
    pub z: Vec<i64>,
}

impl Direction {
    pub fn new(base: Vec<i64>, z: Vec<i64>) -> Result<Self> {
        if base.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                got: z.len(),
            });
        }
        Ok(Direction { base, z })
    }

    pub fn between(from: &[i64], to: &[i64]) -> Self {
        Direction {
            base: from.to_vec(),
            z: difference(to, from),
        }
    }

    pub fn positive_part(&self) -> Vec<i64> {
        self.z.iter().map(|&v| v.max(0)).collect()
    }

    pub fn negative_part(&self) -> Vec<i64> {
        self.z.iter().map(|&v| (-v).max(0)).collect()
    }

    pub fn target(&self) -> Vec<i64> {
        step(&self.base, &self.z, 1)
    }

    pub fn is_feasible<F: FeasibleSet + ?Sized>(&self, set: &F) -> bool {
        set.contains(&self.target())
    }
}

pub fn difference(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// `x + α·z`
pub fn step(x: &[i64], z: &[i64], alpha: i64) -> Vec<i64> {
    x.iter().zip(z).map(|(&a, &b)| a + alpha * b).collect()
}

/// `supp(z)` as zero-based indices.
pub fn support(z: &[i64]) -> Vec<usize> {
    z.iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(j, _)| j)
        .collect()
}

fn check_direction<F: FeasibleSet + ?Sized>(set: &F, x: &[i64], z: &[i64]) -> Result<()> {
    set.check_dim(x)?;
    set.check_dim(z)?;
    if z.iter().all(|&v| v == 0) {
        return Err(Error::ZeroDirection);
    }
    Ok(())
}

/// `z` is exhaustive for `x` iff `x + 2z` is infeasible.
pub fn is_exhaustive<F: FeasibleSet + ?Sized>(set: &F, x: &[i64], z: &[i64]) -> Result<bool> {
    check_direction(set, x, z)?;
    Ok(!set.contains(&step(x, z, 2)))
}

/// Largest `α ≥ 1` with `x + αz` feasible, given that `x + z` is feasible.
///
/// Doubling from 1 and then bisecting between the last feasible and the
/// first infeasible multiple, capped by the bound slack.
pub fn exhaust_direction<F: FeasibleSet + ?Sized>(set: &F, x: &[i64], z: &[i64]) -> Result<i64> {
    check_direction(set, x, z)?;
    let mut alpha_max = i64::MAX;
    for j in 0..z.len() {
        let slack = match z[j].cmp(&0) {
            std::cmp::Ordering::Greater => (set.upper()[j] - x[j]) / z[j],
            std::cmp::Ordering::Less => (x[j] - set.lower()[j]) / -z[j],
            std::cmp::Ordering::Equal => continue,
        };
        alpha_max = alpha_max.min(slack);
    }
    if alpha_max <= 1 {
        return Ok(1);
    }
    let feasible = |a: i64| set.contains(&step(x, z, a));
    let mut good = 1i64;
    let mut bad = loop {
        let next = good.saturating_mul(2);
        if next > alpha_max {
            break alpha_max + 1;
        }
        if feasible(next) {
            good = next;
        } else {
            break next;
        }
    };
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if feasible(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

/// Clears rational data to integers.
pub fn clear_denominators(values: &[BigRational]) -> Result<(Vec<i64>, BigRational)> {
    use num_integer::Integer;
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = BigRational::from_integer(lcm);
    let ints = values
        .iter()
        .map(|q| {
            (q * &scale)
                .to_integer()
                .to_i64()
                .ok_or(Error::Overflow("cleared coefficient"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ints, scale))
}
