//! Seeded instance generators.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, ObjectiveVector, Row, Sense};
use crate::io::LoadedInstance;
use crate::worstcase::{build_worstcase, verify_orderings, WorstCaseInstance, WorstCaseParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GeneratorKind {
    RandomKnapsack,
    RandomSetpack,
    CardinalityK,
    Worstcase,
}

impl std::str::FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "RANDOM_KNAPSACK" | "KNAPSACK" => Ok(GeneratorKind::RandomKnapsack),
            "RANDOM_SETPACK" | "SETPACK" => Ok(GeneratorKind::RandomSetpack),
            "CARDINALITY_K" | "CARDINALITY" => Ok(GeneratorKind::CardinalityK),
            "WORSTCASE" => Ok(GeneratorKind::Worstcase),
            other => Err(format!("unknown generator {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    /// Cardinality for `CARDINALITY_K`, family size for `WORSTCASE`.
    pub k: usize,
    /// Number of cost levels for `WORSTCASE`.
    pub p: usize,
    /// Objective coefficients are drawn from `[1, c_max]`.
    pub c_max: i64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            n,
            k: 3,
            p: 3,
            c_max: 100,
            seed,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.p = p;
        self
    }

    pub fn with_c_max(mut self, c_max: i64) -> Self {
        self.c_max = c_max;
        self
    }

    /// Short stable identifier, e.g. `knapsack-n10-c100-s7`.
    pub fn id(&self) -> String {
        match self.kind {
            GeneratorKind::RandomKnapsack => {
                format!("knapsack-n{}-c{}-s{}", self.n, self.c_max, self.seed)
            }
            GeneratorKind::RandomSetpack => {
                format!("setpack-n{}-c{}-s{}", self.n, self.c_max, self.seed)
            }
            GeneratorKind::CardinalityK => format!(
                "card-n{}-k{}-c{}-s{}",
                self.n, self.k, self.c_max, self.seed
            ),
            GeneratorKind::Worstcase => format!("worstcase-k{}-p{}", self.k, self.p),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Generated {
    Instance(LoadedInstance),
    Worstcase(WorstCaseInstance),
}

impl Generated {
    pub fn loaded(&self) -> LoadedInstance {
        match self {
            Generated::Instance(i) => i.clone(),
            Generated::Worstcase(w) => LoadedInstance::vrep(w.pointset.clone()),
        }
    }
}

fn costs(rng: &mut ChaCha8Rng, n: usize, c_max: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(1..=c_max)).collect()
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    if spec.kind != GeneratorKind::Worstcase {
        if spec.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if spec.c_max < 1 {
            return Err(Error::InvalidParameter("c_max must be at least 1".into()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let binary = |rows, c| Instance::new(rows, vec![0; n], vec![1; n], ObjectiveVector::new(c));
    let inst = match spec.kind {
        GeneratorKind::RandomKnapsack => {
            let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=100)).collect();
            let cap = w.iter().sum::<i64>() / 2;
            let c = costs(&mut rng, n, spec.c_max);
            binary(vec![Row::new(w, Sense::Le, cap)], c)?
        }
        GeneratorKind::RandomSetpack => {
            if n < 2 {
                return Err(Error::InvalidParameter("set packing needs n ≥ 2".into()));
            }
            let m = (n / 2).max(2);
            let rows = (0..m)
                .map(|_| {
                    let size = rng.gen_range(2..=3.min(n));
                    let mut coeffs = vec![0; n];
                    for j in sample(&mut rng, n, size) {
                        coeffs[j] = 1;
                    }
                    Row::new(coeffs, Sense::Le, 1)
                })
                .collect();
            let c = costs(&mut rng, n, spec.c_max);
            binary(rows, c)?
        }
        GeneratorKind::CardinalityK => {
            if spec.k == 0 || spec.k > n {
                return Err(Error::InvalidParameter(format!(
                    "cardinality k = {} must lie in 1..={n}",
                    spec.k
                )));
            }
            let c = costs(&mut rng, n, spec.c_max);
            binary(vec![Row::new(vec![1; n], Sense::Eq, spec.k as i64)], c)?
        }
        GeneratorKind::Worstcase => {
            let w = build_worstcase(WorstCaseParams::new(spec.k, spec.p)?)?;
            let report = verify_orderings(&w);
            if let Some(bad) = report.failures().next() {
                return Err(Error::InvariantViolated(format!(
                    "ordering identity failed: {bad:?}"
                )));
            }
            return Ok(Generated::Worstcase(w));
        }
    };
    Ok(Generated::Instance(LoadedInstance::hrep(inst)))
}
