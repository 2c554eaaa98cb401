//! Potential functions ρ(x, z).
//!
//! The standard potential charges `z⁺_j / (u_j − x_j) + z⁻_j / (x_j − l_j)`
//! per coordinate, with an infinite weight on a tight bound. The ℓ₁
//! potential is `‖z‖₁`. Both are applied to the bound constraints only;
//! general rows act as membership predicates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::FeasibleSet;
use crate::numeric::{lcm_i128, mul, ExtendedValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Standard,
    L1,
}

impl std::str::FromStr for PotentialKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "standard" => Ok(PotentialKind::Standard),
            "l1" => Ok(PotentialKind::L1),
            other => Err(format!("unknown potential {other:?}")),
        }
    }
}

/// ρ(x, z) = p(x)·z⁺ + n(x)·z⁻ with the bounds of `set`.
pub fn standard_potential<F: FeasibleSet + ?Sized>(set: &F, x: &[i64], z: &[i64]) -> ExtendedValue {
    let (lower, upper) = (set.lower(), set.upper());
    let mut total = BigRational::zero();
    for j in 0..z.len() {
        let (amount, room) = match z[j] {
            0 => continue,
            v if v > 0 => (v, upper[j] - x[j]),
            v => (-v, x[j] - lower[j]),
        };
        if room <= 0 {
            return ExtendedValue::Infinite;
        }
        total += BigRational::new(BigInt::from(amount), BigInt::from(room));
    }
    ExtendedValue::Finite(total)
}

pub fn l1_potential(z: &[i64]) -> u64 {
    z.iter().map(|v| v.unsigned_abs()).sum()
}

pub fn evaluate<F: FeasibleSet + ?Sized>(
    kind: PotentialKind,
    set: &F,
    x: &[i64],
    z: &[i64],
) -> ExtendedValue {
    match kind {
        PotentialKind::Standard => standard_potential(set, x, z),
        PotentialKind::L1 => {
            ExtendedValue::Finite(BigRational::from_integer(BigInt::from(l1_potential(z))))
        }
    }
}

/// Integer numerator of ρ relative to a fixed anchor: ρ = numer / denom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaledPotential {
    Finite(i128),
    Infinite,
}

/// Per-anchor integer weights such that ρ(x̃, z) = Σ w_j·|z_j| / denom.
#[derive(Debug, Clone)]
pub struct PotentialWeights {
    denom: i128,
    plus: Vec<Option<i128>>,
    minus: Vec<Option<i128>>,
}

impl PotentialWeights {
    pub fn at<F: FeasibleSet + ?Sized>(
        kind: PotentialKind,
        set: &F,
        anchor: &[i64],
    ) -> Result<Self> {
        let n = anchor.len();
        match kind {
            PotentialKind::L1 => Ok(PotentialWeights {
                denom: 1,
                plus: vec![Some(1); n],
                minus: vec![Some(1); n],
            }),
            PotentialKind::Standard => {
                let (lower, upper) = (set.lower(), set.upper());
                let mut denom = 1i128;
                for j in 0..n {
                    for room in [upper[j] - anchor[j], anchor[j] - lower[j]] {
                        if room > 0 {
                            denom = lcm_i128(denom, room as i128)?;
                        }
                    }
                }
                let weight = |room: i64| (room > 0).then(|| denom / room as i128);
                let plus = (0..n).map(|j| weight(upper[j] - anchor[j])).collect();
                let minus = (0..n).map(|j| weight(anchor[j] - lower[j])).collect();
                Ok(PotentialWeights { denom, plus, minus })
            }
        }
    }

    pub fn denom(&self) -> i128 {
        self.denom
    }

    pub fn numer(&self, z: &[i64]) -> Result<ScaledPotential> {
        let mut total = 0i128;
        for (j, &v) in z.iter().enumerate() {
            let w = match v.cmp(&0) {
                std::cmp::Ordering::Equal => continue,
                std::cmp::Ordering::Greater => self.plus[j],
                std::cmp::Ordering::Less => self.minus[j],
            };
            match w {
                None => return Ok(ScaledPotential::Infinite),
                Some(w) => {
                    total = total
                        .checked_add(mul(w, v.unsigned_abs() as i128)?)
                        .ok_or(crate::error::Error::Overflow("potential"))?
                }
            }
        }
        Ok(ScaledPotential::Finite(total))
    }

    pub fn value(&self, z: &[i64]) -> Result<ExtendedValue> {
        Ok(match self.numer(z)? {
            ScaledPotential::Infinite => ExtendedValue::Infinite,
            ScaledPotential::Finite(v) => {
                ExtendedValue::Finite(BigRational::new(BigInt::from(v), BigInt::from(self.denom)))
            }
        })
    }
}
