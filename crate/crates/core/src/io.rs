//! JSON instance files.
//!
//! H-rep: `{n, rows: [{coeffs, sense, rhs}], lower, upper, objective, maximize}`.
//! V-rep: `{n, points, objective}`. Numbers may be JSON numbers or strings;
//! strings may hold rationals such as `"3/4"`. Integers beyond 2⁵³ are
//! written as strings. Minimization inputs are negated at load.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::instance::{
    clear_denominators, FeasibleSet, Instance, ObjectiveVector, PointSetInstance, Row, Sense,
};
use crate::numeric::{exact_string, parse_rational};
use crate::worstcase::WorstCaseInstance;

const SAFE_INT: i64 = 1 << 53;

#[derive(Debug, Clone)]
pub enum InstanceData {
    HRep(Instance),
    VRep(PointSetInstance),
}

#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub data: InstanceData,
    /// The file asked for minimization; the stored objective is negated.
    pub negated: bool,
}

impl LoadedInstance {
    pub fn hrep(inst: Instance) -> Self {
        let negated = inst.negated();
        LoadedInstance {
            data: InstanceData::HRep(inst),
            negated,
        }
    }

    pub fn vrep(points: PointSetInstance) -> Self {
        LoadedInstance {
            data: InstanceData::VRep(points),
            negated: false,
        }
    }

    pub fn set(&self) -> &dyn FeasibleSet {
        match &self.data {
            InstanceData::HRep(i) => i,
            InstanceData::VRep(p) => p,
        }
    }
}

fn parse_value(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            None => parse_rational(&n.to_string()),
        },
        Value::String(s) => parse_rational(s.trim()),
        other => Err(Error::Parse(format!(
            "{what}: expected a number, got {other}"
        ))),
    }
}

fn parse_list(v: Option<&Value>, what: &str) -> Result<Vec<BigRational>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("missing array {what:?}")))?;
    arr.iter().map(|x| parse_value(x, what)).collect()
}

fn to_i64(q: &BigInt, what: &str) -> Result<i64> {
    q.to_i64()
        .ok_or_else(|| Error::Parse(format!("{what}: {q} does not fit in 64 bits")))
}

fn integer_list(
    v: Option<&Value>,
    what: &str,
    round: fn(&BigRational) -> BigRational,
) -> Result<Vec<i64>> {
    parse_list(v, what)?
        .iter()
        .map(|q| to_i64(&round(q).to_integer(), what))
        .collect()
}

fn exact_integers(v: Option<&Value>, what: &str) -> Result<Vec<i64>> {
    parse_list(v, what)?
        .iter()
        .map(|q| {
            if !q.is_integer() {
                return Err(Error::Parse(format!(
                    "{what}: {} is not an integer",
                    exact_string(q)
                )));
            }
            to_i64(&q.to_integer(), what)
        })
        .collect()
}

fn parse_objective(v: Option<&Value>, negate: bool) -> Result<ObjectiveVector> {
    let mut c = parse_list(v, "objective")?;
    if negate {
        c.iter_mut().for_each(|q| *q = -q.clone());
    }
    let (ints, scale) = clear_denominators(&c)?;
    if scale.is_one() {
        Ok(ObjectiveVector::new(ints))
    } else {
        Ok(ObjectiveVector::with_scale(ints, scale)?.non_integral())
    }
}

fn parse_row(v: &Value, i: usize) -> Result<Row> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse(format!("row {i} is not an object")))?;
    let mut coeffs = parse_list(obj.get("coeffs"), "coeffs")?;
    let mut rhs = parse_value(
        obj.get("rhs")
            .ok_or_else(|| Error::Parse(format!("row {i} has no rhs")))?,
        "rhs",
    )?;
    let sense = match obj.get("sense").and_then(Value::as_str) {
        Some("LE") => Sense::Le,
        Some("EQ") => Sense::Eq,
        Some("GE") => Sense::Ge,
        other => return Err(Error::Parse(format!("row {i}: bad sense {other:?}"))),
    };
    let lcm = coeffs
        .iter()
        .chain(std::iter::once(&rhs))
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    if !lcm.is_one() {
        let s = BigRational::from_integer(lcm);
        coeffs.iter_mut().for_each(|q| *q = &*q * &s);
        rhs *= s;
    }
    let coeffs = coeffs
        .iter()
        .map(|q| to_i64(&q.to_integer(), "coeffs"))
        .collect::<Result<_>>()?;
    Ok(Row::new(coeffs, sense, to_i64(&rhs.to_integer(), "rhs")?))
}

pub fn parse_instance(text: &str) -> Result<LoadedInstance> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Parse("instance must be a JSON object".into()))?;
    let minimize = obj.get("maximize").and_then(Value::as_bool) == Some(false);
    let objective = parse_objective(obj.get("objective"), minimize)?;
    if let Some(n) = obj.get("n").and_then(Value::as_u64) {
        if n as usize != objective.len() {
            return Err(Error::DimensionMismatch {
                expected: n as usize,
                got: objective.len(),
            });
        }
    }
    if obj.contains_key("points") {
        let arr = obj["points"]
            .as_array()
            .ok_or_else(|| Error::Parse("points must be an array".into()))?;
        let points = arr
            .iter()
            .map(|p| exact_integers(Some(p), "points"))
            .collect::<Result<Vec<_>>>()?;
        let set = PointSetInstance::new(points, objective)?;
        return Ok(LoadedInstance {
            data: InstanceData::VRep(set),
            negated: minimize,
        });
    }
    let lower = integer_list(obj.get("lower"), "lower", BigRational::ceil)?;
    let upper = integer_list(obj.get("upper"), "upper", BigRational::floor)?;
    let rows = match obj.get("rows") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(a)) => a
            .iter()
            .enumerate()
            .map(|(i, r)| parse_row(r, i))
            .collect::<Result<_>>()?,
        Some(_) => return Err(Error::Parse("rows must be an array".into())),
    };
    let mut inst = Instance::new(rows, lower, upper, objective)?;
    if minimize {
        inst = inst.mark_negated();
    }
    Ok(LoadedInstance::hrep(inst))
}

pub fn read_instance(path: &Path) -> Result<LoadedInstance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

fn int_value(v: i64) -> Value {
    if v.abs() <= SAFE_INT {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

fn int_array(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|&x| int_value(x)).collect())
}

/// Objective in file units: undoes the scale and the minimization flip.
fn objective_value(obj: &ObjectiveVector, negated: bool) -> Value {
    let sign: i64 = if negated { -1 } else { 1 };
    if obj.scale().is_one() {
        return Value::Array(obj.coeffs().iter().map(|&c| int_value(sign * c)).collect());
    }
    Value::Array(
        obj.coeffs()
            .iter()
            .map(|&c| {
                json!(exact_string(
                    &(BigRational::from_integer(BigInt::from(sign * c)) / obj.scale())
                ))
            })
            .collect(),
    )
}

pub fn instance_to_json(inst: &Instance) -> Value {
    let rows: Vec<Value> = inst
        .rows()
        .iter()
        .map(|r| {
            let sense = match r.sense {
                Sense::Le => "LE",
                Sense::Eq => "EQ",
                Sense::Ge => "GE",
            };
            json!({ "coeffs": int_array(&r.coeffs), "sense": sense, "rhs": int_value(r.rhs) })
        })
        .collect();
    let mut m = Map::new();
    m.insert("n".into(), json!(inst.dim()));
    m.insert("rows".into(), Value::Array(rows));
    m.insert("lower".into(), int_array(inst.lower()));
    m.insert("upper".into(), int_array(inst.upper()));
    m.insert(
        "objective".into(),
        objective_value(inst.objective(), inst.negated()),
    );
    m.insert("maximize".into(), json!(!inst.negated()));
    Value::Object(m)
}

pub fn pointset_to_json(set: &PointSetInstance) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(set.dim()));
    m.insert(
        "points".into(),
        Value::Array(set.points().iter().map(|p| int_array(p)).collect()),
    );
    m.insert("objective".into(), objective_value(set.objective(), false));
    Value::Object(m)
}

pub fn loaded_to_json(inst: &LoadedInstance) -> Value {
    match &inst.data {
        InstanceData::HRep(i) => instance_to_json(i),
        InstanceData::VRep(p) => {
            let mut v = pointset_to_json(p);
            if inst.negated {
                v["objective"] = objective_value(p.objective(), true);
                v["maximize"] = json!(false);
            }
            v
        }
    }
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Path of the cost-level sidecar written next to a worst-case instance.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.levels.json"))
}

pub fn worstcase_sidecar(inst: &WorstCaseInstance) -> Value {
    json!({
        "k": inst.params.k,
        "p": inst.params.p,
        "n": inst.params.dim(),
        "cost_levels": inst.cost_levels.iter().map(|c| int_array(c)).collect::<Vec<_>>(),
        "layers": inst.layers.iter().map(|d| int_array(d)).collect::<Vec<_>>(),
    })
}

/// Writes the V-rep file and its cost-level sidecar; returns the sidecar path.
pub fn write_worstcase(inst: &WorstCaseInstance, path: &Path) -> Result<PathBuf> {
    write_json(path, &pointset_to_json(&inst.pointset))?;
    let side = sidecar_path(path);
    write_json(&side, &worstcase_sidecar(inst))?;
    Ok(side)
}
