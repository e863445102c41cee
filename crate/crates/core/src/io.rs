//! Problem files and JSON report rendering.
//!
//! A problem file is a single JSON object with a `ring`, an `algebra`, and
//! optionally a `map` whose images are integer coordinate rows (reduced
//! into the ring on load). Semantic errors name the JSON path they were
//! found at. Report rendering produces `serde_json::Value` trees whose
//! object keys are sorted, so serialized output is byte-stable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Algebra, MatElem, Pattern};
use crate::classify::{
    CheckResult, ClassificationReport, Example1Report, IdentityReport, NotApplicableReason,
};
use crate::linmap::LinearMap;
use crate::ring::{Integers, Ring, RingSpec, Zmod};
use crate::solver::{MapSpace, SolverError};
use crate::witness::Witness;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &str, message: impl ToString) -> IoError {
    IoError::Invalid {
        path: path.to_string(),
        message: message.to_string(),
    }
}

/// The `algebra` object of a problem file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraDescriptor {
    Full {
        n: usize,
    },
    Upper {
        n: usize,
    },
    Pattern {
        #[serde(rename = "N")]
        ambient: usize,
        basis: Vec<Vec<(u32, u32)>>,
    },
}

/// The `map` object of a problem file: one coordinate row per basis
/// element, entries reduced into the ring on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDescriptor {
    pub images: Vec<Vec<i64>>,
}

/// A parsed (but not yet validated) problem file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ring: RingSpec,
    pub algebra: AlgebraDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapDescriptor>,
}

/// A validated problem instance over a concrete ring.
#[derive(Clone, Debug)]
pub struct Instance<R: Ring> {
    pub algebra: Arc<Algebra<R>>,
    pub map: Option<LinearMap<R>>,
}

/// A validated problem, dispatched on the coefficient ring.
#[derive(Clone, Debug)]
pub enum Problem {
    Int(Instance<Integers>),
    Mod(Instance<Zmod>),
}

impl Problem {
    pub fn ring_spec(&self) -> RingSpec {
        match self {
            Problem::Int(i) => i.algebra.ring().spec(),
            Problem::Mod(i) => i.algebra.ring().spec(),
        }
    }
}

fn build_algebra<R: Ring>(
    descriptor: &AlgebraDescriptor,
    ring: R,
) -> Result<Arc<Algebra<R>>, IoError> {
    match descriptor {
        AlgebraDescriptor::Full { n } => {
            Algebra::full(*n, ring).map_err(|e| invalid("algebra.n", e))
        }
        AlgebraDescriptor::Upper { n } => {
            Algebra::upper_triangular(*n, ring).map_err(|e| invalid("algebra.n", e))
        }
        AlgebraDescriptor::Pattern { ambient, basis } => {
            let patterns = basis
                .iter()
                .map(|cells| Pattern::new(cells.clone()))
                .collect();
            Algebra::from_patterns(*ambient, patterns, ring)
                .map_err(|e| invalid("algebra.basis", e))
        }
    }
}

fn build_map<R: Ring>(
    algebra: &Arc<Algebra<R>>,
    descriptor: &MapDescriptor,
) -> Result<LinearMap<R>, IoError> {
    let ring = algebra.ring();
    let d = algebra.dim();
    if descriptor.images.len() != d {
        return Err(invalid(
            "map.images",
            format!("expected {d} image rows, got {}", descriptor.images.len()),
        ));
    }
    let mut rows = Vec::with_capacity(d);
    for (k, row) in descriptor.images.iter().enumerate() {
        if row.len() != d {
            return Err(invalid(
                &format!("map.images[{k}]"),
                format!("expected {d} coordinates, got {}", row.len()),
            ));
        }
        rows.push(row.iter().map(|&v| ring.from_i64(v)).collect());
    }
    LinearMap::from_rows(algebra, rows).map_err(|e| invalid("map.images", e))
}

fn build_instance<R: Ring>(file: &ProblemFile, ring: R) -> Result<Instance<R>, IoError> {
    let algebra = build_algebra(&file.algebra, ring)?;
    let map = file
        .map
        .as_ref()
        .map(|m| build_map(&algebra, m))
        .transpose()?;
    Ok(Instance { algebra, map })
}

/// Parses and validates a problem file.
pub fn load_problem_str(text: &str) -> Result<Problem, IoError> {
    let file: ProblemFile = serde_json::from_str(text)?;
    file.ring.validate().map_err(|e| invalid("ring", e))?;
    match file.ring {
        RingSpec::Integers => Ok(Problem::Int(build_instance(&file, Integers)?)),
        RingSpec::IntegersMod { modulus } => {
            let ring = Zmod::new(modulus).map_err(|e| invalid("ring.m", e))?;
            Ok(Problem::Mod(build_instance(&file, ring)?))
        }
    }
}

// ---------------------------------------------------------------------------
// Report rendering.
// ---------------------------------------------------------------------------

/// A ring element as JSON: a number when it fits i64, else its decimal
/// rendering as a string.
pub fn ring_elem_value<R: Ring>(ring: &R, v: &R::Elem) -> Value {
    match ring.to_i64(v) {
        Some(n) => json!(n),
        None => json!(ring.render(v)),
    }
}

/// An element as JSON: coordinates, the dense ambient matrix, and a short
/// human-readable rendering.
pub fn elem_value<R: Ring>(x: &MatElem<R>) -> Value {
    let ring = x.algebra().ring();
    let coords: Vec<Value> = x
        .coords()
        .iter()
        .map(|v| ring_elem_value(ring, v))
        .collect();
    let dense: Vec<Value> = x
        .to_dense()
        .iter()
        .map(|row| Value::Array(row.iter().map(|v| ring_elem_value(ring, v)).collect()))
        .collect();
    json!({
        "coords": coords,
        "dense": dense,
        "pretty": x.render(),
    })
}

/// A map as JSON: its image coordinate rows.
pub fn map_value<R: Ring>(map: &LinearMap<R>) -> Value {
    let alg = map.algebra();
    let ring = alg.ring();
    let d = alg.dim();
    let images: Vec<Value> = (0..d)
        .map(|k| {
            Value::Array(
                map.image_coords(k)
                    .iter()
                    .map(|v| ring_elem_value(ring, v))
                    .collect(),
            )
        })
        .collect();
    json!({ "images": images })
}

fn check_result_value<R: Ring>(result: &CheckResult<R>) -> Value {
    let certificates: Vec<Value> = result
        .certificates
        .iter()
        .map(|c| {
            json!({
                "check": c.kind.name(),
                "left": c.left,
                "right": c.right,
                "lhs": elem_value(&c.lhs),
                "rhs": elem_value(&c.rhs),
            })
        })
        .collect();
    json!({
        "holds": result.holds,
        "certificates": certificates,
    })
}

/// A full classification report as JSON.
pub fn classification_value<R: Ring>(report: &ClassificationReport<R>) -> Value {
    json!({
        "jordan": check_result_value(&report.jordan),
        "derivation": check_result_value(&report.derivation),
        "antiderivation": check_result_value(&report.antiderivation),
    })
}

/// An identity-suite report as JSON.
pub fn identity_report_value<R: Ring>(ring: &R, report: &IdentityReport<R>) -> Value {
    match report {
        IdentityReport::NotApplicable(reason) => {
            let reason = match reason {
                NotApplicableReason::PatternBasis => "pattern basis",
                NotApplicableReason::NotJordan => "map is not a Jordan derivation",
            };
            json!({ "applicable": false, "reason": reason })
        }
        IdentityReport::Checked {
            derivation_suite,
            checks,
        } => {
            let checks: Vec<Value> = checks
                .iter()
                .map(|c| {
                    let failures: Vec<Value> = c
                        .failures
                        .iter()
                        .map(|f| {
                            json!({
                                "indices": f.indices,
                                "values": f.values.iter()
                                    .map(|v| ring_elem_value(ring, v))
                                    .collect::<Vec<Value>>(),
                                "detail": f.detail,
                            })
                        })
                        .collect();
                    json!({
                        "identity": c.tag.name(),
                        "pass": c.pass,
                        "failures": failures,
                    })
                })
                .collect();
            json!({
                "applicable": true,
                "derivation_suite": derivation_suite,
                "checks": checks,
            })
        }
    }
}

/// A witness as JSON.
pub fn witness_value<R: Ring>(witness: &Witness<R>) -> Value {
    json!({
        "element": elem_value(&witness.element),
        "verified": witness.verified,
        "source": witness.source.name(),
    })
}

/// The counterexample evaluation record as JSON.
pub fn example1_report_value(report: &Example1Report) -> Value {
    json!({
        "jordan_holds": report.jordan_holds,
        "x": elem_value(&report.x),
        "y": elem_value(&report.y),
        "xy": elem_value(&report.xy),
        "d_xy": elem_value(&report.d_xy),
        "leibniz_rhs": elem_value(&report.leibniz_rhs),
        "leibniz_holds": report.leibniz_holds,
        "yx": elem_value(&report.yx),
        "d_yx": elem_value(&report.d_yx),
        "swapped_rhs": elem_value(&report.swapped_rhs),
        "swapped_holds": report.swapped_holds,
    })
}

/// A space summary as JSON; with `list_members` true the full member list
/// is expanded (subject to `budget`).
pub fn space_value<R: Ring>(
    space: &MapSpace<R>,
    list_members: bool,
    budget: u64,
) -> Result<Value, SolverError> {
    let mut obj = serde_json::Map::new();
    obj.insert("kind".into(), json!(space.kind().name()));
    obj.insert("representation".into(), json!(space.repr_name()));
    if let Some(dim) = space.dimension() {
        obj.insert("dimension".into(), json!(dim));
    }
    if let Some(count) = space.count() {
        obj.insert("count".into(), json!(count));
    }
    if !space.definite() {
        obj.insert("generators".into(), json!(space.representatives().len()));
    }
    if list_members {
        let members: Vec<Value> = if space.definite() {
            space.members(budget)?.iter().map(map_value).collect()
        } else {
            space.representatives().iter().map(map_value).collect()
        };
        obj.insert("members".into(), Value::Array(members));
    }
    Ok(Value::Object(obj))
}
