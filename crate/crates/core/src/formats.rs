//! JSON input formats for arrangements and point clouds.
//!
//! Arrangement file:
//!
//! ```json
//! { "name": "optional", "n": 3, "subspaces": [ [["1", "0", "0"]], [["0", "1/2", "0"]] ] }
//! ```
//!
//! Each subspace is a list of spanning vectors; entries are rational strings
//! (`"7"`, `"-3/2"`). Point-cloud files have the same shape with a `"points"`
//! list of vectors in place of `"subspaces"`. JSON numbers are accepted as
//! point coordinates only in approximate mode, and JSON integers everywhere.

use serde_json::Value;

use crate::arrangement::{Arrangement, Limits};
use crate::error::{Error, Result};
use crate::gpca::PointCloud;
use crate::linalg::{QVector, SubspaceBasis};
use crate::ratpoly::{parse_rational, rat, Rational};

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_document(text: &str) -> Result<serde_json::Map<String, Value>> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(parse_err("document", "expected a JSON object")),
    }
}

fn read_n(doc: &serde_json::Map<String, Value>) -> Result<usize> {
    doc.get("n")
        .ok_or_else(|| parse_err("n", "missing field"))?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err("n", "expected a natural number"))
}

fn read_name(doc: &serde_json::Map<String, Value>) -> Result<Option<String>> {
    match doc.get("name") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(parse_err("name", "expected a string")),
    }
}

fn read_rational(v: &Value, location: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(location, e.to_string())),
        Value::Number(num) => num
            .as_i64()
            .map(rat)
            .ok_or_else(|| parse_err(location, "non-integer JSON number; write rationals as strings")),
        _ => Err(parse_err(location, "expected a rational string")),
    }
}

fn read_float(v: &Value, location: &str) -> Result<f64> {
    match v {
        Value::Number(num) => num
            .as_f64()
            .ok_or_else(|| parse_err(location, "number out of range")),
        Value::String(s) => {
            if let Ok(q) = parse_rational(s) {
                use num_traits::ToPrimitive;
                return q.to_f64().ok_or_else(|| parse_err(location, "rational out of range"));
            }
            s.trim()
                .parse::<f64>()
                .map_err(|_| parse_err(location, format!("not a number: {s:?}")))
        }
        _ => Err(parse_err(location, "expected a number")),
    }
}

fn read_vector(v: &Value, n: usize, location: &str) -> Result<QVector> {
    let items = v
        .as_array()
        .ok_or_else(|| parse_err(location, "expected a list of coordinates"))?;
    if items.len() != n {
        return Err(parse_err(
            location,
            format!("vector has {} coordinates, expected {n}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(k, x)| read_rational(x, &format!("{location}[{k}]")))
        .collect()
}

/// Parses an arrangement file. Locations in errors use zero-based JSON paths.
pub fn parse_arrangement(text: &str, limits: &Limits) -> Result<Arrangement> {
    let doc = parse_document(text)?;
    let n = read_n(&doc)?;
    let name = read_name(&doc)?;
    let subspaces = doc
        .get("subspaces")
        .ok_or_else(|| parse_err("subspaces", "missing field"))?
        .as_array()
        .ok_or_else(|| parse_err("subspaces", "expected a list of subspaces"))?;
    let mut bases = Vec::with_capacity(subspaces.len());
    for (i, s) in subspaces.iter().enumerate() {
        let loc = format!("subspaces[{i}]");
        let vectors = s
            .as_array()
            .ok_or_else(|| parse_err(&loc, "expected a list of spanning vectors"))?
            .iter()
            .enumerate()
            .map(|(j, v)| read_vector(v, n, &format!("{loc}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let basis = SubspaceBasis::span(n, &vectors)?;
        if basis.dim() != vectors.len() {
            return Err(parse_err(
                &loc,
                format!(
                    "spanning vectors are dependent (rank {} of {}); list a basis",
                    basis.dim(),
                    vectors.len()
                ),
            ));
        }
        bases.push(SubspaceBasis::new(n, vectors)?);
    }
    let a = Arrangement::with_limits(n, bases, limits)?;
    Ok(match name {
        Some(name) => a.named(name),
        None => a,
    })
}

/// Parses a point-cloud file. With `approximate == false` every coordinate
/// must be an exact rational.
pub fn parse_point_cloud(text: &str, approximate: bool) -> Result<PointCloud> {
    let doc = parse_document(text)?;
    let n = read_n(&doc)?;
    let points = doc
        .get("points")
        .ok_or_else(|| parse_err("points", "missing field"))?
        .as_array()
        .ok_or_else(|| parse_err("points", "expected a list of points"))?;
    if approximate {
        let mut out = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            let loc = format!("points[{i}]");
            let items = p
                .as_array()
                .ok_or_else(|| parse_err(&loc, "expected a list of coordinates"))?;
            if items.len() != n {
                return Err(parse_err(
                    &loc,
                    format!("point has {} coordinates, expected {n}", items.len()),
                ));
            }
            out.push(
                items
                    .iter()
                    .enumerate()
                    .map(|(k, x)| read_float(x, &format!("{loc}[{k}]")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        PointCloud::approx(n, out)
    } else {
        let out = points
            .iter()
            .enumerate()
            .map(|(i, p)| read_vector(p, n, &format!("points[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        PointCloud::exact(n, out)
    }
}

/// Renders an exact point cloud in the file format (used to write fixtures).
pub fn point_cloud_to_json(pc: &PointCloud) -> Option<String> {
    let crate::gpca::Points::Exact(points) = pc.points() else {
        return None;
    };
    let points: Vec<Value> = points
        .iter()
        .map(|p| Value::Array(p.iter().map(|x| Value::String(crate::ratpoly::format_rational(x))).collect()))
        .collect();
    let mut doc = serde_json::Map::new();
    doc.insert("n".into(), Value::from(pc.ambient_dim()));
    doc.insert("points".into(), Value::Array(points));
    serde_json::to_string_pretty(&Value::Object(doc)).ok()
}

/// The example arrangements shipped with the crate, as `(file stem, contents)`.
pub const FIXTURES: [(&str, &str); 4] = [
    ("coordinate_axes", include_str!("../fixtures/coordinate_axes.json")),
    ("collinear_points", include_str!("../fixtures/collinear_points.json")),
    ("planes_spanning", include_str!("../fixtures/planes_spanning.json")),
    ("planes_coplanar", include_str!("../fixtures/planes_coplanar.json")),
];

pub fn fixture(stem: &str) -> Option<Arrangement> {
    FIXTURES
        .iter()
        .find(|(name, _)| *name == stem)
        .map(|(_, text)| parse_arrangement(text, &Limits::default()).expect("bundled fixture parses"))
}
