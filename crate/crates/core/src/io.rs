//! JSON documents for data sets, plus DOT and CSV exports.
//!
//! Documents carry sorted keys and rationals as `"p/q"` strings, so saving a
//! loaded canonical document reproduces it byte for byte.

use crate::angulation::{Arc, AngulationError, Color, Dart, MixedAngulation};
use crate::dataset::{DataSet, DataSetIssue};
use crate::metric::Profile;
use crate::rational::{fmt_q, parse_q, Q};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("parse error at {pointer}: {message}")]
    Parse { pointer: String, message: String },
    #[error("invalid data set at {pointer}: {message}")]
    Validation { pointer: String, message: String },
    #[error("{0}")]
    File(#[from] std::io::Error),
}

fn parse_err(pointer: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Parse {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn invalid(pointer: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Validation {
        pointer: pointer.into(),
        message: message.to_string(),
    }
}

/// Escapes a key for use inside a JSON pointer.
fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

pub fn to_value(d: &DataSet) -> Value {
    let a = d.angulation();
    let vertices: Vec<Value> = (0..a.num_vertices())
        .map(|v| json!({"id": v, "color": a.color(v).name()}))
        .collect();
    let arcs: Vec<Value> = (0..a.num_arcs())
        .map(|e| {
            let arc = a.arc(e);
            json!({"id": e, "black": arc.black, "white": arc.white, "weight": fmt_q(&d.weight(e))})
        })
        .collect();
    let mut rotations = Map::new();
    for v in 0..a.num_vertices() {
        let tokens: Vec<Value> = a.rotation(v).iter().map(|x| Value::from(x.to_string())).collect();
        rotations.insert(v.to_string(), Value::Array(tokens));
    }
    let mut levels = Map::new();
    for (f, s) in a.faces().iter().zip(d.levels()) {
        levels.insert(f.key.to_string(), Value::from(fmt_q(s)));
    }
    json!({
        "version": FORMAT_VERSION,
        "k0": d.k0().to_string(),
        "ratio": fmt_q(&d.ratio()),
        "vertices": vertices,
        "arcs": arcs,
        "rotations": rotations,
        "face_levels": levels,
    })
}

/// Canonical text: pretty-printed, sorted keys, trailing newline.
pub fn save(d: &DataSet) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(d)).expect("values serialize");
    s.push('\n');
    s
}

pub fn save_path(d: &DataSet, path: &Path) -> Result<(), IoError> {
    std::fs::write(path, save(d))?;
    Ok(())
}

pub fn load_path(path: &Path) -> Result<DataSet, IoError> {
    load_str(&std::fs::read_to_string(path)?)
}

pub fn load_str(text: &str) -> Result<DataSet, IoError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| parse_err("", format!("line {} column {}: {e}", e.line(), e.column())))?;
    from_value(&v)
}

fn field<'a>(obj: &'a Value, ptr: &str, key: &str) -> Result<&'a Value, IoError> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("{ptr}/{key}"), "missing field"))
}

fn as_str<'a>(v: &'a Value, ptr: &str) -> Result<&'a str, IoError> {
    v.as_str().ok_or_else(|| parse_err(ptr, "expected a string"))
}

fn as_index(v: &Value, ptr: &str) -> Result<usize, IoError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(ptr, "expected a non-negative integer"))
}

fn as_rational(v: &Value, ptr: &str) -> Result<Q, IoError> {
    parse_q(as_str(v, ptr)?).map_err(|e| parse_err(ptr, e.to_string()))
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| parse_err(ptr, "expected an array"))
}

fn as_object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| parse_err(ptr, "expected an object"))
}

/// Places items listed with explicit ids into a dense vector.
fn by_id<T>(items: Vec<(usize, T)>, ptr: &str) -> Result<Vec<T>, IoError> {
    let n = items.len();
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for (i, (id, item)) in items.into_iter().enumerate() {
        if id >= n || slots[id].is_some() {
            return Err(parse_err(format!("{ptr}/{i}/id"), "ids must be 0..n without repeats"));
        }
        slots[id] = Some(item);
    }
    Ok(slots.into_iter().map(|x| x.expect("all ids seen")).collect())
}

pub fn from_value(doc: &Value) -> Result<DataSet, IoError> {
    as_object(doc, "")?;
    let version = field(doc, "", "version")?;
    if version.as_u64() != Some(FORMAT_VERSION) {
        return Err(parse_err("/version", format!("unsupported version {version}")));
    }
    let k0_text = as_str(field(doc, "", "k0")?, "/k0")?;
    let k0: f64 = k0_text
        .trim()
        .parse()
        .map_err(|_| parse_err("/k0", format!("not a decimal number: {k0_text}")))?;
    let ratio = as_rational(field(doc, "", "ratio")?, "/ratio")?;

    let mut vertices = Vec::new();
    for (i, v) in as_array(field(doc, "", "vertices")?, "/vertices")?.iter().enumerate() {
        let ptr = format!("/vertices/{i}");
        let id = as_index(field(v, &ptr, "id")?, &format!("{ptr}/id"))?;
        let color = match as_str(field(v, &ptr, "color")?, &format!("{ptr}/color"))? {
            "black" => Color::Black,
            "white" => Color::White,
            other => return Err(parse_err(format!("{ptr}/color"), format!("unknown color {other}"))),
        };
        vertices.push((id, color));
    }
    let colors = by_id(vertices, "/vertices")?;

    let mut arcs = Vec::new();
    for (i, v) in as_array(field(doc, "", "arcs")?, "/arcs")?.iter().enumerate() {
        let ptr = format!("/arcs/{i}");
        let id = as_index(field(v, &ptr, "id")?, &format!("{ptr}/id"))?;
        let black = as_index(field(v, &ptr, "black")?, &format!("{ptr}/black"))?;
        let white = as_index(field(v, &ptr, "white")?, &format!("{ptr}/white"))?;
        let weight = as_rational(field(v, &ptr, "weight")?, &format!("{ptr}/weight"))?;
        for (end, x) in [("black", black), ("white", white)] {
            if x >= colors.len() {
                return Err(invalid(format!("{ptr}/{end}"), format!("no vertex {x}")));
            }
        }
        arcs.push((id, (Arc { black, white }, weight, i)));
    }
    let arcs = by_id(arcs, "/arcs")?;

    let rot_obj = as_object(field(doc, "", "rotations")?, "/rotations")?;
    let mut rotations = vec![Vec::new(); colors.len()];
    let mut seen = vec![false; colors.len()];
    for (key, list) in rot_obj {
        let ptr = format!("/rotations/{}", escape(key));
        let v: usize = key
            .parse()
            .ok()
            .filter(|&v: &usize| v < colors.len())
            .ok_or_else(|| parse_err(&ptr, "key is not a vertex id"))?;
        seen[v] = true;
        for (j, t) in as_array(list, &ptr)?.iter().enumerate() {
            let tp = format!("{ptr}/{j}");
            let dart = Dart::parse(as_str(t, &tp)?)
                .ok_or_else(|| parse_err(&tp, "expected a token like 3:b"))?;
            if dart.arc >= arcs.len() {
                return Err(invalid(tp, format!("no arc {}", dart.arc)));
            }
            rotations[v].push(dart);
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(parse_err(format!("/rotations/{v}"), "missing rotation"));
    }

    let arc_list: Vec<Arc> = arcs.iter().map(|x| x.0).collect();
    let a = MixedAngulation::build(colors, arc_list, rotations).map_err(|e| {
        let ptr = match &e {
            AngulationError::NotBipartite { arc } => format!("/arcs/{}", arcs[*arc].2),
            _ => "/rotations".to_string(),
        };
        invalid(ptr, e)
    })?;

    let level_obj = as_object(field(doc, "", "face_levels")?, "/face_levels")?;
    let mut given: BTreeMap<&str, &Value> = level_obj.iter().map(|(k, v)| (k.as_str(), v)).collect();
    let mut levels = Vec::with_capacity(a.num_faces());
    for f in a.faces() {
        let key = f.key.to_string();
        let ptr = format!("/face_levels/{}", escape(&key));
        let v = given
            .remove(key.as_str())
            .ok_or_else(|| invalid(&ptr, "no level for this face"))?;
        levels.push(as_rational(v, &ptr)?);
    }
    if let Some((k, _)) = given.into_iter().next() {
        return Err(invalid(format!("/face_levels/{}", escape(k)), "not a face key"));
    }

    let weights: Vec<Q> = arcs.iter().map(|x| x.1).collect();
    DataSet::new(a, k0, ratio, weights, levels).map_err(|report| {
        let issue = &report.issues[0];
        let ptr = match issue {
            DataSetIssue::BadK0 => "/k0".to_string(),
            DataSetIssue::BadRatio(_) => "/ratio".to_string(),
            DataSetIssue::BadWeight { arc } => format!("/arcs/{}/weight", arcs[*arc].2),
            DataSetIssue::BadLevel { face } => format!("/face_levels/{}", escape(face)),
            _ => String::new(),
        };
        invalid(ptr, issue)
    })
}

/// Undirected DOT graph: black vertices as filled boxes, white vertices as
/// circles, each edge labelled by its weight.
pub fn export_dot(d: &DataSet) -> String {
    let a = d.angulation();
    let mut s = String::from("graph hcmu {\n");
    for v in 0..a.num_vertices() {
        let style = match a.color(v) {
            Color::Black => "shape=box, style=filled, fillcolor=black, fontcolor=white",
            Color::White => "shape=circle",
        };
        writeln!(s, "  v{v} [label=\"{v}\", {style}];").unwrap();
    }
    for e in 0..a.num_arcs() {
        let arc = a.arc(e);
        writeln!(
            s,
            "  v{} -- v{} [label=\"{}\"];",
            arc.black,
            arc.white,
            fmt_q(&d.weight(e))
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

/// CSV with header `v,s,K,h`, one row per sample, 12 significant digits.
pub fn export_profile_csv(profile: &Profile) -> String {
    let mut s = String::from("v,s,K,h\n");
    for p in &profile.samples {
        writeln!(s, "{:.12e},{:.12e},{:.12e},{:.12e}", p.v, p.s, p.k, p.h).unwrap();
    }
    s
}
