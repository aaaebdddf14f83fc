//! `*.net.json` documents, reference libraries and DOT export.
//!
//! Document layout (schema version "1"):
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "name": "order-fulfillment",
//!   "places": ["p0", "p1"],
//!   "transitions": [{ "id": "t0", "label": "Ship" }],
//!   "arcs": [{ "from": "p0", "to": "t0" }, { "from": "t0", "to": "p1" }],
//!   "initial_marking": { "p0": 1 }
//! }
//! ```
//!
//! `initial_marking` is optional. `name` defaults to the file stem.

mod dot;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::petri::{Marking, PetriError, PetriNet, PlaceId};

pub use dot::{export_dot, AlignmentSide, Highlight};

pub const SCHEMA_VERSION: &str = "1";
pub const NET_SUFFIX: &str = ".net.json";

#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error("unsupported schema_version {0:?} (expected \"1\")")]
    SchemaVersionUnsupported(String),
    #[error("schema violation at {pointer}: {message}")]
    SchemaViolation { pointer: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn violation(pointer: impl Into<String>, message: impl Into<String>) -> ModelIoError {
    ModelIoError::SchemaViolation {
        pointer: pointer.into(),
        message: message.into(),
    }
}

#[derive(Serialize)]
struct TransitionDoc<'a> {
    id: &'a str,
    label: &'a str,
}

#[derive(Serialize)]
struct ArcDoc<'a> {
    from: &'a str,
    to: &'a str,
}

/// Field order here is the on-disk key order.
#[derive(Serialize)]
struct NetDocument<'a> {
    schema_version: &'static str,
    name: &'a str,
    places: Vec<&'a str>,
    transitions: Vec<TransitionDoc<'a>>,
    arcs: Vec<ArcDoc<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    initial_marking: Option<BTreeMap<&'a str, u32>>,
}

/// Serializes a net (and optional marking) to the document format, ending
/// with a single LF.
pub fn net_to_string(net: &PetriNet, marking: Option<&Marking>) -> String {
    let doc = NetDocument {
        schema_version: SCHEMA_VERSION,
        name: net.name(),
        places: net.places().map(PlaceId::as_str).collect(),
        transitions: net
            .transitions()
            .map(|(id, label)| TransitionDoc {
                id: id.as_str(),
                label,
            })
            .collect(),
        arcs: net
            .arcs()
            .map(|a| {
                let (from, to) = a.endpoints();
                ArcDoc { from, to }
            })
            .collect(),
        initial_marking: marking.map(|m| m.iter().map(|(p, n)| (p.as_str(), n)).collect()),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document is always serializable");
    out.push('\n');
    out
}

pub fn save_net(
    net: &PetriNet,
    marking: Option<&Marking>,
    path: impl AsRef<Path>,
) -> Result<(), ModelIoError> {
    let path = path.as_ref();
    fs::write(path, net_to_string(net, marking)).map_err(|source| ModelIoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Net name implied by a path: the file name without `.net.json` (or
/// without its last extension otherwise).
pub fn stem_name(path: &Path) -> String {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    if let Some(stem) = file.strip_suffix(NET_SUFFIX) {
        return stem.to_string();
    }
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or(file)
}

pub fn load_net(path: impl AsRef<Path>) -> Result<(PetriNet, Option<Marking>), ModelIoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ModelIoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    net_from_str(&text, &stem_name(path))
}

fn str_field<'v>(
    obj: &'v Map<String, Value>,
    key: &str,
    ptr: &str,
) -> Result<&'v str, ModelIoError> {
    match obj.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(violation(format!("{ptr}/{key}"), "expected a string")),
        None => Err(violation(format!("{ptr}/{key}"), "missing field")),
    }
}

fn array_field<'v>(obj: &'v Map<String, Value>, key: &str) -> Result<&'v Vec<Value>, ModelIoError> {
    match obj.get(key) {
        Some(Value::Array(a)) => Ok(a),
        Some(_) => Err(violation(format!("/{key}"), "expected an array")),
        None => Err(violation(format!("/{key}"), "missing field")),
    }
}

fn as_object<'v>(v: &'v Value, ptr: &str) -> Result<&'v Map<String, Value>, ModelIoError> {
    v.as_object()
        .ok_or_else(|| violation(ptr.to_string(), "expected an object"))
}

/// JSON-pointer escaping of a single reference token.
fn escape_token(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Parses a document. `default_name` is used when `name` is absent or empty.
pub fn net_from_str(
    text: &str,
    default_name: &str,
) -> Result<(PetriNet, Option<Marking>), ModelIoError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = as_object(&root, "")?;

    match obj.get("schema_version") {
        Some(Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(Value::String(v)) => return Err(ModelIoError::SchemaVersionUnsupported(v.clone())),
        Some(other) => return Err(ModelIoError::SchemaVersionUnsupported(other.to_string())),
        None => return Err(violation("/schema_version", "missing field")),
    }

    let name = match obj.get("name") {
        None | Some(Value::Null) => default_name,
        Some(Value::String(s)) if s.is_empty() => default_name,
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(violation("/name", "expected a string")),
    };
    let mut net = PetriNet::new(name);

    for (i, p) in array_field(obj, "places")?.iter().enumerate() {
        let ptr = format!("/places/{i}");
        let id = p
            .as_str()
            .ok_or_else(|| violation(&ptr, "expected a string"))?;
        net.add_place(id)
            .map_err(|e| violation(&ptr, e.to_string()))?;
    }
    for (i, t) in array_field(obj, "transitions")?.iter().enumerate() {
        let ptr = format!("/transitions/{i}");
        let t = as_object(t, &ptr)?;
        let id = str_field(t, "id", &ptr)?;
        let label = str_field(t, "label", &ptr)?;
        net.add_transition(id, label).map_err(|e| {
            let at = match e {
                PetriError::EmptyLabel(_) => format!("{ptr}/label"),
                _ => format!("{ptr}/id"),
            };
            violation(at, e.to_string())
        })?;
    }
    for (i, a) in array_field(obj, "arcs")?.iter().enumerate() {
        let ptr = format!("/arcs/{i}");
        let a = as_object(a, &ptr)?;
        let from = str_field(a, "from", &ptr)?;
        let to = str_field(a, "to", &ptr)?;
        net.add_arc(from, to).map_err(|e| {
            let at = match &e {
                PetriError::UnknownNode(n) if n == from => format!("{ptr}/from"),
                PetriError::UnknownNode(_) => format!("{ptr}/to"),
                _ => ptr.clone(),
            };
            violation(at, e.to_string())
        })?;
    }

    let marking = match obj.get("initial_marking") {
        None | Some(Value::Null) => None,
        Some(Value::Object(m)) => {
            let mut marking = Marking::new();
            for (place, count) in m {
                let ptr = format!("/initial_marking/{}", escape_token(place));
                if !net.has_place(place) {
                    return Err(violation(ptr, format!("unknown place `{place}`")));
                }
                let n = count
                    .as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| violation(&ptr, "expected a nonnegative integer"))?;
                marking.set(PlaceId::from(place.as_str()), n);
            }
            Some(marking)
        }
        Some(_) => return Err(violation("/initial_marking", "expected an object")),
    };

    Ok((net, marking))
}

/// Result of loading a reference directory: the nets that parsed, plus one
/// error per file that did not.
#[derive(Debug, Default)]
pub struct ReferenceLibrary {
    pub nets: Vec<PetriNet>,
    pub errors: Vec<(PathBuf, ModelIoError)>,
}

/// Loads every `*.net.json` file in `dir`, sorted by file name.
pub fn load_reference_library(dir: impl AsRef<Path>) -> Result<ReferenceLibrary, ModelIoError> {
    let dir = dir.as_ref();
    let io_err = |source| ModelIoError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        let is_net = path
            .file_name()
            .and_then(|f| f.to_str())
            .is_some_and(|f| f.ends_with(NET_SUFFIX));
        if is_net && path.is_file() {
            paths.push(path);
        }
    }
    paths.sort_by(|a, b| a.file_name().cmp(&b.file_name()));

    let mut library = ReferenceLibrary::default();
    for path in paths {
        match load_net(&path) {
            Ok((net, _)) => library.nets.push(net),
            Err(e) => library.errors.push((path, e)),
        }
    }
    Ok(library)
}
