//! JSON encodings shared by the command line and by tests.
//!
//! Indices are 1-based. Rationals are strings `"p/q"` or `"p"` (integers are
//! accepted on input), `∞` is `"inf"`, Puiseux polynomials are term lists
//! `[{"c": .., "e": ..}]`.
//!
//! ```
//! use tropquiver::json::{table_from_json, table_to_json};
//!
//! let v = serde_json::json!({"n": 3, "r": 2, "values": [[[1, 2], "4"], [[1, 3], 3], [[2, 3], "1"]]});
//! let table = table_from_json(&v).unwrap();
//! assert_eq!(table.to_string(), "{{1,2}: 4, {1,3}: 3, {2,3}: 1}");
//! assert_eq!(table_from_json(&table_to_json(&table)).unwrap(), table);
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matroid::BasisTable;
use crate::morphism::{GroundSetMap, Target};
use crate::puiseux::{FieldMatrix, PuiseuxElement};
use crate::quiver::{ArrowMatrix, QuiverRepresentation};
use crate::subset::Subset;
use crate::trop::{TropMatrix, TropValue, TropVector};

fn parse<T: for<'de> Deserialize<'de>>(value: &Value, what: &str) -> Result<T> {
    T::deserialize(value).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// Objects emitted by the command line wrap their payload as
/// `{"output": ...}`; this returns the payload, or the value itself.
pub fn unwrap_envelope(value: &Value) -> &Value {
    match value.get("output") {
        Some(inner) if value.get("command").is_some() => inner,
        _ => value,
    }
}

#[derive(Serialize, Deserialize)]
struct MatroidRepr {
    n: usize,
    r: usize,
    values: Vec<(Subset, TropValue)>,
}

pub fn table_from_json(value: &Value) -> Result<BasisTable> {
    let m: MatroidRepr = parse(unwrap_envelope(value), "matroid")?;
    BasisTable::from_entries(m.n, m.r, m.values)
}

/// Finite entries only, in lexicographic order.
pub fn table_to_json(table: &BasisTable) -> Value {
    let values = table
        .entries()
        .filter(|(_, v)| v.is_finite())
        .map(|(s, v)| (s, v.clone()))
        .collect();
    serde_json::to_value(MatroidRepr {
        n: table.n(),
        r: table.r(),
        values,
    })
    .expect("serializable")
}

pub fn vector_from_json(value: &Value) -> Result<TropVector> {
    parse(unwrap_envelope(value), "tropical vector")
}

pub fn vector_to_json(v: &TropVector) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn trop_matrix_from_json(value: &Value) -> Result<TropMatrix> {
    TropMatrix::from_rows(parse(unwrap_envelope(value), "tropical matrix")?)
}

pub fn trop_matrix_to_json(m: &TropMatrix) -> Value {
    serde_json::to_value(m.to_rows()).expect("serializable")
}

/// `cols` fixes the width when the row list is empty.
pub fn field_matrix_from_json(value: &Value, cols: Option<usize>) -> Result<FieldMatrix> {
    let rows: Vec<Vec<PuiseuxElement>> = parse(unwrap_envelope(value), "field matrix")?;
    match cols {
        Some(c) => FieldMatrix::from_rows_with_cols(rows, c),
        None => FieldMatrix::from_rows(rows),
    }
}

pub fn field_matrix_to_json(m: &FieldMatrix) -> Value {
    serde_json::to_value(m.to_rows()).expect("serializable")
}

/// Vertex names may be written as strings or integers.
fn name<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Name {
        Str(String),
        Int(i64),
    }
    Ok(match Name::deserialize(d)? {
        Name::Str(s) => s,
        Name::Int(i) => i.to_string(),
    })
}

fn names<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    struct Wrapped(#[serde(deserialize_with = "name")] String);
    Ok(Vec::<Wrapped>::deserialize(d)?
        .into_iter()
        .map(|w| w.0)
        .collect())
}

#[derive(Deserialize)]
struct ArrowRepr {
    #[serde(default)]
    name: Option<String>,
    #[serde(deserialize_with = "name")]
    src: String,
    #[serde(deserialize_with = "name")]
    dst: String,
    #[serde(default)]
    matrix_field: Option<Vec<Vec<PuiseuxElement>>>,
    #[serde(default)]
    matrix_trop: Option<Vec<Vec<TropValue>>>,
}

#[derive(Deserialize)]
struct QuiverRepr {
    n: usize,
    #[serde(deserialize_with = "names")]
    vertices: Vec<String>,
    arrows: Vec<ArrowRepr>,
    dim: BTreeMap<String, usize>,
}

pub fn representation_from_json(value: &Value) -> Result<QuiverRepresentation> {
    let q: QuiverRepr = parse(unwrap_envelope(value), "quiver")?;
    if let Some(extra) = q.dim.keys().find(|k| !q.vertices.contains(k)) {
        return Err(Error::Parse(format!(
            "dimension given for unknown vertex {extra:?}"
        )));
    }
    let mut b = QuiverRepresentation::builder(q.n);
    for v in &q.vertices {
        let d = *q
            .dim
            .get(v)
            .ok_or_else(|| Error::Parse(format!("no dimension for vertex {v:?}")))?;
        b = b.vertex(v, d);
    }
    for (k, a) in q.arrows.into_iter().enumerate() {
        let field = a.matrix_field.map(FieldMatrix::from_rows).transpose()?;
        let trop = a.matrix_trop.map(TropMatrix::from_rows).transpose()?;
        let matrix = match (field, trop) {
            (Some(f), Some(t)) => ArrowMatrix::Both(f, t),
            (Some(f), None) => ArrowMatrix::Field(f),
            (None, Some(t)) => ArrowMatrix::Tropical(t),
            (None, None) => return Err(Error::Parse(format!("arrow {} has no matrix", k + 1))),
        };
        b = b.named_arrow(a.name, &a.src, &a.dst, matrix);
    }
    b.build()
}

pub fn representation_to_json(rep: &QuiverRepresentation) -> Value {
    let arrows: Vec<Value> = rep
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut obj = json!({
                "src": rep.vertex_name(a.src),
                "dst": rep.vertex_name(a.dst),
                "matrix_trop": trop_matrix_to_json(rep.trop_matrix(k)),
            });
            if let Some(f) = rep.field_matrix(k) {
                obj["matrix_field"] = field_matrix_to_json(f);
            }
            if let Some(name) = &a.name {
                obj["name"] = json!(name);
            }
            obj
        })
        .collect();
    let dim: BTreeMap<&str, usize> = rep
        .quiver()
        .vertices()
        .iter()
        .zip(rep.dims())
        .map(|(v, &d)| (v.as_str(), d))
        .collect();
    json!({"n": rep.n(), "vertices": rep.quiver().vertices(), "arrows": arrows, "dim": dim})
}

fn vertex_keyed<'a>(
    rep: &QuiverRepresentation,
    value: &'a Value,
    what: &str,
) -> Result<Vec<&'a Value>> {
    let obj = unwrap_envelope(value)
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{what} must be an object keyed by vertex name")))?;
    if let Some(extra) = obj.keys().find(|k| rep.quiver().vertex_index(k).is_none()) {
        return Err(Error::Parse(format!(
            "{what} names unknown vertex {extra:?}"
        )));
    }
    rep.quiver()
        .vertices()
        .iter()
        .map(|v| {
            obj.get(v)
                .ok_or_else(|| Error::Parse(format!("{what} has no entry for vertex {v:?}")))
        })
        .collect()
}

/// A matroid tuple `{vertex: matroid}`, in vertex order.
pub fn tuple_from_json(rep: &QuiverRepresentation, value: &Value) -> Result<Vec<BasisTable>> {
    vertex_keyed(rep, value, "matroid tuple")?
        .into_iter()
        .map(table_from_json)
        .collect()
}

pub fn tuple_to_json<T: AsRef<BasisTable>>(rep: &QuiverRepresentation, tuple: &[T]) -> Value {
    let obj: serde_json::Map<String, Value> = tuple
        .iter()
        .enumerate()
        .map(|(v, t)| (rep.vertex_name(v).to_string(), table_to_json(t.as_ref())))
        .collect();
    Value::Object(obj)
}

/// A witness `{vertex: rows}`, in vertex order.
pub fn witness_from_json(rep: &QuiverRepresentation, value: &Value) -> Result<Vec<FieldMatrix>> {
    vertex_keyed(rep, value, "witness")?
        .into_iter()
        .map(|m| field_matrix_from_json(m, Some(rep.n())))
        .collect()
}

pub fn witness_to_json(rep: &QuiverRepresentation, witness: &[FieldMatrix]) -> Value {
    let obj: serde_json::Map<String, Value> = witness
        .iter()
        .enumerate()
        .map(|(v, m)| (rep.vertex_name(v).to_string(), field_matrix_to_json(m)))
        .collect();
    Value::Object(obj)
}

/// `1`-based index or `"o"`.
#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Index(usize),
    Origin(OriginTag),
}

#[derive(Clone, Copy, Serialize, Deserialize)]
enum OriginTag {
    #[serde(rename = "o")]
    O,
}

#[derive(Serialize, Deserialize)]
struct MapEntry {
    i: PointRepr,
    to: PointRepr,
    shift: TropValue,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    n: usize,
    f: Vec<MapEntry>,
}

pub fn map_from_json(value: &Value) -> Result<GroundSetMap> {
    let m: MapRepr = parse(unwrap_envelope(value), "ground-set map")?;
    let mut images: Vec<Option<(Target, TropValue)>> = vec![None; m.n];
    for e in m.f {
        let to = match e.to {
            PointRepr::Origin(_) => Target::Origin,
            PointRepr::Index(j) if (1..=m.n).contains(&j) => Target::Element(j - 1),
            PointRepr::Index(j) => {
                return Err(Error::Parse(format!("map target {j} outside [{}]", m.n)))
            }
        };
        match e.i {
            PointRepr::Origin(_) => {
                if to != Target::Origin || e.shift.is_finite() {
                    return Err(Error::Parse("the origin must map to (o, inf)".into()));
                }
            }
            PointRepr::Index(i) if (1..=m.n).contains(&i) => {
                if images[i - 1].replace((to, e.shift)).is_some() {
                    return Err(Error::Parse(format!("element {i} mapped twice")));
                }
            }
            PointRepr::Index(i) => {
                return Err(Error::Parse(format!("map source {i} outside [{}]", m.n)))
            }
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or_else(|| Error::Parse(format!("element {} has no image", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    GroundSetMap::new(images)
}

pub fn map_to_json(f: &GroundSetMap) -> Value {
    let point = |t: Target| match t {
        Target::Element(j) => PointRepr::Index(j + 1),
        Target::Origin => PointRepr::Origin(OriginTag::O),
    };
    let f_entries = f
        .images()
        .iter()
        .enumerate()
        .map(|(i, (t, s))| MapEntry {
            i: PointRepr::Index(i + 1),
            to: point(*t),
            shift: s.clone(),
        })
        .collect();
    serde_json::to_value(MapRepr {
        n: f.n(),
        f: f_entries,
    })
    .expect("serializable")
}
