//! JSON renderings of the certificates attached to failed checks.

use serde_json::{json, Value};
use tropquiver::json::{table_to_json, vector_to_json};
use tropquiver::matroid::ExchangeViolation;
use tropquiver::morphism::{ImageViolation, MorphismViolation, RealizationViolation};
use tropquiver::quiver::{
    ContainmentViolation, FlagViolation, QdrViolation, QuiverRepresentation, TropicalRelation,
    WitnessViolation,
};
use tropquiver::trop::TropValue;

pub fn exchange(v: &ExchangeViolation) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn containment(v: &ContainmentViolation) -> Value {
    json!({
        "cocircuit": vector_to_json(&v.cocircuit),
        "image": vector_to_json(&v.image),
        "circuit": vector_to_json(&v.circuit),
    })
}

fn relation(rep: &QuiverRepresentation, rel: &TropicalRelation, values: &[TropValue]) -> Value {
    json!({
        "origin": rep.describe_origin(&rel.origin),
        "relation": rep.format_tropical(rel),
        "values": values,
    })
}

pub fn qdr(rep: &QuiverRepresentation, v: &QdrViolation) -> Value {
    match v {
        QdrViolation::NotValuatedMatroid { vertex, violation } => json!({
            "kind": "not_valuated_matroid",
            "vertex": rep.vertex_name(*vertex),
            "exchange": exchange(violation),
        }),
        QdrViolation::Relation {
            relation: rel,
            values,
        } => {
            let mut out = relation(rep, rel, values);
            out["kind"] = json!("relation");
            out
        }
        QdrViolation::Containment { arrow, violation } => {
            let mut out = containment(violation);
            out["kind"] = json!("containment");
            out["arrow"] = json!(rep.describe_arrow(*arrow));
            out
        }
    }
}

pub fn witness(rep: &QuiverRepresentation, v: &WitnessViolation) -> Value {
    match v {
        WitnessViolation::NotSubrepresentation { arrow } => json!({
            "kind": "not_subrepresentation",
            "arrow": rep.describe_arrow(*arrow),
        }),
        WitnessViolation::RankDeficient { vertex } => json!({
            "kind": "rank_deficient",
            "vertex": rep.vertex_name(*vertex),
        }),
        WitnessViolation::ValuationMismatch {
            vertex,
            expected,
            found,
        } => json!({
            "kind": "valuation_mismatch",
            "vertex": rep.vertex_name(*vertex),
            "expected": table_to_json(expected),
            "found": table_to_json(found),
        }),
    }
}

pub fn flag(v: &FlagViolation) -> Value {
    match v {
        FlagViolation::NotValuatedMatroid { index, violation } => json!({
            "kind": "not_valuated_matroid",
            "index": index + 1,
            "exchange": exchange(violation),
        }),
        FlagViolation::Quotient { index, violation } => json!({
            "kind": "quotient",
            "pair": [index + 1, index + 2],
            "exchange": exchange(violation),
        }),
    }
}

pub fn morphism(v: &MorphismViolation) -> Value {
    match v {
        MorphismViolation::RankOrder { induced, source } => json!({
            "kind": "rank_order",
            "induced_rank": induced,
            "source_rank": source,
        }),
        MorphismViolation::Quotient(e) => json!({"kind": "quotient", "exchange": exchange(e)}),
    }
}

pub fn realization(v: &RealizationViolation) -> Value {
    match v {
        RealizationViolation::NotMorphism(m) => morphism(m),
        RealizationViolation::WrongValuations { which } => {
            json!({"kind": "wrong_valuations", "witness": which})
        }
        RealizationViolation::NotNested => json!({"kind": "not_nested"}),
    }
}

pub fn image(v: &ImageViolation) -> Value {
    match v {
        ImageViolation::CocircuitNotInSpan {
            cocircuit,
            membership,
        } => json!({
            "kind": "cocircuit_not_in_span",
            "cocircuit": vector_to_json(cocircuit),
            "mismatch": membership.as_ref().and_then(|m| m.mismatch).map(|i| i + 1),
        }),
        ImageViolation::ImageNotInSpace { image, circuit } => json!({
            "kind": "image_not_in_space",
            "image": vector_to_json(image),
            "circuit": vector_to_json(circuit),
        }),
    }
}
