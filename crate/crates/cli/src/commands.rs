use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tropquiver::json::{
    field_matrix_from_json, field_matrix_to_json, map_from_json, map_to_json,
    representation_from_json, table_from_json, table_to_json, trop_matrix_from_json,
    trop_matrix_to_json, tuple_from_json, vector_from_json, vector_to_json, witness_from_json,
};
use tropquiver::matroid::{is_valuated_matroid, ValuatedMatroid};
use tropquiver::morphism::{
    affine_induced, affine_induced_unpointed, associated_map, decompose_weakly_monomial,
    image_equals_induced, is_affine_morphism, realizable_affine_morphism_check,
};
use tropquiver::puiseux::pluecker_valuations;
use tropquiver::quiver::{
    classical_relations, containment_check, flag_mode_check, gp_relations_vanish, qdr_membership,
    qdr_membership_via_containment, trop_qgr_witness_check, tropical_relations,
    QuiverRepresentation,
};
use tropquiver::{random, Verdict};

use crate::certificate;
use crate::{CrossKind, Method};

pub enum Outcome {
    Verdict {
        result: bool,
        certificate: Option<Value>,
        output: Option<Value>,
    },
    Object(Value),
}

impl Outcome {
    fn verdict<C>(v: Verdict<C>, cert: impl FnOnce(&C) -> Value) -> Outcome {
        Outcome::Verdict {
            result: v.holds(),
            certificate: v.certificate().map(cert),
            output: None,
        }
    }
}

pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl From<tropquiver::Error> for Failure {
    fn from(e: tropquiver::Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

/// Reads inputs and remembers a digest of each.
#[derive(Default)]
pub struct Inputs(Vec<(String, String)>);

impl Inputs {
    fn load(&mut self, path: &Path) -> Result<Value, Failure> {
        let source = path.display().to_string();
        let bytes = if source == "-" {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure {
                    kind: "io",
                    message: format!("standard input: {e}"),
                })?;
            buf
        } else {
            std::fs::read(path).map_err(|e| Failure {
                kind: "io",
                message: format!("{source}: {e}"),
            })?
        };
        self.0
            .push((source.clone(), hex::encode(Sha256::digest(&bytes))));
        serde_json::from_slice(&bytes).map_err(|e| Failure {
            kind: "parse",
            message: format!("{source}: {e}"),
        })
    }

    pub fn records(&self) -> Vec<Value> {
        self.0
            .iter()
            .map(|(s, d)| json!({"source": s, "sha256": d}))
            .collect()
    }

    fn matroid(&mut self, path: &Path) -> Result<ValuatedMatroid, Failure> {
        let table = table_from_json(&self.load(path)?)?;
        Ok(ValuatedMatroid::new(table)?)
    }

    fn quiver(&mut self, path: &Path) -> Result<QuiverRepresentation, Failure> {
        Ok(representation_from_json(&self.load(path)?)?)
    }
}

pub fn check_matroid(inputs: &mut Inputs, path: &Path) -> Result<Outcome, Failure> {
    let table = table_from_json(&inputs.load(path)?)?;
    Ok(Outcome::verdict(
        is_valuated_matroid(&table)?,
        certificate::exchange,
    ))
}

pub fn circuits(inputs: &mut Inputs, path: &Path, co: bool) -> Result<Outcome, Failure> {
    let mu = inputs.matroid(path)?;
    let list = if co { mu.cocircuits() } else { mu.circuits() };
    Ok(Outcome::Object(Value::Array(
        list.iter().map(vector_to_json).collect(),
    )))
}

pub fn tls_member(inputs: &mut Inputs, matroid: &Path, vector: &Path) -> Result<Outcome, Failure> {
    let mu = inputs.matroid(matroid)?;
    let x = vector_from_json(&inputs.load(vector)?)?;
    Ok(Outcome::verdict(
        mu.tls_membership(&x)?,
        |c| json!({"circuit": vector_to_json(c)}),
    ))
}

pub fn quotient(inputs: &mut Inputs, smaller: &Path, larger: &Path) -> Result<Outcome, Failure> {
    let mu = inputs.matroid(smaller)?;
    let nu = inputs.matroid(larger)?;
    Ok(Outcome::verdict(
        mu.quotient_check(&nu)?,
        certificate::exchange,
    ))
}

pub fn induce(
    inputs: &mut Inputs,
    matroid: &Path,
    map: &Path,
    pointed: bool,
) -> Result<Outcome, Failure> {
    let nu = inputs.matroid(matroid)?;
    let f = map_from_json(&inputs.load(map)?)?;
    let induced = if pointed {
        affine_induced(&nu, &f)?
    } else {
        affine_induced_unpointed(&nu, &f)?
    };
    Ok(Outcome::Object(table_to_json(induced.table())))
}

pub fn morphism_check(
    inputs: &mut Inputs,
    map: &Path,
    source: &Path,
    target: &Path,
    witnesses: Option<(&Path, &Path)>,
) -> Result<Outcome, Failure> {
    let f = map_from_json(&inputs.load(map)?)?;
    let mu = inputs.matroid(source)?;
    let nu = inputs.matroid(target)?;
    let Some((induced, src)) = witnesses else {
        return Ok(Outcome::verdict(
            is_affine_morphism(&f, &mu, &nu)?,
            certificate::morphism,
        ));
    };
    let w_induced = field_matrix_from_json(&inputs.load(induced)?, Some(f.n()))?;
    let w_source = field_matrix_from_json(&inputs.load(src)?, Some(f.n()))?;
    let v = realizable_affine_morphism_check(&f, &mu, &nu, &w_induced, &w_source)?;
    Ok(Outcome::verdict(v, certificate::realization))
}

pub fn monomial_decompose(inputs: &mut Inputs, matrix: &Path) -> Result<Outcome, Failure> {
    let a = field_matrix_from_json(&inputs.load(matrix)?, None)?;
    let d = decompose_weakly_monomial(&a)?;
    Ok(Outcome::Object(json!({
        "pattern": field_matrix_to_json(&d.pattern),
        "diagonal": field_matrix_to_json(&d.diagonal),
        "map": map_to_json(&associated_map(&a)?),
        "valuation": trop_matrix_to_json(&a.valuation()?),
    })))
}

pub fn realize(inputs: &mut Inputs, matrix: &Path) -> Result<Outcome, Failure> {
    let m = field_matrix_from_json(&inputs.load(matrix)?, None)?;
    Ok(Outcome::Object(table_to_json(
        pluecker_valuations(&m)?.table(),
    )))
}

pub fn qdr_check(
    inputs: &mut Inputs,
    quiver: &Path,
    tuple: &Path,
    method: Method,
) -> Result<Outcome, Failure> {
    let rep = inputs.quiver(quiver)?;
    let tuple = tuple_from_json(&rep, &inputs.load(tuple)?)?;
    let v = match method {
        Method::Relations => qdr_membership(&rep, &tuple)?,
        Method::Containment => qdr_membership_via_containment(&rep, &tuple)?,
    };
    Ok(Outcome::verdict(v, |c| certificate::qdr(&rep, c)))
}

pub fn containment(
    inputs: &mut Inputs,
    matrix: &Path,
    source: &Path,
    target: &Path,
) -> Result<Outcome, Failure> {
    let a = trop_matrix_from_json(&inputs.load(matrix)?)?;
    let mu = inputs.matroid(source)?;
    let nu = inputs.matroid(target)?;
    Ok(Outcome::verdict(
        containment_check(&a, &mu, &nu)?,
        certificate::containment,
    ))
}

pub fn qgr_witness(
    inputs: &mut Inputs,
    quiver: &Path,
    tuple: &Path,
    witness: &Path,
) -> Result<Outcome, Failure> {
    let rep = inputs.quiver(quiver)?;
    let tuple = tuple_from_json(&rep, &inputs.load(tuple)?)?;
    let witness = witness_from_json(&rep, &inputs.load(witness)?)?;
    let v = trop_qgr_witness_check(&rep, &tuple, &witness)?;
    Ok(Outcome::verdict(v, |c| certificate::witness(&rep, c)))
}

pub fn flag_check(inputs: &mut Inputs, paths: &[std::path::PathBuf]) -> Result<Outcome, Failure> {
    let tables = paths
        .iter()
        .map(|p| Ok(table_from_json(&inputs.load(p)?)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(Outcome::verdict(
        flag_mode_check(&tables)?,
        certificate::flag,
    ))
}

pub fn relations(inputs: &mut Inputs, quiver: &Path) -> Result<Outcome, Failure> {
    let rep = inputs.quiver(quiver)?;
    let classical = if rep.has_field_layer() {
        let list = classical_relations(&rep)?;
        Value::Array(
            list.iter()
                .map(|r| json!({"origin": rep.describe_origin(&r.origin), "relation": rep.format_classical(r)}))
                .collect(),
        )
    } else {
        Value::Null
    };
    let tropical: Vec<Value> = tropical_relations(&rep)?
        .iter()
        .map(|r| json!({"origin": rep.describe_origin(&r.origin), "relation": rep.format_tropical(r)}))
        .collect();
    Ok(Outcome::Object(json!({
        "count": classical.as_array().map_or(tropical.len(), Vec::len),
        "classical": classical,
        "tropical": tropical,
    })))
}

/// The first disagreeing instance becomes the certificate.
pub fn cross_check(kind: CrossKind, count: usize, seed: u64) -> Result<Outcome, Failure> {
    let mut rng = random::rng(seed);
    let mut disagreements = Vec::new();
    let mut first = None;
    for k in 0..count {
        let (agrees, instance) = match kind {
            CrossKind::Relations => {
                let inst = random::arrow_instance(&mut rng)?;
                let a = qdr_membership(&inst.rep, &inst.tuple)?.holds();
                let b = qdr_membership_via_containment(&inst.rep, &inst.tuple)?.holds();
                let shown = json!({
                    "quiver": tropquiver::json::representation_to_json(&inst.rep),
                    "tuple": tropquiver::json::tuple_to_json(&inst.rep, &inst.tuple),
                    "relations": a,
                    "containment": b,
                });
                (a == b, shown)
            }
            CrossKind::Image => {
                let inst = random::monomial_instance(&mut rng)?;
                let f = associated_map(&inst.matrix)?;
                let v = image_equals_induced(&f, &inst.source)?;
                let shown = json!({
                    "map": map_to_json(&f),
                    "matroid": table_to_json(inst.source.table()),
                    "violation": v.certificate().map(certificate::image),
                });
                (v.holds(), shown)
            }
            CrossKind::Morphism => {
                let inst = random::monomial_instance(&mut rng)?;
                let f = associated_map(&inst.matrix)?;
                let a = inst.matrix.valuation()?;
                let contained = containment_check(&a, &inst.source, &inst.target)?.holds();
                let morphism = is_affine_morphism(&f, &inst.target, &inst.source)?.holds();
                let shown = json!({
                    "matrix": field_matrix_to_json(&inst.matrix),
                    "source": table_to_json(inst.source.table()),
                    "target": table_to_json(inst.target.table()),
                    "containment": contained,
                    "morphism": morphism,
                });
                (contained == morphism, shown)
            }
            CrossKind::Pluecker => {
                let n = 1 + (k % 6);
                let d = 1 + (k / 6) % n.min(3);
                let (m, mu) = random::realizable_matroid(&mut rng, d, n)?;
                let ok = is_valuated_matroid(mu.table())?.holds()
                    && gp_relations_vanish(mu.table())?.holds();
                (ok, json!({"matrix": field_matrix_to_json(&m)}))
            }
            CrossKind::Flag => {
                let (n, pair) = if k % 2 == 0 {
                    random::flag_instance(&mut rng)?
                } else {
                    random::unrelated_pair(&mut rng)?
                };
                let rep =
                    QuiverRepresentation::identity_flag(n, &[pair[0].rank(), pair[1].rank()])?;
                let flag = flag_mode_check(&pair)?.holds();
                let qdr = qdr_membership(&rep, &pair)?.holds();
                // nested spans must always give a flag
                let ok = flag == qdr && (k % 2 == 1 || flag);
                let shown = json!({"tuple": tropquiver::json::tuple_to_json(&rep, &pair), "flag": flag, "qdr": qdr});
                (ok, shown)
            }
        };
        if !agrees {
            disagreements.push(k);
            first.get_or_insert(json!({"instance": k, "data": instance}));
        }
    }
    Ok(Outcome::Verdict {
        result: disagreements.is_empty(),
        certificate: first,
        output: Some(json!({"count": count, "seed": seed, "disagreements": disagreements})),
    })
}
