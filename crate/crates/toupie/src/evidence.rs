//! JSON documents for classification evidence, invariants and modules.
//! Keys come out in declaration order and scalars as canonical strings, so
//! identical inputs give identical bytes.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use toupie_core::classifier::{ClassLabel, Evidence, VerificationReport};
use toupie_core::field::format_scalar;
use toupie_core::field::Rationals;
use toupie_core::ideal::IdealClosure;
use toupie_core::minimal::MinimalRelationCatalog;
use toupie_core::quiver::GeneralBoundQuiver;
use toupie_core::rep::Representation;
use toupie_core::witness::WitnessSpec;

pub const SCHEMA: u32 = 1;

/// Ordered key/value pairs written as a JSON object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params(pub Vec<(String, String)>);

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalDoc {
    pub lambdas: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDoc {
    pub family: &'static str,
    pub params: Params,
}

impl WitnessDoc {
    pub fn new(w: &WitnessSpec) -> Self {
        let mut params: Vec<(String, String)> = w
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        if let Some(l) = w.lambda() {
            params.push(("lambda".into(), format_scalar(l)));
        }
        WitnessDoc {
            family: w.tag(),
            params: Params(params),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckDoc {
    pub subject: String,
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationDoc {
    pub ok: bool,
    pub seed: u64,
    pub checks: Vec<CheckDoc>,
}

impl VerificationDoc {
    pub fn new(r: &VerificationReport, seed: u64) -> Self {
        VerificationDoc {
            ok: r.ok(),
            seed,
            checks: r
                .checks
                .iter()
                .map(|c| CheckDoc {
                    subject: c.subject.clone(),
                    property: c.property.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EvidenceDoc {
    pub schema: u32,
    pub label: &'static str,
    pub t: usize,
    pub m: usize,
    pub lengths: Vec<usize>,
    pub simply_connected: bool,
    pub linkage_edges: Vec<[usize; 2]>,
    #[serde(rename = "branches_in_I")]
    pub branches_in_i: Vec<usize>,
    pub relations_per_branch: Vec<usize>,
    pub canonical: Option<CanonicalDoc>,
    pub fired_case: &'static str,
    pub warnings: Vec<String>,
    pub witnesses: Vec<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

impl EvidenceDoc {
    pub fn new(label: ClassLabel, ev: &Evidence) -> Self {
        EvidenceDoc {
            schema: SCHEMA,
            label: label.slug(),
            t: ev.t,
            m: ev.m,
            lengths: ev.lengths.clone(),
            simply_connected: ev.simply_connected,
            linkage_edges: ev
                .linkage_edges
                .iter()
                .map(|&(a, b)| [a + 1, b + 1])
                .collect(),
            branches_in_i: one_based(&ev.branches_in_i),
            relations_per_branch: ev.relations_per_branch.clone(),
            canonical: ev.canonical.as_ref().map(|l| CanonicalDoc {
                lambdas: l.iter().map(format_scalar).collect(),
            }),
            fired_case: ev.fired_case,
            warnings: ev.warnings.clone(),
            witnesses: ev.witnesses.iter().map(WitnessDoc::new).collect(),
            verification: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalRelationDoc {
    pub support: Vec<usize>,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsDoc {
    pub schema: u32,
    pub t: usize,
    pub m: usize,
    pub lengths: Vec<usize>,
    pub simply_connected: bool,
    pub linkage_edges: Vec<[usize; 2]>,
    #[serde(rename = "branches_in_I")]
    pub branches_in_i: Vec<usize>,
    pub relations_per_branch: Vec<usize>,
    pub canonical: Option<CanonicalDoc>,
    pub minimal_relations: Vec<MinimalRelationDoc>,
}

impl InvariantsDoc {
    pub fn new(c: &IdealClosure<Rationals>, cat: &MinimalRelationCatalog) -> Self {
        InvariantsDoc {
            schema: SCHEMA,
            t: c.t(),
            m: c.m,
            lengths: c.lengths.clone(),
            simply_connected: cat.is_simply_connected(),
            linkage_edges: cat
                .linkage_edges
                .iter()
                .map(|&(a, b)| [a + 1, b + 1])
                .collect(),
            branches_in_i: one_based(&c.branches_in_i),
            relations_per_branch: c.relation_counts(),
            canonical: c.canonical_lambdas().map(|l| CanonicalDoc {
                lambdas: l.iter().map(format_scalar).collect(),
            }),
            minimal_relations: cat
                .relations
                .iter()
                .map(|r| MinimalRelationDoc {
                    support: one_based(&r.support),
                    witness: r.witness.iter().map(format_scalar).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MapDoc {
    pub arrow: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleDoc {
    pub vertices: Vec<String>,
    pub dims: Vec<usize>,
    pub maps: Vec<MapDoc>,
}

impl ModuleDoc {
    pub fn new(q: &GeneralBoundQuiver, m: &Representation) -> Self {
        ModuleDoc {
            vertices: q.vertices.clone(),
            dims: m.dims.clone(),
            maps: q
                .arrows
                .iter()
                .zip(&m.maps)
                .filter(|(_, x)| x.rows() > 0 && x.cols() > 0)
                .map(|(a, x)| MapDoc {
                    arrow: a.label.clone(),
                    rows: x.rows(),
                    cols: x.cols(),
                    entries: (0..x.rows())
                        .flat_map(|r| (0..x.cols()).map(move |c| (r, c)))
                        .map(|(r, c)| format_scalar(x.get(r, c)))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("evidence serializes");
    s.push('\n');
    s
}
