//! The JSON structure-file format.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "field": "rational",
//!   "bases": { "A": [{ "label": "1", "degree": 0 }, { "label": "t", "degree": 0 }] },
//!   "structures": [
//!     { "kind": "algebra", "name": "A", "basis": "A",
//!       "components": { "m2": [{ "inputs": ["1", "t"], "output": [{ "label": "t", "coeff": "1" }] }] } },
//!     { "kind": "inner_product", "name": "ip", "algebra": "A",
//!       "pairings": { "p_0_0": [{ "inputs": ["1", "t"], "value": "1" }] } }
//!   ]
//! }
//! ```
//!
//! Bimodules name their algebra, morphisms their source and target
//! bimodules; references must point to structures listed earlier.
//! Coefficients are strings `"p/q"` or JSON integers.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bar::TruncationPolicy;
use crate::basis::{GradedBasis, Vector};
use crate::error::{Error, Result};
use crate::multimap::{MultiMap, Signature};
use crate::scalar::{Field, Scalar};
use crate::report::Report;
use crate::structures::{
    check_ainfinity, check_bimodule, check_bimodule_map, check_inner_product, AInfinityAlgebra, AInfinityBimodule, BimoduleMorphism, InfinityInnerProduct,
    Pairing,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    schema: u32,
    field: String,
    bases: BTreeMap<String, Vec<RawElement>>,
    structures: Vec<RawStructure>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    label: String,
    degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawStructure {
    Algebra {
        name: String,
        basis: String,
        components: BTreeMap<String, Vec<RawEntry>>,
    },
    Bimodule {
        name: String,
        algebra: String,
        basis: String,
        components: BTreeMap<String, Vec<RawEntry>>,
    },
    Morphism {
        name: String,
        source: String,
        target: String,
        components: BTreeMap<String, Vec<RawEntry>>,
    },
    InnerProduct {
        name: String,
        algebra: String,
        pairings: BTreeMap<String, Vec<RawValue>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    inputs: Vec<String>,
    output: Vec<RawTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    label: String,
    coeff: RawCoeff,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValue {
    inputs: Vec<String>,
    value: RawCoeff,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Int(i64),
    Text(String),
}

impl RawCoeff {
    fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            RawCoeff::Int(n) => Ok(field.from_int(*n)),
            RawCoeff::Text(s) => field.parse(s),
        }
    }
}

/// One structure from a file.
#[derive(Debug, Clone)]
pub enum Bundle {
    Algebra(Arc<AInfinityAlgebra>),
    Bimodule(Arc<AInfinityBimodule>),
    Morphism(Arc<BimoduleMorphism>),
    InnerProduct(Arc<InfinityInnerProduct>),
}

impl Bundle {
    pub fn name(&self) -> &str {
        match self {
            Bundle::Algebra(a) => a.name(),
            Bundle::Bimodule(b) => b.name(),
            Bundle::Morphism(f) => f.name(),
            Bundle::InnerProduct(p) => p.name(),
        }
    }

    /// Runs the checker for this kind of structure. `max_arity` overrides the
    /// default truncation `L = 2·maxArity − 1`.
    pub fn check(&self, max_arity: Option<usize>) -> Report {
        let policy = max_arity.map(TruncationPolicy::for_max_arity);
        match self {
            Bundle::Algebra(a) => check_ainfinity(a, policy),
            Bundle::Bimodule(b) => check_bimodule(b, policy),
            Bundle::Morphism(f) => check_bimodule_map(f, policy),
            Bundle::InnerProduct(p) => check_inner_product(p, policy),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Bundle::Algebra(_) => "algebra",
            Bundle::Bimodule(_) => "bimodule",
            Bundle::Morphism(_) => "morphism",
            Bundle::InnerProduct(_) => "inner_product",
        }
    }
}

/// The contents of a structure file, in file order.
#[derive(Debug, Clone)]
pub struct StructureFile {
    pub field: Field,
    pub bundles: Vec<Bundle>,
}

fn in_structure(name: &str, e: Error) -> Error {
    match e {
        Error::Degree {
            context,
            expected,
            found,
        } => Error::Degree {
            context: format!("{name}: {context}"),
            expected,
            found,
        },
        other => Error::Invalid(format!("structure {name:?}: {other}")),
    }
}

/// Parses `"m3"` or `"b_1_0"`-style keys.
fn parse_key(key: &str, prefix: char) -> Option<Vec<usize>> {
    let rest = key.strip_prefix(prefix)?;
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    rest.split('_').map(|p| p.parse().ok()).collect()
}

fn entry_error(map: &MultiMap, inputs: &[String], e: Error) -> Error {
    let entry = format!("{}({})", map.name(), inputs.join(", "));
    match e {
        Error::Degree { .. } => e,
        other => Error::Invalid(format!("entry {entry}: {other}")),
    }
}

fn fill(map: &mut MultiMap, field: Field, entries: &[RawEntry]) -> Result<()> {
    for e in entries {
        if e.inputs.len() != map.arity() {
            return Err(Error::Arity(format!(
                "entry {}({}) has {} inputs, expected {}",
                map.name(),
                e.inputs.join(", "),
                e.inputs.len(),
                map.arity()
            )));
        }
        let output = e
            .output
            .iter()
            .map(|t| Ok((t.label.as_str(), t.coeff.parse(field)?)))
            .collect::<Result<Vec<_>>>()?;
        let inputs: Vec<&str> = e.inputs.iter().map(String::as_str).collect();
        map.set(&inputs, &output).map_err(|err| entry_error(map, &e.inputs, err))?;
    }
    Ok(())
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text)?;
        if raw.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                raw.schema
            )));
        }
        let field: Field = raw.field.parse()?;
        let mut bases = BTreeMap::new();
        for (name, elements) in &raw.bases {
            let b = GradedBasis::new(name.clone(), elements.iter().map(|e| (e.label.clone(), e.degree)))?;
            bases.insert(name.clone(), b);
        }
        let basis = |name: &str| -> Result<Arc<GradedBasis>> {
            bases
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Basis(format!("unknown basis {name:?}")))
        };
        let mut bundles: Vec<Bundle> = Vec::new();
        let find = |bundles: &[Bundle], name: &str| bundles.iter().find(|b| b.name() == name).cloned();
        for s in &raw.structures {
            let bundle = match s {
                RawStructure::Algebra {
                    name,
                    basis: b,
                    components,
                } => {
                    let b = basis(b)?;
                    let mut maps = Vec::new();
                    for (key, entries) in components {
                        let arity = match parse_key(key, 'm').as_deref() {
                            Some(&[i]) if i >= 1 => i,
                            _ => return Err(Error::Parse(format!("{name}: bad component key {key:?}"))),
                        };
                        let mut m = AInfinityAlgebra::empty_operation(field, &b, arity);
                        fill(&mut m, field, entries).map_err(|e| in_structure(name, e))?;
                        maps.push(m);
                    }
                    let a = AInfinityAlgebra::new(name.clone(), field, b, maps).map_err(|e| in_structure(name, e))?;
                    Bundle::Algebra(Arc::new(a))
                }
                RawStructure::Bimodule {
                    name,
                    algebra,
                    basis: b,
                    components,
                } => {
                    let Some(Bundle::Algebra(alg)) = find(&bundles, algebra) else {
                        return Err(Error::Invalid(format!("{name}: no earlier algebra named {algebra:?}")));
                    };
                    let b = basis(b)?;
                    let mut maps = Vec::new();
                    for (key, entries) in components {
                        let Some(&[k, l]) = parse_key(key, 'b').as_deref() else {
                            return Err(Error::Parse(format!("{name}: bad component key {key:?}")));
                        };
                        let mut m = AInfinityBimodule::empty_operation(&alg, &b, k, l);
                        fill(&mut m, field, entries).map_err(|e| in_structure(name, e))?;
                        maps.push(m);
                    }
                    let bim = AInfinityBimodule::new(name.clone(), alg, b, maps).map_err(|e| in_structure(name, e))?;
                    Bundle::Bimodule(Arc::new(bim))
                }
                RawStructure::Morphism {
                    name,
                    source,
                    target,
                    components,
                } => {
                    let (Some(Bundle::Bimodule(src)), Some(Bundle::Bimodule(tgt))) =
                        (find(&bundles, source), find(&bundles, target))
                    else {
                        return Err(Error::Invalid(format!(
                            "{name}: source and target must name earlier bimodules"
                        )));
                    };
                    let mut maps = Vec::new();
                    for (key, entries) in components {
                        let Some(&[k, l]) = parse_key(key, 'f').as_deref() else {
                            return Err(Error::Parse(format!("{name}: bad component key {key:?}")));
                        };
                        let mut m = BimoduleMorphism::empty_component(&src, tgt.basis(), k, l);
                        fill(&mut m, field, entries).map_err(|e| in_structure(name, e))?;
                        maps.push(m);
                    }
                    let f = BimoduleMorphism::new(name.clone(), src, tgt, maps).map_err(|e| in_structure(name, e))?;
                    Bundle::Morphism(Arc::new(f))
                }
                RawStructure::InnerProduct {
                    name,
                    algebra,
                    pairings,
                } => {
                    let Some(Bundle::Algebra(alg)) = find(&bundles, algebra) else {
                        return Err(Error::Invalid(format!("{name}: no earlier algebra named {algebra:?}")));
                    };
                    let mut ps = Vec::new();
                    for (key, values) in pairings {
                        let Some(&[k, l]) = parse_key(key, 'p').as_deref() else {
                            return Err(Error::Parse(format!("{name}: bad pairing key {key:?}")));
                        };
                        let mut p = Pairing::new(k, l);
                        for v in values {
                            let inputs = v
                                .inputs
                                .iter()
                                .map(|x| {
                                    alg.basis().index_of(x).ok_or_else(|| {
                                        Error::Basis(format!("{name}: {key}: unknown label {x:?}"))
                                    })
                                })
                                .collect::<Result<Vec<_>>>()?;
                            p.insert(alg.basis(), inputs, v.value.parse(field)?)
                                .map_err(|e| in_structure(name, e))?;
                        }
                        ps.push(p);
                    }
                    let ip = InfinityInnerProduct::new(name.clone(), alg, ps).map_err(|e| in_structure(name, e))?;
                    Bundle::InnerProduct(Arc::new(ip))
                }
            };
            if find(&bundles, bundle.name()).is_some() {
                return Err(Error::Invalid(format!("structure name {:?} is used twice", bundle.name())));
            }
            bundles.push(bundle);
        }
        Ok(StructureFile { field, bundles })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Json(j) => Error::Parse(format!("{}: {j}", path.display())),
            other => other,
        })
    }

    pub fn new(bundles: Vec<Bundle>) -> Result<Self> {
        let field = bundles
            .first()
            .map(|b| match b {
                Bundle::Algebra(a) => a.field(),
                Bundle::Bimodule(m) => m.field(),
                Bundle::Morphism(f) => f.field(),
                Bundle::InnerProduct(p) => p.field(),
            })
            .ok_or_else(|| Error::Invalid("a structure file needs at least one structure".into()))?;
        Ok(StructureFile { field, bundles })
    }

    pub fn get(&self, name: &str) -> Option<&Bundle> {
        self.bundles.iter().find(|b| b.name() == name)
    }

    /// The first structure of the given kind, or the one named `name`.
    pub fn pick(&self, kind: &str, name: Option<&str>) -> Result<&Bundle> {
        self.bundles
            .iter()
            .filter(|b| b.kind() == kind)
            .find(|b| name.is_none_or(|n| b.name() == n))
            .ok_or_else(|| match name {
                Some(n) => Error::Invalid(format!("no {kind} named {n:?} in the file")),
                None => Error::Invalid(format!("the file contains no {kind}")),
            })
    }

    /// Canonical JSON: sorted keys and entries, coefficients as strings.
    pub fn to_json(&self) -> String {
        let mut bases: BTreeMap<String, Vec<RawElement>> = BTreeMap::new();
        let mut add_basis = |b: &GradedBasis| {
            bases.entry(b.name().to_string()).or_insert_with(|| {
                b.elements()
                    .map(|(label, degree)| RawElement {
                        label: label.to_string(),
                        degree,
                    })
                    .collect()
            });
        };
        let table = |prefix: char, maps: &mut dyn Iterator<Item = &MultiMap>| -> BTreeMap<String, Vec<RawEntry>> {
            let mut out = BTreeMap::new();
            for m in maps {
                let key = match m.signature() {
                    Signature::Plain { arity, .. } => format!("{prefix}{arity}"),
                    Signature::Marked { k, l } => format!("{prefix}_{k}_{l}"),
                };
                let entries = m
                    .entries()
                    .map(|(x, v)| RawEntry {
                        inputs: m.render_inputs(x),
                        output: render_output(m.target(), v),
                    })
                    .collect();
                out.insert(key, entries);
            }
            out
        };
        let mut structures = Vec::new();
        for b in &self.bundles {
            structures.push(match b {
                Bundle::Algebra(a) => {
                    add_basis(a.basis());
                    RawStructure::Algebra {
                        name: a.name().into(),
                        basis: a.basis().name().into(),
                        components: table('m', &mut a.operations()),
                    }
                }
                Bundle::Bimodule(m) => {
                    add_basis(m.algebra().basis());
                    add_basis(m.basis());
                    RawStructure::Bimodule {
                        name: m.name().into(),
                        algebra: m.algebra().name().into(),
                        basis: m.basis().name().into(),
                        components: table('b', &mut m.operations()),
                    }
                }
                Bundle::Morphism(f) => RawStructure::Morphism {
                    name: f.name().into(),
                    source: f.source().name().into(),
                    target: f.target().name().into(),
                    components: table('f', &mut f.components()),
                },
                Bundle::InnerProduct(p) => {
                    let basis = p.algebra().basis();
                    RawStructure::InnerProduct {
                        name: p.name().into(),
                        algebra: p.algebra().name().into(),
                        pairings: p
                            .pairings()
                            .map(|q| {
                                let values = q
                                    .entries()
                                    .map(|(x, v)| RawValue {
                                        inputs: x.iter().map(|&a| basis.label(a).to_string()).collect(),
                                        value: RawCoeff::Text(v.to_string()),
                                    })
                                    .collect();
                                (q.name(), values)
                            })
                            .collect(),
                    }
                }
            });
        }
        let raw = RawFile {
            schema: SCHEMA_VERSION,
            field: self.field.name().into(),
            bases,
            structures,
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("serializable");
        s.push('\n');
        s
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

fn render_output(target: &GradedBasis, v: &Vector) -> Vec<RawTerm> {
    v.iter()
        .map(|(y, c)| RawTerm {
            label: target.label(y).to_string(),
            coeff: RawCoeff::Text(c.to_string()),
        })
        .collect()
}
