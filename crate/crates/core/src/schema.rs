//! JSON documents for catalog entries and user-supplied presentations.
//!
//! The document mirrors the domain types field by field. Monomials are
//! written as `{generator: exponent}` maps, heights as an integer or
//! `"inf"`, and only Steenrod values that the axioms do not force are
//! stored, so exporting an entry and importing it again is lossless.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Element, GeneratorSpec, Height, Monomial};
use crate::catalog::{CatalogEntry, ExpectedInvariants, ExpectedWitness, KnownDiscrepancy};
use crate::coalgebra::{CoalgebraPresentation, CofactorKind, CofactorSpec};
use crate::error::Error;
use crate::fp::Prime;
use crate::invariants::{ZClass, ZRelation};
use crate::spectral::DifferentialSpec;
use crate::steenrod::{ActionTable, ActionValue, BasicOp};

const CUSTOM_GROUP: &str = "custom";

fn is_one(w: &u32) -> bool {
    *w == 1
}

fn one() -> u32 {
    1
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HeightDoc {
    Finite(u32),
    Named(String),
}

impl HeightDoc {
    fn from_height(h: Height) -> Self {
        match h {
            Height::Finite(n) => HeightDoc::Finite(n),
            Height::Infinite => HeightDoc::Named("inf".into()),
        }
    }

    fn to_height(&self) -> Result<Height, Error> {
        match self {
            HeightDoc::Finite(n) => Ok(Height::Finite(*n)),
            HeightDoc::Named(s) if s == "inf" => Ok(Height::Infinite),
            HeightDoc::Named(s) => Err(Error::Schema(format!("height must be an integer or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: u32,
    pub height: HeightDoc,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub weight: u32,
}

impl GeneratorDoc {
    fn from_spec(g: &GeneratorSpec) -> Self {
        GeneratorDoc {
            name: g.name.clone(),
            degree: g.degree,
            height: HeightDoc::from_height(g.height),
            weight: g.weight,
        }
    }

    fn to_spec(&self) -> Result<GeneratorSpec, Error> {
        Ok(GeneratorSpec::new(self.name.clone(), self.degree, self.height.to_height()?).with_weight(self.weight))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDoc {
    pub kind: OpKind,
    pub i: u32,
    #[serde(default, skip_serializing_if = "is_false")]
    pub bockstein: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpKind {
    Sq,
    P,
}

impl OpDoc {
    fn from_op(op: BasicOp) -> Self {
        match op {
            BasicOp::Sq(i) => OpDoc { kind: OpKind::Sq, i, bockstein: false },
            BasicOp::P { bockstein, i } => OpDoc { kind: OpKind::P, i, bockstein },
        }
    }

    fn to_op(self, prime: Prime) -> Result<BasicOp, Error> {
        let op = match (self.kind, self.bockstein) {
            (OpKind::Sq, false) => BasicOp::Sq(self.i),
            (OpKind::Sq, true) => return Err(Error::Schema("Sq takes no bockstein flag".into())),
            (OpKind::P, bockstein) => BasicOp::P { bockstein, i: self.i },
        };
        if !op.is_valid_for(prime) {
            return Err(Error::Schema(format!("{op} is not an operation at p = {prime}")));
        }
        Ok(op)
    }
}

/// `{generator: exponent}` with zero exponents omitted.
pub type MonomialDoc = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub monomial: MonomialDoc,
    pub coeff: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Known(Vec<TermDoc>),
    Marker(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub gen: String,
    pub op: OpDoc,
    pub value: ValueDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub op: OpDoc,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZClassDoc {
    pub name: String,
    pub degree: u32,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub weight: u32,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CofactorDoc {
    pub name: String,
    pub degree: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u32>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub weight: u32,
}

impl CofactorDoc {
    fn from_spec(c: &CofactorSpec) -> Self {
        let (kind, height) = match c.kind {
            CofactorKind::Exterior => ("exterior", None),
            CofactorKind::TruncatedPolynomial { height } => ("truncatedPolynomial", Some(height)),
            CofactorKind::DividedPower => ("dividedPower", None),
        };
        CofactorDoc { name: c.name.clone(), degree: c.degree, kind: kind.into(), height, weight: c.weight }
    }

    fn to_spec(&self) -> Result<CofactorSpec, Error> {
        let kind = match (self.kind.as_str(), self.height) {
            ("exterior", None) => CofactorKind::Exterior,
            ("truncatedPolynomial", Some(height)) => CofactorKind::TruncatedPolynomial { height },
            ("dividedPower", None) => CofactorKind::DividedPower,
            _ => {
                return Err(Error::Schema(format!(
                    "cofactor {}: kind {:?} with height {:?} is not valid",
                    self.name, self.kind, self.height
                )))
            }
        };
        Ok(CofactorSpec::new(self.name.clone(), self.degree, kind).with_weight(self.weight))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDoc {
    pub page: u32,
    pub source: String,
    pub target: MonomialDoc,
    #[serde(default, skip_serializing_if = "is_false")]
    pub inferred: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct WitnessDoc {
    pub z: String,
    pub op: OpDoc,
    pub x: String,
    pub mu: MonomialDoc,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExpectedDoc {
    pub cup: u32,
    pub wgt: u32,
    pub mwgt_lower: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscrepancyDoc {
    pub check: String,
    pub note: String,
}

/// A catalog entry or custom presentation as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EntryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub prime: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u32>,
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub steenrod: Vec<ActionDoc>,
    #[serde(default)]
    pub z_classes: Vec<ZClassDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebra: Option<Vec<CofactorDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cotor: Option<Vec<GeneratorDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differentials: Vec<DifferentialDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_cohomology: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub known_discrepancies: Vec<DiscrepancyDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn monomial_doc(a: &AlgebraPresentation, m: &Monomial) -> MonomialDoc {
    a.generators().iter().zip(m.exponents()).filter(|(_, e)| **e > 0).map(|(g, e)| (g.name.clone(), *e)).collect()
}

fn factors_doc(factors: &[(String, u32)]) -> MonomialDoc {
    factors.iter().map(|(g, e)| (g.clone(), *e)).collect()
}

/// Factors in generator order of `a`, checking every name exists.
fn factors_from(a: &AlgebraPresentation, doc: &MonomialDoc) -> Result<Vec<(String, u32)>, Error> {
    let mut out = Vec::with_capacity(doc.len());
    for (g, e) in doc {
        let idx = a.index_of(g).ok_or_else(|| Error::UnknownGenerator(g.clone()))?;
        if *e == 0 {
            return Err(Error::Schema(format!("zero exponent on {g}")));
        }
        out.push((idx, g.clone(), *e));
    }
    out.sort();
    Ok(out.into_iter().map(|(_, g, e)| (g, e)).collect())
}

fn monomial_from(a: &AlgebraPresentation, doc: &MonomialDoc) -> Result<Monomial, Error> {
    let factors = factors_from(a, doc)?;
    let refs: Vec<(&str, u32)> = factors.iter().map(|(g, e)| (g.as_str(), *e)).collect();
    a.monomial_from(&refs)
}

impl EntryDoc {
    pub fn from_entry(entry: &CatalogEntry) -> Self {
        let a = &entry.algebra;
        let steenrod = entry
            .action_table
            .explicit_entries()
            .into_iter()
            .map(|(gen, op, e)| ActionDoc {
                gen: gen.to_string(),
                op: OpDoc::from_op(op),
                value: ValueDoc::Known(
                    e.terms().map(|(m, coeff)| TermDoc { monomial: monomial_doc(a, m), coeff }).collect(),
                ),
            })
            .collect();
        EntryDoc {
            group: (entry.group != CUSTOM_GROUP).then(|| entry.group.clone()),
            prime: entry.prime.value(),
            dimension: entry.dimension,
            generators: a.generators().iter().map(GeneratorDoc::from_spec).collect(),
            steenrod,
            z_classes: entry
                .z_classes
                .iter()
                .map(|z| ZClassDoc {
                    name: z.name.clone(),
                    degree: z.degree,
                    weight: z.weight,
                    relations: z
                        .relations
                        .iter()
                        .map(|r| RelationDoc { op: OpDoc::from_op(r.op), target: r.target.clone() })
                        .collect(),
                })
                .collect(),
            coalgebra: entry
                .loop_coalgebra
                .as_ref()
                .map(|c| c.cofactors().iter().map(CofactorDoc::from_spec).collect()),
            cotor: entry.expected_cotor.as_ref().map(|c| c.generators().iter().map(GeneratorDoc::from_spec).collect()),
            differentials: entry
                .differentials
                .iter()
                .map(|d| DifferentialDoc {
                    page: d.page,
                    source: d.source.clone(),
                    target: factors_doc(&d.target),
                    inferred: d.inferred,
                })
                .collect(),
            cover_cohomology: entry.cover_cohomology.clone(),
            expected: entry.expected.as_ref().map(|x| ExpectedDoc {
                cup: x.cup,
                wgt: x.wgt,
                mwgt_lower: x.mwgt_lower,
                witness: x.witness.as_ref().map(|w| WitnessDoc {
                    z: w.z.clone(),
                    op: OpDoc::from_op(w.op),
                    x: w.x.clone(),
                    mu: factors_doc(&w.mu),
                    m: w.m,
                }),
            }),
            known_discrepancies: entry
                .known_discrepancies
                .iter()
                .map(|k| DiscrepancyDoc { check: k.check.clone(), note: k.note.clone() })
                .collect(),
            notes: entry.notes.clone(),
        }
    }

    /// Builds the entry, validating every name and degree. The action table
    /// is autofilled.
    pub fn into_entry(self) -> Result<CatalogEntry, Error> {
        let prime = Prime::new(self.prime)?;
        let gens = self.generators.iter().map(GeneratorDoc::to_spec).collect::<Result<Vec<_>, _>>()?;
        let algebra = AlgebraPresentation::new(prime, gens)?;
        let mut table = ActionTable::new(algebra.clone())?;
        for a in &self.steenrod {
            let op = a.op.to_op(prime)?;
            let value = match &a.value {
                ValueDoc::Marker(s) if s == "unknown" => ActionValue::Unknown,
                ValueDoc::Marker(s) => {
                    return Err(Error::Schema(format!("value must be a term list or \"unknown\", got {s:?}")))
                }
                ValueDoc::Known(terms) => {
                    let mut e = Element::zero();
                    for t in terms {
                        e.add_term(prime, monomial_from(&algebra, &t.monomial)?, t.coeff);
                    }
                    ActionValue::Known(e)
                }
            };
            table.set(&a.gen, op, value)?;
        }
        let action_table = table.autofill()?;
        let z_classes = self
            .z_classes
            .iter()
            .map(|z| {
                Ok(ZClass {
                    name: z.name.clone(),
                    degree: z.degree,
                    weight: z.weight,
                    relations: z
                        .relations
                        .iter()
                        .map(|r| Ok(ZRelation { op: r.op.to_op(prime)?, target: r.target.clone() }))
                        .collect::<Result<_, Error>>()?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let loop_coalgebra = match &self.coalgebra {
            Some(cs) => {
                Some(CoalgebraPresentation::new(prime, cs.iter().map(CofactorDoc::to_spec).collect::<Result<_, _>>()?)?)
            }
            None => None,
        };
        let expected_cotor = match &self.cotor {
            Some(gs) => {
                Some(AlgebraPresentation::new(prime, gs.iter().map(GeneratorDoc::to_spec).collect::<Result<_, _>>()?)?)
            }
            None => None,
        };
        // differential names live in the cotor when there is one
        let e2 = expected_cotor.as_ref().unwrap_or(&algebra);
        let differentials = self
            .differentials
            .iter()
            .map(|d| {
                Ok(DifferentialSpec {
                    page: d.page,
                    source: d.source.clone(),
                    target: factors_from(e2, &d.target)?,
                    inferred: d.inferred,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let expected = match self.expected {
            Some(x) => Some(ExpectedInvariants {
                cup: x.cup,
                wgt: x.wgt,
                mwgt_lower: x.mwgt_lower,
                witness: match x.witness {
                    Some(w) => Some(ExpectedWitness {
                        op: w.op.to_op(prime)?,
                        mu: factors_from(&algebra, &w.mu)?,
                        z: w.z,
                        x: w.x,
                        m: w.m,
                    }),
                    None => None,
                },
            }),
            None => None,
        };
        Ok(CatalogEntry {
            group: self.group.unwrap_or_else(|| CUSTOM_GROUP.to_string()),
            prime,
            dimension: self.dimension,
            algebra,
            action_table,
            loop_coalgebra,
            expected_cotor,
            differentials,
            z_classes,
            cover_cohomology: self.cover_cohomology,
            expected,
            known_discrepancies: self
                .known_discrepancies
                .into_iter()
                .map(|k| KnownDiscrepancy { check: k.check, note: k.note })
                .collect(),
            notes: self.notes,
        })
    }
}

/// Pretty-printed JSON for an entry.
pub fn to_json(entry: &CatalogEntry) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(&EntryDoc::from_entry(entry))?)
}

pub fn from_json(text: &str) -> Result<CatalogEntry, Error> {
    serde_json::from_str::<EntryDoc>(text)?.into_entry()
}
