//! The JSON algebra file format.
//!
//! ```json
//! {
//!   "field": "Fp:3",
//!   "basis": [{"name": "1", "weight": 0}, {"name": "t", "weight": 1}],
//!   "unit": "1",
//!   "structure": [{"left": "t", "right": "t", "value": []}],
//!   "augmentation": [{"basis": "1", "coeff": 1}]
//! }
//! ```
//!
//! Coefficients are integers, or strings holding an integer or a fraction
//! `a/b`. A structure entry for `(l, r)` also supplies `(r, l)` unless that
//! pair is listed separately. Products with the unit follow from the unit
//! law when they are not listed; all other missing products are zero.
//! Coefficient files add an `action` list giving the image of each basis
//! element of `A`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{validate_algebra, BasisElement, Coefficients, GradedAlgebra, LinComb};
use crate::error::{Error, Result};
use crate::exactlinalg::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BasisEntry {
    pub name: String,
    pub weight: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Term {
    pub basis: String,
    pub coeff: Coeff,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StructureEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<Term>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub field: String,
    pub basis: Vec<BasisEntry>,
    pub unit: String,
    #[serde(default)]
    pub structure: Vec<StructureEntry>,
    pub augmentation: Vec<Term>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionEntry {
    pub source: String,
    pub value: Vec<Term>,
}

#[derive(Debug, Clone, Deserialize)]
struct CoefficientDocument {
    #[serde(flatten)]
    algebra: AlgebraDocument,
    action: Vec<ActionEntry>,
}

fn parse_coeff(field: &FieldSpec, c: &Coeff) -> Result<FieldElement> {
    let bad = || Error::Schema(format!("bad coefficient {c:?}"));
    match c {
        Coeff::Int(n) => Ok(field.from_i64(*n)),
        Coeff::Text(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s, "1"),
            };
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            field.from_fraction(&num, &den)
        }
    }
}

struct Names<'a> {
    index: HashMap<&'a str, usize>,
}

impl<'a> Names<'a> {
    fn new(basis: &'a [BasisEntry]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.as_str(), i).is_some() {
                return Err(Error::Schema(format!("duplicate basis name `{}`", b.name)));
            }
        }
        Ok(Names { index })
    }

    fn get(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Schema(format!("unknown basis element `{name}`")))
    }

    fn lincomb(&self, field: &FieldSpec, terms: &[Term]) -> Result<LinComb> {
        terms
            .iter()
            .map(|t| Ok((self.get(&t.basis)?, parse_coeff(field, &t.coeff)?)))
            .collect()
    }
}

impl AlgebraDocument {
    /// Builds the algebra without validating its axioms.
    pub fn build(&self) -> Result<GradedAlgebra> {
        let field: FieldSpec = self.field.parse().map_err(|e: Error| match e {
            Error::Schema(m) => Error::Schema(m),
            other => Error::Schema(other.to_string()),
        })?;
        let names = Names::new(&self.basis)?;
        let n = self.basis.len();
        let unit = names.get(&self.unit)?;
        let mut given: HashMap<(usize, usize), LinComb> = HashMap::new();
        for e in &self.structure {
            let key = (names.get(&e.left)?, names.get(&e.right)?);
            let value = names.lincomb(&field, &e.value)?;
            if given.insert(key, value).is_some() {
                return Err(Error::Schema(format!("product ({}, {}) listed twice", e.left, e.right)));
            }
        }
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let value = if let Some(v) = given.get(&(i, j)) {
                    v.clone()
                } else if let Some(v) = given.get(&(j, i)) {
                    v.clone()
                } else if i == unit {
                    vec![(j, field.one())]
                } else if j == unit {
                    vec![(i, field.one())]
                } else {
                    Vec::new()
                };
                products.push(value);
            }
        }
        let mut augmentation = vec![field.zero(); n];
        for t in &self.augmentation {
            let i = names.get(&t.basis)?;
            augmentation[i] = field.add(&augmentation[i], &parse_coeff(&field, &t.coeff)?);
        }
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                name: b.name.clone(),
                weight: b.weight,
            })
            .collect();
        GradedAlgebra::from_table(field, "file", basis, unit, products, augmentation)
    }

    /// Document describing a finite algebra; `None` for `k[t]`.
    pub fn from_algebra(a: &GradedAlgebra) -> Option<Self> {
        let n = a.dim()?;
        let f = a.field();
        let field = match f.kind() {
            crate::exactlinalg::FieldKind::Prime(p) => format!("Fp:{p}"),
            crate::exactlinalg::FieldKind::Rationals => "Q".to_string(),
        };
        let term = |i: usize, c: &FieldElement| Term {
            basis: a.name(i).into_owned(),
            coeff: Coeff::Text(c.to_string()),
        };
        let mut structure = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i == a.unit() || j == a.unit() {
                    continue;
                }
                let p = a.mul(i, j);
                if !p.is_empty() {
                    structure.push(StructureEntry {
                        left: a.name(i).into_owned(),
                        right: a.name(j).into_owned(),
                        value: p.iter().map(|(k, c)| term(*k, c)).collect(),
                    });
                }
            }
        }
        Some(AlgebraDocument {
            field,
            basis: (0..n)
                .map(|i| BasisEntry {
                    name: a.name(i).into_owned(),
                    weight: a.weight(i),
                })
                .collect(),
            unit: a.name(a.unit()).into_owned(),
            structure,
            augmentation: (0..n)
                .filter(|&i| !a.augmentation(i).is_zero())
                .map(|i| term(i, &a.augmentation(i)))
                .collect(),
        })
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(document: &str) -> Result<T> {
    serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))
}

fn validated(a: GradedAlgebra) -> Result<GradedAlgebra> {
    let report = validate_algebra(&a, None);
    match report.violations.into_iter().next() {
        Some(v) => Err(Error::AlgebraAxiom(v)),
        None => Ok(a),
    }
}

/// Parses and fully validates an algebra document.
pub fn load_algebra(document: &str) -> Result<GradedAlgebra> {
    let doc: AlgebraDocument = parse_json(document)?;
    validated(doc.build()?)
}

/// Parses a coefficient document: an algebra `C` plus an `action` list
/// mapping basis names of `a` to elements of `C`.
pub fn load_coefficients(a: &GradedAlgebra, document: &str) -> Result<Coefficients> {
    let doc: CoefficientDocument = parse_json(document)?;
    let c = validated(doc.algebra.build()?)?;
    let n = a
        .dim()
        .ok_or_else(|| Error::InvalidAction("custom coefficients need a finite algebra A".into()))?;
    let c_names = Names::new(&doc.algebra.basis)?;
    let a_index: HashMap<String, usize> = (0..n).map(|i| (a.name(i).into_owned(), i)).collect();
    let mut action: Vec<Option<LinComb>> = vec![None; n];
    for e in &doc.action {
        let i = *a_index
            .get(&e.source)
            .ok_or_else(|| Error::Schema(format!("unknown source basis element `{}`", e.source)))?;
        action[i] = Some(c_names.lincomb(&c.field(), &e.value)?);
    }
    let unit_image = vec![(c.unit(), c.field().one())];
    let action = action
        .into_iter()
        .enumerate()
        .map(|(i, img)| match img {
            Some(v) => v,
            None if i == a.unit() => unit_image.clone(),
            None => Vec::new(),
        })
        .collect();
    Coefficients::custom(a, c, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{truncated_poly, Axiom};

    const F3_SQUARE_ZERO: &str = r#"{
        "field": "Fp:3",
        "basis": [{"name": "one", "weight": 0}, {"name": "eps", "weight": 1}],
        "unit": "one",
        "structure": [{"left": "eps", "right": "eps", "value": []}],
        "augmentation": [{"basis": "one", "coeff": 1}]
    }"#;

    #[test]
    fn loads_square_zero_extension() {
        let a = load_algebra(F3_SQUARE_ZERO).unwrap();
        let f = FieldSpec::prime(3).unwrap();
        assert!(a.same_structure(&truncated_poly(f, 2).unwrap()));
    }

    #[test]
    fn non_additive_weight_is_an_axiom_error() {
        let doc = F3_SQUARE_ZERO.replace(r#""value": []"#, r#""value": [{"basis": "eps", "coeff": 1}]"#);
        match load_algebra(&doc) {
            Err(Error::AlgebraAxiom(v)) => {
                assert_eq!(v.axiom, Axiom::Weight);
                assert_eq!(v.witness, vec!["eps".to_string(), "eps".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_unit_is_a_schema_error() {
        let doc = F3_SQUARE_ZERO.replace(r#""unit": "one","#, "");
        assert!(matches!(load_algebra(&doc), Err(Error::Schema(_))));
        let doc = F3_SQUARE_ZERO.replace(r#""unit": "one""#, r#""unit": "uno""#);
        assert!(matches!(load_algebra(&doc), Err(Error::Schema(_))));
    }

    #[test]
    fn rational_coefficients() {
        let doc = r#"{
            "field": "Q",
            "basis": [{"name": "1", "weight": 0}, {"name": "x", "weight": 1}, {"name": "y", "weight": 2}],
            "unit": "1",
            "structure": [{"left": "x", "right": "x", "value": [{"basis": "y", "coeff": "-3/6"}]}],
            "augmentation": [{"basis": "1", "coeff": "1"}]
        }"#;
        let a = load_algebra(doc).unwrap();
        assert_eq!(a.mul(1, 1)[0].1.to_string(), "-1/2");
        let bad = doc.replace("-3/6", "1/0");
        assert!(load_algebra(&bad).is_err());
    }

    #[test]
    fn document_round_trip() {
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 4).unwrap();
        let doc = AlgebraDocument::from_algebra(&a).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(load_algebra(&text).unwrap().same_structure(&a));
    }

    #[test]
    fn coefficient_documents() {
        let f = FieldSpec::prime(3).unwrap();
        let a = truncated_poly(f, 3).unwrap();
        let doc = r#"{
            "field": "Fp:3",
            "basis": [{"name": "1", "weight": 0}, {"name": "s", "weight": 1}],
            "unit": "1",
            "augmentation": [{"basis": "1", "coeff": 1}],
            "action": [{"source": "t", "value": [{"basis": "s", "coeff": 1}]}]
        }"#;
        let c = load_coefficients(&a, doc).unwrap();
        assert_eq!(c.mode(), "custom");
        let bad = doc.replace(r#""source": "t""#, r#""source": "t^2""#);
        assert!(load_coefficients(&a, &bad).is_err());
    }
}
