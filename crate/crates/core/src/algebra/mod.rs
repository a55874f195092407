//! Weight-graded commutative augmented algebras given by structure constants,
//! and the coefficient algebras placed at the basepoint.
//!
//! Every algebra is connective: weight 0 is spanned by the unit, which is
//! always an explicit basis element, and the augmentation kills everything of
//! positive weight. Finite algebras carry a full multiplication table; the
//! polynomial algebra `k[t]` is presented by its monomials and materialized
//! one weight at a time.

mod coefficients;
mod document;

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlinalg::{FieldElement, FieldSpec};

pub use coefficients::Coefficients;
pub use document::{load_algebra, load_coefficients, AlgebraDocument};

/// A sparse linear combination of basis indices, sorted by index, with no
/// zero coefficients.
pub type LinComb = Vec<(usize, FieldElement)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Presentation {
    Table {
        basis: Vec<BasisElement>,
        unit: usize,
        /// Row-major `n x n` products.
        products: Vec<LinComb>,
        augmentation: Vec<FieldElement>,
    },
    /// `k[t]` with basis index `i` standing for `t^i`.
    Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: FieldSpec,
    label: String,
    presentation: Presentation,
}

/// Weight bound used when validating algebras with unbounded weights and no
/// bound was supplied.
pub const DEFAULT_VALIDATION_WEIGHT: u32 = 8;

impl GradedAlgebra {
    /// Assembles a finite algebra from its table without checking the axioms;
    /// see [`validate_algebra`].
    pub fn from_table(
        field: FieldSpec,
        label: impl Into<String>,
        basis: Vec<BasisElement>,
        unit: usize,
        products: Vec<LinComb>,
        augmentation: Vec<FieldElement>,
    ) -> Result<Self> {
        let n = basis.len();
        if unit >= n {
            return Err(Error::Schema(format!("unit index {unit} outside a basis of size {n}")));
        }
        if products.len() != n * n {
            return Err(Error::Schema(format!(
                "expected {} products, found {}",
                n * n,
                products.len()
            )));
        }
        if augmentation.len() != n {
            return Err(Error::Schema("augmentation length differs from basis size".into()));
        }
        for lc in &products {
            for (i, c) in lc {
                if *i >= n {
                    return Err(Error::Schema(format!("product refers to basis index {i}")));
                }
                field.check(c)?;
            }
        }
        for c in &augmentation {
            field.check(c)?;
        }
        let products = products.into_iter().map(|lc| normalize(&field, lc)).collect();
        Ok(GradedAlgebra {
            field,
            label: label.into(),
            presentation: Presentation::Table {
                basis,
                unit,
                products,
                augmentation,
            },
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Short description used in reports, e.g. `truncpoly(2)`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Total dimension, or `None` for algebras with unbounded weights.
    pub fn dim(&self) -> Option<usize> {
        match &self.presentation {
            Presentation::Table { basis, .. } => Some(basis.len()),
            Presentation::Polynomial => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.dim().is_some()
    }

    pub fn max_weight(&self) -> Option<u32> {
        match &self.presentation {
            Presentation::Table { basis, .. } => basis.iter().map(|b| b.weight).max(),
            Presentation::Polynomial => None,
        }
    }

    pub fn unit(&self) -> usize {
        match &self.presentation {
            Presentation::Table { unit, .. } => *unit,
            Presentation::Polynomial => 0,
        }
    }

    pub fn weight(&self, i: usize) -> u32 {
        match &self.presentation {
            Presentation::Table { basis, .. } => basis[i].weight,
            Presentation::Polynomial => i as u32,
        }
    }

    pub fn name(&self, i: usize) -> Cow<'_, str> {
        match &self.presentation {
            Presentation::Table { basis, .. } => Cow::Borrowed(&basis[i].name),
            Presentation::Polynomial => match i {
                0 => Cow::Borrowed("1"),
                1 => Cow::Borrowed("t"),
                _ => Cow::Owned(format!("t^{i}")),
            },
        }
    }

    /// Basis indices of weight at most `w`, in index order.
    pub fn basis_up_to_weight(&self, w: u32) -> Vec<usize> {
        match &self.presentation {
            Presentation::Table { basis, .. } => (0..basis.len()).filter(|&i| basis[i].weight <= w).collect(),
            Presentation::Polynomial => (0..=w as usize).collect(),
        }
    }

    /// Dimension of the weight-`w` component.
    pub fn weight_dim(&self, w: u32) -> usize {
        match &self.presentation {
            Presentation::Table { basis, .. } => basis.iter().filter(|b| b.weight == w).count(),
            Presentation::Polynomial => 1,
        }
    }

    /// Product of two basis elements.
    pub fn mul(&self, i: usize, j: usize) -> Cow<'_, LinComb> {
        match &self.presentation {
            Presentation::Table { basis, products, .. } => Cow::Borrowed(&products[i * basis.len() + j]),
            Presentation::Polynomial => Cow::Owned(vec![(i + j, self.field.one())]),
        }
    }

    pub fn augmentation(&self, i: usize) -> FieldElement {
        match &self.presentation {
            Presentation::Table { augmentation, .. } => augmentation[i].clone(),
            Presentation::Polynomial if i == 0 => self.field.one(),
            Presentation::Polynomial => self.field.zero(),
        }
    }

    /// Product of two linear combinations.
    pub fn mul_lincomb(&self, x: &LinComb, y: &LinComb) -> LinComb {
        let f = self.field;
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = f.mul(a, b);
                for (k, c) in self.mul(*i, *j).iter() {
                    terms.push((*k, f.mul(&ab, c)));
                }
            }
        }
        normalize(&f, terms)
    }

    pub fn augment_lincomb(&self, x: &LinComb) -> FieldElement {
        let f = self.field;
        x.iter()
            .fold(f.zero(), |acc, (i, c)| f.add(&acc, &f.mul(c, &self.augmentation(*i))))
    }

    /// Compares two algebras ignoring basis names and labels.
    pub fn same_structure(&self, other: &GradedAlgebra) -> bool {
        match (&self.presentation, &other.presentation) {
            (
                Presentation::Table {
                    basis: b1,
                    unit: u1,
                    products: p1,
                    augmentation: a1,
                },
                Presentation::Table {
                    basis: b2,
                    unit: u2,
                    products: p2,
                    augmentation: a2,
                },
            ) => {
                self.field == other.field
                    && b1.len() == b2.len()
                    && b1.iter().zip(b2).all(|(x, y)| x.weight == y.weight)
                    && u1 == u2
                    && p1 == p2
                    && a1 == a2
            }
            (Presentation::Polynomial, Presentation::Polynomial) => self.field == other.field,
            _ => false,
        }
    }
}

/// Sums repeated indices, drops zeros and sorts by index.
pub(crate) fn normalize(f: &FieldSpec, mut terms: LinComb) -> LinComb {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: LinComb = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = f.add(acc, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `k[t]/t^m` with basis `1, t, ..., t^{m-1}`.
pub fn truncated_poly(field: FieldSpec, m: usize) -> Result<GradedAlgebra> {
    if m < 2 {
        return Err(Error::InvalidTruncation(m));
    }
    let basis = (0..m)
        .map(|i| BasisElement {
            name: match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            },
            weight: i as u32,
        })
        .collect();
    let mut products = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            products.push(if i + j < m {
                vec![(i + j, field.one())]
            } else {
                Vec::new()
            });
        }
    }
    let augmentation = (0..m)
        .map(|i| if i == 0 { field.one() } else { field.zero() })
        .collect();
    GradedAlgebra::from_table(field, format!("truncpoly({m})"), basis, 0, products, augmentation)
}

/// The polynomial algebra `k[t]`, one basis element `t^i` in each weight `i`.
pub fn polynomial(field: FieldSpec) -> GradedAlgebra {
    GradedAlgebra {
        field,
        label: "poly".to_string(),
        presentation: Presentation::Polynomial,
    }
}

/// The exterior algebra on one generator `x` of weight 1.
pub fn exterior(field: FieldSpec) -> GradedAlgebra {
    let basis = vec![
        BasisElement {
            name: "1".into(),
            weight: 0,
        },
        BasisElement {
            name: "x".into(),
            weight: 1,
        },
    ];
    let one = field.one();
    let products = vec![
        vec![(0, one.clone())],
        vec![(1, one.clone())],
        vec![(1, one.clone())],
        vec![],
    ];
    GradedAlgebra::from_table(field, "exterior", basis, 0, products, vec![one, field.zero()])
        .expect("exterior algebra table is well-formed")
}

/// Which algebra axiom an [`AlgebraViolation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Weight 0 must be spanned by the unit, and the unit must have weight 0.
    Connectivity,
    Weight,
    Commutativity,
    Associativity,
    Unit,
    Augmentation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Connectivity => "connectivity",
            Axiom::Weight => "weight",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Augmentation => "augmentation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraViolation {
    pub axiom: Axiom,
    /// Basis names of the witness (one, two or three elements).
    pub witness: Vec<String>,
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.axiom, self.witness.join(", "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub violations: Vec<AlgebraViolation>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every algebra axiom on basis elements. Algebras with unbounded
/// weights are checked on basis elements (and triples) of total weight at
/// most `weight_bound`, defaulting to [`DEFAULT_VALIDATION_WEIGHT`].
pub fn validate_algebra(a: &GradedAlgebra, weight_bound: Option<u32>) -> AlgebraReport {
    let f = a.field();
    let bound = match a.max_weight() {
        Some(_) => u32::MAX,
        None => weight_bound.unwrap_or(DEFAULT_VALIDATION_WEIGHT),
    };
    let idx = a.basis_up_to_weight(bound.min(a.max_weight().unwrap_or(bound)));
    let mut violations = Vec::new();
    let mut flag = |axiom: Axiom, w: &[usize]| {
        violations.push(AlgebraViolation {
            axiom,
            witness: w.iter().map(|&i| a.name(i).into_owned()).collect(),
        });
    };
    let unit = a.unit();
    if a.weight(unit) != 0 {
        flag(Axiom::Connectivity, &[unit]);
    }
    for &i in &idx {
        if i != unit && a.weight(i) == 0 {
            flag(Axiom::Connectivity, &[i]);
        }
    }
    if a.augmentation(unit) != f.one() {
        flag(Axiom::Augmentation, &[unit]);
    }
    for &i in &idx {
        if i != unit && !a.augmentation(i).is_zero() {
            flag(Axiom::Augmentation, &[i]);
        }
        let ei: LinComb = vec![(i, f.one())];
        if a.mul(unit, i).as_ref() != &ei || a.mul(i, unit).as_ref() != &ei {
            flag(Axiom::Unit, &[i]);
        }
    }
    for &i in &idx {
        for &j in &idx {
            let wij = a.weight(i) + a.weight(j);
            if wij > bound {
                continue;
            }
            let prod = a.mul(i, j);
            if prod.iter().any(|(k, _)| a.weight(*k) != wij) {
                flag(Axiom::Weight, &[i, j]);
            }
            if i < j && prod.as_ref() != a.mul(j, i).as_ref() {
                flag(Axiom::Commutativity, &[i, j]);
            }
            let eps = f.mul(&a.augmentation(i), &a.augmentation(j));
            if a.augment_lincomb(&prod) != eps {
                flag(Axiom::Augmentation, &[i, j]);
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                if a.weight(i) + a.weight(j) + a.weight(k) > bound {
                    continue;
                }
                let left = a.mul_lincomb(&a.mul(i, j), &vec![(k, f.one())]);
                let right = a.mul_lincomb(&vec![(i, f.one())], &a.mul(j, k));
                if left != right {
                    flag(Axiom::Associativity, &[i, j, k]);
                }
            }
        }
    }
    AlgebraReport { violations }
}
