//! Stability questions phrased as comparisons of homology tables.
//!
//! Agreement of dimensions is only a necessary condition for an equivalence
//! of Loday constructions; a discrepancy refutes one.

use std::fmt;

use crate::algebra::{Coefficients, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactlinalg::FieldSpec;
use crate::loday::{build_complex, homology_dims, HomologyTable, LodayOptions};
use crate::simplicial::SpaceExpr;

/// Pairs of expressions denoting homotopy-equivalent spaces, by construction.
pub const SUSPENSION_PRESETS: &[(&str, &str)] = &[
    ("susp(S1)", "sphere(2)"),
    ("susp(S1)", "simplexsphere(2)"),
    ("sphere(2)", "simplexsphere(2)"),
    ("smash(S1,sphere(2))", "sphere(3)"),
    ("susp(sphere(2))", "sphere(3)"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Agree {
        through: usize,
    },
    FirstDiscrepancy {
        degree: usize,
        weight: u32,
        left: usize,
        right: usize,
        left_total: usize,
        right_total: usize,
    },
}

impl Verdict {
    pub fn agrees(&self) -> bool {
        matches!(self, Verdict::Agree { .. })
    }

    fn swapped(&self) -> Verdict {
        match *self {
            Verdict::Agree { through } => Verdict::Agree { through },
            Verdict::FirstDiscrepancy {
                degree,
                weight,
                left,
                right,
                left_total,
                right_total,
            } => Verdict::FirstDiscrepancy {
                degree,
                weight,
                left: right,
                right: left,
                left_total: right_total,
                right_total: left_total,
            },
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Agree { through } => write!(f, "agree through degree {through}"),
            Verdict::FirstDiscrepancy {
                degree,
                weight,
                left,
                right,
                left_total,
                right_total,
            } => write!(
                f,
                "first discrepancy in degree {degree}, weight {weight}: {left} vs {right} \
                 (degree totals {left_total} vs {right_total})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub left_expr: String,
    pub right_expr: String,
    pub algebra: String,
    pub field: FieldSpec,
    pub coefficients: String,
    pub max_degree: usize,
    pub weight_bound: Option<u32>,
    /// Weights above this are not compared; `None` when both tables are
    /// exact in every weight.
    pub compared_weight: Option<u32>,
    pub left: HomologyTable,
    pub right: HomologyTable,
    pub verdict: Verdict,
}

/// A row of the comparison: `(degree, weight, left, right)`.
pub type DimensionPair = (usize, u32, usize, usize);

impl ComparisonReport {
    /// Every compared block where either side is nonzero, by degree then
    /// weight.
    pub fn pairs(&self) -> Vec<DimensionPair> {
        let mut keys: Vec<(usize, u32)> = self
            .left
            .dims
            .keys()
            .chain(self.right.dims.keys())
            .copied()
            .filter(|&(_, w)| self.compared_weight.is_none_or(|c| w <= c))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|(n, w)| (n, w, self.left.dim(n, w), self.right.dim(n, w)))
            .collect()
    }

    /// Per-degree totals over the compared weights.
    pub fn totals(&self) -> Vec<(usize, usize, usize)> {
        (0..=self.max_degree)
            .map(|n| {
                let (l, r) = self
                    .pairs()
                    .into_iter()
                    .filter(|p| p.0 == n)
                    .fold((0, 0), |(l, r), p| (l + p.2, r + p.3));
                (n, l, r)
            })
            .collect()
    }

    /// The same comparison with the sides exchanged.
    pub fn swapped(&self) -> ComparisonReport {
        ComparisonReport {
            left_expr: self.right_expr.clone(),
            right_expr: self.left_expr.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
            verdict: self.verdict.swapped(),
            ..self.clone()
        }
    }
}

/// Compares two tables computed with the same settings.
pub fn compare_tables(
    left_expr: &str,
    right_expr: &str,
    algebra: &str,
    left: HomologyTable,
    right: HomologyTable,
) -> Result<ComparisonReport> {
    if left.field != right.field {
        return Err(Error::FieldMismatch {
            expected: left.field.to_string(),
            found: right.field.to_string(),
        });
    }
    if left.coefficients != right.coefficients {
        return Err(Error::CoefficientMismatch);
    }
    let max_degree = left.max_degree.min(right.max_degree);
    let compared_weight = match (left.covers_all_weights(), right.covers_all_weights()) {
        (true, true) => None,
        (true, false) => Some(right.max_weight),
        (false, true) => Some(left.max_weight),
        (false, false) => Some(left.max_weight.min(right.max_weight)),
    };
    let mut report = ComparisonReport {
        left_expr: left_expr.to_string(),
        right_expr: right_expr.to_string(),
        algebra: algebra.to_string(),
        field: left.field,
        coefficients: left.coefficients.clone(),
        max_degree,
        weight_bound: left.weight_bound.or(right.weight_bound),
        compared_weight,
        left,
        right,
        verdict: Verdict::Agree { through: max_degree },
    };
    let totals = report.totals();
    if let Some(&(degree, weight, l, r)) = report.pairs().iter().find(|&&(n, _, l, r)| n <= max_degree && l != r) {
        report.verdict = Verdict::FirstDiscrepancy {
            degree,
            weight,
            left: l,
            right: r,
            left_total: totals[degree].1,
            right_total: totals[degree].2,
        };
    }
    Ok(report)
}

/// Homology of the space denoted by `expr`, built deep enough for
/// `options.max_degree`.
pub fn space_homology(
    expr: &SpaceExpr,
    algebra: &GradedAlgebra,
    coefficients: &Coefficients,
    options: &LodayOptions,
) -> Result<HomologyTable> {
    let x = expr.build(options.max_degree + 1)?;
    Ok(homology_dims(&build_complex(&x, algebra, coefficients, options)?))
}

/// Builds both sides with identical settings and compares their tables.
pub fn compare_spaces(
    left: &SpaceExpr,
    right: &SpaceExpr,
    algebra: &GradedAlgebra,
    coefficients: &Coefficients,
    options: &LodayOptions,
) -> Result<ComparisonReport> {
    let (l, r) = rayon::join(
        || space_homology(left, algebra, coefficients, options),
        || space_homology(right, algebra, coefficients, options),
    );
    compare_tables(&left.to_string(), &right.to_string(), algebra.label(), l?, r?)
}

/// Compares `X x Y` with `X v Y v (X ^ Y)`.
pub fn product_decomposition_check(
    x: &SpaceExpr,
    y: &SpaceExpr,
    algebra: &GradedAlgebra,
    coefficients: &Coefficients,
    options: &LodayOptions,
) -> Result<ComparisonReport> {
    for e in [x, y] {
        if !e.build(1)?.is_connected() {
            return Err(Error::NotConnected);
        }
    }
    let left = SpaceExpr::prod(x.clone(), y.clone());
    let right = SpaceExpr::wedge(
        SpaceExpr::wedge(x.clone(), y.clone()),
        SpaceExpr::smash(x.clone(), y.clone()),
    );
    compare_spaces(&left, &right, algebra, coefficients, options)
}

/// Compares two models of the same homotopy type; agreement is expected.
/// See [`SUSPENSION_PRESETS`] for shipped pairs.
pub fn suspension_invariance_check(
    left_model: &SpaceExpr,
    right_model: &SpaceExpr,
    algebra: &GradedAlgebra,
    coefficients: &Coefficients,
    options: &LodayOptions,
) -> Result<ComparisonReport> {
    compare_spaces(left_model, right_model, algebra, coefficients, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{exterior, polynomial, truncated_poly};
    use crate::oracle::wedge_kunneth_dims;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn e(s: &str) -> SpaceExpr {
        s.parse().unwrap()
    }

    const TORUS: &str = "prod(S1,S1)";
    const WEDGE: &str = "wedge(wedge(S1,S1),sphere(2))";

    #[test]
    fn torus_and_wedge_differ_in_odd_characteristic() {
        let a = truncated_poly(f(3), 2).unwrap();
        let r = compare_spaces(&e(TORUS), &e(WEDGE), &a, &Coefficients::Unit, &LodayOptions::new(2)).unwrap();
        assert_eq!(r.totals(), vec![(0, 1, 1), (1, 2, 2), (2, 3, 4)]);
        let Verdict::FirstDiscrepancy {
            degree,
            left_total,
            right_total,
            ..
        } = r.verdict
        else {
            panic!("expected a discrepancy");
        };
        assert_eq!((degree, left_total, right_total), (2, 3, 4));
        assert_eq!(r.swapped().verdict, r.verdict.swapped());
    }

    #[test]
    fn torus_and_wedge_agree_in_characteristic_two() {
        let a = truncated_poly(f(2), 2).unwrap();
        let r = compare_spaces(&e(TORUS), &e(WEDGE), &a, &Coefficients::Unit, &LodayOptions::new(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Agree { through: 2 });
        assert_eq!(r.totals()[2], (2, 4, 4));
    }

    #[test]
    fn comparison_is_reflexive() {
        let a = exterior(f(5));
        for s in ["S1", "torus(2)", "wedge(S1,sphere(2))"] {
            let r = compare_spaces(&e(s), &e(s), &a, &Coefficients::SelfAlgebra, &LodayOptions::new(2)).unwrap();
            assert!(r.verdict.agrees());
        }
    }

    #[test]
    fn presets_agree() {
        let a = truncated_poly(f(3), 2).unwrap();
        for (l, r) in SUSPENSION_PRESETS {
            let report =
                suspension_invariance_check(&e(l), &e(r), &a, &Coefficients::Unit, &LodayOptions::new(2)).unwrap();
            assert!(report.verdict.agrees(), "{l} vs {r}: {}", report.verdict);
        }
    }

    #[test]
    fn product_decomposition() {
        let s1 = e("S1");
        let a = truncated_poly(f(3), 2).unwrap();
        let r = product_decomposition_check(&s1, &s1, &a, &Coefficients::Unit, &LodayOptions::new(2)).unwrap();
        assert!(matches!(
            r.verdict,
            Verdict::FirstDiscrepancy {
                degree: 2,
                left_total: 3,
                right_total: 4,
                ..
            }
        ));

        let p = polynomial(f(3));
        let r = product_decomposition_check(&s1, &s1, &p, &Coefficients::Unit, &LodayOptions::new(2).weight_bound(3))
            .unwrap();
        assert_eq!(r.verdict, Verdict::Agree { through: 2 });
        assert_eq!(r.compared_weight, Some(3));

        let r = product_decomposition_check(&s1, &e("pt"), &a, &Coefficients::Unit, &LodayOptions::new(2)).unwrap();
        assert!(r.verdict.agrees());
    }

    #[test]
    fn decomposition_right_side_is_a_convolution() {
        let a = truncated_poly(f(3), 2).unwrap();
        let opts = LodayOptions::new(2);
        let s1 = e("S1");
        let r = product_decomposition_check(&s1, &s1, &a, &Coefficients::Unit, &opts).unwrap();
        let h = |s: &str| space_homology(&e(s), &a, &Coefficients::Unit, &opts).unwrap();
        let predicted = wedge_kunneth_dims(
            &wedge_kunneth_dims(&h("S1"), &h("S1"), 2).unwrap(),
            &h("smash(S1,S1)"),
            2,
        )
        .unwrap();
        assert_eq!(r.right.dims, predicted.dims);
    }

    #[test]
    fn agreement_is_preserved_by_wedges() {
        let a = truncated_poly(f(3), 2).unwrap();
        let opts = LodayOptions::new(2);
        let r = compare_spaces(
            &e("wedge(susp(S1),S1)"),
            &e("wedge(sphere(2),S1)"),
            &a,
            &Coefficients::Unit,
            &opts,
        )
        .unwrap();
        assert!(r.verdict.agrees());
    }
}
