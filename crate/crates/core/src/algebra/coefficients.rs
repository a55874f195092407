use std::fmt;

use crate::algebra::{normalize, GradedAlgebra, LinComb};
use crate::error::{Error, Result};
use crate::exactlinalg::{FieldElement, FieldSpec};

/// The coefficient algebra `C` sitting at the basepoint, with its `A`-action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficients {
    /// `C = k`, with `A` acting through the augmentation.
    Unit,
    /// `C = A` acting on itself.
    SelfAlgebra,
    /// A finite algebra `C` with an algebra map `A -> C`.
    Custom {
        algebra: GradedAlgebra,
        /// Image of each basis element of `A`.
        action: Vec<LinComb>,
    },
}

impl Coefficients {
    /// Validates `action` as a weight-preserving unital algebra map `A -> C`
    /// on basis elements.
    pub fn custom(a: &GradedAlgebra, c: GradedAlgebra, action: Vec<LinComb>) -> Result<Self> {
        let n = a
            .dim()
            .ok_or_else(|| Error::InvalidAction("custom coefficients need a finite algebra A".into()))?;
        let m = c
            .dim()
            .ok_or_else(|| Error::InvalidAction("custom coefficient algebras must be finite".into()))?;
        if a.field() != c.field() {
            return Err(Error::FieldMismatch {
                expected: a.field().to_string(),
                found: c.field().to_string(),
            });
        }
        if action.len() != n {
            return Err(Error::InvalidAction(format!(
                "action lists {} images for a basis of size {n}",
                action.len()
            )));
        }
        let f = c.field();
        let action: Vec<LinComb> = action.into_iter().map(|lc| normalize(&f, lc)).collect();
        for (i, img) in action.iter().enumerate() {
            for (j, coeff) in img {
                if *j >= m {
                    return Err(Error::InvalidAction(format!("image refers to basis index {j}")));
                }
                f.check(coeff)?;
                if c.weight(*j) != a.weight(i) {
                    return Err(Error::InvalidAction(format!(
                        "image of {} leaves weight {}",
                        a.name(i),
                        a.weight(i)
                    )));
                }
            }
        }
        if action[a.unit()] != vec![(c.unit(), f.one())] {
            return Err(Error::InvalidAction("unit must map to unit".into()));
        }
        let apply = |lc: &LinComb| -> LinComb {
            let mut terms = Vec::new();
            for (i, x) in lc {
                for (j, y) in &action[*i] {
                    terms.push((*j, f.mul(x, y)));
                }
            }
            normalize(&f, terms)
        };
        for i in 0..n {
            for j in 0..n {
                let lhs = apply(&a.mul(i, j));
                let rhs = c.mul_lincomb(&action[i], &action[j]);
                if lhs != rhs {
                    return Err(Error::InvalidAction(format!(
                        "not multiplicative at ({}, {})",
                        a.name(i),
                        a.name(j)
                    )));
                }
            }
        }
        Ok(Coefficients::Custom { algebra: c, action })
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Coefficients::Unit)
    }

    /// Coefficient basis indices of weight at most `w`, with their weights.
    pub(crate) fn basis_up_to_weight(&self, a: &GradedAlgebra, w: u32) -> Vec<(usize, u32)> {
        match self {
            Coefficients::Unit => vec![(0, 0)],
            Coefficients::SelfAlgebra => a.basis_up_to_weight(w).into_iter().map(|i| (i, a.weight(i))).collect(),
            Coefficients::Custom { algebra, .. } => algebra
                .basis_up_to_weight(w)
                .into_iter()
                .map(|i| (i, algebra.weight(i)))
                .collect(),
        }
    }

    /// Largest coefficient weight, `None` when unbounded.
    pub(crate) fn max_weight(&self, a: &GradedAlgebra) -> Option<u32> {
        match self {
            Coefficients::Unit => Some(0),
            Coefficients::SelfAlgebra => a.max_weight(),
            Coefficients::Custom { algebra, .. } => algebra.max_weight(),
        }
    }

    /// `c * x`, for a coefficient basis element `c` and an element `x` of `A`.
    pub(crate) fn act(&self, a: &GradedAlgebra, c: usize, x: &LinComb) -> LinComb {
        let f: FieldSpec = a.field();
        match self {
            Coefficients::Unit => {
                let e: FieldElement = a.augment_lincomb(x);
                if e.is_zero() {
                    Vec::new()
                } else {
                    vec![(c, e)]
                }
            }
            Coefficients::SelfAlgebra => a.mul_lincomb(&vec![(c, f.one())], x),
            Coefficients::Custom { algebra, action } => {
                let mut image = Vec::new();
                for (i, coeff) in x {
                    for (j, y) in &action[*i] {
                        image.push((*j, f.mul(coeff, y)));
                    }
                }
                let image = normalize(&f, image);
                algebra.mul_lincomb(&vec![(c, f.one())], &image)
            }
        }
    }

    pub(crate) fn name(&self, a: &GradedAlgebra, c: usize) -> String {
        match self {
            Coefficients::Unit => "1".to_string(),
            Coefficients::SelfAlgebra => a.name(c).into_owned(),
            Coefficients::Custom { algebra, .. } => algebra.name(c).into_owned(),
        }
    }

    /// Mode string used in reports: `unit`, `self` or `custom`.
    pub fn mode(&self) -> &'static str {
        match self {
            Coefficients::Unit => "unit",
            Coefficients::SelfAlgebra => "self",
            Coefficients::Custom { .. } => "custom",
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mode())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{exterior, truncated_poly};

    #[test]
    fn custom_action_is_validated() {
        let f = FieldSpec::prime(3).unwrap();
        let a = truncated_poly(f, 3).unwrap();
        let c = truncated_poly(f, 2).unwrap();
        // t -> t, t^2 -> 0 is the quotient map k[t]/t^3 -> k[t]/t^2
        let quotient = vec![vec![(0, f.one())], vec![(1, f.one())], vec![]];
        assert!(Coefficients::custom(&a, c.clone(), quotient).is_ok());

        // k[t]/t^2 -> k[t]/t^3 sending t to t is not multiplicative
        let b = truncated_poly(f, 2).unwrap();
        let big = truncated_poly(f, 3).unwrap();
        let incl = vec![vec![(0, f.one())], vec![(1, f.one())]];
        assert!(matches!(
            Coefficients::custom(&b, big, incl),
            Err(Error::InvalidAction(_))
        ));

        let not_unital = vec![vec![], vec![(1, f.one())], vec![]];
        assert!(Coefficients::custom(&a, c.clone(), not_unital).is_err());

        let wrong_weight = vec![vec![(0, f.one())], vec![(0, f.one())], vec![]];
        assert!(Coefficients::custom(&a, c, wrong_weight).is_err());
    }

    #[test]
    fn actions() {
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior(f);
        let x: LinComb = vec![(1, f.from_i64(2))];
        let one: LinComb = vec![(0, f.from_i64(3))];
        assert!(Coefficients::Unit.act(&a, 0, &x).is_empty());
        assert_eq!(Coefficients::Unit.act(&a, 0, &one), vec![(0, f.from_i64(3))]);
        assert_eq!(Coefficients::SelfAlgebra.act(&a, 0, &x), x);
        assert!(Coefficients::SelfAlgebra.act(&a, 1, &x).is_empty());
        let id = Coefficients::custom(&a, a.clone(), vec![vec![(0, f.one())], vec![(1, f.one())]]).unwrap();
        assert_eq!(id.act(&a, 0, &x), x);
    }
}
