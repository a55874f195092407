//! The Loday chain complex `L_X(A; C)`.
//!
//! Level `p` has basis the labelings of the non-basepoint simplices of `X_p`
//! by basis elements of `A`, together with a basis element of `C` sitting at
//! the basepoint. A face map pushes labels forward, multiplying labels whose
//! simplices land on the same face; labels landing on the basepoint act on
//! `C`. The differential is the alternating sum of faces. Everything is graded
//! by total weight, so the complex splits into independent finite blocks.
//!
//! In normalized mode the basis is cut down to labelings whose non-unit
//! support is not contained in the image of a single degeneracy; the
//! complementary labelings span the degenerate subcomplex, and boundary terms
//! landing there are dropped.

mod basis;
mod homology;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algebra::{Coefficients, GradedAlgebra, LinComb};
use crate::error::{Error, Result};
use crate::exactlinalg::{FieldElement, FieldSpec, SparseMatrix};
use crate::simplicial::PointedSimplicialSet;

use basis::{Enumerator, LevelBasis};
pub use homology::{chain_dims, homology_dims, HomologyTable};

/// Default ceiling on the size of a single `(degree, weight)` basis block.
pub const DEFAULT_MAX_BASIS: usize = 5_000_000;

/// One basis element of a level of the complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    pub level: usize,
    /// Basis index of `A` on each non-basepoint simplex, in identifier order.
    pub assignment: Box<[u32]>,
    /// Basis index of the coefficient algebra (always 0 for unit
    /// coefficients).
    pub coeff: u32,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LodayOptions {
    pub max_degree: usize,
    /// Required whenever `A` or `C` has unbounded weights.
    pub weight_bound: Option<u32>,
    pub normalized: bool,
    pub max_basis: usize,
    /// Multiply out consecutive boundaries after assembly and fail if any
    /// composite is nonzero.
    pub verify_boundaries: bool,
}

impl Default for LodayOptions {
    fn default() -> Self {
        LodayOptions {
            max_degree: 2,
            weight_bound: None,
            normalized: true,
            max_basis: DEFAULT_MAX_BASIS,
            verify_boundaries: false,
        }
    }
}

impl LodayOptions {
    pub fn new(max_degree: usize) -> Self {
        LodayOptions {
            max_degree,
            ..LodayOptions::default()
        }
    }

    pub fn weight_bound(mut self, w: u32) -> Self {
        self.weight_bound = Some(w);
        self
    }

    pub fn unnormalized(mut self) -> Self {
        self.normalized = false;
        self
    }

    pub fn max_basis(mut self, n: usize) -> Self {
        self.max_basis = n;
        self
    }

    pub fn verified(mut self) -> Self {
        self.verify_boundaries = true;
        self
    }
}

/// The assembled complex in degrees `0..=max_degree + 1`, restricted to
/// weights at most [`LodayComplex::max_weight`].
#[derive(Debug)]
pub struct LodayComplex {
    space: PointedSimplicialSet,
    algebra: GradedAlgebra,
    coefficients: Coefficients,
    options: LodayOptions,
    max_weight: u32,
    levels: Vec<Vec<Vec<Labeling>>>,
    /// `boundaries[&(p, w)]` maps the `(p, w)` block to the `(p - 1, w)` block.
    boundaries: BTreeMap<(usize, u32), SparseMatrix>,
}

/// Assembles `L_X(A; C)` through degree `options.max_degree + 1`.
pub fn build_complex(
    space: &PointedSimplicialSet,
    algebra: &GradedAlgebra,
    coefficients: &Coefficients,
    options: &LodayOptions,
) -> Result<LodayComplex> {
    let d = options.max_degree;
    if space.top_level() < d + 1 {
        return Err(Error::TruncationTooShallow {
            degree: d,
            needed: d + 1,
            top_level: space.top_level(),
        });
    }
    if let Coefficients::Custom { algebra: c, .. } = coefficients {
        if c.field() != algebra.field() {
            return Err(Error::FieldMismatch {
                expected: algebra.field().to_string(),
                found: c.field().to_string(),
            });
        }
    }
    let natural = match (algebra.max_weight(), coefficients.max_weight(algebra)) {
        (Some(a), Some(c)) => Some(space.non_base(d).len() as u32 * a + c),
        _ => None,
    };
    let max_weight = match (natural, options.weight_bound) {
        (Some(n), Some(w)) => n.min(w),
        (Some(n), None) => n,
        (None, Some(w)) => w,
        (None, None) => return Err(Error::WeightBoundRequired),
    };

    let enumerator = Enumerator {
        algebra,
        coefficients,
        max_weight,
        normalized: options.normalized,
        max_basis: options.max_basis,
    };
    let level_bases = (0..=d + 1)
        .map(|p| enumerator.level(space, p, p <= d))
        .collect::<Result<Vec<_>>>()?;

    let assembler = Assembler {
        space,
        algebra,
        coefficients,
        field: algebra.field(),
        normalized: options.normalized,
    };
    let keys: Vec<(usize, u32)> = (1..=d + 1)
        .flat_map(|p| (0..=max_weight).map(move |w| (p, w)))
        .collect();
    let faces: Vec<Vec<Vec<Option<u32>>>> = (0..=d + 1)
        .map(|p| if p == 0 { Vec::new() } else { assembler.face_targets(p) })
        .collect();
    let matrices = keys
        .par_iter()
        .map(|&(p, w)| {
            assembler
                .block(&faces[p], &level_bases[p], &level_bases[p - 1], p, w)
                .map(|m| ((p, w), m))
        })
        .collect::<Result<Vec<_>>>()?;

    let complex = LodayComplex {
        space: space.clone(),
        algebra: algebra.clone(),
        coefficients: coefficients.clone(),
        options: options.clone(),
        max_weight,
        levels: level_bases.into_iter().map(|l| l.by_weight).collect(),
        boundaries: matrices.into_iter().collect(),
    };
    if options.verify_boundaries && !complex.boundary_squares_vanish()? {
        return Err(Error::Internal(
            "a composite of consecutive boundaries is nonzero".into(),
        ));
    }
    Ok(complex)
}

struct Assembler<'a> {
    space: &'a PointedSimplicialSet,
    algebra: &'a GradedAlgebra,
    coefficients: &'a Coefficients,
    field: FieldSpec,
    normalized: bool,
}

/// A labeling of the level below, with its multiplicity.
type Term = (Vec<u32>, u32, FieldElement);

impl Assembler<'_> {
    /// For each face `d_i` of level `p`, the target slot of each source slot,
    /// `None` when the face lands on the basepoint.
    fn face_targets(&self, p: usize) -> Vec<Vec<Option<u32>>> {
        let x = self.space;
        let mut slot_of = vec![None; x.size(p - 1)];
        for (k, v) in x.non_base(p - 1).into_iter().enumerate() {
            slot_of[v as usize] = Some(k as u32);
        }
        let sources = x.non_base(p);
        (0..=p)
            .map(|i| {
                let face = x.face(p, i);
                sources.iter().map(|&v| slot_of[face[v as usize] as usize]).collect()
            })
            .collect()
    }

    /// `d_i` applied to one labeling.
    fn push_forward(&self, lab: &Labeling, targets: &[Option<u32>], n_target: usize) -> Vec<Term> {
        let a = self.algebra;
        let f = self.field;
        let unit = a.unit() as u32;

        let mut base: LinComb = vec![(a.unit(), f.one())];
        for (k, &label) in lab.assignment.iter().enumerate() {
            if label != unit && targets[k].is_none() {
                if self.coefficients.is_unit() {
                    // positive weight at the basepoint is killed by the augmentation
                    return Vec::new();
                }
                base = a.mul_lincomb(&base, &vec![(label as usize, f.one())]);
                if base.is_empty() {
                    return Vec::new();
                }
            }
        }
        let coeff_image = self.coefficients.act(a, lab.coeff as usize, &base);
        if coeff_image.is_empty() {
            return Vec::new();
        }

        let mut terms: Vec<(Vec<u32>, FieldElement)> = vec![(vec![unit; n_target], f.one())];
        for (k, &label) in lab.assignment.iter().enumerate() {
            let Some(t) = targets[k] else { continue };
            if label == unit {
                continue;
            }
            let t = t as usize;
            let mut next = Vec::with_capacity(terms.len());
            for (assign, c) in terms {
                let product = a.mul(assign[t] as usize, label as usize);
                match product.as_slice() {
                    [] => {}
                    [(b, e)] => {
                        let mut assign = assign;
                        assign[t] = *b as u32;
                        next.push((assign, f.mul(&c, e)));
                    }
                    many => {
                        for (b, e) in many {
                            let mut fresh = assign.clone();
                            fresh[t] = *b as u32;
                            next.push((fresh, f.mul(&c, e)));
                        }
                    }
                }
            }
            terms = next;
            if terms.is_empty() {
                return Vec::new();
            }
        }

        let mut out = Vec::with_capacity(terms.len() * coeff_image.len());
        for (c, e) in &coeff_image {
            for (assign, m) in &terms {
                out.push((assign.clone(), *c as u32, f.mul(m, e)));
            }
        }
        out
    }

    /// Whether a labeling of level `p` lies in the degenerate subcomplex.
    fn is_degenerate(&self, p: usize, masks: &[u64], assign: &[u32]) -> bool {
        if p == 0 {
            return false;
        }
        let unit = self.algebra.unit() as u32;
        let covered = assign
            .iter()
            .zip(masks)
            .filter(|(&a, _)| a != unit)
            .fold(0u64, |acc, (_, &m)| acc | m);
        covered != (1u64 << p) - 1
    }

    fn block(
        &self,
        faces: &[Vec<Option<u32>>],
        source: &LevelBasis,
        target: &LevelBasis,
        p: usize,
        w: u32,
    ) -> Result<SparseMatrix> {
        let cols = &source.by_weight[w as usize];
        let rows = target.by_weight[w as usize].len();
        let n_target = self.space.non_base(p - 1).len();
        let f = self.field;
        let mut triplets = Vec::new();
        let mut key = Vec::with_capacity(n_target + 1);
        let mut missing: HashMap<Vec<u32>, bool> = HashMap::new();
        let masks = basis::outside_masks(self.space, p - 1);
        for (j, lab) in cols.iter().enumerate() {
            for (i, targets) in faces.iter().enumerate() {
                for (assign, c, e) in self.push_forward(lab, targets, n_target) {
                    key.clear();
                    key.extend_from_slice(&assign);
                    key.push(c);
                    let e = if i % 2 == 1 { f.neg(&e) } else { e };
                    match target.index.get(key.as_slice()) {
                        Some(&r) => triplets.push((r as usize, j, e)),
                        None => {
                            let degenerate = *missing
                                .entry(assign.clone())
                                .or_insert_with(|| self.normalized && self.is_degenerate(p - 1, &masks, &assign));
                            if !degenerate {
                                return Err(Error::Internal(format!(
                                    "face {i} of a degree {p} labeling of weight {w} left the basis"
                                )));
                            }
                        }
                    }
                }
            }
        }
        SparseMatrix::from_triplets(rows, cols.len(), f, triplets)
    }
}

impl LodayComplex {
    pub fn space(&self) -> &PointedSimplicialSet {
        &self.space
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn max_degree(&self) -> usize {
        self.options.max_degree
    }

    pub fn weight_bound(&self) -> Option<u32> {
        self.options.weight_bound
    }

    pub fn normalized(&self) -> bool {
        self.options.normalized
    }

    /// Largest weight for which blocks were assembled.
    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Basis of the `(p, w)` block, empty outside the assembled range.
    pub fn basis(&self, p: usize, w: u32) -> &[Labeling] {
        self.levels
            .get(p)
            .and_then(|l| l.get(w as usize))
            .map_or(&[], Vec::as_slice)
    }

    /// Boundary from the `(p, w)` block to the `(p - 1, w)` block.
    pub fn boundary(&self, p: usize, w: u32) -> Option<&SparseMatrix> {
        self.boundaries.get(&(p, w))
    }

    /// Checks that every composite of consecutive boundaries vanishes.
    pub fn boundary_squares_vanish(&self) -> Result<bool> {
        for (&(p, w), m) in &self.boundaries {
            if let Some(below) = self.boundaries.get(&(p - 1, w)) {
                if !below.mul(m)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Readable form of a labeling: the non-unit labels by slot, then the
    /// coefficient, e.g. `[t@2,t@5|1]`.
    pub fn describe(&self, lab: &Labeling) -> String {
        let unit = self.algebra.unit() as u32;
        let mut out = String::from("[");
        let mut first = true;
        for (k, &a) in lab.assignment.iter().enumerate() {
            if a != unit {
                if !first {
                    out.push(',');
                }
                first = false;
                let _ = write!(out, "{}@{}", self.algebra.name(a as usize), k);
            }
        }
        let _ = write!(out, "|{}]", self.coefficients.name(&self.algebra, lab.coeff as usize));
        out
    }
}

#[cfg(test)]
mod tests;
