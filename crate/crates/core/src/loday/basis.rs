//! Enumeration of labeling bases, one level at a time.

use std::collections::HashMap;

use crate::algebra::{Coefficients, GradedAlgebra};
use crate::error::{Error, Result};
use crate::loday::Labeling;
use crate::simplicial::PointedSimplicialSet;

/// Bases of one level, bucketed by weight, plus a reverse index keyed by the
/// assignment followed by the coefficient index.
pub(crate) struct LevelBasis {
    pub(crate) by_weight: Vec<Vec<Labeling>>,
    pub(crate) index: HashMap<Box<[u32]>, u32>,
}

/// For each slot (non-basepoint simplex in identifier order), the set of
/// degeneracies `s_j` whose image misses it, as a bitmask over `j`.
pub(crate) fn outside_masks(x: &PointedSimplicialSet, p: usize) -> Vec<u64> {
    let slots = x.non_base(p);
    let mut masks = vec![0u64; slots.len()];
    if p == 0 {
        return masks;
    }
    for j in 0..p {
        let image = x.degenerate_image(p, j);
        for (k, &v) in slots.iter().enumerate() {
            if !image[v as usize] {
                masks[k] |= 1 << j;
            }
        }
    }
    masks
}

pub(crate) struct Enumerator<'a> {
    pub(crate) algebra: &'a GradedAlgebra,
    pub(crate) coefficients: &'a Coefficients,
    pub(crate) max_weight: u32,
    pub(crate) normalized: bool,
    pub(crate) max_basis: usize,
}

impl Enumerator<'_> {
    /// Lists every labeling of level `p` with total weight at most
    /// `max_weight`, in lexicographic order of (assignment, coefficient).
    /// In normalized mode only labelings outside the degenerate subcomplex
    /// are kept. The reverse index is only filled when `indexed` is set.
    pub(crate) fn level(&self, x: &PointedSimplicialSet, p: usize, indexed: bool) -> Result<LevelBasis> {
        let n = x.non_base(p).len();
        if p > 63 {
            return Err(Error::Internal("levels above 63 are not supported".into()));
        }
        let masks = if self.normalized {
            outside_masks(x, p)
        } else {
            vec![0; n]
        };
        let required: u64 = if self.normalized && p > 0 { (1u64 << p) - 1 } else { 0 };
        // suffix_cover[k]: union of masks of slots k..n
        let mut suffix_cover = vec![0u64; n + 1];
        for k in (0..n).rev() {
            suffix_cover[k] = suffix_cover[k + 1] | masks[k];
        }
        let unit = self.algebra.unit() as u32;
        let candidates: Vec<(u32, u32)> = self
            .algebra
            .basis_up_to_weight(self.max_weight)
            .into_iter()
            .map(|i| (i as u32, self.algebra.weight(i)))
            .collect();
        let coeffs: Vec<(u32, u32)> = self
            .coefficients
            .basis_up_to_weight(self.algebra, self.max_weight)
            .into_iter()
            .map(|(i, w)| (i as u32, w))
            .collect();
        let mut out = LevelBasis {
            by_weight: vec![Vec::new(); self.max_weight as usize + 1],
            index: HashMap::new(),
        };
        let mut state = Walk {
            p,
            n,
            unit,
            masks: &masks,
            suffix_cover: &suffix_cover,
            required,
            candidates: &candidates,
            coeffs: &coeffs,
            max_weight: self.max_weight,
            max_basis: self.max_basis,
            current: vec![unit; n],
            indexed,
            out: &mut out,
        };
        state.go(0, 0, 0)?;
        Ok(out)
    }
}

struct Walk<'a> {
    p: usize,
    n: usize,
    unit: u32,
    masks: &'a [u64],
    suffix_cover: &'a [u64],
    required: u64,
    candidates: &'a [(u32, u32)],
    coeffs: &'a [(u32, u32)],
    max_weight: u32,
    max_basis: usize,
    current: Vec<u32>,
    indexed: bool,
    out: &'a mut LevelBasis,
}

impl Walk<'_> {
    fn go(&mut self, k: usize, weight: u32, covered: u64) -> Result<()> {
        if self.required & !(covered | self.suffix_cover[k]) != 0 {
            return Ok(());
        }
        if k == self.n {
            for &(c, cw) in self.coeffs {
                let w = weight + cw;
                if w > self.max_weight {
                    continue;
                }
                let bucket = &mut self.out.by_weight[w as usize];
                if bucket.len() >= self.max_basis {
                    return Err(Error::BasisTooLarge {
                        degree: self.p,
                        weight: w,
                        limit: self.max_basis,
                    });
                }
                if self.indexed {
                    let mut key = Vec::with_capacity(self.n + 1);
                    key.extend_from_slice(&self.current);
                    key.push(c);
                    self.out.index.insert(key.into_boxed_slice(), bucket.len() as u32);
                }
                bucket.push(Labeling {
                    level: self.p,
                    assignment: self.current.clone().into_boxed_slice(),
                    coeff: c,
                    weight: w,
                });
            }
            return Ok(());
        }
        for &(a, aw) in self.candidates {
            let w = weight + aw;
            if w > self.max_weight {
                continue;
            }
            self.current[k] = a;
            let cov = if a == self.unit {
                covered
            } else {
                covered | self.masks[k]
            };
            self.go(k + 1, w, cov)?;
        }
        self.current[k] = self.unit;
        Ok(())
    }
}
