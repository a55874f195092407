use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::exactlinalg::FieldSpec;
use crate::loday::LodayComplex;

/// Homology dimensions by `(degree, weight)`, zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub field: FieldSpec,
    /// `unit`, `self` or `custom`.
    pub coefficients: String,
    pub max_degree: usize,
    pub weight_bound: Option<u32>,
    /// Largest weight covered by the table.
    pub max_weight: u32,
    pub dims: BTreeMap<(usize, u32), usize>,
}

impl HomologyTable {
    pub fn dim(&self, degree: usize, weight: u32) -> usize {
        self.dims.get(&(degree, weight)).copied().unwrap_or(0)
    }

    /// Sum over the covered weights in one degree.
    pub fn total(&self, degree: usize) -> usize {
        self.dims.range((degree, 0)..=(degree, u32::MAX)).map(|(_, &d)| d).sum()
    }

    /// Whether the table is exact in every weight rather than only up to
    /// `max_weight`.
    pub fn covers_all_weights(&self) -> bool {
        self.weight_bound.is_none_or(|w| w > self.max_weight)
    }

    /// Totals for degrees `0..=max_degree`.
    pub fn totals(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|n| self.total(n)).collect()
    }
}

/// Dimensions of the chain blocks in degrees `0..=max_degree`, empty blocks
/// omitted.
pub fn chain_dims(complex: &LodayComplex) -> BTreeMap<(usize, u32), usize> {
    let mut out = BTreeMap::new();
    for p in 0..=complex.max_degree() {
        for w in 0..=complex.max_weight() {
            let n = complex.basis(p, w).len();
            if n > 0 {
                out.insert((p, w), n);
            }
        }
    }
    out
}

/// `H_n = dim ker d_n - rank d_{n+1}` on every block with `n <= max_degree`.
pub fn homology_dims(complex: &LodayComplex) -> HomologyTable {
    let d = complex.max_degree();
    let keys: Vec<(usize, u32)> = (1..=d + 1)
        .flat_map(|p| (0..=complex.max_weight()).map(move |w| (p, w)))
        .collect();
    let ranks: BTreeMap<(usize, u32), usize> = keys
        .par_iter()
        .map(|&k| (k, complex.boundary(k.0, k.1).map_or(0, |m| m.rank())))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let rank = |p: usize, w: u32| ranks.get(&(p, w)).copied().unwrap_or(0);

    let mut dims = BTreeMap::new();
    for n in 0..=d {
        for w in 0..=complex.max_weight() {
            let size = complex.basis(n, w).len();
            let h = size - rank(n, w) - rank(n + 1, w);
            if h > 0 {
                dims.insert((n, w), h);
            }
        }
    }
    HomologyTable {
        field: complex.field(),
        coefficients: complex.coefficients().mode().to_string(),
        max_degree: d,
        weight_bound: complex.weight_bound(),
        max_weight: complex.max_weight(),
        dims,
    }
}
