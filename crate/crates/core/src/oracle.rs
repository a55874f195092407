//! Independent cross-checks for the Loday complex: the bisimplicial torus
//! bicomplex built on the grid `S^1_n x S^1_m`, Kuenneth convolution for
//! wedges, and unnormalized recomputation.
//!
//! The bicomplex uses its own closed-form circle (level `n` simplices are
//! indexed by their number of zeros) and its own push-forward, sharing only
//! the algebra and linear-algebra layers with [`crate::loday`].

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::{Coefficients, GradedAlgebra, LinComb};
use crate::error::{Error, Result};
use crate::exactlinalg::{FieldElement, FieldSpec, SparseMatrix};
use crate::loday::{build_complex, homology_dims, HomologyTable, LodayOptions};
use crate::simplicial::PointedSimplicialSet;

/// `d_i` on the circle `Delta^1 / boundary`, with simplices of level `n`
/// indexed by their number of zeros `1..=n` and `0` standing for the
/// basepoint.
fn circle_face(n: usize, i: usize, a: usize) -> usize {
    if a == 0 {
        return 0;
    }
    let b = if i < a { a - 1 } else { a };
    if b == 0 || b == n {
        0
    } else {
        b
    }
}

/// Grid positions of `(S^1_n x S^1_m)` other than the basepoint, row-major.
fn grid(n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity((n + 1) * (m + 1) - 1);
    for a in 0..=n {
        for b in 0..=m {
            if (a, b) != (0, 0) {
                out.push((a, b));
            }
        }
    }
    out
}

/// One term of the bicomplex: labelings of the grid, per weight.
#[derive(Debug, Clone)]
struct Term {
    slots: Vec<(usize, usize)>,
    /// `by_weight[w]` lists keys `labels ++ [coeff]`.
    by_weight: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, usize>,
}

#[derive(Debug, Clone)]
pub struct Bicomplex {
    field: FieldSpec,
    coefficients: String,
    max_degree: usize,
    weight_bound: Option<u32>,
    max_weight: u32,
    terms: BTreeMap<(usize, usize), Term>,
    /// `(n, m, w)`: `(n, m) -> (n - 1, m)`.
    horizontal: BTreeMap<(usize, usize, u32), SparseMatrix>,
    /// `(n, m, w)`: `(n, m) -> (n, m - 1)`.
    vertical: BTreeMap<(usize, usize, u32), SparseMatrix>,
}

/// Builds the torus bicomplex with terms in total degree at most `D + 1`.
///
/// The weight range matches [`build_complex`] on the product of two circles,
/// so the two tables can be compared block for block.
pub fn torus_bicomplex(
    algebra: &GradedAlgebra,
    coefficients: &Coefficients,
    max_degree: usize,
    weight_bound: Option<u32>,
) -> Result<Bicomplex> {
    if let Coefficients::Custom { algebra: c, .. } = coefficients {
        if c.field() != algebra.field() {
            return Err(Error::FieldMismatch {
                expected: algebra.field().to_string(),
                found: c.field().to_string(),
            });
        }
    }
    let d = max_degree;
    let diagonal_slots = ((d + 1) * (d + 1) - 1) as u32;
    let natural = match (algebra.max_weight(), coefficients.max_weight(algebra)) {
        (Some(a), Some(c)) => Some(diagonal_slots * a + c),
        _ => None,
    };
    let max_weight = match (natural, weight_bound) {
        (Some(n), Some(w)) => n.min(w),
        (Some(n), None) => n,
        (None, Some(w)) => w,
        (None, None) => return Err(Error::WeightBoundRequired),
    };

    let labels: Vec<(u32, u32)> = algebra
        .basis_up_to_weight(max_weight)
        .into_iter()
        .map(|i| (i as u32, algebra.weight(i)))
        .collect();
    let coeffs = coefficients.basis_up_to_weight(algebra, max_weight);

    let mut terms = BTreeMap::new();
    for n in 0..=d + 1 {
        for m in 0..=d + 1 - n {
            let slots = grid(n, m);
            let mut by_weight: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_weight as usize + 1];
            let mut odometer = vec![0usize; slots.len()];
            loop {
                let w: u32 = odometer.iter().map(|&k| labels[k].1).sum();
                if w <= max_weight {
                    for &(c, cw) in &coeffs {
                        if w + cw <= max_weight {
                            let mut key: Vec<u32> = odometer.iter().map(|&k| labels[k].0).collect();
                            key.push(c as u32);
                            by_weight[(w + cw) as usize].push(key);
                        }
                    }
                }
                // advance, least significant position last
                let mut pos = slots.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    odometer[pos] += 1;
                    if odometer[pos] < labels.len() {
                        break;
                    }
                    odometer[pos] = 0;
                }
                if odometer.iter().all(|&k| k == 0) {
                    break;
                }
            }
            let mut index = HashMap::new();
            for bucket in &by_weight {
                for (i, key) in bucket.iter().enumerate() {
                    index.insert(key.clone(), i);
                }
            }
            terms.insert(
                (n, m),
                Term {
                    slots,
                    by_weight,
                    index,
                },
            );
        }
    }

    let pusher = Pusher {
        algebra,
        coefficients,
        field: algebra.field(),
    };
    let mut jobs = Vec::new();
    for &(n, m) in terms.keys() {
        for w in 0..=max_weight {
            if n > 0 {
                jobs.push((true, n, m, w));
            }
            if m > 0 {
                jobs.push((false, n, m, w));
            }
        }
    }
    let built = jobs
        .par_iter()
        .map(|&(horizontal, n, m, w)| {
            let target = if horizontal { (n - 1, m) } else { (n, m - 1) };
            pusher
                .matrix(&terms[&(n, m)], &terms[&target], horizontal, n, m, w)
                .map(|mat| ((horizontal, n, m, w), mat))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut horizontal = BTreeMap::new();
    let mut vertical = BTreeMap::new();
    for ((h, n, m, w), mat) in built {
        if h {
            horizontal.insert((n, m, w), mat);
        } else {
            vertical.insert((n, m, w), mat);
        }
    }

    Ok(Bicomplex {
        field: algebra.field(),
        coefficients: coefficients.mode().to_string(),
        max_degree: d,
        weight_bound,
        max_weight,
        terms,
        horizontal,
        vertical,
    })
}

struct Pusher<'a> {
    algebra: &'a GradedAlgebra,
    coefficients: &'a Coefficients,
    field: FieldSpec,
}

impl Pusher<'_> {
    /// Image of one labeling under a face: the product of labels over each
    /// fiber, expanded into target labelings.
    fn push(
        &self,
        key: &[u32],
        source: &Term,
        target: &Term,
        face: impl Fn((usize, usize)) -> (usize, usize),
    ) -> Vec<(Vec<u32>, FieldElement)> {
        let a = self.algebra;
        let f = self.field;
        let one: LinComb = vec![(a.unit(), f.one())];
        let slot_of: HashMap<(usize, usize), usize> = target.slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut fibers: Vec<LinComb> = vec![one.clone(); target.slots.len()];
        let mut base = one;
        for (k, &s) in source.slots.iter().enumerate() {
            let label: LinComb = vec![(key[k] as usize, f.one())];
            match slot_of.get(&face(s)) {
                Some(&t) => fibers[t] = a.mul_lincomb(&fibers[t], &label),
                None => base = a.mul_lincomb(&base, &label),
            }
        }
        let coeff = *key.last().expect("coefficient slot");
        let mut out: Vec<(Vec<u32>, FieldElement)> = self
            .coefficients
            .act(a, coeff as usize, &base)
            .into_iter()
            .map(|(c, e)| (vec![c as u32], e))
            .collect();
        // prepend fibers from the last slot backwards so keys end with the coefficient
        for fiber in fibers.iter().rev() {
            let mut next = Vec::new();
            for (tail, e) in &out {
                for (b, x) in fiber {
                    let mut k = Vec::with_capacity(tail.len() + 1);
                    k.push(*b as u32);
                    k.extend_from_slice(tail);
                    next.push((k, f.mul(e, x)));
                }
            }
            out = next;
        }
        out
    }

    fn matrix(
        &self,
        source: &Term,
        target: &Term,
        horizontal: bool,
        n: usize,
        m: usize,
        w: u32,
    ) -> Result<SparseMatrix> {
        let f = self.field;
        let cols = &source.by_weight[w as usize];
        let rows = target.by_weight[w as usize].len();
        let faces = if horizontal { n } else { m };
        let mut triplets = Vec::new();
        for (j, key) in cols.iter().enumerate() {
            for i in 0..=faces {
                let face = |(a, b): (usize, usize)| {
                    if horizontal {
                        (circle_face(n, i, a), b)
                    } else {
                        (a, circle_face(m, i, b))
                    }
                };
                for (k, e) in self.push(key, source, target, face) {
                    let r = *target
                        .index
                        .get(&k)
                        .ok_or_else(|| Error::Internal("bicomplex face left the basis".into()))?;
                    let e = if i % 2 == 1 { f.neg(&e) } else { e };
                    triplets.push((r, j, e));
                }
            }
        }
        SparseMatrix::from_triplets(rows, cols.len(), f, triplets)
    }
}

impl Bicomplex {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Dimension of the `(n, m)` term in weight `w`.
    pub fn term_dim(&self, n: usize, m: usize, w: u32) -> usize {
        self.terms
            .get(&(n, m))
            .and_then(|t| t.by_weight.get(w as usize))
            .map_or(0, Vec::len)
    }

    /// Dimension of the `(n, m)` term summed over all weights.
    pub fn term_total(&self, n: usize, m: usize) -> usize {
        self.terms
            .get(&(n, m))
            .map_or(0, |t| t.by_weight.iter().map(Vec::len).sum())
    }

    pub fn horizontal(&self, n: usize, m: usize, w: u32) -> Option<&SparseMatrix> {
        self.horizontal.get(&(n, m, w))
    }

    pub fn vertical(&self, n: usize, m: usize, w: u32) -> Option<&SparseMatrix> {
        self.vertical.get(&(n, m, w))
    }

    /// Checks `h h = 0`, `v v = 0` and `h v = v h` on every square.
    pub fn differentials_commute(&self) -> Result<bool> {
        for (&(n, m, w), h) in &self.horizontal {
            if let Some(h2) = self.horizontal.get(&(n - 1, m, w)) {
                if !h2.mul(h)?.is_zero() {
                    return Ok(false);
                }
            }
            if m > 0 {
                let (Some(v), Some(v2)) = (self.vertical.get(&(n, m, w)), self.vertical.get(&(n - 1, m, w))) else {
                    continue;
                };
                let h_below = &self.horizontal[&(n, m - 1, w)];
                if h_below.mul(v)? != v2.mul(h)? {
                    return Ok(false);
                }
            }
        }
        for (&(n, m, w), v) in &self.vertical {
            if let Some(v2) = self.vertical.get(&(n, m - 1, w)) {
                if !v2.mul(v)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Total boundary from total degree `k` to `k - 1` in weight `w`:
    /// `h + (-1)^n v` on the term `(n, k - n)`.
    pub fn total_boundary(&self, k: usize, w: u32) -> Result<SparseMatrix> {
        let f = self.field;
        let offsets = |deg: usize| -> Vec<usize> {
            let mut acc = 0;
            (0..=deg)
                .map(|n| {
                    let o = acc;
                    acc += self.term_dim(n, deg - n, w);
                    o
                })
                .collect()
        };
        let dim = |deg: usize| (0..=deg).map(|n| self.term_dim(n, deg - n, w)).sum::<usize>();
        let cols = offsets(k);
        let rows = offsets(k - 1);
        let mut triplets = Vec::new();
        for n in 0..=k {
            let m = k - n;
            if let Some(h) = self.horizontal.get(&(n, m, w)) {
                for (r, c, e) in h.entries() {
                    triplets.push((rows[n - 1] + r, cols[n] + c, e.clone()));
                }
            }
            if let Some(v) = self.vertical.get(&(n, m, w)) {
                for (r, c, e) in v.entries() {
                    let e = if n % 2 == 1 { f.neg(e) } else { e.clone() };
                    triplets.push((rows[n] + r, cols[n] + c, e));
                }
            }
        }
        SparseMatrix::from_triplets(dim(k - 1), dim(k), f, triplets)
    }
}

/// Homology of the total complex in degrees `0..=D`.
pub fn total_homology(b: &Bicomplex) -> Result<HomologyTable> {
    let d = b.max_degree;
    let keys: Vec<(usize, u32)> = (1..=d + 1)
        .flat_map(|k| (0..=b.max_weight).map(move |w| (k, w)))
        .collect();
    let ranks: BTreeMap<(usize, u32), usize> = keys
        .par_iter()
        .map(|&(k, w)| b.total_boundary(k, w).map(|m| ((k, w), m.rank())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    let rank = |k: usize, w: u32| ranks.get(&(k, w)).copied().unwrap_or(0);
    let mut dims = BTreeMap::new();
    for k in 0..=d {
        for w in 0..=b.max_weight {
            let size: usize = (0..=k).map(|n| b.term_dim(n, k - n, w)).sum();
            let h = size - rank(k, w) - rank(k + 1, w);
            if h > 0 {
                dims.insert((k, w), h);
            }
        }
    }
    Ok(HomologyTable {
        field: b.field,
        coefficients: b.coefficients.clone(),
        max_degree: d,
        weight_bound: b.weight_bound,
        max_weight: b.max_weight,
        dims,
    })
}

/// Predicted table of `L_{X v Y}(A; k)` from the tables of `X` and `Y`:
/// per degree and weight, the convolution of dimensions.
pub fn wedge_kunneth_dims(h1: &HomologyTable, h2: &HomologyTable, max_degree: usize) -> Result<HomologyTable> {
    if h1.coefficients != "unit" || h2.coefficients != "unit" {
        return Err(Error::CoefficientMismatch);
    }
    if h1.field != h2.field {
        return Err(Error::FieldMismatch {
            expected: h1.field.to_string(),
            found: h2.field.to_string(),
        });
    }
    if max_degree > h1.max_degree.min(h2.max_degree) {
        return Err(Error::DimensionMismatch(format!(
            "tables reach degree {} and {}, {max_degree} requested",
            h1.max_degree, h2.max_degree
        )));
    }
    let complete = h1.covers_all_weights() && h2.covers_all_weights();
    let mut limit = h1.max_weight.saturating_add(h2.max_weight);
    if !h1.covers_all_weights() {
        limit = limit.min(h1.max_weight);
    }
    if !h2.covers_all_weights() {
        limit = limit.min(h2.max_weight);
    }
    let mut dims = BTreeMap::new();
    for (&(i, u), &x) in &h1.dims {
        for (&(j, v), &y) in &h2.dims {
            if i + j <= max_degree && u + v <= limit {
                *dims.entry((i + j, u + v)).or_insert(0) += x * y;
            }
        }
    }
    Ok(HomologyTable {
        field: h1.field,
        coefficients: "unit".into(),
        max_degree,
        weight_bound: if complete { None } else { Some(limit) },
        max_weight: limit,
        dims,
    })
}

/// Recomputes homology on the unnormalized complex.
pub fn unnormalized_homology(
    x: &PointedSimplicialSet,
    algebra: &GradedAlgebra,
    coefficients: &Coefficients,
    options: &LodayOptions,
) -> Result<HomologyTable> {
    let opts = LodayOptions {
        normalized: false,
        ..options.clone()
    };
    Ok(homology_dims(&build_complex(x, algebra, coefficients, &opts)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{polynomial, truncated_poly};
    use crate::simplicial::{circle, product, sphere, wedge};

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn circle_faces_match_sequence_deletion() {
        for n in 1..6 {
            for a in 1..=n {
                let seq: Vec<u8> = (0..=n).map(|k| u8::from(k >= a)).collect();
                for i in 0..=n {
                    let mut s = seq.clone();
                    s.remove(i);
                    let zeros = s.iter().filter(|&&b| b == 0).count();
                    let expected = if zeros == 0 || zeros == s.len() { 0 } else { zeros };
                    assert_eq!(circle_face(n, i, a), expected);
                }
            }
        }
    }

    #[test]
    fn term_dimensions() {
        let a = truncated_poly(f(3), 2).unwrap();
        let b = torus_bicomplex(&a, &Coefficients::Unit, 3, None).unwrap();
        assert_eq!(b.term_total(1, 1), 8);
        assert_eq!(b.term_total(0, 1), 2);
        assert_eq!(b.term_total(2, 2), 256);
        assert_eq!(b.term_total(3, 1), 1 << 7);
    }

    #[test]
    fn differentials_commute() {
        for a in [truncated_poly(f(3), 2).unwrap(), truncated_poly(f(2), 3).unwrap()] {
            for c in [Coefficients::Unit, Coefficients::SelfAlgebra] {
                let b = torus_bicomplex(&a, &c, 2, None).unwrap();
                assert!(b.differentials_commute().unwrap());
                for k in 2..=3 {
                    for w in 0..=b.max_weight() {
                        let d1 = b.total_boundary(k - 1, w).unwrap();
                        let d2 = b.total_boundary(k, w).unwrap();
                        assert!(d1.mul(&d2).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn bicomplex_homology_over_small_fields() {
        let a3 = truncated_poly(f(3), 2).unwrap();
        let h = total_homology(&torus_bicomplex(&a3, &Coefficients::Unit, 2, None).unwrap()).unwrap();
        assert_eq!(h.totals(), vec![1, 2, 3]);
        let a2 = truncated_poly(f(2), 2).unwrap();
        let h = total_homology(&torus_bicomplex(&a2, &Coefficients::Unit, 2, None).unwrap()).unwrap();
        assert_eq!(h.total(2), 4);
    }

    #[test]
    fn bicomplex_agrees_with_diagonal() {
        let x = product(&circle(3), &circle(3)).unwrap();
        let cases = vec![
            (truncated_poly(f(3), 2).unwrap(), Coefficients::Unit, None),
            (truncated_poly(f(2), 2).unwrap(), Coefficients::SelfAlgebra, None),
            (
                truncated_poly(FieldSpec::rationals(), 3).unwrap(),
                Coefficients::Unit,
                Some(4),
            ),
            (polynomial(f(5)), Coefficients::SelfAlgebra, Some(3)),
        ];
        for (a, c, w) in cases {
            let b = total_homology(&torus_bicomplex(&a, &c, 2, w).unwrap()).unwrap();
            let mut opts = LodayOptions::new(2);
            opts.weight_bound = w;
            let l = homology_dims(&build_complex(&x, &a, &c, &opts).unwrap());
            assert_eq!(b.max_weight, l.max_weight);
            assert_eq!(b.dims, l.dims, "{} {}", a.label(), c.mode());
        }
    }

    fn table(dims: &[usize]) -> HomologyTable {
        HomologyTable {
            field: f(3),
            coefficients: "unit".into(),
            max_degree: dims.len() - 1,
            weight_bound: None,
            max_weight: 10,
            dims: dims
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(n, &d)| ((n, n as u32), d))
                .collect(),
        }
    }

    #[test]
    fn convolution_examples() {
        let s1 = table(&[1, 1, 1, 1]);
        let two = wedge_kunneth_dims(&s1, &s1, 2).unwrap();
        assert_eq!(two.totals(), vec![1, 2, 3]);
        let s2 = table(&[1, 0, 1]);
        assert_eq!(wedge_kunneth_dims(&two, &s2, 2).unwrap().totals(), vec![1, 2, 4]);
        let pt = table(&[1, 0, 0]);
        assert_eq!(wedge_kunneth_dims(&two, &pt, 2).unwrap().dims, two.dims);
    }

    #[test]
    fn convolution_rejects_other_coefficients() {
        let mut t = table(&[1, 1]);
        t.coefficients = "self".into();
        assert_eq!(
            wedge_kunneth_dims(&t, &table(&[1, 1]), 1).unwrap_err(),
            Error::CoefficientMismatch
        );
    }

    #[test]
    fn convolution_matches_direct_wedges() {
        let a = truncated_poly(f(3), 2).unwrap();
        let opts = LodayOptions::new(2);
        let h = |x: &PointedSimplicialSet| homology_dims(&build_complex(x, &a, &Coefficients::Unit, &opts).unwrap());
        let (s1, s2) = (circle(3), sphere(2, 3));
        for (x, y) in [(&s1, &s1), (&s1, &s2)] {
            let direct = h(&wedge(x, y).unwrap());
            let predicted = wedge_kunneth_dims(&h(x), &h(y), 2).unwrap();
            assert_eq!(direct.dims, predicted.dims);
        }
    }

    #[test]
    fn unnormalized_recompute_agrees() {
        let a = truncated_poly(f(5), 2).unwrap();
        let x = product(&circle(3), &circle(3)).unwrap();
        let opts = LodayOptions::new(2);
        let n = homology_dims(&build_complex(&x, &a, &Coefficients::Unit, &opts).unwrap());
        let u = unnormalized_homology(&x, &a, &Coefficients::Unit, &opts).unwrap();
        assert_eq!(n.dims, u.dims);
        assert_eq!(u.totals(), vec![1, 2, 3]);
    }
}
