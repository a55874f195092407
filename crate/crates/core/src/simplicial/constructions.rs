use crate::error::{Error, Result};
use crate::simplicial::{PointedSimplicialSet, SimplicialTables, UnionFind};

/// The point: one simplex in every level.
pub fn point(top_level: usize) -> PointedSimplicialSet {
    let levels = top_level + 1;
    PointedSimplicialSet::from_tables(SimplicialTables {
        sizes: vec![1; levels],
        basepoints: vec![0; levels],
        faces: (0..levels)
            .map(|p| if p == 0 { vec![] } else { vec![vec![0]; p + 1] })
            .collect(),
        degeneracies: (0..top_level).map(|p| vec![vec![0]; p + 1]).collect(),
    })
    .expect("point tables are well-formed")
}

/// Non-decreasing sequences of length `len` with entries in `0..=n`, in
/// lexicographic order.
fn monotone_sequences(len: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(cur: &mut Vec<u8>, len: usize, lo: u8, n: u8, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(cur, len, v, n, out);
            cur.pop();
        }
    }
    go(&mut cur, len, 0, n as u8, &mut out);
    out
}

/// `Δⁿ/∂Δⁿ`: simplices of `Δⁿ` are monotone maps `[p] -> [n]`; every
/// non-surjective one is collapsed to the basepoint.
pub fn simplex_sphere(n: usize, top_level: usize) -> PointedSimplicialSet {
    assert!(n >= 1, "simplex spheres need n >= 1");
    let levels: Vec<Vec<Vec<u8>>> = (0..=top_level).map(|p| monotone_sequences(p + 1, n)).collect();
    let index = |p: usize, seq: &[u8]| -> u32 {
        levels[p]
            .binary_search_by(|s| s.as_slice().cmp(seq))
            .expect("monotone sequence") as u32
    };
    let faces = (0..=top_level)
        .map(|p| {
            if p == 0 {
                return vec![];
            }
            (0..=p)
                .map(|i| {
                    levels[p]
                        .iter()
                        .map(|s| {
                            let mut t = s.clone();
                            t.remove(i);
                            index(p - 1, &t)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..top_level)
        .map(|p| {
            (0..=p)
                .map(|i| {
                    levels[p]
                        .iter()
                        .map(|s| {
                            let mut t = s.clone();
                            t.insert(i, s[i]);
                            index(p + 1, &t)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let simplex = PointedSimplicialSet::from_tables(SimplicialTables {
        sizes: levels.iter().map(Vec::len).collect(),
        basepoints: vec![0; top_level + 1],
        faces,
        degeneracies,
    })
    .expect("simplex tables are well-formed");
    let collapse: Vec<Vec<bool>> = levels
        .iter()
        .map(|lv| lv.iter().map(|s| (0..=n as u8).any(|v| !s.contains(&v))).collect())
        .collect();
    collapse_to_basepoint(&simplex, &collapse).expect("boundary is a subcomplex")
}

/// The minimal circle `Δ¹/∂Δ¹`.
pub fn circle(top_level: usize) -> PointedSimplicialSet {
    simplex_sphere(1, top_level)
}

/// Identifies every flagged simplex with the basepoint. Classes are found by
/// union-find and renumbered by their smallest member.
pub(crate) fn collapse_to_basepoint(x: &PointedSimplicialSet, collapse: &[Vec<bool>]) -> Result<PointedSimplicialSet> {
    let top = x.top_level();
    let mut class_of: Vec<Vec<u32>> = Vec::with_capacity(top + 1);
    let mut reps: Vec<Vec<u32>> = Vec::with_capacity(top + 1);
    for (p, flags) in collapse.iter().enumerate().take(top + 1) {
        let mut uf = UnionFind::new(x.size(p));
        for v in 0..x.size(p) as u32 {
            if flags[v as usize] {
                uf.union(x.basepoint(p), v);
            }
        }
        let mut new_id = vec![u32::MAX; x.size(p)];
        let mut level_reps = Vec::new();
        for v in 0..x.size(p) as u32 {
            let r = uf.find(v);
            if r == v {
                new_id[v as usize] = level_reps.len() as u32;
                level_reps.push(v);
            }
        }
        let classes = (0..x.size(p) as u32).map(|v| new_id[uf.find(v) as usize]).collect();
        class_of.push(classes);
        reps.push(level_reps);
    }
    let induced = |map: &[u32], src: usize, dst: usize| -> Result<Vec<u32>> {
        let mut out = vec![u32::MAX; reps[src].len()];
        for (v, &y) in map.iter().enumerate() {
            let c = class_of[src][v] as usize;
            let image = class_of[dst][y as usize];
            if out[c] == u32::MAX {
                out[c] = image;
            } else if out[c] != image {
                return Err(Error::MalformedTable(format!(
                    "collapsed set is not closed under the simplicial maps (level {src})"
                )));
            }
        }
        Ok(out)
    };
    let mut faces = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let maps = if p == 0 {
            vec![]
        } else {
            (0..=p)
                .map(|i| induced(x.face(p, i), p, p - 1))
                .collect::<Result<Vec<_>>>()?
        };
        faces.push(maps);
    }
    let mut degeneracies = Vec::with_capacity(top);
    for p in 0..top {
        degeneracies.push(
            (0..=p)
                .map(|i| induced(x.degeneracy(p, i), p, p + 1))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    PointedSimplicialSet::from_tables(SimplicialTables {
        sizes: reps.iter().map(Vec::len).collect(),
        basepoints: (0..=top).map(|p| class_of[p][x.basepoint(p) as usize]).collect(),
        faces,
        degeneracies,
    })
}

fn same_top(x: &PointedSimplicialSet, y: &PointedSimplicialSet) -> Result<usize> {
    if x.top_level() != y.top_level() {
        return Err(Error::TruncationMismatch(x.top_level(), y.top_level()));
    }
    Ok(x.top_level())
}

/// Levelwise cartesian product; `(x, y)` has identifier `x * |Y_p| + y`.
pub fn product(x: &PointedSimplicialSet, y: &PointedSimplicialSet) -> Result<PointedSimplicialSet> {
    let top = same_top(x, y)?;
    let pair = |p: usize, a: u32, b: u32| a * y.size(p) as u32 + b;
    let combine = |mx: &[u32], my: &[u32], dst: usize| -> Vec<u32> {
        let mut out = Vec::with_capacity(mx.len() * my.len());
        for &a in mx {
            for &b in my {
                out.push(pair(dst, a, b));
            }
        }
        out
    };
    PointedSimplicialSet::from_tables(SimplicialTables {
        sizes: (0..=top).map(|p| x.size(p) * y.size(p)).collect(),
        basepoints: (0..=top).map(|p| pair(p, x.basepoint(p), y.basepoint(p))).collect(),
        faces: (0..=top)
            .map(|p| {
                if p == 0 {
                    return vec![];
                }
                (0..=p).map(|i| combine(x.face(p, i), y.face(p, i), p - 1)).collect()
            })
            .collect(),
        degeneracies: (0..top)
            .map(|p| {
                (0..=p)
                    .map(|i| combine(x.degeneracy(p, i), y.degeneracy(p, i), p + 1))
                    .collect()
            })
            .collect(),
    })
}

/// Disjoint union with basepoints identified. The simplices of `x` keep their
/// identifiers; the non-basepoint simplices of `y` follow in order.
pub fn wedge(x: &PointedSimplicialSet, y: &PointedSimplicialSet) -> Result<PointedSimplicialSet> {
    let top = same_top(x, y)?;
    let y_id: Vec<Vec<u32>> = (0..=top)
        .map(|p| {
            let mut next = x.size(p) as u32;
            (0..y.size(p) as u32)
                .map(|v| {
                    if v == y.basepoint(p) {
                        x.basepoint(p)
                    } else {
                        next += 1;
                        next - 1
                    }
                })
                .collect()
        })
        .collect();
    let join = |mx: &[u32], my: &[u32], src: usize, dst: usize| -> Vec<u32> {
        let mut out = mx.to_vec();
        for v in 0..my.len() {
            if v as u32 != y.basepoint(src) {
                out.push(y_id[dst][my[v] as usize]);
            }
        }
        out
    };
    PointedSimplicialSet::from_tables(SimplicialTables {
        sizes: (0..=top).map(|p| x.size(p) + y.size(p) - 1).collect(),
        basepoints: (0..=top).map(|p| x.basepoint(p)).collect(),
        faces: (0..=top)
            .map(|p| {
                if p == 0 {
                    return vec![];
                }
                (0..=p).map(|i| join(x.face(p, i), y.face(p, i), p, p - 1)).collect()
            })
            .collect(),
        degeneracies: (0..top)
            .map(|p| {
                (0..=p)
                    .map(|i| join(x.degeneracy(p, i), y.degeneracy(p, i), p, p + 1))
                    .collect()
            })
            .collect(),
    })
}

/// `X ∧ Y`: the product with `X ∨ Y` collapsed to the basepoint.
pub fn smash(x: &PointedSimplicialSet, y: &PointedSimplicialSet) -> Result<PointedSimplicialSet> {
    let prod = product(x, y)?;
    let collapse: Vec<Vec<bool>> = (0..=prod.top_level())
        .map(|p| {
            let ny = y.size(p) as u32;
            (0..prod.size(p) as u32)
                .map(|v| v / ny == x.basepoint(p) || v % ny == y.basepoint(p))
                .collect()
        })
        .collect();
    collapse_to_basepoint(&prod, &collapse)
}

/// `S¹ ∧ X`.
pub fn suspension(x: &PointedSimplicialSet) -> PointedSimplicialSet {
    smash(&circle(x.top_level()), x).expect("matching truncation")
}

/// `S¹ ∧ S^{n-1}`, the `n`-fold smash power of the minimal circle.
pub fn sphere(n: usize, top_level: usize) -> PointedSimplicialSet {
    assert!(n >= 1, "spheres need n >= 1");
    let mut s = circle(top_level);
    for _ in 1..n {
        s = smash(&circle(top_level), &s).expect("matching truncation");
    }
    s
}

/// The `n`-fold product of minimal circles.
pub fn torus(n: usize, top_level: usize) -> PointedSimplicialSet {
    assert!(n >= 1, "tori need n >= 1");
    let mut t = circle(top_level);
    for _ in 1..n {
        t = product(&t, &circle(top_level)).expect("matching truncation");
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{find_isomorphism, validate};

    /// Number of monotone surjections `[p] -> [n]`, counted by brute force.
    fn surjections(p: usize, n: usize) -> usize {
        monotone_sequences(p + 1, n)
            .iter()
            .filter(|s| (0..=n as u8).all(|v| s.contains(&v)))
            .count()
    }

    #[test]
    fn circle_level_sizes() {
        assert_eq!(circle(3).level_sizes(), vec![1, 2, 3, 4]);
        assert_eq!(circle(1).level_sizes(), vec![1, 2]);
        for p in 0..6 {
            assert_eq!(circle(6).size(p), 1 + surjections(p, 1));
        }
    }

    #[test]
    fn circle_edge_faces_are_basepoint() {
        let c = circle(3);
        let edge = c.non_base(1)[0] as usize;
        assert_eq!(c.face(1, 0)[edge], c.basepoint(0));
        assert_eq!(c.face(1, 1)[edge], c.basepoint(0));
        assert_eq!(c.nondegenerate_counts(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn simplex_sphere_level_sizes() {
        assert_eq!(simplex_sphere(2, 3).level_sizes(), vec![1, 1, 2, 4]);
        for p in 0..5 {
            assert_eq!(simplex_sphere(2, 4).size(p), 1 + surjections(p, 2));
        }
        assert_eq!(simplex_sphere(1, 2), circle(2));
        assert_eq!(simplex_sphere(2, 1).level_sizes(), vec![1, 1]);
        assert_eq!(simplex_sphere(3, 4).nondegenerate_counts(), vec![1, 0, 0, 1, 0]);
    }

    #[test]
    fn product_examples() {
        let t = product(&circle(3), &circle(3)).unwrap();
        assert_eq!(t.level_sizes(), vec![1, 4, 9, 16]);
        let c = circle(3);
        let cp = product(&c, &point(3)).unwrap();
        assert_eq!(cp, c);
        let t2 = product(&circle(2), &circle(2)).unwrap();
        let sigma = circle(2).non_base(1)[0];
        let pair = sigma * 2 + sigma;
        assert_eq!(t2.face(1, 0)[pair as usize], t2.basepoint(0));
        assert_eq!(product(&circle(2), &circle(3)), Err(Error::TruncationMismatch(2, 3)));
    }

    #[test]
    fn wedge_examples() {
        let w = wedge(&circle(2), &circle(2)).unwrap();
        assert_eq!(w.level_sizes(), vec![1, 3, 5]);
        assert_eq!(wedge(&circle(2), &point(2)).unwrap(), circle(2));
        let w3 = wedge(&w, &simplex_sphere(2, 2)).unwrap();
        assert_eq!(w3.level_sizes(), vec![1, 3, 6]);
    }

    #[test]
    fn smash_examples() {
        // |X_p||Y_p| - |X_p| - |Y_p| + 2 with circle sizes p + 1
        assert_eq!(smash(&circle(2), &circle(2)).unwrap().level_sizes(), vec![1, 2, 5]);
        assert_eq!(smash(&circle(3), &point(3)).unwrap().level_sizes(), vec![1; 4]);
        assert_eq!(smash(&circle(3), &circle(3)).unwrap().size(3), 10);
    }

    #[test]
    fn suspension_examples() {
        assert_eq!(suspension(&circle(3)).level_sizes(), vec![1, 2, 5, 10]);
        assert_eq!(suspension(&point(3)).level_sizes(), vec![1; 4]);
        assert_eq!(
            suspension(&simplex_sphere(1, 3)).level_sizes(),
            suspension(&circle(3)).level_sizes()
        );
    }

    #[test]
    fn constructions_validate() {
        let c = circle(4);
        let s2 = simplex_sphere(2, 4);
        for x in [
            c.clone(),
            s2.clone(),
            product(&c, &s2).unwrap(),
            wedge(&c, &s2).unwrap(),
            smash(&c, &s2).unwrap(),
            sphere(3, 4),
            torus(3, 3),
            suspension(&wedge(&c, &c).unwrap()),
            point(0),
        ] {
            let report = validate(&x);
            assert!(report.passed(), "{:?}", report.violations.first());
        }
    }

    #[test]
    fn wedge_and_smash_are_commutative_and_associative() {
        let a = circle(3);
        let b = simplex_sphere(2, 3);
        let c = sphere(2, 3);
        assert!(find_isomorphism(&wedge(&a, &b).unwrap(), &wedge(&b, &a).unwrap()).is_some());
        assert!(find_isomorphism(&smash(&a, &b).unwrap(), &smash(&b, &a).unwrap()).is_some());
        let w1 = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
        let w2 = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
        assert!(find_isomorphism(&w1, &w2).is_some());
        let s1 = smash(&smash(&a, &a).unwrap(), &a).unwrap();
        let s2 = smash(&a, &smash(&a, &a).unwrap()).unwrap();
        assert!(find_isomorphism(&s1, &s2).is_some());
    }

    #[test]
    fn distinct_spaces_are_not_isomorphic() {
        let a = wedge(&circle(3), &circle(3)).unwrap();
        let b = product(&circle(3), &circle(3)).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
        let c = wedge(&wedge(&circle(3), &circle(3)).unwrap(), &sphere(2, 3)).unwrap();
        assert_eq!(c.level_sizes(), b.level_sizes());
        assert!(find_isomorphism(&c, &b).is_none());
    }
}
