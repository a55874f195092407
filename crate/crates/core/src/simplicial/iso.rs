use crate::simplicial::PointedSimplicialSet;

/// Searches for a pointed isomorphism `x -> y`, returned as one bijection per
/// level.
///
/// Degenerate simplices have forced images; only non-degenerate simplices
/// are branched on, so this is fast for the small models built here.
pub fn find_isomorphism(x: &PointedSimplicialSet, y: &PointedSimplicialSet) -> Option<Vec<Vec<u32>>> {
    if x.level_sizes() != y.level_sizes() || x.nondegenerate_counts() != y.nondegenerate_counts() {
        return None;
    }
    let top = x.top_level();
    // For each simplex, one way of writing it as s_j(v), if degenerate.
    let source = |z: &PointedSimplicialSet, p: usize| -> Vec<Option<(usize, u32)>> {
        let mut out = vec![None; z.size(p)];
        if p > 0 {
            for j in 0..p {
                for (v, &w) in z.degeneracy(p - 1, j).iter().enumerate() {
                    out[w as usize].get_or_insert((j, v as u32));
                }
            }
        }
        out
    };
    let x_src: Vec<_> = (0..=top).map(|p| source(x, p)).collect();
    let y_nondeg: Vec<Vec<u32>> = (0..=top)
        .map(|p| {
            let s = source(y, p);
            (0..y.size(p) as u32).filter(|&v| s[v as usize].is_none()).collect()
        })
        .collect();
    let order: Vec<(usize, u32)> = (0..=top)
        .flat_map(|p| (0..x.size(p) as u32).map(move |v| (p, v)))
        .collect();

    let mut map: Vec<Vec<u32>> = (0..=top).map(|p| vec![u32::MAX; x.size(p)]).collect();
    let mut used: Vec<Vec<bool>> = (0..=top).map(|p| vec![false; y.size(p)]).collect();

    struct Search<'a> {
        x: &'a PointedSimplicialSet,
        y: &'a PointedSimplicialSet,
        x_src: &'a [Vec<Option<(usize, u32)>>],
        y_nondeg: &'a [Vec<u32>],
        order: &'a [(usize, u32)],
    }

    impl Search<'_> {
        fn fits(&self, map: &[Vec<u32>], used: &[Vec<bool>], p: usize, v: u32, w: u32) -> bool {
            if used[p][w as usize] {
                return false;
            }
            if (v == self.x.basepoint(p)) != (w == self.y.basepoint(p)) {
                return false;
            }
            p == 0
                || (0..=p).all(|i| map[p - 1][self.x.face(p, i)[v as usize] as usize] == self.y.face(p, i)[w as usize])
        }

        fn go(&self, k: usize, map: &mut Vec<Vec<u32>>, used: &mut Vec<Vec<bool>>) -> bool {
            let Some(&(p, v)) = self.order.get(k) else {
                return self.degeneracies_commute(map);
            };
            let candidates: Vec<u32> = match self.x_src[p][v as usize] {
                Some((j, u)) => vec![self.y.degeneracy(p - 1, j)[map[p - 1][u as usize] as usize]],
                None => self.y_nondeg[p].clone(),
            };
            for w in candidates {
                if self.fits(map, used, p, v, w) {
                    map[p][v as usize] = w;
                    used[p][w as usize] = true;
                    if self.go(k + 1, map, used) {
                        return true;
                    }
                    used[p][w as usize] = false;
                    map[p][v as usize] = u32::MAX;
                }
            }
            false
        }

        fn degeneracies_commute(&self, map: &[Vec<u32>]) -> bool {
            (0..self.x.top_level()).all(|p| {
                (0..=p).all(|j| {
                    (0..self.x.size(p)).all(|v| {
                        map[p + 1][self.x.degeneracy(p, j)[v] as usize] == self.y.degeneracy(p, j)[map[p][v] as usize]
                    })
                })
            })
        }
    }

    let search = Search {
        x,
        y,
        x_src: &x_src,
        y_nondeg: &y_nondeg,
        order: &order,
    };
    if search.go(0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
