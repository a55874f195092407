//! Finite pointed simplicial sets, truncated at an explicit top level.
//!
//! Every level is an explicit table of simplices identified by dense integers
//! `0..size`. Faces and degeneracies are total maps between neighbouring
//! levels. The identifier order is the canonical simplex order used for
//! tensor factors by the Loday complex.

mod constructions;
mod expr;
mod iso;

use std::fmt;

use crate::error::{Error, Result};

pub use constructions::{circle, point, product, simplex_sphere, smash, sphere, suspension, torus, wedge};
pub use expr::{build_space, SpaceExpr};
pub use iso::find_isomorphism;

/// Raw level tables, as accepted by [`PointedSimplicialSet::from_tables`].
///
/// `faces[p][i]` maps level `p` to level `p - 1` (empty for `p = 0`);
/// `degeneracies[p][i]` maps level `p` to level `p + 1` for `p < top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialTables {
    pub sizes: Vec<usize>,
    pub basepoints: Vec<u32>,
    pub faces: Vec<Vec<Vec<u32>>>,
    pub degeneracies: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedSimplicialSet {
    t: SimplicialTables,
}

impl PointedSimplicialSet {
    /// Accepts tables of the right shape with in-range entries. The
    /// simplicial identities are not checked here; see [`validate`].
    pub fn from_tables(t: SimplicialTables) -> Result<Self> {
        let levels = t.sizes.len();
        if levels == 0 {
            return Err(Error::MalformedTable("no levels".into()));
        }
        if t.basepoints.len() != levels || t.faces.len() != levels || t.degeneracies.len() != levels - 1 {
            return Err(Error::MalformedTable(
                "table lengths disagree with the number of levels".into(),
            ));
        }
        for p in 0..levels {
            if t.basepoints[p] as usize >= t.sizes[p] {
                return Err(Error::MalformedTable(format!("basepoint out of range in level {p}")));
            }
            let expected_faces = if p == 0 { 0 } else { p + 1 };
            if t.faces[p].len() != expected_faces {
                return Err(Error::MalformedTable(format!("level {p} needs {expected_faces} faces")));
            }
            for map in &t.faces[p] {
                check_map(map, t.sizes[p], t.sizes[p - 1], p)?;
            }
            if p + 1 < levels {
                if t.degeneracies[p].len() != p + 1 {
                    return Err(Error::MalformedTable(format!("level {p} needs {} degeneracies", p + 1)));
                }
                for map in &t.degeneracies[p] {
                    check_map(map, t.sizes[p], t.sizes[p + 1], p)?;
                }
            }
        }
        Ok(PointedSimplicialSet { t })
    }

    pub fn tables(&self) -> &SimplicialTables {
        &self.t
    }

    pub fn into_tables(self) -> SimplicialTables {
        self.t
    }

    pub fn top_level(&self) -> usize {
        self.t.sizes.len() - 1
    }

    pub fn size(&self, p: usize) -> usize {
        self.t.sizes[p]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.t.sizes.clone()
    }

    pub fn basepoint(&self, p: usize) -> u32 {
        self.t.basepoints[p]
    }

    /// `d_i` on level `p`.
    pub fn face(&self, p: usize, i: usize) -> &[u32] {
        &self.t.faces[p][i]
    }

    /// `s_i` on level `p`.
    pub fn degeneracy(&self, p: usize, i: usize) -> &[u32] {
        &self.t.degeneracies[p][i]
    }

    /// Non-basepoint simplices of level `p`, in identifier order.
    pub fn non_base(&self, p: usize) -> Vec<u32> {
        let b = self.basepoint(p);
        (0..self.size(p) as u32).filter(|&x| x != b).collect()
    }

    /// Flags the simplices of level `p` lying in the image of `s_j`.
    pub fn degenerate_image(&self, p: usize, j: usize) -> Vec<bool> {
        let mut flags = vec![false; self.size(p)];
        for &y in self.degeneracy(p - 1, j) {
            flags[y as usize] = true;
        }
        flags
    }

    pub fn is_degenerate(&self, p: usize, x: u32) -> bool {
        p > 0 && (0..p).any(|j| self.degeneracy(p - 1, j).contains(&x))
    }

    /// Number of non-degenerate simplices in each level, basepoint included
    /// at level 0.
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.top_level())
            .map(|p| {
                let mut deg = vec![false; self.size(p)];
                if p > 0 {
                    for j in 0..p {
                        for &y in self.degeneracy(p - 1, j) {
                            deg[y as usize] = true;
                        }
                    }
                }
                deg.iter().filter(|d| !**d).count()
            })
            .collect()
    }

    /// Renames simplices: `x` in level `p` becomes `perms[p][x]`.
    pub fn relabel(&self, perms: &[Vec<u32>]) -> Result<Self> {
        let top = self.top_level();
        if perms.len() != top + 1 {
            return Err(Error::MalformedTable("one permutation per level required".into()));
        }
        for (p, perm) in perms.iter().enumerate() {
            let mut seen = vec![false; self.size(p)];
            if perm.len() != self.size(p) {
                return Err(Error::MalformedTable(format!(
                    "permutation of level {p} has wrong length"
                )));
            }
            for &x in perm {
                if x as usize >= seen.len() || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::MalformedTable(format!(
                        "level {p} relabeling is not a permutation"
                    )));
                }
            }
        }
        let conj = |map: &[u32], src: &[u32], dst: &[u32]| -> Vec<u32> {
            let mut out = vec![0; map.len()];
            for (x, &y) in map.iter().enumerate() {
                out[src[x] as usize] = dst[y as usize];
            }
            out
        };
        let t = &self.t;
        let faces = (0..=top)
            .map(|p| t.faces[p].iter().map(|m| conj(m, &perms[p], &perms[p - 1])).collect())
            .collect();
        let degeneracies = (0..top)
            .map(|p| {
                t.degeneracies[p]
                    .iter()
                    .map(|m| conj(m, &perms[p], &perms[p + 1]))
                    .collect()
            })
            .collect();
        PointedSimplicialSet::from_tables(SimplicialTables {
            sizes: t.sizes.clone(),
            basepoints: (0..=top).map(|p| perms[p][t.basepoints[p] as usize]).collect(),
            faces,
            degeneracies,
        })
    }

    /// Every vertex is joined to the basepoint by a path of 1-simplices.
    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.size(0));
        if self.top_level() >= 1 {
            for x in 0..self.size(1) {
                uf.union(self.face(1, 0)[x], self.face(1, 1)[x]);
            }
        }
        let root = uf.find(self.basepoint(0));
        (0..self.size(0) as u32).all(|v| uf.find(v) == root)
    }
}

fn check_map(map: &[u32], src: usize, dst: usize, p: usize) -> Result<()> {
    if map.len() != src {
        return Err(Error::MalformedTable(format!("map on level {p} has wrong length")));
    }
    if map.iter().any(|&y| y as usize >= dst) {
        return Err(Error::MalformedTable(format!("map on level {p} leaves its target")));
    }
    Ok(())
}

/// Union-find over dense identifiers; the representative of a class is its
/// smallest member.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let next = self.parent[x as usize];
            self.parent[x as usize] = self.parent[next as usize];
            x = next;
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else if rb < ra {
            self.parent[ra as usize] = rb;
        }
    }
}

/// One failed instance of a simplicial identity or structural requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The identity that failed, e.g. `d_0 d_1 = d_0 d_0`.
    pub identity: String,
    pub level: usize,
    pub simplex: u32,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on simplex {} of level {}",
            self.identity, self.simplex, self.level
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every simplicial identity available inside the truncation,
/// pointedness of all maps and injectivity of degeneracies.
pub fn validate(x: &PointedSimplicialSet) -> ValidationReport {
    let top = x.top_level();
    let mut violations = Vec::new();
    let mut report = |identity: String, level: usize, simplex: u32| {
        violations.push(Violation {
            identity,
            level,
            simplex,
        })
    };
    let d = |p: usize, i: usize, s: u32| x.face(p, i)[s as usize];
    let s = |p: usize, i: usize, v: u32| x.degeneracy(p, i)[v as usize];

    for p in 0..=top {
        for i in 0..(if p == 0 { 0 } else { p + 1 }) {
            if d(p, i, x.basepoint(p)) != x.basepoint(p - 1) {
                report(format!("d_{i} preserves the basepoint"), p, x.basepoint(p));
            }
        }
        if p < top {
            for i in 0..=p {
                if s(p, i, x.basepoint(p)) != x.basepoint(p + 1) {
                    report(format!("s_{i} preserves the basepoint"), p, x.basepoint(p));
                }
                let mut hit = vec![false; x.size(p + 1)];
                for v in 0..x.size(p) as u32 {
                    let y = s(p, i, v) as usize;
                    if std::mem::replace(&mut hit[y], true) {
                        report(format!("s_{i} is injective"), p, v);
                    }
                }
            }
        }
    }

    // d_i d_j = d_{j-1} d_i for i < j
    for p in 2..=top {
        for j in 1..=p {
            for i in 0..j {
                for v in 0..x.size(p) as u32 {
                    if d(p - 1, i, d(p, j, v)) != d(p - 1, j - 1, d(p, i, v)) {
                        report(format!("d_{i} d_{j} = d_{} d_{i}", j - 1), p, v);
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j
    for p in 0..top.saturating_sub(1) {
        for j in 0..=p {
            for i in 0..=j {
                for v in 0..x.size(p) as u32 {
                    if s(p + 1, i, s(p, j, v)) != s(p + 1, j + 1, s(p, i, v)) {
                        report(format!("s_{i} s_{j} = s_{} s_{i}", j + 1), p, v);
                    }
                }
            }
        }
    }
    // d_i s_j on level p -> p+1 -> p
    for p in 0..top {
        for j in 0..=p {
            for i in 0..=p + 1 {
                for v in 0..x.size(p) as u32 {
                    let lhs = d(p + 1, i, s(p, j, v));
                    let (rhs, name) = if i < j {
                        (s(p - 1, j - 1, d(p, i, v)), format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (v, format!("d_{i} s_{j} = id"))
                    } else {
                        (s(p - 1, j, d(p, i - 1, v)), format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                    };
                    if lhs != rhs {
                        report(name, p, v);
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_validates() {
        assert!(validate(&circle(4)).passed());
        assert!(validate(&product(&circle(3), &circle(3)).unwrap()).passed());
    }

    #[test]
    fn hand_built_identity_failure_is_named() {
        // Vertices * and b, an edge e with d_0 e = b and d_1 e = *, and one
        // 2-simplex sigma whose faces break d_0 d_1 = d_0 d_0.
        let mut x = simplex_sphere(2, 2).into_tables();
        x.sizes = vec![2, 3, 5];
        x.basepoints = vec![0, 0, 0];
        // level 1: 0 = s_0(*), 1 = s_0(b), 2 = e with d_0 e = b, d_1 e = *
        x.faces[1] = vec![vec![0, 1, 1], vec![0, 1, 0]];
        x.degeneracies[0] = vec![vec![0, 1]];
        // level 2: 0 = s(*), 1 = s_0 s_0 b, 2 = s_0 e, 3 = s_1 e, 4 = sigma
        x.degeneracies[1] = vec![vec![0, 1, 2], vec![0, 1, 3]];
        x.faces[2] = vec![vec![0, 1, 2, 1, 2], vec![0, 1, 2, 2, 0], vec![0, 1, 0, 2, 2]];
        let x = PointedSimplicialSet::from_tables(x).unwrap();
        let report = validate(&x);
        assert!(report
            .violations
            .iter()
            .any(|v| v.identity == "d_0 d_1 = d_0 d_0" && v.simplex == 4));
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let mut t = circle(2).into_tables();
        t.faces[2][0][0] = 99;
        assert!(PointedSimplicialSet::from_tables(t).is_err());
        let mut t = circle(2).into_tables();
        t.degeneracies.pop();
        assert!(PointedSimplicialSet::from_tables(t).is_err());
    }

    #[test]
    fn relabeling_round_trip() {
        let x = smash(&circle(3), &circle(3)).unwrap();
        let perms: Vec<Vec<u32>> = x.level_sizes().iter().map(|&n| (0..n as u32).rev().collect()).collect();
        let y = x.relabel(&perms).unwrap();
        assert!(validate(&y).passed());
        assert_eq!(y.basepoint(3), 9);
        assert_eq!(y.relabel(&perms).unwrap(), x);
        assert!(find_isomorphism(&x, &y).is_some());
    }

    #[test]
    fn connectivity() {
        assert!(circle(2).is_connected());
        assert!(product(&circle(2), &circle(2)).unwrap().is_connected());
        let two_points = PointedSimplicialSet::from_tables(SimplicialTables {
            sizes: vec![2, 2],
            basepoints: vec![0, 0],
            faces: vec![vec![], vec![vec![0, 1], vec![0, 1]]],
            degeneracies: vec![vec![vec![0, 1]]],
        })
        .unwrap();
        assert!(validate(&two_points).passed());
        assert!(!two_points.is_connected());
    }
}
