use super::*;
use crate::algebra::{exterior, polynomial, truncated_poly};
use crate::simplicial::{circle, smash, sphere, torus, wedge};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn totals(x: &PointedSimplicialSet, a: &GradedAlgebra, c: &Coefficients, opts: &LodayOptions) -> Vec<usize> {
    homology_dims(&build_complex(x, a, c, opts).unwrap()).totals()
}

fn chain_totals(cx: &LodayComplex) -> Vec<usize> {
    let mut out = vec![0; cx.max_degree() + 1];
    for ((p, _), n) in chain_dims(cx) {
        out[p] += n;
    }
    out
}

#[test]
fn circle_chain_dimensions() {
    let a = truncated_poly(f(3), 2).unwrap();
    let x = circle(4);
    let raw = build_complex(&x, &a, &Coefficients::Unit, &LodayOptions::new(3).unnormalized()).unwrap();
    assert_eq!(chain_totals(&raw), vec![1, 2, 4, 8]);
    let norm = build_complex(&x, &a, &Coefficients::Unit, &LodayOptions::new(3)).unwrap();
    assert_eq!(chain_totals(&norm), vec![1, 1, 1, 1]);
}

#[test]
fn torus_degree_three_has_all_binary_labelings() {
    let a = truncated_poly(f(3), 2).unwrap();
    let x = torus(2, 3);
    let e = Enumerator {
        algebra: &a,
        coefficients: &Coefficients::Unit,
        max_weight: 15,
        normalized: false,
        max_basis: DEFAULT_MAX_BASIS,
    };
    let level = e.level(&x, 3, true).unwrap();
    let total: usize = level.by_weight.iter().map(Vec::len).sum();
    assert_eq!(total, 1 << 15);
    assert_eq!(level.index.len(), 1 << 15);
}

#[test]
fn polynomial_circle_weight_two_degree_two() {
    let a = polynomial(FieldSpec::rationals());
    let cx = build_complex(
        &circle(3),
        &a,
        &Coefficients::Unit,
        &LodayOptions::new(2).weight_bound(2),
    )
    .unwrap();
    // only t on both non-degenerate-covering slots survives
    assert_eq!(cx.basis(2, 2).len(), 1);
    assert_eq!(cx.describe(&cx.basis(2, 2)[0]), "[t@0,t@1|1]");
}

#[test]
fn labelings_are_listed_lexicographically() {
    let a = truncated_poly(f(5), 3).unwrap();
    let cx = build_complex(
        &torus(2, 3),
        &a,
        &Coefficients::SelfAlgebra,
        &LodayOptions::new(2).unnormalized().weight_bound(3),
    )
    .unwrap();
    for w in 0..=cx.max_weight() {
        let b = cx.basis(2, w);
        assert!(b
            .windows(2)
            .all(|p| (&p[0].assignment, p[0].coeff) < (&p[1].assignment, p[1].coeff)));
        assert!(b.iter().all(|l| l.weight == w && l.level == 2));
    }
}

// Tor over k[x]/x^m of (k, k): one class in each degree, in weight
// m*n/2 for even n and m*(n-1)/2 + 1 for odd n.
#[test]
fn circle_matches_tor_of_truncated_polynomials() {
    for (p, m) in [(2, 2), (3, 2), (3, 3), (5, 4)] {
        let a = truncated_poly(f(p), m).unwrap();
        let h = homology_dims(&build_complex(&circle(4), &a, &Coefficients::Unit, &LodayOptions::new(3)).unwrap());
        let mut expected = BTreeMap::new();
        for n in 0..=3usize {
            let w = if n % 2 == 0 { m * n / 2 } else { m * (n - 1) / 2 + 1 };
            expected.insert((n, w as u32), 1);
        }
        assert_eq!(h.dims, expected, "F{p}, m = {m}");
    }
}

#[test]
fn circle_with_polynomial_algebra() {
    let a = polynomial(FieldSpec::rationals());
    let h = homology_dims(
        &build_complex(
            &circle(4),
            &a,
            &Coefficients::Unit,
            &LodayOptions::new(3).weight_bound(4),
        )
        .unwrap(),
    );
    assert_eq!(h.dims, BTreeMap::from([((0, 0), 1), ((1, 1), 1)]));
}

#[test]
fn self_coefficients_degree_zero_is_the_algebra() {
    for m in [2, 3] {
        let a = truncated_poly(f(3), m).unwrap();
        for x in [circle(3), torus(2, 3)] {
            let h = homology_dims(&build_complex(&x, &a, &Coefficients::SelfAlgebra, &LodayOptions::new(1)).unwrap());
            assert_eq!(h.total(0), m);
        }
    }
}

#[test]
fn small_spaces_over_f3() {
    let a = truncated_poly(f(3), 2).unwrap();
    let u = Coefficients::Unit;
    assert_eq!(totals(&circle(4), &a, &u, &LodayOptions::new(3)), vec![1, 1, 1, 1]);
    assert_eq!(totals(&sphere(2, 3), &a, &u, &LodayOptions::new(2)), vec![1, 0, 1]);
    assert_eq!(totals(&torus(2, 3), &a, &u, &LodayOptions::new(2)), vec![1, 2, 3]);
    let w = wedge(&wedge(&circle(3), &circle(3)).unwrap(), &sphere(2, 3)).unwrap();
    assert_eq!(totals(&w, &a, &u, &LodayOptions::new(2)), vec![1, 2, 4]);
}

#[test]
fn normalization_does_not_change_homology() {
    let a = truncated_poly(f(3), 2).unwrap();
    for (x, d) in [(circle(4), 3), (torus(2, 3), 2), (sphere(2, 3), 2)] {
        for c in [Coefficients::Unit, Coefficients::SelfAlgebra] {
            let n = homology_dims(&build_complex(&x, &a, &c, &LodayOptions::new(d)).unwrap());
            let u = homology_dims(&build_complex(&x, &a, &c, &LodayOptions::new(d).unnormalized()).unwrap());
            assert_eq!(n.dims, u.dims);
        }
    }
}

#[test]
fn weight_bounds_agree_on_shared_weights() {
    let a = truncated_poly(f(5), 3).unwrap();
    let x = torus(2, 3);
    let full = homology_dims(&build_complex(&x, &a, &Coefficients::Unit, &LodayOptions::new(2)).unwrap());
    for w in 0..5 {
        let cut =
            homology_dims(&build_complex(&x, &a, &Coefficients::Unit, &LodayOptions::new(2).weight_bound(w)).unwrap());
        assert_eq!(cut.max_weight, w);
        let restricted: BTreeMap<_, _> = full
            .dims
            .iter()
            .filter(|(k, _)| k.1 <= w)
            .map(|(k, v)| (*k, *v))
            .collect();
        assert_eq!(cut.dims, restricted);
    }
}

#[test]
fn degree_zero_is_one_dimensional_for_unit_coefficients() {
    let a = exterior(f(7));
    for x in [
        circle(2),
        torus(2, 2),
        sphere(2, 2),
        smash(&circle(2), &circle(2)).unwrap(),
    ] {
        let h = homology_dims(&build_complex(&x, &a, &Coefficients::Unit, &LodayOptions::new(1)).unwrap());
        assert_eq!(h.total(0), 1);
        assert_eq!(h.dim(0, 0), 1);
    }
}

#[test]
fn boundaries_square_to_zero() {
    let f3 = f(3);
    let cases: Vec<(GradedAlgebra, Coefficients, Option<u32>)> = vec![
        (truncated_poly(f3, 2).unwrap(), Coefficients::Unit, None),
        (truncated_poly(f3, 3).unwrap(), Coefficients::SelfAlgebra, Some(5)),
        (polynomial(FieldSpec::rationals()), Coefficients::SelfAlgebra, Some(4)),
    ];
    for (a, c, w) in cases {
        for normalized in [true, false] {
            let mut opts = LodayOptions::new(2);
            opts.weight_bound = w;
            opts.normalized = normalized;
            let cx = build_complex(&torus(2, 3), &a, &c, &opts).unwrap();
            assert!(cx.boundary_squares_vanish().unwrap());
        }
    }
}

#[test]
fn relabeling_the_space_changes_nothing() {
    let a = truncated_poly(f(3), 2).unwrap();
    let x = torus(2, 3);
    let base = homology_dims(&build_complex(&x, &a, &Coefficients::SelfAlgebra, &LodayOptions::new(2)).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let perms: Vec<Vec<u32>> = x
            .level_sizes()
            .into_iter()
            .map(|n| {
                let mut v: Vec<u32> = (0..n as u32).collect();
                v.shuffle(&mut rng);
                v
            })
            .collect();
        let y = x.relabel(&perms).unwrap();
        let h = homology_dims(&build_complex(&y, &a, &Coefficients::SelfAlgebra, &LodayOptions::new(2)).unwrap());
        assert_eq!(h.dims, base.dims);
    }
}

#[test]
fn rejects_bad_requests() {
    let a = truncated_poly(f(3), 2).unwrap();
    assert!(matches!(
        build_complex(&circle(2), &a, &Coefficients::Unit, &LodayOptions::new(2)),
        Err(Error::TruncationTooShallow {
            degree: 2,
            needed: 3,
            top_level: 2
        })
    ));
    let p = polynomial(f(3));
    assert_eq!(
        build_complex(&circle(3), &p, &Coefficients::Unit, &LodayOptions::new(2)).unwrap_err(),
        Error::WeightBoundRequired
    );
    assert!(matches!(
        build_complex(
            &torus(2, 3),
            &a,
            &Coefficients::Unit,
            &LodayOptions::new(2).unnormalized().max_basis(100)
        ),
        Err(Error::BasisTooLarge { limit: 100, .. })
    ));
}
