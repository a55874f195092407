//! The acceptance suite: each criterion recomputes its inputs from scratch
//! and reports pass or fail with the observed values.
//!
//! Every simplicial complex assembled by criteria 1 to 8 goes through
//! [`Suite::table`], which records a boundary-squares check for criterion 9
//! and the input itself for the normalization sweep of criterion 8.

use std::time::{Duration, Instant};

use loday_core::algebra::{exterior, polynomial, truncated_poly};
use loday_core::loday::{build_complex, homology_dims};
use loday_core::oracle::{torus_bicomplex, total_homology, wedge_kunneth_dims};
use loday_core::stability::{compare_tables, product_decomposition_check};
use loday_core::{
    Coefficients, FieldSpec, GradedAlgebra, HomologyTable, LodayOptions, PointedSimplicialSet, Result, SpaceExpr,
    Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{AlgebraSpec, CoeffSpec, Command, Format, RunConfig};

const TORUS: &str = "prod(S1,S1)";
const WEDGE: &str = "wedge(wedge(S1,S1),sphere(2))";

/// Random inputs whose unnormalized top level would exceed this many
/// labelings are redrawn.
const RANDOM_SIZE_LIMIT: u128 = 300_000;
const RANDOM_INPUTS: usize = 20;
const RANDOM_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} ({}): {} [{:.1}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

struct Recorded {
    label: String,
    space: SpaceExpr,
    algebra: GradedAlgebra,
    coefficients: Coefficients,
    options: LodayOptions,
    table: HomologyTable,
}

#[derive(Default)]
pub struct Suite {
    recorded: Vec<Recorded>,
    boundary_checks: Vec<(String, bool)>,
}

fn field(p: u64) -> FieldSpec {
    FieldSpec::prime(p).expect("small primes")
}

fn expr(s: &str) -> SpaceExpr {
    s.parse().expect("suite expressions parse")
}

fn input_label(e: &SpaceExpr, a: &GradedAlgebra, c: &Coefficients, o: &LodayOptions) -> String {
    format!(
        "{e} {}/{} {} D={} W={}",
        a.label(),
        a.field(),
        c.mode(),
        o.max_degree,
        o.weight_bound.map_or("-".to_string(), |w| w.to_string())
    )
}

fn fmt_totals(t: &HomologyTable) -> String {
    format!("{:?}", t.totals())
}

impl Suite {
    pub fn new() -> Self {
        Suite::default()
    }

    /// Homology of `e`, recording the input and a boundary-squares check.
    pub fn table(
        &mut self,
        e: &SpaceExpr,
        a: &GradedAlgebra,
        c: &Coefficients,
        o: &LodayOptions,
    ) -> Result<HomologyTable> {
        let x = e.build(o.max_degree + 1)?;
        self.table_of(e, &x, a, c, o)
    }

    fn table_of(
        &mut self,
        e: &SpaceExpr,
        x: &PointedSimplicialSet,
        a: &GradedAlgebra,
        c: &Coefficients,
        o: &LodayOptions,
    ) -> Result<HomologyTable> {
        let cx = build_complex(x, a, c, o)?;
        let label = input_label(e, a, c, o);
        let norm = if o.normalized { "normalized" } else { "unnormalized" };
        self.boundary_checks
            .push((format!("{label} {norm}"), cx.boundary_squares_vanish()?));
        let table = homology_dims(&cx);
        self.recorded.push(Recorded {
            label,
            space: e.clone(),
            algebra: a.clone(),
            coefficients: c.clone(),
            options: o.clone(),
            table: table.clone(),
        });
        Ok(table)
    }

    fn timed(
        &mut self,
        id: u8,
        title: &'static str,
        budget: Duration,
        f: impl FnOnce(&mut Suite) -> Result<(bool, String)>,
    ) -> CriterionResult {
        let start = Instant::now();
        let outcome = f(self);
        let elapsed = start.elapsed();
        let (passed, mut detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = elapsed <= budget;
        if !in_time {
            detail.push_str(&format!("; over the {}s budget", budget.as_secs()));
        }
        CriterionResult {
            id,
            title,
            passed: passed && in_time,
            detail,
            elapsed,
        }
    }

    pub fn criterion_1(&mut self) -> CriterionResult {
        self.timed(1, "non-stability counterexample", Duration::from_secs(120), |s| {
            let mut ok = true;
            let mut detail = Vec::new();
            for p in [3, 5] {
                let a = truncated_poly(field(p), 2)?;
                let o = LodayOptions::new(2);
                let torus = s.table(&expr(TORUS), &a, &Coefficients::Unit, &o)?;
                let wedge = s.table(&expr(WEDGE), &a, &Coefficients::Unit, &o)?;
                let raw = s.table(&expr(TORUS), &a, &Coefficients::Unit, &o.clone().unnormalized())?;
                let report = compare_tables(TORUS, WEDGE, a.label(), torus.clone(), wedge.clone())?;
                ok &= torus.totals() == [1, 2, 3]
                    && wedge.totals() == [1, 2, 4]
                    && raw.totals() == [1, 2, 3]
                    && matches!(
                        report.verdict,
                        Verdict::FirstDiscrepancy {
                            degree: 2,
                            left_total: 3,
                            right_total: 4,
                            ..
                        }
                    );
                detail.push(format!(
                    "F{p}: torus {} (unnormalized {}) vs wedge {}",
                    fmt_totals(&torus),
                    fmt_totals(&raw),
                    fmt_totals(&wedge)
                ));
            }
            Ok((ok, detail.join("; ")))
        })
    }

    pub fn criterion_2(&mut self) -> CriterionResult {
        self.timed(2, "characteristic two agreement", Duration::from_secs(60), |s| {
            let a = truncated_poly(field(2), 2)?;
            let o = LodayOptions::new(2);
            let torus = s.table(&expr(TORUS), &a, &Coefficients::Unit, &o)?;
            let wedge = s.table(&expr(WEDGE), &a, &Coefficients::Unit, &o)?;
            let report = compare_tables(TORUS, WEDGE, a.label(), torus.clone(), wedge.clone())?;
            let ok = torus.total(2) == 4 && wedge.total(2) == 4 && report.verdict == Verdict::Agree { through: 2 };
            Ok((
                ok,
                format!(
                    "F2: torus {} vs wedge {}, {}",
                    fmt_totals(&torus),
                    fmt_totals(&wedge),
                    report.verdict
                ),
            ))
        })
    }

    pub fn criterion_3(&mut self) -> CriterionResult {
        self.timed(3, "circle closed form", Duration::from_secs(120), |s| {
            let mut ok = true;
            let mut detail = Vec::new();
            for p in [2, 3, 5] {
                let a = truncated_poly(field(p), 2)?;
                let t = s.table(&SpaceExpr::S1, &a, &Coefficients::Unit, &LodayOptions::new(4))?;
                ok &= t.totals() == [1, 1, 1, 1, 1];
                detail.push(format!("F{p}: {}", fmt_totals(&t)));
            }
            Ok((ok, detail.join("; ")))
        })
    }

    pub fn criterion_4(&mut self) -> CriterionResult {
        self.timed(4, "two-sphere table", Duration::from_secs(30), |s| {
            let a = truncated_poly(field(3), 2)?;
            let o = LodayOptions::new(2);
            let smash = s.table(&expr("sphere(2)"), &a, &Coefficients::Unit, &o)?;
            let simplex = s.table(&expr("simplexsphere(2)"), &a, &Coefficients::Unit, &o)?;
            let ok = smash.totals() == [1, 0, 1] && simplex.totals() == [1, 0, 1] && smash.dims == simplex.dims;
            Ok((
                ok,
                format!(
                    "F3: smash model {}, simplex model {}",
                    fmt_totals(&smash),
                    fmt_totals(&simplex)
                ),
            ))
        })
    }

    fn bicomplex_check(&mut self, a: &GradedAlgebra) -> Result<(HomologyTable, HomologyTable, bool)> {
        let b = torus_bicomplex(a, &Coefficients::Unit, 2, None)?;
        let mut squares = b.differentials_commute()?;
        for k in 2..=3 {
            for w in 0..=b.max_weight() {
                squares &= b.total_boundary(k - 1, w)?.mul(&b.total_boundary(k, w)?)?.is_zero();
            }
        }
        self.boundary_checks
            .push((format!("torus bicomplex {}/{}", a.label(), a.field()), squares));
        let oracle = total_homology(&b)?;
        let diagonal = self.table(&expr(TORUS), a, &Coefficients::Unit, &LodayOptions::new(2))?;
        let same = oracle.dims == diagonal.dims && oracle.max_weight == diagonal.max_weight;
        Ok((oracle, diagonal, same))
    }

    pub fn criterion_5(&mut self) -> CriterionResult {
        self.timed(5, "bicomplex oracle equivalence", Duration::from_secs(120), |s| {
            let mut ok = true;
            let mut detail = Vec::new();
            for p in [3, 2] {
                let (oracle, diagonal, same) = s.bicomplex_check(&truncated_poly(field(p), 2)?)?;
                ok &= same;
                detail.push(format!(
                    "F{p}: bicomplex {} vs product {} ({} blocks {})",
                    fmt_totals(&oracle),
                    fmt_totals(&diagonal),
                    diagonal.dims.len(),
                    if same { "equal" } else { "differ" }
                ));
            }
            Ok((ok, detail.join("; ")))
        })
    }

    pub fn criterion_6(&mut self) -> CriterionResult {
        self.timed(6, "rational discrepancy", Duration::from_secs(120), |s| {
            let a = truncated_poly(FieldSpec::rationals(), 2)?;
            let wedge = s.table(&expr(WEDGE), &a, &Coefficients::Unit, &LodayOptions::new(2))?;
            let (oracle, torus, same) = s.bicomplex_check(&a)?;
            let ok = same && torus.total(2) != wedge.total(2);
            Ok((
                ok,
                format!(
                    "Q: torus {} (bicomplex {}) vs wedge {}",
                    fmt_totals(&torus),
                    fmt_totals(&oracle),
                    fmt_totals(&wedge)
                ),
            ))
        })
    }

    pub fn criterion_7(&mut self) -> CriterionResult {
        self.timed(7, "smooth algebra decomposes products", Duration::from_secs(120), |s| {
            let a = polynomial(field(3));
            let o = LodayOptions::new(2).weight_bound(3);
            let s1 = SpaceExpr::S1;
            let left_e = SpaceExpr::prod(s1.clone(), s1.clone());
            let right_e = SpaceExpr::wedge(
                SpaceExpr::wedge(s1.clone(), s1.clone()),
                SpaceExpr::smash(s1.clone(), s1.clone()),
            );
            let left = s.table(&left_e, &a, &Coefficients::Unit, &o)?;
            let right = s.table(&right_e, &a, &Coefficients::Unit, &o)?;
            let report = compare_tables(&left_e.to_string(), &right_e.to_string(), a.label(), left, right)?;
            let driver = product_decomposition_check(&s1, &s1, &a, &Coefficients::Unit, &o)?;
            let ok = report.verdict == Verdict::Agree { through: 2 } && driver == report;
            let blocks = report.pairs().len();
            Ok((
                ok,
                format!("F3[t], weights <= 3: {} over {blocks} nonzero blocks", report.verdict),
            ))
        })
    }

    pub fn criterion_8(&mut self) -> CriterionResult {
        self.timed(8, "normalization invariance", Duration::from_secs(600), |s| {
            let snapshot: Vec<(
                String,
                SpaceExpr,
                GradedAlgebra,
                Coefficients,
                LodayOptions,
                HomologyTable,
            )> = s
                .recorded
                .iter()
                .map(|r| {
                    (
                        r.label.clone(),
                        r.space.clone(),
                        r.algebra.clone(),
                        r.coefficients.clone(),
                        r.options.clone(),
                        r.table.clone(),
                    )
                })
                .collect();
            let mut seen = std::collections::BTreeSet::new();
            let mut failures = Vec::new();
            let mut checked = 0;
            for (label, e, a, c, o, table) in snapshot {
                if !seen.insert((label.clone(), o.normalized)) {
                    continue;
                }
                let flipped = LodayOptions {
                    normalized: !o.normalized,
                    ..o.clone()
                };
                let other = s.table(&e, &a, &c, &flipped)?;
                checked += 1;
                if other.dims != table.dims {
                    failures.push(label);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
            let mut random = Vec::new();
            while random.len() < RANDOM_INPUTS {
                let (e, a, c, d) = random_input(&mut rng);
                let o = LodayOptions::new(d);
                let label = input_label(&e, &a, &c, &o);
                if random.contains(&label) {
                    continue;
                }
                let x = e.build(d + 1)?;
                if unnormalized_top_size(&x, &a, &c, d) > RANDOM_SIZE_LIMIT {
                    continue;
                }
                let n = s.table_of(&e, &x, &a, &c, &o)?;
                let u = s.table_of(&e, &x, &a, &c, &o.clone().unnormalized())?;
                if n.dims != u.dims {
                    failures.push(label.clone());
                }
                random.push(label);
            }
            let detail = format!(
                "{checked} acceptance inputs and {} random inputs ({}); {} mismatches{}",
                random.len(),
                random.join(", "),
                failures.len(),
                if failures.is_empty() {
                    String::new()
                } else {
                    format!(": {}", failures.join(", "))
                }
            );
            Ok((failures.is_empty(), detail))
        })
    }

    pub fn criterion_9(&mut self) -> CriterionResult {
        self.timed(9, "boundary squares vanish", Duration::from_secs(600), |s| {
            let bad: Vec<&str> = s
                .boundary_checks
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(l, _)| l.as_str())
                .collect();
            Ok((
                bad.is_empty() && !s.boundary_checks.is_empty(),
                format!(
                    "{} complexes checked, {} failures{}",
                    s.boundary_checks.len(),
                    bad.len(),
                    if bad.is_empty() {
                        String::new()
                    } else {
                        format!(": {}", bad.join(", "))
                    }
                ),
            ))
        })
    }

    pub fn criterion_10(&mut self) -> CriterionResult {
        self.timed(10, "Kuenneth convolution", Duration::from_secs(300), |s| {
            let a = truncated_poly(field(3), 2)?;
            let o = LodayOptions::new(2);
            let mut ok = true;
            let mut detail = Vec::new();
            for (x, y) in [("S1", "S1"), ("S1", "sphere(2)"), ("sphere(2)", "sphere(2)")] {
                let hx = s.table(&expr(x), &a, &Coefficients::Unit, &o)?;
                let hy = s.table(&expr(y), &a, &Coefficients::Unit, &o)?;
                let w = SpaceExpr::wedge(expr(x), expr(y));
                let direct = s.table(&w, &a, &Coefficients::Unit, &o)?;
                let predicted = wedge_kunneth_dims(&hx, &hy, 2)?;
                let same = direct.dims == predicted.dims;
                ok &= same;
                detail.push(format!(
                    "{w}: direct {} vs convolution {}{}",
                    fmt_totals(&direct),
                    fmt_totals(&predicted),
                    if same { "" } else { " (blocks differ)" }
                ));
            }
            Ok((ok, detail.join("; ")))
        })
    }

    pub fn criterion_11(&mut self) -> CriterionResult {
        self.timed(11, "deterministic reports", Duration::from_secs(120), |_| {
            let cfg = RunConfig {
                command: Command::Compare,
                spaces: vec![expr(TORUS), expr(WEDGE)],
                algebra: AlgebraSpec::TruncPoly(2),
                field: field(3),
                coeff: CoeffSpec::Unit,
                max_degree: 2,
                weight_bound: None,
                normalized: true,
                format: Format::Json,
                max_basis: loday_core::loday::DEFAULT_MAX_BASIS,
            };
            let run = |c: &RunConfig| crate::run(c).map_err(|e| loday_core::Error::Internal(e.to_string()));
            let first = run(&cfg)?;
            let second = run(&cfg)?;
            let ok = first == second && first.exit_code == crate::EXIT_DISCREPANCY;
            Ok((
                ok,
                format!(
                    "{} bytes, {}, exit code {}",
                    first.report.len(),
                    if first.report == second.report {
                        "identical"
                    } else {
                        "different"
                    },
                    first.exit_code
                ),
            ))
        })
    }
}

fn random_expr(rng: &mut ChaCha8Rng, budget: usize) -> SpaceExpr {
    if budget == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => SpaceExpr::S1,
            1 => SpaceExpr::Sphere(2),
            2 => SpaceExpr::SimplexSphere(2),
            _ => SpaceExpr::Pt,
        };
    }
    let rest = budget - 1;
    match rng.gen_range(0..4) {
        0 => SpaceExpr::susp(random_expr(rng, rest)),
        k => {
            let left = rng.gen_range(0..=rest);
            let a = random_expr(rng, left);
            let b = random_expr(rng, rest - left);
            match k {
                1 => SpaceExpr::wedge(a, b),
                2 => SpaceExpr::prod(a, b),
                _ => SpaceExpr::smash(a, b),
            }
        }
    }
}

fn random_input(rng: &mut ChaCha8Rng) -> (SpaceExpr, GradedAlgebra, Coefficients, usize) {
    let e = random_expr(rng, 2);
    let f = match rng.gen_range(0..4) {
        0 => field(2),
        1 => field(3),
        2 => field(5),
        _ => FieldSpec::rationals(),
    };
    let a = match rng.gen_range(0..3) {
        0 => truncated_poly(f, 2).expect("valid truncation"),
        1 => truncated_poly(f, 3).expect("valid truncation"),
        _ => exterior(f),
    };
    let c = if rng.gen_bool(0.5) {
        Coefficients::Unit
    } else {
        Coefficients::SelfAlgebra
    };
    (e, a, c, rng.gen_range(0..=2))
}

/// Number of unnormalized labelings at level `d + 1`, over the weights the
/// complex would assemble.
fn unnormalized_top_size(x: &PointedSimplicialSet, a: &GradedAlgebra, c: &Coefficients, d: usize) -> u128 {
    let max_a = a.max_weight().expect("finite algebra");
    let coeff_dims: Vec<u128> = match c {
        Coefficients::Unit => vec![1],
        _ => (0..=max_a).map(|w| a.weight_dim(w) as u128).collect(),
    };
    let max_c = coeff_dims.len() as u32 - 1;
    let limit = (x.non_base(d).len() as u32 * max_a + max_c) as usize;
    let a_dims: Vec<u128> = (0..=max_a).map(|w| a.weight_dim(w) as u128).collect();
    let mut dist = vec![0u128; limit + 1];
    for (w, &n) in coeff_dims.iter().enumerate().take(limit + 1) {
        dist[w] = n;
    }
    for _ in 0..x.non_base(d + 1).len() {
        let mut next = vec![0u128; limit + 1];
        for (w, &n) in dist.iter().enumerate() {
            if n == 0 {
                continue;
            }
            for (k, &m) in a_dims.iter().enumerate() {
                if w + k <= limit {
                    next[w + k] = next[w + k].saturating_add(n.saturating_mul(m));
                }
            }
        }
        dist = next;
    }
    dist.iter().fold(0u128, |acc, &n| acc.saturating_add(n))
}

/// Runs every criterion in order; criterion 9 covers the complexes built by
/// the ones before it.
pub fn run_all() -> Vec<CriterionResult> {
    let mut s = Suite::new();
    vec![
        s.criterion_1(),
        s.criterion_2(),
        s.criterion_3(),
        s.criterion_4(),
        s.criterion_5(),
        s.criterion_6(),
        s.criterion_7(),
        s.criterion_8(),
        s.criterion_9(),
        s.criterion_10(),
        s.criterion_11(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use loday_core::simplicial::circle;

    #[test]
    fn size_estimate_counts_labelings() {
        let a = truncated_poly(field(3), 2).unwrap();
        // level 3 of the circle has 3 slots; weights stop at 2 (plus 1 for self)
        assert_eq!(unnormalized_top_size(&circle(3), &a, &Coefficients::Unit, 2), 7);
        assert_eq!(unnormalized_top_size(&circle(3), &a, &Coefficients::SelfAlgebra, 2), 15);
    }

    #[test]
    fn random_expressions_stay_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert!(random_expr(&mut rng, 2).combinators() <= 2);
        }
    }
}
