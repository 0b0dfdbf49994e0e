#![allow(clippy::needless_range_loop)]

//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime and enforcing the stated budget.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use conetract::bohr;
use conetract::extensions::{
    self, complete, extend, find_positive_direction, Budget, ClosureTag, PExponent,
};
use conetract::index::{FreqSet, MultiIndex};
use conetract::lattice::{
    affine_lattice, contains, enumerate_orthant, strictly_positive_direction, EnumerationTag,
};
use conetract::numerics::{
    lp_norm_estimate, quadratic_coefficient_check, tn_growth_table, verify_line_lemma,
    verify_plane_lemma, GridSpec,
};
use conetract::polyoracle::{extension_support_oracle, witness_search_even, LaurentPoly, WitnessGrid};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn set(rows: &[&[i64]]) -> FreqSet {
    FreqSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn mi(v: Vec<i64>) -> MultiIndex {
    MultiIndex::new(v).unwrap()
}

fn corner_trio() -> FreqSet {
    set(&[&[3, 0, 0], &[0, 3, 0], &[1, 1, 1]])
}

fn skew_quad(n: i64) -> FreqSet {
    set(&[
        &[n, 1, 0, 1],
        &[n + 1, 0, 1, 0],
        &[0, 0, n + 1, 0],
        &[0, 0, 0, n + 1],
    ])
}

fn finish(criterion: u32, start: Instant, budget_seconds: f64, detail: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion {criterion}: PASS in {elapsed:.3} s ({detail})");
    assert!(
        elapsed < budget_seconds,
        "criterion {criterion} exceeded its {budget_seconds} s budget: {elapsed:.3} s"
    );
}

#[test]
fn criterion_01_corner_trio_regression() {
    let start = Instant::now();
    let gamma = corner_trio();
    assert_eq!(extend(&gamma, 1).unwrap(), gamma);
    let expanded = set(&[&[3, 0, 0], &[0, 3, 0], &[1, 1, 1], &[0, 0, 3]]);
    assert_eq!(extend(&gamma, 2).unwrap(), expanded);
    let enumeration = enumerate_orthant(&affine_lattice(&gamma), None).unwrap();
    assert_eq!(enumeration.tag, EnumerationTag::Finite);
    assert_eq!(enumeration.points.len(), 4);
    assert_eq!(&enumeration.points[..], expanded.points());
    for p in ["2", "4"] {
        let verdict = extensions::is_contractive_projection_set(
            &gamma,
            &PExponent::parse(p).unwrap(),
        )
        .unwrap();
        assert!(verdict.contractive, "p = {p}");
    }
    for p in ["6", "3", "inf"] {
        let verdict = extensions::is_contractive_projection_set(
            &gamma,
            &PExponent::parse(p).unwrap(),
        )
        .unwrap();
        assert!(!verdict.contractive, "p = {p}");
        assert_eq!(verdict.evidence, Some(mi(vec![0, 0, 3])), "p = {p}");
    }
    finish(1, start, 1.0, "extensions, enumeration and verdicts exact");
}

#[test]
fn criterion_02_skew_quad_family_regression() {
    let start = Instant::now();
    for n in 2..=5i64 {
        let gamma = skew_quad(n);
        assert_eq!(extend(&gamma, n as u32).unwrap(), gamma, "n = {n}");
        let extra = mi(vec![0, n + 1, 1, 0]);
        let above = extend(&gamma, n as u32 + 1).unwrap();
        assert!(above.contains(&extra), "n = {n}");
        let mut expected = gamma.points().to_vec();
        expected.push(extra);
        let expected = FreqSet::new(expected).unwrap();
        assert_eq!(above, expected, "n = {n}");
        let lat = affine_lattice(&gamma);
        let enumeration = enumerate_orthant(&lat, None).unwrap();
        assert_eq!(enumeration.tag, EnumerationTag::Finite, "n = {n}");
        assert_eq!(&enumeration.points[..], expected.points(), "n = {n}");
        // Independent brute-force scan of a covering box.
        let bound = 3 * (n + 1);
        let mut cursor = vec![0i64; 4];
        let mut found = Vec::new();
        'scan: loop {
            let candidate = mi(cursor.clone());
            if contains(&lat, &candidate).unwrap() {
                found.push(candidate);
            }
            for k in 0..4 {
                cursor[k] += 1;
                if cursor[k] <= bound {
                    continue 'scan;
                }
                cursor[k] = 0;
            }
            break;
        }
        found.sort();
        assert_eq!(found, enumeration.points, "box scan, n = {n}");
    }
    finish(2, start, 10.0, "levels n = 2..5 with brute-force box scans");
}

#[test]
fn criterion_03_full_coset_certificates() {
    let start = Instant::now();
    let quad = set(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]);
    assert_eq!(extend(&quad, 1).unwrap(), quad);
    let closure = complete(&quad, 2, &Budget::default()).unwrap();
    assert_eq!(closure.tag, ClosureTag::FullCoset);
    let (a, b) = closure.pair.unwrap();
    assert_eq!(b.sub(&a).unwrap(), mi(vec![1, 1, 1]));

    let quint = set(&[
        &[3, 1, 0, 1],
        &[4, 0, 1, 0],
        &[0, 0, 4, 0],
        &[0, 0, 0, 4],
        &[0, 4, 0, 0],
    ]);
    assert_eq!(extend(&quint, 3).unwrap(), quint);
    let closure = complete(&quint, 4, &Budget::default()).unwrap();
    assert_eq!(closure.tag, ClosureTag::FullCoset);
    let (a, b) = closure.pair.unwrap();
    assert!(b.sub(&a).unwrap().is_strictly_positive());
    finish(3, start, 5.0, "certified pairs for both full-coset fixtures");
}

#[test]
fn criterion_04_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
    let mut count = 0;
    while count < 100 {
        let dim = rng.gen_range(1..=4);
        let len = rng.gen_range(1..=5);
        let points: Vec<MultiIndex> = (0..len)
            .map(|_| mi((0..dim).map(|_| rng.gen_range(0..=6)).collect()))
            .collect();
        let Ok(gamma) = FreqSet::new(points) else {
            continue;
        };
        let n = rng.gen_range(0..=3);
        count += 1;
        let combinatorial = extend(&gamma, n).unwrap();
        let oracle = extension_support_oracle(&gamma, n).unwrap();
        assert_eq!(combinatorial, oracle, "instance {count}: {gamma} at n = {n}");
    }
    finish(4, start, 60.0, "100 random instances, both routes identical");
}

#[test]
fn criterion_05_exact_witnesses() {
    let start = Instant::now();
    let cases = [
        (corner_trio(), 2u32, mi(vec![0, 0, 3]), 64usize),
        (skew_quad(2), 3u32, mi(vec![0, 3, 1, 0]), 32usize),
    ];
    for (gamma, n, lam, grid_points) in &cases {
        let report = witness_search_even(gamma, *n, lam, &WitnessGrid::default())
            .unwrap()
            .expect("witness must exist when the extension grows");
        assert!(report.ratio_p > BigRational::one(), "exact ratio above one");
        // Independent quadrature verification of the same ratio.
        let spec = GridSpec::new(*grid_points, gamma.dim()).unwrap();
        let h = report
            .f
            .add(&LaurentPoly::monomial(lam.clone(), report.c.clone()))
            .unwrap();
        let p = PExponent::even(n + 1).unwrap();
        let nf = lp_norm_estimate(&report.f, &p, &spec).unwrap();
        let nh = lp_norm_estimate(&h, &p, &spec).unwrap();
        let quadrature = (nf.refined / nh.refined).powi(2 * (*n as i32 + 1));
        let exact = report.ratio_p.to_f64().unwrap();
        let relative = (quadrature - exact).abs() / exact;
        assert!(
            relative < 1e-6,
            "quadrature {quadrature} vs exact {exact}: relative {relative}"
        );
    }
    finish(5, start, 30.0, "exact ratios above one, quadrature within 1e-6");
}

#[test]
fn criterion_06_lemma_verifiers() {
    let start = Instant::now();
    let eps = 1e-2;
    for p in ["1", "3/2", "3", "4", "5"] {
        let p = PExponent::parse(p).unwrap();
        assert!(verify_line_lemma(&p, eps).unwrap(), "line at {p}");
        assert!(verify_plane_lemma(&p, eps).unwrap(), "plane at {p}");
    }
    assert!(verify_line_lemma(&PExponent::Infinity, eps).unwrap());
    // Sup norm of the two-variable extremal competitor.
    let f = LaurentPoly::from_terms(
        2,
        [
            (mi(vec![0, 0]), BigRational::one()),
            (mi(vec![1, 0]), BigRational::one()),
            (mi(vec![0, 1]), BigRational::one()),
            (mi(vec![1, 1]), -BigRational::one()),
        ],
    )
    .unwrap();
    let est = lp_norm_estimate(&f, &PExponent::Infinity, &GridSpec::new(512, 2).unwrap()).unwrap();
    assert!(
        (est.value - 2.0 * 2f64.sqrt()).abs() < 1e-3,
        "sup norm {}",
        est.value
    );
    let (fitted, predicted) = quadratic_coefficient_check(4.0, 0.0).unwrap();
    assert!((predicted - 4.0).abs() < 1e-12);
    assert!((fitted - 4.0).abs() < 1e-3, "fitted {fitted}");
    finish(6, start, 60.0, "line/plane verifiers, sup value, quadratic fit");
}

#[test]
fn criterion_07_restriction_property_table() {
    let start = Instant::now();
    // Independent restatement of the classification clauses.
    fn expected(d: u32, k: u32, p: &PExponent) -> bool {
        let even_k = match p {
            PExponent::Even(k) => Some(*k),
            _ => None,
        };
        if d == 2 || k == 1 {
            even_k != Some(1)
        } else if (d == 3 && k == 3) || k == 2 {
            even_k != Some(1) && even_k != Some(2)
        } else {
            even_k.is_none()
        }
    }
    for d in 1..=6u32 {
        for k in 1..=d {
            for p in ["2", "3", "4", "6", "8", "inf"] {
                let p = PExponent::parse(p).unwrap();
                assert_eq!(
                    extensions::restriction_property(d, k, &p).unwrap(),
                    expected(d, k, &p),
                    "(d, k, p) = ({d}, {k}, {p})"
                );
            }
        }
    }
    let spot = |d, k, p: &str| {
        extensions::restriction_property(d, k, &PExponent::parse(p).unwrap()).unwrap()
    };
    assert!(spot(2, 1, "4"));
    assert!(!spot(3, 2, "4"));
    assert!(!spot(3, 3, "4"));
    assert!(!spot(4, 3, "6"));
    assert!(spot(4, 3, "3"));
    finish(7, start, 5.0, "full grid d <= 6 plus spot values");
}

#[test]
fn criterion_08_closure_property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC105);

    // Collinear triples in two variables: the 1-completion reaches the full
    // coset restriction whenever that is certifiable.
    let mut count = 0;
    while count < 100 {
        let base = [rng.gen_range(0..=8i64), rng.gen_range(0..=8i64)];
        let dir = [rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64)];
        if dir == [0, 0] {
            continue;
        }
        let steps = [0i64, rng.gen_range(1..=2), rng.gen_range(3..=4)];
        let points: Vec<MultiIndex> = steps
            .iter()
            .map(|&k| mi(vec![base[0] + k * dir[0], base[1] + k * dir[1]]))
            .collect();
        if points
            .iter()
            .any(|p| p.entries().iter().any(|&e| !(0..=8).contains(&e)))
        {
            continue;
        }
        let Ok(tee) = FreqSet::new(points) else {
            continue;
        };
        if tee.len() != 3 {
            continue;
        }
        count += 1;
        let lat = affine_lattice(&tee);
        let enumeration = enumerate_orthant(&lat, Some(600)).unwrap();
        let budget = Budget {
            max_rounds: 16,
            max_coord: 512,
        };
        let closure = complete(&tee, 1, &budget).unwrap();
        match enumeration.tag {
            EnumerationTag::Finite => {
                assert_eq!(closure.tag, ClosureTag::FixedPoint, "{tee}");
                assert_eq!(closure.set.points(), &enumeration.points[..], "{tee}");
            }
            _ => {
                if strictly_positive_direction(&lat).is_some() {
                    assert_eq!(closure.tag, ClosureTag::FullCoset, "{tee}");
                } else {
                    // An axis-parallel progression cannot be pair-certified;
                    // the honest outcome is exhaustion with the interior of
                    // the attained frontier completely filled.
                    assert_eq!(closure.tag, ClosureTag::Exhausted, "{tee}");
                    let frontier = closure.set.coordinate_max();
                    for q in &enumeration.points {
                        let interior = q
                            .entries()
                            .iter()
                            .zip(&frontier)
                            .all(|(&e, &m)| e <= m / 2);
                        if interior {
                            assert!(closure.set.contains(q), "{tee} misses interior {q}");
                        }
                    }
                }
            }
        }
    }

    // Two-dimensional sets in three variables under 2-completion: never a
    // strict proper fixed point different from the full restriction.
    let mut count = 0;
    while count < 100 {
        let len = rng.gen_range(3..=4);
        let points: Vec<MultiIndex> = (0..len)
            .map(|_| mi((0..3).map(|_| rng.gen_range(0..=5)).collect()))
            .collect();
        let Ok(tee) = FreqSet::new(points) else {
            continue;
        };
        let lat = affine_lattice(&tee);
        if lat.rank() != 2 {
            continue;
        }
        count += 1;
        let enumeration = enumerate_orthant(&lat, Some(600)).unwrap();
        let budget = Budget {
            max_rounds: 16,
            max_coord: 200,
        };
        let closure = complete(&tee, 2, &budget).unwrap();
        match enumeration.tag {
            EnumerationTag::Finite => {
                assert_eq!(closure.tag, ClosureTag::FixedPoint, "{tee}");
                assert_eq!(closure.set.points(), &enumeration.points[..], "{tee}");
            }
            _ => {
                if strictly_positive_direction(&lat).is_some() {
                    assert_eq!(closure.tag, ClosureTag::FullCoset, "{tee}");
                } else {
                    assert_eq!(closure.tag, ClosureTag::Exhausted, "{tee}");
                    for q in closure.set.iter() {
                        assert!(contains(&lat, q).unwrap() && q.is_orthant());
                    }
                }
            }
        }
    }

    // Full-dimensional quadruples in three variables: a strictly positive
    // direction from any base point is always found.
    let mut count = 0;
    while count < 100 {
        let points: Vec<MultiIndex> = (0..4)
            .map(|_| mi((0..3).map(|_| rng.gen_range(0..=5)).collect()))
            .collect();
        let Ok(tee) = FreqSet::new(points) else {
            continue;
        };
        if tee.len() != 4 || affine_lattice(&tee).rank() != 3 {
            continue;
        }
        count += 1;
        let alpha = tee.points()[rng.gen_range(0..4)].clone();
        let budget = Budget {
            max_rounds: 16,
            max_coord: 200,
        };
        let beta = find_positive_direction(&tee, &alpha, 2, &budget)
            .unwrap()
            .unwrap_or_else(|| panic!("no positive direction for {tee} at {alpha}"));
        assert!(beta.sub(&alpha).unwrap().is_strictly_positive());
    }

    finish(8, start, 120.0, "three suites, 100 instances each, zero failures");
}

#[test]
fn criterion_09_growth_table() {
    let start = Instant::now();
    let p6 = PExponent::parse("6").unwrap();
    let probe = tn_growth_table(1, &p6, 1).unwrap();
    assert!(probe.delta_p > 0.0, "defect {}", probe.delta_p);
    // Smallest block count whose lower bound clears 10.
    let delta = probe.delta_p;
    let mut m_star = 1u32;
    while (1.0 + delta).powi(m_star as i32) / (m_star as f64 * m_star as f64) <= 10.0 {
        m_star += 1;
        assert!(m_star < 10_000_000, "defect too small to clear 10");
    }
    let table = tn_growth_table(1, &p6, m_star).unwrap();
    let (last_m, last_value) = *table.rows.last().unwrap();
    assert_eq!(last_m, m_star);
    assert!(last_value > 10.0, "row {last_value} at m = {m_star}");

    // The bounded range is refused with the range in the message.
    for p in ["2", "4", "6"] {
        let err = tn_growth_table(2, &PExponent::parse(p).unwrap(), 4).unwrap_err();
        let message = err.to_string();
        assert!(
            message.contains("2, 4, ..., 6"),
            "refusal message should state the bounded range: {message}"
        );
    }
    finish(
        9,
        start,
        60.0,
        &format!("delta_p = {delta:.3e}, bound clears 10 at m = {m_star}"),
    );
}

#[test]
fn criterion_10_bohr_layer() {
    let start = Instant::now();
    let gamma = [8u64, 27, 30];
    let lifted = corner_trio();
    for p in ["2", "4", "6"] {
        let p = PExponent::parse(p).unwrap();
        let through_lift = bohr::classify_dirichlet_set(&gamma, &p).unwrap();
        let direct = extensions::is_contractive_projection_set(&lifted, &p).unwrap();
        assert_eq!(through_lift.contractive, direct.contractive, "p = {p}");
        match (&through_lift.evidence, &direct.evidence) {
            (Some(n), Some(idx)) => {
                assert_eq!(
                    bohr::bohr_lift_integer(*n).unwrap().entries(),
                    &idx.entries()[..bohr::bohr_lift_integer(*n).unwrap().dim()],
                );
                assert_eq!(*n, 125);
            }
            (None, None) => {}
            other => panic!("evidence mismatch at p = {p}: {other:?}"),
        }
    }
    // The slice projection agrees with extracting the coefficient of w^m
    // from the generating polynomial sum a_n w^{Omega(n)} n^{-s}.
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B2);
    for _ in 0..20 {
        let terms: Vec<(u64, BigRational)> = (0..rng.gen_range(1..=12))
            .map(|_| {
                (
                    rng.gen_range(1..=500u64),
                    BigRational::new(
                        rng.gen_range(-9..=9i64).into(),
                        rng.gen_range(1..=9i64).into(),
                    ),
                )
            })
            .collect();
        let f = bohr::DirichletPoly::from_terms(terms.clone()).unwrap();
        // Independent route: exponents of w collected term by term.
        let mut by_weight: std::collections::BTreeMap<u32, Vec<(u64, BigRational)>> =
            Default::default();
        for (n, c) in &terms {
            if c.to_f64() == Some(0.0) && c == &BigRational::from_integer(0.into()) {
                continue;
            }
            let weight: i64 = bohr::bohr_lift_integer(*n).unwrap().entries().iter().sum();
            by_weight
                .entry(weight as u32)
                .or_default()
                .push((*n, c.clone()));
        }
        for m in 0..=10u32 {
            let slice = bohr::omega_projection(&f, m).unwrap();
            let want =
                bohr::DirichletPoly::from_terms(by_weight.get(&m).cloned().unwrap_or_default())
                    .unwrap();
            assert_eq!(slice, want, "slice m = {m}");
        }
    }
    finish(10, start, 5.0, "lift classification and slice projections agree");
}
