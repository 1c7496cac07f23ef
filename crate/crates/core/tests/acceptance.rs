//! Acceptance suite: one test per criterion, each asserting the exact
//! expected values (and the stated runtime ceiling where one applies) and
//! printing a PASS line. Run with `-- --nocapture` to see the lines.

use effint::cyclo;
use effint::darboux::{self, BoundProfile, DarbouxError, SearchOutcome};
use effint::foliation::{self, VectorField};
use effint::groebner;
use effint::orbifold::{self, OrbifoldData, TripleConstraint};
use effint::poly::{parse_poly, rat, rat_int, Degree, Monomial, Poly, Rational, TermOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn p2(s: &str) -> Poly {
    parse_poly(s, 2).unwrap()
}

fn vf(p: &str, q: &str) -> VectorField {
    VectorField::new(p2(p), p2(q)).unwrap()
}

fn pass(criterion: u32, elapsed: Duration, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: PASS ({:.3}s) {detail}",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_1_orbifold_tables() {
    let start = Instant::now();
    let expected = [
        ((2, 3, 7), 42),
        ((2, 3, 8), 24),
        ((2, 4, 5), 20),
        ((2, 3, 9), 18),
        ((2, 3, 10), 18),
        ((2, 3, 11), 18),
        ((3, 3, 4), 12),
        ((4, 4, 4), 4),
    ];
    for ((o1, o2, o3), k) in expected {
        assert_eq!(
            orbifold::k_min_triple(o1, o2, o3),
            k,
            "k_min({o1},{o2},{o3})"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    pass(1, elapsed, "eight k_min table values exact");
}

#[test]
fn criterion_2_triple_scans() {
    let start = Instant::now();
    let all = orbifold::scan_triples(TripleConstraint::All, 12);
    assert_eq!(all.worst, ((2, 3, 7), 42));
    assert!(all.monotonicity_ok);
    let lcm = orbifold::scan_triples(TripleConstraint::Lcm, 12);
    assert!(lcm.worst.1 <= 8, "lcm worst {:?}", lcm.worst);
    assert!(lcm.monotonicity_ok);
    for t in [(2, 6, 6), (2, 8, 8), (3, 4, 12), (3, 6, 6), (3, 9, 9)] {
        let k = lcm.table.iter().find(|(tr, _)| *tr == t).unwrap().1;
        assert!(k <= 6, "triple {t:?} has k_min {k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    pass(
        2,
        elapsed,
        &format!(
            "all-scan worst ((2,3,7), 42) over {} triples; lcm-scan worst {:?}",
            all.table.len(),
            lcm.worst
        ),
    );
}

#[test]
fn criterion_3_sumset_plain() {
    let start = Instant::now();
    let mut worst = 0;
    for m in 3..=30u64 {
        let rep = cyclo::verify_speyer(m).unwrap();
        assert!(rep.worst_n <= 6, "worst_N({m}) = {}", rep.worst_n);
        if m == 6 {
            assert_eq!(rep.worst_n, 6);
        }
        if m == 4 {
            assert_eq!(rep.worst_n, 4);
        }
        worst = worst.max(rep.worst_n);
    }
    assert_eq!(worst, 6);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    pass(3, elapsed, "worst_N <= 6 on 3..=30, sharp at m = 6, 4 at m = 4");
}

#[test]
fn criterion_4_sumset_lambda() {
    let start = Instant::now();
    let mut worst = 0;
    for m in 3..=30u64 {
        if cyclo::euler_phi(m) < 4 {
            continue;
        }
        let rep = cyclo::verify_speyer2(m).unwrap();
        assert!(rep.worst_n <= 12, "worst_N({m}) = {}", rep.worst_n);
        if m == 12 {
            assert_eq!(rep.worst_n, 12);
        }
        if m == 5 {
            assert_eq!(rep.worst_n, 5);
        }
        worst = worst.max(rep.worst_n);
    }
    assert_eq!(worst, 12);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        4,
        elapsed,
        "lambda-variant worst_N <= 12 on m <= 30, sharp at m = 12, 5 at m = 5",
    );
}

#[test]
fn criterion_5_cauchy_davenport_fuzz() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let primes = [3u64, 5, 7, 11, 13];
    for case in 0..1000 {
        let p = primes[rng.random_range(0..primes.len())];
        let n = rng.random_range(2..=5usize);
        let sets: Vec<Vec<u64>> = (0..n)
            .map(|_| {
                let size = rng.random_range(1..=p as usize);
                let mut s: Vec<u64> = (0..size as u64)
                    .map(|_| rng.random_range(0..p))
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        assert!(
            cyclo::cauchy_davenport_check(&sets, p).unwrap(),
            "case {case}: p={p} sets={sets:?}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    pass(5, elapsed, "1000 random instances satisfy the sumset bound");
}

#[test]
fn criterion_6_foliation_goldens() {
    let start = Instant::now();
    let diag = vf("x", "2*y");
    let rot = vf("y", "-1*x");

    // E_1 values up to a nonzero rational multiple.
    let e1 = foliation::extactic(&diag, 1).unwrap();
    let q = e1.exact_div(&p2("x*y")).expect("E_1 is a multiple of x*y");
    assert!(q.is_constant() && !q.is_zero());
    let e1 = foliation::extactic(&rot, 1).unwrap();
    let q = e1
        .exact_div(&p2("x^2 + y^2"))
        .expect("E_1 is a multiple of x^2 + y^2");
    assert!(q.is_constant() && !q.is_zero());

    assert!(foliation::detect_rational_first_integral(&rot, 2).unwrap());
    assert!(foliation::detect_rational_first_integral(&diag, 2).unwrap());

    let SearchOutcome::Completed(report) = darboux::search_invariant_curves(&diag, 1).unwrap()
    else {
        panic!("diag is not a first-integral regime at n = 1");
    };
    let forms: Vec<(String, String)> = report
        .candidates
        .iter()
        .map(|c| (c.f.to_string(), c.cofactor.to_string()))
        .collect();
    assert_eq!(
        forms,
        vec![
            ("x".to_string(), "1".to_string()),
            ("y".to_string(), "2".to_string())
        ]
    );
    pass(6, start.elapsed(), "extactic goldens, detector flags, exact search results");
}

#[test]
fn criterion_7_darboux_pipeline() {
    let start = Instant::now();
    let x = vf("x", "2*y");
    let d = foliation::foliation_degree(&x).degree;
    assert_eq!(d, 1);

    // Two-curve integrating factor 1/(x*y).
    let SearchOutcome::Completed(report) = darboux::search_invariant_curves(&x, 1).unwrap()
    else {
        panic!("unexpected regime");
    };
    let s = darboux::assemble_integrating_factor(&x, &report.candidates).unwrap();
    let e: Vec<Rational> = s.curves.iter().map(|(_, mu)| -mu.clone()).collect();
    assert_eq!(e, vec![rat_int(-1), rat_int(-1)], "integrating factor is 1/(x*y)");
    // Closedness (dw - w /\ eta0 = 0) is expanded and asserted inside the
    // assembler; the budget and the chart residue are re-checked here.
    assert_eq!(s.weighted_exponent_sum(), rat_int(3));
    assert!(darboux::verify_residue_budget(&s, d).unwrap());

    // Single-curve variant R = x^(-3).
    let only_x: Vec<_> = report
        .candidates
        .iter()
        .filter(|c| c.f == p2("x"))
        .cloned()
        .collect();
    let s = darboux::assemble_integrating_factor(&x, &only_x).unwrap();
    let e: Vec<Rational> = s.curves.iter().map(|(_, mu)| -mu.clone()).collect();
    assert_eq!(e, vec![rat_int(-3)]);
    assert_eq!(s.exponent_at_infinity, rat_int(0));
    assert!(darboux::verify_residue_budget(&s, d).unwrap());
    pass(
        7,
        start.elapsed(),
        "1/(x*y) with budget 3 = d + 2; x^(-3) variant closed with mu_inf = 0",
    );
}

fn random_poly(rng: &mut ChaCha8Rng, max_exp: u32, max_terms: usize, coeff: i64) -> Poly {
    let terms = rng.random_range(1..=max_terms);
    Poly::from_terms(
        2,
        (0..terms).map(|_| {
            (
                Monomial(vec![
                    rng.random_range(0..=max_exp),
                    rng.random_range(0..=max_exp),
                ]),
                rat(
                    rng.random_range(-coeff..=coeff),
                    rng.random_range(1..=4),
                ),
            )
        }),
    )
}

#[test]
fn criterion_8_property_suites() {
    let start = Instant::now();
    let cases = 200;

    // Ring axioms.
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for _ in 0..cases {
        let f = random_poly(&mut rng, 3, 5, 9);
        let g = random_poly(&mut rng, 3, 5, 9);
        let h = random_poly(&mut rng, 3, 5, 9);
        assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        if !f.is_zero() && !g.is_zero() {
            let sum = f.degree().expect_finite() + g.degree().expect_finite();
            assert_eq!((&f * &g).degree(), Degree::Finite(sum));
        }
    }

    // Parser round-trip.
    let mut rng = ChaCha8Rng::seed_from_u64(82);
    for _ in 0..cases {
        let f = random_poly(&mut rng, 3, 5, 9);
        assert_eq!(parse_poly(&f.to_string(), 2).unwrap(), f);
    }

    // Groebner: inputs and S-pairs of the reduced basis reduce to zero.
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    for _ in 0..cases {
        let count = rng.random_range(1..=3);
        let gens: Vec<Poly> = (0..count)
            .map(|_| {
                let p = random_poly(&mut rng, 2, 3, 3);
                Poly::from_terms(2, p.terms().map(|(m, c)| (m.clone(), c.clone())))
            })
            .collect();
        let basis = groebner::buchberger(&gens, &TermOrder::lex(2)).unwrap();
        for g in &gens {
            assert!(groebner::normal_form(g, &basis).is_zero());
        }
        let n = basis.generators.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let f = &basis.generators[i];
                let g = &basis.generators[j];
                let (fm, fc) = f.leading_by(&basis.order).unwrap();
                let (gm, gc) = g.leading_by(&basis.order).unwrap();
                let l = fm.lcm(gm);
                let (fc, gc) = (fc.clone(), gc.clone());
                let s = &f.mul_monomial(&l.checked_div(fm).unwrap(), &gc)
                    - &g.mul_monomial(&l.checked_div(gm).unwrap(), &fc);
                assert!(groebner::normal_form(&s, &basis).is_zero());
            }
        }
    }

    // Extactic divisibility by verified invariant curves of constructed
    // fields: P = -g f_y + a f, Q = g f_x + b f.
    let mut rng = ChaCha8Rng::seed_from_u64(84);
    let mut done = 0;
    let mut draws = 0;
    while done < cases {
        draws += 1;
        assert!(draws < 40 * cases, "generator keeps producing degenerate fields");
        let f = random_poly(&mut rng, 1, 3, 2);
        if f.is_constant() {
            continue;
        }
        let g = random_poly(&mut rng, 1, 2, 2);
        let a = random_poly(&mut rng, 1, 2, 2);
        let b = random_poly(&mut rng, 1, 2, 2);
        let p = &(&g.scale(&rat_int(-1)) * &f.diff(1)) + &(&a * &f);
        let q = &(&g * &f.diff(0)) + &(&b * &f);
        let Ok(x) = VectorField::new(p, q) else { continue };
        if x.removed_factor().is_some() {
            continue;
        }
        let Some(cand) = foliation::cofactor(&x, &f).unwrap() else {
            continue;
        };
        let n = cand.f.degree().expect_finite();
        let e = foliation::extactic(&x, n).unwrap();
        if e.is_zero() {
            continue;
        }
        assert!(
            cand.f.divides(&e),
            "{} does not divide E_{} of ({}, {})",
            cand.f,
            n,
            x.p(),
            x.q()
        );
        done += 1;
    }

    // Floor-degree superadditivity.
    let mut rng = ChaCha8Rng::seed_from_u64(85);
    for _ in 0..cases {
        let data = OrbifoldData::new(
            0,
            (0..rng.random_range(0..=4))
                .map(|_| rng.random_range(2..=9))
                .collect(),
            rng.random_range(0..=2),
            (0..rng.random_range(0..=2))
                .map(|_| rng.random_range(1..=4))
                .collect(),
            (0..rng.random_range(0..=2))
                .map(|_| rng.random_range(1..=4))
                .collect(),
        )
        .unwrap();
        let k1 = rng.random_range(1..=40);
        let k2 = rng.random_range(1..=40);
        let d1 = orbifold::delta_k(&data, k1).unwrap();
        let d2 = orbifold::delta_k(&data, k2).unwrap();
        let d12 = orbifold::delta_k(&data, k1 + k2).unwrap();
        assert!(d12 >= d1 + d2);
    }

    pass(
        8,
        start.elapsed(),
        "ring axioms, parser round-trip, S-pair reduction, extactic divisibility, superadditivity: 200 cases each",
    );
}

#[test]
fn criterion_9_bound_profiles_and_caps() {
    let start = Instant::now();
    for d in 2..=5usize {
        assert_eq!(
            darboux::degree_bound(d, BoundProfile::Liouvillian).unwrap(),
            12 * (d - 1)
        );
        assert_eq!(
            darboux::degree_bound(d, BoundProfile::Genus1Isotrivial).unwrap(),
            6 * (d - 1)
        );
        assert_eq!(
            darboux::degree_bound(d, BoundProfile::Genus1NonIsotrivial).unwrap(),
            12 * (d - 1)
        );
        assert_eq!(
            darboux::degree_bound(d, BoundProfile::IsotrivialHyperbolic).unwrap(),
            42 * (d - 1)
        );
    }
    assert_eq!(
        darboux::degree_bound(1, BoundProfile::Liouvillian),
        Err(DarbouxError::DegreeTooSmall(1))
    );

    // The search obeys the extactic cap and reports the truncation: the
    // (5x, 7y) field has no rational first integral below degree 12, so a
    // request beyond the cap must come back truncated at n = 5, with every
    // candidate inside the cap.
    let x = vf("5*x", "7*y");
    let SearchOutcome::Completed(report) = darboux::search_invariant_curves(&x, 24).unwrap()
    else {
        panic!("(5x, 7y) must not enter the first-integral regime below the cap");
    };
    assert_eq!(report.truncated_at, Some(5));
    assert!(report
        .candidates
        .iter()
        .all(|c| c.f.degree().expect_finite() <= 5));
    assert!(!report.candidates.is_empty());
    assert!(report.notes.iter().any(|n| n.contains("truncated")));
    pass(
        9,
        start.elapsed(),
        "bound goldens 12/6/12/42 x (d-1); search truncation reported at the cap",
    );
}
