//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use ohdet::engine::{adjacency_equivalent_pairs, adjacency_inverse_pairs, enumerate_tail_class};
use ohdet::search::SearchOptions;
use ohdet::{
    adjacency_inverse_pair, class_tallies_all, class_tally, det_magnitude_single_class, exhaustive_maxdet,
    head_class_from_tail_class, laplacian_det_via_contributors, probe_signs, reconstruct, reduce_to_01,
    standardize, verify_nonmonic_zero, Budget, IncidenceStructure, Permutation, TailClassId,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        o.passed = false;
        o.detail = format!("{}; took {elapsed:?}, limit {limit:?}", o.detail);
    }
    (o, elapsed)
}

fn abs_det(h: &IncidenceStructure) -> i64 {
    cofactor_det(&rows_i64(h)).abs()
}

fn c1_fixture_class() -> Outcome {
    let h = sample3();
    let class = TailClassId::from_identifier(&Permutation::identity(3));
    let t = class_tally(&h, &class).unwrap();
    let negatives: Vec<String> = enumerate_tail_class(&h, &class)
        .unwrap()
        .filter(|&(_, s)| s < 0)
        .map(|(p, _)| p.to_string())
        .collect();
    check(
        t.sum == 4 && t.pos == 5 && t.neg == 1 && negatives == ["(2 3)"],
        format!("sum {} (+{} / -{}), negative contributors {negatives:?}", t.sum, t.pos, t.neg),
    )
}

fn c2_reduction() -> Outcome {
    let r = reduce_to_01(&standardize(&raw4()).unwrap()).unwrap();
    let exact = r.reduced.to_rows() == vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]];
    let d = (r.det_standardized.magnitude().clone(), r.det_reduced.magnitude().clone());
    check(
        exact && d.0 == 16u32.into() && d.1 == 2u32.into() && r.power_of_two == 3 && r.relation_check,
        format!("reduced bit-exact {exact}, {} = 2^{} · {}", d.0, r.power_of_two, d.1),
    )
}

fn c3_laplacian_sweep() -> Outcome {
    let mut bad = 0;
    for h in all_pm1(3) {
        let a = laplacian_det_via_contributors(&h, Budget::default()).unwrap();
        let want = BigInt::from(cofactor_det(&gram(&rows_i64(&h))));
        let square = BigInt::from(cofactor_det(&rows_i64(&h)).pow(2));
        if a.contributor_det != want || want != square || !a.agrees || a.contributors_visited != 162 {
            bad += 1;
        }
    }
    check(bad == 0, format!("512 matrices, {bad} disagreements"))
}

fn c4_nonmonic(samples: &[IncidenceStructure]) -> Outcome {
    let mut bad = 0;
    for h in samples {
        let r = verify_nonmonic_zero(h, Budget::default()).unwrap();
        if r.classes_checked != 232 || !r.all_zero || !r.pairing_holds || r.classes.iter().any(|c| c.sum != 0) {
            bad += 1;
        }
    }
    check(bad == 0, format!("{} matrices x 232 classes, {bad} failures", samples.len()))
}

fn c5_single_class(samples: &[IncidenceStructure]) -> Outcome {
    let mut bad = 0;
    for h in samples {
        let want = abs_det(h) as u64;
        for alpha in Permutation::all(4) {
            let r = det_magnitude_single_class(h, &alpha, Budget::default()).unwrap();
            if r.magnitude != want || !r.identities_hold || r.tally.pos + r.tally.neg != 24 {
                bad += 1;
            }
        }
    }
    check(bad == 0, format!("{} matrices x 24 classes, {bad} failures", samples.len()))
}

fn c6_counting_identity() -> Outcome {
    let (mut checked, mut bad) = (0, 0);
    for h in all_pm1(3) {
        let d = abs_det(&h);
        if d == 0 {
            continue;
        }
        checked += 1;
        let r = class_tallies_all(&h, Budget::default()).unwrap();
        let (p, m) = (r.plus_classes as i64, r.minus_classes as i64);
        if !(d == p - m && d == 6 - 2 * m && d == 2 * p - 6 && r.lemma_holds) {
            bad += 1;
        }
    }
    check(bad == 0 && checked > 0, format!("{checked} nonsingular matrices, {bad} failures"))
}

fn c7_reconstruction() -> Outcome {
    let (mut count, mut bad) = (0, 0);
    for h in all_pm1(4).filter(IncidenceStructure::is_standardized) {
        count += 1;
        let p = probe_signs(&h).unwrap();
        if p.len() != 9 || reconstruct(&p).unwrap() != h {
            bad += 1;
        }
    }
    check(count == 512 && bad == 0, format!("{count} standardized matrices, {bad} mismatches"))
}

fn c8_adjacency_inverse() -> Outcome {
    let h = sample3();
    let mut bad = 0;
    for alpha in Permutation::all(3) {
        for beta in Permutation::all(3) {
            let p = adjacency_inverse_pair(&h, &alpha, &beta).unwrap();
            let reversals = adjacency_inverse_pairs(&alpha, &beta);
            let expected = (p.in_alpha.perm.clone(), p.in_beta.perm.clone());
            let unique = reversals == [expected.clone()];
            let equivalent = adjacency_equivalent_pairs(&alpha, &beta);
            let undirected_unique = alpha == beta || equivalent == [expected];
            if !(unique && undirected_unique && p.sign_alpha == p.sign_beta && p.same_adjacencies) {
                bad += 1;
            }
        }
    }
    let transversal = Permutation::all(3).all(|a| {
        let hc = head_class_from_tail_class(&h, &a).unwrap();
        hc.transversal && hc.shared_heads
    });
    check(bad == 0 && transversal, format!("36 identifier pairs, {bad} failures, head classes transversal {transversal}"))
}

fn c9_maxdet() -> (Outcome, Duration) {
    let quiet = SearchOptions { cap: 5, progress: false };
    let mut found = Vec::new();
    let mut ok = true;
    let mut n5 = Duration::ZERO;
    for (n, want) in [(1u32, 1u32), (2, 2), (3, 4), (4, 16), (5, 48)] {
        let start = Instant::now();
        let r = exhaustive_maxdet(n as usize, quiet).unwrap();
        if n == 5 {
            n5 = start.elapsed();
        }
        ok &= r.best_magnitude == BigInt::from(want) && r.within_bound;
        ok &= &r.best_magnitude * &r.best_magnitude <= BigInt::from(n.pow(n));
        found.push(r.best_magnitude.to_string());
    }
    let mut o = check(ok, format!("best |det| for n=1..5: {}", found.join(", ")));
    if n5 > Duration::from_secs(10) {
        o.passed = false;
        o.detail = format!("{}; n=5 took {n5:?}, limit 10s", o.detail);
    }
    (o, n5)
}

fn c10_determinism(samples: &[IncidenceStructure]) -> Outcome {
    let run = |workers: &str, args: &[&str], input: &str| {
        let mut argv = vec!["ohdet", "--format", "json", "--workers", workers];
        argv.extend_from_slice(args);
        ohdet::cli::run(argv, &mut input.as_bytes())
    };
    let mut runs = 0;
    let mut bad = 0;
    let mut compare = |args: &[&str], input: &str| {
        runs += 1;
        let a = run("1", args, input);
        let b = run("8", args, input);
        if a.code != 0 || a.stdout != b.stdout || a.code != b.code {
            bad += 1;
        }
    };
    for h in all_pm1(3) {
        compare(&["det"], &h.to_string());
    }
    for h in samples {
        let text = h.to_string();
        compare(&["verify"], &text);
        compare(&["classes"], &text);
        compare(&["classes", "--class", "(1 2)(3 4)"], &text);
    }
    check(bad == 0, format!("{runs} workloads compared at 1 and 8 workers, {bad} differ"))
}

fn main() {
    let mut r = rng(2024);
    let samples: Vec<IncidenceStructure> = (0..100).map(|_| random_pm1(&mut r, 4)).collect();
    let ms = Duration::from_millis;
    let secs = Duration::from_secs;
    let results: Vec<(&str, (Outcome, Duration))> = vec![
        ("C1 fixture identity class", timed(ms(1), c1_fixture_class)),
        ("C2 {0,1} reduction", timed(ms(1), c2_reduction)),
        ("C3 contributor det(L), n=3 sweep", timed(secs(5), c3_laplacian_sweep)),
        ("C4 non-edge-monic classes vanish", timed(secs(60), || c4_nonmonic(&samples))),
        ("C5 single-class |det|", timed(secs(60), || c5_single_class(&samples))),
        ("C6 class counting identity", timed(secs(60), c6_counting_identity)),
        ("C7 reconstruction round trip", timed(secs(30), c7_reconstruction)),
        ("C8 adjacency-inverse pairs", timed(secs(60), c8_adjacency_inverse)),
        ("C9 exhaustive max |det|", c9_maxdet()),
        ("C10 deterministic JSON", timed(secs(120), || c10_determinism(&samples))),
    ];
    let mut failed = 0;
    for (name, (o, elapsed)) in &results {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} {name}: {} [{elapsed:.2?}]", o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
