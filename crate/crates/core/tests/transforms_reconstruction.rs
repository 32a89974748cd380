mod common;

use common::*;
use ohdet::reconstruction::Probe;
use ohdet::transforms::{bouquet_digon_sign, pivot_reduction};
use ohdet::{
    contributor_sign, cyclomatic_number, fundamental_bouquet_signs, probe_signs, reconstruct, reduce_to_01,
    standardize, Contributor, IncidenceStructure, Permutation, SignProbe, TailClassId,
};
use proptest::prelude::*;

fn pm1(max_n: usize) -> impl Strategy<Value = IncidenceStructure> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n * n)
            .prop_map(move |e| IncidenceStructure::square(n, e).unwrap())
    })
}

#[test]
fn reduced_entries_follow_the_sign_rule_exhaustively() {
    for n in 2..=4 {
        for h in all_pm1(n) {
            let s = standardize(&h).unwrap();
            let r = reduce_to_01(&s).unwrap();
            for k in 1..n {
                for l in 1..n {
                    let want = (1 - s.standardized.entry(k, l)) / 2;
                    assert_eq!(r.reduced.entry(k - 1, l - 1), want);
                }
            }
            assert!(r.pivot_agrees && r.relation_check);
            let dh = cofactor_det(&rows_i64(&s.standardized)).abs();
            let dr = cofactor_det(&rows_i64(&r.reduced)).abs();
            assert_eq!(dh, (1 << (n - 1)) * dr);
            assert_eq!(dh, cofactor_det(&rows_i64(&h)).abs());
        }
    }
}

#[test]
fn power_of_two_relation_at_five() {
    let mut r = rng(55);
    for _ in 0..2000 {
        let h = random_pm1(&mut r, 5);
        let red = reduce_to_01(&standardize(&h).unwrap()).unwrap();
        assert_eq!(red.power_of_two, 4);
        assert_eq!(cofactor_det(&rows_i64(&h)).abs(), 16 * cofactor_det(&rows_i64(&red.reduced)).abs());
    }
}

#[test]
fn worked_example() {
    let s = standardize(&raw4()).unwrap();
    let r = reduce_to_01(&s).unwrap();
    assert_eq!(r.reduced.to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]);
    assert_eq!(pivot_reduction(&s.standardized).unwrap(), r.reduced.to_matrix());
    assert_eq!(r.det_standardized.magnitude().to_string(), "16");
    assert_eq!(r.det_reduced.magnitude().to_string(), "2");
}

#[test]
fn bouquet_digons_are_contributor_signs() {
    for h in all_pm1(3) {
        for k in 1..3 {
            for l in 1..3 {
                let mut tails: Vec<usize> = (0..3).collect();
                tails[0] = l;
                tails[k] = 0;
                let c = Contributor::new(TailClassId::new(tails).unwrap(), Permutation::transposition(3, 0, k)).unwrap();
                let d = contributor_sign(&h, &c).unwrap();
                let cycle = d.components.iter().find(|x| x.length == 2).unwrap();
                assert_eq!(cycle.sign, bouquet_digon_sign(&h, k, l));
            }
        }
    }
}

#[test]
fn cyclomatic_number_of_full_structures() {
    for n in 1..=7 {
        let mut r = rng(n as u64);
        let h = random_pm1(&mut r, n);
        assert_eq!(cyclomatic_number(&h), ((n - 1) * (n - 1)) as i64);
        assert_eq!(probe_signs(&standardize(&h).unwrap().standardized).unwrap().len(), (n - 1) * (n - 1));
    }
}

#[test]
fn reconstruction_round_trips_exhaustively_up_to_four() {
    for n in 1..=4 {
        for h in all_pm1(n) {
            if !h.is_standardized() {
                continue;
            }
            let p = probe_signs(&h).unwrap();
            assert_eq!(reconstruct(&p).unwrap(), h);
        }
    }
}

#[test]
fn reconstruction_round_trips_at_five_and_six() {
    let mut r = rng(500);
    for n in [5, 6] {
        for _ in 0..500 {
            let h = random_standardized(&mut r, n);
            assert_eq!(reconstruct(&probe_signs(&h).unwrap()).unwrap(), h);
        }
    }
}

#[test]
fn probes_are_identity_class_contributors() {
    let mut r = rng(12);
    let h = random_standardized(&mut r, 5);
    let p = probe_signs(&h).unwrap();
    let id = TailClassId::from_identifier(&Permutation::identity(5));
    let sign = |probe: Probe| {
        contributor_sign(&h, &Contributor::new(id.clone(), probe.permutation(5)).unwrap())
            .unwrap()
            .sign
    };
    for k in 1..5 {
        assert_eq!(p.s1k[k - 1], sign(Probe::DigonWithFirst(k)));
    }
    for &(k, l, s) in &p.s1kl {
        assert_eq!(s, sign(Probe::Triangle(k - 1, l - 1)));
        let perm = Probe::Triangle(k - 1, l - 1).permutation(5);
        assert_eq!(perm.apply(0), l - 1);
        assert_eq!(perm.apply(l - 1), k - 1);
        assert_eq!(perm.apply(k - 1), 0);
    }
}

#[test]
fn every_probe_vector_reconstructs_a_consistent_matrix() {
    for bits in 0u32..16 {
        let sign = |i: u32| if bits >> i & 1 == 1 { -1 } else { 1 };
        let p = SignProbe { n: 3, s1k: vec![sign(0), sign(1)], skl: vec![(2, 3, sign(2))], s1kl: vec![(2, 3, sign(3))] };
        let h = reconstruct(&p).unwrap();
        assert!(h.is_standardized());
        assert_eq!(probe_signs(&h).unwrap(), p);
    }
}

proptest! {
    #[test]
    fn standardize_is_idempotent_and_preserves_magnitude(h in pm1(6)) {
        let s = standardize(&h).unwrap();
        prop_assert!(s.standardized.is_standardized());
        let again = standardize(&s.standardized).unwrap();
        prop_assert_eq!(&again.standardized, &s.standardized);
        prop_assert!(again.row_signs.iter().chain(&again.col_signs).all(|&x| x == 1));
        for v in 0..h.dim() {
            for e in 0..h.dim() {
                prop_assert_eq!(s.standardized.entry(v, e), s.row_signs[v] * s.col_signs[e] * h.entry(v, e));
            }
        }
        prop_assert_eq!(cofactor_det(&rows_i64(&h)).abs(), cofactor_det(&rows_i64(&s.standardized)).abs());
    }

    #[test]
    fn digon_signs_survive_row_and_column_negation(
        h in pm1(6).prop_filter("n >= 2", |h| h.dim() >= 2),
        rows in proptest::collection::vec(any::<bool>(), 6),
        cols in proptest::collection::vec(any::<bool>(), 6),
    ) {
        let n = h.dim();
        let mut g = h.clone();
        for (v, &rv) in rows.iter().enumerate().take(n) {
            for (e, &ce) in cols.iter().enumerate().take(n) {
                let flip = if rv ^ ce { -1 } else { 1 };
                g.set_entry(v, e, flip * h.entry(v, e));
            }
        }
        let a = fundamental_bouquet_signs(&h).unwrap();
        prop_assert!(a.lemma_check);
        prop_assert_eq!(a, fundamental_bouquet_signs(&g).unwrap());
    }

    #[test]
    fn probe_json_round_trips(h in pm1(6)) {
        let s = standardize(&h).unwrap().standardized;
        let p = probe_signs(&s).unwrap();
        let back = SignProbe::from_json(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(reconstruct(&back).unwrap(), s);
    }
}
