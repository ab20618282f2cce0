mod common;

use std::collections::BTreeSet;

use common::{behavior_matrix, brute_subsumes, table_csv, Table};
use mutspace::diffcore::{d_vector, differentiate, mutation_adequacy, TraceEntry};
use mutspace::lattice::{build_pdl, deviance};
use mutspace::mbfl::{
    fix_score, flt_score, rank_statements, FaultLocalizationInput, Method, Metric,
};
use mutspace::mutlang::{
    behavior_matrix as run_matrix, mutate_all, parse, ExecOptions, Operator, TestCase,
};
use mutspace::progspace::ProgramSpace;
use mutspace::subsumption::{build_dmsg, minimal_mutant_set, KillMatrix};
use mutspace::{BehaviorToken, BitVector, Differentiator, Policy, ProgramId, Status, TestVector};
use proptest::prelude::*;

fn token() -> impl Strategy<Value = BehaviorToken> {
    let trace = prop::option::of(prop::collection::vec((0u32..3, "[xy]"), 0..3));
    let status = prop_oneof![
        Just(Status::Normal),
        Just(Status::Error),
        Just(Status::Timeout)
    ];
    ("-?[0-9]\\.?[0-9]?|[ab]", trace, status).prop_map(|(output, trace, status)| BehaviorToken {
        output,
        trace: trace.map(|t| {
            t.into_iter()
                .map(|(stmt, state)| TraceEntry { stmt, state })
                .collect()
        }),
        status,
    })
}

fn policy() -> impl Strategy<Value = Policy> {
    prop_oneof![
        Just(Policy::Exact),
        Just(Policy::Output),
        Just(Policy::Trace),
        (0.0f64..2.0).prop_map(|epsilon| Policy::NumericTolerance { epsilon }),
    ]
}

/// Rows of a behavior matrix: spec, original, then 1..5 mutants, over
/// 1..6 tests with a three-letter alphabet.
fn rows() -> impl Strategy<Value = Vec<Vec<u8>>> {
    (1usize..=6, 3usize..=7)
        .prop_flat_map(|(n, k)| prop::collection::vec(prop::collection::vec(0u8..3, n), k))
}

fn table() -> impl Strategy<Value = (Table, usize)> {
    (1usize..=6, 1usize..=8).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(prop::collection::vec(any::<bool>(), m), n),
            Just(m),
        )
    })
}

proptest! {
    #[test]
    fn differentiators_are_symmetric_with_zero_diagonal(p in policy(), a in token(), b in token()) {
        prop_assert!(!p.differs(&a, &a));
        prop_assert_eq!(p.differs(&a, &b), p.differs(&b, &a));
    }

    #[test]
    fn norm_counts_differing_outputs(rows in rows()) {
        let bm = behavior_matrix(&rows);
        let d = Differentiator::strong();
        let v = d_vector(&d, bm.tests(), "po", "m1", &bm).unwrap();
        let hamming = rows[1].iter().zip(&rows[2]).filter(|(a, b)| a != b).count();
        prop_assert_eq!(v.norm(), hamming);
    }

    #[test]
    fn equal_positions_are_necessary_for_equal_behavior(rows in rows()) {
        // Output equality is transitive, so programs at different positions
        // must differ somewhere.
        let bm = behavior_matrix(&rows);
        let d = Differentiator::strong();
        let space = ProgramSpace::over_all_tests(&bm, "po", d.clone()).unwrap();
        let ids: Vec<ProgramId> = bm.programs().iter().map(|p| p.id.clone()).collect();
        for x in &ids {
            for y in &ids {
                let px = space.position(x.as_str()).unwrap().bits;
                let py = space.position(y.as_str()).unwrap().bits;
                if px != py {
                    let v = d_vector(&d, bm.tests(), x.as_str(), y.as_str(), &bm).unwrap();
                    prop_assert!(v.norm() > 0);
                }
            }
        }
    }

    #[test]
    fn adding_tests_never_revives_a_mutant(rows in rows(), cut in 0usize..6) {
        let bm = behavior_matrix(&rows);
        let d = Differentiator::strong();
        let all = bm.tests().clone();
        let fewer = all.prefix(cut.min(all.len()));
        let mutants = bm.mutants();
        let small = mutation_adequacy(&d, &fewer, "po", &mutants, &bm).unwrap();
        let large = mutation_adequacy(&d, &all, "po", &mutants, &bm).unwrap();
        prop_assert!(large.live.iter().all(|m| small.live.contains(m)));
        prop_assert!(!small.adequate || large.adequate);
    }

    #[test]
    fn derived_oracle_agrees_with_spec_difference(rows in rows()) {
        let bm = behavior_matrix(&rows);
        let d = Differentiator::strong();
        let oracle = mutspace::diffcore::derived_oracle(&d, "ps", &bm).unwrap();
        for (i, t) in bm.tests().iter().enumerate() {
            prop_assert_eq!(oracle.passes(t.as_str(), "po").unwrap(), rows[0][i] == rows[1][i]);
        }
    }

    #[test]
    fn deviance_is_a_strict_order(a in prop::collection::vec(any::<bool>(), 4),
                                  b in prop::collection::vec(any::<bool>(), 4),
                                  c in prop::collection::vec(any::<bool>(), 4)) {
        let (a, b, c) = (BitVector::new(a), BitVector::new(b), BitVector::new(c));
        prop_assert!(deviance(&a, &a).is_none());
        prop_assert!(!(deviance(&a, &b).is_some() && deviance(&b, &a).is_some()));
        if deviance(&a, &b).is_some() && deviance(&b, &c).is_some() {
            prop_assert!(deviance(&a, &c).is_some());
        }
        // Oracle: strict superset of set bits.
        let sup = a != b && a.iter().zip(b.iter()).all(|(x, y)| !x || y);
        prop_assert_eq!(deviance(&a, &b).is_some(), sup);
    }

    #[test]
    fn lattice_reachability_is_strict_superset(n in 1usize..=8, seed in any::<u64>()) {
        let pdl = build_pdl(n).unwrap();
        let from = seed % (1u64 << n);
        prop_assert_eq!(pdl.in_degree(from) + pdl.out_degree(from), n);
        let expected: BTreeSet<u64> = (0..1u64 << n).filter(|&y| y != from && y & from == from).collect();
        prop_assert_eq!(pdl.reachable_by_deviance(from), expected);
    }

    #[test]
    fn dmsg_matches_brute_force((t, m) in table()) {
        let km = KillMatrix::from_csv(&table_csv(&t, m)).unwrap();
        for x in 0..m {
            for y in 0..m {
                prop_assert_eq!(km.subsumes_at(x, y), brute_subsumes(&t, x, y));
            }
        }
        let dmsg = build_dmsg(&km);
        let idx = |id: &ProgramId| km.column_index(id.as_str()).unwrap();
        for (a, ca) in dmsg.classes.iter().enumerate() {
            for (b, cb) in dmsg.classes.iter().enumerate() {
                let x = idx(ca.representative());
                let y = idx(cb.representative());
                prop_assert_eq!(dmsg.closure.contains(&(a, b)), a != b && brute_subsumes(&t, x, y));
            }
        }
    }

    #[test]
    fn minimal_sets_are_antichains_that_cover((t, m) in table()) {
        let km = KillMatrix::from_csv(&table_csv(&t, m)).unwrap();
        let min: Vec<usize> = minimal_mutant_set(&km)
            .minimal
            .iter()
            .map(|id| km.column_index(id.as_str()).unwrap())
            .collect();
        for &x in &min {
            for &y in &min {
                prop_assert!(!brute_subsumes(&t, x, y), "m{} subsumes m{}", x + 1, y + 1);
            }
        }
        for y in 0..m {
            let killed = t.iter().any(|row| row[y]);
            if killed {
                let same = |x: usize| t.iter().all(|row| row[x] == row[y]);
                prop_assert!(min.iter().any(|&x| same(x) || brute_subsumes(&t, x, y)));
            } else {
                prop_assert!(!min.contains(&y));
            }
        }
    }

    #[test]
    fn suspiciousness_is_bounded(rows in rows()) {
        let bm = behavior_matrix(&rows);
        let ms: Vec<(ProgramId, Option<String>)> = bm.mutants().into_iter().map(|m| (m, None)).collect();
        let input = FaultLocalizationInput::new(&bm, ms, bm.tests().clone(), Differentiator::strong()).unwrap();
        for m in bm.mutants() {
            let fix = fix_score(&input, m.as_str()).unwrap();
            prop_assert!((-1.0..=1.0).contains(&fix));
            for metric in [Metric::Ochiai, Metric::Jaccard] {
                let flt = flt_score(&input, m.as_str(), metric).unwrap();
                prop_assert!((0.0..=1.0).contains(&flt));
            }
        }
    }

    #[test]
    fn top_rank_ignores_mutant_order(rows in rows(), rot in 0usize..5) {
        let bm = behavior_matrix(&rows);
        let mut ms: Vec<(ProgramId, Option<String>)> = bm
            .mutants()
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, Some(format!("s{}", i % 2))))
            .collect();
        let tv = bm.tests().clone();
        let d = Differentiator::strong();
        let a = rank_statements(&FaultLocalizationInput::new(&bm, ms.clone(), tv.clone(), d.clone()).unwrap(), Method::Fix).unwrap();
        let len = ms.len();
        ms.rotate_left(rot % len);
        let b = rank_statements(&FaultLocalizationInput::new(&bm, ms, tv, d).unwrap(), Method::Fix).unwrap();
        prop_assert_eq!(a.ranking, b.ranking);
    }

    #[test]
    fn weak_bits_dominate_strong_bits(a in -20i64..20, b in -20i64..20, n in 0i64..6) {
        let src = "s = 0;\ni = 0;\nwhile (i < n) {\n  s = s + a;\n  i = i + 1;\n}\nif (s > b) {\n  s = s - b;\n}\nreturn s % 5;\n";
        let p = parse(src).unwrap();
        let mutants = mutate_all(&p, &Operator::ALL);
        let tests = [TestCase::new("t1", &[("a", a), ("b", b), ("n", n)])];
        let bm = run_matrix(&p, &mutants, &tests, ExecOptions { budget: 500, tracing: true }, None).unwrap();
        let strong = Differentiator::strong();
        let weak = Differentiator::weak();
        for (d, _) in &mutants {
            let s = differentiate(&strong, "t1", "po", &d.id, &bm).unwrap();
            let w = differentiate(&weak, "t1", "po", &d.id, &bm).unwrap();
            prop_assert!(w || !s, "{}", d.site());
        }
    }
}

#[test]
fn test_vector_rejects_duplicates() {
    assert!(TestVector::new(vec!["t1".into(), "t1".into()]).is_err());
}
