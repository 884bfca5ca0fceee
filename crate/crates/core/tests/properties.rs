use proptest::prelude::*;

use stringdet::engine::determiner_report;
use stringdet::format::{parse_algebra, serialize_algebra};
use stringdet::generate;
use stringdet::oracle::modules::{projective, radical};
use stringdet::oracle::{enumerate_strings, string_module, OracleRun};
use stringdet::quiver::StringAlgebra;
use stringdet::taxonomy::{profiles, VertexClass};
use stringdet::tree::{is_linear, neighbourhood, restricted_ideal_nonzero, walk_between};

fn tree_algebra() -> impl Strategy<Value = StringAlgebra> {
    (1usize..7)
        .prop_flat_map(|k| (prop::collection::vec(0usize..8, k), prop::collection::vec(any::<bool>(), k)))
        .prop_filter_map("degree above two", |(parents, flips)| {
            let alg = generate::tree_with_branch_relations(&parents, &flips)?.validate();
            StringAlgebra::new(alg).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arrow_count_and_degrees(alg in tree_algebra()) {
        prop_assert_eq!(alg.quiver().arrows().len(), alg.n() - 1);
        for v in 0..alg.n() {
            prop_assert!(alg.in_degree(v) + alg.out_degree(v) <= 4);
        }
    }

    #[test]
    fn serialize_round_trip(alg in tree_algebra()) {
        let text = serialize_algebra(alg.algebra());
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(serialize_algebra(&back), text);
        prop_assert_eq!(back.quiver(), alg.quiver());
        prop_assert_eq!(back.relations(), alg.relations());
    }

    #[test]
    fn walks_reverse(alg in tree_algebra(), a in 0usize..8, b in 0usize..8) {
        let (a, b) = (alg.vertex(a % alg.n()), alg.vertex(b % alg.n()));
        let there = walk_between(&alg, a, b).unwrap();
        let back = walk_between(&alg, b, a).unwrap();
        prop_assert_eq!(there.reversed(), back);
    }

    #[test]
    fn linear_walks_compose(alg in tree_algebra(), a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let (j, i, k) = (alg.vertex(a % alg.n()), alg.vertex(b % alg.n()), alg.vertex(c % alg.n()));
        let jk = walk_between(&alg, j, k).unwrap();
        if jk.vertices().contains(&i)
            && is_linear(&walk_between(&alg, j, i).unwrap())
            && is_linear(&walk_between(&alg, i, k).unwrap())
        {
            prop_assert!(is_linear(&jk));
        }
    }

    #[test]
    fn ideal_membership_is_monotone(alg in tree_algebra(), start in 0usize..8, extra in 0usize..4) {
        // Extend a directed path one arrow at a time; once zero it stays zero.
        let mut v = start % alg.n();
        let mut path = Vec::new();
        let mut seen_zero = false;
        for step in 0..6 {
            let outs = alg.out_arrows(v);
            if outs.is_empty() {
                break;
            }
            let a = outs[(extra + step) % outs.len()];
            path.push(a);
            v = alg.target_index(a);
            let zero = alg.algebra().path_in_ideal(&path).unwrap();
            prop_assert!(!seen_zero || zero);
            seen_zero |= zero;
        }
    }

    #[test]
    fn every_vertex_has_one_class(alg in tree_algebra()) {
        prop_assume!(alg.n() >= 2);
        let ps = profiles(&alg).unwrap();
        prop_assert_eq!(ps.len(), alg.n());
        for p in &ps {
            prop_assert_eq!(p.ideal.is_some(), p.class.has_vertex_ideal());
            if matches!(p.class, VertexClass::V3_2 | VertexClass::V4) {
                let x = neighbourhood(&alg, p.vertex).unwrap();
                prop_assert!(restricted_ideal_nonzero(&alg, &x));
            }
        }
    }

    #[test]
    fn projective_rules(alg in tree_algebra()) {
        prop_assume!(alg.n() >= 2);
        let report = determiner_report(&alg).unwrap();
        prop_assert_eq!(report.formula_value, 2 * report.n - report.p - report.q - 1);
        prop_assert_eq!(report.formula_value, report.projective_determiners.len() + report.epi_determiner_count);
        for p in profiles(&alg).unwrap() {
            if p.class == VertexClass::V2_1 {
                prop_assert!(!report.projective_determiners.contains(&p.vertex));
            }
            if p.out_neighbours.len() == 1 {
                prop_assert!(report.projective_determiners.contains(&p.vertex));
            }
        }
    }

    #[test]
    fn modules_satisfy_relations(alg in tree_algebra()) {
        for w in enumerate_strings(&alg) {
            prop_assert!(string_module(&alg, &w).satisfies_relations(&alg));
        }
        for i in 0..alg.n() {
            let p = projective(&alg, alg.vertex(i)).unwrap();
            prop_assert!(p.module.satisfies_relations(&alg));
            prop_assert_eq!(radical(&alg, &p).len(), alg.out_degree(i));
        }
    }

    #[test]
    fn oracle_matches_engine(alg in tree_algebra()) {
        prop_assume!(alg.n() >= 2);
        let run = OracleRun::new(&alg).unwrap();
        prop_assert!(run.structural_problems(&alg).is_empty());
        let summary = run.summary(&alg);
        let report = determiner_report(&alg).unwrap();
        prop_assert_eq!(summary.det_size, report.formula_value);
        prop_assert_eq!(summary.projective_determiners, report.projective_determiners);
    }
}

#[test]
fn relation_free_algebras_are_lines() {
    for alg in generate::small_tree_algebras(4) {
        if alg.relations().is_empty() {
            let s = StringAlgebra::new(alg).unwrap();
            for v in 0..s.n() {
                assert_line(&s, v);
            }
        }
    }
}

fn assert_line(alg: &StringAlgebra, v: usize) {
    assert!(alg.in_degree(v) + alg.out_degree(v) <= 2, "branch vertex in a relation-free string algebra");
}
