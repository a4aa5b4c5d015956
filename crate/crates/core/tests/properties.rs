use std::sync::OnceLock;

use lambda_pack_core::claims::{check_claims, gen_corpus, ClaimId, Status};
use lambda_pack_core::constructions::{splice, triangle_expand, PointedGraph};
use lambda_pack_core::graph::{canonical_form, canonical_key, Graph, Vertex};
use lambda_pack_core::packing::{
    count_factors, enumerate_factors, max_lambda_packing, oracle_max_packing, sample_factors,
    solve_factor, FactorQuery,
};
use lambda_pack_core::structure::{
    certify, enumerate_cycle_dipackings, lift_cycle_dipacking, project_factor, DiClass, Parity,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> &'static [Graph] {
    static C: OnceLock<Vec<Graph>> = OnceLock::new();
    C.get_or_init(|| {
        [4, 6, 8, 10, 12]
            .into_iter()
            .flat_map(|n| gen_corpus(n).unwrap())
            .collect()
    })
}

/// `g` with its ids permuted and spread out (`3k + 5`).
fn relabelled(g: &Graph, seed: u64) -> Graph {
    let ids: Vec<Vertex> = g.vertices().collect();
    let mut perm: Vec<u32> = (0..ids.len() as u32).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    g.relabel(|v| Vertex(3 * perm[ids.binary_search(&v).unwrap()] + 5))
        .unwrap()
}

fn small(max_n: usize) -> impl Strategy<Value = Graph> {
    let pool: Vec<Graph> = corpus()
        .iter()
        .filter(|g| g.vertex_count() <= max_n)
        .cloned()
        .collect();
    (0..pool.len(), any::<u64>()).prop_map(move |(i, s)| relabelled(&pool[i], s))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_key_ignores_labels(g in small(12), seed in any::<u64>()) {
        let h = relabelled(&g, seed);
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        let f = canonical_form(&h);
        prop_assert_eq!(canonical_key(&f), canonical_key(&g));
        prop_assert_eq!(canonical_form(&f), f);
    }

    #[test]
    fn packing_matches_oracle(g in small(10)) {
        let (lambda, p) = max_lambda_packing(&g);
        p.validate_packing(&g).unwrap();
        prop_assert_eq!(p.len(), lambda);
        prop_assert_eq!(lambda, oracle_max_packing(&g));
    }

    #[test]
    fn required_and_forbidden_partition_the_count(
        g in small(12),
        pick in any::<prop::sample::Index>(),
        drop in any::<prop::sample::Index>(),
    ) {
        let vs: Vec<Vertex> = g.vertices().collect();
        let x = *drop.get(&vs);
        let q = FactorQuery::new().without_vertices([x]);
        let host = g.delete_vertices(&[x]).unwrap();
        let es: Vec<_> = host.edges().collect();
        let e = *pick.get(&es);
        let all = count_factors(&g, &q).unwrap();
        let with = count_factors(&g, &q.clone().requiring([e])).unwrap();
        let without = count_factors(&g, &q.clone().forbidding([e])).unwrap();
        prop_assert_eq!(all, with + without);
        prop_assert_eq!(without, count_factors(&g, &q.clone().without_edges([e])).unwrap());
        let listed = enumerate_factors(&g, &q, 1_000_000).unwrap();
        prop_assert!(listed.exhausted);
        prop_assert_eq!(listed.count as u128, all);
        match solve_factor(&g, &q).unwrap() {
            Some(f) => f.validate_factor(&host).unwrap(),
            None => prop_assert_eq!(all, 0),
        }
        for f in sample_factors(&g, &q, 5, 1).unwrap() {
            f.validate_factor(&host).unwrap();
        }
    }

    #[test]
    fn counts_ignore_labels(g in small(12), seed in any::<u64>()) {
        let h = relabelled(&g, seed);
        prop_assert_eq!(max_lambda_packing(&g).0, max_lambda_packing(&h).0);
        prop_assert_eq!(
            count_factors(&g, &FactorQuery::new()).unwrap(),
            count_factors(&h, &FactorQuery::new()).unwrap()
        );
    }

    #[test]
    fn claims_ignore_labels(g in small(10), seed in any::<u64>()) {
        let h = relabelled(&g, seed);
        let a: Vec<Status> = check_claims(&g, &ClaimId::ALL).unwrap().iter().map(|o| o.status).collect();
        let b: Vec<Status> = check_claims(&h, &ClaimId::ALL).unwrap().iter().map(|o| o.status).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn splice_is_cubic_with_a_three_edge_seam(
        a in small(8),
        b in small(8),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let av: Vec<Vertex> = a.vertices().collect();
        let bv: Vec<Vertex> = b.vertices().collect();
        let pa = PointedGraph::at(a.clone(), *i.get(&av)).unwrap();
        let pb = PointedGraph::at(b.clone(), *j.get(&bv)).unwrap();
        let s = splice(&pa, &pb).unwrap();
        prop_assert_eq!(s.graph.vertex_count(), a.vertex_count() + b.vertex_count() - 2);
        prop_assert!(s.graph.is_cubic());
        let seam: std::collections::BTreeSet<_> = s.seam.into_iter().collect();
        prop_assert_eq!(s.graph.boundary(&s.a_side), seam);
        prop_assert!(s.a_side.is_disjoint(&s.b_side));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn triangle_expansion_lifts_round_trip(frame in small(8)) {
        let c = triangle_expand(&frame).unwrap();
        let g = c.result.clone();
        for f in sample_factors(&g, &FactorQuery::new(), 20, 2).unwrap() {
            let d = project_factor(&c, &f).unwrap();
            prop_assert_eq!(d.classify(&c.frame), DiClass::CycleDipacking);
        }
        let cert = certify(c, Parity::FourMod6).unwrap();
        for d in enumerate_cycle_dipackings(&cert.composition.frame) {
            let f = lift_cycle_dipacking(&cert, &d).unwrap();
            f.validate_factor(&g).unwrap();
            prop_assert_eq!(project_factor(&cert.composition, &f).unwrap(), d);
        }
    }
}

fn status(outcomes: &[lambda_pack_core::claims::ClaimOutcome], id: ClaimId) -> Status {
    outcomes.iter().find(|o| o.claim == id).unwrap().status
}

#[test]
fn literal_implications_hold_per_graph() {
    use ClaimId::*;
    let chains = [
        (Z7, Z2),
        (Z8, Z4),
        (T2, T1),
        (F2, F1),
        (F6, F5),
        (F5, F4),
        (F4, F3),
    ];
    for g in corpus() {
        let outcomes = check_claims(g, &ClaimId::ALL).unwrap();
        for (a, b) in chains {
            if status(&outcomes, a) == Status::Holds {
                assert_eq!(status(&outcomes, b), Status::Holds, "{a} => {b} on {g:?}");
            }
        }
    }
}
