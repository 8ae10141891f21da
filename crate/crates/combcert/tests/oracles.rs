//! Fast paths against the brute-force oracles.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use combcert::cds;
use combcert::coalition::{self, CoalitionInstance, PartitionResult};
use combcert::fair::{self, EdgePartition, SearchMode};
use combcert::oracle::{self, FairPattern, OracleBudget};
use combcert::rng::seeded;
use combcert::{Error, Graph, Length};

use common::*;

#[test]
fn girth_agrees_on_500_graphs() {
    let budget = OracleBudget::default();
    for i in 0..500u64 {
        let mut rng = seeded(i);
        let n = rng.gen_range(1..=12);
        let g = Graph::random_gnp(n, rng.gen_range(0.05..0.6), &mut rng);
        let edges: Vec<_> = g.edges().collect();
        let exact = oracle::exact_girth(&g, &budget).unwrap();
        assert_eq!(exact, g.girth(), "graph {i}");
        assert_eq!(exact.finite(), bfs_girth(n, &edges), "graph {i}");
    }
}

#[test]
fn girth_examples() {
    let b = OracleBudget::default();
    assert_eq!(oracle::exact_girth(&Graph::complete(4), &b).unwrap(), Length::Finite(3));
    assert_eq!(oracle::exact_girth(&Graph::petersen(), &b).unwrap(), Length::Finite(5));
    assert_eq!(oracle::exact_girth(&Graph::cycle(9), &b).unwrap(), Length::Finite(9));
    assert_eq!(oracle::exact_girth(&Graph::path(9), &b).unwrap(), Length::Infinite);
    assert!(matches!(oracle::exact_girth(&Graph::cycle(13), &b), Err(Error::TooLarge(_))));
}

#[test]
fn domination_examples() {
    let b = OracleBudget::default();
    let c6 = Graph::cycle(6);
    assert_eq!(oracle::exact_gamma(&c6, &b).unwrap().0, 2);
    assert_eq!(oracle::exact_gamma_c(&c6, &b).unwrap().0, 4);
    for n in 1..=7 {
        let k = Graph::complete(n);
        assert_eq!(oracle::exact_gamma(&k, &b).unwrap().0, 1);
        assert_eq!(oracle::exact_gamma_c(&k, &b).unwrap().0, 1);
    }
    let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(oracle::exact_gamma_c(&split, &b), Err(Error::HostDisconnected));
    assert!(matches!(oracle::exact_gamma(&Graph::cycle(21), &b), Err(Error::TooLarge(_))));
}

#[test]
fn cycle_of_cliques_domination_numbers() {
    // k = 3, m = 4: gamma = m, and the connected version needs 3m - 2
    let g = cds::gen_cycle_of_cliques(3, 4).unwrap();
    let b = OracleBudget::default();
    let (gamma, _) = oracle::exact_gamma(&g, &b).unwrap();
    let (gamma_c, set) = oracle::exact_gamma_c(&g, &b).unwrap();
    assert_eq!((gamma, gamma_c), (4, 10));
    assert!(dominates(&g, &set) && induces_connected(&g, &set));
    let f = cds::f_nk(16, 3, &BigRational::from_integer(BigInt::from(4))).unwrap();
    assert_eq!(f, BigRational::from_integer(BigInt::from(6)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn connected_domination_within_budget(seed in any::<u64>(), n in 3usize..=12) {
        let mut rng = seeded(seed);
        let g = Graph::random_gnp(n, rng.gen_range(0.25..0.8), &mut rng);
        prop_assume!(g.is_connected());
        let b = OracleBudget::default();
        let (gamma, dset) = oracle::exact_gamma(&g, &b).unwrap();
        let (gamma_c, cset) = oracle::exact_gamma_c(&g, &b).unwrap();
        prop_assert!(dominates(&g, &dset));
        prop_assert!(dominates(&g, &cset) && induces_connected(&g, &cset));
        prop_assert!(gamma <= gamma_c);
        let x = BigRational::from_integer(BigInt::from(gamma));
        let f = cds::f_nk(n, g.min_degree(), &x).unwrap();
        prop_assert!(BigRational::from_integer(BigInt::from(gamma_c)) <= x + f);
        let out = cds::derandomized_cds(&g).unwrap();
        prop_assert!(out.set.len() >= gamma_c);
    }

    #[test]
    fn fair_matching_between_optimum_and_bound(seed in any::<u64>(), n in 2usize..=6, m in 1usize..=4) {
        let p = EdgePartition::random(Graph::complete_bipartite(n), m, &mut seeded(seed));
        let nb = fair::matching_neighborhood(n).unwrap();
        let out = fair::local_search(&p, nb.start(), &nb, SearchMode::Exhaustive).unwrap();
        let opt = oracle::exact_fair_optimum(&p, FairPattern::Matching, &OracleBudget::default()).unwrap();
        prop_assert!(opt.scaled_potential <= out.scaled_potential);
        prop_assert!(out.dist_l2() <= fair::fairness_bound(m, 2) || m == 1 && out.scaled_potential == 0);
    }

    #[test]
    fn fair_hamilton_between_optimum_and_bound(seed in any::<u64>(), n in 5usize..=7, m in 2usize..=3) {
        let p = EdgePartition::random(Graph::complete(n), m, &mut seeded(seed));
        let nb = fair::hamilton_neighborhood(n).unwrap();
        let out = fair::local_search(&p, nb.start(), &nb, SearchMode::Exhaustive).unwrap();
        let opt = oracle::exact_fair_optimum(&p, FairPattern::Hamilton, &OracleBudget::default()).unwrap();
        prop_assert!(opt.scaled_potential <= out.scaled_potential);
        prop_assert!(out.dist_l2() < fair::fairness_bound(m, 2));
    }

    #[test]
    fn oracle_partitions_are_exactly_the_valid_ones(seed in any::<u64>(), n in 3usize..=7, k in 1usize..=2) {
        prop_assume!(k < n);
        let mut rng = seeded(seed);
        let lists: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                rand::seq::index::sample(&mut rng, others.len(), k).into_iter().map(|x| others[x]).collect()
            })
            .collect();
        let inst = CoalitionInstance::with_coalition(n, k, lists).unwrap();
        let found = oracle::all_valid_partitions(&inst, &OracleBudget::default()).unwrap();
        let mut valid = 0usize;
        coalition::for_each_set_partition(n, &mut |labels| {
            let parts = label_parts(labels);
            if partition_valid(n, &inst.choices, &parts) {
                valid += 1;
            }
            false
        });
        prop_assert_eq!(found.len(), valid);
        for pr in &found {
            prop_assert!(partition_valid(n, &inst.choices, &pr.parts));
            prop_assert!(coalition::verify_partition(&inst, pr).unwrap());
            prop_assert!(pr.parts.iter().all(|p| p.len() >= 2));
        }
    }
}

fn label_parts(labels: &[usize]) -> Vec<Vec<usize>> {
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        parts[l].push(v);
    }
    parts
}

#[test]
fn fair_optimum_examples() {
    let b = OracleBudget::default();
    let one = EdgePartition::random(Graph::complete_bipartite(4), 1, &mut seeded(1));
    assert_eq!(oracle::exact_fair_optimum(&one, FairPattern::Matching, &b).unwrap().scaled_potential, 0);
    // both matchings of K_{2,2} are monochromatic, so x is (2,0) or (0,2)
    let host = Graph::complete_bipartite(2);
    let p = EdgePartition::new(host, 2, [((0, 2), 0), ((1, 3), 0), ((0, 3), 1), ((1, 2), 1)]).unwrap();
    let opt = oracle::exact_fair_optimum(&p, FairPattern::Matching, &b).unwrap();
    assert!((opt.dist_l2 - 2f64.sqrt()).abs() < 1e-12);
    let big = EdgePartition::random(Graph::complete_bipartite(7), 2, &mut seeded(1));
    assert!(matches!(oracle::exact_fair_optimum(&big, FairPattern::Matching, &b), Err(Error::TooLarge(_))));
}

#[test]
fn partition_oracle_examples() {
    let b = OracleBudget::default();
    let cyclic = CoalitionInstance::with_coalition(3, 1, vec![vec![1], vec![2], vec![0]]).unwrap();
    let found = oracle::all_valid_partitions(&cyclic, &b).unwrap();
    assert_eq!(found, vec![PartitionResult { parts: vec![vec![0, 1, 2]] }]);
    let singleton = PartitionResult { parts: vec![vec![0, 1], vec![2]] };
    assert!(!coalition::verify_partition(&cyclic, &singleton).unwrap());
    let big = CoalitionInstance::with_coalition(11, 1, (0..11).map(|i| vec![(i + 1) % 11]).collect()).unwrap();
    assert!(matches!(oracle::all_valid_partitions(&big, &b), Err(Error::TooLarge(_))));
}

#[test]
fn budget_override_is_clamped() {
    let b = OracleBudget::default().with_overrides("girth=99, gamma=3").unwrap();
    assert_eq!(b.girth, OracleBudget::HARD.girth);
    assert_eq!(b.gamma, 3);
    assert!(OracleBudget::default().with_overrides("depth=3").is_err());
}
