//! Reference oracles and instance suites shared by the integration tests.
//! Everything here is deliberately naive: plain subset enumeration and
//! direct evaluation of definitions, independent of the library's solvers.

#![allow(dead_code)]

use bmwis_core::generators::{gen_random_bipartite, BipartiteGraph, BudgetRule, RandomBipartiteParams};
use bmwis_core::BudgetedInstance;
use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;

/// Best budgeted independent set weight by enumerating all `2^n` subsets.
pub fn opt_by_enumeration(inst: &BudgetedInstance) -> u64 {
    let n = inst.vertex_count();
    assert!(n <= 20, "reference enumeration is for small instances");
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if !independent(inst, &vs) {
            continue;
        }
        let cost: u64 = vs.iter().map(|&v| inst.cost(v)).sum();
        let weight: u64 = vs.iter().map(|&v| inst.weight(v)).sum();
        if cost <= inst.budget() && weight > best {
            best = weight;
        }
    }
    best
}

pub fn independent(inst: &BudgetedInstance, vs: &[usize]) -> bool {
    vs.iter().all(|&u| vs.iter().all(|&v| !inst.edges().contains(&(u.min(v), u.max(v)))))
}

/// Whether `g` contains `K_{k,k}`, by checking every pair of `k`-subsets.
pub fn has_balanced_biclique(g: &BipartiteGraph, k: usize) -> bool {
    let ls = k_subsets(g.left(), k);
    let rs = k_subsets(g.right(), k);
    ls.iter().any(|a| rs.iter().any(|b| a.iter().all(|&l| b.iter().all(|&r| g.edges().contains(&(l, r))))))
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// The `left × right` graph whose edge `(l, r)` is bit `l·right + r` of `mask`.
pub fn graph_from_mask(left: usize, right: usize, mask: u64) -> BipartiteGraph {
    let edges = (0..left).flat_map(|l| (0..right).map(move |r| (l, r))).filter(|&(l, r)| mask >> (l * right + r) & 1 == 1);
    BipartiteGraph::new(left, right, edges).unwrap()
}

/// Seeded random bipartite instances with `n ≤ 12`, weights in `0..=20`,
/// costs in `0..=10`; side sizes, density and budget fraction vary by seed.
pub fn random_suite(count: u64) -> Vec<(u64, BudgetedInstance)> {
    (0..count)
        .map(|seed| {
            let mut rng = SplitMix64::seed_from_u64(seed ^ 0x5eed_0000);
            let params = RandomBipartiteParams {
                left: rng.random_range(1..=6),
                right: rng.random_range(1..=6),
                edge_prob: (rng.random_range(0..=10), 10),
                weight_range: (0, 20),
                cost_range: (0, 10),
                budget: BudgetRule::FractionOfTotal(rng.random_range(0..=10), 10),
                seed,
                planted: None,
            };
            (seed, gen_random_bipartite(&params).unwrap())
        })
        .collect()
}

/// Every bipartite graph with `1 ≤ |L| ≤ |R|` and `|L| + |R| ≤ 8`, each
/// with unit costs, seeded weights in `1..=20` and a budget cycling through
/// `1..=n`.
pub fn uniform_cost_family() -> impl Iterator<Item = BudgetedInstance> {
    let shapes: Vec<(usize, usize)> = (1..=4).flat_map(|a| (a..=8 - a).map(move |b| (a, b))).collect();
    shapes.into_iter().flat_map(|(a, b)| {
        (0u64..(1 << (a * b))).map(move |mask| {
            let g = graph_from_mask(a, b, mask);
            let n = a + b;
            let mut rng = SplitMix64::seed_from_u64(mask.wrapping_mul(31).wrapping_add((a * 10 + b) as u64));
            let weights: Vec<u64> = (0..n).map(|_| rng.random_range(1..=20)).collect();
            let budget = 1 + mask % n as u64;
            let mut inst = g.to_instance((1, 1), (1, 1), budget);
            inst = BudgetedInstance::new(weights, vec![1; n], budget, inst.edges().to_vec(), inst.sides().map(<[_]>::to_vec))
                .unwrap();
            inst
        })
    })
}
