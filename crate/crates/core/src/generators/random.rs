use rand::seq::index;
use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::instance::{BudgetedInstance, Side};

use super::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetRule {
    /// `floor(total_cost · num / den)`.
    FractionOfTotal(u64, u64),
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomBipartiteParams {
    pub left: usize,
    pub right: usize,
    /// Edge probability `num / den`.
    pub edge_prob: (u64, u64),
    /// Inclusive ranges.
    pub weight_range: (u64, u64),
    pub cost_range: (u64, u64),
    pub budget: BudgetRule,
    pub seed: u64,
    /// Sizes `(a, b)` of a biclique whose edges are forced present.
    pub planted: Option<(usize, usize)>,
}

impl Default for RandomBipartiteParams {
    fn default() -> Self {
        RandomBipartiteParams {
            left: 4,
            right: 4,
            edge_prob: (1, 2),
            weight_range: (1, 20),
            cost_range: (1, 10),
            budget: BudgetRule::FractionOfTotal(1, 2),
            seed: 0,
            planted: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomBipartite {
    /// Left vertices are ids `0..left`, right ones follow.
    pub instance: BudgetedInstance,
    pub graph: BipartiteGraph,
    /// Planted sides as left and right indices, ascending.
    pub planted: Option<(Vec<usize>, Vec<usize>)>,
}

impl RandomBipartiteParams {
    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        let (num, den) = self.edge_prob;
        if den == 0 || num > den {
            return bad("edge probability must lie in [0, 1]");
        }
        if self.weight_range.0 > self.weight_range.1 || self.cost_range.0 > self.cost_range.1 {
            return bad("empty weight or cost range");
        }
        if let BudgetRule::FractionOfTotal(_, 0) = self.budget {
            return bad("budget fraction has zero denominator");
        }
        if let Some((a, b)) = self.planted {
            if a > self.left || b > self.right {
                return bad("planted biclique larger than a side");
            }
        }
        Ok(())
    }
}

/// Seeded random bipartite instance. Draws from one SplitMix64 stream in a
/// fixed order: planted vertices, then one edge trial per `(l, r)` pair in
/// row-major order, then weight and cost of every vertex in id order.
pub fn gen_random_bipartite_detailed(p: &RandomBipartiteParams) -> Result<RandomBipartite> {
    p.check()?;
    let mut rng = SplitMix64::seed_from_u64(p.seed);
    let planted = p.planted.map(|(a, b)| {
        let mut ls = index::sample(&mut rng, p.left, a).into_vec();
        let mut rs = index::sample(&mut rng, p.right, b).into_vec();
        ls.sort_unstable();
        rs.sort_unstable();
        (ls, rs)
    });
    let (num, den) = p.edge_prob;
    let mut edges = Vec::new();
    for l in 0..p.left {
        for r in 0..p.right {
            let hit = rng.random_range(0..den) < num;
            let forced = planted.as_ref().is_some_and(|(ls, rs)| ls.contains(&l) && rs.contains(&r));
            if hit || forced {
                edges.push((l, r));
            }
        }
    }
    let n = p.left + p.right;
    let mut weights = Vec::with_capacity(n);
    let mut costs = Vec::with_capacity(n);
    for _ in 0..n {
        weights.push(rng.random_range(p.weight_range.0..=p.weight_range.1));
        costs.push(rng.random_range(p.cost_range.0..=p.cost_range.1));
    }
    let budget = match p.budget {
        BudgetRule::Fixed(b) => b,
        BudgetRule::FractionOfTotal(num, den) => {
            let total: u128 = costs.iter().map(|&c| c as u128).sum();
            u64::try_from(total * num as u128 / den as u128).map_err(|_| Error::Overflow("budget"))?
        }
    };
    let graph = BipartiteGraph::new(p.left, p.right, edges)?;
    let mut sides = vec![Side::Left; p.left];
    sides.resize(n, Side::Right);
    let instance = BudgetedInstance::new(
        weights,
        costs,
        budget,
        graph.edges().iter().map(|&(l, r)| (l, p.left + r)).collect(),
        Some(sides),
    )?;
    Ok(RandomBipartite { instance, graph, planted })
}

pub fn gen_random_bipartite(p: &RandomBipartiteParams) -> Result<BudgetedInstance> {
    Ok(gen_random_bipartite_detailed(p)?.instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let p = RandomBipartiteParams { seed: 42, left: 5, right: 6, ..Default::default() };
        let a = gen_random_bipartite(&p).unwrap();
        let b = gen_random_bipartite(&p).unwrap();
        assert_eq!(a, b);
        let c = gen_random_bipartite(&RandomBipartiteParams { seed: 43, ..p }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn probability_extremes() {
        let p = RandomBipartiteParams { edge_prob: (1, 1), left: 3, right: 4, ..Default::default() };
        assert_eq!(gen_random_bipartite(&p).unwrap().edge_count(), 12);
        let p = RandomBipartiteParams { edge_prob: (0, 1), ..p };
        assert_eq!(gen_random_bipartite(&p).unwrap().edge_count(), 0);
    }

    #[test]
    fn planted_edges_are_present() {
        let p = RandomBipartiteParams { edge_prob: (0, 1), planted: Some((2, 3)), left: 4, right: 5, ..Default::default() };
        let r = gen_random_bipartite_detailed(&p).unwrap();
        let (ls, rs) = r.planted.unwrap();
        assert!(r.graph.is_biclique(&ls, &rs));
        assert_eq!(r.graph.edges().len(), 6);
        let too_big = RandomBipartiteParams { planted: Some((5, 1)), ..p };
        assert!(gen_random_bipartite(&too_big).is_err());
    }
}
