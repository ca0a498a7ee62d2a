//! Instance families: the star counterexample for trimming, the reduced
//! tuple graph, uniform-cost bipartite (U-MSB) instances, the capacitated
//! reduction from balanced biclique, and seeded random bipartite graphs.
//! Also hosts the numeric checks that accompany the hardness constructions.

mod families;
pub mod gap;
pub mod inequalities;
mod random;

use std::collections::BTreeSet;

pub use families::{
    biclique_transfer_check, decide_biclique, decide_biclique_with, gen_cmwis_reduction, gen_reduced_graph,
    gen_star, gen_umsb, tuple_coordinates, umsb_copy, CmwisReductionParams, ReducedGraphParams, StarParams,
    TransferReport, UmsbParams, DEFAULT_REDUCED_LIMIT, DEFAULT_UMSB_LIMIT,
};
pub use random::{gen_random_bipartite, gen_random_bipartite_detailed, BudgetRule, RandomBipartite, RandomBipartiteParams};

use crate::error::{Error, Result};
use crate::instance::{BudgetedInstance, Side};

/// A bipartite graph with sides indexed separately: edge `(l, r)` joins
/// left vertex `l` and right vertex `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(l, r)) = edges.iter().find(|&&(l, r)| l >= left || r >= right) {
            return Err(Error::InvalidParams(format!(
                "edge ({l}, {r}) outside a {left}x{right} bipartite graph"
            )));
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn complete(left: usize, right: usize) -> Self {
        let edges = (0..left).flat_map(|l| (0..right).map(move |r| (l, r))).collect();
        BipartiteGraph { left, right, edges }
    }

    /// Reads the bipartite structure of an instance, ignoring weights.
    /// Left and right vertices keep their relative id order.
    pub fn from_instance(inst: &BudgetedInstance) -> Result<Self> {
        let sides = inst.bipartition()?;
        let mut index = vec![0; inst.vertex_count()];
        let (mut nl, mut nr) = (0, 0);
        for (v, s) in sides.iter().enumerate() {
            match s {
                Side::Left => {
                    index[v] = nl;
                    nl += 1;
                }
                Side::Right => {
                    index[v] = nr;
                    nr += 1;
                }
            }
        }
        let edges = inst.edges().iter().map(|&(u, v)| {
            if sides[u] == Side::Left {
                (index[u], index[v])
            } else {
                (index[v], index[u])
            }
        });
        Self::new(nl, nr, edges)
    }

    /// Instance with left vertices first (ids `0..left`), then right ones.
    pub fn to_instance(&self, left: (u64, u64), right: (u64, u64), budget: u64) -> BudgetedInstance {
        let n = self.left + self.right;
        let mut weights = vec![left.0; self.left];
        weights.resize(n, right.0);
        let mut costs = vec![left.1; self.left];
        costs.resize(n, right.1);
        let mut sides = vec![Side::Left; self.left];
        sides.resize(n, Side::Right);
        let edges = self.edges.iter().map(|&(l, r)| (l, self.left + r)).collect();
        BudgetedInstance::new(weights, costs, budget, edges, Some(sides)).expect("bipartite graph is a valid instance")
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.edges.contains(&(l, r))
    }

    pub fn is_biclique(&self, ls: &[usize], rs: &[usize]) -> bool {
        ls.iter().all(|&l| rs.iter().all(|&r| self.has_edge(l, r)))
    }

    pub fn without_edge(&self, l: usize, r: usize) -> Self {
        let mut g = self.clone();
        g.edges.remove(&(l, r));
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        let g = BipartiteGraph::new(2, 3, [(0, 0), (1, 2)]).unwrap();
        let inst = g.to_instance((1, 1), (2, 2), 3);
        assert_eq!(inst.edges(), &[(0, 2), (1, 4)]);
        assert_eq!(BipartiteGraph::from_instance(&inst).unwrap(), g);
        assert!(BipartiteGraph::new(1, 1, [(0, 1)]).is_err());
    }
}
