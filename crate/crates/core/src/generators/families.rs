use crate::baselines;
use crate::error::{Error, Result};
use crate::instance::{BudgetedInstance, Side};
use crate::solution::Solution;

use super::BipartiteGraph;

pub const DEFAULT_REDUCED_LIMIT: u128 = 1_000_000;
pub const DEFAULT_UMSB_LIMIT: u128 = 1_000_000;

/// Star `K_{1,n}` on which trimming the unbudgeted optimum fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarParams {
    /// Number of leaves, at least 2.
    pub n: usize,
}

/// Center (id 0, left) has weight `n` and cost 1; each leaf has weight 2 and
/// cost 2; the budget is 2. The optimum is the center alone.
pub fn gen_star(p: StarParams) -> Result<BudgetedInstance> {
    if p.n < 2 {
        return Err(Error::InvalidParams(format!("star needs at least 2 leaves, got {}", p.n)));
    }
    let n = p.n;
    let mut weights = vec![n as u64];
    weights.extend(std::iter::repeat_n(2, n));
    let mut costs = vec![1];
    costs.extend(std::iter::repeat_n(2, n));
    let mut sides = vec![Side::Left];
    sides.extend(std::iter::repeat_n(Side::Right, n));
    BudgetedInstance::new(weights, costs, 2, (1..=n).map(|l| (0, l)).collect(), Some(sides))
}

#[derive(Debug, Clone)]
pub struct ReducedGraphParams {
    pub base: BipartiteGraph,
    pub t: u32,
    /// Upper bound on the number of tuples `|R|^t`.
    pub limit: u128,
}

fn tuple_count(right: usize, t: u32, limit: u128) -> Result<u128> {
    let count = (right as u128).checked_pow(t).filter(|&c| c <= limit);
    count.ok_or(Error::CapExceeded {
        what: "reduced graph tuple count",
        size: (right as f64).powi(t as i32).min(u128::MAX as f64) as u128,
        cap: limit,
    })
}

/// Coordinates of the `index`-th `t`-tuple over `0..right` in lexicographic
/// order (first coordinate most significant).
pub fn tuple_coordinates(mut index: u128, right: usize, t: u32) -> Vec<usize> {
    let mut coords = vec![0; t as usize];
    for slot in coords.iter_mut().rev() {
        *slot = (index % right as u128) as usize;
        index /= right as u128;
    }
    coords
}

/// The reduced graph: one side is `L`, the other is every `t`-tuple over `R`;
/// `ℓ` and a tuple are adjacent iff `ℓ` is adjacent to some coordinate.
/// Returned as a unit-weight, unit-cost instance with budget 0, left vertices
/// first and tuples after them in lexicographic order.
pub fn gen_reduced_graph(p: &ReducedGraphParams) -> Result<BudgetedInstance> {
    if p.t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    let g = &p.base;
    let count = tuple_count(g.right(), p.t, p.limit)?;
    let mut edges = Vec::new();
    for index in 0..count {
        let coords = tuple_coordinates(index, g.right(), p.t);
        for l in 0..g.left() {
            if coords.iter().any(|&r| g.has_edge(l, r)) {
                edges.push((l, g.left() + index as usize));
            }
        }
    }
    let n = g.left() + count as usize;
    let mut sides = vec![Side::Left; g.left()];
    sides.resize(n, Side::Right);
    BudgetedInstance::new(vec![1; n], vec![1; n], 0, edges, Some(sides))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub f_a: usize,
    /// `|R|^t - (|R| - |SR|)^t`.
    pub f_b: u128,
    /// Tuples hitting `SR`, counted on the explicit reduced graph.
    pub f_b_enumerated: Option<u128>,
    /// Whether `F_A ∪ F_B` is a biclique of the explicit reduced graph.
    pub biclique_confirmed: Option<bool>,
}

/// Sizes of the biclique that a planted biclique `(sa, sr)` of `g` induces in
/// the reduced graph. Below `limit` tuples the reduced graph is built and the
/// transfer is checked on it.
pub fn biclique_transfer_check(
    g: &BipartiteGraph,
    t: u32,
    sa: &[usize],
    sr: &[usize],
    limit: u128,
) -> Result<TransferReport> {
    if sa.iter().any(|&l| l >= g.left()) || sr.iter().any(|&r| r >= g.right()) || !g.is_biclique(sa, sr) {
        return Err(Error::InvalidParams("planted sets are not a biclique of the base graph".into()));
    }
    let n = g.right() as u128;
    let miss = n - sr.len() as u128;
    let overflow = || Error::Overflow("tuple count");
    let f_b = n.checked_pow(t).ok_or_else(overflow)? - miss.checked_pow(t).ok_or_else(overflow)?;

    let mut report = TransferReport {
        f_a: sa.len(),
        f_b,
        f_b_enumerated: None,
        biclique_confirmed: None,
    };
    let Ok(count) = tuple_count(g.right(), t, limit) else {
        return Ok(report);
    };
    let reduced = gen_reduced_graph(&ReducedGraphParams {
        base: g.clone(),
        t,
        limit,
    })?;
    let f_b_ids: Vec<usize> = (0..count)
        .filter(|&i| tuple_coordinates(i, g.right(), t).iter().any(|r| sr.contains(r)))
        .map(|i| g.left() + i as usize)
        .collect();
    report.f_b_enumerated = Some(f_b_ids.len() as u128);
    report.biclique_confirmed = Some(sa.iter().all(|&a| f_b_ids.iter().all(|&b| reduced.has_edge(a, b))));
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct UmsbParams {
    /// Side `A` is the left side, `B` the right side.
    pub base: BipartiteGraph,
    pub q: usize,
    pub p: u64,
    pub beta: u64,
    /// Upper bound on `q·|A| + |B|`.
    pub limit: u128,
}

/// Id of copy `i` of `A`-vertex `a` in a [`gen_umsb`] instance.
pub fn umsb_copy(a: usize, i: usize, q: usize) -> usize {
    a * q + i
}

/// Uniform-cost bipartite instance: `q` copies of every `A`-vertex, each
/// adjacent to the `B`-vertices its original is *not* adjacent to. Copies
/// weigh 1, `B`-vertices weigh `p`, every cost is 1 and the budget is `β`.
pub fn gen_umsb(params: &UmsbParams) -> Result<BudgetedInstance> {
    if params.q == 0 || params.p == 0 {
        return Err(Error::InvalidParams("q and p must be at least 1".into()));
    }
    let g = &params.base;
    let size = (params.q as u128)
        .checked_mul(g.left() as u128)
        .and_then(|x| x.checked_add(g.right() as u128))
        .filter(|&s| s <= params.limit)
        .ok_or(Error::CapExceeded {
            what: "U-MSB vertex count",
            size: (params.q as u128).saturating_mul(g.left() as u128),
            cap: params.limit,
        })?;
    let copies = params.q * g.left();
    let n = size as usize;
    let mut edges = Vec::new();
    for a in 0..g.left() {
        for b in (0..g.right()).filter(|&b| !g.has_edge(a, b)) {
            for i in 0..params.q {
                edges.push((umsb_copy(a, i, params.q), copies + b));
            }
        }
    }
    let mut weights = vec![1; copies];
    weights.resize(n, params.p);
    let mut sides = vec![Side::Left; copies];
    sides.resize(n, Side::Right);
    BudgetedInstance::new(weights, vec![1; n], params.beta, edges, Some(sides))
}

#[derive(Debug, Clone)]
pub struct CmwisReductionParams {
    pub base: BipartiteGraph,
    pub k: u64,
}

fn cmwis_values(k: u64) -> Result<(u64, u64, u64)> {
    let of = || Error::Overflow("reduction weights");
    let k2 = k.checked_mul(k).ok_or_else(of)?;
    let k3 = k2.checked_mul(k).ok_or_else(of)?;
    let four_k2 = k2.checked_mul(4).ok_or_else(of)?;
    let left = four_k2.checked_add(2 * k).ok_or_else(of)?;
    let right = four_k2.checked_add(1).ok_or_else(of)?;
    let budget = k3
        .checked_mul(8)
        .and_then(|x| x.checked_add(2 * k2))
        .and_then(|x| x.checked_add(k))
        .ok_or_else(of)?;
    Ok((left, right, budget))
}

/// Capacitated instance on the bipartite complement of `G`: left vertices
/// weigh `4k²+2k`, right ones `4k²+1`, costs equal weights, and the budget
/// `8k³+2k²+k` is reachable exactly by a `K_{k,k}` of `G`.
pub fn gen_cmwis_reduction(p: &CmwisReductionParams) -> Result<BudgetedInstance> {
    if p.k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    let (wl, wr, budget) = cmwis_values(p.k)?;
    let g = &p.base;
    let complement = BipartiteGraph::new(
        g.left(),
        g.right(),
        (0..g.left()).flat_map(|l| (0..g.right()).map(move |r| (l, r))).filter(|&(l, r)| !g.has_edge(l, r)),
    )?;
    Ok(complement.to_instance((wl, wl), (wr, wr), budget))
}

/// Decides whether `G` contains `K_{k,k}` by testing if the reduced
/// capacitated instance reaches its budget exactly.
pub fn decide_biclique_with(
    g: &BipartiteGraph,
    k: u64,
    exact_solver: impl Fn(&BudgetedInstance) -> Result<Solution>,
) -> Result<bool> {
    let inst = gen_cmwis_reduction(&CmwisReductionParams { base: g.clone(), k })?;
    Ok(exact_solver(&inst)?.weight() == inst.budget())
}

pub fn decide_biclique(g: &BipartiteGraph, k: u64) -> Result<bool> {
    decide_biclique_with(g, k, baselines::bmwis_bruteforce)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_shape() {
        let s = gen_star(StarParams { n: 4 }).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count(), s.budget()), (5, 4, 2));
        assert_eq!(s.max_vertex_weight().unwrap(), 4);
        assert!(gen_star(StarParams { n: 1 }).is_err());
    }

    #[test]
    fn tuple_order_is_lexicographic() {
        let all: Vec<Vec<usize>> = (0..8).map(|i| tuple_coordinates(i, 2, 3)).collect();
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[1], vec![0, 0, 1]);
        assert_eq!(all[6], vec![1, 1, 0]);
    }

    #[test]
    fn reduced_graph_extremes() {
        let empty = BipartiteGraph::new(2, 2, []).unwrap();
        let r = gen_reduced_graph(&ReducedGraphParams { base: empty, t: 2, limit: 100 }).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (6, 0));
        let full = BipartiteGraph::complete(2, 3);
        let r = gen_reduced_graph(&ReducedGraphParams { base: full, t: 2, limit: 100 }).unwrap();
        assert_eq!(r.edge_count(), 2 * 9);
        let big = BipartiteGraph::complete(2, 10);
        assert!(matches!(
            gen_reduced_graph(&ReducedGraphParams { base: big, t: 7, limit: 1_000_000 }),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn transfer_counts() {
        // n = 3, t = 2, |SR| = 2: 9 - 1 = 8.
        let g = BipartiteGraph::complete(3, 3);
        let rep = biclique_transfer_check(&g, 2, &[0], &[0, 1], 1000).unwrap();
        assert_eq!(rep.f_b, 8);
        assert_eq!(rep.f_b_enumerated, Some(8));
        assert_eq!(rep.biclique_confirmed, Some(true));
        let rep = biclique_transfer_check(&g, 3, &[1], &[0, 1, 2], 1000).unwrap();
        assert_eq!(rep.f_b, 27);
        let sparse = BipartiteGraph::new(2, 2, [(0, 0)]).unwrap();
        assert!(biclique_transfer_check(&sparse, 2, &[0, 1], &[0], 100).is_err());
    }

    #[test]
    fn cmwis_k1_values() {
        assert_eq!(cmwis_values(1).unwrap(), (6, 5, 11));
        assert_eq!(cmwis_values(2).unwrap(), (20, 17, 74));
        assert!(cmwis_values(u64::MAX / 2).is_err());
    }

    #[test]
    fn umsb_complete_base_has_no_edges() {
        let g = BipartiteGraph::complete(2, 3);
        let inst = gen_umsb(&UmsbParams { base: g, q: 4, p: 7, beta: 5, limit: 100 }).unwrap();
        assert_eq!(inst.vertex_count(), 11);
        assert_eq!(inst.edge_count(), 0);
        assert_eq!(inst.weight(8), 7);
        assert_eq!(inst.weight(0), 1);
    }
}
