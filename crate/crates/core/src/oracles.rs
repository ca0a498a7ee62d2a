//! Unbudgeted maximum weight independent set oracles over exact rational
//! vertex weights.
//!
//! [`mwis_bipartite`] solves bipartite inputs through minimum vertex cover /
//! minimum cut duality. [`mwis_bruteforce`] works on any graph at small
//! scale and serves as the reference for the flow oracle.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{Capacity, Dinic};
use crate::instance::{BudgetedInstance, Side};
use crate::ratio::{self, Ratio};

pub const DEFAULT_BRUTEFORCE_CAP: usize = 30;

/// Per-vertex objective coefficients; may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment(pub Vec<Ratio>);

impl WeightAssignment {
    pub fn from_weights(inst: &BudgetedInstance) -> Self {
        WeightAssignment(inst.weights().iter().map(|&w| ratio::int(w)).collect())
    }

    pub fn get(&self, v: usize) -> &Ratio {
        &self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Objective value of a vertex set.
    pub fn value(&self, vs: &[usize]) -> Ratio {
        vs.iter().fold(Ratio::zero(), |acc, &v| acc + &self.0[v])
    }
}

/// Secondary objective among maximizers of the primary one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TieBreak {
    PreferMinCost,
    PreferMaxCost,
    None,
}

/// Integer objective whose maximizers are exactly the `tb`-preferred
/// maximizers of `wa`. Non-positive entries map to zero and are never
/// selected by either oracle.
///
/// With `D` the common denominator and `M = 1 + sum(c)`, a positive vertex
/// gets `M * D * wa(v) -/+ c(v)`; every cost difference is below `M`, so the
/// primary objective dominates.
pub(crate) fn folded_weights(
    inst: &BudgetedInstance,
    wa: &WeightAssignment,
    tb: TieBreak,
) -> Result<Vec<BigInt>> {
    if wa.len() != inst.vertex_count() {
        return Err(Error::InvalidParams(format!(
            "weight assignment has {} entries for {} vertices",
            wa.len(),
            inst.vertex_count()
        )));
    }
    let positive: Vec<Ratio> = wa
        .0
        .iter()
        .map(|r| if r.is_positive() { r.clone() } else { Ratio::zero() })
        .collect();
    let scaled = ratio::clear_denominators(&positive);
    let m = BigInt::from(inst.total_cost()) + BigInt::one();
    Ok(scaled
        .into_iter()
        .enumerate()
        .map(|(v, s)| {
            if !s.is_positive() {
                return BigInt::zero();
            }
            let c = BigInt::from(inst.cost(v));
            match tb {
                TieBreak::PreferMinCost => &m * s - c,
                TieBreak::PreferMaxCost => &m * s + c,
                TieBreak::None => s,
            }
        })
        .collect())
}

/// Narrows to i128 when the total stays far from overflow.
fn as_i128(values: &[BigInt]) -> Option<Vec<i128>> {
    let total: BigInt = values.iter().sum();
    if total.bits() > 120 {
        return None;
    }
    values.iter().map(|v| v.to_i128()).collect()
}

/// Maximum weight independent set of a bipartite instance.
pub fn mwis_bipartite(inst: &BudgetedInstance, wa: &WeightAssignment, tb: TieBreak) -> Result<Vec<usize>> {
    let sides = inst.bipartition()?;
    let w = folded_weights(inst, wa, tb)?;
    Ok(flow_mwis(inst, &sides, &w))
}

pub(crate) fn flow_mwis(inst: &BudgetedInstance, sides: &[Side], w: &[BigInt]) -> Vec<usize> {
    match as_i128(w) {
        Some(small) => flow_mwis_typed(inst, sides, small),
        None => flow_mwis_typed(inst, sides, w.to_vec()),
    }
}

// Source feeds positive Left vertices, positive Right vertices drain to the
// sink, conflict edges are uncuttable. The minimum cut is a minimum weight
// vertex cover; its complement among positive vertices is the answer.
fn flow_mwis_typed<T: Capacity>(inst: &BudgetedInstance, sides: &[Side], w: Vec<T>) -> Vec<usize> {
    let n = inst.vertex_count();
    let (s, t) = (n, n + 1);
    let zero = T::zero();
    let positive: Vec<bool> = w.iter().map(|x| *x > zero).collect();
    let unbounded = w.iter().fold(T::zero(), |acc, x| acc + x.clone()) + one_of(&w);
    let mut net = Dinic::new(n + 2);
    for v in (0..n).filter(|&v| positive[v]) {
        match sides[v] {
            Side::Left => net.add_edge(s, v, w[v].clone()),
            Side::Right => net.add_edge(v, t, w[v].clone()),
        };
    }
    for &(a, b) in inst.edges() {
        if positive[a] && positive[b] {
            let (l, r) = if sides[a] == Side::Left { (a, b) } else { (b, a) };
            net.add_edge(l, r, unbounded.clone());
        }
    }
    net.max_flow(s, t, unbounded);
    let reach = net.source_side(s);
    (0..n)
        .filter(|&v| positive[v] && (reach[v] == (sides[v] == Side::Left)))
        .collect()
}

// `T` has no `One` bound; any positive entry works as the +1 slack, and with
// no positive entry there are no arcs at all.
fn one_of<T: Capacity>(w: &[T]) -> T {
    w.iter()
        .find(|x| **x > T::zero())
        .cloned()
        .unwrap_or_else(T::zero)
}

pub fn mwis_bruteforce(inst: &BudgetedInstance, wa: &WeightAssignment) -> Result<Vec<usize>> {
    mwis_bruteforce_capped(inst, wa, DEFAULT_BRUTEFORCE_CAP)
}

/// Exact MWIS on any graph by branch and bound.
pub fn mwis_bruteforce_capped(inst: &BudgetedInstance, wa: &WeightAssignment, cap: usize) -> Result<Vec<usize>> {
    check_bruteforce_cap(inst, cap)?;
    let w = folded_weights(inst, wa, TieBreak::None)?;
    Ok(bruteforce_mwis(inst, &w))
}

pub(crate) fn check_bruteforce_cap(inst: &BudgetedInstance, cap: usize) -> Result<()> {
    let n = inst.vertex_count();
    if n > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "brute-force vertex count",
            size: n as u128,
            cap: cap.min(64) as u128,
        });
    }
    Ok(())
}

pub(crate) fn bruteforce_mwis(inst: &BudgetedInstance, w: &[BigInt]) -> Vec<usize> {
    let chosen = match as_i128(w) {
        Some(small) => BranchAndBound::run(inst, small),
        None => BranchAndBound::run(inst, w.to_vec()),
    };
    (0..inst.vertex_count()).filter(|&v| chosen >> v & 1 == 1).collect()
}

pub(crate) fn adjacency_masks(inst: &BudgetedInstance) -> Vec<u64> {
    (0..inst.vertex_count())
        .map(|v| inst.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

struct BranchAndBound<T> {
    adj: Vec<u64>,
    w: Vec<T>,
    best: T,
    best_set: u64,
}

impl<T: Capacity> BranchAndBound<T> {
    fn run(inst: &BudgetedInstance, w: Vec<T>) -> u64 {
        let cand = (0..inst.vertex_count())
            .filter(|&v| w[v] > T::zero())
            .fold(0u64, |m, v| m | 1 << v);
        let mut search = BranchAndBound {
            adj: adjacency_masks(inst),
            w,
            best: T::zero(),
            best_set: 0,
        };
        search.go(cand, T::zero(), 0);
        search.best_set
    }

    fn sum(&self, mut set: u64) -> T {
        let mut total = T::zero();
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            total = total + self.w[v].clone();
            set &= set - 1;
        }
        total
    }

    fn go(&mut self, cand: u64, current: T, chosen: u64) {
        let bound = current.clone() + self.sum(cand);
        if bound <= self.best {
            return;
        }
        let mut pick = None;
        let mut set = cand;
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            let deg = (self.adj[v] & cand).count_ones();
            if deg > 0 && pick.is_none_or(|(_, d)| deg > d) {
                pick = Some((v, deg));
            }
            set &= set - 1;
        }
        let Some((v, _)) = pick else {
            // No conflicts left: take every candidate.
            self.best = bound;
            self.best_set = chosen | cand;
            return;
        };
        let bit = 1u64 << v;
        self.go(cand & !bit & !self.adj[v], current.clone() + self.w[v].clone(), chosen | bit);
        self.go(cand & !bit, current, chosen);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};

    fn path() -> BudgetedInstance {
        BudgetedInstance::new(vec![1, 3, 1], vec![1, 1, 1], 3, vec![(0, 1), (1, 2)], None).unwrap()
    }

    #[test]
    fn path_prefers_middle() {
        let inst = path();
        let wa = WeightAssignment::from_weights(&inst);
        for tb in [TieBreak::None, TieBreak::PreferMinCost, TieBreak::PreferMaxCost] {
            assert_eq!(mwis_bipartite(&inst, &wa, tb).unwrap(), vec![1]);
        }
        assert_eq!(mwis_bruteforce(&inst, &wa).unwrap(), vec![1]);
    }

    #[test]
    fn zero_weights_give_empty_set() {
        let inst = path();
        let wa = WeightAssignment(vec![int(0), int(0), int(-2)]);
        assert!(mwis_bipartite(&inst, &wa, TieBreak::PreferMaxCost).unwrap().is_empty());
        assert!(mwis_bruteforce(&inst, &wa).unwrap().is_empty());
    }

    #[test]
    fn triangle_and_single_vertex() {
        let tri = BudgetedInstance::new(vec![2, 2, 3], vec![1, 1, 1], 1, vec![(0, 1), (1, 2), (0, 2)], None).unwrap();
        let wa = WeightAssignment::from_weights(&tri);
        assert_eq!(mwis_bruteforce(&tri, &wa).unwrap(), vec![2]);
        assert!(matches!(mwis_bipartite(&tri, &wa, TieBreak::None), Err(Error::NotBipartite)));

        let one = BudgetedInstance::new(vec![5], vec![1], 0, vec![], None).unwrap();
        assert_eq!(mwis_bruteforce(&one, &WeightAssignment::from_weights(&one)).unwrap(), vec![0]);
    }

    #[test]
    fn tie_break_picks_cost_extremes() {
        // {0} and {1, 2} both weigh 2; costs 5 and 2.
        let inst = BudgetedInstance::new(vec![2, 1, 1], vec![5, 1, 1], 10, vec![(0, 1), (0, 2)], None).unwrap();
        let wa = WeightAssignment::from_weights(&inst);
        assert_eq!(mwis_bipartite(&inst, &wa, TieBreak::PreferMinCost).unwrap(), vec![1, 2]);
        assert_eq!(mwis_bipartite(&inst, &wa, TieBreak::PreferMaxCost).unwrap(), vec![0]);
    }

    #[test]
    fn rational_weights() {
        let inst = path();
        let wa = WeightAssignment(vec![frac(2, 3), frac(5, 4), frac(2, 3)]);
        let s = mwis_bipartite(&inst, &wa, TieBreak::None).unwrap();
        assert_eq!(wa.value(&s), frac(4, 3));
        assert_eq!(mwis_bruteforce(&inst, &wa).unwrap(), s);
    }

    #[test]
    fn cap_is_enforced() {
        let n = 31;
        let inst = BudgetedInstance::new(vec![1; n], vec![1; n], 1, vec![], None).unwrap();
        let wa = WeightAssignment::from_weights(&inst);
        assert!(matches!(mwis_bruteforce(&inst, &wa), Err(Error::CapExceeded { .. })));
        assert_eq!(mwis_bipartite(&inst, &wa, TieBreak::None).unwrap().len(), n);
    }
}
