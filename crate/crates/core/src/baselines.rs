//! Exact budgeted MWIS oracles and the two foil heuristics.

use crate::error::{Error, Result};
use crate::instance::{BudgetedInstance, Side};
use crate::lagrangian::{self, LagrangianConfig, OracleKind};
use crate::oracles::{self, TieBreak};
use crate::ratio::Ratio;
use crate::solution::Solution;

pub const DEFAULT_BMWIS_CAP: usize = 26;
pub const DEFAULT_ENUMERATION_CAP: usize = 16;
pub const DEFAULT_KNAPSACK_CELLS: u128 = 10_000_000;

/// Cost-indexed 0/1 knapsack table: `best[b]` is the heaviest subset of
/// cost at most `b`, so it never decreases in `b`.
#[derive(Debug, Clone)]
pub struct KnapsackTable {
    pub best: Vec<u64>,
    take: Vec<Vec<bool>>,
}

impl KnapsackTable {
    pub fn build(items: &[(u64, u64)], budget: u64) -> Result<Self> {
        let cells = (items.len() as u128 + 1) * (budget as u128 + 1);
        if cells > DEFAULT_KNAPSACK_CELLS {
            return Err(Error::CapExceeded {
                what: "knapsack table",
                size: cells,
                cap: DEFAULT_KNAPSACK_CELLS,
            });
        }
        let width = budget as usize + 1;
        let mut best = vec![0u64; width];
        let mut take = Vec::with_capacity(items.len());
        for &(w, c) in items {
            let mut row = vec![false; width];
            if c <= budget {
                let c = c as usize;
                for b in (c..width).rev() {
                    let with = best[b - c]
                        .checked_add(w)
                        .ok_or(Error::Overflow("knapsack weight"))?;
                    if with > best[b] {
                        best[b] = with;
                        row[b] = true;
                    }
                }
            }
            take.push(row);
        }
        Ok(KnapsackTable { best, take })
    }

    /// Item indices of an optimal subset for `budget`, ascending.
    pub fn chosen(&self, items: &[(u64, u64)], budget: u64) -> Vec<usize> {
        let mut b = budget as usize;
        let mut out = Vec::new();
        for i in (0..items.len()).rev() {
            if self.take[i][b] {
                out.push(i);
                b -= items[i].1 as usize;
            }
        }
        out.reverse();
        out
    }
}

/// Exact 0/1 knapsack: best weight and the chosen item indices.
pub fn knapsack_dp(items: &[(u64, u64)], budget: u64) -> Result<(u64, Vec<usize>)> {
    let table = KnapsackTable::build(items, budget)?;
    Ok((table.best[budget as usize], table.chosen(items, budget)))
}

fn knapsack_over(inst: &BudgetedInstance, vs: &[usize]) -> Result<Solution> {
    let items: Vec<(u64, u64)> = vs.iter().map(|&v| (inst.weight(v), inst.cost(v))).collect();
    let (_, chosen) = knapsack_dp(&items, inst.budget())?;
    Solution::from_vertices(inst, chosen.into_iter().map(|i| vs[i]))
}

pub fn bmwis_bruteforce(inst: &BudgetedInstance) -> Result<Solution> {
    bmwis_bruteforce_capped(inst, DEFAULT_BMWIS_CAP)
}

/// Exact budgeted optimum by branch and bound: branch on the candidate of
/// highest remaining degree, prune with the remaining weight and with the
/// fractional knapsack bound that ignores edges.
pub fn bmwis_bruteforce_capped(inst: &BudgetedInstance, cap: usize) -> Result<Solution> {
    let n = inst.vertex_count();
    if n > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "exact solver vertex count",
            size: n as u128,
            cap: cap.min(64) as u128,
        });
    }
    let by_density = {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let (wa, ca) = (inst.weight(a) as u128, inst.cost(a) as u128);
            let (wb, cb) = (inst.weight(b) as u128, inst.cost(b) as u128);
            (ca != 0).cmp(&(cb != 0)).then_with(|| (wb * ca).cmp(&(wa * cb))).then(a.cmp(&b))
        });
        order
    };
    let mut search = Exact {
        inst,
        adj: oracles::adjacency_masks(inst),
        by_density,
        best: 0,
        best_set: 0,
    };
    let cand = (0..n)
        .filter(|&v| inst.weight(v) > 0 && inst.cost(v) <= inst.budget())
        .fold(0u64, |m, v| m | 1 << v);
    search.go(cand, 0, 0, 0);
    let best_set = search.best_set;
    Solution::from_vertices(inst, (0..n).filter(|&v| best_set >> v & 1 == 1))
}

struct Exact<'a> {
    inst: &'a BudgetedInstance,
    adj: Vec<u64>,
    by_density: Vec<usize>,
    best: u128,
    best_set: u64,
}

impl Exact<'_> {
    /// Fractional knapsack value of `cand` with `room` budget left.
    fn fractional_bound(&self, cand: u64, room: u128) -> Ratio {
        let mut room = room;
        let mut total = Ratio::from_integer(0.into());
        for &v in &self.by_density {
            if cand >> v & 1 == 0 {
                continue;
            }
            let (w, c) = (self.inst.weight(v) as u128, self.inst.cost(v) as u128);
            if c <= room {
                room -= c;
                total += Ratio::from_integer(w.into());
            } else {
                total += Ratio::new((w * room).into(), c.into());
                break;
            }
        }
        total
    }

    fn go(&mut self, cand: u64, weight: u128, cost: u128, chosen: u64) {
        let room = self.inst.budget() as u128 - cost;
        // Drop candidates that no longer fit.
        let mut cand = cand;
        let mut set = cand;
        let mut remaining = 0u128;
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            if self.inst.cost(v) as u128 > room {
                cand &= !(1 << v);
            } else {
                remaining += self.inst.weight(v) as u128;
            }
            set &= set - 1;
        }
        if weight > self.best {
            self.best = weight;
            self.best_set = chosen;
        }
        if cand == 0 || weight + remaining <= self.best {
            return;
        }
        let bound = self.fractional_bound(cand, room) + Ratio::from_integer(weight.into());
        if bound <= Ratio::from_integer(self.best.into()) {
            return;
        }
        let mut pick = (usize::MAX, 0u32);
        let mut set = cand;
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            let deg = (self.adj[v] & cand).count_ones();
            if pick.0 == usize::MAX || deg > pick.1 {
                pick = (v, deg);
            }
            set &= set - 1;
        }
        let v = pick.0;
        let bit = 1u64 << v;
        self.go(
            cand & !bit & !self.adj[v],
            weight + self.inst.weight(v) as u128,
            cost + self.inst.cost(v) as u128,
            chosen | bit,
        );
        self.go(cand & !bit, weight, cost, chosen);
    }
}

/// Exact budgeted optimum by enumerating every subset; the reference for
/// [`bmwis_bruteforce`].
pub fn bmwis_enumerate(inst: &BudgetedInstance) -> Result<Solution> {
    let n = inst.vertex_count();
    if n > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "subset enumeration vertex count",
            size: n as u128,
            cap: DEFAULT_ENUMERATION_CAP as u128,
        });
    }
    let adj = oracles::adjacency_masks(inst);
    let mut best = (0u128, 0u64);
    for mask in 0u64..(1 << n) {
        let mut w = 0u128;
        let mut c = 0u128;
        let mut ok = true;
        for (v, &nb) in adj.iter().enumerate() {
            if mask >> v & 1 == 1 {
                if nb & mask != 0 {
                    ok = false;
                    break;
                }
                w += inst.weight(v) as u128;
                c += inst.cost(v) as u128;
            }
        }
        if ok && c <= inst.budget() as u128 && w > best.0 {
            best = (w, mask);
        }
    }
    Solution::from_vertices(inst, (0..n).filter(|&v| best.1 >> v & 1 == 1))
}

/// Solve MWIS ignoring the budget, then keep the best affordable subset of
/// it. Within an independent set the sub-problem is a plain knapsack.
pub fn trim_heuristic(inst: &BudgetedInstance, oracle: OracleKind) -> Result<Solution> {
    let cfg = LagrangianConfig::with_oracle(oracle);
    let unbudgeted = lagrangian::parametric_solve(inst, &Ratio::from_integer(0.into()), TieBreak::None, &cfg)?;
    knapsack_over(inst, unbudgeted.vertices())
}

/// Heavier of the exact knapsacks over the left side and the right side;
/// each side is edgeless.
pub fn side_knapsack(inst: &BudgetedInstance) -> Result<Solution> {
    let sides = inst.bipartition()?;
    let left: Vec<usize> = (0..inst.vertex_count()).filter(|&v| sides[v] == Side::Left).collect();
    let right: Vec<usize> = (0..inst.vertex_count()).filter(|&v| sides[v] == Side::Right).collect();
    let l = knapsack_over(inst, &left)?;
    let r = knapsack_over(inst, &right)?;
    Ok(if r.weight() > l.weight() { r } else { l })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knapsack_three_items() {
        let (w, chosen) = knapsack_dp(&[(6, 4), (5, 3), (5, 3)], 6).unwrap();
        assert_eq!(w, 10);
        assert_eq!(chosen, vec![1, 2]);
    }

    #[test]
    fn knapsack_zero_budget() {
        assert_eq!(knapsack_dp(&[(3, 1), (4, 2)], 0).unwrap(), (0, vec![]));
        assert_eq!(knapsack_dp(&[(3, 1), (4, 0)], 0).unwrap(), (4, vec![1]));
        assert_eq!(knapsack_dp(&[(9, 5)], 5).unwrap(), (9, vec![0]));
    }

    #[test]
    fn knapsack_table_is_monotone_and_capped() {
        let t = KnapsackTable::build(&[(3, 2), (4, 3), (5, 4), (1, 1)], 9).unwrap();
        assert!(t.best.windows(2).all(|p| p[0] <= p[1]));
        assert!(matches!(
            knapsack_dp(&[(1, 1); 20], 1_000_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn slack_budget_matches_unbudgeted_mwis() {
        let inst = BudgetedInstance::new(
            vec![3, 4, 2, 5, 1],
            vec![1, 2, 3, 4, 5],
            100,
            vec![(0, 1), (1, 2), (2, 3), (3, 4)],
            None,
        )
        .unwrap();
        let wa = oracles::WeightAssignment::from_weights(&inst);
        let mwis = oracles::mwis_bruteforce(&inst, &wa).unwrap();
        let s = bmwis_bruteforce(&inst).unwrap();
        assert_eq!(s.weight() as u128, mwis.iter().map(|&v| inst.weight(v) as u128).sum::<u128>());
        assert_eq!(s, bmwis_enumerate(&inst).unwrap());
    }

    #[test]
    fn edgeless_exact_equals_knapsack() {
        let inst = BudgetedInstance::new(vec![6, 5, 5], vec![4, 3, 3], 6, vec![], None).unwrap();
        assert_eq!(bmwis_bruteforce(&inst).unwrap().weight(), 10);
        assert_eq!(trim_heuristic(&inst, OracleKind::BipartiteFlow).unwrap().weight(), 10);
    }

    #[test]
    fn caps() {
        let inst = BudgetedInstance::new(vec![1; 27], vec![1; 27], 3, vec![], None).unwrap();
        assert!(matches!(bmwis_bruteforce(&inst), Err(Error::CapExceeded { .. })));
        assert!(matches!(bmwis_enumerate(&inst), Err(Error::CapExceeded { .. })));
    }
}
