//! Lagrangian 2-approximation for budgeted MWIS on graphs with an exact
//! unbudgeted MWIS oracle.
//!
//! The budget constraint is moved into the objective as `w(v) - λ·c(v)`.
//! A binary search over λ pins the breakpoint where the parametric optimum
//! crosses the budget, giving an inner solution `S1` (cost ≤ B) and an outer
//! solution `S2` (cost > B) that are both optimal at a common multiplier.
//! The answer is the best of `S1`, the longest budget-respecting density
//! prefix of `S2`, and the heaviest affordable single vertex. Guessing the
//! heaviest vertex of an optimum (`enumeration_level` ≥ 1) makes the result
//! at least half the optimum.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{BudgetedInstance, Side};
use crate::oracles::{self, TieBreak, WeightAssignment};
use crate::ratio::{self, Ratio};
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    BipartiteFlow,
    BruteForce,
}

#[derive(Debug, Clone)]
pub struct LagrangianConfig {
    /// Nominal tolerance, overriding `1 / (8·n·W)`. Only recorded in the
    /// trace: the search always runs to an exact breakpoint, which is finer.
    pub epsilon: Option<Ratio>,
    /// Largest forced-set size `r`, at most 3.
    pub enumeration_level: usize,
    pub oracle: OracleKind,
    pub bruteforce_cap: usize,
}

impl Default for LagrangianConfig {
    fn default() -> Self {
        LagrangianConfig {
            epsilon: None,
            enumeration_level: 1,
            oracle: OracleKind::BipartiteFlow,
            bruteforce_cap: oracles::DEFAULT_BRUTEFORCE_CAP,
        }
    }
}

impl LagrangianConfig {
    pub fn with_oracle(oracle: OracleKind) -> Self {
        LagrangianConfig {
            oracle,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(eps) = &self.epsilon {
            if !eps.is_positive() {
                return Err(Error::InvalidParams(format!("epsilon must be positive, got {eps}")));
            }
        }
        if self.enumeration_level > 3 {
            return Err(Error::InvalidParams(format!(
                "enumeration level must be at most 3, got {}",
                self.enumeration_level
            )));
        }
        Ok(())
    }

    pub fn epsilon_for(&self, inst: &BudgetedInstance) -> Option<Ratio> {
        self.epsilon.clone().or_else(|| default_epsilon(inst))
    }
}

/// `1 / (8·|V|·W(I))`; undefined for empty or weightless instances.
pub fn default_epsilon(inst: &BudgetedInstance) -> Option<Ratio> {
    let w = inst.max_vertex_weight().ok()?;
    if w == 0 {
        return None;
    }
    let den = BigInt::from(8u8) * BigInt::from(inst.vertex_count()) * BigInt::from(w);
    Some(Ratio::new(BigInt::one(), den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub description: String,
    pub solution: Solution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianTrace {
    pub lambda_low: Ratio,
    pub lambda_high: Ratio,
    /// Minimum-cost parametric optimum at `lambda_high`; within budget.
    pub inner: Solution,
    /// Maximum-cost parametric optimum at `lambda_low`; over budget. Absent
    /// when the budget does not bind.
    pub outer: Option<Solution>,
    pub iterations: usize,
    pub iteration_budget: usize,
    pub epsilon: Option<Ratio>,
    /// Vertices forced into the solution before the search ran.
    pub forced: Vec<usize>,
    pub candidates: Vec<Candidate>,
}

impl LagrangianTrace {
    fn unbinding(inner: Solution) -> Self {
        LagrangianTrace {
            lambda_low: Ratio::zero(),
            lambda_high: Ratio::zero(),
            inner,
            outer: None,
            iterations: 0,
            iteration_budget: 0,
            epsilon: None,
            forced: Vec::new(),
            candidates: Vec::new(),
        }
    }

    fn remap(&self, parent: &BudgetedInstance, map: &[usize]) -> Result<Self> {
        Ok(LagrangianTrace {
            inner: self.inner.remap(parent, map)?,
            outer: self.outer.as_ref().map(|s| s.remap(parent, map)).transpose()?,
            candidates: self
                .candidates
                .iter()
                .map(|c| {
                    Ok(Candidate {
                        description: c.description.clone(),
                        solution: c.solution.remap(parent, map)?,
                    })
                })
                .collect::<Result<_>>()?,
            forced: self.forced.iter().map(|&v| map[v]).collect(),
            ..self.clone()
        })
    }
}

/// `w(v) - λ·c(v)` for every vertex, unclamped.
pub fn adjusted_weights(inst: &BudgetedInstance, lambda: &Ratio) -> WeightAssignment {
    WeightAssignment(
        (0..inst.vertex_count())
            .map(|v| ratio::int(inst.weight(v)) - lambda * ratio::int(inst.cost(v)))
            .collect(),
    )
}

/// An independent set maximizing `Σ w(v) - λ·c(v)`; the budget is ignored.
pub fn parametric_solve(
    inst: &BudgetedInstance,
    lambda: &Ratio,
    tb: TieBreak,
    cfg: &LagrangianConfig,
) -> Result<Solution> {
    if lambda.is_negative() {
        return Err(Error::InvalidParams(format!("lambda must be non-negative, got {lambda}")));
    }
    let wa = adjusted_weights(inst, lambda);
    let vs = match cfg.oracle {
        OracleKind::BipartiteFlow => oracles::mwis_bipartite(inst, &wa, tb)?,
        OracleKind::BruteForce => {
            oracles::check_bruteforce_cap(inst, cfg.bruteforce_cap)?;
            let w = oracles::folded_weights(inst, &wa, tb)?;
            oracles::bruteforce_mwis(inst, &w)
        }
    };
    Solution::from_vertices(inst, vs)
}

fn ceil_log2(x: &BigInt) -> usize {
    if *x <= BigInt::one() {
        return 0;
    }
    let bits = x.bits() as usize;
    let power_of_two = (x - 1u8).bits() < x.bits();
    if power_of_two {
        bits - 1
    } else {
        bits
    }
}

/// Binary search for the multiplier at which the parametric optimum crosses
/// the budget.
///
/// Breakpoints of the parametric optimum are ratios of integers with
/// denominators below `C = 1 + Σc`, so distinct breakpoints are at least
/// `1/C²` apart; once the interval is no wider than `1/(2C²)` it holds
/// exactly one.
pub fn find_breakpoint(inst: &BudgetedInstance, cfg: &LagrangianConfig) -> Result<LagrangianTrace> {
    let budget = inst.budget();
    let at_zero = parametric_solve(inst, &Ratio::zero(), TieBreak::PreferMinCost, cfg)?;
    if at_zero.cost() <= budget {
        return Ok(LagrangianTrace::unbinding(at_zero));
    }

    let c = BigInt::from(inst.total_cost()) + 1u8;
    let w_max = BigInt::from(inst.max_vertex_weight()?);
    let resolution = Ratio::new(BigInt::one(), BigInt::from(2u8) * &c * &c);
    let iteration_budget = ceil_log2(&((&w_max + 1u8) * 2u8 * &c * &c));

    let mut low = Ratio::zero();
    let mut high = Ratio::from_integer(w_max + 1u8);
    // Every positive-cost vertex is unprofitable at `high`.
    let mut inner = parametric_solve(inst, &high, TieBreak::PreferMinCost, cfg)?;
    debug_assert!(inner.cost() <= budget);
    let mut iterations = 0;
    while &high - &low > resolution {
        let mid = (&low + &high) / ratio::int(2);
        let s = parametric_solve(inst, &mid, TieBreak::PreferMinCost, cfg)?;
        if s.cost() <= budget {
            high = mid;
            inner = s;
        } else {
            low = mid;
        }
        iterations += 1;
    }
    debug_assert!(iterations <= iteration_budget);
    let outer = parametric_solve(inst, &low, TieBreak::PreferMaxCost, cfg)?;
    debug_assert!(outer.cost() > budget);

    Ok(LagrangianTrace {
        lambda_low: low,
        lambda_high: high,
        inner,
        outer: Some(outer),
        iterations,
        iteration_budget,
        epsilon: cfg.epsilon_for(inst),
        forced: Vec::new(),
        candidates: Vec::new(),
    })
}

/// Zero-cost vertices first, then non-increasing `w/c`, then lower id.
fn density_order(inst: &BudgetedInstance, vs: &[usize]) -> Vec<usize> {
    let mut order = vs.to_vec();
    order.sort_by(|&a, &b| {
        let (wa, ca) = (inst.weight(a) as u128, inst.cost(a) as u128);
        let (wb, cb) = (inst.weight(b) as u128, inst.cost(b) as u128);
        (ca != 0)
            .cmp(&(cb != 0))
            .then_with(|| (wb * ca).cmp(&(wa * cb)))
            .then(a.cmp(&b))
    });
    order
}

fn candidates(inst: &BudgetedInstance, trace: &LagrangianTrace) -> Result<Vec<Candidate>> {
    let budget = inst.budget();
    let mut out = vec![Candidate {
        description: "inner".to_string(),
        solution: trace.inner.clone(),
    }];
    if let Some(outer) = &trace.outer {
        let mut prefix = Solution::empty();
        for v in density_order(inst, outer.vertices()) {
            if prefix.cost() as u128 + inst.cost(v) as u128 > budget as u128 {
                break;
            }
            prefix.insert(inst, v)?;
        }
        out.push(Candidate {
            description: "outer-prefix".to_string(),
            solution: prefix,
        });
    }
    let single = (0..inst.vertex_count())
        .filter(|&v| inst.cost(v) <= budget)
        .max_by(|&a, &b| inst.weight(a).cmp(&inst.weight(b)).then(b.cmp(&a)));
    if let Some(v) = single {
        out.push(Candidate {
            description: "best-single".to_string(),
            solution: Solution::from_vertices(inst, [v])?,
        });
    }
    Ok(out)
}

fn best_of(cands: &[Candidate]) -> Solution {
    let mut best = Solution::empty();
    for c in cands {
        if c.solution.better_than(&best) {
            best = c.solution.clone();
        }
    }
    best
}

/// Heaviest budget-respecting candidate derived from a breakpoint trace.
pub fn combine(inst: &BudgetedInstance, trace: &LagrangianTrace) -> Result<Solution> {
    Ok(best_of(&candidates(inst, trace)?))
}

/// Independent vertex sets of size at most `r` with total cost within
/// `budget`, in lexicographic order starting with the empty set.
fn forced_sets(inst: &BudgetedInstance, r: usize) -> Vec<Vec<usize>> {
    fn extend(inst: &BudgetedInstance, r: usize, from: usize, cur: &mut Vec<usize>, cost: u128, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == r {
            return;
        }
        for v in from..inst.vertex_count() {
            let c = cost + inst.cost(v) as u128;
            if c > inst.budget() as u128 || cur.iter().any(|&u| inst.has_edge(u, v)) {
                continue;
            }
            cur.push(v);
            extend(inst, r, v + 1, cur, c, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(inst, r, 0, &mut Vec::new(), 0, &mut out);
    out
}

/// Vertices that may join a solution already containing `forced`.
fn residual_vertices(inst: &BudgetedInstance, forced: &[usize]) -> (Vec<usize>, u64) {
    let forced_cost: u64 = forced.iter().map(|&v| inst.cost(v)).sum();
    let left = inst.budget() - forced_cost;
    let cap_weight = forced.iter().map(|&v| inst.weight(v)).min();
    let keep = (0..inst.vertex_count())
        .filter(|&v| {
            !forced.contains(&v)
                && forced.iter().all(|&u| !inst.has_edge(u, v))
                && cap_weight.is_none_or(|m| inst.weight(v) <= m)
                && inst.cost(v) <= left
        })
        .collect();
    (keep, left)
}

/// Budgeted MWIS 2-approximation. Returns the solution and the trace of the
/// forced set that produced it.
pub fn msp_solve(inst: &BudgetedInstance, cfg: &LagrangianConfig) -> Result<(Solution, LagrangianTrace)> {
    cfg.validate()?;
    let sides: Option<Vec<Side>> = match cfg.oracle {
        OracleKind::BipartiteFlow => Some(inst.bipartition()?),
        OracleKind::BruteForce => {
            oracles::check_bruteforce_cap(inst, cfg.bruteforce_cap)?;
            None
        }
    };

    let at_zero = parametric_solve(inst, &Ratio::zero(), TieBreak::PreferMinCost, cfg)?;
    if at_zero.cost() <= inst.budget() {
        let mut trace = LagrangianTrace::unbinding(at_zero.clone());
        trace.candidates.push(Candidate {
            description: "unbudgeted-optimum".to_string(),
            solution: at_zero.clone(),
        });
        return Ok((at_zero, trace));
    }

    let mut best: Option<(Solution, LagrangianTrace)> = None;
    for forced in forced_sets(inst, cfg.enumeration_level) {
        let (keep, left) = residual_vertices(inst, &forced);
        let sub = inst.induced(&keep, left, sides.as_deref());
        let sub_trace = find_breakpoint(&sub, cfg)?;
        let sub_cands = candidates(&sub, &sub_trace)?;
        let sub_best = best_of(&sub_cands);

        let mut solution = sub_best.remap(inst, &keep)?;
        for &v in &forced {
            solution.insert(inst, v)?;
        }
        let improves = best.as_ref().is_none_or(|(b, _)| solution.better_than(b));
        if improves {
            let mut trace = LagrangianTrace {
                candidates: sub_cands,
                ..sub_trace
            }
            .remap(inst, &keep)?;
            trace.forced = forced;
            best = Some((solution, trace));
        }
    }
    // The empty forced set is always enumerated.
    Ok(best.expect("forced-set enumeration is never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};

    fn star(n: usize) -> BudgetedInstance {
        let mut w = vec![n as u64];
        let mut c = vec![1];
        w.extend(std::iter::repeat_n(2, n));
        c.extend(std::iter::repeat_n(2, n));
        let edges = (1..=n).map(|l| (0, l)).collect();
        BudgetedInstance::new(w, c, 2, edges, None).unwrap()
    }

    #[test]
    fn adjusted_weight_arithmetic() {
        let inst = BudgetedInstance::new(vec![7], vec![3], 5, vec![], None).unwrap();
        assert_eq!(adjusted_weights(&inst, &int(0)).0, vec![int(7)]);
        assert_eq!(adjusted_weights(&inst, &int(2)).0, vec![int(1)]);
        assert_eq!(adjusted_weights(&inst, &frac(7, 3)).0, vec![int(0)]);
        let cfg = LagrangianConfig::default();
        let s = parametric_solve(&inst, &frac(7, 3), TieBreak::PreferMaxCost, &cfg).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn large_lambda_empties_positive_cost_instances() {
        let inst = star(4);
        let s = parametric_solve(&inst, &int(100), TieBreak::PreferMinCost, &LagrangianConfig::default()).unwrap();
        assert!(s.is_empty());
        assert!(parametric_solve(&inst, &int(-1), TieBreak::None, &LagrangianConfig::default()).is_err());
    }

    #[test]
    fn star_at_zero_takes_all_leaves() {
        let inst = star(4);
        let s = parametric_solve(&inst, &int(0), TieBreak::PreferMinCost, &LagrangianConfig::default()).unwrap();
        assert_eq!(s.vertices(), &[1, 2, 3, 4]);
        assert_eq!((s.weight(), s.cost()), (8, 8));
    }

    #[test]
    fn single_expensive_vertex() {
        let inst = BudgetedInstance::new(vec![5], vec![3], 2, vec![], None).unwrap();
        let trace = find_breakpoint(&inst, &LagrangianConfig::default()).unwrap();
        assert!(trace.inner.is_empty());
        assert_eq!(trace.outer.as_ref().unwrap().vertices(), &[0]);
        assert!(combine(&inst, &trace).unwrap().is_empty());
    }

    #[test]
    fn ceil_log2_values() {
        let cases = [(1u32, 0usize), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10), (1025, 11)];
        for (x, want) in cases {
            assert_eq!(ceil_log2(&BigInt::from(x)), want, "x = {x}");
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = LagrangianConfig {
            enumeration_level: 4,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        cfg.enumeration_level = 3;
        cfg.epsilon = Some(int(0));
        assert!(cfg.validate().is_err());
        cfg.epsilon = Some(frac(1, 10));
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn default_epsilon_value() {
        let inst = star(4);
        assert_eq!(default_epsilon(&inst), Some(frac(1, 8 * 5 * 4)));
    }

    #[test]
    fn forced_sets_respect_conflicts_and_budget() {
        let inst = star(3);
        let sets = forced_sets(&inst, 2);
        // Leaves cost 2 = B, so no pair fits; the center costs 1.
        assert_eq!(sets, vec![vec![], vec![0], vec![1], vec![2], vec![3]]);
    }
}
