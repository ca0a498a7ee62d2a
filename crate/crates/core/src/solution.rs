use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::BudgetedInstance;

/// A vertex subset with cached weight and cost. Members are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Solution {
    vertices: Vec<usize>,
    total_weight: u64,
    total_cost: u64,
}

impl Solution {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_vertices(inst: &BudgetedInstance, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty();
        for v in vertices {
            s.insert(inst, v)?;
        }
        Ok(s)
    }

    /// Adds `v`; a no-op when already present.
    pub fn insert(&mut self, inst: &BudgetedInstance, v: usize) -> Result<()> {
        if v >= inst.vertex_count() {
            return Err(Error::InvalidVertex(v));
        }
        let Err(pos) = self.vertices.binary_search(&v) else {
            return Ok(());
        };
        self.total_weight = self
            .total_weight
            .checked_add(inst.weight(v))
            .ok_or(Error::Overflow("solution weight"))?;
        self.total_cost = self
            .total_cost
            .checked_add(inst.cost(v))
            .ok_or(Error::Overflow("solution cost"))?;
        self.vertices.insert(pos, v);
        Ok(())
    }

    pub fn remove(&mut self, inst: &BudgetedInstance, v: usize) -> bool {
        match self.vertices.binary_search(&v) {
            Ok(pos) => {
                self.vertices.remove(pos);
                self.total_weight -= inst.weight(v);
                self.total_cost -= inst.cost(v);
                true
            }
            Err(_) => false,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn weight(&self) -> u64 {
        self.total_weight
    }

    pub fn cost(&self) -> u64 {
        self.total_cost
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_independent(&self, inst: &BudgetedInstance) -> bool {
        inst.is_independent(&self.vertices).unwrap_or(false)
    }

    /// Independent and within budget.
    pub fn is_feasible(&self, inst: &BudgetedInstance) -> bool {
        self.total_cost <= inst.budget() && self.is_independent(inst)
    }

    /// Maps member ids through `map` (e.g. from a sub-instance back to its
    /// parent) and recomputes the caches against `inst`.
    pub fn remap(&self, inst: &BudgetedInstance, map: &[usize]) -> Result<Self> {
        Self::from_vertices(inst, self.vertices.iter().map(|&v| map[v]))
    }

    /// True when `self` beats `other`: heavier, or equally heavy and
    /// lexicographically smaller as a sorted id list.
    pub fn better_than(&self, other: &Solution) -> bool {
        self.total_weight > other.total_weight
            || (self.total_weight == other.total_weight && self.vertices < other.vertices)
    }
}
