//! Budgeted instances `(V, E, w, c, B)` and their validation.
//!
//! An instance is built from loosely-typed [`InstanceData`] (as produced by
//! the parser or by hand) and is immutable afterwards. Construction fails
//! exactly when [`validate`] reports at least one violation.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One vertex as read from a file, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub weight: i64,
    pub cost: i64,
    pub side: Option<Side>,
}

/// Unvalidated instance contents. Vertex ids are 0-based positions in
/// `vertices`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceData {
    pub vertices: Vec<VertexData>,
    pub budget: Option<i64>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ViolationCode {
    BadEdge,
    NegativeValue,
    NotBipartite,
    BudgetMissing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// Smallest vertex id involved, if any.
    pub vertex: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<&str> = self.violations.iter().map(|v| v.message.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

/// Lists every invariant violation in `data`, ordered by (code, first vertex id).
pub fn validate(data: &InstanceData) -> ValidationReport {
    let n = data.vertices.len();
    let mut out = Vec::new();
    let mut push = |code, vertex: Option<usize>, message: String| {
        out.push(Violation {
            code,
            vertex,
            message,
        })
    };

    let mut seen = HashSet::new();
    for &(u, v) in &data.edges {
        if u >= n || v >= n {
            push(
                ViolationCode::BadEdge,
                Some(u.min(v)),
                format!("edge ({}, {}) references a missing vertex", u + 1, v + 1),
            );
        } else if u == v {
            push(
                ViolationCode::BadEdge,
                Some(u),
                format!("self-loop on vertex {}", u + 1),
            );
        } else if !seen.insert((u.min(v), u.max(v))) {
            push(
                ViolationCode::BadEdge,
                Some(u.min(v)),
                format!("duplicate edge ({}, {})", u + 1, v + 1),
            );
        }
    }

    for (id, vd) in data.vertices.iter().enumerate() {
        if vd.weight < 0 {
            push(
                ViolationCode::NegativeValue,
                Some(id),
                format!("vertex {} has negative weight {}", id + 1, vd.weight),
            );
        }
        if vd.cost < 0 {
            push(
                ViolationCode::NegativeValue,
                Some(id),
                format!("vertex {} has negative cost {}", id + 1, vd.cost),
            );
        }
    }
    if let Some(b) = data.budget {
        if b < 0 {
            push(
                ViolationCode::NegativeValue,
                None,
                format!("budget {b} is negative"),
            );
        }
    }

    let labeled = data.vertices.iter().filter(|v| v.side.is_some()).count();
    if labeled > 0 && labeled < n {
        let first = data.vertices.iter().position(|v| v.side.is_none());
        push(
            ViolationCode::NotBipartite,
            first,
            "side labels must be given for all vertices or none".to_string(),
        );
    } else if labeled == n {
        for &(u, v) in &data.edges {
            if u < n && v < n && u != v && data.vertices[u].side == data.vertices[v].side {
                push(
                    ViolationCode::NotBipartite,
                    Some(u.min(v)),
                    format!("edge ({}, {}) joins two vertices on the same side", u + 1, v + 1),
                );
            }
        }
    }

    if data.budget.is_none() {
        push(ViolationCode::BudgetMissing, None, "budget is missing".to_string());
    }

    // Vertex-less violations sort before vertex ones within a code.
    out.sort_by_key(|v| (v.code, v.vertex));
    ValidationReport { violations: out }
}

/// A validated budgeted independent set instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetedInstance {
    weights: Vec<u64>,
    costs: Vec<u64>,
    budget: u64,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    sides: Option<Vec<Side>>,
}

impl TryFrom<InstanceData> for BudgetedInstance {
    type Error = Error;

    fn try_from(data: InstanceData) -> Result<Self> {
        let report = validate(&data);
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        let weights = data.vertices.iter().map(|v| v.weight as u64).collect();
        let costs = data.vertices.iter().map(|v| v.cost as u64).collect();
        let sides = if !data.vertices.is_empty() && data.vertices.iter().all(|v| v.side.is_some()) {
            Some(data.vertices.iter().map(|v| v.side.unwrap()).collect())
        } else {
            None
        };
        Ok(Self::assemble(
            weights,
            costs,
            data.budget.unwrap() as u64,
            data.edges,
            sides,
        ))
    }
}

impl BudgetedInstance {
    /// Builds an instance from already non-negative parts, validating edges
    /// and side labels.
    pub fn new(
        weights: Vec<u64>,
        costs: Vec<u64>,
        budget: u64,
        edges: Vec<(usize, usize)>,
        sides: Option<Vec<Side>>,
    ) -> Result<Self> {
        if weights.len() != costs.len() {
            return Err(Error::InvalidParams(format!(
                "{} weights but {} costs",
                weights.len(),
                costs.len()
            )));
        }
        if let Some(s) = &sides {
            if s.len() != weights.len() {
                return Err(Error::InvalidParams(format!(
                    "{} side labels for {} vertices",
                    s.len(),
                    weights.len()
                )));
            }
        }
        let data = InstanceData {
            vertices: weights
                .iter()
                .zip(&costs)
                .enumerate()
                .map(|(i, (&w, &c))| {
                    Ok(VertexData {
                        weight: i64::try_from(w).map_err(|_| Error::Overflow("vertex weight"))?,
                        cost: i64::try_from(c).map_err(|_| Error::Overflow("vertex cost"))?,
                        side: sides.as_ref().map(|s| s[i]),
                    })
                })
                .collect::<Result<_>>()?,
            budget: Some(i64::try_from(budget).map_err(|_| Error::Overflow("budget"))?),
            edges,
        };
        let report = validate(&data);
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        Ok(Self::assemble(weights, costs, budget, data.edges, sides))
    }

    fn assemble(
        weights: Vec<u64>,
        costs: Vec<u64>,
        budget: u64,
        edges: Vec<(usize, usize)>,
        sides: Option<Vec<Side>>,
    ) -> Self {
        let n = weights.len();
        // An empty label list carries no information; keep one representation.
        let sides = sides.filter(|s| !s.is_empty());
        let mut edges: Vec<(usize, usize)> =
            edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        BudgetedInstance {
            weights,
            costs,
            budget,
            edges,
            adjacency,
            sides,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn cost(&self, v: usize) -> u64 {
        self.costs[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    /// Sum of all costs. Cannot overflow: at most `n` terms below 2^64.
    pub fn total_cost(&self) -> u128 {
        self.costs.iter().map(|&c| c as u128).sum()
    }

    pub fn total_weight(&self) -> u128 {
        self.weights.iter().map(|&w| w as u128).sum()
    }

    /// `W(I)`, the largest vertex weight.
    pub fn max_vertex_weight(&self) -> Result<u64> {
        self.weights.iter().copied().max().ok_or(Error::EmptyInstance)
    }

    pub fn is_independent(&self, vs: &[usize]) -> Result<bool> {
        let n = self.vertex_count();
        let mut member = vec![false; n];
        for &v in vs {
            if v >= n {
                return Err(Error::InvalidVertex(v));
            }
            member[v] = true;
        }
        Ok(vs
            .iter()
            .all(|&v| self.adjacency[v].iter().all(|&u| !member[u])))
    }

    /// Side labels, or a 2-coloring when none are stored. The coloring puts
    /// the smallest id of every connected component on the left.
    pub fn bipartition(&self) -> Result<Vec<Side>> {
        if let Some(s) = &self.sides {
            return Ok(s.clone());
        }
        let n = self.vertex_count();
        let mut color: Vec<Option<Side>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(Side::Left);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adjacency[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(cu.opposite());
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return Err(Error::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(Option::unwrap).collect())
    }

    /// The subgraph induced by `keep` (ids renumbered in the given order),
    /// with a new budget. `sides`, when given, labels the original vertices.
    pub fn induced(&self, keep: &[usize], budget: u64, sides: Option<&[Side]>) -> BudgetedInstance {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
            }
        }
        let sides = sides
            .or(self.sides.as_deref())
            .map(|s| keep.iter().map(|&v| s[v]).collect());
        Self::assemble(
            keep.iter().map(|&v| self.weights[v]).collect(),
            keep.iter().map(|&v| self.costs[v]).collect(),
            budget,
            edges,
            sides,
        )
    }

    pub fn with_budget(&self, budget: u64) -> BudgetedInstance {
        BudgetedInstance {
            budget,
            ..self.clone()
        }
    }

    pub fn to_data(&self) -> InstanceData {
        InstanceData {
            vertices: (0..self.vertex_count())
                .map(|v| VertexData {
                    weight: self.weights[v] as i64,
                    cost: self.costs[v] as i64,
                    side: self.sides.as_ref().map(|s| s[v]),
                })
                .collect(),
            budget: Some(self.budget as i64),
            edges: self.edges.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vd(weight: i64, cost: i64, side: Option<Side>) -> VertexData {
        VertexData { weight, cost, side }
    }

    fn triangle(labels: bool) -> InstanceData {
        let s = |x| if labels { Some(x) } else { None };
        InstanceData {
            vertices: vec![
                vd(1, 1, s(Side::Left)),
                vd(1, 1, s(Side::Right)),
                vd(1, 1, s(Side::Left)),
            ],
            budget: Some(1),
            edges: vec![(0, 1), (1, 2), (0, 2)],
        }
    }

    #[test]
    fn self_loop_is_bad_edge() {
        let data = InstanceData {
            vertices: vec![vd(1, 1, None)],
            budget: Some(0),
            edges: vec![(0, 0)],
        };
        let report = validate(&data);
        assert!(report.contains(ViolationCode::BadEdge));
        assert!(BudgetedInstance::try_from(data).is_err());
    }

    #[test]
    fn labeled_triangle_is_not_bipartite() {
        let report = validate(&triangle(true));
        assert!(report.contains(ViolationCode::NotBipartite));
        let inst = BudgetedInstance::try_from(triangle(false)).unwrap();
        assert!(matches!(inst.bipartition(), Err(Error::NotBipartite)));
    }

    #[test]
    fn report_is_ordered_by_code_then_vertex() {
        let data = InstanceData {
            vertices: vec![vd(-1, 1, None), vd(1, -2, None), vd(0, 0, None)],
            budget: None,
            edges: vec![(2, 2), (0, 1), (1, 0), (0, 5)],
        };
        let report = validate(&data);
        let keys: Vec<_> = report.violations.iter().map(|v| (v.code, v.vertex)).collect();
        assert_eq!(
            keys,
            vec![
                (ViolationCode::BadEdge, Some(0)),
                (ViolationCode::BadEdge, Some(0)),
                (ViolationCode::BadEdge, Some(2)),
                (ViolationCode::NegativeValue, Some(0)),
                (ViolationCode::NegativeValue, Some(1)),
                (ViolationCode::BudgetMissing, None),
            ]
        );
    }

    #[test]
    fn partial_side_labels_rejected() {
        let data = InstanceData {
            vertices: vec![vd(1, 1, Some(Side::Left)), vd(1, 1, None)],
            budget: Some(1),
            edges: vec![],
        };
        assert!(validate(&data).contains(ViolationCode::NotBipartite));
    }

    #[test]
    fn independence_basics() {
        let inst = BudgetedInstance::new(vec![1, 3, 1], vec![1, 1, 1], 5, vec![(0, 1), (1, 2)], None)
            .unwrap();
        assert!(inst.is_independent(&[]).unwrap());
        assert!(inst.is_independent(&[0, 2]).unwrap());
        assert!(!inst.is_independent(&[0, 1]).unwrap());
        assert!(matches!(inst.is_independent(&[7]), Err(Error::InvalidVertex(7))));
        assert_eq!(inst.max_vertex_weight().unwrap(), 3);
        assert_eq!(
            inst.bipartition().unwrap(),
            vec![Side::Left, Side::Right, Side::Left]
        );
    }

    #[test]
    fn empty_instance_has_no_max_weight() {
        let inst = BudgetedInstance::new(vec![], vec![], 0, vec![], None).unwrap();
        assert!(matches!(inst.max_vertex_weight(), Err(Error::EmptyInstance)));
    }

    #[test]
    fn induced_renumbers_and_keeps_sides() {
        let inst = BudgetedInstance::new(
            vec![5, 6, 7, 8],
            vec![1, 2, 3, 4],
            9,
            vec![(0, 2), (1, 3), (0, 3)],
            Some(vec![Side::Left, Side::Left, Side::Right, Side::Right]),
        )
        .unwrap();
        let sub = inst.induced(&[3, 0], 4, None);
        assert_eq!(sub.weights(), &[8, 5]);
        assert_eq!(sub.edges(), &[(0, 1)]);
        assert_eq!(sub.sides().unwrap(), &[Side::Right, Side::Left]);
        assert_eq!(sub.budget(), 4);
    }
}
