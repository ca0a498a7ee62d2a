//! Dinic's maximum flow over any exact integer capacity type.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_traits::Zero;

pub trait Capacity: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl<T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T>> Capacity for T {}

#[derive(Debug, Clone)]
struct Arc<T> {
    to: usize,
    residual: T,
}

#[derive(Debug, Clone)]
pub struct Dinic<T> {
    arcs: Vec<Arc<T>>,
    out: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

const UNSEEN: usize = usize::MAX;

impl<T: Capacity> Dinic<T> {
    pub fn new(nodes: usize) -> Self {
        Dinic {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![UNSEEN; nodes],
            next: vec![0; nodes],
        }
    }

    /// Adds `from -> to` with the given capacity; arc ids are even, their
    /// reverse arcs odd.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: T) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, residual: cap });
        self.arcs.push(Arc {
            to: from,
            residual: T::zero(),
        });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(UNSEEN);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if self.level[arc.to] == UNSEEN && !arc.residual.is_zero() {
                    self.level[arc.to] = self.level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    fn dfs(&mut self, u: usize, t: usize, limit: T) -> T {
        if u == t {
            return limit;
        }
        while self.next[u] < self.out[u].len() {
            let a = self.out[u][self.next[u]];
            let to = self.arcs[a].to;
            if self.level[to] == self.level[u] + 1 && !self.arcs[a].residual.is_zero() {
                let push = limit.clone().min(self.arcs[a].residual.clone());
                let pushed = self.dfs(to, t, push);
                if !pushed.is_zero() {
                    self.arcs[a].residual = self.arcs[a].residual.clone() - pushed.clone();
                    self.arcs[a ^ 1].residual = self.arcs[a ^ 1].residual.clone() + pushed.clone();
                    return pushed;
                }
            }
            self.next[u] += 1;
        }
        T::zero()
    }

    /// Saturates the network; `unbounded` must exceed every s-t cut.
    pub fn max_flow(&mut self, s: usize, t: usize, unbounded: T) -> T {
        let mut total = T::zero();
        while self.bfs(s, t) {
            self.next.fill(0);
            loop {
                let f = self.dfs(s, t, unbounded.clone());
                if f.is_zero() {
                    break;
                }
                total = total + f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network; after
    /// [`Dinic::max_flow`] this is the source side of a minimum cut.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if !seen[arc.to] && !arc.residual.is_zero() {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}
