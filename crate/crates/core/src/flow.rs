//! Edmonds–Karp maximum flow on real capacities.
//!
//! Augmenting along shortest paths bounds the number of augmentations by
//! `O(V·E)` independently of the capacity values, so the search terminates
//! with floating-point capacities. Edges may be added between calls to
//! [`FlowNetwork::augment`]; the existing flow stays feasible and further
//! augmentation continues from it.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    residual: f64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    // Edge `e` and its reverse `e ^ 1` are stored side by side.
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self { edges: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: f64) {
        debug_assert!(capacity >= 0.0);
        let id = self.edges.len();
        self.edges.push(Edge { to, residual: capacity });
        self.edges.push(Edge { to: from, residual: 0.0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
    }

    /// Pushes as much additional flow from `source` to `sink` as the current
    /// residual graph allows and returns the amount pushed.
    pub fn augment(&mut self, source: usize, sink: usize) -> f64 {
        let mut total = 0.0;
        let mut parent = vec![usize::MAX; self.out.len()];
        loop {
            parent.fill(usize::MAX);
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.out[u] {
                    let Edge { to, residual } = self.edges[e];
                    if residual > 0.0 && to != source && parent[to] == usize::MAX {
                        parent[to] = e;
                        if to == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if !reached {
                return total;
            }
            let mut bottleneck = f64::INFINITY;
            let mut v = sink;
            while v != source {
                let e = parent[v];
                bottleneck = bottleneck.min(self.edges[e].residual);
                v = self.edges[e ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let e = parent[v];
                self.edges[e].residual -= bottleneck;
                self.edges[e ^ 1].residual += bottleneck;
                v = self.edges[e ^ 1].to;
            }
            total += bottleneck;
        }
    }
}
