// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Simple undirected graphs and independent-set approximations.
//!
//! Two algorithms are combined: the min-degree greedy, which meets the
//! Turán bound `n / (d + 1)`, and Ramsey-based clique removal. Ties are
//! broken towards the lowest vertex id throughout.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Simple undirected graph in compressed adjacency form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an edge list, dropping loops and parallel edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let pairs: Vec<(u32, u32)> = edges.into_iter().filter(|(u, v)| u != v).collect();
        let mut count = vec![0usize; n + 1];
        for &(u, v) in &pairs {
            count[u as usize] += 1;
            count[v as usize] += 1;
        }
        let mut start = vec![0usize; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + count[v];
        }
        let mut fill = start.clone();
        let mut raw = vec![0u32; start[n]];
        for &(u, v) in &pairs {
            raw[fill[u as usize]] = v;
            fill[u as usize] += 1;
            raw[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut adj = Vec::with_capacity(raw.len());
        offsets.push(0);
        for v in 0..n {
            let list = &mut raw[start[v]..start[v + 1]];
            list.sort_unstable();
            let mut prev = None;
            for &u in list.iter() {
                if prev != Some(u) {
                    adj.push(u);
                    prev = Some(u);
                }
            }
            offsets.push(adj.len());
        }
        Graph { offsets, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            adj: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as u32;
        Self::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adj[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbours(v).len()
    }

    pub fn average_degree(&self) -> f64 {
        match self.vertex_count() {
            0 => 0.0,
            n => self.adj.len() as f64 / n as f64,
        }
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbours(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in adjacency order.
    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        (0..self.vertex_count() as u32)
            .flat_map(|u| {
                self.neighbours(u)
                    .iter()
                    .filter(move |&&v| u < v)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    pub fn is_independent(&self, set: &[u32]) -> bool {
        let mut member = vec![false; self.vertex_count()];
        for &v in set {
            if member[v as usize] {
                return false;
            }
            member[v as usize] = true;
        }
        set.iter()
            .all(|&v| self.neighbours(v).iter().all(|&u| !member[u as usize]))
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        let mut local = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        let mut adj = Vec::new();
        offsets.push(0);
        for &v in vertices {
            let start = adj.len();
            adj.extend(
                self.neighbours(v)
                    .iter()
                    .map(|&u| local[u as usize])
                    .filter(|&u| u != u32::MAX),
            );
            adj[start..].sort_unstable();
            offsets.push(adj.len());
        }
        Graph { offsets, adj }
    }
}

/// Min-degree greedy: take a vertex of least current degree, delete its
/// closed neighbourhood, repeat. The result has at least `n / (d + 1)`
/// vertices where `d` is the average degree.
pub fn greedy_is(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<u32> = (0..n as u32).map(|v| g.degree(v) as u32).collect();
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> =
        (0..n as u32).map(|v| Reverse((degree[v as usize], v))).collect();
    let mut chosen = Vec::new();
    // vertices whose degree dropped this round; re-queued once each
    let mut touched = Vec::new();
    let mut dirty = vec![false; n];
    while let Some(Reverse((d, v))) = heap.pop() {
        if !alive[v as usize] || degree[v as usize] != d {
            continue;
        }
        chosen.push(v);
        alive[v as usize] = false;
        for &u in g.neighbours(v) {
            if !alive[u as usize] {
                continue;
            }
            alive[u as usize] = false;
            for &w in g.neighbours(u) {
                if alive[w as usize] {
                    degree[w as usize] -= 1;
                    if !dirty[w as usize] {
                        dirty[w as usize] = true;
                        touched.push(w);
                    }
                }
            }
        }
        for w in touched.drain(..) {
            dirty[w as usize] = false;
            if alive[w as usize] {
                heap.push(Reverse((degree[w as usize], w)));
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

const GONE: u32 = u32::MAX;

/// Classic Ramsey recursion on the vertices of `list` whose level equals
/// `depth`: returns a clique and an independent set of that vertex set.
///
/// `Ramsey(S)` picks the lowest `v`, recurses into `S ∩ N(v)` and
/// `S \ N[v]`, and keeps the larger clique (`C₁ + v` or `C₂`) and the larger
/// independent set (`I₁` or `I₂ + v`). The second recursion is unrolled into
/// the loop below; levels mark membership so each step costs `O(deg v)`.
fn ramsey(g: &Graph, list: &[u32], depth: u32, level: &mut [u32]) -> (Vec<u32>, Vec<u32>) {
    let mut frames = Vec::new();
    for &v in list {
        if level[v as usize] != depth {
            continue;
        }
        level[v as usize] = GONE;
        let nb: Vec<u32> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&u| level[u as usize] == depth)
            .collect();
        for &u in &nb {
            level[u as usize] = depth + 1;
        }
        let inner = ramsey(g, &nb, depth + 1, level);
        frames.push((v, inner));
    }
    let mut clique = Vec::new();
    let mut indep = Vec::new();
    for (v, (mut c1, i1)) in frames.into_iter().rev() {
        c1.push(v);
        if c1.len() >= clique.len() {
            clique = c1;
        }
        indep.push(v);
        if i1.len() >= indep.len() {
            indep = i1;
        }
    }
    (clique, indep)
}

/// Clique removal: repeatedly run the Ramsey recursion, delete the clique it
/// returns and keep the largest independent set seen.
///
/// Stops early once the remaining graph cannot yield a larger independent
/// set: when it has no more vertices than the best set, or when it has no
/// edges (then the remainder itself is the next Ramsey answer).
pub fn clique_removal_is(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut level = vec![GONE; n];
    let mut remaining: Vec<u32> = (0..n as u32).collect();
    let mut present = vec![true; n];
    let mut best: Vec<u32> = Vec::new();
    while !remaining.is_empty() && remaining.len() > best.len() {
        let edgeless = remaining
            .iter()
            .all(|&v| g.neighbours(v).iter().all(|&u| !present[u as usize]));
        if edgeless {
            best = remaining;
            break;
        }
        for &v in &remaining {
            level[v as usize] = 0;
        }
        let (clique, indep) = ramsey(g, &remaining, 0, &mut level);
        if indep.len() > best.len() {
            best = indep;
        }
        for &v in &clique {
            present[v as usize] = false;
        }
        remaining.retain(|&v| present[v as usize]);
    }
    best.sort_unstable();
    best
}

/// The larger of [`greedy_is`] and [`clique_removal_is`] (greedy on ties).
pub fn best_is(g: &Graph) -> Vec<u32> {
    let greedy = greedy_is(g);
    let removal = clique_removal_is(g);
    if removal.len() > greedy.len() {
        removal
    } else {
        greedy
    }
}

/// Like [`best_is`], but clique removal only sees the `limit` vertices of
/// lowest degree when the graph is larger than that. Clique removal is
/// quadratic, the greedy stays linear.
pub fn best_is_bounded(g: &Graph, limit: usize) -> Vec<u32> {
    if g.vertex_count() <= limit {
        return best_is(g);
    }
    let greedy = greedy_is(g);
    let mut order: Vec<u32> = (0..g.vertex_count() as u32).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order.truncate(limit);
    order.sort_unstable();
    let sub = g.induced(&order);
    let mut removal: Vec<u32> = clique_removal_is(&sub)
        .into_iter()
        .map(|i| order[i as usize])
        .collect();
    removal.sort_unstable();
    if removal.len() > greedy.len() {
        removal
    } else {
        greedy
    }
}
