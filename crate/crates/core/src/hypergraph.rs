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

//! Uniform hypergraphs, vertex colourings and linearisation.
//!
//! Vertices are `0..n` internally. Every edge is stored as a sorted tuple of
//! `r` vertex ids, so repeated vertices sit next to each other and the
//! multiset of an edge is its slice.

use std::collections::hash_map::Entry;

use rustc_hash::{FxHashMap, FxHashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An `r`-uniform hypergraph whose edges are multisets of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    slots: Vec<u32>,
    degree: Vec<u32>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting the slots of every edge.
    ///
    /// Fails if `r < 2`, an edge has the wrong length, a vertex is out of
    /// range, or an edge is constant.
    pub fn new<E, I>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        E: AsRef<[u32]>,
        I: IntoIterator<Item = E>,
    {
        if r < 2 {
            return Err(Error::invalid(format!("uniformity must be at least 2, got {r}")));
        }
        if n > u32::MAX as usize {
            return Err(Error::invalid("too many vertices"));
        }
        let mut slots = Vec::new();
        for (i, e) in edges.into_iter().enumerate() {
            let e = e.as_ref();
            if e.len() != r {
                return Err(Error::invalid(format!(
                    "edge {i} has {} slots, expected {r}",
                    e.len()
                )));
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(Error::invalid(format!("edge {i} names vertex {v} outside 0..{n}")));
            }
            let start = slots.len();
            slots.extend_from_slice(e);
            slots[start..].sort_unstable();
            if slots[start] == slots[slots.len() - 1] {
                return Err(Error::invalid(format!("edge {i} is constant")));
            }
        }
        Ok(Self::from_sorted_slots(r, n, slots))
    }

    /// `slots` must hold sorted, in-range, non-constant edges back to back.
    pub(crate) fn from_sorted_slots(r: usize, n: usize, slots: Vec<u32>) -> Self {
        let mut degree = vec![0u32; n];
        for e in slots.chunks_exact(r) {
            for (j, &v) in e.iter().enumerate() {
                if j == 0 || e[j - 1] != v {
                    degree[v as usize] += 1;
                }
            }
        }
        Hypergraph {
            r,
            n,
            slots,
            degree,
        }
    }

    pub fn edgeless(r: usize, n: usize) -> Result<Self> {
        Self::new::<&[u32], _>(r, n, [])
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.slots.len() / self.r
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.slots[i * self.r..(i + 1) * self.r]
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, u32> {
        self.slots.chunks_exact(self.r)
    }

    /// Number of edges containing `v`, each edge counted once.
    pub fn degree(&self, v: u32) -> u32 {
        self.degree[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub(crate) fn require_3_uniform(&self) -> Result<()> {
        if self.r != 3 {
            return Err(Error::invalid(format!(
                "operation needs a 3-uniform hypergraph, got uniformity {}",
                self.r
            )));
        }
        Ok(())
    }

    /// Whether `c` is an LO colouring: every edge has a unique maximum colour.
    pub fn verify_lo_colouring(&self, c: &Colouring) -> Result<bool> {
        if c.len() != self.n {
            return Err(Error::invalid(format!(
                "colouring has {} entries for {} vertices",
                c.len(),
                self.n
            )));
        }
        Ok(self.edges().all(|e| has_unique_max(e.iter().map(|&v| c.colour(v)))))
    }

    /// Whether no edge contains two distinct members of `set`.
    pub fn is_independent_set(&self, set: &[u32]) -> Result<bool> {
        let mut member = vec![false; self.n];
        for &v in set {
            let slot = member
                .get_mut(v as usize)
                .ok_or_else(|| Error::invalid(format!("vertex {v} outside 0..{}", self.n)))?;
            *slot = true;
        }
        Ok(self.edges().all(|e| {
            let mut hits = 0;
            for (j, &v) in e.iter().enumerate() {
                if member[v as usize] && (j == 0 || e[j - 1] != v) {
                    hits += 1;
                }
            }
            hits < 2
        }))
    }

    /// Simple graph joining every two distinct vertices that share an edge.
    pub fn primal_graph(&self) -> Graph {
        let mut pairs = Vec::with_capacity(self.edge_count() * self.r * (self.r - 1) / 2);
        for e in self.edges() {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    if e[i] != e[j] {
                        pairs.push((e[i], e[j]));
                    }
                }
            }
        }
        Graph::from_edges(self.n, pairs)
    }

    /// Whether no two distinct edges share two or more slots as multisets.
    pub fn is_linear(&self) -> bool {
        if self.r != 3 {
            return false;
        }
        let mut seen = FxHashSet::with_capacity_and_hasher(self.edge_count() * 3, Default::default());
        for e in self.edges() {
            let pairs = pairs_of(e).map(|(pair, _)| pair);
            for (j, &pair) in pairs.iter().enumerate() {
                if !pairs[..j].contains(&pair) && !seen.insert(pair) {
                    return false;
                }
            }
        }
        true
    }

    /// Merges vertices forced equal in every LO 2-colouring until no two
    /// edges share two slots.
    ///
    /// Edges `(x, y, a)` and `(x, y, b)` force `a` and `b` to the same colour,
    /// so they are merged; duplicate edges collapse. Edges keep the order of
    /// their first occurrence. A merge that makes some edge constant proves the
    /// input has no LO 2-colouring.
    pub fn linearise(&self) -> Result<(Hypergraph, MergeMap)> {
        self.require_3_uniform()?;
        let mut uf = UnionFind::new(self.n);
        let mut edges: Vec<[u32; 3]> = self.edges().map(|e| [e[0], e[1], e[2]]).collect();
        loop {
            let mut seen = FxHashSet::with_capacity_and_hasher(edges.len(), Default::default());
            let mut canon = Vec::with_capacity(edges.len());
            for e in &edges {
                let mut c = [uf.find(e[0]), uf.find(e[1]), uf.find(e[2])];
                c.sort_unstable();
                if c[0] == c[2] {
                    return Err(Error::PromiseViolation(format!(
                        "merging forces an edge onto the single vertex {}",
                        c[0]
                    )));
                }
                if seen.insert(c) {
                    canon.push(c);
                }
            }
            edges = canon;

            let mut owner: FxHashMap<(u32, u32), usize> =
                FxHashMap::with_capacity_and_hasher(edges.len() * 3, Default::default());
            let mut merged = false;
            for (idx, e) in edges.iter().enumerate() {
                for (pair, third) in pairs_of(e) {
                    match owner.entry(pair) {
                        Entry::Vacant(slot) => {
                            slot.insert(idx);
                        }
                        Entry::Occupied(slot) => {
                            let other = *slot.get();
                            if other != idx {
                                let other_third = third_of(&edges[other], pair);
                                merged |= uf.union(third, other_third);
                            }
                        }
                    }
                }
            }
            if !merged {
                break;
            }
        }

        let map = MergeMap::from_union_find(uf);
        let mut slots = Vec::with_capacity(edges.len() * 3);
        for e in &edges {
            slots.extend(e.iter().map(|&v| map.new_id[v as usize]));
        }
        Ok((Hypergraph::from_sorted_slots(3, map.n_new, slots), map))
    }
}

/// The three slot pairs of a sorted 3-edge with the slot left over.
pub(crate) fn pairs_of(e: &[u32]) -> [((u32, u32), u32); 3] {
    [
        ((e[0], e[1]), e[2]),
        ((e[0], e[2]), e[1]),
        ((e[1], e[2]), e[0]),
    ]
}

fn third_of(e: &[u32; 3], pair: (u32, u32)) -> u32 {
    let mut rest = e.to_vec();
    for v in [pair.0, pair.1] {
        let at = rest.iter().position(|&x| x == v).expect("pair taken from this edge");
        rest.remove(at);
    }
    rest[0]
}

/// Whether the maximum of `values` occurs exactly once.
pub fn has_unique_max<T: Ord + Copy>(values: impl IntoIterator<Item = T>) -> bool {
    let mut best: Option<T> = None;
    let mut count = 0;
    for x in values {
        match best {
            Some(b) if x < b => {}
            Some(b) if x == b => count += 1,
            _ => {
                best = Some(x);
                count = 1;
            }
        }
    }
    count == 1
}

/// Assignment of colours `1..=k` to vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    k: u32,
    colours: Vec<u32>,
}

impl Colouring {
    pub fn new(k: u32, colours: Vec<u32>) -> Result<Self> {
        if let Some((v, &c)) = colours.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(Error::invalid(format!("vertex {v} has colour {c} outside 1..={k}")));
        }
        Ok(Colouring { k, colours })
    }

    /// Colouring with `k` set to the largest colour used (at least 1).
    pub fn from_colours(colours: Vec<u32>) -> Result<Self> {
        let k = colours.iter().copied().max().unwrap_or(1).max(1);
        Self::new(k, colours)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn colour(&self, v: u32) -> u32 {
        self.colours[v as usize]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Number of distinct colours actually used.
    pub fn distinct(&self) -> usize {
        let mut used: Vec<u32> = self.colours.clone();
        used.sort_unstable();
        used.dedup();
        used.len()
    }
}

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = v;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Smaller id wins, so representatives do not depend on merge order.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Record of the merges made by [`Hypergraph::linearise`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeMap {
    /// Representative of every original vertex (fully compressed).
    parent: Vec<u32>,
    /// New id of every original vertex, via its representative.
    new_id: Vec<u32>,
    n_new: usize,
}

impl MergeMap {
    pub fn identity(n: usize) -> Self {
        Self::from_union_find(UnionFind::new(n))
    }

    fn from_union_find(mut uf: UnionFind) -> Self {
        let n = uf.parent.len();
        let parent: Vec<u32> = (0..n as u32).map(|v| uf.find(v)).collect();
        let mut new_id = vec![u32::MAX; n];
        let mut next = 0u32;
        for v in 0..n {
            if parent[v] as usize == v {
                new_id[v] = next;
                next += 1;
            }
        }
        for v in 0..n {
            new_id[v] = new_id[parent[v] as usize];
        }
        MergeMap {
            parent,
            new_id,
            n_new: next as usize,
        }
    }

    pub fn find(&self, v: u32) -> u32 {
        self.parent[v as usize]
    }

    /// Id of `v` in the linearised hypergraph.
    pub fn renumber(&self, v: u32) -> u32 {
        self.new_id[v as usize]
    }

    pub fn original_count(&self) -> usize {
        self.parent.len()
    }

    pub fn merged_count(&self) -> usize {
        self.n_new
    }

    pub fn is_identity(&self) -> bool {
        self.parent.iter().enumerate().all(|(v, &p)| p as usize == v)
    }

    /// Pulls a colouring of the linearised hypergraph back to the original.
    pub fn lift_colouring(&self, c: &Colouring) -> Result<Colouring> {
        if c.len() != self.n_new {
            return Err(Error::invalid(format!(
                "colouring has {} entries, linearised hypergraph has {} vertices",
                c.len(),
                self.n_new
            )));
        }
        let colours = self.new_id.iter().map(|&id| c.colour(id)).collect();
        Colouring::new(c.k(), colours)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Hypergraph {
        Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap()
    }

    #[test]
    fn example_colourings() {
        let h = example();
        let c = Colouring::new(2, vec![1, 1, 2, 2]).unwrap();
        assert!(h.verify_lo_colouring(&c).unwrap());
        let identity = Colouring::new(4, vec![1, 2, 3, 4]).unwrap();
        assert!(h.verify_lo_colouring(&identity).unwrap());
        let flipped = Colouring::new(2, c.colours().iter().map(|x| 3 - x).collect()).unwrap();
        assert!(!h.verify_lo_colouring(&flipped).unwrap());
    }

    #[test]
    fn verify_rejects_length_mismatch() {
        let c = Colouring::new(2, vec![1, 2]).unwrap();
        assert!(matches!(
            example().verify_lo_colouring(&c),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn construction_errors() {
        assert!(Hypergraph::new(3, 3, [[0, 0, 0]]).is_err());
        assert!(Hypergraph::new(3, 3, [[0, 1, 3]]).is_err());
        assert!(Hypergraph::new(3, 3, [vec![0, 1]]).is_err());
        assert!(Hypergraph::new(1, 3, [[0]]).is_err());
        assert!(Colouring::new(2, vec![1, 3]).is_err());
        assert!(Colouring::new(2, vec![0]).is_err());
    }

    #[test]
    fn degree_counts_each_edge_once() {
        let h = Hypergraph::new(3, 3, [[0, 0, 1], [0, 1, 2]]).unwrap();
        assert_eq!(h.degrees(), &[2, 2, 1]);
        assert_eq!(h.edge(0), &[0, 0, 1]);
    }

    #[test]
    fn independent_sets() {
        let h = example();
        assert!(h.is_independent_set(&[2, 3]).unwrap());
        assert!(!h.is_independent_set(&[0, 1]).unwrap());
        assert!(h.is_independent_set(&[]).unwrap());
        assert!(h.is_independent_set(&[9]).is_err());
        // a doubled vertex is still a single member
        let h = Hypergraph::new(3, 3, [[0, 0, 1]]).unwrap();
        assert!(h.is_independent_set(&[0, 2]).unwrap());
    }

    #[test]
    fn primal_graph_examples() {
        let g = example().primal_graph();
        let mut edges = g.edge_list();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(Hypergraph::edgeless(3, 4).unwrap().primal_graph().edge_count(), 0);
        let single = Hypergraph::new(3, 2, [[0, 0, 1]]).unwrap().primal_graph();
        assert_eq!(single.edge_list(), vec![(0, 1)]);
    }

    #[test]
    fn linearise_merges_shared_pair() {
        let (lin, map) = example().linearise().unwrap();
        assert_eq!(lin.vertex_count(), 3);
        assert_eq!(lin.edge_count(), 1);
        assert_eq!(map.find(3), 2);
        assert_eq!(map.renumber(2), map.renumber(3));
        assert!(lin.is_linear());
    }

    #[test]
    fn linearise_keeps_linear_input() {
        let h = Hypergraph::new(3, 7, [[3, 4, 5], [0, 1, 2], [0, 3, 6]]).unwrap();
        let (lin, map) = h.linearise().unwrap();
        assert_eq!(lin, h);
        assert!(map.is_identity());
    }

    #[test]
    fn linearise_creates_doubled_edge() {
        let h = Hypergraph::new(3, 5, [[0, 1, 2], [0, 1, 3], [2, 3, 4]]).unwrap();
        let (lin, map) = h.linearise().unwrap();
        assert_eq!(lin.vertex_count(), 4);
        let m = map.renumber(2);
        assert_eq!(lin.edge(1), &[m, m, map.renumber(4)]);
        assert!(lin.is_linear());
    }

    #[test]
    fn linearise_collapses_duplicates() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2], [2, 1, 0]]).unwrap();
        let (lin, map) = h.linearise().unwrap();
        assert_eq!(lin.edge_count(), 1);
        assert!(map.is_identity());
    }

    #[test]
    fn linearise_detects_contradiction() {
        // (0,0,1) and (0,0,2) merge 1,2; then (1,2,1) is constant after the
        // merge through (1,1,2)... built so that a constant edge appears
        let h = Hypergraph::new(3, 3, [[0, 0, 1], [0, 0, 2], [1, 1, 2]]).unwrap();
        assert!(matches!(h.linearise(), Err(Error::PromiseViolation(_))));
    }

    #[test]
    fn doubled_pairs_count_for_linearity() {
        let h = Hypergraph::new(3, 4, [[0, 0, 1], [0, 0, 2]]).unwrap();
        assert!(!h.is_linear());
        let h = Hypergraph::new(3, 4, [[0, 0, 1], [0, 2, 3]]).unwrap();
        assert!(h.is_linear());
    }

    #[test]
    fn lift_examples() {
        let (lin, map) = example().linearise().unwrap();
        let c = Colouring::new(2, vec![1, 1, 2]).unwrap();
        assert!(lin.verify_lo_colouring(&c).unwrap());
        let lifted = map.lift_colouring(&c).unwrap();
        assert_eq!(lifted.colours(), &[1, 1, 2, 2]);
        let id = MergeMap::identity(3);
        assert_eq!(id.lift_colouring(&c).unwrap(), c);
        assert!(map.lift_colouring(&Colouring::new(2, vec![1]).unwrap()).is_err());
    }

    #[test]
    fn unique_max_helper() {
        assert!(has_unique_max([1, 1, 2]));
        assert!(!has_unique_max([2, 1, 2]));
        assert!(!has_unique_max::<u32>([]));
        assert!(has_unique_max([5]));
    }
}
