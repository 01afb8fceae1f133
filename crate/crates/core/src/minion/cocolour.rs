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

//! Edge co-colourings of complete graphs and small intersecting edge sets.

use serde::{Deserialize, Serialize};

use super::{Budget, Search};
use crate::error::{Error, Result};

/// Colouring of the edges of `K_m` in which no `p` pairwise disjoint edges
/// share a colour. Edges `{a, b}` with `a < b` (0-based) are listed
/// lexicographically; colours are `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoColouring {
    pub m: usize,
    pub k: usize,
    pub p: usize,
    pub colours: Vec<u8>,
}

/// Edges of `K_m` in lexicographic order.
pub fn clique_edges(m: usize) -> Vec<(u32, u32)> {
    (0..m as u32)
        .flat_map(|a| (a + 1..m as u32).map(move |b| (a, b)))
        .collect()
}

fn disjoint(e: (u32, u32), f: (u32, u32)) -> bool {
    e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1
}

impl CoColouring {
    pub fn verify(&self) -> bool {
        let edges = clique_edges(self.m);
        if self.colours.len() != edges.len()
            || self.colours.iter().any(|&c| c == 0 || c as usize > self.k)
        {
            return false;
        }
        (1..=self.k as u8).all(|c| {
            let class: Vec<(u32, u32)> = edges
                .iter()
                .zip(&self.colours)
                .filter(|&(_, &x)| x == c)
                .map(|(&e, _)| e)
                .collect();
            !has_disjoint_family(&class, self.p)
        })
    }

    pub fn colour_of(&self, a: u32, b: u32) -> u8 {
        let (a, b) = (a.min(b), a.max(b));
        let idx = clique_edges(self.m).iter().position(|&e| e == (a, b)).unwrap();
        self.colours[idx]
    }
}

/// Whether `edges` contains `p` pairwise disjoint members.
fn has_disjoint_family(edges: &[(u32, u32)], p: usize) -> bool {
    fn rec(edges: &[(u32, u32)], chosen: &mut Vec<(u32, u32)>, p: usize) -> bool {
        if chosen.len() == p {
            return true;
        }
        for (i, &e) in edges.iter().enumerate() {
            if chosen.iter().all(|&f| disjoint(e, f)) {
                chosen.push(e);
                if rec(&edges[i + 1..], chosen, p) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(edges, &mut Vec::new(), p)
}

/// The co-colouring of `K_m` (`m ≥ 3`) giving `{x, y}` (1-based) colour
/// `max{x, y, 3} − 2`, with `k = m − 2` colours and `p = 2`.
pub fn max_three_cocolouring(m: usize) -> CoColouring {
    assert!(m >= 3);
    let colours = clique_edges(m)
        .iter()
        .map(|&(_, b)| ((b + 1).max(3) - 2) as u8)
        .collect();
    CoColouring {
        m,
        k: m - 2,
        p: 2,
        colours,
    }
}

/// Exhaustive search for a `(k, p)`-edge co-colouring of `K_m`.
///
/// Edges are coloured in lexicographic order. The first edge gets colour 1
/// and colour `c` may only appear after `c − 1` has been used; this loses no
/// solutions because the constraints do not distinguish colours. For `p = 2`
/// a colour is struck from every later edge disjoint from a newly coloured
/// one. The second component is the number of nodes expanded.
pub fn co_colouring_search(m: usize, k: usize, p: usize, budget: u64) -> Result<(Search<CoColouring>, u64)> {
    if !(2..=3).contains(&p) {
        return Err(Error::invalid(format!("disjointness arity must be 2 or 3, got {p}")));
    }
    if k == 0 || k > 60 || m > 40 {
        return Err(Error::invalid(format!("unsupported size m={m}, k={k}")));
    }
    let edges = clique_edges(m);
    let e = edges.len();
    if e == 0 {
        let c = CoColouring { m, k, p, colours: Vec::new() };
        return Ok((Search::Found(c), 0));
    }
    let full = (1u64 << k) - 1;
    let mut later_disjoint: Vec<Vec<usize>> = vec![Vec::new(); e];
    for i in 0..e {
        for j in i + 1..e {
            if disjoint(edges[i], edges[j]) {
                later_disjoint[i].push(j);
            }
        }
    }
    let mut budget = Budget::new(budget);
    let mut colour = vec![0u8; e];
    let mut domains = vec![full; e];
    // domains[i] as they were before edge i-1 propagated
    let mut saved: Vec<Vec<u64>> = Vec::with_capacity(e);
    let mut max_used = vec![0u8; e + 1];
    let mut depth = 0usize;
    loop {
        if depth == e {
            let c = CoColouring { m, k, p, colours: colour.clone() };
            debug_assert!(c.verify());
            return Ok((Search::Found(c), budget.used));
        }
        // next candidate colour for this edge, above the current one
        let allowed = (max_used[depth] as usize + 1).min(k);
        let next = (colour[depth] as usize + 1..=allowed).find(|&c| domains[depth] >> (c - 1) & 1 == 1);
        let Some(c) = next else {
            colour[depth] = 0;
            if depth == 0 {
                return Ok((Search::Refuted, budget.used));
            }
            depth -= 1;
            domains = saved.pop().unwrap();
            continue;
        };
        if !budget.tick() {
            return Ok((Search::BudgetExceeded, budget.used));
        }
        colour[depth] = c as u8;
        let ok = if p == 2 {
            let snapshot = domains.clone();
            let bit = 1u64 << (c - 1);
            let mut ok = true;
            for &j in &later_disjoint[depth] {
                domains[j] &= !bit;
                if domains[j] == 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                saved.push(snapshot);
            } else {
                domains = snapshot;
            }
            ok
        } else {
            let class: Vec<(u32, u32)> = (0..depth)
                .filter(|&i| colour[i] as usize == c && disjoint(edges[i], edges[depth]))
                .map(|i| edges[i])
                .collect();
            let ok = !has_disjoint_family(&class, 2);
            if ok {
                saved.push(domains.clone());
            }
            ok
        };
        if ok {
            max_used[depth + 1] = max_used[depth].max(c as u8);
            depth += 1;
        }
    }
}

/// Whether the graph on `0..n` with `edges` has two distinct non-adjacent
/// vertices.
pub fn has_independent_pair(n: usize, edges: &[(u32, u32)]) -> bool {
    let mut adj = vec![false; n * n];
    for &(a, b) in edges {
        adj[a as usize * n + b as usize] = true;
        adj[b as usize * n + a as usize] = true;
    }
    (0..n).any(|a| (a + 1..n).any(|b| !adj[a * n + b]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectingShape {
    Empty,
    Star { centre: u32 },
    Triangle,
    /// Pairwise intersecting but neither a star nor a triangle.
    Other,
}

/// Shape of a pairwise intersecting set of distinct edges, or `None` when
/// two of them are disjoint.
pub fn classify_intersecting(edges: &[(u32, u32)]) -> Option<IntersectingShape> {
    for (i, &e) in edges.iter().enumerate() {
        if edges[i + 1..].iter().any(|&f| disjoint(e, f)) {
            return None;
        }
    }
    let Some(&(a, b)) = edges.first() else {
        return Some(IntersectingShape::Empty);
    };
    for centre in [a.min(b), a.max(b)] {
        if edges.iter().all(|&(x, y)| x == centre || y == centre) {
            return Some(IntersectingShape::Star { centre });
        }
    }
    let mut vertices: Vec<u32> = edges.iter().flat_map(|&(x, y)| [x, y]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut sorted: Vec<(u32, u32)> = edges.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if vertices.len() == 3 && sorted.len() == 3 {
        Some(IntersectingShape::Triangle)
    } else {
        Some(IntersectingShape::Other)
    }
}
