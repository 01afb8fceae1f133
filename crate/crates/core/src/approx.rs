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

//! Approximate LO colouring of LO-2-colourable 3-uniform hypergraphs.
//!
//! The driver linearises the input, then repeatedly makes progress on the
//! still-active part:
//!
//! * Type 1: a set meeting every active edge in at most one slot. It gets
//!   the next *large* colour, so it holds the unique maximum of every edge it
//!   touches.
//! * Type 2: a set meeting every active edge in 0 or 2 slots. It gets the
//!   next *small* colour; the third slot of each touched edge is coloured
//!   later, hence larger.
//!
//! Coloured vertices and the edges touching them are deactivated. Sparse
//! residues (`|E| ≤ n·Δ(n)`) use an independent set of the primal graph on
//! low-degree vertices; dense ones use an approximate Max-Ones solution of
//! the parity system. Vertices left without active edges share one colour
//! between the small and the large ones. `Δ(n) = n^{1/3} (ln n)^{2/3}
//! (ln ln n)^{-2/3}` balances the two branches at about
//! `∛(n ln ln n / ln n)` colours.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::even_support_set;
use crate::graph::{best_is_bounded, Graph};
use crate::hypergraph::{Colouring, Hypergraph};

/// Branch threshold `Δ(n)`, clamped below at 1; `ln ln n` is clamped below
/// at 1 as well.
pub fn delta_threshold(n: usize) -> f64 {
    let n = n.max(1) as f64;
    let ln = n.ln();
    let lnln = if ln > 1.0 { ln.ln().max(1.0) } else { 1.0 };
    (n.cbrt() * ln.powf(2.0 / 3.0) * lnln.powf(-2.0 / 3.0)).max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Meets every active edge in at most one slot; gets a large colour.
    Type1,
    /// Meets every active edge in 0 or 2 slots; gets a small colour.
    Type2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Sparse,
    Dense,
    /// Dense residue where the independent set beat the even-support set.
    DenseFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressStep {
    pub kind: StepKind,
    pub vertices: Vec<u32>,
}

/// Tuning knobs for [`lo_colour_with`].
#[derive(Clone, Debug)]
pub struct LoConfig {
    /// Clique removal only looks at this many lowest-degree vertices of the
    /// primal graph; the greedy always sees all of it.
    pub clique_removal_limit: usize,
}

impl Default for LoConfig {
    fn default() -> Self {
        LoConfig {
            clique_removal_limit: 512,
        }
    }
}

/// Progress from an independent set of the primal graph.
///
/// Candidates are the vertices of degree at most twice the average that are
/// never repeated inside an edge (a doubled vertex would tie with itself for
/// the maximum). The primal graph is taken on the candidates, with every pair
/// of candidates sharing an edge adjacent, so the result meets each edge in at
/// most one slot.
pub fn sparse_progress(h: &Hypergraph, config: &LoConfig) -> Result<ProgressStep> {
    h.require_3_uniform()?;
    let n = h.vertex_count();
    let mut doubled = vec![false; n];
    for e in h.edges() {
        if e[0] == e[1] {
            doubled[e[0] as usize] = true;
        }
        if e[1] == e[2] {
            doubled[e[1] as usize] = true;
        }
    }
    let total: u64 = h.degrees().iter().map(|&d| d as u64).sum();
    // deg ≤ 2·avg  ⇔  n·deg ≤ 2·total
    let mut candidates: Vec<u32> = (0..n as u32)
        .filter(|&v| !doubled[v as usize] && h.degree(v) as u64 * n as u64 <= 2 * total)
        .collect();
    if candidates.is_empty() {
        candidates = (0..n as u32).filter(|&v| !doubled[v as usize]).collect();
    }
    let mut local = vec![u32::MAX; n];
    for (i, &v) in candidates.iter().enumerate() {
        local[v as usize] = i as u32;
    }
    let mut pairs = Vec::new();
    for e in h.edges() {
        for i in 0..3 {
            for j in i + 1..3 {
                let (a, b) = (local[e[i] as usize], local[e[j] as usize]);
                if a != u32::MAX && b != u32::MAX && a != b {
                    pairs.push((a, b));
                }
            }
        }
    }
    let g = Graph::from_edges(candidates.len(), pairs);
    let vertices = best_is_bounded(&g, config.clique_removal_limit)
        .into_iter()
        .map(|i| candidates[i as usize])
        .collect();
    Ok(ProgressStep {
        kind: StepKind::Type1,
        vertices,
    })
}

/// Progress from the support of an approximate Max-Ones solution of the
/// parity system.
pub fn dense_progress(h: &Hypergraph) -> Result<ProgressStep> {
    Ok(ProgressStep {
        kind: StepKind::Type2,
        vertices: even_support_set(h)?,
    })
}

/// Slots of `edge` inside the step, counted with multiplicity.
fn slots_in(edge: &[u32], member: &[bool]) -> usize {
    edge.iter().filter(|&&v| member[v as usize]).count()
}

/// Whether `step` satisfies its kind's contract on `h`.
pub fn step_is_valid(h: &Hypergraph, step: &ProgressStep) -> bool {
    let mut member = vec![false; h.vertex_count()];
    for &v in &step.vertices {
        member[v as usize] = true;
    }
    h.edges().all(|e| {
        let k = slots_in(e, &member);
        match step.kind {
            StepKind::Type1 => k <= 1,
            StepKind::Type2 => k == 0 || k == 2,
        }
    })
}

/// Two-ended colour counter. Small colours count up from 1, large ones down
/// from the top; everything handed out later lies strictly between.
#[derive(Clone, Debug)]
pub struct ColourBudget {
    lo: u32,
    hi: u32,
    span: u32,
}

impl ColourBudget {
    pub fn new(span: u32) -> Self {
        ColourBudget { lo: 1, hi: span, span }
    }

    pub fn take_small(&mut self) -> u32 {
        assert!(self.lo < self.hi, "colour budget exhausted");
        self.lo += 1;
        self.lo - 1
    }

    pub fn take_large(&mut self) -> u32 {
        assert!(self.lo < self.hi, "colour budget exhausted");
        self.hi -= 1;
        self.hi + 1
    }

    /// A colour above every small one and below every large one handed out.
    pub fn middle(&self) -> u32 {
        self.lo
    }

    pub fn span(&self) -> u32 {
        self.span
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub kind: StepKind,
    pub branch: Branch,
    pub size: usize,
    pub active_vertices: usize,
    pub active_edges: usize,
    pub delta: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoOutcome {
    pub colouring: Colouring,
    pub colours_used: u32,
    pub linearised_vertices: usize,
    pub steps: Vec<StepRecord>,
}

impl LoOutcome {
    pub fn steps_of(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    pub fn branch_count(&self, branch: Branch) -> usize {
        self.steps.iter().filter(|s| s.branch == branch).count()
    }
}

pub fn lo_colour(h: &Hypergraph) -> Result<LoOutcome> {
    lo_colour_with(h, &LoConfig::default())
}

/// LO-colours `h`, which should admit an LO 2-colouring.
///
/// The returned colouring is always valid; if the input breaks the promise
/// the call either still succeeds or fails with
/// [`Error::PromiseViolation`].
pub fn lo_colour_with(h: &Hypergraph, config: &LoConfig) -> Result<LoOutcome> {
    h.require_3_uniform()?;
    let (lin, merges) = h.linearise()?;
    let n = lin.vertex_count();
    let mut budget = ColourBudget::new(n as u32 + 2);
    let mut colour = vec![0u32; n];
    let mut active: Vec<u32> = (0..n as u32).collect();
    let mut edges: Vec<[u32; 3]> = lin.edges().map(|e| [e[0], e[1], e[2]]).collect();
    let mut local = vec![u32::MAX; n];
    let mut steps = Vec::new();

    while !edges.is_empty() {
        for (i, &v) in active.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        // `active` is sorted, so relabelling keeps slots sorted
        let slots = edges.iter().flatten().map(|&v| local[v as usize]).collect();
        let residue = Hypergraph::from_sorted_slots(3, active.len(), slots);
        let (n_a, m_a) = (active.len(), edges.len());
        let delta = delta_threshold(n_a);

        let (step, branch) = if m_a as f64 <= n_a as f64 * delta {
            let step = sparse_progress(&residue, config)?;
            if step.vertices.is_empty() {
                (dense_progress(&residue)?, Branch::Dense)
            } else {
                (step, Branch::Sparse)
            }
        } else {
            let dense = dense_progress(&residue)?;
            let sparse = sparse_progress(&residue, config)?;
            if dense.vertices.len() >= sparse.vertices.len() {
                (dense, Branch::Dense)
            } else {
                (sparse, Branch::DenseFallback)
            }
        };
        if step.vertices.is_empty() {
            return Err(Error::PromiseViolation(format!(
                "no progress possible on a residue with {n_a} vertices and {m_a} edges"
            )));
        }
        debug_assert!(step_is_valid(&residue, &step), "{:?} step breaks its contract", step.kind);

        let c = match step.kind {
            StepKind::Type1 => budget.take_large(),
            StepKind::Type2 => budget.take_small(),
        };
        for &i in &step.vertices {
            colour[active[i as usize] as usize] = c;
        }
        steps.push(StepRecord {
            kind: step.kind,
            branch,
            size: step.vertices.len(),
            active_vertices: n_a,
            active_edges: m_a,
            delta,
        });
        active.retain(|&v| colour[v as usize] == 0);
        edges.retain(|e| e.iter().all(|&v| colour[v as usize] == 0));
    }
    let middle = budget.middle();
    for &v in &active {
        colour[v as usize] = middle;
    }

    // compact to 1..=K keeping the order
    let mut used = colour.clone();
    used.sort_unstable();
    used.dedup();
    let mut rank = vec![0u32; budget.span() as usize + 1];
    for (i, &c) in used.iter().enumerate() {
        rank[c as usize] = i as u32 + 1;
    }
    let k = used.len().max(1) as u32;
    let compact = Colouring::new(k, colour.iter().map(|&c| rank[c as usize]).collect())?;
    let colouring = merges.lift_colouring(&compact)?;
    if !h.verify_lo_colouring(&colouring)? {
        return Err(Error::PromiseViolation(
            "produced colouring failed verification".into(),
        ));
    }
    Ok(LoOutcome {
        colouring,
        colours_used: k,
        linearised_vertices: n,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_values() {
        // 3^(1/3) · (ln 3)^(2/3), with ln ln 3 < 1 clamped
        assert!((delta_threshold(3) - 1.535_571_5).abs() < 1e-6);
        assert!((delta_threshold(1000) - 23.377_062_8).abs() < 1e-6);
        assert!((delta_threshold(100_000) - 130.452_501_7).abs() < 1e-6);
        assert_eq!(delta_threshold(1), 1.0);
        assert_eq!(delta_threshold(0), 1.0);
    }

    #[test]
    fn delta_monotone_from_16() {
        let mut prev = delta_threshold(16);
        for n in 17..200_000 {
            let d = delta_threshold(n);
            assert!(d >= prev, "Δ drops at n = {n}");
            prev = d;
        }
    }

    #[test]
    fn sparse_single_edge() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let s = sparse_progress(&h, &LoConfig::default()).unwrap();
        assert_eq!(s.vertices, vec![0]);
        assert_eq!(s.kind, StepKind::Type1);
    }

    #[test]
    fn sparse_edgeless_takes_everything() {
        let h = Hypergraph::edgeless(3, 5).unwrap();
        let s = sparse_progress(&h, &LoConfig::default()).unwrap();
        assert_eq!(s.vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn sparse_skips_doubled_vertices() {
        let h = Hypergraph::new(3, 2, [[0, 0, 1]]).unwrap();
        let s = sparse_progress(&h, &LoConfig::default()).unwrap();
        assert_eq!(s.vertices, vec![1]);
        assert!(step_is_valid(&h, &s));
    }

    #[test]
    fn sparse_respects_edges_leaving_candidates() {
        // vertex 3 has high degree and is filtered out; 0 and 1 still share
        // an edge through it and must not both be chosen
        let mut edges = vec![[0, 1, 3]];
        for i in 0..6 {
            edges.push([3, 4 + 2 * i, 5 + 2 * i]);
        }
        let h = Hypergraph::new(3, 16, edges).unwrap();
        let s = sparse_progress(&h, &LoConfig::default()).unwrap();
        assert!(!s.vertices.contains(&3));
        assert!(step_is_valid(&h, &s));
    }

    #[test]
    fn dense_examples() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let s = dense_progress(&h).unwrap();
        assert_eq!(s.vertices.len(), 2);
        let h = Hypergraph::new(3, 2, [[0, 0, 1]]).unwrap();
        assert!(!dense_progress(&h).unwrap().vertices.contains(&1));
    }

    #[test]
    fn colours_example() {
        let h = Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let out = lo_colour(&h).unwrap();
        assert!(h.verify_lo_colouring(&out.colouring).unwrap());
        assert!(out.colours_used <= 4);
        assert!(out.colours_used as usize <= out.steps.len() + 1);
    }

    #[test]
    fn edgeless_uses_one_colour() {
        let h = Hypergraph::edgeless(3, 10).unwrap();
        let out = lo_colour(&h).unwrap();
        assert_eq!(out.colours_used, 1);
        assert!(out.colouring.colours().iter().all(|&c| c == 1));
    }

    #[test]
    fn rejects_contradiction() {
        let h = Hypergraph::new(3, 3, [[0, 0, 1], [0, 0, 2], [1, 1, 2]]).unwrap();
        assert!(matches!(lo_colour(&h), Err(Error::PromiseViolation(_))));
    }

    #[test]
    fn non_promise_input_still_valid_or_rejected() {
        // all triples of 5 vertices: no LO 2-colouring exists
        let mut edges = Vec::new();
        for a in 0..5u32 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    edges.push([a, b, c]);
                }
            }
        }
        let h = Hypergraph::new(3, 5, edges).unwrap();
        match lo_colour(&h) {
            Ok(out) => assert!(h.verify_lo_colouring(&out.colouring).unwrap()),
            Err(e) => assert!(matches!(e, Error::PromiseViolation(_))),
        }
    }

    #[test]
    fn budget_ordering() {
        let mut b = ColourBudget::new(10);
        let s = b.take_small();
        let l = b.take_large();
        let m = b.middle();
        assert!(s < m && m < l);
    }
}
