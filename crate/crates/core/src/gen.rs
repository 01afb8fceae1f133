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

//! Seeded generators of planted LO-2-colourable 3-uniform hypergraphs.
//!
//! # Stream contract
//!
//! Every instance is a pure function of its [`GenSpec`]. The only source of
//! randomness is `ChaCha8Rng::seed_from_u64(seed)` (the `rand_chacha`
//! generator with `rand_core`'s PCG32-based seed expansion), read through
//! `next_u64` only. A draw below `b` is [`uniform_below`]: reject words
//! `w < 2^64 mod b`, return `w mod b`. Draws happen in this order:
//!
//! 1. `n2 = clamp(round(n * frac2), 1, n - 1)` vertices get colour 2, picked
//!    by a partial Fisher-Yates shuffle of `0..n`: for `i` in `0..n2` swap
//!    position `i` with `i + uniform_below(n - i)`. The first `n2` entries
//!    sorted ascending form the colour-2 list; the rest, sorted, the
//!    colour-1 list.
//! 2. Candidate edges, each drawn as `a`, `b` from the colour-1 list and then
//!    `t` from the colour-2 list. A candidate is rejected when `a == b` and
//!    repeats are disallowed, or, in linear mode, when it shares a vertex
//!    pair (with multiplicity) with an accepted edge. After `100 * m`
//!    candidates without reaching `m` edges the spec is infeasible.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::approx::delta_threshold;
use crate::error::{Error, Result};
use crate::hypergraph::{pairs_of, Colouring, Hypergraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    /// Fraction of vertices planted with colour 2, in `(0, 1)`.
    pub frac2: f64,
    /// Reject any edge sharing a vertex pair with an earlier one.
    pub linear: bool,
    /// Allow edges of the form `(a, a, t)`.
    pub allow_repeat: bool,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        GenSpec {
            n,
            m,
            frac2: 0.5,
            linear: false,
            allow_repeat: false,
            seed,
        }
    }

    /// Spec with `m = ⌈n·density⌉`.
    pub fn with_density(n: usize, density: f64, seed: u64) -> Self {
        Self::new(n, (n as f64 * density).ceil() as usize, seed)
    }

    pub fn linear(mut self, linear: bool) -> Self {
        self.linear = linear;
        self
    }

    pub fn frac2(mut self, frac2: f64) -> Self {
        self.frac2 = frac2;
        self
    }

    pub fn allow_repeat(mut self, allow: bool) -> Self {
        self.allow_repeat = allow;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.frac2 > 0.0 && self.frac2 < 1.0) {
            return Err(Error::invalid(format!("frac2 must lie in (0, 1), got {}", self.frac2)));
        }
        if self.n > u32::MAX as usize {
            return Err(Error::invalid("too many vertices"));
        }
        if self.m > 0 {
            let n1 = self.n.saturating_sub(self.colour2_count());
            let need = if self.allow_repeat { 1 } else { 2 };
            if self.n < 2 || n1 < need {
                return Err(Error::Infeasible(format!(
                    "{} vertices cannot carry {} planted edges",
                    self.n, self.m
                )));
            }
        }
        Ok(())
    }

    fn colour2_count(&self) -> usize {
        if self.n < 2 {
            return self.n;
        }
        ((self.n as f64 * self.frac2).round() as usize).clamp(1, self.n - 1)
    }
}

/// Uniform draw from `0..bound` by rejection; `bound` must be positive.
pub fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    assert!(bound > 0);
    let reject = bound.wrapping_neg() % bound;
    loop {
        let w = rng.next_u64();
        if w >= reject {
            return w % bound;
        }
    }
}

/// Planted instance and its LO 2-colouring witness.
pub fn gen_planted(spec: &GenSpec) -> Result<(Hypergraph, Colouring)> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n2 = spec.colour2_count();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for i in 0..n2 {
        let j = i + uniform_below(&mut rng, (n - i) as u64) as usize;
        perm.swap(i, j);
    }
    let (twos, ones) = perm.split_at_mut(n2);
    twos.sort_unstable();
    ones.sort_unstable();
    let mut colours = vec![1u32; n];
    for &t in twos.iter() {
        colours[t as usize] = 2;
    }

    let mut edges = Vec::with_capacity(spec.m);
    let mut used: FxHashSet<(u32, u32)> = FxHashSet::default();
    let cap = 100u64.saturating_mul(spec.m as u64);
    let mut attempts = 0u64;
    while edges.len() < spec.m {
        if attempts == cap {
            return Err(Error::Infeasible(format!(
                "only {} of {} edges placed after {cap} candidates",
                edges.len(),
                spec.m
            )));
        }
        attempts += 1;
        let a = ones[uniform_below(&mut rng, ones.len() as u64) as usize];
        let b = ones[uniform_below(&mut rng, ones.len() as u64) as usize];
        let t = twos[uniform_below(&mut rng, twos.len() as u64) as usize];
        if a == b && !spec.allow_repeat {
            continue;
        }
        let mut e = [a, b, t];
        e.sort_unstable();
        if spec.linear {
            let pairs = pairs_of(&e).map(|(p, _)| p);
            if pairs.iter().any(|p| used.contains(p)) {
                continue;
            }
            used.extend(pairs);
        }
        edges.push(e);
    }
    let h = Hypergraph::new(3, n, edges)?;
    Ok((h, Colouring::new(2, colours)?))
}

/// Edge count of [`gen_sparse`]: `⌊n·Δ/4⌋`.
pub fn sparse_edge_count(n: usize, delta: f64) -> usize {
    (n as f64 * delta / 4.0).floor() as usize
}

/// Edge count of [`gen_dense`]: `⌈4·n·Δ⌉`.
pub fn dense_edge_count(n: usize, delta: f64) -> usize {
    (4.0 * n as f64 * delta).ceil() as usize
}

/// Planted instance well inside the sparse regime: `m = ⌊n·Δ/4⌋`.
pub fn gen_sparse(n: usize, delta: f64, seed: u64) -> Result<(Hypergraph, Colouring)> {
    gen_planted(&GenSpec::new(n, sparse_edge_count(n, delta), seed))
}

/// Linear planted instance well inside the dense regime: `m = ⌈4·n·Δ⌉`.
///
/// Only feasible once `n` is large enough to fit that many pair-disjoint
/// edges (a little over a thousand vertices at `Δ = Δ(n)`).
pub fn gen_dense(n: usize, delta: f64, seed: u64) -> Result<(Hypergraph, Colouring)> {
    gen_planted(&GenSpec::new(n, dense_edge_count(n, delta), seed).linear(true))
}

/// [`gen_sparse`] at `Δ = Δ(n)`.
pub fn gen_sparse_default(n: usize, seed: u64) -> Result<(Hypergraph, Colouring)> {
    gen_sparse(n, delta_threshold(n), seed)
}

/// Linear planted instance at `m = ⌊n·Δ(n)/4⌋` with a third of the vertices
/// coloured 2, so both colour classes have the same expected degree. This is
/// the family used for scaling measurements.
pub fn gen_balanced_linear(n: usize, seed: u64) -> Result<(Hypergraph, Colouring)> {
    let m = sparse_edge_count(n, delta_threshold(n));
    gen_planted(&GenSpec::new(n, m, seed).linear(true).frac2(1.0 / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_two_slot_counts(h: &Hypergraph, c: &Colouring) -> bool {
        h.edges()
            .all(|e| e.iter().filter(|&&v| c.colour(v) == 2).count() == 1)
    }

    #[test]
    fn small_planted() {
        let (h, c) = gen_planted(&GenSpec::new(4, 2, 7)).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.verify_lo_colouring(&c).unwrap());
        assert!(one_two_slot_counts(&h, &c));
        assert_eq!(c.colours().iter().filter(|&&x| x == 2).count(), 2);
    }

    #[test]
    fn no_edges() {
        let (h, c) = gen_planted(&GenSpec::new(6, 0, 1)).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn linear_instance_is_linear() {
        let (h, c) = gen_planted(&GenSpec::new(100, 500, 3).linear(true)).unwrap();
        assert_eq!(h.edge_count(), 500);
        assert!(h.is_linear());
        assert!(h.verify_lo_colouring(&c).unwrap());
        // independent quadratic overlap scan
        let edges: Vec<&[u32]> = h.edges().collect();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let mut rest = edges[j].to_vec();
                let mut shared = 0;
                for v in edges[i] {
                    if let Some(p) = rest.iter().position(|w| w == v) {
                        rest.swap_remove(p);
                        shared += 1;
                    }
                }
                assert!(shared <= 1, "edges {i} and {j} share {shared} slots");
            }
        }
    }

    #[test]
    fn reproducible() {
        let s = GenSpec::new(300, 900, 42);
        assert_eq!(gen_planted(&s).unwrap(), gen_planted(&s).unwrap());
        let t = GenSpec::new(300, 900, 43);
        assert_ne!(gen_planted(&s).unwrap().0, gen_planted(&t).unwrap().0);
    }

    #[test]
    fn infeasible_linear() {
        let err = gen_planted(&GenSpec::new(10, 200, 0).linear(true)).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
        assert!(matches!(
            gen_planted(&GenSpec::new(2, 1, 0)).unwrap_err(),
            Error::Infeasible(_)
        ));
    }

    #[test]
    fn bad_fraction() {
        assert!(gen_planted(&GenSpec::new(10, 1, 0).frac2(1.0)).is_err());
        assert!(gen_planted(&GenSpec::new(10, 1, 0).frac2(0.0)).is_err());
    }

    #[test]
    fn repeats_only_when_allowed() {
        let (h, c) = gen_planted(&GenSpec::new(8, 400, 5).allow_repeat(true)).unwrap();
        assert!(h.edges().any(|e| e[0] == e[1] || e[1] == e[2]));
        assert!(h.verify_lo_colouring(&c).unwrap());
        let (h, _) = gen_planted(&GenSpec::new(8, 400, 5)).unwrap();
        assert!(h.edges().all(|e| e[0] != e[1] && e[1] != e[2]));
    }

    #[test]
    fn sparse_and_dense_counts() {
        let d = delta_threshold(1000);
        let (h, c) = gen_sparse(1000, d, 1).unwrap();
        assert!(h.edge_count() as f64 <= 1000.0 * d / 4.0);
        assert!(h.verify_lo_colouring(&c).unwrap());
        let (h, c) = gen_dense(1000, d, 1).unwrap();
        assert!(h.edge_count() as f64 >= 4000.0 * d);
        assert!(h.is_linear());
        assert!(h.verify_lo_colouring(&c).unwrap());
    }

    #[test]
    fn balanced_family() {
        let (h, c) = gen_balanced_linear(1024, 9).unwrap();
        assert!(h.is_linear());
        assert_eq!(h.edge_count(), sparse_edge_count(1024, delta_threshold(1024)));
        assert_eq!(c.colours().iter().filter(|&&x| x == 2).count(), 341);
        assert!(h.verify_lo_colouring(&c).unwrap());
    }

    #[test]
    fn uniform_below_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut seen = [0usize; 7];
        for _ in 0..7000 {
            seen[uniform_below(&mut rng, 7) as usize] += 1;
        }
        assert!(seen.iter().all(|&s| s > 800));
    }
}
