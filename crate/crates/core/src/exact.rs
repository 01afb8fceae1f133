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

//! Exact backtracking search for LO `k`-colourings of small hypergraphs.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Colouring, Hypergraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Colour assignments tried.
    pub nodes: u64,
    pub backtracks: u64,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(Colouring),
    /// Exhaustively refuted.
    Unsatisfiable,
    BudgetExceeded,
}

impl ExactOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            ExactOutcome::Found(_) => "found",
            ExactOutcome::Unsatisfiable => "unsatisfiable",
            ExactOutcome::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// Whether the assigned slots of `edge` (colour 0 = unassigned) can still
/// be completed to a unique maximum.
fn edge_viable(edge: &[u32], colour: &[u32], k: u32) -> bool {
    let (mut max, mut count, mut open) = (0u32, 0usize, false);
    for &v in edge {
        let c = colour[v as usize];
        if c == 0 {
            open = true;
        } else if c > max {
            max = c;
            count = 1;
        } else if c == max {
            count += 1;
        }
    }
    count <= 1 || (open && max < k)
}

/// Searches for an LO `k`-colouring of `h`, expanding at most `budget` nodes.
///
/// Vertices are branched on by decreasing degree (lowest id first on ties),
/// colours in ascending order, so the result is deterministic.
pub fn exact_lo_colour(h: &Hypergraph, k: u32, budget: u64) -> Result<(ExactOutcome, SearchStats)> {
    if k == 0 {
        return Err(Error::invalid("colour count must be at least 1"));
    }
    let start = Instant::now();
    let n = h.vertex_count();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, e) in h.edges().enumerate() {
        for (j, &v) in e.iter().enumerate() {
            if j == 0 || e[j - 1] != v {
                incident[v as usize].push(i as u32);
            }
        }
    }

    let mut stats = SearchStats::default();
    let mut colour = vec![0u32; n];
    let mut depth = 0usize;
    let outcome = loop {
        if depth == n {
            break ExactOutcome::Found(Colouring::new(k, colour.clone())?);
        }
        let v = order[depth] as usize;
        let next = colour[v] + 1;
        if next > k {
            colour[v] = 0;
            if depth == 0 {
                break ExactOutcome::Unsatisfiable;
            }
            depth -= 1;
            stats.backtracks += 1;
            continue;
        }
        if stats.nodes == budget {
            break ExactOutcome::BudgetExceeded;
        }
        stats.nodes += 1;
        colour[v] = next;
        if incident[v]
            .iter()
            .all(|&i| edge_viable(h.edge(i as usize), &colour, k))
        {
            depth += 1;
        }
    };
    stats.elapsed = start.elapsed();
    if let ExactOutcome::Found(c) = &outcome {
        debug_assert!(h.verify_lo_colouring(c)?);
    }
    Ok((outcome, stats))
}

/// Exact LO-2-colourability; `None` when the budget runs out.
pub fn is_lo2_colourable(h: &Hypergraph, budget: u64) -> Result<Option<bool>> {
    Ok(match exact_lo_colour(h, 2, budget)?.0 {
        ExactOutcome::Found(_) => Some(true),
        ExactOutcome::Unsatisfiable => Some(false),
        ExactOutcome::BudgetExceeded => None,
    })
}
