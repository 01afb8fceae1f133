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


//! Browser bindings. Every export returns a JSON string so the page stays a
//! thin renderer and the logic can be tested natively.

use lo_colour::approx::{delta_threshold, lo_colour};
use lo_colour::gen::{dense_edge_count, gen_planted, sparse_edge_count, GenSpec};
use lo_colour::minion::{check_minion_hom_lo, co_colouring_search, CoColouring};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Searches in the page stay well under a second.
const BUDGET: u64 = 5_000_000;
const MAX_VERTICES: usize = 20_000;

fn render(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn planted(n: usize, seed: u32, family: &str) -> Result<Value, String> {
    if !(3..=MAX_VERTICES).contains(&n) {
        return Err(format!("n must lie in 3..={MAX_VERTICES}"));
    }
    let delta = delta_threshold(n);
    let spec = match family {
        "sparse" => GenSpec::new(n, sparse_edge_count(n, delta), seed.into()),
        "balanced" => GenSpec::new(n, sparse_edge_count(n, delta), seed.into())
            .linear(true)
            .frac2(1.0 / 3.0),
        "dense" => GenSpec::new(n, dense_edge_count(n, delta), seed.into()).linear(true),
        other => return Err(format!("unknown family {other:?}")),
    };
    let (h, _) = gen_planted(&spec).map_err(|e| e.to_string())?;
    let out = lo_colour(&h).map_err(|e| e.to_string())?;
    let valid = h.verify_lo_colouring(&out.colouring).map_err(|e| e.to_string())?;
    let mut histogram = vec![0usize; out.colours_used as usize];
    for &c in out.colouring.colours() {
        histogram[c as usize - 1] += 1;
    }
    Ok(json!({
        "n": n,
        "m": h.edge_count(),
        "delta": delta,
        "colours_used": out.colours_used,
        "linearised_vertices": out.linearised_vertices,
        "valid": valid,
        "histogram": histogram,
        "steps": out.steps,
    }))
}

fn cocolour(m: usize, k: usize) -> Result<Value, String> {
    if !(2..=9).contains(&m) || !(1..=8).contains(&k) {
        return Err("need 2 <= m <= 9 and 1 <= k <= 8".into());
    }
    let (search, nodes) = co_colouring_search(m, k, 2, BUDGET).map_err(|e| e.to_string())?;
    // rows of the colour matrix, 0 on the diagonal
    let matrix = |c: &CoColouring| -> Vec<Vec<u8>> {
        (0..m as u32)
            .map(|a| (0..m as u32).map(|b| if a == b { 0 } else { c.colour_of(a, b) }).collect())
            .collect()
    };
    Ok(json!({
        "m": m,
        "k": k,
        "result": search.tag(),
        "nodes": nodes,
        "matrix": search.found().map(matrix),
    }))
}

fn minion(r_src: usize, r_dst: usize, k: usize) -> Result<Value, String> {
    if !(2..=5).contains(&r_src) || !(2..=5).contains(&r_dst) || !(2..=4).contains(&k) {
        return Err("need 2 <= r <= 5 and 2 <= k <= 4".into());
    }
    let check = check_minion_hom_lo(r_src, r_dst, k, BUDGET).map_err(|e| e.to_string())?;
    let decision = match check.decision() {
        Some(true) => "exists",
        Some(false) => "none",
        None => "undecided",
    };
    Ok(json!({
        "decision": decision,
        "agree": check.agree(),
        "free_route": check.via_free_structure.tag(),
        "direct_route": check.via_omega.tag(),
        "check": check,
    }))
}

/// Generates a planted instance of `family` (`sparse`, `balanced` or
/// `dense`) and colours it.
#[wasm_bindgen]
pub fn solve_planted(n: usize, seed: u32, family: &str) -> String {
    render(planted(n, seed, family))
}

/// Edge co-colouring of `K_m` with `k` colours.
#[wasm_bindgen(js_name = coColour)]
pub fn co_colour(m: usize, k: usize) -> String {
    render(cocolour(m, k))
}

/// Minion homomorphism between the LO polymorphism minions at uniformities
/// `r_src` and `r_dst`.
#[wasm_bindgen(js_name = minionCheck)]
pub fn minion_check(r_src: usize, r_dst: usize, k: usize) -> String {
    render(minion(r_src, r_dst, k))
}
