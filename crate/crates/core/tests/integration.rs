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

use std::fs;

use lo_colour::approx::{delta_threshold, lo_colour};
use lo_colour::exact::{exact_lo_colour, is_lo2_colourable, ExactOutcome};
use lo_colour::format::{parse_colouring, parse_hypergraph, write_colouring, write_hypergraph};
use lo_colour::gen::{gen_planted, gen_sparse, GenSpec};
use lo_colour::minion::{
    check_minion_hom_lo, classify_intersecting, co_colouring_search, find_homomorphism,
    free_structure_lo2, lo_template, max_three_cocolouring, IntersectingShape,
};
use proptest::prelude::*;

const BUDGET: u64 = 100_000_000;

#[test]
fn corpus_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..120u64 {
        let n = 5 + (i as usize * 7) % 150;
        let spec = GenSpec::new(n, n, i).allow_repeat(i % 3 == 0);
        let (h, c) = gen_planted(&spec).unwrap();
        fs::write(dir.path().join(format!("{i:03}.lohg")), write_hypergraph(&h)).unwrap();
        fs::write(dir.path().join(format!("{i:03}.col")), write_colouring(&c)).unwrap();
    }
    let mut checked = 0;
    let mut paths: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    for p in paths.iter().filter(|p| p.extension().is_some_and(|x| x == "lohg")) {
        let text = fs::read_to_string(p).unwrap();
        let h = parse_hypergraph(&text).unwrap();
        assert_eq!(write_hypergraph(&h), text);
        let c = parse_colouring(&fs::read_to_string(p.with_extension("col")).unwrap()).unwrap();
        assert!(h.verify_lo_colouring(&c).unwrap(), "{}", p.display());
        checked += 1;
    }
    assert_eq!(checked, 120);
}

#[test]
fn solver_end_to_end_through_text() {
    let (h, _) = gen_sparse(400, delta_threshold(400), 9).unwrap();
    let h = parse_hypergraph(&write_hypergraph(&h)).unwrap();
    let (lin, map) = h.linearise().unwrap();
    let out = lo_colour(&lin).unwrap();
    let lifted = map.lift_colouring(&out.colouring).unwrap();
    let back = parse_colouring(&write_colouring(&lifted)).unwrap();
    assert!(h.verify_lo_colouring(&back).unwrap());
}

#[test]
fn exact_agrees_with_planted() {
    for seed in 0..30 {
        let (h, _) = gen_planted(&GenSpec::new(14, 20, seed)).unwrap();
        assert_eq!(is_lo2_colourable(&h, BUDGET).unwrap(), Some(true));
        match exact_lo_colour(&h, 2, BUDGET).unwrap().0 {
            ExactOutcome::Found(c) => assert!(h.verify_lo_colouring(&c).unwrap()),
            other => panic!("seed {seed}: {}", other.tag()),
        }
    }
}

#[test]
fn co_colouring_thresholds() {
    // K_{k+2} has a co-colouring with k colours, K_{k+3} has none
    for k in 3..=4 {
        let (fits, _) = co_colouring_search(k + 2, k, 2, BUDGET).unwrap();
        let c = fits.found().expect("co-colouring exists");
        assert!(c.verify());
        assert!(max_three_cocolouring(k + 2).verify());
        let (over, _) = co_colouring_search(k + 3, k, 2, BUDGET).unwrap();
        assert!(over.is_refuted(), "k={k}");
    }
}

#[test]
fn free_structure_route_matches_direct_search() {
    let free = free_structure_lo2(3, 3, 3, BUDGET).unwrap();
    let (direct, _) = find_homomorphism(&free.structure, &lo_template(3, 3), BUDGET).unwrap();
    let check = check_minion_hom_lo(3, 3, 3, BUDGET).unwrap();
    assert!(check.agree());
    assert_eq!(direct.decision(), check.decision());
    assert_eq!(check.decision(), Some(true));
}

proptest! {
    #[test]
    fn intersecting_edges_form_star_or_triangle(
        raw in prop::collection::vec((0u32..6, 0u32..6), 1..8),
    ) {
        let mut edges: Vec<(u32, u32)> = raw
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        if let Some(shape) = classify_intersecting(&edges) {
            prop_assert_ne!(shape, IntersectingShape::Other);
        }
    }
}
