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

//! Free structures of LO₂ polymorphism minions and homomorphism search.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::setpoly::{enumerate_set_polymorphisms, SetPolymorphism};
use super::{lo_template, Budget, RelationIndex, Search, Template};
use crate::error::{Error, Result};
use crate::hypergraph::has_unique_max;

/// The free structure of the minion of `(LO₂^r_src, LO_k^r_src)`
/// polymorphisms generated by `LO₂^r_rel`.
///
/// Element `i` of the relation's domain is `elements[i]`, a binary
/// polymorphism in set form. Each relation tuple lists the binary minors
/// `(f_1, …, f_r_rel)` of one arity-`r_rel` polymorphism `f`, where `f_i`
/// sends coordinate `i` to the second argument and the rest to the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeStructure {
    pub elements: Vec<SetPolymorphism>,
    pub structure: Template,
}

fn binary_minor_tuples(high: &[SetPolymorphism], r_rel: usize) -> Vec<Vec<SetPolymorphism>> {
    high.iter()
        .map(|f| (0..r_rel).map(|i| f.binary_minor(i)).collect())
        .collect()
}

pub fn free_structure_lo2(r_src: usize, k: usize, r_rel: usize, budget: u64) -> Result<FreeStructure> {
    let elements = enumerate_set_polymorphisms(r_src, k, 2, budget)?;
    let high = enumerate_set_polymorphisms(r_src, k, r_rel, budget)?;
    let index: HashMap<&SetPolymorphism, u32> =
        elements.iter().enumerate().map(|(i, f)| (f, i as u32)).collect();
    let mut relation = Vec::with_capacity(high.len());
    for tuple in binary_minor_tuples(&high, r_rel) {
        let ids = tuple
            .iter()
            .map(|g| {
                index
                    .get(g)
                    .copied()
                    .ok_or_else(|| Error::invalid("a binary minor escaped the enumerated elements"))
            })
            .collect::<Result<Vec<u32>>>()?;
        relation.push(ids);
    }
    let structure = Template::new(elements.len(), r_rel, relation)?;
    Ok(FreeStructure {
        elements,
        structure,
    })
}

struct HomSearch<'a> {
    dst: &'a RelationIndex,
    tuples: &'a [Vec<u32>],
    occurs: Vec<Vec<u32>>,
    order: Vec<u32>,
    domains: Vec<u64>,
    value: Vec<Option<u32>>,
    budget: Budget,
    image: Vec<u32>,
}

impl HomSearch<'_> {
    /// `Some(true)` on success, `Some(false)` on refutation of this branch,
    /// `None` when the budget runs out.
    fn dfs(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let var = self.order[depth] as usize;
        let mut candidates = self.domains[var];
        while candidates != 0 {
            let c = candidates.trailing_zeros();
            candidates &= candidates - 1;
            if !self.budget.tick() {
                return None;
            }
            let saved = self.domains.clone();
            self.value[var] = Some(c);
            self.domains[var] = 1 << c;
            if self.propagate(var) {
                match self.dfs(depth + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.value[var] = None;
            self.domains = saved;
        }
        Some(false)
    }

    /// Forward checking over the tuples containing `var`.
    fn propagate(&mut self, var: usize) -> bool {
        for &t in &self.occurs[var] {
            let tuple = &self.tuples[t as usize];
            let mut open = None;
            let mut several = false;
            for &u in tuple {
                if self.value[u as usize].is_none() {
                    match open {
                        None => open = Some(u),
                        Some(w) if w != u => several = true,
                        _ => {}
                    }
                }
            }
            if several {
                continue;
            }
            match open {
                None => {
                    for (slot, &u) in self.image.iter_mut().zip(tuple) {
                        *slot = self.value[u as usize].unwrap();
                    }
                    if !self.dst.contains(&self.image) {
                        return false;
                    }
                }
                Some(u) => {
                    let mut keep = 0u64;
                    let mut dom = self.domains[u as usize];
                    while dom != 0 {
                        let c = dom.trailing_zeros();
                        dom &= dom - 1;
                        for (slot, &w) in self.image.iter_mut().zip(tuple) {
                            *slot = if w == u { c } else { self.value[w as usize].unwrap() };
                        }
                        if self.dst.contains(&self.image) {
                            keep |= 1 << c;
                        }
                    }
                    if keep == 0 {
                        return false;
                    }
                    self.domains[u as usize] = keep;
                }
            }
        }
        true
    }
}

/// Searches for a homomorphism `src → dst`: a map of domains sending every
/// relation tuple of `src` into the relation of `dst`.
///
/// Backtracking visits source elements by decreasing number of tuples, with
/// forward checking on tuples left with a single unassigned element. The
/// second component is the number of nodes expanded.
pub fn find_homomorphism(src: &Template, dst: &Template, budget: u64) -> Result<(Search<Vec<u32>>, u64)> {
    if src.arity() != dst.arity() {
        return Err(Error::invalid("structures differ in arity"));
    }
    if dst.domain_size() > 64 {
        return Err(Error::invalid("target domain larger than 64 is not supported"));
    }
    let n = src.domain_size();
    let mut occurs = vec![Vec::new(); n];
    for (i, t) in src.relation().iter().enumerate() {
        let mut seen: Vec<u32> = t.clone();
        seen.sort_unstable();
        seen.dedup();
        for u in seen {
            occurs[u as usize].push(i as u32);
        }
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(occurs[v as usize].len()), v));
    let full = if dst.domain_size() == 64 {
        u64::MAX
    } else {
        (1u64 << dst.domain_size()) - 1
    };
    let index = RelationIndex::new(dst);
    let mut search = HomSearch {
        dst: &index,
        tuples: src.relation(),
        occurs,
        order,
        domains: vec![full; n],
        value: vec![None; n],
        budget: Budget::new(budget),
        image: vec![0; src.arity()],
    };
    let outcome = match search.dfs(0) {
        Some(true) => {
            let map: Vec<u32> = search.value.iter().map(|v| v.unwrap()).collect();
            debug_assert!(src.relation().iter().all(|t| {
                let img: Vec<u32> = t.iter().map(|&u| map[u as usize]).collect();
                dst.contains(&img)
            }));
            Search::Found(map)
        }
        Some(false) => Search::Refuted,
        None => Search::BudgetExceeded,
    };
    Ok((outcome, search.budget.used))
}

/// Searches for `ω : 0..domain → [k]` such that every constraint (a list of
/// domain elements, repeats allowed) receives values with a unique maximum.
///
/// Plain chronological backtracking in index order; each constraint is
/// checked when its largest element is assigned.
pub fn omega_search(domain: usize, constraints: &[Vec<u32>], k: usize, budget: u64) -> (Search<Vec<u8>>, u64) {
    let mut attached: Vec<Vec<usize>> = vec![Vec::new(); domain];
    for (i, c) in constraints.iter().enumerate() {
        match c.iter().max() {
            Some(&last) => attached[last as usize].push(i),
            // an empty constraint never has a unique maximum
            None => return (Search::Refuted, 0),
        }
    }
    let mut budget = Budget::new(budget);
    let mut omega = vec![0u8; domain];
    let mut depth = 0usize;
    if domain == 0 {
        return (Search::Found(omega), 0);
    }
    loop {
        if omega[depth] as usize == k {
            omega[depth] = 0;
            if depth == 0 {
                return (Search::Refuted, budget.used);
            }
            depth -= 1;
            continue;
        }
        if !budget.tick() {
            return (Search::BudgetExceeded, budget.used);
        }
        omega[depth] += 1;
        let ok = attached[depth]
            .iter()
            .all(|&i| has_unique_max(constraints[i].iter().map(|&u| omega[u as usize])));
        if ok {
            depth += 1;
            if depth == domain {
                return (Search::Found(omega), budget.used);
            }
        }
    }
}

/// Both decisions on whether the `(LO₂^r_src, LO_k^r_src)` minion maps to
/// the `(LO₂^r_dst, LO_k^r_dst)` minion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinionHomCheck {
    pub r_src: usize,
    pub r_dst: usize,
    pub k: usize,
    pub binary_elements: usize,
    pub relation_tuples: usize,
    /// Homomorphism from the free structure to `LO_k^r_dst`, as colours.
    pub via_free_structure: Search<Vec<u8>>,
    pub free_structure_nodes: u64,
    /// Direct search for a colouring of binary elements.
    pub via_omega: Search<Vec<u8>>,
    pub omega_nodes: u64,
}

impl MinionHomCheck {
    /// The common decision; `None` if either route ran out of budget.
    pub fn decision(&self) -> Option<bool> {
        match (self.via_free_structure.decision(), self.via_omega.decision()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    /// False only when both routes finished and disagree.
    pub fn agree(&self) -> bool {
        match (self.via_free_structure.decision(), self.via_omega.decision()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// Decides whether a minion homomorphism between the two LO₂ polymorphism
/// minions exists, by two independent searches: a homomorphism from the free
/// structure to `LO_k^r_dst`, and a direct search for a colouring `ω` of the
/// binary elements that gives every tuple of binary minors a unique maximum.
///
/// If enumerating the polymorphisms runs out of budget, both routes report
/// [`Search::BudgetExceeded`].
pub fn check_minion_hom_lo(r_src: usize, r_dst: usize, k: usize, budget: u64) -> Result<MinionHomCheck> {
    let mut check = MinionHomCheck {
        r_src,
        r_dst,
        k,
        binary_elements: 0,
        relation_tuples: 0,
        via_free_structure: Search::BudgetExceeded,
        free_structure_nodes: 0,
        via_omega: Search::BudgetExceeded,
        omega_nodes: 0,
    };
    let free = match free_structure_lo2(r_src, k, r_dst, budget) {
        Ok(f) => f,
        Err(Error::BudgetExceeded { .. }) => return Ok(check),
        Err(e) => return Err(e),
    };
    check.binary_elements = free.elements.len();
    check.relation_tuples = free.structure.relation().len();

    let (hom, nodes) = find_homomorphism(&free.structure, &lo_template(k, r_dst), budget)?;
    check.free_structure_nodes = nodes;
    check.via_free_structure = match hom {
        Search::Found(map) => Search::Found(map.iter().map(|&c| c as u8 + 1).collect()),
        Search::Refuted => Search::Refuted,
        Search::BudgetExceeded => Search::BudgetExceeded,
    };

    // rebuilt independently of the free structure: own element order, raw
    // tuples with repeats
    let binary = enumerate_set_polymorphisms(r_src, k, 2, budget)?;
    let high = enumerate_set_polymorphisms(r_src, k, r_dst, budget)?;
    let id: BTreeMap<Vec<u8>, u32> = binary
        .iter()
        .enumerate()
        .map(|(i, f)| (f.table().to_vec(), i as u32))
        .collect();
    let constraints: Vec<Vec<u32>> = high
        .iter()
        .map(|f| (0..r_dst).map(|i| id[f.binary_minor(i).table()]).collect())
        .collect();
    let (omega, nodes) = omega_search(binary.len(), &constraints, k, budget);
    check.omega_nodes = nodes;
    check.via_omega = omega;
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIG: u64 = 50_000_000;

    #[test]
    fn identity_homomorphism() {
        let t = lo_template(3, 3);
        let (out, _) = find_homomorphism(&t, &t, BIG).unwrap();
        let map = out.found().unwrap();
        for tuple in t.relation() {
            let img: Vec<u32> = tuple.iter().map(|&u| map[u as usize]).collect();
            assert!(t.contains(&img));
        }
    }

    #[test]
    fn no_homomorphism_into_smaller_clique() {
        // K3 → K2 as symmetric binary relations
        let k = |n: u32| {
            let rel = (0..n)
                .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| vec![a, b]))
                .collect();
            Template::new(n as usize, 2, rel).unwrap()
        };
        assert!(find_homomorphism(&k(3), &k(2), BIG).unwrap().0.is_refuted());
        assert!(find_homomorphism(&k(3), &k(3), BIG).unwrap().0.found().is_some());
        assert_eq!(find_homomorphism(&k(5), &k(4), 3).unwrap().0, Search::BudgetExceeded);
    }

    #[test]
    fn repeated_entries_in_tuples() {
        // a tuple (x, x) forces a loop in the target
        let src = Template::new(1, 2, vec![vec![0, 0]]).unwrap();
        let dst = Template::new(2, 2, vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(find_homomorphism(&src, &dst, BIG).unwrap().0, Search::Found(vec![1]));
    }

    #[test]
    fn free_structure_shape() {
        let fs = free_structure_lo2(3, 3, 3, BIG).unwrap();
        assert_eq!(fs.structure.domain_size(), fs.elements.len());
        assert!(fs.elements.iter().all(|f| f.ground_size() == 2 && f.is_polymorphism(3)));
        let smaller = free_structure_lo2(5, 3, 3, BIG).unwrap();
        assert!(smaller.elements.len() < fs.elements.len());
    }

    #[test]
    fn omega_basics() {
        let (s, _) = omega_search(2, &[vec![0, 1]], 2, 100);
        assert_eq!(s, Search::Found(vec![1, 2]));
        let (s, _) = omega_search(1, &[vec![0, 0]], 3, 100);
        assert_eq!(s, Search::Refuted);
        let (s, _) = omega_search(3, &[vec![0, 1, 2]], 1, 100);
        assert_eq!(s, Search::Refuted);
    }

    #[test]
    fn minion_facts_at_three_colours() {
        let c = check_minion_hom_lo(5, 3, 3, BIG).unwrap();
        assert_eq!(c.decision(), Some(true));
        let c = check_minion_hom_lo(4, 3, 3, BIG).unwrap();
        assert_eq!(c.decision(), Some(false));
        let c = check_minion_hom_lo(3, 4, 3, BIG).unwrap();
        assert_eq!(c.decision(), Some(false));
    }

    #[test]
    fn budget_reported_for_large_arity() {
        let c = check_minion_hom_lo(5, 7, 3, 1_000_000).unwrap();
        assert_eq!(c.via_free_structure, Search::BudgetExceeded);
        assert_eq!(c.decision(), None);
        assert!(c.agree());
    }
}
