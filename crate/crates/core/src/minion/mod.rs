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

//! Polymorphism minions of LO templates at exhaustively checkable scales.
//!
//! Two representations are used. [`TupleFn`] is a plain table
//! `[ℓ]^p → [k]` for general polymorphisms. [`SetPolymorphism`] is the set
//! view of a polymorphism with an LO₂ source: an input tuple over `{1, 2}`
//! is identified with the set of coordinates holding 2, and the polymorphism
//! condition becomes a condition on partitions of the coordinates.
//!
//! All searches are budgeted by node count and report
//! [`Search::BudgetExceeded`] rather than guessing.

mod cocolour;
mod free;
mod restrict;
mod setpoly;

pub use cocolour::{
    classify_intersecting, co_colouring_search, has_independent_pair, max_three_cocolouring,
    CoColouring, IntersectingShape,
};
pub use free::{
    check_minion_hom_lo, find_homomorphism, free_structure_lo2, omega_search, FreeStructure,
    MinionHomCheck,
};
pub use restrict::{enumerate_polymorphisms, verify_restriction_hom, RestrictionReport};
pub use setpoly::{
    enumerate_set_polymorphisms, impossible_witness, selector_check, set_partitions,
    verify_impossible_witness, SetPolymorphism,
};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::has_unique_max;

/// Result of a budgeted exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Search<T> {
    Found(T),
    /// The whole space was explored without success.
    Refuted,
    BudgetExceeded,
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Search::Refuted)
    }

    /// `Some(true)` when found, `Some(false)` when refuted.
    pub fn decision(&self) -> Option<bool> {
        match self {
            Search::Found(_) => Some(true),
            Search::Refuted => Some(false),
            Search::BudgetExceeded => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Search::Found(_) => "found",
            Search::Refuted => "refuted",
            Search::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// Node counter shared by the searches in this module.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Budget {
    pub used: u64,
    pub limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    /// Counts one node; false once the limit is reached.
    pub fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        true
    }

    pub fn exceeded(&self) -> Error {
        Error::BudgetExceeded { budget: self.limit }
    }
}

/// A single-relation structure on the domain `0..domain_size`.
///
/// Colours of LO templates are stored shifted down by one, so colour `c` is
/// the domain element `c - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    domain_size: usize,
    arity: usize,
    relation: Vec<Vec<u32>>,
}

impl Template {
    /// Sorts and deduplicates `relation`.
    pub fn new(domain_size: usize, arity: usize, mut relation: Vec<Vec<u32>>) -> Result<Self> {
        for t in &relation {
            if t.len() != arity {
                return Err(Error::invalid(format!("tuple {t:?} does not have arity {arity}")));
            }
            if t.iter().any(|&x| x as usize >= domain_size) {
                return Err(Error::invalid(format!("tuple {t:?} leaves the domain")));
            }
        }
        relation.sort();
        relation.dedup();
        Ok(Template {
            domain_size,
            arity,
            relation,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn relation(&self) -> &[Vec<u32>] {
        &self.relation
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        self.relation.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }
}

/// Every tuple of `0..base` of length `len`, last coordinate fastest.
pub(crate) fn all_tuples(base: usize, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base as u32).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// `LO_k^r`: the `r`-tuples over `k` colours with a unique maximum.
pub fn lo_template(k: usize, r: usize) -> Template {
    let relation = all_tuples(k, r)
        .into_iter()
        .filter(|t| has_unique_max(t.iter().copied()))
        .collect();
    Template {
        domain_size: k,
        arity: r,
        relation,
    }
}

/// A function `[ℓ]^p → [k]` given by its full table, with inputs and output
/// shifted down by one; the input `(a_1, …, a_p)` sits at index
/// `Σ a_i ℓ^(p-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TupleFn {
    ell: usize,
    arity: usize,
    table: Vec<u32>,
}

impl TupleFn {
    pub fn new(ell: usize, arity: usize, table: Vec<u32>) -> Result<Self> {
        let size = ell
            .checked_pow(arity as u32)
            .ok_or_else(|| Error::invalid("table too large"))?;
        if table.len() != size {
            return Err(Error::invalid(format!(
                "table has {} entries, expected {size}",
                table.len()
            )));
        }
        Ok(TupleFn { ell, arity, table })
    }

    pub fn from_fn(ell: usize, arity: usize, mut f: impl FnMut(&[u32]) -> u32) -> Self {
        let table = all_tuples(ell, arity).iter().map(|t| f(t)).collect();
        TupleFn { ell, arity, table }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain_size(&self) -> usize {
        self.ell
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn index_of(&self, input: &[u32]) -> usize {
        input.iter().fold(0, |acc, &a| acc * self.ell + a as usize)
    }

    pub fn eval(&self, input: &[u32]) -> u32 {
        self.table[self.index_of(input)]
    }

    /// `f_π(x_1, …, x_q) = f(x_π(1), …, x_π(p))`; `pi` has length `p` with
    /// entries in `0..q`.
    pub fn minor(&self, pi: &[usize], q: usize) -> TupleFn {
        assert_eq!(pi.len(), self.arity);
        assert!(pi.iter().all(|&j| j < q));
        let mut buf = vec![0u32; self.arity];
        TupleFn::from_fn(self.ell, q, |x| {
            for (b, &j) in buf.iter_mut().zip(pi) {
                *b = x[j];
            }
            self.eval(&buf)
        })
    }

    /// The function on `[sub]^p` obtained by restricting the inputs.
    pub fn restrict(&self, sub: usize) -> TupleFn {
        assert!(sub <= self.ell);
        TupleFn::from_fn(sub, self.arity, |x| self.eval(x))
    }
}

/// Whether `f` maps every `r × p` matrix with columns in `a` row-wise into
/// `b`.
pub fn is_polymorphism(f: &TupleFn, a: &Template, b: &Template) -> Result<bool> {
    if a.arity != b.arity {
        return Err(Error::invalid("templates differ in arity"));
    }
    if f.ell != a.domain_size {
        return Err(Error::invalid("function domain differs from the source template"));
    }
    let r = a.arity;
    let p = f.arity;
    let cols = a.relation.len();
    if f.table.iter().any(|&v| v as usize >= b.domain_size) {
        return Ok(false);
    }
    if cols == 0 {
        return Ok(true);
    }
    // odometer over the choice of one relation tuple per column
    let mut pick = vec![0usize; p];
    let mut row = vec![0u32; p];
    let mut image = vec![0u32; r];
    loop {
        for (i, slot) in image.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a.relation[pick[j]][i];
            }
            *slot = f.eval(&row);
        }
        if !b.contains(&image) {
            return Ok(false);
        }
        let mut j = p;
        loop {
            if j == 0 {
                return Ok(true);
            }
            j -= 1;
            pick[j] += 1;
            if pick[j] < cols {
                break;
            }
            pick[j] = 0;
        }
    }
}

/// Template membership test on a hash set, for the searches.
pub(crate) struct RelationIndex {
    set: HashSet<Vec<u32>>,
}

impl RelationIndex {
    pub fn new(t: &Template) -> Self {
        RelationIndex {
            set: t.relation.iter().cloned().collect(),
        }
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        self.set.contains(tuple)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lo_template_sizes() {
        assert_eq!(lo_template(2, 3).relation().len(), 3);
        assert_eq!(lo_template(3, 3).relation().len(), 15);
        assert!(lo_template(1, 4).relation().is_empty());
        let two = lo_template(2, 3);
        for t in two.relation() {
            assert_eq!(t.iter().filter(|&&x| x == 1).count(), 1);
        }
    }

    #[test]
    fn lo_template_counts_match_formula() {
        // unique max c: r positions, the other r-1 below c
        for k in 1..=4usize {
            for r in 2..=4usize {
                let expect: usize = (1..=k).map(|c| r * (c - 1).pow(r as u32 - 1)).sum();
                assert_eq!(lo_template(k, r).relation().len(), expect, "k={k} r={r}");
            }
        }
    }

    #[test]
    fn parity_on_disequality() {
        let neq = Template::new(2, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        // values 1 and 2 shifted to 0 and 1; colour 2 when the sum is even
        let f = TupleFn::from_fn(2, 5, |x| {
            let s: u32 = x.iter().map(|&a| a + 1).sum();
            if s.is_multiple_of(2) { 1 } else { 0 }
        });
        assert!(is_polymorphism(&f, &neq, &neq).unwrap());
        let g = TupleFn::from_fn(2, 5, |x| x[0] & x[1]);
        assert!(!is_polymorphism(&g, &neq, &neq).unwrap());
    }

    #[test]
    fn constants_and_projections() {
        for (k, r) in [(2, 3), (3, 3), (3, 4)] {
            let t = lo_template(k, r);
            for c in 0..k as u32 {
                let f = TupleFn::from_fn(k, 2, |_| c);
                assert!(!is_polymorphism(&f, &t, &t).unwrap());
            }
            let proj = TupleFn::from_fn(k, 3, |x| x[0]);
            assert!(is_polymorphism(&proj, &t, &t).unwrap());
        }
    }

    #[test]
    fn tuple_minor_functoriality() {
        let f = TupleFn::from_fn(3, 3, |x| (x[0] * 7 + x[1] * 3 + x[2]) % 4);
        assert_eq!(f.minor(&[0, 1, 2], 3), f);
        let pi = [1, 0, 1];
        let sigma = [2, 0];
        let composed: Vec<usize> = pi.iter().map(|&i| sigma[i]).collect();
        assert_eq!(f.minor(&pi, 2).minor(&sigma, 3), f.minor(&composed, 3));
    }

    #[test]
    fn template_validation() {
        assert!(Template::new(2, 2, vec![vec![0, 2]]).is_err());
        assert!(Template::new(2, 2, vec![vec![0]]).is_err());
        let t = Template::new(2, 2, vec![vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(t.relation().len(), 2);
        assert!(t.contains(&[0, 1]) && !t.contains(&[1, 1]));
    }
}
