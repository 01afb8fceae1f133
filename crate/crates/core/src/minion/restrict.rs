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

//! Restricting polymorphisms to a smaller input domain.

use serde::{Deserialize, Serialize};

use super::{all_tuples, is_polymorphism, lo_template, Budget, RelationIndex, Template, TupleFn};
use crate::error::{Error, Result};

/// Every polymorphism `a^arity → b` in table form, in lexicographic order
/// of tables.
///
/// Table entries are assigned in input order; each column choice is checked
/// once its last row is assigned.
pub fn enumerate_polymorphisms(a: &Template, b: &Template, arity: usize, budget: u64) -> Result<Vec<TupleFn>> {
    if a.arity() != b.arity() {
        return Err(Error::invalid("templates differ in arity"));
    }
    let ell = a.domain_size();
    let size = ell
        .checked_pow(arity as u32)
        .filter(|&s| s <= 1 << 20)
        .ok_or_else(|| Error::invalid("table too large"))?;
    let cols = a.relation().len();
    let picks = cols
        .checked_pow(arity as u32)
        .filter(|&s| s <= 1 << 24)
        .ok_or_else(|| Error::invalid("too many column choices"))?;
    let probe = TupleFn::new(ell, arity, vec![0; size])?;

    // each column choice gives r input rows, i.e. r table indices
    let mut constraints: Vec<Vec<usize>> = Vec::with_capacity(picks);
    for pick in all_tuples(cols, arity) {
        let rows = (0..a.arity())
            .map(|i| {
                let input: Vec<u32> = pick.iter().map(|&c| a.relation()[c as usize][i]).collect();
                probe.index_of(&input)
            })
            .collect();
        constraints.push(rows);
    }
    constraints.sort();
    constraints.dedup();
    let mut attached: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, rows) in constraints.iter().enumerate() {
        attached[*rows.iter().max().unwrap()].push(i);
    }

    let index = RelationIndex::new(b);
    let k = b.domain_size() as u32;
    let mut budget = Budget::new(budget);
    // entry + 1, so that 0 means unassigned
    let mut table = vec![0u32; size];
    let mut image = vec![0u32; a.arity()];
    let mut out = Vec::new();
    let mut depth = 0usize;
    if size == 0 || k == 0 {
        return Ok(out);
    }
    loop {
        if depth == size {
            let t = table.iter().map(|&v| v - 1).collect();
            out.push(TupleFn::new(ell, arity, t)?);
            depth -= 1;
            continue;
        }
        if table[depth] == k {
            table[depth] = 0;
            if depth == 0 {
                return Ok(out);
            }
            depth -= 1;
            continue;
        }
        if !budget.tick() {
            return Err(budget.exceeded());
        }
        table[depth] += 1;
        let ok = attached[depth].iter().all(|&c| {
            for (slot, &row) in image.iter_mut().zip(&constraints[c]) {
                *slot = table[row] - 1;
            }
            index.contains(&image)
        });
        if ok {
            depth += 1;
        }
    }
}

/// All maps `[p] → [q]` as 0-based vectors.
fn all_maps(p: usize, q: usize) -> Vec<Vec<usize>> {
    all_tuples(q, p)
        .into_iter()
        .map(|t| t.into_iter().map(|x| x as usize).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub holds: bool,
    /// `(arity, number of enumerated source polymorphisms)`.
    pub enumerated: Vec<(usize, usize)>,
    pub minors_checked: usize,
    /// Every source polymorphism satisfied `f(a) < f(a + 1)` on `[ℓ]^p`.
    pub strictly_increasing: bool,
    pub failure: Option<String>,
}

/// Checks that restricting `(LO_{ℓ+1}^r, LO_{k+1}^r)` polymorphisms of
/// arity at most `max_arity` to inputs in `[ℓ]` yields
/// `(LO_ℓ^r, LO_k^r)` polymorphisms, and that restriction commutes with
/// every minor between those arities.
pub fn verify_restriction_hom(ell: usize, k: usize, r: usize, max_arity: usize, budget: u64) -> Result<RestrictionReport> {
    if r < 3 || ell < 2 || ell >= k {
        return Err(Error::invalid(format!("need r >= 3 and 2 <= ell < k, got ell={ell}, k={k}, r={r}")));
    }
    let big_src = lo_template(ell + 1, r);
    let big_dst = lo_template(k + 1, r);
    let small_src = lo_template(ell, r);
    let small_dst = lo_template(k, r);
    let mut report = RestrictionReport {
        holds: true,
        enumerated: Vec::new(),
        minors_checked: 0,
        strictly_increasing: true,
        failure: None,
    };
    let fail = |report: &mut RestrictionReport, why: String| {
        report.holds = false;
        report.failure.get_or_insert(why);
    };
    for p in 1..=max_arity {
        let fs = enumerate_polymorphisms(&big_src, &big_dst, p, budget)?;
        report.enumerated.push((p, fs.len()));
        for f in &fs {
            for input in all_tuples(ell, p) {
                let shifted: Vec<u32> = input.iter().map(|&x| x + 1).collect();
                if f.eval(&input) >= f.eval(&shifted) {
                    report.strictly_increasing = false;
                    fail(&mut report, format!("{f:?} is not increasing at {input:?}"));
                }
            }
            let g = f.restrict(ell);
            if !is_polymorphism(&g, &small_src, &small_dst)? {
                fail(&mut report, format!("restriction of {f:?} is not a polymorphism"));
            }
            for q in 1..=max_arity {
                for pi in all_maps(p, q) {
                    report.minors_checked += 1;
                    if f.minor(&pi, q).restrict(ell) != g.minor(&pi, q) {
                        fail(&mut report, format!("restriction of {f:?} does not commute with {pi:?}"));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Filters every table by the direct polymorphism test.
    fn brute(a: &Template, b: &Template, arity: usize) -> Vec<TupleFn> {
        let ell = a.domain_size();
        all_tuples(b.domain_size(), ell.pow(arity as u32))
            .into_iter()
            .map(|t| TupleFn::new(ell, arity, t).unwrap())
            .filter(|f| is_polymorphism(f, a, b).unwrap())
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (l, k, r, p) in [(2, 2, 3, 2), (2, 3, 3, 2), (3, 3, 3, 1), (2, 3, 2, 2)] {
            let a = lo_template(l, r);
            let b = lo_template(k, r);
            assert_eq!(enumerate_polymorphisms(&a, &b, p, 1 << 30).unwrap(), brute(&a, &b, p));
        }
    }

    #[test]
    fn unary_two_to_two() {
        // only the identity maps LO_2^3 to itself
        let t = lo_template(2, 3);
        let fs = enumerate_polymorphisms(&t, &t, 1, 1000).unwrap();
        assert_eq!(fs, vec![TupleFn::new(2, 1, vec![0, 1]).unwrap()]);
    }

    #[test]
    fn restriction_commutes() {
        let rep = verify_restriction_hom(2, 3, 3, 2, 1 << 30).unwrap();
        assert!(rep.holds, "{:?}", rep.failure);
        assert!(rep.strictly_increasing);
        assert_eq!(rep.enumerated.len(), 2);
        assert!(rep.enumerated.iter().all(|&(_, c)| c > 0));
    }

    #[test]
    fn bad_parameters() {
        assert!(verify_restriction_hom(3, 3, 3, 1, 10).is_err());
        assert!(verify_restriction_hom(2, 3, 2, 1, 10).is_err());
        let t = lo_template(2, 3);
        assert!(enumerate_polymorphisms(&t, &t, 3, 2).is_err());
    }
}
