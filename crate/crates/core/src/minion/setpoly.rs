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

//! Set representation of polymorphisms with an LO₂ source.

use serde::{Deserialize, Serialize};

use super::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::has_unique_max;

/// `f : 2^[n] → [k]`, stored as `table[S]` for the bitmask `S` (bit `i`
/// stands for element `i + 1`). Colours are kept as `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPolymorphism {
    n: usize,
    k: usize,
    table: Vec<u8>,
}

impl SetPolymorphism {
    pub fn new(n: usize, k: usize, table: Vec<u8>) -> Result<Self> {
        if n > 16 || k == 0 || k > u8::MAX as usize {
            return Err(Error::invalid(format!("unsupported size n={n}, k={k}")));
        }
        if table.len() != 1 << n {
            return Err(Error::invalid(format!(
                "table has {} entries, expected {}",
                table.len(),
                1usize << n
            )));
        }
        if table.iter().any(|&c| c == 0 || c as usize > k) {
            return Err(Error::invalid(format!("table values must lie in 1..={k}")));
        }
        Ok(SetPolymorphism { n, k, table })
    }

    pub fn from_fn(n: usize, k: usize, f: impl Fn(u32) -> u8) -> Result<Self> {
        Self::new(n, k, (0..1u32 << n).map(f).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn colours(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn value(&self, set: u32) -> u8 {
        self.table[set as usize]
    }

    /// Value on the singleton of the 0-based element `i`.
    pub fn singleton(&self, i: usize) -> u8 {
        self.table[1 << i]
    }

    /// `f_π(S) = f(π⁻¹(S))` for `π : [n] → [q]` given 0-based.
    pub fn minor(&self, pi: &[usize], q: usize) -> SetPolymorphism {
        assert_eq!(pi.len(), self.n, "map must be defined on the whole ground set");
        assert!(pi.iter().all(|&j| j < q));
        let table = (0..1u32 << q)
            .map(|s| {
                let pre = pi
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| s >> j & 1 == 1)
                    .fold(0u32, |acc, (i, _)| acc | 1 << i);
                self.table[pre as usize]
            })
            .collect();
        SetPolymorphism {
            n: q,
            k: self.k,
            table,
        }
    }

    /// Binary minor sending coordinate `i` to the second argument and every
    /// other coordinate to the first.
    pub fn binary_minor(&self, i: usize) -> SetPolymorphism {
        let pi: Vec<usize> = (0..self.n).map(|j| usize::from(j == i)).collect();
        self.minor(&pi, 2)
    }

    /// Whether every partition of the ground set into at most `r` blocks,
    /// padded with `∅` up to `r` parts, has a unique maximum value.
    pub fn is_polymorphism(&self, r: usize) -> bool {
        set_partitions(self.n)
            .iter()
            .filter(|p| p.len() <= r)
            .all(|p| self.partition_ok(p, r))
    }

    fn partition_ok(&self, blocks: &[u32], r: usize) -> bool {
        let pad = r - blocks.len();
        let values = blocks
            .iter()
            .map(|&b| self.table[b as usize])
            .chain(std::iter::repeat_n(self.table[0], pad));
        has_unique_max(values)
    }
}

/// All partitions of `{0, …, n-1}` into nonempty blocks, as block bitmasks
/// listed by smallest element.
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut blocks: Vec<u32> = Vec::new();
    fn rec(i: usize, n: usize, blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] |= 1 << i;
            rec(i + 1, n, blocks, out);
            blocks[b] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    rec(0, n, &mut blocks, &mut out);
    out
}

/// Subsets of `{0, …, n-1}` ordered by size, then lexicographically by their
/// sorted elements.
fn subset_order(n: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (0..1u32 << n).collect();
    let key = |s: &u32| {
        let elems: Vec<u32> = (0..n as u32).filter(|&i| s >> i & 1 == 1).collect();
        (elems.len(), elems)
    };
    subsets.sort_by_cached_key(key);
    subsets
}

/// Every `f : 2^[n] → [k]` whose values on each partition into at most `r`
/// blocks (padded with `∅`) have a unique maximum, in a fixed order.
///
/// Depth-first search assigns subsets by size, then lexicographically, and
/// checks each partition once all of its blocks are assigned. Fails with
/// [`Error::BudgetExceeded`] after `budget` nodes.
pub fn enumerate_set_polymorphisms(
    r: usize,
    k: usize,
    n: usize,
    budget: u64,
) -> Result<Vec<SetPolymorphism>> {
    if r < 2 || k == 0 || k > u8::MAX as usize || n > 12 {
        return Err(Error::invalid(format!("unsupported parameters r={r}, k={k}, n={n}")));
    }
    let order = subset_order(n);
    let mut position = vec![0usize; 1 << n];
    for (i, &s) in order.iter().enumerate() {
        position[s as usize] = i;
    }
    // constraints keyed by the position of their last-assigned block
    let mut checks: Vec<Vec<(Vec<u32>, usize)>> = vec![Vec::new(); order.len()];
    for p in set_partitions(n) {
        if p.len() > r {
            continue;
        }
        let pad = r - p.len();
        let last = p.iter().map(|&b| position[b as usize]).max().unwrap_or(0);
        checks[last].push((p, pad));
    }

    let mut budget = Budget::new(budget);
    let mut table = vec![0u8; 1 << n];
    let mut out = Vec::new();
    let mut depth = 0usize;
    loop {
        if depth == order.len() {
            out.push(SetPolymorphism {
                n,
                k,
                table: table.clone(),
            });
            depth -= 1;
            continue;
        }
        let s = order[depth] as usize;
        if table[s] as usize == k {
            table[s] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        if !budget.tick() {
            return Err(budget.exceeded());
        }
        table[s] += 1;
        let ok = checks[depth].iter().all(|(blocks, pad)| {
            let values = blocks
                .iter()
                .map(|&b| table[b as usize])
                .chain(std::iter::repeat_n(table[0], *pad));
            has_unique_max(values)
        });
        if ok {
            depth += 1;
        }
    }
    Ok(out)
}

/// The explicit polymorphisms certifying the two non-existence results.
///
/// Variant 1 lives on `2^[k+1]` for partitions into `k` parts: `∅` and
/// singletons map to 1, sets of size at least `k` to `k`, any other `S` to
/// `max_{x∈S} max(2, x − 1)`. Variant 2 lives on `2^[k]` for partitions into
/// `k + 1` parts: singletons map to 1, `∅` to 2, sets of size at least
/// `k − 1` to `k`, any other `S` to `max_{x∈S} max(3, x)`.
///
/// The size threshold of variant 2 must be `k − 1`: with `k` instead, the
/// complement of `{k}` takes the value `k − 1` while every other singleton
/// complement takes `k`, so the binary minors differ once `k ≥ 4`. For
/// `k = 3` both thresholds give the same table.
pub fn impossible_witness(k: usize, variant: u8) -> Result<(SetPolymorphism, usize)> {
    if !(3..=8).contains(&k) {
        return Err(Error::invalid(format!("witness needs 3 <= k <= 8, got {k}")));
    }
    let elems = |s: u32| (0..32u32).filter(move |&i| s >> i & 1 == 1).map(|i| i + 1);
    match variant {
        1 => {
            let f = SetPolymorphism::from_fn(k + 1, k, |s| match s.count_ones() as usize {
                0 | 1 => 1,
                c if c >= k => k as u8,
                _ => elems(s).map(|x| x.saturating_sub(1).max(2)).max().unwrap() as u8,
            })?;
            Ok((f, k))
        }
        2 => {
            let f = SetPolymorphism::from_fn(k, k, |s| match s.count_ones() as usize {
                0 => 2,
                1 => 1,
                c if c + 1 >= k => k as u8,
                _ => elems(s).map(|x| x.max(3)).max().unwrap() as u8,
            })?;
            Ok((f, k + 1))
        }
        _ => Err(Error::invalid(format!("unknown witness variant {variant}"))),
    }
}

/// Whether the witness is a polymorphism for its number of parts and all of
/// its binary minors coincide. Together these rule out any assignment of
/// colours to binary minors with a unique maximum on every relation tuple.
pub fn verify_impossible_witness(k: usize, variant: u8) -> Result<bool> {
    let (f, r) = impossible_witness(k, variant)?;
    let first = f.binary_minor(0);
    let minors_equal = (1..f.ground_size()).all(|i| f.binary_minor(i) == first);
    Ok(minors_equal && f.is_polymorphism(r))
}

/// Outcome of [`selector_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectorReport {
    pub holds: bool,
    pub functions_checked: usize,
    pub partitions_checked: usize,
    /// First offending table, if any.
    pub counterexample: Option<SetPolymorphism>,
}

/// Checks, for every enumerated polymorphism on ground sets of size
/// `1..=max_n`, that the singleton values have a unique maximum at some `j`,
/// and that every partition whose unique maximum value equals that of the
/// singletons attains it on the block containing `j`.
pub fn selector_check(r: usize, k: usize, max_n: usize, budget: u64) -> Result<SelectorReport> {
    if r < max_n + 2 {
        return Err(Error::invalid(format!("need r >= max_n + 2, got r={r}, max_n={max_n}")));
    }
    let mut report = SelectorReport {
        holds: true,
        functions_checked: 0,
        partitions_checked: 0,
        counterexample: None,
    };
    for n in 1..=max_n {
        let partitions = set_partitions(n);
        for f in enumerate_set_polymorphisms(r, k, n, budget)? {
            report.functions_checked += 1;
            if !selector_holds(&f, &partitions, &mut report.partitions_checked) {
                report.holds = false;
                report.counterexample = Some(f);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

fn selector_holds(f: &SetPolymorphism, partitions: &[Vec<u32>], counter: &mut usize) -> bool {
    let singles: Vec<u8> = (0..f.n).map(|i| f.singleton(i)).collect();
    if !has_unique_max(singles.iter().copied()) {
        return false;
    }
    let top = *singles.iter().max().unwrap();
    let j = singles.iter().position(|&v| v == top).unwrap();
    partitions.iter().all(|blocks| {
        *counter += 1;
        let values: Vec<u8> = blocks.iter().map(|&b| f.value(b)).collect();
        if !has_unique_max(values.iter().copied()) {
            return false;
        }
        let m = *values.iter().max().unwrap();
        let i = values.iter().position(|&v| v == m).unwrap();
        m != top || blocks[i] >> j & 1 == 1
    })
}
