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

//! Homogeneous linear systems over GF(2) and approximate Max-Ones.
//!
//! A hypergraph `H` yields one equation `x_a + x_b + x_c = 0` per edge. A
//! solution is exactly a vertex set meeting every edge in an even number of
//! slots, so a solution with many ones is a large set meeting each edge in
//! 0 or 2 slots.
//!
//! Rows are kept sparse (an edge touches at most three variables). The
//! solution space is maintained directly: each variable owns a packed column
//! holding its coordinate in every current basis vector, and each row is
//! folded in with word-parallel XOR. A row already satisfied by the whole
//! basis costs a few word operations, which matters because these systems
//! usually have far more rows than variables.

use std::fmt;

use crate::hypergraph::Hypergraph;
use crate::error::Result;

/// Fixed-length packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Self::zeros(len);
        for i in 0..len {
            b.set(i, true);
        }
        b
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut b = Self::zeros(bits.len());
        for (i, &x) in bits.iter().enumerate() {
            b.set(i, x);
        }
        b
    }

    /// Parses a string of `0`/`1` characters, most significant first.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Self::from_bools(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        first_one(&self.words)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        parity_and(&self.words, &other.words)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|wi| wi * 64 + words[wi].trailing_zeros() as usize)
}

fn last_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .rposition(|&w| w != 0)
        .map(|wi| wi * 64 + 63 - words[wi].leading_zeros() as usize)
}

fn parity_and(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
}

/// Homogeneous system `A x = 0` over GF(2) with sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    n_vars: usize,
    vars: Vec<u32>,
    offsets: Vec<usize>,
}

impl Gf2System {
    pub fn new(n_vars: usize) -> Self {
        Gf2System {
            n_vars,
            vars: Vec::new(),
            offsets: vec![0],
        }
    }

    /// Adds the equation `Σ x_v = 0` over `vars`. Repeated variables cancel
    /// in pairs.
    ///
    /// # Panics
    /// If a variable is out of range.
    pub fn push_row(&mut self, vars: &[u32]) {
        let start = self.vars.len();
        self.vars.extend_from_slice(vars);
        let row = &mut self.vars[start..];
        row.sort_unstable();
        assert!(
            row.last().is_none_or(|&v| (v as usize) < self.n_vars),
            "row variable out of range"
        );
        // drop pairs of equal variables
        let mut kept = start;
        let mut i = start;
        while i < self.vars.len() {
            let mut j = i;
            while j < self.vars.len() && self.vars[j] == self.vars[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                self.vars[kept] = self.vars[i];
                kept += 1;
            }
            i = j;
        }
        self.vars.truncate(kept);
        self.offsets.push(self.vars.len());
    }

    pub fn push_row_bits(&mut self, row: &BitVec) {
        assert_eq!(row.len(), self.n_vars, "row length differs from variable count");
        let vars: Vec<u32> = row.iter_ones().map(|v| v as u32).collect();
        self.push_row(&vars);
    }

    pub fn from_rows(n_vars: usize, rows: &[BitVec]) -> Self {
        let mut sys = Self::new(n_vars);
        for r in rows {
            sys.push_row_bits(r);
        }
        sys
    }

    pub fn var_count(&self) -> usize {
        self.n_vars
    }

    pub fn row_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Support of row `i` (sorted, after cancellation).
    pub fn row(&self, i: usize) -> &[u32] {
        &self.vars[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn row_bits(&self, i: usize) -> BitVec {
        let mut b = BitVec::zeros(self.n_vars);
        for &v in self.row(i) {
            b.set(v as usize, true);
        }
        b
    }

    pub fn is_satisfied_by(&self, x: &BitVec) -> bool {
        x.len() == self.n_vars
            && (0..self.row_count())
                .all(|i| self.row(i).iter().filter(|&&v| x.get(v as usize)).count() % 2 == 0)
    }

    pub fn kernel(&self) -> KernelBasis {
        let ck = ColumnKernel::solve(self);
        let mut basis = Vec::with_capacity(ck.dim + ck.untouched.len());
        for j in 0..ck.dim {
            let mut b = BitVec::zeros(self.n_vars);
            for (local, col) in ck.cols.iter().enumerate() {
                if col[j / 64] >> (j % 64) & 1 == 1 {
                    b.set(ck.touched[local] as usize, true);
                }
            }
            basis.push(b);
        }
        for &u in &ck.untouched {
            let mut b = BitVec::zeros(self.n_vars);
            b.set(u as usize, true);
            basis.push(b);
        }
        KernelBasis {
            n_vars: self.n_vars,
            basis,
        }
    }

    /// A solution with at least `⌈F/2⌉` ones, where `F` counts the
    /// coordinates not identically zero on the solution space.
    ///
    /// Each coordinate is a linear form in the basis coefficients. The
    /// coefficients are fixed in order by conditional expectations: a
    /// coordinate whose form becomes constant counts its value, an undecided
    /// one counts one half. Fixing a coefficient only settles the coordinates
    /// whose last basis index it is, so the choice compares those alone;
    /// ties go to 1.
    pub fn max_ones_approx(&self) -> BitVec {
        let ck = ColumnKernel::solve(self);
        let mut x = BitVec::zeros(self.n_vars);
        for &u in &ck.untouched {
            x.set(u as usize, true);
        }
        let words = ck.dim.div_ceil(64);
        let mut settled_by: Vec<Vec<u32>> = vec![Vec::new(); ck.dim];
        for (local, col) in ck.cols.iter().enumerate() {
            if let Some(j) = last_one(col) {
                settled_by[j].push(local as u32);
            }
        }
        let mut coeff = vec![0u64; words];
        for (j, locals) in settled_by.iter().enumerate() {
            let odd = locals
                .iter()
                .filter(|&&l| parity_and(&ck.cols[l as usize], &coeff))
                .count();
            // with coefficient 1 the even ones flip to 1, with 0 the odd ones stay 1
            if locals.len() - odd >= odd {
                coeff[j / 64] |= 1 << (j % 64);
            }
        }
        for (local, col) in ck.cols.iter().enumerate() {
            if parity_and(col, &coeff) {
                x.set(ck.touched[local] as usize, true);
            }
        }
        x
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self> {
        h.require_3_uniform()?;
        let mut sys = Self::new(h.vertex_count());
        for e in h.edges() {
            sys.push_row(e);
        }
        Ok(sys)
    }
}

/// Solution space in column form: `cols[l]` holds, for touched variable
/// `touched[l]`, its coordinate in each of the `dim` basis vectors.
/// Variables in no row are free and listed in `untouched`.
struct ColumnKernel {
    touched: Vec<u32>,
    untouched: Vec<u32>,
    cols: Vec<Vec<u64>>,
    dim: usize,
}

impl ColumnKernel {
    fn solve(sys: &Gf2System) -> Self {
        let mut local = vec![u32::MAX; sys.n_vars];
        let mut touched = Vec::new();
        for &v in &sys.vars {
            if local[v as usize] == u32::MAX {
                local[v as usize] = 0;
                touched.push(v);
            }
        }
        touched.sort_unstable();
        for (l, &v) in touched.iter().enumerate() {
            local[v as usize] = l as u32;
        }
        let untouched = (0..sys.n_vars as u32)
            .filter(|&v| local[v as usize] == u32::MAX)
            .collect();

        // start from the standard basis of the touched coordinates
        let t = touched.len();
        let mut width = t;
        let mut alive = t;
        let mut cols: Vec<Vec<u64>> = (0..t)
            .map(|l| {
                let mut c = vec![0u64; t.div_ceil(64)];
                c[l / 64] |= 1 << (l % 64);
                c
            })
            .collect();
        let mut s = vec![0u64; width.div_ceil(64)];
        for i in 0..sys.row_count() {
            s.iter_mut().for_each(|w| *w = 0);
            for &v in sys.row(i) {
                for (a, b) in s.iter_mut().zip(&cols[local[v as usize] as usize]) {
                    *a ^= b;
                }
            }
            let Some(pivot) = first_one(&s) else {
                continue;
            };
            // every basis vector failing this row absorbs the pivot vector,
            // which then fails alone and is dropped (its index goes to zero)
            let (pw, pb) = (pivot / 64, pivot % 64);
            for col in cols.iter_mut() {
                if col[pw] >> pb & 1 == 1 {
                    for (a, b) in col.iter_mut().zip(&s) {
                        *a ^= b;
                    }
                }
            }
            alive -= 1;
            if alive * 2 < width && width > 64 {
                compact(&mut cols, width);
                width = alive;
                s = vec![0u64; width.div_ceil(64)];
            }
        }
        compact(&mut cols, width);
        ColumnKernel {
            touched,
            untouched,
            dim: alive,
            cols,
        }
    }
}

/// Drops basis indices that are zero in every column.
fn compact(cols: &mut [Vec<u64>], width: usize) {
    let words = width.div_ceil(64);
    let mut used = vec![0u64; words];
    for col in cols.iter() {
        for (u, w) in used.iter_mut().zip(col) {
            *u |= w;
        }
    }
    let keep: Vec<usize> = (0..width).filter(|&j| used[j / 64] >> (j % 64) & 1 == 1).collect();
    let new_words = keep.len().div_ceil(64);
    for col in cols.iter_mut() {
        let mut fresh = vec![0u64; new_words];
        for (nj, &j) in keep.iter().enumerate() {
            if col[j / 64] >> (j % 64) & 1 == 1 {
                fresh[nj / 64] |= 1 << (nj % 64);
            }
        }
        *col = fresh;
    }
}

/// Basis of the solution space of a [`Gf2System`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    n_vars: usize,
    basis: Vec<BitVec>,
}

impl KernelBasis {
    pub fn vectors(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Rank of the system the basis came from.
    pub fn rank(&self) -> usize {
        self.n_vars - self.basis.len()
    }

    /// Variables that can be chosen freely: the pivot columns of the reduced
    /// echelon form of the basis. The remaining columns are the system's
    /// pivot columns.
    pub fn free_columns(&self) -> Vec<usize> {
        echelon(self.basis.clone()).1
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let free = self.free_columns();
        (0..self.n_vars).filter(|c| free.binary_search(c).is_err()).collect()
    }
}

/// Row-reduces `rows` (first-nonzero pivoting); returns the nonzero reduced
/// rows and their pivot columns in increasing order.
fn echelon(mut rows: Vec<BitVec>) -> (Vec<BitVec>, Vec<usize>) {
    let mut reduced: Vec<BitVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let width = rows.first().map_or(0, |r| r.len());
    for col in 0..width {
        let Some(at) = rows.iter().position(|r| r.get(col)) else {
            continue;
        };
        let p = rows.swap_remove(at);
        for r in rows.iter_mut().chain(reduced.iter_mut()) {
            if r.get(col) {
                r.xor_assign(&p);
            }
        }
        reduced.push(p);
        pivots.push(col);
    }
    (reduced, pivots)
}

/// Rank of a set of vectors by plain Gaussian elimination.
pub fn rank_of(vectors: &[BitVec]) -> usize {
    echelon(vectors.to_vec()).0.len()
}

/// `𝓔(H)`: one parity equation per edge of a 3-uniform hypergraph.
pub fn build_system(h: &Hypergraph) -> Result<Gf2System> {
    Gf2System::from_hypergraph(h)
}

/// Vertex set meeting every edge in 0 or 2 slots, from the approximate
/// Max-Ones solution of `𝓔(H)`.
pub fn even_support_set(h: &Hypergraph) -> Result<Vec<u32>> {
    let x = build_system(h)?.max_ones_approx();
    Ok(x.iter_ones().map(|v| v as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitVec {
        BitVec::from_bit_str(s).unwrap()
    }

    fn system(n: usize, rows: &[&str]) -> Gf2System {
        Gf2System::from_rows(n, &rows.iter().map(|r| bits(r)).collect::<Vec<_>>())
    }

    #[test]
    fn bitvec_basics() {
        let mut b = BitVec::zeros(130);
        b.set(0, true);
        b.set(129, true);
        assert_eq!(b.count_ones(), 2);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 129]);
        b.flip(0);
        assert_eq!(b.first_one(), Some(129));
        assert_eq!(bits("0110").to_string(), "0110");
        assert!(bits("011").dot(&bits("010")));
        assert!(!bits("011").dot(&bits("011")));
        assert_eq!(BitVec::ones(70).count_ones(), 70);
    }

    #[test]
    fn build_system_examples() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(build_system(&h).unwrap().row_bits(0), bits("111"));
        let h = Hypergraph::new(3, 2, [[0, 0, 1]]).unwrap();
        assert_eq!(build_system(&h).unwrap().row_bits(0), bits("01"));
        let h = Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let sys = build_system(&h).unwrap();
        assert_eq!(sys.row_bits(0), bits("1110"));
        assert_eq!(sys.row_bits(1), bits("1101"));
        let h4 = Hypergraph::new(4, 4, [[0, 1, 2, 3]]).unwrap();
        assert!(build_system(&h4).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = Gf2System::new(3).kernel();
        assert_eq!(k.dimension(), 3);
        let k = system(3, &["111"]).kernel();
        assert_eq!(k.dimension(), 2);
        assert_eq!(k.rank(), 1);
        let sys = system(3, &["100", "010", "001"]);
        assert_eq!(sys.kernel().dimension(), 0);
        assert_eq!(system(3, &["111"]).kernel().free_columns(), vec![0, 1]);
        assert_eq!(system(3, &["111"]).kernel().pivot_columns(), vec![2]);
    }

    #[test]
    fn max_ones_examples() {
        let x = system(3, &["111"]).max_ones_approx();
        assert_eq!(x.count_ones(), 2);
        assert_eq!(Gf2System::new(4).max_ones_approx(), BitVec::ones(4));
        let x = system(3, &["110", "011"]).max_ones_approx();
        assert_eq!(x, bits("111"));
    }

    #[test]
    fn push_row_cancels_pairs() {
        let mut sys = Gf2System::new(4);
        sys.push_row(&[2, 0, 2, 2, 1, 1]);
        assert_eq!(sys.row(0), &[0, 2]);
    }

    #[test]
    fn compaction_keeps_solution_space() {
        // a chain x_i = x_{i+1} over 200 variables leaves one all-ones vector
        let mut sys = Gf2System::new(200);
        for i in 0..199u32 {
            sys.push_row(&[i, i + 1]);
        }
        let k = sys.kernel();
        assert_eq!(k.dimension(), 1);
        assert_eq!(k.vectors()[0], BitVec::ones(200));
        assert_eq!(sys.max_ones_approx(), BitVec::ones(200));
    }

    #[test]
    fn even_support_examples() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let s = even_support_set(&h).unwrap();
        assert_eq!(s.len(), 2);
        let h = Hypergraph::new(3, 2, [[0, 0, 1]]).unwrap();
        assert!(!even_support_set(&h).unwrap().contains(&1));
    }
}
