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

//! Linearly ordered (LO) colourings of uniform hypergraphs.
//!
//! An LO `k`-colouring assigns each vertex a colour in `1..=k` so that the
//! colours of every edge have a unique maximum. This crate provides:
//!
//! * the hypergraph and colouring types with a line-oriented file format,
//! * a polynomial-time approximation that LO-colours LO-2-colourable
//!   3-uniform hypergraphs with roughly `∛(n log log n / log n)` colours
//!   ([`approx::lo_colour`]),
//! * the GF(2) and independent-set machinery it relies on,
//! * seeded planted-instance generators and an exact backtracking oracle,
//! * [`minion`], an executable laboratory for polymorphism minions of LO
//!   templates: set-representation enumeration, minors, free structures,
//!   homomorphism search, edge co-colourings and explicit witnesses.

pub mod approx;
pub mod bench;
pub mod error;
pub mod exact;
pub mod format;
pub mod gen;
pub mod gf2;
pub mod graph;
pub mod hypergraph;
pub mod minion;

pub use error::{Error, Result};
pub use hypergraph::{Colouring, Hypergraph, MergeMap};
