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

//! Line-oriented text formats for instances and colourings.
//!
//! Instance:
//!
//! ```text
//! c optional comment lines
//! p lohg <r> <n> <m>
//! e v1 v2 ... vr        (m lines, vertices 1-indexed)
//! ```
//!
//! Colouring:
//!
//! ```text
//! s lo <k> <n>
//! c1 c2 ... cn
//! ```
//!
//! Blank lines and lines starting with `c` are ignored. [`write_hypergraph`]
//! emits edges with sorted slots, so canonical files round-trip byte for byte.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Colouring, Hypergraph};

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

/// Data lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !is_comment(l))
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {tok:?}"),
    })
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `p lohg` header".into(),
    })?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("lohg") {
        return Err(Error::Parse {
            line: hline,
            msg: format!("expected `p lohg <r> <n> <m>`, found {header:?}"),
        });
    }
    let r: usize = parse_num(toks.next(), hline, "uniformity")?;
    let n: usize = parse_num(toks.next(), hline, "vertex count")?;
    let m: usize = parse_num(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(Error::Parse {
            line: hline,
            msg: "trailing tokens in header".into(),
        });
    }
    if r < 2 {
        return Err(Error::Parse {
            line: hline,
            msg: format!("uniformity {r} is below 2"),
        });
    }

    let mut slots = Vec::with_capacity(m.saturating_mul(r).min(1 << 28));
    let mut count = 0;
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        if toks.next() != Some("e") {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected an `e` line, found {line:?}"),
            });
        }
        let start = slots.len();
        for tok in toks {
            let v: u64 = parse_num(Some(tok), ln, "vertex")?;
            if v == 0 || v > n as u64 {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("vertex {v} outside 1..={n}"),
                });
            }
            slots.push((v - 1) as u32);
        }
        if slots.len() - start != r {
            return Err(Error::Parse {
                line: ln,
                msg: format!("edge has {} vertices, expected {r}", slots.len() - start),
            });
        }
        slots[start..].sort_unstable();
        if slots[start] == slots[start + r - 1] {
            return Err(Error::Parse {
                line: ln,
                msg: "constant edge".into(),
            });
        }
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header promises {m} edges, found {count}"),
        });
    }
    Ok(Hypergraph::from_sorted_slots(r, n, slots))
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::with_capacity(16 + h.edge_count() * (2 + 8 * h.uniformity()));
    let _ = writeln!(
        out,
        "p lohg {} {} {}",
        h.uniformity(),
        h.vertex_count(),
        h.edge_count()
    );
    for e in h.edges() {
        out.push('e');
        for &v in e {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}

pub fn parse_colouring(text: &str) -> Result<Colouring> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `s lo` header".into(),
    })?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("s") || toks.next() != Some("lo") {
        return Err(Error::Parse {
            line: hline,
            msg: format!("expected `s lo <k> <n>`, found {header:?}"),
        });
    }
    let k: u32 = parse_num(toks.next(), hline, "colour count")?;
    let n: usize = parse_num(toks.next(), hline, "vertex count")?;
    let mut colours = Vec::with_capacity(n.min(1 << 28));
    let mut last = hline;
    for (ln, line) in lines {
        last = ln;
        for tok in line.split_whitespace() {
            let c: u32 = parse_num(Some(tok), ln, "colour")?;
            if c == 0 || c > k {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("colour {c} outside 1..={k}"),
                });
            }
            colours.push(c);
        }
    }
    if colours.len() != n {
        return Err(Error::Parse {
            line: last,
            msg: format!("header promises {n} colours, found {}", colours.len()),
        });
    }
    Colouring::new(k, colours)
}

pub fn write_colouring(c: &Colouring) -> String {
    let mut out = String::with_capacity(16 + c.len() * 4);
    let _ = writeln!(out, "s lo {} {}", c.k(), c.len());
    for (i, x) in c.colours().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x}");
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "c two edges sharing a pair\np lohg 3 4 2\ne 1 2 3\ne 1 2 4\n";

    #[test]
    fn parses_example() {
        let h = parse_hypergraph(EXAMPLE).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge(1), &[0, 1, 3]);
        assert_eq!(write_hypergraph(&h), "p lohg 3 4 2\ne 1 2 3\ne 1 2 4\n");
    }

    #[test]
    fn sorts_slots() {
        let h = parse_hypergraph("p lohg 3 3 1\ne 3 1 1\n").unwrap();
        assert_eq!(h.edge(0), &[0, 0, 2]);
    }

    #[test]
    fn rejects_malformed() {
        let bad = [
            "",
            "p lohg 3 4\n",
            "p cnf 3 4 0\n",
            "p lohg 3 4 1\ne 1 2\n",
            "p lohg 3 4 1\ne 1 2 5\n",
            "p lohg 3 4 1\ne 0 1 2\n",
            "p lohg 3 4 2\ne 1 2 3\n",
            "p lohg 3 4 1\ne 2 2 2\n",
            "p lohg 3 4 1\nx 1 2 3\n",
            "p lohg 1 4 0\n",
        ];
        for text in bad {
            assert!(parse_hypergraph(text).is_err(), "{text:?} accepted");
        }
    }

    #[test]
    fn colouring_format() {
        let c = parse_colouring("s lo 2 4\n1 1 2 2\n").unwrap();
        assert_eq!(c.colours(), &[1, 1, 2, 2]);
        assert_eq!(write_colouring(&c), "s lo 2 4\n1 1 2 2\n");
        assert!(parse_colouring("s lo 2 4\n1 1 2\n").is_err());
        assert!(parse_colouring("s lo 2 2\n1 3\n").is_err());
        assert!(parse_colouring("p lohg 2 2\n1 1\n").is_err());
        let empty = Colouring::new(1, vec![]).unwrap();
        assert_eq!(parse_colouring(&write_colouring(&empty)).unwrap(), empty);
    }
}
