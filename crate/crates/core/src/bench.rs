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

//! Scaling measurements for [`crate::approx::lo_colour`].

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::approx::{lo_colour_with, LoConfig, StepKind};
use crate::error::Result;
use crate::gen::gen_balanced_linear;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub colours_used: u32,
    pub steps_type1: usize,
    pub steps_type2: usize,
    pub runtime_ms: f64,
    pub valid: bool,
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str =
        "n,m,seed,colours_used,steps_type1,steps_type2,runtime_ms,valid";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3},{}",
            self.n,
            self.m,
            self.seed,
            self.colours_used,
            self.steps_type1,
            self.steps_type2,
            self.runtime_ms,
            self.valid
        )
    }
}

/// Generates the instance [`gen_balanced_linear`]`(n, seed)`, colours it and
/// re-verifies the result. `runtime_ms` covers colouring only.
pub fn bench_instance(n: usize, seed: u64, config: &LoConfig) -> Result<BenchRecord> {
    let (h, _) = gen_balanced_linear(n, seed)?;
    let start = Instant::now();
    let out = lo_colour_with(&h, config)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let valid = h.verify_lo_colouring(&out.colouring)?;
    Ok(BenchRecord {
        n,
        m: h.edge_count(),
        seed,
        colours_used: out.colours_used,
        steps_type1: out.steps_of(StepKind::Type1),
        steps_type2: out.steps_of(StepKind::Type2),
        runtime_ms,
        valid,
    })
}

/// `∛(n·ln ln n / ln n)`, with `ln ln n` clamped below at 1.
pub fn theory_scale(n: usize) -> f64 {
    let ln = (n.max(2) as f64).ln();
    let lnln = if ln > 1.0 { ln.ln().max(1.0) } else { 1.0 };
    (n as f64 * lnln / ln).cbrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub runs: usize,
    pub mean_colours: f64,
    pub max_colours: u32,
    /// `mean_colours / theory_scale(n)`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    /// Least-squares slope of `ln K` against `ln n` over all records.
    pub slope: f64,
    pub intercept: f64,
    pub per_size: Vec<SizeSummary>,
    pub all_valid: bool,
}

/// Ordinary least squares `y = slope·x + intercept`; `None` without spread.
pub fn least_squares(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if points.is_empty() || sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.colours_used as f64).ln()))
        .collect();
    let (slope, intercept) = least_squares(&points).unwrap_or((f64::NAN, f64::NAN));
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let per_size = sizes
        .into_iter()
        .map(|n| {
            let ks: Vec<u32> = records.iter().filter(|r| r.n == n).map(|r| r.colours_used).collect();
            let mean = ks.iter().map(|&k| k as f64).sum::<f64>() / ks.len() as f64;
            SizeSummary {
                n,
                runs: ks.len(),
                mean_colours: mean,
                max_colours: ks.iter().copied().max().unwrap_or(0),
                ratio: mean / theory_scale(n),
            }
        })
        .collect();
    BenchSummary {
        slope,
        intercept,
        per_size,
        all_valid: records.iter().all(|r| r.valid),
    }
}

/// Sizes `lo, 2·lo, 4·lo, …` up to and including `hi`.
pub fn doubling_sizes(lo: usize, hi: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = lo.max(1);
    while n <= hi {
        out.push(n);
        n *= 2;
    }
    out
}
