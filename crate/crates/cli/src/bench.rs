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


//! Scaling harness: gen, solve and verify over a grid of (size, seed).

use std::fmt::Write as _;
use std::path::Path;

use lo_colour::approx::LoConfig;
use lo_colour::bench::{bench_instance, doubling_sizes, summarize, BenchRecord};
use rayon::prelude::*;

use crate::io::{emit, json_line, write_atomic};
use crate::{BenchArgs, Failure, Format};

/// Parses `lo..hi` into the doubling sizes between the two.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("--sizes expects lo..hi, got {spec:?}"));
    let (lo, hi) = spec.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo < 3 || hi < lo {
        return Err(Failure::usage(format!("--sizes needs 3 <= lo <= hi, got {spec:?}")));
    }
    Ok(doubling_sizes(lo, hi))
}

fn repro(n: usize, seed: u64) -> String {
    format!("locolour gen --family balanced --n {n} --seed {seed} | locolour solve -")
}

pub fn run(args: &BenchArgs, out: Option<&Path>) -> Result<(), Failure> {
    let sizes = parse_sizes(&args.sizes)?;
    let grid: Vec<(usize, u64)> = sizes
        .iter()
        .flat_map(|&n| (0..args.seeds).map(move |s| (n, args.seed + s)))
        .collect();
    let config = LoConfig {
        clique_removal_limit: args.clique_limit,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
    // collect keeps grid order, so output is canonical in (size, seed)
    let records: Vec<BenchRecord> = pool.install(|| {
        grid.par_iter()
            .map(|&(n, seed)| match bench_instance(n, seed, &config) {
                Ok(r) => Ok(r),
                Err(e) => Err(Failure {
                    message: format!("n={n} seed={seed}: {e}\nreproduce with: {}", repro(n, seed)),
                    ..Failure::from(e)
                }),
            })
            .collect::<Result<_, _>>()
    })?;
    if let Some(bad) = records.iter().find(|r| !r.valid) {
        return Err(Failure::negative(format!(
            "invalid colouring at n={} seed={}\nreproduce with: {}",
            bad.n,
            bad.seed,
            repro(bad.n, bad.seed)
        )));
    }
    let summary = summarize(&records);

    let mut text = String::new();
    match args.format {
        Format::Json => {
            for r in &records {
                text.push_str(&json_line(r));
            }
            text.push_str(&json_line(&serde_json::json!({ "summary": summary })));
        }
        Format::Csv => {
            text.push_str(BenchRecord::CSV_HEADER);
            text.push('\n');
            for r in &records {
                text.push_str(&r.csv_row());
                text.push('\n');
            }
            if args.summary.is_none() {
                eprint!("{}", json_line(&summary));
            }
        }
    }
    if let Some(path) = &args.summary {
        write_atomic(path, &json_line(&summary))?;
    }
    if let Some(path) = &args.plot {
        let mut dat = String::from("# n mean_colours max_colours ratio\n");
        for s in &summary.per_size {
            let _ = writeln!(dat, "{} {:.4} {} {:.6}", s.n, s.mean_colours, s.max_colours, s.ratio);
        }
        write_atomic(path, &dat)?;
    }
    emit(out, &text)
}
