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


use lo_colour::approx::{delta_threshold, lo_colour_with, LoConfig};
use lo_colour::exact::{exact_lo_colour, ExactOutcome};
use lo_colour::format::{write_colouring, write_hypergraph};
use lo_colour::gen::{dense_edge_count, gen_planted, sparse_edge_count, GenSpec};
use lo_colour::gf2::Gf2System;
use lo_colour::graph::{clique_removal_is, greedy_is};
use serde_json::json;

use crate::io::{emit, json_line, read_colouring, read_hypergraph, write_atomic};
use crate::{Cli, Command, Failure, Family, GenArgs};

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Solve {
            input,
            clique_limit,
        } => {
            let h = read_hypergraph(input)?;
            let config = LoConfig {
                clique_removal_limit: *clique_limit,
            };
            let result = lo_colour_with(&h, &config)?;
            // lo_colour_with re-verifies; checked again here so no path
            // reports success with an invalid colouring
            if !h.verify_lo_colouring(&result.colouring)? {
                return Err(Failure::negative("colouring failed verification"));
            }
            eprintln!(
                "{}",
                json!({
                    "n": h.vertex_count(),
                    "m": h.edge_count(),
                    "colours_used": result.colours_used,
                    "linearised_vertices": result.linearised_vertices,
                    "steps": result.steps,
                })
            );
            emit(out, &write_colouring(&result.colouring))
        }
        Command::Exact { input, k } => {
            let h = read_hypergraph(input)?;
            let (outcome, stats) = exact_lo_colour(&h, *k, cli.budget)?;
            eprintln!("{}", json!({ "outcome": outcome.tag(), "stats": stats }));
            match outcome {
                ExactOutcome::Found(c) => emit(out, &write_colouring(&c)),
                ExactOutcome::Unsatisfiable => {
                    Err(Failure::negative(format!("no LO {k}-colouring exists")))
                }
                ExactOutcome::BudgetExceeded => Err(Failure::budget(cli.budget)),
            }
        }
        Command::Verify { input, colouring } => {
            let h = read_hypergraph(input)?;
            let c = read_colouring(colouring)?;
            let valid = h.verify_lo_colouring(&c)?;
            emit(out, &json_line(&json!({ "valid": valid, "colours": c.distinct() })))?;
            if valid {
                Ok(())
            } else {
                Err(Failure::negative("not an LO colouring"))
            }
        }
        Command::Gen(args) => generate(args, out),
        Command::Bench(args) => crate::bench::run(args, out),
        Command::Gf2 { input } => {
            let h = read_hypergraph(input)?;
            let sys = Gf2System::from_hypergraph(&h)?;
            let basis = sys.kernel();
            let x = sys.max_ones_approx();
            let support: Vec<usize> = x.iter_ones().collect();
            emit(
                out,
                &json_line(&json!({
                    "variables": sys.var_count(),
                    "rows": sys.row_count(),
                    "rank": basis.rank(),
                    "kernel_dimension": basis.dimension(),
                    "weight": support.len(),
                    "support": support,
                })),
            )
        }
        Command::Is { input } => {
            let h = read_hypergraph(input)?;
            let g = h.primal_graph();
            let greedy = greedy_is(&g);
            let removal = clique_removal_is(&g);
            let (n, m) = (g.vertex_count() as u64, g.edge_count() as u64);
            emit(
                out,
                &json_line(&json!({
                    "n": n,
                    "edges": m,
                    "average_degree": g.average_degree(),
                    "turan_bound": if n == 0 { 0 } else { (n * n).div_ceil(2 * m + n) },
                    "greedy": greedy.len(),
                    "clique_removal": removal.len(),
                })),
            )
        }
        Command::Minion(cmd) => crate::minion::run(cmd, cli.budget, out),
    }
}

fn generate(args: &GenArgs, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let n = args.n;
    let delta = delta_threshold(n);
    let spec = match args.family {
        Family::Sparse => GenSpec::new(n, sparse_edge_count(n, delta), args.seed)
            .frac2(args.frac2)
            .linear(args.linear),
        Family::Dense => GenSpec::new(n, dense_edge_count(n, delta), args.seed)
            .frac2(args.frac2)
            .linear(true),
        Family::Balanced => GenSpec::new(n, sparse_edge_count(n, delta), args.seed)
            .frac2(1.0 / 3.0)
            .linear(true),
        Family::Custom => {
            let base = match (args.m, args.density) {
                (Some(m), _) => GenSpec::new(n, m, args.seed),
                (None, Some(d)) => GenSpec::with_density(n, d, args.seed),
                (None, None) => {
                    return Err(Failure::usage("custom family needs --m or --density"))
                }
            };
            base.frac2(args.frac2).linear(args.linear)
        }
    }
    .allow_repeat(args.allow_repeat);
    let (h, witness) = gen_planted(&spec)?;
    if let Some(path) = &args.witness {
        write_atomic(path, &write_colouring(&witness))?;
    }
    emit(out, &write_hypergraph(&h))
}
