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


use std::path::Path;

use lo_colour::minion::{
    check_minion_hom_lo, co_colouring_search, enumerate_set_polymorphisms, free_structure_lo2,
    impossible_witness, selector_check, verify_impossible_witness, verify_restriction_hom, Search,
};
use serde_json::json;

use crate::io::{emit, json_line};
use crate::{Failure, MinionCommand};

/// Maps a three-way search result to an exit status after printing.
fn settle<T>(search: &Search<T>, budget: u64, what: &str) -> Result<(), Failure> {
    match search.decision() {
        Some(true) => Ok(()),
        Some(false) => Err(Failure::negative(format!("{what}: none exists"))),
        None => Err(Failure::budget(budget)),
    }
}

pub fn run(cmd: &MinionCommand, budget: u64, out: Option<&Path>) -> Result<(), Failure> {
    match *cmd {
        MinionCommand::Enum { r, k, n, count } => {
            let found = enumerate_set_polymorphisms(r, k, n, budget)?;
            let value = if count {
                json!({ "r": r, "k": k, "n": n, "count": found.len() })
            } else {
                let tables: Vec<&[u8]> = found.iter().map(|f| f.table()).collect();
                json!({ "r": r, "k": k, "n": n, "count": found.len(), "tables": tables })
            };
            emit(out, &json_line(&value))
        }
        MinionCommand::Free { r_src, k, r_rel } => {
            let free = free_structure_lo2(r_src, k, r_rel, budget)?;
            emit(
                out,
                &json_line(&json!({
                    "elements": free.elements.len(),
                    "arity": free.structure.arity(),
                    "tuples": free.structure.relation().len(),
                })),
            )
        }
        MinionCommand::Homcheck { r_src, r_dst, k } => {
            let check = check_minion_hom_lo(r_src, r_dst, k, budget)?;
            emit(out, &json_line(&check))?;
            if !check.agree() {
                return Err(Failure::usage("the two decision routes disagree"));
            }
            match check.decision() {
                Some(true) => Ok(()),
                Some(false) => Err(Failure::negative("no minion homomorphism")),
                None => Err(Failure::budget(budget)),
            }
        }
        MinionCommand::Cocolour { m, k, p } => {
            let (search, nodes) = co_colouring_search(m, k, p, budget)?;
            emit(
                out,
                &json_line(&json!({ "m": m, "k": k, "p": p, "result": search, "nodes": nodes })),
            )?;
            settle(&search, budget, "co-colouring")
        }
        MinionCommand::Witness { k, variant } => {
            let (f, r) = impossible_witness(k, variant)?;
            let holds = verify_impossible_witness(k, variant)?;
            emit(
                out,
                &json_line(&json!({
                    "k": k,
                    "variant": variant,
                    "r": r,
                    "ground_size": f.ground_size(),
                    "table": f.table(),
                    "verified": holds,
                })),
            )?;
            if holds {
                Ok(())
            } else {
                Err(Failure::negative("witness failed verification"))
            }
        }
        MinionCommand::Restriction {
            ell,
            k,
            r,
            max_arity,
        } => {
            let report = verify_restriction_hom(ell, k, r, max_arity, budget)?;
            emit(out, &json_line(&report))?;
            if report.holds {
                Ok(())
            } else {
                Err(Failure::negative("restriction is not a minion homomorphism"))
            }
        }
        MinionCommand::Selector { r, k, max_n } => {
            let report = selector_check(r, k, max_n, budget)?;
            emit(out, &json_line(&report))?;
            if report.holds {
                Ok(())
            } else {
                Err(Failure::negative("selector property fails"))
            }
        }
    }
}
