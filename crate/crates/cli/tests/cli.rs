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


use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn locolour(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locolour"))
        .args(args)
        .env_remove("LOCOLOUR_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EXAMPLE: &str = "p lohg 3 4 2\ne 1 2 3\ne 1 2 4\n";
const EXAMPLE_COLOURING: &str = "s lo 2 4\n1 1 2 2\n";

#[test]
fn verify_example() {
    let dir = tempfile::tempdir().unwrap();
    let (h, c) = (dir.path().join("ex.lohg"), dir.path().join("ex.sol"));
    fs::write(&h, EXAMPLE).unwrap();
    fs::write(&c, EXAMPLE_COLOURING).unwrap();
    let out = locolour(&["verify", path(&h), path(&c)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"valid\":true"));

    fs::write(&c, "s lo 2 4\n2 2 1 1\n").unwrap();
    assert_eq!(code(&locolour(&["verify", path(&h), path(&c)])), 1);
}

#[test]
fn exact_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("ex.lohg");
    fs::write(&h, EXAMPLE).unwrap();
    assert_eq!(code(&locolour(&["exact", "--k", "1", path(&h)])), 1);
    let found = locolour(&["exact", "--k", "2", path(&h)]);
    assert_eq!(code(&found), 0);
    assert!(stdout(&found).starts_with("s lo 2 4"));
}

#[test]
fn gen_solve_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (h, w, s) = (
        dir.path().join("g.lohg"),
        dir.path().join("g.wit"),
        dir.path().join("g.sol"),
    );
    let gen = locolour(&[
        "gen", "--family", "balanced", "--n", "300", "--seed", "4", "--witness", path(&w), "--out",
        path(&h),
    ]);
    assert_eq!(code(&gen), 0, "{}", String::from_utf8_lossy(&gen.stderr));
    assert_eq!(code(&locolour(&["verify", path(&h), path(&w)])), 0);
    assert_eq!(code(&locolour(&["solve", path(&h), "--out", path(&s)])), 0);
    assert_eq!(code(&locolour(&["verify", path(&h), path(&s)])), 0);
    // only the two requested files remain; temporaries were renamed away
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);

    let again = locolour(&["gen", "--family", "balanced", "--n", "300", "--seed", "4"]);
    assert_eq!(stdout(&again), fs::read_to_string(&h).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&locolour(&["solve", "/definitely/not/here.lohg"])), 2);
    assert_eq!(code(&locolour(&["solve", "--no-such-flag", "x"])), 2);
    assert_eq!(code(&locolour(&["frobnicate"])), 2);
    assert_eq!(code(&locolour(&["gen", "--n", "10"])), 2);
    assert_eq!(code(&locolour(&["bench", "--sizes", "100"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lohg");
    fs::write(&bad, "p lohg 3 2 1\ne 1 2 9\n").unwrap();
    assert_eq!(code(&locolour(&["solve", path(&bad)])), 2);
}

#[test]
fn budget_exit_three() {
    let out = locolour(&["--budget", "5", "minion", "cocolour", "--m", "7", "--k", "4"]);
    assert_eq!(code(&out), 3);
    let env = Command::new(env!("CARGO_BIN_EXE_locolour"))
        .args(["minion", "cocolour", "--m", "7", "--k", "4"])
        .env("LOCOLOUR_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&env), 3);
}

#[test]
fn minion_decisions() {
    assert_eq!(code(&locolour(&["minion", "cocolour", "--m", "5", "--k", "3"])), 0);
    assert_eq!(code(&locolour(&["minion", "cocolour", "--m", "6", "--k", "3"])), 1);
    assert_eq!(
        code(&locolour(&["minion", "homcheck", "--r-src", "5", "--r-dst", "3", "--k", "3"])),
        0
    );
    assert_eq!(
        code(&locolour(&["minion", "homcheck", "--r-src", "3", "--r-dst", "4", "--k", "3"])),
        1
    );
    for variant in ["1", "2"] {
        assert_eq!(code(&locolour(&["minion", "witness", "--k", "3", "--variant", variant])), 0);
    }
    assert_eq!(code(&locolour(&["minion", "selector", "--r", "5", "--k", "3", "--max-n", "3"])), 0);
    assert_eq!(
        code(&locolour(&["minion", "restriction", "--ell", "2", "--k", "3", "--r", "3"])),
        0
    );
    let count = locolour(&["minion", "enum", "--r", "3", "--k", "3", "--n", "1", "--count"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&count)).unwrap();
    // unary: f(∅) < f({0}) is forced by the partition {{0}, ∅, ∅}
    assert_eq!(v["count"], 3);
}

#[test]
fn bench_outputs_are_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let (plot, summary) = (dir.path().join("k.dat"), dir.path().join("s.json"));
    let run = |jobs: &str| {
        locolour(&[
            "bench", "--sizes", "64..256", "--seeds", "3", "--jobs", jobs, "--plot", path(&plot),
            "--summary", path(&summary),
        ])
    };
    let (one, two) = (run("1"), run("2"));
    assert_eq!(code(&one), 0);
    let strip = |o: &Output| -> Vec<serde_json::Value> {
        stdout(o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                if let Some(obj) = v.as_object_mut() {
                    obj.remove("runtime_ms");
                }
                v
            })
            .collect()
    };
    let (a, b) = (strip(&one), strip(&two));
    assert_eq!(a, b);
    assert_eq!(a.len(), 10);
    let order: Vec<(u64, u64)> = a[..9]
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["seed"].as_u64().unwrap()))
        .collect();
    let mut sorted = order.clone();
    sorted.sort_unstable();
    assert_eq!(order, sorted);
    assert!(a[9]["summary"]["all_valid"].as_bool().unwrap());
    assert_eq!(fs::read_to_string(&plot).unwrap().lines().count(), 4);
    assert!(fs::read_to_string(&summary).unwrap().contains("\"slope\""));

    let csv = locolour(&["bench", "--sizes", "64..64", "--seeds", "2", "--format", "csv"]);
    let text = stdout(&csv);
    assert!(text.starts_with("n,m,seed,colours_used"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn diagnostics_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("ex.lohg");
    fs::write(&h, EXAMPLE).unwrap();
    let gf2: serde_json::Value = serde_json::from_str(&stdout(&locolour(&["gf2", path(&h)]))).unwrap();
    assert_eq!(gf2["rank"], 2);
    assert_eq!(gf2["kernel_dimension"], 2);
    let is: serde_json::Value = serde_json::from_str(&stdout(&locolour(&["is", path(&h)]))).unwrap();
    // primal graph: K4 minus the edge {3, 4}
    assert_eq!(is["edges"], 5);
    assert_eq!(is["greedy"], 2);
}
