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


//! Input and output plumbing shared by the subcommands.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use lo_colour::format::{parse_colouring, parse_hypergraph};
use lo_colour::{Colouring, Hypergraph};

use crate::Failure;

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    parse_hypergraph(&read_text(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn read_colouring(path: &Path) -> Result<Colouring, Failure> {
    parse_colouring(&read_text(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let io_err = |e: io::Error| Failure::usage(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err)?;
    tmp.write_all(text.as_bytes()).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Sends `text` to `out` if given, otherwise to standard output.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::usage(format!("writing standard output: {e}")))
        }
    }
}

/// One JSON document followed by a newline.
pub fn json_line(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serialisable value");
    s.push('\n');
    s
}
