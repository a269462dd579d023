//! Runs the binary on the golden corpus in `tests/golden`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    /// Arguments; `@name` is an input from the corpus, `%name` an output
    /// file in the run's scratch directory.
    pub args: &'static [&'static str],
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "generate_random", args: &["generate", "--family", "random-trifree", "--n", "14", "--seed", "3", "--out", "%g.json"], code: 0 },
    Case { name: "generate_dot", args: &["generate", "--family", "pentagon-strip", "--n", "2", "--format", "dot"], code: 0 },
    Case { name: "solve_c5", args: &["solve", "--input", "@c5.json", "--a", "5", "--b", "2", "--out", "%c.json"], code: 0 },
    Case { name: "solve_c5_unsat", args: &["solve", "--input", "@c5.json", "--a", "4", "--b", "2"], code: 1 },
    Case { name: "verify_wheel", args: &["verify", "--input", "@wheel4.json", "--coloring", "@wheel4_enhanced.json", "--x", "0"], code: 0 },
    Case { name: "verify_wheel_b3", args: &["verify", "--input", "@wheel4.json", "--coloring", "@wheel4_enhanced.json", "--b", "3"], code: 1 },
    Case { name: "chif_c5", args: &["chif", "--input", "@c5.json", "--certificate", "%cert.json"], code: 0 },
    Case { name: "chif_random", args: &["chif", "--input", "@random12.json"], code: 0 },
    Case { name: "enhance_random", args: &["enhance", "--input", "@random12.json", "--x", "0", "--out", "%c.json", "--trace", "%t.json"], code: 0 },
    Case { name: "extend_dodecahedron", args: &["extend", "--input", "@dodecahedron_instance.json", "--out", "%c.json", "--trace", "%t.json"], code: 0 },
    Case { name: "discharge_dodecahedron", args: &["discharge", "--input", "@dodecahedron_instance.json", "--report", "%r.json"], code: 0 },
    Case { name: "compose_dodecahedron", args: &["compose", "--input", "@dodecahedron.json", "--s", "3", "--out", "%c.json", "--report", "%r.json"], code: 0 },
    Case { name: "compose_random", args: &["compose", "--input", "@random12.json", "--s", "5", "--out", "%c.json", "--report", "%r.json"], code: 0 },
    Case { name: "malformed", args: &["chif", "--input", "@missing.json"], code: 3 },
];

pub fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Everything a run produced: exit code, stdout and output files by name.
#[derive(Debug, PartialEq, Eq)]
pub struct Outputs {
    pub code: i32,
    pub files: BTreeMap<String, Vec<u8>>,
}

pub fn run(case: &Case, threads: usize, tag: &str) -> Outputs {
    let scratch = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("{}-{tag}-t{threads}", case.name));
    let _ = fs::remove_dir_all(&scratch);
    fs::create_dir_all(&scratch).unwrap();
    let mut outs = Vec::new();
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| {
            if let Some(name) = a.strip_prefix('@') {
                corpus().join(name).display().to_string()
            } else if let Some(name) = a.strip_prefix('%') {
                outs.push(name.to_string());
                scratch.join(name).display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_setcolor"))
        .args(&args)
        .args(["--threads", &threads.to_string()])
        .output()
        .expect("binary runs");
    let mut files = BTreeMap::new();
    files.insert("stdout".to_string(), out.stdout);
    for name in outs {
        files.insert(name.clone(), fs::read(scratch.join(&name)).unwrap_or_default());
    }
    Outputs { code: out.status.code().unwrap_or(-1), files }
}
