//! Golden cases for the `reparam` binary, shared by the golden and acceptance
//! test targets.

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixture(name: &str) -> String {
    fixtures_dir().join(name).to_string_lossy().into_owned()
}

/// Runs the binary; fixture file names (ending in `.json`) are resolved in the
/// fixtures directory.
pub fn reparam(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a.ends_with(".json") {
                fixture(a)
            } else {
                a.to_string()
            }
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_reparam"))
        .args(&args)
        .output()
        .expect("binary runs")
}

/// `(arguments, expected stdout file in the golden directory)`.
pub const GOLDEN: &[(&[&str], &str)] = &[
    (&["compose", "a.json", "b.json"], "compose_a_b.json"),
    (&["compose", "idpath.json", "a.json"], "compose_idpath_a.json"),
    (&["compose", "pz.json", "a.json"], "compose_pz_a.json"),
    (&["stopmap", "ab.json"], "stopmap_ab.json"),
    (&["stopmap", "a.json", "b.json"], "stopmap_ab.json"),
    (&["realize", "ab_stops.json"], "realize_ab_stops.json"),
    (&["realize-values", "1/2", "1/4"], "realize_values_quarter_half.json"),
    (
        &["build-countable", "--depth", "1", "0"],
        "build_countable_0_depth1.json",
    ),
    (
        &["build-countable", "--depth", "2", "1/2", "1/4"],
        "build_countable_step2.json",
    ),
    (
        &["factor-left", "--eta", "ab.json", "--phi", "b.json"],
        "factor_left_ab_b.json",
    ),
    (
        &["factor-right", "--eta", "ab.json", "--phi", "a.json"],
        "factor_right_ab_a.json",
    ),
    (&["class", "a.json"], "class_a.json"),
    (&["join", "a.json", "b.json"], "join_a_b.json"),
    (&["meet", "a.json", "b.json"], "meet_a_b.json"),
    (&["regularize", "p1.json"], "regularize_p1.json"),
    (&["shared-source", "p1.json", "p1b.json"], "shared_source_p1_p1b.json"),
    (
        &["thin-homotopy", "idpath.json", "p1.json"],
        "thin_homotopy_idpath_p1.json",
    ),
    (&["normal-form", "pz.json"], "normal_form_pz.json"),
    (&["image-chain", "pz.json"], "image_chain_pz.json"),
    (&["image-chain", "pc.json"], "image_chain_pc.json"),
    (&["concat", "seg01.json", "seg13.json"], "concat_seg01_seg13.json"),
];

/// `(arguments, exit code, error name expected at the start of stderr)`.
pub const EXIT_CODES: &[(&[&str], i32, &str)] = &[
    (&["equiv", "p1.json", "idpath.json"], 0, ""),
    (&["leq", "a.json", "ab.json"], 0, ""),
    (&["check", "pz.json", "--is-loop-free"], 0, ""),
    (&["equiv", "idpath.json", "reversed.json"], 1, ""),
    (&["leq", "a.json", "b.json"], 1, ""),
    (&["check", "p1.json", "--is-regular"], 1, ""),
    (&["check", "loop.json", "--is-loop-free"], 1, ""),
    (
        &["factor-right", "--eta", "id.json", "--phi", "a.json"],
        2,
        "NoRightLift",
    ),
    (
        &["factor-left", "--eta", "id.json", "--phi", "a.json"],
        2,
        "NoLeftFactor",
    ),
    (&["image-chain", "loop.json"], 2, "NotLoopFree"),
    (&["concat", "pz.json", "pc.json"], 2, "EndpointMismatch"),
    (&["render", "cube.json"], 2, "Unrenderable"),
    (&["shared-source", "idpath.json", "reversed.json"], 2, "NotEquivalent"),
    (
        &["compose", "decreasing.json", "a.json"],
        3,
        "ValidationError: NotMonotone",
    ),
    (&["compose", "float.json", "a.json"], 3, "SyntaxError"),
    (&["compose", "missing.json", "a.json"], 3, "IoError"),
    (&["compose", "a.json"], 3, "UsageError"),
    (&["regularize", "a.json"], 3, "WrongKind"),
];

/// Fixture inputs that are already canonical and must survive a round trip
/// byte for byte.
pub const CANONICAL_FIXTURES: &[&str] = &[
    "id.json",
    "a.json",
    "b.json",
    "ab.json",
    "idpath.json",
    "p1.json",
    "p1b.json",
    "pz.json",
    "pc.json",
    "reversed.json",
    "loop.json",
    "cube.json",
    "seg01.json",
    "seg13.json",
    "ab_stops.json",
];

pub fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).expect("golden file exists")
}

/// Checks every golden case, returning descriptions of the failures.
pub fn golden_failures() -> Vec<String> {
    let mut failures = Vec::new();
    for (args, golden) in GOLDEN {
        let out = reparam(args);
        let stdout = String::from_utf8_lossy(&out.stdout);
        if out.status.code() != Some(0) || stdout != read_golden(golden) {
            failures.push(format!(
                "{args:?}: exit {:?}, stdout differs from {golden}: {stdout}{}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
    }
    for name in CANONICAL_FIXTURES {
        let out = reparam(&["canonicalize", name]);
        let original = std::fs::read_to_string(fixtures_dir().join(name)).unwrap();
        if out.status.code() != Some(0) || out.stdout != original.as_bytes() {
            failures.push(format!("{name} does not round-trip"));
        }
    }
    failures
}

pub fn exit_code_failures() -> Vec<String> {
    let mut failures = Vec::new();
    for (args, code, name) in EXIT_CODES {
        let out = reparam(args);
        let stderr = String::from_utf8_lossy(&out.stderr);
        if out.status.code() != Some(*code) || !stderr.starts_with(name) {
            failures.push(format!(
                "{args:?}: expected exit {code} with {name:?}, got {:?} with {stderr:?}",
                out.status.code()
            ));
        }
    }
    failures
}
