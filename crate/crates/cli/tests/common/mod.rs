#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub const HOLDS: i32 = 0;
pub const FAILS: i32 = 1;
pub const USAGE: i32 = 2;

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocktoep"))
        .args(args)
        .current_dir(root().join("data"))
        .output()
        .expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn stripped(stdout: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(stdout).expect("report is JSON");
    v.as_object_mut().expect("report is an object").remove("timings");
    v
}

/// Compares `actual` with `golden/<name>.json`, or rewrites the file when
/// `BLOCKTOEP_BLESS` is set.
pub fn golden(name: &str, actual: &Value) -> Result<(), String> {
    let path = root().join("golden").join(format!("{name}.json"));
    if std::env::var_os("BLOCKTOEP_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(actual).unwrap() + "\n").unwrap();
        return Ok(());
    }
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let expected: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if actual == &expected {
        Ok(())
    } else {
        Err(format!("report differs from {}", path.display()))
    }
}

/// (golden name, arguments after `--oracle --json`, expected exit code)
pub const REPORT_CASES: &[(&str, &[&str], i32)] = &[
    ("toeplitz_dense", &["check", "toeplitz", "dense_toeplitz.json"], HOLDS),
    ("toeplitz_structured", &["check", "toeplitz", "circ_a.json"], HOLDS),
    ("toeplitz_diag", &["check", "toeplitz", "diag01.json"], FAILS),
    ("toeplitz_grid", &["check", "toeplitz", "grid.json"], FAILS),
    ("product_shifts", &["check", "product", "lower.json", "upper.json"], FAILS),
    ("product_circulant", &["check", "product", "circ_a.json", "circ_b.json"], HOLDS),
    ("product_random", &["check", "product", "rand_a.json", "rand_b.json"], FAILS),
    ("product_dense_operand", &["check", "product", "dense_toeplitz.json", "lower.json"], FAILS),
    (
        "difference_quad",
        &["check", "difference", "quad.a.json", "quad.b.json", "quad.c.json", "quad.d.json"],
        HOLDS,
    ),
    (
        "difference_shifts",
        &["check", "difference", "lower.json", "upper.json", "zero2.json", "zero2.json"],
        FAILS,
    ),
    (
        "equal_swap",
        &["check", "equal", "lower.json", "upper.json", "upper.json", "lower.json"],
        FAILS,
    ),
    (
        "equal_same",
        &["check", "equal", "rand_a.json", "rand_b.json", "rand_a.json", "rand_b.json"],
        HOLDS,
    ),
    (
        "equal_quad",
        &["check", "equal", "quad.a.json", "quad.b.json", "quad.c.json", "quad.d.json"],
        FAILS,
    ),
    ("normal_lambda_i", &["check", "normal", "normal_i.json"], HOLDS),
    ("normal_mixed", &["check", "normal", "normal_mixed.json"], HOLDS),
    ("normal_perturbed", &["check", "normal", "non_normal.json"], FAILS),
    ("normal_shift", &["check", "normal", "lower.json"], FAILS),
];

/// (arguments, substring expected on stderr); all exit 2.
pub const USAGE_CASES: &[(&[&str], &str)] = &[
        (&["check", "toeplitz", "missing_key.json"], "\"0\""),
        (&["check", "toeplitz", "malformed.json"], "line"),
        (&["check", "toeplitz", "no_such_file.json"], "no_such_file.json"),
        (&["check", "product", "diag01.json", "lower.json"], "not block Toeplitz"),
        (&["check", "product", "lower.json", "circ_a.json"], "shape"),
        (&["check", "difference", "lower.json", "upper.json", "zero2.json"], ""),
        (&["check", "equal", "quad.a.json", "quad.b.json", "quad.c.json", "lower.json"], "shape"),
        (&["check", "normal", "circ_a.json"], ""),
        (&["check", "normal", "malformed.json"], "line"),
        (&["--tol=-1", "check", "toeplitz", "lower.json"], "tolerance"),
        (&["--tol", "nan", "check", "toeplitz", "lower.json"], "tolerance"),
        (&["gen", "no-such-kind", "--n", "3", "--d", "1"], "no-such-kind"),
        (&["gen", "circulant", "--n", "0", "--d", "1"], ""),
        (&["gen", "gap-matched-quadruple", "--n", "3", "--d", "1"], "--out"),
        (&["gen", "normal-slices", "--n", "3", "--d", "1", "--branch", "sideways"], "sideways"),
        (&["gen", "normal-slices", "--n", "3", "--d", "1", "--lambda", "1"], "re,im"),
        (&["bench", "--n", "4", "--d", "1", "--reps", "0"], "reps"),
        (&["bench", "--n", "600", "--d", "1"], ""),
        (&["frobnicate"], ""),
        (&["check"], ""),
    ];

/// `gen` invocations that reproduce a corpus file byte for byte.
pub const GEN_CASES: &[(&[&str], &str)] = &[
    (&["--seed", "2", "gen", "circulant", "--n", "4", "--d", "2"], "circ_a.json"),
    (&["--seed", "4", "gen", "random-toeplitz", "--n", "4", "--d", "2"], "rand_a.json"),
    (
        &["--seed", "6", "gen", "normal-slices", "--n", "4", "--d", "3", "--lambda", "0,1"],
        "normal_i.json",
    ),
    (&["--seed", "9", "gen", "random-grid", "--n", "3", "--d", "2"], "grid.json"),
];
