#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffcalc"))
        .args(args)
        .current_dir(repo_root())
        .env_remove("OMEGA_MAX_DIM")
        .output()
        .expect("binary runs")
}

/// Name and arguments of every golden JSON case.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("check_qx2", &["check", "fixtures/qx2.json"]),
    ("check_gf3x3", &["check", "fixtures/gf3x3.json"]),
    ("universal_qx2", &["universal", "fixtures/qx2.json"]),
    ("universal_m2q", &["universal", "fixtures/m2q.json"]),
    ("kahler_qx3", &["kahler", "fixtures/qx3.json"]),
    ("kahler_gf2x2", &["kahler", "fixtures/gf2x2.json"]),
    ("prolong_qx3", &["prolong", "fixtures/qx3.json", "--max-degree", "4"]),
    ("prolong_qx2_kahler", &["prolong", "fixtures/qx2.json", "--calculus", "kahler", "--max-degree", "3", "--matrices"]),
    (
        "prolong_qx2_quotient",
        &["prolong", "fixtures/qx2.json", "--calculus", "quotient:fixtures/qx2_rel.json", "--max-degree", "3"],
    ),
    ("cohomology_qz2", &["cohomology", "fixtures/qz2.json", "--max-degree", "4"]),
    ("cohomology_qx2_kahler", &["cohomology", "fixtures/qx2.json", "--flavor", "kahler", "--max-degree", "3"]),
    ("compare_qx2", &["compare", "fixtures/qx2.json", "--max-degree", "3"]),
    ("compare_gf2x2", &["compare", "fixtures/gf2x2.json", "--max-degree", "2"]),
    ("extend_y_to_x2", &["extend", "--map", "fixtures/y_to_x2.json", "--calculus", "fixtures/qx2_quotient.json"]),
    ("restrict_y_to_x2", &["restrict", "--map", "fixtures/y_to_x2.json", "--calculus", "fixtures/qx4_universal.json"]),
    ("hopf_check_qz3", &["hopf-check", "fixtures/qz3.json"]),
    ("bicovariant_qz2", &["bicovariant", "fixtures/qz2.json", "--relations", "fixtures/qx2_rel.json"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

pub fn json_args<'a>(args: &[&'a str]) -> Vec<&'a str> {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    v
}
