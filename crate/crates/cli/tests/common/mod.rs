//! Fixture table shared by the CLI tests and the acceptance harness.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_rank2sep")
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// One invocation: `rank2sep <args> fixtures/<fixture>`, its documented exit
/// code, and whether its report is pinned in `tests/golden/<name>.json`.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub fixture: &'static str,
    pub exit: i32,
    pub golden: bool,
}

pub const CASES: &[Case] = &[
    Case {
        name: "concurrence_ghz_2x3",
        args: &["concurrence"],
        fixture: "ghz_2x3.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "concurrence_ghz_3x3",
        args: &["concurrence"],
        fixture: "ghz_3x3.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "concurrence_product_2x3",
        args: &["concurrence"],
        fixture: "product_2x3.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "decide_product_mixture_2x3_seed7",
        args: &["decide", "--verify"],
        fixture: "product_mixture_2x3_seed7.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "decide_product_mixture_3x3_seed8",
        args: &["decide", "--verify"],
        fixture: "product_mixture_3x3_seed8.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "decide_real_product_mixture_2x3_seed13",
        args: &["decide", "--real-branch", "--verify"],
        fixture: "product_mixture_2x3_seed13_real.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "decide_ghz_orthogonal_2x3_p03",
        args: &["decide", "--verify"],
        fixture: "ghz_orthogonal_2x3_p03_seed11.json",
        exit: 1,
        golden: true,
    },
    Case {
        name: "decide_real_ghz_orthogonal_3x3_p03",
        args: &["decide", "--real-branch"],
        fixture: "ghz_orthogonal_3x3_p03_seed12_real.json",
        exit: 1,
        golden: true,
    },
    Case {
        name: "verify_ghz_orthogonal_2x3",
        args: &["verify"],
        fixture: "ghz_orthogonal_2x3_p03_seed11.json",
        exit: 1,
        golden: true,
    },
    Case {
        name: "verify_product_mixture_2x3",
        args: &["verify"],
        fixture: "product_mixture_2x3_seed7.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "verify_product_2x3",
        args: &["verify"],
        fixture: "product_2x3.json",
        exit: 0,
        golden: true,
    },
    Case {
        name: "concurrence_malformed_length",
        args: &["concurrence"],
        fixture: "malformed_length.json",
        exit: 2,
        golden: false,
    },
    Case {
        name: "concurrence_unequal_dims",
        args: &["concurrence"],
        fixture: "unequal_dims.json",
        exit: 2,
        golden: false,
    },
    Case {
        name: "concurrence_of_rank2_input",
        args: &["concurrence"],
        fixture: "ghz_orthogonal_2x3_p03_seed11.json",
        exit: 2,
        golden: false,
    },
    Case {
        name: "decide_of_pure_input",
        args: &["decide"],
        fixture: "ghz_2x3.json",
        exit: 2,
        golden: false,
    },
    Case {
        name: "decide_missing_file",
        args: &["decide"],
        fixture: "does_not_exist.json",
        exit: 2,
        golden: false,
    },
    Case {
        name: "concurrence_unnormalized",
        args: &["concurrence"],
        fixture: "unnormalized.json",
        exit: 3,
        golden: false,
    },
    Case {
        name: "decide_real_on_complex_input",
        args: &["decide", "--real-branch"],
        fixture: "ghz_orthogonal_2x3_p03_seed11.json",
        exit: 3,
        golden: false,
    },
    Case {
        name: "decide_rank3_density",
        args: &["decide"],
        fixture: "rank3_density.json",
        exit: 4,
        golden: false,
    },
];

/// Fixtures produced by `generate`, with the arguments that reproduce them.
pub const GENERATED: &[(&str, &[&str])] = &[
    (
        "product_mixture_2x3_seed7.json",
        &[
            "--kind",
            "product-mixture",
            "--parties",
            "3",
            "--local-dim",
            "2",
            "--seed",
            "7",
        ],
    ),
    (
        "product_mixture_3x3_seed8.json",
        &[
            "--kind",
            "product-mixture",
            "--parties",
            "3",
            "--local-dim",
            "3",
            "--seed",
            "8",
        ],
    ),
    (
        "product_mixture_2x3_seed13_real.json",
        &[
            "--kind",
            "product-mixture",
            "--parties",
            "3",
            "--local-dim",
            "2",
            "--seed",
            "13",
            "--real",
        ],
    ),
    (
        "ghz_orthogonal_2x3_p03_seed11.json",
        &[
            "--kind",
            "ghz-orthogonal",
            "--parties",
            "3",
            "--local-dim",
            "2",
            "--seed",
            "11",
            "--p",
            "0.3",
        ],
    ),
    (
        "ghz_orthogonal_3x3_p03_seed12_real.json",
        &[
            "--kind",
            "ghz-orthogonal",
            "--parties",
            "3",
            "--local-dim",
            "3",
            "--seed",
            "12",
            "--p",
            "0.3",
            "--real",
        ],
    ),
];

pub struct Run {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Vec<u8>>,
}

/// Run a case with `--json-out` into `scratch`.
pub fn run_case(case: &Case, scratch: &Path) -> Run {
    let out = scratch.join(format!("{}.json", case.name));
    let output = Command::new(bin())
        .args(case.args)
        .arg(fixtures().join(case.fixture))
        .arg("--json-out")
        .arg(&out)
        .output()
        .expect("binary runs");
    Run {
        exit: output.status.code().expect("exited normally"),
        stdout: String::from_utf8_lossy(&output.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
        report: std::fs::read(&out).ok(),
    }
}

/// Run `generate` with `args`, writing to `out`.
pub fn generate(args: &[&str], out: &Path) -> i32 {
    Command::new(bin())
        .arg("generate")
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("exited normally")
}

/// Mismatches between the case table and the binary, one message per problem.
pub fn check_cases(scratch: &Path) -> Vec<String> {
    let mut problems = Vec::new();
    for case in CASES {
        let run = run_case(case, scratch);
        if run.exit != case.exit {
            problems.push(format!(
                "{}: exit {} (expected {}): {}",
                case.name,
                run.exit,
                case.exit,
                run.stderr.trim()
            ));
        }
        if case.golden {
            let golden = golden_dir().join(format!("{}.json", case.name));
            match (std::fs::read(&golden), &run.report) {
                (Ok(want), Some(got)) if &want == got => {}
                (Ok(_), Some(_)) => problems.push(format!(
                    "{}: report differs from {}",
                    case.name,
                    golden.display()
                )),
                (Err(e), _) => problems.push(format!(
                    "{}: cannot read {}: {e}",
                    case.name,
                    golden.display()
                )),
                (_, None) => problems.push(format!("{}: no report written", case.name)),
            }
        } else if case.exit >= 2 && run.report.is_some() {
            problems.push(format!("{}: error exit wrote a report", case.name));
        }
    }
    for (fixture, args) in GENERATED {
        let out = scratch.join(format!("regen_{fixture}"));
        let code = generate(args, &out);
        let same = std::fs::read(&out).ok() == std::fs::read(fixtures().join(fixture)).ok();
        if code != 0 || !same {
            problems.push(format!(
                "{fixture}: regeneration exit {code}, identical: {same}"
            ));
        }
    }
    problems
}
