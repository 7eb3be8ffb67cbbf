//! Golden CLI cases shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "analyze_456",
        args: &["analyze", "--generators", "4,5,6"],
        code: 0,
    },
    Case {
        name: "analyze_4679",
        args: &["analyze", "--generators", "4,6,7,9"],
        code: 0,
    },
    Case {
        name: "analyze_345_text",
        args: &["analyze", "--generators", "3,4,5", "--format", "text"],
        code: 0,
    },
    Case {
        name: "semimodules_345",
        args: &["semimodules", "--generators", "3,4,5"],
        code: 0,
    },
    Case {
        name: "semimodules_456_codim4",
        args: &["semimodules", "--generators", "4,5,6", "--codim", "4"],
        code: 0,
    },
    Case {
        name: "stratify_4679",
        args: &["stratify", "--generators", "4,6,7,9"],
        code: 0,
    },
    Case {
        name: "limit_456",
        args: &["limit", "--generators", "4,5,6", "--family", "t^2+b"],
        code: 0,
    },
    Case {
        name: "limit_678910",
        args: &[
            "limit",
            "--generators",
            "6,7,8,9,10",
            "--family",
            "t^2+b*t+b^2",
        ],
        code: 0,
    },
    Case {
        name: "closure_456",
        args: &[
            "closure",
            "--generators",
            "4,5,6",
            "--module",
            "2,4",
            "--max-bdeg",
            "1",
            "--max-support",
            "2",
            "--coefficients",
            "1",
        ],
        code: 0,
    },
    Case {
        name: "closure_5678",
        args: &[
            "closure",
            "--generators",
            "5,6,7,8",
            "--module",
            "2,5",
            "--max-bdeg",
            "3",
            "--max-support",
            "3",
            "--coefficients",
            "1,-1",
        ],
        code: 0,
    },
    Case {
        name: "dag_345_dot",
        args: &["dag", "--generators", "3,4,5", "--format", "dot"],
        code: 0,
    },
    Case {
        name: "dag_4567",
        args: &["dag", "--generators", "4,5,6,7"],
        code: 0,
    },
    Case {
        name: "oracle_456",
        args: &["oracle", "--generators", "4,5,6", "--field", "2"],
        code: 0,
    },
    Case {
        name: "report_example2_456",
        args: &["report-example2", "--generators", "4,5,6"],
        code: 0,
    },
    Case {
        name: "error_not_coprime",
        args: &["analyze", "--generators", "4,6"],
        code: 2,
    },
    Case {
        name: "error_bad_family",
        args: &["limit", "--generators", "4,5,6", "--family", "t^^2"],
        code: 2,
    },
];

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

pub fn run(case: &Case, threads: usize) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_jacstrata"))
        .args(case.args)
        .env("JACSTRATA_THREADS", threads.to_string())
        .output()
        .expect("spawn jacstrata");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Expected bytes: stdout for successful runs, stderr otherwise.
pub fn golden_path(case: &Case) -> PathBuf {
    let ext = if case.code == 0 { "out" } else { "err" };
    golden_dir().join(format!("{}.{ext}", case.name))
}

impl Run {
    pub fn payload(&self, case: &Case) -> &[u8] {
        if case.code == 0 {
            &self.stdout
        } else {
            &self.stderr
        }
    }
}
