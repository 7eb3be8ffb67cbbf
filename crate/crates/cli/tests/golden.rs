//! Byte-exact CLI outputs. Set `UPDATE_GOLDEN=1` to rewrite the files.

mod common;

use common::{golden_path, run, CASES};

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for case in CASES {
        let got = run(case, 1);
        assert_eq!(
            got.code,
            case.code,
            "{}: {}",
            case.name,
            String::from_utf8_lossy(&got.stderr)
        );
        let path = golden_path(case);
        if update {
            std::fs::write(&path, got.payload(case)).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if want != got.payload(case) {
            mismatched.push(case.name);
        }
    }
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn usage_errors() {
    let missing = common::Case {
        name: "",
        args: &["analyze"],
        code: 64,
    };
    assert_eq!(run(&missing, 1).code, 64);
    let dot = common::Case {
        name: "",
        args: &["analyze", "--generators", "3,4,5", "--format", "dot"],
        code: 64,
    };
    assert_eq!(run(&dot, 1).code, 64);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_jacstrata"))
        .args(["analyze", "--generators", "3,4,5"])
        .env("JACSTRATA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn help_and_version_succeed() {
    const FLAGS: [&[&str]; 2] = [&["--help"], &["--version"]];
    for args in FLAGS {
        let r = run(
            &common::Case {
                name: "",
                args,
                code: 0,
            },
            1,
        );
        assert_eq!(r.code, 0);
        assert!(!r.stdout.is_empty());
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("jacstrata-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("analyze.json");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_jacstrata"))
        .args(["analyze", "--generators", "4,5,6", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let want = std::fs::read(golden_path(&CASES[0])).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), want);
    std::fs::remove_dir_all(&dir).unwrap();
}
