use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn detchern(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detchern"))
        .args(args)
        .env("DETCHERN_CACHE_DIR", cache)
        .output()
        .unwrap()
}

const ARGS: [&str; 9] = ["cm", "-m", "4", "-n", "4", "-k", "2", "--format", "json"];

#[test]
fn cold_and_warm_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cold = detchern(&ARGS, dir.path());
    assert!(cold.status.success());
    assert!(dir.path().join("lr.json").exists());
    assert!(dir.path().join("cm.json").exists());
    let warm = detchern(&ARGS, dir.path());
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert!(
        warm.stderr.is_empty(),
        "{}",
        String::from_utf8_lossy(&warm.stderr)
    );
}

#[test]
fn flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let mut args = ARGS.to_vec();
    let flag = flag_dir.path().to_str().unwrap();
    args.extend(["--cache-dir", flag]);
    assert!(detchern(&args, env_dir.path()).status.success());
    assert!(flag_dir.path().join("cm.json").exists());
    assert!(!env_dir.path().join("cm.json").exists());
}

#[test]
fn other_format_tag_is_ignored_and_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cold = detchern(&ARGS, dir.path());
    let cm = dir.path().join("cm.json");
    let text = fs::read_to_string(&cm).unwrap();
    // a bogus class under a future format must not be read
    let tampered = text
        .replace("detchern-cache/1", "detchern-cache/2")
        .replace("\"48\"", "\"49\"");
    fs::write(&cm, &tampered).unwrap();
    let warm = detchern(&ARGS, dir.path());
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("ignoring"));
    assert!(fs::read_to_string(&cm)
        .unwrap()
        .contains("detchern-cache/1"));
}

#[test]
fn corrupt_cache_warns_and_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let cold = detchern(&ARGS, dir.path());
    fs::write(dir.path().join("lr.json"), "{ not json").unwrap();
    let cm = dir.path().join("cm.json");
    let text = fs::read_to_string(&cm).unwrap();
    fs::write(&cm, text.replace("\"48\"", "\"49\"")).unwrap();
    let warm = detchern(&ARGS, dir.path());
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    let stderr = String::from_utf8_lossy(&warm.stderr);
    assert!(stderr.contains("LR cache unusable"), "{stderr}");
    assert!(stderr.contains("checksum mismatch"), "{stderr}");
}

#[test]
fn no_cache_dir_means_no_files() {
    let out = Command::new(env!("CARGO_BIN_EXE_detchern"))
        .args(ARGS)
        .env_remove("DETCHERN_CACHE_DIR")
        .current_dir(tempfile::tempdir().unwrap().path())
        .output()
        .unwrap();
    assert!(out.status.success());
}
