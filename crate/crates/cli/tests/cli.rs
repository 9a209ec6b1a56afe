use std::process::{Command, Output};

use mbasym_core::{direct_sum, theorem3_expsmall, Params, PrecisionCtx, Real, SeriesKind};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbasym")).args(args).env_remove("MBASYM_DIGITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no {key} in {out}")).trim()
}

fn bits() -> u32 {
    PrecisionCtx::new(50).unwrap().bits()
}

#[test]
fn thm3_prints_the_exponentially_small_part() {
    let o = run(&["eval", "--a", "8", "--b", "1", "--mu", "4", "--nu", "0", "--gamma", "0", "--method", "thm3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let p = Params::parse("8", "1", "0", "0", "4", bits()).unwrap();
    let r = theorem3_expsmall(&p, 2).unwrap();
    assert_eq!(field(&out, "series:"), r.value.to_sci_string(20));
    assert!(field(&out, "truncation:").starts_with("k = 2"));
}

#[test]
fn direct_matches_in_process_sum() {
    let o = run(&[
        "eval", "--a", "2", "--b", "0.5", "--mu", "3", "--nu", "1/3", "--gamma", "0.5", "--method", "direct", "--tol",
        "1e-25",
    ]);
    assert!(o.status.success());
    let p = Params::parse("2", "0.5", "0.5", "1/3", "3", bits()).unwrap();
    let d = direct_sum(&p, SeriesKind::JSeries, &Real::parse("1e-25", bits()).unwrap()).unwrap();
    assert_eq!(field(&stdout(&o), "value:"), d.value.to_sci_string(20));
}

#[test]
fn exit_codes() {
    let o = run(&["eval", "--a", "8", "--mu", "4", "--nu", "0", "--gamma", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    let o = run(&["eval", "--a", "2", "--b", "1", "--mu", "1", "--nu", "0", "--gamma", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2mu - gamma > 1/2 violated"));

    let o = run(&["eval", "--a", "2", "--b", "1", "--mu", "3", "--nu", "0", "--gamma", "-1", "--method", "thm1"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["eval", "--a", "2", "--b", "1", "--mu", "3", "--nu", "1", "--gamma", "0", "--kind", "y"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["table", "--which", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precision_sources() {
    let base = ["eval", "--a", "4", "--b", "1", "--mu", "3", "--nu", "1/3", "--gamma", "1/2"];
    let mut args = base.to_vec();
    args.extend(["--digits", "10"]);
    assert_eq!(run(&args).status.code(), Some(2));

    let o = Command::new(env!("CARGO_BIN_EXE_mbasym")).args(base).env("MBASYM_DIGITS", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("mbasym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("low.conf");
    std::fs::write(&cfg, "digits = 10\n").unwrap();
    let mut args = base.to_vec();
    args.extend(["--config", cfg.to_str().unwrap()]);
    assert_eq!(run(&args).status.code(), Some(2));
    // Flags win over the file.
    args.extend(["--digits", "30"]);
    assert!(run(&args).status.success());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_three_is_deterministic() {
    let a = run(&["table", "--which", "3", "--format", "md"]);
    let b = run(&["table", "--which", "3", "--format", "md"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("| table |"));
    assert!(out.contains("9.729(-02)"));
    assert_eq!(out.lines().count(), 2 + 9);
}

#[test]
fn residue_suite_passes() {
    let o = run(&["verify", "--suite", "residues"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}
