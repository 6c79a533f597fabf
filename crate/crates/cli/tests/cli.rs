use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, Value) {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_stringdual")).args(args).envs(env.iter().copied()).output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("stringdual-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

fn all_pass(v: &Value) -> bool {
    v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == Value::Bool(true))
}

#[test]
fn documented_examples() {
    let (c, v) = run(&["hurwitz", "--genus", "0", "--partition", "2", "--method", "both"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["H"], "1/2");
    assert_eq!(v["result"]["agree"], true);

    let (c, v) = run(&["witten", "--correlator", "1:1"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["value"], "1/24");

    let (c, v) = run(&["mv", "--check", "pde", "--degree", "3", "--order", "9"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["residual_zero"], true);
}

#[test]
fn golden_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: &[(&str, &[&str])] = &[
        ("hurwitz_1_21.json", &["hurwitz", "--genus", "1", "--partition", "2,1", "--method", "both", "--hodge"]),
        ("witten_2_41.json", &["witten", "--correlator", "2:4,1"]),
        ("w_21_1.json", &["w", "--mu", "2,1", "--nu", "1"]),
        ("local_p2.json", &["vertex", "local-p2", "--max-degree", "3", "--max-genus", "2", "--gv"]),
        ("quintic.json", &["mirror", "quintic", "--max-degree", "5"]),
        ("mv_hodge_1_21.json", &["mv", "hodge", "--genus", "1", "--partition", "2,1"]),
    ];
    for (file, args) in cases {
        let want: Value = serde_json::from_str(&std::fs::read_to_string(dir.join(file)).unwrap()).unwrap();
        let (c, got) = run(args);
        assert_eq!(c, 0, "{file}");
        assert_eq!(got, want, "{file}");
    }
}

#[test]
fn every_subcommand_reachable() {
    let spec = tmp("quintic.json", stringdual::mirror::toric::QUINTIC_SPEC);
    let spec = spec.to_str().unwrap();
    let cmds: &[&[&str]] = &[
        &["hurwitz", "--genus", "1", "--partition", "3", "--method", "cutjoin"],
        &["hurwitz", "--partition", "1,1", "--method", "burnside"],
        &["mv", "--check", "initial", "--degree", "3", "--order", "6"],
        &["mv", "--check", "elsv-limit", "--degree", "3", "--order", "5"],
        &["mv", "--check", "convolution", "--degree", "2", "--order", "4"],
        &["mv", "--check", "lambda-g", "--degree", "3", "--order", "4"],
        &["mv", "--check", "swap", "--degree", "3", "--order", "4"],
        &["mv", "--check", "pde", "--degree", "3", "--order", "4", "--families", "2"],
        &["w", "--mu", "2"],
        &["witten", "--virasoro", "-1", "--order", "3"],
        &["witten", "--virasoro", "2", "--order", "3"],
        &["mirror", "toric", "--spec", spec, "--max-degree", "2"],
        &["mirror", "grassmannian", "-k", "2", "-n", "3", "--max-degree", "1", "--verify"],
        &["mirror", "grassmannian", "-k", "1", "-n", "2", "--max-degree", "2", "--verify"],
    ];
    for args in cmds {
        let (c, v) = run(args);
        assert_eq!(c, 0, "{args:?}");
        assert!(all_pass(&v), "{args:?}: {v}");
        for key in ["query", "params", "result", "checks"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["hurwitz", "--partition", "2,x"]).0, 1);
    assert_eq!(run(&["nope"]).0, 1);
    assert_eq!(run(&["mv", "--degree", "3"]).0, 1);
    assert_eq!(run(&["mirror", "grassmannian", "-k", "3", "-n", "3"]).0, 1);
    assert_eq!(run(&["witten", "--correlator", "1"]).0, 1);
    assert_eq!(run_env(&["witten", "--correlator", "1:1"], &[("STRINGDUAL_WORKERS", "zero")]).0, 1);
    let cfg = tmp("bad.json", r#"{"profile": "quick", "extra": 1}"#);
    assert_eq!(run(&["verify-all", "--config", cfg.to_str().unwrap()]).0, 1);
    assert_eq!(run(&["verify-all", "--fault", "13"]).0, 1);
}

fn strip_timing(v: &mut Value) {
    for c in v["result"]["criteria"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("seconds");
    }
}

#[test]
fn verify_all_quick_and_fault() {
    let cfg = tmp("empty.json", "{}");
    let (c, mut a) = run_env(&["verify-all", "--config", cfg.to_str().unwrap()], &[("STRINGDUAL_WORKERS", "4")]);
    assert_eq!(c, 0, "{a}");
    assert_eq!(a["params"]["profile"], "quick");
    assert_eq!(a["result"]["summary"]["passed"], 12);
    let (c, mut b) = run(&["verify-all", "--profile", "quick"]);
    assert_eq!(c, 0);
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a["result"], b["result"]);

    let (c, v) = run(&["verify-all", "--fault", "11"]);
    assert_eq!(c, 2);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["name"].as_str().unwrap().contains("Candelas"));
}
