use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn ppcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppcat")).args(args).env_remove("PPCAT_SEED").output().unwrap()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = ppcat(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn with_file(cmd: &str, file: &str, rest: &[&str]) -> (i32, Value) {
    let f = fixture(file);
    let mut args = vec![cmd, "--file", f.as_str()];
    args.extend_from_slice(rest);
    run(&args)
}

#[test]
fn eval_phi_on_simple() {
    let (code, v) = with_file("eval", "a2.ppc", &["--formula", "phi", "--module", "S1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "ppcat_report_v1");
    assert_eq!(v["result"]["dim"], "1");
}

#[test]
fn false_implication_has_free_realization_witness() {
    let (code, v) = with_file("implies", "a2.ppc", &["--from", "phi", "--to", "psi", "--mode", "exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["holds"], false);
    assert_eq!(v["result"]["mode"], "exact");
    assert_eq!(v["result"]["witness"]["isomorphic_to"], serde_json::json!(["S1"]));
}

#[test]
fn kt_round_trip_is_isomorphic() {
    let (code, v) = with_file("roundtrip", "a1tilde.ppc", &["--forward", "I", "--back", "J", "--modules", "jordan2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["isomorphic"], true);
}

#[test]
fn default_mode_is_stated_for_polynomial_ring() {
    let (code, v) = with_file("implies", "a1tilde.ppc", &["--from", "ra", "--to", "rb"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["mode"], "testset");
    assert_eq!(v["result"]["relative_to_test_set"], true);
}

#[test]
fn exit_codes_separate_verdicts_from_errors() {
    // precondition: exact reasoning over K[T]
    let (code, v) = with_file("implies", "a1tilde.ppc", &["--from", "ra", "--to", "rb", "--mode", "exact"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "NotAdmissible");
    assert_eq!(v["error"]["precondition"], true);

    // precondition: the map is not injective
    let (code, v) = with_file("purity", "a2.ppc", &["--source", "P1", "--target", "S1", "--right", "rind"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "NotMono");

    // input errors
    let (code, v) = with_file("eval", "a2.ppc", &["--formula", "nosuch", "--module", "S1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["precondition"], false);
    let (code, _) = run(&["eval", "--file", "/nonexistent.ppc", "--formula", "phi", "--module", "S1"]);
    assert_eq!(code, 2);
    let broken: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "broken", "12_wrong_sort.ppc"].iter().collect();
    let (code, v) = run(&["eval", "--file", broken.to_str().unwrap(), "--formula", "f", "--module", "M"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "SortError");
}

#[test]
fn every_subcommand_gives_a_verdict_on_the_corpus() {
    let cases: &[(&str, &str, &[&str])] = &[
        ("eval", "a2.ppc", &["--formula", "div", "--modules", "ind"]),
        ("pair-eval", "a2.ppc", &["--pair", "T3", "--modules", "ind"]),
        ("implies", "a2.ppc", &["--from", "zero1", "--to", "phi"]),
        ("dual", "a2.ppc", &["--formula", "div"]),
        ("freereal", "a2.ppc", &["--formula", "div"]),
        ("check-map", "a1tilde.ppc", &["--source", "H", "--target", "H", "--rho", "ra"]),
        ("member", "a2.ppc", &["--pairs", "Q1,T3", "--modules", "ind"]),
        ("interp-validate", "d4tilde.ppc", &["--interp", "I"]),
        ("interp-apply", "morita.ppc", &["--interp", "F", "--modules", "spaces"]),
        ("roundtrip", "d4tilde.ppc", &["--forward", "I", "--back", "J", "--modules", "kt"]),
        ("repembed", "forget.ppc", &["--interp", "U", "--modules", "pair_of_twos"]),
        ("tensor", "a3.ppc", &["--right", "L", "--left", "chain"]),
        ("purity", "a2.ppc", &["--source", "P2", "--target", "P1", "--right", "rind"]),
        ("funcat-auslander", "a2.ppc", &["--auslander", "S", "--presented", "GammaR"]),
        ("funcat-eval", "a2.ppc", &["--smodule", "T2", "--modules", "ind", "--pair", "T2"]),
        ("funcat-quotient", "a2.ppc", &["--auslander", "S", "--generator", "P1"]),
    ];
    for (cmd, file, rest) in cases {
        let (code, v) = with_file(cmd, file, rest);
        assert_eq!(code, 0, "{cmd}: {v}");
        assert_eq!(v["operation"], *cmd);
        assert!(v["result"].is_object(), "{cmd}");
    }
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let f = fixture("d4tilde.ppc");
    let base = ["roundtrip", "--file", f.as_str(), "--forward", "I", "--back", "J", "--modules", "kt"];
    let a = ppcat(&base);
    let mut more = base.to_vec();
    more.extend_from_slice(&["--jobs", "4"]);
    let b = ppcat(&more);
    let c = ppcat(&base);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn seed_comes_from_environment_and_out_writes_file() {
    let f = fixture("a2.ppc");
    let dir = std::env::temp_dir().join(format!("ppcat-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_ppcat"))
        .args(["eval", "--file", f.as_str(), "--formula", "phi", "--module", "S1", "--out", out.to_str().unwrap()])
        .env("PPCAT_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["seed"], "17");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn printed_dual_parses_back() {
    let (_, v) = with_file("dual", "a2.ppc", &["--formula", "div"]);
    let text = v["result"]["text"].as_str().unwrap();
    let source = std::fs::read_to_string(fixture("a2.ppc")).unwrap() + "\n" + text;
    let ws = ppcat::textio::Workspace::load(&source).unwrap();
    let d = ws.formula("div_dual").unwrap();
    assert_eq!(d.algebra().name(), "A2^op");
    assert_eq!(d, &ppcat::ppcore::dual(ws.formula("div").unwrap()));
}
