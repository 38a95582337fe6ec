use std::process::Command;

fn mwkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mwkit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = mwkit(&a);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn witt_readout() {
    let (code, v) = json(&["witt", "--field", "Q", "<1,1,-2>"]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["rank"], 3);
    assert_eq!(v["invariants"]["disc"], "-2");
    assert_eq!(v["invariants"]["signature"], 1);
    assert!(v["invariants"]["hasse"].is_object());
}

#[test]
fn normalize_h() {
    let (code, v) = json(&["normalize", "eta*[ -1 ] + 2"]);
    assert_eq!(code, 0);
    assert_eq!(v["class"]["degree"], 0);
    assert_eq!(v["gw"]["rank"], 2);
    let (_, hyp) = json(&["normalize", "<1> + <-1>"]);
    assert_eq!(v["gw"], hyp["gw"]);
}

#[test]
fn stilde_compare_matches() {
    let (code, v) = json(&["stilde", "--p", "5", "--n", "2", "--compare"]);
    assert_eq!(code, 0);
    assert_eq!(v["invariant_factors_agree"], true);
    assert_eq!(v["presented"]["invariant_factors"]["describe"], "Z^4 + Z/5");
}

#[test]
fn product_both_ways() {
    let (code, v) = json(&["product", "[[3]]", "[[5]]", "--field", "Fp:7"]);
    assert_eq!(code, 0);
    assert_eq!(v["closed_equals_chain"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(mwkit(&["verify", "--suite", "lemma-3.9", "--trials", "20"]).0, 0);
    assert_eq!(mwkit(&["verify", "--suite", "no-such-suite"]).0, 2);
    assert_eq!(mwkit(&["normalize", "--field", "Fp:9", "[2]"]).0, 2);
    assert_eq!(mwkit(&["normalize", "--field", "Fp:7", "[[1,0]]"]).0, 2);
    assert_eq!(mwkit(&["frobnicate"]).0, 2);
    assert_eq!(mwkit(&["stilde", "--p", "17", "--n", "3"]).0, 3);
    // the decomposability congruences fail in the full S~ model
    assert_eq!(mwkit(&["verify", "--suite", "decomposability", "--trials", "30"]).0, 1);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "matsumoto-moore", "--field", "Fp:13", "--trials", "40", "--seed", "9", "--json"];
    assert_eq!(mwkit(&args), mwkit(&args));
    let dir = std::env::temp_dir().join(format!("mwkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (_, stdout) = mwkit(&["verify", "--suite", "identities-5.19", "--trials", "5", "--seed", "1", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
