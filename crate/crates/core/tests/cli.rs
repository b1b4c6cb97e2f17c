use std::process::Command;

fn quadalg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quadalg")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let args = ["verify", "osc8d", "--p", "2", "--trials", "5", "--seed", "7", "--format", "json"];
    let (c1, a) = quadalg(&args);
    let (c2, b) = quadalg(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("\"schema\": \"quadalg/1\""));
}

#[test]
fn exit_codes() {
    assert_eq!(quadalg(&["spectrum", "kepler5d", "--p-max", "1"]).0, 0);
    assert_eq!(quadalg(&["spectrum", "hydrogen"]).0, 2);
    assert_eq!(quadalg(&["spectrum", "osc8d", "--omega", "-1"]).0, 2);
    assert_eq!(quadalg(&["dualize", "--to", "oscillator", "--epsilon", "0.5"]).0, 2);
    assert_eq!(quadalg(&["hurwitz-check", "--u", "1,2,3"]).0, 2);
}

#[test]
fn empty_range_gives_empty_table() {
    let (code, out) = quadalg(&["spectrum", "kepler5d", "--p-min", "4", "--p-max", "1", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"spectrum\": []"));
}

#[test]
fn literal_x0_is_a_finding() {
    let (code, out) = quadalg(&["crosscheck", "euler", "--samples", "100", "--literal-x0", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let lit = v["findings"].as_array().unwrap().iter().find(|f| f["name"] == "hurwitz/euler-identity/literal-x0").unwrap();
    assert_eq!(lit["status"], "finding");
    assert!(lit["residual"].as_f64().unwrap() > 0.1);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("quadalg-cli-{}.json", std::process::id()));
    let (code, out) = quadalg(&["spectrum", "osc8d", "--p-max", "0", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("\"energy\": 4.0"));
}
