use std::process::Command;

fn flagcone(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_flagcone")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn ample_reports_match_worked_examples() {
    let (code, out, _) = flagcone(&["ample", "--embedding", "principal:A2", "--lambda", "1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("ample: true, codim(X^us) = 1"), "{out}");
    let (_, out, _) = flagcone(&["ample", "--embedding", "diagonal:A1:2", "--lambda", "2,1"]);
    assert!(out.contains("ample: false"), "{out}");
    let (_, out, _) = flagcone(&["ample", "--embedding", "diagonal:A1:4", "--lambda", "1,1,1,1"]);
    assert!(out.contains("ample: true, codim(X^us) = 2"), "{out}");
}

#[test]
fn json_output_parses_and_is_stable() {
    let args = ["cones", "--embedding", "diagonal:A1:4", "--k", "2", "--seed", "3", "--format", "json"];
    let (code, a, _) = flagcone(&args);
    let (_, b, _) = flagcone(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).expect("valid JSON");
    assert_eq!(v["c2"]["dim"], 1);
    assert_eq!(v["movable_chambers"], false);
    assert_eq!(v["seed"], 3);
}

#[test]
fn embedding_files_are_read() {
    let path = std::env::temp_dir().join(format!("flagcone-embedding-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"kind":"diagonal","factor":{"series":"A","rank":1},"copies":3}"#,
    )
    .unwrap();
    let (code, out, err) = flagcone(&["oracle", "--embedding", path.to_str().unwrap(), "--lambda", "2,2,2"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("dim V_lambda^Ghat = 1"), "{out}");
}

#[test]
fn exit_codes() {
    // validation: boundary weight, bad schema, too few trials, missing flag
    assert_eq!(flagcone(&["ample", "--embedding", "diagonal:A1:2", "--lambda", "1,0"]).0, 2);
    assert_eq!(flagcone(&["ample", "--embedding", "/nonexistent.json", "--lambda", "1,1"]).0, 2);
    assert_eq!(flagcone(&["fit-pairs", "--embedding", "diagonal:A1:2", "--trials", "2"]).0, 2);
    assert_eq!(flagcone(&["strata", "--embedding", "diagonal:A1:2"]).0, 2);
    assert_eq!(flagcone(&["ample", "--embedding", "diagonal:A1:2", "--lambda", "1,1,1"]).0, 2);
    // caps
    assert_eq!(flagcone(&["strata", "--embedding", "diagonal:A3:3", "--lambda", "1,1,1,1,1,1,1,1,1", "--cap-weyl", "100"]).0, 3);
    assert_eq!(flagcone(&["fit-pairs", "--embedding", "diagonal:A2:2", "--cap-dim", "10"]).0, 3);
}

#[test]
fn chamber_commands() {
    let (code, out, _) = flagcone(&["chambers", "--embedding", "diagonal:A1:3"]);
    assert_eq!(code, 0);
    assert!(out.contains("4 chambers") && out.contains("no-jump audit: pass"), "{out}");
    let (code, out, _) = flagcone(&["t-chambers", "--embedding", "principal:A2"]);
    assert_eq!(code, 0);
    assert!(out.contains("1 chambers"), "{out}");
}
