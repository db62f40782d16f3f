use std::process::{Command, Output};

use serde_json::Value;

fn tricover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let o = tricover(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn minpoly_prints_text_and_coefficients() {
    let o = tricover(&["minpoly", "-q", "5"]);
    assert_eq!(stdout(&o), "x^2 - x - 1\n[-1,-1,1]\n");
    let o = tricover(&["minpoly", "-q", "3"]);
    assert_eq!(stdout(&o), "x - 1\n[-1,1]\n");
}

#[test]
fn ideals_listing() {
    let v = json_ok(&["ideals", "-q", "9", "-p", "3"]);
    assert_eq!(
        v,
        serde_json::json!([{"index": 0, "p": 3, "g_coeffs": [2, 1], "e": 3, "f": 1}])
    );
    let v = json_ok(&["ideals", "-q", "5", "-p", "11"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn classify_examples() {
    let v = json_ok(&["classify", "-q", "5", "-p", "2"]);
    assert_eq!(v[0]["galois"]["label"], "D_10");
    assert_eq!(v[0]["index_mu_bar"], 10);

    let v = json_ok(&["classify", "-q", "5", "-p", "3", "--verify"]);
    assert_eq!(v[0]["galois"]["label"], "PSL2(3^2)");
    assert_eq!(v[0]["index_mu_bar"], 360);
    assert_eq!(v[0]["oracle_checked"], true);

    let v = json_ok(&["classify", "-q", "9", "-p", "3"]);
    assert_eq!(v[0]["degenerate"], true);

    let v = json_ok(&["classify", "-q", "5", "-p", "11", "--ideal", "1"]);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["ideal"]["index"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(
        tricover(&["classify", "-q", "4", "-p", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tricover(&["classify", "-q", "5", "-p", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tricover(&["classify", "-q", "5", "-p", "3", "--ideal", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tricover(&["genus", "-q", "5", "-p", "5", "--level", "full"])
            .status
            .code(),
        Some(2)
    );
    let o = tricover(&["classify", "-q", "5", "-p", "3", "--verify", "--cap", "50"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap exceeded"));
}

#[test]
fn genus_report_carries_ramification() {
    let v = json_ok(&["genus", "-q", "5", "-p", "3"]);
    let r = &v[0];
    assert_eq!(r["genus_full"], 25);
    assert_eq!(r["genus_borel"], 1);
    let bases: Vec<_> = r["ramification"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["base"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(bases, ["cusp_one", "cusp_infinity", "elliptic_z0"]);
    assert_eq!(
        r["ramification"][2]["fiber"][0],
        serde_json::json!({"count": 72, "e": 5})
    );

    let v = json_ok(&["genus", "-q", "5", "-p", "2", "--level", "full"]);
    assert_eq!(v[0]["genus_full"], 0);
    assert!(v[0]["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n == "p2-extrapolated"));
}

#[test]
fn table_golden_q5() {
    let o = tricover(&["table", "--q", "5", "--p", "2,3,11"]);
    let expected = "\
q,p,ideal_index,e,f,residue_order,galois_label,index_mu_bar,genus_full,genus_borel,degenerate,oracle_checked,note
5,2,0,1,2,4,D_10,10,0,,false,false,p2-extrapolated; genus_borel: p = 2 must be an odd prime
5,3,0,1,2,9,PSL2(3^2),360,25,1,false,false,
5,11,0,1,1,11,PSL2(11),660,205,3,false,false,
5,11,1,1,1,11,PSL2(11),660,205,3,false,false,
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn table_excluded_pair_has_blanks_and_note() {
    let o = tricover(&["table", "--q", "5", "--p", "5"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[8], "");
    assert_eq!(row[9], "");
    assert!(row[12].contains("p = q = 5 is excluded"));
}

#[test]
fn table_empty_p_list_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = tricover(&[
        "table",
        "--q",
        "5",
        "--p",
        "",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "q,p,ideal_index,e,f,residue_order,galois_label,index_mu_bar,genus_full,genus_borel,degenerate,oracle_checked,note\n"
    );
}

#[test]
fn table_unwritable_path_fails() {
    let o = tricover(&[
        "table",
        "--q",
        "5",
        "--p",
        "3",
        "--out",
        "/nonexistent/dir/t.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn csv_and_json_tables_agree() {
    let args = ["table", "--q", "3,5,7,9", "--p", "2,3,5,7,11"];
    let csv_text = stdout(&tricover(&args));
    let json: Value =
        serde_json::from_slice(&tricover(&[&args[..], &["--format", "json"]].concat()).stdout)
            .unwrap();
    let mut lines = csv_text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows = json.as_array().unwrap();
    let csv_rows: Vec<&str> = lines.collect();
    assert_eq!(csv_rows.len(), rows.len());
    for (line, obj) in csv_rows.iter().zip(rows) {
        let keys: Vec<&String> = obj.as_object().unwrap().keys().collect();
        assert_eq!(keys, header);
        // notes may contain commas only if quoted; none of these do
        for (cell, key) in line.split(',').zip(&header) {
            let rendered = match &obj[*key] {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(cell, rendered, "column {key} in {line}");
        }
    }
}

#[test]
fn verify_examples() {
    let o = tricover(&["verify", "--max-q", "3", "--max-p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("classification vs closure: ok (1 checked, 0 skipped)"));

    let o = tricover(&["verify", "--cap", "10"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cap exceeded"));

    let o = tricover(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.contains(": ok (")).count(),
        6
    );
}
