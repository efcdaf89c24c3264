use weitzenbock_cli::run;

fn weitz(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weitz").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn gens_for_one_triple() {
    let (code, out, _) = weitz(&["gens", "--n", "1"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "f(1) = x1\ng(1,1) = 2*x1*z1 - y1^2\n");
}

#[test]
fn gens_for_three_triples() {
    let (code, out, _) = weitz(&["gens", "--n", "3"], "");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3 + 3 + 1 + 6);
    assert!(out.contains("g(1,2,3) = "));
}

#[test]
fn decompose_determinant() {
    let (code, out, _) = weitz(&["decompose", "--n", "2", "x1*y2 - x2*y1"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "1*f(1,2)\nverification: OK\n");
}

#[test]
fn decompose_from_stdin_as_json() {
    let (code, out, _) = weitz(&["decompose", "--n", "1", "-", "--json"], "3 + 2*x1*z1 - y1^2\n");
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["verified"], true);
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["coeff"], "3/1");
    assert_eq!(terms[0]["factors"].as_array().unwrap().len(), 0);
    assert_eq!(terms[1]["factors"][0]["gen"], "g");
    assert_eq!(terms[1]["factors"][0]["idx"], serde_json::json!([1, 1]));
    assert_eq!(terms[1]["factors"][0]["pow"], 1);
}

#[test]
fn decompose_rejects_non_constant() {
    let (code, out, err) = weitz(&["decompose", "--n", "1", "y1"], "");
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("x1"));
}

#[test]
fn check_reports_image() {
    let (code, out, _) = weitz(&["check", "--n", "1", "y1"], "");
    assert_eq!(code, 1);
    assert_eq!(out, "NOT in kernel; Delta(h) = x1\n");
    let (code, out, _) = weitz(&["check", "--n", "1", "2*x1*z1 - y1^2"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "in kernel\n");
}

#[test]
fn dims_table() {
    let (code, out, _) = weitz(&["dims", "--d", "3"], "");
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows, vec![vec!["1", "1", "1"], vec!["3", "3", "3"], vec!["5", "2", "2"], vec!["7", "1", "1"]]);
}

#[test]
fn dims_json() {
    let (code, out, _) = weitz(&["dims", "--d", "2", "--json"], "");
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        doc,
        serde_json::json!([{"k": 1, "mu": 1, "nu": 1}, {"k": 3, "mu": 1, "nu": 1}, {"k": 5, "mu": 1, "nu": 1}])
    );
}

#[test]
fn paths_with_monomials() {
    let (code, out, _) = weitz(&["paths", "--d", "2", "--monomials"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "XX X1*X2\nXY X1*Y2\nXZ X1*Z2\ntotal: 3\n");
}

#[test]
fn kron_blocks() {
    let (code, out, _) = weitz(&["kron", "--m", "3", "--n", "2"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "{2: 1, 4: 1}\n");
}

#[test]
fn usage_errors() {
    for args in [&[][..], &["gens"], &["gens", "--n", "0"], &["frobnicate"]] {
        let (code, _, err) = weitz(args, "");
        assert_eq!(code, 2, "{args:?}");
        assert!(err.contains("usage: weitz"), "{args:?}");
    }
    let (code, _, err) = weitz(&["decompose", "--n", "1", "x1 +"], "");
    assert_eq!(code, 2);
    assert!(err.contains("position 4"));
    let (code, _, _) = weitz(&["check", "--n", "1", "x2"], "");
    assert_eq!(code, 2);
}

#[test]
fn selftest_small() {
    let (code, out, _) = weitz(&["selftest", "--max-d", "3", "--max-n", "2"], "");
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
}
