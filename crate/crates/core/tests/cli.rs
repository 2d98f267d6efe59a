use strange_duality::catalog::Catalog;
use strange_duality::cli::run;
use strange_duality::cyclotomic::CyclotomicProduct;
use strange_duality::duality::VerificationReport;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("strange-duality").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn dual_e13() {
    let (code, out, _) = invoke(&["dual", "E13"]);
    assert_eq!(code, 0);
    assert!(out.contains("[[1, 2, 3], [1, 3, 4], [2, 5, 8]]"), "{out}");
    assert!(out.contains("Z11"));
    assert!(out.contains("(6,8,15;30)"));
}

#[test]
fn monodromy_i10() {
    let (code, out, _) = invoke(&["monodromy", "I1,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("(λ−1)^-1 (λ^2−1)^-2 (λ^6−1)^3"), "{out}");
}

#[test]
fn saito_e12_is_self_dual() {
    let (code, out, _) = invoke(&["saito", "E12"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "SELF-DUAL"), "{out}");
    let (code, out, _) = invoke(&["saito", "J3,0"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "MATCH"));
}

#[test]
fn saito_class_e_is_a_computation_error() {
    let (code, _, err) = invoke(&["saito", "I1,0"]);
    assert_eq!(code, 3);
    assert!(err.contains("ClassE"), "{err}");
}

#[test]
fn variant_defaults_with_notice() {
    let (code, _, err) = invoke(&["show", "W1,0"]);
    assert_eq!(code, 0);
    assert!(err.contains("W1,0/1"), "{err}");
    let (_, out2, err2) = invoke(&["show", "W1,0/2"]);
    assert!(err2.is_empty());
    assert!(out2.contains("x^3y^2"), "{out2}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(invoke(&["show", "E99"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["list", "--class", "f"]).0, 2);
    assert_eq!(invoke(&["monodromy"]).0, 2);
    assert_eq!(invoke(&["monodromy", "--poly", "x+y+z"]).0, 2);
    assert_eq!(invoke(&["monodromy", "E12", "--generators", "c"]).0, 2);
}

#[test]
fn computation_errors_exit_three() {
    let (code, _, err) = invoke(&["monodromy", "--poly", "x+x^2", "--generators", "std"]);
    assert_eq!(code, 3);
    assert!(err.contains("NotHomogeneous"));
    let (code, _, err) = invoke(&["monodromy", "--poly", "x^3+x^-1y^3+z^2", "--generators", "std"]);
    assert_eq!(code, 3);
    assert!(err.contains("OutsideCone"));
    let (code, _, err) = invoke(&["monodromy", "--poly", "x^+y", "--generators", "std"]);
    assert_eq!(code, 3);
    assert!(err.contains("SyntaxError"));
}

#[test]
fn custom_polynomial_monodromy() {
    let (code, out, _) = invoke(&["monodromy", "--poly", "x^3+x^-1y^3+z^2", "--generators", "c", "--json"]);
    assert_eq!(code, 0);
    let p: CyclotomicProduct = serde_json::from_str(&out).unwrap();
    assert_eq!(CyclotomicProduct::factor(2, 1).multiply(&p).degree(), 9);
}

#[test]
fn monodromy_json_round_trips() {
    let (_, out, _) = invoke(&["monodromy", "E12", "--json"]);
    let p: CyclotomicProduct = serde_json::from_str(&out).unwrap();
    assert_eq!(p.level(), Some(42));
    assert_eq!(p.degree(), 12);
}

#[test]
fn list_json_is_a_loadable_catalog() {
    let (code, out, _) = invoke(&["list", "--json"]);
    assert_eq!(code, 0);
    let c = Catalog::from_json(&out).unwrap();
    assert_eq!(c.entries(), Catalog::embedded().entries());
    let (_, out, _) = invoke(&["list", "--class", "d"]);
    assert_eq!(out.lines().count(), 1 + 6);
}

#[test]
fn verify_is_deterministic_and_passes() {
    let (code, a, _) = invoke(&["verify", "--json"]);
    assert_eq!(code, 0);
    let (_, b, _) = invoke(&["verify", "--json"]);
    assert_eq!(a, b);
    let reports: Vec<VerificationReport> = serde_json::from_str(&a).unwrap();
    assert_eq!(reports.len(), 37);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = single.install(|| strange_duality::duality::verify_all(Catalog::embedded()));
    assert_eq!(serial, reports);
    let (_, text, _) = invoke(&["verify"]);
    assert!(text.ends_with("37 rows, 0 failed\n"));
}

#[test]
fn catalog_override() {
    let mut rows = Catalog::embedded().to_rows();
    rows.retain(|r| r.name == "E12");
    let path = std::env::temp_dir().join(format!("catalog-override-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
    let (code, out, _) = invoke(&["--catalog", path.to_str().unwrap(), "list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert_eq!(invoke(&["--catalog", path.to_str().unwrap(), "show", "E13"]).0, 2);

    // a broken dataset makes verification fail rather than crash
    rows[0].mu = 11;
    std::fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
    let (code, out, _) = invoke(&["--catalog", path.to_str().unwrap(), "verify"]);
    assert_eq!(code, 1);
    assert!(out.contains("(mu) deg φ = 12, stored 11"), "{out}");
    rows[0].poly = "x^7+y^3+z^3".into();
    std::fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
    let (code, _, err) = invoke(&["--catalog", path.to_str().unwrap(), "list"]);
    assert_eq!(code, 3);
    assert!(err.contains("InvalidRow"), "{err}");
    std::fs::remove_file(&path).unwrap();
}
