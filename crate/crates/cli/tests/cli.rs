use std::process::{Command, Output};

use omegaq_core::bundle::{Coefficient, SeriesBundle, SeriesKind};

fn omegaq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omegaq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn omega_text_has_the_first_coefficients() {
    let o = omegaq(&["compute", "--series", "omega", "--order", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = |basis: &str| text.lines().find(|l| l.split_whitespace().next() == Some(basis)).unwrap().to_string();
    assert!(line("[[]]").ends_with("-1/2"));
    assert!(line("[[][]]").ends_with("1/12"));
    assert!(line("[[[]]]").ends_with("1/3"));
}

#[test]
fn omega_zero_is_alternating_linear_trees() {
    let o = omegaq(&["compute", "--series", "omega-0", "--order", "5", "--format", "json"]);
    assert!(o.status.success());
    let b = SeriesBundle::from_json(&stdout(&o)).unwrap();
    assert_eq!(b.kind, SeriesKind::OmegaZero);
    assert_eq!(b.terms.len(), 5);
    for (i, t) in b.terms.iter().enumerate() {
        let n = i + 1;
        assert_eq!(t.basis, "[".repeat(n) + &"]".repeat(n));
        let want = if n % 2 == 1 { "1/1" } else { "-1/1" };
        assert_eq!(serde_json::to_value(&t.coeff).unwrap(), serde_json::json!(want));
    }
}

#[test]
fn carlitz_text() {
    let o = omegaq(&["compute", "--series", "carlitz", "--order", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.trim_start().starts_with("beta_2") && l.ends_with("q/(Phi2*Phi3)")), "{text}");
}

#[test]
fn json_output_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oq.json");
    let o = omegaq(&["compute", "--series", "omega-q", "--order", "4", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let b = SeriesBundle::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(b, SeriesBundle::from_json(&b.to_json()).unwrap());
    assert_eq!(b.order, 4);
    assert_eq!(b.terms.len(), 8);
    assert!(matches!(b.terms[0].coeff, Coefficient::Function(_)));
}

#[test]
fn verify_passes() {
    for (check, order) in [("fork-equivalence", "6"), ("denominators", "8"), ("dend-formula", "7")] {
        let o = omegaq(&["verify", "--check", check, "--order", order]);
        assert_eq!(o.status.code(), Some(0), "{check}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
    let o = omegaq(&["verify", "--check", "denominators", "--order", "5"]);
    assert!(stdout(&o).contains("Phi2*Phi3*Phi4*Phi5"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(omegaq(&["verify", "--check", "no-such-check"]).status.code(), Some(2));
    assert_eq!(omegaq(&["compute", "--series", "omega", "--order", "0"]).status.code(), Some(2));
    assert_eq!(omegaq(&["compute", "--series", "omega", "--order", "13"]).status.code(), Some(2));
    assert_eq!(omegaq(&["compute", "--series", "nope", "--order", "2"]).status.code(), Some(2));
    assert_eq!(omegaq(&["compute", "--series", "omega", "--order", "2", "--mode", "forks"]).status.code(), Some(2));
    assert_eq!(omegaq(&["compute", "--series", "omega", "--order", "2", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn cache_dir_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_omegaq"))
            .args(["compute", "--series", "omega-q", "--order", "4"])
            .env("OMEGAQ_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(dir.path().join("memo-tables.json").exists());
    let second = run();
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(second.stderr.is_empty());
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("memo-tables.json"), r#"{"cyclotomic": {"3": ["1/1", "1/1"]}, "bernoulli": []}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_omegaq"))
        .args(["compute", "--series", "omega", "--order", "3"])
        .env("OMEGAQ_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("ignoring cache"));
}
