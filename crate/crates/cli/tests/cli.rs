use std::path::Path;
use std::process::Command;

use bilattice::birkhoff::{upset_algebra, OrderedSpace, PriestleySpace};
use bilattice::document::AlgebraDocument;
use bilattice::error::Error;
use bilattice::product_rep::bowtie_in;
use bilattice::varieties::{canonical, reduct_to, CanonicalName, VarietyTag};
use bilattice::Signature;
use bilattice_cli::{exit_code, run, CommandResult};

fn bl(args: &[&str]) -> CommandResult {
    run(std::iter::once("bilattice").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, doc: &AlgebraDocument) -> String {
    let p = dir.join(name);
    std::fs::write(&p, doc.to_json()).unwrap();
    p.to_str().unwrap().to_string()
}

fn square(dir: &Path) -> String {
    let sq = canonical(CanonicalName::Four).power(2).unwrap();
    write(
        dir,
        "sq.json",
        &AlgebraDocument::from_algebra(&sq, VarietyTag::Db),
    )
}

#[test]
fn canonical_document_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("four.json");
    let r = bl(&["canonical", "4", "-o", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = bl(&["roundtrip", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("evaluation map: isomorphism"));
    assert!(r.stdout.contains("coevaluation map: isomorphism"));
    assert!(r.stdout.contains("fingerprint "));
}

#[test]
fn free_algebra_on_one_generator() {
    let r = bl(&["free", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("|F(1)| = 36"));
    let r = bl(&["--variety", "DB-", "free", "1"]);
    assert!(r.stdout.contains("|F(1)| = 16"), "{}", r.stdout);
}

#[test]
fn unification_types() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square(dir.path());
    let r = bl(&["unify-type", &sq]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("type: omega"), "{}", r.stdout);
    let r = bl(&["--canonical", "4", "unify-type"]);
    assert!(r.stdout.contains("type: 1"), "{}", r.stdout);
}

#[test]
fn admissible_reports_the_failing_clause() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square(dir.path());
    let r = bl(&["admissible", &sq]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("(11,10)"), "{}", r.stdout);
}

#[test]
fn embed_free_uses_search_for_long_chains() {
    let dir = tempfile::tempdir().unwrap();
    let chain = upset_algebra(&OrderedSpace::Plain(PriestleySpace::chain(3)));
    let chain = reduct_to(&chain, VarietyTag::DMinus).unwrap();
    let b = bowtie_in(&chain, Signature::db_minus()).unwrap().algebra;
    let path = write(
        dir.path(),
        "b.json",
        &AlgebraDocument::from_algebra(&b, VarietyTag::DbMinus),
    );
    let r = bl(&["embed-free", &path]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(
        r.stdout.contains("generators: 2 (search map)"),
        "{}",
        r.stdout
    );
    assert!(r.stdout.contains("injective: yes"), "{}", r.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(bl(&["no-such-command"]).code, 2);
    assert_eq!(bl(&["--canonical", "5", "validate"]).code, 2);
    assert_eq!(bl(&["free", "3"]).code, 5);
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("x.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_eq!(bl(&["validate", garbage.to_str().unwrap()]).code, 2);
    let mut doc = AlgebraDocument::from_algebra(&canonical(CanonicalName::Four), VarietyTag::Db);
    let text = doc.to_json().replace(
        "\"neg\": [\n      1,\n      0,",
        "\"neg\": [\n      0,\n      1,",
    );
    doc = AlgebraDocument::parse(&text).unwrap();
    let bad = write(dir.path(), "bad.json", &doc);
    assert_eq!(bl(&["validate", &bad]).code, 3);
    assert_eq!(exit_code(&Error::TheoremViolation("x".into())), 4);
    assert_eq!(exit_code(&Error::NoSeparatingHom), 4);
}

#[test]
fn output_is_reproducible() {
    let a = bl(&["--format", "json", "--canonical", "4-", "dual"]);
    let b = bl(&["--format", "json", "--canonical", "4-", "dual"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["command"], "dual");
    assert!(v["inputs"][0]["fingerprint"].as_str().unwrap().len() == 64);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_bilattice");
    let ok = Command::new(bin)
        .args(["--canonical", "4", "validate"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let guard = Command::new(bin).args(["free", "3"]).output().unwrap();
    assert_eq!(guard.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("resource guard"));
}
