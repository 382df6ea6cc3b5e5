use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tripfact::catalog;
use tripfact::io::{format_group, format_triple};
use tripfact::{PermGroup, TripleFactorisation};

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("tripfact-cli-{}-{tag}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn tripfact(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tripfact"))
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, stderr)
}

fn status(v: &Value) -> &str {
    v["report"]["status"].as_str().unwrap()
}

#[test]
fn verify_file_with_each_criterion() {
    let s = Scratch::new("verify");
    let f = s.file(
        "a5.txt",
        "# A5 acting on 5 points\nG: (1,2,3,4,5); (1,2,3)\nA: (1,2,3,4,5)\nB:\n(1,3)(2,5)\n(1,2)(3,5)\n",
    );
    for c in ["geometric", "movement", "oracle"] {
        let (code, v, _) = tripfact(&["verify", "--triple", &f, "--criterion", c]);
        assert_eq!(code, 0);
        assert_eq!(status(&v), "NONDEGENERATE");
        assert_eq!(v["requested"]["criterion"], c);
        assert_eq!(v["report"]["|AB|"], 20);
    }
}

#[test]
fn exit_codes() {
    let s = Scratch::new("codes");
    let bad = s.file("bad.txt", "G: (1,2\n");
    let (code, v, _) = tripfact(&["verify", "--triple", &bad]);
    assert_eq!(code, 2);
    assert_eq!(v["exit_code"], 2);
    assert!(v["error"].is_string());

    let mismatch = s.file("mismatch.txt", "degree 3\nG: (1,2,3,4)\n");
    assert_eq!(tripfact(&["verify", "--triple", &mismatch]).0, 2);

    let (code, ..) = tripfact(&["verify", "--example", "fano-psl32", "--max-index", "5"]);
    assert_eq!(code, 3);

    let missing = s.0.join("absent.txt");
    let (code, v, _) = tripfact(&["verify", "--triple", missing.to_str().unwrap()]);
    // unreadable input counts as bad input
    assert_eq!(code, 2);
    assert_eq!(v["exit_code"], 2);

    let (code, v, _) = tripfact(&["reduce", "--example", "a5xs2-quotient"]);
    assert_eq!(code, 1, "{v}");

    let (code, v, _) = tripfact(&["verify"]);
    assert_eq!(code, 2);
    assert_eq!(v["exit_code"], 2);

    // usage errors come from the argument parser as plain text
    let (code, v, stderr) = tripfact(&["verify", "--no-such-flag"]);
    assert_eq!(code, 2);
    assert!(v.is_null() && !stderr.is_empty());
}

#[test]
fn quotient_by_normal_subgroup() {
    let s = Scratch::new("quotient");
    let (t, a5) = catalog::a5xs2_quotient();
    let f = s.file("t.txt", &format_triple(&t));
    // the second factor: G/A5 is S2 and the quotient triple is trivial
    let m = PermGroup::new(7, vec![tripfact::Permutation::cycles1(7, &[&[6, 7]])]).unwrap();
    let n = s.file("n.txt", &format_group(&m));
    let (code, v, _) = tripfact(&["quotient", "--triple", &f, "--normal", &n]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["quotient"]["report"]["|G|"], 60);
    assert_eq!(status(&v["quotient"]), "NONDEGENERATE");

    let n = s.file("a5.txt", &format_group(&a5));
    let (code, v, _) = tripfact(&["quotient", "--triple", &f, "--normal", &n]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["quotient"]["report"]["|G|"], 2);
    assert_eq!(status(&v["quotient"]), "TRIVIAL");

    let not_normal = s.file("c5.txt", "(1,2,3,4,5)\n");
    assert_ne!(tripfact(&["quotient", "--triple", &f, "--normal", &not_normal]).0, 0);
}

#[test]
fn restrict_and_lift() {
    let s = Scratch::new("restrict");
    let d10 = s.file("d10.txt", "(1,2,3,4,5)\n(2,5)(3,4)\n");
    let (code, v, _) = tripfact(&["restrict", "--example", "a5-cyclic-klein", "--subgroup", &d10]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "DEGENERATE");
    assert_eq!(v["restricted"]["report"]["|G|"], 10);
    assert_eq!(v["h_in_ab"], true);

    let (code, v, _) = tripfact(&["lift", "--example", "a5-cyclic-klein", "--maximal-only"]);
    assert_eq!(code, 0);
    let lifts = v["lifts"].as_array().unwrap();
    assert_eq!(lifts.len(), 1);
    assert_eq!(lifts[0]["status"], "DEGENERATE");
}

#[test]
fn embed_fixture() {
    let s = Scratch::new("embed");
    let fx = catalog::embedding_fixtures()
        .into_iter()
        .find(|f| f.name.starts_with("s4"))
        .unwrap();
    let blocks: Vec<String> = fx
        .sigma
        .blocks()
        .iter()
        .map(|b| b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let (code, v, _) = tripfact(&[
        "embed",
        "--group",
        &s.file("g.txt", &format_group(&fx.g)),
        "--blocks",
        &s.file("blocks.txt", &blocks.join(" | ")),
        "--a",
        &s.file("a.txt", &format_group(&fx.a)),
        "--b",
        &s.file("b.txt", &format_group(&fx.b)),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(
        v["block_size"].as_u64().unwrap() * v["num_blocks"].as_u64().unwrap(),
        fx.g.degree() as u64
    );
    assert_eq!(v["report"]["psi_bijective"], true);
    assert_eq!(v["report"]["law_holds"], true);
    assert_eq!(v["report"]["phi_injective"], true);
    assert_eq!(v["phi"].as_array().unwrap().len(), fx.g.generators().len());
}

#[test]
fn wreath_of_two_triples() {
    let s = Scratch::new("wreath");
    let s3 = PermGroup::symmetric(3);
    let t0 = TripleFactorisation::new(
        s3.clone(),
        PermGroup::new(3, vec![tripfact::Permutation::cycles1(3, &[&[1, 2]])]).unwrap(),
        PermGroup::cyclic(3),
    )
    .unwrap();
    let s2 = PermGroup::symmetric(2);
    let t1 = TripleFactorisation::new(s2.clone(), PermGroup::trivial(2), s2).unwrap();
    let (code, v, _) = tripfact(&[
        "wreath",
        "--t0",
        &s.file("t0.txt", &format_triple(&t0)),
        "--t1",
        &s.file("t1.txt", &format_triple(&t1)),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["wreath"]["report"]["|G|"], 72);
    assert_eq!(status(&v["wreath"]), "DEGENERATE");
    assert_eq!(v["identities"]["product_identity"], true);
}

#[test]
fn reduce_search_catalog() {
    let (code, v, _) = tripfact(&["reduce", "--example", "a5-cyclic-klein"]);
    assert_eq!(code, 0);
    assert_eq!(v["branch"], "CHAIN_DESCENT");
    assert_eq!(v["output"]["report"]["|G|"], 60);
    assert_eq!(v["output"]["report"]["|A|"], 10);
    assert_eq!(v["output_primitive"]["is_primitive"], true);

    let (code, v, _) = tripfact(&["search", "--group", "a4"]);
    assert_eq!(code, 0);
    assert_eq!(v["counts"]["NONDEGENERATE"], 24);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 100);

    let (code, v, _) = tripfact(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
}
