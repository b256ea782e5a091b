use std::fs;
use std::path::PathBuf;

use endomotive::cli::run;
use endomotive::endomotive::{CrossedElement, GroupRingElement};
use endomotive::thermo::KmsPairJson;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("endomotive-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn call(args: &[&str]) -> i32 {
    run(std::iter::once("endomotive").chain(args.iter().copied()))
}

fn csv_column(text: &str, name: &str) -> Vec<f64> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().parse().unwrap()).collect()
}

#[test]
fn zeros_below_thirty() {
    let out = scratch("zeros.txt");
    assert_eq!(call(&["zeros", "--to", "30", "--out", out.to_str().unwrap()]), 0);
    let text = fs::read_to_string(&out).unwrap();
    let gammas: Vec<f64> = text.lines().filter(|l| !l.starts_with('#')).map(|l| l.trim().parse().unwrap()).collect();
    assert_eq!(gammas.len(), 3);
    assert!((gammas[0] - 14.134725).abs() < 1e-4);
}

#[test]
fn lefschetz_for_a_point() {
    let hodge = scratch("point.json");
    fs::write(&hodge, r#"{"m": 0, "hpq": {"0,0": 1}, "hpm": {"0": [1, 0]}}"#).unwrap();
    let out = scratch("point.csv");
    let code = call(&["arch", "lefschetz", "--hodge", hodge.to_str().unwrap(), "--place", "real", "--s", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("s,lhs,rhs,diff"));
    assert!(csv_column(&text, "diff")[0] <= 1e-6);
    // an unreachable tolerance turns into a failed check
    let code = call(&["arch", "lefschetz", "--hodge", hodge.to_str().unwrap(), "--place", "real", "--s", "0", "--tol", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&[]), 2);
    assert_eq!(call(&["zeros", "--bogus"]), 2);
    assert_eq!(call(&["zeros", "--to", "thirty"]), 2);
    assert_eq!(call(&["arch", "lefschetz", "--hodge", "/nonexistent/h.json", "--place", "real"]), 2);
    let bad = scratch("bad.json");
    fs::write(&bad, r#"{"m": 1, "hpq": {"1,0": 1}}"#).unwrap();
    assert_eq!(call(&["arch", "lefschetz", "--hodge", bad.to_str().unwrap(), "--place", "complex"]), 2);
}

#[test]
fn command_line_flags_override_the_config_file() {
    let hodge = scratch("tate.json");
    fs::write(&hodge, r#"{"m": 0, "hpq": {"0,0": 1}}"#).unwrap();
    let cfg = scratch("count.cfg");
    fs::write(&cfg, format!("# defaults\nhodge = {}\nplaces = real\nto = 30\npoles = 2\n", hodge.display())).unwrap();
    let out = scratch("count.json");
    assert_eq!(call(&["arch", "count", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["E"], 30.0);
    assert_eq!(call(&["arch", "count", "--config", cfg.to_str().unwrap(), "--to", "50", "--out", out.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["E"], 50.0);
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = scratch("fab-a.json");
    let b = scratch("fab-b.json");
    for p in [&a, &b] {
        assert_eq!(call(&["endo", "fabulous", "--modulus", "5", "--samples", "10", "--seed", "3", "--out", p.to_str().unwrap()]), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c = scratch("cyc-a.json");
    let d = scratch("cyc-b.json");
    for p in [&c, &d] {
        assert_eq!(call(&["cyclic", "check", "--algebra", "M2", "--degree", "3", "--seed", "1", "--out", p.to_str().unwrap()]), 0);
    }
    assert_eq!(fs::read(&c).unwrap(), fs::read(&d).unwrap());
}

#[test]
fn artin_idempotents_report() {
    let out = scratch("idem.json");
    assert_eq!(call(&["artin", "idempotents", "--modulus", "12", "--out", out.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let chars = v["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 4);
    for key in ["idempotent", "orthogonal", "complete"] {
        assert_eq!(v[key], true, "{key}");
    }
    // the chi-isotypic part of Q[mu_12] has one line per divisor d with cond(chi) | d
    for c in chars {
        let cond = c["conductor"].as_u64().unwrap();
        let rank = [1u64, 2, 3, 4, 6, 12].iter().filter(|d| *d % cond == 0).count();
        assert_eq!(c["rank"], rank.to_string());
    }
}

#[test]
fn kms_pairs_from_file() {
    let u2 = CrossedElement::u(2).unwrap();
    let e = CrossedElement::from_group_ring(GroupRingElement::basis(1, 3));
    let pairs = vec![
        KmsPairJson { x: u2.to_json(), y: u2.adjoint().to_json() },
        KmsPairJson { x: e.to_json(), y: u2.to_json() },
    ];
    let file = scratch("pairs.json");
    fs::write(&file, serde_json::to_string(&pairs).unwrap()).unwrap();
    let out = scratch("kms.csv");
    assert_eq!(call(&["thermo", "kms", "--beta", "2", "--nmax", "1000", "--pairs", file.to_str().unwrap(), "--out", out.to_str().unwrap()]), 0);
    let text = fs::read_to_string(&out).unwrap();
    let res = csv_column(&text, "residual");
    let bound = csv_column(&text, "bound");
    assert_eq!(res.len(), 6);
    assert!(res.iter().zip(&bound).all(|(r, b)| r <= &(10.0 * b)));
}

#[test]
fn endo_mul_matches_the_library() {
    let x = CrossedElement::u(3).unwrap();
    let y = CrossedElement::from_group_ring(GroupRingElement::basis(1, 2));
    let (l, r, out) = (scratch("x.json"), scratch("y.json"), scratch("xy.json"));
    fs::write(&l, serde_json::to_string(&x.to_json()).unwrap()).unwrap();
    fs::write(&r, serde_json::to_string(&y.to_json()).unwrap()).unwrap();
    assert_eq!(call(&["endo", "mul", "--left", l.to_str().unwrap(), "--right", r.to_str().unwrap(), "--out", out.to_str().unwrap()]), 0);
    let back = CrossedElement::from_json(&serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap()).unwrap();
    assert_eq!(back, x.mul(&y).unwrap());
}
