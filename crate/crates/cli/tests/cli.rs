use std::process::Command;

use grt_cli::{run, EXIT_PARSE, EXIT_PRECONDITION, EXIT_USAGE};
use serde_json::json;

fn grt(args: &str) -> grt_cli::CommandResult {
    run(std::iter::once("grt").chain(args.split_whitespace()))
}

#[test]
fn lie_dim_degree_twelve() {
    let r = grt("lie dim --letters 2 --degree 12");
    assert_eq!(r.status, 0);
    assert_eq!(r.rendering, "335\n");
    assert_eq!(r.payload["dimension"], 335);
}

#[test]
fn weighted_dim() {
    let r = grt("--json lie dim --weights 1,2 --degree 5");
    assert_eq!(r.payload["dimension"], 2);
}

#[test]
fn congruence_691() {
    let r = grt("--json ihara congruence --modulus 691");
    assert_eq!(r.status, 0);
    assert_eq!(r.payload["modulus"], 691);
    assert_eq!(r.payload["divisible"], true);
    let coeffs = r.payload["coefficients"].as_array().unwrap();
    assert!(!coeffs.is_empty());
    assert!(coeffs[0].get("word").is_some() && coeffs[0].get("value").is_some());
}

#[test]
fn congruence_5_reports_discrepancy() {
    let r = grt("--json ihara congruence --modulus 5");
    assert_eq!(r.payload["divisible"], false);
    assert!(r.payload.get("lattice_discrepancy").is_some());
}

#[test]
fn dn_even_over_q() {
    let r = grt("motivic dn --r1 1 --r2 0 --s 1 --n 2");
    assert_eq!(r.status, 0);
    assert_eq!(r.rendering, "0\n");
    assert_eq!(grt("motivic dn --r1 1 --r2 0 --s 1 --n 1").rendering, "1\n");
    assert_eq!(grt("motivic dn --r1 0 --r2 1 --s 1 --n 4").rendering, "1\n");
}

#[test]
fn ihara_basis_json_shape() {
    let r = grt("--json ihara basis --degree 5");
    assert_eq!(r.payload["degree"], 5);
    assert_eq!(r.payload["dimension"], 1);
    assert_eq!(r.payload["basis"].as_array().unwrap().len(), 1);
    let all = grt("--json --max-degree 9 ihara basis");
    let dims: Vec<u64> = all.payload.as_array().unwrap().iter().map(|r| r["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![0, 1, 0, 1, 0, 1, 1, 1]);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [
        "--json ihara freeness",
        "--json --threads 3 --max-degree 10 ihara basis",
        "--json lie lyndon --degree 6",
        "--json malcev filtration free --class 3",
    ] {
        assert_eq!(grt(args).stdout(), grt(args).stdout(), "{args}");
    }
    let one = grt("--json --threads 1 --max-degree 10 ihara basis").stdout();
    let four = grt("--json --threads 4 --max-degree 10 ihara basis").stdout();
    assert_eq!(one, four);
}

#[test]
fn error_classes() {
    assert_eq!(grt("frobnicate").status, EXIT_USAGE);
    assert_eq!(grt("lie dim").status, EXIT_USAGE);
    let r = grt("--json lie parse [x,[x,y]");
    assert_eq!(r.status, EXIT_PARSE);
    assert!(r.payload["error"]["message"].as_str().unwrap().contains("byte"));
    assert_eq!(grt("lie parse [x,q]").status, EXIT_PARSE);
    assert_eq!(grt("ihara basis --degree 17").status, EXIT_PRECONDITION);
    assert_eq!(grt("ihara basis --degree 13").status, EXIT_PRECONDITION);
    assert_eq!(grt("ihara soule --m 4").status, EXIT_PRECONDITION);
    assert_eq!(grt("--max-degree 20 ihara freeness").status, EXIT_PRECONDITION);
    assert_eq!(grt("motivic dn --r1 0 --r2 0 --s 1 --n 2").status, EXIT_PRECONDITION);
    assert_eq!(grt("--threads 0 lie dim --degree 3").status, EXIT_PRECONDITION);
    assert_eq!(grt("ihara bracket [x,y] x").status, EXIT_PRECONDITION);
}

#[test]
fn lie_verbs() {
    assert_eq!(grt("lie bracket x [x,y]").rendering, "[x,[x,y]]\n");
    assert_eq!(grt("lie parse -[y,x]+0").rendering, "[x,y]\n");
    assert_eq!(grt("lie expand [x,y]").payload["tensor"], "xy - yx");
    let r = grt("--json lie lyndon --alphabet a,b,c --degree 2");
    assert_eq!(r.payload["count"], 3);
}

#[test]
fn derivation_verbs() {
    let r = grt("--json der outdim --degree 3");
    assert_eq!(r.payload["outder_dim"], r.payload["outder_dim_formula"]);
    let r = grt("der apply --x 0 --y [y,x] --degree 1 [x,y]");
    assert_eq!(r.status, 0);
    assert_eq!(r.rendering, "-[x,[x,y]]\n");
}

#[test]
fn ihara_bracket_of_generators() {
    let f3 = grt("ihara soule --m 3").payload["generator"].as_str().unwrap().to_string();
    let f5 = grt("ihara soule --m 5").payload["generator"].as_str().unwrap().to_string();
    let r = run(["grt", "--json", "ihara", "bracket", &f3, &f5]);
    assert_eq!(r.status, 0);
    assert_eq!(r.payload["degree"], 8);
    assert_ne!(r.payload["result"], "0");
}

#[test]
fn malcev_verbs() {
    let r = grt("--json malcev bch --class 2 x y");
    assert_eq!(r.payload, json!({ "class": 2, "log": "x + y + 1/2*[x,y]" }));
    let r = run(["grt", "malcev", "word", "--class", "2", "x y x^-1 y^-1"]);
    assert_eq!(r.rendering, "[x,y]\n");
    let r = grt("--json malcev filtration --max-m 3 free --class 3");
    let ranks: Vec<u64> = r.payload["rows"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![2, 1, 2]);
    let r = grt("--json malcev filtration --max-m 2 cyclic --rank 1 --torsion 3");
    assert_eq!(r.payload["rows"][1]["d_mod_l"], json!([3]));
    let r = grt("--json malcev filtration --max-m 2 subgroup --class 2 x 2*y");
    assert_eq!(r.payload["filtration"], "induced-graded");
    assert_eq!(r.payload["rows"][0]["d_mod_l"], json!([2]));
}

#[test]
fn motivic_tables() {
    let r = grt("--json motivic image");
    let rows = r.payload["rows"].as_array().unwrap();
    let dim = |d: u64| rows.iter().find(|r| r["degree"] == d).unwrap()["dim"].as_u64().unwrap();
    assert_eq!((dim(3), dim(8), dim(11), dim(12)), (1, 1, 2, 2));
    assert_eq!(rows[0]["weight"], -2);
    let r = grt("--json motivic ext --r1 1 --r2 0 --s 1 --i 2 --n 3");
    assert_eq!(r.payload["ext"], 0);
    assert_eq!(grt("motivic ext --r1 1 --r2 0 --s 1").status, 0);
    assert_eq!(grt("motivic kdims --r1 1 --r2 0 --s 1").status, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_grt");
    let out = Command::new(bin).args(["lie", "dim", "--letters", "2", "--degree", "12"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "335\n");
    let out = Command::new(bin).args(["lie", "parse", "[x,"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let out = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
