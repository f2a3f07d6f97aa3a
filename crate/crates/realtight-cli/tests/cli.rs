use std::process::{Command, Output};

use realtight::dividing::{AnnulusArcSystem, ProofReport};
use realtight::farey::FareyPath;
use realtight::invariants::{CrossCheck, Obstruction, TbRow};
use realtight::lens::{records_from_csv, rows_from_records, BoundsRecord, LensSpace, SpecialClassification};
use realtight::slopes::{NegCF, Slope};
use realtight::solid_torus::CountResult;
use realtight::surgery::EquivarianceVerdict;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realtight")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn table_markdown() {
    let out = stdout(&["table", "--p", "3..8"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "| p | q | l_A | l_B | l*_C | l*_C' | honda | witnesses |");
    assert_eq!(lines.len(), 2 + 12);
    assert!(lines[2].starts_with("| 3 | 1 | 2 | <= 1 | <= 4 | 0 | 2 |"));
    assert!(lines[6].starts_with("| 5 | 1 | [4, 6] | <= 1 | <= 8 | 0 | 4 |"));
}

#[test]
fn tb_example() {
    assert_eq!(stdout(&["tb", "--p", "7", "--q", "6", "--type", "C"]).trim(), "-13/7");
    assert_eq!(stdout(&["tb", "--p", "7", "--sign", "+"]).trim(), "-1/7");
    let row: TbRow = json(&["tb", "--p", "8", "--q", "7", "--type", "C'"]);
    assert_eq!((row.tb_num, row.tb_den), (1, 1));
}

#[test]
fn replay_example() {
    let out = stdout(&["dividing", "replay", "nobasic"]);
    assert!(out.lines().any(|l| l == "tight survivors: 0"), "{out}");
    let report: ProofReport = json(&["dividing", "replay", "c2_T_minus1_minus2"]);
    assert_eq!(report.tight_survivors, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["tb"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--p", "x..y"]).status.code(), Some(2));
    let domain = run(&["cf", "expand", "--slope", "3"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("out of expansion domain"));
    assert_eq!(run(&["count", "lens", "--p", "5", "--q", "2", "--type", "A"]).status.code(), Some(1));
    assert_eq!(run(&["surgery", "identify", "--chain", "-1,-1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["table", "--p", "3..6"],
        vec!["--format", "json", "dividing", "replay", "vardouble"],
        vec!["--format", "csv", "table", "--p", "4..5"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn json_round_trips() {
    let p: FareyPath = json(&["farey", "dist", "-3", "-1"]);
    assert_eq!(p.steps, 2);
    assert_eq!(p.path[1], Slope::integer(-2));
    let cf: NegCF = json(&["cf", "expand", "--slope", "-7/2"]);
    assert_eq!(cf, NegCF(vec![-4, -2]));
    let s: Slope = json(&["cf", "eval", "-4,-2"]);
    assert_eq!(s, Slope::new(-7, 2).unwrap());
    let c: CountResult = json(&["count", "solid-torus", "--type", "c1", "--slope", "-1"]);
    assert_eq!((c.lower, c.upper), (2, Some(2)));
    let c: CountResult = json(&["count", "slice", "--type", "c1", "--slice", "basic"]);
    assert!(c.exact && c.lower == 0);
    let c: CountResult = json(&["count", "lens", "--p", "5", "--q", "1"]);
    assert_eq!(c.lower, 4);
    let sp: SpecialClassification = json(&["count", "special", "s3"]);
    assert!(sp.count.exact);
    let recs: Vec<BoundsRecord> = json(&["table", "--p", "3..4"]);
    assert_eq!(rows_from_records(&recs).unwrap().len(), 4);
    let csv = stdout(&["--format", "csv", "table", "--p", "3..4"]);
    assert_eq!(records_from_csv(&csv).unwrap(), recs);
    let checks: Vec<CrossCheck> = json(&["tb", "cross-check", "--p", "3..10"]);
    assert!(checks.iter().all(|c| c.pass));
    let o: Obstruction = json(&["obstruction", "--p", "7", "--q", "6"]);
    assert!(o.mismatch);
    let systems: Vec<AnnulusArcSystem> = json(&["dividing", "enumerate", "--n-in", "2", "--n-out", "4"]);
    assert_eq!(systems.len(), 26);
    let sym: Vec<AnnulusArcSystem> =
        json(&["dividing", "enumerate", "--n-in", "2", "--n-out", "2", "--symmetric", "rotation"]);
    assert!(sym.iter().all(|s| s.traversing_count() == 2));
    let l: LensSpace = json(&["surgery", "identify", "--chain", "-2,-2,-2,-2"]);
    assert_eq!(l, LensSpace { p: 5, q: 4 });
    let l: LensSpace =
        json(&["surgery", "identify", "--json", r#"[{"tb":-4,"contact_coeff":-1,"equivariance":"c1-invariant"}]"#]);
    assert_eq!(l, LensSpace { p: 5, q: 1 });
    let v: EquivarianceVerdict =
        json(&["surgery", "validate", "--tb", "-1", "--contact", "1", "--equivariance", "c4-invariant"]);
    assert!(v.valid && v.unique);
}

#[test]
fn text_outputs() {
    assert_eq!(stdout(&["cf", "expand", "--slope", "-7/2"]).trim(), "[-4,-2]");
    assert_eq!(stdout(&["surgery", "identify", "--chain", "-5"]).trim(), "L(5,1)");
    let v = stdout(&["surgery", "validate", "--tb", "-1", "--contact", "-1", "--equivariance", "none"]);
    assert!(v.starts_with("not equivariant"));
    let o = stdout(&["obstruction", "--p", "8", "--q", "7"]);
    assert!(o.contains("1/8 - 1") || o.contains("-7/8"), "{o}");
}
