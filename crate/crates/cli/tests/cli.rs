use std::process::{Command, Output};

fn ratpark(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratpark")).args(args).env_remove("RATPARK_MAX_ITER").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = ratpark(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn zeta_of_a_small_word() {
    assert_eq!(stdout(&["zeta", "--m", "4", "--n", "3", "--word", "012"]), "000\n");
    assert_eq!(stdout(&["zeta-inv", "--m", "4", "--n", "3", "--word", "000", "--oracle"]), "012\n");
}

#[test]
fn qt_table_as_csv() {
    let csv = stdout(&["qt-table", "--m", "5", "--n", "3"]);
    assert_eq!(csv, "area\\dinv,0,1,2,3,4\n0,0,1,2,2,1\n1,1,4,3,1,0\n2,2,3,1,0,0\n3,2,1,0,0,0\n4,1,0,0,0,0\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["qt-table", "--m", "4", "--n", "3", "--over", "dyck", "--format", "json"]))
            .unwrap();
    assert_eq!(json["counts"][0], serde_json::json!([0, 0, 0, 1]));
}

#[test]
fn classification_strings() {
    assert_eq!(stdout(&["classify", "--m", "3", "--n", "3", "--word", "000"]), "infinitely-many-fixed-points\n");
    assert_eq!(stdout(&["classify", "--m", "4", "--n", "3", "--word", "012"]), "unique-fixed-point\n");
    assert_eq!(stdout(&["classify", "--m", "4", "--n", "3", "--word", "022"]), "no-fixed-point\n");
}

#[test]
fn fixed_points_text_and_json() {
    assert_eq!(stdout(&["fixed-point", "--m", "3", "--n", "5", "--word", "10011"]), "[-1,3,4]\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["fixed-point", "--m", "3", "--n", "5", "--word", "10011", "--json"])).unwrap();
    assert_eq!(json, serde_json::json!({ "m": 3, "coords": [-1, 3, 4] }));
    let witness = stdout(&["fixed-point", "--m", "9", "--n", "12", "--word", "531030678631"]);
    assert!(witness.starts_with('['), "{witness}");
}

#[test]
fn sweep_and_its_inverse() {
    let swept = stdout(&["sweep", "--m", "4", "--n", "7", "--path", "NNWWNWNWWWW"]);
    assert!(swept.contains("row minima 0,5,7,14"), "{swept}");
    let back = stdout(&["sweep-inv", "--m", "4", "--n", "7", "--minima", "0,5,7,14"]);
    assert!(back.starts_with("NNWWNWNWWWW\n"), "{back}");
    assert!(back.contains("vertical levels 7,13,14,16\nhorizontal levels 0,4,6,8,9,10,12"), "{back}");
}

#[test]
fn affine_labelings() {
    let base = ["affine", "--window", "3,-1,2,5,6", "--m", "3"];
    assert_eq!(stdout(&[&base[..], &["--pak-stanley"]].concat()), "10011\n");
    assert_eq!(stdout(&[&base[..], &["--anderson"]].concat()), "10001\n");
    assert_eq!(stdout(&[&base[..], &["--sommers-check"]].concat()), "true\n");
    assert_eq!(stdout(&["affine", "--window", "-1,2,3,5,6", "--m", "3", "--swap"]), "[-1,3,4]\n");
}

#[test]
fn stats_of_a_word() {
    assert_eq!(stdout(&["stats", "--m", "3", "--n", "5", "--word", "10001"]), "area 2\ndinv 1\n");
}

#[test]
fn exit_codes() {
    let bad_letter = ratpark(&["zeta", "--m", "3", "--n", "3", "--word", "007"]);
    assert_eq!(bad_letter.status.code(), Some(2));
    assert!(!bad_letter.stderr.is_empty());
    assert_eq!(ratpark(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(ratpark(&["zeta", "--m", "3", "--n", "4", "--word", "000"]).status.code(), Some(2));

    let starved = Command::new(env!("CARGO_BIN_EXE_ratpark"))
        .args(["fixed-point", "--m", "3", "--n", "5", "--word", "10011"])
        .env("RATPARK_MAX_ITER", "1")
        .output()
        .unwrap();
    assert_eq!(starved.status.code(), Some(3));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_ratpark"))
        .args(["fixed-point", "--m", "3", "--n", "5", "--word", "10011", "--max-iter", "100"])
        .env("RATPARK_MAX_ITER", "1")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());
}

#[test]
fn verify_is_byte_stable() {
    let first = stdout(&["verify", "--paper"]);
    assert_eq!(first, stdout(&["verify", "--fixtures"]));
    assert!(first.ends_with("0 failed\n"), "{first}");
    let shape = stdout(&["verify", "--m", "3", "--n", "4", "--pairs", "500", "--json"]);
    assert_eq!(shape, stdout(&["verify", "--m", "3", "--n", "4", "--pairs", "500", "--json"]));
    let json: serde_json::Value = serde_json::from_str(&shape).unwrap();
    assert_eq!(json["failed"], 0);
}

#[test]
fn enumerate_lists_parking_words() {
    let words = stdout(&["enumerate", "--m", "4", "--n", "3"]);
    assert_eq!(words.lines().count(), 16);
    assert_eq!(stdout(&["enumerate", "--m", "5", "--n", "3", "--dyck"]).lines().count(), 7);
}
