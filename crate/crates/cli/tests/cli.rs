use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn weylmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylmod"))
        .args(args)
        .output()
        .expect("spawn weylmod")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (serde_json::Value, Option<i32>) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = weylmod(&all);
    (serde_json::from_slice(&o.stdout).expect("json output"), o.status.code())
}

#[test]
fn dims_catalan_two_methods_match() {
    let o = weylmod(&["dims", "--d", "2", "--r", "2", "--n", "4", "--method", "formula,enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("formula    42"), "{out}");
    assert!(out.contains("enumerate  42"), "{out}");
    assert!(out.contains("verdict: match"), "{out}");

    let (v, _) = json(&["dims", "--d", "2", "--r", "2", "--n", "4", "--method", "formula,enumerate"]);
    assert_eq!(v["results"][0]["dim"], "42");
    assert_eq!(v["results"][1]["dim"], "42");
    assert_eq!(v["verdict"], "match");
}

#[test]
fn weights_multinomial_row() {
    let o = weylmod(&["weights", "--d", "1", "--r", "2", "--n", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let dims: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with("total"))
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    assert_eq!(dims, ["1", "3", "3", "1"]);
}

#[test]
fn d3_conjecture_confirmed_by_oracle() {
    let o = weylmod(&["dims", "--d", "3", "--r", "2", "--n", "2", "--method", "formula,oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("formula  6") && out.contains("oracle   6"), "{out}");
    assert!(out.contains("conjecture confirmed at (r=2,n=2)"), "{out}");
}

#[test]
fn big_integers_are_decimal_strings() {
    let (v, code) = json(&["dims", "--d", "2", "--r", "4", "--n", "30"]);
    assert_eq!(code, Some(0));
    let dim = v["results"][0]["dim"].as_str().expect("string");
    assert!(dim.len() > 20, "{dim}");
}

#[test]
fn char_of_two_cars() {
    let (v, code) = json(&["char", "--m", "1,1"]);
    assert_eq!(code, Some(0));
    // 11 is fixed, 12 and 21 are swapped: 2 s_2 + s_11
    assert_eq!(v["schur"][0]["lambda"], serde_json::json!([2]));
    assert_eq!(v["schur"][0]["mult"], "2");
    assert_eq!(v["schur"][1]["mult"], "1");
    let (v, _) = json(&["char", "--m", "1,1", "--sign-twist"]);
    assert_eq!(v["schur"][0]["mult"], "1");
    assert_eq!(v["schur"][1]["mult"], "2");
}

#[test]
fn parking_list_streams_functions() {
    let o = weylmod(&["parking", "--m", "1,1", "--list", "--format", "csv"]);
    assert_eq!(stdout(&o), "1,1\n1,2\n2,1\n");
    let (v, _) = json(&["parking", "--m", "1,1,1"]);
    assert_eq!(v["count"], "16");
}

#[test]
fn oracle_reports_graded_dims() {
    let (v, code) = json(&["oracle", "--d", "2", "--n", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["total"], "16");
    assert_eq!(v["converged"], true);
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn oracle_candidate_traces_are_labeled() {
    let o = weylmod(&["oracle", "--d", "3", "--n", "2", "--traces"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unverified interpretation"));
}

#[test]
fn polyfit_narayana_column() {
    let (v, code) = json(&["polyfit", "--d", "2", "--k", "1", "--range", "1..8"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["polynomial"], "1/2*n^2 + 1/2*n");
    assert_eq!(v["verdict"], "degree confirmed");
}

#[test]
fn polyfit_constant_for_d0() {
    let (v, code) = json(&["polyfit", "--d", "0", "--k", "2", "--range", "2..7"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["polynomial"], "1");
}

#[test]
fn verify_parking_suite_passes() {
    let o = weylmod(&["verify", "--suite", "parking"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS [criterion  9]"));
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(weylmod(&["dims", "--d", "2"]).status.code(), Some(2));
    assert_eq!(weylmod(&["dims", "--d", "2", "--n", "2", "--method", "magic"]).status.code(), Some(2));
    assert_eq!(weylmod(&["weights", "--l", "2", "--n", "3"]).status.code(), Some(2));
    assert_eq!(weylmod(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    // resource limits
    let o = weylmod(&["parking", "--m", "1,1,1,1,1,1,1,1,1", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = weylmod(&["oracle", "--d", "2", "--n", "3", "--stall", "1", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("NOT converged"));
}

fn cached(dir: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--cache-dir", dir.to_str().unwrap()];
    all.extend(args);
    weylmod(&all)
}

fn entries(dir: &Path) -> Vec<std::path::PathBuf> {
    fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect()
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["weights", "--d", "2", "--r", "3", "--n", "4", "--method", "formula,enumerate"];
    let fresh = weylmod(&args);
    let first = cached(dir.path(), &args);
    assert_eq!(entries(dir.path()).len(), 1);
    let second = cached(dir.path(), &args);
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());

    // different format, different entry
    let _ = cached(dir.path(), &{
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        a
    });
    assert_eq!(entries(dir.path()).len(), 2);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["dims", "--d", "2", "--n", "5"];
    let first = cached(dir.path(), &args);
    let entry = entries(dir.path()).pop().unwrap();

    // a well-formed entry with a tampered payload
    let text = fs::read_to_string(&entry).unwrap().replace("132", "999");
    fs::write(&entry, text).unwrap();
    let again = cached(dir.path(), &args);
    assert_eq!(first.stdout, again.stdout);
    assert!(stdout(&again).contains("132"));

    fs::write(&entry, b"{not json").unwrap();
    let third = cached(dir.path(), &args);
    assert_eq!(first.stdout, third.stdout);
    assert!(fs::read_to_string(&entry).unwrap().contains("checksum"));
}

#[test]
fn jobs_do_not_change_results() {
    let args = ["oracle", "--d", "2", "--n", "3", "--format", "json"];
    let one = weylmod(&[&["--jobs", "1"][..], &args[..]].concat());
    let four = weylmod(&[&["--jobs", "4"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
