use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ftpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftpi"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("FTPI_MAX_ENUM_ORDER")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn small_sieve_lists_the_known_designs() {
    let o = ftpi(&["sieve", "--lambda", "3:4", "--v", "1:99"]);
    assert_eq!(o.status.code(), Some(0));
    let vs: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    for v in ["15", "16", "36", "45", "96"] {
        assert!(vs.iter().any(|x| x == v), "v={v}");
    }
    assert!(stderr(&o).starts_with("# config: max_enum_order=25000"));
}

#[test]
fn sieve_golden_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let own = dir.path().join("own.csv");
    let o = ftpi(&["sieve", "--lambda", "3", "--v", "100:600", "--out", own.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = ftpi(&["sieve", "--lambda", "3", "--v", "100:600", "--golden", own.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("golden: match"));

    let text = std::fs::read_to_string(&own).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let dropped = lines.remove(1).to_string();
    let short = dir.path().join("short.csv");
    std::fs::write(&short, lines.join("\n") + "\n").unwrap();
    let o = ftpi(&["sieve", "--lambda", "3", "--v", "100:600", "--golden", short.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(&format!("extra: {dropped}")), "{}", stderr(&o));
}

#[test]
fn verdicts_name_the_failing_rule() {
    let o = ftpi(&["sieve", "--lambda", "3", "--v", "561", "--verdicts"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3,561,36,48,748,17,33,2 | fail L2_1_iii"));
}

#[test]
fn bad_ranges_are_usage_errors() {
    assert_eq!(ftpi(&["sieve", "--lambda", "4:3", "--v", "1:9"]).status.code(), Some(2));
    assert_eq!(ftpi(&["sieve", "--lambda", "1", "--v", "1:9"]).status.code(), Some(2));
    assert_eq!(ftpi(&["--max-enum-order", "0", "sieve", "--lambda", "3", "--v", "9"]).status.code(), Some(2));
}

#[test]
fn config_flag_overrides_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_ftpi"));
        c.current_dir(fixtures()).env_remove("FTPI_MAX_ENUM_ORDER");
        if let Some(e) = env {
            c.env("FTPI_MAX_ENUM_ORDER", e);
        }
        if let Some(f) = flag {
            c.args(["--max-enum-order", f]);
        }
        let o = c.args(["group", "info", "groups/misc/s5.grp"]).output().unwrap();
        stdout(&o).lines().next().unwrap().to_string()
    };
    assert!(run(None, None).contains("max_enum_order=25000"));
    assert!(run(Some("777"), None).contains("max_enum_order=777"));
    assert!(run(Some("777"), Some("888")).contains("max_enum_order=888"));
}

#[test]
fn group_info_reports_transitivity() {
    let o = ftpi(&["group", "info", "groups/deg33/psl_2_32.grp"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["degree: 33", "order: 32736", "transitivity degree: 3", "primitive: true"] {
        assert!(out.contains(line), "{out}");
    }
    let o = ftpi(&["group", "info", "groups/deg10/a5_pairs.grp"]);
    assert!(stdout(&o).contains("primitive: true"));
}

#[test]
fn subgroup_orbits_on_cosets() {
    let o = ftpi(&[
        "group", "subgroups", "groups/misc/a7.grp", "--index-div", "140", "--orbit-on-cosets", "18", "--coset-order", "21",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("(degree 120): matching classes: 1"), "{out}");
    assert!(out.contains("orbits of size 18: 6"), "{out}");
    let o = ftpi(&["group", "subgroups", "groups/misc/a7.grp", "--orbit-on-cosets", "18"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coset_action_round_trips_through_info() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a7_120.grp");
    let o = ftpi(&["group", "coset", "groups/misc/a7.grp", "--order", "21", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ftpi(&["group", "info", out.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("degree: 120") && text.contains("order: 2520"), "{text}");
    let o = ftpi(&["group", "coset", "groups/misc/a7.grp", "--order", "21", "--class", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn design_commands() {
    let o = ftpi(&["design", "verify", "designs/biplane16.dsg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2-(16,6,2) b=16 r=6"));
    let o = ftpi(&["design", "flags", "--group", "groups/misc/agl_2_3.grp", "designs/affine_plane9.dsg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("flag-transitive: true"));
    let o = ftpi(&["design", "flags", "--group", "groups/misc/translations16.grp", "designs/biplane16.dsg"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ftpi(&["design", "orbit-check", "--group", "groups/misc/s5.grp", "--block", "0 1", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2-(5,2,1) b=10"));
    let o = ftpi(&["design", "orbit-check", "--group", "groups/misc/s5.grp", "--block", "0 1", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ftpi(&["design", "partitions", "--group", "groups/misc/translations16.grp", "designs/biplane16.dsg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# config: "));
}

#[test]
fn eliminate_single_line_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("l6.csv");
    std::fs::write(&csv, "lambda,v,k,r,b,c,d,ell\n3,1156,36,99,3179,34,34,2\n").unwrap();
    let report = dir.path().join("l6.report");
    let o = ftpi(&["eliminate", csv.to_str().unwrap(), "--fixtures", ".", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("L6 | final | ELIMINATED"), "{text}");
    assert!(text.contains("\"excluded_by\":31"));
    let o = ftpi(&["replay", report.to_str().unwrap(), "--fixtures", "."]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISMATCH"));

    let golden = fixtures().join("table1.report");
    let o = ftpi(&["eliminate", csv.to_str().unwrap(), "--golden", golden.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "a one-line report differs from the full golden");
}

#[test]
fn empty_tuple_list_and_strict_mode() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    std::fs::write(&csv, "lambda,v,k,r,b,c,d,ell\n").unwrap();
    let o = ftpi(&["eliminate", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with('#')));

    let fx = dir.path().join("fx");
    std::fs::create_dir_all(&fx).unwrap();
    std::fs::copy(fixtures().join("manifest.toml"), fx.join("manifest.toml")).unwrap();
    let l6 = dir.path().join("l6.csv");
    std::fs::write(&l6, "lambda,v,k,r,b,c,d,ell\n3,1156,36,99,3179,34,34,2\n").unwrap();
    let o = ftpi(&["eliminate", l6.to_str().unwrap(), "--fixtures", fx.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("L6 | final | EXTERNAL"));
    let o = ftpi(&["eliminate", l6.to_str().unwrap(), "--fixtures", fx.to_str().unwrap(), "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing fixtures for L6"));
}

#[test]
fn missing_input_is_an_error() {
    let o = ftpi(&["group", "info", "no/such/file.grp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
}
