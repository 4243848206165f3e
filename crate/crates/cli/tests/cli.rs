use std::path::Path;
use std::process::{Command, Output};

fn occ(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_occ")).args(args).output().expect("run occ")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn assert_single_line_error(out: &Output, code: i32) {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", stderr(out));
    let err = stderr(out);
    assert_eq!(err.trim_end().lines().count(), 1, "diagnostic: {err:?}");
}

fn data_rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path).unwrap().lines().skip(2).map(str::to_owned).collect()
}

#[test]
fn simulate_writes_one_row_per_slot_and_policy() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let args = [
        "simulate",
        "--n",
        "4",
        "--k",
        "4",
        "--m",
        "1",
        "--dist",
        "zipf:1",
        "--policies",
        "tracking,oracle",
        "--horizon",
        "100",
        "--trials",
        "10",
        "--seed",
        "1",
        "--out",
    ];
    let result = occ(&[&args[..], &[out.to_str().unwrap()]].concat());
    assert!(result.status.success(), "{}", stderr(&result));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# config: n=4 k=4 m=1"));
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "t,policy,mean_rate,mean_cum_regret,stderr_cum_regret,mean_switches"
    );
    assert_eq!(data_rows(&out).len(), 200);
}

#[test]
fn simulate_is_deterministic_given_seed() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = occ(&[
            "simulate",
            "--n",
            "5",
            "--k",
            "3",
            "--m",
            "2",
            "--horizon",
            "30",
            "--trials",
            "4",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        std::fs::read_to_string(path).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn lfu_with_fractional_cache_is_rejected() {
    let out = occ(&["simulate", "--n", "4", "--k", "2", "--m", "1.5", "--policies", "lfu"]);
    assert_single_line_error(&out, 2);
}

#[test]
fn bit_level_beyond_cap_exits_3() {
    let out = occ(&[
        "simulate",
        "--n",
        "30",
        "--k",
        "25",
        "--m",
        "2",
        "--rate-mode",
        "bit",
        "--horizon",
        "2",
        "--trials",
        "1",
    ]);
    assert_single_line_error(&out, 3);
}

#[test]
fn large_k_defaults_to_analytic() {
    let out = occ(&["simulate", "--n", "30", "--k", "25", "--m", "2", "--horizon", "2", "--trials", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("rate_mode=analytic"));
}

#[test]
fn bad_flags_exit_2() {
    assert_single_line_error(&occ(&["simulate", "--bogus"]), 2);
    assert_single_line_error(
        &occ(&["simulate", "--n", "4", "--k", "2", "--m", "1", "--dist", "pareto:1"]),
        2,
    );
    assert_single_line_error(&occ(&["simulate", "--n", "4", "--k", "2", "--m", "1", "--trials", "0"]), 2);
    assert_single_line_error(&occ(&["simulate", "--n", "4", "--k", "2", "--m", "9"]), 2);
    assert_single_line_error(&occ(&["nonsense"]), 2);
}

#[test]
fn bounds_report_with_lower_k_o() {
    let out = occ(&["bounds", "--k", "4", "--m", "1", "--dist", "probs:0.4,0.35,0.15,0.10", "--ko", "lb"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("a             247.845"), "{text}");
    assert!(text.contains("k_o_upper     2\n"), "{text}");
}

#[test]
fn bounds_csv_is_stable() {
    let args = ["bounds", "--n", "20", "--k", "10", "--m", "2", "--dist", "zipf:1", "--format", "csv"];
    let first = occ(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert_eq!(stdout(&first), stdout(&occ(&args)));
    assert!(stdout(&first).starts_with("k_o_upper,k_lb,k_o_used,a,b,first_step,regret_bound,switch_bound\n"));
}

#[test]
fn bounds_at_threshold_tie_exit_4() {
    let out = occ(&["bounds", "--k", "2", "--m", "1", "--dist", "probs:0.5,0.5"]);
    assert_single_line_error(&out, 4);
    assert!(stderr(&out).contains("inapplicable"));
}

#[test]
fn lowerbound_with_verification() {
    let out = occ(&["lowerbound", "--n", "4", "--k", "5", "--m", "1", "--a", "6", "--b", "12", "--verify"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("bound         0.360674"), "{text}");
    assert!(text.contains("gap           0.333333"), "{text}");
    assert!(text.contains("kl_per_slot   0.231049"), "{text}");
    assert!(text.contains("verify: PASS (15 subsets"), "{text}");
}

#[test]
fn lowerbound_sixteen_files_enumerates_everything() {
    let out =
        occ(&["lowerbound", "--n", "16", "--k", "20", "--m", "1", "--a", "20", "--b", "80", "--verify"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("verify: PASS (65535 subsets"));
}

#[test]
fn lowerbound_invalid_pair_exit_2() {
    assert_single_line_error(
        &occ(&["lowerbound", "--n", "4", "--k", "5", "--m", "1", "--a", "12", "--b", "6"]),
        2,
    );
    assert_single_line_error(
        &occ(&["lowerbound", "--n", "3", "--k", "5", "--m", "1", "--a", "6", "--b", "12"]),
        2,
    );
}

#[test]
fn verify_decode_modes() {
    let pass = occ(&["verify-decode", "--trials", "300", "--seed", "4"]);
    assert!(pass.status.success());
    assert!(stdout(&pass).contains("0 failures: PASS"));

    let vacuous = occ(&["verify-decode", "--trials", "0"]);
    assert!(vacuous.status.success());
    assert!(stdout(&vacuous).contains("PASS"));

    let corrupt = occ(&["verify-decode", "--trials", "100", "--corrupt"]);
    assert_single_line_error(&corrupt, 1);
    assert!(stdout(&corrupt).contains("FAIL"));
}

#[test]
fn ingest_ranks_counts() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("counts.csv");
    let output = dir.path().join("ranked.csv");
    std::fs::write(&input, "file_id,count\n7,3\n2,1\n").unwrap();
    let out = occ(&["ingest", "--input", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(std::fs::read_to_string(&output).unwrap(), "rank,prob,orig_id\n1,0.75,7\n2,0.25,2\n");

    std::fs::write(&input, "5,9\n").unwrap();
    let single = occ(&["ingest", "--input", input.to_str().unwrap()]);
    assert_eq!(stdout(&single), "rank,prob,orig_id\n1,1,5\n");

    std::fs::write(&input, "1,0\n2,0\n").unwrap();
    assert_single_line_error(&occ(&["ingest", "--input", input.to_str().unwrap()]), 2);
}

#[test]
fn counts_distribution_drives_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let counts = dir.path().join("counts.csv");
    std::fs::write(&counts, "10,50\n11,30\n12,15\n13,5\n").unwrap();
    let dist = format!("counts:{}", counts.display());
    let out = occ(&["simulate", "--k", "3", "--m", "1", "--dist", &dist, "--horizon", "5", "--trials", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("n=4 k=3"));
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# lower-bound example\nn=4\nk=5\nm=1\na=6\nb=12\nverify=true\n").unwrap();
    let out = occ(&["lowerbound", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("verify: PASS"));

    let overridden = occ(&["lowerbound", "--config", cfg.to_str().unwrap(), "--b", "6"]);
    assert_single_line_error(&overridden, 2);

    assert_single_line_error(&occ(&["lowerbound", "--config", "/nonexistent/run.cfg"]), 2);
}
