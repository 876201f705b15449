use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_beamsat");

fn beamsat(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sweep_writes_csv_to_stdout() {
    let out = beamsat(&["sweep", "--ntx", "8", "--trials", "50", "--snr-db", "0:10:20", "--schemes", "abs"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "snr_db,n_tx,n_beams,label,se_mean,se_stderr,n_resampled");
    // 3 simulated rows + one saturation row.
    assert_eq!(lines.len(), 1 + 3 + 1);
    assert!(lines[4].starts_with(",8,2,AbsSaturationBound,"));
    assert!(!text.contains('\r'));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bounds.csv");
    let out = beamsat(&["bounds", "--ntx", "16", "--snr-db", "30", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains(",16,2,AbsSaturationBound,7.46"));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["sweep", "--trials", "0"][..],
        &["sweep", "--ntx", "abc"],
        &["sweep", "--snr-db", "30,20"],
        &["sweep", "--threads", "0"],
        &["sweep", "--schemes", "digital"],
        &["sweep", "--no-such-flag"],
        &["frobnicate"],
        &[],
        &["sweep", "--config", "/nonexistent/beamsat.conf"],
    ] {
        let out = beamsat(args);
        assert_eq!(code(&out), 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&beamsat(&["--help"])), 0);
    assert_eq!(code(&beamsat(&["sweep", "--help"])), 0);
    assert_eq!(code(&beamsat(&["--version"])), 0);
}

#[test]
fn validate_exit_status_reflects_checks() {
    // Off-reference grid: every check is informational.
    let out = beamsat(&["validate", "--ntx", "8", "--trials", "200", "--snr-db", "0,10"]);
    assert_eq!(code(&out), 0);
    let table = stdout(&out);
    assert!(table.contains("ABS vs saturation bound"));
    assert!(table.trim_end().ends_with("overall: PASS"));

    // ABS with two beams is still rising between 25 and 30 dB.
    let out = beamsat(&["validate", "--ntx", "16", "--trials", "2000", "--snr-db", "25,30", "--schemes", "abs"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        let path = dir.path().join(format!("t{threads}.csv"));
        let out = beamsat(&[
            "sweep", "--ntx", "16,32", "--nbeams", "2,3", "--trials", "500", "--seed", "9",
            "--schemes", "abs,hbs,nointerference", "--threads", threads, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        fs::read(path).unwrap()
    };
    let a = run("1");
    assert_eq!(a, run("1"));
    assert_eq!(a, run("8"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "# small run\nntx = 8,16\ntrials = 20\nsnr_db = 0:10:20\nschemes = hbs\nbounds = false\n").unwrap();
    let c = conf.to_str().unwrap();

    let text = stdout(&beamsat(&["sweep", "--config", c]));
    assert_eq!(text.lines().count(), 1 + 2 * 3);

    let text = stdout(&beamsat(&["sweep", "--config", c, "--ntx", "4", "--snr-db", "5"]));
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("5.0000000000000000e0,4,2,HBS,"));

    fs::write(&conf, "ntx 8\n").unwrap();
    assert_eq!(code(&beamsat(&["sweep", "--config", c])), 1);
}

#[test]
fn figure_presets_and_overrides() {
    let text = stdout(&beamsat(&["figure1", "--trials", "5"]));
    assert_eq!(text.lines().count(), 1 + 27 + 3);
    let text = stdout(&beamsat(&["figure3", "--trials", "5", "--snr-db", "30"]));
    assert!(text.contains(",32,5,HBS,") && text.contains(",32,3,ABS,"));
    let text = stdout(&beamsat(&["sweep", "--preset", "figure4", "--trials", "5", "--snr-db", "30"]));
    assert!(text.lines().skip(1).all(|l| l.contains(",128,5,")));
}
