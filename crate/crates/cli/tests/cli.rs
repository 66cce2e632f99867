use std::process::{Command, Output};

use twophase_lbm::harness::io;
use twophase_lbm::harness::{preset, TestId};

fn twophase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twophase")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn presets_print_reloadable_configs() {
    let o = twophase(&["presets", "--test", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(io::config_from_str(&body).unwrap(), preset(TestId::Test3).config);
}

#[test]
fn presets_write_one_file_per_case() {
    let dir = tempfile::tempdir().unwrap();
    let o = twophase(&["presets", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    for id in TestId::ALL {
        let c = io::read_config(&dir.path().join(format!("test{}.cfg", id.number()))).unwrap();
        assert_eq!(c, preset(id).config);
    }
}

#[test]
fn compare_writes_snapshots_report_and_charts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = twophase(&["compare", "--test", "1", "--scale", "1/10", "--snapshot-every", "10000", "--out", out, "--seedless"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("linf_rel.alpha_g"));
    for f in ["lbm.csv", "fd.csv", "report.txt", "config.cfg", "alpha_g.svg", "u_g.svg", "u_l.svg", "p_k.svg"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let lbm = io::snapshots_from_csv(&io::read_text(&dir.path().join("lbm.csv")).unwrap()).unwrap();
    let fd = io::snapshots_from_csv(&io::read_text(&dir.path().join("fd.csv")).unwrap()).unwrap();
    assert!(lbm.len() > 1);
    assert_eq!(lbm.iter().map(|s| s.step).collect::<Vec<_>>(), fd.iter().map(|s| s.step).collect::<Vec<_>>());
    assert_eq!(lbm[0].x, fd[0].x);
    assert_eq!(lbm[0].nx(), 20);
}

#[test]
fn csv_only_skips_report_and_charts() {
    let dir = tempfile::tempdir().unwrap();
    let o = twophase(&["run", "--engine", "lbm", "--scale", "1/10", "--csv-only", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(dir.path().join("lbm.csv").exists());
    for f in ["fd.csv", "report.txt", "config.cfg", "alpha_g.svg"] {
        assert!(!dir.path().join(f).exists(), "{f} written");
    }
}

#[test]
fn config_file_drives_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("case.cfg");
    let mut c = preset(TestId::Test2).config.scaled(0.1).unwrap();
    c.nt = 8000;
    io::write_text(&cfg, &io::config_to_string(&c)).unwrap();
    let out = dir.path().join("out");
    let o = twophase(&[
        "run", "--engine", "fd", "--config", cfg.to_str().unwrap(), "--scale", "1", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let snaps = io::snapshots_from_csv(&io::read_text(&out.join("fd.csv")).unwrap()).unwrap();
    assert_eq!(snaps.last().unwrap().step, 8000);
    assert_eq!(io::read_config(&out.join("config.cfg")).unwrap(), c);
}

#[test]
fn invalid_inputs_fail_with_a_message() {
    let o = twophase(&["run", "--scale", "3/7"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("scale"));
    let o = twophase(&["run", "--test", "5"]);
    assert!(!o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "nx = 10\nbogus = 1\n").unwrap();
    let o = twophase(&["run", "--config", cfg.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn converge_reports_orders() {
    let o = twophase(&["converge", "--test", "1", "--scales", "1/20,1/10,1/5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for f in ["alpha_g:", "u_g:", "u_l:", "p_k:"] {
        assert!(text.contains(f));
    }
    let o = twophase(&["converge", "--scales", "1/2,1"]);
    assert!(!o.status.success());
}
