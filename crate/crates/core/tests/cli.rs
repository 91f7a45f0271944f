use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use nrsec::scenario::{emit_results, parse_scenario, run_scenario, ResultTable};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn nrsec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nrsec")).args(args).output().expect("spawn nrsec")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn read_table(bytes: &[u8]) -> ResultTable {
    let mut r = csv::Reader::from_reader(bytes);
    let header = r.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    ResultTable { header, rows }
}

#[test]
fn run_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hd.csv");
    let o = nrsec(&["run", scenario("hd_fd_sweep.toml").to_str().unwrap(), "--out", out.to_str().unwrap(), "--trials", "2000"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = read_table(&std::fs::read(&out).unwrap());
    assert_eq!(table.rows.len(), 9);
    let fd = table.column("miss_rate_fd").unwrap();
    let hd = table.column("miss_rate_hd").unwrap();
    assert!(fd.iter().zip(&hd).all(|(f, h)| f >= h));
}

#[test]
fn stdout_when_no_out_path() {
    let o = nrsec(&["run", scenario("d2d_relay.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let table = read_table(&o.stdout);
    assert_eq!(table.header[0], "d2d.gains.eve");
    let sr = table.column("secrecy_rate").unwrap();
    assert!(sr.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad_key = write(dir.path(), "bad.toml", "model = \"iot\"\n[iot]\nalpha = 2.0\nbeta = 1.0\n");
    let o = nrsec(&["run", &bad_key]);
    assert_eq!(o.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&o.stderr);
    assert!(msg.contains("bad.toml:4"), "{msg}");

    let preset = write(
        dir.path(),
        "preset.toml",
        "model = \"mimo\"\n[propagation]\nscenario_class = \"store\"\npath_loss_exponent = 4.0\n",
    );
    assert_eq!(nrsec(&["run", &preset]).status.code(), Some(1));
    assert_eq!(nrsec(&["run", dir.path().join("missing.toml").to_str().unwrap()]).status.code(), Some(1));
    let ok = scenario("iot_outage.toml");
    assert_eq!(nrsec(&["run", ok.to_str().unwrap(), "--trials", "0"]).status.code(), Some(1));
}

#[test]
fn runtime_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // a station density this low leaves every trial empty
    let empty = write(
        dir.path(),
        "empty.toml",
        "model = \"udn\"\n[monte_carlo]\ntrials = 50\n[udn]\nbs_density = 1e-12\nuser_density = 1e-3\neve_density = 1e-4\n\
         window = { x_min = -10.0, x_max = 10.0, y_min = -10.0, y_max = 10.0 }\n",
    );
    let o = nrsec(&["run", &empty]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));

    let unwritable = dir.path().join("no_such_dir").join("out.csv");
    let o = nrsec(&["run", scenario("d2d_relay.toml").to_str().unwrap(), "--out", unwritable.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_override_is_reproducible() {
    let path = scenario("iot_outage.toml");
    let p = path.to_str().unwrap();
    let a = nrsec(&["run", p, "--seed", "99", "--trials", "5000"]);
    let b = nrsec(&["run", p, "--seed", "99", "--trials", "5000"]);
    let c = nrsec(&["run", p, "--seed", "100", "--trials", "5000"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn rain_sweep_lowers_secrecy() {
    let text = std::fs::read_to_string(scenario("ar_ad_rain_sweep.toml")).unwrap();
    let table = run_scenario(&parse_scenario(&text, "rain").unwrap()).unwrap();
    let cs = table.column("secrecy_capacity").unwrap();
    let fav = table.column("favorable").unwrap();
    assert!(cs.windows(2).all(|w| w[1] <= w[0]));
    assert!(fav.windows(2).all(|w| w[1] >= w[0]));
    assert_eq!(fav[0], 0.0);
    assert_eq!(*fav.last().unwrap(), 1.0);
}

#[test]
fn trace_file_lists_every_tti() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let text = format!(
        "model = \"mimo\"\n[monte_carlo]\ntrials = 100\n[attack]\nkind = \"hd_fd\"\nintervals = 4\ntrace = '{}'\ntrace_trials = 3\n",
        trace.display()
    );
    let cfg = write(dir.path(), "trace.toml", &text);
    assert_eq!(nrsec(&["run", &cfg]).status.code(), Some(0));
    let body = std::fs::read_to_string(&trace).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("trial,tti,actor,event,outcome"));
    // three TTIs per interval
    assert_eq!(lines.count(), 3 * 4 * 3);
}

#[test]
fn large_table_emits_quickly() {
    let table = ResultTable {
        header: (0..8).map(|i| format!("c{i}")).collect(),
        rows: (0..10_000).map(|r| (0..8).map(|c| (r * 8 + c) as f64 / 7.0).collect()).collect(),
    };
    let start = Instant::now();
    let mut buf = Vec::new();
    emit_results(&table, &mut buf).unwrap();
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert_eq!(read_table(&buf), table);
}
