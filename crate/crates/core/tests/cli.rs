use std::fs;
use std::process::{Command, Output};

use zckit::io::{read_sequence_csv, read_sequence_json, write_json, write_sequence_csv};
use zckit::number_theory::is_odd_prime;
use zckit::{LegendreTable, PrimeModulus};

fn zckit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zckit"))
        .args(args)
        .env_remove("ZCKIT_TABLE_DIR")
        .output()
        .expect("spawn zckit")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn gen_seven() {
    let out = zckit(&["gen", "--n", "7", "--u", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    let seq = read_sequence_csv(text.as_bytes()).unwrap();
    assert_eq!(seq.len(), 7);
    // x_1[1] = exp(-j2π/7)
    let expected = num_complex::Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / 7.0);
    assert!((seq[1] - expected).norm() < 1e-15);
}

#[test]
fn gen_rejects_non_coprime_root() {
    let out = zckit(&["gen", "--n", "6", "--u", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn gen_json_839() {
    let out = zckit(&["gen", "--n", "839", "--u", "25", "--format", "json"]);
    assert!(out.status.success());
    let doc = read_sequence_json(out.stdout.as_slice()).unwrap();
    assert_eq!((doc.n_zc, doc.u, doc.q), (839, 25, 0));
    assert_eq!(doc.samples.len(), 839);
    let mut again = Vec::new();
    write_json(&mut again, &doc).unwrap();
    assert_eq!(again, out.stdout);
}

#[test]
fn csv_file_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.csv");
    let out = zckit(&[
        "gen",
        "--n",
        "139",
        "--u",
        "25",
        "--q",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let original = fs::read(&path).unwrap();
    let seq = read_sequence_csv(original.as_slice()).unwrap();
    let mut again = Vec::new();
    write_sequence_csv(&mut again, &seq).unwrap();
    assert_eq!(again, original);
}

#[test]
fn verify_all_small_primes() {
    for n in (3..=139).filter(|&n| is_odd_prime(n)) {
        let out = zckit(&["verify", "--n", &n.to_string()]);
        let report = json(&out);
        assert_eq!(out.status.code(), Some(0), "N={n}: {report}");
        assert_eq!(report["pass"], true);
        assert_eq!(report["schema_version"], 1);
    }
}

#[test]
fn verify_composite_skips_spectral_checks() {
    let out = zckit(&["verify", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let checks = report["checks"].as_array().unwrap();
    let by_name = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap().clone();
    assert_eq!(by_name("dft_closed_vs_naive")["skipped"], "not prime");
    assert_eq!(by_name("dft_zero_closed_form")["skipped"], "not prime");
    assert!(by_name("cross_correlation_flat").get("skipped").is_none());
    assert!(by_name("autocorrelation_delta").get("skipped").is_none());
}

#[test]
fn verify_rejects_tiny_length() {
    assert_eq!(zckit(&["verify", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn bench_needs_prime() {
    assert_eq!(zckit(&["bench", "--n", "8"]).status.code(), Some(2));
    assert_eq!(
        zckit(&["bench", "--n", "7", "--iterations", "10"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bench_report() {
    let out = zckit(&["bench", "--n", "31"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["iterations"], 100);
    assert_eq!(r["warmup"], 10);
    for key in [
        "zero_brute_ns",
        "zero_closed_ns",
        "full_naive_ns",
        "full_closed_ns",
    ] {
        assert!(r[key].as_f64().unwrap() > 0.0, "{key}");
    }
}

#[test]
fn dft_formats() {
    let out = zckit(&["dft", "--n", "7", "--u", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("k,re,im\n0,2.0685316697713"));
    assert_eq!(text.lines().count(), 8);

    let out = zckit(&[
        "dft", "--n", "11", "--u", "3", "--method", "chi", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["method"], "chi");
    assert_eq!(doc["coefficients"].as_array().unwrap().len(), 11);

    let out = zckit(&["dft", "--n", "9", "--u", "2", "--method", "naive"]);
    assert!(out.status.success());
}

#[test]
fn dft_compare_839() {
    let out = zckit(&["dft", "--n", "839", "--u", "25", "--compare"]);
    assert!(out.status.success());
    let r = json(&out);
    assert!(r["max_rel_error"].as_f64().unwrap() <= 1e-8, "{r}");
}

#[test]
fn table_written_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.zclt");
    let out = zckit(&["table", "--n", "139", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["payload_bits"], 138);
    let bytes = fs::read(&path).unwrap();
    let table = LegendreTable::from_bytes(&bytes).unwrap();
    assert_eq!(table, LegendreTable::build(PrimeModulus::new(139).unwrap()));
    assert_eq!(bytes.len(), 16 + 18);

    let cache = dir.path().join("cache");
    let out = Command::new(env!("CARGO_BIN_EXE_zckit"))
        .args(["table", "--n", "13"])
        .env("ZCKIT_TABLE_DIR", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache.join("legendre_13.zclt").exists());

    let out = Command::new(env!("CARGO_BIN_EXE_zckit"))
        .args(["dft", "--n", "17", "--u", "5"])
        .env("ZCKIT_TABLE_DIR", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache.join("legendre_17.zclt").exists());

    assert_eq!(zckit(&["table", "--n", "13"]).status.code(), Some(2));
    assert_eq!(
        zckit(&["table", "--n", "15", "-o", "x.zclt"]).status.code(),
        Some(2)
    );
}

#[test]
fn table_io_error() {
    let out = zckit(&["table", "--n", "13", "-o", "/nonexistent/dir/t.zclt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn wave_and_corr() {
    let out = zckit(&[
        "wave",
        "--n",
        "13",
        "--u",
        "5",
        "--oversampling",
        "4",
        "--period",
        "2e-3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 52);
    assert!(text.starts_with("t,re,im\n0.0000000000000000e0,"));

    let out = zckit(&[
        "wave",
        "--n",
        "12",
        "--u",
        "5",
        "--kind",
        "chirp",
        "--oversampling",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1 + 24);

    let out = zckit(&["corr", "--n", "13", "--u", "2", "--v", "5"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let abs: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((abs - 13f64.sqrt()).abs() < 1e-12);
    }
}
