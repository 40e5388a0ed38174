use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use tempfile::TempDir;

fn hexlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexlab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn lines(n: usize) -> String {
    (0..n)
        .map(|i| format!("{}\n", (i * 37 % 64) as f64 / 10.0))
        .collect()
}

#[test]
fn dump_csv_and_json() {
    let csv = stdout(&hexlab(&["--format", "csv", "hexagrams", "dump"]));
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "position,code,lines,yang_count");
    assert_eq!(rows.len(), 65);
    assert_eq!(rows[1], "1,63,111111,6");
    assert_eq!(rows[2], "2,0,000000,0");

    let json: serde_json::Value = serde_json::from_str(&stdout(&hexlab(&[
        "hexagrams",
        "dump",
        "--ordering",
        "binary",
    ])))
    .unwrap();
    let entries = json["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 64);
    assert_eq!(entries[5]["code"], 5);
}

#[test]
fn surprise_profile_has_63_transitions() {
    let csv = stdout(&hexlab(&["--format", "csv", "surprise", "profile"]));
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "index,from_code,to_code,hamming,surprise");
    assert_eq!(rows.len(), 64);
    assert!(rows[1].starts_with("1,63,0,6,1.5606477"));
}

#[test]
fn schedule_lr_csv_and_amplitude_warning() {
    let out = hexlab(&[
        "--format",
        "csv",
        "schedule",
        "lr",
        "--profile",
        "kingwen",
        "--amplitude",
        "0.3",
        "--steps",
        "130",
    ]);
    let values: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 130);
    assert_eq!(values[0], values[63]);
    assert!(values.iter().all(|v| (0.7 - 1e-9..=1.3 + 1e-9).contains(v)));
    assert!(out.stderr.is_empty());

    let out = hexlab(&[
        "--format",
        "csv",
        "schedule",
        "lr",
        "--profile",
        "random",
        "--amplitude",
        "1.0",
        "--steps",
        "5",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn random_schedule_follows_global_seed() {
    let run = |seed: &str| {
        stdout(&hexlab(&[
            "--seed",
            seed,
            "--format",
            "csv",
            "schedule",
            "lr",
            "--profile",
            "random",
            "--amplitude",
            "0.3",
            "--steps",
            "63",
        ]))
    };
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn curriculum_map_csv() {
    let dir = TempDir::new().unwrap();
    let scores = write(&dir, "scores.csv", &lines(64));
    let csv = stdout(&hexlab(&[
        "--format",
        "csv",
        "curriculum",
        "map",
        "--scores",
        &scores,
        "--strategy",
        "easy-to-hard",
    ]));
    let mut positions: Vec<usize> = csv
        .lines()
        .map(|l| {
            let (b, p) = l.split_once(',').unwrap();
            assert!(b.parse::<usize>().unwrap() < 64);
            p.parse().unwrap()
        })
        .collect();
    assert_eq!(positions.len(), 64);
    positions.sort();
    assert_eq!(positions, (0..64).collect::<Vec<_>>());
}

#[test]
fn seeds_verdict_json() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "sweep.csv", "# val_bpb\n1.732\n1.756\n1.773\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&hexlab(&[
        "seeds",
        "analyze",
        "--input",
        &input,
        "--candidate",
        "1.785",
    ])))
    .unwrap();
    assert_eq!(json["verdict"]["classification"], "exceeds_noise_high");
    assert_eq!(json["summary"]["n"], 3);
}

#[test]
fn difficulty_metrics() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("tokens.bin");
    let tokens: Vec<u8> = [1u32, 2, 2, 3]
        .iter()
        .flat_map(|t| t.to_le_bytes())
        .collect();
    fs::write(&path, tokens).unwrap();
    let p = path.to_str().unwrap();
    let value = stdout(&hexlab(&[
        "difficulty",
        "--metric",
        "diversity",
        "--input",
        p,
    ]));
    assert_eq!(value.trim().parse::<f64>().unwrap(), 0.75);
    assert!(
        hexlab(&["difficulty", "--metric", "compression", "--input", p])
            .status
            .success()
    );
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(hexlab(&["hexagrams", "dump"]).status.code(), Some(0));

    let short = write(&dir, "short.csv", &lines(63));
    let out = hexlab(&[
        "curriculum",
        "map",
        "--scores",
        &short,
        "--strategy",
        "kingwen",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let flat = write(&dir, "flat.csv", &"0.5\n".repeat(20));
    assert_eq!(
        hexlab(&["ljung-box", "--input", &flat]).status.code(),
        Some(4)
    );

    let bad = Path::new("/nonexistent-dir/out.json");
    let out = hexlab(&["--out", bad.to_str().unwrap(), "hexagrams", "dump"]);
    assert_eq!(out.status.code(), Some(3));

    let out = hexlab(&["analyze", "ordering", "--mc-samples", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("dump.csv");
    let out = hexlab(&[
        "--format",
        "csv",
        "--out",
        target.to_str().unwrap(),
        "hexagrams",
        "dump",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(target)
        .unwrap()
        .starts_with("position,code"));
}

#[test]
fn quick_analysis_flags_three_properties() {
    let dir = TempDir::new().unwrap();
    let table = dir.path().join("table.csv");
    let start = Instant::now();
    let json: serde_json::Value = serde_json::from_str(&stdout(&hexlab(&[
        "analyze",
        "ordering",
        "--mc-samples",
        "1000",
        "--random-baseline",
        "100",
        "--table-csv",
        table.to_str().unwrap(),
    ])))
    .unwrap();
    assert!(start.elapsed().as_secs_f64() < 5.0);
    for mc in json["monte_carlo"].as_array().unwrap() {
        let pct = mc["percentile"].as_f64().unwrap();
        match mc["statistic"].as_str().unwrap() {
            "lag1_autocorrelation" => assert!(pct < 5.0, "{mc}"),
            _ => assert!(pct > 95.0, "{mc}"),
        }
    }
    assert!(fs::read_to_string(table).unwrap().lines().count() >= 4);
}
