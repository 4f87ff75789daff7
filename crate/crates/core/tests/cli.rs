use std::fs;
use std::process::Command;

fn lwfr(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lwfr")).args(args).output().expect("binary runs");
    (
        out.status.success(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn operators_csv() {
    let (ok, out, _) = lwfr(&["operators", "--degree", "2", "--points", "gl", "--correction", "radau"]);
    assert!(ok);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("operator,row,col,value"));
    let d_entries = out.lines().filter(|l| l.starts_with("d,")).count();
    assert_eq!(d_entries, 9);
    for l in lines {
        assert_eq!(l.split(',').count(), 4, "{l}");
        l.split(',').nth(3).unwrap().parse::<f64>().unwrap();
    }
}

#[test]
fn stability_json_and_region() {
    let dir = tempfile::tempdir().unwrap();
    let region = dir.path().join("region.csv");
    let (ok, out, err) = lwfr(&[
        "stability",
        "--degree",
        "1",
        "--points",
        "gl",
        "--correction",
        "radau",
        "--dissipation",
        "d2",
        "--two-d",
        "--region",
        region.to_str().unwrap(),
        "--resolution",
        "9",
    ]);
    assert!(ok, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], 1);
    assert_eq!(v["two_d"], true);
    let cfl = v["cfl"].as_f64().unwrap();
    assert!((cfl - 0.259).abs() <= 0.003, "{cfl}");
    let csv = fs::read_to_string(&region).unwrap();
    assert!(csv.starts_with("sigma1,sigma2,stable\n"));
    assert_eq!(csv.lines().count(), 1 + 81);
}

#[test]
fn stability_one_d() {
    let (ok, out, _) = lwfr(&["stability", "--degree", "2", "--dissipation", "d2"]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["cfl"].as_f64().unwrap() - 0.170).abs() <= 0.002);
    assert_eq!(v["table_cfl"].as_f64(), Some(0.170));
}

#[test]
fn solve_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "preset = \"advection1d_sin\"\ncells = 8\nfinal_time = 0.1\nsnapshots = [0.05]\n").unwrap();
    let outdir = dir.path().join("out");
    let (ok, out, err) = lwfr(&["solve", cfg.to_str().unwrap(), "--output-dir", outdir.to_str().unwrap()]);
    assert!(ok, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["time"].as_f64().unwrap() - 0.1).abs() < 1e-12);
    for f in ["solution_000.csv", "solution_final.csv", "meta.json"] {
        assert!(outdir.join(f).exists(), "{f}");
    }
    let sol = fs::read_to_string(outdir.join("solution_final.csv")).unwrap();
    assert!(sol.starts_with("x,u\n"));
    assert_eq!(sol.lines().count(), 1 + 8 * 4);
}

#[test]
fn convergence_prints_errors_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "preset = \"advection1d_sin\"\ndegree = 2\nfinal_time = 0.25\n").unwrap();
    let (ok, out, err) = lwfr(&["convergence", cfg.to_str().unwrap(), "--grids", "10,20"]);
    assert!(ok, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("grid,variable,l2,linf,eoc,steps,seconds"));
    let last: Vec<&str> = lines.last().unwrap().split(',').collect();
    let order: f64 = last[4].parse().unwrap();
    assert!(order > 2.5, "{order}");
}

#[test]
fn bad_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "preset = \"advection1d_sin\"\nunknown_key = 3\n").unwrap();
    let (ok, _, err) = lwfr(&["solve", cfg.to_str().unwrap()]);
    assert!(!ok);
    assert!(err.starts_with("error:"), "{err}");
    let (ok, _, _) = lwfr(&["stability", "--degree", "0"]);
    assert!(!ok);
}

#[test]
fn shipped_configs_parse() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            lwfr::driver::RunConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            n += 1;
        }
    }
    assert_eq!(n, lwfr::driver::PRESETS.len());
}
