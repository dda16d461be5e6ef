use std::fs;
use std::process::{Command, Output};

fn somos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_somos")).args(args).env_remove("SOMOS_HOME").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn data_lines(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

#[test]
fn gen_unit_somos_six() {
    let o = somos(&["gen", "--order", "6", "--unit", "--range", "0..12"]);
    assert_eq!(code(&o), 0);
    let lines = data_lines(&o);
    assert_eq!(lines.last().unwrap(), "421/1");
    let o = somos(&["gen", "--order", "6", "--unit", "--range", "6..12", "--domain", "int"]);
    assert_eq!(&data_lines(&o)[1..], ["3", "5", "9", "23", "75", "421"]);
}

#[test]
fn gen_finite_field_seed() {
    let o = somos(&["gen", "--order", "6", "--p", "19", "--coeffs", "1,1,1", "--seed", "15,1,1,1,1,15", "--range", "0..20"]);
    assert_eq!(code(&o), 0);
    let vals: Vec<u64> = data_lines(&o)[1..].iter().map(|l| l.parse().unwrap()).collect();
    assert_eq!(vals.len(), 20);
    assert_eq!(&vals[..6], [15, 1, 1, 1, 1, 15]);
    assert!(vals.iter().all(|&v| v != 0 && v < 19));
}

#[test]
fn gen_gale_robinson() {
    let o = somos(&["gen", "--gr", "1,3,4", "--coeffs", "1,1,1", "--unit-seed", "--range", "0..11", "--domain", "int"]);
    assert_eq!(code(&o), 0);
    assert_eq!(&data_lines(&o)[1..], ["1", "1", "1", "1", "1", "1", "1", "1", "3", "5", "7"]);
}

#[test]
fn division_failure_reports_index() {
    let o = somos(&["gen", "--order", "4", "--coeffs", "1,1", "--seed", "1,1,1,0", "--range", "0..10"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("index"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&somos(&["gen", "--order", "6", "--coeffs", "1,1", "--unit-seed"])), 2);
    assert_eq!(code(&somos(&["frobnicate"])), 2);
    assert_eq!(code(&somos(&["rank", "--order", "6", "--unit", "--p", "20"])), 2);
    assert_eq!(code(&somos(&["--help"])), 0);
}

#[test]
fn certify_order_six() {
    let o = somos(&["certify", "--order", "6"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("summands=687 degree=24"));
    assert_eq!(s.matches("residual=0").count(), 2);
}

#[test]
fn certify_witness_order_six() {
    let o = somos(&["certify", "--order", "6", "--witness"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("5(x0-15)^6"));
    assert!(s.contains("option_diagonal nonzero=612/612"));
}

#[test]
fn invariant_dims() {
    let o = somos(&["invariants", "--order", "7", "--dims"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "40 / 3\n");
}

#[test]
fn rank_with_certificate() {
    let o = somos(&["rank", "--order", "6", "--unit", "--probe", "40"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "rank=4"));
    assert!(s.lines().any(|l| l.starts_with("certified=true")));
    assert_eq!(code(&somos(&["rank", "--order", "7", "--unit", "--expect", "4"])), 0);
    assert_eq!(code(&somos(&["rank", "--order", "7", "--unit", "--expect", "5"])), 1);
}

#[test]
fn laurent_sets() {
    let o = somos(&["laurent", "--order", "6", "--sets", "--k-max", "8"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("lambda mode=diamond set={x2}"));
    assert!(s.contains("theta k=8 set={x0,x1,x2,x3,x4,x5}"));
    assert!(s.contains("holds=true"));
}

#[test]
fn decimate_somos_six() {
    let o = somos(&["decimate", "--order", "6", "--unit", "--d", "2", "--n", "7..=9"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for (n, nonzero) in [(7, false), (8, true), (9, true)] {
        let line = s.lines().find(|l| l.starts_with(&format!("d=2 residue=* n={n} "))).unwrap();
        assert_eq!(!line.ends_with("dim=0"), nonzero, "{line}");
    }
}

#[test]
fn experiment_is_byte_identical() {
    let args = ["experiment", "--gr", "1,3,4", "--trials", "3", "--rng-seed", "11"];
    let a = somos(&args);
    let b = somos(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("modal_rank=8 agreement=3/3"));
}

#[test]
fn experiment_json() {
    let o = somos(&["experiment", "--gr", "1,2,3", "--trials", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["modal_rank"], 4);
    assert_eq!(v["records"].as_array().unwrap().len(), 2);
    assert_eq!(v["prediction"]["class"], "default");
}

#[test]
fn config_file_with_command_line_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "# probe settings\nprobe = 30\ntrials = 2\nno_certify = true\n").unwrap();
    let p = path.to_str().unwrap();
    let o = somos(&["experiment", "--config", p, "--gr", "1,3,4"]);
    assert_eq!(code(&o), 0);
    let head = stdout(&o).lines().next().unwrap().to_string();
    assert!(head.contains("trials=2 probe=30"), "{head}");
    assert!(head.contains("certify=false"), "{head}");
    let o = somos(&["experiment", "--config", p, "--gr", "1,3,4", "--probe", "24"]);
    assert!(stdout(&o).lines().next().unwrap().contains("probe=24"));
    fs::write(&path, "probe 30\n").unwrap();
    assert_eq!(code(&somos(&["experiment", "--config", p, "--gr", "1,3,4"])), 2);
}

#[test]
fn tables_resolve_under_home() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("data")).unwrap();
    let bundled = include_str!("../../core/data/phi6.txt");
    let tampered: String = bundled.lines().skip(1).map(|l| format!("{l}\n")).collect();
    fs::write(dir.path().join("data/phi6.txt"), tampered).unwrap();
    let run = |home: Option<&std::path::Path>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_somos"));
        c.args(["invariants", "--order", "6", "--check"]).env_remove("SOMOS_HOME");
        if let Some(h) = home {
            c.env("SOMOS_HOME", h);
        }
        c.output().unwrap()
    };
    assert_eq!(code(&run(None)), 0);
    let o = run(Some(dir.path()));
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("name=F6 rows=13 in_span=false"));
}
