use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_emitpair"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

struct Table {
    comments: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn column(&self, name: &str) -> Vec<f64> {
        let i = self.columns.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i]).collect()
    }
}

fn read_csv(path: &Path) -> Table {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let mut comments = Vec::new();
    let header = loop {
        let l = lines.next().unwrap();
        if let Some(c) = l.strip_prefix('#') {
            comments.push(c.trim().to_string());
        } else {
            break l;
        }
    };
    Table {
        comments,
        columns: header.split(',').map(String::from).collect(),
        rows: lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fig2_columns_and_sidecar() {
    let dir = scratch("fig2");
    let out = dir.join("curves.csv");
    let o = run(&["fig2", "--s", "0.7", "--t-max", "5", "--steps", "200", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_csv(&out);
    assert_eq!(t.columns, ["t", "boson_sup", "fermion_sup", "mix_boson", "mix_fermion", "mix_noexchange"]);
    assert_eq!(t.rows.len(), 200);
    assert!(t.comments.iter().any(|c| c.starts_with("config_sha256=")));
    assert!(t.comments.iter().any(|c| c.starts_with("config={")));
    let times = t.column("t");
    assert_eq!(times[0], 0.0);
    assert_eq!(*times.last().unwrap(), 5.0);
    assert!(times.windows(2).all(|w| w[1] > w[0]));
    // Curve value at t = 5 matches the exact rate.
    let expect = -f64::exp_m1(-1.768_217_311_733_206_8 * 5.0);
    assert!((t.column("boson_sup")[199] - expect).abs() < 1e-12);

    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("curves.json")).unwrap()).unwrap();
    let g = side["fermion"]["rates"]["gamma_sup"].as_f64().unwrap();
    assert!((g - 1.927_480_465_027_634_8).abs() < 1e-9);
    assert_eq!(side["config"]["s"].as_f64(), Some(0.7));
    let hash = side["config_sha256"].as_str().unwrap();
    assert!(t.comments.contains(&format!("config_sha256={hash}")));
}

#[test]
fn fig2_exchange_off_columns() {
    let out = scratch("fig2_off").join("curves.csv");
    let o = run(&["fig2", "--mixture-exchange", "off", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let t = read_csv(&out);
    assert_eq!(t.columns, ["t", "boson_sup", "fermion_sup", "mix_noexchange"]);
}

#[test]
fn fig2_unit_overlap_is_degenerate() {
    let out = scratch("fig2_one").join("curves.csv");
    let o = run(&["fig2", "--s", "1.0", "--out", path_str(&out)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero-norm"));
    assert!(!out.exists());
}

#[test]
fn fig2_zero_overlap_erases_statistics() {
    let out = scratch("fig2_zero").join("curves.csv");
    assert_eq!(code(&run(&["fig2", "--s", "0", "--out", path_str(&out)])), 0);
    let t = read_csv(&out);
    for (b, f) in t.column("boson_sup").iter().zip(t.column("fermion_sup")) {
        assert!((b - f).abs() <= 1e-12);
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = scratch("determinism");
    for cmd in [&["fig2", "--s", "0.4"][..], &["scan", "--points", "7"], &["scene", "--dim", "2"]] {
        let mut texts = Vec::new();
        for i in 0..2 {
            let out = dir.join(format!("run{i}.csv"));
            let mut args = cmd.to_vec();
            args.extend(["--out", path_str(&out)]);
            assert_eq!(code(&run(&args)), 0);
            texts.push((std::fs::read(&out).unwrap(), std::fs::read(out.with_extension("json")).unwrap()));
        }
        assert!(texts[0] == texts[1], "{cmd:?} output differs between runs");
    }
    let a = dir.join("o1.json");
    let b = dir.join("o2.json");
    assert_eq!(code(&run(&["oracle", "--seeds", "5", "--out", path_str(&a)])), 0);
    assert_eq!(code(&run(&["oracle", "--seeds", "5", "--out", path_str(&b)])), 0);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn scan_ordering() {
    let out = scratch("scan").join("scan.csv");
    let o = run(&["scan", "--s-from", "0", "--s-to", "0.9", "--points", "10", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let t = read_csv(&out);
    assert_eq!(t.rows.len(), 10);
    assert_eq!(
        t.columns,
        [
            "s",
            "boson_sup",
            "fermion_sup",
            "mix_boson_psi",
            "mix_boson_phi",
            "mix_fermion_psi",
            "mix_fermion_phi",
            "mix_noexchange",
            "fermion_gt_boson"
        ]
    );
    let s = t.column("s");
    let b = t.column("boson_sup");
    let f = t.column("fermion_sup");
    let flag = t.column("fermion_gt_boson");
    // Exact tie at s = 0, strict ordering everywhere else.
    assert_eq!(s[0], 0.0);
    assert!((f[0] - b[0]).abs() <= 1e-12);
    for i in 1..10 {
        assert!(f[i] > b[i], "s = {}", s[i]);
        assert_eq!(flag[i], 1.0);
    }
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(side["fermion_gt_boson_rows"], 9);
    assert_eq!(side["tied_rows"], 1);
}

#[test]
fn scene_example() {
    let out = scratch("scene").join("scene.csv");
    let o = run(&[
        "scene", "--separation", "2.0", "--sigma", "1.0", "--k", "1.0", "--omega", "0,0,1", "--dim", "3", "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_csv(&out);
    assert_eq!(t.columns.len(), 6);
    assert_eq!(t.rows.len(), 200);
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    let scene = &side["scene"];
    assert_eq!(scene["table"].as_array().unwrap().len(), 100);
    let min_eig = scene["validation"]["min_eigenvalue"].as_f64().unwrap();
    assert!(min_eig >= -1e-10);
    assert_eq!(side["config"]["omega"], serde_json::json!([0.0, 0.0, 1.0]));
    assert_eq!(side["config"]["beam"], serde_json::json!([1.0, 0.0, 0.0]));
}

#[test]
fn scene_direction_length_mismatch() {
    let out = scratch("scene_bad").join("scene.csv");
    assert_eq!(code(&run(&["scene", "--dim", "2", "--omega", "0,0,1", "--out", path_str(&out)])), 1);
}

#[test]
fn oracle_pass_and_fail() {
    let dir = scratch("oracle");
    let out = dir.join("report.json");
    let o = run(&["oracle", "--seeds", "100", "--tol", "1e-12", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["report"]["passed"], true);
    assert_eq!(report["report"]["checks"].as_array().unwrap().len(), 10);

    // A zero tolerance cannot absorb rounding, so every check itemizes.
    let out = dir.join("strict.json");
    let o = run(&["oracle", "--seeds", "2", "--tol", "0", "--out", path_str(&out)]);
    assert_eq!(code(&o), 3);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let d = report["report"]["discrepancies"].as_array().unwrap();
    assert!(!d.is_empty());
    assert!(d.iter().all(|x| x["expansion"].is_array()));
}

#[test]
fn usage_errors_exit_one() {
    let out = scratch("usage").join("x.csv");
    let o = path_str(&out);
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["fig2", "--bogus"])), 1);
    assert_eq!(code(&run(&["fig2", "--s", "abc"])), 1);
    assert_eq!(code(&run(&["fig2", "--s", "1.5", "--out", o])), 1);
    assert_eq!(code(&run(&["fig2", "--mixture-exchange", "maybe"])), 1);
    assert_eq!(code(&run(&["scan", "--s-to", "1.0", "--out", o])), 1);
    assert_eq!(code(&run(&["oracle", "--tol", "-1", "--out", o])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn config_file_precedence() {
    let dir = scratch("config");
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, "s = 0.3\nsteps = 11\nmixture_exchange = \"off\"\n").unwrap();
    let out = dir.join("curves.csv");
    assert_eq!(code(&run(&["fig2", "--config", path_str(&cfg), "--steps", "21", "--out", path_str(&out)])), 0);
    let t = read_csv(&out);
    assert_eq!(t.rows.len(), 21);
    assert_eq!(t.columns.len(), 4);
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(side["config"]["s"].as_f64(), Some(0.3));
    assert_eq!(side["config"]["steps"], 21);
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = scratch("config_bad");
    let cfg = dir.join("bad.toml");
    std::fs::write(&cfg, "s = 0.3\nsigmaa = 2\n").unwrap();
    let o = run(&["fig2", "--config", path_str(&cfg), "--out", path_str(&dir.join("x.csv"))]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigmaa"));
    let o = run(&["fig2", "--config", path_str(&dir.join("missing.toml"))]);
    assert_eq!(code(&o), 1);
}
