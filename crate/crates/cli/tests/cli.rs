//! End-to-end tests of the binary: exit codes, output layout, and
//! byte-level determinism of re-runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_discord-scope")
}

struct Workdir(PathBuf);

impl Workdir {
    fn new(tag: &str) -> Workdir {
        let dir = std::env::temp_dir().join(format!(
            "discord-scope-test-{tag}-{}",
            std::process::id()
        ));
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).unwrap();
        Workdir(dir)
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.0.join(name);
        fs::write(&p, contents).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

const FIG2A: &str = r#"{"components": [
  {"w": 0.5, "a": {"theta": 0.0, "phi": 0.0}, "b": {"theta": 0.0, "phi": 0.0}},
  {"w": 0.5, "a": {"theta": 1.5707963267948966, "phi": 0.0}, "b": {"theta": 1.5707963267948966, "phi": 0.0}}
]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("DISCORD_SCOPE_OUT")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

#[test]
fn malformed_spec_exits_2_and_names_the_field() {
    let w = Workdir::new("badspec");
    let spec = w.file(
        "bad.json",
        r#"{"components": [{"w": "oops", "a": {"theta": 0, "phi": 0}, "b": {"theta": 0, "phi": 0}}]}"#,
    );
    let out = run(&[
        "quantify",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        w.path("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("components"), "stderr: {msg}");

    // Invalid weights also map to exit 2.
    let spec = w.file(
        "badweights.json",
        r#"{"components": [
          {"w": 0.6, "a": {"theta": 0, "phi": 0}, "b": {"theta": 0, "phi": 0}},
          {"w": 0.6, "a": {"theta": 1, "phi": 0}, "b": {"theta": 0, "phi": 0}}
        ]}"#,
    );
    let out = run(&[
        "quantify",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        w.path("o2").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);

    // No partial outputs may exist.
    assert!(!w.path("o").join("quantifier.json").exists());
    assert!(!w.path("o2").join("quantifier.json").exists());
}

#[test]
fn invalid_axes_exit_3() {
    let w = Workdir::new("axes");
    let spec = w.file("spec.json", FIG2A);
    for axes in ["alpha,alpha", "alpha,phi_c", "alpha"] {
        let out = run(&[
            "landscape",
            "--spec",
            spec.to_str().unwrap(),
            "--axes",
            axes,
            "--out",
            w.path("o").to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 3, "axes {axes}");
    }
}

#[test]
fn insufficient_phases_exit_6() {
    let w = Workdir::new("phases");
    let spec = w.file("spec.json", FIG2A);
    let out = run(&[
        "simulate",
        "--spec",
        spec.to_str().unwrap(),
        "--phases",
        "0.0,0.0,3.14159",
        "--shots",
        "100",
        "--out",
        w.path("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 6);
}

#[test]
fn tiny_landscape_has_four_rows() {
    let w = Workdir::new("tiny");
    let spec = w.file("spec.json", FIG2A);
    let out = run(&[
        "landscape",
        "--spec",
        spec.to_str().unwrap(),
        "--resolution",
        "2",
        "--out",
        w.path("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(w.path("o").join("landscape.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 5); // header + 2x2 grid
    assert_eq!(lines[0], "alpha,beta,visibility");
    assert!(w.path("o").join("manifest.json").exists());
}

fn read_bytes(p: &Path) -> Vec<u8> {
    fs::read(p).unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let w = Workdir::new("determinism");
    let spec = w.file("spec.json", FIG2A);
    for (dir, seed) in [("r1", "7"), ("r2", "7"), ("r3", "8")] {
        let out = run(&[
            "simulate",
            "--spec",
            spec.to_str().unwrap(),
            "--alpha",
            "1.0",
            "--beta",
            "0.9",
            "--shots",
            "5000",
            "--seed",
            seed,
            "--out",
            w.path(dir).to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(
        read_bytes(&w.path("r1").join("sweep.csv")),
        read_bytes(&w.path("r2").join("sweep.csv"))
    );
    assert_eq!(
        read_bytes(&w.path("r1").join("fit.json")),
        read_bytes(&w.path("r2").join("fit.json"))
    );
    assert_ne!(
        read_bytes(&w.path("r1").join("sweep.csv")),
        read_bytes(&w.path("r3").join("sweep.csv"))
    );

    // Analytic commands as well.
    for dir in ["q1", "q2"] {
        let out = run(&[
            "zerolines",
            "--spec",
            spec.to_str().unwrap(),
            "--beta-grid",
            "64",
            "--out",
            w.path(dir).to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(
        read_bytes(&w.path("q1").join("zerolines.csv")),
        read_bytes(&w.path("q2").join("zerolines.csv"))
    );
}

#[test]
fn env_var_sets_output_root() {
    let w = Workdir::new("envroot");
    let spec = w.file("spec.json", FIG2A);
    let root = w.path("root");
    let out = Command::new(bin())
        .args(["quantify", "--spec", spec.to_str().unwrap(), "--beta-grid", "32"])
        .env("DISCORD_SCOPE_OUT", &root)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let printed = String::from_utf8_lossy(&out.stdout);
    let dir = PathBuf::from(printed.trim());
    assert!(dir.starts_with(root.join("quantify")), "printed {printed}");
    assert!(dir.join("quantifier.json").exists());
}

#[test]
fn degrees_flag_converts_cli_angles() {
    let w = Workdir::new("degrees");
    let spec = w.file("spec.json", FIG2A);
    let run_with = |args: &[&str], dir: &str| {
        let out = run(&[&["simulate", "--spec", spec.to_str().unwrap()], args, &["--shots", "1000", "--out", w.path(dir).to_str().unwrap()]].concat());
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    };
    run_with(&["--alpha", "90", "--degrees"], "deg");
    run_with(&["--alpha", "1.5707963267948966"], "rad");
    assert_eq!(
        read_bytes(&w.path("deg").join("sweep.csv")),
        read_bytes(&w.path("rad").join("sweep.csv"))
    );
}

#[test]
fn compare_sweeps_a_family() {
    let w = Workdir::new("family");
    let family = w.file(
        "family.json",
        r#"{"spec": {"components": [
             {"w": 0.5, "a": {"theta": 0, "phi": 0}, "b": {"theta": 0, "phi": 0}},
             {"w": 0.5, "a": {"theta": "theta", "phi": 0}, "b": {"theta": "theta", "phi": 0}}]},
            "sweep": {"symbol": "theta", "from": 0.0, "to": 3.141592653589793, "steps": 5}}"#,
    );
    let out = run(&[
        "compare",
        "--spec",
        family.to_str().unwrap(),
        "--beta-grid",
        "64",
        "--grid-n",
        "24",
        "--out",
        w.path("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(w.path("o").join("compare.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "theta,d_a,delta2_alpha,delta2_phi");
    assert_eq!(lines.len(), 6);
    // Endpoint rows carry (numerically) zero discord and quantifier.
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    let last: Vec<f64> = lines[5].split(',').map(|v| v.parse().unwrap()).collect();
    assert!(first[1] < 1e-6 && first[2] < 1e-10);
    assert!(last[1] < 1e-6 && last[2] < 1e-10);

    // Unknown symbol in the template is a spec error.
    let broken = w.file(
        "broken.json",
        r#"{"spec": {"components": [
             {"w": 1.0, "a": {"theta": "tau", "phi": 0}, "b": {"theta": 0, "phi": 0}}]},
            "sweep": {"symbol": "theta", "from": 0, "to": 1, "steps": 3}}"#,
    );
    let out = run(&[
        "compare",
        "--spec",
        broken.to_str().unwrap(),
        "--out",
        w.path("o2").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn discord_command_reports_known_values() {
    let w = Workdir::new("discordcmd");
    let spec = w.file("spec.json", FIG2A);
    let out = run(&[
        "discord",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        w.path("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(w.path("o").join("discord.json")).unwrap())
            .unwrap();
    let d_a = doc["d_a"].as_f64().unwrap();
    assert!(d_a > 0.14 && d_a < 0.15, "d_a = {d_a}");

    // Pure |uu> spec has no discord.
    let pure = w.file(
        "pure.json",
        r#"{"components": [{"w": 1.0, "a": {"theta": 0, "phi": 0}, "b": {"theta": 0, "phi": 0}}]}"#,
    );
    let out = run(&[
        "discord",
        "--spec",
        pure.to_str().unwrap(),
        "--out",
        w.path("o2").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(w.path("o2").join("discord.json")).unwrap())
            .unwrap();
    assert!(doc["d_a"].as_f64().unwrap() <= 1e-6);
}
