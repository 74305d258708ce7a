//! End-to-end checks of the `ssp` binary: output schemas, exit codes, and
//! cross-mode agreement.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ssp")
}

struct Workdir {
    dir: PathBuf,
}

impl Workdir {
    fn new(tag: &str) -> Workdir {
        let dir = std::env::temp_dir().join(format!("ssp-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Workdir { dir }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.dir).ok();
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const DEMO: &str = "ABCD\nCDEF\nEFGH\n";

#[test]
fn solve_demo_classical_json_schema() {
    let w = Workdir::new("schema");
    let input = w.file("demo.txt", DEMO);
    let v = run_json(&["solve", "--input", arg(&input)]);

    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    let mut expected =
        vec!["superstring", "length", "path", "weight", "mode", "alpha", "seed", "queries", "filtered"];
    expected.sort_unstable();
    assert_eq!(keys, expected);
    assert_eq!(v["superstring"], "ABCDEFGH");
    assert_eq!(v["length"], 8);
    assert_eq!(v["weight"], 4);
    assert_eq!(v["mode"], "classical");
    assert_eq!(v["alpha"], 0.055);
    assert_eq!(v["path"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["filtered"], serde_json::json!([]));
    let queries = v["queries"].as_object().unwrap();
    let mut qkeys: Vec<&str> = queries.keys().map(|k| k.as_str()).collect();
    qkeys.sort_unstable();
    assert_eq!(qkeys, ["classical_entries", "per_level", "quantum_charged"]);
    let levels = queries["per_level"].as_object().unwrap();
    let mut lkeys: Vec<&str> = levels.keys().map(|k| k.as_str()).collect();
    lkeys.sort_unstable();
    assert_eq!(lkeys, ["final", "middle", "nested"]);
    assert_eq!(queries["quantum_charged"], 0);

    // Field order is stable in the emitted bytes even though Value reorders.
    let raw = run(&["solve", "--input", arg(&input)]);
    let text = String::from_utf8(raw.stdout).unwrap();
    assert!(text.starts_with("{\"superstring\":"), "{text}");
}

#[test]
fn solve_modes_agree_on_length_and_weight() {
    let w = Workdir::new("modes");
    let input = w.file("demo.txt", DEMO);
    let classical = run_json(&["solve", "--input", arg(&input), "--mode", "classical"]);
    let hybrid = run_json(&["solve", "--input", arg(&input), "--mode", "hybrid"]);
    let brute = run_json(&["solve", "--input", arg(&input), "--mode", "brute"]);
    assert_eq!(classical["length"], hybrid["length"]);
    assert_eq!(classical["weight"], hybrid["weight"]);
    assert_eq!(classical["length"], brute["length"]);
    assert_eq!(hybrid["mode"], "hybrid");
}

#[test]
fn solve_text_format() {
    let w = Workdir::new("text");
    let input = w.file("demo.txt", DEMO);
    let out = run(&["solve", "--input", arg(&input), "--out", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("superstring: ABCDEFGH"));
    assert!(text.contains("length: 8"));
    assert!(text.contains("weight: 4"));
}

#[test]
fn filtering_reports_original_indices() {
    let w = Workdir::new("filter");
    let input = w.file("dup.txt", "AB\nAB\nABC\n");
    let v = run_json(&["solve", "--input", arg(&input)]);
    assert_eq!(v["superstring"], "ABC");
    assert_eq!(v["path"], serde_json::json!([2]));
    assert_eq!(v["filtered"], serde_json::json!([0, 1]));
}

#[test]
fn exit_codes() {
    let w = Workdir::new("exits");

    // 2: malformed instance (blank line, bad charset, missing content).
    let blank = w.file("blank.txt", "AB\n\nCD\n");
    assert_eq!(run(&["solve", "--input", arg(&blank)]).status.code(), Some(2));
    let bad = w.file("bad.txt", "AB\nC-D\n");
    assert_eq!(run(&["solve", "--input", arg(&bad)]).status.code(), Some(2));

    // 3: oracle limit for brute mode at n = 11.
    let eleven: String = (0..11).map(|i| format!("A{i}B{i}\n")).collect();
    let eleven = w.file("eleven.txt", &eleven);
    assert_eq!(
        run(&["solve", "--input", arg(&eleven), "--mode", "brute"]).status.code(),
        Some(3)
    );

    // 4: size limit (hybrid cap).
    let twenty: String = (0..19).map(|i| format!("A{i:02}B\n")).collect();
    let twenty = w.file("many.txt", &twenty);
    assert_eq!(
        run(&["solve", "--input", arg(&twenty), "--mode", "hybrid"]).status.code(),
        Some(4)
    );

    // 2: invalid flag values.
    let demo = w.file("demo.txt", DEMO);
    assert_eq!(
        run(&["solve", "--input", arg(&demo), "--alpha", "1.5"]).status.code(),
        Some(2)
    );

    // gen rejects n = 0.
    assert_eq!(
        run(&["gen", "--n", "0", "--k", "3", "--out", arg(&w.path("x.txt"))])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_writes_expected_shape() {
    let w = Workdir::new("gen");
    let out = w.path("inst.txt");
    assert!(run(&[
        "gen", "--n", "3", "--k", "1", "--alphabet", "01", "--seed", "7", "--out",
        arg(&out)
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.len() == 1 && (l == &"0" || l == &"1")));
}

#[test]
fn bench_csv_schema_and_match() {
    let w = Workdir::new("bench");
    let out = w.path("bench.csv");
    assert!(run(&[
        "bench", "--n-range", "8,12", "--trials", "2", "--seed", "3", "--out",
        arg(&out)
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,alpha,trial,seed,opt_weight,classical_entries,quantum_charged,predicted_quantum,match"
    );
    assert_eq!(lines.len(), 5, "header + 4 rows");
    for row in &lines[1..] {
        assert!(row.ends_with(",true"), "predicted != measured in {row}");
    }
    let ns: Vec<&str> = lines[1..].iter().map(|r| r.split(',').next().unwrap()).collect();
    assert_eq!(ns, ["8", "8", "12", "12"], "rows sorted by (n, trial)");

    // Noisy mode appends a success column.
    let out2 = w.path("bench-noisy.csv");
    assert!(run(&[
        "bench", "--n-range", "8", "--trials", "2", "--noisy", "--seed", "3", "--out",
        arg(&out2)
    ])
    .status
    .success());
    let noisy = std::fs::read_to_string(&out2).unwrap();
    assert!(noisy.lines().next().unwrap().ends_with(",match,success"));

    // Empty range: header only.
    let out3 = w.path("empty.csv");
    assert!(run(&["bench", "--n-range", "", "--out", arg(&out3)]).status.success());
    assert_eq!(std::fs::read_to_string(&out3).unwrap().lines().count(), 1);
}

#[test]
fn assemble_fasta() {
    let w = Workdir::new("fasta");
    let fasta = w.file(
        "reads.fa",
        ">r1 sample read\nabcd\n>r2\nCDEF\n>r3\nEFGH\n",
    );
    let v = run_json(&["assemble", "--input", arg(&fasta)]);
    assert_eq!(v["superstring"], "ABCDEFGH");
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    assert_eq!(records[0]["id"], "r1");
    assert_eq!(records[0]["index"], 0);

    // Duplicate reads are filtered and reported.
    let dup = w.file("dup.fa", ">a\nACGT\n>b\nACGT\n>c\nGTAC\n");
    let v = run_json(&["assemble", "--input", arg(&dup)]);
    assert_eq!(v["filtered"], serde_json::json!([1]));

    // Bad characters exit 2; too many records exit 4.
    let bad = w.file("bad.fa", ">a\nAC*GT\n");
    assert_eq!(run(&["assemble", "--input", arg(&bad)]).status.code(), Some(2));
    let many: String = (0..12).map(|i| format!(">x{i}\nA{i}B{i}\n")).collect();
    let many = w.file("many.fa", &many);
    assert_eq!(
        run(&["assemble", "--input", arg(&many), "--mode", "brute"]).status.code(),
        Some(4)
    );
}

#[test]
fn hybrid_solve_reports_ledger() {
    let w = Workdir::new("ledger");
    let input = w.path("inst.txt");
    assert!(run(&[
        "gen", "--n", "8", "--k", "8", "--seed", "11", "--out", arg(&input)
    ])
    .status
    .success());
    let v = run_json(&["solve", "--input", arg(&input), "--mode", "hybrid"]);
    let q = &v["queries"];
    assert!(q["quantum_charged"].as_u64().unwrap() > 0);
    let sum = q["per_level"]["nested"].as_u64().unwrap()
        + q["per_level"]["middle"].as_u64().unwrap()
        + q["per_level"]["final"].as_u64().unwrap();
    assert_eq!(q["quantum_charged"].as_u64().unwrap(), sum);
    assert!(q["classical_entries"].as_u64().unwrap() > 0);
}
