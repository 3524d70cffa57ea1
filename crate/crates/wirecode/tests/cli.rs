use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;
use wirecode::cli::{main_with, Source};
use wirecode::model::{EmbedPlanDoc, ReportDoc, ScheduleDoc, SimulationDoc, WireCodeDoc};
use wirecode_core::code::compute_k;
use wirecode_core::graph::GeneralGraph;
use wirecode_core::verify::verify_all;

const REP3: &str = "# repetition\nZZI\nIZZ\n";
const FIVE: &str = "XZZXI\nIXZZX\nXIXZZ\nZXIXZ\n";
const SHOR: &str = "XXXXXXIII\nIIIXXXXXX\nZZIIIIIII\nIZZIIIIII\nIIIZZIIII\nIIIIZZIII\nIIIIIIZZI\nIIIIIIIZZ\n";

struct Run {
    code: u8,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["wirecode"];
    full.extend_from_slice(args);
    let code = main_with(full, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

struct Fixtures {
    dir: TempDir,
}

impl Fixtures {
    fn new() -> Self {
        let f = Fixtures {
            dir: TempDir::new().unwrap(),
        };
        f.write("rep3.stab", REP3);
        f.write("five.stab", FIVE);
        f.write("shor.stab", SHOR);
        let edges = |g: &GeneralGraph| g.edges().iter().map(|(u, v)| format!("{u} {v}\n")).collect::<String>();
        f.write("reg64.edges", &edges(&GeneralGraph::random_regular(64, 3, 7)));
        f.write("c6.edges", &edges(&GeneralGraph::cycle(6)));
        f.write("k2.edges", "0 1\n");
        f
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn p(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.path(name), text).unwrap();
    }

    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.path(name)).unwrap()
    }
}

fn load(path: &Path) -> Source {
    match Source::load(path) {
        Ok(s) => s,
        Err(e) => panic!("{}: {e}", path.display()),
    }
}

#[test]
fn build_reports_parameters() {
    let f = Fixtures::new();
    let r = run(&["build", &f.p("rep3.stab"), "--out", &f.p("rep3.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains(", 1, "), "{}", r.stdout);
    let r = run(&["build", &f.p("five.stab"), "--out", &f.p("five.json")]);
    assert!(r.stdout.contains("weight 3, degree 3"), "{}", r.stdout);
    let r = run(&[
        "build",
        &f.p("shor.stab"),
        "--out",
        &f.p("shor.json"),
        "--dot",
        &f.p("shor.dot"),
    ]);
    assert!(r.stdout.contains("8 checks processed, recovery ok"), "{}", r.stdout);
    assert!(f.read("shor.dot").contains("shape=box"));
    for name in ["rep3.json", "five.json", "shor.json"] {
        let Source::Wire(w) = load(&f.path(name)) else {
            panic!("{name} is not a wire code")
        };
        w.check_invariants().unwrap();
        assert_eq!(compute_k(w.subsystem()), 1);
    }
}

#[test]
fn build_without_out_writes_json_to_stdout() {
    let f = Fixtures::new();
    let r = run(&["build", &f.p("rep3.stab")]);
    assert_eq!(r.code, 0);
    let doc: WireCodeDoc = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc.format, "wirecode/1");
    assert!(r.stderr.starts_with("[["));
}

#[test]
fn layouts_reload_and_verify() {
    let f = Fixtures::new();
    for code in ["rep3", "five", "shor"] {
        for dim in ["2", "3"] {
            let out = format!("{code}-{dim}.json");
            let dot = format!("{code}-{dim}.dot");
            let r = run(&[
                "layout",
                &f.p(&format!("{code}.stab")),
                "--dim",
                dim,
                "--out",
                &f.p(&out),
                "--dot",
                &f.p(&dot),
            ]);
            assert_eq!(r.code, 0, "{}", r.stderr);
            let Source::Placed(p) = load(&f.path(&out)) else {
                panic!()
            };
            let report = verify_all(p.wire().input(), &p, 2);
            assert!(report.all_green(), "{code} dim {dim}: {:?}", report.rows());
            assert!(f.read(&dot).contains("pos="));
            let r = run(&["verify", &f.p(&out), "--wmax", "2"]);
            assert_eq!(r.code, 0, "{}", r.stdout);
        }
    }
}

#[test]
fn embeddings() {
    let f = Fixtures::new();
    let r = run(&[
        "embed",
        &f.p("five.stab"),
        "--graph",
        &f.p("reg64.edges"),
        "--out",
        &f.p("five-g.json"),
        "--plan",
        &f.p("five-plan.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(
        r.stdout.contains("congestion") && r.stdout.contains("expansion >="),
        "{}",
        r.stdout
    );
    let plan: EmbedPlanDoc = serde_json::from_str(&f.read("five-plan.json")).unwrap();
    plan.to_plan().unwrap();
    let Source::Placed(p) = load(&f.path("five-g.json")) else {
        panic!()
    };
    assert!(verify_all(p.wire().input(), &p, 1).all_green());

    let r = run(&[
        "embed",
        &f.p("rep3.stab"),
        "--graph",
        &f.p("c6.edges"),
        "--out",
        &f.p("rep-c6.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("expansion 2/3"), "{}", r.stdout);

    let r = run(&[
        "embed",
        &f.p("five.stab"),
        "--graph",
        &f.p("k2.edges"),
        "--out",
        &f.p("k2.json"),
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("distinct vertices"));
    let r = run(&[
        "embed",
        &f.p("five.stab"),
        "--graph",
        &f.p("k2.edges"),
        "--shared-vertices",
        "--out",
        &f.p("k2.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(&["verify", &f.p("k2.json"), "--wmax", "1"]);
    assert_eq!(r.code, 0, "{}", r.stdout);

    f.write("split.edges", "0 1\n1 2\n3 4\n4 5\n");
    let r = run(&["embed", &f.p("rep3.stab"), "--graph", &f.p("split.edges")]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("no path"), "{}", r.stderr);
}

#[test]
fn verify_exit_codes_and_report() {
    let f = Fixtures::new();
    for code in ["rep3", "five", "shor"] {
        let r = run(&[
            "verify",
            &f.p(&format!("{code}.stab")),
            "--wmax",
            "2",
            "--json",
            &f.p("report.json"),
        ]);
        assert_eq!(r.code, 0, "{code}: {}", r.stdout);
        assert!(r.stdout.contains("all green"));
        let doc: ReportDoc = serde_json::from_str(&f.read("report.json")).unwrap();
        assert!(doc.all_green && doc.k_match && doc.bound_ok);
    }
    let r = run(&["verify", &f.p("five.stab"), "--dim", "3", "--wmax", "1"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let r = run(&["verify", &f.p("rep3.stab"), "--graph", &f.p("c6.edges")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let r = run(&["verify", &f.p("rep3.stab"), "--dim", "2", "--graph", &f.p("c6.edges")]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_flags_a_broken_wire_code() {
    let f = Fixtures::new();
    run(&["build", &f.p("five.stab"), "--out", &f.p("five.json")]);
    let Source::Wire(w) = load(&f.path("five.json")) else {
        panic!()
    };
    let g = wirecode_core::verify::first_single_site_on_ancilla(&w).unwrap();
    let broken = w.remove_single_site(g).unwrap();
    f.write(
        "broken.json",
        &serde_json::to_string(&WireCodeDoc::from_wire(&broken)).unwrap(),
    );
    let r = run(&[
        "verify",
        &f.p("broken.json"),
        "--wmax",
        "2",
        "--json",
        &f.p("broken-report.json"),
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL"));
    let doc: ReportDoc = serde_json::from_str(&f.read("broken-report.json")).unwrap();
    assert_eq!(doc.d_wire_found, Some(1));
    assert!(doc.recovery_ok && !doc.all_green);
}

#[test]
fn schedule_and_simulation() {
    let f = Fixtures::new();
    let r = run(&["schedule", &f.p("five.stab"), "--out", &f.p("sched.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc: ScheduleDoc = serde_json::from_str(&f.read("sched.json")).unwrap();
    run(&["build", &f.p("five.stab"), "--out", &f.p("five.json")]);
    let Source::Wire(w) = load(&f.path("five.json")) else {
        panic!()
    };
    doc.validate(&w).unwrap();
    assert!(doc.rounds.len() >= 2);

    let sim = |code: &str, error: Option<&str>| {
        let mut args = vec![
            "simulate".to_string(),
            f.p(code),
            "--seed".into(),
            "3".into(),
            "--out".into(),
            f.p("sim.json"),
        ];
        if let Some(e) = error {
            args.push("--error".into());
            args.push(e.into());
        }
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = run(&refs);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let doc: SimulationDoc = serde_json::from_str(&f.read("sim.json")).unwrap();
        doc.validate(doc.expected.len()).unwrap();
        assert!(doc.matches);
        doc.syndrome
    };
    assert_eq!(sim("five.stab", None), vec![0, 0, 0, 0]);
    assert_eq!(sim("five.stab", Some("IIIXI")), vec![0, 1, 1, 0]);
    assert_eq!(sim("rep3.stab", Some("XII")), vec![1, 0]);
    assert_eq!(sim("five.json", Some("IIIXI")), vec![0, 1, 1, 0]);

    let r = run(&["simulate", &f.p("five.stab"), "--error", "XQ"]);
    assert_eq!(r.code, 2);
    let r = run(&["simulate", &f.p("five.stab"), "--error", "XX"]);
    assert_eq!(r.code, 2);
}

#[test]
fn input_errors() {
    let f = Fixtures::new();
    f.write("bad.stab", "ZZI\n# fine\nIZA\n");
    let r = run(&["build", &f.p("bad.stab")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    f.write("nc.stab", "XXI\nZII\n");
    let r = run(&["build", &f.p("nc.stab")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("anticommutes"), "{}", r.stderr);
    let r = run(&["build", &f.p("missing.stab")]);
    assert_eq!(r.code, 2);
    f.write("bad.edges", "0 1\n1 one\n");
    let r = run(&["embed", &f.p("rep3.stab"), "--graph", &f.p("bad.edges")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"));
    let r = run(&["layout", &f.p("rep3.stab"), "--dim", "1"]);
    assert_eq!(r.code, 2);
    let r = run(&["frobnicate"]);
    assert_eq!(r.code, 2);
    f.write("odd.json", "{\"format\": \"other/9\"}");
    let r = run(&["verify", &f.p("odd.json")]);
    assert_eq!(r.code, 2);
}

#[test]
fn outputs_are_deterministic() {
    let f = Fixtures::new();
    for args in [
        vec!["layout", "five.stab", "--dim", "3", "--seed", "4"],
        vec!["embed", "five.stab", "--graph", "reg64.edges", "--seed", "4"],
        vec!["simulate", "five.stab", "--error", "YIIII", "--seed", "4"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.contains('.') { f.p(a) } else { a.to_string() })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&refs);
        let b = run(&refs);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn binary_exit_codes() {
    let f = Fixtures::new();
    let bin = env!("CARGO_BIN_EXE_wirecode");
    let out = Command::new(bin).args(["verify", &f.p("rep3.stab")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["build", &f.p("nope.stab")]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["build", &f.p("rep3.stab")]).output().unwrap();
    let doc: WireCodeDoc = serde_json::from_slice(&out.stdout).unwrap();
    doc.to_wire().unwrap();
}
