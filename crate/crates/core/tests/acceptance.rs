//! Acceptance suite: one line per criterion, nonzero exit status if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use quiver_inv::invariant::RepScheme;
use quiver_inv::poly::{
    parse_polynomial, parse_polynomial_list, Budget, Ideal, MonomialOrder, Polynomial, Ring,
};
use quiver_inv::quiver::{parse_presentation, ParseOptions, Presentation};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn a1() -> Presentation {
    parse_presentation(
        &std::fs::read_to_string(data("a1.quiver")).unwrap(),
        &ParseOptions::default(),
    )
    .unwrap()
}

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

fn cli(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_quiver-inv"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        elapsed: start.elapsed(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).expect("json output")
}

fn polys_in(ring: &Ring, records: &Value) -> Vec<Polynomial> {
    records
        .as_array()
        .unwrap()
        .iter()
        .map(|r| parse_polynomial(ring, r["polynomial"].as_str().unwrap()).unwrap())
        .collect()
}

fn monic_set(polys: &[Polynomial]) -> BTreeSet<String> {
    polys.iter().map(|p| p.monic().to_string()).collect()
}

fn within(run: &Run, limit: Duration) {
    assert!(
        run.elapsed < limit,
        "took {:?}, limit {:?}",
        run.elapsed,
        limit
    );
}

fn representation_ideal() {
    let a1_path = data("a1.quiver");
    let run = cli(&[
        "kernel",
        a1_path.to_str().unwrap(),
        "--max-u",
        "0",
        "--max-w",
        "0",
        "--K",
        "",
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0);
    within(&run, Duration::from_secs(1));
    let scheme = RepScheme::new(&a1()).unwrap();
    let got = polys_in(scheme.ring(), &json(&run)["kernel"]);
    let displayed = parse_polynomial_list(
        scheme.ring(),
        &std::fs::read_to_string(data("ker_tau8.txt")).unwrap(),
    )
    .unwrap();
    assert_eq!(got.len(), 8);
    assert_eq!(monic_set(&got), monic_set(&displayed));
}

fn generator_table() {
    let a1_path = data("a1.quiver");
    let a1_path = a1_path.to_str().unwrap();
    let run = cli(&[
        "generators",
        a1_path,
        "--max-len",
        "2",
        "--select",
        "ec,fc,fd",
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0);
    within(&run, Duration::from_secs(1));
    let scheme = RepScheme::new(&a1()).unwrap();
    let got = polys_in(scheme.ring(), &json(&run)["generators"]);
    let table = parse_polynomial_list(
        scheme.ring(),
        &std::fs::read_to_string(data("table12.txt")).unwrap(),
    )
    .unwrap();
    assert_eq!(got, table);

    let run = cli(&["generators", a1_path, "--max-len", "2", "--format", "json"]);
    assert_eq!(run.code, 0);
    within(&run, Duration::from_secs(1));
    let all = json(&run);
    let records = all["generators"].as_array().unwrap();
    assert_eq!(records.len(), 16);
    let extra: BTreeSet<&str> = records
        .iter()
        .map(|r| r["word"].as_str().unwrap())
        .filter(|w| !["ec", "fc", "fd"].contains(w))
        .collect();
    assert_eq!(extra, BTreeSet::from(["ed"]));
}

fn elimination() {
    let a1_path = data("a1.quiver");
    let compare = data("a1_relations.txt");
    let run = cli(&[
        "present",
        a1_path.to_str().unwrap(),
        "--max-len",
        "2",
        "--select",
        "ec,fc,fd",
        "--compare",
        compare.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0, "default budget must suffice");
    within(&run, Duration::from_secs(600));
    let out = json(&run);
    assert_eq!(out["compare"], Value::Bool(true));
    assert_eq!(out["dictionary"].as_array().unwrap().len(), 12);
}

fn kernel_containment() {
    let a1_path = data("a1.quiver");
    let run = cli(&[
        "kernel",
        a1_path.to_str().unwrap(),
        "--max-u",
        "2",
        "--max-w",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0);
    let start = Instant::now();
    let scheme = RepScheme::new(&a1()).unwrap();
    let gens = polys_in(scheme.ring(), &json(&run)["kernel"]);
    assert!(!gens.is_empty());
    let budget = Budget::default();
    for g in &gens {
        assert!(
            scheme.restrict_tau(g, &budget).unwrap().is_zero(),
            "{g} is not in the representation ideal"
        );
    }
    assert!(run.elapsed + start.elapsed() < Duration::from_secs(120));
}

fn property_suites() {
    let a1_path = data("a1.quiver");
    let run = cli(&[
        "verify",
        a1_path.to_str().unwrap(),
        "--seed",
        "0",
        "--format",
        "json",
    ]);
    within(&run, Duration::from_secs(60));
    let report = json(&run);
    assert_eq!(report["seed"], 0);
    let checks = report["checks"].as_array().unwrap();
    for c in checks {
        assert_eq!(c["pass"], Value::Bool(true), "{c}");
    }
    let trials = |name: &str| {
        checks
            .iter()
            .find(|c| c["name"] == name)
            .unwrap_or_else(|| panic!("missing check {name}"))["trials"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(trials("product-law"), 50);
    assert_eq!(trials("trace-rotation"), 50);
    assert_eq!(trials("traversal-lemma"), 30);
    assert_eq!(trials("lift-independence"), 30);
    assert_eq!(trials("framed-correspondence"), 16);
    assert_eq!(trials("path-count"), 5);
    let scheme = RepScheme::new(&a1()).unwrap();
    let lusztig = scheme.lusztig_generators(2).unwrap().len() as u64;
    assert_eq!(trials("invariance-lusztig"), 20 * lusztig);
    assert_eq!(
        trials("invariance-kernel"),
        20 * trials("kernel-containment")
    );
    assert_eq!(run.code, 0);
}

fn empty_k_degeneration() {
    let a1_path = data("a1.quiver");
    let run = cli(&[
        "kernel",
        a1_path.to_str().unwrap(),
        "--max-u",
        "0",
        "--max-w",
        "0",
        "--K",
        "",
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0);
    let start = Instant::now();
    let scheme = RepScheme::new(&a1().with_frozen_names([]).unwrap()).unwrap();
    let kernel = Ideal::new(
        scheme.ring(),
        polys_in(scheme.ring(), &json(&run)["kernel"]),
    )
    .unwrap();
    assert!(kernel
        .equals(
            scheme.rep_ideal(),
            &MonomialOrder::DegRevLex,
            &Budget::default()
        )
        .unwrap());
    assert!(run.elapsed + start.elapsed() < Duration::from_secs(5));
}

fn determinism() {
    let first = cli(&["example-a1"]);
    let second = cli(&["example-a1"]);
    assert_eq!(first.code, 0);
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
}

fn main() {
    let criteria: [(&str, fn()); 7] = [
        (
            "1 representation ideal of the A1 example",
            representation_ideal,
        ),
        (
            "2 twelve-generator table and the four ed contractions",
            generator_table,
        ),
        (
            "3 elimination ideal equals the thirteen relations",
            elimination,
        ),
        (
            "4 kernel generators lie in the representation ideal",
            kernel_containment,
        ),
        ("5 property suites", property_suites),
        (
            "6 empty K gives back the representation ideal",
            empty_k_degeneration,
        ),
        (
            "7 example-a1 output is byte-identical across runs",
            determinism,
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
        if outcome.is_err() {
            failed += 1;
        }
        println!("criterion {name}: {verdict} ({:.2?})", start.elapsed());
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
