//! Acceptance run: one line per criterion, `PASS` or `FAIL`, with timings.
//! Known failures are marked and do not change the exit status.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::*;
use ga_core::harness::conformance;
use ga_core::harness::paradox::{self, PARADOX_FUELS};
use ga_core::harness::{Config, Harness, Subject};
use ga_core::kernel::catalog::{catalog, eq_ti_general};
use ga_core::kernel::primrec::primrec_termination;
use ga_core::kernel::script::{check_script, emit_script};
use ga_core::reflection::{encode_judgment, encode_proof, proof_check_c};
use ga_core::{corpus, eval, parse, Assignment};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

struct Verdict {
    pass: bool,
    known: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, known: false, detail: detail.into() }
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

fn criterion1() -> Verdict {
    let dir = corpus_dir();
    let defs = dir.join("arith.gad");
    let start = Instant::now();
    for name in ["add", "sub", "even", "mult"] {
        let out = Command::new(env!("CARGO_BIN_EXE_ga"))
            .arg("check")
            .arg(dir.join(format!("{name}_total.gap")))
            .arg("--defs")
            .arg(&defs)
            .output()
            .expect("ga runs");
        let stdout = String::from_utf8_lossy(&out.stdout);
        if !out.status.success() || !stdout.contains(&format!("checked {name}_total:")) {
            return verdict(false, format!("ga check {name}_total.gap: {stdout}{}", String::from_utf8_lossy(&out.stderr)));
        }
    }
    let check_time = start.elapsed();
    let d = corpus::arith();
    for (name, script) in corpus::TERMINATION_SCRIPTS {
        let th = match primrec_termination(&d, d.index_of(name).expect("corpus name")) {
            Ok(th) => th,
            Err(e) => return verdict(false, format!("primrec {name}: {e}")),
        };
        if emit_script(&d, &format!("{name}_total"), &th.to_proof()) != script {
            return verdict(false, format!("primrec {name} does not regenerate the bundled script"));
        }
        let (st, checked) = &check_script(&d, script).expect("bundled script")[0];
        if !proof_check_c(&d, &encode_proof(&st.proof), &encode_judgment(checked.judgment())) {
            return verdict(false, format!("C rejects {name}_total"));
        }
    }
    verdict(
        check_time < Duration::from_secs(5),
        format!("4 scripts checked by `ga check` in {:.2}s; primrec regenerates each; C = 1 for each", check_time.as_secs_f64()),
    )
}

fn criterion2() -> Verdict {
    let d = corpus::arith();
    let rows = catalog(&d);
    let failing: Vec<String> = rows
        .iter()
        .filter(|e| !e.verified(&d))
        .map(|e| format!("{} {}", e.rule, e.expected.display(&d)))
        .collect();
    let steps: usize = rows.iter().map(|e| e.steps()).sum();
    let summary = format!("{} of {} rows built by tactic and re-checked ({} primitive steps)", rows.len() - failing.len(), rows.len(), steps);
    let general_only = failing.len() == 1 && failing[0].starts_with("=TI") && eq_ti_general(&d).is_err();
    if failing.is_empty() {
        return verdict(true, summary);
    }
    Verdict {
        pass: false,
        known: general_only,
        detail: format!(
            "{summary}; not derivable: {}; every primitive rule holds in a model where `a = b` has no value when a < b, where this row fails",
            failing.join(", ")
        ),
    }
}

fn criterion3() -> Verdict {
    let start = Instant::now();
    let d = corpus::arith();
    let probes = [("P(0)", "value:0"), ("add(2, 3)", "value:5"), ("0 = 0", "value:1"), ("0 = S(0)", "value:0"), ("~(0 = S(0))", "value:1")];
    for (src, want) in probes {
        let got = eval(&d, &Assignment::new(), &parse(src, &d).expect("probe"), 10_000).expect("closed").to_string();
        if got != want {
            return verdict(false, format!("{src}: {got}, expected {want}"));
        }
    }
    let defs = corpus::combined();
    let names = ga_core::harness::gen::Names::resolve(&defs).expect("bundled names");
    let rep = conformance::check(&defs, names, 10_000, 1);
    let t = start.elapsed();
    verdict(
        rep.passed() && t < Duration::from_secs(60),
        format!(
            "examples ok; {} random closed terms, {} with values, {} violations of determinism, fuel monotonicity or booleanness in {:.1}s",
            rep.terms,
            rep.values,
            rep.violations.len(),
            t.as_secs_f64()
        ),
    )
}

fn criterion4(h: &Harness) -> Verdict {
    let start = Instant::now();
    let cfg = Config { cases: 1000, domain: 5, fuel: 1000, seed: 1, ..Config::default() };
    let rep = h.run_all(&Subject::all(), &cfg);
    let t = start.elapsed();
    let bad: Vec<String> = rep.rules.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    let fired = |s: Subject| rep.rules.iter().find(|r| r.rule == s.name()).map_or(0, |r| r.counterexamples);
    let (classical, fold) = (fired(Subject::ClassicalImp), fired(Subject::LiteralFold));
    let fewest = rep.rules.iter().filter(|r| !r.canary).map(|r| r.premises_true).min().unwrap_or(0);
    verdict(
        bad.is_empty() && fewest >= 1000 && t < Duration::from_secs(600),
        format!(
            "{} primitive rules, >= {fewest} premise-true instances each, 0 counterexamples; classical ->I canary {classical} counterexamples, literal fold canary {fold}; {:.1}s{}",
            rep.rules.iter().filter(|r| !r.canary).count(),
            t.as_secs_f64(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(" | ")) }
        ),
    )
}

fn criterion5(h: &Harness) -> Verdict {
    let start = Instant::now();
    let rows = paradox::report(h, &PARADOX_FUELS);
    let t = start.elapsed();
    let bad: Vec<String> = rows.iter().filter(|r| !r.passed()).map(|r| r.line()).collect();
    let names: Vec<&str> = rows.iter().map(|r| r.name.as_str()).collect();
    verdict(
        bad.is_empty() && t < Duration::from_secs(300),
        format!(
            "{} have no value at fuel up to {}; eval_certify: NotValue; depth-3 search finds no bool(liar) or bool(curry); {:.1}s{}",
            names.join(", "),
            PARADOX_FUELS[3],
            t.as_secs_f64(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(" | ")) }
        ),
    )
}

fn criterion6(h: &Harness) -> Verdict {
    let start = Instant::now();
    if let Err(e) = pairing_bijective(10_000) {
        return verdict(false, format!("pairing: {e}"));
    }
    if let Err(e) = round_trips(10_000, 6) {
        return verdict(false, e);
    }
    let d = corpus::arith();
    let c = c_agreement(&d, 1_000, 6);
    if !c.disagreements.is_empty() {
        return verdict(false, format!("C disagrees with the kernel: {}", c.disagreements.join("; ")));
    }
    let points: Vec<u64> = (0..200).chain([1_000, 1_023, 1_024, 10_000, 1 << 20, 1 << 40]).collect();
    let laws = match eplus_laws(&h.reflection, &h.names, &points, 200_000) {
        Ok(n) => n,
        Err(e) => return verdict(false, e),
    };
    let (one, zero) = match planted_e(200_000) {
        Ok(r) => r,
        Err(e) => return verdict(false, e),
    };
    if value(&one) != Some(1) || value(&zero) != Some(0) {
        return verdict(false, format!("E(x, x = S(0), 0) = {one}, E(x, S(x) = 0, 0) = {zero}"));
    }
    let t = start.elapsed();
    verdict(
        t < Duration::from_secs(600),
        format!(
            "pairing bijective on [0, 10^4]; 10^4 term/judgment/proof round trips; C = kernel on {} corpus proofs and {} mutants ({} still valid); {laws} E+ checks (base 0, monotone, exclusive with A+ of the negation); E(x, x = S(0), 0) = 1, E(x, S(x) = 0, 0) = 0; {:.1}s",
            c.valid,
            c.mutants,
            c.mutants_accepted,
            t.as_secs_f64()
        ),
    )
}

fn criterion7(h: &Harness) -> Verdict {
    let (rows, duals) = correspondence(&h.reflection, &h.names, 200_000);
    let disagree: Vec<&str> = rows.iter().filter(|r| !r.agrees()).map(|r| r.name.as_str()).collect();
    let dual_failures: Vec<String> = duals.iter().flat_map(|d| d.failures.iter().map(move |f| format!("{}: {f}", d.name))).collect();
    let derived: usize = duals.iter().map(|d| d.derived.len()).sum();
    let proved_exists = rows.iter().filter(|r| r.kernel_exists == Some(true)).count();
    verdict(
        disagree.is_empty() && dual_failures.is_empty(),
        format!(
            "{} predicates; {derived} dual derivations re-checked; {proved_exists} kernel ∃-theorems all evaluate to 1; kernel and reflection agree on every ∃ and ∀{}{}",
            rows.len(),
            if disagree.is_empty() { String::new() } else { format!("; disagree: {}", disagree.join(", ")) },
            if dual_failures.is_empty() { String::new() } else { format!("; duals: {}", dual_failures.join("; ")) }
        ),
    )
}

fn main() {
    let h = Harness::new();
    let criteria: Vec<(u32, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, Box::new(criterion1)),
        (2, Box::new(criterion2)),
        (3, Box::new(criterion3)),
        (4, Box::new(|| criterion4(&h))),
        (5, Box::new(|| criterion5(&h))),
        (6, Box::new(|| criterion6(&h))),
        (7, Box::new(|| criterion7(&h))),
    ];
    let mut unexpected = 0;
    for (n, run) in criteria {
        let start = Instant::now();
        let v = run();
        let mark = match (v.pass, v.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {n}: {mark} [{:.1}s] {}", start.elapsed().as_secs_f64(), v.detail);
        unexpected += (!v.pass && !v.known) as u32;
    }
    println!("acceptance: {unexpected} unexpected failures");
    std::process::exit(if unexpected == 0 { 0 } else { 1 });
}
