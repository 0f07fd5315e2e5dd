use ga_core::eval::Semantics;
use ga_core::harness::paradox;
use ga_core::harness::{Config, Harness, Subject};
use ga_core::kernel::FIRST_QUANTIFIER_RULE;

fn small(seed: u64) -> Config {
    Config { cases: 25, domain: 3, fuel: 1000, seed, ..Config::default() }
}

#[test]
fn every_rule_survives_a_small_run() {
    let h = Harness::new();
    let rep = h.run_all(&Subject::all(), &small(2));
    assert_eq!(rep.rules.len(), 38);
    for r in &rep.rules {
        assert!(r.passed(), "{r}");
        if !r.canary {
            assert_eq!(r.premises_true, 25, "{r}");
        }
    }
    let nonvacuous = rep.rules.iter().filter(|r| r.nonvacuous > 0).count();
    assert!(nonvacuous >= 36, "only {nonvacuous} subjects had a non-vacuous instance");
}

#[test]
fn reports_are_reproducible() {
    let h = Harness::new();
    let subjects = Subject::select("orE1").unwrap();
    let a = h.run_all(&subjects, &small(9)).to_json();
    let b = h.run_all(&subjects, &small(9)).to_json();
    assert_eq!(a, b);
    let c = h.run_all(&subjects, &small(10)).to_json();
    assert_ne!(a, c);
}

#[test]
fn lopsided_equality_validates_the_primitive_rules() {
    let h = Harness::new();
    let cfg = Config { semantics: Semantics::LopsidedEquality, ..small(4) };
    let rules: Vec<Subject> = (0..FIRST_QUANTIFIER_RULE).map(Subject::Rule).collect();
    let rep = h.run_all(&rules, &cfg);
    for r in &rep.rules {
        assert_eq!(r.counterexamples, 0, "{r}");
    }
}

#[test]
fn canary_counterexamples_are_concrete() {
    let h = Harness::new();
    let cfg = small(0);
    for s in [Subject::ClassicalImp, Subject::LiteralFold] {
        let r = h.run(s, &cfg);
        assert!(r.counterexamples > 0, "{r}");
        let ex = &r.examples[0];
        assert_eq!(ex.attempt, 0);
    }
}

#[test]
fn paradoxes_at_low_fuel() {
    let h = Harness::new();
    for row in paradox::report(&h, &[100, 1_000]) {
        assert!(row.passed(), "{}", row.line());
    }
}
