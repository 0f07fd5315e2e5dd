mod common;

use common::*;
use ga_core::harness::conformance;
use ga_core::harness::gen::Names;
use ga_core::{corpus, eval, parse, Assignment, EvalOutcome, StuckReason};
use ga_core::term::*;
use proptest::prelude::*;

fn run(src: &str, fuel: u64) -> EvalOutcome {
    let d = corpus::arith();
    eval(&d, &Assignment::new(), &parse(src, &d).unwrap(), fuel).unwrap()
}

#[test]
fn worked_examples() {
    assert_eq!(run("P(0)", 10).to_string(), "value:0");
    assert_eq!(run("add(2, 3)", 1000).to_string(), "value:5");
    assert_eq!(run("mult(3, 2)", 10_000).to_string(), "value:6");
    assert_eq!(run("sub(2, 5)", 10_000).to_string(), "value:0");
    assert_eq!(run("even(3)", 10_000).to_string(), "value:0");
    assert_eq!(run("gt(3, 1)", 10_000).to_string(), "value:1");
    assert_eq!(run("0 = 0", 10).to_string(), "value:1");
    assert_eq!(run("~(0 = 0) \\/ 0 = S(0)", 100).to_string(), "value:0");
}

#[test]
fn stuck_and_out_of_fuel() {
    assert!(matches!(run("~S(S(0))", 100), EvalOutcome::Stuck(StuckReason::NonBoolean)));
    assert_eq!(run("add(2, 3)", 3), EvalOutcome::OutOfFuel);
    let p = corpus::paradox();
    let liar = parse("liar", &p).unwrap();
    assert_eq!(eval(&p, &Assignment::new(), &liar, 50_000).unwrap(), EvalOutcome::OutOfFuel);
}

#[test]
fn free_variables_need_an_assignment() {
    let d = corpus::arith();
    let t = parse("add(x, 1)", &d).unwrap();
    assert!(matches!(eval(&d, &Assignment::new(), &t, 1000).unwrap(), EvalOutcome::Stuck(_)));
    let a = Assignment::new().with(0, 4u64);
    assert_eq!(eval(&d, &a, &t, 1000).unwrap().to_string(), "value:5");
}

#[test]
fn conformance_batch() {
    let d = corpus::combined();
    let names = Names::resolve(&d).unwrap();
    let r = conformance::check(&d, names, 2_000, 11);
    assert!(r.passed(), "{:?}", &r.violations[..r.violations.len().min(5)]);
    assert!(r.values > 1_000, "too few terms evaluated to a value: {}", r.values);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_reference(seed in any::<u64>()) {
        let d = corpus::arith();
        let t = closed_term(&mut rng(seed, 0), &d, 3);
        let got = eval(&d, &Assignment::new(), &t, 1_000_000).unwrap();
        match reference(&d, &[], &t) {
            Some(n) => prop_assert_eq!(value(&got), Some(n), "{}", print(&t, &d)),
            None => prop_assert!(matches!(got, EvalOutcome::Stuck(_)), "{} gave {}", print(&t, &d), got),
        }
    }

    #[test]
    fn fuel_monotone_and_deterministic(seed in any::<u64>(), lo in 0u64..2_000, extra in 0u64..50_000) {
        let d = corpus::arith();
        let t = closed_term(&mut rng(seed, 1), &d, 3);
        let a = eval(&d, &Assignment::new(), &t, lo).unwrap();
        prop_assert_eq!(&a, &eval(&d, &Assignment::new(), &t, lo).unwrap());
        if let EvalOutcome::Value(_) = a {
            prop_assert_eq!(a, eval(&d, &Assignment::new(), &t, lo + extra).unwrap());
        }
    }

    #[test]
    fn formulas_are_boolean(seed in any::<u64>()) {
        let d = corpus::arith();
        let t = eq(closed_term(&mut rng(seed, 2), &d, 2), closed_term(&mut rng(seed, 3), &d, 2));
        for t in [t.clone(), neg(t.clone()), or(t.clone(), neg(t))] {
            if let Some(v) = value(&eval(&d, &Assignment::new(), &t, 1_000_000).unwrap()) {
                prop_assert!(v <= 1);
            }
        }
    }
}
