mod common;

use common::*;
use ga_core::corpus;
use ga_core::kernel::catalog::{catalog, eq_ti_general};
use ga_core::kernel::certify::eval_certify;
use ga_core::kernel::primrec::{is_termination_claim, primrec_termination};
use ga_core::kernel::script::{check_script, emit_script};
use ga_core::kernel::tactics::TacticError;
use ga_core::kernel::{check_proof, ProofError};
use ga_core::reflection::{encode_judgment, encode_proof, proof_check_c};
use ga_core::term::*;
use proptest::prelude::*;
use std::time::Instant;

#[test]
fn termination_scripts_replay_and_regenerate() {
    let d = corpus::arith();
    let start = Instant::now();
    for (name, script) in corpus::TERMINATION_SCRIPTS {
        let f = d.index_of(name).unwrap();
        let ths = check_script(&d, script).unwrap();
        assert_eq!(ths.len(), 1);
        let (st, th) = &ths[0];
        assert!(is_termination_claim(&d, f, th.judgment()), "{name}");
        let regen = primrec_termination(&d, f).unwrap();
        assert_eq!(regen.judgment(), th.judgment());
        assert_eq!(emit_script(&d, &format!("{name}_total"), &regen.to_proof()), script, "{name} script drifted");
        assert!(proof_check_c(&d, &encode_proof(&st.proof), &encode_judgment(th.judgment())));
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn tampered_scripts_fail() {
    let d = corpus::arith();
    let (_, script) = corpus::TERMINATION_SCRIPTS[0];
    let wrong_rule = script.replacen("s3: =S from s2", "s3: =S from s1", 1);
    let e = check_script(&d, &wrong_rule).unwrap_err();
    assert!(!e.is_syntax(), "{e}");
    let wrong_claim = script.replacen("|- add(v0, v1) = add(v0, v1)", "|- add(v1, v0) = add(v1, v0)", 1);
    assert!(check_script(&d, &wrong_claim).is_err());
    let garbage = script.replacen("s0:", "s0 ", 1);
    assert!(check_script(&d, &garbage).unwrap_err().is_syntax());
}

#[test]
fn derived_rule_catalog() {
    let d = corpus::arith();
    let rows = catalog(&d);
    let failing: Vec<_> = rows.iter().filter(|e| !e.verified(&d)).map(|e| (e.rule, e.expected.concl.clone())).collect();
    assert_eq!(failing, vec![("=TI", boolean(eq(var(4), var(5))))]);
    assert!(matches!(eq_ti_general(&d), Err(TacticError::Underivable(_))));
}

#[test]
fn out_of_range_premises_are_rejected() {
    let d = corpus::arith();
    let th = primrec_termination(&d, 0).unwrap();
    let mut p = th.to_proof();
    let last = p.steps.len() - 1;
    p.steps[last].premises.push(last);
    assert!(matches!(check_proof(&d, &p), Err(ProofError::Structure { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn certificates_match_evaluation(seed in any::<u64>()) {
        let d = corpus::arith();
        let t = closed_term(&mut rng(seed, 4), &d, 3);
        if let Ok(th) = eval_certify(&d, &t, 1_000_000) {
            prop_assert!(th.hyps().is_empty());
            let (lhs, n) = match th.concl() {
                Term::Eq(l, r) => ((**l).clone(), numeral_value(r)),
                other => return Err(TestCaseError::fail(format!("not an equation: {other:?}"))),
            };
            prop_assert_eq!(lhs, t.clone());
            prop_assert_eq!(n, reference(&d, &[], &t));
            let replay = check_proof(&d, &th.to_proof()).unwrap();
            prop_assert_eq!(replay.last().unwrap().judgment(), th.judgment());
        }
    }
}

#[test]
fn most_closed_terms_certify() {
    let d = corpus::arith();
    let (mut certified, mut valued) = (0, 0);
    for k in 0..300 {
        let t = closed_term(&mut rng(17, k), &d, 3);
        if reference(&d, &[], &t).is_some() {
            valued += 1;
            certified += eval_certify(&d, &t, 1_000_000).is_ok() as u32;
        }
    }
    assert!(certified * 2 > valued, "{certified} of {valued}");
}
