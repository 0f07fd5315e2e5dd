use super::certify::*;
use super::primrec::*;
use super::script::*;
use super::tactics::*;
use super::*;
use crate::syntax::{load_definitions, parse};

fn arith() -> DefinitionList {
    let mut d = DefinitionList::new();
    load_definitions(
        "add(x, y) := y = 0 ? x : S(add(x, P(y)))\n\
         sub(x, y) := y = 0 ? x : P(sub(x, P(y)))\n\
         mult(x, y) := y = 0 ? 0 : add(x, mult(x, P(y)))\n\
         even(n) := n = 0 ? 1 : sub(1, even(P(n)))\n\
         gt(x, y) := ~(sub(x, y) = 0)\n\
         liar := ~liar\n",
        &mut d,
    )
    .unwrap();
    d
}

fn t(d: &DefinitionList, s: &str) -> Term {
    parse(s, d).unwrap()
}

fn replay(d: &DefinitionList, th: &Theorem) {
    let proof = th.to_proof();
    let done = check_proof(d, &proof).unwrap();
    assert_eq!(done.last().unwrap().judgment(), th.judgment());
}

#[test]
fn zero_intro() {
    let d = DefinitionList::new();
    let th = apply_rule(&d, RuleApp::ZeroI { ctx: vec![] }, &[]).unwrap();
    assert_eq!(th.judgment(), &Judgment::closed(eq(Term::Zero, Term::Zero)));
}

#[test]
fn neg_elim_concludes_anything() {
    let d = DefinitionList::new();
    let p = Prover::new(&d);
    let g = BTreeSet::from([truth(), neg(truth())]);
    let th = p.neg_e(&p.hyp(&g, truth()), &p.hyp(&g, neg(truth())), falsity()).unwrap();
    assert_eq!(th.concl(), &falsity());
    replay(&d, &th);
}

#[test]
fn s_neq_zero() {
    let d = DefinitionList::new();
    let z = apply_rule(&d, RuleApp::ZeroI { ctx: vec![] }, &[]).unwrap();
    let th = apply_rule(&d, RuleApp::SNeqZeroI, &[z]).unwrap();
    assert_eq!(th.concl(), &neq(numeral(1), Term::Zero));
}

#[test]
fn ind_side_condition() {
    let d = DefinitionList::new();
    let g = vec![nat(var(0))];
    let base = apply_rule(&d, RuleApp::ZeroI { ctx: g.clone() }, &[]).unwrap();
    let step_h = apply_rule(&d, RuleApp::Hyp { ctx: g.clone(), p: nat(var(0)) }, &[]).unwrap();
    let step = apply_rule(&d, RuleApp::SEqI, std::slice::from_ref(&step_h)).unwrap();
    let err = apply_rule(&d, RuleApp::Ind { p: nat(var(0)), x: 0 }, &[base, step, step_h]).unwrap_err();
    assert_eq!(err.rule, "Ind");
}

#[test]
fn premise_order_is_checked() {
    let d = DefinitionList::new();
    let z = apply_rule(&d, RuleApp::ZeroI { ctx: vec![] }, &[]).unwrap();
    let proof = Proof {
        steps: vec![
            Step { judgment: z.judgment().clone(), rule: RuleApp::SEqI, premises: vec![1] },
            Step { judgment: z.judgment().clone(), rule: RuleApp::ZeroI { ctx: vec![] }, premises: vec![] },
        ],
    };
    assert!(matches!(check_proof(&d, &proof), Err(ProofError::Structure { step: 0, premise: 1 })));
}

#[test]
fn mismatched_step_is_rejected() {
    let d = DefinitionList::new();
    let proof = Proof {
        steps: vec![Step { judgment: Judgment::closed(truth()), rule: RuleApp::ZeroI { ctx: vec![nat(var(0))] }, premises: vec![] }],
    };
    assert!(matches!(check_proof(&d, &proof), Err(ProofError::Mismatch { step: 0 })));
}

#[test]
fn certify_add() {
    let d = arith();
    let th = eval_certify(&d, &t(&d, "add(2, 3)"), 100_000).unwrap();
    assert_eq!(th.concl(), &eq(t(&d, "add(2, 3)"), numeral(5)));
    assert!(th.hyps().is_empty());
    replay(&d, &th);
}

#[test]
fn certify_refuses_liar_and_pred_zero() {
    let d = arith();
    assert!(matches!(eval_certify(&d, &t(&d, "liar"), 10_000), Err(TacticError::NotValue(_))));
    assert!(matches!(eval_certify(&d, &t(&d, "P(0)"), 10), Err(TacticError::Uncertifiable(_))));
    assert!(eval_certify(&d, &t(&d, "P(S(0))"), 10).is_ok());
}

#[test]
fn decide_formulas() {
    let d = arith();
    let th = prove_true(&d, &t(&d, "gt(3, 1)"), 100_000).unwrap();
    replay(&d, &th);
    let th = prove_false(&d, &t(&d, "gt(1, 1)"), 100_000).unwrap();
    assert_eq!(th.concl(), &neg(t(&d, "gt(1, 1)")));
    assert!(matches!(prove_false(&d, &t(&d, "gt(1, 3)"), 100_000), Err(TacticError::Uncertifiable(_))));
    let th = prove_false(&d, &t(&d, "add(1, 2) = 1"), 100_000).unwrap();
    replay(&d, &th);
    assert!(prove_false(&d, &t(&d, "1 = 3"), 100).is_err());
}

#[test]
fn termination_proofs() {
    let d = arith();
    for name in ["add", "sub", "mult", "even"] {
        let f = d.index_of(name).unwrap();
        let th = primrec_termination(&d, f).unwrap();
        assert!(is_termination_claim(&d, f, th.judgment()), "{name}");
        replay(&d, &th);
    }
}

#[test]
fn termination_rejects_bad_shape() {
    let mut d = DefinitionList::new();
    load_definitions("f(y) := f(y)\n", &mut d).unwrap();
    assert!(matches!(primrec_termination(&d, 0), Err(TacticError::ShapeNotRecognized(_))));
}

#[test]
fn script_round_trip() {
    let d = arith();
    let f = d.index_of("add").unwrap();
    let th = primrec_termination(&d, f).unwrap();
    let text = emit_script(&d, "add_total", &th.to_proof());
    let checked = check_script(&d, &text).unwrap();
    assert_eq!(checked.len(), 1);
    assert_eq!(checked[0].1.judgment(), th.judgment());
    assert_eq!(checked[0].0.proof, th.to_proof());
}

#[test]
fn script_unknown_rule() {
    let d = DefinitionList::new();
    let text = "theorem t : |- 0 = 0\ns0: impI from s1\nqed\n";
    assert!(matches!(check_script(&d, text), Err(ScriptError::UnknownRule { .. })));
}

#[test]
fn handwritten_script() {
    let d = DefinitionList::new();
    let text = "theorem one : |- ~(S(0) = 0)\n  a: 0I\n  b: S!=0I from a\nqed\n";
    let out = check_script(&d, text).unwrap();
    assert_eq!(out[0].1.concl(), &neq(numeral(1), Term::Zero));
}

#[test]
fn eq_typing_fragment() {
    let d = DefinitionList::new();
    let p = Prover::new(&d);
    let g = BTreeSet::from([nat(var(0))]);
    let na = p.hyp(&g, nat(var(0)));
    let z = p.zero(&g);
    let th = p.eq_ti(&na, &z).unwrap();
    assert_eq!(th.concl(), &boolean(eq(var(0), Term::Zero)));
    replay(&d, &th);
    let sa = p.s_eq_i(&na).unwrap();
    let th = p.eq_ti(&sa, &p.s_eq_i(&z).unwrap()).unwrap();
    assert_eq!(th.concl(), &boolean(eq(succ(var(0)), numeral(1))));
    let one = p.s_eq_i(&p.zero(&BTreeSet::new())).unwrap();
    let zero = p.zero(&BTreeSet::new());
    assert!(matches!(p.eq_ti(&zero, &one), Err(TacticError::Underivable(_))));
    assert!(p.eq_ti(&one, &zero).is_ok());
}

#[test]
fn catalog_rows_recheck() {
    let defs = crate::corpus::arith();
    for e in catalog::catalog(&defs) {
        let general = e.rule == "=TI" && e.expected.concl == boolean(eq(var(4), var(5)));
        assert_eq!(e.verified(&defs), !general, "{} {:?}", e.rule, e.result.as_ref().err());
    }
    assert!(matches!(catalog::eq_ti_general(&defs), Err(tactics::TacticError::Underivable(_))));
}
