use super::coding::*;
use super::oracle::*;
use super::pairing::*;
use crate::eval::{Assignment, EvalOutcome};
use crate::kernel::primrec::primrec_termination;
use crate::kernel::tactics::Prover;
use crate::kernel::Judgment;
use crate::syntax::{load_definitions, parse};
use crate::term::*;
use crate::{DefinitionList, Nat};
use rug::ops::Pow;
use rug::Integer;
use std::collections::BTreeSet;

fn arith() -> DefinitionList {
    let mut d = DefinitionList::new();
    load_definitions(
        "add(x, y) := y = 0 ? x : S(add(x, P(y)))\n\
         truthteller := exists x. truthteller\n",
        &mut d,
    )
    .unwrap();
    d
}

fn one() -> EvalOutcome {
    EvalOutcome::Value(Nat::ONE)
}

fn zero() -> EvalOutcome {
    EvalOutcome::Value(Nat::ZERO)
}

#[test]
fn checker_agrees_with_kernel() {
    let d = arith();
    let th = primrec_termination(&d, 0).unwrap();
    let n = encode_proof(&th.to_proof());
    let m = encode_judgment(th.judgment());
    assert!(proof_check_c(&d, &n, &m));
    assert!(!proof_check_c(&d, &n, &(m.clone() + 1u32)));
    assert!(!proof_check_c(&d, &Integer::from(12345), &m));
}

#[test]
fn checker_rejects_quantifier_rules() {
    let d = DefinitionList::new();
    let p = Prover::new(&d);
    let h = p.hyp(&BTreeSet::new(), nat(var(0)));
    let all = p.forall_i1(0, &h).unwrap();
    let n = encode_proof(&all.to_proof());
    assert!(!proof_check_c(&d, &n, &encode_judgment(all.judgment())));
}

#[test]
fn elaboration_shape() {
    let d = arith();
    let r = Reflection::new(&d).unwrap();
    let pure = parse("add(1, 2) = 3", &d).unwrap();
    assert_eq!(r.elaborate(&pure).unwrap(), pure);
    let t = parse("exists x. x = S(0)", &d).unwrap();
    let want = apply(
        r.reserved.e,
        vec![numeral(1), numeral(encode_term(&eq(var(0), numeral(1))).to_u64().unwrap()), Term::Zero],
    );
    assert_eq!(r.elaborate(&t).unwrap(), want);
}

#[test]
fn exists_via_witness() {
    let d = arith();
    let r = Reflection::new(&d).unwrap();
    let t = parse("exists x. x = S(0)", &d).unwrap();
    assert_eq!(r.eval(&Assignment::new(), &t, 100_000).unwrap(), one());

    let p = eq(var(0), numeral(1));
    let w = search_exists(&r.defs, 0, &p, 5, 10_000).unwrap();
    assert_eq!(w.n, 1);
    let (v, pc) = (encode_term(&var(0)), encode_term(&p));
    assert_eq!(r.eplus(&v, &pc, &Integer::new(), 10), zero());
    assert_eq!(r.eplus(&v, &pc, &(w.certificate.clone() + 1u32), 100_000), one());
}

#[test]
fn exists_refuted_by_planted_proof() {
    let d = arith();
    let r = Reflection::new(&d).unwrap();
    let t = parse("exists x. S(x) = 0", &d).unwrap();
    let pr = Prover::new(&r.defs);
    let h = pr.hyp(&BTreeSet::new(), nat(var(0)));
    let th = pr.s_neq_zero(&h).unwrap();
    assert_eq!(th.judgment(), &Judgment::new([nat(var(0))], neg(eq(succ(var(0)), Term::Zero))));
    assert_eq!(r.eval(&Assignment::new(), &t, 20_000).unwrap(), EvalOutcome::OutOfFuel);
    r.plant(&th);
    assert_eq!(r.eval(&Assignment::new(), &t, 100_000).unwrap(), zero());
}

#[test]
fn truthteller_has_no_value() {
    let d = arith();
    let r = Reflection::new(&d).unwrap();
    let t = parse("truthteller", &d).unwrap();
    for fuel in [10, 1000, 100_000] {
        assert_eq!(r.eval(&Assignment::new(), &t, fuel).unwrap(), EvalOutcome::OutOfFuel);
    }
}

#[test]
fn search_arithmetic_witness() {
    let d = arith();
    let p = parse("add(x, 2) = 4", &d).unwrap();
    let w = search_exists(&d, 0, &p, 10, 100_000).unwrap();
    assert_eq!(w.n, 2);
    let p = parse("S(x) = 0", &d).unwrap();
    assert!(search_exists(&d, 0, &p, 50, 10_000).is_none());
}

#[test]
fn pairing_literal() {
    let d = arith();
    let r = Reflection::new(&d).unwrap();
    let big = pair(&Integer::from(10).pow(40), &Integer::from(77));
    let t = r.literal(&big);
    let got = crate::eval::eval(&r.defs, &Assignment::new(), &t, 100_000).unwrap();
    assert_eq!(got, EvalOutcome::Value(Nat::from_integer(big)));
}
