//! Fuelled big-step evaluation.
//!
//! Fuel counts rule instances. A term yields `Value(n)` at fuel `f` exactly
//! when some derivation of `t ⇓ n` uses at most `f` rule instances, so the
//! result is monotone in fuel. Disjunction may succeed through either side:
//! when one side runs out of fuel the other is still tried with the full
//! remaining budget.

use crate::defs::{Body, DefinitionList, NativeOutcome};
use crate::nat::Nat;
use crate::term::Term;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    map: BTreeMap<u32, Nat>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: u32) -> Option<&Nat> {
        self.map.get(&v)
    }

    pub fn set(&mut self, v: u32, n: impl Into<Nat>) {
        self.map.insert(v, n.into());
    }

    pub fn unset(&mut self, v: u32) {
        self.map.remove(&v);
    }

    pub fn with(mut self, v: u32, n: impl Into<Nat>) -> Self {
        self.set(v, n);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Nat)> {
        self.map.iter().map(|(k, v)| (*k, v))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("v{k}={v}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StuckReason {
    UnassignedVariable(u32),
    UndefinedDefinition(usize),
    /// A connective or conditional received a value other than 0 or 1.
    NonBoolean,
    NativeFailure(String),
    /// Only produced under [`Semantics::LopsidedEquality`].
    ModelGap,
}

impl StuckReason {
    pub fn tag(&self) -> &'static str {
        match self {
            StuckReason::UnassignedVariable(_) => "unassigned-variable",
            StuckReason::UndefinedDefinition(_) => "undefined-definition",
            StuckReason::NonBoolean => "non-boolean",
            StuckReason::NativeFailure(_) => "native-failure",
            StuckReason::ModelGap => "model-gap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EvalOutcome {
    Value(Nat),
    OutOfFuel,
    Stuck(StuckReason),
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            EvalOutcome::Value(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, EvalOutcome::Value(_))
    }
}

impl fmt::Display for EvalOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalOutcome::Value(n) => write!(f, "value:{n}"),
            EvalOutcome::OutOfFuel => write!(f, "out-of-fuel"),
            EvalOutcome::Stuck(r) => write!(f, "stuck:{}", r.tag()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("quantifier node reached the evaluator without elaboration")]
    Quantifier,
    #[error("definition {def} applied to {got} arguments but has arity {arity}")]
    ArityMismatch { def: usize, arity: usize, got: usize },
}

/// Which equality rule the evaluator uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Semantics {
    #[default]
    Standard,
    /// A countermodel: `a = b` has no value when `a`'s value is below `b`'s.
    /// Every primitive rule stays truth preserving under it.
    LopsidedEquality,
}

enum Halt {
    OutOfFuel,
    Stuck(StuckReason),
    Malformed(EvalError),
}

type Step = Result<(Nat, u64), Halt>;

#[derive(Clone, Copy)]
enum Env<'a> {
    Global(&'a Assignment),
    Local(&'a [Nat]),
}

impl Env<'_> {
    fn get(&self, v: u32) -> Option<&Nat> {
        match self {
            Env::Global(a) => a.get(v),
            Env::Local(xs) => xs.get(v as usize),
        }
    }
}

const RED_ZONE: usize = 128 * 1024;
const STACK_CHUNK: usize = 8 * 1024 * 1024;

#[derive(Clone, Copy)]
pub struct Evaluator<'a> {
    defs: &'a DefinitionList,
    semantics: Semantics,
}

fn need(budget: u64) -> Result<u64, Halt> {
    budget.checked_sub(1).ok_or(Halt::OutOfFuel)
}

fn truth_value(n: &Nat) -> Option<bool> {
    match n {
        Nat::Small(0) => Some(false),
        Nat::Small(1) => Some(true),
        _ => None,
    }
}

fn bit(b: bool) -> Nat {
    if b {
        Nat::ONE
    } else {
        Nat::ZERO
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(defs: &'a DefinitionList) -> Self {
        Evaluator { defs, semantics: Semantics::Standard }
    }

    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn defs(&self) -> &'a DefinitionList {
        self.defs
    }

    /// Outcome plus the fuel used by the cheapest derivation (0 unless a value).
    pub fn eval_with_cost(
        &self,
        a: &Assignment,
        t: &Term,
        fuel: u64,
    ) -> Result<(EvalOutcome, u64), EvalError> {
        match self.go(t, Env::Global(a), fuel) {
            Ok((n, c)) => Ok((EvalOutcome::Value(n), c)),
            Err(Halt::OutOfFuel) => Ok((EvalOutcome::OutOfFuel, 0)),
            Err(Halt::Stuck(r)) => Ok((EvalOutcome::Stuck(r), 0)),
            Err(Halt::Malformed(e)) => Err(e),
        }
    }

    pub fn eval(&self, a: &Assignment, t: &Term, fuel: u64) -> Result<EvalOutcome, EvalError> {
        self.eval_with_cost(a, t, fuel).map(|(o, _)| o)
    }

    pub fn satisfies(&self, a: &Assignment, t: &Term, fuel: u64) -> bool {
        matches!(self.eval(a, t, fuel), Ok(EvalOutcome::Value(Nat::Small(1))))
    }

    fn go(&self, t: &Term, env: Env, budget: u64) -> Step {
        stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || self.step(t, env, budget))
    }

    fn step(&self, t: &Term, env: Env, budget: u64) -> Step {
        match t {
            Term::Var(i) => {
                let v = env
                    .get(*i)
                    .ok_or(Halt::Stuck(StuckReason::UnassignedVariable(*i)))?;
                need(budget)?;
                Ok((v.clone(), 1))
            }
            Term::Zero => {
                need(budget)?;
                Ok((Nat::ZERO, 1))
            }
            Term::Succ(a) => {
                let b = need(budget)?;
                let (n, c) = self.go(a, env, b)?;
                Ok((n.succ(), c + 1))
            }
            Term::Pred(a) => {
                let b = need(budget)?;
                let (n, c) = self.go(a, env, b)?;
                Ok((n.pred(), c + 1))
            }
            Term::Neg(p) => {
                let b = need(budget)?;
                let (n, c) = self.go(p, env, b)?;
                match truth_value(&n) {
                    Some(v) => Ok((bit(!v), c + 1)),
                    None => Err(Halt::Stuck(StuckReason::NonBoolean)),
                }
            }
            Term::Eq(l, r) => {
                let b = need(budget)?;
                let (x, cl) = self.go(l, env, b)?;
                let (y, cr) = self.go(r, env, b - cl)?;
                if self.semantics == Semantics::LopsidedEquality && x < y {
                    return Err(Halt::Stuck(StuckReason::ModelGap));
                }
                Ok((bit(x == y), cl + cr + 1))
            }
            Term::Cond(c, a, e) => {
                let b = need(budget)?;
                let (n, cc) = self.go(c, env, b)?;
                let branch = match truth_value(&n) {
                    Some(true) => a,
                    Some(false) => e,
                    None => return Err(Halt::Stuck(StuckReason::NonBoolean)),
                };
                let (v, cb) = self.go(branch, env, b - cc)?;
                Ok((v, cc + cb + 1))
            }
            Term::Or(p, q) => self.disjunction(p, q, env, budget),
            Term::Apply(i, args) => {
                let def = self
                    .defs
                    .get(*i)
                    .ok_or(Halt::Stuck(StuckReason::UndefinedDefinition(*i)))?;
                if def.arity() != args.len() {
                    return Err(Halt::Malformed(EvalError::ArityMismatch {
                        def: *i,
                        arity: def.arity(),
                        got: args.len(),
                    }));
                }
                let mut left = need(budget)?;
                let mut vals = Vec::with_capacity(args.len());
                let mut used = 1;
                for a in args {
                    let (n, c) = self.go(a, env, left)?;
                    left -= c;
                    used += c;
                    vals.push(n);
                }
                match &def.body {
                    Body::Term(body) => {
                        let (v, c) = self.go(body, Env::Local(&vals), left)?;
                        Ok((v, used + c))
                    }
                    Body::Native(f) => match f.call(self.defs, &vals, left) {
                        NativeOutcome::Value { value, cost } if cost <= left => {
                            Ok((value, used + cost))
                        }
                        NativeOutcome::Value { .. } | NativeOutcome::OutOfFuel => {
                            Err(Halt::OutOfFuel)
                        }
                        NativeOutcome::Failure(m) => {
                            Err(Halt::Stuck(StuckReason::NativeFailure(m)))
                        }
                    },
                }
            }
            Term::Forall(..) | Term::Exists(..) => Err(Halt::Malformed(EvalError::Quantifier)),
        }
    }

    fn disjunction(&self, p: &Term, q: &Term, env: Env, budget: u64) -> Step {
        let b = need(budget)?;
        match self.go(p, env, b) {
            Err(Halt::Malformed(e)) => Err(Halt::Malformed(e)),
            Ok((n, cp)) if n == Nat::ONE => {
                // A cheaper derivation may exist through the right disjunct.
                if cp > 1 {
                    if let Ok((m, cq)) = self.go(q, env, cp - 1) {
                        if m == Nat::ONE {
                            return Ok((Nat::ONE, cq + 1));
                        }
                    }
                }
                Ok((Nat::ONE, cp + 1))
            }
            Ok((n, cp)) if n.is_zero() => match self.go(q, env, b) {
                Ok((m, cq)) if m == Nat::ONE => Ok((Nat::ONE, cq + 1)),
                Ok((m, cq)) if m.is_zero() => {
                    if cp + cq <= b {
                        Ok((Nat::ZERO, cp + cq + 1))
                    } else {
                        Err(Halt::OutOfFuel)
                    }
                }
                Ok(_) => Err(Halt::Stuck(StuckReason::NonBoolean)),
                Err(h) => Err(h),
            },
            Err(Halt::OutOfFuel) => match self.go(q, env, b) {
                Ok((m, cq)) if m == Nat::ONE => Ok((Nat::ONE, cq + 1)),
                Err(Halt::Malformed(e)) => Err(Halt::Malformed(e)),
                _ => Err(Halt::OutOfFuel),
            },
            // Left side is permanently blocked or non-boolean.
            left => {
                let reason = match left {
                    Err(Halt::Stuck(r)) => r,
                    _ => StuckReason::NonBoolean,
                };
                match self.go(q, env, b) {
                    Ok((m, cq)) if m == Nat::ONE => Ok((Nat::ONE, cq + 1)),
                    Err(Halt::OutOfFuel) => Err(Halt::OutOfFuel),
                    Err(Halt::Malformed(e)) => Err(Halt::Malformed(e)),
                    _ => Err(Halt::Stuck(reason)),
                }
            }
        }
    }
}

pub fn eval(
    defs: &DefinitionList,
    a: &Assignment,
    t: &Term,
    fuel: u64,
) -> Result<EvalOutcome, EvalError> {
    Evaluator::new(defs).eval(a, t, fuel)
}

pub fn eval_with_cost(
    defs: &DefinitionList,
    a: &Assignment,
    t: &Term,
    fuel: u64,
) -> Result<(EvalOutcome, u64), EvalError> {
    Evaluator::new(defs).eval_with_cost(a, t, fuel)
}

/// Whether the closed term `t` reaches a value within `k` rule instances.
pub fn eval_within(defs: &DefinitionList, t: &Term, k: u64) -> bool {
    matches!(eval(defs, &Assignment::new(), t, k), Ok(EvalOutcome::Value(_)))
}

pub fn satisfies(defs: &DefinitionList, a: &Assignment, t: &Term, fuel: u64) -> bool {
    Evaluator::new(defs).satisfies(a, t, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::*;

    fn closed(defs: &DefinitionList, t: &Term, fuel: u64) -> EvalOutcome {
        eval(defs, &Assignment::new(), t, fuel).unwrap()
    }

    #[test]
    fn predecessor_of_zero() {
        let d = DefinitionList::new();
        assert_eq!(closed(&d, &pred(Term::Zero), 2), EvalOutcome::Value(Nat::ZERO));
    }

    #[test]
    fn unassigned_variable_is_stuck() {
        let d = DefinitionList::new();
        assert_eq!(
            closed(&d, &var(0), 10),
            EvalOutcome::Stuck(StuckReason::UnassignedVariable(0))
        );
        assert_eq!(closed(&d, &apply(3, vec![]), 10).to_string(), "stuck:undefined-definition");
    }

    #[test]
    fn fuel_counts_rule_instances() {
        let d = DefinitionList::new();
        assert!(eval_within(&d, &numeral(1), 2));
        assert!(!eval_within(&d, &numeral(1), 1));
    }

    #[test]
    fn constants() {
        let d = DefinitionList::new();
        let a = Assignment::new();
        assert!(satisfies(&d, &a, &truth(), 10));
        assert!(!satisfies(&d, &a, &falsity(), 10));
        assert!(satisfies(&d, &a, &neg(falsity()), 10));
    }

    #[test]
    fn liar_never_settles() {
        let mut d = DefinitionList::new();
        d.push_term("L", neg(apply(0, vec![]))).unwrap();
        for f in [10, 100, 1000, 10_000, 100_000] {
            assert_eq!(closed(&d, &apply(0, vec![]), f), EvalOutcome::OutOfFuel);
        }
    }

    #[test]
    fn right_disjunct_alone_suffices() {
        let mut d = DefinitionList::new();
        d.push_term("L", neg(apply(0, vec![]))).unwrap();
        let t = or(apply(0, vec![]), truth());
        assert_eq!(closed(&d, &t, 50), EvalOutcome::Value(Nat::ONE));
        let stuck_left = or(var(0), truth());
        assert_eq!(closed(&d, &stuck_left, 50), EvalOutcome::Value(Nat::ONE));
        let stuck_both = or(var(0), falsity());
        assert!(matches!(closed(&d, &stuck_both, 50), EvalOutcome::Stuck(_)));
    }

    #[test]
    fn quantifiers_are_rejected() {
        let d = DefinitionList::new();
        assert_eq!(
            eval(&d, &Assignment::new(), &exists(0, truth()), 10),
            Err(EvalError::Quantifier)
        );
    }

    #[test]
    fn lopsided_model_leaves_zero_vs_successor_open() {
        let d = DefinitionList::new();
        let e = Evaluator::new(&d).with_semantics(Semantics::LopsidedEquality);
        let a = Assignment::new();
        assert!(!e.eval(&a, &neg(falsity()), 10).unwrap().is_value());
        assert!(e.satisfies(&a, &neg(eq(numeral(1), Term::Zero)), 10));
    }
}
