//! The trusted kernel.
//!
//! [`Theorem`] values can only be produced by [`apply_rule`] and
//! [`check_proof`]. Everything in the submodules builds on those two.

pub mod catalog;
pub mod certify;
pub mod primrec;
pub mod script;
pub mod tactics;

use crate::defs::DefinitionList;
use crate::syntax::print_raw;
use crate::term::*;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Judgment {
    pub hyps: BTreeSet<Term>,
    pub concl: Term,
}

impl Judgment {
    pub fn new(hyps: impl IntoIterator<Item = Term>, concl: Term) -> Self {
        Judgment { hyps: hyps.into_iter().collect(), concl }
    }

    pub fn closed(concl: Term) -> Self {
        Judgment { hyps: BTreeSet::new(), concl }
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = self.concl.free_vars();
        for h in &self.hyps {
            out.extend(h.free_vars());
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        self.concl.is_pure() && self.hyps.iter().all(|h| h.is_pure())
    }

    pub fn display<'a>(&'a self, defs: &'a DefinitionList) -> JudgmentDisplay<'a> {
        JudgmentDisplay { j: self, defs: Some(defs) }
    }
}

pub struct JudgmentDisplay<'a> {
    j: &'a Judgment,
    defs: Option<&'a DefinitionList>,
}

impl fmt::Display for JudgmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: &Term| match self.defs {
            Some(d) => crate::syntax::print(t, d),
            None => print_raw(t),
        };
        let hyps: Vec<String> = self.j.hyps.iter().map(show).collect();
        if hyps.is_empty() {
            write!(f, "|- {}", show(&self.j.concl))
        } else {
            write!(f, "{} |- {}", hyps.join(", "), show(&self.j.concl))
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        JudgmentDisplay { j: self, defs: None }.fmt(f)
    }
}

/// A primitive rule together with the data needed to rebuild its conclusion.
/// Premise order is listed per variant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleApp {
    /// `[c, nat(a1), .., nat(ak)]`: fold the instantiated body at `paths`.
    DefFold { def: usize, args: Vec<Term>, paths: Vec<Path> },
    /// `[c]`: unfold applications of `def` at `paths`.
    DefUnfold { def: usize, paths: Vec<Path> },
    /// `[a = b]`
    EqSym,
    /// `[a = b, c]`: rewrite occurrences of `a` at `paths` to `b`.
    EqSubst { paths: Vec<Path> },
    NegNegI,
    NegNegE,
    /// `[p, ~p]`
    NegE { q: Term },
    OrI1 { q: Term },
    OrI2 { p: Term },
    /// `[~p, ~q]`
    OrI3,
    /// `[p \/ q, (G, p |- r), (G, q |- r)]`
    OrE1,
    OrE2,
    OrE3,
    ZeroI { ctx: Vec<Term> },
    SEqI,
    SEqE,
    SNeqI,
    SNeqE,
    SNeqZeroI,
    PEqI2,
    PTI,
    PTE,
    /// `[c, nat(a)]`
    CondI1 { b: Term },
    /// `[~c, nat(b)]`
    CondI2 { a: Term },
    /// `[p[0], (G, nat(x), p |- p[S x]), nat(a)]`
    Ind { p: Term, x: u32 },
    Hyp { ctx: Vec<Term>, p: Term },
    Weaken { p: Term },
    /// `[G, nat(x) |- p]`
    ForallI1 { x: u32 },
    /// `[forall x. p, nat(a)]`
    ForallE1,
    /// `[nat(a), ~p[a]]`
    ForallI2 { x: u32, p: Term },
    /// `[~forall x. p, (G, nat(x), ~p |- q)]`
    ForallE2,
    /// `[nat(a), p[a]]`
    ExistsI1 { x: u32, p: Term },
    /// `[exists x. p, (G, nat(x), p |- q)]`
    ExistsE1,
    /// `[G, nat(x) |- ~p]`
    ExistsI2 { x: u32 },
    /// `[~exists x. p, nat(a)]`
    ExistsE2,
    /// `[p[0], (G, nat(x), p |- p[S x])]`
    ForallInd { x: u32, p: Term },
}

/// Script names, in rule-id order.
pub const RULE_NAMES: &[&str] = &[
    "defIE.fwd", "defIE.rev", "=S", "=E", "negnegIE.fwd", "negnegIE.rev", "negE", "orI1", "orI2",
    "orI3", "orE1", "orE2", "orE3", "0I", "S=IE.fwd", "S=IE.rev", "S!=IE.fwd", "S!=IE.rev",
    "S!=0I", "P=I2", "PTIE.fwd", "PTIE.rev", "?I1", "?I2", "Ind", "H", "W", "forallI1",
    "forallE1", "forallI2", "forallE2", "existsI1", "existsE1", "existsI2", "existsE2",
    "forallInd",
];

/// First rule id belonging to the quantifier extension.
pub const FIRST_QUANTIFIER_RULE: usize = 27;

impl RuleApp {
    pub fn id(&self) -> usize {
        use RuleApp::*;
        match self {
            DefFold { .. } => 0,
            DefUnfold { .. } => 1,
            EqSym => 2,
            EqSubst { .. } => 3,
            NegNegI => 4,
            NegNegE => 5,
            NegE { .. } => 6,
            OrI1 { .. } => 7,
            OrI2 { .. } => 8,
            OrI3 => 9,
            OrE1 => 10,
            OrE2 => 11,
            OrE3 => 12,
            ZeroI { .. } => 13,
            SEqI => 14,
            SEqE => 15,
            SNeqI => 16,
            SNeqE => 17,
            SNeqZeroI => 18,
            PEqI2 => 19,
            PTI => 20,
            PTE => 21,
            CondI1 { .. } => 22,
            CondI2 { .. } => 23,
            Ind { .. } => 24,
            Hyp { .. } => 25,
            Weaken { .. } => 26,
            ForallI1 { .. } => 27,
            ForallE1 => 28,
            ForallI2 { .. } => 29,
            ForallE2 => 30,
            ExistsI1 { .. } => 31,
            ExistsE1 => 32,
            ExistsI2 { .. } => 33,
            ExistsE2 => 34,
            ForallInd { .. } => 35,
        }
    }

    pub fn name(&self) -> &'static str {
        RULE_NAMES[self.id()]
    }

    pub fn is_quantifier(&self) -> bool {
        self.id() >= FIRST_QUANTIFIER_RULE
    }

    /// Terms carried as instantiation data.
    pub fn terms(&self) -> Vec<&Term> {
        use RuleApp::*;
        match self {
            DefFold { args, .. } => args.iter().collect(),
            NegE { q } | OrI1 { q } => vec![q],
            OrI2 { p } | Weaken { p } | Ind { p, .. } | ForallI2 { p, .. } => vec![p],
            ExistsI1 { p, .. } | ForallInd { p, .. } => vec![p],
            CondI1 { b } => vec![b],
            CondI2 { a } => vec![a],
            ZeroI { ctx } => ctx.iter().collect(),
            Hyp { ctx, p } => ctx.iter().chain(std::iter::once(p)).collect(),
            _ => vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleErrorKind {
    PremiseCount { expected: usize, got: usize },
    Shape(String),
    SideCondition(String),
    UnknownDefinition(usize),
    BadPath(String),
    Capture(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule}: {}", describe_kind(.kind))]
pub struct RuleError {
    pub rule: &'static str,
    pub kind: RuleErrorKind,
}

fn describe_kind(k: &RuleErrorKind) -> String {
    match k {
        RuleErrorKind::PremiseCount { expected, got } => {
            format!("expected {expected} premises, got {got}")
        }
        RuleErrorKind::Shape(m) => format!("shape mismatch: {m}"),
        RuleErrorKind::SideCondition(m) => format!("side condition violated: {m}"),
        RuleErrorKind::UnknownDefinition(i) => format!("unknown definition index {i}"),
        RuleErrorKind::BadPath(m) => format!("invalid hole position: {m}"),
        RuleErrorKind::Capture(m) => format!("variable capture: {m}"),
    }
}

/// A judgment accepted by the kernel. Rule application and proof checking
/// are the only ways to build one:
///
/// ```compile_fail
/// use ga_core::kernel::{Judgment, Theorem};
/// let forged = Theorem { judgment: Judgment::closed(ga_core::term::numeral(0)) };
/// ```
#[derive(Clone)]
pub struct Theorem {
    judgment: Judgment,
    origin: Arc<Origin>,
}

struct Origin {
    rule: RuleApp,
    premises: Vec<Theorem>,
}

impl fmt::Debug for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Theorem({})", self.judgment)
    }
}

impl PartialEq for Theorem {
    fn eq(&self, other: &Self) -> bool {
        self.judgment == other.judgment
    }
}

impl Theorem {
    pub fn judgment(&self) -> &Judgment {
        &self.judgment
    }

    pub fn hyps(&self) -> &BTreeSet<Term> {
        &self.judgment.hyps
    }

    pub fn concl(&self) -> &Term {
        &self.judgment.concl
    }

    pub fn rule(&self) -> &RuleApp {
        &self.origin.rule
    }

    pub fn premises(&self) -> &[Theorem] {
        &self.origin.premises
    }

    /// Linearize the derivation into primitive steps. Steps with equal
    /// judgments are shared.
    pub fn to_proof(&self) -> Proof {
        let mut steps = Vec::new();
        let mut index: HashMap<Judgment, usize> = HashMap::new();
        let mut stack: Vec<(&Theorem, bool)> = vec![(self, false)];
        while let Some((t, expanded)) = stack.pop() {
            if index.contains_key(&t.judgment) {
                continue;
            }
            if !expanded {
                stack.push((t, true));
                for p in t.origin.premises.iter().rev() {
                    stack.push((p, false));
                }
                continue;
            }
            let premises = t.origin.premises.iter().map(|p| index[&p.judgment]).collect();
            index.insert(t.judgment.clone(), steps.len());
            steps.push(Step { judgment: t.judgment.clone(), rule: t.origin.rule.clone(), premises });
        }
        Proof { steps }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub judgment: Judgment,
    pub rule: RuleApp,
    pub premises: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Proof {
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn claim(&self) -> Option<&Judgment> {
        self.steps.last().map(|s| &s.judgment)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("empty proof")]
    Empty,
    #[error("step {step}: premise index {premise} does not refer to an earlier step")]
    Structure { step: usize, premise: usize },
    #[error("step {step}: {error}")]
    Rule { step: usize, error: RuleError },
    #[error("step {step}: stated judgment differs from the rule's conclusion")]
    Mismatch { step: usize },
}

impl ProofError {
    pub fn step(&self) -> Option<usize> {
        match self {
            ProofError::Empty => None,
            ProofError::Structure { step, .. }
            | ProofError::Rule { step, .. }
            | ProofError::Mismatch { step } => Some(*step),
        }
    }
}

/// Apply one primitive rule.
pub fn apply_rule(
    defs: &DefinitionList,
    rule: RuleApp,
    premises: &[Theorem],
) -> Result<Theorem, RuleError> {
    let js: Vec<&Judgment> = premises.iter().map(|t| &t.judgment).collect();
    let judgment = conclude(defs, &rule, &js)?;
    Ok(Theorem { judgment, origin: Arc::new(Origin { rule, premises: premises.to_vec() }) })
}

/// Replay a proof step by step.
pub fn check_proof(defs: &DefinitionList, proof: &Proof) -> Result<Vec<Theorem>, ProofError> {
    if proof.steps.is_empty() {
        return Err(ProofError::Empty);
    }
    let mut done: Vec<Theorem> = Vec::with_capacity(proof.steps.len());
    for (i, s) in proof.steps.iter().enumerate() {
        let mut prem = Vec::with_capacity(s.premises.len());
        for &p in &s.premises {
            if p >= i {
                return Err(ProofError::Structure { step: i, premise: p });
            }
            prem.push(done[p].clone());
        }
        let t = apply_rule(defs, s.rule.clone(), &prem)
            .map_err(|error| ProofError::Rule { step: i, error })?;
        if t.judgment != s.judgment {
            return Err(ProofError::Mismatch { step: i });
        }
        done.push(t);
    }
    Ok(done)
}

// ---------------------------------------------------------------------------
// Rule semantics.

struct Ctx<'a> {
    rule: &'static str,
    prem: &'a [&'a Judgment],
}

type R<T> = Result<T, RuleError>;

fn as_eq(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Eq(a, b) => Some((a, b)),
        _ => None,
    }
}

fn as_neg(t: &Term) -> Option<&Term> {
    match t {
        Term::Neg(p) => Some(p),
        _ => None,
    }
}

fn as_or(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Or(a, b) => Some((a, b)),
        _ => None,
    }
}

fn as_nat(t: &Term) -> Option<&Term> {
    match t {
        Term::Eq(a, b) if a == b => Some(a),
        _ => None,
    }
}

impl<'a> Ctx<'a> {
    fn err(&self, kind: RuleErrorKind) -> RuleError {
        RuleError { rule: self.rule, kind }
    }

    fn shape(&self, msg: impl Into<String>) -> RuleError {
        self.err(RuleErrorKind::Shape(msg.into()))
    }

    fn count(&self, n: usize) -> R<()> {
        if self.prem.len() != n {
            return Err(self.err(RuleErrorKind::PremiseCount { expected: n, got: self.prem.len() }));
        }
        Ok(())
    }

    fn concl(&self, i: usize) -> &'a Term {
        &self.prem[i].concl
    }

    fn gamma(&self) -> &'a BTreeSet<Term> {
        &self.prem[0].hyps
    }

    /// All listed premises share the hypotheses of the first.
    fn same_gamma(&self, idx: &[usize]) -> R<()> {
        let g = self.gamma();
        for &i in idx {
            if &self.prem[i].hyps != g {
                return Err(self.shape(format!("premise {i} has different hypotheses")));
            }
        }
        Ok(())
    }

    /// Premise `i` has hypotheses exactly `g` plus `extra`.
    fn extends(&self, i: usize, g: &BTreeSet<Term>, extra: &[Term]) -> R<()> {
        let mut want = g.clone();
        want.extend(extra.iter().cloned());
        if self.prem[i].hyps != want {
            return Err(self.shape(format!(
                "premise {i} must have exactly the background hypotheses plus the discharged ones"
            )));
        }
        Ok(())
    }

    fn nat_of(&self, i: usize) -> R<&'a Term> {
        as_nat(self.concl(i)).ok_or_else(|| self.shape(format!("premise {i} must be a nat judgment")))
    }

    fn not_free_in_gamma(&self, g: &BTreeSet<Term>, x: u32) -> R<()> {
        if g.iter().any(|h| h.occurs_free(x)) {
            return Err(self.err(RuleErrorKind::SideCondition(format!(
                "v{x} is free in the background hypotheses"
            ))));
        }
        Ok(())
    }

    fn subst(&self, t: &Term, x: u32, r: &Term) -> R<Term> {
        t.subst(x, r).map_err(|e| self.err(RuleErrorKind::Capture(e.to_string())))
    }

    /// Replace the subterms at `paths` of `c`. Each must equal `expect(old)`,
    /// and no binder above a hole may capture a variable in `guard`.
    fn rewrite(
        &self,
        c: &Term,
        paths: &[Path],
        mut replace: impl FnMut(&Term) -> R<Term>,
        guard: &BTreeSet<u32>,
    ) -> R<Term> {
        if paths.is_empty() {
            return Err(self.err(RuleErrorKind::BadPath("no hole positions given".into())));
        }
        if !disjoint_paths(paths) {
            return Err(self.err(RuleErrorKind::BadPath("hole positions overlap".into())));
        }
        let mut out = c.clone();
        for p in paths {
            let old = c
                .at(p)
                .ok_or_else(|| self.err(RuleErrorKind::BadPath(format!("{p:?} is not a position"))))?;
            let binders = c.binders_along(p).unwrap_or_default();
            let new = replace(old)?;
            let mut g = guard.clone();
            g.extend(new.free_vars());
            g.extend(old.free_vars());
            if let Some(x) = binders.iter().find(|x| g.contains(x)) {
                return Err(self.err(RuleErrorKind::Capture(format!(
                    "hole at {p:?} lies under a binder of v{x}"
                ))));
            }
            out = out.replace_at(p, new).expect("position checked");
        }
        Ok(out)
    }
}

fn with_hyp(g: &BTreeSet<Term>, extra: &[Term]) -> BTreeSet<Term> {
    let mut h = g.clone();
    h.extend(extra.iter().cloned());
    h
}

fn def_body<'d>(defs: &'d DefinitionList, cx: &Ctx, def: usize) -> R<&'d Term> {
    defs.get(def)
        .and_then(|d| d.term())
        .ok_or_else(|| cx.err(RuleErrorKind::UnknownDefinition(def)))
}

fn instantiate(cx: &Ctx, body: &Term, args: &[Term]) -> R<Term> {
    let map = args.iter().enumerate().map(|(i, a)| (i as u32, a.clone())).collect();
    body.subst_many(&map).map_err(|e| cx.err(RuleErrorKind::Capture(e.to_string())))
}

/// The conclusion a rule draws from the given premise judgments.
pub fn conclude(defs: &DefinitionList, rule: &RuleApp, prem: &[&Judgment]) -> R<Judgment> {
    use RuleApp::*;
    let cx = Ctx { rule: rule.name(), prem };
    let j = |hyps: &BTreeSet<Term>, concl: Term| Judgment { hyps: hyps.clone(), concl };
    match rule {
        DefFold { def, args, paths } => {
            let body = def_body(defs, &cx, *def)?;
            let arity = defs.arity(*def).map_err(|_| cx.err(RuleErrorKind::UnknownDefinition(*def)))?;
            if args.len() != arity {
                return Err(cx.shape(format!("definition has arity {arity}, got {} arguments", args.len())));
            }
            cx.count(1 + arity)?;
            cx.same_gamma(&(1..=arity).collect::<Vec<_>>())?;
            for (k, a) in args.iter().enumerate() {
                if cx.nat_of(k + 1)? != a {
                    return Err(cx.shape(format!("premise {} must be nat of argument {k}", k + 1)));
                }
            }
            let inst = instantiate(&cx, body, args)?;
            let folded = Term::Apply(*def, args.clone());
            let c = cx.rewrite(
                cx.concl(0),
                paths,
                |old| {
                    if *old == inst {
                        Ok(folded.clone())
                    } else {
                        Err(cx.shape("hole does not hold the instantiated body"))
                    }
                },
                &BTreeSet::new(),
            )?;
            Ok(j(cx.gamma(), c))
        }
        DefUnfold { def, paths } => {
            cx.count(1)?;
            let body = def_body(defs, &cx, *def)?;
            let c = cx.rewrite(
                cx.concl(0),
                paths,
                |old| match old {
                    Term::Apply(i, args) if i == def && args.len() == defs.arity(*def).unwrap_or(usize::MAX) => {
                        instantiate(&cx, body, args)
                    }
                    _ => Err(cx.shape("hole does not hold an application of the definition")),
                },
                &BTreeSet::new(),
            )?;
            Ok(j(cx.gamma(), c))
        }
        EqSym => {
            cx.count(1)?;
            let (a, b) = as_eq(cx.concl(0)).ok_or_else(|| cx.shape("premise must be an equation"))?;
            Ok(j(cx.gamma(), eq(b.clone(), a.clone())))
        }
        EqSubst { paths } => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let (a, b) = as_eq(cx.concl(0)).ok_or_else(|| cx.shape("first premise must be an equation"))?;
            let c = cx.rewrite(
                cx.concl(1),
                paths,
                |old| {
                    if old == a {
                        Ok(b.clone())
                    } else {
                        Err(cx.shape("hole does not hold the left side of the equation"))
                    }
                },
                &BTreeSet::new(),
            )?;
            Ok(j(cx.gamma(), c))
        }
        NegNegI => {
            cx.count(1)?;
            Ok(j(cx.gamma(), neg(neg(cx.concl(0).clone()))))
        }
        NegNegE => {
            cx.count(1)?;
            let p = as_neg(cx.concl(0)).and_then(as_neg).ok_or_else(|| cx.shape("premise must be ~~p"))?;
            Ok(j(cx.gamma(), p.clone()))
        }
        NegE { q } => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            if as_neg(cx.concl(1)) != Some(cx.concl(0)) {
                return Err(cx.shape("second premise must negate the first"));
            }
            Ok(j(cx.gamma(), q.clone()))
        }
        OrI1 { q } => {
            cx.count(1)?;
            Ok(j(cx.gamma(), or(cx.concl(0).clone(), q.clone())))
        }
        OrI2 { p } => {
            cx.count(1)?;
            Ok(j(cx.gamma(), or(p.clone(), cx.concl(0).clone())))
        }
        OrI3 => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let p = as_neg(cx.concl(0)).ok_or_else(|| cx.shape("first premise must be a negation"))?;
            let q = as_neg(cx.concl(1)).ok_or_else(|| cx.shape("second premise must be a negation"))?;
            Ok(j(cx.gamma(), neg(or(p.clone(), q.clone()))))
        }
        OrE1 => {
            cx.count(3)?;
            let g = cx.gamma();
            let (p, q) = as_or(cx.concl(0)).ok_or_else(|| cx.shape("first premise must be a disjunction"))?;
            cx.extends(1, g, std::slice::from_ref(p))?;
            cx.extends(2, g, std::slice::from_ref(q))?;
            if cx.concl(1) != cx.concl(2) {
                return Err(cx.shape("both cases must reach the same conclusion"));
            }
            Ok(j(g, cx.concl(1).clone()))
        }
        OrE2 | OrE3 => {
            cx.count(1)?;
            let (p, q) = as_neg(cx.concl(0))
                .and_then(as_or)
                .ok_or_else(|| cx.shape("premise must be ~(p \\/ q)"))?;
            let side = if matches!(rule, OrE2) { p } else { q };
            Ok(j(cx.gamma(), neg(side.clone())))
        }
        ZeroI { ctx } => {
            cx.count(0)?;
            Ok(Judgment::new(ctx.iter().cloned(), nat(Term::Zero)))
        }
        SEqI => {
            cx.count(1)?;
            let (a, b) = as_eq(cx.concl(0)).ok_or_else(|| cx.shape("premise must be an equation"))?;
            Ok(j(cx.gamma(), eq(succ(a.clone()), succ(b.clone()))))
        }
        SEqE => {
            cx.count(1)?;
            match as_eq(cx.concl(0)) {
                Some((Term::Succ(a), Term::Succ(b))) => Ok(j(cx.gamma(), eq((**a).clone(), (**b).clone()))),
                _ => Err(cx.shape("premise must be S(a) = S(b)")),
            }
        }
        SNeqI => {
            cx.count(1)?;
            let (a, b) = as_neg(cx.concl(0))
                .and_then(as_eq)
                .ok_or_else(|| cx.shape("premise must be ~(a = b)"))?;
            Ok(j(cx.gamma(), neq(succ(a.clone()), succ(b.clone()))))
        }
        SNeqE => {
            cx.count(1)?;
            match as_neg(cx.concl(0)).and_then(as_eq) {
                Some((Term::Succ(a), Term::Succ(b))) => {
                    Ok(j(cx.gamma(), neq((**a).clone(), (**b).clone())))
                }
                _ => Err(cx.shape("premise must be ~(S(a) = S(b))")),
            }
        }
        SNeqZeroI => {
            cx.count(1)?;
            let a = cx.nat_of(0)?;
            Ok(j(cx.gamma(), neq(succ(a.clone()), Term::Zero)))
        }
        PEqI2 => {
            cx.count(1)?;
            let a = cx.nat_of(0)?;
            Ok(j(cx.gamma(), eq(pred(succ(a.clone())), a.clone())))
        }
        PTI => {
            cx.count(1)?;
            let a = cx.nat_of(0)?;
            Ok(j(cx.gamma(), nat(pred(a.clone()))))
        }
        PTE => {
            cx.count(1)?;
            match cx.nat_of(0)? {
                Term::Pred(a) => Ok(j(cx.gamma(), nat((**a).clone()))),
                _ => Err(cx.shape("premise must be nat(P(a))")),
            }
        }
        CondI1 { b } => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let a = cx.nat_of(1)?;
            Ok(j(cx.gamma(), eq(cond(cx.concl(0).clone(), a.clone(), b.clone()), a.clone())))
        }
        CondI2 { a } => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let c = as_neg(cx.concl(0)).ok_or_else(|| cx.shape("first premise must be a negation"))?;
            let b = cx.nat_of(1)?;
            Ok(j(cx.gamma(), eq(cond(c.clone(), a.clone(), b.clone()), b.clone())))
        }
        Ind { p, x } => {
            cx.count(3)?;
            let g = cx.gamma();
            cx.same_gamma(&[2])?;
            cx.not_free_in_gamma(g, *x)?;
            if *cx.concl(0) != cx.subst(p, *x, &Term::Zero)? {
                return Err(cx.shape("base case must be p[0]"));
            }
            cx.extends(1, g, &[nat(var(*x)), p.clone()])?;
            if *cx.concl(1) != cx.subst(p, *x, &succ(var(*x)))? {
                return Err(cx.shape("step case must conclude p[S(x)]"));
            }
            let a = cx.nat_of(2)?;
            Ok(j(g, cx.subst(p, *x, a)?))
        }
        Hyp { ctx, p } => {
            cx.count(0)?;
            Ok(Judgment::new(ctx.iter().cloned().chain(std::iter::once(p.clone())), p.clone()))
        }
        Weaken { p } => {
            cx.count(1)?;
            Ok(Judgment { hyps: with_hyp(cx.gamma(), std::slice::from_ref(p)), concl: cx.concl(0).clone() })
        }
        ForallI1 { x } => {
            cx.count(1)?;
            let h = &cx.prem[0].hyps;
            let nx = nat(var(*x));
            if !h.contains(&nx) {
                return Err(cx.shape(format!("premise must assume nat(v{x})")));
            }
            let mut g = h.clone();
            g.remove(&nx);
            cx.not_free_in_gamma(&g, *x)?;
            Ok(j(&g, forall(*x, cx.concl(0).clone())))
        }
        ForallE1 => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let (x, p) = match cx.concl(0) {
                Term::Forall(x, p) => (*x, p),
                _ => return Err(cx.shape("first premise must be universally quantified")),
            };
            let a = cx.nat_of(1)?;
            Ok(j(cx.gamma(), cx.subst(p, x, a)?))
        }
        ForallI2 { x, p } => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let a = cx.nat_of(0)?;
            if *cx.concl(1) != neg(cx.subst(p, *x, a)?) {
                return Err(cx.shape("second premise must be ~p[a]"));
            }
            Ok(j(cx.gamma(), neg(forall(*x, p.clone()))))
        }
        ForallE2 | ExistsE1 => {
            cx.count(2)?;
            let g = cx.gamma();
            let (x, p, hyp) = match (rule, cx.concl(0)) {
                (ForallE2, Term::Neg(inner)) => match &**inner {
                    Term::Forall(x, p) => (*x, p, neg((**p).clone())),
                    _ => return Err(cx.shape("first premise must be ~forall x. p")),
                },
                (ExistsE1, Term::Exists(x, p)) => (*x, p, (**p).clone()),
                _ => return Err(cx.shape("first premise has the wrong quantifier shape")),
            };
            let _ = p;
            cx.not_free_in_gamma(g, x)?;
            cx.extends(1, g, &[nat(var(x)), hyp])?;
            let q = cx.concl(1);
            if q.occurs_free(x) {
                return Err(cx.err(RuleErrorKind::SideCondition(format!("v{x} is free in the conclusion"))));
            }
            Ok(j(g, q.clone()))
        }
        ExistsI1 { x, p } => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let a = cx.nat_of(0)?;
            if *cx.concl(1) != cx.subst(p, *x, a)? {
                return Err(cx.shape("second premise must be p[a]"));
            }
            Ok(j(cx.gamma(), exists(*x, p.clone())))
        }
        ExistsI2 { x } => {
            cx.count(1)?;
            let h = &cx.prem[0].hyps;
            let nx = nat(var(*x));
            if !h.contains(&nx) {
                return Err(cx.shape(format!("premise must assume nat(v{x})")));
            }
            let mut g = h.clone();
            g.remove(&nx);
            cx.not_free_in_gamma(&g, *x)?;
            let p = as_neg(cx.concl(0)).ok_or_else(|| cx.shape("premise must be a negation"))?;
            Ok(j(&g, neg(exists(*x, p.clone()))))
        }
        ExistsE2 => {
            cx.count(2)?;
            cx.same_gamma(&[1])?;
            let (x, p) = match as_neg(cx.concl(0)) {
                Some(Term::Exists(x, p)) => (*x, p),
                _ => return Err(cx.shape("first premise must be ~exists x. p")),
            };
            let a = cx.nat_of(1)?;
            Ok(j(cx.gamma(), neg(cx.subst(p, x, a)?)))
        }
        ForallInd { x, p } => {
            cx.count(2)?;
            let g = cx.gamma();
            cx.not_free_in_gamma(g, *x)?;
            if *cx.concl(0) != cx.subst(p, *x, &Term::Zero)? {
                return Err(cx.shape("base case must be p[0]"));
            }
            cx.extends(1, g, &[nat(var(*x)), p.clone()])?;
            if *cx.concl(1) != cx.subst(p, *x, &succ(var(*x)))? {
                return Err(cx.shape("step case must conclude p[S(x)]"));
            }
            Ok(j(g, forall(*x, p.clone())))
        }
    }
}

#[cfg(test)]
mod tests;
