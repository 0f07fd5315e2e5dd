//! Derived rules built from primitive applications only.

use super::*;
use crate::term::{fresh_var, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TacticError {
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("{tactic}: {msg}")]
    Shape { tactic: &'static str, msg: String },
    #[error("not derivable from the primitive rules: {0}")]
    Underivable(String),
    #[error("term does not reduce to a value: {0}")]
    NotValue(String),
    #[error("no certificate for this reduction: {0}")]
    Uncertifiable(String),
    #[error("definition shape not recognized: {0}")]
    ShapeNotRecognized(String),
    #[error("missing totality certificate: {0}")]
    MissingCertificate(String),
}

pub type TResult = Result<Theorem, TacticError>;

fn shape(tactic: &'static str, msg: impl Into<String>) -> TacticError {
    TacticError::Shape { tactic, msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Refute,
    Prove,
}

/// Pattern views on conclusions.
pub fn split_or(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Or(a, b) => Some((a, b)),
        _ => None,
    }
}

pub fn split_neg(t: &Term) -> Option<&Term> {
    match t {
        Term::Neg(a) => Some(a),
        _ => None,
    }
}

pub fn split_eq(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Eq(a, b) => Some((a, b)),
        _ => None,
    }
}

/// `p` when `t` is `p \/ ~p`.
pub fn split_bool(t: &Term) -> Option<&Term> {
    let (p, np) = split_or(t)?;
    (split_neg(np)? == p).then_some(p)
}

/// `(p, q)` when `t` is `~(~p \/ ~q)`.
pub fn split_and(t: &Term) -> Option<(&Term, &Term)> {
    let (np, nq) = split_or(split_neg(t)?)?;
    Some((split_neg(np)?, split_neg(nq)?))
}

/// `(p, q)` when `t` is `~p \/ q`.
pub fn split_implies(t: &Term) -> Option<(&Term, &Term)> {
    let (np, q) = split_or(t)?;
    Some((split_neg(np)?, q))
}

pub fn split_nat(t: &Term) -> Option<&Term> {
    let (a, b) = split_eq(t)?;
    (a == b).then_some(a)
}

fn set_with(g: &BTreeSet<Term>, extra: &[Term]) -> BTreeSet<Term> {
    let mut h = g.clone();
    h.extend(extra.iter().cloned());
    h
}

fn set_without(g: &BTreeSet<Term>, drop: &[&Term]) -> BTreeSet<Term> {
    let mut h = g.clone();
    for d in drop {
        h.remove(*d);
    }
    h
}

/// Tactic front end over one definition list.
#[derive(Clone, Copy)]
pub struct Prover<'a> {
    pub defs: &'a DefinitionList,
}

impl<'a> Prover<'a> {
    pub fn new(defs: &'a DefinitionList) -> Self {
        Prover { defs }
    }

    pub fn rule(&self, rule: RuleApp, premises: &[Theorem]) -> TResult {
        Ok(apply_rule(self.defs, rule, premises)?)
    }

    // -- structural --------------------------------------------------------

    pub fn hyp(&self, g: &BTreeSet<Term>, p: Term) -> Theorem {
        let ctx = set_without(g, &[&p]).into_iter().collect();
        self.rule(RuleApp::Hyp { ctx, p }, &[]).expect("H has no side conditions")
    }

    pub fn weaken(&self, th: &Theorem, p: Term) -> TResult {
        if th.hyps().contains(&p) {
            return Ok(th.clone());
        }
        self.rule(RuleApp::Weaken { p }, std::slice::from_ref(th))
    }

    /// Weaken `th` until its hypotheses are exactly `g`.
    pub fn weaken_to(&self, th: &Theorem, g: &BTreeSet<Term>) -> TResult {
        if !th.hyps().is_subset(g) {
            return Err(shape("W", "target context does not contain the premise context"));
        }
        let mut out = th.clone();
        for h in g.difference(th.hyps()) {
            out = self.weaken(&out, h.clone())?;
        }
        Ok(out)
    }

    fn union(&self, ths: &[&Theorem]) -> BTreeSet<Term> {
        let mut g = BTreeSet::new();
        for t in ths {
            g.extend(t.hyps().iter().cloned());
        }
        g
    }

    fn align(&self, ths: &[&Theorem]) -> Result<Vec<Theorem>, TacticError> {
        let g = self.union(ths);
        ths.iter().map(|t| self.weaken_to(t, &g)).collect()
    }

    fn ctx_rule(&self, rule: RuleApp, prem: &[&Theorem]) -> TResult {
        let prem = self.align(prem)?;
        self.rule(rule, &prem)
    }

    // -- primitive wrappers that align contexts ------------------------------

    pub fn zero(&self, g: &BTreeSet<Term>) -> Theorem {
        self.rule(RuleApp::ZeroI { ctx: g.iter().cloned().collect() }, &[]).expect("0I")
    }

    pub fn sym(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::EqSym, std::slice::from_ref(th))
    }

    pub fn subst(&self, eq: &Theorem, th: &Theorem, paths: Vec<Path>) -> TResult {
        self.ctx_rule(RuleApp::EqSubst { paths }, &[eq, th])
    }

    /// Rewrite every occurrence of the equation's left side.
    pub fn subst_all(&self, eq: &Theorem, th: &Theorem) -> TResult {
        let (a, _) = split_eq(eq.concl()).ok_or_else(|| shape("=E", "not an equation"))?;
        let paths = th.concl().occurrences(a);
        if paths.is_empty() {
            return Ok(th.clone());
        }
        self.subst(eq, th, paths)
    }

    pub fn negneg_i(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::NegNegI, std::slice::from_ref(th))
    }

    pub fn negneg_e(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::NegNegE, std::slice::from_ref(th))
    }

    pub fn neg_e(&self, p: &Theorem, np: &Theorem, q: Term) -> TResult {
        self.ctx_rule(RuleApp::NegE { q }, &[p, np])
    }

    pub fn or_i1(&self, th: &Theorem, q: Term) -> TResult {
        self.rule(RuleApp::OrI1 { q }, std::slice::from_ref(th))
    }

    pub fn or_i2(&self, p: Term, th: &Theorem) -> TResult {
        self.rule(RuleApp::OrI2 { p }, std::slice::from_ref(th))
    }

    pub fn or_i3(&self, np: &Theorem, nq: &Theorem) -> TResult {
        self.ctx_rule(RuleApp::OrI3, &[np, nq])
    }

    /// Case analysis. Each case may use its disjunct as a hypothesis.
    pub fn or_e1(&self, disj: &Theorem, case_p: &Theorem, case_q: &Theorem) -> TResult {
        let (p, q) = split_or(disj.concl()).ok_or_else(|| shape("orE1", "not a disjunction"))?;
        let mut g = disj.hyps().clone();
        g.extend(set_without(case_p.hyps(), &[p]));
        g.extend(set_without(case_q.hyps(), &[q]));
        let d = self.weaken_to(disj, &g)?;
        let c1 = self.weaken_to(case_p, &set_with(&g, std::slice::from_ref(p)))?;
        let c2 = self.weaken_to(case_q, &set_with(&g, std::slice::from_ref(q)))?;
        self.rule(RuleApp::OrE1, &[d, c1, c2])
    }

    pub fn or_e2(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::OrE2, std::slice::from_ref(th))
    }

    pub fn or_e3(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::OrE3, std::slice::from_ref(th))
    }

    pub fn s_eq_i(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::SEqI, std::slice::from_ref(th))
    }

    pub fn s_eq_e(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::SEqE, std::slice::from_ref(th))
    }

    pub fn s_neq_i(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::SNeqI, std::slice::from_ref(th))
    }

    pub fn s_neq_e(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::SNeqE, std::slice::from_ref(th))
    }

    pub fn s_neq_zero(&self, nat_a: &Theorem) -> TResult {
        self.rule(RuleApp::SNeqZeroI, std::slice::from_ref(nat_a))
    }

    pub fn p_eq_i2(&self, nat_a: &Theorem) -> TResult {
        self.rule(RuleApp::PEqI2, std::slice::from_ref(nat_a))
    }

    pub fn p_ti(&self, nat_a: &Theorem) -> TResult {
        self.rule(RuleApp::PTI, std::slice::from_ref(nat_a))
    }

    pub fn p_te(&self, th: &Theorem) -> TResult {
        self.rule(RuleApp::PTE, std::slice::from_ref(th))
    }

    pub fn cond_i1(&self, c: &Theorem, nat_a: &Theorem, b: Term) -> TResult {
        self.ctx_rule(RuleApp::CondI1 { b }, &[c, nat_a])
    }

    pub fn cond_i2(&self, nc: &Theorem, nat_b: &Theorem, a: Term) -> TResult {
        self.ctx_rule(RuleApp::CondI2 { a }, &[nc, nat_b])
    }

    /// Induction on `x` in template `p`. The step may use `nat(x)` and `p`.
    pub fn ind(&self, p: Term, x: u32, base: &Theorem, step: &Theorem, nat_a: &Theorem) -> TResult {
        let nx = nat(var(x));
        let mut g = self.union(&[base, nat_a]);
        g.extend(set_without(step.hyps(), &[&nx, &p]));
        let base = self.weaken_to(base, &g)?;
        let nat_a = self.weaken_to(nat_a, &g)?;
        let step = self.weaken_to(step, &set_with(&g, &[nx, p.clone()]))?;
        self.rule(RuleApp::Ind { p, x }, &[base, step, nat_a])
    }

    /// Fold instances of `def`'s body at `paths` given nat facts for the arguments.
    pub fn fold(&self, def: usize, args: Vec<Term>, paths: Vec<Path>, th: &Theorem, nats: &[Theorem]) -> TResult {
        let mut prem: Vec<&Theorem> = vec![th];
        prem.extend(nats.iter());
        self.ctx_rule(RuleApp::DefFold { def, args, paths }, &prem)
    }

    pub fn unfold(&self, def: usize, paths: Vec<Path>, th: &Theorem) -> TResult {
        self.rule(RuleApp::DefUnfold { def, paths }, std::slice::from_ref(th))
    }

    // -- quantifier wrappers --------------------------------------------------

    pub fn forall_i1(&self, x: u32, th: &Theorem) -> TResult {
        let th = self.weaken(th, nat(var(x)))?;
        self.rule(RuleApp::ForallI1 { x }, &[th])
    }

    pub fn forall_e1(&self, all: &Theorem, nat_a: &Theorem) -> TResult {
        self.ctx_rule(RuleApp::ForallE1, &[all, nat_a])
    }

    pub fn forall_i2(&self, x: u32, p: Term, nat_a: &Theorem, np: &Theorem) -> TResult {
        self.ctx_rule(RuleApp::ForallI2 { x, p }, &[nat_a, np])
    }

    fn discharge_case(&self, major: &Theorem, case: &Theorem, extra: &[Term]) -> Result<Vec<Theorem>, TacticError> {
        let drops: Vec<&Term> = extra.iter().collect();
        let mut g = major.hyps().clone();
        g.extend(set_without(case.hyps(), &drops));
        Ok(vec![self.weaken_to(major, &g)?, self.weaken_to(case, &set_with(&g, extra))?])
    }

    pub fn forall_e2(&self, nall: &Theorem, case: &Theorem) -> TResult {
        let (x, p) = match split_neg(nall.concl()) {
            Some(Term::Forall(x, p)) => (*x, (**p).clone()),
            _ => return Err(shape("forallE2", "not a negated universal")),
        };
        let prem = self.discharge_case(nall, case, &[nat(var(x)), neg(p)])?;
        self.rule(RuleApp::ForallE2, &prem)
    }

    pub fn exists_i1(&self, x: u32, p: Term, nat_a: &Theorem, pa: &Theorem) -> TResult {
        self.ctx_rule(RuleApp::ExistsI1 { x, p }, &[nat_a, pa])
    }

    pub fn exists_e1(&self, ex: &Theorem, case: &Theorem) -> TResult {
        let (x, p) = match ex.concl() {
            Term::Exists(x, p) => (*x, (**p).clone()),
            _ => return Err(shape("existsE1", "not an existential")),
        };
        let prem = self.discharge_case(ex, case, &[nat(var(x)), p])?;
        self.rule(RuleApp::ExistsE1, &prem)
    }

    pub fn exists_i2(&self, x: u32, th: &Theorem) -> TResult {
        let th = self.weaken(th, nat(var(x)))?;
        self.rule(RuleApp::ExistsI2 { x }, &[th])
    }

    pub fn exists_e2(&self, nex: &Theorem, nat_a: &Theorem) -> TResult {
        self.ctx_rule(RuleApp::ExistsE2, &[nex, nat_a])
    }

    pub fn forall_ind(&self, x: u32, p: Term, base: &Theorem, step: &Theorem) -> TResult {
        let nx = nat(var(x));
        let mut g = base.hyps().clone();
        g.extend(set_without(step.hyps(), &[&nx, &p]));
        let base = self.weaken_to(base, &g)?;
        let step = self.weaken_to(step, &set_with(&g, &[nx, p.clone()]))?;
        self.rule(RuleApp::ForallInd { x, p }, &[base, step])
    }

    // -- contradiction ----------------------------------------------------------

    /// Refute `p` (or prove it) from `bool(p)` and a contradiction under `p` (or `~p`).
    pub fn contradiction(&self, dir: Direction, p_bool: &Theorem, hyp_q: &Theorem, hyp_nq: &Theorem) -> TResult {
        let p = split_bool(p_bool.concl()).ok_or_else(|| shape("contradiction", "first premise must be bool(p)"))?;
        let q = hyp_q.concl();
        if split_neg(hyp_nq.concl()) != Some(q) {
            return Err(shape("contradiction", "third premise must negate the second"));
        }
        let assumed = match dir {
            Direction::Refute => p.clone(),
            Direction::Prove => neg(p.clone()),
        };
        for h in [hyp_q, hyp_nq] {
            if !h.hyps().contains(&assumed) {
                return Err(shape("contradiction", "the contradiction must be derived under the case hypothesis"));
            }
        }
        let goal = match dir {
            Direction::Refute => neg(p.clone()),
            Direction::Prove => p.clone(),
        };
        let absurd = self.neg_e(hyp_q, hyp_nq, goal.clone())?;
        let g = self.union(&[p_bool]);
        let direct = self.hyp(&g, goal);
        match dir {
            Direction::Refute => self.or_e1(p_bool, &absurd, &direct),
            Direction::Prove => self.or_e1(p_bool, &direct, &absurd),
        }
    }

    // -- conjunction, implication, biconditional, transitivity --------------------

    pub fn and_i(&self, p: &Theorem, q: &Theorem) -> TResult {
        let a = self.negneg_i(p)?;
        let b = self.negneg_i(q)?;
        self.or_i3(&a, &b)
    }

    pub fn and_e1(&self, th: &Theorem) -> TResult {
        split_and(th.concl()).ok_or_else(|| shape("andE1", "not a conjunction"))?;
        self.negneg_e(&self.or_e2(th)?)
    }

    pub fn and_e2(&self, th: &Theorem) -> TResult {
        split_and(th.concl()).ok_or_else(|| shape("andE2", "not a conjunction"))?;
        self.negneg_e(&self.or_e3(th)?)
    }

    /// `bool(p)` and `G, p |- q` give `p -> q`.
    pub fn imp_i(&self, p_bool: &Theorem, hyp_q: &Theorem) -> TResult {
        let p = split_bool(p_bool.concl()).ok_or_else(|| shape("impI", "first premise must be bool(p)"))?;
        if !hyp_q.hyps().contains(p) {
            return Err(shape("impI", "second premise must be derived under p"));
        }
        let q = hyp_q.concl().clone();
        let np = neg(p.clone());
        let yes = self.or_i2(np.clone(), hyp_q)?;
        let g = self.union(&[p_bool]);
        let no = self.or_i1(&self.hyp(&g, np), q)?;
        self.or_e1(p_bool, &yes, &no)
    }

    pub fn imp_e(&self, imp: &Theorem, p: &Theorem) -> TResult {
        let (pp, q) = split_implies(imp.concl()).ok_or_else(|| shape("impE", "not an implication"))?;
        if pp != p.concl() {
            return Err(shape("impE", "antecedent does not match"));
        }
        let g = self.union(&[imp, p]);
        let np = self.hyp(&g, neg(pp.clone()));
        let absurd = self.neg_e(p, &np, q.clone())?;
        let direct = self.hyp(&g, q.clone());
        self.or_e1(imp, &absurd, &direct)
    }

    pub fn iff_i(&self, p_bool: &Theorem, q_bool: &Theorem, p_q: &Theorem, q_p: &Theorem) -> TResult {
        let pq = self.imp_i(p_bool, p_q)?;
        let qp = self.imp_i(q_bool, q_p)?;
        self.and_i(&pq, &qp)
    }

    pub fn iff_e1(&self, iff: &Theorem, p: &Theorem) -> TResult {
        self.imp_e(&self.and_e1(iff)?, p)
    }

    pub fn iff_e2(&self, iff: &Theorem, q: &Theorem) -> TResult {
        self.imp_e(&self.and_e2(iff)?, q)
    }

    /// `a = b` and `b = c` give `a = c`.
    pub fn eq_trans(&self, ab: &Theorem, bc: &Theorem) -> TResult {
        let (_, b) = split_eq(ab.concl()).ok_or_else(|| shape("=T", "first premise must be an equation"))?;
        let (b2, _) = split_eq(bc.concl()).ok_or_else(|| shape("=T", "second premise must be an equation"))?;
        if b != b2 {
            return Err(shape("=T", "middle terms differ"));
        }
        self.subst(bc, ab, vec![vec![1]])
    }

    /// `a = b` gives `nat(a)`.
    pub fn nat_left(&self, ab: &Theorem) -> TResult {
        let ba = self.sym(ab)?;
        self.eq_trans(ab, &ba)
    }

    // -- typing rules -------------------------------------------------------------

    pub fn neg_ti(&self, p_bool: &Theorem) -> TResult {
        let p = split_bool(p_bool.concl()).ok_or_else(|| shape("~TI", "premise must be bool(p)"))?.clone();
        let g = self.union(&[p_bool]);
        let np = neg(p.clone());
        let nnp = neg(np.clone());
        let yes = self.or_i2(np.clone(), &self.negneg_i(&self.hyp(&g, p))?)?;
        let no = self.or_i1(&self.hyp(&g, np), nnp)?;
        self.or_e1(p_bool, &yes, &no)
    }

    pub fn neg_te(&self, np_bool: &Theorem) -> TResult {
        let np = split_bool(np_bool.concl()).ok_or_else(|| shape("~TE", "premise must be bool(~p)"))?;
        let p = split_neg(np).ok_or_else(|| shape("~TE", "premise must be bool(~p)"))?.clone();
        let g = self.union(&[np_bool]);
        let first = self.or_i2(p.clone(), &self.hyp(&g, np.clone()))?;
        let nnp = self.hyp(&g, neg(np.clone()));
        let second = self.or_i1(&self.negneg_e(&nnp)?, np.clone())?;
        self.or_e1(np_bool, &first, &second)
    }

    pub fn or_ti(&self, p_bool: &Theorem, q_bool: &Theorem) -> TResult {
        let p = split_bool(p_bool.concl()).ok_or_else(|| shape("\\/TI", "premise must be bool(p)"))?.clone();
        let q = split_bool(q_bool.concl()).ok_or_else(|| shape("\\/TI", "premise must be bool(q)"))?.clone();
        let g = self.union(&[p_bool, q_bool]);
        let pq = or(p.clone(), q.clone());
        let npq = neg(pq.clone());
        let case_p = self.or_i1(&self.or_i1(&self.hyp(&g, p.clone()), q.clone())?, npq.clone())?;
        let gp = set_with(&g, &[neg(p.clone())]);
        let case_q = self.or_i1(&self.or_i2(p.clone(), &self.hyp(&gp, q.clone()))?, npq)?;
        let both = self.or_i3(&self.hyp(&gp, neg(p.clone())), &self.hyp(&gp, neg(q.clone())))?;
        let case_np = self.or_i2(pq, &both)?;
        let case_np = self.or_e1(&self.weaken_to(q_bool, &gp)?, &case_q, &case_np)?;
        self.or_e1(p_bool, &case_p, &case_np)
    }

    pub fn or_te(&self, pq_bool: &Theorem) -> TResult {
        let pq = split_bool(pq_bool.concl()).ok_or_else(|| shape("\\/TE", "premise must be bool(p \\/ q)"))?;
        let (p, q) = split_or(pq).ok_or_else(|| shape("\\/TE", "premise must be bool(p \\/ q)"))?;
        let (p, q) = (p.clone(), q.clone());
        let g = self.union(&[pq_bool]);
        let (bp, bq) = (boolean(p.clone()), boolean(q.clone()));
        let from_p = self.or_i1(&self.or_i1(&self.hyp(&g, p.clone()), neg(p.clone()))?, bq.clone())?;
        let from_q = self.or_i2(bp.clone(), &self.or_i1(&self.hyp(&g, q.clone()), neg(q.clone()))?)?;
        let yes = self.or_e1(&self.hyp(&g, pq.clone()), &from_p, &from_q)?;
        let np = self.or_e2(&self.hyp(&g, neg(pq.clone())))?;
        let no = self.or_i1(&self.or_i2(p, &np)?, bq)?;
        self.or_e1(pq_bool, &yes, &no)
    }

    pub fn and_ti(&self, p_bool: &Theorem, q_bool: &Theorem) -> TResult {
        let inner = self.or_ti(&self.neg_ti(p_bool)?, &self.neg_ti(q_bool)?)?;
        self.neg_ti(&inner)
    }

    /// From `bool(~p) \/ bool(~q)`-shaped split to `bool(p) \/ bool(q)`.
    fn strip_negated_split(&self, split: &Theorem) -> TResult {
        let (bnp, bnq) = split_or(split.concl()).ok_or_else(|| shape("typing", "expected a disjunction"))?;
        let g = self.union(&[split]);
        let bp = self.neg_te(&self.hyp(&g, bnp.clone()))?;
        let bq = self.neg_te(&self.hyp(&g, bnq.clone()))?;
        let left = self.or_i1(&bp, bq.concl().clone())?;
        let right = self.or_i2(bp.concl().clone(), &bq)?;
        self.or_e1(split, &left, &right)
    }

    pub fn and_te(&self, and_bool: &Theorem) -> TResult {
        let inner = self.neg_te(and_bool)?;
        let split = self.or_te(&inner)?;
        self.strip_negated_split(&split)
    }

    pub fn imp_ti(&self, p_bool: &Theorem, q_bool: &Theorem) -> TResult {
        self.or_ti(&self.neg_ti(p_bool)?, q_bool)
    }

    pub fn imp_te(&self, imp_bool: &Theorem) -> TResult {
        let split = self.or_te(imp_bool)?;
        let (bnp, bq) = split_or(split.concl()).ok_or_else(|| shape("->TE", "unexpected split"))?;
        let g = self.union(&[&split]);
        let bp = self.neg_te(&self.hyp(&g, bnp.clone()))?;
        let left = self.or_i1(&bp, bq.clone())?;
        let right = self.or_i2(bp.concl().clone(), &self.hyp(&g, bq.clone()))?;
        self.or_e1(&split, &left, &right)
    }

    pub fn iff_ti(&self, p_bool: &Theorem, q_bool: &Theorem) -> TResult {
        self.and_ti(&self.imp_ti(p_bool, q_bool)?, &self.imp_ti(q_bool, p_bool)?)
    }

    /// `bool(p <-> q)` gives `bool(p)` (`first`) or `bool(q)`.
    pub fn iff_te(&self, iff_bool: &Theorem, first: bool) -> TResult {
        let x = split_bool(iff_bool.concl()).ok_or_else(|| shape("<->TE", "premise must be bool(p <-> q)"))?;
        let (pq, qp) = split_and(x).ok_or_else(|| shape("<->TE", "premise must be bool(p <-> q)"))?;
        let (p, q) = split_implies(pq).ok_or_else(|| shape("<->TE", "premise must be bool(p <-> q)"))?;
        if split_implies(qp) != Some((q, p)) {
            return Err(shape("<->TE", "premise must be bool(p <-> q)"));
        }
        let (p, q) = (p.clone(), q.clone());
        let (pq, qp) = (pq.clone(), qp.clone());
        // (goal side, other side, implication from goal, implication into goal)
        let (a, b, a_to_b, b_to_a) = if first { (p, q, pq, qp) } else { (q, p, qp, pq) };
        let g = self.union(&[iff_bool]);
        let na = neg(a.clone());
        let ba = boolean(a.clone());
        let bool_from_a = |t: &Theorem| self.or_i1(t, na.clone());
        let bool_from_na = |t: &Theorem| self.or_i2(a.clone(), t);

        // Case x: both implications hold.
        let hx = self.hyp(&g, x.clone());
        let (imp1, imp2) = if first {
            (self.and_e1(&hx)?, self.and_e2(&hx)?)
        } else {
            (self.and_e2(&hx)?, self.and_e1(&hx)?)
        };
        debug_assert_eq!(imp1.concl(), &a_to_b);
        let gx = imp1.hyps().clone();
        let on_na = bool_from_na(&self.hyp(&gx, na.clone()))?;
        let gb = set_with(&gx, std::slice::from_ref(&b));
        let hb = self.hyp(&gb, b.clone());
        let absurd = self.neg_e(&hb, &self.hyp(&gb, neg(b.clone())), ba.clone())?;
        let on_a = bool_from_a(&self.hyp(&gb, a.clone()))?;
        let on_b = self.or_e1(&self.weaken_to(&imp2, &gb)?, &absurd, &on_a)?;
        let case_x = self.or_e1(&imp1, &on_na, &on_b)?;

        // Case ~x: one implication fails.
        let hnx = self.negneg_e(&self.hyp(&g, neg(x.clone())))?;
        let gn = hnx.hyps().clone();
        let fail1 = self.hyp(&gn, neg(a_to_b.clone()));
        let fail2 = self.hyp(&gn, neg(b_to_a.clone()));
        // ~(~a \/ b) gives ~~a, ~(~b \/ a) gives ~a.
        let left = bool_from_a(&self.negneg_e(&self.or_e2(&fail1)?)?)?;
        let right = bool_from_na(&self.or_e3(&fail2)?)?;
        let (l, r) = if first { (left, right) } else { (right, left) };
        let case_nx = self.or_e1(&hnx, &l, &r)?;
        self.or_e1(iff_bool, &case_x, &case_nx)
    }

    pub fn s_ti(&self, nat_a: &Theorem) -> TResult {
        split_nat(nat_a.concl()).ok_or_else(|| shape("STI", "premise must be nat(a)"))?;
        self.s_eq_i(nat_a)
    }

    pub fn s_te(&self, nat_sa: &Theorem) -> TResult {
        match split_nat(nat_sa.concl()) {
            Some(Term::Succ(_)) => self.s_eq_e(nat_sa),
            _ => Err(shape("STE", "premise must be nat(S(a))")),
        }
    }

    /// `bool(c)`, `nat(a)`, `nat(b)` give `nat(c ? a : b)`.
    pub fn cond_ti(&self, c_bool: &Theorem, nat_a: &Theorem, nat_b: &Theorem) -> TResult {
        let c = split_bool(c_bool.concl()).ok_or_else(|| shape("?TI", "premise must be bool(c)"))?.clone();
        let a = split_nat(nat_a.concl()).ok_or_else(|| shape("?TI", "premise must be nat(a)"))?.clone();
        let b = split_nat(nat_b.concl()).ok_or_else(|| shape("?TI", "premise must be nat(b)"))?.clone();
        let g = self.union(&[c_bool, nat_a, nat_b]);
        let yes = self.cond_i1(&self.hyp(&g, c.clone()), nat_a, b)?;
        let yes = self.subst(&self.sym(&yes)?, nat_a, vec![vec![0], vec![1]])?;
        let no = self.cond_i2(&self.hyp(&g, neg(c)), nat_b, a)?;
        let no = self.subst(&self.sym(&no)?, nat_b, vec![vec![0], vec![1]])?;
        self.or_e1(c_bool, &yes, &no)
    }

    /// `nat(a)`, `nat(b)` give `bool(a = b)` on the fragment where this is
    /// derivable: equal sides, a right side reducing to `0` after stripping
    /// common successors, and closed sides whose left value is at least the right.
    pub fn eq_ti(&self, nat_a: &Theorem, nat_b: &Theorem) -> TResult {
        let a = split_nat(nat_a.concl()).ok_or_else(|| shape("=TI", "premise must be nat(a)"))?.clone();
        let b = split_nat(nat_b.concl()).ok_or_else(|| shape("=TI", "premise must be nat(b)"))?.clone();
        if a == b {
            let g = self.union(&[nat_a, nat_b]);
            let na = self.weaken_to(nat_a, &g)?;
            return self.or_i1(&na, neg(eq(a.clone(), a)));
        }
        match (&a, &b) {
            (Term::Succ(a1), Term::Succ(b1)) => {
                let inner = self.eq_ti(&self.s_eq_e(nat_a)?, &self.s_eq_e(nat_b)?)?;
                let (a1, b1) = ((**a1).clone(), (**b1).clone());
                let g = self.union(&[&inner]);
                let e = eq(a1.clone(), b1.clone());
                let same = self.s_eq_i(&self.hyp(&g, e.clone()))?;
                let same = self.or_i1(&same, neg(eq(a.clone(), b.clone())))?;
                let diff = self.s_neq_i(&self.hyp(&g, neg(e)))?;
                let diff = self.or_i2(eq(a.clone(), b.clone()), &diff)?;
                self.or_e1(&inner, &same, &diff)
            }
            (_, Term::Zero) => self.eq_zero_ti(nat_a),
            _ => {
                if a.free_vars().is_empty() && b.free_vars().is_empty() {
                    let c = super::certify::Certifier::new(self.defs, super::certify::DEFAULT_FUEL);
                    let e = eq(a.clone(), b.clone());
                    if let Ok((holds, th)) = c.decide(&e) {
                        let g = self.union(&[nat_a, nat_b]);
                        let th = self.weaken_to(&th, &g)?;
                        return if holds {
                            self.or_i1(&th, neg(e))
                        } else {
                            self.or_i2(e, &th)
                        };
                    }
                }
                Err(TacticError::Underivable(format!(
                    "bool({} = {}) needs a disequation with a smaller left side",
                    print_raw(&a),
                    print_raw(&b)
                )))
            }
        }
    }

    /// `nat(a)` gives `bool(a = 0)` by induction.
    pub fn eq_zero_ti(&self, nat_a: &Theorem) -> TResult {
        let g = nat_a.hyps().clone();
        let mut avoid = BTreeSet::new();
        for h in &g {
            h.all_vars(&mut avoid);
        }
        nat_a.concl().all_vars(&mut avoid);
        let z = fresh_var(&avoid);
        let tmpl = boolean(eq(var(z), Term::Zero));
        let base = self.or_i1(&self.zero(&g), neg(eq(Term::Zero, Term::Zero)))?;
        let gs = set_with(&g, &[nat(var(z)), tmpl.clone()]);
        let step = self.s_neq_zero(&self.hyp(&gs, nat(var(z))))?;
        let step = self.or_i2(eq(succ(var(z)), Term::Zero), &step)?;
        self.ind(tmpl, z, &base, &step, nat_a)
    }

    /// `nat(a)` from `nat` facts by structure: numerals, S, P and `?:` over
    /// conditions whose booleanness is derivable.
    pub fn nat_of(&self, g: &BTreeSet<Term>, t: &Term) -> TResult {
        match t {
            Term::Zero => Ok(self.zero(g)),
            Term::Succ(a) => self.s_eq_i(&self.nat_of(g, a)?),
            Term::Pred(a) => self.p_ti(&self.nat_of(g, a)?),
            Term::Var(_) if g.contains(&nat(t.clone())) => Ok(self.hyp(g, nat(t.clone()))),
            _ => Err(shape("nat", format!("no typing derivation for {}", print_raw(t)))),
        }
    }

    // -- quantifier duals -----------------------------------------------------------

    /// `forall x. p` gives `~exists x. ~p`.
    pub fn forall_to_not_exists_not(&self, all: &Theorem) -> TResult {
        let x = match all.concl() {
            Term::Forall(x, _) => *x,
            _ => return Err(shape("dual", "not a universal")),
        };
        let g = set_with(all.hyps(), &[nat(var(x))]);
        let p = self.forall_e1(all, &self.hyp(&g, nat(var(x))))?;
        self.exists_i2(x, &self.negneg_i(&p)?)
    }

    /// `~exists x. ~p` gives `forall x. p`.
    pub fn not_exists_not_to_forall(&self, th: &Theorem) -> TResult {
        let x = match split_neg(th.concl()) {
            Some(Term::Exists(x, _)) => *x,
            _ => return Err(shape("dual", "not a negated existential")),
        };
        let g = set_with(th.hyps(), &[nat(var(x))]);
        let nnp = self.exists_e2(th, &self.hyp(&g, nat(var(x))))?;
        self.forall_i1(x, &self.negneg_e(&nnp)?)
    }

    /// `exists x. p` gives `~forall x. ~p`.
    pub fn exists_to_not_forall_not(&self, ex: &Theorem) -> TResult {
        let (x, p) = match ex.concl() {
            Term::Exists(x, p) => (*x, (**p).clone()),
            _ => return Err(shape("dual", "not an existential")),
        };
        let g = set_with(ex.hyps(), &[nat(var(x)), p.clone()]);
        let nnp = self.negneg_i(&self.hyp(&g, p.clone()))?;
        let case = self.forall_i2(x, neg(p), &self.hyp(&g, nat(var(x))), &nnp)?;
        self.exists_e1(ex, &case)
    }

    /// `~forall x. ~p` gives `exists x. p`.
    pub fn not_forall_not_to_exists(&self, th: &Theorem) -> TResult {
        let (x, np) = match split_neg(th.concl()) {
            Some(Term::Forall(x, np)) => (*x, (**np).clone()),
            _ => return Err(shape("dual", "not a negated universal")),
        };
        let p = split_neg(&np).ok_or_else(|| shape("dual", "body must be a negation"))?.clone();
        let g = set_with(th.hyps(), &[nat(var(x)), neg(np.clone())]);
        let pp = self.negneg_e(&self.hyp(&g, neg(np)))?;
        let case = self.exists_i1(x, p, &self.hyp(&g, nat(var(x))), &pp)?;
        self.forall_e2(th, &case)
    }

    /// `~forall x. p` gives `exists x. ~p`.
    pub fn not_forall_to_exists_not(&self, th: &Theorem) -> TResult {
        let (x, p) = match split_neg(th.concl()) {
            Some(Term::Forall(x, p)) => (*x, (**p).clone()),
            _ => return Err(shape("dual", "not a negated universal")),
        };
        let g = set_with(th.hyps(), &[nat(var(x)), neg(p.clone())]);
        let case = self.exists_i1(x, neg(p.clone()), &self.hyp(&g, nat(var(x))), &self.hyp(&g, neg(p)))?;
        self.forall_e2(th, &case)
    }

    /// `exists x. ~p` gives `~forall x. p`.
    pub fn exists_not_to_not_forall(&self, ex: &Theorem) -> TResult {
        let (x, np) = match ex.concl() {
            Term::Exists(x, np) => (*x, (**np).clone()),
            _ => return Err(shape("dual", "not an existential")),
        };
        let p = split_neg(&np).ok_or_else(|| shape("dual", "body must be a negation"))?.clone();
        let g = set_with(ex.hyps(), &[nat(var(x)), np.clone()]);
        let case = self.forall_i2(x, p, &self.hyp(&g, nat(var(x))), &self.hyp(&g, np))?;
        self.exists_e1(ex, &case)
    }

    /// `~exists x. p` gives `forall x. ~p`.
    pub fn not_exists_to_forall_not(&self, th: &Theorem) -> TResult {
        let x = match split_neg(th.concl()) {
            Some(Term::Exists(x, _)) => *x,
            _ => return Err(shape("dual", "not a negated existential")),
        };
        let g = set_with(th.hyps(), &[nat(var(x))]);
        let np = self.exists_e2(th, &self.hyp(&g, nat(var(x))))?;
        self.forall_i1(x, &np)
    }

    /// `forall x. ~p` gives `~exists x. p`.
    pub fn forall_not_to_not_exists(&self, all: &Theorem) -> TResult {
        let x = match all.concl() {
            Term::Forall(x, _) => *x,
            _ => return Err(shape("dual", "not a universal")),
        };
        let g = set_with(all.hyps(), &[nat(var(x))]);
        let np = self.forall_e1(all, &self.hyp(&g, nat(var(x))))?;
        split_neg(np.concl()).ok_or_else(|| shape("dual", "body must be a negation"))?;
        self.exists_i2(x, &np)
    }

    // -- named entry point --------------------------------------------------------

    /// Apply a derived rule by name.
    pub fn derived(&self, name: &str, premises: &[Theorem]) -> TResult {
        let want = |n: usize| -> Result<(), TacticError> {
            if premises.len() != n {
                return Err(shape("derived", format!("{name} takes {n} premises, got {}", premises.len())));
            }
            Ok(())
        };
        let p = premises;
        match name {
            "andI" => want(2).and_then(|_| self.and_i(&p[0], &p[1])),
            "andE1" => want(1).and_then(|_| self.and_e1(&p[0])),
            "andE2" => want(1).and_then(|_| self.and_e2(&p[0])),
            "impI" => want(2).and_then(|_| self.imp_i(&p[0], &p[1])),
            "impE" => want(2).and_then(|_| self.imp_e(&p[0], &p[1])),
            "iffI" => want(4).and_then(|_| self.iff_i(&p[0], &p[1], &p[2], &p[3])),
            "iffE1" => want(2).and_then(|_| self.iff_e1(&p[0], &p[1])),
            "iffE2" => want(2).and_then(|_| self.iff_e2(&p[0], &p[1])),
            "=T" => want(2).and_then(|_| self.eq_trans(&p[0], &p[1])),
            "~TI" => want(1).and_then(|_| self.neg_ti(&p[0])),
            "~TE" => want(1).and_then(|_| self.neg_te(&p[0])),
            "\\/TI" => want(2).and_then(|_| self.or_ti(&p[0], &p[1])),
            "\\/TE" => want(1).and_then(|_| self.or_te(&p[0])),
            "/\\TI" => want(2).and_then(|_| self.and_ti(&p[0], &p[1])),
            "/\\TE" => want(1).and_then(|_| self.and_te(&p[0])),
            "->TI" => want(2).and_then(|_| self.imp_ti(&p[0], &p[1])),
            "->TE" => want(1).and_then(|_| self.imp_te(&p[0])),
            "<->TI" => want(2).and_then(|_| self.iff_ti(&p[0], &p[1])),
            "<->TE1" => want(1).and_then(|_| self.iff_te(&p[0], true)),
            "<->TE2" => want(1).and_then(|_| self.iff_te(&p[0], false)),
            "STI" => want(1).and_then(|_| self.s_ti(&p[0])),
            "STE" => want(1).and_then(|_| self.s_te(&p[0])),
            "PTI" => want(1).and_then(|_| self.p_ti(&p[0])),
            "PTE" => want(1).and_then(|_| self.p_te(&p[0])),
            "=TI" => want(2).and_then(|_| self.eq_ti(&p[0], &p[1])),
            "?TI" => want(3).and_then(|_| self.cond_ti(&p[0], &p[1], &p[2])),
            _ => Err(shape("derived", format!("unknown derived rule `{name}`"))),
        }
    }
}

/// Names accepted by [`Prover::derived`].
pub const DERIVED_RULES: &[&str] = &[
    "andI", "andE1", "andE2", "impI", "impE", "iffI", "iffE1", "iffE2", "=T", "~TI", "~TE",
    "\\/TI", "\\/TE", "/\\TI", "/\\TE", "->TI", "->TE", "<->TI", "<->TE1", "<->TE2", "STI",
    "STE", "PTI", "PTE", "=TI", "?TI",
];
