//! Bounded backward proof search. Candidate premises come from the goal's
//! subterms and a small term pool; every candidate is confirmed by the kernel.

use crate::defs::DefinitionList;
use crate::kernel::{apply_rule, conclude, Judgment, RuleApp, Theorem};
use crate::term::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub struct Search<'a> {
    defs: &'a DefinitionList,
    pool: Vec<Term>,
    failed: HashMap<Judgment, usize>,
    /// Candidate premise lists the kernel accepted.
    pub explored: u64,
}

fn subterms(t: &Term, out: &mut BTreeSet<Term>) {
    if t.binder().is_none() {
        out.insert(t.clone());
    }
    for c in t.children() {
        subterms(c, out);
    }
}

fn positions(t: &Term) -> Vec<Path> {
    let mut out = vec![vec![]];
    for (i, c) in t.children().into_iter().enumerate() {
        for mut p in positions(c) {
            p.insert(0, i);
            out.push(p);
        }
    }
    out
}

/// First-order match of `pat` (parameters `v0..`) against `t`.
fn match_args(pat: &Term, t: &Term, out: &mut BTreeMap<u32, Term>) -> bool {
    match (pat, t) {
        (Term::Var(v), _) => match out.get(v) {
            Some(b) => b == t,
            None => {
                out.insert(*v, t.clone());
                true
            }
        },
        (Term::Succ(a), Term::Succ(b)) | (Term::Pred(a), Term::Pred(b)) | (Term::Neg(a), Term::Neg(b)) => {
            match_args(a, b, out)
        }
        (Term::Or(a, b), Term::Or(c, d)) | (Term::Eq(a, b), Term::Eq(c, d)) => {
            match_args(a, c, out) && match_args(b, d, out)
        }
        (Term::Cond(a, b, c), Term::Cond(d, e, f)) => {
            match_args(a, d, out) && match_args(b, e, out) && match_args(c, f, out)
        }
        (Term::Apply(f, xs), Term::Apply(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| match_args(a, b, out))
        }
        _ => pat == t,
    }
}

impl<'a> Search<'a> {
    /// `extra` joins the goal's subterms, `0`, `0 = 0` and `0 = S(0)` in the pool.
    pub fn new(defs: &'a DefinitionList, goal: &Judgment, extra: &[Term]) -> Self {
        let mut pool = BTreeSet::new();
        subterms(&goal.concl, &mut pool);
        for h in &goal.hyps {
            subterms(h, &mut pool);
        }
        pool.extend([Term::Zero, truth(), falsity()]);
        pool.extend(extra.iter().cloned());
        Search { defs, pool: pool.into_iter().collect(), failed: HashMap::new(), explored: 0 }
    }

    pub fn pool(&self) -> &[Term] {
        &self.pool
    }

    /// A proof of `goal` no taller than `depth` rule applications.
    pub fn prove(&mut self, goal: &Judgment, depth: usize) -> Option<Theorem> {
        if depth == 0 || self.failed.get(goal).is_some_and(|&d| d >= depth) {
            return None;
        }
        for (rule, prem) in self.candidates(goal) {
            let refs: Vec<&Judgment> = prem.iter().collect();
            if conclude(self.defs, &rule, &refs).ok().as_ref() != Some(goal) {
                continue;
            }
            self.explored += 1;
            let mut ths = Vec::with_capacity(prem.len());
            for p in &prem {
                match self.prove(p, depth - 1) {
                    Some(t) => ths.push(t),
                    None => break,
                }
            }
            if ths.len() == prem.len() {
                return apply_rule(self.defs, rule, &ths).ok();
            }
        }
        let d = self.failed.entry(goal.clone()).or_insert(0);
        *d = (*d).max(depth);
        None
    }

    fn abstractions(&self, c: &Term, x: u32) -> Vec<(Term, Term)> {
        let mut subs = BTreeSet::new();
        subterms(c, &mut subs);
        let mut out = vec![];
        for a in subs.iter().chain(self.pool.iter()) {
            let occ = c.occurrences(a);
            if occ.is_empty() {
                out.push((c.clone(), a.clone()));
                continue;
            }
            let mut p = c.clone();
            for o in &occ {
                p = p.replace_at(o, var(x)).expect("occurrence path");
            }
            out.push((p, a.clone()));
        }
        out
    }

    fn candidates(&self, goal: &Judgment) -> Vec<(RuleApp, Vec<Judgment>)> {
        use RuleApp::*;
        let g = &goal.hyps;
        let c = &goal.concl;
        let j = |concl: Term| Judgment { hyps: g.clone(), concl };
        let jh = |extra: &[Term], concl: Term| {
            let mut h = g.clone();
            h.extend(extra.iter().cloned());
            Judgment { hyps: h, concl }
        };
        let mut avoid = goal.free_vars();
        for t in &self.pool {
            avoid.extend(t.free_vars());
        }
        let x = fresh_var(&avoid);
        let mut out: Vec<(RuleApp, Vec<Judgment>)> = vec![];
        let mut add = |r: RuleApp, p: Vec<Judgment>| out.push((r, p));

        add(ZeroI { ctx: g.iter().cloned().collect() }, vec![]);
        if g.contains(c) {
            let mut ctx = g.clone();
            ctx.remove(c);
            add(Hyp { ctx: ctx.into_iter().collect(), p: c.clone() }, vec![]);
        }
        for h in g {
            let mut rest = g.clone();
            rest.remove(h);
            add(Weaken { p: h.clone() }, vec![Judgment { hyps: rest, concl: c.clone() }]);
        }

        // Definitions in both directions, one position at a time.
        for path in positions(c) {
            let sub = c.at(&path).expect("position");
            if let Term::Apply(f, args) = sub {
                if let Some(body) = self.defs.get(*f).and_then(|d| d.term()) {
                    let map = args.iter().enumerate().map(|(i, a)| (i as u32, a.clone())).collect();
                    if let Ok(inst) = body.subst_many(&map) {
                        let mut prem = vec![j(c.replace_at(&path, inst).expect("position"))];
                        prem.extend(args.iter().map(|a| j(nat(a.clone()))));
                        add(DefFold { def: *f, args: args.clone(), paths: vec![path.clone()] }, prem);
                    }
                }
            }
            for (f, d) in self.defs.iter().enumerate() {
                let Some(body) = d.term() else { continue };
                let mut m = BTreeMap::new();
                if match_args(body, sub, &mut m) && (0..d.arity() as u32).all(|i| m.contains_key(&i)) {
                    let args = (0..d.arity() as u32).map(|i| m[&i].clone()).collect();
                    let prem = j(c.replace_at(&path, apply(f, args)).expect("position"));
                    add(DefUnfold { def: f, paths: vec![path.clone()] }, vec![prem]);
                }
            }
            for a in &self.pool {
                if a != sub {
                    let prem = c.replace_at(&path, a.clone()).expect("position");
                    add(EqSubst { paths: vec![path.clone()] }, vec![j(eq(a.clone(), sub.clone())), j(prem)]);
                }
            }
        }

        for p in &self.pool {
            add(NegE { q: c.clone() }, vec![j(p.clone()), j(neg(p.clone()))]);
            for q in &self.pool {
                add(OrE1, vec![j(or(p.clone(), q.clone())), jh(std::slice::from_ref(p), c.clone()), jh(std::slice::from_ref(q), c.clone())]);
            }
            add(ForallE2, vec![j(neg(forall(x, p.clone()))), jh(&[nat(var(x)), neg(p.clone())], c.clone())]);
            add(ExistsE1, vec![j(exists(x, p.clone())), jh(&[nat(var(x)), p.clone()], c.clone())]);
        }
        add(NegNegE, vec![j(neg(neg(c.clone())))]);

        for (p, a) in self.abstractions(c, x) {
            let base = p.subst(x, &Term::Zero);
            let step = p.subst(x, &succ(var(x)));
            if let (Ok(base), Ok(step)) = (base, step) {
                add(
                    Ind { p: p.clone(), x },
                    vec![j(base), jh(&[nat(var(x)), p.clone()], step), j(nat(a.clone()))],
                );
            }
            add(ForallE1, vec![j(forall(x, p.clone())), j(nat(a.clone()))]);
        }

        match c {
            Term::Eq(a, b) => {
                add(EqSym, vec![j(eq((**b).clone(), (**a).clone()))]);
                add(SEqE, vec![j(eq(succ((**a).clone()), succ((**b).clone())))]);
                if let (Term::Succ(a1), Term::Succ(b1)) = (&**a, &**b) {
                    add(SEqI, vec![j(eq((**a1).clone(), (**b1).clone()))]);
                }
                if let (Term::Pred(a1), Term::Pred(b1)) = (&**a, &**b) {
                    if a1 == b1 {
                        add(PTI, vec![j(nat((**a1).clone()))]);
                    }
                }
                if a == b {
                    add(PTE, vec![j(nat(pred((**a).clone())))]);
                }
                if let Term::Pred(s) = &**a {
                    if let Term::Succ(inner) = &**s {
                        if inner == b {
                            add(PEqI2, vec![j(nat((**b).clone()))]);
                        }
                    }
                }
                if let Term::Cond(k, l, r) = &**a {
                    if l == b {
                        add(CondI1 { b: (**r).clone() }, vec![j((**k).clone()), j(nat((**l).clone()))]);
                    }
                    if r == b {
                        add(CondI2 { a: (**l).clone() }, vec![j(neg((**k).clone())), j(nat((**r).clone()))]);
                    }
                }
            }
            Term::Neg(inner) => {
                match &**inner {
                    Term::Neg(p) => add(NegNegI, vec![j((**p).clone())]),
                    Term::Or(p, q) => add(OrI3, vec![j(neg((**p).clone())), j(neg((**q).clone()))]),
                    Term::Eq(a, b) => {
                        add(SNeqE, vec![j(neg(eq(succ((**a).clone()), succ((**b).clone()))))]);
                        if let (Term::Succ(a1), Term::Succ(b1)) = (&**a, &**b) {
                            add(SNeqI, vec![j(neg(eq((**a1).clone(), (**b1).clone())))]);
                        }
                        if let (Term::Succ(a1), Term::Zero) = (&**a, &**b) {
                            add(SNeqZeroI, vec![j(nat((**a1).clone()))]);
                        }
                    }
                    Term::Forall(x0, p) => {
                        for a in &self.pool {
                            if let Ok(pa) = p.subst(*x0, a) {
                                add(ForallI2 { x: *x0, p: (**p).clone() }, vec![j(nat(a.clone())), j(neg(pa))]);
                            }
                        }
                    }
                    Term::Exists(x0, p) => {
                        add(ExistsI2 { x: *x0 }, vec![jh(&[nat(var(*x0))], neg((**p).clone()))]);
                    }
                    _ => {}
                }
                for q in &self.pool {
                    add(OrE2, vec![j(neg(or((**inner).clone(), q.clone())))]);
                    add(OrE3, vec![j(neg(or(q.clone(), (**inner).clone())))]);
                }
                for (p, a) in self.abstractions(inner, x) {
                    add(ExistsE2, vec![j(neg(exists(x, p))), j(nat(a))]);
                }
            }
            Term::Or(p, q) => {
                add(OrI1 { q: (**q).clone() }, vec![j((**p).clone())]);
                add(OrI2 { p: (**p).clone() }, vec![j((**q).clone())]);
            }
            Term::Forall(x0, p) => {
                add(ForallI1 { x: *x0 }, vec![jh(&[nat(var(*x0))], (**p).clone())]);
                if let (Ok(base), Ok(step)) = (p.subst(*x0, &Term::Zero), p.subst(*x0, &succ(var(*x0)))) {
                    add(
                        ForallInd { x: *x0, p: (**p).clone() },
                        vec![j(base), jh(&[nat(var(*x0)), (**p).clone()], step)],
                    );
                }
            }
            Term::Exists(x0, p) => {
                for a in &self.pool {
                    if let Ok(pa) = p.subst(*x0, a) {
                        add(ExistsI1 { x: *x0, p: (**p).clone() }, vec![j(nat(a.clone())), j(pa)]);
                    }
                }
            }
            _ => {}
        }
        out
    }
}

/// Search for `|- goal` within `depth`, returning the proof and the number of
/// kernel-confirmed candidates explored.
pub fn search(defs: &DefinitionList, goal: &Judgment, depth: usize, extra: &[Term]) -> (Option<Theorem>, u64) {
    let mut s = Search::new(defs, goal, extra);
    let th = s.prove(goal, depth);
    (th, s.explored)
}
