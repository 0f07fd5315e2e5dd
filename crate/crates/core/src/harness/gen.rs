//! Random instance generators. Each one plants premises that are likely to
//! hold so rules are exercised where they fire.

use crate::defs::DefinitionList;
use crate::kernel::{Judgment, RuleApp};
use crate::term::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Variable bound by quantifier and induction instances.
pub const BOUND: u32 = 3;

/// Definition indices the generators draw on.
#[derive(Clone, Copy, Debug)]
pub struct Names {
    pub add: usize,
    pub sub: usize,
    pub mult: usize,
    pub even: usize,
    pub gt: usize,
    pub liar: usize,
    pub curry: usize,
}

impl Names {
    pub fn resolve(defs: &DefinitionList) -> Option<Names> {
        let i = |n: &str| defs.index_of(n);
        Some(Names {
            add: i("add")?,
            sub: i("sub")?,
            mult: i("mult")?,
            even: i("even")?,
            gt: i("gt")?,
            liar: i("liar")?,
            curry: i("curry")?,
        })
    }
}

/// Rule applications the harness can test, including deliberately broken ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidate {
    Primitive(RuleApp),
    /// Γ, p ⊢ q gives Γ ⊢ ¬p ∨ q with no bool(p) premise.
    ClassicalImpI { p: Term },
    /// defIE forward without the nat(aᵢ) premises.
    LiteralFold { def: usize, args: Vec<Term>, paths: Vec<Path> },
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub rule: Candidate,
    pub premises: Vec<Judgment>,
}

/// A predicate over [`BOUND`] for quantifier instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    /// True at every natural, with a planted proof of nat(x) ⊢ p.
    Universal,
    /// True at some natural below the domain and false at another.
    Mixed,
    /// False everywhere; nat(x) ⊢ ¬p is planted.
    Empty,
}

pub fn quantifier_corpus(n: &Names) -> Vec<(Term, Truth)> {
    let x = || var(BOUND);
    use Truth::*;
    vec![
        (eq(x(), x()), Universal),
        (neq(succ(x()), Term::Zero), Universal),
        (nat(succ(x())), Universal),
        (eq(pred(succ(x())), x()), Universal),
        (neg(neg(eq(x(), x()))), Universal),
        (eq(succ(x()), Term::Zero), Empty),
        (neg(eq(x(), x())), Empty),
        (eq(x(), Term::Zero), Mixed),
        (neq(x(), Term::Zero), Mixed),
        (eq(x(), numeral(2)), Mixed),
        (eq(succ(x()), numeral(3)), Mixed),
        (eq(apply(n.add, vec![x(), numeral(1)]), numeral(3)), Mixed),
        (apply(n.gt, vec![x(), numeral(1)]), Mixed),
    ]
}

pub struct Gen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    pub n: Names,
}

fn j(g: &BTreeSet<Term>, c: Term) -> Judgment {
    Judgment { hyps: g.clone(), concl: c }
}

fn with(g: &BTreeSet<Term>, extra: &[Term]) -> BTreeSet<Term> {
    let mut h = g.clone();
    h.extend(extra.iter().cloned());
    h
}

impl<'r> Gen<'r> {
    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn pick<T: Clone>(&mut self, xs: &[T]) -> T {
        xs.choose(self.rng).expect("non-empty choice").clone()
    }

    pub fn nat_term(&mut self, depth: u32, vars: &[u32]) -> Term {
        if depth == 0 || self.chance(0.35) {
            return if !vars.is_empty() && self.chance(0.6) {
                var(self.pick(vars))
            } else {
                numeral(self.rng.gen_range(0..4))
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..7) {
            0 | 1 => succ(self.nat_term(d, vars)),
            2 => pred(self.nat_term(d, vars)),
            3 => apply(self.n.add, vec![self.nat_term(d, vars), self.nat_term(d, vars)]),
            4 => apply(self.n.sub, vec![self.nat_term(d, vars), self.nat_term(d, vars)]),
            5 => apply(self.n.mult, vec![self.nat_term(d, vars), numeral(self.rng.gen_range(0..3))]),
            _ => {
                let c = self.formula(d, vars);
                cond(c, self.nat_term(d, vars), self.nat_term(d, vars))
            }
        }
    }

    /// An arbitrary formula, occasionally ungrounded or non-boolean.
    pub fn formula(&mut self, depth: u32, vars: &[u32]) -> Term {
        if depth == 0 || self.chance(0.3) {
            return match self.rng.gen_range(0..10) {
                0 => self.wild(),
                1 => apply(self.n.even, vec![self.nat_term(1, vars)]),
                2 => apply(self.n.gt, vec![self.nat_term(1, vars), self.nat_term(1, vars)]),
                _ => eq(self.nat_term(1, vars), self.nat_term(1, vars)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..4) {
            0 => neg(self.formula(d, vars)),
            1 => or(self.formula(d, vars), self.formula(d, vars)),
            2 => eq(self.nat_term(d, vars), self.nat_term(d, vars)),
            _ => self.truthy(vars),
        }
    }

    /// Ungrounded or non-boolean formulas.
    pub fn wild(&mut self) -> Term {
        match self.rng.gen_range(0..4) {
            0 => apply(self.n.liar, vec![]),
            1 => apply(self.n.curry, vec![]),
            2 => neg(apply(self.n.liar, vec![])),
            _ => numeral(2),
        }
    }

    /// A term with the same value as `a` whenever `a` has one.
    pub fn equiv(&mut self, a: &Term) -> Term {
        match self.rng.gen_range(0..6) {
            0 => pred(succ(a.clone())),
            1 => apply(self.n.add, vec![a.clone(), Term::Zero]),
            2 => apply(self.n.sub, vec![a.clone(), Term::Zero]),
            3 => {
                let junk = if self.chance(0.5) { apply(self.n.liar, vec![]) } else { numeral(7) };
                cond(truth(), a.clone(), junk)
            }
            4 => apply(self.n.add, vec![Term::Zero, a.clone()]),
            _ => a.clone(),
        }
    }

    /// A formula about `a` that holds whenever `a` has a value.
    pub fn truthy_with(&mut self, a: &Term, vars: &[u32]) -> Term {
        match self.rng.gen_range(0..8) {
            0 => eq(a.clone(), self.equiv(a)),
            1 => neq(succ(a.clone()), Term::Zero),
            2 => nat(a.clone()),
            3 => {
                let q = self.formula(1, vars);
                let p = self.truthy_with(a, vars);
                if self.chance(0.5) {
                    or(p, q)
                } else {
                    or(q, p)
                }
            }
            4 => neg(neg(self.truthy_with(a, vars))),
            5 => apply(self.n.gt, vec![succ(a.clone()), a.clone()]),
            6 => apply(self.n.even, vec![apply(self.n.mult, vec![numeral(2), a.clone()])]),
            _ => neq(a.clone(), succ(a.clone())),
        }
    }

    pub fn truthy(&mut self, vars: &[u32]) -> Term {
        let a = self.nat_term(2, vars);
        self.truthy_with(&a, vars)
    }

    /// A formula about `a` that fails whenever `a` has a value.
    pub fn falsy_with(&mut self, a: &Term, vars: &[u32]) -> Term {
        match self.rng.gen_range(0..5) {
            0 => eq(succ(a.clone()), Term::Zero),
            1 => eq(a.clone(), succ(a.clone())),
            2 => apply(self.n.gt, vec![a.clone(), a.clone()]),
            3 => neg(self.truthy_with(a, vars)),
            _ => {
                let p = self.falsy_with(a, vars);
                let q = self.falsy_with(a, vars);
                or(p, q)
            }
        }
    }

    pub fn falsy(&mut self, vars: &[u32]) -> Term {
        let a = self.nat_term(2, vars);
        self.falsy_with(&a, vars)
    }

    /// Mostly true formulas, sometimes anything.
    pub fn likely(&mut self, vars: &[u32]) -> Term {
        if self.chance(0.8) {
            self.truthy(vars)
        } else {
            self.formula(2, vars)
        }
    }

    fn any(&mut self, vars: &[u32]) -> Term {
        match self.rng.gen_range(0..4) {
            0 => self.wild(),
            1 => self.falsy(vars),
            _ => self.formula(2, vars),
        }
    }

    fn vars(&mut self) -> Vec<u32> {
        match self.rng.gen_range(0..4) {
            0 => vec![],
            1 => vec![0],
            2 => vec![1],
            _ => vec![0, 1],
        }
    }

    /// nat hypotheses for most variables, sometimes an extra formula.
    pub fn gamma(&mut self, vars: &[u32]) -> BTreeSet<Term> {
        let mut g = BTreeSet::new();
        for &v in vars {
            if self.chance(0.85) {
                g.insert(nat(var(v)));
            }
        }
        if self.chance(0.2) {
            let h = self.likely(vars);
            g.insert(h);
        }
        g
    }

    fn subset(&mut self, paths: Vec<Path>) -> Vec<Path> {
        let mut chosen: Vec<Path> = paths.iter().filter(|_| self.chance(0.6)).cloned().collect();
        if chosen.is_empty() {
            chosen.push(self.pick(&paths));
        }
        chosen
    }

    fn def_args(&mut self, def: usize, vars: &[u32], wild: bool) -> Vec<Term> {
        let arity = if def == self.n.even { 1 } else { 2 };
        (0..arity)
            .map(|_| {
                if wild && self.chance(0.1) {
                    apply(self.n.liar, vec![])
                } else {
                    self.nat_term(1, vars)
                }
            })
            .collect()
    }

    /// A conclusion containing `t` at one or more positions, and those positions.
    fn around(&mut self, t: &Term, boolean: bool, vars: &[u32]) -> (Term, Vec<Path>) {
        let c = if boolean && self.chance(0.5) {
            match self.rng.gen_range(0..3) {
                0 => t.clone(),
                1 => {
                    let q = self.any(vars);
                    or(t.clone(), q)
                }
                _ => neg(neg(t.clone())),
            }
        } else {
            match self.rng.gen_range(0..3) {
                0 => eq(t.clone(), t.clone()),
                1 => {
                    let e = self.equiv(t);
                    eq(t.clone(), e)
                }
                _ => self.truthy_with(t, vars),
            }
        };
        let paths = self.subset(c.occurrences(t));
        (c, paths)
    }

    fn fold_parts(&mut self, vars: &[u32], defs: &DefinitionList, wild: bool) -> (usize, Vec<Term>, Term, Vec<Path>) {
        let n = self.n;
        let def = self.pick(&[n.add, n.sub, n.mult, n.even, n.gt]);
        let args = self.def_args(def, vars, wild);
        let body = defs.get(def).and_then(|d| d.term()).expect("term definition");
        let map = args.iter().enumerate().map(|(i, a)| (i as u32, a.clone())).collect();
        let inst = body.subst_many(&map).expect("bodies have no binders");
        let boolean = def == n.even || def == n.gt;
        let (c, paths) = self.around(&inst, boolean, vars);
        (def, args, c, paths)
    }

    fn ind_predicate(&mut self, vars: &[u32]) -> Term {
        let x = var(BOUND);
        match self.rng.gen_range(0..7) {
            0 => {
                let a = self.nat_term(1, vars);
                nat(apply(self.n.add, vec![a, x]))
            }
            1 => neq(succ(x), Term::Zero),
            2 => eq(x.clone(), x),
            3 => or(eq(x.clone(), Term::Zero), neq(x, Term::Zero)),
            4 => apply(self.n.even, vec![apply(self.n.mult, vec![numeral(2), x])]),
            5 => eq(apply(self.n.add, vec![Term::Zero, x.clone()]), x),
            _ => {
                let mut vs = vars.to_vec();
                vs.push(BOUND);
                self.formula(2, &vs)
            }
        }
    }

    /// An instance of primitive rule `id`.
    pub fn primitive(&mut self, id: usize, defs: &DefinitionList) -> Instance {
        use RuleApp::*;
        let vars = self.vars();
        let vs = vars.as_slice();
        let g = self.gamma(vs);
        let (rule, premises) = match id {
            0 => {
                let (def, args, c, paths) = self.fold_parts(vs, defs, false);
                let mut prem = vec![j(&g, c)];
                prem.extend(args.iter().map(|a| j(&g, nat(a.clone()))));
                (DefFold { def, args, paths }, prem)
            }
            1 => {
                let n = self.n;
                let def = self.pick(&[n.add, n.sub, n.mult, n.even, n.gt]);
                let args = self.def_args(def, vs, true);
                let app = apply(def, args);
                let boolean = def == n.even || def == n.gt;
                let (c, paths) = self.around(&app, boolean, vs);
                (DefUnfold { def, paths }, vec![j(&g, c)])
            }
            2 => {
                let a = self.nat_term(2, vs);
                let b = self.equiv(&a);
                (EqSym, vec![j(&g, eq(a, b))])
            }
            3 => {
                let a = self.nat_term(2, vs);
                let b = self.equiv(&a);
                let (c, paths) = self.around(&a, false, vs);
                (EqSubst { paths }, vec![j(&g, eq(a, b)), j(&g, c)])
            }
            4 => (NegNegI, vec![j(&g, self.likely(vs))]),
            5 => {
                let p = self.likely(vs);
                (NegNegE, vec![j(&g, neg(neg(p)))])
            }
            6 => {
                let h = self.formula(1, vs);
                let (g, p) = if self.chance(0.7) {
                    (with(&g, &[h.clone(), neg(h.clone())]), h)
                } else {
                    (g, h)
                };
                let q = self.any(vs);
                (NegE { q }, vec![j(&g, p.clone()), j(&g, neg(p))])
            }
            7 => {
                let q = self.any(vs);
                (OrI1 { q }, vec![j(&g, self.likely(vs))])
            }
            8 => {
                let p = self.any(vs);
                (OrI2 { p }, vec![j(&g, self.likely(vs))])
            }
            9 => {
                let (p, q) = (self.falsy(vs), self.falsy(vs));
                (OrI3, vec![j(&g, neg(p)), j(&g, neg(q))])
            }
            10 => {
                let (p, q) = if self.chance(0.5) {
                    (self.likely(vs), self.any(vs))
                } else {
                    (self.any(vs), self.likely(vs))
                };
                let r = match self.rng.gen_range(0..3) {
                    0 => or(p.clone(), q.clone()),
                    1 => or(q.clone(), p.clone()),
                    _ => self.likely(vs),
                };
                let prem = vec![
                    j(&g, or(p.clone(), q.clone())),
                    j(&with(&g, &[p]), r.clone()),
                    j(&with(&g, &[q]), r),
                ];
                (OrE1, prem)
            }
            11 | 12 => {
                let (p, q) = (self.falsy(vs), self.falsy(vs));
                (if id == 11 { OrE2 } else { OrE3 }, vec![j(&g, neg(or(p, q)))])
            }
            13 => (ZeroI { ctx: g.iter().cloned().collect() }, vec![]),
            14 => {
                let a = self.nat_term(2, vs);
                let b = self.equiv(&a);
                (SEqI, vec![j(&g, eq(a, b))])
            }
            15 => {
                let a = self.nat_term(2, vs);
                let b = self.equiv(&a);
                (SEqE, vec![j(&g, eq(succ(a), succ(b)))])
            }
            16 | 17 => {
                let a = self.nat_term(2, vs);
                let (l, r) = if self.chance(0.5) {
                    (succ(a.clone()), a)
                } else {
                    (a.clone(), succ(self.equiv(&a)))
                };
                if id == 16 {
                    (SNeqI, vec![j(&g, neq(l, r))])
                } else {
                    (SNeqE, vec![j(&g, neq(succ(l), succ(r)))])
                }
            }
            18..=20 => {
                let a = self.nat_term(2, vs);
                let rule = [SNeqZeroI, PEqI2, PTI][id - 18].clone();
                (rule, vec![j(&g, nat(a))])
            }
            21 => {
                let a = self.nat_term(2, vs);
                (PTE, vec![j(&g, nat(pred(a)))])
            }
            22 => {
                let c = self.likely(vs);
                let a = self.nat_term(2, vs);
                let b = if self.chance(0.3) { self.wild() } else { self.nat_term(2, vs) };
                (CondI1 { b }, vec![j(&g, c), j(&g, nat(a))])
            }
            23 => {
                let c = self.falsy(vs);
                let b = self.nat_term(2, vs);
                let a = if self.chance(0.3) { self.wild() } else { self.nat_term(2, vs) };
                (CondI2 { a }, vec![j(&g, neg(c)), j(&g, nat(b))])
            }
            24 => {
                let x = BOUND;
                let p = self.ind_predicate(vs);
                let a = self.nat_term(1, vs);
                let base = p.subst(x, &Term::Zero).expect("no binders");
                let step = p.subst(x, &succ(var(x))).expect("no binders");
                let prem = vec![
                    j(&g, base),
                    j(&with(&g, &[nat(var(x)), p.clone()]), step),
                    j(&g, nat(a)),
                ];
                (Ind { p, x }, prem)
            }
            25 => {
                let p = self.any(vs);
                (Hyp { ctx: g.iter().cloned().collect(), p }, vec![])
            }
            26 => {
                let p = self.any(vs);
                (Weaken { p }, vec![j(&g, self.likely(vs))])
            }
            27..=35 => return self.quantifier(id),
            _ => panic!("no rule with id {id}"),
        };
        Instance { rule: Candidate::Primitive(rule), premises }
    }

    fn corpus_pick(&mut self, want: &[Truth]) -> Term {
        let all: Vec<Term> = quantifier_corpus(&self.n)
            .into_iter()
            .filter(|(_, t)| want.contains(t))
            .map(|(p, _)| p)
            .collect();
        self.pick(&all)
    }

    fn quantifier(&mut self, id: usize) -> Instance {
        use RuleApp::*;
        use Truth::*;
        let x = BOUND;
        let vars: Vec<u32> = if self.chance(0.5) { vec![0] } else { vec![] };
        let vs = vars.as_slice();
        let g = self.gamma(vs);
        let small = |s: &mut Self| {
            if s.chance(0.7) {
                numeral(s.rng.gen_range(0..5))
            } else {
                s.nat_term(1, vs)
            }
        };
        let inst = |p: &Term, a: &Term| p.subst(x, a).expect("closed numerals do not capture");
        let (rule, premises) = match id {
            27 => {
                let p = self.corpus_pick(&[Universal, Mixed]);
                (ForallI1 { x }, vec![j(&with(&g, &[nat(var(x))]), p)])
            }
            28 => {
                let p = self.corpus_pick(&[Universal, Mixed]);
                let a = small(self);
                (ForallE1, vec![j(&g, forall(x, p)), j(&g, nat(a))])
            }
            29 => {
                let p = self.corpus_pick(&[Mixed, Empty]);
                let a = small(self);
                let np = neg(inst(&p, &a));
                (ForallI2 { x, p }, vec![j(&g, nat(a)), j(&g, np)])
            }
            30 => {
                let p = self.corpus_pick(&[Mixed, Empty]);
                let q = self.likely(vs);
                let case = j(&with(&g, &[nat(var(x)), neg(p.clone())]), q);
                (ForallE2, vec![j(&g, neg(forall(x, p))), case])
            }
            31 => {
                let p = self.corpus_pick(&[Universal, Mixed]);
                let a = small(self);
                let pa = inst(&p, &a);
                (ExistsI1 { x, p }, vec![j(&g, nat(a)), j(&g, pa)])
            }
            32 => {
                let p = self.corpus_pick(&[Universal, Mixed]);
                let q = self.likely(vs);
                let case = j(&with(&g, &[nat(var(x)), p.clone()]), q);
                (ExistsE1, vec![j(&g, exists(x, p)), case])
            }
            33 => {
                let p = self.corpus_pick(&[Universal, Mixed, Empty]);
                (ExistsI2 { x }, vec![j(&with(&g, &[nat(var(x))]), neg(p))])
            }
            34 => {
                let p = self.corpus_pick(&[Mixed, Empty]);
                let a = small(self);
                (ExistsE2, vec![j(&g, neg(exists(x, p))), j(&g, nat(a))])
            }
            35 => {
                let p = self.corpus_pick(&[Universal, Mixed]);
                let base = inst(&p, &Term::Zero);
                let step = inst(&p, &succ(var(x)));
                let prem = vec![j(&g, base), j(&with(&g, &[nat(var(x)), p.clone()]), step)];
                (ForallInd { x, p }, prem)
            }
            _ => unreachable!(),
        };
        Instance { rule: Candidate::Primitive(rule), premises }
    }

    /// Γ, p ⊢ q for the classical →I canary. Case 0 is Γ = ∅, p = L, q = false.
    pub fn classical_imp(&mut self, first: bool) -> Instance {
        let (g, p, q) = if first {
            (BTreeSet::new(), apply(self.n.liar, vec![]), falsity())
        } else {
            let vars = self.vars();
            let g = self.gamma(&vars);
            let p = if self.chance(0.5) { self.wild() } else { self.formula(2, &vars) };
            let q = self.any(&vars);
            (g, p, q)
        };
        Instance { rule: Candidate::ClassicalImpI { p: p.clone() }, premises: vec![j(&with(&g, &[p]), q)] }
    }

    /// The literal fold. Case 0 folds ⊢ (0 = 0 ? 0 : add(L, mult(L, P(0)))) = 0
    /// into ⊢ mult(L, 0) = 0.
    pub fn literal_fold(&mut self, first: bool, defs: &DefinitionList) -> Instance {
        let (def, args, c, paths, g) = if first {
            let args = vec![apply(self.n.liar, vec![]), Term::Zero];
            let body = defs.get(self.n.mult).and_then(|d| d.term()).expect("mult body");
            let map = args.iter().enumerate().map(|(i, a)| (i as u32, a.clone())).collect();
            let inst = body.subst_many(&map).expect("no binders");
            (self.n.mult, args, eq(inst, Term::Zero), vec![vec![0]], BTreeSet::new())
        } else {
            let vars = self.vars();
            let g = self.gamma(&vars);
            let (def, args, c, paths) = self.fold_parts(&vars, defs, true);
            (def, args, c, paths, g)
        };
        Instance { rule: Candidate::LiteralFold { def, args, paths }, premises: vec![j(&g, c)] }
    }
}
