//! Terms, numerals, substitution and positions.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A position inside a term: child indices from the root.
pub type Path = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    Zero,
    Succ(Box<Term>),
    Pred(Box<Term>),
    Neg(Box<Term>),
    Or(Box<Term>, Box<Term>),
    Eq(Box<Term>, Box<Term>),
    Cond(Box<Term>, Box<Term>, Box<Term>),
    Apply(usize, Vec<Term>),
    Forall(u32, Box<Term>),
    Exists(u32, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substituting for v{var} would capture v{binder} under its binder")]
    Capture { var: u32, binder: u32 },
}

pub fn var(i: u32) -> Term {
    Term::Var(i)
}
pub fn succ(t: Term) -> Term {
    Term::Succ(Box::new(t))
}
pub fn pred(t: Term) -> Term {
    Term::Pred(Box::new(t))
}
pub fn neg(t: Term) -> Term {
    Term::Neg(Box::new(t))
}
pub fn or(l: Term, r: Term) -> Term {
    Term::Or(Box::new(l), Box::new(r))
}
pub fn eq(l: Term, r: Term) -> Term {
    Term::Eq(Box::new(l), Box::new(r))
}
pub fn cond(c: Term, a: Term, b: Term) -> Term {
    Term::Cond(Box::new(c), Box::new(a), Box::new(b))
}
pub fn apply(def: usize, args: Vec<Term>) -> Term {
    Term::Apply(def, args)
}
pub fn forall(x: u32, body: Term) -> Term {
    Term::Forall(x, Box::new(body))
}
pub fn exists(x: u32, body: Term) -> Term {
    Term::Exists(x, Box::new(body))
}

// Shorthands. They expand to the core constructors and are never stored.

pub fn truth() -> Term {
    eq(Term::Zero, Term::Zero)
}
pub fn falsity() -> Term {
    eq(Term::Zero, succ(Term::Zero))
}
pub fn nat(a: Term) -> Term {
    eq(a.clone(), a)
}
pub fn boolean(p: Term) -> Term {
    or(p.clone(), neg(p))
}
pub fn and(p: Term, q: Term) -> Term {
    neg(or(neg(p), neg(q)))
}
pub fn implies(p: Term, q: Term) -> Term {
    or(neg(p), q)
}
pub fn iff(p: Term, q: Term) -> Term {
    and(implies(p.clone(), q.clone()), implies(q, p))
}
pub fn neq(a: Term, b: Term) -> Term {
    neg(eq(a, b))
}

/// `S^n(0)`.
pub fn numeral(n: u64) -> Term {
    let mut t = Term::Zero;
    for _ in 0..n {
        t = succ(t);
    }
    t
}

pub fn numeral_value(t: &Term) -> Option<u64> {
    let mut n = 0u64;
    let mut cur = t;
    loop {
        match cur {
            Term::Zero => return Some(n),
            Term::Succ(a) => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

impl Term {
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Zero => vec![],
            Term::Succ(a) | Term::Pred(a) | Term::Neg(a) => vec![a],
            Term::Forall(_, a) | Term::Exists(_, a) => vec![a],
            Term::Or(a, b) | Term::Eq(a, b) => vec![a, b],
            Term::Cond(c, a, b) => vec![c, a, b],
            Term::Apply(_, args) => args.iter().collect(),
        }
    }

    fn children_mut(&mut self) -> Vec<&mut Term> {
        match self {
            Term::Var(_) | Term::Zero => vec![],
            Term::Succ(a) | Term::Pred(a) | Term::Neg(a) => vec![a],
            Term::Forall(_, a) | Term::Exists(_, a) => vec![a],
            Term::Or(a, b) | Term::Eq(a, b) => vec![a, b],
            Term::Cond(c, a, b) => vec![c, a, b],
            Term::Apply(_, args) => args.iter_mut().collect(),
        }
    }

    /// The variable bound at this node, if it is a binder.
    pub fn binder(&self) -> Option<u32> {
        match self {
            Term::Forall(x, _) | Term::Exists(x, _) => Some(*x),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        match self {
            Term::Forall(..) | Term::Exists(..) => false,
            _ => self.children().iter().all(|c| c.is_pure()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                if !bound.contains(i) {
                    out.insert(*i);
                }
            }
            Term::Forall(x, body) | Term::Exists(x, body) => {
                bound.push(*x);
                body.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn occurs_free(&self, v: u32) -> bool {
        match self {
            Term::Var(i) => *i == v,
            Term::Forall(x, body) | Term::Exists(x, body) => *x != v && body.occurs_free(v),
            _ => self.children().iter().any(|c| c.occurs_free(v)),
        }
    }

    /// Every variable index mentioned anywhere, bound or free.
    pub fn all_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Forall(x, _) | Term::Exists(x, _) => {
                out.insert(*x);
            }
            _ => {}
        }
        for c in self.children() {
            c.all_vars(out);
        }
    }

    /// Definition indices referenced anywhere in the term.
    pub fn def_refs(&self, out: &mut BTreeSet<usize>) {
        if let Term::Apply(i, _) = self {
            out.insert(*i);
        }
        for c in self.children() {
            c.def_refs(out);
        }
    }

    /// Replace every free occurrence of `v` by `r`.
    pub fn subst(&self, v: u32, r: &Term) -> Result<Term, SubstError> {
        let mut map = BTreeMap::new();
        map.insert(v, r.clone());
        self.subst_many(&map)
    }

    /// Simultaneous substitution.
    pub fn subst_many(&self, map: &BTreeMap<u32, Term>) -> Result<Term, SubstError> {
        Ok(match self {
            Term::Var(i) => match map.get(i) {
                Some(r) => r.clone(),
                None => self.clone(),
            },
            Term::Zero => Term::Zero,
            Term::Succ(a) => succ(a.subst_many(map)?),
            Term::Pred(a) => pred(a.subst_many(map)?),
            Term::Neg(a) => neg(a.subst_many(map)?),
            Term::Or(a, b) => or(a.subst_many(map)?, b.subst_many(map)?),
            Term::Eq(a, b) => eq(a.subst_many(map)?, b.subst_many(map)?),
            Term::Cond(c, a, b) => cond(c.subst_many(map)?, a.subst_many(map)?, b.subst_many(map)?),
            Term::Apply(i, args) => Term::Apply(
                *i,
                args.iter().map(|a| a.subst_many(map)).collect::<Result<_, _>>()?,
            ),
            Term::Forall(x, body) | Term::Exists(x, body) => {
                let mut inner = map.clone();
                inner.remove(x);
                let touched: Vec<u32> = inner
                    .keys()
                    .copied()
                    .filter(|k| body.occurs_free(*k))
                    .collect();
                for k in &touched {
                    if inner[k].occurs_free(*x) {
                        return Err(SubstError::Capture { var: *k, binder: *x });
                    }
                }
                inner.retain(|k, _| touched.contains(k));
                let body = if inner.is_empty() {
                    (**body).clone()
                } else {
                    body.subst_many(&inner)?
                };
                match self {
                    Term::Forall(..) => forall(*x, body),
                    _ => exists(*x, body),
                }
            }
        })
    }

    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Variables bound by binders strictly above `path`.
    pub fn binders_along(&self, path: &[usize]) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = self;
        for &i in path {
            if let Some(x) = cur.binder() {
                out.push(x);
            }
            cur = *cur.children().get(i)?;
        }
        Some(out)
    }

    pub fn replace_at(&self, path: &[usize], new: Term) -> Option<Term> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for &i in path {
            cur = cur.children_mut().into_iter().nth(i)?;
        }
        *cur = new;
        Some(out)
    }

    /// Paths of every occurrence of `needle`, outermost first.
    pub fn occurrences(&self, needle: &Term) -> Vec<Path> {
        let mut out = Vec::new();
        self.collect_occurrences(needle, &mut Vec::new(), &mut out);
        out
    }

    fn collect_occurrences(&self, needle: &Term, here: &mut Path, out: &mut Vec<Path>) {
        if self == needle {
            out.push(here.clone());
            return;
        }
        for (i, c) in self.children().into_iter().enumerate() {
            here.push(i);
            c.collect_occurrences(needle, here, out);
            here.pop();
        }
    }
}

/// Smallest index not in `avoid`.
pub fn fresh_var(avoid: &BTreeSet<u32>) -> u32 {
    (0..).find(|i| !avoid.contains(i)).expect("variable indices exhausted")
}

/// Check that `paths` are pairwise non-nested.
pub fn disjoint_paths(paths: &[Path]) -> bool {
    for (i, p) in paths.iter().enumerate() {
        for q in &paths[i + 1..] {
            if p.starts_with(q) || q.starts_with(p) {
                return false;
            }
        }
    }
    true
}
