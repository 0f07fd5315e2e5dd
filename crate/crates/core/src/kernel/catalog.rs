//! Every derived connective rule and typing row, built by its tactic on
//! schematic hypotheses and re-checked from the flattened primitive proof.

use super::tactics::{Direction, Prover, TacticError};
use super::*;
use crate::term::*;

pub struct Entry {
    pub group: &'static str,
    pub rule: &'static str,
    pub expected: Judgment,
    pub result: Result<Theorem, TacticError>,
}

impl Entry {
    /// The tactic produced exactly `expected`, and the kernel accepts the
    /// primitive proof it flattens to.
    pub fn verified(&self, defs: &DefinitionList) -> bool {
        let Ok(th) = &self.result else { return false };
        if th.judgment() != &self.expected {
            return false;
        }
        match check_proof(defs, &th.to_proof()) {
            Ok(ths) => ths.last().map(|t| t.judgment()) == Some(&self.expected),
            Err(_) => false,
        }
    }

    pub fn steps(&self) -> usize {
        self.result.as_ref().map(|th| th.to_proof().steps.len()).unwrap_or(0)
    }
}

fn set(ts: &[Term]) -> BTreeSet<Term> {
    ts.iter().cloned().collect()
}

fn with(g: &BTreeSet<Term>, t: Term) -> BTreeSet<Term> {
    let mut h = g.clone();
    h.insert(t);
    h
}

/// Schematic atoms: `p`, `q` are equations over distinct variables so the
/// kernel cannot identify them; `a`, `b`, `c` are variables.
fn atoms() -> (Term, Term, Term, Term, Term) {
    (eq(var(0), var(1)), eq(var(2), var(3)), var(4), var(5), var(6))
}

pub fn catalog(defs: &DefinitionList) -> Vec<Entry> {
    let pr = Prover::new(defs);
    let (p, q, a, b, c) = atoms();
    let mut out = Vec::new();
    let mut push = |group, rule, hyps: BTreeSet<Term>, concl: Term, result| {
        out.push(Entry { group, rule, expected: Judgment::new(hyps, concl), result });
    };

    // Contradiction, refuting form: bool(p), p gives q and ~q.
    let g = set(&[boolean(p.clone()), implies(p.clone(), q.clone()), implies(p.clone(), neg(q.clone()))]);
    let gp = with(&g, p.clone());
    let r = (|| {
        let hq = pr.imp_e(&pr.hyp(&gp, implies(p.clone(), q.clone())), &pr.hyp(&gp, p.clone()))?;
        let hnq = pr.imp_e(&pr.hyp(&gp, implies(p.clone(), neg(q.clone()))), &pr.hyp(&gp, p.clone()))?;
        pr.contradiction(Direction::Refute, &pr.hyp(&g, boolean(p.clone())), &hq, &hnq)
    })();
    push("contradiction", "refute", g, neg(p.clone()), r);

    // Proving form: bool(p), ~p gives q and ~q.
    let np = neg(p.clone());
    let g = set(&[boolean(p.clone()), implies(np.clone(), q.clone()), implies(np.clone(), neg(q.clone()))]);
    let gn = with(&g, np.clone());
    let r = (|| {
        let hq = pr.imp_e(&pr.hyp(&gn, implies(np.clone(), q.clone())), &pr.hyp(&gn, np.clone()))?;
        let hnq = pr.imp_e(&pr.hyp(&gn, implies(np.clone(), neg(q.clone()))), &pr.hyp(&gn, np.clone()))?;
        pr.contradiction(Direction::Prove, &pr.hyp(&g, boolean(p.clone())), &hq, &hnq)
    })();
    push("contradiction", "prove", g, p.clone(), r);

    let g = set(&[p.clone(), q.clone()]);
    let r = pr.derived("andI", &[pr.hyp(&g, p.clone()), pr.hyp(&g, q.clone())]);
    push("conjunction", "andI", g, and(p.clone(), q.clone()), r);
    let g = set(&[and(p.clone(), q.clone())]);
    let r = pr.derived("andE1", &[pr.hyp(&g, and(p.clone(), q.clone()))]);
    push("conjunction", "andE1", g.clone(), p.clone(), r);
    let r = pr.derived("andE2", &[pr.hyp(&g, and(p.clone(), q.clone()))]);
    push("conjunction", "andE2", g, q.clone(), r);

    let g = set(&[boolean(p.clone()), q.clone()]);
    let r = pr.derived("impI", &[pr.hyp(&g, boolean(p.clone())), pr.hyp(&with(&g, p.clone()), q.clone())]);
    push("implication", "impI", g, implies(p.clone(), q.clone()), r);
    let g = set(&[implies(p.clone(), q.clone()), p.clone()]);
    let r = pr.derived("impE", &[pr.hyp(&g, implies(p.clone(), q.clone())), pr.hyp(&g, p.clone())]);
    push("implication", "impE", g, q.clone(), r);

    let (pq, qp) = (implies(p.clone(), q.clone()), implies(q.clone(), p.clone()));
    let g = set(&[boolean(p.clone()), boolean(q.clone()), pq.clone(), qp.clone()]);
    let r = (|| {
        let gp = with(&g, p.clone());
        let gq = with(&g, q.clone());
        let p_q = pr.imp_e(&pr.hyp(&gp, pq.clone()), &pr.hyp(&gp, p.clone()))?;
        let q_p = pr.imp_e(&pr.hyp(&gq, qp.clone()), &pr.hyp(&gq, q.clone()))?;
        pr.derived("iffI", &[pr.hyp(&g, boolean(p.clone())), pr.hyp(&g, boolean(q.clone())), p_q, q_p])
    })();
    push("implication", "iffI", g, iff(p.clone(), q.clone()), r);
    let g = set(&[iff(p.clone(), q.clone()), p.clone()]);
    let r = pr.derived("iffE1", &[pr.hyp(&g, iff(p.clone(), q.clone())), pr.hyp(&g, p.clone())]);
    push("implication", "iffE1", g, q.clone(), r);
    let g = set(&[iff(p.clone(), q.clone()), q.clone()]);
    let r = pr.derived("iffE2", &[pr.hyp(&g, iff(p.clone(), q.clone())), pr.hyp(&g, q.clone())]);
    push("implication", "iffE2", g, p.clone(), r);

    let g = set(&[eq(a.clone(), b.clone()), eq(b.clone(), c.clone())]);
    let r = pr.derived("=T", &[pr.hyp(&g, eq(a.clone(), b.clone())), pr.hyp(&g, eq(b.clone(), c.clone()))]);
    push("equality", "=T", g, eq(a.clone(), c.clone()), r);

    let (bp, bq) = (boolean(p.clone()), boolean(q.clone()));
    let split = or(bp.clone(), bq.clone());
    let unary: Vec<(&'static str, Term, Term)> = vec![
        ("~TI", bp.clone(), boolean(neg(p.clone()))),
        ("~TE", boolean(neg(p.clone())), bp.clone()),
        ("\\/TE", boolean(or(p.clone(), q.clone())), split.clone()),
        ("/\\TE", boolean(and(p.clone(), q.clone())), split.clone()),
        ("->TE", boolean(implies(p.clone(), q.clone())), split.clone()),
        ("<->TE1", boolean(iff(p.clone(), q.clone())), bp.clone()),
        ("<->TE2", boolean(iff(p.clone(), q.clone())), bq.clone()),
        ("STI", nat(a.clone()), nat(succ(a.clone()))),
        ("STE", nat(succ(a.clone())), nat(a.clone())),
        ("PTI", nat(a.clone()), nat(pred(a.clone()))),
        ("PTE", nat(pred(a.clone())), nat(a.clone())),
    ];
    for (rule, prem, concl) in unary {
        let g = set(std::slice::from_ref(&prem));
        let r = pr.derived(rule, &[pr.hyp(&g, prem)]);
        push("typing", rule, g, concl, r);
    }
    let binary: Vec<(&'static str, Term)> = vec![
        ("\\/TI", boolean(or(p.clone(), q.clone()))),
        ("/\\TI", boolean(and(p.clone(), q.clone()))),
        ("->TI", boolean(implies(p.clone(), q.clone()))),
        ("<->TI", boolean(iff(p.clone(), q.clone()))),
    ];
    for (rule, concl) in binary {
        let g = set(&[bp.clone(), bq.clone()]);
        let r = pr.derived(rule, &[pr.hyp(&g, bp.clone()), pr.hyp(&g, bq.clone())]);
        push("typing", rule, g, concl, r);
    }
    let g = set(&[boolean(p.clone()), nat(a.clone()), nat(b.clone())]);
    let r = pr.derived("?TI", &[pr.hyp(&g, boolean(p.clone())), pr.hyp(&g, nat(a.clone())), pr.hyp(&g, nat(b.clone()))]);
    push("typing", "?TI", g, nat(cond(p.clone(), a.clone(), b.clone())), r);

    // =TI: the general row first, then the shapes the tactic covers.
    let eq_rows = [
        (a.clone(), b.clone()),
        (a.clone(), a.clone()),
        (a.clone(), Term::Zero),
        (succ(a.clone()), succ(Term::Zero)),
        (numeral(3), numeral(1)),
    ];
    for (l, r) in eq_rows {
        let mut vs = l.free_vars();
        vs.extend(r.free_vars());
        let g: BTreeSet<Term> = vs.into_iter().map(|v| nat(var(v))).collect();
        let res = (|| {
            let pl = pr.nat_of(&g, &l)?;
            let pr_ = pr.nat_of(&g, &r)?;
            pr.derived("=TI", &[pl, pr_])
        })();
        push("typing", "=TI", g, boolean(eq(l, r)), res);
    }
    out
}

/// The `=TI` row on two independent variables. Not derivable: a countermodel
/// where `u = v` has no value when `u < v` validates every primitive rule.
pub fn eq_ti_general(defs: &DefinitionList) -> Result<Theorem, TacticError> {
    let pr = Prover::new(defs);
    let g = set(&[nat(var(0)), nat(var(1))]);
    pr.derived("=TI", &[pr.hyp(&g, nat(var(0))), pr.hyp(&g, nat(var(1)))])
}
