//! Certificates for closed computations: `|- t = n` and `|- p` / `|- ~p`
//! rebuilt from the shape of a terminating evaluation.

use super::tactics::{Prover, TacticError, TResult};
use super::*;
use crate::eval::{Assignment, EvalOutcome, Evaluator};
use crate::syntax::print;
use std::cell::RefCell;

pub const DEFAULT_FUEL: u64 = 1_000_000;

pub struct Certifier<'a> {
    prover: Prover<'a>,
    fuel: u64,
    nums: RefCell<HashMap<Term, (Theorem, u64)>>,
    props: RefCell<HashMap<Term, (bool, Theorem)>>,
}

impl<'a> Certifier<'a> {
    pub fn new(defs: &'a DefinitionList, fuel: u64) -> Self {
        Certifier {
            prover: Prover::new(defs),
            fuel,
            nums: RefCell::new(HashMap::new()),
            props: RefCell::new(HashMap::new()),
        }
    }

    fn defs(&self) -> &'a DefinitionList {
        self.prover.defs
    }

    fn show(&self, t: &Term) -> String {
        print(t, self.defs())
    }

    fn eval(&self, t: &Term) -> Result<u64, TacticError> {
        let ev = Evaluator::new(self.defs());
        match ev.eval(&Assignment::new(), t, self.fuel) {
            Ok(EvalOutcome::Value(n)) => n
                .to_u64()
                .ok_or_else(|| TacticError::Uncertifiable(format!("{} is too large", self.show(t)))),
            Ok(other) => Err(TacticError::NotValue(format!("{}: {other}", self.show(t)))),
            Err(e) => Err(TacticError::NotValue(format!("{}: {e}", self.show(t)))),
        }
    }

    fn closed(&self, t: &Term) -> Result<(), TacticError> {
        if !t.free_vars().is_empty() || !t.is_pure() {
            return Err(TacticError::Uncertifiable(format!("{} is not closed pure BGA", self.show(t))));
        }
        Ok(())
    }

    /// `|- n = n` for a numeral.
    pub fn nat_numeral(&self, n: u64) -> Theorem {
        let p = &self.prover;
        let mut th = p.zero(&BTreeSet::new());
        for _ in 0..n {
            th = p.s_eq_i(&th).expect("S=I on a numeral");
        }
        th
    }

    /// `|- ~(n = m)` for `n > m`.
    pub fn neq_numerals(&self, n: u64, m: u64) -> TResult {
        if n <= m {
            return Err(TacticError::Underivable(format!(
                "~({n} = {m}) has a left side not exceeding the right"
            )));
        }
        let p = &self.prover;
        let mut th = p.s_neq_zero(&self.nat_numeral(n - m - 1))?;
        for _ in 0..m {
            th = p.s_neq_i(&th)?;
        }
        Ok(th)
    }

    /// `|- t = n` together with `n`.
    pub fn num(&self, t: &Term) -> Result<(Theorem, u64), TacticError> {
        if let Some(hit) = self.nums.borrow().get(t) {
            return Ok(hit.clone());
        }
        let out = stacker::maybe_grow(64 * 1024, 1024 * 1024, || self.num_uncached(t))?;
        self.nums.borrow_mut().insert(t.clone(), out.clone());
        Ok(out)
    }

    fn num_uncached(&self, t: &Term) -> Result<(Theorem, u64), TacticError> {
        let p = &self.prover;
        if let Some(n) = numeral_value(t) {
            return Ok((self.nat_numeral(n), n));
        }
        match t {
            Term::Succ(a) => {
                let (th, n) = self.num(a)?;
                Ok((p.s_eq_i(&th)?, n + 1))
            }
            Term::Pred(a) => {
                let (th, n) = self.num(a)?;
                if n == 0 {
                    return Err(TacticError::Uncertifiable(format!(
                        "{} reduces through P(0)",
                        self.show(t)
                    )));
                }
                let m = n - 1;
                let pm = p.p_eq_i2(&self.nat_numeral(m))?;
                let back = p.sym(&th)?;
                Ok((p.subst(&back, &pm, vec![vec![0, 0]])?, m))
            }
            Term::Cond(c, a, b) => {
                let (holds, cth) = self.decide(c)?;
                let (branch, other) = if holds { (a, b) } else { (b, a) };
                let (bth, n) = self.num(branch)?;
                let nat_branch = p.nat_left(&bth)?;
                let sel = if holds {
                    p.cond_i1(&cth, &nat_branch, (**other).clone())?
                } else {
                    p.cond_i2(&cth, &nat_branch, (**other).clone())?
                };
                Ok((p.eq_trans(&sel, &bth)?, n))
            }
            Term::Apply(f, args) => {
                let (inst, nats, eqs) = self.numeric_args(*f, args)?;
                let (body, n) = self.num(&inst.0)?;
                let folded = p.fold(*f, inst.1.clone(), vec![vec![0]], &body, &nats)?;
                Ok((self.restore_args(folded, &eqs, &[0])?, n))
            }
            _ => Err(TacticError::Uncertifiable(format!(
                "{} is not a numeric computation",
                self.show(t)
            ))),
        }
    }

    /// Certify call-by-value arguments and instantiate the body with their numerals.
    #[allow(clippy::type_complexity)]
    fn numeric_args(
        &self,
        f: usize,
        args: &[Term],
    ) -> Result<((Term, Vec<Term>), Vec<Theorem>, Vec<Option<Theorem>>), TacticError> {
        let def = self
            .defs()
            .get(f)
            .ok_or_else(|| TacticError::NotValue(format!("undefined definition d{f}")))?;
        let body = def
            .term()
            .ok_or_else(|| TacticError::Uncertifiable(format!("`{}` is a native definition", def.name)))?;
        let mut nums = Vec::new();
        let mut nats = Vec::new();
        let mut eqs = Vec::new();
        for a in args {
            let (th, n) = self.num(a)?;
            nums.push(numeral(n));
            nats.push(self.nat_numeral(n));
            eqs.push(if numeral_value(a).is_some() { None } else { Some(self.prover.sym(&th)?) });
        }
        let map = nums.iter().enumerate().map(|(i, a)| (i as u32, a.clone())).collect();
        let inst = body
            .subst_many(&map)
            .map_err(|e| TacticError::Uncertifiable(e.to_string()))?;
        Ok(((inst, nums), nats, eqs))
    }

    /// Rewrite numeral arguments of the application at `at` back to the original terms.
    fn restore_args(&self, mut th: Theorem, eqs: &[Option<Theorem>], at: &[usize]) -> TResult {
        for (j, e) in eqs.iter().enumerate() {
            if let Some(e) = e {
                let mut path = at.to_vec();
                path.push(j);
                th = self.prover.subst(e, &th, vec![path])?;
            }
        }
        Ok(th)
    }

    /// `(true, |- p)` or `(false, |- ~p)`.
    pub fn decide(&self, t: &Term) -> Result<(bool, Theorem), TacticError> {
        if let Some(hit) = self.props.borrow().get(t) {
            return Ok(hit.clone());
        }
        let out = stacker::maybe_grow(64 * 1024, 1024 * 1024, || self.decide_uncached(t))?;
        self.props.borrow_mut().insert(t.clone(), out.clone());
        Ok(out)
    }

    fn decide_uncached(&self, t: &Term) -> Result<(bool, Theorem), TacticError> {
        let p = &self.prover;
        match t {
            Term::Eq(a, b) => {
                let (ta, n) = self.num(a)?;
                let (tb, m) = self.num(b)?;
                if n == m {
                    Ok((true, p.eq_trans(&ta, &p.sym(&tb)?)?))
                } else if n > m {
                    let mut th = self.neq_numerals(n, m)?;
                    if numeral_value(a).is_none() {
                        th = p.subst(&p.sym(&ta)?, &th, vec![vec![0, 0]])?;
                    }
                    if numeral_value(b).is_none() {
                        th = p.subst(&p.sym(&tb)?, &th, vec![vec![0, 1]])?;
                    }
                    Ok((false, th))
                } else {
                    Err(TacticError::Uncertifiable(format!(
                        "{} is false but its left side is smaller",
                        self.show(t)
                    )))
                }
            }
            Term::Neg(a) => {
                let (holds, th) = self.decide(a)?;
                if holds {
                    Ok((false, p.negneg_i(&th)?))
                } else {
                    Ok((true, th))
                }
            }
            Term::Or(l, r) => {
                let lv = self.eval(l);
                if let Ok(1) = lv {
                    let (_, th) = self.decide(l)?;
                    return Ok((true, p.or_i1(&th, (**r).clone())?));
                }
                let rv = self.eval(r);
                if let Ok(1) = rv {
                    let (_, th) = self.decide(r)?;
                    return Ok((true, p.or_i2((**l).clone(), &th)?));
                }
                match (lv, rv) {
                    (Ok(0), Ok(0)) => {
                        let (_, nl) = self.decide(l)?;
                        let (_, nr) = self.decide(r)?;
                        Ok((false, p.or_i3(&nl, &nr)?))
                    }
                    (Err(e), _) | (_, Err(e)) => Err(e),
                    _ => Err(TacticError::Uncertifiable(format!("{} is not boolean", self.show(t)))),
                }
            }
            Term::Apply(f, args) => {
                let (inst, nats, eqs) = self.numeric_args(*f, args)?;
                let (holds, body) = self.decide(&inst.0)?;
                let at: Vec<usize> = if holds { vec![] } else { vec![0] };
                let folded = p.fold(*f, inst.1.clone(), vec![at.clone()], &body, &nats)?;
                Ok((holds, self.restore_args(folded, &eqs, &at)?))
            }
            _ => Err(TacticError::Uncertifiable(format!(
                "{} is not a decidable formula shape",
                self.show(t)
            ))),
        }
    }

    pub fn prove_true(&self, t: &Term) -> TResult {
        self.closed(t)?;
        match self.decide(t)? {
            (true, th) => Ok(th),
            (false, _) => Err(TacticError::NotValue(format!("{} reduces to 0", self.show(t)))),
        }
    }

    pub fn prove_false(&self, t: &Term) -> TResult {
        self.closed(t)?;
        match self.decide(t)? {
            (false, th) => Ok(th),
            (true, _) => Err(TacticError::NotValue(format!("{} reduces to 1", self.show(t)))),
        }
    }
}

/// `|- t = n` for a closed term that evaluates to `n` within `fuel`.
pub fn eval_certify(defs: &DefinitionList, t: &Term, fuel: u64) -> TResult {
    let c = Certifier::new(defs, fuel);
    c.closed(t)?;
    c.eval(t)?;
    Ok(c.num(t)?.0)
}

pub fn prove_true(defs: &DefinitionList, t: &Term, fuel: u64) -> TResult {
    let c = Certifier::new(defs, fuel);
    c.eval(t)?;
    c.prove_true(t)
}

pub fn prove_false(defs: &DefinitionList, t: &Term, fuel: u64) -> TResult {
    let c = Certifier::new(defs, fuel);
    c.eval(t)?;
    c.prove_false(t)
}
