//! Termination proofs for primitive-recursive definitions.
//!
//! A recursive definition is accepted when its body has the shape
//! `y = 0 ? base : step` with `y` its last parameter, and every recursive call
//! in `step` is `f(x1, .., xk, P(y))`. Non-recursive definitions are accepted
//! when their body typechecks. Helper definitions are proved inline at each
//! use, so the final proof only depends on the primitive rules.

use super::tactics::{split_nat, Prover, TacticError, TResult};
use super::*;
use crate::syntax::print;

pub struct Primrec<'a> {
    p: Prover<'a>,
}

type Known = HashMap<Term, Theorem>;

fn avoid_of(g: &BTreeSet<Term>, terms: &[Term]) -> BTreeSet<u32> {
    let mut s = BTreeSet::new();
    for t in g.iter().chain(terms) {
        t.all_vars(&mut s);
    }
    s
}

impl<'a> Primrec<'a> {
    pub fn new(defs: &'a DefinitionList) -> Self {
        Primrec { p: Prover::new(defs) }
    }

    fn defs(&self) -> &'a DefinitionList {
        self.p.defs
    }

    fn name(&self, f: usize) -> String {
        self.defs().name(f).map(str::to_string).unwrap_or_else(|| format!("d{f}"))
    }

    fn body(&self, f: usize) -> Result<&'a Term, TacticError> {
        match self.defs().get(f) {
            None => Err(TacticError::MissingCertificate(format!("d{f} is undefined"))),
            Some(d) => d
                .term()
                .ok_or_else(|| TacticError::MissingCertificate(format!("`{}` is native", d.name))),
        }
    }

    /// `nat(v0), .., nat(v(k-1)) |- nat(f(v0, .., v(k-1)))`.
    pub fn termination(&self, f: usize) -> TResult {
        let k = self.defs().arity(f).map_err(|e| TacticError::ShapeNotRecognized(e.to_string()))?;
        let vars: Vec<Term> = (0..k as u32).map(var).collect();
        let g: BTreeSet<Term> = vars.iter().map(|v| nat(v.clone())).collect();
        let nats: Vec<Theorem> = vars.iter().map(|v| self.p.hyp(&g, nat(v.clone()))).collect();
        self.check_shape(f)?;
        let mut stack = vec![];
        self.nat_app(f, &vars, &nats, &g, &Known::new(), &mut stack)
            .map_err(|e| match e {
                TacticError::ShapeNotRecognized(m) if !m.starts_with(&self.name(f)) => {
                    TacticError::MissingCertificate(m)
                }
                other => other,
            })
    }

    /// Whether `f` is recursive, after checking its top-level shape.
    fn check_shape(&self, f: usize) -> Result<bool, TacticError> {
        let body = self.body(f)?;
        let mut refs = BTreeSet::new();
        body.def_refs(&mut refs);
        if !refs.contains(&f) {
            if !body.is_pure() {
                return Err(TacticError::ShapeNotRecognized(format!("{}: quantified body", self.name(f))));
            }
            return Ok(false);
        }
        let k = self.defs().arity(f).unwrap_or(0);
        let bad = || TacticError::ShapeNotRecognized(format!("{}: not of the form y = 0 ? base : step", self.name(f)));
        if k == 0 {
            return Err(bad());
        }
        let y = (k - 1) as u32;
        let (c, base, step) = match body {
            Term::Cond(c, a, b) => (c, a, b),
            _ => return Err(bad()),
        };
        if **c != eq(var(y), Term::Zero) {
            return Err(bad());
        }
        let mut base_refs = BTreeSet::new();
        base.def_refs(&mut base_refs);
        if base_refs.contains(&f) {
            return Err(TacticError::ShapeNotRecognized(format!("{}: recursive call in base case", self.name(f))));
        }
        let mut call_args: Vec<Term> = (0..y).map(var).collect();
        call_args.push(pred(var(y)));
        let call = Term::Apply(f, call_args);
        if !calls_only(step, f, &call) {
            return Err(TacticError::ShapeNotRecognized(format!(
                "{}: recursive call other than {}",
                self.name(f),
                print(&call, self.defs())
            )));
        }
        Ok(true)
    }

    /// `G |- nat(f(args))` from `G |- nat(a)` for each argument.
    fn nat_app(
        &self,
        f: usize,
        args: &[Term],
        nats: &[Theorem],
        g: &BTreeSet<Term>,
        known: &Known,
        stack: &mut Vec<usize>,
    ) -> TResult {
        if stack.contains(&f) {
            return Err(TacticError::ShapeNotRecognized(format!(
                "{}: mutual recursion is not supported",
                self.name(f)
            )));
        }
        let recursive = self.check_shape(f)?;
        let body = self.body(f)?;
        stack.push(f);
        let out = if recursive {
            self.nat_rec(f, body, args, nats, g, known, stack)
        } else {
            self.nat_plain(f, body, args, nats, g, known, stack)
        };
        stack.pop();
        out
    }

    fn instantiate(&self, body: &Term, args: &[Term]) -> Result<Term, TacticError> {
        let map = args.iter().enumerate().map(|(i, a)| (i as u32, a.clone())).collect();
        body.subst_many(&map).map_err(|e| TacticError::ShapeNotRecognized(e.to_string()))
    }

    fn with_args(&self, known: &Known, args: &[Term], nats: &[Theorem]) -> Known {
        let mut k = known.clone();
        for (a, n) in args.iter().zip(nats) {
            k.insert(a.clone(), n.clone());
        }
        k
    }

    #[allow(clippy::too_many_arguments)]
    fn nat_plain(
        &self,
        f: usize,
        body: &Term,
        args: &[Term],
        nats: &[Theorem],
        g: &BTreeSet<Term>,
        known: &Known,
        stack: &mut Vec<usize>,
    ) -> TResult {
        let inst = self.instantiate(body, args)?;
        let known = self.with_args(known, args, nats);
        let th = self.typecheck(&inst, g, &known, stack)?;
        self.p.fold(f, args.to_vec(), vec![vec![0], vec![1]], &th, nats)
    }

    #[allow(clippy::too_many_arguments)]
    fn nat_rec(
        &self,
        f: usize,
        body: &Term,
        args: &[Term],
        nats: &[Theorem],
        g: &BTreeSet<Term>,
        known: &Known,
        stack: &mut Vec<usize>,
    ) -> TResult {
        let p = &self.p;
        let k = args.len();
        let (base, step) = match body {
            Term::Cond(_, a, b) => (&**a, &**b),
            _ => unreachable!("shape checked"),
        };
        let z = fresh_var(&avoid_of(g, args));
        let mut z_args = args[..k - 1].to_vec();
        z_args.push(var(z));
        let tmpl = nat(Term::Apply(f, z_args));
        let prefix_nats = &nats[..k - 1];
        let prefix = &args[..k - 1];

        // Base: f(a', 0) selects its base branch.
        let mut args0 = prefix.to_vec();
        args0.push(Term::Zero);
        let mut nats0 = prefix_nats.to_vec();
        nats0.push(p.zero(g));
        let base_inst = self.instantiate(base, &args0)?;
        let step_inst0 = self.instantiate(step, &args0)?;
        let known0 = self.with_args(known, &args0, &nats0);
        let nat_base = self.typecheck(&base_inst, g, &known0, stack)?;
        let sel = p.cond_i1(&p.zero(g), &nat_base, step_inst0)?;
        let nat_cond = p.subst(&p.sym(&sel)?, &nat_base, vec![vec![0], vec![1]])?;
        let base_th = p.fold(f, args0.clone(), vec![vec![0], vec![1]], &nat_cond, &nats0)?;

        // Step: f(a', S z) selects its step branch; f(a', P(S z)) is the hypothesis.
        let gs: BTreeSet<Term> = g.iter().cloned().chain([nat(var(z)), tmpl.clone()]).collect();
        let nat_z = p.hyp(&gs, nat(var(z)));
        let sz = succ(var(z));
        let mut args_s = prefix.to_vec();
        args_s.push(sz.clone());
        let mut nats_s = prefix_nats.to_vec();
        nats_s.push(p.s_eq_i(&nat_z)?);
        let base_inst_s = self.instantiate(base, &args_s)?;
        let step_inst_s = self.instantiate(step, &args_s)?;
        let mut call = prefix.to_vec();
        call.push(pred(sz.clone()));
        let call = Term::Apply(f, call);
        let ih = p.hyp(&gs, tmpl.clone());
        let back = p.sym(&p.p_eq_i2(&nat_z)?)?;
        let ih_call = p.subst(&back, &ih, vec![vec![0, k - 1], vec![1, k - 1]])?;
        let mut known_s = self.with_args(known, &args_s, &nats_s);
        known_s.insert(call, ih_call);
        known_s.insert(var(z), nat_z.clone());
        let nat_step = self.typecheck(&step_inst_s, &gs, &known_s, stack)?;
        let not_zero = p.s_neq_zero(&nat_z)?;
        let sel = p.cond_i2(&not_zero, &nat_step, base_inst_s)?;
        let nat_cond = p.subst(&p.sym(&sel)?, &nat_step, vec![vec![0], vec![1]])?;
        let step_th = p.fold(f, args_s.clone(), vec![vec![0], vec![1]], &nat_cond, &nats_s)?;

        p.ind(tmpl, z, &base_th, &step_th, &nats[k - 1])
    }

    /// `G |- nat(t)`.
    fn typecheck(&self, t: &Term, g: &BTreeSet<Term>, known: &Known, stack: &mut Vec<usize>) -> TResult {
        let p = &self.p;
        if let Some(th) = known.get(t) {
            return p.weaken_to(th, &th.hyps().union(g).cloned().collect());
        }
        if g.contains(&nat(t.clone())) {
            return Ok(p.hyp(g, nat(t.clone())));
        }
        match t {
            Term::Zero => Ok(p.zero(g)),
            Term::Succ(a) => p.s_eq_i(&self.typecheck(a, g, known, stack)?),
            Term::Pred(a) => p.p_ti(&self.typecheck(a, g, known, stack)?),
            Term::Cond(c, a, b) => {
                let cb = self.boolcheck(c, g, known, stack)?;
                let na = self.typecheck(a, g, known, stack)?;
                let nb = self.typecheck(b, g, known, stack)?;
                p.cond_ti(&cb, &na, &nb)
            }
            Term::Apply(h, args) => {
                let nats = args
                    .iter()
                    .map(|a| self.typecheck(a, g, known, stack))
                    .collect::<Result<Vec<_>, _>>()?;
                self.nat_app(*h, args, &nats, g, known, stack)
            }
            _ => Err(TacticError::ShapeNotRecognized(format!(
                "no totality argument for {}",
                print(t, self.defs())
            ))),
        }
    }

    /// `G |- bool(c)`.
    fn boolcheck(&self, c: &Term, g: &BTreeSet<Term>, known: &Known, stack: &mut Vec<usize>) -> TResult {
        let p = &self.p;
        match c {
            Term::Eq(a, b) => {
                let na = self.typecheck(a, g, known, stack)?;
                let nb = self.typecheck(b, g, known, stack)?;
                p.eq_ti(&na, &nb).map_err(|e| match e {
                    TacticError::Underivable(m) => TacticError::ShapeNotRecognized(m),
                    other => other,
                })
            }
            Term::Neg(a) => p.neg_ti(&self.boolcheck(a, g, known, stack)?),
            Term::Or(a, b) => {
                let ba = self.boolcheck(a, g, known, stack)?;
                let bb = self.boolcheck(b, g, known, stack)?;
                p.or_ti(&ba, &bb)
            }
            Term::Apply(h, args) => {
                let body = self.body(*h)?;
                let mut refs = BTreeSet::new();
                body.def_refs(&mut refs);
                if refs.contains(h) || stack.contains(h) {
                    return Err(TacticError::ShapeNotRecognized(format!(
                        "{}: recursive predicate",
                        self.name(*h)
                    )));
                }
                let nats = args
                    .iter()
                    .map(|a| self.typecheck(a, g, known, stack))
                    .collect::<Result<Vec<_>, _>>()?;
                let inst = self.instantiate(body, args)?;
                let known = self.with_args(known, args, &nats);
                stack.push(*h);
                let th = self.boolcheck(&inst, g, &known, stack);
                stack.pop();
                p.fold(*h, args.clone(), vec![vec![0], vec![1, 0]], &th?, &nats)
            }
            _ => Err(TacticError::ShapeNotRecognized(format!(
                "no booleanness argument for {}",
                print(c, self.defs())
            ))),
        }
    }
}

/// Every application of `f` inside `t` equals `call`.
fn calls_only(t: &Term, f: usize, call: &Term) -> bool {
    if let Term::Apply(h, _) = t {
        if *h == f {
            return t == call;
        }
    }
    t.children().into_iter().all(|c| calls_only(c, f, call))
}

/// `nat(v0), .., nat(vk) |- nat(f(v0, .., vk))` for a primitive-recursive `f`.
pub fn primrec_termination(defs: &DefinitionList, f: usize) -> TResult {
    Primrec::new(defs).termination(f)
}

/// Checks the final judgment of a termination theorem.
pub fn is_termination_claim(defs: &DefinitionList, f: usize, j: &Judgment) -> bool {
    let k = defs.arity(f).unwrap_or(0) as u32;
    let vars: Vec<Term> = (0..k).map(var).collect();
    split_nat(&j.concl) == Some(&Term::Apply(f, vars.clone()))
        && j.hyps == vars.into_iter().map(nat).collect()
}
