//! Native oracle definitions: C, E⁺, A⁺ and the E/A recursion over them.

use super::coding::*;
use super::pairing::{pair, unpair};
use crate::defs::{DefError, DefinitionList, NativeFn, NativeOutcome};
use crate::eval::{Assignment, EvalOutcome, Evaluator};
use crate::kernel::certify::Certifier;
use crate::kernel::{check_proof, Judgment, Proof, Theorem};
use crate::nat::Nat;
use crate::term::*;
use rug::Integer;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// E⁺/A⁺ are computed literally for every candidate below this bound.
    pub prefix_limit: u64,
    /// Witnesses 0..=witness_bound are tried when building E⁺ certificates.
    pub witness_bound: u64,
    /// Largest code written as a numeral by [`Reflection::literal`].
    pub literal_limit: u64,
    /// Largest value whose numeral code `ga_numcode` will build.
    pub numcode_limit: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { prefix_limit: 1024, witness_bound: 16, literal_limit: 4096, numcode_limit: 20 }
    }
}

/// 1 iff `n` codes a BGA proof accepted by the kernel whose claim has code `m`.
pub fn proof_check_c(defs: &DefinitionList, n: &Code, m: &Code) -> bool {
    match decode_proof(n) {
        Ok(p) => match decode_judgment(m) {
            Ok(j) => proof_check(defs, &p, &j),
            Err(_) => false,
        },
        Err(_) => false,
    }
}

/// Decoding is a bijection onto canonical judgments, so comparing claims
/// structurally agrees with comparing their codes.
fn proof_check(defs: &DefinitionList, p: &Proof, m: &Judgment) -> bool {
    if p.steps.iter().any(|s| s.rule.is_quantifier()) {
        return false;
    }
    match (check_proof(defs, p), p.claim()) {
        (Ok(_), Some(j)) => j == m,
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectError {
    #[error(transparent)]
    Def(#[from] DefError),
    #[error(transparent)]
    Code(#[from] NotWellFormed),
    #[error("{0}")]
    Template(String),
}

/// Candidate certificates known for one `(v, p)` pair.
#[derive(Debug, Default)]
struct Known {
    cands: Vec<Code>,
    cost: u64,
}

#[derive(Default)]
struct Cache {
    templates: HashMap<Code, Result<Term, NotWellFormed>>,
    prefix_e: HashMap<(Code, Code), Arc<Vec<u64>>>,
    prefix_a: HashMap<(Code, Code), Arc<Vec<u64>>>,
    exists: HashMap<(Code, Code), Arc<Known>>,
    /// Budgets already shown too small for the witness search.
    exists_floor: HashMap<(Code, Code), u64>,
    forall: HashMap<(Code, Code), Arc<Known>>,
}

struct Planted {
    judgment: Judgment,
    proof: Proof,
    code: Code,
}

enum Halt {
    OutOfFuel,
    Failure(String),
}

type H<T> = Result<T, Halt>;

fn fail<T>(msg: impl Into<String>) -> H<T> {
    Err(Halt::Failure(msg.into()))
}

pub struct Oracle {
    config: OracleConfig,
    planted: RwLock<Vec<Planted>>,
    cache: Mutex<Cache>,
}

impl Oracle {
    pub fn new(config: OracleConfig) -> Self {
        Oracle { config, planted: RwLock::new(Vec::new()), cache: Mutex::new(Cache::default()) }
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    /// Register a proof as a known certificate. Clears cached candidate sets.
    pub fn plant(&self, th: &Theorem) {
        let proof = th.to_proof();
        let code = encode_proof(&proof);
        self.planted.write().unwrap().push(Planted { judgment: th.judgment().clone(), proof, code });
        let mut c = self.cache.lock().unwrap();
        c.prefix_e.clear();
        c.prefix_a.clear();
        c.exists.clear();
        c.exists_floor.clear();
        c.forall.clear();
    }

    pub fn is_planted(&self, j: &Judgment) -> bool {
        self.planted.read().unwrap().iter().any(|pl| &pl.judgment == j)
    }

    fn template(&self, p: &Code) -> H<Term> {
        if let Some(t) = self.cache.lock().unwrap().templates.get(p) {
            return t.clone().or_else(|e| fail(e.to_string()));
        }
        let t = decode_term(p);
        self.cache.lock().unwrap().templates.insert(p.clone(), t.clone());
        t.or_else(|e| fail(e.to_string()))
    }

    fn variable(&self, v: &Code) -> H<u32> {
        match self.template(v)? {
            Term::Var(x) => Ok(x),
            _ => fail("the first argument does not code a variable"),
        }
    }

    fn target_e(p: &Term, x: u32, r: &Integer) -> Option<Judgment> {
        let r = r.to_u64()?;
        let inst = p.subst(x, &numeral(r)).ok()?;
        Some(Judgment::closed(inst))
    }

    fn target_a(p: &Term, x: u32) -> Judgment {
        Judgment::new([nat(var(x))], p.clone())
    }

    /// Is `c` a certificate for E⁺ (`pair(proof, witness)`)?
    fn valid_e(defs: &DefinitionList, p: &Term, x: u32, c: &Code) -> bool {
        let (l, r) = unpair(c);
        let Ok(proof) = decode_proof(&l) else { return false };
        if p.occurs_free(x) && r > l.significant_bits() + 8 {
            // Every proof of p[r] contains the numeral's code, which exceeds 2^r.
            return false;
        }
        match Self::target_e(p, x, &r) {
            Some(m) => proof_check(defs, &proof, &m),
            None => false,
        }
    }

    fn prefix(&self, defs: &DefinitionList, v: &Code, p: &Code, universal: bool) -> H<Arc<Vec<u64>>> {
        let key = (v.clone(), p.clone());
        {
            let c = self.cache.lock().unwrap();
            let hit = if universal { c.prefix_a.get(&key) } else { c.prefix_e.get(&key) };
            if let Some(hit) = hit {
                return Ok(hit.clone());
            }
        }
        let x = self.variable(v)?;
        let t = self.template(p)?;
        let target = Self::target_a(&t, x);
        let found: Vec<u64> = (0..self.config.prefix_limit)
            .filter(|&c| {
                let c = Integer::from(c);
                if universal {
                    decode_proof(&c).is_ok_and(|pf| proof_check(defs, &pf, &target))
                } else {
                    Self::valid_e(defs, &t, x, &c)
                }
            })
            .collect();
        let found = Arc::new(found);
        let mut c = self.cache.lock().unwrap();
        let map = if universal { &mut c.prefix_a } else { &mut c.prefix_e };
        map.insert(key, found.clone());
        Ok(found)
    }

    /// Witness-directed and planted certificates for E⁺. Witnesses are tried
    /// in order up to the first certified one; the cost is the fuel spent
    /// evaluating them.
    fn exists_known(&self, defs: &DefinitionList, v: &Code, p: &Code, budget: u64) -> H<Arc<Known>> {
        let key = (v.clone(), p.clone());
        {
            let c = self.cache.lock().unwrap();
            if let Some(k) = c.exists.get(&key) {
                return if k.cost <= budget { Ok(k.clone()) } else { Err(Halt::OutOfFuel) };
            }
            if c.exists_floor.get(&key).is_some_and(|&f| budget <= f) {
                return Err(Halt::OutOfFuel);
            }
        }
        let x = self.variable(v)?;
        let t = self.template(p)?;
        let ev = Evaluator::new(defs);
        let mut spent = 0u64;
        let mut cands = Vec::new();
        for n in 0..=self.config.witness_bound {
            let inst = t.subst(x, &numeral(n)).or_else(|e| fail(e.to_string()))?;
            match ev.eval_with_cost(&Assignment::new(), &inst, budget - spent) {
                Ok((EvalOutcome::Value(val), cost)) => {
                    spent += cost;
                    if val == Nat::ONE {
                        if let Ok(th) = Certifier::new(defs, cost).prove_true(&inst) {
                            let proof = th.to_proof();
                            if proof_check(defs, &proof, th.judgment()) {
                                cands.push(pair(&encode_proof(&proof), &Integer::from(n)));
                                break;
                            }
                        }
                    }
                }
                Ok((EvalOutcome::Stuck(_), _)) => {}
                Ok((EvalOutcome::OutOfFuel, _)) => {
                    let mut c = self.cache.lock().unwrap();
                    let floor = c.exists_floor.entry(key).or_insert(0);
                    *floor = (*floor).max(budget);
                    return Err(Halt::OutOfFuel);
                }
                Err(e) => return fail(e.to_string()),
            }
        }
        for pl in self.planted.read().unwrap().iter() {
            if !pl.judgment.hyps.is_empty() {
                continue;
            }
            let Some(binding) = match_instance(&t, x, &pl.judgment.concl) else { continue };
            let n = match binding {
                None => 0,
                Some(b) => match numeral_value(&b) {
                    Some(n) => n,
                    None => continue,
                },
            };
            if proof_check(defs, &pl.proof, &pl.judgment) {
                cands.push(pair(&pl.code, &Integer::from(n)));
            }
        }
        cands.sort();
        cands.dedup();
        let known = Arc::new(Known { cands, cost: spent });
        self.cache.lock().unwrap().exists.insert(key, known.clone());
        Ok(known)
    }

    /// Planted certificates for A⁺.
    fn forall_known(&self, defs: &DefinitionList, v: &Code, p: &Code) -> H<Arc<Known>> {
        let key = (v.clone(), p.clone());
        if let Some(k) = self.cache.lock().unwrap().forall.get(&key) {
            return Ok(k.clone());
        }
        let x = self.variable(v)?;
        let t = self.template(p)?;
        let want = Judgment::new([nat(var(x))], t);
        let mut cands: Vec<Code> = self
            .planted
            .read()
            .unwrap()
            .iter()
            .filter(|pl| pl.judgment == want && proof_check(defs, &pl.proof, &want))
            .map(|pl| pl.code.clone())
            .collect();
        cands.sort();
        cands.dedup();
        let known = Arc::new(Known { cands, cost: 0 });
        self.cache.lock().unwrap().forall.insert(key, known.clone());
        Ok(known)
    }

    fn charge(budget: u64, cost: u64) -> H<u64> {
        budget.checked_sub(cost).ok_or(Halt::OutOfFuel)
    }

    fn below(prefix: &[u64], known: &Known, s: &Integer) -> bool {
        prefix.iter().any(|&c| *s > c) || known.cands.first().is_some_and(|c| c < s)
    }

    fn eplus_at(&self, defs: &DefinitionList, v: &Code, p: &Code, s: &Integer, budget: u64) -> H<(bool, u64)> {
        let limit = self.config.prefix_limit;
        if *s <= limit {
            let cost = s.to_u64().unwrap();
            Self::charge(budget, cost)?;
            let prefix = self.prefix(defs, v, p, false)?;
            return Ok((prefix.iter().any(|&c| *s > c), cost));
        }
        let left = Self::charge(budget, limit)?;
        let prefix = self.prefix(defs, v, p, false)?;
        let known = self.exists_known(defs, v, p, left)?;
        Ok((Self::below(&prefix, &known, s), limit + known.cost))
    }

    fn aplus_at(&self, defs: &DefinitionList, v: &Code, p: &Code, s: &Integer, budget: u64) -> H<(bool, u64)> {
        let limit = self.config.prefix_limit;
        let cost = if *s <= limit { s.to_u64().unwrap() } else { limit };
        Self::charge(budget, cost)?;
        let prefix = self.prefix(defs, v, p, true)?;
        if *s <= limit {
            return Ok((prefix.iter().any(|&c| *s > c), cost));
        }
        let known = self.forall_known(defs, v, p)?;
        Ok((Self::below(&prefix, &known, s), cost))
    }

    /// Least `c + 1` over candidates `c >= s` of E⁺(p) and A⁺(¬p) (or the
    /// dual pair), else `s + 1`.
    fn next(&self, defs: &DefinitionList, v: &Code, p: &Code, s: &Integer, universal: bool, budget: u64) -> H<(Integer, u64)> {
        let limit = self.config.prefix_limit;
        let left = Self::charge(budget, limit)?;
        let np = pair(&Integer::from(TAG_NEG), p);
        let (ep, ap) = if universal { (&np, p) } else { (p, &np) };
        let known_e = self.exists_known(defs, v, ep, left)?;
        let known_a = self.forall_known(defs, v, ap)?;
        let pe = self.prefix(defs, v, ep, false)?;
        let pa = self.prefix(defs, v, ap, true)?;
        let best = pe
            .iter()
            .chain(pa.iter())
            .map(|&c| Integer::from(c))
            .chain(known_e.cands.iter().cloned())
            .chain(known_a.cands.iter().cloned())
            .filter(|c| c >= s)
            .min();
        let next = match best {
            Some(c) => c + 1u32,
            None => Integer::from(s + 1u32),
        };
        Ok((next, limit + known_e.cost))
    }

    pub fn eplus(&self, defs: &DefinitionList, v: &Code, p: &Code, s: &Integer, budget: u64) -> NativeOutcome {
        outcome(self.eplus_at(defs, v, p, s, budget).map(|(b, c)| (Nat::from(b as u64), c)))
    }

    pub fn aplus(&self, defs: &DefinitionList, v: &Code, p: &Code, s: &Integer, budget: u64) -> NativeOutcome {
        outcome(self.aplus_at(defs, v, p, s, budget).map(|(b, c)| (Nat::from(b as u64), c)))
    }

    /// Known E⁺ certificates for `(v, p)` (empty if the witness search runs out of fuel).
    pub fn exists_certificates(&self, defs: &DefinitionList, v: &Code, p: &Code, budget: u64) -> Vec<Code> {
        self.exists_known(defs, v, p, budget).map(|k| k.cands.clone()).unwrap_or_default()
    }

    pub fn forall_certificates(&self, defs: &DefinitionList, v: &Code, p: &Code) -> Vec<Code> {
        self.forall_known(defs, v, p).map(|k| k.cands.clone()).unwrap_or_default()
    }
}

fn outcome(r: H<(Nat, u64)>) -> NativeOutcome {
    match r {
        Ok((value, cost)) => NativeOutcome::Value { value, cost },
        Err(Halt::OutOfFuel) => NativeOutcome::OutOfFuel,
        Err(Halt::Failure(m)) => NativeOutcome::Failure(m),
    }
}

/// If `t` is `p[a/x]` for some `a`, return `Some(Some(a))`, or `Some(None)`
/// when `x` does not occur in `p` and `t == p`.
pub fn match_instance(p: &Term, x: u32, t: &Term) -> Option<Option<Term>> {
    fn go(p: &Term, x: u32, t: &Term, bound: &mut Option<Term>) -> bool {
        if *p == Term::Var(x) {
            return match bound {
                Some(b) => b == t,
                None => {
                    *bound = Some(t.clone());
                    true
                }
            };
        }
        match (p, t) {
            (Term::Succ(a), Term::Succ(b))
            | (Term::Pred(a), Term::Pred(b))
            | (Term::Neg(a), Term::Neg(b)) => go(a, x, b, bound),
            (Term::Or(a, b), Term::Or(c, d)) | (Term::Eq(a, b), Term::Eq(c, d)) => {
                go(a, x, c, bound) && go(b, x, d, bound)
            }
            (Term::Cond(a, b, c), Term::Cond(d, e, f)) => {
                go(a, x, d, bound) && go(b, x, e, bound) && go(c, x, f, bound)
            }
            (Term::Apply(f, xs), Term::Apply(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| go(a, x, b, bound))
            }
            (Term::Forall(..), _) | (Term::Exists(..), _) => false,
            _ => p == t,
        }
    }
    let mut bound = None;
    go(p, x, t, &mut bound).then_some(bound)
}

#[derive(Clone, Copy)]
enum Kind {
    Pair,
    NumCode,
    Check,
    EPlus,
    APlus,
    NextE,
    NextA,
}

struct Native {
    oracle: Arc<Oracle>,
    kind: Kind,
}

impl NativeFn for Native {
    fn call(&self, defs: &DefinitionList, args: &[Nat], budget: u64) -> NativeOutcome {
        let a: Vec<Integer> = args.iter().map(Nat::to_integer).collect();
        let o = &self.oracle;
        let value = |n: Integer| NativeOutcome::Value { value: Nat::from_integer(n), cost: 0 };
        match self.kind {
            Kind::Pair => value(pair(&a[0], &a[1])),
            Kind::NumCode => match a[0].to_u64() {
                Some(n) if n <= o.config.numcode_limit => value(numeral_code(n)),
                _ => NativeOutcome::Failure(format!("numeral {} is too large to quote", a[0])),
            },
            Kind::Check => value(Integer::from(proof_check_c(defs, &a[0], &a[1]) as u32)),
            Kind::EPlus => o.eplus(defs, &a[0], &a[1], &a[2], budget),
            Kind::APlus => o.aplus(defs, &a[0], &a[1], &a[2], budget),
            Kind::NextE | Kind::NextA => {
                let universal = matches!(self.kind, Kind::NextA);
                outcome(
                    o.next(defs, &a[0], &a[1], &a[2], universal, budget)
                        .map(|(n, c)| (Nat::from_integer(n), c)),
                )
            }
        }
    }
}

/// Indices of the reserved definitions, all above the user definitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reserved {
    pub pair: usize,
    pub numcode: usize,
    pub check: usize,
    pub eplus: usize,
    pub aplus: usize,
    pub next_e: usize,
    pub next_a: usize,
    pub e: usize,
    pub a: usize,
}

pub const RESERVED_NAMES: [&str; 9] =
    ["ga_pair", "ga_numcode", "ga_check", "ga_eplus", "ga_aplus", "ga_next_e", "ga_next_a", "ga_e", "ga_a"];

/// User definitions with quantifiers elaborated, plus the oracle definitions.
pub struct Reflection {
    pub defs: DefinitionList,
    pub oracle: Arc<Oracle>,
    pub reserved: Reserved,
}

impl Reflection {
    pub fn new(user: &DefinitionList) -> Result<Self, ReflectError> {
        Self::with_config(user, OracleConfig::default())
    }

    pub fn with_config(user: &DefinitionList, config: OracleConfig) -> Result<Self, ReflectError> {
        let oracle = Arc::new(Oracle::new(config));
        let mut defs = user.clone();
        let native = |defs: &mut DefinitionList, name: &str, arity, kind| {
            defs.push_native(name, arity, Arc::new(Native { oracle: oracle.clone(), kind }))
        };
        let pair_i = native(&mut defs, RESERVED_NAMES[0], 2, Kind::Pair)?;
        let numcode = native(&mut defs, RESERVED_NAMES[1], 1, Kind::NumCode)?;
        let check = native(&mut defs, RESERVED_NAMES[2], 2, Kind::Check)?;
        let eplus = native(&mut defs, RESERVED_NAMES[3], 3, Kind::EPlus)?;
        let aplus = native(&mut defs, RESERVED_NAMES[4], 3, Kind::APlus)?;
        let next_e = native(&mut defs, RESERVED_NAMES[5], 3, Kind::NextE)?;
        let next_a = native(&mut defs, RESERVED_NAMES[6], 3, Kind::NextA)?;
        let e = defs.len();
        let a = e + 1;
        let args = || vec![var(0), var(1), var(2)];
        let negated = || vec![var(0), apply(pair_i, vec![numeral(TAG_NEG as u64), var(1)]), var(2)];
        let nonzero = |f: usize, xs: Vec<Term>| neg(eq(apply(f, xs), Term::Zero));
        let body = |plus: usize, minus: usize, next: usize, me: usize, yes: Term, no: Term| {
            cond(
                nonzero(plus, args()),
                yes,
                cond(
                    nonzero(minus, negated()),
                    no,
                    apply(me, vec![var(0), var(1), apply(next, args())]),
                ),
            )
        };
        defs.push_term(RESERVED_NAMES[7], body(eplus, aplus, next_e, e, truth(), falsity()))?;
        defs.push_term(RESERVED_NAMES[8], body(aplus, eplus, next_a, a, truth(), falsity()))?;
        let reserved = Reserved { pair: pair_i, numcode, check, eplus, aplus, next_e, next_a, e, a };
        let mut r = Reflection { defs, oracle, reserved };
        for i in 0..user.len() {
            if let Some(t) = user.get(i).and_then(|d| d.term()) {
                if !t.is_pure() {
                    let t = r.elaborate(t)?;
                    r.defs.set_body(i, t)?;
                }
            }
        }
        Ok(r)
    }

    /// A term evaluating to `c`: a numeral when small, otherwise a tree of `ga_pair`.
    pub fn literal(&self, c: &Code) -> Term {
        if *c <= self.oracle.config.literal_limit {
            return numeral(c.to_u64().unwrap());
        }
        let (l, r) = unpair(c);
        apply(self.reserved.pair, vec![self.literal(&l), self.literal(&r)])
    }

    fn tagged(&self, tag: u32, payload: Term) -> Term {
        apply(self.reserved.pair, vec![numeral(tag as u64), payload])
    }

    /// A term evaluating to the code of `t` with every free variable other
    /// than `x` replaced by the numeral of its value.
    pub fn quote(&self, t: &Term, x: u32) -> Term {
        if t.free_vars().iter().all(|&v| v == x) {
            return self.literal(&encode_term(t));
        }
        let q = |a: &Term| self.quote(a, x);
        let pr = |a: Term, b: Term| apply(self.reserved.pair, vec![a, b]);
        match t {
            Term::Var(v) => apply(self.reserved.numcode, vec![var(*v)]),
            Term::Succ(a) => self.tagged(TAG_SUCC, q(a)),
            Term::Pred(a) => self.tagged(TAG_PRED, q(a)),
            Term::Neg(a) => self.tagged(TAG_NEG, q(a)),
            Term::Or(a, b) => self.tagged(TAG_OR, pr(q(a), q(b))),
            Term::Eq(a, b) => self.tagged(TAG_EQ, pr(q(a), q(b))),
            Term::Cond(c, a, b) => self.tagged(TAG_COND, pr(q(c), pr(q(a), q(b)))),
            Term::Apply(f, args) => {
                let list = args
                    .iter()
                    .rev()
                    .fold(Term::Zero, |tail, h| succ(pr(q(h), tail)));
                self.tagged(TAG_APPLY, pr(numeral(*f as u64), list))
            }
            Term::Zero | Term::Forall(..) | Term::Exists(..) => unreachable!("closed or elaborated"),
        }
    }

    /// Replace every quantifier by an application of the E or A oracle.
    pub fn elaborate(&self, t: &Term) -> Result<Term, ReflectError> {
        if t.is_pure() {
            return Ok(t.clone());
        }
        stacker::maybe_grow(64 * 1024, 1024 * 1024, || {
            Ok(match t {
                Term::Forall(x, b) | Term::Exists(x, b) => {
                    let body = self.elaborate(b)?;
                    let f = if matches!(t, Term::Forall(..)) { self.reserved.a } else { self.reserved.e };
                    apply(f, vec![self.literal(&encode_term(&var(*x))), self.quote(&body, *x), Term::Zero])
                }
                Term::Succ(a) => succ(self.elaborate(a)?),
                Term::Pred(a) => pred(self.elaborate(a)?),
                Term::Neg(a) => neg(self.elaborate(a)?),
                Term::Or(a, b) => or(self.elaborate(a)?, self.elaborate(b)?),
                Term::Eq(a, b) => eq(self.elaborate(a)?, self.elaborate(b)?),
                Term::Cond(c, a, b) => cond(self.elaborate(c)?, self.elaborate(a)?, self.elaborate(b)?),
                Term::Apply(f, args) => {
                    apply(*f, args.iter().map(|a| self.elaborate(a)).collect::<Result<_, _>>()?)
                }
                Term::Var(_) | Term::Zero => t.clone(),
            })
        })
    }

    /// Elaborate, then evaluate.
    pub fn eval(&self, a: &Assignment, t: &Term, fuel: u64) -> Result<EvalOutcome, ReflectError> {
        let t = self.elaborate(t)?;
        Evaluator::new(&self.defs)
            .eval(a, &t, fuel)
            .map_err(|e| ReflectError::Template(e.to_string()))
    }

    pub fn plant(&self, th: &Theorem) {
        self.oracle.plant(th);
    }

    pub fn check(&self, n: &Code, m: &Code) -> bool {
        proof_check_c(&self.defs, n, m)
    }

    pub fn eplus(&self, v: &Code, p: &Code, s: &Integer, fuel: u64) -> EvalOutcome {
        native_outcome(self.oracle.eplus(&self.defs, v, p, s, fuel))
    }

    pub fn aplus(&self, v: &Code, p: &Code, s: &Integer, fuel: u64) -> EvalOutcome {
        native_outcome(self.oracle.aplus(&self.defs, v, p, s, fuel))
    }

    /// E(v, p, s) or A(v, p, s) through the definitional bodies.
    pub fn two_sided(&self, universal: bool, v: &Code, p: &Code, s: &Integer, fuel: u64) -> EvalOutcome {
        let f = if universal { self.reserved.a } else { self.reserved.e };
        let t = apply(f, vec![self.literal(v), self.literal(p), self.literal(s)]);
        Evaluator::new(&self.defs)
            .eval(&Assignment::new(), &t, fuel)
            .expect("oracle bodies are well formed")
    }
}

fn native_outcome(o: NativeOutcome) -> EvalOutcome {
    match o {
        NativeOutcome::Value { value, .. } => EvalOutcome::Value(value),
        NativeOutcome::OutOfFuel => EvalOutcome::OutOfFuel,
        NativeOutcome::Failure(m) => EvalOutcome::Stuck(crate::eval::StuckReason::NativeFailure(m)),
    }
}

/// A witness for `exists x. p` with its kernel proof of `p[n]`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub n: u64,
    pub proof: Proof,
    /// `pair(code(proof), n)`: E⁺ returns 1 at every `s` above it.
    pub certificate: Code,
}

/// Try `p[n/x]` for `n = 0..=bound` and certify the first that evaluates to 1.
pub fn search_exists(defs: &DefinitionList, x: u32, p: &Term, bound: u64, fuel: u64) -> Option<Witness> {
    (0..=bound).find_map(|n| {
        let inst = p.subst(x, &numeral(n)).ok()?;
        let th = crate::kernel::certify::prove_true(defs, &inst, fuel).ok()?;
        let proof = th.to_proof();
        let certificate = pair(&encode_proof(&proof), &Integer::from(n));
        Some(Witness { n, proof, certificate })
    })
}

/// Substitute an assignment's values as numerals into every free variable.
pub fn close_with(t: &Term, values: &BTreeMap<u32, u64>) -> Result<Term, ReflectError> {
    let map = values.iter().map(|(&k, &v)| (k, numeral(v))).collect();
    t.subst_many(&map).map_err(|e| ReflectError::Template(e.to_string()))
}
