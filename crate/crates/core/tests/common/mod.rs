//! Generators and independent oracles shared by the integration suites and
//! the acceptance target.
#![allow(dead_code)]

use ga_core::harness::gen::{quantifier_corpus, Names, Truth, BOUND};
use ga_core::kernel::certify::{self, Certifier};
use ga_core::kernel::script::check_script;
use ga_core::kernel::tactics::Prover;
use ga_core::kernel::{catalog, check_proof, Judgment, Proof, RuleApp, Step, Theorem, FIRST_QUANTIFIER_RULE};
use ga_core::reflection::*;
use ga_core::term::*;
use ga_core::{corpus, parse, Assignment, DefinitionList, EvalOutcome, Nat};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64, k: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn value(o: &EvalOutcome) -> Option<u64> {
    o.value().and_then(Nat::to_u64)
}

// -- random syntax ------------------------------------------------------------

pub fn term(r: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..3) {
            0 => Term::Zero,
            1 => var(r.gen_range(0..6)),
            _ => numeral(r.gen_range(0..5)),
        };
    }
    let d = depth - 1;
    match r.gen_range(0..9) {
        0 => succ(term(r, d)),
        1 => pred(term(r, d)),
        2 => neg(term(r, d)),
        3 => or(term(r, d), term(r, d)),
        4 => eq(term(r, d), term(r, d)),
        5 => cond(term(r, d), term(r, d), term(r, d)),
        6 => {
            let (f, k) = (r.gen_range(0..8), r.gen_range(0..4));
            let args = (0..k).map(|_| term(r, d)).collect();
            apply(f, args)
        }
        7 => forall(r.gen_range(0..6), term(r, d)),
        _ => exists(r.gen_range(0..6), term(r, d)),
    }
}

pub fn judgment(r: &mut impl Rng) -> Judgment {
    let k = r.gen_range(0..4);
    let hyps: Vec<Term> = (0..k).map(|_| term(r, 3)).collect();
    Judgment::new(hyps, term(r, 4))
}

fn paths(r: &mut impl Rng) -> Vec<Path> {
    (0..r.gen_range(0..3)).map(|_| (0..r.gen_range(0..4)).map(|_| r.gen_range(0..3)).collect()).collect()
}

fn terms(r: &mut impl Rng) -> Vec<Term> {
    (0..r.gen_range(0..3)).map(|_| term(r, 2)).collect()
}

pub fn rule(r: &mut impl Rng) -> RuleApp {
    use RuleApp::*;
    let x = r.gen_range(0..6);
    match r.gen_range(0..36) {
        0 => DefFold { def: r.gen_range(0..8), args: terms(r), paths: paths(r) },
        1 => DefUnfold { def: r.gen_range(0..8), paths: paths(r) },
        2 => EqSym,
        3 => EqSubst { paths: paths(r) },
        4 => NegNegI,
        5 => NegNegE,
        6 => NegE { q: term(r, 3) },
        7 => OrI1 { q: term(r, 3) },
        8 => OrI2 { p: term(r, 3) },
        9 => OrI3,
        10 => OrE1,
        11 => OrE2,
        12 => OrE3,
        13 => ZeroI { ctx: terms(r) },
        14 => SEqI,
        15 => SEqE,
        16 => SNeqI,
        17 => SNeqE,
        18 => SNeqZeroI,
        19 => PEqI2,
        20 => PTI,
        21 => PTE,
        22 => CondI1 { b: term(r, 3) },
        23 => CondI2 { a: term(r, 3) },
        24 => Ind { p: term(r, 3), x },
        25 => Hyp { ctx: terms(r), p: term(r, 3) },
        26 => Weaken { p: term(r, 3) },
        27 => ForallI1 { x },
        28 => ForallE1,
        29 => ForallI2 { x, p: term(r, 3) },
        30 => ForallE2,
        31 => ExistsI1 { x, p: term(r, 3) },
        32 => ExistsE1,
        33 => ExistsI2 { x },
        34 => ExistsE2,
        _ => ForallInd { x, p: term(r, 3) },
    }
}

pub fn proof(r: &mut impl Rng) -> Proof {
    let n = r.gen_range(1..5);
    let steps = (0..n)
        .map(|i| {
            let premises = if i == 0 { vec![] } else { (0..r.gen_range(0..4)).map(|_| r.gen_range(0..i)).collect() };
            Step { judgment: judgment(r), rule: rule(r), premises }
        })
        .collect();
    Proof { steps }
}

// -- pairing and round trips ------------------------------------------------------

/// `pair(unpair(n)) = n` for every n in range, and the inverse on every
/// pair it produces; the pair formula is recomputed here independently.
pub fn pairing_bijective(upto: u64) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for n in 0..=upto {
        let (x, y) = unpair(&Code::from(n));
        let (x, y) = (x.to_u64().ok_or("left too big")?, y.to_u64().ok_or("right too big")?);
        let direct = (x + y) * (x + y + 1) / 2 + y;
        if direct != n {
            return Err(format!("unpair({n}) = ({x}, {y}) but that pair codes {direct}"));
        }
        if pair(&Code::from(x), &Code::from(y)) != n {
            return Err(format!("pair({x}, {y}) != {n}"));
        }
        if !seen.insert((x, y)) {
            return Err(format!("({x}, {y}) decoded twice"));
        }
    }
    Ok(())
}

/// Round-trips `count` random terms, judgments and proofs.
pub fn round_trips(count: u64, seed: u64) -> Result<(), String> {
    for k in 0..count {
        let mut r = rng(seed, k);
        let t = term(&mut r, 5);
        if decode_term(&encode_term(&t)).as_ref() != Ok(&t) {
            return Err(format!("term round trip failed: {t:?}"));
        }
        let j = judgment(&mut r);
        if decode_judgment(&encode_judgment(&j)).as_ref() != Ok(&j) {
            return Err(format!("judgment round trip failed: {j:?}"));
        }
        let p = proof(&mut r);
        if decode_proof(&encode_proof(&p)).as_ref() != Ok(&p) {
            return Err(format!("proof round trip failed: {p:?}"));
        }
    }
    Ok(())
}

// -- the proof checker C ----------------------------------------------------------

/// Kernel proofs of quantifier-free judgments: termination scripts, the
/// derived-rule catalog and evaluation certificates.
pub fn proof_corpus(defs: &DefinitionList) -> Vec<(String, Proof)> {
    let mut out = vec![];
    for (name, script) in corpus::TERMINATION_SCRIPTS {
        for (_, th) in check_script(defs, script).expect("bundled scripts check") {
            out.push((format!("{name}_total"), th.to_proof()));
        }
    }
    for e in catalog::catalog(defs) {
        if let Ok(th) = &e.result {
            out.push((format!("catalog {}", e.rule), th.to_proof()));
        }
    }
    for src in ["add(2, 3)", "mult(2, 2)", "sub(3, 1)", "P(S(S(0)))", "gt(3, 1) ? 1 : 0"] {
        let t = parse(src, defs).expect("probe parses");
        let th = certify::eval_certify(defs, &t, 100_000).unwrap_or_else(|e| panic!("{src}: {e}"));
        out.push((format!("certify {src}"), th.to_proof()));
    }
    for (src, truth) in [("gt(4, 2)", true), ("add(1, 1) = 1", false), ("~(S(0) = 0)", true)] {
        let t = parse(src, defs).expect("probe parses");
        let th = if truth { certify::prove_true(defs, &t, 100_000) } else { certify::prove_false(defs, &t, 100_000) };
        out.push((format!("decide {src}"), th.expect("probe decides").to_proof()));
    }
    out
}

/// C computed from the kernel: decode, refuse quantifier rules, check, and
/// compare the last step with the claim.
pub fn c_oracle(defs: &DefinitionList, n: &Code, m: &Code) -> bool {
    let (Ok(pf), Ok(claim)) = (decode_proof(n), decode_judgment(m)) else { return false };
    if pf.steps.iter().any(|s| s.rule.id() >= FIRST_QUANTIFIER_RULE) {
        return false;
    }
    match check_proof(defs, &pf) {
        Ok(ths) => ths.last().map(|t| t.judgment()) == Some(&claim),
        Err(_) => false,
    }
}

fn mutate_judgment(r: &mut impl Rng, j: &Judgment) -> Judgment {
    let mut hyps = j.hyps.clone();
    let mut concl = j.concl.clone();
    match r.gen_range(0..4) {
        0 => concl = neg(concl),
        1 => {
            hyps.insert(term(r, 2));
        }
        2 if !hyps.is_empty() => {
            let h = hyps.iter().nth(r.gen_range(0..hyps.len())).cloned().expect("index in range");
            hyps.remove(&h);
        }
        _ => concl = replace_leaf(r, &concl),
    }
    Judgment::new(hyps, concl)
}

/// Replace one random subterm by a leaf.
fn replace_leaf(r: &mut impl Rng, t: &Term) -> Term {
    let leaf = if r.gen_bool(0.5) { Term::Zero } else { var(r.gen_range(0..6)) };
    let mut path = vec![];
    let mut cur = t;
    while r.gen_bool(0.6) {
        let cs = cur.children();
        if cs.is_empty() {
            break;
        }
        let i = r.gen_range(0..cs.len());
        path.push(i);
        cur = cs[i];
    }
    t.replace_at(&path, leaf).unwrap_or_else(|| succ(t.clone()))
}

/// A mutant (proof code, claim code) of a valid proof.
pub fn mutant(r: &mut impl Rng, pf: &Proof) -> (Code, Code, &'static str) {
    let claim = pf.claim().expect("non-empty proof").clone();
    let mut p = pf.clone();
    let n = p.steps.len();
    let kind = match r.gen_range(0..7) {
        0 => {
            let k = r.gen_range(0..n);
            p.steps[k].judgment = mutate_judgment(r, &p.steps[k].judgment);
            "step judgment"
        }
        1 if n > 1 => {
            let k = r.gen_range(0..n - 1);
            p.steps.remove(k);
            for s in &mut p.steps[k..] {
                for i in &mut s.premises {
                    if *i > k {
                        *i -= 1;
                    } else if *i == k {
                        *i = k.saturating_sub(1);
                    }
                }
            }
            "deleted step"
        }
        2 => {
            let k = r.gen_range(0..n);
            let s = &mut p.steps[k];
            if s.premises.len() >= 2 {
                s.premises.swap(0, 1);
            } else if k > 0 {
                s.premises.push(r.gen_range(0..k));
            } else {
                s.premises.push(0);
            }
            "premises"
        }
        3 => {
            let k = r.gen_range(0..n);
            p.steps[k].rule = rule(r);
            "rule"
        }
        4 => {
            let c = mutate_judgment(r, &claim);
            return (encode_proof(&p), encode_judgment(&c), "claim");
        }
        5 => {
            let d = r.gen_range(1u32..4);
            return (encode_proof(&p) + d, encode_judgment(&claim), "proof code offset");
        }
        _ => {
            let k = r.gen_range(0..n);
            p.steps.truncate(k + 1);
            "truncated"
        }
    };
    (encode_proof(&p), encode_judgment(&claim), kind)
}

pub struct CReport {
    pub valid: usize,
    pub mutants: usize,
    pub mutants_accepted: usize,
    pub disagreements: Vec<String>,
}

pub fn c_agreement(defs: &DefinitionList, mutants: usize, seed: u64) -> CReport {
    let corpus = proof_corpus(defs);
    let mut rep = CReport { valid: 0, mutants: 0, mutants_accepted: 0, disagreements: vec![] };
    for (name, pf) in &corpus {
        let (n, m) = (encode_proof(pf), encode_judgment(pf.claim().expect("non-empty")));
        let (c, o) = (proof_check_c(defs, &n, &m), c_oracle(defs, &n, &m));
        if !c || !o {
            rep.disagreements.push(format!("{name}: C={} oracle={}", c as u8, o as u8));
        }
        rep.valid += 1;
    }
    // Mutate the shorter proofs more often; the termination proofs are large.
    for k in 0..mutants as u64 {
        let mut r = rng(seed, k);
        let (name, pf) = &corpus[r.gen_range(0..corpus.len())];
        let (n, m, kind) = mutant(&mut r, pf);
        let (c, o) = (proof_check_c(defs, &n, &m), c_oracle(defs, &n, &m));
        rep.mutants += 1;
        rep.mutants_accepted += o as usize;
        if c != o {
            rep.disagreements.push(format!("mutant {k} of {name} ({kind}): C={} oracle={}", c as u8, o as u8));
        }
    }
    rep
}

// -- the bounded quantifiers ----------------------------------------------------------

pub struct QuantifierProofs {
    /// `nat(x) ⊢ p` for universal entries, `nat(x) ⊢ ¬p` for empty ones.
    pub open: Vec<Theorem>,
}

/// The same open facts the harness plants, rebuilt here from tactics.
pub fn open_facts(defs: &DefinitionList) -> Vec<Theorem> {
    let pr = Prover::new(defs);
    let g: BTreeSet<Term> = [nat(var(BOUND))].into();
    let h = pr.hyp(&g, nat(var(BOUND)));
    vec![
        h.clone(),
        pr.s_neq_zero(&h).expect("S != 0"),
        pr.s_eq_i(&h).expect("nat(S x)"),
        pr.p_eq_i2(&h).expect("P(S x) = x"),
        pr.negneg_i(&h).expect("~~(x = x)"),
    ]
}

fn open_fact(facts: &[Theorem], concl: &Term) -> Option<Theorem> {
    facts.iter().find(|t| t.concl() == concl).cloned()
}

/// Kernel verdicts for `exists x. p` and `forall x. p` (true, false or
/// underived), with the theorems.
pub struct Verdicts {
    pub exists: Option<(bool, Theorem)>,
    pub forall: Option<(bool, Theorem)>,
}

pub fn kernel_verdicts(defs: &DefinitionList, p: &Term, facts: &[Theorem]) -> Verdicts {
    let pr = Prover::new(defs);
    let c = Certifier::new(defs, 100_000);
    let x = BOUND;
    let at = |n: u64| p.subst(x, &numeral(n)).expect("closed instance");
    let witness = (0..13).find_map(|n| Some((n, c.prove_true(&at(n)).ok()?)));
    let counter = (0..13).find_map(|n| Some((n, c.prove_false(&at(n)).ok()?)));
    let exists = if let Some((n, th)) = &witness {
        pr.exists_i1(x, p.clone(), &c.nat_numeral(*n), th).ok().map(|t| (true, t))
    } else {
        open_fact(facts, &neg(p.clone())).and_then(|th| pr.exists_i2(x, &th).ok()).map(|t| (false, t))
    };
    let forall = if let Some(th) = open_fact(facts, p) {
        pr.forall_i1(x, &th).ok().map(|t| (true, t))
    } else if let Some((n, th)) = &counter {
        pr.forall_i2(x, p.clone(), &c.nat_numeral(*n), th).ok().map(|t| (false, t))
    } else {
        None
    };
    Verdicts { exists, forall }
}

pub struct DualRow {
    pub name: String,
    pub derived: Vec<&'static str>,
    pub failures: Vec<String>,
}

/// Derive every applicable De Morgan dual from the kernel verdicts, and
/// back again, re-checking each result from its primitive proof.
pub fn duals(defs: &DefinitionList, p: &Term, v: &Verdicts) -> DualRow {
    let pr = Prover::new(defs);
    let x = BOUND;
    let mut row = DualRow { name: print(p, defs), derived: vec![], failures: vec![] };
    let mut step = |name: &'static str, th: Result<Theorem, _>, want: Term| -> Option<Theorem> {
        match th {
            Ok(th) if th.concl() == &want && th.hyps().is_empty() && check_proof(defs, &th.to_proof()).is_ok() => {
                row.derived.push(name);
                Some(th)
            }
            Ok(th) => {
                row.failures.push(format!("{name}: got {}", th.judgment().display(defs)));
                None
            }
            Err(e) => {
                row.failures.push(format!("{name}: {e}"));
                None
            }
        }
    };
    let np = neg(p.clone());
    match &v.forall {
        Some((true, all)) => {
            if let Some(t) = step("forall->~exists~", pr.forall_to_not_exists_not(all), neg(exists(x, np.clone()))) {
                step("~exists~->forall", pr.not_exists_not_to_forall(&t), forall(x, p.clone()));
            }
        }
        Some((false, nall)) => {
            if let Some(t) = step("~forall->exists~", pr.not_forall_to_exists_not(nall), exists(x, np.clone())) {
                step("exists~->~forall", pr.exists_not_to_not_forall(&t), neg(forall(x, p.clone())));
            }
        }
        None => {}
    }
    match &v.exists {
        Some((true, ex)) => {
            if let Some(t) = step("exists->~forall~", pr.exists_to_not_forall_not(ex), neg(forall(x, np.clone()))) {
                step("~forall~->exists", pr.not_forall_not_to_exists(&t), exists(x, p.clone()));
            }
        }
        Some((false, nex)) => {
            if let Some(t) = step("~exists->forall~", pr.not_exists_to_forall_not(nex), forall(x, np.clone())) {
                step("forall~->~exists", pr.forall_not_to_not_exists(&t), neg(exists(x, p.clone())));
            }
        }
        None => {}
    }
    row
}

pub struct Correspondence {
    pub name: String,
    pub truth: Truth,
    pub kernel_exists: Option<bool>,
    pub kernel_forall: Option<bool>,
    pub reflect_exists: Option<u64>,
    pub reflect_forall: Option<u64>,
}

impl Correspondence {
    /// Every kernel verdict is matched exactly by reflective evaluation.
    pub fn agrees(&self) -> bool {
        let m = |k: Option<bool>, r: Option<u64>| k.is_none_or(|b| r == Some(b as u64));
        self.kernel_exists.is_some() && m(self.kernel_exists, self.reflect_exists) && m(self.kernel_forall, self.reflect_forall)
    }
}

pub fn correspondence(r: &Reflection, names: &Names, fuel: u64) -> (Vec<Correspondence>, Vec<DualRow>) {
    let facts = open_facts(&r.defs);
    let mut rows = vec![];
    let mut dual_rows = vec![];
    for (p, truth) in quantifier_corpus(names) {
        let v = kernel_verdicts(&r.defs, &p, &facts);
        let ev = |t: Term| r.eval(&Assignment::new(), &t, fuel).ok().as_ref().and_then(value);
        rows.push(Correspondence {
            name: print(&p, &r.defs),
            truth,
            kernel_exists: v.exists.as_ref().map(|(b, _)| *b),
            kernel_forall: v.forall.as_ref().map(|(b, _)| *b),
            reflect_exists: ev(exists(BOUND, p.clone())),
            reflect_forall: ev(forall(BOUND, p.clone())),
        });
        dual_rows.push(duals(&r.defs, &p, &v));
    }
    (rows, dual_rows)
}

pub fn print(t: &Term, defs: &DefinitionList) -> String {
    ga_core::print(t, defs)
}

/// E⁺ over the quantifier corpus: value 0 at s = 0, never drops from 1 to
/// 0 as s grows, and never 1 together with A⁺ of the negation.
pub fn eplus_laws(r: &Reflection, names: &Names, points: &[u64], fuel: u64) -> Result<usize, String> {
    let v = encode_term(&var(BOUND));
    let mut checked = 0;
    for (p, _) in quantifier_corpus(names) {
        let (pc, npc) = (encode_term(&p), encode_term(&neg(p.clone())));
        let base = r.eplus(&v, &pc, &Code::new(), fuel);
        if value(&base) != Some(0) {
            return Err(format!("E+({}, 0) = {base}", print(&p, &r.defs)));
        }
        let mut last = Some(0);
        for &s in points {
            let s = Code::from(s);
            let e = value(&r.eplus(&v, &pc, &s, fuel));
            let a = value(&r.aplus(&v, &npc, &s, fuel));
            if last == Some(1) && e != Some(1) {
                return Err(format!("E+({}) dropped from 1 at s = {s}", print(&p, &r.defs)));
            }
            if e == Some(1) && a == Some(1) {
                return Err(format!("E+({p:?}) and A+(~p) both 1 at s = {s}"));
            }
            last = e.or(last);
            checked += 1;
        }
        if let Some(w) = search_exists(&r.defs, BOUND, &p, 12, 100_000) {
            let s = w.certificate.clone() + 1u32;
            if value(&r.eplus(&v, &pc, &s, fuel)) != Some(1) {
                return Err(format!("E+({}) is not 1 past its certificate", print(&p, &r.defs)));
            }
            if value(&r.aplus(&v, &npc, &s, fuel)) == Some(1) {
                return Err(format!("A+(~{}) is 1 past the E+ certificate", print(&p, &r.defs)));
            }
            checked += 2;
        }
    }
    Ok(checked)
}

/// E(⌜x⌝, ⌜x = S(0)⌝, 0) and E(⌜x⌝, ⌜S(x) = 0⌝, 0) through the definitional
/// bodies; the second needs the planted proof of nat(x) ⊢ ¬(S(x) = 0).
pub fn planted_e(fuel: u64) -> Result<(EvalOutcome, EvalOutcome), String> {
    let defs = corpus::arith();
    let r = Reflection::new(&defs).map_err(|e| e.to_string())?;
    let x = var(0);
    let pr = Prover::new(&r.defs);
    let h = pr.hyp(&[nat(x.clone())].into(), nat(x.clone()));
    r.plant(&pr.s_neq_zero(&h).map_err(|e| e.to_string())?);
    let v = encode_term(&x);
    let one = r.two_sided(false, &v, &encode_term(&eq(x.clone(), numeral(1))), &Code::new(), fuel);
    let zero = r.two_sided(false, &v, &encode_term(&eq(succ(x.clone()), Term::Zero)), &Code::new(), fuel);
    Ok((one, zero))
}

// -- closed arithmetic and a reference interpreter ----------------------------------

/// A closed term over the total definitions of the arithmetic corpus.
pub fn closed_term(r: &mut impl Rng, defs: &DefinitionList, depth: u32) -> Term {
    if depth == 0 || r.gen_bool(0.25) {
        return numeral(r.gen_range(0..5));
    }
    let d = depth - 1;
    let f = |n: &str| defs.index_of(n).expect("arithmetic corpus");
    match r.gen_range(0..11) {
        0 => succ(closed_term(r, defs, d)),
        1 => pred(closed_term(r, defs, d)),
        2 => neg(closed_term(r, defs, d)),
        3 => or(closed_term(r, defs, d), closed_term(r, defs, d)),
        4 => eq(closed_term(r, defs, d), closed_term(r, defs, d)),
        5 => cond(closed_term(r, defs, d), closed_term(r, defs, d), closed_term(r, defs, d)),
        6 => apply(f("add"), vec![closed_term(r, defs, d), closed_term(r, defs, d)]),
        7 => apply(f("sub"), vec![closed_term(r, defs, d), closed_term(r, defs, d)]),
        8 => apply(f("mult"), vec![numeral(r.gen_range(0..4)), numeral(r.gen_range(0..4))]),
        9 => apply(f("even"), vec![closed_term(r, defs, d)]),
        _ => apply(f("gt"), vec![closed_term(r, defs, d), closed_term(r, defs, d)]),
    }
}

/// Call-by-value interpretation without fuel. `None` means no rule applies.
/// Only meant for terms over total definitions.
pub fn reference(defs: &DefinitionList, env: &[u64], t: &Term) -> Option<u64> {
    let ev = |t: &Term| reference(defs, env, t);
    let boolean = |v: u64| (v <= 1).then_some(v);
    match t {
        Term::Zero => Some(0),
        Term::Var(i) => env.get(*i as usize).copied(),
        Term::Succ(a) => Some(ev(a)? + 1),
        Term::Pred(a) => Some(ev(a)?.saturating_sub(1)),
        Term::Neg(p) => Some(1 - boolean(ev(p)?)?),
        Term::Or(p, q) => {
            let (a, b) = (ev(p), ev(q));
            match (a, b) {
                (Some(1), _) | (_, Some(1)) => Some(1),
                (Some(0), Some(0)) => Some(0),
                _ => None,
            }
        }
        Term::Eq(a, b) => Some((ev(a)? == ev(b)?) as u64),
        Term::Cond(c, a, b) => match ev(c)? {
            1 => ev(a),
            0 => ev(b),
            _ => None,
        },
        Term::Apply(f, args) => {
            let vals = args.iter().map(ev).collect::<Option<Vec<_>>>()?;
            reference(defs, &vals, defs.get(*f)?.term()?)
        }
        Term::Forall(..) | Term::Exists(..) => None,
    }
}
