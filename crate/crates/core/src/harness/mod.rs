//! Randomised truth-preservation checks for the primitive rules, evaluator
//! conformance, and the paradox suite.

pub mod conformance;
pub mod gen;
pub mod paradox;
pub mod search;

#[cfg(test)]
mod tests;

use crate::corpus;
use crate::eval::{Assignment, EvalOutcome, Evaluator, Semantics};
use crate::kernel::tactics::Prover;
use crate::kernel::{conclude, Judgment, FIRST_QUANTIFIER_RULE, RULE_NAMES};
use crate::nat::Nat;
use crate::reflection::Reflection;
use crate::syntax::print;
use crate::term::{neg, or, apply, nat, var, Term};
use gen::{quantifier_corpus, Candidate, Gen, Instance, Names, Truth, BOUND};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Values tried for the bound variable of induction and quantifier instances.
pub const EIGEN_RANGE: u64 = 13;
/// Conclusions are evaluated with at least this much fuel.
pub const CONCLUSION_FLOOR: u64 = 100_000;
/// Added to the fuel of formulas with quantifiers, covering the oracle's
/// fixed walk over its candidate prefix.
pub const QUANTIFIER_ALLOWANCE: u64 = 8_192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Premise-true instances wanted per subject.
    pub cases: usize,
    /// Variables range over ⊥ and 0..domain.
    pub domain: u64,
    pub fuel: u64,
    pub seed: u64,
    #[serde(skip)]
    pub semantics: Semantics,
}

impl Default for Config {
    fn default() -> Self {
        Config { cases: 1000, domain: 5, fuel: 1000, seed: 0, semantics: Semantics::Standard }
    }
}

/// What the harness can test: a primitive rule or one of the broken canaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subject {
    Rule(usize),
    ClassicalImp,
    LiteralFold,
}

impl Subject {
    pub fn name(&self) -> String {
        match self {
            Subject::Rule(i) => RULE_NAMES[*i].to_string(),
            Subject::ClassicalImp => "canary.classical-impI".into(),
            Subject::LiteralFold => "canary.literal-defIE.fwd".into(),
        }
    }

    pub fn is_canary(&self) -> bool {
        !matches!(self, Subject::Rule(_))
    }

    fn code(&self) -> u64 {
        match self {
            Subject::Rule(i) => *i as u64,
            Subject::ClassicalImp => 1000,
            Subject::LiteralFold => 1001,
        }
    }

    pub fn rules() -> Vec<Subject> {
        (0..RULE_NAMES.len()).map(Subject::Rule).collect()
    }

    pub fn all() -> Vec<Subject> {
        let mut v = Subject::rules();
        v.push(Subject::ClassicalImp);
        v.push(Subject::LiteralFold);
        v
    }

    /// A rule name, a rule id, a canary name, `all`, `bga` or `canaries`.
    pub fn select(s: &str) -> Option<Vec<Subject>> {
        match s {
            "all" => return Some(Subject::all()),
            "bga" => return Some((0..FIRST_QUANTIFIER_RULE).map(Subject::Rule).collect()),
            "canaries" => return Some(vec![Subject::ClassicalImp, Subject::LiteralFold]),
            _ => {}
        }
        if let Ok(i) = s.parse::<usize>() {
            return (i < RULE_NAMES.len()).then(|| vec![Subject::Rule(i)]);
        }
        Subject::all().into_iter().find(|x| x.name() == s).map(|x| vec![x])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub attempt: u64,
    pub instance: String,
    pub assignment: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleReport {
    pub rule: String,
    pub id: Option<usize>,
    pub canary: bool,
    pub attempted: u64,
    /// Generated instances the rule refused to apply to.
    pub rejected: u64,
    pub premises_true: u64,
    /// Premise-true instances where some assignment satisfied the conclusion's hypotheses.
    pub nonvacuous: u64,
    pub counterexamples: u64,
    pub examples: Vec<Counterexample>,
}

impl RuleReport {
    /// Primitive rules pass with no counterexample, canaries with at least one.
    pub fn passed(&self) -> bool {
        if self.canary {
            self.counterexamples > 0
        } else {
            self.counterexamples == 0
        }
    }
}

impl fmt::Display for RuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule:{}", self.rule)?;
        if let Some(i) = self.id {
            write!(f, " id:{i}")?;
        }
        write!(
            f,
            " attempted:{} rejected:{} premises_true:{} nonvacuous:{} counterexamples:{} verdict:{}",
            self.attempted,
            self.rejected,
            self.premises_true,
            self.nonvacuous,
            self.counterexamples,
            if self.passed() { "pass" } else { "fail" }
        )?;
        if self.canary {
            write!(f, " expect:counterexample")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: Config,
    pub semantics: String,
    pub rules: Vec<RuleReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rules.iter().all(|r| r.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

enum Verdict {
    Rejected,
    PremiseFalse,
    Held { nonvacuous: bool },
    Broken { nonvacuous: bool, assignment: String, outcome: String },
}

/// The combined corpus under reflection, with the universal and empty
/// predicates of the quantifier corpus planted.
pub struct Harness {
    pub reflection: Reflection,
    pub names: Names,
}

impl Harness {
    pub fn new() -> Self {
        let reflection = Reflection::new(&corpus::combined()).expect("bundled corpus elaborates");
        let names = Names::resolve(&reflection.defs).expect("bundled corpus defines the generator names");
        let h = Harness { reflection, names };
        h.plant_corpus();
        h
    }

    fn plant_corpus(&self) {
        let pr = Prover::new(&self.reflection.defs);
        let g: BTreeSet<Term> = [nat(var(BOUND))].into();
        let h = pr.hyp(&g, nat(var(BOUND)));
        let proofs = [
            Ok(h.clone()),
            pr.s_neq_zero(&h),
            pr.s_eq_i(&h),
            pr.p_eq_i2(&h),
            pr.negneg_i(&h),
        ];
        for th in proofs {
            self.reflection.plant(&th.expect("planted universal proofs"));
        }
        for (p, t) in quantifier_corpus(&self.names) {
            if t == Truth::Universal {
                assert!(
                    self.reflection.oracle.is_planted(&Judgment::new(g.clone(), p.clone())),
                    "universal corpus entry {p:?} has no planted proof"
                );
            }
        }
    }

    fn show(&self, t: &Term) -> String {
        print(t, &self.reflection.defs)
    }

    fn show_judgment(&self, j: &Judgment) -> String {
        j.display(&self.reflection.defs).to_string()
    }

    fn outcome(&self, a: &Assignment, t: &Term, fuel: u64, semantics: Semantics) -> EvalOutcome {
        let r = if t.is_pure() {
            Evaluator::new(&self.reflection.defs)
                .with_semantics(semantics)
                .eval(a, t, fuel)
                .map_err(|e| e.to_string())
        } else {
            self.reflection
                .eval(a, t, fuel + QUANTIFIER_ALLOWANCE)
                .map_err(|e| e.to_string())
        };
        r.unwrap_or_else(|m| EvalOutcome::Stuck(crate::eval::StuckReason::NativeFailure(m)))
    }

    /// Value 1 within `fuel`. Tries `low` first; values persist under more fuel.
    fn holds(&self, a: &Assignment, t: &Term, low: u64, fuel: u64, semantics: Semantics) -> bool {
        let one = |f| matches!(self.outcome(a, t, f, semantics), EvalOutcome::Value(Nat::Small(1)));
        one(low.min(fuel)) || (low < fuel && one(fuel))
    }

    fn grid(&self, j: &Judgment, domain: u64) -> Vec<Assignment> {
        let vars: Vec<u32> = j.free_vars().into_iter().collect();
        let range = |v: u32| if v == BOUND { domain.max(EIGEN_RANGE) } else { domain };
        let mut out = vec![Assignment::new()];
        for v in vars {
            let mut next = Vec::with_capacity(out.len() * (range(v) as usize + 1));
            for a in &out {
                next.push(a.clone());
                for n in 0..range(v) {
                    next.push(a.clone().with(v, n));
                }
            }
            out = next;
        }
        out
    }

    fn show_assignment(&self, j: &Judgment, a: &Assignment) -> String {
        let parts: Vec<String> = j
            .free_vars()
            .into_iter()
            .map(|v| match a.get(v) {
                Some(n) => format!("{}={n}", self.show(&var(v))),
                None => format!("{}=⊥", self.show(&var(v))),
            })
            .collect();
        if parts.is_empty() {
            "closed".into()
        } else {
            parts.join(",")
        }
    }

    /// Every assignment that satisfies the hypotheses at `10 * fuel` satisfies
    /// the conclusion at `fuel`.
    fn premise_valid(&self, j: &Judgment, cfg: &Config) -> bool {
        let strong = cfg.fuel.saturating_mul(10);
        self.grid(j, cfg.domain).iter().all(|a| {
            !j.hyps.iter().all(|h| self.holds(a, h, cfg.fuel, strong, cfg.semantics))
                || self.holds(a, &j.concl, cfg.fuel, cfg.fuel, cfg.semantics)
        })
    }

    fn conclusion(&self, inst: &Instance) -> Option<Judgment> {
        let prem: Vec<&Judgment> = inst.premises.iter().collect();
        match &inst.rule {
            Candidate::Primitive(r) => conclude(&self.reflection.defs, r, &prem).ok(),
            Candidate::ClassicalImpI { p } => {
                let j = prem.first()?;
                let mut hyps = j.hyps.clone();
                hyps.remove(p).then_some(())?;
                Some(Judgment { hyps, concl: or(neg(p.clone()), j.concl.clone()) })
            }
            Candidate::LiteralFold { def, args, paths } => {
                let j = prem.first()?;
                let body = self.reflection.defs.get(*def)?.term()?;
                let map = args.iter().enumerate().map(|(i, a)| (i as u32, a.clone())).collect();
                let inst = body.subst_many(&map).ok()?;
                let mut c = j.concl.clone();
                for p in paths {
                    (c.at(p)? == &inst).then_some(())?;
                    c = c.replace_at(p, apply(*def, args.clone()))?;
                }
                Some(Judgment { hyps: j.hyps.clone(), concl: c })
            }
        }
    }

    fn judge(&self, inst: &Instance, cfg: &Config) -> Verdict {
        let Some(concl) = self.conclusion(inst) else {
            return Verdict::Rejected;
        };
        if !inst.premises.iter().all(|p| self.premise_valid(p, cfg)) {
            return Verdict::PremiseFalse;
        }
        let strong = cfg.fuel.saturating_mul(100).max(CONCLUSION_FLOOR);
        let mut nonvacuous = false;
        for a in self.grid(&concl, cfg.domain) {
            if !concl.hyps.iter().all(|h| self.holds(&a, h, cfg.fuel, cfg.fuel, cfg.semantics)) {
                continue;
            }
            nonvacuous = true;
            if self.holds(&a, &concl.concl, cfg.fuel, strong, cfg.semantics) {
                continue;
            }
            let out = self.outcome(&a, &concl.concl, strong, cfg.semantics);
            {
                return Verdict::Broken {
                    nonvacuous,
                    assignment: self.show_assignment(&concl, &a),
                    outcome: format!(
                        "hypotheses hold at fuel {}; conclusion gives {out} at fuel {strong}",
                        cfg.fuel
                    ),
                };
            }
        }
        Verdict::Held { nonvacuous }
    }

    fn render(&self, inst: &Instance, concl: Option<Judgment>) -> String {
        let prem: Vec<String> = inst.premises.iter().map(|j| self.show_judgment(j)).collect();
        let c = concl.map(|j| self.show_judgment(&j)).unwrap_or_else(|| "?".into());
        format!("{} / {}", prem.join(" ; "), c)
    }

    fn rng(cfg: &Config, subject: Subject, attempt: u64) -> ChaCha8Rng {
        let mut seed = [0u8; 32];
        seed[..8].copy_from_slice(&cfg.seed.to_le_bytes());
        seed[8..16].copy_from_slice(&subject.code().to_le_bytes());
        seed[16..24].copy_from_slice(&attempt.to_le_bytes());
        ChaCha8Rng::from_seed(seed)
    }

    /// The instance tried at `attempt`. Canary attempt 0 is the textbook failure.
    pub fn instance(&self, cfg: &Config, subject: Subject, attempt: u64) -> Instance {
        let mut rng = Self::rng(cfg, subject, attempt);
        let mut g = Gen { rng: &mut rng, n: self.names };
        match subject {
            Subject::Rule(i) => g.primitive(i, &self.reflection.defs),
            Subject::ClassicalImp => g.classical_imp(attempt == 0),
            Subject::LiteralFold => g.literal_fold(attempt == 0, &self.reflection.defs),
        }
    }

    pub fn run(&self, subject: Subject, cfg: &Config) -> RuleReport {
        const CHUNK: u64 = 32;
        let cap = (cfg.cases as u64).saturating_mul(40) + 100;
        let mut r = RuleReport {
            rule: subject.name(),
            id: match subject {
                Subject::Rule(i) => Some(i),
                _ => None,
            },
            canary: subject.is_canary(),
            attempted: 0,
            rejected: 0,
            premises_true: 0,
            nonvacuous: 0,
            counterexamples: 0,
            examples: vec![],
        };
        let mut start = 0;
        'outer: while start < cap && r.premises_true < cfg.cases as u64 {
            let end = (start + CHUNK).min(cap);
            let results: Vec<(u64, Instance, Verdict)> = (start..end)
                .into_par_iter()
                .map(|k| {
                    let inst = self.instance(cfg, subject, k);
                    let v = self.judge(&inst, cfg);
                    (k, inst, v)
                })
                .collect();
            for (k, inst, v) in results {
                if r.premises_true >= cfg.cases as u64 {
                    break 'outer;
                }
                r.attempted += 1;
                match v {
                    Verdict::Rejected => r.rejected += 1,
                    Verdict::PremiseFalse => {}
                    Verdict::Held { nonvacuous } => {
                        r.premises_true += 1;
                        r.nonvacuous += nonvacuous as u64;
                    }
                    Verdict::Broken { nonvacuous, assignment, outcome } => {
                        r.premises_true += 1;
                        r.nonvacuous += nonvacuous as u64;
                        r.counterexamples += 1;
                        if r.examples.len() < 3 {
                            let instance = self.render(&inst, self.conclusion(&inst));
                            r.examples.push(Counterexample { attempt: k, instance, assignment, outcome });
                        }
                    }
                }
            }
            start = end;
        }
        r
    }

    /// Quantifier rules are skipped under a non-standard semantics.
    pub fn run_all(&self, subjects: &[Subject], cfg: &Config) -> Report {
        let rules = subjects
            .iter()
            .filter(|s| {
                cfg.semantics == Semantics::Standard
                    || matches!(s, Subject::Rule(i) if *i < FIRST_QUANTIFIER_RULE)
            })
            .map(|&s| self.run(s, cfg))
            .collect();
        Report { config: *cfg, semantics: format!("{:?}", cfg.semantics), rules }
    }
}

impl Default for Harness {
    fn default() -> Self {
        Self::new()
    }
}
