//! Fuel monotonicity and determinism over random closed terms.

use super::gen::{Gen, Names};
use crate::defs::DefinitionList;
use crate::eval::{Assignment, EvalOutcome, Evaluator};
use crate::nat::Nat;
use crate::syntax::print;
use crate::term::Term;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const FUEL_SCHEDULE: [u64; 4] = [10, 100, 1_000, 10_000];

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConformanceReport {
    pub terms: u64,
    /// Terms with a value at the largest fuel.
    pub values: u64,
    pub violations: Vec<String>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_formula(t: &Term) -> bool {
    matches!(t, Term::Eq(..) | Term::Neg(_) | Term::Or(..))
}

fn check_one(defs: &DefinitionList, t: &Term) -> Result<bool, String> {
    let ev = Evaluator::new(defs);
    let a = Assignment::new();
    let mut first: Option<(u64, Nat)> = None;
    for &f in &FUEL_SCHEDULE {
        let (o, cost) = ev.eval_with_cost(&a, t, f).map_err(|e| e.to_string())?;
        let again = ev.eval_with_cost(&a, t, f).map_err(|e| e.to_string())?;
        if again != (o.clone(), cost) {
            return Err(format!("nondeterministic at fuel {f}: {o} then {}", again.0));
        }
        if let EvalOutcome::Value(n) = &o {
            if cost > f {
                return Err(format!("value at fuel {f} claims cost {cost}"));
            }
            if is_formula(t) && !(n.is_zero() || *n == Nat::ONE) {
                return Err(format!("formula evaluated to {n}"));
            }
            if let Some((f0, n0)) = &first {
                if n0 != n {
                    return Err(format!("value {n0} at fuel {f0} became {n} at fuel {f}"));
                }
            } else {
                first = Some((f, n.clone()));
                if ev.eval(&a, t, cost).map_err(|e| e.to_string())? != o {
                    return Err(format!("no value at its own cost {cost}"));
                }
            }
        } else if let Some((f0, n0)) = &first {
            return Err(format!("value {n0} at fuel {f0} lost at fuel {f}: {o}"));
        }
    }
    Ok(first.is_some())
}

/// Evaluate `count` random closed terms at every fuel in [`FUEL_SCHEDULE`].
pub fn check(defs: &DefinitionList, names: Names, count: u64, seed: u64) -> ConformanceReport {
    let results: Vec<(u64, Result<bool, String>, Term)> = (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ k);
            let depth = rng.gen_range(1..5);
            let numeric = rng.gen_bool(0.5);
            let mut g = Gen { rng: &mut rng, n: names };
            let t = if numeric { g.nat_term(depth, &[]) } else { g.formula(depth, &[]) };
            (k, check_one(defs, &t), t)
        })
        .collect();
    let mut r = ConformanceReport::default();
    for (k, res, t) in results {
        r.terms += 1;
        match res {
            Ok(v) => r.values += v as u64,
            Err(e) => r.violations.push(format!("term {k} `{}`: {e}", print(&t, defs))),
        }
    }
    r
}
