//! Self-referential sentences: none of them may reach a value, be certified,
//! or have their boolean typing derived.

use super::search::search;
use super::Harness;
use crate::eval::Assignment;
use crate::kernel::certify::eval_certify;
use crate::kernel::tactics::TacticError;
use crate::kernel::Judgment;
use crate::term::*;
use serde::Serialize;

pub const PARADOX_FUELS: [u64; 4] = [100, 1_000, 10_000, 100_000];
pub const SEARCH_DEPTH: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct ParadoxRow {
    pub name: String,
    /// `(fuel, outcome)` for each fuel tried.
    pub outcomes: Vec<(u64, String)>,
    pub certify: String,
    pub certify_not_value: bool,
    /// Kernel-confirmed candidates explored by the bool(p) search, when run.
    pub search_explored: Option<u64>,
    pub bool_derived: bool,
}

impl ParadoxRow {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|(_, o)| !o.starts_with("value")) && self.certify_not_value && !self.bool_derived
    }

    pub fn line(&self) -> String {
        let outs: Vec<String> = self.outcomes.iter().map(|(f, o)| format!("{f}:{o}")).collect();
        let mut s = format!("paradox:{} outcomes:{} certify:{}", self.name, outs.join(","), self.certify);
        if let Some(n) = self.search_explored {
            s.push_str(&format!(" bool-search:depth{SEARCH_DEPTH}:explored{n}:{}", if self.bool_derived { "derived" } else { "none" }));
        }
        s.push_str(if self.passed() { " verdict:pass" } else { " verdict:fail" });
        s
    }
}

/// The paradox sentences: liar, curry (P := false), truthteller, yablo(0..2).
pub fn cases(h: &Harness) -> Vec<(String, Term, bool)> {
    let d = &h.reflection.defs;
    let idx = |n: &str| d.index_of(n).expect("bundled paradox definitions");
    let mut out = vec![
        ("liar".to_string(), apply(idx("liar"), vec![]), true),
        ("curry".to_string(), apply(idx("curry"), vec![]), true),
        ("truthteller".to_string(), apply(idx("truthteller"), vec![]), false),
    ];
    for i in 0..3 {
        out.push((format!("yablo({i})"), apply(idx("yablo"), vec![numeral(i)]), false));
    }
    out
}

pub fn report(h: &Harness, fuels: &[u64]) -> Vec<ParadoxRow> {
    let defs = &h.reflection.defs;
    let top = fuels.iter().copied().max().unwrap_or(PARADOX_FUELS[3]);
    cases(h)
        .into_iter()
        .map(|(name, t, searched)| {
            let outcomes = fuels
                .iter()
                .map(|&f| {
                    let o = h
                        .reflection
                        .eval(&Assignment::new(), &t, f)
                        .map(|o| o.to_string())
                        .unwrap_or_else(|e| format!("error:{e}"));
                    (f, o)
                })
                .collect();
            let (certify, certify_not_value) = match eval_certify(defs, &t, top) {
                Ok(_) => ("certified".to_string(), false),
                Err(TacticError::NotValue(_)) => ("NotValue".to_string(), true),
                Err(e) => (format!("other:{e}"), false),
            };
            let (search_explored, bool_derived) = if searched {
                let goal = Judgment::closed(boolean(t.clone()));
                let (th, n) = search(defs, &goal, SEARCH_DEPTH, &[]);
                (Some(n), th.is_some())
            } else {
                (None, false)
            };
            ParadoxRow { name, outcomes, certify, certify_not_value, search_explored, bool_derived }
        })
        .collect()
}
