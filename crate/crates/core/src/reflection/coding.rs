//! Gödel codes for terms, judgments and proofs.
//!
//! A term is `pair(tag, payload)`; argument lists use the cons code
//! (`nil = 0`, `cons(h, t) = pair(h, t) + 1`). Every other list (hypotheses,
//! premises, steps, paths, contexts) uses [`seq_code`], a self-delimiting
//! bit packing, since a cons code squares in size with each element.

use super::pairing::{pair, unpair};
use crate::kernel::{Judgment, Proof, RuleApp, Step};
use crate::term::{Path, Term};
use rug::Integer;
use std::collections::BTreeSet;
use thiserror::Error;

pub type Code = Integer;

/// Longest sequence [`seq_decode`] accepts.
pub const MAX_SEQ: usize = 1 << 20;

pub const TAG_ZERO: u32 = 0;
pub const TAG_VAR: u32 = 1;
pub const TAG_SUCC: u32 = 2;
pub const TAG_PRED: u32 = 3;
pub const TAG_NEG: u32 = 4;
pub const TAG_OR: u32 = 5;
pub const TAG_EQ: u32 = 6;
pub const TAG_COND: u32 = 7;
pub const TAG_APPLY: u32 = 8;
pub const TAG_FORALL: u32 = 9;
pub const TAG_EXISTS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a well-formed {what} code")]
pub struct NotWellFormed {
    pub what: &'static str,
}

type D<T> = Result<T, NotWellFormed>;

fn bad<T>(what: &'static str) -> D<T> {
    Err(NotWellFormed { what })
}

const RED_ZONE: usize = 64 * 1024;
const STACK_CHUNK: usize = 4 * 1024 * 1024;

fn tagged(tag: u32, payload: &Integer) -> Integer {
    pair(&Integer::from(tag), payload)
}

pub fn encode_term(t: &Term) -> Code {
    stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || match t {
        Term::Zero => Integer::new(),
        Term::Var(i) => tagged(TAG_VAR, &Integer::from(*i)),
        Term::Succ(a) => tagged(TAG_SUCC, &encode_term(a)),
        Term::Pred(a) => tagged(TAG_PRED, &encode_term(a)),
        Term::Neg(a) => tagged(TAG_NEG, &encode_term(a)),
        Term::Or(l, r) => tagged(TAG_OR, &pair(&encode_term(l), &encode_term(r))),
        Term::Eq(l, r) => tagged(TAG_EQ, &pair(&encode_term(l), &encode_term(r))),
        Term::Cond(c, a, b) => tagged(
            TAG_COND,
            &pair(&encode_term(c), &pair(&encode_term(a), &encode_term(b))),
        ),
        Term::Apply(f, args) => {
            let codes: Vec<Integer> = args.iter().map(encode_term).collect();
            tagged(TAG_APPLY, &pair(&Integer::from(*f), &cons_code(&codes)))
        }
        Term::Forall(x, b) => tagged(TAG_FORALL, &pair(&Integer::from(*x), &encode_term(b))),
        Term::Exists(x, b) => tagged(TAG_EXISTS, &pair(&Integer::from(*x), &encode_term(b))),
    })
}

pub fn decode_term(c: &Code) -> D<Term> {
    if *c < 0 {
        return bad("term");
    }
    stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || {
        let (tag, payload) = unpair(c);
        let Some(tag) = tag.to_u32() else { return bad("term") };
        let boxed = |p: &Integer| decode_term(p).map(Box::new);
        Ok(match tag {
            TAG_ZERO if payload == 0 => Term::Zero,
            TAG_VAR => Term::Var(small(&payload, "term")?),
            TAG_SUCC => Term::Succ(boxed(&payload)?),
            TAG_PRED => Term::Pred(boxed(&payload)?),
            TAG_NEG => Term::Neg(boxed(&payload)?),
            TAG_OR | TAG_EQ => {
                let (l, r) = unpair(&payload);
                let (l, r) = (boxed(&l)?, boxed(&r)?);
                if tag == TAG_OR {
                    Term::Or(l, r)
                } else {
                    Term::Eq(l, r)
                }
            }
            TAG_COND => {
                let (c, rest) = unpair(&payload);
                let (a, b) = unpair(&rest);
                Term::Cond(boxed(&c)?, boxed(&a)?, boxed(&b)?)
            }
            TAG_APPLY => {
                let (f, args) = unpair(&payload);
                let f = f.to_usize().ok_or(NotWellFormed { what: "term" })?;
                let args = cons_decode(&args)?.iter().map(decode_term).collect::<D<Vec<_>>>()?;
                Term::Apply(f, args)
            }
            TAG_FORALL | TAG_EXISTS => {
                let (x, b) = unpair(&payload);
                let x = small(&x, "term")?;
                if tag == TAG_FORALL {
                    Term::Forall(x, boxed(&b)?)
                } else {
                    Term::Exists(x, boxed(&b)?)
                }
            }
            _ => return bad("term"),
        })
    })
}

fn small(c: &Integer, what: &'static str) -> D<u32> {
    c.to_u32().ok_or(NotWellFormed { what })
}

fn index(c: &Integer, what: &'static str) -> D<usize> {
    c.to_usize().ok_or(NotWellFormed { what })
}

pub fn cons_code(items: &[Code]) -> Code {
    items.iter().rev().fold(Integer::new(), |tail, h| pair(h, &tail) + 1u32)
}

pub fn cons_decode(c: &Code) -> D<Vec<Code>> {
    let mut out = Vec::new();
    let mut cur = c.clone();
    while cur != 0 {
        if out.len() >= MAX_SEQ {
            return bad("list");
        }
        let (h, t) = unpair(&(cur - 1u32));
        out.push(h);
        cur = t;
    }
    Ok(out)
}

/// `seq([]) = 0`. Otherwise, from the low bit up: for each item the Elias
/// gamma code of `bitlen + 1`, then the item's bits; a final 1 bit closes the
/// sequence. Size is linear in the items, where any tree of pairs doubles
/// per level.
pub fn seq_code(items: &[Code]) -> Code {
    let mut out = Integer::new();
    if items.is_empty() {
        return out;
    }
    let mut pos: u32 = 0;
    for c in items {
        let len = c.significant_bits();
        let g = u64::from(len) + 1;
        let k = 63 - g.leading_zeros();
        pos += k;
        for b in (0..=k).rev() {
            if (g >> b) & 1 == 1 {
                out.set_bit(pos, true);
            }
            pos += 1;
        }
        out |= Integer::from(c << pos);
        pos += len;
    }
    out.set_bit(pos, true);
    out
}

/// Inverse of [`seq_code`]; anything it would not produce is rejected.
pub fn seq_decode(c: &Code) -> D<Vec<Code>> {
    if *c < 0 {
        return bad("sequence");
    }
    let mut out = Vec::new();
    if *c == 0 {
        return Ok(out);
    }
    let end = c.significant_bits() - 1;
    let mut pos = 0u32;
    while pos < end {
        if out.len() >= MAX_SEQ {
            return bad("sequence");
        }
        let mut k = 0u32;
        while pos < end && !c.get_bit(pos) {
            k += 1;
            pos += 1;
        }
        if k > 32 || pos + k >= end {
            return bad("sequence");
        }
        let mut g = 0u64;
        for _ in 0..=k {
            g = (g << 1) | c.get_bit(pos) as u64;
            pos += 1;
        }
        let len = match u32::try_from(g - 1) {
            Ok(len) if len <= end - pos => len,
            _ => return bad("sequence"),
        };
        let item = Integer::from(c >> pos).keep_bits(len);
        if len > 0 && !item.get_bit(len - 1) {
            return bad("sequence");
        }
        out.push(item);
        pos += len;
    }
    if out.is_empty() {
        return bad("sequence");
    }
    Ok(out)
}

pub fn encode_judgment(j: &Judgment) -> Code {
    let hyps: Vec<Code> = j.hyps.iter().map(encode_term).collect();
    pair(&seq_code(&hyps), &encode_term(&j.concl))
}

/// Hypotheses must appear in strictly increasing term order.
pub fn decode_judgment(c: &Code) -> D<Judgment> {
    let (h, concl) = unpair(c);
    let hyps = seq_decode(&h)?.iter().map(decode_term).collect::<D<Vec<_>>>()?;
    if hyps.windows(2).any(|w| w[0] >= w[1]) {
        return bad("judgment");
    }
    Ok(Judgment { hyps: hyps.into_iter().collect::<BTreeSet<_>>(), concl: decode_term(&concl)? })
}

fn encode_path(p: &Path) -> Code {
    let items: Vec<Code> = p.iter().map(|&i| Integer::from(i)).collect();
    seq_code(&items)
}

fn encode_paths(ps: &[Path]) -> Code {
    let items: Vec<Code> = ps.iter().map(encode_path).collect();
    seq_code(&items)
}

fn decode_paths(c: &Code) -> D<Vec<Path>> {
    seq_decode(c)?
        .iter()
        .map(|p| seq_decode(p)?.iter().map(|i| index(i, "path")).collect())
        .collect()
}

fn encode_terms(ts: &[Term]) -> Code {
    let items: Vec<Code> = ts.iter().map(encode_term).collect();
    seq_code(&items)
}

fn decode_terms(c: &Code) -> D<Vec<Term>> {
    seq_decode(c)?.iter().map(decode_term).collect()
}

/// Rule id and instantiation code.
pub fn encode_rule(r: &RuleApp) -> (usize, Code) {
    use RuleApp::*;
    let inst = match r {
        DefFold { def, args, paths } => {
            pair(&Integer::from(*def), &pair(&encode_terms(args), &encode_paths(paths)))
        }
        DefUnfold { def, paths } => pair(&Integer::from(*def), &encode_paths(paths)),
        EqSubst { paths } => encode_paths(paths),
        NegE { q: t } | OrI1 { q: t } | OrI2 { p: t } | CondI1 { b: t } | CondI2 { a: t }
        | Weaken { p: t } => encode_term(t),
        ZeroI { ctx } => encode_terms(ctx),
        Hyp { ctx, p } => pair(&encode_terms(ctx), &encode_term(p)),
        Ind { p, x } | ForallI2 { x, p } | ExistsI1 { x, p } | ForallInd { x, p } => {
            pair(&encode_term(p), &Integer::from(*x))
        }
        ForallI1 { x } | ExistsI2 { x } => Integer::from(*x),
        EqSym | NegNegI | NegNegE | OrI3 | OrE1 | OrE2 | OrE3 | SEqI | SEqE | SNeqI | SNeqE
        | SNeqZeroI | PEqI2 | PTI | PTE | ForallE1 | ForallE2 | ExistsE1 | ExistsE2 => {
            Integer::new()
        }
    };
    (r.id(), inst)
}

pub fn decode_rule(id: usize, inst: &Code) -> D<RuleApp> {
    use RuleApp::*;
    let term = |c: &Code| decode_term(c);
    let px = |c: &Code| -> D<(Term, u32)> {
        let (p, x) = unpair(c);
        Ok((term(&p)?, small(&x, "rule")?))
    };
    let nothing = |r: RuleApp| if *inst == 0 { Ok(r) } else { bad("rule") };
    match id {
        0 => {
            let (def, rest) = unpair(inst);
            let (args, paths) = unpair(&rest);
            Ok(DefFold {
                def: index(&def, "rule")?,
                args: decode_terms(&args)?,
                paths: decode_paths(&paths)?,
            })
        }
        1 => {
            let (def, paths) = unpair(inst);
            Ok(DefUnfold { def: index(&def, "rule")?, paths: decode_paths(&paths)? })
        }
        2 => nothing(EqSym),
        3 => Ok(EqSubst { paths: decode_paths(inst)? }),
        4 => nothing(NegNegI),
        5 => nothing(NegNegE),
        6 => Ok(NegE { q: term(inst)? }),
        7 => Ok(OrI1 { q: term(inst)? }),
        8 => Ok(OrI2 { p: term(inst)? }),
        9 => nothing(OrI3),
        10 => nothing(OrE1),
        11 => nothing(OrE2),
        12 => nothing(OrE3),
        13 => Ok(ZeroI { ctx: decode_terms(inst)? }),
        14 => nothing(SEqI),
        15 => nothing(SEqE),
        16 => nothing(SNeqI),
        17 => nothing(SNeqE),
        18 => nothing(SNeqZeroI),
        19 => nothing(PEqI2),
        20 => nothing(PTI),
        21 => nothing(PTE),
        22 => Ok(CondI1 { b: term(inst)? }),
        23 => Ok(CondI2 { a: term(inst)? }),
        24 => px(inst).map(|(p, x)| Ind { p, x }),
        25 => {
            let (ctx, p) = unpair(inst);
            Ok(Hyp { ctx: decode_terms(&ctx)?, p: term(&p)? })
        }
        26 => Ok(Weaken { p: term(inst)? }),
        27 => Ok(ForallI1 { x: small(inst, "rule")? }),
        28 => nothing(ForallE1),
        29 => px(inst).map(|(p, x)| ForallI2 { x, p }),
        30 => nothing(ForallE2),
        31 => px(inst).map(|(p, x)| ExistsI1 { x, p }),
        32 => nothing(ExistsE1),
        33 => Ok(ExistsI2 { x: small(inst, "rule")? }),
        34 => nothing(ExistsE2),
        35 => px(inst).map(|(p, x)| ForallInd { x, p }),
        _ => bad("rule"),
    }
}

pub fn encode_step(s: &Step) -> Code {
    let (id, inst) = encode_rule(&s.rule);
    let prem: Vec<Code> = s.premises.iter().map(|&i| Integer::from(i)).collect();
    pair(
        &encode_judgment(&s.judgment),
        &pair(&Integer::from(id), &pair(&seq_code(&prem), &inst)),
    )
}

pub fn decode_step(c: &Code) -> D<Step> {
    let (j, rest) = unpair(c);
    let (id, rest) = unpair(&rest);
    let (prem, inst) = unpair(&rest);
    let id = index(&id, "step")?;
    let premises = seq_decode(&prem)?.iter().map(|i| index(i, "step")).collect::<D<Vec<_>>>()?;
    Ok(Step { judgment: decode_judgment(&j)?, rule: decode_rule(id, &inst)?, premises })
}

pub fn encode_proof(p: &Proof) -> Code {
    let steps: Vec<Code> = p.steps.iter().map(encode_step).collect();
    seq_code(&steps)
}

pub fn decode_proof(c: &Code) -> D<Proof> {
    let steps = seq_decode(c)?.iter().map(decode_step).collect::<D<Vec<_>>>()?;
    Ok(Proof { steps })
}

pub fn wf_term_code(c: &Code) -> bool {
    decode_term(c).is_ok()
}

pub fn wf_judgment_code(c: &Code) -> bool {
    decode_judgment(c).is_ok()
}

pub fn wf_proof_code(c: &Code) -> bool {
    decode_proof(c).is_ok()
}

/// `⌜S^n(0)⌝`, built without materializing the numeral.
pub fn numeral_code(n: u64) -> Code {
    let mut c = Integer::new();
    for _ in 0..n {
        c = tagged(TAG_SUCC, &c);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::tactics::Prover;
    use crate::term::*;
    use crate::DefinitionList;

    #[test]
    fn zero_and_small_terms() {
        assert_eq!(encode_term(&Term::Zero), 0);
        assert_eq!(encode_term(&succ(Term::Zero)), 3);
        assert_eq!(encode_term(&var(0)), 1);
        assert_eq!(decode_term(&Integer::from(3)).unwrap(), succ(Term::Zero));
        assert!(!wf_term_code(&pair(&Integer::from(99), &Integer::new())));
        assert!(wf_term_code(&encode_term(&eq(Term::Zero, Term::Zero))));
        assert_eq!(numeral_code(4), encode_term(&numeral(4)));
    }

    #[test]
    fn zero_needs_empty_payload() {
        assert!(decode_term(&pair(&Integer::new(), &Integer::from(5))).is_err());
    }

    #[test]
    fn packed_sequences_reject_foreign_codes() {
        let accepted = (0..4096u32).filter(|&n| seq_decode(&Integer::from(n)).is_ok()).count();
        assert!(accepted > 100);
        for n in 0..4096u32 {
            if let Ok(xs) = seq_decode(&Integer::from(n)) {
                assert_eq!(seq_code(&xs), n);
            }
        }
    }

    #[test]
    fn sequences() {
        for n in 0..200u32 {
            let xs: Vec<Code> = (0..n).map(|i| Integer::from(i * 7 + 1)).collect();
            assert_eq!(seq_decode(&seq_code(&xs)).unwrap(), xs);
            if n < 8 {
                assert_eq!(cons_decode(&cons_code(&xs)).unwrap(), xs);
            }
        }
    }

    #[test]
    fn judgment_hyps_are_canonical() {
        let j = Judgment::new([nat(var(1)), nat(var(0))], eq(var(0), var(1)));
        assert_eq!(decode_judgment(&encode_judgment(&j)).unwrap(), j);
        let mut hyps: Vec<Code> = j.hyps.iter().map(encode_term).collect();
        hyps.reverse();
        let swapped = pair(&seq_code(&hyps), &encode_term(&j.concl));
        assert!(decode_judgment(&swapped).is_err());
    }

    #[test]
    fn proof_round_trip() {
        let defs = DefinitionList::new();
        let p = Prover::new(&defs);
        let th = p.s_neq_zero(&p.zero(&BTreeSet::new())).unwrap();
        let proof = th.to_proof();
        assert_eq!(decode_proof(&encode_proof(&proof)).unwrap(), proof);
    }
}
