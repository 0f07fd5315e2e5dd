//! Proof scripts (`.gap`).
//!
//! ```text
//! theorem NAME : H1, H2 |- C
//! s0: 0I ctx={}
//! s1: S=IE.fwd from s0
//! qed
//! ```
//!
//! Arguments are `key=value` pairs separated by `;`. Values are terms,
//! `{t1, t2}` lists, hole positions such as `@0.1 @1`, definition names or
//! variables `vN`.

use super::*;
use crate::syntax::{parse_at_line, print, ParseError, SymbolTable};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Term(#[from] ParseError),
    #[error("line {line}: unknown rule `{name}`")]
    UnknownRule { line: usize, name: String },
    #[error("line {line}: {error}")]
    Rule { line: usize, error: RuleError },
    #[error("theorem {name}: final judgment differs from the stated claim")]
    ClaimMismatch { name: String },
}

impl ScriptError {
    /// Syntax problems, as opposed to proofs that fail to check.
    pub fn is_syntax(&self) -> bool {
        matches!(self, ScriptError::Syntax { .. } | ScriptError::Term(_))
    }
}

#[derive(Debug, Clone)]
pub struct ScriptTheorem {
    pub name: String,
    pub claim: Judgment,
    pub proof: Proof,
}

fn syntax(line: usize, msg: impl Into<String>) -> ScriptError {
    ScriptError::Syntax { line, msg: msg.into() }
}

/// Split at `sep` outside parentheses and braces.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

struct Reader<'a> {
    defs: &'a DefinitionList,
    syms: SymbolTable,
    line: usize,
}

impl Reader<'_> {
    fn term(&mut self, s: &str) -> Result<Term, ScriptError> {
        Ok(parse_at_line(s.trim(), self.line, self.defs, &mut self.syms)?)
    }

    fn terms(&mut self, s: &str) -> Result<Vec<Term>, ScriptError> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| syntax(self.line, format!("expected a {{...}} list, got `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(vec![]);
        }
        split_top(inner, ',').into_iter().map(|t| self.term(t)).collect()
    }

    fn paths(&self, s: &str) -> Result<Vec<Path>, ScriptError> {
        let mut out = Vec::new();
        for w in s.split_whitespace() {
            let body = w
                .strip_prefix('@')
                .ok_or_else(|| syntax(self.line, format!("hole position must start with @, got `{w}`")))?;
            let mut p = Vec::new();
            if !body.is_empty() {
                for part in body.split('.') {
                    p.push(part.parse().map_err(|_| syntax(self.line, format!("bad hole position `{w}`")))?);
                }
            }
            out.push(p);
        }
        Ok(out)
    }

    fn variable(&mut self, s: &str) -> Result<u32, ScriptError> {
        match self.term(s)? {
            Term::Var(v) => Ok(v),
            _ => Err(syntax(self.line, format!("expected a variable, got `{}`", s.trim()))),
        }
    }

    fn def(&self, s: &str) -> Result<usize, ScriptError> {
        let s = s.trim();
        if let Some(i) = self.defs.index_of(s) {
            return Ok(i);
        }
        s.strip_prefix('d')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| syntax(self.line, format!("unknown definition `{s}`")))
    }
}

struct Args<'s> {
    line: usize,
    map: Vec<(&'s str, &'s str)>,
}

impl<'s> Args<'s> {
    fn parse(line: usize, s: &'s str) -> Result<Self, ScriptError> {
        let mut map = Vec::new();
        if !s.trim().is_empty() {
            for kv in split_top(s, ';') {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| syntax(line, format!("expected key=value, got `{}`", kv.trim())))?;
                map.push((k.trim(), v));
            }
        }
        Ok(Args { line, map })
    }

    fn get(&self, key: &str) -> Option<&'s str> {
        self.map.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    fn need(&self, key: &str) -> Result<&'s str, ScriptError> {
        self.get(key).ok_or_else(|| syntax(self.line, format!("missing argument `{key}`")))
    }

    fn only(&self, keys: &[&str]) -> Result<(), ScriptError> {
        for (k, _) in &self.map {
            if !keys.contains(k) {
                return Err(syntax(self.line, format!("unexpected argument `{k}`")));
            }
        }
        Ok(())
    }
}

fn read_rule(
    r: &mut Reader,
    name: &str,
    args: &Args,
    header_hyps: &BTreeSet<Term>,
) -> Result<RuleApp, ScriptError> {
    use RuleApp::*;
    let line = r.line;
    let keys: &[&str] = match name {
        "defIE.fwd" => &["def", "args", "at"],
        "defIE.rev" => &["def", "at"],
        "=E" => &["at"],
        "negE" | "orI1" => &["q"],
        "orI2" | "W" => &["p"],
        "0I" => &["ctx"],
        "?I1" => &["b"],
        "?I2" => &["a"],
        "Ind" | "forallI2" | "existsI1" | "forallInd" => &["p", "x"],
        "H" => &["ctx", "p"],
        "forallI1" | "existsI2" => &["x"],
        _ => &[],
    };
    args.only(keys)?;
    let ctx = |r: &mut Reader, drop: Option<&Term>| -> Result<Vec<Term>, ScriptError> {
        match args.get("ctx") {
            Some(s) => r.terms(s),
            None => Ok(header_hyps.iter().filter(|h| Some(*h) != drop).cloned().collect()),
        }
    };
    Ok(match name {
        "defIE.fwd" => DefFold {
            def: r.def(args.need("def")?)?,
            args: r.terms(args.need("args")?)?,
            paths: r.paths(args.need("at")?)?,
        },
        "defIE.rev" => DefUnfold { def: r.def(args.need("def")?)?, paths: r.paths(args.need("at")?)? },
        "=S" => EqSym,
        "=E" => EqSubst { paths: r.paths(args.need("at")?)? },
        "negnegIE.fwd" => NegNegI,
        "negnegIE.rev" => NegNegE,
        "negE" => NegE { q: r.term(args.need("q")?)? },
        "orI1" => OrI1 { q: r.term(args.need("q")?)? },
        "orI2" => OrI2 { p: r.term(args.need("p")?)? },
        "orI3" => OrI3,
        "orE1" => OrE1,
        "orE2" => OrE2,
        "orE3" => OrE3,
        "0I" => ZeroI { ctx: ctx(r, None)? },
        "S=IE.fwd" => SEqI,
        "S=IE.rev" => SEqE,
        "S!=IE.fwd" => SNeqI,
        "S!=IE.rev" => SNeqE,
        "S!=0I" => SNeqZeroI,
        "P=I2" => PEqI2,
        "PTIE.fwd" => PTI,
        "PTIE.rev" => PTE,
        "?I1" => CondI1 { b: r.term(args.need("b")?)? },
        "?I2" => CondI2 { a: r.term(args.need("a")?)? },
        "Ind" => Ind { p: r.term(args.need("p")?)?, x: r.variable(args.need("x")?)? },
        "H" => {
            let p = r.term(args.need("p")?)?;
            let ctx = ctx(r, Some(&p))?;
            Hyp { ctx, p }
        }
        "W" => Weaken { p: r.term(args.need("p")?)? },
        "forallI1" => ForallI1 { x: r.variable(args.need("x")?)? },
        "forallE1" => ForallE1,
        "forallI2" => ForallI2 { x: r.variable(args.need("x")?)?, p: r.term(args.need("p")?)? },
        "forallE2" => ForallE2,
        "existsI1" => ExistsI1 { x: r.variable(args.need("x")?)?, p: r.term(args.need("p")?)? },
        "existsE1" => ExistsE1,
        "existsI2" => ExistsI2 { x: r.variable(args.need("x")?)? },
        "existsE2" => ExistsE2,
        "forallInd" => ForallInd { x: r.variable(args.need("x")?)?, p: r.term(args.need("p")?)? },
        _ => return Err(ScriptError::UnknownRule { line, name: name.to_string() }),
    })
}

fn parse_header(r: &mut Reader, rest: &str) -> Result<(String, Judgment), ScriptError> {
    let line = r.line;
    let (name, claim) = rest
        .split_once(':')
        .ok_or_else(|| syntax(line, "expected `theorem NAME : HYPS |- CONCL`"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '.') {
        return Err(syntax(line, format!("bad theorem name `{name}`")));
    }
    let (hyps, concl) = claim.split_once("|-").ok_or_else(|| syntax(line, "missing `|-`"))?;
    let hyps = if hyps.trim().is_empty() {
        vec![]
    } else {
        split_top(hyps, ',').into_iter().map(|h| r.term(h)).collect::<Result<_, _>>()?
    };
    let concl = r.term(concl)?;
    Ok((name.to_string(), Judgment::new(hyps, concl)))
}

/// Parse every theorem in a script and replay it through the kernel.
pub fn check_script(defs: &DefinitionList, text: &str) -> Result<Vec<(ScriptTheorem, Theorem)>, ScriptError> {
    let mut out = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((n, raw)) = lines.next() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let line = n + 1;
        let rest = content
            .strip_prefix("theorem ")
            .ok_or_else(|| syntax(line, "expected `theorem`"))?;
        let mut r = Reader { defs, syms: SymbolTable::new(), line };
        let (name, claim) = parse_header(&mut r, rest)?;
        let mut labels: HashMap<String, usize> = HashMap::new();
        let mut done: Vec<Theorem> = Vec::new();
        let mut closed = false;
        for (n, raw) in lines.by_ref() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            r.line = n + 1;
            let line = r.line;
            if content == "qed" {
                closed = true;
                break;
            }
            let (label, body) = content
                .split_once(':')
                .ok_or_else(|| syntax(line, "expected `LABEL: RULE ...`"))?;
            let label = label.trim();
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(syntax(line, format!("bad label `{label}`")));
            }
            if labels.contains_key(label) {
                return Err(syntax(line, format!("duplicate label `{label}`")));
            }
            let body = body.trim();
            let (rule_name, after) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let (arg_text, from) = match split_from(after) {
                Some((a, f)) => (a, Some(f)),
                None => (after, None),
            };
            let args = Args::parse(line, arg_text)?;
            let rule = read_rule(&mut r, rule_name, &args, &claim.hyps)?;
            let mut premises = Vec::new();
            if let Some(f) = from {
                for l in f.split(',') {
                    let l = l.trim();
                    let i = labels
                        .get(l)
                        .ok_or_else(|| syntax(line, format!("unknown or later label `{l}`")))?;
                    premises.push(done[*i].clone());
                }
            }
            let th = apply_rule(defs, rule, &premises).map_err(|error| ScriptError::Rule { line, error })?;
            labels.insert(label.to_string(), done.len());
            done.push(th);
        }
        if !closed {
            return Err(syntax(r.line, format!("theorem {name}: missing `qed`")));
        }
        let last = done.last().ok_or_else(|| syntax(r.line, format!("theorem {name}: empty proof")))?;
        if *last.judgment() != claim {
            return Err(ScriptError::ClaimMismatch { name });
        }
        let proof = last.to_proof();
        out.push((ScriptTheorem { name, claim, proof }, last.clone()));
    }
    Ok(out)
}

/// Split `ARGS from L1, L2` at the last top-level ` from `.
fn split_from(s: &str) -> Option<(&str, &str)> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("from ") {
        return Some(("", rest));
    }
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in t.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ' ' if depth == 0 && t[i..].starts_with(" from ") => found = Some(i),
            _ => {}
        }
    }
    found.map(|i| (&t[..i], &t[i + 6..]))
}

fn write_paths(out: &mut String, paths: &[Path]) {
    let parts: Vec<String> = paths
        .iter()
        .map(|p| format!("@{}", p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")))
        .collect();
    out.push_str(&parts.join(" "));
}

fn term_list(defs: &DefinitionList, ts: &[Term]) -> String {
    format!("{{{}}}", ts.iter().map(|t| print(t, defs)).collect::<Vec<_>>().join(", "))
}

fn rule_args(defs: &DefinitionList, rule: &RuleApp) -> String {
    use RuleApp::*;
    let t = |t: &Term| print(t, defs);
    let name = |d: &usize| defs.name(*d).map(str::to_string).unwrap_or_else(|| format!("d{d}"));
    let mut s = String::new();
    match rule {
        DefFold { def, args, paths } => {
            let _ = write!(s, "def={}; args={}; at=", name(def), term_list(defs, args));
            write_paths(&mut s, paths);
        }
        DefUnfold { def, paths } => {
            let _ = write!(s, "def={}; at=", name(def));
            write_paths(&mut s, paths);
        }
        EqSubst { paths } => {
            s.push_str("at=");
            write_paths(&mut s, paths);
        }
        NegE { q } | OrI1 { q } => s = format!("q={}", t(q)),
        OrI2 { p } | Weaken { p } => s = format!("p={}", t(p)),
        ZeroI { ctx } => s = format!("ctx={}", term_list(defs, ctx)),
        CondI1 { b } => s = format!("b={}", t(b)),
        CondI2 { a } => s = format!("a={}", t(a)),
        Ind { p, x } | ForallI2 { x, p } | ExistsI1 { x, p } | ForallInd { x, p } => {
            s = format!("p={}; x=v{x}", t(p))
        }
        Hyp { ctx, p } => s = format!("ctx={}; p={}", term_list(defs, ctx), t(p)),
        ForallI1 { x } | ExistsI2 { x } => s = format!("x=v{x}"),
        _ => {}
    }
    s
}

/// Render a proof as a script. Checking the script reproduces the proof.
pub fn emit_script(defs: &DefinitionList, name: &str, proof: &Proof) -> String {
    let mut out = String::new();
    let Some(claim) = proof.claim() else {
        return out;
    };
    let hyps: Vec<String> = claim.hyps.iter().map(|h| print(h, defs)).collect();
    let _ = writeln!(out, "theorem {name} : {} |- {}", hyps.join(", "), print(&claim.concl, defs));
    for (i, s) in proof.steps.iter().enumerate() {
        let _ = write!(out, "s{i}: {}", s.rule.name());
        let args = rule_args(defs, &s.rule);
        if !args.is_empty() {
            let _ = write!(out, " {args}");
        }
        if !s.premises.is_empty() {
            let ps: Vec<String> = s.premises.iter().map(|p| format!("s{p}")).collect();
            let _ = write!(out, " from {}", ps.join(", "));
        }
        out.push('\n');
    }
    out.push_str("qed\n");
    out
}
