//! ASCII concrete syntax: lexer, parser, printer and definition files.
//!
//! Precedence, loosest first: `?:` and quantifiers, `<->`, `->`, `\/` `/\`,
//! `=` `!=`, `~`, application.

use crate::defs::{arity_of, DefinitionList};
use crate::term::*;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown definition `{name}`")]
    UnknownDefinition { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{name}` takes {expected} arguments, got {got}")]
    Arity { line: usize, col: usize, name: String, expected: usize, got: usize },
    #[error("line {line}: definition `{name}`: {msg}")]
    Definition { line: usize, name: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    Ident(String),
    Sym(&'static str),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: &[&str] = &[
    "<->", ":=", "->", "\\/", "/\\", "!=", "(", ")", ",", ".", "?", ":", "~", "=",
];

fn lex(text: &str, line0: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, line0, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (l, cl) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<u64>().map_err(|_| ParseError::Syntax {
                line: l,
                col: cl,
                msg: format!("numeral `{s}` too large"),
            })?;
            col += i - start;
            out.push(Token { tok: Tok::Nat(n), line: l, col: cl });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l, col: cl });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                i += s.len();
                col += s.len();
                out.push(Token { tok: Tok::Sym(s), line: l, col: cl });
            }
            None => {
                return Err(ParseError::Syntax {
                    line: l,
                    col: cl,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

fn indexed(name: &str, prefix: char) -> Option<u64> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if rest.len() > 1 && rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

const RESERVED: &[&str] = &["S", "P", "true", "false", "nat", "bool", "forall", "exists"];

/// Named variables shared across several parses (e.g. one proof script).
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    names: HashMap<String, u32>,
    used: BTreeSet<u32>,
    /// When false, unknown bare identifiers are errors instead of new variables.
    pub allow_free: bool,
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable { allow_free: true, ..Default::default() }
    }

    fn params(params: &[String]) -> Self {
        let mut s = SymbolTable::default();
        for (i, p) in params.iter().enumerate() {
            s.names.insert(p.clone(), i as u32);
            s.used.insert(i as u32);
        }
        s
    }

    fn fresh(&mut self) -> u32 {
        let v = fresh_var(&self.used);
        self.used.insert(v);
        v
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.names.get(name).copied()
    }

    fn reserve_explicit(&mut self, toks: &[Token]) {
        for t in toks {
            if let Tok::Ident(s) = &t.tok {
                if let Some(n) = indexed(s, 'v') {
                    if n <= u32::MAX as u64 {
                        self.used.insert(n as u32);
                    }
                }
            }
        }
    }
}

/// Resolves definition names during parsing.
pub trait DefNames {
    fn resolve(&self, name: &str) -> Option<(usize, usize)>;
}

impl DefNames for DefinitionList {
    fn resolve(&self, name: &str) -> Option<(usize, usize)> {
        let i = self.index_of(name)?;
        Some((i, self.arity(i).ok()?))
    }
}

struct PendingNames<'a> {
    base: &'a DefinitionList,
    extra: &'a HashMap<String, (usize, usize)>,
}

impl DefNames for PendingNames<'_> {
    fn resolve(&self, name: &str) -> Option<(usize, usize)> {
        self.extra.get(name).copied().or_else(|| self.base.resolve(name))
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    defs: &'a dyn DefNames,
    syms: &'a mut SymbolTable,
    bound: Vec<(String, u32)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax { line, col, msg: msg.into() }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`, found {}", describe(self.peek()))))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let c = self.iff()?;
        if self.eat("?") {
            let a = self.term()?;
            self.expect(":")?;
            let b = self.term()?;
            return Ok(cond(c, a, b));
        }
        Ok(c)
    }

    fn iff(&mut self) -> Result<Term, ParseError> {
        let mut l = self.imp()?;
        while self.eat("<->") {
            let r = self.imp()?;
            l = iff(l, r);
        }
        Ok(l)
    }

    fn imp(&mut self) -> Result<Term, ParseError> {
        let l = self.disj()?;
        if self.eat("->") {
            let r = self.imp()?;
            return Ok(implies(l, r));
        }
        Ok(l)
    }

    fn disj(&mut self) -> Result<Term, ParseError> {
        let mut l = self.equation()?;
        loop {
            if self.eat("\\/") {
                let r = self.equation()?;
                l = or(l, r);
            } else if self.eat("/\\") {
                let r = self.equation()?;
                l = and(l, r);
            } else {
                return Ok(l);
            }
        }
    }

    fn equation(&mut self) -> Result<Term, ParseError> {
        let l = self.unary()?;
        if self.eat("=") {
            let r = self.unary()?;
            return Ok(eq(l, r));
        }
        if self.eat("!=") {
            let r = self.unary()?;
            return Ok(neq(l, r));
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if self.eat("~") {
            return Ok(neg(self.unary()?));
        }
        if let Tok::Ident(s) = self.peek() {
            if s == "forall" || s == "exists" {
                let is_all = s == "forall";
                self.bump();
                let (name, x) = match self.bump() {
                    Tok::Ident(n) if !RESERVED.contains(&n.as_str()) => {
                        let x = match indexed(&n, 'v') {
                            Some(i) if i <= u32::MAX as u64 => i as u32,
                            Some(_) => return Err(self.err("variable index too large")),
                            None => self.syms.fresh(),
                        };
                        (n, x)
                    }
                    t => return Err(self.err(format!("expected a variable, found {}", describe(&t)))),
                };
                self.expect(".")?;
                self.bound.push((name, x));
                let body = self.term();
                self.bound.pop();
                let body = body?;
                return Ok(if is_all { forall(x, body) } else { exists(x, body) });
            }
        }
        self.atom()
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut out = vec![self.term()?];
        while self.eat(",") {
            out.push(self.term()?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn one_arg(&mut self) -> Result<Term, ParseError> {
        self.expect("(")?;
        let t = self.term()?;
        self.expect(")")?;
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let (line, col) = self.here();
        match self.bump() {
            Tok::Nat(n) => Ok(numeral(n)),
            Tok::Sym("(") => {
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            Tok::Ident(s) => match s.as_str() {
                "S" => Ok(succ(self.one_arg()?)),
                "P" => Ok(pred(self.one_arg()?)),
                "nat" => Ok(nat(self.one_arg()?)),
                "bool" => Ok(boolean(self.one_arg()?)),
                "true" => Ok(truth()),
                "false" => Ok(falsity()),
                _ => self.named(s, line, col),
            },
            t => Err(ParseError::Syntax {
                line,
                col,
                msg: format!("expected a term, found {}", describe(&t)),
            }),
        }
    }

    fn named(&mut self, s: String, line: usize, col: usize) -> Result<Term, ParseError> {
        let has_args = self.eat("(");
        if !has_args {
            if let Some((_, x)) = self.bound.iter().rev().find(|(n, _)| *n == s) {
                return Ok(Term::Var(*x));
            }
            if let Some(x) = self.syms.lookup(&s) {
                return Ok(Term::Var(x));
            }
            if let Some(i) = indexed(&s, 'v') {
                if i > u32::MAX as u64 {
                    return Err(ParseError::Syntax { line, col, msg: "variable index too large".into() });
                }
                return Ok(Term::Var(i as u32));
            }
        }
        let args = if has_args { self.args()? } else { vec![] };
        if let Some((i, arity)) = self.defs.resolve(&s) {
            if arity != args.len() {
                return Err(ParseError::Arity { line, col, name: s, expected: arity, got: args.len() });
            }
            return Ok(Term::Apply(i, args));
        }
        if let Some(i) = indexed(&s, 'd') {
            return Ok(Term::Apply(i as usize, args));
        }
        if has_args {
            return Err(ParseError::UnknownDefinition { line, col, name: s });
        }
        if !self.syms.allow_free || RESERVED.contains(&s.as_str()) {
            return Err(ParseError::UnknownIdentifier { line, col, name: s });
        }
        let x = self.syms.fresh();
        self.syms.names.insert(s, x);
        Ok(Term::Var(x))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Nat(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::End => "end of input".into(),
    }
}

fn parse_tokens(
    toks: Vec<Token>,
    defs: &dyn DefNames,
    syms: &mut SymbolTable,
) -> Result<Term, ParseError> {
    syms.reserve_explicit(&toks);
    let mut p = Parser { toks, pos: 0, defs, syms, bound: Vec::new() };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return Err(p.err(format!("unexpected {}", describe(p.peek()))));
    }
    Ok(t)
}

/// Parse a term whose named free identifiers become fresh variables.
pub fn parse(text: &str, defs: &DefinitionList) -> Result<Term, ParseError> {
    parse_with(text, defs, &mut SymbolTable::new())
}

pub fn parse_with(
    text: &str,
    defs: &DefinitionList,
    syms: &mut SymbolTable,
) -> Result<Term, ParseError> {
    parse_tokens(lex(text, 1)?, defs, syms)
}

/// Parse at a known line number (for diagnostics inside larger files).
pub fn parse_at_line(
    text: &str,
    line: usize,
    defs: &DefinitionList,
    syms: &mut SymbolTable,
) -> Result<Term, ParseError> {
    parse_tokens(lex(text, line)?, defs, syms)
}

/// Load a definition file, appending its entries to `defs` in file order.
/// Returns the indices of the new definitions.
pub fn load_definitions(text: &str, defs: &mut DefinitionList) -> Result<Vec<usize>, ParseError> {
    struct Header {
        line: usize,
        name: String,
        params: Vec<String>,
        body: String,
    }
    let mut headers = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let (head, body) = content.split_once(":=").ok_or_else(|| ParseError::Syntax {
            line,
            col: 1,
            msg: "expected `NAME(params) := term`".into(),
        })?;
        let toks = lex(head, line)?;
        let mut it = toks.iter().map(|t| &t.tok);
        let name = match it.next() {
            Some(Tok::Ident(s)) if !RESERVED.contains(&s.as_str()) => s.clone(),
            _ => {
                return Err(ParseError::Syntax { line, col: 1, msg: "expected a definition name".into() })
            }
        };
        let mut params = Vec::new();
        match it.next() {
            Some(Tok::End) => {}
            Some(Tok::Sym("(")) => loop {
                match it.next() {
                    Some(Tok::Ident(p)) => params.push(p.clone()),
                    Some(Tok::Sym(")")) if params.is_empty() => break,
                    _ => {
                        return Err(ParseError::Syntax { line, col: 1, msg: "malformed parameter list".into() })
                    }
                }
                match it.next() {
                    Some(Tok::Sym(",")) => continue,
                    Some(Tok::Sym(")")) => break,
                    _ => {
                        return Err(ParseError::Syntax { line, col: 1, msg: "malformed parameter list".into() })
                    }
                }
            },
            _ => return Err(ParseError::Syntax { line, col: 1, msg: "malformed definition header".into() }),
        }
        headers.push(Header { line, name, params, body: body.to_string() });
    }

    let mut extra = HashMap::new();
    for (k, h) in headers.iter().enumerate() {
        if defs.index_of(&h.name).is_some() || extra.contains_key(&h.name) {
            return Err(ParseError::Definition { line: h.line, name: h.name.clone(), msg: "duplicate name".into() });
        }
        extra.insert(h.name.clone(), (defs.len() + k, h.params.len()));
    }
    let mut bodies = Vec::new();
    for h in &headers {
        let names = PendingNames { base: defs, extra: &extra };
        let mut syms = SymbolTable::params(&h.params);
        let toks = lex(&h.body, h.line)?;
        let body = parse_tokens(toks, &names, &mut syms)?;
        let arity = arity_of(&body);
        if arity != h.params.len() {
            return Err(ParseError::Definition {
                line: h.line,
                name: h.name.clone(),
                msg: format!(
                    "declares {} parameters but its body determines arity {arity}",
                    h.params.len()
                ),
            });
        }
        bodies.push(body);
    }
    let mut out = Vec::new();
    for (h, body) in headers.into_iter().zip(bodies) {
        let i = defs.push_term(h.name.clone(), body).map_err(|e| ParseError::Definition {
            line: h.line,
            name: h.name,
            msg: e.to_string(),
        })?;
        out.push(i);
    }
    Ok(out)
}

// Printer levels mirror the parser: 0 = `?:` and binders, 1 = `<->`,
// 2 = `->`, 3 = `\/`, 4 = `=`, 5 = `~`, 6 = atoms.
fn level(t: &Term) -> u8 {
    match t {
        Term::Cond(..) | Term::Forall(..) | Term::Exists(..) => 0,
        Term::Or(..) => 3,
        Term::Eq(..) => 4,
        Term::Neg(_) => 5,
        _ => 6,
    }
}

fn def_name(defs: Option<&DefinitionList>, i: usize) -> String {
    match defs.and_then(|d| d.name(i)) {
        Some(n) => n.to_string(),
        None => format!("d{i}"),
    }
}

fn write_term(out: &mut String, t: &Term, min: u8, defs: Option<&DefinitionList>) {
    if level(t) < min {
        out.push('(');
        write_term(out, t, 0, defs);
        out.push(')');
        return;
    }
    match t {
        Term::Var(i) => {
            let _ = write!(out, "v{i}");
        }
        Term::Zero => out.push('0'),
        Term::Succ(a) => match numeral_value(t) {
            Some(n) => {
                let _ = write!(out, "{n}");
            }
            None => {
                out.push_str("S(");
                write_term(out, a, 0, defs);
                out.push(')');
            }
        },
        Term::Pred(a) => {
            out.push_str("P(");
            write_term(out, a, 0, defs);
            out.push(')');
        }
        Term::Neg(p) => {
            out.push('~');
            write_term(out, p, 5, defs);
        }
        Term::Or(l, r) => {
            write_term(out, l, 3, defs);
            out.push_str(" \\/ ");
            write_term(out, r, 4, defs);
        }
        Term::Eq(l, r) => {
            write_term(out, l, 5, defs);
            out.push_str(" = ");
            write_term(out, r, 5, defs);
        }
        Term::Cond(c, a, b) => {
            write_term(out, c, 1, defs);
            out.push_str(" ? ");
            write_term(out, a, 0, defs);
            out.push_str(" : ");
            write_term(out, b, 0, defs);
        }
        Term::Apply(i, args) => {
            out.push_str(&def_name(defs, *i));
            if !args.is_empty() {
                out.push('(');
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_term(out, a, 0, defs);
                }
                out.push(')');
            }
        }
        Term::Forall(x, body) | Term::Exists(x, body) => {
            out.push_str(if matches!(t, Term::Forall(..)) { "forall v" } else { "exists v" });
            let _ = write!(out, "{x}. ");
            write_term(out, body, 0, defs);
        }
    }
}

/// Print a term so that parsing it against the same definitions gives it back.
pub fn print(t: &Term, defs: &DefinitionList) -> String {
    let mut s = String::new();
    write_term(&mut s, t, 0, Some(defs));
    s
}

/// Print without definition names (applications show as `dN`).
pub fn print_raw(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t, 0, None);
    s
}
