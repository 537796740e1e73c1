//! Problem files: an alphabet, optional order and signatures, and at most
//! one payload (a term, a raw system, or a subtype query).
//!
//! ```text
//! # comment
//! alphabet: nat/0, int/0, list/1, set/1
//! order: nat <= int  list <= set
//! signatures:
//!   zero : nat
//!   cons : 'a * list('a) -> list('a)
//! term: cons(zero, x)
//! ```
//!
//! Parameters carry a leading apostrophe. In a term, identifiers without a
//! signature are variables.

use std::collections::HashSet;
use std::fmt;

use crate::alphabet::{Alphabet, Constructor};
use crate::error::{Error, Result};
use crate::infer::{Inequation, InequationSystem, Signature, Signatures, Term};
use crate::types::Type;

const SECTIONS: [&str; 6] = [
    "alphabet",
    "order",
    "signatures",
    "term",
    "solve",
    "subtype",
];

#[derive(Clone, Debug)]
pub enum Payload {
    Term(Term),
    System(InequationSystem),
    Subtype(Type, Type),
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub alphabet: Alphabet,
    pub signatures: Signatures,
    pub payload: Option<Payload>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Colon,
    Comma,
    Slash,
    LParen,
    RParen,
    Le,
    Star,
    Arrow,
    Quote,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Quote => f.write_str("`'`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn parse_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        message: message.into(),
    }
    .at(pos.line, pos.col)
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            '\n' | ' ' | '\t' | '\r' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                let n = s
                    .parse()
                    .map_err(|_| parse_error(pos, format!("number `{s}` is too large")))?;
                out.push((Tok::Nat(n), pos));
            }
            '<' | '-' => {
                bump(&mut chars);
                let (want, tok) = if c == '<' {
                    ('=', Tok::Le)
                } else {
                    ('>', Tok::Arrow)
                };
                if chars.peek() == Some(&want) {
                    bump(&mut chars);
                    out.push((tok, pos));
                } else {
                    return Err(parse_error(pos, format!("expected `{c}{want}`")));
                }
            }
            _ => {
                let tok = match c {
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '*' => Tok::Star,
                    '\'' => Tok::Quote,
                    other => {
                        return Err(parse_error(pos, format!("unexpected character `{other}`")))
                    }
                };
                bump(&mut chars);
                out.push((tok, pos));
            }
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.at + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        parse_error(
            self.pos(),
            format!("expected {what}, found {}", self.peek()),
        )
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok((s, pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// At `KEYWORD :` for some section keyword.
    fn at_section(&self) -> Option<&'static str> {
        match (self.peek(), self.peek_at(1)) {
            (Tok::Ident(s), Tok::Colon) => SECTIONS.iter().copied().find(|k| k == s),
            _ => None,
        }
    }

    fn at_entry_end(&self) -> bool {
        self.at_section().is_some() || *self.peek() == Tok::Eof
    }

    fn section(&mut self, name: &str) -> bool {
        if self.at_section() == Some(name) {
            self.next();
            self.next();
            true
        } else {
            false
        }
    }

    fn ty(&mut self, alphabet: &Alphabet) -> Result<Type> {
        if self.eat(&Tok::Quote) {
            let (name, _) = self.ident("a parameter name after `'`")?;
            return Ok(Type::Param(name));
        }
        let (name, pos) = self.ident("a type")?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            args.push(self.ty(alphabet)?);
            while self.eat(&Tok::Comma) {
                args.push(self.ty(alphabet)?);
            }
            self.expect(&Tok::RParen, "`)`")?;
        }
        let expected = alphabet.arity(&name).map_err(|e| e.at(pos.line, pos.col))?;
        if expected != args.len() {
            return Err(Error::ConstructorArity {
                name,
                expected,
                found: args.len(),
            }
            .at(pos.line, pos.col));
        }
        Ok(Type::App(name, args))
    }

    fn term(&mut self, signatures: &Signatures) -> Result<Term> {
        let (name, pos) = self.ident("a term")?;
        let has_args = *self.peek() == Tok::LParen;
        let mut args = Vec::new();
        if has_args {
            self.next();
            args.push(self.term(signatures)?);
            while self.eat(&Tok::Comma) {
                args.push(self.term(signatures)?);
            }
            self.expect(&Tok::RParen, "`)`")?;
        }
        match signatures.get(&name) {
            Some(sig) if sig.arity() != args.len() => Err(Error::SymbolArity {
                name,
                expected: sig.arity(),
                found: args.len(),
            }
            .at(pos.line, pos.col)),
            Some(_) => Ok(Term::App(name, args)),
            None if has_args => Err(Error::UnknownSymbol(name).at(pos.line, pos.col)),
            None => Ok(Term::Var(name)),
        }
    }

    fn alphabet(&mut self) -> Result<Alphabet> {
        let start = self.pos();
        if !self.section("alphabet") {
            return Err(self.unexpected("`alphabet:` section"));
        }
        let mut ctors = Vec::new();
        let mut seen = HashSet::new();
        loop {
            let (name, pos) = self.ident("a constructor name")?;
            self.expect(&Tok::Slash, "`/` and an arity")?;
            let arity = match self.next() {
                Tok::Nat(n) => n,
                _ => return Err(parse_error(pos, "expected an arity after `/`")),
            };
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateConstructor(name).at(pos.line, pos.col));
            }
            ctors.push(Constructor::new(name, arity));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }

        let mut pairs = Vec::new();
        let order_pos = self.pos();
        let has_order = self.section("order");
        if has_order {
            while !self.at_entry_end() {
                let (lo, lo_pos) = self.ident("a constructor name")?;
                self.expect(&Tok::Le, "`<=`")?;
                let (hi, hi_pos) = self.ident("a constructor name")?;
                for (name, pos) in [(&lo, lo_pos), (&hi, hi_pos)] {
                    if !seen.contains(name) {
                        return Err(Error::UnknownConstructor(name.clone()).at(pos.line, pos.col));
                    }
                }
                pairs.push((lo, hi));
            }
        }
        let loc = if has_order { order_pos } else { start };
        Alphabet::new(ctors, pairs).map_err(|e| e.at(loc.line, loc.col))
    }

    fn signatures(&mut self, alphabet: &Alphabet) -> Result<Signatures> {
        let mut sigs = Signatures::new();
        if !self.section("signatures") {
            return Ok(sigs);
        }
        while !self.at_entry_end() {
            let (symbol, pos) = self.ident("a function symbol")?;
            self.expect(&Tok::Colon, "`:` after the function symbol")?;
            let mut types = vec![self.ty(alphabet)?];
            while self.eat(&Tok::Star) {
                types.push(self.ty(alphabet)?);
            }
            let sig = if self.eat(&Tok::Arrow) {
                Signature::new(symbol.clone(), types, self.ty(alphabet)?)
            } else if types.len() == 1 {
                Signature::new(symbol.clone(), Vec::new(), types.pop().unwrap())
            } else {
                return Err(self.unexpected("`->` and a result type"));
            };
            if sigs.insert(symbol.clone(), sig).is_some() {
                return Err(parse_error(
                    pos,
                    format!("duplicate signature for `{symbol}`"),
                ));
            }
        }
        Ok(sigs)
    }

    fn system(&mut self, alphabet: &Alphabet) -> Result<InequationSystem> {
        let mut system = InequationSystem::new();
        while !self.at_entry_end() {
            let lhs = self.ty(alphabet)?;
            self.expect(&Tok::Le, "`<=`")?;
            let rhs = self.ty(alphabet)?;
            system.insert(Inequation::new(lhs, rhs));
        }
        Ok(system)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => match self.at_section() {
                Some(s) => Err(parse_error(
                    self.pos(),
                    format!("section `{s}` is out of place"),
                )),
                None => Err(self.unexpected("end of input")),
            },
        }
    }
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut p = Parser::new(text)?;
    let alphabet = p.alphabet()?;
    let signatures = p.signatures(&alphabet)?;
    let payload = if p.section("term") {
        Some(Payload::Term(p.term(&signatures)?))
    } else if p.section("solve") {
        Some(Payload::System(p.system(&alphabet)?))
    } else if p.section("subtype") {
        let lhs = p.ty(&alphabet)?;
        p.expect(&Tok::Comma, "`,` between the two types")?;
        let rhs = p.ty(&alphabet)?;
        Some(Payload::Subtype(lhs, rhs))
    } else {
        None
    };
    p.finish()?;
    Ok(Problem {
        alphabet,
        signatures,
        payload,
    })
}

/// A single type, checked against `alphabet`.
pub fn parse_type(text: &str, alphabet: &Alphabet) -> Result<Type> {
    let mut p = Parser::new(text)?;
    let t = p.ty(alphabet)?;
    p.finish()?;
    Ok(t)
}

/// A single term; identifiers without a signature are variables.
pub fn parse_term(text: &str, signatures: &Signatures) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term(signatures)?;
    p.finish()?;
    Ok(t)
}

/// Whitespace-separated `σ <= τ` entries.
pub fn parse_system(text: &str, alphabet: &Alphabet) -> Result<InequationSystem> {
    let mut p = Parser::new(text)?;
    let s = p.system(alphabet)?;
    p.finish()?;
    Ok(s)
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("alphabet: ")?;
        for (i, c) in self.alphabet.constructors().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}/{}", c.name, c.arity)?;
        }
        f.write_str("\n")?;
        if !self.alphabet.declared_pairs().is_empty() {
            f.write_str("order:\n")?;
            for (lo, hi) in self.alphabet.declared_pairs() {
                writeln!(f, "  {lo} <= {hi}")?;
            }
        }
        if !self.signatures.is_empty() {
            f.write_str("signatures:\n")?;
            for sig in self.signatures.values() {
                writeln!(f, "  {sig}")?;
            }
        }
        match &self.payload {
            None => Ok(()),
            Some(Payload::Term(t)) => writeln!(f, "term: {t}"),
            Some(Payload::System(s)) => {
                f.write_str("solve:\n")?;
                for i in s {
                    writeln!(f, "  {i}")?;
                }
                Ok(())
            }
            Some(Payload::Subtype(l, r)) => writeln!(f, "subtype: {l}, {r}"),
        }
    }
}
