//! Lexer and recursive-descent parser for the agreement notation.
//!
//! The token stream is public so the query grammar in the enforcement layer
//! can reuse the same literals, identifiers and predicate parser instead of
//! re-lexing. Grammar:
//!
//! ```text
//! esa  := consumer "," pred ":" "[" ident ("," ident)* "]" "of" domain
//!         (".write")? ("," pred)?
//! pred := "true" | "false" | atom | pred ("and"|"or") pred | "(" pred ")"
//! atom := ident op literal
//! op   := "=" | "!=" | "<" | "<=" | ">" | ">="
//! ```
//!
//! Identifiers are case-sensitive; keywords (`and`, `or`, `of`, `true`,
//! `false`, `null`) are reserved in any letter case. A bare identifier in
//! literal position denotes a text value, so `purpose = research` and
//! `purpose = "research"` parse identically.

use std::collections::BTreeSet;

use crate::agreement::{Esa, EsaKind};
use crate::predicate::{CmpOp, Comparison, Predicate};
use crate::value::{Ident, Value};
use crate::EsaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    Dec(i128, u32),
    Op(CmpOp),
    Punct(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Int(_) | Tok::Dec(..) => "number".to_string(),
            Tok::Op(op) => format!("`{}`", op.symbol()),
            Tok::Punct(c) => format!("`{c}`"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

struct Lexer<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, chars: src.chars().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn err(&self, pos: Pos, msg: impl Into<String>) -> EsaError {
        EsaError::Parse { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn lex(mut self) -> Result<Vec<Spanned>, EsaError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let pos = self.pos();
            let Some(&c) = self.chars.peek() else { break };
            let tok = match c {
                ',' | ':' | '[' | ']' | '(' | ')' | '.' => {
                    // A dot is punctuation only outside numbers; numeric
                    // literals consume their own dot below.
                    self.bump();
                    Tok::Punct(c)
                }
                '"' => self.string(pos)?,
                '=' => {
                    self.bump();
                    Tok::Op(CmpOp::Eq)
                }
                '!' => {
                    self.bump();
                    if self.chars.peek() == Some(&'=') {
                        self.bump();
                        Tok::Op(CmpOp::Ne)
                    } else {
                        return Err(EsaError::UnknownOperator {
                            line: pos.line,
                            col: pos.col,
                            op: "!".to_string(),
                        });
                    }
                }
                '<' => {
                    self.bump();
                    if self.chars.peek() == Some(&'=') {
                        self.bump();
                        Tok::Op(CmpOp::Le)
                    } else {
                        Tok::Op(CmpOp::Lt)
                    }
                }
                '>' => {
                    self.bump();
                    if self.chars.peek() == Some(&'=') {
                        self.bump();
                        Tok::Op(CmpOp::Ge)
                    } else {
                        Tok::Op(CmpOp::Gt)
                    }
                }
                c if c.is_ascii_digit() || c == '-' => self.number(pos)?,
                c if c.is_alphabetic() || c == '_' => self.ident(),
                c => return Err(self.err(pos, format!("unexpected character `{c}`"))),
            };
            out.push(Spanned { tok, pos });
        }
        let _ = self.src;
        Ok(out)
    }

    fn string(&mut self, pos: Pos) -> Result<Tok, EsaError> {
        self.bump(); // opening quote
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err(pos, "unterminated string literal")),
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => s.push('"'),
                    Some('\\') => s.push('\\'),
                    other => {
                        return Err(self.err(
                            pos,
                            format!("invalid escape `\\{}`", other.map(String::from).unwrap_or_default()),
                        ))
                    }
                },
                Some(c) => s.push(c),
            }
        }
        Ok(Tok::Str(s))
    }

    fn number(&mut self, pos: Pos) -> Result<Tok, EsaError> {
        let mut text = String::new();
        if self.chars.peek() == Some(&'-') {
            text.push('-');
            self.bump();
            if !matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.err(pos, "expected digits after `-`"));
            }
        }
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            text.push(self.bump().unwrap());
        }
        let mut frac = String::new();
        if self.chars.peek() == Some(&'.') {
            // Only a fraction if a digit follows; `EHR.write` keeps its dot.
            let mut ahead = self.chars.clone();
            ahead.next();
            if matches!(ahead.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
                while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                    frac.push(self.bump().unwrap());
                }
            }
        }
        if frac.is_empty() {
            let n: i64 = text
                .parse()
                .map_err(|_| self.err(pos, format!("integer `{text}` out of range")))?;
            Ok(Tok::Int(n))
        } else {
            if frac.len() > 18 {
                return Err(self.err(pos, "more than 18 fractional digits"));
            }
            let mantissa: i128 = format!("{text}{frac}")
                .parse()
                .map_err(|_| self.err(pos, format!("decimal `{text}.{frac}` out of range")))?;
            Ok(Tok::Dec(mantissa, frac.len() as u32))
        }
    }

    fn ident(&mut self) -> Tok {
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(&c) if c.is_alphanumeric() || c == '_') {
            s.push(self.bump().unwrap());
        }
        Tok::Ident(s)
    }
}

/// Token cursor over a lexed input.
pub struct Cursor {
    toks: Vec<Spanned>,
    idx: usize,
    end: Pos,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Cursor, EsaError> {
        let toks = Lexer::new(text).lex()?;
        let end = toks
            .last()
            .map(|s| Pos { line: s.pos.line, col: s.pos.col + 1 })
            .unwrap_or(Pos { line: 1, col: 1 });
        Ok(Cursor { toks, idx: 0, end })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|s| &s.tok)
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.idx).map(|s| s.pos).unwrap_or(self.end)
    }

    pub fn advance(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|s| s.tok.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> EsaError {
        let pos = self.pos();
        EsaError::Parse { line: pos.line, col: pos.col, msg: msg.into() }
    }

    pub fn expect_end(&self) -> Result<(), EsaError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {}", t.describe()))),
        }
    }

    fn keyword_matches(tok: &Tok, kw: &str) -> bool {
        matches!(tok, Tok::Ident(s) if s.eq_ignore_ascii_case(kw))
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(t) if Self::keyword_matches(t, kw)) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), EsaError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            let found = self.peek().map(|t| t.describe()).unwrap_or_else(|| "end of input".into());
            Err(self.error(format!("expected `{kw}`, found {found}")))
        }
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Punct(p)) if *p == c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<(), EsaError> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            let found = self.peek().map(|t| t.describe()).unwrap_or_else(|| "end of input".into());
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    const KEYWORDS: [&'static str; 6] = ["and", "or", "of", "true", "false", "null"];

    /// A plain identifier; keywords are rejected.
    pub fn expect_ident(&mut self) -> Result<Ident, EsaError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                if Self::KEYWORDS.iter().any(|k| s.eq_ignore_ascii_case(k)) {
                    return Err(self.error(format!("`{s}` is a reserved word")));
                }
                let id = Ident::new(s.clone());
                self.idx += 1;
                Ok(id)
            }
            other => {
                let found = other.map(|t| t.describe()).unwrap_or_else(|| "end of input".into());
                Err(self.error(format!("expected identifier, found {found}")))
            }
        }
    }

    /// A literal: number, quoted string, `true`/`false`/`null`, or a bare
    /// identifier standing for a text value.
    pub fn expect_literal(&mut self) -> Result<Value, EsaError> {
        let v = match self.peek() {
            Some(Tok::Int(n)) => Value::Int(*n),
            Some(Tok::Dec(m, s)) => Value::decimal(*m, *s),
            Some(Tok::Str(s)) => Value::text(s.clone()),
            Some(Tok::Ident(s)) if s.eq_ignore_ascii_case("true") => Value::Bool(true),
            Some(Tok::Ident(s)) if s.eq_ignore_ascii_case("false") => Value::Bool(false),
            Some(Tok::Ident(s)) if s.eq_ignore_ascii_case("null") => Value::Null,
            Some(Tok::Ident(s)) if !Self::KEYWORDS.iter().any(|k| s.eq_ignore_ascii_case(k)) => {
                Value::text(s.clone())
            }
            other => {
                let found = other.map(|t| t.describe()).unwrap_or_else(|| "end of input".into());
                return Err(self.error(format!("expected literal, found {found}")));
            }
        };
        self.idx += 1;
        Ok(v)
    }

    /// Full predicate, greedy: consumes `and`/`or` chains until a token that
    /// cannot continue the predicate.
    pub fn parse_predicate(&mut self) -> Result<Predicate, EsaError> {
        let mut parts = vec![self.pred_and()?];
        while self.eat_keyword("or") {
            parts.push(self.pred_and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Predicate::Or(parts) })
    }

    fn pred_and(&mut self) -> Result<Predicate, EsaError> {
        let mut parts = vec![self.pred_primary()?];
        while self.eat_keyword("and") {
            parts.push(self.pred_primary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Predicate::And(parts) })
    }

    fn pred_primary(&mut self) -> Result<Predicate, EsaError> {
        if self.eat_keyword("true") {
            return Ok(Predicate::True);
        }
        if self.eat_keyword("false") {
            return Ok(Predicate::False);
        }
        if self.eat_punct('(') {
            let inner = self.parse_predicate()?;
            self.expect_punct(')')?;
            return Ok(inner);
        }
        let pos = self.pos();
        let field = self.expect_ident()?;
        let op = match self.advance() {
            Some(Tok::Op(op)) => op,
            other => {
                let found = other.map(|t| t.describe()).unwrap_or_else(|| "end of input".into());
                return Err(EsaError::Parse {
                    line: pos.line,
                    col: pos.col,
                    msg: format!("expected comparison operator, found {found}"),
                });
            }
        };
        let rhs = self.expect_literal()?;
        let atom = Comparison { field, op, rhs };
        atom.validate().map_err(|e| EsaError::Parse {
            line: pos.line,
            col: pos.col,
            msg: e.to_string(),
        })?;
        Ok(Predicate::Atom(atom))
    }
}

/// Parses a standalone predicate; the whole input must be consumed.
pub fn parse_predicate_str(text: &str) -> Result<Predicate, EsaError> {
    let mut cur = Cursor::new(text)?;
    let p = cur.parse_predicate()?;
    cur.expect_end()?;
    Ok(p)
}

/// Parses one agreement from its textual notation.
pub fn parse_esa(text: &str) -> Result<Esa, EsaError> {
    let mut cur = Cursor::new(text)?;

    let consumer = match cur.peek() {
        Some(Tok::Str(s)) => {
            let id = Ident::new(s.clone());
            cur.advance();
            id
        }
        _ => cur.expect_ident()?,
    };
    cur.expect_punct(',')?;
    let context_predicate = cur.parse_predicate()?;
    cur.expect_punct(':')?;

    cur.expect_punct('[')?;
    let mut fields = BTreeSet::new();
    fields.insert(cur.expect_ident()?);
    while cur.eat_punct(',') {
        fields.insert(cur.expect_ident()?);
    }
    cur.expect_punct(']')?;

    cur.expect_keyword("of")?;
    let domain = cur.expect_ident()?;

    let kind = if cur.eat_punct('.') {
        cur.expect_keyword("write")
            .map_err(|_| cur.error("expected `write` after `.`"))?;
        EsaKind::Write
    } else {
        EsaKind::Read
    };

    let row_predicate = if cur.eat_punct(',') {
        if kind == EsaKind::Write {
            return Err(EsaError::WriteRowPredicate);
        }
        cur.parse_predicate()?
    } else {
        Predicate::True
    };
    cur.expect_end()?;

    let esa = Esa { consumer, context_predicate, domain, fields, row_predicate, kind };
    esa.validate()?;
    Ok(esa)
}
