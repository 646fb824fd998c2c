//! Finite group presentations: the text grammar, normalization and
//! validation.
//!
//! ```text
//! file      := "gens:" name+ ";" "rels:" [word ("," word)*] ";"?
//! word      := term+
//! term      := atom ("^" integer)?
//! atom      := name | "(" word ")" | "[" word "," word "]"
//! integer   := "-"? digit+
//! ```
//!
//! `[u,v]` expands to `u v u^-1 v^-1`. `#` starts a comment running to the
//! end of the line. Relators are freely and cyclically reduced on input.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::freewords::{cyclic_reduce, Letter, Word};

/// Upper bound on the length of any intermediate word built by the parser.
pub const MAX_WORD_LEN: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {index} (line {line}) is empty after reduction")]
    EmptyRelator { index: usize, line: usize },
    #[error("{line}:{col}: word exceeds {MAX_WORD_LEN} letters")]
    WordTooLong { line: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("generator name `{0}` is not an ASCII identifier")]
    BadName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses generator index {index} but only {n} generators exist")]
    GeneratorOutOfRange { relator: usize, index: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub index: usize,
    pub name: String,
}

/// `⟨s₁,…,sₙ | r₁,…,r_k⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = HashMap::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(PresentationError::BadName(name.clone()));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let n = names.len();
        for (relator, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.generator >= n) {
                return Err(PresentationError::GeneratorOutOfRange { relator, index: l.generator, n });
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Generators named `a`, `b`, … (then `x26`, `x27`, … past `z`).
    pub fn with_default_names(n: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let names =
            (0..n).map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") }).collect();
        Presentation::new(names, relators)
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.names.iter().enumerate().map(|(index, name)| Generator { index, name: name.clone() }).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display_with(&self.names).to_string()
    }

    /// Same presentation with each relator replaced by its cyclically reduced
    /// core.
    pub fn cyclically_reduced(&self) -> Presentation {
        Presentation { names: self.names.clone(), relators: self.relators.iter().map(|r| cyclic_reduce(r).0).collect() }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {};", self.names.join(" "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        writeln!(f, "rels: {};", rels.join(", "))
    }
}

/// Normalized text form; [`parse_presentation`] inverts it.
pub fn format_presentation(p: &Presentation) -> String {
    p.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Digits(String),
    Colon,
    Semi,
    Comma,
    Caret,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Digits(s) => write!(f, "`{s}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let single = match c {
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '^' => Some(Tok::Caret),
            '-' => Some(Tok::Minus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: tl, col: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line: tl, col: tc });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            out.push(Spanned { tok: Tok::Digits(chars[start..i].iter().collect()), line: tl, col: tc });
        } else {
            return Err(ParseError::Syntax { line: tl, col: tc, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    names: Option<&'a [String]>,
    eof: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(text: &str) -> Result<Self, ParseError> {
        let toks = tokenize(text)?;
        let last_line = text.lines().count().max(1);
        let last_col = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
        Ok(Parser { toks, pos: 0, names: None, eof: (last_line, last_col) })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.col)).unwrap_or(self.eof)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        let found = match self.peek() {
            Some(t) => format!("found {t}"),
            None => "found end of input".to_string(),
        };
        Err(ParseError::Syntax { line, col, message: format!("{}, {found}", message.into()) })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.syntax(format!("expected {tok}"))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                self.expect(Tok::Colon)
            }
            _ => self.syntax(format!("expected `{kw}:`")),
        }
    }

    fn check_len(&self, w: &Word, at: (usize, usize)) -> Result<(), ParseError> {
        if w.len() > MAX_WORD_LEN {
            Err(ParseError::WordTooLong { line: at.0, col: at.1 })
        } else {
            Ok(())
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut acc = Word::empty();
        let mut any = false;
        while matches!(self.peek(), Some(Tok::Ident(_) | Tok::LParen | Tok::LBracket)) {
            let at = self.here();
            let t = self.term()?;
            acc = acc.mul(&t);
            self.check_len(&acc, at)?;
            any = true;
        }
        if !any {
            return self.syntax("expected a word");
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let at = self.here();
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = match self.peek() {
            Some(Tok::Digits(d)) => d.clone(),
            _ => return self.syntax("expected an integer exponent"),
        };
        let (line, col) = self.here();
        self.pos += 1;
        let magnitude: i64 = digits.parse().map_err(|_| ParseError::Syntax {
            line,
            col,
            message: format!("exponent `{digits}` out of range"),
        })?;
        let e = if negative { -magnitude } else { magnitude };
        // Bound the expansion before materializing it.
        if base.len().saturating_mul(e.unsigned_abs() as usize) > MAX_WORD_LEN.saturating_mul(2) {
            return Err(ParseError::WordTooLong { line: at.0, col: at.1 });
        }
        let w = base.pow(e);
        self.check_len(&w, at)?;
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let names = self.names.expect("generator names set before parsing words");
                match names.iter().position(|n| *n == name) {
                    Some(g) => Ok(Word::new([Letter::pos(g)])),
                    None => Err(ParseError::UnknownGenerator { line, col, name }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                Ok(w)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::Comma)?;
                let v = self.word()?;
                self.expect(Tok::RBracket)?;
                Ok(u.mul(&v).mul(&u.inverse()).mul(&v.inverse()))
            }
            _ => self.syntax("expected a generator, `(` or `[`"),
        }
    }
}

/// Parses the presentation grammar. Relators come back freely and cyclically
/// reduced; a relator that reduces to the empty word is an error.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut p = Parser::new(text)?;
    p.keyword("gens")?;
    let mut names = Vec::new();
    while let Some(Tok::Ident(name)) = p.peek().cloned() {
        if names.contains(&name) {
            return Err(ParseError::DuplicateGenerator(name));
        }
        names.push(name);
        p.pos += 1;
    }
    if names.is_empty() {
        return p.syntax("expected at least one generator name");
    }
    p.expect(Tok::Semi)?;
    p.keyword("rels")?;
    p.names = Some(&names);

    let mut relators = Vec::new();
    if !matches!(p.peek(), None | Some(Tok::Semi)) {
        loop {
            let (line, _) = p.here();
            let w = p.word()?;
            let (core, _) = cyclic_reduce(&w);
            if core.is_empty() {
                return Err(ParseError::EmptyRelator { index: relators.len() + 1, line });
            }
            relators.push(core);
            if p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    if p.peek() == Some(&Tok::Semi) {
        p.pos += 1;
    }
    if p.peek().is_some() {
        return p.syntax("expected end of input");
    }
    drop(p);
    Ok(Presentation::new(names, relators).expect("parser only produces in-range identifiers"))
}

/// Parses a single word over the generators of `p` (freely reduced, not
/// cyclically reduced).
pub fn parse_word(text: &str, p: &Presentation) -> Result<Word, ParseError> {
    let mut parser = Parser::new(text)?;
    parser.names = Some(p.names());
    let w = parser.word()?;
    if parser.peek().is_some() {
        return parser.syntax("expected end of word");
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    pub message: String,
    /// 0-based relator index the issue is attached to.
    pub relator: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }
}

fn is_cyclic_permutation(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && (0..u.len()).any(|i| &u.rotate(i) == v)
}

/// Checks the hypotheses the K-theory formulas rely on. Issues are listed in
/// relator order.
pub fn validate(p: &Presentation) -> ValidationReport {
    let mut issues = Vec::new();
    let rels = p.relators();
    for (j, r) in rels.iter().enumerate() {
        let mut push = |severity, message: String| issues.push(Issue { severity, message, relator: Some(j) });
        if r.is_empty() {
            push(Severity::Error, format!("relator {} is empty", j + 1));
            continue;
        }
        if !r.is_cyclically_reduced() {
            push(Severity::Error, format!("relator {} is not cyclically reduced", j + 1));
        }
        let inv = r.inverse();
        for (i, s) in rels[..j].iter().enumerate() {
            if s == r {
                push(Severity::Error, format!("relator {} duplicates relator {}", j + 1, i + 1));
            } else if *s == inv {
                push(Severity::Error, format!("relator {} is the inverse of relator {}", j + 1, i + 1));
            } else if is_cyclic_permutation(s, r) || is_cyclic_permutation(s, &inv) {
                push(Severity::Warning, format!("relators {} and {} share a symmetrized class", i + 1, j + 1));
            }
        }
    }
    let ok = !issues.iter().any(|i| i.severity == Severity::Error);
    ValidationReport { ok, issues }
}
