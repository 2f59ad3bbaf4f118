//! Propositional formulas: AST, parser, canonical printer, evaluation.
//!
//! Surface grammar (ASCII only):
//!
//! ```text
//! f := "T" | "F" | ident | "~" f | f "&" f | f "|" f | "(" f ")"
//! ```
//!
//! with precedence `~` > `&` > `|`, both binary operators left
//! associative. Identifiers are `[A-Za-z_][A-Za-z0-9_]*` minus the
//! reserved constants `T` and `F`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Prop, Valuation};

/// Propositional formula over named atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    /// Atom names, in first-occurrence order, without duplicates.
    pub fn atoms(&self) -> Vec<&str> {
        fn walk<'f>(f: &'f Formula, out: &mut Vec<&'f str>) {
            match f {
                Formula::Top | Formula::Bottom => {}
                Formula::Atom(name) => {
                    if !out.contains(&name.as_str()) {
                        out.push(name);
                    }
                }
                Formula::Not(g) => walk(g, out),
                Formula::And(g, h) | Formula::Or(g, h) => {
                    walk(g, out);
                    walk(h, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 0,
            Formula::And(..) => 1,
            Formula::Not(..) => 2,
            Formula::Top | Formula::Bottom | Formula::Atom(_) => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Formula::Top => write!(f, "T")?,
            Formula::Bottom => write!(f, "F")?,
            Formula::Atom(name) => write!(f, "{}", name)?,
            Formula::Not(g) => {
                write!(f, "~")?;
                g.fmt_at(f, 2)?;
            }
            Formula::And(g, h) => {
                g.fmt_at(f, 1)?;
                write!(f, " & ")?;
                h.fmt_at(f, 2)?;
            }
            Formula::Or(g, h) => {
                g.fmt_at(f, 0)?;
                write!(f, " | ")?;
                h.fmt_at(f, 1)?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Canonical printer: minimal parentheses, `parse_formula` inverts it.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Syntax error with byte offset and the token set valid at that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: expected ", self.offset)?;
        for (i, tok) in self.expected.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", tok)?;
        }
        write!(f, ", found {}", self.found)
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Top,
    Bottom,
    Ident(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
    /// A character outside the grammar; reported with the parser's
    /// expectation set for its position.
    Bad(char),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Top => "'T'".into(),
            Token::Bottom => "'F'".into(),
            Token::Ident(name) => alloc::format!("identifier '{}'", name),
            Token::Not => "'~'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Bad(c) => alloc::format!("'{}'", c),
        }
    }
}

fn tokenize(text: &str) -> Vec<(usize, Token)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let token = match c {
            '~' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::LParen,
            ')' => Token::RParen,
            'A'..='Z' | 'a'..='z' | '_' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                i = j - 1;
                match word {
                    "T" => Token::Top,
                    "F" => Token::Bottom,
                    _ => Token::Ident(word.to_string()),
                }
            }
            other => {
                // Non-ASCII input is reported at its first byte.
                let ch = text[i..].chars().next().unwrap_or(other);
                i += ch.len_utf8() - 1;
                Token::Bad(ch)
            }
        };
        out.push((start, token));
        i += 1;
    }
    out
}

const PRIMARY_EXPECTED: [&str; 5] = ["'T'", "'F'", "identifier", "'~'", "'('"];

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    text_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (offset, found) = match self.peek() {
            Some((off, tok)) => (*off, tok.describe()),
            None => (self.text_len, "end of input".into()),
        };
        ParseError {
            offset,
            expected: expected.to_vec(),
            found,
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_and()?;
        while matches!(self.peek(), Some((_, Token::Or))) {
            self.pos += 1;
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_unary()?;
        while matches!(self.peek(), Some((_, Token::And))) {
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        if matches!(self.peek(), Some((_, Token::Not))) {
            self.pos += 1;
            let inner = self.parse_unary()?;
            return Ok(Formula::not(inner));
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        let formula = match self.peek() {
            Some((_, Token::Top)) => Formula::Top,
            Some((_, Token::Bottom)) => Formula::Bottom,
            Some((_, Token::Ident(name))) => Formula::Atom(name.clone()),
            Some((_, Token::LParen)) => {
                self.pos += 1;
                let inner = self.parse_or()?;
                if !matches!(self.peek(), Some((_, Token::RParen))) {
                    return Err(self.error(&["'&'", "'|'", "')'"]));
                }
                inner
            }
            _ => return Err(self.error(&PRIMARY_EXPECTED)),
        };
        self.pos += 1;
        Ok(formula)
    }
}

/// Parse a formula; rejects trailing input.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text),
        pos: 0,
        text_len: text.len(),
    };
    let formula = parser.parse_or()?;
    if parser.peek().is_some() {
        return Err(parser.error(&["'&'", "'|'", "end of input"]));
    }
    Ok(formula)
}

/// Evaluation error: an atom of the formula is not bound by the valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    UnboundAtom(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundAtom(name) => write!(f, "unbound atom '{}'", name),
        }
    }
}

impl core::error::Error for EvalError {}

/// The set of worlds in which the formula is true, by the standard
/// worldwise boolean semantics over the valuation's universe.
pub fn extension(formula: &Formula, valuation: &Valuation) -> Result<Prop, EvalError> {
    match formula {
        Formula::Top => Ok(valuation.universe().full()),
        Formula::Bottom => Ok(valuation.universe().empty()),
        Formula::Atom(name) => valuation
            .get(name)
            .ok_or_else(|| EvalError::UnboundAtom(name.clone())),
        Formula::Not(f) => Ok(extension(f, valuation)?.complement()),
        Formula::And(f, g) => Ok(extension(f, valuation)?.intersect(&extension(g, valuation)?)),
        Formula::Or(f, g) => Ok(extension(f, valuation)?.union(&extension(g, valuation)?)),
    }
}
