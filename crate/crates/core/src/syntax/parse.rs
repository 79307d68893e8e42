//! Recursive descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | "U" "(" formula ")" | primary
//! primary := "true" | "false" | IDENT
//!          | "Khm" "(" formula "," formula "," formula ")"
//!          | "Kh" "(" formula "," formula ")"
//!          | "(" formula ")"
//! ```

use std::fmt;

use thiserror::Error;

use super::Formula;

/// Malformed formula text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Comma,
    True,
    False,
    U,
    Kh,
    Khm,
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Not => "`!`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Imp => "`->`",
            Tok::Iff => "`<->`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::True => "`true`",
            Tok::False => "`false`",
            Tok::U => "`U`",
            Tok::Kh => "`Kh`",
            Tok::Khm => "`Khm`",
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'!' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Imp
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "U" => Tok::U,
                    "Kh" => Tok::Kh,
                    "Khm" => Tok::Khm,
                    w if c.is_ascii_lowercase() => Tok::Ident(w.to_string()),
                    w => {
                        return Err(SyntaxError {
                            offset: start,
                            expected: vec!["formula".into()],
                            found: format!("`{w}`"),
                        })
                    }
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError {
                    offset: start,
                    expected: vec!["formula".into()],
                    found: format!("`{ch}`"),
                });
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

/// Parses a formula, desugaring `|`, `->`, `<->` and `Kh`.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let f = parser.formula()?;
    parser.expect(Tok::Eof, &["`&`", "`|`", "`->`", "`<->`", "end of input"])?;
    Ok(f)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].0.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<(), SyntaxError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::U => {
                self.bump();
                self.expect(Tok::LParen, &["`(`"])?;
                let inner = self.formula()?;
                self.expect(Tok::RParen, &["`)`"])?;
                Ok(Formula::univ(inner))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::Khm => {
                self.bump();
                self.expect(Tok::LParen, &["`(`"])?;
                let pre = self.formula()?;
                self.expect(Tok::Comma, &["`,`"])?;
                let mid = self.formula()?;
                self.expect(Tok::Comma, &["`,`"])?;
                let goal = self.formula()?;
                self.expect(Tok::RParen, &["`)`"])?;
                Ok(Formula::khm(pre, mid, goal))
            }
            Tok::Kh => {
                self.bump();
                self.expect(Tok::LParen, &["`(`"])?;
                let pre = self.formula()?;
                self.expect(Tok::Comma, &["`,`"])?;
                let goal = self.formula()?;
                self.expect(Tok::RParen, &["`)`"])?;
                Ok(Formula::kh(pre, goal))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen, &["`)`"])?;
                Ok(inner)
            }
            _ => Err(self.error(&[
                "`!`", "`U`", "`true`", "`false`", "identifier", "`Khm`", "`Kh`", "`(`",
            ])),
        }
    }
}
