//! Textual game expressions.
//!
//! ```text
//! expr  := term ("+" term)*
//! term  := "0" | "*" | INT | "I" | "S" | "Z" | "Ga"
//!        | "B(" IDX ")" | "s(" IDX ")"
//!        | "conj(" expr ")" | "adj(" expr ")" | "tilde(" expr "," IDX ")"
//!        | "{" list "|" list "}"
//! list  := ε | expr ("," expr)*
//! INT   := [1-9][0-9]*
//! IDX   := "0" | INT
//! ```
//!
//! Whitespace is ignored between tokens. `+` is the expanded disjunctive sum.

use std::fmt;

use thiserror::Error;

use crate::constructions::{Named, MAX_INDEX};
use crate::error::{Error as GameError, Result};
use crate::game::{GameId, Games};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameExpr {
    Named(Named),
    Braces(Vec<GameExpr>, Vec<GameExpr>),
    Sum(Vec<GameExpr>),
    Conj(Box<GameExpr>),
    Adj(Box<GameExpr>),
    Tilde(Box<GameExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected {token:?}"))
        }
    }

    fn expr(&mut self) -> Result<GameExpr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { GameExpr::Sum(terms) })
    }

    fn number(&mut self, allow_zero: bool) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.error("expected an integer");
        }
        let text = &self.src[start..start + digits];
        if text.len() > 1 && text.starts_with('0') || text == "0" && !allow_zero {
            return self.error("integers may not have leading zeros");
        }
        let value: u64 = text.parse().unwrap_or(u64::MAX);
        if value > u64::from(MAX_INDEX) {
            return self.error(format!("integer {text} exceeds the maximum {MAX_INDEX}"));
        }
        self.pos += digits;
        Ok(value as u32)
    }

    /// A name made of ASCII letters, without consuming it.
    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_alphabetic).count();
        &rest[..len]
    }

    fn list(&mut self, terminator: u8) -> Result<Vec<GameExpr>, ParseError> {
        let mut items = Vec::new();
        if self.peek() == Some(terminator) {
            return Ok(items);
        }
        items.push(self.expr()?);
        while self.eat(",") {
            items.push(self.expr()?);
        }
        Ok(items)
    }

    fn term(&mut self) -> Result<GameExpr, ParseError> {
        match self.peek() {
            None => self.error("unexpected end of input"),
            Some(b'*') => {
                self.pos += 1;
                Ok(GameExpr::Named(Named::Star))
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(GameExpr::Named(Named::Zero))
            }
            Some(c) if c.is_ascii_digit() => Ok(GameExpr::Named(Named::Int(self.number(false)?))),
            Some(b'{') => {
                self.pos += 1;
                let left = self.list(b'|')?;
                self.expect("|")?;
                let right = self.list(b'}')?;
                self.expect("}")?;
                Ok(GameExpr::Braces(left, right))
            }
            Some(_) => {
                let word = self.word();
                let start = self.pos;
                self.pos += word.len();
                let e = match word {
                    "I" => GameExpr::Named(Named::I),
                    "S" => GameExpr::Named(Named::S),
                    "Z" => GameExpr::Named(Named::Z),
                    "Ga" => GameExpr::Named(Named::Ga),
                    "B" | "s" => {
                        self.expect("(")?;
                        let i = self.number(true)?;
                        self.expect(")")?;
                        GameExpr::Named(if word == "B" { Named::B(i) } else { Named::Stars(i) })
                    }
                    "conj" | "adj" => {
                        self.expect("(")?;
                        let inner = Box::new(self.expr()?);
                        self.expect(")")?;
                        if word == "conj" { GameExpr::Conj(inner) } else { GameExpr::Adj(inner) }
                    }
                    "tilde" => {
                        self.expect("(")?;
                        let inner = Box::new(self.expr()?);
                        self.expect(",")?;
                        let i = self.number(true)?;
                        self.expect(")")?;
                        GameExpr::Tilde(inner, i)
                    }
                    _ => {
                        self.pos = start;
                        return self.error("expected a game");
                    }
                };
                Ok(e)
            }
        }
    }
}

pub fn parse(text: &str) -> Result<GameExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Braces,
    Named,
}

impl Games {
    pub fn elaborate(&self, expr: &GameExpr) -> Result<GameId> {
        Ok(match expr {
            GameExpr::Named(n) => self.named(*n)?,
            GameExpr::Braces(l, r) => {
                let left = l.iter().map(|e| self.elaborate(e)).collect::<Result<Vec<_>>>()?;
                let right = r.iter().map(|e| self.elaborate(e)).collect::<Result<Vec<_>>>()?;
                self.intern_vec(left, right)
            }
            GameExpr::Sum(parts) => {
                let ids = parts.iter().map(|e| self.elaborate(e)).collect::<Result<Vec<_>>>()?;
                self.sum_all(ids)
            }
            GameExpr::Conj(e) => self.conjugate(self.elaborate(e)?),
            GameExpr::Adj(e) => self.adjoint(self.elaborate(e)?),
            GameExpr::Tilde(e, i) => self.tilde(self.elaborate(e)?, *i)?,
        })
    }

    /// Parses and elaborates in one step.
    pub fn parse_game(&self, text: &str) -> Result<GameId> {
        let expr = parse(text).map_err(GameError::from)?;
        self.elaborate(&expr)
    }

    /// Prints `g`. Options are listed by birthday, then by their printed form,
    /// so the text does not depend on interning order.
    pub fn print(&self, g: GameId, style: Style) -> String {
        let names = match style {
            Style::Braces => Vec::new(),
            Style::Named => self.name_table(),
        };
        let mut out = String::new();
        self.print_into(g, &names, &mut out);
        out
    }

    pub fn braces(&self, g: GameId) -> String {
        self.print(g, Style::Braces)
    }

    fn name_table(&self) -> Vec<(GameId, String)> {
        let mut names = vec![
            Named::Zero,
            Named::Star,
            Named::I,
            Named::S,
            Named::Z,
            Named::Ga,
        ];
        names.extend((1..=4).map(Named::Int));
        names.extend((1..=3).map(Named::B));
        names.extend((2..=6).map(Named::Stars));
        let mut table: Vec<(GameId, String)> = Vec::new();
        for n in names {
            let id = self.named(n).expect("small indices are in range");
            if !table.iter().any(|(t, _)| *t == id) {
                table.push((id, n.to_string()));
            }
        }
        table
    }

    fn print_into(&self, g: GameId, names: &[(GameId, String)], out: &mut String) {
        if let Some((_, name)) = names.iter().find(|(id, _)| *id == g) {
            out.push_str(name);
            return;
        }
        if g == Games::ZERO {
            out.push('0');
            return;
        }
        let side = |opts: &[GameId]| {
            let mut printed: Vec<(u32, String)> = opts
                .iter()
                .map(|&o| {
                    let mut s = String::new();
                    self.print_into(o, names, &mut s);
                    (self.birthday(o), s)
                })
                .collect();
            printed.sort();
            printed.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(",")
        };
        out.push('{');
        out.push_str(&side(self.left(g)));
        out.push('|');
        out.push_str(&side(self.right(g)));
        out.push('}');
    }
}

impl fmt::Display for GameExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, items: &[GameExpr], sep: &str| {
            for (k, e) in items.iter().enumerate() {
                if k > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        match self {
            GameExpr::Named(n) => write!(f, "{n}"),
            GameExpr::Braces(l, r) => {
                f.write_str("{")?;
                join(f, l, ",")?;
                f.write_str("|")?;
                join(f, r, ",")?;
                f.write_str("}")
            }
            GameExpr::Sum(parts) => join(f, parts, "+"),
            GameExpr::Conj(e) => write!(f, "conj({e})"),
            GameExpr::Adj(e) => write!(f, "adj({e})"),
            GameExpr::Tilde(e, i) => write!(f, "tilde({e},{i})"),
        }
    }
}
