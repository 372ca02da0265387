use std::str::FromStr;

use thiserror::Error;

use super::Formula;

/// A syntax error, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("trailing input `{0}`")]
    TrailingInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Unary(char),
    Binary(char),
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::True => "tt".into(),
            Tok::False => "ff".into(),
            Tok::Not => "!".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Unary(c) | Tok::Binary(c) => c.to_string(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '1' => Tok::True,
            '0' => Tok::False,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let tok = match ident.as_str() {
                    "tt" => Tok::True,
                    "ff" => Tok::False,
                    "X" | "F" | "G" => Tok::Unary(ident.chars().next().unwrap()),
                    "U" | "W" | "R" | "M" => Tok::Binary(ident.chars().next().unwrap()),
                    _ => Tok::Ident(ident),
                };
                out.push((pos, tok));
                continue;
            }
            other => {
                let mut op = other.to_string();
                chars.next();
                // Swallow the rest of a multi-character operator such as `->`.
                while let Some(&(_, c)) = chars.peek() {
                    if "-<>=~^".contains(c) {
                        op.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownOperator(op),
                });
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind: match self.peek() {
                Some(t) => ParseErrorKind::UnexpectedToken(t.text()),
                None => ParseErrorKind::UnexpectedEnd,
            },
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.binary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            lhs = Formula::and(lhs, self.binary()?);
        }
        Ok(lhs)
    }

    fn binary(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        let Some(&Tok::Binary(op)) = self.peek() else {
            return Ok(lhs);
        };
        self.bump();
        let rhs = self.binary()?;
        Ok(match op {
            'U' => Formula::until(lhs, rhs),
            'W' => Formula::weak_until(lhs, rhs),
            'R' => Formula::release(lhs, rhs),
            _ => Formula::strong_release(lhs, rhs),
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                Ok(self.unary()?.negate())
            }
            Some(&Tok::Unary(op)) => {
                self.bump();
                let arg = self.unary()?;
                Ok(match op {
                    'X' => Formula::next(arg),
                    'F' => Formula::eventually(arg),
                    _ => Formula::globally(arg),
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::True) => {
                self.bump();
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.bump();
                Ok(Formula::False)
            }
            Some(Tok::Ident(name)) => {
                let f = Formula::atom(name.clone());
                self.bump();
                Ok(f)
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.disjunction()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(f)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse a formula, eliminating negation down to the atoms.
///
/// Grammar: atoms `[a-zA-Z_][a-zA-Z0-9_]*`, constants `tt`/`ff` (or `1`/`0`),
/// prefix `!`, `X`, `F`, `G`, infix `U`, `W`, `R`, `M` (right associative),
/// then `&`, then `|`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let f = p.disjunction()?;
    if p.at < p.toks.len() {
        let pos = p.pos();
        return Err(ParseError {
            pos,
            kind: ParseErrorKind::TrailingInput(text[pos..].trim().to_string()),
        });
    }
    Ok(f)
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}
