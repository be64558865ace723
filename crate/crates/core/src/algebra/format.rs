//! Text and JSON forms of polynomials.
//!
//! Text form: terms in display order joined by ` + ` / ` - `, each term an
//! optional integer followed by `*`-separated factors such as `x1^2`, `a3`,
//! `q1`. The parser also accepts parentheses, powers of subexpressions and
//! the Unicode minus sign.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly::{x_leading_cmp, Family, Monomial, Polynomial, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {token:?} at position {position}: {message}")]
    Unexpected { position: usize, token: String, message: &'static str },
    #[error("unexpected end of input: {0}")]
    Eof(&'static str),
    #[error("invalid JSON polynomial: {0}")]
    Json(String),
}

fn exponent_vector(m: &Monomial, family: Family) -> Vec<u32> {
    let mut out = Vec::new();
    for &(v, e) in m.pairs() {
        if v.family == family {
            let i = v.index as usize;
            if out.len() < i {
                out.resize(i, 0);
            }
            out[i - 1] = e;
        }
    }
    out
}

fn lex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let len = a.len().max(b.len());
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

/// Display order: total degree descending, then the `x`-leading order
/// descending, then the `a`- and `q`-exponents lexicographically with
/// lower indices first.
pub fn display_cmp(m: &Monomial, n: &Monomial) -> Ordering {
    n.degree()
        .cmp(&m.degree())
        .then_with(|| x_leading_cmp(n, m))
        .then_with(|| lex_desc(&exponent_vector(m, Family::A), &exponent_vector(n, Family::A)))
        .then_with(|| lex_desc(&exponent_vector(m, Family::Q), &exponent_vector(n, Family::Q)))
}

/// Terms of `f` sorted in display order.
pub fn display_terms(f: &Polynomial) -> Vec<(&Monomial, &BigInt)> {
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by(|a, b| display_cmp(a.0, b.0));
    terms
}

fn write_monomial(out: &mut String, m: &Monomial) {
    let mut first = true;
    for family in [Family::X, Family::A, Family::Q] {
        for &(v, e) in m.pairs().iter().filter(|p| p.0.family == family) {
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&v.to_string());
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

pub fn format_text(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in display_terms(f).into_iter().enumerate() {
        let negative = c.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            write_monomial(&mut out, m);
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_text(self))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut s = String::new();
        write_monomial(&mut s, self);
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let single = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Some(Token::Plus),
            '-' | '\u{2212}' => Some(Token::Minus),
            '*' | '\u{00b7}' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((pos, Token::Int(text.parse().expect("digits parse as integer"))));
            continue;
        }
        let family = match ch {
            'x' => Family::X,
            'a' => Family::A,
            'q' => Family::Q,
            _ => {
                return Err(ParseError::Unexpected {
                    position: pos,
                    token: ch.to_string(),
                    message: "expected a term",
                })
            }
        };
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].1.is_ascii_digit() {
            i += 1;
        }
        let digits: String = chars[start..i].iter().map(|c| c.1).collect();
        let index: u32 = match digits.parse() {
            Ok(v) if v >= 1 => v,
            _ => {
                let token: String = chars[start - 1..i].iter().map(|c| c.1).collect();
                return Err(ParseError::Unexpected {
                    position: pos,
                    token,
                    message: "variable needs a positive index",
                });
            }
        };
        out.push((pos, Token::Var(Variable::new(family, index))));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn unexpected(&self, message: &'static str) -> ParseError {
        match self.tokens.get(self.pos) {
            None => ParseError::Eof(message),
            Some((p, t)) => ParseError::Unexpected {
                position: *p,
                token: match t {
                    Token::Int(i) => i.to_string(),
                    Token::Var(v) => v.to_string(),
                    Token::Plus => "+".into(),
                    Token::Minus => "-".into(),
                    Token::Star => "*".into(),
                    Token::Caret => "^".into(),
                    Token::LParen => "(".into(),
                    Token::RParen => ")".into(),
                },
                message,
            },
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc += self.product()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc -= self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Token::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| self.unexpected("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.unexpected("expected an exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(i)) => {
                self.pos += 1;
                Ok(Polynomial::constant(i))
            }
            Some(Token::Var(v)) => {
                self.pos += 1;
                Ok(Polynomial::var(v))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("expected ')'")),
                }
            }
            _ => Err(self.unexpected("expected a number, variable or '('")),
        }
    }
}

pub fn parse_text(s: &str) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let f = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(p.unexpected("trailing input"));
    }
    Ok(f)
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    c: String,
    #[serde(default)]
    x: Vec<(u32, u32)>,
    #[serde(default)]
    a: Vec<(u32, u32)>,
    #[serde(default)]
    q: Vec<(u32, u32)>,
}

fn to_json_terms(f: &Polynomial) -> Vec<JsonTerm> {
    display_terms(f)
        .into_iter()
        .map(|(m, c)| {
            let pick = |fam: Family| -> Vec<(u32, u32)> {
                m.pairs().iter().filter(|p| p.0.family == fam).map(|p| (p.0.index, p.1)).collect()
            };
            JsonTerm { c: c.to_string(), x: pick(Family::X), a: pick(Family::A), q: pick(Family::Q) }
        })
        .collect()
}

pub fn to_json_value(f: &Polynomial) -> serde_json::Value {
    serde_json::to_value(to_json_terms(f)).expect("polynomial terms serialize")
}

pub fn format_json(f: &Polynomial) -> String {
    serde_json::to_string(&to_json_terms(f)).expect("polynomial terms serialize")
}

pub fn from_json_value(v: &serde_json::Value) -> Result<Polynomial, ParseError> {
    let terms: Vec<JsonTerm> = serde_json::from_value(v.clone()).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c: BigInt = t.c.trim().parse().map_err(|_| ParseError::Json(format!("bad coefficient {:?}", t.c)))?;
        if c.is_zero() {
            return Err(ParseError::Json("zero coefficient".into()));
        }
        let mut pairs = Vec::new();
        for (fam, list) in [(Family::X, t.x), (Family::A, t.a), (Family::Q, t.q)] {
            for (i, e) in list {
                if i == 0 || e == 0 {
                    return Err(ParseError::Json(format!("bad factor [{i},{e}]")));
                }
                pairs.push((Variable::new(fam, i), e));
            }
        }
        out.push((Monomial::from_pairs(pairs), c));
    }
    Ok(Polynomial::from_terms(out))
}

pub fn parse_json(s: &str) -> Result<Polynomial, ParseError> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
    from_json_value(&v)
}
