use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::{Coeff, Polynomial};
use super::ring::Ring;
use super::PolyError;

/// Parses polynomial text in the canonical printing syntax (plus parentheses
/// and integer powers). Variable names must exist in `ring`.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        ring,
        tokens,
        pos: 0,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(PolyError::Syntax(format!(
            "unexpected trailing input in `{text}`"
        )));
    }
    Ok(out)
}

/// One polynomial per non-empty line; `#` starts a comment.
pub fn parse_polynomial_list(ring: &Ring, text: &str) -> Result<Vec<Polynomial>, PolyError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_polynomial(ring, l))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Coeff),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .expect("digits");
                let mut value = Coeff::from_integer(num);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(PolyError::Syntax("missing denominator".into()));
                    }
                    let den: BigInt = chars[dstart..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .expect("digits");
                    if den.is_zero() {
                        return Err(PolyError::Syntax("zero denominator".into()));
                    }
                    value /= Coeff::from_integer(den);
                }
                out.push(Token::Num(value));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                let mut name: String = chars[start..i].iter().collect();
                if i < chars.len() && chars[i] == '[' {
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == ']')
                        .ok_or_else(|| PolyError::Syntax("unclosed `[`".into()))?;
                    let inner: String = chars[i + 1..i + close]
                        .iter()
                        .filter(|c| !c.is_whitespace())
                        .collect();
                    name.push('[');
                    name.push_str(&inner);
                    name.push(']');
                    i += close + 1;
                }
                out.push(Token::Var(name));
            }
            other => return Err(PolyError::Syntax(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(&Token::Plus) {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) if n.is_integer() => {
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| PolyError::Syntax("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(PolyError::Syntax("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(c)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Token::Var(name)) => {
                self.pos += 1;
                let idx = self
                    .ring
                    .index_of_name(&name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
                Ok(Polynomial::var(self.ring, idx))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(PolyError::Syntax("expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Minus) => {
                self.pos += 1;
                let inner = self.power()?;
                Ok(-&inner)
            }
            other => Err(PolyError::Syntax(format!("unexpected token {other:?}"))),
        }
    }
}
