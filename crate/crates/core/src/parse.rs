//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' natural)?
//! base   := natural | identifier | '(' expr ')'
//! ```
//!
//! Products require an explicit `*`; juxtaposition is a syntax error.
//! Integer coefficients of any size are reduced mod p, which is never
//! an error.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use std::sync::Arc;

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(u64, usize),
    Ident(String, usize),
    Plus(usize),
    Minus(usize),
    Star(usize),
    Caret(usize),
    LParen(usize),
    RParen(usize),
    End(usize),
}

impl Token {
    fn pos(&self) -> usize {
        match self {
            Token::Int(_, p)
            | Token::Ident(_, p)
            | Token::Plus(p)
            | Token::Minus(p)
            | Token::Star(p)
            | Token::Caret(p)
            | Token::LParen(p)
            | Token::RParen(p)
            | Token::End(p) => *p,
        }
    }

    fn describe(&self) -> String {
        match self {
            Token::Int(n, _) => format!("integer `{n}`"),
            Token::Ident(s, _) => format!("identifier `{s}`"),
            Token::Plus(_) => "`+`".into(),
            Token::Minus(_) => "`-`".into(),
            Token::Star(_) => "`*`".into(),
            Token::Caret(_) => "`^`".into(),
            Token::LParen(_) => "`(`".into(),
            Token::RParen(_) => "`)`".into(),
            Token::End(_) => "end of input".into(),
        }
    }
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn next_token(&mut self) -> Result<Token> {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.input.len() {
            return Ok(Token::End(start));
        }
        let c = self.input[self.pos];
        self.pos += 1;
        match c {
            b'+' => Ok(Token::Plus(start)),
            b'-' => Ok(Token::Minus(start)),
            b'*' => Ok(Token::Star(start)),
            b'^' => Ok(Token::Caret(start)),
            b'(' => Ok(Token::LParen(start)),
            b')' => Ok(Token::RParen(start)),
            b'0'..=b'9' => {
                let mut value: u64 = (c - b'0') as u64;
                let mut overflowed = false;
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    let d = (self.input[self.pos] - b'0') as u64;
                    // Large literals are fine: keep the value mod 2^63
                    // territory is unnecessary, we only ever use it mod p,
                    // so reduce lazily against overflow.
                    value = match value.checked_mul(10).and_then(|v| v.checked_add(d)) {
                        Some(v) => v,
                        None => {
                            overflowed = true;
                            value
                        }
                    };
                    self.pos += 1;
                }
                if overflowed {
                    return Err(Error::parse(
                        start,
                        "integer literal too large (does not fit in 64 bits)",
                    ));
                }
                Ok(Token::Int(value, start))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.input[start..self.pos])
                    .expect("ascii substring")
                    .to_string();
                Ok(Token::Ident(s, start))
            }
            _ => Err(Error::parse(
                start,
                format!("unexpected character `{}`", c as char),
            )),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Token,
    ring: Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, ring: Arc<Ring>) -> Result<Self> {
        let mut lexer = Lexer::new(input);
        let lookahead = lexer.next_token()?;
        Ok(Parser {
            lexer,
            lookahead,
            ring,
        })
    }

    fn advance(&mut self) -> Result<Token> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.lookahead, next))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if matches!(self.lookahead, Token::Minus(_)) {
            self.advance()?;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lookahead {
                Token::Plus(_) => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Token::Minus(_) => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while matches!(self.lookahead, Token::Star(_)) {
            self.advance()?;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        // Juxtaposition like `2x` or `x y` is not part of the grammar.
        if matches!(self.lookahead, Token::Int(..) | Token::Ident(..)) {
            return Err(Error::parse(
                self.lookahead.pos(),
                format!(
                    "expected operator before {}; products need an explicit `*`",
                    self.lookahead.describe()
                ),
            ));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if matches!(self.lookahead, Token::Caret(_)) {
            self.advance()?;
            match self.advance()? {
                Token::Int(n, _) => {
                    if n > u32::MAX as u64 {
                        return Err(Error::ExponentOverflow(format!("exponent {n} too large")));
                    }
                    return base.pow(n);
                }
                other => {
                    return Err(Error::parse(
                        other.pos(),
                        format!("expected a non-negative integer exponent, found {}", other.describe()),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.advance()? {
            Token::Int(n, _) => Ok(Polynomial::constant(
                self.ring.clone(),
                n % self.ring.char_p().get(),
            )),
            Token::Ident(name, pos) => match self.ring.var_index(&name) {
                Some(i) => Polynomial::var(self.ring.clone(), i),
                None => Err(match Error::UnknownVariable(name) {
                    Error::UnknownVariable(n) => Error::parse(
                        pos,
                        format!(
                            "unknown variable `{n}` (ring is {})",
                            self.ring
                        ),
                    ),
                    e => e,
                }),
            },
            Token::LParen(_) => {
                let inner = self.expr()?;
                match self.advance()? {
                    Token::RParen(_) => Ok(inner),
                    other => Err(Error::parse(
                        other.pos(),
                        format!("expected `)`, found {}", other.describe()),
                    )),
                }
            }
            other => Err(Error::parse(
                other.pos(),
                format!("expected a term, found {}", other.describe()),
            )),
        }
    }
}

/// Parse a polynomial in the given ambient ring.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut parser = Parser::new(text, ring.clone())?;
    let poly = parser.expr()?;
    match parser.lookahead {
        Token::End(_) => Ok(poly),
        ref other => Err(Error::parse(
            other.pos(),
            format!("trailing input: {}", other.describe()),
        )),
    }
}

/// Parse a comma- or newline-separated list of polynomials.
pub fn parse_polynomials(texts: &[String], ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| parse_polynomial(t, ring)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
        Ring::make(p, vars).unwrap()
    }

    #[test]
    fn brenner_monsky_generator() {
        let r = ring(2, &["x", "y", "z", "t"]);
        let g = parse_polynomial("z^4+x*y*z^2+x^3*z+y^3*z+t*x^2*y^2", &r).unwrap();
        assert_eq!(g.terms().len(), 5);
        // print-then-parse is the identity on canonical forms
        let printed = g.to_string();
        assert_eq!(parse_polynomial(&printed, &r).unwrap(), g);
    }

    #[test]
    fn zero_and_coefficient_reduction() {
        let r = ring(3, &["x"]);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        // 3x + 2 = 2 over F_3; reduction is not an error
        assert_eq!(parse_polynomial("3*x + 2", &r).unwrap().to_string(), "2");
        assert_eq!(parse_polynomial("-1", &r).unwrap().to_string(), "2");
        assert_eq!(parse_polynomial("x - x", &r).unwrap().to_string(), "0");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = ring(2, &["x", "y"]);
        match parse_polynomial("x + ", &r) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_polynomial("x*?", &r) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        // juxtaposition is rejected
        assert!(parse_polynomial("2 x", &r).is_err());
        // unknown variable
        match parse_polynomial("x + w", &r) {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 4);
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parentheses_and_unary_minus() {
        let r = ring(5, &["x", "y"]);
        let f = parse_polynomial("-(x - y)^2 + x*y", &r).unwrap();
        // -(x-y)^2 + xy = -x^2 + 2xy - y^2 + xy = 4x^2 + 3xy + 4y^2 over F_5
        assert_eq!(f.to_string(), "4*x^2+3*x*y+4*y^2");
    }

    #[test]
    fn print_parse_round_trip_on_samples() {
        let r = ring(7, &["x", "y", "z"]);
        for s in [
            "x^2*y+3*z",
            "6*x^3+x*y*z+5",
            "z",
            "1",
            "x^4+x^3*y+x*y^3+y^4",
        ] {
            let f = parse_polynomial(s, &r).unwrap();
            assert_eq!(parse_polynomial(&f.to_string(), &r).unwrap(), f);
            assert_eq!(f.to_string(), s);
        }
    }
}
