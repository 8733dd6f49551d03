//! Recursive-descent parser for the surface syntax:
//!
//! ```text
//! expr    := shuffle
//! shuffle := union ('&' union)*
//! union   := concat ('+' concat)*
//! concat  := postfix ('.'? postfix)*
//! postfix := atom ('?' | '*' | '[' num ',' (num | 'inf') ']')*
//! atom    := 'a'..'z' | 'eps' | 'empty' | '(' expr ')'
//! ```
//!
//! Keywords win over letters by maximal munch, so `eps` is ε; write `e p s`
//! or `e.p.s` for the three-letter word.

use super::{BoundsError, Expr, ExtExpr, Letter, Upper};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("number too large")]
    NumberTooLarge,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

pub fn parse(text: &str) -> Result<ExtExpr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.shuffle()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(p.err_at(p.pos, ParseErrorKind::UnexpectedChar(c as char))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err_at(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { offset, kind }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&mut self, what: &'static str) -> ParseError {
        match self.peek() {
            None => self.err_at(self.pos, ParseErrorKind::UnexpectedEnd),
            Some(_) => self.err_at(self.pos, ParseErrorKind::Expected(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn shuffle(&mut self) -> Result<ExtExpr, ParseError> {
        let mut e = self.union()?;
        while self.eat(b'&') {
            e = Expr::shuffle(e, self.union()?);
        }
        Ok(e)
    }

    fn union(&mut self) -> Result<ExtExpr, ParseError> {
        let mut e = self.concat()?;
        while self.eat(b'+') {
            e = Expr::union(e, self.concat()?);
        }
        Ok(e)
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == b'(' || c.is_ascii_lowercase())
    }

    fn concat(&mut self) -> Result<ExtExpr, ParseError> {
        let mut e = self.postfix()?;
        loop {
            if self.eat(b'.') || self.starts_atom() {
                e = Expr::concat(e, self.postfix()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn postfix(&mut self) -> Result<ExtExpr, ParseError> {
        let mut e = self.atom()?;
        loop {
            if self.eat(b'?') {
                e = Expr::opt(e);
            } else if self.eat(b'*') {
                e = Expr::star(e);
            } else if self.peek() == Some(b'[') {
                let start = self.pos;
                self.pos += 1;
                let lo = self.number()?;
                self.expect(b',', "','")?;
                let hi = if self.keyword("inf") { Upper::Inf } else { Upper::Fin(self.number()?) };
                self.expect(b']', "']'")?;
                e = Expr::try_counter(e, lo, hi).map_err(|b| self.err_at(start, b.into()))?;
            } else {
                return Ok(e);
            }
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err_at(start, ParseErrorKind::NumberTooLarge))
    }

    fn atom(&mut self) -> Result<ExtExpr, ParseError> {
        match self.peek() {
            None => Err(self.err_at(self.pos, ParseErrorKind::UnexpectedEnd)),
            Some(b'(') => {
                self.pos += 1;
                let e = self.shuffle()?;
                self.expect(b')', "')'")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_lowercase() => {
                if self.keyword("empty") {
                    Ok(Expr::Empty)
                } else if self.keyword("eps") {
                    Ok(Expr::Epsilon)
                } else {
                    self.pos += 1;
                    Ok(Expr::Sym(Letter::from_char(c as char).expect("lowercase")))
                }
            }
            Some(_) => {
                let c = std::str::from_utf8(&self.src[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('\u{fffd}');
                Err(self.err_at(self.pos, ParseErrorKind::UnexpectedChar(c)))
            }
        }
    }
}
