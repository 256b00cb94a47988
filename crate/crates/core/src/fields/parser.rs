//! Recursive-descent parser for field expressions.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?
//! exponent := unary            (must be free of coordinates; folded to a number)
//! atom     := number | ident | call | "(" expr ")"
//! call     := ("exp" | "log" | "sqrt") "(" expr ")" | ("znorm2" | "gnorm4") ("(" ")")?
//! ```
//!
//! `^` binds tighter than unary minus (`-x1^2` is `-(x1^2)`) and is
//! right-associative. The constants `Q`, `QM2` and `QP2` stand for `2n + 2`,
//! `2n` and `2n + 4`.

use crate::error::{Error, Result};
use crate::fields::expr::{BinOp, Coord, Expr, Func};

pub fn parse_field(text: &str, n: usize) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0, n };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let start = self.pos;
        let exponent = self.unary()?;
        if !exponent.is_constant() {
            return Err(Error::Syntax {
                offset: start,
                message: "exponent must not depend on coordinates".into(),
            });
        }
        let r = exponent.eval_value(&vec![0.0; 2 * self.n + 1]).map_err(|_| Error::Syntax {
            offset: start,
            message: "exponent is not a finite number".into(),
        })?;
        if !r.is_finite() {
            return Err(Error::Syntax { offset: start, message: "exponent is not finite".into() });
        }
        Ok(base.pow(r))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.ident(),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        let digits = |end: &mut usize| {
            while *end < bytes.len() && bytes[*end].is_ascii_digit() {
                *end += 1;
            }
        };
        digits(&mut end);
        if end < bytes.len() && bytes[end] == b'.' {
            end += 1;
            digits(&mut end);
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut e = end + 1;
            if e < bytes.len() && (bytes[e] == b'+' || bytes[e] == b'-') {
                e += 1;
            }
            if e < bytes.len() && bytes[e].is_ascii_digit() {
                end = e;
                digits(&mut end);
            }
        }
        let text = &self.src[start..end];
        let v: f64 = text.parse().map_err(|_| self.error("malformed number"))?;
        if !v.is_finite() {
            return Err(self.error("number out of range"));
        }
        self.pos = end;
        Ok(Expr::Num(v))
    }

    fn ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        let end = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(self.src.len(), |k| start + k);
        let name = &self.src[start..end];
        self.pos = end;
        let q = (2 * self.n + 2) as f64;
        let func = match name {
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sqrt" => Some(Func::Sqrt),
            _ => None,
        };
        if let Some(f) = func {
            self.expect('(')?;
            let arg = self.expr()?;
            self.expect(')')?;
            return Ok(Expr::call(f, arg));
        }
        let e = match name {
            "znorm2" | "gnorm4" => {
                if self.eat('(') {
                    self.expect(')')?;
                }
                if name == "znorm2" {
                    Expr::ZNorm2
                } else {
                    Expr::GNorm4
                }
            }
            "t" => Expr::Var(Coord::T),
            "Q" => Expr::Num(q),
            "QM2" => Expr::Num(q - 2.0),
            "QP2" => Expr::Num(q + 2.0),
            _ => match self.coordinate(name) {
                Some(c) => Expr::Var(c),
                None => {
                    self.pos = start;
                    return Err(Error::UnknownIdentifier(name.to_string()));
                }
            },
        };
        Ok(e)
    }

    fn coordinate(&self, name: &str) -> Option<Coord> {
        let (head, idx) = name.split_at(1);
        if idx.is_empty() || idx.starts_with('0') || !idx.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let i: usize = idx.parse().ok()?;
        if i == 0 || i > self.n {
            return None;
        }
        match head {
            "x" => Some(Coord::X(i - 1)),
            "y" => Some(Coord::Y(i - 1)),
            _ => None,
        }
    }
}
