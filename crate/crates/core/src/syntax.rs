//! Text formats: printing linear combinations, and parsing scalars,
//! ξ-expressions, group-algebra elements and generator words.
//!
//! Scalars are Laurent expressions in `q` (generic) or `z` (root of unity):
//! integers, the variable with optional `^k`, `+ - *`, `/` by a nonzero
//! scalar and parentheses. Monomials are juxtaposed factors `x[r,s]`,
//! `xt[r,s]`, `chi[c_1,…,c_n]`, and `e1`, `f2`, `k3`, `k3^-1`.

use crate::error::{Error, Result};
use crate::scalars::{Mode, Scalar};
use crate::umod::Generator;

/// Prints `Σ c_i m_i` with monomials given as strings (empty for the unit
/// monomial). Terms are printed in the given order.
pub fn format_sum<'a>(terms: impl IntoIterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (idx, (mono, c)) in terms.into_iter().enumerate() {
        let (neg, body) = c.coefficient_parts();
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        match (body, mono.is_empty()) {
            (None, true) => out.push('1'),
            (None, false) => out.push_str(&mono),
            (Some(b), true) => out.push_str(&b),
            (Some(b), false) => {
                out.push_str(&b);
                out.push(' ');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One factor of a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Xi(usize, usize),
    TildeXi(usize, usize),
    Chi(Vec<i64>),
    Gen(Generator),
}

/// A parsed sum of `coefficient * monomial` terms.
pub type Expr = Vec<(Scalar, Vec<Atom>)>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: &'a Mode,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(s.as_bytes())
    }

    fn unsigned(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("number too large"))
    }

    fn signed(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = self.unsigned()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.unsigned()?;
        if v == 0 {
            return self.err("indices start at 1");
        }
        Ok(v as usize)
    }

    fn is_variable(&mut self) -> bool {
        let v = self.mode.variable().as_bytes()[0];
        if self.peek() != Some(v) {
            return false;
        }
        // `q`/`z` followed by an identifier character is not the variable
        !self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphabetic())
    }

    // scalar := term (('+'|'-') term)*
    fn scalar(&mut self) -> Result<Scalar> {
        let mut acc = if self.eat(b'-') { -self.scalar_term()? } else { self.scalar_term()? };
        loop {
            if self.eat(b'+') {
                acc += &self.scalar_term()?;
            } else if self.eat(b'-') {
                acc -= &self.scalar_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar_term(&mut self) -> Result<Scalar> {
        let mut acc = self.scalar_factor()?;
        loop {
            let before = self.pos;
            if self.eat(b'*') {
                if self.at_atom() {
                    self.pos = before;
                    return Ok(acc);
                }
                acc *= &self.scalar_factor()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.scalar_factor()?;
                match d.inv() {
                    Some(i) => acc *= &i,
                    None => return Err(Error::Parse { pos: at, msg: "division by zero".into() }),
                }
            } else if self.peek().is_some_and(|c| c == b'(' || c.is_ascii_digit()) || self.is_variable() {
                acc *= &self.scalar_factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar_factor(&mut self) -> Result<Scalar> {
        let base = if self.eat(b'(') {
            let s = self.scalar()?;
            self.expect(b')')?;
            s
        } else if self.is_variable() {
            self.pos += 1;
            self.mode.q()
        } else if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let v = self.unsigned()?;
            self.mode.big(v.into())
        } else {
            return self.err("expected a scalar");
        };
        if self.eat(b'^') {
            let e = self.signed()?;
            if e < 0 && base.is_zero() {
                return self.err("zero to a negative power");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn at_atom(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let gen = |p: u8| rest.first() == Some(&p) && rest.get(1).is_some_and(|c| c.is_ascii_digit());
        rest.starts_with(b"x[")
            || rest.starts_with(b"xt[")
            || rest.starts_with(b"chi[")
            || gen(b'e')
            || gen(b'f')
            || gen(b'k')
    }

    fn atom(&mut self) -> Result<Atom> {
        if self.starts_with("xt[") {
            self.pos += 3;
            let (r, s) = self.pair()?;
            return Ok(Atom::TildeXi(r, s));
        }
        if self.starts_with("x[") {
            self.pos += 2;
            let (r, s) = self.pair()?;
            return Ok(Atom::Xi(r, s));
        }
        if self.starts_with("chi[") {
            self.pos += 4;
            let mut coords = Vec::new();
            if !self.eat(b']') {
                loop {
                    coords.push(self.signed()?);
                    if self.eat(b']') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
            return Ok(Atom::Chi(coords));
        }
        let c = self.peek();
        self.pos += 1;
        let i = self.index()?;
        Ok(Atom::Gen(match c {
            Some(b'e') => Generator::E(i),
            Some(b'f') => Generator::F(i),
            _ => {
                if self.eat(b'^') {
                    match self.signed()? {
                        1 => Generator::K(i, 1),
                        -1 => Generator::K(i, -1),
                        _ => return self.err("only k^1 and k^-1 are supported"),
                    }
                } else {
                    Generator::K(i, 1)
                }
            }
        }))
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        let r = self.index()?;
        self.expect(b',')?;
        let s = self.index()?;
        self.expect(b']')?;
        Ok((r, s))
    }

    fn monomial(&mut self) -> Result<Vec<Atom>> {
        let mut atoms = Vec::new();
        while self.at_atom() {
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }

    // term := [scalar ['*']] monomial, where an empty monomial needs a scalar
    fn term(&mut self) -> Result<(Scalar, Vec<Atom>)> {
        if self.at_atom() {
            return Ok((self.mode.one(), self.monomial()?));
        }
        let c = self.scalar_term()?;
        self.eat(b'*');
        Ok((c, self.monomial()?))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut out = Vec::new();
        let mut neg = self.eat(b'-');
        loop {
            let (c, m) = self.term()?;
            out.push((if neg { -c } else { c }, m));
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(out)
    }
}

pub fn parse_scalar(src: &str, mode: &Mode) -> Result<Scalar> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, mode };
    let s = p.scalar()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(s)
}

pub fn parse_expr(src: &str, mode: &Mode) -> Result<Expr> {
    Parser { src: src.as_bytes(), pos: 0, mode }.expr()
}

/// A product of generators such as `"f1 e1 k2^-1"`; the empty string is `1`.
pub fn parse_generator_word(src: &str) -> Result<Vec<Generator>> {
    let mode = Mode::Generic;
    let mut p = Parser { src: src.as_bytes(), pos: 0, mode: &mode };
    let atoms = p.monomial()?;
    if p.peek().is_some() {
        return p.err("expected a generator");
    }
    Ok(atoms
        .into_iter()
        .map(|a| match a {
            Atom::Gen(g) => g,
            _ => unreachable!("only generators start with e, f, k"),
        })
        .collect())
}
