//! Element syntax: `3/2*X^2*Y - 1`, with `+ - * ^`, parentheses and
//! case-sensitive identifiers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push((st, Tok::Num(t.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push((st, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} at {i} in {s:?}")));
        }
    }
    Ok(out)
}

/// What the parser needs from a target algebra.
pub(crate) trait Target {
    type E: Clone;
    fn constant(&self, q: &BigRational) -> Result<Self::E>;
    fn ident(&self, name: &str) -> Result<Self::E>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn one(&self) -> Self::E;
}

struct Parser<'a, T: Target> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src: &'a str,
    tgt: &'a T,
}

impl<'a, T: Target> Parser<'a, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, what: &str) -> Error {
        let at = self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.src.len());
        Error::Parse(format!("{what} at {at} in {:?}", self.src))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<T::E> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.tgt.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.tgt.add(&acc, &self.tgt.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T::E> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let f = self.unary()?;
            acc = self.tgt.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<T::E> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.tgt.neg(&v));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<T::E> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek() {
                Some(Tok::Num(n)) => {
                    let n: u64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    n
                }
                _ => return Err(self.err("expected a natural exponent")),
            };
            let mut acc = self.tgt.one();
            for _ in 0..e {
                acc = self.tgt.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<T::E> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            if d.is_zero() {
                                return Err(self.err("zero denominator"));
                            }
                            q /= BigRational::from_integer(d);
                        }
                        _ => return Err(self.err("expected a denominator")),
                    }
                }
                self.tgt.constant(&q)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.tgt.ident(&name).map_err(|e| match e {
                    Error::Parse(m) => Error::Parse(format!("{m} in {:?}", self.src)),
                    other => other,
                })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

pub(crate) fn run<T: Target>(tgt: &T, s: &str) -> Result<T::E> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut p = Parser { toks, pos: 0, src: s, tgt };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl Target for Ring {
    type E = Elem;
    fn constant(&self, q: &BigRational) -> Result<Elem> {
        self.from_rational(q)
    }
    fn ident(&self, name: &str) -> Result<Elem> {
        self.var_by_name(name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::add(self, a, b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Ring::neg(self, a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::mul(self, a, b)
    }
    fn one(&self) -> Elem {
        Ring::one(self)
    }
}

pub fn parse_elem(r: &Ring, s: &str) -> Result<Elem> {
    run(r, s)
}

/// Dense univariate polynomials over a base ring, coefficients low to high.
struct Uni<'a> {
    base: &'a Ring,
    var: &'a str,
}

impl Uni<'_> {
    fn trim(&self, mut c: Vec<Elem>) -> Vec<Elem> {
        while c.len() > 1 && self.base.is_zero(c.last().unwrap()) {
            c.pop();
        }
        c
    }
}

impl Target for Uni<'_> {
    type E = Vec<Elem>;
    fn constant(&self, q: &BigRational) -> Result<Vec<Elem>> {
        Ok(vec![self.base.from_rational(q)?])
    }
    fn ident(&self, name: &str) -> Result<Vec<Elem>> {
        if name == self.var {
            Ok(vec![self.base.zero(), self.base.one()])
        } else {
            Ok(vec![self.base.ident(name)?])
        }
    }
    fn add(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let z = self.base.zero();
        let c = (0..n).map(|i| self.base.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
        self.trim(c)
    }
    fn neg(&self, a: &Vec<Elem>) -> Vec<Elem> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        let mut c = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] = self.base.add(&c[i + j], &self.base.mul(x, y));
            }
        }
        self.trim(c)
    }
    fn one(&self) -> Vec<Elem> {
        vec![self.base.one()]
    }
}

/// Parses a polynomial in `var` over `base`, returning coefficients low to high
/// with the top coefficient nonzero (or a single zero).
pub fn parse_univariate(base: &Ring, var: &str, s: &str) -> Result<Vec<Elem>> {
    run(&Uni { base, var }, s)
}

/// Renders a rational as `a` or `a/b`.
pub fn show_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
