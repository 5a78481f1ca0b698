//! Ring element literals.
//!
//! ```text
//! element := "0" | dense | ["-"] term (("+" | "-") term)*
//! dense   := "[" coeff ("," coeff)* "]"
//! term    := [coeff "*"] label | coeff
//! coeff   := integer ["/" integer] ["mod" integer]
//! ```
//!
//! A bare coefficient term is only allowed as the whole literal `0`.
//! Repeated labels are summed. `k mod m` requires `m` to match the ring.

use std::sync::Arc;

use super::RingElement;
use crate::coeffs::{CoefficientRing, Scalar};
use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = chars[start..i].iter().collect();
            out.push(Tok::Num(
                t.parse()
                    .map_err(|_| Error::Parse(format!("number `{t}` is too large")))?,
            ));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/[],".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: CoefficientRing,
    quandle: &'a FiniteQuandle,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<i128> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(v),
            other => Err(Error::Parse(format!("expected a number, found {other:?}"))),
        }
    }

    /// Parses an unsigned coefficient; the caller applies the sign.
    fn coeff(&mut self) -> Result<Scalar> {
        let num = self.number()?;
        let den = if self.eat('/') { self.number()? } else { 1 };
        if self.peek() == Some(&Tok::Ident("mod".into())) {
            self.pos += 1;
            let m = self.number()?;
            if self.ring != CoefficientRing::IntegersMod(m as u64) {
                return Err(Error::Parse(format!(
                    "coefficient mod {m} does not belong to {}",
                    self.ring
                )));
            }
        }
        self.ring.from_fraction(num, den)
    }

    fn label(&mut self) -> Result<usize> {
        match self.next() {
            Some(Tok::Ident(l)) => self
                .quandle
                .index_of(&l)
                .ok_or_else(|| Error::Parse(format!("unknown label `{l}`"))),
            other => Err(Error::Parse(format!("expected a label, found {other:?}"))),
        }
    }

    fn signed_coeff(&mut self) -> Result<Scalar> {
        let neg = self.eat('-');
        let c = self.coeff()?;
        Ok(if neg { -c } else { c })
    }
}

pub fn parse_element(q: &Arc<FiniteQuandle>, ring: CoefficientRing, s: &str) -> Result<RingElement> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        ring,
        quandle: q,
    };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty element literal".into()));
    }
    if p.toks == [Tok::Num(0)] {
        return Ok(RingElement::zero(q, ring));
    }
    if p.eat('[') {
        let mut v = vec![p.signed_coeff()?];
        while p.eat(',') {
            v.push(p.signed_coeff()?);
        }
        if !p.eat(']') || p.peek().is_some() {
            return Err(Error::Parse("malformed dense literal".into()));
        }
        return RingElement::from_dense(q, ring, &v);
    }
    let mut acc = RingElement::zero(q, ring);
    let mut first = true;
    while p.peek().is_some() {
        let neg = if first {
            p.eat('-')
        } else if p.eat('+') {
            false
        } else if p.eat('-') {
            true
        } else {
            return Err(Error::Parse(format!("expected + or -, found {:?}", p.peek())));
        };
        first = false;
        let c = if matches!(p.peek(), Some(Tok::Num(_))) {
            let c = p.coeff()?;
            if !p.eat('*') {
                return Err(Error::Parse("expected `*` after a coefficient".into()));
            }
            c
        } else {
            ring.one()
        };
        let i = p.label()?;
        let term = RingElement::basis(q, ring, i)?.scale(if neg { -c } else { c })?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Arc<FiniteQuandle> {
        Arc::new(FiniteQuandle::dihedral(3).unwrap())
    }

    #[test]
    fn sparse_and_dense_forms_agree() {
        let q = r3();
        let z = CoefficientRing::Integers;
        let a = parse_element(&q, z, "2*a0 - a1 + 3*a2").unwrap();
        let b = parse_element(&q, z, "[2,-1,3]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "2*a0 - a1 + 3*a2");
    }

    #[test]
    fn zero_and_repeated_labels() {
        let q = r3();
        let z = CoefficientRing::Integers;
        assert!(parse_element(&q, z, "0").unwrap().is_zero());
        assert!(parse_element(&q, z, "a1 - a1").unwrap().is_zero());
        assert_eq!(parse_element(&q, z, "-a0 + 2*a0").unwrap().to_string(), "a0");
    }

    #[test]
    fn fractions_and_residues() {
        let q = r3();
        let u = parse_element(&q, CoefficientRing::Rationals, "1/2*a0 - 3/4*a2").unwrap();
        assert_eq!(u.to_string(), "1/2*a0 - 3/4*a2");
        let f5 = CoefficientRing::IntegersMod(5);
        let v = parse_element(&q, f5, "7 mod 5*a1 - a2").unwrap();
        assert_eq!(v.to_string(), "2*a1 + 4*a2");
        assert!(parse_element(&q, f5, "2 mod 7*a1").is_err());
        assert!(parse_element(&q, CoefficientRing::Integers, "1/2*a0").is_err());
    }

    #[test]
    fn custom_labels() {
        let q = Arc::new(FiniteQuandle::cs4());
        let u = parse_element(&q, CoefficientRing::Integers, "x + y - z").unwrap();
        assert_eq!(u.to_ints().unwrap(), vec![1, 1, -1]);
    }

    #[test]
    fn malformed_literals() {
        let q = r3();
        let z = CoefficientRing::Integers;
        for s in ["", "a3", "2 a0", "a0 +", "[1,2]", "[1,2,3", "3", "a0 * a1", "2*"] {
            assert!(parse_element(&q, z, s).is_err(), "{s}");
        }
    }
}
