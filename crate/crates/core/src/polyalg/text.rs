//! Plain-text polynomial syntax: `3*a1^2*b1 - b1*c1 + 7`.
//!
//! Terms are printed in descending monomial order. Coefficients are integers
//! (or `p/q` when a rational coefficient is not integral); a coefficient of
//! one is omitted.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

pub(crate) fn write_polynomial<F: Field>(p: &Polynomial<F>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let names = p.ring().names();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let (num, den) = p.field().to_fraction(c);
        let negative = num.is_negative();
        let abs = num.abs();
        match (idx, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let unit = abs.is_one() && den.is_one();
        let mut first = true;
        if !unit || m.is_one() {
            if den.is_one() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}/{den}")?;
            }
            first = false;
        }
        for (v, name) in names.iter().enumerate() {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
    }
    Ok(())
}

/// Parse a polynomial in the ring's variables.
pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, src: &str) -> Result<Polynomial<F>> {
    Parser { src: src.as_bytes(), pos: 0 }.polynomial(ring)
}

/// Parse an ideal: one generator per non-empty line; `#` starts a comment.
pub fn parse_generators<F: Field>(ring: &Arc<PolyRing<F>>, src: &str) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in src.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let p = parse_polynomial(ring, body).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
                other => other,
            })?;
            out.push(p);
        }
        offset += line.len();
    }
    Ok(out)
}

/// One generator per line, canonical form, trailing newline.
pub fn format_generators<F: Field>(gens: &[Polynomial<F>]) -> String {
    let mut s = String::new();
    for g in gens {
        s.push_str(&g.canonical().to_string());
        s.push('\n');
    }
    s
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().expect("digits"))
    }

    fn identifier(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_') {
            self.pos += 1;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        } else {
            None
        }
    }

    fn polynomial<F: Field>(&mut self, ring: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
        let field = ring.field();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = false;
            match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    sign = true;
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            }
            first = false;
            let (coeff, mono) = self.term(ring)?;
            let coeff = if sign { field.neg(&coeff) } else { coeff };
            terms.push((mono, coeff));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }

    fn term<F: Field>(&mut self, ring: &Arc<PolyRing<F>>) -> Result<(F::Elem, Monomial)> {
        let field = ring.field();
        let mut coeff = field.one();
        let mut exps = vec![0u32; ring.nvars()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = field.from_bigint(&self.integer()?);
                    let value = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return self.err("zero denominator");
                        }
                        let den = field.from_bigint(&den);
                        if field.is_zero(&den) {
                            return self.err("denominator vanishes in this field");
                        }
                        field.div(&num, &den)
                    } else {
                        num
                    };
                    coeff = field.mul(&coeff, &value);
                }
                Some(_) => {
                    let at = self.pos;
                    let Some(name) = self.identifier().map(str::to_owned) else {
                        return self.err("expected a coefficient or variable");
                    };
                    let v = ring
                        .var_index(&name)
                        .map_err(|_| Error::Parse { pos: at, msg: format!("unknown variable `{name}`") })?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let e = self.integer()?;
                        u32::try_from(e).or_else(|_| self.err("exponent too large"))?
                    } else {
                        1
                    };
                    exps[v] += e;
                }
                None => return self.err("expected a term"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Monomial::from_exponents(&exps)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{MonomialOrder, PrimeField, Rationals};

    #[test]
    fn prints_in_descending_order() {
        let r = PolyRing::new(Rationals, &["a1", "b1", "c1"], MonomialOrder::Grevlex).unwrap();
        let p = parse_polynomial(&r, "-b1*c1 + a1^2").unwrap();
        assert_eq!(p.to_string(), "a1^2 - b1*c1");
        let q = parse_polynomial(&r, "2*a1 - 3 + 1/2*c1^3").unwrap();
        assert_eq!(q.to_string(), "1/2*c1^3 + 2*a1 - 3");
        assert_eq!(q.canonical().to_string(), "c1^3 + 4*a1 - 6");
    }

    #[test]
    fn prime_field_prints_symmetric_representatives() {
        let r = PolyRing::new(PrimeField::new(5).unwrap(), &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let p = parse_polynomial(&r, "x*y - y^2 + 7").unwrap();
        assert_eq!(p.to_string(), "x*y - y^2 + 2");
    }

    #[test]
    fn rejects_garbage() {
        let r = PolyRing::new(Rationals, &["x"], MonomialOrder::Grevlex).unwrap();
        assert!(matches!(parse_polynomial(&r, "x + z"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&r, "x +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&r, ""), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&r, "x x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn generator_list_round_trip() {
        let r = PolyRing::new(Rationals, &["x", "y", "t"], MonomialOrder::Grevlex).unwrap();
        let gens = parse_generators(&r, "x - t\n\n# graph\ny - t^2\n").unwrap();
        assert_eq!(gens.len(), 2);
        let text = format_generators(&gens);
        assert_eq!(parse_generators(&r, &text).unwrap(), gens.iter().map(|g| g.canonical()).collect::<Vec<_>>());
    }
}
