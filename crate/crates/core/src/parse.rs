//! Text form of polynomials.
//!
//! ```text
//! polynomial  := term (('+' | '-') term)*
//! term        := [sign] [coefficient '*'] factor ('*' factor)* | [sign] coefficient
//! factor      := varname ['^' positive-integer]
//! coefficient := integer | integer '/' positive-integer     (fractions over qq only)
//! ```
//!
//! Whitespace is insignificant. The printer emits terms in the ring's
//! canonical order, so `parse(print(p)) == p`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

struct Parser<'a, K: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing<K>>,
}

impl<'a, K: Field> Parser<'a, K> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
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

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string parses"))
    }

    fn coefficient(&mut self) -> Result<(BigInt, BigInt)> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            if self.ring.field().spec() != FieldSpec::Rationals {
                return self.err("fractional coefficients require the rational field");
            }
            self.pos += 1;
            let den = self.digits()?;
            if den == BigInt::from(0) {
                return self.err("zero denominator");
            }
            return Ok((num, den));
        }
        Ok((num, BigInt::one()))
    }

    fn factor(&mut self, exps: &mut [u16]) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return self.err("expected a variable name"),
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e: u32 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.digits()?;
            e = match u32::try_from(n) {
                Ok(v) if v >= 1 && v <= u16::MAX as u32 => v,
                _ => {
                    self.pos = at;
                    return self.err("exponent must be a positive integer below 65536");
                }
            };
        }
        let total = exps[idx] as u32 + e;
        if total > u16::MAX as u32 {
            return self.err("exponent overflow");
        }
        exps[idx] = total as u16;
        Ok(())
    }

    /// Parses one term after its sign has been consumed.
    fn term(&mut self, negative: bool) -> Result<(Monomial, K::Elem)> {
        let k = self.ring.field();
        let mut exps = vec![0u16; self.ring.nvars()];
        let (mut num, den) = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coefficient()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.factor(&mut exps)?;
                }
                c
            }
            _ => {
                self.factor(&mut exps)?;
                (BigInt::one(), BigInt::one())
            }
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        if negative {
            num = -num;
        }
        let c = k.from_ratio(&num, &den)?;
        Ok((Monomial::from_exponents(&exps), c))
    }

    fn sign(&mut self) -> bool {
        let mut negative = false;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            negative ^= c == b'-';
            self.pos += 1;
        }
        negative
    }

    fn polynomial(&mut self) -> Result<Polynomial<K>> {
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut terms = Vec::new();
        let negative = self.sign();
        terms.push(self.term(negative)?);
        loop {
            match self.peek() {
                None => break,
                Some(b'+' | b'-') => {
                    let negative = self.sign();
                    terms.push(self.term(negative)?);
                }
                Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses `text` as an element of `ring`.
pub fn parse_polynomial<K: Field>(text: &str, ring: &Arc<PolyRing<K>>) -> Result<Polynomial<K>> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    }
    .polynomial()
}

/// Canonical text form: terms in the ring order, unit coefficients omitted.
pub fn format_polynomial<K: Field>(p: &Polynomial<K>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let k = p.field();
    let ring = p.ring();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let text = k.format(c);
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&magnitude);
        } else {
            if magnitude != "1" {
                out.push_str(&magnitude);
                out.push('*');
            }
            out.push_str(&ring.format_monomial(m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::MultiDegree;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingSpec;

    fn spec(field: FieldSpec) -> RingSpec {
        RingSpec::new(
            field,
            &[
                ("x0", [1, 0]),
                ("x1", [1, 0]),
                ("y0", [0, 1]),
                ("y1", [0, 1]),
                ("y2", [0, 1]),
                ("y3", [0, 1]),
            ],
            &[&["x0", "x1"], &["y0", "y1", "y2", "y3"]],
        )
    }

    fn gfp() -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(spec(FieldSpec::default()), PrimeField::default()).unwrap()
    }

    #[test]
    fn parses_monomials_and_binomials() {
        let r = gfp();
        let p = parse_polynomial("x0^3", &r).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0.exponents(), &[3, 0, 0, 0, 0, 0]);
        let q = parse_polynomial("x0*y1 - x1*y0", &r).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.homogeneous_degree().unwrap(), MultiDegree::from([1, 1]));
        assert!(parse_polynomial("x0 - x0", &r).unwrap().is_zero());
    }

    #[test]
    fn whitespace_and_signs() {
        let r = gfp();
        let a = parse_polynomial(" -2 * x0 ^2*y0+ 3*x1 *x1*y0 ", &r).unwrap();
        let b = parse_polynomial("3*x1^2*y0 - 2*x0^2*y0", &r).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("0", &r).unwrap(), Polynomial::zero(&r));
    }

    #[test]
    fn errors() {
        let r = gfp();
        assert!(matches!(parse_polynomial("z", &r), Err(Error::UnknownVariable(v)) if v == "z"));
        assert!(matches!(parse_polynomial("x0 +", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x0^0", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("1/2*x0", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x0 y0", &r), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn coefficient_not_in_field() {
        let r = PolyRing::new(spec(FieldSpec::Prime(5)), PrimeField::new(5).unwrap()).unwrap();
        // 10 is fine (it is zero), but there are no fractions over gfp at all
        assert!(parse_polynomial("10*x0", &r).unwrap().is_zero());
    }

    #[test]
    fn roundtrip() {
        let r = gfp();
        for s in ["x0^2*y1 - x0*x1*y0", "-x0 + 5", "x0*y0 - 7*x1*y3 + y2*x1"] {
            let p = parse_polynomial(s, &r).unwrap();
            let printed = format_polynomial(&p);
            assert_eq!(parse_polynomial(&printed, &r).unwrap(), p, "{printed}");
        }
        let q = PolyRing::new(spec(FieldSpec::Rationals), Rationals).unwrap();
        let p = parse_polynomial("-3/2*x0*y0 + 1/3*x1*y1", &q).unwrap();
        let printed = format_polynomial(&p);
        assert_eq!(printed, "-3/2*x0*y0 + 1/3*x1*y1");
        assert_eq!(parse_polynomial(&printed, &q).unwrap(), p);
    }
}
