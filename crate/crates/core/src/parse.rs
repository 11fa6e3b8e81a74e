//! Text form of polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*        (a leading '-' is allowed)
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := ident ('^' uint)?
//! coeff  := int | int '/' uint
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. Over `F_p` a fraction is accepted when its
//! denominator is a unit mod `p`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as BigInt"))
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let num = self.uint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.uint()?;
            let field = self.ring.field();
            return field.from_ratio(&num, &den).map_err(|_| Error::CoefficientNotInField {
                coeff: String::from_utf8_lossy(&self.src[start..self.pos]).trim().to_string(),
                field: field.to_string(),
            });
        }
        Ok(self.ring.field().from_bigint(&num))
    }

    fn factor(&mut self, mono: &mut Monomial) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return self.syntax("expected a variable"),
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), pos: start })?;
        let mut exp = 1u64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            exp = u64::try_from(e).map_err(|_| Error::ExponentOverflow)?;
        }
        mono[idx] = mono[idx].checked_add(exp).ok_or(Error::ExponentOverflow)?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut mono = Monomial::one(self.ring.arity());
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.factor(&mut mono)?;
                }
                c
            }
            _ => {
                self.factor(&mut mono)?;
                self.ring.field().one()
            }
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut mono)?;
        }
        Ok((mono, coeff))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let field = self.ring.field().clone();
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { field.neg(&c) } else { c }));
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                None => break,
                Some(_) => return self.syntax("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        self.ring.from_terms(terms)
    }
}

impl PolyRing {
    /// Parses a polynomial over this ring.
    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        let mut p = Parser { src: src.as_bytes(), pos: 0, ring: self };
        if p.peek().is_none() {
            return p.syntax("empty input");
        }
        p.expr()
    }

    /// Canonical text form; `parse(format(f)) == f`.
    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in f.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors: Vec<String> = Vec::new();
            if !c.is_abs_one() || m.is_one() {
                factors.push(c.abs_string());
            }
            for (v, &e) in self.vars().iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.name.clone()),
                    _ => factors.push(format!("{}^{}", v.name, e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Variable;
    use crate::scalar::CoefficientField;

    fn ring(p: u64, names: &[&str]) -> PolyRing {
        let field = CoefficientField::from_characteristic(p).unwrap();
        PolyRing::new(field, names.iter().map(|n| Variable::new(*n, 1)).collect()).unwrap()
    }

    fn mono(e: &[u64]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn reads_terms_over_f5() {
        let r = ring(5, &["x", "y"]);
        let f = r.parse("x^2*y + 3*y^3").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&mono(&[2, 1])), Some(&Scalar::Mod(1)));
        assert_eq!(f.coefficient(&mono(&[0, 3])), Some(&Scalar::Mod(3)));
    }

    #[test]
    fn zero_parses_to_empty() {
        let r = ring(5, &["x", "y"]);
        assert!(r.parse("0").unwrap().is_zero());
        assert!(r.parse("x - x").unwrap().is_zero());
    }

    #[test]
    fn sign_collapses_in_char_two() {
        let r = ring(2, &["a", "b", "c", "d"]);
        let f = r.parse("b^2 - a*c").unwrap();
        assert_eq!(f.coefficient(&mono(&[0, 2, 0, 0])), Some(&Scalar::Mod(1)));
        assert_eq!(f.coefficient(&mono(&[1, 0, 1, 0])), Some(&Scalar::Mod(1)));
        assert_eq!(r.format(&f), "b^2 + a*c");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(0, &["x", "y"]);
        assert_eq!(r.parse("x + z"), Err(Error::UnknownVariable { name: "z".into(), pos: 4 }));
        assert!(matches!(r.parse("x + * y"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(r.parse("x^"), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse(""), Err(Error::Syntax { pos: 0, .. })));
        let f2 = ring(2, &["x"]);
        assert!(matches!(f2.parse("1/2*x"), Err(Error::CoefficientNotInField { .. })));
    }

    #[test]
    fn fractions_and_leading_minus_over_q() {
        let r = ring(0, &["x", "y"]);
        let f = r.parse(" -3/2*x*y  + 7 ").unwrap();
        assert_eq!(r.format(&f), "-3/2*x*y + 7");
        assert_eq!(r.parse("x*x*y").unwrap(), r.parse("x^2*y").unwrap());
    }
}
