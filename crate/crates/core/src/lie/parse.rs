//! Text syntax for Lie elements.
//!
//! ```text
//! expr     := term (('+' | '-') term)* ;
//! term     := (rational '*')? atom ;
//! atom     := IDENT | '[' expr ',' expr ']' | '(' expr ')' ;
//! rational := '-'? digits ('/' digits)? ;
//! ```
//!
//! Two conveniences beyond the grammar keep canonical output parseable: a
//! term may start with a bare `-` (as in `-[x,y]`), and the whole input may be
//! the literal `0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::alphabet::GradedAlphabet;
use super::element::LieElement;
use crate::error::{Error, Result};
use crate::Rational;

pub fn parse_lie(text: &str, alphabet: &GradedAlphabet) -> Result<LieElement> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, alphabet };
    p.skip_ws();
    if p.src[p.pos..].iter().all(|b| b.is_ascii_whitespace()) {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse { pos: 0, message: format!("bad rational `{text}`") };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a GradedAlphabet,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { pos: self.pos, message: message.to_string() }
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

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }

    fn expr(&mut self) -> Result<LieElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.checked_add(&t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.checked_sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(s.parse().expect("digits parse"))
    }

    fn term(&mut self) -> Result<LieElement> {
        let start = match self.peek() {
            Some(b) => b,
            None => return Err(self.error("expected a term")),
        };
        let mut sign = Rational::one();
        if start == b'-' {
            self.pos += 1;
            sign = -sign;
        }
        let at_digit = self.src.get(self.pos).is_some_and(u8::is_ascii_digit);
        if !at_digit {
            return Ok(self.atom()?.scale(&sign));
        }
        let num = self.digits().expect("digit present");
        let mut coeff = Rational::from_integer(num);
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den = self.digits().ok_or_else(|| self.error("expected denominator digits"))?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            coeff /= Rational::from_integer(den);
        }
        coeff *= sign;
        if self.peek() == Some(b'*') {
            self.pos += 1;
            return Ok(self.atom()?.scale(&coeff));
        }
        if coeff.is_zero() {
            return Ok(LieElement::zero(self.alphabet));
        }
        Err(self.error("expected `*` after coefficient"))
    }

    fn atom(&mut self) -> Result<LieElement> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                a.bracket(&b)
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok(a)
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                LieElement::generator(self.alphabet, name)
            }
            _ => Err(self.error("expected generator, `[` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LyndonWord;

    fn xy() -> GradedAlphabet {
        GradedAlphabet::xy()
    }

    #[test]
    fn examples() {
        let a = xy();
        let e = parse_lie("[x,[x,y]]", &a).unwrap();
        assert_eq!(e, LieElement::basis(&a, LyndonWord::new(&[0, 0, 1]).unwrap()));
        assert!(parse_lie("[x,x]", &a).unwrap().is_zero());
        let e = parse_lie("3/2*[x,y] - y", &a).unwrap();
        assert_eq!(e.coefficient(&LyndonWord::new(&[0, 1]).unwrap()), Rational::new(3.into(), 2.into()));
        assert_eq!(e.coefficient(&LyndonWord::letter(1)), -Rational::one());
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let a = xy();
        assert_eq!(parse_lie("[x,y", &a), Err(Error::Parse { pos: 4, message: "expected `]`".into() }));
        assert_eq!(parse_lie("[x,z]", &a), Err(Error::UnknownGenerator("z".into())));
        assert!(matches!(parse_lie("2 x", &a), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_lie("", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_lie("1/0*x", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_lie("x y", &a), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn canonical_round_trip() {
        let a = xy();
        for src in ["-[x,[x,y]] + 2/3*[[x,y],y] - x", "0", "(x + y)", "-1*x - -2*y"] {
            let e = parse_lie(src, &a).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_lie(&printed, &a).unwrap(), e);
            assert_eq!(parse_lie(&printed, &a).unwrap().to_string(), printed);
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new((-3).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
