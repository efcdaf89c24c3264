use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Letter, Monomial, Polynomial, Rational, RingDesc, Var};
use crate::{Error, Result};

/// Parses the ASCII polynomial syntax
///
/// ```text
/// poly    := ['-'] term (('+'|'-') term)*
/// term    := rat ['*' factors] | factors
/// factors := factor ('*' factor)*
/// factor  := var ['^' nat]
/// var     := ('x'|'y'|'z'|'X'|'Y'|'Z') nat
/// rat     := nat ['/' nat]
/// ```
///
/// Whitespace is ignored. Uppercase letters are only accepted for polarized
/// rings. Error positions are byte offsets into `text`.
pub fn parse_poly(text: &str, ring: RingDesc) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: RingDesc,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { pos: self.pos, message: message.to_string() }
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

    fn poly(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.ring);
        let mut negative = self.eat(b'-');
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.rat()?;
                if self.eat(b'*') {
                    Ok((self.factors()?, coeff))
                } else {
                    Ok((Monomial::one(), coeff))
                }
            }
            Some(_) => Ok((self.factors()?, Rational::one())),
            None => Err(self.error("expected a term")),
        }
    }

    fn factors(&mut self) -> Result<Monomial> {
        let mut parts = vec![self.factor()?];
        while self.eat(b'*') {
            parts.push(self.factor()?);
        }
        Ok(Monomial::from_factors(parts))
    }

    fn factor(&mut self) -> Result<(Var, u32)> {
        let letter = match self.peek() {
            Some(b'x' | b'X') => Letter::X,
            Some(b'y' | b'Y') => Letter::Y,
            Some(b'z' | b'Z') => Letter::Z,
            _ => return Err(self.error("expected a variable (x, y or z followed by a subscript)")),
        };
        if self.src[self.pos].is_ascii_uppercase() && !self.ring.is_polarized() {
            return Err(self.error("uppercase variables are only valid in a polarized ring"));
        }
        self.pos += 1;
        // the subscript must follow the letter directly
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(self.error("expected a subscript"));
        }
        let sub = self.nat()?;
        let triples = self.ring.triples();
        let subscript = match u32::try_from(&sub) {
            Ok(s) if s >= 1 && s <= triples => s,
            _ => {
                let shown = u64::try_from(&sub).unwrap_or(u64::MAX);
                return Err(Error::SubscriptOutOfRange { subscript: shown, triples });
            }
        };
        let exp = if self.eat(b'^') {
            let e = self.nat()?;
            u32::try_from(&e).map_err(|_| self.error("exponent too large"))?
        } else {
            1
        };
        Ok((Var::new(letter, subscript), exp))
    }

    fn rat(&mut self) -> Result<Rational> {
        let num = self.nat()?;
        if self.eat(b'/') {
            let den = self.nat()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_terms() {
        let r = RingDesc::base(1);
        let p = parse_poly("2*x1*z1 - y1^2", r).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "2*x1*z1 - y1^2");
        let q = parse_poly("  -y1 ^ 2+2 * z1*x1 ", r).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn minor_in_two_triples() {
        let p = parse_poly("x1*y2 - x2*y1", RingDesc::base(2)).unwrap();
        assert_eq!(p.to_string(), "x1*y2 - y1*x2");
    }

    #[test]
    fn subscript_bounds() {
        let r = RingDesc::base(3);
        assert_eq!(parse_poly("x4", r), Err(Error::SubscriptOutOfRange { subscript: 4, triples: 3 }));
        assert!(matches!(parse_poly("x0", r), Err(Error::SubscriptOutOfRange { subscript: 0, .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = RingDesc::base(2);
        let pos = |s: &str| match parse_poly(s, r) {
            Err(Error::Syntax { pos, .. }) => pos,
            other => panic!("expected syntax error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("x1 +"), 4);
        assert_eq!(pos("x1 ** y1"), 4);
        assert_eq!(pos("w1"), 0);
        assert_eq!(pos("x"), 1);
        assert_eq!(pos("x1 y1"), 3);
        assert_eq!(pos("1/0*x1"), 3);
        assert_eq!(pos("X1"), 0);
        assert_eq!(pos("x1^"), 3);
    }

    #[test]
    fn uppercase_in_polarized_ring() {
        let s = RingDesc::polarized(1, 2);
        let p = parse_poly("X1*Z2 - Y1*Y2 + Z1*X2", s).unwrap();
        assert_eq!(p.to_string(), "X1*Z2 - Y1*Y2 + Z1*X2");
    }

    #[test]
    fn constants_and_fractions() {
        let r = RingDesc::base(1);
        assert_eq!(parse_poly("3/6", r).unwrap().to_string(), "1/2");
        assert_eq!(parse_poly("0", r).unwrap().to_string(), "0");
        assert_eq!(parse_poly("x1 - x1", r).unwrap().to_string(), "0");
    }

    fn arb_poly(ring: RingDesc) -> impl Strategy<Value = Polynomial> {
        let var = (0u8..3, 1..=ring.triples(), 1u32..4).prop_map(|(l, s, e)| (Var::new(Letter::ALL[l as usize], s), e));
        let term = (prop::collection::vec(var, 0..4), -20i64..20, 1i64..6)
            .prop_map(|(f, n, d)| (Monomial::from_factors(f), Rational::new(n.into(), d.into())));
        prop::collection::vec(term, 0..6).prop_map(move |t| Polynomial::from_terms(ring, t).unwrap())
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly(RingDesc::base(3))) {
            prop_assert_eq!(parse_poly(&p.to_string(), p.ring()).unwrap(), p);
        }

        #[test]
        fn print_parse_round_trip_polarized(p in arb_poly(RingDesc::polarized(2, 2))) {
            prop_assert_eq!(parse_poly(&p.to_string(), p.ring()).unwrap(), p);
        }
    }
}
