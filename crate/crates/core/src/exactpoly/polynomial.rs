use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, RingDesc, Var};
use crate::{Error, Result};

/// A polynomial in canonical form: no zero coefficients, terms keyed by
/// monomial in increasing lex order (so the lead term is the last entry).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingDesc,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: RingDesc) -> Self {
        Polynomial { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: RingDesc) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: RingDesc, c: Rational) -> Self {
        Polynomial::monomial(ring, Monomial::one(), c)
    }

    /// A single term. Panics if a variable is outside the ring; use
    /// [`Polynomial::checked_monomial`] for untrusted input.
    pub fn monomial(ring: RingDesc, m: Monomial, c: Rational) -> Self {
        Polynomial::checked_monomial(ring, m, c).expect("monomial outside ring")
    }

    pub fn checked_monomial(ring: RingDesc, m: Monomial, c: Rational) -> Result<Self> {
        if let Some(s) = m.max_subscript() {
            if s > ring.triples() {
                return Err(Error::SubscriptOutOfRange { subscript: s as u64, triples: ring.triples() });
            }
        }
        let mut p = Polynomial::zero(ring);
        p.add_term(m, c);
        Ok(p)
    }

    pub fn var(ring: RingDesc, v: Var) -> Self {
        Polynomial::monomial(ring, Monomial::var(v), Rational::one())
    }

    /// Builds from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: RingDesc, terms: I) -> Result<Self> {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            if let Some(s) = m.max_subscript() {
                if s > ring.triples() {
                    return Err(Error::SubscriptOutOfRange { subscript: s as u64, triples: ring.triples() });
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> RingDesc {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lex-greatest monomial and its coefficient.
    pub fn lead_term(&self) -> Result<(&Monomial, &Rational)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    /// Owned form of [`Polynomial::lead_term`].
    pub fn lead_monomial(&self) -> Result<(Monomial, Rational)> {
        self.lead_term().map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous_of(&self, d: u64) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// Homogeneous components keyed by degree, zero components omitted.
    pub fn homogeneous_components(&self) -> BTreeMap<u64, Polynomial> {
        let mut out: BTreeMap<u64, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.total_degree())
                .or_insert_with(|| Polynomial::zero(self.ring))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// `self += c * m`, keeping canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self -= c * other` in place.
    pub fn sub_scaled(&mut self, c: &Rational, other: &Polynomial) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        for (m, k) in &other.terms {
            self.add_term(m.clone(), -(c * k));
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        out.sub_scaled(&Rational::one(), other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = Polynomial::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies an algebra substitution sending each monomial to a new
    /// monomial in `target`. Used for relabelings and restitution.
    pub fn map_monomials(&self, target: RingDesc, mut f: impl FnMut(&Monomial) -> Monomial) -> Polynomial {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Evaluates at a point given by `value(var)`.
    pub fn evaluate(&self, mut value: impl FnMut(Var) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                t *= num_traits::pow(value(v), e as usize);
            }
            acc += t;
        }
        acc
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

/// Writes `c*m` pieces joined by ` + ` / ` - `, lead term first. The output
/// is accepted by [`super::parse_poly`].
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let upper = self.ring.is_polarized();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.format(upper))?;
            } else {
                write!(f, "{a}*{}", m.format(upper))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_poly;
    use super::*;

    fn r1() -> RingDesc {
        RingDesc::base(2)
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, r1()).unwrap()
    }

    #[test]
    fn cancellation() {
        assert_eq!(&p("x1 + y1") + &p("x1 - y1"), p("2*x1"));
        assert!((&p("x1*y2") - &p("x1*y2")).is_zero());
    }

    #[test]
    fn monomial_product() {
        assert_eq!(&p("x1") * &p("z2"), p("x1*z2"));
    }

    #[test]
    fn square_of_minor() {
        let f = p("x1*y2 - x2*y1");
        assert_eq!(f.pow(2), p("x1^2*y2^2 - 2*x1*x2*y1*y2 + x2^2*y1^2"));
        assert_eq!(f.pow(0), Polynomial::one(r1()));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = parse_poly("x1", RingDesc::base(1)).unwrap();
        let b = parse_poly("x1", RingDesc::base(2)).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(..))));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn lead_terms() {
        let s = RingDesc::polarized(1, 2);
        let g = parse_poly("X1*Z2 - Y1*Y2 + Z1*X2", s).unwrap();
        let (m, c) = g.lead_monomial().unwrap();
        assert_eq!(m.format(true), "X1*Z2");
        assert!(c.is_one());

        let s = RingDesc::polarized(2, 2);
        let h = parse_poly("X1*Y4 + X2*Y3 - X3*Y2 - X4*Y1", s).unwrap();
        assert_eq!(h.lead_monomial().unwrap().0.format(true), "X1*Y4");

        assert_eq!(p("x1").lead_monomial().unwrap().0.format(false), "x1");
        assert_eq!(Polynomial::zero(r1()).lead_monomial(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_is_lead_first() {
        assert_eq!(p("-y1^2 + 2*x1*z1").to_string(), "2*x1*z1 - y1^2");
        assert_eq!(p("1/2*x1 - 3").to_string(), "1/2*x1 - 3");
        assert_eq!(p("-x1").to_string(), "-x1");
    }

    #[test]
    fn components() {
        let c = p("x1 + x1*y2 + 3").homogeneous_components();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
    }
}
