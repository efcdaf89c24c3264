//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables come in triples `(x_i, y_i, z_i)`. Two kinds of ring share the
//! same representation:
//!
//! - the base ring `R = K[x_1, y_1, z_1, ..., x_n, y_n, z_n]`, printed in
//!   lowercase;
//! - the polarized ring `S` with `n*d` triples `(X_s, Y_s, Z_s)`, printed in
//!   uppercase, where subscript `s` belongs to triple `ceil(s/d)` and column
//!   `((s-1) mod d) + 1`.
//!
//! Monomials are compared in pure lexicographic order with
//! `z_t > y_t > x_t > z_{t-1} > ... > z_1 > y_1 > x_1`.

mod monomial;
mod polynomial;
mod text;

use std::fmt;

use num_rational::BigRational;

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use text::parse_poly;

/// Exact coefficient field.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Base,
    Polarized,
}

/// Describes which ring a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingDesc {
    kind: RingKind,
    triples: u32,
    degree: u32,
}

impl RingDesc {
    /// The base ring `R` on `n` variable triples.
    pub fn base(n: u32) -> Self {
        assert!(n >= 1, "a ring needs at least one triple");
        RingDesc { kind: RingKind::Base, triples: n, degree: 0 }
    }

    /// The polarized ring for `n` base triples and polarization degree `d`;
    /// it has `n*d` triples.
    pub fn polarized(n: u32, d: u32) -> Self {
        assert!(n >= 1 && d >= 1, "polarized ring needs n >= 1 and d >= 1");
        RingDesc { kind: RingKind::Polarized, triples: n * d, degree: d }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn is_polarized(&self) -> bool {
        self.kind == RingKind::Polarized
    }

    /// Number of variable triples in this ring.
    pub fn triples(&self) -> u32 {
        self.triples
    }

    /// Polarization degree, `None` for the base ring.
    pub fn degree(&self) -> Option<u32> {
        match self.kind {
            RingKind::Base => None,
            RingKind::Polarized => Some(self.degree),
        }
    }

    /// Number of triples of the underlying base ring.
    pub fn base_triples(&self) -> u32 {
        match self.kind {
            RingKind::Base => self.triples,
            RingKind::Polarized => self.triples / self.degree,
        }
    }

    /// Base triple a polarized subscript belongs to.
    pub fn triple_of(&self, subscript: u32) -> u32 {
        match self.kind {
            RingKind::Base => subscript,
            RingKind::Polarized => subscript.div_ceil(self.degree),
        }
    }

    /// Polarization column of a polarized subscript.
    pub fn column_of(&self, subscript: u32) -> u32 {
        match self.kind {
            RingKind::Base => 1,
            RingKind::Polarized => (subscript - 1) % self.degree + 1,
        }
    }

    pub(crate) fn require_polarized(&self) -> crate::Result<u32> {
        self.degree().ok_or(crate::Error::WrongRingKind { expected: "polarized", got: *self })
    }

    pub(crate) fn require_base(&self) -> crate::Result<()> {
        match self.kind {
            RingKind::Base => Ok(()),
            RingKind::Polarized => Err(crate::Error::WrongRingKind { expected: "base", got: *self }),
        }
    }
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Base => write!(f, "R(n={})", self.triples),
            RingKind::Polarized => {
                write!(f, "S(n={}, d={})", self.triples / self.degree, self.degree)
            }
        }
    }
}

/// Position of a variable inside its triple. The derived order `X < Y < Z`
/// is the within-triple part of the monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn lower(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
            Letter::Z => 'z',
        }
    }

    pub fn upper(self) -> char {
        self.lower().to_ascii_uppercase()
    }

    /// Image under the derivation on the degree-one part: `Z -> Y -> X -> 0`.
    pub fn lowered(self) -> Option<Letter> {
        match self {
            Letter::X => None,
            Letter::Y => Some(Letter::X),
            Letter::Z => Some(Letter::Y),
        }
    }
}

/// A ring variable. Field order matters: the derived `Ord` compares the
/// subscript first and the letter second, which is exactly the variable
/// order `z_t > y_t > x_t > z_{t-1} > ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub subscript: u32,
    pub letter: Letter,
}

impl Var {
    pub fn new(letter: Letter, subscript: u32) -> Self {
        Var { subscript, letter }
    }

    pub fn x(subscript: u32) -> Self {
        Var::new(Letter::X, subscript)
    }

    pub fn y(subscript: u32) -> Self {
        Var::new(Letter::Y, subscript)
    }

    pub fn z(subscript: u32) -> Self {
        Var::new(Letter::Z, subscript)
    }
}

/// Multilinearity in the polarized ring: every monomial has exactly one
/// variable in each of the `d` columns.
pub fn is_multilinear(p: &Polynomial) -> crate::Result<bool> {
    let d = p.ring().require_polarized()?;
    let ring = p.ring();
    Ok(p.terms().all(|(m, _)| {
        if m.total_degree() != d as u64 {
            return false;
        }
        let mut seen = vec![false; d as usize];
        for (v, e) in m.factors() {
            let col = (ring.column_of(v.subscript) - 1) as usize;
            if e != 1 || seen[col] {
                return false;
            }
            seen[col] = true;
        }
        true
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subscript_decoding() {
        let s = RingDesc::polarized(2, 3);
        assert_eq!(s.triples(), 6);
        assert_eq!(s.base_triples(), 2);
        let decoded: Vec<_> = (1..=6).map(|k| (s.triple_of(k), s.column_of(k))).collect();
        assert_eq!(decoded, vec![(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]);
    }

    #[test]
    fn variable_order() {
        assert!(Var::z(2) > Var::y(2));
        assert!(Var::y(2) > Var::x(2));
        assert!(Var::x(2) > Var::z(1));
    }

    #[test]
    fn multilinear_examples() {
        let s12 = RingDesc::polarized(1, 2);
        assert!(is_multilinear(&parse_poly("X1*Z2", s12).unwrap()).unwrap());
        assert!(!is_multilinear(&parse_poly("X1*X1", s12).unwrap()).unwrap());
        // subscripts 1,4 sit in columns 1,2 and subscripts 2,3 in columns 2,1
        let s22 = RingDesc::polarized(2, 2);
        assert!(is_multilinear(&parse_poly("X1*Y4 + X2*Y3", s22).unwrap()).unwrap());
        assert!(!is_multilinear(&parse_poly("X1*Y3", s22).unwrap()).unwrap());
        assert!(!is_multilinear(&parse_poly("X1", s22).unwrap()).unwrap());
    }

    #[test]
    fn multilinear_needs_polarized_ring() {
        let p = parse_poly("x1", RingDesc::base(1)).unwrap();
        assert!(matches!(is_multilinear(&p), Err(crate::Error::WrongRingKind { .. })));
    }
}
