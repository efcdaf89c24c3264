//! The Weitzenböck derivation with Jordan blocks of size 3,
//! `Delta = sum_i x_i d/dy_i + y_i d/dz_i`, and its exponential
//! `sigma = exp(Delta)`. The same letters act on the polarized ring.

use num_bigint::BigInt;
use num_traits::One;

use crate::exactpoly::{Monomial, Polynomial, Rational, Var};

/// `Delta(p)` via linearity and the Leibniz rule.
pub fn apply_delta(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.ring());
    for (m, c) in p.terms() {
        for (v, e) in m.factors() {
            let Some(lower) = v.letter.lowered() else { continue };
            let rest = m.without_one(v).expect("variable divides its own monomial");
            let image = rest.mul(&Monomial::var(Var::new(lower, v.subscript)));
            out.add_term(image, c * Rational::from_integer(BigInt::from(e)));
        }
    }
    out
}

/// `sigma(p) = sum_k Delta^k(p) / k!`; the sum is finite.
pub fn apply_sigma(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.ring());
    let mut current = p.clone();
    let mut factorial = BigInt::one();
    let mut k = 0u32;
    while !current.is_zero() {
        if k > 0 {
            factorial *= k;
        }
        let inv = Rational::new(BigInt::one(), factorial.clone());
        out = &out + &current.scale(&inv);
        current = apply_delta(&current);
        k += 1;
    }
    out
}

/// Least `k` with `Delta^k(p) = 0`; zero for `p = 0`.
pub fn nilpotency_index(p: &Polynomial) -> u32 {
    let mut current = p.clone();
    let mut k = 0;
    while !current.is_zero() {
        current = apply_delta(&current);
        k += 1;
    }
    k
}

pub fn is_constant(p: &Polynomial) -> bool {
    apply_delta(p).is_zero()
}

/// `Delta^k(p)`.
pub fn apply_delta_pow(p: &Polynomial, k: u32) -> Polynomial {
    (0..k).fold(p.clone(), |acc, _| apply_delta(&acc))
}

/// Recovers `Delta` from `sigma` through the finite series
/// `ln(sigma) = sum_{k>=1} (-1)^{k+1} (sigma - 1)^k / k`.
pub fn log_sigma(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.ring());
    // (sigma - 1)^k applied to p
    let mut current = &apply_sigma(p) - p;
    let mut k: i64 = 1;
    while !current.is_zero() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = &out + &current.scale(&Rational::new(BigInt::from(sign), BigInt::from(k)));
        current = &apply_sigma(&current) - &current;
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, RingDesc};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, RingDesc::base(3)).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(apply_delta(&p("z1")), p("y1"));
        assert!(apply_delta(&p("x1")).is_zero());
        assert_eq!(apply_delta(&p("y1^2")), p("2*x1*y1"));
        let s = RingDesc::polarized(1, 2);
        let z = parse_poly("Z2", s).unwrap();
        assert_eq!(apply_delta(&z), parse_poly("Y2", s).unwrap());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(apply_sigma(&p("x1")), p("x1"));
        assert_eq!(apply_sigma(&p("y1")), p("y1 + x1"));
        assert_eq!(apply_sigma(&p("z1")), p("z1 + y1 + 1/2*x1"));
        assert!(apply_sigma(&Polynomial::zero(RingDesc::base(1))).is_zero());
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_index(&p("z1")), 3);
        assert_eq!(nilpotency_index(&p("x1*y2 - x2*y1")), 1);
        assert_eq!(nilpotency_index(&Polynomial::zero(RingDesc::base(1))), 0);
        assert_eq!(nilpotency_index(&p("z1^2")), 5);
    }

    #[test]
    fn constant_examples() {
        assert!(is_constant(&p("x1*z2 - y1*y2 + z1*x2")));
        assert!(!is_constant(&p("y1")));
        let det = p("x1*y2*z3 - x1*z2*y3 - y1*x2*z3 + y1*z2*x3 + z1*x2*y3 - z1*y2*x3");
        assert!(is_constant(&det));
        assert!(is_constant(&p("7")));
    }
}
