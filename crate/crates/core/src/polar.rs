//! Full polarization `R_d -> S_L` and restitution `S_L -> R_d`.
//!
//! Base variable `x_i` placed in column `j` becomes `X_{(i-1)d + j}`, and
//! likewise for `y` and `z`. Restitution is split into the plain algebra
//! substitution [`evaluate_eps`] (`X_s -> x_{ceil(s/d)}`) and
//! [`restitute`] `= evaluate_eps / d!`, which inverts [`polarize`].

use num_bigint::BigInt;
use num_traits::One;

use crate::exactpoly::{is_multilinear, Monomial, Polynomial, Rational, RingDesc, Var};
use crate::{Error, Result};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Coefficient of `v_1 v_2 ... v_d` in `f(Mv)`.
///
/// Each monomial is expanded by handing out the `d` columns to its variable
/// occurrences; a variable with exponent `a` receives a set of `a` columns,
/// and each such set arises `a!` times from the distinguishable occurrences.
pub fn polarize(f: &Polynomial, d: u32) -> Result<Polynomial> {
    f.ring().require_base()?;
    assert!(d >= 1, "polarization degree must be positive");
    if !f.is_homogeneous_of(d as u64) {
        return Err(Error::NotHomogeneous(d));
    }
    let n = f.ring().triples();
    let target = RingDesc::polarized(n, d);
    let mut out = Polynomial::zero(target);
    for (m, c) in f.terms() {
        let weight = m.factors().fold(BigInt::one(), |acc, (_, a)| acc * factorial(a));
        let coeff = c * Rational::from_integer(weight);
        // one slot per variable occurrence, repeats adjacent
        let slots: Vec<Var> = m.factors().flat_map(|(v, a)| std::iter::repeat_n(v, a as usize)).collect();
        let mut cols = Vec::with_capacity(slots.len());
        let mut free = vec![true; d as usize];
        distribute(&slots, &mut free, &mut cols, &mut |cols| {
            let vars = slots.iter().zip(cols).map(|(v, &col)| Var::new(v.letter, (v.subscript - 1) * d + col + 1));
            out.add_term(Monomial::product_of(vars), coeff.clone());
        });
    }
    Ok(out)
}

/// Assigns a free column to each slot. Slots of the same variable take
/// increasing columns so each column set is produced once.
fn distribute(slots: &[Var], free: &mut [bool], cols: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    let pos = cols.len();
    if pos == slots.len() {
        emit(cols);
        return;
    }
    let start = if pos > 0 && slots[pos - 1] == slots[pos] { cols[pos - 1] + 1 } else { 0 };
    for col in start..free.len() as u32 {
        if !free[col as usize] {
            continue;
        }
        free[col as usize] = false;
        cols.push(col);
        distribute(slots, free, cols, emit);
        cols.pop();
        free[col as usize] = true;
    }
}

/// Algebra substitution `X_s -> x_{ceil(s/d)}` (same for `Y`, `Z`).
pub fn evaluate_eps(h: &Polynomial) -> Result<Polynomial> {
    let ring = h.ring();
    ring.require_polarized()?;
    let target = RingDesc::base(ring.base_triples());
    Ok(h.map_monomials(target, |m| m.map_vars(|v| Var::new(v.letter, ring.triple_of(v.subscript)))))
}

/// Restitution of a multilinear polynomial: `evaluate_eps(h) / d!`.
pub fn restitute(h: &Polynomial) -> Result<Polynomial> {
    let d = h.ring().require_polarized()?;
    if !is_multilinear(h)? {
        return Err(Error::NotMultilinear);
    }
    Ok(evaluate_eps(h)?.scale(&Rational::new(BigInt::one(), factorial(d))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn base(n: u32, s: &str) -> Polynomial {
        parse_poly(s, RingDesc::base(n)).unwrap()
    }

    fn pol(n: u32, d: u32, s: &str) -> Polynomial {
        parse_poly(s, RingDesc::polarized(n, d)).unwrap()
    }

    #[test]
    fn polarize_examples() {
        assert_eq!(polarize(&base(1, "x1"), 1).unwrap(), pol(1, 1, "X1"));
        assert_eq!(polarize(&base(1, "x1^2"), 2).unwrap(), pol(1, 2, "2*X1*X2"));
        assert_eq!(polarize(&base(1, "2*x1*z1 - y1^2"), 2).unwrap(), pol(1, 2, "2*X1*Z2 - 2*Y1*Y2 + 2*Z1*X2"));
        assert_eq!(polarize(&base(2, "x1*y2 - x2*y1"), 2).unwrap(), pol(2, 2, "X1*Y4 + X2*Y3 - X3*Y2 - X4*Y1"));
    }

    #[test]
    fn polarize_counts_every_column_assignment() {
        // x1^2*y1 at d = 3: 3 column choices for y, 2! orderings for x
        let p = polarize(&base(1, "x1^2*y1"), 3).unwrap();
        assert_eq!(p, pol(1, 3, "2*X1*X2*Y3 + 2*X1*Y2*X3 + 2*Y1*X2*X3"));
        let q = polarize(&base(1, "x1^3"), 3).unwrap();
        assert_eq!(q, pol(1, 3, "6*X1*X2*X3"));
    }

    #[test]
    fn polarize_errors() {
        assert_eq!(polarize(&base(1, "x1 + x1^2"), 2), Err(Error::NotHomogeneous(2)));
        assert!(matches!(polarize(&pol(1, 1, "X1"), 1), Err(Error::WrongRingKind { .. })));
        assert!(polarize(&Polynomial::zero(RingDesc::base(1)), 3).unwrap().is_zero());
    }

    #[test]
    fn eps_examples() {
        assert_eq!(evaluate_eps(&pol(1, 2, "X1*Z2 - Y1*Y2 + Z1*X2")).unwrap(), base(1, "2*x1*z1 - y1^2"));
        assert!(evaluate_eps(&pol(1, 2, "X1*Y2 - X2*Y1")).unwrap().is_zero());
        assert_eq!(evaluate_eps(&pol(2, 2, "X1*Y4 - X4*Y1")).unwrap(), base(2, "x1*y2 - x2*y1"));
    }

    #[test]
    fn restitute_examples() {
        assert_eq!(restitute(&pol(1, 2, "2*X1*X2")).unwrap(), base(1, "x1^2"));
        let g11 = base(1, "2*x1*z1 - y1^2");
        assert_eq!(restitute(&polarize(&g11, 2).unwrap()).unwrap(), g11);
        assert_eq!(restitute(&pol(1, 1, "X1")).unwrap(), base(1, "x1"));
        assert_eq!(restitute(&pol(1, 2, "X1*Y1")), Err(Error::NotMultilinear));
        assert!(matches!(restitute(&base(1, "x1")), Err(Error::WrongRingKind { .. })));
    }
}
