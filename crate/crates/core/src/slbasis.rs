//! Multilinear constants of the polarized ring.
//!
//! Two families are built inductively from small determinants:
//!
//! - `F{i} = X_i`, `F{i,j} = X_i Y_j - X_j Y_i`,
//! - `G{i,j} = X_i Z_j - Y_i Y_j + Z_i X_j`, `G{i,j,k}` the 3x3 determinant
//!   with rows `(X, Y, Z)` at `i, j, k`,
//! - for longer index sets `i1 < i2 < ... < it`,
//!   `F_I = F{i2,i4,...,it} G{i1,i3} - F{i1,i4,...,it} G{i2,i3}` and
//!   likewise for `G_I` with `G` in place of the first `F`.
//!
//! `F_I` has lead term `X_{i1} Y_{i2} ... Y_{it}` and `G_I` has lead term
//! `X_{i1} Y_{i2} ... Y_{i(t-1)} Z_{it}`, both monic. Products of these
//! (one factor per block of a partition of the subscripts) give a basis of
//! the multilinear constants; [`phi`] picks the product whose lead monomial
//! is a given path monomial.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::exactpoly::{Letter, Monomial, Polynomial, Rational, RingDesc, Var};
use crate::pathgraph::{enumerate_paths, is_path_word, PathWord};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    F,
    G,
}

/// One of the `F_I` / `G_I`, named by its sorted index set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyElement {
    pub kind: Family,
    pub indices: Vec<u32>,
}

impl FamilyElement {
    pub fn new(kind: Family, indices: Vec<u32>) -> Result<Self> {
        let min_len = match kind {
            Family::F => 1,
            Family::G => 2,
        };
        if indices.len() < min_len {
            return Err(Error::BadIndices { indices, reason: "too few indices" });
        }
        if indices[0] == 0 {
            return Err(Error::BadIndices { indices, reason: "indices start at 1" });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadIndices { indices, reason: "indices must be strictly increasing" });
        }
        Ok(FamilyElement { kind, indices })
    }

    pub fn f(indices: Vec<u32>) -> Result<Self> {
        FamilyElement::new(Family::F, indices)
    }

    pub fn g(indices: Vec<u32>) -> Result<Self> {
        FamilyElement::new(Family::G, indices)
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    /// The monic lead monomial predicted by the family's shape.
    pub fn expected_lead(&self) -> Monomial {
        let t = self.indices.len();
        Monomial::product_of(self.indices.iter().enumerate().map(|(q, &s)| {
            let letter = match (q, self.kind) {
                (0, _) => Letter::X,
                (q, Family::G) if q == t - 1 => Letter::Z,
                _ => Letter::Y,
            };
            Var::new(letter, s)
        }))
    }
}

impl fmt::Display for FamilyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Family::F => 'F',
            Family::G => 'G',
        };
        let idx: Vec<String> = self.indices.iter().map(u32::to_string).collect();
        write!(f, "{name}{{{}}}", idx.join(","))
    }
}

/// Index sets of the recursion for `t >= 3`:
/// `(I1, I2, I3, I4) = ({i2,i4..}, {i1,i3}, {i1,i4..}, {i2,i3})`
/// so that `E_I = E_{I1} G_{I2} - E_{I3} G_{I4}`.
pub(crate) fn recursion_split(indices: &[u32]) -> (Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>) {
    debug_assert!(indices.len() >= 3);
    let tail = &indices[3..];
    let with = |head: u32| std::iter::once(head).chain(tail.iter().copied()).collect::<Vec<u32>>();
    (with(indices[1]), vec![indices[0], indices[2]], with(indices[0]), vec![indices[1], indices[2]])
}

/// A product of family elements on pairwise disjoint index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub factors: Vec<FamilyElement>,
}

impl BasisElement {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(FamilyElement::degree).sum()
    }

    /// Product of the factors' expected lead monomials.
    pub fn expected_lead(&self) -> Monomial {
        self.factors.iter().fold(Monomial::one(), |acc, e| acc.mul(&e.expected_lead()))
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Builds family polynomials in a fixed ring, caching every intermediate
/// element of the recursions.
#[derive(Debug)]
pub struct FamilyBuilder {
    ring: RingDesc,
    cache: HashMap<FamilyElement, Polynomial>,
}

impl FamilyBuilder {
    pub fn new(ring: RingDesc) -> Self {
        FamilyBuilder { ring, cache: HashMap::new() }
    }

    pub fn ring(&self) -> RingDesc {
        self.ring
    }

    pub fn build(&mut self, e: &FamilyElement) -> Result<Polynomial> {
        let e = FamilyElement::new(e.kind, e.indices.clone())?;
        if let Some(&last) = e.indices.last() {
            if last > self.ring.triples() {
                return Err(Error::BadIndices { indices: e.indices, reason: "index outside the ring" });
            }
        }
        Ok(self.build_checked(&e))
    }

    pub fn realize(&mut self, b: &BasisElement) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.ring);
        for e in &b.factors {
            acc = &acc * &self.build(e)?;
        }
        Ok(acc)
    }

    fn build_checked(&mut self, e: &FamilyElement) -> Polynomial {
        if let Some(p) = self.cache.get(e) {
            return p.clone();
        }
        let p = self.construct(e);
        self.cache.insert(e.clone(), p.clone());
        p
    }

    fn construct(&mut self, e: &FamilyElement) -> Polynomial {
        let ring = self.ring;
        let term = |vars: &[(Letter, u32)], sign: i64| {
            Polynomial::monomial(
                ring,
                Monomial::product_of(vars.iter().map(|&(l, s)| Var::new(l, s))),
                Rational::from_integer(sign.into()),
            )
        };
        let sum = |parts: Vec<Polynomial>| parts.iter().fold(Polynomial::zero(ring), |acc, p| &acc + p);
        use Letter::{X, Y, Z};
        let idx = &e.indices;
        match (e.kind, idx.len()) {
            (Family::F, 1) => term(&[(X, idx[0])], 1),
            (Family::F, 2) => {
                let (i, j) = (idx[0], idx[1]);
                sum(vec![term(&[(X, i), (Y, j)], 1), term(&[(X, j), (Y, i)], -1)])
            }
            (Family::G, 2) => {
                let (i, j) = (idx[0], idx[1]);
                sum(vec![term(&[(X, i), (Z, j)], 1), term(&[(Y, i), (Y, j)], -1), term(&[(Z, i), (X, j)], 1)])
            }
            (Family::G, 3) => {
                // Leibniz expansion over the permutations of (X, Y, Z)
                let perms: [([Letter; 3], i64); 6] = [
                    ([X, Y, Z], 1),
                    ([X, Z, Y], -1),
                    ([Y, X, Z], -1),
                    ([Y, Z, X], 1),
                    ([Z, X, Y], 1),
                    ([Z, Y, X], -1),
                ];
                sum(perms
                    .iter()
                    .map(|(p, sign)| term(&[(p[0], idx[0]), (p[1], idx[1]), (p[2], idx[2])], *sign))
                    .collect())
            }
            (kind, _) => {
                let (i1, i2, i3, i4) = recursion_split(idx);
                let a = self.build_checked(&FamilyElement { kind, indices: i1 });
                let b = self.build_checked(&FamilyElement { kind: Family::G, indices: i2 });
                let c = self.build_checked(&FamilyElement { kind, indices: i3 });
                let d = self.build_checked(&FamilyElement { kind: Family::G, indices: i4 });
                &(&a * &b) - &(&c * &d)
            }
        }
    }
}

/// `F_I` in `ring`.
pub fn build_f(ring: RingDesc, indices: &[u32]) -> Result<Polynomial> {
    FamilyBuilder::new(ring).build(&FamilyElement::f(indices.to_vec())?)
}

/// `G_I` in `ring`.
pub fn build_g(ring: RingDesc, indices: &[u32]) -> Result<Polynomial> {
    FamilyBuilder::new(ring).build(&FamilyElement::g(indices.to_vec())?)
}

/// The basis element whose lead monomial is the path monomial `alpha`.
///
/// `alpha` must be multilinear with distinct subscripts whose letters, read
/// in increasing subscript order, form a path word.
///
/// Each `Z` (ascending) is matched with the greatest unconsumed `X` below it
/// and the interval between them (minus earlier intervals) becomes a `G`
/// factor. On what remains, each maximal run of `Y`s is matched the same way
/// with an `X` and becomes an `F` factor. Leftover `X`s become singleton `F`s.
pub fn phi(alpha: &Monomial) -> Result<BasisElement> {
    let reject = || Error::NotAPathMonomial(alpha.format(true));
    let mut cells: Vec<(u32, Letter)> = Vec::with_capacity(alpha.factors().len());
    for (v, e) in alpha.factors().rev() {
        if e != 1 || cells.last().is_some_and(|&(s, _)| s == v.subscript) {
            return Err(reject());
        }
        cells.push((v.subscript, v.letter));
    }
    let word: Vec<Letter> = cells.iter().map(|&(_, l)| l).collect();
    if !is_path_word(&word) {
        return Err(reject());
    }
    let sub = |positions: Vec<usize>| positions.into_iter().map(|p| cells[p].0).collect::<Vec<u32>>();
    let n = word.len();
    let mut used = vec![false; n];
    let mut factors = Vec::new();

    let nearest_x = |used: &[bool], below: usize| (0..below).rev().find(|&p| word[p] == Letter::X && !used[p]);

    for k in (0..n).filter(|&p| word[p] == Letter::Z) {
        let i = nearest_x(&used, k).ok_or_else(reject)?;
        let interval: Vec<usize> = (i..=k).filter(|&p| !used[p]).collect();
        for &p in &interval {
            used[p] = true;
        }
        factors.push(FamilyElement { kind: Family::G, indices: sub(interval) });
    }

    // Y positions of the residual monomial whose successor is absent or not Y
    let residual: Vec<usize> = (0..n).filter(|&p| !used[p]).collect();
    let run_ends: Vec<usize> = residual
        .iter()
        .enumerate()
        .filter(|&(r, &p)| word[p] == Letter::Y && residual.get(r + 1).is_none_or(|&s| word[s] != Letter::Y))
        .map(|(_, &p)| p)
        .collect();
    for j in run_ends {
        let i = nearest_x(&used, j).ok_or_else(reject)?;
        let interval: Vec<usize> = (i..=j).filter(|&p| !used[p]).collect();
        for &p in &interval {
            used[p] = true;
        }
        factors.push(FamilyElement { kind: Family::F, indices: sub(interval) });
    }

    for p in 0..n {
        if !used[p] {
            if word[p] != Letter::X {
                return Err(reject());
            }
            factors.push(FamilyElement { kind: Family::F, indices: vec![cells[p].0] });
        }
    }
    Ok(BasisElement { factors })
}

/// `theta(gamma) = phi(Lambda(gamma))` for every path of length `d`.
pub fn theta_basis(d: u32) -> Vec<(PathWord, BasisElement)> {
    enumerate_paths(d)
        .into_iter()
        .map(|w| {
            let e = phi(&w.monomial()).expect("path monomials are accepted by phi");
            (w, e)
        })
        .collect()
}

/// Realizes every `theta(gamma)` for length `d` in `S(n=1, d)`.
pub fn theta_polynomials(d: u32) -> Vec<Polynomial> {
    let mut builder = FamilyBuilder::new(RingDesc::polarized(1, d));
    theta_basis(d).iter().map(|(_, e)| builder.realize(e).expect("indices within 1..=d")).collect()
}

/// Lead coefficient is one for every realized basis element.
pub fn is_monic(p: &Polynomial) -> bool {
    p.lead_term().is_ok_and(|(_, c)| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::apply_delta;
    use crate::exactpoly::parse_poly;

    fn s(d: u32) -> RingDesc {
        RingDesc::polarized(1, d)
    }

    fn mono(text: &str) -> Monomial {
        let p = parse_poly(text, RingDesc::polarized(1, 12)).unwrap();
        p.lead_monomial().unwrap().0
    }

    fn show(b: &BasisElement) -> String {
        b.to_string()
    }

    #[test]
    fn base_cases() {
        assert_eq!(build_f(s(1), &[1]).unwrap(), parse_poly("X1", s(1)).unwrap());
        assert_eq!(build_f(s(2), &[1, 2]).unwrap(), parse_poly("X1*Y2 - X2*Y1", s(2)).unwrap());
        assert_eq!(build_g(s(2), &[1, 2]).unwrap(), parse_poly("X1*Z2 - Y1*Y2 + Z1*X2", s(2)).unwrap());
        let det = "X1*Y2*Z3 - X1*Z2*Y3 - Y1*X2*Z3 + Y1*Z2*X3 + Z1*X2*Y3 - Z1*Y2*X3";
        assert_eq!(build_g(s(3), &[1, 2, 3]).unwrap(), parse_poly(det, s(3)).unwrap());
    }

    #[test]
    fn first_recursive_cases() {
        let f123 = parse_poly("X1*Y2*Y3 - Y1*X2*Y3 - X1*Z2*X3 + Z1*X2*X3", s(3)).unwrap();
        assert_eq!(build_f(s(3), &[1, 2, 3]).unwrap(), f123);

        let g = build_g(s(4), &[1, 2, 3, 4]).unwrap();
        let mut top = g.terms().rev();
        let (m1, c1) = top.next().unwrap();
        let (m2, c2) = top.next().unwrap();
        assert_eq!((m1.format(true), c1.to_string()), ("X1*Y2*Y3*Z4".to_string(), "1".to_string()));
        assert_eq!((m2.format(true), c2.to_string()), ("Y1*X2*Y3*Z4".to_string(), "-1".to_string()));
    }

    #[test]
    fn bad_indices() {
        assert!(matches!(build_f(s(3), &[2, 1]), Err(Error::BadIndices { .. })));
        assert!(matches!(build_f(s(3), &[]), Err(Error::BadIndices { .. })));
        assert!(matches!(build_g(s(3), &[1]), Err(Error::BadIndices { .. })));
        assert!(matches!(build_g(s(3), &[1, 4]), Err(Error::BadIndices { .. })));
        assert!(matches!(build_f(s(3), &[0, 1]), Err(Error::BadIndices { .. })));
        assert!(matches!(build_f(s(3), &[1, 1]), Err(Error::BadIndices { .. })));
    }

    #[test]
    fn families_are_constants() {
        let ring = s(8);
        let mut b = FamilyBuilder::new(ring);
        for mask in 1u32..(1 << 8) {
            let idx: Vec<u32> = (1..=8).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let f = b.build(&FamilyElement::f(idx.clone()).unwrap()).unwrap();
            assert!(apply_delta(&f).is_zero(), "F{idx:?}");
            if idx.len() >= 2 {
                let g = b.build(&FamilyElement::g(idx.clone()).unwrap()).unwrap();
                assert!(apply_delta(&g).is_zero(), "G{idx:?}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(show(&phi(&mono("X1*Z2")).unwrap()), "G{1,2}");
        assert_eq!(show(&phi(&mono("X1*Y2*Z3*X4")).unwrap()), "G{1,2,3}*F{4}");
        assert_eq!(show(&phi(&mono("X1*Z2*X3*Z4")).unwrap()), "G{1,2}*G{3,4}");
        assert_eq!(show(&phi(&mono("X1*X2*Y3*Y4")).unwrap()), "F{2,3,4}*F{1}");
        assert_eq!(show(&phi(&mono("X1*X2*Z3*Z4")).unwrap()), "G{2,3}*G{1,4}");
    }

    #[test]
    fn phi_rejections() {
        for bad in ["Y1*X2", "Z1", "X1*Z2*Z3", "X1*X1", "X1*Y1", "X1^2*Y2"] {
            assert!(matches!(phi(&mono(bad)), Err(Error::NotAPathMonomial(_))), "{bad}");
        }
    }

    #[test]
    fn phi_on_relabeled_subscripts() {
        // order-isomorphic to X1*Y2
        assert_eq!(show(&phi(&mono("X1*Y4")).unwrap()), "F{1,4}");
        assert_eq!(show(&phi(&mono("X2*Y3")).unwrap()), "F{2,3}");
    }

    #[test]
    fn theta_small() {
        assert_eq!(theta_basis(1).iter().map(|(_, e)| show(e)).collect::<Vec<_>>(), vec!["F{1}"]);
        let two: Vec<(String, String)> = theta_basis(2).iter().map(|(w, e)| (w.to_string(), show(e))).collect();
        assert_eq!(
            two,
            vec![
                ("XX".to_string(), "F{1}*F{2}".to_string()),
                ("XY".to_string(), "F{1,2}".to_string()),
                ("XZ".to_string(), "G{1,2}".to_string()),
            ]
        );
        assert_eq!(theta_basis(3).len(), 7);
    }

    #[test]
    fn phi_lead_monomial_is_alpha() {
        for d in 1..=7 {
            let ring = s(d);
            let mut b = FamilyBuilder::new(ring);
            for w in enumerate_paths(d) {
                let alpha = w.monomial();
                let e = phi(&alpha).unwrap();
                assert_eq!(e.expected_lead(), alpha);
                let p = b.realize(&e).unwrap();
                let (m, c) = p.lead_monomial().unwrap();
                assert_eq!(m, alpha, "{w}");
                assert!(c.is_one());
            }
        }
    }
}
