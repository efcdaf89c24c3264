use std::collections::BTreeSet;

use super::{Letter, Var};

/// A power product of ring variables.
///
/// Factors are kept sorted by strictly decreasing variable with nonzero
/// exponents. With that layout the derived lexicographic `Ord` on the factor
/// vector coincides with the pure lex monomial order: the first differing
/// position either carries a larger variable (which the other monomial lacks)
/// or the same variable with a larger exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(factors: I) -> Self {
        let mut v: Vec<(Var, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|f| std::cmp::Reverse(f.0));
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match merged.last_mut() {
                Some((last, acc)) if *last == var => *acc += e,
                _ => merged.push((var, e)),
            }
        }
        Monomial { factors: merged }
    }

    /// Multilinear monomial from a list of distinct variables.
    pub fn product_of<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        Monomial::from_factors(vars.into_iter().map(|v| (v, 1)))
    }

    /// `(variable, exponent)` pairs in decreasing variable order.
    pub fn factors(&self) -> impl DoubleEndedIterator<Item = (Var, u32)> + ExactSizeIterator + '_ {
        self.factors.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .binary_search_by(|probe| v.cmp(&probe.0))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn max_subscript(&self) -> Option<u32> {
        self.factors.first().map(|(v, _)| v.subscript)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial { factors: self.factors.iter().map(|&(v, k)| (v, k * e)).collect() }
    }

    /// Divides out one power of `v`; `None` if `v` does not divide.
    pub fn without_one(&self, v: Var) -> Option<Monomial> {
        let i = self.factors.binary_search_by(|probe| v.cmp(&probe.0)).ok()?;
        let mut factors = self.factors.clone();
        if factors[i].1 == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some(Monomial { factors })
    }

    /// Renames every variable through `f`; the result is re-sorted.
    pub fn map_vars(&self, mut f: impl FnMut(Var) -> Var) -> Monomial {
        Monomial::from_factors(self.factors.iter().map(|&(v, e)| (f(v), e)))
    }

    fn supp_letter(&self, letter: Letter) -> BTreeSet<u32> {
        self.factors.iter().filter(|(v, _)| v.letter == letter).map(|(v, _)| v.subscript).collect()
    }

    pub fn supp_x(&self) -> BTreeSet<u32> {
        self.supp_letter(Letter::X)
    }

    pub fn supp_y(&self) -> BTreeSet<u32> {
        self.supp_letter(Letter::Y)
    }

    pub fn supp_z(&self) -> BTreeSet<u32> {
        self.supp_letter(Letter::Z)
    }

    pub fn supp(&self) -> BTreeSet<u32> {
        self.factors.iter().map(|(v, _)| v.subscript).collect()
    }

    /// Formats with lowercase (`uppercase == false`) or uppercase letters.
    pub fn format(&self, uppercase: bool) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        // ascending variable order reads naturally: x1*y2*z3
        let parts: Vec<String> = self
            .factors
            .iter()
            .rev()
            .map(|&(v, e)| {
                let c = if uppercase { v.letter.upper() } else { v.letter.lower() };
                if e == 1 {
                    format!("{c}{}", v.subscript)
                } else {
                    format!("{c}{}^{e}", v.subscript)
                }
            })
            .collect();
        parts.join("*")
    }
}
