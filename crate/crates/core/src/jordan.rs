//! Jordan types of nilpotent operators: the Kronecker-product rule for
//! unipotent Jordan blocks, the block multiplicities of the derivation on
//! tensor powers of the 3-dimensional block, and a rank-based oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::exactpoly::{Letter, Rational};
pub use crate::matrix::ExactMatrix;
use crate::{Error, Result};

/// Multiset of Jordan block sizes, as a map from size to multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JordanType {
    blocks: BTreeMap<u64, u64>,
}

impl JordanType {
    pub fn new() -> Self {
        JordanType::default()
    }

    /// Adds `mult` blocks of `size`; zero multiplicities are not stored.
    pub fn add(&mut self, size: u64, mult: u64) {
        if mult > 0 {
            *self.blocks.entry(size).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, size: u64) -> u64 {
        self.blocks.get(&size).copied().unwrap_or(0)
    }

    pub fn blocks(&self) -> &BTreeMap<u64, u64> {
        &self.blocks
    }

    /// Total dimension `sum size * multiplicity`.
    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(|(s, m)| s * m).sum()
    }

    /// Number of blocks, i.e. the kernel dimension.
    pub fn block_count(&self) -> u64 {
        self.blocks.values().sum()
    }
}

impl FromIterator<(u64, u64)> for JordanType {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut t = JordanType::new();
        for (s, m) in iter {
            t.add(s, m);
        }
        t
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(s, m)| format!("{s}: {m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Block structure of `J_m(1) (x) J_n(1)`: one block of each size
/// `n-m+1, n-m+3, ..., n+m-1` (with `m <= n` after normalizing).
pub fn kron_jordan(m: u64, n: u64) -> JordanType {
    assert!(m >= 1 && n >= 1, "block sizes are positive");
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    (0..m).map(|i| (n - m + 1 + 2 * i, 1)).collect()
}

/// Multiplicities `mu^d(k)` of Jordan blocks of size `k` for the derivation
/// on the `d`-th tensor power of the 3-dimensional block, by the recursion
/// `mu^{d+1}(1) = mu^d(3)`, `mu^{d+1}(k) = mu^d(k-2) + mu^d(k) + mu^d(k+2)`.
pub fn mu(d: u32) -> BTreeMap<u64, BigUint> {
    // index i holds mu(2i + 1)
    let mut cur: Vec<BigUint> = vec![BigUint::one()];
    for _ in 0..d {
        let at = |v: &Vec<BigUint>, i: isize| -> BigUint {
            if i < 0 {
                BigUint::zero()
            } else {
                v.get(i as usize).cloned().unwrap_or_default()
            }
        };
        let mut next = Vec::with_capacity(cur.len() + 1);
        next.push(at(&cur, 1));
        for i in 1..=cur.len() as isize {
            next.push(at(&cur, i - 1) + at(&cur, i) + at(&cur, i + 1));
        }
        cur = next;
    }
    cur.into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (2 * i as u64 + 1, v))
        .collect()
}

/// Jordan type of a nilpotent matrix from the ranks of its powers:
/// the number of blocks of size `k` is
/// `rank(N^{k-1}) - 2 rank(N^k) + rank(N^{k+1})`.
pub fn jordan_type_of_nilpotent(n: &ExactMatrix) -> Result<JordanType> {
    if !n.is_square() {
        return Err(Error::NotSquare { rows: n.rows(), cols: n.cols() });
    }
    let size = n.rows();
    // ranks[k] = rank(N^k)
    let mut ranks = vec![size];
    let mut power = n.clone();
    while !power.is_zero() {
        if ranks.len() >= size {
            return Err(Error::NotNilpotent);
        }
        ranks.push(power.rank());
        power = power.mul(n);
    }
    ranks.push(0);
    ranks.push(0);
    let mut t = JordanType::new();
    for k in 1..ranks.len() - 1 {
        let mult = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        t.add(k as u64, mult as u64);
    }
    Ok(t)
}

/// Index of a word over `{X, Y, Z}` read as a base-3 number (X=0, Y=1, Z=2,
/// first letter most significant).
pub fn word_index(word: &[Letter]) -> usize {
    word.iter().fold(0, |acc, &l| acc * 3 + l as usize)
}

/// Matrix of the Leibniz action of the derivation on the `d`-fold tensor
/// power of the 3-dimensional block, on the basis of words of length `d`
/// ordered as in [`word_index`]. Each factor acts by `Z -> Y -> X -> 0`.
pub fn delta_tensor_matrix(d: u32) -> ExactMatrix {
    assert!(d >= 1, "tensor power must be positive");
    let dim = 3usize.pow(d);
    let mut m = ExactMatrix::zeros(dim, dim);
    let one = Rational::one();
    let mut word = vec![Letter::X; d as usize];
    for col in 0..dim {
        let mut c = col;
        for slot in word.iter_mut().rev() {
            *slot = Letter::ALL[c % 3];
            c /= 3;
        }
        for pos in 0..word.len() {
            if let Some(lower) = word[pos].lowered() {
                let mut image = word.clone();
                image[pos] = lower;
                m.add_to(word_index(&image), col, &one);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jt(pairs: &[(u64, u64)]) -> JordanType {
        pairs.iter().copied().collect()
    }

    fn big(pairs: &[(u64, u32)]) -> BTreeMap<u64, BigUint> {
        pairs.iter().map(|&(k, v)| (k, BigUint::from(v))).collect()
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron_jordan(1, 7), jt(&[(7, 1)]));
        assert_eq!(kron_jordan(2, 3), jt(&[(2, 1), (4, 1)]));
        assert_eq!(kron_jordan(3, 2), jt(&[(2, 1), (4, 1)]));
        assert_eq!(kron_jordan(3, 3), jt(&[(1, 1), (3, 1), (5, 1)]));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(0), big(&[(1, 1)]));
        assert_eq!(mu(1), big(&[(3, 1)]));
        assert_eq!(mu(2), big(&[(1, 1), (3, 1), (5, 1)]));
        assert_eq!(mu(3), big(&[(1, 1), (3, 3), (5, 2), (7, 1)]));
    }

    #[test]
    fn mu_dimension_is_power_of_three() {
        for d in 0..60u32 {
            let dim: BigUint = mu(d).iter().map(|(k, v)| v * BigUint::from(*k)).sum();
            assert_eq!(dim, BigUint::from(3u32).pow(d));
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(jordan_type_of_nilpotent(&ExactMatrix::zeros(2, 2)).unwrap(), jt(&[(1, 2)]));
        assert_eq!(jordan_type_of_nilpotent(&ExactMatrix::jordan_block(3, 0)).unwrap(), jt(&[(3, 1)]));
        let d2 = delta_tensor_matrix(2);
        assert_eq!(jordan_type_of_nilpotent(&d2).unwrap(), jt(&[(1, 1), (3, 1), (5, 1)]));
    }

    #[test]
    fn oracle_errors() {
        assert_eq!(jordan_type_of_nilpotent(&ExactMatrix::identity(2)), Err(Error::NotNilpotent));
        assert!(matches!(jordan_type_of_nilpotent(&ExactMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn tensor_matrix_shapes() {
        let d1 = delta_tensor_matrix(1);
        let ones: Vec<(usize, usize)> =
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| !d1.get(i, j).is_zero()).collect();
        // Y -> X and Z -> Y
        assert_eq!(ones, vec![(0, 1), (1, 2)]);
        assert_eq!(delta_tensor_matrix(2).rank(), 6);
        assert_eq!(delta_tensor_matrix(3).nullity(), 7);
    }
}
