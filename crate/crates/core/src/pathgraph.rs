//! Paths in the representation graph of the 3-dimensional block.
//!
//! Vertices are lattice points `(2h + 1, j)`. From every vertex an `X` edge
//! goes to `(2h + 3, j + 1)`; when `h >= 1` there is also a `Y` edge to
//! `(2h + 1, j + 1)` and a `Z` edge to `(2h - 1, j + 1)`. A path from the root
//! `(1, 0)` is therefore a word over `{X, Y, Z}` whose height
//! `h = #X - #Z` never goes negative and which never takes `Y` or `Z` at
//! height zero.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::exactpoly::{Letter, Monomial, Var};
use crate::{Error, Result};

/// A valid path word; construct with [`PathWord::new`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWord(Vec<Letter>);

impl PathWord {
    pub fn new(steps: Vec<Letter>) -> Option<Self> {
        is_path_word(&steps).then_some(PathWord(steps))
    }

    pub fn steps(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Final height `#X - #Z`.
    pub fn height(&self) -> u64 {
        final_height(&self.0)
    }

    /// Abscissa `2h + 1` of the endpoint, i.e. the block size the path
    /// is counted under.
    pub fn endpoint(&self) -> u64 {
        2 * self.height() + 1
    }

    /// `Lambda`: the path monomial over subscripts `1..=d`.
    pub fn monomial(&self) -> Monomial {
        let subs: Vec<u32> = (1..=self.0.len() as u32).collect();
        word_to_monomial(self, &subs).expect("matching lengths")
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.upper())?;
        }
        Ok(())
    }
}

fn final_height(steps: &[Letter]) -> u64 {
    let ups = steps.iter().filter(|&&l| l == Letter::X).count() as u64;
    let downs = steps.iter().filter(|&&l| l == Letter::Z).count() as u64;
    ups.saturating_sub(downs)
}

/// Height condition: `Y` and `Z` only at height at least one.
pub fn is_path_word(steps: &[Letter]) -> bool {
    let mut h: u64 = 0;
    for &s in steps {
        match s {
            Letter::X => h += 1,
            Letter::Y if h == 0 => return false,
            Letter::Y => {}
            Letter::Z if h == 0 => return false,
            Letter::Z => h -= 1,
        }
    }
    true
}

/// All paths of length `d` from the root, in lexicographic order with
/// `X < Y < Z`.
pub fn enumerate_paths(d: u32) -> Vec<PathWord> {
    fn extend(prefix: &mut Vec<Letter>, height: u64, remaining: u32, out: &mut Vec<PathWord>) {
        if remaining == 0 {
            out.push(PathWord(prefix.clone()));
            return;
        }
        for step in Letter::ALL {
            let next = match step {
                Letter::X => height + 1,
                _ if height == 0 => continue,
                Letter::Y => height,
                Letter::Z => height - 1,
            };
            prefix.push(step);
            extend(prefix, next, remaining - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(d as usize), 0, d, &mut out);
    out
}

/// `nu^d(k)`: number of paths from the root to `(k, d)`, by pushing counts
/// forward along the edges of the graph one level at a time.
pub fn path_counts(d: u32) -> BTreeMap<u64, BigUint> {
    // counts[h] = number of paths ending at height h
    let mut counts: Vec<BigUint> = vec![1u32.into()];
    for _ in 0..d {
        let mut next = vec![BigUint::zero(); counts.len() + 1];
        for (h, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[h + 1] += c;
            if h >= 1 {
                next[h] += c;
                next[h - 1] += c;
            }
        }
        counts = next;
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(h, c)| (2 * h as u64 + 1, c))
        .collect()
}

/// Labels the `q`-th step with the `q`-th smallest subscript. With
/// subscripts `1..=d` this is the path monomial.
pub fn word_to_monomial(word: &PathWord, subscripts: &[u32]) -> Result<Monomial> {
    if word.len() != subscripts.len() {
        return Err(Error::LengthMismatch { word: word.len(), subscripts: subscripts.len() });
    }
    let mut subs = subscripts.to_vec();
    subs.sort_unstable();
    Ok(Monomial::product_of(word.0.iter().zip(subs).map(|(&l, s)| Var::new(l, s))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Letter> {
        s.chars()
            .map(|c| match c {
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                _ => panic!("bad letter"),
            })
            .collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_paths(0), vec![PathWord(vec![])]);
        let two: Vec<String> = enumerate_paths(2).iter().map(ToString::to_string).collect();
        assert_eq!(two, vec!["XX", "XY", "XZ"]);
        assert_eq!(enumerate_paths(3).len(), 7);
    }

    #[test]
    fn counts() {
        let big = |pairs: &[(u64, u32)]| pairs.iter().map(|&(k, v)| (k, BigUint::from(v))).collect::<BTreeMap<_, _>>();
        assert_eq!(path_counts(0), big(&[(1, 1)]));
        assert_eq!(path_counts(2), big(&[(1, 1), (3, 1), (5, 1)]));
        assert_eq!(path_counts(3), big(&[(1, 1), (3, 3), (5, 2), (7, 1)]));
    }

    #[test]
    fn path_predicate() {
        assert!(is_path_word(&w("XYZX")));
        assert!(!is_path_word(&w("YX")));
        assert!(is_path_word(&w("XXXX")));
        assert!(!is_path_word(&w("XZZ")));
        assert!(is_path_word(&[]));
    }

    #[test]
    fn labeling() {
        let xz = PathWord::new(w("XZ")).unwrap();
        assert_eq!(word_to_monomial(&xz, &[1, 2]).unwrap().format(true), "X1*Z2");
        let xy = PathWord::new(w("XY")).unwrap();
        assert_eq!(word_to_monomial(&xy, &[4, 1]).unwrap().format(true), "X1*Y4");
        let x = PathWord::new(w("X")).unwrap();
        assert_eq!(word_to_monomial(&x, &[7]).unwrap().format(true), "X7");
        assert_eq!(word_to_monomial(&x, &[1, 2]), Err(Error::LengthMismatch { word: 1, subscripts: 2 }));
        assert_eq!(xz.monomial().format(true), "X1*Z2");
    }

    #[test]
    fn enumeration_matches_exhaustive_filter() {
        for d in 0..=8u32 {
            let mut all = Vec::new();
            for code in 0..3usize.pow(d) {
                let mut c = code;
                let mut word = vec![Letter::X; d as usize];
                for slot in word.iter_mut().rev() {
                    *slot = Letter::ALL[c % 3];
                    c /= 3;
                }
                if is_path_word(&word) {
                    all.push(PathWord(word));
                }
            }
            let listed = enumerate_paths(d);
            assert_eq!(listed, all, "d = {d}");
            let total: BigUint = path_counts(d).values().sum();
            assert_eq!(total, BigUint::from(listed.len()));
            for p in &listed {
                assert!(path_counts(d).contains_key(&p.endpoint()));
            }
        }
    }
}
