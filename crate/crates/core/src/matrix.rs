//! Dense exact matrices and fraction-free rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use std::collections::{BTreeMap, HashMap};

use crate::exactpoly::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    /// Row-major construction; panics if the row lengths disagree.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect(),
        )
    }

    /// Single nilpotent-plus-`eigenvalue` Jordan block of size `n`: ones on
    /// the superdiagonal.
    pub fn jordan_block(n: usize, eigenvalue: i64) -> Self {
        ExactMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::from_integer(eigenvalue.into())
            } else if j == i + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn row_nonzeros(&self, i: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries[i * self.cols..(i + 1) * self.cols].iter().enumerate().filter(|(_, v)| !v.is_zero())
    }

    /// Product skipping zero entries; the matrices here are very sparse.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let other_rows: Vec<Vec<(usize, Rational)>> =
            (0..other.rows).map(|k| other.row_nonzeros(k).map(|(j, v)| (j, v.clone())).collect()).collect();
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.row_nonzeros(i) {
                for (j, b) in &other_rows[k] {
                    out.add_to(i, *j, &(a * b));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn kronecker(&self, other: &ExactMatrix) -> ExactMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        ExactMatrix::from_fn(r, c, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    /// Exact rank by fraction-free elimination.
    ///
    /// Rows are scaled to primitive integer vectors, the matrix is split into
    /// the connected components of its row/column incidence graph (the rank
    /// is additive over them), and each component is eliminated over the
    /// integers with `row_r <- p * row_r - a * row_pivot` followed by division
    /// by the row content.
    pub fn rank(&self) -> usize {
        let int_rows: Vec<Vec<(usize, BigInt)>> = (0..self.rows).map(|i| integer_row(self.row_nonzeros(i))).collect();
        sparse_integer_rank(self.cols, &int_rows)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Dimension of the span of a family of polynomials, by exact rank on
/// their coefficient vectors.
pub fn polynomial_rank(polys: &[Polynomial]) -> usize {
    let mut columns: HashMap<&Monomial, usize> = HashMap::new();
    let mut rows = Vec::with_capacity(polys.len());
    for p in polys {
        let entries: Vec<(usize, &Rational)> = p
            .terms()
            .map(|(m, c)| {
                let next = columns.len();
                (*columns.entry(m).or_insert(next), c)
            })
            .collect();
        rows.push(entries);
    }
    let int_rows: Vec<Vec<(usize, BigInt)>> = rows.into_iter().map(|r| integer_row(r.into_iter())).collect();
    sparse_integer_rank(columns.len(), &int_rows)
}

/// Clears denominators of a sparse rational row and removes the content.
fn integer_row<'a>(entries: impl Iterator<Item = (usize, &'a Rational)>) -> Vec<(usize, BigInt)> {
    let entries: Vec<(usize, &Rational)> = entries.collect();
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut row: Vec<(usize, BigInt)> =
        entries.into_iter().map(|(j, v)| (j, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Rank of a matrix given by sparse integer rows over `cols` columns.
pub(crate) fn sparse_integer_rank(cols: usize, rows: &[Vec<(usize, BigInt)>]) -> usize {
    // union-find over rows (0..r) and columns (r..r+cols)
    let r = rows.len();
    let mut parent: Vec<usize> = (0..r + cols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        if !row.is_empty() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
    }
    groups.values().map(|members| component_rank(members.iter().map(|&i| &rows[i]))).sum()
}

fn component_rank<'a>(rows: impl Iterator<Item = &'a Vec<(usize, BigInt)>>) -> usize {
    let rows: Vec<&Vec<(usize, BigInt)>> = rows.collect();
    let mut col_ids: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|(j, _)| *j)).collect();
    col_ids.sort_unstable();
    col_ids.dedup();
    let width = col_ids.len();
    let mut dense: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); width];
            for (j, x) in r.iter() {
                v[col_ids.binary_search(j).expect("column collected")] = x.clone();
            }
            v
        })
        .collect();

    let mut rank = 0;
    for col in 0..width {
        if rank == dense.len() {
            break;
        }
        // smallest nonzero pivot keeps the multipliers small
        let Some(pivot) = (rank..dense.len())
            .filter(|&i| !dense[i][col].is_zero())
            .min_by(|&a, &b| dense[a][col].abs().cmp(&dense[b][col].abs()))
        else {
            continue;
        };
        dense.swap(rank, pivot);
        let (head, tail) = dense.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = &prow[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = p.gcd(&row[col]);
            let (mp, mr) = (p / &g, &row[col] / &g);
            let mut content = BigInt::zero();
            for k in col..width {
                let v = &row[k] * &mp - &prow[k] * &mr;
                content = content.gcd(&v);
                row[k] = v;
            }
            if !content.is_zero() && !content.is_one() {
                for v in row[col..].iter_mut() {
                    *v /= &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(ExactMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
        let m = ExactMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let m = ExactMatrix::from_i64_rows(&[vec![2, 3], vec![4, 5]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rational_entries() {
        let half = Rational::new(1.into(), 2.into());
        let m = ExactMatrix::from_rows(vec![
            vec![half.clone(), Rational::one()],
            vec![Rational::one(), Rational::from_integer(2.into())],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kronecker_and_product() {
        let j = ExactMatrix::jordan_block(2, 0);
        assert!(j.mul(&j).is_zero());
        let k = ExactMatrix::identity(2).kronecker(&j);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn rank_agrees_with_brute_force_determinants() {
        // every 3x3 matrix over {-1, 0, 1} with a fixed first row pattern
        let vals = [-1i64, 0, 1];
        for code in 0..3usize.pow(6) {
            let mut c = code;
            let mut next = || {
                let v = vals[c % 3];
                c /= 3;
                v
            };
            let rows = vec![vec![1, 1, 0], vec![next(), next(), next()], vec![next(), next(), next()]];
            let m = ExactMatrix::from_i64_rows(&rows);
            let det = |r: &[Vec<i64>]| {
                r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                    + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
            };
            let minors2 = (0..3).any(|a| {
                (a + 1..3).any(|b| {
                    (0..3).any(|c1| (c1 + 1..3).any(|c2| rows[a][c1] * rows[b][c2] - rows[a][c2] * rows[b][c1] != 0))
                })
            });
            let expected = if det(&rows) != 0 { 3 } else if minors2 { 2 } else { 1 };
            assert_eq!(m.rank(), expected, "{rows:?}");
        }
    }
}
