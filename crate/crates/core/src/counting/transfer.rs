//! The 1-domination digraph on `{0,1}ⁿ` and its adjacency matrix.
//!
//! Rows and columns are indexed by 0/1 vectors in decreasing lexicographic
//! order with the first coordinate most significant, so `(1,…,1)` is index 0
//! and the matrix is upper unitriangular.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{check_len, Error, Result};
use crate::vectors::{binary_code, binary_vectors_desc, chi, dominates, one_dominates, NatVector};

/// Largest `n` for which transfer matrices are built.
pub const MAX_N: usize = 12;

/// A dense square matrix of nonnegative big integers.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigMatrix {
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    rows: Vec<Vec<BigUint>>,
}

impl BigMatrix {
    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|i| (0..size).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect())
            .collect();
        BigMatrix { rows }
    }

    pub fn from_rows(rows: Vec<Vec<BigUint>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            check_len(r.len(), n)?;
        }
        Ok(BigMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Product with rows computed in parallel.
    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        let n = self.size();
        let rows = self
            .rows
            .par_iter()
            .map(|row| {
                let mut out = vec![BigUint::zero(); n];
                for (k, x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (o, y) in out.iter_mut().zip(&other.rows[k]) {
                        if !y.is_zero() {
                            *o += x * y;
                        }
                    }
                }
                out
            })
            .collect();
        BigMatrix { rows }
    }

    /// `self - I`, assuming unit diagonal.
    pub fn minus_identity(&self) -> BigMatrix {
        let mut rows = self.rows.clone();
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] -= BigUint::one();
        }
        BigMatrix { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }
}

/// The adjacency matrix `A_n` of 1-domination on `{0,1}ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferMatrix {
    pub n: usize,
    pub matrix: BigMatrix,
}

impl TransferMatrix {
    /// Position of a vector's support pattern in the index order.
    pub fn index_of(&self, v: &NatVector) -> usize {
        index_of(v, self.n)
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }
}

pub(crate) fn index_of(v: &NatVector, n: usize) -> usize {
    (1usize << n) - 1 - binary_code(v) as usize
}

/// Builds `A_n`: entry `(j, k)` is 1 iff `j ⊵₁ k`.
pub fn build_a(n: usize) -> Result<TransferMatrix> {
    if n == 0 || n > MAX_N {
        return Err(Error::TooLarge(format!("transfer matrices need 1 <= n <= {MAX_N}, got {n}")));
    }
    let vs = binary_vectors_desc(n);
    let rows = vs
        .par_iter()
        .map(|j| {
            vs.iter()
                .map(|k| if one_dominates(j, k).unwrap() { BigUint::one() } else { BigUint::zero() })
                .collect()
        })
        .collect();
    Ok(TransferMatrix { n, matrix: BigMatrix { rows } })
}

/// `m^k` by repeated squaring.
pub fn matrix_power(m: &BigMatrix, k: u64) -> BigMatrix {
    let mut result = BigMatrix::identity(m.size());
    let mut base = m.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    result
}

/// The number of 1-domination chains from `χ(a)` to `χ(b)` with `m + 1`
/// steps. It equals the number of unsplittable flows when `b = 0`; for other
/// `b` it counts unsplittable flows summed over all `b'` with `χ(b') = χ(b)`.
pub fn v_unsplit_matrix(a: &NatVector, b: &NatVector, m: usize) -> Result<BigUint> {
    check_len(a.len(), b.len())?;
    if !dominates(a, b)? {
        return Err(Error::NotDominating { a: a.to_string(), b: b.to_string() });
    }
    let t = build_a(a.len())?;
    let p = matrix_power(&t.matrix, m as u64 + 1);
    Ok(p.get(t.index_of(&chi(a)), t.index_of(&chi(b))).clone())
}

/// Vertices of `F_{G(n,m)}(a)`: the row sum of `A_n^m` at `χ(a)`.
pub fn v_vertices_matrix(a: &NatVector, m: usize) -> Result<BigUint> {
    let t = build_a(a.len())?;
    let p = matrix_power(&t.matrix, m as u64);
    Ok(p.rows()[t.index_of(&chi(a))].iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[[u32; 8]]) -> Vec<Vec<BigUint>> {
        rows.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect()
    }

    #[test]
    fn printed_a3_and_powers() {
        let a = build_a(3).unwrap();
        let a1 = big(&[
            [1, 1, 1, 1, 1, 1, 1, 1],
            [0, 1, 1, 1, 0, 1, 1, 1],
            [0, 0, 1, 1, 1, 1, 1, 1],
            [0, 0, 0, 1, 0, 1, 1, 1],
            [0, 0, 0, 0, 1, 1, 1, 1],
            [0, 0, 0, 0, 0, 1, 1, 1],
            [0, 0, 0, 0, 0, 0, 1, 1],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ]);
        let a2 = big(&[
            [1, 2, 3, 4, 3, 6, 7, 8],
            [0, 1, 2, 3, 1, 4, 5, 6],
            [0, 0, 1, 2, 2, 4, 5, 6],
            [0, 0, 0, 1, 0, 2, 3, 4],
            [0, 0, 0, 0, 1, 2, 3, 4],
            [0, 0, 0, 0, 0, 1, 2, 3],
            [0, 0, 0, 0, 0, 0, 1, 2],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ]);
        let a3 = big(&[
            [1, 3, 6, 10, 7, 19, 26, 34],
            [0, 1, 3, 6, 3, 11, 16, 22],
            [0, 0, 1, 3, 3, 9, 14, 20],
            [0, 0, 0, 1, 0, 3, 6, 10],
            [0, 0, 0, 0, 1, 3, 6, 10],
            [0, 0, 0, 0, 0, 1, 3, 6],
            [0, 0, 0, 0, 0, 0, 1, 3],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ]);
        assert_eq!(a.matrix.rows(), &a1[..]);
        assert_eq!(matrix_power(&a.matrix, 2).rows(), &a2[..]);
        assert_eq!(matrix_power(&a.matrix, 3).rows(), &a3[..]);
    }

    #[test]
    fn nilpotent_part() {
        for n in 1..=4 {
            let a = build_a(n).unwrap();
            let d = a.matrix.minus_identity();
            assert!(matrix_power(&d, (1 << n) as u64).is_zero());
        }
        assert!(build_a(13).is_err());
    }

    #[test]
    fn square_vertices() {
        let a: NatVector = "1,1".parse().unwrap();
        assert_eq!(v_vertices_matrix(&a, 1).unwrap(), BigUint::from(4u8));
        assert_eq!(v_vertices_matrix(&a, 0).unwrap(), BigUint::from(1u8));
    }
}
