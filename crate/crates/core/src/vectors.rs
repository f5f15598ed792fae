//! Integer vectors, dominance orders, signatures, block structures and skew
//! shapes.
//!
//! Vectors are 1-indexed at the interface: [`NatVector::entry`] takes `i` in
//! `1..=n`, and index pairs in a [`ZMatching`] are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// A vector of nonnegative integers of length at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct NatVector(Vec<u64>);

impl NatVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Input("vectors must have length at least 1".into()));
        }
        Ok(NatVector(entries))
    }

    pub fn zeros(n: usize) -> Self {
        NatVector(vec![0; n.max(1)])
    }

    pub fn ones(n: usize) -> Self {
        NatVector(vec![1; n.max(1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry `i` with `1 <= i <= n`.
    pub fn entry(&self, i: usize) -> u64 {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&x| x <= 1)
    }

    /// Prefix sums `s_i = v_1 + ... + v_i` for `i = 1..=n`.
    pub fn prefix_sums(&self) -> Vec<u64> {
        self.0
            .iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// Index of the first positive entry (1-based), if any.
    pub fn first_positive(&self) -> Option<usize> {
        self.0.iter().position(|&x| x > 0).map(|p| p + 1)
    }
}

impl TryFrom<Vec<u64>> for NatVector {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        NatVector::new(v)
    }
}

impl From<NatVector> for Vec<u64> {
    fn from(v: NatVector) -> Self {
        v.0
    }
}

impl fmt::Display for NatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for NatVector {
    type Err = Error;

    /// Parses `1,0,2`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let entries = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Input(format!("bad vector entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        NatVector::new(entries)
    }
}

/// `v ⊵ w`: every prefix sum of `v` is at least the matching prefix sum of `w`.
pub fn dominates(v: &NatVector, w: &NatVector) -> Result<bool> {
    check_len(v.len(), w.len())?;
    Ok(v
        .prefix_sums()
        .iter()
        .zip(w.prefix_sums())
        .all(|(&x, y)| x >= y))
}

/// The 0/1 vector with the same support as `a`.
pub fn chi(a: &NatVector) -> NatVector {
    NatVector(a.0.iter().map(|&x| u64::from(x > 0)).collect())
}

/// Run lengths `(c_1, ..., c_k)`: `c_i` is one plus the number of zeros
/// immediately after the `i`-th positive entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub runs: Vec<usize>,
}

pub fn signature(a: &NatVector) -> Result<Signature> {
    if a.entry(1) == 0 {
        return Err(Error::Input(format!("signature needs a_1 > 0, got {a}")));
    }
    let mut runs: Vec<usize> = Vec::new();
    for &x in a.as_slice() {
        if x > 0 {
            runs.push(1);
        } else if let Some(last) = runs.last_mut() {
            *last += 1;
        }
    }
    Ok(Signature { runs })
}

/// The canonical noncrossing matching of zero positions and its offset `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZMatching {
    /// Pairs `(i, j)` with `i ∈ Z_a`, `j ∈ Z_b`, `i >= j`, sorted by `i`.
    pub pairs: Vec<(usize, usize)>,
    pub z: usize,
}

/// The greedy matching of zeros: repeatedly take the largest unmatched zero
/// `i` of `a` and match it with the largest unmatched zero `j <= i` of `b`.
///
/// Returns `None` unless `a ⊵ b` and `χ(a) ⊵ χ(b)`.
pub fn z_dominate(a: &NatVector, b: &NatVector) -> Result<Option<ZMatching>> {
    check_len(a.len(), b.len())?;
    if !dominates(a, b)? || !dominates(&chi(a), &chi(b))? {
        return Ok(None);
    }
    let za: Vec<usize> = (1..=a.len()).filter(|&i| a.entry(i) == 0).collect();
    let mut zb: Vec<usize> = (1..=b.len()).filter(|&i| b.entry(i) == 0).collect();
    let mut pairs = Vec::with_capacity(za.len());
    for &i in za.iter().rev() {
        let Some(pos) = zb.iter().rposition(|&j| j <= i) else {
            return Ok(None);
        };
        pairs.push((i, zb.remove(pos)));
    }
    pairs.reverse();
    let z = pairs.iter().map(|&(i, j)| i - j).max().unwrap_or(0).max(1);
    Ok(Some(ZMatching { pairs, z }))
}

/// `a ⊵_1 b`.
pub fn one_dominates(a: &NatVector, b: &NatVector) -> Result<bool> {
    Ok(matches!(z_dominate(a, b)?, Some(ZMatching { z: 1, .. })))
}

/// A skew shape `λ/μ` with `n` rows (rows may be empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Vec<u64>,
    pub inner: Vec<u64>,
}

impl SkewShape {
    pub fn new(outer: Vec<u64>, inner: Vec<u64>) -> Result<Self> {
        check_len(outer.len(), inner.len())?;
        let decreasing = |p: &[u64]| p.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing(&outer) || !decreasing(&inner) {
            return Err(Error::Input("partitions must be weakly decreasing".into()));
        }
        if outer.iter().zip(&inner).any(|(l, m)| m > l) {
            return Err(Error::Input(format!("{inner:?} is not contained in {outer:?}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Number of columns, `λ_1`.
    pub fn cols(&self) -> usize {
        self.outer.first().copied().unwrap_or(0) as usize
    }

    /// `λ'` padded to length `λ_1`.
    pub fn outer_conjugate(&self) -> Vec<usize> {
        conjugate(&self.outer, self.cols())
    }

    /// `μ'` padded to length `λ_1`.
    pub fn inner_conjugate(&self) -> Vec<usize> {
        conjugate(&self.inner, self.cols())
    }

    /// Cells `(i, j)`, 1-based, row by row.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.rows() {
            for j in self.inner[i - 1] as usize + 1..=self.outer[i - 1] as usize {
                out.push((i, j));
            }
        }
        out
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1
            && i <= self.rows()
            && j as u64 > self.inner[i - 1]
            && j as u64 <= self.outer[i - 1]
    }

    pub fn size(&self) -> usize {
        self.outer.iter().zip(&self.inner).map(|(l, m)| (l - m) as usize).sum()
    }

    pub fn is_straight(&self) -> bool {
        self.inner.iter().all(|&x| x == 0)
    }
}

/// Conjugate partition padded with zeros to `len` entries.
pub fn conjugate(p: &[u64], len: usize) -> Vec<usize> {
    (1..=len as u64)
        .map(|j| p.iter().filter(|&&x| x >= j).count())
        .collect()
}

/// `θ(a,b) = (a_1+⋯+a_n, …, a_1) / (b_1+⋯+b_n, …, b_1)`.
pub fn theta(a: &NatVector, b: &NatVector) -> Result<SkewShape> {
    check_len(a.len(), b.len())?;
    if !dominates(a, b)? {
        return Err(Error::NotDominating { a: a.to_string(), b: b.to_string() });
    }
    let mut outer = a.prefix_sums();
    let mut inner = b.prefix_sums();
    outer.reverse();
    inner.reverse();
    SkewShape::new(outer, inner)
}

/// The blocks of a 0/1 vector `j` cut according to the runs of `sgn(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub blocks: Vec<Vec<u64>>,
}

impl BlockStructure {
    /// Number of blocks containing a one.
    pub fn nonzero_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.iter().any(|&x| x > 0)).count()
    }
}

pub fn block_structure(j: &NatVector, a: &NatVector) -> Result<BlockStructure> {
    check_len(j.len(), a.len())?;
    if !j.is_binary() {
        return Err(Error::Input(format!("{j} is not a 0/1 vector")));
    }
    let sig = signature(a)?;
    let mut blocks = Vec::with_capacity(sig.runs.len());
    let mut start = 0;
    for c in sig.runs {
        blocks.push(j.as_slice()[start..start + c].to_vec());
        start += c;
    }
    Ok(BlockStructure { blocks })
}

pub fn reverse(a: &NatVector) -> NatVector {
    NatVector(a.0.iter().rev().copied().collect())
}

/// All 0/1 vectors of length `n` in decreasing lexicographic order with the
/// first coordinate most significant: `(1,…,1)` first, `0` last.
pub fn binary_vectors_desc(n: usize) -> Vec<NatVector> {
    (0..1u64 << n)
        .rev()
        .map(|code| binary_from_code(code, n))
        .collect()
}

/// The 0/1 vector whose entries are the bits of `code`, `a_1` most significant.
pub fn binary_from_code(code: u64, n: usize) -> NatVector {
    NatVector((0..n).map(|k| (code >> (n - 1 - k)) & 1).collect())
}

/// Inverse of [`binary_from_code`] on 0/1 vectors (positive entries count as 1).
pub fn binary_code(v: &NatVector) -> u64 {
    v.as_slice()
        .iter()
        .fold(0, |acc, &x| (acc << 1) | u64::from(x > 0))
}

/// Every vector of length `n` with entries in `0..=max`, in lexicographic order.
pub fn all_vectors(n: usize, max: u64) -> Vec<NatVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    loop {
        out.push(NatVector(cur.clone()));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < max {
                cur[k] += 1;
                cur[k + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

/// Every `u ∈ ℕⁿ` with `a ⊵ u` (prefix sums of `u` bounded by those of `a`).
pub fn dominated_vectors(a: &NatVector) -> Vec<NatVector> {
    let bound = a.prefix_sums();
    let mut out = Vec::new();
    let mut cur = vec![0u64; a.len()];
    fn rec(k: usize, acc: u64, bound: &[u64], cur: &mut Vec<u64>, out: &mut Vec<NatVector>) {
        if k == bound.len() {
            out.push(NatVector(cur.clone()));
            return;
        }
        for x in 0..=bound[k] - acc {
            cur[k] = x;
            rec(k + 1, acc + x, bound, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, 0, &bound, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> NatVector {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(v("(1, 0,2)").to_string(), "(1,0,2)");
        assert!("".parse::<NatVector>().is_err());
        assert!("1,-1".parse::<NatVector>().is_err());
    }

    #[test]
    fn domination_examples() {
        assert!(dominates(&v("2,0"), &v("1,1")).unwrap());
        assert!(dominates(&v("1,1"), &v("1,1")).unwrap());
        assert!(dominates(&v("2,3,1,0,5,4,3,4,4,0"), &v("0,4,1,1,3,0,1,0,0,0")).unwrap());
        assert!(!dominates(&v("0,2"), &v("1,0")).unwrap());
        assert!(dominates(&v("1"), &v("1,1")).is_err());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&v("2,0,3")), v("1,0,1"));
        assert_eq!(chi(&v("0,0")), v("0,0"));
        assert_eq!(chi(&v("4,0,1,2,1,2,0,0,1,0,1,0,0")), v("1,0,1,1,1,1,0,0,1,0,1,0,0"));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&v("1,0,0,1,0")).unwrap().runs, vec![3, 2]);
        assert_eq!(signature(&v("1,1,1")).unwrap().runs, vec![1, 1, 1]);
        assert_eq!(signature(&v("1,1,0,1,0,0,1,0,1")).unwrap().runs, vec![1, 2, 3, 2, 1]);
        assert!(signature(&v("0,1")).is_err());
    }

    #[test]
    fn z_domination_examples() {
        let m = z_dominate(&v("2,3,1,0,5,4,3,4,4,0"), &v("0,4,1,1,3,0,1,0,0,0"))
            .unwrap()
            .unwrap();
        assert_eq!(m.pairs, vec![(4, 1), (10, 10)]);
        assert_eq!(m.z, 3);
        let m = z_dominate(&v("3,2,0,0,2,3,4"), &v("3,0,1,0,1,0,6")).unwrap().unwrap();
        assert_eq!(m.pairs, vec![(3, 2), (4, 4)]);
        assert_eq!(m.z, 1);
        let m = z_dominate(&v("1,1"), &v("1,1")).unwrap().unwrap();
        assert!(m.pairs.is_empty());
        assert_eq!(m.z, 1);
        assert_eq!(z_dominate(&v("1,0,0"), &v("0,1,1")).unwrap(), None);
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&v("1,1"), &v("0,0")).unwrap(), SkewShape::new(vec![2, 1], vec![0, 0]).unwrap());
        assert_eq!(
            theta(&v("2,3,2"), &v("0,1,2")).unwrap(),
            SkewShape::new(vec![7, 5, 2], vec![3, 1, 0]).unwrap()
        );
        assert_eq!(theta(&v("1,1,1,1"), &v("0,0,0,0")).unwrap().outer, vec![4, 3, 2, 1]);
        assert!(matches!(theta(&v("0,1"), &v("1,0")), Err(Error::NotDominating { .. })));
    }

    #[test]
    fn conjugates_of_staircase() {
        let s = theta(&v("1,1,1"), &v("0,0,0")).unwrap();
        assert_eq!(s.outer_conjugate(), vec![3, 2, 1]);
        assert_eq!(s.inner_conjugate(), vec![0, 0, 0]);
        assert_eq!(s.size(), 6);
    }

    #[test]
    fn block_structure_examples() {
        let b = block_structure(&v("1,0,0,0,1,1,1,0,0"), &v("1,1,0,1,0,0,1,0,1")).unwrap();
        assert_eq!(b.blocks, vec![vec![1], vec![0, 0], vec![0, 1, 1], vec![1, 0], vec![0]]);
        let b = block_structure(&v("0,0"), &v("1,1")).unwrap();
        assert_eq!(b.blocks, vec![vec![0], vec![0]]);
        let b = block_structure(&v("0,1,1,0,1,0,1,1"), &v("1,0,0,1,0,0,0,0")).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1, 1], vec![0, 1, 0, 1, 1]]);
        assert_eq!(b.nonzero_blocks(), 2);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&v("1,2,3")), v("3,2,1"));
        assert_eq!(reverse(&v("0,0")), v("0,0"));
        assert_eq!(reverse(&v("1,0,1")), v("1,0,1"));
    }

    #[test]
    fn binary_order_matches_matrix_labels() {
        let labels: Vec<String> = binary_vectors_desc(3).iter().map(|x| x.to_string()).collect();
        assert_eq!(
            labels,
            ["(1,1,1)", "(1,1,0)", "(1,0,1)", "(1,0,0)", "(0,1,1)", "(0,1,0)", "(0,0,1)", "(0,0,0)"]
        );
        for code in 0..8 {
            assert_eq!(binary_code(&binary_from_code(code, 3)), code);
        }
    }

    #[test]
    fn dominated_vectors_are_exactly_the_dominated_ones() {
        let a = v("2,0,1");
        let got = dominated_vectors(&a);
        let want: Vec<_> = all_vectors(3, 3)
            .into_iter()
            .filter(|u| dominates(&a, u).unwrap())
            .collect();
        assert_eq!(got, want);
    }
}
