//! Face numbers of `F_{G(n,m)}(a)` with `b = 0`.
//!
//! Faces correspond to connected subgraphs that are the support of some
//! flow, with dimension equal to the first Betti number. The brute-force
//! oracle sweeps all edge subsets; the recursion fixes the support of the
//! first column and bottoms out at products of simplices.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::counting::genfunc::binomial;
use crate::error::{Error, Result};
use crate::graphs::{g_graph, support, UnionFind};
use crate::plane_partitions::{enumerate_pps, psi_on};
use crate::vectors::{binary_vectors_desc, block_structure, chi, signature, theta, NatVector};
use crate::vertex::is_vertex_flow;

/// Largest edge count the subset sweep accepts.
pub const MAX_SWEEP_EDGES: usize = 40;

/// `f_0, …, f_D` for a polytope of dimension `D`.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceVector {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub counts: Vec<BigUint>,
}

impl FaceVector {
    fn trimmed(mut counts: Vec<BigUint>) -> Self {
        while counts.len() > 1 && counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        FaceVector { counts }
    }

    pub fn dim(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, d: usize) -> BigUint {
        self.counts.get(d).cloned().unwrap_or_else(BigUint::zero)
    }

    /// `Σ (-1)^d f_d`, which is 1 for a nonempty polytope.
    pub fn euler_characteristic(&self) -> BigInt {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { BigInt::from(c.clone()) } else { -BigInt::from(c.clone()) })
            .sum()
    }

    /// The counts with the empty face prepended.
    pub fn with_empty_face(&self) -> Vec<BigUint> {
        std::iter::once(BigUint::one()).chain(self.counts.iter().cloned()).collect()
    }
}

fn leading_zeros(a: &NatVector) -> usize {
    a.as_slice().iter().take_while(|&&x| x == 0).count()
}

fn strip(a: &NatVector, k: usize) -> NatVector {
    NatVector::new(a.as_slice()[k..].to_vec()).expect("entries already validated")
}

/// Face counts of a product of simplices `∏ Δ_{c_i}` for `sgn(j) = (c_i)`:
/// `[x^{d+k}] ∏ ((x+1)^{c_i+1} - 1)` with `k` factors. Leading zeros of `j`
/// are rows that never carry flow and are dropped.
pub fn face_vector_base(j: &NatVector) -> Result<FaceVector> {
    if !j.is_binary() {
        return Err(Error::Input(format!("{j} is not a 0/1 vector")));
    }
    let z = leading_zeros(j);
    if z == j.len() {
        return Ok(FaceVector { counts: vec![BigUint::one()] });
    }
    let runs = signature(&strip(j, z))?.runs;
    let mut prod = vec![BigUint::one()];
    for &r in &runs {
        // (x+1)^{r+1} - 1 has coefficients C(r+1, i) for i >= 1.
        let factor: Vec<BigUint> = (0..=r + 1)
            .map(|i| if i == 0 { BigUint::zero() } else { binomial(r as u64 + 1, i as u64) })
            .collect();
        let mut next = vec![BigUint::zero(); prod.len() + r + 1];
        for (i, p) in prod.iter().enumerate() {
            for (k, f) in factor.iter().enumerate() {
                next[i + k] += p * f;
            }
        }
        prod = next;
    }
    Ok(FaceVector::trimmed(prod.into_iter().skip(runs.len()).collect()))
}

/// `f_d^{(n,1)}(j)`.
pub fn face_count_base(j: &NatVector, d: usize) -> Result<BigUint> {
    Ok(face_vector_base(j)?.get(d))
}

/// The full face vector by the first-column recursion: a first column with
/// support `j` contributes `γ = |j| - β` forced cycles, where `β` counts the
/// blocks of `j` (cut at the positive entries of `a`) that contain a one,
/// and `k` more for each of the `C(β, k)` ways of joining those blocks.
pub fn face_vector_recurse(a: &NatVector, m: usize) -> Result<FaceVector> {
    let mut memo = HashMap::new();
    recurse(&chi(a), m, &mut memo)
}

fn recurse(a: &NatVector, m: usize, memo: &mut HashMap<(NatVector, usize), FaceVector>) -> Result<FaceVector> {
    let z = leading_zeros(a);
    if z == a.len() || m == 0 {
        return Ok(FaceVector { counts: vec![BigUint::one()] });
    }
    let a = strip(a, z);
    if m == 1 {
        return face_vector_base(&a);
    }
    if let Some(f) = memo.get(&(a.clone(), m)) {
        return Ok(f.clone());
    }
    let n = a.len();
    let mut counts = vec![BigUint::zero(); n * m + 1];
    for j in binary_vectors_desc(n) {
        let blocks = block_structure(&j, &a)?;
        let beta = blocks.nonzero_blocks();
        let gamma = j.sum() as usize - beta;
        let rest = recurse(&j, m - 1, memo)?;
        for (e, c) in rest.counts.iter().enumerate() {
            for k in 0..=beta {
                let d = e + k + gamma;
                if d < counts.len() {
                    counts[d] += c * binomial(beta as u64, k as u64);
                }
            }
        }
    }
    let f = FaceVector::trimmed(counts);
    memo.insert((a, m), f.clone());
    Ok(f)
}

/// `f_d^{(n,m)}(a)` by the first-column recursion.
pub fn face_count_recurse(a: &NatVector, m: usize, d: usize) -> Result<BigUint> {
    Ok(face_vector_recurse(a, m)?.get(d))
}

/// Face numbers from every edge subset of `G(n,m)`: a subset is a face when
/// it is the union of the supports of the vertices it contains, and its
/// dimension is its first Betti number. `budget` caps the number of subsets.
pub fn face_count_bruteforce(a: &NatVector, m: usize, budget: Option<u64>) -> Result<FaceVector> {
    let n = a.len();
    let zero = NatVector::zeros(n);
    let g = g_graph(m, a, &zero)?;
    let edges = g.num_edges();
    if edges > MAX_SWEEP_EDGES {
        return Err(Error::TooLarge(format!("{edges} edges")));
    }
    let subsets = 1u64 << edges;
    if let Some(cap) = budget {
        if subsets > cap {
            return Err(Error::BudgetExceeded(cap));
        }
    }
    let mut vertices: Vec<u64> = Vec::new();
    for pp in enumerate_pps(&theta(a, &zero)?, m as u64) {
        let f = psi_on(&pp, &g)?;
        if is_vertex_flow(&f) {
            vertices.push(support(&f).edge_indices().fold(0u64, |acc, e| acc | 1 << e));
        }
    }
    let ends = g.edges().to_vec();
    let nv = g.num_vertices();
    let betti = |mask: u64| -> Option<usize> {
        let mut uf = UnionFind::new(nv);
        let mut touched = vec![false; nv];
        let mut components = 0usize;
        let mut count = 0usize;
        for (e, &(u, v)) in ends.iter().enumerate() {
            if mask >> e & 1 == 1 {
                count += 1;
                for x in [u, v] {
                    if !touched[x] {
                        touched[x] = true;
                        components += 1;
                    }
                }
                if uf.union(u, v) {
                    components -= 1;
                }
            }
        }
        let vs = touched.iter().filter(|&&t| t).count();
        // b = 0 sends every unit to the sink, so faces are connected.
        (components <= 1).then(|| count + components - vs)
    };
    // Workers take fixed blocks of subsets sharing their high bits.
    let low = edges.min(16);
    let counts = (0..subsets >> low)
        .into_par_iter()
        .map(|high| {
            let mut local = vec![0u64; edges + 1];
            for lowbits in 0..1u64 << low {
                let mask = high << low | lowbits;
                let mut inside = vertices.iter().filter(|&&s| s & !mask == 0).peekable();
                let nonempty = inside.peek().is_some();
                let union = inside.fold(0u64, |acc, s| acc | s);
                if nonempty && union == mask {
                    let d = betti(mask).ok_or_else(|| Error::Mismatch(format!("disconnected face {mask:#x}")))?;
                    local[d] += 1;
                }
            }
            Ok(local)
        })
        .try_reduce(
            || vec![0u64; edges + 1],
            |mut x, y| {
                for (p, q) in x.iter_mut().zip(y) {
                    *p += q;
                }
                Ok(x)
            },
        )?;
    Ok(FaceVector::trimmed(counts.into_iter().map(BigUint::from).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> NatVector {
        s.parse().unwrap()
    }

    fn fv(xs: &[u32]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn base_cases() {
        assert_eq!(face_vector_base(&v("1,1")).unwrap().counts, fv(&[4, 4, 1]));
        assert_eq!(face_vector_base(&v("0,0,0")).unwrap().counts, fv(&[1]));
        assert_eq!(face_vector_base(&v("1")).unwrap().counts, fv(&[2, 1]));
        assert_eq!(face_vector_base(&v("0,1,0")).unwrap().counts, fv(&[3, 3, 1]));
    }

    #[test]
    fn two_by_two() {
        let a = v("1,1");
        assert_eq!(face_vector_recurse(&a, 2).unwrap().with_empty_face(), fv(&[1, 10, 21, 18, 7, 1]));
        assert_eq!(face_count_bruteforce(&a, 2, None).unwrap().with_empty_face(), fv(&[1, 10, 21, 18, 7, 1]));
        assert_eq!(face_count_bruteforce(&a, 1, None).unwrap().counts, fv(&[4, 4, 1]));
    }

    #[test]
    fn degenerate() {
        assert_eq!(face_count_bruteforce(&v("0,0"), 2, None).unwrap().counts, fv(&[1]));
        assert_eq!(face_vector_recurse(&v("0,0"), 2).unwrap().counts, fv(&[1]));
        assert!(face_count_bruteforce(&v("1,1"), 2, Some(10)).is_err());
    }
}
