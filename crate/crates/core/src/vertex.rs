//! Vertex characterizations: forest support, split/merge rules on
//! trajectories, and vertex plane partitions. Also standard vertex plane
//! partitions and their shifted-tableau count.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{is_forest, support, IntegerFlow};
use crate::plane_partitions::{trajectories, PlanePartition, Trajectory};
use crate::vectors::SkewShape;

/// A flow is a vertex iff its support is a forest.
pub fn is_vertex_flow(f: &IntegerFlow) -> bool {
    is_forest(&support(f))
}

/// Split and merge counts for one pair of trajectories `first < second`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub first: usize,
    pub second: usize,
    pub splits: usize,
    pub merges: usize,
    pub shared_start: bool,
    pub shared_end: bool,
}

impl PairReport {
    /// The pair satisfies the start, end and at-most-once rules.
    pub fn ok(&self) -> bool {
        match (self.shared_start, self.shared_end) {
            (true, true) => self.merges == 0 && self.splits == 0,
            (true, false) => self.merges == 0,
            (false, true) => self.splits == 0,
            (false, false) => self.merges <= 1 && self.splits <= 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitMergeReport {
    pub pairs: Vec<PairReport>,
}

impl SplitMergeReport {
    pub fn is_vertex(&self) -> bool {
        self.pairs.iter().all(PairReport::ok)
    }

    pub fn is_unsplittable(&self) -> bool {
        self.pairs.iter().all(|p| p.splits == 0)
    }

    pub fn violations(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs.iter().filter(|p| !p.ok())
    }
}

/// For each vertex of a trajectory, the edges by which it enters and leaves.
fn passage(t: &Trajectory) -> HashMap<usize, (Option<usize>, Option<usize>)> {
    let k = t.edges.len();
    t.vertices
        .iter()
        .enumerate()
        .map(|(p, &v)| {
            let enter = (p > 0).then(|| t.edges[p - 1]);
            let leave = (p < k).then(|| t.edges[p]);
            (v, (enter, leave))
        })
        .collect()
}

/// Two trajectories merge at a shared vertex when they enter it by different
/// edges or only one of them enters; they split when they leave by different
/// edges or only one of them leaves.
fn differ(x: Option<usize>, y: Option<usize>) -> bool {
    match (x, y) {
        (Some(e), Some(f)) => e != f,
        (None, None) => false,
        _ => true,
    }
}

pub fn split_merge_report(ts: &[Trajectory]) -> SplitMergeReport {
    let maps: Vec<_> = ts.iter().map(passage).collect();
    let mut pairs = Vec::new();
    for u in 0..ts.len() {
        for w in u + 1..ts.len() {
            let (mut splits, mut merges) = (0, 0);
            for v in &ts[u].vertices {
                if let Some(&(e2, l2)) = maps[w].get(v) {
                    let (e1, l1) = maps[u][v];
                    merges += differ(e1, e2) as usize;
                    splits += differ(l1, l2) as usize;
                }
            }
            pairs.push(PairReport {
                first: u + 1,
                second: w + 1,
                splits,
                merges,
                shared_start: ts[u].start_vertex() == ts[w].start_vertex(),
                shared_end: ts[u].end_vertex() == ts[w].end_vertex(),
            });
        }
    }
    SplitMergeReport { pairs }
}

/// The split/merge vertex criterion on the canonical trajectories.
pub fn split_merge_check(f: &IntegerFlow) -> Result<(bool, SplitMergeReport)> {
    let rep = split_merge_report(&trajectories(f)?);
    Ok((rep.is_vertex(), rep))
}

/// No two trajectories split.
pub fn is_unsplittable(f: &IntegerFlow) -> Result<bool> {
    Ok(split_merge_report(&trajectories(f)?).is_unsplittable())
}

/// The clause of the vertex plane partition conditions that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clause {
    /// Columns between the same inner and outer corners must agree.
    #[serde(rename = "i")]
    EqualColumns,
    /// Equal inner corners: equality in a row forces equality in the row above.
    #[serde(rename = "ii(a)")]
    InnerPropagation,
    /// Equal inner corners: descent rule.
    #[serde(rename = "ii(b)")]
    InnerDescent,
    /// Equal outer corners: equality in a row forces equality in the row below.
    #[serde(rename = "iii(a)")]
    OuterPropagation,
    /// Equal outer corners: descent rule.
    #[serde(rename = "iii(b)")]
    OuterDescent,
    /// Different corners: rows between the crossing rows must agree.
    #[serde(rename = "iv")]
    Window,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::EqualColumns => "(i)",
            Clause::InnerPropagation => "(ii)(a)",
            Clause::InnerDescent => "(ii)(b)",
            Clause::OuterPropagation => "(iii)(a)",
            Clause::OuterDescent => "(iii)(b)",
            Clause::Window => "(iv)",
        };
        f.write_str(s)
    }
}

/// Where a plane partition fails to be a vertex plane partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    /// Left column of the offending pair (1-based).
    pub column: usize,
    pub row: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {} at columns {},{} row {}", self.clause, self.column, self.column + 1, self.row)
    }
}

/// Comparisons involving a cell outside the shape are false.
struct Cmp<'a>(&'a PlanePartition);

impl Cmp<'_> {
    fn at(&self, i: usize, j: usize) -> Option<u64> {
        if i == 0 {
            return None;
        }
        self.0.get(i, j)
    }
    fn eq(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        matches!((self.at(i, j), self.at(k, l)), (Some(x), Some(y)) if x == y)
    }
    fn lt(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        matches!((self.at(i, j), self.at(k, l)), (Some(x), Some(y)) if x < y)
    }
    fn le(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        matches!((self.at(i, j), self.at(k, l)), (Some(x), Some(y)) if x <= y)
    }
}

/// The first violated vertex condition, scanning column pairs left to right.
pub fn vertex_pp_violation(pp: &PlanePartition) -> Option<Violation> {
    let shape = pp.shape();
    let (lc, mc) = (shape.outer_conjugate(), shape.inner_conjugate());
    let c = Cmp(pp);
    let fail = |clause, column, row| Some(Violation { clause, column, row });
    for j in 1..shape.cols() {
        let (lj, lk, mj, mk) = (lc[j - 1], lc[j], mc[j - 1], mc[j]);
        if mj == mk && lj == lk {
            for i in mj + 1..=lj {
                if !c.eq(i, j, i, j + 1) {
                    return fail(Clause::EqualColumns, j, i);
                }
            }
        } else if mj == mk {
            for i in mk + 2..=lk {
                if c.eq(i, j, i, j + 1) && !c.eq(i - 1, j, i - 1, j + 1) {
                    return fail(Clause::InnerPropagation, j, i);
                }
            }
            for i in mk + 1..=lk {
                if !(c.lt(i, j + 1, i + 1, j) || c.eq(i, j + 1, i, j)) {
                    return fail(Clause::InnerDescent, j, i);
                }
            }
        } else if lj == lk {
            for i in mj + 1..lj {
                if c.eq(i, j, i, j + 1) && !c.eq(i + 1, j, i + 1, j + 1) {
                    return fail(Clause::OuterPropagation, j, i);
                }
            }
            for i in mj..lj {
                if !(c.lt(i, j + 1, i + 1, j) || c.eq(i + 1, j, i + 1, j + 1)) {
                    return fail(Clause::OuterDescent, j, i);
                }
            }
        } else {
            let rows = 1..=shape.rows() + 1;
            let i_min = rows.clone().find(|&i| i >= 2 && c.le(i, j, i - 1, j + 1));
            let i_max = rows.rev().find(|&i| c.le(i + 1, j, i, j + 1));
            // Both rows existing forces equality even when `i_min == i_max`.
            if let (Some(lo), Some(hi)) = (i_min, i_max) {
                for i in lo..=hi {
                    if !c.eq(i, j, i, j + 1) {
                        return fail(Clause::Window, j, i);
                    }
                }
            }
        }
    }
    None
}

pub fn is_vertex_pp(pp: &PlanePartition) -> bool {
    vertex_pp_violation(pp).is_none()
}

fn check_standard(pp: &PlanePartition) -> Result<()> {
    let n = pp.shape().size() as u64;
    let seen: HashSet<u64> = pp.entries().collect();
    if seen.len() as u64 != n || pp.entries().any(|x| x >= n) {
        return Err(Error::Input("entries are not a permutation of 0..size".into()));
    }
    Ok(())
}

/// The characterization of vertex plane partitions with distinct entries.
///
/// With distinct entries no two cells agree, so every equality clause either
/// fails outright or is vacuous and only strict inequalities remain:
/// nonempty columns between the same corners are forbidden, equal inner or
/// outer corners force `π_{i,j+1} < π_{i+1,j}` on the rows where both cells
/// exist, and otherwise at most one row `i` has `π_{i,j} < π_{i-1,j+1}`.
pub fn is_standard_vertex_pp(pp: &PlanePartition) -> Result<bool> {
    check_standard(pp)?;
    let shape = pp.shape();
    let (lc, mc) = (shape.outer_conjugate(), shape.inner_conjugate());
    let c = Cmp(pp);
    for j in 1..shape.cols() {
        let (lj, lk, mj, mk) = (lc[j - 1], lc[j], mc[j - 1], mc[j]);
        let rows = if mj == mk && lj == lk {
            if lj > mj {
                return Ok(false);
            }
            continue;
        } else if mj == mk {
            mk + 1..=lk
        } else if lj == lk {
            mj..=lj - 1
        } else {
            let crossings = (2..=shape.rows()).filter(|&i| c.lt(i, j, i - 1, j + 1)).count();
            if crossings > 1 {
                return Ok(false);
            }
            continue;
        };
        if !rows.into_iter().all(|i| c.lt(i, j + 1, i + 1, j)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fillings of `shape` by `0..size` decreasing along rows and columns.
pub fn standard_fillings(shape: &SkewShape) -> Vec<PlanePartition> {
    let cells = shape.cells();
    let n = cells.len();
    let idx: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let preds: Vec<Vec<usize>> = cells
        .iter()
        .map(|&(i, j)| {
            let mut p = Vec::new();
            if let Some(&k) = idx.get(&(i.wrapping_sub(1), j)) {
                p.push(k);
            }
            if let Some(&k) = idx.get(&(i, j.wrapping_sub(1))) {
                p.push(k);
            }
            p
        })
        .collect();
    let mut out = Vec::new();
    let mut val = vec![u64::MAX; n];
    fn rec(
        k: usize,
        n: usize,
        preds: &[Vec<usize>],
        val: &mut Vec<u64>,
        emit: &mut dyn FnMut(&[u64]),
    ) {
        if k == n {
            emit(val);
            return;
        }
        let v = (n - 1 - k) as u64;
        for c in 0..n {
            if val[c] == u64::MAX && preds[c].iter().all(|&p| val[p] != u64::MAX) {
                val[c] = v;
                rec(k + 1, n, preds, val, emit);
                val[c] = u64::MAX;
            }
        }
    }
    let bound = n.saturating_sub(1) as u64;
    rec(0, n, &preds, &mut val, &mut |vals| {
        let mut rows: Vec<Vec<u64>> =
            (0..shape.rows()).map(|i| vec![0; (shape.outer[i] - shape.inner[i]) as usize]).collect();
        for (k, &(i, j)) in cells.iter().enumerate() {
            rows[i - 1][j - 1 - shape.inner[i - 1] as usize] = vals[k];
        }
        out.push(PlanePartition::new(shape.clone(), bound, rows).expect("standard filling"));
    });
    out
}

/// A shifted skew diagram. Row `i` (1-based) occupies the shifted columns
/// `i + inner[i-1] .. i + outer[i-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedShape {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
}

impl ShiftedShape {
    /// Cells `(row, column)` in shifted coordinates.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (1..=self.outer.len())
            .flat_map(|i| (i + self.inner[i - 1]..i + self.outer[i - 1]).map(move |c| (i, c)))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.outer.iter().zip(&self.inner).map(|(o, i)| o - i).sum()
    }

    /// Column lengths read from the rightmost column to the left.
    pub fn column_lengths_from_right(&self) -> Vec<usize> {
        let cells = self.cells();
        let Some(maxc) = cells.iter().map(|&(_, c)| c).max() else {
            return Vec::new();
        };
        let minc = cells.iter().map(|&(_, c)| c).min().unwrap();
        (minc..=maxc).rev().map(|c| cells.iter().filter(|&&(_, cc)| cc == c).count()).collect()
    }
}

/// The shifted skew shape inside the shifted staircase whose columns, read
/// from the right, have the lengths of the columns of `λ` read from the left.
/// Each column is bottom-justified in the staircase.
pub fn shifted_shape_of(lambda: &[u64], n: usize) -> Result<ShiftedShape> {
    for (i, &l) in lambda.iter().enumerate() {
        if i >= n && l > 0 || l as usize > n - i.min(n) {
            return Err(Error::Input(format!("partition {lambda:?} is not inside the staircase of size {n}")));
        }
    }
    let conj = crate::vectors::conjugate(lambda, lambda.first().copied().unwrap_or(0) as usize);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &len) in conj.iter().enumerate() {
        let c = n - k;
        for r in c + 1 - len..=c {
            rows[r - 1].push(c);
        }
    }
    let mut outer = Vec::with_capacity(n);
    let mut inner = Vec::with_capacity(n);
    for (r, cols) in rows.iter_mut().enumerate() {
        let i = r + 1;
        cols.sort_unstable();
        match (cols.first(), cols.last()) {
            (Some(&lo), Some(&hi)) => {
                if hi - lo + 1 != cols.len() {
                    return Err(Error::Input("shifted rows are not contiguous".into()));
                }
                inner.push(lo - i);
                outer.push(hi + 1 - i);
            }
            _ => {
                inner.push(0);
                outer.push(0);
            }
        }
    }
    Ok(ShiftedShape { outer, inner })
}

/// Standard fillings of a cell set increasing along rows and columns,
/// counted by a memoized walk over order ideals.
fn count_linear_extensions(cells: &[(usize, usize)]) -> Result<BigUint> {
    let n = cells.len();
    if n > 63 {
        return Err(Error::TooLarge(format!("{n} cells")));
    }
    let idx: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let preds: Vec<u64> = cells
        .iter()
        .map(|&(i, j)| {
            let mut m = 0u64;
            for p in [(i.wrapping_sub(1), j), (i, j.wrapping_sub(1))] {
                if let Some(&k) = idx.get(&p) {
                    m |= 1 << k;
                }
            }
            m
        })
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, BigUint> = HashMap::new();
    fn go(s: u64, full: u64, preds: &[u64], memo: &mut HashMap<u64, BigUint>) -> BigUint {
        if s == full {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&s) {
            return v.clone();
        }
        let mut total = BigUint::default();
        for (k, &p) in preds.iter().enumerate() {
            if s & (1 << k) == 0 && p & s == p {
                total += go(s | (1 << k), full, preds, memo);
            }
        }
        memo.insert(s, total.clone());
        total
    }
    Ok(go(0, full, &preds, &mut memo))
}

pub fn count_shifted_syt(s: &ShiftedShape) -> Result<BigUint> {
    count_linear_extensions(&s.cells())
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Standard tableaux of the shifted staircase with `n` rows.
pub fn staircase_syt_product_formula(n: u64) -> BigUint {
    let top = factorial(n * (n + 1) / 2) * (1..n).map(factorial).product::<BigUint>();
    let bottom: BigUint = (1..=n).map(|i| factorial(2 * i - 1)).product();
    top / bottom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{g_graph, lattice_points};
    use crate::plane_partitions::{enumerate_pps, psi_inverse};
    use crate::vectors::{theta, NatVector};

    fn v(s: &str) -> NatVector {
        s.parse().unwrap()
    }

    #[test]
    fn square_has_four_vertex_pps() {
        let s = SkewShape::new(vec![2, 1], vec![0, 0]).unwrap();
        let verdicts: Vec<_> = enumerate_pps(&s, 1).map(|p| (p.rows().to_vec(), is_vertex_pp(&p))).collect();
        assert_eq!(verdicts.iter().filter(|x| x.1).count(), 4);
        let bad: Vec<_> = verdicts.iter().filter(|x| !x.1).map(|x| x.0.clone()).collect();
        assert_eq!(bad, vec![vec![vec![1, 0], vec![0]]]);
    }

    #[test]
    fn zero_flow_is_a_vertex() {
        let g = g_graph(2, &v("0,0"), &v("0,0")).unwrap();
        let f = lattice_points(&g, None).unwrap().remove(0);
        assert!(is_vertex_flow(&f));
        assert!(is_unsplittable(&f).unwrap());
        assert!(split_merge_check(&f).unwrap().0);
    }

    #[test]
    fn three_characterizations_agree_small() {
        let (a, b) = (v("1,1"), v("0,0"));
        let g = g_graph(2, &a, &b).unwrap();
        let mut verts = 0;
        for f in lattice_points(&g, None).unwrap() {
            let x = is_vertex_flow(&f);
            assert_eq!(x, split_merge_check(&f).unwrap().0);
            assert_eq!(x, is_vertex_pp(&psi_inverse(&f).unwrap()));
            assert_eq!(x, is_unsplittable(&f).unwrap());
            verts += x as usize;
        }
        assert_eq!(verts, 10);
    }

    #[test]
    fn shifted_counts() {
        let delta = |n: u64| (1..=n).rev().collect::<Vec<_>>();
        for (n, want) in [(1usize, 1u32), (2, 1), (3, 2), (4, 12)] {
            let s = shifted_shape_of(&delta(n as u64), n).unwrap();
            assert_eq!(count_shifted_syt(&s).unwrap(), BigUint::from(want));
            assert_eq!(staircase_syt_product_formula(n as u64), BigUint::from(want));
        }
        assert!(shifted_shape_of(&[3], 2).is_err());
    }

    #[test]
    fn standard_staircase_three() {
        let s = theta(&v("1,1,1"), &v("0,0,0")).unwrap();
        let fills = standard_fillings(&s);
        assert_eq!(fills.len(), 16);
        let good = fills.iter().filter(|p| is_standard_vertex_pp(p).unwrap()).count();
        assert_eq!(good, 2);
    }

    #[test]
    fn standard_rejects_repeats() {
        let s = SkewShape::new(vec![2], vec![0]).unwrap();
        let pp = PlanePartition::new(s, 1, vec![vec![1, 1]]).unwrap();
        assert!(is_standard_vertex_pp(&pp).is_err());
    }
}
