//! Plane partitions of skew shape, the bijection Ψ with integral flows on
//! `G(n,m)`, and the trajectory decomposition of a flow.
//!
//! Row `i` of a plane partition of shape `θ(a,b)` corresponds to row
//! `n + 1 - i` of the graph, and column `u` to the `u`-th unit of flow counted
//! from the top. The entries of column `u` are the graph columns at which that
//! unit descends.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::graphs::{g_graph, GraphKind, GridGraph, IntegerFlow, Vertex};
use crate::vectors::{theta, NatVector, SkewShape};

/// A weakly decreasing filling of a skew shape with entries at most `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanePartition {
    shape: SkewShape,
    m: u64,
    rows: Vec<Vec<u64>>,
}

impl PlanePartition {
    /// `rows[i-1]` lists the entries of row `i` in columns `μ_i+1 ..= λ_i`.
    pub fn new(shape: SkewShape, m: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        check_len(rows.len(), shape.rows())?;
        for (i, row) in rows.iter().enumerate() {
            check_len(row.len(), (shape.outer[i] - shape.inner[i]) as usize)?;
        }
        let pp = PlanePartition { shape, m, rows };
        if !pp.is_valid() {
            return Err(Error::Input("filling is not a plane partition".into()));
        }
        Ok(pp)
    }

    fn is_valid(&self) -> bool {
        self.shape.cells().into_iter().all(|(i, j)| {
            let x = self.get(i, j).unwrap();
            x <= self.m
                && self.get(i, j + 1).is_none_or(|r| r <= x)
                && self.get(i + 1, j).is_none_or(|d| d <= x)
        })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn bound(&self) -> u64 {
        self.m
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Entry `π_{i,j}` (1-based), `None` outside the shape.
    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        if !self.shape.contains(i, j) {
            return None;
        }
        Some(self.rows[i - 1][j - 1 - self.shape.inner[i - 1] as usize])
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn with_bound(&self, m: u64) -> Result<Self> {
        PlanePartition::new(self.shape.clone(), m, self.rows.clone())
    }

    /// Young-diagram rendering; cells of `μ` are drawn as `.`.
    pub fn ascii(&self) -> String {
        let width = self.m.to_string().len().max(1);
        let mut s = String::new();
        for i in 1..=self.shape.rows() {
            for j in 1..=self.shape.outer[i - 1] as usize {
                match self.get(i, j) {
                    Some(x) => {
                        let _ = write!(s, "{x:>width$} ");
                    }
                    None => {
                        let _ = write!(s, "{:>width$} ", ".");
                    }
                }
            }
            s = s.trim_end().to_string();
            s.push('\n');
        }
        s
    }
}

/// JSON form: rows over columns `1..=λ_i`, with `null` for cells of `μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanePartitionJson {
    pub shape: SkewShape,
    pub m: u64,
    pub rows: Vec<Vec<Option<u64>>>,
}

impl From<&PlanePartition> for PlanePartitionJson {
    fn from(pp: &PlanePartition) -> Self {
        let rows = (1..=pp.shape.rows())
            .map(|i| (1..=pp.shape.outer[i - 1] as usize).map(|j| pp.get(i, j)).collect())
            .collect();
        PlanePartitionJson { shape: pp.shape.clone(), m: pp.m, rows }
    }
}

impl TryFrom<PlanePartitionJson> for PlanePartition {
    type Error = Error;
    fn try_from(j: PlanePartitionJson) -> Result<Self> {
        let shape = SkewShape::new(j.shape.outer, j.shape.inner)?;
        check_len(j.rows.len(), shape.rows())?;
        let mut rows = Vec::with_capacity(shape.rows());
        for (i, row) in j.rows.iter().enumerate() {
            check_len(row.len(), shape.outer[i] as usize)?;
            let mu = shape.inner[i] as usize;
            if row[..mu].iter().any(Option::is_some) || row[mu..].iter().any(Option::is_none) {
                return Err(Error::Input(format!("row {} does not match the shape", i + 1)));
            }
            rows.push(row[mu..].iter().map(|x| x.unwrap()).collect());
        }
        PlanePartition::new(shape, j.m, rows)
    }
}

impl Serialize for PlanePartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlanePartitionJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanePartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PlanePartitionJson::deserialize(d)?;
        PlanePartition::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Every plane partition of `shape` with entries at most `m`.
///
/// Cells are visited column by column from the right, bottom to top within a
/// column; the stream starts at the all-`m` filling and decrements
/// lexicographically in that cell order.
pub struct PlanePartitions {
    shape: SkewShape,
    m: u64,
    cells: Vec<(usize, usize)>,
    /// For each cell, positions (in `cells`) of its right and lower neighbours.
    lower: Vec<[Option<usize>; 2]>,
    values: Vec<u64>,
    started: bool,
    done: bool,
}

impl PlanePartitions {
    pub fn new(shape: &SkewShape, m: u64) -> Self {
        let mut cells: Vec<(usize, usize)> = shape.cells();
        cells.sort_by(|&(i1, j1), &(i2, j2)| j2.cmp(&j1).then(i2.cmp(&i1)));
        let pos = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j));
        let lower = cells.iter().map(|&(i, j)| [pos(i, j + 1), pos(i + 1, j)]).collect();
        let n = cells.len();
        PlanePartitions {
            shape: shape.clone(),
            m,
            cells,
            lower,
            values: vec![m; n],
            started: false,
            done: false,
        }
    }

    fn lower_bound(&self, k: usize) -> u64 {
        self.lower[k].iter().flatten().map(|&p| self.values[p]).max().unwrap_or(0)
    }

    fn current(&self) -> PlanePartition {
        let mut rows: Vec<Vec<u64>> = (0..self.shape.rows())
            .map(|i| vec![0; (self.shape.outer[i] - self.shape.inner[i]) as usize])
            .collect();
        for (k, &(i, j)) in self.cells.iter().enumerate() {
            rows[i - 1][j - 1 - self.shape.inner[i - 1] as usize] = self.values[k];
        }
        PlanePartition { shape: self.shape.clone(), m: self.m, rows }
    }
}

impl Iterator for PlanePartitions {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        let k = (0..self.cells.len()).rev().find(|&k| self.values[k] > self.lower_bound(k));
        match k {
            None => {
                self.done = true;
                None
            }
            Some(k) => {
                self.values[k] -= 1;
                self.values[k + 1..].iter_mut().for_each(|x| *x = self.m);
                Some(self.current())
            }
        }
    }
}

pub fn enumerate_pps(shape: &SkewShape, m: u64) -> PlanePartitions {
    PlanePartitions::new(shape, m)
}

/// Where a unit trajectory ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrajectoryEnd {
    /// The vertex `(row, m)`.
    Row(usize),
    Sink,
}

/// The path of one unit of flow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub start_row: usize,
    pub end: TrajectoryEnd,
    /// `(r, d)`: the unit leaves row `r` downward (or to the sink) at column `d`.
    pub descents: Vec<(usize, usize)>,
    /// Vertex indices along the path.
    pub vertices: Vec<usize>,
    /// Edge indices along the path.
    pub edges: Vec<usize>,
}

impl Trajectory {
    fn from_descents(g: &GridGraph, start_row: usize, descents: Vec<(usize, usize)>, end: TrajectoryEnd) -> Self {
        let m = g.m();
        let mut vertices = vec![g.g_vertex(start_row, 0)];
        let mut edges = Vec::new();
        let (mut r, mut c) = (start_row, 0);
        for &(row, d) in &descents {
            debug_assert_eq!(row, r);
            for j in c + 1..=d {
                edges.push(g.h_edge(r, j));
                vertices.push(g.g_vertex(r, j));
            }
            edges.push(g.down_edge(r, d));
            c = d;
            if r == g.n() {
                vertices.push(g.sink().unwrap());
            } else {
                r += 1;
                vertices.push(g.g_vertex(r, c));
            }
        }
        if let TrajectoryEnd::Row(er) = end {
            debug_assert_eq!(er, r);
            for j in c + 1..=m {
                edges.push(g.h_edge(r, j));
                vertices.push(g.g_vertex(r, j));
            }
        }
        Trajectory { start_row, end, descents, vertices, edges }
    }

    pub fn start_vertex(&self) -> usize {
        self.vertices[0]
    }

    pub fn end_vertex(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

/// The fixed start and end of unit `u` (1-based) of the instance `(a,b)`:
/// it starts at `(n+1-λ'_u, 0)` and ends at `(n+1-μ'_u, m)`, or at the sink
/// when `μ'_u = 0`.
pub fn unit_endpoints(shape: &SkewShape, u: usize) -> (usize, TrajectoryEnd) {
    let n = shape.rows();
    let (lc, mc) = (shape.outer_conjugate(), shape.inner_conjugate());
    let start = n + 1 - lc[u - 1];
    let end = if mc[u - 1] == 0 { TrajectoryEnd::Sink } else { TrajectoryEnd::Row(n + 1 - mc[u - 1]) };
    (start, end)
}

fn check_instance(pp: &PlanePartition, a: &NatVector, b: &NatVector) -> Result<()> {
    if theta(a, b)? != pp.shape {
        return Err(Error::Input("plane partition shape differs from θ(a,b)".into()));
    }
    Ok(())
}

/// The trajectories of the units of flow encoded by `pp` on `g = G(n,m)`.
pub fn pp_trajectories(pp: &PlanePartition, g: &GridGraph) -> Vec<Trajectory> {
    let shape = &pp.shape;
    let n = shape.rows();
    let (lc, mc) = (shape.outer_conjugate(), shape.inner_conjugate());
    (1..=shape.cols())
        .map(|u| {
            let (start, end) = unit_endpoints(shape, u);
            let descents = (mc[u - 1] + 1..=lc[u - 1])
                .rev()
                .map(|i| (n + 1 - i, pp.get(i, u).unwrap() as usize))
                .collect();
            Trajectory::from_descents(g, start, descents, end)
        })
        .collect()
}

/// Ψ: the flow on `G(n, m)` whose units follow the columns of `pp`, where `m`
/// is the entry bound of `pp`.
pub fn psi(pp: &PlanePartition, a: &NatVector, b: &NatVector) -> Result<IntegerFlow> {
    check_instance(pp, a, b)?;
    let g = g_graph(pp.m as usize, a, b)?;
    psi_on(pp, &g)
}

/// Ψ onto an already built `G(n,m)` for the same instance.
pub fn psi_on(pp: &PlanePartition, g: &Arc<GridGraph>) -> Result<IntegerFlow> {
    if g.m() as u64 != pp.m {
        return Err(Error::Input("graph width differs from the entry bound".into()));
    }
    let mut values = vec![0i64; g.num_edges()];
    for t in pp_trajectories(pp, g) {
        for e in t.edges {
            values[e] += 1;
        }
    }
    IntegerFlow::from_values(Arc::clone(g), values)
}

/// The canonical trajectory decomposition.
///
/// Units are extracted one at a time: each starts at the highest source with
/// remaining supply, travels right while the horizontal edge has remaining
/// flow, stops at a column-`m` vertex with remaining demand, and otherwise
/// descends.
pub fn trajectories(f: &IntegerFlow) -> Result<Vec<Trajectory>> {
    let g = f.graph();
    if g.kind() != GraphKind::G || g.is_reversed() {
        return Err(Error::Input("trajectories are defined on G(n,m)".into()));
    }
    if !crate::graphs::verify_flow(f) {
        return Err(Error::NotAFlow("conservation fails".into()));
    }
    let (n, m) = (g.n(), g.m());
    let mut rem: Vec<i64> = f.values().to_vec();
    let mut supply: Vec<u64> = g.a().as_slice().to_vec();
    let mut demand: Vec<u64> = g.b().as_slice().to_vec();
    let mut out = Vec::new();
    while let Some(r0) = (1..=n).find(|&r| supply[r - 1] > 0) {
        supply[r0 - 1] -= 1;
        let (mut r, mut c) = (r0, 0usize);
        let mut descents = Vec::new();
        let end = loop {
            if c == m && demand[r - 1] > 0 {
                demand[r - 1] -= 1;
                break TrajectoryEnd::Row(r);
            }
            if c < m && rem[g.h_edge(r, c + 1)] > 0 {
                rem[g.h_edge(r, c + 1)] -= 1;
                c += 1;
                continue;
            }
            let e = g.down_edge(r, c);
            if rem[e] == 0 {
                return Err(Error::NotAFlow(format!("unit stuck at ({r},{c})")));
            }
            rem[e] -= 1;
            descents.push((r, c));
            if r == n {
                break TrajectoryEnd::Sink;
            }
            r += 1;
        };
        out.push(Trajectory::from_descents(g, r0, descents, end));
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(Error::NotAFlow("flow left over after extraction".into()));
    }
    Ok(out)
}

/// Ψ⁻¹: reads the descent columns of the canonical decomposition into the
/// columns of a plane partition of shape `θ(a,b)`.
pub fn psi_inverse(f: &IntegerFlow) -> Result<PlanePartition> {
    let g = f.graph();
    let shape = theta(g.a(), g.b())?;
    let n = g.n();
    let ts = trajectories(f)?;
    check_len(ts.len(), shape.cols())?;
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| vec![0; (shape.outer[i] - shape.inner[i]) as usize])
        .collect();
    for (k, t) in ts.iter().enumerate() {
        let u = k + 1;
        if unit_endpoints(&shape, u) != (t.start_row, t.end) {
            return Err(Error::NotAFlow(format!("unit {u} has unexpected endpoints")));
        }
        for &(r, d) in &t.descents {
            let i = n + 1 - r;
            rows[i - 1][u - 1 - shape.inner[i - 1] as usize] = d as u64;
        }
    }
    PlanePartition::new(shape, g.m() as u64, rows)
}

/// The horizontal matrix read off row counts: `x_{1j} + ⋯ + x_{ij}` is the
/// number of entries `>= j` in row `n - i + 1`, plus `μ_{n-i+1}` for the units
/// that already ended in rows `<= i`.
pub fn row_count_map(pp: &PlanePartition) -> Vec<Vec<i64>> {
    let shape = &pp.shape;
    let n = shape.rows();
    let m = pp.m as usize;
    let count = |i: usize, j: usize| -> i64 {
        if i == 0 {
            return 0;
        }
        let r = n - i + 1;
        let big = pp.rows[r - 1].iter().filter(|&&x| x as usize >= j).count();
        (big as u64 + shape.inner[r - 1]) as i64
    };
    (1..=n)
        .map(|i| (1..=m).map(|j| count(i, j) - count(i - 1, j)).collect())
        .collect()
}

/// The vertex label of where a trajectory ends.
pub fn end_label(t: &Trajectory, m: usize) -> Vertex {
    match t.end {
        TrajectoryEnd::Row(r) => Vertex::Grid(r, m as i64),
        TrajectoryEnd::Sink => Vertex::Sink,
    }
}
