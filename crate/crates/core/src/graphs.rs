//! Directed grid graphs, their netflows, integral flows and supports.
//!
//! `G(n,m)` has vertices `(i,j)` for `1 <= i <= n`, `0 <= j <= m` and a sink
//! `s`. Its edges, in canonical order, are the horizontal edges
//! `(i,j-1) -> (i,j)` (row-major), the vertical edges `(i,j) -> (i+1,j)` for
//! `i < n`, and the sink edges `(n,j) -> s` for `0 <= j <= m`. Vertex `(i,0)`
//! has netflow `a_i`, vertex `(i,m)` has netflow `-b_i` and the sink balances.
//!
//! `H(n,m)` is the `(n+1) x (m+1)` grid without a sink. The three one-column
//! graphs `H_⌜(n)`, `H_⌝(n)` and `H_⊤(n)` are used by the column recursions.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::vectors::{dominates, reverse, NatVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    G,
    H,
    HCornerLeft,
    HCornerRight,
    HTop,
}

/// A vertex label: grid position `(row, column)` with 1-based rows, or the sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Grid(usize, i64),
    Sink,
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Vertex::Grid(i, j) => write!(f, "({i},{j})"),
            Vertex::Sink => write!(f, "s"),
        }
    }
}

/// A grid graph with netflows. Vertex indices follow a topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridGraph {
    kind: GraphKind,
    n: usize,
    m: usize,
    a: NatVector,
    b: NatVector,
    reversed: bool,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    netflow: Vec<i64>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    index: HashMap<Vertex, usize>,
}

struct Builder {
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort();
        let index = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        Builder { vertices, index, edges: Vec::new() }
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((self.index[&u], self.index[&v]));
    }
}

impl GridGraph {
    fn assemble(
        kind: GraphKind,
        n: usize,
        m: usize,
        a: NatVector,
        b: NatVector,
        bld: Builder,
        netflow: Vec<i64>,
    ) -> Self {
        let nv = bld.vertices.len();
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (e, &(u, v)) in bld.edges.iter().enumerate() {
            out_edges[u].push(e);
            in_edges[v].push(e);
        }
        GridGraph {
            kind,
            n,
            m,
            a,
            b,
            reversed: false,
            vertices: bld.vertices,
            edges: bld.edges,
            netflow,
            out_edges,
            in_edges,
            index: bld.index,
        }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns minus one; zero for the one-column graphs.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> &NatVector {
        &self.a
    }

    pub fn b(&self) -> &NatVector {
        &self.b
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn netflows(&self) -> &[i64] {
        &self.netflow
    }

    pub fn netflow(&self, v: usize) -> i64 {
        self.netflow[v]
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.out_edges[u].iter().copied().find(|&e| self.edges[e].1 == v)
    }

    fn require_g(&self) {
        assert!(
            self.kind == GraphKind::G && !self.reversed,
            "operation defined on G(n,m) only"
        );
    }

    /// Index of the horizontal edge `(i,j-1) -> (i,j)` of `G(n,m)`.
    pub fn h_edge(&self, i: usize, j: usize) -> usize {
        self.require_g();
        debug_assert!((1..=self.n).contains(&i) && (1..=self.m).contains(&j));
        (i - 1) * self.m + (j - 1)
    }

    /// Index of the edge leaving `(i,j)` downwards: vertical for `i < n`, to
    /// the sink for `i = n`.
    pub fn down_edge(&self, i: usize, j: usize) -> usize {
        self.require_g();
        debug_assert!((1..=self.n).contains(&i) && j <= self.m);
        self.n * self.m + (i - 1) * (self.m + 1) + j
    }

    /// Index of vertex `(i,j)` of `G(n,m)`.
    pub fn g_vertex(&self, i: usize, j: usize) -> usize {
        self.require_g();
        (i - 1) * (self.m + 1) + j
    }

    pub fn sink(&self) -> Option<usize> {
        self.vertex_index(Vertex::Sink)
    }

    /// DOT rendering, optionally labelling edges with flow values.
    pub fn to_dot(&self, flow: Option<&IntegerFlow>) -> String {
        let mut s = String::from("digraph G {\n  rankdir=LR;\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{k} [label=\"{v}\\n{}\"];", self.netflow[k]);
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            match flow {
                Some(f) if f.values[e] > 0 => {
                    let _ = writeln!(s, "  v{u} -> v{v} [label=\"{}\", penwidth=2];", f.values[e]);
                }
                Some(_) => {
                    let _ = writeln!(s, "  v{u} -> v{v} [style=dotted];");
                }
                None => {
                    let _ = writeln!(s, "  v{u} -> v{v};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn signed(x: u64) -> i64 {
    i64::try_from(x).expect("netflow exceeds i64")
}

/// Builds one of the five graph families with netflow data `(a, b)`.
///
/// For `G`, `|a| = |b| = n`; for `H`, `|a| = |b| = n + 1`; `m` is ignored by
/// the one-column graphs.
pub fn build_graph(kind: GraphKind, n: usize, m: usize, a: &NatVector, b: &NatVector) -> Result<GridGraph> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    check_len(a.len(), b.len())?;
    let rows = if kind == GraphKind::H { n + 1 } else { n };
    check_len(a.len(), rows)?;
    let (a, b) = (a.clone(), b.clone());
    let total = signed(a.sum()) - signed(b.sum());
    let grid = |cols: std::ops::RangeInclusive<i64>, rows: usize, sink: bool| {
        let mut v: Vec<Vertex> = (1..=rows)
            .flat_map(|i| cols.clone().map(move |j| Vertex::Grid(i, j)))
            .collect();
        if sink {
            v.push(Vertex::Sink);
        }
        v
    };
    let g = match kind {
        GraphKind::G => {
            let mi = m as i64;
            let mut bld = Builder::new(grid(0..=mi, n, true));
            for i in 1..=n {
                for j in 1..=mi {
                    bld.edge(Vertex::Grid(i, j - 1), Vertex::Grid(i, j));
                }
            }
            for i in 1..n {
                for j in 0..=mi {
                    bld.edge(Vertex::Grid(i, j), Vertex::Grid(i + 1, j));
                }
            }
            for j in 0..=mi {
                bld.edge(Vertex::Grid(n, j), Vertex::Sink);
            }
            let mut net = vec![0i64; bld.vertices.len()];
            for i in 1..=n {
                net[bld.index[&Vertex::Grid(i, 0)]] += signed(a.entry(i));
                net[bld.index[&Vertex::Grid(i, mi)]] -= signed(b.entry(i));
            }
            net[bld.index[&Vertex::Sink]] = -total;
            GridGraph::assemble(kind, n, m, a, b, bld, net)
        }
        GraphKind::H => {
            let mi = m as i64;
            let mut bld = Builder::new(grid(0..=mi, n + 1, false));
            for i in 1..=n + 1 {
                for j in 1..=mi {
                    bld.edge(Vertex::Grid(i, j - 1), Vertex::Grid(i, j));
                }
            }
            for i in 1..=n {
                for j in 0..=mi {
                    bld.edge(Vertex::Grid(i, j), Vertex::Grid(i + 1, j));
                }
            }
            if total != 0 {
                return Err(Error::Input("H(n,m) needs Σa = Σb".into()));
            }
            let mut net = vec![0i64; bld.vertices.len()];
            for i in 1..=n + 1 {
                net[bld.index[&Vertex::Grid(i, 0)]] += signed(a.entry(i));
                net[bld.index[&Vertex::Grid(i, mi)]] -= signed(b.entry(i));
            }
            GridGraph::assemble(kind, n, m, a, b, bld, net)
        }
        GraphKind::HCornerLeft | GraphKind::HCornerRight | GraphKind::HTop => {
            let (lo, hi, src, dst, mid) = match kind {
                GraphKind::HCornerLeft => (0, 1, 0, 1, 0),
                GraphKind::HCornerRight => (-1, 0, -1, 0, 0),
                _ => (-1, 1, -1, 1, 0),
            };
            let mut bld = Builder::new(grid(lo..=hi, n, true));
            for i in 1..=n {
                if kind == GraphKind::HTop {
                    bld.edge(Vertex::Grid(i, -1), Vertex::Grid(i, 0));
                    bld.edge(Vertex::Grid(i, 0), Vertex::Grid(i, 1));
                } else {
                    bld.edge(Vertex::Grid(i, lo), Vertex::Grid(i, hi));
                }
            }
            for i in 1..n {
                bld.edge(Vertex::Grid(i, mid), Vertex::Grid(i + 1, mid));
            }
            bld.edge(Vertex::Grid(n, mid), Vertex::Sink);
            let mut net = vec![0i64; bld.vertices.len()];
            for i in 1..=n {
                net[bld.index[&Vertex::Grid(i, src)]] += signed(a.entry(i));
                net[bld.index[&Vertex::Grid(i, dst)]] -= signed(b.entry(i));
            }
            net[bld.index[&Vertex::Sink]] = -total;
            GridGraph::assemble(kind, n, 0, a, b, bld, net)
        }
    };
    Ok(g)
}

/// Shorthand for `G(n,m)` with `n = |a|`.
pub fn g_graph(m: usize, a: &NatVector, b: &NatVector) -> Result<Arc<GridGraph>> {
    Ok(Arc::new(build_graph(GraphKind::G, a.len(), m, a, b)?))
}

/// Reverses every edge and negates netflows.
///
/// For `H(n,m)` the result is relabelled by `(i,j) ↦ (n+2-i, m-j)` and is again
/// `H(n,m)` with data `(rev b', rev a')`; edge `k` of the result is the image
/// of edge [`reversal_edge_map`]`(g)[k]` of `g`. For the other families the
/// result keeps the original labels, lists vertices in reverse order and keeps
/// edge indices.
pub fn reverse_polytope(g: &GridGraph) -> GridGraph {
    if g.kind == GraphKind::H && !g.reversed {
        return build_graph(GraphKind::H, g.n, g.m, &reverse(&g.b), &reverse(&g.a))
            .expect("reversal of a valid H(n,m) instance");
    }
    let nv = g.vertices.len();
    let flip = |v: usize| nv - 1 - v;
    let vertices: Vec<Vertex> = g.vertices.iter().rev().copied().collect();
    let index = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let bld = Builder {
        vertices,
        index,
        edges: g.edges.iter().map(|&(u, v)| (flip(v), flip(u))).collect(),
    };
    let netflow = g.netflow.iter().rev().map(|x| -x).collect();
    let mut r = GridGraph::assemble(g.kind, g.n, g.m, g.a.clone(), g.b.clone(), bld, netflow);
    r.reversed = !g.reversed;
    r
}

/// For `H(n,m)`: `map[k]` is the edge of `g` whose reversal is edge `k` of
/// [`reverse_polytope`]`(g)`. The identity for the other families.
pub fn reversal_edge_map(g: &GridGraph) -> Vec<usize> {
    if g.kind != GraphKind::H || g.reversed {
        return (0..g.num_edges()).collect();
    }
    let r = reverse_polytope(g);
    let (n, m) = (g.n, g.m as i64);
    let image = |v: Vertex| match v {
        Vertex::Grid(i, j) => Vertex::Grid(n + 2 - i, m - j),
        Vertex::Sink => Vertex::Sink,
    };
    r.edges
        .iter()
        .map(|&(u, v)| {
            let (ou, ov) = (image(r.vertices[v]), image(r.vertices[u]));
            let (ou, ov) = (g.index[&ou], g.index[&ov]);
            g.edge_between(ou, ov).expect("reversed edge exists")
        })
        .collect()
}

/// An integer labelling of the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerFlow {
    graph: Arc<GridGraph>,
    values: Vec<i64>,
}

impl IntegerFlow {
    /// Wraps edge values without checking conservation.
    pub fn from_values(graph: Arc<GridGraph>, values: Vec<i64>) -> Result<Self> {
        check_len(values.len(), graph.num_edges())?;
        Ok(IntegerFlow { graph, values })
    }

    pub fn graph(&self) -> &Arc<GridGraph> {
        &self.graph
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, e: usize) -> i64 {
        self.values[e]
    }

    /// `x_{i,j}`: flow on `(i,j-1) -> (i,j)` of `G(n,m)`.
    pub fn x(&self, i: usize, j: usize) -> i64 {
        self.values[self.graph.h_edge(i, j)]
    }

    /// `y_{i,j}`: flow on `(i,j) -> (i+1,j)`, or on `(n,j) -> s` when `i = n`.
    pub fn y(&self, i: usize, j: usize) -> i64 {
        self.values[self.graph.down_edge(i, j)]
    }

    /// The `n x m` matrix of horizontal flows of a flow on `G(n,m)`.
    pub fn horizontal(&self) -> Vec<Vec<i64>> {
        let (n, m) = (self.graph.n, self.graph.m);
        (1..=n).map(|i| (1..=m).map(|j| self.x(i, j)).collect()).collect()
    }

    /// Sum of the values, a crude size measure.
    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }
}

/// Solves the vertical and sink flows of `G(n,m)` from the horizontal matrix
/// `x` (`x[i-1][j-1]` is the flow on `(i,j-1) -> (i,j)`).
pub fn flow_from_horizontal(g: &Arc<GridGraph>, x: &[Vec<i64>]) -> Result<IntegerFlow> {
    if g.kind != GraphKind::G || g.reversed {
        return Err(Error::Input("flow_from_horizontal needs G(n,m)".into()));
    }
    let (n, m) = (g.n, g.m);
    check_len(x.len(), n)?;
    let mut values = vec![0i64; g.num_edges()];
    for (i, row) in x.iter().enumerate() {
        check_len(row.len(), m)?;
        for (j, &v) in row.iter().enumerate() {
            if v < 0 {
                return Err(Error::NotAFlow(format!("negative horizontal flow at ({},{})", i + 1, j + 1)));
            }
            values[g.h_edge(i + 1, j + 1)] = v;
        }
    }
    for i in 1..=n {
        for j in 0..=m {
            let v = g.g_vertex(i, j);
            let inflow: i64 = g.in_edges[v].iter().map(|&e| values[e]).sum();
            let right = if j < m { values[g.h_edge(i, j + 1)] } else { 0 };
            let down = g.netflow[v] + inflow - right;
            if down < 0 {
                return Err(Error::NotAFlow(format!("vertex ({i},{j}) would need negative outflow")));
            }
            values[g.down_edge(i, j)] = down;
        }
    }
    let f = IntegerFlow { graph: Arc::clone(g), values };
    if verify_flow(&f) {
        Ok(f)
    } else {
        Err(Error::NotAFlow("sink conservation fails".into()))
    }
}

/// Nonnegativity and conservation at every vertex.
pub fn verify_flow(f: &IntegerFlow) -> bool {
    let g = &f.graph;
    if f.values.len() != g.num_edges() || f.values.iter().any(|&x| x < 0) {
        return false;
    }
    (0..g.num_vertices()).all(|v| {
        let out: i64 = g.out_edges[v].iter().map(|&e| f.values[e]).sum();
        let inn: i64 = g.in_edges[v].iter().map(|&e| f.values[e]).sum();
        out - inn == g.netflow[v]
    })
}

/// Row-sum identity `y_{i,0} + ⋯ + y_{i,m} = Σ_{k<=i}(a_k - b_k)` on `G(n,m)`.
pub fn row_sums_hold(f: &IntegerFlow) -> bool {
    let g = &f.graph;
    let (pa, pb) = (g.a.prefix_sums(), g.b.prefix_sums());
    (1..=g.n).all(|i| {
        let s: i64 = (0..=g.m).map(|j| f.y(i, j)).sum();
        s == signed(pa[i - 1]) - signed(pb[i - 1])
    })
}

/// Transports a flow of `G(n,m)` with data `(a,b)` to `H(n,m)` with
/// `a' = (a_1-b_1, a_2, …, a_n, 0)` and `b' = (0, b_2, …, b_n, Σ(a_i-b_i))`.
///
/// The `b_1` units that must run straight along row 1 are removed, sink
/// edges become vertical edges into row `n+1`, and row `n+1` carries the
/// cumulative sink flow.
pub fn map_g_to_h(f: &IntegerFlow) -> Result<IntegerFlow> {
    let g = &f.graph;
    if g.kind != GraphKind::G || g.reversed {
        return Err(Error::Input("map_g_to_h needs a flow on G(n,m)".into()));
    }
    let (n, m) = (g.n, g.m);
    let (a, b) = (g.a.as_slice(), g.b.as_slice());
    let b1 = b[0];
    let mut ap: Vec<u64> = a.to_vec();
    ap[0] -= b1.min(ap[0]);
    ap.push(0);
    let mut bp: Vec<u64> = b.to_vec();
    bp[0] = 0;
    bp.push(a.iter().sum::<u64>() - b.iter().sum::<u64>());
    let h = Arc::new(build_graph(GraphKind::H, n, m, &NatVector::new(ap)?, &NatVector::new(bp)?)?);
    let mut values = vec![0i64; h.num_edges()];
    let hedge = |u: Vertex, v: Vertex| h.edge_between(h.index[&u], h.index[&v]).expect("edge of H");
    let mi = m as i64;
    for i in 1..=n {
        for j in 1..=m {
            let shift = if i == 1 { signed(b1) } else { 0 };
            values[hedge(Vertex::Grid(i, j as i64 - 1), Vertex::Grid(i, j as i64))] = f.x(i, j) - shift;
        }
        for j in 0..=mi {
            values[hedge(Vertex::Grid(i, j), Vertex::Grid(i + 1, j))] = f.y(i, j as usize);
        }
    }
    let mut acc = 0;
    for j in 1..=mi {
        acc += f.y(n, j as usize - 1);
        values[hedge(Vertex::Grid(n + 1, j - 1), Vertex::Grid(n + 1, j))] = acc;
    }
    let out = IntegerFlow { graph: h, values };
    if verify_flow(&out) {
        Ok(out)
    } else {
        Err(Error::NotAFlow("input is not a valid flow of G(n,m)".into()))
    }
}

/// Invariant-preserving check used by the CLI and tests: `a ⊵ b`.
pub fn instance_nonempty(a: &NatVector, b: &NatVector) -> Result<bool> {
    dominates(a, b)
}

/// A set of edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    graph: Arc<GridGraph>,
    edges: BitVec,
}

impl Subgraph {
    pub fn new(graph: Arc<GridGraph>, edges: BitVec) -> Result<Self> {
        check_len(edges.len(), graph.num_edges())?;
        Ok(Subgraph { graph, edges })
    }

    pub fn from_indices(graph: Arc<GridGraph>, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut edges = bitvec![0; graph.num_edges()];
        for e in idx {
            edges.set(e, true);
        }
        Subgraph { graph, edges }
    }

    pub fn graph(&self) -> &Arc<GridGraph> {
        &self.graph
    }

    pub fn bits(&self) -> &BitSlice {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges[e]
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter_ones()
    }

    pub fn len(&self) -> usize {
        self.edges.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.not_any()
    }
}

/// Edges carrying positive flow.
pub fn support(f: &IntegerFlow) -> Subgraph {
    Subgraph::from_indices(
        Arc::clone(&f.graph),
        f.values.iter().enumerate().filter(|(_, &x)| x > 0).map(|(e, _)| e),
    )
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes of `x` and `y`; false if they were already joined.
    pub(crate) fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }
}

/// Undirected acyclicity of the edge set.
pub fn is_forest(s: &Subgraph) -> bool {
    let g = &s.graph;
    let mut uf = UnionFind::new(g.num_vertices());
    s.edge_indices().all(|e| {
        let (u, v) = g.edges[e];
        uf.union(u, v)
    })
}

/// The unique flow supported on the forest `s`, if that flow is positive on
/// every edge of `s`. Each edge carries the total netflow of the part of its
/// tree on the tail side.
pub fn unique_flow_on_forest(s: &Subgraph) -> Result<Option<IntegerFlow>> {
    if !is_forest(s) {
        return Err(Error::Input("support is not a forest".into()));
    }
    let g = &s.graph;
    let nv = g.num_vertices();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in s.edge_indices() {
        let (u, v) = g.edges[e];
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut values = vec![0i64; g.num_edges()];
    for e in s.edge_indices() {
        let (u, _) = g.edges[e];
        let mut seen = vec![false; nv];
        let mut stack = vec![u];
        seen[u] = true;
        let mut total = 0;
        while let Some(w) = stack.pop() {
            total += g.netflow[w];
            for &(x, f) in &adj[w] {
                if f != e && !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        if total <= 0 {
            return Ok(None);
        }
        values[e] = total;
    }
    let f = IntegerFlow { graph: Arc::clone(g), values };
    Ok(verify_flow(&f).then_some(f))
}

/// Every integral flow, by distributing outflow vertex by vertex in
/// topological order. Fails once more than `budget` flows are produced.
pub fn lattice_points(g: &Arc<GridGraph>, budget: Option<u64>) -> Result<Vec<IntegerFlow>> {
    let mut out = Vec::new();
    let mut values = vec![0i64; g.num_edges()];
    let limit = budget.unwrap_or(u64::MAX);
    enumerate_from(g, 0, &mut values, &mut |vals| {
        if out.len() as u64 >= limit {
            return Err(Error::BudgetExceeded(limit));
        }
        out.push(IntegerFlow { graph: Arc::clone(g), values: vals.to_vec() });
        Ok(())
    })?;
    Ok(out)
}

/// Number of integral flows (same enumeration as [`lattice_points`]).
pub fn count_lattice_points(g: &Arc<GridGraph>) -> u64 {
    let mut count = 0u64;
    let mut values = vec![0i64; g.num_edges()];
    enumerate_from(g, 0, &mut values, &mut |_| {
        count += 1;
        Ok(())
    })
    .expect("counting never fails");
    count
}

fn enumerate_from(
    g: &GridGraph,
    v: usize,
    values: &mut [i64],
    emit: &mut dyn FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if v == g.num_vertices() {
        return emit(values);
    }
    let inflow: i64 = g.in_edges[v].iter().map(|&e| values[e]).sum();
    let out = g.netflow[v] + inflow;
    if out < 0 {
        return Ok(());
    }
    let outs = g.out_edges[v].clone();
    if outs.is_empty() {
        return if out == 0 { enumerate_from(g, v + 1, values, emit) } else { Ok(()) };
    }
    distribute(g, v, &outs, 0, out, values, emit)
}

fn distribute(
    g: &GridGraph,
    v: usize,
    outs: &[usize],
    k: usize,
    left: i64,
    values: &mut [i64],
    emit: &mut dyn FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if k + 1 == outs.len() {
        values[outs[k]] = left;
        enumerate_from(g, v + 1, values, emit)?;
        values[outs[k]] = 0;
        return Ok(());
    }
    for x in (0..=left).rev() {
        values[outs[k]] = x;
        distribute(g, v, outs, k + 1, left - x, values, emit)?;
    }
    values[outs[k]] = 0;
    Ok(())
}

/// JSON form of a graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub kind: GraphKind,
    pub n: usize,
    pub m: Option<usize>,
    pub a: NatVector,
    pub b: NatVector,
    pub netflows: Vec<(Vertex, i64)>,
}

impl From<&GridGraph> for GraphJson {
    fn from(g: &GridGraph) -> Self {
        let m = matches!(g.kind, GraphKind::G | GraphKind::H).then_some(g.m);
        GraphJson {
            kind: g.kind,
            n: g.n,
            m,
            a: g.a.clone(),
            b: g.b.clone(),
            netflows: g.vertices.iter().copied().zip(g.netflow.iter().copied()).collect(),
        }
    }
}

impl TryFrom<GraphJson> for GridGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        let g = build_graph(j.kind, j.n, j.m.unwrap_or(0), &j.a, &j.b)?;
        let net: Vec<(Vertex, i64)> = g.vertices.iter().copied().zip(g.netflow.iter().copied()).collect();
        if !j.netflows.is_empty() && j.netflows != net {
            return Err(Error::Input("netflows inconsistent with (a,b)".into()));
        }
        Ok(g)
    }
}

/// JSON form of a flow on `G(n,m)`: the data and the horizontal matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowJson {
    pub n: usize,
    pub m: usize,
    pub a: NatVector,
    pub b: NatVector,
    pub x: Vec<Vec<i64>>,
}

impl From<&IntegerFlow> for FlowJson {
    fn from(f: &IntegerFlow) -> Self {
        let g = f.graph();
        FlowJson { n: g.n, m: g.m, a: g.a.clone(), b: g.b.clone(), x: f.horizontal() }
    }
}

impl FlowJson {
    pub fn into_flow(self) -> Result<IntegerFlow> {
        check_len(self.a.len(), self.n)?;
        let g = g_graph(self.m, &self.a, &self.b)?;
        flow_from_horizontal(&g, &self.x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> NatVector {
        s.parse().unwrap()
    }

    #[test]
    fn g_layout() {
        let g = build_graph(GraphKind::G, 3, 4, &v("2,3,2"), &v("0,1,2")).unwrap();
        assert_eq!(g.num_vertices(), 3 * 5 + 1);
        assert_eq!(g.num_edges(), 3 * 4 + 2 * 5 + 5);
        assert_eq!(g.netflows().iter().sum::<i64>(), 0);
        assert_eq!(g.netflow(g.sink().unwrap()), -4);
        for &(u, w) in g.edges() {
            assert!(u < w);
        }
    }

    #[test]
    fn h_top_single_row() {
        let g = build_graph(GraphKind::HTop, 1, 0, &v("5"), &v("5")).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 3);
        let g = Arc::new(g);
        let pts = lattice_points(&g, None).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].values(), &[5, 5, 0]);
    }

    #[test]
    fn horizontal_examples() {
        let g = g_graph(1, &v("1,1"), &v("0,0")).unwrap();
        let f = flow_from_horizontal(&g, &[vec![1], vec![1]]).unwrap();
        assert_eq!((f.y(1, 0), f.y(1, 1), f.y(2, 1), f.y(2, 0)), (0, 1, 2, 0));
        assert!(flow_from_horizontal(&g, &[vec![2], vec![0]]).is_err());
        let z = g_graph(2, &v("0,0"), &v("0,0")).unwrap();
        let f = flow_from_horizontal(&z, &[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(f.values().iter().all(|&x| x == 0));
        assert!(verify_flow(&f));
    }

    #[test]
    fn perturbed_flow_fails_verification() {
        let g = g_graph(2, &v("1,1"), &v("0,0")).unwrap();
        for f in lattice_points(&g, None).unwrap() {
            for e in 0..g.num_edges() {
                let mut vals = f.values().to_vec();
                vals[e] += 1;
                assert!(!verify_flow(&IntegerFlow::from_values(Arc::clone(&g), vals).unwrap()));
            }
        }
    }

    #[test]
    fn g_of_zero_width() {
        let g = g_graph(0, &v("2,1"), &v("1,0")).unwrap();
        let pts = lattice_points(&g, None).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(row_sums_hold(&pts[0]));
    }

    #[test]
    fn reversal_of_h() {
        let h = Arc::new(build_graph(GraphKind::H, 1, 1, &v("1,0"), &v("0,1")).unwrap());
        let r = Arc::new(reverse_polytope(&h));
        assert_eq!(r.a(), &v("1,0"));
        assert_eq!(r.b(), &v("0,1"));
        assert_eq!(count_lattice_points(&h), 2);
        assert_eq!(count_lattice_points(&r), 2);
        assert_eq!(reverse_polytope(&r), *h);
        let map = reversal_edge_map(&h);
        let mut sorted = map.clone();
        sorted.sort();
        assert_eq!(sorted, (0..h.num_edges()).collect::<Vec<_>>());
    }

    #[test]
    fn reversal_is_an_involution() {
        let g = build_graph(GraphKind::G, 2, 2, &v("1,1"), &v("0,1")).unwrap();
        let r = reverse_polytope(&g);
        assert!(r.is_reversed());
        assert_eq!(reverse_polytope(&r), g);
        let (g, r) = (Arc::new(g), Arc::new(r));
        assert_eq!(count_lattice_points(&g), count_lattice_points(&r));
    }

    #[test]
    fn g_to_h_counts() {
        let g = g_graph(1, &v("1,1"), &v("0,0")).unwrap();
        let pts = lattice_points(&g, None).unwrap();
        assert_eq!(pts.len(), 5);
        let images: Vec<_> = pts.iter().map(|f| map_g_to_h(f).unwrap()).collect();
        let h = Arc::clone(images[0].graph());
        assert_eq!(count_lattice_points(&h), 5);
        let mut vals: Vec<_> = images.iter().map(|f| f.values().to_vec()).collect();
        vals.sort();
        vals.dedup();
        assert_eq!(vals.len(), 5);
    }

    #[test]
    fn zero_flow_maps_to_zero() {
        let g = g_graph(2, &v("0,0"), &v("0,0")).unwrap();
        let f = flow_from_horizontal(&g, &[vec![0, 0], vec![0, 0]]).unwrap();
        let h = map_g_to_h(&f).unwrap();
        assert!(h.values().iter().all(|&x| x == 0));
        let s = support(&f);
        assert!(s.is_empty() && is_forest(&s));
    }

    #[test]
    fn forest_flow_on_single_path() {
        let g = g_graph(1, &v("1"), &v("0")).unwrap();
        let path = Subgraph::from_indices(Arc::clone(&g), [g.h_edge(1, 1), g.down_edge(1, 1)]);
        let f = unique_flow_on_forest(&path).unwrap().unwrap();
        assert_eq!(f.values(), &[1, 0, 1]);
        let partial = Subgraph::from_indices(Arc::clone(&g), [g.h_edge(1, 1)]);
        assert_eq!(unique_flow_on_forest(&partial).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let g = build_graph(GraphKind::G, 2, 1, &v("1,1"), &v("0,1")).unwrap();
        let j = serde_json::to_string(&GraphJson::from(&g)).unwrap();
        let back: GraphJson = serde_json::from_str(&j).unwrap();
        assert_eq!(GridGraph::try_from(back).unwrap(), g);
        let g = Arc::new(g);
        let f = lattice_points(&g, None).unwrap().pop().unwrap();
        let j = serde_json::to_string(&FlowJson::from(&f)).unwrap();
        let back: FlowJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.into_flow().unwrap(), f);
    }

    #[test]
    fn dot_mentions_every_edge() {
        let g = build_graph(GraphKind::HCornerLeft, 2, 0, &v("1,1"), &v("1,0")).unwrap();
        let dot = g.to_dot(None);
        assert_eq!(dot.matches("->").count(), g.num_edges());
    }
}
