//! Vertex counts for arbitrary `b` by sweeping the columns of `G(n,m)`.
//!
//! The state after a column records the horizontal flow leaving it and how
//! the vertices carrying that flow are connected to each other and to the
//! sink through the support built so far. A column is rejected when its
//! edges close a cycle, so the surviving flows are exactly the forests.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{check_len, Error, Result};
use crate::graphs::UnionFind;
use crate::vectors::{dominated_vectors, dominates, NatVector};

/// Component labels: `labels[i]` for rows with outgoing flow, and one label
/// for the sink, all in first-occurrence order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    flow: Vec<u64>,
    labels: Vec<Option<u8>>,
    sink: u8,
}

/// Applies one column with inflow `u` (components `prev`) and outflow `w`.
/// Returns the new labelling, or `None` if a cycle appears.
fn step(u: &[u64], prev: Option<(&[Option<u8>], u8)>, w: &[u64]) -> Option<State> {
    let n = u.len();
    // Nodes: 0..n are the column's vertices, n..n+n+1 are previous labels
    // (label k -> n + k), and the sink keeps its previous label or gets its own.
    let sink_node = match prev {
        Some((_, s)) => n + s as usize,
        None => 2 * n + 1,
    };
    let mut uf = UnionFind::new(2 * n + 2);
    if let Some((labels, _)) = prev {
        for i in 0..n {
            if u[i] > 0 {
                let l = labels[i].expect("positive inflow has a label");
                if !uf.union(i, n + l as usize) {
                    return None;
                }
            }
        }
    }
    let mut carry: u64 = 0;
    for i in 0..n {
        carry += u[i];
        carry = carry.checked_sub(w[i])?;
        if carry > 0 {
            let below = if i + 1 < n { i + 1 } else { sink_node };
            if !uf.union(i, below) {
                return None;
            }
        }
    }
    let mut names: HashMap<usize, u8> = HashMap::new();
    let name = |x: usize, names: &mut HashMap<usize, u8>| {
        let next = names.len() as u8;
        *names.entry(x).or_insert(next)
    };
    let labels: Vec<Option<u8>> =
        (0..n).map(|i| (w[i] > 0).then(|| name(uf.find(i), &mut names))).collect();
    let sink = name(uf.find(sink_node), &mut names);
    Some(State { flow: w.to_vec(), labels, sink })
}

/// Vertices of `F_{G(n,m)}(a,b)` for every `m` in `0..=max_m`.
pub fn vertex_counts_frontier(a: &NatVector, b: &NatVector, max_m: usize) -> Result<Vec<BigUint>> {
    check_len(a.len(), b.len())?;
    if !dominates(a, b)? {
        return Err(Error::NotDominating { a: a.to_string(), b: b.to_string() });
    }
    if a.len() > 60 {
        return Err(Error::TooLarge(format!("n = {}", a.len())));
    }
    let candidates = dominated_vectors(a);
    let finish = |states: &HashMap<State, BigUint>| -> BigUint {
        states
            .iter()
            .filter(|(s, _)| {
                let prev = (&s.labels[..], s.sink);
                step(&s.flow, Some(prev), b.as_slice()).is_some()
            })
            .map(|(_, c)| c.clone())
            .sum()
    };
    let mut out = Vec::with_capacity(max_m + 1);
    // m = 0 is the single column with inflow a and outflow b.
    out.push(if step(a.as_slice(), None, b.as_slice()).is_some() { BigUint::one() } else { BigUint::zero() });
    if max_m == 0 {
        return Ok(out);
    }
    let mut states: HashMap<State, BigUint> = HashMap::new();
    for w in &candidates {
        if let Some(s) = step(a.as_slice(), None, w.as_slice()) {
            *states.entry(s).or_default() += BigUint::one();
        }
    }
    out.push(finish(&states));
    for _ in 2..=max_m {
        let mut next: HashMap<State, BigUint> = HashMap::new();
        for (s, c) in &states {
            let u = NatVector::new(s.flow.clone())?;
            for w in dominated_vectors(&u) {
                if let Some(t) = step(&s.flow, Some((&s.labels, s.sink)), w.as_slice()) {
                    *next.entry(t).or_default() += c;
                }
            }
        }
        states = next;
        out.push(finish(&states));
    }
    Ok(out)
}

/// Vertices of `F_{G(n,m)}(a,b)`.
pub fn count_vertices_frontier(a: &NatVector, b: &NatVector, m: usize) -> Result<BigUint> {
    let mut v = vertex_counts_frontier(a, b, m)?;
    Ok(v.pop().unwrap_or_else(BigUint::zero))
}
