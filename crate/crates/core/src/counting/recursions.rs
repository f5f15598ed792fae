//! One-column switch vectors, brute-force counts and the two column
//! recursions for unsplittable flows.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{check_len, Error, Result};
use crate::graphs::g_graph;
use crate::plane_partitions::{enumerate_pps, psi_on};
use crate::vectors::{binary_vectors_desc, chi, dominated_vectors, dominates, one_dominates, theta, NatVector};
use crate::vertex::{is_unsplittable, is_vertex_flow};

/// The unique `b` with `χ(b) = j` for which the one-column graph carries an
/// unsplittable flow from `a`: each positive position of `j` collects `a`
/// over the block ending there. `None` unless `χ(a) ⊵₁ j`.
pub fn w_right(j: &NatVector, a: &NatVector) -> Result<Option<NatVector>> {
    check_len(j.len(), a.len())?;
    if !j.is_binary() {
        return Err(Error::Input(format!("switch pattern {j} is not 0/1")));
    }
    if !one_dominates(&chi(a), j)? {
        return Ok(None);
    }
    let mut carry = 0;
    let mut out = Vec::with_capacity(a.len());
    for (&x, &s) in a.as_slice().iter().zip(j.as_slice()) {
        carry += x;
        if s == 1 {
            debug_assert!(carry > 0, "1-domination leaves no empty block");
            out.push(carry);
            carry = 0;
        } else {
            out.push(0);
        }
    }
    Ok(Some(NatVector::new(out)?))
}

/// Number (0 or 1) of unsplittable flows on the one-column graph with
/// inflow `u` and outflow `b`: positive `b_k` must take all flow collected
/// since the previous positive entry, and leftover flow reaches the sink.
pub fn htop_unsplit_count(u: &NatVector, b: &NatVector) -> Result<u64> {
    check_len(u.len(), b.len())?;
    let mut carry = 0;
    for (&x, &y) in u.as_slice().iter().zip(b.as_slice()) {
        carry += x;
        if y > 0 {
            if carry != y {
                return Ok(0);
            }
            carry = 0;
        }
    }
    Ok(1)
}

/// Whether `u` lies in the set of column vectors feeding `b` through one
/// column unsplittably: `χ(u) ⊵₁ χ(b)`, and every positive `b_k` equals the
/// sum of `u` over the block since the previous positive entry of `b`.
pub fn w_left_member(u: &NatVector, b: &NatVector) -> Result<bool> {
    check_len(u.len(), b.len())?;
    if !one_dominates(&chi(u), &chi(b))? {
        return Ok(false);
    }
    let mut block = 0;
    for (&x, &y) in u.as_slice().iter().zip(b.as_slice()) {
        block += x;
        if y > 0 {
            if block != y {
                return Ok(false);
            }
            block = 0;
        }
    }
    Ok(true)
}

fn check_instance(a: &NatVector, b: &NatVector) -> Result<()> {
    if !dominates(a, b)? {
        return Err(Error::NotDominating { a: a.to_string(), b: b.to_string() });
    }
    Ok(())
}

fn bruteforce(a: &NatVector, b: &NatVector, m: usize, budget: Option<u64>, vertex: bool) -> Result<BigUint> {
    check_instance(a, b)?;
    let g = g_graph(m, a, b)?;
    let shape = theta(a, b)?;
    let mut count = 0u64;
    for (seen, pp) in enumerate_pps(&shape, m as u64).enumerate() {
        if budget.is_some_and(|cap| seen as u64 >= cap) {
            return Err(Error::BudgetExceeded(budget.unwrap()));
        }
        let f = psi_on(&pp, &g)?;
        let hit = if vertex { is_vertex_flow(&f) } else { is_unsplittable(&f)? };
        count += hit as u64;
    }
    Ok(BigUint::from(count))
}

/// Unsplittable flows found by checking every lattice point.
pub fn count_unsplit_bruteforce(a: &NatVector, b: &NatVector, m: usize, budget: Option<u64>) -> Result<BigUint> {
    bruteforce(a, b, m, budget, false)
}

/// Vertices found by testing the support of every lattice point.
pub fn count_vertices_bruteforce(a: &NatVector, b: &NatVector, m: usize, budget: Option<u64>) -> Result<BigUint> {
    bruteforce(a, b, m, budget, true)
}

/// Unsplittable flows by fixing the first column: the flow leaving the
/// source column is `w_right(j, a)` for some pattern `j` with `χ(a) ⊵₁ j`.
/// The last column is the one-column count.
pub fn v_recurse_first(a: &NatVector, b: &NatVector, m: usize) -> Result<BigUint> {
    check_len(a.len(), b.len())?;
    let patterns = binary_vectors_desc(a.len());
    let mut memo: HashMap<(NatVector, usize), BigUint> = HashMap::new();
    fn go(
        u: &NatVector,
        m: usize,
        b: &NatVector,
        patterns: &[NatVector],
        memo: &mut HashMap<(NatVector, usize), BigUint>,
    ) -> Result<BigUint> {
        if m == 0 {
            return Ok(BigUint::from(htop_unsplit_count(u, b)?));
        }
        if let Some(v) = memo.get(&(u.clone(), m)) {
            return Ok(v.clone());
        }
        let mut total = BigUint::zero();
        for j in patterns {
            if let Some(w) = w_right(j, u)? {
                total += go(&w, m - 1, b, patterns, memo)?;
            }
        }
        memo.insert((u.clone(), m), total.clone());
        Ok(total)
    }
    go(a, m, b, &patterns, &mut memo)
}

/// Unsplittable flows by fixing the last column: the flow entering it is any
/// `u` with `a ⊵ u`, `χ(a) ⊵ χ(u)` and `w_left_member(u, b)`.
pub fn v_recurse_last(a: &NatVector, b: &NatVector, m: usize) -> Result<BigUint> {
    check_len(a.len(), b.len())?;
    let chi_a = chi(a);
    let mut candidates = Vec::new();
    for u in dominated_vectors(a) {
        if dominates(&chi_a, &chi(&u))? {
            candidates.push(u);
        }
    }
    let mut memo: HashMap<(NatVector, usize), BigUint> = HashMap::new();
    fn go(
        t: &NatVector,
        m: usize,
        a: &NatVector,
        candidates: &[NatVector],
        memo: &mut HashMap<(NatVector, usize), BigUint>,
    ) -> Result<BigUint> {
        if m == 0 {
            return Ok(BigUint::from(htop_unsplit_count(a, t)?));
        }
        if let Some(v) = memo.get(&(t.clone(), m)) {
            return Ok(v.clone());
        }
        let mut total = BigUint::zero();
        for u in candidates {
            if w_left_member(u, t)? {
                total += go(u, m - 1, a, candidates, memo)?;
            }
        }
        memo.insert((t.clone(), m), total.clone());
        Ok(total)
    }
    if !dominates(a, b)? {
        return Ok(BigUint::zero());
    }
    go(b, m, a, &candidates, &mut memo)
}
