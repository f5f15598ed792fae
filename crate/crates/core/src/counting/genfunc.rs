//! Generating functions `Σ_m v^{(n,m)} x^m`, polynomial fitting in `m`, and
//! expansions in the basis `C(m+1, k)`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::frontier::vertex_counts_frontier;
use super::transfer::{build_a, matrix_power, TransferMatrix};
use crate::error::{check_len, Error, Result};
use crate::plane_partitions::enumerate_pps;
use crate::vectors::{chi, dominates, theta, NatVector};
use crate::vertex::is_vertex_pp;

/// What is being counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Vertices,
    Unsplittable,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertices" => Ok(Mode::Vertices),
            "unsplittable" | "unsplit" => Ok(Mode::Unsplittable),
            _ => Err(Error::Input(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Vertices => "vertices",
            Mode::Unsplittable => "unsplittable",
        })
    }
}

/// `numerator(x) / (1-x)^denominator_power`, reduced so that the numerator
/// does not vanish at `x = 1`.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalGenFunc {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub numerator: Vec<BigInt>,
    pub denominator_power: usize,
    /// Degree in `m` of the coefficients; `None` for the zero series.
    pub degree: Option<usize>,
}

impl RationalGenFunc {
    fn reduced(mut numerator: Vec<BigInt>, mut e: usize) -> Self {
        trim(&mut numerator);
        if numerator.is_empty() {
            return RationalGenFunc { numerator, denominator_power: 0, degree: None };
        }
        while e > 0 && numerator.iter().sum::<BigInt>().is_zero() {
            numerator = divide_one_minus_x(&numerator);
            e -= 1;
        }
        let degree = e.checked_sub(1);
        RationalGenFunc { numerator, denominator_power: e, degree }
    }

    /// The coefficient of `x^m`.
    pub fn coefficient(&self, m: usize) -> BigInt {
        let e = self.denominator_power;
        self.numerator
            .iter()
            .enumerate()
            .filter(|&(i, _)| i <= m)
            .map(|(i, c)| {
                if e == 0 {
                    if i == m {
                        c.clone()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    c * BigInt::from(binomial((m - i + e - 1) as u64, (e - 1) as u64))
                }
            })
            .sum()
    }

    /// `1+16x+4x^2 / (1-x)^16` style rendering.
    pub fn render(&self) -> String {
        format!("({}) / (1-x)^{}", render_poly(&self.numerator, "x"), self.denominator_power)
    }
}

/// Coefficients `c_0 + c_1 x + ⋯` rendered without zero terms.
pub fn render_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut s = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { "-" } else { "+" });
        }
        let unit = mag.is_one() && i > 0;
        if !unit {
            let _ = write!(s, "{mag}");
        }
        match i {
            0 => {}
            1 => s.push_str(var),
            _ => {
                let _ = write!(s, "{var}^{i}");
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division by `1 - x`; the caller guarantees `p(1) = 0`.
fn divide_one_minus_x(p: &[BigInt]) -> Vec<BigInt> {
    // p = (1-x) q  =>  q_k = Σ_{i<=k} p_i.
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = BigInt::zero();
    for c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc.clone());
    }
    q
}

fn one_minus_x_pow(e: usize) -> Vec<BigInt> {
    (0..=e)
        .map(|k| {
            let c = BigInt::from(binomial(e as u64, k as u64));
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// A polynomial in `m` with rational coefficients, lowest degree first.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub coefficients: Vec<BigRational>,
}

impl Polynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    /// Evaluation at any integer, negative ones included.
    pub fn eval(&self, m: &BigInt) -> BigRational {
        let x = BigRational::from_integer(m.clone());
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                s.push('-');
            }
            let mag = c.abs();
            if !(mag.is_one() && i > 0) {
                let _ = write!(s, "{mag}");
            }
            match i {
                0 => {}
                1 => s.push('m'),
                _ => {
                    let _ = write!(s, "m^{i}");
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

fn forward_differences(values: &[BigInt]) -> Vec<BigInt> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// The interpolating polynomial of `values[m]` at `m = 0, 1, …`.
///
/// With `max_degree`, every forward difference of higher order must vanish,
/// otherwise the samples are reported as not polynomial.
pub fn poly_fit(values: &[BigInt], max_degree: Option<usize>) -> Result<Polynomial> {
    let diffs = forward_differences(values);
    if let Some(d) = max_degree {
        if diffs.iter().skip(d + 1).any(|x| !x.is_zero()) {
            return Err(Error::NotPolynomial { max_degree: d });
        }
    }
    // Σ_k Δ^k v(0) C(m, k), expanded into monomials.
    let mut coefficients = vec![BigRational::zero(); diffs.len().max(1)];
    let mut basis = vec![BigRational::one()];
    for (k, dk) in diffs.iter().enumerate() {
        if k > 0 {
            // basis *= (m - (k-1)) / k
            let shift = BigRational::from_integer(BigInt::from(k as u64 - 1));
            let kk = BigRational::from_integer(BigInt::from(k as u64));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c / &kk;
                next[i] -= c * &shift / &kk;
            }
            basis = next;
        }
        let dk = BigRational::from_integer(dk.clone());
        for (i, c) in basis.iter().enumerate() {
            coefficients[i] += c * &dk;
        }
    }
    while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
        coefficients.pop();
    }
    Ok(Polynomial { coefficients })
}

/// The reduced generating function of a sequence known to be polynomial of
/// degree at most `max_degree`; needs at least `max_degree + 2` samples so
/// the bound can be checked.
pub fn genfunc_from_values(values: &[BigInt], max_degree: usize) -> Result<RationalGenFunc> {
    if values.len() < max_degree + 2 {
        return Err(Error::Input(format!("need {} samples, got {}", max_degree + 2, values.len())));
    }
    let diffs = forward_differences(values);
    if diffs.iter().skip(max_degree + 1).any(|x| !x.is_zero()) {
        return Err(Error::NotPolynomial { max_degree });
    }
    let Some(d) = diffs.iter().rposition(|x| !x.is_zero()) else {
        return Ok(RationalGenFunc::reduced(Vec::new(), 0));
    };
    let factor = one_minus_x_pow(d + 1);
    let numerator: Vec<BigInt> = (0..=d)
        .map(|k| (0..=k).map(|i| &factor[i] * &values[k - i]).sum())
        .collect();
    Ok(RationalGenFunc::reduced(numerator, d + 1))
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact integer coefficients of the polynomial through `(x, y)` for
/// `x = 0..points.len()`.
fn interpolate_integer(ys: &[BigInt]) -> Result<Vec<BigInt>> {
    let p = poly_fit(ys, None)?;
    p.coefficients
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Mismatch("determinant interpolation is not integral".into()))
            }
        })
        .collect()
}

/// `det(I - xA)` with column `col` replaced by `replacement`, as a
/// polynomial in `x`.
fn replaced_determinant(t: &TransferMatrix, col: usize, replacement: &[BigInt]) -> Result<Vec<BigInt>> {
    let size = t.size();
    let ys: Vec<BigInt> = (0..=size)
        .map(|x| {
            let x = BigInt::from(x as u64);
            let m: Vec<Vec<BigInt>> = (0..size)
                .map(|i| {
                    (0..size)
                        .map(|j| {
                            if j == col {
                                return replacement[i].clone();
                            }
                            let a = BigInt::from(t.matrix.get(i, j).clone());
                            let d = if i == j { BigInt::one() } else { BigInt::zero() };
                            d - &x * a
                        })
                        .collect()
                })
                .collect();
            bareiss_det(m)
        })
        .collect();
    interpolate_integer(&ys)
}

fn check_instance(a: &NatVector, b: &NatVector) -> Result<()> {
    check_len(a.len(), b.len())?;
    if !dominates(a, b)? {
        return Err(Error::NotDominating { a: a.to_string(), b: b.to_string() });
    }
    Ok(())
}

/// The values path: the counts for `m = 0..=bound+1` read from matrix powers
/// or the frontier sweep.
fn value_sequence(a: &NatVector, b: &NatVector, mode: Mode, bound: usize) -> Result<Vec<BigInt>> {
    let samples = bound + 2;
    if mode == Mode::Vertices && !b.is_zero() {
        return Ok(vertex_counts_frontier(a, b, samples - 1)?.into_iter().map(BigInt::from).collect());
    }
    let t = build_a(a.len())?;
    let (ia, ib) = (t.index_of(&chi(a)), t.index_of(&chi(b)));
    let mut out = Vec::with_capacity(samples);
    let mut p = if mode == Mode::Unsplittable { t.matrix.clone() } else { matrix_power(&t.matrix, 0) };
    for _ in 0..samples {
        let v: BigUint = match mode {
            Mode::Unsplittable => p.get(ia, ib).clone(),
            Mode::Vertices => p.rows()[ia].iter().sum(),
        };
        out.push(BigInt::from(v));
        p = p.mul(&t.matrix);
    }
    Ok(out)
}

/// The reduced generating function of vertex or unsplittable counts.
///
/// Unsplittable counts, and vertex counts with `b = 0`, come from a replaced-
/// column determinant of `I - xA_n` over `(1-x)^{2ⁿ}`, and are checked
/// against the finite-difference numerator of the value sequence. Vertex
/// counts with `b ≠ 0` have only the value path, using degree bound
/// `|θ(a,b)|`.
///
/// Unsplittable counts are transfer-matrix counts: for `b ≠ 0` they sum over
/// every `b'` with the support of `b`.
pub fn genfunc(a: &NatVector, b: &NatVector, mode: Mode) -> Result<RationalGenFunc> {
    check_instance(a, b)?;
    let n = a.len();
    if mode == Mode::Vertices && !b.is_zero() {
        let bound = theta(a, b)?.size();
        let values = value_sequence(a, b, mode, bound)?;
        return genfunc_from_values(&values, bound);
    }
    let t = build_a(n)?;
    let size = t.size();
    let (ia, ib) = (t.index_of(&chi(a)), t.index_of(&chi(b)));
    let det_path = match mode {
        Mode::Unsplittable => {
            let e: Vec<BigInt> = (0..size).map(|i| BigInt::from(u8::from(i == ib))).collect();
            let mut d = replaced_determinant(&t, ia, &e)?;
            // Σ_{k>=0} (A^k)_{ab} x^k = d / (1-x)^N, and the counts start at k = 1.
            if ia == ib {
                let p = one_minus_x_pow(size);
                d.resize(d.len().max(p.len()), BigInt::zero());
                for (x, y) in d.iter_mut().zip(&p) {
                    *x -= y;
                }
            }
            trim(&mut d);
            if d.first().is_some_and(|c| !c.is_zero()) {
                return Err(Error::Mismatch("numerator has a constant term".into()));
            }
            RationalGenFunc::reduced(d.into_iter().skip(1).collect(), size)
        }
        Mode::Vertices => {
            let ones = vec![BigInt::one(); size];
            RationalGenFunc::reduced(replaced_determinant(&t, ia, &ones)?, size)
        }
    };
    let values = value_sequence(a, b, mode, size - 1)?;
    let value_path = genfunc_from_values(&values, size - 1)?;
    if det_path != value_path {
        return Err(Error::Mismatch(format!(
            "determinant path {} vs value path {}",
            det_path.render(),
            value_path.render()
        )));
    }
    Ok(det_path)
}

/// Coefficients in the basis `C(m+1, k)`: `constant` is the `k = 0` term and
/// `coefficients[k-1]` the `k`-th, trailing zeros removed.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialExpansion {
    #[serde_as(as = "DisplayFromStr")]
    pub constant: BigUint,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub coefficients: Vec<BigUint>,
}

impl BinomialExpansion {
    pub fn evaluate(&self, m: u64) -> BigUint {
        let mut total = self.constant.clone();
        for (k, c) in self.coefficients.iter().enumerate() {
            total += c * binomial(m + 1, k as u64 + 1);
        }
        total
    }

    fn trimmed(constant: BigUint, mut coefficients: Vec<BigUint>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        BinomialExpansion { constant, coefficients }
    }
}

/// `((A_n - I)^k)_{χ(a),χ(b)}` for `k = 1 … 2ⁿ-1`, the number of loop-free
/// chains with `k` strict steps; the constant term is 1 iff the patterns agree.
pub fn binomial_expansion_unsplit(a: &NatVector, b: &NatVector) -> Result<BinomialExpansion> {
    check_instance(a, b)?;
    let t = build_a(a.len())?;
    let (ia, ib) = (t.index_of(&chi(a)), t.index_of(&chi(b)));
    let d = t.matrix.minus_identity();
    let mut p = d.clone();
    let mut coefficients = Vec::with_capacity(t.size());
    for _ in 1..t.size() {
        coefficients.push(p.get(ia, ib).clone());
        p = p.mul(&d);
    }
    let constant = if ia == ib { BigUint::one() } else { BigUint::zero() };
    Ok(BinomialExpansion::trimmed(constant, coefficients))
}

/// `p_{a,b,k}`: vertex plane partitions of `θ(a,b)` whose set of entries is
/// exactly `{0, …, k-1}`, so that `v^{(n,m)}(a,b) = Σ_k p_{a,b,k} C(m+1,k)`.
pub fn p_coefficients(a: &NatVector, b: &NatVector, budget: Option<u64>) -> Result<BinomialExpansion> {
    check_instance(a, b)?;
    let shape = theta(a, b)?;
    let size = shape.size();
    if size == 0 {
        return Ok(BinomialExpansion { constant: BigUint::one(), coefficients: Vec::new() });
    }
    let mut counts = vec![BigUint::zero(); size];
    for (seen, pp) in enumerate_pps(&shape, size as u64 - 1).enumerate() {
        if budget.is_some_and(|cap| seen as u64 >= cap) {
            return Err(Error::BudgetExceeded(budget.unwrap()));
        }
        let values: BTreeSet<u64> = pp.entries().collect();
        let k = values.len();
        let packed = values.iter().next_back().and_then(|x| x.to_usize()) == Some(k - 1);
        if packed && is_vertex_pp(&pp) {
            counts[k - 1] += 1u32;
        }
    }
    Ok(BinomialExpansion::trimmed(BigUint::zero(), counts))
}
