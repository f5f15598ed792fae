//! The acceptance gate: one line per criterion, then a single verdict.
//!
//! Every comparison is exact (integers, zero tolerance). Runtime limits are
//! pinned below and measured with the test profile.

use std::time::{Duration, Instant};

use flowpoly::counting::{
    binomial_expansion_unsplit, build_a, count_unsplit_bruteforce, count_vertices_bruteforce, genfunc,
    matrix_power, p_coefficients, v_recurse_first, v_recurse_last, v_unsplit_matrix, v_vertices_matrix,
    vertex_counts_frontier, Mode,
};
use flowpoly::faces::{face_count_bruteforce, face_vector_base, face_vector_recurse};
use flowpoly::graphs::{count_lattice_points, g_graph, row_sums_hold};
use flowpoly::plane_partitions::{enumerate_pps, psi_on};
use flowpoly::reports::reproduce_tables;
use flowpoly::vectors::{all_vectors, binary_vectors_desc, chi, dominated_vectors, dominates, theta, z_dominate, NatVector, SkewShape};
use flowpoly::vertex::{
    count_shifted_syt, is_standard_vertex_pp, is_vertex_flow, is_vertex_pp, split_merge_check, shifted_shape_of,
    standard_fillings, staircase_syt_product_formula,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

const TABLES_LIMIT: Duration = Duration::from_secs(30);
const MATRIX_LIMIT: Duration = Duration::from_secs(1);
const FACES_BRUTE_LIMIT: Duration = Duration::from_secs(5);
const SYT_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_LIMIT: Duration = Duration::from_secs(60);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn big(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

fn v(s: &str) -> NatVector {
    s.parse().unwrap()
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut matched = 0;
    let mut bad = Vec::new();
    for t in 1..=3 {
        let report = reproduce_tables(t).expect("tables compute");
        matched += report.rows.iter().filter(|r| r.matches).count();
        bad.extend(report.mismatches().map(|r| format!("T{t}:{}", r.expected.pattern)));
    }
    let took = start.elapsed();
    outcome(
        matched == 96 && took < TABLES_LIMIT,
        format!("{matched}/96 rows exact, {took:.2?} (limit {TABLES_LIMIT:?}) {}", bad.join(" ")),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let printed: [[[u64; 8]; 8]; 3] = [
        [
            [1, 1, 1, 1, 1, 1, 1, 1],
            [0, 1, 1, 1, 0, 1, 1, 1],
            [0, 0, 1, 1, 1, 1, 1, 1],
            [0, 0, 0, 1, 0, 1, 1, 1],
            [0, 0, 0, 0, 1, 1, 1, 1],
            [0, 0, 0, 0, 0, 1, 1, 1],
            [0, 0, 0, 0, 0, 0, 1, 1],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ],
        [
            [1, 2, 3, 4, 3, 6, 7, 8],
            [0, 1, 2, 3, 1, 4, 5, 6],
            [0, 0, 1, 2, 2, 4, 5, 6],
            [0, 0, 0, 1, 0, 2, 3, 4],
            [0, 0, 0, 0, 1, 2, 3, 4],
            [0, 0, 0, 0, 0, 1, 2, 3],
            [0, 0, 0, 0, 0, 0, 1, 2],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ],
        [
            [1, 3, 6, 10, 7, 19, 26, 34],
            [0, 1, 3, 6, 3, 11, 16, 22],
            [0, 0, 1, 3, 3, 9, 14, 20],
            [0, 0, 0, 1, 0, 3, 6, 10],
            [0, 0, 0, 0, 1, 3, 6, 10],
            [0, 0, 0, 0, 0, 1, 3, 6],
            [0, 0, 0, 0, 0, 0, 1, 3],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ],
    ];
    let t = build_a(3).unwrap();
    let mut ok = true;
    for (k, want) in printed.iter().enumerate() {
        let p = matrix_power(&t.matrix, k as u64 + 1);
        let rows: Vec<Vec<BigUint>> = want.iter().map(|r| big(r)).collect();
        ok &= p.rows() == &rows[..];
    }
    // The red entries at ((1,1,0),(0,1,1)) across the three powers.
    let (r, c) = (t.index_of(&v("1,1,0")), t.index_of(&v("0,1,1")));
    let red: Vec<BigUint> = (1..=3).map(|k| matrix_power(&t.matrix, k).get(r, c).clone()).collect();
    ok &= red == big(&[0, 1, 3]);
    // The blue zero at ((1,0,0),(0,1,1)) never fills in.
    let (r, c) = (t.index_of(&v("1,0,0")), t.index_of(&v("0,1,1")));
    let blue = (1..=6).all(|k| matrix_power(&t.matrix, k).get(r, c).is_zero());
    ok &= blue;
    let took = start.elapsed();
    outcome(
        ok && took < MATRIX_LIMIT,
        format!("A3, A3^2, A3^3 entrywise; red {red:?}; blue zero through k=6: {blue}; {took:.2?}"),
    )
}

fn criterion_3() -> Outcome {
    let a = v("1,1,1");
    let zero = NatVector::zeros(3);
    let e = binomial_expansion_unsplit(&a, &zero).unwrap();
    let coeffs_ok = e.coefficients == big(&[1, 6, 13, 14, 8, 2]) && e.constant.is_zero();
    let recon_ok = (0..=8u64).all(|m| {
        let sum: BigUint = e.coefficients.iter().enumerate().map(|(i, c)| c * binom(m + 1, i as u64 + 1)).sum();
        sum == v_unsplit_matrix(&a, &zero, m as usize).unwrap()
    });
    outcome(coeffs_ok && recon_ok, format!("coefficients {:?}; reconstruction m=0..8: {recon_ok}", e.coefficients))
}

fn criterion_4() -> Outcome {
    let a = v("1,1");
    let want = big(&[1, 10, 21, 18, 7, 1]);
    let rec = face_vector_recurse(&a, 2).unwrap().with_empty_face();
    let start = Instant::now();
    let brute = face_count_bruteforce(&a, 2, None).unwrap().with_empty_face();
    let took = start.elapsed();
    let base = face_vector_base(&a).unwrap().counts;
    let base_brute = face_count_bruteforce(&a, 1, None).unwrap().counts;
    let ok = rec == want && brute == want && base == big(&[4, 4, 1]) && base_brute == base;
    outcome(
        ok && took < FACES_BRUTE_LIMIT,
        format!(
            "recursion {rec:?}, brute force {brute:?} in {took:.2?} (limit {FACES_BRUTE_LIMIT:?}), base {base:?}"
        ),
    )
}

fn eulerian(n: u64, k: u64) -> BigInt {
    (0..k)
        .map(|i| {
            let t = BigInt::from(binom(n + 1, i)) * BigInt::from(k - i).pow(n as u32);
            if i % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 2..=4usize {
        let a = NatVector::ones(n);
        let mut b = vec![1; n];
        b[0] = 0;
        let b = NatVector::new(b).unwrap();
        let counts = vertex_counts_frontier(&a, &b, 6).unwrap();
        let brute_small = count_vertices_bruteforce(&a, &b, 2, None).unwrap();
        let values = counts.iter().enumerate().all(|(m, c)| *c == BigUint::from(m as u64 + 1).pow(n as u32));
        let g = genfunc(&a, &b, Mode::Vertices).unwrap();
        let want: Vec<BigInt> = (1..=n as u64).map(|k| eulerian(n as u64, k)).collect();
        let gf = g.numerator == want && g.denominator_power == n + 1;
        ok &= values && gf && brute_small == counts[2];
        notes.push(format!("n={n}: {}", g.render()));
    }
    outcome(ok, notes.join("; "))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut seen = Vec::new();
    for n in 1..=4usize {
        let a = NatVector::ones(n);
        let zero = NatVector::zeros(n);
        let shape = theta(&a, &zero).unwrap();
        let k = n * (n + 1) / 2;
        let brute = BigUint::from(
            standard_fillings(&shape).iter().filter(|p| is_standard_vertex_pp(p).unwrap()).count(),
        );
        let leading = p_coefficients(&a, &zero, None).unwrap().coefficients.get(k - 1).cloned().unwrap_or_default();
        let syt = count_shifted_syt(&shifted_shape_of(&shape.outer, n).unwrap()).unwrap();
        let formula = staircase_syt_product_formula(n as u64);
        ok &= brute == syt && syt == formula && leading == brute;
        seen.push(brute);
    }
    ok &= seen == big(&[1, 1, 2, 12]);
    let took = start.elapsed();
    outcome(ok && took < SYT_LIMIT, format!("values {seen:?} in {took:.2?} (limit {SYT_LIMIT:?})"))
}

/// Counts of instances (a, b, m) failing each check.
#[derive(Default)]
struct Sweep {
    instances: usize,
    flows: usize,
    bijection: usize,
    vertex_tests: usize,
    row_sums: usize,
    literal_chain: usize,
    zero_b_chain: usize,
    vertex_chain: usize,
    unsplit_chain: usize,
    matrix_aggregate: usize,
    first_literal_failure: Option<String>,
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut s = Sweep::default();
    for n in 1..=3 {
        let vs = binary_vectors_desc(n);
        for a in &vs {
            for b in vs.iter().filter(|b| dominates(a, b).unwrap()) {
                let p = p_coefficients(a, b, None).unwrap();
                let frontier = vertex_counts_frontier(a, b, 3).unwrap();
                let outflows: Vec<NatVector> =
                    dominated_vectors(a).into_iter().filter(|w| chi(w) == *b).collect();
                for (m, frontier_m) in frontier.iter().enumerate() {
                    s.instances += 1;
                    let g = g_graph(m, a, b).unwrap();
                    let pps: Vec<_> = enumerate_pps(&theta(a, b).unwrap(), m as u64).collect();
                    s.bijection += (pps.len() as u64 != count_lattice_points(&g)) as usize;
                    for pp in &pps {
                        s.flows += 1;
                        let f = psi_on(pp, &g).unwrap();
                        let forest = is_vertex_flow(&f);
                        let sm = split_merge_check(&f).unwrap().0;
                        s.vertex_tests += (forest != sm || forest != is_vertex_pp(pp)) as usize;
                        s.row_sums += !row_sums_hold(&f) as usize;
                    }
                    let vertex = count_vertices_bruteforce(a, b, m, None).unwrap();
                    let unsplit = count_unsplit_bruteforce(a, b, m, None).unwrap();
                    let first = v_recurse_first(a, b, m).unwrap();
                    let last = v_recurse_last(a, b, m).unwrap();
                    let matrix = v_unsplit_matrix(a, b, m).unwrap();
                    let recon = p.evaluate(m as u64);
                    let literal = vertex == first && first == last && last == matrix && matrix == recon;
                    if !literal {
                        s.literal_chain += 1;
                        s.first_literal_failure.get_or_insert_with(|| {
                            format!(
                                "a={a} b={b} m={m}: vertices {vertex}, first {first}, last {last}, matrix {matrix}, \
                                 p-reconstruction {recon}"
                            )
                        });
                    }
                    if b.is_zero() {
                        let vm = v_vertices_matrix(a, m).unwrap();
                        s.zero_b_chain += !(literal && vm == vertex && unsplit == vertex) as usize;
                    }
                    s.vertex_chain += !(vertex == *frontier_m && vertex == recon) as usize;
                    s.unsplit_chain += !(unsplit == first && first == last) as usize;
                    let aggregate: BigUint =
                        outflows.iter().map(|w| count_unsplit_bruteforce(a, w, m, None).unwrap()).sum();
                    s.matrix_aggregate += (aggregate != matrix) as usize;
                }
            }
        }
    }
    let took = start.elapsed();
    let attainable =
        s.bijection + s.vertex_tests + s.row_sums + s.zero_b_chain + s.vertex_chain + s.unsplit_chain + s.matrix_aggregate;
    let detail = format!(
        "{} instances, {} flows, {took:.2?} (limit {SWEEP_LIMIT:?}); failures: (i) {}, (ii) {}, (iv) {}, \
         (iii) literal chain {} [first: {}]; attainable chains: b=0 full chain {}, vertex brute=frontier=p {}, \
         unsplit brute=first=last {}, matrix=sum over same-support outflows {}",
        s.instances,
        s.flows,
        s.bijection,
        s.vertex_tests,
        s.row_sums,
        s.literal_chain,
        s.first_literal_failure.as_deref().unwrap_or("none"),
        s.zero_b_chain,
        s.vertex_chain,
        s.unsplit_chain,
        s.matrix_aggregate,
    );
    outcome(attainable == 0 && s.literal_chain == 0 && took < SWEEP_LIMIT, detail)
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    for n in 1..=5 {
        for a in all_vectors(n, 2) {
            ok &= v_vertices_matrix(&a, 0).unwrap().is_one();
            checked += 1;
            if n <= 3 {
                ok &= count_vertices_bruteforce(&a, &NatVector::zeros(n), 0, None).unwrap().is_one();
            }
            ok &= z_dominate(&a, &a).unwrap().is_some_and(|zm| zm.z == 1);
        }
    }
    let empty = SkewShape::new(vec![0, 0], vec![0, 0]).unwrap();
    let empty_count = enumerate_pps(&empty, 3).count();
    let theta_empty = enumerate_pps(&theta(&v("1,0,1"), &v("1,0,1")).unwrap(), 4).count();
    ok &= empty_count == 1 && theta_empty == 1;
    outcome(ok, format!("v(n,0)=1 on {checked} vectors; empty shape gives {empty_count} plane partition; z(a,a)=1"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("table reproduction", criterion_1),
        ("printed matrices", criterion_2),
        ("binomial expansion", criterion_3),
        ("face vectors", criterion_4),
        ("Eulerian family", criterion_5),
        ("leading term and shifted tableaux", criterion_6),
        ("equivalence sweeps", criterion_7),
        ("degenerate contracts", criterion_8),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} [{}] {name}: {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
