use flowpoly::graphs::{g_graph, lattice_points};
use flowpoly::plane_partitions::{enumerate_pps, psi_inverse, psi_on};
use flowpoly::vectors::{all_vectors, dominates, theta, NatVector};
use flowpoly::vertex::{
    is_standard_vertex_pp, is_unsplittable, is_vertex_flow, is_vertex_pp, split_merge_check, standard_fillings,
};

fn instances(max_n: usize, max_entry: u64) -> Vec<(NatVector, NatVector)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for a in all_vectors(n, max_entry) {
            for b in all_vectors(n, max_entry) {
                if dominates(&a, &b).unwrap() {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    out
}

#[test]
fn forest_split_merge_and_pp_agree() {
    let mut checked = 0usize;
    for (a, b) in instances(3, 2) {
        for m in 0..=3usize {
            let g = g_graph(m, &a, &b).unwrap();
            let Ok(flows) = lattice_points(&g, Some(200_000)) else { continue };
            for f in flows {
                let forest = is_vertex_flow(&f);
                let (sm, rep) = split_merge_check(&f).unwrap();
                let pp = psi_inverse(&f).unwrap();
                assert_eq!(forest, sm, "split/merge a={a} b={b} m={m} {:?} {rep:?}", f.values());
                assert_eq!(forest, is_vertex_pp(&pp), "pp a={a} b={b} m={m} {:?}", pp.rows());
                if b.is_zero() {
                    assert_eq!(forest, is_unsplittable(&f).unwrap());
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000, "only {checked} flows checked");
}

#[test]
fn pp_predicate_matches_psi_image() {
    for (a, b) in instances(3, 2) {
        let shape = theta(&a, &b).unwrap();
        let g = g_graph(2, &a, &b).unwrap();
        for pp in enumerate_pps(&shape, 2).take(2000) {
            let f = psi_on(&pp, &g).unwrap();
            assert_eq!(is_vertex_pp(&pp), is_vertex_flow(&f));
        }
    }
}

#[test]
fn standard_characterization_matches_general_definition() {
    for (a, b) in instances(4, 2) {
        let shape = theta(&a, &b).unwrap();
        if shape.size() > 9 {
            continue;
        }
        for pp in standard_fillings(&shape) {
            assert_eq!(
                is_standard_vertex_pp(&pp).unwrap(),
                is_vertex_pp(&pp),
                "a={a} b={b} {:?}",
                pp.rows()
            );
        }
    }
}

#[test]
fn standard_vertex_pps_count_shifted_tableaux() {
    use flowpoly::vectors::binary_vectors_desc;
    use flowpoly::vertex::{count_shifted_syt, shifted_shape_of, staircase_syt_product_formula};
    use num_bigint::BigUint;
    for n in 1..=4usize {
        for a in binary_vectors_desc(n) {
            let shape = theta(&a, &NatVector::zeros(n)).unwrap();
            let count = standard_fillings(&shape).iter().filter(|p| is_standard_vertex_pp(p).unwrap()).count();
            let shifted = shifted_shape_of(&shape.outer, n).unwrap();
            assert_eq!(BigUint::from(count), count_shifted_syt(&shifted).unwrap(), "a={a}");
            if a.as_slice().iter().all(|&x| x == 1) {
                assert_eq!(BigUint::from(count), staircase_syt_product_formula(n as u64));
            }
        }
    }
}
