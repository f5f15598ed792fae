use flowpoly::counting::{count_vertices_bruteforce, v_vertices_matrix};
use flowpoly::faces::{face_count_bruteforce, face_vector_base, face_vector_recurse, FaceVector};
use flowpoly::vectors::{all_vectors, binary_vectors_desc, signature, NatVector};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

fn binom(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Face numbers of `Δ_c`: `C(c+1, d+1)`.
fn simplex(c: usize) -> Vec<BigUint> {
    (0..=c).map(|d| binom(c + 1, d + 1)).collect()
}

/// Faces of a product are products of faces.
fn product(p: &[BigUint], q: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn check_euler(f: &FaceVector) {
    assert_eq!(f.euler_characteristic(), BigInt::one(), "{f:?}");
}

#[test]
fn recursion_matches_bruteforce() {
    let mut instances: Vec<(NatVector, usize)> = Vec::new();
    for m in 0..=2 {
        instances.extend(all_vectors(2, 2).into_iter().map(|a| (a, m)));
    }
    instances.extend(all_vectors(3, 1).into_iter().map(|a| (a, 1)));
    instances.extend(binary_vectors_desc(3).into_iter().map(|a| (a, 2)));
    for (a, m) in instances {
        let brute = face_count_bruteforce(&a, m, Some(1 << 20)).unwrap();
        let rec = face_vector_recurse(&a, m).unwrap();
        assert_eq!(brute, rec, "a={a} m={m}");
        check_euler(&rec);
        assert_eq!(brute.counts[0], count_vertices_bruteforce(&a, &NatVector::zeros(a.len()), m, None).unwrap());
    }
}

#[test]
fn top_faces_of_positive_instances() {
    for n in 1..=3 {
        for m in 1..=2 {
            let a = NatVector::ones(n);
            let f = face_vector_recurse(&a, m).unwrap();
            assert_eq!(f.dim(), n * m);
            assert_eq!(f.counts[n * m], BigUint::one());
        }
    }
}

#[test]
fn vertex_specialization() {
    for a in binary_vectors_desc(3) {
        for m in 0..=3 {
            let f = face_vector_recurse(&a, m).unwrap();
            assert_eq!(f.counts[0], v_vertices_matrix(&a, m).unwrap(), "a={a} m={m}");
            check_euler(&f);
        }
    }
}

#[test]
fn base_case_is_product_of_simplices() {
    for n in 1..=6 {
        for j in binary_vectors_desc(n) {
            let lead = j.as_slice().iter().take_while(|&&x| x == 0).count();
            let want = if lead == n {
                vec![BigUint::one()]
            } else {
                let rest = NatVector::new(j.as_slice()[lead..].to_vec()).unwrap();
                signature(&rest).unwrap().runs.iter().fold(vec![BigUint::one()], |acc, &c| product(&acc, &simplex(c)))
            };
            assert_eq!(face_vector_base(&j).unwrap().counts, want, "j={j}");
        }
    }
}
