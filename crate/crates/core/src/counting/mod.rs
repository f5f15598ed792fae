//! Counting vertices and unsplittable flows of `F_{G(n,m)}(a,b)`.
//!
//! Several independent routes are provided so they can check each other:
//! brute force over plane partitions, the first- and last-column
//! recursions, powers of the 1-domination transfer matrix, and a column
//! frontier dynamic program for vertex counts with arbitrary `b`.

pub mod frontier;
pub mod genfunc;
pub mod recursions;
pub mod transfer;

pub use frontier::{count_vertices_frontier, vertex_counts_frontier};
pub use genfunc::{
    binomial_expansion_unsplit, genfunc, genfunc_from_values, p_coefficients, poly_fit, BinomialExpansion, Mode,
    Polynomial, RationalGenFunc,
};
pub use recursions::{
    count_unsplit_bruteforce, count_vertices_bruteforce, htop_unsplit_count, v_recurse_first, v_recurse_last,
    w_left_member, w_right,
};
pub use transfer::{build_a, matrix_power, v_unsplit_matrix, v_vertices_matrix, BigMatrix, TransferMatrix};
