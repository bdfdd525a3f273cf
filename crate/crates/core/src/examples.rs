//! Standard algebras, pairs and operators: the rotation group acting on the
//! 2-sphere, `𝔤𝔩(n)`, and `𝔲(n)` with its Grassmannian subalgebra.

use std::sync::Arc;

use num_traits::One;

use crate::exact::{rat, ExactMatrix, GaussianRational, Rational, Subspace};
use crate::lie::{make_subalgebra, LieAlgebra};
use crate::operators::{Connectivity, HomogeneousPair, LinearOperator};

pub fn real_matrix(size: usize, entries: &[i64]) -> ExactMatrix<GaussianRational> {
    ExactMatrix::new(
        size,
        size,
        entries.iter().map(|&x| GaussianRational::from(rat(x, 1))).collect(),
    )
    .expect("matrix needs size² entries")
}

/// Elementary matrix `E_{row,col}` scaled by `c`.
pub fn elementary(size: usize, row: usize, col: usize, c: GaussianRational) -> ExactMatrix<GaussianRational> {
    let mut m = ExactMatrix::zeros(size, size);
    m.set(row, col, c);
    m
}

/// The 3×3 generators `k0, e1, e2` of 𝔰𝔬(3); `k0` generates rotations
/// fixing the north pole.
pub fn so3_generators() -> Vec<ExactMatrix<GaussianRational>> {
    vec![
        real_matrix(3, &[0, 1, 0, -1, 0, 0, 0, 0, 0]),
        real_matrix(3, &[0, 0, 1, 0, 0, 0, -1, 0, 0]),
        real_matrix(3, &[0, 0, 0, 0, 0, 1, 0, -1, 0]),
    ]
}

pub fn so3() -> Arc<LieAlgebra> {
    Arc::new(
        LieAlgebra::from_matrix_generators(
            "so3",
            vec!["k0".into(), "e1".into(), "e2".into()],
            3,
            so3_generators(),
        )
        .expect("so(3) generators are closed"),
    )
}

/// 𝔤𝔩(n) with basis `E_ij` in row-major order, labelled `Eij` (1-based).
pub fn gl(n: usize) -> Arc<LieAlgebra> {
    let mut labels = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("E{}{}", i + 1, j + 1));
            gens.push(elementary(n, i, j, GaussianRational::one()));
        }
    }
    Arc::new(
        LieAlgebra::from_matrix_generators(format!("gl{n}"), labels, n, gens)
            .expect("elementary matrices span gl(n)"),
    )
}

/// 𝔲(n) with basis `h_j = i·E_jj`, then `a_jk = E_jk − E_kj`, then
/// `s_jk = i(E_jk + E_kj)` for `j < k` (1-based labels).
pub fn u(n: usize) -> Arc<LieAlgebra> {
    let one = GaussianRational::one();
    let i = GaussianRational::i();
    let mut labels = Vec::new();
    let mut gens = Vec::new();
    for j in 0..n {
        labels.push(format!("h{}", j + 1));
        gens.push(elementary(n, j, j, i.clone()));
    }
    for j in 0..n {
        for k in (j + 1)..n {
            labels.push(format!("a{}{}", j + 1, k + 1));
            gens.push(
                elementary(n, j, k, one.clone())
                    .sub(&elementary(n, k, j, one.clone()))
                    .expect("same shape"),
            );
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            labels.push(format!("s{}{}", j + 1, k + 1));
            gens.push(
                elementary(n, j, k, i.clone())
                    .add(&elementary(n, k, j, i.clone()))
                    .expect("same shape"),
            );
        }
    }
    Arc::new(
        LieAlgebra::from_matrix_generators(format!("u{n}"), labels, n, gens)
            .expect("u(n) basis is closed with real structure constants"),
    )
}

fn coords(alg: &LieAlgebra, terms: &[(&str, Rational)]) -> Vec<Rational> {
    let mut v = vec![rat(0, 1); alg.dim()];
    for (label, c) in terms {
        let i = alg.label_index(label).expect("known label");
        v[i] = v[i].clone() + c.clone();
    }
    v
}

/// `so(3)/so(2)`: the 2-sphere as the orbit of the north pole.
pub fn sphere_pair() -> HomogeneousPair {
    let alg = so3();
    let k = make_subalgebra(&alg, &[coords(&alg, &[("k0", rat(1, 1))])]).expect("span{k0} is a subalgebra");
    HomogeneousPair::connected("sphere", k)
}

/// [`sphere_pair`] with complement `𝔪 = span{e1, e2}`.
pub fn sphere_pair_split() -> HomogeneousPair {
    let pair = sphere_pair();
    let alg = pair.algebra().clone();
    let m = Subspace::span(
        3,
        &[coords(&alg, &[("e1", rat(1, 1))]), coords(&alg, &[("e2", rat(1, 1))])],
    )
    .expect("vectors of length 3");
    HomogeneousPair::new("sphere_split", pair.k().clone(), Some(m), Connectivity::Connected)
        .expect("span{e1,e2} complements span{k0}")
}

/// The operator `k0 ↦ αk0, e1 ↦ βe2, e2 ↦ γe1` on 𝔰𝔬(3).
pub fn sphere_family(alg: &Arc<LieAlgebra>, alpha: Rational, beta: Rational, gamma: Rational) -> LinearOperator {
    let z = rat(0, 1);
    let m = ExactMatrix::from_columns(
        3,
        &[
            vec![alpha, z.clone(), z.clone()],
            vec![z.clone(), z.clone(), beta],
            vec![z.clone(), gamma, z],
        ],
    )
    .expect("3×3");
    LinearOperator::new(alg, m).expect("3×3 operator on a 3-dimensional algebra")
}

const GRASSMANNIAN_K: [&str; 8] = ["h1", "h2", "h3", "h4", "a12", "s12", "a34", "s34"];
const GRASSMANNIAN_M: [&str; 8] = ["a13", "a14", "a23", "a24", "s13", "s14", "s23", "s24"];

/// `u(4)/(u(2)×u(2))` with 𝔪 the off-diagonal blocks.
pub fn grassmannian_pair() -> HomogeneousPair {
    let alg = u(4);
    let unit = |l: &str| coords(&alg, &[(l, rat(1, 1))]);
    let k_vectors: Vec<_> = GRASSMANNIAN_K.iter().map(|l| unit(l)).collect();
    let m_vectors: Vec<_> = GRASSMANNIAN_M.iter().map(|l| unit(l)).collect();
    let k = make_subalgebra(&alg, &k_vectors).expect("block-diagonal u(2)×u(2)");
    let m = Subspace::span(alg.dim(), &m_vectors).expect("vectors of length 16");
    HomogeneousPair::new("grassmannian", k, Some(m), Connectivity::Connected)
        .expect("off-diagonal blocks complement the block diagonal")
}

/// `d̃ = (i/2)(P₊ − P₋) = ½(h1 + h2 − h3 − h4)`, central in `u(2)×u(2)`.
pub fn grassmannian_d(alg: &LieAlgebra) -> Vec<Rational> {
    let half = rat(1, 2);
    coords(
        alg,
        &[("h1", half.clone()), ("h2", half.clone()), ("h3", -half.clone()), ("h4", -half)],
    )
}

/// `diag(1, 2, 3)` and the cyclic permutation `E12 + E23 + E31`.
pub fn gl3_sandwich_factors() -> (ExactMatrix<GaussianRational>, ExactMatrix<GaussianRational>) {
    (
        real_matrix(3, &[1, 0, 0, 0, 2, 0, 0, 0, 3]),
        real_matrix(3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]),
    )
}

/// `𝔤𝔩(n)/{0}`.
pub fn gl_trivial_pair(n: usize) -> HomogeneousPair {
    let alg = gl(n);
    let k = make_subalgebra(&alg, &[]).expect("the zero subspace is a subalgebra");
    HomogeneousPair::connected(format!("gl{n}_trivial"), k)
}
