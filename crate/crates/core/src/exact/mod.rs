//! Exact scalars and dense exact linear algebra.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{kernel_basis, rref, ExactMatrix};
pub use scalar::{
    parse_gaussian, parse_rational, rat, rational_to_f64, GaussianRational, Rational, Scalar,
    ScalarParseError,
};
pub use subspace::{membership, subspace_intersection, subspace_sum, Subspace};

use thiserror::Error;

/// Largest algebra dimension accepted anywhere in the crate.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },
}

pub fn check_dim(dim: usize) -> Result<(), ArithError> {
    if dim > MAX_DIM {
        return Err(ArithError::DimensionTooLarge { dim, max: MAX_DIM });
    }
    Ok(())
}

/// Small helpers on coordinate vectors.
pub mod vector {
    use super::Scalar;

    pub fn zeros<F: Scalar>(n: usize) -> Vec<F> {
        vec![F::zero(); n]
    }

    pub fn unit<F: Scalar>(n: usize, i: usize) -> Vec<F> {
        let mut v = zeros(n);
        v[i] = F::one();
        v
    }

    pub fn add<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    pub fn sub<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    pub fn scale<F: Scalar>(s: &F, a: &[F]) -> Vec<F> {
        a.iter().map(|x| s.clone() * x.clone()).collect()
    }

    pub fn neg<F: Scalar>(a: &[F]) -> Vec<F> {
        a.iter().map(|x| -x.clone()).collect()
    }

    pub fn is_zero<F: Scalar>(a: &[F]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    pub fn conj<F: Scalar>(a: &[F]) -> Vec<F> {
        a.iter().map(|x| x.conj()).collect()
    }

    pub fn embed<F: Scalar>(a: &[super::Rational]) -> Vec<F> {
        a.iter().map(F::from_rational).collect()
    }

    /// `Σ cᵢ·vᵢ` over a list of vectors of length `n`.
    pub fn combine<F: Scalar>(n: usize, coeffs: &[F], vectors: &[Vec<F>]) -> Vec<F> {
        let mut out: Vec<F> = zeros(n);
        for (c, v) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::{rat, ExactMatrix, Rational};
    use proptest::prelude::*;

    pub fn arb_small_rat() -> impl Strategy<Value = Rational> {
        // biased toward zero so that rank-deficient inputs show up
        prop_oneof![
            2 => Just(rat(0, 1)),
            5 => (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d)),
        ]
    }

    pub fn arb_vectors(max_count: usize, n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec(arb_small_rat(), n), 0..=max_count)
    }

    pub fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
        prop::collection::vec(arb_small_rat(), rows * cols)
            .prop_map(move |data| ExactMatrix::new(rows, cols, data).unwrap())
    }
}
