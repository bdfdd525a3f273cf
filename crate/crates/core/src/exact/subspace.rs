use super::matrix::ExactMatrix;
use super::scalar::Scalar;
use super::ArithError;

/// A linear subspace of `F^n` stored as the canonical reduced row-echelon
/// basis of its row space. Two subspaces are equal iff their representations
/// are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: ExactMatrix<F>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn span(ambient_dim: usize, vectors: &[Vec<F>]) -> Result<Self, ArithError> {
        let m = ExactMatrix::from_rows(ambient_dim, vectors)?;
        let (basis, pivots) = m.rref();
        Ok(Self {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vectors().map(|r| r.to_vec()).collect()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[F]) -> Result<(), ArithError> {
        if v.len() != self.ambient_dim {
            return Err(ArithError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_same_ambient(&self, other: &Self) -> Result<(), ArithError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(ArithError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// `v` minus its echelon projection: zero exactly when `v` lies in the
    /// subspace. The result vanishes at every pivot column.
    pub fn residual(&self, v: &[F]) -> Result<Vec<F>, ArithError> {
        self.check_len(v)?;
        let mut r = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in r.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *x = x.clone() - c.clone() * b.clone();
                }
            }
        }
        Ok(r)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[F]) -> Result<Option<Vec<F>>, ArithError> {
        let residual = self.residual(v)?;
        if residual.iter().all(|x| x.is_zero()) {
            Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[F]) -> Result<bool, ArithError> {
        Ok(self.residual(v)?.iter().all(|x| x.is_zero()))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool, ArithError> {
        self.check_same_ambient(other)?;
        for v in other.basis.row_vectors() {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same_ambient(other)?;
        let (basis, pivots) = self.basis.vstack(&other.basis)?.rref();
        Ok(Self {
            ambient_dim: self.ambient_dim,
            basis,
            pivots,
        })
    }

    /// Intersection via the kernel of the stacked system `Σ xᵣaᵣ − Σ yₛbₛ = 0`.
    pub fn intersection(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.ambient_dim));
        }
        let neg_other = other.basis.map(|x| -x.clone());
        let system = self.basis.vstack(&neg_other)?.transpose();
        let kernel = system.kernel_basis();
        let da = self.dim();
        let mut vectors = Vec::with_capacity(kernel.dim());
        for coeffs in kernel.basis.row_vectors() {
            let mut v = vec![F::zero(); self.ambient_dim];
            for (c, row) in coeffs[..da].iter().zip(self.basis.row_vectors()) {
                if c.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(row) {
                    *x = x.clone() + c.clone() * b.clone();
                }
            }
            vectors.push(v);
        }
        Self::span(self.ambient_dim, &vectors)
    }

    /// Canonical basis of a complement of `sub` inside `self`, realised as the
    /// residuals of `self`'s basis modulo `sub`. Represents `self / sub`.
    pub fn quotient_representatives(&self, sub: &Self) -> Result<Self, ArithError> {
        self.check_same_ambient(sub)?;
        let residuals = self
            .basis
            .row_vectors()
            .map(|v| sub.residual(v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::span(self.ambient_dim, &residuals)
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        // entrywise field embeddings and conjugation preserve reduced echelon form
        Subspace {
            ambient_dim: self.ambient_dim,
            basis: self.basis.map(f),
            pivots: self.pivots.clone(),
        }
    }
}

/// Free-function form of [`Subspace::coordinates`].
pub fn membership<F: Scalar>(s: &Subspace<F>, v: &[F]) -> Result<Option<Vec<F>>, ArithError> {
    s.coordinates(v)
}

pub fn subspace_sum<F: Scalar>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>, ArithError> {
    a.sum(b)
}

pub fn subspace_intersection<F: Scalar>(
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<Subspace<F>, ArithError> {
    a.intersection(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat, Rational};
    use crate::exact::test_support::arb_vectors;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn membership_examples() {
        let e1 = Subspace::span(3, &[v(&[1, 0, 0])]).unwrap();
        assert_eq!(e1.coordinates(&v(&[5, 0, 0])).unwrap(), Some(v(&[5])));
        assert_eq!(e1.coordinates(&v(&[0, 1, 0])).unwrap(), None);
        let line = Subspace::span(2, &[v(&[1, 2])]).unwrap();
        assert_eq!(line.coordinates(&v(&[3, 6])).unwrap(), Some(v(&[3])));
        assert!(e1.coordinates(&v(&[1, 0])).is_err());
    }

    #[test]
    fn sum_and_intersection_examples() {
        let e1 = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        let e2 = Subspace::span(2, &[v(&[0, 1])]).unwrap();
        assert_eq!(e1.sum(&e2).unwrap().dim(), 2);
        assert_eq!(e1.intersection(&e2).unwrap().dim(), 0);

        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(
            a.intersection(&b).unwrap(),
            Subspace::span(3, &[v(&[0, 1, 0])]).unwrap()
        );
        assert!(a.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn equal_spans_have_equal_representations() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[2, 1, -1]), v(&[1, 0, -1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_representatives_drop_sub() {
        let big = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 1])]).unwrap();
        let sub = Subspace::span(3, &[v(&[1, 0, 0])]).unwrap();
        let q = big.quotient_representatives(&sub).unwrap();
        assert_eq!(q, Subspace::span(3, &[v(&[0, 1, 1])]).unwrap());
    }

    proptest! {
        #[test]
        fn grassmann_identity(a in arb_vectors(3, 5), b in arb_vectors(3, 5)) {
            let a = Subspace::span(5, &a).unwrap();
            let b = Subspace::span(5, &b).unwrap();
            let s = a.sum(&b).unwrap();
            let i = a.intersection(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(a.contains_subspace(&i).unwrap());
            prop_assert!(b.contains_subspace(&i).unwrap());
            prop_assert!(s.contains_subspace(&a).unwrap());
        }
    }
}
