//! Lie algebras given by structure constants over ℚ.
//!
//! The bracket of basis vectors is `[bᵢ, bⱼ] = Σₖ c[i][j][k]·bₖ`. Algebras
//! given by matrix generators are converted to structure constants on
//! construction; the generators are kept as a [`MatrixRealization`] for
//! operators defined by matrix multiplication and for the numerical harness.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{
    check_dim, vector, ArithError, ExactMatrix, GaussianRational, Rational, Scalar, Subspace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("basis label `{0}` appears more than once")]
    DuplicateLabel(String),
    #[error("structure tensor has the wrong shape: expected {expected}×{expected}×{expected}")]
    TensorShape { expected: usize },
    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails for basis triple ({i}, {j}, {k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("inconsistent bracket entries for ({i}, {j})")]
    InconsistentBracket { i: usize, j: usize },
    #[error("generator {index} is not a {size}×{size} matrix")]
    GeneratorShape { index: usize, size: usize },
    #[error("generators are not linearly independent over ℝ")]
    NotIndependent,
    #[error("commutator of generators {i} and {j} leaves their span: {commutator}")]
    NotClosed {
        i: usize,
        j: usize,
        commutator: ExactMatrix<GaussianRational>,
    },
    #[error("commutator of generators {i} and {j} needs non-real coefficients")]
    NonRealStructureConstants { i: usize, j: usize },
    #[error("span is not closed under the bracket: [{x:?}, {y:?}] = {bracket:?}")]
    NotClosedUnderBracket {
        x: Vec<Rational>,
        y: Vec<Rational>,
        bracket: Vec<Rational>,
    },
}

/// Matrix generators a [`LieAlgebra`] was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRealization {
    size: usize,
    generators: Vec<ExactMatrix<GaussianRational>>,
    /// Generators flattened to real vectors (real parts, then imaginary parts).
    real_flat: ExactMatrix<Rational>,
    /// Left inverse of `real_flatᵀ`, so coordinates are a single product.
    left_inverse: ExactMatrix<Rational>,
}

fn flatten_real(m: &ExactMatrix<GaussianRational>) -> Vec<Rational> {
    let mut out: Vec<Rational> = m.entries().iter().map(|z| z.re.clone()).collect();
    out.extend(m.entries().iter().map(|z| z.im.clone()));
    out
}

impl MatrixRealization {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[ExactMatrix<GaussianRational>] {
        &self.generators
    }

    pub fn is_real(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.entries().iter().all(|z| z.im.is_zero()))
    }

    /// The matrix `Σ xᵢ·Gᵢ`.
    pub fn element(&self, coords: &[Rational]) -> ExactMatrix<GaussianRational> {
        let mut out = ExactMatrix::zeros(self.size, self.size);
        for (c, g) in coords.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            out = out
                .add(&g.scale(&GaussianRational::from(c.clone())))
                .expect("generators share one shape");
        }
        out
    }

    /// Real coordinates of `m` in the generator basis, if `m` lies in the
    /// real span of the generators.
    pub fn coordinates(
        &self,
        m: &ExactMatrix<GaussianRational>,
    ) -> Result<Option<Vec<Rational>>, ArithError> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(ArithError::ShapeMismatch {
                left: (self.size, self.size),
                right: (m.rows(), m.cols()),
            });
        }
        let flat = flatten_real(m);
        let coords = self.left_inverse.mul_vec(&flat)?;
        Ok((self.real_flat.transpose().mul_vec(&coords)? == flat).then_some(coords))
    }
}

/// Left inverse of a matrix with independent columns, read off from the
/// reduced echelon form of `[A | 1]`.
fn left_inverse(a: &ExactMatrix<Rational>) -> Result<ExactMatrix<Rational>, ArithError> {
    let (rows, n) = (a.rows(), a.cols());
    let (reduced, _) = a.hstack(&ExactMatrix::identity(rows))?.rref();
    let data = (0..n)
        .flat_map(|r| reduced.row(r)[n..].to_vec())
        .collect();
    ExactMatrix::new(n, rows, data)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// Nonzero structure constants of `[bᵢ, bⱼ]`, indexed by `i * n + j`.
    terms: Vec<Vec<(usize, Rational)>>,
    realization: Option<MatrixRealization>,
}

impl LieAlgebra {
    /// Builds an algebra from the full tensor `c[i][j][k]`, verifying
    /// antisymmetry and the Jacobi identity.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        constants: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self, LieError> {
        let n = labels.len();
        check_dim(n)?;
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        if constants.len() != n
            || constants
                .iter()
                .any(|row| row.len() != n || row.iter().any(|c| c.len() != n))
        {
            return Err(LieError::TensorShape { expected: n });
        }
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if constants[i][j][k] != -constants[j][i][k].clone() {
                        return Err(LieError::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        let terms = constants
            .iter()
            .flat_map(|row| row.iter())
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect()
            })
            .collect();
        let alg = Self {
            name: name.into(),
            labels,
            terms,
            realization: None,
        };
        alg.verify_jacobi()?;
        Ok(alg)
    }

    /// Builds an algebra from brackets `[bᵢ, bⱼ]` listed for some ordered
    /// pairs; `[bⱼ, bᵢ]` is inferred and unlisted brackets are zero.
    pub fn from_bracket_table(
        name: impl Into<String>,
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    ) -> Result<Self, LieError> {
        let n = labels.len();
        check_dim(n)?;
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut given = vec![false; n * n];
        for (i, j, v) in entries {
            if i >= n || j >= n || v.len() != n {
                return Err(LieError::TensorShape { expected: n });
            }
            let neg = vector::neg(&v);
            if i == j && !vector::is_zero(&v) {
                return Err(LieError::InconsistentBracket { i, j });
            }
            if (given[i * n + j] && c[i][j] != v) || (given[j * n + i] && c[j][i] != neg) {
                return Err(LieError::InconsistentBracket { i, j });
            }
            given[i * n + j] = true;
            given[j * n + i] = true;
            c[i][j] = v;
            c[j][i] = neg;
        }
        Self::new(name, labels, c)
    }

    /// Builds the real Lie algebra spanned by square matrices over ℚ(i).
    /// Structure constants are required to be real.
    pub fn from_matrix_generators(
        name: impl Into<String>,
        labels: Vec<String>,
        size: usize,
        generators: Vec<ExactMatrix<GaussianRational>>,
    ) -> Result<Self, LieError> {
        let n = generators.len();
        check_dim(n)?;
        if labels.len() != n {
            return Err(LieError::Arith(ArithError::DimensionMismatch {
                expected: n,
                found: labels.len(),
            }));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.rows() != size || g.cols() != size {
                return Err(LieError::GeneratorShape { index, size });
            }
        }
        let flat: Vec<Vec<Rational>> = generators.iter().map(flatten_real).collect();
        let real_flat = ExactMatrix::from_rows(2 * size * size, &flat)?;
        if real_flat.rank() != n {
            return Err(LieError::NotIndependent);
        }
        let real_system = real_flat.transpose();
        let left_inverse = left_inverse(&real_system)?;
        let complex_columns: Vec<Vec<GaussianRational>> =
            generators.iter().map(|g| g.entries().to_vec()).collect();
        let complex_system = ExactMatrix::from_columns(size * size, &complex_columns)?;

        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let commutator = generators[i]
                    .mul(&generators[j])?
                    .sub(&generators[j].mul(&generators[i])?)?;
                let flat = flatten_real(&commutator);
                let coeffs = left_inverse.mul_vec(&flat)?;
                match (real_system.mul_vec(&coeffs)? == flat).then_some(coeffs) {
                    Some(coeffs) => entries.push((i, j, coeffs)),
                    None => {
                        return Err(if complex_system.solve(commutator.entries())?.is_some() {
                            LieError::NonRealStructureConstants { i, j }
                        } else {
                            LieError::NotClosed { i, j, commutator }
                        })
                    }
                }
            }
        }
        let mut alg = Self::from_bracket_table(name, labels, entries)?;
        alg.realization = Some(MatrixRealization {
            size,
            generators,
            real_flat,
            left_inverse,
        });
        Ok(alg)
    }

    fn verify_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        let unit = |i| vector::unit::<Rational>(n, i);
        for i in 0..n {
            for j in (i + 1)..n {
                let bij = self.basis_bracket(i, j);
                for k in (j + 1)..n {
                    let jac = vector::add(
                        &vector::add(
                            &self.bracket_raw(&unit(i), &self.basis_bracket(j, k)),
                            &self.bracket_raw(&unit(j), &self.basis_bracket(k, i)),
                        ),
                        &self.bracket_raw(&unit(k), &bij),
                    );
                    if !vector::is_zero(&jac) {
                        return Err(LieError::JacobiViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn realization(&self) -> Option<&MatrixRealization> {
        self.realization.as_ref()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        let n = self.dim();
        self.terms[i * n + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// Coordinates of `[bᵢ, bⱼ]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vector::zeros(n);
        for (k, c) in &self.terms[i * n + j] {
            out[*k] = c.clone();
        }
        out
    }

    /// Bracket without length checks; callers guarantee `v.len() == w.len() == dim`.
    pub(crate) fn bracket_raw<F: Scalar>(&self, v: &[F], w: &[F]) -> Vec<F> {
        let n = self.dim();
        debug_assert!(v.len() == n && w.len() == n);
        let mut out = vector::zeros::<F>(n);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                let terms = &self.terms[i * n + j];
                if wj.is_zero() || terms.is_empty() {
                    continue;
                }
                let coef = vi.clone() * wj.clone();
                for (k, c) in terms {
                    out[*k] = out[*k].clone() + coef.clone() * F::from_rational(c);
                }
            }
        }
        out
    }

    fn check_len(&self, len: usize) -> Result<(), ArithError> {
        if len != self.dim() {
            return Err(ArithError::DimensionMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }

    /// `[v, w]` for coordinate vectors over ℚ or ℚ(i) (the latter is the
    /// bracket of the complexification).
    pub fn bracket<F: Scalar>(&self, v: &[F], w: &[F]) -> Result<Vec<F>, ArithError> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        Ok(self.bracket_raw(v, w))
    }

    /// Matrix of `w ↦ [d, w]`; column `j` holds `[d, bⱼ]`.
    pub fn ad_matrix<F: Scalar>(&self, d: &[F]) -> Result<ExactMatrix<F>, ArithError> {
        self.check_len(d.len())?;
        let n = self.dim();
        let columns: Vec<Vec<F>> = (0..n)
            .map(|j| self.bracket_raw(d, &vector::unit::<F>(n, j)))
            .collect();
        ExactMatrix::from_columns(n, &columns)
    }

    /// Human-readable form of a coordinate vector, e.g. `e1 - 2*e2`.
    pub fn format_vector<F: Scalar>(&self, v: &[F]) -> String {
        format_combination(&self.labels, v)
    }
}

/// Formats `Σ vᵢ·labelᵢ`; non-real coefficients are parenthesised.
pub fn format_combination<F: Scalar>(labels: &[String], v: &[F]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let (negative, magnitude) = if c.is_real() && c.real_part() < Rational::zero() {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude.is_one() {
            out.push_str(label);
        } else if magnitude.is_real() {
            let _ = write!(out, "{magnitude}*{label}");
        } else if magnitude.real_part().is_zero() {
            let _ = write!(out, "{magnitude}*{label}");
        } else {
            let _ = write!(out, "({magnitude})*{label}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A subspace of `𝔤` certified closed under the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    parent: Arc<LieAlgebra>,
    space: Subspace<Rational>,
}

impl Subalgebra {
    pub fn parent(&self) -> &Arc<LieAlgebra> {
        &self.parent
    }

    pub fn space(&self) -> &Subspace<Rational> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, ArithError> {
        self.space.contains(v)
    }

    /// `𝔨^ℂ`, the complex span of the same basis.
    pub fn complexified(&self) -> Subspace<GaussianRational> {
        complexify_subspace(&self.space)
    }
}

/// Echelonizes the span of `vectors` and certifies bracket-closure.
pub fn make_subalgebra(
    alg: &Arc<LieAlgebra>,
    vectors: &[Vec<Rational>],
) -> Result<Subalgebra, LieError> {
    let space = Subspace::span(alg.dim(), vectors)?;
    let basis = space.basis_vectors();
    for (a, x) in basis.iter().enumerate() {
        for y in &basis[a + 1..] {
            let bracket = alg.bracket_raw(x, y);
            if !space.contains(&bracket)? {
                return Err(LieError::NotClosedUnderBracket {
                    x: x.clone(),
                    y: y.clone(),
                    bracket,
                });
            }
        }
    }
    Ok(Subalgebra {
        parent: Arc::clone(alg),
        space,
    })
}

/// `𝔤^ℂ`: the same structure constants read over ℚ(i).
#[derive(Clone, Debug)]
pub struct ComplexifiedAlgebra {
    real_form: Arc<LieAlgebra>,
}

impl ComplexifiedAlgebra {
    pub fn real_form(&self) -> &Arc<LieAlgebra> {
        &self.real_form
    }

    pub fn dim(&self) -> usize {
        self.real_form.dim()
    }

    pub fn bracket(
        &self,
        v: &[GaussianRational],
        w: &[GaussianRational],
    ) -> Result<Vec<GaussianRational>, ArithError> {
        self.real_form.bracket(v, w)
    }

    pub fn ad_matrix(
        &self,
        d: &[GaussianRational],
    ) -> Result<ExactMatrix<GaussianRational>, ArithError> {
        self.real_form.ad_matrix(d)
    }
}

pub fn complexify(alg: &Arc<LieAlgebra>) -> ComplexifiedAlgebra {
    ComplexifiedAlgebra {
        real_form: Arc::clone(alg),
    }
}

pub fn complexify_vector(v: &[Rational]) -> Vec<GaussianRational> {
    vector::embed(v)
}

pub fn complexify_subspace(s: &Subspace<Rational>) -> Subspace<GaussianRational> {
    s.map(GaussianRational::from_rational)
}

pub fn conjugate(v: &[GaussianRational]) -> Vec<GaussianRational> {
    vector::conj(v)
}

pub fn conjugate_subspace(s: &Subspace<GaussianRational>) -> Subspace<GaussianRational> {
    s.map(|z| z.conj())
}

#[cfg(test)]
mod tests {
    use crate::examples::*;
    use super::*;
    use crate::exact::rat;
    use num_traits::One;
    use proptest::prelude::*;

    fn q(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn so3_commutation_relations() {
        let so3 = so3();
        // [k0,e1] = -e2, [k0,e2] = e1, [e1,e2] = -k0
        assert_eq!(so3.basis_bracket(0, 1), q(&[0, 0, -1]));
        assert_eq!(so3.basis_bracket(0, 2), q(&[0, 1, 0]));
        assert_eq!(so3.basis_bracket(1, 2), q(&[-1, 0, 0]));
        assert_eq!(so3.bracket(&q(&[1, 0, 0]), &q(&[0, 1, 0])).unwrap(), q(&[0, 0, -1]));
    }

    #[test]
    fn so3_structure_constants_match_table() {
        let from_table = LieAlgebra::from_bracket_table(
            "so3",
            labels(&["k0", "e1", "e2"]),
            vec![(0, 1, q(&[0, 0, -1])), (0, 2, q(&[0, 1, 0])), (1, 2, q(&[-1, 0, 0]))],
        )
        .unwrap();
        let from_matrices = so3();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(from_table.basis_bracket(i, j), from_matrices.basis_bracket(i, j));
            }
        }
        // ad_{k0}: e1 ↦ -e2, e2 ↦ e1, k0 ↦ 0
        let ad = from_matrices.ad_matrix(&q(&[1, 0, 0])).unwrap();
        assert_eq!(ad.column(0), q(&[0, 0, 0]));
        assert_eq!(ad.column(1), q(&[0, 0, -1]));
        assert_eq!(ad.column(2), q(&[0, 1, 0]));
        assert!(from_matrices.ad_matrix(&q(&[0, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn gl2_commutator() {
        let gl2 = gl(2);
        let e12 = q(&[0, 1, 0, 0]);
        let e21 = q(&[0, 0, 1, 0]);
        assert_eq!(gl2.bracket(&e12, &e21).unwrap(), q(&[1, 0, 0, -1]));
    }

    #[test]
    fn single_generator_is_abelian() {
        let alg = LieAlgebra::from_matrix_generators(
            "a",
            labels(&["x"]),
            2,
            vec![elementary(2, 0, 1, GaussianRational::one())],
        )
        .unwrap();
        assert_eq!(alg.dim(), 1);
        assert_eq!(alg.basis_bracket(0, 0), q(&[0]));
    }

    #[test]
    fn u2_has_rational_structure_constants() {
        let u2 = u(2);
        assert_eq!(u2.dim(), 4);
        // [a12, s12] = [E12 - E21, i(E12 + E21)] = 2i(E11 - E22) = 2h1 - 2h2
        let a = u2.label_index("a12").unwrap();
        let s = u2.label_index("s12").unwrap();
        assert_eq!(u2.basis_bracket(a, s), q(&[2, -2, 0, 0]));
        assert_eq!(u(4).dim(), 16);
    }

    #[test]
    fn generator_errors() {
        let one = GaussianRational::one();
        let e12 = elementary(2, 0, 1, one.clone());
        let e21 = elementary(2, 1, 0, one.clone());
        assert!(matches!(
            LieAlgebra::from_matrix_generators("x", labels(&["a", "b"]), 2, vec![e12.clone(), e21.clone()]),
            Err(LieError::NotClosed { i: 0, j: 1, .. })
        ));
        assert!(matches!(
            LieAlgebra::from_matrix_generators("x", labels(&["a", "b"]), 2, vec![e12.clone(), e12.scale(&GaussianRational::from(rat(2, 1)))]),
            Err(LieError::NotIndependent)
        ));
        // real span of {E12, E21, E11-E22, i·E12}: [E11-E22, E21] = -2E21 fine,
        // but [iE12, E21] = i(E11-E22) only lies in the complex span
        let h = elementary(2, 0, 0, one.clone()).sub(&elementary(2, 1, 1, one.clone())).unwrap();
        let ie12 = elementary(2, 0, 1, GaussianRational::i());
        assert!(matches!(
            LieAlgebra::from_matrix_generators("x", labels(&["a", "b", "c", "d"]), 2, vec![e12, e21, h, ie12]),
            Err(LieError::NonRealStructureConstants { .. })
        ));
    }

    #[test]
    fn subalgebra_examples() {
        let so3 = so3();
        assert_eq!(make_subalgebra(&so3, &[q(&[1, 0, 0])]).unwrap().dim(), 1);
        assert_eq!(
            make_subalgebra(&so3, &[q(&[1, 0, 0]), q(&[0, 1, 0]), q(&[0, 0, 1])]).unwrap().dim(),
            3
        );
        assert_eq!(make_subalgebra(&so3, &[q(&[0, 1, 0])]).unwrap().dim(), 1);
        match make_subalgebra(&so3, &[q(&[0, 1, 0]), q(&[0, 0, 1])]) {
            Err(LieError::NotClosedUnderBracket { bracket, .. }) => assert_eq!(bracket, q(&[-1, 0, 0])),
            other => panic!("expected closure failure, got {other:?}"),
        }
    }

    #[test]
    fn complexified_bracket_example() {
        let so3c = complexify(&so3());
        let i = GaussianRational::i();
        let z = |re: i64, im: i64| GaussianRational::new(rat(re, 1), rat(im, 1));
        let k0 = vec![z(1, 0), z(0, 0), z(0, 0)];
        let x = vec![z(0, 0), z(1, 0), z(0, 1)]; // e1 + i·e2
        let br = so3c.bracket(&k0, &x).unwrap();
        assert_eq!(br, vec![z(0, 0), z(0, 1), z(-1, 0)]); // -e2 + i·e1
        assert_eq!(br, vector::scale(&i, &x));
        assert_eq!(conjugate(&x), vec![z(0, 0), z(1, 0), z(0, -1)]);
        assert_eq!(complexify_subspace(&Subspace::span(3, &[q(&[1, 0, 0])]).unwrap()).dim(), 1);
    }

    #[test]
    fn format_vectors() {
        let so3 = so3();
        assert_eq!(so3.format_vector(&q(&[0, 1, -2])), "e1 - 2*e2");
        assert_eq!(so3.format_vector(&q(&[-1, 0, 0])), "-k0");
        assert_eq!(so3.format_vector(&q(&[0, 0, 0])), "0");
        let z = |re: i64, im: i64| GaussianRational::new(rat(re, 1), rat(im, 1));
        assert_eq!(so3.format_vector(&[z(0, 0), z(1, 0), z(0, 1)]), "e1 + i*e2");
        assert_eq!(so3.format_vector(&[z(1, 1), z(0, 0), z(0, -2)]), "(1+i)*k0 + -2i*e2");
    }

    fn so3_tensor() -> Vec<Vec<Vec<Rational>>> {
        let so3 = so3();
        (0..3)
            .map(|i| (0..3).map(|j| so3.basis_bracket(i, j)).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn perturbed_so3_is_rejected(i in 0usize..3, j in 0usize..3, k in 0usize..3, delta in 1i64..5) {
            let mut c = so3_tensor();
            c[i][j][k] = c[i][j][k].clone() + rat(delta, 1);
            let res = LieAlgebra::new("bad", labels(&["k0", "e1", "e2"]), c.clone());
            prop_assert!(res.is_err());
            // restoring antisymmetry still leaves a Jacobi violation unless the change is benign
            if i != j {
                c[j][i][k] = -c[i][j][k].clone();
                if let Err(e) = LieAlgebra::new("bad", labels(&["k0", "e1", "e2"]), c) {
                    prop_assert!(
                        matches!(e, LieError::JacobiViolation { .. }),
                        "unexpected error {:?}", e
                    );
                }
            }
        }

        #[test]
        fn complex_bracket_commutes_with_conjugation(
            xs in prop::collection::vec((-4i64..4, -4i64..4), 16),
            ys in prop::collection::vec((-4i64..4, -4i64..4), 16),
        ) {
            static U4: std::sync::OnceLock<Arc<LieAlgebra>> = std::sync::OnceLock::new();
            let u4 = U4.get_or_init(|| u(4));
            let mk = |v: &[(i64, i64)]| -> Vec<GaussianRational> {
                v.iter().map(|&(a, b)| GaussianRational::new(rat(a, 1), rat(b, 2))).collect()
            };
            let (x, y) = (mk(&xs), mk(&ys));
            prop_assert_eq!(
                conjugate(&u4.bracket(&x, &y).unwrap()),
                u4.bracket(&conjugate(&x), &conjugate(&y)).unwrap()
            );
            // restricted to real vectors the complex bracket is the real one
            let xr: Vec<Rational> = x.iter().map(|z| z.re.clone()).collect();
            let yr: Vec<Rational> = y.iter().map(|z| z.re.clone()).collect();
            prop_assert_eq!(
                u4.bracket(&complexify_vector(&xr), &complexify_vector(&yr)).unwrap(),
                complexify_vector(&u4.bracket(&xr, &yr).unwrap())
            );
        }
    }
}
