//! Concrete matrix realizations of `G/K`.
//!
//! Points and tangent vectors are real matrices acted on by left
//! multiplication: column vectors in ℝ³ for the sphere `SO(3)·p₀`, square
//! matrices for a group `G = G/{1}`. Complex generators are embedded as real
//! matrices `[[A, −B], [B, A]]`.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use super::HarnessError;
use crate::exact::{rational_to_f64, vector, ExactMatrix, GaussianRational, Rational};
use crate::lie::LieAlgebra;
use crate::nijenhuis::torsion_form;
use crate::operators::{HomogeneousPair, LinearOperator};

/// `|‖p‖ − 1|` allowed for points handed to sphere operations.
pub const SPHERE_TOLERANCE: f64 = 1e-9;
/// Sections are undefined within this distance of the antipode `−p₀`.
pub const SECTION_SINGULAR_RADIUS: f64 = 1e-6;
/// Allowed relative mismatch between float commutators and structure constants.
pub const MODEL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// `SO(3)` acting on the unit sphere, base point `p₀ = (0,0,1)ᵀ`.
    SphereOrbit,
    /// `K = {1}`: the group itself, base point the identity.
    FullGroup,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::SphereOrbit => "sphere-orbit",
            ModelKind::FullGroup => "full-group",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatrixModel {
    kind: ModelKind,
    /// Size of the (real) matrices representing algebra elements.
    n: usize,
    generators: Vec<DMatrix<f64>>,
    /// Pseudo-inverse of the map from coordinates to flattened matrices.
    coords_pinv: DMatrix<f64>,
    /// Pseudo-inverse of `c ↦ Φ(c)·p₀` (sphere only).
    tangent_pinv: Option<DMatrix<f64>>,
    base_point: DMatrix<f64>,
}

fn real_embedding(m: &ExactMatrix<GaussianRational>, complex: bool) -> DMatrix<f64> {
    let s = m.rows();
    if !complex {
        return DMatrix::from_fn(s, s, |i, j| rational_to_f64(&m.get(i, j).re));
    }
    DMatrix::from_fn(2 * s, 2 * s, |i, j| {
        let z = m.get(i % s, j % s);
        match (i < s, j < s) {
            (true, true) | (false, false) => rational_to_f64(&z.re),
            (true, false) => -rational_to_f64(&z.im),
            (false, true) => rational_to_f64(&z.im),
        }
    })
}

fn flatten(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}

fn pinv(m: DMatrix<f64>) -> DMatrix<f64> {
    m.pseudo_inverse(1e-12).expect("tolerance is non-negative")
}

/// Whether `𝔨` is exactly the stabilizer of `p₀` and the orbit is 2-dimensional.
fn is_sphere_stabilizer(pair: &HomogeneousPair, gens: &[ExactMatrix<GaussianRational>]) -> bool {
    let n = gens.len();
    let antisymmetric = gens.iter().all(|g| {
        g.entries().iter().all(|z| z.im.is_zero()) && g.transpose().scale(&GaussianRational::from_int(-1)) == *g
    });
    if !antisymmetric || gens.first().is_none_or(|g| g.rows() != 3) {
        return false;
    }
    // column c of L is Φ(b_c)·p₀, the last column of the generator
    let columns: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| (0..3).map(|r| g.get(r, 2).re.clone()).collect())
        .collect();
    let l = ExactMatrix::from_columns(3, &columns).expect("three rows");
    l.rank() == 2 && l.kernel_basis() == *pair.k().space() && n >= 2
}

use crate::exact::Scalar;

/// The declared matrix generators, or else the adjoint representation when
/// it is faithful (trivial centre). For a three-dimensional algebra the
/// adjoint matrices are conjugated by a cyclic coordinate permutation when
/// that makes `𝔨` the stabilizer of the north pole.
fn model_generators(pair: &HomogeneousPair) -> Result<Vec<ExactMatrix<GaussianRational>>, HarnessError> {
    let alg = pair.algebra();
    if let Some(real) = alg.realization() {
        return Ok(real.generators().to_vec());
    }
    let n = alg.dim();
    let no_model = || HarnessError::NoRealization(alg.name().to_string());
    let ad: Vec<ExactMatrix<GaussianRational>> = (0..n)
        .map(|i| alg.ad_matrix(&vector::unit::<GaussianRational>(n, i)))
        .collect::<Result<_, _>>()
        .map_err(|_| no_model())?;
    let flat: Vec<Vec<Rational>> = ad.iter().map(|m| m.entries().iter().map(|z| z.re.clone()).collect()).collect();
    if n == 0 || ExactMatrix::from_columns(n * n, &flat).map_err(|_| no_model())?.rank() < n {
        return Err(no_model());
    }
    if n == 3 {
        for shift in 1..3 {
            let p = ExactMatrix::from_rows(
                3,
                &(0..3)
                    .map(|i| vector::unit::<GaussianRational>(3, (i + shift) % 3))
                    .collect::<Vec<_>>(),
            )
            .expect("square");
            let pt = p.transpose();
            let conjugated: Vec<_> = ad
                .iter()
                .map(|a| p.mul(a).and_then(|x| x.mul(&pt)).expect("3×3"))
                .collect();
            if is_sphere_stabilizer(pair, &conjugated) {
                return Ok(conjugated);
            }
        }
    }
    Ok(ad)
}

impl MatrixModel {
    /// Builds the model matching the pair, or reports why none applies.
    pub fn from_pair(pair: &HomogeneousPair) -> Result<Self, HarnessError> {
        let alg = pair.algebra();
        let exact = model_generators(pair)?;
        let kind = if is_sphere_stabilizer(pair, &exact) {
            ModelKind::SphereOrbit
        } else if pair.k().dim() == 0 {
            ModelKind::FullGroup
        } else {
            return Err(HarnessError::UnsupportedPair(format!(
                "{}: 𝔨 must be trivial or the stabilizer of the north pole in a 3×3 rotation algebra",
                pair.name()
            )));
        };
        let complex = exact.iter().any(|g| g.entries().iter().any(|z| !z.im.is_zero()));
        let generators: Vec<DMatrix<f64>> = exact.iter().map(|g| real_embedding(g, complex)).collect();
        let n = generators.first().map_or(0, |g| g.nrows());
        let dim = generators.len();
        let flat = DMatrix::from_fn(n * n, dim, |r, c| generators[c].as_slice()[r]);
        let (base_point, tangent_pinv) = match kind {
            ModelKind::SphereOrbit => {
                let p0 = DMatrix::from_column_slice(3, 1, &[0.0, 0.0, 1.0]);
                let l = DMatrix::from_fn(3, dim, |r, c| (&generators[c] * &p0)[(r, 0)]);
                (p0, Some(pinv(l)))
            }
            ModelKind::FullGroup => (DMatrix::identity(n, n), None),
        };
        let model = Self {
            kind,
            n,
            coords_pinv: pinv(flat),
            generators,
            tangent_pinv,
            base_point,
        };
        model.verify_structure_constants(alg)?;
        Ok(model)
    }

    fn verify_structure_constants(&self, alg: &LieAlgebra) -> Result<(), HarnessError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let exact: Vec<f64> = alg.basis_bracket(i, j).iter().map(rational_to_f64).collect();
                let expected = self.element(&exact);
                let commutator = &self.generators[i] * &self.generators[j] - &self.generators[j] * &self.generators[i];
                let scale = expected.amax().max(1.0);
                let error = (commutator - expected).amax() / scale;
                if error > MODEL_TOLERANCE {
                    return Err(HarnessError::ModelMismatch { i, j, error });
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }

    pub fn base_point(&self) -> &DMatrix<f64> {
        &self.base_point
    }

    /// `Φ(c) = Σ cᵢ·Gᵢ`.
    pub fn element(&self, c: &[f64]) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for (ci, g) in c.iter().zip(&self.generators) {
            if *ci != 0.0 {
                out += g * *ci;
            }
        }
        out
    }

    /// Least-squares coordinates of a matrix in the generator basis.
    pub fn coordinates(&self, m: &DMatrix<f64>) -> Vec<f64> {
        (&self.coords_pinv * flatten(m)).iter().copied().collect()
    }

    /// Coordinates of `Ad_g⁻¹ v = g⁻¹·Φ(v)·g`.
    pub fn ad_inverse(&self, g: &DMatrix<f64>, v: &[f64]) -> Result<Vec<f64>, HarnessError> {
        let inv = invert(g)?;
        Ok(self.coordinates(&(inv * self.element(v) * g)))
    }

    /// Coordinates of `Ad_g v = g·Φ(v)·g⁻¹`.
    pub fn ad(&self, g: &DMatrix<f64>, v: &[f64]) -> Result<Vec<f64>, HarnessError> {
        let inv = invert(g)?;
        Ok(self.coordinates(&(g * self.element(v) * inv)))
    }

    /// Rejects points off the manifold.
    pub fn check_point(&self, p: &DMatrix<f64>) -> Result<(), HarnessError> {
        match self.kind {
            ModelKind::SphereOrbit => {
                let deviation = (p.norm() - 1.0).abs();
                if p.shape() != (3, 1) || deviation > SPHERE_TOLERANCE {
                    return Err(HarnessError::PointOffManifold { deviation });
                }
            }
            ModelKind::FullGroup => {
                if p.shape() != (self.n, self.n) || p.clone().try_inverse().is_none() {
                    return Err(HarnessError::PointOffManifold { deviation: f64::INFINITY });
                }
            }
        }
        Ok(())
    }

    /// Nearest manifold point used to extend fields off the manifold
    /// (radial retraction for the sphere).
    pub fn retract(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        match self.kind {
            ModelKind::SphereOrbit => x / x.norm(),
            ModelKind::FullGroup => x.clone(),
        }
    }

    /// The projected field `X̃ᵛ(p) = Φ(v)·p`.
    pub fn projected_field(&self, v: &[f64], p: &DMatrix<f64>) -> Result<DMatrix<f64>, HarnessError> {
        self.check_point(p)?;
        Ok(self.element(v) * p)
    }

    /// A group element `g(p)` with `g(p)·p₀ = p`: the rotation about `p₀ × p`
    /// for the sphere, `p` itself for a group.
    pub fn section(&self, p: &DMatrix<f64>) -> Result<DMatrix<f64>, HarnessError> {
        self.check_point(p)?;
        Ok(self.section_unchecked(p))
    }

    pub(crate) fn section_unchecked(&self, p: &DMatrix<f64>) -> DMatrix<f64> {
        match self.kind {
            ModelKind::SphereOrbit => rodrigues_to(p),
            ModelKind::FullGroup => p.clone(),
        }
    }

    /// `(α_g)_* π_{*1} u`: `g·Φ(u)·p₀` on the sphere, `g·Φ(u)` on a group.
    pub fn push_forward(&self, g: &DMatrix<f64>, u: &[f64]) -> DMatrix<f64> {
        g * self.element(u) * &self.base_point
    }

    /// Coordinates `c` with `π_{*1} c = u` for a tangent vector `u` at the
    /// base point (defined modulo `𝔨`).
    pub fn lift_at_base(&self, u: &DMatrix<f64>) -> Vec<f64> {
        match &self.tangent_pinv {
            Some(l) => (l * u).iter().copied().collect(),
            None => self.coordinates(u),
        }
    }

    /// Float form of an operator for this model.
    pub fn operator(&self, op: &LinearOperator) -> FloatOperator {
        let n = op.dim();
        let m = op.matrix();
        let matrix = DMatrix::from_fn(n, n, |i, j| rational_to_f64(m.get(i, j)));
        let beta = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let b = torsion_form::<Rational>(op, &vector::unit(n, i), &vector::unit(n, j))
                    .expect("unit vectors have the algebra's dimension");
                DVector::from_iterator(n, b.iter().map(rational_to_f64))
            })
            .collect();
        FloatOperator { matrix, beta }
    }
}

/// An operator `I` in floating point, with its torsion form tabulated on
/// basis pairs from exact arithmetic.
#[derive(Clone, Debug)]
pub struct FloatOperator {
    matrix: DMatrix<f64>,
    beta: Vec<DVector<f64>>,
}

impl FloatOperator {
    pub fn apply(&self, c: &[f64]) -> Vec<f64> {
        (&self.matrix * DVector::from_column_slice(c)).iter().copied().collect()
    }

    /// `β(v, w)` by bilinear expansion of the exact table.
    pub fn beta(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        let n = self.matrix.nrows();
        let mut out = DVector::zeros(n);
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                let c = vi * wj;
                if c != 0.0 {
                    out += &self.beta[i * n + j] * c;
                }
            }
        }
        out.iter().copied().collect()
    }
}

fn invert(g: &DMatrix<f64>) -> Result<DMatrix<f64>, HarnessError> {
    g.clone().try_inverse().ok_or(HarnessError::SingularGroupElement)
}

/// Rotation taking `p₀ = (0,0,1)ᵀ` to the unit vector `p` about the axis
/// `p₀ × p`: `R = 1 + [a]× + [a]×²/(1 + p₀·p)` with `a = p₀ × p`.
fn rodrigues_to(p: &DMatrix<f64>) -> DMatrix<f64> {
    let (x, y, z) = (p[(0, 0)], p[(1, 0)], p[(2, 0)]);
    // a = p₀ × p = (−y, x, 0)
    let cross = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, x, 0.0, 0.0, y, -x, -y, 0.0]);
    let c = 1.0 + z;
    DMatrix::identity(3, 3) + &cross + &cross * &cross / c
}

/// `R·diag(1,−1,−1)` where `R` rotates `−p₀` to `p` about `(−p₀) × p`.
fn southern_section(p: &DMatrix<f64>) -> DMatrix<f64> {
    let (x, y, z) = (p[(0, 0)], p[(1, 0)], p[(2, 0)]);
    let cross = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, -x, 0.0, 0.0, -y, x, y, 0.0]);
    let r = DMatrix::identity(3, 3) + &cross + &cross * &cross / (1.0 - z);
    r * DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, -1.0, -1.0]))
}

impl MatrixModel {
    /// `N_p z = g·N_{p₀}(g⁻¹ z)` for the section `g = g(p)`.
    pub fn bundle_map(&self, op: &FloatOperator, p: &DMatrix<f64>, z: &DMatrix<f64>) -> Result<DMatrix<f64>, HarnessError> {
        self.check_point(p)?;
        if self.kind == ModelKind::SphereOrbit && (p + &self.base_point).norm() < SECTION_SINGULAR_RADIUS {
            return Err(HarnessError::SectionSingular);
        }
        self.bundle_map_with_representative(op, &self.section_unchecked(p), z)
    }

    /// `N_{g·p₀} z = g·N_{p₀}(g⁻¹ z)` for an explicitly chosen `g`.
    pub fn bundle_map_with_representative(
        &self,
        op: &FloatOperator,
        g: &DMatrix<f64>,
        z: &DMatrix<f64>,
    ) -> Result<DMatrix<f64>, HarnessError> {
        let at_base = invert(g)? * z;
        let c = self.lift_at_base(&at_base);
        Ok(self.push_forward(g, &op.apply(&c)))
    }

    /// Unchecked form used inside finite-difference stencils.
    /// On the southern hemisphere the section is taken through `−p₀`
    /// instead, which is allowed since `N` does not depend on the choice.
    pub(crate) fn bundle_map_unchecked(&self, op: &FloatOperator, p: &DMatrix<f64>, z: &DMatrix<f64>) -> DMatrix<f64> {
        let g = match self.kind {
            ModelKind::SphereOrbit if p[(2, 0)] < 0.0 => southern_section(p),
            _ => self.section_unchecked(p),
        };
        let inv = match self.kind {
            ModelKind::SphereOrbit => g.transpose(),
            ModelKind::FullGroup => g.clone().try_inverse().unwrap_or_else(|| DMatrix::from_element(self.n, self.n, f64::NAN)),
        };
        let c = self.lift_at_base(&(inv * z));
        self.push_forward(&g, &op.apply(&c))
    }
}
