//! Exact identities between projected fields, checked in floating point.

use nalgebra::DMatrix;
use rand::Rng;

use super::expm::expm;
use super::model::{FloatOperator, MatrixModel, ModelKind};
use super::HarnessError;
use crate::exact::rational_to_f64;
use crate::operators::HomogeneousPair;

/// Tolerance for identities that hold up to rounding.
pub const RELATION_TOLERANCE: f64 = 1e-10;
/// Tolerance for the two explicit sphere demonstrations.
pub const DEMO_TOLERANCE: f64 = 1e-12;

/// `g·X̃ᵛ(p₀)` against `X̃ᵛ(g·p₀)` for `g = diag(1,−1,−1)`, `v = e1`.
#[derive(Clone, Debug)]
pub struct TranslationDemo {
    pub translated: DMatrix<f64>,
    pub evaluated: DMatrix<f64>,
}

/// `(N X̃ᵛ)(g·p₀)` against `X̃^{Iv}(g·p₀)` for the rotation by `θ` about the
/// first axis and `v = e2`.
#[derive(Clone, Debug)]
pub struct OperatorDemo {
    pub theta: f64,
    /// Through the section at `g·p₀`.
    pub bundle_value: DMatrix<f64>,
    /// `g·(I Ad_g⁻¹ v)·p₀` with the explicit rotation as representative.
    pub representative_value: DMatrix<f64>,
    pub field_of_image: DMatrix<f64>,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    /// Max residual of `h·X̃ᵛ(h⁻¹p) = X̃^{Ad_h v}(p)`.
    pub alpha_related: f64,
    /// Max residual between bundle maps computed from `g` and `g·k`, `k ∈ K`.
    pub representative_independence: f64,
    pub translation_demo: Option<TranslationDemo>,
    pub operator_demo: Option<OperatorDemo>,
}

impl RelationReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.alpha_related > RELATION_TOLERANCE {
            out.push(format!("α-relatedness residual {:e}", self.alpha_related));
        }
        if self.representative_independence > RELATION_TOLERANCE {
            out.push(format!("representative dependence {:e}", self.representative_independence));
        }
        if let Some(d) = &self.translation_demo {
            let want_t = col(&[1.0, 0.0, 0.0]);
            if (&d.translated - &want_t).amax() > DEMO_TOLERANCE || (&d.evaluated + &want_t).amax() > DEMO_TOLERANCE {
                out.push("translation demonstration values".into());
            }
        }
        if let Some(d) = &self.operator_demo {
            if (&d.bundle_value - &d.representative_value).amax() > RELATION_TOLERANCE {
                out.push("operator demonstration: section and representative disagree".into());
            }
        }
        out
    }
}

fn col(xs: &[f64]) -> DMatrix<f64> {
    DMatrix::from_column_slice(xs.len(), 1, xs)
}

pub(crate) fn random_coords<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-radius..=radius)).collect()
}

/// Uniform point on the sphere outside a cap of radius `1e-3` around `−p₀`,
/// or `expm(Φ(x))` with `x ∈ [−½, ½]ⁿ` for a group.
pub fn sample_point<R: Rng>(model: &MatrixModel, rng: &mut R) -> DMatrix<f64> {
    match model.kind() {
        ModelKind::SphereOrbit => loop {
            let x = col(&random_coords(rng, 3, 1.0));
            let r = x.norm();
            if !(1e-3..=1.0).contains(&r) {
                continue;
            }
            let p = x / r;
            if (&p + model.base_point()).norm() > 1e-3 {
                return p;
            }
        },
        ModelKind::FullGroup => sample_group_element(model, rng),
    }
}

pub fn sample_group_element<R: Rng>(model: &MatrixModel, rng: &mut R) -> DMatrix<f64> {
    expm(&model.element(&random_coords(rng, model.dim(), 0.5)))
}

/// Coordinates of a 3×3 matrix in the sphere model's basis.
fn sphere_coordinates(model: &MatrixModel, rows: &[f64]) -> Vec<f64> {
    model.coordinates(&DMatrix::from_row_slice(3, 3, rows))
}

pub fn translation_demo(model: &MatrixModel) -> Option<TranslationDemo> {
    if model.kind() != ModelKind::SphereOrbit {
        return None;
    }
    let e1 = sphere_coordinates(model, &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0]);
    let g = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0]);
    let p0 = model.base_point();
    let field = model.field(&e1);
    Some(TranslationDemo {
        translated: &g * field(p0),
        evaluated: field(&(&g * p0)),
    })
}

pub fn operator_demo(model: &MatrixModel, op: &FloatOperator, theta: f64) -> Result<Option<OperatorDemo>, HarnessError> {
    if model.kind() != ModelKind::SphereOrbit {
        return Ok(None);
    }
    let e2 = sphere_coordinates(model, &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0]);
    let (c, s) = (theta.cos(), theta.sin());
    let g = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c]);
    let p = &g * model.base_point();
    let field = model.field(&e2);
    let bundle_value = model.bundle_map(op, &p, &field(&p))?;
    let v0 = model.ad_inverse(&g, &e2)?;
    let representative_value = model.push_forward(&g, &op.apply(&v0));
    let field_of_image = model.field(&op.apply(&e2))(&p);
    Ok(Some(OperatorDemo {
        theta,
        bundle_value,
        representative_value,
        field_of_image,
    }))
}

/// Runs the α-relatedness and representative-independence checks at
/// `samples` random configurations and the sphere demonstrations.
pub fn relation_checks<R: Rng>(
    model: &MatrixModel,
    pair: &HomogeneousPair,
    op: &FloatOperator,
    samples: usize,
    theta: f64,
    rng: &mut R,
) -> Result<RelationReport, HarnessError> {
    let k_basis: Vec<Vec<f64>> = pair
        .k()
        .space()
        .basis_vectors()
        .iter()
        .map(|b| b.iter().map(rational_to_f64).collect())
        .collect();
    let mut alpha_related: f64 = 0.0;
    let mut representative_independence: f64 = 0.0;
    for _ in 0..samples {
        let h = sample_group_element(model, rng);
        let h_inv = h.clone().try_inverse().ok_or(HarnessError::SingularGroupElement)?;
        let v = random_coords(rng, model.dim(), 1.0);
        let p = sample_point(model, rng);
        let lhs = &h * model.field(&v)(&(&h_inv * &p));
        let rhs = model.field(&model.ad(&h, &v)?)(&p);
        alpha_related = alpha_related.max((lhs - rhs).amax());

        let g = model.section(&p)?;
        let z = model.field(&random_coords(rng, model.dim(), 1.0))(&p);
        let reference = model.bundle_map_with_representative(op, &g, &z)?;
        for kb in &k_basis {
            let t = rng.random_range(-3.0..=3.0);
            let k = expm(&(model.element(kb) * t));
            let other = model.bundle_map_with_representative(op, &(&g * k), &z)?;
            representative_independence = representative_independence.max((other - &reference).amax());
        }
    }
    Ok(RelationReport {
        alpha_related,
        representative_independence,
        translation_demo: translation_demo(model),
        operator_demo: operator_demo(model, op, theta)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
    use crate::exact::rat;
    use crate::operators::operator_ad;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sphere_demonstrations() {
        let pair = sphere_pair();
        let model = MatrixModel::from_pair(&pair).unwrap();
        let d = translation_demo(&model).unwrap();
        assert!((d.translated - col(&[1.0, 0.0, 0.0])).amax() <= 1e-12);
        assert!((d.evaluated - col(&[-1.0, 0.0, 0.0])).amax() <= 1e-12);

        let op = model.operator(&operator_ad(pair.algebra(), &[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap());
        let d = operator_demo(&model, &op, 1.0).unwrap().unwrap();
        assert!((&d.bundle_value - col(&[1.0, 0.0, 0.0])).amax() <= 1e-12, "{}", d.bundle_value);
        assert!((&d.representative_value - col(&[1.0, 0.0, 0.0])).amax() <= 1e-12);
        assert!((&d.field_of_image - col(&[1.0f64.cos(), 0.0, 0.0])).amax() <= 1e-12);
    }

    #[test]
    fn relations_hold_on_sphere_and_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pair = sphere_pair();
        let model = MatrixModel::from_pair(&pair).unwrap();
        let op = model.operator(&sphere_family(pair.algebra(), rat(3, 1), rat(1, 2), rat(-1, 2)));
        let r = relation_checks(&model, &pair, &op, 100, 1.0, &mut rng).unwrap();
        assert!(r.failures().is_empty(), "{r:?}");
        assert!(r.representative_independence > 0.0 || r.alpha_related > 0.0);

        let pair = gl_trivial_pair(2);
        let model = MatrixModel::from_pair(&pair).unwrap();
        let op = model.operator(&crate::operators::LinearOperator::identity(pair.algebra()));
        let r = relation_checks(&model, &pair, &op, 20, 1.0, &mut rng).unwrap();
        assert!(r.failures().is_empty(), "{r:?}");
        assert!(r.translation_demo.is_none());
    }

    #[test]
    fn non_admissible_operator_depends_on_representative() {
        // e1 ↦ e1 only: does not commute with ad_k0 modulo k
        let pair = sphere_pair();
        let model = MatrixModel::from_pair(&pair).unwrap();
        let op = model.operator(&sphere_family(pair.algebra(), rat(0, 1), rat(1, 1), rat(1, 1)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = relation_checks(&model, &pair, &op, 10, 1.0, &mut rng).unwrap();
        assert!(r.representative_independence > 1e-3);
    }

    #[test]
    fn sphere_samples_avoid_the_antipode() {
        let model = MatrixModel::from_pair(&sphere_pair()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = sample_point(&model, &mut rng);
            assert!((p.norm() - 1.0).abs() <= 1e-12);
            assert!((&p + model.base_point()).norm() > 1e-3);
        }
    }
}
