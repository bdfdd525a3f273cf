//! Finite-difference Lie brackets and the numerical Nijenhuis torsion.
//!
//! Fields are ambient: sphere fields are extended off the sphere through the
//! radial retraction `x ↦ x/‖x‖`, group fields live on all matrices already.
//! Since torsion is tensorial, the choice of extension does not affect the
//! value at a point.

use nalgebra::DMatrix;

use super::model::{FloatOperator, MatrixModel};
use super::HarnessError;

/// Smallest step accepted by the central-difference stencil.
pub const MIN_STEP: f64 = 1e-8;

/// An ambient vector field.
pub type Field<'a> = dyn Fn(&DMatrix<f64>) -> DMatrix<f64> + 'a;

/// Central-difference directional derivative `DY_p(u)`.
fn directional(y: &Field, p: &DMatrix<f64>, u: &DMatrix<f64>, h: f64) -> DMatrix<f64> {
    let norm = u.norm();
    if norm == 0.0 {
        return DMatrix::zeros(p.nrows(), p.ncols());
    }
    let step = u * (h / norm);
    (y(&(p + &step)) - y(&(p - &step))) * (norm / (2.0 * h))
}

/// `[X, Y]_p = DY_p(X_p) − DX_p(Y_p)` by central differences, for fields on
/// an open subset of a vector space. No manifold checks.
pub fn fd_bracket_ambient(x: &Field, y: &Field, p: &DMatrix<f64>, h: f64) -> Result<DMatrix<f64>, HarnessError> {
    if h < MIN_STEP {
        return Err(HarnessError::StepTooSmall { step: h });
    }
    let xp = x(p);
    let yp = y(p);
    Ok(directional(y, p, &xp, h) - directional(x, p, &yp, h))
}

/// [`fd_bracket_ambient`] at a point of the model manifold.
pub fn fd_bracket(model: &MatrixModel, x: &Field, y: &Field, p: &DMatrix<f64>, h: f64) -> Result<DMatrix<f64>, HarnessError> {
    if h < MIN_STEP {
        return Err(HarnessError::StepTooSmall { step: h });
    }
    model.check_point(p)?;
    fd_bracket_ambient(x, y, p, h)
}

impl MatrixModel {
    /// The ambient extension of `X̃ᵛ`.
    pub fn field<'a>(&'a self, v: &[f64]) -> impl Fn(&DMatrix<f64>) -> DMatrix<f64> + 'a {
        let phi = self.element(v);
        move |x| &phi * self.retract(x)
    }

    /// The ambient extension of `N·X` for an ambient field `X`.
    pub fn apply_bundle_map<'a>(
        &'a self,
        op: &'a FloatOperator,
        x: &'a Field<'a>,
    ) -> impl Fn(&DMatrix<f64>) -> DMatrix<f64> + 'a {
        move |p| {
            let q = self.retract(p);
            self.bundle_map_unchecked(op, &q, &x(&q))
        }
    }
}

/// One torsion evaluation `Ω_N(X̃ᵛ, X̃ʷ)(p)` against its algebraic value.
#[derive(Clone, Debug)]
pub struct FieldSample {
    pub point: DMatrix<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub step: f64,
    pub numerical: DMatrix<f64>,
    pub predicted: DMatrix<f64>,
    /// Max-norm of `numerical − predicted`.
    pub deviation: f64,
    /// Max-norm of `numerical`.
    pub numerical_max: f64,
}

/// Computes `N[NX,Y] + N[X,NY] − [NX,NY] − N²[X,Y]` at `p` for `X = X̃ᵛ`,
/// `Y = X̃ʷ` with four finite-difference brackets, and the value
/// `(α_g)_* π_{*1} β(Ad_g⁻¹ v, Ad_g⁻¹ w)` for the section `g = g(p)`.
pub fn numerical_torsion(
    model: &MatrixModel,
    op: &FloatOperator,
    v: &[f64],
    w: &[f64],
    p: &DMatrix<f64>,
    h: f64,
) -> Result<FieldSample, HarnessError> {
    if h < MIN_STEP {
        return Err(HarnessError::StepTooSmall { step: h });
    }
    model.check_point(p)?;
    let g = model.section(p)?;

    let x = model.field(v);
    let y = model.field(w);
    let nx = model.apply_bundle_map(op, &x);
    let ny = model.apply_bundle_map(op, &y);
    let n = |z: &DMatrix<f64>| model.bundle_map_unchecked(op, p, z);

    let nx_y = fd_bracket_ambient(&nx, &y, p, h)?;
    let x_ny = fd_bracket_ambient(&x, &ny, p, h)?;
    let nx_ny = fd_bracket_ambient(&nx, &ny, p, h)?;
    let x_y = fd_bracket_ambient(&x, &y, p, h)?;
    let numerical = n(&(nx_y + x_ny)) - nx_ny - n(&n(&x_y));

    let v0 = model.ad_inverse(&g, v)?;
    let w0 = model.ad_inverse(&g, w)?;
    let predicted = model.push_forward(&g, &op.beta(&v0, &w0));
    let deviation = (&numerical - &predicted).amax();
    let numerical_max = numerical.amax();
    Ok(FieldSample {
        point: p.clone(),
        v: v.to_vec(),
        w: w.to_vec(),
        step: h,
        numerical,
        predicted,
        deviation,
        numerical_max,
    })
}

/// Max-norm of `fd_bracket(X̃ᵛ, X̃ʷ)(p) + X̃^{[v,w]}(p)`, where the algebra
/// bracket is read off the matrix commutator. This vanishes because `X̃ᵛ`
/// comes from right-invariant fields, whose bracket carries a minus sign.
pub fn pirel_residual(model: &MatrixModel, v: &[f64], w: &[f64], p: &DMatrix<f64>, h: f64) -> Result<f64, HarnessError> {
    let x = model.field(v);
    let y = model.field(w);
    let bracket = fd_bracket(model, &x, &y, p, h)?;
    let (a, b) = (model.element(v), model.element(w));
    let commutator = &a * &b - &b * &a;
    Ok((bracket + commutator * p).amax())
}

/// Nonlinear fields on ℝ³ with closed-form Jacobians, used to measure the
/// convergence order of the stencil.
pub mod test_fields {
    use nalgebra::DMatrix;

    pub fn point() -> DMatrix<f64> {
        DMatrix::from_column_slice(3, 1, &[0.3, -0.7, 0.5])
    }

    pub fn x(p: &DMatrix<f64>) -> DMatrix<f64> {
        let (a, b, c) = (p[0], p[1], p[2]);
        DMatrix::from_column_slice(3, 1, &[b.sin(), a * c, a.cos()])
    }

    pub fn y(p: &DMatrix<f64>) -> DMatrix<f64> {
        let (a, b, c) = (p[0], p[1], p[2]);
        DMatrix::from_column_slice(3, 1, &[b * b, c.sin(), a * b])
    }

    /// `JY·X − JX·Y`.
    pub fn exact_bracket(p: &DMatrix<f64>) -> DMatrix<f64> {
        let (a, b, c) = (p[0], p[1], p[2]);
        let jx = DMatrix::from_row_slice(3, 3, &[0.0, b.cos(), 0.0, c, 0.0, a, -a.sin(), 0.0, 0.0]);
        let jy = DMatrix::from_row_slice(3, 3, &[0.0, 2.0 * b, 0.0, 0.0, 0.0, c.cos(), b, a, 0.0]);
        jy * x(p) - jx * y(p)
    }
}

/// `deviation(h) / deviation(h/2)` of the central-difference bracket on the
/// nonlinear test fields; close to 4 for a second-order stencil.
pub fn convergence_ratio(h: f64) -> Result<f64, HarnessError> {
    let p = test_fields::point();
    let exact = test_fields::exact_bracket(&p);
    let deviation = |h: f64| -> Result<f64, HarnessError> {
        Ok((fd_bracket_ambient(&test_fields::x, &test_fields::y, &p, h)? - &exact).amax())
    };
    Ok(deviation(h)? / deviation(h / 2.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
    use crate::exact::rat;
    use crate::operators::{operator_ad, operator_sandwich, LinearOperator};

    fn col(xs: &[f64]) -> DMatrix<f64> {
        DMatrix::from_column_slice(xs.len(), 1, xs)
    }

    #[test]
    fn bracket_of_field_with_itself_vanishes() {
        let p = test_fields::point();
        let b = fd_bracket_ambient(&test_fields::x, &test_fields::x, &p, 1e-4).unwrap();
        assert!(b.amax() <= 1e-9);
    }

    #[test]
    fn constant_fields_commute() {
        let c1 = |_: &DMatrix<f64>| col(&[1.0, 2.0, 3.0]);
        let c2 = |_: &DMatrix<f64>| col(&[-0.5, 0.0, 4.0]);
        let b = fd_bracket_ambient(&c1, &c2, &test_fields::point(), 1e-4).unwrap();
        assert!(b.amax() <= 1e-15);
    }

    #[test]
    fn step_floor() {
        let model = MatrixModel::from_pair(&sphere_pair()).unwrap();
        let x = model.field(&[0.0, 1.0, 0.0]);
        assert!(matches!(
            fd_bracket(&model, &x, &x, &col(&[0.0, 0.0, 1.0]), 1e-9),
            Err(HarnessError::StepTooSmall { .. })
        ));
    }

    #[test]
    fn second_order_convergence() {
        let ratio = convergence_ratio(1e-2).unwrap();
        assert!((2.5..=6.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn projected_fields_anti_represent_the_bracket() {
        let model = MatrixModel::from_pair(&sphere_pair()).unwrap();
        let p = col(&[0.36, 0.48, 0.8]);
        let r = pirel_residual(&model, &[0.2, 1.0, -0.3], &[0.7, 0.1, 0.9], &p, 1e-4).unwrap();
        assert!(r <= 1e-6, "{r}");
    }

    #[test]
    fn sphere_ad_k0_has_no_torsion() {
        let pair = sphere_pair();
        let model = MatrixModel::from_pair(&pair).unwrap();
        let op = model.operator(&operator_ad(pair.algebra(), &[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap());
        for p in [[0.6, 0.0, 0.8], [0.0, -0.6, -0.8], [0.48, 0.6, -0.64]] {
            let s = numerical_torsion(&model, &op, &[0.3, 1.0, -0.5], &[-0.2, 0.4, 1.1], &col(&p), 1e-4).unwrap();
            assert!(s.predicted.amax() <= 1e-12);
            assert!(s.numerical_max <= 1e-5, "{}", s.numerical_max);
        }
    }

    #[test]
    fn sphere_family_torsion_matches_prediction() {
        // γ = −β admissible; β = 2 is not almost complex but still admissible
        let pair = sphere_pair();
        let model = MatrixModel::from_pair(&pair).unwrap();
        let op = model.operator(&sphere_family(pair.algebra(), rat(1, 1), rat(2, 1), rat(-2, 1)));
        let p = col(&[0.36, -0.48, 0.8]);
        let s = numerical_torsion(&model, &op, &[0.3, 1.0, -0.5], &[-0.2, 0.4, 1.1], &p, 1e-4).unwrap();
        assert!(s.deviation <= 1e-5, "{s:?}");
    }

    #[test]
    fn sandwich_torsion_matches_prediction() {
        let pair = gl_trivial_pair(3);
        let model = MatrixModel::from_pair(&pair).unwrap();
        let (a, b) = gl3_sandwich_factors();
        let op = model.operator(&operator_sandwich(pair.algebra(), &a, &b).unwrap());
        let g = super::super::expm::expm(&model.element(&[0.1, -0.2, 0.05, 0.3, 0.0, 0.1, -0.1, 0.2, 0.15]));
        let v = [1.0, 0.0, 0.5, 0.0, -1.0, 0.0, 0.2, 0.0, 0.3];
        let w = [0.0, 0.4, 0.0, 1.0, 0.0, -0.6, 0.0, 0.8, 0.0];
        let s = numerical_torsion(&model, &op, &v, &w, &g, 1e-4).unwrap();
        assert!(s.predicted.amax() > 1e-2);
        assert!(s.deviation <= 1e-5, "{s:?}");
    }

    #[test]
    fn equal_arguments_give_zero() {
        let pair = gl_trivial_pair(2);
        let model = MatrixModel::from_pair(&pair).unwrap();
        let op = model.operator(&LinearOperator::identity(pair.algebra()));
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 2.0]);
        let v = [1.0, 2.0, -1.0, 0.5];
        let s = numerical_torsion(&model, &op, &v, &v, &g, 1e-4).unwrap();
        assert_eq!(s.predicted.amax(), 0.0);
        assert!(s.numerical_max <= 1e-9);
    }
}
