//! Floating-point cross-check of the algebraic torsion formula on concrete
//! matrix homogeneous spaces.
//!
//! Two models are supported: the sphere as the `SO(3)` orbit of the north
//! pole, and a matrix group viewed as `G/{1}`. On either, the Nijenhuis
//! torsion of the bundle map induced by an admissible operator is computed
//! with finite-difference brackets and compared with `(α_g)_* π_{*1} β`.

pub mod expm;
pub mod fields;
pub mod model;
pub mod relations;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::ArithError;
use crate::nijenhuis::{check_nijenhuis, NijenhuisError};
use crate::operators::{check_admissible, HomogeneousPair, LinearOperator, OperatorError};

pub use fields::{convergence_ratio, fd_bracket, fd_bracket_ambient, numerical_torsion, pirel_residual, FieldSample};
pub use model::{FloatOperator, MatrixModel, ModelKind};
pub use relations::{
    operator_demo, relation_checks, sample_group_element, sample_point, translation_demo, OperatorDemo, RelationReport,
    TranslationDemo,
};

/// Componentwise bound on `|numerical − predicted|` torsion.
pub const TORSION_TOLERANCE: f64 = 1e-5;
/// Bound on `|[X̃ᵛ, X̃ʷ] + X̃^{[v,w]}|` by finite differences.
pub const PIREL_TOLERANCE: f64 = 1e-6;
/// Step at which the convergence ratio is measured.
pub const CONVERGENCE_STEP: f64 = 1e-2;
/// Accepted range for `deviation(h)/deviation(h/2)`.
pub const CONVERGENCE_RANGE: (f64, f64) = (2.5, 6.0);
pub const MAX_STEP: f64 = 1e-1;
pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("step {step:e} is below the minimum {min:e}", min = fields::MIN_STEP)]
    StepTooSmall { step: f64 },
    #[error("step {step:e} is above the maximum {max:e}", max = MAX_STEP)]
    StepTooLarge { step: f64 },
    #[error("sample count {count} is outside 1..={max}", max = MAX_SAMPLES)]
    SamplesOutOfRange { count: usize },
    #[error("point is off the manifold (deviation {deviation:e})")]
    PointOffManifold { deviation: f64 },
    #[error("section is singular at the antipode of the base point")]
    SectionSingular,
    #[error("group element is not invertible")]
    SingularGroupElement,
    #[error("algebra {0} has no matrix realization")]
    NoRealization(String),
    #[error("no matrix model for pair {0}")]
    UnsupportedPair(String),
    #[error("float commutator of basis {i}, {j} is off by {error:e}")]
    ModelMismatch { i: usize, j: usize, error: f64 },
    #[error("operator is not admissible: {0}")]
    NotAdmissible(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Nijenhuis(#[from] NijenhuisError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarnessConfig {
    pub samples: usize,
    pub step: f64,
    pub seed: u64,
    /// Rotation angle of the operator demonstration.
    pub theta: f64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            samples: 20,
            step: 1e-4,
            seed: 42,
            theta: 1.0,
        }
    }
}

impl HarnessConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.step < fields::MIN_STEP {
            return Err(HarnessError::StepTooSmall { step: self.step });
        }
        if self.step > MAX_STEP || !self.step.is_finite() {
            return Err(HarnessError::StepTooLarge { step: self.step });
        }
        if !(1..=MAX_SAMPLES).contains(&self.samples) {
            return Err(HarnessError::SamplesOutOfRange { count: self.samples });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub kind: ModelKind,
    pub config: HarnessConfig,
    pub samples: Vec<FieldSample>,
    pub max_deviation: f64,
    pub max_numerical_torsion: f64,
    /// Exact verdict of the algebraic criterion.
    pub nijenhuis_exact: bool,
    pub max_pirel_residual: f64,
    pub convergence_ratio: f64,
    pub relations: RelationReport,
    pub failures: Vec<String>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Samples `config.samples` random points and argument pairs, evaluates the
/// numerical torsion at each, and runs the relation checks.
pub fn run_harness(pair: &HomogeneousPair, op: &LinearOperator, config: &HarnessConfig) -> Result<HarnessReport, HarnessError> {
    config.validate()?;
    let verdict = check_admissible(pair, op)?;
    if !verdict.holds {
        let clause = verdict.failed_clause().map_or("unknown clause", |c| c.describe());
        return Err(HarnessError::NotAdmissible(clause.to_string()));
    }
    let nijenhuis_exact = check_nijenhuis(pair, op)?.holds;
    let model = MatrixModel::from_pair(pair)?;
    let fop = model.operator(op);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut samples = Vec::with_capacity(config.samples);
    let mut max_pirel_residual: f64 = 0.0;
    for _ in 0..config.samples {
        let p = relations::sample_point(&model, &mut rng);
        let v = relations::random_coords(&mut rng, model.dim(), 1.0);
        let w = relations::random_coords(&mut rng, model.dim(), 1.0);
        max_pirel_residual = max_pirel_residual.max(pirel_residual(&model, &v, &w, &p, config.step)?);
        samples.push(numerical_torsion(&model, &fop, &v, &w, &p, config.step)?);
    }
    let max_deviation = samples.iter().map(|s| s.deviation).fold(0.0, f64::max);
    let max_numerical_torsion = samples.iter().map(|s| s.numerical_max).fold(0.0, f64::max);
    let convergence_ratio = convergence_ratio(CONVERGENCE_STEP)?;
    let relations = relation_checks(&model, pair, &fop, config.samples, config.theta, &mut rng)?;

    let mut failures = relations.failures();
    if max_deviation > TORSION_TOLERANCE {
        failures.push(format!("torsion deviation {max_deviation:e}"));
    }
    if nijenhuis_exact && max_numerical_torsion > TORSION_TOLERANCE {
        failures.push(format!("numerical torsion {max_numerical_torsion:e} for a Nijenhuis operator"));
    }
    if max_pirel_residual > PIREL_TOLERANCE {
        failures.push(format!("projected bracket residual {max_pirel_residual:e}"));
    }
    if !(CONVERGENCE_RANGE.0..=CONVERGENCE_RANGE.1).contains(&convergence_ratio) {
        failures.push(format!("convergence ratio {convergence_ratio}"));
    }
    Ok(HarnessReport {
        kind: model.kind(),
        config: *config,
        samples,
        max_deviation,
        max_numerical_torsion,
        nijenhuis_exact,
        max_pirel_residual,
        convergence_ratio,
        relations,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
    use crate::exact::rat;
    use crate::operators::operator_sandwich;

    #[test]
    fn config_bounds() {
        assert!(HarnessConfig::default().validate().is_ok());
        let bad = |step, samples| HarnessConfig { step, samples, ..HarnessConfig::default() }.validate();
        assert!(matches!(bad(1e-9, 20), Err(HarnessError::StepTooSmall { .. })));
        assert!(matches!(bad(0.5, 20), Err(HarnessError::StepTooLarge { .. })));
        assert!(matches!(bad(1e-4, 0), Err(HarnessError::SamplesOutOfRange { .. })));
    }

    #[test]
    fn sphere_family_passes() {
        let pair = sphere_pair();
        let op = sphere_family(pair.algebra(), rat(1, 1), rat(1, 1), rat(-1, 1));
        let report = run_harness(&pair, &op, &HarnessConfig::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.nijenhuis_exact);
        assert_eq!(report.samples.len(), 20);
    }

    #[test]
    fn sandwich_passes_with_nonzero_torsion() {
        let pair = gl_trivial_pair(3);
        let (a, b) = gl3_sandwich_factors();
        let op = operator_sandwich(pair.algebra(), &a, &b).unwrap();
        let report = run_harness(&pair, &op, &HarnessConfig::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(!report.nijenhuis_exact);
        assert!(report.max_numerical_torsion > 1e-2);
    }

    #[test]
    fn rejects_non_admissible() {
        let pair = sphere_pair();
        let op = sphere_family(pair.algebra(), rat(0, 1), rat(1, 1), rat(1, 1));
        assert!(matches!(
            run_harness(&pair, &op, &HarnessConfig::default()),
            Err(HarnessError::NotAdmissible(_))
        ));
    }

    #[test]
    fn same_seed_same_report() {
        let pair = sphere_pair();
        let op = sphere_family(pair.algebra(), rat(2, 1), rat(1, 1), rat(-1, 1));
        let config = HarnessConfig { samples: 5, ..HarnessConfig::default() };
        let a = run_harness(&pair, &op, &config).unwrap();
        let b = run_harness(&pair, &op, &config).unwrap();
        assert_eq!(a.max_deviation, b.max_deviation);
        assert_eq!(a.samples[3].point, b.samples[3].point);
    }
}
