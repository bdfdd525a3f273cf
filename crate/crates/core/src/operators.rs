//! Linear operators on `𝔤`, homogeneous pairs `(𝔤, 𝔨)` and the
//! admissibility tests deciding whether an operator descends to a
//! homogeneous bundle map on `G/K`.

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{vector, ArithError, ExactMatrix, GaussianRational, Rational, Scalar, Subspace};
use crate::lie::{LieAlgebra, LieError, Subalgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("operator matrix must be {expected}×{expected}, got {rows}×{cols}")]
    MatrixShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("rule for `{0}` given more than once")]
    DuplicateRule(String),
    #[error("no rule given for basis element(s) {}", .missing.join(", "))]
    RuleIncomplete { missing: Vec<String> },
    #[error("algebra `{0}` has no matrix realization")]
    NoRealization(String),
    #[error("image of basis element `{label}` leaves the algebra: {image}")]
    ImageOutsideAlgebra {
        basis: usize,
        label: String,
        image: ExactMatrix<GaussianRational>,
    },
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("complement has dimension {found}, expected {expected}")]
    ComplementDimension { expected: usize, found: usize },
    #[error("complement meets the subalgebra nontrivially")]
    ComplementNotTransverse,
    #[error("component representative {index} is invalid: {defect}")]
    ComponentRep { index: usize, defect: RepDefect },
    #[error("this check needs a complement 𝔪")]
    MissingComplement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepDefect {
    WrongShape,
    NotInvertible,
    DoesNotPreserveSubalgebra,
    NotAutomorphism,
}

impl std::fmt::Display for RepDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RepDefect::WrongShape => "wrong shape",
            RepDefect::NotInvertible => "not invertible",
            RepDefect::DoesNotPreserveSubalgebra => "does not preserve 𝔨",
            RepDefect::NotAutomorphism => "not a Lie algebra automorphism",
        })
    }
}

fn same_algebra(a: &Arc<LieAlgebra>, b: &Arc<LieAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A real linear operator on `𝔤`, stored as its matrix in the algebra basis
/// (column `j` is the image of `bⱼ`). Read over ℚ(i) it is the complex
/// linear extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    alg: Arc<LieAlgebra>,
    matrix: ExactMatrix<Rational>,
}

impl LinearOperator {
    pub fn new(alg: &Arc<LieAlgebra>, matrix: ExactMatrix<Rational>) -> Result<Self, OperatorError> {
        let n = alg.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(OperatorError::MatrixShape {
                expected: n,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(Self {
            alg: Arc::clone(alg),
            matrix,
        })
    }

    pub fn identity(alg: &Arc<LieAlgebra>) -> Self {
        Self {
            alg: Arc::clone(alg),
            matrix: ExactMatrix::identity(alg.dim()),
        }
    }

    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        Self {
            alg: Arc::clone(alg),
            matrix: ExactMatrix::zeros(alg.dim(), alg.dim()),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn matrix(&self) -> &ExactMatrix<Rational> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub(crate) fn apply_raw<F: Scalar>(&self, v: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vector::zeros::<F>(n);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.matrix.get(i, j);
                if !m.is_zero() {
                    *o = o.clone() + F::from_rational(m) * x.clone();
                }
            }
        }
        out
    }

    /// `I v` for a real or complex coordinate vector.
    pub fn apply<F: Scalar>(&self, v: &[F]) -> Result<Vec<F>, ArithError> {
        if v.len() != self.dim() {
            return Err(ArithError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(self.apply_raw(v))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, OperatorError> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(OperatorError::AlgebraMismatch);
        }
        Ok(Self {
            alg: Arc::clone(&self.alg),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn square(&self) -> Self {
        self.compose(self).expect("an operator composes with itself")
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Rational, other: &Self, b: &Rational) -> Result<Self, OperatorError> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(OperatorError::AlgebraMismatch);
        }
        Ok(Self {
            alg: Arc::clone(&self.alg),
            matrix: self.matrix.scale(a).add(&other.matrix.scale(b))?,
        })
    }

    pub fn complexified_matrix(&self) -> ExactMatrix<GaussianRational> {
        self.matrix.map(GaussianRational::from_rational)
    }
}

/// Operator given by the images of every basis element.
pub fn operator_from_rules(
    alg: &Arc<LieAlgebra>,
    rules: &[(String, Vec<Rational>)],
) -> Result<LinearOperator, OperatorError> {
    let n = alg.dim();
    let mut columns: Vec<Option<Vec<Rational>>> = vec![None; n];
    for (label, image) in rules {
        let j = alg
            .label_index(label)
            .ok_or_else(|| OperatorError::UnknownLabel(label.clone()))?;
        if image.len() != n {
            return Err(ArithError::DimensionMismatch {
                expected: n,
                found: image.len(),
            }
            .into());
        }
        if columns[j].is_some() {
            return Err(OperatorError::DuplicateRule(label.clone()));
        }
        columns[j] = Some(image.clone());
    }
    let missing: Vec<String> = columns
        .iter()
        .zip(alg.labels())
        .filter(|(c, _)| c.is_none())
        .map(|(_, l)| l.clone())
        .collect();
    if !missing.is_empty() {
        return Err(OperatorError::RuleIncomplete { missing });
    }
    let columns: Vec<Vec<Rational>> = columns.into_iter().flatten().collect();
    LinearOperator::new(alg, ExactMatrix::from_columns(n, &columns)?)
}

/// `ad_d = [d, ·]`.
pub fn operator_ad(alg: &Arc<LieAlgebra>, d: &[Rational]) -> Result<LinearOperator, OperatorError> {
    LinearOperator::new(alg, alg.ad_matrix(d)?)
}

fn multiplication_operator(
    alg: &Arc<LieAlgebra>,
    left: Option<&ExactMatrix<GaussianRational>>,
    right: Option<&ExactMatrix<GaussianRational>>,
) -> Result<LinearOperator, OperatorError> {
    let real = alg
        .realization()
        .ok_or_else(|| OperatorError::NoRealization(alg.name().to_string()))?;
    let size = real.size();
    for m in left.iter().chain(right.iter()) {
        if m.rows() != size || m.cols() != size {
            return Err(ArithError::ShapeMismatch {
                left: (size, size),
                right: (m.rows(), m.cols()),
            }
            .into());
        }
    }
    let mut columns = Vec::with_capacity(alg.dim());
    for (basis, g) in real.generators().iter().enumerate() {
        let mut image = g.clone();
        if let Some(a) = left {
            image = a.mul(&image)?;
        }
        if let Some(b) = right {
            image = image.mul(b)?;
        }
        match real.coordinates(&image)? {
            Some(c) => columns.push(c),
            None => {
                return Err(OperatorError::ImageOutsideAlgebra {
                    basis,
                    label: alg.labels()[basis].clone(),
                    image,
                })
            }
        }
    }
    LinearOperator::new(alg, ExactMatrix::from_columns(alg.dim(), &columns)?)
}

/// `X ↦ A·X`.
pub fn operator_left_mult(
    alg: &Arc<LieAlgebra>,
    a: &ExactMatrix<GaussianRational>,
) -> Result<LinearOperator, OperatorError> {
    multiplication_operator(alg, Some(a), None)
}

/// `X ↦ X·B`.
pub fn operator_right_mult(
    alg: &Arc<LieAlgebra>,
    b: &ExactMatrix<GaussianRational>,
) -> Result<LinearOperator, OperatorError> {
    multiplication_operator(alg, None, Some(b))
}

/// `X ↦ A·X·B`.
pub fn operator_sandwich(
    alg: &Arc<LieAlgebra>,
    a: &ExactMatrix<GaussianRational>,
    b: &ExactMatrix<GaussianRational>,
) -> Result<LinearOperator, OperatorError> {
    multiplication_operator(alg, Some(a), Some(b))
}

/// Whether `K` is connected. For a non-connected `K`, `reps` holds the
/// matrices of `Ad_k` for one element `k` in each non-identity component.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Connected,
    Disconnected { reps: Vec<ExactMatrix<Rational>> },
}

/// Which part of `K` a verdict covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Full,
    /// `K` is declared non-connected but no component representatives were
    /// supplied, so only the identity component is accounted for.
    IdentityComponent,
}

/// The infinitesimal data `(𝔤, 𝔨)` of a homogeneous space `G/K`.
#[derive(Clone, Debug)]
pub struct HomogeneousPair {
    name: String,
    k: Subalgebra,
    m: Option<Subspace<Rational>>,
    connectivity: Connectivity,
}

impl HomogeneousPair {
    pub fn new(
        name: impl Into<String>,
        k: Subalgebra,
        m: Option<Subspace<Rational>>,
        connectivity: Connectivity,
    ) -> Result<Self, OperatorError> {
        let alg = k.parent();
        let n = alg.dim();
        if let Some(m) = &m {
            if m.ambient_dim() != n {
                return Err(ArithError::DimensionMismatch {
                    expected: n,
                    found: m.ambient_dim(),
                }
                .into());
            }
            if m.dim() + k.dim() != n {
                return Err(OperatorError::ComplementDimension {
                    expected: n - k.dim(),
                    found: m.dim(),
                });
            }
            if m.intersection(k.space())?.dim() != 0 {
                return Err(OperatorError::ComplementNotTransverse);
            }
        }
        if let Connectivity::Disconnected { reps } = &connectivity {
            for (index, a) in reps.iter().enumerate() {
                if let Some(defect) = rep_defect(alg, &k, a)? {
                    return Err(OperatorError::ComponentRep { index, defect });
                }
            }
        }
        Ok(Self {
            name: name.into(),
            k,
            m,
            connectivity,
        })
    }

    /// Pair with connected `K` and no complement.
    pub fn connected(name: impl Into<String>, k: Subalgebra) -> Self {
        Self {
            name: name.into(),
            k,
            m: None,
            connectivity: Connectivity::Connected,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        self.k.parent()
    }

    pub fn k(&self) -> &Subalgebra {
        &self.k
    }

    pub fn m(&self) -> Option<&Subspace<Rational>> {
        self.m.as_ref()
    }

    pub fn connectivity(&self) -> &Connectivity {
        &self.connectivity
    }

    pub fn component_reps(&self) -> &[ExactMatrix<Rational>] {
        match &self.connectivity {
            Connectivity::Connected => &[],
            Connectivity::Disconnected { reps } => reps,
        }
    }

    pub fn scope(&self) -> Scope {
        match &self.connectivity {
            Connectivity::Disconnected { reps } if reps.is_empty() => Scope::IdentityComponent,
            _ => Scope::Full,
        }
    }

    /// Same pair without its complement.
    pub fn without_complement(&self) -> Self {
        Self {
            m: None,
            ..self.clone()
        }
    }

    pub(crate) fn check_operator(&self, op: &LinearOperator) -> Result<(), OperatorError> {
        if same_algebra(self.algebra(), op.algebra()) {
            Ok(())
        } else {
            Err(OperatorError::AlgebraMismatch)
        }
    }
}

fn rep_defect(
    alg: &LieAlgebra,
    k: &Subalgebra,
    a: &ExactMatrix<Rational>,
) -> Result<Option<RepDefect>, ArithError> {
    let n = alg.dim();
    if a.rows() != n || a.cols() != n {
        return Ok(Some(RepDefect::WrongShape));
    }
    if !a.is_invertible() {
        return Ok(Some(RepDefect::NotInvertible));
    }
    for z in k.space().basis_vectors() {
        if !k.contains(&a.mul_vec(&z)?)? {
            return Ok(Some(RepDefect::DoesNotPreserveSubalgebra));
        }
    }
    let columns: Vec<Vec<Rational>> = (0..n).map(|j| a.column(j)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = a.mul_vec(&alg.basis_bracket(i, j))?;
            if lhs != alg.bracket_raw(&columns[i], &columns[j]) {
                return Ok(Some(RepDefect::NotAutomorphism));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `I𝔨 ⊂ 𝔨`.
    PreservesSubalgebra,
    /// `I[z, bⱼ] − [z, I bⱼ] ∈ 𝔨` for `z ∈ 𝔨`.
    CommutesWithAdModK,
    /// `(A·I − I·A) bⱼ ∈ 𝔨` for each component representative `A`.
    CommutesWithComponentReps,
    /// `𝔨 ⊂ ker I`.
    AnnihilatesSubalgebra,
    /// `I𝔪 ⊂ 𝔪`.
    PreservesComplement,
    /// `[z, d] ∈ 𝔨` for `z ∈ 𝔨` (operators `ad_d`).
    AdBracketInSubalgebra,
    /// `[v, [z, d]] ∈ 𝔨` for `z ∈ 𝔨`, `v ∈ 𝔤` (operators `ad_d`).
    AdNormalizes,
}

impl Clause {
    pub fn describe(&self) -> &'static str {
        match self {
            Clause::PreservesSubalgebra => "I k ⊂ k",
            Clause::CommutesWithAdModK => "I[z,b] - [z,Ib] ∈ k",
            Clause::CommutesWithComponentReps => "(A I - I A) b ∈ k",
            Clause::AnnihilatesSubalgebra => "k ⊂ ker I",
            Clause::PreservesComplement => "I m ⊂ m",
            Clause::AdBracketInSubalgebra => "[z,d] ∈ k",
            Clause::AdNormalizes => "[v,[z,d]] ∈ k",
        }
    }
}

/// A failing instance of a clause, with exact vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityWitness {
    /// `z` (in 𝔨 or 𝔪, depending on the clause) and its offending image.
    Vector { v: Vec<Rational>, image: Vec<Rational> },
    /// `z ∈ 𝔨`, a basis index `j` and the value `I[z,bⱼ] − [z,I bⱼ]`
    /// (or `[bⱼ, [z, d]]` for `ad_d`).
    BasisPair { z: Vec<Rational>, basis: usize, value: Vec<Rational> },
    /// Component representative index, basis index and `(A·I − I·A) bⱼ`.
    ComponentRep { rep: usize, basis: usize, value: Vec<Rational> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseResult {
    pub clause: Clause,
    pub holds: bool,
    pub witness: Option<AdmissibilityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub holds: bool,
    pub scope: Scope,
    pub clauses: Vec<ClauseResult>,
    /// Witness of the first failing clause.
    pub witness: Option<AdmissibilityWitness>,
}

impl VerdictReport {
    fn from_clauses(scope: Scope, clauses: Vec<ClauseResult>) -> Self {
        let witness = clauses.iter().find(|c| !c.holds).and_then(|c| c.witness.clone());
        Self {
            holds: clauses.iter().all(|c| c.holds),
            scope,
            clauses,
            witness,
        }
    }

    pub fn failed_clause(&self) -> Option<Clause> {
        self.clauses.iter().find(|c| !c.holds).map(|c| c.clause)
    }
}

fn clause(clause: Clause, witness: Option<AdmissibilityWitness>) -> ClauseResult {
    ClauseResult {
        clause,
        holds: witness.is_none(),
        witness,
    }
}

fn first_vector_outside(
    vectors: &[Vec<Rational>],
    map: impl Fn(&[Rational]) -> Vec<Rational>,
    target: &Subspace<Rational>,
) -> Result<Option<AdmissibilityWitness>, ArithError> {
    for v in vectors {
        let image = map(v);
        if !target.contains(&image)? {
            return Ok(Some(AdmissibilityWitness::Vector {
                v: v.clone(),
                image,
            }));
        }
    }
    Ok(None)
}

fn first_column_outside(
    m: &ExactMatrix<Rational>,
    target: &Subspace<Rational>,
    witness: impl Fn(usize, Vec<Rational>) -> AdmissibilityWitness,
) -> Result<Option<AdmissibilityWitness>, ArithError> {
    for j in 0..m.cols() {
        let value = m.column(j);
        if !target.contains(&value)? {
            return Ok(Some(witness(j, value)));
        }
    }
    Ok(None)
}

fn component_rep_clause(pair: &HomogeneousPair, i: &ExactMatrix<Rational>) -> Result<ClauseResult, ArithError> {
    let k = pair.k().space();
    for (rep, a) in pair.component_reps().iter().enumerate() {
        let defect = a.mul(i)?.sub(&i.mul(a)?)?;
        if let Some(w) = first_column_outside(&defect, k, |basis, value| {
            AdmissibilityWitness::ComponentRep { rep, basis, value }
        })? {
            return Ok(clause(Clause::CommutesWithComponentReps, Some(w)));
        }
    }
    Ok(clause(Clause::CommutesWithComponentReps, None))
}

fn admissibility_clauses(pair: &HomogeneousPair, op: &LinearOperator) -> Result<Vec<ClauseResult>, OperatorError> {
    pair.check_operator(op)?;
    let alg = pair.algebra();
    let k = pair.k().space();
    let k_basis = k.basis_vectors();
    let mut clauses = vec![clause(
        Clause::PreservesSubalgebra,
        first_vector_outside(&k_basis, |z| op.apply_raw(z), k)?,
    )];

    let mut commutator_witness = None;
    for z in &k_basis {
        let ad_z = alg.ad_matrix(z)?;
        let defect = op.matrix().mul(&ad_z)?.sub(&ad_z.mul(op.matrix())?)?;
        commutator_witness = first_column_outside(&defect, k, |basis, value| {
            AdmissibilityWitness::BasisPair {
                z: z.clone(),
                basis,
                value,
            }
        })?;
        if commutator_witness.is_some() {
            break;
        }
    }
    clauses.push(clause(Clause::CommutesWithAdModK, commutator_witness));

    if !pair.component_reps().is_empty() {
        clauses.push(component_rep_clause(pair, op.matrix())?);
    }
    Ok(clauses)
}

/// Decides whether `I` is admissible for the pair: `I𝔨 ⊂ 𝔨`,
/// `I∘ad_z − ad_z∘I` maps `𝔤` into `𝔨` for `z ∈ 𝔨`, and `I` commutes with
/// the given component representatives modulo `𝔨`.
pub fn check_admissible(pair: &HomogeneousPair, op: &LinearOperator) -> Result<VerdictReport, OperatorError> {
    Ok(VerdictReport::from_clauses(
        pair.scope(),
        admissibility_clauses(pair, op)?,
    ))
}

/// The stronger split condition: `𝔨 ⊂ ker I`, `I𝔪 ⊂ 𝔪`, and admissibility.
pub fn check_split_admissible(
    pair: &HomogeneousPair,
    op: &LinearOperator,
) -> Result<VerdictReport, OperatorError> {
    let m = pair.m().ok_or(OperatorError::MissingComplement)?;
    pair.check_operator(op)?;
    let k_basis = pair.k().space().basis_vectors();
    let zero = Subspace::zero(pair.algebra().dim());
    let mut clauses = vec![
        clause(
            Clause::AnnihilatesSubalgebra,
            first_vector_outside(&k_basis, |z| op.apply_raw(z), &zero)?,
        ),
        clause(
            Clause::PreservesComplement,
            first_vector_outside(&m.basis_vectors(), |x| op.apply_raw(x), m)?,
        ),
    ];
    clauses.extend(admissibility_clauses(pair, op)?);
    Ok(VerdictReport::from_clauses(pair.scope(), clauses))
}

/// Admissibility of `ad_d` through its two bracket conditions
/// `[z, d] ∈ 𝔨` and `[v, [z, d]] ∈ 𝔨` (`z ∈ 𝔨`, `v ∈ 𝔤`). Agrees with
/// [`check_admissible`] applied to [`operator_ad`]`(d)`.
pub fn check_ad_admissible(pair: &HomogeneousPair, d: &[Rational]) -> Result<VerdictReport, OperatorError> {
    let alg = pair.algebra();
    let k = pair.k().space();
    let k_basis = k.basis_vectors();
    let zd: Vec<Vec<Rational>> = k_basis
        .iter()
        .map(|z| alg.bracket(z, d))
        .collect::<Result<_, _>>()?;

    let mut bracket_witness = None;
    for (z, v) in k_basis.iter().zip(&zd) {
        if !k.contains(v)? {
            bracket_witness = Some(AdmissibilityWitness::Vector {
                v: z.clone(),
                image: v.clone(),
            });
            break;
        }
    }
    let mut normalizer_witness = None;
    'outer: for (z, v) in k_basis.iter().zip(&zd) {
        if vector::is_zero(v) {
            continue;
        }
        for j in 0..alg.dim() {
            let value = alg.bracket_raw(&vector::unit(alg.dim(), j), v);
            if !k.contains(&value)? {
                normalizer_witness = Some(AdmissibilityWitness::BasisPair {
                    z: z.clone(),
                    basis: j,
                    value,
                });
                break 'outer;
            }
        }
    }
    let mut clauses = vec![
        clause(Clause::AdBracketInSubalgebra, bracket_witness),
        clause(Clause::AdNormalizes, normalizer_witness),
    ];
    if !pair.component_reps().is_empty() {
        clauses.push(component_rep_clause(pair, &alg.ad_matrix(d)?)?);
    }
    Ok(VerdictReport::from_clauses(pair.scope(), clauses))
}

/// All `d` for which `ad_d` is admissible. Every condition is linear in
/// `d`, so this is the kernel of one stacked linear map.
pub fn admissible_ad_elements(pair: &HomogeneousPair) -> Result<Subspace<Rational>, OperatorError> {
    let alg = pair.algebra();
    let n = alg.dim();
    let k = pair.k().space();
    let k_basis = k.basis_vectors();
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let d = vector::unit::<Rational>(n, i);
        let mut conditions = Vec::new();
        for z in &k_basis {
            let zd = alg.bracket_raw(z, &d);
            conditions.extend(k.residual(&zd)?);
            for j in 0..n {
                conditions.extend(k.residual(&alg.bracket_raw(&vector::unit(n, j), &zd))?);
            }
        }
        if !pair.component_reps().is_empty() {
            let ad = alg.ad_matrix(&d)?;
            for rep in pair.component_reps() {
                let defect = rep.mul(&ad)?.sub(&ad.mul(rep)?)?;
                for j in 0..n {
                    conditions.extend(k.residual(&defect.column(j))?);
                }
            }
        }
        columns.push(conditions);
    }
    let rows = columns.first().map_or(0, |c| c.len());
    if rows == 0 {
        return Ok(Subspace::full(n));
    }
    Ok(ExactMatrix::from_columns(rows, &columns)?.kernel_basis())
}
