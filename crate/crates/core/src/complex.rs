//! Almost complex structures induced by operators `J` with
//! `Ran(J² + 1) ⊂ 𝔨`, the subspaces
//! `Z± = {v ∈ 𝔤^ℂ : (J ∓ i)v ∈ 𝔨^ℂ}` and the integrability test
//! "`Z₊` is closed under the bracket".

use thiserror::Error;

use crate::exact::{vector, ArithError, ExactMatrix, GaussianRational, Rational, Scalar, Subspace};
use crate::lie::{complexify_subspace, conjugate_subspace};
use crate::nijenhuis::{check_nijenhuis, NijenhuisError, TorsionReport};
use crate::operators::{check_admissible, HomogeneousPair, LinearOperator, OperatorError, VerdictReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Nijenhuis(#[from] NijenhuisError),
    #[error("operator is not admissible for the pair")]
    NotAdmissible(Box<VerdictReport>),
    #[error("J² + 1 maps basis element {basis} outside 𝔨 (image {value:?})")]
    NotACAdmissible { basis: usize, value: Vec<Rational> },
    #[error("split diagnostics need a complement 𝔪")]
    MissingComplement,
    #[error("operator is not a split almost complex structure: {0}")]
    NotSplitACAdmissible(SplitClause),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitClause {
    AnnihilatesSubalgebra,
    PreservesComplement,
    SquaresToMinusOneOnComplement,
}

impl std::fmt::Display for SplitClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SplitClause::AnnihilatesSubalgebra => "k ⊄ ker J",
            SplitClause::PreservesComplement => "J m ⊄ m",
            SplitClause::SquaresToMinusOneOnComplement => "J² ≠ -1 on m",
        })
    }
}

fn require_admissible(pair: &HomogeneousPair, j: &LinearOperator) -> Result<(), ComplexError> {
    let report = check_admissible(pair, j)?;
    if report.holds {
        Ok(())
    } else {
        Err(ComplexError::NotAdmissible(Box::new(report)))
    }
}

/// First basis vector `bⱼ` with `(J² + 1)bⱼ ∉ 𝔨`, with that image.
fn ac_defect(pair: &HomogeneousPair, j: &LinearOperator) -> Result<Option<(usize, Vec<Rational>)>, ArithError> {
    let square = j.matrix().mul(j.matrix())?;
    let n = j.dim();
    for b in 0..n {
        let mut value = square.column(b);
        value[b] = value[b].clone() + Rational::from_int(1);
        if !pair.k().contains(&value)? {
            return Ok(Some((b, value)));
        }
    }
    Ok(None)
}

/// `Ran(J² + 1) ⊂ 𝔨`, for an admissible `J`.
pub fn check_ac_admissible(pair: &HomogeneousPair, j: &LinearOperator) -> Result<bool, ComplexError> {
    require_admissible(pair, j)?;
    Ok(ac_defect(pair, j)?.is_none())
}

fn z_space(
    pair: &HomogeneousPair,
    j: &LinearOperator,
    eigenvalue: &GaussianRational,
) -> Result<Subspace<GaussianRational>, ArithError> {
    let n = j.dim();
    let shifted = j
        .complexified_matrix()
        .sub(&ExactMatrix::identity(n).scale(eigenvalue))?;
    let k_columns: Vec<Vec<GaussianRational>> = pair
        .k()
        .complexified()
        .basis_vectors()
        .iter()
        .map(|v| vector::neg(v))
        .collect();
    let system = if k_columns.is_empty() {
        shifted
    } else {
        shifted.hstack(&ExactMatrix::from_columns(n, &k_columns)?)?
    };
    let kernel = system.kernel_basis();
    let projected: Vec<Vec<GaussianRational>> =
        kernel.basis_vectors().into_iter().map(|v| v[..n].to_vec()).collect();
    Subspace::span(n, &projected)
}

/// `(Z₊, Z₋)` as exact subspaces of `𝔤^ℂ`.
pub fn compute_z_spaces(
    pair: &HomogeneousPair,
    j: &LinearOperator,
) -> Result<(Subspace<GaussianRational>, Subspace<GaussianRational>), ComplexError> {
    pair.check_operator(j)?;
    let i = GaussianRational::i();
    Ok((z_space(pair, j, &i)?, z_space(pair, j, &-i)?))
}

/// A pair of `Z₊` basis vectors whose bracket leaves `Z₊`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub x: Vec<GaussianRational>,
    pub y: Vec<GaussianRational>,
    pub bracket: Vec<GaussianRational>,
}

fn closure_witness(
    pair: &HomogeneousPair,
    z: &Subspace<GaussianRational>,
) -> Result<Option<ClosureWitness>, ArithError> {
    let alg = pair.algebra();
    let basis = z.basis_vectors();
    for (a, x) in basis.iter().enumerate() {
        for y in &basis[a + 1..] {
            let bracket = alg.bracket(x, y)?;
            if !z.contains(&bracket)? {
                return Ok(Some(ClosureWitness {
                    x: x.clone(),
                    y: y.clone(),
                    bracket,
                }));
            }
        }
    }
    Ok(None)
}

/// The three decompositions available when `𝔤 = 𝔨 ⊕ 𝔪` and `J` is split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDiagnostics {
    /// `Z₊ + Z₋ = 𝔤^ℂ`.
    pub sum_is_all: bool,
    /// `Z₊ ∩ Z₋ = 𝔨^ℂ`.
    pub intersection_is_kc: bool,
    /// `Z± = 𝔨^ℂ ⊕ Eig±i`, with `Eig±i` the `±i`-eigenspaces of `J` on `𝔪^ℂ`.
    pub eigenspace_decomposition_holds: bool,
}

impl SplitDiagnostics {
    pub fn all_hold(&self) -> bool {
        self.sum_is_all && self.intersection_is_kc && self.eigenspace_decomposition_holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub ac_admissible: bool,
    pub z_plus: Subspace<GaussianRational>,
    pub z_minus: Subspace<GaussianRational>,
    /// Representatives of `Z₊ / 𝔨^ℂ`.
    pub z_plus_mod_k: Subspace<GaussianRational>,
    pub z_plus_closed: bool,
    pub z_minus_closed: bool,
    pub nijenhuis: TorsionReport,
    /// Closure of `Z₊` and the Nijenhuis verdict coincide.
    pub verdicts_agree: bool,
    pub witness: Option<ClosureWitness>,
    /// Present when the pair has a complement and `J` is split.
    pub split_diagnostics: Option<SplitDiagnostics>,
}

impl IntegrabilityReport {
    pub fn integrable(&self) -> bool {
        self.z_plus_closed
    }
}

/// Integrability of the almost complex structure induced by `J`.
pub fn check_integrable(pair: &HomogeneousPair, j: &LinearOperator) -> Result<IntegrabilityReport, ComplexError> {
    require_admissible(pair, j)?;
    if let Some((basis, value)) = ac_defect(pair, j)? {
        return Err(ComplexError::NotACAdmissible { basis, value });
    }
    let (z_plus, z_minus) = compute_z_spaces(pair, j)?;
    let kc = pair.k().complexified();
    let witness = closure_witness(pair, &z_plus)?;
    let z_plus_closed = witness.is_none();
    let z_minus_closed = closure_witness(pair, &z_minus)?.is_none();
    let nijenhuis = check_nijenhuis(pair, j)?;
    let split = if pair.m().is_some() {
        match split_diagnostics(pair, j) {
            Ok(d) => Some(d),
            Err(ComplexError::NotSplitACAdmissible(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(IntegrabilityReport {
        ac_admissible: true,
        z_plus_mod_k: z_plus.quotient_representatives(&kc)?,
        verdicts_agree: z_plus_closed == nijenhuis.holds,
        z_plus,
        z_minus,
        z_plus_closed,
        z_minus_closed,
        nijenhuis,
        witness,
        split_diagnostics: split,
    })
}

/// Checks `Z₊ + Z₋ = 𝔤^ℂ`, `Z₊ ∩ Z₋ = 𝔨^ℂ` and `Z± = 𝔨^ℂ ⊕ Eig±i` for a
/// split `J`: `𝔨 ⊂ ker J`, `J𝔪 ⊂ 𝔪`, `J² = −1` on `𝔪`.
pub fn split_diagnostics(pair: &HomogeneousPair, j: &LinearOperator) -> Result<SplitDiagnostics, ComplexError> {
    let m = pair.m().ok_or(ComplexError::MissingComplement)?;
    require_admissible(pair, j)?;
    for z in pair.k().space().basis_vectors() {
        if !vector::is_zero(&j.apply(&z)?) {
            return Err(ComplexError::NotSplitACAdmissible(SplitClause::AnnihilatesSubalgebra));
        }
    }
    for x in m.basis_vectors() {
        let jx = j.apply(&x)?;
        if !m.contains(&jx)? {
            return Err(ComplexError::NotSplitACAdmissible(SplitClause::PreservesComplement));
        }
        if j.apply(&jx)? != vector::neg(&x) {
            return Err(ComplexError::NotSplitACAdmissible(
                SplitClause::SquaresToMinusOneOnComplement,
            ));
        }
    }

    let n = j.dim();
    let (z_plus, z_minus) = compute_z_spaces(pair, j)?;
    let kc = pair.k().complexified();
    let mc = complexify_subspace(m);
    let full = Subspace::full(n);
    let i = GaussianRational::i();
    let jc = j.complexified_matrix();
    let eigenspace = |lambda: &GaussianRational| -> Result<Subspace<GaussianRational>, ArithError> {
        jc.sub(&ExactMatrix::identity(n).scale(lambda))?
            .kernel_basis()
            .intersection(&mc)
    };
    let mut decomposition = true;
    for (z, lambda) in [(&z_plus, i.clone()), (&z_minus, -i.clone())] {
        let eig = eigenspace(&lambda)?;
        decomposition &= kc.intersection(&eig)?.dim() == 0 && kc.sum(&eig)? == *z;
    }
    Ok(SplitDiagnostics {
        sum_is_all: z_plus.sum(&z_minus)? == full,
        intersection_is_kc: z_plus.intersection(&z_minus)? == kc,
        eigenspace_decomposition_holds: decomposition,
    })
}

/// `conj(Z₊) = Z₋`.
pub fn conjugation_swaps(z_plus: &Subspace<GaussianRational>, z_minus: &Subspace<GaussianRational>) -> bool {
    conjugate_subspace(z_plus) == *z_minus
}
