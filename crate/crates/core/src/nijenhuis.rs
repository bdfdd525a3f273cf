//! The torsion form `β(v,w) = I[v,Iw] + I[Iv,w] − [Iv,Iw] − I²[v,w]` and the
//! Nijenhuis verdict: the bundle map induced by an admissible `I` has
//! vanishing torsion iff `β` takes values in `𝔨`.

use thiserror::Error;

use crate::exact::{vector, ArithError, Rational, Scalar};
use crate::operators::{
    check_ad_admissible, check_admissible, HomogeneousPair, LinearOperator, OperatorError, Scope,
    VerdictReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NijenhuisError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("operator is not admissible for the pair")]
    NotAdmissible(Box<VerdictReport>),
    #[error("complement-pair mode needs a complement 𝔪")]
    MissingComplement,
}

/// `β(v, w)` for real or complex coordinate vectors.
pub fn torsion_form<F: Scalar>(op: &LinearOperator, v: &[F], w: &[F]) -> Result<Vec<F>, ArithError> {
    let alg = op.algebra();
    let iv = op.apply(v)?;
    let iw = op.apply(w)?;
    let a = op.apply_raw(&alg.bracket(v, &iw)?);
    let b = op.apply_raw(&alg.bracket_raw(&iv, w));
    let c = alg.bracket_raw(&iv, &iw);
    let d = op.apply_raw(&op.apply_raw(&alg.bracket_raw(v, w)));
    Ok(vector::sub(&vector::sub(&vector::add(&a, &b), &c), &d))
}

/// Which basis pairs were examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionMode {
    /// All pairs `bᵢ, bⱼ` with `i < j`.
    AllPairs,
    /// Pairs of basis vectors of the complement 𝔪 only.
    ComplementPairs,
    /// `ad_d` operators, using `β(v,w) = −[[d,v],[d,w]]`.
    AdSpecialized,
}

impl TorsionMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            TorsionMode::AllPairs => "all-pairs",
            TorsionMode::ComplementPairs => "complement-pairs",
            TorsionMode::AdSpecialized => "ad-specialized",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub v: Vec<Rational>,
    pub w: Vec<Rational>,
    /// `β(v, w)`, which lies outside `𝔨`.
    pub value: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub holds: bool,
    pub checked_pairs: usize,
    pub witness: Option<TorsionWitness>,
    pub mode: TorsionMode,
    pub scope: Scope,
}

fn require_admissible(report: VerdictReport) -> Result<Scope, NijenhuisError> {
    if report.holds {
        Ok(report.scope)
    } else {
        Err(NijenhuisError::NotAdmissible(Box::new(report)))
    }
}

fn scan_pairs(
    pair: &HomogeneousPair,
    vectors: &[Vec<Rational>],
    mode: TorsionMode,
    scope: Scope,
    beta: impl Fn(usize, usize) -> Vec<Rational>,
) -> Result<TorsionReport, NijenhuisError> {
    let k = pair.k();
    let mut checked_pairs = 0;
    for (a, v) in vectors.iter().enumerate() {
        for (b, w) in vectors.iter().enumerate().skip(a + 1) {
            checked_pairs += 1;
            let value = beta(a, b);
            if !k.contains(&value)? {
                return Ok(TorsionReport {
                    holds: false,
                    checked_pairs,
                    witness: Some(TorsionWitness {
                        v: v.clone(),
                        w: w.clone(),
                        value,
                    }),
                    mode,
                    scope,
                });
            }
        }
    }
    Ok(TorsionReport {
        holds: true,
        checked_pairs,
        witness: None,
        mode,
        scope,
    })
}

/// Nijenhuis verdict for an admissible operator. Uses complement pairs when
/// the pair carries a complement, all basis pairs otherwise.
pub fn check_nijenhuis(pair: &HomogeneousPair, op: &LinearOperator) -> Result<TorsionReport, NijenhuisError> {
    let mode = if pair.m().is_some() {
        TorsionMode::ComplementPairs
    } else {
        TorsionMode::AllPairs
    };
    check_nijenhuis_with_mode(pair, op, mode)
}

/// Nijenhuis verdict over an explicit choice of basis pairs. For
/// [`TorsionMode::AdSpecialized`] use [`check_nijenhuis_ad`].
pub fn check_nijenhuis_with_mode(
    pair: &HomogeneousPair,
    op: &LinearOperator,
    mode: TorsionMode,
) -> Result<TorsionReport, NijenhuisError> {
    let scope = require_admissible(check_admissible(pair, op)?)?;
    let n = pair.algebra().dim();
    let vectors = match mode {
        TorsionMode::AllPairs | TorsionMode::AdSpecialized => {
            (0..n).map(|i| vector::unit(n, i)).collect::<Vec<_>>()
        }
        TorsionMode::ComplementPairs => pair
            .m()
            .ok_or(NijenhuisError::MissingComplement)?
            .basis_vectors(),
    };
    let mode = if mode == TorsionMode::AdSpecialized {
        TorsionMode::AllPairs
    } else {
        mode
    };
    scan_pairs(pair, &vectors, mode, scope, |a, b| {
        torsion_form(op, &vectors[a], &vectors[b]).expect("vectors have the algebra's dimension")
    })
}

/// Nijenhuis verdict for `ad_d`: holds iff `[[d,bᵢ],[d,bⱼ]] ∈ 𝔨` for all
/// basis pairs. The witness value is `β(v,w) = −[[d,v],[d,w]]`.
pub fn check_nijenhuis_ad(pair: &HomogeneousPair, d: &[Rational]) -> Result<TorsionReport, NijenhuisError> {
    let scope = require_admissible(check_ad_admissible(pair, d)?)?;
    let alg = pair.algebra();
    let n = alg.dim();
    let images: Vec<Vec<Rational>> = (0..n)
        .map(|i| alg.bracket_raw(d, &vector::unit(n, i)))
        .collect();
    let units: Vec<Vec<Rational>> = (0..n).map(|i| vector::unit(n, i)).collect();
    scan_pairs(pair, &units, TorsionMode::AdSpecialized, scope, |a, b| {
        vector::neg(&alg.bracket_raw(&images[a], &images[b]))
    })
}

/// `β(z, w) ∈ 𝔨` for `z ∈ 𝔨`. Always true for admissible `I`; pairs
/// involving `𝔨` therefore never need checking.
pub fn corollary_oneof_property(
    pair: &HomogeneousPair,
    op: &LinearOperator,
    z: &[Rational],
    w: &[Rational],
) -> Result<bool, ArithError> {
    debug_assert!(pair.k().contains(z).unwrap_or(false), "z must lie in 𝔨");
    pair.k().contains(&torsion_form(op, z, w)?)
}
