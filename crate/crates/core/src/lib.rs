//! Exact checks for homogeneous bundle maps on homogeneous spaces `G/K`.
//!
//! Given a Lie algebra `𝔤` (structure constants over ℚ), a subalgebra `𝔨` and
//! a linear operator `I` on `𝔤`, this crate decides
//!
//! * whether `I` is admissible, i.e. descends to a homogeneous bundle map `N`
//!   on `G/K` ([`operators::check_admissible`]);
//! * whether `N` is a Nijenhuis operator, via the algebraic torsion form
//!   `β(v,w) = I[v,Iw] + I[Iv,w] − [Iv,Iw] − I²[v,w]` taking values in `𝔨`
//!   ([`nijenhuis::check_nijenhuis`]);
//! * whether an induced almost complex structure is integrable, via
//!   bracket-closure of `Z₊ = {v ∈ 𝔤^ℂ : (J − i)v ∈ 𝔨^ℂ}`
//!   ([`complex::check_integrable`]).
//!
//! All verdicts are computed in exact rational / Gaussian-rational arithmetic.
//! The [`harness`] module is the one floating-point part: it realizes matrix
//! homogeneous spaces concretely and compares the algebraic torsion with
//! torsion computed from finite-difference Lie brackets of vector fields.

pub mod complex;
pub mod examples;
pub mod exact;
pub mod harness;
pub mod lie;
pub mod nijenhuis;
pub mod operators;
pub mod specfile;

pub use complex::{check_ac_admissible, check_integrable, compute_z_spaces, IntegrabilityReport};
pub use exact::{ExactMatrix, GaussianRational, Rational, Scalar, Subspace};
pub use lie::{ComplexifiedAlgebra, LieAlgebra, Subalgebra};
pub use nijenhuis::{check_nijenhuis, check_nijenhuis_ad, torsion_form, TorsionReport};
pub use operators::{check_admissible, HomogeneousPair, LinearOperator, VerdictReport};
pub use specfile::{parse, resolve, serialize, ResolvedSpec, SpecDocument, SpecError};
