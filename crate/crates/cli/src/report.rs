//! JSON and text renderings of verdicts.
//!
//! Exact scalars are written as strings (`"-3/2"`, `"1/2+1/4i"`), floats as
//! JSON numbers with 17 significant digits.

use serde_json::{json, Map, Number, Value};

use homtorsion::complex::{IntegrabilityReport, SplitDiagnostics};
use homtorsion::exact::{GaussianRational, Scalar, Subspace};
use homtorsion::harness::{HarnessReport, RelationReport};
use homtorsion::lie::format_combination;
use homtorsion::nijenhuis::TorsionReport;
use homtorsion::operators::{AdmissibilityWitness, Scope, VerdictReport};

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    format!("{x:.16e}").parse::<Number>().map_or(Value::Null, Value::Number)
}

pub fn floats(xs: impl IntoIterator<Item = f64>) -> Value {
    Value::Array(xs.into_iter().map(float).collect())
}

/// A vector in label form and as raw coordinates.
pub fn vector<F: Scalar + std::fmt::Display>(labels: &[String], v: &[F]) -> Value {
    json!({
        "labels": format_combination(labels, v),
        "coordinates": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

pub fn basis(labels: &[String], s: &Subspace<GaussianRational>) -> Value {
    Value::Array(s.basis_vectors().iter().map(|v| vector(labels, v)).collect())
}

pub fn scope(s: Scope) -> &'static str {
    match s {
        Scope::Full => "full",
        Scope::IdentityComponent => "identity-component",
    }
}

pub fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

pub fn admissibility_witness(labels: &[String], w: &AdmissibilityWitness) -> Value {
    match w {
        AdmissibilityWitness::Vector { v, image } => json!({
            "kind": "vector",
            "vector": vector(labels, v),
            "image": vector(labels, image),
        }),
        AdmissibilityWitness::BasisPair { z, basis, value } => json!({
            "kind": "basis-pair",
            "z": vector(labels, z),
            "basis": labels[*basis],
            "value": vector(labels, value),
        }),
        AdmissibilityWitness::ComponentRep { rep, basis, value } => json!({
            "kind": "component-representative",
            "representative": rep,
            "basis": labels[*basis],
            "value": vector(labels, value),
        }),
    }
}

pub fn admissibility(r: &VerdictReport) -> Value {
    json!({
        "holds": r.holds,
        "scope": scope(r.scope),
        "clauses": r.clauses.iter().map(|c| json!({
            "clause": c.clause.describe(),
            "holds": c.holds,
        })).collect::<Vec<_>>(),
        "failed_clause": r.failed_clause().map(|c| c.describe()),
    })
}

pub fn admissibility_text(labels: &[String], r: &VerdictReport) -> String {
    let mut out = String::new();
    for c in &r.clauses {
        out.push_str(&format!("  [{}] {}\n", if c.holds { "ok" } else { "FAIL" }, c.clause.describe()));
    }
    if let Some(w) = &r.witness {
        out.push_str(&format!("  witness: {}\n", admissibility_witness_text(labels, w)));
    }
    out
}

fn admissibility_witness_text(labels: &[String], w: &AdmissibilityWitness) -> String {
    match w {
        AdmissibilityWitness::Vector { v, image } => {
            format!("{} ↦ {}", format_combination(labels, v), format_combination(labels, image))
        }
        AdmissibilityWitness::BasisPair { z, basis, value } => format!(
            "z = {}, basis {}: {}",
            format_combination(labels, z),
            labels[*basis],
            format_combination(labels, value)
        ),
        AdmissibilityWitness::ComponentRep { rep, basis, value } => format!(
            "component representative {rep}, basis {}: {}",
            labels[*basis],
            format_combination(labels, value)
        ),
    }
}

pub fn torsion_witnesses(labels: &[String], r: &TorsionReport) -> Vec<Value> {
    r.witness
        .iter()
        .map(|w| {
            json!({
                "kind": "torsion",
                "v": vector(labels, &w.v),
                "w": vector(labels, &w.w),
                "beta": vector(labels, &w.value),
            })
        })
        .collect()
}

pub fn torsion(r: &TorsionReport) -> Value {
    json!({
        "holds": r.holds,
        "mode": r.mode.as_str(),
        "scope": scope(r.scope),
        "checked_pairs": r.checked_pairs,
    })
}

pub fn torsion_text(labels: &[String], r: &TorsionReport) -> String {
    let mut out = format!(
        "Nijenhuis: {} ({} mode, {} pairs checked, scope {})\n",
        verdict(r.holds),
        r.mode.as_str(),
        r.checked_pairs,
        scope(r.scope)
    );
    if let Some(w) = &r.witness {
        out.push_str(&format!(
            "  witness: β({}, {}) = {} ∉ 𝔨\n",
            format_combination(labels, &w.v),
            format_combination(labels, &w.w),
            format_combination(labels, &w.value)
        ));
    }
    out
}

fn split(d: &SplitDiagnostics) -> Value {
    json!({
        "sum_is_all": d.sum_is_all,
        "intersection_is_kc": d.intersection_is_kc,
        "eigenspace_decomposition_holds": d.eigenspace_decomposition_holds,
    })
}

pub fn integrability(labels: &[String], r: &IntegrabilityReport) -> Value {
    json!({
        "integrable": r.integrable(),
        "z_plus_closed": r.z_plus_closed,
        "z_minus_closed": r.z_minus_closed,
        "nijenhuis": torsion(&r.nijenhuis),
        "verdicts_agree": r.verdicts_agree,
        "z_plus_basis": basis(labels, &r.z_plus),
        "z_plus_mod_k_basis": basis(labels, &r.z_plus_mod_k),
        "z_minus_basis": basis(labels, &r.z_minus),
        "split_diagnostics": r.split_diagnostics.as_ref().map(split),
    })
}

pub fn closure_witnesses(labels: &[String], r: &IntegrabilityReport) -> Vec<Value> {
    r.witness
        .iter()
        .map(|w| {
            json!({
                "kind": "closure",
                "x": vector(labels, &w.x),
                "y": vector(labels, &w.y),
                "bracket": vector(labels, &w.bracket),
            })
        })
        .collect()
}

pub fn integrability_text(labels: &[String], r: &IntegrabilityReport) -> String {
    let list = |s: &Subspace<GaussianRational>| {
        let v: Vec<String> = s.basis_vectors().iter().map(|b| format_combination(labels, b)).collect();
        format!("span{{{}}}", v.join(", "))
    };
    let mut out = format!(
        "integrable: {}\n  dim Z₊ = {}: {}\n  Z₊ mod 𝔨^ℂ (dim {}): {}\n  Z₋ closed: {}\n  Nijenhuis cross-check: {} ({})\n",
        r.integrable(),
        r.z_plus.dim(),
        list(&r.z_plus),
        r.z_plus_mod_k.dim(),
        list(&r.z_plus_mod_k),
        r.z_minus_closed,
        verdict(r.nijenhuis.holds),
        if r.verdicts_agree { "agrees" } else { "DISAGREES" },
    );
    if let Some(w) = &r.witness {
        out.push_str(&format!(
            "  witness: [{}, {}] = {} ∉ Z₊\n",
            format_combination(labels, &w.x),
            format_combination(labels, &w.y),
            format_combination(labels, &w.bracket)
        ));
    }
    if let Some(d) = &r.split_diagnostics {
        out.push_str(&format!(
            "  split: Z₊ + Z₋ = 𝔤^ℂ: {}, Z₊ ∩ Z₋ = 𝔨^ℂ: {}, Z± = 𝔨^ℂ ⊕ Eig±i: {}\n",
            d.sum_is_all, d.intersection_is_kc, d.eigenspace_decomposition_holds
        ));
    }
    out
}

fn matrix_entries(m: &nalgebra::DMatrix<f64>) -> Value {
    floats(m.iter().copied())
}

fn relations(r: &RelationReport) -> Value {
    let mut out = Map::new();
    out.insert("alpha_related_residual".into(), float(r.alpha_related));
    out.insert("representative_independence_residual".into(), float(r.representative_independence));
    if let Some(d) = &r.translation_demo {
        out.insert(
            "translation_demo".into(),
            json!({ "g_field_at_base": matrix_entries(&d.translated), "field_at_g_base": matrix_entries(&d.evaluated) }),
        );
    }
    if let Some(d) = &r.operator_demo {
        out.insert(
            "operator_demo".into(),
            json!({
                "theta": float(d.theta),
                "bundle_map_of_field": matrix_entries(&d.bundle_value),
                "field_of_image": matrix_entries(&d.field_of_image),
            }),
        );
    }
    Value::Object(out)
}

pub fn harness(r: &HarnessReport) -> Value {
    json!({
        "model": r.kind.as_str(),
        "samples": r.samples.len(),
        "step": float(r.config.step),
        "theta": float(r.config.theta),
        "max_deviation": float(r.max_deviation),
        "max_numerical_torsion": float(r.max_numerical_torsion),
        "nijenhuis_exact": r.nijenhuis_exact,
        "max_pirel_residual": float(r.max_pirel_residual),
        "convergence_ratio": float(r.convergence_ratio),
        "relations": relations(&r.relations),
        "failures": r.failures,
    })
}

pub fn harness_text(r: &HarnessReport) -> String {
    let mut out = format!(
        "harness on {} model: {} samples, seed {}, h = {:e}\n  max |numerical − predicted| = {:.3e}\n  max |numerical torsion| = {:.3e} (exact verdict: {})\n  max projected-bracket residual = {:.3e}\n  convergence ratio = {:.4}\n  α-relatedness residual = {:.3e}, representative dependence = {:.3e}\n",
        r.kind.as_str(),
        r.samples.len(),
        r.config.seed,
        r.config.step,
        r.max_deviation,
        r.max_numerical_torsion,
        verdict(r.nijenhuis_exact),
        r.max_pirel_residual,
        r.convergence_ratio,
        r.relations.alpha_related,
        r.relations.representative_independence,
    );
    let col = |m: &nalgebra::DMatrix<f64>| {
        let v: Vec<String> = m.iter().map(|x| format!("{x:.6}")).collect();
        format!("({})", v.join(", "))
    };
    if let Some(d) = &r.relations.translation_demo {
        out.push_str(&format!("  g·X̃(p₀) = {}, X̃(g·p₀) = {}\n", col(&d.translated), col(&d.evaluated)));
    }
    if let Some(d) = &r.relations.operator_demo {
        out.push_str(&format!(
            "  θ = {}: (N X̃ᵛ)(g·p₀) = {}, X̃^(Iv)(g·p₀) = {}\n",
            d.theta,
            col(&d.bundle_value),
            col(&d.field_of_image)
        ));
    }
    for f in &r.failures {
        out.push_str(&format!("  FAIL: {f}\n"));
    }
    out
}
