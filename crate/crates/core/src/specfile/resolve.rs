//! Builds algebras, subalgebras, operators and pairs from a parsed document.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use super::{OperatorForm, Span, SpecDocument, SpecMatrix};
use crate::exact::{ArithError, ExactMatrix, GaussianRational, Rational, Subspace};
use crate::lie::{make_subalgebra, LieAlgebra, LieError, Subalgebra};
use crate::operators::{
    operator_ad, operator_from_rules, operator_left_mult, operator_right_mult, operator_sandwich, Connectivity,
    HomogeneousPair, LinearOperator, OperatorError,
};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A document item that parses but does not define a valid object.
#[derive(Debug, Error)]
#[error("{span}: `{item}`: {source}")]
pub struct ResolveError {
    pub item: String,
    pub span: Span,
    #[source]
    pub source: BuildError,
}

#[derive(Clone, Debug, Default)]
pub struct ResolvedSpec {
    pub algebras: BTreeMap<String, Arc<LieAlgebra>>,
    pub subalgebras: BTreeMap<String, Subalgebra>,
    pub complements: BTreeMap<String, Subspace<Rational>>,
    pub operators: BTreeMap<String, LinearOperator>,
    pub pairs: BTreeMap<String, HomogeneousPair>,
}

fn to_matrix(rows: &SpecMatrix) -> Result<ExactMatrix<GaussianRational>, ArithError> {
    ExactMatrix::from_rows(rows.first().map_or(0, |r| r.len()), rows)
}

/// Builds every item, stopping at the first invalid one.
pub fn resolve(doc: &SpecDocument) -> Result<ResolvedSpec, ResolveError> {
    let fail = |name: &String| {
        let item = name.clone();
        let span = doc.span_of(name);
        move |e: BuildError| ResolveError { item, span, source: e }
    };
    let mut out = ResolvedSpec::default();
    for (name, a) in &doc.algebras {
        let entries = a.brackets.iter().map(|(&(i, j), v)| (i, j, v.clone()));
        let alg = LieAlgebra::from_bracket_table(name.clone(), a.basis.clone(), entries)
            .map_err(|e| fail(name)(e.into()))?;
        out.algebras.insert(name.clone(), Arc::new(alg));
    }
    for (name, m) in &doc.matrix_algebras {
        let build = || -> Result<LieAlgebra, BuildError> {
            let labels = m.generators.iter().map(|(l, _)| l.clone()).collect();
            let gens = m.generators.iter().map(|(_, g)| to_matrix(g)).collect::<Result<_, _>>()?;
            Ok(LieAlgebra::from_matrix_generators(name.clone(), labels, m.size, gens)?)
        };
        out.algebras.insert(name.clone(), Arc::new(build().map_err(fail(name))?));
    }
    for (name, s) in &doc.subalgebras {
        let alg = &out.algebras[&s.algebra];
        let k = make_subalgebra(alg, &s.vectors).map_err(|e| fail(name)(e.into()))?;
        out.subalgebras.insert(name.clone(), k);
    }
    for (name, s) in &doc.complements {
        let dim = out.algebras[&s.algebra].dim();
        let m = Subspace::span(dim, &s.vectors).map_err(|e| fail(name)(e.into()))?;
        out.complements.insert(name.clone(), m);
    }
    for (name, op) in &doc.operators {
        let alg = &out.algebras[&op.algebra];
        let build = || -> Result<LinearOperator, BuildError> {
            Ok(match &op.form {
                OperatorForm::Rules(rules) => {
                    let labels = alg.labels();
                    let rules: Vec<(String, Vec<Rational>)> =
                        rules.iter().map(|(&i, v)| (labels[i].clone(), v.clone())).collect();
                    operator_from_rules(alg, &rules)?
                }
                OperatorForm::Ad(d) => operator_ad(alg, d)?,
                OperatorForm::Left(a) => operator_left_mult(alg, &to_matrix(a)?)?,
                OperatorForm::Right(b) => operator_right_mult(alg, &to_matrix(b)?)?,
                OperatorForm::Sandwich(a, b) => operator_sandwich(alg, &to_matrix(a)?, &to_matrix(b)?)?,
            })
        };
        out.operators.insert(name.clone(), build().map_err(fail(name))?);
    }
    for (name, p) in &doc.pairs {
        let build = || -> Result<HomogeneousPair, BuildError> {
            let k = out.subalgebras[&p.subalgebra].clone();
            let m = p.complement.as_ref().map(|c| out.complements[c].clone());
            let connectivity = if p.connected {
                Connectivity::Connected
            } else {
                let dim = k.parent().dim();
                let reps = p
                    .components
                    .iter()
                    .map(|rows| ExactMatrix::from_rows(dim, rows))
                    .collect::<Result<_, _>>()?;
                Connectivity::Disconnected { reps }
            };
            Ok(HomogeneousPair::new(name.clone(), k, m, connectivity)?)
        };
        let pair = build().map_err(fail(name))?;
        out.pairs.insert(name.clone(), pair);
    }
    Ok(out)
}

impl ResolvedSpec {
    /// The operators defined on the algebra of `pair`, by name.
    pub fn operators_on<'a>(&'a self, pair: &'a HomogeneousPair) -> impl Iterator<Item = (&'a String, &'a LinearOperator)> {
        self.operators
            .iter()
            .filter(move |(_, op)| Arc::ptr_eq(op.algebra(), pair.algebra()))
    }
}
