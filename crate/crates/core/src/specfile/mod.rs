//! The `.lie` input format: algebras, subalgebras, complements, operators
//! and pairs.
//!
//! ```text
//! algebra so3 { basis k0 e1 e2; bracket [k0,e1] = -1*e2; bracket [k0,e2] = e1; bracket [e1,e2] = -1*k0; }
//! subalgebra k of so3 = span(k0);
//! operator I on so3 = ad(k0);
//! pair sphere = (so3, k, connected = true);
//! ```
//!
//! Parsing resolves every name and basis label; [`resolve`] then builds the
//! algebraic objects. [`serialize`] emits a canonical form that parses back
//! to an equal document.

mod lexer;
mod parser;
pub mod resolve;
mod serialize;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact::{GaussianRational, Rational};

pub use parser::parse;
pub use resolve::{resolve, ResolveError, ResolvedSpec};
pub use serialize::serialize;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    BadScalar,
    DuplicateName,
    UnresolvedReference,
    InconsistentBracket,
    ShapeMismatch,
}

impl ErrorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::BadScalar => "bad scalar",
            ErrorKind::DuplicateName => "duplicate name",
            ErrorKind::UnresolvedReference => "unresolved reference",
            ErrorKind::InconsistentBracket => "inconsistent bracket",
            ErrorKind::ShapeMismatch => "shape mismatch",
        }
    }
}

/// A parse diagnostic.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{span}: {}: {message} (found {found}{})", kind.as_str(), expected_suffix(expected))]
pub struct SpecError {
    pub kind: ErrorKind,
    pub span: Span,
    pub found: String,
    pub expected: Vec<String>,
    pub message: String,
}

fn expected_suffix(expected: &[String]) -> String {
    match expected {
        [] => String::new(),
        [one] => format!(", expected {one}"),
        many => format!(", expected one of {}", many.join(", ")),
    }
}

impl SpecError {
    pub(crate) fn new(kind: ErrorKind, span: Span, found: String, expected: Vec<String>, message: impl Into<String>) -> Self {
        Self {
            kind,
            span,
            found,
            expected,
            message: message.into(),
        }
    }
}

/// Rows of a square matrix.
pub type SpecMatrix = Vec<Vec<GaussianRational>>;

/// An algebra given by basis labels and brackets `[bᵢ, bⱼ]`, `i < j`, with
/// zero brackets omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketAlgebraDef {
    pub basis: Vec<String>,
    pub brackets: BTreeMap<(usize, usize), Vec<Rational>>,
}

/// An algebra spanned by square matrices of size `size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebraDef {
    pub size: usize,
    pub generators: Vec<(String, SpecMatrix)>,
}

/// A subspace given by spanning vectors in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanDef {
    pub algebra: String,
    pub vectors: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorForm {
    /// Image of each basis element, by basis index.
    Rules(BTreeMap<usize, Vec<Rational>>),
    Ad(Vec<Rational>),
    Left(SpecMatrix),
    Right(SpecMatrix),
    Sandwich(SpecMatrix, SpecMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorDef {
    pub algebra: String,
    pub form: OperatorForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDef {
    pub algebra: String,
    pub subalgebra: String,
    pub complement: Option<String>,
    pub connected: bool,
    /// Matrices of `Ad_k` for representatives of the non-identity
    /// components, in basis coordinates.
    pub components: Vec<Vec<Vec<Rational>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ItemKind {
    Algebra,
    MatrixAlgebra,
    Subalgebra,
    Complement,
    Operator,
    Pair,
}

impl ItemKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            ItemKind::Algebra => "algebra",
            ItemKind::MatrixAlgebra => "matrix_algebra",
            ItemKind::Subalgebra => "subalgebra",
            ItemKind::Complement => "complement",
            ItemKind::Operator => "operator",
            ItemKind::Pair => "pair",
        }
    }
}

/// A parsed document. All item names share one namespace. Equality ignores
/// source positions.
#[derive(Clone, Debug, Default)]
pub struct SpecDocument {
    pub algebras: BTreeMap<String, BracketAlgebraDef>,
    pub matrix_algebras: BTreeMap<String, MatrixAlgebraDef>,
    pub subalgebras: BTreeMap<String, SpanDef>,
    pub complements: BTreeMap<String, SpanDef>,
    pub operators: BTreeMap<String, OperatorDef>,
    pub pairs: BTreeMap<String, PairDef>,
    /// Position of each item's name.
    pub spans: BTreeMap<String, Span>,
}

impl PartialEq for SpecDocument {
    fn eq(&self, other: &Self) -> bool {
        self.algebras == other.algebras
            && self.matrix_algebras == other.matrix_algebras
            && self.subalgebras == other.subalgebras
            && self.complements == other.complements
            && self.operators == other.operators
            && self.pairs == other.pairs
    }
}

impl SpecDocument {
    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Basis labels of an algebra of either form.
    pub fn labels(&self, algebra: &str) -> Option<Vec<String>> {
        if let Some(a) = self.algebras.get(algebra) {
            return Some(a.basis.clone());
        }
        self.matrix_algebras
            .get(algebra)
            .map(|m| m.generators.iter().map(|(l, _)| l.clone()).collect())
    }

    pub fn kind_of(&self, name: &str) -> Option<ItemKind> {
        if self.algebras.contains_key(name) {
            Some(ItemKind::Algebra)
        } else if self.matrix_algebras.contains_key(name) {
            Some(ItemKind::MatrixAlgebra)
        } else if self.subalgebras.contains_key(name) {
            Some(ItemKind::Subalgebra)
        } else if self.complements.contains_key(name) {
            Some(ItemKind::Complement)
        } else if self.operators.contains_key(name) {
            Some(ItemKind::Operator)
        } else if self.pairs.contains_key(name) {
            Some(ItemKind::Pair)
        } else {
            None
        }
    }

    pub fn span_of(&self, name: &str) -> Span {
        self.spans.get(name).copied().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    const SPHERE: &str = "algebra so3 { basis k0 e1 e2; bracket [k0,e1] = -1*e2; bracket [k0,e2] = e1; bracket [e1,e2] = -1*k0; }
subalgebra k of so3 = span(k0);
operator I on so3 = ad(k0);
pair sphere = (so3, k, connected = true);
";

    #[test]
    fn canonical_example() {
        let doc = parse(SPHERE).unwrap();
        assert_eq!((doc.algebras.len(), doc.subalgebras.len(), doc.operators.len(), doc.pairs.len()), (1, 1, 1, 1));
        assert_eq!(doc.algebras["so3"].brackets[&(0, 1)], vec![rat(0, 1), rat(0, 1), rat(-1, 1)]);
        assert_eq!(serialize(&doc), SPHERE);
        assert_eq!(doc.span_of("sphere"), Span { line: 4, col: 6 });
    }

    #[test]
    fn empty_document() {
        let doc = parse("  # nothing\n").unwrap();
        assert!(doc.is_empty());
        assert_eq!(serialize(&doc), "");
    }

    #[test]
    fn brackets_are_normalized() {
        let doc = parse("algebra g { basis a b c; bracket [b,a] = c; bracket [a,b] = -1*c; bracket [c,c] = 0; bracket [a,c] = 2/4*a - 1/2*a; }").unwrap();
        let g = &doc.algebras["g"];
        assert_eq!(g.brackets.len(), 1);
        assert_eq!(g.brackets[&(0, 1)], vec![rat(0, 1), rat(0, 1), rat(-1, 1)]);
        assert_eq!(serialize(&doc), "algebra g { basis a b c; bracket [a,b] = -1*c; }\n");
    }

    #[test]
    fn scalars_are_canonical() {
        let doc = parse("algebra g { basis x y; bracket [x,y] = 2/4*x; }").unwrap();
        assert!(serialize(&doc).contains("= 1/2*x;"));
        let doc = parse("matrix_algebra m dim = 1 { gen h = [[0+1i]]; gen z = [[2/4-0i]]; }").unwrap();
        assert_eq!(serialize(&doc), "matrix_algebra m dim = 1 { gen h = [[1i]]; gen z = [[1/2]]; }\n");
    }

    fn err(text: &str) -> SpecError {
        parse(text).unwrap_err()
    }

    #[test]
    fn diagnostics() {
        let e = err("algebra g { basis k0 e1 e2;\n  bracket [k0,e1] = -e2;\n  bracket [e1,k0] = -e2;\n}");
        assert_eq!((e.kind, e.span), (ErrorKind::InconsistentBracket, Span { line: 3, col: 3 }));

        let e = err("algebra g { basis x y; }\nsubalgebra k of h = span(x);");
        assert_eq!((e.kind, e.span), (ErrorKind::UnresolvedReference, Span { line: 2, col: 17 }));
        let e = err("algebra g { basis x y; }\nsubalgebra k of g = span(x + z);");
        assert_eq!((e.kind, e.span), (ErrorKind::UnresolvedReference, Span { line: 2, col: 30 }));

        let e = err("algebra g { basis x y; bracket [x,y] = 1/0*x; }");
        assert_eq!((e.kind, e.span), (ErrorKind::BadScalar, Span { line: 1, col: 40 }));
        assert_eq!(e.found, "`1/0`");

        let e = err("algebra g { basis x; }\nalgebra g { basis y; }");
        assert_eq!((e.kind, e.span), (ErrorKind::DuplicateName, Span { line: 2, col: 9 }));
        let e = err("algebra g { basis x x; }");
        assert_eq!(e.kind, ErrorKind::DuplicateName);

        let e = err("algebra g { basis x y }");
        assert_eq!((e.kind, e.span), (ErrorKind::Syntax, Span { line: 1, col: 23 }));
        assert_eq!(e.expected, vec!["`;`".to_string()]);
        assert_eq!(e.found, "`}`");

        let e = err("matrix_algebra m dim = 2 { gen a = [[1, 0], [0]]; }");
        assert_eq!(e.kind, ErrorKind::ShapeMismatch);
        let e = err("frobnicate");
        assert_eq!(e.expected.len(), 6);
        let e = err("algebra g { basis x; }\nalgebra h { basis y; }\nsubalgebra k of g = span(x);\npair p = (h, k);");
        assert_eq!((e.kind, e.span), (ErrorKind::UnresolvedReference, Span { line: 4, col: 14 }));
    }

    #[test]
    fn error_message_mentions_position() {
        let e = err("algebra g { basis x y }");
        assert_eq!(e.to_string(), "1:23: syntax error: unexpected token (found `}`, expected `;`)");
    }

    #[test]
    fn operator_and_pair_forms() {
        let text = "algebra g { basis a b; bracket [a,b] = b; }
subalgebra k of g = span(0);
complement m of g = span(a, b);
operator J on g { b -> -1*a; a -> b; };
operator L on g = left([[1, 0], [0, 1]])
pair p = (g, k, complement m, connected = false, components = [[[1, 0], [0, 1]], [[1, 0], [0, -1]]]);
";
        let doc = parse(text).unwrap();
        assert_eq!(doc.subalgebras["k"].vectors, vec![vec![rat(0, 1), rat(0, 1)]]);
        assert_eq!(doc.pairs["p"].components.len(), 2);
        assert!(!doc.pairs["p"].connected);
        let out = serialize(&doc);
        assert!(out.contains("operator J on g { a -> b; b -> -1*a; }"), "{out}");
        assert_eq!(parse(&out).unwrap(), doc);
        assert!(parse("algebra g { basis a; }\nsubalgebra k of g = span(0);\npair p = (g, k, components = [[[1]]]);").is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec(arb_rational(), n)
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = SpecMatrix> {
        prop::collection::vec(
            prop::collection::vec((arb_rational(), arb_rational()).prop_map(|(a, b)| GaussianRational::new(a, b)), n),
            n,
        )
    }

    fn arb_document() -> impl Strategy<Value = SpecDocument> {
        (2usize..=4, 1usize..=2)
            .prop_flat_map(|(n, size)| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
                (
                    Just(n),
                    prop::collection::vec(prop::option::of(arb_vector(n)), pairs.len()).prop_map(move |vals| {
                        pairs.iter().cloned().zip(vals).filter_map(|(k, v)| v.map(|v| (k, v))).collect::<Vec<_>>()
                    }),
                    prop::collection::vec(arb_vector(n), 0..=2),
                    prop::collection::vec(arb_vector(n), 1..=3),
                    arb_vector(n),
                    Just(size),
                    prop::collection::vec(arb_matrix(size), 1..=2),
                    any::<bool>(),
                )
            })
            .prop_map(|(n, brackets, span, rules, ad, size, mats, connected)| {
                let mut doc = SpecDocument::default();
                let basis: Vec<String> = (0..n).map(|i| format!("b{i}")).collect();
                let brackets = brackets
                    .into_iter()
                    .filter(|(_, v)| !crate::exact::vector::is_zero(v))
                    .collect();
                doc.algebras.insert("g".into(), BracketAlgebraDef { basis, brackets });
                doc.matrix_algebras.insert(
                    "mat".into(),
                    MatrixAlgebraDef {
                        size,
                        generators: mats.iter().enumerate().map(|(i, m)| (format!("x{i}"), m.clone())).collect(),
                    },
                );
                let span = if span.is_empty() { vec![vec![rat(0, 1); n]] } else { span };
                doc.subalgebras.insert("k".into(), SpanDef { algebra: "g".into(), vectors: span });
                doc.complements.insert("m".into(), SpanDef { algebra: "g".into(), vectors: vec![ad.clone()] });
                doc.operators.insert(
                    "R".into(),
                    OperatorDef {
                        algebra: "g".into(),
                        form: OperatorForm::Rules(rules.into_iter().take(n).enumerate().collect()),
                    },
                );
                doc.operators.insert("A".into(), OperatorDef { algebra: "g".into(), form: OperatorForm::Ad(ad) });
                doc.operators.insert(
                    "S".into(),
                    OperatorDef { algebra: "mat".into(), form: OperatorForm::Sandwich(mats[0].clone(), mats[mats.len() - 1].clone()) },
                );
                let components = if connected { Vec::new() } else { vec![vec![vec![rat(1, 1); n]; n]] };
                doc.pairs.insert(
                    "p".into(),
                    PairDef { algebra: "g".into(), subalgebra: "k".into(), complement: Some("m".into()), connected, components },
                );
                doc
            })
    }

    proptest! {
        #[test]
        fn round_trip(doc in arb_document()) {
            let text = serialize(&doc);
            let parsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            prop_assert_eq!(&parsed, &doc);
            prop_assert_eq!(serialize(&parsed), text);
        }

        #[test]
        fn errors_point_inside_input(text in "[a-z0-9 \\[\\]{}(),;=*+/\\n-]{0,60}") {
            if let Err(e) = parse(&text) {
                let lines: Vec<&str> = text.split('\n').collect();
                prop_assert!(e.span.line >= 1 && e.span.line <= lines.len());
                prop_assert!(e.span.col >= 1 && e.span.col <= lines[e.span.line - 1].chars().count() + 1);
            }
        }
    }
}
