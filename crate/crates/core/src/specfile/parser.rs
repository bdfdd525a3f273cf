//! Recursive-descent parser. A syntactic pass collects raw items, then a
//! second pass resolves names and basis labels so that items may refer to
//! each other in any order.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::lexer::{tokenize, Spanned, Token};
use super::{
    BracketAlgebraDef, ErrorKind, MatrixAlgebraDef, OperatorDef, OperatorForm, PairDef, Span, SpanDef, SpecDocument,
    SpecError, SpecMatrix,
};
use crate::exact::{vector, GaussianRational, Rational};

/// Parses and resolves a document.
pub fn parse(text: &str) -> Result<SpecDocument, SpecError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let mut items = Vec::new();
    while parser.peek() != &Token::Eof {
        items.push(parser.item()?);
    }
    build(items)
}

#[derive(Clone, Debug)]
struct Name {
    text: String,
    span: Span,
}

#[derive(Clone, Debug)]
struct RawLincomb {
    terms: Vec<(Rational, Name)>,
}

#[derive(Clone, Debug)]
struct RawMatrix {
    rows: SpecMatrix,
    span: Span,
}

#[derive(Clone, Debug)]
enum RawForm {
    Rules(Vec<(Name, RawLincomb)>),
    Ad(RawLincomb),
    Left(RawMatrix),
    Right(RawMatrix),
    Sandwich(RawMatrix, RawMatrix),
}

#[derive(Clone, Debug)]
struct RawBracket {
    a: Name,
    b: Name,
    value: RawLincomb,
    span: Span,
}

#[derive(Clone, Debug)]
enum RawItem {
    Algebra {
        name: Name,
        basis: Vec<Name>,
        brackets: Vec<RawBracket>,
    },
    MatrixAlgebra {
        name: Name,
        size: usize,
        generators: Vec<(Name, RawMatrix)>,
    },
    Span {
        complement: bool,
        name: Name,
        algebra: Name,
        vectors: Vec<RawLincomb>,
    },
    Operator {
        name: Name,
        algebra: Name,
        form: RawForm,
    },
    Pair {
        name: Name,
        algebra: Name,
        subalgebra: Name,
        complement: Option<Name>,
        connected: bool,
        components: Vec<RawMatrix>,
    },
}

impl RawItem {
    fn name(&self) -> &Name {
        match self {
            RawItem::Algebra { name, .. }
            | RawItem::MatrixAlgebra { name, .. }
            | RawItem::Span { name, .. }
            | RawItem::Operator { name, .. }
            | RawItem::Pair { name, .. } => name,
        }
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

const ITEM_KEYWORDS: [&str; 6] = ["algebra", "matrix_algebra", "subalgebra", "complement", "operator", "pair"];

fn quoted(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| format!("`{s}`")).collect()
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].token
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: Vec<String>) -> SpecError {
        SpecError::new(
            ErrorKind::Syntax,
            self.span(),
            self.peek().describe(),
            expected,
            "unexpected token",
        )
    }

    fn expect(&mut self, token: Token) -> Result<Span, SpecError> {
        if *self.peek() == token {
            Ok(self.advance().span)
        } else {
            Err(self.unexpected(vec![token.describe()]))
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == token {
            self.advance();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<Name, SpecError> {
        match self.peek().clone() {
            Token::Ident(text) => Ok(Name {
                text,
                span: self.advance().span,
            }),
            _ => Err(self.unexpected(vec![what.to_string()])),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, SpecError> {
        match self.peek() {
            Token::Ident(s) if s == kw => Ok(self.advance().span),
            _ => Err(self.unexpected(quoted(&[kw]))),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Token::Ident(s) if s == kw)
    }

    fn item(&mut self) -> Result<RawItem, SpecError> {
        let kw = match self.peek() {
            Token::Ident(s) if ITEM_KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.unexpected(quoted(&ITEM_KEYWORDS))),
        };
        self.advance();
        match kw.as_str() {
            "algebra" => self.algebra(),
            "matrix_algebra" => self.matrix_algebra(),
            "subalgebra" => self.span_item(false),
            "complement" => self.span_item(true),
            "operator" => self.operator(),
            _ => self.pair(),
        }
    }

    fn algebra(&mut self) -> Result<RawItem, SpecError> {
        let name = self.ident("an algebra name")?;
        self.expect(Token::LBrace)?;
        self.keyword("basis")?;
        let mut basis = vec![self.ident("a basis label")?];
        while let Token::Ident(_) = self.peek() {
            basis.push(self.ident("a basis label")?);
        }
        self.expect(Token::Semi)?;
        let mut brackets = Vec::new();
        while !self.eat(&Token::RBrace) {
            if !self.is_keyword("bracket") {
                return Err(self.unexpected(vec!["`bracket`".into(), "`}`".into()]));
            }
            let span = self.advance().span;
            self.expect(Token::LBracket)?;
            let a = self.ident("a basis label")?;
            self.expect(Token::Comma)?;
            let b = self.ident("a basis label")?;
            self.expect(Token::RBracket)?;
            self.expect(Token::Eq)?;
            let value = self.lincomb()?;
            self.expect(Token::Semi)?;
            brackets.push(RawBracket { a, b, value, span });
        }
        Ok(RawItem::Algebra { name, basis, brackets })
    }

    fn matrix_algebra(&mut self) -> Result<RawItem, SpecError> {
        let name = self.ident("an algebra name")?;
        self.keyword("dim")?;
        self.expect(Token::Eq)?;
        let size_span = self.span();
        let size = match self.peek().clone() {
            Token::Int { value, imaginary: false } => {
                self.advance();
                usize::try_from(&value).ok().filter(|&n| n > 0)
            }
            _ => return Err(self.unexpected(vec!["a positive integer".into()])),
        }
        .ok_or_else(|| {
            SpecError::new(ErrorKind::ShapeMismatch, size_span, "matrix size".into(), Vec::new(), "invalid matrix size")
        })?;
        self.expect(Token::LBrace)?;
        let mut generators = Vec::new();
        loop {
            self.keyword("gen")?;
            let label = self.ident("a generator label")?;
            self.expect(Token::Eq)?;
            let m = self.matrix()?;
            self.expect(Token::Semi)?;
            generators.push((label, m));
            if self.eat(&Token::RBrace) {
                break;
            }
            if !self.is_keyword("gen") {
                return Err(self.unexpected(vec!["`gen`".into(), "`}`".into()]));
            }
        }
        Ok(RawItem::MatrixAlgebra { name, size, generators })
    }

    fn span_item(&mut self, complement: bool) -> Result<RawItem, SpecError> {
        let name = self.ident("a name")?;
        self.keyword("of")?;
        let algebra = self.ident("an algebra name")?;
        self.expect(Token::Eq)?;
        self.keyword("span")?;
        self.expect(Token::LParen)?;
        let mut vectors = vec![self.lincomb()?];
        while self.eat(&Token::Comma) {
            vectors.push(self.lincomb()?);
        }
        self.expect(Token::RParen)?;
        self.expect(Token::Semi)?;
        Ok(RawItem::Span {
            complement,
            name,
            algebra,
            vectors,
        })
    }

    fn operator(&mut self) -> Result<RawItem, SpecError> {
        let name = self.ident("an operator name")?;
        self.keyword("on")?;
        let algebra = self.ident("an algebra name")?;
        let form = if self.eat(&Token::LBrace) {
            let mut rules = Vec::new();
            loop {
                let label = self.ident("a basis label")?;
                self.expect(Token::Arrow)?;
                let image = self.lincomb()?;
                self.expect(Token::Semi)?;
                rules.push((label, image));
                if self.eat(&Token::RBrace) {
                    break;
                }
            }
            RawForm::Rules(rules)
        } else if self.eat(&Token::Eq) {
            let forms = quoted(&["ad", "left", "right", "sandwich"]);
            let kind = match self.peek() {
                Token::Ident(s) if ["ad", "left", "right", "sandwich"].contains(&s.as_str()) => s.clone(),
                _ => return Err(self.unexpected(forms)),
            };
            self.advance();
            self.expect(Token::LParen)?;
            let form = match kind.as_str() {
                "ad" => RawForm::Ad(self.lincomb()?),
                "left" => RawForm::Left(self.matrix()?),
                "right" => RawForm::Right(self.matrix()?),
                _ => {
                    let a = self.matrix()?;
                    self.expect(Token::Comma)?;
                    RawForm::Sandwich(a, self.matrix()?)
                }
            };
            self.expect(Token::RParen)?;
            form
        } else {
            return Err(self.unexpected(vec!["`{`".into(), "`=`".into()]));
        };
        self.eat(&Token::Semi);
        Ok(RawItem::Operator { name, algebra, form })
    }

    fn pair(&mut self) -> Result<RawItem, SpecError> {
        let name = self.ident("a pair name")?;
        self.expect(Token::Eq)?;
        self.expect(Token::LParen)?;
        let algebra = self.ident("an algebra name")?;
        self.expect(Token::Comma)?;
        let subalgebra = self.ident("a subalgebra name")?;
        let mut complement = None;
        let mut connected = None;
        let mut components = None;
        while self.eat(&Token::Comma) {
            let mut options = Vec::new();
            if complement.is_none() && connected.is_none() && components.is_none() {
                options.push("complement");
            }
            if connected.is_none() && components.is_none() {
                options.push("connected");
            }
            if components.is_none() {
                options.push("components");
            }
            let kw = match self.peek() {
                Token::Ident(s) if options.contains(&s.as_str()) => s.clone(),
                _ => return Err(self.unexpected(quoted(&options))),
            };
            let kw_span = self.advance().span;
            match kw.as_str() {
                "complement" => complement = Some(self.ident("a complement name")?),
                "connected" => {
                    self.expect(Token::Eq)?;
                    connected = Some(match self.peek() {
                        Token::Ident(s) if s == "true" => true,
                        Token::Ident(s) if s == "false" => false,
                        _ => return Err(self.unexpected(quoted(&["true", "false"]))),
                    });
                    self.advance();
                }
                _ => {
                    if connected != Some(false) {
                        return Err(SpecError::new(
                            ErrorKind::Syntax,
                            kw_span,
                            "`components`".into(),
                            vec!["`connected = false`".into()],
                            "component representatives need `connected = false` first",
                        ));
                    }
                    self.expect(Token::Eq)?;
                    self.expect(Token::LBracket)?;
                    let mut reps = vec![self.matrix()?];
                    while self.eat(&Token::Comma) {
                        reps.push(self.matrix()?);
                    }
                    self.expect(Token::RBracket)?;
                    components = Some(reps);
                }
            }
        }
        self.expect(Token::RParen)?;
        self.expect(Token::Semi)?;
        Ok(RawItem::Pair {
            name,
            algebra,
            subalgebra,
            complement,
            connected: connected.unwrap_or(true),
            components: components.unwrap_or_default(),
        })
    }

    /// `INT ["/" INT]`, possibly imaginary. The span is that of the first digit.
    fn unsigned_rational(&mut self) -> Result<(Rational, bool, Span), SpecError> {
        let span = self.span();
        let num = match self.peek().clone() {
            Token::Int { value, imaginary } => {
                self.advance();
                if imaginary {
                    return Ok((Rational::from_integer(value), true, span));
                }
                value
            }
            _ => return Err(self.unexpected(vec!["a number".into()])),
        };
        if !self.eat(&Token::Slash) {
            return Ok((Rational::from_integer(num), false, span));
        }
        match self.peek().clone() {
            Token::Int { value, imaginary } => {
                self.advance();
                if value.is_zero() {
                    let shown = format!("`{num}/0{}`", if imaginary { "i" } else { "" });
                    return Err(SpecError::new(ErrorKind::BadScalar, span, shown, vec!["a nonzero denominator".into()], "division by zero"));
                }
                Ok((Rational::new(num, value), imaginary, span))
            }
            _ => Err(self.unexpected(vec!["a denominator".into()])),
        }
    }

    fn signed_rational(&mut self) -> Result<(Rational, bool, Span), SpecError> {
        let span = self.span();
        let negative = self.eat(&Token::Minus);
        let (r, imaginary, _) = self.unsigned_rational()?;
        Ok((if negative { -r } else { r }, imaginary, span))
    }

    /// `rational`, `rational i`, or `rational (+|-) rational i`.
    fn scalar(&mut self) -> Result<GaussianRational, SpecError> {
        let (first, imaginary, span) = self.signed_rational()?;
        if imaginary {
            return Ok(GaussianRational::new(Rational::zero(), first));
        }
        let sign = match self.peek() {
            Token::Plus => Rational::one(),
            Token::Minus => -Rational::one(),
            _ => return Ok(GaussianRational::from(first)),
        };
        self.advance();
        let (im, imaginary, _) = self.unsigned_rational()?;
        if !imaginary {
            return Err(SpecError::new(
                ErrorKind::BadScalar,
                span,
                "a real sum".into(),
                vec!["an imaginary part such as `2i`".into()],
                "second part of a complex scalar must be imaginary",
            ));
        }
        Ok(GaussianRational::new(first, sign * im))
    }

    fn matrix(&mut self) -> Result<RawMatrix, SpecError> {
        let span = self.expect(Token::LBracket)?;
        let mut rows = Vec::new();
        loop {
            self.expect(Token::LBracket)?;
            let mut row = vec![self.scalar()?];
            while self.eat(&Token::Comma) {
                row.push(self.scalar()?);
            }
            self.expect(Token::RBracket)?;
            rows.push(row);
            if self.eat(&Token::RBracket) {
                break;
            }
            self.expect(Token::Comma)?;
        }
        Ok(RawMatrix { rows, span })
    }

    /// A real linear combination of basis labels, or a bare `0`.
    fn lincomb(&mut self) -> Result<RawLincomb, SpecError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(&Token::Minus) { -Rational::one() } else { Rational::one() };
        loop {
            let coefficient = if let Token::Int { .. } = self.peek() {
                let (r, imaginary, span) = self.unsigned_rational()?;
                if imaginary {
                    return Err(SpecError::new(
                        ErrorKind::BadScalar,
                        span,
                        "an imaginary coefficient".into(),
                        vec!["a rational coefficient".into()],
                        "coefficients of linear combinations are rational",
                    ));
                }
                let only_term = terms.is_empty() && !matches!(self.peek(), Token::Star);
                if only_term && r.is_zero() && !matches!(self.peek(), Token::Plus | Token::Minus) {
                    return Ok(RawLincomb { terms });
                }
                self.expect(Token::Star)?;
                r
            } else {
                Rational::one()
            };
            let name = self.ident("a basis label")?;
            terms.push((sign * coefficient, name));
            sign = match self.peek() {
                Token::Plus => Rational::one(),
                Token::Minus => -Rational::one(),
                _ => break,
            };
            self.advance();
            if matches!(self.peek_at(0), Token::Minus) {
                self.advance();
                sign = -sign;
            }
        }
        Ok(RawLincomb { terms })
    }
}

fn error(kind: ErrorKind, span: Span, found: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::new(kind, span, found.into(), Vec::new(), message)
}

fn resolve_lincomb(labels: &[String], algebra: &str, lc: &RawLincomb) -> Result<Vec<Rational>, SpecError> {
    let mut out = vector::zeros::<Rational>(labels.len());
    for (c, name) in &lc.terms {
        let i = labels.iter().position(|l| *l == name.text).ok_or_else(|| {
            error(
                ErrorKind::UnresolvedReference,
                name.span,
                format!("`{}`", name.text),
                format!("`{}` is not a basis label of `{algebra}`", name.text),
            )
        })?;
        out[i] = &out[i] + c;
    }
    Ok(out)
}

fn check_square(m: &RawMatrix, size: Option<usize>) -> Result<(), SpecError> {
    let n = size.unwrap_or(m.rows.len());
    if m.rows.len() != n || m.rows.iter().any(|r| r.len() != n) {
        let shape = format!("{}×{}", m.rows.len(), m.rows.first().map_or(0, |r| r.len()));
        return Err(error(ErrorKind::ShapeMismatch, m.span, shape, format!("expected a {n}×{n} matrix")));
    }
    Ok(())
}

fn real_matrix(m: &RawMatrix) -> Result<Vec<Vec<Rational>>, SpecError> {
    m.rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| {
                    if z.im.is_zero() {
                        Ok(z.re.clone())
                    } else {
                        Err(error(ErrorKind::BadScalar, m.span, "an imaginary entry", "component representatives are real"))
                    }
                })
                .collect()
        })
        .collect()
}

fn unique_labels(names: &[Name]) -> Result<Vec<String>, SpecError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n.text.as_str()) {
            return Err(error(ErrorKind::DuplicateName, n.span, format!("`{}`", n.text), "label declared twice"));
        }
    }
    Ok(names.iter().map(|n| n.text.clone()).collect())
}

fn build(items: Vec<RawItem>) -> Result<SpecDocument, SpecError> {
    let mut doc = SpecDocument::default();
    for item in &items {
        let name = item.name();
        if doc.spans.insert(name.text.clone(), name.span).is_some() {
            return Err(error(ErrorKind::DuplicateName, name.span, format!("`{}`", name.text), "name declared twice"));
        }
    }
    // algebras first so that everything else can look up labels
    for item in &items {
        match item {
            RawItem::Algebra { name, basis, brackets } => {
                let labels = unique_labels(basis)?;
                doc.algebras.insert(name.text.clone(), build_brackets(&name.text, labels, brackets)?);
            }
            RawItem::MatrixAlgebra { name, size, generators } => {
                let names: Vec<Name> = generators.iter().map(|(n, _)| n.clone()).collect();
                let labels = unique_labels(&names)?;
                let mut gens = Vec::new();
                for (label, (_, m)) in labels.into_iter().zip(generators) {
                    check_square(m, Some(*size))?;
                    gens.push((label, m.rows.clone()));
                }
                doc.matrix_algebras.insert(
                    name.text.clone(),
                    MatrixAlgebraDef {
                        size: *size,
                        generators: gens,
                    },
                );
            }
            _ => {}
        }
    }
    let labels_of = |doc: &SpecDocument, alg: &Name| {
        doc.labels(&alg.text).ok_or_else(|| {
            error(
                ErrorKind::UnresolvedReference,
                alg.span,
                format!("`{}`", alg.text),
                format!("no algebra named `{}`", alg.text),
            )
        })
    };
    for item in &items {
        match item {
            RawItem::Span {
                complement,
                name,
                algebra,
                vectors,
            } => {
                let labels = labels_of(&doc, algebra)?;
                let vectors = vectors
                    .iter()
                    .map(|v| resolve_lincomb(&labels, &algebra.text, v))
                    .collect::<Result<_, _>>()?;
                let def = SpanDef {
                    algebra: algebra.text.clone(),
                    vectors,
                };
                if *complement {
                    doc.complements.insert(name.text.clone(), def);
                } else {
                    doc.subalgebras.insert(name.text.clone(), def);
                }
            }
            RawItem::Operator { name, algebra, form } => {
                let labels = labels_of(&doc, algebra)?;
                let size = doc.matrix_algebras.get(&algebra.text).map(|m| m.size);
                let form = match form {
                    RawForm::Rules(rules) => {
                        let mut out = BTreeMap::new();
                        for (label, image) in rules {
                            let i = labels.iter().position(|l| *l == label.text).ok_or_else(|| {
                                error(
                                    ErrorKind::UnresolvedReference,
                                    label.span,
                                    format!("`{}`", label.text),
                                    format!("`{}` is not a basis label of `{}`", label.text, algebra.text),
                                )
                            })?;
                            let image = resolve_lincomb(&labels, &algebra.text, image)?;
                            if out.insert(i, image).is_some() {
                                return Err(error(
                                    ErrorKind::DuplicateName,
                                    label.span,
                                    format!("`{}`", label.text),
                                    "rule given twice",
                                ));
                            }
                        }
                        OperatorForm::Rules(out)
                    }
                    RawForm::Ad(d) => OperatorForm::Ad(resolve_lincomb(&labels, &algebra.text, d)?),
                    RawForm::Left(a) => {
                        check_square(a, size)?;
                        OperatorForm::Left(a.rows.clone())
                    }
                    RawForm::Right(a) => {
                        check_square(a, size)?;
                        OperatorForm::Right(a.rows.clone())
                    }
                    RawForm::Sandwich(a, b) => {
                        check_square(a, size)?;
                        check_square(b, Some(a.rows.len()))?;
                        OperatorForm::Sandwich(a.rows.clone(), b.rows.clone())
                    }
                };
                doc.operators.insert(
                    name.text.clone(),
                    OperatorDef {
                        algebra: algebra.text.clone(),
                        form,
                    },
                );
            }
            _ => {}
        }
    }
    for item in &items {
        if let RawItem::Pair {
            name,
            algebra,
            subalgebra,
            complement,
            connected,
            components,
        } = item
        {
            let labels = labels_of(&doc, algebra)?;
            let check_space = |map: &BTreeMap<String, SpanDef>, n: &Name, what: &str| match map.get(&n.text) {
                Some(def) if def.algebra == algebra.text => Ok(()),
                Some(def) => Err(error(
                    ErrorKind::UnresolvedReference,
                    n.span,
                    format!("`{}`", n.text),
                    format!("{what} `{}` lives in `{}`, not `{}`", n.text, def.algebra, algebra.text),
                )),
                None => Err(error(
                    ErrorKind::UnresolvedReference,
                    n.span,
                    format!("`{}`", n.text),
                    format!("no {what} named `{}`", n.text),
                )),
            };
            check_space(&doc.subalgebras, subalgebra, "subalgebra")?;
            if let Some(c) = complement {
                check_space(&doc.complements, c, "complement")?;
            }
            let mut reps = Vec::new();
            for m in components {
                check_square(m, Some(labels.len()))?;
                reps.push(real_matrix(m)?);
            }
            doc.pairs.insert(
                name.text.clone(),
                PairDef {
                    algebra: algebra.text.clone(),
                    subalgebra: subalgebra.text.clone(),
                    complement: complement.as_ref().map(|c| c.text.clone()),
                    connected: *connected,
                    components: reps,
                },
            );
        }
    }
    Ok(doc)
}

/// Normalizes brackets to `i < j`, checking that repeated and reversed
/// entries agree.
fn build_brackets(algebra: &str, basis: Vec<String>, brackets: &[RawBracket]) -> Result<BracketAlgebraDef, SpecError> {
    let mut table: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for br in brackets {
        let index = |n: &Name| {
            basis.iter().position(|l| *l == n.text).ok_or_else(|| {
                error(
                    ErrorKind::UnresolvedReference,
                    n.span,
                    format!("`{}`", n.text),
                    format!("`{}` is not a basis label of `{algebra}`", n.text),
                )
            })
        };
        let (i, j) = (index(&br.a)?, index(&br.b)?);
        let value = resolve_lincomb(&basis, algebra, &br.value)?;
        let inconsistent = |msg: String| {
            error(
                ErrorKind::InconsistentBracket,
                br.span,
                format!("[{},{}]", br.a.text, br.b.text),
                msg,
            )
        };
        if i == j {
            if !vector::is_zero(&value) {
                return Err(inconsistent(format!("[{0},{0}] must vanish", br.a.text)));
            }
            continue;
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), vector::neg(&value)) };
        match table.get(&key) {
            Some(existing) if *existing != value => {
                return Err(inconsistent(format!(
                    "conflicts with an earlier value of [{},{}]",
                    basis[key.0], basis[key.1]
                )))
            }
            _ => {
                table.insert(key, value);
            }
        }
    }
    table.retain(|_, v| !vector::is_zero(v));
    Ok(BracketAlgebraDef { basis, brackets: table })
}
