//! Tokens of the `.lie` format.

use num_bigint::BigInt;

use super::{ErrorKind, Span, SpecError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    /// A non-negative integer; `imaginary` when written with a trailing `i`.
    Int { value: BigInt, imaginary: bool },
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Star,
    Plus,
    Minus,
    Slash,
    Arrow,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::Int { value, imaginary: false } => format!("`{value}`"),
            Token::Int { value, imaginary: true } => format!("`{value}i`"),
            Token::LBrace => "`{`".into(),
            Token::RBrace => "`}`".into(),
            Token::LBracket => "`[`".into(),
            Token::RBracket => "`]`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Semi => "`;`".into(),
            Token::Eq => "`=`".into(),
            Token::Star => "`*`".into(),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Slash => "`/`".into(),
            Token::Arrow => "`->`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, SpecError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut pos, mut line, mut col) = (0, 1, 1);
    while pos < chars.len() {
        let c = chars[pos];
        let span = Span { line, col };
        if c == '\n' {
            pos += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            pos += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while pos < chars.len() && chars[pos] != '\n' {
                pos += 1;
            }
            continue;
        }
        let start = pos;
        let token = if c.is_ascii_digit() {
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            let value: BigInt = digits.parse().expect("ascii digits");
            // `3i` is an imaginary literal, `3in` is not
            let imaginary = chars.get(pos) == Some(&'i') && !chars.get(pos + 1).is_some_and(|&n| is_ident_continue(n));
            if imaginary {
                pos += 1;
            } else if chars.get(pos).is_some_and(|&n| is_ident_start(n)) {
                return Err(SpecError::new(
                    ErrorKind::Syntax,
                    span,
                    format!("`{}`", chars[start..=pos].iter().collect::<String>()),
                    vec!["a number".into()],
                    "malformed number",
                ));
            }
            Token::Int { value, imaginary }
        } else if is_ident_start(c) {
            while pos < chars.len() && is_ident_continue(chars[pos]) {
                pos += 1;
            }
            Token::Ident(chars[start..pos].iter().collect())
        } else {
            pos += 1;
            match c {
                '{' => Token::LBrace,
                '}' => Token::RBrace,
                '[' => Token::LBracket,
                ']' => Token::RBracket,
                '(' => Token::LParen,
                ')' => Token::RParen,
                ',' => Token::Comma,
                ';' => Token::Semi,
                '=' => Token::Eq,
                '*' => Token::Star,
                '+' => Token::Plus,
                '/' => Token::Slash,
                '-' if chars.get(pos) == Some(&'>') => {
                    pos += 1;
                    Token::Arrow
                }
                '-' | '−' => Token::Minus,
                other => {
                    return Err(SpecError::new(
                        ErrorKind::Syntax,
                        span,
                        format!("`{other}`"),
                        Vec::new(),
                        "unexpected character",
                    ))
                }
            }
        };
        col += pos - start;
        out.push(Spanned { token, span });
    }
    out.push(Spanned {
        token: Token::Eof,
        span: Span { line, col },
    });
    Ok(out)
}
