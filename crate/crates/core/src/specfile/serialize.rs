//! Canonical text form: items grouped by kind and sorted by name, one item
//! per line.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use super::{OperatorForm, SpecDocument, SpecMatrix};
use crate::exact::{GaussianRational, Rational};

/// `3`, `-1/2`, `2i`, `1/2+1/4i`, `-1-1i`.
pub fn scalar(z: &GaussianRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("{}{sign}{}i", z.re, z.im.abs())
        }
    }
}

/// `e1 - 2*e2`, `-1*k0`, `1/2*h1 + h2`, or `0`.
pub fn lincomb(labels: &[String], v: &[Rational]) -> String {
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_one() {
                out.push_str(label);
            } else {
                let _ = write!(out, "{c}*{label}");
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            let a = c.abs();
            if a.is_one() {
                out.push_str(label);
            } else {
                let _ = write!(out, "{a}*{label}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn matrix(m: &SpecMatrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| format!("[{}]", row.iter().map(scalar).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn real_matrix(m: &[Vec<Rational>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| format!("[{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Canonical text of a document; parsing it gives back an equal document.
pub fn serialize(doc: &SpecDocument) -> String {
    let mut out = String::new();
    let labels = |alg: &str| doc.labels(alg).unwrap_or_default();
    for (name, a) in &doc.algebras {
        let _ = write!(out, "algebra {name} {{ basis {};", a.basis.join(" "));
        for ((i, j), v) in &a.brackets {
            let _ = write!(out, " bracket [{},{}] = {};", a.basis[*i], a.basis[*j], lincomb(&a.basis, v));
        }
        out.push_str(" }\n");
    }
    for (name, m) in &doc.matrix_algebras {
        let _ = write!(out, "matrix_algebra {name} dim = {} {{", m.size);
        for (label, g) in &m.generators {
            let _ = write!(out, " gen {label} = {};", matrix(g));
        }
        out.push_str(" }\n");
    }
    for (keyword, map) in [("subalgebra", &doc.subalgebras), ("complement", &doc.complements)] {
        for (name, s) in map {
            let l = labels(&s.algebra);
            let vectors: Vec<String> = s.vectors.iter().map(|v| lincomb(&l, v)).collect();
            let _ = writeln!(out, "{keyword} {name} of {} = span({});", s.algebra, vectors.join(", "));
        }
    }
    for (name, op) in &doc.operators {
        let l = labels(&op.algebra);
        let _ = write!(out, "operator {name} on {}", op.algebra);
        match &op.form {
            OperatorForm::Rules(rules) => {
                out.push_str(" {");
                for (i, image) in rules {
                    let _ = write!(out, " {} -> {};", l[*i], lincomb(&l, image));
                }
                out.push_str(" }\n");
            }
            OperatorForm::Ad(d) => {
                let _ = writeln!(out, " = ad({});", lincomb(&l, d));
            }
            OperatorForm::Left(a) => {
                let _ = writeln!(out, " = left({});", matrix(a));
            }
            OperatorForm::Right(a) => {
                let _ = writeln!(out, " = right({});", matrix(a));
            }
            OperatorForm::Sandwich(a, b) => {
                let _ = writeln!(out, " = sandwich({}, {});", matrix(a), matrix(b));
            }
        }
    }
    for (name, p) in &doc.pairs {
        let _ = write!(out, "pair {name} = ({}, {}", p.algebra, p.subalgebra);
        if let Some(c) = &p.complement {
            let _ = write!(out, ", complement {c}");
        }
        let _ = write!(out, ", connected = {}", p.connected);
        if !p.components.is_empty() {
            let reps: Vec<String> = p.components.iter().map(|m| real_matrix(m)).collect();
            let _ = write!(out, ", components = [{}]", reps.join(", "));
        }
        out.push_str(");\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn scalars() {
        let g = |a: i64, b: i64, c: i64, d: i64| GaussianRational::new(rat(a, b), rat(c, d));
        assert_eq!(scalar(&g(2, 4, 0, 1)), "1/2");
        assert_eq!(scalar(&g(0, 1, 1, 1)), "1i");
        assert_eq!(scalar(&g(1, 2, 1, 4)), "1/2+1/4i");
        assert_eq!(scalar(&g(-1, 1, -1, 1)), "-1-1i");
        assert_eq!(scalar(&g(0, 1, 0, 1)), "0");
    }

    #[test]
    fn combinations() {
        let l: Vec<String> = ["k0", "e1", "e2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(lincomb(&l, &[rat(0, 1), rat(0, 1), rat(-1, 1)]), "-1*e2");
        assert_eq!(lincomb(&l, &[rat(0, 1), rat(1, 1), rat(-2, 1)]), "e1 - 2*e2");
        assert_eq!(lincomb(&l, &[rat(1, 2), rat(-1, 1), rat(3, 1)]), "1/2*k0 - e1 + 3*e2");
        assert_eq!(lincomb(&l, &[rat(0, 1), rat(0, 1), rat(0, 1)]), "0");
    }
}
