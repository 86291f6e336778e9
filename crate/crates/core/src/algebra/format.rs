//! TOML text format for algebras and linear maps.
//!
//! ```toml
//! dim = 3
//! field = "Q"
//! labels = ["x1", "x2", "x3"]
//! alpha = [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "2"]]
//!
//! [[bracket]]
//! i = 0
//! j = 1
//! coeffs = { 0 = "1", 2 = "1" }
//! ```
//!
//! `alpha` row `i` lists the `x_i` coefficients of the images, so the rows
//! are exactly the rows of the twist matrix. Maps use `field` and `rows`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;

use super::HomAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{zero_vector, Field, Matrix, Scalar};

#[derive(Deserialize)]
#[serde(untagged)]
enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn to_scalar(&self, field: Field) -> Result<Scalar> {
        match self {
            Literal::Int(n) => Ok(field.int(*n)),
            Literal::Text(t) => field.parse(t),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    #[serde(default)]
    coeffs: BTreeMap<String, Literal>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    field: String,
    labels: Option<Vec<String>>,
    alpha: Vec<Vec<Literal>>,
    #[serde(default)]
    bracket: Vec<BracketEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    field: String,
    rows: Vec<Vec<Literal>>,
}

fn parse_rows(field: Field, rows: &[Vec<Literal>], what: &str) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_scalar(field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(Matrix::zeros(field, 0, 0));
    }
    Matrix::from_rows(field, parsed).map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn toml_error(e: toml::de::Error) -> Error {
    Error::Input(e.to_string().trim().to_string())
}

/// Parses an algebra document.
pub fn parse_algebra(text: &str) -> Result<HomAlgebra> {
    let doc: AlgebraFile = toml::from_str(text).map_err(toml_error)?;
    let field: Field = doc.field.parse()?;
    let n = doc.dim;
    let mut g = HomAlgebra::new(field, n);
    let alpha = parse_rows(field, &doc.alpha, "alpha")?;
    if alpha.rows() != n || alpha.cols() != n {
        return Err(Error::Dimension(format!("alpha must be {n}x{n}")));
    }
    g.set_alpha(alpha)?;
    let mut seen = std::collections::BTreeSet::new();
    for e in &doc.bracket {
        if e.i >= e.j || e.j >= n {
            return Err(Error::Input(format!("bracket entry ({}, {}) needs i < j < dim", e.i, e.j)));
        }
        if !seen.insert((e.i, e.j)) {
            return Err(Error::Input(format!("duplicate bracket entry ({}, {})", e.i, e.j)));
        }
        let mut v = zero_vector(field, n);
        for (k, lit) in &e.coeffs {
            let k: usize =
                k.parse().map_err(|_| Error::Input(format!("coefficient key '{k}' is not a basis index")))?;
            if k >= n {
                return Err(Error::Input(format!("coefficient index {k} out of range")));
            }
            v[k] = lit.to_scalar(field)?;
        }
        g.set_bracket(e.i, e.j, &v)?;
    }
    g.set_labels(doc.labels)?;
    Ok(g)
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn write_rows(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = m.row(i).iter().map(|x| quote(&x.to_string())).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[\n{}\n]", rows.iter().map(|r| format!("  {r},")).collect::<Vec<_>>().join("\n"))
}

/// Canonical serialization: only nonzero brackets and coefficients.
pub fn write_algebra(g: &HomAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim = {}", g.dim());
    let _ = writeln!(out, "field = {}", quote(&g.field().to_string()));
    if let Some(labels) = g.labels() {
        let l: Vec<String> = labels.iter().map(|s| quote(s)).collect();
        let _ = writeln!(out, "labels = [{}]", l.join(", "));
    }
    let _ = writeln!(out, "alpha = {}", write_rows(g.alpha()));
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let v = g.bracket_basis(i, j);
            let coeffs: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{k} = {}", quote(&c.to_string())))
                .collect();
            if coeffs.is_empty() {
                continue;
            }
            let _ = write!(out, "\n[[bracket]]\ni = {i}\nj = {j}\ncoeffs = {{ {} }}\n", coeffs.join(", "));
        }
    }
    out
}

/// Parses a linear map document (`field` plus `rows`).
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let doc: MapFile = toml::from_str(text).map_err(toml_error)?;
    let field: Field = doc.field.parse()?;
    parse_rows(field, &doc.rows, "rows")
}

pub fn write_matrix(m: &Matrix) -> String {
    format!("field = {}\nrows = {}\n", quote(&m.field().to_string()), write_rows(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"
dim = 3
field = "Q"
alpha = [["1", 0, 0], [0, "2", 0], [0, 0, "1/2"]]

[[bracket]]
i = 0
j = 1
coeffs = { 2 = "-3/4" }
"#;

    #[test]
    fn parses_and_round_trips() {
        let g = parse_algebra(DOC).unwrap();
        let q = Field::Rational;
        assert_eq!(g.bracket_basis(1, 0)[2], q.frac(3, 4).unwrap());
        assert_eq!(g.alpha().get(2, 2), &q.frac(1, 2).unwrap());
        let text = write_algebra(&g);
        assert_eq!(parse_algebra(&text).unwrap(), g);
        assert_eq!(write_algebra(&parse_algebra(&text).unwrap()), text);
    }

    #[test]
    fn duplicate_pair_rejected() {
        let doc = format!("{DOC}\n[[bracket]]\ni = 0\nj = 1\ncoeffs = {{ 2 = 1 }}\n");
        assert!(matches!(parse_algebra(&doc), Err(Error::Input(m)) if m.contains("duplicate")));
    }

    #[test]
    fn unknown_field_rejected() {
        let doc = format!("colour = 1\n{DOC}");
        assert!(matches!(parse_algebra(&doc), Err(Error::Input(_))));
    }

    #[test]
    fn prime_field_residues() {
        let doc = "dim = 2\nfield = \"Fp:3\"\nalpha = [[4, 0], [0, \"-1\"]]\n";
        let g = parse_algebra(doc).unwrap();
        assert_eq!(g.alpha().get(0, 0), &Field::Prime(3).int(1));
        assert_eq!(g.alpha().get(1, 1), &Field::Prime(3).int(2));
    }

    #[test]
    fn map_round_trip() {
        let m = Matrix::from_ints(Field::Rational, &[&[1, 2], &[0, -1]]);
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }
}
