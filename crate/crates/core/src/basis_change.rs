//! Adapted basis changes of deformed model algebras: the elementary
//! generators σ, τ, ν, general adapted changes, their realization as
//! matrices, the closed-form coefficient laws and the factorization of a
//! general change into elementary ones.

use std::fmt;

use crate::algebra::HomAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vector, unit_vector, Field, Matrix, Scalar, Vector};
use crate::filiform::{delta_index_set, psi_cochain, split_bracket, PsiCoefficients};

/// Elementary adapted changes, indexed on the basis `x_0, ..., x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `x_1 -> x_1 + b x_k`, `2 <= k <= n`.
    Sigma { b: Scalar, k: usize },
    /// `x_0 -> x_0 + a x_k`, `1 <= k <= n`.
    Tau { a: Scalar, k: usize },
    /// `x_0 -> a x_0`, `x_1 -> b x_1`, both nonzero.
    Nu { a: Scalar, b: Scalar },
}

impl Elementary {
    pub fn is_identity(&self) -> bool {
        match self {
            Elementary::Sigma { b, .. } => b.is_zero(),
            Elementary::Tau { a, .. } => a.is_zero(),
            Elementary::Nu { a, b } => a.is_one() && b.is_one(),
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elementary::Sigma { b, k } => write!(f, "sigma:{b},{k}"),
            Elementary::Tau { a, k } => write!(f, "tau:{a},{k}"),
            Elementary::Nu { a, b } => write!(f, "nu:{a},{b}"),
        }
    }
}

/// An adapted change: elementary, or given by the images of `x_0` and `x_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdaptedChange {
    Elementary(Elementary),
    General { a: Vector, b: Vector },
}

impl From<Elementary> for AdaptedChange {
    fn from(e: Elementary) -> AdaptedChange {
        AdaptedChange::Elementary(e)
    }
}

impl fmt::Display for AdaptedChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdaptedChange::Elementary(e) => e.fmt(f),
            AdaptedChange::General { a, b } => {
                let join = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                write!(f, "general:a={};b={}", join(a), join(b))
            }
        }
    }
}

fn parse_pair(field: Field, body: &str, what: &str) -> Result<(Scalar, String)> {
    let (x, y) =
        body.split_once(',').ok_or_else(|| Error::Input(format!("{what} expects two comma-separated values")))?;
    Ok((field.parse(x.trim())?, y.trim().to_string()))
}

fn parse_index(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Input(format!("'{s}' is not a basis index")))
}

impl AdaptedChange {
    /// Parses `sigma:b,k`, `tau:a,k`, `nu:a,b` or `general:a=..;b=..`
    /// (comma-separated coordinates).
    pub fn parse(text: &str, field: Field) -> Result<AdaptedChange> {
        let (kind, body) =
            text.split_once(':').ok_or_else(|| Error::Input(format!("change '{text}' needs the form kind:params")))?;
        let e = match kind.trim() {
            "sigma" => {
                let (b, k) = parse_pair(field, body, "sigma")?;
                Elementary::Sigma { b, k: parse_index(&k)? }
            }
            "tau" => {
                let (a, k) = parse_pair(field, body, "tau")?;
                Elementary::Tau { a, k: parse_index(&k)? }
            }
            "nu" => {
                let (a, b) = parse_pair(field, body, "nu")?;
                Elementary::Nu { a, b: field.parse(&b)? }
            }
            "general" => {
                let mut a = None;
                let mut b = None;
                for part in body.split(';') {
                    let (key, vals) =
                        part.split_once('=').ok_or_else(|| Error::Input("general change needs a=..;b=..".into()))?;
                    let v = vals.split(',').map(|x| field.parse(x.trim())).collect::<Result<Vector>>()?;
                    match key.trim() {
                        "a" => a = Some(v),
                        "b" => b = Some(v),
                        k => return Err(Error::Input(format!("unknown general change key '{k}'"))),
                    }
                }
                return match (a, b) {
                    (Some(a), Some(b)) => Ok(AdaptedChange::General { a, b }),
                    _ => Err(Error::Input("general change needs both a and b".into())),
                };
            }
            k => return Err(Error::Input(format!("unknown change kind '{k}'"))),
        };
        Ok(AdaptedChange::Elementary(e))
    }

    /// Checks parameter ranges for an algebra with basis `x_0..x_n`.
    pub fn validate(&self, field: Field, n: usize) -> Result<()> {
        let check_field = |s: &Scalar| {
            if s.field() != field {
                Err(Error::FieldMismatch(field, s.field()))
            } else {
                Ok(())
            }
        };
        match self {
            AdaptedChange::Elementary(Elementary::Sigma { b, k }) => {
                check_field(b)?;
                if !(2..=n).contains(k) {
                    return Err(Error::Input(format!("sigma index {k} outside 2..={n}")));
                }
            }
            AdaptedChange::Elementary(Elementary::Tau { a, k }) => {
                check_field(a)?;
                if !(1..=n).contains(k) {
                    return Err(Error::Input(format!("tau index {k} outside 1..={n}")));
                }
            }
            AdaptedChange::Elementary(Elementary::Nu { a, b }) => {
                check_field(a)?;
                check_field(b)?;
                if a.is_zero() || b.is_zero() {
                    return Err(Error::Input("nu needs nonzero parameters".into()));
                }
            }
            AdaptedChange::General { a, b } => {
                if a.len() != n + 1 || b.len() != n + 1 {
                    return Err(Error::Dimension(format!("general change vectors need {} entries", n + 1)));
                }
                a.iter().chain(b.iter()).try_for_each(check_field)?;
                if !b[0].is_zero() {
                    return Err(Error::Input("general change needs b_0 = 0".into()));
                }
                if (&a[0] * &b[1]).is_zero() {
                    return Err(Error::Input("general change needs a_0 b_1 != 0".into()));
                }
            }
        }
        Ok(())
    }

    /// Images of `x_0` and `x_1`.
    fn seeds(&self, field: Field, dim: usize) -> (Vector, Vector) {
        let e = |i| unit_vector(field, dim, i);
        let shifted = |base: usize, c: &Scalar, k: usize| {
            let mut v = e(base);
            v[k] += c;
            v
        };
        match self {
            AdaptedChange::Elementary(Elementary::Sigma { b, k }) => (e(0), shifted(1, b, *k)),
            AdaptedChange::Elementary(Elementary::Tau { a, k }) => (shifted(0, a, *k), e(1)),
            AdaptedChange::Elementary(Elementary::Nu { a, b }) => {
                let mut x0 = e(0);
                x0[0] = a.clone();
                let mut x1 = e(1);
                x1[1] = b.clone();
                (x0, x1)
            }
            AdaptedChange::General { a, b } => (a.clone(), b.clone()),
        }
    }
}

/// Whether `[x_0, x_i] = x_{i+1}` for `1 <= i < n` and `[x_0, x_n] = 0`.
pub fn has_adapted_relations(g: &HomAlgebra) -> bool {
    let d = g.dim();
    (1..d).all(|i| {
        let v = g.bracket_basis(0, i);
        if i + 1 < d {
            v == unit_vector(g.field(), d, i + 1).as_slice()
        } else {
            is_zero_vector(v)
        }
    })
}

/// The change matrix: columns `f(x_0) = a`, `f(x_1) = b`,
/// `f(x_i) = [f(x_0), f(x_{i-1})]` in the bracket of `g`.
pub fn realize(change: &AdaptedChange, g: &HomAlgebra) -> Result<Matrix> {
    let d = g.dim();
    if d < 3 {
        return Err(Error::Input("adapted changes need dimension >= 3".into()));
    }
    if !has_adapted_relations(g) {
        return Err(Error::Precondition("algebra is not presented in an adapted basis".into()));
    }
    change.validate(g.field(), d - 1)?;
    let (x0, x1) = change.seeds(g.field(), d);
    let mut cols = vec![x0, x1];
    for i in 2..d {
        let next = g.br(&cols[0], &cols[i - 1]);
        cols.push(next);
    }
    let f = Matrix::from_columns(g.field(), d, &cols)?;
    let rank = f.rank();
    if rank < d {
        return Err(Error::NotInvertible { rank, size: d });
    }
    Ok(f)
}

/// Conjugates `g` by the realized change.
pub fn apply_change(change: &AdaptedChange, g: &HomAlgebra) -> Result<HomAlgebra> {
    g.conjugate(&realize(change, g)?)
}

/// The change undoing `change`, expressed against the transformed algebra.
pub fn inverse_change(change: &AdaptedChange, g: &HomAlgebra) -> Result<AdaptedChange> {
    let inv = realize(change, g)?.inverse()?;
    Ok(AdaptedChange::General { a: inv.column(0), b: inv.column(1) })
}

/// Reads `ψ = μ - μ₀` back as coefficients on `Δ(n)`.
pub fn extract_psi_coefficients(g: &HomAlgebra) -> Result<PsiCoefficients> {
    let field = g.field();
    let n = g
        .dim()
        .checked_sub(1)
        .filter(|&n| n >= 2)
        .ok_or_else(|| Error::Input("deformed brackets live in dimension >= 3".into()))?;
    let (_, psi) = split_bracket(g)?;
    let index = delta_index_set(n);
    let columns =
        index.iter().map(|&(k, r)| psi_cochain(field, n, k, r).map(|c| c.coordinates())).collect::<Result<Vec<_>>>()?;
    let target = psi.coordinates();
    let system = if columns.is_empty() {
        Matrix::zeros(field, target.len(), 0)
    } else {
        Matrix::from_columns(field, target.len(), &columns)?
    };
    let solution = if columns.is_empty() { is_zero_vector(&target).then(Vec::new) } else { system.solve(&target) };
    let Some(sol) = solution else {
        return Err(Error::Precondition(format!(
            "not in deformed normal form: {}",
            offending_entry(g, &system, &target)
        )));
    };
    let mut out = PsiCoefficients::new(field, n);
    for (&(k, r), v) in index.iter().zip(sol) {
        out.set(k, r, v)?;
    }
    Ok(out)
}

/// First bracket entry whose rows make the system inconsistent.
fn offending_entry(g: &HomAlgebra, system: &Matrix, target: &[Scalar]) -> String {
    let d = g.dim();
    let mut rows = Vec::new();
    let mut aug = Vec::new();
    for (t, chunk) in crate::cohomology::increasing_tuples(d, 2).iter().enumerate() {
        for c in 0..d {
            let row = t * d + c;
            rows.push(system.row(row).to_vec());
            let mut r = system.row(row).to_vec();
            r.push(target[row].clone());
            aug.push(r);
        }
        let field = g.field();
        let rank = |m: &Vec<Vector>| Matrix::from_rows(field, m.clone()).map(|m| m.rank()).unwrap_or(0);
        if system.cols() == 0 || rank(&rows) < rank(&aug) {
            let (i, j) = (chunk[0], chunk[1]);
            let v = g.bracket_basis(i, j);
            let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
            return format!("[x_{i}, x_{j}] = ({})", shown.join(", "));
        }
    }
    "no single entry isolated".into()
}

/// The free constants in the printed coefficient laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CParams {
    pub c10: Scalar,
    pub c11: Scalar,
    pub c20: Scalar,
}

impl CParams {
    pub fn zero(field: Field) -> CParams {
        CParams { c10: field.zero(), c11: field.zero(), c20: field.zero() }
    }
}

/// New coefficients after an elementary change, by the closed-form laws
/// for `n = 5` (`ψ_{14}, ψ_{15}, ψ_{25}`) and `n = 6` (`ψ_{14}, ψ_{15}, ψ_{16}, ψ_{26}`).
pub fn coefficient_law(change: &Elementary, coeffs: &PsiCoefficients, c: &CParams) -> Result<PsiCoefficients> {
    let n = coeffs.n();
    let f = coeffs.field();
    if let Elementary::Nu { a, b } = change {
        if a.is_zero() || b.is_zero() {
            return Err(Error::Input("nu needs nonzero parameters".into()));
        }
        let mut out = PsiCoefficients::new(f, n);
        for (&(k, r), v) in coeffs.iter() {
            out.set(k, r, b * v * a.pow(2 * k as i64 - r as i64))?;
        }
        return Ok(out);
    }
    if n != 5 && n != 6 {
        return Err(Error::Unsupported(format!("coefficient laws are tabulated for n = 5, 6, not {n}")));
    }
    let one = f.one();
    let a14 = coeffs.get(1, 4);
    let a15 = coeffs.get(1, 5);
    let mut out = coeffs.clone();
    match (n, change) {
        (5, Elementary::Sigma { b, k: 2 }) => {
            let a25 = coeffs.get(2, 5);
            out.set(1, 5, &a15 + &(b * b * &a25) + b * (&c.c10 - &one) * &a14)?;
        }
        (5, Elementary::Sigma { b, k: 3 }) => {
            let a25 = coeffs.get(2, 5);
            out.set(1, 5, &a15 - &(b * &a25 * (&one + &c.c11)))?;
        }
        (5, Elementary::Tau { a, k: 1 }) => {
            let a25 = coeffs.get(2, 5);
            let den = &one - &(a * &a25 * &c.c11);
            let inv =
                den.inv().ok_or_else(|| Error::Precondition("singular parameter choice: 1 - a a25 C11 = 0".into()))?;
            let sq = &a14 * &a14;
            out.set(1, 5, &a15 - &(a * &sq * (&one + &c.c10)) + a * a * &sq * &a25 * &c.c11)?;
            out.set(2, 5, &a25 * &inv)?;
        }
        (5, Elementary::Tau { a, k: 2 }) => {
            let a25 = coeffs.get(2, 5);
            out.set(1, 5, &a15 + &(a * &a14 * &a25 * &c.c11) - a * &a14 * &a25)?;
        }
        (6, Elementary::Sigma { b, k: 2 }) => {
            let (a16, a26) = (coeffs.get(1, 6), coeffs.get(2, 6));
            let b2 = b * b;
            out.set(1, 5, &a15 + &(b * &a14 * (&c.c10 - &one)))?;
            let q1 = &(&a14 * &b2) + &a16 + b * &a15 * &c.c10 + &b2 * &a26 - b * &a15 - &b2 * &a14 * &c.c10;
            out.set(1, 6, q1)?;
        }
        (6, Elementary::Sigma { b, k: 3 }) => {
            let (a16, a26) = (coeffs.get(1, 6), coeffs.get(2, 6));
            out.set(1, 6, -(b * &a14) + &a16 - b * &a26 * (&one + &c.c11))?;
        }
        (6, Elementary::Tau { a, k: 1 }) => {
            let (a16, a26) = (coeffs.get(1, 6), coeffs.get(2, 6));
            let c1 = &c.c10 + &one;
            let sq = &a14 * &a14;
            out.set(1, 5, &a15 - &(a * &sq * &c1))?;
            let t1 = &sq * a * &c1 * (&c1 * &a14 * &a14 * &c.c20 - &a26 * &c.c11);
            let t2 = &a14 * a * (&c1 * &a15 + a * &c.c20 * &sq - a * &a14 * &a26 * &c.c11);
            let t3 = a * &a15 * (&c1 * &a14 + &a14 * &c.c20 - &a26 * &c.c11);
            out.set(1, 6, &a16 + &t1 - t2 - t3)?;
        }
        (6, Elementary::Tau { a, k: 2 }) => {
            let (a16, a26) = (coeffs.get(1, 6), coeffs.get(2, 6));
            let q4 = &a16 + &(a * &a14 * (&one + &a26 * &c.c11)) - a * &a14 * &a14 * &c.c20 - a * &a14 * &a26;
            out.set(1, 6, q4)?;
        }
        (_, other) => {
            return Err(Error::Unsupported(format!("no tabulated coefficient law for {other} at n = {n}")));
        }
    }
    Ok(out)
}

/// One coefficient on which the closed-form law and conjugation disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: (usize, usize),
    pub law: Scalar,
    pub conjugated: Scalar,
}

/// Closed-form law against direct conjugation for one change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawComparison {
    pub law: std::result::Result<PsiCoefficients, String>,
    pub conjugated: std::result::Result<PsiCoefficients, String>,
    pub mismatches: Vec<Mismatch>,
    /// Whether the conjugated twist map stayed lower triangular.
    pub alpha_lower_triangular: Option<bool>,
}

impl LawComparison {
    pub fn matches(&self) -> bool {
        self.law.is_ok() && self.conjugated.is_ok() && self.mismatches.is_empty()
    }
}

/// Runs both paths on `μ₀ + ψ` with the given twist; never fails, errors are recorded.
pub fn law_vs_conjugation(
    change: &Elementary,
    coeffs: &PsiCoefficients,
    alpha: Option<&Matrix>,
    c: &CParams,
) -> LawComparison {
    let law = coefficient_law(change, coeffs, c).map_err(|e| e.to_string());
    let mut alpha_lower_triangular = None;
    let conjugated = crate::filiform::assemble(coeffs, alpha)
        .and_then(|g| apply_change(&change.clone().into(), &g))
        .and_then(|h| {
            alpha_lower_triangular = Some(h.alpha().is_lower_triangular());
            extract_psi_coefficients(&h)
        })
        .map_err(|e| e.to_string());
    let mut mismatches = Vec::new();
    if let (Ok(l), Ok(cj)) = (&law, &conjugated) {
        for (k, r) in delta_index_set(coeffs.n()) {
            let (x, y) = (l.get(k, r), cj.get(k, r));
            if x != y {
                mismatches.push(Mismatch { index: (k, r), law: x, conjugated: y });
            }
        }
    }
    LawComparison { law, conjugated, mismatches, alpha_lower_triangular }
}

/// Realizes a sequence of changes, each against the algebra produced by
/// the previous ones; returns the total matrix and the final algebra.
pub fn apply_sequence(changes: &[AdaptedChange], g: &HomAlgebra) -> Result<(Matrix, HomAlgebra)> {
    let mut total = Matrix::identity(g.field(), g.dim());
    let mut cur = g.clone();
    for c in changes {
        let m = realize(c, &cur)?;
        cur = cur.conjugate(&m)?;
        total = total.mul(&m)?;
    }
    Ok((total, cur))
}

/// Factorization of a general adapted change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Nontrivial factors in composition order: `ν`, then `τ(., n)..τ(., 1)`,
    /// then `σ(., n)..σ(., 2)`; the last factor acts first.
    pub factors: Vec<Elementary>,
    /// The literal parameters `ν(a_0, b_1)`, `τ(a_k/a_0, k)`, `σ(b_k/b_1, k)`.
    pub literal: Vec<Elementary>,
    /// Whether the literal factors reproduce the change.
    pub literal_reproduces: bool,
    pub matrix: Matrix,
}

impl Decomposition {
    /// Factors in the order they are applied.
    pub fn application_order(&self) -> Vec<AdaptedChange> {
        self.factors.iter().rev().cloned().map(AdaptedChange::from).collect()
    }
}

fn sequence_matrix(factors: &[Elementary], g: &HomAlgebra) -> Result<Matrix> {
    let seq: Vec<AdaptedChange> = factors.iter().rev().cloned().map(AdaptedChange::from).collect();
    Ok(apply_sequence(&seq, g)?.0)
}

fn pivot_quotient(s: &Scalar, pivot: &Scalar) -> Result<Scalar> {
    pivot
        .inv()
        .map(|inv| s * &inv)
        .ok_or_else(|| Error::Precondition("an intermediate factor annihilates a basis direction".into()))
}

/// Writes a general adapted change as a product of elementary ones and
/// checks the product against the direct realization.
pub fn decompose(change: &AdaptedChange, g: &HomAlgebra) -> Result<Decomposition> {
    let AdaptedChange::General { a, b } = change else {
        let AdaptedChange::Elementary(e) = change else { unreachable!() };
        let matrix = realize(change, g)?;
        let factors = vec![e.clone()];
        return Ok(Decomposition { literal: factors.clone(), factors, literal_reproduces: true, matrix });
    };
    let target = realize(change, g)?;
    let d = g.dim();
    let n = d - 1;
    let (a0, b1) = (a[0].clone(), b[1].clone());
    let b1inv = b1.inv().expect("validated");
    let a0inv = a0.inv().expect("validated");

    // σ factors fix the image of x_1 one coordinate at a time.
    let want_b: Vector = b.iter().map(|x| x * &b1inv).collect();
    let mut sigmas = Vec::new();
    let mut cur = g.clone();
    let mut total = Matrix::identity(g.field(), d);
    for k in 2..=n {
        let s = &want_b[k] - total.get(k, 1);
        if s.is_zero() {
            continue;
        }
        let e = Elementary::Sigma { b: pivot_quotient(&s, total.get(k, k))?, k };
        let m = realize(&e.clone().into(), &cur)?;
        cur = cur.conjugate(&m)?;
        total = total.mul(&m)?;
        sigmas.push(e);
    }
    // τ factors then fix the image of x_0, read in the intermediate basis.
    let want_a = total.inverse()?.apply(&a.iter().map(|x| x * &a0inv).collect::<Vec<_>>());
    let mut taus = Vec::new();
    let mut inner = Matrix::identity(g.field(), d);
    for k in 1..=n {
        let s = &want_a[k] - inner.get(k, 0);
        if s.is_zero() {
            continue;
        }
        // Weight-zero terms make earlier factors scale x_k.
        let e = Elementary::Tau { a: pivot_quotient(&s, inner.get(k, k))?, k };
        let m = realize(&e.clone().into(), &cur)?;
        cur = cur.conjugate(&m)?;
        inner = inner.mul(&m)?;
        taus.push(e);
    }
    let mut factors = vec![Elementary::Nu { a: a0.clone(), b: b1.clone() }];
    factors.extend(taus.into_iter().rev());
    factors.extend(sigmas.into_iter().rev());
    let matrix = sequence_matrix(&factors, g)?;
    if matrix != target {
        return Err(Error::Invariant("elementary factors do not reproduce the adapted change".into()));
    }

    let mut literal = vec![Elementary::Nu { a: a0.clone(), b: b1.clone() }];
    literal.extend((1..=n).rev().map(|k| Elementary::Tau { a: &a[k] * &a0inv, k }));
    literal.extend((2..=n).rev().map(|k| Elementary::Sigma { b: &b[k] * &b1inv, k }));
    let literal_reproduces = sequence_matrix(&literal, g).is_ok_and(|m| m == target);
    Ok(Decomposition { factors, literal, literal_reproduces, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filiform::assemble;

    const Q: Field = Field::Rational;

    fn coeffs(n: usize, e: &[((usize, usize), i64)]) -> PsiCoefficients {
        PsiCoefficients::from_ints(Q, n, e).unwrap()
    }

    #[test]
    fn decomposition_with_weight_zero_term() {
        let g = assemble(&coeffs(5, &[((1, 5), 1), ((2, 5), 1)]), None).unwrap();
        let ints = |v: &[i64]| v.iter().map(|&x| Q.int(x)).collect::<Vector>();
        let change = AdaptedChange::General { a: ints(&[2, 1, 1, 0, 0, 1]), b: ints(&[0, 3, 1, 0, 2, 0]) };
        let d = decompose(&change, &g).unwrap();
        assert_eq!(d.matrix, realize(&change, &g).unwrap());
    }

    #[test]
    fn identity_changes() {
        let g = assemble(&coeffs(5, &[((1, 4), 2), ((2, 5), 1)]), None).unwrap();
        let nu = AdaptedChange::Elementary(Elementary::Nu { a: Q.one(), b: Q.one() });
        assert!(realize(&nu, &g).unwrap().is_identity());
        let gen = AdaptedChange::General { a: unit_vector(Q, 6, 0), b: unit_vector(Q, 6, 1) };
        assert!(realize(&gen, &g).unwrap().is_identity());
        assert_eq!(apply_change(&gen, &g).unwrap(), g);
    }

    #[test]
    fn sigma_columns_on_model() {
        let g = crate::filiform::model_ln(Q, 4, None).unwrap();
        let b = Q.int(7);
        let m = realize(&Elementary::Sigma { b: b.clone(), k: 3 }.into(), &g).unwrap();
        let mut c1 = unit_vector(Q, 5, 1);
        c1[3] = b.clone();
        let mut c2 = unit_vector(Q, 5, 2);
        c2[4] = b;
        assert_eq!(m.column(1), c1);
        assert_eq!(m.column(2), c2);
        assert_eq!(m.column(3), unit_vector(Q, 5, 3));
        assert_eq!(m.column(4), unit_vector(Q, 5, 4));
    }

    #[test]
    fn changes_keep_the_model() {
        let g = crate::filiform::model_ln(Q, 5, None).unwrap();
        for c in [
            Elementary::Sigma { b: Q.int(3), k: 2 },
            Elementary::Tau { a: Q.int(-2), k: 1 },
            Elementary::Tau { a: Q.int(5), k: 4 },
            Elementary::Nu { a: Q.int(2), b: Q.int(3) },
        ] {
            let h = apply_change(&c.into(), &g).unwrap();
            assert!(h.same_bracket(&g));
        }
    }

    #[test]
    fn extract_round_trip_and_nu_example() {
        let c = coeffs(5, &[((1, 4), 2)]);
        let g = assemble(&c, None).unwrap();
        assert_eq!(extract_psi_coefficients(&g).unwrap(), c);
        let model = crate::filiform::model_ln(Q, 6, None).unwrap();
        assert!(extract_psi_coefficients(&model).unwrap().is_empty());
        let g = assemble(&coeffs(5, &[((1, 4), 1)]), None).unwrap();
        let nu = Elementary::Nu { a: Q.int(2), b: Q.int(3) };
        let h = apply_change(&nu.clone().into(), &g).unwrap();
        let got = extract_psi_coefficients(&h).unwrap();
        assert_eq!(got.get(1, 4), Q.frac(3, 4).unwrap());
        assert_eq!(coefficient_law(&nu, &coeffs(5, &[((1, 4), 1)]), &CParams::zero(Q)).unwrap(), got);
    }

    #[test]
    fn extract_names_offending_entry() {
        let mut g = crate::filiform::model_ln(Q, 4, None).unwrap();
        g.set_constant(1, 2, 3, Q.one()).unwrap();
        let err = extract_psi_coefficients(&g).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("[x_1, x_2]")), "{err}");
    }

    #[test]
    fn printed_sigma2_example() {
        let c = coeffs(5, &[((1, 4), 1), ((2, 5), 1)]);
        let p = CParams { c10: Q.one(), ..CParams::zero(Q) };
        let out = coefficient_law(&Elementary::Sigma { b: Q.int(2), k: 2 }, &c, &p).unwrap();
        assert_eq!(out.get(1, 5), Q.int(4));
        let same = coefficient_law(&Elementary::Sigma { b: Q.zero(), k: 2 }, &c, &p).unwrap();
        assert_eq!(same, c);
    }

    #[test]
    fn tau1_singular_choice() {
        let c = coeffs(5, &[((2, 5), 1)]);
        let p = CParams { c11: Q.one(), ..CParams::zero(Q) };
        let err = coefficient_law(&Elementary::Tau { a: Q.one(), k: 1 }, &c, &p).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn inverse_restores() {
        let g = assemble(&coeffs(6, &[((1, 4), 1), ((2, 6), 2)]), None).unwrap();
        let c: AdaptedChange = Elementary::Tau { a: Q.int(3), k: 1 }.into();
        let h = apply_change(&c, &g).unwrap();
        let back = apply_change(&inverse_change(&c, &g).unwrap(), &h).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn decomposition_examples() {
        let g = crate::filiform::model_ln(Q, 4, None).unwrap();
        let id = AdaptedChange::General { a: unit_vector(Q, 5, 0), b: unit_vector(Q, 5, 1) };
        let d = decompose(&id, &g).unwrap();
        assert_eq!(d.factors, vec![Elementary::Nu { a: Q.one(), b: Q.one() }]);
        let mut a = unit_vector(Q, 5, 0);
        a[2] = Q.one();
        let c = AdaptedChange::General { a, b: unit_vector(Q, 5, 1) };
        let d = decompose(&c, &g).unwrap();
        assert_eq!(d.factors, vec![Elementary::Nu { a: Q.one(), b: Q.one() }, Elementary::Tau { a: Q.one(), k: 2 }]);
        assert!(d.literal_reproduces);
    }

    #[test]
    fn parse_and_display() {
        let c = AdaptedChange::parse("sigma:1/2,3", Q).unwrap();
        assert_eq!(c, Elementary::Sigma { b: Q.frac(1, 2).unwrap(), k: 3 }.into());
        assert_eq!(AdaptedChange::parse(&c.to_string(), Q).unwrap(), c);
        let gen = AdaptedChange::parse("general:a=1,0,1;b=0,2,0", Q).unwrap();
        assert_eq!(AdaptedChange::parse(&gen.to_string(), Q).unwrap(), gen);
        assert!(AdaptedChange::parse("rho:1,2", Q).is_err());
    }
}
