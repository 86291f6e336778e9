//! Adapted-basis discovery and reduction of deformed brackets to the
//! representatives of the classification tables.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::expr::Expr;
use super::registry::{fit, registry, Params, Representative};
use crate::algebra::HomAlgebra;
use crate::basis_change::{apply_change, extract_psi_coefficients, realize, AdaptedChange, Elementary};
use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vector, unit_vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::filiform::{assemble, PsiCoefficients};
use crate::series::{central_series, is_filiform};

/// An adapted basis found for an arbitrary presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Columns are the new basis vectors in the input coordinates.
    pub matrix: Matrix,
    pub algebra: HomAlgebra,
    pub coefficients: PsiCoefficients,
    pub trials: usize,
}

const RANDOM_TRIALS: usize = 200;
const SEARCH_SEED: u64 = 0x5eed;

fn candidate_x0s(field: Field, d: usize) -> impl Iterator<Item = Vector> {
    let unit = move |i| unit_vector(field, d, i);
    let mut fixed: Vec<Vector> = (0..d).map(unit).collect();
    for c in [1i64, -1, 2] {
        for i in 0..d {
            for j in 0..d {
                if i != j && (c != 1 || i < j) {
                    let mut v = unit(i);
                    v[j] = field.int(c);
                    fixed.push(v);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    let random = (0..RANDOM_TRIALS).map(move |_| (0..d).map(|_| field.sample(&mut rng, 3)).collect());
    fixed.into_iter().chain(random)
}

/// Coordinates of `w` along `x0`, `y` modulo `C¹`.
fn quotient_coords(w: &[Scalar], x0: &[Scalar], y: &[Scalar], c1: &Subspace) -> Option<(Scalar, Scalar)> {
    let field = c1.field();
    let mut cols = vec![x0.to_vec(), y.to_vec()];
    cols.extend(c1.basis_vectors());
    let m = Matrix::from_columns(field, w.len(), &cols).ok()?;
    let sol = m.solve(w)?;
    Some((sol[0].clone(), sol[1].clone()))
}

/// Shifts `s` for `x1 = y + s x0`, in preference order.
fn x1_shifts(g: &HomAlgebra, x0: &[Scalar], y: &[Scalar], series: &[Subspace]) -> Vec<Scalar> {
    let field = g.field();
    let d = g.dim();
    if d >= 4 {
        let x2 = g.br(x0, y);
        let x3 = g.br(x0, &x2);
        let c3 = &series[3.min(series.len() - 1)];
        let (v, t) = (c3.reduce(&g.br(y, &x2)), c3.reduce(&x3));
        let Some(p) = t.iter().position(|c| !c.is_zero()) else { return Vec::new() };
        let s = -(&v[p] * &t[p].inv().expect("nonzero pivot"));
        let residual: Vector = v.iter().zip(&t).map(|(a, b)| a + &(&s * b)).collect();
        return if is_zero_vector(&residual) { vec![s] } else { Vec::new() };
    }
    // Dimension 3: choose x1 along an eigenvector of the induced map on g/C¹.
    let c1 = &series[1];
    let (Some((p, u)), Some((q, v))) =
        (quotient_coords(&g.alpha_of(x0), x0, y, c1), quotient_coords(&g.alpha_of(y), x0, y, c1))
    else {
        return vec![field.zero()];
    };
    // u s² + (v - p) s - q = 0
    let mut roots = quadratic_roots(&-&q, &(&v - &p), &u);
    roots.sort_by_key(|r| !r.is_zero());
    if roots.is_empty() {
        roots.push(field.zero());
    }
    roots
}

/// Roots of `c0 + c1 t + c2 t²` in the field (all elements when identically zero is excluded).
fn quadratic_roots(c0: &Scalar, c1: &Scalar, c2: &Scalar) -> Vec<Scalar> {
    let field = c0.field();
    if c2.is_zero() {
        if c1.is_zero() {
            return if c0.is_zero() { vec![field.zero()] } else { Vec::new() };
        }
        return vec![-(c0 * &c1.inv().expect("nonzero"))];
    }
    let disc = c1 * c1 - field.int(4) * c0 * c2;
    let Some(r) = disc.sqrt() else { return Vec::new() };
    let den = (field.int(2) * c2).inv();
    let Some(den) = den else {
        // characteristic 2
        return field
            .elements()
            .unwrap_or_default()
            .into_iter()
            .filter(|t| (c0 + &(c1 * t) + c2 * t * t).is_zero())
            .collect();
    };
    let mut out = vec![(-c1 + &r) * den.clone()];
    if !r.is_zero() {
        out.push((-c1 - r) * den);
    }
    out
}

/// Finds a basis `x_0, x_1, x_i = [x_0, x_{i-1}]` in which the bracket is
/// `μ₀ + ψ` and the twist map is lower triangular.
pub fn find_adapted_basis(g: &HomAlgebra) -> Result<AdaptedBasis> {
    let d = g.dim();
    if d < 3 || !is_filiform(g) {
        return Err(Error::Precondition("algebra is not filiform".into()));
    }
    let field = g.field();
    let series = central_series(g).terms;
    let c1 = series[1].clone();
    let mut trials = 0;
    let mut last_issue = String::from("no candidate with maximal rank");
    for x0 in candidate_x0s(field, d) {
        if c1.contains_vector(&x0) || g.ad(&x0).rank() != d - 2 {
            continue;
        }
        trials += 1;
        let x0_plus_c1 = c1.sum(&Subspace::span(field, d, std::slice::from_ref(&x0))?)?;
        let Some(y) = (0..d).map(|i| unit_vector(field, d, i)).find(|e| !x0_plus_c1.contains_vector(e)) else {
            continue;
        };
        for s in x1_shifts(g, &x0, &y, &series) {
            let x1: Vector = y.iter().zip(&x0).map(|(a, b)| a + &(&s * b)).collect();
            let mut cols = vec![x0.clone(), x1];
            for i in 2..d {
                let next = g.br(&x0, &cols[i - 1]);
                cols.push(next);
            }
            let f = Matrix::from_columns(field, d, &cols)?;
            if f.rank() < d {
                last_issue = "generated vectors are dependent".into();
                continue;
            }
            let h = g.conjugate(&f)?;
            if !h.alpha().is_lower_triangular() {
                last_issue = "twist map not lower triangular".into();
                continue;
            }
            match extract_psi_coefficients(&h) {
                Ok(coefficients) => return Ok(AdaptedBasis { matrix: f, algebra: h, coefficients, trials }),
                Err(e) => last_issue = e.to_string(),
            }
        }
    }
    Err(Error::Budget(format!("no adapted basis after {trials} candidates; last issue: {last_issue}")))
}

/// Outcome of the reduction to a table representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    /// Representative name, or `None` when unclassified.
    pub name: Option<String>,
    /// Adapted basis in the input coordinates.
    pub basis: Matrix,
    /// Elementary changes in application order.
    pub changes: Vec<Elementary>,
    pub final_algebra: HomAlgebra,
    pub terminal: PsiCoefficients,
    /// Named bracket parameters such as `beta`.
    pub params: Params,
    /// Parameters fitting the twist-map pattern of the match, if any.
    pub alpha_fit: Option<Params>,
    pub diagnostics: Vec<String>,
    /// Total change matrix in the input coordinates.
    pub total: Matrix,
}

impl ClassificationResult {
    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("unclassified")
    }
}

#[derive(Clone)]
struct Node {
    algebra: HomAlgebra,
    coeffs: PsiCoefficients,
    moves: Vec<Elementary>,
}

fn weight(k: usize, r: usize) -> i64 {
    r as i64 - 2 * k as i64 - 1
}

fn support(c: &PsiCoefficients) -> Vec<(usize, usize)> {
    c.iter().map(|(i, _)| *i).collect()
}

/// Newton interpolation through `(t, v)` pairs; coefficients in the monomial basis.
fn interpolate(points: &[(Scalar, Scalar)]) -> Vec<Scalar> {
    let field = points[0].0.field();
    let n = points.len();
    let mut dd: Vec<Scalar> = points.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = (&points[i].0 - &points[i - j].0).inv().expect("distinct nodes");
            dd[i] = (&dd[i] - &dd[i - 1]) * den;
        }
    }
    let mut poly = vec![field.zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (t - t_i) + dd[i]
        let mut next = vec![field.zero(); n];
        for k in 0..n {
            if k + 1 < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &(&poly[k] * &points[i].0);
        }
        next[0] += &dd[i];
        poly = next;
    }
    while poly.len() > 1 && poly.last().is_some_and(Scalar::is_zero) {
        poly.pop();
    }
    poly
}

fn eval_poly(p: &[Scalar], t: &Scalar) -> Scalar {
    p.iter().rev().fold(t.field().zero(), |acc, c| acc * t.clone() + c.clone())
}

fn family(kind: char, k: usize, t: Scalar) -> Elementary {
    if kind == 's' {
        Elementary::Sigma { b: t, k }
    } else {
        Elementary::Tau { a: t, k }
    }
}

/// Parameter values of a one-parameter family that zero coefficient `target`.
fn kill_roots(node: &Node, kind: char, k: usize, target: (usize, usize), notes: &mut BTreeSet<String>) -> Vec<Scalar> {
    let field = node.coeffs.field();
    let mut points: Vec<(Scalar, Scalar)> = Vec::new();
    let mut t = 0i64;
    let max_points = 10;
    let mut agreed = 0;
    while points.len() < max_points && agreed < 2 {
        let ts = field.int(t);
        t += 1;
        if points.iter().any(|p| p.0 == ts) {
            break;
        }
        let ch: AdaptedChange = family(kind, k, ts.clone()).into();
        let Ok(f) = realize(&ch, &node.algebra) else { continue };
        let Ok(h) = node.algebra.conjugate(&f) else { continue };
        let Ok(c) = extract_psi_coefficients(&h) else { continue };
        let det = determinant_triangular(&f);
        let value = c.get(target.0, target.1) * det;
        if points.len() >= 2 {
            let p = interpolate(&points);
            if eval_poly(&p, &ts) == value {
                agreed += 1;
            } else {
                agreed = 0;
            }
        }
        points.push((ts, value));
    }
    if agreed < 2 || points.len() < 3 {
        return Vec::new();
    }
    let p = interpolate(&points[..points.len() - 2]);
    if p.len() == 1 {
        return Vec::new();
    }
    if let Some(elems) = field.elements().filter(|e| e.len() <= 257) {
        return elems.into_iter().filter(|x| eval_poly(&p, x).is_zero() && !x.is_zero()).collect();
    }
    if p.len() > 3 {
        notes.insert(format!(
            "elimination of a_{}{} by {} has degree {}; only degrees <= 2 are solved",
            target.0,
            target.1,
            if kind == 's' { format!("sigma(.,{k})") } else { format!("tau(.,{k})") },
            p.len() - 1
        ));
        return Vec::new();
    }
    let zero = field.zero();
    let roots = quadratic_roots(&p[0], &p[1], p.get(2).unwrap_or(&zero));
    if roots.is_empty() {
        notes.insert(format!("elimination of a_{}{}: root not rational", target.0, target.1));
    }
    roots.into_iter().filter(|r| !r.is_zero()).collect()
}

/// Adapted change matrices are lower triangular, so the determinant is the diagonal product.
fn determinant_triangular(f: &Matrix) -> Scalar {
    (0..f.rows()).fold(f.field().one(), |acc, i| acc * f.get(i, i).clone())
}

fn step(node: &Node, change: Elementary) -> Option<Node> {
    let algebra = apply_change(&change.clone().into(), &node.algebra).ok()?;
    let coeffs = extract_psi_coefficients(&algebra).ok()?;
    let mut moves = node.moves.clone();
    moves.push(change);
    Some(Node { algebra, coeffs, moves })
}

/// Solves `b a^{2k-r} c = 1` on the fixed-one coefficients of `rep`.
fn nu_for(rep: &Representative, c: &PsiCoefficients, notes: &mut BTreeSet<String>) -> Option<Elementary> {
    let field = c.field();
    let ones: Vec<(usize, usize)> = rep.psi.iter().filter(|(_, e)| *e == Expr::Int(1)).map(|(i, _)| *i).collect();
    let w = |i: (usize, usize)| i.1 as i64 - 2 * i.0 as i64;
    let (a, b) = match ones.as_slice() {
        [] => (field.one(), field.one()),
        [i] => (field.one(), c.get(i.0, i.1).inv()?),
        [i, j, ..] => {
            let (ci, cj) = (c.get(i.0, i.1), c.get(j.0, j.1));
            let e = w(*i) - w(*j);
            if e == 0 {
                (field.one(), ci.inv()?)
            } else {
                // a^{w_i - w_j} = c_i / c_j
                let ratio = &ci * &cj.inv()?;
                let (ratio, e) = if e < 0 { (ratio.inv()?, -e) } else { (ratio, e) };
                let Some(a) = ratio.nth_root(e as u32) else {
                    notes.insert(format!("scaling to {}: root not rational", rep.name));
                    return None;
                };
                let b = a.pow(w(*i)) * ci.inv()?;
                (a, b)
            }
        }
    };
    Some(Elementary::Nu { a, b })
}

/// Tries to finish `node` at `rep` with a final scaling.
fn try_match(node: &Node, rep: &Representative, notes: &mut BTreeSet<String>) -> Option<(Node, Params)> {
    let want: BTreeSet<(usize, usize)> = rep.psi_support().into_iter().collect();
    let have: BTreeSet<(usize, usize)> = support(&node.coeffs).into_iter().collect();
    if want != have {
        return None;
    }
    let nu = nu_for(rep, &node.coeffs, notes)?;
    let done = step(node, nu)?;
    let field = node.coeffs.field();
    let mut params = Params::new();
    for ((k, r), e) in &rep.psi {
        let got = done.coeffs.get(*k, *r);
        match e {
            Expr::Var(v) => {
                params.insert(v.clone(), got);
            }
            other => {
                if other.eval(field, &params).ok()? != got {
                    return None;
                }
            }
        }
    }
    let conditions_hold = rep.conditions.iter().all(|c| {
        let mut vars = BTreeSet::new();
        c.variables(&mut vars);
        !vars.iter().all(|v| params.contains_key(v)) || c.eval(field, &params).is_ok_and(|x| !x.is_zero())
    });
    conditions_hold.then_some((done, params))
}

const MAX_DEPTH: usize = 3;

/// Reduces a filiform algebra to a table representative.
pub fn classify(g: &HomAlgebra) -> Result<ClassificationResult> {
    let d = g.dim();
    if !(3..=7).contains(&d) {
        return Err(Error::Unsupported(format!("classification covers dimensions 3 to 7, not {d}")));
    }
    let basis = find_adapted_basis(g)?;
    let reps = registry(d, false)?;
    let root = Node { algebra: basis.algebra.clone(), coeffs: basis.coefficients.clone(), moves: Vec::new() };
    let mut notes = BTreeSet::new();
    let mut best: Option<(usize, usize, Node, Params)> = None;
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut frontier = vec![root.clone()];
    for depth in 0..=MAX_DEPTH {
        let mut next = Vec::new();
        for node in frontier {
            let key: Vec<String> = node.coeffs.dense().iter().map(ToString::to_string).collect();
            if !seen.insert(key) {
                continue;
            }
            for (idx, rep) in reps.iter().enumerate() {
                if let Some((done, params)) = try_match(&node, rep, &mut notes) {
                    let size = rep.psi.len();
                    if best.as_ref().is_none_or(|b| (size, idx) < (b.0, b.1)) {
                        best = Some((size, idx, done, params));
                    }
                }
            }
            if depth == MAX_DEPTH || node.coeffs.is_empty() {
                continue;
            }
            let sup = support(&node.coeffs);
            let w_min = sup.iter().map(|&(k, r)| weight(k, r)).min().unwrap_or(0);
            let mut targets = sup.clone();
            targets.sort_by_key(|&(k, r)| std::cmp::Reverse(weight(k, r)));
            for target in targets {
                let budget = weight(target.0, target.1) - w_min;
                for (kind, k) in (1..d).map(|k| ('t', k)).chain((2..d).map(|k| ('s', k))) {
                    if (k as i64 - 1) > budget {
                        continue;
                    }
                    for root in kill_roots(&node, kind, k, target, &mut notes) {
                        if let Some(child) = step(&node, family(kind, k, root)) {
                            if child.coeffs.get(target.0, target.1).is_zero() {
                                next.push(child);
                            }
                        }
                    }
                }
            }
        }
        frontier = next;
        if best.as_ref().is_some_and(|b| b.0 == 0) {
            break;
        }
    }
    let (name, node, params, alpha_fit) = match best {
        Some((_, idx, node, params)) => {
            let rep = &reps[idx];
            let fit = fit(rep, node.algebra.alpha(), &params);
            if fit.is_none() {
                notes.insert(format!("twist map does not fit the {} pattern", rep.name));
            }
            (Some(rep.name.clone()), node, params, fit)
        }
        None => (None, root, Params::new(), None),
    };
    let seq: Vec<AdaptedChange> = node.moves.iter().cloned().map(AdaptedChange::from).collect();
    let (inner, last) = crate::basis_change::apply_sequence(&seq, &basis.algebra)?;
    let total = basis.matrix.mul(&inner)?;
    let direct = g.conjugate(&total)?;
    if direct != last || last != node.algebra {
        return Err(Error::Invariant("recomposed changes do not reproduce the reduction".into()));
    }
    if name.is_some() {
        let expected = assemble(&node.coeffs, Some(last.alpha()))?;
        if !expected.same_bracket(&direct) {
            return Err(Error::Invariant("matched bracket differs from the representative".into()));
        }
    } else {
        notes.insert(format!("terminal coefficients {}", describe(&node.coeffs)));
    }
    Ok(ClassificationResult {
        name,
        basis: basis.matrix,
        changes: node.moves,
        final_algebra: last,
        terminal: node.coeffs,
        params,
        alpha_fit,
        diagnostics: notes.into_iter().collect(),
        total,
    })
}

/// `a_14 = 2, a_25 = -1` style rendering.
pub fn describe(c: &PsiCoefficients) -> String {
    if c.is_empty() {
        return "none".into();
    }
    c.iter().map(|((k, r), v)| format!("a_{k}{r} = {v}")).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filiform::model_ln;

    const Q: Field = Field::Rational;

    fn coeffs(n: usize, e: &[((usize, usize), i64)]) -> PsiCoefficients {
        PsiCoefficients::from_ints(Q, n, e).unwrap()
    }

    #[test]
    fn assembled_input_gives_identity_basis() {
        let g = assemble(&coeffs(5, &[((1, 4), 2), ((2, 5), 1)]), None).unwrap();
        let b = find_adapted_basis(&g).unwrap();
        assert!(b.matrix.is_identity());
    }

    #[test]
    fn non_filiform_rejected() {
        let g = crate::algebra::catalog::q_sl2(Q.int(1));
        assert!(matches!(find_adapted_basis(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn dim5_scaling() {
        let g = assemble(&coeffs(4, &[((1, 4), 3)]), None).unwrap();
        let r = classify(&g).unwrap();
        assert_eq!(r.label(), "mu_5^2");
        assert_eq!(r.changes, vec![Elementary::Nu { a: Q.one(), b: Q.frac(1, 3).unwrap() }]);
    }

    #[test]
    fn dim6_elimination() {
        let g = assemble(&coeffs(5, &[((1, 4), 1), ((2, 5), 1), ((1, 5), 5)]), None).unwrap();
        let r = classify(&g).unwrap();
        assert_eq!(r.label(), "mu_6^2");
        assert!(r.terminal.get(1, 5).is_zero());
    }

    #[test]
    fn model_in_disguise() {
        let g = model_ln(Q, 6, None).unwrap();
        let mut a = unit_vector(Q, 7, 0);
        a[0] = Q.int(2);
        a[3] = Q.int(5);
        let mut b = unit_vector(Q, 7, 1);
        b[4] = Q.int(-1);
        let h = apply_change(&AdaptedChange::General { a, b }, &g).unwrap();
        assert_eq!(classify(&h).unwrap().label(), "mu_7^1");
    }

    #[test]
    fn psi25_alone_is_unclassified() {
        let g = assemble(&coeffs(5, &[((2, 5), 1)]), None).unwrap();
        let r = classify(&g).unwrap();
        assert_eq!(r.label(), "unclassified");
        assert!(r.diagnostics.iter().any(|d| d.contains("a_25")));
    }

    #[test]
    fn quadratic_helper() {
        let roots = quadratic_roots(&Q.int(-4), &Q.zero(), &Q.one());
        assert_eq!(roots.len(), 2);
        assert!(quadratic_roots(&Q.int(-2), &Q.zero(), &Q.one()).is_empty());
    }
}
