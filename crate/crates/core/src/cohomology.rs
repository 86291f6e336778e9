//! Alternating cochains with values in the algebra, the literal Hom
//! coboundary, the circle product of 2-cochains, and cocycle, coboundary and
//! cohomology dimensions.

use crate::algebra::HomAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vector, zero_vector, Field, Matrix, Scalar, Subspace, Vector};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing `p`-tuples of `0..n` in lexicographic order.
pub fn increasing_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > n {
        return out;
    }
    let mut t: Vec<usize> = (0..p).collect();
    loop {
        out.push(t.clone());
        let Some(i) = (0..p).rev().find(|&i| t[i] < n - p + i) else {
            return out;
        };
        t[i] += 1;
        for j in i + 1..p {
            t[j] = t[j - 1] + 1;
        }
    }
}

/// Lexicographic rank of a strictly increasing tuple.
fn tuple_rank(n: usize, t: &[usize]) -> usize {
    let p = t.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (i, &ti) in t.iter().enumerate() {
        for v in (prev + 1) as usize..ti {
            rank += binomial(n - 1 - v, p - 1 - i);
        }
        prev = ti as isize;
    }
    rank
}

/// Sorts basis indices, returning the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((negative, v))
}

/// An alternating `p`-linear map `g^p -> g`, stored on increasing basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    field: Field,
    dim: usize,
    arity: usize,
    values: Vec<Vector>,
    /// Whether `alpha o phi = phi o alpha^{(x)p}` is required of this cochain.
    pub equivariant: bool,
}

impl Cochain {
    pub fn zero(field: Field, dim: usize, arity: usize) -> Cochain {
        Cochain { field, dim, arity, values: vec![zero_vector(field, dim); binomial(dim, arity)], equivariant: false }
    }

    /// Builds a cochain from its values on increasing tuples.
    pub fn from_fn(field: Field, dim: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Cochain {
        let values = increasing_tuples(dim, arity).iter().map(|t| f(t)).collect();
        Cochain { field, dim, arity, values, equivariant: false }
    }

    /// The bracket of `g` as a 2-cochain.
    pub fn from_bracket(g: &HomAlgebra) -> Cochain {
        Cochain::from_fn(g.field(), g.dim(), 2, |t| g.bracket_basis(t[0], t[1]).to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        increasing_tuples(self.dim, self.arity)
    }

    /// Value on an increasing tuple.
    pub fn get(&self, t: &[usize]) -> &Vector {
        &self.values[tuple_rank(self.dim, t)]
    }

    /// Sets the value on an increasing tuple.
    pub fn set(&mut self, t: &[usize], v: Vector) -> Result<()> {
        if t.len() != self.arity || t.windows(2).any(|w| w[0] >= w[1]) || t.iter().any(|&i| i >= self.dim) {
            return Err(Error::Input(format!("{t:?} is not an increasing {}-tuple", self.arity)));
        }
        if v.len() != self.dim {
            return Err(Error::Dimension("cochain value has the wrong length".into()));
        }
        let r = tuple_rank(self.dim, t);
        self.values[r] = v;
        Ok(())
    }

    /// Value on arbitrary basis indices, extended alternately.
    pub fn eval_basis(&self, idx: &[usize]) -> Vector {
        match sort_with_sign(idx) {
            None => zero_vector(self.field, self.dim),
            Some((negative, t)) => {
                let v = self.get(&t);
                if negative {
                    v.iter().map(|x| -x).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[Vector]) -> Vector {
        assert_eq!(args.len(), self.arity, "cochain arity mismatch");
        let mut out = zero_vector(self.field, self.dim);
        let mut idx = Vec::with_capacity(self.arity);
        self.expand(args, &mut idx, self.field.one(), &mut out);
        out
    }

    fn expand(&self, args: &[Vector], idx: &mut Vec<usize>, coeff: Scalar, out: &mut Vector) {
        let pos = idx.len();
        if pos == args.len() {
            if let Some((negative, t)) = sort_with_sign(idx) {
                let c = if negative { -&coeff } else { coeff };
                axpy(out, &c, self.get(&t));
            }
            return;
        }
        for (i, a) in args[pos].iter().enumerate() {
            if a.is_zero() || idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.expand(args, idx, &coeff * a, out);
            idx.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vector(v))
    }

    /// Increasing tuples with nonzero values.
    pub fn support(&self) -> Vec<(Vec<usize>, Vector)> {
        self.tuples()
            .into_iter()
            .zip(&self.values)
            .filter(|(_, v)| !is_zero_vector(v))
            .map(|(t, v)| (t, v.clone()))
            .collect()
    }

    fn check_same_shape(&self, other: &Cochain) {
        assert!(
            self.field == other.field && self.dim == other.dim && self.arity == other.arity,
            "cochain shape mismatch"
        );
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_same_shape(other);
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            axpy(a, &self.field.one(), b);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        let mut out = self.clone();
        for v in &mut out.values {
            for x in v.iter_mut() {
                *x = &*x * c;
            }
        }
        out
    }

    /// Keeps only the tuples accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&[usize]) -> bool) -> Cochain {
        let mut out = self.clone();
        for (t, v) in self.tuples().iter().zip(out.values.iter_mut()) {
            if !keep(t) {
                *v = zero_vector(self.field, self.dim);
            }
        }
        out
    }

    /// Flat coordinates: tuple-major, then target index.
    pub fn coordinates(&self) -> Vector {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn from_coordinates(field: Field, dim: usize, arity: usize, coords: &[Scalar]) -> Result<Cochain> {
        let count = binomial(dim, arity);
        if coords.len() != count * dim {
            return Err(Error::Dimension("cochain coordinate vector has the wrong length".into()));
        }
        let values = coords.chunks(dim.max(1)).take(count).map(<[Scalar]>::to_vec).collect();
        Ok(Cochain { field, dim, arity, values, equivariant: false })
    }

    /// First increasing tuple where `alpha o phi != phi o alpha^{(x)p}`.
    pub fn equivariance_violation(&self, alpha: &Matrix) -> Option<Vec<usize>> {
        let cols = alpha.column_vectors();
        self.tuples().into_iter().find(|t| {
            let lhs = alpha.apply(self.get(t));
            let args: Vec<Vector> = t.iter().map(|&i| cols[i].clone()).collect();
            lhs != self.eval(&args)
        })
    }
}

fn check_cochain(g: &HomAlgebra, phi: &Cochain) -> Result<()> {
    if phi.field != g.field() {
        return Err(Error::FieldMismatch(g.field(), phi.field));
    }
    if phi.dim != g.dim() {
        return Err(Error::Dimension(format!("cochain on dimension {} for algebra of dimension {}", phi.dim, g.dim())));
    }
    Ok(())
}

/// The literal Hom coboundary
/// `sum_k (-1)^k [alpha^{p-1} x_k, phi(.., ^x_k, ..)]
///  + sum_{i<j} (-1)^{i+j} phi([x_i, x_j], alpha x_0, .., ^x_i, .., ^x_j, .., alpha x_p)`.
pub fn coboundary(g: &HomAlgebra, phi: &Cochain) -> Result<Cochain> {
    check_cochain(g, phi)?;
    let p = phi.arity;
    if p == 0 {
        return Err(Error::Unsupported("coboundary of a 0-cochain".into()));
    }
    let field = g.field();
    let ap = g.alpha().pow((p - 1) as u32)?;
    let acols = g.alpha().column_vectors();
    let apcols = ap.column_vectors();
    let one = field.one();
    let minus = -&one;
    Ok(Cochain::from_fn(field, g.dim(), p + 1, |t| {
        let mut out = zero_vector(field, g.dim());
        for k in 0..=p {
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &x)| x).collect();
            let v = phi.eval_basis(&rest);
            if is_zero_vector(&v) {
                continue;
            }
            let term = g.br(&apcols[t[k]], &v);
            axpy(&mut out, if k % 2 == 0 { &one } else { &minus }, &term);
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let b = g.bracket_basis(t[i], t[j]);
                if is_zero_vector(b) {
                    continue;
                }
                let mut args = vec![b.to_vec()];
                args.extend(t.iter().enumerate().filter(|&(m, _)| m != i && m != j).map(|(_, &x)| acols[x].clone()));
                let term = phi.eval(&args);
                axpy(&mut out, if (i + j) % 2 == 0 { &one } else { &minus }, &term);
            }
        }
        out
    }))
}

/// `phi1(phi2(x, y), alpha z) + phi1(phi2(z, x), alpha y) + phi1(phi2(y, z), alpha x)`.
pub fn circle(alpha: &Matrix, phi1: &Cochain, phi2: &Cochain) -> Result<Cochain> {
    if phi1.arity != 2 || phi2.arity != 2 {
        return Err(Error::Input("circle product needs two 2-cochains".into()));
    }
    if phi1.dim != phi2.dim || phi1.field != phi2.field {
        return Err(Error::Dimension("circle product of cochains of different shape".into()));
    }
    if alpha.rows() != phi1.dim || alpha.cols() != phi1.dim {
        return Err(Error::Dimension("twist map does not match the cochains".into()));
    }
    let cols = alpha.column_vectors();
    let field = phi1.field;
    Ok(Cochain::from_fn(field, phi1.dim, 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let mut out = zero_vector(field, phi1.dim);
        for (a, b, c) in [(x, y, z), (z, x, y), (y, z, x)] {
            let inner = phi2.eval_basis(&[a, b]);
            if !is_zero_vector(&inner) {
                let term = phi1.eval(&[inner, cols[c].clone()]);
                axpy(&mut out, &field.one(), &term);
            }
        }
        out
    }))
}

/// `mu o psi + psi o mu` with `mu` the bracket of `g`.
pub fn delta2_circle_form(g: &HomAlgebra, psi: &Cochain) -> Result<Cochain> {
    check_cochain(g, psi)?;
    let mu = Cochain::from_bracket(g);
    Ok(circle(g.alpha(), &mu, psi)?.add(&circle(g.alpha(), psi, &mu)?))
}

/// Which 2-coboundary the caller wants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaForm {
    Literal,
    Circle,
}

fn coordinate_matrix(g: &HomAlgebra, arity: usize, form: DeltaForm) -> Result<Matrix> {
    let n = g.dim();
    let field = g.field();
    let src = binomial(n, arity) * n;
    let dst = binomial(n, arity + 1) * n;
    let mut cols = Vec::with_capacity(src);
    for c in 0..src {
        let mut e = zero_vector(field, src);
        e[c] = field.one();
        let phi = Cochain::from_coordinates(field, n, arity, &e)?;
        let image = match form {
            DeltaForm::Literal => coboundary(g, &phi)?,
            DeltaForm::Circle => delta2_circle_form(g, &phi)?,
        };
        cols.push(image.coordinates());
    }
    if src == 0 {
        return Ok(Matrix::zeros(field, dst, 0));
    }
    Matrix::from_columns(field, dst, &cols)
}

/// Matrix of the coboundary on cochain coordinates (`arity` to `arity + 1`).
pub fn coboundary_matrix(g: &HomAlgebra, arity: usize) -> Result<Matrix> {
    coordinate_matrix(g, arity, DeltaForm::Literal)
}

/// Basis (as coordinate vectors) of the equivariant `p`-cochains.
fn equivariant_basis(g: &HomAlgebra, arity: usize) -> Result<Vec<Vector>> {
    let n = g.dim();
    let field = g.field();
    let count = binomial(n, arity) * n;
    let mut cols = Vec::with_capacity(count);
    for c in 0..count {
        let mut e = zero_vector(field, count);
        e[c] = field.one();
        let phi = Cochain::from_coordinates(field, n, arity, &e)?;
        let acols = g.alpha().column_vectors();
        let defect = Cochain::from_fn(field, n, arity, |t| {
            let lhs = g.alpha().apply(phi.get(t));
            let args: Vec<Vector> = t.iter().map(|&i| acols[i].clone()).collect();
            let mut d = lhs;
            axpy(&mut d, &-&field.one(), &phi.eval(&args));
            d
        });
        cols.push(defect.coordinates());
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    Ok(Matrix::from_columns(field, count, &cols)?.kernel())
}

/// Dimensions of cocycles, coboundaries and (when the complex closes) cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub arity: usize,
    pub equivariant: bool,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Whether `delta^p o delta^{p-1} = 0` on the chosen cochain spaces.
    pub delta_squared_zero: bool,
    /// `dim Z - dim B`, refused when the composite coboundary is nonzero.
    pub cohomology_dim: Option<usize>,
    pub diagnostic: Option<String>,
}

fn domain(g: &HomAlgebra, arity: usize, equivariant: bool) -> Result<Vec<Vector>> {
    if equivariant {
        return equivariant_basis(g, arity);
    }
    let count = binomial(g.dim(), arity) * g.dim();
    Ok((0..count)
        .map(|c| {
            let mut e = zero_vector(g.field(), count);
            e[c] = g.field().one();
            e
        })
        .collect())
}

/// Cocycle, coboundary and cohomology dimensions in arity `p` in {1, 2, 3}.
pub fn cohomology(g: &HomAlgebra, p: usize, equivariant: bool) -> Result<CohomologyReport> {
    if !(1..=3).contains(&p) {
        return Err(Error::Unsupported(format!("cohomology in arity {p} (supported: 1, 2, 3)")));
    }
    let field = g.field();
    let n = g.dim();
    let dom = domain(g, p, equivariant)?;
    let dp = coboundary_matrix(g, p)?;
    let images: Vec<Vector> = dom.iter().map(|v| dp.apply(v)).collect();
    let rank_dp = Subspace::span(field, dp.rows(), &images)?.dim();
    let cocycle_dim = dom.len() - rank_dp;

    let (coboundary_dim, delta_squared_zero) = if p == 1 {
        (0, true)
    } else {
        let prev = domain(g, p - 1, equivariant)?;
        let dq = coboundary_matrix(g, p - 1)?;
        let b: Vec<Vector> = prev.iter().map(|v| dq.apply(v)).collect();
        let closed = b.iter().all(|v| is_zero_vector(&dp.apply(v)));
        (Subspace::span(field, binomial(n, p) * n, &b)?.dim(), closed)
    };
    let (cohomology_dim, diagnostic) = if delta_squared_zero {
        (Some(cocycle_dim - coboundary_dim), None)
    } else {
        (None, Some(format!("delta^{p} o delta^{} is nonzero for this algebra; cohomology refused", p - 1)))
    };
    Ok(CohomologyReport {
        arity: p,
        equivariant,
        cochain_dim: dom.len(),
        cocycle_dim,
        coboundary_dim,
        delta_squared_zero,
        cohomology_dim,
        diagnostic,
    })
}

pub fn cocycle_space_dim(g: &HomAlgebra, p: usize, equivariant: bool) -> Result<usize> {
    Ok(cohomology(g, p, equivariant)?.cocycle_dim)
}

pub fn coboundary_space_dim(g: &HomAlgebra, p: usize, equivariant: bool) -> Result<usize> {
    Ok(cohomology(g, p, equivariant)?.coboundary_dim)
}

/// `dim Z - dim B`; refused when the composite coboundary does not vanish.
pub fn cohomology_dim(g: &HomAlgebra, p: usize, equivariant: bool) -> Result<usize> {
    let r = cohomology(g, p, equivariant)?;
    r.cohomology_dim.ok_or_else(|| Error::Precondition(r.diagnostic.unwrap_or_default()))
}

/// Basis of the 2-cocycles for the chosen coboundary form.
pub fn cocycle_basis(g: &HomAlgebra, p: usize, form: DeltaForm) -> Result<Vec<Cochain>> {
    if form == DeltaForm::Circle && p != 2 {
        return Err(Error::Unsupported("the circle form is defined on 2-cochains only".into()));
    }
    let m = coordinate_matrix(g, p, form)?;
    m.kernel().iter().map(|v| Cochain::from_coordinates(g.field(), g.dim(), p, v)).collect()
}

/// Comparison of the literal coboundary with the circle form on one 2-cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaGate {
    /// `delta psi == mu o psi + psi o mu` exactly.
    pub raw_equal: bool,
    /// `delta psi == -(mu o psi + psi o mu)`, the relation the sign conventions predict.
    pub agrees_up_to_sign: bool,
    pub literal_zero: bool,
    pub circle_zero: bool,
}

pub fn delta_gate(g: &HomAlgebra, psi: &Cochain) -> Result<DeltaGate> {
    let lit = coboundary(g, psi)?;
    let circ = delta2_circle_form(g, psi)?;
    let neg = circ.scale(&-&g.field().one());
    Ok(DeltaGate {
        raw_equal: lit == circ,
        agrees_up_to_sign: lit == neg,
        literal_zero: lit.is_zero(),
        circle_zero: circ.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    const Q: Field = Field::Rational;

    #[test]
    fn tuples_and_ranks() {
        let ts = increasing_tuples(5, 3);
        assert_eq!(ts.len(), 10);
        for (r, t) in ts.iter().enumerate() {
            assert_eq!(tuple_rank(5, t), r);
        }
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert!(increasing_tuples(2, 3).is_empty());
    }

    #[test]
    fn alternation() {
        let g = catalog::model_ln(Q, 3);
        let mu = Cochain::from_bracket(&g);
        assert_eq!(mu.eval_basis(&[1, 0]), vec![Q.int(0), Q.int(0), -Q.int(1), Q.int(0)]);
        assert!(is_zero_vector(&mu.eval_basis(&[2, 2])));
    }

    #[test]
    fn bracket_is_circle_closed_iff_hom_jacobi() {
        let g = catalog::model_ln(Q, 5);
        let mu = Cochain::from_bracket(&g);
        assert!(circle(g.alpha(), &mu, &mu).unwrap().is_zero());
        let ex = catalog::example4(Q.int(1), Q.int(1), Q.int(1), Q.int(1));
        let bad = ex.clone().with_alpha(Matrix::identity(Q, 3)).unwrap();
        assert!(circle(ex.alpha(), &Cochain::from_bracket(&ex), &Cochain::from_bracket(&ex)).unwrap().is_zero());
        assert!(!circle(bad.alpha(), &Cochain::from_bracket(&bad), &Cochain::from_bracket(&bad)).unwrap().is_zero());
    }

    #[test]
    fn literal_coboundary_of_bracket_vanishes_on_lie() {
        let g = catalog::model_ln(Q, 4);
        assert!(coboundary(&g, &Cochain::from_bracket(&g)).unwrap().is_zero());
        let z = Cochain::zero(Q, 5, 2);
        assert!(coboundary(&g, &z).unwrap().is_zero());
    }

    #[test]
    fn abelian_cohomology_is_everything() {
        let g = HomAlgebra::new(Q, 3);
        for p in 1..=3 {
            let r = cohomology(&g, p, false).unwrap();
            assert_eq!(r.cohomology_dim, Some(3 * binomial(3, p)));
        }
    }

    #[test]
    fn arity_zero_rejected() {
        let g = catalog::model_ln(Q, 2);
        assert!(matches!(coboundary(&g, &Cochain::zero(Q, 3, 0)), Err(Error::Unsupported(_))));
        assert!(matches!(cohomology(&g, 4, false), Err(Error::Unsupported(_))));
    }
}
