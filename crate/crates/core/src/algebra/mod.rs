//! The Hom-Lie data model: a skew bracket given by structure constants and a
//! twist map, with axiom checks, morphism tests, direct sums and the center.

pub mod catalog;
pub mod format;

use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vector, unit_vector, zero_vector, Field, Matrix, Scalar, Subspace, Vector};

/// A finite-dimensional algebra with a skew bracket and a linear twist map.
///
/// The twist map is stored column-wise: column `j` holds the coordinates of
/// `alpha(x_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAlgebra {
    dim: usize,
    field: Field,
    /// `consts[(i * dim + j) * dim + k]` is the `x_k` coefficient of `[x_i, x_j]`.
    consts: Vec<Scalar>,
    alpha: Matrix,
    labels: Option<Vec<String>>,
}

impl HomAlgebra {
    /// Abelian algebra with identity twist.
    pub fn new(field: Field, dim: usize) -> HomAlgebra {
        HomAlgebra {
            dim,
            field,
            consts: vec![field.zero(); dim * dim * dim],
            alpha: Matrix::identity(field, dim),
            labels: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) -> Result<()> {
        if let Some(l) = &labels {
            if l.len() != self.dim {
                return Err(Error::Dimension(format!("{} labels for dimension {}", l.len(), self.dim)));
            }
        }
        self.labels = labels;
        Ok(())
    }

    pub fn set_alpha(&mut self, alpha: Matrix) -> Result<()> {
        if alpha.field() != self.field {
            return Err(Error::FieldMismatch(self.field, alpha.field()));
        }
        if alpha.rows() != self.dim || alpha.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "twist map is {}x{}, algebra has dimension {}",
                alpha.rows(),
                alpha.cols(),
                self.dim
            )));
        }
        self.alpha = alpha;
        Ok(())
    }

    pub fn with_alpha(mut self, alpha: Matrix) -> Result<HomAlgebra> {
        self.set_alpha(alpha)?;
        Ok(self)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * self.dim
    }

    /// Sets `[x_i, x_j] = value` (and `[x_j, x_i] = -value`).
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &[Scalar]) -> Result<()> {
        let n = self.dim;
        if i >= n || j >= n {
            return Err(Error::Input(format!("basis index out of range in pair ({i}, {j})")));
        }
        if value.len() != n {
            return Err(Error::Dimension(format!("bracket value of length {} in dimension {n}", value.len())));
        }
        if let Some(x) = value.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        if i == j {
            if is_zero_vector(value) {
                return Ok(());
            }
            return Err(Error::Input(format!("[x_{i}, x_{i}] must vanish")));
        }
        let (a, b) = (self.idx(i, j), self.idx(j, i));
        for k in 0..n {
            self.consts[a + k] = value[k].clone();
            self.consts[b + k] = -&value[k];
        }
        Ok(())
    }

    /// Sets a single structure constant `c_{ij}^k` (skew partner updated).
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> Result<()> {
        let mut v = self.bracket_basis(i, j).to_vec();
        if k >= self.dim {
            return Err(Error::Input(format!("target index {k} out of range")));
        }
        v[k] = c;
        self.set_bracket(i, j, &v)
    }

    /// `[x_i, x_j]` as a coordinate slice.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let a = self.idx(i, j);
        &self.consts[a..a + self.dim]
    }

    /// Bilinear extension of the structure constants; panics on length mismatch.
    pub fn br(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        assert!(u.len() == self.dim && v.len() == self.dim, "vector length mismatch in bracket");
        let mut out = zero_vector(self.field, self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || i == j {
                    continue;
                }
                let c = self.bracket_basis(i, j);
                if is_zero_vector(c) {
                    continue;
                }
                axpy(&mut out, &(ui * vj), c);
            }
        }
        out
    }

    /// Checked bracket evaluation.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {} in dimension {}",
                u.len(),
                v.len(),
                self.dim
            )));
        }
        Ok(self.br(u, v))
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    pub fn alpha_of(&self, v: &[Scalar]) -> Vector {
        self.alpha.apply(v)
    }

    /// Matrix of `v -> [x, v]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.br(x, &self.unit(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square ad matrix")
    }

    /// Whether every structure constant vanishes.
    pub fn is_abelian(&self) -> bool {
        is_zero_vector(&self.consts)
    }

    /// Same bracket table (twist maps ignored).
    pub fn same_bracket(&self, other: &HomAlgebra) -> bool {
        self.dim == other.dim && self.consts == other.consts
    }

    /// Cyclic sum `[a x_i, [x_j, x_k]] + [a x_j, [x_k, x_i]] + [a x_k, [x_i, x_j]]`
    /// for an arbitrary twist `a`.
    pub fn jacobi_defect_with(&self, a: &Matrix, i: usize, j: usize, k: usize) -> Vector {
        let ai = a.column(i);
        let aj = a.column(j);
        let ak = a.column(k);
        let mut s = self.br(&ai, self.bracket_basis(j, k));
        let t = self.br(&aj, self.bracket_basis(k, i));
        let u = self.br(&ak, self.bracket_basis(i, j));
        for ((x, y), z) in s.iter_mut().zip(&t).zip(&u) {
            *x += y;
            *x += z;
        }
        s
    }

    /// Hom-Jacobi cyclic sum on one basis triple.
    pub fn hom_jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vector {
        self.jacobi_defect_with(&self.alpha, i, j, k)
    }

    fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.dim;
        (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
    }

    /// Hom-Jacobi identity on all increasing basis triples.
    pub fn check_hom_jacobi(&self) -> bool {
        self.triples().all(|(i, j, k)| is_zero_vector(&self.hom_jacobi_defect(i, j, k)))
    }

    /// First increasing triple violating Hom-Jacobi, with its defect.
    pub fn hom_jacobi_violation(&self) -> Option<((usize, usize, usize), Vector)> {
        self.triples().find_map(|(i, j, k)| {
            let d = self.hom_jacobi_defect(i, j, k);
            (!is_zero_vector(&d)).then_some(((i, j, k), d))
        })
    }

    /// Plain Jacobi identity, ignoring the twist map.
    pub fn is_lie(&self) -> bool {
        let id = Matrix::identity(self.field, self.dim);
        self.triples().all(|(i, j, k)| is_zero_vector(&self.jacobi_defect_with(&id, i, j, k)))
    }

    /// `alpha[x_i, x_j] = [alpha x_i, alpha x_j]` on all basis pairs.
    pub fn check_multiplicative(&self) -> bool {
        self.multiplicative_violation().is_none()
    }

    pub fn multiplicative_violation(&self) -> Option<(usize, usize)> {
        let cols = self.alpha.column_vectors();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = self.alpha.apply(self.bracket_basis(i, j));
                let rhs = self.br(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Conjugate by a change of basis whose columns are the new basis vectors:
    /// new bracket `f^-1 o [,] o (f x f)`, new twist `f^-1 alpha f`.
    pub fn conjugate(&self, f: &Matrix) -> Result<HomAlgebra> {
        if f.rows() != self.dim || f.cols() != self.dim {
            return Err(Error::Dimension("change of basis has the wrong size".into()));
        }
        let finv = f.inverse()?;
        self.conjugate_with_inverse(f, &finv)
    }

    pub(crate) fn conjugate_with_inverse(&self, f: &Matrix, finv: &Matrix) -> Result<HomAlgebra> {
        let n = self.dim;
        let cols = f.column_vectors();
        let mut out = HomAlgebra::new(self.field, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = finv.apply(&self.br(&cols[i], &cols[j]));
                out.set_bracket(i, j, &v)?;
            }
        }
        out.alpha = finv.mul(&self.alpha)?.mul(f)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Bracket `m o [,]` with the same twist map.
    pub fn compose_bracket(&self, m: &Matrix) -> Result<HomAlgebra> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension("bracket post-composition has the wrong size".into()));
        }
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = m.apply(self.bracket_basis(i, j));
                out.set_bracket(i, j, &v)?;
            }
        }
        Ok(out)
    }

    /// The center `{z : [x, z] = 0 for all x}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // rows indexed by (i, k), columns by j: sum_j z_j c_{ij}^k = 0
        let mut m = Matrix::zeros(self.field, n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        m.set(i * n + k, j, c.clone());
                    }
                }
            }
        }
        Subspace::span(self.field, n, &m.kernel()).expect("kernel vectors have ambient length")
    }

    /// Span of all brackets `[a, b]` with `a` in `a_space` and `b` in `b_space`.
    pub fn bracket_span(&self, a_space: &Subspace, b_space: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for u in a_space.basis_vectors() {
            for v in b_space.basis_vectors() {
                let w = self.br(&u, &v);
                if !is_zero_vector(&w) {
                    vs.push(w);
                }
            }
        }
        Subspace::span(self.field, self.dim, &vs).expect("bracket values have ambient length")
    }
}

fn check_map_shape(f: &Matrix, g: &HomAlgebra, h: &HomAlgebra) -> Result<()> {
    if g.field != h.field || f.field() != g.field {
        return Err(Error::FieldMismatch(g.field, if g.field != h.field { h.field } else { f.field() }));
    }
    if f.rows() != h.dim || f.cols() != g.dim {
        return Err(Error::Dimension(format!("map is {}x{}, expected {}x{}", f.rows(), f.cols(), h.dim, g.dim)));
    }
    Ok(())
}

/// `f[x, y]_g = [f x, f y]_h` on all basis pairs.
pub fn is_weak_morphism(f: &Matrix, g: &HomAlgebra, h: &HomAlgebra) -> Result<bool> {
    Ok(weak_morphism_violation(f, g, h)?.is_none())
}

/// First basis pair on which `f` fails to intertwine the brackets.
pub fn weak_morphism_violation(f: &Matrix, g: &HomAlgebra, h: &HomAlgebra) -> Result<Option<(usize, usize)>> {
    check_map_shape(f, g, h)?;
    let cols = f.column_vectors();
    for i in 0..g.dim {
        for j in i + 1..g.dim {
            if f.apply(g.bracket_basis(i, j)) != h.br(&cols[i], &cols[j]) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Weak morphism that also satisfies `f alpha_g = alpha_h f`.
pub fn is_morphism(f: &Matrix, g: &HomAlgebra, h: &HomAlgebra) -> Result<bool> {
    if !is_weak_morphism(f, g, h)? {
        return Ok(false);
    }
    Ok(f.mul(&g.alpha)? == h.alpha.mul(f)?)
}

/// Morphism test through the graph `{(x, f x)}` as a subalgebra of `g + h`.
pub fn check_morphism_via_graph(f: &Matrix, g: &HomAlgebra, h: &HomAlgebra) -> Result<bool> {
    check_map_shape(f, g, h)?;
    let sum = direct_sum(g, h)?;
    let graph_vectors: Vec<Vector> = (0..g.dim)
        .map(|i| {
            let mut v = g.unit(i);
            v.extend(f.column(i));
            v
        })
        .collect();
    let graph = Subspace::span(g.field, sum.dim, &graph_vectors)?;
    crate::series::is_subalgebra(&sum, &graph)
}

/// Direct sum with block bracket and block-diagonal twist map.
pub fn direct_sum(g: &HomAlgebra, h: &HomAlgebra) -> Result<HomAlgebra> {
    if g.field != h.field {
        return Err(Error::FieldMismatch(g.field, h.field));
    }
    let (m, n) = (g.dim, h.dim);
    let mut out = HomAlgebra::new(g.field, m + n);
    for i in 0..m {
        for j in i + 1..m {
            let mut v = g.bracket_basis(i, j).to_vec();
            v.extend(zero_vector(g.field, n));
            out.set_bracket(i, j, &v)?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut v = zero_vector(g.field, m);
            v.extend_from_slice(h.bracket_basis(i, j));
            out.set_bracket(m + i, m + j, &v)?;
        }
    }
    out.alpha = Matrix::block_diag(&g.alpha, &h.alpha)?;
    Ok(out)
}

/// Twist-map difference `f alpha_g - alpha_h f`, zero exactly for morphisms.
pub fn intertwining_defect(f: &Matrix, g: &HomAlgebra, h: &HomAlgebra) -> Result<Matrix> {
    check_map_shape(f, g, h)?;
    f.mul(&g.alpha)?.sub(&h.alpha.mul(f)?)
}

#[cfg(test)]
mod tests {
    use super::catalog;
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn model_bracket_value() {
        let l4 = catalog::model_ln(Q, 4);
        assert_eq!(l4.br(&l4.unit(0), &l4.unit(1)), l4.unit(2));
    }

    #[test]
    fn example4_instance_bracket() {
        let g = catalog::example4(Q.int(1), Q.int(1), Q.int(1), Q.int(2));
        // basis x_1..x_3 stored as indices 0..2
        let v = g.br(&g.unit(1), &g.unit(2));
        assert_eq!(v, vec![Q.int(2), Q.int(0), Q.int(2)]);
    }

    #[test]
    fn example4_identity_twist_defect() {
        let g = catalog::example4(Q.int(1), Q.int(1), Q.int(1), Q.int(1));
        assert!(g.check_hom_jacobi());
        let id = g.clone().with_alpha(Matrix::identity(Q, 3)).unwrap();
        assert!(!id.check_hom_jacobi());
        assert_eq!(id.hom_jacobi_defect(0, 1, 2), vec![Q.int(0), Q.int(1), Q.int(0)]);
    }

    #[test]
    fn lie_predicate_on_example4() {
        assert!(!catalog::example4(Q.int(1), Q.int(1), Q.int(1), Q.int(1)).is_lie());
        assert!(catalog::example4(Q.int(0), Q.int(1), Q.int(1), Q.int(1)).is_lie());
        assert!(catalog::model_ln(Q, 5).is_lie());
    }

    #[test]
    fn q_sl2_not_multiplicative() {
        assert!(!catalog::q_sl2(Q.int(2)).check_multiplicative());
        assert!(catalog::q_sl2(Q.int(1)).check_multiplicative());
    }

    #[test]
    fn centers() {
        let l4 = catalog::model_ln(Q, 4);
        assert_eq!(l4.center(), Subspace::span(Q, 5, &[l4.unit(4)]).unwrap());
        let h = catalog::twisted_heisenberg(&[Q.int(1), Q.int(0), Q.int(0), Q.int(1), Q.int(0), Q.int(0)]);
        assert_eq!(h.center(), Subspace::span(Q, 3, &[h.unit(2)]).unwrap());
        assert_eq!(HomAlgebra::new(Q, 4).center().dim(), 4);
    }

    #[test]
    fn zero_map_is_weak_morphism() {
        let g = catalog::model_ln(Q, 3);
        let z = Matrix::zeros(Q, 4, 4);
        assert!(is_weak_morphism(&z, &g, &g).unwrap());
        assert!(is_morphism(&z, &g, &g).unwrap());
        assert!(check_morphism_via_graph(&z, &g, &g).unwrap());
    }

    #[test]
    fn direct_sum_with_trivial_algebra() {
        let g = catalog::example4(Q.int(1), Q.int(2), Q.int(3), Q.int(4));
        let s = direct_sum(&g, &HomAlgebra::new(Q, 0)).unwrap();
        assert_eq!(s, g.clone().tap_labels(None));
    }

    impl HomAlgebra {
        fn tap_labels(mut self, l: Option<Vec<String>>) -> Self {
            self.labels = l;
            self
        }
    }
}
