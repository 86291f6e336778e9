use super::matrix::{axpy, is_zero_vector, Matrix, Vector};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `field^n`, stored as the reduced row-echelon basis.
/// Equal subspaces have identical representations, so `==` is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::Dimension(format!("vector of length {} in ambient dimension {ambient}", v.len())));
            }
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient));
        }
        let m = Matrix::from_rows(field, vectors.to_vec())?;
        let (r, pivots) = m.rref_with_pivots();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect::<Vec<_>>();
        let basis = if rows.is_empty() { Matrix::zeros(field, 0, ambient) } else { Matrix::from_rows(field, rows)? };
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!("ambient dimensions {} and {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating the pivot coordinates; zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if !r[p].is_zero() {
                let c = -&r[p];
                axpy(&mut r, &c, self.basis.row(k));
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && is_zero_vector(&self.reduce(v))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient));
        }
        // relations c with sum c_i A_i + sum c_{a+j} B_j = 0
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors());
        let m = Matrix::from_columns(self.field(), self.ambient, &cols)?;
        let vectors: Vec<Vector> = m
            .kernel()
            .into_iter()
            .map(|c| {
                let mut x = vec![self.field().zero(); self.ambient];
                for i in 0..a {
                    axpy(&mut x, &c[i], self.basis.row(i));
                }
                x
            })
            .collect();
        Subspace::span(self.field(), self.ambient, &vectors)
    }

    /// Image of the subspace under a square matrix.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::Dimension("matrix does not act on this subspace".into()));
        }
        let vs: Vec<Vector> = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
        Subspace::span(self.field(), m.rows(), &vs)
    }

    /// Whether the matrix maps the subspace into itself.
    pub fn is_stable_under(&self, m: &Matrix) -> bool {
        (0..self.dim()).all(|i| self.contains_vector(&m.apply(self.basis.row(i))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::unit_vector;

    const Q: Field = Field::Rational;

    #[test]
    fn sum_is_idempotent() {
        let v = Subspace::span(Q, 3, &[vec![Q.int(1), Q.int(2), Q.int(0)]]).unwrap();
        assert_eq!(v.sum(&v).unwrap(), v);
    }

    #[test]
    fn axes_intersect_trivially() {
        let a = Subspace::span(Q, 3, &[unit_vector(Q, 3, 0)]).unwrap();
        let b = Subspace::span(Q, 3, &[unit_vector(Q, 3, 1)]).unwrap();
        assert!(a.intersection(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Subspace::full(Q, 2);
        let b = Subspace::full(Q, 3);
        assert!(matches!(a.sum(&b), Err(Error::Dimension(_))));
    }
}
