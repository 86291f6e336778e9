//! The model filiform algebra `L_n`, the index set `Δ(n)`, the cocycles
//! `ψ_{k,r}`, deformed brackets `μ₀ + ψ`, their Hom-Jacobi residuals, and the
//! multiplicative twist families on `L_n`.

use std::collections::BTreeMap;

use crate::algebra::{catalog, HomAlgebra};
use crate::cohomology::{circle, Cochain};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, zero_vector, Field, Matrix, Scalar};

/// `(n+1)`-dimensional model algebra with an optional lower-triangular twist.
pub fn model_ln(field: Field, n: usize, alpha: Option<&Matrix>) -> Result<HomAlgebra> {
    if n < 2 {
        return Err(Error::Input(format!("model algebra needs n >= 2, got {n}")));
    }
    let g = catalog::model_ln(field, n);
    match alpha {
        None => Ok(g),
        Some(a) => {
            if a.rows() != n + 1 || a.cols() != n + 1 {
                return Err(Error::Dimension(format!("twist map must be {0}x{0}", n + 1)));
            }
            if !a.is_lower_triangular() {
                return Err(Error::Precondition("twist map is not lower triangular".into()));
            }
            g.with_alpha(a.clone())
        }
    }
}

/// `{(k, r) : 1 <= k <= n-1, 2k+1 < r <= n}`, plus `((n-1)/2, n)` for odd `n`.
pub fn delta_index_set(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (1..n).flat_map(|k| (2 * k + 2..=n).map(move |r| (k, r))).collect();
    if n % 2 == 1 && n >= 3 && !out.contains(&((n - 1) / 2, n)) {
        out.push(((n - 1) / 2, n));
    }
    out.sort_unstable();
    out
}

fn binom(q: i64, p: i64) -> i64 {
    if p < 0 || q < 0 || q < p {
        return 0;
    }
    (0..p).fold(1, |acc, i| acc * (q - i) / (i + 1))
}

/// Value of `ψ_{k,r}(x_i, x_j)` for `i < j` as (target index, integer coefficient).
pub fn psi_value(n: usize, k: usize, r: usize, i: usize, j: usize) -> Option<(usize, i64)> {
    if !(1 <= i && i <= k && k <= j && j <= n && i < j) {
        return None;
    }
    let (ii, jj, kk, rr) = (i as i64, j as i64, k as i64, r as i64);
    let c = binom(jj - kk - 1, kk - ii);
    let target = ii + jj + rr - 2 * kk - 1;
    if c == 0 || target > n as i64 {
        return None;
    }
    let sign = if (kk - ii + 1) % 2 == 0 { 1 } else { -1 };
    Some((target as usize, sign * c))
}

fn check_delta(n: usize, k: usize, r: usize) -> Result<()> {
    if !delta_index_set(n).contains(&(k, r)) {
        return Err(Error::Input(format!("({k}, {r}) is not in the index set for n = {n}")));
    }
    Ok(())
}

/// The 2-cochain `ψ_{k,r}` on the `(n+1)`-dimensional model space.
pub fn psi_cochain(field: Field, n: usize, k: usize, r: usize) -> Result<Cochain> {
    check_delta(n, k, r)?;
    Ok(Cochain::from_fn(field, n + 1, 2, |t| {
        let mut v = zero_vector(field, n + 1);
        if let Some((target, c)) = psi_value(n, k, r, t[0], t[1]) {
            v[target] = field.int(c);
        }
        v
    }))
}

/// Sparse coefficients `a_{k,r}` of a deformation `ψ = Σ a_{k,r} ψ_{k,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiCoefficients {
    n: usize,
    field: Field,
    coeffs: BTreeMap<(usize, usize), Scalar>,
}

impl PsiCoefficients {
    pub fn new(field: Field, n: usize) -> PsiCoefficients {
        PsiCoefficients { n, field, coeffs: BTreeMap::new() }
    }

    pub fn from_ints(field: Field, n: usize, entries: &[((usize, usize), i64)]) -> Result<PsiCoefficients> {
        let mut c = PsiCoefficients::new(field, n);
        for &((k, r), v) in entries {
            c.set(k, r, field.int(v))?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Sets `a_{k,r}`; zero values are dropped.
    pub fn set(&mut self, k: usize, r: usize, value: Scalar) -> Result<()> {
        check_delta(self.n, k, r)?;
        if value.field() != self.field {
            return Err(Error::FieldMismatch(self.field, value.field()));
        }
        if value.is_zero() {
            self.coeffs.remove(&(k, r));
        } else {
            self.coeffs.insert((k, r), value);
        }
        Ok(())
    }

    pub fn get(&self, k: usize, r: usize) -> Scalar {
        self.coeffs.get(&(k, r)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero entries in index order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Full coefficient vector over `Δ(n)` in index order.
    pub fn dense(&self) -> Vec<Scalar> {
        delta_index_set(self.n).iter().map(|&(k, r)| self.get(k, r)).collect()
    }

    /// The cochain `Σ a_{k,r} ψ_{k,r}`.
    pub fn cochain(&self) -> Cochain {
        let f = self.field;
        Cochain::from_fn(f, self.n + 1, 2, |t| {
            let mut v = zero_vector(f, self.n + 1);
            for (&(k, r), a) in &self.coeffs {
                if let Some((target, c)) = psi_value(self.n, k, r, t[0], t[1]) {
                    v[target] += &(a * &f.int(c));
                }
            }
            v
        })
    }
}

/// `μ₀ + Σ a_{k,r} ψ_{k,r}` with the given twist (identity when `None`).
pub fn assemble(coeffs: &PsiCoefficients, alpha: Option<&Matrix>) -> Result<HomAlgebra> {
    let mut g = model_ln(coeffs.field, coeffs.n, alpha)?;
    let psi = coeffs.cochain();
    for (t, v) in psi.support() {
        let mut w = g.bracket_basis(t[0], t[1]).to_vec();
        axpy(&mut w, &coeffs.field.one(), &v);
        g.set_bracket(t[0], t[1], &w)?;
    }
    Ok(g)
}

/// Splits the bracket of an algebra on the model space into `μ₀` and `ψ = μ - μ₀`.
pub fn split_bracket(g: &HomAlgebra) -> Result<(Cochain, Cochain)> {
    if g.dim() < 3 {
        return Err(Error::Input("deformed brackets live in dimension >= 3".into()));
    }
    let mu0 = Cochain::from_bracket(&catalog::model_ln(g.field(), g.dim() - 1));
    let mu = Cochain::from_bracket(g);
    let psi = mu.add(&mu0.scale(&-&g.field().one()));
    Ok((mu0, psi))
}

/// Residuals of `μ ∘ μ = μ₀∘μ₀ + (μ₀∘ψ + ψ∘μ₀) + ψ∘ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationReport {
    /// Full `μ ∘ μ`; the verdict.
    pub combined: Cochain,
    /// `μ₀∘μ₀`, zero for any lower-triangular twist.
    pub base: Cochain,
    /// `μ₀∘ψ + ψ∘μ₀`.
    pub cocycle: Cochain,
    /// `ψ∘ψ`.
    pub jacobi: Cochain,
    /// Twist map has the diagonal-first-column shape under which the two
    /// conditions decouple.
    pub decoupling_shape: bool,
    pub verdict: bool,
}

impl DeformationReport {
    pub fn cocycle_zero(&self) -> bool {
        self.cocycle.is_zero()
    }

    pub fn jacobi_zero(&self) -> bool {
        self.jacobi.is_zero()
    }

    /// Part of a residual on triples containing index 0.
    pub fn with_zero(c: &Cochain) -> Cochain {
        c.restrict(|t| t[0] == 0)
    }

    /// Part of a residual on triples avoiding index 0.
    pub fn without_zero(c: &Cochain) -> Cochain {
        c.restrict(|t| t[0] != 0)
    }
}

/// Whether `alpha` is lower triangular with `alpha(x_0) = ρ₀₀ x_0`.
pub fn has_decoupling_shape(alpha: &Matrix) -> bool {
    alpha.is_lower_triangular() && (1..alpha.rows()).all(|i| alpha.get(i, 0).is_zero())
}

/// Computes the residuals; for the decoupling twist shape the equivalence
/// "combined vanishes iff both parts vanish" is asserted.
pub fn deformation_check(g: &HomAlgebra) -> Result<DeformationReport> {
    let (mu0, psi) = split_bracket(g)?;
    let a = g.alpha();
    let base = circle(a, &mu0, &mu0)?;
    let cocycle = circle(a, &mu0, &psi)?.add(&circle(a, &psi, &mu0)?);
    let jacobi = circle(a, &psi, &psi)?;
    let combined = circle(a, &Cochain::from_bracket(g), &Cochain::from_bracket(g))?;
    let decoupling_shape = has_decoupling_shape(a);
    let verdict = combined.is_zero();
    if decoupling_shape && verdict != (cocycle.is_zero() && jacobi.is_zero()) {
        return Err(Error::Invariant("residual split does not decouple for a diagonal-first-column twist".into()));
    }
    Ok(DeformationReport { combined, base, cocycle, jacobi, decoupling_shape, verdict })
}

/// The three multiplicative twist families on `L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicativeFamily {
    /// `n = 2`: `α(x_0) = ρ₀₀x_0 + ρ₁₀x_1 + ρ₂₀x_2`, `α(x_1) = ρ₁₁x_1 + ρ₂₁x_2`, `α(x_2) = ρ₀₀ρ₁₁x_2`.
    L2 { rho00: Scalar, rho10: Scalar, rho20: Scalar, rho11: Scalar, rho21: Scalar },
    /// `n >= 3`, `ρ₀₀ != 0`: `col0 = (ρ_{i,0})_{i=0..n}`, `col2 = (ρ_{i,2})_{i=2..n-1}`,
    /// and `ρ_{n-1,1}`, `ρ_{n,1}`.
    Regular { n: usize, col0: Vec<Scalar>, col2: Vec<Scalar>, rho_nm1_1: Scalar, rho_n_1: Scalar },
    /// `ρ₀₀ = 0`: `col0 = (ρ_{i,0})_{i=1..n}`, `col1 = (ρ_{i,1})_{i=1..n}`, `α(x_k) = 0` for `k >= 2`.
    Degenerate { n: usize, col0: Vec<Scalar>, col1: Vec<Scalar> },
}

impl MultiplicativeFamily {
    pub fn n(&self) -> usize {
        match self {
            MultiplicativeFamily::L2 { .. } => 2,
            MultiplicativeFamily::Regular { n, .. } | MultiplicativeFamily::Degenerate { n, .. } => *n,
        }
    }

    /// The twist matrix, column `k` holding `α(x_k)`.
    pub fn alpha(&self) -> Result<Matrix> {
        match self {
            MultiplicativeFamily::L2 { rho00, rho10, rho20, rho11, rho21 } => {
                let f = rho00.field();
                let mut m = Matrix::zeros(f, 3, 3);
                m.set(0, 0, rho00.clone());
                m.set(1, 0, rho10.clone());
                m.set(2, 0, rho20.clone());
                m.set(1, 1, rho11.clone());
                m.set(2, 1, rho21.clone());
                m.set(2, 2, rho00 * rho11);
                Ok(m)
            }
            MultiplicativeFamily::Regular { n, col0, col2, rho_nm1_1, rho_n_1 } => {
                let n = *n;
                if n < 3 {
                    return Err(Error::Input("the regular family needs n >= 3".into()));
                }
                if col0.len() != n + 1 || col2.len() != n - 2 {
                    return Err(Error::Input(format!(
                        "regular family on n = {n} takes {} column-0 and {} column-2 parameters",
                        n + 1,
                        n - 2
                    )));
                }
                let f = col0[0].field();
                let rho00 = &col0[0];
                let inv = rho00.inv().ok_or_else(|| Error::Precondition("the regular family needs ρ₀₀ != 0".into()))?;
                let r2 = |i: usize| &col2[i - 2];
                let mut m = Matrix::zeros(f, n + 1, n + 1);
                for (i, c) in col0.iter().enumerate() {
                    m.set(i, 0, c.clone());
                }
                for i in 2..n {
                    m.set(i - 1, 1, r2(i) * &inv);
                }
                m.set(n - 1, 1, m.get(n - 1, 1) + rho_nm1_1);
                m.set(n, 1, m.get(n, 1) + rho_n_1);
                for i in 2..n {
                    m.set(i, 2, r2(i).clone());
                }
                m.set(n, 2, m.get(n, 2) + &(rho00 * rho_nm1_1));
                for k in 3..=n {
                    let scale = rho00.pow(k as i64 - 2);
                    for i in 2..=(n + 2 - k).min(n - 1) {
                        m.set(k + i - 2, k, &scale * r2(i));
                    }
                }
                Ok(m)
            }
            MultiplicativeFamily::Degenerate { n, col0, col1 } => {
                let n = *n;
                if col0.len() != n || col1.len() != n {
                    return Err(Error::Input(format!("degenerate family on n = {n} takes {n} + {n} parameters")));
                }
                let f = col0[0].field();
                let mut m = Matrix::zeros(f, n + 1, n + 1);
                for i in 1..=n {
                    m.set(i, 0, col0[i - 1].clone());
                    m.set(i, 1, col1[i - 1].clone());
                }
                Ok(m)
            }
        }
    }
}

/// `L_n` with a twist from one of the multiplicative families; the result is
/// checked to be multiplicative and Hom-Lie.
pub fn multiplicative_ln_alpha(family: &MultiplicativeFamily) -> Result<HomAlgebra> {
    let a = family.alpha()?;
    let g = catalog::model_ln(a.field(), family.n()).with_alpha(a)?;
    if let Some((i, j)) = g.multiplicative_violation() {
        return Err(Error::Invariant(format!("family twist is not multiplicative on ([x_{i}, x_{j}])")));
    }
    if let Some(((i, j, k), _)) = g.hom_jacobi_violation() {
        return Err(Error::Invariant(format!("family twist violates Hom-Jacobi on ({i}, {j}, {k})")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{is_filiform, nilindex};

    const Q: Field = Field::Rational;

    #[test]
    fn index_sets() {
        assert_eq!(delta_index_set(4), vec![(1, 4)]);
        assert_eq!(delta_index_set(5), vec![(1, 4), (1, 5), (2, 5)]);
        assert_eq!(delta_index_set(6), vec![(1, 4), (1, 5), (1, 6), (2, 6)]);
    }

    #[test]
    fn psi_values() {
        let p = psi_cochain(Q, 4, 1, 4).unwrap();
        assert_eq!(p.support(), vec![(vec![1, 2], vec![Q.int(0), Q.int(0), Q.int(0), Q.int(0), Q.int(-1)])]);
        let p = psi_cochain(Q, 5, 2, 5).unwrap();
        let s = p.support();
        assert_eq!(s.len(), 2);
        assert_eq!(p.get(&[2, 3])[5], Q.int(-1));
        assert_eq!(p.get(&[1, 4])[5], Q.int(1));
        assert!(psi_cochain(Q, 5, 2, 4).is_err());
    }

    #[test]
    fn model_properties() {
        let g = model_ln(Q, 4, None).unwrap();
        assert!(is_filiform(&g) && g.is_lie());
        assert_eq!(nilindex(&g), Some(4));
        let g6 = model_ln(Q, 6, None).unwrap();
        let pairs = (0..7).flat_map(|i| (i + 1..7).map(move |j| (i, j)));
        assert_eq!(pairs.filter(|&(i, j)| g6.bracket_basis(i, j).iter().any(|x| !x.is_zero())).count(), 5);
        let mut upper = Matrix::identity(Q, 5);
        upper.set(0, 1, Q.int(1));
        assert!(matches!(model_ln(Q, 4, Some(&upper)), Err(Error::Precondition(_))));
    }

    #[test]
    fn assembled_mu52() {
        let c = PsiCoefficients::from_ints(Q, 4, &[((1, 4), 1)]).unwrap();
        let g = assemble(&c, None).unwrap();
        assert!(g.check_hom_jacobi() && is_filiform(&g));
        let r = deformation_check(&g).unwrap();
        assert!(r.verdict && r.cocycle_zero() && r.jacobi_zero());
    }

    #[test]
    fn cocycle_residual_with_scaled_first_vector() {
        let mut a = Matrix::identity(Q, 5);
        a.set(0, 0, Q.int(2));
        let c = PsiCoefficients::from_ints(Q, 4, &[((1, 4), 1)]).unwrap();
        // every candidate target index exceeds n = 4, so nothing survives
        assert!(deformation_check(&assemble(&c, Some(&a)).unwrap()).unwrap().verdict);
        let mut a = Matrix::identity(Q, 6);
        a.set(0, 0, Q.int(2));
        let c = PsiCoefficients::from_ints(Q, 5, &[((1, 4), 1)]).unwrap();
        let r = deformation_check(&assemble(&c, Some(&a)).unwrap()).unwrap();
        assert!(!r.cocycle_zero());
        assert_eq!(r.cocycle.get(&[0, 1, 2])[5], Q.int(1));
        assert!(DeformationReport::without_zero(&r.cocycle).is_zero());
    }

    #[test]
    fn families_are_multiplicative() {
        let q = |x: i64| Q.int(x);
        let l2 = MultiplicativeFamily::L2 { rho00: q(2), rho10: q(1), rho20: q(1), rho11: q(3), rho21: q(1) };
        multiplicative_ln_alpha(&l2).unwrap();
        let reg = MultiplicativeFamily::Regular {
            n: 4,
            col0: vec![q(1), q(0), q(0), q(0), q(0)],
            col2: vec![q(1), q(0)],
            rho_nm1_1: q(0),
            rho_n_1: q(0),
        };
        multiplicative_ln_alpha(&reg).unwrap();
        let deg = MultiplicativeFamily::Degenerate { n: 4, col0: vec![q(1); 4], col1: vec![q(1); 4] };
        multiplicative_ln_alpha(&deg).unwrap();
    }
}
