//! Descending central series, derived series and the predicates built on
//! them: nilpotency, nilindex, filiformity, solvability, ideals.

use crate::algebra::HomAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::Subspace;

/// Terms of a series together with their dimensions and twist stability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub terms: Vec<Subspace>,
    pub dims: Vec<usize>,
    pub alpha_stable: Vec<bool>,
    /// Index of the last computed term; the series is constant from here on.
    pub terminated_at: usize,
}

impl SeriesReport {
    pub fn reaches_zero(&self) -> bool {
        self.terms.last().is_some_and(Subspace::is_zero)
    }

    pub fn all_alpha_stable(&self) -> bool {
        self.alpha_stable.iter().all(|&s| s)
    }

    /// Whether every term contains the next one.
    pub fn is_decreasing(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].contains(&w[1]).unwrap_or(false))
    }
}

fn iterate(g: &HomAlgebra, start: Subspace, mut step: impl FnMut(&Subspace) -> Subspace) -> SeriesReport {
    let mut terms = vec![start];
    for _ in 0..=g.dim() {
        let cur = terms.last().expect("series has a first term");
        if cur.is_zero() {
            break;
        }
        let next = step(cur);
        let done = &next == cur;
        terms.push(next);
        if done {
            break;
        }
    }
    let dims = terms.iter().map(Subspace::dim).collect();
    let alpha_stable = terms.iter().map(|t| t.is_stable_under(g.alpha())).collect();
    let terminated_at = terms.len() - 1;
    SeriesReport { terms, dims, alpha_stable, terminated_at }
}

/// `C^0 = g`, `C^{m+1} = [g, C^m]`.
pub fn central_series(g: &HomAlgebra) -> SeriesReport {
    let whole = Subspace::full(g.field(), g.dim());
    iterate(g, whole.clone(), |c| g.bracket_span(&whole, c))
}

fn require_ideal(g: &HomAlgebra, i: &Subspace) -> Result<()> {
    if !is_ideal(g, i)? {
        return Err(Error::Precondition("subspace is not an ideal".into()));
    }
    Ok(())
}

/// `D^0(I) = I`, `D^{r+1}(I) = [D^r(I), D^r(I)]`.
pub fn derived_series(g: &HomAlgebra, i: &Subspace) -> Result<SeriesReport> {
    require_ideal(g, i)?;
    Ok(iterate(g, i.clone(), |d| g.bracket_span(d, d)))
}

/// `C^0(I) = I`, `C^{r+1}(I) = [I, C^r(I)]`.
pub fn central_series_of_ideal(g: &HomAlgebra, i: &Subspace) -> Result<SeriesReport> {
    require_ideal(g, i)?;
    Ok(iterate(g, i.clone(), |c| g.bracket_span(i, c)))
}

/// Nilpotency verdict with the reason when it is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nilpotency {
    pub nilpotent: bool,
    pub nilindex: Option<usize>,
    pub reason: Option<String>,
}

pub fn nilpotency(g: &HomAlgebra) -> Nilpotency {
    let s = central_series(g);
    if let Some(m) = s.alpha_stable.iter().position(|&ok| !ok) {
        return Nilpotency {
            nilpotent: false,
            nilindex: None,
            reason: Some(format!("C^{m} is not stable under the twist map")),
        };
    }
    if !s.reaches_zero() {
        return Nilpotency {
            nilpotent: false,
            nilindex: None,
            reason: Some(format!("central series stabilizes at dimension {}", s.dims[s.terminated_at])),
        };
    }
    Nilpotency { nilpotent: true, nilindex: Some(s.terminated_at), reason: None }
}

pub fn is_nilpotent(g: &HomAlgebra) -> bool {
    nilpotency(g).nilpotent
}

/// The `m` with `C^m = 0` and `C^{m-1} != 0`, when the algebra is nilpotent.
pub fn nilindex(g: &HomAlgebra) -> Option<usize> {
    nilpotency(g).nilindex
}

/// Nilpotent with `dim C^k = n - k - 1` for `1 <= k <= n - 1`.
pub fn is_filiform(g: &HomAlgebra) -> bool {
    let n = g.dim();
    if n < 2 || !is_nilpotent(g) {
        return false;
    }
    let dims = central_series(g).dims;
    (1..n).all(|k| dims.get(k).copied().unwrap_or(0) == n - k - 1)
}

pub fn is_solvable(g: &HomAlgebra) -> bool {
    let whole = Subspace::full(g.field(), g.dim());
    iterate(g, whole, |d| g.bracket_span(d, d)).reaches_zero()
}

fn check_ambient(g: &HomAlgebra, i: &Subspace) -> Result<()> {
    if i.field() != g.field() {
        return Err(Error::FieldMismatch(g.field(), i.field()));
    }
    if i.ambient() != g.dim() {
        return Err(Error::Dimension(format!("subspace of {} in algebra of dimension {}", i.ambient(), g.dim())));
    }
    Ok(())
}

/// `[g, I] ⊆ I` and `alpha(I) ⊆ I`.
pub fn is_ideal(g: &HomAlgebra, i: &Subspace) -> Result<bool> {
    check_ambient(g, i)?;
    let whole = Subspace::full(g.field(), g.dim());
    Ok(i.is_stable_under(g.alpha()) && i.contains(&g.bracket_span(&whole, i))?)
}

/// `[I, I] ⊆ I` and `alpha(I) ⊆ I`.
pub fn is_subalgebra(g: &HomAlgebra, i: &Subspace) -> Result<bool> {
    check_ambient(g, i)?;
    Ok(i.is_stable_under(g.alpha()) && i.contains(&g.bracket_span(i, i))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exactlin::{Field, Scalar};

    const Q: Field = Field::Rational;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Q.int(x)).collect()
    }

    #[test]
    fn model_central_series() {
        let l4 = catalog::model_ln(Q, 4);
        let s = central_series(&l4);
        assert_eq!(s.dims, vec![5, 3, 2, 1, 0]);
        assert!(s.is_decreasing());
        assert_eq!(nilindex(&l4), Some(4));
        assert!(is_filiform(&l4));
    }

    #[test]
    fn abelian_series() {
        let g = HomAlgebra::new(Q, 4);
        assert_eq!(central_series(&g).dims, vec![4, 0]);
        assert!(!is_filiform(&g));
        assert!(is_solvable(&g));
    }

    #[test]
    fn heisenberg_nilpotent_family() {
        let g = catalog::heisenberg_nilpotent(&ints(&[2, 1, 3, 1, 1]));
        let s = central_series(&g);
        assert_eq!(s.dims, vec![3, 1, 0]);
        assert!(s.all_alpha_stable());
        assert_eq!(nilindex(&g), Some(2));
        assert!(is_filiform(&g));
    }

    #[test]
    fn sl2_is_not_nilpotent_or_solvable() {
        let g = catalog::q_sl2(Q.int(1));
        assert!(!is_nilpotent(&g));
        assert!(!is_solvable(&g));
        assert_eq!(central_series(&g).dims, vec![3, 3]);
    }

    #[test]
    fn derived_series_of_model() {
        let l4 = catalog::model_ln(Q, 4);
        let whole = Subspace::full(Q, 5);
        assert_eq!(derived_series(&l4, &whole).unwrap().dims, vec![5, 3, 0]);
        let c1 = central_series(&l4).terms[1].clone();
        assert!(is_ideal(&l4, &c1).unwrap());
        assert_eq!(central_series_of_ideal(&l4, &c1).unwrap().dims, vec![3, 0]);
        assert_eq!(derived_series(&l4, &c1).unwrap().terms[0], c1);
    }

    #[test]
    fn non_ideal_rejected() {
        let l4 = catalog::model_ln(Q, 4);
        let x0 = Subspace::span(Q, 5, &[l4.unit(0)]).unwrap();
        assert!(!is_ideal(&l4, &x0).unwrap());
        assert!(is_subalgebra(&l4, &x0).unwrap());
        assert!(matches!(derived_series(&l4, &x0), Err(Error::Precondition(_))));
        assert!(is_ideal(&l4, &Subspace::full(Q, 5)).unwrap());
    }
}
