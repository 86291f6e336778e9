//! New Hom-Lie algebras from old ones: Yau twist, beta twist, derived
//! algebras and untwisting.

use crate::algebra::{weak_morphism_violation, HomAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace};
use crate::series::central_series;

fn ensure_hom_lie(out: HomAlgebra, what: &str) -> Result<HomAlgebra> {
    match out.hom_jacobi_violation() {
        None => Ok(out),
        Some(((i, j, k), _)) => {
            Err(Error::Invariant(format!("{what} produced a bracket violating Hom-Jacobi on ({i}, {j}, {k})")))
        }
    }
}

fn require_bracket_morphism(m: &Matrix, g: &HomAlgebra, name: &str) -> Result<()> {
    if let Some((i, j)) = weak_morphism_violation(m, g, g)? {
        return Err(Error::Precondition(format!("{name} is not a bracket morphism: fails on ([x_{i}, x_{j}])")));
    }
    Ok(())
}

/// `(g, [alpha., alpha.], alpha)` for a Lie algebra `g` and a bracket morphism `alpha`.
pub fn yau_twist(g: &HomAlgebra, alpha: &Matrix) -> Result<HomAlgebra> {
    if !g.is_lie() {
        return Err(Error::Precondition("Yau twist needs a Lie algebra".into()));
    }
    require_bracket_morphism(alpha, g, "twist map")?;
    let n = g.dim();
    let cols = alpha.column_vectors();
    let mut out = HomAlgebra::new(g.field(), n);
    for i in 0..n {
        for j in i + 1..n {
            out.set_bracket(i, j, &g.br(&cols[i], &cols[j]))?;
        }
    }
    out.set_alpha(alpha.clone())?;
    out.set_labels(g.labels().map(<[String]>::to_vec))?;
    ensure_hom_lie(out, "Yau twist")
}

/// `(g, beta o [.,.], beta alpha)` for a weak morphism `beta` of `g`.
pub fn beta_twist(g: &HomAlgebra, beta: &Matrix) -> Result<HomAlgebra> {
    require_bracket_morphism(beta, g, "beta")?;
    let out = g.compose_bracket(beta)?.with_alpha(beta.mul(g.alpha())?)?;
    ensure_hom_lie(out, "beta twist")
}

/// `(g, alpha^n o [.,.], alpha^{n+1})` for multiplicative `g`.
pub fn nth_derived(g: &HomAlgebra, n: u32) -> Result<HomAlgebra> {
    if let Some((i, j)) = g.multiplicative_violation() {
        return Err(Error::Precondition(format!("algebra is not multiplicative: fails on ([x_{i}, x_{j}])")));
    }
    let out = g.compose_bracket(&g.alpha().pow(n)?)?.with_alpha(g.alpha().pow(n + 1)?)?;
    ensure_hom_lie(out, "derived algebra")
}

/// `(g, alpha^{-1} o [.,.])` with identity twist, for invertible multiplicative `alpha`.
pub fn untwist(g: &HomAlgebra) -> Result<HomAlgebra> {
    let inv = g.alpha().inverse()?;
    if let Some((i, j)) = g.multiplicative_violation() {
        return Err(Error::Precondition(format!("algebra is not multiplicative: fails on ([x_{i}, x_{j}])")));
    }
    let out = g.compose_bracket(&inv)?.with_alpha(Matrix::identity(g.field(), g.dim()))?;
    if !out.is_lie() {
        return Err(Error::Invariant("untwisted bracket is not a Lie bracket".into()));
    }
    Ok(out)
}

/// Which construction the `twist` front end applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistVariant {
    Yau,
    Beta,
    Derived(u32),
    Untwist,
}

impl std::str::FromStr for TwistVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<TwistVariant> {
        match s {
            "yau" => Ok(TwistVariant::Yau),
            "beta" => Ok(TwistVariant::Beta),
            "untwist" => Ok(TwistVariant::Untwist),
            _ => s
                .strip_prefix("derived:")
                .and_then(|n| n.parse().ok())
                .map(TwistVariant::Derived)
                .ok_or_else(|| Error::Input(format!("unknown twist variant '{s}'"))),
        }
    }
}

/// Applies a variant; `map` is required for `Yau` and `Beta`.
pub fn apply(variant: TwistVariant, g: &HomAlgebra, map: Option<&Matrix>) -> Result<HomAlgebra> {
    let need = || map.ok_or_else(|| Error::Input("this variant needs a map".into()));
    match variant {
        TwistVariant::Yau => yau_twist(g, need()?),
        TwistVariant::Beta => beta_twist(g, need()?),
        TwistVariant::Derived(n) => nth_derived(g, n),
        TwistVariant::Untwist => untwist(g),
    }
}

/// Term-by-term containment `C^p(twisted) ⊆ C^p(original)`; the shorter
/// series is padded with its final term.
pub fn series_containment(twisted: &HomAlgebra, original: &HomAlgebra) -> Result<Vec<bool>> {
    let a = central_series(twisted).terms;
    let b = central_series(original).terms;
    let len = a.len().max(b.len());
    let at = |s: &[Subspace], p: usize| s[p.min(s.len() - 1)].clone();
    (0..len).map(|p| at(&b, p).contains(&at(&a, p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exactlin::{Field, Scalar};
    use crate::series::{is_filiform, is_nilpotent};

    const Q: Field = Field::Rational;

    fn ints<const N: usize>(v: [i64; N]) -> [Scalar; N] {
        v.map(|x| Q.int(x))
    }

    #[test]
    fn example32_verdicts() {
        let g = catalog::example32_lie(Q);
        let singular = catalog::example32_singular_morphism(&ints([1, 2, 3, -1, 1, 2]));
        let t = yau_twist(&g, &singular).unwrap();
        assert!(is_nilpotent(&t) && !is_filiform(&t));
        let auto = catalog::example32_automorphism(&ints([2, 1, 0, 1, 1, 0, 1]));
        let t = yau_twist(&g, &auto).unwrap();
        assert!(is_filiform(&t));
        assert!(series_containment(&t, &g).unwrap().iter().all(|&c| c));
    }

    #[test]
    fn identity_twists_are_trivial() {
        let g = catalog::model_ln(Q, 4);
        let id = Matrix::identity(Q, 5);
        assert_eq!(yau_twist(&g, &id).unwrap(), g);
        assert_eq!(beta_twist(&g, &id).unwrap(), g);
        assert_eq!(nth_derived(&g, 0).unwrap(), g);
        assert_eq!(untwist(&g).unwrap(), g);
    }

    #[test]
    fn non_morphism_is_named() {
        let g = catalog::model_ln(Q, 3);
        let mut m = Matrix::identity(Q, 4);
        m.set(0, 0, Q.int(2));
        let err = yau_twist(&g, &m).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.contains("x_0")));
    }

    #[test]
    fn untwist_round_trip() {
        let g = catalog::example32_lie(Q);
        let auto = catalog::example32_automorphism(&ints([3, 0, 1, 0, 2, 1, 1]));
        let t = yau_twist(&g, &auto).unwrap();
        let u = untwist(&t).unwrap();
        assert!(u.is_lie() && is_filiform(&u));
    }

    #[test]
    fn singular_untwist_rejected() {
        let g = catalog::model_ln(Q, 3).with_alpha(Matrix::zeros(Q, 4, 4)).unwrap();
        assert!(matches!(untwist(&g), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("derived:3".parse::<TwistVariant>().unwrap(), TwistVariant::Derived(3));
        assert!("derived:x".parse::<TwistVariant>().is_err());
    }
}
