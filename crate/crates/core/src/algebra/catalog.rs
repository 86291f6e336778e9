//! Named example algebras: parametric constructors plus the shipped fixture
//! files under `catalog/`.

use super::format::parse_algebra;
use super::HomAlgebra;
use crate::error::Result;
use crate::exactlin::{Field, Matrix, Scalar};

/// Shipped fixture files, by file name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("example4.alg", include_str!("../../catalog/example4.alg")),
    ("example4_untwisted.alg", include_str!("../../catalog/example4_untwisted.alg")),
    ("q_sl2_q2.alg", include_str!("../../catalog/q_sl2_q2.alg")),
    ("sl2.alg", include_str!("../../catalog/sl2.alg")),
    ("twisted_heisenberg.alg", include_str!("../../catalog/twisted_heisenberg.alg")),
    ("heisenberg_nilpotent.alg", include_str!("../../catalog/heisenberg_nilpotent.alg")),
    ("l4.alg", include_str!("../../catalog/l4.alg")),
    ("l4_fp3.alg", include_str!("../../catalog/l4_fp3.alg")),
    ("mu52.alg", include_str!("../../catalog/mu52.alg")),
    ("mu52_disguised.alg", include_str!("../../catalog/mu52_disguised.alg")),
    ("mu62.alg", include_str!("../../catalog/mu62.alg")),
    ("example32.alg", include_str!("../../catalog/example32.alg")),
    ("example32_auto.map", include_str!("../../catalog/example32_auto.map")),
    ("example32_singular.map", include_str!("../../catalog/example32_singular.map")),
];

/// Parses a shipped fixture by file name.
pub fn fixture(name: &str) -> Option<Result<HomAlgebra>> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, text)| parse_algebra(text))
}

fn set(g: &mut HomAlgebra, i: usize, j: usize, entries: &[(usize, Scalar)]) {
    let mut v = vec![g.field().zero(); g.dim()];
    for (k, c) in entries {
        v[*k] = c.clone();
    }
    g.set_bracket(i, j, &v).expect("catalog bracket is well formed");
}

fn diag(field: Field, d: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(field, d.len(), d.len());
    for (i, x) in d.iter().enumerate() {
        m.set(i, i, x.clone());
    }
    m
}

/// `(n+1)`-dimensional model filiform algebra `[x_0, x_i] = x_{i+1}`, identity twist.
pub fn model_ln(field: Field, n: usize) -> HomAlgebra {
    let mut g = HomAlgebra::new(field, n + 1);
    for i in 1..n {
        set(&mut g, 0, i, &[(i + 1, field.one())]);
    }
    g
}

/// Three-dimensional example with bracket
/// `[x1,x2] = a x1 + b x3`, `[x1,x3] = c x2`, `[x2,x3] = d x1 + 2a x3`
/// and twist `diag(1, 2, 2)`.
pub fn example4(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> HomAlgebra {
    let f = a.field();
    let mut g = HomAlgebra::new(f, 3);
    let two_a = &f.int(2) * &a;
    set(&mut g, 0, 1, &[(0, a), (2, b)]);
    set(&mut g, 0, 2, &[(1, c)]);
    set(&mut g, 1, 2, &[(0, d), (2, two_a)]);
    g.set_alpha(diag(f, &[f.int(1), f.int(2), f.int(2)])).expect("3x3 twist");
    g
}

/// q-deformed sl2: `[x1,x2] = -2q x2`, `[x1,x3] = 2 x3`,
/// `[x2,x3] = -(1+q)/2 x1`, twist `diag(q, q^2, q)`.
pub fn q_sl2(q: Scalar) -> HomAlgebra {
    let f = q.field();
    let mut g = HomAlgebra::new(f, 3);
    set(&mut g, 0, 1, &[(1, &f.int(-2) * &q)]);
    set(&mut g, 0, 2, &[(2, f.int(2))]);
    let half = f.frac(-1, 2).expect("2 is invertible");
    set(&mut g, 1, 2, &[(0, &half * &(&f.one() + &q))]);
    g.set_alpha(diag(f, &[q.clone(), &q * &q, q.clone()])).expect("3x3 twist");
    g
}

/// sl2 in the basis (H, E, F) with `[H,E] = -2E`, `[H,F] = 2F`, `[E,F] = -H`
/// and the six-parameter twist matrix `[[a, c, d], [2d, b, e], [2c, f, b]]`.
/// Not every parameter choice is Hom-Lie; callers verify.
pub fn sl2_with_twist(p: &[Scalar; 6]) -> HomAlgebra {
    let [a, b, c, d, e, ff] = p.clone();
    let f = a.field();
    let mut g = HomAlgebra::new(f, 3);
    set(&mut g, 0, 1, &[(1, f.int(-2))]);
    set(&mut g, 0, 2, &[(2, f.int(2))]);
    set(&mut g, 1, 2, &[(0, f.int(-1))]);
    let two = f.int(2);
    let m = Matrix::from_rows(
        f,
        vec![vec![a, c.clone(), d.clone()], vec![&two * &d, b.clone(), e], vec![&two * &c, ff, b]],
    )
    .expect("3x3 twist");
    g.set_alpha(m).expect("3x3 twist");
    g
}

/// Twisted Heisenberg algebra from `[a11, a12, a21, a22, a31, a32]`:
/// `[x1, x2] = det x3` with twist `[[a11, a12, 0], [a21, a22, 0], [a31, a32, det]]`.
pub fn twisted_heisenberg(p: &[Scalar]) -> HomAlgebra {
    assert_eq!(p.len(), 6, "six twist parameters");
    let f = p[0].field();
    let det = &(&p[0] * &p[3]) - &(&p[1] * &p[2]);
    let mut g = HomAlgebra::new(f, 3);
    set(&mut g, 0, 1, &[(2, det.clone())]);
    let m = Matrix::from_rows(
        f,
        vec![
            vec![p[0].clone(), p[1].clone(), f.zero()],
            vec![p[2].clone(), p[3].clone(), f.zero()],
            vec![p[4].clone(), p[5].clone(), det],
        ],
    )
    .expect("3x3 twist");
    g.set_alpha(m).expect("3x3 twist");
    g
}

/// The nilpotent sub-family `a12 = 0` of [`twisted_heisenberg`], from
/// `[a11, a21, a22, a31, a32]`.
pub fn heisenberg_nilpotent(p: &[Scalar]) -> HomAlgebra {
    assert_eq!(p.len(), 5, "five twist parameters");
    let f = p[0].field();
    twisted_heisenberg(&[p[0].clone(), f.zero(), p[1].clone(), p[2].clone(), p[3].clone(), p[4].clone()])
}

/// Four-dimensional filiform Lie algebra `[x1,x4] = x3`, `[x1,x3] = x2`
/// (indices 0..3 for x1..x4), identity twist.
pub fn example32_lie(field: Field) -> HomAlgebra {
    let mut g = HomAlgebra::new(field, 4);
    set(&mut g, 0, 3, &[(2, field.one())]);
    set(&mut g, 0, 2, &[(1, field.one())]);
    g
}

/// Matrix from images `alpha(x_i) = sum_k rows[i][k] x_k`.
fn from_images(field: Field, images: Vec<Vec<Scalar>>) -> Matrix {
    Matrix::from_rows(field, images).expect("square image table").transpose()
}

/// Singular bracket endomorphism of [`example32_lie`] from
/// `[a12, a13, a14, a42, a43, a44]`.
pub fn example32_singular_morphism(p: &[Scalar; 6]) -> Matrix {
    let f = p[0].field();
    let z = f.zero();
    from_images(
        f,
        vec![
            vec![z.clone(), p[0].clone(), p[1].clone(), p[2].clone()],
            vec![z.clone(); 4],
            vec![z.clone(); 4],
            vec![z, p[3].clone(), p[4].clone(), p[5].clone()],
        ],
    )
}

/// Automorphism family of [`example32_lie`] from
/// `[a11, a12, a13, a14, a33, a42, a43]` (requires `a11 * a33 != 0`).
pub fn example32_automorphism(p: &[Scalar; 7]) -> Matrix {
    let [a11, a12, a13, a14, a33, a42, a43] = p.clone();
    let f = a11.field();
    let z = f.zero();
    from_images(
        f,
        vec![
            vec![a11.clone(), a12, a13, a14],
            vec![z.clone(), &a11 * &a33, z.clone(), z.clone()],
            vec![z.clone(), &a11 * &a43, a33.clone(), z],
            vec![f.zero(), a42, a43, &a33 / &a11],
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::write_algebra;

    #[test]
    fn fixtures_parse_and_round_trip() {
        for (name, text) in FIXTURES {
            if name.ends_with(".map") {
                continue;
            }
            let g = parse_algebra(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let again = parse_algebra(&write_algebra(&g)).unwrap();
            assert_eq!(g, again, "{name}");
        }
    }

    #[test]
    fn fixtures_match_constructors() {
        let q = Field::Rational;
        let ex4 = fixture("example4.alg").unwrap().unwrap();
        assert!(ex4.same_bracket(&example4(q.int(1), q.int(1), q.int(1), q.int(1))));
        let l4 = fixture("l4.alg").unwrap().unwrap();
        assert_eq!(l4.alpha(), model_ln(q, 4).alpha());
        assert!(l4.same_bracket(&model_ln(q, 4)));
    }
}
