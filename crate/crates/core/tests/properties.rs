use homlie::algebra::format::{parse_algebra, write_algebra};
use homlie::algebra::{catalog, check_morphism_via_graph, direct_sum, is_morphism};
use homlie::basis_change::{
    apply_change, extract_psi_coefficients, inverse_change, realize, AdaptedChange, Elementary,
};
use homlie::classification::classify;
use homlie::filiform::{assemble, PsiCoefficients};
use homlie::series::central_series;
use homlie::{Field, HomAlgebra, Matrix, Scalar, Subspace, Vector};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q.frac(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |s| !s.is_zero())
}

fn residue(p: u64) -> impl Strategy<Value = Scalar> {
    (0..p as i64).prop_map(move |v| Field::prime(p).unwrap().int(v))
}

fn vector(len: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), len)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(vector(cols), rows).prop_map(|r| Matrix::from_rows(Q, r).unwrap())
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    matrix(n, n).prop_filter("invertible", |m| m.rank() == m.rows())
}

/// Random skew bracket with random twist, not necessarily Hom-Lie.
fn algebra(n: usize) -> impl Strategy<Value = HomAlgebra> {
    let pairs = n * (n - 1) / 2;
    (prop::collection::vec(vector(n), pairs), matrix(n, n)).prop_map(move |(br, alpha)| {
        let mut g = HomAlgebra::new(Q, n);
        let mut it = br.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                g.set_bracket(i, j, &it.next().unwrap()).unwrap();
            }
        }
        g.with_alpha(alpha).unwrap()
    })
}

fn example4() -> impl Strategy<Value = HomAlgebra> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| catalog::example4(a, b, c, d))
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn prime_field_axioms(a in residue(7), b in residue(7), c in residue(7)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b - &c), &(&a * &b) - &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!(a.pow(6).is_one());
        }
    }

    #[test]
    fn rref_and_kernel(m in matrix(3, 5)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let ker = m.kernel();
        prop_assert_eq!(ker.len(), m.cols() - m.rank());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in invertible(4)) {
        let inv = m.inverse().unwrap();
        prop_assert!(m.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn grassmann_formula(u in prop::collection::vec(vector(5), 0..4), v in prop::collection::vec(vector(5), 0..4)) {
        let u = Subspace::span(Q, 5, &u).unwrap();
        let v = Subspace::span(Q, 5, &v).unwrap();
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains(&u).unwrap() && u.contains(&i).unwrap());
    }

    #[test]
    fn bracket_bilinear_and_skew(g in algebra(4), x in vector(4), y in vector(4), z in vector(4), c in rational()) {
        let sx: Vector = x.iter().map(|v| v * &c).collect();
        let xz: Vector = x.iter().zip(&z).map(|(a, b)| a + b).collect();
        prop_assert_eq!(g.br(&sx, &y), g.br(&x, &y).iter().map(|v| v * &c).collect::<Vector>());
        let lhs = g.br(&xz, &y);
        let rhs: Vector = g.br(&x, &y).iter().zip(g.br(&z, &y)).map(|(a, b)| a + &b).collect();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.br(&x, &y), g.br(&y, &x).iter().map(|v| -v).collect::<Vector>());
        prop_assert!(g.br(&x, &x).iter().all(Scalar::is_zero));
    }

    #[test]
    fn conjugation_preserves_structure(g in example4(), f in invertible(3)) {
        let h = g.conjugate(&f).unwrap();
        prop_assert_eq!(h.check_hom_jacobi(), g.check_hom_jacobi());
        prop_assert_eq!(h.check_multiplicative(), g.check_multiplicative());
        prop_assert_eq!(h.is_lie(), g.is_lie());
        prop_assert_eq!(central_series(&h).dims, central_series(&g).dims);
        prop_assert!(is_morphism(&f, &h, &g).unwrap());
    }

    #[test]
    fn graph_criterion_agrees(g in example4(), h in example4(), f in matrix(3, 3)) {
        prop_assert_eq!(check_morphism_via_graph(&f, &g, &h).unwrap(), is_morphism(&f, &g, &h).unwrap());
    }

    #[test]
    fn direct_sum_of_hom_lie(g in example4(), h in example4()) {
        let s = direct_sum(&g, &h).unwrap();
        prop_assert!(s.check_hom_jacobi());
        prop_assert_eq!(s.check_multiplicative(), g.check_multiplicative() && h.check_multiplicative());
    }

    #[test]
    fn direct_sum_detects_failure(g in algebra(3), h in example4()) {
        let s = direct_sum(&g, &h).unwrap();
        prop_assert_eq!(s.check_hom_jacobi(), g.check_hom_jacobi());
    }

    #[test]
    fn file_round_trip(g in algebra(4)) {
        prop_assert_eq!(parse_algebra(&write_algebra(&g)).unwrap(), g);
    }
}

fn psi6() -> HomAlgebra {
    let c = PsiCoefficients::from_ints(Q, 5, &[((1, 4), 2), ((1, 5), 3), ((2, 5), 4)]).unwrap();
    assemble(&c, None).unwrap()
}

fn general(n: usize) -> impl Strategy<Value = AdaptedChange> {
    (nonzero_rational(), vector(n - 1), nonzero_rational(), vector(n - 2)).prop_map(|(a0, a, b1, b)| {
        let mut av = vec![a0];
        av.extend(a);
        let mut bv = vec![Q.zero(), b1];
        bv.extend(b);
        AdaptedChange::General { a: av, b: bv }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn nu_composes(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(), d in nonzero_rational()) {
        let g = psi6();
        let nu = |a: &Scalar, b: &Scalar| AdaptedChange::from(Elementary::Nu { a: a.clone(), b: b.clone() });
        let twice = apply_change(&nu(&c, &d), &apply_change(&nu(&a, &b), &g).unwrap()).unwrap();
        let once = apply_change(&nu(&(&a * &c), &(&b * &d)), &g).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn inverse_change_restores(change in general(6)) {
        let g = psi6();
        prop_assume!(realize(&change, &g).is_ok());
        let h = apply_change(&change, &g).unwrap();
        let back = inverse_change(&change, &g).unwrap();
        prop_assert_eq!(apply_change(&back, &h).unwrap(), g.clone());
    }

    #[test]
    fn adapted_changes_keep_normal_form(change in general(6)) {
        let g = psi6();
        prop_assume!(realize(&change, &g).is_ok());
        let h = apply_change(&change, &g).unwrap();
        prop_assert!(extract_psi_coefficients(&h).is_ok());
        prop_assert!(h.check_hom_jacobi());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classification_is_orbit_invariant(change in general(6)) {
        let g = psi6();
        prop_assume!(realize(&change, &g).is_ok());
        let base = classify(&g).unwrap();
        let moved = classify(&apply_change(&change, &g).unwrap()).unwrap();
        prop_assert_eq!(moved.name, base.name);
    }
}
