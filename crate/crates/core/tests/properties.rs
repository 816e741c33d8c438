//! Algebraic invariants of Laurent polynomials and their Newton polytopes.

use std::collections::HashMap;

use bloch_core::{IntegralPolytope, LaurentPoly, ParamPoly};
use num_complex::Complex64;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-2i64..=2, -2i64..=2, 0u32..=2), -4i64..=4), 1..6).prop_map(|ts| {
        ts.into_iter()
            .fold(LaurentPoly::zero(2), |acc, ((a, b, l), c)| &acc + &LaurentPoly::term(&[a, b], l, c))
    })
}

fn nonzero() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn newt(f: &LaurentPoly) -> IntegralPolytope {
    IntegralPolytope::hull(&f.support_points()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &LaurentPoly::one(2), f.clone());
    }

    #[test]
    fn newton_polytope_of_product(f in nonzero(), g in nonzero()) {
        let fg = &f * &g;
        prop_assert_eq!(newt(&fg), newt(&f).minkowski_sum(&newt(&g)).unwrap());
    }

    #[test]
    fn facial_polynomials_multiply(f in nonzero(), g in nonzero(), w in prop::collection::vec(-2i64..=2, 3)) {
        let lhs = (&f * &g).facial_polynomial(&w).unwrap();
        let rhs = &f.facial_polynomial(&w).unwrap() * &g.facial_polynomial(&w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(), g in poly(), re in prop::collection::vec(0.3f64..2.0, 3), th in prop::collection::vec(0.0f64..6.28, 3)) {
        let z: Vec<Complex64> = (0..2).map(|i| Complex64::from_polar(re[i], th[i])).collect();
        let l = Complex64::from_polar(re[2], th[2]);
        let env = HashMap::new();
        let ev = |p: &LaurentPoly| p.eval_numeric(&z, l, &env).unwrap();
        let (a, b) = (ev(&(&f * &g)), ev(&f) * ev(&g));
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm())));
    }

    #[test]
    fn exact_division_recovers_factor(f in poly(), g in nonzero()) {
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), Some(f));
    }
}

#[test]
fn symbolic_coefficients_follow_the_same_laws() {
    let a = LaurentPoly::constant(2, ParamPoly::symbol("a"));
    let f = &(&LaurentPoly::var(2, 0) * &a) - &LaurentPoly::lambda(2);
    let g = &LaurentPoly::term(&[0, -1], 0, 3) + &a;
    let fg = &f * &g;
    assert_eq!(fg.exact_divide(&g).unwrap(), Some(f.clone()));
    assert_eq!(fg.exact_divide(&f).unwrap(), Some(g));
    assert_eq!(fg.exact_divide(&LaurentPoly::var(2, 1).checked_add(&a).unwrap()).unwrap(), None);
}
