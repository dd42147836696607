//! Property tests for the exact polynomial layer and the operator
//! identities that everything else leans on.

use proptest::prelude::*;

use navier_core::diffops::{
    self, divergence, gradient, laplacian, navier_apply, navier_apply_normalized, so_action,
    so_action_scalar, x1_integrate, LameParameters,
};
use navier_core::monomial::Monomial;
use navier_core::poly::Polynomial;
use navier_core::rational::{rat, Rational};
use navier_core::vecpoly::VectorPolynomial;

const NVARS: usize = 3;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0u32..3, NVARS), arb_rational()),
        0..6,
    )
    .prop_map(|terms| {
        let mut p = Polynomial::zero(NVARS);
        for (exps, c) in terms {
            p.add_term(Monomial(exps), c);
        }
        p
    })
}

fn arb_vec_poly() -> impl Strategy<Value = VectorPolynomial> {
    prop::collection::vec(arb_poly(), NVARS).prop_map(VectorPolynomial::new)
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Polynomial::zero(NVARS));
    }

    #[test]
    fn canonical_coefficients(a in arb_poly(), b in arb_poly()) {
        prop_assert!((&a * &b).audit_canonical());
        prop_assert!((&a + &b).audit_canonical());
        prop_assert!(a.partial(0).audit_canonical());
    }

    #[test]
    fn partials_commute(a in arb_poly(), i in 0usize..NVARS, j in 0usize..NVARS) {
        prop_assert_eq!(a.partial(i).partial(j), a.partial(j).partial(i));
    }

    #[test]
    fn divide_by_variable_round_trip(a in arb_poly(), i in 0usize..NVARS) {
        let xi = Polynomial::variable(NVARS, i);
        let shifted = &xi * &a;
        prop_assert_eq!(shifted.divide_by_variable(i), Some(a));
    }

    #[test]
    fn x1_integration_is_right_inverse(a in arb_poly()) {
        prop_assert_eq!(x1_integrate(&a).partial(0), a);
    }

    #[test]
    fn div_grad_is_laplacian(a in arb_poly()) {
        prop_assert_eq!(divergence(&gradient(&a)), laplacian(&a));
    }

    #[test]
    fn navier_is_linear(v in arb_vec_poly(), w in arb_vec_poly(), c in arb_rational()) {
        let params = LameParameters::new(rat(2, 1), rat(1, 3)).unwrap();
        let lhs = navier_apply(&(&v + &w.scale(&c)), &params);
        let rhs = &navier_apply(&v, &params) + &navier_apply(&w, &params).scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn navier_formulations_agree(v in arb_vec_poly()) {
        // ι₁(Δ + b·grad div) = ι₁Δ + (ι₁+ι₂)·grad div
        let params = LameParameters::new(rat(3, 2), rat(-1, 2)).unwrap();
        let lhs = navier_apply(&v, &params);
        let rhs = navier_apply_normalized(&v, params.b()).scale(params.iota1());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_commutes_with_so4(v in prop::collection::vec(
        prop::collection::vec(
            (prop::collection::vec(0u32..2, 4), arb_rational()), 0..4), 4)
    ) {
        let v = VectorPolynomial::new(v.into_iter().map(|terms| {
            let mut p = Polynomial::zero(4);
            for (exps, c) in terms {
                p.add_term(Monomial(exps), c);
            }
            p
        }).collect());
        for (r, s) in [(1usize, 2usize), (1, 3), (2, 4), (3, 4)] {
            let lhs = so_action(r, s, &diffops::d_operator(&v).unwrap());
            let rhs = diffops::d_operator(&so_action(r, s, &v)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn so_action_preserves_solutions(seed in 0u64..1000) {
        // push a known solution around by the generators; it must stay a
        // solution (checked here on gradients of harmonics plus the
        // Euler field, the cheap-to-generate solution stock)
        let params = LameParameters::new(rat(1, 1), rat(1, 2)).unwrap();
        let basis = navier_core::harmonics::harmonic_basis(NVARS, 2 + (seed % 3) as u32);
        let idx = (seed as usize / 3) % basis.len();
        let v = gradient(&basis[idx].1);
        for (r, s) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let moved = so_action(r, s, &v);
            prop_assert!(navier_apply(&moved, &params).is_zero());
        }
    }

    #[test]
    fn psi_is_equivariant(seed in 0u64..100) {
        // ψ(a_{r,s}(h)) = so_action(r, s, ψ(h)) on harmonics
        let k = 2 + (seed % 3) as u32;
        let basis = navier_core::harmonics::harmonic_basis(NVARS, k);
        let h = &basis[seed as usize % basis.len()].1;
        for (r, s) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let lhs = navier_core::decomp::psi_map(&so_action_scalar(r, s, h));
            let rhs = so_action(r, s, &navier_core::decomp::psi_map(h));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn phi_maps_are_equivariant(seed in 0u64..100) {
        let k = 3 + (seed % 2) as u32;
        let basis = navier_core::harmonics::harmonic_basis(NVARS, k - 1);
        let h = &basis[seed as usize % basis.len()].1;
        for (r, s) in [(1usize, 2usize), (2, 3)] {
            let rotated = so_action_scalar(r, s, h);
            let lhs1 = navier_core::decomp::phi1_map(&rotated, NVARS, k).unwrap();
            let rhs1 = so_action(r, s, &navier_core::decomp::phi1_map(h, NVARS, k).unwrap());
            prop_assert_eq!(lhs1, rhs1);
            let lhs2 = navier_core::decomp::phi2_map(&rotated);
            let rhs2 = so_action(r, s, &navier_core::decomp::phi2_map(h));
            prop_assert_eq!(lhs2, rhs2);
        }
    }
}
