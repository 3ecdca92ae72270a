//! Property-based invariants over randomly sampled inputs. Everything is
//! exact, so every property is an equality, never a tolerance.

use proptest::prelude::*;

use nova::lie::{bracket, LieConfig, LieElement};
use nova::novikov::{self, catalog};
use nova::scalar::{qi, qone, Q};
use nova::series::{IteratedSeries, LaurentPoly, DEFAULT_WINDOW};
use nova::vacuum::{act, apply_lie, ModuleConfig, PBWVector, VertexOps};
use num::Zero;

fn arb_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-5i64..=5), arb_q()), 0..5)
        .prop_map(|terms| LaurentPoly::from_terms("x", terms))
}

/// Sparse series in Q((x))[[z]] at order 4.
fn arb_series() -> impl Strategy<Value = IteratedSeries> {
    prop::collection::vec(((0u32..=4), arb_laurent()), 0..4).prop_map(|terms| {
        let mut s = IteratedSeries::zero("x", &["z"], 4);
        for (k, p) in terms {
            s.add_to_coeff(&[k], &p);
        }
        s
    })
}

/// A unit series: monomial constant term plus higher terms.
fn arb_unit_series() -> impl Strategy<Value = IteratedSeries> {
    (
        -3i64..=3,
        (1i64..=5, 1i64..=3),
        prop::collection::vec(((1u32..=4), arb_laurent()), 0..3),
    )
        .prop_map(|(e, (n, d), terms)| {
            let mut s = IteratedSeries::from_laurent(
                &LaurentPoly::monomial("x", e, Q::new(n.into(), d.into())),
                &["z"],
                4,
            );
            for (k, p) in terms {
                s.add_to_coeff(&[k], &p);
            }
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn laurent_ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn series_ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn twisted_derivation_product_rule(
        a in arb_laurent(),
        b in arb_laurent(),
        eps in -3i64..=4,
    ) {
        let lhs = a.mul(&b).twisted_derivative(eps);
        let rhs = a.twisted_derivative(eps).mul(&b).add(&a.mul(&b.twisted_derivative(eps)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_derivation_product_rule(a in arb_series(), b in arb_series(), eps in -3i64..=4) {
        let lhs = a.mul(&b).apply_derivation(eps);
        let rhs = a.apply_derivation(eps).mul(&b).add(&a.mul(&b.apply_derivation(eps)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_inverse_roundtrip(s in arb_unit_series()) {
        let inv = s.invert(DEFAULT_WINDOW).unwrap();
        prop_assert_eq!(s.mul(&inv), IteratedSeries::one("x", &["z"], 4));
        prop_assert_eq!(inv.invert(DEFAULT_WINDOW).unwrap(), s);
    }

    #[test]
    fn substitution_is_associative(
        s in arb_series(),
        t_terms in prop::collection::vec(((1u32..=3), arb_laurent()), 0..3),
        u_terms in prop::collection::vec(((1u32..=3), arb_laurent()), 0..3),
    ) {
        // (s o t) o u = s o (t o u) for substitutions with zero constant term
        let mut t = IteratedSeries::zero("x", &["z"], 4);
        for (k, p) in t_terms { t.add_to_coeff(&[k], &p); }
        let mut u = IteratedSeries::zero("x", &["z"], 4);
        for (k, p) in u_terms { u.add_to_coeff(&[k], &p); }
        let left = s.substitute_formal("z", &t).unwrap()
            .substitute_formal("z", &u).unwrap();
        let right = s.substitute_formal("z", &t.substitute_formal("z", &u).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutative_associative_implies_novikov(
        coeffs in prop::collection::vec(arb_q(), 3),
    ) {
        // Q[t]/(t^3) with the derivation (c1 t + c2 t^2) d/dt, fed through
        // the Gelfand construction, is always left Novikov
        let a = catalog::truncated_poly_3d();
        prop_assert!(novikov::is_left_novikov(&a).passed());
        let z = Q::zero;
        let d = vec![
            vec![z(), z(), z()],
            vec![z(), coeffs[0].clone(), z()],
            vec![z(), coeffs[1].clone(), coeffs[0].clone() * qi(2)],
        ];
        if novikov::is_derivation(&a, &d) {
            let g = novikov::gelfand(&a, &d).unwrap();
            prop_assert!(novikov::is_left_novikov(&g).passed());
        }
    }

    #[test]
    fn form_perturbation_breaks_invariance(c in arb_q()) {
        prop_assume!(!c.is_zero());
        let a = catalog::noncommutative_2d();
        let perturbed = a
            .with_form(Some(vec![
                vec![nova::scalar::q(1, 12), Q::zero()],
                vec![Q::zero(), c],
            ]))
            .unwrap();
        prop_assert!(!novikov::check_form(&perturbed).unwrap().passed());
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi_on_samples(
        eps in -2i64..=3,
        modes in prop::collection::vec(-4i64..=4, 3),
        idx in prop::collection::vec(0usize..2, 3),
        coeffs in prop::collection::vec(arb_q(), 3),
    ) {
        let a = catalog::noncommutative_2d();
        let cfg = LieConfig::new(&a, eps, true);
        let mut u = LieElement::zero();
        u.add_term(idx[0] as i64, modes[0], coeffs[0].clone());
        u.add_term(idx[1] as i64, modes[1], coeffs[1].clone());
        let mut v = LieElement::zero();
        v.add_term(idx[2] as i64, modes[2], coeffs[2].clone());
        v.add_term(idx[0] as i64, modes[1], coeffs[1].clone());
        prop_assert!(bracket(&cfg, &u, &v).add(&bracket(&cfg, &v, &u)).is_zero());
        let w = LieElement::generator(idx[2] as i64, modes[0]);
        let jac = bracket(&cfg, &bracket(&cfg, &u, &v), &w)
            .add(&bracket(&cfg, &bracket(&cfg, &v, &w), &u))
            .add(&bracket(&cfg, &bracket(&cfg, &w, &u), &v));
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn action_is_a_representation(
        eps in 0i64..=3,
        m in -3i64..=3,
        n in -3i64..=3,
        ai in 0usize..2,
        bi in 0usize..2,
    ) {
        let alg = catalog::noncommutative_2d();
        let cfg = ModuleConfig::new(alg.clone(), eps, nova::scalar::q(1, 2), 20).unwrap();
        let lie_cfg = LieConfig::new(&cfg.algebra, eps, true);
        let w = act(&cfg, 0, eps - 2, &PBWVector::vacuum());
        let lhs = act(&cfg, ai, m, &act(&cfg, bi, n, &w))
            .sub(&act(&cfg, bi, n, &act(&cfg, ai, m, &w)));
        let br = bracket(
            &lie_cfg,
            &LieElement::generator(ai as i64, m),
            &LieElement::generator(bi as i64, n),
        );
        prop_assert_eq!(lhs, apply_lie(&cfg, &br, &w));
    }

    #[test]
    fn action_output_is_normal_ordered(
        letters in prop::collection::vec((0usize..2, -4i64..=1), 1..5),
        eps in 0i64..=2,
    ) {
        // every vector the action produces is on the canonical basis:
        // words sorted by (mode, index) with creation modes only
        let alg = catalog::noncommutative_2d();
        let cfg = ModuleConfig::new(alg, eps, qone(), 30).unwrap();
        let mut v = PBWVector::vacuum();
        for &(i, m) in letters.iter().rev() {
            v = act(&cfg, i, m, &v);
        }
        for (word, _) in v.iter() {
            for pair in word.windows(2) {
                let (a, n) = pair[0];
                let (b, m) = pair[1];
                prop_assert!(n < m || (n == m && a <= b), "unsorted word {word:?}");
            }
            for &(_, m) in word {
                prop_assert!(m <= eps - 2, "annihilation mode in {word:?}");
            }
        }
    }

    #[test]
    fn vertex_modes_ground_to_action(
        n in -4i64..=4,
        i in 0usize..2,
        wm in -4i64..=-2,
    ) {
        let alg = catalog::noncommutative_2d();
        let cfg = ModuleConfig::new(alg, 0, qone(), 20).unwrap();
        let ops = VertexOps::new(&cfg);
        let w = act(&cfg, 1, wm, &PBWVector::vacuum());
        let gen = act(&cfg, i, -2, &PBWVector::vacuum());
        prop_assert_eq!(ops.mode(&gen, n, &w), act(&cfg, i, n - 1, &w));
    }

    #[test]
    fn mode_derivation_shadow(
        i in 0usize..2,
        n in -3i64..=2,
    ) {
        // [D, L(a,n)] = -(n+1) L(a, n-1) as operators, through the modes
        let alg = catalog::noncommutative_2d();
        let cfg = ModuleConfig::new(alg, 0, qone(), 20).unwrap();
        let ops = VertexOps::new(&cfg);
        let w = act(&cfg, 0, -3, &act(&cfg, 1, -2, &PBWVector::vacuum()));
        let lhs = ops.d_op(&act(&cfg, i, n, &w)).sub(&act(&cfg, i, n, &ops.d_op(&w)));
        let rhs = act(&cfg, i, n - 1, &w).scale(&qi(-(n + 1)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn gelfand_samples_pass_lie_checks() {
    // the catalog Gelfand algebra (zero form) over the acceptance grid
    let g = catalog::gelfand_poly3();
    assert!(novikov::is_left_novikov(&g).passed());
    for eps in [-1i64, 0, 1, 2] {
        let cfg = LieConfig::new(&g, eps, true);
        assert!(nova::lie::verify_lie(&cfg, 3, 0).passed());
        assert!(nova::lie::verify_cocycle(&cfg, 3).passed());
    }
}

#[test]
fn any_catalog_commutative_algebra_is_novikov() {
    for a in [
        catalog::frobenius_1d(),
        catalog::dual_numbers_2d(),
        catalog::truncated_poly_3d(),
    ] {
        assert!(novikov::is_commutative_associative(&a).passed());
        assert!(novikov::is_left_novikov(&a).passed());
    }
}

#[test]
fn indexed_family_windows() {
    let laurent = novikov::laurent_novikov(&LaurentPoly::from_terms(
        "x",
        [(0i64, qone()), (2i64, qi(3))],
    ));
    assert!(novikov::check_indexed_novikov(&laurent, 3).passed());
}
