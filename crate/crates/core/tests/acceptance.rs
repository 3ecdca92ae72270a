//! Acceptance battery: every criterion below is exact (tolerance zero,
//! coefficientwise over rationals) at its stated parameters. Each test
//! prints one PASS line; a failure panics with the offending report.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::Instant;

use nova::associate;
use nova::delta::{self, Window2};
use nova::lie::{self, LieConfig};
use nova::novikov::{self, catalog};
use nova::phicoord;
use nova::report::{CheckReport, Verdict};
use nova::scalar::{q, qi, qone, Q};
use nova::vacuum::{self, act, ModuleConfig, PBWVector};
use num::Zero;

fn assert_report(criterion: &str, r: &CheckReport) {
    assert!(r.passed(), "{criterion}: {r}");
    assert_ne!(
        r.verdict,
        Verdict::Inconclusive,
        "{criterion} came back inconclusive: {r}"
    );
}

fn catalog_with_forms() -> Vec<novikov::AlgebraSpec> {
    vec![
        catalog::frobenius_1d(),
        catalog::noncommutative_2d(),
        catalog::dual_numbers_2d(),
        catalog::gelfand_poly3(),
    ]
}

#[test]
fn criterion_01_associate_axioms() {
    let start = Instant::now();
    for eps in -3..=4 {
        assert_report("criterion 1", &associate::check_associate_axioms(eps, 8));
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "criterion 1 exceeded 10 s: {elapsed:?}"
    );
    println!("criterion 01 PASS: flow axioms exact for eps in -3..=4 at order 8 ({elapsed:?})");
}

#[test]
fn criterion_02_closed_form_and_coefficients() {
    for eps in -3..=4 {
        if eps != 1 {
            assert_report(
                "criterion 2 (closed form)",
                &associate::check_closed_form(eps, 8).unwrap(),
            );
        }
        assert_report(
            "criterion 2 (coefficient formula)",
            &associate::check_coefficient_formula(eps, 8),
        );
    }
    println!("criterion 02 PASS: closed form and coefficient formula match the flow exactly");
}

#[test]
fn criterion_03_unit_factorizations_and_inverse_flow() {
    for eps in -2..=3 {
        assert_report("criterion 3 (h)", &associate::check_h_series(eps, 8));
        assert_report("criterion 3 (g)", &associate::check_g_series(eps, 5));
    }
    for eps in -3..=4 {
        assert_report("criterion 3 (f)", &associate::check_f_inverse(eps, 8));
    }
    println!("criterion 03 PASS: unit factorizations and the inverse-flow composition are exact");
}

#[test]
fn criterion_04_delta_facts() {
    let start = Instant::now();
    let w = Window2::square(-8, 8);
    for eps in -2..=3 {
        assert_report(
            "criterion 4 (vanishing)",
            &delta::check_difference_vanishing(eps, 5, w),
        );
        assert_report(
            "criterion 4 (residue)",
            &delta::check_residue_formula(eps, 5, w),
        );
        assert_report(
            "criterion 4 (symmetry)",
            &delta::check_delta_symmetry(eps, w),
        );
    }
    assert_report(
        "criterion 4 (three-term)",
        &delta::three_term_delta_check(-4, 4),
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "criterion 4 exceeded 30 s: {elapsed:?}"
    );
    println!(
        "criterion 04 PASS: delta vanishing, residues, symmetry exact on [-8,8]^2 ({elapsed:?})"
    );
}

#[test]
fn criterion_05_lie_structure() {
    for a in catalog_with_forms() {
        for eps in [-1i64, 0, 1, 2] {
            let cfg = LieConfig::new(&a, eps, true);
            assert_report(
                &format!("criterion 5 (axioms, {} eps {eps})", a.name),
                &lie::verify_lie(&cfg, 4, 0),
            );
            assert_report(
                &format!("criterion 5 (cocycle, {} eps {eps})", a.name),
                &lie::verify_cocycle(&cfg, 4),
            );
        }
    }
    // the injected non-Novikov algebra fails with a witness
    let broken = catalog::broken_2d();
    let cfg = LieConfig::new(&broken, 0, false);
    let r = lie::verify_lie(&cfg, 2, 0);
    assert!(!r.passed(), "criterion 5: broken algebra must fail");
    assert!(
        r.witnesses.iter().any(|w| w.contains("jacobi")),
        "criterion 5: expected a Jacobi witness, got {r}"
    );
    println!("criterion 05 PASS: bracket axioms and cocycle exact on the catalog; non-Novikov input fails with witness");
}

#[test]
fn criterion_06_virasoro_specialization() {
    assert_report("criterion 6", &lie::check_virasoro(5));
    println!("criterion 06 PASS: frobenius1d at eps 0 is the Virasoro bracket for |m|,|n| <= 5");
}

#[test]
fn criterion_07_vacuum_generator_relations() {
    for level in [Q::zero(), qone(), qi(-2), q(1, 2)] {
        for a in [catalog::frobenius_1d(), catalog::noncommutative_2d()] {
            let cfg = ModuleConfig::new(a, 0, level.clone(), 12).unwrap();
            let r = vacuum::check_generator_relations(&cfg);
            assert_report("criterion 7", &r);
        }
    }
    println!("criterion 07 PASS: a_0 b = D(ba), a_1 b = ab+ba, a_2 b = 0, a_3 b = (l/2)<a,b>1, a_k b = 0 for 4..8");
}

#[test]
fn criterion_08_grading_law() {
    for a in [catalog::frobenius_1d(), catalog::noncommutative_2d()] {
        // cap sized so no sampled product can overflow
        let cfg = ModuleConfig::new(a, 0, qone(), 22).unwrap();
        let r = vacuum::grading_check(&cfg, 8, 6);
        assert_report("criterion 8", &r);
    }
    println!("criterion 08 PASS: deg(u_k v) = deg u + deg v - k - 1 on homogeneous pairs up to degree 8, |k| <= 6");
}

#[test]
fn criterion_09_novikov_recovery() {
    for level in [qone(), qi(2)] {
        for a in [
            catalog::frobenius_1d(),
            catalog::noncommutative_2d(),
            catalog::dual_numbers_2d(),
        ] {
            let cfg = ModuleConfig::new(a.clone(), 0, level.clone(), 12).unwrap();
            let (product, form) = vacuum::recover_novikov(&cfg).unwrap();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    assert_eq!(
                        product[i][j],
                        a.product_indices(i, j).to_vec(),
                        "criterion 9: product ({i},{j}) of {} at level {level}",
                        a.name
                    );
                    assert_eq!(
                        form[i][j],
                        a.form_entry(i, j) * level.clone(),
                        "criterion 9: form ({i},{j}) of {} at level {level}",
                        a.name
                    );
                }
            }
        }
    }
    println!("criterion 09 PASS: product recovered exactly, form recovered as level x input form");
}

#[test]
fn criterion_10_mobius_criterion() {
    let cfg = ModuleConfig::new(catalog::frobenius_1d(), 0, qone(), 14).unwrap();
    let r = vacuum::mobius_check(&cfg, 4);
    assert_report("criterion 10 (frobenius)", &r);
    assert_eq!(r.verdict, Verdict::Pass);

    let cfg = ModuleConfig::new(catalog::noncommutative_2d(), 0, qone(), 14).unwrap();
    let r = vacuum::mobius_check(&cfg, 4);
    assert_eq!(
        r.verdict,
        Verdict::ExpectedNegative,
        "criterion 10: noncomm2d must be reported incompatible"
    );

    for a in [catalog::frobenius_1d(), catalog::dual_numbers_2d()] {
        let r = lie::sl2_derivations(&a, 4).unwrap();
        assert_report("criterion 10 (derivations)", &r);
    }
    println!("criterion 10 PASS: sl2 mode relations hold on frobenius1d; noncomm2d reported not compatible");
}

#[test]
fn criterion_11_commutator_formula() {
    let start = Instant::now();
    for a in [catalog::frobenius_1d(), catalog::noncommutative_2d()] {
        for eps in [-1i64, 0, 1, 2] {
            for level in [Q::zero(), qone()] {
                let r = phicoord::check_commutator_formula(&a, &level, eps, 6);
                assert_report("criterion 11", &r);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "criterion 11 exceeded 60 s: {elapsed:?}"
    );
    println!("criterion 11 PASS: commutator formula exact on |p|,|q| <= 6 for eps in -1..=2, levels 0 and 1 ({elapsed:?})");
}

#[test]
fn criterion_12_deformed_module_axiom_and_jacobi() {
    for a in [catalog::frobenius_1d(), catalog::noncommutative_2d()] {
        for eps in [0i64, 1, 2] {
            let cfg = ModuleConfig::new(a.clone(), eps, qone(), 10).unwrap();
            let vacuum_w = PBWVector::vacuum();
            let deep = act(
                &cfg,
                0,
                eps - 3,
                &act(&cfg, a.dim() - 1, eps - 2, &PBWVector::vacuum()),
            );
            for w in [&vacuum_w, &deep] {
                let r = phicoord::check_phi_module_axiom(&cfg, w, 6, 6);
                assert_report(&format!("criterion 12 (axiom, {} eps {eps})", a.name), &r);
            }
            // the Jacobi-type identity includes its own Res_z reduction
            // comparison against criterion 11's bracket data
            let r = phicoord::jacobi_type_check(&cfg, &vacuum_w, 5, 4);
            assert_report(&format!("criterion 12 (jacobi, {} eps {eps})", a.name), &r);
        }
    }
    println!("criterion 12 PASS: deformed associativity at N=6 G=10 on vacuum and depth-2 vectors; jacobi identity and its residue reduction exact");
}

#[test]
fn criterion_13_classical_degeneration() {
    for a in [catalog::frobenius_1d(), catalog::noncommutative_2d()] {
        let r = phicoord::check_classical_degeneration(&a, &qone(), 4, 4);
        assert_report("criterion 13", &r);
        // the eps = 0 commutator formula is the classical one: kernels are
        // plain derivative deltas
        let r = phicoord::check_commutator_formula(&a, &qone(), 0, 5);
        assert_report("criterion 13 (commutator at eps 0)", &r);
    }
    println!(
        "criterion 13 PASS: every deformed check at eps = 0 coincides with the classical instance"
    );
}
