//! Batch execution of the verification suites over a parsed algebra file.

use serde::Serialize;

use crate::associate;
use crate::delta::{self, Window2};
use crate::lie::{self, LieConfig};
use crate::novikov;
use crate::phicoord;
use crate::report::{CheckReport, Verdict};
use crate::scalar::format_rational;
use crate::specfile::{SpecFile, SuiteKind};
use crate::vacuum::{self, act, ModuleConfig, PBWVector};
use num::Zero;

/// All reports produced by one suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub reports: Vec<CheckReport>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed())
    }
}

/// Run every selected suite over the eps x level grid; reports come back
/// in deterministic suite order.
pub fn run_suites(spec: &SpecFile) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    for kind in &spec.suites {
        let reports = match kind {
            SuiteKind::Associate => associate_suite(spec),
            SuiteKind::Delta => delta_suite(spec),
            SuiteKind::Novikov => novikov_suite(spec),
            SuiteKind::Lie => lie_suite(spec),
            SuiteKind::Vertex => vertex_suite(spec),
            SuiteKind::Phicoord => phicoord_suite(spec),
        };
        out.push(SuiteResult {
            suite: kind.name().to_string(),
            reports,
        });
    }
    out
}

fn associate_suite(spec: &SpecFile) -> Vec<CheckReport> {
    let n = spec.order;
    let mut out = Vec::new();
    for &eps in &spec.eps_list {
        out.push(associate::check_associate_axioms(eps, n));
        if eps != 1 {
            match associate::check_closed_form(eps, n) {
                Ok(r) => out.push(r),
                Err(e) => {
                    let mut r = CheckReport::new("closed-form-agreement");
                    r.fail(e.to_string());
                    out.push(r);
                }
            }
        }
        out.push(associate::check_coefficient_formula(eps, n));
        out.push(associate::check_h_series(eps, n));
        out.push(associate::check_g_series(eps, n.min(5)));
        out.push(associate::check_f_inverse(eps, n));
    }
    out
}

fn delta_suite(spec: &SpecFile) -> Vec<CheckReport> {
    let w = Window2::square(-8, 8);
    let mut out = Vec::new();
    for &eps in &spec.eps_list {
        out.push(delta::check_difference_vanishing(eps, 5, w));
        out.push(delta::check_residue_formula(eps, 5, w));
        out.push(delta::check_delta_symmetry(eps, w));
        out.push(delta::check_window_consistency(
            eps,
            2,
            Window2::square(-4, 4),
            Window2::square(-9, 9),
        ));
    }
    out.push(delta::three_term_delta_check(-4, 4));
    out
}

fn novikov_suite(spec: &SpecFile) -> Vec<CheckReport> {
    let a = &spec.algebra;
    let mut out = vec![novikov::is_left_novikov(a)];
    if a.has_form() {
        match novikov::check_form(a) {
            Ok(r) => out.push(r),
            Err(e) => {
                let mut r = CheckReport::new("invariant-form");
                r.fail(e.to_string());
                out.push(r);
            }
        }
    }
    out
}

fn lie_suite(spec: &SpecFile) -> Vec<CheckReport> {
    let a = &spec.algebra;
    let m = spec.mode_window;
    let mut out = Vec::new();
    for &eps in &spec.eps_list {
        let cfg = LieConfig::new(a, eps, a.has_form());
        out.push(lie::verify_lie(&cfg, m, 0));
        if a.has_form() {
            out.push(lie::verify_cocycle(&cfg, m));
        }
    }
    out.push(lie::check_eps0_specialization(a, m));
    let comm = novikov::is_commutative_associative(a).passed();
    if comm {
        for &eps in &spec.eps_list {
            if let Ok(r) = lie::theta_isomorphism_check(a, eps, m) {
                out.push(r);
            }
        }
        if a.has_form() {
            if let Ok(r) = lie::sl2_derivations(a, m) {
                out.push(r);
            }
        }
    } else {
        let mut r = CheckReport::new("sl2-derivations").with_param("algebra", &a.name);
        r.expected_negative(format!(
            "{} is not commutative associative; no compatible sl2 action exists",
            a.name
        ));
        out.push(r);
    }
    out
}

fn vertex_suite(spec: &SpecFile) -> Vec<CheckReport> {
    let a = &spec.algebra;
    let mut out = Vec::new();
    if !a.has_form() {
        let mut r = CheckReport::new("vacuum-module");
        r.fail("the vertex suite needs an invariant form");
        out.push(r);
        return out;
    }
    for level in &spec.level_list {
        let cfg = match ModuleConfig::new(a.clone(), 0, level.clone(), spec.degree_cap) {
            Ok(c) => c,
            Err(e) => {
                let mut r = CheckReport::new("vacuum-module");
                r.fail(e.to_string());
                out.push(r);
                return out;
            }
        };
        out.push(vacuum::check_generator_relations(&cfg));
        if !level.is_zero() {
            match vacuum::recover_novikov(&cfg) {
                Ok((product, form)) => {
                    let mut r = CheckReport::new("product-and-form-recovery")
                        .with_param("algebra", &a.name)
                        .with_param("level", format_rational(level));
                    for i in 0..a.dim() {
                        for j in 0..a.dim() {
                            r.compare(
                                format!("product ({i},{j})"),
                                &product[i][j],
                                &a.product_indices(i, j).to_vec(),
                            );
                            r.compare(
                                format!("form ({i},{j})"),
                                &form[i][j],
                                &(a.form_entry(i, j) * level.clone()),
                            );
                        }
                    }
                    out.push(r);
                }
                Err(e) => {
                    let mut r = CheckReport::new("product-and-form-recovery");
                    r.fail(e.to_string());
                    out.push(r);
                }
            }
        }
    }
    // grading and Moebius structure are level-independent statements; run
    // them once at level 1
    let cfg = ModuleConfig::new(a.clone(), 0, num::One::one(), spec.degree_cap.max(18)).unwrap();
    out.push(vacuum::grading_check(&cfg, 5, 4));
    out.push(vacuum::mobius_check(&cfg, spec.mode_window.min(3)));
    out
}

fn phicoord_suite(spec: &SpecFile) -> Vec<CheckReport> {
    let a = &spec.algebra;
    let mut out = Vec::new();
    if !a.has_form() {
        let mut r = CheckReport::new("phicoord");
        r.fail("the phicoord suite needs an invariant form");
        out.push(r);
        return out;
    }
    let span = spec.mode_window + 2;
    for &eps in &spec.eps_list {
        for level in &spec.level_list {
            out.push(phicoord::check_commutator_formula(a, level, eps, span));
            out.push(phicoord::faithfulness_check(
                a,
                level,
                eps,
                spec.mode_window,
            ));
        }
    }
    for &eps in &spec.eps_list {
        if !(0..=2).contains(&eps) {
            continue;
        }
        let level = spec
            .level_list
            .iter()
            .find(|l| !l.is_zero())
            .cloned()
            .unwrap_or_else(num::One::one);
        let cfg = ModuleConfig::new(a.clone(), eps, level, spec.degree_cap).unwrap();
        let vacuum_w = PBWVector::vacuum();
        let deep = act(
            &cfg,
            0,
            eps - 3,
            &act(&cfg, a.dim() - 1, eps - 2, &PBWVector::vacuum()),
        );
        out.push(phicoord::check_quartic_locality(&cfg, &vacuum_w, span));
        out.push(phicoord::check_ye_products(
            &cfg,
            &vacuum_w,
            spec.mode_window,
        ));
        for w in [&vacuum_w, &deep] {
            out.push(phicoord::check_phi_module_axiom(
                &cfg,
                w,
                span,
                spec.order.min(6) as i64,
            ));
        }
        out.push(phicoord::jacobi_type_check(
            &cfg,
            &vacuum_w,
            spec.mode_window.min(4),
            spec.order.min(4) as i64,
        ));
        if eps == 0 {
            let level = cfg.level.clone();
            out.push(phicoord::check_classical_degeneration(
                a,
                &level,
                spec.mode_window.min(4),
                spec.order.min(4) as i64,
            ));
        }
    }
    out
}

/// Render suite results as deterministic JSON.
pub fn render_json(results: &[SuiteResult]) -> String {
    serde_json::to_string_pretty(results).expect("reports serialize")
}

/// Render suite results as human-readable text; one verdict line per
/// identity and a final summary line.
pub fn render_text(results: &[SuiteResult]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let mut total = 0usize;
    let mut failed = 0usize;
    for suite in results {
        writeln!(out, "== suite {} ==", suite.suite).unwrap();
        for r in &suite.reports {
            writeln!(out, "{r}").unwrap();
            total += 1;
            if !r.passed() {
                failed += 1;
            }
        }
    }
    writeln!(
        out,
        "{} checks, {} failed{}",
        total,
        failed,
        if failed == 0 { " -- all good" } else { "" }
    )
    .unwrap();
    out
}

/// True if every report in every suite passed (or was an expected
/// negative).
pub fn all_passed(results: &[SuiteResult]) -> bool {
    results.iter().all(|s| s.passed())
}

/// True if any report came back inconclusive (window overflow).
pub fn any_inconclusive(results: &[SuiteResult]) -> bool {
    results
        .iter()
        .any(|s| s.reports.iter().any(|r| r.verdict == Verdict::Inconclusive))
}
