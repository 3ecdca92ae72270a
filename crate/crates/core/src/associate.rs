//! The flows `phi_eps(x, z) = e^{z x^eps d/dx} x` of the additive formal
//! group, their closed forms, and the companion unit series h, g and the
//! compositional inverse f_eps.
//!
//! `phi` computed from the defining derivation exponential is the source of
//! truth everywhere in the crate; the closed-form and coefficient-formula
//! routes exist as independent cross-checks.

use thiserror::Error;

use crate::report::CheckReport;
use crate::scalar::{binomial, binomial_q, factorial, q, qi, qone};
use crate::series::{IteratedSeries, LaurentPoly, SeriesError, DEFAULT_WINDOW};
use num::Zero;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssociateError {
    #[error("the closed form degenerates at epsilon = 1; the flow is x e^z")]
    ExponentialBranch,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The flow of `x^eps d/dx` to a fixed truncation order, an element of
/// the ring of Laurent series in x with power-series z-coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociateSeries {
    pub epsilon: i64,
    pub order: u32,
    pub series: IteratedSeries,
}

/// n-fold application of `x^eps d/dx` to x, divided by n!. These are the
/// z-power coefficients of the flow; each one is a single monomial.
fn flow_coefficient(epsilon: i64, n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::var_poly("x");
    for _ in 0..n {
        p = p.twisted_derivative(epsilon);
    }
    p.scale(&(qone() / factorial(n)))
}

/// phi_eps(x, z) as the derivation exponential, truncated at order `n`.
pub fn phi(epsilon: i64, n: u32) -> AssociateSeries {
    let mut series = IteratedSeries::zero("x", &["z"], n);
    for k in 0..=n {
        series.set_coeff(&[k], flow_coefficient(epsilon, k));
    }
    debug_assert_eq!(series.coeff(&[0]), LaurentPoly::var_poly("x"));
    if n >= 1 {
        debug_assert_eq!(
            series.coeff(&[1]),
            LaurentPoly::monomial("x", epsilon, qone())
        );
    }
    AssociateSeries {
        epsilon,
        order: n,
        series,
    }
}

/// Closed form x (1 - (eps-1) z x^{eps-1})^{-1/(eps-1)}, expanded by the
/// binomial series. Defined for eps != 1 (the parameter in the exponent is
/// eps - 1); must agree with `phi`.
pub fn phi_closed(epsilon: i64, n: u32) -> Result<AssociateSeries, AssociateError> {
    if epsilon == 1 {
        return Err(AssociateError::ExponentialBranch);
    }
    let e = epsilon - 1;
    let exponent = -qone() / qi(e);
    let mut series = IteratedSeries::zero("x", &["z"], n);
    for k in 0..=n {
        // z^k coefficient of (1 - e z x^e)^(-1/e) is C(-1/e, k) (-e)^k x^{ke}
        let mut c = binomial_q(&exponent, k);
        for _ in 0..k {
            c *= qi(-e);
        }
        series.set_coeff(&[k], LaurentPoly::monomial("x", 1 + k as i64 * e, c));
    }
    Ok(AssociateSeries {
        epsilon,
        order: n,
        series,
    })
}

/// The z^k coefficient of phi_eps from the product formula:
/// x^{k(eps-1)+1} prod_{j=0}^{k-1} (1 + j(eps-1)) / k!.
pub fn phi_coefficient(epsilon: i64, k: u32) -> LaurentPoly {
    let e = epsilon - 1;
    let mut c = qone();
    for j in 0..k as i64 {
        c *= qi(1 + j * e);
    }
    c /= factorial(k);
    LaurentPoly::monomial("x", k as i64 * e + 1, c)
}

/// Verify the two flow axioms to total order `n`:
/// phi(x, 0) = x and phi(phi(x, x0), x2) = phi(x, x0 + x2).
pub fn check_associate_axioms(epsilon: i64, n: u32) -> CheckReport {
    let mut report = CheckReport::new("associate-axioms")
        .with_param("eps", epsilon)
        .with_param("order", n);

    let p = phi(epsilon, n);
    let zero = IteratedSeries::zero("x", &["z"], n);
    let at_zero = p.series.substitute_formal("z", &zero).unwrap();
    report.compare(
        "phi(x,0)",
        &at_zero,
        &IteratedSeries::base_var("x", &["z"], n),
    );

    let vars = ["x0", "x2"];
    // phi(x, x2) over the two-variable ring
    let phi_x2 = rename_formal(&p.series, "z", "x2").with_formals(&vars);
    // inner flow phi(x, x0)
    let phi_x0 = rename_formal(&p.series, "z", "x0").with_formals(&vars);
    let lhs = match phi_x2.substitute_base(&phi_x0, DEFAULT_WINDOW) {
        Ok(s) => s,
        Err(e) => {
            report.inconclusive(format!("composition overflow: {e}"));
            return report;
        }
    };
    let x0 = IteratedSeries::formal_var("x", &vars, n, "x0");
    let x2 = IteratedSeries::formal_var("x", &vars, n, "x2");
    let phi_two = {
        let z3 = rename_formal(&p.series, "z", "zz").with_formals(&["zz", "x0", "x2"]);
        let sum = x0.add(&x2).with_formals(&["zz", "x0", "x2"]);
        z3.substitute_formal("zz", &sum)
            .unwrap()
            .remove_formal("zz")
            .unwrap()
    };
    compare_series(
        &mut report,
        "phi(phi(x,x0),x2) vs phi(x,x0+x2)",
        &lhs,
        &phi_two,
    );
    report
}

/// Rename one formal variable, keeping coefficients.
pub fn rename_formal(s: &IteratedSeries, from: &str, to: &str) -> IteratedSeries {
    let formal: Vec<String> = s
        .formal_vars()
        .iter()
        .map(|v| if v == from { to.to_string() } else { v.clone() })
        .collect();
    let formal_refs: Vec<&str> = formal.iter().map(|v| v.as_str()).collect();
    let mut out = IteratedSeries::zero(s.base(), &formal_refs, s.order());
    for (key, p) in s.iter() {
        out.set_coeff(key, p.clone());
    }
    out
}

fn compare_series(report: &mut CheckReport, site: &str, a: &IteratedSeries, b: &IteratedSeries) {
    match a.eq_within(b) {
        Ok(true) => report.tick(),
        Ok(false) => {
            let diff = a.sub(b);
            let witness = diff
                .iter()
                .next()
                .map(|(k, p)| format!("first differing term at {k:?}: {p}"))
                .unwrap_or_default();
            report.fail(format!("{site}: {witness}"));
        }
        Err(e) => report.inconclusive(format!("{site}: {e}")),
    }
}

/// h with phi_eps(x,z) - x = z h(x,z); its z-constant term is the monomial
/// x^eps, so h is a unit.
pub fn h_series(epsilon: i64, n: u32) -> IteratedSeries {
    let p = phi(epsilon, n + 1);
    let x = IteratedSeries::base_var("x", &["z"], n + 1);
    p.series
        .sub(&x)
        .div_formal("z")
        .expect("phi - x is divisible by z")
        .truncate(n)
}

/// g with phi_eps(x,x1) - phi_eps(x,x2) = (x1 - x2) g(x,x1,x2), from the
/// expansion g = sum_{j>=1} (x1-x2)^{j-1}/j! (x^eps d/dx)^j phi_eps(x,x2).
pub fn g_series(epsilon: i64, n: u32) -> IteratedSeries {
    let vars = ["x1", "x2"];
    let p = phi(epsilon, n);
    let phi_x2 = rename_formal(&p.series, "z", "x2").with_formals(&vars);
    let x1 = IteratedSeries::formal_var("x", &vars, n, "x1");
    let x2 = IteratedSeries::formal_var("x", &vars, n, "x2");
    let diff = x1.sub(&x2);
    let mut out = IteratedSeries::zero("x", &vars, n);
    let mut derived = phi_x2;
    let mut diff_pow = IteratedSeries::one("x", &vars, n);
    for j in 1..=(n as i64 + 1) as u32 {
        derived = derived.apply_derivation(epsilon);
        if j > 1 {
            diff_pow = diff_pow.mul(&diff);
        }
        if diff_pow.is_zero() {
            break;
        }
        out = out.add(&diff_pow.mul(&derived).scale(&(qone() / factorial(j))));
    }
    out
}

/// Verify the defining factorization and the diagonal value of g.
pub fn check_g_series(epsilon: i64, n: u32) -> CheckReport {
    let mut report = CheckReport::new("difference-factorization")
        .with_param("eps", epsilon)
        .with_param("order", n);
    let vars = ["x1", "x2"];
    let g = g_series(epsilon, n);
    let p = phi(epsilon, n);
    let phi_x1 = rename_formal(&p.series, "z", "x1").with_formals(&vars);
    let phi_x2 = rename_formal(&p.series, "z", "x2").with_formals(&vars);
    let x1 = IteratedSeries::formal_var("x", &vars, n, "x1");
    let x2 = IteratedSeries::formal_var("x", &vars, n, "x2");
    let lhs = phi_x1.sub(&phi_x2);
    let rhs = x1.sub(&x2).mul(&g);
    compare_series(&mut report, "phi(x,x1)-phi(x,x2) = (x1-x2) g", &lhs, &rhs);

    // diagonal: g(x, x2, x2) = d phi/dz at z = x2, which is phi(x,x2)^eps
    // (a unit, because phi is)
    let diag = g.substitute_formal("x1", &x2).unwrap();
    let phi_pow = phi_x2
        .pow_i(epsilon, DEFAULT_WINDOW)
        .expect("phi is a unit");
    compare_series(&mut report, "g(x,x2,x2) = phi(x,x2)^eps", &diag, &phi_pow);

    // unit: the constant term of g is the monomial x^eps
    report.compare(
        "g constant term",
        &g.formal_constant(),
        &LaurentPoly::monomial("x", epsilon, qone()),
    );
    report
}

/// Verify the factorization phi - x = z h and the unit constant term of h.
pub fn check_h_series(epsilon: i64, n: u32) -> CheckReport {
    let mut report = CheckReport::new("unit-factorization")
        .with_param("eps", epsilon)
        .with_param("order", n);
    let h = h_series(epsilon, n);
    report.compare(
        "h constant term",
        &h.formal_constant(),
        &LaurentPoly::monomial("x", epsilon, qone()),
    );
    let p = phi(epsilon, n).series;
    let x = IteratedSeries::base_var("x", &["z"], n);
    let zh = h.shift_formal("z", 1).truncate(n);
    compare_series(&mut report, "phi - x = z h", &p.sub(&x), &zh);
    // h is invertible and h * h^-1 = 1
    match h.invert(DEFAULT_WINDOW) {
        Ok(hinv) => {
            compare_series(
                &mut report,
                "h * h^-1 = 1",
                &h.mul(&hinv),
                &IteratedSeries::one("x", &["z"], n),
            );
        }
        Err(e) => report.fail(format!("h not invertible: {e}")),
    }
    report
}

/// The compositional inverse f_eps with phi_eps(x, f_eps(x,z)) = x(1+z):
/// x^{1-eps} ((1+z)^{1-eps} - 1)/(1-eps) for eps != 1, log(1+z) for eps = 1.
pub fn f_inverse(epsilon: i64, n: u32) -> IteratedSeries {
    let mut out = IteratedSeries::zero("x", &["z"], n);
    if epsilon == 1 {
        for k in 1..=n {
            let c = q(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            out.set_coeff(&[k], LaurentPoly::constant("x", c));
        }
    } else {
        let e = 1 - epsilon;
        for k in 1..=n {
            let c = binomial(e, k) / qi(e);
            if c.is_zero() {
                continue;
            }
            out.set_coeff(&[k], LaurentPoly::monomial("x", e, c));
        }
    }
    out
}

/// Verify phi_eps(x, f_eps(x, z)) = x (1 + z) to order `n`.
pub fn check_f_inverse(epsilon: i64, n: u32) -> CheckReport {
    let mut report = CheckReport::new("flow-inverse-composition")
        .with_param("eps", epsilon)
        .with_param("order", n);
    let f = f_inverse(epsilon, n);
    let p = phi(epsilon, n);
    let composed = p.series.substitute_formal("z", &f).unwrap();
    let mut want = IteratedSeries::base_var("x", &["z"], n);
    want.set_coeff(&[1], LaurentPoly::var_poly("x"));
    compare_series(&mut report, "phi(x, f(x,z)) = x(1+z)", &composed, &want);
    report
}

/// Cross-check phi against the closed form (eps != 1).
pub fn check_closed_form(epsilon: i64, n: u32) -> Result<CheckReport, AssociateError> {
    let mut report = CheckReport::new("closed-form-agreement")
        .with_param("eps", epsilon)
        .with_param("order", n);
    let a = phi(epsilon, n);
    let b = phi_closed(epsilon, n)?;
    compare_series(&mut report, "flow = closed form", &a.series, &b.series);
    Ok(report)
}

/// Cross-check phi against the coefficient product formula for k <= kmax.
pub fn check_coefficient_formula(epsilon: i64, kmax: u32) -> CheckReport {
    let mut report = CheckReport::new("coefficient-formula")
        .with_param("eps", epsilon)
        .with_param("kmax", kmax);
    let p = phi(epsilon, kmax);
    for k in 0..=kmax {
        report.compare(
            format!("z^{k} coefficient"),
            &p.series.coeff(&[k]),
            &phi_coefficient(epsilon, k),
        );
    }
    report
}
