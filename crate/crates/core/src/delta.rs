//! Formal delta-distribution calculus.
//!
//! The two-variable formal delta delta(x2/x1) = sum_{n in Z} x2^n x1^{-n}
//! and its twisted derivatives (x2^eps d/dx2)^j x1^s delta(x2/x1) are the
//! kernels that carry commutator data between mode algebras and operator
//! series. A distribution has infinitely many coefficients, so every
//! expansion here is taken over an explicit rectangular exponent window;
//! the identities are exact within any finite window.
//!
//! Expansion convention, fixed globally: in delta((A - B)/C) the second
//! variable of the numerator is the small one, so (A - B)^n expands with
//! nonnegative powers of B for every integer n.

use std::collections::BTreeMap;

use crate::report::CheckReport;
use crate::scalar::{binomial, factorial, qi, qone, Q};
use crate::series::{LaurentPoly, SeriesError};
use num::Zero;

/// Rectangular exponent window [lo1, hi1] x [lo2, hi2].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window2 {
    pub lo1: i64,
    pub hi1: i64,
    pub lo2: i64,
    pub hi2: i64,
}

impl Window2 {
    pub fn square(lo: i64, hi: i64) -> Self {
        Window2 {
            lo1: lo,
            hi1: hi,
            lo2: lo,
            hi2: hi,
        }
    }

    pub fn contains(&self, p: i64, q: i64) -> bool {
        self.lo1 <= p && p <= self.hi1 && self.lo2 <= q && q <= self.hi2
    }

    fn grow(&self, m: i64) -> Self {
        Window2 {
            lo1: self.lo1 - m,
            hi1: self.hi1 + m,
            lo2: self.lo2 - m,
            hi2: self.hi2 + m,
        }
    }
}

impl std::fmt::Display for Window2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.lo1, self.hi1, self.lo2, self.hi2)
    }
}

/// Restriction of a two-sided formal distribution in (x1, x2) to a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilateralSeries {
    pub window: Window2,
    coeffs: BTreeMap<(i64, i64), Q>,
}

impl BilateralSeries {
    pub fn zero(window: Window2) -> Self {
        BilateralSeries {
            window,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn coeff(&self, p: i64, q: i64) -> Q {
        self.coeffs.get(&(p, q)).cloned().unwrap_or_else(Q::zero)
    }

    /// Add a term, silently clipping anything outside the window.
    pub fn add_term(&mut self, p: i64, q: i64, c: Q) {
        if c.is_zero() || !self.window.contains(p, q) {
            return;
        }
        let entry = self.coeffs.entry((p, q)).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(p, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Q)> {
        self.coeffs.iter()
    }

    pub fn neg(&self) -> Self {
        BilateralSeries {
            window: self.window,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn restrict(&self, window: Window2) -> Self {
        let mut out = Self::zero(window);
        for (&(p, q), c) in &self.coeffs {
            out.add_term(p, q, c.clone());
        }
        out
    }

    /// Swap the roles of x1 and x2.
    pub fn transpose(&self) -> Self {
        let window = Window2 {
            lo1: self.window.lo2,
            hi1: self.window.hi2,
            lo2: self.window.lo1,
            hi2: self.window.hi1,
        };
        let mut out = Self::zero(window);
        for (&(p, q), c) in &self.coeffs {
            out.add_term(q, p, c.clone());
        }
        out
    }

    /// The x1^{-1} slice as a Laurent polynomial in x2, valid within the
    /// x2 window. Errors when -1 is outside the x1 window.
    pub fn residue_x1(&self) -> Result<LaurentPoly, SeriesError> {
        if self.window.lo1 > -1 || self.window.hi1 < -1 {
            return Err(SeriesError::WindowOverflow(format!(
                "x1 exponent -1 outside window {}",
                self.window
            )));
        }
        let mut out = LaurentPoly::zero("x2");
        for (&(p, q), c) in &self.coeffs {
            if p == -1 {
                out.add_term(q, c.clone());
            }
        }
        Ok(out)
    }
}

/// Which slot sits inside the delta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// x1^s delta(x2/x1), twisted derivatives in x2.
    X2OverX1,
    /// x2^s delta(x1/x2), twisted derivatives in x1.
    X1OverX2,
}

/// Finite combination sum_j c_j(v) (v^eps d/dv)^j u^s delta(v/u), where
/// (u, v) = (x1, x2) or (x2, x1) per the orientation.
#[derive(Clone, Debug)]
pub struct DeltaExpression {
    pub epsilon: i64,
    pub kernel_exp: i64,
    pub orientation: Orientation,
    /// (derivative order j, coefficient c_j in the expansion variable)
    pub terms: Vec<(u32, LaurentPoly)>,
}

impl DeltaExpression {
    /// (v^eps d/dv)^j u^{kernel_exp} delta(v/u) with unit coefficient.
    pub fn twisted(epsilon: i64, kernel_exp: i64, j: u32, orientation: Orientation) -> Self {
        let var = match orientation {
            Orientation::X2OverX1 => "x2",
            Orientation::X1OverX2 => "x1",
        };
        DeltaExpression {
            epsilon,
            kernel_exp,
            orientation,
            terms: vec![(j, LaurentPoly::one(var))],
        }
    }

    /// The plain kernel u^{kernel_exp} delta(v/u).
    pub fn kernel(epsilon: i64, kernel_exp: i64, orientation: Orientation) -> Self {
        Self::twisted(epsilon, kernel_exp, 0, orientation)
    }

    fn fold_term(&mut self, j: u32, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (jj, cc) in &mut self.terms {
            if *jj == j {
                *cc = cc.add(&c);
                return;
            }
        }
        self.terms.push((j, c));
    }

    /// Apply v^eps d/dv once, renormalizing into the canonical (j, c_j)
    /// basis via the Leibniz rule.
    pub fn twist_derivative(&self) -> Self {
        let mut out = DeltaExpression {
            epsilon: self.epsilon,
            kernel_exp: self.kernel_exp,
            orientation: self.orientation,
            terms: Vec::new(),
        };
        for (j, c) in &self.terms {
            out.fold_term(*j + 1, c.clone());
            out.fold_term(*j, c.twisted_derivative(self.epsilon));
        }
        out.terms.retain(|(_, c)| !c.is_zero());
        out.terms.sort_by_key(|&(j, _)| j);
        out
    }

    /// Rewrite into the plain-derivative basis: the result is an
    /// expression with epsilon = 0 (so its operator is d/dv) over the same
    /// kernel, equal to this one as a distribution. The leading
    /// coefficient of (v^eps d/dv)^n comes out as exactly v^{n eps}, the
    /// lower ones as the Leibniz corrections.
    pub fn to_plain_basis(&self) -> DeltaExpression {
        let var = self.coeff_var();
        let mut out = DeltaExpression {
            epsilon: 0,
            kernel_exp: self.kernel_exp,
            orientation: self.orientation,
            terms: Vec::new(),
        };
        for (j, c) in &self.terms {
            for (i, g) in twisted_power_plain(self.epsilon, *j, var) {
                out.fold_term(i, g.mul(c));
            }
        }
        out.terms.retain(|(_, c)| !c.is_zero());
        out.terms.sort_by_key(|&(j, _)| j);
        out
    }

    /// Rewrite a plain-derivative expression (epsilon = 0) into the
    /// twisted basis of the given epsilon, triangularly from the top
    /// order down.
    pub fn from_plain_basis(plain: &DeltaExpression, epsilon: i64) -> DeltaExpression {
        assert_eq!(plain.epsilon, 0, "input must be in the plain basis");
        let var = plain.coeff_var();
        let mut remainder: Vec<(u32, LaurentPoly)> = plain.terms.clone();
        remainder.sort_by_key(|&(j, _)| j);
        let mut out = DeltaExpression {
            epsilon,
            kernel_exp: plain.kernel_exp,
            orientation: plain.orientation,
            terms: Vec::new(),
        };
        while let Some((n, g)) = remainder.pop() {
            if g.is_zero() {
                continue;
            }
            // g d^n = g v^{-n eps} (v^eps d)^n  - g v^{-n eps} (lower terms)
            let top_coeff = g.mul(&LaurentPoly::monomial(var, -(n as i64) * epsilon, qone()));
            out.fold_term(n, top_coeff.clone());
            for (i, f) in twisted_power_plain(epsilon, n, var) {
                if i == n {
                    continue;
                }
                let correction = f.mul(&top_coeff).neg();
                match remainder.iter_mut().find(|(jj, _)| *jj == i) {
                    Some((_, slot)) => *slot = slot.add(&correction),
                    None => {
                        remainder.push((i, correction));
                        remainder.sort_by_key(|&(j, _)| j);
                    }
                }
            }
        }
        out.terms.retain(|(_, c)| !c.is_zero());
        out.terms.sort_by_key(|&(j, _)| j);
        out
    }

    fn coeff_var(&self) -> &'static str {
        match self.orientation {
            Orientation::X2OverX1 => "x2",
            Orientation::X1OverX2 => "x1",
        }
    }

    /// Exact coefficients within the window.
    ///
    /// The kernel expands as u^s delta(v/u) = sum_n v^n u^{s-n}; one
    /// twisted derivative maps v^n to n v^{n+eps-1}, so j of them multiply
    /// by prod_{i<j} (n + i(eps-1)) and shift, and c_j shifts further.
    pub fn expand(&self, window: Window2) -> BilateralSeries {
        let oriented = match self.orientation {
            Orientation::X2OverX1 => window,
            Orientation::X1OverX2 => Window2 {
                lo1: window.lo2,
                hi1: window.hi2,
                lo2: window.lo1,
                hi2: window.hi1,
            },
        };
        let mut out = BilateralSeries::zero(oriented);
        let e = self.epsilon - 1;
        for (j, c) in &self.terms {
            for (d, gamma) in c.terms() {
                for p in oriented.lo1..=oriented.hi1 {
                    let n = self.kernel_exp - p;
                    let mut factor = gamma.clone();
                    for i in 0..*j as i64 {
                        factor *= qi(n + i * e);
                    }
                    if factor.is_zero() {
                        continue;
                    }
                    out.add_term(p, n + (*j as i64) * e + d, factor);
                }
            }
        }
        match self.orientation {
            Orientation::X2OverX1 => out,
            Orientation::X1OverX2 => out.transpose(),
        }
    }
}

/// (v^eps d/dv)^j written in the plain basis sum_i g_i(v) d^i.
fn twisted_power_plain(epsilon: i64, j: u32, var: &str) -> Vec<(u32, LaurentPoly)> {
    let mut ops: Vec<(u32, LaurentPoly)> = vec![(0, LaurentPoly::one(var))];
    for _ in 0..j {
        let mut next: Vec<(u32, LaurentPoly)> = Vec::new();
        let mut push = |i: u32, g: LaurentPoly| {
            if g.is_zero() {
                return;
            }
            match next.iter_mut().find(|(jj, _)| *jj == i) {
                Some((_, slot)) => *slot = slot.add(&g),
                None => next.push((i, g)),
            }
        };
        for (i, g) in &ops {
            // (v^eps d)(g d^i) = v^eps g' d^i + v^eps g d^{i+1}
            push(*i, g.twisted_derivative(epsilon));
            push(*i + 1, g.shift(epsilon));
        }
        next.retain(|(_, g)| !g.is_zero());
        next.sort_by_key(|&(i, _)| i);
        ops = next;
    }
    ops
}

/// Multiply the expansion of `d` by (x1 - x2)^m, exactly within `window`.
/// The expansion is taken on a window enlarged by m so every contribution
/// to the requested rectangle is present.
pub fn mul_difference_power(d: &DeltaExpression, m: u32, window: Window2) -> BilateralSeries {
    let inner = d.expand(window.grow(m as i64));
    let mut out = BilateralSeries::zero(window);
    for k in 0..=m {
        let sign = if k % 2 == 0 { qone() } else { -qone() };
        let c = binomial(m as i64, k) * sign;
        // term x1^{m-k} x2^k
        for (&(p, q), v) in inner.iter() {
            out.add_term(p + (m - k) as i64, q + k as i64, v.clone() * c.clone());
        }
    }
    out
}

/// Termwise twisted differentiation of an expanded series: the oracle that
/// the canonical-basis machinery is checked against. The returned window is
/// shrunk to where the image is trustworthy.
pub fn twist_derivative_termwise(b: &BilateralSeries, epsilon: i64) -> BilateralSeries {
    let mut out = BilateralSeries::zero(Window2 {
        lo2: b.window.lo2 + (epsilon - 1).max(0),
        hi2: b.window.hi2 + (epsilon - 1).min(0),
        ..b.window
    });
    for (&(p, q), c) in b.iter() {
        out.add_term(p, q + epsilon - 1, c.clone() * qi(q));
    }
    out
}

/// The vanishing (x1-x2)^m (x2^eps d/dx2)^n x1^{-1} delta(x2/x1) = 0 for
/// m > n, plus the m = n collapse onto x2^{n eps} times the plain-derivative
/// expansion.
pub fn check_difference_vanishing(epsilon: i64, max_mn: u32, window: Window2) -> CheckReport {
    let mut report = CheckReport::new("difference-power-vanishing")
        .with_param("eps", epsilon)
        .with_param("max", max_mn)
        .with_param("window", window);
    for n in 0..=max_mn {
        let d = DeltaExpression::twisted(epsilon, -1, n, Orientation::X2OverX1);
        for m in 0..=max_mn {
            if m > n {
                let prod = mul_difference_power(&d, m, window);
                report.tick();
                if !prod.is_zero() {
                    let (&(p, q), c) = prod.iter().next().unwrap();
                    report.fail(format!("m={m} n={n}: nonzero coefficient {c} at ({p},{q})"));
                }
            } else if m == n {
                let got = mul_difference_power(&d, n, window);
                // oracle: x2^{n eps} (x1-x2)^n (d/dx2)^n x1^{-1} delta
                let plain = DeltaExpression::twisted(0, -1, n, Orientation::X2OverX1);
                let shift = n as i64 * epsilon;
                let wshift = Window2 {
                    lo2: window.lo2 - shift,
                    hi2: window.hi2 - shift,
                    ..window
                };
                let plain_prod = mul_difference_power(&plain, n, wshift);
                let mut want = BilateralSeries::zero(window);
                for (&(p, q), c) in plain_prod.iter() {
                    want.add_term(p, q + shift, c.clone());
                }
                report.compare(format!("m=n={n} collapse"), &got, &want);
            }
        }
    }
    report
}

/// Residues Res_{x1} x1^{-eps} (x1-x2)^n (x2^eps d/dx2)^n x1^{eps-1}
/// delta(x2/x1) = n! x2^{n eps} for n <= max_n.
pub fn check_residue_formula(epsilon: i64, max_n: u32, window: Window2) -> CheckReport {
    let mut report = CheckReport::new("delta-residue-extraction")
        .with_param("eps", epsilon)
        .with_param("max_n", max_n)
        .with_param("window", window);
    for n in 0..=max_n {
        let d = DeltaExpression::twisted(epsilon, epsilon - 1, n, Orientation::X2OverX1);
        // multiply by (x1-x2)^n on a window shifted so that the later
        // x1^{-eps} shift lands on the requested one
        let wshift = Window2 {
            lo1: window.lo1 + epsilon,
            hi1: window.hi1 + epsilon,
            ..window
        };
        let smeared = mul_difference_power(&d, n, wshift);
        let mut shifted = BilateralSeries::zero(window);
        for (&(p, q), c) in smeared.iter() {
            shifted.add_term(p - epsilon, q, c.clone());
        }
        match shifted.residue_x1() {
            Ok(res) => {
                let want = LaurentPoly::monomial("x2", n as i64 * epsilon, factorial(n))
                    .restrict(window.lo2, window.hi2);
                report.compare(format!("n={n}"), &res, &want);
            }
            Err(e) => report.inconclusive(format!("n={n}: {e}")),
        }
    }
    report
}

/// (x2^eps d/dx2) x1^{eps-1} delta(x2/x1) =
/// -(x1^eps d/dx1) x2^{eps-1} delta(x1/x2), coefficientwise on the window.
pub fn check_delta_symmetry(epsilon: i64, window: Window2) -> CheckReport {
    let mut report = CheckReport::new("delta-symmetry")
        .with_param("eps", epsilon)
        .with_param("window", window);
    let lhs =
        DeltaExpression::twisted(epsilon, epsilon - 1, 1, Orientation::X2OverX1).expand(window);
    let rhs = DeltaExpression::twisted(epsilon, epsilon - 1, 1, Orientation::X1OverX2)
        .expand(window)
        .neg();
    report.compare("both expansions", &lhs, &rhs);
    report
}

// ---------------------------------------------------------------------------
// Three-variable delta identities
// ---------------------------------------------------------------------------

type TriMap = BTreeMap<(i64, i64, i64), Q>;

fn tri_add(map: &mut TriMap, key: (i64, i64, i64), c: Q) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

fn in_cube(key: (i64, i64, i64), lo: i64, hi: i64) -> bool {
    let (a, b, c) = key;
    lo <= a && a <= hi && lo <= b && b <= hi && lo <= c && c <= hi
}

/// Binomial expansion data for delta((A-B)/C) C^{-1} with B small:
/// coefficient C(n,k)(-1)^k on A^{n-k} B^k C^{-n-1}, reported as
/// ((n, k), coeff) for n in the given range and k in [0, kmax].
fn delta_frac_terms(n_lo: i64, n_hi: i64, kmax: i64) -> Vec<((i64, i64), Q)> {
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        for k in 0..=kmax {
            if n >= 0 && k > n {
                break;
            }
            let sign = if k % 2 == 0 { qone() } else { -qone() };
            let c = binomial(n, k as u32) * sign;
            if !c.is_zero() {
                out.push(((n, k), c));
            }
        }
    }
    out
}

/// The classical three-term delta identity and its x0 = x2 z substitution,
/// verified coefficientwise on the cube from lo to hi in each variable.
pub fn three_term_delta_check(lo: i64, hi: i64) -> CheckReport {
    let mut report =
        CheckReport::new("three-term-delta").with_param("window", format!("[{lo},{hi}]^3"));
    let kmax = hi - lo + 2;
    let terms = delta_frac_terms(-hi - 1, -lo - 1 + kmax, kmax);

    // x0^{-1} delta((x1-x2)/x0) - x0^{-1} delta((x2-x1)/(-x0))
    //   = x2^{-1} delta((x1-x0)/x2),   keys ordered (x0, x1, x2)
    let mut lhs: TriMap = BTreeMap::new();
    for ((n, k), c) in &terms {
        // first term: A = x1, B = x2, C = x0
        let key = (-n - 1, n - k, *k);
        if in_cube(key, lo, hi) {
            tri_add(&mut lhs, key, c.clone());
        }
        // second term: x0^{-1} delta((x2-x1)/(-x0)) carries (-1)^n from
        // (-x0)^{-n}; A = x2, B = x1
        let sign = if n.rem_euclid(2) == 0 {
            qone()
        } else {
            -qone()
        };
        let key = (-n - 1, *k, n - k);
        if in_cube(key, lo, hi) {
            tri_add(&mut lhs, key, -(c.clone() * sign));
        }
    }
    let mut rhs: TriMap = BTreeMap::new();
    for ((n, k), c) in &terms {
        // A = x1, B = x0, C = x2
        let key = (*k, n - k, -n - 1);
        if in_cube(key, lo, hi) {
            tri_add(&mut rhs, key, c.clone());
        }
    }
    report.compare("classical identity", &lhs, &rhs);

    // (x2 z)^{-1} delta((x1-x2)/(x2 z)) - (x2 z)^{-1} delta((x2-x1)/(-x2 z))
    //   = x1^{-1} delta(x2(1+z)/x1),   keys ordered (x1, x2, z)
    let mut lhs2: TriMap = BTreeMap::new();
    for ((n, k), c) in &terms {
        // term 1: coefficient at x1^{n-k} x2^{k-n-1} z^{-n-1}
        let key = (n - k, k - n - 1, -n - 1);
        if in_cube(key, lo, hi) {
            tri_add(&mut lhs2, key, c.clone());
        }
        // term 2: (-1)^n sum C(n,k)(-1)^k x1^k x2^{-k-1} z^{-n-1}
        let sign = if n.rem_euclid(2) == 0 {
            qone()
        } else {
            -qone()
        };
        let key = (*k, -k - 1, -n - 1);
        if in_cube(key, lo, hi) {
            tri_add(&mut lhs2, key, -(c.clone() * sign));
        }
    }
    let mut rhs2: TriMap = BTreeMap::new();
    for n in lo..=hi {
        for r in 0..=kmax {
            let key = (-n - 1, n, r);
            if in_cube(key, lo, hi) {
                tri_add(&mut rhs2, key, binomial(n, r as u32));
            }
        }
    }
    report.compare("x0 = x2 z substitution", &lhs2, &rhs2);
    report
}

/// Enlarging the window never changes coefficients inside the smaller one.
pub fn check_window_consistency(
    epsilon: i64,
    j: u32,
    inner: Window2,
    outer: Window2,
) -> CheckReport {
    let mut report = CheckReport::new("window-consistency")
        .with_param("eps", epsilon)
        .with_param("inner", inner)
        .with_param("outer", outer);
    let d = DeltaExpression::twisted(epsilon, epsilon - 1, j, Orientation::X2OverX1);
    let small = d.expand(inner);
    let large = d.expand(outer).restrict(inner);
    report.compare("restriction agreement", &small, &large);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_delta_coefficients() {
        // delta(x2/x1): coefficient 1 at every (-n, n)
        let d = DeltaExpression::kernel(1, 0, Orientation::X2OverX1);
        let b = d.expand(Window2::square(-3, 3));
        for n in -3..=3 {
            assert_eq!(b.coeff(-n, n), qi(1));
        }
        assert_eq!(b.coeff(1, 2), qi(0));
    }

    #[test]
    fn derivative_of_delta_oracle() {
        // (d/dx2) x1^{-1} delta(x2/x1) = sum n x2^{n-1} x1^{-n-1}:
        // coefficient n at (-n-1, n-1), from differentiating termwise
        let d = DeltaExpression::twisted(0, -1, 1, Orientation::X2OverX1);
        let b = d.expand(Window2::square(-5, 5));
        for n in -4..=4i64 {
            assert_eq!(b.coeff(-n - 1, n - 1), qi(n), "n = {n}");
        }
    }

    #[test]
    fn twist_derivative_matches_termwise_oracle() {
        for eps in [-1i64, 0, 2, 3] {
            let d = DeltaExpression::twisted(eps, eps - 1, 1, Orientation::X2OverX1);
            let canonical = d.twist_derivative();
            let window = Window2::square(-6, 6);
            let got = canonical.expand(window);
            let oracle = twist_derivative_termwise(&d.expand(window.grow(1 + eps.abs())), eps);
            let w = Window2::square(-4, 4);
            assert_eq!(got.restrict(w), oracle.restrict(w), "eps = {eps}");
        }
    }

    #[test]
    fn twist_derivative_ladder() {
        let d = DeltaExpression::twisted(2, 1, 1, Orientation::X2OverX1);
        let up = d.twist_derivative();
        assert_eq!(up.terms.len(), 1);
        assert_eq!(up.terms[0].0, 2);
    }

    #[test]
    fn twist_derivative_with_coefficient() {
        // applied to (0, x2): Leibniz gives (1, x2) + (0, x2^eps)
        let eps = 3;
        let d = DeltaExpression {
            epsilon: eps,
            kernel_exp: eps - 1,
            orientation: Orientation::X2OverX1,
            terms: vec![(0, LaurentPoly::var_poly("x2"))],
        };
        let canonical = d.twist_derivative();
        let window = Window2::square(-6, 6);
        let oracle = twist_derivative_termwise(&d.expand(window.grow(4)), eps);
        assert_eq!(
            canonical.expand(window).restrict(Window2::square(-3, 3)),
            oracle.restrict(Window2::square(-3, 3))
        );
    }

    #[test]
    fn nfold_decomposition_within_window() {
        let eps = 2;
        let mut d = DeltaExpression::kernel(eps, eps - 1, Orientation::X2OverX1);
        for _ in 0..3 {
            d = d.twist_derivative();
        }
        let direct = DeltaExpression::twisted(eps, eps - 1, 3, Orientation::X2OverX1);
        let w = Window2::square(-5, 5);
        assert_eq!(d.expand(w), direct.expand(w));
    }

    #[test]
    fn plain_basis_leading_term_and_corrections() {
        // (v^eps d)^n = v^{n eps} d^n + f_1 d^{n-1} + ... + f_n with the
        // f_i polynomial for eps >= 1
        for eps in [1i64, 2, 3] {
            for n in 1..=4u32 {
                let d = DeltaExpression::twisted(eps, eps - 1, n, Orientation::X2OverX1);
                let plain = d.to_plain_basis();
                let lead = plain
                    .terms
                    .iter()
                    .find(|(j, _)| *j == n)
                    .map(|(_, c)| c.clone())
                    .unwrap();
                assert_eq!(
                    lead,
                    LaurentPoly::monomial("x2", n as i64 * eps, qone()),
                    "eps={eps} n={n}"
                );
                for (j, f) in &plain.terms {
                    if *j < n {
                        assert!(
                            f.min_exp().unwrap_or(0) >= 0,
                            "correction at order {j} is not polynomial: {f}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn basis_conversions_roundtrip_and_expand_alike() {
        for eps in [-2i64, 0, 1, 3] {
            let d = DeltaExpression {
                epsilon: eps,
                kernel_exp: eps - 1,
                orientation: Orientation::X2OverX1,
                terms: vec![
                    (0, LaurentPoly::from_terms("x2", [(0, qi(2)), (-1, qi(5))])),
                    (2, LaurentPoly::var_poly("x2")),
                    (3, LaurentPoly::one("x2")),
                ],
            };
            let plain = d.to_plain_basis();
            // the plain form is the same distribution
            let w = Window2::square(-6, 6);
            assert_eq!(d.expand(w), plain.expand(w), "eps = {eps}");
            // and converting back recovers the twisted form
            let back = DeltaExpression::from_plain_basis(&plain, eps);
            let mut want = d.terms.clone();
            want.retain(|(_, c)| !c.is_zero());
            assert_eq!(back.terms, want, "eps = {eps}");
        }
    }

    #[test]
    fn difference_power_vanishing() {
        // m=1, n=0 on the plain kernel
        let d = DeltaExpression::kernel(0, -1, Orientation::X2OverX1);
        let prod = mul_difference_power(&d, 1, Window2::square(-4, 4));
        assert!(prod.is_zero());
        for eps in -2..=3 {
            assert!(
                check_difference_vanishing(eps, 5, Window2::square(-8, 8)).passed(),
                "eps = {eps}"
            );
        }
        // m=2, n=1, eps=3 on [-6,6]^2
        let d = DeltaExpression::twisted(3, -1, 1, Orientation::X2OverX1);
        assert!(mul_difference_power(&d, 2, Window2::square(-6, 6)).is_zero());
    }

    #[test]
    fn residue_of_plain_kernel() {
        let d = DeltaExpression::kernel(0, -1, Orientation::X2OverX1);
        let b = d.expand(Window2::square(-4, 4));
        assert_eq!(
            b.residue_x1().unwrap(),
            LaurentPoly::one("x2").restrict(-4, 4)
        );
    }

    #[test]
    fn residue_formula() {
        for eps in -2..=3 {
            let r = check_residue_formula(eps, 5, Window2::square(-8, 8));
            assert!(r.passed(), "eps = {eps}: {r}");
        }
    }

    #[test]
    fn residue_window_overflow() {
        let d = DeltaExpression::kernel(0, -1, Orientation::X2OverX1);
        let b = d.expand(Window2 {
            lo1: 0,
            hi1: 4,
            lo2: -4,
            hi2: 4,
        });
        assert!(matches!(
            b.residue_x1(),
            Err(SeriesError::WindowOverflow(_))
        ));
    }

    #[test]
    fn delta_symmetry() {
        for eps in [-2i64, -1, 0, 2, 3] {
            assert!(
                check_delta_symmetry(eps, Window2::square(-6, 6)).passed(),
                "eps = {eps}"
            );
        }
    }

    #[test]
    fn three_term_identity() {
        let r = three_term_delta_check(-4, 4);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn binomial_extraction_sanity() {
        // single-term check: coefficient of x1^{n-k} x2^k x0^{-n-1} in
        // x0^{-1} delta((x1-x2)/x0) is C(n,k)(-1)^k
        let terms = delta_frac_terms(-6, 6, 8);
        let find = |n: i64, k: i64| -> Q {
            terms
                .iter()
                .filter(|((nn, kk), _)| *nn == n && *kk == k)
                .map(|(_, c)| c.clone())
                .sum()
        };
        assert_eq!(find(3, 1), qi(-3));
        assert_eq!(find(-1, 2), qi(1));
        assert_eq!(find(-2, 3), qi(4));
        assert_eq!(find(2, 5), qi(0));
    }

    #[test]
    fn window_consistency() {
        for eps in -2..=3 {
            let r =
                check_window_consistency(eps, 2, Window2::square(-4, 4), Window2::square(-9, 9));
            assert!(r.passed(), "eps = {eps}");
        }
    }
}
