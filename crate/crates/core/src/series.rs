//! Sparse Laurent polynomials and truncated iterated series.
//!
//! `LaurentPoly` is a finite Q-linear combination of integer powers of a
//! single variable. `IteratedSeries` models an element of
//! Q((x))[[z_1,...,z_k]] truncated modulo the ideal (z_1,...,z_k)^{N+1},
//! i.e. modulo total degree N+1 in the formal variables; coefficients are
//! Laurent polynomials in the base variable.
//!
//! All arithmetic is exact. Operations that would create infinitely many
//! base-variable terms (inverting a series whose leading coefficient is not
//! a monomial) produce values that are only valid inside an explicit
//! exponent window; mixing incompatible windows is an error, never a
//! silently wrong answer.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{format_rational, qi, qone, Q};
use num::{One, Zero};

/// Default base-variable exponent window for windowed operations.
pub const DEFAULT_WINDOW: (i64, i64) = (-24, 24);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term is not a unit: {0}")]
    NotAUnit(String),
    #[error("base-variable window exceeded: {0}")]
    WindowOverflow(String),
    #[error("cannot substitute: {0}")]
    Substitution(String),
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

/// Sparse Laurent polynomial over Q in one variable.
///
/// No zero coefficients are stored; the zero polynomial has an empty term
/// map.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    var: String,
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero(var: &str) -> Self {
        LaurentPoly {
            var: var.to_string(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(var: &str, c: Q) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn one(var: &str) -> Self {
        Self::constant(var, qone())
    }

    /// c * var^exp
    pub fn monomial(var: &str, exp: i64, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly {
            var: var.to_string(),
            terms,
        }
    }

    /// The variable itself.
    pub fn var_poly(var: &str) -> Self {
        Self::monomial(var, 1, qone())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Q)>>(var: &str, iter: I) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Q {
        self.terms.get(&exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Some((exp, coeff)) when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(i64, Q)> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            Some((e, c.clone()))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, exp: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "variable mismatch");
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.var);
        }
        LaurentPoly {
            var: self.var.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, x)| (e, x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "variable mismatch");
        let mut out = Self::zero(&self.var);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiply by var^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// d/dvar.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(&self.var);
        for (&e, c) in &self.terms {
            out.add_term(e - 1, c.clone() * qi(e));
        }
        out
    }

    /// var^epsilon * d/dvar, the twisted derivation generating the flows
    /// used throughout this crate.
    pub fn twisted_derivative(&self, epsilon: i64) -> Self {
        self.derivative().shift(epsilon)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.var);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Restrict to exponents inside [lo, hi].
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        LaurentPoly {
            var: self.var.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&e, _)| lo <= e && e <= hi)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Rename the variable (used when moving a coefficient between slots).
    pub fn rename(&self, var: &str) -> Self {
        LaurentPoly {
            var: var.to_string(),
            terms: self.terms.clone(),
        }
    }

    /// Laurent-series inverse truncated to the exponent window.
    ///
    /// Exact when the polynomial is a monomial; otherwise the true inverse
    /// has unbounded support and only the windowed restriction is returned.
    pub fn invert_within(&self, window: (i64, i64)) -> Result<LaurentPoly, SeriesError> {
        let (lo, hi) = window;
        let d = self
            .min_exp()
            .ok_or_else(|| SeriesError::NotAUnit("zero polynomial".to_string()))?;
        let lead = self.coeff(d);
        if self.num_terms() == 1 {
            return Ok(LaurentPoly::monomial(&self.var, -d, qone() / lead));
        }
        // self = lead x^d (1 + t) with t supported on [1, ..]
        let t = self
            .shift(-d)
            .scale(&(qone() / lead.clone()))
            .sub(&LaurentPoly::one(&self.var));
        let cap = (hi + d).max(0);
        let mut acc = LaurentPoly::one(&self.var);
        let mut pw = LaurentPoly::one(&self.var);
        loop {
            pw = pw.mul(&t).neg().restrict(0, cap);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&(qone() / lead)).shift(-d).restrict(lo, hi))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{}", format_rational(c))?;
            } else if c.is_one() {
                write!(f, "{}^{}", self.var, e)?;
            } else {
                write!(f, "{}*{}^{}", format_rational(c), self.var, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// Iterated series
// ---------------------------------------------------------------------------

/// Element of Q((x))[[z_1,...,z_k]] truncated at total formal degree
/// `order`, with Laurent-polynomial coefficients in the base variable.
///
/// `window` is `None` for exact values (every stored coefficient is the
/// literal truth) and `Some((lo, hi))` for values whose base-variable
/// coefficients are only valid inside [lo, hi].
#[derive(Clone, PartialEq, Eq)]
pub struct IteratedSeries {
    base: String,
    formal: Vec<String>,
    order: u32,
    window: Option<(i64, i64)>,
    coeffs: BTreeMap<Vec<u32>, LaurentPoly>,
}

impl IteratedSeries {
    pub fn zero(base: &str, formal: &[&str], order: u32) -> Self {
        IteratedSeries {
            base: base.to_string(),
            formal: formal.iter().map(|s| s.to_string()).collect(),
            order,
            window: None,
            coeffs: BTreeMap::new(),
        }
    }

    /// Embed a Laurent polynomial as the formal-constant term.
    pub fn from_laurent(p: &LaurentPoly, formal: &[&str], order: u32) -> Self {
        let mut s = Self::zero(p.var(), formal, order);
        s.set_coeff(&vec![0; formal.len()], p.clone());
        s
    }

    pub fn one(base: &str, formal: &[&str], order: u32) -> Self {
        Self::from_laurent(&LaurentPoly::one(base), formal, order)
    }

    /// The base variable as a series.
    pub fn base_var(base: &str, formal: &[&str], order: u32) -> Self {
        Self::from_laurent(&LaurentPoly::var_poly(base), formal, order)
    }

    /// A single formal variable as a series.
    pub fn formal_var(base: &str, formal: &[&str], order: u32, var: &str) -> Self {
        let mut s = Self::zero(base, formal, order);
        let idx = s.formal_index(var);
        let mut key = vec![0u32; s.formal.len()];
        key[idx] = 1;
        if order >= 1 {
            s.set_coeff(&key, LaurentPoly::one(base));
        }
        s
    }

    fn formal_index(&self, var: &str) -> usize {
        self.formal
            .iter()
            .position(|v| v == var)
            .unwrap_or_else(|| panic!("unknown formal variable `{var}`"))
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn formal_vars(&self) -> &[String] {
        &self.formal
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        self.window
    }

    pub fn is_exact(&self) -> bool {
        self.window.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &[u32]) -> LaurentPoly {
        assert_eq!(key.len(), self.formal.len(), "exponent tuple arity");
        self.coeffs
            .get(key)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.base))
    }

    /// Coefficient of the all-zero formal exponent tuple.
    pub fn formal_constant(&self) -> LaurentPoly {
        self.coeff(&vec![0; self.formal.len()])
    }

    pub fn set_coeff(&mut self, key: &[u32], p: LaurentPoly) {
        assert_eq!(key.len(), self.formal.len(), "exponent tuple arity");
        let total: u32 = key.iter().sum();
        if total > self.order || p.is_zero() {
            self.coeffs.remove(key);
        } else {
            self.coeffs.insert(key.to_vec(), p);
        }
    }

    pub fn add_to_coeff(&mut self, key: &[u32], p: &LaurentPoly) {
        let total: u32 = key.iter().sum();
        if total > self.order || p.is_zero() {
            return;
        }
        let cur = self.coeff(key);
        self.set_coeff(key, cur.add(p));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.coeffs.iter()
    }

    fn zero_like(&self) -> Self {
        IteratedSeries {
            base: self.base.clone(),
            formal: self.formal.clone(),
            order: self.order,
            window: self.window,
            coeffs: BTreeMap::new(),
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.base, other.base, "base variable mismatch");
        assert_eq!(self.formal, other.formal, "formal variable mismatch");
        assert_eq!(self.order, other.order, "truncation order mismatch");
    }

    fn merged_window(&self, other: &Self) -> Option<(i64, i64)> {
        match (self.window, other.window) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w),
            (Some((a, b)), Some((c, d))) => Some((a.max(c), b.min(d))),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        out.window = self.merged_window(other);
        for (k, p) in &other.coeffs {
            out.add_to_coeff(k, p);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for p in out.coeffs.values_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = self.zero_like();
        for (k, p) in &self.coeffs {
            out.set_coeff(k, p.scale(c));
        }
        out
    }

    /// Multiply every coefficient by a fixed Laurent polynomial.
    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        let mut out = self.zero_like();
        out.window = self.window.map(|(lo, hi)| {
            let pmin = p.min_exp().unwrap_or(0);
            let pmax = p.max_exp().unwrap_or(0);
            (lo + pmax, hi + pmin)
        });
        for (k, c) in &self.coeffs {
            out.set_coeff(k, c.mul(p));
        }
        out
    }

    fn global_support(&self) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = 0;
        let mut first = true;
        for p in self.coeffs.values() {
            if let (Some(a), Some(b)) = (p.min_exp(), p.max_exp()) {
                if first {
                    lo = a;
                    hi = b;
                    first = false;
                } else {
                    lo = lo.min(a);
                    hi = hi.max(b);
                }
            }
        }
        (lo, hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let window = match (self.window, other.window) {
            (None, None) => None,
            (Some((lo, hi)), None) => {
                let (omin, omax) = other.global_support();
                Some((lo + omax, hi + omin))
            }
            (None, Some((lo, hi))) => {
                let (omin, omax) = self.global_support();
                Some((lo + omax, hi + omin))
            }
            (Some(_), Some(_)) => panic!("product of two windowed series is not supported"),
        };
        let mut out = self.zero_like();
        out.window = window;
        for (k1, p1) in &self.coeffs {
            for (k2, p2) in &other.coeffs {
                let key: Vec<u32> = k1.iter().zip(k2.iter()).map(|(a, b)| a + b).collect();
                if key.iter().sum::<u32>() > self.order {
                    continue;
                }
                out.add_to_coeff(&key, &p1.mul(p2));
            }
        }
        out
    }

    /// Apply x^epsilon d/dx to every coefficient (x the base variable).
    pub fn apply_derivation(&self, epsilon: i64) -> Self {
        let mut out = self.zero_like();
        out.window = self
            .window
            .map(|(lo, hi)| (lo + epsilon.max(0), hi + epsilon.min(0)));
        for (k, p) in &self.coeffs {
            out.set_coeff(k, p.twisted_derivative(epsilon));
        }
        out
    }

    /// Multiply by var^k for a formal variable.
    pub fn shift_formal(&self, var: &str, k: u32) -> Self {
        let idx = self.formal_index(var);
        let mut out = self.zero_like();
        for (key, p) in &self.coeffs {
            let mut key = key.clone();
            key[idx] += k;
            out.set_coeff(&key, p.clone());
        }
        out
    }

    fn shift_formal_key(&self, shift: &[u32]) -> Self {
        let mut out = self.zero_like();
        for (key, p) in &self.coeffs {
            let key: Vec<u32> = key.iter().zip(shift.iter()).map(|(a, b)| a + b).collect();
            out.set_coeff(&key, p.clone());
        }
        out
    }

    /// Divide by a formal variable; fails if any term is constant in it.
    /// The result is only trustworthy to total order `order - 1`.
    pub fn div_formal(&self, var: &str) -> Result<Self, SeriesError> {
        let idx = self.formal_index(var);
        let mut out = self.zero_like();
        for (key, p) in &self.coeffs {
            if key[idx] == 0 {
                return Err(SeriesError::Substitution(format!(
                    "term {key:?} has no factor of {var}"
                )));
            }
            let mut key = key.clone();
            key[idx] -= 1;
            out.set_coeff(&key, p.clone());
        }
        Ok(out)
    }

    /// Lower the truncation order, dropping higher terms.
    pub fn truncate(&self, order: u32) -> Self {
        let mut out = self.clone();
        out.order = order;
        out.coeffs.retain(|k, _| k.iter().sum::<u32>() <= order);
        out
    }

    /// Re-embed into a larger ordered formal-variable list.
    pub fn with_formals(&self, formal: &[&str]) -> Self {
        let positions: Vec<usize> = self
            .formal
            .iter()
            .map(|v| {
                formal
                    .iter()
                    .position(|w| w == v)
                    .unwrap_or_else(|| panic!("formal variable `{v}` missing from target list"))
            })
            .collect();
        let mut out = Self::zero(&self.base, formal, self.order);
        out.window = self.window;
        for (key, p) in &self.coeffs {
            let mut new_key = vec![0u32; formal.len()];
            for (i, &e) in key.iter().enumerate() {
                new_key[positions[i]] = e;
            }
            out.set_coeff(&new_key, p.clone());
        }
        out
    }

    /// Drop a formal variable that no term uses.
    pub fn remove_formal(&self, var: &str) -> Result<Self, SeriesError> {
        let idx = self.formal_index(var);
        for key in self.coeffs.keys() {
            if key[idx] != 0 {
                return Err(SeriesError::Substitution(format!(
                    "variable {var} still occurs with exponent {}",
                    key[idx]
                )));
            }
        }
        let formal: Vec<&str> = self
            .formal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, v)| v.as_str())
            .collect();
        let mut out = Self::zero(&self.base, &formal, self.order);
        out.window = self.window;
        for (key, p) in &self.coeffs {
            let mut new_key = key.clone();
            new_key.remove(idx);
            out.set_coeff(&new_key, p.clone());
        }
        Ok(out)
    }

    /// Multiplicative inverse within the truncation.
    ///
    /// Exact when the formal-constant coefficient is a monomial; otherwise
    /// the inverse needs infinitely many base-variable terms and the result
    /// is computed and marked valid only inside `window`.
    pub fn invert(&self, window: (i64, i64)) -> Result<Self, SeriesError> {
        let c0 = self.formal_constant();
        if c0.is_zero() {
            return Err(SeriesError::NotAUnit(
                "formal-constant term is zero".to_string(),
            ));
        }
        let monomial_lead = c0.num_terms() == 1 && self.window.is_none();
        let window = match self.window {
            Some((a, b)) => (a.max(window.0), b.min(window.1)),
            None => window,
        };
        let lead_inv = c0.invert_within(window)?;
        let one = Self::one(&self.base, &self.vars_as_str(), self.order);
        if monomial_lead {
            // s = c0 (1 + u), u of formal degree >= 1: finite geometric sum.
            let u = self.scale_poly(&lead_inv).sub(&one);
            let mut acc = one.clone();
            let mut pw = one;
            for _ in 0..self.order {
                pw = pw.mul(&u).neg();
                if pw.is_zero() {
                    break;
                }
                acc = acc.add(&pw);
            }
            return Ok(acc.scale_poly(&lead_inv));
        }
        // Windowed route: all products restricted to the window as we go.
        let mut u = self.windowed_scale_poly(&lead_inv, window);
        u = u.sub(&one.windowed(window));
        let ukey = vec![0u32; self.formal.len()];
        u.set_coeff(&ukey, LaurentPoly::zero(&self.base));
        let mut acc = one.windowed(window);
        let mut pw = acc.clone();
        for _ in 0..self.order {
            pw = pw.windowed_mul(&u, window).neg();
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.windowed_scale_poly(&lead_inv, window))
    }

    fn windowed(&self, window: (i64, i64)) -> Self {
        let mut out = self.clone();
        out.window = Some(window);
        for p in out.coeffs.values_mut() {
            *p = p.restrict(window.0, window.1);
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        out
    }

    fn windowed_scale_poly(&self, p: &LaurentPoly, window: (i64, i64)) -> Self {
        let mut out = self.zero_like();
        out.window = Some(window);
        for (k, c) in &self.coeffs {
            out.set_coeff(k, c.mul(p).restrict(window.0, window.1));
        }
        out
    }

    fn windowed_mul(&self, other: &Self, window: (i64, i64)) -> Self {
        let mut out = self.zero_like();
        out.window = Some(window);
        for (k1, p1) in &self.coeffs {
            for (k2, p2) in &other.coeffs {
                let key: Vec<u32> = k1.iter().zip(k2.iter()).map(|(a, b)| a + b).collect();
                if key.iter().sum::<u32>() > self.order {
                    continue;
                }
                out.add_to_coeff(&key, &p1.mul(p2).restrict(window.0, window.1));
            }
        }
        out
    }

    /// Integer power, inverting for negative exponents.
    pub fn pow_i(&self, e: i64, window: (i64, i64)) -> Result<Self, SeriesError> {
        let one = Self::one(&self.base, &self.vars_as_str(), self.order);
        if e == 0 {
            return Ok(one);
        }
        let b = if e > 0 {
            self.clone()
        } else {
            self.invert(window)?
        };
        let mut acc = one;
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&b);
        }
        Ok(acc)
    }

    /// Substitute an iterated series for a formal variable.
    ///
    /// `t` must have zero formal-constant term so that the composition is
    /// well defined on truncated data.
    pub fn substitute_formal(&self, var: &str, t: &Self) -> Result<Self, SeriesError> {
        if !t.formal_constant().is_zero() {
            return Err(SeriesError::Substitution(format!(
                "series substituted for {var} has a nonzero constant term"
            )));
        }
        Ok(self.substitute_formal_unchecked(var, t))
    }

    /// Substitute for a formal variable without the zero-constant-term
    /// check. Only sound when the receiver is a genuine polynomial in
    /// `var`, i.e. nothing was truncated away in that variable.
    pub fn substitute_formal_poly(&self, var: &str, t: &Self) -> Self {
        self.substitute_formal_unchecked(var, t)
    }

    fn substitute_formal_unchecked(&self, var: &str, t: &Self) -> Self {
        self.assert_compatible(t);
        let idx = self.formal_index(var);
        // self = sum_j S_j * var^j with S_j free of var
        let mut slices: BTreeMap<u32, IteratedSeries> = BTreeMap::new();
        for (key, p) in &self.coeffs {
            let j = key[idx];
            let mut base_key = key.clone();
            base_key[idx] = 0;
            slices
                .entry(j)
                .or_insert_with(|| self.zero_like())
                .set_coeff(&base_key, p.clone());
        }
        let mut out = self.zero_like();
        let mut t_pow = Self::one(&self.base, &self.vars_as_str(), self.order);
        let mut next_j = 0u32;
        for (&j, slice) in &slices {
            while next_j < j {
                t_pow = t_pow.mul(t);
                next_j += 1;
            }
            out = out.add(&slice.mul(&t_pow));
        }
        out
    }

    /// Substitute an iterated series for the base variable.
    ///
    /// `t` must have a monomial formal-constant term so that negative
    /// powers of it expand exactly.
    pub fn substitute_base(&self, t: &Self, window: (i64, i64)) -> Result<Self, SeriesError> {
        assert_eq!(self.formal, t.formal, "formal variable mismatch");
        assert_eq!(self.order, t.order, "truncation order mismatch");
        let c0 = t.formal_constant();
        if c0.as_monomial().is_none() {
            return Err(SeriesError::Substitution(
                "base substitution needs a monomial leading term".to_string(),
            ));
        }
        let mut powers: BTreeMap<i64, IteratedSeries> = BTreeMap::new();
        let one = IteratedSeries::one(t.base(), &t.vars_as_str(), self.order);
        powers.insert(0, one);
        let t_inv = t.invert(window)?;
        let mut out = IteratedSeries::zero(t.base(), &t.vars_as_str(), self.order);
        let mut exps: Vec<i64> = Vec::new();
        for p in self.coeffs.values() {
            for (e, _) in p.terms() {
                exps.push(e);
            }
        }
        exps.sort_unstable();
        exps.dedup();
        for &e in &exps {
            if powers.contains_key(&e) {
                continue;
            }
            if e > 0 {
                let start = powers
                    .keys()
                    .filter(|&&k| k >= 0 && k < e)
                    .max()
                    .copied()
                    .unwrap_or(0);
                let mut acc = powers[&start].clone();
                for _ in start..e {
                    acc = acc.mul(t);
                }
                powers.insert(e, acc);
            } else {
                let start = powers
                    .keys()
                    .filter(|&&k| k <= 0 && k > e)
                    .min()
                    .copied()
                    .unwrap_or(0);
                let mut acc = powers[&start].clone();
                for _ in e..start {
                    acc = acc.mul(&t_inv);
                }
                powers.insert(e, acc);
            }
        }
        for (key, p) in &self.coeffs {
            for (e, c) in p.terms() {
                let term = powers[&e].scale(c).shift_formal_key(key);
                out = out.add(&term);
            }
        }
        Ok(out)
    }

    /// Coefficientwise equality; both values must be exact or share a
    /// usable common window.
    pub fn eq_within(&self, other: &Self) -> Result<bool, SeriesError> {
        self.assert_compatible(other);
        match (self.window, other.window) {
            (None, None) => Ok(self.coeffs == other.coeffs),
            _ => {
                let (lo, hi) = match self.merged_window(other) {
                    Some(w) => w,
                    None => unreachable!(),
                };
                if lo > hi {
                    return Err(SeriesError::WindowMismatch(format!(
                        "empty common window [{lo}, {hi}]"
                    )));
                }
                let mut keys: Vec<&Vec<u32>> = self.coeffs.keys().collect();
                keys.extend(other.coeffs.keys());
                keys.sort();
                keys.dedup();
                for key in keys {
                    let a = self.coeff(key).restrict(lo, hi);
                    let b = other.coeff(key).restrict(lo, hi);
                    if a != b {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    fn vars_as_str(&self) -> Vec<&str> {
        self.formal.iter().map(|s| s.as_str()).collect()
    }
}

impl fmt::Display for IteratedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, p) in &self.coeffs {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "({})", p)?;
            for (i, &e) in key.iter().enumerate() {
                if e > 0 {
                    write!(f, "*{}^{}", self.formal[i], e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IteratedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
