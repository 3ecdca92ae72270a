//! Induced vacuum modules in PBW normal ordering.
//!
//! For a Novikov algebra with invariant form and a deformation parameter
//! eps, the mode algebra acts on the module induced from the level-ell
//! one-dimensional representation of its nonnegative half: modes
//! m >= eps-1 kill the vacuum, modes m <= eps-2 create, and the center
//! acts as the scalar ell. Vectors are stored on the normal-ordered word
//! basis (modes weakly increasing left to right, ties broken by basis
//! index), which the PBW theorem makes a basis.
//!
//! At eps = 0 the module carries the vertex-algebra structure; `VertexOps`
//! evaluates arbitrary modes u_n w through the iterate formula
//!
//!   (a_M b)_n = sum_i C(M,i)(-1)^i (a_{M-i} b_{n+i} - (-1)^M b_{M+n-i} a_i)
//!
//! grounded at generators by a_n = L(a, n-1). All internal sums are finite:
//! high modes annihilate any fixed vector and the grading pins everything
//! else down.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::lie::LieElement;
use crate::novikov::{check_form, is_left_novikov, AlgebraError, AlgebraSpec};
use crate::report::CheckReport;
use crate::scalar::{binomial, q, qi, qone, Q};
use num::Zero;

/// One creation/annihilation letter: (basis index, mode).
pub type Letter = (usize, i64);
/// A normal-ordered monomial acting on the vacuum.
pub type Word = Vec<Letter>;

/// Configuration of one vacuum module.
#[derive(Clone, Debug)]
pub struct ModuleConfig {
    pub algebra: AlgebraSpec,
    pub epsilon: i64,
    pub level: Q,
    pub degree_cap: i64,
}

impl ModuleConfig {
    /// Validates that the algebra is Novikov and its form invariant.
    ///
    /// `epsilon` must be nonnegative: the bracket sends a (x) t^r, b (x) t^s
    /// to exponent r + s + eps - 1, so for eps <= -1 the nonnegative half is
    /// not a subalgebra ([a (x) t, b (x) 1] = ab (x) t^eps) and no induced
    /// vacuum module exists.
    pub fn new(
        algebra: AlgebraSpec,
        epsilon: i64,
        level: Q,
        degree_cap: i64,
    ) -> Result<Self, AlgebraError> {
        if epsilon < 0 {
            return Err(AlgebraError::Domain(format!(
                "no vacuum module at eps = {epsilon}: the nonnegative half \
                 is a subalgebra only for eps >= 0"
            )));
        }
        if !is_left_novikov(&algebra).passed() {
            return Err(AlgebraError::Domain(format!(
                "{} is not a Novikov algebra",
                algebra.name
            )));
        }
        if !check_form(&algebra)?.passed() {
            return Err(AlgebraError::Domain(format!(
                "the form on {} is not invariant",
                algebra.name
            )));
        }
        Ok(ModuleConfig {
            algebra,
            epsilon,
            level,
            degree_cap,
        })
    }

    /// Largest mode that still creates: eps - 2.
    pub fn creation_max(&self) -> i64 {
        self.epsilon - 2
    }
}

pub fn word_degree(w: &[Letter]) -> i64 {
    w.iter().map(|&(_, m)| -m).sum()
}

/// Vector of the induced module on the normal-ordered word basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PBWVector {
    terms: BTreeMap<Word, Q>,
    /// Set when components above the degree cap were discarded; every
    /// overflow-free computation is exact.
    pub overflow: bool,
}

impl PBWVector {
    pub fn zero() -> Self {
        PBWVector::default()
    }

    pub fn vacuum() -> Self {
        let mut v = PBWVector::default();
        v.terms.insert(Vec::new(), qone());
        v
    }

    pub fn from_word(w: Word, c: Q) -> Self {
        let mut v = PBWVector::default();
        if !c.is_zero() {
            v.terms.insert(w, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.overflow |= other.overflow;
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return PBWVector {
                terms: BTreeMap::new(),
                overflow: self.overflow,
            };
        }
        PBWVector {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
                .collect(),
            overflow: self.overflow,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-qone()))
    }

    /// Largest word degree present (None when zero).
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|w| word_degree(w)).max()
    }

    /// True when every word has the given degree.
    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.terms.keys().all(|w| word_degree(w) == degree)
    }
}

/// Largest mode n for which L(b, n) can act nontrivially on v. A
/// surviving path either merges the letter into a creation mode
/// (n + subset sum <= eps - 2, so n <= eps - 2 + negative mode mass) or
/// collapses it against letters through the central pairing
/// (n + subset sum = 0, so n <= negative mode mass). Anything above both
/// bounds acts as zero.
pub fn max_nonzero_mode(cfg: &ModuleConfig, v: &PBWVector) -> i64 {
    let neg_mass = v
        .terms
        .keys()
        .map(|w| w.iter().map(|&(_, m)| (-m).max(0)).sum::<i64>())
        .max()
        .unwrap_or(0);
    neg_mass + cfg.creation_max().max(0)
}

fn first_inversion(w: &[Letter]) -> Option<usize> {
    for p in 0..w.len().saturating_sub(1) {
        let (a, n) = w[p];
        let (b, m) = w[p + 1];
        if n > m || (n == m && a > b) {
            return Some(p);
        }
    }
    None
}

/// Replace the adjacent inversion at position p by the swapped word plus
/// the bracket terms, pushing everything back onto the worklist.
fn rewrite_inversion(cfg: &ModuleConfig, w: &[Letter], c: &Q, p: usize, work: &mut Vec<(Word, Q)>) {
    let e = cfg.epsilon;
    let (a, n) = w[p];
    let (b, m) = w[p + 1];
    let mut swapped = w.to_vec();
    swapped.swap(p, p + 1);
    work.push((swapped, c.clone()));
    // [L(a,n), L(b,m)] inserted at p
    let mut merged = |k: usize, coeff: Q| {
        if coeff.is_zero() {
            return;
        }
        let mut nw = Vec::with_capacity(w.len() - 1);
        nw.extend_from_slice(&w[..p]);
        nw.push((k, n + m));
        nw.extend_from_slice(&w[p + 2..]);
        work.push((nw, coeff));
    };
    for (k, p_ab) in cfg.algebra.product_indices(a, b).iter().enumerate() {
        merged(k, c.clone() * p_ab.clone() * qi(n + 1 - e));
    }
    for (k, p_ba) in cfg.algebra.product_indices(b, a).iter().enumerate() {
        merged(k, -(c.clone() * p_ba.clone() * qi(m + 1 - e)));
    }
    if n + m == 0 {
        let central = q(1, 12)
            * qi(n + 1 - e)
            * qi(n)
            * qi(n - 1 + e)
            * cfg.algebra.form_entry(a, b)
            * cfg.level.clone();
        if !central.is_zero() {
            let mut nw = Vec::with_capacity(w.len() - 2);
            nw.extend_from_slice(&w[..p]);
            nw.extend_from_slice(&w[p + 2..]);
            work.push((nw, c.clone() * central));
        }
    }
}

/// Rewrite a worklist of (possibly unordered) words into the normal-ordered
/// basis. Each step either swaps one adjacent inversion (bracket terms are
/// strictly shorter), so the rewriting terminates; sorted words whose last
/// letter annihilates the vacuum vanish. The inversion picked at each step
/// is irrelevant (the rewriting is confluent); `pick` fixes the strategy.
fn normalize_with(
    cfg: &ModuleConfig,
    mut work: Vec<(Word, Q)>,
    pick: fn(&[Letter]) -> Option<usize>,
) -> PBWVector {
    let e = cfg.epsilon;
    let mut out = PBWVector::zero();
    while let Some((w, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        match pick(&w) {
            None => {
                if let Some(&(_, last_mode)) = w.last() {
                    if last_mode >= e - 1 {
                        continue; // annihilates the vacuum
                    }
                }
                if word_degree(&w) > cfg.degree_cap {
                    out.overflow = true;
                    continue;
                }
                out.add_term(w, c);
            }
            Some(p) => rewrite_inversion(cfg, &w, &c, p, &mut work),
        }
    }
    out
}

fn normalize(cfg: &ModuleConfig, work: Vec<(Word, Q)>) -> PBWVector {
    normalize_with(cfg, work, first_inversion)
}

/// Act by the generator L(a_idx, mode) on a module vector.
pub fn act(cfg: &ModuleConfig, idx: usize, mode: i64, v: &PBWVector) -> PBWVector {
    let work: Vec<(Word, Q)> = v
        .iter()
        .map(|(w, c)| {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push((idx, mode));
            nw.extend_from_slice(w);
            (nw, c.clone())
        })
        .collect();
    let mut out = normalize(cfg, work);
    out.overflow |= v.overflow;
    out
}

/// Act by a Lie-algebra element; the central part acts as the level.
pub fn apply_lie(cfg: &ModuleConfig, x: &LieElement, v: &PBWVector) -> PBWVector {
    let mut out = v.scale(&(x.central.clone() * cfg.level.clone()));
    for (&(i, m), c) in x.terms() {
        out = out.add(&act(cfg, i as usize, m, v).scale(c));
    }
    out
}

/// The basis vector identified with a basis element of the algebra:
/// L(a, -2) applied to the vacuum (the degree-2 slice at eps = 0).
pub fn generator_vector(cfg: &ModuleConfig, idx: usize) -> PBWVector {
    act(cfg, idx, -2, &PBWVector::vacuum())
}

/// All normal-ordered words of the given degree (eps = 0 letters, modes
/// <= -2), in lexicographic order.
pub fn words_of_degree(cfg: &ModuleConfig, degree: i64) -> Vec<Word> {
    fn rec(dim: usize, remaining: i64, min_letter: Letter, acc: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        // letters in nondecreasing (mode, index) order; degree of a letter
        // with mode m <= -2 is -m >= 2
        for d in 2..=remaining {
            let mode = -d;
            for idx in 0..dim {
                if (mode, idx) < (min_letter.1, min_letter.0) {
                    continue;
                }
                acc.push((idx, mode));
                rec(dim, remaining - d, (idx, mode), acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    if degree == 0 {
        out.push(Vec::new());
        return out;
    }
    if degree < 2 {
        return out;
    }
    let mut acc = Vec::new();
    rec(
        cfg.algebra.dim(),
        degree,
        (0, i64::MIN / 2),
        &mut acc,
        &mut out,
    );
    out
}

// ---------------------------------------------------------------------------
// Vertex-operator modes at eps = 0
// ---------------------------------------------------------------------------

/// Mode evaluation u_n w on the eps = 0 vacuum module through the iterate
/// formula, memoized on (word, mode, word).
pub struct VertexOps<'a> {
    pub cfg: &'a ModuleConfig,
    memo: RefCell<HashMap<(Word, i64, Word), PBWVector>>,
}

impl<'a> VertexOps<'a> {
    pub fn new(cfg: &'a ModuleConfig) -> Self {
        assert_eq!(
            cfg.epsilon, 0,
            "vertex-operator modes live on the eps = 0 module"
        );
        VertexOps {
            cfg,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// u_n w for module vectors u, w.
    pub fn mode(&self, u: &PBWVector, n: i64, w: &PBWVector) -> PBWVector {
        let mut out = PBWVector::zero();
        out.overflow = u.overflow || w.overflow;
        for (uw, cu) in u.iter() {
            for (ww, cw) in w.iter() {
                out = out.add(&self.mode_word(uw, n, ww).scale(&(cu.clone() * cw.clone())));
            }
        }
        out
    }

    fn mode_vector_word(&self, u: &Word, n: i64, w: &PBWVector) -> PBWVector {
        let mut out = PBWVector::zero();
        out.overflow = w.overflow;
        for (ww, cw) in w.iter() {
            out = out.add(&self.mode_word(u, n, ww).scale(cw));
        }
        out
    }

    fn mode_word(&self, u: &Word, n: i64, w: &Word) -> PBWVector {
        let key = (u.clone(), n, w.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let result = self.mode_word_uncached(u, n, w);
        self.memo.borrow_mut().insert(key, result.clone());
        result
    }

    fn mode_word_uncached(&self, u: &Word, n: i64, w: &Word) -> PBWVector {
        if u.is_empty() {
            // vacuum modes: 1_n = delta_{n,-1} id
            return if n == -1 {
                PBWVector::from_word(w.to_vec(), qone())
            } else {
                PBWVector::zero()
            };
        }
        let (a, m) = u[0];
        let rest: Word = u[1..].to_vec();
        let big_m = m + 1; // u = a_{big_m} (rest)
        let du = word_degree(&rest);
        let dw = word_degree(w);
        let mut out = PBWVector::zero();
        // A-terms: sum_i C(M,i)(-1)^i a_{M-i}(rest_{n+i} w); the grading
        // kills rest_k w once k > du + dw - 1
        let i_max_a = du + dw - 1 - n;
        let mut i = 0i64;
        while i <= i_max_a {
            let inner = self.mode_word(&rest, n + i, w);
            if !inner.is_zero() {
                let sign = if i % 2 == 0 { qone() } else { -qone() };
                let coeff = binomial(big_m, i as u32) * sign;
                if !coeff.is_zero() {
                    let outer = act(self.cfg, a, big_m - i - 1, &inner);
                    out = out.add(&outer.scale(&coeff));
                }
            } else {
                out.overflow |= inner.overflow;
            }
            i += 1;
        }
        // B-terms: -(-1)^M sum_i C(M,i)(-1)^i rest_{M+n-i}(a_i w);
        // a_i w = act(a, i-1, w) dies once i - 1 > dw
        let m_sign = if big_m.rem_euclid(2) == 0 {
            qone()
        } else {
            -qone()
        };
        let w_vec = PBWVector::from_word(w.to_vec(), qone());
        let mut i = 0i64;
        while i <= dw + 1 {
            let aw = act(self.cfg, a, i - 1, &w_vec);
            if !aw.is_zero() {
                let sign = if i % 2 == 0 { qone() } else { -qone() };
                let coeff = binomial(big_m, i as u32) * sign * m_sign.clone();
                if !coeff.is_zero() {
                    let inner = self.mode_vector_word(&rest, big_m + n - i, &aw);
                    out = out.sub(&inner.scale(&coeff));
                }
            }
            i += 1;
        }
        out
    }

    /// The canonical translation operator: v |-> v_{-2} vacuum.
    pub fn d_op(&self, v: &PBWVector) -> PBWVector {
        self.mode(v, -2, &PBWVector::vacuum())
    }
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// Generator mode products on the eps = 0 vacuum module:
/// a_0 b = D(ba), a_1 b = ab + ba, a_2 b = 0,
/// a_3 b = (ell/2) <a,b> vacuum, a_k b = 0 for 4 <= k <= 8.
pub fn check_generator_relations(cfg: &ModuleConfig) -> CheckReport {
    let mut report = CheckReport::new("generator-mode-products")
        .with_param("algebra", &cfg.algebra.name)
        .with_param("level", &cfg.level);
    assert_eq!(cfg.epsilon, 0, "the relations are stated at eps = 0");
    let dim = cfg.algebra.dim();
    for a in 0..dim {
        for b in 0..dim {
            let bvec = generator_vector(cfg, b);
            // a_0 b = D(ba)
            let got = act(cfg, a, -1, &bvec);
            let mut want = PBWVector::zero();
            for (k, c) in cfg.algebra.product_indices(b, a).iter().enumerate() {
                want.add_term(vec![(k, -3)], c.clone());
            }
            report.compare(format!("a{a}_0 a{b}"), &got, &want);
            // a_1 b = ab + ba
            let got = act(cfg, a, 0, &bvec);
            let mut want = PBWVector::zero();
            for (k, c) in cfg.algebra.product_indices(a, b).iter().enumerate() {
                want.add_term(vec![(k, -2)], c.clone());
            }
            for (k, c) in cfg.algebra.product_indices(b, a).iter().enumerate() {
                want.add_term(vec![(k, -2)], c.clone());
            }
            report.compare(format!("a{a}_1 a{b}"), &got, &want);
            // a_2 b = 0
            report.compare(
                format!("a{a}_2 a{b}"),
                &act(cfg, a, 1, &bvec),
                &PBWVector::zero(),
            );
            // a_3 b = (ell/2) <a,b> vacuum
            let want = PBWVector::vacuum()
                .scale(&(cfg.level.clone() * cfg.algebra.form_entry(a, b) * q(1, 2)));
            report.compare(format!("a{a}_3 a{b}"), &act(cfg, a, 2, &bvec), &want);
            // a_k b = 0 for 4 <= k <= 8
            for k in 4..=8i64 {
                report.compare(
                    format!("a{a}_{k} a{b}"),
                    &act(cfg, a, k - 1, &bvec),
                    &PBWVector::zero(),
                );
            }
        }
    }
    report
}

/// deg(u_k v) = deg u + deg v - k - 1 on homogeneous samples.
pub fn grading_check(cfg: &ModuleConfig, max_degree: i64, mode_span: i64) -> CheckReport {
    let mut report = CheckReport::new("mode-grading-law")
        .with_param("algebra", &cfg.algebra.name)
        .with_param("max_degree", max_degree)
        .with_param("mode_span", mode_span);
    let ops = VertexOps::new(cfg);
    let mut samples: Vec<Word> = Vec::new();
    for d in 0..=max_degree {
        let words = words_of_degree(cfg, d);
        // full coverage at low degree, lexicographic prefix higher up
        let take = if d <= 5 {
            words.len()
        } else {
            3.min(words.len())
        };
        samples.extend(words.into_iter().take(take));
    }
    for u in &samples {
        for w in &samples {
            let du = word_degree(u);
            let dw = word_degree(w);
            for k in -mode_span..=mode_span {
                let got = ops.mode(
                    &PBWVector::from_word(u.clone(), qone()),
                    k,
                    &PBWVector::from_word(w.clone(), qone()),
                );
                report.tick();
                if got.overflow {
                    report.inconclusive(format!(
                        "degree cap reached at deg {du} x deg {dw}, k = {k}"
                    ));
                } else if !got.is_homogeneous_of(du + dw - k - 1) {
                    report.fail(format!(
                        "u = {u:?}, w = {w:?}, k = {k}: output not homogeneous of degree {}",
                        du + dw - k - 1
                    ));
                }
            }
        }
    }
    report
}

/// Recover the algebra product and form from the module: solve
/// D(a*b) = b_0 a for the product and read the form off a_3 b. The
/// roundtrip postcondition is product = input product and form = level x
/// input form.
/// Structure constants `c[i][j][k]` of a recovered product.
pub type ProductTensor = Vec<Vec<Vec<Q>>>;
/// A recovered bilinear form matrix.
pub type FormMatrix = Vec<Vec<Q>>;

pub fn recover_novikov(cfg: &ModuleConfig) -> Result<(ProductTensor, FormMatrix), AlgebraError> {
    assert_eq!(cfg.epsilon, 0);
    let dim = cfg.algebra.dim();
    let ops = VertexOps::new(cfg);
    // injectivity of D on the degree-2 slice: D(e_i) must stay independent
    for i in 0..dim {
        let d = ops.d_op(&generator_vector(cfg, i));
        if d.is_zero() || d.coeff(&[(i, -3)]).is_zero() {
            return Err(AlgebraError::Domain(
                "the translation operator is not injective on the degree-2 slice".to_string(),
            ));
        }
    }
    let mut product = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    let mut form = vec![vec![Q::zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            // b_0 a = D(a*b): the coefficient of the word [(k,-3)] is the
            // k-component of a*b
            let avec = generator_vector(cfg, a);
            let d_ab = act(cfg, b, -1, &avec);
            for (w, c) in d_ab.iter() {
                if w.len() != 1 || w[0].1 != -3 {
                    return Err(AlgebraError::Domain(format!(
                        "b_0 a left the expected slice: word {w:?}"
                    )));
                }
                product[a][b][w[0].0] = c.clone();
            }
            // a_3 b = (1/2) <a,b>_rec vacuum
            let bvec = generator_vector(cfg, b);
            let a3b = act(cfg, a, 2, &bvec);
            form[a][b] = a3b.coeff(&[]) * qi(2);
        }
    }
    Ok((product, form))
}

/// Verdict and mode-level relations for the compatible sl2 action on the
/// eps = 0 module. For commutative associative algebras the action exists
/// and satisfies
///   [X_{-1}, a_k] = -k a_{k-1},
///   [X_0, a_k] = (1-k) a_k,
///   [X_1, a_k] = (2-k) a_{k+1};
/// otherwise the module admits none and the report says so.
pub fn mobius_check(cfg: &ModuleConfig, mode_span: i64) -> CheckReport {
    let mut report = CheckReport::new("mobius-compatibility")
        .with_param("algebra", &cfg.algebra.name)
        .with_param("mode_span", mode_span);
    assert_eq!(cfg.epsilon, 0);
    let comm = crate::novikov::is_commutative_associative(&cfg.algebra);
    if !comm.passed() {
        report.expected_negative(format!(
            "not Moebius-compatible: {} is not commutative associative",
            cfg.algebra.name
        ));
        return report;
    }
    let dim = cfg.algebra.dim();
    let mut samples: Vec<PBWVector> = vec![PBWVector::vacuum()];
    for i in 0..dim {
        samples.push(generator_vector(cfg, i));
        let deep = act(cfg, i, -3, &generator_vector(cfg, (i + 1) % dim));
        samples.push(deep);
    }
    // X_0 acts as the degree on every homogeneous word
    for w in words_of_degree(cfg, 4) {
        let v = PBWVector::from_word(w.clone(), qone());
        report.compare(
            format!("degree operator on {w:?}"),
            &sl2_module_apply(cfg, 0, &v),
            &v.scale(&qi(word_degree(&w))),
        );
    }
    for a in 0..dim {
        for k in -mode_span..=mode_span {
            for v in &samples {
                let ak = |vv: &PBWVector, kk: i64| act(cfg, a, kk - 1, vv);
                // [X_{-1}, a_k] = -k a_{k-1}
                let lhs =
                    sl2_module_apply(cfg, -1, &ak(v, k)).sub(&ak(&sl2_module_apply(cfg, -1, v), k));
                report.compare(
                    format!("translation relation a{a}, k={k}"),
                    &lhs,
                    &ak(v, k - 1).scale(&qi(-k)),
                );
                // [X_0, a_k] = (1-k) a_k
                let lhs =
                    sl2_module_apply(cfg, 0, &ak(v, k)).sub(&ak(&sl2_module_apply(cfg, 0, v), k));
                report.compare(
                    format!("scaling relation a{a}, k={k}"),
                    &lhs,
                    &ak(v, k).scale(&qi(1 - k)),
                );
                // [X_1, a_k] = (2-k) a_{k+1}
                let lhs =
                    sl2_module_apply(cfg, 1, &ak(v, k)).sub(&ak(&sl2_module_apply(cfg, 1, v), k));
                report.compare(
                    format!("special conformal relation a{a}, k={k}"),
                    &lhs,
                    &ak(v, k + 1).scale(&qi(2 - k)),
                );
            }
        }
    }
    report
}

/// The sl2 generators acting on the module through the induced structure
/// (derivation across each word, zero on the vacuum).
pub fn sl2_module_apply(cfg: &ModuleConfig, j: i64, v: &PBWVector) -> PBWVector {
    let mut work: Vec<(Word, Q)> = Vec::new();
    for (w, c) in v.iter() {
        for p in 0..w.len() {
            let (a, m) = w[p];
            // on a (x) t^{m+1} the generator with label j acts by
            // (j - m) L(a, m+j)
            let coeff = c.clone() * qi(j - m);
            if coeff.is_zero() {
                continue;
            }
            let mut nw = w.clone();
            nw[p] = (a, m + j);
            work.push((nw, coeff));
        }
    }
    let mut out = normalize(cfg, work);
    out.overflow |= v.overflow;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::catalog::*;

    fn cfg0(a: AlgebraSpec, level: Q) -> ModuleConfig {
        ModuleConfig::new(a, 0, level, 12).unwrap()
    }

    #[test]
    fn annihilation_and_creation() {
        let cfg = cfg0(noncommutative_2d(), qone());
        // L(a,-1) is in the nonnegative half at eps = 0
        assert!(act(&cfg, 0, -1, &PBWVector::vacuum()).is_zero());
        // L(a,-2) creates the degree-2 generator vector
        let v = act(&cfg, 0, -2, &PBWVector::vacuum());
        assert_eq!(v.coeff(&[(0, -2)]), qone());
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn act_reorders_with_bracket() {
        // eps = 0: L(a,0) L(b,-2) 1 = [L(a,0), L(b,-2)] 1 = L(ab+ba, -2) 1
        let cfg = cfg0(noncommutative_2d(), qone());
        let bvec = generator_vector(&cfg, 0);
        let got = act(&cfg, 0, 0, &bvec);
        let mut want = PBWVector::zero();
        // e1 e1 = e1 + e2 so ab + ba = 2 e1 + 2 e2
        want.add_term(vec![(0, -2)], qi(2));
        want.add_term(vec![(1, -2)], qi(2));
        assert_eq!(got, want);
    }

    #[test]
    fn representation_property() {
        // act(u, act(v, w)) - act(v, act(u, w)) = act([u,v], w)
        use crate::lie::{bracket, LieConfig, LieElement};
        for a in [frobenius_1d(), noncommutative_2d()] {
            for eps in [0i64, 1, 2, 3] {
                let cfg = ModuleConfig::new(a.clone(), eps, q(1, 2), 14).unwrap();
                let lie_cfg = LieConfig::new(&cfg.algebra, eps, true);
                let samples = [
                    PBWVector::vacuum(),
                    act(&cfg, 0, eps - 2, &PBWVector::vacuum()),
                    act(
                        &cfg,
                        0,
                        eps - 3,
                        &act(&cfg, 0, eps - 2, &PBWVector::vacuum()),
                    ),
                ];
                for m in -2..=2 {
                    for n in -2..=2 {
                        for w in &samples {
                            let u = (0usize, m);
                            let v = (a.dim() - 1, n);
                            let lhs = act(&cfg, u.0, u.1, &act(&cfg, v.0, v.1, w)).sub(&act(
                                &cfg,
                                v.0,
                                v.1,
                                &act(&cfg, u.0, u.1, w),
                            ));
                            let br = bracket(
                                &lie_cfg,
                                &LieElement::generator(u.0 as i64, u.1),
                                &LieElement::generator(v.0 as i64, v.1),
                            );
                            let rhs = apply_lie(&cfg, &br, w);
                            assert_eq!(lhs, rhs, "eps={eps} m={m} n={n}");
                        }
                    }
                }
            }
        }
    }

    fn last_inversion(w: &[Letter]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).rev().find(|&p| {
            let (a, n) = w[p];
            let (b, m) = w[p + 1];
            n > m || (n == m && a > b)
        })
    }

    #[test]
    fn normal_ordering_is_confluent() {
        // three routes to the same vector: letterwise insertion, one-shot
        // rewriting resolving the first inversion each step, and one-shot
        // rewriting resolving the last inversion each step
        let cfg = cfg0(noncommutative_2d(), q(1, 3));
        let words = [
            vec![(0usize, 1i64), (1, -4), (0, -2), (1, 0), (0, -3)],
            vec![(1, 2), (1, -2), (0, -2), (0, -4)],
            vec![(0, 0), (0, 0), (1, -3), (0, 2), (1, -2)],
        ];
        for letters in &words {
            let mut via_act = PBWVector::vacuum();
            for &(i, m) in letters.iter().rev() {
                via_act = act(&cfg, i, m, &via_act);
            }
            let first = normalize(&cfg, vec![(letters.clone(), qone())]);
            let last = normalize_with(&cfg, vec![(letters.clone(), qone())], last_inversion);
            assert_eq!(via_act, first, "letterwise vs first-inversion");
            assert_eq!(first, last, "first-inversion vs last-inversion");
        }
    }

    #[test]
    fn vacuum_mode_is_identity_at_minus_one() {
        let cfg = cfg0(frobenius_1d(), qone());
        let ops = VertexOps::new(&cfg);
        let w = generator_vector(&cfg, 0);
        assert_eq!(ops.mode(&PBWVector::vacuum(), -1, &w), w);
        assert!(ops.mode(&PBWVector::vacuum(), 0, &w).is_zero());
        assert!(ops.mode(&PBWVector::vacuum(), -2, &w).is_zero());
    }

    #[test]
    fn vertex_mode_agrees_with_act_on_generators() {
        let cfg = cfg0(noncommutative_2d(), qone());
        let ops = VertexOps::new(&cfg);
        let samples = [
            PBWVector::vacuum(),
            generator_vector(&cfg, 1),
            act(&cfg, 0, -3, &generator_vector(&cfg, 1)),
        ];
        for a in 0..2usize {
            let avec = generator_vector(&cfg, a);
            for n in -4..=4i64 {
                for w in &samples {
                    assert_eq!(
                        ops.mode(&avec, n, w),
                        act(&cfg, a, n - 1, w),
                        "a = {a}, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn generator_relations_hold() {
        for level in [Q::zero(), qone(), qi(-2), q(1, 2)] {
            for a in [frobenius_1d(), noncommutative_2d()] {
                let cfg = cfg0(a, level.clone());
                let r = check_generator_relations(&cfg);
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn d_operator_properties() {
        let cfg = cfg0(noncommutative_2d(), qone());
        let ops = VertexOps::new(&cfg);
        // D(vacuum) = 0
        assert!(ops.d_op(&PBWVector::vacuum()).is_zero());
        // D a = L(a,-3) 1, nonzero for every nonzero a
        for i in 0..2usize {
            let d = ops.d_op(&generator_vector(&cfg, i));
            assert_eq!(d.coeff(&[(i, -3)]), qone());
        }
        // [D, L(a,n)] w = -(n+1) L(a,n-1) w against the mode oracle
        let samples = [
            PBWVector::vacuum(),
            generator_vector(&cfg, 0),
            act(&cfg, 1, -3, &generator_vector(&cfg, 0)),
        ];
        for a in 0..2usize {
            for n in -3..=2i64 {
                for w in &samples {
                    let lhs = ops
                        .d_op(&act(&cfg, a, n, w))
                        .sub(&act(&cfg, a, n, &ops.d_op(w)));
                    let rhs = act(&cfg, a, n - 1, w).scale(&qi(-(n + 1)));
                    assert_eq!(lhs, rhs, "a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn skew_symmetry_shadow() {
        // u_1 v = v_1 u for degree-2 generators
        let cfg = cfg0(noncommutative_2d(), q(2, 3));
        for a in 0..2usize {
            for b in 0..2usize {
                let u = generator_vector(&cfg, a);
                let v = generator_vector(&cfg, b);
                assert_eq!(act(&cfg, a, 0, &v), act(&cfg, b, 0, &u));
            }
        }
    }

    #[test]
    fn grading_law() {
        for a in [frobenius_1d(), noncommutative_2d()] {
            // cap high enough that no sampled product overflows
            let cfg = ModuleConfig::new(a, 0, qone(), 16).unwrap();
            let r = grading_check(&cfg, 5, 4);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn novikov_recovery_roundtrip() {
        for level in [qone(), qi(2)] {
            for a in [frobenius_1d(), noncommutative_2d(), dual_numbers_2d()] {
                let cfg = cfg0(a.clone(), level.clone());
                let (product, form) = recover_novikov(&cfg).unwrap();
                for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        assert_eq!(
                            product[i][j],
                            a.product_indices(i, j).to_vec(),
                            "product at ({i},{j}), level {level}"
                        );
                        assert_eq!(
                            form[i][j],
                            a.form_entry(i, j) * level.clone(),
                            "form at ({i},{j}), level {level}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_verdicts() {
        let cfg = cfg0(frobenius_1d(), qone());
        let r = mobius_check(&cfg, 3);
        assert!(r.passed(), "{r}");
        assert_eq!(r.verdict, crate::report::Verdict::Pass);
        let cfg = cfg0(dual_numbers_2d(), qone());
        assert!(mobius_check(&cfg, 3).passed());
        let cfg = cfg0(noncommutative_2d(), qone());
        let r = mobius_check(&cfg, 3);
        assert_eq!(r.verdict, crate::report::Verdict::ExpectedNegative);
    }

    #[test]
    fn degree_cap_sets_overflow() {
        let a = frobenius_1d();
        let cfg = ModuleConfig::new(a, 0, qone(), 3).unwrap();
        let v = act(&cfg, 0, -2, &act(&cfg, 0, -2, &PBWVector::vacuum()));
        assert!(v.overflow);
        assert!(v.is_zero());
    }

    #[test]
    fn module_config_validation() {
        assert!(ModuleConfig::new(broken_2d(), 0, qone(), 10).is_err());
        // no vacuum module below eps = 0: the half fails to close
        assert!(ModuleConfig::new(frobenius_1d(), -1, qone(), 10).is_err());
    }
}
