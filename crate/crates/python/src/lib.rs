//! Python bindings for the nova formal-calculus engine.
//!
//! Scalars cross the boundary as exact rational literals (`"1/12"`,
//! `"-2"`); module vectors as lists of `(word, coefficient)` pairs with a
//! word being a list of `(basis_index, mode)` letters. The surface mirrors
//! the library: algebra checkers, flow series, mode brackets, vacuum-module
//! actions, the commutator-formula check, and the batch file runner.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nova::lie::{bracket, LieConfig, LieElement};
use nova::novikov::{self, catalog, AlgebraSpec};
use nova::phicoord;
use nova::scalar::{format_rational, parse_rational, Q};
use nova::series::LaurentPoly;
use nova::specfile;
use nova::suites;
use nova::vacuum::{self, ModuleConfig, PBWVector};

fn rat(s: &str) -> PyResult<Q> {
    parse_rational(s).map_err(PyValueError::new_err)
}

fn parse_matrix(m: Vec<Vec<String>>) -> PyResult<Vec<Vec<Q>>> {
    m.into_iter()
        .map(|row| row.iter().map(|s| rat(s)).collect())
        .collect()
}

type PyWord = Vec<(usize, i64)>;
type PyProduct = Vec<Vec<Vec<String>>>;
type PyForm = Vec<Vec<String>>;
type PyVector = Vec<(PyWord, String)>;

fn vector_from_py(terms: PyVector) -> PyResult<PBWVector> {
    let mut v = PBWVector::zero();
    for (word, coeff) in terms {
        v.add_term(word, rat(&coeff)?);
    }
    Ok(v)
}

fn vector_to_py(v: &PBWVector) -> PyVector {
    v.iter()
        .map(|(w, c)| (w.clone(), format_rational(c)))
        .collect()
}

/// A finite-dimensional algebra with structure constants and an optional
/// symmetric bilinear form.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Algebra {
    inner: AlgebraSpec,
}

#[pymethods]
impl Algebra {
    /// Build from the structure-constant tensor c[i][j][k] (rational
    /// literals) and an optional form matrix.
    #[new]
    #[pyo3(signature = (name, basis, product, form=None))]
    fn new(
        name: &str,
        basis: Vec<String>,
        product: Vec<Vec<Vec<String>>>,
        form: Option<Vec<Vec<String>>>,
    ) -> PyResult<Self> {
        let product = product
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|row| row.iter().map(|s| rat(s)).collect())
                    .collect::<PyResult<Vec<Vec<Q>>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        let form = form.map(parse_matrix).transpose()?;
        let inner = AlgebraSpec::new(name, basis, product, form)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Algebra { inner })
    }

    /// The one-dimensional algebra whose affinization is Virasoro.
    #[staticmethod]
    fn frobenius1d() -> Self {
        Algebra {
            inner: catalog::frobenius_1d(),
        }
    }

    /// The noncommutative nonassociative two-dimensional example.
    #[staticmethod]
    fn noncomm2d() -> Self {
        Algebra {
            inner: catalog::noncommutative_2d(),
        }
    }

    /// Dual numbers with the invariant trace form.
    #[staticmethod]
    fn comm2d() -> Self {
        Algebra {
            inner: catalog::dual_numbers_2d(),
        }
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis_names().to_vec()
    }

    fn is_novikov(&self) -> bool {
        novikov::is_left_novikov(&self.inner).passed()
    }

    fn is_commutative_associative(&self) -> bool {
        novikov::is_commutative_associative(&self.inner).passed()
    }

    fn form_is_invariant(&self) -> PyResult<bool> {
        novikov::check_form(&self.inner)
            .map(|r| r.passed())
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// e_i e_j as rational literals.
    fn product(&self, i: usize, j: usize) -> Vec<String> {
        self.inner
            .product_indices(i, j)
            .iter()
            .map(format_rational)
            .collect()
    }

    /// The deformed affinization bracket [L(a_i, m), L(a_j, n)]: returns
    /// (generator terms as (index, mode, coeff), central coefficient).
    #[pyo3(signature = (epsilon, i, m, j, n, with_center=true))]
    fn bracket(
        &self,
        epsilon: i64,
        i: i64,
        m: i64,
        j: i64,
        n: i64,
        with_center: bool,
    ) -> (Vec<(i64, i64, String)>, String) {
        let cfg = LieConfig::new(&self.inner, epsilon, with_center);
        let out = bracket(
            &cfg,
            &LieElement::generator(i, m),
            &LieElement::generator(j, n),
        );
        let terms = out
            .terms()
            .map(|(&(a, md), c)| (a, md, format_rational(c)))
            .collect();
        (terms, format_rational(&out.central))
    }

    /// Antisymmetry plus Jacobi over the mode cube.
    fn verify_lie(&self, epsilon: i64, mode_window: i64) -> bool {
        let cfg = LieConfig::new(&self.inner, epsilon, self.inner.has_form());
        nova::lie::verify_lie(&cfg, mode_window, 0).passed()
    }
}

/// A vacuum module at fixed deformation parameter and level.
#[pyclass]
struct Module {
    cfg: ModuleConfig,
}

#[pymethods]
impl Module {
    #[new]
    #[pyo3(signature = (algebra, epsilon=0, level="1", degree_cap=12))]
    fn new(algebra: &Algebra, epsilon: i64, level: &str, degree_cap: i64) -> PyResult<Self> {
        let cfg = ModuleConfig::new(algebra.inner.clone(), epsilon, rat(level)?, degree_cap)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Module { cfg })
    }

    /// The vacuum vector.
    #[staticmethod]
    fn vacuum() -> PyVector {
        vector_to_py(&PBWVector::vacuum())
    }

    /// Act by the generator L(a_idx, mode) on a vector.
    fn act(&self, idx: usize, mode: i64, vector: PyVector) -> PyResult<PyVector> {
        let v = vector_from_py(vector)?;
        Ok(vector_to_py(&vacuum::act(&self.cfg, idx, mode, &v)))
    }

    /// The vacuum products a_0 b = D(ba), a_1 b = ab + ba, a_2 b = 0,
    /// a_3 b = (l/2)<a,b>1, a_k b = 0 for 4..8.
    fn generator_relations_hold(&self) -> bool {
        vacuum::check_generator_relations(&self.cfg).passed()
    }

    /// "compatible", "incompatible", or a failure message, per the sl2
    /// criterion.
    fn mobius_verdict(&self, mode_span: i64) -> PyResult<String> {
        let r = vacuum::mobius_check(&self.cfg, mode_span);
        match r.verdict {
            nova::report::Verdict::Pass => Ok("compatible".to_string()),
            nova::report::Verdict::ExpectedNegative => Ok("incompatible".to_string()),
            _ => Err(PyRuntimeError::new_err(r.to_string())),
        }
    }

    /// Recover (structure constants, form) back from the module; the form
    /// comes back scaled by the level.
    fn recover(&self) -> PyResult<(PyProduct, PyForm)> {
        let (product, form) = vacuum::recover_novikov(&self.cfg)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let product = product
            .iter()
            .map(|p| {
                p.iter()
                    .map(|row| row.iter().map(format_rational).collect())
                    .collect()
            })
            .collect();
        let form = form
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        Ok((product, form))
    }

    /// The deformed weak-associativity axiom on a vector.
    fn deformed_associativity_holds(
        &self,
        vector: PyVector,
        span: i64,
        z_order: i64,
    ) -> PyResult<bool> {
        let v = vector_from_py(vector)?;
        Ok(phicoord::check_phi_module_axiom(&self.cfg, &v, span, z_order).passed())
    }
}

/// z-coefficients of the flow e^{z x^eps d/dx} x as (k, x_exponent, coeff).
#[pyfunction]
fn phi_coefficients(epsilon: i64, order: u32) -> Vec<(u32, Vec<(i64, String)>)> {
    let p = nova::associate::phi(epsilon, order);
    (0..=order)
        .map(|k| {
            let c: LaurentPoly = p.series.coeff(&[k]);
            (k, c.terms().map(|(e, q)| (e, format_rational(q))).collect())
        })
        .collect()
}

/// Human-readable rendering of the flow series.
#[pyfunction]
fn phi_series(epsilon: i64, order: u32) -> String {
    nova::associate::phi(epsilon, order).series.to_string()
}

/// Both flow axioms, exactly, to the given order.
#[pyfunction]
fn check_associate_axioms(epsilon: i64, order: u32) -> bool {
    nova::associate::check_associate_axioms(epsilon, order).passed()
}

/// The commutator formula for the generator fields, coefficientwise on
/// |p|, |q| <= span.
#[pyfunction]
fn check_commutator_formula(
    algebra: &Algebra,
    level: &str,
    epsilon: i64,
    span: i64,
) -> PyResult<bool> {
    Ok(phicoord::check_commutator_formula(&algebra.inner, &rat(level)?, epsilon, span).passed())
}

/// Parse an algebra file, run its suites, and return (all_passed, report).
#[pyfunction]
#[pyo3(signature = (path, json=false))]
fn verify_file(path: &str, json: bool) -> PyResult<(bool, String)> {
    let spec = specfile::parse_spec(std::path::Path::new(path))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let results = suites::run_suites(&spec);
    let report = if json {
        suites::render_json(&results)
    } else {
        suites::render_text(&results)
    };
    Ok((suites::all_passed(&results), report))
}

#[pymodule]
fn nova_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(phi_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(phi_series, m)?)?;
    m.add_function(wrap_pyfunction!(check_associate_axioms, m)?)?;
    m.add_function(wrap_pyfunction!(check_commutator_formula, m)?)?;
    m.add_function(wrap_pyfunction!(verify_file, m)?)?;
    Ok(())
}
