//! Plain-text algebra description files.
//!
//! Line-oriented, auditable, no expression language. Coefficients are
//! exact rational literals (`1/12`, `-2`); decimals are rejected. Example:
//!
//! ```text
//! # one-dimensional Frobenius algebra
//! algebra frobenius1d
//! dim 1
//! basis e
//! product e e = e
//! form <e, e> = 1/12
//!
//! run eps = -1 0 1 2
//! run level = 0 1
//! run order = 8
//! run degree-cap = 12
//! run mode-window = 4
//! suites associate delta novikov lie vertex phicoord
//! ```
//!
//! Unspecified products and form entries default to zero; a form matrix
//! exists as soon as one `form` line does. Asymmetric form declarations
//! are an error.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::novikov::AlgebraSpec;
use crate::scalar::{parse_rational, Q};
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuiteKind {
    Associate,
    Delta,
    Novikov,
    Lie,
    Vertex,
    Phicoord,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 6] = [
        SuiteKind::Associate,
        SuiteKind::Delta,
        SuiteKind::Novikov,
        SuiteKind::Lie,
        SuiteKind::Vertex,
        SuiteKind::Phicoord,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::Associate => "associate",
            SuiteKind::Delta => "delta",
            SuiteKind::Novikov => "novikov",
            SuiteKind::Lie => "lie",
            SuiteKind::Vertex => "vertex",
            SuiteKind::Phicoord => "phicoord",
        }
    }

    pub fn from_name(s: &str) -> Option<SuiteKind> {
        SuiteKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// A parsed algebra file plus run parameters.
#[derive(Debug, Clone)]
pub struct SpecFile {
    pub algebra: AlgebraSpec,
    pub eps_list: Vec<i64>,
    pub level_list: Vec<Q>,
    /// Truncation order N for series checks.
    pub order: u32,
    /// Degree cap G for module computations.
    pub degree_cap: i64,
    /// Mode window M for Lie-algebra checks.
    pub mode_window: i64,
    pub suites: Vec<SuiteKind>,
}

struct Builder {
    name: Option<String>,
    dim: Option<usize>,
    basis: Vec<String>,
    products: Vec<(usize, usize, Vec<Q>, usize)>,
    form_entries: BTreeMap<(usize, usize), (Q, usize)>,
    has_form: bool,
    eps_list: Vec<i64>,
    level_list: Vec<Q>,
    order: u32,
    degree_cap: i64,
    mode_window: i64,
    suites: Vec<SuiteKind>,
}

pub fn parse_spec_str(text: &str) -> Result<SpecFile, ParseError> {
    let mut b = Builder {
        name: None,
        dim: None,
        basis: Vec::new(),
        products: Vec::new(),
        form_entries: BTreeMap::new(),
        has_form: false,
        eps_list: vec![-1, 0, 1, 2],
        level_list: vec![Q::zero(), Q::one()],
        order: 8,
        degree_cap: 12,
        mode_window: 4,
        suites: SuiteKind::ALL.to_vec(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| ParseError {
            line: lineno,
            message: m,
        };
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "algebra" => b.name = Some(rest.to_string()),
            "dim" => {
                b.dim = Some(
                    rest.parse::<usize>()
                        .map_err(|_| err(format!("bad dimension `{rest}`")))?,
                )
            }
            "basis" => {
                b.basis = rest.split_whitespace().map(|s| s.to_string()).collect();
            }
            "product" => parse_product(&mut b, rest, lineno)?,
            "form" => parse_form(&mut b, rest, lineno)?,
            "run" => parse_run(&mut b, rest, lineno)?,
            "suites" => {
                let mut suites = Vec::new();
                for name in rest.split_whitespace() {
                    match SuiteKind::from_name(name) {
                        Some(k) => suites.push(k),
                        None => return Err(err(format!("unknown suite `{name}`"))),
                    }
                }
                b.suites = suites;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    finish(b)
}

fn basis_index(b: &Builder, name: &str, lineno: usize) -> Result<usize, ParseError> {
    b.basis
        .iter()
        .position(|x| x == name)
        .ok_or_else(|| ParseError {
            line: lineno,
            message: format!("unknown basis element `{name}`"),
        })
}

/// `product e_i e_j = c e_k + c' e_l` (coefficients optional, `0` allowed).
fn parse_product(b: &mut Builder, rest: &str, lineno: usize) -> Result<(), ParseError> {
    let err = |m: String| ParseError {
        line: lineno,
        message: m,
    };
    let (lhs, rhs) = rest
        .split_once('=')
        .ok_or_else(|| err("product line needs `=`".to_string()))?;
    let factors: Vec<&str> = lhs.split_whitespace().collect();
    if factors.len() != 2 {
        return Err(err(format!(
            "left side must be two basis elements, got `{}`",
            lhs.trim()
        )));
    }
    let i = basis_index(b, factors[0], lineno)?;
    let j = basis_index(b, factors[1], lineno)?;
    let dim = b.basis.len();
    let mut coeffs = vec![Q::zero(); dim];
    for term in rhs.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(err("empty summand".to_string()));
        }
        if term == "0" {
            continue;
        }
        let parts: Vec<&str> = term.split_whitespace().collect();
        let (c, name) = match parts.as_slice() {
            [name] => (Q::one(), *name),
            [c, name] => (parse_rational(c).map_err(&err)?, *name),
            _ => return Err(err(format!("cannot parse summand `{term}`"))),
        };
        let k = basis_index(b, name, lineno)?;
        coeffs[k] += c;
    }
    b.products.push((i, j, coeffs, lineno));
    Ok(())
}

/// `form <e_i, e_j> = q`
fn parse_form(b: &mut Builder, rest: &str, lineno: usize) -> Result<(), ParseError> {
    let err = |m: String| ParseError {
        line: lineno,
        message: m,
    };
    let (lhs, rhs) = rest
        .split_once('=')
        .ok_or_else(|| err("form line needs `=`".to_string()))?;
    let lhs = lhs.trim();
    let inner = lhs
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| err("form pairing must be written `<a, b>`".to_string()))?;
    let (na, nb) = inner
        .split_once(',')
        .ok_or_else(|| err("form pairing must be written `<a, b>`".to_string()))?;
    let i = basis_index(b, na.trim(), lineno)?;
    let j = basis_index(b, nb.trim(), lineno)?;
    let value = parse_rational(rhs.trim()).map_err(&err)?;
    b.has_form = true;
    for key in [(i, j), (j, i)] {
        if let Some((old, old_line)) = b.form_entries.get(&key) {
            if *old != value {
                return Err(err(format!(
                    "asymmetric form: <{}, {}> already set to {} at line {}",
                    b.basis[key.0],
                    b.basis[key.1],
                    crate::scalar::format_rational(old),
                    old_line
                )));
            }
        }
        b.form_entries.insert(key, (value.clone(), lineno));
    }
    Ok(())
}

fn parse_run(b: &mut Builder, rest: &str, lineno: usize) -> Result<(), ParseError> {
    let err = |m: String| ParseError {
        line: lineno,
        message: m,
    };
    let (key, value) = rest
        .split_once('=')
        .ok_or_else(|| err("run line needs `key = values`".to_string()))?;
    let key = key.trim();
    let value = value.trim();
    match key {
        "eps" => {
            b.eps_list = value
                .split_whitespace()
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| err(format!("bad integer `{s}`")))
                })
                .collect::<Result<_, _>>()?;
        }
        "level" => {
            b.level_list = value
                .split_whitespace()
                .map(|s| parse_rational(s).map_err(&err))
                .collect::<Result<_, _>>()?;
        }
        "order" => {
            b.order = value
                .parse::<u32>()
                .map_err(|_| err(format!("bad order `{value}`")))?;
        }
        "degree-cap" => {
            b.degree_cap = value
                .parse::<i64>()
                .map_err(|_| err(format!("bad degree cap `{value}`")))?;
        }
        "mode-window" => {
            b.mode_window = value
                .parse::<i64>()
                .map_err(|_| err(format!("bad mode window `{value}`")))?;
        }
        other => return Err(err(format!("unknown run parameter `{other}`"))),
    }
    Ok(())
}

fn finish(b: Builder) -> Result<SpecFile, ParseError> {
    let fail = |line: usize, m: String| ParseError { line, message: m };
    let name = b.name.clone().unwrap_or_else(|| "unnamed".to_string());
    if b.basis.is_empty() {
        return Err(fail(0, "no basis declared".to_string()));
    }
    let dim = b.basis.len();
    if let Some(d) = b.dim {
        if d != dim {
            return Err(fail(
                0,
                format!("dim {d} does not match {} basis names", dim),
            ));
        }
    }
    let mut product = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    for (i, j, coeffs, line) in &b.products {
        if product[*i][*j].iter().any(|c| !c.is_zero()) {
            return Err(fail(
                *line,
                format!("product {} {} declared twice", b.basis[*i], b.basis[*j]),
            ));
        }
        product[*i][*j] = coeffs.clone();
    }
    let form = if b.has_form {
        let mut g = vec![vec![Q::zero(); dim]; dim];
        for ((i, j), (v, _)) in &b.form_entries {
            g[*i][*j] = v.clone();
        }
        Some(g)
    } else {
        None
    };
    let algebra =
        AlgebraSpec::new(&name, b.basis, product, form).map_err(|e| fail(0, e.to_string()))?;
    Ok(SpecFile {
        algebra,
        eps_list: b.eps_list,
        level_list: b.level_list,
        order: b.order,
        degree_cap: b.degree_cap,
        mode_window: b.mode_window,
        suites: b.suites,
    })
}

pub fn parse_spec(path: &Path) -> Result<SpecFile, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_spec_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    const FROBENIUS: &str = "\
# the Virasoro seed
algebra frobenius1d
dim 1
basis e
product e e = e
form <e, e> = 1/12
run eps = 0 1 2
run level = 1
";

    #[test]
    fn parses_frobenius() {
        let s = parse_spec_str(FROBENIUS).unwrap();
        assert_eq!(s.algebra.name, "frobenius1d");
        assert_eq!(s.algebra.dim(), 1);
        assert_eq!(s.algebra.form_entry(0, 0), q(1, 12));
        assert_eq!(s.eps_list, vec![0, 1, 2]);
        assert_eq!(s.order, 8);
        assert_eq!(s.suites.len(), 6);
    }

    #[test]
    fn parses_two_dimensional() {
        let text = "\
algebra noncomm2d
basis e1 e2
product e1 e1 = e1 + e2
product e2 e1 = e2
form <e1, e1> = 1/12
suites novikov lie
";
        let s = parse_spec_str(text).unwrap();
        assert_eq!(s.algebra.dim(), 2);
        assert_eq!(s.algebra.product_indices(0, 0), &[q(1, 1), q(1, 1)]);
        assert_eq!(s.algebra.product_indices(0, 1), &[q(0, 1), q(0, 1)]);
        assert_eq!(s.suites, vec![SuiteKind::Novikov, SuiteKind::Lie]);
    }

    #[test]
    fn rejects_decimal_coefficient() {
        let text = "\
algebra bad
basis e
product e e = 0.1 e
";
        let e = parse_spec_str(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("not an exact rational"));
    }

    #[test]
    fn rejects_asymmetric_form() {
        let text = "\
algebra bad
basis a b
form <a, b> = 1
form <b, a> = 2
";
        let e = parse_spec_str(text).unwrap_err();
        assert!(e.message.contains("asymmetric"));
    }

    #[test]
    fn rejects_unknown_names() {
        let text = "\
algebra bad
basis e
product e f = e
";
        assert!(parse_spec_str(text).is_err());
        let text = "\
algebra bad
basis e
suites nonsense
";
        assert!(parse_spec_str(text).is_err());
    }

    #[test]
    fn coefficient_terms() {
        let text = "\
algebra scaled
basis a b
product a a = 1/2 a + -3 b
product a b = 0
";
        let s = parse_spec_str(text).unwrap();
        assert_eq!(s.algebra.product_indices(0, 0), &[q(1, 2), q(-3, 1)]);
        assert!(s.algebra.product_indices(0, 1).iter().all(|c| c.is_zero()));
    }
}
