//! The JSON input document: schema, validation, loading into library types, and export.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use hha::constructions::Built;
use hha::linalg::Mat;
use hha::{ComplexScalar, FieldKind, Form, HypercomplexAlgebra, HypercomplexStructure, HyperhermitianMetric, LieAlgebra, Scalar};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Environment variable naming the scalar field used when a document omits `scalar_field`.
pub const DEFAULT_FIELD_VAR: &str = "HHA_DEFAULT_FIELD";

/// Explicit `(I, J)` matrices of a document.
type StructurePair = (Mat<Scalar>, Mat<Scalar>);

/// A Lie algebra with hypercomplex structure and metric, as read from a file.
///
/// Indices are 1-based throughout: `e1..e<dimension>` for the real basis and
/// `z1..z<dimension/2>` for the complex coframe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_field: Option<String>,
    /// `[e_i, e_j] += c e_k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<BracketTerm>>,
    /// `de^k += c e^i ^ e^j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_equations: Option<Vec<EquationTerm>>,
    #[serde(default)]
    pub hypercomplex: HypercomplexSpec,
    /// Defaults to the unitary metric `sum z(2i-1) ^ z(2i)` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSpec>,
    /// Expected flag values; `classify` exits with status 1 when any differs.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketTerm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationTerm {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub c: String,
}

/// `"standard"` or explicit matrices of `I` and `J` acting on column vectors of the input basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HypercomplexSpec {
    Named(String),
    Explicit {
        #[serde(rename = "I")]
        i: Vec<Vec<String>>,
        #[serde(rename = "J")]
        j: Vec<Vec<String>>,
    },
}

impl Default for HypercomplexSpec {
    fn default() -> Self {
        HypercomplexSpec::Named("standard".into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    /// `Omega = sum a_i z(2i-1) ^ z(2i)` with positive `a_i`.
    DiagonalUnitary(Vec<String>),
    /// `Omega = sum (re + i im) z_i ^ z_j` over the complex coframe of the adapted basis.
    Omega(Vec<OmegaTerm>),
    /// Real Gram matrix in the input basis.
    Gram(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaTerm {
    pub i: usize,
    pub j: usize,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".into()
}

/// Scalar field descriptor: `Q`, `Q(sqrt(D))` for square-free `D > 1`, or `float`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Quadratic(u64),
    Float,
}

impl FromStr for FieldSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<FieldSpec, CliError> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match key.to_ascii_lowercase().as_str() {
            "q" | "qq" | "rational" => return Ok(FieldSpec::Rational),
            "float" | "f64" => return Ok(FieldSpec::Float),
            _ => {}
        }
        let bad = || CliError::Input(format!("scalar_field: unknown field descriptor '{s}' (expected Q, Q(sqrt(D)) or float)"));
        let inner = key.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")).ok_or_else(bad)?;
        let d: u64 = inner.parse().map_err(|_| bad())?;
        let root = Scalar::sqrt_int(d);
        if d < 2 || root.radicand() != d {
            return Err(CliError::Input(format!("scalar_field: radicand {d} must be square-free and greater than 1")));
        }
        Ok(FieldSpec::Quadratic(d))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
            FieldSpec::Float => f.write_str("float"),
        }
    }
}

impl FieldSpec {
    /// Parses a coefficient and checks that it lies in this field.
    pub fn scalar(self, text: &str, location: &str) -> Result<Scalar, CliError> {
        let x: Scalar = text.parse().map_err(|e| CliError::Input(format!("{location}: {e}")))?;
        match self {
            FieldSpec::Float => Ok(x.to_float()),
            FieldSpec::Rational if !x.is_rational() => {
                Err(CliError::Input(format!("{location}: '{text}' is not rational but scalar_field is Q")))
            }
            FieldSpec::Quadratic(d) if !x.is_rational() && x.radicand() != d => {
                Err(CliError::Input(format!("{location}: '{text}' does not lie in Q(sqrt({d}))")))
            }
            _ => Ok(x),
        }
    }

    fn of_scalars<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> FieldSpec {
        let mut field = FieldSpec::Rational;
        for x in xs {
            if x.kind() == FieldKind::Float {
                return FieldSpec::Float;
            }
            if !x.is_rational() {
                field = FieldSpec::Quadratic(x.radicand());
            }
        }
        field
    }
}

/// Hex-encoded SHA-256 of `text`.
pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn check_index(i: usize, max: usize, location: &str) -> Result<usize, CliError> {
    if i == 0 || i > max {
        return Err(CliError::Input(format!("{location}: index {i} is outside 1..={max}")));
    }
    Ok(i - 1)
}

/// Parses and validates a document. A missing `scalar_field` is filled in from
/// `default_field` (typically the `HHA_DEFAULT_FIELD` variable), falling back to `Q`.
pub fn parse_input(text: &str, default_field: Option<&str>) -> Result<InputDocument, CliError> {
    let mut doc: InputDocument = serde_json::from_str(text).map_err(|e| CliError::Input(format!("input is not a valid document: {e}")))?;
    if doc.dimension == 0 || !doc.dimension.is_multiple_of(4) {
        return Err(CliError::Input(format!("dimension must be a multiple of 4, got {}", doc.dimension)));
    }
    let field: FieldSpec = match doc.scalar_field.as_deref().or(default_field) {
        Some(s) => s.parse()?,
        None => FieldSpec::Rational,
    };
    doc.scalar_field = Some(field.to_string());
    match (&doc.brackets, &doc.structure_equations) {
        (Some(_), None) | (None, Some(_)) => {}
        _ => return Err(CliError::Input("exactly one of brackets or structure_equations must be given".into())),
    }
    // Resolving every coefficient reports field and index errors before any algebra is built.
    doc.algebra_terms()?;
    doc.structure_matrices()?;
    doc.metric_data()?;
    Ok(doc)
}

enum MetricData {
    Unitary,
    Diagonal(Vec<Scalar>),
    Omega(Form),
    Gram(Mat<Scalar>),
}

impl InputDocument {
    pub fn n(&self) -> usize {
        self.dimension / 4
    }

    pub fn field(&self) -> Result<FieldSpec, CliError> {
        self.scalar_field.as_deref().unwrap_or("Q").parse()
    }

    /// Bracket entries `(i, j, k, c)`, 0-based, with `[e_i, e_j] += c e_k`.
    fn algebra_terms(&self) -> Result<Vec<(usize, usize, usize, Scalar)>, CliError> {
        let field = self.field()?;
        let d = self.dimension;
        let mut out = Vec::new();
        if let Some(b) = &self.brackets {
            for (t, term) in b.iter().enumerate() {
                let loc = format!("brackets[{t}]");
                let (i, j, k) = (check_index(term.i, d, &loc)?, check_index(term.j, d, &loc)?, check_index(term.k, d, &loc)?);
                if i == j {
                    return Err(CliError::Input(format!("{loc}: [e{0}, e{0}] must vanish", term.i)));
                }
                out.push((i, j, k, field.scalar(&term.c, &format!("{loc}.c"))?));
            }
        }
        if let Some(eqs) = &self.structure_equations {
            for (t, term) in eqs.iter().enumerate() {
                let loc = format!("structure_equations[{t}]");
                let (k, i, j) = (check_index(term.k, d, &loc)?, check_index(term.i, d, &loc)?, check_index(term.j, d, &loc)?);
                if i == j {
                    return Err(CliError::Input(format!("{loc}: e{0} ^ e{0} vanishes", term.i)));
                }
                let c = field.scalar(&term.c, &format!("{loc}.c"))?;
                // de^k = -sum_{i<j} c^k_ij e^i ^ e^j.
                out.push((i, j, k, -c));
            }
        }
        Ok(out)
    }

    fn matrix(&self, rows: &[Vec<String>], location: &str) -> Result<Mat<Scalar>, CliError> {
        let field = self.field()?;
        let d = self.dimension;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(CliError::Input(format!("{location}: expected a {d}x{d} matrix")));
        }
        rows.iter()
            .enumerate()
            .map(|(r, row)| row.iter().enumerate().map(|(c, x)| field.scalar(x, &format!("{location}[{r}][{c}]"))).collect())
            .collect()
    }

    fn structure_matrices(&self) -> Result<Option<StructurePair>, CliError> {
        match &self.hypercomplex {
            HypercomplexSpec::Named(s) if s == "standard" => Ok(None),
            HypercomplexSpec::Named(s) => {
                Err(CliError::Input(format!("hypercomplex: unknown structure '{s}' (expected \"standard\" or {{\"I\", \"J\"}})")))
            }
            HypercomplexSpec::Explicit { i, j } => Ok(Some((self.matrix(i, "hypercomplex.I")?, self.matrix(j, "hypercomplex.J")?))),
        }
    }

    fn metric_data(&self) -> Result<MetricData, CliError> {
        let field = self.field()?;
        let n = self.n();
        Ok(match &self.metric {
            None => MetricData::Unitary,
            Some(MetricSpec::DiagonalUnitary(v)) => {
                if v.len() != n {
                    return Err(CliError::Input(format!("metric.diagonal_unitary: expected {n} entries, got {}", v.len())));
                }
                MetricData::Diagonal(
                    v.iter()
                        .enumerate()
                        .map(|(t, x)| field.scalar(x, &format!("metric.diagonal_unitary[{t}]")))
                        .collect::<Result<_, _>>()?,
                )
            }
            Some(MetricSpec::Omega(terms)) => {
                let mut omega = Form::zero(n);
                for (t, term) in terms.iter().enumerate() {
                    let loc = format!("metric.omega[{t}]");
                    let (i, j) = (check_index(term.i, 2 * n, &loc)? + 1, check_index(term.j, 2 * n, &loc)? + 1);
                    if i == j {
                        return Err(CliError::Input(format!("{loc}: z{i} ^ z{i} vanishes")));
                    }
                    let c =
                        ComplexScalar::new(field.scalar(&term.re, &format!("{loc}.re"))?, field.scalar(&term.im, &format!("{loc}.im"))?);
                    omega = omega.add(&Form::zetas(n, &[i, j]).scale(&c));
                }
                MetricData::Omega(omega)
            }
            Some(MetricSpec::Gram(rows)) => MetricData::Gram(self.matrix(rows, "metric.gram")?),
        })
    }

    /// The validated Lie algebra (Jacobi identity checked).
    pub fn algebra(&self) -> Result<LieAlgebra, CliError> {
        let alg = LieAlgebra::from_brackets(self.dimension, &self.algebra_terms()?)?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Builds the hypercomplex algebra and metric, running every library validation.
    pub fn load(&self) -> Result<Built, CliError> {
        let alg = self.algebra()?;
        let h = match self.structure_matrices()? {
            None => HypercomplexAlgebra::standard(alg)?,
            Some((i, j)) => HypercomplexAlgebra::new(alg, HypercomplexStructure::new(i, j)?)?,
        };
        let n = h.n();
        let metric = match self.metric_data()? {
            MetricData::Unitary => HyperhermitianMetric::standard(n),
            MetricData::Diagonal(a) => HyperhermitianMetric::diagonal(n, &a)?,
            MetricData::Omega(omega) => HyperhermitianMetric::from_omega(omega)?,
            MetricData::Gram(g) => HyperhermitianMetric::from_input_gram(&h, &g)?,
        };
        Ok(Built { h, metric })
    }

    /// Serializes with stable field order and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn matrix_strings(m: &Mat<Scalar>) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Writes a hypercomplex algebra and metric as a document. Standard structures store the
/// metric as `Omega` coefficients; explicit structures store `I`, `J` and the Gram matrix.
pub fn export(name: &str, built: &Built, expect: &[(&str, bool)]) -> Result<InputDocument, CliError> {
    let (h, m) = (&built.h, &built.metric);
    let alg = h.algebra();
    let n = h.n();
    let eqs = alg.structure_equations();
    let mut scalars: Vec<Scalar> = eqs.iter().map(|t| t.3.clone()).collect();
    let (hypercomplex, metric) = if h.structure().is_standard() {
        let mut terms = Vec::new();
        for (&mask, c) in m.omega().terms() {
            let i = mask.trailing_zeros() as usize;
            let j = (mask & (mask - 1)).trailing_zeros() as usize;
            if mask.count_ones() != 2 || j >= 2 * n {
                return Err(CliError::Input(format!("{name}: Omega has a term outside (2,0)")));
            }
            scalars.push(c.re.clone());
            scalars.push(c.im.clone());
            terms.push(OmegaTerm { i: i + 1, j: j + 1, re: c.re.to_string(), im: c.im.to_string() });
        }
        (HypercomplexSpec::default(), MetricSpec::Omega(terms))
    } else {
        let s = h.structure();
        let gram = m.input_gram(h)?;
        for mat in [s.i(), s.j(), &gram] {
            scalars.extend(mat.iter().flatten().cloned());
        }
        (HypercomplexSpec::Explicit { i: matrix_strings(s.i()), j: matrix_strings(s.j()) }, MetricSpec::Gram(matrix_strings(&gram)))
    };
    Ok(InputDocument {
        name: name.into(),
        dimension: alg.dim(),
        scalar_field: Some(FieldSpec::of_scalars(&scalars).to_string()),
        brackets: None,
        structure_equations: Some(
            eqs.into_iter().map(|(k, i, j, c)| EquationTerm { k: k + 1, i: i + 1, j: j + 1, c: c.to_string() }).collect(),
        ),
        hypercomplex,
        metric: Some(metric),
        expect: expect.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_descriptors() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("Q(sqrt(3))".parse::<FieldSpec>().unwrap(), FieldSpec::Quadratic(3));
        assert_eq!("float".parse::<FieldSpec>().unwrap(), FieldSpec::Float);
        assert!("Q(sqrt(8))".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert!(FieldSpec::Rational.scalar("sqrt(2)", "x").is_err());
        assert!(FieldSpec::Quadratic(3).scalar("sqrt(2)", "x").is_err());
        assert_eq!(FieldSpec::Quadratic(3).scalar("1/2*sqrt(3)", "x").unwrap(), Scalar::frac(1, 2) * Scalar::sqrt_int(3));
    }

    #[test]
    fn sha256_of_empty_string() {
        assert_eq!(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
