//! Command-line front end for the `hha` library: input documents, command dispatch and
//! report serialization.
//!
//! Exit status is 0 on success, 1 when a verdict or expectation does not hold, and 2 on
//! any input or validation error.

pub mod error;
pub mod input;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hha::audit::{equivalence_audit, identity_audit, IdentityInputs};
use hha::catalog::{get_example, names, run_report, CatalogEntry, Check, EntryRun};
use hha::classify::{
    classify_metric, qbal_nonexistence_certificate, search_metrics, ClassificationReport, Family, Predicate, QbalCertificate,
};
use hha::constructions::{arroyo_nicolini, barberis_fino, joyce_build, joyce_su2, joyce_su3, Built, QuaternionicRep};
use hha::{Form, HyperhermitianMetric, Scalar, SpherePoint};
use serde_json::{json, Value};

pub use error::CliError;
pub use input::{export, parse_input, InputDocument, DEFAULT_FIELD_VAR};
use report::{provenance_json, report_json, report_text, to_json_text, Provenance, Render};

#[derive(Debug, Parser)]
#[command(name = "hha", version, about = "Exact classification of special hyperhermitian metrics on hypercomplex Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[default]
    Diagonal,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a document: Jacobi identity, integrability and metric.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classify the metric of a document.
    Classify {
        file: PathBuf,
        /// Two orthogonal unit vectors "a,b,c;a',b',c'" of the sphere used as the pair (I, J).
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Render scalars and forms as floats.
        #[arg(long)]
        float: bool,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Build a new algebra and print it as a document.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
    },
    /// Cross-check equivalent characterizations and curvature identities on a document's metric.
    Audit {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check that del(psi) certifies that no invariant quaternionic balanced metric exists.
    CertifyQbal {
        file: PathBuf,
        /// A (1,0)-form such as "2*z5".
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Search a bounded rational grid of metrics for one satisfying a predicate.
    Search {
        file: PathBuf,
        #[arg(long)]
        predicate: String,
        /// Grid values are p/q with 1 <= p, q <= height.
        #[arg(long, default_value_t = 3)]
        height: u32,
        #[arg(long, value_enum, default_value_t)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// List entry names with summaries.
    List {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run one entry (or "all") against its expectations.
    Run {
        name: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        float: bool,
    },
    /// Run every entry against its expectations.
    All {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print an entry as an input document.
    Export { name: String },
}

#[derive(Debug, Subcommand)]
pub enum Recipe {
    /// Glue two algebras along central, non-derived elements.
    An {
        /// Catalog name or document path.
        first: String,
        second: String,
        /// Central element of the first algebra: a 1-based basis index or a comma-separated vector.
        #[arg(long, allow_hyphen_values = true)]
        e1: String,
        #[arg(long, allow_hyphen_values = true)]
        e2: String,
    },
    /// Extend an algebra by H^k through a representation by right quaternion multiplications.
    Bf {
        base: String,
        /// One quaternion "a,b,c,d" per basis vector of the base, separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        quaternions: String,
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Joyce's hypercomplex structure on a compact group: su2, su2^m (m copies with a torus) or su3.
    Joyce {
        group: String,
        /// Override the weights mu_j, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
}

/// Captured result of one command.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { status: 0, stdout, stderr: String::new() }
    }

    fn with_status(mut self, pass: bool) -> Outcome {
        self.status = if pass { 0 } else { 1 };
        self
    }
}

/// Runs a parsed command line. `default_field` stands in for `HHA_DEFAULT_FIELD`.
pub fn run(cli: Cli, default_field: Option<&str>) -> Outcome {
    let ctx = Context { default_field: default_field.map(str::to_string) };
    match ctx.dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome { status: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Parses `args` (including the program name) and runs them; clap usage errors give status 2.
pub fn run_args<I, T>(args: I, default_field: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, default_field),
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if status == 0 {
                Outcome::ok(text)
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            }
        }
    }
}

struct Context {
    default_field: Option<String>,
}

/// A loaded document together with its provenance data.
struct Loaded {
    doc: InputDocument,
    built: Built,
    sha: String,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(format: Format, json: Value, text: String) -> String {
    match format {
        Format::Json => to_json_text(&json),
        Format::Text => text,
    }
}

fn parse_pair(s: &str) -> Result<(SpherePoint, SpherePoint), CliError> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 2 {
        return Err(CliError::Input(format!("--pair needs two points separated by ';', got {s:?}")));
    }
    Ok((SpherePoint::parse(parts[0])?, SpherePoint::parse(parts[1])?))
}

fn parse_scalar_list(s: &str, what: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',').map(|x| x.trim().parse::<Scalar>().map_err(|e| CliError::Input(format!("{what}: {e}")))).collect()
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect())
}

fn failing(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| !c.passed).collect()
}

impl Context {
    fn dispatch(&self, command: Command) -> Result<Outcome, CliError> {
        match command {
            Command::Check { file, format } => self.check(&file, format),
            Command::Classify { file, pair, format, float } => self.classify(&file, pair.as_deref(), format, Render { float }),
            Command::Catalog { action } => self.catalog(action),
            Command::Construct { recipe } => self.construct(recipe),
            Command::Audit { file, format } => self.audit(&file, format),
            Command::CertifyQbal { file, witness, format } => self.certify_qbal(&file, &witness, format),
            Command::Search { file, predicate, height, family, format } => self.search(&file, &predicate, height, family, format),
        }
    }

    fn load(&self, path: &Path) -> Result<Loaded, CliError> {
        let text = read_file(path)?;
        let doc = parse_input(&text, self.default_field.as_deref())?;
        let built = doc.load()?;
        Ok(Loaded { doc, built, sha: input::sha256_hex(&text) })
    }

    /// A catalog name, or a document path when no entry of that name exists.
    fn source(&self, spec: &str) -> Result<(String, Built), CliError> {
        if Path::new(spec).exists() {
            let l = self.load(Path::new(spec))?;
            return Ok((l.doc.name, l.built));
        }
        let e = get_example(spec)?;
        Ok((e.name, Built { h: e.h, metric: e.metric }))
    }

    fn provenance(&self, l: &Loaded, pair: Option<String>) -> Provenance {
        Provenance {
            input_sha256: l.sha.clone(),
            library_version: hha::VERSION,
            scalar_field: l.doc.scalar_field.clone().unwrap_or_else(|| "Q".into()),
            pair,
        }
    }

    fn check(&self, path: &Path, format: Format) -> Result<Outcome, CliError> {
        let l = self.load(path)?;
        let p = l.built.h.algebra().validate()?;
        let cert = l.built.h.certificate();
        let json = json!({
            "name": l.doc.name,
            "input_sha256": l.sha,
            "scalar_field": l.doc.scalar_field,
            "valid": true,
            "dimension": p.dimension,
            "n": l.built.h.n(),
            "nilpotent": p.nilpotent,
            "step": p.step,
            "solvable": p.solvable,
            "unimodular": p.unimodular,
            "semisimple": p.semisimple,
            "center_dim": p.center_dim,
            "derived_dim": p.derived_dim,
            "lower_central_series": p.lower_central,
            "derived_series": p.derived_series,
            "rational_structure_constants": p.rational,
            "integrability": {"pairs_checked": cert.pairs_checked, "structures": cert.structures},
            "abelian_structure": l.built.h.is_abelian(),
            "omega": l.built.metric.omega().to_string(),
        });
        let text = format!(
            "{}: valid\n  dimension: {}\n  nilpotent: {}\n  step: {}\n  solvable: {}\n  unimodular: {}\n  semisimple: {}\n  \
             center_dim: {}\n  derived_dim: {}\n  integrable: {} ({} pairs)\n  abelian_structure: {}\n  omega: {}\n",
            l.doc.name,
            p.dimension,
            p.nilpotent,
            p.step.map_or("-".into(), |s| s.to_string()),
            p.solvable,
            p.unimodular,
            p.semisimple,
            p.center_dim,
            p.derived_dim,
            cert.structures.join(", "),
            cert.pairs_checked,
            l.built.h.is_abelian(),
            l.built.metric.omega(),
        );
        Ok(Outcome::ok(emit(format, json, text)))
    }

    fn classify(&self, path: &Path, pair: Option<&str>, format: Format, render: Render) -> Result<Outcome, CliError> {
        let l = self.load(path)?;
        let (h, m) = match pair {
            None => (l.built.h.clone(), l.built.metric.clone()),
            Some(s) => {
                let (p, q) = parse_pair(s)?;
                let h2 = l.built.h.rotate(&p, &q)?;
                let gram = l.built.metric.input_gram(&l.built.h)?;
                let m2 = HyperhermitianMetric::from_input_gram(&h2, &gram)?;
                (h2, m2)
            }
        };
        let r = classify_metric(&h, &m)?;
        let prov = self.provenance(&l, pair.map(str::to_string));
        let out = emit(format, report_json(&l.doc.name, &prov, &r, render), report_text(&l.doc.name, &prov, &r, render));
        let mismatches = expectation_mismatches(&l.doc, &r)?;
        let stderr: String = mismatches.iter().map(|s| format!("expectation failed: {s}\n")).collect();
        Ok(Outcome { status: if mismatches.is_empty() { 0 } else { 1 }, stdout: out, stderr })
    }

    fn catalog(&self, action: CatalogAction) -> Result<Outcome, CliError> {
        match action {
            CatalogAction::List { format } => {
                let entries: Vec<CatalogEntry> = names().iter().map(|n| get_example(n)).collect::<Result<_, _>>()?;
                let json = Value::Array(
                    entries
                        .iter()
                        .map(|e| json!({"name": e.name, "dimension": e.h.algebra().dim(), "summary": e.summary, "claim": e.claim}))
                        .collect(),
                );
                let text = entries.iter().map(|e| format!("{:<14} {}\n", e.name, e.summary)).collect();
                Ok(Outcome::ok(emit(format, json, text)))
            }
            CatalogAction::Run { name, format, float } => {
                if name == "all" {
                    return self.catalog_all(format);
                }
                let e = get_example(&name)?;
                let (r, checks) = e.run()?;
                let doc = export(&e.name, &Built { h: e.h.clone(), metric: e.metric.clone() }, &e.expect.flags)?;
                let prov = Provenance {
                    input_sha256: input::sha256_hex(&doc.to_json()),
                    library_version: hha::VERSION,
                    scalar_field: doc.scalar_field.clone().unwrap_or_default(),
                    pair: None,
                };
                let render = Render { float };
                let passed = failing(&checks).is_empty();
                let json = json!({
                    "name": e.name,
                    "passed": passed,
                    "claim": e.claim,
                    "checks": checks_json(&checks),
                    "report": report_json(&e.name, &prov, &r, render),
                });
                let mut text = report_text(&e.name, &prov, &r, render);
                text.push_str(&format!("claim: {}\nchecks\n", e.claim));
                for c in &checks {
                    text.push_str(&format!("  {} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
                }
                text.push_str(&format!("{} {}\n", if passed { "PASS" } else { "FAIL" }, e.name));
                Ok(Outcome::ok(emit(format, json, text)).with_status(passed))
            }
            CatalogAction::All { format } => self.catalog_all(format),
            CatalogAction::Export { name } => {
                let e = get_example(&name)?;
                let doc = export(&e.name, &Built { h: e.h, metric: e.metric }, &e.expect.flags)?;
                Ok(Outcome::ok(doc.to_json()))
            }
        }
    }

    fn catalog_all(&self, format: Format) -> Result<Outcome, CliError> {
        let runs = run_report(&[])?;
        let all_passed = runs.iter().all(EntryRun::passed);
        let entry_json = |run: &EntryRun| match &run.outcome {
            Ok((_, checks)) => json!({"name": run.name, "passed": run.passed(), "checks": checks_json(checks)}),
            Err(e) => json!({"name": run.name, "passed": false, "error": e.to_string()}),
        };
        let json = json!({
            "library_version": hha::VERSION,
            "passed": all_passed,
            "entries": runs.iter().map(entry_json).collect::<Vec<_>>(),
        });
        let mut text = String::new();
        for run in &runs {
            match &run.outcome {
                Ok((_, checks)) => {
                    let bad = failing(checks);
                    text.push_str(&format!("{} {} ({} checks)\n", if bad.is_empty() { "PASS" } else { "FAIL" }, run.name, checks.len()));
                    for c in bad {
                        text.push_str(&format!("  FAIL {}: {}\n", c.name, c.detail));
                    }
                }
                Err(e) => text.push_str(&format!("FAIL {} (error: {e})\n", run.name)),
            }
        }
        let passed = runs.iter().filter(|r| r.passed()).count();
        text.push_str(&format!("{passed}/{} entries passed\n", runs.len()));
        Ok(Outcome::ok(emit(format, json, text)).with_status(all_passed))
    }

    fn construct(&self, recipe: Recipe) -> Result<Outcome, CliError> {
        match recipe {
            Recipe::An { first, second, e1, e2 } => {
                let (na, a) = self.source(&first)?;
                let (nb, b) = self.source(&second)?;
                let v1 = central_vector(&e1, a.h.algebra().dim())?;
                let v2 = central_vector(&e2, b.h.algebra().dim())?;
                let out = arroyo_nicolini(&a, &v1, &b, &v2)?;
                let doc = export(&format!("an_{na}_{nb}"), &out, &[])?;
                Ok(Outcome::ok(doc.to_json()))
            }
            Recipe::Bf { base, quaternions, copies } => {
                let (name, b) = self.source(&base)?;
                let quats: Vec<[Scalar; 4]> = quaternions
                    .split(';')
                    .map(|q| {
                        let v = parse_scalar_list(q, "--quaternions")?;
                        <[Scalar; 4]>::try_from(v).map_err(|_| CliError::Input(format!("--quaternions: '{q}' needs four entries a,b,c,d")))
                    })
                    .collect::<Result<_, _>>()?;
                if quats.len() != b.h.algebra().dim() {
                    return Err(CliError::Input(format!(
                        "--quaternions: expected {} quaternions (one per basis vector), got {}",
                        b.h.algebra().dim(),
                        quats.len()
                    )));
                }
                let out = barberis_fino(&b, &QuaternionicRep::diagonal_right(copies, &quats))?;
                let doc = export(&format!("bf_{name}_{copies}"), &out.built, &[])?;
                let pb = out.pullback.as_ref();
                let stderr = format!(
                    "sp({copies}): {}\npullback: alpha {} beta {} ric_chern {} ric_bismut {}\n",
                    out.sp,
                    pb.is_some_and(|p| p.alpha),
                    pb.is_some_and(|p| p.beta),
                    pb.is_some_and(|p| p.ric_chern),
                    pb.is_some_and(|p| p.ric_bismut),
                );
                let pass = !out.sp || pb.is_some_and(|p| p.all());
                Ok(Outcome { status: if pass { 0 } else { 1 }, stdout: doc.to_json(), stderr })
            }
            Recipe::Joyce { group, mu } => {
                let mut data = match group.as_str() {
                    "su2" => joyce_su2(1),
                    "su2xsu2" => joyce_su2(2),
                    "su3" => joyce_su3(),
                    g => match g.strip_prefix("su2^").and_then(|m| m.parse::<usize>().ok()) {
                        Some(m) if m >= 1 => joyce_su2(m),
                        _ => return Err(CliError::Input(format!("unknown group '{g}' (expected su2, su2xsu2, su2^m or su3)"))),
                    },
                };
                if let Some(mu) = mu {
                    data.mu = Some(parse_scalar_list(&mu, "--mu")?);
                }
                let out = joyce_build(&data)?;
                let doc = export(&format!("joyce_{}", group.replace('^', "_")), &out.built, &[])?;
                let stderr = format!(
                    "mu: {}\nlambda: {}\n",
                    out.mu.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "),
                    out.lambda.as_ref().map_or("none".into(), |l| l.to_string())
                );
                Ok(Outcome { status: 0, stdout: doc.to_json(), stderr })
            }
        }
    }

    fn audit(&self, path: &Path, format: Format) -> Result<Outcome, CliError> {
        let l = self.load(path)?;
        let (h, m) = (&l.built.h, &l.built.metric);
        let n = h.n();
        let ramp = |len: usize, modulus: i64| (0..len as i64).map(|k| Scalar::from_int(k % modulus - 1)).collect::<Vec<_>>();
        let inputs =
            IdentityInputs { psi: ramp(4 * n * n, 3), zeta: ramp(4 * n * n, 4), x: ramp(4 * n, 3), scale: Some(Scalar::from_int(2)) };
        let mut checks = equivalence_audit(h, m)?;
        checks.extend(identity_audit(h, m, &inputs)?);
        let passed = checks.iter().all(|c| c.passed);
        let json = json!({
            "name": l.doc.name,
            "provenance": provenance_json(&self.provenance(&l, None)),
            "passed": passed,
            "checks": checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        });
        let mut text: String =
            checks.iter().map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)).collect();
        text.push_str(&format!("{}/{} checks passed\n", checks.iter().filter(|c| c.passed).count(), checks.len()));
        Ok(Outcome::ok(emit(format, json, text)).with_status(passed))
    }

    fn certify_qbal(&self, path: &Path, witness: &str, format: Format) -> Result<Outcome, CliError> {
        let l = self.load(path)?;
        let psi = Form::parse(l.built.h.n(), witness)?;
        let cert = qbal_nonexistence_certificate(&l.built.h, &psi)?;
        let accepted = cert.is_accepted();
        let (json, text) = match &cert {
            QbalCertificate::Accepted { witness, sigma, transcript } => (
                json!({
                    "name": l.doc.name,
                    "provenance": provenance_json(&self.provenance(&l, None)),
                    "accepted": true,
                    "witness": witness.to_string(),
                    "sigma": sigma.to_string(),
                    "transcript": transcript,
                }),
                format!("{}: certificate accepted\n{}", l.doc.name, transcript.iter().map(|t| format!("  {t}\n")).collect::<String>()),
            ),
            QbalCertificate::Rejected { witness, sigma, reason } => (
                json!({
                    "name": l.doc.name,
                    "provenance": provenance_json(&self.provenance(&l, None)),
                    "accepted": false,
                    "witness": witness.to_string(),
                    "sigma": sigma.to_string(),
                    "reason": reason,
                }),
                format!("{}: certificate rejected: {reason}\n", l.doc.name),
            ),
        };
        Ok(Outcome::ok(emit(format, json, text)).with_status(accepted))
    }

    fn search(&self, path: &Path, predicate: &str, height: u32, family: FamilyArg, format: Format) -> Result<Outcome, CliError> {
        let l = self.load(path)?;
        let p: Predicate = predicate.parse()?;
        let fam = match family {
            FamilyArg::Diagonal => Family::Diagonal,
            FamilyArg::Full => Family::Full,
        };
        let o = search_metrics(&l.built.h, fam, p, height)?;
        let symbolic = o.symbolic.as_ref().map_or(Value::Null, |s| {
            json!({
                "never_zero": s.never_zero,
                "monomials": s.monomials.iter().map(|(blocks, c)| json!({
                    "blocks": blocks.iter().map(|b| b + 1).collect::<Vec<_>>(),
                    "coefficient": c.to_string(),
                })).collect::<Vec<_>>(),
            })
        });
        let family_name = match fam {
            Family::Diagonal => "diagonal",
            Family::Full => "full",
        };
        let json = json!({
            "name": l.doc.name,
            "provenance": provenance_json(&self.provenance(&l, None)),
            "predicate": p.name(),
            "family": family_name,
            "height": height,
            "tested": o.tested,
            "skipped_not_positive": o.skipped_not_positive,
            "witness": o.witness.as_ref().map(|w| w.to_string()),
            "symbolic": symbolic,
        });
        let mut text = format!(
            "{}: search {} over the {family_name} family, height {height}\n  tested: {}\n  skipped (not positive): {}\n  witness: {}\n",
            l.doc.name,
            p.name(),
            o.tested,
            o.skipped_not_positive,
            o.witness.as_ref().map_or("none".into(), |w| w.to_string()),
        );
        if let Some(s) = &o.symbolic {
            text.push_str(&format!("  symbolic diagonal check: never zero = {}\n", s.never_zero));
        }
        Ok(Outcome::ok(emit(format, json, text)))
    }
}

/// `"k"` is the 1-based basis vector `e_k`; otherwise a comma-separated coordinate vector.
fn central_vector(s: &str, dim: usize) -> Result<Vec<Scalar>, CliError> {
    if let Ok(k) = s.trim().parse::<usize>() {
        if k == 0 || k > dim {
            return Err(CliError::Input(format!("basis index {k} is outside 1..={dim}")));
        }
        let mut v = vec![Scalar::zero(); dim];
        v[k - 1] = Scalar::one();
        return Ok(v);
    }
    let v = parse_scalar_list(s, "central element")?;
    if v.len() != dim {
        return Err(CliError::Input(format!("central element needs {dim} coordinates, got {}", v.len())));
    }
    Ok(v)
}

/// Compares the document's `expect` map with a report. Unknown flag names are input errors.
fn expectation_mismatches(doc: &InputDocument, r: &ClassificationReport) -> Result<Vec<String>, CliError> {
    let verdicts = report::verdict_set(r);
    let mut out = Vec::new();
    for (k, want) in &doc.expect {
        let got = verdicts
            .iter()
            .find(|(name, _)| name == k)
            .map(|(_, v)| *v)
            .ok_or_else(|| CliError::Input(format!("expect: unknown flag '{k}'")))?;
        if got != *want {
            out.push(format!("{k} expected {want}, got {got}"));
        }
    }
    Ok(out)
}
