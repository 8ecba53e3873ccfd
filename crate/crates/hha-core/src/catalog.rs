//! Built-in example algebras with their expected verdicts, used as a golden corpus.
//!
//! Every entry stores its real structure equations, the complex structure equations
//! `d zeta^j` of the standard structure, a metric, and the expectations checked by
//! [`run_report`].

use crate::classify::{classify_metric, qbal_nonexistence_certificate, qsg_obstruction, ClassificationReport};
use crate::constructions::{joyce_build, joyce_su2, joyce_su3};
use crate::error::{HhaError, Result};
use crate::exterior::Form;
use crate::hermitian::{q_positivity, HyperhermitianMetric};
use crate::hypercomplex::{HypercomplexAlgebra, SpherePoint};
use crate::liealg::LieAlgebra;
use crate::par;
use crate::scalar::Scalar;

/// Verdicts and quantities an entry must reproduce.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expectations {
    /// Flags by report name, e.g. `("q_balanced", true)`.
    pub flags: Vec<(&'static str, bool)>,
    pub abelian_structure: Option<bool>,
    pub alpha: Option<Form>,
    pub del_j_alpha: Option<Form>,
    /// Einstein factor `lambda` with `del_J alpha = lambda Omega`.
    pub lambda: Option<Scalar>,
    /// A form `w` with `del Omega^{n-1} = del_J w`.
    pub qsg_witness: Option<Form>,
    /// A (1,0)-form `psi` whose `del psi` certifies that no quaternionic balanced metric exists.
    pub qbal_certificate: Option<Form>,
    /// No invariant metric is quaternionic strongly Gauduchon for the pair `(I, J)`.
    pub qsg_obstruction: bool,
    /// No invariant metric is quaternionic strongly Gauduchon for the pair `(J, I)`.
    pub qsg_obstruction_swapped: bool,
    /// `del_J alpha` is q-semipositive and nonzero.
    pub del_j_alpha_positive: bool,
}

/// A named example: algebra, structure, metric and expectations.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub summary: String,
    /// The expected verdicts together with the reasoning that supports them.
    pub claim: String,
    /// `(k, i, j, c)` meaning `de^k += c e^i ^ e^j`, 0-based.
    pub structure_equations: Vec<(usize, usize, usize, Scalar)>,
    /// `(j, d zeta^j)` with 1-based `j`; generators not listed are closed.
    pub complex_equations: Vec<(usize, Form)>,
    pub h: HypercomplexAlgebra,
    pub metric: HyperhermitianMetric,
    pub expect: Expectations,
}

/// One expectation check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Result of running one entry.
#[derive(Clone, Debug)]
pub struct EntryRun {
    pub name: String,
    pub outcome: Result<(ClassificationReport, Vec<Check>)>,
}

impl EntryRun {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok((_, checks)) if checks.iter().all(|c| c.passed))
    }
}

fn eqs(raw: &[(usize, usize, usize, i64)]) -> Vec<(usize, usize, usize, Scalar)> {
    raw.iter().map(|&(k, i, j, c)| (k, i, j, Scalar::from_int(c))).collect()
}

fn parsed(n: usize, raw: &[(usize, &str)]) -> Vec<(usize, Form)> {
    raw.iter().map(|(j, s)| (*j, Form::parse(n, s).expect("catalog form expression"))).collect()
}

fn flags(list: &[(&'static str, bool)]) -> Vec<(&'static str, bool)> {
    list.to_vec()
}

struct Spec {
    name: String,
    summary: String,
    claim: String,
    dim: usize,
    equations: Vec<(usize, usize, usize, Scalar)>,
    complex: Vec<(usize, Form)>,
    expect: Expectations,
}

fn standard_entry(s: Spec) -> Result<CatalogEntry> {
    let alg = LieAlgebra::from_structure_equations(s.dim, &s.equations)?;
    let h = HypercomplexAlgebra::standard(alg)?;
    let metric = HyperhermitianMetric::standard(h.n());
    Ok(CatalogEntry {
        name: s.name,
        summary: s.summary,
        claim: s.claim,
        structure_equations: s.equations,
        complex_equations: s.complex,
        h,
        metric,
        expect: s.expect,
    })
}

const QBAL_CLAIM: &str = "the unitary coframe metric satisfies del Omega^(n-1) = 0; the hypercomplex structure is \
     not abelian, and on a nilmanifold an HKT metric forces an abelian structure, so no HKT metric exists";

fn qbal(n: usize) -> Result<CatalogEntry> {
    let (equations, complex) = match n {
        3 => (
            eqs(&(0..4).map(|k| (8 + k, 0, 4 + k, 1)).collect::<Vec<_>>()),
            parsed(3, &[(5, "1/2*(z1^z3 + zb1^z3)"), (6, "1/2*(z1^z4 + zb1^z4)")]),
        ),
        4 => (
            eqs(&(0..4).flat_map(|k| [(12 + k, 0, 4 + k, 1), (12 + k, 0, 8 + k, 1)]).collect::<Vec<_>>()),
            parsed(4, &[(7, "1/2*(z1^z3 + zb1^z3 + z1^z5 + zb1^z5)"), (8, "1/2*(z1^z4 + zb1^z4 + z1^z6 + zb1^z6)")]),
        ),
        5 => (
            eqs(&(0..4).flat_map(|k| [(16 + k, 0, 4 + k, 1), (16 + k, 8, 12 + k, 1)]).collect::<Vec<_>>()),
            parsed(5, &[(9, "1/2*(z1^z3 + zb1^z3 + z5^z7 + zb5^z7)"), (10, "1/2*(z1^z4 + zb1^z4 + z5^z8 + zb5^z8)")]),
        ),
        _ => unreachable!("qbal entries exist for n = 3, 4, 5"),
    };
    standard_entry(Spec {
        name: format!("qbal{}", 4 * n),
        summary: format!("{}-dimensional nilpotent algebra with a quaternionic balanced metric and no HKT metric", 4 * n),
        claim: QBAL_CLAIM.into(),
        dim: 4 * n,
        equations,
        complex,
        expect: Expectations {
            flags: flags(&[
                ("hyperkahler", false),
                ("hkt", false),
                ("q_balanced", true),
                ("q_strongly_gauduchon", true),
                ("q_gauduchon", true),
            ]),
            abelian_structure: Some(false),
            ..Default::default()
        },
    })
}

const QSG_CLAIM: &str = "the unitary coframe metric satisfies del Omega^(n-1) = del_J(w) for the stored w; \
     sigma = del psi is nonzero, q-real and q-semipositive on a unimodular algebra with alpha = 0, \
     so no quaternionic balanced metric exists; for the pair (J, I) no invariant metric is \
     quaternionic strongly Gauduchon";

fn qsg(n: usize) -> Result<CatalogEntry> {
    let (equations, complex, witness, psi) = match n {
        3 => (
            eqs(&[(8, 0, 2, 1), (9, 0, 3, 1), (9, 6, 7, 1), (10, 4, 6, 1), (11, 2, 3, -1), (11, 4, 7, 1)]),
            parsed(3, &[(5, "1/2*(z1^z2 + zb1^z2 - z4^zb4)"), (6, "1/2*(z3^z4 + zb3^z4 + z2^zb2)")]),
            "2*(z3^z4^z5^z6 - z1^z2^z5^z6)",
            "2*z5",
        ),
        4 => (
            eqs(&[
                (12, 0, 2, 1),
                (13, 0, 3, 1),
                (13, 6, 7, 1),
                (13, 10, 11, 1),
                (14, 4, 6, 1),
                (14, 8, 10, 1),
                (15, 2, 3, -1),
                (15, 4, 7, 1),
                (15, 8, 11, 1),
            ]),
            parsed(4, &[(7, "1/2*(z1^z2 + zb1^z2 - z4^zb4 - z6^zb6)"), (8, "1/2*(z3^z4 + zb3^z4 + z5^z6 + zb5^z6 + z2^zb2)")]),
            QSG16_WITNESS,
            "2*z7",
        ),
        5 => (
            eqs(&[
                (16, 0, 2, 1),
                (16, 4, 6, 1),
                (17, 0, 3, 1),
                (17, 4, 7, 1),
                (17, 10, 11, 1),
                (17, 14, 15, 1),
                (18, 8, 10, 1),
                (18, 12, 14, 1),
                (19, 2, 3, -1),
                (19, 6, 7, -1),
                (19, 8, 11, 1),
                (19, 12, 15, 1),
            ]),
            parsed(
                5,
                &[
                    (9, "1/2*(z1^z2 + zb1^z2 + z3^z4 + zb3^z4 - z6^zb6 - z8^zb8)"),
                    (10, "1/2*(z5^z6 + zb5^z6 + z7^z8 + zb7^z8 + z2^zb2 + z4^zb4)"),
                ],
            ),
            QSG20_WITNESS,
            "2*z9",
        ),
        _ => unreachable!("qsg entries exist for n = 3, 4, 5"),
    };
    standard_entry(Spec {
        name: format!("qsg{}", 4 * n),
        summary: format!(
            "{}-dimensional nilpotent algebra with a quaternionic strongly Gauduchon metric and no quaternionic balanced metric",
            4 * n
        ),
        claim: QSG_CLAIM.into(),
        dim: 4 * n,
        equations,
        complex,
        expect: Expectations {
            flags: flags(&[("hkt", false), ("q_balanced", false), ("q_strongly_gauduchon", true), ("q_gauduchon", true)]),
            abelian_structure: Some(false),
            qsg_witness: Some(Form::parse(n, witness).expect("witness expression")),
            qbal_certificate: Some(Form::parse(n, psi).expect("certificate expression")),
            qsg_obstruction_swapped: n == 3,
            ..Default::default()
        },
    })
}

/// Witness for `qsg16`, obtained by solving `del_J w = del Omega^3` and stored as data.
const QSG16_WITNESS: &str = "12*z3^z4^z5^z6^z7^z8 - 6*z1^z2^z3^z4^z7^z8";
/// Witness for `qsg20`, obtained by solving `del_J w = del Omega^4` and stored as data.
const QSG20_WITNESS: &str = "48*z1^z2^z5^z6^z7^z8^z9^z10 - 48*z1^z2^z3^z4^z5^z6^z9^z10";

/// The `4n`-dimensional quaternionic Gauduchon family without quaternionic strongly Gauduchon metrics.
pub fn qgau(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(HhaError::UnknownEntry(format!("qgau{}", 4 * n)));
    }
    let mut equations = Vec::new();
    for k in 0..n - 1 {
        for a in 1..4 {
            equations.push((4 * n - 4 + a, 4 * k, 4 * k + a, Scalar::one()));
        }
    }
    let half = Scalar::frac(1, 2);
    let mut dz1 = Form::zero(n);
    let mut dz2 = Form::zero(n);
    for k in 1..n {
        let (a, b) = (2 * k - 1, 2 * k);
        dz1 = dz1.sub(&Form::zeta(n, a).wedge(&Form::zeta_bar(n, a))?.scale_real(&half));
        let t = Form::zeta(n, a).add(&Form::zeta_bar(n, a)).wedge(&Form::zeta(n, b))?;
        dz2 = dz2.add(&t.scale_real(&half));
    }
    standard_entry(Spec {
        name: format!("qgau{}", 4 * n),
        summary: format!(
            "{}-dimensional nilpotent algebra with quaternionic Gauduchon metrics and no quaternionic strongly Gauduchon metric",
            4 * n
        ),
        claim: "every metric is quaternionic Gauduchon since nilpotent algebras are SL(n,H) with alpha = 0; \
                del Omega^(n-1) is a nonzero multiple of zeta^1 ^ .. ^ zeta^(2n-1) for every metric and is never \
                del_J-exact"
            .into(),
        dim: 4 * n,
        equations,
        complex: vec![(2 * n - 1, dz1), (2 * n, dz2)],
        expect: Expectations {
            flags: flags(&[("hkt", false), ("q_strongly_gauduchon", false), ("q_gauduchon", true)]),
            abelian_structure: Some(false),
            qsg_obstruction: true,
            ..Default::default()
        },
    })
}

fn solvable(name: &str) -> Result<CatalogEntry> {
    let n = 1;
    let (summary, claim, equations, complex, alpha, lambda) = match name {
        "solv_aff_c" => (
            "the affine motion algebra aff(C)",
            "alpha = -i zeta^2, so del_J alpha = 0 and the diagonal metric is HKT-Einstein with lambda = 0",
            eqs(&[(0, 0, 3, -1), (0, 1, 2, 1), (2, 0, 1, 1), (2, 2, 3, -1)]),
            vec![(1, "i/2*(zb1^z2 - z1^zb2)"), (2, "i/2*(z1^zb1 - z2^zb2)")],
            "-i*z2",
            Scalar::zero(),
        ),
        "solv_rank1" => (
            "the solvable algebra de^k = -e^1 ^ e^k (k = 2, 3, 4)",
            "alpha = -zeta^1 and del_J alpha = -1/2 Omega, so the diagonal metric is HKT-Einstein with lambda = -1/2",
            eqs(&[(1, 0, 1, -1), (2, 0, 2, -1), (3, 0, 3, -1)]),
            vec![(1, "1/2*z1^zb1"), (2, "-1/2*(z1^z2 + zb1^z2)")],
            "-z1",
            Scalar::frac(-1, 2),
        ),
        "solv_third" => (
            "the solvable algebra de^2 = -e^1 ^ e^2 + 1/2 e^3 ^ e^4, de^3 = -1/2 e^1 ^ e^3, de^4 = -1/2 e^1 ^ e^4",
            "alpha = -3/4 zeta^1 and del_J alpha = -3/16 Omega, so the diagonal metric is HKT-Einstein with \
             lambda = -3/16; the coefficient of e^3 ^ e^4 is 1/2, the value for which J is integrable",
            vec![
                (1, 0, 1, Scalar::from_int(-1)),
                (1, 2, 3, Scalar::frac(1, 2)),
                (2, 0, 2, Scalar::frac(-1, 2)),
                (3, 0, 3, Scalar::frac(-1, 2)),
            ],
            vec![(1, "1/2*z1^zb1 - 1/4*z2^zb2"), (2, "-1/4*(z1^z2 + zb1^z2)")],
            "-3/4*z1",
            Scalar::frac(-3, 16),
        ),
        _ => return Err(HhaError::UnknownEntry(name.into())),
    };
    let omega = HyperhermitianMetric::standard(n).omega().clone();
    standard_entry(Spec {
        name: name.into(),
        summary: summary.into(),
        claim: claim.into(),
        dim: 4,
        equations,
        complex: parsed(n, &complex),
        expect: Expectations {
            flags: flags(&[("hkt", true), ("q_balanced", true), ("q_gauduchon", true)]),
            alpha: Some(Form::parse(n, alpha)?),
            del_j_alpha: Some(omega.scale_real(&lambda)),
            lambda: Some(lambda),
            ..Default::default()
        },
    })
}

fn joyce(name: &str) -> Result<CatalogEntry> {
    let (data, summary) = match name {
        "joyce_su2" => (joyce_su2(1), "Joyce's hypercomplex structure on R + su(2), the Hopf surface U(2)"),
        "joyce_su2xsu2" => (joyce_su2(2), "Joyce's hypercomplex structure on R^2 + su(2) + su(2)"),
        "joyce_su3" => (joyce_su3(), "Joyce's hypercomplex structure on su(3)"),
        _ => return Err(HhaError::UnknownEntry(name.into())),
    };
    let out = joyce_build(&data)?;
    Ok(CatalogEntry {
        name: name.into(),
        summary: summary.into(),
        claim: "the bi-invariant metric with weights mu_j = 1/sqrt(2(1 + d_j)) is strong HKT and \
                HKT-Einstein with del_J alpha = Omega, and del_J alpha is q-semipositive and nonzero"
            .into(),
        structure_equations: out.built.h.algebra().structure_equations(),
        complex_equations: Vec::new(),
        expect: Expectations {
            flags: flags(&[("hkt", true), ("strong_hkt", true), ("q_balanced", true), ("hyperkahler", false)]),
            del_j_alpha: Some(out.built.metric.omega().clone()),
            lambda: Some(Scalar::one()),
            del_j_alpha_positive: true,
            ..Default::default()
        },
        h: out.built.h,
        metric: out.built.metric,
    })
}

/// The abelian algebra of dimension `4n` with the flat metric.
pub fn abelian(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(HhaError::UnknownEntry("abelian0".into()));
    }
    standard_entry(Spec {
        name: format!("abelian{}", 4 * n),
        summary: format!("the abelian algebra R^{}", 4 * n),
        claim: "the flat metric is hyperkahler, so every weaker condition holds and del_J alpha = 0".into(),
        dim: 4 * n,
        equations: Vec::new(),
        complex: Vec::new(),
        expect: Expectations {
            flags: flags(&[
                ("hyperkahler", true),
                ("hkt", true),
                ("strong_hkt", true),
                ("q_balanced", true),
                ("q_strongly_gauduchon", true),
                ("q_gauduchon", true),
                ("balanced", true),
                ("gauduchon", true),
            ]),
            abelian_structure: Some(true),
            alpha: Some(Form::zero(n)),
            del_j_alpha: Some(Form::zero(n)),
            lambda: Some(Scalar::zero()),
            ..Default::default()
        },
    })
}

/// Names of the shipped entries, sorted.
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = ["qbal12", "qbal16", "qbal20", "qsg12", "qsg16", "qsg20"]
        .iter()
        .map(|s| s.to_string())
        .chain((2..=6).map(|n| format!("qgau{}", 4 * n)))
        .chain(["solv_aff_c", "solv_rank1", "solv_third", "joyce_su2", "joyce_su2xsu2", "joyce_su3"].map(String::from))
        .chain((1..=4).map(|n| format!("abelian{}", 4 * n)))
        .collect();
    v.sort();
    v
}

fn suffix_n(name: &str, prefix: &str) -> Option<usize> {
    let d: usize = name.strip_prefix(prefix)?.parse().ok()?;
    (d.is_multiple_of(4) && d > 0).then_some(d / 4)
}

/// Looks up an entry. `qgau<4n>` (n >= 2) and `abelian<4n>` (n >= 1) accept any size.
pub fn get_example(name: &str) -> Result<CatalogEntry> {
    match name {
        "qbal12" => qbal(3),
        "qbal16" => qbal(4),
        "qbal20" => qbal(5),
        "qsg12" => qsg(3),
        "qsg16" => qsg(4),
        "qsg20" => qsg(5),
        "solv_aff_c" | "solv_rank1" | "solv_third" => solvable(name),
        "joyce_su2" | "joyce_su2xsu2" | "joyce_su3" => joyce(name),
        _ => {
            if let Some(n) = suffix_n(name, "qgau").filter(|&n| n >= 2) {
                qgau(n)
            } else if let Some(n) = suffix_n(name, "abelian") {
                abelian(n)
            } else {
                Err(HhaError::UnknownEntry(name.into()))
            }
        }
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

impl CatalogEntry {
    /// Compares `d zeta^j` with the stored complex structure equations.
    pub fn check_complex_equations(&self) -> Vec<Check> {
        let n = self.h.n();
        if self.complex_equations.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for j in 1..=2 * n {
            let expected = self.complex_equations.iter().find(|(k, _)| *k == j).map(|(_, f)| f.clone()).unwrap_or_else(|| Form::zero(n));
            let got = self.h.d(&Form::zeta(n, j));
            out.push(check(&format!("d zeta^{j}"), got == expected, format!("computed {got}, expected {expected}")));
        }
        out
    }

    /// Classifies the entry's metric and checks every expectation.
    pub fn run(&self) -> Result<(ClassificationReport, Vec<Check>)> {
        let r = classify_metric(&self.h, &self.metric)?;
        let n = self.h.n();
        let e = &self.expect;
        let mut checks = self.check_complex_equations();
        for (flag, want) in &e.flags {
            let got = r.flag(flag);
            checks.push(check(flag, got == Some(*want), format!("expected {want}, got {got:?}")));
        }
        if let Some(want) = e.abelian_structure {
            checks.push(check("abelian_structure", r.abelian_structure == want, format!("expected {want}, got {}", r.abelian_structure)));
        }
        if let Some(a) = &e.alpha {
            let got = &r.canonical.alpha;
            checks.push(check("alpha", got == a, format!("expected {a}, got {got}")));
        }
        if let Some(a) = &e.del_j_alpha {
            let got = &r.curvature.del_j_alpha;
            checks.push(check("del_j_alpha", got == a, format!("expected {a}, got {got}")));
        }
        if let Some(l) = &e.lambda {
            let got = &r.einstein.lambda;
            checks.push(check("lambda", got.as_ref() == Some(l), format!("expected {l}, got {got:?}")));
        }
        if let Some(w) = &e.qsg_witness {
            let target = self.h.del(self.metric.omega_power(n - 1));
            let image = self.h.del_j(w);
            checks.push(check("qsg_witness", !w.is_zero() && image == target, format!("del_J w = {image}, del Omega^(n-1) = {target}")));
        }
        if let Some(psi) = &e.qbal_certificate {
            let cert = qbal_nonexistence_certificate(&self.h, psi)?;
            let detail = match &cert {
                crate::classify::QbalCertificate::Accepted { sigma, .. } => format!("accepted with sigma = {sigma}"),
                crate::classify::QbalCertificate::Rejected { reason, .. } => format!("rejected: {reason}"),
            };
            checks.push(check("qbal_certificate", cert.is_accepted(), detail));
        }
        if e.qsg_obstruction {
            let ob = qsg_obstruction(&self.h)?;
            checks.push(check("qsg_obstruction", ob.is_some(), ob.map_or("no obstruction found".into(), |o| o.transcript().join("; "))));
        }
        if e.qsg_obstruction_swapped {
            let swapped = self.h.rotate(&SpherePoint::axis(1), &SpherePoint::axis(0))?;
            let ob = qsg_obstruction(&swapped)?;
            checks.push(check(
                "qsg_obstruction_swapped",
                ob.is_some(),
                ob.map_or("no obstruction found".into(), |o| o.transcript().join("; ")),
            ));
        }
        if e.del_j_alpha_positive {
            let f = &r.curvature.del_j_alpha;
            let pos = q_positivity(f)?;
            checks.push(check("del_j_alpha_positive", !f.is_zero() && pos.is_semipositive(), format!("{pos:?}")));
        }
        Ok((r, checks))
    }
}

/// Runs the named entries (all shipped entries when `names` is empty) in parallel; results are
/// ordered by name.
pub fn run_report(requested: &[String]) -> Result<Vec<EntryRun>> {
    let mut list: Vec<String> = if requested.is_empty() { names() } else { requested.to_vec() };
    list.sort();
    list.dedup();
    let entries: Vec<CatalogEntry> = list.iter().map(|n| get_example(n)).collect::<Result<_>>()?;
    Ok(par::map(&entries, |e| EntryRun { name: e.name.clone(), outcome: e.run() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_entry() {
        assert!(matches!(get_example("nope"), Err(HhaError::UnknownEntry(_))));
        assert!(matches!(get_example("qgau4"), Err(HhaError::UnknownEntry(_))));
        assert!(matches!(get_example("abelian6"), Err(HhaError::UnknownEntry(_))));
    }

    #[test]
    fn names_are_sorted_and_loadable() {
        let v = names();
        let mut s = v.clone();
        s.sort();
        assert_eq!(v, s);
        assert_eq!(v.len(), 6 + 5 + 3 + 3 + 4);
    }

    #[test]
    fn qsg12_obstruction_depends_on_the_pair() {
        let e = get_example("qsg12").unwrap();
        assert!(qsg_obstruction(&e.h).unwrap().is_none());
        let swapped = e.h.rotate(&SpherePoint::axis(1), &SpherePoint::axis(0)).unwrap();
        let ob = qsg_obstruction(&swapped).unwrap().expect("obstruction for (J, I)");
        assert!(matches!(ob, crate::classify::QsgObstruction::Line(_)));
    }

    #[test]
    fn qbal12_complex_equations() {
        let e = get_example("qbal12").unwrap();
        assert!(e.check_complex_equations().iter().all(|c| c.passed));
        assert_eq!(e.check_complex_equations().len(), 6);
    }

    #[test]
    fn solv_aff_c_runs() {
        let run = &run_report(&["solv_aff_c".to_string()]).unwrap()[0];
        assert!(run.passed());
    }

    #[test]
    fn run_unknown_is_an_error() {
        assert!(run_report(&["nope".to_string()]).is_err());
    }
}
