//! Golden catalog expectations, the Einstein table, positivity and pair dependence.

mod common;

use std::time::{Duration, Instant};

use common::{random_metric, sphere_pairs};
use hha::catalog::{get_example, names, run_report};
use hha::classify::{classify_metric, qsg_obstruction};
use hha::hermitian::q_positivity;
use hha::{Form, HyperhermitianMetric, Scalar, SpherePoint};

#[test]
fn every_catalog_entry_passes() {
    let start = Instant::now();
    let runs = run_report(&[]).unwrap();
    assert_eq!(runs.len(), names().len());
    let failures: Vec<String> = runs
        .iter()
        .filter(|r| !r.passed())
        .map(|r| match &r.outcome {
            Ok((_, checks)) => format!(
                "{}: {}",
                r.name,
                checks.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.name, c.detail)).collect::<Vec<_>>().join(", ")
            ),
            Err(e) => format!("{}: {e}", r.name),
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(start.elapsed() < Duration::from_secs(60));
    let ordered: Vec<&str> = runs.iter().map(|r| r.name.as_str()).collect();
    let mut sorted = ordered.clone();
    sorted.sort();
    assert_eq!(ordered, sorted);
}

#[test]
fn golden_flags_for_the_nilpotent_families() {
    for name in ["qbal12", "qbal16", "qbal20"] {
        let e = get_example(name).unwrap();
        let r = classify_metric(&e.h, &e.metric).unwrap();
        assert!(r.q_balanced.holds, "{name}");
        assert!(!r.abelian_structure, "{name}");
        assert!(!r.hkt.holds, "{name}");
    }
    for name in ["qsg12", "qsg16", "qsg20"] {
        let e = get_example(name).unwrap();
        let r = classify_metric(&e.h, &e.metric).unwrap();
        assert!(r.q_strongly_gauduchon.holds, "{name}");
        assert!(!r.q_balanced.holds, "{name}");
        let w = e.expect.qsg_witness.as_ref().unwrap();
        let n = e.h.n();
        assert_eq!(e.h.del_j(w), e.h.del(e.metric.omega_power(n - 1)), "{name}");
    }
    for n in 2..=6 {
        let e = get_example(&format!("qgau{}", 4 * n)).unwrap();
        let r = classify_metric(&e.h, &e.metric).unwrap();
        assert!(r.q_gauduchon.holds);
        assert!(!r.q_strongly_gauduchon.holds);
        assert!(qsg_obstruction(&e.h).unwrap().is_some());
    }
}

#[test]
fn qsg12_witness_matches_the_published_one() {
    let e = get_example("qsg12").unwrap();
    let published = Form::parse(3, "2*(z3^z4^z5^z6 - z1^z2^z5^z6)").unwrap();
    assert_eq!(e.expect.qsg_witness.as_ref(), Some(&published));
    assert_eq!(e.h.del(&Form::zeta(3, 5)), Form::parse(3, "1/2*z1^z2").unwrap());
    assert_eq!(e.h.del_j(&Form::zeta(3, 5)), Form::parse(3, "-1/2*z3^z4").unwrap());
    assert_eq!(e.h.del_j(&Form::zeta(3, 6)), Form::parse(3, "1/2*z1^z2").unwrap());
}

#[test]
fn einstein_table() {
    let cases: [(&str, Scalar); 6] = [
        ("solv_aff_c", Scalar::zero()),
        ("solv_rank1", Scalar::frac(-1, 2)),
        ("solv_third", Scalar::frac(-3, 16)),
        ("joyce_su2", Scalar::one()),
        ("joyce_su2xsu2", Scalar::one()),
        ("joyce_su3", Scalar::one()),
    ];
    for (name, lambda) in cases {
        let e = get_example(name).unwrap();
        let r = classify_metric(&e.h, &e.metric).unwrap();
        assert_eq!(r.einstein.lambda.as_ref(), Some(&lambda), "{name}");
        assert_eq!(r.curvature.del_j_alpha, e.metric.omega().scale_real(&lambda), "{name}");
        let two_n = Scalar::from_int(2 * e.h.n() as i64);
        assert_eq!(r.curvature.s_chern, &two_n * &lambda, "{name}");
    }
    let aff = classify_metric(&get_example("solv_aff_c").unwrap().h, &HyperhermitianMetric::standard(1)).unwrap();
    assert_eq!(aff.canonical.alpha, Form::parse(1, "-i*z2").unwrap());
}

#[test]
fn strong_hkt_positivity() {
    for name in ["joyce_su2", "joyce_su2xsu2", "joyce_su3"] {
        let e = get_example(name).unwrap();
        let r = classify_metric(&e.h, &e.metric).unwrap();
        assert!(r.strong_hkt.holds, "{name}");
        assert!(!r.hyperkahler.holds, "{name}");
        let f = &r.curvature.del_j_alpha;
        assert!(!f.is_zero(), "{name}");
        assert!(q_positivity(f).unwrap().is_semipositive(), "{name}");
    }
    let flat = get_example("abelian8").unwrap();
    let r = classify_metric(&flat.h, &flat.metric).unwrap();
    assert!(r.hyperkahler.holds);
    assert!(r.curvature.del_j_alpha.is_zero());
}

#[test]
fn pair_dependence_on_qsg12() {
    let e = get_example("qsg12").unwrap();
    let gram = e.metric.input_gram(&e.h).unwrap();
    let base = classify_metric(&e.h, &e.metric).unwrap();
    assert!(base.q_strongly_gauduchon.holds);
    let swapped = e.h.rotate(&SpherePoint::axis(1), &SpherePoint::axis(0)).unwrap();
    assert!(qsg_obstruction(&swapped).unwrap().is_some());
    let m_swapped = HyperhermitianMetric::from_input_gram(&swapped, &gram).unwrap();
    assert!(!classify_metric(&swapped, &m_swapped).unwrap().q_strongly_gauduchon.holds);
    for (p, q) in sphere_pairs() {
        let h2 = e.h.rotate(&p, &q).unwrap();
        let m2 = HyperhermitianMetric::from_input_gram(&h2, &gram).unwrap();
        let r = classify_metric(&h2, &m2).unwrap();
        assert_eq!(r.q_balanced.holds, base.q_balanced.holds);
        assert_eq!(r.q_gauduchon.holds, base.q_gauduchon.holds);
    }
}

#[test]
fn pair_independence_of_balanced_and_gauduchon_on_random_metrics() {
    let samples: [&[i64]; 3] = [
        &[1, 0, 2, -1, 0, 1, 1, 0, 2, 0, -1, 1, 1, 1, 0, 0, 0, 2, 1, -1, 1, 0, 0, 2, 1, 1, -2, 0, 0, 1, 1, 1, 2, 0, 1, 0],
        &[0, 1, 0, 0, 1, 0, 0, 1, -1, 1, 0, 0, 0, 0, 1, 1, 2, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 1],
        &[2; 36],
    ];
    for name in ["qbal12", "qsg12", "qgau8"] {
        let e = get_example(name).unwrap();
        for q in samples {
            let m = random_metric(e.h.n(), q);
            let gram = m.input_gram(&e.h).unwrap();
            let base = classify_metric(&e.h, &m).unwrap();
            for (p, q) in sphere_pairs() {
                let h2 = e.h.rotate(&p, &q).unwrap();
                let m2 = HyperhermitianMetric::from_input_gram(&h2, &gram).unwrap();
                let r = classify_metric(&h2, &m2).unwrap();
                assert_eq!(r.q_balanced.holds, base.q_balanced.holds, "{name}");
                assert_eq!(r.q_gauduchon.holds, base.q_gauduchon.holds, "{name}");
            }
        }
    }
}

#[test]
fn solv_third_printed_coefficient_is_not_integrable() {
    let eqs =
        [(1, 0, 1, Scalar::from_int(-1)), (1, 2, 3, Scalar::from_int(2)), (2, 0, 2, Scalar::frac(-1, 2)), (3, 0, 3, Scalar::frac(-1, 2))];
    let alg = hha::LieAlgebra::from_structure_equations(4, &eqs).unwrap();
    assert!(matches!(hha::HypercomplexAlgebra::standard(alg), Err(hha::HhaError::Nijenhuis { .. })));
}
