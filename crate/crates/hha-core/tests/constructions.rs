//! Arroyo-Nicolini gluing and Barberis-Fino extensions against their inputs.

use hha::catalog::get_example;
use hha::classify::{classify_metric, ClassificationReport};
use hha::constructions::{arroyo_nicolini, barberis_fino, joyce_build, joyce_su2, Built, QuaternionicRep};
use hha::{HhaError, Scalar};

fn built(name: &str) -> Built {
    let e = get_example(name).unwrap();
    Built { h: e.h, metric: e.metric }
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

fn flags(r: &ClassificationReport) -> [bool; 3] {
    [r.hkt.holds, r.q_balanced.holds, r.q_strongly_gauduchon.holds]
}

/// A central, non-derived element for each input, in 0-based adapted coordinates.
fn central(name: &str) -> Vec<Scalar> {
    match name {
        "qbal12" | "qsg12" => unit(12, 1),
        "abelian8" => unit(8, 0),
        _ => unreachable!(),
    }
}

#[test]
fn arroyo_nicolini_preserves_flags_exactly_when_both_inputs_have_them() {
    for (a, b) in [("qbal12", "qbal12"), ("qbal12", "qsg12"), ("abelian8", "qbal12"), ("abelian8", "abelian8")] {
        let (ga, gb) = (built(a), built(b));
        let out = arroyo_nicolini(&ga, &central(a), &gb, &central(b)).unwrap();
        assert_eq!(out.h.algebra().dim(), ga.h.algebra().dim() + gb.h.algebra().dim() + 4);
        out.h.algebra().validate().unwrap();
        let (ra, rb, r) = (ga.classify().unwrap(), gb.classify().unwrap(), out.classify().unwrap());
        let (fa, fb, f) = (flags(&ra), flags(&rb), flags(&r));
        for k in 0..3 {
            assert_eq!(f[k], fa[k] && fb[k], "({a}, {b}) flag {k}");
        }
    }
}

#[test]
fn arroyo_nicolini_on_qbal12_is_28_dimensional_and_quaternionic_balanced() {
    let g = built("qbal12");
    let out = arroyo_nicolini(&g, &central("qbal12"), &g, &central("qbal12")).unwrap();
    assert_eq!(out.h.algebra().dim(), 28);
    let r = classify_metric(&out.h, &out.metric).unwrap();
    assert!(r.q_balanced.holds);
    assert!(!r.hkt.holds);
}

#[test]
fn arroyo_nicolini_rejects_non_central_elements() {
    let g = built("qbal12");
    let err = arroyo_nicolini(&g, &unit(12, 0), &g, &central("qbal12")).unwrap_err();
    assert!(matches!(err, HhaError::Precondition(_)));
}

fn su2_rep(mu: &Scalar) -> QuaternionicRep {
    let z = Scalar::zero();
    let m = -mu;
    QuaternionicRep::diagonal_right(
        1,
        &[
            [z.clone(), z.clone(), z.clone(), z.clone()],
            [z.clone(), m.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), m.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone(), m],
        ],
    )
}

#[test]
fn barberis_fino_on_joyce_su2_preserves_strong_hkt_and_pulls_back_alpha() {
    let base = joyce_build(&joyce_su2(1)).unwrap();
    let rho = su2_rep(&base.mu[0]);
    assert!(rho.is_sp());
    let out = barberis_fino(&base.built, &rho).unwrap();
    let pb = out.pullback.unwrap();
    assert!(pb.alpha && pb.beta && pb.ric_chern && pb.ric_bismut);
    let r0 = base.built.classify().unwrap();
    let r = out.built.classify().unwrap();
    assert!(r0.strong_hkt.holds);
    assert!(r.strong_hkt.holds);
    assert_eq!(r.hkt.holds, r0.hkt.holds);
}

#[test]
fn barberis_fino_with_two_copies() {
    let base = joyce_build(&joyce_su2(1)).unwrap();
    let z = Scalar::zero();
    let m = -&base.mu[0];
    let quats = [
        [z.clone(), z.clone(), z.clone(), z.clone()],
        [z.clone(), m.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), m.clone(), z.clone()],
        [z.clone(), z.clone(), z.clone(), m],
    ];
    let out = barberis_fino(&base.built, &QuaternionicRep::diagonal_right(2, &quats)).unwrap();
    assert_eq!(out.built.h.n(), 3);
    assert!(out.pullback.unwrap().all());
    assert!(out.built.classify().unwrap().strong_hkt.holds);
}

#[test]
fn barberis_fino_zero_representation_is_a_direct_sum() {
    let base = built("qbal12");
    let out = barberis_fino(&base, &QuaternionicRep::zero(12, 1)).unwrap();
    assert!(out.sp);
    assert!(out.pullback.unwrap().all());
    assert!(out.built.classify().unwrap().q_balanced.holds);
}
