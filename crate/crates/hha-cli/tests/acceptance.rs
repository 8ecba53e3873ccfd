//! Acceptance run: prints one PASS/FAIL line per criterion and fails if any criterion fails.
//!
//! Run with `cargo test -p hha-cli --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use hha::audit::{equivalence_audit, identity_audit, metric_from_quaternions, sample_pairs, IdentityInputs};
use hha::catalog::{get_example, names};
use hha::classify::{classify_metric, qsg_obstruction};
use hha::hermitian::q_positivity;
use hha::{Form, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hha")).args(args).env_remove("HHA_DEFAULT_FIELD").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn bin_json(args: &[&str]) -> Result<(i32, Value), String> {
    let (status, stdout, stderr) = bin(args);
    let v = serde_json::from_str(&stdout).map_err(|e| format!("{args:?}: invalid JSON ({e}); stderr: {stderr}"))?;
    Ok((status, v))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exported(name: &str) -> Result<String, String> {
    let (status, stdout, stderr) = bin(&["catalog", "export", name]);
    ensure(status == 0, || format!("export {name}: {stderr}"))?;
    let p = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("acceptance-{name}.json"));
    std::fs::write(&p, stdout).map_err(|e| e.to_string())?;
    Ok(p.to_string_lossy().into_owned())
}

fn flag(report: &Value, name: &str) -> Option<bool> {
    report["flags"][name].as_bool()
}

fn check_names_passed(run: &Value, wanted: &[&str]) -> Result<(), String> {
    let checks = run["checks"].as_array().ok_or("missing checks")?;
    for w in wanted {
        let c = checks.iter().find(|c| c["name"] == *w).ok_or_else(|| format!("{}: no {w} check", run["name"]))?;
        ensure(c["passed"] == Value::Bool(true), || format!("{}: {w} failed ({})", run["name"], c["detail"]))?;
    }
    Ok(())
}

fn golden_catalog() -> Outcome {
    let start = Instant::now();
    let (status, all) = bin_json(&["catalog", "all", "--format", "json"])?;
    let elapsed = start.elapsed();
    ensure(status == 0 && all["passed"] == Value::Bool(true), || format!("catalog all exited {status}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("catalog all took {elapsed:?}"))?;
    for n in [12, 16, 20] {
        let (_, run) = bin_json(&["catalog", "run", &format!("qbal{n}"), "--format", "json"])?;
        let r = &run["report"];
        ensure(flag(r, "q_balanced") == Some(true) && flag(r, "abelian_structure") == Some(false), || format!("qbal{n}: {}", r["flags"]))?;
    }
    for n in [12, 16, 20] {
        let (_, run) = bin_json(&["catalog", "run", &format!("qsg{n}"), "--format", "json"])?;
        ensure(flag(&run["report"], "q_strongly_gauduchon") == Some(true), || format!("qsg{n} is not q-strongly Gauduchon"))?;
        ensure(run["report"]["qsg_witness"].is_string(), || format!("qsg{n}: no witness"))?;
        check_names_passed(&run, &["qsg_witness", "qbal_certificate"])?;
    }
    for n in 2..=6 {
        let (_, run) = bin_json(&["catalog", "run", &format!("qgau{}", 4 * n), "--format", "json"])?;
        let r = &run["report"];
        ensure(flag(r, "q_gauduchon") == Some(true) && flag(r, "q_strongly_gauduchon") == Some(false), || {
            format!("qgau{}: {}", 4 * n, r["flags"])
        })?;
        check_names_passed(&run, &["qsg_obstruction"])?;
    }
    Ok(format!("{} entries pass in {:.2} s", all["entries"].as_array().map_or(0, Vec::len), elapsed.as_secs_f64()))
}

fn einstein_table() -> Outcome {
    let table = [
        ("solv_aff_c", Scalar::zero()),
        ("solv_rank1", Scalar::frac(-1, 2)),
        ("solv_third", Scalar::frac(-3, 16)),
        ("joyce_su2", Scalar::one()),
        ("joyce_su2xsu2", Scalar::one()),
    ];
    let mut seen = Vec::new();
    for (name, lambda) in table {
        let (status, run) = bin_json(&["catalog", "run", name, "--format", "json"])?;
        ensure(status == 0, || format!("{name} exited {status}"))?;
        let text = run["report"]["einstein"]["lambda"].as_str().ok_or_else(|| format!("{name}: no lambda"))?;
        let got: Scalar = text.parse().map_err(|e| format!("{name}: {e}"))?;
        ensure(got == lambda, || format!("{name}: lambda {got}, expected {lambda}"))?;
        seen.push(format!("{name} {text}"));
    }
    let (_, aff) = bin_json(&["catalog", "run", "solv_aff_c", "--format", "json"])?;
    let alpha = aff["report"]["canonical"]["alpha"].as_str().unwrap_or_default();
    let parsed = Form::parse(1, alpha).map_err(|e| e.to_string())?;
    ensure(parsed == Form::parse(1, "-i*z2").unwrap(), || format!("solv_aff_c: alpha = {alpha}"))?;
    ensure(aff["report"]["curvature"]["del_j_alpha"] == "0", || "solv_aff_c: del_J alpha is nonzero".into())?;
    Ok(format!("{}; solv_aff_c alpha = {alpha}", seen.join(", ")))
}

const IDENTITY_ALGEBRAS: &[&str] = &[
    "abelian4",
    "abelian8",
    "solv_aff_c",
    "solv_rank1",
    "solv_third",
    "joyce_su2",
    "joyce_su2xsu2",
    "joyce_su3",
    "qgau8",
    "qgau12",
    "qbal12",
    "qsg12",
];

fn identity_suite() -> Outcome {
    const CASES: usize = 120;
    let algebras: Vec<_> =
        IDENTITY_ALGEBRAS.iter().map(|n| get_example(n).map(|e| e.h)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let cases: Vec<(usize, IdentityInputs, Vec<Scalar>)> = (0..CASES)
        .map(|_| {
            let idx = rng.gen_range(0..algebras.len());
            let n = algebras[idx].n();
            let mut ints = |len: usize, r: i64| -> Vec<Scalar> { (0..len).map(|_| Scalar::from_int(rng.gen_range(-r..=r))).collect() };
            let q = ints(4 * n * n, 2);
            let inputs = IdentityInputs {
                psi: ints(15, 3),
                zeta: ints(15, 3),
                x: ints(4 * n, 2),
                scale: Some(Scalar::frac(rng.gen_range(1..=7), rng.gen_range(1..=7))),
            };
            (idx, inputs, q)
        })
        .collect();
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get()).min(16);
    let chunk = CASES.div_ceil(workers);
    let results: Vec<Result<usize, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| {
                let algebras = &algebras;
                s.spawn(move || -> Result<usize, String> {
                    let mut checked = 0;
                    for (idx, inputs, q) in part {
                        let h = &algebras[*idx];
                        let m = metric_from_quaternions(h.n(), q).map_err(|e| e.to_string())?;
                        for c in identity_audit(h, &m, inputs).map_err(|e| e.to_string())? {
                            if !c.passed {
                                return Err(format!("{} on {}: {}", c.name, IDENTITY_ALGEBRAS[*idx], c.detail));
                            }
                            checked += 1;
                        }
                    }
                    Ok(checked)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker finished")).collect()
    });
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{CASES} random exact metrics, {total} identity checks, 0 failures"))
}

fn equivalence_audits() -> Outcome {
    let mut total = 0;
    for name in names() {
        let e = get_example(&name).map_err(|e| e.to_string())?;
        classify_metric(&e.h, &e.metric).map_err(|err| format!("{name}: {err}"))?;
        for c in equivalence_audit(&e.h, &e.metric).map_err(|err| err.to_string())? {
            ensure(c.passed, || format!("{name}: {} ({})", c.name, c.detail))?;
            total += 1;
        }
    }
    Ok(format!("{total} characterization agreements across {} entries", names().len()))
}

fn strong_hkt_positivity() -> Outcome {
    let mut notes = Vec::new();
    for name in ["joyce_su2xsu2", "joyce_su3"] {
        let e = get_example(name).map_err(|e| e.to_string())?;
        let r = classify_metric(&e.h, &e.metric).map_err(|e| e.to_string())?;
        let f = &r.curvature.del_j_alpha;
        let pos = q_positivity(f).map_err(|e| e.to_string())?;
        ensure(r.strong_hkt.holds, || format!("{name} is not strong HKT"))?;
        ensure(!f.is_zero() && pos.is_semipositive(), || format!("{name}: del_J alpha = {f} ({pos:?})"))?;
        notes.push(format!("{name} {pos:?}"));
    }
    let flat = get_example("abelian8").map_err(|e| e.to_string())?;
    let r = classify_metric(&flat.h, &flat.metric).map_err(|e| e.to_string())?;
    ensure(r.hyperkahler.holds && r.curvature.del_j_alpha.is_zero(), || "abelian control: del_J alpha is nonzero".into())?;
    Ok(format!("{}; abelian8 del_J alpha = 0", notes.join(", ")))
}

fn construction_round_trips() -> Outcome {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let write = |name: &str, text: &str| -> Result<String, String> {
        let p = dir.join(format!("acceptance-{name}.json"));
        std::fs::write(&p, text).map_err(|e| e.to_string())?;
        Ok(p.to_string_lossy().into_owned())
    };
    // Gluing: flags of the output hold exactly when they hold on both inputs.
    let mut glued = Vec::new();
    for (a, b) in [("qbal12", "qbal12"), ("qbal12", "qsg12")] {
        let (status, doc, stderr) = bin(&["construct", "an", a, b, "--e1", "2", "--e2", "2"]);
        ensure(status == 0, || format!("an {a} {b}: {stderr}"))?;
        let f = write(&format!("an-{a}-{b}"), &doc)?;
        let (status, check) = bin_json(&["check", &f, "--format", "json"])?;
        ensure(status == 0 && check["dimension"] == 28, || format!("an {a} {b}: check {check}"))?;
        let (_, out) = bin_json(&["classify", &f, "--format", "json"])?;
        let (_, ra) = bin_json(&["classify", &exported(a)?, "--format", "json"])?;
        let (_, rb) = bin_json(&["classify", &exported(b)?, "--format", "json"])?;
        for fl in ["hkt", "q_balanced", "q_strongly_gauduchon"] {
            let want = flag(&ra, fl).unwrap_or(false) && flag(&rb, fl).unwrap_or(false);
            ensure(flag(&out, fl) == Some(want), || format!("an {a} {b}: {fl} = {:?}, inputs give {want}", flag(&out, fl)))?;
        }
        glued.push(format!("an({a},{b}) q_balanced {}", flag(&out, "q_balanced").unwrap_or(false)));
    }
    // Extension of the Joyce su(2) example by H with rho = right multiplication by -mu(i, j, k).
    let (status, joyce, _) = bin(&["construct", "joyce", "su2"]);
    ensure(status == 0, || "joyce su2 failed".into())?;
    let base = write("joyce-su2", &joyce)?;
    let m = "-1/2*sqrt(2)";
    let quats = format!("0,0,0,0;0,{m},0,0;0,0,{m},0;0,0,0,{m}");
    let (status, ext, stderr) = bin(&["construct", "bf", &base, "--quaternions", &quats]);
    ensure(status == 0, || format!("bf: {stderr}"))?;
    ensure(stderr.contains("sp(1): true") && stderr.contains("pullback: alpha true beta true"), || format!("bf: {stderr}"))?;
    let f = write("bf-joyce-su2", &ext)?;
    let (_, r0) = bin_json(&["classify", &base, "--format", "json"])?;
    let (_, r1) = bin_json(&["classify", &f, "--format", "json"])?;
    ensure(flag(&r0, "strong_hkt") == Some(true) && flag(&r1, "strong_hkt") == Some(true), || "bf does not preserve strong HKT".into())?;
    Ok(format!("{}; bf(joyce_su2, sp(1)) strong HKT with alpha pulled back", glued.join(", ")))
}

fn pair_dependence() -> Outcome {
    let f = exported("qsg12")?;
    let (_, base) = bin_json(&["classify", &f, "--format", "json"])?;
    ensure(flag(&base, "q_strongly_gauduchon") == Some(true), || "qsg12 is not q-strongly Gauduchon for (I, J)".into())?;
    let (status, swapped) = bin_json(&["classify", &f, "--pair", "0,1,0;1,0,0", "--format", "json"])?;
    ensure(status == 1 && flag(&swapped, "q_strongly_gauduchon") == Some(false), || "qsg12 (J, I) verdict".into())?;
    let e = get_example("qsg12").map_err(|e| e.to_string())?;
    let h_swapped = e.h.rotate(&hha::SpherePoint::axis(1), &hha::SpherePoint::axis(0)).map_err(|e| e.to_string())?;
    let ob = qsg_obstruction(&h_swapped).map_err(|e| e.to_string())?;
    ensure(ob.is_some(), || "no invariant-family obstruction for (J, I)".into())?;
    let fmt = |p: &hha::SpherePoint| format!("{},{},{}", p.a, p.b, p.c);
    for (p, q) in sample_pairs() {
        let pair = format!("{};{}", fmt(&p), fmt(&q));
        let (_, r) = bin_json(&["classify", &f, "--pair", &pair, "--format", "json"])?;
        for fl in ["q_balanced", "q_gauduchon"] {
            ensure(flag(&r, fl) == flag(&base, fl), || format!("{fl} differs at pair {pair}"))?;
        }
    }
    Ok(format!("(I,J) q-strongly Gauduchon, (J,I) obstructed; q_balanced/q_gauduchon equal at {} pairs", sample_pairs().len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("golden catalog", golden_catalog),
        ("Einstein table", einstein_table),
        ("identity suite", identity_suite),
        ("equivalence audits", equivalence_audits),
        ("strong HKT positivity", strong_hkt_positivity),
        ("construction round-trips", construction_round_trips),
        ("pair dependence", pair_dependence),
    ];
    println!("\nacceptance criteria");
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {title}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {} {title}: FAIL ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
