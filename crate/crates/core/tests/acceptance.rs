//! The twelve acceptance criteria. Prints one PASS/FAIL line each and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use halo_approx::actions::refinement_suite;
use halo_approx::amalgam::scenarios::{
    exact_finite_report, graphproduct_path_embed, halo_shift_setup, symmetric_enrichment_pipeline, symmetric_shift_embed, HaloShiftScenario,
};
use halo_approx::compat::{
    check_conjugation_identity, check_linear_product_bounds, check_sofic_product_formula, linear_pool, sofic_pool, unitary_pool, Hyperlinear,
    LinearSofic, Sofic, WeakSofic,
};
use halo_approx::graph::Graph;
use halo_approx::halo::graphword::{check_normal_form_suite, random_word};
use halo_approx::halo::{check_complete_graph_bijection, HaloKind, VertexGroup};
use halo_approx::metric::{
    check_hamming_hs_bridge, check_metric_axioms, FiniteMetricGroup, GeneralLinear, PrimeField, Sweep, SymmetricGroup, UnitaryGroup, WeakGroup,
};
use halo_approx::rational::rat;
use halo_approx::rng::{seeded, stream_for};
use halo_approx::{CheckReport, Distance};

const CAP: usize = 1 << 20;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: &CheckReport) -> Outcome {
    let detail = match &r.defect {
        Some(d) => format!("defect {d}"),
        None => "no defect recorded".into(),
    };
    Outcome { ok: r.passed(), detail: if r.passed() { detail } else { r.to_text() } }
}

fn within_time(mut o: Outcome, took: Duration, limit: Duration) -> Outcome {
    if took > limit {
        o.ok = false;
        o.detail = format!("{} (took {:.1?}, limit {:?})", o.detail, took, limit);
    }
    o
}

fn exact_zero(d: &Option<Distance>) -> bool {
    d.as_ref().is_none_or(|d| d.as_exact().is_some_and(|x| *x == rat(0, 1)))
}

fn product_formula() -> Outcome {
    let start = Instant::now();
    let r = check_sofic_product_formula(3, 4);
    let took = start.elapsed();
    let mut o = from_report(&r);
    // 3!^2 * 4!^2 quadruples, each checked two ways.
    if !r.notes.iter().any(|n| n.starts_with("20736 quadruples")) {
        o.ok = false;
        o.detail = format!("unexpected coverage: {:?}", r.notes);
    }
    if !exact_zero(&r.defect) {
        o.ok = false;
        o.detail = format!("formula gap {:?}", r.defect);
    }
    within_time(o, took, Duration::from_secs(5))
}

fn linear_bounds() -> Outcome {
    let start = Instant::now();
    let r = check_linear_product_bounds(2, 2);
    let took = start.elapsed();
    let mut o = from_report(&r);
    // |GL_2(F_2)| = 6.
    if !r.notes.iter().any(|n| n.starts_with("36 pairs")) {
        o.ok = false;
        o.detail = format!("unexpected coverage: {:?}", r.notes);
    }
    within_time(o, took, Duration::from_secs(5))
}

fn hamming_hs() -> Outcome {
    let r = check_hamming_hs_bridge(4, 1e-9);
    let mut o = from_report(&r);
    if r.defect.as_ref().is_none_or(|d| d.to_f64() > 1e-9) {
        o.ok = false;
        o.detail = format!("gap {:?}", r.defect);
    }
    o
}

fn conjugation() -> Outcome {
    let (dim, n, cases) = (2, 4, 500);
    let name = |f: &str| format!("conjugation identity ({f}, dim {dim}, n = {n})");
    let mut reports = Vec::new();
    let mut rng = seeded(11, stream_for(&name("sofic")));
    reports.push(("sofic", check_conjugation_identity(&Sofic, &SymmetricGroup::points(dim), n, &sofic_pool(dim), cases, &mut rng)));
    let mut rng = seeded(11, stream_for(&name("linear")));
    let f = PrimeField::new(2).unwrap();
    let pool = linear_pool(&f, dim, 12, &mut rng);
    let g = GeneralLinear::new(f, dim);
    reports.push(("linear", check_conjugation_identity(&LinearSofic { field: f }, &g, n, &pool, cases, &mut rng)));
    let mut rng = seeded(11, stream_for(&name("hyperlinear")));
    let pool = unitary_pool(dim, 12, &mut rng);
    reports.push(("hyperlinear", check_conjugation_identity(&Hyperlinear, &UnitaryGroup { dim }, n, &pool, cases, &mut rng)));
    let mut rng = seeded(11, stream_for(&name("weak")));
    let g = WeakGroup::finite(FiniteMetricGroup::symmetric_hamming(dim));
    let pool = g.elements();
    reports.push(("weak", check_conjugation_identity(&WeakSofic, &g, n, &pool, cases, &mut rng)));

    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for (fam, r) in &reports {
        if !r.passed() {
            problems.push(r.to_text());
        }
        let ok = if *fam == "hyperlinear" { r.defect.as_ref().is_some_and(|d| d.to_f64() <= 1e-9) } else { exact_zero(&r.defect) };
        if !ok {
            problems.push(format!("{fam}: defect {:?}", r.defect));
        }
        summary.push(format!("{fam} {}", r.defect.as_ref().map_or("-".into(), |d| d.to_string())));
    }
    Outcome { ok: problems.is_empty(), detail: if problems.is_empty() { summary.join(", ") } else { problems.join("\n") } }
}

fn weak_wreath() -> Outcome {
    let g = WeakGroup::wreath(WeakGroup::finite(FiniteMetricGroup::cyclic_discrete(2)), 2);
    let elems = g.elements();
    // (Z/2)^2 x| Sym(2).
    if g.order() != 8 || elems.len() != 8 {
        return Outcome { ok: false, detail: format!("order {} with {} elements", g.order(), elems.len()) };
    }
    let mut rng = seeded(0, 0);
    from_report(&check_metric_axioms(&g, &elems, &Sweep::Exhaustive, &mut rng))
}

fn refinement() -> Outcome {
    let name = "refinement suite (500 instances, |A| <= 64)";
    let mut rng = seeded(3, stream_for(name));
    let r = refinement_suite(500, 64, &mut rng);
    let mut o = from_report(&r);
    o.detail = r.notes.join("; ");
    o
}

fn lamplighter_amalgamation() -> Outcome {
    let sc = HaloShiftScenario::lamplighter();
    assert_eq!(sc.cap, CAP);
    let start = Instant::now();
    let run = match symmetric_enrichment_pipeline(&sc) {
        Ok(run) => run,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let took = start.elapsed();
    let rep = &run.report;
    let mut problems = Vec::new();
    if !rep.unital {
        problems.push("Psi is not unital".to_string());
    }
    if !rep.measured_eps.le(&rat(1, 4)) {
        problems.push(format!("measured defect {} above 1/4", rep.measured_eps));
    }
    if rep.c_double_prime != rat(1, 2) {
        problems.push(format!("c'' = {}", rep.c_double_prime));
    }
    if !rep.separation.as_ref().is_some_and(|s| s.ge(&rat(1, 2))) {
        problems.push(format!("separation {:?} below 1/2", rep.separation.as_ref().map(|d| d.to_string())));
    }
    if !rep.passed {
        problems.push("pipeline verdict fails".into());
    }
    let o = Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("eps {}, separation {}", rep.measured_eps, rep.separation.as_ref().unwrap())
        } else {
            problems.join("; ")
        },
    };
    within_time(o, took, Duration::from_secs(60))
}

fn exact_case() -> Outcome {
    let mut problems = Vec::new();
    for fam in ["sofic", "linear", "hyperlinear", "weak"] {
        match exact_finite_report(fam) {
            Ok(rep) => {
                if !rep.measured_eps.is_zero() || rep.measured_eps.is_approximate() {
                    problems.push(format!("{fam}: defect {}", rep.measured_eps));
                }
                if !rep.separation.as_ref().is_some_and(|s| s.ge(&rep.c_double_prime)) {
                    problems.push(format!("{fam}: separation below c'' = {}", rep.c_double_prime));
                }
                if !rep.passed {
                    problems.push(format!("{fam}: verdict fails"));
                }
            }
            Err(e) => problems.push(format!("{fam}: {e}")),
        }
    }
    Outcome { ok: problems.is_empty(), detail: if problems.is_empty() { "four families, zero defect".into() } else { problems.join("; ") } }
}

fn normal_forms() -> Outcome {
    let graph = Graph::path(4);
    let vg = VertexGroup::Cyclic(3);
    let mut rng = seeded(5, stream_for("acceptance normal forms"));
    let words: Vec<_> = (0..100).map(|_| random_word(&[0, 1, 2, 3], &vg, 20, &mut rng)).collect();
    if words.iter().any(|w| w.len() > 20) {
        return Outcome { ok: false, detail: "a word exceeds length 20".into() };
    }
    let mut children = vec![check_normal_form_suite(&graph, &vg, &words, 10, &mut rng)];
    for n in 1..=3 {
        for m in 1..=3 {
            match check_complete_graph_bijection(n, &VertexGroup::Cyclic(m), CAP) {
                Ok(r) => children.push(r),
                Err(e) => return Outcome { ok: false, detail: e.to_string() },
            }
        }
    }
    from_report(&CheckReport::all("normal forms", children))
}

fn graph_product_lef() -> Outcome {
    match graphproduct_path_embed(3, 2, 17) {
        Ok(res) => {
            let mut o = from_report(&res.report);
            o.detail = format!("{} elements into {}", res.images.len(), res.target);
            o.ok &= !res.images.is_empty();
            o
        }
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn semidirect_lef() -> Outcome {
    match symmetric_shift_embed(2, 8) {
        Ok(res) => {
            let mut o = from_report(&res.report);
            o.detail = format!("{} elements into {}", res.images.len(), res.target);
            o.ok &= !res.images.is_empty();
            o
        }
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn lift_consistency() -> Outcome {
    let kinds = [
        ("lamplighter", HaloKind::DirectSum(VertexGroup::Cyclic(2))),
        ("lampshuffler", HaloKind::Sym),
        ("alt", HaloKind::Alt),
        ("directsum:Z/3", HaloKind::DirectSum(VertexGroup::Cyclic(3))),
    ];
    let mut problems = Vec::new();
    for (label, kind) in kinds {
        let sc = HaloShiftScenario { kind, ..HaloShiftScenario::lamplighter() };
        match halo_shift_setup(&sc) {
            Ok(setup) => {
                if !setup.lift_check.passed() {
                    problems.push(format!("{label}: {}", setup.lift_check.to_text()));
                }
                if setup.auto.a_labels != setup.orbit.a_labels || setup.auto.s != setup.orbit.s || setup.auto.phi != setup.orbit.phi {
                    problems.push(format!("{label}: lifted data differs"));
                }
            }
            Err(e) => problems.push(format!("{label}: {e}")),
        }
    }
    Outcome { ok: problems.is_empty(), detail: if problems.is_empty() { "four halos".into() } else { problems.join("\n") } }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("product formula x + y - xy on Sym(3) x Sym(4)", product_formula),
        ("linear product bounds on GL_2(F_2)", linear_bounds),
        ("Hamming vs half squared HS on Sym(4)", hamming_hs),
        ("wreath conjugation identity", conjugation),
        ("weak wreath metric on Z/2 wr Sym(2)", weak_wreath),
        ("support refinement", refinement),
        ("lamplighter amalgamation", lamplighter_amalgamation),
        ("exact-case amalgamation", exact_case),
        ("graph product normal forms", normal_forms),
        ("graph product LEF embedding", graph_product_lef),
        ("semidirect LEF embedding", semidirect_lef),
        ("lift consistency", lift_consistency),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        println!("{} {:2} {name} [{:.2?}]: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, took, o.detail);
        if !o.ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
