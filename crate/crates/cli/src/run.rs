//! Dispatch from a scenario to the library's checkers.

use std::collections::BTreeSet;
use std::time::Instant;

use halo_approx::actions::{
    check_automorphic_approximation, check_lef_action_witness, check_orbit_approximation, folner_automorphic_approx, lef_to_orbit_approx,
    refinement_suite,
};
use halo_approx::amalgam::scenarios::{
    basic_generator, exact_finite_report, graphproduct_reduction_embed, halo_shift_setup, shift_action, shift_ball, shift_clef_embed, shift_witness,
    symmetric_enrichment_pipeline, HaloShiftScenario,
};
use halo_approx::compat::{
    check_conjugation_identity, check_linear_product_bounds, check_product_compatibility, check_sofic_product_formula, check_wreath_compatibility,
    linear_pool, sofic_pool, sofic_sample_pool, unitary_pool, Hyperlinear, LinearSofic, Sofic, WeakSofic,
};
use halo_approx::group::{AutAction, IntShift};
use halo_approx::halo::graphword::{canonical, check_normal_form_suite, random_word};
use halo_approx::halo::{check_complete_graph_bijection, HaloKind, VertexGroup};
use halo_approx::metric::finite::amplify;
use halo_approx::metric::{
    check_hamming_hs_bridge, check_metric_axioms, metric_transform_pow, FiniteMetricGroup, GeneralLinear, PrimeField, Sweep, SymmetricGroup,
    UnitaryGroup, WeakGroup,
};
use halo_approx::rng::{seeded, stream_for, Rng};
use halo_approx::{CheckReport, Error, Rational, Status};
use serde_json::{json, Map, Value};

use crate::config::*;
use crate::report::{CheckRecord, RunReport, TOOL};

/// Why a run produced no report.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("{0}")]
    Cap(Error),
    #[error("{0}")]
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Cap(_) => 3,
            _ => 2,
        }
    }
}

fn invalid(msg: impl Into<String>) -> RunError {
    RunError::Invalid(msg.into())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).try_fold(1u64, |a, b| a.checked_mul(b)).unwrap_or(u64::MAX)
}

struct Runner<'a> {
    cfg: &'a ScenarioConfig,
    checks: Vec<CheckRecord>,
    extra: Map<String, Value>,
}

impl<'a> Runner<'a> {
    fn cap(&self) -> u64 {
        self.cfg.cap()
    }

    fn capped(&self, what: &str, needed: u64) -> Result<(), RunError> {
        if needed > self.cap() {
            return Err(RunError::Cap(Error::CapExceeded { what: what.into(), needed: needed.to_string(), cap: self.cap() }));
        }
        Ok(())
    }

    /// A stream of the run seed named after the check; sampled checks need a seed.
    fn rng(&self, name: &str, sampled: bool) -> Result<Rng, RunError> {
        match self.cfg.seed {
            Some(s) => Ok(seeded(s, stream_for(name))),
            None if sampled => Err(invalid(format!("{name:?} is sampled, so the scenario needs a seed"))),
            None => Ok(seeded(0, stream_for(name))),
        }
    }

    /// Runs one check. Invalid input and cap errors abort the run;
    /// precondition and check failures become a failing record.
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> halo_approx::Result<CheckReport>) -> Result<(), RunError> {
        let name = name.into();
        let start = Instant::now();
        let report = match f() {
            Ok(r) => r,
            Err(e @ Error::CapExceeded { .. }) => return Err(RunError::Cap(e)),
            Err(Error::Invalid(m)) | Err(Error::Mismatch(m)) => return Err(invalid(format!("{name}: {m}"))),
            Err(e) => CheckReport::new(name.clone()).fail(e.to_string()),
        };
        self.checks.push(CheckRecord {
            name,
            status: report.status,
            defect: report.defect.clone(),
            worst_witness: report.worst_witness.clone(),
            runtime_ms: start.elapsed().as_millis() as u64,
            report,
        });
        Ok(())
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunReport, RunError> {
    if cfg.schema != SCHEMA_VERSION {
        return Err(RunError::Schema {
            path: "schema".into(),
            message: format!("unsupported schema version {}; expected {SCHEMA_VERSION}", cfg.schema),
        });
    }
    let mut r = Runner { cfg, checks: Vec::new(), extra: Map::new() };
    match &cfg.task {
        Task::VerifyMetric(t) => metric(&mut r, t)?,
        Task::VerifyCompat(t) => compat(&mut r, t)?,
        Task::VerifyAction(t) => action(&mut r, t)?,
        Task::Amalgamate(t) => amalgamate(&mut r, t)?,
        Task::NormalForm(t) => normal_form(&mut r, t)?,
        Task::LefEmbed(t) => lef_embed(&mut r, t)?,
    }
    if r.checks.is_empty() {
        return Err(invalid("the scenario selects no checks"));
    }
    let mut checks = r.checks;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let verdict = Status::from_bool(checks.iter().all(|c| c.status == Status::Pass));
    Ok(RunReport {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        schema: SCHEMA_VERSION,
        config: cfg.clone(),
        seed: cfg.seed,
        cap: cfg.cap(),
        verdict,
        checks,
        extra: r.extra,
    })
}

fn finite(spec: &FiniteSpec) -> Result<FiniteMetricGroup, RunError> {
    match *spec {
        FiniteSpec::Cyclic(m) if m >= 1 => Ok(FiniteMetricGroup::cyclic_discrete(m)),
        FiniteSpec::Symmetric(n) if (1..=6).contains(&n) => Ok(FiniteMetricGroup::symmetric_hamming(n)),
        ref other => Err(invalid(format!("{other:?} is out of range (Z/m with m >= 1, Sym(n) with 1 <= n <= 6)"))),
    }
}

fn metric(r: &mut Runner, t: &MetricTask) -> Result<(), RunError> {
    match t {
        MetricTask::HammingHsBridge(HammingHsBridge { n, tol }) => {
            r.capped("Sym(n)^2", factorial(*n).saturating_mul(factorial(*n)))?;
            let (n, tol) = (*n, *tol);
            r.check(format!("hamming-hs-bridge Sym({n})"), || Ok(check_hamming_hs_bridge(n, tol)))
        }
        MetricTask::WeakWreath(WeakWreath { inner, n, sweep }) => {
            let g = WeakGroup::wreath(WeakGroup::finite(finite(inner)?), *n);
            let order = u64::try_from(g.order()).unwrap_or(u64::MAX);
            let name = format!("weak wreath metric on {}", halo_approx::metric::MetricGroup::describe(&g));
            let (sw, sampled) = match sweep {
                SweepSpec::Exhaustive => {
                    r.capped("all triples", order.saturating_pow(3))?;
                    (Sweep::Exhaustive, false)
                }
                SweepSpec::Sampled(count) => {
                    r.capped("group elements", order)?;
                    (Sweep::Sampled { count: *count, seed: r.cfg.seed.unwrap_or(0) }, true)
                }
            };
            let mut rng = r.rng(&name, sampled)?;
            let elems = g.elements();
            r.check(name, || Ok(check_metric_axioms(&g, &elems, &sw, &mut rng)))
        }
        MetricTask::MetricTransform(MetricTransform { group, power }) => {
            if *power > 8 {
                return Err(invalid("power must be at most 8"));
            }
            let g = finite(group)?;
            let k = *power;
            let t = g.with_metric(metric_transform_pow(&g.metric, k)).map_err(|e| invalid(e.to_string()))?;
            r.check(format!("transformed metric on {} (power {k})", g.name), || Ok(t.check_biinvariant_metric()))?;
            r.check(format!("closed form of the transform on {} (power {k})", g.name), || Ok(transform_closed_form(&g.metric, &t.metric, k)))
        }
    }
}

/// `f^k(x) = 1 − (1 − x)^(2^k)`, and `f^k(x) ≥ x` on `[0, 1]`.
fn transform_closed_form(before: &[Vec<Rational>], after: &[Vec<Rational>], k: usize) -> CheckReport {
    let one = Rational::from_integer(1.into());
    let mut r = CheckReport::new(format!("entrywise 1 - (1 - d)^(2^{k})"));
    for (i, (row0, row1)) in before.iter().zip(after).enumerate() {
        for (j, (x, y)) in row0.iter().zip(row1).enumerate() {
            let closed = &one - (&one - x).pow(1i32 << k);
            if *y != closed {
                r.violation(format!("entry ({i}, {j}): {y} vs {closed}"));
            }
            if y < x {
                r.violation(format!("entry ({i}, {j}) shrank from {x} to {y}"));
            }
        }
    }
    // One more step moves every entry strictly inside (0, 1) upward.
    if let Some(x) = before.iter().flatten().find(|x| **x > Rational::from_integer(0.into()) && **x < one) {
        if amplify(x) <= *x {
            r.violation(format!("{x} is not amplified"));
        }
    }
    r
}

fn pool_size(pool: usize) -> usize {
    if pool == 0 {
        16
    } else {
        pool
    }
}

fn field(p: u32) -> Result<PrimeField, RunError> {
    PrimeField::new(p).map_err(|e| invalid(e.to_string()))
}

fn compat(r: &mut Runner, t: &CompatTask) -> Result<(), RunError> {
    match t {
        CompatTask::ProductFormula(ProductFormula { a, b }) => {
            let quads = factorial(*a).saturating_pow(2).saturating_mul(factorial(*b).saturating_pow(2));
            r.capped("quadruples", quads)?;
            let (a, b) = (*a, *b);
            r.check(format!("sofic product formula Sym({a}) x Sym({b})"), || Ok(check_sofic_product_formula(a, b)))?;
            let name = format!("sofic-product map ({a}, {b})");
            let mut rng = r.rng(&name, false)?;
            let (ga, gb) = (SymmetricGroup::points(a), SymmetricGroup::points(b));
            let (pa, pb) = (sofic_pool(a), sofic_pool(b));
            let eps: Vec<Rational> = ["1/2", "1/4", "1/8"].iter().map(|e| e.parse().expect("literal")).collect();
            r.check(name, || Ok(check_product_compatibility(&Sofic, &ga, &gb, &pa, &pb, &Sweep::Exhaustive, &eps, &mut rng)))
        }
        CompatTask::LinearBounds(LinearBounds { p, m }) => {
            let size = (*p as u64).checked_pow((*m * *m) as u32).unwrap_or(u64::MAX);
            r.capped("matrix pairs", size.saturating_mul(size))?;
            let (p, m) = (*p, *m);
            r.check(format!("linear product bounds GL_{m}(F_{p})"), || Ok(check_linear_product_bounds(p, m)))
        }
        CompatTask::Product(Product { family, p, dims, pool, sweep, eps }) => {
            let [a, b] = *dims;
            let eps: Vec<Rational> = eps.iter().map(|e| e.0.clone()).collect();
            let (sw, sampled) = match sweep {
                SweepSpec::Exhaustive => (Sweep::Exhaustive, false),
                SweepSpec::Sampled(count) => (Sweep::Sampled { count: *count, seed: r.cfg.seed.unwrap_or(0) }, true),
            };
            let name = format!("{}-product map ({a}, {b})", family.as_str());
            let random_pools = matches!(family, FamilyName::Hyperlinear) || (matches!(family, FamilyName::Sofic) && sampled);
            let mut rng = r.rng(&name, sampled || random_pools)?;
            let n = pool_size(*pool);
            match family {
                FamilyName::Sofic => {
                    r.capped("Sym(a) x Sym(b)", factorial(a).saturating_mul(factorial(b)))?;
                    let (pa, pb) =
                        if sampled { (sofic_sample_pool(a, n, &mut rng), sofic_sample_pool(b, n, &mut rng)) } else { (sofic_pool(a), sofic_pool(b)) };
                    let (ga, gb) = (SymmetricGroup::points(a), SymmetricGroup::points(b));
                    r.check(name, || Ok(check_product_compatibility(&Sofic, &ga, &gb, &pa, &pb, &sw, &eps, &mut rng)))
                }
                FamilyName::Linear => {
                    let f = field(*p)?;
                    let (pa, pb) = (linear_pool(&f, a, n, &mut rng), linear_pool(&f, b, n, &mut rng));
                    let (ga, gb) = (GeneralLinear::new(f, a), GeneralLinear::new(f, b));
                    r.check(name, || Ok(check_product_compatibility(&LinearSofic { field: f }, &ga, &gb, &pa, &pb, &sw, &eps, &mut rng)))
                }
                FamilyName::Hyperlinear => {
                    let (pa, pb) = (unitary_pool(a, n, &mut rng), unitary_pool(b, n, &mut rng));
                    let (ga, gb) = (UnitaryGroup { dim: a }, UnitaryGroup { dim: b });
                    r.check(name, || Ok(check_product_compatibility(&Hyperlinear, &ga, &gb, &pa, &pb, &sw, &eps, &mut rng)))
                }
                FamilyName::Weak => {
                    let (ga, gb) = (weak_sym(a)?, weak_sym(b)?);
                    let (pa, pb) = (ga.elements(), gb.elements());
                    r.check(name, || Ok(check_product_compatibility(&WeakSofic, &ga, &gb, &pa, &pb, &sw, &eps, &mut rng)))
                }
            }
        }
        CompatTask::Conjugation(Conjugation { families, p, dim, n, pool, cases }) => {
            for family in families {
                let name = format!("conjugation identity ({}, dim {dim}, n = {n})", family.as_str());
                let mut rng = r.rng(&name, true)?;
                let (d, n, cases, size) = (*dim, *n, *cases, pool_size(*pool));
                match family {
                    FamilyName::Sofic => {
                        let g = SymmetricGroup::points(d);
                        let pool = if factorial(d) <= 720 { sofic_pool(d) } else { sofic_sample_pool(d, size, &mut rng) };
                        r.check(name, || Ok(check_conjugation_identity(&Sofic, &g, n, &pool, cases, &mut rng)))?;
                    }
                    FamilyName::Linear => {
                        let f = field(*p)?;
                        let pool = linear_pool(&f, d, size, &mut rng);
                        let g = GeneralLinear::new(f, d);
                        r.check(name, || Ok(check_conjugation_identity(&LinearSofic { field: f }, &g, n, &pool, cases, &mut rng)))?;
                    }
                    FamilyName::Hyperlinear => {
                        let pool = unitary_pool(d, size, &mut rng);
                        r.check(name, || Ok(check_conjugation_identity(&Hyperlinear, &UnitaryGroup { dim: d }, n, &pool, cases, &mut rng)))?;
                    }
                    FamilyName::Weak => {
                        let g = weak_sym(d)?;
                        let pool = g.elements();
                        r.check(name, || Ok(check_conjugation_identity(&WeakSofic, &g, n, &pool, cases, &mut rng)))?;
                    }
                }
            }
            Ok(())
        }
        CompatTask::Wreath(Wreath { family, p, dim, n, pool, eps, c, cases }) => {
            let name = format!("wreath compatibility ({}, dim {dim}, n = {n})", family.as_str());
            let mut rng = r.rng(&name, true)?;
            let (d, n, cases, size) = (*dim, *n, *cases, pool_size(*pool));
            let (eps, c) = (eps.0.clone(), c.0.clone());
            match family {
                FamilyName::Sofic => {
                    let g = SymmetricGroup::points(d);
                    let pool = if factorial(d) <= 720 { sofic_pool(d) } else { sofic_sample_pool(d, size, &mut rng) };
                    r.check(name, || Ok(check_wreath_compatibility(&Sofic, &g, n, &pool, &eps, &c, cases, &mut rng)))
                }
                FamilyName::Linear => {
                    let f = field(*p)?;
                    let pool = linear_pool(&f, d, size, &mut rng);
                    let g = GeneralLinear::new(f, d);
                    r.check(name, || Ok(check_wreath_compatibility(&LinearSofic { field: f }, &g, n, &pool, &eps, &c, cases, &mut rng)))
                }
                FamilyName::Hyperlinear => {
                    let pool = unitary_pool(d, size, &mut rng);
                    r.check(name, || Ok(check_wreath_compatibility(&Hyperlinear, &UnitaryGroup { dim: d }, n, &pool, &eps, &c, cases, &mut rng)))
                }
                FamilyName::Weak => {
                    let g = weak_sym(d)?;
                    let pool = g.elements();
                    r.check(name, || Ok(check_wreath_compatibility(&WeakSofic, &g, n, &pool, &eps, &c, cases, &mut rng)))
                }
            }
        }
    }
}

fn weak_sym(d: usize) -> Result<WeakGroup, RunError> {
    Ok(WeakGroup::finite(finite(&FiniteSpec::Symmetric(d))?))
}

fn action(r: &mut Runner, t: &ActionTask) -> Result<(), RunError> {
    match t {
        ActionTask::RefinementSuite(RefinementSuite { instances, max_points }) => {
            let name = format!("refinement suite ({instances} instances, |A| <= {max_points})");
            let mut rng = r.rng(&name, true)?;
            let (k, m) = (*instances, *max_points);
            r.check(name, || Ok(refinement_suite(k, m, &mut rng)))
        }
        ActionTask::LefToOrbit(LefToOrbit { window, generators, modulus, eps }) => {
            let [lo, hi] = *window;
            if lo > hi || *modulus < 1 {
                return Err(invalid("the window must be nonempty and the modulus positive"));
            }
            let z: BTreeSet<i64> = (lo..=hi).collect();
            let (frag, w) = shift_witness(&z, generators, *modulus, false);
            r.check(format!("LEF witness mod {modulus} on [{lo}, {hi}]"), || Ok(check_lef_action_witness(&frag, &w)))?;
            let cap = r.cap() as usize;
            let mut sizes = None;
            let eps = eps.0.clone();
            r.check(format!("orbit approximation from the mod-{modulus} witness"), || {
                let orbit = lef_to_orbit_approx(&frag, &w, cap)?;
                sizes = Some(json!({ "a": orbit.a_labels.len(), "s": orbit.s.len() }));
                Ok(check_orbit_approximation(&IntShift, &orbit, &eps))
            })?;
            if let Some(s) = sizes {
                r.extra.insert("orbit".into(), s);
            }
            Ok(())
        }
        ActionTask::Folner(Folner { halo, generators, window, eps }) => {
            let act = shift_action(&halo.0);
            let gen = basic_generator(&act.halo).map_err(|e| invalid(e.to_string()))?;
            let e: Vec<_> = window.iter().map(|x| act.act(x, &gen)).collect::<BTreeSet<_>>().into_iter().collect();
            let cap = r.cap() as usize;
            let eps = eps.0.clone();
            let mut sizes = None;
            r.check(format!("Folner automorphic approximation ({halo})"), || {
                let lambda = act.halo.clone();
                let data = folner_automorphic_approx(&act, generators, &e, &eps, lambda, |h| Some(h.clone()), cap)?;
                sizes = Some(json!({ "a": data.a_labels.len(), "s": data.s.len(), "e": data.e.len() }));
                let mut rep = check_automorphic_approximation(&act, &data, &eps);
                rep.notes.extend(data.notes.iter().cloned());
                Ok(rep)
            })?;
            if let Some(s) = sizes {
                r.extra.insert("folner".into(), s);
            }
            Ok(())
        }
        ActionTask::LiftConsistency(LiftConsistency { halos, orbit_modulus, radius }) => {
            for h in halos {
                let sc = HaloShiftScenario {
                    kind: h.0.clone(),
                    orbit_modulus: *orbit_modulus,
                    theta_degree: 8,
                    radius: *radius,
                    eps: "1/4".parse().expect("literal"),
                    cap: r.cap() as usize,
                };
                r.check(format!("lift consistency ({h})"), || {
                    let setup = halo_shift_setup(&sc)?;
                    let mut rep = setup.lift_check.clone();
                    rep.push_child(setup.witness_check.clone());
                    rep.note(format!("|A| = {}, |S| = {}, |E| = {}", setup.orbit.a_labels.len(), setup.orbit.s.len(), setup.e.len()));
                    Ok(rep)
                })?;
            }
            Ok(())
        }
    }
}

fn amalgamation_check(name: &str, rep: &halo_approx::amalgam::AmalgamationReport, exact: bool) -> CheckReport {
    let mut c = CheckReport::new(name);
    if !rep.passed {
        c.violation(format!(
            "verdict fails: measured eps {} (target {}), separation {:?}, unital {}",
            rep.measured_eps,
            rep.budget.eps4,
            rep.separation.as_ref().map(|d| d.to_string()),
            rep.unital
        ));
    }
    if exact && !rep.measured_eps.is_zero() {
        c.violation(format!("measured defect {} is not zero", rep.measured_eps));
    }
    c.note(format!("separation {} against c'' = {}", rep.separation.as_ref().map_or("n/a".into(), |d| d.to_string()), rep.c_double_prime));
    c.push_child(rep.clauses.clone());
    c.with_defect(rep.measured_eps.clone(), rep.measured_eps_witness.clone())
}

fn amalgamate(r: &mut Runner, t: &AmalgamateTask) -> Result<(), RunError> {
    match t {
        AmalgamateTask::HaloShift(HaloShift { halo, orbit_modulus, theta_degree, radius, eps }) => {
            let sc = HaloShiftScenario {
                kind: halo.0.clone(),
                orbit_modulus: *orbit_modulus,
                theta_degree: *theta_degree,
                radius: *radius,
                eps: eps.0.clone(),
                cap: r.cap() as usize,
            };
            let mut extra = None;
            r.check(format!("amalgamation of {halo} over the shift"), || {
                let run = symmetric_enrichment_pipeline(&sc)?;
                let mut c = amalgamation_check(&format!("amalgamation of {halo} over the shift"), &run.report, false);
                c.children.insert(0, run.setup.lift_check.clone());
                c.children.insert(0, run.setup.witness_check.clone());
                extra = Some(serde_json::to_value(&run.report).expect("reports serialize"));
                Ok(c)
            })?;
            if let Some(v) = extra {
                r.extra.insert("amalgamation".into(), v);
            }
            Ok(())
        }
        AmalgamateTask::ExactFinite(ExactFinite { families }) => {
            let mut reports = Map::new();
            for f in families {
                let name = format!("exact amalgamation ({})", f.as_str());
                r.check(name.clone(), || {
                    let rep = exact_finite_report(f.as_str())?;
                    reports.insert(f.as_str().into(), serde_json::to_value(&rep).expect("reports serialize"));
                    Ok(amalgamation_check(&name, &rep, true))
                })?;
            }
            r.extra.insert("amalgamation".into(), Value::Object(reports));
            Ok(())
        }
    }
}

fn normal_form(r: &mut Runner, t: &NormalFormTask) -> Result<(), RunError> {
    let (graph, names) = t.graph.build().map_err(|e| RunError::Schema { path: "task.graph".into(), message: e })?;
    let vg = &t.vertex_group.0;
    let mut words = Vec::new();
    for (i, w) in t.words.iter().enumerate() {
        words.push(parse_word(w, &names, vg).map_err(|e| RunError::Schema { path: format!("task.words[{i}]"), message: e })?);
    }
    if !words.is_empty() {
        let forms: Vec<Value> = t
            .words
            .iter()
            .zip(&words)
            .map(|(src, w)| json!({ "word": src, "normal_form": render_word(&canonical(&graph, vg, w), &names) }))
            .collect();
        r.extra.insert("normal_forms".into(), Value::Array(forms));
        let name = format!("normal forms of {} listed words", words.len());
        let mut rng = r.rng(&name, t.strategies > 0)?;
        let strategies = t.strategies;
        r.check(name, || Ok(check_normal_form_suite(&graph, vg, &words, strategies, &mut rng)))?;
    }
    if t.random_words > 0 {
        let name = format!("normal forms of {} random words over {} ({})", t.random_words, graph.describe(), vg.describe());
        let mut rng = r.rng(&name, true)?;
        let vertices: Vec<i64> = (0..names.len() as i64).collect();
        let random: Vec<_> = (0..t.random_words).map(|_| random_word(&vertices, vg, t.max_len, &mut rng)).collect();
        let strategies = t.strategies;
        r.check(name, || Ok(check_normal_form_suite(&graph, vg, &random, strategies, &mut rng)))?;
    }
    if let Some(b) = &t.complete_bijection {
        let cap = r.cap() as usize;
        r.check(format!("complete graph products vs direct sums (|V| <= {}, |H| <= {})", b.max_vertices, b.max_order), || {
            let mut children = Vec::new();
            for n in 1..=b.max_vertices {
                for m in 1..=b.max_order {
                    children.push(check_complete_graph_bijection(n, &VertexGroup::Cyclic(m as i64), cap)?);
                }
            }
            Ok(CheckReport::all("every complete-graph instance", children))
        })?;
    }
    Ok(())
}

fn lef_embed(r: &mut Runner, t: &LefEmbedTask) -> Result<(), RunError> {
    let mut images = None;
    match t {
        LefEmbedTask::GraphProduct(GraphProduct { graph, radius, modulus }) => {
            let (g, _) = graph.build().map_err(|e| RunError::Schema { path: "task.graph".into(), message: e })?;
            r.check(format!("graph product LEF embedding over {} mod {modulus}", g.describe()), || {
                let res = graphproduct_reduction_embed(&g, *radius, *modulus)?;
                images = Some(json!({ "target": res.target, "size": res.images.len() }));
                Ok(res.report)
            })?;
        }
        LefEmbedTask::Semidirect(Semidirect { halo, radius, modulus, extra_factor }) => {
            if matches!(halo.0, HaloKind::Glf(_)) {
                return Err(invalid("semidirect embeddings support sym, alt, directsum and graphproduct halos"));
            }
            let act = shift_action(&halo.0);
            let f = shift_ball(&act, *radius).map_err(|e| invalid(e.to_string()))?;
            let label = extra_factor.map_or("without an extra factor".to_string(), |p| format!("with Z/{p}"));
            r.check(format!("semidirect LEF embedding of {halo} over the shift mod {modulus}, {label}"), || {
                let res = shift_clef_embed(halo.0.clone(), &f, *modulus, *extra_factor)?;
                images = Some(json!({ "target": res.target, "size": res.images.len() }));
                Ok(res.report)
            })?;
        }
    }
    if let Some(v) = images {
        r.extra.insert("embedding".into(), v);
    }
    Ok(())
}
