//! Approximations and local embeddings of semidirect products and graph
//! products, assembled from approximations of the pieces and then verified.
//!
//! The main pipeline takes an automorphic approximation `(A, φ, S, Λ, π)` of
//! `Γ ↷ Δ`, a representation `σ_E` of `Λ` and a representation `θ` of `Γ`, and
//! produces `Ψ(h, g) = Δ(τ(σ̂_E(h))ψ(φ(g)), θ(g))` on a finite `F ⊆ Δ ⋊ Γ`.

pub mod embed;
pub mod scenarios;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use serde::Serialize;

use crate::actions::{check_automorphic_approximation, refine_support, AutomorphicApproximation};
use crate::approx::{measure_defects, ApproximationMap};
use crate::compat::{transfer_multiplicativity, CompatFamily, Elem};
use crate::error::{invalid, Error, Result};
use crate::group::{AutAction, DeltaElem, GammaElem, Group, Semidirect};
use crate::metric::MetricGroup;
use crate::perm::Perm;
use crate::rational::{rat, rat_int, Distance, Rational};
use crate::report::{CheckReport, Extremum};

pub use embed::{check_local_embedding, graphproduct_lef_embed, lef_semidirect_embed, lef_semidirect_embed_without_p, LefEmbeddingResult};

pub type SemiElem<A> = (DeltaElem<A>, GammaElem<A>);

/// `F₂ = {e} ∪ {g_i} ∪ {g_i⁻¹}` and `F₁ = {e} ∪ {β(g)[k_i] : g ∈ F₂}`, both sorted.
pub fn derive_f1_f2<A: AutAction>(action: &A, f: &[SemiElem<A>]) -> (Vec<DeltaElem<A>>, Vec<GammaElem<A>>) {
    let gamma = action.gamma();
    let mut f2 = BTreeSet::from([gamma.identity()]);
    for (_, g) in f {
        f2.insert(g.clone());
        f2.insert(gamma.inv(g));
    }
    let mut f1 = BTreeSet::from([action.delta().identity()]);
    for (k, _) in f {
        for g in &f2 {
            f1.insert(action.act(g, k));
        }
    }
    (f1.into_iter().collect(), f2.into_iter().collect())
}

/// `E = {β(g)[h] : g ∈ F₂, h ∈ F₁}`.
pub fn derive_e<A: AutAction>(action: &A, f1: &[DeltaElem<A>], f2: &[GammaElem<A>]) -> Vec<DeltaElem<A>> {
    let mut e = BTreeSet::new();
    for g in f2 {
        for h in f1 {
            e.insert(action.act(g, h));
        }
    }
    e.into_iter().collect()
}

/// Conditions (i)-(iv) at `ε/6` for a map `σ` on `Δ ⋊ Γ`, followed by a
/// direct measurement of `(F, ε)`-multiplicativity.
pub fn check_hayes_sale_conditions<A, M>(
    semi: &Semidirect<A>,
    cod: &M,
    sigma: &dyn Fn(&SemiElem<A>) -> Result<M::Elem>,
    f: &[SemiElem<A>],
    f1: &[DeltaElem<A>],
    f2: &[GammaElem<A>],
    eps: &Rational,
) -> CheckReport
where
    A: AutAction,
    M: MetricGroup,
{
    let action = &semi.action;
    let (delta, gamma) = (action.delta(), action.gamma());
    let (ed, eg) = (delta.identity(), gamma.identity());
    let bound = eps / rat_int(6);
    let mut cache: BTreeMap<SemiElem<A>, Result<M::Elem>> = BTreeMap::new();
    let mut s = |x: &SemiElem<A>| -> Result<M::Elem> { cache.entry(x.clone()).or_insert_with(|| sigma(x)).clone() };

    // Each clause records distances against `bound`.
    struct Clause {
        report: CheckReport,
        worst: Extremum,
    }
    fn offer(c: &mut Clause, d: Result<Distance>, bound: &Rational, witness: impl Fn() -> String) {
        match d {
            Ok(d) => {
                c.report.approximate |= d.is_approximate();
                if !d.lt(bound) {
                    c.report.violation(format!("{}: distance {d}", witness()));
                }
                c.worst.offer(&d, witness);
            }
            Err(e) => c.report.violation(format!("{}: {e}", witness())),
        }
    }
    fn close(c: Clause) -> CheckReport {
        match c.worst.value {
            Some(d) => c.report.with_defect(d, c.worst.witness),
            None => c.report,
        }
    }
    let clause = |name: String| Clause { report: CheckReport::new(name), worst: Extremum::largest() };

    let mut c1 = clause(format!("(i) sigma on Delta is (F1, {bound})-multiplicative"));
    let f1_set: BTreeSet<&DeltaElem<A>> = f1.iter().collect();
    for a in f1 {
        for b in f1 {
            let ab = delta.mul(a, b);
            if !f1_set.contains(&ab) {
                continue;
            }
            let d = (|| cod.distance(&s(&(ab.clone(), eg.clone()))?, &cod.mul(&s(&(a.clone(), eg.clone()))?, &s(&(b.clone(), eg.clone()))?)))();
            offer(&mut c1, d, &bound, || format!("k = {}, k' = {}", delta.render(a), delta.render(b)));
        }
    }

    let mut c2 = clause(format!("(ii) sigma on Gamma is (F2, {bound})-multiplicative"));
    let f2_set: BTreeSet<&GammaElem<A>> = f2.iter().collect();
    for a in f2 {
        for b in f2 {
            let ab = gamma.mul(a, b);
            if !f2_set.contains(&ab) {
                continue;
            }
            let d = (|| cod.distance(&s(&(ed.clone(), ab.clone()))?, &cod.mul(&s(&(ed.clone(), a.clone()))?, &s(&(ed.clone(), b.clone()))?)))();
            offer(&mut c2, d, &bound, || format!("g = {}, g' = {}", gamma.render(a), gamma.render(b)));
        }
    }

    let mut c3 = clause(format!("(iii) d(sigma(k,g), sigma(k,1)sigma(1,g)) < {bound}"));
    let mut c4 = clause(format!("(iv) d(sigma(1,g)sigma(k,1), sigma(beta(g)k,1)sigma(1,g)) < {bound}"));
    for k in f1 {
        for g in f2 {
            let witness = || format!("k = {}, g = {}", delta.render(k), gamma.render(g));
            let d = (|| cod.distance(&s(&(k.clone(), g.clone()))?, &cod.mul(&s(&(k.clone(), eg.clone()))?, &s(&(ed.clone(), g.clone()))?)))();
            offer(&mut c3, d, &bound, witness);
            let gk = action.act(g, k);
            let d = (|| {
                let sg = s(&(ed.clone(), g.clone()))?;
                cod.distance(&cod.mul(&sg, &s(&(k.clone(), eg.clone()))?), &cod.mul(&s(&(gk.clone(), eg.clone()))?, &sg))
            })();
            offer(&mut c4, d, &bound, witness);
        }
    }

    let conditions = [close(c1), close(c2), close(c3), close(c4)];
    let conditions_hold = conditions.iter().all(|c| c.passed());

    let mut direct = clause(format!("direct (F, {eps})-multiplicativity"));
    let f_set: BTreeSet<&SemiElem<A>> = f.iter().collect();
    for x in f {
        for y in f {
            let xy = semi.mul(x, y);
            if !f_set.contains(&xy) {
                continue;
            }
            let d = (|| cod.distance(&s(&xy)?, &cod.mul(&s(x)?, &s(y)?)))();
            offer(&mut direct, d, eps, || format!("({}, {})", semi.render(x), semi.render(y)));
        }
    }
    let mut direct = close(direct);
    if conditions_hold && !direct.passed() {
        direct.note("conditions (i)-(iv) hold, so this failure contradicts the triangle-inequality bound");
    }

    let mut top = CheckReport::all(format!("four-condition test at {eps}/6"), conditions.into());
    top.push_child(direct);
    top
}

/// `σ̂_E(h)_a = σ_E(π_a(h))` for `a ∈ S₀` and the identity elsewhere.
pub fn build_sigma_hat<Ge: Ord, De: Ord + Clone + Debug, L: Group, M: MetricGroup>(
    sigma: &ApproximationMap<L::Elem, M>,
    auto: &AutomorphicApproximation<Ge, De, L>,
    s0: &BTreeSet<usize>,
    e: &[De],
) -> Result<BTreeMap<De, Vec<M::Elem>>> {
    let n = auto.a_labels.len();
    let id = sigma.codomain.identity();
    let mut out = BTreeMap::new();
    for h in e {
        let mut tuple = Vec::with_capacity(n);
        for a in 0..n {
            if !s0.contains(&a) {
                tuple.push(id.clone());
                continue;
            }
            let pa = auto.pi.get(&a).and_then(|m| m.get(h)).ok_or_else(|| invalid(format!("pi_{}({h:?}) is missing", auto.a_labels[a])))?;
            let v = sigma
                .get(pa)
                .ok_or_else(|| invalid(format!("pi_{}({h:?}) = {} escapes the domain of sigma_E", auto.a_labels[a], auto.lambda.render(pa))))?;
            tuple.push(v.clone());
        }
        out.insert(h.clone(), tuple);
    }
    Ok(out)
}

/// `Φ(h, g) = τ(σ̂_E(h)) ψ(φ(g))` in the wreath group over `A`.
#[derive(Clone, Debug)]
pub struct PhiMap<C: CompatFamily, De: Ord, Ge: Ord> {
    pub family: C,
    /// Codomain of `σ_E`.
    pub inner: C::Group,
    pub group: C::Group,
    pub n: usize,
    pub sigma_hat: BTreeMap<De, Vec<Elem<C>>>,
    pub phi: BTreeMap<Ge, Perm>,
}

impl<C: CompatFamily, De: Ord + Debug, Ge: Ord + Debug> PhiMap<C, De, Ge> {
    pub fn new(family: C, inner: C::Group, n: usize, sigma_hat: BTreeMap<De, Vec<Elem<C>>>, phi: BTreeMap<Ge, Perm>) -> Self {
        let group = family.wreath_group(&inner, n);
        PhiMap { family, inner, group, n, sigma_hat, phi }
    }

    pub fn eval(&self, x: &(De, Ge)) -> Result<Elem<C>> {
        let blocks = self.sigma_hat.get(&x.0).ok_or_else(|| invalid(format!("Phi is not defined at h = {:?}", x.0)))?;
        let p = self.phi.get(&x.1).ok_or_else(|| invalid(format!("phi({:?}) is missing", x.1)))?;
        let base = self.family.base_map(&self.inner, blocks);
        let top = self.family.acting_map(&self.inner, self.n, p);
        Ok(self.group.mul(&base, &top))
    }
}

/// A map given pointwise, with its declared separation constant.
pub struct RepSource<'a, D, M: MetricGroup> {
    pub codomain: M,
    pub c: Rational,
    pub eval: Box<dyn Fn(&D) -> Result<M::Elem> + 'a>,
}

impl<'a, D: Ord + Clone + Debug, M: MetricGroup + Clone> RepSource<'a, D, M> {
    pub fn tabulate(&self, domain: impl IntoIterator<Item = D>) -> Result<ApproximationMap<D, M>> {
        let table = domain.into_iter().map(|d| Ok(((self.eval)(&d)?, d)).map(|(v, d)| (d, v))).collect::<Result<_>>()?;
        Ok(ApproximationMap::new(self.codomain.clone(), table))
    }
}

pub struct AmalgamationInput<'a, A: AutAction, L: Group, C: CompatFamily> {
    pub action: A,
    pub f: Vec<SemiElem<A>>,
    pub eps: Rational,
    pub auto: AutomorphicApproximation<GammaElem<A>, DeltaElem<A>, L>,
    /// `σ_E : Λ → G`, evaluated on `F₃`.
    pub sigma: RepSource<'a, L::Elem, C::Group>,
    /// `θ : Γ → G`, evaluated on `F₂`.
    pub theta: RepSource<'a, GammaElem<A>, C::Group>,
    pub family: C,
}

/// Tolerances handed to each stage, from the target back to the inputs.
#[derive(Clone, Debug, Serialize)]
pub struct Budget {
    /// Target for `Ψ`.
    #[serde(with = "crate::rational::json")]
    pub eps4: Rational,
    /// For `Φ` and `θ̃`, so that their product map meets `eps4`.
    #[serde(with = "crate::rational::json")]
    pub eps3: Rational,
    /// Each of the four conditions on `Φ`.
    #[serde(with = "crate::rational::json")]
    pub condition: Rational,
    /// Input tolerance of the wreath map.
    #[serde(with = "crate::rational::json")]
    pub wreath_input: Rational,
    /// For the refinement of `S`.
    #[serde(with = "crate::rational::json")]
    pub eps2: Rational,
    /// For the automorphic approximation and `σ_E`.
    #[serde(with = "crate::rational::json")]
    pub eps1: Rational,
}

pub fn solve_budget<C: CompatFamily>(family: &C, target: &Rational, n_a: usize, f2_len: usize) -> Budget {
    let eps3 = family.product_delta(target);
    let condition = &eps3 / rat_int(6);
    let wreath_input = family.wreath_delta(&condition, n_a.max(1));
    let eps2 = &wreath_input / rat_int(2);
    let by_refinement = &eps2 / rat_int(f2_len as i64 + 1);
    let eps1 = if by_refinement < wreath_input { by_refinement } else { wreath_input.clone() };
    Budget { eps4: target.clone(), eps3, condition, wreath_input, eps2, eps1 }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sizes {
    pub f: usize,
    pub f1: usize,
    pub f2: usize,
    pub e: usize,
    pub f3: usize,
    pub a: usize,
    pub s: usize,
    pub s0: usize,
    pub sigma_codomain: String,
    pub psi_codomain: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmalgamationReport {
    pub family: String,
    pub budget: Budget,
    pub measured_eps: Distance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_eps_witness: Option<String>,
    /// Smallest `d(Ψ(x), e)` over `x ≠ e` in `F`.
    pub separation: Option<Distance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation_witness: Option<String>,
    #[serde(with = "crate::rational::json")]
    pub c: Rational,
    #[serde(with = "crate::rational::json")]
    pub c_prime: Rational,
    #[serde(with = "crate::rational::json")]
    pub mu: Rational,
    #[serde(with = "crate::rational::json")]
    pub c_double_prime: Rational,
    pub unital: bool,
    pub sizes: Sizes,
    pub clauses: CheckReport,
    pub passed: bool,
}

impl AmalgamationReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: measured eps = {} (target {}), separation = {} (c'' = {}), unital = {}, verdict {}\n",
            self.family,
            self.measured_eps,
            self.budget.eps4,
            self.separation.as_ref().map_or("n/a".to_string(), |d| d.to_string()),
            self.c_double_prime,
            self.unital,
            if self.passed { "PASS" } else { "FAIL" }
        );
        out.push_str(&self.clauses.to_text());
        out
    }
}

fn abort(clause: &CheckReport) -> Error {
    Error::CheckFailed(format!("{} failed:\n{}", clause.check, clause.to_text()))
}

fn min_rat(a: Rational, b: Rational) -> Rational {
    if a < b {
        a
    } else {
        b
    }
}

/// A measured representation: unital, multiplicative below `eps`, separated by `c`.
fn representation_clause<G: Group, M: MetricGroup>(
    name: &str,
    dom: &G,
    map: &ApproximationMap<G::Elem, M>,
    eps: &Rational,
    c: &Rational,
) -> Result<CheckReport> {
    let d = measure_defects(dom, map)?;
    let mut r = CheckReport::new(format!("{name} is a ({eps}, {c})-representation"));
    r.approximate = d.approximate;
    if !d.unital {
        r.violation("not unital");
    }
    if !d.eps_max.lt(eps) {
        r.violation(format!("multiplicativity defect {} at {}", d.eps_max, d.eps_witness.clone().unwrap_or_default()));
    }
    if let Some(cm) = &d.c_min {
        if !cm.ge(c) {
            r.violation(format!("separation {cm} below {c} at {}", d.c_witness.clone().unwrap_or_default()));
        }
        r.note(format!("measured separation {cm}"));
    }
    r.note(format!("measured defect {} on {} points", d.eps_max, map.len()));
    Ok(r.with_defect(d.eps_max, d.eps_witness))
}

/// Runs the pipeline and returns `Ψ` on `F` with its report.
///
/// Component failures (automorphic approximation, `σ_E`, `θ`, refinement)
/// abort with the failing clause; the report's verdict is about `Ψ` itself.
pub fn build_psi<A, L, C>(input: &AmalgamationInput<'_, A, L, C>) -> Result<(ApproximationMap<SemiElem<A>, C::Group>, AmalgamationReport)>
where
    A: AutAction + Clone,
    L: Group + Clone,
    C: CompatFamily,
    C::Group: Clone,
{
    let fam = &input.family;
    let action = &input.action;
    let semi = Semidirect::new(action.clone());
    let gamma = action.gamma();
    let auto = &input.auto;
    let n = auto.a_labels.len();
    let f: Vec<SemiElem<A>> = input.f.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();

    let (f1, f2) = derive_f1_f2(action, &f);
    let e = derive_e(action, &f1, &f2);
    let budget = solve_budget(fam, &input.eps, n, f2.len());
    let mut clauses = CheckReport::new(format!("amalgamation pipeline ({})", fam.name()));

    // Automorphic approximation, restricted to F₂ and E.
    let mut phi_f2 = BTreeMap::new();
    for g in &f2 {
        let p = auto.phi.get(g).ok_or_else(|| invalid(format!("phi({}) is missing", gamma.render(g))))?;
        phi_f2.insert(g.clone(), p.clone());
    }
    let mut restricted = auto.clone_restricted(&phi_f2, &e)?;
    let auto_check = check_automorphic_approximation(action, &restricted, &budget.eps1);
    if !auto_check.passed() {
        return Err(abort(&auto_check));
    }
    clauses.push_child(auto_check);

    let s0 = refine_support(&restricted.phi, &f2, &restricted.s, n, &budget.eps2)?;
    restricted.notes.push(format!("|S0| = {}", s0.len()));

    // σ_E on F₃ = ⋃_{s ∈ S₀} π_s(E).
    let mut f3 = BTreeSet::new();
    for a in &s0 {
        f3.extend(restricted.pi[a].values().cloned());
    }
    let sigma_map = input.sigma.tabulate(f3.iter().cloned())?;
    let sigma_check = representation_clause("sigma_E on F3", &auto.lambda, &sigma_map, &budget.eps1, &input.sigma.c)?;
    if !sigma_check.passed() {
        return Err(abort(&sigma_check));
    }
    clauses.push_child(sigma_check);

    let theta_map = input.theta.tabulate(f2.iter().cloned())?;
    let theta_check = representation_clause("theta on F2", gamma, &theta_map, &budget.eps3, &input.theta.c)?;
    if !theta_check.passed() {
        return Err(abort(&theta_check));
    }
    clauses.push_child(theta_check);

    let sigma_hat = build_sigma_hat(&sigma_map, &restricted, &s0, &e)?;
    let phi = PhiMap::new(fam.clone(), input.sigma.codomain.clone(), n, sigma_hat, restricted.phi.clone());

    clauses.push_child(check_conjugation_step(action, &phi, &f1, &f2, &s0, fam.tolerance()));
    let phi_eval = |x: &SemiElem<A>| phi.eval(x);
    clauses.push_child(check_hayes_sale_conditions(&semi, &phi.group, &phi_eval, &f, &f1, &f2, &budget.eps3));

    let e_semi = semi.identity();
    let mut unital = CheckReport::new("Phi is unital");
    if !phi.group.distance_to_identity(&phi.eval(&e_semi)?)?.is_zero() {
        unital.violation("Phi(e, e) is not the identity");
    }
    clauses.push_child(unital);

    let phi_on_f = ApproximationMap::new(phi.group.clone(), f.iter().map(|x| Ok((x.clone(), phi.eval(x)?))).collect::<Result<_>>()?);
    let theta_tilde = ApproximationMap::new(theta_map.codomain.clone(), f.iter().map(|x| (x.clone(), theta_map.table[&x.1].clone())).collect());
    let psi = transfer_multiplicativity(fam, &phi_on_f, &theta_tilde)?;
    let defects = measure_defects(&semi, &psi)?;

    let mu = fam.mu();
    let c_double_prime = &mu * min_rat(&input.sigma.c / rat_int(2), input.theta.c.clone());

    // Separation, case by case.
    let half_c = &input.sigma.c / rat_int(2);
    let mut top_case = CheckReport::new(format!("g != e: d(theta(g), e) >= c' = {}", input.theta.c));
    let mut base_case = CheckReport::new(format!("g = e, h != e: d(Phi(h, e), e) >= c/2 = {half_c}"));
    let mut overall = CheckReport::new(format!("d(Psi(h, g), e) >= c'' = {c_double_prime}"));
    let mut sep = Extremum::smallest();
    for x in &f {
        if *x == e_semi {
            continue;
        }
        let label = || semi.render(x);
        if !gamma.is_identity(&x.1) {
            let d = theta_map.codomain.distance_to_identity(&theta_map.table[&x.1])?;
            if !d.ge(&input.theta.c) {
                top_case.violation(format!("{}: {d}", label()));
            }
        } else {
            let d = phi.group.distance_to_identity(&phi_on_f.table[x])?;
            if !d.ge(&half_c) {
                base_case.violation(format!("{}: {d}", label()));
            }
        }
        let d = psi.codomain.distance_to_identity(&psi.table[x])?;
        if !d.ge(&c_double_prime) {
            overall.violation(format!("{}: {d}", label()));
        }
        sep.offer(&d, label);
    }
    let separation_ok = overall.passed();
    clauses.push_child(CheckReport::all("separation", vec![top_case, base_case, overall]));

    let eps_ok = defects.eps_max.lt(&input.eps);
    let mut measured = CheckReport::new(format!("Psi is (F, {})-multiplicative", input.eps));
    if !eps_ok {
        measured.violation(format!("measured defect {}", defects.eps_max));
    }
    if !defects.unital {
        measured.violation("Psi is not unital");
    }
    measured.approximate = defects.approximate;
    clauses.push_child(measured.with_defect(defects.eps_max.clone(), defects.eps_witness.clone()));

    let sizes = Sizes {
        f: f.len(),
        f1: f1.len(),
        f2: f2.len(),
        e: e.len(),
        f3: f3.len(),
        a: n,
        s: restricted.s.len(),
        s0: s0.len(),
        sigma_codomain: input.sigma.codomain.describe(),
        psi_codomain: psi.codomain.describe(),
    };
    let report = AmalgamationReport {
        family: fam.name(),
        budget,
        measured_eps: defects.eps_max,
        measured_eps_witness: defects.eps_witness,
        separation: sep.value,
        separation_witness: sep.witness,
        c: input.sigma.c.clone(),
        c_prime: input.theta.c.clone(),
        mu,
        c_double_prime,
        unital: defects.unital,
        sizes,
        passed: eps_ok && separation_ok && defects.unital,
        clauses,
    };
    Ok((psi, report))
}

/// `σ̂_E(h)_a = σ̂_E(β(g)[h])_{φ(g)[a]}` for `h ∈ F₁`, `g ∈ F₂` and
/// `a ∈ S₀ ∩ φ(g)⁻¹(S₀)`.
pub fn check_conjugation_step<A, C>(
    action: &A,
    phi: &PhiMap<C, DeltaElem<A>, GammaElem<A>>,
    f1: &[DeltaElem<A>],
    f2: &[GammaElem<A>],
    s0: &BTreeSet<usize>,
    tol: f64,
) -> CheckReport
where
    A: AutAction,
    C: CompatFamily,
{
    let mut r = CheckReport::new("conjugation step is exact coordinatewise");
    let mut checked = 0usize;
    for g in f2 {
        let Some(p) = phi.phi.get(g) else {
            r.violation(format!("phi({}) is missing", action.gamma().render(g)));
            continue;
        };
        for h in f1 {
            let gh = action.act(g, h);
            let (Some(x), Some(y)) = (phi.sigma_hat.get(h), phi.sigma_hat.get(&gh)) else { continue };
            for &a in s0 {
                let b = p.apply(a);
                if !s0.contains(&b) {
                    continue;
                }
                checked += 1;
                let ok = match phi.inner.distance(&x[a], &y[b]) {
                    Ok(d) => d.to_f64() <= tol && (tol > 0.0 || d.is_zero()),
                    Err(_) => false,
                };
                if !ok {
                    r.violation(format!(
                        "g = {}, h = {}, a = {a}: coordinate differs from that of beta(g)h at {b}",
                        action.gamma().render(g),
                        action.delta().render(h)
                    ));
                }
            }
        }
    }
    r.note(format!("{checked} coordinates compared"));
    r
}

impl<Ge: Ord + Clone + Debug, De: Ord + Clone + Debug, L: Group + Clone> AutomorphicApproximation<Ge, De, L> {
    /// The same data with `φ` replaced and every `π_s` restricted to `e`.
    pub fn clone_restricted(&self, phi: &BTreeMap<Ge, Perm>, e: &[De]) -> Result<Self> {
        let mut pi = BTreeMap::new();
        for s in &self.s {
            let ps = self.pi.get(s).ok_or_else(|| invalid(format!("pi_{} is missing", self.a_labels[*s])))?;
            let mut m = BTreeMap::new();
            for h in e {
                let v = ps.get(h).ok_or_else(|| invalid(format!("pi_{} is not defined at {h:?}; E must lie in its domain", self.a_labels[*s])))?;
                m.insert(h.clone(), v.clone());
            }
            pi.insert(*s, m);
        }
        Ok(AutomorphicApproximation {
            a_labels: self.a_labels.clone(),
            phi: phi.clone(),
            s: self.s.clone(),
            e: e.to_vec(),
            lambda: self.lambda.clone(),
            pi,
            notes: self.notes.clone(),
        })
    }
}

/// `1/4` appears as the default target for every bundled pipeline run.
pub fn default_target() -> Rational {
    rat(1, 4)
}

#[cfg(test)]
mod tests;
