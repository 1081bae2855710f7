//! Approximations of group actions: LEF witnesses for actions on sets and
//! graphs, orbit approximations, automorphic approximations of actions by
//! automorphisms, and the transfers between them.
//!
//! Points of the approximating sets `A` are indices `0..|A|`; `phi(g)` is a
//! permutation of those indices.

pub mod construct;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;

use crate::approx::{check_multiplicative, check_unital, ApproximationMap};
use crate::graph::{check_induced_embedding, Graph};
use crate::group::{AutAction, Group, PointAction};
use crate::metric::{SymElem, SymmetricGroup};
use crate::perm::Perm;
use crate::rational::Rational;
use crate::report::CheckReport;

pub use construct::{
    check_lift_consistency, check_refinement, clef_to_automorphic, folner_automorphic_approx, folner_radius, lef_lift_through_halo,
    lef_to_orbit_approx, lift_orbit_to_automorphic, refine_support, refinement_suite, BoxCoordinates,
};

pub type PointElem<P> = <<P as PointAction>::G as Group>::Elem;
type GammaOf<A> = <<A as AutAction>::Gamma as Group>::Elem;
type DeltaOf<A> = <<A as AutAction>::Delta as Group>::Elem;

/// `F ⊆ Γ` and a finite window `Z ⊆ X` of a point action.
#[derive(Clone, Debug)]
pub struct ActionFragment<P: PointAction> {
    pub action: P,
    pub f: Vec<PointElem<P>>,
    pub z: BTreeSet<i64>,
    /// Graph on `X` for actions by graph automorphisms.
    pub graph: Option<Graph>,
}

/// `Q ↷ Y` with `ρ : F → Q` and `π : Z ↪ Y`.
#[derive(Clone, Debug)]
pub struct LefActionWitness<Ge: Ord, Q: PointAction> {
    pub q: Q,
    pub y: BTreeSet<i64>,
    /// Graph on `Y`, required when the fragment is a graph.
    pub y_graph: Option<Graph>,
    pub rho: BTreeMap<Ge, PointElem<Q>>,
    pub pi: BTreeMap<i64, i64>,
}

#[derive(Clone, Debug)]
pub struct OrbitApproximation<Ge: Ord> {
    pub a_labels: Vec<String>,
    pub phi: BTreeMap<Ge, Perm>,
    pub s: BTreeSet<usize>,
    pub e: BTreeSet<i64>,
    /// Template; edgeless for actions on sets.
    pub b: Graph,
    /// Graph on `X` for graph actions.
    pub x_graph: Option<Graph>,
    pub pi: BTreeMap<usize, BTreeMap<i64, i64>>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct AutomorphicApproximation<Ge: Ord, De: Ord, L: Group> {
    pub a_labels: Vec<String>,
    pub phi: BTreeMap<Ge, Perm>,
    pub s: BTreeSet<usize>,
    pub e: Vec<De>,
    pub lambda: L,
    pub pi: BTreeMap<usize, BTreeMap<De, L::Elem>>,
    pub notes: Vec<String>,
}

/// `Q ↷_γ K` with partial homomorphisms `ρ : F → Q`, `π : E ↪ K`.
#[derive(Clone, Debug)]
pub struct ClefWitness<Ge: Ord, De: Ord, C: AutAction> {
    pub gamma: C,
    pub rho: BTreeMap<Ge, GammaOf<C>>,
    pub pi: BTreeMap<De, DeltaOf<C>>,
}

fn check_partial_hom<G: Group, H: Group>(name: &str, dom: &G, cod: &H, map: &BTreeMap<G::Elem, H::Elem>) -> CheckReport {
    let mut r = CheckReport::new(name.to_string());
    for (g, pg) in map {
        for (h, ph) in map {
            let gh = dom.mul(g, h);
            if let Some(pgh) = map.get(&gh) {
                let prod = cod.mul(pg, ph);
                if *pgh != prod {
                    r.violation(format!(
                        "g = {}, h = {}: image of gh is {} but the product of images is {}",
                        dom.render(g),
                        dom.render(h),
                        cod.render(pgh),
                        cod.render(&prod)
                    ));
                }
            }
        }
    }
    r
}

fn check_injective<K: Debug, V: Ord + Debug>(name: &str, map: &BTreeMap<K, V>) -> CheckReport {
    let mut r = CheckReport::new(name.to_string());
    let mut seen: BTreeMap<&V, &K> = BTreeMap::new();
    for (k, v) in map {
        if let Some(prev) = seen.insert(v, k) {
            r.violation(format!("{prev:?} and {k:?} both map to {v:?}"));
        }
    }
    r
}

fn check_size(s: &BTreeSet<usize>, n: usize, eps: &Rational) -> CheckReport {
    let mut r = CheckReport::new(format!("|S| > (1 - {eps})|A|"));
    let lhs = Rational::from_integer(BigInt::from(s.len()));
    let rhs = (Rational::from_integer(1.into()) - eps) * Rational::from_integer(BigInt::from(n));
    if lhs <= rhs {
        r.violation(format!("|S| = {} and |A| = {n}", s.len()));
    }
    if let Some(&bad) = s.iter().find(|&&a| a >= n) {
        r.violation(format!("S contains {bad}, outside A"));
    }
    r.note(format!("|S| = {}, |A| = {n}", s.len()));
    r
}

/// `phi` as a map into `Sym(A)`, unital and `(F, ε)`-multiplicative.
fn check_phi<G: Group>(gamma: &G, phi: &BTreeMap<G::Elem, Perm>, n: usize, eps: &Rational) -> CheckReport {
    let mut r = CheckReport::new(format!("phi is unital and (F, {eps})-multiplicative"));
    if let Some((g, p)) = phi.iter().find(|(_, p)| p.degree() != n) {
        return r.fail(format!("phi({}) has degree {} but |A| = {n}", gamma.render(g), p.degree()));
    }
    let map = sym_map(phi, n);
    r.push_child(check_unital(gamma, &map));
    r.push_child(check_multiplicative(gamma, &map, eps));
    r
}

pub fn sym_map<K: Ord + Clone + Debug>(phi: &BTreeMap<K, Perm>, n: usize) -> ApproximationMap<K, SymmetricGroup> {
    ApproximationMap::new(SymmetricGroup::points(n), phi.iter().map(|(k, p)| (k.clone(), SymElem::Explicit(p.clone()))).collect())
}

/// Partial homomorphism `ρ`, injective `π`, equivariance, and (for graphs)
/// induced-subgraph inclusion.
pub fn check_lef_action_witness<P: PointAction, Q: PointAction>(frag: &ActionFragment<P>, w: &LefActionWitness<PointElem<P>, Q>) -> CheckReport {
    let gamma = frag.action.group();
    let qg = w.q.group();
    let mut top = CheckReport::new("LEF action witness");

    let mut defined = CheckReport::new("rho is defined on F");
    for g in &frag.f {
        if !w.rho.contains_key(g) {
            defined.violation(format!("rho({}) is missing", gamma.render(g)));
        }
    }
    top.push_child(defined);
    let rho: BTreeMap<PointElem<P>, PointElem<Q>> = frag.f.iter().filter_map(|g| w.rho.get(g).map(|q| (g.clone(), q.clone()))).collect();
    top.push_child(check_partial_hom("(i) rho is a partial homomorphism on F", gamma, qg, &rho));

    let mut pi = check_injective("pi : Z -> Y is an injection", &w.pi);
    if w.pi.keys().copied().collect::<BTreeSet<_>>() != frag.z {
        pi.violation("domain of pi is not Z");
    }
    for (x, y) in &w.pi {
        if !w.y.contains(y) {
            pi.violation(format!("pi({x}) = {y} is outside Y"));
        }
    }
    top.push_child(pi);

    let mut preserves = CheckReport::new("Q preserves Y");
    for q in rho.values().collect::<BTreeSet<_>>() {
        let img: BTreeSet<i64> = w.y.iter().map(|&y| w.q.act(q, y)).collect();
        if img != w.y {
            preserves.violation(format!("{} does not permute Y", qg.render(q)));
        }
        if let Some(yg) = &w.y_graph {
            let map: BTreeMap<i64, i64> = w.y.iter().map(|&y| (y, w.q.act(q, y))).collect();
            if let Err(e) = check_induced_embedding(yg, yg, &map) {
                preserves.violation(format!("{} is not a graph automorphism: {e}", qg.render(q)));
            }
        }
    }
    top.push_child(preserves);

    let mut eq = CheckReport::new("(ii) pi(g.x) = rho(g).pi(x) whenever g.x is in Z");
    for g in &frag.f {
        let Some(q) = rho.get(g) else { continue };
        for &x in &frag.z {
            let gx = frag.action.act(g, x);
            if !frag.z.contains(&gx) {
                continue;
            }
            let (Some(&pgx), Some(&px)) = (w.pi.get(&gx), w.pi.get(&x)) else { continue };
            let rhs = w.q.act(q, px);
            if pgx != rhs {
                eq.violation(format!("g = {}, x = {x}, g.x = {gx}: pi(g.x) = {pgx} but rho(g).pi(x) = {rhs}", gamma.render(g)));
            }
        }
    }
    top.push_child(eq);

    if let Some(xg) = &frag.graph {
        let mut ind = CheckReport::new("pi is an induced-subgraph inclusion");
        match (xg.induced(&frag.z), &w.y_graph) {
            (Ok(zg), Some(yg)) => {
                if let Err(e) = check_induced_embedding(&zg, yg, &w.pi) {
                    ind.violation(e);
                }
            }
            (Err(e), _) => ind.violation(e.to_string()),
            (_, None) => ind.violation("the fragment is a graph but Y carries no graph"),
        }
        top.push_child(ind);
    }
    top
}

/// Size of `S`, injectivity (induced inclusion for graphs) of every `π_s`,
/// equivariance, and unital `(F, ε)`-multiplicativity of `phi`.
pub fn check_orbit_approximation<P: PointAction>(action: &P, data: &OrbitApproximation<PointElem<P>>, eps: &Rational) -> CheckReport {
    let gamma = action.group();
    let n = data.a_labels.len();
    let mut top = CheckReport::new(format!("(F, E, {eps})-orbit approximation"));
    top.push_child(check_size(&data.s, n, eps));

    let mut inj = CheckReport::new("each pi_s : E -> B is injective");
    let e_graph = data.x_graph.as_ref().map(|g| g.induced(&data.e));
    for &s in &data.s {
        let Some(p) = data.pi.get(&s) else {
            inj.violation(format!("pi_{s} is missing"));
            continue;
        };
        if p.keys().copied().collect::<BTreeSet<_>>() != data.e {
            inj.violation(format!("pi_{s} is not defined exactly on E"));
        }
        let sub = check_injective("", p);
        for v in sub.violations {
            inj.violation(format!("pi_{s}: {v}"));
        }
        if let Some((x, y)) = p.iter().find(|(_, y)| !data.b.contains(**y)) {
            inj.violation(format!("pi_{s}({x}) = {y} is outside B"));
        }
        match &e_graph {
            Some(Ok(eg)) => {
                if let Err(err) = check_induced_embedding(eg, &data.b, p) {
                    inj.violation(format!("pi_{s} is not an induced inclusion: {err}"));
                }
            }
            Some(Err(err)) => inj.violation(err.to_string()),
            None => {}
        }
    }
    top.push_child(inj);

    let mut eq = CheckReport::new("pi_{phi(g)s}(x) = pi_s(g^-1 x)");
    for (g, pg) in &data.phi {
        if pg.degree() != n {
            continue;
        }
        let ginv = gamma.inv(g);
        for &s in &data.s {
            let gs = pg.apply(s);
            if !data.s.contains(&gs) {
                continue;
            }
            let (Some(pi_gs), Some(pi_s)) = (data.pi.get(&gs), data.pi.get(&s)) else { continue };
            for &x in &data.e {
                let y = action.act(&ginv, x);
                if !data.e.contains(&y) {
                    continue;
                }
                let (Some(l), Some(r)) = (pi_gs.get(&x), pi_s.get(&y)) else { continue };
                if l != r {
                    eq.violation(format!("g = {}, s = {}, x = {x}: {l} vs {r}", gamma.render(g), data.a_labels[s]));
                }
            }
        }
    }
    top.push_child(eq);
    top.push_child(check_phi(gamma, &data.phi, n, eps));
    top
}

/// Size of `S`, every `π_s` an injective partial homomorphism into `Λ`,
/// equivariance against `β(g)⁻¹`, and unital `(F, ε)`-multiplicativity.
pub fn check_automorphic_approximation<A, L>(action: &A, data: &AutomorphicApproximation<GammaOf<A>, DeltaOf<A>, L>, eps: &Rational) -> CheckReport
where
    A: AutAction,
    L: Group,
{
    let gamma = action.gamma();
    let delta = action.delta();
    let n = data.a_labels.len();
    let mut top = CheckReport::new(format!("(F, E, {eps}, {})-automorphic approximation", data.lambda.describe()));
    top.push_child(check_size(&data.s, n, eps));

    let e: BTreeSet<&DeltaOf<A>> = data.e.iter().collect();
    let mut hom = CheckReport::new("each pi_s : E -> Lambda is an injective partial homomorphism");
    for &s in &data.s {
        let Some(p) = data.pi.get(&s) else {
            hom.violation(format!("pi_{s} is missing"));
            continue;
        };
        if p.keys().collect::<BTreeSet<_>>() != e {
            hom.violation(format!("pi_{s} is not defined exactly on E"));
        }
        let sub = CheckReport::all("", vec![check_partial_hom("", delta, &data.lambda, p), check_injective("", p)]);
        for c in sub.children {
            for v in c.violations {
                hom.violation(format!("pi_{}: {v}", data.a_labels[s]));
            }
        }
    }
    top.push_child(hom);

    let mut eq = CheckReport::new("pi_{phi(g)s}(h) = pi_s(beta(g)^-1 h)");
    for (g, pg) in &data.phi {
        if pg.degree() != n {
            continue;
        }
        let ginv = gamma.inv(g);
        for &s in &data.s {
            let gs = pg.apply(s);
            if !data.s.contains(&gs) {
                continue;
            }
            let (Some(pi_gs), Some(pi_s)) = (data.pi.get(&gs), data.pi.get(&s)) else { continue };
            for h in &data.e {
                let k = action.act(&ginv, h);
                let (Some(l), Some(r)) = (pi_gs.get(h), pi_s.get(&k)) else { continue };
                if l != r {
                    eq.violation(format!(
                        "g = {}, s = {}, h = {}: {} vs {}",
                        gamma.render(g),
                        data.a_labels[s],
                        delta.render(h),
                        data.lambda.render(l),
                        data.lambda.render(r)
                    ));
                }
            }
        }
    }
    top.push_child(eq);
    top.push_child(check_phi(gamma, &data.phi, n, eps));
    top
}

/// `ρ` a partial homomorphism on `F`, `π` an injective partial homomorphism
/// on `E`, and `π(β(g)[h]) = γ(ρ(g))[π(h)]` whenever `β(g)[h] ∈ E`.
pub fn check_clef_witness<A, C>(beta: &A, f: &[GammaOf<A>], w: &ClefWitness<GammaOf<A>, DeltaOf<A>, C>) -> CheckReport
where
    A: AutAction,
    C: AutAction,
{
    let gamma = beta.gamma();
    let mut top = CheckReport::new(format!("C-LEF witness into {}", w.gamma.delta().describe()));
    let mut defined = CheckReport::new("rho is defined on F");
    for g in f {
        if !w.rho.contains_key(g) {
            defined.violation(format!("rho({}) is missing", gamma.render(g)));
        }
    }
    top.push_child(defined);
    let rho: BTreeMap<GammaOf<A>, GammaOf<C>> = f.iter().filter_map(|g| w.rho.get(g).map(|q| (g.clone(), q.clone()))).collect();
    top.push_child(check_partial_hom("rho is a partial homomorphism on F", gamma, w.gamma.gamma(), &rho));
    top.push_child(check_partial_hom("pi is a partial homomorphism on E", beta.delta(), w.gamma.delta(), &w.pi));
    top.push_child(check_injective("pi is injective", &w.pi));
    let mut eq = CheckReport::new("pi(beta(g)h) = gamma(rho(g))pi(h)");
    for (g, q) in &rho {
        for (h, ph) in &w.pi {
            let gh = beta.act(g, h);
            let Some(l) = w.pi.get(&gh) else { continue };
            let r = w.gamma.act(q, ph);
            if *l != r {
                eq.violation(format!(
                    "g = {}, h = {}: {} vs {}",
                    gamma.render(g),
                    beta.delta().render(h),
                    w.gamma.delta().render(l),
                    w.gamma.delta().render(&r)
                ));
            }
        }
    }
    top.push_child(eq);
    top
}

#[cfg(test)]
mod tests;
