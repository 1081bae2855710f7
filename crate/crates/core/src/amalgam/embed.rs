//! Local embeddings into finite-by-LEF targets: semidirect products from
//! C-LEF witnesses, and graph products from local embeddings of the vertex
//! groups.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::actions::{check_clef_witness, ClefWitness};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::group::{AutAction, DirectProduct, GammaElem, Group, Semidirect};
use crate::halo::graphword;
use crate::halo::{HaloElem, HaloGroup, HaloKind, Syllable, VertexGroup};
use crate::report::CheckReport;

use super::{derive_f1_f2, SemiElem};

#[derive(Clone, Debug, Serialize)]
pub struct LefEmbeddingResult {
    pub target: String,
    /// `(x, Φ(x))`, rendered.
    pub images: Vec<(String, String)>,
    pub report: CheckReport,
}

impl LefEmbeddingResult {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Injectivity and `Φ(xy) = Φ(x)Φ(y)` whenever `x, y, xy ∈ F`, compared by
/// equality in the target.
pub fn check_local_embedding<G: Group, H: Group>(dom: &G, cod: &H, map: &BTreeMap<G::Elem, H::Elem>) -> CheckReport {
    let mut hom = CheckReport::new("partial homomorphism on F");
    let mut pairs = 0usize;
    for (x, px) in map {
        for (y, py) in map {
            let xy = dom.mul(x, y);
            let Some(pxy) = map.get(&xy) else { continue };
            pairs += 1;
            let prod = cod.mul(px, py);
            if prod != *pxy {
                hom.violation(format!(
                    "x = {}, y = {}: Phi(xy) = {} but Phi(x)Phi(y) = {}",
                    dom.render(x),
                    dom.render(y),
                    cod.render(pxy),
                    cod.render(&prod)
                ));
            }
        }
    }
    hom.note(format!("{pairs} pairs with xy in F"));
    let mut inj = CheckReport::new("injective on F");
    let mut seen: BTreeMap<&H::Elem, &G::Elem> = BTreeMap::new();
    for (x, px) in map {
        if let Some(prev) = seen.insert(px, x) {
            inj.violation(format!("{} and {} both map to {}", dom.render(prev), dom.render(x), cod.render(px)));
        }
    }
    CheckReport::all(format!("injective partial homomorphism into {}", cod.describe()), vec![hom, inj])
}

fn images<G: Group, H: Group>(dom: &G, cod: &H, map: &BTreeMap<G::Elem, H::Elem>) -> Vec<(String, String)> {
    map.iter().map(|(x, y)| (dom.render(x), cod.render(y))).collect()
}

/// `σ(h, g) = (π(h), ρ(g))` on `F`, where `F₁` and `F₂` come from the
/// derivation; requires `π` on `F₁` and `ρ` on `F₂`.
fn sigma_table<A, C>(
    action: &A,
    f: &[SemiElem<A>],
    w: &ClefWitness<GammaElem<A>, <A::Delta as Group>::Elem, C>,
) -> Result<(CheckReport, BTreeMap<SemiElem<A>, (<C::Delta as Group>::Elem, <C::Gamma as Group>::Elem)>)>
where
    A: AutAction,
    C: AutAction,
{
    let (f1, f2) = derive_f1_f2(action, f);
    if let Some(h) = f1.iter().find(|h| !w.pi.contains_key(h)) {
        return Err(invalid(format!("pi is not defined at {} in F1", action.delta().render(h))));
    }
    if let Some(g) = f2.iter().find(|g| !w.rho.contains_key(g)) {
        return Err(invalid(format!("rho is not defined at {} in F2", action.gamma().render(g))));
    }
    let witness = check_clef_witness(action, &f2, w);
    let table = f.iter().map(|(h, g)| ((h.clone(), g.clone()), (w.pi[h].clone(), w.rho[g].clone()))).collect();
    Ok((witness, table))
}

/// `Φ(h, g) = ((π(h), ρ(g)), φ(g))` into `(K ⋊_γ Q) × P`.
pub fn lef_semidirect_embed<A, C, P>(
    action: &A,
    f: &[SemiElem<A>],
    w: &ClefWitness<GammaElem<A>, <A::Delta as Group>::Elem, C>,
    p: &P,
    phi: &BTreeMap<GammaElem<A>, P::Elem>,
) -> Result<LefEmbeddingResult>
where
    A: AutAction + Clone,
    C: AutAction + Clone,
    P: Group + Clone,
{
    let (witness, sigma) = sigma_table(action, f, w)?;
    let mut table = BTreeMap::new();
    for (x, s) in sigma {
        let px = phi.get(&x.1).ok_or_else(|| invalid(format!("phi is not defined at {}", action.gamma().render(&x.1))))?;
        table.insert(x, (s, px.clone()));
    }
    let dom = Semidirect::new(action.clone());
    let cod = DirectProduct(Semidirect::new(w.gamma.clone()), p.clone());
    let mut report = CheckReport::new("LEF embedding of a semidirect product");
    report.push_child(witness);
    report.push_child(check_local_embedding(&dom, &cod, &table));
    Ok(LefEmbeddingResult { target: format!("({}) x {}", cod.0.describe(), p.describe()), images: images(&dom, &cod, &table), report })
}

/// The same map with the `P` factor dropped: `Φ(h, g) = (π(h), ρ(g))`.
pub fn lef_semidirect_embed_without_p<A, C>(
    action: &A,
    f: &[SemiElem<A>],
    w: &ClefWitness<GammaElem<A>, <A::Delta as Group>::Elem, C>,
) -> Result<LefEmbeddingResult>
where
    A: AutAction + Clone,
    C: AutAction + Clone,
{
    let (witness, table) = sigma_table(action, f, w)?;
    let dom = Semidirect::new(action.clone());
    let cod = Semidirect::new(w.gamma.clone());
    let mut report = CheckReport::new("LEF embedding of a semidirect product, without P");
    report.push_child(witness);
    report.push_child(check_local_embedding(&dom, &cod, &table));
    Ok(LefEmbeddingResult { target: cod.describe(), images: images(&dom, &cod, &table), report })
}

/// Per-vertex sets `F_v'`: products of at most `2L` syllable values seen at
/// `v` in the reduced forms of `F` (and their inverses), `L` the longest
/// reduced length.
pub fn local_sets(vg: &VertexGroup, f: &[Vec<Syllable>]) -> BTreeMap<i64, BTreeSet<i64>> {
    let l = f.iter().map(Vec::len).max().unwrap_or(0);
    let mut seen: BTreeMap<i64, BTreeSet<i64>> = BTreeMap::new();
    for w in f {
        for &(v, k) in w {
            let s = seen.entry(v).or_default();
            s.insert(k);
            s.insert(vg.inv(k));
        }
    }
    seen.into_iter()
        .map(|(v, gens)| {
            let mut acc = BTreeSet::from([vg.identity()]);
            for _ in 0..2 * l {
                let next: BTreeSet<i64> = acc.iter().flat_map(|&a| gens.iter().map(move |&g| vg.mul(a, g))).collect();
                acc.extend(next);
            }
            (v, acc)
        })
        .collect()
}

/// `Φ(h₁⋯h_n) = φ_{v₁}(h₁)⋯φ_{v_n}(h_n)` from reduced forms, into the graph
/// product of `q` over the same finite graph.
pub fn graphproduct_lef_embed(
    graph: &Graph,
    h: &VertexGroup,
    q: &VertexGroup,
    f: &[HaloElem],
    phi: &BTreeMap<i64, BTreeMap<i64, i64>>,
) -> Result<LefEmbeddingResult> {
    if !graph.is_finite() {
        return Err(invalid("the graph must be finite; project an infinite one to a window first"));
    }
    let dom = HaloGroup::new(HaloKind::GraphProduct(h.clone()), graph.clone());
    let cod = HaloGroup::new(HaloKind::GraphProduct(q.clone()), graph.clone());
    let mut words = Vec::with_capacity(f.len());
    for x in f {
        dom.validate(x)?;
        let HaloElem::Word(w) = x else { return Err(invalid("graph product elements are words")) };
        words.push(graphword::canonical(graph, h, w));
    }
    let f_v = local_sets(h, &words);
    let mut defined = CheckReport::new("each phi_v is defined on F_v'");
    for (v, set) in &f_v {
        let pv = phi.get(v).ok_or_else(|| Error::Precondition(format!("no local embedding at vertex {v}")))?;
        if let Some(k) = set.iter().find(|k| !pv.contains_key(k)) {
            return Err(Error::Precondition(format!("phi_{v} is not defined at {} in F_{v}'", h.render(*k))));
        }
        defined.note(format!("|F_{v}'| = {}", set.len()));
    }
    let mut local = CheckReport::new("each phi_v is an injective partial homomorphism on F_v'");
    for (v, set) in &f_v {
        let pv = &phi[v];
        let mut seen = BTreeMap::new();
        for &a in set {
            if let Some(prev) = seen.insert(pv[&a], a) {
                local.violation(format!("phi_{v} identifies {} and {}", h.render(prev), h.render(a)));
            }
            for &b in set {
                let ab = h.mul(a, b);
                if set.contains(&ab) && pv[&ab] != q.mul(pv[&a], pv[&b]) {
                    local.violation(format!("phi_{v}({}) differs from the product of images", h.render(ab)));
                }
            }
        }
    }
    let mut table = BTreeMap::new();
    for w in &words {
        let image: Vec<Syllable> = w.iter().map(|&(v, k)| (v, phi[&v][&k])).collect();
        table.insert(HaloElem::Word(w.clone()), HaloElem::Word(graphword::canonical(graph, q, &image)));
    }
    let mut report = CheckReport::new("LEF embedding of a graph product");
    report.push_child(defined);
    report.push_child(local);
    report.push_child(check_local_embedding(&dom, &cod, &table));
    Ok(LefEmbeddingResult { target: cod.describe(), images: images(&dom, &cod, &table), report })
}
