//! Halo functors: groups `L(X)` of finitely supported objects over a space
//! `X`, induced monomorphisms along injections, and the induced actions that
//! make up halo products.
//!
//! Points are integers. Every element carries a finite support, so infinite
//! spaces such as `Z` need no explicit window.

pub mod graphword;
pub mod linear;
pub mod vertex;

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{invalid, Result};
use crate::graph::{check_induced_embedding, Graph};
use crate::group::{generated_subgroup, AutAction, Group, PointAction};
use crate::perm::Perm;
use crate::report::CheckReport;
use crate::rng::Rng;

pub use graphword::Syllable;
pub use linear::FinitaryLinearMap;
pub use vertex::VertexGroup;

#[derive(Clone, Debug, PartialEq)]
pub enum HaloKind {
    /// Finitely supported permutations.
    Sym,
    /// Finitely supported even permutations.
    Alt,
    /// `⊕_X H`.
    DirectSum(VertexGroup),
    /// Graph product of copies of `H` over the space's graph.
    GraphProduct(VertexGroup),
    /// Finitary `GL(X, Z/m)`.
    Glf(i64),
}

impl HaloKind {
    pub fn describe(&self) -> String {
        match self {
            HaloKind::Sym => "Sym_f".into(),
            HaloKind::Alt => "Alt_f".into(),
            HaloKind::DirectSum(h) => format!("directsum({})", h.describe()),
            HaloKind::GraphProduct(h) => format!("graphproduct({})", h.describe()),
            HaloKind::Glf(m) => format!("GL_f(Z/{m})"),
        }
    }

    fn uses_graph(&self) -> bool {
        matches!(self, HaloKind::GraphProduct(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HaloElem {
    /// Moved points only.
    Perm(BTreeMap<i64, i64>),
    /// Non-identity coordinates only.
    Sum(BTreeMap<i64, i64>),
    /// Shuffle-canonical reduced word.
    Word(Vec<Syllable>),
    Linear(FinitaryLinearMap),
}

impl HaloElem {
    pub fn support(&self) -> BTreeSet<i64> {
        match self {
            HaloElem::Perm(m) | HaloElem::Sum(m) => m.keys().copied().collect(),
            HaloElem::Word(w) => w.iter().map(|s| s.0).collect(),
            HaloElem::Linear(a) => a.support.iter().copied().collect(),
        }
    }

    pub fn perm_from_cycles(cycles: &[&[i64]]) -> HaloElem {
        let mut m = BTreeMap::new();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                m.insert(x, c[(i + 1) % c.len()]);
            }
        }
        m.retain(|k, v| k != v);
        HaloElem::Perm(m)
    }

    pub fn unit(x: i64, h: i64) -> HaloElem {
        HaloElem::Sum(BTreeMap::from([(x, h)]))
    }
}

/// `L(X)` for a halo kind and a space `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct HaloGroup {
    pub kind: HaloKind,
    pub space: Graph,
}

impl HaloGroup {
    pub fn new(kind: HaloKind, space: Graph) -> Self {
        HaloGroup { kind, space }
    }

    /// The same functor applied to another space.
    pub fn on(&self, space: Graph) -> Self {
        HaloGroup { kind: self.kind.clone(), space }
    }

    fn vertex_group(&self) -> Option<&VertexGroup> {
        match &self.kind {
            HaloKind::DirectSum(h) | HaloKind::GraphProduct(h) => Some(h),
            _ => None,
        }
    }

    pub fn validate(&self, h: &HaloElem) -> Result<()> {
        if let Some(x) = h.support().into_iter().find(|x| !self.space.contains(*x)) {
            return Err(invalid(format!("support point {x} is outside {}", self.space.describe())));
        }
        match (&self.kind, h) {
            (HaloKind::Sym | HaloKind::Alt, HaloElem::Perm(m)) => {
                let img: BTreeSet<i64> = m.values().copied().collect();
                if img != m.keys().copied().collect() || m.iter().any(|(k, v)| k == v) {
                    return Err(invalid("not a normalized finitary permutation"));
                }
                if self.kind == HaloKind::Alt && !perm_is_even(m) {
                    return Err(invalid("odd permutation in an alternating group"));
                }
                Ok(())
            }
            (HaloKind::DirectSum(g), HaloElem::Sum(m)) => {
                if m.values().any(|&v| !g.contains(v) || g.is_identity(v)) {
                    return Err(invalid("coordinate outside the vertex group or trivial"));
                }
                Ok(())
            }
            (HaloKind::GraphProduct(g), HaloElem::Word(w)) => {
                if w.iter().any(|&(_, k)| !g.contains(k)) || graphword::canonical(&self.space, g, w) != *w {
                    return Err(invalid("word is not in canonical form"));
                }
                Ok(())
            }
            (HaloKind::Glf(m), HaloElem::Linear(a)) if a.m == *m => Ok(()),
            _ => Err(invalid(format!("element does not belong to {}", self.describe()))),
        }
    }

    /// `h` moved along an injection of points. For graph kinds the injection
    /// is assumed to preserve adjacency on the support; the result is
    /// recanonicalized in `target`.
    pub fn transport_into(&self, h: &HaloElem, f: impl Fn(i64) -> i64, target: &HaloGroup) -> HaloElem {
        match h {
            HaloElem::Perm(m) => HaloElem::Perm(m.iter().map(|(k, v)| (f(*k), f(*v))).collect()),
            HaloElem::Sum(m) => HaloElem::Sum(m.iter().map(|(k, v)| (f(*k), *v)).collect()),
            HaloElem::Word(w) => {
                let vg = target.vertex_group().expect("graph kind");
                let moved: Vec<Syllable> = w.iter().map(|&(v, k)| (f(v), k)).collect();
                HaloElem::Word(graphword::canonical(&target.space, vg, &moved))
            }
            HaloElem::Linear(a) => HaloElem::Linear(a.rename(f)),
        }
    }

    /// Induced automorphism of a point bijection of this space.
    pub fn transport(&self, h: &HaloElem, f: impl Fn(i64) -> i64) -> HaloElem {
        self.transport_into(h, f, self)
    }

    /// The monomorphism `L(Y) → L(target)` induced by `map : Y ↪ target`
    /// (an induced-subgraph embedding for graph kinds), applied to `h`.
    pub fn push_forward(&self, h: &HaloElem, map: &BTreeMap<i64, i64>, target: &HaloGroup) -> Result<HaloElem> {
        let supp = h.support();
        if let Some(x) = supp.iter().find(|x| !map.contains_key(x)) {
            return Err(invalid(format!("support point {x} is outside the domain of the inclusion")));
        }
        if self.kind.uses_graph() {
            let dom: BTreeMap<i64, i64> = map.clone();
            check_induced_embedding(&self.space, &target.space, &dom).map_err(|e| invalid(format!("not an induced subgraph: {e}")))?;
        } else if map.values().collect::<BTreeSet<_>>().len() != map.len() {
            return Err(invalid("inclusion is not injective"));
        }
        Ok(self.transport_into(h, |x| map[&x], target))
    }

    /// `h ∈ L(Y)` for `Y ⊆ X`: the element lies in the image of the induced
    /// inclusion, decided by its support.
    pub fn member_of(&self, h: &HaloElem, y: &BTreeSet<i64>) -> bool {
        h.support().is_subset(y)
    }

    /// Standard generators of `L(X)` for finite `X`.
    pub fn generators(&self) -> Result<Vec<HaloElem>> {
        let pts: Vec<i64> = self.space.vertices.as_ref().ok_or_else(|| invalid("generators need a finite space"))?.iter().copied().collect();
        Ok(match &self.kind {
            HaloKind::Sym => pts.windows(2).map(|w| HaloElem::perm_from_cycles(&[&[w[0], w[1]]])).collect(),
            HaloKind::Alt => (2..pts.len()).map(|i| HaloElem::perm_from_cycles(&[&[pts[0], pts[1], pts[i]]])).collect(),
            HaloKind::DirectSum(g) => pts.iter().flat_map(|&x| g.generators().into_iter().map(move |k| HaloElem::unit(x, k))).collect(),
            HaloKind::GraphProduct(g) => pts.iter().flat_map(|&x| g.generators().into_iter().map(move |k| HaloElem::Word(vec![(x, k)]))).collect(),
            HaloKind::Glf(m) => {
                let mut out = Vec::new();
                for &x in &pts {
                    for &y in &pts {
                        if x != y {
                            out.push(HaloElem::Linear(FinitaryLinearMap::transvection(*m, x, y, 1)?));
                        }
                    }
                    for l in 2..*m {
                        if linear::is_unit(l, *m) {
                            out.push(HaloElem::Linear(FinitaryLinearMap::diagonal(*m, x, l)?));
                        }
                    }
                }
                out
            }
        })
    }

    /// Every element of `L(X)` for finite `X`, as the closure of the
    /// generators (at most `cap` elements).
    pub fn elements(&self, cap: usize) -> Result<Vec<HaloElem>> {
        generated_subgroup(self, &self.generators()?, cap)
    }

    /// A product of `len` random generators and their inverses.
    pub fn random_element(&self, len: usize, rng: &mut Rng) -> Result<HaloElem> {
        let gens = self.generators()?;
        let mut acc = self.identity();
        for _ in 0..len {
            let Some(g) = gens.choose(rng) else { break };
            let g = if rng.gen_bool(0.5) { self.inv(g) } else { g.clone() };
            acc = self.mul(&acc, &g);
        }
        Ok(acc)
    }
}

fn perm_is_even(m: &BTreeMap<i64, i64>) -> bool {
    let mut seen = BTreeSet::new();
    let mut transpositions = 0;
    for &start in m.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while seen.insert(x) {
            len += 1;
            x = m[&x];
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn render_perm(m: &BTreeMap<i64, i64>) -> String {
    if m.is_empty() {
        return "()".into();
    }
    let mut seen = BTreeSet::new();
    let mut out = String::new();
    for &start in m.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut cyc = vec![start];
        let mut x = m[&start];
        while x != start {
            seen.insert(x);
            cyc.push(x);
            x = m[&x];
        }
        out.push_str(&format!("({})", cyc.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")));
    }
    out
}

impl Group for HaloGroup {
    type Elem = HaloElem;

    fn describe(&self) -> String {
        format!("{}({})", self.kind.describe(), self.space.describe())
    }

    fn identity(&self) -> HaloElem {
        match &self.kind {
            HaloKind::Sym | HaloKind::Alt => HaloElem::Perm(BTreeMap::new()),
            HaloKind::DirectSum(_) => HaloElem::Sum(BTreeMap::new()),
            HaloKind::GraphProduct(_) => HaloElem::Word(Vec::new()),
            HaloKind::Glf(m) => HaloElem::Linear(FinitaryLinearMap::identity(*m)),
        }
    }

    /// `a ∘ b`, `b` applied first.
    fn mul(&self, a: &HaloElem, b: &HaloElem) -> HaloElem {
        match (a, b) {
            (HaloElem::Perm(p), HaloElem::Perm(q)) => {
                let keys: BTreeSet<i64> = p.keys().chain(q.keys()).copied().collect();
                let mut out = BTreeMap::new();
                for x in keys {
                    let y = q.get(&x).copied().unwrap_or(x);
                    let z = p.get(&y).copied().unwrap_or(y);
                    if z != x {
                        out.insert(x, z);
                    }
                }
                HaloElem::Perm(out)
            }
            (HaloElem::Sum(p), HaloElem::Sum(q)) => {
                let g = self.vertex_group().expect("direct sum");
                let mut out = p.clone();
                for (&x, &k) in q {
                    let v = g.mul(out.get(&x).copied().unwrap_or(g.identity()), k);
                    if g.is_identity(v) {
                        out.remove(&x);
                    } else {
                        out.insert(x, v);
                    }
                }
                HaloElem::Sum(out)
            }
            (HaloElem::Word(p), HaloElem::Word(q)) => {
                let g = self.vertex_group().expect("graph product");
                let w: Vec<Syllable> = p.iter().chain(q).copied().collect();
                HaloElem::Word(graphword::canonical(&self.space, g, &w))
            }
            (HaloElem::Linear(p), HaloElem::Linear(q)) => HaloElem::Linear(p.mul(q)),
            _ => panic!("mixed halo elements"),
        }
    }

    fn inv(&self, a: &HaloElem) -> HaloElem {
        match a {
            HaloElem::Perm(p) => HaloElem::Perm(p.iter().map(|(k, v)| (*v, *k)).collect()),
            HaloElem::Sum(p) => {
                let g = self.vertex_group().expect("direct sum");
                HaloElem::Sum(p.iter().map(|(k, v)| (*k, g.inv(*v))).collect())
            }
            HaloElem::Word(w) => {
                let g = self.vertex_group().expect("graph product");
                HaloElem::Word(graphword::canonical(&self.space, g, &graphword::inverse(g, w)))
            }
            HaloElem::Linear(p) => HaloElem::Linear(p.inv()),
        }
    }

    fn render(&self, a: &HaloElem) -> String {
        match a {
            HaloElem::Perm(p) => render_perm(p),
            HaloElem::Sum(p) => {
                let g = self.vertex_group().expect("direct sum");
                format!("{{{}}}", p.iter().map(|(k, v)| format!("{k}:{}", g.render(*v))).collect::<Vec<_>>().join(", "))
            }
            HaloElem::Word(w) => graphword::render(w, self.vertex_group().expect("graph product"), |v| v.to_string()),
            HaloElem::Linear(p) => p.render(),
        }
    }
}

/// The action of `Γ` on `L(X)` induced by a point action `Γ ↷ X`.
#[derive(Clone, Debug)]
pub struct HaloAction<P: PointAction> {
    pub points: P,
    pub halo: HaloGroup,
}

impl<P: PointAction> AutAction for HaloAction<P> {
    type Gamma = P::G;
    type Delta = HaloGroup;

    fn gamma(&self) -> &P::G {
        self.points.group()
    }
    fn delta(&self) -> &HaloGroup {
        &self.halo
    }
    fn act(&self, g: &<P::G as Group>::Elem, h: &HaloElem) -> HaloElem {
        self.halo.transport(h, |x| self.points.act(g, x))
    }
}

/// Functoriality, triviality of `L(∅)`, finite generation, and the
/// intersection property `L(Y ∩ Z) = L(Y) ∩ L(Z)` on a finite space.
///
/// When `L(Y)` can be enumerated within `cap` the intersection property is
/// checked exactly on images of the induced inclusions; otherwise on `samples`
/// random elements by support.
pub fn check_halo_axioms(halo: &HaloGroup, samples: usize, cap: usize, rng: &mut Rng) -> CheckReport {
    let mut top = CheckReport::new(format!("halo axioms for {}", halo.describe()));
    let Some(points) = halo.space.vertices.clone() else {
        return top.fail("the space must be finite");
    };
    let pts: Vec<i64> = points.iter().copied().collect();
    let subsets: Vec<BTreeSet<i64>> = if pts.len() <= 5 {
        (0..1u32 << pts.len()).map(|mask| pts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect()).collect()
    } else {
        (0..32).map(|_| pts.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()).collect()
    };
    let sub = |y: &BTreeSet<i64>| -> Result<HaloGroup> { Ok(halo.on(halo.space.induced(y)?)) };

    // (i) induced maps: homomorphic, injective, composing.
    let mut func = CheckReport::new("(i) induced maps are injective homomorphisms and compose");
    for _ in 0..samples {
        let y = subsets.choose(rng).expect("nonempty").clone();
        let result = (|| -> Result<Option<String>> {
            let ly = sub(&y)?;
            let a = ly.random_element(4, rng)?;
            let b = ly.random_element(4, rng)?;
            // A random injection Y → X, or the inclusion for graph kinds.
            let mut images = pts.clone();
            if !halo.kind.uses_graph() {
                images.shuffle(rng);
            } else {
                images = y.iter().copied().collect();
            }
            let f: BTreeMap<i64, i64> = y.iter().copied().zip(images.iter().copied()).collect();
            let fab = halo.push_forward(&ly.mul(&a, &b), &f, halo)?;
            let fa_fb = halo.mul(&halo.push_forward(&a, &f, halo)?, &halo.push_forward(&b, &f, halo)?);
            if fab != fa_fb {
                return Ok(Some(format!("not multiplicative on {} and {}", ly.render(&a), ly.render(&b))));
            }
            if a != b && halo.push_forward(&a, &f, halo)? == halo.push_forward(&b, &f, halo)? {
                return Ok(Some(format!("{} and {} collide", ly.render(&a), ly.render(&b))));
            }
            // Compose with a relabelling of X onto itself.
            if !halo.kind.uses_graph() {
                let mut perm = pts.clone();
                perm.shuffle(rng);
                let g: BTreeMap<i64, i64> = pts.iter().copied().zip(perm).collect();
                let gf: BTreeMap<i64, i64> = f.iter().map(|(k, v)| (*k, g[v])).collect();
                let two_step = halo.push_forward(&halo.push_forward(&a, &f, halo)?, &g, halo)?;
                if two_step != halo.push_forward(&a, &gf, halo)? {
                    return Ok(Some(format!("composition fails on {}", ly.render(&a))));
                }
            }
            Ok(None)
        })();
        match result {
            Ok(None) => {}
            Ok(Some(msg)) => func.violation(msg),
            Err(e) => func.violation(e.to_string()),
        }
    }
    top.push_child(func);

    // (ii) L(∅) = 1; L(X) generated by point-supported pieces.
    let mut gen = CheckReport::new("(ii) L(empty) is trivial and L(X) is generated by point-supported elements");
    match sub(&BTreeSet::new()).and_then(|g| g.elements(cap)) {
        Ok(e) if e.len() == 1 => {}
        Ok(e) => gen.violation(format!("L(empty) has {} elements", e.len())),
        Err(e) => gen.violation(e.to_string()),
    }
    match halo.generators() {
        Ok(gens) => {
            if let Some(g) = gens.iter().find(|g| g.support().len() > 3) {
                gen.violation(format!("generator {} is not point-supported", halo.render(g)));
            }
        }
        Err(e) => gen.violation(e.to_string()),
    }
    top.push_child(gen);

    // (iii) intersections.
    let mut inter = CheckReport::new("(iii) L(Y cap Z) = L(Y) cap L(Z)");
    let images = |y: &BTreeSet<i64>| -> Result<BTreeSet<HaloElem>> {
        let id: BTreeMap<i64, i64> = y.iter().map(|&p| (p, p)).collect();
        let ly = sub(y)?;
        ly.elements(cap)?.iter().map(|h| ly.push_forward(h, &id, halo)).collect()
    };
    let exact = halo.elements(cap).is_ok();
    if exact {
        let mut cache: BTreeMap<BTreeSet<i64>, BTreeSet<HaloElem>> = BTreeMap::new();
        let mut get = |y: &BTreeSet<i64>| -> Result<BTreeSet<HaloElem>> {
            if let Some(v) = cache.get(y) {
                return Ok(v.clone());
            }
            let v = images(y)?;
            cache.insert(y.clone(), v.clone());
            Ok(v)
        };
        'outer: for y in &subsets {
            for z in &subsets {
                let yz: BTreeSet<i64> = y.intersection(z).copied().collect();
                match (get(y), get(z), get(&yz)) {
                    (Ok(ly), Ok(lz), Ok(lyz)) => {
                        let both: BTreeSet<HaloElem> = ly.intersection(&lz).cloned().collect();
                        if both != lyz {
                            inter.violation(format!("Y = {y:?}, Z = {z:?}: {} vs {} elements", both.len(), lyz.len()));
                        }
                    }
                    (a, b, c) => {
                        let err = [a.err(), b.err(), c.err()].into_iter().flatten().next().expect("one failed");
                        inter.violation(err.to_string());
                        break 'outer;
                    }
                }
            }
        }
        inter.note("exact: every L(Y) enumerated");
    } else {
        for _ in 0..samples {
            let y = subsets.choose(rng).expect("nonempty");
            let z = subsets.choose(rng).expect("nonempty");
            let yz: BTreeSet<i64> = y.intersection(z).copied().collect();
            let h = match sub(&yz).and_then(|l| l.random_element(6, rng)) {
                Ok(h) => h,
                Err(e) => {
                    inter.violation(e.to_string());
                    break;
                }
            };
            // Elements built inside Y ∩ Z lie in both; elements of Y outside Z do not.
            if !(halo.member_of(&h, y) && halo.member_of(&h, z) && halo.member_of(&h, &yz)) {
                inter.violation(format!("{} built in Y cap Z escapes it", halo.render(&h)));
            }
            let hy = sub(y).and_then(|l| l.random_element(6, rng));
            if let Ok(hy) = hy {
                if halo.member_of(&hy, z) != halo.member_of(&hy, &yz) {
                    inter.violation(format!("{} is in L(Y) cap L(Z) but not L(Y cap Z)", halo.render(&hy)));
                }
            }
        }
        inter.note("sampled: membership decided by support");
    }
    top.push_child(inter);
    top
}

/// `support(α̂(g)h) = α(g)(support(h))` on the given elements.
pub fn check_support_equivariance<P: PointAction>(action: &HaloAction<P>, gs: &[<P::G as Group>::Elem], hs: &[HaloElem]) -> CheckReport {
    let mut r = CheckReport::new("support(g.h) = g.support(h)");
    for g in gs {
        for h in hs {
            let lhs = action.act(g, h).support();
            let rhs: BTreeSet<i64> = h.support().into_iter().map(|x| action.points.act(g, x)).collect();
            if lhs != rhs {
                r.violation(format!("g = {}, h = {}", action.gamma().render(g), action.halo.render(h)));
            }
        }
    }
    r
}

/// The finitary permutation of `Y` given by a permutation of sorted indices.
pub fn perm_on_points(points: &[i64], p: &Perm) -> HaloElem {
    let mut m = BTreeMap::new();
    for (i, &x) in points.iter().enumerate() {
        let y = points[p.apply(i)];
        if x != y {
            m.insert(x, y);
        }
    }
    HaloElem::Perm(m)
}

/// Over a complete graph on `n` vertices, sending a reduced word to its
/// coordinate vector is a bijection onto the direct sum and a homomorphism.
pub fn check_complete_graph_bijection(n: usize, vg: &VertexGroup, cap: usize) -> Result<CheckReport> {
    let space = Graph::complete(n as i64);
    let gp = HaloGroup::new(HaloKind::GraphProduct(vg.clone()), space.clone());
    let ds = HaloGroup::new(HaloKind::DirectSum(vg.clone()), space);
    let to_sum = |x: &HaloElem| -> HaloElem {
        let HaloElem::Word(w) = x else { unreachable!("graph product elements are words") };
        let mut coords = BTreeMap::new();
        for &(v, h) in w {
            let c = coords.entry(v).or_insert(vg.identity());
            *c = vg.mul(*c, h);
        }
        coords.retain(|_, c| !vg.is_identity(*c));
        HaloElem::Sum(coords)
    };
    let words = gp.elements(cap)?;
    let sums = ds.elements(cap)?;
    let mut r = CheckReport::new(format!("graph product over K_{n} matches the direct sum of {}", vg.describe()));
    let image: BTreeSet<HaloElem> = words.iter().map(to_sum).collect();
    if image.len() != words.len() {
        r.violation(format!("{} words map to {} vectors", words.len(), image.len()));
    }
    if image != sums.iter().cloned().collect() {
        r.violation(format!("image has {} vectors, direct sum has {}", image.len(), sums.len()));
    }
    for a in &words {
        for b in &words {
            if to_sum(&gp.mul(a, b)) != ds.mul(&to_sum(a), &to_sum(b)) {
                r.violation(format!("not multiplicative at {} * {}", gp.render(a), gp.render(b)));
            }
        }
    }
    r.note(format!("{} elements", words.len()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CyclicShift, IntShift, Semidirect};
    use crate::rng::seeded;

    #[test]
    fn object_orders() {
        let sym3 = HaloGroup::new(HaloKind::Sym, Graph::range(3));
        assert_eq!(sym3.elements(100).unwrap().len(), 6);
        let alt4 = HaloGroup::new(HaloKind::Alt, Graph::range(4));
        assert_eq!(alt4.elements(100).unwrap().len(), 12);
        let sum = HaloGroup::new(HaloKind::DirectSum(VertexGroup::Cyclic(2)), Graph::range(4));
        assert_eq!(sum.elements(100).unwrap().len(), 16);
        let gp = HaloGroup::new(HaloKind::GraphProduct(VertexGroup::Cyclic(2)), Graph::complete(3));
        let elems = gp.elements(100).unwrap();
        assert_eq!(elems.len(), 8);
        assert!(elems.iter().all(|a| elems.iter().all(|b| gp.mul(a, b) == gp.mul(b, a))));
        let gl = HaloGroup::new(HaloKind::Glf(2), Graph::range(3));
        assert_eq!(gl.elements(1000).unwrap().len(), 168);
        let gl = HaloGroup::new(HaloKind::Glf(4), Graph::range(2));
        assert_eq!(gl.elements(1000).unwrap().len(), 96);
        // Free product Z/2 * Z/2 is infinite.
        let free = HaloGroup::new(HaloKind::GraphProduct(VertexGroup::Cyclic(2)), Graph::range(2));
        assert!(free.elements(100).is_err());
    }

    #[test]
    fn induced_monomorphism_examples() {
        let sym2 = HaloGroup::new(HaloKind::Sym, Graph::set([1, 2]));
        let sym3 = HaloGroup::new(HaloKind::Sym, Graph::set([1, 2, 3]));
        let t = HaloElem::perm_from_cycles(&[&[1, 2]]);
        let incl = BTreeMap::from([(1, 1), (2, 2)]);
        assert_eq!(sym2.push_forward(&t, &incl, &sym3).unwrap(), t);
        let p2 = HaloGroup::new(HaloKind::GraphProduct(VertexGroup::Cyclic(2)), Graph::path(2));
        let p3 = p2.on(Graph::path(3));
        let w = HaloElem::Word(vec![(0, 1), (1, 1)]);
        assert_eq!(p2.push_forward(&w, &incl_of(&[0, 1]), &p3).unwrap(), w);
        // {0, 2} is not an induced copy of the edge 0 - 1.
        assert!(p2.push_forward(&w, &BTreeMap::from([(0, 0), (1, 2)]), &p3).is_err());
    }

    fn incl_of(pts: &[i64]) -> BTreeMap<i64, i64> {
        pts.iter().map(|&p| (p, p)).collect()
    }

    #[test]
    fn induced_automorphism_examples() {
        let act = HaloAction { points: CyclicShift::new(5), halo: HaloGroup::new(HaloKind::Sym, Graph::range(5)) };
        let t = HaloElem::perm_from_cycles(&[&[0, 1]]);
        assert_eq!(act.act(&0, &t), t);
        assert_eq!(act.act(&1, &t), HaloElem::perm_from_cycles(&[&[1, 2]]));
        let gl = HaloAction { points: IntShift, halo: HaloGroup::new(HaloKind::Glf(5), Graph::integers()) };
        let e = HaloElem::Linear(FinitaryLinearMap::transvection(5, 2, 7, 3).unwrap());
        assert_eq!(gl.act(&1, &e), HaloElem::Linear(FinitaryLinearMap::transvection(5, 3, 8, 3).unwrap()));
    }

    #[test]
    fn halo_product_arithmetic() {
        let s = Semidirect::new(HaloAction { points: CyclicShift::new(4), halo: HaloGroup::new(HaloKind::Sym, Graph::range(4)) });
        let t = HaloElem::perm_from_cycles(&[&[0, 1]]);
        let x = (t.clone(), 1);
        let expected = s.action.halo.mul(&t, &HaloElem::perm_from_cycles(&[&[1, 2]]));
        assert_eq!(s.mul(&x, &x), (expected, 2));
        assert_eq!(s.mul(&s.identity(), &x), x);
        assert_eq!(s.mul(&x, &s.inv(&x)), s.identity());
    }

    #[test]
    fn axioms_hold_for_every_kind() {
        let mut rng = seeded(1, 0);
        for kind in
            [HaloKind::Sym, HaloKind::Alt, HaloKind::DirectSum(VertexGroup::Cyclic(2)), HaloKind::DirectSum(VertexGroup::Cyclic(3)), HaloKind::Glf(2)]
        {
            let r = check_halo_axioms(&HaloGroup::new(kind, Graph::range(4)), 30, 1 << 14, &mut rng);
            assert!(r.passed(), "{}", r.to_text());
        }
        let gp = HaloGroup::new(HaloKind::GraphProduct(VertexGroup::Cyclic(2)), Graph::path(3));
        let r = check_halo_axioms(&gp, 50, 1000, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.children[2].notes[0].starts_with("sampled"));
    }

    #[test]
    fn support_equivariance_under_shift() {
        let mut rng = seeded(2, 0);
        for kind in [HaloKind::Sym, HaloKind::DirectSum(VertexGroup::Cyclic(2)), HaloKind::Glf(3), HaloKind::GraphProduct(VertexGroup::Cyclic(3))] {
            let space = if kind.uses_graph() { Graph::integer_path() } else { Graph::integers() };
            let act = HaloAction { points: IntShift, halo: HaloGroup::new(kind.clone(), space.clone()) };
            let window = act.halo.on(if kind.uses_graph() { Graph::path(5) } else { Graph::range(5) });
            let hs: Vec<HaloElem> = (0..10).map(|_| window.random_element(5, &mut rng).unwrap()).collect();
            assert!(check_support_equivariance(&act, &[-3, 0, 2, 11], &hs).passed());
        }
    }

    #[test]
    fn alternating_membership() {
        let alt = HaloGroup::new(HaloKind::Alt, Graph::range(4));
        assert!(alt.validate(&HaloElem::perm_from_cycles(&[&[0, 1, 2]])).is_ok());
        assert!(alt.validate(&HaloElem::perm_from_cycles(&[&[0, 1]])).is_err());
        assert!(alt.validate(&HaloElem::perm_from_cycles(&[&[0, 9, 2]])).is_err());
    }

    #[test]
    fn complete_graph_products_are_direct_sums() {
        for n in 1..=3 {
            for m in 1..=3 {
                let r = check_complete_graph_bijection(n, &VertexGroup::Cyclic(m), 1000).unwrap();
                assert!(r.passed(), "{}", r.to_text());
                assert_eq!(r.notes[0], format!("{} elements", (m as usize).pow(n as u32)));
            }
        }
    }
}
