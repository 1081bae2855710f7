//! Constructions: support refinement, LEF witnesses to orbit approximations,
//! Følner boxes to automorphic approximations, and lifts through halos.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::approx::measure_defects;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::group::{generated_subgroup, AutAction, Group, Integers, Lattice, PointAction, Symmetric};
use crate::halo::{HaloAction, HaloElem, HaloGroup};
use crate::perm::Perm;
use crate::rational::Rational;
use crate::report::CheckReport;
use crate::rng::Rng;

use super::{sym_map, ActionFragment, AutomorphicApproximation, ClefWitness, DeltaOf, GammaOf, LefActionWitness, OrbitApproximation, PointElem};

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `S₀ = S ∩ ⋂_{g∈F} φ(g)⁻¹(S)`.
///
/// Requires `|S| > (1 − ε/(|F|+1))|A|`, which forces `|S₀| > (1 − ε)|A|`.
pub fn refine_support<K: Ord + Debug>(phi: &BTreeMap<K, Perm>, f: &[K], s: &BTreeSet<usize>, n: usize, eps: &Rational) -> Result<BTreeSet<usize>> {
    let k = int(f.len() + 1);
    let bound = (int(1) - eps / &k) * int(n);
    if int(s.len()) <= bound {
        return Err(Error::Precondition(format!("|S| = {} is not above (1 - {eps}/{k})|A| = {bound}", s.len())));
    }
    let mut perms = Vec::with_capacity(f.len());
    for g in f {
        let p = phi.get(g).ok_or_else(|| invalid(format!("phi({g:?}) is missing")))?;
        if p.degree() != n {
            return Err(invalid(format!("phi({g:?}) has degree {} but |A| = {n}", p.degree())));
        }
        perms.push(p);
    }
    Ok(s.iter().copied().filter(|&a| perms.iter().all(|p| s.contains(&p.apply(a)))).collect())
}

/// Both guarantees of a refinement, checked from scratch.
pub fn check_refinement<K: Ord + Debug>(
    phi: &BTreeMap<K, Perm>,
    f: &[K],
    s: &BTreeSet<usize>,
    s0: &BTreeSet<usize>,
    n: usize,
    eps: &Rational,
) -> CheckReport {
    let mut r = CheckReport::new("refined support");
    if !s0.is_subset(s) {
        r.violation("S0 is not contained in S");
    }
    if int(s0.len()) <= (int(1) - eps) * int(n) {
        r.violation(format!("|S0| = {} is not above (1 - {eps})|A| with |A| = {n}", s0.len()));
    }
    for g in f {
        let Some(p) = phi.get(g) else {
            r.violation(format!("phi({g:?}) is missing"));
            continue;
        };
        for &a in s0 {
            if !s.contains(&p.apply(a)) {
                r.violation(format!("phi({g:?}) sends {a} outside S"));
            }
        }
    }
    r
}

/// Random refinement instances: `|A| ≤ max_points`, `|F| ≤ 4`, `ε` in
/// tenths, and `S` as small as the precondition allows. Every instance is
/// refined and then rechecked.
pub fn refinement_suite(instances: usize, max_points: usize, rng: &mut Rng) -> CheckReport {
    let mut r = CheckReport::new(format!("support refinement on {instances} random instances"));
    let mut smallest: Option<(usize, usize)> = None;
    for i in 0..instances {
        let n = rng.gen_range(1..=max_points.max(1));
        let fsize = rng.gen_range(1..=4usize);
        let phi: BTreeMap<usize, Perm> = (0..fsize)
            .map(|g| {
                let mut imgs: Vec<u32> = (0..n as u32).collect();
                imgs.shuffle(rng);
                (g, Perm::from_images(imgs).expect("a shuffled identity is a permutation"))
            })
            .collect();
        let f: Vec<usize> = (0..fsize).collect();
        let eps = Rational::new(BigInt::from(rng.gen_range(1..=9)), BigInt::from(10));
        // Largest m with m(|F|+1) < ε|A|.
        let mut removable = 0;
        while int((removable + 1) * (fsize + 1)) < &eps * int(n) {
            removable += 1;
        }
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(rng);
        let s: BTreeSet<usize> = pts[rng.gen_range(0..=removable)..].iter().copied().collect();
        match refine_support(&phi, &f, &s, n, &eps) {
            Ok(s0) => {
                let c = check_refinement(&phi, &f, &s, &s0, n, &eps);
                if !c.passed() {
                    r.violation(format!("instance {i} (|A| = {n}, |F| = {fsize}, eps = {eps}): {}", c.violations.join("; ")));
                }
                if smallest.is_none_or(|(a, b)| s0.len() * b < a * n) {
                    smallest = Some((s0.len(), n));
                }
            }
            Err(e) => {
                r.violation(format!("instance {i}: {e}"));
            }
        }
    }
    if let Some((k, n)) = smallest {
        r.note(format!("smallest surviving fraction {k}/{n}"));
    }
    r
}

/// `A = ⟨β̂(ρ(F))⟩ ≤ Sym(Y)` acting on itself by left translation,
/// `B = Y`, `π_a(x) = a⁻¹(π(x))`, `S = A`.
///
/// This is the subgroup-regular variant of the construction through all of
/// `Sym(Y)`: left translation on a subgroup is still exact and free.
pub fn lef_to_orbit_approx<P: PointAction, Q: PointAction>(
    frag: &ActionFragment<P>,
    w: &LefActionWitness<PointElem<P>, Q>,
    cap: usize,
) -> Result<OrbitApproximation<PointElem<P>>> {
    let ys: Vec<i64> = w.y.iter().copied().collect();
    let idx: BTreeMap<i64, u32> = ys.iter().enumerate().map(|(i, &y)| (y, i as u32)).collect();
    let sym = Symmetric { n: ys.len() };
    let beta_hat = |q: &PointElem<Q>| -> Result<Perm> {
        let images = ys
            .iter()
            .map(|&y| idx.get(&w.q.act(q, y)).copied().ok_or_else(|| invalid(format!("{} moves {y} outside Y", w.q.group().render(q)))))
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(images)
    };
    let mut images: BTreeMap<PointElem<P>, Perm> = BTreeMap::new();
    for g in &frag.f {
        let q = w.rho.get(g).ok_or_else(|| invalid(format!("rho({}) is missing", frag.action.group().render(g))))?;
        images.insert(g.clone(), beta_hat(q)?);
    }
    let gens: Vec<Perm> = images.values().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let a = generated_subgroup(&sym, &gens, cap)?;
    let a_idx: BTreeMap<&Perm, u32> = a.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let phi = images
        .iter()
        .map(|(g, b)| {
            let imgs = a.iter().map(|x| a_idx[&b.compose(x)]).collect();
            (g.clone(), Perm::from_images(imgs).expect("left translation is a bijection"))
        })
        .collect();
    let mut pi = BTreeMap::new();
    for (i, x) in a.iter().enumerate() {
        let xinv = x.inverse();
        let mut m = BTreeMap::new();
        for &z in &frag.z {
            let pz = w.pi.get(&z).ok_or_else(|| invalid(format!("pi({z}) is missing")))?;
            let j = *idx.get(pz).ok_or_else(|| invalid(format!("pi({z}) = {pz} is outside Y")))?;
            m.insert(z, ys[xinv.apply(j as usize)]);
        }
        pi.insert(i, m);
    }
    let b = w.y_graph.clone().unwrap_or_else(|| Graph::set(ys.iter().copied()));
    Ok(OrbitApproximation {
        a_labels: a.iter().map(|p| sym.render(p)).collect(),
        phi,
        s: (0..a.len()).collect(),
        e: frag.z.clone(),
        b,
        x_graph: frag.graph.clone(),
        pi,
        notes: vec![format!("subgroup-regular variant: A is the subgroup of Sym(Y) generated by beta(rho(F)), of order {}", a.len())],
    })
}

/// Groups whose elements are integer vectors: `Z` and `Z^d`.
pub trait BoxCoordinates: Group {
    fn dim(&self) -> usize;
    fn coords(&self, g: &Self::Elem) -> Vec<i64>;
    fn from_coords(&self, c: &[i64]) -> Self::Elem;
}

impl BoxCoordinates for Integers {
    fn dim(&self) -> usize {
        1
    }
    fn coords(&self, g: &i64) -> Vec<i64> {
        vec![*g]
    }
    fn from_coords(&self, c: &[i64]) -> i64 {
        c[0]
    }
}

impl BoxCoordinates for Lattice {
    fn dim(&self) -> usize {
        self.d
    }
    fn coords(&self, g: &Vec<i64>) -> Vec<i64> {
        g.clone()
    }
    fn from_coords(&self, c: &[i64]) -> Vec<i64> {
        c.to_vec()
    }
}

/// Smallest `N` with `|(A + g) \ A| < ε|A| / (2|F|)` for every `g ∈ F`,
/// where `A = [−N, N]^d`. Fails once `|A|` would exceed `cap`.
pub fn folner_radius(f: &[Vec<i64>], d: usize, eps: &Rational, cap: usize) -> Result<i64> {
    if *eps <= int(0) {
        return Err(invalid("epsilon must be positive"));
    }
    let nf = int(f.len().max(1) * 2);
    let mut n: i64 = 0;
    loop {
        let side = BigInt::from(2 * n + 1);
        let size = num_traits::pow(side.clone(), d);
        if size > BigInt::from(cap) {
            return Err(Error::CapExceeded { what: "Folner box".into(), needed: size.to_string(), cap: cap as u64 });
        }
        let ok = f.iter().all(|g| {
            let kept = g.iter().fold(BigInt::from(1), |acc, &c| acc * (&side - BigInt::from(c.abs())).max(BigInt::from(0)));
            let boundary = Rational::from_integer(&size - kept);
            boundary * &nf < eps * Rational::from_integer(size.clone())
        });
        if ok {
            return Ok(n);
        }
        n += 1;
    }
}

/// Følner-box approximation of an action of `Z^d` by automorphisms:
/// `φ(g)` translates the box where it can and is completed
/// lexicographically, `S` is the set of points kept inside by all of `F`,
/// and `π_s(h) = ψ(β(s)⁻¹[h])` for a local embedding `ψ` into `Λ`.
pub fn folner_automorphic_approx<A, L>(
    action: &A,
    f: &[GammaOf<A>],
    e: &[DeltaOf<A>],
    eps: &Rational,
    lambda: L,
    embed: impl Fn(&DeltaOf<A>) -> Option<L::Elem>,
    cap: usize,
) -> Result<AutomorphicApproximation<GammaOf<A>, DeltaOf<A>, L>>
where
    A: AutAction,
    A::Gamma: BoxCoordinates,
    L: Group,
{
    let gamma = action.gamma();
    let d = gamma.dim();
    let fc: Vec<Vec<i64>> = f.iter().map(|g| gamma.coords(g)).collect();
    let n = folner_radius(&fc, d, eps, cap)?;
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..d {
        points = points.into_iter().flat_map(|p| (-n..=n).map(move |c| [p.clone(), vec![c]].concat())).collect();
    }
    let idx: BTreeMap<&Vec<i64>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let shift = |p: &[i64], g: &[i64]| -> Vec<i64> { p.iter().zip(g).map(|(a, b)| a + b).collect() };

    let mut phi = BTreeMap::new();
    for (g, gc) in f.iter().zip(&fc) {
        let mut images: Vec<Option<usize>> = points.iter().map(|p| idx.get(&shift(p, gc)).copied()).collect();
        let used: BTreeSet<usize> = images.iter().flatten().copied().collect();
        let mut free = (0..points.len()).filter(|i| !used.contains(i));
        for slot in images.iter_mut().filter(|s| s.is_none()) {
            *slot = free.next();
        }
        let perm = Perm::from_images(images.into_iter().map(|i| i.expect("as many free images as holes") as u32).collect())?;
        phi.insert(g.clone(), perm);
    }
    let s: BTreeSet<usize> = (0..points.len()).filter(|&i| fc.iter().all(|g| idx.contains_key(&shift(&points[i], g)))).collect();

    let delta = action.delta();
    let mut pi = BTreeMap::new();
    for &i in &s {
        let sinv = gamma.inv(&gamma.from_coords(&points[i]));
        let mut m = BTreeMap::new();
        for h in e {
            let k = action.act(&sinv, h);
            let v = embed(&k).ok_or_else(|| invalid(format!("local embedding is undefined at {}", delta.render(&k))))?;
            m.insert(h.clone(), v);
        }
        pi.insert(i, m);
    }
    Ok(AutomorphicApproximation {
        a_labels: points.iter().map(|p| gamma.render(&gamma.from_coords(p))).collect(),
        phi,
        s,
        e: e.to_vec(),
        lambda,
        pi,
        notes: vec![format!("Folner box [-{n}, {n}]^{d} with {} points", points.len())],
    })
}

/// `π̂_s = L(π_s)` restricted to `E ⊆ L(Y)`, with `Λ = L(B)`; `A`, `φ` and `S`
/// are carried over unchanged.
pub fn lift_orbit_to_automorphic<Ge: Ord + Clone>(
    halo: &HaloGroup,
    orbit: &OrbitApproximation<Ge>,
    e: &[HaloElem],
) -> Result<AutomorphicApproximation<Ge, HaloElem, HaloGroup>> {
    if let Some(h) = e.iter().find(|h| !h.support().is_subset(&orbit.e)) {
        return Err(Error::Precondition(format!("{} is not supported in the orbit window", halo.render(h))));
    }
    let ly = halo.on(halo.space.induced(&orbit.e)?);
    let lb = halo.on(orbit.b.clone());
    let mut pi = BTreeMap::new();
    for &s in &orbit.s {
        let ps = orbit.pi.get(&s).ok_or_else(|| invalid(format!("pi_{s} is missing")))?;
        let m = e.iter().map(|h| Ok((h.clone(), ly.push_forward(h, ps, &lb)?))).collect::<Result<BTreeMap<_, _>>>()?;
        pi.insert(s, m);
    }
    let mut notes = orbit.notes.clone();
    notes.push(format!("lifted through {}", halo.kind.describe()));
    Ok(AutomorphicApproximation {
        a_labels: orbit.a_labels.clone(),
        phi: orbit.phi.clone(),
        s: orbit.s.clone(),
        e: e.to_vec(),
        lambda: lb,
        pi,
        notes,
    })
}

/// The lift keeps `A`, `S` and `φ`, hence its measured defects.
pub fn check_lift_consistency<G: Group, De: Ord, L: Group>(
    gamma: &G,
    orbit: &OrbitApproximation<G::Elem>,
    lifted: &AutomorphicApproximation<G::Elem, De, L>,
) -> CheckReport {
    let mut r = CheckReport::new("lift preserves A, S and the defects of phi");
    if orbit.a_labels != lifted.a_labels {
        r.violation("A changed");
    }
    if orbit.s != lifted.s {
        r.violation("S changed");
    }
    if orbit.phi != lifted.phi {
        r.violation("phi changed");
    }
    let n = orbit.a_labels.len();
    match (measure_defects(gamma, &sym_map(&orbit.phi, n)), measure_defects(gamma, &sym_map(&lifted.phi, lifted.a_labels.len()))) {
        (Ok(a), Ok(b)) => {
            if a.eps_max != b.eps_max || a.c_min != b.c_min || a.unital != b.unital {
                r.violation(format!("defects differ: {} vs {}", a.eps_max, b.eps_max));
            }
            r.note(format!("measured multiplicativity defect {}", a.eps_max));
        }
        (Err(e), _) | (_, Err(e)) => r.violation(e.to_string()),
    }
    r
}

/// `K = L(Y)` with `Q` acting through `β`, and `π̂ = L(π)` on `E ⊆ L(Z)`.
pub fn lef_lift_through_halo<P: PointAction, Q: PointAction + Clone>(
    halo: &HaloGroup,
    frag: &ActionFragment<P>,
    w: &LefActionWitness<PointElem<P>, Q>,
    e: &[HaloElem],
) -> Result<ClefWitness<PointElem<P>, HaloElem, HaloAction<Q>>> {
    if let Some(h) = e.iter().find(|h| !h.support().is_subset(&frag.z)) {
        return Err(Error::Precondition(format!("{} is not supported in Z", halo.render(h))));
    }
    let lz = halo.on(halo.space.induced(&frag.z)?);
    let k = halo.on(w.y_graph.clone().unwrap_or_else(|| Graph::set(w.y.iter().copied())));
    let pi = e.iter().map(|h| Ok((h.clone(), lz.push_forward(h, &w.pi, &k)?))).collect::<Result<BTreeMap<_, _>>>()?;
    let rho = frag.f.iter().filter_map(|g| w.rho.get(g).map(|q| (g.clone(), q.clone()))).collect();
    Ok(ClefWitness { gamma: HaloAction { points: w.q.clone(), halo: k }, rho, pi })
}

/// Automorphic data from a C-LEF witness: `A` is the group of automorphisms
/// `γ(q)`, `q ∈ ⟨ρ(F)⟩`, told apart by their values on `k_gens` (which must
/// generate `K`), acting on itself by left translation; `π_a(h) = a⁻¹(π(h))`,
/// `Λ = K`, `S = A`.
pub fn clef_to_automorphic<Ge, De, C>(
    w: &ClefWitness<Ge, De, C>,
    f: &[Ge],
    k_gens: &[DeltaOf<C>],
    cap: usize,
) -> Result<AutomorphicApproximation<Ge, De, C::Delta>>
where
    Ge: Ord + Clone + Debug,
    De: Ord + Clone,
    C: AutAction,
    C::Delta: Clone,
{
    let q = w.gamma.gamma();
    let mut rho = BTreeMap::new();
    for g in f {
        rho.insert(g.clone(), w.rho.get(g).ok_or_else(|| invalid(format!("rho({g:?}) is missing")))?.clone());
    }
    let gens: Vec<GammaOf<C>> = rho.values().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let sub = generated_subgroup(q, &gens, cap)?;
    let signature = |x: &GammaOf<C>| -> Vec<DeltaOf<C>> { k_gens.iter().map(|k| w.gamma.act(x, k)).collect() };
    let mut reps: BTreeMap<Vec<DeltaOf<C>>, GammaOf<C>> = BTreeMap::new();
    for x in sub {
        reps.entry(signature(&x)).or_insert(x);
    }
    let reps: Vec<(Vec<DeltaOf<C>>, GammaOf<C>)> = reps.into_iter().collect();
    let idx: BTreeMap<&Vec<DeltaOf<C>>, u32> = reps.iter().enumerate().map(|(i, (s, _))| (s, i as u32)).collect();
    let mut phi = BTreeMap::new();
    for (g, rg) in &rho {
        let images = reps.iter().map(|(_, x)| idx[&signature(&q.mul(rg, x))]).collect();
        phi.insert(g.clone(), Perm::from_images(images)?);
    }
    let mut pi = BTreeMap::new();
    for (i, (_, x)) in reps.iter().enumerate() {
        let xinv = q.inv(x);
        pi.insert(i, w.pi.iter().map(|(h, ph)| (h.clone(), w.gamma.act(&xinv, ph))).collect());
    }
    Ok(AutomorphicApproximation {
        a_labels: reps.iter().map(|(_, x)| q.render(x)).collect(),
        phi,
        s: (0..reps.len()).collect(),
        e: w.pi.keys().cloned().collect(),
        lambda: w.gamma.delta().clone(),
        pi,
        notes: vec![format!("A: {} automorphisms of K induced by <rho(F)>, compared on {} generators", reps.len(), k_gens.len())],
    })
}
