//! Finite-domain maps into metric groups: multiplicativity, separation,
//! unitality, and the unital repair.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::metric::{MetricGroup, SymElem, SymmetricGroup};
use crate::perm::Perm;
use crate::rational::{Distance, Rational};
use crate::report::{CheckReport, Extremum};

/// `φ : F → G`, total on the finite set `F` (the keys).
#[derive(Clone, Debug)]
pub struct ApproximationMap<D: Ord + Clone + Debug, M: MetricGroup> {
    pub codomain: M,
    pub table: BTreeMap<D, M::Elem>,
}

impl<D: Ord + Clone + Debug, M: MetricGroup> ApproximationMap<D, M> {
    pub fn new(codomain: M, table: BTreeMap<D, M::Elem>) -> Self {
        ApproximationMap { codomain, table }
    }

    pub fn from_fn(codomain: M, domain: impl IntoIterator<Item = D>, f: impl Fn(&D) -> M::Elem) -> Self {
        let table = domain.into_iter().map(|d| {
            let v = f(&d);
            (d, v)
        });
        ApproximationMap { table: table.collect(), codomain }
    }

    pub fn domain(&self) -> impl Iterator<Item = &D> {
        self.table.keys()
    }

    pub fn get(&self, d: &D) -> Option<&M::Elem> {
        self.table.get(d)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        self.table.values().try_for_each(|v| self.codomain.validate(v))
    }

    /// Post-composes with a map between codomains.
    pub fn map_codomain<N: MetricGroup>(&self, codomain: N, f: impl Fn(&M::Elem) -> N::Elem) -> ApproximationMap<D, N> {
        ApproximationMap { codomain, table: self.table.iter().map(|(k, v)| (k.clone(), f(v))).collect() }
    }

    pub fn restrict(&self, keep: impl Fn(&D) -> bool) -> Self
    where
        M: Clone,
    {
        ApproximationMap {
            codomain: self.codomain.clone(),
            table: self.table.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }
}

/// Measured defects of a map.
#[derive(Clone, Debug, Serialize)]
pub struct Defects {
    /// Largest `d(φ(gh), φ(g)φ(h))` over pairs with `gh ∈ F`.
    pub eps_max: Distance,
    pub eps_witness: Option<String>,
    /// Smallest `d(φ(g), e)` over `g ≠ e` in `F`; `None` when `F ⊆ {e}`.
    pub c_min: Option<Distance>,
    pub c_witness: Option<String>,
    /// `φ(e) = e` (vacuous when `e ∉ F`).
    pub unital: bool,
    pub approximate: bool,
}

pub fn measure_defects<G: Group, M: MetricGroup>(dom: &G, phi: &ApproximationMap<G::Elem, M>) -> Result<Defects> {
    let cod = &phi.codomain;
    let mut eps = Extremum::largest();
    let mut approximate = false;
    for (g, pg) in &phi.table {
        for (h, ph) in &phi.table {
            let gh = dom.mul(g, h);
            if let Some(pgh) = phi.table.get(&gh) {
                let d = cod.distance(pgh, &cod.mul(pg, ph))?;
                approximate |= d.is_approximate();
                eps.offer(&d, || format!("({}, {})", dom.render(g), dom.render(h)));
            }
        }
    }
    let mut sep = Extremum::smallest();
    let e = dom.identity();
    let mut unital = true;
    for (g, pg) in &phi.table {
        if *g == e {
            unital = cod.distance_to_identity(pg)?.is_zero();
            continue;
        }
        let d = cod.distance_to_identity(pg)?;
        approximate |= d.is_approximate();
        sep.offer(&d, || dom.render(g));
    }
    Ok(Defects {
        eps_max: eps.value.unwrap_or_else(Distance::zero),
        eps_witness: eps.witness,
        c_min: sep.value,
        c_witness: sep.witness,
        unital,
        approximate,
    })
}

/// `d(φ(gh), φ(g)φ(h)) < ε` whenever `g, h, gh ∈ F`.
pub fn check_multiplicative<G: Group, M: MetricGroup>(dom: &G, phi: &ApproximationMap<G::Elem, M>, eps: &Rational) -> CheckReport {
    let mut r = CheckReport::new(format!("(F, {eps})-multiplicative"));
    let cod = &phi.codomain;
    let mut worst = Extremum::largest();
    for (g, pg) in &phi.table {
        for (h, ph) in &phi.table {
            let gh = dom.mul(g, h);
            let Some(pgh) = phi.table.get(&gh) else { continue };
            match cod.distance(pgh, &cod.mul(pg, ph)) {
                Ok(d) => {
                    r.approximate |= d.is_approximate();
                    if !d.lt(eps) {
                        r.violation(format!("d(phi({0}{1}), phi({0})phi({1})) = {d}", dom.render(g), dom.render(h)));
                    }
                    worst.offer(&d, || format!("({}, {})", dom.render(g), dom.render(h)));
                }
                Err(e) => r.violation(format!("cannot evaluate at ({}, {}): {e}", dom.render(g), dom.render(h))),
            }
        }
    }
    finish(r, worst)
}

/// `d(φ(g), e) > c` for every `g ≠ e` in `F`.
pub fn check_separating<G: Group, M: MetricGroup>(dom: &G, phi: &ApproximationMap<G::Elem, M>, c: &Rational) -> CheckReport {
    let mut r = CheckReport::new(format!("(F, {c})-separating"));
    let cod = &phi.codomain;
    let e = dom.identity();
    let mut worst = Extremum::smallest();
    for (g, pg) in phi.table.iter().filter(|(g, _)| **g != e) {
        match cod.distance_to_identity(pg) {
            Ok(d) => {
                r.approximate |= d.is_approximate();
                if !d.gt(c) {
                    r.violation(format!("d(phi({}), e) = {d}", dom.render(g)));
                }
                worst.offer(&d, || dom.render(g));
            }
            Err(err) => r.violation(format!("cannot evaluate at {}: {err}", dom.render(g))),
        }
    }
    finish(r, worst)
}

pub fn check_unital<G: Group, M: MetricGroup>(dom: &G, phi: &ApproximationMap<G::Elem, M>) -> CheckReport {
    let mut r = CheckReport::new("unital");
    if let Some(pe) = phi.table.get(&dom.identity()) {
        match phi.codomain.distance_to_identity(pe) {
            Ok(d) if d.is_zero() => {}
            Ok(d) => r.violation(format!("phi(e) is not the identity (distance {d})")),
            Err(e) => r.violation(format!("cannot evaluate phi(e): {e}")),
        }
    } else {
        r.note("e not in F");
    }
    r
}

/// Unital, `(F, ε)`-multiplicative and `(F, c)`-separating.
pub fn check_representation<G: Group, M: MetricGroup>(dom: &G, phi: &ApproximationMap<G::Elem, M>, eps: &Rational, c: &Rational) -> CheckReport {
    CheckReport::all(
        format!("(F, {eps}, {c})-representation into {}", phi.codomain.describe()),
        vec![check_unital(dom, phi), check_multiplicative(dom, phi, eps), check_separating(dom, phi, c)],
    )
}

fn finish(r: CheckReport, worst: Extremum) -> CheckReport {
    match worst.value {
        Some(d) => r.with_defect(d, worst.witness),
        None => r,
    }
}

/// Sets `φ'(e) = e_G`, keeping `φ` elsewhere.
///
/// Requires `e ∈ F`, `(F, δ)`-multiplicativity, `d(φ(e), e_G) < δ` and
/// `d(φ(g), φ(h)) ≥ c` for distinct `g, h ∈ F`. The result is unital,
/// `(F, 2δ)`-multiplicative and `(F, c − δ)`-separating; all three are
/// re-measured before returning.
pub fn repair_unital<G: Group, M: MetricGroup + Clone>(
    dom: &G,
    phi: &ApproximationMap<G::Elem, M>,
    delta: &Rational,
    c: &Rational,
) -> Result<ApproximationMap<G::Elem, M>> {
    let cod = &phi.codomain;
    let e = dom.identity();
    let pe = phi.table.get(&e).ok_or_else(|| Error::Precondition("identity is not in F".into()))?;
    let mult = check_multiplicative(dom, phi, delta);
    if !mult.passed() {
        return Err(Error::Precondition(format!("map is not (F, {delta})-multiplicative: {}", mult.violations[0])));
    }
    let de = cod.distance_to_identity(pe)?;
    if !de.lt(delta) {
        return Err(Error::Precondition(format!("d(phi(e), e) = {de} is not below {delta}")));
    }
    let entries: Vec<_> = phi.table.iter().collect();
    for (i, (g, pg)) in entries.iter().enumerate() {
        for (h, ph) in &entries[i + 1..] {
            let d = cod.distance(pg, ph)?;
            if !d.ge(c) {
                return Err(Error::Precondition(format!("d(phi({}), phi({})) = {d} is below {c}", dom.render(g), dom.render(h))));
            }
        }
    }
    let mut table = phi.table.clone();
    table.insert(e, cod.identity());
    let out = ApproximationMap { codomain: cod.clone(), table };
    let two_delta = delta * Rational::from_integer(2.into());
    let post = check_representation(dom, &out, &two_delta, &(c - delta));
    if !post.passed() {
        return Err(Error::CheckFailed(format!("repaired map fails its contract:\n{}", post.to_text())));
    }
    Ok(out)
}

/// Left translation action of a finite group on its element list, as explicit
/// permutations (points are indices into `g.elements()`).
pub fn regular_representation<G: FiniteGroup>(g: &G, cap: usize) -> Result<ApproximationMap<G::Elem, SymmetricGroup>> {
    let elems = g.elements();
    if elems.len() > cap {
        return Err(Error::CapExceeded {
            what: format!("regular representation of {}", g.describe()),
            needed: elems.len().to_string(),
            cap: cap as u64,
        });
    }
    let index: BTreeMap<&G::Elem, u32> = elems.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let cod = SymmetricGroup::points(elems.len());
    let table = elems
        .iter()
        .map(|x| {
            let images = elems.iter().map(|y| index[&g.mul(x, y)]).collect();
            (x.clone(), SymElem::Explicit(Perm::from_images(images).expect("left translation is a bijection")))
        })
        .collect();
    Ok(ApproximationMap { codomain: cod, table })
}

/// Regular permutation representation as plain permutations.
pub fn regular_perms<G: FiniteGroup>(g: &G) -> BTreeMap<G::Elem, Perm> {
    let elems = g.elements();
    let index: BTreeMap<&G::Elem, u32> = elems.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    elems
        .iter()
        .map(|x| {
            let images = elems.iter().map(|y| index[&g.mul(x, y)]).collect();
            (x.clone(), Perm::from_images(images).expect("left translation is a bijection"))
        })
        .collect()
}

/// Cyclic-shift map `k ↦ (i ↦ i + k mod n)` of `Z` on `Z/n`, as a map on `F`.
pub fn cyclic_shift_map(n: usize, domain: impl IntoIterator<Item = i64>) -> ApproximationMap<i64, SymmetricGroup> {
    ApproximationMap::from_fn(SymmetricGroup::points(n), domain, |&k| SymElem::Explicit(Perm::cyclic_shift(n, k)))
}
