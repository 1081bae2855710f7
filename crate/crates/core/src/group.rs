//! Discrete groups with decidable equality: the domains of approximations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{invalid, Error, Result};
use crate::metric::FiniteMetricGroup;
use crate::perm::Perm;

pub trait Group {
    type Elem: Clone + Debug + Eq + Ord + Hash;

    fn describe(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn render(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// Product of a word in the given generators; negative indices are inverses.
    fn word(&self, gens: &[Self::Elem], letters: &[i64]) -> Self::Elem {
        letters.iter().fold(self.identity(), |acc, &l| {
            let g = &gens[l.unsigned_abs() as usize - 1];
            let g = if l < 0 { self.inv(g) } else { g.clone() };
            self.mul(&acc, &g)
        })
    }
}

pub trait FiniteGroup: Group {
    fn elements(&self) -> Vec<Self::Elem>;
}

/// Deduplicates, keeping sorted order.
pub fn finite_subset<T: Ord + Clone>(elems: impl IntoIterator<Item = T>) -> Vec<T> {
    elems.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Ball of the given radius in the word metric of `gens ∪ gens⁻¹`.
pub fn ball<G: Group>(g: &G, gens: &[G::Elem], radius: usize) -> Vec<G::Elem> {
    let mut all: Vec<G::Elem> = gens.to_vec();
    all.extend(gens.iter().map(|x| g.inv(x)));
    let mut seen = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &all {
                let y = g.mul(x, s);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// Subgroup generated by `gens` (breadth-first closure, at most `cap` elements).
pub fn generated_subgroup<G: Group>(g: &G, gens: &[G::Elem], cap: usize) -> Result<Vec<G::Elem>> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: format!("subgroup of {}", g.describe()),
                        needed: format!("more than {cap}"),
                        cap: cap as u64,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;
    fn describe(&self) -> String {
        "Z".into()
    }
    fn identity(&self) -> i64 {
        0
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn inv(&self, a: &i64) -> i64 {
        -a
    }
    fn render(&self, a: &i64) -> String {
        a.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cyclic {
    pub m: i64,
}

impl Cyclic {
    pub fn new(m: i64) -> Self {
        assert!(m >= 1, "cyclic group needs a positive modulus");
        Cyclic { m }
    }
}

impl Group for Cyclic {
    type Elem = i64;
    fn describe(&self) -> String {
        format!("Z/{}", self.m)
    }
    fn identity(&self) -> i64 {
        0
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        (a + b).rem_euclid(self.m)
    }
    fn inv(&self, a: &i64) -> i64 {
        (-a).rem_euclid(self.m)
    }
    fn render(&self, a: &i64) -> String {
        a.to_string()
    }
}

impl FiniteGroup for Cyclic {
    fn elements(&self) -> Vec<i64> {
        (0..self.m).collect()
    }
}

/// `Z^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub d: usize,
}

impl Group for Lattice {
    type Elem = Vec<i64>;
    fn describe(&self) -> String {
        format!("Z^{}", self.d)
    }
    fn identity(&self) -> Vec<i64> {
        vec![0; self.d]
    }
    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetric {
    pub n: usize,
}

impl Group for Symmetric {
    type Elem = Perm;
    fn describe(&self) -> String {
        format!("Sym({})", self.n)
    }
    fn identity(&self) -> Perm {
        Perm::identity(self.n)
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }
    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }
    fn render(&self, a: &Perm) -> String {
        a.to_string()
    }
}

impl FiniteGroup for Symmetric {
    fn elements(&self) -> Vec<Perm> {
        Perm::all(self.n)
    }
}

/// A finite group given by its Cayley table; elements are row indices.
#[derive(Clone, Debug, PartialEq)]
pub struct TableGroup {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverses: Vec<usize>,
}

impl TableGroup {
    pub fn from_metric_group(g: &FiniteMetricGroup) -> Self {
        TableGroup { name: g.name.clone(), labels: g.labels.clone(), table: g.table.clone(), identity: g.identity, inverses: g.inverses.clone() }
    }

    pub fn from_elements<G: FiniteGroup>(g: &G) -> Result<Self> {
        let elems = g.elements();
        let fm = FiniteMetricGroup::from_elements(
            g.describe(),
            &elems,
            |x| g.render(x),
            |a, b| g.mul(a, b),
            |a, b| if a == b { crate::rational::rat_int(0) } else { crate::rational::rat_int(1) },
        )?;
        Ok(Self::from_metric_group(&fm))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

impl Group for TableGroup {
    type Elem = usize;
    fn describe(&self) -> String {
        self.name.clone()
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
    fn inv(&self, a: &usize) -> usize {
        self.inverses[*a]
    }
    fn render(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

impl FiniteGroup for TableGroup {
    fn elements(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectProduct<A, B>(pub A, pub B);

impl<A: Group, B: Group> Group for DirectProduct<A, B> {
    type Elem = (A::Elem, B::Elem);
    fn describe(&self) -> String {
        format!("{} x {}", self.0.describe(), self.1.describe())
    }
    fn identity(&self) -> Self::Elem {
        (self.0.identity(), self.1.identity())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.0.mul(&a.0, &b.0), self.1.mul(&a.1, &b.1))
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (self.0.inv(&a.0), self.1.inv(&a.1))
    }
    fn render(&self, a: &Self::Elem) -> String {
        format!("({}, {})", self.0.render(&a.0), self.1.render(&a.1))
    }
}

impl<A: FiniteGroup, B: FiniteGroup> FiniteGroup for DirectProduct<A, B> {
    fn elements(&self) -> Vec<Self::Elem> {
        let eb = self.1.elements();
        self.0.elements().into_iter().flat_map(|a| eb.iter().map(move |b| (a.clone(), b.clone()))).collect()
    }
}

/// An action `β : Γ → Aut(Δ)`.
pub trait AutAction {
    type Gamma: Group;
    type Delta: Group;

    fn gamma(&self) -> &Self::Gamma;
    fn delta(&self) -> &Self::Delta;
    /// `β(g)[h]`.
    fn act(&self, g: &<Self::Gamma as Group>::Elem, h: &<Self::Delta as Group>::Elem) -> <Self::Delta as Group>::Elem;
}

pub type GammaElem<A> = <<A as AutAction>::Gamma as Group>::Elem;
pub type DeltaElem<A> = <<A as AutAction>::Delta as Group>::Elem;

/// `Δ ⋊_β Γ` with `(k₁, g₁)(k₂, g₂) = (k₁ β(g₁)[k₂], g₁g₂)`.
#[derive(Clone, Debug)]
pub struct Semidirect<A: AutAction> {
    pub action: A,
}

impl<A: AutAction> Semidirect<A> {
    pub fn new(action: A) -> Self {
        Semidirect { action }
    }
}

impl<A: AutAction> Group for Semidirect<A> {
    type Elem = (DeltaElem<A>, GammaElem<A>);

    fn describe(&self) -> String {
        format!("{} x| {}", self.action.delta().describe(), self.action.gamma().describe())
    }
    fn identity(&self) -> Self::Elem {
        (self.action.delta().identity(), self.action.gamma().identity())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.action.delta();
        let g = self.action.gamma();
        (d.mul(&a.0, &self.action.act(&a.1, &b.0)), g.mul(&a.1, &b.1))
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        let g_inv = self.action.gamma().inv(&a.1);
        (self.action.act(&g_inv, &self.action.delta().inv(&a.0)), g_inv)
    }
    fn render(&self, a: &Self::Elem) -> String {
        format!("({}, {})", self.action.delta().render(&a.0), self.action.gamma().render(&a.1))
    }
}

/// Trivial action of `Γ` on `Δ`.
#[derive(Clone, Debug)]
pub struct TrivialAction<G, D> {
    pub gamma: G,
    pub delta: D,
}

impl<G: Group, D: Group> AutAction for TrivialAction<G, D> {
    type Gamma = G;
    type Delta = D;
    fn gamma(&self) -> &G {
        &self.gamma
    }
    fn delta(&self) -> &D {
        &self.delta
    }
    fn act(&self, _g: &G::Elem, h: &D::Elem) -> D::Elem {
        h.clone()
    }
}

/// An action of a group on points (integers label the points).
pub trait PointAction {
    type G: Group;

    fn group(&self) -> &Self::G;
    fn act(&self, g: &<Self::G as Group>::Elem, x: i64) -> i64;
}

/// `Z` acting on `Z` by translation.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntShift;

impl PointAction for IntShift {
    type G = Integers;
    fn group(&self) -> &Integers {
        &Integers
    }
    fn act(&self, g: &i64, x: i64) -> i64 {
        x + g
    }
}

/// `Z/m` rotating `{0, .., m-1}`.
#[derive(Clone, Copy, Debug)]
pub struct CyclicShift {
    pub group: Cyclic,
}

impl CyclicShift {
    pub fn new(m: i64) -> Self {
        CyclicShift { group: Cyclic::new(m) }
    }
}

impl PointAction for CyclicShift {
    type G = Cyclic;
    fn group(&self) -> &Cyclic {
        &self.group
    }
    fn act(&self, g: &i64, x: i64) -> i64 {
        (x + g).rem_euclid(self.group.m)
    }
}

/// Left multiplication of a table group on its own element indices.
#[derive(Clone, Debug)]
pub struct LeftRegular {
    pub group: TableGroup,
}

impl PointAction for LeftRegular {
    type G = TableGroup;
    fn group(&self) -> &TableGroup {
        &self.group
    }
    fn act(&self, g: &usize, x: i64) -> i64 {
        self.group.table[*g][x as usize] as i64
    }
}

/// Parses a small integer list like `"-2,0,3"`.
pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse::<i64>().map_err(|e| invalid(format!("bad integer {t:?}: {e}")))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balls_in_z() {
        assert_eq!(ball(&Integers, &[1], 2), vec![-2, -1, 0, 1, 2]);
        assert_eq!(ball(&Lattice { d: 2 }, &[vec![1, 0], vec![0, 1]], 1).len(), 5);
    }

    #[test]
    fn semidirect_with_trivial_action_is_direct() {
        let s = Semidirect::new(TrivialAction { gamma: Cyclic::new(2), delta: Cyclic::new(3) });
        let a = (1, 1);
        assert_eq!(s.mul(&a, &a), (2, 0));
        assert_eq!(s.mul(&a, &s.inv(&a)), s.identity());
    }

    #[test]
    fn generated_subgroup_of_sym4() {
        let g = Symmetric { n: 4 };
        let gens = [Perm::from_cycles(4, &[&[1, 2]]).unwrap(), Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap()];
        assert_eq!(generated_subgroup(&g, &gens, 100).unwrap().len(), 24);
        assert!(generated_subgroup(&g, &gens, 10).is_err());
    }

    #[test]
    fn table_group_from_elements() {
        let t = TableGroup::from_elements(&DirectProduct(Cyclic::new(2), Cyclic::new(2))).unwrap();
        assert_eq!(t.order(), 4);
        assert!((0..4).all(|x| t.mul(&x, &x) == t.identity));
    }
}
