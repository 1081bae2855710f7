//! Finite groups with bi-invariant diameter-one metrics, closed under the
//! max-metric direct product and the permutational wreath product `G ≀ Sym(n)`.
//!
//! Wreath elements `((g_i)_i, σ)` multiply as
//! `(g, σ)(h, τ) = ((g_{τ(i)} h_i)_i, στ)`, and carry the metric
//! `d_n(σ, σ') + (1/n) Σ_{σ(i) = σ'(i)} d(g_i, g'_i)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{mismatch, Result};
use crate::perm::{hamming_distance, Perm};
use crate::rational::{Distance, Rational};

use super::finite::FiniteMetricGroup;
use super::MetricGroup;

#[derive(Clone, Debug, PartialEq)]
pub enum WeakGroup {
    Finite(Arc<FiniteMetricGroup>),
    Wreath { inner: Box<WeakGroup>, n: usize },
    Product(Box<WeakGroup>, Box<WeakGroup>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeakElem {
    Atom(usize),
    Wreath { base: Vec<WeakElem>, top: Perm },
    Pair(Box<WeakElem>, Box<WeakElem>),
}

impl WeakGroup {
    pub fn finite(g: FiniteMetricGroup) -> Self {
        WeakGroup::Finite(Arc::new(g))
    }

    pub fn wreath(inner: WeakGroup, n: usize) -> Self {
        WeakGroup::Wreath { inner: Box::new(inner), n }
    }

    pub fn product(a: WeakGroup, b: WeakGroup) -> Self {
        WeakGroup::Product(Box::new(a), Box::new(b))
    }

    pub fn order(&self) -> u128 {
        match self {
            WeakGroup::Finite(g) => g.order() as u128,
            WeakGroup::Wreath { inner, n } => inner.order().pow(*n as u32) * (1..=*n as u128).product::<u128>(),
            WeakGroup::Product(a, b) => a.order() * b.order(),
        }
    }

    /// Every element (small groups only).
    pub fn elements(&self) -> Vec<WeakElem> {
        match self {
            WeakGroup::Finite(g) => (0..g.order()).map(WeakElem::Atom).collect(),
            WeakGroup::Product(a, b) => {
                let eb = b.elements();
                a.elements().into_iter().flat_map(|x| eb.iter().map(move |y| WeakElem::Pair(Box::new(x.clone()), Box::new(y.clone())))).collect()
            }
            WeakGroup::Wreath { inner, n } => {
                let ei = inner.elements();
                let mut bases: Vec<Vec<WeakElem>> = vec![Vec::new()];
                for _ in 0..*n {
                    bases = bases
                        .into_iter()
                        .flat_map(|b| {
                            ei.iter().map(move |x| {
                                let mut b = b.clone();
                                b.push(x.clone());
                                b
                            })
                        })
                        .collect();
                }
                let perms = Perm::all(*n);
                bases.into_iter().flat_map(|base| perms.iter().map(move |top| WeakElem::Wreath { base: base.clone(), top: top.clone() })).collect()
            }
        }
    }
}

impl MetricGroup for WeakGroup {
    type Elem = WeakElem;

    fn describe(&self) -> String {
        match self {
            WeakGroup::Finite(g) => g.name.clone(),
            WeakGroup::Wreath { inner, n } => format!("({}) wr Sym({n})", inner.describe()),
            WeakGroup::Product(a, b) => format!("({}) x ({})", a.describe(), b.describe()),
        }
    }

    fn identity(&self) -> WeakElem {
        match self {
            WeakGroup::Finite(g) => WeakElem::Atom(g.identity),
            WeakGroup::Wreath { inner, n } => WeakElem::Wreath { base: vec![inner.identity(); *n], top: Perm::identity(*n) },
            WeakGroup::Product(a, b) => WeakElem::Pair(Box::new(a.identity()), Box::new(b.identity())),
        }
    }

    fn mul(&self, a: &WeakElem, b: &WeakElem) -> WeakElem {
        match (self, a, b) {
            (WeakGroup::Finite(g), WeakElem::Atom(x), WeakElem::Atom(y)) => WeakElem::Atom(g.table[*x][*y]),
            (WeakGroup::Wreath { inner, .. }, WeakElem::Wreath { base: g, top: s }, WeakElem::Wreath { base: h, top: t }) => {
                let base = (0..g.len()).map(|i| inner.mul(&g[t.apply(i)], &h[i])).collect();
                WeakElem::Wreath { base, top: s.compose(t) }
            }
            (WeakGroup::Product(ga, gb), WeakElem::Pair(a1, b1), WeakElem::Pair(a2, b2)) => {
                WeakElem::Pair(Box::new(ga.mul(a1, a2)), Box::new(gb.mul(b1, b2)))
            }
            _ => panic!("element does not belong to {}", self.describe()),
        }
    }

    fn inv(&self, a: &WeakElem) -> WeakElem {
        match (self, a) {
            (WeakGroup::Finite(g), WeakElem::Atom(x)) => WeakElem::Atom(g.inverses[*x]),
            (WeakGroup::Wreath { inner, .. }, WeakElem::Wreath { base, top }) => {
                let top_inv = top.inverse();
                let base = (0..base.len()).map(|i| inner.inv(&base[top_inv.apply(i)])).collect();
                WeakElem::Wreath { base, top: top_inv }
            }
            (WeakGroup::Product(ga, gb), WeakElem::Pair(x, y)) => WeakElem::Pair(Box::new(ga.inv(x)), Box::new(gb.inv(y))),
            _ => panic!("element does not belong to {}", self.describe()),
        }
    }

    fn distance(&self, a: &WeakElem, b: &WeakElem) -> Result<Distance> {
        self.validate(a)?;
        self.validate(b)?;
        exact_distance(self, a, b).map(Distance::Exact)
    }

    fn validate(&self, a: &WeakElem) -> Result<()> {
        match (self, a) {
            (WeakGroup::Finite(g), WeakElem::Atom(x)) if *x < g.order() => Ok(()),
            (WeakGroup::Wreath { inner, n }, WeakElem::Wreath { base, top }) if base.len() == *n && top.degree() == *n => {
                base.iter().try_for_each(|x| inner.validate(x))
            }
            (WeakGroup::Product(ga, gb), WeakElem::Pair(x, y)) => {
                ga.validate(x)?;
                gb.validate(y)
            }
            _ => Err(mismatch(format!("element does not belong to {}", self.describe()))),
        }
    }

    fn render(&self, a: &WeakElem) -> String {
        render(self, a)
    }
}

fn render(g: &WeakGroup, a: &WeakElem) -> String {
    match (g, a) {
        (WeakGroup::Finite(f), WeakElem::Atom(x)) => f.labels[*x].clone(),
        (WeakGroup::Wreath { inner, .. }, WeakElem::Wreath { base, top }) => {
            let parts: Vec<String> = base.iter().map(|x| render(inner, x)).collect();
            format!("(({}), {top})", parts.join(","))
        }
        (WeakGroup::Product(ga, gb), WeakElem::Pair(x, y)) => format!("<{}, {}>", render(ga, x), render(gb, y)),
        _ => format!("{a:?}"),
    }
}

fn exact_distance(g: &WeakGroup, a: &WeakElem, b: &WeakElem) -> Result<Rational> {
    match (g, a, b) {
        (WeakGroup::Finite(f), WeakElem::Atom(x), WeakElem::Atom(y)) => Ok(f.metric[*x][*y].clone()),
        (WeakGroup::Wreath { inner, n }, WeakElem::Wreath { base: g1, top: s1 }, WeakElem::Wreath { base: g2, top: s2 }) => {
            let mut agree = Rational::zero();
            for i in 0..*n {
                if s1.apply(i) == s2.apply(i) {
                    agree += exact_distance(inner, &g1[i], &g2[i])?;
                }
            }
            Ok(hamming_distance(s1, s2)? + agree / Rational::from_integer(BigInt::from(*n)))
        }
        (WeakGroup::Product(ga, gb), WeakElem::Pair(x1, y1), WeakElem::Pair(x2, y2)) => {
            Ok(exact_distance(ga, x1, x2)?.max(exact_distance(gb, y1, y2)?))
        }
        _ => Err(mismatch("elements do not belong to the same weak group")),
    }
}

/// `d_n(σ, σ') + (1/n) Σ_{σ(i)=σ'(i)} d(g_i, g'_i)` on `G ≀ Sym(n)`.
pub fn weak_wreath_distance(inner: &WeakGroup, a: &WeakElem, b: &WeakElem) -> Result<Rational> {
    let n = match a {
        WeakElem::Wreath { base, .. } => base.len(),
        _ => return Err(mismatch("not a wreath element")),
    };
    let g = WeakGroup::wreath(inner.clone(), n);
    g.validate(a)?;
    g.validate(b)?;
    exact_distance(&g, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{check_metric_axioms, Sweep};
    use crate::rational::rat;
    use crate::rng::seeded;

    fn z2() -> WeakGroup {
        WeakGroup::finite(FiniteMetricGroup::cyclic_discrete(2))
    }

    fn w(base: &[usize], top: Perm) -> WeakElem {
        WeakElem::Wreath { base: base.iter().map(|&x| WeakElem::Atom(x)).collect(), top }
    }

    #[test]
    fn wreath_distance_examples() {
        let id = Perm::identity(2);
        let swap = Perm::transposition(2, 0, 1);
        assert_eq!(weak_wreath_distance(&z2(), &w(&[0, 0], id.clone()), &w(&[0, 0], id.clone())).unwrap(), rat(0, 1));
        assert_eq!(weak_wreath_distance(&z2(), &w(&[1, 0], id.clone()), &w(&[0, 0], id.clone())).unwrap(), rat(1, 2));
        assert_eq!(weak_wreath_distance(&z2(), &w(&[0, 0], swap), &w(&[0, 0], id)).unwrap(), rat(1, 1));
    }

    #[test]
    fn wreath_of_z2_is_a_biinvariant_metric_group_of_order_8() {
        let g = WeakGroup::wreath(z2(), 2);
        let elems = g.elements();
        assert_eq!(elems.len(), 8);
        let r = check_metric_axioms(&g, &elems, &Sweep::Exhaustive, &mut seeded(0, 0));
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn group_law_is_associative_with_inverses() {
        let g = WeakGroup::wreath(WeakGroup::finite(FiniteMetricGroup::cyclic_discrete(3)), 3);
        let elems = g.elements();
        assert_eq!(elems.len(), 27 * 6);
        let e = g.identity();
        for a in elems.iter().step_by(7) {
            assert_eq!(g.mul(a, &g.inv(a)), e);
            for b in elems.iter().step_by(11) {
                for c in elems.iter().step_by(13) {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn product_uses_max_metric() {
        let g = WeakGroup::product(z2(), WeakGroup::finite(FiniteMetricGroup::symmetric_hamming(3)));
        let a = WeakElem::Pair(Box::new(WeakElem::Atom(0)), Box::new(WeakElem::Atom(1)));
        assert_eq!(g.distance_to_identity(&a).unwrap(), Distance::Exact(rat(2, 3)));
    }
}
