//! Structured permutations of large product carriers.
//!
//! A carrier [`Shape`] is a finite set built from `{0..n}` by cartesian products
//! and powers. A [`SymElem`] is a permutation of such a carrier kept in
//! factored form: coordinatewise products and wreath elements `(u, ρ)` acting by
//! `(u, ρ)·(a_x)_x = (u_x(a_{ρ⁻¹(x)}))_x`. Fixed points are counted exactly from
//! the cycle structure of `ρ`, so carriers with astronomically many points
//! remain measurable. Pointwise evaluation is kept as an independent route.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng as _;
use serde::Serialize;

use crate::error::{invalid, mismatch, Error, Result};
use crate::perm::Perm;
use crate::rational::{Distance, Rational};
use crate::rng;

use super::MetricGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shape {
    Points(usize),
    Product(Box<Shape>, Box<Shape>),
    Power(Box<Shape>, usize),
}

impl Shape {
    pub fn product(a: Shape, b: Shape) -> Shape {
        Shape::Product(Box::new(a), Box::new(b))
    }

    pub fn power(inner: Shape, k: usize) -> Shape {
        Shape::Power(Box::new(inner), k)
    }

    pub fn size(&self) -> BigUint {
        match self {
            Shape::Points(n) => BigUint::from(*n),
            Shape::Product(a, b) => a.size() * b.size(),
            Shape::Power(inner, k) => inner.size().pow(*k as u32),
        }
    }

    /// Number of leaf coordinates in the flat tuple encoding of a point.
    pub fn arity(&self) -> usize {
        match self {
            Shape::Points(_) => 1,
            Shape::Product(a, b) => a.arity() + b.arity(),
            Shape::Power(inner, k) => inner.arity() * k,
        }
    }

    /// Range of each leaf coordinate.
    pub fn leaf_sizes(&self) -> Vec<usize> {
        match self {
            Shape::Points(n) => vec![*n],
            Shape::Product(a, b) => {
                let mut v = a.leaf_sizes();
                v.extend(b.leaf_sizes());
                v
            }
            Shape::Power(inner, k) => {
                let one = inner.leaf_sizes();
                one.iter().cycle().take(one.len() * k).copied().collect()
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Points(n) => write!(f, "[{n}]"),
            Shape::Product(a, b) => write!(f, "({a} x {b})"),
            Shape::Power(inner, k) => write!(f, "{inner}^{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SymElem {
    /// Identity of whatever carrier it is used on.
    Identity,
    Explicit(Perm),
    /// `(a, b) -> (σa, τb)`.
    Product(Box<SymElem>, Box<SymElem>),
    /// Base tuple `blocks` after the coordinate permutation `top`.
    Wreath {
        blocks: Vec<SymElem>,
        top: Perm,
    },
}

impl SymElem {
    pub fn product(a: SymElem, b: SymElem) -> SymElem {
        SymElem::Product(Box::new(a), Box::new(b))
    }

    pub fn base(blocks: Vec<SymElem>) -> SymElem {
        let k = blocks.len();
        SymElem::Wreath { blocks, top: Perm::identity(k) }
    }

    pub fn acting(k: usize, top: Perm) -> SymElem {
        SymElem::Wreath { blocks: vec![SymElem::Identity; k], top }
    }

    pub fn conforms(&self, shape: &Shape) -> Result<()> {
        match (self, shape) {
            (SymElem::Identity, _) => Ok(()),
            (SymElem::Explicit(p), Shape::Points(n)) if p.degree() == *n => Ok(()),
            (SymElem::Product(a, b), Shape::Product(sa, sb)) => {
                a.conforms(sa)?;
                b.conforms(sb)
            }
            (SymElem::Wreath { blocks, top }, Shape::Power(inner, k)) if blocks.len() == *k && top.degree() == *k => {
                blocks.iter().try_for_each(|b| b.conforms(inner))
            }
            _ => Err(mismatch(format!("structured permutation does not fit carrier {shape}"))),
        }
    }

    /// `self ∘ other` on `shape`.
    pub fn compose(&self, other: &SymElem, shape: &Shape) -> SymElem {
        match (self, other) {
            (SymElem::Identity, x) | (x, SymElem::Identity) => x.clone(),
            (SymElem::Explicit(p), SymElem::Explicit(q)) => SymElem::Explicit(p.compose(q)),
            (SymElem::Product(a1, b1), SymElem::Product(a2, b2)) => {
                let Shape::Product(sa, sb) = shape else { panic!("product element on carrier {shape}") };
                SymElem::product(a1.compose(a2, sa), b1.compose(b2, sb))
            }
            (SymElem::Wreath { blocks: u, top: rho }, SymElem::Wreath { blocks: v, top: sigma }) => {
                let Shape::Power(inner, _) = shape else { panic!("wreath element on carrier {shape}") };
                let rho_inv = rho.inverse();
                let blocks = (0..u.len()).map(|x| u[x].compose(&v[rho_inv.apply(x)], inner)).collect();
                SymElem::Wreath { blocks, top: rho.compose(sigma) }
            }
            _ => panic!("incompatible structured permutations on carrier {shape}"),
        }
    }

    pub fn inverse(&self, shape: &Shape) -> SymElem {
        match self {
            SymElem::Identity => SymElem::Identity,
            SymElem::Explicit(p) => SymElem::Explicit(p.inverse()),
            SymElem::Product(a, b) => {
                let Shape::Product(sa, sb) = shape else { panic!("product element on carrier {shape}") };
                SymElem::product(a.inverse(sa), b.inverse(sb))
            }
            SymElem::Wreath { blocks, top } => {
                let Shape::Power(inner, _) = shape else { panic!("wreath element on carrier {shape}") };
                let blocks = (0..blocks.len()).map(|x| blocks[top.apply(x)].inverse(inner)).collect();
                SymElem::Wreath { blocks, top: top.inverse() }
            }
        }
    }

    /// Exact number of fixed points, from the cycle structure.
    pub fn fixed_points(&self, shape: &Shape) -> BigUint {
        match self {
            SymElem::Identity => shape.size(),
            SymElem::Explicit(p) => BigUint::from(p.fixed_points()),
            SymElem::Product(a, b) => {
                let Shape::Product(sa, sb) = shape else { panic!("product element on carrier {shape}") };
                a.fixed_points(sa) * b.fixed_points(sb)
            }
            SymElem::Wreath { blocks, top } => {
                let Shape::Power(inner, _) = shape else { panic!("wreath element on carrier {shape}") };
                let mut total = BigUint::one();
                for cycle in top.cycles() {
                    // a_{x0} must be fixed by u_{x0} ∘ u_{x_{L-1}} ∘ … ∘ u_{x1}.
                    let mut acc = SymElem::Identity;
                    for &x in cycle.iter().skip(1) {
                        acc = blocks[x].compose(&acc, inner);
                    }
                    acc = blocks[cycle[0]].compose(&acc, inner);
                    let f = acc.fixed_points(inner);
                    if f.is_zero() {
                        return f;
                    }
                    total *= f;
                }
                total
            }
        }
    }

    pub fn is_identity(&self, shape: &Shape) -> bool {
        self.fixed_points(shape) == shape.size()
    }

    /// Image of a point given as its flat leaf-coordinate tuple.
    pub fn apply(&self, shape: &Shape, point: &[u32]) -> Vec<u32> {
        let mut out = vec![0; point.len()];
        self.apply_into(shape, point, &mut out);
        out
    }

    fn apply_into(&self, shape: &Shape, point: &[u32], out: &mut [u32]) {
        match (self, shape) {
            (SymElem::Identity, _) => out.copy_from_slice(point),
            (SymElem::Explicit(p), _) => out[0] = p.apply(point[0] as usize) as u32,
            (SymElem::Product(a, b), Shape::Product(sa, sb)) => {
                let k = sa.arity();
                a.apply_into(sa, &point[..k], &mut out[..k]);
                b.apply_into(sb, &point[k..], &mut out[k..]);
            }
            (SymElem::Wreath { blocks, top }, Shape::Power(inner, _)) => {
                let w = inner.arity();
                let top_inv = top.inverse();
                for x in 0..blocks.len() {
                    let src = top_inv.apply(x);
                    blocks[x].apply_into(inner, &point[src * w..(src + 1) * w], &mut out[x * w..(x + 1) * w]);
                }
            }
            _ => panic!("structured permutation does not fit carrier {shape}"),
        }
    }

    /// Fixed points by visiting every point of the carrier.
    pub fn fixed_points_by_enumeration(&self, shape: &Shape, cap: u64) -> Result<u64> {
        let size = shape.size();
        if size > BigUint::from(cap) {
            return Err(Error::CapExceeded { what: format!("enumerating carrier {shape}"), needed: size.to_string(), cap });
        }
        let radices = shape.leaf_sizes();
        if radices.contains(&0) {
            return Ok(0);
        }
        let mut point = vec![0u32; radices.len()];
        let mut out = vec![0u32; radices.len()];
        let mut count = 0u64;
        loop {
            self.apply_into(shape, &point, &mut out);
            if out == point {
                count += 1;
            }
            // odometer step
            let mut i = 0;
            loop {
                if i == point.len() {
                    return Ok(count);
                }
                point[i] += 1;
                if (point[i] as usize) < radices[i] {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }

    /// Seeded Monte-Carlo estimate of the fixed-point fraction.
    pub fn fixed_fraction_estimate(&self, shape: &Shape, samples: usize, seed: u64) -> f64 {
        let radices = shape.leaf_sizes();
        let mut r = rng::seeded(seed, rng::stream_for("fixed-fraction"));
        let mut point = vec![0u32; radices.len()];
        let mut hits = 0usize;
        for _ in 0..samples {
            for (p, &n) in point.iter_mut().zip(&radices) {
                *p = r.gen_range(0..n as u32);
            }
            if self.apply(shape, &point) == point {
                hits += 1;
            }
        }
        hits as f64 / samples.max(1) as f64
    }

    /// Explicit permutation of the carrier, indexing points in mixed radix
    /// (first leaf coordinate least significant).
    pub fn materialize(&self, shape: &Shape, cap: u64) -> Result<Perm> {
        let size = shape.size();
        let n = size.to_u64().filter(|&n| n <= cap).ok_or_else(|| Error::CapExceeded {
            what: format!("materializing carrier {shape}"),
            needed: size.to_string(),
            cap,
        })?;
        let radices = shape.leaf_sizes();
        let mut images = Vec::with_capacity(n as usize);
        let mut point = vec![0u32; radices.len()];
        for idx in 0..n {
            let mut rem = idx;
            for (p, &r) in point.iter_mut().zip(&radices) {
                *p = (rem % r as u64) as u32;
                rem /= r as u64;
            }
            let img = self.apply(shape, &point);
            let mut j = 0u64;
            for (&c, &r) in img.iter().zip(&radices).rev() {
                j = j * r as u64 + c as u64;
            }
            images.push(j as u32);
        }
        Perm::from_images(images)
    }
}

impl fmt::Display for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymElem::Identity => write!(f, "id"),
            SymElem::Explicit(p) => write!(f, "{p}"),
            SymElem::Product(a, b) => write!(f, "<{a} x {b}>"),
            SymElem::Wreath { blocks, top } => {
                let nontrivial = blocks.iter().filter(|b| !matches!(b, SymElem::Identity)).count();
                if nontrivial <= 4 {
                    let parts: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
                    write!(f, "[{}; {}]", parts.join(", "), top)
                } else {
                    write!(f, "[{} blocks, {nontrivial} nontrivial; {}]", blocks.len(), top)
                }
            }
        }
    }
}

/// How Hamming distances are evaluated on a structured carrier.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum CountMethod {
    /// Exact fixed-point count from the cycle structure (any carrier size).
    Structural,
    /// Exact count by visiting every point; errors above the cap.
    Enumerate { cap: u64 },
    /// Seeded sampling; distances are flagged as estimates.
    Sample { samples: usize, seed: u64 },
}

/// `Sym(A)` for a structured carrier `A`, with the normalized Hamming metric.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricGroup {
    pub shape: Shape,
    pub method: CountMethod,
}

impl SymmetricGroup {
    pub fn new(shape: Shape) -> Self {
        SymmetricGroup { shape, method: CountMethod::Structural }
    }

    pub fn points(n: usize) -> Self {
        Self::new(Shape::Points(n))
    }

    pub fn with_method(mut self, method: CountMethod) -> Self {
        self.method = method;
        self
    }

    pub fn fixed_points(&self, a: &SymElem) -> Result<Option<BigUint>> {
        Ok(match &self.method {
            CountMethod::Structural => Some(a.fixed_points(&self.shape)),
            CountMethod::Enumerate { cap } => Some(BigUint::from(a.fixed_points_by_enumeration(&self.shape, *cap)?)),
            CountMethod::Sample { .. } => None,
        })
    }
}

impl MetricGroup for SymmetricGroup {
    type Elem = SymElem;

    fn describe(&self) -> String {
        format!("Sym({})", self.shape)
    }

    fn identity(&self) -> SymElem {
        SymElem::Identity
    }

    fn mul(&self, a: &SymElem, b: &SymElem) -> SymElem {
        a.compose(b, &self.shape)
    }

    fn inv(&self, a: &SymElem) -> SymElem {
        a.inverse(&self.shape)
    }

    fn distance(&self, a: &SymElem, b: &SymElem) -> Result<Distance> {
        a.conforms(&self.shape)?;
        b.conforms(&self.shape)?;
        let q = a.compose(&b.inverse(&self.shape), &self.shape);
        match (&self.method, self.fixed_points(&q)?) {
            (_, Some(fix)) => {
                let size = BigInt::from(self.shape.size());
                if size.is_zero() {
                    return Ok(Distance::zero());
                }
                Ok(Distance::Exact(Rational::one() - Rational::new(BigInt::from(fix), size)))
            }
            (CountMethod::Sample { samples, seed }, None) => Ok(Distance::Estimate(1.0 - q.fixed_fraction_estimate(&self.shape, *samples, *seed))),
            _ => unreachable!(),
        }
    }

    fn validate(&self, a: &SymElem) -> Result<()> {
        a.conforms(&self.shape)
    }

    fn render(&self, a: &SymElem) -> String {
        a.to_string()
    }
}

/// Checks that a structured element is a bijection of its carrier by
/// materializing it (carrier at most `cap` points).
pub fn check_bijective(a: &SymElem, shape: &Shape, cap: u64) -> Result<()> {
    a.conforms(shape)?;
    a.materialize(shape, cap).map(|_| ()).map_err(|e| match e {
        Error::Invalid(m) => invalid(format!("structured permutation is not a bijection: {m}")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn swap() -> SymElem {
        SymElem::Explicit(Perm::transposition(2, 0, 1))
    }

    #[test]
    fn wreath_fixed_points_match_enumeration() {
        let inner = Shape::Points(3);
        let shape = Shape::power(inner.clone(), 3);
        let c3 = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let t = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let blocks = vec![SymElem::Explicit(t.clone()), SymElem::Identity, SymElem::Explicit(c3.clone())];
        for top in Perm::all(3) {
            let g = SymElem::Wreath { blocks: blocks.clone(), top };
            let exact = g.fixed_points(&shape);
            let counted = g.fixed_points_by_enumeration(&shape, 1 << 20).unwrap();
            assert_eq!(exact, BigUint::from(counted), "{g}");
        }
    }

    #[test]
    fn composition_matches_pointwise_evaluation() {
        let shape = Shape::product(Shape::power(Shape::Points(2), 2), Shape::Points(3));
        let a = SymElem::product(
            SymElem::Wreath { blocks: vec![swap(), SymElem::Identity], top: Perm::transposition(2, 0, 1) },
            SymElem::Explicit(Perm::cyclic_shift(3, 1)),
        );
        let b = SymElem::product(SymElem::base(vec![SymElem::Identity, swap()]), SymElem::Identity);
        let ab = a.compose(&b, &shape);
        let pa = a.materialize(&shape, 100).unwrap();
        let pb = b.materialize(&shape, 100).unwrap();
        assert_eq!(ab.materialize(&shape, 100).unwrap(), pa.compose(&pb));
        assert!(a.compose(&a.inverse(&shape), &shape).is_identity(&shape));
    }

    #[test]
    fn acting_map_on_two_coordinates_fixes_the_diagonal() {
        let shape = Shape::power(Shape::Points(2), 2);
        let g = SymmetricGroup::new(shape);
        let psi = SymElem::acting(2, Perm::transposition(2, 0, 1));
        assert_eq!(g.distance_to_identity(&psi).unwrap(), Distance::Exact(rat(1, 2)));
    }

    #[test]
    fn huge_carrier_is_measured_exactly() {
        let inner = Shape::power(Shape::Points(2), 16);
        let shape = Shape::power(inner.clone(), 16);
        let regular = SymElem::base((0..16).map(|i| if i == 3 { swap() } else { SymElem::Identity }).collect());
        let g = SymmetricGroup::new(shape);
        let tau = SymElem::base(vec![regular; 16]);
        assert_eq!(g.distance_to_identity(&tau).unwrap(), Distance::Exact(rat(1, 1)));
        assert!(tau.fixed_points_by_enumeration(&g.shape, 1 << 20).is_err());
    }

    #[test]
    fn sampled_distance_is_flagged() {
        let g = SymmetricGroup::points(4).with_method(CountMethod::Sample { samples: 2000, seed: 1 });
        let d = g.distance_to_identity(&SymElem::Explicit(Perm::transposition(4, 0, 1))).unwrap();
        assert!(d.is_approximate());
        assert!((d.to_f64() - 0.5).abs() < 0.05);
    }
}
