//! Groups with bounded bi-invariant metrics.
//!
//! Five concrete families: permutations under the normalized Hamming metric
//! (explicit or structured), invertible matrices under the normalized rank
//! metric, unitaries under the normalized Hilbert-Schmidt metric, finite groups
//! with tabulated metrics, and the weak wreath/product closures of the latter.

pub mod field;
pub mod finite;
pub mod matrix;
pub mod structured;
pub mod unitary;
pub mod weak;

use std::fmt::Debug;

use rand::Rng as _;

use crate::error::Result;
use crate::rational::{Distance, Rational};
use crate::report::{CheckReport, Extremum};
use crate::rng::Rng;

pub use field::{Field, PrimeField, RationalField};
pub use finite::{metric_transform_pow, FiniteMetricGroup};
pub use matrix::{GeneralLinear, Matrix};
pub use structured::{Shape, SymElem, SymmetricGroup};
pub use unitary::{hs_distance, UnitaryGroup, UnitaryMatrix};
pub use weak::{weak_wreath_distance, WeakElem, WeakGroup};

pub trait MetricGroup {
    type Elem: Clone + Debug + PartialEq;

    fn describe(&self) -> String;
    fn identity(&self) -> Self::Elem;
    /// Panics if the operands do not belong to this group; use [`Self::validate`] at boundaries.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Distance>;
    fn validate(&self, a: &Self::Elem) -> Result<()>;

    fn distance_to_identity(&self, a: &Self::Elem) -> Result<Distance> {
        self.distance(a, &self.identity())
    }

    fn render(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// How to iterate a check over a finite population.
#[derive(Clone, Debug)]
pub enum Sweep {
    Exhaustive,
    /// `count` seeded draws.
    Sampled {
        count: usize,
        seed: u64,
    },
}

/// Metric axioms, diameter and bi-invariance on an element list.
///
/// Exhaustive mode visits all triples `(g, x, y)`; each triple checks the
/// triangle inequality `d(x,y) ≤ d(x,g) + d(g,y)` and
/// `d(gx,gy) = d(x,y) = d(xg,yg)`. Violations list the offending elements.
pub fn check_metric_axioms<M: MetricGroup>(g: &M, elems: &[M::Elem], sweep: &Sweep, rng: &mut Rng) -> CheckReport {
    let mut report = CheckReport::new(format!("metric axioms and bi-invariance on {}", g.describe()));
    let n = elems.len();
    if n == 0 {
        return report;
    }
    let d = |a: &M::Elem, b: &M::Elem| g.distance(a, b);
    let one = Rational::from_integer(1.into());
    let mut exact = true;

    let mut pair = |i: usize, j: usize, report: &mut CheckReport| -> Result<()> {
        let (x, y) = (&elems[i], &elems[j]);
        let dxy = d(x, y)?;
        exact &= dxy.as_exact().is_some();
        let dyx = d(y, x)?;
        if !close(&dxy, &dyx) {
            report.violation(format!("asymmetric: d({i},{j}) = {dxy} but d({j},{i}) = {dyx}"));
        }
        if dxy.to_f64() < -crate::rational::FLOAT_TOL {
            report.violation(format!("negative distance d({i},{j}) = {dxy}"));
        }
        if i == j && !dxy.is_zero() {
            report.violation(format!("d({i},{i}) = {dxy} is nonzero"));
        }
        // Lists are duplicate-free, so distinct positions are distinct elements.
        if i != j && dxy.is_zero() {
            report.violation(format!("distinct elements {i} and {j} at distance zero"));
        }
        if dxy.gt(&one) && dxy.to_f64() > 1.0 + crate::rational::FLOAT_TOL {
            report.violation(format!("diameter exceeded: d({i},{j}) = {dxy}"));
        }
        Ok(())
    };

    let triple = |gi: usize, i: usize, j: usize, report: &mut CheckReport| -> Result<()> {
        let (h, x, y) = (&elems[gi], &elems[i], &elems[j]);
        let dxy = d(x, y)?;
        let left = d(&g.mul(h, x), &g.mul(h, y))?;
        let right = d(&g.mul(x, h), &g.mul(y, h))?;
        if !close(&left, &dxy) || !close(&right, &dxy) {
            report.violation(format!("not bi-invariant at g={gi}, x={i}, y={j}: d(gx,gy)={left}, d(x,y)={dxy}, d(xg,yg)={right}"));
        }
        let via = sum(&d(x, h)?, &d(h, y)?);
        if dxy.to_f64() > via.to_f64() + crate::rational::FLOAT_TOL || exact_gt(&dxy, &via) {
            report.violation(format!("triangle inequality fails: d({i},{j}) > d({i},{gi}) + d({gi},{j})"));
        }
        Ok(())
    };

    let mut run = |report: &mut CheckReport| -> Result<()> {
        match sweep {
            Sweep::Exhaustive => {
                for i in 0..n {
                    for j in 0..n {
                        pair(i, j, report)?;
                    }
                }
                for gi in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            triple(gi, i, j, report)?;
                        }
                    }
                }
            }
            Sweep::Sampled { count, .. } => {
                for _ in 0..*count {
                    let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                    pair(a, b, report)?;
                    triple(c, a, b, report)?;
                }
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.violation(format!("evaluation error: {e}"));
    }
    if let Sweep::Sampled { count, seed } = sweep {
        report.note(format!("sampled {count} triples with seed {seed}"));
        report.approximate = true;
    } else {
        report.note(format!("exhaustive over {} triples", n * n * n));
    }
    report
}

fn close(a: &Distance, b: &Distance) -> bool {
    match (a, b) {
        (Distance::Exact(x), Distance::Exact(y)) => x == y,
        _ => (a.to_f64() - b.to_f64()).abs() <= 1e-9 * (1.0 + a.to_f64().abs()),
    }
}

fn sum(a: &Distance, b: &Distance) -> Distance {
    match (a, b) {
        (Distance::Exact(x), Distance::Exact(y)) => Distance::Exact(x + y),
        _ => Distance::Float(a.to_f64() + b.to_f64()),
    }
}

fn exact_gt(a: &Distance, b: &Distance) -> bool {
    matches!((a, b), (Distance::Exact(x), Distance::Exact(y)) if x > y)
}

/// Largest `d(x, e)` over a list, with the index of the witness.
pub fn max_distance_to_identity<M: MetricGroup>(g: &M, elems: &[M::Elem]) -> Result<Extremum> {
    let mut ext = Extremum::largest();
    for (i, x) in elems.iter().enumerate() {
        ext.offer(&g.distance_to_identity(x)?, || format!("#{i}"));
    }
    Ok(ext)
}

/// `|d_H(σ, τ) − ½ d_HS(P(σ), P(τ))²|` over all of `Sym(n)²`, with the
/// largest gap as the defect.
pub fn check_hamming_hs_bridge(n: usize, tol: f64) -> CheckReport {
    use crate::perm::{hamming_distance, Perm};
    let perms = Perm::all(n);
    let mats: Vec<UnitaryMatrix> = perms.iter().map(UnitaryMatrix::permutation).collect();
    let mut r = CheckReport::new(format!("Hamming distance is half the squared HS distance on Sym({n})"));
    let mut worst = Extremum::largest();
    for (i, s) in perms.iter().enumerate() {
        for (j, t) in perms.iter().enumerate() {
            let h = crate::rational::to_f64(&hamming_distance(s, t).expect("same degree"));
            let gap = match hs_distance(&mats[i], &mats[j]) {
                Ok(d) => (h - 0.5 * d * d).abs(),
                Err(e) => {
                    r.violation(format!("({i}, {j}): {e}"));
                    continue;
                }
            };
            if gap > tol {
                r.violation(format!("({}, {}): gap {gap:e}", s, t));
            }
            worst.offer(&Distance::Float(gap), || format!("{s}, {t}"));
        }
    }
    r.note(format!("{} pairs, tolerance {tol:e}", perms.len() * perms.len()));
    if let Some(v) = worst.value {
        r = r.with_defect(v, worst.witness);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_hs_bridge() {
        for n in 1..=4 {
            let r = check_hamming_hs_bridge(n, 1e-9);
            assert!(r.passed(), "{}", r.to_text());
        }
        // A transposition in Sym(2): Hamming 1, HS² = 2.
        let t = UnitaryMatrix::permutation(&crate::perm::Perm::transposition(2, 0, 1));
        let d = hs_distance(&t, &UnitaryMatrix::identity(2)).unwrap();
        assert!((d * d - 2.0).abs() < 1e-12);
    }
}
