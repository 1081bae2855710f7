//! Checkers for product maps and base/acting map pairs, and the transfer of
//! multiplicativity through a product map.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::approx::ApproximationMap;
use crate::error::{mismatch, Result};
use crate::metric::{MetricGroup, Sweep};
use crate::perm::Perm;
use crate::rational::{from_f64, Distance, Rational};
use crate::report::{CheckReport, Extremum};
use crate::rng::Rng;

use super::family::{CompatFamily, Elem};

fn within(d: &Distance, tol: f64) -> bool {
    match d {
        Distance::Exact(r) => num_traits::Zero::is_zero(r),
        _ => d.to_f64() <= tol,
    }
}

fn scaled_max(mu: &Rational, x: &Distance, y: &Distance) -> Distance {
    match (x, y) {
        (Distance::Exact(a), Distance::Exact(b)) => Distance::Exact(mu * a.max(b)),
        _ => Distance::Float(crate::rational::to_f64(mu) * x.to_f64().max(y.to_f64())),
    }
}

fn index_pairs(na: usize, nb: usize, sweep: &Sweep, rng: &mut Rng) -> Vec<(usize, usize)> {
    match sweep {
        Sweep::Exhaustive => (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).collect(),
        Sweep::Sampled { count, .. } => (0..*count).map(|_| (rng.gen_range(0..na), rng.gen_range(0..nb))).collect(),
    }
}

/// Homomorphism, continuity (a) and the `μ` lower bound (b) of the family's
/// product map on `pool_a × pool_b`.
///
/// By bi-invariance and the homomorphism property, (a) and (b) reduce to
/// distances from the identity, so each pair `(x, y)` stands for all pairs
/// with quotients `(x, y)`; exhaustive pools that are whole groups give a
/// complete check.
#[allow(clippy::too_many_arguments)]
pub fn check_product_compatibility<C: CompatFamily>(
    fam: &C,
    ga: &C::Group,
    gb: &C::Group,
    pool_a: &[Elem<C>],
    pool_b: &[Elem<C>],
    sweep: &Sweep,
    eps_list: &[Rational],
    rng: &mut Rng,
) -> CheckReport {
    let target = fam.product_group(ga, gb);
    let tol = fam.tolerance();
    let delta = |x: &Elem<C>, y: &Elem<C>| fam.product_map(ga, gb, x, y);
    let mut top =
        CheckReport::new(format!("{}-product map {} x {} -> {} (mu = {})", fam.name(), ga.describe(), gb.describe(), target.describe(), fam.mu()));
    if pool_a.is_empty() || pool_b.is_empty() {
        return top.fail("empty element pool");
    }

    let mut hom = CheckReport::new("product map is a homomorphism");
    let mut worst = Extremum::largest();
    let quads: Vec<(usize, usize, usize, usize)> = match sweep {
        Sweep::Exhaustive => {
            let pa = index_pairs(pool_a.len(), pool_a.len(), sweep, rng);
            let pb = index_pairs(pool_b.len(), pool_b.len(), sweep, rng);
            pa.iter().flat_map(|&(a1, a2)| pb.iter().map(move |&(b1, b2)| (a1, b1, a2, b2))).collect()
        }
        Sweep::Sampled { count, .. } => (0..*count)
            .map(|_| (rng.gen_range(0..pool_a.len()), rng.gen_range(0..pool_b.len()), rng.gen_range(0..pool_a.len()), rng.gen_range(0..pool_b.len())))
            .collect(),
    };
    for (a1, b1, a2, b2) in quads {
        let (x1, y1, x2, y2) = (&pool_a[a1], &pool_b[b1], &pool_a[a2], &pool_b[b2]);
        let lhs = delta(&ga.mul(x1, x2), &gb.mul(y1, y2));
        let rhs = target.mul(&delta(x1, y1), &delta(x2, y2));
        match target.distance(&lhs, &rhs) {
            Ok(d) => {
                if !within(&d, tol) {
                    hom.violation(format!("Delta(x{a1} x{a2}, y{b1} y{b2}) differs from Delta(x{a1}, y{b1}) Delta(x{a2}, y{b2}) by {d}"));
                }
                worst.offer(&d, || format!("x{a1}, y{b1}, x{a2}, y{b2}"));
            }
            Err(e) => hom.violation(format!("evaluation error: {e}")),
        }
    }
    if let Some(d) = worst.value {
        hom = hom.with_defect(d, worst.witness);
    }
    top.push_child(hom);

    // Distances from the identity, computed once per pair.
    let pairs = index_pairs(pool_a.len(), pool_b.len(), sweep, rng);
    let mut rows = Vec::with_capacity(pairs.len());
    let mut errors = Vec::new();
    for &(i, j) in &pairs {
        let (x, y) = (&pool_a[i], &pool_b[j]);
        match (ga.distance_to_identity(x), gb.distance_to_identity(y), target.distance_to_identity(&delta(x, y))) {
            (Ok(dx), Ok(dy), Ok(dd)) => rows.push((i, j, dx, dy, dd)),
            (a, b, c) => errors.push(format!(
                "evaluation error at (x{i}, y{j}): {}",
                [a.err(), b.err(), c.err()].into_iter().flatten().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
            )),
        }
    }

    let mu = fam.mu();
    let mut lower = CheckReport::new(format!("(b) d(Delta(x, y), e) >= {mu} max(d(x, e), d(y, e))"));
    let mut slack = Extremum::smallest();
    for (i, j, dx, dy, dd) in &rows {
        let bound = scaled_max(&mu, dx, dy);
        let ok = match (dd, &bound) {
            (Distance::Exact(a), Distance::Exact(b)) => a >= b,
            _ => dd.to_f64() >= bound.to_f64() - tol,
        };
        if !ok {
            lower.violation(format!("at (x{i}, y{j}): d = {dd} below {bound}"));
        }
        let s = match (dd, &bound) {
            (Distance::Exact(a), Distance::Exact(b)) => Distance::Exact(a - b),
            _ => Distance::Float(dd.to_f64() - bound.to_f64()),
        };
        slack.offer(&s, || format!("x{i}, y{j}"));
    }
    for e in &errors {
        lower.violation(e.clone());
    }
    if let Some(s) = slack.value {
        lower.note(format!("minimum slack {s}"));
        lower.worst_witness = slack.witness;
    }
    top.push_child(lower);

    for eps in eps_list {
        let d = fam.product_delta(eps);
        let mut cont = CheckReport::new(format!("(a) continuity at eps = {eps} with delta = {d}"));
        let mut qualifying = 0usize;
        let mut worst = Extremum::largest();
        for (i, j, dx, dy, dd) in &rows {
            if dx.lt(&d) && dy.lt(&d) {
                qualifying += 1;
                if !dd.lt(eps) {
                    cont.violation(format!("at (x{i}, y{j}): factors within {d} but d(Delta, e) = {dd}"));
                }
                worst.offer(dd, || format!("x{i}, y{j}"));
            }
        }
        cont.note(format!("{qualifying} qualifying pairs"));
        if let Some(v) = worst.value {
            cont = cont.with_defect(v, worst.witness);
        }
        top.push_child(cont);
    }
    if let Sweep::Sampled { count, seed } = sweep {
        top.note(format!("sampled {count} pairs with seed {seed}"));
    }
    top
}

/// `d(Δ(σ₁, τ₁), Δ(σ₂, τ₂)) = x + y − xy` with `x = d(σ₁, σ₂)`,
/// `y = d(τ₁, τ₂)`, over all of `Sym(a)² × Sym(b)²`. The left side is
/// computed twice: from the structured product, and from the materialized
/// permutation of `a·b` points.
pub fn check_sofic_product_formula(a: usize, b: usize) -> CheckReport {
    use crate::metric::{Shape, SymElem, SymmetricGroup};
    use crate::perm::hamming_distance;
    let ga = SymmetricGroup::points(a);
    let gb = SymmetricGroup::points(b);
    let shape = Shape::product(ga.shape.clone(), gb.shape.clone());
    let target = SymmetricGroup::new(shape.clone());
    let sa = Perm::all(a);
    let sb = Perm::all(b);
    let flat = |x: &Perm, y: &Perm| -> Result<Perm> {
        SymElem::product(SymElem::Explicit(x.clone()), SymElem::Explicit(y.clone())).materialize(&shape, 1 << 20)
    };
    let mut r = CheckReport::new(format!("sofic product formula on Sym({a})^2 x Sym({b})^2"));
    let mut cases = 0usize;
    let flats: Vec<Vec<Perm>> = match sa.iter().map(|x| sb.iter().map(|y| flat(x, y)).collect::<Result<Vec<_>>>()).collect() {
        Ok(v) => v,
        Err(e) => return r.fail(format!("materialization failed: {e}")),
    };
    for (i1, s1) in sa.iter().enumerate() {
        for (i2, s2) in sa.iter().enumerate() {
            let x = hamming_distance(s1, s2).expect("same degree");
            for (j1, t1) in sb.iter().enumerate() {
                for (j2, t2) in sb.iter().enumerate() {
                    cases += 1;
                    let y = hamming_distance(t1, t2).expect("same degree");
                    let expected = &x + &y - &x * &y;
                    let d1 = SymElem::product(SymElem::Explicit(s1.clone()), SymElem::Explicit(t1.clone()));
                    let d2 = SymElem::product(SymElem::Explicit(s2.clone()), SymElem::Explicit(t2.clone()));
                    match target.distance(&d1, &d2) {
                        Ok(Distance::Exact(d)) if d == expected => {}
                        Ok(d) => r.violation(format!("structured: (s{i1}, t{j1}) vs (s{i2}, t{j2}) gives {d}, expected {expected}")),
                        Err(e) => r.violation(format!("structured: {e}")),
                    }
                    let d = hamming_distance(&flats[i1][j1], &flats[i2][j2]).expect("same degree");
                    if d != expected {
                        r.violation(format!("materialized: (s{i1}, t{j1}) vs (s{i2}, t{j2}) gives {d}, expected {expected}"));
                    }
                }
            }
        }
    }
    r.note(format!("{cases} quadruples, two routes each"));
    r
}

/// `¼ max(x, y) ≤ d(Δ(A, B), I) ≤ (2x + 2y − xy)/4` over all of
/// `GL_m(F_p)²`, with `x = d(A, I)`, `y = d(B, I)` in the rank metric.
pub fn check_linear_product_bounds(p: u32, m: usize) -> CheckReport {
    use super::family::LinearSofic;
    use crate::metric::{matrix::all_invertible, GeneralLinear, PrimeField};
    use crate::rational::rat;
    let mut r = CheckReport::new(format!("linear product map bounds on GL_{m}(F_{p})^2"));
    let field = match PrimeField::new(p) {
        Ok(f) => f,
        Err(e) => return r.fail(e.to_string()),
    };
    let fam = LinearSofic { field };
    let g = GeneralLinear::new(field, m);
    let pool = all_invertible(&field, m);
    let target = fam.product_group(&g, &g);
    let exact = |d: Result<Distance>| -> Result<Rational> {
        match d? {
            Distance::Exact(q) => Ok(q),
            other => Err(mismatch(format!("rank distance {other} is not exact"))),
        }
    };
    let mut low_slack = Extremum::smallest();
    let mut high_slack = Extremum::smallest();
    for (i, a) in pool.iter().enumerate() {
        for (j, b) in pool.iter().enumerate() {
            let vals = (|| {
                Ok::<_, crate::error::Error>((
                    exact(g.distance_to_identity(a))?,
                    exact(g.distance_to_identity(b))?,
                    exact(target.distance_to_identity(&fam.product_map(&g, &g, a, b)))?,
                ))
            })();
            let (x, y, t) = match vals {
                Ok(v) => v,
                Err(e) => {
                    r.violation(format!("(A{i}, B{j}): {e}"));
                    continue;
                }
            };
            let lower = x.clone().max(y.clone()) * rat(1, 4);
            let upper = (rat(2, 1) * &x + rat(2, 1) * &y - &x * &y) * rat(1, 4);
            if t < lower {
                r.violation(format!("(A{i}, B{j}): d = {t} below {lower}"));
            }
            if t > upper {
                r.violation(format!("(A{i}, B{j}): d = {t} above {upper}"));
            }
            low_slack.offer(&Distance::Exact(&t - &lower), || format!("A{i}, B{j}"));
            high_slack.offer(&Distance::Exact(&upper - &t), || format!("A{i}, B{j}"));
        }
    }
    r.note(format!("{} pairs", pool.len() * pool.len()));
    if let Some(v) = low_slack.value {
        r.note(format!("minimum slack above the lower bound {v} at {}", low_slack.witness.unwrap_or_default()));
    }
    if let Some(v) = high_slack.value {
        r.note(format!("minimum slack below the upper bound {v} at {}", high_slack.witness.unwrap_or_default()));
    }
    r
}

/// Random permutation of `{0, .., n-1}`.
pub fn random_perm(n: usize, rng: &mut Rng) -> Perm {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("shuffle is a bijection")
}

/// Random permutation moving at most `k` points.
fn random_perm_with_support(n: usize, k: usize, rng: &mut Rng) -> Perm {
    let mut pts: Vec<u32> = (0..n as u32).collect();
    pts.shuffle(rng);
    let moved = &pts[..k.min(n)];
    let mut shuffled = moved.to_vec();
    shuffled.shuffle(rng);
    let mut images: Vec<u32> = (0..n as u32).collect();
    for (a, b) in moved.iter().zip(&shuffled) {
        images[*a as usize] = *b;
    }
    Perm::from_images(images).expect("partial shuffle is a bijection")
}

fn pick<'a, T>(pool: &'a [T], rng: &mut Rng) -> &'a T {
    &pool[rng.gen_range(0..pool.len())]
}

/// `ψ(σ) τ((g_x)_x) ψ(σ)⁻¹ = τ((g_{σ⁻¹(x)})_x)` on `cases` seeded tuples.
pub fn check_conjugation_identity<C: CompatFamily>(
    fam: &C,
    inner: &C::Group,
    n: usize,
    pool: &[Elem<C>],
    cases: usize,
    rng: &mut Rng,
) -> CheckReport {
    let w = fam.wreath_group(inner, n);
    let mut r = CheckReport::new(format!("(c) conjugation identity in {} (n = {n})", w.describe()));
    let mut worst = Extremum::largest();
    for case in 0..cases {
        let g: Vec<Elem<C>> = (0..n).map(|_| pick(pool, rng).clone()).collect();
        let s = random_perm(n, rng);
        let psi = fam.acting_map(inner, n, &s);
        let lhs = w.mul(&w.mul(&psi, &fam.base_map(inner, &g)), &w.inv(&psi));
        let s_inv = s.inverse();
        let permuted: Vec<Elem<C>> = (0..n).map(|x| g[s_inv.apply(x)].clone()).collect();
        let rhs = fam.base_map(inner, &permuted);
        match w.distance(&lhs, &rhs) {
            Ok(d) => {
                if !within(&d, fam.tolerance()) {
                    r.violation(format!("case {case}: sigma = {s}, sides differ by {d}"));
                }
                worst.offer(&d, || format!("case {case}, sigma = {s}"));
            }
            Err(e) => r.violation(format!("case {case}: {e}")),
        }
    }
    r.note(format!("{cases} seeded cases"));
    match worst.value {
        Some(d) => r.with_defect(d, worst.witness),
        None => r,
    }
}

/// Definition-level check of a base/acting map pair on `n` coordinates:
/// homomorphism, (a) continuity and separation on planted agreement sets
/// `|X| > (1 − δ)n`, (b) continuity of `ψ`, and (c) the conjugation identity.
#[allow(clippy::too_many_arguments)]
pub fn check_wreath_compatibility<C: CompatFamily>(
    fam: &C,
    inner: &C::Group,
    n: usize,
    pool: &[Elem<C>],
    eps: &Rational,
    c: &Rational,
    cases: usize,
    rng: &mut Rng,
) -> CheckReport {
    let w = fam.wreath_group(inner, n);
    let delta = fam.wreath_delta(eps, n);
    let tol = fam.tolerance();
    let mut top = CheckReport::new(format!("{} base and acting maps into {} (eps = {eps}, delta = {delta}, c = {c})", fam.name(), w.describe()));
    if pool.is_empty() || n == 0 {
        return top.fail("empty element pool or n = 0");
    }
    let dist_e: Vec<Option<Distance>> = pool.iter().map(|x| inner.distance_to_identity(x).ok()).collect();
    let near: Vec<&Elem<C>> = pool.iter().zip(&dist_e).filter(|(_, d)| d.as_ref().is_some_and(|d| d.lt(&delta))).map(|(x, _)| x).collect();
    let far: Vec<&Elem<C>> = pool.iter().zip(&dist_e).filter(|(_, d)| d.as_ref().is_some_and(|d| d.gt(c))).map(|(x, _)| x).collect();
    let identity = inner.identity();

    let mut hom = CheckReport::new("base and acting maps are homomorphisms");
    for case in 0..cases {
        let g: Vec<Elem<C>> = (0..n).map(|_| pick(pool, rng).clone()).collect();
        let h: Vec<Elem<C>> = (0..n).map(|_| pick(pool, rng).clone()).collect();
        let gh: Vec<Elem<C>> = g.iter().zip(&h).map(|(a, b)| inner.mul(a, b)).collect();
        let s1 = random_perm(n, rng);
        let s2 = random_perm(n, rng);
        let checks = [
            w.distance(&fam.base_map(inner, &gh), &w.mul(&fam.base_map(inner, &g), &fam.base_map(inner, &h))),
            w.distance(&fam.acting_map(inner, n, &s1.compose(&s2)), &w.mul(&fam.acting_map(inner, n, &s1), &fam.acting_map(inner, n, &s2))),
        ];
        for (name, d) in ["tau", "psi"].iter().zip(checks) {
            match d {
                Ok(d) if within(&d, tol) => {}
                Ok(d) => hom.violation(format!("case {case}: {name} fails multiplicativity by {d}")),
                Err(e) => hom.violation(format!("case {case}: {e}")),
            }
        }
    }
    top.push_child(hom);

    // Smallest agreement set allowed: |X| > (1 − δ)n.
    let bound = (Rational::from_integer(1.into()) - &delta) * Rational::from_integer(n.into());
    let x_size: num_bigint::BigInt = bound.floor().to_integer() + 1;
    let x_size: usize = usize::try_from(x_size).unwrap_or(0).min(n);

    let mut cont = CheckReport::new(format!("(a) d(g_x, g'_x) < {delta} on |X| = {x_size} coordinates gives d(tau g, tau g') < {eps}"));
    let mut sep = CheckReport::new(format!("(a) d(g_x, g'_x) > {c} on |X| = {x_size} coordinates gives d(tau g, tau g') > (1 - {eps}) {c}"));
    let sep_bound = (Rational::from_integer(1.into()) - eps) * c;
    let mut worst_cont = Extremum::largest();
    let mut worst_sep = Extremum::smallest();
    for case in 0..cases {
        let mut coords: Vec<usize> = (0..n).collect();
        coords.shuffle(rng);
        let in_x: Vec<bool> = {
            let mut v = vec![false; n];
            for &x in &coords[..x_size] {
                v[x] = true;
            }
            v
        };
        let g: Vec<Elem<C>> = (0..n).map(|_| pick(pool, rng).clone()).collect();
        let near_k: Vec<Elem<C>> = (0..n)
            .map(|x| {
                if in_x[x] && !near.is_empty() {
                    (*pick(&near, rng)).clone()
                } else if in_x[x] {
                    identity.clone()
                } else {
                    pick(pool, rng).clone()
                }
            })
            .collect();
        let g2: Vec<Elem<C>> = g.iter().zip(&near_k).map(|(a, k)| inner.mul(a, k)).collect();
        match w.distance(&fam.base_map(inner, &g), &fam.base_map(inner, &g2)) {
            Ok(d) => {
                if !d.lt(eps) {
                    cont.violation(format!("case {case}: d = {d}"));
                }
                worst_cont.offer(&d, || format!("case {case}"));
            }
            Err(e) => cont.violation(format!("case {case}: {e}")),
        }
        if !far.is_empty() {
            let far_k: Vec<Elem<C>> = (0..n).map(|x| if in_x[x] { (*pick(&far, rng)).clone() } else { pick(pool, rng).clone() }).collect();
            let g3: Vec<Elem<C>> = g.iter().zip(&far_k).map(|(a, k)| inner.mul(a, k)).collect();
            match w.distance(&fam.base_map(inner, &g), &fam.base_map(inner, &g3)) {
                Ok(d) => {
                    if !d.gt(&sep_bound) {
                        sep.violation(format!("case {case}: d = {d}"));
                    }
                    worst_sep.offer(&d, || format!("case {case}"));
                }
                Err(e) => sep.violation(format!("case {case}: {e}")),
            }
        }
    }
    cont.note(format!("{} near-identity pool elements", near.len()));
    if far.is_empty() {
        sep.note("no pool element is farther than c from the identity; clause vacuous");
    }
    if let Some(d) = worst_cont.value {
        cont = cont.with_defect(d, worst_cont.witness);
    }
    if let Some(d) = worst_sep.value {
        sep = sep.with_defect(d, worst_sep.witness);
    }
    top.push_child(cont);
    top.push_child(sep);

    // (b): d_n(σ1, σ2) < δ means σ1⁻¹σ2 moves fewer than δn points.
    let max_moved = {
        let b = &delta * Rational::from_integer(n.into());
        let f = b.floor();
        let k = if f == b { f.to_integer() - 1 } else { f.to_integer() };
        usize::try_from(k.max(0.into())).unwrap_or(0)
    };
    let mut act = CheckReport::new(format!("(b) d_n(s1, s2) < {delta} gives d(psi s1, psi s2) < {eps}"));
    let mut worst_act = Extremum::largest();
    for case in 0..cases {
        let s1 = random_perm(n, rng);
        let s2 = s1.compose(&random_perm_with_support(n, max_moved, rng));
        match w.distance(&fam.acting_map(inner, n, &s1), &fam.acting_map(inner, n, &s2)) {
            Ok(d) => {
                if !d.lt(eps) {
                    act.violation(format!("case {case}: s1 = {s1}, s2 = {s2}, d = {d}"));
                }
                worst_act.offer(&d, || format!("s1 = {s1}, s2 = {s2}"));
            }
            Err(e) => act.violation(format!("case {case}: {e}")),
        }
    }
    act.note(format!("perturbations move at most {max_moved} points"));
    if let Some(d) = worst_act.value {
        act = act.with_defect(d, worst_act.witness);
    }
    top.push_child(act);

    top.push_child(check_conjugation_identity(fam, inner, n, pool, cases, rng));
    top
}

/// `Δ ∘ (φ_i × φ_j)` on the common domain.
pub fn transfer_multiplicativity<C: CompatFamily, D: Ord + Clone + std::fmt::Debug>(
    fam: &C,
    phi_i: &ApproximationMap<D, C::Group>,
    phi_j: &ApproximationMap<D, C::Group>,
) -> Result<ApproximationMap<D, C::Group>> {
    if !phi_i.table.keys().eq(phi_j.table.keys()) {
        return Err(mismatch("the two maps have different domains"));
    }
    let (ga, gb) = (&phi_i.codomain, &phi_j.codomain);
    let table = phi_i.table.iter().map(|(k, x)| (k.clone(), fam.product_map(ga, gb, x, &phi_j.table[k]))).collect();
    Ok(ApproximationMap::new(fam.product_group(ga, gb), table))
}

/// Exact rational from a float distance, for bounds comparisons in reports.
pub fn distance_as_rational(d: &Distance) -> Option<Rational> {
    match d {
        Distance::Exact(r) => Some(r.clone()),
        other => from_f64(other.to_f64()),
    }
}
