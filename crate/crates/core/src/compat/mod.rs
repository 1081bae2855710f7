//! Product maps and base/acting map pairs for the four metric families, their
//! projective pseudo-metrics, and the checkers for both compatibility notions.
//!
//! Acting maps use `ψ(σ)[(a_x)_x] = (a_{σ⁻¹(x)})_x`, which makes `ψ` a
//! homomorphism under `σ ∘ τ` composition; the conjugation identity then reads
//! `ψ(σ) τ((g_x)_x) ψ(σ)⁻¹ = τ((g_{σ⁻¹(x)})_x)`.

pub mod check;
pub mod family;
pub mod pseudo;

pub use check::{
    check_conjugation_identity, check_linear_product_bounds, check_product_compatibility, check_sofic_product_formula, check_wreath_compatibility,
    random_perm, transfer_multiplicativity,
};
pub use family::{CompatFamily, Elem, Hyperlinear, LinearSofic, Sofic, WeakSofic};
pub use pseudo::{pseudo_hs_distance, PseudoRank};

use num_complex::Complex64;
use rand::Rng as _;

use crate::metric::{matrix::all_invertible, Matrix, PrimeField, SymElem, UnitaryMatrix};
use crate::perm::Perm;
use crate::rng::Rng;

/// Every element of `Sym(a)` as explicit structured permutations.
pub fn sofic_pool(a: usize) -> Vec<SymElem> {
    Perm::all(a).into_iter().map(SymElem::Explicit).collect()
}

/// `count` random permutations of `a` points plus the identity.
pub fn sofic_sample_pool(a: usize, count: usize, rng: &mut Rng) -> Vec<SymElem> {
    let mut out = vec![SymElem::Explicit(Perm::identity(a))];
    out.extend((0..count).map(|_| SymElem::Explicit(random_perm(a, rng))));
    out
}

/// All of `GL_m(F_p)` when small, otherwise random invertible matrices
/// including the identity and every elementary transvection.
pub fn linear_pool(field: &PrimeField, m: usize, count: usize, rng: &mut Rng) -> Vec<Matrix<PrimeField>> {
    if (field.p as u64).pow((m * m) as u32) <= 4096 {
        return all_invertible(field, m);
    }
    let mut out = vec![Matrix::identity(field, m)];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let mut t = Matrix::identity(field, m);
                t.entries[i * m + j] = 1;
                out.push(t);
            }
        }
    }
    while out.len() < count {
        let entries = (0..m * m).map(|_| rng.gen_range(0..field.p)).collect();
        let a = Matrix::from_entries(field, m, entries).expect("square");
        if a.is_invertible() {
            out.push(a);
        }
    }
    out
}

/// Random unitaries plus near-identity diagonal phases.
pub fn unitary_pool(m: usize, count: usize, rng: &mut Rng) -> Vec<UnitaryMatrix> {
    let mut out = vec![UnitaryMatrix::identity(m)];
    for k in 1..=4 {
        let t = 1e-3 * k as f64;
        out.push(UnitaryMatrix::diag(&(0..m).map(|i| Complex64::from_polar(1.0, t * (i as f64 + 1.0))).collect::<Vec<_>>()));
    }
    out.extend((0..count).map(|_| UnitaryMatrix::random(m, rng)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{
        matrix::rank_distance, FiniteMetricGroup, GeneralLinear, MetricGroup, Shape, Sweep, SymmetricGroup, UnitaryGroup, WeakElem, WeakGroup,
    };
    use crate::rational::{rat, rat_int, Distance, Rational};
    use crate::rng::seeded;

    fn sym(n: usize) -> SymmetricGroup {
        SymmetricGroup::points(n)
    }

    #[test]
    fn sofic_product_examples() {
        let (a, b) = (sym(2), sym(3));
        let d = Sofic.product_map(&a, &b, &SymElem::Identity, &SymElem::Identity);
        let g = Sofic.product_group(&a, &b);
        assert_eq!(g.distance_to_identity(&d).unwrap(), Distance::zero());
        let s = SymElem::Explicit(Perm::transposition(2, 0, 1));
        let t = SymElem::Explicit(Perm::transposition(3, 0, 1));
        assert_eq!(g.distance_to_identity(&Sofic.product_map(&a, &b, &s, &t)).unwrap(), Distance::Exact(rat_int(1)));
    }

    #[test]
    fn sofic_product_formula_on_small_groups() {
        let (a, b) = (sym(2), sym(3));
        let g = Sofic.product_group(&a, &b);
        for x in sofic_pool(2) {
            for y in sofic_pool(3) {
                let dx = a.distance_to_identity(&x).unwrap().as_exact().unwrap().clone();
                let dy = b.distance_to_identity(&y).unwrap().as_exact().unwrap().clone();
                let d = g.distance_to_identity(&Sofic.product_map(&a, &b, &x, &y)).unwrap();
                assert_eq!(d, Distance::Exact(&dx + &dy - &dx * &dy));
            }
        }
    }

    #[test]
    fn product_compatibility_passes_exhaustively() {
        let mut rng = seeded(1, 0);
        let eps = [rat(1, 2), rat(1, 5)];
        let r = check_product_compatibility(&Sofic, &sym(3), &sym(3), &sofic_pool(3), &sofic_pool(3), &Sweep::Exhaustive, &eps, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
        let f2 = PrimeField::new(2).unwrap();
        let gl = GeneralLinear::new(f2, 2);
        let pool = all_invertible(&f2, 2);
        let r = check_product_compatibility(&LinearSofic { field: f2 }, &gl, &gl, &pool, &pool, &Sweep::Exhaustive, &eps, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn linear_product_example_over_f3() {
        let f3 = PrimeField::new(3).unwrap();
        let gl1 = GeneralLinear::new(f3, 1);
        let fam = LinearSofic { field: f3 };
        let two = Matrix::scalar(&f3, 1, 2);
        let d = fam.product_map(&gl1, &gl1, &two, &two);
        assert_eq!(d.n, 4);
        // diag(2,1) ⊗ diag(2,1) = diag(4,2,2,1) = diag(1,2,2,1) over F_3.
        assert_eq!(rank_distance(&d, &Matrix::identity(&f3, 4)).unwrap(), rat(1, 2));
    }

    #[test]
    fn dropping_the_hat_breaks_the_lower_bound() {
        // Plain A ⊗ B sends (2I, 2I) over F_3 to 4I = I.
        let f3 = PrimeField::new(3).unwrap();
        let two = Matrix::scalar(&f3, 2, 2);
        let plain = two.kron(&two);
        assert_eq!(rank_distance(&plain, &Matrix::identity(&f3, 4)).unwrap(), rat(0, 1));
        assert_eq!(PrimeField::pseudo_rank_distance(&two, &Matrix::identity(&f3, 2)).unwrap(), rat(0, 1));
        let hatted = two.hat().kron(&two.hat());
        assert!(rank_distance(&hatted, &Matrix::identity(&f3, 16)).unwrap() >= rat(1, 4));
    }

    #[test]
    fn hat_halves_the_rank_distance() {
        for p in [2, 3] {
            let f = PrimeField::new(p).unwrap();
            for a in all_invertible(&f, 2) {
                let lhs = rank_distance(&a.hat(), &Matrix::identity(&f, 4)).unwrap();
                let rhs = rank_distance(&a, &Matrix::identity(&f, 2)).unwrap() / rat_int(2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    /// Without hats the pseudo-rank of a tensor can fall below both factors:
    /// the order-3 element of `GL_2(F_2)` has no eigenvalue, but `M ⊗ M` fixes
    /// a plane.
    #[test]
    fn tensor_pseudo_rank_needs_the_hat() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_rows(&f2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let i2 = Matrix::identity(&f2, 2);
        assert_eq!(PrimeField::pseudo_rank_distance(&m, &i2).unwrap(), rat(1, 1));
        assert_eq!(PrimeField::pseudo_rank_distance(&m.kron(&m), &Matrix::identity(&f2, 4)).unwrap(), rat(1, 2));
        let all = all_invertible(&f2, 2);
        for a in &all {
            for b in &all {
                let t = rank_distance(&a.hat().kron(&b.hat()), &Matrix::identity(&f2, 16)).unwrap();
                let x = rank_distance(a, &i2).unwrap();
                let y = rank_distance(b, &i2).unwrap();
                assert!(t >= x.clone().max(y.clone()) / rat_int(4));
                // Oracle upper bound from the kernel of a tensor.
                assert!(t <= (rat_int(2) * &x + rat_int(2) * &y - &x * &y) / rat_int(4));
            }
        }
    }

    #[test]
    fn hs_hat_bound_on_random_unitaries() {
        let mut rng = seeded(5, 0);
        for i in 0..200 {
            let m = 1 + i % 3;
            let a = UnitaryMatrix::random(m, &mut rng);
            let lhs = pseudo_hs_distance(&a.hat(), &UnitaryMatrix::identity(2 * m)).unwrap();
            let rhs = crate::metric::hs_distance(&a, &UnitaryMatrix::identity(m)).unwrap() / 4.0;
            assert!(lhs >= rhs - 1e-6, "{lhs} < {rhs}");
        }
    }

    #[test]
    fn sofic_acting_map_on_two_coordinates() {
        let g = sym(2);
        let w = Sofic.wreath_group(&g, 2);
        let psi = Sofic.acting_map(&g, 2, &Perm::transposition(2, 0, 1));
        assert_eq!(w.distance_to_identity(&psi).unwrap(), Distance::Exact(rat(1, 2)));
        assert!(w.distance_to_identity(&Sofic.base_map(&g, &[SymElem::Identity, SymElem::Identity])).unwrap().is_zero());
    }

    #[test]
    fn sofic_conjugation_identity_pointwise() {
        let g = sym(2);
        let n = 3;
        let shape = Shape::power(Shape::Points(2), n);
        let mut rng = seeded(2, 0);
        let blocks: Vec<SymElem> = (0..n).map(|_| SymElem::Explicit(random_perm(2, &mut rng))).collect();
        let s = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let w = Sofic.wreath_group(&g, n);
        let psi = Sofic.acting_map(&g, n, &s);
        let lhs = w.mul(&w.mul(&psi, &Sofic.base_map(&g, &blocks)), &w.inv(&psi));
        let si = s.inverse();
        let rhs = Sofic.base_map(&g, &(0..n).map(|x| blocks[si.apply(x)].clone()).collect::<Vec<_>>());
        let mut pts = 0;
        for a in 0..2u32 {
            for b in 0..2u32 {
                for c in 0..2u32 {
                    assert_eq!(lhs.apply(&shape, &[a, b, c]), rhs.apply(&shape, &[a, b, c]));
                    pts += 1;
                }
            }
        }
        assert_eq!(pts, 8);
    }

    #[test]
    fn linear_acting_map_example() {
        let f3 = PrimeField::new(3).unwrap();
        let g = GeneralLinear::new(f3, 1);
        let fam = LinearSofic { field: f3 };
        let psi = fam.acting_map(&g, 2, &Perm::transposition(2, 0, 1));
        assert_eq!(psi, Matrix::from_rows(&f3, &[vec![0, 1], vec![1, 0]]).unwrap());
        assert_eq!(rank_distance(&psi, &Matrix::identity(&f3, 2)).unwrap(), rat(1, 2));
    }

    #[test]
    fn acting_map_rank_is_m_times_k_minus_cycles() {
        let f = PrimeField::new(5).unwrap();
        for m in 1..=3 {
            let g = GeneralLinear::new(f, m);
            let fam = LinearSofic { field: f };
            for k in 1..=4 {
                for s in Perm::all(k) {
                    let psi = fam.acting_map(&g, k, &s);
                    let rank = psi.sub(&Matrix::identity(&f, m * k)).rank();
                    assert_eq!(rank, m * (k - s.cycle_count()), "m={m} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn base_map_rank_is_additive() {
        let f = PrimeField::new(2).unwrap();
        let g = GeneralLinear::new(f, 2);
        let fam = LinearSofic { field: f };
        let all = all_invertible(&f, 2);
        for a in &all {
            for b in &all {
                let t = fam.base_map(&g, &[a.clone(), b.clone()]);
                let lhs = rank_distance(&t, &Matrix::identity(&f, 4)).unwrap();
                let id = Matrix::identity(&f, 2);
                let rhs = (rank_distance(a, &id).unwrap() + rank_distance(b, &id).unwrap()) / rat_int(2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn weak_acting_map_is_isometric() {
        let z2 = WeakGroup::finite(FiniteMetricGroup::cyclic_discrete(2));
        let w = WeakSofic.wreath_group(&z2, 2);
        for s1 in Perm::all(2) {
            for s2 in Perm::all(2) {
                let d = w.distance(&WeakSofic.acting_map(&z2, 2, &s1), &WeakSofic.acting_map(&z2, 2, &s2)).unwrap();
                assert_eq!(d, Distance::Exact(crate::perm::hamming_distance(&s1, &s2).unwrap()));
            }
        }
    }

    #[test]
    fn wreath_compatibility_passes_for_all_families() {
        let eps = rat(1, 2);
        let c = rat(1, 4);
        let mut rng = seeded(9, 0);
        let r = check_wreath_compatibility(&Sofic, &sym(3), 3, &sofic_pool(3), &eps, &c, 50, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
        let f3 = PrimeField::new(3).unwrap();
        let pool = linear_pool(&f3, 2, 0, &mut rng);
        let r = check_wreath_compatibility(&LinearSofic { field: f3 }, &GeneralLinear::new(f3, 2), 4, &pool, &eps, &c, 50, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
        let pool = unitary_pool(2, 10, &mut rng);
        let r = check_wreath_compatibility(&Hyperlinear, &UnitaryGroup { dim: 2 }, 3, &pool, &eps, &c, 50, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
        let s3 = WeakGroup::finite(FiniteMetricGroup::symmetric_hamming(3));
        let pool = s3.elements();
        let r = check_wreath_compatibility(&WeakSofic, &s3, 4, &pool, &eps, &c, 50, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
    }

    /// With `δ = ε = 1/2` the linear base-map continuity clause fails: three of
    /// four coordinates at distance 3/8 < δ and the fourth at distance one.
    #[test]
    fn single_modulus_reading_of_wreath_continuity_is_refuted() {
        let f = PrimeField::new(3).unwrap();
        let fam = LinearSofic { field: f };
        let g = GeneralLinear::new(f, 8);
        let eps = rat(1, 2);
        let id = Matrix::identity(&f, 8);
        let mut near = id.clone();
        for i in 0..3 {
            near.entries[i * 8 + (i + 3)] = 1;
        }
        assert_eq!(rank_distance(&near, &id).unwrap(), rat(3, 8));
        let far = Matrix::scalar(&f, 8, 2);
        assert_eq!(rank_distance(&far, &id).unwrap(), rat(1, 1));
        // |X| = 3 > (1 - 1/2) * 4.
        let w = fam.wreath_group(&g, 4);
        let d = w.distance_to_identity(&fam.base_map(&g, &[near.clone(), near.clone(), near, far])).unwrap();
        assert_eq!(d, Distance::Exact(rat(17, 32)));
        assert!(!d.lt(&eps));
        // The shipped modulus excludes this configuration.
        assert_eq!(fam.wreath_delta(&eps, 4), rat(1, 4));
    }

    #[test]
    fn conjugation_identity_on_seeded_suites() {
        let mut rng = seeded(4, 0);
        assert!(check_conjugation_identity(&Sofic, &sym(4), 4, &sofic_pool(4), 100, &mut rng).passed());
        let f5 = PrimeField::new(5).unwrap();
        let pool = linear_pool(&f5, 2, 40, &mut rng);
        assert!(check_conjugation_identity(&LinearSofic { field: f5 }, &GeneralLinear::new(f5, 2), 4, &pool, 100, &mut rng).passed());
        let pool = unitary_pool(3, 20, &mut rng);
        assert!(check_conjugation_identity(&Hyperlinear, &UnitaryGroup { dim: 3 }, 3, &pool, 100, &mut rng).passed());
        let z3 = WeakGroup::finite(FiniteMetricGroup::cyclic_discrete(3));
        assert!(check_conjugation_identity(&WeakSofic, &z3, 4, &z3.elements(), 100, &mut rng).passed());
        let id = WeakSofic.base_map(&z3, &vec![WeakElem::Atom(0); 4]);
        assert_eq!(id, WeakSofic.wreath_group(&z3, 4).identity());
    }

    #[test]
    fn transfer_bounds() {
        use crate::approx::{measure_defects, ApproximationMap};
        use crate::group::Integers;
        // Sofic inputs with known defects: truncated shifts.
        let mut a = crate::approx::cyclic_shift_map(5, -1..=2);
        a.table.insert(2, SymElem::Identity);
        let b = crate::approx::cyclic_shift_map(3, -1..=2);
        let x = measure_defects(&Integers, &a).unwrap().eps_max.as_exact().unwrap().clone();
        let y = measure_defects(&Integers, &b).unwrap().eps_max.as_exact().unwrap().clone();
        let t = transfer_multiplicativity(&Sofic, &a, &b).unwrap();
        let out = measure_defects(&Integers, &t).unwrap().eps_max;
        assert!(out.le(&(&x + &y - &x * &y)));
        // Weak: max of input defects.
        let z4 = WeakGroup::finite(FiniteMetricGroup::cyclic_discrete(4));
        let pa = ApproximationMap::from_fn(z4.clone(), 0..4i64, |&k| WeakElem::Atom(k.rem_euclid(4) as usize));
        let pb = ApproximationMap::from_fn(z4.clone(), 0..4i64, |&k| WeakElem::Atom(if k == 3 { 0 } else { k as usize }));
        let t = transfer_multiplicativity(&WeakSofic, &pa, &pb).unwrap();
        let c4 = crate::group::Cyclic::new(4);
        let da = measure_defects(&c4, &pa).unwrap().eps_max;
        let db = measure_defects(&c4, &pb).unwrap().eps_max;
        assert_eq!(measure_defects(&c4, &t).unwrap().eps_max, da.max(db));
        let short = pb.restrict(|k| *k < 2);
        assert!(transfer_multiplicativity(&WeakSofic, &pa, &short).is_err());
        let _: Rational = rat(0, 1);
    }

    #[test]
    fn sofic_product_formula_small() {
        let r = check_sofic_product_formula(2, 3);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.notes[0], "144 quadruples, two routes each");
    }

    #[test]
    fn linear_product_bounds_over_f2_and_f3() {
        let r = check_linear_product_bounds(2, 2);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.notes[0], "36 pairs");
        assert!(check_linear_product_bounds(3, 1).passed());
    }
}
