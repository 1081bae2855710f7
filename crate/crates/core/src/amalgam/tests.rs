use std::collections::{BTreeMap, BTreeSet};

use super::scenarios::*;
use super::*;
use crate::compat::Sofic;
use crate::graph::Graph;
use crate::group::{Cyclic, CyclicShift, IntShift, TrivialAction};
use crate::halo::{HaloAction, HaloElem, HaloGroup, HaloKind, VertexGroup};
use crate::metric::{SymElem, SymmetricGroup};

fn lamplighter_action() -> ShiftAction {
    HaloAction { points: IntShift, halo: HaloGroup::new(HaloKind::DirectSum(VertexGroup::Cyclic(2)), Graph::integers()) }
}

fn delta(x: i64) -> HaloElem {
    HaloElem::unit(x, 1)
}

fn empty_sum() -> HaloElem {
    HaloElem::Sum(BTreeMap::new())
}

#[test]
fn derivation_of_the_trivial_set() {
    let action = lamplighter_action();
    let (f1, f2) = derive_f1_f2(&action, &[(empty_sum(), 0)]);
    assert_eq!(f1, vec![empty_sum()]);
    assert_eq!(f2, vec![0]);
}

#[test]
fn derivation_for_lamplighter_generators() {
    let action = lamplighter_action();
    let f = vec![(delta(0), 0), (empty_sum(), 1), (empty_sum(), -1)];
    let (f1, f2) = derive_f1_f2(&action, &f);
    assert_eq!(f2, vec![-1, 0, 1]);
    let expected: BTreeSet<HaloElem> = [empty_sum(), delta(-1), delta(0), delta(1)].into();
    assert_eq!(f1.into_iter().collect::<BTreeSet<_>>(), expected);
}

#[test]
fn derivation_for_symmetric_enrichment_of_z4() {
    let action = HaloAction { points: CyclicShift::new(4), halo: HaloGroup::new(HaloKind::Sym, Graph::range(4)) };
    let e = HaloElem::Perm(BTreeMap::new());
    let f = vec![(HaloElem::perm_from_cycles(&[&[0, 1]]), 0), (e.clone(), 1)];
    let (f1, f2) = derive_f1_f2(&action, &f);
    assert_eq!(f2, vec![0, 1, 3]);
    // e and the three rotations of (0 1) that F2 reaches.
    let expected: BTreeSet<HaloElem> =
        [e, HaloElem::perm_from_cycles(&[&[0, 1]]), HaloElem::perm_from_cycles(&[&[1, 2]]), HaloElem::perm_from_cycles(&[&[3, 0]])].into();
    assert_eq!(f1.into_iter().collect::<BTreeSet<_>>(), expected);
}

#[test]
fn every_element_factors_through_f1_f2() {
    let action = lamplighter_action();
    let semi = Semidirect::new(action.clone());
    let f = shift_ball(&action, 2).unwrap();
    let (f1, f2) = derive_f1_f2(&action, &f);
    for x in &f {
        let found = f1.iter().any(|k| f2.iter().any(|g| semi.mul(&(k.clone(), 0), &(action.halo.identity(), *g)) == *x));
        assert!(found, "{x:?}");
    }
}

#[test]
fn budget_matches_a_hand_computation() {
    // Sofic moduli: product eps/2, wreath eps/(2n).
    let b = solve_budget(&Sofic, &rat(1, 4), 16, 5);
    assert_eq!(b.eps3, rat(1, 8));
    assert_eq!(b.condition, rat(1, 48));
    assert_eq!(b.wreath_input, rat(1, 48 * 32));
    assert_eq!(b.eps2, rat(1, 3072));
    assert_eq!(b.eps1, rat(1, 3072 * 6));
}

#[test]
fn four_conditions_vanish_for_a_homomorphism() {
    // Z/2 x Z/2 acting on its four elements by translation.
    let action = TrivialAction { gamma: Cyclic::new(2), delta: Cyclic::new(2) };
    let semi = Semidirect::new(action.clone());
    let cod = SymmetricGroup::points(4);
    let sigma = |x: &(i64, i64)| -> crate::Result<SymElem> {
        let images = (0..4u32).map(|p| ((p & 1) ^ x.0 as u32) | (((p >> 1) ^ x.1 as u32) << 1)).collect();
        Ok(SymElem::Explicit(Perm::from_images(images)?))
    };
    let f = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
    let r = check_hayes_sale_conditions(&semi, &cod, &sigma, &f, &[0, 1], &[0, 1], &rat(1, 2));
    assert!(r.passed(), "{}", r.to_text());
    for c in &r.children {
        assert!(c.defect.as_ref().is_some_and(|d| d.is_zero()), "{}", c.check);
    }
}

#[test]
fn lamplighter_pipeline_passes_exactly() {
    let run = symmetric_enrichment_pipeline(&HaloShiftScenario::lamplighter()).unwrap();
    let r = &run.report;
    assert!(r.passed, "{}", r.to_text());
    assert!(r.clauses.passed(), "{}", r.to_text());
    assert!(r.measured_eps.is_zero());
    assert_eq!(r.c_double_prime, rat(1, 2));
    assert!(r.separation.as_ref().unwrap().ge(&rat(1, 2)));
    assert_eq!(r.sizes.a, 16);
    assert_eq!(r.sizes.e, 12);
    assert!(run.setup.lift_check.passed());
}

#[test]
fn lampshuffler_pipeline_passes() {
    let run = symmetric_enrichment_pipeline(&HaloShiftScenario::lampshuffler()).unwrap();
    let r = &run.report;
    assert!(r.passed, "{}", r.to_text());
    assert_eq!(r.c, rat(1, 8));
    assert_eq!(r.c_double_prime, rat(1, 16));
    assert!(r.measured_eps.is_zero());
}

#[test]
fn alternating_enrichment_passes() {
    let sc = HaloShiftScenario { kind: HaloKind::Alt, ..HaloShiftScenario::lamplighter() };
    let run = symmetric_enrichment_pipeline(&sc).unwrap();
    assert!(run.report.passed, "{}", run.report.to_text());
}

#[test]
fn small_orbit_modulus_is_rejected() {
    // E spans eleven points, so reduction mod 8 is not injective on the window.
    let sc = HaloShiftScenario { orbit_modulus: 8, ..HaloShiftScenario::lamplighter() };
    let err = symmetric_enrichment_pipeline(&sc).unwrap_err();
    assert!(err.to_string().contains("does not cover"), "{err}");
}

#[test]
fn theta_that_wraps_around_aborts() {
    // Rotation of 2 points sends 2 to the identity.
    let sc = HaloShiftScenario { theta_degree: 2, ..HaloShiftScenario::lamplighter() };
    let err = symmetric_enrichment_pipeline(&sc).unwrap_err();
    assert!(err.to_string().contains("theta on F2"), "{err}");
}

#[test]
fn sigma_hat_is_identity_off_s0_and_on_e() {
    let sc = HaloShiftScenario::lamplighter();
    let setup = halo_shift_setup(&sc).unwrap();
    let sigma = sigma_on_window(&setup).unwrap();
    let s0: BTreeSet<usize> = (0..8).collect();
    let hat = build_sigma_hat(&sigma, &setup.auto, &s0, &setup.e).unwrap();
    let id = hat[&empty_sum()].clone();
    assert!(id.iter().all(|x| sigma.codomain.distance_to_identity(x).unwrap().is_zero()));
    let d0 = &hat[&delta(0)];
    for a in 8..16 {
        assert_eq!(d0[a], SymElem::Identity);
    }
    for a in 0..8 {
        assert!(!sigma.codomain.distance_to_identity(&d0[a]).unwrap().is_zero());
    }
}

#[test]
fn sigma_hat_blocks_are_window_shifts() {
    let setup = halo_shift_setup(&HaloShiftScenario::lamplighter()).unwrap();
    let sigma = sigma_on_window(&setup).unwrap();
    let all: BTreeSet<usize> = (0..16).collect();
    let hat = build_sigma_hat(&sigma, &setup.auto, &all, &setup.e).unwrap();
    // Shifting the lamp by one moves its block by one coordinate of A.
    let (d0, d1) = (&hat[&delta(0)], &hat[&delta(1)]);
    let shift = &setup.auto.phi[&1];
    for a in 0..16 {
        assert_eq!(d0[a], d1[shift.apply(a)]);
    }
}

#[test]
fn sigma_hat_reports_escape_from_the_domain() {
    let setup = halo_shift_setup(&HaloShiftScenario::lamplighter()).unwrap();
    let sigma = sigma_on_window(&setup).unwrap();
    let small = sigma.restrict(|h| h.support().iter().all(|&x| x < 4));
    let all: BTreeSet<usize> = (0..16).collect();
    let err = build_sigma_hat(&small, &setup.auto, &all, &setup.e).unwrap_err();
    assert!(err.to_string().contains("escapes"), "{err}");
}

#[test]
fn skipping_the_conjugation_twist_breaks_condition_iv() {
    let sc = HaloShiftScenario::lamplighter();
    let setup = halo_shift_setup(&sc).unwrap();
    let sigma = sigma_on_window(&setup).unwrap();
    let n = setup.auto.a_labels.len();
    // Every coordinate uses pi_0 instead of pi_a.
    let untwisted: BTreeMap<HaloElem, Vec<SymElem>> =
        setup.e.iter().map(|h| (h.clone(), vec![sigma.table[&setup.auto.pi[&0][h]].clone(); n])).collect();
    let phi = PhiMap::new(Sofic, sigma.codomain.clone(), n, untwisted, setup.auto.phi.clone());
    let semi = Semidirect::new(setup.action.clone());
    let eval = |x: &SemiElem<ShiftAction>| phi.eval(x);
    let r = check_hayes_sale_conditions(&semi, &phi.group, &eval, &setup.f, &setup.f1, &setup.f2, &rat(1, 8));
    assert!(!r.passed());
    let iv = r.children.iter().find(|c| c.check.starts_with("(iv)")).unwrap();
    assert!(!iv.passed());
    assert!(iv.worst_witness.is_some());
    for c in r.children.iter().filter(|c| c.check.starts_with("(i)") || c.check.starts_with("(ii)")) {
        assert!(c.passed(), "{}", c.check);
    }
}

#[test]
fn exact_finite_case_in_every_family() {
    for fam in FAMILIES {
        let r = exact_finite_report(fam).unwrap();
        assert!(r.passed, "{fam}: {}", r.to_text());
        assert!(r.measured_eps.is_zero(), "{fam}: {}", r.measured_eps);
        assert!(r.separation.as_ref().unwrap().ge(&r.c_double_prime), "{fam}");
        assert_eq!(r.sizes.a, 1);
    }
}

#[test]
fn trivial_groups_give_a_trivial_psi() {
    let action = TrivialAction { gamma: Cyclic::new(1), delta: Cyclic::new(1) };
    let w = crate::actions::ClefWitness {
        gamma: TrivialAction { gamma: Cyclic::new(1), delta: Cyclic::new(1) },
        rho: BTreeMap::from([(0, 0)]),
        pi: BTreeMap::from([(0, 0)]),
    };
    let auto = crate::actions::clef_to_automorphic(&w, &[0], &[], 4).unwrap();
    let rep = || RepSource { codomain: SymmetricGroup::points(1), c: rat_int(1), eval: Box::new(|_: &i64| Ok(SymElem::Identity)) };
    let input = AmalgamationInput { action, f: vec![(0, 0)], eps: rat(1, 4), auto, sigma: rep(), theta: rep(), family: Sofic };
    let (psi, r) = build_psi(&input).unwrap();
    assert!(r.passed);
    assert!(r.separation.is_none());
    assert_eq!(psi.len(), 1);
}

#[test]
fn symmetric_shift_embeds_on_the_radius_two_ball() {
    let r = symmetric_shift_embed(2, 8).unwrap();
    assert!(r.passed(), "{}", r.report.to_text());
    assert!(r.target.contains("Sym_f"));
}

#[test]
fn dropping_the_p_factor_loses_injectivity() {
    let f = collapsing_pair(8);
    let without = shift_clef_embed(HaloKind::Sym, &f, 8, None).unwrap();
    assert!(!without.passed());
    assert!(without.report.to_text().contains("both map to"));
    let with = shift_clef_embed(HaloKind::Sym, &f, 8, Some(17)).unwrap();
    assert!(with.passed(), "{}", with.report.to_text());
}

#[test]
fn lamplighter_ball_embeds_too() {
    let action = lamplighter_action();
    let f = shift_ball(&action, 2).unwrap();
    let r = shift_clef_embed(action.halo.kind.clone(), &f, 8, Some(8)).unwrap();
    assert!(r.passed(), "{}", r.report.to_text());
}

#[test]
fn graph_product_on_p3_embeds_mod_17() {
    let r = graphproduct_path_embed(3, 2, 17).unwrap();
    assert!(r.passed(), "{}", r.report.to_text());
}

#[test]
fn graph_product_local_sets_must_fit() {
    // Radius 2 needs exponents up to 8; mod 11 only covers [-5, 5].
    let err = graphproduct_path_embed(3, 2, 11).unwrap_err();
    assert!(err.to_string().contains("not defined"), "{err}");
}

#[test]
fn reduction_tracking_through_a_cancelling_pair() {
    // w = a b, w' = b^-1 c with ww' = a c; a, b, c live on the three vertices of P3.
    let graph = Graph::path(3);
    let h = VertexGroup::Integers;
    let q = VertexGroup::Cyclic(17);
    let word = |s: &[(i64, i64)]| HaloElem::Word(crate::halo::graphword::canonical(&graph, &h, s));
    let w = word(&[(0, 1), (1, 1)]);
    let w2 = word(&[(1, -1), (2, 1)]);
    let ww2 = word(&[(0, 1), (2, 1)]);
    let local: BTreeMap<i64, i64> = (-8i64..=8).map(|k| (k, k.rem_euclid(17))).collect();
    let phi = (0..3).map(|v| (v, local.clone())).collect();
    let r = graphproduct_lef_embed(&graph, &h, &q, &[w.clone(), w2.clone(), ww2.clone()], &phi).unwrap();
    assert!(r.passed(), "{}", r.report.to_text());
    let hom = &r.report.children[2].children[0];
    assert!(hom.notes.iter().any(|n| n.starts_with("1 pairs")), "{:?}", hom.notes);
}

#[test]
fn finite_identity_witness_is_an_isomorphism() {
    // Sym(Z/4) x| Z/4 into itself: K = L(Z/4), Q = P = Z/4, all maps identities.
    let halo = HaloGroup::new(HaloKind::Sym, Graph::range(4));
    let action = HaloAction { points: CyclicShift::new(4), halo: halo.clone() };
    let semi = Semidirect::new(action.clone());
    let s = HaloElem::perm_from_cycles(&[&[0, 1]]);
    let f = crate::group::ball(&semi, &[(s, 0), (halo.identity(), 1)], 2);
    let (f1, f2) = derive_f1_f2(&action, &f);
    let w = crate::actions::ClefWitness {
        gamma: action.clone(),
        rho: f2.iter().map(|&g| (g, g)).collect(),
        pi: f1.iter().map(|h| (h.clone(), h.clone())).collect(),
    };
    let phi = f2.iter().map(|&g| (g, g)).collect();
    let r = lef_semidirect_embed(&action, &f, &w, &Cyclic::new(4), &phi).unwrap();
    assert!(r.passed(), "{}", r.report.to_text());
    assert_eq!(r.images.len(), f.len());
}
