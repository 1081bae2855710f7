use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::*;
use crate::error::Error;
use crate::group::{CyclicShift, IntShift, Integers, Lattice};
use crate::halo::{HaloAction, HaloElem, HaloGroup, HaloKind, VertexGroup};
use crate::rational::rat;
use crate::rng::seeded;

fn shift_fragment(z: std::ops::RangeInclusive<i64>) -> ActionFragment<IntShift> {
    ActionFragment { action: IntShift, f: vec![-1, 0, 1], z: z.collect(), graph: None }
}

fn mod_witness(m: i64, f: &[i64], z: &BTreeSet<i64>) -> LefActionWitness<i64, CyclicShift> {
    LefActionWitness {
        q: CyclicShift::new(m),
        y: (0..m).collect(),
        y_graph: None,
        rho: f.iter().map(|&g| (g, g.rem_euclid(m))).collect(),
        pi: z.iter().map(|&x| (x, x.rem_euclid(m))).collect(),
    }
}

#[test]
fn finite_action_is_its_own_witness() {
    let frag = ActionFragment { action: CyclicShift::new(5), f: (0..5).collect(), z: (0..5).collect(), graph: None };
    let w = mod_witness(5, &frag.f, &frag.z);
    assert!(check_lef_action_witness(&frag, &w).passed());
}

#[test]
fn shift_window_needs_room_to_wrap() {
    let frag = shift_fragment(0..=4);
    let r = check_lef_action_witness(&frag, &mod_witness(8, &frag.f, &frag.z));
    assert!(r.passed(), "{}", r.to_text());
    let r = check_lef_action_witness(&frag, &mod_witness(4, &frag.f, &frag.z));
    assert!(!r.passed());
    assert!(r.child("pi : Z -> Y is an injection").unwrap().violations[0].contains("both map to"));
    // A non-equivariant injection is caught triple by triple.
    let mut w = mod_witness(8, &frag.f, &frag.z);
    w.pi.insert(4, 7);
    let eq = check_lef_action_witness(&frag, &w);
    assert!(eq.children.iter().any(|c| c.check.starts_with("(ii)") && c.violations.iter().any(|v| v.contains("x = 3"))));
}

#[test]
fn graph_witness_must_be_induced() {
    let mut frag = shift_fragment(0..=4);
    frag.graph = Some(Graph::integer_path());
    let mut w = mod_witness(8, &frag.f, &frag.z);
    w.y_graph = Some(Graph::cycle(8));
    assert!(check_lef_action_witness(&frag, &w).passed());
    // On a 5-cycle the ends of the window become adjacent (and pi collides).
    let mut small = mod_witness(5, &frag.f, &frag.z);
    small.y_graph = Some(Graph::cycle(5));
    assert!(!check_lef_action_witness(&frag, &small).passed());
}

#[test]
fn refinement_examples() {
    let shift = |k| Perm::cyclic_shift(10, k);
    let phi = BTreeMap::from([(1, shift(1)), (-1, shift(-1))]);
    let s: BTreeSet<usize> = (0..9).collect();
    let eps = rat(1, 2);
    let s0 = refine_support(&phi, &[1], &s, 10, &eps).unwrap();
    assert_eq!(s0, (0..8).collect());
    let s0 = refine_support(&phi, &[1, -1], &s, 10, &eps).unwrap();
    assert_eq!(s0, (1..8).collect());
    assert!(check_refinement(&phi, &[1, -1], &s, &s0, 10, &eps).passed());
    let all: BTreeSet<usize> = (0..10).collect();
    assert_eq!(refine_support(&phi, &[1, -1], &all, 10, &eps).unwrap(), all);
    assert!(matches!(refine_support(&phi, &[1, -1], &s, 10, &rat(1, 4)), Err(Error::Precondition(_))));
}

#[test]
fn refinement_guarantees_hold_on_random_instances() {
    let mut rng = seeded(11, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=64);
        let fsize = rng.gen_range(1..=4);
        let phi: BTreeMap<usize, Perm> = (0..fsize)
            .map(|i| {
                let mut imgs: Vec<u32> = (0..n as u32).collect();
                imgs.shuffle(&mut rng);
                (i, Perm::from_images(imgs).unwrap())
            })
            .collect();
        let f: Vec<usize> = (0..fsize).collect();
        let eps = rat(rng.gen_range(1..=9), 10);
        // Largest removable count with |A \ S|(|F|+1) < ε|A|.
        let mut removable = 0;
        while Rational::from_integer(((removable + 1) * (fsize + 1)).into()) < &eps * Rational::from_integer(n.into()) {
            removable += 1;
        }
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(&mut rng);
        let s: BTreeSet<usize> = pts[rng.gen_range(0..=removable)..].iter().copied().collect();
        let s0 = refine_support(&phi, &f, &s, n, &eps).unwrap();
        assert!(check_refinement(&phi, &f, &s, &s0, n, &eps).passed());
    }
}

#[test]
fn lef_witness_gives_exact_orbit_data() {
    let frag = shift_fragment(0..=4);
    let w = mod_witness(8, &frag.f, &frag.z);
    let orbit = lef_to_orbit_approx(&frag, &w, 1000).unwrap();
    assert_eq!(orbit.a_labels.len(), 8);
    assert_eq!(orbit.s.len(), 8);
    assert!(orbit.notes[0].starts_with("subgroup-regular variant"));
    let r = check_orbit_approximation(&IntShift, &orbit, &rat(1, 1000));
    assert!(r.passed(), "{}", r.to_text());
    let d = crate::approx::measure_defects(&Integers, &sym_map(&orbit.phi, 8)).unwrap();
    assert!(d.eps_max.is_zero());

    let mut broken = orbit.clone();
    let p = broken.pi.get_mut(&3).unwrap();
    let v = p[&1];
    p.insert(0, v);
    assert!(!check_orbit_approximation(&IntShift, &broken, &rat(1, 2)).passed());
}

#[test]
fn small_orbit_constructions() {
    let trivial = ActionFragment { action: CyclicShift::new(1), f: vec![0], z: BTreeSet::from([0]), graph: None };
    let w = mod_witness(1, &trivial.f, &trivial.z);
    let orbit = lef_to_orbit_approx(&trivial, &w, 10).unwrap();
    assert_eq!(orbit.a_labels.len(), 1);
    assert!(check_orbit_approximation(&trivial.action, &orbit, &rat(1, 2)).passed());

    let flip = ActionFragment { action: CyclicShift::new(2), f: vec![0, 1], z: BTreeSet::from([0, 1]), graph: None };
    let w = mod_witness(2, &flip.f, &flip.z);
    let orbit = lef_to_orbit_approx(&flip, &w, 10).unwrap();
    assert_eq!(orbit.a_labels.len(), 2);
    assert!(check_orbit_approximation(&flip.action, &orbit, &rat(1, 100)).passed());
}

fn lamplighter_action() -> HaloAction<IntShift> {
    HaloAction { points: IntShift, halo: HaloGroup::new(HaloKind::DirectSum(VertexGroup::Cyclic(2)), Graph::integers()) }
}

#[test]
fn folner_box_sizes() {
    assert_eq!(folner_radius(&[vec![1], vec![-1]], 1, &rat(1, 4), 1000).unwrap(), 8);
    assert_eq!(folner_radius(&[vec![0]], 1, &rat(1, 4), 1000).unwrap(), 0);
    assert!(folner_radius(&[vec![1], vec![-1]], 1, &rat(1, 4), 10).is_err());
}

#[test]
fn folner_approximation_of_the_lamplighter() {
    let act = lamplighter_action();
    let e = vec![HaloElem::unit(0, 1), HaloElem::unit(1, 1)];
    let eps = rat(1, 4);
    let data = folner_automorphic_approx(&act, &[-1, 1], &e, &eps, act.halo.clone(), |h| Some(h.clone()), 1000).unwrap();
    assert_eq!(data.a_labels.len(), 17);
    assert_eq!(data.s.len(), 15);
    // π_s shifts supports by -s.
    let s = data.a_labels.iter().position(|l| l == "3").unwrap();
    assert_eq!(data.pi[&s][&HaloElem::unit(0, 1)], HaloElem::unit(-3, 1));
    let r = check_automorphic_approximation(&act, &data, &eps);
    assert!(r.passed(), "{}", r.to_text());

    let mut broken = data.clone();
    let mut e3 = e.clone();
    e3.push(HaloElem::Sum(BTreeMap::from([(0, 1), (1, 1)])));
    broken.e = e3.clone();
    for (&i, m) in broken.pi.iter_mut() {
        let a: i64 = broken.a_labels[i].parse().unwrap();
        m.insert(e3[2].clone(), HaloElem::Sum(BTreeMap::from([(-a, 1), (5 - a, 1)])));
    }
    let r = check_automorphic_approximation(&act, &broken, &eps);
    assert!(!r.passed());
    assert!(r.children[1].violations[0].contains("image of gh"));
}

#[test]
fn folner_approximation_in_two_dimensions() {
    #[derive(Clone, Debug)]
    struct PlaneShift;
    impl crate::group::AutAction for PlaneShift {
        type Gamma = Lattice;
        type Delta = Lattice;
        fn gamma(&self) -> &Lattice {
            &Lattice { d: 2 }
        }
        fn delta(&self) -> &Lattice {
            &Lattice { d: 2 }
        }
        // Swap coordinates once per unit of total displacement.
        fn act(&self, g: &Vec<i64>, h: &Vec<i64>) -> Vec<i64> {
            if (g[0] + g[1]).rem_euclid(2) == 1 {
                vec![h[1], h[0]]
            } else {
                h.clone()
            }
        }
    }
    let f = vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1], vec![0, 0]];
    let e = vec![vec![0, 0], vec![1, 0], vec![0, 2]];
    let eps = rat(1, 2);
    let data = folner_automorphic_approx(&PlaneShift, &f, &e, &eps, Lattice { d: 2 }, |h| Some(h.clone()), 10_000).unwrap();
    assert!(check_automorphic_approximation(&PlaneShift, &data, &eps).passed());
}

fn sym_halo() -> HaloGroup {
    HaloGroup::new(HaloKind::Sym, Graph::integers())
}

fn window_elements(halo: &HaloGroup, pts: &[i64]) -> Vec<HaloElem> {
    halo.on(Graph::set(pts.iter().copied())).elements(100).unwrap()
}

#[test]
fn lift_through_symmetric_and_direct_sum_halos() {
    let frag = shift_fragment(0..=3);
    let w = mod_witness(8, &frag.f, &frag.z);
    let orbit = lef_to_orbit_approx(&frag, &w, 1000).unwrap();
    let eps = rat(1, 100);
    for halo in [sym_halo(), HaloGroup::new(HaloKind::DirectSum(VertexGroup::Cyclic(2)), Graph::integers())] {
        let e = window_elements(&halo, &[0, 1, 2]);
        let lifted = lift_orbit_to_automorphic(&halo, &orbit, &e).unwrap();
        assert_eq!(lifted.lambda.space, Graph::range(8));
        let act = HaloAction { points: IntShift, halo: halo.clone() };
        let r = check_automorphic_approximation(&act, &lifted, &eps);
        assert!(r.passed(), "{}", r.to_text());
        assert!(check_lift_consistency(&Integers, &orbit, &lifted).passed());
    }
    let outside = vec![HaloElem::perm_from_cycles(&[&[3, 4]])];
    assert!(matches!(lift_orbit_to_automorphic(&sym_halo(), &orbit, &outside), Err(Error::Precondition(_))));
}

#[test]
fn halo_lift_of_a_lef_witness() {
    let frag = shift_fragment(0..=3);
    let w = mod_witness(8, &frag.f, &frag.z);
    for (halo, order) in [(sym_halo(), 8), (HaloGroup::new(HaloKind::DirectSum(VertexGroup::Cyclic(2)), Graph::integers()), 8)] {
        let e = window_elements(&halo, &[0, 1, 2, 3]);
        let clef = lef_lift_through_halo(&halo, &frag, &w, &e).unwrap();
        assert_eq!(clef.gamma.halo.space, Graph::range(8));
        let act = HaloAction { points: IntShift, halo: halo.clone() };
        let r = check_clef_witness(&act, &frag.f, &clef);
        assert!(r.passed(), "{}", r.to_text());
        let gens = clef.gamma.halo.generators().unwrap();
        let auto = clef_to_automorphic(&clef, &frag.f, &gens, 1000).unwrap();
        assert_eq!(auto.a_labels.len(), order);
        let r = check_automorphic_approximation(&act, &auto, &rat(1, 100));
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn graph_product_lift_needs_induced_windows() {
    let halo = HaloGroup::new(HaloKind::GraphProduct(VertexGroup::Cyclic(2)), Graph::integer_path());
    let mut frag = shift_fragment(0..=3);
    frag.graph = Some(Graph::integer_path());
    let mut w = mod_witness(8, &frag.f, &frag.z);
    w.y_graph = Some(Graph::cycle(8));
    let orbit = lef_to_orbit_approx(&frag, &w, 1000).unwrap();
    assert!(check_orbit_approximation(&IntShift, &orbit, &rat(1, 100)).passed());
    let e = vec![HaloElem::Word(vec![(0, 1), (1, 1)]), HaloElem::Word(vec![(1, 1), (2, 1)]), HaloElem::Word(vec![(3, 1)])];
    let lifted = lift_orbit_to_automorphic(&halo, &orbit, &e).unwrap();
    let act = HaloAction { points: IntShift, halo };
    assert!(check_automorphic_approximation(&act, &lifted, &rat(1, 100)).passed());
}

#[test]
fn refinement_suite_reports_no_violations() {
    let r = refinement_suite(100, 64, &mut seeded(5, 0));
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.notes[0].starts_with("smallest surviving fraction"));
}
