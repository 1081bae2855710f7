//! Concrete inputs for the pipeline and the embedding engines: halo products
//! over the integer shift, the exact finite case, and graph products over a
//! path.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::actions::{
    check_lef_action_witness, check_lift_consistency, clef_to_automorphic, lef_lift_through_halo, lef_to_orbit_approx, lift_orbit_to_automorphic,
    ActionFragment, AutomorphicApproximation, ClefWitness, LefActionWitness, OrbitApproximation,
};
use crate::approx::ApproximationMap;
use crate::compat::{CompatFamily, Hyperlinear, LinearSofic, Sofic, WeakSofic};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::group::{ball, Cyclic, CyclicShift, Group, IntShift, Integers, Semidirect, TrivialAction};
use crate::halo::{HaloAction, HaloElem, HaloGroup, HaloKind, VertexGroup};
use crate::metric::{
    FiniteMetricGroup, GeneralLinear, Matrix, PrimeField, Shape, SymElem, SymmetricGroup, UnitaryGroup, UnitaryMatrix, WeakElem, WeakGroup,
};
use crate::perm::Perm;
use crate::rational::{rat, rat_int, Rational};
use crate::report::CheckReport;

use super::{build_psi, derive_e, derive_f1_f2, graphproduct_lef_embed, lef_semidirect_embed, lef_semidirect_embed_without_p};
use super::{AmalgamationInput, AmalgamationReport, LefEmbeddingResult, RepSource, SemiElem};

pub type ShiftAction = HaloAction<IntShift>;

/// `L(Z) ⋊ Z` for a halo kind, with the orbit taken in `Z/m` and `θ` the
/// rotation of `Z/n`.
#[derive(Clone, Debug)]
pub struct HaloShiftScenario {
    pub kind: HaloKind,
    pub orbit_modulus: i64,
    pub theta_degree: usize,
    pub radius: usize,
    pub eps: Rational,
    pub cap: usize,
}

impl HaloShiftScenario {
    pub fn lamplighter() -> Self {
        HaloShiftScenario {
            kind: HaloKind::DirectSum(VertexGroup::Cyclic(2)),
            orbit_modulus: 16,
            theta_degree: 8,
            radius: 2,
            eps: rat(1, 4),
            cap: 1 << 20,
        }
    }

    pub fn lampshuffler() -> Self {
        HaloShiftScenario { kind: HaloKind::Sym, ..Self::lamplighter() }
    }
}

/// Everything upstream of the pipeline proper.
#[derive(Clone, Debug)]
pub struct HaloShiftSetup {
    pub action: ShiftAction,
    pub f: Vec<SemiElem<ShiftAction>>,
    pub f1: Vec<HaloElem>,
    pub f2: Vec<i64>,
    pub e: Vec<HaloElem>,
    pub frag: ActionFragment<IntShift>,
    pub witness: LefActionWitness<i64, CyclicShift>,
    pub orbit: OrbitApproximation<i64>,
    pub auto: AutomorphicApproximation<i64, HaloElem, HaloGroup>,
    pub witness_check: CheckReport,
    pub lift_check: CheckReport,
}

#[derive(Clone, Debug)]
pub struct HaloShiftRun {
    pub setup: HaloShiftSetup,
    pub report: AmalgamationReport,
}

fn space_for(kind: &HaloKind) -> Graph {
    if matches!(kind, HaloKind::GraphProduct(_)) {
        Graph::integer_path()
    } else {
        Graph::integers()
    }
}

/// A generator of `L(X)` supported at `0` (and `1`, `2` for permutations).
pub fn basic_generator(halo: &HaloGroup) -> Result<HaloElem> {
    match &halo.kind {
        HaloKind::Sym => Ok(HaloElem::perm_from_cycles(&[&[0, 1]])),
        HaloKind::Alt => Ok(HaloElem::perm_from_cycles(&[&[0, 1, 2]])),
        HaloKind::DirectSum(h) => h.generators().first().map(|&k| HaloElem::unit(0, k)).ok_or_else(|| invalid("the vertex group is trivial")),
        HaloKind::GraphProduct(h) => {
            h.generators().first().map(|&k| HaloElem::Word(vec![(0, k)])).ok_or_else(|| invalid("the vertex group is trivial"))
        }
        HaloKind::Glf(_) => halo.generators()?.into_iter().next().ok_or_else(|| invalid("no generator")),
    }
}

/// Radius ball in `L(Z) ⋊ Z` for the basic generator and the shift.
pub fn shift_ball(action: &ShiftAction, radius: usize) -> Result<Vec<SemiElem<ShiftAction>>> {
    let semi = Semidirect::new(action.clone());
    let s = basic_generator(&action.halo)?;
    let e = action.halo.identity();
    Ok(ball(&semi, &[(s, 0), (e, 1)], radius))
}

/// `Z ↷ Z` restricted to a window, witnessed by `Z/m ↷ Z/m` through reduction mod `m`.
pub fn shift_witness(z: &BTreeSet<i64>, f2: &[i64], m: i64, graph: bool) -> (ActionFragment<IntShift>, LefActionWitness<i64, CyclicShift>) {
    let frag = ActionFragment { action: IntShift, f: f2.to_vec(), z: z.clone(), graph: graph.then(Graph::integer_path) };
    let w = LefActionWitness {
        q: CyclicShift::new(m),
        y: (0..m).collect(),
        y_graph: graph.then(|| Graph::cycle(m)),
        rho: f2.iter().map(|&g| (g, g.rem_euclid(m))).collect(),
        pi: z.iter().map(|&x| (x, x.rem_euclid(m))).collect(),
    };
    (frag, w)
}

fn support_of(hs: &[HaloElem]) -> BTreeSet<i64> {
    hs.iter().flat_map(HaloElem::support).collect()
}

/// `Z` acting on `L(Z)` by translation.
pub fn shift_action(kind: &HaloKind) -> ShiftAction {
    HaloAction { points: IntShift, halo: HaloGroup::new(kind.clone(), space_for(kind)) }
}

pub fn halo_shift_setup(sc: &HaloShiftScenario) -> Result<HaloShiftSetup> {
    let action = shift_action(&sc.kind);
    let halo = action.halo.clone();
    let f = shift_ball(&action, sc.radius)?;
    let (f1, f2) = derive_f1_f2(&action, &f);
    let e = derive_e(&action, &f1, &f2);
    let z = support_of(&e);
    let (frag, witness) = shift_witness(&z, &f2, sc.orbit_modulus, matches!(sc.kind, HaloKind::GraphProduct(_)));
    let witness_check = check_lef_action_witness(&frag, &witness);
    if !witness_check.passed() {
        return Err(Error::CheckFailed(format!("the mod-{} witness does not cover the window:\n{}", sc.orbit_modulus, witness_check.to_text())));
    }
    let orbit = lef_to_orbit_approx(&frag, &witness, sc.cap)?;
    let auto = lift_orbit_to_automorphic(&halo, &orbit, &e)?;
    let lift_check = check_lift_consistency(&Integers, &orbit, &auto);
    Ok(HaloShiftSetup { action, f, f1, f2, e, frag, witness, orbit, auto, witness_check, lift_check })
}

/// A sofic representation of `Λ = L(B)` for a finite set `B`, with its
/// separation constant: the natural action for `Sym_f`/`Alt_f`, the regular
/// action blockwise for `⊕ Z/k`.
pub fn halo_sofic_rep(lambda: &HaloGroup) -> Result<RepSource<'static, HaloElem, SymmetricGroup>> {
    let points: Vec<i64> = lambda.space.vertices.clone().ok_or_else(|| invalid("Lambda must live on a finite set"))?.into_iter().collect();
    let idx: BTreeMap<i64, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let b = points.len();
    match &lambda.kind {
        HaloKind::Sym | HaloKind::Alt => {
            let moved = if lambda.kind == HaloKind::Sym { 2 } else { 3 };
            Ok(RepSource {
                codomain: SymmetricGroup::points(b),
                c: rat(moved, b as i64),
                eval: Box::new(move |h| {
                    let HaloElem::Perm(m) = h else { return Err(invalid("expected a permutation")) };
                    let mut images: Vec<u32> = (0..b as u32).collect();
                    for (x, y) in m {
                        images[idx[x]] = idx[y] as u32;
                    }
                    Ok(SymElem::Explicit(Perm::from_images(images)?))
                }),
            })
        }
        HaloKind::DirectSum(VertexGroup::Cyclic(k)) => {
            let k = *k;
            Ok(RepSource {
                codomain: SymmetricGroup::new(Shape::power(Shape::Points(k as usize), b)),
                c: rat_int(1),
                eval: Box::new(move |h| {
                    let HaloElem::Sum(m) = h else { return Err(invalid("expected a finitely supported function")) };
                    let mut blocks = vec![SymElem::Identity; b];
                    for (x, v) in m {
                        blocks[idx[x]] = SymElem::Explicit(Perm::cyclic_shift(k as usize, *v));
                    }
                    Ok(SymElem::base(blocks))
                }),
            })
        }
        other => Err(invalid(format!("no sofic representation is provided for {}", other.describe()))),
    }
}

/// `θ(g)` = rotation by `g` of `n` points; separated by `1` on `F₂` when `n` exceeds `2 max|g|`.
pub fn rotation_rep(n: usize) -> RepSource<'static, i64, SymmetricGroup> {
    RepSource { codomain: SymmetricGroup::points(n), c: rat_int(1), eval: Box::new(move |g| Ok(SymElem::Explicit(Perm::cyclic_shift(n, *g)))) }
}

pub fn halo_shift_input(sc: &HaloShiftScenario, setup: &HaloShiftSetup) -> Result<AmalgamationInput<'static, ShiftAction, HaloGroup, Sofic>> {
    Ok(AmalgamationInput {
        action: setup.action.clone(),
        f: setup.f.clone(),
        eps: sc.eps.clone(),
        auto: setup.auto.clone(),
        sigma: halo_sofic_rep(&setup.auto.lambda)?,
        theta: rotation_rep(sc.theta_degree),
        family: Sofic,
    })
}

/// Orbit approximation, lift through the halo, and the sofic pipeline.
pub fn symmetric_enrichment_pipeline(sc: &HaloShiftScenario) -> Result<HaloShiftRun> {
    let setup = halo_shift_setup(sc)?;
    let input = halo_shift_input(sc, &setup)?;
    let (_, report) = build_psi(&input)?;
    Ok(HaloShiftRun { setup, report })
}

/// Representations of `Z/2` in each family: the generator goes to an
/// involution at distance `c` from the identity.
fn z2_rep_sofic() -> RepSource<'static, i64, SymmetricGroup> {
    RepSource { codomain: SymmetricGroup::points(2), c: rat_int(1), eval: Box::new(|g| Ok(SymElem::Explicit(Perm::cyclic_shift(2, *g)))) }
}

fn z2_rep_linear(field: &PrimeField) -> RepSource<'static, i64, GeneralLinear<PrimeField>> {
    let f = *field;
    RepSource {
        codomain: GeneralLinear::new(*field, 1),
        c: rat_int(1),
        eval: Box::new(move |g| Ok(Matrix::diag(&f, &[if g.rem_euclid(2) == 1 { -1 } else { 1 }]))),
    }
}

fn z2_rep_unitary() -> RepSource<'static, i64, UnitaryGroup> {
    RepSource {
        codomain: UnitaryGroup { dim: 1 },
        c: rat_int(2),
        eval: Box::new(|g| Ok(UnitaryMatrix::diag(&[Complex64::new(if g.rem_euclid(2) == 1 { -1.0 } else { 1.0 }, 0.0)]))),
    }
}

fn z2_rep_weak() -> RepSource<'static, i64, WeakGroup> {
    RepSource {
        codomain: WeakGroup::finite(FiniteMetricGroup::cyclic_discrete(2)),
        c: rat_int(1),
        eval: Box::new(|g| Ok(WeakElem::Atom(g.rem_euclid(2) as usize))),
    }
}

pub type ExactAction = TrivialAction<Cyclic, Cyclic>;

/// `Z/2 × Z/2` as `Z/2 ⋊ Z/2` with trivial action, `F` everything, and
/// automorphic data from the trivial C-LEF witness (one point in `A`).
pub fn exact_finite_input<'a, C: CompatFamily>(
    family: C,
    sigma: RepSource<'a, i64, C::Group>,
    theta: RepSource<'a, i64, C::Group>,
) -> Result<AmalgamationInput<'a, ExactAction, Cyclic, C>> {
    let action = TrivialAction { gamma: Cyclic::new(2), delta: Cyclic::new(2) };
    let w = ClefWitness {
        gamma: TrivialAction { gamma: Cyclic::new(1), delta: Cyclic::new(2) },
        rho: BTreeMap::from([(0, 0), (1, 0)]),
        pi: BTreeMap::from([(0, 0), (1, 1)]),
    };
    let auto = clef_to_automorphic(&w, &[0, 1], &[1], 16)?;
    let f = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
    Ok(AmalgamationInput { action, f, eps: rat(1, 4), auto, sigma, theta, family })
}

pub const FAMILIES: [&str; 4] = ["sofic", "linear", "hyperlinear", "weak"];

/// The exact finite case for a family named in [`FAMILIES`].
pub fn exact_finite_report(family: &str) -> Result<AmalgamationReport> {
    match family {
        "sofic" => Ok(build_psi(&exact_finite_input(Sofic, z2_rep_sofic(), z2_rep_sofic())?)?.1),
        "linear" => {
            let field = PrimeField::new(3)?;
            let fam = LinearSofic { field };
            Ok(build_psi(&exact_finite_input(fam, z2_rep_linear(&field), z2_rep_linear(&field))?)?.1)
        }
        "hyperlinear" => Ok(build_psi(&exact_finite_input(Hyperlinear, z2_rep_unitary(), z2_rep_unitary())?)?.1),
        "weak" => Ok(build_psi(&exact_finite_input(WeakSofic, z2_rep_weak(), z2_rep_weak())?)?.1),
        other => Err(invalid(format!("unknown family {other:?}; expected one of {FAMILIES:?}"))),
    }
}

/// `F ⊆ L(Z) ⋊ Z` embedded into `(L(Z/m) ⋊ Z/m) × P` through reduction mod
/// `m`, with `P = Z/p` and `φ` reduction mod `p`; `p = None` drops the factor.
pub fn shift_clef_embed(kind: HaloKind, f: &[SemiElem<ShiftAction>], m: i64, p: Option<i64>) -> Result<LefEmbeddingResult> {
    let halo = HaloGroup::new(kind.clone(), space_for(&kind));
    let action = HaloAction { points: IntShift, halo: halo.clone() };
    let (f1, f2) = derive_f1_f2(&action, f);
    let mut z = support_of(&f1);
    if z.is_empty() {
        z.insert(0);
    }
    let (frag, w) = shift_witness(&z, &f2, m, matches!(kind, HaloKind::GraphProduct(_)));
    let witness_check = check_lef_action_witness(&frag, &w);
    if !witness_check.passed() {
        return Err(Error::CheckFailed(format!("the mod-{m} witness does not cover F:\n{}", witness_check.to_text())));
    }
    let clef = lef_lift_through_halo(&halo, &frag, &w, &f1)?;
    let mut out = match p {
        Some(p) => {
            let phi = f2.iter().map(|&g| (g, g.rem_euclid(p))).collect();
            lef_semidirect_embed(&action, f, &clef, &Cyclic::new(p), &phi)?
        }
        None => lef_semidirect_embed_without_p(&action, f, &clef)?,
    };
    out.report.children.insert(0, witness_check);
    Ok(out)
}

/// The radius ball of `Sym_f(Z) ⋊ Z` embedded with `K = Sym(m)`, `Q = P = Z/m`.
pub fn symmetric_shift_embed(radius: usize, m: i64) -> Result<LefEmbeddingResult> {
    let action = HaloAction { points: IntShift, halo: HaloGroup::new(HaloKind::Sym, Graph::integers()) };
    let f = shift_ball(&action, radius)?;
    shift_clef_embed(HaloKind::Sym, &f, m, Some(m))
}

/// `F = {e, t^period}`: a witness reducing mod `period` cannot tell them apart
/// without the extra factor.
pub fn collapsing_pair(period: i64) -> Vec<SemiElem<ShiftAction>> {
    vec![(HaloElem::Perm(BTreeMap::new()), 0), (HaloElem::Perm(BTreeMap::new()), period)]
}

/// Radius ball of `P(Z, P_n)` embedded into `P(Z/p, P_n)` by reduction mod `p`
/// on `[-(p-1)/2, (p-1)/2]`.
pub fn graphproduct_path_embed(n: i64, radius: usize, p: i64) -> Result<LefEmbeddingResult> {
    graphproduct_reduction_embed(&Graph::path(n), radius, p)
}

/// The same reduction over any finite graph, with `F` the radius ball of the
/// vertex generators.
pub fn graphproduct_reduction_embed(graph: &Graph, radius: usize, p: i64) -> Result<LefEmbeddingResult> {
    let vertices: Vec<i64> = graph.vertices.clone().ok_or_else(|| invalid("the graph must be finite"))?.into_iter().collect();
    if p < 1 {
        return Err(invalid(format!("modulus {p} must be positive")));
    }
    let dom = HaloGroup::new(HaloKind::GraphProduct(VertexGroup::Integers), graph.clone());
    let gens: Vec<HaloElem> = vertices.iter().map(|&v| HaloElem::Word(vec![(v, 1)])).collect();
    let f = ball(&dom, &gens, radius);
    let half = (p - 1) / 2;
    let local: BTreeMap<i64, i64> = (-half..=half).map(|k| (k, k.rem_euclid(p))).collect();
    let phi = vertices.iter().map(|&v| (v, local.clone())).collect();
    graphproduct_lef_embed(graph, &VertexGroup::Integers, &VertexGroup::Cyclic(p), &f, &phi)
}

/// The measured defects of `σ_E` on `Λ` for a setup, as a plain map.
pub fn sigma_on_window(setup: &HaloShiftSetup) -> Result<ApproximationMap<HaloElem, SymmetricGroup>> {
    let rep = halo_sofic_rep(&setup.auto.lambda)?;
    let mut f3 = BTreeSet::new();
    for m in setup.auto.pi.values() {
        f3.extend(m.values().cloned());
    }
    rep.tabulate(f3)
}
