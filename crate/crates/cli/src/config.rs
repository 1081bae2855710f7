//! Scenario files. Every object rejects unknown fields; rationals are written
//! as strings such as `"1/4"`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use halo_approx::graph::Graph;
use halo_approx::halo::{HaloKind, VertexGroup};
use halo_approx::Rational;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Largest carrier or enumeration the run may build.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub task: Task,
}

impl ScenarioConfig {
    pub fn cap(&self) -> u64 {
        self.cap.unwrap_or(DEFAULT_CAP)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    VerifyMetric,
    VerifyCompat,
    VerifyAction,
    Amalgamate,
    NormalForm,
    LefEmbed,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::VerifyMetric => "verify-metric",
            Kind::VerifyCompat => "verify-compat",
            Kind::VerifyAction => "verify-action",
            Kind::Amalgamate => "amalgamate",
            Kind::NormalForm => "normal-form",
            Kind::LefEmbed => "lef-embed",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Task {
    VerifyMetric(MetricTask),
    VerifyCompat(CompatTask),
    VerifyAction(ActionTask),
    Amalgamate(AmalgamateTask),
    NormalForm(NormalFormTask),
    LefEmbed(LefEmbedTask),
}

impl Task {
    pub fn kind(&self) -> Kind {
        match self {
            Task::VerifyMetric(_) => Kind::VerifyMetric,
            Task::VerifyCompat(_) => Kind::VerifyCompat,
            Task::VerifyAction(_) => Kind::VerifyAction,
            Task::Amalgamate(_) => Kind::Amalgamate,
            Task::NormalForm(_) => Kind::NormalForm,
            Task::LefEmbed(_) => Kind::LefEmbed,
        }
    }
}

/// `"exhaustive"` or `{"sampled": count}`; sampling draws from the run seed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SweepSpec {
    Exhaustive,
    Sampled(usize),
}

/// Small finite groups with a bi-invariant metric.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FiniteSpec {
    /// `Z/m`, discrete metric.
    Cyclic(usize),
    /// `Sym(n)`, normalized Hamming metric.
    Symmetric(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum MetricTask {
    HammingHsBridge(HammingHsBridge),
    WeakWreath(WeakWreath),
    MetricTransform(MetricTransform),
}

/// `d_H = ½ d_HS²` on all of `Sym(n)²`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HammingHsBridge {
    pub n: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

/// Metric axioms and bi-invariance of the weak wreath metric.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakWreath {
    pub inner: FiniteSpec,
    pub n: usize,
    pub sweep: SweepSpec,
}

/// `2x − x²` applied `power` times stays a bi-invariant metric.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricTransform {
    pub group: FiniteSpec,
    pub power: usize,
}

fn default_tol() -> f64 {
    1e-9
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Sofic,
    Linear,
    Hyperlinear,
    Weak,
}

impl FamilyName {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Sofic => "sofic",
            FamilyName::Linear => "linear",
            FamilyName::Hyperlinear => "hyperlinear",
            FamilyName::Weak => "weak",
        }
    }
}

fn default_prime() -> u32 {
    2
}

/// Carriers by family: `Sym(dim)`, `GL_dim(F_p)`, `U(dim)`, and `Sym(dim)`
/// with the Hamming metric for the weak family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum CompatTask {
    ProductFormula(ProductFormula),
    LinearBounds(LinearBounds),
    Product(Product),
    Conjugation(Conjugation),
    Wreath(Wreath),
}

/// Exhaustive `x + y − xy` for the sofic product map.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductFormula {
    pub a: usize,
    pub b: usize,
}

/// Exhaustive lower and upper bounds for the linear product map.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearBounds {
    #[serde(default = "default_prime")]
    pub p: u32,
    pub m: usize,
}

/// Homomorphism, continuity and the lower bound of a product map.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub family: FamilyName,
    #[serde(default = "default_prime")]
    pub p: u32,
    pub dims: [usize; 2],
    /// Random elements per factor for families without exhaustive pools.
    #[serde(default)]
    pub pool: usize,
    pub sweep: SweepSpec,
    pub eps: Vec<Ratio>,
}

/// The conjugation identity on seeded cases.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conjugation {
    pub families: Vec<FamilyName>,
    #[serde(default = "default_prime")]
    pub p: u32,
    pub dim: usize,
    pub n: usize,
    #[serde(default)]
    pub pool: usize,
    pub cases: usize,
}

/// Every clause of base/acting map compatibility on seeded cases.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Wreath {
    pub family: FamilyName,
    #[serde(default = "default_prime")]
    pub p: u32,
    pub dim: usize,
    pub n: usize,
    #[serde(default)]
    pub pool: usize,
    pub eps: Ratio,
    pub c: Ratio,
    pub cases: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum ActionTask {
    RefinementSuite(RefinementSuite),
    LefToOrbit(LefToOrbit),
    Folner(Folner),
    LiftConsistency(LiftConsistency),
}

/// Random support refinements, each rechecked.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementSuite {
    pub instances: usize,
    pub max_points: usize,
}

/// The integer shift on a window, witnessed mod `modulus`, turned into
/// an orbit approximation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LefToOrbit {
    pub window: [i64; 2],
    pub generators: Vec<i64>,
    pub modulus: i64,
    pub eps: Ratio,
}

/// Følner-box automorphic approximation of a halo product over `Z`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Folner {
    pub halo: HaloKindSpec,
    pub generators: Vec<i64>,
    pub window: Vec<i64>,
    pub eps: Ratio,
}

/// Orbit approximation lifted through each halo keeps `A`, `S` and `φ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftConsistency {
    pub halos: Vec<HaloKindSpec>,
    #[serde(default = "default_modulus")]
    pub orbit_modulus: i64,
    #[serde(default = "default_radius")]
    pub radius: usize,
}

fn default_modulus() -> i64 {
    16
}

fn default_radius() -> usize {
    2
}

fn default_theta() -> usize {
    8
}

fn quarter() -> Ratio {
    Ratio("1/4".parse().expect("literal"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "kebab-case")]
pub enum AmalgamateTask {
    HaloShift(HaloShift),
    ExactFinite(ExactFinite),
}

/// `L(Z) ⋊ Z` over the shift, in the sofic family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HaloShift {
    pub halo: HaloKindSpec,
    #[serde(default = "default_modulus")]
    pub orbit_modulus: i64,
    #[serde(default = "default_theta")]
    pub theta_degree: usize,
    #[serde(default = "default_radius")]
    pub radius: usize,
    #[serde(default = "quarter")]
    pub eps: Ratio,
}

/// `Z/2 × Z/2` with exact inputs, in each listed family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactFinite {
    pub families: Vec<FamilyName>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormTask {
    pub graph: GraphSpec,
    pub vertex_group: VertexGroupSpec,
    /// Words to put in normal form, as whitespace-separated `v:k` syllables.
    #[serde(default)]
    pub words: Vec<String>,
    #[serde(default)]
    pub random_words: usize,
    #[serde(default = "default_max_len")]
    pub max_len: usize,
    #[serde(default = "default_strategies")]
    pub strategies: usize,
    /// Exhaustive comparison with the direct sum over complete graphs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_bijection: Option<BijectionSpec>,
}

fn default_max_len() -> usize {
    20
}

fn default_strategies() -> usize {
    10
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BijectionSpec {
    pub max_vertices: usize,
    pub max_order: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "engine", rename_all = "kebab-case")]
pub enum LefEmbedTask {
    GraphProduct(GraphProduct),
    Semidirect(Semidirect),
}

/// Graph product of `Z` over a finite graph into the graph product of
/// `Z/modulus`, by reduction on a symmetric window.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphProduct {
    pub graph: GraphSpec,
    pub radius: usize,
    pub modulus: i64,
}

/// Radius ball of `L(Z) ⋊ Z` into `(L(Z/m) ⋊ Z/m) × Z/p`; `p = null`
/// drops the extra factor.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Semidirect {
    pub halo: HaloKindSpec,
    pub radius: usize,
    pub modulus: i64,
    #[serde(default)]
    pub extra_factor: Option<i64>,
}

/// Graphs by family, or adjacency lists keyed by vertex name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Path(i64),
    Cycle(i64),
    Complete(i64),
    Adjacency(BTreeMap<String, Vec<String>>),
}

impl GraphSpec {
    /// The graph on `0..n` with vertex names; adjacency keys are numbered in
    /// sorted order.
    pub fn build(&self) -> Result<(Graph, Vec<String>), String> {
        let named = |n: i64| (0..n).map(|v| v.to_string()).collect::<Vec<_>>();
        match self {
            GraphSpec::Path(n) if *n >= 1 => Ok((Graph::path(*n), named(*n))),
            GraphSpec::Cycle(n) if *n >= 3 => Ok((Graph::cycle(*n), named(*n))),
            GraphSpec::Complete(n) if *n >= 1 => Ok((Graph::complete(*n), named(*n))),
            GraphSpec::Adjacency(adj) => {
                let names: Vec<String> = adj.keys().cloned().collect();
                let index = |s: &str| names.iter().position(|n| n == s).map(|i| i as i64);
                let mut edges = Vec::new();
                for (a, nbrs) in adj {
                    for b in nbrs {
                        let j = index(b).ok_or_else(|| format!("{b:?} is listed as a neighbour of {a:?} but has no entry"))?;
                        if b == a {
                            return Err(format!("self-loop at {a:?}"));
                        }
                        edges.push((index(a).expect("key"), j));
                    }
                }
                let g = Graph::from_edges(0..names.len() as i64, edges).map_err(|e| e.to_string())?;
                Ok((g, names))
            }
            other => Err(format!("{other:?} is too small")),
        }
    }
}

/// `"1/4"`, `"0"`, `"3"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Ratio(pub Rational);

impl TryFrom<String> for Ratio {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        Rational::from_str(s.trim()).map(Ratio).map_err(|_| format!("{s:?} is not a rational such as \"1/4\""))
    }
}

impl From<Ratio> for String {
    fn from(r: Ratio) -> String {
        r.0.to_string()
    }
}

/// `"Z"` or `"Z/m"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexGroupSpec(pub VertexGroup);

fn parse_vertex_group(s: &str) -> Result<VertexGroup, String> {
    match s.trim() {
        "Z" => Ok(VertexGroup::Integers),
        t => t
            .strip_prefix("Z/")
            .and_then(|m| m.parse::<i64>().ok())
            .filter(|&m| m >= 1)
            .map(VertexGroup::Cyclic)
            .ok_or_else(|| format!("{s:?} is not \"Z\" or \"Z/m\" with m >= 1")),
    }
}

impl TryFrom<String> for VertexGroupSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        parse_vertex_group(&s).map(VertexGroupSpec)
    }
}

impl From<VertexGroupSpec> for String {
    fn from(v: VertexGroupSpec) -> String {
        v.0.describe()
    }
}

/// `"sym"`, `"alt"`, `"directsum:Z/2"`, `"graphproduct:Z/3"`, `"glf:2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HaloKindSpec(pub HaloKind);

impl TryFrom<String> for HaloKindSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        let kind = match s.trim().split_once(':') {
            None if s.trim() == "sym" => HaloKind::Sym,
            None if s.trim() == "alt" => HaloKind::Alt,
            Some(("directsum", h)) => HaloKind::DirectSum(parse_vertex_group(h)?),
            Some(("graphproduct", h)) => HaloKind::GraphProduct(parse_vertex_group(h)?),
            Some(("glf", m)) => match m.parse::<i64>() {
                Ok(m) if (2..=16).contains(&m) => HaloKind::Glf(m),
                _ => return Err(format!("glf modulus {m:?} must be in 2..=16")),
            },
            _ => return Err(format!("{s:?} is not one of sym, alt, directsum:H, graphproduct:H, glf:m")),
        };
        Ok(HaloKindSpec(kind))
    }
}

impl From<HaloKindSpec> for String {
    fn from(h: HaloKindSpec) -> String {
        h.to_string()
    }
}

impl fmt::Display for HaloKindSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            HaloKind::Sym => write!(f, "sym"),
            HaloKind::Alt => write!(f, "alt"),
            HaloKind::DirectSum(h) => write!(f, "directsum:{}", h.describe()),
            HaloKind::GraphProduct(h) => write!(f, "graphproduct:{}", h.describe()),
            HaloKind::Glf(m) => write!(f, "glf:{m}"),
        }
    }
}

/// Whitespace-separated `v:k` syllables; `v` is a vertex name, `k` an element.
pub fn parse_word(s: &str, names: &[String], vg: &VertexGroup) -> Result<Vec<(i64, i64)>, String> {
    s.split_whitespace()
        .map(|tok| {
            let (v, k) = tok.split_once(':').ok_or_else(|| format!("syllable {tok:?} is not of the form v:k"))?;
            let vi = names.iter().position(|n| n == v).ok_or_else(|| format!("unknown vertex {v:?} in {tok:?}"))?;
            let ki: i64 = k.parse().map_err(|_| format!("element {k:?} in {tok:?} is not an integer"))?;
            if !vg.contains(ki) {
                return Err(format!("{ki} is not an element of {}", vg.describe()));
            }
            Ok((vi as i64, ki))
        })
        .collect()
}

pub fn render_word(w: &[(i64, i64)], names: &[String]) -> String {
    w.iter().map(|&(v, k)| format!("{}:{k}", names[v as usize])).collect::<Vec<_>>().join(" ")
}
