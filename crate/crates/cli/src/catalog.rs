//! Bundled scenarios. Each one passes in its shipped configuration.

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::ScenarioConfig;

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: &'static str,
    /// The result the scenario exercises.
    pub anchor: &'static str,
    pub description: &'static str,
    pub config: Value,
}

impl CatalogEntry {
    pub fn config(&self) -> ScenarioConfig {
        serde_json::from_value(self.config.clone()).unwrap_or_else(|e| panic!("bundled scenario {} does not parse: {e}", self.name))
    }
}

fn entry(name: &'static str, anchor: &'static str, description: &'static str, seed: Option<u64>, task: Value) -> CatalogEntry {
    let kind = match task["kind"].as_str().expect("task kind") {
        "verify-metric" => "verify-metric",
        "verify-compat" => "verify-compat",
        "verify-action" => "verify-action",
        "amalgamate" => "amalgamate",
        "normal-form" => "normal-form",
        "lef-embed" => "lef-embed",
        other => panic!("unknown kind {other}"),
    };
    let mut config = json!({ "schema": 1, "name": name, "task": task });
    if let Some(s) = seed {
        config["seed"] = json!(s);
    }
    CatalogEntry { name, kind, anchor, description, config }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry(
            "metric_hamming_hs_bridge",
            "Hamming metric as half the squared Hilbert-Schmidt metric",
            "Normalized Hamming distance equals half the squared HS distance of permutation matrices on Sym(4).",
            None,
            json!({ "kind": "verify-metric", "check": "hamming-hs-bridge", "n": 4 }),
        ),
        entry(
            "metric_weak_wreath_biinvariance",
            "weak-sofic wreath metric",
            "Metric axioms and bi-invariance of the weak wreath metric on Z/2 wr Sym(2), all triples.",
            None,
            json!({ "kind": "verify-metric", "check": "weak-wreath", "inner": { "cyclic": 2 }, "n": 2, "sweep": "exhaustive" }),
        ),
        entry(
            "metric_transform_amplification",
            "metric transform 2x - x^2",
            "Iterating 2x - x^2 on the Hamming metric of Sym(3) keeps a bi-invariant metric and matches 1 - (1 - d)^(2^k).",
            None,
            json!({ "kind": "verify-metric", "check": "metric-transform", "group": { "symmetric": 3 }, "power": 3 }),
        ),
        entry(
            "compat_sofic_exhaustive",
            "sofic product compatibility",
            "Sofic product map on Sym(3) x Sym(4): exact x + y - xy formula plus homomorphism, continuity and lower bound.",
            None,
            json!({ "kind": "verify-compat", "check": "product-formula", "a": 3, "b": 4 }),
        ),
        entry(
            "compat_linear_gl2f2",
            "linear-sofic product compatibility",
            "Rank-metric product map on GL_2(F_2)^2: lower bound max/4 and upper bound (2x + 2y - xy)/4, exhaustive.",
            None,
            json!({ "kind": "verify-compat", "check": "linear-bounds", "p": 2, "m": 2 }),
        ),
        entry(
            "compat_hyperlinear_sampled",
            "hyperlinear product compatibility",
            "Unitary product map U(2) x U(2): homomorphism, continuity and lower bound on seeded samples.",
            Some(7),
            json!({ "kind": "verify-compat", "check": "product", "family": "hyperlinear", "dims": [2, 2], "pool": 12, "sweep": { "sampled": 400 }, "eps": ["1/2", "1/4", "1/8"] }),
        ),
        entry(
            "compat_wreath_conjugation",
            "wreath compatibility, conjugation identity",
            "Conjugating base maps by acting maps permutes coordinates, 500 seeded cases per family.",
            Some(11),
            json!({ "kind": "verify-compat", "check": "conjugation", "families": ["sofic", "linear", "hyperlinear", "weak"], "p": 2, "dim": 2, "n": 4, "pool": 12, "cases": 500 }),
        ),
        entry(
            "action_refinement_suite",
            "support refinement",
            "Refining S by the approximation of F keeps more than (1 - eps)|A| points and lands in S, 500 instances.",
            Some(3),
            json!({ "kind": "verify-action", "check": "refinement-suite", "instances": 500, "max_points": 64 }),
        ),
        entry(
            "action_lef_to_orbit_shift",
            "LEF actions are sofic",
            "The shift on [-4, 4] witnessed mod 16 gives an exact orbit approximation.",
            None,
            json!({ "kind": "verify-action", "check": "lef-to-orbit", "window": [-4, 4], "generators": [-2, -1, 0, 1, 2], "modulus": 16, "eps": "1/100" }),
        ),
        entry(
            "action_folner_lamplighter",
            "amenable actions from Folner sets",
            "Folner-box automorphic approximation of the lamplighter action at eps = 1/4.",
            None,
            json!({ "kind": "verify-action", "check": "folner", "halo": "directsum:Z/2", "generators": [-1, 1], "window": [0, 1], "eps": "1/4" }),
        ),
        entry(
            "action_lift_consistency",
            "lifting orbit approximations through halos",
            "Orbit approximations of the shift lifted through four halos keep A, S and the defects of phi.",
            None,
            json!({ "kind": "verify-action", "check": "lift-consistency", "halos": ["directsum:Z/2", "sym", "alt", "directsum:Z/3"] }),
        ),
        entry(
            "lamplighter_shift_amalgamation",
            "amalgamation for semidirect products",
            "Full pipeline for Z/2 wr Z on the radius-2 ball in the sofic family; expects c'' = 1/2.",
            None,
            json!({ "kind": "amalgamate", "scenario": "halo-shift", "halo": "directsum:Z/2" }),
        ),
        entry(
            "lampshuffler_amalgamation",
            "amalgamation for semidirect products",
            "Full pipeline for the lampshuffler Sym_f(Z) x| Z on the radius-2 ball in the sofic family.",
            None,
            json!({ "kind": "amalgamate", "scenario": "halo-shift", "halo": "sym" }),
        ),
        entry(
            "exact_finite_amalgamation",
            "amalgamation for semidirect products, exact case",
            "Z/2 x Z/2 with exact inputs in all four families: zero defect and full separation.",
            None,
            json!({ "kind": "amalgamate", "scenario": "exact-finite", "families": ["sofic", "linear", "hyperlinear", "weak"] }),
        ),
        entry(
            "normal_form_p4_z3",
            "normal form for graph products",
            "100 random words on the path P4 over Z/3, 10 reduction strategies each, plus complete graphs vs direct sums.",
            Some(5),
            json!({
                "kind": "normal-form", "graph": { "path": 4 }, "vertex_group": "Z/3",
                "words": ["0:1 1:2 0:2 2:1", "1:1 3:2 1:2"], "random_words": 100, "max_len": 20, "strategies": 10,
                "complete_bijection": { "max_vertices": 3, "max_order": 3 }
            }),
        ),
        entry(
            "graphproduct_lef_p3",
            "graph products of LEF groups are LEF",
            "Radius-2 ball of the graph product of Z over P3 embedded mod 17.",
            None,
            json!({ "kind": "lef-embed", "engine": "graph-product", "graph": { "path": 3 }, "radius": 2, "modulus": 17 }),
        ),
        entry(
            "semidirect_lef_symmetric_enrichment",
            "LEF semidirect products from C-LEF witnesses",
            "Radius-2 ball of Sym_f(Z) x| Z embedded into (Sym(8) x| Z/8) x Z/8.",
            None,
            json!({ "kind": "lef-embed", "engine": "semidirect", "halo": "sym", "radius": 2, "modulus": 8, "extra_factor": 8 }),
        ),
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_configs_parse_and_are_unique() {
        let all = catalog();
        assert!(all.len() >= 10);
        let names: std::collections::BTreeSet<_> = all.iter().map(|e| e.name).collect();
        assert_eq!(names.len(), all.len());
        for e in &all {
            let cfg = e.config();
            assert_eq!(cfg.task.kind().name(), e.kind);
            assert!(!e.anchor.is_empty());
        }
    }
}
