//! Scenario runner for the `halo-approx` library: JSON scenario files in,
//! deterministic JSON and text reports out.
//!
//! Exit codes: `0` every check passed, `1` a check failed, `2` the scenario
//! is malformed, `3` a size cap was exceeded.

pub mod catalog;
pub mod config;
pub mod report;
pub mod run;

use std::path::Path;

pub use catalog::{catalog, CatalogEntry};
pub use config::ScenarioConfig;
pub use report::RunReport;
pub use run::{run_scenario, RunError};

/// Parses a scenario, reporting the JSON path of the first offending field.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, RunError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let mut path = e.path().to_string();
        let mut message = e.inner().to_string();
        // Tagged enums buffer their content and lose the path below `task`.
        if path == "task" {
            if let Some((p, m)) = serde_json::from_str::<serde_json::Value>(text).ok().and_then(|v| locate_in_task(&v["task"])) {
                path = format!("task.{p}");
                message = m;
            }
        }
        RunError::Schema { path, message }
    })
}

/// Re-parses a task body as its concrete variant to find the failing field.
fn locate_in_task(task: &serde_json::Value) -> Option<(String, String)> {
    use config::*;
    use serde_json::Value;

    fn probe<T: serde::de::DeserializeOwned>(v: Value) -> Option<(String, String)> {
        serde_path_to_error::deserialize::<_, T>(v).err().map(|e| (e.path().to_string(), e.inner().to_string()))
    }

    let mut rest = task.as_object()?.clone();
    let kind = rest.remove("kind")?.as_str()?.to_string();
    let tag = match kind.as_str() {
        "normal-form" => return probe::<NormalFormTask>(Value::Object(rest)),
        "amalgamate" => "scenario",
        "lef-embed" => "engine",
        _ => "check",
    };
    let sub = rest.remove(tag)?.as_str()?.to_string();
    let body = Value::Object(rest);
    match (kind.as_str(), sub.as_str()) {
        ("verify-metric", "hamming-hs-bridge") => probe::<HammingHsBridge>(body),
        ("verify-metric", "weak-wreath") => probe::<WeakWreath>(body),
        ("verify-metric", "metric-transform") => probe::<MetricTransform>(body),
        ("verify-compat", "product-formula") => probe::<ProductFormula>(body),
        ("verify-compat", "linear-bounds") => probe::<LinearBounds>(body),
        ("verify-compat", "product") => probe::<Product>(body),
        ("verify-compat", "conjugation") => probe::<Conjugation>(body),
        ("verify-compat", "wreath") => probe::<Wreath>(body),
        ("verify-action", "refinement-suite") => probe::<RefinementSuite>(body),
        ("verify-action", "lef-to-orbit") => probe::<LefToOrbit>(body),
        ("verify-action", "folner") => probe::<Folner>(body),
        ("verify-action", "lift-consistency") => probe::<LiftConsistency>(body),
        ("amalgamate", "halo-shift") => probe::<HaloShift>(body),
        ("amalgamate", "exact-finite") => probe::<ExactFinite>(body),
        ("lef-embed", "graph-product") => probe::<GraphProduct>(body),
        ("lef-embed", "semidirect") => probe::<Semidirect>(body),
        _ => None,
    }
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_errors_point_at_the_field() {
        let bad = r#"{"schema": 1, "task": {"kind": "verify-metric", "check": "hamming-hs-bridge", "n": "four"}}"#;
        match parse_config(bad) {
            Err(RunError::Schema { path, .. }) => assert_eq!(path, "task.n"),
            other => panic!("{other:?}"),
        }
        let unknown = r#"{"schema": 1, "sedd": 3, "task": {"kind": "verify-metric", "check": "hamming-hs-bridge", "n": 3}}"#;
        assert!(matches!(parse_config(unknown), Err(RunError::Schema { .. })));
        let eps = r#"{"schema": 1, "task": {"kind": "amalgamate", "scenario": "halo-shift", "halo": "sym", "eps": "a/b"}}"#;
        match parse_config(eps) {
            Err(RunError::Schema { path, message }) => {
                assert_eq!(path, "task.eps");
                assert!(message.contains("not a rational"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_variants_point_at_the_task() {
        let bad = r#"{"schema": 1, "task": {"kind": "verify-metric", "check": "nope"}}"#;
        match parse_config(bad) {
            Err(RunError::Schema { path, message }) => {
                assert_eq!(path, "task");
                assert!(message.contains("nope"));
            }
            other => panic!("{other:?}"),
        }
        let nested = r#"{"schema": 1, "task": {"kind": "normal-form", "graph": {"path": 3}, "vertex_group": "Q"}}"#;
        match parse_config(nested) {
            Err(RunError::Schema { path, .. }) => assert_eq!(path, "task.vertex_group"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sampled_checks_need_a_seed() {
        let cfg = parse_config(r#"{"schema": 1, "task": {"kind": "verify-action", "check": "refinement-suite", "instances": 3, "max_points": 8}}"#)
            .unwrap();
        let err = run_scenario(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("needs a seed"));
    }

    #[test]
    fn cap_violations_are_distinguished() {
        let cfg =
            parse_config(r#"{"schema": 1, "cap": 100, "task": {"kind": "verify-compat", "check": "product-formula", "a": 3, "b": 4}}"#).unwrap();
        assert_eq!(run_scenario(&cfg).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn failing_checks_give_a_failing_report() {
        let cfg = parse_config(r#"{"schema": 1, "task": {"kind": "lef-embed", "engine": "semidirect", "halo": "sym", "radius": 2, "modulus": 8}}"#)
            .unwrap();
        let rep = run_scenario(&cfg).unwrap();
        assert!(rep.passed());
        let cfg = parse_config(
            r#"{"schema": 1, "task": {"kind": "lef-embed", "engine": "graph-product", "graph": {"path": 3}, "radius": 2, "modulus": 11}}"#,
        )
        .unwrap();
        let rep = run_scenario(&cfg).unwrap();
        assert!(!rep.passed());
        assert!(rep.checks[0].report.violations[0].contains("not defined"));
    }
}
