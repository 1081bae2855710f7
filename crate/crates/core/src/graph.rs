//! Simple graphs on integer-labelled vertices, possibly infinite.
//!
//! Plain sets are graphs without edges. Vertex order is the integer order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Edges {
    None,
    All,
    /// `x ~ y` iff `|x − y| = 1`.
    Path,
    /// `x ~ y` iff `x − y ≡ ±1 (mod m)`.
    Cycle(i64),
    /// Explicit pairs, stored with the smaller endpoint first.
    List(BTreeSet<(i64, i64)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    /// `None` means every integer.
    pub vertices: Option<BTreeSet<i64>>,
    pub edges: Edges,
}

impl Graph {
    pub fn set(points: impl IntoIterator<Item = i64>) -> Self {
        Graph { vertices: Some(points.into_iter().collect()), edges: Edges::None }
    }

    pub fn range(n: i64) -> Self {
        Self::set(0..n)
    }

    pub fn integers() -> Self {
        Graph { vertices: None, edges: Edges::None }
    }

    pub fn integer_path() -> Self {
        Graph { vertices: None, edges: Edges::Path }
    }

    /// Path on `0, .., n-1`.
    pub fn path(n: i64) -> Self {
        Graph { vertices: Some((0..n).collect()), edges: Edges::Path }
    }

    pub fn cycle(m: i64) -> Self {
        Graph { vertices: Some((0..m).collect()), edges: Edges::Cycle(m) }
    }

    pub fn complete(n: i64) -> Self {
        Graph { vertices: Some((0..n).collect()), edges: Edges::All }
    }

    pub fn from_edges(vertices: impl IntoIterator<Item = i64>, edges: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        let vertices: BTreeSet<i64> = vertices.into_iter().collect();
        let mut list = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(invalid(format!("loop at vertex {a}")));
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(invalid(format!("edge ({a}, {b}) leaves the vertex set")));
            }
            list.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { vertices: Some(vertices), edges: Edges::List(list) })
    }

    pub fn contains(&self, v: i64) -> bool {
        self.vertices.as_ref().is_none_or(|vs| vs.contains(&v))
    }

    pub fn is_finite(&self) -> bool {
        self.vertices.is_some()
    }

    pub fn len(&self) -> Option<usize> {
        self.vertices.as_ref().map(|v| v.len())
    }

    pub fn adjacent(&self, a: i64, b: i64) -> bool {
        if a == b {
            return false;
        }
        match &self.edges {
            Edges::None => false,
            Edges::All => true,
            Edges::Path => (a - b).abs() == 1,
            Edges::Cycle(m) => {
                let d = (a - b).rem_euclid(*m);
                d == 1 || d == m - 1
            }
            Edges::List(l) => l.contains(&(a.min(b), a.max(b))),
        }
    }

    /// Induced subgraph on `points` (which must be vertices).
    pub fn induced(&self, points: &BTreeSet<i64>) -> Result<Graph> {
        if let Some(v) = points.iter().find(|v| !self.contains(**v)) {
            return Err(invalid(format!("{v} is not a vertex")));
        }
        let edges = match &self.edges {
            Edges::List(l) => Edges::List(l.iter().filter(|(a, b)| points.contains(a) && points.contains(b)).copied().collect()),
            other => other.clone(),
        };
        Ok(Graph { vertices: Some(points.clone()), edges })
    }

    pub fn describe(&self) -> String {
        let vs = match &self.vertices {
            None => "Z".to_string(),
            Some(v) if v.is_empty() => "{}".to_string(),
            Some(v) => {
                let lo = *v.first().unwrap();
                let hi = *v.last().unwrap();
                if (hi - lo + 1) as usize == v.len() {
                    format!("[{lo}, {hi}]")
                } else {
                    format!("{v:?}")
                }
            }
        };
        match &self.edges {
            Edges::None => vs,
            Edges::All => format!("complete graph on {vs}"),
            Edges::Path => format!("path on {vs}"),
            Edges::Cycle(m) => format!("{m}-cycle on {vs}"),
            Edges::List(l) => format!("graph on {vs} with {} edges", l.len()),
        }
    }
}

/// `Ok` iff `map` is injective into `to`, defined on vertices of `from`, and
/// preserves and reflects adjacency (an induced-subgraph embedding).
pub fn check_induced_embedding(from: &Graph, to: &Graph, map: &BTreeMap<i64, i64>) -> std::result::Result<(), String> {
    let mut seen = BTreeMap::new();
    for (&x, &y) in map {
        if !from.contains(x) {
            return Err(format!("{x} is not a vertex of the source"));
        }
        if !to.contains(y) {
            return Err(format!("{x} maps to {y}, not a vertex of the target"));
        }
        if let Some(prev) = seen.insert(y, x) {
            return Err(format!("{prev} and {x} both map to {y}"));
        }
    }
    let pts: Vec<(i64, i64)> = map.iter().map(|(a, b)| (*a, *b)).collect();
    for (i, &(x, fx)) in pts.iter().enumerate() {
        for &(y, fy) in &pts[i + 1..] {
            if from.adjacent(x, y) != to.adjacent(fx, fy) {
                return Err(format!("adjacency of ({x}, {y}) is not preserved by ({fx}, {fy})"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_rules() {
        let c = Graph::cycle(8);
        assert!(c.adjacent(0, 7) && c.adjacent(3, 4) && !c.adjacent(0, 2));
        let p = Graph::integer_path();
        assert!(p.adjacent(-1, 0) && !p.adjacent(-1, 1));
        let g = Graph::from_edges(0..3, [(1, 0)]).unwrap();
        assert!(g.adjacent(0, 1) && !g.adjacent(1, 2));
        assert!(Graph::from_edges(0..3, [(1, 1)]).is_err());
    }

    #[test]
    fn window_of_the_integer_path_embeds_in_a_long_cycle() {
        let window: BTreeMap<i64, i64> = (-3i64..=3).map(|x| (x, x.rem_euclid(8))).collect();
        assert!(check_induced_embedding(&Graph::integer_path(), &Graph::cycle(8), &window).is_ok());
        let wide: BTreeMap<i64, i64> = (-4i64..=3).map(|x| (x, x.rem_euclid(8))).collect();
        // -4 and 3 become adjacent.
        assert!(check_induced_embedding(&Graph::integer_path(), &Graph::cycle(8), &wide).is_err());
    }
}
