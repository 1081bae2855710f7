//! Vertex groups of direct sums and graph products; elements are `i64`.

use crate::group::{Group, TableGroup};

#[derive(Clone, Debug, PartialEq)]
pub enum VertexGroup {
    Integers,
    /// `Z/m`, `m ≥ 1`.
    Cyclic(i64),
    Table(Box<TableGroup>),
}

impl VertexGroup {
    pub fn describe(&self) -> String {
        match self {
            VertexGroup::Integers => "Z".into(),
            VertexGroup::Cyclic(m) => format!("Z/{m}"),
            VertexGroup::Table(t) => t.describe(),
        }
    }

    pub fn identity(&self) -> i64 {
        match self {
            VertexGroup::Table(t) => t.identity as i64,
            _ => 0,
        }
    }

    pub fn is_identity(&self, a: i64) -> bool {
        a == self.identity()
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match self {
            VertexGroup::Integers => a + b,
            VertexGroup::Cyclic(m) => (a + b).rem_euclid(*m),
            VertexGroup::Table(t) => t.table[a as usize][b as usize] as i64,
        }
    }

    pub fn inv(&self, a: i64) -> i64 {
        match self {
            VertexGroup::Integers => -a,
            VertexGroup::Cyclic(m) => (-a).rem_euclid(*m),
            VertexGroup::Table(t) => t.inverses[a as usize] as i64,
        }
    }

    pub fn contains(&self, a: i64) -> bool {
        match self {
            VertexGroup::Integers => true,
            VertexGroup::Cyclic(m) => (0..*m).contains(&a),
            VertexGroup::Table(t) => a >= 0 && (a as usize) < t.order(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            VertexGroup::Integers => None,
            VertexGroup::Cyclic(m) => Some(*m as usize),
            VertexGroup::Table(t) => Some(t.order()),
        }
    }

    /// Every element, when finite.
    pub fn elements(&self) -> Option<Vec<i64>> {
        self.order().map(|n| (0..n as i64).collect())
    }

    pub fn generators(&self) -> Vec<i64> {
        match self {
            VertexGroup::Integers => vec![1],
            VertexGroup::Cyclic(m) if *m > 1 => vec![1],
            VertexGroup::Cyclic(_) => vec![],
            VertexGroup::Table(t) => (0..t.order() as i64).filter(|&a| a != t.identity as i64).collect(),
        }
    }

    pub fn render(&self, a: i64) -> String {
        match self {
            VertexGroup::Table(t) => t.labels[a as usize].clone(),
            _ => a.to_string(),
        }
    }
}
