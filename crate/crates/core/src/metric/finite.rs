//! Finite groups given by Cayley tables, with tabulated rational metrics.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, mismatch, Result};
use crate::perm::{hamming_distance, Perm};
use crate::rational::{self, Distance, Rational};
use crate::report::CheckReport;

use super::MetricGroup;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricGroup {
    pub name: String,
    pub labels: Vec<String>,
    /// `table[a][b]` is the index of `ab`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverses: Vec<usize>,
    /// Row-major metric table.
    pub metric: Vec<Vec<Rational>>,
}

impl FiniteMetricGroup {
    /// Validates the group axioms on the table; the metric is checked separately
    /// by [`FiniteMetricGroup::check_biinvariant_metric`].
    pub fn new(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>, metric: Vec<Vec<Rational>>) -> Result<Self> {
        let n = table.len();
        if labels.len() != n || table.iter().any(|r| r.len() != n) || metric.len() != n || metric.iter().any(|r| r.len() != n) {
            return Err(mismatch("labels, multiplication table and metric table must all have the group order"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(invalid("multiplication table entry out of range"));
        }
        let identity =
            (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)).ok_or_else(|| invalid("multiplication table has no identity"))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| invalid(format!("element {} has no inverse", labels[a])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(invalid(format!("multiplication is not associative at ({}, {}, {})", labels[a], labels[b], labels[c])));
                    }
                }
            }
        }
        Ok(FiniteMetricGroup { name: name.into(), labels, table, identity, inverses, metric })
    }

    /// Builds the table by closing a list of elements of a concrete group.
    pub fn from_elements<T: Clone + Eq + std::hash::Hash>(
        name: impl Into<String>,
        elems: &[T],
        label: impl Fn(&T) -> String,
        mul: impl Fn(&T, &T) -> T,
        dist: impl Fn(&T, &T) -> Rational,
    ) -> Result<Self> {
        let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elems.len() {
            return Err(invalid("element list has duplicates"));
        }
        let mut table = vec![vec![0; elems.len()]; elems.len()];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i][j] = *index.get(&mul(a, b)).ok_or_else(|| invalid("element list is not closed under multiplication"))?;
            }
        }
        let metric = elems.iter().map(|a| elems.iter().map(|b| dist(a, b)).collect()).collect();
        Self::new(name, elems.iter().map(label).collect(), table, metric)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// `Z/m` with the discrete metric.
    pub fn cyclic_discrete(m: usize) -> Self {
        let elems: Vec<usize> = (0..m).collect();
        Self::from_elements(format!("Z/{m}"), &elems, |a| a.to_string(), |a, b| (a + b) % m, discrete).expect("cyclic group")
    }

    /// `Sym(n)` with the normalized Hamming metric, elements in lexicographic order.
    pub fn symmetric_hamming(n: usize) -> Self {
        let elems = Perm::all(n);
        Self::from_elements(format!("Sym({n})"), &elems, |p| p.to_string(), |a, b| a.compose(b), |a, b| hamming_distance(a, b).expect("same degree"))
            .expect("symmetric group")
    }

    /// Same group, discrete metric.
    pub fn with_discrete_metric(&self) -> Self {
        let n = self.order();
        let metric = (0..n).map(|i| (0..n).map(|j| discrete(&i, &j)).collect()).collect();
        FiniteMetricGroup { metric, name: format!("{} (discrete)", self.name), ..self.clone() }
    }

    pub fn with_metric(&self, metric: Vec<Vec<Rational>>) -> Result<Self> {
        if metric.len() != self.order() || metric.iter().any(|r| r.len() != self.order()) {
            return Err(mismatch("metric table size differs from group order"));
        }
        Ok(FiniteMetricGroup { metric, ..self.clone() })
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Metric axioms, diameter ≤ 1 and two-sided invariance over all triples.
    pub fn check_biinvariant_metric(&self) -> CheckReport {
        let mut r = CheckReport::new(format!("bi-invariant metric on {}", self.name));
        let n = self.order();
        let d = &self.metric;
        let l = &self.labels;
        let one = Rational::one();
        for x in 0..n {
            for y in 0..n {
                let v = &d[x][y];
                if (x == y) != v.is_zero() {
                    r.violation(format!("d({}, {}) = {v} breaks identity of indiscernibles", l[x], l[y]));
                }
                if v < &Rational::zero() || v > &one {
                    r.violation(format!("d({}, {}) = {v} outside [0, 1]", l[x], l[y]));
                }
                if v != &d[y][x] {
                    r.violation(format!("asymmetric pair ({}, {}): {v} vs {}", l[x], l[y], d[y][x]));
                }
            }
        }
        for g in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let t = &self.table;
                    if d[t[g][x]][t[g][y]] != d[x][y] || d[t[x][g]][t[y][g]] != d[x][y] {
                        r.violation(format!("invariance fails at g={}, x={}, y={}", l[g], l[x], l[y]));
                    }
                    if d[x][y] > &d[x][g] + &d[g][y] {
                        r.violation(format!("triangle fails: d({}, {}) > d({}, {}) + d({}, {})", l[x], l[y], l[x], l[g], l[g], l[y]));
                    }
                }
            }
        }
        r.note(format!("exhaustive over {} triples", n * n * n));
        r
    }
}

fn discrete<T: PartialEq>(a: &T, b: &T) -> Rational {
    if a == b {
        Rational::zero()
    } else {
        Rational::one()
    }
}

/// `f(x) = 2x − x²`.
pub fn amplify(x: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    &two * x - x * x
}

/// Applies `f(x) = 2x − x²` entrywise `n` times.
pub fn metric_transform_pow(d: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    d.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let mut v = x.clone();
                    for _ in 0..n {
                        v = amplify(&v);
                    }
                    v
                })
                .collect()
        })
        .collect()
}

impl MetricGroup for FiniteMetricGroup {
    type Elem = usize;

    fn describe(&self) -> String {
        self.name.clone()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverses[*a]
    }

    fn distance(&self, a: &usize, b: &usize) -> Result<Distance> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(Distance::Exact(self.metric[*a][*b].clone()))
    }

    fn validate(&self, a: &usize) -> Result<()> {
        if *a >= self.order() {
            return Err(mismatch(format!("index {a} is not an element of {}", self.name)));
        }
        Ok(())
    }

    fn render(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

/// JSON literal: `{"name", "labels", "table", "metric"}` with rationals as
/// `{"num","den"}`; `metric` may be the string `"discrete"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteMetricGroupSpec {
    pub name: String,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
    pub metric: serde_json::Value,
}

impl FiniteMetricGroupSpec {
    pub fn build(&self) -> Result<FiniteMetricGroup> {
        let n = self.table.len();
        let labels = self.labels.clone().unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        let metric = match &self.metric {
            serde_json::Value::String(s) if s == "discrete" => (0..n).map(|i| (0..n).map(|j| discrete(&i, &j)).collect()).collect(),
            serde_json::Value::Array(rows) => rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| invalid("metric rows must be arrays"))?
                        .iter()
                        .map(|v| rational::rational_from_json(v).ok_or_else(|| invalid("metric entry is not a rational")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
            _ => return Err(invalid("metric must be \"discrete\" or a table of rationals")),
        };
        FiniteMetricGroup::new(self.name.clone(), labels, self.table.clone(), metric)
    }
}
