//! Unitary matrices with the normalized Hilbert-Schmidt metric.

use num_complex::Complex64;
use rand::Rng as _;

use crate::error::{invalid, mismatch, Result};
use crate::perm::Perm;
use crate::rational::Distance;
use crate::rng::Rng;

use super::MetricGroup;

/// Tolerance on `‖UU* − I‖_max`.
pub const UNITARY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    pub n: usize,
    /// Row-major.
    pub entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        UnitaryMatrix { n, entries }
    }

    pub fn scalar(n: usize, c: Complex64) -> Self {
        let mut m = Self::identity(n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn diag(d: &[Complex64]) -> Self {
        let n = d.len();
        let mut m = Self::identity(n);
        for (i, &c) in d.iter().enumerate() {
            m.entries[i * n + i] = c;
        }
        m
    }

    /// Validates unitarity to [`UNITARY_TOL`].
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(invalid(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        let m = UnitaryMatrix { n, entries };
        let err = m.unitarity_error();
        if err > UNITARY_TOL {
            return Err(invalid(format!("matrix is not unitary: |UU* - I|_max = {err:e}")));
        }
        Ok(m)
    }

    pub fn permutation(p: &Perm) -> Self {
        let n = p.degree();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            entries[p.apply(j) * n + j] = Complex64::new(1.0, 0.0);
        }
        UnitaryMatrix { n, entries }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "multiplying unitaries of different size");
        let n = self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        UnitaryMatrix { n, entries }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j).conj();
            }
        }
        UnitaryMatrix { n, entries }
    }

    pub fn unitarity_error(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let id = Self::identity(self.n);
        p.entries.iter().zip(&id.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (m, k) = (self.n, other.n);
        let n = m * k;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i1 in 0..m {
            for j1 in 0..m {
                let a = self.get(i1, j1);
                for i2 in 0..k {
                    for j2 in 0..k {
                        entries[(i1 * k + i2) * n + j1 * k + j2] = a * other.get(i2, j2);
                    }
                }
            }
        }
        UnitaryMatrix { n, entries }
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    entries[(off + i) * n + off + j] = b.get(i, j);
                }
            }
            off += b.n;
        }
        UnitaryMatrix { n, entries }
    }

    /// `diag(A, I_m)`.
    pub fn hat(&self) -> Self {
        Self::block_diag(&[self.clone(), Self::identity(self.n)])
    }

    /// Haar-distributed unitary: Gram-Schmidt on a complex Gaussian matrix.
    pub fn random(n: usize, rng: &mut Rng) -> Self {
        let mut gauss = || {
            // Box-Muller
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|_| (0..n).map(|_| Complex64::new(gauss(), gauss())).collect()).collect();
        for j in 0..n {
            for k in 0..j {
                let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..n {
                    let v = cols[k][i];
                    cols[j][i] -= proj * v;
                }
            }
            let norm = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in cols[j].iter_mut() {
                *c /= norm;
            }
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for (j, col) in cols.iter().enumerate() {
            for (i, &c) in col.iter().enumerate() {
                entries[i * n + j] = c;
            }
        }
        UnitaryMatrix { n, entries }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.n)
            .map(|i| serde_json::Value::Array((0..self.n).map(|j| serde_json::json!([self.get(i, j).re, self.get(i, j).im])).collect()))
            .collect();
        serde_json::json!({ "rows": rows })
    }
}

/// `sqrt((1/n) Σ |a_ij − b_ij|²)`.
pub fn hs_distance(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64> {
    if a.n != b.n {
        return Err(mismatch(format!("unitaries of size {} and {}", a.n, b.n)));
    }
    for (name, m) in [("left", a), ("right", b)] {
        let err = m.unitarity_error();
        if err > UNITARY_TOL {
            return Err(invalid(format!("{name} operand is not unitary (error {err:e})")));
        }
    }
    Ok(hs_raw(a, b))
}

pub(crate) fn hs_raw(a: &UnitaryMatrix, b: &UnitaryMatrix) -> f64 {
    if a.n == 0 {
        return 0.0;
    }
    let s: f64 = a.entries.iter().zip(&b.entries).map(|(x, y)| (x - y).norm_sqr()).sum();
    (s / a.n as f64).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryGroup {
    pub dim: usize,
}

impl MetricGroup for UnitaryGroup {
    type Elem = UnitaryMatrix;

    fn describe(&self) -> String {
        format!("U({})", self.dim)
    }

    fn identity(&self) -> UnitaryMatrix {
        UnitaryMatrix::identity(self.dim)
    }

    fn mul(&self, a: &UnitaryMatrix, b: &UnitaryMatrix) -> UnitaryMatrix {
        a.mul(b)
    }

    fn inv(&self, a: &UnitaryMatrix) -> UnitaryMatrix {
        a.adjoint()
    }

    fn distance(&self, a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<Distance> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(Distance::Float(hs_raw(a, b)))
    }

    fn validate(&self, a: &UnitaryMatrix) -> Result<()> {
        if a.n != self.dim {
            return Err(mismatch(format!("{}x{} matrix is not in U({})", a.n, a.n, self.dim)));
        }
        Ok(())
    }

    fn render(&self, a: &UnitaryMatrix) -> String {
        a.to_json()["rows"].to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn hs_examples() {
        let i2 = UnitaryMatrix::identity(2);
        let swap = UnitaryMatrix::permutation(&Perm::transposition(2, 0, 1));
        let minus = UnitaryMatrix::scalar(2, Complex64::new(-1.0, 0.0));
        assert_eq!(hs_distance(&i2, &i2).unwrap(), 0.0);
        assert!((hs_distance(&swap, &i2).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!((hs_distance(&minus, &i2).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let bad = UnitaryMatrix { n: 1, entries: vec![Complex64::new(2.0, 0.0)] };
        assert!(hs_distance(&bad, &UnitaryMatrix::identity(1)).is_err());
        assert!(UnitaryMatrix::new(1, vec![Complex64::new(0.6, 0.8)]).is_ok());
    }

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = seeded(3, 0);
        for n in 1..=4 {
            assert!(UnitaryMatrix::random(n, &mut rng).unitarity_error() < 1e-12);
        }
    }
}
