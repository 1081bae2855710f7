//! Dense square matrices over an exact field, and `GL_n` with the rank metric.

use num_bigint::BigInt;

use crate::error::{invalid, mismatch, Result};
use crate::perm::Perm;
use crate::rational::{Distance, Rational};

use super::field::Field;
use super::MetricGroup;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub field: F,
    pub n: usize,
    /// Row-major.
    pub entries: Vec<F::E>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: &F, n: usize) -> Self {
        Matrix { field: field.clone(), n, entries: vec![field.zero(); n * n] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: &F, n: usize, c: i64) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = field.from_i64(c);
        }
        m
    }

    pub fn diag(field: &F, d: &[i64]) -> Self {
        let n = d.len();
        let mut m = Self::zero(field, n);
        for (i, &v) in d.iter().enumerate() {
            m.entries[i * n + i] = field.from_i64(v);
        }
        m
    }

    pub fn from_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("matrix rows must form a square array"));
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Ok(Matrix { field: field.clone(), n, entries })
    }

    pub fn from_entries(field: &F, n: usize, entries: Vec<F::E>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(invalid(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        Ok(Matrix { field: field.clone(), n, entries })
    }

    /// `P(σ)_{i,j} = 1` iff `i = σ(j)`.
    pub fn permutation(field: &F, p: &Perm) -> Self {
        let n = p.degree();
        let mut m = Self::zero(field, n);
        for j in 0..n {
            m.entries[p.apply(j) * n + j] = field.one();
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::E {
        &self.entries[i * self.n + j]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.field != other.field {
            return Err(mismatch(format!(
                "{}x{} over {} vs {}x{} over {}",
                self.n,
                self.n,
                self.field.describe(),
                other.n,
                other.n,
                other.field.describe()
            )));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), n: self.n, entries }
    }

    pub fn scale(&self, c: &F::E) -> Self {
        let f = &self.field;
        Matrix { field: f.clone(), n: self.n, entries: self.entries.iter().map(|a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "multiplying matrices of different size");
        let (f, n) = (&self.field, self.n);
        let mut out = Self::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(a, other.get(k, j));
                    let idx = i * n + j;
                    out.entries[idx] = f.add(&out.entries[idx], &t);
                }
            }
        }
        out
    }

    /// Row-echelon form in place; returns the rank.
    fn eliminate(rows: &mut [Vec<F::E>], f: &F, cols: usize) -> usize {
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][c])) else { continue };
            rows.swap(rank, p);
            let inv = f.inv(&rows[rank][c]);
            for v in rows[rank].iter_mut() {
                *v = f.mul(v, &inv);
            }
            let pivot = rows[rank].clone();
            for r in 0..rows.len() {
                if r != rank && !f.is_zero(&rows[r][c]) {
                    let factor = rows[r][c].clone();
                    for (v, pv) in rows[r].iter_mut().zip(&pivot) {
                        *v = f.sub(v, &f.mul(&factor, pv));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn rows(&self) -> Vec<Vec<F::E>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let mut rows = self.rows();
        Self::eliminate(&mut rows, &self.field, self.n)
    }

    pub fn inverse(&self) -> Option<Self> {
        let (f, n) = (&self.field, self.n);
        let mut rows: Vec<Vec<F::E>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        if Self::eliminate(&mut rows, f, n) < n {
            return None;
        }
        let entries = rows.into_iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(Matrix { field: f.clone(), n, entries })
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let (m, k) = (self.n, other.n);
        let n = m * k;
        let mut out = Self::zero(f, n);
        for i1 in 0..m {
            for j1 in 0..m {
                let a = self.get(i1, j1);
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..k {
                    for j2 in 0..k {
                        out.entries[(i1 * k + i2) * n + j1 * k + j2] = f.mul(a, other.get(i2, j2));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(field: &F, blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zero(field, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.entries[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        out
    }

    /// `diag(A, I_m)`.
    pub fn hat(&self) -> Self {
        Self::block_diag(&self.field, &[self.clone(), Self::identity(&self.field, self.n)])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> =
            (0..self.n).map(|i| serde_json::Value::Array((0..self.n).map(|j| self.field.to_json(self.get(i, j))).collect())).collect();
        serde_json::json!({ "field": self.field.describe(), "rows": rows })
    }
}

/// Normalized rank distance `rk(M − N)/n`.
pub fn rank_distance<F: Field>(m: &Matrix<F>, n: &Matrix<F>) -> Result<Rational> {
    m.check_same(n)?;
    if m.n == 0 {
        return Ok(Rational::from_integer(0.into()));
    }
    Ok(Rational::new(BigInt::from(m.sub(n).rank()), BigInt::from(m.n)))
}

/// `GL_n(K)` with the normalized rank metric.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralLinear<F: Field> {
    pub field: F,
    pub dim: usize,
}

impl<F: Field> GeneralLinear<F> {
    pub fn new(field: F, dim: usize) -> Self {
        GeneralLinear { field, dim }
    }
}

impl<F: Field> MetricGroup for GeneralLinear<F> {
    type Elem = Matrix<F>;

    fn describe(&self) -> String {
        format!("GL_{}({})", self.dim, self.field.describe())
    }

    fn identity(&self) -> Matrix<F> {
        Matrix::identity(&self.field, self.dim)
    }

    fn mul(&self, a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
        a.mul(b)
    }

    fn inv(&self, a: &Matrix<F>) -> Matrix<F> {
        a.inverse().expect("singular matrix in GL_n")
    }

    fn distance(&self, a: &Matrix<F>, b: &Matrix<F>) -> Result<Distance> {
        self.validate(a)?;
        self.validate(b)?;
        rank_distance(a, b).map(Distance::Exact)
    }

    fn validate(&self, a: &Matrix<F>) -> Result<()> {
        if a.n != self.dim || a.field != self.field {
            return Err(mismatch(format!("matrix does not belong to {}", self.describe())));
        }
        Ok(())
    }

    fn render(&self, a: &Matrix<F>) -> String {
        a.to_json()["rows"].to_string()
    }
}

/// All invertible `n × n` matrices over `F_p` (small `p^(n²)` only).
pub fn all_invertible(field: &super::field::PrimeField, n: usize) -> Vec<Matrix<super::field::PrimeField>> {
    let p = field.p as u64;
    let total = p.pow((n * n) as u32);
    (0..total)
        .filter_map(|mut code| {
            let entries = (0..n * n)
                .map(|_| {
                    let v = (code % p) as u32;
                    code /= p;
                    v
                })
                .collect();
            let m = Matrix { field: *field, n, entries };
            m.is_invertible().then_some(m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, RationalField};
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rank_distance_examples_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let i2 = Matrix::identity(&f, 2);
        assert_eq!(rank_distance(&i2, &i2).unwrap(), rat(0, 1));
        assert_eq!(rank_distance(&Matrix::diag(&f, &[1, 2]), &i2).unwrap(), rat(1, 2));
        assert_eq!(rank_distance(&Matrix::scalar(&f, 2, 2), &i2).unwrap(), rat(1, 1));
    }

    #[test]
    fn gl_sizes() {
        assert_eq!(all_invertible(&PrimeField::new(2).unwrap(), 2).len(), 6);
        assert_eq!(all_invertible(&PrimeField::new(3).unwrap(), 2).len(), 48);
    }

    #[test]
    fn permutation_matrix_convention() {
        let f = PrimeField::new(5).unwrap();
        let p = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let m = Matrix::permutation(&f, &p);
        // column j has its 1 in row σ(j)
        assert_eq!(*m.get(1, 0), 1);
        let q = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(m.mul(&Matrix::permutation(&f, &q)), Matrix::permutation(&f, &p.compose(&q)));
        assert_eq!(Matrix::permutation(&f, &Perm::transposition(2, 0, 1)), Matrix::from_rows(&f, &[vec![0, 1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn inverse_and_kron() {
        let q = RationalField;
        let a = Matrix::from_rows(&q, &[vec![2, 1], vec![1, 1]]).unwrap();
        let b = Matrix::from_rows(&q, &[vec![0, 1], vec![-1, 3]]).unwrap();
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(&q, 2));
        // mixed-product property
        assert_eq!(a.kron(&b).mul(&b.kron(&a)), a.mul(&b).kron(&b.mul(&a)));
        assert!(Matrix::from_rows(&q, &[vec![1, 2], vec![2, 4]]).unwrap().inverse().is_none());
    }

    #[test]
    fn rank_over_q_and_fp_agree_when_pivots_avoid_p() {
        let rows = vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]];
        let q = Matrix::from_rows(&RationalField, &rows).unwrap();
        let f7 = Matrix::from_rows(&PrimeField::new(7).unwrap(), &rows).unwrap();
        assert_eq!(q.rank(), f7.rank());
        // det = 1, so the rank survives every prime; a rank drop needs p | det.
        let singular_mod_5 = vec![vec![1, 2], vec![3, 1]]; // det = -5
        assert_eq!(Matrix::from_rows(&RationalField, &singular_mod_5).unwrap().rank(), 2);
        assert_eq!(Matrix::from_rows(&PrimeField::new(5).unwrap(), &singular_mod_5).unwrap().rank(), 1);
    }
}
