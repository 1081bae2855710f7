//! Finitary invertible matrices over `Z/m`: identity off a finite support.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{invalid, Result};

/// Largest modulus accepted for finitary linear groups.
pub const MAX_MODULUS: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinitaryLinearMap {
    pub m: i64,
    /// Sorted, minimal: no point whose row and column are both trivial.
    pub support: Vec<i64>,
    /// Row-major over `support`.
    pub entries: Vec<i64>,
}

impl FinitaryLinearMap {
    pub fn identity(m: i64) -> Self {
        FinitaryLinearMap { m, support: Vec::new(), entries: Vec::new() }
    }

    /// Checks invertibility over `Z/m` and normalizes.
    pub fn new(m: i64, support: Vec<i64>, entries: Vec<i64>) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(invalid(format!("modulus {m} outside 2..={MAX_MODULUS}")));
        }
        let n = support.len();
        if entries.len() != n * n {
            return Err(invalid(format!("{} entries for support of size {n}", entries.len())));
        }
        let mut pairs: Vec<(i64, usize)> = support.iter().copied().zip(0..).collect();
        pairs.sort();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(invalid("repeated support point"));
        }
        let support: Vec<i64> = pairs.iter().map(|p| p.0).collect();
        let raw = &entries;
        let entries = pairs.iter().flat_map(|&(_, i)| pairs.iter().map(move |&(_, j)| raw[i * n + j].rem_euclid(m))).collect();
        let a = FinitaryLinearMap { m, support, entries };
        if det_mod(&a.entries, n, m).gcd(&m) != 1 {
            return Err(invalid("matrix is not invertible over the ring"));
        }
        Ok(a.normalized())
    }

    /// `E_{x,y}(r) = I + r e_{xy}`, `x ≠ y`.
    pub fn transvection(m: i64, x: i64, y: i64, r: i64) -> Result<Self> {
        if x == y {
            return Err(invalid("transvection needs distinct points"));
        }
        let (support, entries) = if x < y { (vec![x, y], vec![1, r, 0, 1]) } else { (vec![y, x], vec![1, 0, r, 1]) };
        Self::new(m, support, entries)
    }

    /// `D_x(λ)`, `λ` a unit.
    pub fn diagonal(m: i64, x: i64, lambda: i64) -> Result<Self> {
        Self::new(m, vec![x], vec![lambda])
    }

    /// Entry at labels `(x, y)`.
    pub fn entry(&self, x: i64, y: i64) -> i64 {
        match (self.support.binary_search(&x), self.support.binary_search(&y)) {
            (Ok(i), Ok(j)) => self.entries[i * self.support.len() + j],
            _ => i64::from(x == y),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.m;
        let pts: Vec<i64> = self.support.iter().chain(&other.support).copied().collect::<BTreeSet<_>>().into_iter().collect();
        let n = pts.len();
        let a = self.on(&pts);
        let b = other.on(&pts);
        let mut c = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] = (c[i * n + j] + aik * b[k * n + j]) % m;
                }
            }
        }
        FinitaryLinearMap { m, support: pts, entries: c }.normalized()
    }

    pub fn inv(&self) -> Self {
        let n = self.support.len();
        let entries = inverse_mod(&self.entries, n, self.m).expect("stored maps are invertible");
        FinitaryLinearMap { m: self.m, support: self.support.clone(), entries }.normalized()
    }

    /// Relabels the support through an injection.
    pub fn rename(&self, f: impl Fn(i64) -> i64) -> Self {
        let n = self.support.len();
        let mut idx: Vec<(i64, usize)> = self.support.iter().map(|&x| f(x)).zip(0..).collect();
        idx.sort();
        let support = idx.iter().map(|p| p.0).collect();
        let entries = idx.iter().flat_map(|&(_, i)| idx.iter().map(move |&(_, j)| self.entries[i * n + j])).collect();
        FinitaryLinearMap { m: self.m, support, entries }
    }

    /// The matrix restricted to `pts ⊇ support`, row-major.
    fn on(&self, pts: &[i64]) -> Vec<i64> {
        pts.iter().flat_map(|&x| pts.iter().map(move |&y| self.entry(x, y))).collect()
    }

    fn normalized(mut self) -> Self {
        loop {
            let n = self.support.len();
            let drop = (0..n).find(|&i| {
                (0..n).all(|j| {
                    let id = i64::from(i == j);
                    self.entries[i * n + j] == id && self.entries[j * n + i] == id
                })
            });
            let Some(i) = drop else { return self };
            let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            self.entries = keep.iter().flat_map(|&r| keep.iter().map(move |&c| (r, c))).map(|(r, c)| self.entries[r * n + c]).collect();
            self.support.remove(i);
        }
    }

    pub fn render(&self) -> String {
        if self.support.is_empty() {
            return "I".into();
        }
        let n = self.support.len();
        let rows: Vec<String> = (0..n).map(|i| format!("{:?}", &self.entries[i * n..(i + 1) * n])).collect();
        format!("{:?} {}", self.support, rows.join(""))
    }
}

/// Row reduction over `Z/m` by Euclidean row operations; returns the
/// determinant's residue.
pub fn det_mod(a: &[i64], n: usize, m: i64) -> i64 {
    let mut a = a.to_vec();
    let mut det = 1i64;
    for col in 0..n {
        euclid_column(&mut a, n, n, col, m, &mut det);
        det = det * a[col * n + col] % m;
    }
    det.rem_euclid(m)
}

fn inverse_mod(a: &[i64], n: usize, m: i64) -> Option<Vec<i64>> {
    // Augmented [A | I], width 2n.
    let w = 2 * n;
    let mut aug = vec![0; n * w];
    for i in 0..n {
        for j in 0..n {
            aug[i * w + j] = a[i * n + j].rem_euclid(m);
        }
        aug[i * w + n + i] = 1;
    }
    let mut sign = 1;
    for col in 0..n {
        euclid_column(&mut aug, n, w, col, m, &mut sign);
        let p = aug[col * w + col];
        let pinv = mod_inverse(p, m)?;
        for j in 0..w {
            aug[col * w + j] = aug[col * w + j] * pinv % m;
        }
        for r in 0..n {
            if r != col && aug[r * w + col] != 0 {
                let f = aug[r * w + col];
                for j in 0..w {
                    aug[r * w + j] = (aug[r * w + j] - f * aug[col * w + j]).rem_euclid(m);
                }
            }
        }
    }
    Some((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| aug[i * w + n + j]).collect())
}

/// Clears column `col` below the diagonal with gcd steps, leaving the gcd on
/// the diagonal. Tracks the sign of row swaps in `det`.
fn euclid_column(a: &mut [i64], rows: usize, w: usize, col: usize, m: i64, det: &mut i64) {
    loop {
        let nonzero: Vec<usize> = (col..rows).filter(|&r| a[r * w + col] != 0).collect();
        if nonzero.len() <= 1 {
            if let Some(&r) = nonzero.first() {
                if r != col {
                    swap_rows(a, w, r, col);
                    *det = -*det;
                }
            }
            return;
        }
        // Row with the smallest nonzero entry reduces the others.
        let &piv = nonzero.iter().min_by_key(|&&r| a[r * w + col]).unwrap();
        for &r in &nonzero {
            if r != piv {
                let q = a[r * w + col] / a[piv * w + col];
                for j in 0..w {
                    a[r * w + j] = (a[r * w + j] - q * a[piv * w + j]).rem_euclid(m);
                }
            }
        }
    }
}

fn swap_rows(a: &mut [i64], w: usize, r1: usize, r2: usize) {
    for j in 0..w {
        a.swap(r1 * w + j, r2 * w + j);
    }
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

pub fn is_unit(a: i64, m: i64) -> bool {
    a.rem_euclid(m).gcd(&m) == 1
}
