//! Explicit permutations of `{0, .., n-1}`.
//!
//! Internally 0-based; the JSON form is the 1-based image array, so `[2, 1, 3]`
//! is the transposition swapping the first two points.

use std::fmt;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, mismatch, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(invalid(format!("image array {images:?} is not a bijection of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(invalid("1-based image array contains 0"));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Product of 1-based cycles, e.g. `from_cycles(4, &[&[1, 2], &[3, 4]])`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut p = Perm::identity(n);
        for cyc in cycles {
            let mut c = Perm::identity(n);
            for (k, &x) in cyc.iter().enumerate() {
                let y = cyc[(k + 1) % cyc.len()];
                if x == 0 || y == 0 || x as usize > n || y as usize > n {
                    return Err(invalid(format!("cycle entry out of range 1..={n}")));
                }
                c.images[x as usize - 1] = y - 1;
            }
            let c = Perm::from_images(c.images)?;
            p = p.compose(&c);
        }
        Ok(p)
    }

    /// The rotation `i -> i + k mod n`.
    pub fn cyclic_shift(n: usize, k: i64) -> Self {
        let m = n as i64;
        Perm { images: (0..m).map(|i| (i + k).rem_euclid(m.max(1)) as u32).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Perm::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Perm { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i == j as usize).count()
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_points() == self.degree()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    /// Disjoint cycles including fixed points, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_count()).is_multiple_of(2)
    }

    /// Lexicographic successor, or `None` at the last permutation.
    pub fn next_lex(&self) -> Option<Perm> {
        let mut v = self.images.clone();
        let n = v.len();
        if n < 2 {
            return None;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        Some(Perm { images: v })
    }

    /// All of Sym(n) in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = vec![Perm::identity(n)];
        while let Some(p) = out.last().unwrap().next_lex() {
            out.push(p);
        }
        out
    }
}

/// Normalized Hamming distance `1 - fix(στ⁻¹)/n`.
pub fn hamming_distance(a: &Perm, b: &Perm) -> Result<Rational> {
    if a.degree() != b.degree() {
        return Err(mismatch(format!("degrees {} and {}", a.degree(), b.degree())));
    }
    let n = a.degree();
    if n == 0 {
        return Ok(Rational::from_integer(0.into()));
    }
    let agree = (0..n).filter(|&i| a.apply(i) == b.apply(i)).count();
    Ok(Rational::new(BigInt::from(n - agree), BigInt::from(n)))
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation on 1-based points, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Perm::from_one_based(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn hamming_examples() {
        let id = Perm::identity(3);
        let t = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let c = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let c2 = Perm::from_cycles(3, &[&[1, 3, 2]]).unwrap();
        assert_eq!(hamming_distance(&id, &id).unwrap(), rat(0, 1));
        assert_eq!(hamming_distance(&t, &id).unwrap(), rat(2, 3));
        assert_eq!(hamming_distance(&c, &c2).unwrap(), rat(1, 1));
        assert!(hamming_distance(&id, &Perm::identity(4)).is_err());
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(Perm::identity(4).cycle_count(), 4);
        assert_eq!(Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap().cycle_count(), 2);
        assert_eq!(Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap().cycle_count(), 2);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[&[2, 3]]).unwrap();
        // (1 2)(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(a.compose(&b).one_based(), vec![2, 3, 1]);
    }

    #[test]
    fn all_perms_and_json() {
        assert_eq!(Perm::all(4).len(), 24);
        let p = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,1,3]");
        assert_eq!(serde_json::from_str::<Perm>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Perm>("[1,1,3]").is_err());
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(Perm::from_cycles(4, &[&[1, 3]]).unwrap().to_string(), "(1 3)");
        assert_eq!(Perm::identity(2).to_string(), "()");
    }
}
