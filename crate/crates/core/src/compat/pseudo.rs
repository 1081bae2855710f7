//! Projective pseudo-metrics: rank and Hilbert-Schmidt distances minimized
//! over scalar multiples.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, mismatch, Error, Result};
use crate::metric::{Field, Matrix, PrimeField, RationalField, UnitaryMatrix};
use crate::rational::Rational;

/// `(1/n) min_λ rk(M − λN)` over `λ ∈ K*`.
pub trait PseudoRank: Field {
    fn pseudo_rank_distance(m: &Matrix<Self>, n: &Matrix<Self>) -> Result<Rational>;
}

fn same(m: &Matrix<impl Field>, n: &Matrix<impl Field>) -> Result<()> {
    if m.n != n.n {
        return Err(mismatch(format!("matrices of size {} and {}", m.n, n.n)));
    }
    Ok(())
}

fn normalized(rank: usize, n: usize) -> Rational {
    if n == 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::from(rank), BigInt::from(n))
    }
}

impl PseudoRank for PrimeField {
    /// Exhaustive over the units of `F_p`.
    fn pseudo_rank_distance(m: &Matrix<Self>, n: &Matrix<Self>) -> Result<Rational> {
        same(m, n)?;
        if m.field != n.field {
            return Err(mismatch("matrices over different fields"));
        }
        let best = (1..m.field.p).map(|l| m.sub(&n.scale(&l)).rank()).min().unwrap_or(m.n);
        Ok(normalized(best, m.n))
    }
}

impl PseudoRank for RationalField {
    /// Only eigenvalues of `MN⁻¹` can lower the rank below `n`; the rational
    /// ones are found among the rational-root candidates of the
    /// characteristic polynomial.
    fn pseudo_rank_distance(m: &Matrix<Self>, n: &Matrix<Self>) -> Result<Rational> {
        same(m, n)?;
        let ninv = n.inverse().ok_or_else(|| invalid("second argument is singular"))?;
        let a = m.mul(&ninv);
        let mut best = m.n;
        for lambda in rational_eigenvalues(&a)? {
            best = best.min(m.sub(&n.scale(&lambda)).rank());
        }
        Ok(normalized(best, m.n))
    }
}

/// Characteristic polynomial `det(tI − A)`, coefficients from constant term up
/// (Faddeev-LeVerrier).
pub fn char_poly(a: &Matrix<RationalField>) -> Vec<Rational> {
    let n = a.n;
    let f = RationalField;
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = Matrix::zero(&f, n);
    for k in 1..=n {
        let mut next = a.mul(&mk);
        for i in 0..n {
            let v = &next.entries[i * n + i] + &c[n - k + 1];
            next.entries[i * n + i] = v;
        }
        mk = next;
        let am = a.mul(&mk);
        let tr: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    c
}

/// Largest integer whose divisors are enumerated by trial division.
const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

fn divisors(v: &BigInt) -> Result<Vec<BigInt>> {
    let v = v.abs();
    let small: u64 = (&v).try_into().ok().filter(|x| *x <= DIVISOR_SEARCH_LIMIT).ok_or_else(|| Error::CapExceeded {
        what: "rational eigenvalue search".into(),
        needed: v.to_string(),
        cap: DIVISOR_SEARCH_LIMIT,
    })?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Distinct rational eigenvalues of `a`.
pub fn rational_eigenvalues(a: &Matrix<RationalField>) -> Result<Vec<Rational>> {
    let c = char_poly(a);
    // Clear denominators.
    let lcm = c.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    // Strip zero roots (not possible for invertible input, but keep the search total).
    let start = ints.iter().position(|x| !x.is_zero()).unwrap_or(0);
    let ints = &ints[start..];
    let mut roots = Vec::new();
    if start > 0 {
        roots.push(Rational::zero());
    }
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let lead = ints.last().expect("nonempty");
    let ps = divisors(&ints[0])?;
    let qs = divisors(lead)?;
    let eval = |x: &Rational| ints.iter().rev().fold(Rational::zero(), |acc, k| acc * x + Rational::from_integer(k.clone()));
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let x = Rational::new(p * sign, q.clone());
                if eval(&x).is_zero() && !roots.contains(&x) {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Number of grid phases in [`pseudo_hs_distance`].
pub const PHASE_GRID: usize = 1 << 12;

/// `min_{λ ∈ U(1)} sqrt((1/n)‖M − λN‖²)`: a uniform phase grid refined by
/// golden-section search around the best grid point.
pub fn pseudo_hs_distance(m: &UnitaryMatrix, n: &UnitaryMatrix) -> Result<f64> {
    if m.n != n.n {
        return Err(mismatch(format!("unitaries of size {} and {}", m.n, n.n)));
    }
    if m.n == 0 {
        return Ok(0.0);
    }
    let dim = m.n as f64;
    let f = |theta: f64| {
        let l = Complex64::from_polar(1.0, theta);
        let s: f64 = m.entries.iter().zip(&n.entries).map(|(a, b)| (a - l * b).norm_sqr()).sum();
        (s / dim).max(0.0).sqrt()
    };
    let step = std::f64::consts::TAU / PHASE_GRID as f64;
    let (mut best_t, mut best) = (0.0, f(0.0));
    for k in 1..PHASE_GRID {
        let t = k as f64 * step;
        let v = f(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let (mut lo, mut hi) = (best_t - step, best_t + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    Ok(best.min(f1).min(f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::matrix::rank_distance;
    use crate::rational::rat;
    use crate::rng::seeded;

    /// `‖A − λB‖² = 2n − 2 Re(conj(λ) Tr(AB*))`, minimized at `2n − 2|Tr(AB*)|`.
    fn closed_form(a: &UnitaryMatrix, b: &UnitaryMatrix) -> f64 {
        let t: Complex64 = (0..a.n).flat_map(|i| (0..a.n).map(move |j| (i, j))).map(|(i, j)| a.get(i, j) * b.get(i, j).conj()).sum();
        ((2.0 * a.n as f64 - 2.0 * t.norm()) / a.n as f64).max(0.0).sqrt()
    }

    #[test]
    fn pseudo_rank_examples_over_f3() {
        let f3 = PrimeField::new(3).unwrap();
        let i2 = Matrix::identity(&f3, 2);
        assert_eq!(PrimeField::pseudo_rank_distance(&i2, &i2).unwrap(), rat(0, 1));
        assert_eq!(PrimeField::pseudo_rank_distance(&Matrix::scalar(&f3, 2, 2), &i2).unwrap(), rat(0, 1));
        assert_eq!(PrimeField::pseudo_rank_distance(&Matrix::diag(&f3, &[1, 2]), &i2).unwrap(), rat(1, 2));
    }

    #[test]
    fn pseudo_rank_over_q_uses_rational_eigenvalues() {
        let q = RationalField;
        let i3 = Matrix::identity(&q, 3);
        let m = Matrix::diag(&q, &[2, 2, 5]);
        assert_eq!(RationalField::pseudo_rank_distance(&m, &i3).unwrap(), rat(1, 3));
        assert_eq!(rank_distance(&m, &i3).unwrap(), rat(1, 1));
        // Rotation by 90 degrees has no rational eigenvalue.
        let r = Matrix::from_rows(&q, &[vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(RationalField::pseudo_rank_distance(&r, &Matrix::identity(&q, 2)).unwrap(), rat(1, 1));
        let half = Matrix::from_entries(&q, 1, vec![rat(1, 2)]).unwrap();
        assert_eq!(rational_eigenvalues(&half).unwrap(), vec![rat(1, 2)]);
    }

    #[test]
    fn pseudo_rank_is_at_most_rank_distance() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        for f in [f2, f3] {
            let all = crate::metric::matrix::all_invertible(&f, 2);
            for a in &all {
                for b in &all {
                    assert!(PrimeField::pseudo_rank_distance(a, b).unwrap() <= rank_distance(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn pseudo_hs_examples_match_closed_form() {
        let i2 = UnitaryMatrix::identity(2);
        assert!(pseudo_hs_distance(&i2, &i2).unwrap() < 1e-12);
        let phase = UnitaryMatrix::scalar(2, Complex64::from_polar(1.0, 0.7));
        assert!(pseudo_hs_distance(&phase, &i2).unwrap() < 1e-6);
        let d = UnitaryMatrix::diag(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert!((pseudo_hs_distance(&d, &i2).unwrap() - 2f64.sqrt()).abs() < 1e-6);
        let mut rng = seeded(11, 0);
        for n in 1..=3 {
            for _ in 0..20 {
                let a = UnitaryMatrix::random(n, &mut rng);
                let b = UnitaryMatrix::random(n, &mut rng);
                let v = pseudo_hs_distance(&a, &b).unwrap();
                assert!((v - closed_form(&a, &b)).abs() < 1e-6);
                assert!(v <= crate::metric::hs_distance(&a, &b).unwrap() + 1e-12);
            }
        }
    }
}
