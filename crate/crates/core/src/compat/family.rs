//! The four compatible metric families with their product, base and acting maps.

use std::fmt::Debug;

use num_traits::One;

use crate::metric::{Field, GeneralLinear, Matrix, MetricGroup, Shape, SymElem, SymmetricGroup, UnitaryGroup, UnitaryMatrix, WeakElem, WeakGroup};
use crate::perm::Perm;
use crate::rational::{rat, rat_int, Rational};

pub type Elem<C> = <<C as CompatFamily>::Group as MetricGroup>::Elem;

/// A product- and wreath-compatible metric family.
pub trait CompatFamily: Clone + Debug {
    type Group: MetricGroup + Clone + Debug;

    fn name(&self) -> String;
    /// Lower-bound constant of the product map.
    fn mu(&self) -> Rational;
    /// Continuity modulus of the product map: `d < δ` in both factors gives `d < ε`.
    fn product_delta(&self, eps: &Rational) -> Rational;
    /// Continuity modulus of the base and acting maps on `n` coordinates.
    fn wreath_delta(&self, eps: &Rational, n: usize) -> Rational;
    /// Slack for identities that only hold up to rounding.
    fn tolerance(&self) -> f64 {
        0.0
    }

    fn product_group(&self, a: &Self::Group, b: &Self::Group) -> Self::Group;
    fn product_map(&self, a: &Self::Group, b: &Self::Group, x: &Elem<Self>, y: &Elem<Self>) -> Elem<Self>;
    fn wreath_group(&self, g: &Self::Group, n: usize) -> Self::Group;
    /// `τ : G^n → G'`.
    fn base_map(&self, g: &Self::Group, xs: &[Elem<Self>]) -> Elem<Self>;
    /// `ψ : Sym(n) → G'`.
    fn acting_map(&self, g: &Self::Group, n: usize, s: &Perm) -> Elem<Self>;
}

/// Symmetric groups with the normalized Hamming metric.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sofic;

impl CompatFamily for Sofic {
    type Group = SymmetricGroup;

    fn name(&self) -> String {
        "sofic".into()
    }
    fn mu(&self) -> Rational {
        Rational::one()
    }
    fn product_delta(&self, eps: &Rational) -> Rational {
        eps / rat_int(2)
    }
    fn wreath_delta(&self, eps: &Rational, n: usize) -> Rational {
        eps / rat_int(2 * n as i64)
    }
    fn product_group(&self, a: &SymmetricGroup, b: &SymmetricGroup) -> SymmetricGroup {
        SymmetricGroup::new(Shape::product(a.shape.clone(), b.shape.clone())).with_method(a.method.clone())
    }
    fn product_map(&self, _: &SymmetricGroup, _: &SymmetricGroup, x: &SymElem, y: &SymElem) -> SymElem {
        SymElem::product(x.clone(), y.clone())
    }
    fn wreath_group(&self, g: &SymmetricGroup, n: usize) -> SymmetricGroup {
        SymmetricGroup::new(Shape::power(g.shape.clone(), n)).with_method(g.method.clone())
    }
    fn base_map(&self, _: &SymmetricGroup, xs: &[SymElem]) -> SymElem {
        SymElem::base(xs.to_vec())
    }
    fn acting_map(&self, _: &SymmetricGroup, n: usize, s: &Perm) -> SymElem {
        SymElem::acting(n, s.clone())
    }
}

/// `GL_n(K)` with the normalized rank metric.
#[derive(Clone, Debug)]
pub struct LinearSofic<F: Field> {
    pub field: F,
}

impl<F: Field> CompatFamily for LinearSofic<F> {
    type Group = GeneralLinear<F>;

    fn name(&self) -> String {
        format!("linear-sofic over {}", self.field.describe())
    }
    fn mu(&self) -> Rational {
        rat(1, 4)
    }
    fn product_delta(&self, eps: &Rational) -> Rational {
        eps.clone()
    }
    fn wreath_delta(&self, eps: &Rational, _n: usize) -> Rational {
        eps / rat_int(2)
    }
    fn product_group(&self, a: &GeneralLinear<F>, b: &GeneralLinear<F>) -> GeneralLinear<F> {
        GeneralLinear::new(self.field.clone(), 4 * a.dim * b.dim)
    }
    /// `Â ⊗ B̂` with `Â = diag(A, I)`.
    fn product_map(&self, _: &GeneralLinear<F>, _: &GeneralLinear<F>, x: &Matrix<F>, y: &Matrix<F>) -> Matrix<F> {
        x.hat().kron(&y.hat())
    }
    fn wreath_group(&self, g: &GeneralLinear<F>, n: usize) -> GeneralLinear<F> {
        GeneralLinear::new(self.field.clone(), g.dim * n)
    }
    fn base_map(&self, _: &GeneralLinear<F>, xs: &[Matrix<F>]) -> Matrix<F> {
        Matrix::block_diag(&self.field, xs)
    }
    /// Block permutation matrix: block `(i, j)` is `I_m` iff `i = σ(j)`.
    fn acting_map(&self, g: &GeneralLinear<F>, _n: usize, s: &Perm) -> Matrix<F> {
        Matrix::permutation(&self.field, s).kron(&Matrix::identity(&self.field, g.dim))
    }
}

/// Unitary groups with the normalized Hilbert-Schmidt metric.
#[derive(Clone, Copy, Debug, Default)]
pub struct Hyperlinear;

impl CompatFamily for Hyperlinear {
    type Group = UnitaryGroup;

    fn name(&self) -> String {
        "hyperlinear".into()
    }
    fn mu(&self) -> Rational {
        rat(1, 4)
    }
    fn product_delta(&self, eps: &Rational) -> Rational {
        eps / rat_int(2)
    }
    fn wreath_delta(&self, eps: &Rational, _n: usize) -> Rational {
        eps * eps / rat_int(5)
    }
    fn tolerance(&self) -> f64 {
        1e-9
    }
    fn product_group(&self, a: &UnitaryGroup, b: &UnitaryGroup) -> UnitaryGroup {
        UnitaryGroup { dim: 4 * a.dim * b.dim }
    }
    fn product_map(&self, _: &UnitaryGroup, _: &UnitaryGroup, x: &UnitaryMatrix, y: &UnitaryMatrix) -> UnitaryMatrix {
        x.hat().kron(&y.hat())
    }
    fn wreath_group(&self, g: &UnitaryGroup, n: usize) -> UnitaryGroup {
        UnitaryGroup { dim: g.dim * n }
    }
    fn base_map(&self, _: &UnitaryGroup, xs: &[UnitaryMatrix]) -> UnitaryMatrix {
        UnitaryMatrix::block_diag(xs)
    }
    fn acting_map(&self, g: &UnitaryGroup, _n: usize, s: &Perm) -> UnitaryMatrix {
        UnitaryMatrix::permutation(s).kron(&UnitaryMatrix::identity(g.dim))
    }
}

/// Finite groups with bi-invariant diameter-one metrics.
#[derive(Clone, Copy, Debug, Default)]
pub struct WeakSofic;

impl CompatFamily for WeakSofic {
    type Group = WeakGroup;

    fn name(&self) -> String {
        "weak-sofic".into()
    }
    fn mu(&self) -> Rational {
        Rational::one()
    }
    fn product_delta(&self, eps: &Rational) -> Rational {
        eps.clone()
    }
    fn wreath_delta(&self, eps: &Rational, _n: usize) -> Rational {
        eps / rat_int(2)
    }
    fn product_group(&self, a: &WeakGroup, b: &WeakGroup) -> WeakGroup {
        WeakGroup::product(a.clone(), b.clone())
    }
    fn product_map(&self, _: &WeakGroup, _: &WeakGroup, x: &WeakElem, y: &WeakElem) -> WeakElem {
        WeakElem::Pair(Box::new(x.clone()), Box::new(y.clone()))
    }
    fn wreath_group(&self, g: &WeakGroup, n: usize) -> WeakGroup {
        WeakGroup::wreath(g.clone(), n)
    }
    fn base_map(&self, _: &WeakGroup, xs: &[WeakElem]) -> WeakElem {
        WeakElem::Wreath { base: xs.to_vec(), top: Perm::identity(xs.len()) }
    }
    fn acting_map(&self, g: &WeakGroup, n: usize, s: &Perm) -> WeakElem {
        WeakElem::Wreath { base: vec![g.identity(); n], top: s.clone() }
    }
}
