//! Exact scalars and the coefficient ring ℚ[λ, x].

mod bipoly;
mod rational;

pub use bipoly::{BiPoly, Monomial};
pub use rational::Rational;

/// A commutative ℚ-algebra usable as a power-series coefficient ring.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(c: Rational) -> Self;
    /// `Some(c)` when the element is the constant `c` (zero included).
    fn as_constant(&self) -> Option<Rational>;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn as_constant(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coeff for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn from_rational(c: Rational) -> Self {
        BiPoly::constant(c)
    }
    fn as_constant(&self) -> Option<Rational> {
        BiPoly::as_constant(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        BiPoly::scale(self, c)
    }
}
