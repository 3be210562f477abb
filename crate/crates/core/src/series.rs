//! Truncated formal power series in `t`.
//!
//! A [`Series`] of order `N` holds the plain coefficients `c_0 … c_N` of
//! `Σ c_n tⁿ + O(t^{N+1})`. Binary operations truncate to the smaller order
//! and never extend silently.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{BiPoly, Coeff, Rational};

#[derive(Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Series with the given coefficients; its order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series holds at least c_0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| C::zero())
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The indeterminate `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&C> {
        self.coeffs.get(n).ok_or(Error::OutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|v| v.scale(c))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|v| v.mul(c))
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| {
            if i < k {
                C::zero()
            } else {
                self.coeffs[i - k].clone()
            }
        })
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| f(&self.coeffs[i], &rhs.coeffs[i]))
    }

    fn convolve(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |k| {
            let mut acc = C::zero();
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &rhs.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Both series are divided by `t^v` with `v = valuation(divisor)` first,
    /// so the result has order `min(order(self), order(divisor)) - v`. The
    /// divisor's coefficient at `t^v` must be a nonzero constant.
    pub fn ratio(&self, divisor: &Self) -> Result<Self> {
        let val_g = divisor.valuation();
        let val_f = self.valuation();
        let v = match (val_f, val_g) {
            (_, None) => {
                return Err(Error::Valuation {
                    dividend: val_f,
                    divisor: None,
                })
            }
            (Some(f), Some(g)) if g > f => {
                return Err(Error::Valuation {
                    dividend: val_f,
                    divisor: val_g,
                })
            }
            (_, Some(g)) => g,
        };
        let lead = &divisor.coeffs[v];
        let inv = match lead.as_constant() {
            Some(c) if !c.is_zero() => c.recip()?,
            _ => return Err(Error::NonInvertibleLead(lead.to_string())),
        };
        let n = self.order().min(divisor.order()) - v;
        let num = &self.coeffs[v..];
        let den = &divisor.coeffs[v..];
        let mut q: Vec<C> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = num[k].clone();
            for (i, qi) in q.iter().enumerate() {
                let d = &den[k - i];
                if !d.is_zero() && !qi.is_zero() {
                    acc = acc.sub(&qi.mul(d));
                }
            }
            q.push(acc.scale(&inv));
        }
        Ok(Self { coeffs: q })
    }

    /// `self(inner(t))` by Horner's scheme, truncated to the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Composition);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[k]);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self::from_fn(n - 1, |i| {
            self.coeffs[i + 1].scale(&Rational::from((i + 1) as i64))
        })
    }

    /// Antiderivative with zero constant term; raises the order by one.
    pub fn integral(&self) -> Self {
        let n = self.order() + 1;
        Self::from_fn(n, |i| {
            if i == 0 {
                C::zero()
            } else {
                let inv = Rational::new(1, i as i64).expect("nonzero");
                self.coeffs[i - 1].scale(&inv)
            }
        })
    }

    /// `log(1 + g) = Σ_{k≥1} (-1)^{k-1} g^k / k`, computed as `∫ g' / (1 + g)`.
    pub fn log1p(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain { op: "log1p" });
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let one_plus = {
            let mut s = self.clone();
            s.coeffs[0] = C::one();
            s
        };
        let q = self.derivative().ratio(&one_plus)?;
        Ok(q.integral())
    }

    /// `exp(g) = Σ_{k≥0} g^k / k!`, via `n·h_n = Σ_{k=1}^{n} k·g_k·h_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain { op: "exp" });
        }
        let n = self.order();
        let mut h: Vec<C> = Vec::with_capacity(n + 1);
        h.push(C::one());
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                let g = &self.coeffs[k];
                if !g.is_zero() {
                    acc = acc.add(&g.mul(&h[m - k]).scale(&Rational::from(k as i64)));
                }
            }
            h.push(acc.scale(&Rational::new(1, m as i64).expect("nonzero")));
        }
        Ok(Self { coeffs: h })
    }

    /// `(1 + g)^a = exp(a · log(1 + g))` for a ring element `a`.
    pub fn pow_lin(&self, exponent: &C) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain { op: "pow_lin" });
        }
        self.log1p()?.mul_coeff(exponent).exp()
    }
}

impl Series<BiPoly> {
    /// Applies [`BiPoly::partial_eval`] to every coefficient.
    pub fn partial_eval(&self, lambda: Option<&Rational>, x: Option<&Rational>) -> Self {
        self.map(|c| c.partial_eval(lambda, x))
    }
}

impl<C: Coeff> Add<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        self.zip_with(rhs, C::add)
    }
}

impl<C: Coeff> Sub<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self.zip_with(rhs, C::sub)
    }
}

impl<C: Coeff> Mul<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.convolve(rhs)
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.map(C::neg)
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*t^{i}")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `L(t) = (1/λ)·log(1 + λt)`, with coefficients `(-λ)^{n-1}/n`.
pub fn build_l(order: usize) -> Series<BiPoly> {
    Series::from_fn(order, |n| {
        if n == 0 {
            return BiPoly::zero();
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        BiPoly::monomial(
            (n - 1) as u32,
            0,
            Rational::new(sign, n as i64).expect("nonzero"),
        )
    })
}

/// `E(t) = (1/λ)·(e^{λt} - 1)`, with coefficients `λ^{n-1}/n!`.
pub fn build_e(order: usize) -> Series<BiPoly> {
    let mut fact = Rational::one();
    Series::from_fn(order, |n| {
        if n == 0 {
            return BiPoly::zero();
        }
        fact *= &Rational::from(n as i64);
        BiPoly::monomial((n - 1) as u32, 0, fact.recip().expect("nonzero"))
    })
}
