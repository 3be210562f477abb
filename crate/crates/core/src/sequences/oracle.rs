//! Independent values for the Cauchy-type sequences, computed from the
//! integral representation `∫₀¹ (1 + s)^{x+y} dy` instead of series
//! division.

use crate::error::{Error, Result};
use crate::ring::{BiPoly, Rational};
use crate::series::{build_l, Series};

use super::gf::{egf_extract, factorial};
use super::SequenceId;

/// Polynomial in an auxiliary variable `y` with coefficients in ℚ[λ, x].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxPoly {
    /// `coeffs[j]` multiplies `y^j`; no trailing zeros.
    coeffs: Vec<BiPoly>,
}

impl AuxPoly {
    pub fn new(mut coeffs: Vec<BiPoly>) -> Self {
        while coeffs.last().is_some_and(BiPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn mul(&self, rhs: &AuxPoly) -> AuxPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return AuxPoly::new(Vec::new());
        }
        let mut out = vec![BiPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        AuxPoly::new(out)
    }

    /// `∫₀¹ p(y) dy`, termwise with `∫₀¹ y^j dy = 1/(j+1)`.
    pub fn integrate_unit(&self) -> BiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.scale(&Rational::new(1, j as i64 + 1).expect("nonzero")))
            .sum()
    }

    /// `(x + y)_m = Π_{i<m} (y + x - i)` by repeated multiplication.
    pub fn shifted_falling_factorial(m: usize) -> AuxPoly {
        let mut acc = AuxPoly::new(vec![BiPoly::one()]);
        for i in 0..m {
            let root = &BiPoly::x() - &BiPoly::from(i as i64);
            acc = acc.mul(&AuxPoly::new(vec![root, BiPoly::one()]));
        }
        acc
    }
}

/// `∫₀¹ (x+y)_m dy` for `m = 0..=n_max`.
pub fn integral_cauchy_table(n_max: usize) -> Vec<BiPoly> {
    (0..=n_max)
        .map(|m| AuxPoly::shifted_falling_factorial(m).integrate_unit())
        .collect()
}

/// `Σ_m (∫₀¹(x+y)_m dy)/m! · L(t)^m`, the binomial expansion of
/// `∫₀¹ (1 + L)^{x+y} dy`, to the given order.
pub fn integral_star_series(order: usize) -> Result<Series<BiPoly>> {
    let integrals = integral_cauchy_table(order);
    let outer = Series::from_fn(order, |m| {
        integrals[m].scale(&factorial(m).recip().expect("nonzero"))
    });
    outer.compose(&build_l(order))
}

/// `(t/L) · ∫₀¹ (1 + L)^{x+y} dy` to the given order.
pub fn integral_cauchy2_series(order: usize) -> Result<Series<BiPoly>> {
    let t_over_l = Series::t(order + 1).ratio(&build_l(order + 1))?;
    Ok(&t_over_l * &integral_star_series(order)?)
}

/// Oracle values for indices `0..=n_max`.
pub fn oracle_table(seq: SequenceId, n_max: usize) -> Result<Vec<BiPoly>> {
    let series = match seq {
        SequenceId::CauchyPoly => return Ok(integral_cauchy_table(n_max)),
        SequenceId::DegenCauchyStar => integral_star_series(n_max)?,
        SequenceId::DegenCauchy2 => integral_cauchy2_series(n_max)?,
        other => return Err(Error::NoOracle(other.to_string())),
    };
    (0..=n_max).map(|n| egf_extract(&series, n)).collect()
}

/// Independent value of `seq` at `n`, for the three sequences that admit
/// the integral representation.
pub fn oracle_value(seq: SequenceId, n: usize) -> Result<BiPoly> {
    Ok(oracle_table(seq, n)?.swap_remove(n))
}
