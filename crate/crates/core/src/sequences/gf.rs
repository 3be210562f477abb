//! Generating functions of every sequence, built from the λ-polynomial
//! primitives `L` and `E` so that no coefficient ever needs `1/λ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{BiPoly, Rational};
use crate::series::{build_e, build_l, Series};

/// A named generating function. Its plain coefficients are what the
/// `series` CLI subcommand prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GfId {
    /// `t/log(1+t) · (1+t)^x`
    Cauchy,
    /// `(t/(e^t - 1))^r · e^{xt}`
    BernoulliHigher(u32),
    /// `t/(e^L - 1) · e^{xL}`
    DegenBernoulli,
    /// `L/log(1+L) · (1+L)^x`
    DegenCauchyStar,
    /// `t/log(1+L) · (1+L)^x`
    DegenCauchy2,
    /// `log(1+t)/t`
    Daehee,
    /// `(log(1+t)/t)^r`
    DaeheeHigher(u32),
    L,
    E,
}

impl fmt::Display for GfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfId::Cauchy => f.write_str("cauchy"),
            GfId::BernoulliHigher(r) => write!(f, "bernoulli_higher:{r}"),
            GfId::DegenBernoulli => f.write_str("degen_bernoulli"),
            GfId::DegenCauchyStar => f.write_str("degen_cauchy_star"),
            GfId::DegenCauchy2 => f.write_str("degen_cauchy2"),
            GfId::Daehee => f.write_str("daehee"),
            GfId::DaeheeHigher(r) => write!(f, "daehee_higher:{r}"),
            GfId::L => f.write_str("L"),
            GfId::E => f.write_str("E"),
        }
    }
}

/// Splits `name:r` into its name and order parameter.
pub(crate) fn split_param(s: &str) -> Result<(&str, Option<u32>)> {
    match s.split_once(':') {
        None => Ok((s, None)),
        Some((name, r)) => {
            let r = r
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("invalid order parameter in `{s}`")))?;
            Ok((name, Some(r)))
        }
    }
}

impl FromStr for GfId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSequence(s.to_string());
        let (name, r) = split_param(s.trim()).map_err(|_| unknown())?;
        let id = match (name, r) {
            ("cauchy", None) => GfId::Cauchy,
            ("bernoulli_higher", Some(r)) => GfId::BernoulliHigher(r),
            ("degen_bernoulli", None) => GfId::DegenBernoulli,
            ("degen_cauchy_star", None) => GfId::DegenCauchyStar,
            ("degen_cauchy2", None) => GfId::DegenCauchy2,
            ("daehee", None) => GfId::Daehee,
            ("daehee_higher", Some(r)) if r >= 1 => GfId::DaeheeHigher(r),
            ("L", None) => GfId::L,
            ("E", None) => GfId::E,
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

/// `(1 + g)^r` for a constant integer `r`; `g` must vanish at 0.
fn const_power(one_plus_g: &Series<BiPoly>, r: u32) -> Result<Series<BiPoly>> {
    let g = one_plus_g - &Series::one(one_plus_g.order());
    g.pow_lin(&BiPoly::from(r as i64))
}

/// Builds the generating function `id` to exactly `order`.
pub fn generating_function(id: GfId, order: usize) -> Result<Series<BiPoly>> {
    // Ratios shed one order to their divisor's valuation, so numerators and
    // denominators are built one order higher.
    let up = order + 1;
    let x = BiPoly::x();
    let s = match id {
        GfId::L => build_l(order),
        GfId::E => build_e(order),
        GfId::Cauchy => {
            let t = Series::t(up);
            let kernel = t.ratio(&t.log1p()?)?;
            &kernel * &Series::t(order).pow_lin(&x)?
        }
        GfId::BernoulliHigher(r) => {
            let t = Series::t(up);
            let em1 = &t.exp()? - &Series::one(up);
            let base = t.ratio(&em1)?;
            let kernel = const_power(&base, r)?;
            &kernel * &Series::t(order).mul_coeff(&x).exp()?
        }
        GfId::DegenBernoulli => {
            let l = build_l(up);
            let em1 = &l.exp()? - &Series::one(up);
            let kernel = Series::t(up).ratio(&em1)?;
            &kernel * &build_l(order).mul_coeff(&x).exp()?
        }
        GfId::DegenCauchyStar => {
            let l = build_l(up);
            let kernel = l.ratio(&l.log1p()?)?;
            &kernel * &build_l(order).pow_lin(&x)?
        }
        GfId::DegenCauchy2 => {
            let l = build_l(up);
            let kernel = Series::t(up).ratio(&l.log1p()?)?;
            &kernel * &build_l(order).pow_lin(&x)?
        }
        GfId::Daehee => {
            let t = Series::t(up);
            t.log1p()?.ratio(&t)?
        }
        GfId::DaeheeHigher(r) => {
            let base = generating_function(GfId::Daehee, order)?;
            const_power(&base, r)?
        }
    };
    debug_assert_eq!(s.order(), order);
    Ok(s)
}

/// Recovers `a_n` from `Σ a_n tⁿ/n!`: returns `n! · c_n`.
pub fn egf_extract<C: crate::ring::Coeff>(f: &Series<C>, n: usize) -> Result<C> {
    Ok(f.coeff(n)?.scale(&factorial(n)))
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(Rational::from).product()
}
