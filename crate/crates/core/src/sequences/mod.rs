//! Exact generators for every named sequence.
//!
//! Each polynomial sequence is read off its generating function (see
//! [`gf`]); the Cauchy-type ones additionally have an independent integral
//! oracle in [`oracle`]. Values are cached per sequence in process-wide
//! tables that only ever grow, so repeated lookups are cheap and the cache
//! never changes an answer.

pub mod gf;
pub mod oracle;
mod stirling;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{BiPoly, Rational};

pub use gf::{egf_extract, generating_function, GfId};
pub use oracle::{oracle_table, oracle_value, AuxPoly};
pub use stirling::{stirling1, stirling2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceId {
    /// `C_n(x)`
    CauchyPoly,
    /// `C_n = C_n(0)`
    CauchyNum,
    /// `B_n^{(r)}(x)`
    BernoulliHigher(u32),
    /// `β_{n,λ}(x)`
    DegenBernoulli,
    /// `C*_{n,λ}(x)`, degenerate Cauchy polynomials of the first kind
    DegenCauchyStar,
    /// `C_{n,λ}(x)`, degenerate Cauchy polynomials of the second kind
    DegenCauchy2,
    /// Row `n` of the first-kind triangle, as `Σ_k S1(n,k) x^k`.
    Stirling1,
    /// Row `n` of the second-kind triangle, as `Σ_k S2(n,k) x^k`.
    Stirling2,
    /// `D_n`
    Daehee,
    /// `D_n^{(r)}`
    DaeheeHigher(u32),
    /// `(x)_n`
    FallingFactorial,
}

impl SequenceId {
    pub const NAMES: [&'static str; 11] = [
        "cauchy_poly",
        "cauchy_num",
        "bernoulli_higher:<r>",
        "degen_bernoulli",
        "degen_cauchy_star",
        "degen_cauchy2",
        "stirling1",
        "stirling2",
        "daehee",
        "daehee_higher:<r>",
        "falling_factorial",
    ];
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::CauchyPoly => f.write_str("cauchy_poly"),
            SequenceId::CauchyNum => f.write_str("cauchy_num"),
            SequenceId::BernoulliHigher(r) => write!(f, "bernoulli_higher:{r}"),
            SequenceId::DegenBernoulli => f.write_str("degen_bernoulli"),
            SequenceId::DegenCauchyStar => f.write_str("degen_cauchy_star"),
            SequenceId::DegenCauchy2 => f.write_str("degen_cauchy2"),
            SequenceId::Stirling1 => f.write_str("stirling1"),
            SequenceId::Stirling2 => f.write_str("stirling2"),
            SequenceId::Daehee => f.write_str("daehee"),
            SequenceId::DaeheeHigher(r) => write!(f, "daehee_higher:{r}"),
            SequenceId::FallingFactorial => f.write_str("falling_factorial"),
        }
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSequence(s.to_string());
        let (name, r) = gf::split_param(s.trim()).map_err(|_| unknown())?;
        let id = match (name, r) {
            ("cauchy_poly", None) => SequenceId::CauchyPoly,
            ("cauchy_num", None) => SequenceId::CauchyNum,
            ("bernoulli_higher", Some(r)) => SequenceId::BernoulliHigher(r),
            ("degen_bernoulli", None) => SequenceId::DegenBernoulli,
            ("degen_cauchy_star", None) => SequenceId::DegenCauchyStar,
            ("degen_cauchy2", None) => SequenceId::DegenCauchy2,
            ("stirling1", None) => SequenceId::Stirling1,
            ("stirling2", None) => SequenceId::Stirling2,
            ("daehee", None) => SequenceId::Daehee,
            ("daehee_higher", Some(r)) if r >= 1 => SequenceId::DaeheeHigher(r),
            ("falling_factorial", None) => SequenceId::FallingFactorial,
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

/// The exact value of a sequence at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceValue {
    pub seq: SequenceId,
    pub n: usize,
    pub value: BiPoly,
}

type Slot = Arc<Mutex<Arc<Vec<BiPoly>>>>;

static TABLES: LazyLock<Mutex<HashMap<SequenceId, Slot>>> = LazyLock::new(Default::default);

fn extract_all(id: GfId, n_max: usize) -> Vec<BiPoly> {
    let f = generating_function(id, n_max).expect("generating functions are well-formed");
    (0..=n_max)
        .map(|n| egf_extract(&f, n).expect("index within order"))
        .collect()
}

fn row_polynomial(n: usize, entry: fn(usize, usize) -> BigInt) -> BiPoly {
    BiPoly::from_terms((0..=n).map(|k| ((0, k as u32), Rational::from_integer(entry(n, k)))))
}

fn compute_table(id: SequenceId, n_max: usize) -> Vec<BiPoly> {
    match id {
        SequenceId::CauchyPoly => extract_all(GfId::Cauchy, n_max),
        SequenceId::CauchyNum => table(SequenceId::CauchyPoly, n_max)
            .iter()
            .map(|p| p.partial_eval(None, Some(&Rational::zero())))
            .collect(),
        SequenceId::BernoulliHigher(r) => extract_all(GfId::BernoulliHigher(r), n_max),
        SequenceId::DegenBernoulli => extract_all(GfId::DegenBernoulli, n_max),
        SequenceId::DegenCauchyStar => extract_all(GfId::DegenCauchyStar, n_max),
        SequenceId::DegenCauchy2 => extract_all(GfId::DegenCauchy2, n_max),
        SequenceId::Daehee => extract_all(GfId::Daehee, n_max),
        SequenceId::DaeheeHigher(r) => extract_all(GfId::DaeheeHigher(r), n_max),
        SequenceId::Stirling1 => (0..=n_max).map(|n| row_polynomial(n, stirling1)).collect(),
        SequenceId::Stirling2 => (0..=n_max).map(|n| row_polynomial(n, stirling2)).collect(),
        SequenceId::FallingFactorial => {
            let mut acc = BiPoly::one();
            let mut out = Vec::with_capacity(n_max + 1);
            for i in 0..=n_max {
                out.push(acc.clone());
                acc = &acc * &(&BiPoly::x() - &BiPoly::from(i as i64));
            }
            out
        }
    }
}

/// Values `0..=n_max` (at least) of `id`.
///
/// A table is recomputed at exactly the requested size when it is too
/// short. Concurrent callers asking for the same sequence wait on a
/// per-sequence lock instead of duplicating the work.
pub fn table(id: SequenceId, n_max: usize) -> Arc<Vec<BiPoly>> {
    let slot = {
        let mut map = TABLES.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(id).or_default().clone()
    };
    let mut guard = slot.lock().unwrap_or_else(|e| e.into_inner());
    if guard.len() <= n_max {
        *guard = Arc::new(compute_table(id, n_max));
    }
    guard.clone()
}

pub fn value(id: SequenceId, n: usize) -> SequenceValue {
    SequenceValue {
        seq: id,
        n,
        value: table(id, n)[n].clone(),
    }
}

fn get(id: SequenceId, n: usize) -> BiPoly {
    table(id, n)[n].clone()
}

fn constant_of(p: BiPoly) -> Rational {
    p.as_constant()
        .expect("numeric sequence has constant values")
}

/// `(x)_n = x(x-1)…(x-n+1)`.
pub fn falling_factorial(n: usize) -> BiPoly {
    get(SequenceId::FallingFactorial, n)
}

/// `D_n = n!·[tⁿ] log(1+t)/t`.
pub fn daehee(n: usize) -> Rational {
    constant_of(get(SequenceId::Daehee, n))
}

/// `D_n^{(r)} = n!·[tⁿ] (log(1+t)/t)^r`, `r ≥ 1`.
pub fn daehee_higher(n: usize, r: u32) -> Rational {
    assert!(r >= 1, "higher-order Daehee numbers need r >= 1");
    constant_of(get(SequenceId::DaeheeHigher(r), n))
}

/// `C_n(x)`.
pub fn cauchy_poly(n: usize) -> BiPoly {
    get(SequenceId::CauchyPoly, n)
}

/// `C_n = C_n(0)`.
pub fn cauchy_num(n: usize) -> Rational {
    constant_of(get(SequenceId::CauchyNum, n))
}

/// `B_n^{(r)}(x)`; `r = 0` gives `xⁿ`.
pub fn bernoulli_higher(n: usize, r: u32) -> BiPoly {
    get(SequenceId::BernoulliHigher(r), n)
}

/// `β_{n,λ}(x)`.
pub fn degen_bernoulli(n: usize) -> BiPoly {
    get(SequenceId::DegenBernoulli, n)
}

/// `C*_{n,λ}(x)`.
pub fn degen_cauchy_star(n: usize) -> BiPoly {
    get(SequenceId::DegenCauchyStar, n)
}

/// `C_{n,λ}(x)`.
pub fn degen_cauchy2(n: usize) -> BiPoly {
    get(SequenceId::DegenCauchy2, n)
}
