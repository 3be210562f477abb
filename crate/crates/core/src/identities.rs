//! Registry of identities between the sequences, with exact verification.
//!
//! Every entry compares two polynomials in ℚ[λ, x] for each index `n`.
//! Where the identity as originally stated does not hold, the entry carries
//! both the `printed` form and a `corrected` form; the printed form is
//! always checked and its outcome kept in the report.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{BiPoly, Rational};
use crate::sequences::{
    bernoulli_higher, cauchy_num, cauchy_poly, daehee, daehee_higher, degen_cauchy2,
    degen_cauchy_star, falling_factorial, stirling1, stirling2,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantLabel {
    Printed,
    Corrected,
}

impl fmt::Display for VariantLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariantLabel::Printed => "printed",
            VariantLabel::Corrected => "corrected",
        })
    }
}

/// Which variants to run.
///
/// `Printed` and `Corrected` fall back to an entry's sole variant when it
/// has no variant with that label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VariantSelection {
    Printed,
    Corrected,
    #[default]
    Both,
}

impl FromStr for VariantSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Self::Printed),
            "corrected" => Ok(Self::Corrected),
            "both" => Ok(Self::Both),
            _ => Err(Error::Parse(format!("unknown variant selection `{s}`"))),
        }
    }
}

pub type Side = fn(usize) -> BiPoly;

pub struct Variant {
    pub label: VariantLabel,
    pub formula: &'static str,
    lhs: Side,
    rhs: Side,
}

impl Variant {
    pub fn lhs(&self, n: usize) -> BiPoly {
        (self.lhs)(n)
    }

    pub fn rhs(&self, n: usize) -> BiPoly {
        (self.rhs)(n)
    }
}

pub struct IdentitySpec {
    pub id: &'static str,
    pub description: &'static str,
    pub n_start: usize,
    pub variants: Vec<Variant>,
}

impl IdentitySpec {
    pub fn variant(&self, label: VariantLabel) -> Option<&Variant> {
        self.variants.iter().find(|v| v.label == label)
    }

    fn selected(&self, selection: VariantSelection) -> Vec<&Variant> {
        let wanted = match selection {
            VariantSelection::Both => return self.variants.iter().collect(),
            VariantSelection::Printed => VariantLabel::Printed,
            VariantSelection::Corrected => VariantLabel::Corrected,
        };
        match self.variant(wanted) {
            Some(v) => vec![v],
            None if self.variants.len() == 1 => vec![&self.variants[0]],
            None => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexResult {
    pub n: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: usize,
    /// `LHS - RHS` at `n`; never zero.
    #[serde(serialize_with = "display_string")]
    pub diff: BiPoly,
}

fn display_string<S: Serializer, T: fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub variant: VariantLabel,
    pub n_max: usize,
    pub results: Vec<IndexResult>,
    pub first_failure: Option<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

// Small exact helpers shared by the identity sides.

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(Rational::from).product()
}

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_integer(num_integer::binomial(
        num_bigint::BigInt::from(n),
        num_bigint::BigInt::from(k),
    ))
}

fn lam(k: usize) -> BiPoly {
    BiPoly::monomial(k as u32, 0, Rational::one())
}

fn s1(n: usize, k: usize) -> Rational {
    Rational::from_integer(stirling1(n, k))
}

fn s2(n: usize, k: usize) -> Rational {
    Rational::from_integer(stirling2(n, k))
}

fn at_x(p: &BiPoly, x: i64) -> BiPoly {
    p.partial_eval(None, Some(&q(x)))
}

fn x_plus_one() -> BiPoly {
    &BiPoly::x() + &BiPoly::one()
}

/// `C_{n,λ}`, the second-kind numbers.
fn c2_num(n: usize) -> BiPoly {
    at_x(&degen_cauchy2(n), 0)
}

/// `C*_{n,λ}`, the first-kind numbers.
fn star_num(n: usize) -> BiPoly {
    at_x(&degen_cauchy_star(n), 0)
}

// eq3: C_n(x) = B_n^{(n)}(x+1)
fn eq3_rhs(n: usize) -> BiPoly {
    bernoulli_higher(n, n as u32).substitute_x(&x_plus_one())
}

// eq9: C_m(x) = Σ_k C*_{?,λ} λ^{m-k} S2(m,k)
fn eq9_printed_rhs(m: usize) -> BiPoly {
    let star = star_num(m);
    (0..=m)
        .map(|k| (&star * &lam(m - k)).scale(&s2(m, k)))
        .sum()
}

fn eq9_corrected_rhs(m: usize) -> BiPoly {
    (0..=m)
        .map(|k| (&degen_cauchy_star(k) * &lam(m - k)).scale(&s2(m, k)))
        .sum()
}

// eq10: C*_{m,λ}(x) = Σ_k B_k^{(k)}(x+1) λ^{m-k} S1(m,k)
fn eq10_rhs(m: usize) -> BiPoly {
    (0..=m)
        .map(|k| (&eq3_rhs(k) * &lam(m - k)).scale(&s1(m, k)))
        .sum()
}

// thm1: Σ_m λ^{n-m} C_{m,λ}(x) S2(n,m) = Σ_m binom(n,m) C_{n-m}(x) λ^m/(m+1)
fn thm1_lhs(n: usize) -> BiPoly {
    (0..=n)
        .map(|m| (&lam(n - m) * &degen_cauchy2(m)).scale(&s2(n, m)))
        .sum()
}

fn thm1_rhs(n: usize) -> BiPoly {
    (0..=n)
        .map(|m| (&cauchy_poly(n - m) * &lam(m)).scale(&(&binom(n, m) * &frac(1, m as i64 + 1))))
        .sum()
}

// thm2: Σ_m C_m(x) λ^{n-m} S1(n,m)
//     = Σ_m (n-m)!/(n-m+1) binom(n,m) (-1)^{n-m} λ^{n-m} C_{m,λ}(x)
fn thm2_lhs(n: usize) -> BiPoly {
    (0..=n)
        .map(|m| (&cauchy_poly(m) * &lam(n - m)).scale(&s1(n, m)))
        .sum()
}

fn thm2_rhs(n: usize) -> BiPoly {
    (0..=n)
        .map(|m| {
            let k = n - m;
            let sign = if k.is_multiple_of(2) { q(1) } else { q(-1) };
            let c = &(&(&factorial(k) * &frac(1, k as i64 + 1)) * &binom(n, m)) * &sign;
            (&lam(k) * &degen_cauchy2(m)).scale(&c)
        })
        .sum()
}

// thm3: C_{n,λ}(x) = Σ_k Σ_m binom(n,k) (x)_m c(n-k) λ^{k-m} S1(k,m)
fn thm3_sum(n: usize, outer: impl Fn(usize) -> BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    for k in 0..=n {
        let c = outer(n - k);
        for m in 0..=k {
            let term = &(&falling_factorial(m) * &c) * &lam(k - m);
            acc = &acc + &term.scale(&(&binom(n, k) * &s1(k, m)));
        }
    }
    acc
}

fn thm3_printed_rhs(n: usize) -> BiPoly {
    thm3_sum(n, |j| BiPoly::from(cauchy_num(j)))
}

fn thm3_corrected_rhs(n: usize) -> BiPoly {
    thm3_sum(n, c2_num)
}

// thm4: C_{0,λ} = 1 and
//   Σ_{m=1}^n Σ_{k=1}^m binom(n,m) C_{n-m,λ} (k-1)! (-1)^{k-1} λ^{m-k} S1(m,k) = [n = 1]
fn thm4_lhs(n: usize) -> BiPoly {
    if n == 0 {
        return c2_num(0);
    }
    let mut acc = BiPoly::zero();
    for m in 1..=n {
        let c = c2_num(n - m);
        for k in 1..=m {
            let sign = if (k - 1) % 2 == 0 { q(1) } else { q(-1) };
            let coeff = &(&(&binom(n, m) * &factorial(k - 1)) * &sign) * &s1(m, k);
            acc = &acc + &(&c * &lam(m - k)).scale(&coeff);
        }
    }
    acc
}

fn thm4_rhs(n: usize) -> BiPoly {
    if n <= 1 {
        BiPoly::one()
    } else {
        BiPoly::zero()
    }
}

// thm5: C_{n,λ} = Σ_m binom(n,m) λ^{n-m} b(n-m) C*_{m,λ}
fn thm5_sum(n: usize, b: impl Fn(usize) -> BiPoly) -> BiPoly {
    (0..=n)
        .map(|m| (&(&lam(n - m) * &b(n - m)) * &star_num(m)).scale(&binom(n, m)))
        .sum()
}

fn thm5_printed_rhs(n: usize) -> BiPoly {
    thm5_sum(n, |k| at_x(&bernoulli_higher(k, k as u32), 0))
}

fn thm5_corrected_rhs(n: usize) -> BiPoly {
    thm5_sum(n, |k| at_x(&bernoulli_higher(k, k as u32), 1))
}

// thm6: C*_{n,λ} = Σ_m binom(n,m) λ^{n-m} D_{n-m} C_{m,λ}
fn thm6_rhs(n: usize) -> BiPoly {
    (0..=n)
        .map(|m| (&lam(n - m) * &c2_num(m)).scale(&(&binom(n, m) * &daehee(n - m))))
        .sum()
}

// thm7: C*_{n,λ} = (C_{n+1,λ}(1) - C_{n+1,λ}) / (n+1)
fn thm7_rhs(n: usize) -> BiPoly {
    let c = degen_cauchy2(n + 1);
    (&at_x(&c, 1) - &at_x(&c, 0)).scale(&frac(1, n as i64 + 1))
}

// thm8: (C*_{n+1,λ}(1) - C*_{n+1,λ}) / (n+1) = Σ_l binom(n,l) C_{l,λ} d(n-l)
fn thm8_lhs(n: usize) -> BiPoly {
    let c = degen_cauchy_star(n + 1);
    (&at_x(&c, 1) - &at_x(&c, 0)).scale(&frac(1, n as i64 + 1))
}

fn thm8_printed_rhs(n: usize) -> BiPoly {
    (0..=n)
        .map(|l| c2_num(l).scale(&(&binom(n, l) * &daehee_higher(n - l, 2))))
        .sum()
}

fn thm8_corrected_rhs(n: usize) -> BiPoly {
    (0..=n)
        .map(|l| (&c2_num(l) * &lam(n - l)).scale(&(&binom(n, l) * &daehee_higher(n - l, 2))))
        .sum()
}

// limit: C_{n,λ}(x) at λ = 0 is C_n(x)
fn limit_lhs(n: usize) -> BiPoly {
    degen_cauchy2(n).partial_eval(Some(&Rational::zero()), None)
}

fn variant(label: VariantLabel, formula: &'static str, lhs: Side, rhs: Side) -> Variant {
    Variant {
        label,
        formula,
        lhs,
        rhs,
    }
}

fn build_registry() -> Vec<IdentitySpec> {
    use VariantLabel::{Corrected, Printed};
    vec![
        IdentitySpec {
            id: "eq3",
            description: "Cauchy polynomials as higher-order Bernoulli polynomials",
            n_start: 0,
            variants: vec![variant(Printed, "C_n(x) = B_n^(n)(x+1)", cauchy_poly, eq3_rhs)],
        },
        IdentitySpec {
            id: "eq9",
            description: "Cauchy polynomials from degenerate Cauchy polynomials and S2",
            n_start: 0,
            variants: vec![
                variant(Printed, "C_m(x) = sum_n C*_{m,l} l^(m-n) S2(m,n)", cauchy_poly, eq9_printed_rhs),
                variant(Corrected, "C_m(x) = sum_n C*_{n,l}(x) l^(m-n) S2(m,n)", cauchy_poly, eq9_corrected_rhs),
            ],
        },
        IdentitySpec {
            id: "eq10",
            description: "degenerate Cauchy polynomials from higher-order Bernoulli polynomials and S1",
            n_start: 0,
            variants: vec![variant(
                Printed,
                "C*_{m,l}(x) = sum_n B_n^(n)(x+1) l^(m-n) S1(m,n)",
                degen_cauchy_star,
                eq10_rhs,
            )],
        },
        IdentitySpec {
            id: "thm1",
            description: "second-kind polynomials against Cauchy polynomials via S2",
            n_start: 0,
            variants: vec![variant(
                Printed,
                "sum_m l^(n-m) C_{m,l}(x) S2(n,m) = sum_m binom(n,m) C_{n-m}(x) l^m/(m+1)",
                thm1_lhs,
                thm1_rhs,
            )],
        },
        IdentitySpec {
            id: "thm2",
            description: "Cauchy polynomials against second-kind polynomials via S1",
            n_start: 0,
            variants: vec![variant(
                Printed,
                "sum_m C_m(x) l^(n-m) S1(n,m) = sum_m (n-m)!/(n-m+1) binom(n,m) (-1)^(n-m) l^(n-m) C_{m,l}(x)",
                thm2_lhs,
                thm2_rhs,
            )],
        },
        IdentitySpec {
            id: "thm3",
            description: "second-kind polynomials from numbers, falling factorials and S1",
            n_start: 0,
            variants: vec![
                variant(
                    Printed,
                    "C_{n,l}(x) = sum_k sum_m binom(n,k) (x)_m C_{n-k} l^(k-m) S1(k,m)",
                    degen_cauchy2,
                    thm3_printed_rhs,
                ),
                variant(
                    Corrected,
                    "C_{n,l}(x) = sum_k sum_m binom(n,k) (x)_m C_{n-k,l} l^(k-m) S1(k,m)",
                    degen_cauchy2,
                    thm3_corrected_rhs,
                ),
            ],
        },
        IdentitySpec {
            id: "thm4",
            description: "recurrence for the second-kind numbers",
            n_start: 0,
            variants: vec![variant(
                Printed,
                "C_{0,l} = 1; sum_m sum_k binom(n,m) C_{n-m,l} (k-1)! (-1)^(k-1) l^(m-k) S1(m,k) = [n = 1]",
                thm4_lhs,
                thm4_rhs,
            )],
        },
        IdentitySpec {
            id: "thm5",
            description: "second-kind numbers from first-kind numbers",
            n_start: 0,
            variants: vec![
                variant(
                    Printed,
                    "C_{n,l} = sum_m binom(n,m) l^(n-m) B_{n-m}^(n-m) C*_{m,l}",
                    c2_num,
                    thm5_printed_rhs,
                ),
                variant(
                    Corrected,
                    "C_{n,l} = sum_m binom(n,m) l^(n-m) B_{n-m}^(n-m)(1) C*_{m,l}",
                    c2_num,
                    thm5_corrected_rhs,
                ),
            ],
        },
        IdentitySpec {
            id: "thm6",
            description: "first-kind numbers from second-kind numbers and Daehee numbers",
            n_start: 0,
            variants: vec![variant(
                Printed,
                "C*_{n,l} = sum_m binom(n,m) l^(n-m) D_{n-m} C_{m,l}",
                star_num,
                thm6_rhs,
            )],
        },
        IdentitySpec {
            id: "thm7",
            description: "first-kind numbers as a difference of second-kind values",
            n_start: 0,
            variants: vec![variant(
                Printed,
                "C*_{n,l} = (C_{n+1,l}(1) - C_{n+1,l})/(n+1)",
                star_num,
                thm7_rhs,
            )],
        },
        IdentitySpec {
            id: "thm8",
            description: "first-kind difference against second-order Daehee numbers",
            n_start: 0,
            variants: vec![
                variant(
                    Printed,
                    "(C*_{n+1,l}(1) - C*_{n+1,l})/(n+1) = sum_l binom(n,l) C_{l,l} D_{n-l}^(2)",
                    thm8_lhs,
                    thm8_printed_rhs,
                ),
                variant(
                    Corrected,
                    "(C*_{n+1,l}(1) - C*_{n+1,l})/(n+1) = sum_l binom(n,l) C_{l,l} l^(n-l) D_{n-l}^(2)",
                    thm8_lhs,
                    thm8_corrected_rhs,
                ),
            ],
        },
        IdentitySpec {
            id: "limit_lambda0",
            description: "second-kind polynomials degenerate to Cauchy polynomials at l = 0",
            n_start: 0,
            variants: vec![variant(Corrected, "C_{n,0}(x) = C_n(x)", limit_lhs, cauchy_poly)],
        },
    ]
}

static REGISTRY: LazyLock<Vec<IdentitySpec>> = LazyLock::new(build_registry);

/// The full registry, in report order.
pub fn list_identities() -> &'static [IdentitySpec] {
    &REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static IdentitySpec> {
    REGISTRY
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn run_variant(spec: &IdentitySpec, v: &Variant, n_max: usize) -> IdentityReport {
    // Highest index first: the sequence tables then grow once, to the exact
    // size needed, instead of once per index.
    let mut evaluated: Vec<(usize, BiPoly)> = (spec.n_start..=n_max)
        .rev()
        .map(|n| (n, &v.lhs(n) - &v.rhs(n)))
        .collect();
    evaluated.reverse();
    let first_failure = evaluated
        .iter()
        .find(|(_, d)| !d.is_zero())
        .map(|(n, d)| Failure {
            n: *n,
            diff: d.clone(),
        });
    IdentityReport {
        id: spec.id.to_string(),
        variant: v.label,
        n_max,
        results: evaluated
            .into_iter()
            .map(|(n, d)| IndexResult {
                n,
                pass: d.is_zero(),
            })
            .collect(),
        first_failure,
    }
}

/// Checks one registry entry for `n_start ≤ n ≤ n_max`, one report per
/// selected variant (printed first).
pub fn verify_identity(
    id: &str,
    n_max: usize,
    selection: VariantSelection,
) -> Result<Vec<IdentityReport>> {
    let spec = lookup(id)?;
    Ok(spec
        .selected(selection)
        .into_par_iter()
        .map(|v| run_variant(spec, v, n_max))
        .collect())
}

/// Runs every entry with the given selection; reports come back in
/// registry order whatever order the checks finish in.
pub fn verify_all_with(n_max: usize, selection: VariantSelection) -> Vec<IdentityReport> {
    REGISTRY
        .par_iter()
        .flat_map_iter(|spec| {
            spec.selected(selection)
                .into_iter()
                .map(|v| run_variant(spec, v, n_max))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Every entry with every variant.
pub fn verify_all(n_max: usize) -> Vec<IdentityReport> {
    verify_all_with(n_max, VariantSelection::Both)
}

/// True when each identity id among `reports` has at least one variant
/// that passed at every index.
pub fn suite_passes(reports: &[IdentityReport]) -> bool {
    let mut ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    ids.dedup();
    ids.iter()
        .all(|id| reports.iter().any(|r| r.id == *id && r.passed()))
}
