use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::Rational;

/// Exponent pair `(λ-degree, x-degree)`.
pub type Monomial = (u32, u32);

/// Element of ℚ[λ, x], stored sparsely.
///
/// Terms are kept in a `BTreeMap` keyed λ-degree major, x-degree minor, and
/// zero coefficients are never stored. Two polynomials are therefore equal
/// exactly when their term maps are identical.
///
/// Rendering uses the generator names `l` and `x`, ascending in λ and
/// descending in x within each λ-degree: `-1/6 - 1/6*l^2`, `x + 1/2`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c · λ^l_deg · x^x_deg`.
    pub fn monomial(l_deg: u32, x_deg: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((l_deg, x_deg), c);
        }
        Self { terms }
    }

    /// The generator λ.
    pub fn lambda() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    /// The generator x.
    pub fn x() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    /// Builds a polynomial from arbitrary `(monomial, coefficient)` pairs,
    /// summing duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    /// Terms in storage order (λ-degree major, x-degree minor, ascending).
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, l_deg: u32, x_deg: u32) -> Rational {
        self.terms.get(&(l_deg, x_deg)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial, `None` if λ or x occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes the given values for λ and/or x. Whatever is left
    /// unsubstituted stays symbolic.
    pub fn partial_eval(&self, lambda: Option<&Rational>, x: Option<&Rational>) -> Self {
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let mut c = c.clone();
            let mut key = (i, j);
            if let Some(l) = lambda {
                c *= &l.pow(i);
                key.0 = 0;
            }
            if let Some(xv) = x {
                c *= &xv.pow(j);
                key.1 = 0;
            }
            *out.entry(key).or_default() += &c;
        }
        out.retain(|_, c| !c.is_zero());
        Self { terms: out }
    }

    /// Full evaluation at `(λ, x)`.
    pub fn evaluate(&self, lambda: &Rational, x: &Rational) -> Rational {
        self.partial_eval(Some(lambda), Some(x))
            .as_constant()
            .expect("fully evaluated polynomial is constant")
    }

    /// Replaces x by an arbitrary polynomial (e.g. `x + 1`).
    pub fn substitute_x(&self, replacement: &BiPoly) -> Self {
        let Some(deg) = self.x_degree() else {
            return Self::zero();
        };
        // Horner in x over coefficients in ℚ[λ].
        let mut acc = Self::zero();
        for j in (0..=deg).rev() {
            let slice = Self {
                terms: self
                    .terms
                    .iter()
                    .filter(|(m, _)| m.1 == j)
                    .map(|(&(i, _), c)| ((i, 0), c.clone()))
                    .collect(),
            };
            acc = &(&acc * replacement) + &slice;
        }
        acc
    }

    fn combine(&self, rhs: &BiPoly, negate: bool) -> BiPoly {
        let mut terms = self.terms.clone();
        for (&m, c) in &rhs.terms {
            let entry = terms.entry(m).or_default();
            if negate {
                *entry -= c;
            } else {
                *entry += c;
            }
            if entry.is_zero() {
                terms.remove(&m);
            }
        }
        BiPoly { terms }
    }

    fn product(&self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        // Dense accumulation over the bounding box of the product.
        let (la, xa) = (self.lambda_degree().unwrap(), self.x_degree().unwrap());
        let (lb, xb) = (rhs.lambda_degree().unwrap(), rhs.x_degree().unwrap());
        let width = (xa + xb + 1) as usize;
        let mut acc = vec![Rational::zero(); (la + lb + 1) as usize * width];
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                let idx = (i1 + i2) as usize * width + (j1 + j2) as usize;
                acc[idx] += &(c1 * c2);
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (((idx / width) as u32, (idx % width) as u32), c))
            .collect();
        BiPoly { terms }
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for BiPoly {
    fn from(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.combine(rhs, false)
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.combine(rhs, true)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.product(rhs)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> Self {
        iter.fold(BiPoly::zero(), |acc, p| &acc + &p)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, (i, j): Monomial) -> fmt::Result {
    let mut factors = Vec::with_capacity(2);
    for (name, deg) in [("l", i), ("x", j)] {
        match deg {
            0 => {}
            1 => factors.push(name.to_string()),
            d => factors.push(format!("{name}^{d}")),
        }
    }
    f.write_str(&factors.join("*"))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(i, j), _)| (i, Reverse(j)));
        for (k, (&m, c)) in ordered.into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if m == (0, 0) {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_monomial(f, m)?;
            } else {
                write!(f, "{mag}*")?;
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_term(src: &str) -> Result<(Monomial, Rational)> {
    let bad = || Error::Parse(format!("invalid term `{src}`"));
    let mut coeff = Rational::one();
    let mut mono = (0u32, 0u32);
    for factor in src.split('*') {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        match base {
            "l" => mono.0 += exp,
            "x" => mono.1 += exp,
            _ if factor.contains('^') => return Err(bad()),
            _ => coeff *= &factor.parse::<Rational>().map_err(|_| bad())?,
        }
    }
    Ok((mono, coeff))
}

impl FromStr for BiPoly {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g. `x^2 - 1/6*l + 3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        let mut current = String::new();
        let mut flush = |current: &mut String, sign: &Rational| -> Result<()> {
            if current.trim().is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let (m, c) = parse_term(current)?;
            terms.push((m, &c * sign));
            current.clear();
            Ok(())
        };
        for (idx, ch) in s.char_indices() {
            match ch {
                // A sign directly after '/' belongs to a rational, not the sum.
                '+' | '-' if !s[..idx].trim_end().ends_with('/') => {
                    if !current.trim().is_empty() {
                        flush(&mut current, &sign)?;
                        sign = Rational::one();
                    }
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => current.push(ch),
            }
        }
        flush(&mut current, &sign)?;
        Ok(BiPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn ring_examples() {
        let l = BiPoly::lambda();
        let x = BiPoly::x();
        assert_eq!(&(&l + &x) * &(&l - &x), &l.pow(2) - &x.pow(2));
        let p = &l.pow(3) + &x;
        assert_eq!(&p + &BiPoly::zero(), p);
        let one_l = &BiPoly::one() + &l;
        assert_eq!((&one_l * &one_l).to_string(), "1 + 2*l + l^2");
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = &BiPoly::lambda().pow(2) + &BiPoly::x();
        assert_eq!(p.partial_eval(Some(&q(2, 1)), None).to_string(), "x + 4");
        assert_eq!(
            p.evaluate(&Rational::zero(), &Rational::zero()),
            Rational::zero()
        );
        let c2 = BiPoly::from_terms([((0, 0), q(-1, 6)), ((2, 0), q(-1, 6))]);
        assert_eq!(c2.to_string(), "-1/6 - 1/6*l^2");
        assert_eq!(
            c2.partial_eval(Some(&Rational::zero()), None),
            BiPoly::from(q(-1, 6))
        );
    }

    #[test]
    fn substitute_shift() {
        // x^2 - x at x -> x + 1 is x^2 + x
        let p = &BiPoly::x().pow(2) - &BiPoly::x();
        let shifted = p.substitute_x(&(&BiPoly::x() + &BiPoly::one()));
        assert_eq!(shifted.to_string(), "x^2 + x");
    }

    #[test]
    fn rendering_order() {
        let p: BiPoly = "1/2 + x + 1/2*l".parse().unwrap();
        assert_eq!(p.to_string(), "x + 1/2 + 1/2*l");
        assert_eq!(BiPoly::zero().to_string(), "0");
        let q: BiPoly = "-x - l*x^3 + l^2".parse().unwrap();
        assert_eq!(q.to_string(), "-x - l*x^3 + l^2");
        assert_eq!("-3/4".parse::<BiPoly>().unwrap().to_string(), "-3/4");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "x +", "y", "1/0*l", "l^a", "2^3"] {
            assert!(s.parse::<BiPoly>().is_err(), "{s}");
        }
    }
}
