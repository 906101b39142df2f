//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The variables are drawn from a fixed alphabet ([`ParamId`]); every
//! structure constant, cocycle value and series coefficient in the crate is a
//! [`MultiPoly`] over it. Terms are kept in a `BTreeMap` and zero coefficients
//! are never stored, so structural equality is mathematical equality.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Build a rational from a numerator and a non-zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build an integral rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// The closed set of parameter symbols.
///
/// Variants are declared in alphabetical order of their names, so the derived
/// `Ord` is the name order used by the canonical text form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamId {
    A,
    Alpha,
    B,
    E,
    E1,
    E2,
    G2,
    G3,
    S,
    T,
}

pub const PARAM_COUNT: usize = 10;

impl ParamId {
    pub const ALL: [ParamId; PARAM_COUNT] = [
        ParamId::A,
        ParamId::Alpha,
        ParamId::B,
        ParamId::E,
        ParamId::E1,
        ParamId::E2,
        ParamId::G2,
        ParamId::G3,
        ParamId::S,
        ParamId::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamId::A => "a",
            ParamId::Alpha => "alpha",
            ParamId::B => "b",
            ParamId::E => "e",
            ParamId::E1 => "e1",
            ParamId::E2 => "e2",
            ParamId::G2 => "g2",
            ParamId::G3 => "g3",
            ParamId::S => "s",
            ParamId::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<ParamId> {
        ParamId::ALL.iter().copied().find(|p| p.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over the parameter alphabet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([u16; PARAM_COUNT]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; PARAM_COUNT]);

    pub fn param(p: ParamId) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[p.index()] = 1;
        m
    }

    pub fn exponent(&self, p: ParamId) -> u32 {
        u32::from(self.0[p.index()])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    fn with_exponent(mut self, p: ParamId, exp: u32) -> Monomial {
        self.0[p.index()] = u16::try_from(exp).expect("exponent overflow");
        self
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; PARAM_COUNT];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow");
        }
        Monomial(out)
    }

    /// `(parameter, exponent)` pairs with non-zero exponent, in name order.
    pub fn factors(&self) -> impl Iterator<Item = (ParamId, u32)> + '_ {
        ParamId::ALL
            .iter()
            .copied()
            .filter_map(move |p| match self.exponent(p) {
                0 => None,
                e => Some((p, e)),
            })
    }

    fn sort_key(&self) -> Vec<(ParamId, u32)> {
        self.factors().collect()
    }
}

/// Bindings used by [`MultiPoly::substitute`]; unbound parameters are kept.
pub type Bindings = BTreeMap<ParamId, MultiPoly>;

/// A numeric point used by [`MultiPoly::eval`].
pub type Point = BTreeMap<ParamId, Rational>;

/// Sparse polynomial in the parameters with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn from_int(c: i64) -> MultiPoly {
        MultiPoly::constant(int(c))
    }

    pub fn param(p: ParamId) -> MultiPoly {
        let mut out = MultiPoly::zero();
        out.add_term(Monomial::param(p), Rational::one());
        out
    }

    /// `c * p^exp`.
    pub fn monomial(c: Rational, p: ParamId, exp: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        out.add_term(Monomial::ONE.with_exponent(p, exp), c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial, `None` if any parameter occurs.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.get(&Monomial::ONE).cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parameters occurring with non-zero exponent.
    pub fn params(&self) -> BTreeSet<ParamId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(p, _)| p))
            .collect()
    }

    pub fn degree_in(&self, p: ParamId) -> u32 {
        self.terms.keys().map(|m| m.exponent(p)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Ring homomorphism sending each bound parameter to its image.
    pub fn substitute(&self, bindings: &Bindings) -> MultiPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut factor = MultiPoly::constant(c.clone());
            for (p, e) in m.factors() {
                match bindings.get(&p) {
                    Some(image) => factor = &factor * &image.pow(e),
                    None => kept = kept.with_exponent(p, e),
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), fc);
            }
        }
        out
    }

    pub fn substitute_one(&self, p: ParamId, image: &MultiPoly) -> MultiPoly {
        let mut b = Bindings::new();
        b.insert(p, image.clone());
        self.substitute(&b)
    }

    /// Replace `p^2` by `square`; fails if `p` occurs to an odd power.
    pub fn substitute_square(&self, p: ParamId, square: &MultiPoly) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(p);
            if e % 2 == 1 {
                return None;
            }
            let rest = MultiPoly::from_terms([(m.with_exponent(p, 0), c.clone())]);
            out += &(&rest * &square.pow(e / 2));
        }
        Some(out)
    }

    /// Exact division by `p^k`; `None` unless every term is divisible.
    pub fn div_param_power(&self, p: ParamId, k: u32) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(p);
            if e < k {
                return None;
            }
            out.add_term(m.with_exponent(p, e - k), c.clone());
        }
        Some(out)
    }

    /// Coefficient of `p^power`, viewing `self` as a polynomial in `p`.
    pub fn coefficient_of(&self, p: ParamId, power: u32) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(p) == power)
                .map(|(m, c)| (m.with_exponent(p, 0), c.clone())),
        )
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &Point) -> Result<Rational, ArithError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (p, e) in m.factors() {
                let v = point.get(&p).ok_or(ArithError::UnboundParameter(p))?;
                term *= num_traits::pow::pow(v.clone(), e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// If `self == q * other` for a rational constant `q`, return `q`.
    pub fn ratio_to(&self, other: &MultiPoly) -> Option<Rational> {
        let (m, c) = other.terms.iter().next()?;
        let q = self.terms.get(m).cloned().unwrap_or_else(Rational::zero) / c;
        (other.scale(&q) == *self).then_some(q)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::from_int(c)
    }
}

impl From<ParamId> for MultiPoly {
    fn from(p: ParamId) -> Self {
        MultiPoly::param(p)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { self.$f(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl core::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (p, e) in m.factors() {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{p}")?;
        } else {
            write!(f, "{p}^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms sorted by their `(name, exponent)` factor lists,
/// constant term first, e.g. `-6*e1 + 2*e1^2*e2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by_cached_key(|(m, _)| m.sort_key());
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    /// Canonical text form as an owned string.
    pub fn to_canonical(&self) -> String {
        alloc::format!("{self}")
    }
}
