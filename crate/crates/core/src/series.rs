//! Truncated Laurent series in `z` with polynomial coefficients.
//!
//! A [`LaurentSeries`] stores the coefficients of `z^low ..= z^trunc`; nothing
//! is claimed about higher powers. Every operation returns the tightest
//! truncation order that its inputs guarantee, so a coefficient read from a
//! result is always exact.
//!
//! The Weierstrass function is expanded from its differential equation with
//! `g2` and `g3` kept symbolic; the basis functions `A_n` are then built as
//! `A_{2k} = (wp - e1)^k` and `A_{2k+1} = 1/2 wp' (wp - e1)^(k-1)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::poly::{int, rat, Bindings, MultiPoly, ParamId, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    low: i64,
    coeffs: Vec<MultiPoly>,
}

impl LaurentSeries {
    /// Series with `coeffs[i]` the coefficient of `z^(low + i)`.
    ///
    /// Leading zeros are stripped; an all-zero input becomes the zero series
    /// known up to the same truncation order.
    pub fn new(low: i64, coeffs: Vec<MultiPoly>) -> LaurentSeries {
        assert!(!coeffs.is_empty(), "a series needs at least one known coefficient");
        let mut s = LaurentSeries { low, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.low += k as i64;
            }
            None => {
                let trunc = self.trunc();
                self.low = trunc;
                self.coeffs = vec![MultiPoly::zero()];
            }
        }
    }

    pub fn zero(trunc: i64) -> LaurentSeries {
        LaurentSeries {
            low: trunc,
            coeffs: vec![MultiPoly::zero()],
        }
    }

    /// `c * z^exp`, known exactly up to `z^trunc`.
    pub fn monomial(c: MultiPoly, exp: i64, trunc: i64) -> LaurentSeries {
        if exp > trunc {
            return LaurentSeries::zero(trunc);
        }
        let mut coeffs = vec![MultiPoly::zero(); (trunc - exp + 1) as usize];
        coeffs[0] = c;
        LaurentSeries::new(exp, coeffs)
    }

    pub fn one(trunc: i64) -> LaurentSeries {
        LaurentSeries::monomial(MultiPoly::one(), 0, trunc)
    }

    /// Lowest exponent with a non-zero coefficient (equals `trunc` for the zero series).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent whose coefficient is known.
    pub fn trunc(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn coeff(&self, exp: i64) -> Result<MultiPoly, SeriesError> {
        if exp > self.trunc() {
            return Err(SeriesError::TruncationTooShallow {
                needed: exp,
                available: self.trunc(),
            });
        }
        Ok(self.coeff_ref(exp).cloned().unwrap_or_default())
    }

    fn coeff_ref(&self, exp: i64) -> Option<&MultiPoly> {
        if exp < self.low {
            None
        } else {
            self.coeffs.get((exp - self.low) as usize)
        }
    }

    pub fn leading_coefficient(&self) -> &MultiPoly {
        &self.coeffs[0]
    }

    /// `(exponent, coefficient)` pairs for every known exponent from `low`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &MultiPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Drop all coefficients above `z^trunc` (no-op if already shallower).
    pub fn truncate(&self, trunc: i64) -> LaurentSeries {
        if trunc >= self.trunc() {
            return self.clone();
        }
        if trunc < self.low {
            return LaurentSeries::zero(trunc);
        }
        LaurentSeries::new(self.low, self.coeffs[..=(trunc - self.low) as usize].to_vec())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> LaurentSeries {
        LaurentSeries::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn substitute(&self, bindings: &Bindings) -> LaurentSeries {
        LaurentSeries::new(
            self.low,
            self.coeffs.iter().map(|c| c.substitute(bindings)).collect(),
        )
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.combine(other, true)
    }

    fn combine(&self, other: &LaurentSeries, negate: bool) -> LaurentSeries {
        let low = self.low.min(other.low);
        let trunc = self.trunc().min(other.trunc());
        let coeffs = (low..=trunc)
            .map(|k| {
                let a = self.coeff_ref(k);
                let b = other.coeff_ref(k);
                match (a, b, negate) {
                    (Some(a), Some(b), false) => a + b,
                    (Some(a), Some(b), true) => a - b,
                    (Some(a), None, _) => a.clone(),
                    (None, Some(b), false) => b.clone(),
                    (None, Some(b), true) => -b,
                    (None, None, _) => MultiPoly::zero(),
                }
            })
            .collect();
        LaurentSeries::new(low, coeffs)
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let low = self.low + other.low;
        let trunc = (self.trunc() + other.low).min(other.trunc() + self.low);
        let coeffs = (low..=trunc)
            .map(|k| product_at(self, other, k))
            .collect();
        LaurentSeries::new(low, coeffs)
    }

    /// Multiplicative inverse; the leading coefficient must be a non-zero rational.
    pub fn invert(&self) -> Result<LaurentSeries, SeriesError> {
        let lead = self
            .leading_coefficient()
            .constant_value()
            .filter(|c| !c.is_zero())
            .ok_or(SeriesError::InversionLeadingNonUnit)?;
        let inv_lead = Rational::one() / lead;
        let neg_inv = -&inv_lead;
        let len = self.coeffs.len();
        let mut out: Vec<MultiPoly> = Vec::with_capacity(len);
        out.push(MultiPoly::constant(inv_lead));
        for k in 1..len {
            let acc: MultiPoly = (1..=k)
                .filter(|&i| !self.coeffs[i].is_zero() && !out[k - i].is_zero())
                .map(|i| &self.coeffs[i] * &out[k - i])
                .sum();
            out.push(acc.scale(&neg_inv));
        }
        Ok(LaurentSeries::new(-self.low, out))
    }

    /// Integer power; negative exponents go through [`LaurentSeries::invert`].
    pub fn pow(&self, exp: i64) -> Result<LaurentSeries, SeriesError> {
        let base = if exp < 0 { self.invert()? } else { self.clone() };
        let rel = base.coeffs.len() as i64 - 1;
        let mut result = LaurentSeries::one(rel);
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(result)
    }

    /// Term-wise `d/dz`.
    pub fn derivative(&self) -> LaurentSeries {
        let coeffs = self
            .iter()
            .map(|(k, c)| c.scale(&int(k)))
            .collect();
        LaurentSeries::new(self.low - 1, coeffs)
    }

    /// Coefficient of `z^-1`.
    pub fn residue(&self) -> Result<MultiPoly, SeriesError> {
        self.coeff(-1)
    }
}

fn product_at(a: &LaurentSeries, b: &LaurentSeries, k: i64) -> MultiPoly {
    // exponents i of `a` with k - i inside `b`'s known range
    let lo = a.low.max(k - b.trunc());
    let hi = a.trunc().min(k - b.low);
    (lo..=hi)
        .filter_map(|i| {
            let x = a.coeff_ref(i)?;
            let y = b.coeff_ref(k - i)?;
            (!x.is_zero() && !y.is_zero()).then(|| x * y)
        })
        .sum()
}

/// Coefficient of `z^exp` in `a * b` without forming the whole product.
pub fn product_coefficient(
    a: &LaurentSeries,
    b: &LaurentSeries,
    exp: i64,
) -> Result<MultiPoly, SeriesError> {
    let trunc = (a.trunc() + b.low).min(b.trunc() + a.low);
    if exp > trunc {
        return Err(SeriesError::TruncationTooShallow {
            needed: exp,
            available: trunc,
        });
    }
    Ok(product_at(a, b, exp))
}

/// Residue of a product, `res_{z=0}(a * b)`.
pub fn residue_of_product(a: &LaurentSeries, b: &LaurentSeries) -> Result<MultiPoly, SeriesError> {
    product_coefficient(a, b, -1)
}

/// Laurent expansion of the Weierstrass function up to `z^order`.
///
/// Coefficients are polynomials in `g2` and `g3`. Writing
/// `wp = z^-2 + sum_{k>=1} c_k z^(2k)`, the second-order equation
/// `wp'' = 6 wp^2 - g2/2` gives `2(2k+3)(k-2) c_k = 6 sum_{i+j=k-1} c_i c_j`
/// for `k != 2` (so `c_1 = g2/20`), and the first-order equation fixes the
/// remaining `c_2 = g3/28`.
pub fn wp_series(order: i64) -> LaurentSeries {
    let order = order.max(-2);
    let kmax = if order >= 2 { order / 2 } else { 0 };
    let mut c: Vec<MultiPoly> = vec![MultiPoly::zero(); kmax as usize + 1];
    for k in 1..=kmax {
        c[k as usize] = match k {
            1 => MultiPoly::monomial(rat(1, 20), ParamId::G2, 1),
            2 => MultiPoly::monomial(rat(1, 28), ParamId::G3, 1),
            _ => {
                let conv: MultiPoly = (1..=k - 2)
                    .map(|i| &c[i as usize] * &c[(k - 1 - i) as usize])
                    .sum();
                conv.scale(&rat(3, (2 * k + 3) * (k - 2)))
            }
        };
    }
    let mut coeffs = vec![MultiPoly::zero(); (order + 3) as usize];
    coeffs[0] = MultiPoly::one();
    for k in 1..=kmax {
        coeffs[(2 * k + 2) as usize] = c[k as usize].clone();
    }
    LaurentSeries::new(-2, coeffs)
}

/// Branch points `e1`, `e2` (and `e3 = -(e1 + e2)`) of the cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    pub e1: MultiPoly,
    pub e2: MultiPoly,
}

impl CurveParams {
    /// Fully symbolic `e1`, `e2`.
    pub fn symbolic() -> CurveParams {
        CurveParams {
            e1: MultiPoly::param(ParamId::E1),
            e2: MultiPoly::param(ParamId::E2),
        }
    }

    pub fn new(e1: MultiPoly, e2: MultiPoly) -> CurveParams {
        CurveParams { e1, e2 }
    }

    pub fn e3(&self) -> MultiPoly {
        -(&self.e1 + &self.e2)
    }

    /// `g2 = -4(e1 e2 + e1 e3 + e2 e3)`.
    pub fn g2(&self) -> MultiPoly {
        let e3 = self.e3();
        let sym = &(&(&self.e1 * &self.e2) + &(&self.e1 * &e3)) + &(&self.e2 * &e3);
        sym.scale(&int(-4))
    }

    /// `g3 = 4 e1 e2 e3`.
    pub fn g3(&self) -> MultiPoly {
        (&(&self.e1 * &self.e2) * &self.e3()).scale(&int(4))
    }

    pub fn g_bindings(&self) -> Bindings {
        let mut b = Bindings::new();
        b.insert(ParamId::G2, self.g2());
        b.insert(ParamId::G3, self.g3());
        b
    }
}

/// Laurent expansion at `z = 0` of the basis function `A_n`, exact up to `z^order`.
pub fn basis_series(n: i64, order: i64, curve: &CurveParams) -> Result<LaurentSeries, SeriesError> {
    if order < -n {
        return Err(SeriesError::TruncationTooShallow {
            needed: -n,
            available: order,
        });
    }
    // relative precision: number of coefficients past the leading z^-n
    let rel = order + n;
    let wp = wp_series(rel.max(4)).substitute(&curve.g_bindings());
    let wp_minus_e1 = wp.sub(&LaurentSeries::monomial(curve.e1.clone(), 0, wp.trunc()));
    // z^2 (wp - e1) = 1 + e1 z^2 + ...
    let unit = wp_minus_e1.shift(2).truncate(rel);
    let a = if n % 2 == 0 {
        unit.pow(n / 2)?.shift(-n)
    } else {
        let k = (n - 1) / 2;
        // z^3 wp' = -2 + ...
        let dwp = wp.derivative().shift(3).truncate(rel);
        dwp.mul(&unit.pow(k - 1)?)
            .scale(&MultiPoly::constant(rat(1, 2)))
            .shift(-n)
    };
    Ok(a.truncate(order))
}

/// Memo table of basis expansions and their derivatives at a fixed order.
#[derive(Clone, Debug)]
pub struct BasisSeriesCache {
    curve: CurveParams,
    order: i64,
    series: BTreeMap<i64, LaurentSeries>,
    derivatives: BTreeMap<i64, LaurentSeries>,
}

impl BasisSeriesCache {
    pub fn new(curve: CurveParams, order: i64) -> BasisSeriesCache {
        BasisSeriesCache {
            curve,
            order,
            series: BTreeMap::new(),
            derivatives: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn curve(&self) -> &CurveParams {
        &self.curve
    }

    pub fn series(&mut self, n: i64) -> Result<&LaurentSeries, SeriesError> {
        if !self.series.contains_key(&n) {
            let s = basis_series(n, self.order, &self.curve)?;
            self.series.insert(n, s);
        }
        Ok(&self.series[&n])
    }

    /// Both expansions at once, for products.
    pub fn pair(&mut self, n: i64, m: i64) -> Result<(&LaurentSeries, &LaurentSeries), SeriesError> {
        self.series(n)?;
        self.series(m)?;
        Ok((&self.series[&n], &self.series[&m]))
    }

    /// Expansion of `A_n` and derivative of `A_m`, for residue pairings.
    pub fn with_derivative(
        &mut self,
        n: i64,
        m: i64,
    ) -> Result<(&LaurentSeries, &LaurentSeries), SeriesError> {
        self.series(n)?;
        self.derivative(m)?;
        Ok((&self.series[&n], &self.derivatives[&m]))
    }

    pub fn derivative(&mut self, n: i64) -> Result<&LaurentSeries, SeriesError> {
        if !self.derivatives.contains_key(&n) {
            let d = self.series(n)?.derivative();
            self.derivatives.insert(n, d);
        }
        Ok(&self.derivatives[&n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn derivative_of_inverse_square() {
        let s = LaurentSeries::monomial(MultiPoly::one(), -2, 5);
        let d = s.derivative();
        assert_eq!(d.low(), -3);
        assert_eq!(d.coeff(-3).unwrap(), MultiPoly::from_int(-2));
        assert_eq!(d.trunc(), 4);
    }

    #[test]
    fn monomials_multiply() {
        let a = LaurentSeries::monomial(MultiPoly::one(), -1, 6);
        let b = LaurentSeries::monomial(MultiPoly::one(), 1, 6);
        let prod = a.mul(&b);
        assert_eq!(prod.low(), 0);
        assert_eq!(prod.coeff(0).unwrap(), MultiPoly::one());
        assert!(prod.iter().skip(1).all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn inversion_round_trip() {
        // z^-2 (1 + e1 z^2 + g2/20 z^4)
        let s = LaurentSeries::new(-2, vec![
            MultiPoly::one(),
            MultiPoly::zero(),
            p("e1"),
            MultiPoly::zero(),
            p("g2/20"),
            MultiPoly::zero(),
            MultiPoly::zero(),
        ]);
        let inv = s.invert().unwrap();
        assert_eq!(inv.low(), 2);
        assert_eq!(inv.coeff(2).unwrap(), MultiPoly::one());
        assert_eq!(inv.coeff(4).unwrap(), p("-e1"));
        let prod = s.mul(&inv);
        assert_eq!(prod.coeff(0).unwrap(), MultiPoly::one());
        for (k, c) in prod.iter().skip(1) {
            assert!(c.is_zero(), "z^{k} coefficient {c}");
        }
    }

    #[test]
    fn inversion_needs_unit_leading_coefficient() {
        let s = LaurentSeries::new(0, vec![p("e1"), MultiPoly::one()]);
        assert_eq!(s.invert(), Err(SeriesError::InversionLeadingNonUnit));
        assert_eq!(
            LaurentSeries::zero(3).invert(),
            Err(SeriesError::InversionLeadingNonUnit)
        );
    }

    #[test]
    fn residue_examples() {
        let s = LaurentSeries::monomial(p("3*e1"), -1, 4);
        assert_eq!(s.residue().unwrap(), p("3*e1"));
        let z2 = LaurentSeries::monomial(MultiPoly::one(), 2, 4);
        assert!(z2.residue().unwrap().is_zero());
        let shallow = LaurentSeries::monomial(MultiPoly::one(), -4, -2);
        assert!(matches!(
            shallow.residue(),
            Err(SeriesError::TruncationTooShallow { needed: -1, .. })
        ));
    }

    #[test]
    fn wp_leading_coefficients() {
        let wp = wp_series(8);
        assert_eq!(wp.low(), -2);
        assert_eq!(wp.coeff(-2).unwrap(), MultiPoly::one());
        assert!(wp.coeff(0).unwrap().is_zero());
        assert_eq!(wp.coeff(2).unwrap(), p("g2/20"));
        assert_eq!(wp.coeff(4).unwrap(), p("g3/28"));
        // c_3 = 3/(9*1) * c_1^2
        assert_eq!(wp.coeff(6).unwrap(), p("g2^2/1200"));
        assert!(wp.coeff(1).unwrap().is_zero());
    }

    #[test]
    fn wp_satisfies_first_order_equation() {
        let wp = wp_series(16);
        let d = wp.derivative();
        let lhs = d.mul(&d);
        let cube = wp.pow(3).unwrap().scale(&MultiPoly::from_int(4));
        let rhs = cube
            .sub(&wp.scale(&p("g2")))
            .sub(&LaurentSeries::monomial(p("g3"), 0, cube.trunc()));
        let diff = lhs.sub(&rhs);
        assert!(diff.trunc() >= 10, "known to z^{}", diff.trunc());
        assert!(diff.is_zero(), "residual {:?}", diff);
    }

    #[test]
    fn wp_minus_e1_expansion() {
        let curve = CurveParams::symbolic();
        let a2 = basis_series(2, 4, &curve).unwrap();
        assert_eq!(a2.coeff(-2).unwrap(), MultiPoly::one());
        assert_eq!(a2.coeff(0).unwrap(), p("-e1"));
        assert_eq!(a2.coeff(2).unwrap(), curve.g2().scale(&rat(1, 20)));
    }

    #[test]
    fn basis_series_shape() {
        let curve = CurveParams::symbolic();
        assert_eq!(basis_series(0, 6, &curve).unwrap(), LaurentSeries::one(6));
        let a1 = basis_series(1, 6, &curve).unwrap();
        assert_eq!(a1.low(), -1);
        assert_eq!(a1.coeff(-1).unwrap(), MultiPoly::from_int(-1));
        for n in -8..=8 {
            let s = basis_series(n, 10, &curve).unwrap();
            assert_eq!(s.low(), -n, "lowest exponent of A_{n}");
            assert_eq!(s.trunc(), 10);
            for (k, c) in s.iter() {
                if (k - n).rem_euclid(2) == 1 {
                    assert!(c.is_zero(), "A_{n} has z^{k}");
                }
            }
        }
    }

    #[test]
    fn odd_basis_is_scaled_derivative_of_even() {
        let curve = CurveParams::symbolic();
        for k in [-3i64, -2, -1, 1, 2, 3] {
            let even = basis_series(2 * k, 12, &curve).unwrap();
            let odd = basis_series(2 * k + 1, 11, &curve).unwrap();
            let via_derivative = even
                .derivative()
                .scale(&MultiPoly::constant(rat(1, 2 * k)));
            assert_eq!(odd, via_derivative, "k = {k}");
        }
    }

    #[test]
    fn residue_of_exact_derivatives_vanishes() {
        let curve = CurveParams::symbolic();
        for n in -6..=6 {
            let s = basis_series(n, 8, &curve).unwrap();
            assert!(s.derivative().residue().unwrap().is_zero());
            let sq = s.mul(&s);
            assert!(sq.derivative().residue().unwrap().is_zero());
        }
    }

    #[test]
    fn normalization_residue() {
        // res((wp - e1)^-1 wp') = -2
        let curve = CurveParams::symbolic();
        let a_minus2 = basis_series(-2, 6, &curve).unwrap();
        let da2 = basis_series(2, 6, &curve).unwrap().derivative();
        assert_eq!(residue_of_product(&a_minus2, &da2).unwrap(), MultiPoly::from_int(-2));
        assert_eq!(
            a_minus2.mul(&da2).residue().unwrap(),
            MultiPoly::from_int(-2)
        );
    }

    #[test]
    fn partial_product_agrees_with_full_product() {
        let curve = CurveParams::symbolic();
        let a = basis_series(3, 8, &curve).unwrap();
        let b = basis_series(-5, 8, &curve).unwrap();
        let full = a.mul(&b);
        for k in full.low()..=full.trunc() {
            assert_eq!(product_coefficient(&a, &b, k).unwrap(), full.coeff(k).unwrap());
        }
        assert!(product_coefficient(&a, &b, full.trunc() + 1).is_err());
    }
}
