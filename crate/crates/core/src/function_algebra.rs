//! Commutative algebras on the basis `{A_n : n in Z}`.
//!
//! Every family here shares one product shape: `A_n A_m = A_{n+m}` unless both
//! indices are odd, in which case
//! `A_n A_m = A_{n+m} + c2 A_{n+m-2} + c4 A_{n+m-4}`.
//! A [`FamilySpec`] fixes `(c2, c4)`; single table entries can be overridden
//! to build deliberately broken algebras for mutation testing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{CurveError, FamilyError, SeriesError};
use crate::poly::{int, rat, Bindings, MultiPoly, ParamId, Rational};
use crate::report::Report;
use crate::series::{BasisSeriesCache, CurveParams, LaurentSeries};

/// Finite linear combination `sum c_n A_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FnElement {
    terms: BTreeMap<i64, MultiPoly>,
}

impl FnElement {
    pub fn zero() -> FnElement {
        FnElement::default()
    }

    pub fn basis(n: i64) -> FnElement {
        FnElement::term(n, MultiPoly::one())
    }

    pub fn term(n: i64, c: MultiPoly) -> FnElement {
        let mut f = FnElement::zero();
        f.add_term(n, c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, MultiPoly)>>(terms: I) -> FnElement {
        let mut f = FnElement::zero();
        for (n, c) in terms {
            f.add_term(n, c);
        }
        f
    }

    pub fn add_term(&mut self, n: i64, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FnElement, c: &MultiPoly) {
        for (n, x) in &other.terms {
            self.add_term(*n, x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> MultiPoly {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    /// Non-zero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &MultiPoly)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    /// Smallest and largest degree present.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn scale(&self, c: &MultiPoly) -> FnElement {
        FnElement::from_terms(self.terms.iter().map(|(n, x)| (*n, x * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> FnElement {
        FnElement::from_terms(self.terms.iter().map(|(n, x)| (*n, f(x))))
    }

    pub fn substitute(&self, bindings: &Bindings) -> FnElement {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    pub fn add(&self, other: &FnElement) -> FnElement {
        let mut out = self.clone();
        out.add_scaled(other, &MultiPoly::one());
        out
    }

    pub fn sub(&self, other: &FnElement) -> FnElement {
        let mut out = self.clone();
        out.add_scaled(other, &MultiPoly::from_int(-1));
        out
    }
}

impl fmt::Display for FnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "A[{n}]")?;
            } else {
                write!(f, "({c})*A[{n}]")?;
            }
        }
        Ok(())
    }
}

/// Which algebra family is in force, with its (possibly symbolic) parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Two-parameter elliptic family over `(e1, e2)`.
    Elliptic { e1: MultiPoly, e2: MultiPoly },
    /// Restriction to the line `e2 = s e1`, written with `e = e1`.
    LineS { s: MultiPoly, e: MultiPoly },
    /// Restriction to `e1 = 0`, written with `e = e2^2`.
    LineInfinity { e: MultiPoly },
    /// Genus-zero algebra with three marked points.
    ThreePoint { alpha: MultiPoly },
    /// The subalgebra `W` of the three-point algebra.
    SubalgebraW { alpha: MultiPoly },
    /// Laurent polynomials.
    Laurent,
    /// Arbitrary odd-odd coefficients `(a, b)`.
    Generic { a: MultiPoly, b: MultiPoly },
}

/// Product rule of a family, plus optional per-pair overrides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    family: Family,
    c2: MultiPoly,
    c4: MultiPoly,
    overrides: BTreeMap<(i64, i64), FnElement>,
}

fn p(id: ParamId) -> MultiPoly {
    MultiPoly::param(id)
}

impl FamilySpec {
    pub fn new(family: Family) -> FamilySpec {
        let (c2, c4) = match &family {
            Family::Elliptic { e1, e2 } => {
                let c4 = (e1 - e2) * (e1.scale(&int(2)) + e2);
                (e1.scale(&int(3)), c4)
            }
            Family::LineS { s, e } => {
                let one = MultiPoly::one();
                let c4 = e.pow(2) * (&one - s) * (s + MultiPoly::from_int(2));
                (e.scale(&int(3)), c4)
            }
            Family::LineInfinity { e } => (MultiPoly::zero(), -e),
            Family::ThreePoint { alpha } => (alpha.pow(2), MultiPoly::zero()),
            Family::SubalgebraW { alpha } => (alpha.pow(2).scale(&int(-2)), alpha.pow(4)),
            Family::Laurent => (MultiPoly::zero(), MultiPoly::zero()),
            Family::Generic { a, b } => (a.clone(), b.clone()),
        };
        FamilySpec {
            family,
            c2,
            c4,
            overrides: BTreeMap::new(),
        }
    }

    /// Elliptic family with symbolic `e1`, `e2`.
    pub fn elliptic() -> FamilySpec {
        FamilySpec::elliptic_with(p(ParamId::E1), p(ParamId::E2))
    }

    pub fn elliptic_with(e1: MultiPoly, e2: MultiPoly) -> FamilySpec {
        FamilySpec::new(Family::Elliptic { e1, e2 })
    }

    /// Line family with symbolic `s` and `e`.
    pub fn line_s() -> FamilySpec {
        FamilySpec::line_s_with(p(ParamId::S), p(ParamId::E))
    }

    pub fn line_s_with(s: MultiPoly, e: MultiPoly) -> FamilySpec {
        FamilySpec::new(Family::LineS { s, e })
    }

    pub fn line_infinity() -> FamilySpec {
        FamilySpec::line_infinity_with(p(ParamId::E))
    }

    pub fn line_infinity_with(e: MultiPoly) -> FamilySpec {
        FamilySpec::new(Family::LineInfinity { e })
    }

    pub fn three_point() -> FamilySpec {
        FamilySpec::new(Family::ThreePoint {
            alpha: p(ParamId::Alpha),
        })
    }

    pub fn subalgebra_w() -> FamilySpec {
        FamilySpec::new(Family::SubalgebraW {
            alpha: p(ParamId::Alpha),
        })
    }

    pub fn laurent() -> FamilySpec {
        FamilySpec::new(Family::Laurent)
    }

    pub fn generic(a: MultiPoly, b: MultiPoly) -> FamilySpec {
        FamilySpec::new(Family::Generic { a, b })
    }

    /// Every kind with fully symbolic parameters.
    pub fn all_symbolic() -> Vec<FamilySpec> {
        alloc::vec![
            FamilySpec::elliptic(),
            FamilySpec::line_s(),
            FamilySpec::line_infinity(),
            FamilySpec::three_point(),
            FamilySpec::subalgebra_w(),
            FamilySpec::laurent(),
        ]
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn kind_name(&self) -> &'static str {
        match self.family {
            Family::Elliptic { .. } => "elliptic",
            Family::LineS { .. } => "line-s",
            Family::LineInfinity { .. } => "line-infinity",
            Family::ThreePoint { .. } => "three-point",
            Family::SubalgebraW { .. } => "subalgebra-w",
            Family::Laurent => "laurent",
            Family::Generic { .. } => "generic",
        }
    }

    /// `(c2, c4)` of the odd-odd rule.
    pub fn odd_coefficients(&self) -> (&MultiPoly, &MultiPoly) {
        (&self.c2, &self.c4)
    }

    pub fn has_overrides(&self) -> bool {
        !self.overrides.is_empty()
    }

    /// Replace the table entry `A_n A_m` (and `A_m A_n`) by `value`.
    pub fn with_override(mut self, n: i64, m: i64, value: FnElement) -> FamilySpec {
        self.overrides.insert((n, m), value.clone());
        self.overrides.insert((m, n), value);
        self
    }

    /// Parameters occurring in the family's product rule.
    pub fn params(&self) -> BTreeSet<ParamId> {
        let mut out = BTreeSet::new();
        let mut add = |q: &MultiPoly| out.extend(q.params());
        match &self.family {
            Family::Elliptic { e1, e2 } => {
                add(e1);
                add(e2);
            }
            Family::LineS { s, e } => {
                add(s);
                add(e);
            }
            Family::LineInfinity { e } => add(e),
            Family::ThreePoint { alpha } | Family::SubalgebraW { alpha } => add(alpha),
            Family::Laurent => {}
            Family::Generic { a, b } => {
                add(a);
                add(b);
            }
        }
        for v in self.overrides.values() {
            for (_, c) in v.terms() {
                add(c);
            }
        }
        out
    }

    /// `A_n * A_m`.
    pub fn basis_product(&self, n: i64, m: i64) -> FnElement {
        if let Some(v) = self.overrides.get(&(n, m)) {
            return v.clone();
        }
        let mut out = FnElement::basis(n + m);
        if n.rem_euclid(2) == 1 && m.rem_euclid(2) == 1 {
            out.add_term(n + m - 2, self.c2.clone());
            out.add_term(n + m - 4, self.c4.clone());
        }
        out
    }

    fn apply_bindings(&self, b: &Bindings) -> Family {
        let sub = |q: &MultiPoly| q.substitute(b);
        match &self.family {
            Family::Elliptic { e1, e2 } => Family::Elliptic {
                e1: sub(e1),
                e2: sub(e2),
            },
            Family::LineS { s, e } => Family::LineS { s: sub(s), e: sub(e) },
            Family::LineInfinity { e } => Family::LineInfinity { e: sub(e) },
            Family::ThreePoint { alpha } => Family::ThreePoint { alpha: sub(alpha) },
            Family::SubalgebraW { alpha } => Family::SubalgebraW { alpha: sub(alpha) },
            Family::Laurent => Family::Laurent,
            Family::Generic { a, b: bb } => Family::Generic { a: sub(a), b: sub(bb) },
        }
    }
}

/// Reduce a specialized family to the simplest kind with the same rule.
fn classify(family: Family) -> Family {
    match family {
        Family::Elliptic { e1, e2 } => {
            if e1.is_zero() && e2.is_zero() {
                Family::Laurent
            } else if e1.is_zero() {
                Family::LineInfinity { e: e2.pow(2) }
            } else if let Some(r) = e2.ratio_to(&e1) {
                Family::LineS {
                    s: MultiPoly::constant(r),
                    e: e1,
                }
            } else if e2 == &p(ParamId::S) * &e1 {
                Family::LineS {
                    s: p(ParamId::S),
                    e: e1,
                }
            } else {
                Family::Elliptic { e1, e2 }
            }
        }
        Family::LineS { e, .. } | Family::LineInfinity { e } if e.is_zero() => Family::Laurent,
        Family::ThreePoint { alpha } | Family::SubalgebraW { alpha } if alpha.is_zero() => {
            Family::Laurent
        }
        Family::Generic { a, b } if a.is_zero() && b.is_zero() => Family::Laurent,
        other => other,
    }
}

/// Multiply two elements in the algebra fixed by `spec`.
pub fn multiply(spec: &FamilySpec, f: &FnElement, g: &FnElement) -> FnElement {
    let mut out = FnElement::zero();
    for (n, a) in f.terms() {
        for (m, b) in g.terms() {
            out.add_scaled(&spec.basis_product(n, m), &(a * b));
        }
    }
    out
}

/// Check `(A_n A_m) A_k = A_n (A_m A_k)` for all indices in `[-window, window]`.
pub fn verify_associativity(spec: &FamilySpec, window: i64) -> Report {
    let mut report = Report::new(format!("associativity[{}]", spec.kind_name()));
    for n in -window..=window {
        for m in -window..=window {
            let nm = spec.basis_product(n, m);
            for k in -window..=window {
                let lhs = multiply(spec, &nm, &FnElement::basis(k));
                let rhs = multiply(spec, &FnElement::basis(n), &spec.basis_product(m, k));
                if !report.check(
                    lhs == rhs,
                    || format!("(A[{n}] A[{m}]) A[{k}]"),
                    || format!("{lhs}  vs  {rhs}"),
                ) {
                    return report;
                }
            }
        }
    }
    report
}

/// Tightest `(R, S)` with `supp(A_n A_m)` inside `[n+m+R, n+m+S]` on the window.
pub fn grading_bounds_check(spec: &FamilySpec, window: i64) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for n in -window..=window {
        for m in -window..=window {
            if let Some((a, b)) = spec.basis_product(n, m).degree_range() {
                lo = lo.min(a - n - m);
                hi = hi.max(b - n - m);
            }
        }
    }
    if lo > hi {
        (0, 0)
    } else {
        (lo, hi)
    }
}

/// Push a family forward along a parameter specialization.
///
/// The result has the simplest kind whose rule matches; e.g. `e1, e2 -> 0`
/// gives [`Family::Laurent`] and `e2 -> s e1` gives [`Family::LineS`].
pub fn specialize_family(spec: &FamilySpec, bindings: &Bindings) -> Result<FamilySpec, FamilyError> {
    let own = spec.params();
    if let Some(foreign) = bindings.keys().find(|k| !own.contains(k)) {
        return Err(FamilyError::InconsistentBinding(format!(
            "`{foreign}` is not a parameter of the {} family",
            spec.kind_name()
        )));
    }
    let mut out = FamilySpec::new(classify(spec.apply_bindings(bindings)));
    for (&(n, m), v) in &spec.overrides {
        out.overrides.insert((n, m), v.substitute(bindings));
    }
    let (c2, c4) = spec.odd_coefficients();
    if out.c2 != c2.substitute(bindings) || out.c4 != c4.substitute(bindings) {
        return Err(FamilyError::InconsistentBinding(format!(
            "specialized rule ({}, {}) disagrees with substituted rule",
            out.c2, out.c4
        )));
    }
    Ok(out)
}

/// Verify that rescaling `A_n -> t^-n A_n` together with `e = t^2` (line
/// family) or `e = t^4` (line at infinity) turns the family into its `e = 1`
/// member, with every power of `t` cancelling.
pub fn rescale_check(spec: &FamilySpec, window: i64) -> Result<Report, FamilyError> {
    let t = p(ParamId::T);
    let (scaled, unit) = match &spec.family {
        Family::LineS { s, .. } => (
            FamilySpec::line_s_with(s.clone(), t.pow(2)),
            FamilySpec::line_s_with(s.clone(), MultiPoly::one()),
        ),
        Family::LineInfinity { .. } => (
            FamilySpec::line_infinity_with(t.pow(4)),
            FamilySpec::line_infinity_with(MultiPoly::one()),
        ),
        Family::Laurent => (FamilySpec::laurent(), FamilySpec::laurent()),
        _ => {
            return Err(FamilyError::InconsistentBinding(format!(
                "rescaling applies to the line families, not {}",
                spec.kind_name()
            )))
        }
    };
    let mut report = Report::new(format!("rescale[{}]", spec.kind_name()));
    for n in -window..=window {
        for m in -window..=window {
            let prod = scaled.basis_product(n, m);
            // A*_n A*_m = sum_j c_j t^(j-n-m) A*_j
            let mut starred = FnElement::zero();
            let mut divisible = true;
            for (j, c) in prod.terms() {
                match c.div_param_power(ParamId::T, (n + m - j) as u32) {
                    Some(q) => starred.add_term(j, q),
                    None => divisible = false,
                }
            }
            let expected = unit.basis_product(n, m);
            if !report.check(
                divisible && starred == expected,
                || format!("A*[{n}] A*[{m}]"),
                || format!("{prod} does not rescale to {expected}"),
            ) {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Greedy re-expression of a series in the basis `{A_j}`: repeatedly cancel
/// the lowest surviving power `z^k` with a multiple of `A_{-k}`.
pub fn reexpress_in_basis(
    series: &LaurentSeries,
    cache: &mut BasisSeriesCache,
) -> Result<FnElement, SeriesError> {
    let mut rest = series.clone();
    let mut out = FnElement::zero();
    while !rest.is_zero() {
        let k = rest.low();
        let basis = cache.series(-k)?;
        let lead = basis
            .leading_coefficient()
            .constant_value()
            .ok_or(SeriesError::InversionLeadingNonUnit)?;
        let c = rest.leading_coefficient().scale(&(Rational::one() / lead));
        rest = rest.sub(&basis.scale(&c));
        out.add_term(-k, c);
    }
    Ok(out)
}

/// Re-derive `A_n A_m` from Laurent expansions and compare with `spec`.
pub fn oracle_check_structure_with(
    cache: &mut BasisSeriesCache,
    spec: &FamilySpec,
    n: i64,
    m: i64,
) -> Result<Report, SeriesError> {
    let (a, b) = cache.pair(n, m)?;
    let prod = a.mul(b);
    let needed = 4 - n - m;
    if prod.trunc() < needed {
        return Err(SeriesError::TruncationTooShallow {
            needed,
            available: prod.trunc(),
        });
    }
    let found = reexpress_in_basis(&prod, cache)?;
    let expected = spec.basis_product(n, m);
    let mut report = Report::new(format!("series-product[{n},{m}]"));
    report.check(
        found == expected,
        || format!("A[{n}] A[{m}]"),
        || format!("series gives {found}, table gives {expected}"),
    );
    Ok(report)
}

/// Series check of one elliptic product with symbolic `e1`, `e2`.
pub fn oracle_check_structure(n: i64, m: i64, order: i64) -> Result<Report, SeriesError> {
    let mut cache = BasisSeriesCache::new(CurveParams::symbolic(), order);
    oracle_check_structure_with(&mut cache, &FamilySpec::elliptic(), n, m)
}

/// Series check of every elliptic product on `[-window, window]^2`.
pub fn oracle_check_window(window: i64, order: i64) -> Result<Report, SeriesError> {
    let spec = FamilySpec::elliptic();
    let mut cache = BasisSeriesCache::new(CurveParams::symbolic(), order);
    let mut report = Report::new("series-products[elliptic]");
    for n in -window..=window {
        for m in -window..=window {
            let r = oracle_check_structure_with(&mut cache, &spec, n, m)?;
            report.checked += r.checked;
            if let Some(w) = r.failure {
                report.fail(w.case, w.detail);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Slope of a line `e2 = s e1` through the origin of the `(e1, e2)` plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinity,
}

/// j-invariant of the curves on the line with slope `s`, normalised so that
/// `j(infinity) = 1728`.
pub fn j_invariant(s: &Slope) -> Result<Rational, CurveError> {
    match s {
        Slope::Infinity => Ok(int(1728)),
        Slope::Finite(s) => {
            let one = Rational::one();
            let two = int(2);
            let d = (&one - s) * (&two + s) * (&one + &two * s);
            if d.is_zero() {
                return Err(CurveError::SingularLine);
            }
            let q = &one + s + s * s;
            Ok(int(1728) * int(4) * &q * &q * &q / (&d * &d))
        }
    }
}

/// `16 (e1-e2)^2 (e1-e3)^2 (e2-e3)^2`.
pub fn discriminant(e1: &Rational, e2: &Rational, e3: &Rational) -> Result<Rational, CurveError> {
    if !(e1 + e2 + e3).is_zero() {
        return Err(CurveError::NotOnCurve);
    }
    let v = (e1 - e2) * (e1 - e3) * (e2 - e3);
    Ok(int(16) * &v * &v)
}

/// Symbolic discriminant; the sum `e1 + e2 + e3` must vanish identically.
pub fn discriminant_poly(
    e1: &MultiPoly,
    e2: &MultiPoly,
    e3: &MultiPoly,
) -> Result<MultiPoly, CurveError> {
    if !(e1 + e2 + e3).is_zero() {
        return Err(CurveError::NotOnCurve);
    }
    let v = (e1 - e2) * (e1 - e3) * (e2 - e3);
    Ok((&v * &v).scale(&int(16)))
}

/// The three slopes whose lines consist of nodal cubics.
pub fn singular_slopes() -> [Rational; 3] {
    [int(1), int(-2), rat(-1, 2)]
}

/// Human-readable rule, e.g. `A_n A_m = A_{n+m} + (3*e1) A_{n+m-2} + ...  (n, m odd)`.
pub fn describe_rule(spec: &FamilySpec) -> String {
    let (c2, c4) = spec.odd_coefficients();
    let mut s = String::from("A_n A_m = A_{n+m}");
    if !c2.is_zero() {
        s += &format!(" + ({c2}) A_{{n+m-2}}");
    }
    if !c4.is_zero() {
        s += &format!(" + ({c4}) A_{{n+m-4}}");
    }
    if !(c2.is_zero() && c4.is_zero()) {
        s += "  for n, m both odd; A_{n+m} otherwise";
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn elliptic_products() {
        let spec = FamilySpec::elliptic();
        let a11 = spec.basis_product(1, 1);
        assert_eq!(
            a11,
            FnElement::from_terms([
                (2, MultiPoly::one()),
                (0, q("3*e1")),
                (-2, q("(e1-e2)*(2*e1+e2)"))
            ])
        );
        assert_eq!(spec.basis_product(2, -3), FnElement::basis(-1));
        assert_eq!(
            FamilySpec::laurent().basis_product(5, -5),
            FnElement::basis(0)
        );
    }

    #[test]
    fn unit_and_commutativity() {
        for spec in FamilySpec::all_symbolic() {
            for n in -5..=5 {
                assert_eq!(spec.basis_product(0, n), FnElement::basis(n));
                for m in -5..=5 {
                    assert_eq!(spec.basis_product(n, m), spec.basis_product(m, n));
                }
            }
        }
    }

    #[test]
    fn grading_bounds() {
        assert_eq!(grading_bounds_check(&FamilySpec::elliptic(), 3), (-4, 0));
        assert_eq!(grading_bounds_check(&FamilySpec::three_point(), 3), (-2, 0));
        assert_eq!(grading_bounds_check(&FamilySpec::laurent(), 3), (0, 0));
        assert_eq!(grading_bounds_check(&FamilySpec::line_infinity(), 3), (-4, 0));
    }

    #[test]
    fn associativity_small_window() {
        for spec in FamilySpec::all_symbolic() {
            let r = verify_associativity(&spec, 3);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn corrupted_entry_breaks_associativity() {
        let spec = FamilySpec::elliptic();
        let mut bad = spec.basis_product(1, 1);
        bad.add_term(0, q("e1"));
        let spec = spec.with_override(1, 1, bad);
        let r = verify_associativity(&spec, 3);
        assert!(!r.passed());
        assert!(r.failure.unwrap().case.contains("A["));
    }

    #[test]
    fn specializations() {
        let spec = FamilySpec::elliptic();
        let mut b = Bindings::new();
        b.insert(ParamId::E1, MultiPoly::zero());
        b.insert(ParamId::E2, MultiPoly::zero());
        assert_eq!(specialize_family(&spec, &b).unwrap().family(), &Family::Laurent);

        let mut b = Bindings::new();
        b.insert(ParamId::E2, q("s*e"));
        b.insert(ParamId::E1, q("e"));
        let line = specialize_family(&spec, &b).unwrap();
        assert_eq!(line, FamilySpec::line_s());

        let mut b = Bindings::new();
        b.insert(ParamId::E1, MultiPoly::zero());
        let inf = specialize_family(&spec, &b).unwrap();
        assert_eq!(inf, FamilySpec::line_infinity_with(q("e2^2")));

        let mut b = Bindings::new();
        b.insert(ParamId::Alpha, MultiPoly::one());
        assert!(matches!(
            specialize_family(&spec, &b),
            Err(FamilyError::InconsistentBinding(_))
        ));
    }

    #[test]
    fn rescaling() {
        for spec in [FamilySpec::line_s(), FamilySpec::line_infinity(), FamilySpec::laurent()] {
            let r = rescale_check(&spec, 4).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(rescale_check(&FamilySpec::elliptic(), 2).is_err());
    }

    #[test]
    fn series_oracle_examples() {
        for (n, m) in [(1, 1), (2, -2), (3, -1), (-3, 5)] {
            let r = oracle_check_structure(n, m, 20).unwrap();
            assert!(r.passed(), "{r}");
        }
        let mut cache = BasisSeriesCache::new(CurveParams::symbolic(), 12);
        let (a, b) = cache.pair(3, -1).unwrap();
        let prod = a.mul(b);
        let found = reexpress_in_basis(&prod, &mut cache).unwrap();
        assert_eq!(found.coeff(0), q("3*e1"));
        assert_eq!(found.coeff(-2), q("(e1-e2)*(2*e1+e2)"));
    }

    #[test]
    fn j_invariant_values() {
        assert_eq!(j_invariant(&Slope::Infinity).unwrap(), int(1728));
        assert_eq!(j_invariant(&Slope::Finite(int(0))).unwrap(), int(1728));
        for s in singular_slopes() {
            assert_eq!(j_invariant(&Slope::Finite(s)), Err(CurveError::SingularLine));
        }
        assert!(j_invariant(&Slope::Finite(int(3))).is_ok());
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&int(1), &int(0), &int(-1)).unwrap(), int(64));
        assert_eq!(
            discriminant(&int(1), &int(1), &int(1)),
            Err(CurveError::NotOnCurve)
        );
        let e1 = q("e1");
        for s in singular_slopes() {
            let e2 = e1.scale(&s);
            let e3 = -(&e1 + &e2);
            assert!(discriminant_poly(&e1, &e2, &e3).unwrap().is_zero());
        }
        let e2 = e1.scale(&int(3));
        let e3 = -(&e1 + &e2);
        assert!(!discriminant_poly(&e1, &e2, &e3).unwrap().is_zero());
    }
}
