//! Low-degree cochain calculus for current algebras and their function algebras.
//!
//! Adjoint-valued cochains use the Chevalley–Eilenberg differentials
//!
//! ```text
//! (d1 eta)(x,y)    = eta([x,y]) - [x,eta(y)] - [eta(x),y]
//! (d2 omega)(x,y,z) = omega([x,y],z) - omega([x,z],y) + omega([y,z],x)
//!                    - [x,omega(y,z)] + [y,omega(x,z)] - [z,omega(x,y)]
//! ```
//!
//! and commutative cochains the Harrison differentials
//!
//! ```text
//! (delta1 phi)(a,b) = a phi(b) - phi(ab) + phi(a) b
//! (delta2 F)(a,b,c) = a F(b,c) - F(ab,c) + F(a,bc) - F(a,b) c
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::current::{current_bracket, CurrentElement, CurrentFamily};
use crate::error::CochainError;
use crate::function_algebra::{multiply, FamilySpec, FnElement};
use crate::poly::{rat, MultiPoly, ParamId};
use crate::report::Report;

type Basis = (usize, i64);

fn is_odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Linear map on a current algebra, defined on basis symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinMap1 {
    /// `x A_n -> scalar x A_{n+shift}` for odd `n`, zero for even `n`.
    OddShift { shift: i64, scalar: MultiPoly },
    /// Explicit images; unlisted basis symbols map to zero.
    Table(BTreeMap<Basis, CurrentElement>),
}

impl LinMap1 {
    pub fn odd_shift(shift: i64, scalar: MultiPoly) -> LinMap1 {
        LinMap1::OddShift { shift, scalar }
    }

    pub fn zero() -> LinMap1 {
        LinMap1::Table(BTreeMap::new())
    }

    pub fn eval_basis(&self, a: usize, n: i64) -> CurrentElement {
        match self {
            LinMap1::OddShift { shift, scalar } if is_odd(n) => {
                CurrentElement::term(a, n + shift, scalar.clone())
            }
            LinMap1::OddShift { .. } => CurrentElement::zero(),
            LinMap1::Table(t) => t.get(&(a, n)).cloned().unwrap_or_default(),
        }
    }

    pub fn apply(&self, u: &CurrentElement) -> CurrentElement {
        let mut out = CurrentElement::zero();
        for ((a, n), c) in u.terms() {
            out.add_scaled(&self.eval_basis(a, n), c);
        }
        out
    }
}

/// Alternating bilinear map on a current algebra with values in itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjCochain2 {
    /// `(x A_n, y A_m) -> sum scalar [x,y] A_{n+m+shift}` for `n`, `m` odd, zero otherwise.
    OddOdd(Vec<(i64, MultiPoly)>),
    /// Explicit values on pairs `p < q`; the rest follows by antisymmetry.
    Table(BTreeMap<(Basis, Basis), CurrentElement>),
    /// The coboundary `d1 eta`.
    Coboundary(LinMap1),
}

impl AdjCochain2 {
    pub fn zero() -> AdjCochain2 {
        AdjCochain2::OddOdd(Vec::new())
    }

    /// `(x A_n, y A_m) -> [x,y] A_{n+m+shift}` on odd pairs.
    pub fn odd_shift(shift: i64, scalar: MultiPoly) -> AdjCochain2 {
        AdjCochain2::OddOdd(alloc::vec![(shift, scalar)])
    }

    /// Alternating table from arbitrary entries; `(p, q)` and `(q, p)` are
    /// folded together and diagonal entries dropped.
    pub fn alternating_table<I>(entries: I) -> AdjCochain2
    where
        I: IntoIterator<Item = (Basis, Basis, CurrentElement)>,
    {
        let mut t: BTreeMap<(Basis, Basis), CurrentElement> = BTreeMap::new();
        for (p, q, v) in entries {
            if p == q {
                continue;
            }
            let (key, v) = if p < q { ((p, q), v) } else { ((q, p), v.neg()) };
            let slot = t.entry(key).or_default();
            *slot = slot.add(&v);
        }
        t.retain(|_, v| !v.is_zero());
        AdjCochain2::Table(t)
    }

    pub fn eval_basis(&self, fam: &CurrentFamily, p: Basis, q: Basis) -> CurrentElement {
        let ((a, n), (b, m)) = (p, q);
        match self {
            AdjCochain2::OddOdd(parts) => {
                let mut out = CurrentElement::zero();
                if !(is_odd(n) && is_odd(m)) {
                    return out;
                }
                for (c, k) in fam.lie.bracket_basis(a, b) {
                    let k = MultiPoly::constant(k.clone());
                    for (shift, scalar) in parts {
                        out.add_term(c, n + m + shift, scalar * &k);
                    }
                }
                out
            }
            AdjCochain2::Table(t) => {
                if p < q {
                    t.get(&(p, q)).cloned().unwrap_or_default()
                } else {
                    t.get(&(q, p)).map(CurrentElement::neg).unwrap_or_default()
                }
            }
            AdjCochain2::Coboundary(eta) => lie_d1_adjoint(fam, eta, p, q),
        }
    }

    pub fn eval(&self, fam: &CurrentFamily, u: &CurrentElement, v: &CurrentElement) -> CurrentElement {
        let mut out = CurrentElement::zero();
        for (p, x) in u.terms() {
            for (q, y) in v.terms() {
                out.add_scaled(&self.eval_basis(fam, p, q), &(x * y));
            }
        }
        out
    }
}

/// `(d1 eta)(x, y)` on basis symbols, brackets taken in `base`.
pub fn lie_d1_adjoint(base: &CurrentFamily, eta: &LinMap1, p: Basis, q: Basis) -> CurrentElement {
    let x = CurrentElement::basis(p.0, p.1);
    let y = CurrentElement::basis(q.0, q.1);
    let mut out = eta.apply(&base.bracket_basis(p.0, p.1, q.0, q.1));
    let minus = MultiPoly::from_int(-1);
    out.add_scaled(&current_bracket(base, &x, &eta.eval_basis(q.0, q.1)), &minus);
    out.add_scaled(&current_bracket(base, &eta.eval_basis(p.0, p.1), &y), &minus);
    out
}

/// `(d2 omega)(x, y, z)` on basis symbols, brackets taken in `base`.
pub fn lie_d2_adjoint(
    base: &CurrentFamily,
    omega: &AdjCochain2,
    p: Basis,
    q: Basis,
    r: Basis,
) -> CurrentElement {
    let el = |s: Basis| CurrentElement::basis(s.0, s.1);
    let br = |s: Basis, t: Basis| base.bracket_basis(s.0, s.1, t.0, t.1);
    let (x, y, z) = (el(p), el(q), el(r));
    let one = MultiPoly::one();
    let minus = MultiPoly::from_int(-1);
    let mut out = omega.eval(base, &br(p, q), &z);
    out.add_scaled(&omega.eval(base, &br(p, r), &y), &minus);
    out.add_scaled(&omega.eval(base, &br(q, r), &x), &one);
    out.add_scaled(&current_bracket(base, &x, &omega.eval_basis(base, q, r)), &minus);
    out.add_scaled(&current_bracket(base, &y, &omega.eval_basis(base, p, r)), &one);
    out.add_scaled(&current_bracket(base, &z, &omega.eval_basis(base, p, q)), &minus);
    out
}

/// `d2 omega = 0` on increasing basis triples of the window.
pub fn verify_cocycle_adjoint(base: &CurrentFamily, omega: &AdjCochain2, window: i64) -> Report {
    let mut report = Report::new("d2-closed");
    let basis = base.window_basis(window);
    for (i, &p) in basis.iter().enumerate() {
        for (j, &q) in basis.iter().enumerate().skip(i + 1) {
            for &r in &basis[j + 1..] {
                let v = lie_d2_adjoint(base, omega, p, q, r);
                if !report.check(
                    v.is_zero(),
                    || format!("T{}.A[{}], T{}.A[{}], T{}.A[{}]", p.0, p.1, q.0, q.1, r.0, r.1),
                    || format!("d2 omega = {v}"),
                ) {
                    return report;
                }
            }
        }
    }
    report
}

/// Odd-odd coefficients of the product rule as polynomials in `e`, checking
/// that the family is a polynomial deformation of the Laurent algebra.
fn first_order_coefficients(spec: &FamilySpec) -> Result<(MultiPoly, MultiPoly), CochainError> {
    if spec.has_overrides() {
        return Err(CochainError::NotPolynomialInE(String::from(
            "product table has overridden entries",
        )));
    }
    let (c2, c4) = spec.odd_coefficients();
    for c in [c2, c4] {
        if let Some(p) = c.params().into_iter().find(|p| !matches!(p, ParamId::E | ParamId::S)) {
            return Err(CochainError::NotPolynomialInE(format!(
                "{} family depends on `{p}`",
                spec.kind_name()
            )));
        }
        if !c.coefficient_of(ParamId::E, 0).is_zero() {
            return Err(CochainError::NotPolynomialInE(format!(
                "{} family at e = 0 is not the Laurent algebra",
                spec.kind_name()
            )));
        }
    }
    Ok((c2.coefficient_of(ParamId::E, 1), c4.coefficient_of(ParamId::E, 1)))
}

fn shifts(c2: MultiPoly, c4: MultiPoly) -> Vec<(i64, MultiPoly)> {
    [(-2, c2), (-4, c4)]
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Coefficient of `e` in the bracket of a one-parameter family, as a cochain
/// on the Laurent current algebra.
pub fn deformation_differential(fam: &CurrentFamily) -> Result<AdjCochain2, CochainError> {
    let (c2, c4) = first_order_coefficients(&fam.spec)?;
    Ok(AdjCochain2::OddOdd(shifts(c2, c4)))
}

/// `omega(p, q) = (d1 eta)(p, q)` on all basis pairs of the window.
pub fn verify_coboundary(
    base: &CurrentFamily,
    omega: &AdjCochain2,
    eta: &LinMap1,
    window: i64,
) -> Report {
    let mut report = Report::new("coboundary");
    let basis = base.window_basis(window);
    for &p in &basis {
        for &q in &basis {
            let lhs = omega.eval_basis(base, p, q);
            let rhs = lie_d1_adjoint(base, eta, p, q);
            if !report.check(
                lhs == rhs,
                || format!("T{}.A[{}], T{}.A[{}]", p.0, p.1, q.0, q.1),
                || format!("omega = {lhs}, d1 eta = {rhs}"),
            ) {
                return report;
            }
        }
    }
    report
}

/// The two first-order cocycles of the line families are coboundaries:
/// `[x,y] A_{n+m-2}` and `[x,y] A_{n+m-4}` (odd `n`, `m`) come from
/// `eta(x A_n) = -1/2 x A_{n-2}` and `-1/2 x A_{n-4}`. The literal
/// `e`-coefficients carry the extra scalars 3 and -1.
pub fn coboundary_suite(window: i64) -> Report {
    let base = CurrentFamily::sl2(FamilySpec::laurent());
    let half = MultiPoly::constant(rat(-1, 2));
    let mut parts = Vec::new();
    for shift in [-2, -4] {
        let omega = AdjCochain2::odd_shift(shift, MultiPoly::one());
        let eta = LinMap1::odd_shift(shift, half.clone());
        let mut r = verify_coboundary(&base, &omega, &eta, window);
        r.name = format!("normalized shift {shift}");
        parts.push(r);
    }
    for (spec, scalar) in [(FamilySpec::line_s(), 3), (FamilySpec::line_infinity(), -1)] {
        let name = format!("{} first order", spec.kind_name());
        let fam = CurrentFamily::sl2(spec);
        let r = match deformation_differential(&fam) {
            Ok(omega) => {
                let shift = match &omega {
                    AdjCochain2::OddOdd(parts) if parts.len() == 1 => parts[0].0,
                    _ => 0,
                };
                let eta = LinMap1::odd_shift(shift, half.scale(&rat(scalar, 1)));
                verify_coboundary(&base, &omega, &eta, window)
                    .note(format!("{name}: normalization scalar {scalar}, shift {shift}"))
            }
            Err(e) => {
                let mut r = Report::new("");
                r.fail(name.clone(), format!("{e}"));
                r
            }
        };
        let mut r = r;
        r.name = name;
        parts.push(r);
    }
    Report::combine("coboundary", parts)
}

/// Symmetric bilinear map on a function algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HarrisonCochain2 {
    /// `(A_n, A_m) -> sum scalar A_{n+m+shift}` for `n`, `m` odd.
    OddOdd(Vec<(i64, MultiPoly)>),
    /// Explicit values on pairs `n <= m`; the rest by symmetry.
    Table(BTreeMap<(i64, i64), FnElement>),
}

impl HarrisonCochain2 {
    pub fn eval_basis(&self, n: i64, m: i64) -> FnElement {
        match self {
            HarrisonCochain2::OddOdd(parts) => {
                let mut out = FnElement::zero();
                if is_odd(n) && is_odd(m) {
                    for (shift, scalar) in parts {
                        out.add_term(n + m + shift, scalar.clone());
                    }
                }
                out
            }
            HarrisonCochain2::Table(t) => t
                .get(&(n.min(m), n.max(m)))
                .cloned()
                .unwrap_or_default(),
        }
    }

    pub fn eval(&self, f: &FnElement, g: &FnElement) -> FnElement {
        let mut out = FnElement::zero();
        for (n, x) in f.terms() {
            for (m, y) in g.terms() {
                out.add_scaled(&self.eval_basis(n, m), &(x * y));
            }
        }
        out
    }
}

/// Linear map on a function algebra, defined on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnLinMap {
    /// `A_n -> scalar A_{n+shift}` for odd `n`, zero for even `n`.
    OddShift { shift: i64, scalar: MultiPoly },
    Table(BTreeMap<i64, FnElement>),
}

impl FnLinMap {
    pub fn eval_basis(&self, n: i64) -> FnElement {
        match self {
            FnLinMap::OddShift { shift, scalar } if is_odd(n) => {
                FnElement::term(n + shift, scalar.clone())
            }
            FnLinMap::OddShift { .. } => FnElement::zero(),
            FnLinMap::Table(t) => t.get(&n).cloned().unwrap_or_default(),
        }
    }

    pub fn apply(&self, f: &FnElement) -> FnElement {
        let mut out = FnElement::zero();
        for (n, c) in f.terms() {
            out.add_scaled(&self.eval_basis(n), c);
        }
        out
    }
}

/// `(delta1 phi)(a, b) = a phi(b) - phi(ab) + phi(a) b`.
pub fn harrison_delta1(base: &FamilySpec, phi: &FnLinMap, a: &FnElement, b: &FnElement) -> FnElement {
    let mut out = multiply(base, a, &phi.apply(b));
    out.add_scaled(&phi.apply(&multiply(base, a, b)), &MultiPoly::from_int(-1));
    out.add_scaled(&multiply(base, &phi.apply(a), b), &MultiPoly::one());
    out
}

/// `(delta2 F)(a, b, c) = a F(b,c) - F(ab,c) + F(a,bc) - F(a,b) c`.
pub fn harrison_delta2(
    base: &FamilySpec,
    f: &HarrisonCochain2,
    a: &FnElement,
    b: &FnElement,
    c: &FnElement,
) -> FnElement {
    let minus = MultiPoly::from_int(-1);
    let mut out = multiply(base, a, &f.eval(b, c));
    out.add_scaled(&f.eval(&multiply(base, a, b), c), &minus);
    out.add_scaled(&f.eval(a, &multiply(base, b, c)), &MultiPoly::one());
    out.add_scaled(&multiply(base, &f.eval(a, b), c), &minus);
    out
}

/// Coefficient of `e` in the product of a one-parameter function family.
pub fn harrison_first_order_cochain(spec: &FamilySpec) -> Result<HarrisonCochain2, CochainError> {
    let (c2, c4) = first_order_coefficients(spec)?;
    Ok(HarrisonCochain2::OddOdd(shifts(c2, c4)))
}

/// `delta2 F = 0` on all triples and `F = scalar * delta1 phi` on all pairs of the window.
pub fn verify_harrison(
    base: &FamilySpec,
    f: &HarrisonCochain2,
    phi: &FnLinMap,
    scalar: &MultiPoly,
    window: i64,
) -> Report {
    let mut report = Report::new("harrison");
    let basis = |n| FnElement::basis(n);
    for n in -window..=window {
        for m in -window..=window {
            for k in -window..=window {
                let v = harrison_delta2(base, f, &basis(n), &basis(m), &basis(k));
                if !report.check(
                    v.is_zero(),
                    || format!("delta2 F (A[{n}], A[{m}], A[{k}])"),
                    || format!("{v}"),
                ) {
                    return report;
                }
            }
        }
    }
    for n in -window..=window {
        for m in -window..=window {
            let lhs = f.eval_basis(n, m);
            let rhs = harrison_delta1(base, phi, &basis(n), &basis(m)).scale(scalar);
            if !report.check(
                lhs == rhs,
                || format!("F (A[{n}], A[{m}])"),
                || format!("F = {lhs}, scaled delta1 phi = {rhs}"),
            ) {
                return report;
            }
        }
    }
    report
}

/// The first-order cochain of the line family is `3 delta1 phi` with
/// `phi(A_n) = 1/2 A_{n-2}` for odd `n`.
pub fn harrison_suite(window: i64) -> Report {
    let base = FamilySpec::laurent();
    let phi = FnLinMap::OddShift {
        shift: -2,
        scalar: MultiPoly::constant(rat(1, 2)),
    };
    match harrison_first_order_cochain(&FamilySpec::line_s()) {
        Ok(f) => verify_harrison(&base, &f, &phi, &MultiPoly::from_int(3), window)
            .note("line-s first order: normalization scalar 3, shift -2"),
        Err(e) => {
            let mut r = Report::new("harrison");
            r.fail(String::from("first-order cochain"), format!("{e}"));
            r
        }
    }
}

/// Scalar-valued two-cochain on basis symbols.
pub type ScalarCochain<'a> = dyn Fn(Basis, Basis) -> MultiPoly + 'a;

fn eval_scalar(psi: &ScalarCochain<'_>, u: &CurrentElement, v: &CurrentElement) -> MultiPoly {
    let mut s = MultiPoly::zero();
    for (p, x) in u.terms() {
        for (q, y) in v.terms() {
            let val = psi(p, q);
            if !val.is_zero() {
                s += &(&val * &(x * y));
            }
        }
    }
    s
}

/// `psi([x,y],z) + psi([y,z],x) + psi([z,x],y)` on basis symbols.
pub fn lie_d2_trivial(base: &CurrentFamily, psi: &ScalarCochain<'_>, p: Basis, q: Basis, r: Basis) -> MultiPoly {
    let el = |s: Basis| CurrentElement::basis(s.0, s.1);
    let br = |s: Basis, t: Basis| base.bracket_basis(s.0, s.1, t.0, t.1);
    eval_scalar(psi, &br(p, q), &el(r))
        + eval_scalar(psi, &br(q, r), &el(p))
        + eval_scalar(psi, &br(r, p), &el(q))
}
