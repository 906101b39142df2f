//! The extension cocycle `gamma(f, g) = res(f dg)` (taken at the in-point) and
//! the centrally extended current algebras it defines.
//!
//! Three independent routes compute `gamma(A_n, A_m)`:
//!
//! * [`gamma_closed_form`]: the case table in the odd-odd coefficients `(a, b)`;
//! * [`gamma_residue_oracle`]: `-res_{z=0}(A_n A_m')` from Laurent expansions;
//! * [`gamma_recursion`]: solve level by level for the unique antisymmetric,
//!   multiplicative cocycle vanishing below level 0 with `gamma(A_2, A_-2) = -2`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::current::{current_bracket, CurrentElement, CurrentFamily};
use crate::error::CentralError;
use crate::function_algebra::FamilySpec;
use crate::lie::{killing_form, verify_invariance, BilinearForm};
use crate::poly::{int, MultiPoly, Rational};
use crate::report::Report;
use crate::series::{residue_of_product, BasisSeriesCache, CurveParams};

/// A value `gamma(A_n, A_m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaValue {
    pub value: MultiPoly,
}

impl From<MultiPoly> for GammaValue {
    fn from(value: MultiPoly) -> GammaValue {
        GammaValue { value }
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn is_odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Cocycle of a family whose odd-odd product is
/// `A_n A_m = A_{n+m} + a A_{n+m-2} + b A_{n+m-4}`.
pub fn gamma_generic(a: &MultiPoly, b: &MultiPoly, n: i64, m: i64) -> MultiPoly {
    let mut v = MultiPoly::zero();
    if is_odd(n) != is_odd(m) {
        return v;
    }
    if m == -n {
        v = MultiPoly::from_int(-n);
    }
    if is_odd(n) {
        if m == -n + 2 {
            v = a.scale(&int(1 - n));
        } else if m == -n + 4 {
            v = b.scale(&int(2 - n));
        }
    }
    v
}

/// Closed-form cocycle of any family, read off its odd-odd coefficients.
pub fn gamma_for_spec(spec: &FamilySpec, n: i64, m: i64) -> MultiPoly {
    let (a, b) = spec.odd_coefficients();
    gamma_generic(a, b, n, m)
}

/// Closed form for the elliptic family with symbolic `e1`, `e2`.
pub fn gamma_closed_form(n: i64, m: i64) -> GammaValue {
    gamma_for_spec(&FamilySpec::elliptic(), n, m).into()
}

/// Singular fibres with their own closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularCase {
    /// Laurent polynomials.
    Classical,
    /// Three-point genus-zero algebra.
    ThreePoint,
    /// The subalgebra `W`.
    WFamily,
}

impl SingularCase {
    pub fn spec(self) -> FamilySpec {
        match self {
            SingularCase::Classical => FamilySpec::laurent(),
            SingularCase::ThreePoint => FamilySpec::three_point(),
            SingularCase::WFamily => FamilySpec::subalgebra_w(),
        }
    }
}

/// Cocycle of a singular fibre, symbolic in `alpha`.
pub fn gamma_singular(case: SingularCase, n: i64, m: i64) -> GammaValue {
    gamma_for_spec(&case.spec(), n, m).into()
}

/// Residue route with memoized basis expansions.
#[derive(Clone, Debug)]
pub struct ResidueOracle {
    cache: BasisSeriesCache,
}

impl ResidueOracle {
    pub fn new(curve: CurveParams, order: i64) -> ResidueOracle {
        ResidueOracle {
            cache: BasisSeriesCache::new(curve, order),
        }
    }

    /// Symbolic `e1`, `e2`.
    pub fn symbolic(order: i64) -> ResidueOracle {
        ResidueOracle::new(CurveParams::symbolic(), order)
    }

    /// `-res_{z=0}(A_n dA_m/dz)`.
    pub fn gamma(&mut self, n: i64, m: i64) -> Result<GammaValue, CentralError> {
        let (f, dg) = self.cache.with_derivative(n, m)?;
        Ok((-residue_of_product(f, dg)?).into())
    }
}

/// One residue evaluation with fresh expansions to `z^order`.
pub fn gamma_residue_oracle(n: i64, m: i64, order: i64) -> Result<GammaValue, CentralError> {
    ResidueOracle::symbolic(order).gamma(n, m)
}

/// Values produced by the level recursion, on canonical pairs `n < m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    inner_window: i64,
    values: BTreeMap<(i64, i64), MultiPoly>,
}

impl GammaTable {
    /// `gamma(A_n, A_m)` if the recursion determined it.
    pub fn get(&self, n: i64, m: i64) -> Option<MultiPoly> {
        if n + m < 0 || n == m {
            return Some(MultiPoly::zero());
        }
        if n < m {
            self.values.get(&(n, m)).cloned()
        } else {
            self.values.get(&(m, n)).map(|v| -v)
        }
    }

    pub fn inner_window(&self) -> i64 {
        self.inner_window
    }

    /// Number of determined canonical pairs.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Linear equation `sum coeffs[k] x_k = rhs` over the unknowns of one level.
#[derive(Clone, Debug)]
struct Row {
    coeffs: BTreeMap<usize, Rational>,
    rhs: MultiPoly,
}

impl Row {
    fn sub_scaled(&mut self, other: &Row, k: &Rational) {
        for (c, v) in &other.coeffs {
            let slot = self.coeffs.entry(*c).or_insert_with(Rational::zero);
            *slot -= k * v;
            if slot.is_zero() {
                self.coeffs.remove(c);
            }
        }
        self.rhs -= &other.rhs.scale(k);
    }
}

/// Incrementally maintained reduced row echelon form.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Row)>,
}

impl Echelon {
    /// Returns `Err(rhs)` when the row reduces to `0 = rhs != 0`.
    fn insert(&mut self, mut row: Row) -> Result<(), MultiPoly> {
        for (pivot, prow) in &self.rows {
            if let Some(k) = row.coeffs.get(pivot).cloned() {
                row.sub_scaled(prow, &k);
            }
        }
        let Some((&pivot, lead)) = row.coeffs.iter().next() else {
            return if row.rhs.is_zero() { Ok(()) } else { Err(row.rhs) };
        };
        let inv = Rational::one() / lead;
        for v in row.coeffs.values_mut() {
            *v *= &inv;
        }
        row.rhs = row.rhs.scale(&inv);
        for (_, prow) in &mut self.rows {
            if let Some(k) = prow.coeffs.get(&pivot).cloned() {
                prow.sub_scaled(&row, &k);
            }
        }
        self.rows.push((pivot, row));
        Ok(())
    }

    /// Unknowns fixed uniquely by the rows so far.
    fn determined(&self) -> impl Iterator<Item = (usize, &MultiPoly)> + '_ {
        self.rows
            .iter()
            .filter(|(_, r)| r.coeffs.len() == 1)
            .map(|(p, r)| (*p, &r.rhs))
    }
}

/// Solve for the cocycle of `spec` on pairs with `|n|, |m| <= inner_window`,
/// level by level from 0 up to `max_level`.
///
/// Inputs: vanishing below level 0, antisymmetry, the normalization
/// `gamma(A_2, A_-2) = -2`, and `gamma(fg, h) + gamma(gh, f) + gamma(hf, g) = 0`
/// for basis triples, with products expanded in `spec`. Relations touching
/// pairs outside the inner window or undetermined lower values are skipped.
pub fn solve_gamma_recursion(
    spec: &FamilySpec,
    inner_window: i64,
    max_level: i64,
) -> Result<GammaTable, CentralError> {
    let w = inner_window;
    let mut table = GammaTable {
        inner_window: w,
        values: BTreeMap::new(),
    };
    for level in 0..=max_level.min(2 * w - 1) {
        // unknowns gamma(n, level - n) with n < level - n
        let lo = (level - w).max(-w);
        let hi = (level + 1) / 2 - 1;
        if lo > hi {
            continue;
        }
        let index = |n: i64| (n - lo) as usize;
        let mut system = Echelon::default();
        let mut push = |row: Row, what: String| {
            system.insert(row).map_err(|rhs| CentralError::RecursionInconsistent {
                level,
                detail: format!("{what} reduces to 0 = {rhs}"),
            })
        };
        if level == 0 && w >= 2 {
            let mut coeffs = BTreeMap::new();
            coeffs.insert(index(-2), Rational::one());
            push(
                Row {
                    coeffs,
                    rhs: MultiPoly::from_int(2),
                },
                String::from("normalization"),
            )?;
        }
        for p in -w..=w {
            for q in p..=w {
                let r = level - p - q;
                if r < q || r > w {
                    continue;
                }
                if let Some(row) = relation_row(spec, &table, level, w, lo, [p, q, r]) {
                    push(row, format!("relation ({p}, {q}, {r})"))?;
                }
            }
        }
        let solved: Vec<(usize, MultiPoly)> =
            system.determined().map(|(k, v)| (k, v.clone())).collect();
        for (k, v) in solved {
            let n = lo + k as i64;
            table.values.insert((n, level - n), v);
        }
    }
    Ok(table)
}

/// Row for `gamma(A_p A_q, A_r) + gamma(A_q A_r, A_p) + gamma(A_r A_p, A_q) = 0`.
fn relation_row(
    spec: &FamilySpec,
    known: &GammaTable,
    level: i64,
    w: i64,
    lo: i64,
    [p, q, r]: [i64; 3],
) -> Option<Row> {
    let mut row = Row {
        coeffs: BTreeMap::new(),
        rhs: MultiPoly::zero(),
    };
    for (f, g, h) in [(p, q, r), (q, r, p), (r, p, q)] {
        for (k, c) in spec.basis_product(f, g).terms() {
            let l = k + h;
            if l > level {
                return None;
            }
            if l < level {
                let v = known.get(k, h).filter(|_| l < 0 || (k.abs() <= w && h.abs() <= w))?;
                row.rhs -= &(c * &v);
                continue;
            }
            if k == h {
                continue;
            }
            if k.abs() > w || h.abs() > w {
                return None;
            }
            let c = c.constant_value()?;
            let (col, c) = if k < h { (k, c) } else { (h, -c) };
            let slot = row.coeffs.entry((col - lo) as usize).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                row.coeffs.remove(&((col - lo) as usize));
            }
        }
    }
    Some(row)
}

/// Default inner window for a target window `n`.
pub fn default_inner_window(n: i64) -> i64 {
    2 * n + 4
}

/// Recursion route for `spec` on `[-window, window]^2`.
pub fn gamma_recursion_for(
    spec: &FamilySpec,
    window: i64,
) -> Result<BTreeMap<(i64, i64), GammaValue>, CentralError> {
    let table = solve_gamma_recursion(spec, default_inner_window(window), 2 * window)?;
    let mut out = BTreeMap::new();
    for n in -window..=window {
        for m in -window..=window {
            let v = table.get(n, m).ok_or(CentralError::WindowTooNarrow { n, m })?;
            out.insert((n, m), v.into());
        }
    }
    Ok(out)
}

/// Recursion route for generic odd-odd coefficients `(a, b)`.
pub fn gamma_recursion(
    a: &MultiPoly,
    b: &MultiPoly,
    window: i64,
) -> Result<BTreeMap<(i64, i64), GammaValue>, CentralError> {
    gamma_recursion_for(&FamilySpec::generic(a.clone(), b.clone()), window)
}

/// Element of the central extension: a current plus a multiple of `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendedElement {
    pub current: CurrentElement,
    pub central: MultiPoly,
}

impl ExtendedElement {
    pub fn basis(a: usize, n: i64) -> ExtendedElement {
        ExtendedElement {
            current: CurrentElement::basis(a, n),
            central: MultiPoly::zero(),
        }
    }

    /// The central element `t`.
    pub fn central_unit() -> ExtendedElement {
        ExtendedElement {
            current: CurrentElement::zero(),
            central: MultiPoly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.current.is_zero() && self.central.is_zero()
    }

    pub fn add(&self, other: &ExtendedElement) -> ExtendedElement {
        ExtendedElement {
            current: self.current.add(&other.current),
            central: &self.central + &other.central,
        }
    }
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*t", self.current, self.central)
    }
}

/// Central extension of a current family by `p * beta(x, y) * gamma(f, g)`.
#[derive(Clone, Debug)]
pub struct AffineExtension {
    pub family: CurrentFamily,
    pub form: BilinearForm,
    pub p: MultiPoly,
}

impl AffineExtension {
    /// The form must be symmetric and invariant for the Lie algebra.
    pub fn new(family: CurrentFamily, form: BilinearForm, p: MultiPoly) -> Result<AffineExtension, CentralError> {
        let report = verify_invariance(&family.lie, &form);
        if let Some(w) = report.failure {
            return Err(CentralError::NonInvariantForm(format!("{}: {}", w.case, w.detail)));
        }
        Ok(AffineExtension { family, form, p })
    }

    /// Killing form of the family's Lie algebra and scaling `p`.
    pub fn with_killing_form(family: CurrentFamily, p: MultiPoly) -> AffineExtension {
        let form = killing_form(&family.lie);
        AffineExtension { family, form, p }
    }

    /// Central value `p beta(T_a, T_b) gamma(A_n, A_m)` of a basis pair.
    pub fn cocycle(&self, (a, n): (usize, i64), (b, m): (usize, i64)) -> MultiPoly {
        let beta = self.form.get(a, b);
        if beta.is_zero() {
            return MultiPoly::zero();
        }
        let g = gamma_for_spec(&self.family.spec, n, m);
        if g.is_zero() {
            return g;
        }
        (&self.p * &g).scale(beta)
    }
}

/// `[x^ f, y^ g] = [x,y]^ fg + p beta(x,y) gamma(f,g) t`; `t` is central.
pub fn extended_bracket(ext: &AffineExtension, u: &ExtendedElement, v: &ExtendedElement) -> ExtendedElement {
    let current = current_bracket(&ext.family, &u.current, &v.current);
    let mut central = MultiPoly::zero();
    for (p, x) in u.current.terms() {
        for (q, y) in v.current.terms() {
            let c = ext.cocycle(p, q);
            if !c.is_zero() {
                central += &(&c * &(x * y));
            }
        }
    }
    ExtendedElement { current, central }
}

/// Levels `n + m` at which `gamma` is non-zero on the window.
pub fn gamma_support_levels(gamma: &dyn Fn(i64, i64) -> MultiPoly, window: i64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for n in -window..=window {
        for m in -window..=window {
            if !gamma(n, m).is_zero() {
                out.insert(n + m);
            }
        }
    }
    out
}

/// Antisymmetry, locality (support within `allowed_levels`), multiplicativity
/// against the products of `ext.family.spec`, and Jacobi of the extended
/// bracket on increasing basis triples, for the cocycle `gamma`.
pub fn verify_gamma_properties_with(
    ext: &AffineExtension,
    gamma: &dyn Fn(i64, i64) -> MultiPoly,
    allowed_levels: &[i64],
    window: i64,
) -> Report {
    let spec = &ext.family.spec;
    let mut anti = Report::new("antisymmetry");
    let mut local = Report::new("locality");
    'pairs: for n in -window..=window {
        for m in -window..=window {
            let g = gamma(n, m);
            let s = &g + &gamma(m, n);
            let ok_anti = anti.check(
                s.is_zero(),
                || format!("gamma({n},{m})"),
                || format!("gamma(n,m) + gamma(m,n) = {s}"),
            );
            let ok_local = local.check(
                g.is_zero() || allowed_levels.contains(&(n + m)),
                || format!("gamma({n},{m})"),
                || format!("non-zero at level {}: {g}", n + m),
            );
            if !(ok_anti && ok_local) {
                break 'pairs;
            }
        }
    }
    let levels = gamma_support_levels(gamma, window);
    let local = local.note(format!("non-zero levels {:?}", levels.iter().collect::<Vec<_>>()));

    let mut mult = Report::new("multiplicativity");
    let gamma_el = |f: i64, g: i64, h: i64| -> MultiPoly {
        spec.basis_product(f, g)
            .terms()
            .map(|(k, c)| c * &gamma(k, h))
            .sum()
    };
    'triples: for p in -window..=window {
        for q in -window..=window {
            for r in -window..=window {
                let s = gamma_el(p, q, r) + gamma_el(q, r, p) + gamma_el(r, p, q);
                if !mult.check(
                    s.is_zero(),
                    || format!("A[{p}], A[{q}], A[{r}]"),
                    || format!("cyclic sum = {s}"),
                ) {
                    break 'triples;
                }
            }
        }
    }

    let mut jacobi = Report::new("extended jacobi");
    let basis = ext.family.window_basis(window);
    let psi = |p: (usize, i64), q: (usize, i64)| -> MultiPoly {
        let beta = ext.form.get(p.0, q.0);
        if beta.is_zero() {
            return MultiPoly::zero();
        }
        (&ext.p * &gamma(p.1, q.1)).scale(beta)
    };
    'jac: for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate().skip(i + 1) {
            for &z in &basis[j + 1..] {
                let s = crate::cocycle::lie_d2_trivial(&ext.family, &psi, x, y, z);
                if !jacobi.check(
                    s.is_zero(),
                    || format!("T{}.A[{}], T{}.A[{}], T{}.A[{}]", x.0, x.1, y.0, y.1, z.0, z.1),
                    || format!("central part of the Jacobi sum = {s}"),
                ) {
                    break 'jac;
                }
            }
        }
    }
    Report::combine("gamma-properties", [anti, local, mult, jacobi])
}

/// Property suite for the elliptic family, `sl2` with its Killing form,
/// the closed-form cocycle and scaling `p`.
pub fn verify_gamma_properties(window: i64, p: &MultiPoly) -> Report {
    let ext = AffineExtension::with_killing_form(CurrentFamily::sl2(FamilySpec::elliptic()), p.clone());
    let gamma = |n: i64, m: i64| gamma_closed_form(n, m).value;
    verify_gamma_properties_with(&ext, &gamma, &[0, 2, 4], window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sl2_standard;
    use crate::poly::ParamId;

    fn q(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    const H: usize = 0;
    const E: usize = 1;
    const F: usize = 2;

    #[test]
    fn closed_form_values() {
        assert_eq!(gamma_closed_form(2, -2).value, MultiPoly::from_int(-2));
        assert!(gamma_closed_form(1, 1).value.is_zero());
        assert_eq!(gamma_closed_form(3, 1).value, q("-(e1-e2)*(2*e1+e2)"));
        assert_eq!(gamma_closed_form(3, -1).value, q("-6*e1"));
        assert!(gamma_closed_form(2, 1).value.is_zero());
    }

    #[test]
    fn residue_values() {
        let mut oracle = ResidueOracle::symbolic(16);
        assert_eq!(oracle.gamma(2, -2).unwrap().value, MultiPoly::from_int(-2));
        assert_eq!(oracle.gamma(4, -4).unwrap().value, MultiPoly::from_int(-4));
        assert_eq!(oracle.gamma(3, -1).unwrap().value, q("-6*e1"));
        assert!(oracle.gamma(5, -9).unwrap().value.is_zero());
        assert_eq!(oracle.gamma(1, 3).unwrap(), gamma_closed_form(1, 3));
    }

    #[test]
    fn recursion_small_window() {
        let spec = FamilySpec::elliptic();
        let table = gamma_recursion_for(&spec, 4).unwrap();
        for ((n, m), v) in &table {
            assert_eq!(*v, gamma_closed_form(*n, *m), "({n},{m})");
        }
        assert!(table[&(2, 1)].value.is_zero());
    }

    #[test]
    fn recursion_detects_corrupted_products() {
        let spec = FamilySpec::elliptic();
        let mut bad = spec.basis_product(1, 1);
        bad.add_term(-2, q("e1^2"));
        let spec = spec.with_override(1, 1, bad);
        let out = gamma_recursion_for(&spec, 3);
        assert!(matches!(out, Err(CentralError::RecursionInconsistent { .. })), "{out:?}");
    }

    #[test]
    fn singular_cases() {
        assert_eq!(gamma_singular(SingularCase::Classical, 4, -4).value, MultiPoly::from_int(-4));
        assert_eq!(gamma_singular(SingularCase::ThreePoint, 3, -1).value, q("-2*alpha^2"));
        assert_eq!(gamma_singular(SingularCase::WFamily, 3, 1).value, q("-alpha^4"));
    }

    #[test]
    fn extended_bracket_examples() {
        let ext = AffineExtension::with_killing_form(
            CurrentFamily::sl2(FamilySpec::elliptic()),
            MultiPoly::one(),
        );
        for n in [-4i64, 0, 2, 6] {
            let v = extended_bracket(&ext, &ExtendedElement::basis(E, n), &ExtendedElement::basis(F, -n));
            assert_eq!(v.current, CurrentElement::basis(H, 0));
            assert_eq!(v.central, MultiPoly::from_int(-4 * n));
        }
        let t = ExtendedElement::central_unit();
        assert!(extended_bracket(&ext, &t, &ExtendedElement::basis(E, 3)).is_zero());
        let v = extended_bracket(&ext, &ExtendedElement::basis(E, 2), &ExtendedElement::basis(F, 3));
        assert!(v.central.is_zero());
    }

    #[test]
    fn non_invariant_form_rejected() {
        let mut form = killing_form(&sl2_standard());
        form.set(0, 0, int(1));
        let r = AffineExtension::new(CurrentFamily::sl2(FamilySpec::elliptic()), form, MultiPoly::one());
        assert!(matches!(r, Err(CentralError::NonInvariantForm(_))));
    }

    #[test]
    fn properties_small_window() {
        let r = verify_gamma_properties(2, &MultiPoly::param(ParamId::T));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn laurent_support_is_level_zero() {
        let spec = FamilySpec::laurent();
        let g = |n: i64, m: i64| gamma_for_spec(&spec, n, m);
        let levels = gamma_support_levels(&g, 5);
        assert_eq!(levels.into_iter().collect::<Vec<_>>(), alloc::vec![0]);
    }
}
