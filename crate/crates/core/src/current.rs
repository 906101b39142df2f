//! Current algebras `g (x) A` with bracket `[x A_n, y A_m] = [x,y] (A_n A_m)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::function_algebra::{specialize_family, FamilySpec, FnElement};
use crate::lie::{sl2_standard, FiniteLieAlgebra};
use crate::poly::{int, rat, Bindings, MultiPoly, ParamId};
use crate::report::Report;

/// Finite combination of `T_a (x) A_n`, keyed by `(a, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurrentElement {
    terms: BTreeMap<(usize, i64), MultiPoly>,
}

impl CurrentElement {
    pub fn zero() -> CurrentElement {
        CurrentElement::default()
    }

    pub fn basis(a: usize, n: i64) -> CurrentElement {
        CurrentElement::term(a, n, MultiPoly::one())
    }

    pub fn term(a: usize, n: i64, c: MultiPoly) -> CurrentElement {
        let mut u = CurrentElement::zero();
        u.add_term(a, n, c);
        u
    }

    /// `x (x) f` for a Lie basis index `x`.
    pub fn tensor(a: usize, f: &FnElement) -> CurrentElement {
        let mut u = CurrentElement::zero();
        for (n, c) in f.terms() {
            u.add_term(a, n, c.clone());
        }
        u
    }

    pub fn add_term(&mut self, a: usize, n: i64, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, n)).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(a, n));
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &CurrentElement, c: &MultiPoly) {
        for (&(a, n), x) in &other.terms {
            self.add_term(a, n, x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: usize, n: i64) -> MultiPoly {
        self.terms.get(&(a, n)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, i64), &MultiPoly)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn scale(&self, c: &MultiPoly) -> CurrentElement {
        let mut out = CurrentElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &CurrentElement) -> CurrentElement {
        let mut out = self.clone();
        out.add_scaled(other, &MultiPoly::one());
        out
    }

    pub fn sub(&self, other: &CurrentElement) -> CurrentElement {
        let mut out = self.clone();
        out.add_scaled(other, &MultiPoly::from_int(-1));
        out
    }

    pub fn neg(&self) -> CurrentElement {
        self.scale(&MultiPoly::from_int(-1))
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> Option<MultiPoly>) -> Option<CurrentElement> {
        let mut out = CurrentElement::zero();
        for (&(a, n), c) in &self.terms {
            out.add_term(a, n, f(c)?);
        }
        Some(out)
    }

    /// Smallest and largest degree present.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|k| k.1);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), n| (lo.min(n), hi.max(n))))
    }
}

impl fmt::Display for CurrentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, n), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "T{a}.A[{n}]")?;
            } else {
                write!(f, "({c})*T{a}.A[{n}]")?;
            }
        }
        Ok(())
    }
}

/// A finite-dimensional Lie algebra tensored with a function-algebra family.
#[derive(Clone, Debug)]
pub struct CurrentFamily {
    pub lie: FiniteLieAlgebra,
    pub spec: FamilySpec,
}

impl CurrentFamily {
    pub fn new(lie: FiniteLieAlgebra, spec: FamilySpec) -> CurrentFamily {
        CurrentFamily { lie, spec }
    }

    pub fn sl2(spec: FamilySpec) -> CurrentFamily {
        CurrentFamily::new(sl2_standard(), spec)
    }

    /// `[T_a (x) A_n, T_b (x) A_m]`.
    pub fn bracket_basis(&self, a: usize, n: i64, b: usize, m: i64) -> CurrentElement {
        let mut out = CurrentElement::zero();
        let prod = self.spec.basis_product(n, m);
        for (c, k) in self.lie.bracket_basis(a, b) {
            let k = MultiPoly::constant(k.clone());
            for (j, p) in prod.terms() {
                out.add_term(c, j, p * &k);
            }
        }
        out
    }

    /// All basis symbols `(a, n)` with `|n| <= window`.
    pub fn window_basis(&self, window: i64) -> Vec<(usize, i64)> {
        (-window..=window)
            .flat_map(|n| (0..self.lie.dim()).map(move |a| (a, n)))
            .collect()
    }
}

/// Bilinear extension of the basis bracket.
pub fn current_bracket(fam: &CurrentFamily, u: &CurrentElement, v: &CurrentElement) -> CurrentElement {
    let mut out = CurrentElement::zero();
    for ((a, n), x) in u.terms() {
        for ((b, m), y) in v.terms() {
            out.add_scaled(&fam.bracket_basis(a, n, b, m), &(x * y));
        }
    }
    out
}

/// Antisymmetry and Jacobi on all basis triples with degrees in `[-window, window]`.
pub fn verify_jacobi(fam: &CurrentFamily, window: i64) -> Report {
    let mut report = Report::new(format!("jacobi[{}]", fam.spec.kind_name()));
    let basis = fam.window_basis(window);
    for &(a, n) in &basis {
        for &(b, m) in &basis {
            let s = fam.bracket_basis(a, n, b, m).add(&fam.bracket_basis(b, m, a, n));
            if !report.check(
                s.is_zero(),
                || format!("antisymmetry T{a}.A[{n}], T{b}.A[{m}]"),
                || format!("[x,y] + [y,x] = {s}"),
            ) {
                return report;
            }
        }
    }
    // with antisymmetry established the Jacobi sum is alternating, so
    // increasing triples suffice
    for (i, &(a, n)) in basis.iter().enumerate() {
        let x = CurrentElement::basis(a, n);
        for (j, &(b, m)) in basis.iter().enumerate().skip(i + 1) {
            let y = CurrentElement::basis(b, m);
            let xy = fam.bracket_basis(a, n, b, m);
            for &(c, k) in &basis[j + 1..] {
                let z = CurrentElement::basis(c, k);
                let yz = fam.bracket_basis(b, m, c, k);
                let zx = fam.bracket_basis(c, k, a, n);
                let mut s = current_bracket(fam, &xy, &z);
                s.add_scaled(&current_bracket(fam, &yz, &x), &MultiPoly::one());
                s.add_scaled(&current_bracket(fam, &zx, &y), &MultiPoly::one());
                if !report.check(
                    s.is_zero(),
                    || format!("jacobi T{a}.A[{n}], T{b}.A[{m}], T{c}.A[{k}]"),
                    || format!("cyclic sum = {s}"),
                ) {
                    return report;
                }
            }
        }
    }
    report
}

/// Compare the brackets of two families on the window after mapping the
/// coefficients of `source` through `map`.
fn identification(
    name: &str,
    target: &FamilySpec,
    source: &FamilySpec,
    map: impl Fn(&MultiPoly) -> Option<MultiPoly>,
    window: i64,
) -> Report {
    let t = CurrentFamily::sl2(target.clone());
    let s = CurrentFamily::sl2(source.clone());
    let basis = t.window_basis(window);
    let mut report = Report::new(name);
    for &(a, n) in &basis {
        for &(b, m) in &basis {
            let lhs = t.bracket_basis(a, n, b, m);
            let rhs = s.bracket_basis(a, n, b, m).map_coeffs(&map);
            let ok = rhs.as_ref() == Some(&lhs);
            if !report.check(
                ok,
                || format!("T{a}.A[{n}], T{b}.A[{m}]"),
                || match &rhs {
                    Some(r) => format!("{lhs}  vs  {r}"),
                    None => format!("substitution undefined for {lhs}"),
                },
            ) {
                return report;
            }
        }
    }
    report
}

/// The singular fibres as genus-zero algebras:
/// lines `s = 1` and `s = -2` against the three-point family with
/// `alpha^2 = 3e`, line `s = -1/2` against `W` with `alpha^2 = -3e/2`, and the
/// origin against the Laurent algebra.
pub fn degeneration_identifications(window: i64) -> Report {
    let e = MultiPoly::param(ParamId::E);
    let three = e.scale(&int(3));
    let minus_three_halves = e.scale(&rat(-3, 2));
    let to_three_point = |c: &MultiPoly| c.substitute_square(ParamId::Alpha, &three);
    let to_w = |c: &MultiPoly| c.substitute_square(ParamId::Alpha, &minus_three_halves);
    let line = |s: MultiPoly| FamilySpec::line_s_with(s, e.clone());

    let mut origin = Bindings::new();
    origin.insert(ParamId::E1, MultiPoly::zero());
    origin.insert(ParamId::E2, MultiPoly::zero());
    let elliptic_origin =
        specialize_family(&FamilySpec::elliptic(), &origin).expect("e1, e2 are elliptic parameters");

    let parts = [
        identification(
            "s=1 ~ three-point",
            &line(MultiPoly::one()),
            &FamilySpec::three_point(),
            to_three_point,
            window,
        ),
        identification(
            "s=-2 ~ three-point",
            &line(MultiPoly::from_int(-2)),
            &FamilySpec::three_point(),
            to_three_point,
            window,
        ),
        identification(
            "s=-1/2 ~ W",
            &line(MultiPoly::constant(rat(-1, 2))),
            &FamilySpec::subalgebra_w(),
            to_w,
            window,
        ),
        identification(
            "(0,0) ~ laurent",
            &elliptic_origin,
            &FamilySpec::laurent(),
            |c| Some(c.clone()),
            window,
        ),
    ];
    Report::combine("degeneration", parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: usize = 0;
    const E: usize = 1;
    const F: usize = 2;

    fn q(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn line_family_bracket() {
        let fam = CurrentFamily::sl2(FamilySpec::line_s());
        let got = current_bracket(&fam, &CurrentElement::basis(E, 1), &CurrentElement::basis(F, 1));
        let mut want = CurrentElement::basis(H, 2);
        want.add_term(H, 0, q("3*e"));
        want.add_term(H, -2, q("e^2*(1-s)*(2+s)"));
        assert_eq!(got, want);
    }

    #[test]
    fn unit_brackets_and_self_brackets() {
        for spec in FamilySpec::all_symbolic() {
            let fam = CurrentFamily::sl2(spec);
            let got = current_bracket(&fam, &CurrentElement::basis(H, 0), &CurrentElement::basis(E, 7));
            assert_eq!(got, CurrentElement::term(E, 7, MultiPoly::from_int(2)));
            for a in 0..3 {
                assert!(fam.bracket_basis(a, 3, a, 5).is_zero());
            }
        }
    }

    #[test]
    fn jacobi_small_window() {
        for spec in FamilySpec::all_symbolic() {
            let r = verify_jacobi(&CurrentFamily::sl2(spec), 2);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn jacobi_detects_corrupted_entry() {
        let spec = FamilySpec::three_point();
        let mut bad = spec.basis_product(1, 1);
        bad.add_term(0, q("alpha^2"));
        let r = verify_jacobi(&CurrentFamily::sl2(spec.with_override(1, 1, bad)), 3);
        assert!(!r.passed());
    }

    #[test]
    fn almost_graded_band() {
        let fam = CurrentFamily::sl2(FamilySpec::elliptic());
        for n in -5..=5 {
            for m in -5..=5 {
                if let Some((lo, hi)) = fam.bracket_basis(E, n, F, m).degree_range() {
                    assert!(lo >= n + m - 4 && hi <= n + m);
                }
            }
        }
    }

    #[test]
    fn degenerations() {
        let r = degeneration_identifications(3);
        assert!(r.passed(), "{r}");
    }
}
