use std::collections::BTreeMap;

use proptest::prelude::*;

use kn_core::central::{gamma_generic, gamma_recursion, ResidueOracle};
use kn_core::cocycle::{lie_d2_adjoint, AdjCochain2, LinMap1};
use kn_core::current::{current_bracket, CurrentElement, CurrentFamily};
use kn_core::function_algebra::{
    multiply, specialize_family, verify_associativity, FamilySpec, FnElement,
};
use kn_core::lie::{
    killing_form, sl2_standard, verify_invariance, verify_lie_axioms, FiniteLieAlgebra,
    StructureTable,
};
use kn_core::{int, rat, Bindings, LaurentSeries, MultiPoly, ParamId, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn small_poly(params: &'static [ParamId]) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((small_rational(), 0..params.len(), 0u32..=2), 0..4).prop_map(
        move |terms| {
            terms
                .into_iter()
                .map(|(c, p, e)| MultiPoly::monomial(c, params[p], e))
                .sum()
        },
    )
}

fn fn_element(lo: i64, hi: i64) -> impl Strategy<Value = FnElement> {
    prop::collection::vec((lo..=hi, -3i64..=3), 1..4)
        .prop_map(|terms| FnElement::from_terms(terms.into_iter().map(|(n, c)| (n, MultiPoly::from_int(c)))))
}

fn symbolic_family() -> impl Strategy<Value = FamilySpec> {
    (0..FamilySpec::all_symbolic().len()).prop_map(|i| FamilySpec::all_symbolic()[i].clone())
}

fn bindings_for(spec: &FamilySpec, values: &[Rational]) -> Bindings {
    spec.params()
        .into_iter()
        .zip(values.iter().cycle())
        .map(|(p, v)| (p, MultiPoly::constant(v.clone())))
        .collect()
}

fn lie_from(dim: usize, entries: &[(usize, usize, usize, i64)]) -> FiniteLieAlgebra {
    let mut t = StructureTable::zeros(dim).unwrap();
    for &(a, b, c, v) in entries {
        t.set(a, b, c, int(v)).unwrap();
        t.set(b, a, c, int(-v)).unwrap();
    }
    FiniteLieAlgebra::new(t).unwrap()
}

fn so3() -> FiniteLieAlgebra {
    lie_from(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)])
}

fn heisenberg() -> FiniteLieAlgebra {
    lie_from(3, &[(0, 1, 2, 1)])
}

fn affine_line() -> FiniteLieAlgebra {
    lie_from(2, &[(0, 1, 1, 1)])
}

fn direct_sum(x: &FiniteLieAlgebra, y: &FiniteLieAlgebra) -> FiniteLieAlgebra {
    let (dx, dy) = (x.dim(), y.dim());
    let mut t = StructureTable::zeros(dx + dy).unwrap();
    for (lie, off) in [(x, 0), (y, dx)] {
        for a in 0..lie.dim() {
            for b in 0..lie.dim() {
                for c in 0..lie.dim() {
                    t.set(a + off, b + off, c + off, lie.structure_constant(a, b, c).clone()).unwrap();
                }
            }
        }
    }
    FiniteLieAlgebra::new(t).unwrap()
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != int(0))?;
        a.swap(col, piv);
        let inv = int(1) / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != int(0) {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let d = &f * &a[col][k];
                    a[r][k] = &a[r][k] - &d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Structure constants of `lie` in the basis whose `i`-th vector is column `i` of `p`.
fn change_basis(lie: &FiniteLieAlgebra, p: &[Vec<Rational>]) -> Option<FiniteLieAlgebra> {
    let n = lie.dim();
    let q = invert(p)?;
    let mut t = StructureTable::zeros(n).unwrap();
    for i in 0..n {
        for k in 0..n {
            let mut v = vec![int(0); n];
            for j in 0..n {
                for l in 0..n {
                    let w = &p[j][i] * &p[l][k];
                    if w == int(0) {
                        continue;
                    }
                    for (c, s) in lie.bracket_basis(j, l) {
                        v[c] = &v[c] + &(&w * s);
                    }
                }
            }
            for c in 0..n {
                let coord: Rational = (0..n).map(|d| &q[c][d] * &v[d]).sum();
                t.set(i, k, c, coord).unwrap();
            }
        }
    }
    FiniteLieAlgebra::new(t).ok()
}

/// Series known through `z^11` at least, so residues of products are determined.
fn series(low: i64, mut coeffs: Vec<i64>) -> LaurentSeries {
    coeffs.resize(coeffs.len().max((12 - low) as usize), 0);
    LaurentSeries::new(low, coeffs.into_iter().map(MultiPoly::from_int).collect())
}

const E_PARAMS: &[ParamId] = &[ParamId::E1, ParamId::E2];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn specialization_commutes_with_multiplication(
        spec in symbolic_family(),
        values in prop::collection::vec(small_rational(), 3),
        f in fn_element(-4, 4),
        g in fn_element(-4, 4),
    ) {
        let bindings = bindings_for(&spec, &values);
        let special = specialize_family(&spec, &bindings).unwrap();
        let lhs = multiply(&spec, &f, &g).substitute(&bindings);
        let rhs = multiply(&special, &f, &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_odd_rule_is_associative_for_any_coefficients(
        a in small_poly(E_PARAMS),
        b in small_poly(E_PARAMS),
    ) {
        let r = verify_associativity(&FamilySpec::generic(a, b), 3);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn multiplication_is_commutative_and_bilinear(
        spec in symbolic_family(),
        f in fn_element(-4, 4),
        g in fn_element(-4, 4),
        h in fn_element(-4, 4),
    ) {
        prop_assert_eq!(multiply(&spec, &f, &g), multiply(&spec, &g, &f));
        prop_assert_eq!(
            multiply(&spec, &f, &g.add(&h)),
            multiply(&spec, &f, &g).add(&multiply(&spec, &f, &h))
        );
    }

    #[test]
    fn coboundary_of_coboundary_vanishes(
        spec in symbolic_family(),
        images in prop::collection::vec(
            ((0usize..3, -2i64..=2), (0usize..3, -3i64..=3, -2i64..=2)),
            1..5,
        ),
        p in (0usize..3, -2i64..=2),
        q in (0usize..3, -2i64..=2),
        r in (0usize..3, -2i64..=2),
    ) {
        let base = CurrentFamily::sl2(spec);
        let mut table: BTreeMap<(usize, i64), CurrentElement> = BTreeMap::new();
        for (src, (a, n, c)) in images {
            let slot = table.entry(src).or_default();
            *slot = slot.add(&CurrentElement::term(a, n, MultiPoly::from_int(c)));
        }
        let omega = AdjCochain2::Coboundary(LinMap1::Table(table));
        let d2 = lie_d2_adjoint(&base, &omega, p, q, r);
        prop_assert!(d2.is_zero(), "d2 d1 eta = {}", d2);
    }

    #[test]
    fn current_bracket_is_antisymmetric(
        spec in symbolic_family(),
        x in prop::collection::vec((0usize..3, -3i64..=3, -2i64..=2), 1..4),
        y in prop::collection::vec((0usize..3, -3i64..=3, -2i64..=2), 1..4),
    ) {
        let fam = CurrentFamily::sl2(spec);
        let build = |v: &[(usize, i64, i64)]| {
            v.iter().fold(CurrentElement::zero(), |acc, &(a, n, c)| {
                acc.add(&CurrentElement::term(a, n, MultiPoly::from_int(c)))
            })
        };
        let (x, y) = (build(&x), build(&y));
        prop_assert_eq!(current_bracket(&fam, &x, &y), current_bracket(&fam, &y, &x).neg());
    }

    #[test]
    fn killing_form_invariant_after_basis_change(
        which in 0usize..5,
        entries in prop::collection::vec(-2i64..=2, 49),
    ) {
        let lie = match which {
            0 => sl2_standard(),
            1 => so3(),
            2 => heisenberg(),
            3 => direct_sum(&affine_line(), &sl2_standard()),
            _ => direct_sum(&so3(), &heisenberg()),
        };
        let n = lie.dim();
        let mut p: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| int(entries[i * n + j])).collect())
            .collect();
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = &row[i] + &int(5);
        }
        let Some(changed) = change_basis(&lie, &p) else {
            return Ok(());
        };
        let axioms = verify_lie_axioms(changed.table());
        prop_assert!(axioms.passed(), "{}", axioms);
        let kappa = killing_form(&changed);
        prop_assert!(kappa.is_symmetric());
        let inv = verify_invariance(&changed, &kappa);
        prop_assert!(inv.passed(), "{}", inv);
        // degeneracy of the Killing form does not depend on the basis
        let before = killing_form(&lie).determinant() == int(0);
        prop_assert_eq!(kappa.determinant() == int(0), before);
    }

    #[test]
    fn derivative_has_no_residue(
        low in -6i64..=2,
        coeffs in prop::collection::vec(-5i64..=5, 1..10),
    ) {
        let s = series(low, coeffs);
        prop_assert!(s.derivative().residue().unwrap().is_zero());
    }

    #[test]
    fn residue_pairing_is_antisymmetric(
        low_f in -5i64..=1,
        f in prop::collection::vec(-4i64..=4, 1..8),
        low_g in -5i64..=1,
        g in prop::collection::vec(-4i64..=4, 1..8),
    ) {
        let (f, g) = (series(low_f, f), series(low_g, g));
        let fg = f.mul(&g.derivative()).residue().unwrap();
        let gf = g.mul(&f.derivative()).residue().unwrap();
        prop_assert_eq!(fg, -gf);
    }

    #[test]
    fn gamma_closed_form_is_antisymmetric(
        a in small_poly(E_PARAMS),
        b in small_poly(E_PARAMS),
        n in -12i64..=12,
        m in -12i64..=12,
    ) {
        prop_assert_eq!(gamma_generic(&a, &b, n, m), -gamma_generic(&a, &b, m, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn recursion_matches_closed_form_for_any_coefficients(
        a in small_poly(E_PARAMS),
        b in small_poly(E_PARAMS),
    ) {
        let table = gamma_recursion(&a, &b, 4).unwrap();
        for ((n, m), v) in &table {
            prop_assert_eq!(&v.value, &gamma_generic(&a, &b, *n, *m));
            prop_assert_eq!(&v.value, &-table[&(*m, *n)].value.clone());
        }
    }

    #[test]
    fn residue_gamma_is_antisymmetric_on_elliptic_curves(
        e1 in small_rational(),
        e2 in small_rational(),
        n in -5i64..=5,
        m in -5i64..=5,
    ) {
        let curve = kn_core::CurveParams::new(MultiPoly::constant(e1), MultiPoly::constant(e2));
        let mut oracle = ResidueOracle::new(curve, 14);
        let nm = oracle.gamma(n, m).unwrap().value;
        let mn = oracle.gamma(m, n).unwrap().value;
        prop_assert_eq!(nm, -mn);
    }
}
