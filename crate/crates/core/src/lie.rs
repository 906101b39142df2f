//! Finite-dimensional Lie algebras over the rationals, given by structure
//! constants `[T_a, T_b] = sum_c C_ab^c T_c`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::LieError;
use crate::poly::{int, Rational};
use crate::report::Report;

/// Raw structure constants, not yet checked against the Lie axioms.
/// Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    c: Vec<Rational>,
}

impl StructureTable {
    pub fn zeros(dim: usize) -> Result<StructureTable, LieError> {
        if dim == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        Ok(StructureTable {
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
        })
    }

    /// Table from `(a, b, c, value)` entries; omitted entries are zero.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<StructureTable, LieError>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let mut t = StructureTable::zeros(dim)?;
        for (a, b, c, v) in entries {
            t.set(a, b, c, v)?;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.dim + b) * self.dim + c
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: Rational) -> Result<(), LieError> {
        for index in [a, b, c] {
            if index >= self.dim {
                return Err(LieError::IndexOutOfRange {
                    index,
                    dim: self.dim,
                });
            }
        }
        let i = self.idx(a, b, c);
        self.c[i] = v;
        Ok(())
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.c[self.idx(a, b, c)]
    }
}

/// Check antisymmetry and the Jacobi identity on all basis indices.
pub fn verify_lie_axioms(table: &StructureTable) -> Report {
    let n = table.dim;
    let mut report = Report::new("lie-axioms");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let s = table.get(a, b, c) + table.get(b, a, c);
                if !report.check(
                    s.is_zero(),
                    || format!("antisymmetry C[{a},{b}]^{c}"),
                    || format!("C_ab^c + C_ba^c = {s}"),
                ) {
                    return report;
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let mut s = Rational::zero();
                    for d in 0..n {
                        s += table.get(a, b, d) * table.get(d, c, e);
                        s += table.get(b, c, d) * table.get(d, a, e);
                        s += table.get(c, a, d) * table.get(d, b, e);
                    }
                    if !report.check(
                        s.is_zero(),
                        || format!("jacobi ({a},{b},{c}) component {e}"),
                        || format!("cyclic sum = {s}"),
                    ) {
                        return report;
                    }
                }
            }
        }
    }
    report
}

/// A structure-constant table that has passed [`verify_lie_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieAlgebra {
    table: StructureTable,
    names: Vec<String>,
}

impl FiniteLieAlgebra {
    pub fn new(table: StructureTable) -> Result<FiniteLieAlgebra, LieError> {
        let names = (1..=table.dim).map(|i| format!("x{i}")).collect();
        FiniteLieAlgebra::with_names(table, names)
    }

    pub fn with_names(table: StructureTable, names: Vec<String>) -> Result<FiniteLieAlgebra, LieError> {
        if names.len() != table.dim {
            return Err(LieError::DimensionMismatch {
                expected: table.dim,
                found: names.len(),
            });
        }
        let report = verify_lie_axioms(&table);
        if let Some(w) = report.failure {
            return Err(LieError::AxiomViolation(format!("{}: {}", w.case, w.detail)));
        }
        Ok(FiniteLieAlgebra { table, names })
    }

    pub fn dim(&self) -> usize {
        self.table.dim
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> &Rational {
        self.table.get(a, b, c)
    }

    /// Non-zero components of `[T_a, T_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        (0..self.dim())
            .map(move |c| (c, self.table.get(a, b, c)))
            .filter(|(_, v)| !v.is_zero())
    }

    pub fn is_abelian(&self) -> bool {
        self.table.c.iter().all(Zero::is_zero)
    }
}

/// Bracket of two coefficient vectors.
pub fn bracket_fd(
    lie: &FiniteLieAlgebra,
    x: &[Rational],
    y: &[Rational],
) -> Result<Vec<Rational>, LieError> {
    let n = lie.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let mut out = vec![Rational::zero(); n];
    for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let w = xa * yb;
            for (c, k) in lie.bracket_basis(a, b) {
                out[c] += &w * k;
            }
        }
    }
    Ok(out)
}

/// Unit coordinate vector `T_a`.
pub fn basis_vector(dim: usize, a: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[a] = Rational::one();
    v
}

/// `sl(2)` on the basis `(h, e, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2_standard() -> FiniteLieAlgebra {
    const H: usize = 0;
    const E: usize = 1;
    const F: usize = 2;
    let table = StructureTable::from_entries(
        3,
        [
            (H, E, E, int(2)),
            (E, H, E, int(-2)),
            (H, F, F, int(-2)),
            (F, H, F, int(2)),
            (E, F, H, int(1)),
            (F, E, H, int(-1)),
        ],
    )
    .expect("indices are in range");
    FiniteLieAlgebra::with_names(table, vec!["h".into(), "e".into(), "f".into()])
        .expect("sl2 satisfies the Lie axioms")
}

/// Abelian algebra of the given dimension.
pub fn abelian(dim: usize) -> Result<FiniteLieAlgebra, LieError> {
    FiniteLieAlgebra::new(StructureTable::zeros(dim)?)
}

/// Bilinear form given by its Gram matrix on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    dim: usize,
    m: Vec<Rational>,
}

impl BilinearForm {
    pub fn from_matrix(dim: usize, m: Vec<Rational>) -> Result<BilinearForm, LieError> {
        if m.len() != dim * dim {
            return Err(LieError::DimensionMismatch {
                expected: dim * dim,
                found: m.len(),
            });
        }
        Ok(BilinearForm { dim, m })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &Rational {
        &self.m[a * self.dim + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: Rational) {
        self.m[a * self.dim + b] = v;
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate() {
                s += xa * yb * self.get(a, b);
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|a| (0..a).all(|b| self.get(a, b) == self.get(b, a)))
    }

    /// Determinant of the Gram matrix by exact elimination.
    pub fn determinant(&self) -> Rational {
        let n = self.dim;
        let mut m = self.m.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for k in 0..n {
                    m.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = m[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &m[r * n + col] / &p;
                if f.is_zero() {
                    continue;
                }
                for k in col..n {
                    let v = &f * &m[col * n + k];
                    m[r * n + k] -= v;
                }
            }
        }
        det
    }
}

/// Killing form `kappa(x, y) = tr(ad x ad y)`.
pub fn killing_form(lie: &FiniteLieAlgebra) -> BilinearForm {
    let n = lie.dim();
    let mut m = vec![Rational::zero(); n * n];
    for a in 0..n {
        for b in 0..n {
            let mut s = Rational::zero();
            for c in 0..n {
                for d in 0..n {
                    s += lie.structure_constant(a, d, c) * lie.structure_constant(b, c, d);
                }
            }
            m[a * n + b] = s;
        }
    }
    BilinearForm { dim: n, m }
}

/// Check symmetry and `beta([x,y], z) = beta(x, [y,z])` on basis triples.
pub fn verify_invariance(lie: &FiniteLieAlgebra, form: &BilinearForm) -> Report {
    let n = lie.dim();
    let mut report = Report::new("form-invariance");
    if !report.check(
        form.dim() == n,
        || String::from("dimension"),
        || format!("form has dimension {}, algebra {}", form.dim(), n),
    ) {
        return report;
    }
    for a in 0..n {
        for b in 0..n {
            if !report.check(
                form.get(a, b) == form.get(b, a),
                || format!("symmetry ({a},{b})"),
                || format!("{} vs {}", form.get(a, b), form.get(b, a)),
            ) {
                return report;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs: Rational = lie
                    .bracket_basis(a, b)
                    .map(|(d, k)| k * form.get(d, c))
                    .sum();
                let rhs: Rational = lie
                    .bracket_basis(b, c)
                    .map(|(d, k)| k * form.get(a, d))
                    .sum();
                if !report.check(
                    lhs == rhs,
                    || format!("invariance ({a},{b},{c})"),
                    || format!("beta([x,y],z) = {lhs}, beta(x,[y,z]) = {rhs}"),
                ) {
                    return report;
                }
            }
        }
    }
    report
}
