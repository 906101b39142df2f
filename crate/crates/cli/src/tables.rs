use anyhow::Result;
use serde::Serialize;

use kn_core::current::CurrentFamily;
use kn_core::function_algebra::FamilySpec;

use crate::args::{Format, Route, What};
use crate::input::lie_algebra;
use crate::routes::gamma_table;

#[derive(Serialize)]
struct Coeff {
    degree: i64,
    poly: String,
}

#[derive(Serialize)]
struct ProductRow {
    n: i64,
    m: i64,
    coeffs: Vec<Coeff>,
}

#[derive(Serialize)]
struct BracketCoeff {
    c: usize,
    degree: i64,
    poly: String,
}

#[derive(Serialize)]
struct BracketRow {
    a: usize,
    n: i64,
    b: usize,
    m: i64,
    coeffs: Vec<BracketCoeff>,
}

#[derive(Serialize)]
struct GammaRow {
    n: i64,
    m: i64,
    gamma: String,
    route: &'static str,
}

fn window_pairs(window: i64) -> impl Iterator<Item = (i64, i64)> {
    (-window..=window).flat_map(move |n| (-window..=window).map(move |m| (n, m)))
}

fn render<R: Serialize>(
    format: Format,
    header: &[&str],
    rows: &[R],
    flat: impl Fn(&R) -> Vec<Vec<String>>,
) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(header)?;
            for row in rows {
                for record in flat(row) {
                    w.write_record(&record)?;
                }
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}

/// Products `A_n A_m`; rows ordered by `(n, m, j)`.
pub fn products(spec: &FamilySpec, window: i64, format: Format) -> Result<String> {
    let rows: Vec<ProductRow> = window_pairs(window)
        .map(|(n, m)| ProductRow {
            n,
            m,
            coeffs: spec
                .basis_product(n, m)
                .terms()
                .map(|(j, c)| Coeff {
                    degree: j,
                    poly: c.to_canonical(),
                })
                .collect(),
        })
        .collect();
    render(format, &["n", "m", "j", "coefficient"], &rows, |r| {
        r.coeffs
            .iter()
            .map(|c| vec![r.n.to_string(), r.m.to_string(), c.degree.to_string(), c.poly.clone()])
            .collect()
    })
}

/// Brackets `[T_a A_n, T_b A_m]` with 1-based Lie indices; rows ordered by `(a, n, b, m, c, j)`.
pub fn brackets(spec: &FamilySpec, lie: &str, window: i64, format: Format) -> Result<String> {
    let fam = CurrentFamily::new(lie_algebra(lie)?, spec.clone());
    let dim = fam.lie.dim();
    let mut rows = Vec::new();
    for a in 0..dim {
        for n in -window..=window {
            for b in 0..dim {
                for m in -window..=window {
                    let coeffs: Vec<BracketCoeff> = fam
                        .bracket_basis(a, n, b, m)
                        .terms()
                        .map(|((c, j), p)| BracketCoeff {
                            c: c + 1,
                            degree: j,
                            poly: p.to_canonical(),
                        })
                        .collect();
                    if !coeffs.is_empty() {
                        rows.push(BracketRow {
                            a: a + 1,
                            n,
                            b: b + 1,
                            m,
                            coeffs,
                        });
                    }
                }
            }
        }
    }
    render(format, &["a", "n", "b", "m", "c", "j", "coefficient"], &rows, |r| {
        r.coeffs
            .iter()
            .map(|c| {
                vec![
                    r.a.to_string(),
                    r.n.to_string(),
                    r.b.to_string(),
                    r.m.to_string(),
                    c.c.to_string(),
                    c.degree.to_string(),
                    c.poly.clone(),
                ]
            })
            .collect()
    })
}

/// `gamma(A_n, A_m)` for every pair in the window, zeros included; rows ordered by `(n, m)`.
pub fn gamma(spec: &FamilySpec, route: Route, window: i64, order: i64, format: Format) -> Result<String> {
    let table = gamma_table(spec, route, window, order)?;
    let rows: Vec<GammaRow> = table
        .into_iter()
        .map(|((n, m), g)| GammaRow {
            n,
            m,
            gamma: g.to_canonical(),
            route: route.name(),
        })
        .collect();
    render(format, &["n", "m", "gamma", "route"], &rows, |r| {
        vec![vec![r.n.to_string(), r.m.to_string(), r.gamma.clone(), r.route.to_string()]]
    })
}

pub fn run(what: What, route: Route, spec: &FamilySpec, lie: &str, window: i64, order: i64, format: Format) -> Result<String> {
    match what {
        What::Products => products(spec, window, format),
        What::Brackets => brackets(spec, lie, window, format),
        What::Gamma => gamma(spec, route, window, order, format),
    }
}
