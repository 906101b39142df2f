use anyhow::{anyhow, Result};
use serde::Serialize;

use kn_core::central::{
    gamma_for_spec, gamma_recursion, gamma_singular, verify_gamma_properties_with, AffineExtension,
    SingularCase,
};
use kn_core::cocycle::{coboundary_suite, harrison_suite};
use kn_core::current::{degeneration_identifications, verify_jacobi, CurrentFamily};
use kn_core::function_algebra::{grading_bounds_check, rescale_check, verify_associativity, FamilySpec};
use kn_core::lie::{verify_lie_axioms, FiniteLieAlgebra};
use kn_core::{MultiPoly, Report, Witness};

use crate::args::{Format, Route, Suite};
use crate::input::lie_table;
use crate::routes::{check_order, curve_for, gamma_table};

pub struct SuiteInput<'a> {
    /// Explicit family; `None` means every family the suite applies to.
    pub spec: Option<FamilySpec>,
    pub lie: &'a str,
    pub window: i64,
    pub order: i64,
    pub p: MultiPoly,
}

impl SuiteInput<'_> {
    fn families(&self) -> Vec<FamilySpec> {
        match &self.spec {
            Some(s) => vec![s.clone()],
            None => FamilySpec::all_symbolic(),
        }
    }

    fn single(&self) -> FamilySpec {
        self.spec.clone().unwrap_or_else(FamilySpec::elliptic)
    }
}

fn tally(name: &str, checked: usize, failure: Option<(String, String)>) -> Report {
    let mut r = Report::new(name);
    r.checked = checked;
    r.failure = failure.map(|(case, detail)| Witness { case, detail });
    r
}

/// Structure constants that pass the Lie axioms, or the failed axiom report.
fn lie(source: &str) -> Result<Result<FiniteLieAlgebra, Report>> {
    let table = lie_table(source)?;
    let axioms = verify_lie_axioms(&table);
    if !axioms.passed() {
        return Ok(Err(axioms));
    }
    Ok(Ok(FiniteLieAlgebra::new(table).map_err(|e| anyhow!("{e}"))?))
}

fn named(mut r: Report, name: String) -> Report {
    r.name = name;
    r
}

fn associativity(input: &SuiteInput) -> Report {
    let parts = input
        .families()
        .into_iter()
        .map(|s| named(verify_associativity(&s, input.window), format!("associativity[{}]", s.kind_name())));
    Report::combine("associativity", parts)
}

fn jacobi(input: &SuiteInput) -> Result<Report> {
    let lie = match lie(input.lie)? {
        Ok(l) => l,
        Err(axioms) => return Ok(Report::combine("jacobi", [axioms])),
    };
    let parts = input.families().into_iter().map(|s| {
        let name = format!("jacobi[{}]", s.kind_name());
        named(verify_jacobi(&CurrentFamily::new(lie.clone(), s), input.window), name)
    });
    Ok(Report::combine("jacobi", parts))
}

fn gamma_agreement(input: &SuiteInput) -> Result<Report> {
    let spec = input.single();
    let w = input.window;
    let closed = gamma_table(&spec, Route::Closed, w, input.order)?;
    let mut routes = vec![(Route::Recursion, gamma_table(&spec, Route::Recursion, w, input.order)?)];
    let residue = curve_for(&spec).is_ok();
    if residue {
        check_order(w, input.order)?;
        routes.push((Route::Residue, gamma_table(&spec, Route::Residue, w, input.order)?));
    }
    let mut checked = 0;
    let mut failure = None;
    'pairs: for (&(n, m), c) in &closed {
        for (route, table) in &routes {
            checked += 1;
            if table[&(n, m)] != *c {
                failure = Some((
                    format!("gamma({n},{m})"),
                    format!("closed form {c}, {} {}", route.name(), table[&(n, m)]),
                ));
                break 'pairs;
            }
        }
    }
    let r = tally(&format!("gamma-agreement[{}]", spec.kind_name()), checked, failure);
    Ok(if residue {
        r.note(format!("routes closed, recursion, residue (order {})", input.order))
    } else {
        r.note("routes closed, recursion; no residue route for this family")
    })
}

fn gamma_properties(input: &SuiteInput) -> Result<Report> {
    let spec = input.single();
    let lie = match lie(input.lie)? {
        Ok(l) => l,
        Err(axioms) => return Ok(Report::combine("gamma-properties", [axioms])),
    };
    let ext = AffineExtension::with_killing_form(CurrentFamily::new(lie, spec.clone()), input.p.clone());
    let gamma = |n: i64, m: i64| gamma_for_spec(&spec, n, m);
    Ok(verify_gamma_properties_with(&ext, &gamma, &[0, 2, 4], input.window))
}

fn rescale(input: &SuiteInput) -> Result<Report> {
    let specs = match &input.spec {
        Some(s) => vec![s.clone()],
        None => vec![FamilySpec::line_s(), FamilySpec::line_infinity()],
    };
    let mut parts = Vec::new();
    for s in specs {
        parts.push(rescale_check(&s, input.window).map_err(|e| anyhow!("{e}"))?);
    }
    Ok(Report::combine("rescale", parts))
}

fn degeneration(input: &SuiteInput) -> Result<Report> {
    let w = input.window;
    let alpha2: MultiPoly = "alpha^2".parse().map_err(|e| anyhow!("{e}"))?;
    let mut parts = vec![degeneration_identifications(w)];
    let cases = [
        (SingularCase::Classical, MultiPoly::zero(), MultiPoly::zero()),
        (SingularCase::ThreePoint, alpha2.clone(), MultiPoly::zero()),
        (SingularCase::WFamily, -alpha2.clone() - alpha2.clone(), alpha2.pow(2)),
    ];
    for (case, a, b) in cases {
        let name = format!("singular gamma[{case:?}]");
        let table = match gamma_recursion(&a, &b, w) {
            Ok(t) => t,
            Err(e) => {
                parts.push(tally(&name, 0, Some(("recursion".into(), e.to_string()))));
                continue;
            }
        };
        let mut checked = 0;
        let mut failure = None;
        for ((n, m), v) in &table {
            checked += 1;
            let closed = gamma_singular(case, *n, *m);
            if closed != *v {
                failure = Some((format!("gamma({n},{m})"), format!("closed {closed}, recursion {v}")));
                break;
            }
        }
        parts.push(tally(&name, checked, failure));
    }
    Ok(Report::combine("degeneration", parts))
}

fn grading(input: &SuiteInput) -> Report {
    let parts = input.families().into_iter().map(|s| {
        let (lo, hi) = grading_bounds_check(&s, input.window);
        let failure = (lo < -4 || hi > 0).then(|| {
            (
                format!("window {}", input.window),
                format!("products reach degrees n+m{lo:+} .. n+m{hi:+}, outside n+m-4 .. n+m"),
            )
        });
        tally(&format!("grading[{}]", s.kind_name()), 1, failure)
            .note(format!("{}: supp(A_n A_m) within [n+m{lo:+}, n+m{hi:+}]", s.kind_name()))
    });
    Report::combine("grading", parts)
}

pub fn run(suite: Suite, input: &SuiteInput) -> Result<Report> {
    let w = input.window;
    Ok(match suite {
        Suite::Associativity => associativity(input),
        Suite::Jacobi => jacobi(input)?,
        Suite::GammaAgreement => gamma_agreement(input)?,
        Suite::GammaProperties => gamma_properties(input)?,
        Suite::Coboundary => coboundary_suite(w),
        Suite::Harrison => harrison_suite(w),
        Suite::Rescale => rescale(input)?,
        Suite::Degeneration => degeneration(input)?,
        Suite::Grading => grading(input),
    })
}

#[derive(Serialize)]
struct WitnessOut<'a> {
    case: &'a str,
    detail: &'a str,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    suite: &'a str,
    passed: bool,
    checked: usize,
    witness: Option<WitnessOut<'a>>,
    notes: &'a [String],
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => format!("{report}\n"),
        Format::Json => {
            let out = ReportOut {
                suite: &report.name,
                passed: report.passed(),
                checked: report.checked,
                witness: report.failure.as_ref().map(|w| WitnessOut {
                    case: &w.case,
                    detail: &w.detail,
                }),
                notes: &report.notes,
            };
            serde_json::to_string_pretty(&out)? + "\n"
        }
    })
}
