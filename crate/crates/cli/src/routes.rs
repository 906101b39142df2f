use std::collections::BTreeMap;
use std::fmt;

use anyhow::{bail, Result};

use kn_core::central::{gamma_for_spec, gamma_recursion_for, ResidueOracle};
use kn_core::function_algebra::{Family, FamilySpec};
use kn_core::{CentralError, CurveParams, MultiPoly};

use crate::args::Route;

/// A mathematical assertion that failed; exits with status 2.
#[derive(Debug)]
pub struct MathFailure(pub String);

impl fmt::Display for MathFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for MathFailure {}

fn central(e: CentralError) -> anyhow::Error {
    match e {
        CentralError::RecursionInconsistent { .. } => MathFailure(e.to_string()).into(),
        other => anyhow::Error::msg(other.to_string()),
    }
}

/// Curve carrying the Laurent expansions of the family's basis.
pub fn curve_for(spec: &FamilySpec) -> Result<CurveParams> {
    if spec.has_overrides() {
        bail!("the residue route needs an unmodified family");
    }
    Ok(match spec.family() {
        Family::Elliptic { e1, e2 } => CurveParams::new(e1.clone(), e2.clone()),
        Family::LineS { s, e } => CurveParams::new(e.clone(), s * e),
        Family::Laurent => CurveParams::new(MultiPoly::zero(), MultiPoly::zero()),
        _ => bail!(
            "the residue route needs the elliptic, line-s or laurent family, not {}",
            spec.kind_name()
        ),
    })
}

pub fn check_order(window: i64, order: i64) -> Result<()> {
    let needed = 2 * window + 8;
    if order < needed {
        bail!("--order {order} is too small for window {window}; the residue route needs at least {needed}");
    }
    Ok(())
}

/// `gamma(A_n, A_m)` for `n, m` in the window, by the chosen route.
pub fn gamma_table(
    spec: &FamilySpec,
    route: Route,
    window: i64,
    order: i64,
) -> Result<BTreeMap<(i64, i64), MultiPoly>> {
    let pairs = (-window..=window).flat_map(|n| (-window..=window).map(move |m| (n, m)));
    match route {
        Route::Closed => {
            if spec.has_overrides() {
                bail!("the closed form applies to unmodified families only");
            }
            Ok(pairs.map(|(n, m)| ((n, m), gamma_for_spec(spec, n, m))).collect())
        }
        Route::Residue => {
            check_order(window, order)?;
            let mut oracle = ResidueOracle::new(curve_for(spec)?, order);
            let mut out = BTreeMap::new();
            for (n, m) in pairs {
                out.insert((n, m), oracle.gamma(n, m).map_err(central)?.value);
            }
            Ok(out)
        }
        Route::Recursion => Ok(gamma_recursion_for(spec, window)
            .map_err(central)?
            .into_iter()
            .map(|(k, v)| (k, v.value))
            .collect()),
    }
}
