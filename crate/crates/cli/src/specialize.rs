use anyhow::{anyhow, Result};
use serde::Serialize;

use kn_core::function_algebra::{describe_rule, discriminant_poly, j_invariant, Family, FamilySpec, Slope};
use kn_core::{int, CurveError, MultiPoly};

use crate::args::Format;

#[derive(Serialize, Debug)]
pub struct Fiber {
    pub family: &'static str,
    pub parameters: Vec<(String, String)>,
    pub rule: String,
    pub c2: String,
    pub c4: String,
    pub isomorphic_to: Option<String>,
    pub discriminant: Option<String>,
    pub j: Option<String>,
    pub singular: bool,
    pub warnings: Vec<String>,
}

/// Genus-zero rule with the same odd-odd coefficients, if any.
fn identify(c2: &MultiPoly, c4: &MultiPoly) -> Option<String> {
    if c2.is_zero() && c4.is_zero() {
        return Some("laurent".into());
    }
    if c4.is_zero() {
        return Some(format!("three-point with alpha^2 = {c2}"));
    }
    let k = c2.scale(&kn_core::rat(-1, 2));
    if k.pow(2) == *c4 {
        return Some(format!("subalgebra-w with alpha^2 = {k}"));
    }
    None
}

pub fn fiber(spec: &FamilySpec) -> Result<Fiber> {
    let (c2, c4) = spec.odd_coefficients();
    let mut parameters = Vec::new();
    let mut discriminant = None;
    let mut j = None;
    let mut singular = false;
    let mut warnings = Vec::new();
    let disc = |e1: &MultiPoly, e2: &MultiPoly| {
        discriminant_poly(e1, e2, &-(e1 + e2)).map_err(|e| anyhow!("{e}"))
    };
    match spec.family() {
        Family::Elliptic { e1, e2 } => {
            parameters.push(("e1".into(), e1.to_canonical()));
            parameters.push(("e2".into(), e2.to_canonical()));
            discriminant = Some(disc(e1, e2)?);
        }
        Family::LineS { s, e } => {
            parameters.push(("s".into(), s.to_canonical()));
            parameters.push(("e".into(), e.to_canonical()));
            discriminant = Some(disc(e, &(s * e))?);
            if let Some(s) = s.constant_value() {
                match j_invariant(&Slope::Finite(s.clone())) {
                    Ok(v) => j = Some(v.to_string()),
                    Err(CurveError::SingularLine) => {
                        singular = true;
                        warnings.push(format!("the line s = {s} consists of nodal cubics; discriminant 0, j undefined"));
                    }
                    Err(other) => return Err(anyhow!("{other}")),
                }
            }
        }
        Family::LineInfinity { e } => {
            parameters.push(("s".into(), "inf".into()));
            parameters.push(("e".into(), e.to_canonical()));
            // e1 = 0, e2 = -e3 with e2^2 = e
            discriminant = Some(e.pow(3).scale(&int(64)));
            j = Some(j_invariant(&Slope::Infinity).map_err(|e| anyhow!("{e}"))?.to_string());
        }
        Family::ThreePoint { alpha } | Family::SubalgebraW { alpha } => {
            parameters.push(("alpha".into(), alpha.to_canonical()));
            singular = true;
            warnings.push("genus-zero algebra of a nodal cubic; discriminant 0".into());
        }
        Family::Laurent => {
            singular = true;
            discriminant = Some(MultiPoly::zero());
            warnings.push("e1 = e2 = e3 = 0: cuspidal cubic; discriminant 0".into());
        }
        Family::Generic { a, b } => {
            parameters.push(("a".into(), a.to_canonical()));
            parameters.push(("b".into(), b.to_canonical()));
        }
    }
    if let Some(d) = &discriminant {
        if d.is_zero() && !singular {
            singular = true;
            warnings.push("discriminant vanishes: singular fiber".into());
        }
    }
    Ok(Fiber {
        family: spec.kind_name(),
        parameters,
        rule: describe_rule(spec),
        c2: c2.to_canonical(),
        c4: c4.to_canonical(),
        isomorphic_to: identify(c2, c4).filter(|name| !name.starts_with(spec.kind_name())),
        discriminant: discriminant.map(|d| d.to_canonical()),
        j,
        singular,
        warnings,
    })
}

pub fn render(f: &Fiber, format: Format) -> Result<String> {
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(f)? + "\n");
    }
    let mut out = format!("family: {}\n", f.family);
    for (k, v) in &f.parameters {
        out += &format!("{k} = {v}\n");
    }
    out += &format!("rule: {}\n", f.rule);
    out += &format!("c2 = {}\nc4 = {}\n", f.c2, f.c4);
    if let Some(iso) = &f.isomorphic_to {
        out += &format!("isomorphic to: {iso}\n");
    }
    if let Some(d) = &f.discriminant {
        out += &format!("discriminant = {d}\n");
    }
    if let Some(j) = &f.j {
        out += &format!("j = {j}\n");
    }
    out += &format!("singular: {}\n", if f.singular { "yes" } else { "no" });
    Ok(out)
}
