use std::collections::BTreeMap;
use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use kn_core::function_algebra::{specialize_family, FamilySpec};
use kn_core::lie::{sl2_standard, FiniteLieAlgebra, StructureTable};
use kn_core::{int, parse_rational, Bindings, MultiPoly, ParamId};

use crate::args::ParamArgs;

pub fn parse_poly(text: &str) -> Result<MultiPoly> {
    text.parse::<MultiPoly>()
        .map_err(|e| anyhow!("cannot parse `{text}`: {e}"))
}

pub fn family_by_name(name: &str) -> Result<FamilySpec> {
    let lower = name.trim().to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("generic:") {
        let (a, b) = rest
            .split_once(':')
            .ok_or_else(|| anyhow!("generic family needs `generic:<a>:<b>`"))?;
        return Ok(FamilySpec::generic(parse_poly(a)?, parse_poly(b)?));
    }
    Ok(match lower.as_str() {
        "elliptic" => FamilySpec::elliptic(),
        "line-s" | "lines" | "line" => FamilySpec::line_s(),
        "line-infinity" | "line-inf" | "lineinf" => FamilySpec::line_infinity(),
        "three-point" | "threepoint" => FamilySpec::three_point(),
        "subalgebra-w" | "w" => FamilySpec::subalgebra_w(),
        "laurent" => FamilySpec::laurent(),
        other => bail!(
            "unknown family `{other}`; expected elliptic, line-s, line-infinity, three-point, \
             subalgebra-w, laurent or generic:<a>:<b>"
        ),
    })
}

/// Whether `--s` selects the line `e1 = 0`.
pub fn slope_is_infinite(params: &ParamArgs) -> bool {
    params
        .s
        .as_deref()
        .is_some_and(|s| matches!(s.trim().to_ascii_lowercase().as_str(), "inf" | "infinity" | "oo"))
}

/// Bindings from the parameter flags; `--s inf` contributes nothing.
pub fn bindings(params: &ParamArgs) -> Result<Bindings> {
    let mut out = Bindings::new();
    let flags = [
        (ParamId::S, &params.s),
        (ParamId::E, &params.e),
        (ParamId::E1, &params.e1),
        (ParamId::E2, &params.e2),
        (ParamId::Alpha, &params.alpha),
    ];
    for (id, value) in flags {
        if let Some(v) = value {
            if id == ParamId::S && slope_is_infinite(params) {
                continue;
            }
            out.insert(id, parse_poly(v).with_context(|| format!("--{}", id.name()))?);
        }
    }
    Ok(out)
}

/// The family named by `--spec` (or the one implied by the parameter flags
/// when `--spec` is absent), specialized at the given parameter values.
pub fn resolve_spec(spec: Option<&str>, params: &ParamArgs) -> Result<FamilySpec> {
    let base = match spec {
        Some(name) => family_by_name(name)?,
        None if slope_is_infinite(params) => FamilySpec::line_infinity(),
        None if params.s.is_some() || (params.e.is_some() && params.e1.is_none() && params.e2.is_none()) => {
            FamilySpec::line_s()
        }
        None if params.alpha.is_some() => FamilySpec::three_point(),
        None => FamilySpec::elliptic(),
    };
    let base = if slope_is_infinite(params) {
        match base.kind_name() {
            "line-s" | "line-infinity" => FamilySpec::line_infinity(),
            other => bail!("`--s inf` applies to the line families, not {other}"),
        }
    } else {
        base
    };
    let b = bindings(params)?;
    if b.is_empty() {
        return Ok(base);
    }
    specialize_family(&base, &b).map_err(|e| anyhow!("{e}"))
}

#[derive(Deserialize)]
struct LieFile {
    dim: usize,
    entries: Vec<LieEntry>,
}

#[derive(Deserialize)]
struct LieEntry {
    a: usize,
    b: usize,
    c: usize,
    value: LieValue,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LieValue {
    Int(i64),
    Text(String),
}

/// Structure constants from `sl2` or a JSON file; not yet checked against the
/// Lie axioms. An entry `(a, b, c, v)` also sets `(b, a, c, -v)`
/// unless the file lists that entry itself.
pub fn lie_table(source: &str) -> Result<StructureTable> {
    if source.eq_ignore_ascii_case("sl2") {
        return Ok(sl2_standard().table().clone());
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading Lie algebra `{source}`"))?;
    let file: LieFile = serde_json::from_str(&text).with_context(|| format!("parsing `{source}`"))?;
    let idx = |i: usize| {
        i.checked_sub(1)
            .ok_or_else(|| anyhow!("indices in `{source}` are 1-based"))
    };
    let mut explicit = BTreeMap::new();
    for entry in file.entries {
        let value = match entry.value {
            LieValue::Int(v) => int(v),
            LieValue::Text(t) => parse_rational(&t).map_err(|e| anyhow!("value `{t}`: {e}"))?,
        };
        explicit.insert((idx(entry.a)?, idx(entry.b)?, idx(entry.c)?), value);
    }
    let mut table = StructureTable::zeros(file.dim).map_err(|e| anyhow!("{e}"))?;
    for (&(a, b, c), v) in &explicit {
        table.set(a, b, c, v.clone()).map_err(|e| anyhow!("{e}"))?;
        if !explicit.contains_key(&(b, a, c)) {
            table.set(b, a, c, -v.clone()).map_err(|e| anyhow!("{e}"))?;
        }
    }
    Ok(table)
}

pub fn lie_algebra(source: &str) -> Result<FiniteLieAlgebra> {
    if source.eq_ignore_ascii_case("sl2") {
        return Ok(sl2_standard());
    }
    FiniteLieAlgebra::new(lie_table(source)?).map_err(|e| anyhow!("{source}: {e}"))
}
