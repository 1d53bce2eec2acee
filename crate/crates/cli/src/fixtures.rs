//! Oracle-verified expected values for the bundled corpus.
//!
//! Each `<stem>.grp` gets a `<stem>.expected.json` next to it. A value is only
//! written after the fast path and the brute-force oracle agree on it.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use residua::formations::{builtin, noncentral, pgroups, residual, ChiefFunction, SIMPLE_BUILTINS};
use residua::groupfile;
use residua::oracle::{brute_kf_subnormal, brute_residual, is_chief_factor};
use residua::series::chief_series;
use residua::subnormal::{is_subnormal_kind, SubnormalKind};
use residua::{Error, Params, Result};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Expected {
    pub order: String,
    pub primes: Vec<u64>,
    /// Chief factor orders, top of the series first.
    pub chief_factors: Vec<String>,
    /// Residual order per formation expression.
    pub residuals: BTreeMap<String, String>,
    /// For files with `sub:` lines: verdicts per hereditary formation.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subnormal: BTreeMap<String, Verdicts>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Verdicts {
    pub k: bool,
    pub f: bool,
}

pub fn atoms() -> Vec<ChiefFunction> {
    let mut out: Vec<ChiefFunction> = SIMPLE_BUILTINS
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect();
    for p in [2, 3, 5] {
        out.push(pgroups(p));
        out.push(noncentral(p));
    }
    out
}

fn mismatch(stem: &str, what: &str) -> Error {
    Error::Internal(format!("{stem}: fast path and oracle disagree on {what}"))
}

pub fn expected_for(path: &Path, params: &Params) -> Result<Expected> {
    let stem = path
        .file_stem()
        .unwrap_or_default()
        .to_string_lossy()
        .into_owned();
    let file = groupfile::load(path, params)?;
    let g = &file.group;

    let series = chief_series(g, params)?;
    for w in series.terms.windows(2) {
        if !is_chief_factor(g, &w[0], &w[1], params)? {
            return Err(mismatch(&stem, "a chief factor"));
        }
    }

    let mut residuals = BTreeMap::new();
    for f in atoms() {
        let fast = residual(g, &f, params)?;
        if !fast.equals(&brute_residual(g, &f, params)?) {
            return Err(mismatch(&stem, &f.name));
        }
        residuals.insert(f.name.clone(), fast.order().to_string());
    }

    let mut subnormal = BTreeMap::new();
    if let Some(h) = &file.sub {
        for f in atoms().into_iter().filter(|f| f.hereditary) {
            let mut v = [false; 2];
            for (i, kind) in [SubnormalKind::K, SubnormalKind::Plain]
                .into_iter()
                .enumerate()
            {
                let fast = is_subnormal_kind(g, h, &f, kind, params)?.0;
                if fast != brute_kf_subnormal(g, h, &f, kind, params)? {
                    return Err(mismatch(
                        &stem,
                        &format!("{} {kind:?}-subnormality", f.name),
                    ));
                }
                v[i] = fast;
            }
            subnormal.insert(f.name.clone(), Verdicts { k: v[0], f: v[1] });
        }
    }

    Ok(Expected {
        order: g.order().to_string(),
        primes: g.primes(),
        chief_factors: series
            .factor_orders()
            .iter()
            .map(ToString::to_string)
            .collect(),
        residuals,
        subnormal,
    })
}

fn in_file(e: Error, path: &Path) -> Error {
    let at = |m: String| format!("{}: {m}", path.display());
    match e {
        Error::Input(m) => Error::Input(at(m)),
        Error::Capability(m) => Error::Capability(at(m)),
        Error::Resource(m) => Error::Resource(at(m)),
        Error::Internal(m) => Error::Internal(at(m)),
    }
}

/// Rewrites every sidecar in `dir`; returns how many were written.
pub fn regen(dir: &Path, params: &Params) -> Result<usize> {
    let io = |e: std::io::Error| Error::Input(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    for p in &paths {
        let exp = expected_for(p, params).map_err(|e| in_file(e, p))?;
        let text = serde_json::to_string_pretty(&exp).expect("plain data serializes") + "\n";
        std::fs::write(p.with_extension("expected.json"), text).map_err(io)?;
    }
    Ok(paths.len())
}
