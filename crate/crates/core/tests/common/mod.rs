#![allow(dead_code)]

use std::path::PathBuf;

use residua::formations::{builtin, noncentral, pgroups, ChiefFunction, SIMPLE_BUILTINS};
use residua::groupfile;
use residua::{Params, PermGroup};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub struct Entry {
    pub name: String,
    pub group: PermGroup,
    pub sub: Option<PermGroup>,
}

pub fn corpus() -> Vec<Entry> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let f = groupfile::load(&p, &Params::default()).unwrap();
            Entry {
                name: p.file_stem().unwrap().to_string_lossy().into_owned(),
                group: f.group,
                sub: f.sub,
            }
        })
        .collect()
}

pub fn order(g: &PermGroup) -> u64 {
    g.order_u64().unwrap()
}

/// Every builtin atom that is a chief factor function, with prime
/// arguments drawn from {2, 3, 5}.
pub fn chief_atoms() -> Vec<ChiefFunction> {
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

pub fn hereditary_atoms() -> Vec<ChiefFunction> {
    chief_atoms().into_iter().filter(|f| f.hereditary).collect()
}
