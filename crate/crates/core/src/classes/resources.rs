//! Loading the transcribed automata, matrices, schemes and closed forms.
//!
//! Files live under `resources/{dfa,matrix,scheme,gf}` next to this crate's
//! manifest. Setting `PERMGRID_RESOURCES` points the loaders elsewhere.

use std::fs;
use std::path::PathBuf;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::grid::GriddingMatrix;
use crate::ratfun::RationalFunction;

use super::scheme::EncodingScheme;

pub const ENV_VAR: &str = "PERMGRID_RESOURCES";

pub fn resource_dir() -> PathBuf {
    match std::env::var_os(ENV_VAR) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/resources")),
    }
}

fn read(kind: &str, name: &str) -> Result<String> {
    let path = resource_dir().join(kind).join(format!("{name}.{kind}"));
    fs::read_to_string(&path).map_err(|e| Error::Resource {
        name: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn wrap<T>(kind: &str, name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Resource {
        name: format!("{kind}/{name}.{kind}"),
        reason: e.to_string(),
    })
}

pub fn dfa(name: &str) -> Result<Dfa> {
    wrap("dfa", name, read("dfa", name)?.parse())
}

pub fn matrix(name: &str) -> Result<GriddingMatrix> {
    wrap("matrix", name, read("matrix", name)?.parse())
}

pub fn scheme(name: &str) -> Result<EncodingScheme> {
    wrap("scheme", name, read("scheme", name)?.parse())
}

/// A closed form; the file holds one expression, possibly over several lines.
pub fn gf(name: &str) -> Result<RationalFunction> {
    let text: String = read("gf", name)?
        .lines()
        .map(|l| l.split('#').next().unwrap())
        .collect::<Vec<_>>()
        .join(" ");
    wrap("gf", name, text.parse())
}

/// Names of the files of one kind, sorted, without extension.
pub fn list(kind: &str) -> Result<Vec<String>> {
    let dir = resource_dir().join(kind);
    let entries = fs::read_dir(&dir).map_err(|e| Error::Resource {
        name: dir.display().to_string(),
        reason: e.to_string(),
    })?;
    let suffix = format!(".{kind}");
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            e.file_name()
                .to_str()
                .and_then(|s| s.strip_suffix(&suffix).map(String::from))
        })
        .collect();
    names.sort();
    Ok(names)
}
