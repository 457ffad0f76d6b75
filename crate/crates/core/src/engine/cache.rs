//! On-disk JSON form of a correlation table.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{adapted_basis, CorrTable, EngineError, Kind, Source};
use crate::ellring::{Basis, EllValue};

pub const CACHE_SCHEMA: &str = "ellcorr-table";
pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    m: usize,
    n: usize,
    c: EllValue,
    c_d: EllValue,
    source_c: Source,
    source_c_d: Source,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    schema: String,
    version: u32,
    nmax: usize,
    entries: Vec<EntryRepr>,
}

impl CorrTable {
    pub fn to_json(&self) -> Result<String, EngineError> {
        let mut entries = Vec::new();
        for (m, n) in self.points() {
            entries.push(EntryRepr {
                m,
                n,
                c: self.c_entry(m, n)?,
                c_d: self.c_dual(m, n)?,
                source_c: self.source(Kind::C, m, n).unwrap_or(Source::Solved),
                source_c_d: self.source(Kind::CDual, m, n).unwrap_or(Source::Solved),
            });
        }
        let repr = TableRepr { schema: CACHE_SCHEMA.into(), version: CACHE_VERSION, nmax: self.nmax, entries };
        serde_json::to_string_pretty(&repr).map_err(|e| EngineError::Cache(e.to_string()))
    }

    pub fn from_json(src: &str) -> Result<Self, EngineError> {
        let repr: TableRepr = serde_json::from_str(src).map_err(|e| EngineError::Cache(e.to_string()))?;
        if repr.schema != CACHE_SCHEMA || repr.version != CACHE_VERSION {
            return Err(EngineError::Cache(format!(
                "schema {:?} version {} (expected {CACHE_SCHEMA:?} version {CACHE_VERSION})",
                repr.schema, repr.version
            )));
        }
        let mut t = CorrTable {
            nmax: repr.nmax,
            c: Default::default(),
            c_d: Default::default(),
            source: Default::default(),
        };
        for e in repr.entries {
            let want = adapted_basis(e.m, e.n);
            let stored_ok = |v: &EllValue| v.basis() == want || !v.has_pi();
            if !stored_ok(&e.c) || !stored_ok(&e.c_d) || e.m > repr.nmax || e.n > repr.nmax {
                return Err(EngineError::Cache(format!("entry ({},{}) is not in the expected form", e.m, e.n)));
            }
            t.put(Kind::C, e.m, e.n, e.c.change_basis(Basis::Pi), e.source_c);
            t.put(Kind::CDual, e.m, e.n, e.c_d.change_basis(Basis::Pi), e.source_c_d);
        }
        Ok(t)
    }
}

/// Reads a cached table; a missing file is `Ok(None)`, anything unreadable is an error.
pub fn read_cache(path: &Path) -> Result<Option<CorrTable>, EngineError> {
    match std::fs::read_to_string(path) {
        Ok(s) => CorrTable::from_json(&s).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(EngineError::Cache(format!("{}: {e}", path.display()))),
    }
}

pub fn write_cache(path: &Path, t: &CorrTable) -> Result<(), EngineError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| EngineError::Cache(e.to_string()))?;
        }
    }
    std::fs::write(path, t.to_json()? + "\n").map_err(|e| EngineError::Cache(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let t = CorrTable::build(2).unwrap();
        let js = t.to_json().unwrap();
        let back = CorrTable::from_json(&js).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json().unwrap(), js);
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let js = CorrTable::seeds(1).unwrap().to_json().unwrap().replace("\"version\": 1", "\"version\": 99");
        assert!(matches!(CorrTable::from_json(&js), Err(EngineError::Cache(_))));
    }
}
