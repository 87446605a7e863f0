//! Table files and the on-disk table cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::chartab::{character_table, CharTable};
use crate::error::{Error, Result};
use crate::group::Group;

/// Bumped whenever the cached table layout or class ordering changes.
const CACHE_FORMAT: &str = "charcheck-table-v1";

/// Pretty JSON with a trailing newline; the same value always gives the same bytes.
pub fn to_json_bytes<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Writes via a temporary file in the target directory and a rename, so readers never
/// see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Parses and validates a table. A missing power map or any other shape problem is a
/// schema error; bad values surface as orthogonality failures.
pub fn parse_table(text: &str) -> Result<CharTable> {
    let t: CharTable = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    t.validate()?;
    Ok(t)
}

pub fn import_table(path: &Path) -> Result<CharTable> {
    parse_table(&fs::read_to_string(path)?)
}

pub fn export_table(t: &CharTable, path: &Path) -> Result<()> {
    write_atomic(path, &to_json_bytes(t)?)
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(g: &Group) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(CACHE_FORMAT);
        h.update(g.content_hash());
        hex::encode(h.finalize())
    }

    pub fn path_for(&self, g: &Group) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(g)))
    }

    /// A cached table, renamed to `g`. Unreadable or invalid entries count as misses.
    pub fn load(&self, g: &Group) -> Option<CharTable> {
        let mut t = import_table(&self.path_for(g)).ok()?;
        if t.order != g.order() || t.num_classes() != g.classes().len() {
            return None;
        }
        t.name = g.name().to_string();
        Some(t)
    }

    pub fn store(&self, t: &CharTable, g: &Group) -> Result<()> {
        export_table(t, &self.path_for(g))
    }

    /// Returns the table and whether it came from the cache.
    pub fn table_for(&self, g: &Group) -> Result<(CharTable, bool)> {
        if let Some(t) = self.load(g) {
            return Ok((t, true));
        }
        let t = character_table(g)?;
        self.store(&t, g)?;
        Ok((t, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::test_groups::*;

    #[test]
    fn round_trip_and_cache() {
        let dir = tempfile::tempdir().unwrap();
        let g = sym(4);
        let t = character_table(&g).unwrap();
        let path = dir.path().join("s4.json");
        export_table(&t, &path).unwrap();
        assert_eq!(import_table(&path).unwrap(), t);

        let cache = TableCache::new(dir.path().join("cache"));
        let (a, hit) = cache.table_for(&g).unwrap();
        assert!(!hit);
        let (b, hit) = cache.table_for(&g).unwrap();
        assert!(hit);
        assert_eq!(to_json_bytes(&a).unwrap(), to_json_bytes(&b).unwrap());
    }

    #[test]
    fn import_rejects_missing_power_maps() {
        let t = character_table(&sym(3)).unwrap();
        let mut v = serde_json::to_value(&t).unwrap();
        v["classes"][1].as_object_mut().unwrap().remove("power_map");
        assert!(matches!(parse_table(&v.to_string()), Err(Error::Schema(_))));
    }
}
