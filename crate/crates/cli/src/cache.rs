//! On-disk cache of rendered command output, keyed by a content hash of
//! the tool version, the command and its parameters.
//!
//! Each entry stores the output together with its own hash; entries that
//! fail to parse or whose hash does not match are deleted and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::json;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, PartialEq, Eq)]
pub struct Entry {
    pub output: String,
    pub exit: i32,
}

fn digest(data: &str) -> String {
    hex::encode(Sha256::digest(data.as_bytes()))
}

/// Hash of the version, operation name and canonical parameters.
pub fn key(operation: &str, params: &str) -> String {
    digest(&format!("{}\0{operation}\0{params}", env!("CARGO_PKG_VERSION")))
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Entry> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match parse_entry(&text, key) {
            Some(entry) => Some(entry),
            None => {
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    /// Writes through a temporary file so readers never see partial entries.
    pub fn put(&self, key: &str, entry: &Entry) -> std::io::Result<()> {
        let body = json!({
            "key": key,
            "exit": entry.exit,
            "output": entry.output,
            "checksum": digest(&entry.output),
        });
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(body.to_string().as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, self.path(key))
    }
}

fn parse_entry(text: &str, key: &str) -> Option<Entry> {
    let v: serde_json::Value = serde_json::from_str(text).ok()?;
    if v.get("key")?.as_str()? != key {
        return None;
    }
    let output = v.get("output")?.as_str()?.to_string();
    if v.get("checksum")?.as_str()? != digest(&output) {
        return None;
    }
    let exit = v.get("exit")?.as_i64()? as i32;
    Some(Entry { output, exit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let k = key("dims", "d=2");
        assert_eq!(cache.get(&k), None);
        let entry = Entry {
            output: "42\n".into(),
            exit: 0,
        };
        cache.put(&k, &entry).unwrap();
        assert_eq!(cache.get(&k), Some(entry));

        fs::write(cache.path(&k), r#"{"key":"x","exit":0,"output":"43\n"}"#).unwrap();
        assert_eq!(cache.get(&k), None);
        assert!(!cache.path(&k).exists());

        assert_ne!(key("dims", "d=2"), key("dims", "d=3"));
    }
}
