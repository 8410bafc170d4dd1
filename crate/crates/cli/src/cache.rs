//! On-disk cache of the group closure and the strata, keyed by the SHA-256
//! of the canonical configuration.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use g2kit::locus::Stratum;
use g2kit::orbifold::IsometryGroup;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn key(canonical_config: &str) -> String {
    hex::encode(Sha256::digest(canonical_config.as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(root: &Path, key: &str) -> Self {
        Self { dir: root.join(key) }
    }

    fn read(&self, name: &str) -> Option<Value> {
        let text = fs::read_to_string(self.dir.join(name)).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn write(&self, name: &str, value: &impl serde::Serialize) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("{name}.tmp"));
        fs::write(&tmp, serde_json::to_string(value).map_err(io::Error::other)?)?;
        fs::rename(tmp, self.dir.join(name))
    }

    pub fn group(&self) -> Option<IsometryGroup> {
        serde_json::from_value::<IsometryGroup>(self.read("closure.json")?).ok().map(IsometryGroup::reindex)
    }

    pub fn store_group(&self, group: &IsometryGroup) -> io::Result<()> {
        self.write("closure.json", group)
    }

    pub fn strata(&self) -> Option<Vec<Stratum>> {
        serde_json::from_value(self.read("strata.json")?).ok()
    }

    pub fn store_strata(&self, strata: &[Stratum]) -> io::Result<()> {
        self.write("strata.json", &strata)
    }
}
