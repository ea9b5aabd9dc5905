//! On-disk cache of search results, one JSON shard per `(rule, k)`.
//!
//! Shards live under a directory named after [`CODE_VERSION`], so results
//! from an incompatible build are never read. A shard that is missing,
//! unreadable or inconsistent counts as a miss and is recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use ecaemu_core::{EcaRule, Encoding};
use serde::{Deserialize, Serialize};

use crate::{encoding_from_strings, Error, Result};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "ECAEMU_CACHE_DIR";

/// Bump when the content of search results changes.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+r1");

#[derive(Serialize, Deserialize)]
struct Shard {
    version: String,
    rule: EcaRule,
    k: usize,
    emulated: Vec<ShardEntry>,
}

#[derive(Serialize, Deserialize)]
struct ShardEntry {
    rule: EcaRule,
    enc0: String,
    enc1: String,
}

#[derive(Clone, Debug)]
pub struct ShardCache {
    dir: PathBuf,
}

impl ShardCache {
    pub fn new(root: impl AsRef<Path>) -> Self {
        ShardCache { dir: root.as_ref().join(format!("v{CODE_VERSION}")) }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, g: EcaRule, k: usize) -> PathBuf {
        self.dir.join(format!("rule{:03}-k{k:02}.json", g.wolfram()))
    }

    /// The stored smallest-encoding-per-rule list for `g` at size `k`.
    pub fn load(&self, g: EcaRule, k: usize) -> Option<Vec<(EcaRule, Encoding)>> {
        let text = fs::read_to_string(self.path(g, k)).ok()?;
        let shard: Shard = serde_json::from_str(&text).ok()?;
        if shard.version != CODE_VERSION || shard.rule != g || shard.k != k {
            return None;
        }
        shard
            .emulated
            .into_iter()
            .map(|e| {
                let enc = encoding_from_strings(&e.enc0, &e.enc1).ok()?;
                (enc.k() == k).then_some((e.rule, enc))
            })
            .collect()
    }

    /// Writes through a temporary file so concurrent readers never see a
    /// partial shard.
    pub fn store(&self, g: EcaRule, k: usize, found: &[(EcaRule, Encoding)]) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(Error::io(&self.dir))?;
        let shard = Shard {
            version: CODE_VERSION.to_string(),
            rule: g,
            k,
            emulated: found
                .iter()
                .map(|(f, enc)| ShardEntry {
                    rule: *f,
                    enc0: enc.enc0_word().to_string(),
                    enc1: enc.enc1_word().to_string(),
                })
                .collect(),
        };
        let path = self.path(g, k);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&shard)?).map_err(Error::io(&tmp))?;
        fs::rename(&tmp, &path).map_err(Error::io(&path))?;
        Ok(())
    }
}
