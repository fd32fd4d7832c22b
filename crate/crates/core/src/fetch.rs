//! HTTP GET with a record/replay switch.
//!
//! Replay fixtures live in a directory, one file per request, named by the
//! first 16 hex digits of the SHA-256 of the canonical request key:
//! `scheme://host[:port]/path?k=v&k=v` with the query pairs percent-decoded
//! and sorted. `index.tsv` beside them maps file name to key for humans.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use sha2::{Digest, Sha256};
use url::Url;

use crate::error::{Error, Result};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);
pub const FIXTURE_INDEX: &str = "index.tsv";
const USER_AGENT: &str = concat!("pivot-clir/", env!("CARGO_PKG_VERSION"));

/// Canonical form of a request URL used to key fixtures.
pub fn canonical_key(url: &Url) -> String {
    let mut pairs: Vec<(String, String)> = url
        .query_pairs()
        .map(|(k, v)| (k.into_owned(), v.into_owned()))
        .collect();
    pairs.sort();
    let mut key = format!("{}://{}", url.scheme(), url.host_str().unwrap_or_default());
    if let Some(port) = url.port() {
        key.push_str(&format!(":{port}"));
    }
    key.push_str(url.path());
    if !pairs.is_empty() {
        let query: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        key.push('?');
        key.push_str(&query.join("&"));
    }
    key
}

pub fn fixture_hash(url: &Url) -> String {
    let digest = Sha256::digest(canonical_key(url).as_bytes());
    hex::encode(digest)[..16].to_owned()
}

/// Read-only set of recorded responses.
#[derive(Debug, Clone)]
pub struct FixtureStore {
    dir: PathBuf,
    files: Arc<HashMap<String, PathBuf>>,
}

impl FixtureStore {
    pub fn open(dir: &Path) -> Result<Self> {
        let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
        let mut files = HashMap::new();
        for entry in entries {
            let path = entry.map_err(|e| Error::io(dir, e))?.path();
            if !path.is_file() || path.file_name().and_then(|n| n.to_str()) == Some(FIXTURE_INDEX) {
                continue;
            }
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                files.insert(stem.to_owned(), path);
            }
        }
        Ok(FixtureStore {
            dir: dir.to_owned(),
            files: Arc::new(files),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn get(&self, url: &Url) -> Result<String> {
        let path = self
            .files
            .get(&fixture_hash(url))
            .ok_or_else(|| Error::UnrecordedRequest(canonical_key(url)))?;
        std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
    }
}

#[derive(Debug, Clone)]
enum Mode {
    Live {
        agent: ureq::Agent,
        record_to: Option<PathBuf>,
    },
    Replay(FixtureStore),
}

/// Blocking GET client. In replay mode no socket is ever opened; a request
/// without a fixture is an [`Error::UnrecordedRequest`].
#[derive(Debug, Clone)]
pub struct FetchClient {
    mode: Mode,
    timeout: Duration,
}

impl FetchClient {
    pub fn live(timeout: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .user_agent(USER_AGENT)
            .build()
            .into();
        FetchClient {
            mode: Mode::Live {
                agent,
                record_to: None,
            },
            timeout,
        }
    }

    /// Live client that also writes every successful response as a fixture.
    pub fn recording(timeout: Duration, dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut client = Self::live(timeout);
        if let Mode::Live { record_to, .. } = &mut client.mode {
            *record_to = Some(dir.to_owned());
        }
        Ok(client)
    }

    pub fn replay(dir: &Path) -> Result<Self> {
        Ok(FetchClient {
            mode: Mode::Replay(FixtureStore::open(dir)?),
            timeout: DEFAULT_TIMEOUT,
        })
    }

    pub fn is_replay(&self) -> bool {
        matches!(self.mode, Mode::Replay(_))
    }

    pub fn timeout(&self) -> Duration {
        self.timeout
    }

    pub fn get(&self, url: &Url) -> Result<String> {
        match &self.mode {
            Mode::Replay(store) => store.get(url),
            Mode::Live { agent, record_to } => {
                let body = agent
                    .get(url.as_str())
                    .call()
                    .and_then(|mut resp| resp.body_mut().read_to_string())
                    .map_err(|e| Error::NetworkFailure(format!("{url}: {e}")))?;
                if let Some(dir) = record_to {
                    record(dir, url, &body)?;
                }
                Ok(body)
            }
        }
    }
}

fn record(dir: &Path, url: &Url, body: &str) -> Result<()> {
    let ext = if body.trim_start().starts_with('{') {
        "json"
    } else {
        "txt"
    };
    let name = format!("{}.{ext}", fixture_hash(url));
    let path = dir.join(&name);
    std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;

    let index = dir.join(FIXTURE_INDEX);
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&index)
        .map_err(|e| Error::io(&index, e))?;
    writeln!(f, "{name}\t{}", canonical_key(url)).map_err(|e| Error::io(&index, e))
}
