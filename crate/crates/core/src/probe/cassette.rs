//! Record/replay of HTTP exchanges as one JSON file per exchange.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use base64::Engine;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::transport::{HttpRequest, HttpResponse, Transport, TransportError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordedRequest {
    pub url: String,
    pub headers: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordedResponse {
    pub status: u16,
    pub headers: BTreeMap<String, String>,
    pub body_base64: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CassetteEntry {
    pub request: RecordedRequest,
    pub response: RecordedResponse,
}

fn lower_headers(headers: &[(String, String)]) -> BTreeMap<String, String> {
    let mut out: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in headers {
        out.entry(k.to_ascii_lowercase())
            .and_modify(|existing| {
                existing.push_str(", ");
                existing.push_str(v);
            })
            .or_insert_with(|| v.clone());
    }
    out
}

impl CassetteEntry {
    pub fn new(request: &HttpRequest, response: &HttpResponse) -> Self {
        CassetteEntry {
            request: RecordedRequest { url: request.url.clone(), headers: lower_headers(&request.headers) },
            response: RecordedResponse {
                status: response.status,
                headers: lower_headers(&response.headers),
                body_base64: base64::engine::general_purpose::STANDARD.encode(&response.body),
            },
        }
    }

    pub fn key(&self) -> ExchangeKey {
        ExchangeKey { url: self.request.url.clone(), accept: self.request.headers.get("accept").cloned() }
    }

    pub fn to_response(&self) -> Result<HttpResponse, base64::DecodeError> {
        Ok(HttpResponse {
            status: self.response.status,
            headers: self.response.headers.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            body: base64::engine::general_purpose::STANDARD.decode(&self.response.body_base64)?,
        })
    }
}

/// Exchanges are matched on URL and Accept header.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeKey {
    pub url: String,
    pub accept: Option<String>,
}

impl ExchangeKey {
    pub fn of(request: &HttpRequest) -> Self {
        ExchangeKey { url: request.url.clone(), accept: request.accept().map(str::to_string) }
    }

    pub fn file_name(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.url.as_bytes());
        h.update([0]);
        if let Some(a) = &self.accept {
            h.update([1]);
            h.update(a.as_bytes());
        }
        format!("{}.json", &hex::encode(h.finalize())[..24])
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CassetteError {
    #[error("cassette I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed cassette entry {path}: {message}")]
    Malformed { path: PathBuf, message: String },
}

/// Replays recorded exchanges. With an upstream transport, missing exchanges
/// are fetched and written to the directory; without one they surface as
/// `TransportError::NotRecorded`.
pub struct CassetteTransport {
    dir: PathBuf,
    entries: RwLock<HashMap<ExchangeKey, CassetteEntry>>,
    upstream: Option<Arc<dyn Transport>>,
}

impl CassetteTransport {
    pub fn replay(dir: impl AsRef<Path>) -> Result<Self, CassetteError> {
        Self::open(dir, None)
    }

    pub fn recording(dir: impl AsRef<Path>, upstream: Arc<dyn Transport>) -> Result<Self, CassetteError> {
        Self::open(dir, Some(upstream))
    }

    fn open(dir: impl AsRef<Path>, upstream: Option<Arc<dyn Transport>>) -> Result<Self, CassetteError> {
        let dir = dir.as_ref().to_path_buf();
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CassetteError::Io { path, source }
        };
        let mut entries = HashMap::new();
        if dir.exists() {
            let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(io_err(&dir))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            for path in paths {
                let text = fs::read_to_string(&path).map_err(io_err(&path))?;
                let entry: CassetteEntry = serde_json::from_str(&text)
                    .map_err(|e| CassetteError::Malformed { path: path.clone(), message: e.to_string() })?;
                entry
                    .to_response()
                    .map_err(|e| CassetteError::Malformed { path: path.clone(), message: e.to_string() })?;
                entries.insert(entry.key(), entry);
            }
        } else if upstream.is_some() {
            fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        }
        Ok(CassetteTransport { dir, entries: RwLock::new(entries), upstream })
    }

    pub fn len(&self) -> usize {
        self.entries.read().map(|e| e.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn store(&self, entry: &CassetteEntry) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let text = serde_json::to_string_pretty(entry).map_err(io::Error::other)?;
        fs::write(self.dir.join(entry.key().file_name()), text + "\n")
    }
}

impl Transport for CassetteTransport {
    fn execute(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        let key = ExchangeKey::of(request);
        if let Some(entry) = self.entries.read().ok().and_then(|e| e.get(&key).cloned()) {
            return entry.to_response().map_err(|e| TransportError::Connection(format!("corrupt cassette body: {e}")));
        }
        let Some(upstream) = &self.upstream else {
            return Err(TransportError::NotRecorded(match &key.accept {
                Some(a) => format!("{} (Accept: {a})", key.url),
                None => key.url,
            }));
        };
        let response = upstream.execute(request)?;
        let entry = CassetteEntry::new(request, &response);
        self.store(&entry).map_err(|e| TransportError::Connection(format!("cannot write cassette: {e}")))?;
        if let Ok(mut entries) = self.entries.write() {
            entries.insert(key, entry);
        }
        Ok(response)
    }
}
