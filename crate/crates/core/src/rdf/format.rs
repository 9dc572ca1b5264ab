use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse::parse_graph, RdfError};

/// The RDF serializations the toolkit reads and writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RdfFormat {
    Turtle,
    RdfXml,
    NTriples,
    JsonLd,
}

impl RdfFormat {
    pub const ALL: [RdfFormat; 4] = [RdfFormat::Turtle, RdfFormat::RdfXml, RdfFormat::NTriples, RdfFormat::JsonLd];

    pub fn media_type(self) -> &'static str {
        match self {
            RdfFormat::Turtle => "text/turtle",
            RdfFormat::RdfXml => "application/rdf+xml",
            RdfFormat::NTriples => "application/n-triples",
            RdfFormat::JsonLd => "application/ld+json",
        }
    }

    /// Parses a media type, ignoring parameters and case.
    pub fn from_media_type(media_type: &str) -> Option<RdfFormat> {
        let essence = media_type.split(';').next().unwrap_or_default().trim().to_ascii_lowercase();
        RdfFormat::ALL.into_iter().find(|f| f.media_type() == essence)
    }

    pub fn extension(self) -> &'static str {
        match self {
            RdfFormat::Turtle => "ttl",
            RdfFormat::RdfXml => "rdf",
            RdfFormat::NTriples => "nt",
            RdfFormat::JsonLd => "jsonld",
        }
    }

    pub fn from_extension(ext: &str) -> Option<RdfFormat> {
        match ext.to_ascii_lowercase().as_str() {
            "ttl" | "turtle" => Some(RdfFormat::Turtle),
            "rdf" | "owl" | "xml" => Some(RdfFormat::RdfXml),
            "nt" => Some(RdfFormat::NTriples),
            "jsonld" | "json" => Some(RdfFormat::JsonLd),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RdfFormat::Turtle => "turtle",
            RdfFormat::RdfXml => "rdf-xml",
            RdfFormat::NTriples => "n-triples",
            RdfFormat::JsonLd => "json-ld",
        }
    }
}

impl fmt::Display for RdfFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RdfFormat::Turtle => "Turtle",
            RdfFormat::RdfXml => "RDF/XML",
            RdfFormat::NTriples => "N-Triples",
            RdfFormat::JsonLd => "JSON-LD",
        })
    }
}

impl FromStr for RdfFormat {
    type Err = RdfError;

    /// Accepts a format name, a file extension or a media type.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lowered = s.trim().to_ascii_lowercase();
        if let Some(f) = RdfFormat::ALL.into_iter().find(|f| f.name() == lowered) {
            return Ok(f);
        }
        if let Some(f) = RdfFormat::from_media_type(&lowered) {
            return Ok(f);
        }
        match lowered.as_str() {
            "rdfxml" | "rdf/xml" | "xml" => Ok(RdfFormat::RdfXml),
            "ntriples" => Ok(RdfFormat::NTriples),
            "jsonld" => Ok(RdfFormat::JsonLd),
            other => RdfFormat::from_extension(other).ok_or_else(|| RdfError::UnknownFormat(s.to_string())),
        }
    }
}

fn format_from_hint(hint: &str) -> Option<RdfFormat> {
    let hint = hint.trim();
    if let Some(f) = RdfFormat::from_media_type(hint) {
        return Some(f);
    }
    let name = hint.rsplit(['/', '\\']).next().unwrap_or(hint);
    let name = name.split(['?', '#']).next().unwrap_or(name);
    let (_, ext) = name.rsplit_once('.')?;
    RdfFormat::from_extension(ext)
}

/// Guesses the serialization of `bytes`.
///
/// A recognised hint (file name or media type) wins over content sniffing.
/// Sniffing looks at the first significant token: an XML prolog or `<rdf:RDF`
/// means RDF/XML, `{` or `[` means JSON-LD, a `@prefix`/`PREFIX` style
/// directive means Turtle. Otherwise the bytes are trial-parsed as N-Triples
/// and then as Turtle.
pub fn detect_format(bytes: &[u8], hint: Option<&str>) -> Result<RdfFormat, RdfError> {
    if bytes.is_empty() {
        return Err(RdfError::EmptyInput);
    }
    if let Some(f) = hint.and_then(format_from_hint) {
        return Ok(f);
    }
    let text = String::from_utf8_lossy(&bytes[..bytes.len().min(4096)]);
    let mut rest = text.trim_start_matches('\u{feff}').trim_start();
    // Turtle and N-Triples comments
    while rest.starts_with('#') {
        rest = rest.split_once('\n').map(|(_, r)| r).unwrap_or("").trim_start();
    }
    if rest.starts_with("<?xml") || rest.starts_with("<rdf:RDF") || rest.starts_with("<!--") {
        return Ok(RdfFormat::RdfXml);
    }
    if rest.starts_with('{') || rest.starts_with('[') {
        return Ok(RdfFormat::JsonLd);
    }
    let head: String = rest.chars().take(8).collect::<String>().to_ascii_lowercase();
    if head.starts_with("@prefix")
        || head.starts_with("@base")
        || head.starts_with("prefix")
        || head.starts_with("base ")
    {
        return Ok(RdfFormat::Turtle);
    }
    if rest.is_empty() {
        return Err(RdfError::UndetectableFormat);
    }
    if parse_graph(bytes, RdfFormat::NTriples, None).is_ok() {
        return Ok(RdfFormat::NTriples);
    }
    if parse_graph(bytes, RdfFormat::Turtle, None).is_ok() {
        return Ok(RdfFormat::Turtle);
    }
    Err(RdfError::UndetectableFormat)
}
