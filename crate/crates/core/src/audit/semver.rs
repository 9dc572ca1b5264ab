use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A strict `X.Y.Z` release number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SemVer {
    pub major: u64,
    pub minor: u64,
    pub patch: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed version {text:?}: {reason}")]
pub struct MalformedVersion {
    pub text: String,
    pub reason: &'static str,
}

impl SemVer {
    pub const fn new(major: u64, minor: u64, patch: u64) -> Self {
        SemVer { major, minor, patch }
    }

    /// First release of a major line (`x.0.0`).
    pub fn is_major_release(&self) -> bool {
        self.minor == 0 && self.patch == 0
    }
}

impl fmt::Display for SemVer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.major, self.minor, self.patch)
    }
}

impl FromStr for SemVer {
    type Err = MalformedVersion;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_semver(s)
    }
}

impl Serialize for MalformedVersion {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses exactly three dot-separated runs of ASCII digits.
pub fn parse_semver(text: &str) -> Result<SemVer, MalformedVersion> {
    let bad = |reason| MalformedVersion { text: text.to_string(), reason };
    let parts: Vec<&str> = text.split('.').collect();
    if parts.len() != 3 {
        return Err(bad("expected three components"));
    }
    let mut nums = [0u64; 3];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("components must be decimal digits"));
        }
        *slot = part.parse().map_err(|_| bad("component out of range"))?;
    }
    Ok(SemVer::new(nums[0], nums[1], nums[2]))
}
