use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

/// The three languages of the parallel test sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SourceLanguage {
    Java,
    Cpp,
    Python,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown source language `{0}` (expected java, cpp or python)")]
pub struct UnknownLanguage(pub alloc::string::String);

impl SourceLanguage {
    pub const ALL: [SourceLanguage; 3] = [Self::Java, Self::Cpp, Self::Python];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Java => "java",
            Self::Cpp => "cpp",
            Self::Python => "python",
        }
    }

    /// Java and C++ delimit statements with `;` and blocks with braces.
    pub fn is_c_family(self) -> bool {
        !matches!(self, Self::Python)
    }
}

impl fmt::Display for SourceLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceLanguage {
    type Err = UnknownLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "java" => Ok(Self::Java),
            "cpp" | "c++" | "cxx" => Ok(Self::Cpp),
            "python" | "py" | "python3" => Ok(Self::Python),
            _ => Err(UnknownLanguage(s.into())),
        }
    }
}
