//! JSON-lines knot corpus.

use serde::{Deserialize, Serialize};

use hfk_core::diagram::{parse_braid, PlanarDiagram};

use crate::CliError;

const BUNDLED: &str = include_str!("../corpus/knots.jsonl");

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternating: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<String>,
    /// `[alexander, maslov, rank]` triples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hfk: Option<Vec<[i64; 3]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<Vec<[i64; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strands: Option<usize>,
    /// Asserted to be an L-space knot.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub lspace: bool,
    #[serde(default)]
    pub expected: Expected,
}

impl CorpusEntry {
    /// The PD code when present, otherwise the braid closure. An empty PD
    /// list is the unknot.
    pub fn diagram(&self) -> Result<PlanarDiagram, CliError> {
        if let Some(pd) = &self.pd {
            if pd.is_empty() {
                return Ok(PlanarDiagram::unknot());
            }
            return PlanarDiagram::from_tuples(pd).map_err(|e| CliError::from_diagram(&self.name, e));
        }
        if let Some(word) = &self.braid {
            let strands = self.strands.unwrap_or_else(|| default_strands(word));
            return parse_braid(word, strands).map_err(|e| CliError::from_diagram(&self.name, e));
        }
        Err(CliError::Parse(format!("{}: entry has neither pd nor braid", self.name)))
    }

    pub fn braid_word(&self) -> Option<(Vec<i64>, usize)> {
        let w = self.braid.clone()?;
        let s = self.strands.unwrap_or_else(|| default_strands(&w));
        Some((w, s))
    }
}

pub fn default_strands(word: &[i64]) -> usize {
    word.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled corpus is well formed")
    }

    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let e: CorpusEntry =
                serde_json::from_str(line).map_err(|e| CliError::Parse(format!("corpus line {}: {e}", i + 1)))?;
            entries.push(e);
        }
        Ok(Corpus { entries })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}
