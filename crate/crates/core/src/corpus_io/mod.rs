//! Corpus readers and writers.
//!
//! Three input formats are supported: plain text, a three-column
//! morpheme-per-line tagged format, and ten-column treebank records. Output
//! is written as cupt (treebank columns plus an MWE column).

mod conllu;
mod cupt;
mod plain;
mod tagged;

use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use conllu::read_conllu;
pub use cupt::{read_cupt, write_cupt, CuptRow, CuptSentence, Mwe, CUPT_GLOBAL_COLUMNS};
pub use plain::read_plain;
pub use tagged::{read_tagged, write_tagged};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("invalid UTF-8 at byte {offset}")]
    Decode { offset: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cupt serialization: {0}")]
    Serialize(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CorpusError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CorpusError::Parse {
            line,
            message: message.into(),
        }
    }
}

/// A whitespace-tokenized sentence of raw text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSentence {
    pub id: String,
    pub eojeols: Vec<String>,
    /// Byte span of each eojeol in the source stream.
    pub offsets: Vec<(usize, usize)>,
}

impl RawSentence {
    /// Build a sentence from eojeols alone, with offsets as if the eojeols
    /// were joined by single spaces.
    pub fn from_eojeols<I, S>(id: impl Into<String>, eojeols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let eojeols: Vec<String> = eojeols.into_iter().map(Into::into).collect();
        let mut offsets = Vec::with_capacity(eojeols.len());
        let mut pos = 0;
        for e in &eojeols {
            offsets.push((pos, pos + e.len()));
            pos += e.len() + 1;
        }
        RawSentence {
            id: id.into(),
            eojeols,
            offsets,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphToken {
    pub surface: String,
    pub tag: String,
    pub eojeol: usize,
}

impl MorphToken {
    pub fn new(surface: impl Into<String>, tag: impl Into<String>, eojeol: usize) -> Self {
        MorphToken {
            surface: surface.into(),
            tag: tag.into(),
            eojeol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub id: String,
    pub tokens: Vec<MorphToken>,
}

impl TaggedSentence {
    pub fn new(id: impl Into<String>, tokens: Vec<MorphToken>) -> Self {
        TaggedSentence { id: id.into(), tokens }
    }

    /// Token index ranges of each eojeol, in order.
    pub fn eojeol_spans(&self) -> Vec<std::ops::Range<usize>> {
        let mut spans = Vec::new();
        let mut start = 0;
        for i in 1..=self.tokens.len() {
            if i == self.tokens.len() || self.tokens[i].eojeol != self.tokens[start].eojeol {
                spans.push(start..i);
                start = i;
            }
        }
        spans
    }

    /// Eojeols rebuilt from morpheme surfaces, attaching bare final jamo and
    /// contracting 하 + 아/어 as in [`crate::morph::realize`].
    pub fn eojeol_surfaces(&self) -> Vec<String> {
        self.eojeol_spans()
            .into_iter()
            .map(|r| {
                let parts: Vec<&str> = self.tokens[r].iter().map(|t| t.surface.as_str()).collect();
                crate::morph::realize("", &parts)
            })
            .collect()
    }
}

/// Split `tag` on `+` and `surface` accordingly, producing one token per
/// morpheme.
pub(crate) fn split_morphemes(
    surface: &str,
    tag: &str,
    eojeol: usize,
    line: usize,
) -> Result<Vec<MorphToken>, CorpusError> {
    if !tag.contains('+') {
        return Ok(vec![MorphToken::new(surface, tag, eojeol)]);
    }
    let tags: Vec<&str> = tag.split('+').collect();
    if tags.iter().any(|t| t.is_empty()) {
        return Err(CorpusError::parse(line, format!("empty tag in `{tag}`")));
    }
    let parts = crate::morph::split_fused(surface, &tags)
        .ok_or_else(|| CorpusError::parse(line, format!("cannot split `{surface}` over tags `{tag}`")))?;
    Ok(parts
        .into_iter()
        .zip(tags)
        .map(|(s, t)| MorphToken::new(s, t, eojeol))
        .collect())
}

pub(crate) fn decode(bytes: &[u8]) -> Result<&str, CorpusError> {
    std::str::from_utf8(bytes).map_err(|e| CorpusError::Decode {
        offset: e.valid_up_to(),
    })
}
