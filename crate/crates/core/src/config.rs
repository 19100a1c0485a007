//! Run configuration: `key = value` files, overridable key by key.
//!
//! ```text
//! # comments start with '#'
//! lexicon = my-lexicon.tsv
//! strict = true
//! trailing_particles = 는,도,만
//! theta_free = 0.8
//! tag.adverb = MAG,MAJ
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::annotator::DEFAULT_CATEGORY;
use crate::classifier::{ClassifyOptions, Thresholds};
use crate::lexicon::LexiconFormat;
use crate::matcher::MatchOptions;
use crate::miner::DEFAULT_TOP_K;
use crate::tagset::TagSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    Invalid { key: String, value: String, reason: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ConfigError>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    Raw,
    #[default]
    Tagged,
    Conllu,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raw" | "plain" => Ok(InputFormat::Raw),
            "tagged" | "tsv" => Ok(InputFormat::Tagged),
            "conllu" => Ok(InputFormat::Conllu),
            _ => Err("expected raw, tagged or conllu".into()),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Raw => "raw",
            InputFormat::Tagged => "tagged",
            InputFormat::Conllu => "conllu",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// None selects the built-in lexicon.
    pub lexicon: Option<PathBuf>,
    /// None guesses from the file extension.
    pub lexicon_format: Option<LexiconFormat>,
    /// Suffix forms accepted beyond the default inventory, e.g. 함.
    pub extra_suffixes: Vec<String>,
    pub tags: TagSet,
    pub trailing_particles: Vec<String>,
    pub strict: bool,
    pub skip_adverbs: bool,
    pub open_stems: bool,
    pub legal_register: bool,
    pub thresholds: Thresholds,
    pub k: usize,
    pub category: String,
    pub format: InputFormat,
    /// 0 uses every core; 1 runs serially.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let m = MatchOptions::default();
        RunConfig {
            lexicon: None,
            lexicon_format: None,
            extra_suffixes: Vec::new(),
            tags: m.tags,
            trailing_particles: m.trailing_particles,
            strict: m.strict,
            skip_adverbs: m.skip_adverbs,
            open_stems: m.open_stems,
            legal_register: false,
            thresholds: Thresholds::default(),
            k: DEFAULT_TOP_K,
            category: DEFAULT_CATEGORY.into(),
            format: InputFormat::default(),
            threads: 1,
        }
    }
}

fn list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Invalid {
        key: key.into(),
        value: value.into(),
        reason: e.to_string(),
    })
}

impl RunConfig {
    /// Parse a config file on top of the defaults.
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1 })?;
            self.set(key.trim(), value.trim()).map_err(|e| ConfigError::AtLine {
                line: n + 1,
                source: Box::new(e),
            })?;
        }
        Ok(())
    }

    /// Set one key; values are validated immediately.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let invalid = |reason: &str| ConfigError::Invalid {
            key: key.into(),
            value: value.into(),
            reason: reason.into(),
        };
        match key {
            "lexicon" => self.lexicon = (!value.is_empty()).then(|| PathBuf::from(value)),
            "lexicon_format" => {
                self.lexicon_format = Some(match value {
                    "tsv" => LexiconFormat::Tsv,
                    "json" => LexiconFormat::Json,
                    _ => return Err(invalid("expected tsv or json")),
                })
            }
            "extra_suffixes" => self.extra_suffixes = list(value),
            "trailing_particles" => self.trailing_particles = list(value),
            "strict" => self.strict = parse(key, value)?,
            "skip_adverbs" => self.skip_adverbs = parse(key, value)?,
            "open_stems" => self.open_stems = parse(key, value)?,
            "legal_register" => self.legal_register = parse(key, value)?,
            "theta_free" => {
                let v: f64 = parse(key, value)?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(invalid("must lie in [0, 1]"));
                }
                self.thresholds.free = v;
            }
            "theta_fixed" => {
                let v: usize = parse(key, value)?;
                if v == 0 {
                    return Err(invalid("must be positive"));
                }
                self.thresholds.fixed = v;
            }
            "k" => {
                let v: usize = parse(key, value)?;
                if v == 0 {
                    return Err(invalid("must be positive"));
                }
                self.k = v;
            }
            "category" => {
                if value.is_empty() || value.contains(|c: char| c.is_whitespace() || c == ':' || c == ';') {
                    return Err(invalid("must be a nonempty label without spaces, ':' or ';'"));
                }
                self.category = value.into();
            }
            "format" => self.format = parse(key, value)?,
            "threads" => self.threads = parse(key, value)?,
            _ => match key.strip_prefix("tag.") {
                Some(class) => self
                    .tags
                    .set(class, value)
                    .map_err(|_| ConfigError::UnknownKey(key.into()))?,
                None => return Err(ConfigError::UnknownKey(key.into())),
            },
        }
        Ok(())
    }

    pub fn match_options(&self) -> MatchOptions {
        MatchOptions {
            trailing_particles: self.trailing_particles.clone(),
            strict: self.strict,
            skip_adverbs: self.skip_adverbs,
            open_stems: self.open_stems,
            tags: self.tags.clone(),
        }
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            legal_register: self.legal_register,
            thresholds: self.thresholds,
            tags: self.tags.clone(),
        }
    }
}
