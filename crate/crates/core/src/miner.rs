//! Candidate extraction over tagged corpora.
//!
//! Every adposition · stem · 하 · ending sequence is counted per stem, with
//! the adpositions, suffixes and (adposition, suffix) pairs it occurs with.
//! Bare-noun uses of the same stem feed a boundness score: stems that never
//! stand alone are the likely bound stems.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus_io::TaggedSentence;
use crate::morph;
use crate::tagset::TagSet;

pub const DEFAULT_TOP_K: usize = 300;

pub const REPORT_HEADER: &str =
    "stem\ttotal\tdistinct_adps\tdistinct_suffixes\tdistinct_triples\tstandalone\tboundness";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinerError {
    #[error("k must be positive")]
    ZeroK,
    #[error("boundness undefined for `{0}`: no occurrences")]
    UndefinedScore(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemStats {
    pub stem: String,
    pub total: u64,
    pub adpositions: BTreeSet<String>,
    pub suffixes: BTreeSet<String>,
    /// (adposition, suffix) pairs; the stem is implicit.
    pub triples: BTreeSet<(String, String)>,
    pub standalone: u64,
}

impl StemStats {
    pub fn new(stem: impl Into<String>) -> Self {
        StemStats {
            stem: stem.into(),
            ..Default::default()
        }
    }

    pub fn distinct_adpositions(&self) -> usize {
        self.adpositions.len()
    }

    pub fn distinct_suffixes(&self) -> usize {
        self.suffixes.len()
    }

    pub fn distinct_triples(&self) -> usize {
        self.triples.len()
    }

    pub fn record(&mut self, adposition: &str, suffix: &str) {
        self.total += 1;
        self.adpositions.insert(adposition.to_owned());
        self.suffixes.insert(suffix.to_owned());
        self.triples.insert((adposition.to_owned(), suffix.to_owned()));
    }

    pub fn merge(&mut self, other: StemStats) {
        self.total += other.total;
        self.standalone += other.standalone;
        self.adpositions.extend(other.adpositions);
        self.suffixes.extend(other.suffixes);
        self.triples.extend(other.triples);
    }

    pub fn boundness(&self) -> Result<f64, MinerError> {
        boundness(self)
    }
}

/// total / (total + standalone): 1.0 for a stem never seen as a free noun.
pub fn boundness(s: &StemStats) -> Result<f64, MinerError> {
    let denom = s.total + s.standalone;
    if denom == 0 {
        return Err(MinerError::UndefinedScore(s.stem.clone()));
    }
    Ok(s.total as f64 / denom as f64)
}

/// One pattern occurrence: adposition run, stem token, realized suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub adposition: String,
    pub stem: String,
    pub suffix: String,
    /// Index of the stem token.
    pub position: usize,
}

/// Pattern occurrences in one sentence, in token order.
///
/// The adposition token ends its eojeol after at least one host morpheme;
/// the stem (root or noun tag) opens the next eojeol, followed by 하 with a
/// verbalizer tag and one or more endings. Consecutive adposition tokens
/// form one adposition (에 + 도 → 에도); consecutive endings form the suffix.
pub fn occurrences(sentence: &TaggedSentence, tags: &TagSet) -> Vec<Occurrence> {
    let toks = &sentence.tokens;
    let mut out = Vec::new();
    for j in 0..toks.len().saturating_sub(3) {
        let (a, s, h, e) = (&toks[j], &toks[j + 1], &toks[j + 2], &toks[j + 3]);
        if !tags.is_adposition(&a.tag)
            || a.eojeol == s.eojeol
            || !tags.is_stem(&s.tag)
            || h.surface != "하"
            || !tags.is_verbalizer(&h.tag)
            || !tags.is_ending(&e.tag)
            || h.eojeol != s.eojeol
            || e.eojeol != s.eojeol
        {
            continue;
        }
        let mut start = j;
        while start > 0 && toks[start - 1].eojeol == a.eojeol && tags.is_adposition(&toks[start - 1].tag) {
            start -= 1;
        }
        if start == 0 || toks[start - 1].eojeol != a.eojeol {
            continue;
        }
        let mut end = j + 3;
        while end < toks.len() && toks[end].eojeol == s.eojeol && tags.is_ending(&toks[end].tag) {
            end += 1;
        }
        let endings: Vec<&str> = toks[j + 3..end].iter().map(|t| t.surface.as_str()).collect();
        out.push(Occurrence {
            adposition: toks[start..=j].iter().map(|t| t.surface.as_str()).collect(),
            stem: s.surface.clone(),
            suffix: morph::realize("하", &endings),
            position: j + 1,
        });
    }
    out
}

/// Partial counts, mergeable in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinerCounts {
    stats: BTreeMap<String, StemStats>,
    bare: HashMap<String, u64>,
}

impl MinerCounts {
    pub fn add_sentence(&mut self, sentence: &TaggedSentence, tags: &TagSet) {
        for occ in occurrences(sentence, tags) {
            self.stats
                .entry(occ.stem.clone())
                .or_insert_with(|| StemStats::new(occ.stem.clone()))
                .record(&occ.adposition, &occ.suffix);
        }
        let toks = &sentence.tokens;
        for (i, t) in toks.iter().enumerate() {
            if !tags.is_noun(&t.tag) {
                continue;
            }
            let verbalized = toks
                .get(i + 1)
                .is_some_and(|n| n.surface == "하" && tags.is_verbalizer(&n.tag));
            if !verbalized {
                *self.bare.entry(t.surface.clone()).or_default() += 1;
            }
        }
    }

    pub fn merge(mut self, other: MinerCounts) -> MinerCounts {
        for (stem, s) in other.stats {
            match self.stats.get_mut(&stem) {
                Some(mine) => mine.merge(s),
                None => {
                    self.stats.insert(stem, s);
                }
            }
        }
        for (stem, n) in other.bare {
            *self.bare.entry(stem).or_default() += n;
        }
        self
    }

    /// Stems seen in the pattern at least once, with their bare-noun counts.
    pub fn finish(self) -> BTreeMap<String, StemStats> {
        let MinerCounts { mut stats, bare } = self;
        for (stem, s) in stats.iter_mut() {
            s.standalone = bare.get(stem).copied().unwrap_or(0);
        }
        stats
    }
}

pub fn mine(corpus: &[TaggedSentence]) -> BTreeMap<String, StemStats> {
    mine_with(corpus, &TagSet::default())
}

pub fn mine_with(corpus: &[TaggedSentence], tags: &TagSet) -> BTreeMap<String, StemStats> {
    let mut counts = MinerCounts::default();
    for s in corpus {
        counts.add_sentence(s, tags);
    }
    counts.finish()
}

/// Same result as [`mine_with`], computed on the rayon pool.
pub fn mine_parallel(corpus: &[TaggedSentence], tags: &TagSet) -> BTreeMap<String, StemStats> {
    corpus
        .par_iter()
        .fold(MinerCounts::default, |mut acc, s| {
            acc.add_sentence(s, tags);
            acc
        })
        .reduce(MinerCounts::default, MinerCounts::merge)
        .finish()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateRow {
    pub stats: StemStats,
    /// `None` when the stem has no occurrences at all.
    pub boundness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateReport {
    pub k: usize,
    pub rows: Vec<CandidateRow>,
}

/// Top `k` stems by pattern frequency, ties broken by stem code points.
pub fn rank<'a, I>(stats: I, k: usize) -> Result<CandidateReport, MinerError>
where
    I: IntoIterator<Item = &'a StemStats>,
{
    if k == 0 {
        return Err(MinerError::ZeroK);
    }
    let mut rows: Vec<&StemStats> = stats.into_iter().collect();
    rows.sort_by(|a, b| b.total.cmp(&a.total).then_with(|| a.stem.cmp(&b.stem)));
    rows.truncate(k);
    Ok(CandidateReport {
        k,
        rows: rows
            .into_iter()
            .map(|s| CandidateRow {
                boundness: boundness(s).ok(),
                stats: s.clone(),
            })
            .collect(),
    })
}

pub fn report_tsv(report: &CandidateReport) -> String {
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for row in &report.rows {
        let s = &row.stats;
        let b = row.boundness.map_or_else(|| "NA".to_owned(), |b| format!("{b:.4}"));
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.stem,
            s.total,
            s.distinct_adpositions(),
            s.distinct_suffixes(),
            s.distinct_triples(),
            s.standalone,
            b
        );
    }
    out
}
