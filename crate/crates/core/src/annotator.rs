//! MWE annotations and JSON-lines reports.
//!
//! The lexicalized components of a PVC are its postposition and verb
//! complex; the governed noun and any trailing particle stay unannotated.
//!
//! Report records are JSON objects with keys in sorted order:
//!
//! ```text
//! confidence flags host label lemma postposition postposition_offset rules
//! schema sentence_id stem suffix suggestion tokens trailing verb_eojeol
//! ```
//!
//! Match records (no classification) omit `confidence`, `flags`, `label`,
//! `rules` and `suggestion`.

use std::io::{self, Write};

use serde_json::{json, Value};
use thiserror::Error;

use crate::classifier::{Classification, Classified};
use crate::corpus_io::{CuptRow, CuptSentence, Mwe, TaggedSentence};
use crate::matcher::Match;

pub const DEFAULT_CATEGORY: &str = "ADP";
pub const SCHEMA_VERSION: &str = "pvc/1";

pub type MweAnnotation = Mwe;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnotationError {
    #[error("sentence `{sentence}`: annotations overlap at token {token}")]
    Conflict { sentence: String, token: usize },
    #[error("sentence `{0}`: match carries no token positions")]
    MissingTokens(String),
    #[error("sentence `{sentence}`: match tokens out of range")]
    OutOfRange { sentence: String },
}

/// Ten-column rows for a tagged sentence, one per morpheme. Morphemes
/// followed by another of the same eojeol carry `SpaceAfter=No`.
pub fn rows(sentence: &TaggedSentence) -> Vec<CuptRow> {
    let toks = &sentence.tokens;
    toks.iter()
        .enumerate()
        .map(|(i, t)| {
            let joined = toks.get(i + 1).is_some_and(|n| n.eojeol == t.eojeol);
            CuptRow {
                id: (i + 1).to_string(),
                form: t.surface.clone(),
                lemma: t.surface.clone(),
                upos: "_".into(),
                xpos: t.tag.clone(),
                feats: "_".into(),
                head: "_".into(),
                deprel: "_".into(),
                deps: "_".into(),
                misc: if joined { "SpaceAfter=No" } else { "_" }.into(),
            }
        })
        .collect()
}

/// Token indices of the lexicalized components of a tagged match.
pub fn component_tokens(m: &Match) -> Option<Vec<usize>> {
    let t = m.tokens.as_ref()?;
    Some(t.postposition.clone().chain(t.verb.clone()).collect())
}

/// Annotate the PVC-labeled results of one sentence; other labels are
/// skipped. Ids follow textual order.
pub fn annotate(
    sentence: &TaggedSentence,
    results: &[(Match, Classification)],
    category: &str,
) -> Result<CuptSentence, AnnotationError> {
    let mut spans = Vec::new();
    for (m, _) in results.iter().filter(|(_, c)| c.label.is_pvc()) {
        let tokens = component_tokens(m).ok_or_else(|| AnnotationError::MissingTokens(sentence.id.clone()))?;
        if tokens.iter().any(|&i| i >= sentence.tokens.len()) {
            return Err(AnnotationError::OutOfRange {
                sentence: sentence.id.clone(),
            });
        }
        spans.push(tokens);
    }
    spans.sort();
    let mut used = vec![false; sentence.tokens.len()];
    for span in &spans {
        for &i in span {
            if std::mem::replace(&mut used[i], true) {
                return Err(AnnotationError::Conflict {
                    sentence: sentence.id.clone(),
                    token: i,
                });
            }
        }
    }
    let mwes = spans
        .into_iter()
        .enumerate()
        .map(|(i, tokens)| Mwe {
            id: i + 1,
            category: category.to_owned(),
            tokens,
        })
        .collect();
    Ok(CuptSentence {
        id: sentence.id.clone(),
        rows: rows(sentence),
        mwes,
    })
}

/// [`annotate`] over a corpus and its per-sentence results.
pub fn annotate_corpus(
    corpus: &[TaggedSentence],
    results: &[Classified],
    category: &str,
) -> Result<Vec<CuptSentence>, AnnotationError> {
    corpus
        .iter()
        .zip(results)
        .map(|(s, r)| annotate(s, r, category))
        .collect()
}

pub fn match_record(m: &Match) -> Value {
    let mut v = serde_json::to_value(m).expect("match serializes");
    v["schema"] = json!(SCHEMA_VERSION);
    v
}

pub fn record(m: &Match, c: &Classification) -> Value {
    let mut v = match_record(m);
    v["label"] = json!(c.label);
    v["flags"] = json!(c.flags);
    v["rules"] = json!(c.rationale);
    v["confidence"] = json!(c.confidence);
    v["suggestion"] = json!(c.suggestion);
    v
}

pub fn write_matches<'a, W, I>(matches: I, mut w: W) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a Match>,
{
    for m in matches {
        writeln!(w, "{}", match_record(m))?;
    }
    Ok(())
}

/// One JSON line per classified match, in corpus order.
pub fn report_json<W: Write>(results: &[Classified], mut w: W) -> io::Result<()> {
    for (m, c) in results.iter().flatten() {
        writeln!(w, "{}", record(m, c))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, ClassifyOptions, ConstructionLabel};
    use crate::corpus_io::MorphToken;
    use crate::lexicon::builtin;
    use crate::matcher::{match_tagged, MatchOptions};

    fn ex1() -> TaggedSentence {
        let spec = [
            ("게", "NNG", 0),
            ("에", "JKB", 0),
            ("관", "XR", 1),
            ("하", "XSV", 1),
            ("ㄴ", "ETM", 1),
            ("책", "NNG", 2),
        ];
        TaggedSentence::new("1", spec.iter().map(|(s, t, e)| MorphToken::new(*s, *t, *e)).collect())
    }

    fn results(s: &TaggedSentence) -> Vec<(Match, Classification)> {
        let lex = builtin();
        match_tagged(s, &lex, &MatchOptions::default())
            .into_iter()
            .map(|m| {
                let c = classify(&m, s, &lex, &ClassifyOptions::default()).unwrap();
                (m, c)
            })
            .collect()
    }

    #[test]
    fn ex1_columns() {
        let s = ex1();
        let cupt = annotate(&s, &results(&s), DEFAULT_CATEGORY).unwrap();
        let col = cupt.mwe_column();
        assert_eq!(col, ["*", "1:ADP", "1", "1", "1", "*"]);
        assert_eq!(cupt.rows[0].misc, "SpaceAfter=No");
        assert_eq!(cupt.rows[1].misc, "_");
    }

    #[test]
    fn non_pvc_unannotated() {
        let s = ex1();
        let mut r = results(&s);
        r[0].1.label = ConstructionLabel::VerbArg;
        assert!(annotate(&s, &r, "ADP").unwrap().mwes.is_empty());
    }

    #[test]
    fn overlap_conflicts() {
        let s = ex1();
        let mut r = results(&s);
        r.push(r[0].clone());
        assert!(matches!(annotate(&s, &r, "ADP"), Err(AnnotationError::Conflict { .. })));
    }

    #[test]
    fn record_keys_sorted() {
        let s = ex1();
        let r = results(&s);
        let line = record(&r[0].0, &r[0].1).to_string();
        assert!(
            line.starts_with(r#"{"confidence":"certain","flags":[],"host":0,"label":"PvcN""#),
            "{line}"
        );
        let mut out = Vec::new();
        report_json(&[], &mut out).unwrap();
        assert!(out.is_empty());
    }
}
