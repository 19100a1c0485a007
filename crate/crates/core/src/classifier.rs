//! Construction labels for matches in context.
//!
//! Rules run in a fixed order and the first decisive one sets the label:
//!
//! | id | condition | non-predicative stem | predicative stem |
//! |----|-----------|----------------------|------------------|
//! | R1 | tense infix, or an inflection outside the licensed forms | Rejected | VerbArg (unless R2 applies) |
//! | R2 | final ending closing the clause, or gerundial 함 | Rejected | VerbArg |
//! | R3 | adverb between postposition and stem | Rejected | VerbArg (adnominal) / Rejected (connective) |
//! | R4 | connective form | PvcN | PvcP |
//! | R5 | adnominal form | PvcN | PvcP |
//! | R6 | same-postposition homonym of the entry | keeps label, marks ambiguity | |
//!
//! Stems outside the lexicon are labeled VerbArg, or Lvc when corpus
//! statistics show the stem standing alone as a noun.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus_io::TaggedSentence;
use crate::lexicon::{self, Lexicon, PvcEntry};
use crate::matcher::{self, Match, MatchOptions};
use crate::miner::{self, MinerError, StemStats};
use crate::tagset::TagSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionLabel {
    PvcN,
    PvcP,
    VerbArg,
    Lvc,
    Rejected,
}

impl ConstructionLabel {
    pub fn is_pvc(self) -> bool {
        matches!(self, ConstructionLabel::PvcN | ConstructionLabel::PvcP)
    }

    fn pvc_for(entry: &PvcEntry) -> Self {
        if entry.predicative {
            ConstructionLabel::PvcP
        } else {
            ConstructionLabel::PvcN
        }
    }
}

impl fmt::Display for ConstructionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flag {
    TenseInflection,
    MainPredicate,
    InterveningAdverb,
    SerialNonFinal,
    HomonymAmbiguous,
    FreeNounStem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    Certain,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    /// Stem outside the lexicon.
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpenSuggestion {
    LvcLikely,
    PvcCandidate,
    VerbLikely,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub label: ConstructionLabel,
    pub flags: BTreeSet<Flag>,
    pub confidence: Confidence,
    pub rationale: Vec<RuleId>,
    /// Only for stems outside the lexicon.
    pub suggestion: Option<OpenSuggestion>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Below this boundness a stem counts as a free noun.
    pub free: f64,
    /// At most this many distinct (adposition, suffix) pairs for a
    /// candidate bound stem.
    pub fixed: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { free: 0.8, fixed: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassifyOptions {
    /// Accept gerundial 함 as in legal text.
    pub legal_register: bool,
    pub thresholds: Thresholds,
    pub tags: TagSet,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("match from sentence `{found}` used with sentence `{expected}`")]
    SentenceMismatch { expected: String, found: String },
    #[error("match carries no token positions")]
    MissingTokens,
    #[error("match tokens do not fit sentence `{0}`")]
    Inconsistent(String),
    #[error("stem `{0}` is in the lexicon")]
    StemInLexicon(String),
    #[error(transparent)]
    Miner(#[from] MinerError),
}

/// Facts about the match read off the sentence.
struct Context {
    has_tense: bool,
    main_predicate: bool,
    gerund: bool,
    adverb: bool,
    next_is_verb: bool,
}

fn context(m: &Match, ctx: &TaggedSentence, tags: &TagSet) -> Result<Context, ClassifyError> {
    if m.sentence_id != ctx.id {
        return Err(ClassifyError::SentenceMismatch {
            expected: ctx.id.clone(),
            found: m.sentence_id.clone(),
        });
    }
    let spans = m.tokens.as_ref().ok_or(ClassifyError::MissingTokens)?;
    let toks = &ctx.tokens;
    let inconsistent = || ClassifyError::Inconsistent(ctx.id.clone());
    if spans.verb.end > toks.len()
        || spans.verb.len() < 3
        || spans.postposition.is_empty()
        || spans.postposition.end > spans.verb.start
        || toks[spans.verb.start].surface != m.stem
    {
        return Err(inconsistent());
    }
    let endings = &toks[spans.verb.start + 2..spans.verb.end];
    let last = endings.last().ok_or_else(inconsistent)?;
    let verb_eojeol = toks[spans.verb.start].eojeol;

    let after: Vec<_> = toks[spans.verb.end..]
        .iter()
        .filter(|t| t.eojeol != verb_eojeol)
        .collect();
    let later_predicate = after
        .iter()
        .any(|t| tags.is_verb(&t.tag) || tags.is_verbalizer(&t.tag) || tags.is_ending(&t.tag));
    let next_eojeol: Vec<_> = match after.first() {
        Some(first) => after.iter().take_while(|t| t.eojeol == first.eojeol).collect(),
        None => Vec::new(),
    };
    let next_is_verb = match next_eojeol.as_slice() {
        [first, ..] if tags.is_verb(&first.tag) => true,
        [first, second, ..] => tags.is_stem(&first.tag) && second.surface == "하" && tags.is_verbalizer(&second.tag),
        _ => false,
    };

    let between = spans.postposition.end..spans.verb.start;
    Ok(Context {
        has_tense: endings.iter().any(|t| tags.is_tense(&t.tag)),
        main_predicate: tags.is_final(&last.tag) && !later_predicate,
        gerund: tags.is_nominalizer(&last.tag) && m.suffix == "함",
        adverb: !spans.adverbs.is_empty() || toks[between].iter().any(|t| tags.is_adverb(&t.tag)),
        next_is_verb,
    })
}

struct Verdict {
    label: Option<ConstructionLabel>,
    flags: BTreeSet<Flag>,
    rationale: Vec<RuleId>,
}

impl Verdict {
    fn decide(&mut self, rule: RuleId, label: ConstructionLabel, flag: Option<Flag>) {
        if !self.rationale.contains(&rule) {
            self.rationale.push(rule);
        }
        self.flags.extend(flag);
        self.label = Some(label);
    }
}

fn homonym_ambiguous(m: &Match, entry: &PvcEntry) -> bool {
    let verb = format!("{}하다", entry.stem_hangul);
    entry
        .homonyms
        .iter()
        .any(|h| h.verb() == verb && h.postpositions().contains(&m.lemma))
}

/// Label one match produced from `ctx`. The match's stem must be a lexicon
/// entry; see [`classify_open`] for other stems.
pub fn classify(
    m: &Match,
    ctx: &TaggedSentence,
    lex: &Lexicon,
    opts: &ClassifyOptions,
) -> Result<Classification, ClassifyError> {
    let c = context(m, ctx, &opts.tags)?;
    let entry = lex
        .get(&m.stem)
        .ok_or_else(|| ClassifyError::Inconsistent(format!("stem `{}` not in lexicon", m.stem)))?;
    use ConstructionLabel::*;

    let pred = entry.predicative;
    let gerund_ok = c.gerund && opts.legal_register;
    let licensed = (entry.has_suffix(&m.suffix) || gerund_ok) && !c.has_tense;
    let r2 = c.main_predicate || (c.gerund && !opts.legal_register);

    let mut v = Verdict {
        label: None,
        flags: BTreeSet::new(),
        rationale: Vec::new(),
    };

    // R1
    if c.has_tense || (!licensed && !r2) {
        if pred {
            v.decide(RuleId::R1, VerbArg, Some(Flag::TenseInflection));
        } else {
            v.decide(RuleId::R1, Rejected, Some(Flag::TenseInflection));
        }
    }
    // R2; also reported after R1 so both diagnostics survive
    if r2 {
        v.decide(
            RuleId::R2,
            if pred { VerbArg } else { Rejected },
            Some(Flag::MainPredicate),
        );
    }
    // R3
    if v.label.is_none() && c.adverb {
        let label = if pred && lexicon::is_adnominal_form(&m.suffix) {
            VerbArg
        } else {
            Rejected
        };
        v.decide(RuleId::R3, label, Some(Flag::InterveningAdverb));
    }
    // R4, R5
    if v.label.is_none() {
        let pvc = ConstructionLabel::pvc_for(entry);
        if lexicon::is_connective_form(&m.suffix) {
            v.decide(RuleId::R4, pvc, c.next_is_verb.then_some(Flag::SerialNonFinal));
        } else if lexicon::is_adnominal_form(&m.suffix) {
            v.decide(RuleId::R5, pvc, None);
        } else {
            // a whitelisted form: gerund under the legal register, or a
            // lexicon extension
            v.decide(if gerund_ok { RuleId::R2 } else { RuleId::R5 }, pvc, None);
        }
    }
    let label = v.label.expect("some rule decides");
    let mut confidence = Confidence::Certain;
    // R6
    if label.is_pvc() && homonym_ambiguous(m, entry) {
        v.decide(RuleId::R6, label, Some(Flag::HomonymAmbiguous));
        confidence = Confidence::Heuristic;
    }
    Ok(Classification {
        label,
        flags: v.flags,
        confidence,
        rationale: v.rationale,
        suggestion: None,
    })
}

/// Suggest a reading for a stem outside the lexicon from its corpus
/// statistics.
pub fn classify_open(
    stem: &str,
    stats: &StemStats,
    lex: &Lexicon,
    thresholds: &Thresholds,
) -> Result<OpenSuggestion, ClassifyError> {
    if lex.contains(stem) {
        return Err(ClassifyError::StemInLexicon(stem.to_owned()));
    }
    let b = miner::boundness(stats)?;
    Ok(if b < thresholds.free {
        OpenSuggestion::LvcLikely
    } else if stats.distinct_triples() <= thresholds.fixed {
        OpenSuggestion::PvcCandidate
    } else {
        OpenSuggestion::VerbLikely
    })
}

fn classify_unlisted(m: &Match, stats: Option<&StemStats>, lex: &Lexicon, thresholds: &Thresholds) -> Classification {
    let suggestion = stats.and_then(|s| classify_open(&m.stem, s, lex, thresholds).ok());
    let (label, flags) = match suggestion {
        Some(OpenSuggestion::LvcLikely) => (ConstructionLabel::Lvc, BTreeSet::from([Flag::FreeNounStem])),
        _ => (ConstructionLabel::VerbArg, BTreeSet::new()),
    };
    Classification {
        label,
        flags,
        confidence: Confidence::Heuristic,
        rationale: vec![RuleId::Open],
        suggestion,
    }
}

pub type Classified = Vec<(Match, Classification)>;

fn classify_sentence(
    s: &TaggedSentence,
    lex: &Lexicon,
    match_opts: &MatchOptions,
    opts: &ClassifyOptions,
    stats: &std::collections::BTreeMap<String, StemStats>,
) -> Result<Classified, ClassifyError> {
    matcher::match_tagged(s, lex, match_opts)
        .into_iter()
        .map(|m| {
            let c = if lex.contains(&m.stem) {
                classify(&m, s, lex, opts)?
            } else {
                classify_unlisted(&m, stats.get(&m.stem), lex, &opts.thresholds)
            };
            Ok((m, c))
        })
        .collect()
}

/// Match and classify every sentence, one result list per sentence in
/// input order. With `match_opts.open_stems`, stems outside the lexicon are
/// judged against statistics mined from the same corpus.
pub fn classify_all(
    corpus: &[TaggedSentence],
    lex: &Lexicon,
    match_opts: &MatchOptions,
    opts: &ClassifyOptions,
) -> Result<Vec<Classified>, ClassifyError> {
    let stats = if match_opts.open_stems {
        miner::mine_with(corpus, &match_opts.tags)
    } else {
        Default::default()
    };
    corpus
        .iter()
        .map(|s| classify_sentence(s, lex, match_opts, opts, &stats))
        .collect()
}

/// [`classify_all`] on the rayon pool; output order and content are
/// identical.
pub fn classify_all_parallel(
    corpus: &[TaggedSentence],
    lex: &Lexicon,
    match_opts: &MatchOptions,
    opts: &ClassifyOptions,
) -> Result<Vec<Classified>, ClassifyError> {
    use rayon::prelude::*;
    let stats = if match_opts.open_stems {
        miner::mine_parallel(corpus, &match_opts.tags)
    } else {
        Default::default()
    };
    corpus
        .par_iter()
        .map(|s| classify_sentence(s, lex, match_opts, opts, &stats))
        .collect()
}
