//! Locating construction candidates.
//!
//! Lexicon entries expand into concrete surface forms (postposition
//! allomorph × suffix form). Raw sentences are matched on adjacent eojeol
//! pairs; tagged sentences on the morpheme pattern adposition · stem · 하 ·
//! ending(s).

use std::collections::HashMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::corpus_io::{RawSentence, TaggedSentence};
use crate::hangul;
use crate::lexicon::{self, Lexicon};
use crate::morph;
use crate::tagset::TagSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceForm {
    pub stem: String,
    pub lemma: String,
    /// Allomorph of `lemma` as written.
    pub postposition: String,
    /// Stem followed by the suffix form, e.g. 관한.
    pub verb: String,
    pub suffix: String,
}

/// Every licensed (postposition allomorph, suffix form) combination, in
/// entry order, then postposition order (citation form before its
/// alternate), then suffix order.
pub fn expand(lex: &Lexicon) -> Vec<SurfaceForm> {
    let mut out = Vec::new();
    for entry in &lex.entries {
        for lemma in entry.licensed_postpositions() {
            let Ok(surfaces) = hangul::surfaces(lemma) else {
                continue;
            };
            for surface in surfaces {
                for suffix in &entry.suffix_forms {
                    out.push(SurfaceForm {
                        stem: entry.stem_hangul.clone(),
                        lemma: lemma.to_owned(),
                        postposition: (*surface).to_owned(),
                        verb: format!("{}{}", entry.stem_hangul, suffix),
                        suffix: suffix.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Surface forms keyed by verb surface for pairwise lookup.
#[derive(Debug, Clone)]
pub struct FormIndex {
    forms: Vec<SurfaceForm>,
    by_verb: HashMap<String, Vec<usize>>,
}

impl FormIndex {
    pub fn new(lex: &Lexicon) -> Self {
        Self::from_forms(expand(lex))
    }

    pub fn from_forms(forms: Vec<SurfaceForm>) -> Self {
        let mut by_verb: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, f) in forms.iter().enumerate() {
            by_verb.entry(f.verb.clone()).or_default().push(i);
        }
        FormIndex { forms, by_verb }
    }

    pub fn forms(&self) -> &[SurfaceForm] {
        &self.forms
    }

    fn lookup(&self, verb: &str) -> impl Iterator<Item = &SurfaceForm> {
        self.by_verb.get(verb).into_iter().flatten().map(|&i| &self.forms[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchOptions {
    /// Particles that may follow a connective form (관해서는).
    pub trailing_particles: Vec<String>,
    /// Only licensed suffix forms; a tense infix blocks the match.
    pub strict: bool,
    /// Let adverb-only eojeols sit between the host and the verb (tagged
    /// input only).
    pub skip_adverbs: bool,
    /// Also report stems outside the lexicon (tagged input only).
    pub open_stems: bool,
    pub tags: TagSet,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            trailing_particles: ["는", "도", "만"].iter().map(|s| s.to_string()).collect(),
            strict: false,
            skip_adverbs: true,
            open_stems: false,
            tags: TagSet::default(),
        }
    }
}

/// Morpheme positions of a tagged match.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TokenSpans {
    pub postposition: Range<usize>,
    /// Stem, verbalizer and endings; excludes any trailing particle.
    pub verb: Range<usize>,
    /// Tokens of skipped adverb eojeols between host and verb.
    pub adverbs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Match {
    pub sentence_id: String,
    /// Eojeol holding noun + postposition.
    pub host: usize,
    /// Eojeol holding stem + 하 + ending.
    pub verb_eojeol: usize,
    pub stem: String,
    pub lemma: String,
    pub postposition: String,
    /// What follows the stem: a suffix form such as 한, or the realized
    /// inflection (했다) when it is outside the licensed set.
    pub suffix: String,
    /// Character offset of the postposition inside the host eojeol.
    pub postposition_offset: usize,
    pub trailing: Option<String>,
    /// Present for matches found in tagged input.
    pub tokens: Option<TokenSpans>,
}

impl Match {
    pub fn verb_surface(&self) -> String {
        format!("{}{}", self.stem, self.suffix)
    }
}

/// Split a verb eojeol into (verb surface, trailing particle) candidates.
fn verb_candidates<'a>(word: &'a str, opts: &'a MatchOptions) -> Vec<(&'a str, Option<&'a str>)> {
    let mut out = vec![(word, None)];
    for p in &opts.trailing_particles {
        if let Some(stripped) = word.strip_suffix(p.as_str()) {
            if !stripped.is_empty() {
                out.push((stripped, Some(p.as_str())));
            }
        }
    }
    out
}

pub fn match_raw(sentence: &RawSentence, index: &FormIndex, opts: &MatchOptions) -> Vec<Match> {
    let mut out: Vec<Match> = Vec::new();
    let words = &sentence.eojeols;
    for i in 0..words.len().saturating_sub(1) {
        let host_word = &words[i];
        let mut best: Option<(&SurfaceForm, Option<&str>)> = None;
        for (verb, trailing) in verb_candidates(&words[i + 1], opts) {
            for form in index.lookup(verb) {
                if trailing.is_some() && !lexicon::is_connective_form(&form.suffix) {
                    continue;
                }
                let Some(host) = host_word.strip_suffix(form.postposition.as_str()) else {
                    continue;
                };
                let Ok(kind) = hangul::final_kind(host) else {
                    continue;
                };
                if !hangul::surface_compatible(&form.lemma, &form.postposition, kind) {
                    continue;
                }
                if best.is_none_or(|(b, _)| form.postposition.len() > b.postposition.len()) {
                    best = Some((form, trailing));
                }
            }
        }
        if let Some((form, trailing)) = best {
            let host_len = host_word.len() - form.postposition.len();
            out.push(Match {
                sentence_id: sentence.id.clone(),
                host: i,
                verb_eojeol: i + 1,
                stem: form.stem.clone(),
                lemma: form.lemma.clone(),
                postposition: form.postposition.clone(),
                suffix: form.suffix.clone(),
                postposition_offset: host_word[..host_len].chars().count(),
                trailing: trailing.map(str::to_owned),
                tokens: None,
            });
        }
    }
    out
}

/// Postposition closing eojeol `span`: the maximal run of adposition tags at
/// its end, preceded by at least one host morpheme.
fn trailing_adposition(sentence: &TaggedSentence, span: &Range<usize>, tags: &TagSet) -> Option<Range<usize>> {
    let toks = &sentence.tokens;
    let mut start = span.end;
    while start > span.start && tags.is_adposition(&toks[start - 1].tag) {
        start -= 1;
    }
    (start < span.end && start > span.start).then_some(start..span.end)
}

/// The verb complex opening eojeol `span`: stem · 하 · endings, then
/// whatever else the eojeol holds.
struct VerbComplex {
    stem: usize,
    endings: Range<usize>,
    rest: Range<usize>,
}

fn verb_complex(sentence: &TaggedSentence, span: &Range<usize>, tags: &TagSet) -> Option<VerbComplex> {
    let toks = &sentence.tokens;
    if span.len() < 3 {
        return None;
    }
    let (s, h) = (span.start, span.start + 1);
    if !tags.is_stem(&toks[s].tag) || toks[h].surface != "하" || !tags.is_verbalizer(&toks[h].tag) {
        return None;
    }
    let mut end = h + 1;
    while end < span.end && tags.is_ending(&toks[end].tag) {
        end += 1;
    }
    (end > h + 1).then_some(VerbComplex {
        stem: s,
        endings: h + 1..end,
        rest: end..span.end,
    })
}

pub fn match_tagged(sentence: &TaggedSentence, lex: &Lexicon, opts: &MatchOptions) -> Vec<Match> {
    let tags = &opts.tags;
    let toks = &sentence.tokens;
    let spans = sentence.eojeol_spans();
    let mut out = Vec::new();

    for (hi, host_span) in spans.iter().enumerate() {
        let Some(post) = trailing_adposition(sentence, host_span, tags) else {
            continue;
        };
        let post_surface: String = toks[post.clone()].iter().map(|t| t.surface.as_str()).collect();

        let mut vi = hi + 1;
        let mut adverbs = Vec::new();
        if opts.skip_adverbs {
            while vi < spans.len() && spans[vi].clone().all(|t| tags.is_adverb(&toks[t].tag)) {
                adverbs.extend(spans[vi].clone());
                vi += 1;
            }
        }
        let Some(verb_span) = spans.get(vi) else {
            continue;
        };
        let Some(vc) = verb_complex(sentence, verb_span, tags) else {
            continue;
        };

        let stem = &toks[vc.stem].surface;
        let entry = lex.get(stem);
        let lemma = match (entry, hangul::lemma_of_surface(&post_surface)) {
            (Some(e), Some(l)) if e.licenses(l) => l.to_owned(),
            (Some(_), _) => continue,
            (None, l) if opts.open_stems => l.map_or_else(|| post_surface.clone(), str::to_owned),
            (None, _) => continue,
        };

        let endings: Vec<&str> = toks[vc.endings.clone()].iter().map(|t| t.surface.as_str()).collect();
        let realized = morph::realize("하", &endings);
        let has_tense = toks[vc.endings.clone()].iter().any(|t| tags.is_tense(&t.tag));
        let licensed = entry.is_none_or(|e| e.has_suffix(&realized)) && !has_tense;

        let rest: String = toks[vc.rest.clone()].iter().map(|t| t.surface.as_str()).collect();
        let rest_is_particle = toks[vc.rest.clone()].iter().all(|t| tags.is_adposition(&t.tag));
        let trailing = (!rest.is_empty()
            && rest_is_particle
            && lexicon::is_connective_form(&realized)
            && opts.trailing_particles.contains(&rest))
        .then(|| rest.clone());

        if opts.strict && (!licensed || (!rest.is_empty() && trailing.is_none())) {
            continue;
        }

        let host_chars: usize = toks[host_span.start..post.start]
            .iter()
            .map(|t| t.surface.chars().count())
            .sum();
        out.push(Match {
            sentence_id: sentence.id.clone(),
            host: toks[host_span.start].eojeol,
            verb_eojeol: toks[verb_span.start].eojeol,
            stem: stem.clone(),
            lemma,
            postposition: post_surface,
            suffix: realized,
            postposition_offset: host_chars,
            trailing,
            tokens: Some(TokenSpans {
                postposition: post,
                verb: vc.stem..vc.endings.end,
                adverbs,
            }),
        });
    }
    out
}
