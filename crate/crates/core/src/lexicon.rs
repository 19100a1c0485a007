//! The closed class of postpositional verb-based constructions.
//!
//! Each entry records a bound stem, the postpositions it licenses and the
//! 하다 suffix forms it surfaces with. The built-in table holds 14 entries in
//! corpus frequency order; external lexicons load from TSV or JSON.

use std::collections::HashSet;
use std::fmt;
use std::io::{self, BufRead, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hangul;

/// Suffix forms accepted by default: adnominal 한, connectives 해/해서/하여,
/// conjunctive 하고.
pub const DEFAULT_SUFFIX_FORMS: [&str; 5] = ["한", "해", "해서", "하여", "하고"];

/// Suffix forms that link to a following verb.
pub const CONNECTIVE_FORMS: [&str; 4] = ["해", "해서", "하여", "하고"];

/// Suffix forms that modify a following noun.
pub const ADNOMINAL_FORMS: [&str; 1] = ["한"];

pub fn is_connective_form(form: &str) -> bool {
    CONNECTIVE_FORMS.contains(&form)
}

pub fn is_adnominal_form(form: &str) -> bool {
    ADNOMINAL_FORMS.contains(&form)
}

/// Stems whose verb may also serve as a main predicate.
pub const PREDICATIVE_STEMS: [&str; 3] = ["속", "향", "기"];

pub const TSV_HEADER: &str =
    "stem_hangul\tstem_roman\tpostpositions\textra_postpositions\tgloss\tsuffix_forms\tpredicative\thomonyms";

const BUILTIN_VERSION: &str = "builtin-1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraPostposition {
    pub lemma: String,
    /// Informational only; matching does not check it.
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homonym {
    pub pattern: String,
    pub gloss: String,
}

impl Homonym {
    /// Postpositions named by the pattern. `에(게)` expands to 에 and 에게.
    pub fn postpositions(&self) -> Vec<String> {
        let mut words = self.pattern.split_whitespace();
        let (Some(first), Some(_)) = (words.next(), words.next()) else {
            return Vec::new();
        };
        match first.split_once('(') {
            Some((base, rest)) => {
                let optional = rest.trim_end_matches(')');
                vec![base.to_owned(), format!("{base}{optional}")]
            }
            None => vec![first.to_owned()],
        }
    }

    /// The verb lemma of the pattern (last whitespace-separated word).
    pub fn verb(&self) -> &str {
        self.pattern.split_whitespace().last().unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvcEntry {
    pub stem_hangul: String,
    pub stem_roman: String,
    pub postpositions: Vec<String>,
    #[serde(default)]
    pub extra_postpositions: Vec<ExtraPostposition>,
    pub gloss: String,
    pub suffix_forms: Vec<String>,
    pub predicative: bool,
    #[serde(default)]
    pub homonyms: Vec<Homonym>,
}

impl PvcEntry {
    /// Licensed postposition lemmas: the listed ones, then the extensions.
    pub fn licensed_postpositions(&self) -> impl Iterator<Item = &str> {
        self.postpositions
            .iter()
            .map(String::as_str)
            .chain(self.extra_postpositions.iter().map(|e| e.lemma.as_str()))
    }

    pub fn licenses(&self, lemma: &str) -> bool {
        self.licensed_postpositions().any(|p| p == lemma)
    }

    pub fn has_suffix(&self, form: &str) -> bool {
        self.suffix_forms.iter().any(|s| s == form)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicon {
    pub version: String,
    pub entries: Vec<PvcEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexiconFormat {
    Tsv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    EmptyStem,
    NonHangulStem,
    EmptyPostpositions,
    UnknownPostposition(String),
    EmptySuffixForms,
    UnknownSuffixForm(String),
    PredicativeWhitelist,
    DuplicateStem,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::EmptyStem => f.write_str("stem must be nonempty"),
            Rule::NonHangulStem => f.write_str("stem must consist of Hangul syllables"),
            Rule::EmptyPostpositions => f.write_str("postpositions must be nonempty"),
            Rule::UnknownPostposition(p) => write!(f, "unknown postposition `{p}`"),
            Rule::EmptySuffixForms => f.write_str("suffix forms must be nonempty"),
            Rule::UnknownSuffixForm(s) => write!(f, "unknown suffix form `{s}`"),
            Rule::PredicativeWhitelist => f.write_str("only 속, 향 and 기 may be marked predicative"),
            Rule::DuplicateStem => f.write_str("stem must be unique"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub entry: usize,
    pub stem: String,
    pub rule: Rule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry {} ({}): {}", self.entry, self.stem, self.rule)
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{} violation(s): {}", .0.len(), join_violations(.0))]
    Validation(Vec<Violation>),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// Suffix forms a lexicon may use. Extend it to admit register-specific
/// forms such as gerundial 함.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixInventory(Vec<String>);

impl Default for SuffixInventory {
    fn default() -> Self {
        SuffixInventory(DEFAULT_SUFFIX_FORMS.iter().map(|s| s.to_string()).collect())
    }
}

impl SuffixInventory {
    pub fn with_extra<I, S>(mut self, extra: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for s in extra {
            let s = s.into();
            if !self.0.contains(&s) {
                self.0.push(s);
            }
        }
        self
    }

    pub fn contains(&self, form: &str) -> bool {
        self.0.iter().any(|s| s == form)
    }

    pub fn forms(&self) -> &[String] {
        &self.0
    }
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn entry(
    stem: &str,
    roman: &str,
    postpositions: &[&str],
    gloss: &str,
    suffix_forms: &[&str],
    predicative: bool,
    homonyms: &[(&str, &str)],
) -> PvcEntry {
    PvcEntry {
        stem_hangul: stem.into(),
        stem_roman: roman.into(),
        postpositions: strings(postpositions),
        extra_postpositions: Vec::new(),
        gloss: gloss.into(),
        suffix_forms: strings(suffix_forms),
        predicative,
        homonyms: homonyms
            .iter()
            .map(|(pattern, gloss)| Homonym {
                pattern: pattern.to_string(),
                gloss: gloss.to_string(),
            })
            .collect(),
    }
}

/// The 14 built-in entries, most frequent first.
pub fn builtin() -> Lexicon {
    const FULL: &[&str] = &["한", "해", "해서", "하여"];
    const SHORT: &[&str] = &["한", "해"];
    let mut entries = vec![
        entry("대", "tay", &["에"], "about", FULL, false, &[("를 대하다", "treat")]),
        entry("의", "ui", &["에"], "by", FULL, false, &[]),
        entry(
            "통",
            "thong",
            &["를"],
            "via, through",
            FULL,
            false,
            &[("와 통하다", "connect, flow")],
        ),
        entry("위", "wi", &["를"], "for", FULL, false, &[("를 위하다", "care for")]),
        entry("인", "in", &["로"], "due to", FULL, false, &[]),
        entry("관", "kwan", &["에"], "about", FULL, false, &[]),
        entry("속", "sok", &["에"], "in, belong to", SHORT, true, &[]),
        entry("향", "hyang", &["로", "를"], "towards", SHORT, true, &[]),
        entry(
            "비",
            "pi",
            &["에"],
            "than, compared to",
            FULL,
            false,
            &[("와 비하다", "be comparable to")],
        ),
        entry(
            "불구",
            "pwulkwu",
            &["에도"],
            "although",
            &["하고"],
            false,
            &[("불구되다", ""), ("불구가 되다", "")],
        ),
        entry(
            "비롯",
            "piros",
            &["를"],
            "such as",
            FULL,
            false,
            &[("에서 비롯하다", ""), ("비롯되다", "")],
        ),
        entry("기", "ki", &["를"], "since", SHORT, true, &[]),
        entry(
            "반",
            "pan",
            &["에"],
            "against, unlike",
            FULL,
            false,
            &[("에(게) 반하다", "fall for")],
        ),
        entry("위시", "wisi", &["를"], "such as", FULL, false, &[]),
    ];
    entries[7].extra_postpositions.push(ExtraPostposition {
        lemma: "에게".into(),
        condition: "animate".into(),
    });
    Lexicon {
        version: BUILTIN_VERSION.into(),
        entries,
    }
}

impl Lexicon {
    pub fn get(&self, stem: &str) -> Option<&PvcEntry> {
        self.entries.iter().find(|e| e.stem_hangul == stem)
    }

    pub fn contains(&self, stem: &str) -> bool {
        self.get(stem).is_some()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_with(self, &SuffixInventory::default())
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        if !self.version.is_empty() {
            out.push_str("# version: ");
            out.push_str(&self.version);
            out.push('\n');
        }
        out.push_str(TSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            let extras = e
                .extra_postpositions
                .iter()
                .map(|x| format!("{}:{}", x.lemma, x.condition))
                .collect::<Vec<_>>()
                .join(",");
            let homonyms = e
                .homonyms
                .iter()
                .map(|h| format!("{}={}", h.pattern, h.gloss))
                .collect::<Vec<_>>()
                .join(";");
            let fields = [
                e.stem_hangul.clone(),
                e.stem_roman.clone(),
                e.postpositions.join(","),
                extras,
                e.gloss.clone(),
                e.suffix_forms.join(","),
                if e.predicative { "1" } else { "0" }.to_owned(),
                homonyms,
            ];
            out.push_str(&fields.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn export<W: Write>(&self, format: LexiconFormat, mut w: W) -> Result<(), LexiconError> {
        match format {
            LexiconFormat::Tsv => w.write_all(self.to_tsv().as_bytes())?,
            LexiconFormat::Json => {
                serde_json::to_writer_pretty(&mut w, self)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }
}

pub fn validate(lex: &Lexicon) -> Vec<Violation> {
    lex.validate()
}

pub fn validate_with(lex: &Lexicon, inventory: &SuffixInventory) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, e) in lex.entries.iter().enumerate() {
        let mut push = |rule| {
            out.push(Violation {
                entry: i,
                stem: e.stem_hangul.clone(),
                rule,
            })
        };
        if e.stem_hangul.is_empty() {
            push(Rule::EmptyStem);
        } else if !e.stem_hangul.chars().all(hangul::is_syllable) {
            push(Rule::NonHangulStem);
        }
        if e.postpositions.is_empty() {
            push(Rule::EmptyPostpositions);
        }
        for p in e.licensed_postpositions() {
            if !hangul::POSTPOSITION_LEMMAS.contains(&p) {
                push(Rule::UnknownPostposition(p.to_owned()));
            }
        }
        if e.suffix_forms.is_empty() {
            push(Rule::EmptySuffixForms);
        }
        for s in &e.suffix_forms {
            if !inventory.contains(s) {
                push(Rule::UnknownSuffixForm(s.clone()));
            }
        }
        if e.predicative && !PREDICATIVE_STEMS.contains(&e.stem_hangul.as_str()) {
            push(Rule::PredicativeWhitelist);
        }
        if !seen.insert(e.stem_hangul.as_str()) {
            push(Rule::DuplicateStem);
        }
    }
    out
}

fn split_list(field: &str, sep: char) -> Vec<String> {
    if field.is_empty() {
        return Vec::new();
    }
    field.split(sep).map(|s| s.trim().to_owned()).collect()
}

fn parse_row(line: &str, line_no: usize) -> Result<PvcEntry, LexiconError> {
    let err = |message: String| LexiconError::Parse { line: line_no, message };
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 8 {
        return Err(err(format!("expected 8 columns, found {}", cols.len())));
    }
    let extra_postpositions = split_list(cols[3], ',')
        .into_iter()
        .map(|item| match item.split_once(':') {
            Some((lemma, condition)) => Ok(ExtraPostposition {
                lemma: lemma.to_owned(),
                condition: condition.to_owned(),
            }),
            None => Err(err(format!("extra postposition `{item}` lacks `:tag`"))),
        })
        .collect::<Result<_, _>>()?;
    let predicative = match cols[6] {
        "0" => false,
        "1" => true,
        other => return Err(err(format!("predicative must be 0 or 1, found `{other}`"))),
    };
    let homonyms = split_list(cols[7], ';')
        .into_iter()
        .map(|item| match item.split_once('=') {
            Some((pattern, gloss)) => Ok(Homonym {
                pattern: pattern.to_owned(),
                gloss: gloss.to_owned(),
            }),
            None => Err(err(format!("homonym `{item}` lacks `=gloss`"))),
        })
        .collect::<Result<_, _>>()?;
    Ok(PvcEntry {
        stem_hangul: cols[0].to_owned(),
        stem_roman: cols[1].to_owned(),
        postpositions: split_list(cols[2], ','),
        extra_postpositions,
        gloss: cols[4].to_owned(),
        suffix_forms: split_list(cols[5], ','),
        predicative,
        homonyms,
    })
}

fn parse_tsv<R: BufRead>(reader: R) -> Result<Lexicon, LexiconError> {
    let mut version = String::new();
    let mut header_seen = false;
    let mut entries = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| LexiconError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("version:") {
                version = v.trim().to_owned();
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            if line != TSV_HEADER {
                return Err(LexiconError::Parse {
                    line: line_no,
                    message: "missing or malformed header row".into(),
                });
            }
            header_seen = true;
            continue;
        }
        entries.push(parse_row(line, line_no)?);
    }
    Ok(Lexicon { version, entries })
}

/// Parse a lexicon without checking its invariants.
pub fn parse<R: Read>(source: R, format: LexiconFormat) -> Result<Lexicon, LexiconError> {
    Ok(match format {
        LexiconFormat::Tsv => parse_tsv(io::BufReader::new(source))?,
        LexiconFormat::Json => serde_json::from_reader(source)?,
    })
}

/// Parse a lexicon and check every invariant against the default suffix
/// inventory.
pub fn load<R: Read>(source: R, format: LexiconFormat) -> Result<Lexicon, LexiconError> {
    load_with(source, format, &SuffixInventory::default())
}

pub fn load_with<R: Read>(
    source: R,
    format: LexiconFormat,
    inventory: &SuffixInventory,
) -> Result<Lexicon, LexiconError> {
    let lex = parse(source, format)?;
    let violations = validate_with(&lex, inventory);
    if violations.is_empty() {
        Ok(lex)
    } else {
        Err(LexiconError::Validation(violations))
    }
}
