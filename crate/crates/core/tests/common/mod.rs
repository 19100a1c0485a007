#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use pvc_core::classifier::{Classified, ClassifyOptions};
use pvc_core::corpus_io::{self, TaggedSentence};
use pvc_core::lexicon;
use pvc_core::matcher::MatchOptions;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn examples() -> Vec<TaggedSentence> {
    corpus_io::read_tagged(read_fixture("examples.tsv").as_bytes()).unwrap()
}

pub fn synthetic() -> Vec<TaggedSentence> {
    corpus_io::read_tagged(read_fixture("synthetic.tsv").as_bytes()).unwrap()
}

/// Options the example fixtures are classified with: verb+argument and LVC
/// sentences need stems outside the lexicon.
pub fn fixture_match_options() -> MatchOptions {
    MatchOptions {
        open_stems: true,
        ..Default::default()
    }
}

pub fn classify_examples() -> Vec<Classified> {
    pvc_core::classifier::classify_all(
        &examples(),
        &lexicon::builtin(),
        &fixture_match_options(),
        &ClassifyOptions::default(),
    )
    .unwrap()
}

#[derive(Debug, Clone)]
pub struct Expectation {
    pub sent_id: String,
    pub grammatical: bool,
    pub stem: String,
    pub lemma: String,
    pub suffix: String,
    pub label: String,
    pub flags: Vec<String>,
}

pub fn expectations() -> Vec<Expectation> {
    read_fixture("examples.expected.tsv")
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split('\t').collect();
            Expectation {
                sent_id: c[0].into(),
                grammatical: c[1] == "ok",
                stem: c[2].into(),
                lemma: c[3].into(),
                suffix: c[4].into(),
                label: c[5].into(),
                flags: if c[6] == "-" {
                    Vec::new()
                } else {
                    c[6].split(',').map(str::to_owned).collect()
                },
            }
        })
        .collect()
}

/// Table 2 cell per (form, construction): "ok", "ok-dagger" or "-".
pub fn table2() -> Vec<(String, String, String, String)> {
    read_fixture("table2.tsv")
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split('\t').collect();
            (c[0].into(), c[1].into(), c[2].into(), c[3].into())
        })
        .collect()
}

/// Label required by a Table 2 cell.
pub fn cell_label(construction: &str, cell: &str) -> &'static str {
    match (construction, cell) {
        ("PVC-n", "ok") => "PvcN",
        ("PVC-p", "ok") => "PvcP",
        (_, "ok-dagger") => "VerbArg",
        ("verb+arg", "ok") => "VerbArg",
        (_, "-") => "Rejected",
        other => panic!("unknown cell {other:?}"),
    }
}

/// Window-scan oracle statistics: (total, adpositions, suffixes, triples,
/// standalone) per stem, computed by brute force over 4-token windows with
/// a table of 하 + ending surfaces.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct OracleStats {
    pub total: u64,
    pub adps: BTreeSet<String>,
    pub suffixes: BTreeSet<String>,
    pub triples: BTreeSet<(String, String)>,
    pub standalone: u64,
}

fn realize_table(endings: &[&str]) -> String {
    let table: &[(&[&str], &str)] = &[
        (&["ㄴ"], "한"),
        (&["아"], "해"),
        (&["아서"], "해서"),
        (&["여"], "하여"),
        (&["고"], "하고"),
        (&["았", "다"], "했다"),
        (&["았", "던"], "했던"),
        (&["ㄴ다"], "한다"),
        (&["다"], "하다"),
        (&["ㅁ"], "함"),
        (&["는"], "하는"),
    ];
    table
        .iter()
        .find(|(e, _)| *e == endings)
        .map(|(_, s)| s.to_string())
        .unwrap_or_else(|| panic!("no surface for {endings:?}"))
}

pub fn oracle_mine(corpus: &[TaggedSentence]) -> BTreeMap<String, OracleStats> {
    let mut stats: BTreeMap<String, OracleStats> = BTreeMap::new();
    let mut bare: BTreeMap<String, u64> = BTreeMap::new();
    let is_verbalizer = |t: &str| t == "XSV" || t.starts_with('V');
    for s in corpus {
        let t = &s.tokens;
        let n = t.len();
        for a in 0..n {
            for st in 0..n {
                for h in 0..n {
                    for e in 0..n {
                        if !(st == a + 1 && h == st + 1 && e == h + 1) {
                            continue;
                        }
                        let ok = t[a].tag.starts_with('J')
                            && t[a].eojeol != t[st].eojeol
                            && (t[st].tag == "XR" || t[st].tag.starts_with('N'))
                            && t[h].surface == "하"
                            && is_verbalizer(&t[h].tag)
                            && t[e].tag.starts_with('E')
                            && t[h].eojeol == t[st].eojeol
                            && t[e].eojeol == t[st].eojeol;
                        if !ok {
                            continue;
                        }
                        let mut first = a;
                        while first > 0 && t[first - 1].eojeol == t[a].eojeol && t[first - 1].tag.starts_with('J') {
                            first -= 1;
                        }
                        if first == 0 || t[first - 1].eojeol != t[a].eojeol {
                            continue;
                        }
                        let adp: String = t[first..=a].iter().map(|x| x.surface.as_str()).collect();
                        let endings: Vec<&str> = t[e..]
                            .iter()
                            .take_while(|x| x.eojeol == t[st].eojeol && x.tag.starts_with('E'))
                            .map(|x| x.surface.as_str())
                            .collect();
                        let suffix = realize_table(&endings);
                        let entry = stats.entry(t[st].surface.clone()).or_default();
                        entry.total += 1;
                        entry.adps.insert(adp.clone());
                        entry.suffixes.insert(suffix.clone());
                        entry.triples.insert((adp, suffix));
                    }
                }
            }
        }
        for (i, tok) in t.iter().enumerate() {
            let verbalized = t.get(i + 1).is_some_and(|x| x.surface == "하" && is_verbalizer(&x.tag));
            if tok.tag.starts_with('N') && !verbalized {
                *bare.entry(tok.surface.clone()).or_default() += 1;
            }
        }
    }
    for (stem, s) in stats.iter_mut() {
        s.standalone = bare.get(stem).copied().unwrap_or(0);
    }
    stats
}

/// Compare miner output with the oracle; returns the first mismatch.
pub fn compare_with_oracle(
    mined: &BTreeMap<String, pvc_core::miner::StemStats>,
    oracle: &BTreeMap<String, OracleStats>,
) -> Result<(), String> {
    if mined.keys().ne(oracle.keys()) {
        return Err(format!(
            "stem sets differ: {:?} vs {:?}",
            mined.keys().collect::<Vec<_>>(),
            oracle.keys().collect::<Vec<_>>()
        ));
    }
    for (stem, m) in mined {
        let o = &oracle[stem];
        if m.total != o.total
            || m.adpositions != o.adps
            || m.suffixes != o.suffixes
            || m.triples != o.triples
            || m.standalone != o.standalone
        {
            return Err(format!("{stem}: {m:?} vs {o:?}"));
        }
    }
    Ok(())
}

/// Finals table for the 28 final indices: (index, jamo, 를-allomorph,
/// 로-allomorph), written out by hand.
pub const FINALS_TABLE: [(u8, &str, &str, &str); 28] = [
    (0, "", "를", "로"),
    (1, "ㄱ", "을", "으로"),
    (2, "ㄲ", "을", "으로"),
    (3, "ㄳ", "을", "으로"),
    (4, "ㄴ", "을", "으로"),
    (5, "ㄵ", "을", "으로"),
    (6, "ㄶ", "을", "으로"),
    (7, "ㄷ", "을", "으로"),
    (8, "ㄹ", "을", "로"),
    (9, "ㄺ", "을", "으로"),
    (10, "ㄻ", "을", "으로"),
    (11, "ㄼ", "을", "으로"),
    (12, "ㄽ", "을", "으로"),
    (13, "ㄾ", "을", "으로"),
    (14, "ㄿ", "을", "으로"),
    (15, "ㅀ", "을", "으로"),
    (16, "ㅁ", "을", "으로"),
    (17, "ㅂ", "을", "으로"),
    (18, "ㅄ", "을", "으로"),
    (19, "ㅅ", "을", "으로"),
    (20, "ㅆ", "을", "으로"),
    (21, "ㅇ", "을", "으로"),
    (22, "ㅈ", "을", "으로"),
    (23, "ㅊ", "을", "으로"),
    (24, "ㅋ", "을", "으로"),
    (25, "ㅌ", "을", "으로"),
    (26, "ㅍ", "을", "으로"),
    (27, "ㅎ", "을", "으로"),
];

/// Syllable 가 with the given final index, built from code point arithmetic
/// written independently of the library.
pub fn ga_with_final(index: u8) -> String {
    char::from_u32(0xAC00 + index as u32).unwrap().to_string()
}

/// Table 1, row by row: stem, romanization, postpositions, gloss, suffix
/// forms, main-predicate dagger, homonym patterns.
pub type Table1Row = (
    &'static str,
    &'static str,
    &'static [&'static str],
    &'static str,
    &'static [&'static str],
    bool,
    &'static [&'static str],
);

pub const TABLE1: [Table1Row; 14] = [
    (
        "대",
        "tay",
        &["에"],
        "about",
        &["한", "해", "해서", "하여"],
        false,
        &["를 대하다"],
    ),
    ("의", "ui", &["에"], "by", &["한", "해", "해서", "하여"], false, &[]),
    (
        "통",
        "thong",
        &["를"],
        "via, through",
        &["한", "해", "해서", "하여"],
        false,
        &["와 통하다"],
    ),
    (
        "위",
        "wi",
        &["를"],
        "for",
        &["한", "해", "해서", "하여"],
        false,
        &["를 위하다"],
    ),
    ("인", "in", &["로"], "due to", &["한", "해", "해서", "하여"], false, &[]),
    (
        "관",
        "kwan",
        &["에"],
        "about",
        &["한", "해", "해서", "하여"],
        false,
        &[],
    ),
    ("속", "sok", &["에"], "in, belong to", &["한", "해"], true, &[]),
    ("향", "hyang", &["로", "를"], "towards", &["한", "해"], true, &[]),
    (
        "비",
        "pi",
        &["에"],
        "than, compared to",
        &["한", "해", "해서", "하여"],
        false,
        &["와 비하다"],
    ),
    (
        "불구",
        "pwulkwu",
        &["에도"],
        "although",
        &["하고"],
        false,
        &["불구되다", "불구가 되다"],
    ),
    (
        "비롯",
        "piros",
        &["를"],
        "such as",
        &["한", "해", "해서", "하여"],
        false,
        &["에서 비롯하다", "비롯되다"],
    ),
    ("기", "ki", &["를"], "since", &["한", "해"], true, &[]),
    (
        "반",
        "pan",
        &["에"],
        "against, unlike",
        &["한", "해", "해서", "하여"],
        false,
        &["에(게) 반하다"],
    ),
    (
        "위시",
        "wisi",
        &["를"],
        "such as",
        &["한", "해", "해서", "하여"],
        false,
        &[],
    ),
];

/// First field of `lex` that differs from [`TABLE1`].
pub fn check_table1(lex: &lexicon::Lexicon) -> Result<(), String> {
    if lex.len() != TABLE1.len() {
        return Err(format!("{} entries", lex.len()));
    }
    for (e, row) in lex.entries.iter().zip(TABLE1.iter()) {
        let (stem, roman, adps, gloss, suffixes, pred, homonyms) = *row;
        let patterns: Vec<&str> = e.homonyms.iter().map(|h| h.pattern.as_str()).collect();
        let same = e.stem_hangul == stem
            && e.stem_roman == roman
            && e.postpositions == adps
            && e.gloss == gloss
            && e.suffix_forms == suffixes
            && e.predicative == pred
            && patterns == homonyms;
        if !same {
            return Err(format!("entry {stem} differs: {e:?}"));
        }
    }
    Ok(())
}
