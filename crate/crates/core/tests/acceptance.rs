//! One PASS/FAIL line per acceptance criterion, with its time limit.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{ga_with_final, FINALS_TABLE};
use pvc_core::annotator::{self, DEFAULT_CATEGORY};
use pvc_core::classifier::ConstructionLabel;
use pvc_core::corpus_io::{self, RawSentence};
use pvc_core::hangul;
use pvc_core::lexicon;
use pvc_core::matcher::{self, FormIndex, Match, MatchOptions};
use pvc_core::miner;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, u64);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($fmt)+));
        }
    };
}

fn lexicon_fidelity() -> Check {
    let lex = lexicon::builtin();
    common::check_table1(&lex)?;
    let predicative: Vec<&str> = lex
        .entries
        .iter()
        .filter(|e| e.predicative)
        .map(|e| e.stem_hangul.as_str())
        .collect();
    ensure!(predicative == ["속", "향", "기"], "predicative stems {predicative:?}");
    let v = lexicon::validate(&lex);
    ensure!(v.is_empty(), "{} violations", v.len());
    Ok(())
}

fn hangul_suite() -> Check {
    for cp in 0xAC00u32..=0xD7A3 {
        let c = char::from_u32(cp).unwrap();
        let parts = hangul::decompose(c).ok_or(format!("{c} not decomposed"))?;
        let code = cp - 0xAC00;
        ensure!(
            (parts.initial as u32, parts.medial as u32, parts.final_ as u32)
                == (code / 588, code % 588 / 28, code % 28),
            "{c} parts"
        );
        ensure!(hangul::compose(parts) == Ok(c), "{c} round trip");
    }
    for (index, _, reul, ro) in FINALS_TABLE {
        let host = ga_with_final(index);
        ensure!(hangul::allomorph("를", &host) == Ok(reul), "를 after {host}");
        ensure!(hangul::allomorph("로", &host) == Ok(ro), "로 after {host}");
    }
    Ok(())
}

fn surfaces(lemma: &str) -> usize {
    match lemma {
        "를" | "로" => 2,
        _ => 1,
    }
}

fn surface_expansion() -> Check {
    let lex = lexicon::builtin();
    let oracle: usize = lex
        .entries
        .iter()
        .map(|e| {
            let adps: usize = e.postpositions.iter().map(|p| surfaces(p)).sum::<usize>()
                + e.extra_postpositions.iter().map(|p| surfaces(&p.lemma)).sum::<usize>();
            adps * e.suffix_forms.len()
        })
        .sum();
    let forms = matcher::expand(&lex);
    ensure!(forms.len() == oracle, "{} forms, oracle {oracle}", forms.len());
    let gwan: BTreeSet<String> = forms
        .iter()
        .filter(|f| f.stem == "관")
        .map(|f| format!("{} {}", f.postposition, f.verb))
        .collect();
    let want: BTreeSet<String> = ["에 관한", "에 관해", "에 관해서", "에 관하여"]
        .map(String::from)
        .into();
    ensure!(gwan == want, "관 forms {gwan:?}");
    Ok(())
}

fn one(ms: &[Match], stem: &str, lemma: &str, suffix: &str) -> Check {
    ensure!(ms.len() == 1, "{} matches", ms.len());
    let m = &ms[0];
    ensure!(
        (m.stem.as_str(), m.lemma.as_str(), m.suffix.as_str()) == (stem, lemma, suffix),
        "got {} {} {}",
        m.stem,
        m.lemma,
        m.suffix
    );
    Ok(())
}

fn matching_fixtures() -> Check {
    let lex = lexicon::builtin();
    let index = FormIndex::new(&lex);
    let opts = MatchOptions::default();
    let tagged = common::examples();
    let by_id = |id: &str| tagged.iter().find(|s| s.id == id).unwrap();

    let raw = RawSentence::from_eojeols("ex01", ["게에", "관한", "책"]);
    one(&matcher::match_raw(&raw, &index, &opts), "관", "에", "한")?;
    one(&matcher::match_tagged(by_id("ex01"), &lex, &opts), "관", "에", "한")?;

    for id in ["ex06", "ex07", "ex08"] {
        let ms = matcher::match_tagged(by_id(id), &lex, &opts);
        ensure!(ms.is_empty(), "{id}: {} lexicon matches", ms.len());
        let raw = RawSentence::from_eojeols(id, by_id(id).eojeol_surfaces().iter().map(String::as_str));
        ensure!(matcher::match_raw(&raw, &index, &opts).is_empty(), "{id} raw");
    }

    let ms = matcher::match_tagged(by_id("ex13"), &lex, &opts);
    one(&ms, "향", "를", "한")?;
    ensure!(ms[0].postposition == "을", "allomorph {}", ms[0].postposition);
    Ok(())
}

fn classifier_fixtures() -> Check {
    let results = common::classify_examples();
    let ids: Vec<String> = common::examples().into_iter().map(|s| s.id).collect();
    let expected = common::expectations();
    ensure!(expected.len() >= 12, "{} expectations", expected.len());
    let mut checked = 0;
    for (id, classified) in ids.iter().zip(&results) {
        let rows: Vec<_> = expected.iter().filter(|e| &e.sent_id == id).collect();
        ensure!(rows.len() == classified.len(), "{id}: {} matches", classified.len());
        for (e, (m, c)) in rows.iter().zip(classified) {
            let flags: BTreeSet<String> = c.flags.iter().map(|f| format!("{f:?}")).collect();
            let want: BTreeSet<String> = e.flags.iter().cloned().collect();
            ensure!(
                m.stem == e.stem && m.suffix == e.suffix,
                "{id}: matched {} {}",
                m.stem,
                m.suffix
            );
            ensure!(
                format!("{:?}", c.label) == e.label,
                "{id}: {:?}, expected {}",
                c.label,
                e.label
            );
            ensure!(flags == want, "{id}: flags {flags:?}");
            ensure!(
                (c.label != ConstructionLabel::Rejected) == e.grammatical,
                "{id}: judgment"
            );
            checked += 1;
        }
    }
    ensure!(checked == expected.len(), "{checked} of {} checked", expected.len());
    Ok(())
}

fn table2_matrix() -> Check {
    let results = common::classify_examples();
    let ids: Vec<String> = common::examples().into_iter().map(|s| s.id).collect();
    let table = common::table2();
    ensure!(table.len() == 12, "{} cells", table.len());
    for (form, construction, sent_id, cell) in &table {
        let i = ids
            .iter()
            .position(|id| id == sent_id)
            .ok_or(format!("{sent_id} missing"))?;
        ensure!(results[i].len() == 1, "{sent_id}: {} matches", results[i].len());
        let label = format!("{:?}", results[i][0].1.label);
        ensure!(
            label == common::cell_label(construction, cell),
            "{form}/{construction}: {label} for cell {cell}"
        );
    }
    Ok(())
}

fn miner_oracle() -> Check {
    let corpus = common::synthetic();
    ensure!(corpus.len() == 1000, "{} sentences", corpus.len());
    let mined = miner::mine(&corpus);
    common::compare_with_oracle(&mined, &common::oracle_mine(&corpus))?;
    let report = miner::rank(mined.values(), miner::DEFAULT_TOP_K).map_err(|e| e.to_string())?;
    ensure!(
        miner::report_tsv(&report) == common::read_fixture("synthetic.report.tsv"),
        "report differs from golden"
    );
    let n = corpus.len();
    let perms: [Box<dyn Fn(usize) -> usize>; 3] = [
        Box::new(|i| n - 1 - i),
        Box::new(|i| (i + 337) % n),
        Box::new(|i| i * 7919 % n),
    ];
    for p in &perms {
        let shuffled: Vec<_> = (0..n).map(|i| corpus[p(i)].clone()).collect();
        ensure!(miner::mine(&shuffled) == mined, "permuted corpus differs");
    }
    Ok(())
}

fn boundness_separation() -> Check {
    let mined = miner::mine(&common::synthetic());
    for e in &lexicon::builtin().entries {
        if let Some(s) = mined.get(&e.stem_hangul) {
            let b = s.boundness().map_err(|e| e.to_string())?;
            ensure!(b >= 0.95, "{}: {b:.4}", e.stem_hangul);
        }
    }
    for noun in ["산책", "공부", "운동", "청소", "준비"] {
        let s = mined.get(noun).ok_or(format!("{noun} absent"))?;
        ensure!(s.standalone > 0, "{noun} never standalone");
        let b = s.boundness().map_err(|e| e.to_string())?;
        ensure!(b <= 0.8, "{noun}: {b:.4}");
    }
    Ok(())
}

fn cupt_round_trip() -> Check {
    let corpus = common::examples();
    let cupt = annotator::annotate_corpus(&corpus, &common::classify_examples(), DEFAULT_CATEGORY)
        .map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    corpus_io::write_cupt(&cupt, &mut buf).map_err(|e| e.to_string())?;
    let back = corpus_io::read_cupt(&buf[..]).map_err(|e| e.to_string())?;
    ensure!(back == cupt, "round trip differs");
    for (s, c) in corpus.iter().zip(&cupt) {
        let ids: Vec<usize> = c.mwes.iter().map(|m| m.id).collect();
        ensure!(ids == (1..=ids.len()).collect::<Vec<_>>(), "{}: ids {ids:?}", s.id);
        for m in &c.mwes {
            for &t in &m.tokens {
                ensure!(
                    !s.tokens[t].tag.starts_with('N'),
                    "{}: host noun {} annotated",
                    s.id,
                    s.tokens[t].surface
                );
            }
        }
    }
    Ok(())
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for threads in ["1", "4", "1"] {
        let report = dir.path().join("report.jsonl");
        let o = Command::new(env!("CARGO_BIN_EXE_pvc"))
            .args(["--open-stems", "--threads", threads, "annotate", "--report"])
            .arg(&report)
            .arg(common::fixture("examples.tsv"))
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(o.status.success(), "exit {:?}", o.status.code());
        outputs.push((o.stdout, std::fs::read(&report).map_err(|e| e.to_string())?));
    }
    ensure!(outputs.windows(2).all(|w| w[0] == w[1]), "outputs differ");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("lexicon fidelity", lexicon_fidelity, 1),
        ("hangul property suite", hangul_suite, 1),
        ("surface expansion", surface_expansion, 1),
        ("matching fixtures", matching_fixtures, 1),
        ("classifier fixture suite", classifier_fixtures, 1),
        ("table 2 consistency matrix", table2_matrix, 1),
        ("miner oracle equivalence", miner_oracle, 5),
        ("boundness separation", boundness_separation, 1),
        ("cupt round trip", cupt_round_trip, 1),
        ("end-to-end determinism", determinism, 1),
    ];
    let mut failed = 0;
    for (n, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= Duration::from_secs(*limit) {
                Ok(())
            } else {
                Err(format!("over the {limit} s limit"))
            }
        });
        let ms = elapsed.as_millis();
        match result {
            Ok(()) => println!("criterion {:>2} PASS {name} ({ms} ms)", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({ms} ms): {e}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
