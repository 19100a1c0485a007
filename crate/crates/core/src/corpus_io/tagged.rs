use std::io::{Read, Write};

use super::{decode, split_morphemes, CorpusError, MorphToken, TaggedSentence};

const SENT_ID_PREFIX: &str = "# sent_id = ";

/// Read the three-column tagged format: `surface<TAB>tag<TAB>eojeol_index`
/// per morpheme, blank lines between sentences. A `# sent_id = ...` line
/// names the following sentence; otherwise ids count from 1. Fused tags
/// (`XSV+ETM`) are split into separate morphemes.
pub fn read_tagged<R: Read>(mut stream: R) -> Result<Vec<TaggedSentence>, CorpusError> {
    let mut bytes = Vec::new();
    stream.read_to_end(&mut bytes)?;
    let text = decode(&bytes)?;

    let mut sentences = Vec::new();
    let mut tokens: Vec<MorphToken> = Vec::new();
    let mut pending_id: Option<String> = None;

    let finish =
        |tokens: &mut Vec<MorphToken>, pending_id: &mut Option<String>, sentences: &mut Vec<TaggedSentence>| {
            if tokens.is_empty() {
                return;
            }
            let id = pending_id.take().unwrap_or_else(|| (sentences.len() + 1).to_string());
            sentences.push(TaggedSentence::new(id, std::mem::take(tokens)));
        };

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            finish(&mut tokens, &mut pending_id, &mut sentences);
            continue;
        }
        if line.starts_with('#') && !line.contains('\t') {
            if let Some(id) = line.strip_prefix(SENT_ID_PREFIX) {
                pending_id = Some(id.trim().to_owned());
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(CorpusError::parse(
                line_no,
                format!("expected 3 columns, found {}", cols.len()),
            ));
        }
        if cols[0].is_empty() || cols[1].is_empty() {
            return Err(CorpusError::parse(line_no, "empty surface or tag"));
        }
        let eojeol: usize = cols[2]
            .trim()
            .parse()
            .map_err(|_| CorpusError::parse(line_no, format!("eojeol index `{}` is not an integer", cols[2])))?;
        if let Some(prev) = tokens.last() {
            if eojeol < prev.eojeol {
                return Err(CorpusError::parse(
                    line_no,
                    format!("eojeol index {eojeol} decreases (previous {})", prev.eojeol),
                ));
            }
        }
        tokens.extend(split_morphemes(cols[0], cols[1], eojeol, line_no)?);
    }
    finish(&mut tokens, &mut pending_id, &mut sentences);
    Ok(sentences)
}

pub fn write_tagged<W: Write>(sentences: &[TaggedSentence], mut w: W) -> Result<(), CorpusError> {
    for (i, s) in sentences.iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        writeln!(w, "{SENT_ID_PREFIX}{}", s.id)?;
        for t in &s.tokens {
            writeln!(w, "{}\t{}\t{}", t.surface, t.tag, t.eojeol)?;
        }
    }
    Ok(())
}
