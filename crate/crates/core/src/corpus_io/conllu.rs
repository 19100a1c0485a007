use std::io::Read;

use super::{decode, split_morphemes, CorpusError, MorphToken, TaggedSentence};

/// Read ten-column treebank records, one morpheme token per `+`-joined XPOS
/// part. Morpheme surfaces come from a `+`-joined LEMMA when its part count
/// matches XPOS, otherwise FORM is split. Multiword ranges (`3-4`) and empty
/// nodes (`3.1`) are skipped.
pub fn read_conllu<R: Read>(mut stream: R) -> Result<Vec<TaggedSentence>, CorpusError> {
    let mut bytes = Vec::new();
    stream.read_to_end(&mut bytes)?;
    let text = decode(&bytes)?;

    let mut sentences = Vec::new();
    let mut tokens: Vec<MorphToken> = Vec::new();
    let mut words = 0usize;
    let mut sent_id: Option<String> = None;

    for (i, line) in text.lines().chain(std::iter::once("")).enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            if !tokens.is_empty() {
                let id = sent_id.take().unwrap_or_else(|| (sentences.len() + 1).to_string());
                sentences.push(TaggedSentence::new(id, std::mem::take(&mut tokens)));
            }
            sent_id = None;
            words = 0;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "sent_id" {
                    sent_id = Some(value.trim().to_owned());
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(CorpusError::parse(
                line_no,
                format!("expected 10 columns, found {}", cols.len()),
            ));
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let n: usize = id
            .parse()
            .map_err(|_| CorpusError::parse(line_no, format!("bad token id `{id}`")))?;
        if n != words + 1 {
            return Err(CorpusError::parse(
                line_no,
                format!("token id {n} out of sequence (expected {})", words + 1),
            ));
        }
        let (form, lemma, xpos) = (cols[1], cols[2], cols[4]);
        if form.is_empty() || xpos.is_empty() || xpos == "_" {
            return Err(CorpusError::parse(line_no, "missing FORM or XPOS"));
        }
        let tag_count = xpos.split('+').count();
        let surface = if tag_count > 1 && lemma.split('+').count() == tag_count {
            lemma
        } else {
            form
        };
        tokens.extend(split_morphemes(surface, xpos, words, line_no)?);
        words += 1;
    }
    Ok(sentences)
}
