use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{decode, CorpusError};

pub const CUPT_GLOBAL_COLUMNS: &str =
    "# global.columns = ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS MISC PARSEME:MWE";

const SENT_ID_PREFIX: &str = "# source_sent_id = ";

/// The ten treebank columns of one token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuptRow {
    pub id: String,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: String,
    pub feats: String,
    pub head: String,
    pub deprel: String,
    pub deps: String,
    pub misc: String,
}

impl CuptRow {
    fn columns(&self) -> [&str; 10] {
        [
            &self.id,
            &self.form,
            &self.lemma,
            &self.upos,
            &self.xpos,
            &self.feats,
            &self.head,
            &self.deprel,
            &self.deps,
            &self.misc,
        ]
    }

    fn from_columns(cols: &[&str]) -> Self {
        CuptRow {
            id: cols[0].into(),
            form: cols[1].into(),
            lemma: cols[2].into(),
            upos: cols[3].into(),
            xpos: cols[4].into(),
            feats: cols[5].into(),
            head: cols[6].into(),
            deprel: cols[7].into(),
            deps: cols[8].into(),
            misc: cols[9].into(),
        }
    }
}

/// One multiword expression: per-sentence id, category and 0-based row
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mwe {
    pub id: usize,
    pub category: String,
    pub tokens: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuptSentence {
    pub id: String,
    pub rows: Vec<CuptRow>,
    pub mwes: Vec<Mwe>,
}

impl CuptSentence {
    fn check(&self) -> Result<(), String> {
        for (i, m) in self.mwes.iter().enumerate() {
            if m.id != i + 1 {
                return Err(format!(
                    "sentence {}: MWE ids must be 1..k in order, found {} at position {}",
                    self.id,
                    m.id,
                    i + 1
                ));
            }
            if m.category.is_empty() || m.category.contains([':', ';', '\t', '*']) {
                return Err(format!("sentence {}: bad MWE category `{}`", self.id, m.category));
            }
            if m.tokens.is_empty() {
                return Err(format!("sentence {}: MWE {} has no tokens", self.id, m.id));
            }
            if m.tokens.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!(
                    "sentence {}: MWE {} token indices not increasing",
                    self.id, m.id
                ));
            }
            if m.tokens.iter().any(|&t| t >= self.rows.len()) {
                return Err(format!("sentence {}: MWE {} refers to a missing token", self.id, m.id));
            }
        }
        Ok(())
    }

    /// Contents of the MWE column for each row.
    pub fn mwe_column(&self) -> Vec<String> {
        let mut col: Vec<Vec<String>> = vec![Vec::new(); self.rows.len()];
        for m in &self.mwes {
            for (k, &t) in m.tokens.iter().enumerate() {
                if let Some(cell) = col.get_mut(t) {
                    cell.push(if k == 0 {
                        format!("{}:{}", m.id, m.category)
                    } else {
                        m.id.to_string()
                    });
                }
            }
        }
        col.into_iter()
            .map(|c| if c.is_empty() { "*".into() } else { c.join(";") })
            .collect()
    }
}

pub fn write_cupt<W: Write>(sentences: &[CuptSentence], mut w: W) -> Result<(), CorpusError> {
    for s in sentences {
        s.check().map_err(CorpusError::Serialize)?;
    }
    writeln!(w, "{CUPT_GLOBAL_COLUMNS}")?;
    for s in sentences {
        writeln!(w, "{SENT_ID_PREFIX}{}", s.id)?;
        for (row, mwe) in s.rows.iter().zip(s.mwe_column()) {
            writeln!(w, "{}\t{}", row.columns().join("\t"), mwe)?;
        }
        writeln!(w)?;
    }
    Ok(())
}

fn parse_mwe_cell(
    cell: &str,
    token: usize,
    line: usize,
    acc: &mut BTreeMap<usize, (Option<String>, Vec<usize>)>,
) -> Result<(), CorpusError> {
    if cell == "*" || cell == "_" {
        return Ok(());
    }
    for part in cell.split(';') {
        let (id, category) = match part.split_once(':') {
            Some((id, cat)) => (id, Some(cat)),
            None => (part, None),
        };
        let id: usize = id
            .parse()
            .map_err(|_| CorpusError::parse(line, format!("bad MWE code `{part}`")))?;
        let entry = acc.entry(id).or_insert((None, Vec::new()));
        match (category, entry.1.is_empty()) {
            (Some(cat), true) => entry.0 = Some(cat.to_owned()),
            (Some(_), false) => {
                return Err(CorpusError::parse(
                    line,
                    format!("MWE {id} category repeated after its first token"),
                ))
            }
            (None, true) => return Err(CorpusError::parse(line, format!("MWE {id} starts without a category"))),
            (None, false) => {}
        }
        entry.1.push(token);
    }
    Ok(())
}

pub fn read_cupt<R: Read>(mut stream: R) -> Result<Vec<CuptSentence>, CorpusError> {
    let mut bytes = Vec::new();
    stream.read_to_end(&mut bytes)?;
    let text = decode(&bytes)?;

    let mut sentences = Vec::new();
    let mut rows = Vec::new();
    let mut acc: BTreeMap<usize, (Option<String>, Vec<usize>)> = BTreeMap::new();
    let mut sent_id: Option<String> = None;
    let mut start_line = 1;

    for (i, line) in text.lines().chain(std::iter::once("")).enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            if !rows.is_empty() {
                let mwes: Vec<Mwe> = std::mem::take(&mut acc)
                    .into_iter()
                    .map(|(id, (category, tokens))| Mwe {
                        id,
                        category: category.unwrap_or_default(),
                        tokens,
                    })
                    .collect();
                let s = CuptSentence {
                    id: sent_id.take().unwrap_or_else(|| (sentences.len() + 1).to_string()),
                    rows: std::mem::take(&mut rows),
                    mwes,
                };
                s.check().map_err(|m| CorpusError::parse(start_line, m))?;
                sentences.push(s);
            }
            sent_id = None;
            start_line = line_no + 1;
            continue;
        }
        if let Some(id) = line.strip_prefix(SENT_ID_PREFIX) {
            sent_id = Some(id.trim().to_owned());
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 11 {
            return Err(CorpusError::parse(
                line_no,
                format!("expected 11 columns, found {}", cols.len()),
            ));
        }
        parse_mwe_cell(cols[10], rows.len(), line_no, &mut acc)?;
        rows.push(CuptRow::from_columns(&cols[..10]));
    }
    Ok(sentences)
}
