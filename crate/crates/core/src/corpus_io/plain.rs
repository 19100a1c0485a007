use std::io::Read;

use super::{decode, CorpusError, RawSentence};

fn ends_sentence(eojeol: &str) -> bool {
    matches!(eojeol.chars().next_back(), Some('.' | '?' | '!'))
}

/// Read plain text into sentences. A sentence ends at a newline or after an
/// eojeol ending in `.`, `?` or `!`; punctuation stays attached to its
/// eojeol. Sentence ids count from 1.
pub fn read_plain<R: Read>(mut stream: R) -> Result<Vec<RawSentence>, CorpusError> {
    let mut bytes = Vec::new();
    stream.read_to_end(&mut bytes)?;
    let text = decode(&bytes)?;

    let mut sentences = Vec::new();
    let mut current = RawSentence {
        id: String::new(),
        eojeols: Vec::new(),
        offsets: Vec::new(),
    };
    let flush = |current: &mut RawSentence, sentences: &mut Vec<RawSentence>| {
        if !current.eojeols.is_empty() {
            current.id = (sentences.len() + 1).to_string();
            sentences.push(std::mem::replace(
                current,
                RawSentence {
                    id: String::new(),
                    eojeols: Vec::new(),
                    offsets: Vec::new(),
                },
            ));
        }
    };

    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let mut start = None;
        for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    let word = &line[s..i];
                    current.eojeols.push(word.to_owned());
                    current.offsets.push((line_start + s, line_start + i));
                    start = None;
                    if ends_sentence(word) {
                        flush(&mut current, &mut sentences);
                    }
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        flush(&mut current, &mut sentences);
        line_start += line.len();
    }
    Ok(sentences)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sentence() {
        let s = read_plain("게에 관한 책".as_bytes()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].eojeols, ["게에", "관한", "책"]);
        assert_eq!(s[0].id, "1");
        assert_eq!(s[0].offsets[1], (7, 13));
    }

    #[test]
    fn empty_input() {
        assert!(read_plain("".as_bytes()).unwrap().is_empty());
        assert!(read_plain(" \n\t\n".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn terminal_punctuation_splits() {
        let s = read_plain("a. b".as_bytes()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].eojeols, ["a."]);
        assert_eq!(s[1].eojeols, ["b"]);
        // no split without following whitespace
        let s = read_plain("3.5 kg".as_bytes()).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn newline_splits_and_offsets() {
        let text = "게에 관한 책\n하늘을  향한 공!  끝";
        let s = read_plain(text.as_bytes()).unwrap();
        assert_eq!(s.len(), 3);
        for sent in &s {
            for (e, (a, b)) in sent.eojeols.iter().zip(&sent.offsets) {
                assert_eq!(&text[*a..*b], e);
            }
        }
        assert_eq!(s[2].eojeols, ["끝"]);
    }

    #[test]
    fn invalid_utf8_offset() {
        let bytes = [b'a', b' ', 0xff, b'b'];
        match read_plain(&bytes[..]) {
            Err(CorpusError::Decode { offset }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
