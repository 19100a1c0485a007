//! Hangul syllable arithmetic and postposition allomorphy.
//!
//! Only precomposed syllables (U+AC00..=U+D7A3) are decomposed. Compatibility
//! jamo and conjoining jamo are treated as non-Hangul for final-consonant
//! purposes.

use std::fmt;

use thiserror::Error;

const SYLLABLE_BASE: u32 = 0xAC00;
const SYLLABLE_LAST: u32 = 0xD7A3;
const INITIAL_COUNT: u8 = 19;
const MEDIAL_COUNT: u8 = 21;
const FINAL_COUNT: u8 = 28;
const MEDIAL_STRIDE: u32 = MEDIAL_COUNT as u32 * FINAL_COUNT as u32; // 588

/// Final index of ㄹ.
pub const FINAL_RIEUL: u8 = 8;

/// Compatibility jamo (U+3131 block) for each final index, `None` at index 0.
const FINAL_COMPAT: [Option<char>; 28] = [
    None,
    Some('ㄱ'),
    Some('ㄲ'),
    Some('ㄳ'),
    Some('ㄴ'),
    Some('ㄵ'),
    Some('ㄶ'),
    Some('ㄷ'),
    Some('ㄹ'),
    Some('ㄺ'),
    Some('ㄻ'),
    Some('ㄼ'),
    Some('ㄽ'),
    Some('ㄾ'),
    Some('ㄿ'),
    Some('ㅀ'),
    Some('ㅁ'),
    Some('ㅂ'),
    Some('ㅄ'),
    Some('ㅅ'),
    Some('ㅆ'),
    Some('ㅇ'),
    Some('ㅈ'),
    Some('ㅊ'),
    Some('ㅋ'),
    Some('ㅌ'),
    Some('ㅍ'),
    Some('ㅎ'),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HangulError {
    #[error("jamo index out of range: initial {initial} (max 18), medial {medial} (max 20), final {final_} (max 27)")]
    Range { initial: u8, medial: u8, final_: u8 },
    #[error("empty word")]
    EmptyWord,
    #[error("unknown postposition `{0}`")]
    UnknownPostposition(String),
}

/// Indices of a precomposed syllable's three jamo slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SyllableParts {
    pub initial: u8,
    pub medial: u8,
    /// 0 means no final consonant.
    pub final_: u8,
}

impl SyllableParts {
    pub fn new(initial: u8, medial: u8, final_: u8) -> Self {
        SyllableParts {
            initial,
            medial,
            final_,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.initial < INITIAL_COUNT && self.medial < MEDIAL_COUNT && self.final_ < FINAL_COUNT
    }
}

/// Classification of a word's last character for allomorph selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FinalKind {
    Vowel,
    Rieul,
    OtherConsonant,
    NonHangul,
}

impl fmt::Display for FinalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FinalKind::Vowel => "vowel",
            FinalKind::Rieul => "rieul",
            FinalKind::OtherConsonant => "consonant",
            FinalKind::NonHangul => "non-hangul",
        };
        f.write_str(s)
    }
}

pub fn is_syllable(c: char) -> bool {
    (SYLLABLE_BASE..=SYLLABLE_LAST).contains(&(c as u32))
}

pub fn decompose(c: char) -> Option<SyllableParts> {
    if !is_syllable(c) {
        return None;
    }
    let offset = c as u32 - SYLLABLE_BASE;
    Some(SyllableParts {
        initial: (offset / MEDIAL_STRIDE) as u8,
        medial: ((offset % MEDIAL_STRIDE) / FINAL_COUNT as u32) as u8,
        final_: (offset % FINAL_COUNT as u32) as u8,
    })
}

pub fn compose(parts: SyllableParts) -> Result<char, HangulError> {
    if !parts.is_valid() {
        return Err(HangulError::Range {
            initial: parts.initial,
            medial: parts.medial,
            final_: parts.final_,
        });
    }
    let code = SYLLABLE_BASE
        + parts.initial as u32 * MEDIAL_STRIDE
        + parts.medial as u32 * FINAL_COUNT as u32
        + parts.final_ as u32;
    // The range check above keeps `code` inside the syllable block.
    Ok(char::from_u32(code).expect("syllable block code point"))
}

/// Final index encoded by a compatibility jamo (ㄴ → 4), if it can be a final.
pub fn final_index_of_jamo(c: char) -> Option<u8> {
    FINAL_COMPAT.iter().position(|j| *j == Some(c)).map(|i| i as u8)
}

/// Compatibility jamo for a final index, `None` for 0 or out of range.
pub fn jamo_of_final_index(index: u8) -> Option<char> {
    FINAL_COMPAT.get(index as usize).copied().flatten()
}

fn kind_of_char(c: char) -> FinalKind {
    match decompose(c) {
        None => FinalKind::NonHangul,
        Some(p) if p.final_ == 0 => FinalKind::Vowel,
        Some(p) if p.final_ == FINAL_RIEUL => FinalKind::Rieul,
        Some(_) => FinalKind::OtherConsonant,
    }
}

pub fn final_kind(word: &str) -> Result<FinalKind, HangulError> {
    word.chars().next_back().map(kind_of_char).ok_or(HangulError::EmptyWord)
}

/// Which variant a non-Hangul-final host (digits, Latin) receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NonHangulPolicy {
    /// The citation form (를, 로).
    #[default]
    Lemma,
    /// Treat the host as vowel-final.
    Vowel,
    /// Treat the host as consonant-final (를 → 을, 로 → 으로).
    Consonant,
}

/// Postposition lemmas known to the allomorph rules.
pub const POSTPOSITION_LEMMAS: [&str; 5] = ["에", "를", "로", "에도", "에게"];

/// All surface variants of a lemma, citation form first.
pub fn surfaces(lemma: &str) -> Result<&'static [&'static str], HangulError> {
    Ok(match lemma {
        "에" => &["에"],
        "를" => &["를", "을"],
        "로" => &["로", "으로"],
        "에도" => &["에도"],
        "에게" => &["에게"],
        other => return Err(HangulError::UnknownPostposition(other.to_owned())),
    })
}

/// The lemma a postposition surface realizes, if any.
pub fn lemma_of_surface(surface: &str) -> Option<&'static str> {
    POSTPOSITION_LEMMAS
        .iter()
        .copied()
        .find(|lemma| surfaces(lemma).is_ok_and(|s| s.contains(&surface)))
}

/// Allomorph of `lemma` selected by a host of the given final kind.
pub fn allomorph_for_kind(lemma: &str, kind: FinalKind, policy: NonHangulPolicy) -> Result<&'static str, HangulError> {
    let variants = surfaces(lemma)?;
    if variants.len() == 1 {
        return Ok(variants[0]);
    }
    let kind = match (kind, policy) {
        (FinalKind::NonHangul, NonHangulPolicy::Lemma) => return Ok(variants[0]),
        (FinalKind::NonHangul, NonHangulPolicy::Vowel) => FinalKind::Vowel,
        (FinalKind::NonHangul, NonHangulPolicy::Consonant) => FinalKind::OtherConsonant,
        (k, _) => k,
    };
    let consonant_form = match lemma {
        "를" => matches!(kind, FinalKind::OtherConsonant | FinalKind::Rieul),
        // ㄹ-final hosts keep 로.
        "로" => kind == FinalKind::OtherConsonant,
        _ => false,
    };
    Ok(if consonant_form { variants[1] } else { variants[0] })
}

/// Allomorph of `lemma` after `host`, with the default non-Hangul policy.
pub fn allomorph(lemma: &str, host: &str) -> Result<&'static str, HangulError> {
    allomorph_with(lemma, host, NonHangulPolicy::default())
}

pub fn allomorph_with(lemma: &str, host: &str, policy: NonHangulPolicy) -> Result<&'static str, HangulError> {
    let kind = final_kind(host)?;
    allomorph_for_kind(lemma, kind, policy)
}

/// Whether `surface` may follow a host of final kind `kind`. Non-Hangul
/// hosts accept every variant, since written practice varies.
pub fn surface_compatible(lemma: &str, surface: &str, kind: FinalKind) -> bool {
    let Ok(variants) = surfaces(lemma) else {
        return false;
    };
    if !variants.contains(&surface) {
        return false;
    }
    if kind == FinalKind::NonHangul {
        return true;
    }
    allomorph_for_kind(lemma, kind, NonHangulPolicy::Lemma) == Ok(surface)
}

/// Attach `jamo` as the final consonant of the last syllable of `word`.
/// Returns `None` when the last syllable already has a final.
pub fn attach_final(word: &str, jamo: char) -> Option<String> {
    let final_ = final_index_of_jamo(jamo)?;
    let last = word.chars().next_back()?;
    let parts = decompose(last)?;
    if parts.final_ != 0 {
        return None;
    }
    let composed = compose(SyllableParts { final_, ..parts }).ok()?;
    let mut out: String = word[..word.len() - last.len_utf8()].to_owned();
    out.push(composed);
    Some(out)
}

/// Split the final consonant off a syllable: 한 → (하, ㄴ).
pub fn detach_final(c: char) -> Option<(char, char)> {
    let parts = decompose(c)?;
    let jamo = jamo_of_final_index(parts.final_)?;
    let open = compose(SyllableParts { final_: 0, ..parts }).ok()?;
    Some((open, jamo))
}
