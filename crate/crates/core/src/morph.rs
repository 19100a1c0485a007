//! Morpheme-level helpers for 하다 verb complexes: composing a verbalizer
//! with its endings into a surface string, and splitting analyzer output
//! that fuses several morphemes under one `+`-joined tag.

use crate::hangul;

const HIEUH: u8 = 18;
const MEDIAL_A: u8 = 0;
const MEDIAL_AE: u8 = 1;
const FINAL_SSANGSIOS: u8 = 20;

/// Compose `base` with a sequence of ending morphemes.
///
/// A leading final-consonant jamo attaches to an open last syllable
/// (하 + ㄴ → 한) and 아/어-initial endings contract with 하 (하 + 아서 →
/// 해서, 하 + 았 → 했). Everything else concatenates (하 + 여 → 하여).
pub fn realize<S: AsRef<str>>(base: &str, endings: &[S]) -> String {
    let mut out = base.to_owned();
    for ending in endings {
        append_ending(&mut out, ending.as_ref());
    }
    out
}

fn append_ending(out: &mut String, ending: &str) {
    let mut chars = ending.chars();
    let Some(first) = chars.next() else {
        return;
    };
    let rest = chars.as_str();
    if hangul::final_index_of_jamo(first).is_some() {
        if let Some(attached) = hangul::attach_final(out, first) {
            *out = attached;
            out.push_str(rest);
            return;
        }
    }
    if out.ends_with('하') {
        let contracted = match first {
            '아' | '어' => Some('해'),
            '았' | '었' => Some('했'),
            _ => None,
        };
        if let Some(c) = contracted {
            out.pop();
            out.push(c);
            out.push_str(rest);
            return;
        }
    }
    out.push_str(ending);
}

pub fn is_verbalizer_tag(tag: &str) -> bool {
    tag == "XSV" || tag == "XSA" || tag.starts_with('V')
}

fn is_ending_or_particle(tag: &str) -> bool {
    tag.starts_with('E') || tag.starts_with('J')
}

fn units(s: &str) -> Vec<String> {
    s.chars().map(String::from).collect()
}

/// Split `units` into `k` nonempty parts, one unit each for the last `k-1`
/// parts and the remainder for the first.
fn right_aligned(units: &[String], k: usize) -> Option<Vec<String>> {
    if k == 0 || units.len() < k {
        return None;
    }
    let head = units.len() - (k - 1);
    let mut parts = vec![units[..head].concat()];
    parts.extend(units[head..].iter().cloned());
    Some(parts)
}

/// Endings hidden in a 하-family syllable: 한 → ㄴ, 해 → 아, 했 → 았.
fn ha_syllable_endings(c: char) -> Option<String> {
    let p = hangul::decompose(c)?;
    if p.initial != HIEUH {
        return None;
    }
    match (p.medial, p.final_) {
        (MEDIAL_A, 0) => Some(String::new()),
        (MEDIAL_A, f) => hangul::jamo_of_final_index(f).map(String::from),
        (MEDIAL_AE, 0) => Some("아".into()),
        (MEDIAL_AE, FINAL_SSANGSIOS) => Some("았".into()),
        _ => None,
    }
}

fn is_ha_family(c: char) -> bool {
    ha_syllable_endings(c).is_some()
}

/// Split a fused analyzer token into one surface per tag.
///
/// Explicit `+` separators in the surface are honored first. Otherwise a
/// verbalizer tag followed only by endings/particles is split around the
/// 하-family syllable (관한/XR+XSV+ETM → 관, 하, ㄴ). Remaining cases assign
/// one character to each trailing tag and the rest to the first.
pub fn split_fused(surface: &str, tags: &[&str]) -> Option<Vec<String>> {
    match tags.len() {
        0 => return None,
        1 => return Some(vec![surface.to_owned()]),
        _ => {}
    }
    if surface.contains('+') {
        let parts: Vec<String> = surface.split('+').map(str::to_owned).collect();
        return (parts.len() == tags.len() && parts.iter().all(|p| !p.is_empty())).then_some(parts);
    }
    if let Some(v) = tags.iter().position(|t| is_verbalizer_tag(t)) {
        if tags[v + 1..].iter().all(|t| is_ending_or_particle(t)) {
            if let Some(parts) = split_around_verbalizer(surface, v, tags.len() - v - 1) {
                return Some(parts);
            }
        }
    }
    right_aligned(&units(surface), tags.len())
}

fn split_around_verbalizer(surface: &str, prefix_tags: usize, ending_tags: usize) -> Option<Vec<String>> {
    let chars: Vec<char> = surface.chars().collect();
    let pos = (prefix_tags..chars.len()).find(|&i| is_ha_family(chars[i]))?;
    let prefix: Vec<String> = chars[..pos].iter().map(|c| c.to_string()).collect();
    let mut parts = if prefix_tags == 0 {
        if !prefix.is_empty() {
            return None;
        }
        Vec::new()
    } else {
        right_aligned(&prefix, prefix_tags)?
    };
    parts.push("하".to_owned());
    let mut ending = ha_syllable_endings(chars[pos])?;
    ending.extend(&chars[pos + 1..]);
    match ending_tags {
        0 if ending.is_empty() => {}
        0 => return None,
        k => parts.extend(right_aligned(&units(&ending), k)?),
    }
    Some(parts)
}
