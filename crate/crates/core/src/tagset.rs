//! Morpheme tag classes. Defaults follow Sejong-style tags as emitted by
//! Mecab-ko; every class is overridable.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagSet {
    /// Prefix of adposition (josa) tags.
    pub adposition_prefix: String,
    /// Prefix of noun tags, accepted for stems the analyzer mis-tags.
    pub noun_prefix: String,
    pub root_tags: Vec<String>,
    pub verbalizer_tags: Vec<String>,
    /// Prefix of verb tags, also accepted for the verbalizer.
    pub verb_prefix: String,
    pub ending_prefix: String,
    pub tense_tags: Vec<String>,
    pub final_tags: Vec<String>,
    pub adnominal_tags: Vec<String>,
    pub connective_tags: Vec<String>,
    pub nominalizer_tags: Vec<String>,
    pub adverb_tags: Vec<String>,
}

fn owned(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

impl Default for TagSet {
    fn default() -> Self {
        TagSet {
            adposition_prefix: "J".into(),
            noun_prefix: "N".into(),
            root_tags: owned(&["XR"]),
            verbalizer_tags: owned(&["XSV"]),
            verb_prefix: "V".into(),
            ending_prefix: "E".into(),
            tense_tags: owned(&["EP"]),
            final_tags: owned(&["EF"]),
            adnominal_tags: owned(&["ETM"]),
            connective_tags: owned(&["EC"]),
            nominalizer_tags: owned(&["ETN"]),
            adverb_tags: owned(&["MAG"]),
        }
    }
}

fn listed(list: &[String], tag: &str) -> bool {
    list.iter().any(|t| t == tag)
}

impl TagSet {
    pub fn is_adposition(&self, tag: &str) -> bool {
        tag.starts_with(self.adposition_prefix.as_str())
    }

    pub fn is_noun(&self, tag: &str) -> bool {
        tag.starts_with(self.noun_prefix.as_str())
    }

    /// Root or noun: a possible bound stem.
    pub fn is_stem(&self, tag: &str) -> bool {
        listed(&self.root_tags, tag) || self.is_noun(tag)
    }

    pub fn is_verbalizer(&self, tag: &str) -> bool {
        listed(&self.verbalizer_tags, tag) || tag.starts_with(self.verb_prefix.as_str())
    }

    pub fn is_verb(&self, tag: &str) -> bool {
        tag.starts_with(self.verb_prefix.as_str())
    }

    pub fn is_ending(&self, tag: &str) -> bool {
        tag.starts_with(self.ending_prefix.as_str())
    }

    pub fn is_tense(&self, tag: &str) -> bool {
        listed(&self.tense_tags, tag)
    }

    pub fn is_final(&self, tag: &str) -> bool {
        listed(&self.final_tags, tag)
    }

    pub fn is_adnominal(&self, tag: &str) -> bool {
        listed(&self.adnominal_tags, tag)
    }

    pub fn is_connective(&self, tag: &str) -> bool {
        listed(&self.connective_tags, tag)
    }

    pub fn is_nominalizer(&self, tag: &str) -> bool {
        listed(&self.nominalizer_tags, tag)
    }

    pub fn is_adverb(&self, tag: &str) -> bool {
        listed(&self.adverb_tags, tag)
    }

    /// Override one class by name, as used by config files
    /// (`tag.adverb = MAG,MAJ`).
    pub fn set(&mut self, class: &str, value: &str) -> Result<(), String> {
        let list = || {
            value
                .split(',')
                .map(|s| s.trim().to_owned())
                .filter(|s| !s.is_empty())
                .collect()
        };
        match class {
            "adposition_prefix" => self.adposition_prefix = value.trim().into(),
            "noun_prefix" => self.noun_prefix = value.trim().into(),
            "verb_prefix" => self.verb_prefix = value.trim().into(),
            "ending_prefix" => self.ending_prefix = value.trim().into(),
            "root" => self.root_tags = list(),
            "verbalizer" => self.verbalizer_tags = list(),
            "tense" => self.tense_tags = list(),
            "final" => self.final_tags = list(),
            "adnominal" => self.adnominal_tags = list(),
            "connective" => self.connective_tags = list(),
            "nominalizer" => self.nominalizer_tags = list(),
            "adverb" => self.adverb_tags = list(),
            other => return Err(format!("unknown tag class `{other}`")),
        }
        Ok(())
    }
}
