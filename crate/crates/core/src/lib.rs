//! Identification, mining, classification and annotation of Korean
//! postpositional verb-based constructions (PVCs): a postposition, a bound
//! stem and a restricted 하다 inflection, such as 에 관한 'about'.

pub mod annotator;
pub mod classifier;
pub mod cli;
pub mod config;
pub mod corpus_io;
pub mod hangul;
pub mod lexicon;
pub mod matcher;
pub mod miner;
pub mod morph;
pub mod tagset;
