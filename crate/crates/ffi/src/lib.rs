//! C ABI over `pvc-core`.
//!
//! Every fallible function returns a [`PvcStatus`]; on failure the message is
//! available from [`pvc_last_error`] on the same thread. Strings handed out
//! by the library are NUL-terminated UTF-8 and must be released with
//! [`pvc_string_free`]; lexicon handles with [`pvc_lexicon_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use pvc_core::annotator;
use pvc_core::classifier::{self, ClassifyOptions};
use pvc_core::corpus_io;
use pvc_core::hangul;
use pvc_core::lexicon::{self, Lexicon, LexiconError, LexiconFormat};
use pvc_core::matcher::{self, FormIndex, MatchOptions};
use pvc_core::miner;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PvcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Io = 5,
    Internal = 6,
}

/// Opaque lexicon handle.
pub struct PvcLexicon {
    inner: Lexicon,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(PvcStatus, String);

impl From<LexiconError> for Failure {
    fn from(e: LexiconError) -> Self {
        let status = match e {
            LexiconError::Parse { .. } | LexiconError::Json(_) => PvcStatus::Parse,
            LexiconError::Validation(_) => PvcStatus::Validation,
            LexiconError::Io(_) => PvcStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

impl From<corpus_io::CorpusError> for Failure {
    fn from(e: corpus_io::CorpusError) -> Self {
        let status = match e {
            corpus_io::CorpusError::Decode { .. } => PvcStatus::InvalidUtf8,
            corpus_io::CorpusError::Io(_) => PvcStatus::Io,
            _ => PvcStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PvcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PvcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PvcStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PvcStatus::NullArgument, format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(PvcStatus::InvalidUtf8, format!("`{name}`: {e}")))
}

unsafe fn lex_arg<'a>(p: *const PvcLexicon) -> Result<&'a Lexicon, Failure> {
    p.as_ref()
        .map(|l| &l.inner)
        .ok_or_else(|| Failure(PvcStatus::NullArgument, "`lexicon` is null".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PvcStatus::NullArgument, "`out` is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(PvcStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure(PvcStatus::Internal, e.to_string())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn pvc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn pvc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pvc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The built-in 14-entry lexicon.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pvc_lexicon_builtin(out: *mut *mut PvcLexicon) -> PvcStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(PvcStatus::NullArgument, "`out` is null".into()));
        }
        *out = Box::into_raw(Box::new(PvcLexicon {
            inner: lexicon::builtin(),
        }));
        Ok(())
    })
}

/// Load and validate a lexicon file; `.json` files are read as JSON,
/// anything else as TSV.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pvc_lexicon_load(path: *const c_char, out: *mut *mut PvcLexicon) -> PvcStatus {
    guard(|| {
        let path = Path::new(str_arg(path, "path")?);
        if out.is_null() {
            return Err(Failure(PvcStatus::NullArgument, "`out` is null".into()));
        }
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => LexiconFormat::Json,
            _ => LexiconFormat::Tsv,
        };
        let file = File::open(path).map_err(|e| Failure(PvcStatus::Io, format!("{}: {e}", path.display())))?;
        let inner = lexicon::load(file, format)?;
        *out = Box::into_raw(Box::new(PvcLexicon { inner }));
        Ok(())
    })
}

/// Number of entries; 0 for NULL.
///
/// # Safety
/// `lexicon` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvc_lexicon_len(lexicon: *const PvcLexicon) -> usize {
    lexicon.as_ref().map_or(0, |l| l.inner.len())
}

/// Release a lexicon handle. NULL is ignored.
///
/// # Safety
/// `lexicon` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pvc_lexicon_free(lexicon: *mut PvcLexicon) {
    if !lexicon.is_null() {
        drop(Box::from_raw(lexicon));
    }
}

/// Surface of postposition `lemma` after `host` (를 after 하늘 gives 을).
///
/// # Safety
/// String arguments must be NUL-terminated; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pvc_allomorph(lemma: *const c_char, host: *const c_char, out: *mut *mut c_char) -> PvcStatus {
    guard(|| {
        let lemma = str_arg(lemma, "lemma")?;
        let host = str_arg(host, "host")?;
        let s = hangul::allomorph(lemma, host).map_err(|e| Failure(PvcStatus::Validation, e.to_string()))?;
        put_string(out, s.to_owned())
    })
}

/// Match plain text; JSON lines, one per match.
///
/// # Safety
/// `lexicon` must be a live handle, `text` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pvc_match_raw(
    lexicon: *const PvcLexicon,
    text: *const c_char,
    out: *mut *mut c_char,
) -> PvcStatus {
    guard(|| {
        let lex = lex_arg(lexicon)?;
        let text = str_arg(text, "text")?;
        let index = FormIndex::new(lex);
        let opts = MatchOptions::default();
        let mut buf = Vec::new();
        for s in corpus_io::read_plain(text.as_bytes())? {
            annotator::write_matches(&matcher::match_raw(&s, &index, &opts), &mut buf).map_err(internal)?;
        }
        put_string(out, String::from_utf8(buf).map_err(internal)?)
    })
}

/// Classify a tagged corpus (three-column TSV); JSON lines, one per match.
///
/// # Safety
/// `lexicon` must be a live handle, `tagged` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pvc_classify(
    lexicon: *const PvcLexicon,
    tagged: *const c_char,
    legal_register: bool,
    out: *mut *mut c_char,
) -> PvcStatus {
    guard(|| {
        let lex = lex_arg(lexicon)?;
        let corpus = corpus_io::read_tagged(str_arg(tagged, "tagged")?.as_bytes())?;
        let opts = ClassifyOptions {
            legal_register,
            ..Default::default()
        };
        let results = classifier::classify_all(&corpus, lex, &MatchOptions::default(), &opts)
            .map_err(|e| Failure(PvcStatus::Validation, e.to_string()))?;
        let mut buf = Vec::new();
        annotator::report_json(&results, &mut buf).map_err(internal)?;
        put_string(out, String::from_utf8(buf).map_err(internal)?)
    })
}

/// Annotate a tagged corpus; cupt text.
///
/// # Safety
/// `lexicon` must be a live handle, `tagged` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pvc_annotate(
    lexicon: *const PvcLexicon,
    tagged: *const c_char,
    out: *mut *mut c_char,
) -> PvcStatus {
    guard(|| {
        let lex = lex_arg(lexicon)?;
        let corpus = corpus_io::read_tagged(str_arg(tagged, "tagged")?.as_bytes())?;
        let results = classifier::classify_all(&corpus, lex, &MatchOptions::default(), &ClassifyOptions::default())
            .map_err(|e| Failure(PvcStatus::Validation, e.to_string()))?;
        let cupt = annotator::annotate_corpus(&corpus, &results, annotator::DEFAULT_CATEGORY)
            .map_err(|e| Failure(PvcStatus::Validation, e.to_string()))?;
        let mut buf = Vec::new();
        corpus_io::write_cupt(&cupt, &mut buf)?;
        put_string(out, String::from_utf8(buf).map_err(internal)?)
    })
}

/// Mine a tagged corpus and report the top `k` stems as TSV.
///
/// # Safety
/// `tagged` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pvc_mine(tagged: *const c_char, k: usize, out: *mut *mut c_char) -> PvcStatus {
    guard(|| {
        let corpus = corpus_io::read_tagged(str_arg(tagged, "tagged")?.as_bytes())?;
        let stats = miner::mine(&corpus);
        let report = miner::rank(stats.values(), k).map_err(|e| Failure(PvcStatus::Validation, e.to_string()))?;
        put_string(out, miner::report_tsv(&report))
    })
}
