use std::ffi::{c_char, CStr, CString};
use std::ptr;

use pvc_ffi::*;

const EX1: &str = "게\tNNG\t0\n에\tJKB\t0\n관\tXR\t1\n하\tXSV\t1\nㄴ\tETM\t1\n책\tNNG\t2\n";

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pvc_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = pvc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn builtin() -> *mut PvcLexicon {
    let mut lex = ptr::null_mut();
    assert_eq!(unsafe { pvc_lexicon_builtin(&mut lex) }, PvcStatus::Ok);
    lex
}

#[test]
fn lexicon_handle_lifecycle() {
    let lex = builtin();
    assert_eq!(unsafe { pvc_lexicon_len(lex) }, 14);
    unsafe { pvc_lexicon_free(lex) };
    assert_eq!(unsafe { pvc_lexicon_len(ptr::null()) }, 0);
    unsafe { pvc_lexicon_free(ptr::null_mut()) };
}

#[test]
fn load_reports_status() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("lex.tsv");
    std::fs::write(&good, pvc_core::lexicon::builtin().to_tsv()).unwrap();
    let path = CString::new(good.to_str().unwrap()).unwrap();
    let mut lex = ptr::null_mut();
    assert_eq!(unsafe { pvc_lexicon_load(path.as_ptr(), &mut lex) }, PvcStatus::Ok);
    assert_eq!(unsafe { pvc_lexicon_len(lex) }, 14);
    unsafe { pvc_lexicon_free(lex) };

    let bad = dir.path().join("bad.tsv");
    let mut text = pvc_core::lexicon::builtin().to_tsv();
    text = text.replacen("한,해,해서,하여", "했", 1);
    std::fs::write(&bad, text).unwrap();
    let path = CString::new(bad.to_str().unwrap()).unwrap();
    assert_eq!(
        unsafe { pvc_lexicon_load(path.as_ptr(), &mut lex) },
        PvcStatus::Validation
    );
    assert!(last_error().contains("했"));

    let missing = CString::new(dir.path().join("none.tsv").to_str().unwrap()).unwrap();
    assert_eq!(unsafe { pvc_lexicon_load(missing.as_ptr(), &mut lex) }, PvcStatus::Io);
    assert_eq!(
        unsafe { pvc_lexicon_load(ptr::null(), &mut lex) },
        PvcStatus::NullArgument
    );
}

#[test]
fn allomorph_and_errors() {
    let mut out = ptr::null_mut();
    let lemma = CString::new("를").unwrap();
    let host = CString::new("하늘").unwrap();
    assert_eq!(
        unsafe { pvc_allomorph(lemma.as_ptr(), host.as_ptr(), &mut out) },
        PvcStatus::Ok
    );
    assert_eq!(take(out), "을");
    assert!(pvc_last_error().is_null());

    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { pvc_allomorph(bad.as_ptr().cast(), host.as_ptr(), &mut out) },
        PvcStatus::InvalidUtf8
    );
    let unknown = CString::new("가").unwrap();
    assert_eq!(
        unsafe { pvc_allomorph(unknown.as_ptr(), host.as_ptr(), &mut out) },
        PvcStatus::Validation
    );
    assert!(!last_error().is_empty());
}

#[test]
fn pipeline_calls() {
    let lex = builtin();
    let tagged = CString::new(EX1).unwrap();
    let mut out = ptr::null_mut();

    assert_eq!(
        unsafe { pvc_classify(lex, tagged.as_ptr(), false, &mut out) },
        PvcStatus::Ok
    );
    let report = take(out);
    assert_eq!(report.lines().count(), 1);
    assert!(report.contains(r#""label":"PvcN""#));

    assert_eq!(unsafe { pvc_annotate(lex, tagged.as_ptr(), &mut out) }, PvcStatus::Ok);
    let cupt = take(out);
    let col: Vec<_> = cupt
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.rsplit('\t').next().unwrap())
        .collect();
    assert_eq!(col, ["*", "1:ADP", "1", "1", "1", "*"]);

    let raw = CString::new("게에 관한 책").unwrap();
    assert_eq!(unsafe { pvc_match_raw(lex, raw.as_ptr(), &mut out) }, PvcStatus::Ok);
    assert!(take(out).contains(r#""stem":"관""#));

    assert_eq!(unsafe { pvc_mine(tagged.as_ptr(), 300, &mut out) }, PvcStatus::Ok);
    assert!(take(out).ends_with("관\t1\t1\t1\t1\t0\t1.0000\n"));
    assert_eq!(unsafe { pvc_mine(tagged.as_ptr(), 0, &mut out) }, PvcStatus::Validation);

    let broken = CString::new("관\tXR\n").unwrap();
    assert_eq!(
        unsafe { pvc_classify(lex, broken.as_ptr(), false, &mut out) },
        PvcStatus::Parse
    );
    assert_eq!(
        unsafe { pvc_classify(ptr::null(), tagged.as_ptr(), false, &mut out) },
        PvcStatus::NullArgument
    );
    unsafe { pvc_lexicon_free(lex) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(pvc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
