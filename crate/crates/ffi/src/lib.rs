//! C interface to `prefcons`.
//!
//! Every fallible call returns a [`PrefconsStatus`]; on failure the message
//! is available from [`prefcons_last_error`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`prefcons_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use prefcons::choice::PreferenceStructure;
use prefcons::conditions::{check_conditions, ConditionId};
use prefcons::consequence::{ConsequenceRelation, Mode};
use prefcons::formula::{parse, parse_kb, Formula};
use prefcons::harness::{verify_theorem, Theorem, VerifyConfig};
use prefcons::modeltheory::cap_from_env;
use prefcons::{Error, Frame, Kind, SemanticStructure};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefconsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed formula or KB text.
    Syntax = 3,
    /// Unknown atom, semantics, condition or theorem, or a bad structure file.
    InvalidInput = 4,
    /// The request needs a fingerprint or set outside the enumerated frame.
    Unsupported = 5,
    Internal = 6,
}

/// A semantic structure with its fingerprint universe and definable family.
pub struct PrefconsFrame {
    frame: Arc<Frame>,
}

/// A consequence relation over the frame it was induced on.
pub struct PrefconsRelation {
    frame: Arc<Frame>,
    rel: ConsequenceRelation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PrefconsStatus {
    match e {
        Error::Syntax(_) | Error::KbSyntax { .. } => PrefconsStatus::Syntax,
        Error::CapExceeded(_) | Error::Undefinable(_) | Error::NoWitness(_) => PrefconsStatus::Unsupported,
        Error::Io(_) => PrefconsStatus::Internal,
        _ => PrefconsStatus::InvalidInput,
    }
}

struct Failure(PrefconsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PrefconsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PrefconsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            PrefconsStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PrefconsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(PrefconsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

fn kb(text: &str) -> Result<Vec<Formula>, Failure> {
    parse_kb(text).map_err(|(line, source)| Error::KbSyntax { line, source }.into())
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(PrefconsStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn prefcons_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn prefcons_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a frame for `semantics` (`classical`, `four` or `j3`) over the
/// comma-separated `atoms`. `kb` may be null; its formulas seed the universe
/// when the full closure exceeds the cap.
///
/// # Safety
/// `semantics` and `atoms` must be valid NUL-terminated strings, `kb` null or
/// such a string, and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn prefcons_frame_new(
    semantics: *const c_char,
    atoms: *const c_char,
    kb: *const c_char,
    out: *mut *mut PrefconsFrame,
) -> PrefconsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let kind: Kind = text(semantics, "semantics")?.parse()?;
        let structure = SemanticStructure::from_atom_list(kind, text(atoms, "atoms")?)?;
        let seeds = match optional_text(kb, "kb")? {
            Some(t) => self::kb(t)?,
            None => Vec::new(),
        };
        let frame = Frame::build(structure, &seeds, cap_from_env())?;
        *out = Box::into_raw(Box::new(PrefconsFrame { frame: Arc::new(frame) }));
        Ok(())
    })
}

/// # Safety
/// `frame` must be null or a handle from [`prefcons_frame_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prefcons_frame_free(frame: *mut PrefconsFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Number of valuations, or 0 for a null handle.
///
/// # Safety
/// `frame` must be null or a live frame handle.
#[no_mangle]
pub unsafe extern "C" fn prefcons_frame_valuations(frame: *const PrefconsFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.frame.width())
}

/// Number of fingerprints in the universe, or 0 for a null handle.
///
/// # Safety
/// `frame` must be null or a live frame handle.
#[no_mangle]
pub unsafe extern "C" fn prefcons_frame_universe_size(frame: *const PrefconsFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.frame.universe().len())
}

/// Number of definable model sets, or 0 for a null handle.
///
/// # Safety
/// `frame` must be null or a live frame handle.
#[no_mangle]
pub unsafe extern "C" fn prefcons_frame_definable_size(frame: *const PrefconsFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.frame.family().len())
}

/// Whether the universe and definable family are fully enumerated.
///
/// # Safety
/// `frame` must be null or a live frame handle.
#[no_mangle]
pub unsafe extern "C" fn prefcons_frame_is_exhaustive(frame: *const PrefconsFrame) -> bool {
    frame.as_ref().is_some_and(|f| f.frame.is_exhaustive())
}

/// Induce a relation on `frame` from a preference structure in the text
/// format, or the identity structure when `structure` is null. The relation
/// keeps the frame alive on its own.
///
/// # Safety
/// `frame` must be a live frame handle, `structure` null or a valid
/// NUL-terminated string, and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn prefcons_relation_new(
    frame: *const PrefconsFrame,
    structure: *const c_char,
    discriminative: bool,
    out: *mut *mut PrefconsRelation,
) -> PrefconsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let frame = frame.as_ref().ok_or_else(|| Failure(PrefconsStatus::NullPointer, "frame is null".into()))?;
        let fr = &frame.frame;
        let pref = match optional_text(structure, "structure")? {
            Some(t) => PreferenceStructure::parse(t, fr.structure())?,
            None => PreferenceStructure::identity(fr.width()),
        };
        let mode = if discriminative { Mode::Discriminative } else { Mode::Plain };
        let rel = ConsequenceRelation::induce(fr, &pref.choice_function(fr), mode);
        *out = Box::into_raw(Box::new(PrefconsRelation { frame: Arc::clone(fr), rel }));
        Ok(())
    })
}

/// # Safety
/// `rel` must be null or a handle from [`prefcons_relation_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prefcons_relation_free(rel: *mut PrefconsRelation) {
    if !rel.is_null() {
        drop(Box::from_raw(rel));
    }
}

unsafe fn relation<'a>(rel: *const PrefconsRelation) -> Result<&'a PrefconsRelation, Failure> {
    rel.as_ref().ok_or_else(|| Failure(PrefconsStatus::NullPointer, "relation is null".into()))
}

/// Whether `gamma |~ alpha`. `gamma` holds one formula per line and may be
/// empty.
///
/// # Safety
/// `rel` must be a live relation handle, `gamma` and `alpha` valid
/// NUL-terminated strings, and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn prefcons_entails(
    rel: *const PrefconsRelation,
    gamma: *const c_char,
    alpha: *const c_char,
    out: *mut bool,
) -> PrefconsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let r = relation(rel)?;
        let gamma = kb(text(gamma, "gamma")?)?;
        let alpha = parse(text(alpha, "alpha")?).map_err(Error::from)?;
        *out = r.rel.holds_formulas(&r.frame, &gamma, &alpha)?;
        Ok(())
    })
}

/// Witness formulas of every consequence of `gamma`, canonically ordered and
/// newline-separated. Free the result with [`prefcons_string_free`].
///
/// # Safety
/// `rel` must be a live relation handle, `gamma` a valid NUL-terminated
/// string, and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn prefcons_consequences(
    rel: *const PrefconsRelation,
    gamma: *const c_char,
    out: *mut *mut c_char,
) -> PrefconsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let r = relation(rel)?;
        let gamma = kb(text(gamma, "gamma")?)?;
        let set = r.rel.consequences(&r.frame, r.frame.mod_formulas(&gamma)?)?;
        *out = c_string(r.frame.witnesses(set).join("\n"));
        Ok(())
    })
}

/// Check conditions such as `c0..c3,P` on the relation. `report` may be
/// null; otherwise it receives a `key=value` report to be freed with
/// [`prefcons_string_free`].
///
/// # Safety
/// `rel` must be a live relation handle, `conditions` a valid NUL-terminated
/// string, `pass` a valid pointer, and `report` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prefcons_check(
    rel: *const PrefconsRelation,
    conditions: *const c_char,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> PrefconsStatus {
    guard(|| {
        out_ptr(pass, "pass")?;
        let r = relation(rel)?;
        let ids = ConditionId::parse_list(text(conditions, "conditions")?)?;
        let reports = check_conditions(&r.frame, &r.rel, &ids);
        *pass = reports.iter().all(|c| c.pass);
        if !report.is_null() {
            let mut kv = String::new();
            for c in &reports {
                kv.push_str(&format!("check.{}.pass={}\n", c.id, c.pass));
                if let Some(w) = &c.witness {
                    kv.push_str(&format!("check.{}.witness={}\n", c.id, w.describe(&r.frame)));
                }
            }
            kv.push_str(&format!("check.sampled={}\ncheck.pass={}\n", !r.frame.is_exhaustive(), *pass));
            *report = c_string(kv);
        }
        Ok(())
    })
}

/// Verify a theorem (`repClaSyn`, `repGen`, `repArgSyn`, `repGenArg`,
/// `karl-search`, `P-bridge` or `lemmas`) over `seeds` seeds starting at
/// `first_seed`. Null `semantics` or `atoms` select the theorem's default
/// target. `report` may be null; otherwise it receives the `key=value`
/// report.
///
/// # Safety
/// `theorem` must be a valid NUL-terminated string, `semantics` and `atoms`
/// null or such strings, `pass` a valid pointer, and `report` null or a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prefcons_verify(
    theorem: *const c_char,
    semantics: *const c_char,
    atoms: *const c_char,
    seeds: u64,
    first_seed: u64,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> PrefconsStatus {
    guard(|| {
        out_ptr(pass, "pass")?;
        let theorem: Theorem = text(theorem, "theorem")?.parse()?;
        let mut config = VerifyConfig::new(theorem);
        if let Some(s) = optional_text(semantics, "semantics")? {
            config.kind = s.parse()?;
        }
        if let Some(a) = optional_text(atoms, "atoms")? {
            config.atoms = a.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        }
        config.seeds = seeds;
        config.first_seed = first_seed;
        let r = verify_theorem(&config)?;
        *pass = r.pass();
        if !report.is_null() {
            *report = c_string(r.to_kv());
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prefcons_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
