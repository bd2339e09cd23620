//! C interface. Objects are opaque heap handles released with the matching
//! `*_free` function; strings returned through `char **` out-parameters are
//! released with `pd_string_free`. Every call returns a `PdStatus`, and the
//! message for the last failure on the calling thread is available from
//! `pd_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pipedreams::coxeter::{CoxWord, CoxeterSystem};
use pipedreams::subword::{Facet, SubwordComplex};
use pipedreams::{pdlattice, pipedream, Error, Permutation, PipeDream};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    CapExceeded = 4,
    Precondition = 5,
    Unsupported = 6,
    Panic = 7,
}

/// A permutation of `1..=n`.
pub struct PdPermutation(Permutation);

/// A reduced pipe dream.
pub struct PdPipeDream(PipeDream);

/// A subword complex `SC(Q, w)` of a finite Coxeter group.
pub struct PdSubwordComplex(SubwordComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PdStatus {
    match e {
        Error::CapExceeded { .. } => PdStatus::CapExceeded,
        Error::Precondition(_) | Error::NotAlternating | Error::NotSorting | Error::EmptyComplex => {
            PdStatus::Precondition
        }
        Error::UnsupportedType(_) | Error::LargeType(_) => PdStatus::Unsupported,
        _ => PdStatus::InvalidArgument,
    }
}

struct Fail(PdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PdStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PdStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(PdStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(PdStatus::InvalidUtf8, "argument is not UTF-8".to_string()))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(PdStatus::InvalidArgument, "interior nul".to_string()))?;
    put(out, c.into_raw())
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

fn positions(f: Facet) -> String {
    f.positions().iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call; do not free.
#[no_mangle]
pub extern "C" fn pd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one-line notation such as `"1432"` or `"1,4,3,2"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_parse(text: *const c_char, out: *mut *mut PdPermutation) -> PdStatus {
    guard(|| {
        let p: Permutation = str_arg(text)?.parse()?;
        put_box(out, PdPermutation(p))
    })
}

/// # Safety
/// `p` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_free(p: *mut PdPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_size(p: *const PdPermutation, out: *mut usize) -> PdStatus {
    guard(|| put(out, obj(p)?.0.n()))
}

/// Number of inversions.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_length(p: *const PdPermutation, out: *mut usize) -> PdStatus {
    guard(|| put(out, obj(p)?.0.length()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_to_string(p: *const PdPermutation, out: *mut *mut c_char) -> PdStatus {
    guard(|| put_string(out, obj(p)?.0.to_string()))
}

/// Whether `a <= b` in right weak order.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_weak_leq(
    a: *const PdPermutation,
    b: *const PdPermutation,
    out: *mut bool,
) -> PdStatus {
    guard(|| put(out, obj(a)?.0.weak_leq(&obj(b)?.0)?))
}

/// Number of reduced pipe dreams of `omega`, or of the acyclic ones.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_count(
    omega: *const PdPermutation,
    acyclic_only: bool,
    cap: usize,
    out: *mut usize,
) -> PdStatus {
    guard(|| put(out, pipedream::enumerate(&obj(omega)?.0, acyclic_only, cap)?.len()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_greedy(omega: *const PdPermutation, out: *mut *mut PdPipeDream) -> PdStatus {
    guard(|| put_box(out, PdPipeDream(pipedream::greedy(&obj(omega)?.0))))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_antigreedy(omega: *const PdPermutation, out: *mut *mut PdPipeDream) -> PdStatus {
    guard(|| put_box(out, PdPipeDream(pipedream::antigreedy(&obj(omega)?.0))))
}

/// Insertion of `pi` into the pipe dreams of `omega`; needs `pi <= omega`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_insert(
    pi: *const PdPermutation,
    omega: *const PdPermutation,
    out: *mut *mut PdPipeDream,
) -> PdStatus {
    guard(|| put_box(out, PdPipeDream(pdlattice::insert(&obj(pi)?.0, &obj(omega)?.0)?)))
}

/// Sweep of `pi` through the pipe dreams of `omega`; needs `pi <= omega`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_sweep(
    pi: *const PdPermutation,
    omega: *const PdPermutation,
    out: *mut *mut PdPipeDream,
) -> PdStatus {
    guard(|| put_box(out, PdPipeDream(pdlattice::sweep(&obj(pi)?.0, &obj(omega)?.0)?)))
}

/// # Safety
/// `text` must be a nul-terminated JSON pipe dream and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_from_json(text: *const c_char, out: *mut *mut PdPipeDream) -> PdStatus {
    guard(|| put_box(out, PdPipeDream(PipeDream::from_json(str_arg(text)?)?)))
}

/// # Safety
/// `p` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_free(p: *mut PdPipeDream) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_is_acyclic(p: *const PdPipeDream, out: *mut bool) -> PdStatus {
    guard(|| put(out, obj(p)?.0.is_acyclic()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_to_json(p: *const PdPipeDream, out: *mut *mut c_char) -> PdStatus {
    guard(|| put_string(out, obj(p)?.0.to_json()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_to_ascii(p: *const PdPipeDream, out: *mut *mut c_char) -> PdStatus {
    guard(|| put_string(out, obj(p)?.0.to_ascii()))
}

/// Whether pipe dream classes of `omega` form a lattice congruence whose
/// quotient is the increasing flip order.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_verify_congruence(omega: *const PdPermutation, cap: usize, out: *mut bool) -> PdStatus {
    guard(|| put(out, pdlattice::verify_theorem_a(&obj(omega)?.0, cap)?.pass()))
}

/// Builds `SC(Q, w)` from a type tag such as `"A3"`, a 1-based word such as
/// `"1,2,1"` and an element (`"w0"`, a word, or a permutation in type A).
///
/// # Safety
/// Strings must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pd_subword_complex_new(
    cartan_type: *const c_char,
    word: *const c_char,
    omega: *const c_char,
    allow_large: bool,
    out: *mut *mut PdSubwordComplex,
) -> PdStatus {
    guard(|| {
        let sys = CoxeterSystem::from_tag(str_arg(cartan_type)?, allow_large)?;
        let w = CoxWord::parse(str_arg(word)?)?;
        let omega = sys.parse_element(str_arg(omega)?)?;
        put_box(out, PdSubwordComplex(SubwordComplex::new(sys, w, omega)?))
    })
}

/// # Safety
/// `sc` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_subword_complex_free(sc: *mut PdSubwordComplex) {
    if !sc.is_null() {
        drop(Box::from_raw(sc));
    }
}

/// Facets, one per line, as 1-based positions like `1,3,4`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_subword_complex_facets(
    sc: *const PdSubwordComplex,
    cap: usize,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        let facets = obj(sc)?.0.facets(cap)?;
        put_string(out, facets.iter().map(|&f| positions(f)).collect::<Vec<_>>().join("\n"))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_subword_complex_facet_count(
    sc: *const PdSubwordComplex,
    cap: usize,
    out: *mut usize,
) -> PdStatus {
    guard(|| put(out, obj(sc)?.0.facets(cap)?.len()))
}

/// The facet the sweep algorithm assigns to `pi`, written like `1,3,4`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_subword_complex_sweep(
    sc: *const PdSubwordComplex,
    pi: *const c_char,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        let sc = &obj(sc)?.0;
        let pi = sc.system().parse_element(str_arg(pi)?)?;
        let f = sc.sweep(&pi)?;
        put_string(out, positions(f))
    })
}

/// Evaluates both conjectures on an alternating word.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pd_subword_complex_conjectures(
    sc: *const PdSubwordComplex,
    cap: usize,
    congruence: *mut bool,
    quotient: *mut bool,
) -> PdStatus {
    guard(|| {
        let (a, b) = obj(sc)?.0.analyze(cap)?.conjectures()?;
        put(congruence, a.pass())?;
        put(quotient, b.pass())
    })
}
