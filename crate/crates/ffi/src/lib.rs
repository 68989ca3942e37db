//! C ABI over the rootspace library.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every fallible call returns an [`RsStatus`];
//! on failure [`rs_last_error`] describes the error for the calling thread.
//! Strings returned through `char **` are freed with [`rs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rootspace::hypotheses::{
    cliffs_delta, cosine_similarity, levene_test, wilcoxon_one_tailed, Method, StatsError,
};
use rootspace::morphology::{Alphabet, MorphologyError, Root, SurfaceForm, TemplateInventory};
use rootspace::reduction::guttman_kaiser_dim;
use rootspace::vectors::{EmbeddingSpace, Format};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    Morphology = 5,
    Statistics = 6,
    NotFound = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// A template inventory together with its alphabet.
pub struct RsInventory(TemplateInventory);

/// A loaded vector file.
pub struct RsEmbeddingSpace(EmbeddingSpace);

/// Outcome of a one-tailed signed-rank test.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RsWilcoxon {
    pub p_value: f64,
    pub w_plus: f64,
    /// Non-zero differences used.
    pub n: usize,
    pub n_zeros: usize,
    /// 1 for the exact distribution, 0 for the normal approximation.
    pub exact: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(RsStatus, String);

impl From<MorphologyError> for Failure {
    fn from(e: MorphologyError) -> Self {
        let code = match e {
            MorphologyError::Io { .. } => RsStatus::Io,
            MorphologyError::InventoryParse { .. } | MorphologyError::InvalidAlphabet(_) => {
                RsStatus::Parse
            }
            MorphologyError::UnknownTemplate(_) => RsStatus::NotFound,
            _ => RsStatus::Morphology,
        };
        Failure(code, e.to_string())
    }
}

impl From<StatsError> for Failure {
    fn from(e: StatsError) -> Self {
        Failure(RsStatus::Statistics, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RsStatus::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            RsStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(RsStatus::NullArgument, format!("{name} is null"))
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(RsStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to `n` readable doubles.
unsafe fn doubles<'a>(p: *const f64, n: usize, name: &str) -> Result<&'a [f64], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

/// # Safety
/// `out` is null or writable.
unsafe fn put<T>(out: *mut T, v: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(RsStatus::Parse, "embedded NUL".into()))?;
    put(out, c.into_raw(), "out")
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads an inventory TSV. `alphabet` is `hebrew`, `latin` or a path to an
/// alphabet file.
///
/// # Safety
/// String arguments are valid NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rs_inventory_load(
    path: *const c_char,
    alphabet: *const c_char,
    out: *mut *mut RsInventory,
) -> RsStatus {
    guard(|| {
        let path = text(path, "path")?;
        let alphabet = Alphabet::from_spec(text(alphabet, "alphabet")?)?;
        let inv = TemplateInventory::load(path, alphabet)?;
        put(out, Box::into_raw(Box::new(RsInventory(inv))), "out")
    })
}

/// # Safety
/// `inv` is null or a handle from [`rs_inventory_load`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rs_inventory_free(inv: *mut RsInventory) {
    if !inv.is_null() {
        drop(Box::from_raw(inv));
    }
}

unsafe fn inventory<'a>(inv: *const RsInventory) -> Result<&'a TemplateInventory, Failure> {
    inv.as_ref().map(|i| &i.0).ok_or_else(|| null("inventory"))
}

/// Spells `root` (consonants written together) in `template_id`.
///
/// # Safety
/// Pointers are valid; `out` receives a string for [`rs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rs_apply_template(
    inv: *const RsInventory,
    root: *const c_char,
    template_id: *const c_char,
    out: *mut *mut c_char,
) -> RsStatus {
    guard(|| {
        let inv = inventory(inv)?;
        let root = Root::parse(text(root, "root")?, inv.alphabet())?;
        let t = inv.require(text(template_id, "template_id")?)?;
        put_string(out, inv.apply_template(&root, t)?.text)
    })
}

/// Every root `template_id` maps onto `word`, one per line; empty when
/// the word does not parse.
///
/// # Safety
/// Pointers are valid; `out` receives a string for [`rs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rs_extract_roots(
    inv: *const RsInventory,
    word: *const c_char,
    template_id: *const c_char,
    out: *mut *mut c_char,
) -> RsStatus {
    guard(|| {
        let inv = inventory(inv)?;
        let t = inv.require(text(template_id, "template_id")?)?;
        let roots = inv.extract_roots(text(word, "word")?, t);
        let joined: Vec<String> = roots.iter().map(Root::to_string).collect();
        put_string(out, joined.join("\n"))
    })
}

/// The augmented root of the noun `noun`, built on `root` with the nominal
/// template `template_id`.
///
/// # Safety
/// Pointers are valid; `out` receives a string for [`rs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rs_denominal_root(
    inv: *const RsInventory,
    noun: *const c_char,
    template_id: *const c_char,
    root: *const c_char,
    out: *mut *mut c_char,
) -> RsStatus {
    guard(|| {
        let inv = inventory(inv)?;
        let form = SurfaceForm {
            text: text(noun, "noun")?.to_string(),
            template_id: text(template_id, "template_id")?.to_string(),
            root: Root::parse(text(root, "root")?, inv.alphabet())?,
        };
        put_string(out, inv.denominal_root(&form)?.to_string())
    })
}

/// Loads a vector file. `format` is `auto`, `word2vec` or `glove`, or null
/// for `auto`.
///
/// # Safety
/// String arguments are null (where allowed) or valid; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rs_vectors_load(
    path: *const c_char,
    format: *const c_char,
    label: *const c_char,
    out: *mut *mut RsEmbeddingSpace,
) -> RsStatus {
    guard(|| {
        let path = text(path, "path")?;
        let format: Format = if format.is_null() {
            Format::Auto
        } else {
            text(format, "format")?
                .parse()
                .map_err(|e| Failure(RsStatus::Parse, e))?
        };
        let label = if label.is_null() {
            ""
        } else {
            text(label, "label")?
        };
        let space = EmbeddingSpace::load(path, format, label).map_err(|e| {
            let code = match e {
                rootspace::vectors::VectorError::Io { .. } => RsStatus::Io,
                _ => RsStatus::Parse,
            };
            Failure(code, e.to_string())
        })?;
        put(out, Box::into_raw(Box::new(RsEmbeddingSpace(space))), "out")
    })
}

/// # Safety
/// `space` is null or a handle from [`rs_vectors_load`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rs_vectors_free(space: *mut RsEmbeddingSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Vector dimension; 0 for a null handle.
///
/// # Safety
/// `space` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rs_vectors_dim(space: *const RsEmbeddingSpace) -> usize {
    space.as_ref().map_or(0, |s| s.0.dim())
}

/// Number of vectors; 0 for a null handle.
///
/// # Safety
/// `space` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rs_vectors_len(space: *const RsEmbeddingSpace) -> usize {
    space.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the vector of `token` into `buf`, which holds `buf_len` doubles.
///
/// # Safety
/// Pointers are valid and `buf` has room for `buf_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_vectors_lookup(
    space: *const RsEmbeddingSpace,
    token: *const c_char,
    buf: *mut f64,
    buf_len: usize,
) -> RsStatus {
    guard(|| {
        let space = &space.as_ref().ok_or_else(|| null("space"))?.0;
        let token = text(token, "token")?;
        let v = space
            .lookup(token)
            .ok_or_else(|| Failure(RsStatus::NotFound, format!("{token:?} not in space")))?;
        if buf_len < v.len() {
            return Err(Failure(
                RsStatus::BufferTooSmall,
                format!("need {} doubles", v.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(v.as_ptr(), buf, v.len());
        Ok(())
    })
}

/// One-tailed signed-rank test of `diffs` against a positive shift. Samples
/// of at most `crossover` non-zero differences are tested exactly.
///
/// # Safety
/// `diffs` points to `n` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rs_wilcoxon(
    diffs: *const f64,
    n: usize,
    crossover: usize,
    out: *mut RsWilcoxon,
) -> RsStatus {
    guard(|| {
        let r = wilcoxon_one_tailed(doubles(diffs, n, "diffs")?, crossover)?;
        let res = RsWilcoxon {
            p_value: r.p_value,
            w_plus: r.w_plus,
            n: r.n,
            n_zeros: r.n_zeros,
            exact: (r.method == Method::Exact) as i32,
        };
        put(out, res, "out")
    })
}

/// Cliff's delta of `a` against `b`.
///
/// # Safety
/// `a` and `b` point to `na` and `nb` doubles; `delta` is writable.
#[no_mangle]
pub unsafe extern "C" fn rs_cliffs_delta(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    delta: *mut f64,
) -> RsStatus {
    guard(|| {
        let d = cliffs_delta(doubles(a, na, "a")?, doubles(b, nb, "b")?)?;
        put(delta, d.delta, "delta")
    })
}

/// Two-sample Levene test; writes the statistic and its p-value.
///
/// # Safety
/// `a` and `b` point to `na` and `nb` doubles; outputs are writable.
#[no_mangle]
pub unsafe extern "C" fn rs_levene(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    statistic: *mut f64,
    p_value: *mut f64,
) -> RsStatus {
    guard(|| {
        let r = levene_test(doubles(a, na, "a")?, doubles(b, nb, "b")?)?;
        put(statistic, r.statistic, "statistic")?;
        put(p_value, r.p_value, "p_value")
    })
}

/// Cosine similarity of two vectors of length `n`.
///
/// # Safety
/// `u` and `v` point to `n` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rs_cosine(
    u: *const f64,
    v: *const f64,
    n: usize,
    out: *mut f64,
) -> RsStatus {
    guard(|| {
        let c = cosine_similarity(doubles(u, n, "u")?, doubles(v, n, "v")?)?;
        put(out, c, "out")
    })
}

/// Number of eigenvalues above their mean, at least 1.
///
/// # Safety
/// `eigenvalues` points to `n` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rs_guttman_kaiser(
    eigenvalues: *const f64,
    n: usize,
    out: *mut usize,
) -> RsStatus {
    guard(|| {
        let k = guttman_kaiser_dim(doubles(eigenvalues, n, "eigenvalues")?);
        put(out, k, "out")
    })
}
