//! C ABI for bdforge.
//!
//! Objects cross the boundary as opaque handles owned by the caller and released
//! with the matching `*_free` function. Every entry point returns a [`BdStatus`];
//! on failure a message is available from [`bd_last_error`] on the same thread.
//! Strings returned through out-parameters are released with [`bd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bdforge::bd::{build_bd_rmatrix, verify_rmatrix, AdmissibleQuadruple, RMatrix, Rejection};
use bdforge::bialgebra::cobracket_from_r;
use bdforge::chevalley::ChevalleyAlgebra;
use bdforge::cli::{run, tensor_from_json, tensor_to_json};
use bdforge::error::Error;
use bdforge::rootsys::{enumerate_admissible_triples, AdmissibleTriple, RootSystem, TripleJson, TypeLabel};
use bdforge::scalars::Rational;
use bdforge::tensors::Tensor2;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unsupported = 3,
    VerificationFailed = 4,
    Parse = 5,
    Panic = 6,
}

/// Outcome of the r-matrix axiom check on a tensor.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BdVerdict {
    RMatrix = 0,
    NotProportional = 1,
    LambdaZero = 2,
    CybNonzero = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BdAxiomReport {
    pub antisymmetric: bool,
    pub cojacobi: bool,
    pub cocycle: bool,
}

/// A split simple Lie algebra with its Chevalley basis.
pub struct BdAlgebra {
    inner: ChevalleyAlgebra,
}

/// A verified Belavin-Drinfeld r-matrix of a specific algebra.
pub struct BdRMatrix {
    dim: usize,
    quad: AdmissibleQuadruple,
    r: RMatrix<Rational>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BdStatus {
    match e {
        Error::UnsupportedType(..) | Error::UnsupportedRank(_) => BdStatus::Unsupported,
        Error::Parse(_) => BdStatus::Parse,
        Error::Invalid(_) | Error::InvalidDiscriminant(_) => BdStatus::InvalidArgument,
        _ => BdStatus::VerificationFailed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (BdStatus, String)>) -> BdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BdStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BdStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (BdStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(name: &str) -> (BdStatus, String) {
    (BdStatus::NullPointer, format!("{name} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (BdStatus, String)> {
    if p.is_null() {
        return Err(null_err(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (BdStatus::Parse, format!("{name} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread. Valid until the next call.
#[no_mangle]
pub extern "C" fn bd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the algebra of type `type_letter` (`'A'`, `'B'`, `'C'`, `'D'`, `'G'`) and rank `rank`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn bd_algebra_new(type_letter: c_char, rank: u32, out: *mut *mut BdAlgebra) -> BdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let letter = (type_letter as u8 as char).to_string();
        let label = TypeLabel::parse(&letter).map_err(lib_err)?;
        let rs = RootSystem::new(label, rank as usize).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BdAlgebra { inner: ChevalleyAlgebra::new(rs) }));
        Ok(())
    })
}

/// # Safety
/// `alg` must be null or a handle from [`bd_algebra_new`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bd_algebra_free(alg: *mut BdAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_algebra_dim(alg: *const BdAlgebra, out: *mut u32) -> BdStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null_err("alg"))?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = alg.inner.dim() as u32;
        Ok(())
    })
}

/// Number of admissible triples of the algebra's root system.
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_triple_count(alg: *const BdAlgebra, out: *mut u32) -> BdStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null_err("alg"))?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = enumerate_admissible_triples(alg.inner.root_system()).len() as u32;
        Ok(())
    })
}

/// Builds and verifies `r_BD` for a triple given as JSON with 1-based simple roots,
/// e.g. `{"gamma1":[1],"gamma2":[2],"tau":{"1":"2"}}`. A null `triple_json` means
/// the trivial triple. The Cartan part is the canonical solution.
///
/// # Safety
/// `alg` must be a live handle, `triple_json` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_rmatrix_build(
    alg: *const BdAlgebra,
    triple_json: *const c_char,
    out: *mut *mut BdRMatrix,
) -> BdStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null_err("alg"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let g = &alg.inner;
        let triple = if triple_json.is_null() {
            AdmissibleTriple::trivial()
        } else {
            let text = str_arg(triple_json, "triple_json")?;
            let j: TripleJson = serde_json::from_str(text).map_err(|e| (BdStatus::Parse, e.to_string()))?;
            AdmissibleTriple::from_json(g.root_system(), &j).map_err(lib_err)?
        };
        let quad = AdmissibleQuadruple::canonical(g, triple).map_err(lib_err)?;
        let r = build_bd_rmatrix(g, &quad).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BdRMatrix { dim: g.dim(), quad, r }));
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle from [`bd_rmatrix_build`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bd_rmatrix_free(r: *mut BdRMatrix) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// The tensor as `[[i, j, "p/q"], ...]`. Free the string with [`bd_string_free`].
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_rmatrix_to_json(r: *const BdRMatrix, out: *mut *mut c_char) -> BdStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_err("r"))?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = to_c_string(tensor_to_json(r.r.r()).to_string());
        Ok(())
    })
}

/// The Cartan part `r_h` in the same format as [`bd_rmatrix_to_json`].
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_rmatrix_cartan_json(r: *const BdRMatrix, out: *mut *mut c_char) -> BdStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_err("r"))?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = to_c_string(tensor_to_json(r.quad.r_h()).to_string());
        Ok(())
    })
}

/// Checks the three Lie bialgebra axioms for the coboundary of `r`.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_rmatrix_bialgebra_axioms(
    alg: *const BdAlgebra,
    r: *const BdRMatrix,
    out: *mut BdAxiomReport,
) -> BdStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null_err("alg"))?;
        let r = r.as_ref().ok_or_else(|| null_err("r"))?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        if r.dim != alg.inner.dim() {
            return Err((BdStatus::InvalidArgument, "r-matrix belongs to a different algebra".into()));
        }
        let rep = cobracket_from_r(alg.inner.table(), r.r.r()).report(alg.inner.table());
        *out = BdAxiomReport { antisymmetric: rep.antisymmetric, cojacobi: rep.cojacobi, cocycle: rep.cocycle };
        Ok(())
    })
}

/// Checks the r-matrix axioms for a tensor given as JSON over 0-based basis indices.
///
/// # Safety
/// `alg` must be live, `tensor_json` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_verify_tensor(
    alg: *const BdAlgebra,
    tensor_json: *const c_char,
    out: *mut BdVerdict,
) -> BdStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(|| null_err("alg"))?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        let text = str_arg(tensor_json, "tensor_json")?;
        let t: Tensor2<Rational> = tensor_from_json(text, alg.inner.dim()).map_err(lib_err)?;
        *out = match verify_rmatrix(&alg.inner, &t) {
            Ok(_) => BdVerdict::RMatrix,
            Err(Rejection::NotProportional) => BdVerdict::NotProportional,
            Err(Rejection::LambdaZero) => BdVerdict::LambdaZero,
            Err(Rejection::CybNonzero) => BdVerdict::CybNonzero,
        };
        Ok(())
    })
}

/// Runs the command-line front end with `argv[0..argc]` (without the program name).
/// Stores the process exit code it would use and its output text.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out_code` and `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn bd_cli_run(
    argv: *const *const c_char,
    argc: usize,
    out_code: *mut i32,
    out_text: *mut *mut c_char,
) -> BdStatus {
    guard(|| {
        let out_code = out_code.as_mut().ok_or_else(|| null_err("out_code"))?;
        let out_text = out_text.as_mut().ok_or_else(|| null_err("out_text"))?;
        if argv.is_null() && argc > 0 {
            return Err(null_err("argv"));
        }
        let mut args = vec!["bdforge".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argv[i]")?.to_string());
        }
        let (code, text) = run(args);
        *out_code = code;
        *out_text = to_c_string(text);
        Ok(())
    })
}
