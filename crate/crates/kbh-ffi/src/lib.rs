//! C ABI for the kbh library. Diagrams are opaque handles; every entry
//! point returns a status code and writes its result through an out
//! pointer. Strings handed out here must be released with
//! `kbh_string_free`, diagrams with `kbh_diagram_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kbh::bracket::{kauffman_bracket, kauffman_f, unnormalized_bracket};
use kbh::diagram::{builtin, from_braid, orient, parse_pd, LinkDiagram};
use kbh::framedcube::framed_homology;
use kbh::khovanov::khovanov_homology;
use kbh::oriented::{oriented_homology, poincare_framed};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbhStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownName = 4,
    InvalidInput = 5,
    EmptyDiagram = 6,
    InternalError = 7,
}

/// Opaque link diagram handle.
pub struct KbhDiagram {
    inner: LinkDiagram,
}

fn write_out<T>(out: *mut *mut T, value: T) -> KbhStatus {
    if out.is_null() {
        return KbhStatus::NullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    KbhStatus::Ok
}

fn write_string(out: *mut *mut c_char, s: String) -> KbhStatus {
    if out.is_null() {
        return KbhStatus::NullArgument;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            KbhStatus::Ok
        }
        Err(_) => KbhStatus::InternalError,
    }
}

/// Guards library calls against panics; a panic across the ABI would be
/// undefined behavior.
fn guarded(f: impl FnOnce() -> KbhStatus) -> KbhStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(KbhStatus::InternalError)
}

/// Parse a diagram from PD notation, e.g. `PD[X(1,4,2,3), X(3,2,4,1)]`.
#[no_mangle]
pub extern "C" fn kbh_diagram_from_pd(pd: *const c_char, out: *mut *mut KbhDiagram) -> KbhStatus {
    if pd.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    let Ok(text) = unsafe { CStr::from_ptr(pd) }.to_str() else {
        return KbhStatus::InvalidUtf8;
    };
    guarded(|| match parse_pd(text) {
        Ok(d) => write_out(out, KbhDiagram { inner: d }),
        Err(_) => KbhStatus::ParseError,
    })
}

/// Closure of a braid word; letter k means σ_k, negative letters invert.
#[no_mangle]
pub extern "C" fn kbh_diagram_from_braid(
    word: *const i64,
    len: usize,
    strands: u32,
    out: *mut *mut KbhDiagram,
) -> KbhStatus {
    if (word.is_null() && len > 0) || out.is_null() {
        return KbhStatus::NullArgument;
    }
    let word = if len == 0 { &[] } else { unsafe { std::slice::from_raw_parts(word, len) } };
    guarded(|| match from_braid(word, strands) {
        Ok(od) => write_out(out, KbhDiagram { inner: od.diagram }),
        Err(_) => KbhStatus::InvalidInput,
    })
}

/// Look up a named diagram from the built-in catalog.
#[no_mangle]
pub extern "C" fn kbh_diagram_builtin(
    name: *const c_char,
    out: *mut *mut KbhDiagram,
) -> KbhStatus {
    if name.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    let Ok(name) = unsafe { CStr::from_ptr(name) }.to_str() else {
        return KbhStatus::InvalidUtf8;
    };
    guarded(|| match builtin(name) {
        Ok(od) => write_out(out, KbhDiagram { inner: od.diagram }),
        Err(_) => KbhStatus::UnknownName,
    })
}

#[no_mangle]
pub extern "C" fn kbh_diagram_free(d: *mut KbhDiagram) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

#[no_mangle]
pub extern "C" fn kbh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[no_mangle]
pub extern "C" fn kbh_diagram_crossing_count(d: *const KbhDiagram, out: *mut u32) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    unsafe { *out = (*d).inner.n() };
    KbhStatus::Ok
}

#[no_mangle]
pub extern "C" fn kbh_diagram_writhe(d: *const KbhDiagram, out: *mut i64) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| match orient(unsafe { &(*d).inner }) {
        Ok(od) => {
            unsafe { *out = od.writhe };
            KbhStatus::Ok
        }
        Err(_) => KbhStatus::InvalidInput,
    })
}

/// ⟨D⟩ in canonical text form, descending exponents.
#[no_mangle]
pub extern "C" fn kbh_bracket(d: *const KbhDiagram, out: *mut *mut c_char) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| match kauffman_bracket(unsafe { &(*d).inner }) {
        Ok(p) => write_string(out, p.to_string()),
        Err(_) => KbhStatus::EmptyDiagram,
    })
}

/// The oriented invariant f = (−A³)^(−w)⟪D⟫.
#[no_mangle]
pub extern "C" fn kbh_kauffman_f(d: *const KbhDiagram, out: *mut *mut c_char) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| match orient(unsafe { &(*d).inner }) {
        Ok(od) => write_string(out, kauffman_f(&od).to_string()),
        Err(_) => KbhStatus::InvalidInput,
    })
}

/// ⟪D⟫, the unnormalized bracket.
#[no_mangle]
pub extern "C" fn kbh_unnormalized_bracket(
    d: *const KbhDiagram,
    out: *mut *mut c_char,
) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| write_string(out, unnormalized_bracket(unsafe { &(*d).inner }).to_string()))
}

/// FKh(D) = Σ t^i A^j rk H_{i,j}, grouped by t in the text form.
#[no_mangle]
pub extern "C" fn kbh_framed_poincare(d: *const KbhDiagram, out: *mut *mut c_char) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| write_string(out, poincare_framed(unsafe { &(*d).inner }).to_string()))
}

fn torsion_strings<T: std::fmt::Display>(t: &[T]) -> Vec<serde_json::Value> {
    t.iter().map(|x| serde_json::Value::String(x.to_string())).collect()
}

/// Framed homology as JSON:
/// `{"invariant":"framed","groups":[{"i":0,"j":-2,"rank":1,"torsion":[]},…]}`.
#[no_mangle]
pub extern "C" fn kbh_framed_homology_json(
    d: *const KbhDiagram,
    out: *mut *mut c_char,
) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| {
        let h = framed_homology(unsafe { &(*d).inner });
        let groups: Vec<serde_json::Value> = h
            .iter()
            .map(|(i, j, g)| {
                serde_json::json!({
                    "i": i, "j": j, "rank": g.rank, "torsion": torsion_strings(&g.torsion),
                })
            })
            .collect();
        let v = serde_json::json!({ "invariant": "framed", "groups": groups });
        write_string(out, v.to_string())
    })
}

/// Oriented homology as JSON, same shape as the framed variant.
#[no_mangle]
pub extern "C" fn kbh_oriented_homology_json(
    d: *const KbhDiagram,
    out: *mut *mut c_char,
) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| match orient(unsafe { &(*d).inner }) {
        Ok(od) => {
            let h = oriented_homology(&od);
            let groups: Vec<serde_json::Value> = h
                .iter()
                .map(|(i, j, g)| {
                    serde_json::json!({
                        "i": i, "j": j, "rank": g.rank, "torsion": torsion_strings(&g.torsion),
                    })
                })
                .collect();
            let v = serde_json::json!({ "invariant": "oriented", "groups": groups });
            write_string(out, v.to_string())
        }
        Err(_) => KbhStatus::InvalidInput,
    })
}

/// Khovanov homology as JSON:
/// `{"invariant":"khovanov","groups":[{"k":0,"q":1,"rank":1,"torsion":[]},…]}`.
#[no_mangle]
pub extern "C" fn kbh_khovanov_homology_json(
    d: *const KbhDiagram,
    out: *mut *mut c_char,
) -> KbhStatus {
    if d.is_null() || out.is_null() {
        return KbhStatus::NullArgument;
    }
    guarded(|| match orient(unsafe { &(*d).inner }) {
        Ok(od) => {
            let h = khovanov_homology(&od);
            let groups: Vec<serde_json::Value> = h
                .iter()
                .map(|(k, q, g)| {
                    serde_json::json!({
                        "k": k, "q": q, "rank": g.rank, "torsion": torsion_strings(&g.torsion),
                    })
                })
                .collect();
            let v = serde_json::json!({ "invariant": "khovanov", "groups": groups });
            write_string(out, v.to_string())
        }
        Err(_) => KbhStatus::InvalidInput,
    })
}

/// Static version string; do not free.
#[no_mangle]
pub extern "C" fn kbh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
