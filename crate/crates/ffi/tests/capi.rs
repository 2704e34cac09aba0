use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use subcode_ffi::*;

fn last_error() -> String {
    let p = subcode_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn construct_emit_parse_roundtrip() {
    unsafe {
        let mut code: *mut SubcodeCode = ptr::null_mut();
        assert_eq!(subcode_code_construct(SubcodeConstruction::LiftedMrdPlusOne, 7, 3, 6, &mut code), SubcodeStatus::Ok);
        let mut text: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(subcode_code_emit(code, &mut text), SubcodeStatus::Ok);
        let emitted = CStr::from_ptr(text).to_str().unwrap().to_owned();
        assert!(emitted.starts_with("q=2 v=7\n"));

        let mut back: *mut SubcodeCode = ptr::null_mut();
        assert_eq!(subcode_code_parse(text, &mut back), SubcodeStatus::Ok);
        subcode_string_free(text);
        let (mut n, mut d) = (0usize, 0i64);
        assert_eq!(subcode_code_len(back, &mut n), SubcodeStatus::Ok);
        assert_eq!(subcode_code_min_distance(back, &mut d), SubcodeStatus::Ok);
        assert_eq!((n, d), (17, 6));

        let mut dual: *mut SubcodeCode = ptr::null_mut();
        assert_eq!(subcode_code_orthogonal(back, &mut dual), SubcodeStatus::Ok);
        assert_eq!(subcode_code_min_distance(dual, &mut d), SubcodeStatus::Ok);
        assert_eq!(d, 6);
        for c in [code, back, dual] {
            subcode_code_free(c);
        }
    }
}

#[test]
fn bounds() {
    let mut x = 0u64;
    unsafe {
        assert_eq!(subcode_bound_johnson(2, 8, 6, 4, &mut x), SubcodeStatus::Ok);
        assert_eq!(x, 289);
        assert_eq!(subcode_bound_one_incidence(2, 4, 1, &mut x), SubcodeStatus::Ok);
        assert_eq!(x, 272);
        assert_eq!(subcode_bound_upper(2, 8, 6, 4, &mut x), SubcodeStatus::Ok);
        assert_eq!(x, 272);
        assert_eq!(subcode_bound_johnson(1, 8, 6, 4, &mut x), SubcodeStatus::Domain);
        assert!(last_error().starts_with("bounds:"));
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut code: *mut SubcodeCode = ptr::null_mut();
        let bad = CString::new("q=2 v=3\n1111\n").unwrap();
        assert_eq!(subcode_code_parse(bad.as_ptr(), &mut code), SubcodeStatus::Parse);
        assert!(code.is_null());
        assert!(last_error().contains("line 2"));
        assert_eq!(subcode_code_parse(ptr::null(), &mut code), SubcodeStatus::NullPointer);
        assert_eq!(subcode_code_len(ptr::null(), ptr::null_mut()), SubcodeStatus::NullPointer);
        assert_eq!(
            subcode_code_construct(SubcodeConstruction::LiftedMrd, 9, 4, 6, &mut code),
            SubcodeStatus::Domain
        );
        subcode_code_free(ptr::null_mut());
        subcode_graph_free(ptr::null_mut());
        subcode_string_free(ptr::null_mut());
    }
}

#[test]
fn clique_search() {
    unsafe {
        let mut g: *mut SubcodeGraph = ptr::null_mut();
        assert_eq!(subcode_distance_graph(2, 4, 2, 4, &mut g), SubcodeStatus::Ok);
        let (mut nv, mut ne) = (0usize, 0usize);
        assert_eq!(subcode_graph_size(g, &mut nv, &mut ne), SubcodeStatus::Ok);
        assert_eq!((nv, ne), (35, 35 * 16 / 2));

        let opts = SubcodeSearchOptions { seed: 3, ..Default::default() };
        let mut r = std::mem::MaybeUninit::<SubcodeCliqueResult>::uninit();
        let mut small = [0usize; 2];
        assert_eq!(subcode_max_clique(g, &opts, r.as_mut_ptr(), small.as_mut_ptr(), 2), SubcodeStatus::BufferTooSmall);
        let mut buf = [0usize; 8];
        assert_eq!(subcode_max_clique(g, &opts, r.as_mut_ptr(), buf.as_mut_ptr(), 8), SubcodeStatus::Ok);
        let r = r.assume_init();
        assert_eq!((r.lower, r.upper, r.optimal, r.status), (5, 5, true, SubcodeSearchStatus::Complete));

        let mut code: *mut SubcodeCode = ptr::null_mut();
        assert_eq!(subcode_graph_code(g, buf.as_ptr(), r.lower, &mut code), SubcodeStatus::Ok);
        let mut d = 0i64;
        assert_eq!(subcode_code_min_distance(code, &mut d), SubcodeStatus::Ok);
        assert_eq!(d, 4);
        let out_of_range = [99usize];
        let mut other: *mut SubcodeCode = ptr::null_mut();
        assert_eq!(subcode_graph_code(g, out_of_range.as_ptr(), 1, &mut other), SubcodeStatus::Domain);
        subcode_code_free(code);
        subcode_graph_free(g);
    }
}

#[test]
fn extension_graph_requires_plane_code() {
    unsafe {
        let mut code: *mut SubcodeCode = ptr::null_mut();
        assert_eq!(subcode_code_construct(SubcodeConstruction::LiftedMrd, 7, 3, 6, &mut code), SubcodeStatus::Ok);
        let mut g: *mut SubcodeGraph = ptr::null_mut();
        assert_eq!(subcode_extension_graph(code, &mut g), SubcodeStatus::Domain);
        assert!(g.is_null());
        subcode_code_free(code);
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libsubcode_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_against_header() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping C link check");
        return;
    };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler; skipping C link check");
        return;
    };
    assert!(status.success(), "C smoke program failed to build");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "257 6 289 272 5 1");
}
