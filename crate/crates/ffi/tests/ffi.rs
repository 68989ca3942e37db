use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use rootspace_ffi::*;

fn inventory_path() -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/latin.tsv");
    CString::new(p.to_str().unwrap()).unwrap()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rs_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    rs_string_free(s);
    out
}

#[test]
fn morphology_through_handles() {
    unsafe {
        let mut inv = ptr::null_mut();
        assert_eq!(
            rs_inventory_load(inventory_path().as_ptr(), c("latin").as_ptr(), &mut inv),
            RsStatus::Ok
        );
        let mut out = ptr::null_mut();
        let st = rs_apply_template(inv, c("xfv").as_ptr(), c("maCCeC").as_ptr(), &mut out);
        assert_eq!(st, RsStatus::Ok);
        assert_eq!(take(out), "maxfev");

        let st = rs_extract_roots(inv, c("xefbon").as_ptr(), c("CeCCon").as_ptr(), &mut out);
        assert_eq!(st, RsStatus::Ok);
        assert_eq!(take(out), "xfb");

        let st = rs_denominal_root(
            inv,
            c("maxfev").as_ptr(),
            c("maCCeC").as_ptr(),
            c("xfv").as_ptr(),
            &mut out,
        );
        assert_eq!(st, RsStatus::Ok);
        assert_eq!(take(out), "mxfv");

        let st = rs_apply_template(inv, c("xf").as_ptr(), c("taCCiC").as_ptr(), &mut out);
        assert_eq!(st, RsStatus::Morphology);
        assert!(last_error().contains("2-consonant"));
        rs_inventory_free(inv);
    }
}

#[test]
fn errors_are_codes_not_crashes() {
    unsafe {
        let mut inv = ptr::null_mut();
        assert_eq!(
            rs_inventory_load(ptr::null(), c("latin").as_ptr(), &mut inv),
            RsStatus::NullArgument
        );
        assert_eq!(
            rs_inventory_load(c("/no/such/file").as_ptr(), c("latin").as_ptr(), &mut inv),
            RsStatus::Io
        );
        assert!(inv.is_null());
        let mut out = ptr::null_mut();
        assert_eq!(
            rs_apply_template(
                ptr::null(),
                c("xfv").as_ptr(),
                c("maCCeC").as_ptr(),
                &mut out
            ),
            RsStatus::NullArgument
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            rs_inventory_load(bad.as_ptr().cast(), c("latin").as_ptr(), &mut inv),
            RsStatus::InvalidUtf8
        );
        rs_inventory_free(ptr::null_mut());
        rs_string_free(ptr::null_mut());
        rs_vectors_free(ptr::null_mut());
        assert_eq!(rs_vectors_dim(ptr::null()), 0);
    }
}

#[test]
fn vectors_through_handles() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("v.vec");
    std::fs::write(&file, "2 3\na 1 2 3\nb 0 0.5 1\n").unwrap();
    unsafe {
        let mut space = ptr::null_mut();
        let path = c(file.to_str().unwrap());
        assert_eq!(
            rs_vectors_load(path.as_ptr(), ptr::null(), c("x").as_ptr(), &mut space),
            RsStatus::Ok
        );
        assert_eq!((rs_vectors_dim(space), rs_vectors_len(space)), (3, 2));
        let mut buf = [0.0; 3];
        assert_eq!(
            rs_vectors_lookup(space, c("b").as_ptr(), buf.as_mut_ptr(), 3),
            RsStatus::Ok
        );
        assert_eq!(buf, [0.0, 0.5, 1.0]);
        assert_eq!(
            rs_vectors_lookup(space, c("b").as_ptr(), buf.as_mut_ptr(), 2),
            RsStatus::BufferTooSmall
        );
        assert_eq!(
            rs_vectors_lookup(space, c("z").as_ptr(), buf.as_mut_ptr(), 3),
            RsStatus::NotFound
        );
        rs_vectors_free(space);

        let mut space = ptr::null_mut();
        assert_eq!(
            rs_vectors_load(path.as_ptr(), c("bogus").as_ptr(), ptr::null(), &mut space),
            RsStatus::Parse
        );
    }
}

#[test]
fn statistics_match_the_library() {
    let diffs = [0.4, -0.1, 0.9, 1.3, 0.0, -0.6, 2.0];
    let a = [0.8, 0.7, 0.95, 0.6];
    let b = [0.3, 0.5, 0.7, 0.2, 0.4];
    unsafe {
        let mut w = RsWilcoxon::default();
        assert_eq!(
            rs_wilcoxon(diffs.as_ptr(), diffs.len(), 20, &mut w),
            RsStatus::Ok
        );
        let lib = rootspace::hypotheses::wilcoxon_one_tailed(&diffs, 20).unwrap();
        assert_eq!(
            (w.p_value, w.w_plus, w.n, w.n_zeros, w.exact),
            (lib.p_value, lib.w_plus, 6, 1, 1)
        );

        let mut d = 0.0;
        assert_eq!(
            rs_cliffs_delta(a.as_ptr(), 4, b.as_ptr(), 5, &mut d),
            RsStatus::Ok
        );
        assert_eq!(
            d,
            rootspace::hypotheses::cliffs_delta(&a, &b).unwrap().delta
        );

        let (mut stat, mut p) = (0.0, 0.0);
        assert_eq!(
            rs_levene(a.as_ptr(), 4, b.as_ptr(), 5, &mut stat, &mut p),
            RsStatus::Ok
        );
        let lev = rootspace::hypotheses::levene_test(&a, &b).unwrap();
        assert_eq!((stat, p), (lev.statistic, lev.p_value));

        let mut cos = 0.0;
        assert_eq!(rs_cosine(a.as_ptr(), b.as_ptr(), 4, &mut cos), RsStatus::Ok);
        assert!(
            (cos - rootspace::hypotheses::cosine_similarity(&a, &b[..4]).unwrap()).abs() < 1e-15
        );

        let mut k = 0usize;
        let ev = [3.0, 1.0, 0.5, 0.5];
        assert_eq!(rs_guttman_kaiser(ev.as_ptr(), 4, &mut k), RsStatus::Ok);
        assert_eq!(k, 1);

        let zeros = [0.0, 0.0];
        assert_eq!(
            rs_wilcoxon(zeros.as_ptr(), 2, 20, &mut w),
            RsStatus::Statistics
        );
        assert_eq!(
            last_error(),
            rootspace::hypotheses::StatsError::AllZeros.to_string()
        );
        assert_eq!(
            rs_wilcoxon(ptr::null(), 3, 20, &mut w),
            RsStatus::NullArgument
        );
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/rootspace.h");
    assert!(std::fs::read_to_string(&header)
        .unwrap()
        .contains("enum RsStatus rs_wilcoxon("));
    let lib = target_dir().join("librootspace_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping C link check: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe)
        .arg(inventory_path().to_str().unwrap())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
