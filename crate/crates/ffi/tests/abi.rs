//! Exercises the C ABI through the Rust declarations: status codes, last
//! error messages, handle lifetimes and JSON outputs.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hecke_lab_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { hl_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let s = hl_last_error_message();
    (!s.is_null()).then(|| take_string(s))
}

fn mat(a: i64, b: i64, c: i64, d: i64) -> HlMat2 {
    HlMat2 { a, b, c, d }
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(hl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn hnf_decompose_splits_and_reports_errors() {
    let (mut gamma, mut upper) = (HlMat2::default(), HlMat2::default());
    let st = unsafe { hl_hnf_decompose(mat(2, 0, 1, 1), &mut gamma, &mut upper) };
    assert_eq!(st, HlStatus::Ok);
    assert_eq!(upper, mat(1, 1, 0, 2));
    assert_eq!(gamma.a * gamma.d - gamma.b * gamma.c, 1);
    assert_eq!((gamma.a * upper.a + gamma.b * upper.c, gamma.a * upper.b + gamma.b * upper.d), (2, 0));
    assert!(last_error().is_none());

    let st = unsafe { hl_hnf_decompose(mat(0, 1, 1, 0), &mut gamma, &mut upper) };
    assert_eq!(st, HlStatus::Domain);
    assert!(last_error().is_some());
    let st = unsafe { hl_hnf_decompose(mat(1, 0, 0, 1), ptr::null_mut(), &mut upper) };
    assert_eq!(st, HlStatus::NullPointer);
}

#[test]
fn coset_keys_identify_cosets() {
    let mut k1 = HlCosetKey::default();
    let mut k2 = HlCosetKey::default();
    unsafe {
        assert_eq!(hl_coset_key(2, mat(0, -1, 1, 0), &mut k1), HlStatus::Ok);
        assert_eq!((k1.class_c, k1.class_d, k1.hnf), (1, 0, mat(1, 0, 0, 1)));
        // (1 0; 2 1) ∈ Γ₀(2) leaves the coset unchanged.
        assert_eq!(hl_coset_key(2, mat(-2, -1, 1, 0), &mut k2), HlStatus::Ok);
        assert_eq!(k1, k2);
        assert_eq!(hl_coset_key(2, mat(1, 1, 0, 1), &mut k2), HlStatus::Ok);
        assert_eq!((k2.class_c, k2.class_d), (0, 1));
        assert_eq!(hl_coset_key(0, mat(1, 0, 0, 1), &mut k2), HlStatus::Usage);
    }
    let mut inside = false;
    assert_eq!(unsafe { hl_in_gamma0(4, mat(1, 0, 4, 1), &mut inside) }, HlStatus::Ok);
    assert!(inside);
    assert_eq!(unsafe { hl_in_gamma0(4, mat(1, 0, 2, 1), &mut inside) }, HlStatus::Ok);
    assert!(!inside);
}

#[test]
fn index_table_handle() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(hl_index_table_new(2, &mut t), HlStatus::Ok);
        assert_eq!(hl_index_table_len(t), 3);
        let mut e = HlIndexEntry::default();
        let expected = [(1, 0, 1, mat(1, 0, 0, 2), 1), (1, 1, 2, mat(1, 1, 0, 2), 0), (2, 0, 3, mat(2, 0, 0, 1), 2)];
        for (i, &(c, b, d, a, h)) in expected.iter().enumerate() {
            assert_eq!(hl_index_table_entry(t, i, &mut e), HlStatus::Ok);
            assert_eq!((e.c, e.b, e.d, e.a_mat, e.h), (c, b, d, a, h));
            assert_eq!((e.r_mat.c, e.r_mat.d), (c as i64, d as i64));
        }
        assert_eq!(hl_index_table_entry(t, 3, &mut e), HlStatus::Usage);
        let mut json = ptr::null_mut();
        assert_eq!(hl_index_table_to_json(t, &mut json), HlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["mu"], 3);
        hl_index_table_free(t);
        hl_index_table_free(ptr::null_mut());
        assert_eq!(hl_index_table_len(ptr::null()), 0);
    }
}

#[test]
fn period_vector_pipeline() {
    unsafe {
        let mut psi = ptr::null_mut();
        assert_eq!(hl_psi_vector_new(1, HlSeed::InverseZ, 1, &mut psi), HlStatus::Ok);
        assert_eq!((hl_period_vector_level(psi), hl_period_vector_len(psi)), (1, 1));
        let mut passed = false;
        assert_eq!(hl_period_vector_check_three_term(psi, HlCheckMode::Exact, &mut passed), HlStatus::Ok);
        assert!(passed);

        let mut image = ptr::null_mut();
        assert_eq!(hl_t_tilde_apply(psi, 4, &mut image), HlStatus::Ok);
        let mut lambda = ptr::null_mut();
        assert_eq!(hl_detect_eigenvalue(psi, image, &mut lambda), HlStatus::Ok);
        assert_eq!(take_string(lambda), "6");

        let mut json = ptr::null_mut();
        assert_eq!(hl_period_vector_to_json(image, &mut json), HlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["level"], 1);
        hl_period_vector_free(image);
        hl_period_vector_free(psi);

        let mut constant = ptr::null_mut();
        assert_eq!(hl_psi_vector_new(3, HlSeed::Constant, 2, &mut constant), HlStatus::Ok);
        assert_eq!(hl_period_vector_check_three_term(constant, HlCheckMode::Sampled, &mut passed), HlStatus::Ok);
        assert!(!passed);
        hl_period_vector_free(constant);

        let mut bad = ptr::null_mut();
        assert_eq!(hl_psi_vector_new(2, HlSeed::InverseZ, 2, &mut bad), HlStatus::Domain);
        assert!(bad.is_null());
        assert!(last_error().unwrap().contains("beta"));
    }
}

#[test]
fn json_exports() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(hl_psi_total_json(1, &mut s), HlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v.to_string(), r#"[{"coeff":1,"matrix":[["1","0"],["0","1"]]}]"#);

        assert_eq!(hl_farey_path_json(2, 3, &mut s), HlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["q"], "2/3");
        assert_eq!(hl_farey_path_json(3, 2, &mut s), HlStatus::Domain);
        assert_eq!(hl_farey_path_json(1, 0, &mut s), HlStatus::Domain);

        assert_eq!(hl_coset_sum_json(2, 2, &mut s), HlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        let total: u64 = v["cosets"].as_array().unwrap().iter().map(|c| c["multiplicity"].as_u64().unwrap()).sum();
        assert_eq!(total, 2);
    }
}

#[test]
fn suite_runs_through_the_abi() {
    let cfg = CString::new(r#"{"nMax": 3, "mMax": 2, "eMax": 1, "threads": 2}"#).unwrap();
    let mut report = ptr::null_mut();
    let mut passed = false;
    unsafe {
        assert_eq!(hl_run_suite_json(cfg.as_ptr(), &mut report, &mut passed), HlStatus::Ok);
    }
    assert!(passed);
    let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["config"]["nMax"], 3);

    let corrupt = CString::new(r#"{"nMax": 3, "mMax": 2, "eMax": 1, "corruptPsi": true}"#).unwrap();
    unsafe {
        assert_eq!(hl_run_suite_json(corrupt.as_ptr(), &mut report, &mut passed), HlStatus::Ok);
    }
    assert!(!passed);
    take_string(report);

    for (text, status) in
        [(r#"{"nMax": 0}"#, HlStatus::Usage), ("{", HlStatus::Parse), (r#"{"x": 1}"#, HlStatus::Usage)]
    {
        let cfg = CString::new(text).unwrap();
        assert_eq!(unsafe { hl_run_suite_json(cfg.as_ptr(), &mut report, &mut passed) }, status, "{text}");
        assert!(last_error().is_some());
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hecke_lab.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 20);
    for name in exports {
        assert!(
            header.contains(&format!(" {name}(")) || header.contains(&format!("*{name}(")),
            "{name} missing from header"
        );
    }
    for ty in ["HlStatus", "HlMat2", "HlCosetKey", "HlIndexEntry", "HlIndexTable", "HlPeriodVector", "HlSeed"] {
        assert!(
            header.contains(&format!("typedef struct {ty}")) || header.contains(&format!("typedef enum {ty}")),
            "{ty}"
        );
    }
}
