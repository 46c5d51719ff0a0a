use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use johnson_walk_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    jw_string_free(p);
    s
}

fn last_error() -> String {
    let p = jw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn generate_and_simulate() {
    unsafe {
        let fam = CString::new("element-distinctness").unwrap();
        let mut inst = ptr::null_mut();
        assert_eq!(
            jw_instance_generate(fam.as_ptr(), 9, 2, 1, true, &mut inst),
            JwStatus::Ok
        );
        assert!(jw_last_error_message().is_null());

        let (mut n, mut l, mut count) = (0, 0, 0);
        assert_eq!(jw_instance_shape(inst, &mut n, &mut l), JwStatus::Ok);
        assert_eq!((n, l), (9, 2));
        assert_eq!(jw_instance_marked_count(inst, &mut count), JwStatus::Ok);
        assert_eq!(count, 1);

        let mut params = JwRunParams::default();
        assert_eq!(jw_default_params(9, 2, &mut params), JwStatus::Ok);
        assert_eq!(params, JwRunParams { m: 4, t1: 2, t2: 2 });

        let mut out = ptr::null_mut();
        assert_eq!(jw_simulate_full(inst, &params, &mut out), JwStatus::Ok);
        let full: report_fields::Report = report_fields::parse(&take_string(out));
        assert_eq!(jw_simulate_reduced(9, 2, &params, &mut out), JwStatus::Ok);
        let reduced: report_fields::Report = report_fields::parse(&take_string(out));
        assert_eq!(full.query_count, 12);
        assert!((full.overlap_w - reduced.overlap_w).abs() < 1e-12);

        assert_eq!(jw_instance_to_json(inst, &mut out), JwStatus::Ok);
        let text = CString::new(take_string(out)).unwrap();
        let mut copy = ptr::null_mut();
        assert_eq!(
            jw_instance_from_json(text.as_ptr(), &mut copy),
            JwStatus::Ok
        );
        assert_eq!(jw_instance_marked_count(copy, &mut count), JwStatus::Ok);
        assert_eq!(count, 1);
        jw_instance_free(copy);
        jw_instance_free(inst);
        jw_instance_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut inst = ptr::null_mut();
        let bad = CString::new("no-such-family").unwrap();
        assert_eq!(
            jw_instance_generate(bad.as_ptr(), 9, 2, 1, true, &mut inst),
            JwStatus::InvalidArgument
        );
        assert!(last_error().contains("no-such-family"));
        assert_eq!(
            jw_instance_generate(ptr::null(), 9, 2, 1, true, &mut inst),
            JwStatus::NullPointer
        );

        let mut out = ptr::null_mut();
        assert_eq!(jw_spectrum(10, 1, 2, &mut out), JwStatus::InvalidArgument);
        assert!(out.is_null());
        assert_eq!(jw_table1_csv(ptr::null_mut()), JwStatus::NullPointer);

        let garbage = CString::new("{").unwrap();
        assert_eq!(
            jw_instance_from_json(garbage.as_ptr(), &mut inst),
            JwStatus::InvalidArgument
        );

        let fam = CString::new("element-distinctness").unwrap();
        assert_eq!(
            jw_instance_generate(fam.as_ptr(), 40, 2, 1, true, &mut inst),
            JwStatus::Ok
        );
        let params = JwRunParams {
            m: 20,
            t1: 1,
            t2: 1,
        };
        assert_eq!(
            jw_simulate_full(inst, &params, &mut out),
            JwStatus::MemoryCap
        );
        jw_instance_free(inst);
    }
}

#[test]
fn spectrum_and_table() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(jw_spectrum(3, 1, 1, &mut out), JwStatus::Ok);
        assert!(take_string(out).contains("\"walk\""));
        assert_eq!(jw_table1_csv(&mut out), JwStatus::Ok);
        let csv = take_string(out);
        assert!(csv.lines().nth(3).unwrap().starts_with("4,8/5,3/2,3/2,"));
    }
}

/// Minimal field extraction so the test does not pull in a JSON crate.
mod report_fields {
    pub struct Report {
        pub query_count: u64,
        pub overlap_w: f64,
    }

    fn field<'a>(text: &'a str, key: &str) -> &'a str {
        let start = text.find(&format!("\"{key}\":")).unwrap() + key.len() + 3;
        let rest = text[start..].trim_start();
        let end = rest.find([',', '\n', '}']).unwrap();
        rest[..end].trim()
    }

    pub fn parse(text: &str) -> Report {
        Report {
            query_count: field(text, "query_count").parse().unwrap(),
            overlap_w: field(text, "overlap_w").parse().unwrap(),
        }
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("libjohnson_walk_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("johnson_walk.h").exists());
    let lib = static_lib().expect("static library is built alongside the tests");
    let out = std::env::temp_dir().join(format!("jw_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
