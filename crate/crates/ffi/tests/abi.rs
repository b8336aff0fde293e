use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use jdiv_ffi::*;

fn dist(p: &[f64]) -> *mut JdivDistribution {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { jdiv_distribution_new(p.as_ptr(), p.len(), &mut h) },
        JdivStatus::Ok
    );
    h
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(jdiv_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn jd_of_point_masses_is_ln2() {
    let (p, q) = (dist(&[1.0, 0.0]), dist(&[0.0, 1.0]));
    let mut v = f64::NAN;
    assert_eq!(unsafe { jdiv_jd_alpha(p, q, 1.0, &mut v) }, JdivStatus::Ok);
    assert_eq!(v, std::f64::consts::LN_2);
    assert_eq!(unsafe { jdiv_distribution_len(p) }, 2);
    let mut tv = 0.0;
    assert_eq!(
        unsafe { jdiv_total_variation(p, q, &mut tv) },
        JdivStatus::Ok
    );
    assert_eq!(tv, 2.0);
    unsafe {
        jdiv_distribution_free(p);
        jdiv_distribution_free(q);
        jdiv_distribution_free(ptr::null_mut());
    }
}

#[test]
fn validation_errors_set_message() {
    let mut h = ptr::null_mut();
    let bad = [0.5, 0.7];
    let s = unsafe { jdiv_distribution_new(bad.as_ptr(), 2, &mut h) };
    assert_eq!(s, JdivStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    let p = dist(&[0.5, 0.5]);
    let mut v = 0.0;
    assert_eq!(
        unsafe { jdiv_jd_alpha(p, p, 0.0, &mut v) },
        JdivStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { jdiv_jd_alpha(p, ptr::null(), 1.0, &mut v) },
        JdivStatus::NullPointer
    );
    assert_eq!(
        unsafe { jdiv_jd_alpha(p, p, 1.0, ptr::null_mut()) },
        JdivStatus::NullPointer
    );
    unsafe { jdiv_distribution_free(p) };
}

#[test]
fn kl_reports_infinity() {
    let (p, q) = (dist(&[0.5, 0.5]), dist(&[1.0, 0.0]));
    let mut v = 0.0;
    assert_eq!(
        unsafe { jdiv_kl_divergence(p, q, &mut v) },
        JdivStatus::Infinite
    );
    unsafe {
        jdiv_distribution_free(p);
        jdiv_distribution_free(q);
    }
}

#[test]
fn states_and_trace_distance() {
    let re0 = [1.0, 0.0, 0.0, 0.0];
    let re1 = [0.0, 0.0, 0.0, 1.0];
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(
            jdiv_density_matrix_new(2, re0.as_ptr(), ptr::null(), &mut a),
            JdivStatus::Ok
        );
        assert_eq!(
            jdiv_density_matrix_new(2, re1.as_ptr(), ptr::null(), &mut b),
            JdivStatus::Ok
        );
        assert_eq!(jdiv_density_matrix_dim(a), 2);
        let mut t = 0.0;
        assert_eq!(jdiv_trace_distance(a, b, &mut t), JdivStatus::Ok);
        assert!((t - 2.0).abs() < 1e-12);
        let mut q = 0.0;
        assert_eq!(jdiv_qjd_alpha(a, b, 1.0, &mut q), JdivStatus::Ok);
        assert!((q - std::f64::consts::LN_2).abs() < 1e-12);
        let mut bnd = JdivBounds::default();
        assert_eq!(jdiv_q_bounds(a, b, 1.0, &mut bnd), JdivStatus::Ok);
        assert!(bnd.lower <= bnd.value + 1e-9 && bnd.value <= bnd.upper + 1e-9);
        let mut s = 1.0;
        assert_eq!(jdiv_q_alpha_entropy(a, 1.0, &mut s), JdivStatus::Ok);
        assert!(s.abs() < 1e-12);
        jdiv_density_matrix_free(a);
        jdiv_density_matrix_free(b);
    }
}

#[test]
fn divergence_matrix_embeds() {
    let pts = [
        dist(&[0.7, 0.2, 0.1]),
        dist(&[0.1, 0.8, 0.1]),
        dist(&[0.3, 0.3, 0.4]),
        dist(&[0.25, 0.25, 0.5]),
    ];
    let handles: Vec<*const JdivDistribution> = pts.iter().map(|&p| p as *const _).collect();
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(
            jdiv_divergence_matrix(handles.as_ptr(), 4, 1.0, &mut d),
            JdivStatus::Ok
        );
        assert_eq!(jdiv_distance_matrix_n(d), 4);
        let mut neg = false;
        let mut lam = f64::NAN;
        assert_eq!(
            jdiv_negative_type_check(d, -1.0, &mut neg, &mut lam),
            JdivStatus::Ok
        );
        assert!(neg && lam > -1e-9);

        let mut coords = [0.0; 16];
        let mut dim = 0usize;
        let mut err = f64::NAN;
        assert_eq!(
            jdiv_embed(d, coords.as_mut_ptr(), 1, &mut dim, &mut err),
            JdivStatus::BufferTooSmall
        );
        assert_eq!(
            jdiv_embed(d, coords.as_mut_ptr(), 16, &mut dim, &mut err),
            JdivStatus::Ok
        );
        assert!(dim <= 3 && err <= 1e-8);
        let mut d01 = 0.0;
        assert_eq!(jdiv_distance_matrix_get(d, 0, 1, &mut d01), JdivStatus::Ok);
        let dist2: f64 = (0..dim)
            .map(|k| (coords[k] - coords[dim + k]).powi(2))
            .sum();
        assert!((dist2 - d01).abs() < 1e-8);
        assert_eq!(
            jdiv_distance_matrix_get(d, 0, 9, &mut d01),
            JdivStatus::InvalidArgument
        );
        jdiv_distance_matrix_free(d);
        for p in pts {
            jdiv_distribution_free(p);
        }
    }
}

#[test]
fn distance_matrix_handles() {
    let tri = [0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0];
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(
            jdiv_distance_matrix_new(3, tri.as_ptr(), &mut d),
            JdivStatus::Ok
        );
        let mut det = 0.0;
        assert_eq!(jdiv_cayley_menger_det(d, &mut det), JdivStatus::Ok);
        assert!((det + 3.0).abs() < 1e-12);
        jdiv_distance_matrix_free(d);
        let bad = [0.0, 9.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0];
        let mut e = ptr::null_mut();
        assert_eq!(
            jdiv_distance_matrix_new(3, bad.as_ptr(), &mut e),
            JdivStatus::InvalidArgument
        );
        let far = [0.0, 9.0, 1.0, 9.0, 0.0, 1.0, 1.0, 1.0, 0.0];
        assert_eq!(
            jdiv_distance_matrix_new(3, far.as_ptr(), &mut e),
            JdivStatus::Ok
        );
        let mut coords = [0.0; 9];
        let mut dim = 0usize;
        let s = jdiv_embed(e, coords.as_mut_ptr(), 9, &mut dim, ptr::null_mut());
        assert_eq!(s, JdivStatus::NotNegativeType);
        jdiv_distance_matrix_free(e);
    }
}

#[test]
fn scalar_entry_points() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(jdiv_counterexample_energy(2.5, &mut v), JdivStatus::Ok);
        assert!((v - 0.008597991156777063).abs() < 1e-15);
        assert_eq!(
            jdiv_quadruple_cm_determinant(4.0, 1e-2, &mut v),
            JdivStatus::Ok
        );
        assert!(v < 0.0);
        assert_eq!(
            jdiv_quadruple_cm_determinant(4.0, 0.5, &mut v),
            JdivStatus::InvalidArgument
        );
        assert_eq!(jdiv_power_integral(0.5, 0.5, &mut v), JdivStatus::Ok);
        assert!((v - 0.5f64.sqrt()).abs() < 1e-10);
        assert_eq!(
            jdiv_power_integral(0.5, 1.0, &mut v),
            JdivStatus::InvalidArgument
        );
        let p = dist(&[0.6, 0.4]);
        let q = dist(&[0.2, 0.8]);
        let mut b = JdivBounds::default();
        assert_eq!(jdiv_bounds(p, q, 1.5, &mut b), JdivStatus::Ok);
        assert!((b.v - 0.8).abs() < 1e-15);
        assert!(b.lower <= b.value && b.value <= b.upper);
        let mut h = 0.0;
        assert_eq!(jdiv_alpha_entropy(p, 2.0, &mut h), JdivStatus::Ok);
        assert!((h - (1.0 - 0.36 - 0.16)).abs() < 1e-15);
        jdiv_distribution_free(p);
        jdiv_distribution_free(q);
        let ver = CStr::from_ptr(jdiv_version()).to_str().unwrap();
        assert_eq!(ver, env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/jdiv.h");
    let text = std::fs::read_to_string(header).expect("header generated by build.rs");
    for name in [
        "jdiv_jd_alpha",
        "jdiv_embed",
        "JDIV_STATUS_OK",
        "JdivDistribution",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, header])
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
            Err(_) => eprintln!("{compiler} not available, skipped"),
        }
    }
}

#[test]
fn c_program_links_against_staticlib() {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [
        deps.join("libjdiv_ffi.a"),
        deps.parent().unwrap().join("libjdiv_ffi.a"),
    ]
    .into_iter()
    .find(|p| p.exists());
    let Some(lib) = lib else {
        eprintln!("static library not built, skipped");
        return;
    };
    let dir = env!("CARGO_MANIFEST_DIR");
    let bin = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("jdiv_smoke");
    let built = Command::new("cc")
        .arg(format!("{dir}/tests/c/smoke.c"))
        .arg(format!("-I{dir}/include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status();
    match built {
        Ok(s) => assert!(s.success(), "C smoke program failed to build"),
        Err(_) => {
            eprintln!("cc not available, skipped");
            return;
        }
    }
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let v: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert_eq!(v, std::f64::consts::LN_2);
}
