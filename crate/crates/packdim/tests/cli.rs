use std::process::Command;

fn packdim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_packdim"))
}

#[test]
fn bounds_json_matches_library() {
    let out = packdim().args(["bounds", "--m", "1", "--kappa", "16"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["packing"], "bm");
    assert_eq!(v["lambda"].as_f64().unwrap(), 1.317706);
    for key in ["mu", "residual_lambda", "residual_mu", "gap_bound", "wall_time_s", "kappa", "variant", "m"] {
        assert!(!v[key].is_null(), "missing {key}");
    }
}

#[test]
fn reruns_are_identical_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |p: &std::path::Path| -> String {
        std::fs::read_to_string(p).unwrap().lines().filter(|l| !l.contains("wall_time")).collect::<Vec<_>>().join("\n")
    };
    let mut files = Vec::new();
    for i in 0..2 {
        let p = dir.path().join(format!("r{i}.json"));
        let st = packdim()
            .args(["bounds", "--m", "2", "--kappa", "100", "--threads", "1", "-o"])
            .arg(&p)
            .env("PACKDIM_CACHE_DIR", dir.path().join("cache"))
            .status()
            .unwrap();
        assert!(st.success());
        files.push(strip(&p));
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(std::fs::read_dir(dir.path().join("cache")).unwrap().count(), 1);
}

#[test]
fn orbit_binary_dump_has_one_record_per_vector() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("h.bin");
    let st = packdim().args(["orbit", "--hmax", "4096", "--format", "bin", "-o"]).arg(&p).status().unwrap();
    assert!(st.success());
    let bytes = std::fs::read(&p).unwrap();
    let count = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    assert_eq!(count, packdim::orbit::orbit_bfs(4096).unwrap().count() as u64);
    assert_eq!(bytes.len() as u64, 16 + 8 * count);
}

#[test]
fn table_and_render_outputs() {
    let out = packdim().args(["table1", "--max-m", "1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(2).unwrap().starts_with("1,16,1.274746,1.317706,"));
    let out = packdim().args(["render", "--hmax", "64", "--labels"]).output().unwrap();
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.contains("<svg") && svg.contains("<circle"));
}

#[test]
fn errors_are_machine_readable() {
    let out = packdim().args(["bounds", "--kappa", "16"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "Config");
    let out = packdim().args(["bounds", "--m", "1", "--kappa", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "KappaTooSmall");
}
