use std::process::Command;

fn arctic(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_arctic")).args(args).output().expect("binary runs")
}

#[test]
fn csv_bytes_are_deterministic() {
    for args in [
        &["probs", "--N", "16", "--r", "10", "--s", "4", "--alpha", "1/3"][..],
        &["sample", "--N", "20", "--r", "12", "--s", "5", "--samples", "3", "--seed", "9"],
        &["curve", "--alpha", "0.3", "--R", "1.5", "--points", "200"],
    ] {
        let (a, b) = (arctic(args), arctic(args));
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn csv_header_names_columns() {
    let out = arctic(&["probs", "--N", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("i,j,x_pos,y_pos,p,q,r,s,x,z_re,z_im,fluid"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn curve_json_round_trips_through_the_checker() {
    let dir = std::env::temp_dir().join(format!("arctic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, args) in [("two.json", ["--R", "1.5"]), ("one.json", ["--R", "4.0"])] {
        let path = dir.join(name);
        let p = path.to_str().unwrap();
        let out = arctic(&["curve", "--alpha", "0.3", args[0], args[1], "--format", "json", "--out", p]);
        assert!(out.status.success());
        let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(doc["metadata"]["config"]["alpha"], 0.3);
        assert!(doc["metadata"]["derived"]["Rc"].as_f64().unwrap() > 3.42);
        assert!(arctic(&["check-curve", p]).status.success());
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_configuration_exits_with_two() {
    for args in [
        &["probs", "--N", "5", "--R", "2"][..],
        &["probs", "--N", "2000"],
        &["probs", "--N", "5", "--r", "2", "--s", "3"],
        &["curve", "--alpha", "1.5", "--R", "2"],
        &["curve", "--alpha", "0.3"],
        &["verify", "nonsense"],
    ] {
        assert_eq!(arctic(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn svg_is_self_contained() {
    let out = arctic(&["probs", "--N", "24", "--r", "14", "--s", "8", "--format", "svg"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert!(!text.contains("href"));
    assert!(text.contains("ξx = 0.5833"));
}

#[test]
fn verify_report_is_machine_readable() {
    let out = arctic(&["verify", "oracle"]);
    assert!(out.status.success());
    let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["passed"], true);
    assert_eq!(rep["checks"].as_array().unwrap().len(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS 1"));
}
