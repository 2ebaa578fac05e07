use std::path::PathBuf;
use std::process::{Command, Output};

use abelian_cs::report::{ClassifyReport, HomologyReport, LinkReport, WilsonReport};
use abelian_cs_cli::exit;

fn acs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn link(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("links")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("acs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn code(out: &Output) -> u8 {
    out.status.code().expect("exited normally") as u8
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn homology_table() {
    let out = acs(&["homology", "--manifold", "rp3"]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    let text = stdout(&out);
    for line in ["H_0     1      []       Z", "H_1     0      [2]      Z_2", "H_2     0      []       0", "H_3     1      []       Z"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn homology_json_round_trip() {
    let out = acs(&["homology", "--manifold", "lens-5", "--format", "json"]);
    assert_eq!(code(&out), exit::OK);
    let report: HomologyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.groups[1].torsion, vec!["5".to_string()]);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", stdout(&out));
}

#[test]
fn odd_level_rejected_on_projective_space() {
    let out = acs(&["wilson", "--manifold", "rp3", "--link", &link("rp3-generator.json"), "--level", "3"]);
    assert_eq!(code(&out), exit::REJECTED);
    assert!(stderr(&out).contains("k = 2l"), "{}", stderr(&out));
}

#[test]
fn odd_charge_rejected_on_torsion_component() {
    let out = acs(&[
        "wilson", "--manifold", "rp3", "--link", &link("rp3-generator.json"),
        "--level", "2", "--charges", "1",
    ]);
    assert_eq!(code(&out), exit::REJECTED);
    assert!(stderr(&out).contains("q = 2m"), "{}", stderr(&out));
}

#[test]
fn projective_generator_wilson() {
    let out = acs(&[
        "wilson", "--manifold", "rp3", "--link", &link("rp3-generator.json"),
        "--level", "2", "--format", "json",
    ]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    let report: WilsonReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.phase.to_string(), "1/4");
    assert_eq!(report.components[0].self_linking.to_string(), "3/2");
    assert_eq!(report.components[0].degree, 2);
}

#[test]
fn hopf_wilson() {
    let out = acs(&[
        "wilson", "--manifold", "s3-join", "--link", &link("hopf.json"),
        "--level", "2", "--charges", "1,1", "--format", "json", "--decimal-digits", "3",
    ]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    let report: WilsonReport = serde_json::from_str(&stdout(&out)).unwrap();
    let m: Vec<Vec<String>> = report
        .linking_matrix
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    assert_eq!(m[0][1], "1/1");
    assert_eq!(m[1][0], "1/1");
    assert_eq!(report.phase.to_string(), "1/2");
    assert_eq!(report.value.as_deref(), Some("-1.000 + 0.000i"));
    let back = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(serde_json::from_str::<WilsonReport>(&back).unwrap(), report);
}

#[test]
fn decimals_only_on_request() {
    let args = ["wilson", "--manifold", "s3-join", "--link", &link("hopf.json"), "--level", "2"];
    let text = stdout(&acs(&args));
    assert!(text.contains("phase: 1/2"));
    assert!(!text.contains("value"));
}

#[test]
fn link_matrix() {
    let out = acs(&["link", "--manifold", "lens-3", "--link", &link("torsion-pair.json"), "--format", "json"]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    let report: LinkReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.components, ["tau1", "tau2"]);
    assert_eq!(report.linking_matrix[0][1].to_string(), "1/3");
}

#[test]
fn classify_designated() {
    let out = acs(&["classify", "--manifold", "rp3", "--format", "json"]);
    assert_eq!(code(&out), exit::OK);
    let report: ClassifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    let tau = report.cycles.iter().find(|c| c.name == "tau1").unwrap();
    assert_eq!((tau.class.as_str(), tau.degree), ("torsion", Some(2)));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "wilson", "--manifold", "lens-2", "--link", &link("torsion-pair.json"),
        "--level", "4", "--format", "json",
    ];
    let a = acs(&args);
    let b = acs(&args);
    assert_eq!(code(&a), exit::OK, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let c = acs(&["classify", "--manifold", "lens-4"]);
    let d = acs(&["classify", "--manifold", "lens-4"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn output_file() {
    let path = scratch("homology.txt");
    let out = acs(&["homology", "--manifold", "s3", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), exit::OK);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("H_1     0      []       0"));
}

#[test]
fn manifold_from_file() {
    let path = scratch("tri.json");
    let tri = abelian_cs::manifold::build_lens(3).unwrap();
    std::fs::write(&path, abelian_cs::manifold::to_json(&tri)).unwrap();
    let out = acs(&["homology", "--manifold", path.to_str().unwrap()]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    assert!(stdout(&out).contains("Z_3"));
}

#[test]
fn parse_errors() {
    assert_eq!(code(&acs(&["homology"])), exit::PARSE);
    assert_eq!(code(&acs(&["frobnicate"])), exit::PARSE);
    assert_eq!(code(&acs(&["homology", "--manifold", "no-such-thing"])), exit::PARSE);
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = acs(&["homology", "--manifold", bad.to_str().unwrap()]);
    assert_eq!(code(&out), exit::PARSE);
    let out = acs(&["link", "--manifold", "rp3", "--link", bad.to_str().unwrap()]);
    assert_eq!(code(&out), exit::PARSE);
}

#[test]
fn validation_errors() {
    let path = scratch("flipped.json");
    let text = serde_json::json!({
        "name": "flipped", "vertices": 5,
        "tetrahedra": [[1, 2, 3, 4], [0, 2, 3, 4], [0, 1, 3, 4], [1, 0, 2, 4], [0, 1, 2, 3]]
    });
    std::fs::write(&path, text.to_string()).unwrap();
    let out = acs(&["homology", "--manifold", path.to_str().unwrap()]);
    assert_eq!(code(&out), exit::VALIDATION);
    assert!(stderr(&out).contains("orientation mismatch"), "{}", stderr(&out));

    let links = scratch("unknown.json");
    std::fs::write(&links, r#"{"components": [{"cycle": "nope", "charge": 1}]}"#).unwrap();
    let out = acs(&["link", "--manifold", "rp3", "--link", links.to_str().unwrap()]);
    assert_eq!(code(&out), exit::VALIDATION);

    let out = acs(&[
        "wilson", "--manifold", "s3-join", "--link", &link("hopf.json"),
        "--level", "2", "--charges", "1",
    ]);
    assert_eq!(code(&out), exit::VALIDATION);
    let out = acs(&["wilson", "--manifold", "s3-join", "--link", &link("hopf.json"), "--level", "0"]);
    assert_eq!(code(&out), exit::VALIDATION);
}

#[test]
fn missing_link_file() {
    let out = acs(&["link", "--manifold", "rp3", "--link", "/nonexistent/link.json"]);
    assert_eq!(code(&out), exit::IO);
}

#[test]
fn negative_level_accepted() {
    let out = acs(&["wilson", "--manifold", "s3-join", "--link", &link("hopf.json"), "--level", "-2"]);
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    assert!(stdout(&out).contains("phase: 1/2"));
}
