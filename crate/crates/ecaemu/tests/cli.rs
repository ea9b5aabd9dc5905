use std::fs;
use std::process::{Command, Output};

use ecaemu::export::import_json;
use ecaemu::pbm::parse_pbm;
use ecaemu::witness::WitnessFile;
use ecaemu_core::{render_diagram, EcaRule, Grid, WordSampler};

fn ecaemu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecaemu"))
        .args(args)
        .env_remove(ecaemu::cache::CACHE_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn emulate_exit_codes() {
    let ok = ecaemu(&["emulate", "110", "137", "--k", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "rule 110 <=_1 rule 137 via 0 -> 1, 1 -> 0\n");

    let no = ecaemu(&["emulate", "30", "30", "--k", "2"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("cannot emulate"));

    assert_eq!(ecaemu(&["emulate", "256", "1", "--k", "1"]).status.code(), Some(2));
    assert_eq!(ecaemu(&["emulate", "1", "2", "--k", "0"]).status.code(), Some(2));
    assert_eq!(ecaemu(&["emulate", "1", "--k", "1"]).status.code(), Some(2));
    assert_eq!(ecaemu(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn witness_file_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let p = path.to_str().unwrap();
    let o = ecaemu(&["emulate", "184", "148", "--k", "2", "--witness-out", p]);
    assert_eq!(o.status.code(), Some(0));
    let file = WitnessFile::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((file.f, file.g, file.k), (EcaRule::new(184), EcaRule::new(148), 2));

    let v = ecaemu(&["verify", p]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("valid"));

    fs::write(&path, r#"{"f":110,"g":30,"k":1,"enc0":"0","enc1":"1"}"#).unwrap();
    let bad = ecaemu(&["verify", p]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("invalid"));

    fs::write(&path, "{}").unwrap();
    assert_eq!(ecaemu(&["verify", p]).status.code(), Some(2));
}

#[test]
fn rule_info() {
    let o = stdout(&ecaemu(&["rule", "info", "110"]));
    assert!(o.contains("dual: 137\n"));
    assert!(o.contains("mirror: 124\n"));
    assert!(o.contains("table: 000->0 001->1 010->1 011->1 100->0 101->1 110->1 111->0\n"));
    let o = stdout(&ecaemu(&["rule", "info", "105"]));
    assert!(o.contains("linear: false\naffine: true\n"));
}

#[test]
fn classify_small_kmax() {
    let o = ecaemu(&["classify", "--kmax", "2", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let chaos: Vec<u64> = report["chaos_candidates"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert!(chaos.contains(&30) && chaos.contains(&45), "{chaos:?}");
    assert_eq!(report["emulation_counts"]["30"], 0);
}

#[test]
fn hierarchy_formats_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |extra: &[&str]| {
        let mut args = vec!["hierarchy", "--kmax", "3", "--workers", "2"];
        args.extend_from_slice(extra);
        let o = ecaemu(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        stdout(&o)
    };
    let csv = run(&[]);
    assert!(csv.starts_with("emulator,emulated,kmin\n"));
    assert!(csv.lines().any(|l| l == "148,184,2"));
    assert_eq!(run(&["--csv"]), csv);

    let json = run(&["--json"]);
    let graph = import_json(&json).unwrap();
    assert_eq!(graph.nodes().len(), 136);
    assert_eq!(ecaemu::export::to_json(&graph).unwrap(), json);

    let c = cache.to_str().unwrap();
    assert_eq!(run(&["--json", "--cache-dir", c]), json);
    let shards = fs::read_dir(ecaemu::cache::ShardCache::new(&cache).dir()).unwrap().count();
    assert_eq!(shards, 136 * 3);
    // Second run is served from the shards.
    assert_eq!(run(&["--json", "--cache-dir", c]), json);

    let env = Command::new(env!("CARGO_BIN_EXE_ecaemu"))
        .args(["hierarchy", "--kmax", "3", "--json"])
        .env(ecaemu::cache::CACHE_ENV, c)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), json);

    let reduced = run(&["--reduce", "--dot"]);
    assert!(reduced.starts_with("digraph emulation {"));
    assert!(run(&["--dot"]).len() > reduced.len());

    assert_eq!(ecaemu(&["hierarchy", "--kmax", "3", "--dot", "--json"]).status.code(), Some(2));
    assert_eq!(ecaemu(&["hierarchy", "--kmax", "0"]).status.code(), Some(2));
    assert_eq!(ecaemu(&["hierarchy", "--kmax", "2", "--workers", "0"]).status.code(), Some(2));
}

#[test]
fn subalgebras_listing() {
    let o = stdout(&ecaemu(&["subalgebras", "148", "--k", "2"]));
    assert!(o.lines().any(|l| l == "184 00 10"), "{o}");
    let lines: Vec<&str> = o.lines().collect();
    let mut sorted = lines.clone();
    sorted.sort_by_key(|l| l.split(' ').next().unwrap().parse::<u8>().unwrap());
    assert_eq!(lines, sorted);
}

#[test]
fn chaos_reports_per_k() {
    let o = stdout(&ecaemu(&["chaos", "30", "--kmax", "4"]));
    assert_eq!(o, "k=2: none\nk=3: none\nk=4: none\nchaos candidate for k <= 4: yes\n");
    let o = stdout(&ecaemu(&["chaos", "90", "--kmax", "2"]));
    assert!(o.contains("chaos candidate for k <= 2: no"));
}

#[test]
fn simulate_matches_library() {
    let o = ecaemu(&["simulate", "110", "--width", "40", "--steps", "20", "--seed", "7"]);
    let d = parse_pbm(&o.stdout).unwrap();
    let u = WordSampler::new(7).next_word(40);
    assert_eq!(d, render_diagram(EcaRule::new(110), &Grid::cyclic(u), 20).unwrap());

    let raw = ecaemu(&["simulate", "110", "--width", "40", "--steps", "20", "--seed", "7", "--binary"]);
    assert!(raw.stdout.starts_with(b"P4\n"));
    assert_eq!(parse_pbm(&raw.stdout).unwrap(), d);

    let single = parse_pbm(&ecaemu(&["simulate", "90", "--width", "9", "--steps", "1", "--single"]).stdout).unwrap();
    assert_eq!(single.rows()[0].to_string(), "000010000");
    assert_eq!(single.rows()[1].to_string(), "000101000");

    let init = stdout(&ecaemu(&["simulate", "0", "--init", "10", "--steps", "0"]));
    assert_eq!(init, "P1\n2 1\n1 0\n");
}

#[test]
fn render_emulation_writes_both_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("fig");
    let o = ecaemu(&["render-emulation", "184", "148", "--k", "2", "--out-prefix", prefix.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let direct = parse_pbm(&fs::read(dir.path().join("fig-direct.pbm")).unwrap()).unwrap();
    let emulated = parse_pbm(&fs::read(dir.path().join("fig-emulated.pbm")).unwrap()).unwrap();
    assert_eq!((direct.width(), direct.height()), (30, 51));
    assert_eq!((emulated.width(), emulated.height()), (60, 51));
    assert_eq!(ecaemu(&["render-emulation", "30", "30", "--k", "2", "--out-prefix", "x"]).status.code(), Some(1));
}

#[test]
fn bench_runs() {
    let o = stdout(&ecaemu(&["bench", "--k", "3", "--rules", "30,110"]));
    assert!(o.contains("agree: true"));
    assert!(o.contains("ratio: "));
}
