use std::io::Write;
use std::process::{Command, Output, Stdio};

fn torfacet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torfacet")).args(args).env_remove("TORFACET_THREADS").output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_torfacet"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn square_both_methods() {
    let o = torfacet(&["betti", "--gen", "mgon:4", "--coeff", "q", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("hochster (Q): (0,0):1, (-1,4):2, (-2,8):1"));
    assert!(text.contains("koszul (Q): (0,0):1, (-1,4):2, (-2,8):1"));
}

#[test]
fn simplex_has_only_the_unit() {
    let o = torfacet(&["betti", "--gen", "simplex:3", "--method", "koszul"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "koszul (Q): (0,0):1\n");
}

#[test]
fn massey_demo() {
    let o = torfacet(&["massey", "demo-p3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("representative: v1v5 u2u3u4u6"));
    assert!(text.contains("trivial: false"));
    let j = json(&torfacet(&["--json", "massey", "demo-p3"]));
    assert_eq!(j["given"]["representative"], "v1v5 u2u3u4u6");
    assert_eq!(j["same_coset"], true);
}

#[test]
fn massey_from_flags() {
    let o = torfacet(&["massey", "--gen", "cut_cube_dual", "--a1", "v1u2", "--a2", "v3u4", "--a3", "v5u6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["trivial"], false);
    let undefined = torfacet(&["massey", "--gen", "cut_cube_dual", "--a1", "v1u2", "--a2", "v1u2", "--a3", "v5u6"]);
    assert_eq!(undefined.status.code(), Some(1));
    let garbage = torfacet(&["massey", "--gen", "cut_cube_dual", "--a1", "w7", "--a2", "v3u4", "--a3", "v5u6"]);
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(torfacet(&["betti"]).status.code(), Some(2));
    assert_eq!(torfacet(&["betti", "--gen", "nope:3"]).status.code(), Some(2));
    assert_eq!(torfacet(&["betti", "--gen", "mgon:4", "--coeff", "fp:4"]).status.code(), Some(2));
    assert_eq!(torfacet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(torfacet(&["cm-test", "--gen", "rp2", "--coeff", "fp:2"]).status.code(), Some(1));
    assert_eq!(torfacet(&["cm-test", "--gen", "rp2", "--coeff", "q"]).status.code(), Some(0));
    let err = torfacet(&["--json", "betti", "--gen", "nope:3"]);
    assert!(json(&err)["error"].as_str().unwrap().contains("unknown generator"));
    assert!(!err.stderr.is_empty());
}

#[test]
fn cm_witness() {
    let j = json(&torfacet(&["cm-test", "--gen", "rp2", "--coeff", "fp:2", "--json"]));
    assert_eq!(j["verdict"], "fail");
    assert_eq!(j["witness"], serde_json::json!({"face": [], "degree": 1}));
}

#[test]
fn lsop() {
    let dir = std::env::temp_dir().join(format!("torfacet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    let bad = dir.join("bad.json");
    std::fs::write(&good, "[[1,0,-1],[0,1,-1]]").unwrap();
    std::fs::write(&bad, "[[1,0,0],[0,1,0]]").unwrap();
    let run = |m: &std::path::Path, c: &str| torfacet(&["lsop-check", "--gen", "boundary_simplex:3", "--matrix", m.to_str().unwrap(), "--coeff", c, "--json"]);
    for c in ["z", "q", "fp:2", "fp:3"] {
        assert_eq!(run(&good, c).status.code(), Some(0), "{c}");
    }
    let o = run(&bad, "z");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["witness"]["facet"], serde_json::json!([1, 3]));
    let wide = dir.join("wide.json");
    std::fs::write(&wide, "[[1,0],[0,1]]").unwrap();
    assert_eq!(run(&wide, "z").status.code(), Some(2));
}

#[test]
fn arrangements_and_duality() {
    let o = torfacet(&["ukhom", "--gen", "points:4", "--route", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("subcomplex: H̃_3 = Q^6, H̃_4 = Q^8, H̃_5 = Q^3"));
    let o = torfacet(&["alexander-check", "--gen", "rp2", "--coeff", "z"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(torfacet(&["ukhom", "--gen", "simplex:3", "--route", "dual"]).status.code(), Some(2));
}

#[test]
fn toral_rank() {
    let j = json(&torfacet(&["trc-check", "--gen", "mgon:6", "--json"]));
    assert_eq!(j["lhs"], 36);
    assert_eq!(j["rhs"], 16);
    assert_eq!(j["holds"], true);
}

#[test]
fn complex_ops_compose() {
    let sub = torfacet(&["complex", "stellar", "--gen", "cross_polytope:3", "--face", "1,3"]);
    assert_eq!(sub.status.code(), Some(0));
    let twice = with_stdin(&["complex", "stellar", "--complex", "-", "--face", "4,5"], &stdout(&sub));
    assert_eq!(twice.status.code(), Some(0));
    let betti = with_stdin(&["betti", "--complex", "-", "--method", "both"], &stdout(&twice));
    assert_eq!(betti.status.code(), Some(0));
    let p3 = torfacet(&["betti", "--gen", "cut_cube_dual", "--method", "koszul"]);
    assert_eq!(stdout(&betti), stdout(&torfacet(&["betti", "--gen", "cut_cube_dual", "--method", "both"])));
    assert!(stdout(&p3).contains("(-5,16):1"));

    let dual = torfacet(&["complex", "dual", "--gen", "mgon:5"]);
    let back = with_stdin(&["complex", "dual", "--complex", "-"], &stdout(&dual));
    assert_eq!(stdout(&back), stdout(&torfacet(&["complex", "gen", "--gen", "mgon:5"])));

    let join = torfacet(&["complex", "join", "--gen", "boundary_simplex:2", "--with-gen", "boundary_simplex:2"]);
    assert_eq!(stdout(&join), stdout(&torfacet(&["complex", "gen", "--gen", "cross_polytope:2"])));
    let link = torfacet(&["complex", "link", "--gen", "mgon:5", "--face", "1"]);
    assert_eq!(stdout(&link).trim(), r#"{"m":5,"facets":[[2],[5]]}"#);
    let star = torfacet(&["complex", "star", "--gen", "mgon:5", "--face", "1"]);
    assert_eq!(stdout(&star).trim(), r#"{"m":5,"facets":[[1,2],[1,5]]}"#);
    let full = torfacet(&["complex", "sub", "--gen", "mgon:5", "--omega", "1,3"]);
    assert_eq!(stdout(&full).trim(), r#"{"m":5,"facets":[[1],[3]]}"#);
    assert_eq!(torfacet(&["complex", "sub", "--gen", "mgon:5", "--omega", "1,9"]).status.code(), Some(2));
}

#[test]
fn suites() {
    let o = torfacet(&["suite", "hochster-vs-koszul", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["failed"], 0);
    assert_eq!(j["fields"], serde_json::json!(["Q", "F_2", "F_3", "Z"]));
    assert_eq!(torfacet(&["suite", "nope"]).status.code(), Some(2));
}

#[test]
fn output_is_independent_of_threads() {
    let cases: &[&[&str]] = &[
        &["betti", "--gen", "cut_cube_dual", "--coeff", "z", "--multigraded", "--json"],
        &["betti", "--gen", "random:8:1/2:5", "--coeff", "fp:3", "--json"],
        &["ukhom", "--gen", "rp2", "--coeff", "z", "--json"],
        &["cm-test", "--gen", "random:7:3/4:11", "--json"],
        &["suite", "alexander", "--json"],
    ];
    for args in cases {
        let base = torfacet(&[args, &["--threads", "1"][..]].concat());
        assert!(base.status.success() || base.status.code() == Some(1));
        for t in ["2", "4", "8"] {
            let other = torfacet(&[args, &["--threads", t][..]].concat());
            assert_eq!(base.stdout, other.stdout, "{args:?} with {t} threads");
            assert_eq!(base.status.code(), other.status.code());
        }
        let env = Command::new(env!("CARGO_BIN_EXE_torfacet")).args(*args).env("TORFACET_THREADS", "3").output().unwrap();
        assert_eq!(base.stdout, env.stdout);
    }
}
