mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use graph_coin::text::format_map_document;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graph-coin")).args(args).output().expect("binary runs")
}

fn run_paths(cmd: &str, files: &[PathBuf], extra: &[&str]) -> (i32, String) {
    let mut args: Vec<String> = vec![cmd.to_string()];
    args.extend(files.iter().map(|p| p.display().to_string()));
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = run(&refs);
    let text = format!("{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
    (out.status.code().unwrap_or(-1), text)
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run_paths("validate", &[data("figure-eight-id.map")], &[]).0, 0);
    let (code, text) = run_paths("validate", &[data("disconnected.graph")], &[]);
    assert_eq!(code, 1);
    assert!(text.contains("not connected"), "{text}");
    let (code, text) = run_paths("validate", &[data("bad-rational.map")], &[]);
    assert_eq!(code, 2);
    assert!(text.contains("line 9"), "{text}");
}

#[test]
fn coincidence_listing() {
    let (code, text) = run_paths("coincidences", &[data("cross-f.map"), data("cross-g.map")], &[]);
    assert_eq!(code, 0);
    assert_eq!(text.trim(), "e:sigma@1/2 -> e:rho@1/2 Crossing");

    let (code, text) = run_paths("coincidences", &[data("interval-f.map"), data("interval-g.map")], &[]);
    assert_eq!(code, 0);
    assert_eq!(text.trim(), "v:w -> v:p1 AtVertexLocation");

    let (code, text) = run_paths("coincidences", &[data("figure-eight-id.map"), data("figure-eight-id.map")], &[]);
    assert_eq!(code, 3);
    assert!(text.contains("remove"), "{text}");
}

#[test]
fn distinct_constants_have_empty_listing() {
    let dir = tempfile::tempdir().unwrap();
    let before = std::fs::read_to_string(data("circle-deg0.map")).unwrap();
    let other = before.replace("e:a@1/2", "e:a@1/4");
    let p = dir.path().join("other.map");
    std::fs::write(&p, other).unwrap();
    let (code, text) = run_paths("coincidences", &[data("circle-deg0.map"), p], &[]);
    assert_eq!(code, 0);
    assert!(text.trim().is_empty(), "{text}");
}

#[test]
fn remove_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    let out_f = dir.path().join("f.map");
    let out_g = dir.path().join("g.map");
    let trace = dir.path().join("trace.txt");
    let figs = dir.path().join("figs");
    let inputs = [data("figure-eight-id.map"), data("figure-eight-id.map")];
    let (code, text) = run_paths(
        "remove",
        &inputs,
        &[
            "--out-f",
            out_f.to_str().unwrap(),
            "--out-g",
            out_g.to_str().unwrap(),
            "--trace",
            trace.to_str().unwrap(),
            "--figures",
            figs.to_str().unwrap(),
        ],
    );
    assert_eq!(code, 0, "{text}");
    let n: usize = text
        .trim()
        .strip_prefix("coincidence-free after ")
        .and_then(|s| s.strip_suffix(" steps"))
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| panic!("unexpected summary {text}"));
    assert!(n >= 1);
    assert!(std::fs::read_to_string(&trace).unwrap().starts_with("step 1 "));
    assert!(std::fs::read_dir(&figs).unwrap().count() >= 1);

    let (code, text) = run_paths("certify", &[inputs[0].clone(), inputs[1].clone(), out_f, out_g], &[]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("verdict homotopic"));
}

#[test]
fn circle_obstruction_and_degrees() {
    let (code, text) = run_paths("remove", &[data("circle-deg2.map"), data("circle-deg0.map")], &[]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().last().unwrap(), "circle obstruction: N = 2");
    let (_, text) = run_paths("degree", &[data("circle-deg2.map")], &[]);
    assert_eq!(text.trim(), "2");
    let (_, text) = run_paths("nielsen-circle", &[data("circle-deg0.map"), data("circle-deg2.map")], &[]);
    assert_eq!(text.trim(), "2");
    let (code, _) = run_paths("degree", &[data("figure-eight-id.map")], &[]);
    assert_eq!(code, 1);
}

#[test]
fn interval_codomain_gives_constants() {
    let dir = tempfile::tempdir().unwrap();
    let out_f = dir.path().join("f.map");
    let out_g = dir.path().join("g.map");
    let (code, text) = run_paths(
        "remove",
        &[data("interval-f.map"), data("interval-g.map")],
        &["--out-f", out_f.to_str().unwrap(), "--out-g", out_g.to_str().unwrap()],
    );
    assert_eq!(code, 0, "{text}");
    let f = std::fs::read_to_string(&out_f).unwrap();
    let g = std::fs::read_to_string(&out_g).unwrap();
    assert!(f.contains("track a : (0,e:e1@1/3) (1,e:e1@1/3)"), "{f}");
    assert!(g.contains("track b : (0,e:e1@2/3) (1,e:e1@2/3)"), "{g}");
}

#[test]
fn certify_failures_name_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let tampered = dir.path().join("tampered.map");
    let deg2 = std::fs::read_to_string(data("circle-deg2.map")).unwrap();
    let deg1 = deg2.replace(
        "track a : (0,v:v) (1/4,e:a@1/2) (1/2,v:v) (3/4,e:a@1/2) (1,v:v)",
        "track a : (0,v:v) (1/2,e:a@1/2) (1,v:v)",
    );
    std::fs::write(&tampered, deg1).unwrap();
    let (code, text) = run_paths(
        "certify",
        &[data("circle-deg2.map"), data("circle-deg0.map"), tampered, data("circle-deg0.map")],
        &[],
    );
    assert_eq!(code, 1);
    assert!(text.contains("homotopy check failed (f)"), "{text}");

    let cross = [data("cross-f.map"), data("cross-g.map")];
    let (code, text) = run_paths("certify", &[cross[0].clone(), cross[1].clone(), cross[0].clone(), cross[1].clone()], &[]);
    assert_eq!(code, 1);
    assert!(text.contains("coincidence found"), "{text}");

    let (code, _) = run_paths(
        "certify",
        &[cross[0].clone(), cross[1].clone(), cross[0].clone(), cross[1].clone()],
        &["--resolution", "0"],
    );
    assert_eq!(code, 2);
}

#[test]
fn remove_then_certify_on_random_instances_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..12u64 {
        let (f, g) = common::random_branched_pair(&mut common::rng(seed));
        let fp = dir.path().join("f.map");
        let gp = dir.path().join("g.map");
        std::fs::write(&fp, format_map_document(&f)).unwrap();
        std::fs::write(&gp, format_map_document(&g)).unwrap();
        let outs: Vec<(PathBuf, PathBuf)> = (0..2)
            .map(|k| (dir.path().join(format!("f{k}.map")), dir.path().join(format!("g{k}.map"))))
            .collect();
        let mut traces = Vec::new();
        for (k, (of, og)) in outs.iter().enumerate() {
            let trace = dir.path().join(format!("trace{k}.txt"));
            let (code, text) = run_paths(
                "remove",
                &[fp.clone(), gp.clone()],
                &["--out-f", of.to_str().unwrap(), "--out-g", og.to_str().unwrap(), "--trace", trace.to_str().unwrap()],
            );
            assert_eq!(code, 0, "seed {seed}: {text}");
            traces.push(std::fs::read(&trace).unwrap());
        }
        assert_eq!(traces[0], traces[1], "seed {seed}");
        assert_eq!(std::fs::read(&outs[0].0).unwrap(), std::fs::read(&outs[1].0).unwrap(), "seed {seed}");
        assert_eq!(std::fs::read(&outs[0].1).unwrap(), std::fs::read(&outs[1].1).unwrap(), "seed {seed}");
        let (code, text) = run_paths("certify", &[fp.clone(), gp.clone(), outs[0].0.clone(), outs[0].1.clone()], &[]);
        assert_eq!(code, 0, "seed {seed}: {text}");
    }
}
