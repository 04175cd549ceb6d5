use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn nsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsd"))
        .args(args)
        .env_remove("NSD_SOLVER_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", s(&path)]);
    assert_eq!(code(&nsd(&full)), 0, "generate {args:?}");
    path
}

fn weight_files(dir: &Path) -> Vec<String> {
    let mut files: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "weights"))
        .map(|p| p.to_str().unwrap().to_string())
        .collect();
    files.sort_by_key(|f| {
        let stem = Path::new(f).file_stem().unwrap().to_str().unwrap().to_string();
        stem.trim_start_matches("part-").parse::<usize>().unwrap()
    });
    files
}

fn verify(graph: &Path, partition: &Path, weights: &[String]) -> Output {
    let mut args = vec!["verify", s(graph), s(partition)];
    args.extend(weights.iter().map(String::as_str));
    nsd(&args)
}

/// Edge lines of an edge-list file, skipping comments and the vertex count.
fn edge_lines(path: &Path) -> Vec<(usize, usize)> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty());
    lines.next();
    lines
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

#[test]
fn generate_complete_and_regular() {
    let tmp = tempfile::tempdir().unwrap();
    let k15 = generate(tmp.path(), "k15.edges", &["complete", "15"]);
    assert_eq!(edge_lines(&k15).len(), 105);

    let r = generate(tmp.path(), "r.edges", &["regular", "40", "14", "--seed", "3"]);
    let edges = edge_lines(&r);
    let mut degree = [0; 40];
    let mut distinct = BTreeSet::new();
    for &(u, v) in &edges {
        assert_ne!(u, v);
        assert!(distinct.insert((u.min(v), u.max(v))));
        degree[u] += 1;
        degree[v] += 1;
    }
    assert!(degree.iter().all(|&d| d == 14));

    // n·d odd has no d-regular graph.
    assert_eq!(code(&nsd(&["generate", "regular", "5", "3", "--seed", "1"])), 2);
}

#[test]
fn decompose_then_verify() {
    let tmp = tempfile::tempdir().unwrap();
    let graph = generate(tmp.path(), "k15.edges", &["complete", "15"]);
    let out = tmp.path().join("out");
    let run = nsd(&["decompose", s(&graph), "--seed", "7", "--out", s(&out)]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));

    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["part_count"], 2);
    assert_eq!(report["all_certified"], true);

    let partition = out.join("partition.txt");
    let weights = weight_files(&out);
    assert_eq!(weights.len(), 2);
    assert_eq!(code(&verify(&graph, &partition, &weights)), 0);

    // Bump one weight out of range.
    let bumped = tmp.path().join("bumped.weights");
    let text = fs::read_to_string(&weights[0]).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let edge = lines[0].split_whitespace().next().unwrap().to_string();
    lines[0] = format!("{edge} 4");
    fs::write(&bumped, lines.join("\n") + "\n").unwrap();
    let bad = vec![bumped.to_str().unwrap().to_string(), weights[1].clone()];
    assert_eq!(code(&verify(&graph, &partition, &bad)), 1);

    // Drop an edge from the partition.
    let short = tmp.path().join("short.txt");
    let text = fs::read_to_string(&partition).unwrap();
    let kept: Vec<&str> = text.lines().skip(1).collect();
    fs::write(&short, kept.join("\n") + "\n").unwrap();
    assert_eq!(code(&verify(&graph, &short, &weights)), 1);
}

#[test]
fn precondition_and_budget_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let k2 = tmp.path().join("k2.edges");
    fs::write(&k2, "2\n0 1\n").unwrap();
    let run = nsd(&["decompose", s(&k2), "--out", s(&tmp.path().join("o"))]);
    assert_eq!(code(&run), 2);
    assert!(String::from_utf8_lossy(&run.stderr).contains("isolated"));

    // The two-part route draws random bits.
    let r = generate(tmp.path(), "r.edges", &["regular", "36", "16", "--seed", "1"]);
    let run = nsd(&["decompose", s(&r), "--strategy", "regular", "--out", s(&tmp.path().join("o2"))]);
    assert_eq!(code(&run), 2);

    let k9 = generate(tmp.path(), "k9.edges", &["complete", "9"]);
    let run = nsd(&["decompose", s(&k9), "--strategy", "chromatic", "--budget", "5", "--out", s(&tmp.path().join("o3"))]);
    assert_eq!(code(&run), 3);

    let run = Command::new(env!("CARGO_BIN_EXE_nsd"))
        .args(["decompose", s(&k9), "--strategy", "chromatic", "--out", s(&tmp.path().join("o4"))])
        .env("NSD_SOLVER_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&run), 3);
}

#[test]
fn paper_faithful_profile_reports_the_bound() {
    let tmp = tempfile::tempdir().unwrap();
    let p = generate(tmp.path(), "p.edges", &["petersen"]);
    let out = tmp.path().join("o");
    let run = nsd(&["decompose", s(&p), "--strategy", "general", "--seed", "1", "--profile", "paper-faithful", "--out", s(&out)]);
    assert_eq!(code(&run), 0);
    assert!(String::from_utf8_lossy(&run.stdout).contains("24"));
}

#[test]
fn general_strategy_on_petersen() {
    let tmp = tempfile::tempdir().unwrap();
    let p = generate(tmp.path(), "p.edges", &["petersen"]);
    let out = tmp.path().join("o");
    assert_eq!(code(&nsd(&["decompose", s(&p), "--strategy", "general", "--seed", "4", "--out", s(&out)])), 0);
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["metadata"]["analytic_bound"], "24");
    assert_eq!(code(&verify(&p, &out.join("partition.txt"), &weight_files(&out))), 0);
}

#[test]
fn certify_table_and_ranges() {
    let run = nsd(&["certify"]);
    assert_eq!(code(&run), 0);
    let text = String::from_utf8_lossy(&run.stdout);
    assert!(text.contains("0.9805"), "{text}");

    let run = nsd(&["certify", "--range", "even", "14..60", "--json"]);
    assert_eq!(code(&run), 0);
    let rows: Value = serde_json::from_slice(&run.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 24);
    assert!(rows.iter().all(|r| r["satisfied"] == true));

    let run = nsd(&["certify", "--range", "odd", "19..41", "--json"]);
    let rows: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["satisfied"] == true));

    // Degrees below the supported range are clamped away.
    let run = nsd(&["certify", "--range", "even", "10..20", "--json"]);
    let rows: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert_eq!(code(&nsd(&["certify", "--range", "even", "20..14"])), 2);
}

/// Connected graphs on `n` vertices up to isomorphism, as edge masks.
fn connected_unlabelled(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if !connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |acc, &(u, v)| acc | 1 << index(p[u], p[v])))
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut reach = vec![false; n];
    reach[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in edges {
            if reach[u] != reach[v] {
                reach[u] = true;
                reach[v] = true;
                changed = true;
            }
        }
    }
    reach.iter().all(|&r| r)
}

#[test]
fn corpus_of_small_connected_graphs() {
    let counts: Vec<usize> = (3..=6).map(|n| connected_unlabelled(n).len()).collect();
    assert_eq!(counts, vec![2, 6, 21, 112]);

    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("graphs");
    fs::create_dir(&dir).unwrap();
    let mut files = 0;
    for n in 3..=6 {
        for (i, edges) in connected_unlabelled(n).into_iter().enumerate() {
            let mut text = format!("# {} edges\n{n}\n", edges.len());
            for (u, v) in edges {
                text.push_str(&format!("{u} {v}\n"));
            }
            fs::write(dir.join(format!("n{n}-{i:03}.edges")), text).unwrap();
            files += 1;
        }
    }
    let summary = tmp.path().join("summary.json");
    let run = nsd(&["corpus", s(&dir), "--seed", "1", "--out", s(&summary)]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let summary: Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(summary["files"], files);
    assert_eq!(summary["certified"], files);
    assert_eq!(summary["failures"], 0);
}

#[test]
fn corpus_of_complete_graphs_keeps_promises() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("k");
    fs::create_dir(&dir).unwrap();
    for d in 2..=20 {
        generate(&dir, &format!("k{:02}.edges", d + 1), &["complete", &(d + 1).to_string()]);
    }
    let run = nsd(&["corpus", s(&dir), "--seed", "2"]);
    assert_eq!(code(&run), 0);
    let summary: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(summary["failures"], 0);
    for entry in summary["results"].as_array().unwrap() {
        let parts = entry["part_count"].as_u64().unwrap();
        assert!(parts <= entry["promised_parts"].as_u64().unwrap(), "{entry}");
        let n = entry["vertices"].as_u64().unwrap();
        if n <= 10 {
            assert_eq!(parts, 1, "{entry}");
        }
    }
}

#[test]
fn empty_corpus() {
    let tmp = tempfile::tempdir().unwrap();
    let run = nsd(&["corpus", s(tmp.path())]);
    assert_eq!(code(&run), 0);
    let summary: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(summary["files"], 0);
    assert!(summary["results"].as_array().unwrap().is_empty());
}

#[test]
fn decompose_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let g = generate(tmp.path(), "r.edges", &["regular", "40", "14", "--seed", "8"]);
    let read = |dir: &Path| -> Vec<Vec<u8>> {
        let mut names: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
        names.sort();
        names.iter().map(|p| fs::read(p).unwrap()).collect()
    };
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for out in [&a, &b] {
        assert_eq!(code(&nsd(&["decompose", s(&g), "--seed", "5", "--out", s(out)])), 0);
    }
    assert_eq!(read(&a), read(&b));
}
