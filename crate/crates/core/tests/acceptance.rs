//! End-to-end acceptance checks. Each test prints one `criterion N` line
//! with PASS or FAIL before asserting.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use nsd_decomp::bounds;
use nsd_decomp::decompose::{
    chromatic_decompose, count_monochromatic_k2, decompose_general, lll_bipartition, regular_decompose,
    regular_decompose_two, EdgePartition, GeneralPipelineParams, PipelineResult, SolveOptions,
};
use nsd_decomp::graph::{
    dsatur_colouring, euler_split, generators, isolated_edges, Graph, ProperColouring,
};
use nsd_decomp::weighting::{solve_exact, verify_nsd, SolveOutcome, DEFAULT_BUDGET};

fn verdict(criterion: u32, ok: bool, detail: &str) {
    println!("criterion {criterion} {}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed");
}

fn main() {
    let criteria: [(u32, fn()); 9] = [
        (1, criterion_1_published_numbers),
        (2, criterion_2_small_graph_oracle),
        (3, criterion_3_two_part_regular),
        (4, criterion_4_bipartition_conditions),
        (5, criterion_5_euler_intervals),
        (6, criterion_6_chromatic_chain),
        (7, criterion_7_regular_dispatcher),
        (8, criterion_8_general_pipeline),
        (9, criterion_9_determinism),
    ];
    let failed: Vec<u32> = criteria
        .into_iter()
        .filter(|(_, check)| std::panic::catch_unwind(check).is_err())
        .map(|(n, _)| n)
        .collect();
    println!("acceptance: {} of 9 criteria pass", 9 - failed.len());
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}

fn rel_close(value: f64, expected: f64, tol: f64) -> bool {
    ((value - expected) / expected).abs() <= tol
}

/// Weighted degrees computed straight from the edge list.
fn sums_of(graph: &Graph, edges: &[usize], weights: &[u32]) -> Vec<u64> {
    let mut sums = vec![0u64; graph.vertex_count()];
    for (i, &e) in edges.iter().enumerate() {
        let (u, v) = graph.endpoints(e);
        sums[u] += u64::from(weights[i]);
        sums[v] += u64::from(weights[i]);
    }
    sums
}

/// Independent re-check of one part: weights in 1..=3 and distinct sums
/// across every edge of the part.
fn part_is_nsd(graph: &Graph, edges: &[usize], weights: &[u32]) -> bool {
    if weights.len() != edges.len() || weights.iter().any(|w| !(1..=3).contains(w)) {
        return false;
    }
    let sums = sums_of(graph, edges, weights);
    edges.iter().all(|&e| {
        let (u, v) = graph.endpoints(e);
        sums[u] != sums[v]
    })
}

fn result_is_sound(graph: &Graph, result: &PipelineResult) -> bool {
    let mut seen = vec![0; graph.edge_count()];
    for part in &result.parts {
        for &e in &part.edges {
            seen[e] += 1;
        }
        if part.edges.is_empty() {
            continue;
        }
        match &part.weighting {
            Some(w) if part_is_nsd(graph, &part.edges, w.weights()) => {}
            _ => return false,
        }
    }
    seen.iter().all(|&c| c == 1) && result.all_certified()
}

fn criterion_1_published_numbers() {
    let start = Instant::now();
    let even14 = bounds::regular_even_lhs(14).unwrap();
    let f16 = bounds::even_margin(16.0);
    let g19 = bounds::odd_margin(19.0);
    let elapsed = start.elapsed();
    let tol = bounds::PUBLISHED_TOLERANCE;
    let ok = rel_close(even14.value, 0.9805, tol)
        && even14.satisfied
        && rel_close(f16, 10.4253, tol)
        && rel_close(g19, 5.0355, tol)
        && bounds::published_value_checks().iter().all(|r| r.satisfied)
        && elapsed < Duration::from_millis(100);
    verdict(
        1,
        ok,
        &format!(
            "even lhs(14) = {:.6}, f(16) = {f16:.6}, g(19) = {g19:.6} in {elapsed:?}",
            even14.value
        ),
    );
}

/// Edges of the labelled graph encoded by `mask` over the pairs of `0..n`.
fn masked_graph(n: usize, pairs: &[(usize, usize)], mask: u32) -> Option<Graph> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut edges = Vec::new();
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            edges.push((u, v));
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    let connected = (0..n).all(|v| find(&mut parent, v) == root);
    connected.then(|| Graph::from_edges(n, edges).unwrap())
}

fn criterion_2_small_graph_oracle() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 3..=7 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let total = 1u32 << pairs.len();
        let (count, bad): (usize, Vec<u32>) = (0..total)
            .into_par_iter()
            .filter_map(|mask| masked_graph(n, &pairs, mask).map(|g| (mask, g)))
            .map(|(mask, g)| {
                let run = solve_exact(&g, 3, DEFAULT_BUDGET).unwrap();
                let ok = matches!(&run.outcome, SolveOutcome::Found(w) if verify_nsd(&g, w).unwrap().passed());
                (1usize, if ok { Vec::new() } else { vec![mask] })
            })
            .reduce(|| (0, Vec::new()), |a, b| (a.0 + b.0, [a.1, b.1].concat()));
        checked += count;
        failures.extend(bad.into_iter().map(|m| (n, m)));
    }
    let k2 = solve_exact(&generators::complete(2), 3, DEFAULT_BUDGET).unwrap().outcome;
    let k3 = solve_exact(&generators::complete(3), 2, DEFAULT_BUDGET).unwrap().outcome;
    let elapsed = start.elapsed();
    let ok = failures.is_empty()
        && matches!(k2, SolveOutcome::Unsat { .. })
        && matches!(k3, SolveOutcome::Unsat { .. })
        && elapsed < Duration::from_secs(600);
    verdict(
        2,
        ok,
        &format!(
            "{checked} connected labelled graphs on 3..=7 vertices, {} failures; K2 k=3 and K3 k=2 UNSAT; {elapsed:.1?}",
            failures.len()
        ),
    );
}

fn criterion_3_instances() -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for d in [14, 16, 18, 20] {
        for n in [2 * d + 2, 4 * d] {
            for seed in 0..5 {
                out.push((n, d, seed));
            }
        }
    }
    out
}

fn criterion_3_two_part_regular() {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (n, d, seed) in criterion_3_instances() {
        let graph = generators::random_regular(n, d, seed).unwrap();
        let start = Instant::now();
        let result = regular_decompose_two(&graph, seed, None).unwrap();
        slowest = slowest.max(start.elapsed());
        let r = d % 2;
        let two_alpha = (d - 2 - r) as u64;
        let sides = lll_bipartition(&graph, seed, None).unwrap().bipartition;
        let mut ok = result.part_count() == 2 && result_is_sound(&graph, &result);
        for (s, part) in result.parts.iter().enumerate() {
            let sums = sums_of(&graph, &part.edges, part.weighting.as_ref().unwrap().weights());
            for v in 0..n {
                let own = usize::from(sides.side(v)) == s;
                ok &= if own { sums[v] > two_alpha } else { sums[v] <= two_alpha };
            }
        }
        if !ok {
            failures.push((n, d, seed));
        }
    }
    let ok = failures.is_empty() && slowest < Duration::from_secs(30);
    verdict(
        3,
        ok,
        &format!("40 runs, failures {failures:?}, slowest run {slowest:.2?}"),
    );
}

fn criterion_4_bipartition_conditions() {
    let mut failures = Vec::new();
    for (n, d, seed) in criterion_3_instances() {
        let graph = generators::random_regular(n, d, seed).unwrap();
        let sides = lll_bipartition(&graph, seed, None).unwrap().bipartition;
        let r = d % 2;
        for v in 0..n {
            let same = graph.neighbours(v).iter().filter(|&&(w, _)| sides.side(w) == sides.side(v)).count();
            let other = graph.degree(v) - same;
            // Own side needs 2 + r neighbours, the other side 2.
            if same < 2 + r || other < 2 {
                failures.push((n, d, seed, v));
            }
        }
    }
    verdict(4, failures.is_empty(), &format!("40 bipartitions, violations {failures:?}"));
}

fn criterion_5_euler_intervals() {
    let mut exceptions = 0;
    let mut vertices = 0;
    for seed in 0..200u64 {
        let a = 1 + (seed as usize * 7) % 50;
        let b = 1 + (seed as usize * 13) % 50;
        let p = 0.05 + (seed % 10) as f64 * 0.09;
        let graph = generators::random_bipartite(a, b, p, seed);
        let split = euler_split(&graph).unwrap();
        for v in 0..graph.vertex_count() {
            let d = graph.degree(v);
            let first = graph.neighbours(v).iter().filter(|&&(_, e)| split.first.contains(e)).count();
            vertices += 1;
            if 2 * first + 1 < d || 2 * first > d + 1 {
                exceptions += 1;
            }
        }
    }
    verdict(5, exceptions == 0, &format!("200 graphs, {vertices} vertices, {exceptions} exceptions"));
}

fn criterion_6_chromatic_chain() {
    let mut instances = vec![(generators::complete(9), ProperColouring::from_vec((0..9).collect()))];
    let mut seed = 0u64;
    while instances.len() < 51 {
        seed += 1;
        let n = 10 + (seed as usize % 31);
        let p = 0.15 + (seed % 8) as f64 * 0.06;
        let g = generators::gnp(n, p, seed);
        if !isolated_edges(&g).is_empty() {
            continue;
        }
        let colouring = dsatur_colouring(&g);
        if colouring.colour_count() <= 9 {
            instances.push((g, colouring));
        }
    }
    let mut problems = Vec::new();
    let mut max_moves_ratio = 0.0f64;
    for (i, (graph, colouring)) in instances.iter().enumerate() {
        let split = chromatic_decompose(graph, colouring, 2).unwrap();
        for p in 0..split.partition.part_count() {
            let part = graph.edge_subgraph(&split.partition.edge_set(p)).0;
            if dsatur_colouring(&part).colour_count() > 3 || !isolated_edges(&part).is_empty() {
                problems.push((i, p));
            }
        }
        let classes = EdgePartition::new(
            (0..graph.edge_count()).map(|e| usize::from(split.partition.part_of(e) == 1)).collect(),
            2,
        )
        .unwrap();
        if count_monochromatic_k2(graph, &classes) != 0 {
            problems.push((i, 99));
        }
        for (&moves, &edges) in split.repair_moves.iter().zip(&split.repair_edges) {
            if moves > graph.edge_count() {
                problems.push((i, 100));
            }
            max_moves_ratio = max_moves_ratio.max(moves as f64 / edges.max(1) as f64);
        }
    }
    verdict(
        6,
        problems.is_empty(),
        &format!(
            "K9 + 50 random graphs, problems {problems:?}, max repair moves / |E| = {max_moves_ratio:.3}"
        ),
    );
}

fn promised(d: usize) -> usize {
    if matches!(d, 10..=13 | 15 | 17) {
        3
    } else {
        2
    }
}

fn criterion_7_regular_dispatcher() {
    let mut instances: Vec<(String, Graph, usize)> = Vec::new();
    for d in 2..=20 {
        instances.push((format!("K{}", d + 1), generators::complete(d + 1), d));
        let n = 2 * d + 2;
        instances.push((format!("R({n},{d})"), generators::random_regular(n, d, 1).unwrap(), d));
    }
    for (n, d, seed) in criterion_3_instances() {
        instances.push((format!("R({n},{d})#{seed}"), generators::random_regular(n, d, seed).unwrap(), d));
    }
    let outcomes: Vec<(String, usize, usize, bool)> = instances
        .par_iter()
        .map(|(name, graph, d)| {
            let result = regular_decompose(graph, 7, SolveOptions::default()).unwrap();
            let ok = result.part_count() <= promised(*d) && result_is_sound(graph, &result);
            (name.clone(), *d, result.part_count(), ok)
        })
        .collect();
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.3).map(|o| (&o.0, o.2)).collect();
    let max_parts: Vec<usize> = (2..=20)
        .map(|d| outcomes.iter().filter(|o| o.1 == d).map(|o| o.2).max().unwrap())
        .collect();
    verdict(
        7,
        failed.is_empty(),
        &format!("{} graphs, max parts for d = 2..20: {max_parts:?}, failures {failed:?}", outcomes.len()),
    );
}

fn mixed_corpus() -> Vec<(String, Graph)> {
    let mut corpus = Vec::new();
    for (i, n) in [5, 12, 20, 33, 60].into_iter().enumerate() {
        corpus.push((format!("tree{n}"), generators::random_tree(n, i as u64)));
    }
    for n in [3, 4, 7, 10, 31] {
        corpus.push((format!("C{n}"), generators::cycle(n)));
    }
    corpus.push(("K8".to_string(), generators::complete(8)));
    corpus.push(("Petersen".to_string(), generators::petersen()));
    let mut seed = 100u64;
    while corpus.len() < 30 {
        seed += 1;
        let n = 8 + (seed as usize * 11) % 53;
        let p = [0.08, 0.15, 0.3, 0.5][seed as usize % 4];
        let g = generators::gnp(n, p, seed);
        if g.edge_count() > 0 && isolated_edges(&g).is_empty() {
            corpus.push((format!("gnp({n},{p})#{seed}"), g));
        }
    }
    corpus
}

fn criterion_8_general_pipeline() {
    let params = GeneralPipelineParams::default();
    assert_eq!((params.t, params.m), (3, 2));
    let corpus = mixed_corpus();
    let outcomes: Vec<(String, usize, bool)> = corpus
        .par_iter()
        .map(|(name, graph)| {
            let result = decompose_general(graph, &params, 11).unwrap();
            let meta_ok = result.metadata["analytic_bound"] == "24"
                && result.metadata["analytic_bound_h"] == "3"
                && result.metadata["analytic_bound_f"] == "21";
            (name.clone(), result.part_count(), meta_ok && result_is_sound(graph, &result))
        })
        .collect();
    let failed: Vec<&String> = outcomes.iter().filter(|o| !o.2).map(|o| &o.0).collect();
    let parts: Vec<usize> = outcomes.iter().map(|o| o.1).collect();
    verdict(
        8,
        failed.is_empty() && outcomes.len() == 30,
        &format!("30 graphs, part counts {parts:?}, analytic bound 24 = 3 + 21, failures {failed:?}"),
    );
}

fn nsd(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_nsd"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn criterion_9_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let mut same = true;

    for (i, family) in [["regular", "40", "14"], ["regular", "36", "20"]].iter().enumerate() {
        let a = root.join(format!("g{i}a.edges"));
        let b = root.join(format!("g{i}b.edges"));
        for path in [&a, &b] {
            assert_eq!(nsd(&["generate", family[0], family[1], family[2], "--seed", "5", "--out", path.to_str().unwrap()]), 0);
        }
        same &= std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap();
        for strategy in ["regular", "general"] {
            let outs: Vec<_> = ["x", "y"].iter().map(|s| root.join(format!("out-{i}-{strategy}-{s}"))).collect();
            for out in &outs {
                let code = nsd(&[
                    "decompose",
                    "--strategy",
                    strategy,
                    "--seed",
                    "9",
                    a.to_str().unwrap(),
                    "--out",
                    out.to_str().unwrap(),
                ]);
                assert_eq!(code, 0);
            }
            same &= dir_bytes(&outs[0]) == dir_bytes(&outs[1]);
        }
    }

    let graph = generators::random_regular(40, 18, 2).unwrap();
    let x = regular_decompose_two(&graph, 3, None).unwrap();
    let y = regular_decompose_two(&graph, 3, None).unwrap();
    same &= x.partition == y.partition
        && x.parts.iter().zip(&y.parts).all(|(p, q)| p.weighting == q.weighting)
        && x.metadata == y.metadata;
    verdict(9, same, "generate + decompose (regular, general) artifacts byte-identical across reruns");
}
