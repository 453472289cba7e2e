//! One check per acceptance criterion, each printing a single
//! `criterion N: PASS` or `criterion N: FAIL` line. Runs without the libtest
//! harness so the lines are never captured.

use edgecone::bigraph::SetKind;
use edgecone::deformation::CrosscutContext;
use edgecone::lattice;
use edgecone::linalg::{self, Int, IntVec};
use edgecone::oracle::{self, Side};
use edgecone::{
    build_edge_cone, degree_search, dual_edge_cone, nonrigidity_certificate, rigidity_verdict, t1_dim,
    BipartiteGraph, Cone, MVector, QuotientContext, Verdict, VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

const SAMPLE_SIZE: usize = 200;
const SEED: u64 = 0x5eed_ed6e;
const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const SAMPLE_BUDGET: Duration = Duration::from_secs(300);
const COMPLETE_BUDGET: Duration = Duration::from_secs(600);
const FLOAT_TOL: f64 = 1e-9;
const HILBERT_BOUND: i64 = 3;

fn report(n: usize, ok: bool, detail: String) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed");
}

fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> BipartiteGraph {
    let (m, n) = (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi));
    let p: f64 = rng.gen_range(0.35..0.95);
    let edges: Vec<(usize, usize)> =
        (1..=m).flat_map(|i| (m + 1..=m + n).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    BipartiteGraph::new(m, n, &edges).expect("valid edges")
}

/// Connected graphs with `2 <= m, n <= 5`.
fn sample() -> Vec<BipartiteGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    while out.len() < SAMPLE_SIZE {
        let g = random_graph(&mut rng, 2, 5);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn rays_full(c: &Cone) -> BTreeSet<Vec<i64>> {
    (0..c.rays().len()).map(|i| linalg::to_i64(&c.ray_full(i)).unwrap()).collect()
}

fn small_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
    for i in 0..k {
        for j in i + 1..k {
            out.push(vec![i, j]);
            for l in j + 1..k {
                out.push(vec![i, j, l]);
            }
        }
    }
    out
}

fn criterion_01_small_graph_golden() {
    let t = Instant::now();
    let g = BipartiteGraph::new(2, 2, &[(1, 4), (2, 3), (2, 4)]).unwrap();
    let e = build_edge_cone(&g).unwrap();
    let dual = rays_full(&e.dual_cone);
    let want_dual: BTreeSet<Vec<i64>> = [vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 1]].into();
    let primal: Vec<Vec<i64>> = e.rays_full_i64();
    let want_primal = vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, -1, 0]];
    let srcs: Vec<String> = e.fis.iter().map(|f| f.to_string()).collect();
    let ok = dual == want_dual && primal == want_primal && srcs == ["{2}", "{4}", "{1}⊔{3}"];
    let el = t.elapsed();
    report(1, ok && el < GOLDEN_BUDGET, format!("rays {primal:?}, sources {srcs:?}, {el:?}"));
}

fn criterion_02_bijection_and_faces() {
    let t = Instant::now();
    let mut mismatches = Vec::new();
    let mut subsets = 0usize;
    for g in sample() {
        let e = build_edge_cone(&g).unwrap();
        let graph_rays: BTreeSet<Vec<i64>> =
            e.fis.iter().map(|f| linalg::to_i64(&f.ray(&g).coords).unwrap()).collect();
        let oracle_rays = rays_full(&oracle::dualize(&e.dual_cone).unwrap());
        if graph_rays != oracle_rays || graph_rays.len() != e.fis.len() {
            mismatches.push(format!("rays of {:?}", g.edges()));
        }
        for s in small_subsets(e.ray_count()) {
            subsets += 1;
            let f = e.primal_cone.minimal_face_containing(&s);
            let oracle_says = (f.dim == s.len() && f.ray_indices == s).then_some(f.dim);
            if e.spans_face(&s) != oracle_says {
                mismatches.push(format!("{s:?} on {:?}", g.edges()));
            }
        }
    }
    let el = t.elapsed();
    let ok = mismatches.is_empty() && el < SAMPLE_BUDGET;
    report(2, ok, format!("{SAMPLE_SIZE} graphs, {subsets} subsets, {} mismatches {:?}, {el:?}", mismatches.len(), mismatches.first()));
}

fn criterion_03_smooth_in_codimension_two() {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for g in sample() {
        let e = build_edge_cone(&g).unwrap();
        for f in e.primal_cone.faces_of_dim(2) {
            checked += 1;
            let rays: Vec<_> = f.ray_indices.iter().map(|&i| e.ray(i)).collect();
            if !lattice::is_smooth_ray_set(&rays, e.ctx()).unwrap() {
                failures.push((g.edges().to_vec(), f.ray_indices));
            }
        }
    }
    report(3, failures.is_empty(), format!("{checked} two-faces, {} singular", failures.len()));
}

fn criterion_04_non_simplicial_three_faces() {
    let mut faces = 0usize;
    let mut problems = Vec::new();
    let mut tags = BTreeSet::new();
    for g in sample() {
        let e = build_edge_cone(&g).unwrap();
        let cx = CrosscutContext::new(&e.primal_cone).unwrap();
        for f in e.primal_cone.faces_of_dim(3).into_iter().filter(|f| !f.is_simplicial()) {
            if f.ray_indices.len() != 4 {
                problems.push(format!("{} rays on {:?}", f.ray_indices.len(), g.edges()));
            }
        }
        for f in e.nonsimplicial_three_faces().unwrap() {
            faces += 1;
            let Some(tag) = f.case_tag else {
                problems.push(format!("untagged {:?} on {:?}", f.four_rays, g.edges()));
                continue;
            };
            tags.insert(tag.to_string());
            if !e.verify_construction(&f) {
                problems.push(format!("{tag} construction on {:?}", g.edges()));
            }
            match nonrigidity_certificate(&e, &f) {
                Ok(c) => {
                    let r = MVector::from_i64(&c.degree, e.ctx()).unwrap();
                    let q = cx.crosscut(&r).unwrap();
                    let verts: Vec<usize> = q.vertices.iter().map(|v| v.ray).collect();
                    let t1 = cx.t1(&r).unwrap().t1_dim;
                    if verts != f.four_rays || t1 < 1 || q.vertices.iter().any(|v| !v.lattice) {
                        problems.push(format!("certificate {:?} on {:?}", c.degree, g.edges()));
                    }
                }
                Err(err) => problems.push(format!("{err} on {:?}", g.edges())),
            }
        }
    }
    report(4, problems.is_empty(), format!("{faces} faces, tags {tags:?}, problems {problems:?}"));
}

fn plain_cone(rays: &[[i64; 4]]) -> Cone {
    let gens: Vec<IntVec> = rays.iter().map(|r| linalg::int_vec(r)).collect();
    Cone::from_generators(QuotientContext::plain(4), Side::N, &gens).unwrap()
}

/// Nullity by dense floating-point elimination with partial pivoting.
fn float_nullity(mut a: Vec<Vec<f64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())) else { break };
        if a[p][c].abs() < FLOAT_TOL {
            continue;
        }
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank {
                let f = a[i][c] / a[rank][c];
                for k in 0..cols {
                    a[i][k] -= f * a[rank][k];
                }
            }
        }
        rank += 1;
    }
    cols - rank
}

fn criterion_05_deformation_goldens() {
    let mut notes = Vec::new();
    let mut ok = true;
    let timed = |f: &dyn Fn() -> bool| {
        let t = Instant::now();
        let r = f();
        r && t.elapsed() < GOLDEN_BUDGET
    };
    let pyramid = plain_cone(&[[0, 1, 0, 1], [1, 0, 0, 1], [-1, -1, 0, 1], [0, 0, 1, 1], [0, 0, -1, 1]]);
    for r in [[1, 1, 1, 1], [0, 1, 0, 1]] {
        let pass = timed(&|| {
            let t = t1_dim(&pyramid, &MVector::from_i64(&r, pyramid.ctx()).unwrap()).unwrap();
            t.v_dim == 1 && t.t1_dim == 0
        });
        notes.push(format!("pyramid {r:?} {pass}"));
        ok &= pass;
    }
    let sigma_prime = plain_cone(&[[1, 0, 0, 1], [1, 1, 1, -1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]);
    let pass = timed(&|| {
        t1_dim(&sigma_prime, &MVector::from_i64(&[1, 0, 0, 0], sigma_prime.ctx()).unwrap()).unwrap().t1_dim >= 1
    });
    notes.push(format!("sigma' {pass}"));
    ok &= pass;

    let pass = timed(&|| {
        let e = build_edge_cone(&BipartiteGraph::complete(2, 2)).unwrap();
        let r = MVector::from_i64(&[1, 1, 1, 1], e.ctx()).unwrap();
        let exact = t1_dim(&e.primal_cone, &r).unwrap().t1_dim;
        // dense kernel of the square's single cycle equation
        let rays = e.rays_full_i64();
        let mut order = vec![0usize];
        while order.len() < 4 {
            let cur = *order.last().unwrap();
            order.push((0..4).find(|&j| !order.contains(&j) && e.spans_face(&[cur, j]).is_some()).unwrap());
        }
        let d: Vec<Vec<f64>> = (0..4)
            .map(|t| (0..4).map(|k| (rays[order[(t + 1) % 4]][k] - rays[order[t]][k]) as f64).collect())
            .collect();
        let rows: Vec<Vec<f64>> = (0..4).map(|k| d.iter().map(|v| v[k]).collect()).collect();
        let dense = float_nullity(rows, 4) - 1;
        exact == 1 && dense == 1
    });
    notes.push(format!("K22 {pass}"));
    ok &= pass;
    report(5, ok, notes.join(", "));
}

fn criterion_06_complete_bipartite() {
    let t = Instant::now();
    let mut wrong = Vec::new();
    for m in 2..=6 {
        for n in m..=6 {
            let e = build_edge_cone(&BipartiteGraph::complete(m, n)).unwrap();
            let v = rigidity_verdict(&e, 2).unwrap();
            let hits = degree_search(&e, 2).unwrap();
            let good = if (m, n) == (2, 2) {
                v.verdict == Verdict::NotRigid && hits.iter().any(|h| h.degree == [1, 1, 1, 1])
            } else {
                v.verdict == Verdict::Rigid && hits.is_empty()
            };
            if !good {
                wrong.push(format!("K_{m},{n}: {:?}, {} hits", v.verdict, hits.len()));
            }
        }
    }
    let el = t.elapsed();
    report(6, wrong.is_empty() && el < COMPLETE_BUDGET, format!("15 graphs, wrong {wrong:?}, {el:?}"));
}

fn removal_graph(m: usize, n: usize, c1: usize, c2: usize) -> BipartiteGraph {
    BipartiteGraph::complete_minus(m, n, VertexSet::range(1, c1), VertexSet::range(m + 1, m + c2)).unwrap()
}

fn single_two_sided(g: &BipartiteGraph) -> bool {
    g.is_connected()
        && g.enumerate_first_independent_sets().unwrap().iter().filter(|f| f.base.kind == SetKind::TwoSided).count()
            == 1
}

fn criterion_07_one_two_sided_family() {
    let t = Instant::now();
    let mut cases = 0;
    let mut wrong = Vec::new();
    for m in 3..=6 {
        for n in 3..=6 {
            for c1 in 1..m {
                for c2 in 1..n {
                    let g = removal_graph(m, n, c1, c2);
                    if !single_two_sided(&g) {
                        continue;
                    }
                    cases += 1;
                    let e = build_edge_cone(&g).unwrap();
                    let v = rigidity_verdict(&e, 2).unwrap();
                    let expect_not_rigid = (c1 == 1 && c2 == n - 2) || (c1 == m - 2 && c2 == 1);
                    let good = if expect_not_rigid {
                        v.verdict == Verdict::NotRigid
                            && v.certificate.as_ref().is_some_and(|c| {
                                let r = MVector::from_i64(c, e.ctx()).unwrap();
                                t1_dim(&e.primal_cone, &r).unwrap().t1_dim >= 1
                            })
                    } else {
                        v.verdict == Verdict::Rigid && degree_search(&e, 2).unwrap().is_empty()
                    };
                    if !good {
                        wrong.push(format!("m={m} n={n} |C1|={c1} |C2|={c2}: {:?} ({})", v.verdict, v.reason));
                    }
                }
            }
        }
    }
    // four left vertices, five right; vertex 1 loses its edges to 5 and 6
    let g = BipartiteGraph::complete_minus(4, 5, VertexSet::single(1), [5, 6].into_iter().collect()).unwrap();
    let e = build_edge_cone(&g).unwrap();
    let v = rigidity_verdict(&e, 2).unwrap();
    let r = MVector::from_i64(&[2, 0, 0, 0, 0, -1, 1, 1, 1], e.ctx()).unwrap();
    let t1 = t1_dim(&e.primal_cone, &r).unwrap().t1_dim;
    if v.verdict != Verdict::Rigid || t1 != 0 {
        wrong.push(format!("K_4,5 minus star: {:?}, t1 {t1}", v.verdict));
    }
    report(7, wrong.is_empty(), format!("{cases} family members, wrong {wrong:?}, {:?}", t.elapsed()));
}

fn criterion_08_hilbert_basis() {
    let t = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for g in sample().into_iter().filter(|g| g.m() + g.n() <= 8) {
        let d = dual_edge_cone(&g).unwrap();
        let gens: Vec<MVector> = (0..d.rays().len()).map(|i| d.ray_m(i)).collect();
        checked += 1;
        if !oracle::hilbert_basis_check(&gens, HILBERT_BOUND).unwrap() {
            failures.push(g.edges().to_vec());
        }
    }
    report(8, failures.is_empty(), format!("{checked} cones at bound {HILBERT_BOUND}, failures {failures:?}, {:?}", t.elapsed()));
}

fn criterion_09_dimension_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut checked = 0;
    let mut failures = Vec::new();
    while checked < SAMPLE_SIZE {
        let g = random_graph(&mut rng, 1, 5);
        if g.edges().is_empty() {
            continue;
        }
        checked += 1;
        let k = g.full_subgraph().component_count();
        let d = dual_edge_cone(&g).unwrap();
        let rank = linalg::rank(
            &g.edges()
                .iter()
                .map(|&(i, j)| {
                    let mut v = vec![Int::from(0); g.m() + g.n()];
                    v[i - 1] = Int::from(1);
                    v[j - 1] = Int::from(1);
                    v
                })
                .collect::<Vec<_>>(),
        );
        if d.dim() != g.m() + g.n() - k || rank != d.dim() || (k == 1 && d.dim() != g.m() + g.n() - 1) {
            failures.push((g.edges().to_vec(), k, d.dim()));
        }
    }
    report(9, failures.is_empty(), format!("{checked} graphs, failures {failures:?}"));
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

fn criterion_10_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_edgecone");
    let dir = tempfile::tempdir().unwrap();
    let graphs = [
        "square_minus_edge.json",
        "k22.txt",
        "k23.json",
        "k33.json",
        "path.txt",
        "shared_pair.json",
        "two_sided_pair.json",
        "crossing.json",
        "k44_minus_star.json",
    ];
    let mut runs: Vec<Vec<String>> = Vec::new();
    for g in graphs {
        let p = data(g).display().to_string();
        runs.push(vec!["info".into(), p.clone()]);
        runs.push(vec!["faces".into(), p.clone(), "--dim".into(), "2".into()]);
        runs.push(vec!["faces".into(), p.clone(), "--dim".into(), "3".into()]);
        runs.push(vec!["pairs".into(), p.clone()]);
        runs.push(vec!["rigidity".into(), p.clone(), "--search-bound".into(), "1".into()]);
        runs.push(vec!["oracle-check".into(), p.clone()]);
        runs.push(vec!["export-cone".into(), p.clone()]);
    }
    for (input, deg) in [
        ("k22.txt", "1,1,1,1"),
        ("square_minus_edge.json", "1,0,0,1"),
        ("double_pyramid.cone.json", "0,1,0,1"),
        ("sigma_prime.cone.json", "1,0,0,0"),
    ] {
        let p = data(input).display().to_string();
        runs.push(vec!["t1".into(), p.clone(), "--degree".into(), deg.into()]);
        runs.push(vec!["crosscut".into(), p, "--degree".into(), deg.into()]);
    }
    let mut differing = Vec::new();
    for (k, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for round in 0..2 {
            let dot = dir.path().join(format!("{k}-{round}.dot"));
            let mut cmd = Command::new(bin);
            cmd.arg("--format").arg("json").args(args);
            if args[0] == "crosscut" {
                cmd.arg("--dot").arg(&dot);
            }
            let out = cmd.output().unwrap();
            let dot_text = std::fs::read(&dot).unwrap_or_default();
            outputs.push((out.status.code(), out.stdout, dot_text));
        }
        if outputs[0] != outputs[1] || outputs[0].0 != Some(0) {
            differing.push(args.join(" "));
        }
    }
    report(10, differing.is_empty(), format!("{} invocations twice, differing or failing {differing:?}", runs.len()));
}

fn main() {
    let checks: [(usize, fn()); 10] = [
        (1, criterion_01_small_graph_golden),
        (2, criterion_02_bijection_and_faces),
        (3, criterion_03_smooth_in_codimension_two),
        (4, criterion_04_non_simplicial_three_faces),
        (5, criterion_05_deformation_goldens),
        (6, criterion_06_complete_bipartite),
        (7, criterion_07_one_two_sided_family),
        (8, criterion_08_hilbert_basis),
        (9, criterion_09_dimension_laws),
        (10, criterion_10_cli_determinism),
    ];
    let mut failed = Vec::new();
    for (n, check) in checks {
        if std::panic::catch_unwind(check).is_err() {
            failed.push(n);
        }
    }
    println!("acceptance: {} of {} criteria pass", checks.len() - failed.len(), checks.len());
    if !failed.is_empty() {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
