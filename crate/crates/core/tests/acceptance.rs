//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any
//! criterion fails. Lines starting with INFO are supplementary measurements and do not
//! count towards the verdict.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use dibs_core::binomial::{binom_tail, ell_of};
use dibs_core::cert::verify_bipartite_cert;
use dibs_core::coloring::turan_independent_set;
use dibs_core::degeneracy::DegeneracyOrder;
use dibs_core::dense::{best_c4_edge, c4_through_edge, extract_dense_c4, extract_dense_pair, PairSearch};
use dibs_core::generators::{
    alon_degree, alon_graph, alon_split, blob_of, blowup, gnp_density, gnp_triangle_removed, named, sparse_regular_construction,
};
use dibs_core::reduction::{reduce_extract_with, ReduceOptions, Step};
use dibs_core::sparse::{extract_sparse_with, find_good_xyz, Sampler, SparseParams};
use dibs_core::spectral::{alpha_bounds, best_color_pair, mixing_check, spectral_gap};
use dibs_core::triangles::list_triangles;
use dibs_core::{BipartiteCert, Graph};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn info(name: &str, detail: impl std::fmt::Display) {
    println!("INFO {name}: {detail}");
}

const SPARSE_N: usize = 10_000;
const SPARSE_C: f64 = 0.04;
const SPARSE_SEEDS: [u64; 3] = [1, 2, 3];

fn dense_pair() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    for t in [20usize, 50, 100] {
        let g = blowup(&named::cycle(5), &[t; 5]).unwrap();
        let start = Instant::now();
        let res = extract_dense_pair(&g, 2 * t, PairSearch::Exhaustive, 0);
        let secs = start.elapsed();
        let need = (4 * t).div_ceil(10);
        match res {
            Ok(c) => {
                let rep = verify_bipartite_cert(&g, &c).unwrap();
                let good = rep.passed && rep.achieved_min_degree >= need && c.claimed_min_degree >= need
                    && secs < Duration::from_secs(30);
                ok &= good;
                lines.push(format!("t={t} min deg {} >= {need} in {:.2}s", rep.achieved_min_degree, secs.as_secs_f64()));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("t={t} error {e}"));
            }
        }
    }
    verdict(ok, lines.join("; "))
}

fn dense_c4() -> Verdict {
    let t = 10usize;
    let g = blowup(&named::cycle(5), &[t; 5]).unwrap();
    let ((u, v), q) = best_c4_edge(&g).unwrap();
    let closed = Ratio::new(((t - 1) * (3 * t - 1)) as i128, (4 * t - 2) as i128);
    let brute = brute_c4_through(&g, u, v);
    let lib = c4_through_edge(&g, u, v).unwrap();
    let (n, d) = (g.n() as i128, g.min_degree() as i128);
    let q_ok = q * Ratio::from(4 * n) >= Ratio::from(d * d);
    let cert = extract_dense_c4(&g);
    let (cert_ok, md) = match &cert {
        Ok(c) => {
            let rep = verify_bipartite_cert(&g, c).unwrap();
            (rep.passed && rep.achieved_min_degree >= 7 && c.claimed_min_degree >= 7, rep.achieved_min_degree)
        }
        Err(_) => (false, 0),
    };
    verdict(
        q == closed && brute == lib && brute == (t - 1) * (3 * t - 1) && q_ok && cert_ok,
        format!("q = {q} (closed form {closed}), c(u,v) = {lib} (brute {brute}), certificate min deg {md} >= 7"),
    )
}

fn tail_numeric() -> Verdict {
    let start = Instant::now();
    let tol = 1e-9;
    let mut ok = true;
    let mut lines = Vec::new();
    for d in [100u64, 1_000, 10_000, 100_000] {
        let ell = ell_of(d).unwrap() as u64;
        let p = 1.0 / d as f64;
        let lhs = (1.0 - p) * binom_tail(d, p, ell);
        let part_i = lhs >= p * (1.0 - tol);
        let mut worst: f64 = 0.0;
        let mut part_ii = true;
        for m in [d, 2 * d, 10 * d] {
            let a = binom_tail(m - 1, p, ell - 1);
            let b = (ell + 1) as f64 * binom_tail(m, p, ell);
            part_ii &= a <= b * (1.0 + tol);
            worst = worst.max(a / binom_tail(m, p, ell));
        }
        ok &= part_i && part_ii;
        lines.push(format!("d={d} l={ell} (1-p)tail/p={:.3} max ratio {:.3} <= {}", lhs / p, worst, ell + 1));
    }
    let secs = start.elapsed();
    ok &= secs < Duration::from_secs(5);
    verdict(ok, format!("{} in {:.3}s", lines.join("; "), secs.as_secs_f64()))
}

/// Monte Carlo estimate of the claim objective and a find_good_xyz run, on host `g`
/// reduced to its vertex-minimal min-degree-`d` subgraph.
fn claim_monte_carlo(g: &Graph, d: usize, seed: u64, trials: u64) -> Result<(f64, f64, bool), String> {
    let params = SparseParams::new(d).map_err(|e| e.to_string())?;
    let keep = dibs_core::minimal_min_degree_subgraph(g, d).map_err(|e| e.to_string())?;
    let (host, _) = g.induced(&keep);
    let order = DegeneracyOrder::compute(&host);
    let sampler = Sampler::new(&host, &order, params);
    let ell = params.ell();
    let vals: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| sampler.sample(dibs_core::rng::substream_seed(seed, i)).objective(ell))
        .collect();
    let mean = vals.iter().sum::<f64>() / trials as f64;
    let var = vals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let se = (var / trials as f64).sqrt();
    let found = find_good_xyz(&host, &order, &params, seed).is_ok();
    Ok((mean, se, found))
}

/// One-sided 99% normal quantile.
const Z99: f64 = 2.326;

fn sparse_instance(seed: u64) -> Graph {
    sparse_regular_construction(SPARSE_N, SPARSE_C, seed).unwrap()
}

fn claim_mc() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for seed in SPARSE_SEEDS {
        let g = sparse_instance(seed);
        let d = g.min_degree();
        match claim_monte_carlo(&g, d, seed, 10_000) {
            Ok((mean, se, found)) => {
                let good = mean - Z99 * se > 0.0 && found;
                ok &= good;
                lines.push(format!("seed {seed}: mean {mean:.3} se {se:.3} found {found}"));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("seed {seed}: n'={} degrees {}..{}: {e}", g.n(), d, g.max_degree()));
            }
        }
    }
    for (label, g, d) in supplementary_sparse() {
        match claim_monte_carlo(&g, d, 11, 10_000) {
            Ok((mean, se, found)) => {
                info("claim monte carlo", format!("{label} d={d}: mean {mean:.3} se {se:.3} lower99 {:.3} found {found}", mean - Z99 * se))
            }
            Err(e) => info("claim monte carlo", format!("{label}: {e}")),
        }
    }
    verdict(ok, lines.join("; "))
}

fn supplementary_sparse() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("blowup(C5,20)", blowup(&named::cycle(5), &[20; 5]).unwrap(), 40),
        ("blowup(alon3,2)", blowup(&alon_graph(3).unwrap(), &[2; 512]).unwrap(), 24),
    ]
}

/// Sparse pipeline end to end with the literal claim checks on the accepted sample.
fn sparse_run(g: &Graph, d: usize, seed: u64) -> Result<String, String> {
    let params = SparseParams::new(d).map_err(|e| e.to_string())?;
    let out = extract_sparse_with(g, &params, seed).map_err(|e| e.to_string())?;
    let ell = params.ell();
    let (h, s) = (&out.host, &out.sample);
    let xs: HashSet<usize> = s.x.iter().copied().collect();
    let ys: HashSet<usize> = s.y.iter().copied().collect();
    let i = s.y.iter().all(|&y| h.neighbors(y).iter().filter(|w| xs.contains(w)).count() >= ell);
    let ii = 7 * s.z.len() <= ell * s.y.len();
    let iii = s.x.len() < 3 * s.y.len();
    let e_y = h.edges().filter(|(a, b)| ys.contains(a) && ys.contains(b)).count();
    let iv = e_y < 3 * s.y.len();
    let disjoint = !xs.is_empty() && !ys.is_empty() && xs.is_disjoint(&ys);
    let z_def = s.z.iter().all(|&(x, y)| {
        xs.contains(&x) && ys.contains(&y) && h.has_edge(x, y)
            && out.order.right_neighbors(h, x).filter(|w| xs.contains(w)).count() >= 4
    });
    let cert = &out.cert;
    let rep = verify_bipartite_cert(g, cert).unwrap();
    let sides_independent = independent(g, &cert.side_a) && independent(g, &cert.side_b);
    let need = (4 * ell).div_ceil(343).max(1);
    if !(i && ii && iii && iv && disjoint && z_def && rep.passed && sides_independent && rep.achieved_min_degree >= need) {
        return Err(format!("checks i={i} ii={ii} iii={iii} iv={iv} disjoint={disjoint} z={z_def} verified={}", rep.passed));
    }
    Ok(format!("l={ell} |X|={} |Y|={} e(Y)={e_y} |Z|={} min deg {} >= {need}", s.x.len(), s.y.len(), s.z.len(), rep.achieved_min_degree))
}

fn independent(g: &Graph, side: &[usize]) -> bool {
    let s: HashSet<usize> = side.iter().copied().collect();
    side.iter().all(|&v| g.neighbors(v).iter().all(|w| !s.contains(w)))
}

fn sparse_e2e() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for seed in SPARSE_SEEDS {
        let g = sparse_instance(seed);
        let d = g.min_degree();
        match sparse_run(&g, d, seed) {
            Ok(s) => lines.push(format!("seed {seed}: {s}")),
            Err(e) => {
                ok = false;
                lines.push(format!("seed {seed} (d={d}): {e}"));
            }
        }
    }
    for (label, g, d) in supplementary_sparse() {
        for seed in 0..3 {
            match sparse_run(&g, d, seed) {
                Ok(s) => info("sparse end-to-end", format!("{label} d={d} seed {seed}: {s}")),
                Err(e) => info("sparse end-to-end", format!("{label} d={d} seed {seed}: FAILED {e}")),
            }
        }
    }
    verdict(ok, lines.join("; "))
}

fn reduction() -> Verdict {
    let g = named::complete_multipartite(&[60, 60, 60]);
    let results: Vec<(u64, Result<String, String>)> = (0..5u64)
        .into_par_iter()
        .map(|seed| {
            let start = Instant::now();
            let out = reduce_extract_with(&g, 4, 60, seed, &ReduceOptions::default()).map_err(|e| e.to_string());
            let secs = start.elapsed();
            let r = out.and_then(|o| {
                for level in &o.levels {
                    if let Step::Sample { w, .. } = &level.step {
                        let (wg, _) = g.induced(w);
                        if !brute_triangles(&wg).is_empty() {
                            return Err("W has a triangle".into());
                        }
                    }
                }
                let rep = verify_bipartite_cert(&g, &o.cert).unwrap();
                if !rep.passed || secs >= Duration::from_secs(60) {
                    return Err(format!("verified {} in {:.1}s", rep.passed, secs.as_secs_f64()));
                }
                Ok(format!("{} min deg {}", o.cert.trace.notes["path"], rep.achieved_min_degree))
            });
            (seed, r)
        })
        .collect();
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let lines: Vec<String> = results
        .iter()
        .map(|(s, r)| match r {
            Ok(m) => format!("seed {s}: {m}"),
            Err(e) => format!("seed {s}: {e}"),
        })
        .collect();
    verdict(ok, format!("{}/5 seeds; {}", results.iter().filter(|(_, r)| r.is_ok()).count(), lines.join("; ")))
}

fn generator_contract() -> Verdict {
    let ns = [100usize, 300, 1000, 3000, 10_000];
    let cs = [0.01, 0.02, 0.03, 0.04, 0.049];
    let combos: Vec<(usize, f64, u64)> =
        ns.iter().flat_map(|&n| cs.iter().flat_map(move |&c| (0..4u64).map(move |s| (n, c, s)))).collect();
    let tf = combos
        .par_iter()
        .filter(|&&(n, c, s)| list_triangles(&gnp_triangle_removed(n, c, s).unwrap(), None).is_empty())
        .count();
    let n = 10_000;
    let p = gnp_density(n, 0.04);
    let stats: Vec<(bool, bool, usize, usize)> = (0..5u64)
        .into_par_iter()
        .map(|s| {
            let h = gnp_triangle_removed(n, 0.04, s).unwrap();
            let pairs = (n * (n - 1) / 2) as f64;
            (h.m() as f64 >= 0.9 * p * pairs, h.max_degree() as f64 <= 1.01 * n as f64 * p, h.m(), h.max_degree())
        })
        .collect();
    let edges_ok = stats.iter().filter(|s| s.0).count();
    let delta_ok = stats.iter().filter(|s| s.1).count();
    let ok = tf == combos.len() && edges_ok >= 4 && delta_ok >= 4;
    let ms: Vec<String> = stats.iter().map(|s| s.2.to_string()).collect();
    let ds: Vec<String> = stats.iter().map(|s| s.3.to_string()).collect();
    verdict(
        ok,
        format!(
            "triangle-free {tf}/{}; e(H) >= {:.0} on {edges_ok}/5 (e = {}); max degree <= {:.2} on {delta_ok}/5 (max = {})",
            combos.len(),
            0.9 * p * (n * (n - 1) / 2) as f64,
            ms.join(","),
            1.01 * n as f64 * p,
            ds.join(",")
        ),
    )
}

fn alon() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for k in [2u32, 3] {
        let g = alon_graph(k).unwrap();
        let n = g.n();
        let d = g.regular_degree();
        let formula = (1usize << (2 * k - 2)) - (1usize << (k - 1));
        let tri = brute_triangles_sparse(&g);
        let report = spectral_gap(&g);
        let mix = mixing_check(&g, &report, 1000, k as u64);
        let lambda = report.lambda.unwrap_or(f64::NAN);
        let bound = 2.0 * (n as f64 * lambda / formula as f64 + 1.0);
        let greedy = turan_independent_set(&g).len();
        let (lo, hi) = alpha_bounds(&g, Some(&report));
        let good = n == 1 << (3 * k) && d == Some(formula) && alon_degree(k) == formula && tri == 0 && mix.passed
            && mix.samples.len() == 1000 && bound >= greedy as f64 && lo <= hi;
        ok &= good;
        lines.push(format!(
            "k={k}: n={n} d={d:?} (formula {formula}) triangles {tri} lambda {lambda:.4} (lambda/n^(1/3) {:.3}) mixing {}/1000 alpha in [{greedy}, {bound:.1}]",
            lambda / (n as f64).cbrt(),
            mix.samples.iter().filter(|s| s.pass).count()
        ));
    }
    for k in [2u32, 3, 4, 5] {
        let split = alon_split(k);
        let g = alon_graph(k).unwrap();
        let report = spectral_gap(&g);
        let mix = mixing_check(&g, &report, 1000, 99);
        info(
            "alon graph",
            format!(
                "k={k} split {} rank {} ({} components) lambda {:.4} via {} (component lambda {}) mixing {}/1000",
                split.rule,
                split.rank,
                1usize << (3 * k - split.rank),
                report.lambda.unwrap(),
                report.method,
                split.lambda,
                mix.samples.iter().filter(|s| s.pass).count()
            ),
        );
    }
    verdict(ok, lines.join("; "))
}

/// Triangle count by checking every vertex triple that is a path, i.e. all pairs of
/// neighbours of every vertex.
fn brute_triangles_sparse(g: &Graph) -> usize {
    let mut count = 0;
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if g.has_edge(nb[i], nb[j]) {
                    count += 1;
                }
            }
        }
    }
    count / 3
}

fn oracles() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad: Vec<String> = Vec::new();
    let mut checked_certs = 0;
    for i in 0..500 {
        let n = rng.gen_range(1..=10);
        let g = random_graph(n, rng.gen_range(0.05..0.9), &mut rng);
        if DegeneracyOrder::compute(&g).degeneracy() != brute_degeneracy(&g) {
            bad.push(format!("degeneracy #{i}"));
        }
        if list_triangles(&g, None) != brute_triangles(&g) {
            bad.push(format!("triangles #{i}"));
        }
        for (u, v) in g.edges() {
            if c4_through_edge(&g, u, v).unwrap() != brute_c4_through(&g, u, v) {
                bad.push(format!("c4 #{i} edge {u}-{v}"));
            }
        }
        let (lo, hi) = alpha_bounds(&g, None);
        if hi != brute_alpha(&g) || lo > hi {
            bad.push(format!("alpha #{i}"));
        }
        let mut certs = Vec::new();
        for _ in 0..20 {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for v in 0..n {
                match rng.gen_range(0..3) {
                    0 => a.push(v),
                    1 => b.push(v),
                    _ => {}
                }
            }
            certs.push(BipartiteCert::new("random", a, b, rng.gen_range(0..3), Default::default()));
        }
        if g.m() > 0 {
            certs.push(best_color_pair(&g).unwrap());
        }
        for c in certs {
            checked_certs += 1;
            let lib = verify_bipartite_cert(&g, &c).unwrap().passed;
            if lib != brute_cert_valid(&g, &c.side_a, &c.side_b, c.claimed_min_degree) {
                bad.push(format!("certificate #{i}"));
            }
        }
    }
    let detail = format!("500 graphs, {checked_certs} certificates; mismatches: {}", if bad.is_empty() { "none".into() } else { bad.join(",") });
    verdict(bad.is_empty(), detail)
}

fn pullback() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut tested, mut from_extractor, mut violations) = (0, 0, 0);
    let mut attempts = 0;
    while tested < 1000 && attempts < 200_000 {
        attempts += 1;
        let base_n = rng.gen_range(2..=7);
        let base = random_graph(base_n, rng.gen_range(0.2..0.8), &mut rng);
        let sizes: Vec<usize> = (0..base_n).map(|_| rng.gen_range(1..=3)).collect();
        let big = blowup(&base, &sizes).unwrap();
        let owner = blob_of(&sizes);
        let candidate: Vec<usize> = if tested % 4 == 0 && big.m() > 0 {
            from_extractor += 1;
            best_color_pair(&big).unwrap().vertices()
        } else {
            let k = rng.gen_range(1..=big.n().min(6));
            let mut vs: Vec<usize> = (0..big.n()).collect();
            rand::seq::SliceRandom::shuffle(vs.as_mut_slice(), &mut rng);
            vs.truncate(k);
            vs
        };
        if !is_bipartite_on(&big, &candidate) {
            continue;
        }
        tested += 1;
        let mut w: Vec<usize> = candidate.iter().map(|&v| owner[v]).collect();
        w.sort();
        w.dedup();
        if !is_bipartite_on(&base, &w) {
            violations += 1;
        }
    }
    verdict(
        tested == 1000 && violations == 0,
        format!("{tested} bipartite candidates ({from_extractor} from the colour-pair extractor), {violations} violations"),
    )
}

fn main() {
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("dense-pair guarantee", dense_pair),
        ("dense-c4 guarantee", dense_c4),
        ("binomial tail numerics", tail_numeric),
        ("sampling claim monte carlo", claim_mc),
        ("sparse end-to-end", sparse_e2e),
        ("reduction", reduction),
        ("generator contract", generator_contract),
        ("alon graph", alon),
        ("brute-force oracle equivalence", oracles),
        ("blowup pullback", pullback),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            verdict(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !v.pass {
            failed += 1;
        }
        println!(
            "{} {name}: {} [{:.1}s]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/{ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
