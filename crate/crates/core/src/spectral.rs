//! Spectral checks for `(n, d, λ)`-graphs, independence-number bounds and the
//! colour-pair extractor.

use std::fmt::Write;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cert::{verify_bipartite_cert, BipartiteCert, ExtractionTrace};
use crate::coloring::{greedy_color, turan_independent_set};
use crate::degeneracy::{DegeneracyOrder, PeelError};
use crate::error::ExtractError;
use crate::graph::{mask, Graph};
use crate::rng;

pub const EIGEN_TOL: f64 = 1e-6;
/// Largest `n` handled by a dense eigensolve.
pub const DENSE_LIMIT: usize = 2048;
/// Largest `n` for which [`alpha_bounds`] computes α exactly.
pub const EXACT_ALPHA_LIMIT: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct MixingSample {
    pub a: usize,
    pub b: usize,
    pub edges: usize,
    /// `|e(A,B) − (d/n)|A||B||`
    pub deviation: f64,
    /// `λ√(|A||B|)`
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub n: usize,
    /// `None` when the graph is irregular.
    pub degree: Option<usize>,
    pub lambda: Option<f64>,
    pub tol: f64,
    pub method: &'static str,
    pub mixing_samples: Vec<MixingSample>,
}

impl SpectralReport {
    pub fn to_document(&self) -> String {
        let mut out = String::from("# dibs spectral v1\n");
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "degree {}", opt(self.degree.map(|d| d.to_string())));
        let _ = writeln!(out, "lambda {}", opt(self.lambda.map(|l| format!("{l:.9}"))));
        let _ = writeln!(out, "tol {:e}", self.tol);
        let _ = writeln!(out, "method {}", self.method);
        for s in &self.mixing_samples {
            let _ = writeln!(
                out,
                "mixing {} {} {} {:.6} {:.6} {}",
                s.a,
                s.b,
                s.edges,
                s.deviation,
                s.bound,
                if s.pass { "pass" } else { "fail" }
            );
        }
        out
    }
}

/// Eigenvalues of the adjacency matrix in ascending order.
pub fn adjacency_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Largest `|μ|` over the spectrum after deleting one copy of the top eigenvalue.
pub fn spectral_gap(g: &Graph) -> SpectralReport {
    let n = g.n();
    let mut report = SpectralReport { n, degree: None, lambda: None, tol: EIGEN_TOL, method: "irregular", mixing_samples: Vec::new() };
    let Some(d) = g.regular_degree() else {
        return report;
    };
    report.degree = Some(d);
    if n <= 1 {
        report.lambda = Some(0.0);
        report.method = "trivial";
    } else if n <= DENSE_LIMIT {
        let ev = adjacency_spectrum(g);
        report.lambda = Some(ev[..n - 1].iter().map(|x| x.abs()).fold(0.0, f64::max));
        report.method = "dense-eigen";
    } else {
        report.lambda = Some(deflated_power(g, 0x5350_4543));
        report.method = "deflated-power";
    }
    report
}

/// Power iteration on the complement of the all-ones vector, which is the top
/// eigenvector of a regular graph.
pub fn deflated_power(g: &Graph, seed: u64) -> f64 {
    let n = g.n();
    let mut r = rng::stream(seed, 0);
    let mut x: Vec<f64> = (0..n).map(|_| r.gen::<f64>() - 0.5).collect();
    let project = |x: &mut Vec<f64>| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            x.iter_mut().for_each(|v| *v /= norm);
        }
        norm
    };
    project(&mut x);
    let mut est = 0.0;
    for _ in 0..20_000 {
        // two steps per round so alternating ±λ components do not oscillate
        let mut y = vec![0.0; n];
        for (v, yv) in y.iter_mut().enumerate() {
            *yv = g.neighbors(v).iter().map(|&w| x[w]).sum();
        }
        let mut z = vec![0.0; n];
        for (v, zv) in z.iter_mut().enumerate() {
            *zv = g.neighbors(v).iter().map(|&w| y[w]).sum();
        }
        let norm = project(&mut z);
        let next = norm.sqrt();
        x = z;
        if (next - est).abs() < EIGEN_TOL * 1e-2 {
            return next;
        }
        est = next;
    }
    est
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingResult {
    pub passed: bool,
    pub samples: Vec<MixingSample>,
}

/// Samples disjoint `A`, `B` with sizes uniform in `[1, n/3]` and checks
/// `|e(A,B) − (d/n)|A||B|| ≤ λ√(|A||B|) + tol` on each.
pub fn mixing_check(g: &Graph, report: &SpectralReport, trials: usize, seed: u64) -> MixingResult {
    let (Some(d), Some(lambda)) = (report.degree, report.lambda) else {
        return MixingResult { passed: false, samples: Vec::new() };
    };
    let n = g.n();
    let hi = (n / 3).max(1);
    let mut perm: Vec<usize> = (0..n).collect();
    let samples: Vec<MixingSample> = (0..trials)
        .map(|i| {
            let mut r = rng::stream(seed, i as u64);
            let a = r.gen_range(1..=hi).min(n);
            let b = r.gen_range(1..=hi).min(n - a);
            perm.shuffle(&mut r);
            let set_b = mask(n, &perm[a..a + b]);
            let edges = g.edges_between(&perm[..a], &set_b);
            mixing_sample(n, d, lambda, a, b, edges, report.tol)
        })
        .collect();
    MixingResult { passed: samples.iter().all(|s| s.pass), samples }
}

pub fn mixing_sample(n: usize, d: usize, lambda: f64, a: usize, b: usize, edges: usize, tol: f64) -> MixingSample {
    let ab = (a * b) as f64;
    let deviation = (edges as f64 - d as f64 / n as f64 * ab).abs();
    let bound = lambda * ab.sqrt();
    MixingSample { a, b, edges, deviation, bound, pass: deviation <= bound + tol }
}

/// Exact independence number by branching on the closed neighbourhood of a
/// minimum-degree vertex. Intended for `n ≤ 64`.
pub fn exact_alpha(g: &Graph) -> usize {
    assert!(g.n() <= 64, "exact_alpha supports at most 64 vertices");
    let nb: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    fn go(p: u64, nb: &[u64]) -> usize {
        if p == 0 {
            return 0;
        }
        let mut pivot = p.trailing_zeros() as usize;
        let mut best_deg = u32::MAX;
        let mut rest = p;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let deg = (nb[v] & p).count_ones();
            if deg < best_deg {
                best_deg = deg;
                pivot = v;
            }
        }
        let mut best = 0;
        let mut choices = (nb[pivot] & p) | 1 << pivot;
        while choices != 0 {
            let w = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            best = best.max(1 + go(p & !nb[w] & !(1 << w), nb));
        }
        best
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    go(all, &nb)
}

/// `(lower, upper)` bounds on the independence number.
pub fn alpha_bounds(g: &Graph, report: Option<&SpectralReport>) -> (usize, usize) {
    let n = g.n();
    let lower = turan_independent_set(g).len();
    if n <= EXACT_ALPHA_LIMIT {
        return (lower, exact_alpha(g));
    }
    let upper = match report {
        Some(SpectralReport { degree: Some(d), lambda: Some(l), .. }) if *d > 0 => {
            let b = 2.0 * (n as f64 * l / *d as f64 + 1.0);
            (b.floor() as usize).min(n)
        }
        _ => n,
    };
    (lower, upper.max(lower))
}

/// `⌈m / C(k,2)⌉` for `k ≥ 2` colours.
pub fn color_pair_guarantee(m: usize, k: usize) -> usize {
    m.div_ceil((k * (k - 1) / 2).max(1))
}

/// The pair of greedy colour classes spanning the most edges (lowest pair on ties).
/// The trace records the colour count, the edge count and its guaranteed lower bound.
pub fn best_color_pair(g: &Graph) -> Result<BipartiteCert, ExtractError> {
    if g.m() == 0 {
        return Err(PeelError::NoEdges.into());
    }
    let order = DegeneracyOrder::compute(g);
    let coloring = greedy_color(g, &order);
    let classes = coloring.classes();
    let k = coloring.count;
    let mut between = vec![vec![0usize; k]; k];
    for (u, v) in g.edges() {
        let (a, b) = (coloring.colors[u], coloring.colors[v]);
        between[a.min(b)][a.max(b)] += 1;
    }
    let mut best = (0, 1, 0);
    for i in 0..k {
        for j in i + 1..k {
            if between[i][j] > best.2 {
                best = (i, j, between[i][j]);
            }
        }
    }
    let (i, j, edges) = best;
    let guarantee = color_pair_guarantee(g.m(), k);
    let mut trace = ExtractionTrace::new(0, 0);
    trace.stat("colors", k);
    trace.stat("class_a", i);
    trace.stat("class_b", j);
    trace.stat("edges", edges);
    trace.stat("edge_guarantee", guarantee);
    let mut cert = BipartiteCert::new("color-pair", classes[i].clone(), classes[j].clone(), 0, trace);
    let report = verify_bipartite_cert(g, &cert).map_err(|e| ExtractError::Internal(e.to_string()))?;
    if !report.passed || report.edges_across != edges || edges < guarantee {
        return Err(ExtractError::Internal("colour-pair certificate inconsistent".into()));
    }
    cert.achieved_min_degree = Some(report.achieved_min_degree);
    Ok(cert)
}
