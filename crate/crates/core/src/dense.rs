//! Extraction in the dense regime.
//!
//! *Pair method.* Every vertex `v` keeps `A_v`, its `d` smallest neighbours. For a pair
//! `{x1, x2}` let `Y = {v : A_v ∩ {x1, x2} ≠ ∅}`. Since `G` is triangle-free, `G[Y]` is
//! bipartite with sides `N(x1) ∩ Y` and `(N(x2) \ N(x1)) ∩ Y`. A uniformly random pair
//! has `E[e(Y) − (d²/2n)|Y|] > 0`, so scanning all pairs finds one with
//! `2n·e(Y) > d²·|Y|`, and peeling gives minimum degree `≥ ⌈d²/(2n)⌉`.
//!
//! *4-cycle method.* For an edge `uv`, `N(u) \ {v}` and `N(v) \ {u}` are disjoint
//! independent sets joined by exactly `c(u, v)` edges, the number of 4-cycles through
//! `uv`. The edge maximizing `c(u, v) / (d(u) + d(v) − 2)` gives a bipartite graph whose
//! half-average core has minimum degree at least that ratio.

use num_rational::Ratio;
use rand::Rng;

use crate::cert::{verify_bipartite_cert, BipartiteCert, ExtractionTrace};
use crate::degeneracy::half_avg_subgraph;
use crate::error::{require_triangle_free, ExtractError};
use crate::graph::{mask, Graph};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSearch {
    /// All pairs in lexicographic order; always succeeds on valid input.
    Exhaustive,
    /// Uniform random pairs, at most `budget` of them.
    Sampled { budget: usize },
}

impl PairSearch {
    pub fn sampled_default(n: usize) -> PairSearch {
        PairSearch::Sampled { budget: 10 * n }
    }
}

/// `A_v`: the `d` lexicographically smallest neighbours of each vertex.
pub fn fix_a(g: &Graph, d: usize) -> Result<Vec<Vec<usize>>, ExtractError> {
    (0..g.n())
        .map(|v| {
            let nb = g.neighbors(v);
            if nb.len() < d {
                Err(ExtractError::DegreeBelow { vertex: v, degree: nb.len(), d })
            } else {
                Ok(nb[..d].to_vec())
            }
        })
        .collect()
}

/// A qualifying pair and its set `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub x1: usize,
    pub x2: usize,
    pub y: Vec<usize>,
    pub e_y: usize,
    /// `e(Y) − (d²/2n)|Y|`
    pub score: Ratio<i128>,
}

struct PairScorer<'a> {
    g: &'a Graph,
    /// `owners[x]` = vertices `v` with `x ∈ A_v`
    owners: Vec<Vec<usize>>,
    in_y: Vec<bool>,
    d: usize,
}

impl<'a> PairScorer<'a> {
    fn new(g: &'a Graph, d: usize) -> Result<Self, ExtractError> {
        let a = fix_a(g, d)?;
        let mut owners = vec![Vec::new(); g.n()];
        for (v, av) in a.iter().enumerate() {
            for &x in av {
                owners[x].push(v);
            }
        }
        Ok(PairScorer { g, owners, in_y: vec![false; g.n()], d })
    }

    fn try_pair(&mut self, x1: usize, x2: usize) -> Option<PairWitness> {
        let mut y: Vec<usize> = self.owners[x1].iter().chain(&self.owners[x2]).copied().collect();
        y.sort_unstable();
        y.dedup();
        for &v in &y {
            self.in_y[v] = true;
        }
        let twice: usize = y.iter().map(|&v| self.g.neighbors(v).iter().filter(|&&w| self.in_y[w]).count()).sum();
        for &v in &y {
            self.in_y[v] = false;
        }
        let e_y = twice / 2;
        let (n, d) = (self.g.n() as i128, self.d as i128);
        let lhs = 2 * n * e_y as i128;
        let rhs = d * d * y.len() as i128;
        (lhs > rhs).then(|| PairWitness {
            x1,
            x2,
            e_y,
            score: Ratio::new(lhs - rhs, 2 * n),
            y,
        })
    }
}

/// Finds a qualifying pair, scanning lexicographically or by random sampling.
pub fn find_pair(g: &Graph, d: usize, mode: PairSearch, seed: u64) -> Result<(PairWitness, usize), ExtractError> {
    let n = g.n();
    if n < 2 {
        return Err(ExtractError::Param("need at least two vertices".into()));
    }
    let mut scorer = PairScorer::new(g, d)?;
    let mut tried = 0;
    match mode {
        PairSearch::Exhaustive => {
            for x1 in 0..n {
                for x2 in x1 + 1..n {
                    tried += 1;
                    if let Some(w) = scorer.try_pair(x1, x2) {
                        return Ok((w, tried));
                    }
                }
            }
            Err(ExtractError::Internal("no pair qualifies; input violates the preconditions".into()))
        }
        PairSearch::Sampled { budget } => {
            let mut r = rng::stream(seed, 0);
            for _ in 0..budget {
                tried += 1;
                let a = r.gen_range(0..n);
                let mut b = r.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                if let Some(w) = scorer.try_pair(a.min(b), a.max(b)) {
                    return Ok((w, tried));
                }
            }
            Err(ExtractError::PairBudget { budget })
        }
    }
}

/// `⌈d²/(2n)⌉`, at least 1.
pub fn pair_guarantee(n: usize, d: usize) -> usize {
    (d * d).div_ceil(2 * n).max(1)
}

pub fn extract_dense_pair(g: &Graph, d: usize, mode: PairSearch, seed: u64) -> Result<BipartiteCert, ExtractError> {
    require_triangle_free(g)?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < d) {
        return Err(ExtractError::DegreeBelow { vertex: v, degree: g.degree(v), d });
    }
    let (w, tried) = find_pair(g, d, mode, seed)?;
    let budget = match mode {
        PairSearch::Exhaustive => g.n() * (g.n() - 1) / 2,
        PairSearch::Sampled { budget } => budget,
    };
    let mut trace = ExtractionTrace::new(seed, budget);
    trace.retries = tried - 1;
    trace.note("mode", if mode == PairSearch::Exhaustive { "exhaustive" } else { "sampled" });
    trace.stat("d", d);
    trace.stat("x1", w.x1);
    trace.stat("x2", w.x2);
    trace.stat("y", w.y.len());
    trace.stat("e_y", w.e_y);
    trace.note("score", format!("{}/{}", w.score.numer(), w.score.denom()));

    let (yg, ymap) = g.induced(&w.y);
    let kept = half_avg_subgraph(&yg)?;
    let n1 = mask(g.n(), g.neighbors(w.x1));
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for i in kept {
        let v = ymap[i];
        if n1[v] {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    finish("dense-pair", g, a, b, pair_guarantee(g.n(), d), trace)
}

fn finish(
    algorithm: &str,
    g: &Graph,
    a: Vec<usize>,
    b: Vec<usize>,
    guarantee: usize,
    trace: ExtractionTrace,
) -> Result<BipartiteCert, ExtractError> {
    let mut cert = BipartiteCert::new(algorithm, a, b, guarantee, trace);
    let report = verify_bipartite_cert(g, &cert).map_err(|e| ExtractError::Internal(e.to_string()))?;
    if !report.passed {
        return Err(ExtractError::Internal(format!("certificate failed verification: {:?}", report.failure)));
    }
    cert.achieved_min_degree = Some(report.achieved_min_degree);
    Ok(cert)
}

/// `e(N(u) \ {v}, N(v) \ {u})`, which equals the number of 4-cycles through `uv` when
/// `g` is triangle-free.
pub fn c4_through_edge(g: &Graph, u: usize, v: usize) -> Result<usize, ExtractError> {
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(ExtractError::NotAnEdge { u, v });
    }
    let side_v = mask(g.n(), g.neighbors(v));
    Ok(g.neighbors(u)
        .iter()
        .filter(|&&a| a != v)
        .map(|&a| g.neighbors(a).iter().filter(|&&b| b != u && side_v[b]).count())
        .sum())
}

/// The edge maximizing `c(u,v) / (d(u)+d(v)−2)` (lexicographically first on ties) and
/// that ratio.
pub fn best_c4_edge(g: &Graph) -> Option<((usize, usize), Ratio<i128>)> {
    let mut best: Option<((usize, usize), Ratio<i128>)> = None;
    for (u, v) in g.edges() {
        let denom = (g.degree(u) + g.degree(v) - 2) as i128;
        if denom == 0 {
            continue;
        }
        let c = c4_through_edge(g, u, v).expect("iterating edges") as i128;
        let q = Ratio::new(c, denom);
        if best.as_ref().is_none_or(|(_, b)| q > *b) {
            best = Some(((u, v), q));
        }
    }
    best
}

pub fn extract_dense_c4(g: &Graph) -> Result<BipartiteCert, ExtractError> {
    require_triangle_free(g)?;
    let first = g.edges().next().ok_or(ExtractError::Peel(crate::degeneracy::PeelError::NoEdges))?;
    let mut trace = ExtractionTrace::new(0, 0);
    let best = best_c4_edge(g).filter(|(_, q)| *q.numer() > 0);
    let Some(((u, v), q)) = best else {
        trace.note("degenerate", "no 4-cycles; single-edge certificate");
        trace.stat("u", first.0);
        trace.stat("v", first.1);
        return finish("dense-c4", g, vec![first.0], vec![first.1], 1, trace);
    };
    trace.stat("u", u);
    trace.stat("v", v);
    trace.note("q", format!("{}/{}", q.numer(), q.denom()));
    let nu: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| w != v).collect();
    let nv: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w != u).collect();
    let (sub, map) = g.induced(&nu.iter().chain(&nv).copied().collect::<Vec<_>>());
    trace.stat("c_uv", sub.m());
    let kept = half_avg_subgraph(&sub)?;
    let in_nu = mask(g.n(), &nu);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for i in kept {
        let w = map[i];
        if in_nu[w] {
            a.push(w);
        } else {
            b.push(w);
        }
    }
    // q ≥ d²/(4n) when the minimum degree d exceeds 2√n
    let (n, d) = (g.n() as i128, g.min_degree() as i128);
    if d * d > 4 * n && q * Ratio::from(4 * n) < Ratio::from(d * d) {
        return Err(ExtractError::Internal("best 4-cycle ratio below d²/(4n)".into()));
    }
    let guarantee = q.ceil().to_integer() as usize;
    finish("dense-c4", g, a, b, guarantee, trace)
}
