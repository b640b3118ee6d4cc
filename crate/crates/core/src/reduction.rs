//! From `K_t`-free to triangle-free.
//!
//! Work on a vertex-minimal subgraph of minimum degree `d`, which is `d`-degenerate.
//! If some right-neighbourhood `N⁺(v)` spans more than `d^{7/6}` edges it is
//! `K_{t−1}`-free with average degree above `2d^{1/6}`, and we recurse on it. Otherwise
//! a `d^{−2/3}`-random subset `U` with the leftmost vertex of each of its triangles
//! deleted is triangle-free and, often enough, spans more than `d^{1/6}|W|` edges.

use num_bigint::BigUint;

use crate::cert::{verify_bipartite_cert, BipartiteCert, ExtractionTrace};
use crate::degeneracy::{core, half_avg_subgraph, minimal_min_degree_subgraph, DegeneracyOrder, PeelError};
use crate::dense::{extract_dense_pair, PairSearch};
use crate::error::ExtractError;
use crate::graph::{mask, Graph};
use crate::rng;
use crate::sparse::extract_sparse;
use crate::triangles::{find_clique, list_triangles};

pub const DEFAULT_SAMPLE_BUDGET: usize = 2000;
const SAMPLE_TAG: u64 = 0x5245_4455;

/// What to do when a triangle-free stage is reached with `d < 16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallDegreePolicy {
    /// Run the exhaustive dense-pair extractor on that stage.
    DensePair,
    /// Fail with [`ExtractError::SmallDegree`].
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceOptions {
    pub sample_budget: usize,
    pub small_degree: SmallDegreePolicy,
    /// Brute-force `K_t`-freeness check applies when `t ≤ 5` and `n` is at most this.
    pub clique_check_limit: usize,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { sample_budget: DEFAULT_SAMPLE_BUDGET, small_degree: SmallDegreePolicy::DensePair, clique_check_limit: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Recursed into `G[N⁺(v)]` with clique bound `t − 1`.
    Neighbourhood { vertex: usize, edges: usize },
    /// Accepted a triangle-free sample `W`.
    Sample { attempts: usize, w: Vec<usize>, stats: SampleStats },
    /// Triangle-free base extractor.
    Base { algorithm: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRecord {
    pub t: usize,
    pub d: usize,
    /// Vertices of this level's host, in input ids.
    pub host: Vec<usize>,
    pub step: Step,
}

#[derive(Debug, Clone)]
pub struct ReductionOutcome {
    pub cert: BipartiteCert,
    pub levels: Vec<LevelRecord>,
}

/// Statistics of one sample `U`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SampleStats {
    pub u: usize,
    pub w: usize,
    /// `e(G[U])`
    pub x1: usize,
    /// triangles of `G[U]`
    pub x2: usize,
    /// edges of `G[U]` meeting a deleted vertex, other than the two edges from a
    /// triangle's leftmost vertex to the rest of that triangle
    pub x3: usize,
    pub e_w: usize,
}

impl SampleStats {
    pub fn surrogate(&self) -> i64 {
        self.x1 as i64 - 2 * self.x2 as i64 - self.x3 as i64
    }
}

/// Smallest `k` with `k⁶ ≥ d`.
pub fn ceil_root6(d: usize) -> usize {
    let mut k = (d as f64).powf(1.0 / 6.0).floor() as usize;
    while pow6(k) >= d as u128 && k > 0 {
        k -= 1;
    }
    while pow6(k) < d as u128 {
        k += 1;
    }
    k
}

fn pow6(k: usize) -> u128 {
    (k as u128).pow(6)
}

/// `e > d^{7/6}`, decided as `e⁶ > d⁷`.
pub fn exceeds_d76(e: usize, d: usize) -> bool {
    BigUint::from(e).pow(6) > BigUint::from(d).pow(7)
}

/// `e > d^{1/6}·w`, decided as `e⁶ > d·w⁶`.
pub fn exceeds_root6(e: usize, d: usize, w: usize) -> bool {
    BigUint::from(e).pow(6) > BigUint::from(d) * BigUint::from(w).pow(6)
}

/// Draws `U` with probability `d^{−2/3}` per vertex and removes the leftmost vertex of
/// each triangle of `G[U]`. Returns `(U, W, stats)`.
pub fn sample_w(g: &Graph, order: &DegeneracyOrder, d: usize, seed: u64) -> (Vec<usize>, Vec<usize>, SampleStats) {
    let p = (d as f64).powf(-2.0 / 3.0);
    let u: Vec<usize> = (0..g.n()).filter(|&v| rng::coin(seed, SAMPLE_TAG, v as u64) < p).collect();
    let tris = list_triangles(g, Some(&u));
    let n = g.n();
    let mut removed = vec![false; n];
    let mut lead = std::collections::HashSet::new();
    for t in &tris {
        let l = *t.iter().min_by_key(|&&x| order.position(x)).expect("three vertices");
        removed[l] = true;
        for &x in t {
            if x != l {
                lead.insert((l.min(x), l.max(x)));
            }
        }
    }
    let in_u = mask(n, &u);
    let mut x1 = 0;
    let mut x3 = 0;
    let mut e_w = 0;
    for &a in &u {
        for &b in g.neighbors(a) {
            if b <= a || !in_u[b] {
                continue;
            }
            x1 += 1;
            if removed[a] || removed[b] {
                if !lead.contains(&(a, b)) {
                    x3 += 1;
                }
            } else {
                e_w += 1;
            }
        }
    }
    let w: Vec<usize> = u.iter().copied().filter(|&v| !removed[v]).collect();
    let stats = SampleStats { u: u.len(), w: w.len(), x1, x2: tris.len(), x3, e_w };
    (u, w, stats)
}

pub fn reduce_extract(g: &Graph, t: usize, d: usize, seed: u64) -> Result<BipartiteCert, ExtractError> {
    reduce_extract_with(g, t, d, seed, &ReduceOptions::default()).map(|o| o.cert)
}

pub fn reduce_extract_with(
    g: &Graph,
    t: usize,
    d: usize,
    seed: u64,
    opts: &ReduceOptions,
) -> Result<ReductionOutcome, ExtractError> {
    if t < 3 {
        return Err(ExtractError::Param(format!("clique bound t = {t} must be at least 3")));
    }
    if t == 3 {
        let cert = extract_sparse(g, d, seed)?;
        return Ok(ReductionOutcome { cert, levels: Vec::new() });
    }
    let mut trace = ExtractionTrace::new(seed, opts.sample_budget);
    if t <= 5 && g.n() <= opts.clique_check_limit {
        if let Some(clique) = find_clique(g, t) {
            return Err(ExtractError::Clique { t, clique });
        }
        trace.note("clique_free", "checked");
    } else {
        trace.note("clique_free", "assumed");
    }
    if core(g, d).is_empty() {
        return Err(PeelError::EmptyCore { d }.into());
    }

    let mut levels = Vec::new();
    let mut host: Vec<usize> = (0..g.n()).collect();
    let (mut t, mut d) = (t, d);
    let mut retries = 0;
    let (base_cert, base_map) = loop {
        let (hg, _) = g.induced(&host);
        if t == 3 {
            let kept = core(&hg, d);
            if kept.is_empty() {
                return Err(ExtractError::Internal(format!("stage lost its {d}-core")));
            }
            let (bg, bmap) = hg.induced(&kept);
            let bmap: Vec<usize> = bmap.iter().map(|&i| host[i]).collect();
            let cert = if d >= 16 {
                extract_sparse(&bg, d, rng::substream_seed(seed, levels.len() as u64))?
            } else {
                match opts.small_degree {
                    SmallDegreePolicy::Strict => return Err(crate::binomial::SmallDegree(d as u64).into()),
                    SmallDegreePolicy::DensePair => extract_dense_pair(&bg, d, PairSearch::Exhaustive, 0)?,
                }
            };
            levels.push(LevelRecord { t, d, host: bmap.clone(), step: Step::Base { algorithm: cert.algorithm.clone() } });
            break (cert, bmap);
        }

        let keep = minimal_min_degree_subgraph(&hg, d)?;
        let (sub, smap) = hg.induced(&keep);
        let to_input: Vec<usize> = smap.iter().map(|&i| host[i]).collect();
        let order = DegeneracyOrder::compute(&sub);
        if order.degeneracy() > d {
            return Err(ExtractError::Internal("minimal subgraph is not d-degenerate".into()));
        }

        // (b) a dense right-neighbourhood
        let dense = order.order().iter().find_map(|&v| {
            let nplus: Vec<usize> = order.right_neighbors(&sub, v).collect();
            let e = sub.edges_within(&mask(sub.n(), &nplus));
            exceeds_d76(e, d).then_some((v, nplus, e))
        });
        if let Some((v, nplus, e)) = dense {
            let (ng, nmap) = sub.induced(&nplus);
            let kept = half_avg_subgraph(&ng)?;
            let next_d = ceil_root6(d);
            let (kg, _) = ng.induced(&kept);
            if kg.min_degree() < next_d {
                return Err(ExtractError::Internal("neighbourhood peel fell below d^(1/6)".into()));
            }
            levels.push(LevelRecord {
                t,
                d,
                host: to_input.clone(),
                step: Step::Neighbourhood { vertex: to_input[v], edges: e },
            });
            host = kept.iter().map(|&i| to_input[nmap[i]]).collect();
            t -= 1;
            d = next_d;
            continue;
        }

        // (c) sample until a triangle-free W is dense enough
        let level_seed = rng::substream_seed(seed, levels.len() as u64);
        let mut accepted = None;
        for attempt in 0..opts.sample_budget {
            let (_, w, stats) = sample_w(&sub, &order, d, rng::substream_seed(level_seed, attempt as u64));
            if !list_triangles(&sub, Some(&w)).is_empty() {
                return Err(ExtractError::Internal("sampled W contains a triangle".into()));
            }
            if (stats.e_w as i64) < stats.surrogate() {
                return Err(ExtractError::Internal("e(W) below X1 - 2X2 - X3".into()));
            }
            if exceeds_root6(stats.e_w, d, stats.w) {
                accepted = Some((attempt, w, stats));
                break;
            }
        }
        let Some((attempt, w, stats)) = accepted else {
            return Err(ExtractError::RetryExhausted { attempts: opts.sample_budget, best: format!("t={t}, d={d}") });
        };
        retries += attempt;
        let (wg, wmap) = sub.induced(&w);
        let next_d = ceil_root6(d);
        let kept = core(&wg, next_d);
        if kept.is_empty() {
            return Err(ExtractError::Internal("accepted W has an empty core".into()));
        }
        levels.push(LevelRecord {
            t,
            d,
            host: to_input.clone(),
            step: Step::Sample { attempts: attempt + 1, w: w.iter().map(|&i| to_input[i]).collect(), stats },
        });
        host = kept.iter().map(|&i| to_input[wmap[i]]).collect();
        t = 3;
        d = next_d;
    };

    trace.retries = retries.min(trace.budget);
    let mut path = Vec::new();
    for (i, level) in levels.iter().enumerate() {
        let key = |s: &str| format!("level{i}.{s}");
        trace.stat(&key("t"), level.t);
        trace.stat(&key("d"), level.d);
        trace.stat(&key("host"), level.host.len());
        match &level.step {
            Step::Neighbourhood { vertex, edges } => {
                trace.stat(&key("vertex"), *vertex);
                trace.stat(&key("nplus_edges"), *edges);
                path.push(format!("t{}:neighbourhood", level.t));
            }
            Step::Sample { attempts, stats, .. } => {
                trace.stat(&key("attempts"), *attempts);
                trace.stat(&key("u"), stats.u);
                trace.stat(&key("w"), stats.w);
                trace.stat(&key("x1"), stats.x1);
                trace.stat(&key("x2"), stats.x2);
                trace.stat(&key("x3"), stats.x3);
                trace.stat(&key("e_w"), stats.e_w);
                path.push(format!("t{}:sample", level.t));
            }
            Step::Base { algorithm } => path.push(format!("t{}:{algorithm}", level.t)),
        }
    }
    trace.note("path", path.join(" > "));
    for (k, v) in &base_cert.trace.stage_stats {
        trace.stat(&format!("base.{k}"), *v);
    }
    let side = |s: &[usize]| s.iter().map(|&i| base_map[i]).collect::<Vec<_>>();
    let mut cert =
        BipartiteCert::new("reduce", side(&base_cert.side_a), side(&base_cert.side_b), base_cert.claimed_min_degree, trace);
    let report = verify_bipartite_cert(g, &cert).map_err(|e| ExtractError::Internal(e.to_string()))?;
    if !report.passed {
        return Err(ExtractError::Internal(format!("certificate failed verification: {:?}", report.failure)));
    }
    cert.achieved_min_degree = Some(report.achieved_min_degree);
    Ok(ReductionOutcome { cert, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{blowup, named};

    #[test]
    fn roots_and_powers() {
        assert_eq!(ceil_root6(1), 1);
        assert_eq!(ceil_root6(60), 2);
        assert_eq!(ceil_root6(64), 2);
        assert_eq!(ceil_root6(65), 3);
        assert_eq!(ceil_root6(16usize.pow(6)), 16);
        assert!(exceeds_d76(2, 1));
        assert!(!exceeds_d76(128, 64));
        assert!(exceeds_d76(129, 64));
        assert!(!exceeds_root6(4, 64, 2));
        assert!(exceeds_root6(5, 64, 2));
    }

    #[test]
    fn sampled_w_is_triangle_free() {
        let g = named::complete_multipartite(&[8, 8, 8]);
        let order = DegeneracyOrder::compute(&g);
        for s in 0..50 {
            let (u, w, st) = sample_w(&g, &order, 4, s);
            assert!(list_triangles(&g, Some(&w)).is_empty());
            assert!(w.len() <= u.len());
            assert!(st.e_w as i64 >= st.surrogate());
            assert_eq!(st.e_w, g.edges_within(&mask(g.n(), &w)));
        }
    }

    #[test]
    fn tripartite_reduces() {
        let g = named::complete_multipartite(&[20, 20, 20]);
        let out = reduce_extract_with(&g, 4, 20, 1, &ReduceOptions::default()).unwrap();
        assert!(out.cert.achieved_min_degree.unwrap() >= 1);
        assert!(matches!(out.levels.last().unwrap().step, Step::Base { .. }));
        let strict = ReduceOptions { small_degree: SmallDegreePolicy::Strict, ..Default::default() };
        assert!(matches!(reduce_extract_with(&g, 4, 20, 1, &strict), Err(ExtractError::SmallDegree(_))));
    }

    #[test]
    fn rejects_cliques_and_bad_t() {
        assert!(matches!(reduce_extract(&named::complete(4), 4, 3, 0), Err(ExtractError::Clique { t: 4, .. })));
        assert!(matches!(reduce_extract(&named::cycle(5), 2, 2, 0), Err(ExtractError::Param(_))));
    }

    #[test]
    fn t3_delegates() {
        let g = blowup(&crate::generators::alon_graph(3).unwrap(), &[2; 512]).unwrap();
        let a = reduce_extract(&g, 3, 24, 5).unwrap();
        let b = extract_sparse(&g, 24, 5).unwrap();
        assert_eq!(a, b);
    }
}
