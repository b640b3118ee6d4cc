//! Randomized extraction for triangle-free graphs of minimum degree `d`, giving an
//! induced bipartite subgraph of minimum degree `Ω(log d / log log d)`.
//!
//! Vertices join `X` with probability `p = 1/d`. A vertex outside `X` with at least
//! `ℓ` neighbours in `X` joins `Y` after a further coin of bias `p_u`, chosen so that
//! `Pr[u ∈ Y] = p`. `Z` holds the `X`–`Y` edges at vertices `x` with
//! `|N⁺(x) ∩ X| ≥ 4`. A sample is accepted when
//! `|Y| − |X|/3 − e(Y)/3 − (7/ℓ)|Z| > 0`, which is tested as the integer inequality
//! `3ℓ|Y| − ℓ|X| − ℓ·e(Y) − 21|Z| > 0`.

use crate::binomial::{binom_tail, ell_of, SmallDegree};
use crate::cert::{verify_bipartite_cert, BipartiteCert, ExtractionTrace};
use crate::coloring::{greedy_color, turan_independent_set};
use crate::degeneracy::{half_avg_subgraph, minimal_min_degree_subgraph, DegeneracyOrder};
use crate::error::{require_triangle_free, ExtractError};
use crate::graph::{mask, Graph};
use crate::rng::coin;

pub const DEFAULT_RETRY_BUDGET: usize = 1000;

const TAG_X: u64 = 0x58;
const TAG_Y: u64 = 0x59;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparseParams {
    d: usize,
    p: f64,
    ell: usize,
    retry_budget: usize,
}

impl SparseParams {
    pub fn new(d: usize) -> Result<SparseParams, SmallDegree> {
        let ell = ell_of(d as u64)? as usize;
        Ok(SparseParams { d, p: 1.0 / d as f64, ell, retry_budget: DEFAULT_RETRY_BUDGET })
    }

    pub fn with_budget(mut self, retry_budget: usize) -> Self {
        self.retry_budget = retry_budget;
        self
    }

    /// Overrides the threshold `ℓ`; values below 1 are raised to 1.
    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = ell.max(1);
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn retry_budget(&self) -> usize {
        self.retry_budget
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinBias {
    pub value: f64,
    pub clamped: bool,
}

/// `p_u` solving `(1 − p)·Pr[Bin(deg, p) ≥ ℓ]·p_u = p`, clamped to 1.
pub fn p_u(deg: usize, params: &SparseParams) -> Result<CoinBias, ExtractError> {
    let tail = binom_tail(deg as u64, params.p, params.ell as u64);
    if tail <= 0.0 {
        return Err(ExtractError::Param(format!(
            "Pr[Bin({deg}, p) >= {}] = 0; p_u undefined",
            params.ell
        )));
    }
    let q = params.p / ((1.0 - params.p) * tail);
    Ok(if q > 1.0 { CoinBias { value: 1.0, clamped: true } } else { CoinBias { value: q, clamped: false } })
}

/// One draw of `(X, Y, Z)`. Vertex ids are those of the sampled graph.
#[derive(Debug, Clone, PartialEq)]
pub struct XYZSample {
    pub seed: u64,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<(usize, usize)>,
    pub e_y: usize,
    /// The `p_u` value in force for every vertex (0 where `Pr[Bin(d(u), p) ≥ ℓ] = 0`).
    pub coin_log: Vec<f64>,
    pub clamped: usize,
}

impl XYZSample {
    /// `3ℓ · (|Y| − |X|/3 − e(Y)/3 − (7/ℓ)|Z|)`.
    pub fn scaled_objective(&self, ell: usize) -> i64 {
        let ell = ell as i64;
        3 * ell * self.y.len() as i64 - ell * self.x.len() as i64 - ell * self.e_y as i64 - 21 * self.z.len() as i64
    }

    pub fn objective(&self, ell: usize) -> f64 {
        self.scaled_objective(ell) as f64 / (3 * ell) as f64
    }
}

/// Precomputed coin biases for repeated sampling on one graph.
pub struct Sampler<'a> {
    g: &'a Graph,
    order: &'a DegeneracyOrder,
    params: SparseParams,
    bias: Vec<f64>,
    clamped: Vec<bool>,
}

impl<'a> Sampler<'a> {
    pub fn new(g: &'a Graph, order: &'a DegeneracyOrder, params: SparseParams) -> Self {
        let mut cache = std::collections::HashMap::new();
        let mut bias = Vec::with_capacity(g.n());
        let mut clamped = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let b = *cache
                .entry(g.degree(v))
                .or_insert_with(|| p_u(g.degree(v), &params).unwrap_or(CoinBias { value: 0.0, clamped: false }));
            bias.push(b.value);
            clamped.push(b.clamped);
        }
        Sampler { g, order, params, bias, clamped }
    }

    pub fn sample(&self, seed: u64) -> XYZSample {
        let (g, p, ell) = (self.g, self.params.p, self.params.ell);
        let n = g.n();
        let in_x: Vec<bool> = (0..n).map(|v| coin(seed, TAG_X, v as u64) < p).collect();
        let mut in_y = vec![false; n];
        for v in 0..n {
            if in_x[v] || self.bias[v] == 0.0 {
                continue;
            }
            let hits = g.neighbors(v).iter().filter(|&&w| in_x[w]).count();
            if hits >= ell && coin(seed, TAG_Y, v as u64) < self.bias[v] {
                in_y[v] = true;
            }
        }
        let x: Vec<usize> = (0..n).filter(|&v| in_x[v]).collect();
        let y: Vec<usize> = (0..n).filter(|&v| in_y[v]).collect();
        let mut z = Vec::new();
        for &u in &x {
            if self.order.right_neighbors(g, u).filter(|&w| in_x[w]).count() >= 4 {
                z.extend(g.neighbors(u).iter().filter(|&&w| in_y[w]).map(|&w| (u, w)));
            }
        }
        let e_y = g.edges_within(&in_y);
        let clamped = (0..n).filter(|&v| in_y[v] && self.clamped[v]).count();
        XYZSample { seed, x, y, z, e_y, coin_log: self.bias.clone(), clamped }
    }
}

pub fn sample_xyz(g: &Graph, order: &DegeneracyOrder, params: &SparseParams, seed: u64) -> XYZSample {
    Sampler::new(g, order, *params).sample(seed)
}

/// Samples with seeds `seed, seed+1, …` and returns the first with positive objective,
/// together with the number of rejected draws.
pub fn find_good_xyz(
    g: &Graph,
    order: &DegeneracyOrder,
    params: &SparseParams,
    seed: u64,
) -> Result<(XYZSample, usize), ExtractError> {
    let sampler = Sampler::new(g, order, *params);
    let mut best = i64::MIN;
    for attempt in 0..params.retry_budget {
        let s = sampler.sample(seed.wrapping_add(attempt as u64));
        let obj = s.scaled_objective(params.ell);
        if obj > 0 {
            return Ok((s, attempt));
        }
        best = best.max(obj);
    }
    Err(ExtractError::RetryExhausted {
        attempts: params.retry_budget,
        best: format!("{best}/{}", 3 * params.ell),
    })
}

/// The four structural properties an accepted sample must have, recomputed from the
/// sets alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimCheck {
    pub nonempty_disjoint: bool,
    /// every `y ∈ Y` has at least `ℓ` neighbours in `X`
    pub y_min_neighbors: bool,
    /// at most `(ℓ/7)|Y|` edges `xy` with `|N⁺(x) ∩ X| ≥ 4`
    pub z_bound: bool,
    pub x_bound: bool,
    pub e_y_bound: bool,
}

impl ClaimCheck {
    pub fn all(&self) -> bool {
        self.nonempty_disjoint && self.y_min_neighbors && self.z_bound && self.x_bound && self.e_y_bound
    }
}

pub fn check_claim(g: &Graph, order: &DegeneracyOrder, x: &[usize], y: &[usize], ell: usize) -> ClaimCheck {
    let in_x = mask(g.n(), x);
    let in_y = mask(g.n(), y);
    let nonempty_disjoint = !x.is_empty() && !y.is_empty() && y.iter().all(|&v| !in_x[v]);
    let y_min_neighbors = y.iter().all(|&v| g.neighbors(v).iter().filter(|&&w| in_x[w]).count() >= ell);
    let heavy: usize = x
        .iter()
        .filter(|&&u| order.right_neighbors(g, u).filter(|&w| in_x[w]).count() >= 4)
        .map(|&u| g.neighbors(u).iter().filter(|&&w| in_y[w]).count())
        .sum();
    let e_y = g.edges_within(&in_y);
    ClaimCheck {
        nonempty_disjoint,
        y_min_neighbors,
        z_bound: 7 * heavy <= ell * y.len(),
        x_bound: x.len() < 3 * y.len(),
        e_y_bound: e_y < 3 * y.len(),
    }
}

/// Everything the sparse pipeline produced, for auditing.
#[derive(Debug, Clone)]
pub struct SparseOutcome {
    pub cert: BipartiteCert,
    /// The vertex-minimal subgraph the sampler ran on, and its id map into the input.
    pub host: Graph,
    pub host_map: Vec<usize>,
    pub order: DegeneracyOrder,
    /// The accepted sample in host ids.
    pub sample: XYZSample,
    pub claim: ClaimCheck,
}

/// Minimum-degree guarantee of the sparse pipeline: `max(1, ⌈4ℓ/343⌉)`.
pub fn sparse_guarantee(ell: usize) -> usize {
    (4 * ell).div_ceil(343).max(1)
}

pub fn extract_sparse(g: &Graph, d: usize, seed: u64) -> Result<BipartiteCert, ExtractError> {
    let params = SparseParams::new(d)?;
    extract_sparse_with(g, &params, seed).map(|o| o.cert)
}

pub fn extract_sparse_with(g: &Graph, params: &SparseParams, seed: u64) -> Result<SparseOutcome, ExtractError> {
    require_triangle_free(g)?;
    let ell = params.ell;
    let mut trace = ExtractionTrace::new(seed, params.retry_budget);
    trace.note("log_base", "natural");
    trace.stat("d", params.d);
    trace.stat("ell", ell);

    let keep = minimal_min_degree_subgraph(g, params.d)?;
    let (host, host_map) = g.induced(&keep);
    let order = DegeneracyOrder::compute(&host);
    trace.stat("host_n", host.n());
    trace.stat("host_m", host.m());
    trace.stat("degeneracy", order.degeneracy());

    let (sample, retries) = find_good_xyz(&host, &order, params, seed)?;
    trace.retries = retries;
    trace.stat("accepted_seed_offset", retries);
    trace.stat("x", sample.x.len());
    trace.stat("y", sample.y.len());
    trace.stat("e_y", sample.e_y);
    trace.stat("z", sample.z.len());
    trace.stat("objective_x3ell", sample.scaled_objective(ell));
    trace.stat("clamped_p_u", sample.clamped);
    let claim = check_claim(&host, &order, &sample.x, &sample.y, ell);
    for (key, ok) in [
        ("claim_nonempty_disjoint", claim.nonempty_disjoint),
        ("claim_i", claim.y_min_neighbors),
        ("claim_ii", claim.z_bound),
        ("claim_iii", claim.x_bound),
        ("claim_iv", claim.e_y_bound),
    ] {
        trace.stat(key, ok as i64);
    }
    if !claim.all() {
        return Err(ExtractError::Internal(format!("accepted sample violates claim: {claim:?}")));
    }

    let n = host.n();
    let in_x = mask(n, &sample.x);
    let x0: Vec<usize> = sample
        .x
        .iter()
        .copied()
        .filter(|&u| order.right_neighbors(&host, u).filter(|&w| in_x[w]).count() >= 4)
        .collect();
    let in_x0 = mask(n, &x0);
    let x_rest: Vec<usize> = sample.x.iter().copied().filter(|&u| !in_x0[u]).collect();
    trace.stat("x0", x0.len());

    // G[X \ X0] is 3-degenerate under the inherited order
    let (xg, xmap) = host.induced(&x_rest);
    let xorder = order.restrict(&xg, &xmap);
    let coloring = greedy_color(&xg, &xorder);
    if coloring.count > 4 {
        return Err(ExtractError::Internal(format!("{} colors on X \\ X0", coloring.count)));
    }
    trace.stat("colors", coloring.count);
    let classes: Vec<Vec<usize>> =
        coloring.classes().into_iter().map(|c| c.into_iter().map(|i| xmap[i]).collect()).collect();

    // Y0: at least 3ℓ/7 edges into X0
    let y0: Vec<usize> = sample
        .y
        .iter()
        .copied()
        .filter(|&v| 7 * host.neighbors(v).iter().filter(|&&w| in_x0[w]).count() >= 3 * ell)
        .collect();
    let in_y0 = mask(n, &y0);
    trace.stat("y0", y0.len());
    let y_rest: Vec<usize> = sample.y.iter().copied().filter(|&v| !in_y0[v]).collect();
    let (yg, ymap) = host.induced(&y_rest);
    let y_prime: Vec<usize> = turan_independent_set(&yg).into_iter().map(|i| ymap[i]).collect();
    trace.stat("y_prime", y_prime.len());
    let in_yp = mask(n, &y_prime);

    // colour class maximizing 2e(X_i, Y') / (|X_i| + |Y'|)
    let mut best: Option<(usize, usize, usize)> = None; // (class, edges, size)
    for (i, class) in classes.iter().enumerate() {
        let e = host.edges_between(class, &in_yp);
        let better = match best {
            None => true,
            Some((_, be, bs)) => e * (bs + y_prime.len()) > be * (class.len() + y_prime.len()),
        };
        if better {
            best = Some((i, e, class.len()));
        }
    }
    let (ci, e_xy, xi_len) = best.ok_or_else(|| ExtractError::Internal("X \\ X0 is empty".into()))?;
    trace.stat("color_class", ci);
    trace.stat("x_i", xi_len);
    trace.stat("e_xi_yprime", e_xy);
    let conditions = x_rest.len() <= 3 * sample.y.len() && 15 * y_prime.len() >= sample.y.len();
    if conditions && 343 * 2 * e_xy < 8 * ell * (xi_len + y_prime.len()) {
        return Err(ExtractError::Internal("average degree of G[X_i, Y'] below 8ℓ/343".into()));
    }

    let part: Vec<usize> = classes[ci].iter().chain(&y_prime).copied().collect();
    let (bg, bmap) = host.induced(&part);
    let kept = half_avg_subgraph(&bg)?;
    let in_xi = mask(n, &classes[ci]);
    let (mut side_a, mut side_b) = (Vec::new(), Vec::new());
    for i in kept {
        let v = bmap[i];
        if in_xi[v] {
            side_a.push(host_map[v]);
        } else {
            side_b.push(host_map[v]);
        }
    }
    let mut cert = BipartiteCert::new("sparse", side_a, side_b, sparse_guarantee(ell), trace);
    let report = verify_bipartite_cert(g, &cert).map_err(|e| ExtractError::Internal(e.to_string()))?;
    if !report.passed {
        return Err(ExtractError::Internal(format!("certificate failed verification: {:?}", report.failure)));
    }
    cert.achieved_min_degree = Some(report.achieved_min_degree);
    Ok(SparseOutcome { cert, host, host_map, order, sample, claim })
}
