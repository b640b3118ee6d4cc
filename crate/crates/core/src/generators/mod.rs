//! Hard-instance generators: blowups, random triangle-free graphs obtained by deleting
//! a maximal edge-disjoint triangle family from `G(n, p)`, the triangle-free process,
//! and the explicit Cayley graph on `GF(2^k)^3`.

pub mod named;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::degeneracy::core;
use crate::gf2k::Gf2k;
use crate::graph::Graph;
use crate::rng::{self, RNG_NAME};
use crate::triangles::list_triangles;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("blowup sizes: expected {expected} entries, got {got}")]
    SizeCount { expected: usize, got: usize },
    #[error("blowup size of vertex {vertex} is zero")]
    ZeroSize { vertex: usize },
    #[error("edge-density constant c = {0} must lie in (0, 1/20)")]
    DensityConstant(f64),
    #[error("n = {0} is below the supported minimum of 100")]
    TooSmall(usize),
    #[error("peeling at degree {threshold} emptied the graph (seed {seed})")]
    PeeledEmpty { threshold: usize, seed: u64 },
    #[error("alon graph needs 2 <= k <= 5, got {0}")]
    AlonDegree(u32),
    #[error("unknown base graph `{0}`")]
    UnknownBase(String),
}

/// Replaces vertex `v` by an independent set of `sizes[v]` vertices and every edge by
/// a complete bipartite graph. Blob `v` occupies a consecutive id range.
pub fn blowup(g: &Graph, sizes: &[usize]) -> Result<Graph, GenError> {
    if sizes.len() != g.n() {
        return Err(GenError::SizeCount { expected: g.n(), got: sizes.len() });
    }
    if let Some(vertex) = sizes.iter().position(|&s| s == 0) {
        return Err(GenError::ZeroSize { vertex });
    }
    let offsets = blob_offsets(sizes);
    let total = offsets[g.n()];
    let mut adj = vec![Vec::new(); total];
    for v in 0..g.n() {
        let mut nbrs = Vec::new();
        for &w in g.neighbors(v) {
            nbrs.extend(offsets[w]..offsets[w + 1]);
        }
        nbrs.sort_unstable();
        for x in offsets[v]..offsets[v + 1] {
            adj[x] = nbrs.clone();
        }
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Start offsets of each blob plus the total at the end.
pub fn blob_offsets(sizes: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for &s in sizes {
        acc += s;
        offsets.push(acc);
    }
    offsets
}

/// Blob index of every blown-up vertex.
pub fn blob_of(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().enumerate().flat_map(|(v, &s)| std::iter::repeat_n(v, s)).collect()
}

/// `n` split into `parts` sizes differing by at most one; larger parts go to smaller ids.
pub fn equal_sizes(n: usize, parts: usize) -> Vec<usize> {
    let (q, r) = (n / parts, n % parts);
    (0..parts).map(|i| q + usize::from(i < r)).collect()
}

/// Edge density `p = c / √n`.
pub fn gnp_density(n: usize, c: f64) -> f64 {
    c / (n as f64).sqrt()
}

/// Skip-sampled `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    if p > 0.0 && n >= 2 {
        let log_q = (-p).ln_1p();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.gen();
            let skip = if p >= 1.0 { 0.0 } else { ((-r).ln_1p() / log_q).floor() };
            w += 1 + skip.min(1e15) as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as usize, v));
            }
        }
    }
    Graph::new(n, edges).expect("sampled pairs are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TriangleRemoval {
    pub sampled_edges: usize,
    pub triangles: usize,
    pub family_size: usize,
}

/// Greedy maximal edge-disjoint triangle family in lexicographic scan order.
pub fn maximal_triangle_family(g: &Graph) -> Vec<[usize; 3]> {
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut family = Vec::new();
    for t @ [a, b, c] in list_triangles(g, None) {
        let es = [(a, b), (a, c), (b, c)];
        if es.iter().all(|e| !used.contains(e)) {
            used.extend(es);
            family.push(t);
        }
    }
    family
}

fn check_density(n: usize, c: f64) -> Result<(), GenError> {
    if !(c > 0.0 && c < 0.05) {
        return Err(GenError::DensityConstant(c));
    }
    if n < 100 {
        return Err(GenError::TooSmall(n));
    }
    Ok(())
}

/// `G(n, c/√n)` with every edge of a maximal edge-disjoint triangle family deleted.
pub fn gnp_triangle_removed(n: usize, c: f64, seed: u64) -> Result<Graph, GenError> {
    gnp_triangle_removed_with_stats(n, c, seed).map(|(g, _)| g)
}

pub fn gnp_triangle_removed_with_stats(n: usize, c: f64, seed: u64) -> Result<(Graph, TriangleRemoval), GenError> {
    check_density(n, c)?;
    let g = gnp(n, gnp_density(n, c), &mut rng::stream(seed, 0));
    let triangles = list_triangles(&g, None).len();
    let family = maximal_triangle_family(&g);
    let removed: HashSet<(usize, usize)> = family.iter().flat_map(|&[a, b, c]| [(a, b), (a, c), (b, c)]).collect();
    let h = Graph::new(n, g.edges().filter(|e| !removed.contains(e)).collect::<Vec<_>>()).unwrap();
    let stats = TriangleRemoval { sampled_edges: g.m(), triangles, family_size: family.len() };
    Ok((h, stats))
}

/// Peeling threshold for the sparse construction: keep degrees strictly above `pn/30`.
pub fn sparse_peel_threshold(n: usize, c: f64) -> usize {
    (gnp_density(n, c) * n as f64 / 30.0).floor() as usize + 1
}

/// [`gnp_triangle_removed`] followed by removal of vertices of degree at most `pn/30`,
/// relabelled to `0..|H'|`.
pub fn sparse_regular_construction(n: usize, c: f64, seed: u64) -> Result<Graph, GenError> {
    let h = gnp_triangle_removed(n, c, seed)?;
    let threshold = sparse_peel_threshold(n, c);
    let keep = core(&h, threshold);
    if keep.is_empty() {
        return Err(GenError::PeeledEmpty { threshold, seed });
    }
    Ok(h.induced(&keep).0)
}

/// Inserts uniformly random pairs, skipping those that would close a triangle, until
/// no pair is insertable. Scanning a uniformly random permutation of all pairs once is
/// the same process, since insertable pairs only ever become blocked.
pub fn triangle_free_process(n: usize, seed: u64) -> Graph {
    let words = n.div_ceil(64);
    let mut bits = vec![0u64; n * words];
    let mut pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng::stream(seed, 0));
    let mut edges = Vec::new();
    for (u, v) in pairs {
        let (u, v) = (u as usize, v as usize);
        let (ru, rv) = (&bits[u * words..(u + 1) * words], &bits[v * words..(v + 1) * words]);
        if ru.iter().zip(rv).any(|(a, b)| a & b != 0) {
            continue;
        }
        bits[u * words + v / 64] |= 1 << (v % 64);
        bits[v * words + u / 64] |= 1 << (u % 64);
        edges.push((u, v));
    }
    Graph::new(n, edges).unwrap()
}

/// Degree of the explicit Cayley graph on `2^{3k}` vertices: `2^{2k-2} - 2^{k-1}`.
pub fn alon_degree(k: u32) -> usize {
    (1usize << (2 * k - 2)) - (1usize << (k - 1))
}

/// Division of `GF(2^k)^*` into `W0` (size `2^{k-1} - 1`) and `W1` (size `2^{k-1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlonSplit {
    pub w1: Vec<u32>,
    pub rule: &'static str,
    /// `max |S0(y) S1(y)|` over characters `y` that are nonconstant on the generators,
    /// the largest nontrivial eigenvalue magnitude within a connected component.
    pub lambda: u64,
    /// Dimension of the span of the generators; the graph has `2^{3k - rank}` components.
    pub rank: u32,
}

/// `W1` is the set of `w` whose `w^7` has leading bit 1. When `3 | k`, `x ↦ x^7` is not a
/// bijection of `GF(2^k)^*`, so the leading bit of `w` itself is used. In that case
/// `w^5` is a Frobenius image of `w^3`, the generators span a proper subspace and the
/// graph is disconnected with bipartite components; an exhaustive check over all 35
/// splits at `k = 3` finds no split avoiding this.
pub fn alon_split(k: u32) -> AlonSplit {
    let field = Gf2k::new(k);
    let (e, rule) = if !k.is_multiple_of(3) { (7, "leading-bit-w7") } else { (1, "leading-bit-w") };
    let w1: Vec<u32> = (1..field.order()).filter(|&a| field.leading_bit(field.pow(a, e))).collect();
    let (lambda, rank) = split_lambda(k, &w1);
    AlonSplit { w1, rule, lambda, rank }
}

/// Within-component `λ` for every split of `GF(2^k)^*` with the sizes used by
/// [`alon_split`], in increasing bitmask order. Exhaustive; intended for `k ≤ 4`.
pub fn all_split_lambdas(k: u32) -> Vec<u64> {
    let q = Gf2k::new(k).order();
    (0u64..1 << (q - 1))
        .filter(|bits| bits.count_ones() == q / 2)
        .map(|bits| {
            let w1: Vec<u32> = (1..q).filter(|&a| bits >> (a - 1) & 1 == 1).collect();
            split_lambda(k, &w1).0
        })
        .collect()
}

fn embedding(field: &Gf2k, k: u32) -> impl Fn(u32) -> usize + '_ {
    move |w: u32| w as usize | (field.pow(w, 3) as usize) << k | (field.pow(w, 5) as usize) << (2 * k)
}

/// Largest within-component eigenvalue magnitude of the Cayley graph for this split,
/// via the characters of `Z_2^{3k}`, and the rank of the generator span.
fn split_lambda(k: u32, w1: &[u32]) -> (u64, u32) {
    let field = Gf2k::new(k);
    let embed = embedding(&field, k);
    let in_w1 = |a: u32| w1.binary_search(&a).is_ok();
    let (u0, u1): (Vec<usize>, Vec<usize>) = {
        let (a, b): (Vec<u32>, Vec<u32>) = (1..field.order()).partition(|&a| !in_w1(a));
        (a.into_iter().map(&embed).collect(), b.into_iter().map(&embed).collect())
    };
    let chi = |y: usize, set: &[usize]| -> i64 {
        set.iter().map(|&s| if (y & s).count_ones().is_multiple_of(2) { 1 } else { -1 }).sum()
    };
    let (mut lambda, mut annihilator) = (0, 1u32);
    for y in 1..1usize << (3 * k) {
        let (a, b) = (chi(y, &u0), chi(y, &u1));
        if a == u0.len() as i64 && b == u1.len() as i64 {
            annihilator += 1;
        } else {
            lambda = lambda.max((a * b).unsigned_abs());
        }
    }
    (lambda, 3 * k - annihilator.trailing_zeros())
}

/// The triangle-free Cayley graph of `Z_2^{3k}` whose generators are the sums
/// `u(w0) + u(w1)` with `u(w) = (w, w^3, w^5) ∈ GF(2^k)^3`, `w0 ∈ W0`, `w1 ∈ W1`
/// (see [`alon_split`]). No six distinct vectors `u(w)` sum to zero (BCH bound), so three
/// generators never do, and all generator sums are distinct.
pub fn alon_graph(k: u32) -> Result<Graph, GenError> {
    if !(2..=5).contains(&k) {
        return Err(GenError::AlonDegree(k));
    }
    let generators = alon_generators(k);
    let n = 1usize << (3 * k);
    let adj: Vec<Vec<usize>> = (0..n).map(|v| generators.iter().map(|&s| v ^ s).collect()).collect();
    Ok(Graph::from_adjacency_unchecked(adj))
}

pub fn alon_generators(k: u32) -> Vec<usize> {
    let field = Gf2k::new(k);
    let embed = embedding(&field, k);
    let split = alon_split(k);
    let (w1, w0): (Vec<u32>, Vec<u32>) = (1..field.order()).partition(|a| split.w1.binary_search(a).is_ok());
    let mut gens: Vec<usize> =
        w0.iter().flat_map(|&a| w1.iter().map(|&b| embed(a) ^ embed(b)).collect::<Vec<_>>()).collect();
    gens.sort_unstable();
    gens
}

/// Generator selection with provenance header lines.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorParams {
    Blowup { base: String, sizes: Vec<usize> },
    GnpTriangleFree { n: usize, c: f64, seed: u64 },
    SparseRegular { n: usize, c: f64, seed: u64 },
    Process { n: usize, seed: u64 },
    Alon { k: u32 },
}

impl GeneratorParams {
    pub fn model(&self) -> &'static str {
        match self {
            GeneratorParams::Blowup { .. } => "blowup",
            GeneratorParams::GnpTriangleFree { .. } => "gnp-tf",
            GeneratorParams::SparseRegular { .. } => "sparse-reg",
            GeneratorParams::Process { .. } => "process",
            GeneratorParams::Alon { .. } => "alon",
        }
    }

    pub fn generate(&self) -> Result<Graph, GenError> {
        match self {
            GeneratorParams::Blowup { base, sizes } => {
                let g = named::by_name(base).ok_or_else(|| GenError::UnknownBase(base.clone()))?;
                let sizes = if sizes.len() == 1 { vec![sizes[0]; g.n()] } else { sizes.clone() };
                blowup(&g, &sizes)
            }
            GeneratorParams::GnpTriangleFree { n, c, seed } => gnp_triangle_removed(*n, *c, *seed),
            GeneratorParams::SparseRegular { n, c, seed } => sparse_regular_construction(*n, *c, *seed),
            GeneratorParams::Process { n, seed } => Ok(triangle_free_process(*n, *seed)),
            GeneratorParams::Alon { k } => alon_graph(*k),
        }
    }

    /// `key: value` provenance lines (written as `#` comments ahead of the edge list).
    pub fn header(&self, g: &Graph) -> Vec<String> {
        let mut lines = vec![format!("model: {}", self.model())];
        match self {
            GeneratorParams::Blowup { base, sizes } => {
                lines.push(format!("base: {base}"));
                let s: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
                lines.push(format!("sizes: {}", s.join(",")));
            }
            GeneratorParams::GnpTriangleFree { n, c, seed } | GeneratorParams::SparseRegular { n, c, seed } => {
                lines.push(format!("n: {n}"));
                lines.push(format!("c: {c}"));
                lines.push(format!("p: {}", gnp_density(*n, *c)));
                lines.push(format!("seed: {seed}"));
                lines.push(format!("rng: {RNG_NAME}"));
            }
            GeneratorParams::Process { n, seed } => {
                lines.push(format!("n: {n}"));
                lines.push(format!("seed: {seed}"));
                lines.push(format!("rng: {RNG_NAME}"));
            }
            GeneratorParams::Alon { k } => {
                lines.push(format!("k: {k}"));
                lines.push(format!("field_modulus: {:#b}", Gf2k::new(*k).modulus()));
                let split = alon_split(*k);
                lines.push(format!("split: {}", split.rule));
                lines.push(format!("generator_rank: {}", split.rank));
                lines.push(format!("component_lambda: {}", split.lambda));
            }
        }
        lines.push(format!("vertices: {}", g.n()));
        lines.push(format!("edges: {}", g.m()));
        match g.regular_degree() {
            Some(d) => lines.push(format!("d: {d}")),
            None => lines.push(format!("min_degree: {}", g.min_degree())),
        }
        lines
    }
}
