//! g-curve and f-curve sweeps.
//!
//! Each cell `(n, d or m, model, seed)` is an independent job. Rows are collected,
//! sorted and then written, so the worker pool never changes the output bytes. While the
//! sweep runs, finished rows are appended to `<out>.partial`, which is removed once the
//! sorted file is in place.

use std::fs::File;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use dibs_core::degeneracy::core;
use dibs_core::dense::{extract_dense_c4, extract_dense_pair, PairSearch};
use dibs_core::generators::{blowup, equal_sizes, named, GeneratorParams};
use dibs_core::spectral::best_color_pair;
use dibs_core::{extract_sparse, verify_bipartite_cert, BipartiteCert, Graph};
use rayon::prelude::*;

use crate::CliError;

pub const COLUMNS: [&str; 8] = ["n", "d_or_m", "model", "seed", "algo", "guarantee", "achieved", "runtime_ms"];

/// Bases tried by the blowup model, smallest first.
pub const BLOWUP_BASES: [&str; 4] = ["c5", "petersen", "clebsch", "alon3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    G,
    F,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Row {
    pub n: usize,
    pub d_or_m: usize,
    pub model: String,
    pub seed: u64,
    pub algo: String,
    pub guarantee: usize,
    pub achieved: usize,
    pub runtime_ms: u64,
}

impl Row {
    fn record(&self) -> [String; 8] {
        [
            self.n.to_string(),
            self.d_or_m.to_string(),
            self.model.clone(),
            self.seed.to_string(),
            self.algo.clone(),
            self.guarantee.to_string(),
            self.achieved.to_string(),
            self.runtime_ms.to_string(),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub curve: Curve,
    pub ns: Vec<usize>,
    /// Degree targets for the g-curve; ignored by the f-curve.
    pub ds: Vec<usize>,
    pub models: Vec<String>,
    pub seeds: Vec<u64>,
    /// Fixed blowup base; chosen per cell when `None`.
    pub base: Option<String>,
    /// Edge-density constant for the random models.
    pub c: f64,
    pub timing: bool,
    pub cert_dir: Option<PathBuf>,
}

/// Parses `1,2,5..8` style lists. The empty string is the empty list.
pub fn parse_list<T>(s: &str) -> Result<Vec<T>, CliError>
where
    T: std::str::FromStr + Copy + std::ops::Add<Output = T> + PartialOrd + From<u8>,
{
    let bad = || CliError::Usage(format!("bad list `{s}`"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b): (T, T) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            let mut x = a;
            while x < b {
                out.push(x);
                x = x + T::from(1);
            }
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

/// Blowup base for an `n`-vertex instance of minimum degree at least `d`: the largest
/// base `H` with `⌊n/|H|⌋·δ(H) ≥ d`.
pub fn choose_base(n: usize, d: usize) -> Option<&'static str> {
    BLOWUP_BASES.iter().rev().copied().find(|name| {
        let h = named::by_name(name).expect("known base");
        n >= h.n() && (n / h.n()) * h.min_degree() >= d
    })
}

struct Instance {
    graph: Graph,
    text_header: Vec<String>,
}

fn instance(model: &str, n: usize, d: usize, seed: u64, sweep: &Sweep) -> Result<Option<Instance>, CliError> {
    let params = match model {
        "blowup" => {
            let base = match &sweep.base {
                Some(b) => b.clone(),
                None => match choose_base(n, d) {
                    Some(b) => b.to_string(),
                    None => return Ok(None),
                },
            };
            let h = named::by_name(&base).ok_or_else(|| CliError::Usage(format!("unknown base `{base}`")))?;
            if n < h.n() {
                return Ok(None);
            }
            let sizes = equal_sizes(n, h.n());
            let graph = blowup(&h, &sizes)?;
            let params = GeneratorParams::Blowup { base, sizes };
            let text_header = params.header(&graph);
            return Ok(Some(Instance { graph, text_header }));
        }
        "gnp-tf" => GeneratorParams::GnpTriangleFree { n, c: sweep.c, seed },
        "sparse-reg" => GeneratorParams::SparseRegular { n, c: sweep.c, seed },
        "process" => GeneratorParams::Process { n, seed },
        "alon" => {
            let k = (2..=5u32).find(|&k| 1usize << (3 * k) == n);
            match k {
                Some(k) => GeneratorParams::Alon { k },
                None => return Ok(None),
            }
        }
        other => return Err(CliError::Usage(format!("unknown model `{other}`"))),
    };
    let graph = params.generate()?;
    let text_header = params.header(&graph);
    Ok(Some(Instance { graph, text_header }))
}

struct Attempt {
    algo: &'static str,
    cert: BipartiteCert,
    guarantee: usize,
    achieved: usize,
}

fn verified(g: &Graph, algo: &'static str, cert: BipartiteCert, guarantee: impl Fn(&BipartiteCert) -> usize, value: impl Fn(usize, usize) -> usize) -> Option<Attempt> {
    let rep = verify_bipartite_cert(g, &cert).ok()?;
    rep.passed.then(|| Attempt {
        algo,
        guarantee: guarantee(&cert),
        achieved: value(rep.achieved_min_degree, rep.edges_across),
        cert,
    })
}

/// Best verified minimum degree over the extractors that apply at degree `d`.
fn g_attempts(g: &Graph, d: usize, seed: u64) -> Vec<Attempt> {
    let md = |a: usize, _| a;
    let claimed = |c: &BipartiteCert| c.claimed_min_degree;
    let mut out = Vec::new();
    if let Ok(c) = extract_dense_pair(g, d, PairSearch::Exhaustive, seed) {
        out.extend(verified(g, "dense-pair", c, claimed, md));
    }
    if let Ok(c) = extract_dense_c4(g) {
        out.extend(verified(g, "dense-c4", c, claimed, md));
    }
    if d >= 16 {
        if let Ok(c) = extract_sparse(g, d, seed) {
            out.extend(verified(g, "sparse", c, claimed, md));
        }
    }
    out
}

/// Best verified induced bipartite edge count.
fn f_attempts(g: &Graph, seed: u64) -> Vec<Attempt> {
    let edges = |_, e: usize| e;
    let from_degree = |c: &BipartiteCert| (c.claimed_min_degree * c.vertices().len()).div_ceil(2);
    let mut out = Vec::new();
    if let Ok(c) = best_color_pair(g) {
        out.extend(verified(g, "color-pair", c, |c| c.trace.get("edge_guarantee").unwrap_or(0) as usize, edges));
    }
    let d = g.min_degree();
    if d >= 1 {
        if let Ok(c) = extract_dense_pair(g, d, PairSearch::Exhaustive, seed) {
            out.extend(verified(g, "dense-pair", c, from_degree, edges));
        }
    }
    if let Ok(c) = extract_dense_c4(g) {
        out.extend(verified(g, "dense-c4", c, from_degree, edges));
    }
    out
}

fn run_cell(model: &str, n: usize, d: Option<usize>, seed: u64, sweep: &Sweep) -> Result<Option<Row>, CliError> {
    let start = Instant::now();
    let Some(inst) = instance(model, n, d.unwrap_or(0), seed, sweep)? else {
        return Ok(None);
    };
    let mut g = inst.graph;
    let mut header = inst.text_header;
    if let Some(d) = d {
        if g.min_degree() < d {
            let keep = core(&g, d);
            if keep.is_empty() {
                return Ok(None);
            }
            header.push(format!("restricted to the {d}-core of the generated graph"));
            g = g.induced(&keep).0;
        }
    }
    let attempts = match d {
        Some(d) => g_attempts(&g, d, seed),
        None => f_attempts(&g, seed),
    };
    // first of the best in extractor order
    let Some(best) = attempts.into_iter().reduce(|a, b| if b.achieved > a.achieved { b } else { a }) else {
        return Ok(None);
    };
    let d_or_m = d.unwrap_or(g.m());
    if let Some(dir) = &sweep.cert_dir {
        let stem = format!("{model}-n{n}-{}{d_or_m}-s{seed}", if d.is_some() { "d" } else { "m" });
        write_file(&dir.join(format!("{stem}.el")), &g.to_text(&header))?;
        write_file(&dir.join(format!("{stem}.cert")), &best.cert.to_document())?;
    }
    Ok(Some(Row {
        n: g.n(),
        d_or_m,
        model: model.to_string(),
        seed,
        algo: best.algo.to_string(),
        guarantee: best.guarantee,
        achieved: best.achieved,
        runtime_ms: if sweep.timing { start.elapsed().as_millis() as u64 } else { 0 },
    }))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Runs the sweep and returns sorted rows. Finished rows are also appended to
/// `partial`, if given, as they complete.
pub fn run(sweep: &Sweep, partial: Option<&Path>) -> Result<Vec<Row>, CliError> {
    if let Some(dir) = &sweep.cert_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
    }
    let mut cells: Vec<(String, usize, Option<usize>, u64)> = Vec::new();
    for model in &sweep.models {
        for &n in &sweep.ns {
            for &seed in &sweep.seeds {
                match sweep.curve {
                    Curve::G => cells.extend(sweep.ds.iter().map(|&d| (model.clone(), n, Some(d), seed))),
                    Curve::F => cells.push((model.clone(), n, None, seed)),
                }
            }
        }
    }
    let sink = match partial {
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::Io { path: p.into(), source })?;
            let mut w = csv::Writer::from_writer(file);
            w.write_record(COLUMNS)?;
            w.flush().map_err(|source| CliError::Io { path: p.into(), source })?;
            Some(Mutex::new(w))
        }
        None => None,
    };
    let mut rows: Vec<Row> = cells
        .par_iter()
        .map(|(model, n, d, seed)| {
            let row = run_cell(model, *n, *d, *seed, sweep)?;
            if let (Some(row), Some(sink)) = (&row, &sink) {
                let mut w = sink.lock().expect("writer lock");
                w.write_record(row.record())?;
                let _ = w.flush();
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?
        .into_iter()
        .flatten()
        .collect();
    rows.sort();
    Ok(rows)
}

pub fn to_csv(rows: &[Row]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}
