//! Exhaustive oracles shared by the integration tests. Everything here is deliberately
//! naive and independent of the library's algorithms.
#![allow(dead_code)]

use dibs_core::Graph;
use rand::Rng;

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn adj(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn members(n: usize, s: u32) -> Vec<usize> {
    (0..n).filter(|&v| s >> v & 1 == 1).collect()
}

/// Max over nonempty vertex subsets of the induced minimum degree.
pub fn brute_degeneracy(g: &Graph) -> usize {
    let a = adj(g);
    let n = g.n();
    let mut best = 0;
    for s in 1u32..1 << n {
        let vs = members(n, s);
        let md = vs.iter().map(|&u| vs.iter().filter(|&&w| a[u][w]).count()).min().unwrap();
        best = best.max(md);
    }
    best
}

pub fn brute_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let a = adj(g);
    let n = g.n();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if a[x][y] && a[y][z] && a[x][z] {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Number of 4-cycles containing the edge `uv`, by enumerating the other two vertices.
pub fn brute_c4_through(g: &Graph, u: usize, v: usize) -> usize {
    let a = adj(g);
    let n = g.n();
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            // cycle u - v - y - x - u
            if [u, v].contains(&x) || [u, v].contains(&y) || x == y {
                continue;
            }
            if a[v][y] && a[y][x] && a[x][u] {
                count += 1;
            }
        }
    }
    count
}

pub fn brute_alpha(g: &Graph) -> usize {
    let a = adj(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| {
            let vs = members(n, s);
            vs.iter().all(|&x| vs.iter().all(|&y| !a[x][y]))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Direct reading of the certificate definition: sides disjoint and repetition-free,
/// no edge inside a side, every member has at least `k` neighbours on the other side.
pub fn brute_cert_valid(g: &Graph, a_side: &[usize], b_side: &[usize], k: usize) -> bool {
    let adj = adj(g);
    let mut all: Vec<usize> = a_side.iter().chain(b_side).copied().collect();
    let len = all.len();
    all.sort();
    all.dedup();
    if all.len() != len || all.iter().any(|&v| v >= g.n()) {
        return false;
    }
    if k > 0 && len == 0 {
        return false;
    }
    for (s, t) in [(a_side, b_side), (b_side, a_side)] {
        for &x in s {
            if s.iter().any(|&y| adj[x][y]) {
                return false;
            }
            if t.iter().filter(|&&y| adj[x][y]).count() < k {
                return false;
            }
        }
    }
    true
}

/// Two-colourability of `G[vs]` by breadth-first search.
pub fn is_bipartite_on(g: &Graph, vs: &[usize]) -> bool {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in vs {
        inside[v] = true;
    }
    let mut color = vec![u8::MAX; n];
    for &s in vs {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !inside[y] {
                    continue;
                }
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    queue.push_back(y);
                } else if color[y] == color[x] {
                    return false;
                }
            }
        }
    }
    true
}
