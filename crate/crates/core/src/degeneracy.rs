//! Degeneracy orderings and peeling.
//!
//! All peeling routines remove vertices of low degree until none is left; the surviving
//! set does not depend on removal order. Where an order matters (the degeneracy order
//! itself) ties are broken by the lowest vertex id.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("the {d}-core is empty")]
    EmptyCore { d: usize },
}

/// A left-to-right vertex ordering together with right-degrees `|N⁺(v)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    order: Vec<usize>,
    position: Vec<usize>,
    right_degree: Vec<usize>,
    degeneracy: usize,
}

impl DegeneracyOrder {
    /// Repeated removal of a minimum-degree vertex (lowest id on ties); removed
    /// vertices are appended on the right end of the removed prefix.
    pub fn compute(g: &Graph) -> DegeneracyOrder {
        let n = g.n();
        let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while let Some((_, v)) = queue.pop_first() {
            removed[v] = true;
            order.push(v);
            for &w in g.neighbors(v) {
                if !removed[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        Self::from_order(g, order)
    }

    /// Wraps an arbitrary permutation of `0..n`.
    pub fn from_order(g: &Graph, order: Vec<usize>) -> DegeneracyOrder {
        assert_eq!(order.len(), g.n(), "order must be a permutation of the vertex set");
        let mut position = vec![usize::MAX; g.n()];
        for (i, &v) in order.iter().enumerate() {
            assert_eq!(position[v], usize::MAX, "vertex {v} repeated in order");
            position[v] = i;
        }
        let right_degree: Vec<usize> = (0..g.n())
            .map(|v| g.neighbors(v).iter().filter(|&&w| position[w] > position[v]).count())
            .collect();
        let degeneracy = right_degree.iter().copied().max().unwrap_or(0);
        DegeneracyOrder { order, position, right_degree, degeneracy }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn right_degree(&self, v: usize) -> usize {
        self.right_degree[v]
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy
    }

    /// `N⁺(v)`: the neighbours of `v` occurring later in the order.
    pub fn right_neighbors<'a>(&'a self, g: &'a Graph, v: usize) -> impl Iterator<Item = usize> + 'a {
        let pv = self.position[v];
        g.neighbors(v).iter().copied().filter(move |&w| self.position[w] > pv)
    }

    /// The induced order on a subgraph produced by [`Graph::induced`] with id map `map`.
    pub fn restrict(&self, sub: &Graph, map: &[usize]) -> DegeneracyOrder {
        let mut local: Vec<usize> = (0..map.len()).collect();
        local.sort_by_key(|&i| self.position[map[i]]);
        DegeneracyOrder::from_order(sub, local)
    }
}

pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    DegeneracyOrder::compute(g)
}

/// Peels vertices of degree `< t` inside `alive`, in place.
pub(crate) fn peel_in_place(g: &Graph, alive: &mut [bool], t: usize) {
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| if alive[v] { g.neighbors(v).iter().filter(|&&w| alive[w]).count() } else { 0 })
        .collect();
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| alive[v] && deg[v] < t).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < t {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
}

fn members(alive: &[bool]) -> Vec<usize> {
    alive.iter().enumerate().filter_map(|(v, &a)| a.then_some(v)).collect()
}

/// The `t`-core: the maximal vertex set inducing minimum degree `≥ t` (possibly empty).
pub fn core(g: &Graph, t: usize) -> Vec<usize> {
    let mut alive = vec![true; g.n()];
    peel_in_place(g, &mut alive, t);
    members(&alive)
}

/// The `t`-core of `g[subset]`, in original ids.
pub fn core_within(g: &Graph, subset: &[usize], t: usize) -> Vec<usize> {
    let mut alive = crate::graph::mask(g.n(), subset);
    peel_in_place(g, &mut alive, t);
    members(&alive)
}

/// Peels vertices of degree below half the average degree `m/n`, fixed at entry.
/// The comparison `deg < m/n` is done as `deg·n < m`.
pub fn half_avg_subgraph(g: &Graph) -> Result<Vec<usize>, PeelError> {
    if g.m() == 0 {
        return Err(PeelError::NoEdges);
    }
    let (n, m) = (g.n(), g.m());
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let low = |d: usize| d * n < m;
    let mut stack: Vec<usize> = (0..n).filter(|&v| low(deg[v])).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if low(deg[w]) {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
    let out = members(&alive);
    debug_assert!(!out.is_empty());
    Ok(out)
}

/// A vertex-minimal set inducing minimum degree `≥ d`: removing any single member and
/// re-peeling at `d` leaves nothing. Such a set induces a `d`-degenerate graph.
///
/// Vertices are tried in ascending id order; a failed candidate never succeeds later
/// because cores are monotone under taking subsets.
pub fn minimal_min_degree_subgraph(g: &Graph, d: usize) -> Result<Vec<usize>, PeelError> {
    let mut alive = vec![true; g.n()];
    peel_in_place(g, &mut alive, d);
    if !alive.iter().any(|&a| a) {
        return Err(PeelError::EmptyCore { d });
    }
    let mut trial = alive.clone();
    for v in 0..g.n() {
        if !alive[v] {
            continue;
        }
        trial.copy_from_slice(&alive);
        trial[v] = false;
        peel_in_place(g, &mut trial, d);
        if trial.iter().any(|&a| a) {
            alive.copy_from_slice(&trial);
        }
    }
    Ok(members(&alive))
}
