//! Greedy coloring against a degeneracy order and greedy (Turán-type) independent sets.

use std::collections::BTreeSet;

use crate::degeneracy::DegeneracyOrder;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    /// Vertices of each color class, in ascending id order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.count];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Colors vertices right-to-left; each vertex takes the lowest color absent from its
/// already-colored right neighbourhood, so at most `degeneracy + 1` colors are used.
pub fn greedy_color(g: &Graph, order: &DegeneracyOrder) -> Coloring {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut taken = vec![false; order.degeneracy() + 2];
    let mut count = 0;
    for &v in order.order().iter().rev() {
        for w in order.right_neighbors(g, v) {
            let c = colors[w];
            if c < taken.len() {
                taken[c] = true;
            }
        }
        let c = taken.iter().position(|&t| !t).expect("right degree bounded by degeneracy");
        colors[v] = c;
        count = count.max(c + 1);
        for w in order.right_neighbors(g, v) {
            let c = colors[w];
            if c < taken.len() {
                taken[c] = false;
            }
        }
    }
    Coloring { colors, count }
}

/// Repeatedly takes a minimum-degree vertex (lowest id on ties) of the remaining graph
/// and deletes its closed neighbourhood. The result has size at least `⌈n / (avg + 1)⌉`.
pub fn turan_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut out = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        out.push(v);
        gone[v] = true;
        let closed: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !gone[w]).collect();
        for &w in &closed {
            gone[w] = true;
            queue.remove(&(deg[w], w));
        }
        for &w in &closed {
            for &x in g.neighbors(w) {
                if !gone[x] {
                    queue.remove(&(deg[x], x));
                    deg[x] -= 1;
                    queue.insert((deg[x], x));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    let m = crate::graph::mask(g.n(), set);
    set.iter().all(|&v| g.neighbors(v).iter().all(|&w| !m[w]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::degeneracy_order;
    use crate::generators::named;

    #[test]
    fn coloring_examples() {
        let c5 = named::cycle(5);
        let col = greedy_color(&c5, &degeneracy_order(&c5));
        assert!(col.is_proper(&c5) && col.count <= 3);
        let k4 = named::complete(4);
        assert_eq!(greedy_color(&k4, &degeneracy_order(&k4)).count, 4);
        let tree = Graph::new(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let col = greedy_color(&tree, &degeneracy_order(&tree));
        assert!(col.is_proper(&tree) && col.count <= 2);
    }

    #[test]
    fn independent_set_examples() {
        let s = turan_independent_set(&named::cycle(5));
        assert!(s.len() >= 2 && is_independent(&named::cycle(5), &s));
        assert_eq!(turan_independent_set(&named::complete(4)).len(), 1);
        assert_eq!(turan_independent_set(&Graph::empty(6)).len(), 6);
    }
}
