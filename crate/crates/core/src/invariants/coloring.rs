//! Exact vertex, edge and total colorings by backtracking.
//!
//! Every search colors its elements in a fixed order (ascending vertex label,
//! then edges in lexicographic order) and only opens one new color at a time,
//! so results are deterministic.

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

use super::structure::max_degree;

/// Conflict structure: `earlier[i]` lists the conflicting elements `j < i`.
struct Conflicts {
    earlier: Vec<Vec<usize>>,
}

impl Conflicts {
    fn new(len: usize) -> Self {
        Conflicts { earlier: vec![Vec::new(); len] }
    }

    fn add(&mut self, a: usize, b: usize) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.earlier[hi].push(lo);
    }

    fn colorable(&self, k: usize) -> bool {
        let len = self.earlier.len();
        if len == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let mut color = vec![usize::MAX; len];
        self.extend(0, 0, k, &mut color)
    }

    fn extend(&self, i: usize, used: usize, k: usize, color: &mut [usize]) -> bool {
        if i == color.len() {
            return true;
        }
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if self.earlier[i].iter().all(|&j| color[j] != c) {
                color[i] = c;
                if self.extend(i + 1, used.max(c + 1), k, color) {
                    return true;
                }
            }
        }
        color[i] = usize::MAX;
        false
    }

    fn min_colors(&self, from: usize) -> usize {
        (from..).find(|&k| self.colorable(k)).expect("len colors always suffice")
    }
}

fn vertex_conflicts(g: &Graph) -> Conflicts {
    let mut c = Conflicts::new(g.order());
    for e in g.edges() {
        c.add(e.u(), e.v());
    }
    c
}

fn edge_conflicts(g: &Graph) -> Conflicts {
    let edges = g.edges();
    let mut c = Conflicts::new(edges.len());
    for (i, a) in edges.iter().enumerate() {
        for (j, b) in edges.iter().enumerate().take(i) {
            if a.u() == b.u() || a.u() == b.v() || a.v() == b.u() || a.v() == b.v() {
                c.add(i, j);
            }
        }
    }
    c
}

/// Vertices `0..n`, then edge `i` as element `n + i`.
fn total_conflicts(g: &Graph) -> Conflicts {
    let n = g.order();
    let edges = edge_conflicts(g);
    let mut c = Conflicts::new(n + g.size());
    for u in 0..n {
        for v in BitIter(g.neighbors(u)) {
            if v < u {
                c.add(u, v);
            }
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        c.add(n + i, e.u());
        c.add(n + i, e.v());
        for &j in &edges.earlier[i] {
            c.add(n + i, n + j);
        }
    }
    c
}

pub fn chromatic_number(g: &Graph) -> usize {
    if g.is_null() {
        return 0;
    }
    let lower = if g.is_edgeless() { 1 } else { 2 };
    vertex_conflicts(g).min_colors(lower)
}

/// Tries `Δ` then `Δ + 1` colors.
pub fn edge_chromatic_number(g: &Graph) -> Result<usize> {
    if g.is_edgeless() {
        return Ok(0);
    }
    let delta = max_degree(g);
    let c = edge_conflicts(g);
    if c.colorable(delta) {
        Ok(delta)
    } else if c.colorable(delta + 1) {
        Ok(delta + 1)
    } else {
        Err(Error::Internal(format!("no edge coloring with {} colors; Vizing bound violated", delta + 1)))
    }
}

/// Searches upward from `Δ + 1`.
pub fn total_chromatic_number(g: &Graph) -> usize {
    if g.is_null() {
        return 0;
    }
    total_conflicts(g).min_colors(max_degree(g) + 1)
}

/// Whether `g` has a proper total coloring with `k` colors.
pub fn total_colorable(g: &Graph, k: usize) -> bool {
    total_conflicts(g).colorable(k)
}
