use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph whose vertices are seats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeatGraph {
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SeatGraph {
    /// Builds a graph on `n` vertices. Rejects self-loops, parallel edges and
    /// endpoints out of range. Edges are stored normalised as `(min, max)`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge between {} and {}",
                    e.0, e.1
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SeatGraph {
            edges: seen.into_iter().collect(),
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        SeatGraph {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Path on `k` vertices, `0 - 1 - ... - k-1`.
    pub fn path(k: usize) -> Self {
        Self::new(k, (1..k).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Cycle on `k >= 3` vertices.
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidGraph(format!(
                "a simple cycle needs at least 3 vertices, got {k}"
            )));
        }
        Self::new(k, (0..k).map(|i| (i, (i + 1) % k)))
    }

    /// Star with centre `0` and `leaves` leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|l| (0, l))).expect("star is simple")
    }

    pub fn clique(k: usize) -> Self {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        Self::new(k, edges).expect("clique is simple")
    }

    /// `pairs` disjoint copies of K2.
    pub fn matching(pairs: usize) -> Self {
        Self::new(2 * pairs, (0..pairs).map(|i| (2 * i, 2 * i + 1))).expect("matching is simple")
    }

    /// Disjoint union; vertices of `parts[i]` are shifted past those of `parts[..i]`.
    pub fn disjoint_union(parts: &[SeatGraph]) -> Self {
        let mut offset = 0;
        let mut edges = Vec::new();
        for g in parts {
            edges.extend(g.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
            offset += g.vertex_count();
        }
        Self::new(offset, edges).expect("union of simple graphs is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    K2,
    /// Includes the single isolated vertex.
    Path,
    /// Includes the triangle.
    Cycle,
    /// A centre joined to at least three leaves.
    Star,
    /// Complete graph on four or more vertices.
    Clique,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub kind: ComponentKind,
    pub size: usize,
    /// Vertices in walk order: paths from the lower-numbered end, cycles from
    /// the smallest vertex towards its smaller neighbour, stars centre first.
    /// Other kinds are listed in ascending order.
    pub order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    pub is_matching: bool,
    pub is_path_graph: bool,
    pub is_cycle_graph: bool,
    pub is_cluster_graph: bool,
    pub max_degree: usize,
    pub components: Vec<ComponentSummary>,
}

fn walk(g: &SeatGraph, start: usize, comp_len: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < comp_len {
        let next = g
            .neighbours(cur)
            .iter()
            .copied()
            .find(|&w| w != prev && w != start)
            .expect("walk stays inside a path or cycle");
        prev = cur;
        cur = next;
        order.push(cur);
    }
    order
}

fn summarize(g: &SeatGraph, comp: Vec<usize>) -> ComponentSummary {
    let k = comp.len();
    let degree_sum: usize = comp.iter().map(|&v| g.degree(v)).sum();
    let m = degree_sum / 2;
    let max_deg = comp.iter().map(|&v| g.degree(v)).max().unwrap_or(0);

    let (kind, order) = if k == 1 {
        (ComponentKind::Path, comp)
    } else if k == 2 {
        (ComponentKind::K2, comp)
    } else if m == k - 1 && max_deg <= 2 {
        let end = *comp
            .iter()
            .find(|&&v| g.degree(v) == 1)
            .expect("path has an end");
        (ComponentKind::Path, walk(g, end, k))
    } else if m == k && comp.iter().all(|&v| g.degree(v) == 2) {
        (ComponentKind::Cycle, walk(g, comp[0], k))
    } else if m == k - 1 && max_deg == k - 1 {
        let centre = *comp
            .iter()
            .find(|&&v| g.degree(v) == k - 1)
            .expect("star has a centre");
        let mut order = vec![centre];
        order.extend(comp.iter().copied().filter(|&v| v != centre));
        (ComponentKind::Star, order)
    } else if m == k * (k - 1) / 2 {
        (ComponentKind::Clique, comp)
    } else {
        (ComponentKind::Other, comp)
    };
    ComponentSummary {
        kind,
        size: k,
        order,
    }
}

pub fn classify_seat_graph(g: &SeatGraph) -> GraphClass {
    let comps: Vec<ComponentSummary> = g
        .components()
        .into_iter()
        .map(|c| summarize(g, c))
        .collect();
    let complete = |c: &ComponentSummary| {
        let m: usize = c.order.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        m == c.size * (c.size - 1) / 2
    };
    GraphClass {
        is_matching: comps.iter().all(|c| c.kind == ComponentKind::K2),
        is_path_graph: comps
            .iter()
            .all(|c| matches!(c.kind, ComponentKind::K2 | ComponentKind::Path)),
        is_cycle_graph: comps.iter().all(|c| c.kind == ComponentKind::Cycle),
        is_cluster_graph: comps.iter().all(complete),
        max_degree: g.max_degree(),
        components: comps,
    }
}
