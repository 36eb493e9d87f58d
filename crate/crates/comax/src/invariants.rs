//! Exact graph metrics computed by breadth-first search: distances,
//! eccentricities, diameter, radius, girth, and degree-based facts.
//!
//! Conventions for degenerate graphs: the empty and one-vertex graphs are
//! connected with diameter and radius 0; an acyclic graph has infinite
//! girth; the empty graph is complete and regular.

use crate::graph::AdjMatrix;
use serde::{Serialize, Serializer};
use std::collections::VecDeque;
use std::fmt;

/// A graph distance: a finite hop count or unreachable/absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Val(u64),
    Inf,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Val(d) => write!(f, "{d}"),
            Distance::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Val(d) => serializer.serialize_u64(*d),
            Distance::Inf => serializer.serialize_str("inf"),
        }
    }
}

/// Hop counts from `src`; `None` marks unreachable vertices.
pub fn bfs_distances(adj: &AdjMatrix, src: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; adj.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in adj.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn distance(adj: &AdjMatrix, u: usize, v: usize) -> Distance {
    match bfs_distances(adj, u)[v] {
        Some(d) => Distance::Val(d),
        None => Distance::Inf,
    }
}

pub fn eccentricities(adj: &AdjMatrix) -> Vec<Distance> {
    (0..adj.n())
        .map(|u| {
            let dist = bfs_distances(adj, u);
            if dist.iter().any(|d| d.is_none()) {
                Distance::Inf
            } else {
                Distance::Val(dist.into_iter().map(|d| d.unwrap()).max().unwrap())
            }
        })
        .collect()
}

pub fn diameter(adj: &AdjMatrix) -> Distance {
    eccentricities(adj)
        .into_iter()
        .max()
        .unwrap_or(Distance::Val(0))
}

pub fn radius(adj: &AdjMatrix) -> Distance {
    eccentricities(adj)
        .into_iter()
        .min()
        .unwrap_or(Distance::Val(0))
}

/// Vertices whose eccentricity equals the radius.
pub fn center(adj: &AdjMatrix) -> Vec<usize> {
    let ecc = eccentricities(adj);
    let r = ecc.iter().copied().min().unwrap_or(Distance::Val(0));
    (0..adj.n()).filter(|&i| ecc[i] == r).collect()
}

pub fn is_connected(adj: &AdjMatrix) -> bool {
    adj.n() <= 1 || bfs_distances(adj, 0).iter().all(|d| d.is_some())
}

/// Length of a shortest cycle. BFS from every root; the first non-tree
/// edge seen joins two vertices at depths a and b and closes a cycle of
/// length a + b + 1 through the root, and scanning all roots makes the
/// minimum exact.
pub fn girth(adj: &AdjMatrix) -> Distance {
    let mut best: Option<u64> = None;
    for root in 0..adj.n() {
        let mut dist = vec![None::<u64>; adj.n()];
        let mut parent = vec![usize::MAX; adj.n()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if let Some(b) = best {
                // No shorter cycle can appear deeper in this BFS.
                if 2 * du >= b {
                    break;
                }
            }
            for v in adj.neighbors(u) {
                match dist[v] {
                    None => {
                        dist[v] = Some(du + 1);
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    Some(dv) => {
                        if v != parent[u] && u != parent[v] {
                            let len = du + dv + 1;
                            if best.is_none_or(|b| len < b) {
                                best = Some(len);
                            }
                        }
                    }
                }
            }
        }
    }
    match best {
        Some(b) => Distance::Val(b),
        None => Distance::Inf,
    }
}

pub fn is_complete(adj: &AdjMatrix) -> bool {
    let n = adj.n();
    (0..n).all(|i| adj.degree(i) == n - 1) || n == 0
}

pub fn is_regular(adj: &AdjMatrix) -> bool {
    let n = adj.n();
    n == 0 || (1..n).all(|i| adj.degree(i) == adj.degree(0))
}

/// Does every vertex lie on at least one triangle?
pub fn every_vertex_on_triangle(adj: &AdjMatrix) -> bool {
    (0..adj.n()).all(|v| {
        adj.neighbors(v)
            .any(|u| adj.row(v).iter().zip(adj.row(u)).any(|(a, b)| a & b != 0))
    })
}

/// The BFS-level metrics bundle (solver-backed numbers like clique and
/// chromatic number live elsewhere).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub order: usize,
    pub size: usize,
    pub isolated_count: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub is_connected: bool,
    pub diameter: Distance,
    pub radius: Distance,
    pub girth: Distance,
    pub is_complete: bool,
    pub is_regular: bool,
    pub every_vertex_on_triangle: bool,
}

pub fn metrics(adj: &AdjMatrix) -> Metrics {
    let n = adj.n();
    let degrees: Vec<usize> = (0..n).map(|i| adj.degree(i)).collect();
    Metrics {
        order: n,
        size: degrees.iter().sum::<usize>() / 2,
        isolated_count: degrees.iter().filter(|&&d| d == 0).count(),
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        is_connected: is_connected(adj),
        diameter: diameter(adj),
        radius: radius(adj),
        girth: girth(adj),
        is_complete: is_complete(adj),
        is_regular: is_regular(adj),
        every_vertex_on_triangle: every_vertex_on_triangle(adj),
    }
}
