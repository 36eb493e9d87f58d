//! Exact planarity testing.
//!
//! A graph is planar exactly when each of its biconnected components is,
//! so the test splits the graph with a lowpoint DFS and runs Demoucron's
//! face-embedding algorithm per component: start from a cycle, then
//! repeatedly embed a path of some remaining fragment into a face whose
//! boundary carries all of the fragment's attachment vertices. A fragment
//! with no admissible face certifies non-planarity; embedding everything
//! certifies planarity.

use crate::graph::AdjMatrix;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub fn is_planar(adj: &AdjMatrix) -> bool {
    biconnected_components(adj)
        .iter()
        .all(|comp| bicomp_planar(comp))
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Edge lists of the biconnected components (lowpoint DFS with an edge
/// stack). Bridges come out as single-edge components; isolated vertices
/// appear in none.
fn biconnected_components(adj: &AdjMatrix) -> Vec<Vec<(usize, usize)>> {
    const UNSET: usize = usize::MAX;
    struct State<'a> {
        adj: &'a AdjMatrix,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut State, u: usize, parent: usize) {
        s.disc[u] = s.time;
        s.low[u] = s.time;
        s.time += 1;
        let neighbors: Vec<usize> = s.adj.neighbors(u).collect();
        for v in neighbors {
            if s.disc[v] == UNSET {
                s.stack.push((u, v));
                dfs(s, v, u);
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut comp = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        comp.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.out.push(comp);
                }
            } else if v != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let mut state = State {
        adj,
        disc: vec![UNSET; adj.n()],
        low: vec![0; adj.n()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for root in 0..adj.n() {
        if state.disc[root] == UNSET {
            dfs(&mut state, root, UNSET);
        }
    }
    state.out
}

/// A connected piece of the graph not yet embedded: either a chord between
/// two embedded vertices, or a component of unembedded vertices together
/// with the embedded vertices it touches.
struct Fragment {
    attachments: BTreeSet<usize>,
    interior: BTreeSet<usize>,
    chord: Option<(usize, usize)>,
}

fn bicomp_planar(edges: &[(usize, usize)]) -> bool {
    // Relabel the component's vertices to 0..n.
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let edges: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| norm(index[&u], index[&v]))
        .collect();
    let m = edges.len();

    // Every subdivision of K5 has >= 10 edges and of K_{3,3} >= 9, so
    // anything with at most 8 edges is planar outright.
    if m <= 8 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }

    let mut adj_list: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in &edges {
        adj_list[u].insert(v);
        adj_list[v].insert(u);
    }

    let cycle = find_cycle(n, &adj_list);
    let mut in_h = vec![false; n];
    let mut embedded: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        in_h[cycle[i]] = true;
        embedded.insert(norm(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    // The starting cycle bounds both of its sides.
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    while embedded.len() < m {
        let frags = fragments(n, &adj_list, &in_h, &embedded);
        debug_assert!(!frags.is_empty());

        // Find each fragment's admissible faces. Any fragment without one
        // proves non-planarity; otherwise a fragment with the fewest
        // admissible faces is the safe (forced-first) choice.
        let mut choice: Option<(usize, usize, usize)> = None; // (count, frag, face)
        for (fi, frag) in frags.iter().enumerate() {
            let mut count = 0;
            let mut first_face = usize::MAX;
            for (i, face) in faces.iter().enumerate() {
                if frag.attachments.iter().all(|a| face.contains(a)) {
                    count += 1;
                    if first_face == usize::MAX {
                        first_face = i;
                    }
                }
            }
            if count == 0 {
                return false;
            }
            if choice.is_none_or(|(c, _, _)| count < c) {
                choice = Some((count, fi, first_face));
            }
        }
        let (_, fi, face_idx) = choice.unwrap();
        let path = alpha_path(&frags[fi], &adj_list, &in_h);
        debug_assert!(path.len() >= 2 && path[0] != *path.last().unwrap());

        for w in path.windows(2) {
            embedded.insert(norm(w[0], w[1]));
        }
        for &v in &path[1..path.len() - 1] {
            in_h[v] = true;
        }
        let (f1, f2) = split_face(&faces[face_idx], &path);
        faces[face_idx] = f1;
        faces.push(f2);
    }
    true
}

/// Some cycle of a biconnected graph with at least one, via DFS back edge.
fn find_cycle(n: usize, adj_list: &[BTreeSet<usize>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    fn dfs(
        adj_list: &[BTreeSet<usize>],
        u: usize,
        parent: &mut Vec<usize>,
        disc: &mut Vec<usize>,
        time: &mut usize,
    ) -> Option<(usize, usize)> {
        disc[u] = *time;
        *time += 1;
        for &v in &adj_list[u] {
            if disc[v] == UNSET {
                parent[v] = u;
                if let Some(found) = dfs(adj_list, v, parent, disc, time) {
                    return Some(found);
                }
            } else if v != parent[u] && disc[v] < disc[u] {
                return Some((u, v));
            }
        }
        None
    }
    let mut parent = vec![UNSET; n];
    let mut disc = vec![UNSET; n];
    let (u, v) = dfs(adj_list, 0, &mut parent, &mut disc, &mut 0)
        .expect("biconnected component with >= 9 edges contains a cycle");
    // Walk u back up to v along tree edges.
    let mut cycle = vec![u];
    let mut w = u;
    while w != v {
        w = parent[w];
        cycle.push(w);
    }
    cycle
}

fn fragments(
    n: usize,
    adj_list: &[BTreeSet<usize>],
    in_h: &[bool],
    embedded: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    // Chords: unembedded edges with both ends embedded.
    for u in 0..n {
        for &v in adj_list[u].iter().filter(|&&v| v > u) {
            if in_h[u] && in_h[v] && !embedded.contains(&(u, v)) {
                out.push(Fragment {
                    attachments: BTreeSet::from([u, v]),
                    interior: BTreeSet::new(),
                    chord: Some((u, v)),
                });
            }
        }
    }
    // Components of unembedded vertices plus their embedded neighbors.
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut interior = BTreeSet::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            interior.insert(u);
            for &v in &adj_list[u] {
                if in_h[v] {
                    attachments.insert(v);
                } else if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        debug_assert!(
            attachments.len() >= 2,
            "fragments of a biconnected graph attach at two or more vertices"
        );
        out.push(Fragment {
            attachments,
            interior,
            chord: None,
        });
    }
    out
}

/// A path through the fragment connecting two distinct attachment
/// vertices, with all interior vertices unembedded.
fn alpha_path(frag: &Fragment, adj_list: &[BTreeSet<usize>], in_h: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = *frag.attachments.iter().next().unwrap();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &v in adj_list[a].iter().filter(|v| frag.interior.contains(v)) {
        parent.entry(v).or_insert(a);
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        for &w in &adj_list[u] {
            if in_h[w] && w != a {
                // Reached another attachment: unwind the path.
                let mut path = vec![w, u];
                let mut x = u;
                while x != a {
                    x = parent[&x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
            if frag.interior.contains(&w) && !parent.contains_key(&w) && w != a {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment has >= 2 attachments, so a connecting path exists")
}

/// Split a face (a boundary cycle, each vertex once) along an embedded
/// path between two boundary vertices.
fn split_face(boundary: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let i = boundary.iter().position(|&x| x == a).unwrap();
    let j = boundary.iter().position(|&x| x == b).unwrap();
    let len = boundary.len();
    let mut arc1 = Vec::new();
    let mut k = i;
    loop {
        arc1.push(boundary[k]);
        if k == j {
            break;
        }
        k = (k + 1) % len;
    }
    let mut arc2 = Vec::new();
    k = j;
    loop {
        arc2.push(boundary[k]);
        if k == i {
            break;
        }
        k = (k + 1) % len;
    }
    let interior = &path[1..path.len() - 1];
    let mut f1 = arc1;
    f1.extend(interior.iter().rev());
    let mut f2 = arc2;
    f2.extend(interior.iter());
    (f1, f2)
}
