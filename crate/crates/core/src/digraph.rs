//! Reachability helpers for small directed multigraphs given as edge lists.

use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;

fn build(n: usize, edges: &[(usize, usize)]) -> DiGraph<(), ()> {
    let mut g = DiGraph::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for &(a, b) in edges {
        g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    g
}

pub fn strongly_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    n == 0 || petgraph::algo::kosaraju_scc(&build(n, edges)).len() == 1
}

/// Weak components, each sorted, ordered by smallest member.
pub fn weak_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for v in 0..n {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Vertices reachable from `start` along directed edges.
pub(crate) fn reach(n: usize, edges: &[(usize, usize)], start: usize) -> Vec<bool> {
    let g = build(n, edges);
    let mut seen = vec![false; n];
    let mut dfs = petgraph::visit::Dfs::new(&g, NodeIndex::new(start));
    while let Some(v) = dfs.next(&g) {
        seen[v.index()] = true;
    }
    seen
}

pub fn weakly_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    weak_components(n, edges).len() <= 1
}

/// A perfect matching between `0..m` on each side using only `candidates`
/// pairs `(left, right)`, as the right partner of each left index.
pub fn perfect_matching(m: usize, candidates: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut g = petgraph::graph::UnGraph::<(), ()>::with_capacity(2 * m, candidates.len());
    for _ in 0..2 * m {
        g.add_node(());
    }
    for &(a, b) in candidates {
        g.add_edge(NodeIndex::new(a), NodeIndex::new(m + b), ());
    }
    let matching = petgraph::algo::maximum_matching(&g);
    if !matching.is_perfect() {
        return None;
    }
    (0..m).map(|a| matching.mate(NodeIndex::new(a)).map(|b| b.index() - m)).collect()
}

/// A directed cycle among the vertices with `allowed[v]`, as a vertex sequence.
pub(crate) fn find_cycle(n: usize, edges: &[(usize, usize)], allowed: &[bool]) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if allowed[a] && allowed[b] {
            adj[a].push(b);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for root in (0..n).filter(|&v| allowed[v]) {
        if state[root] != 0 {
            continue;
        }
        let mut path = vec![root];
        let mut iters = vec![0usize];
        state[root] = 1;
        while let Some(&v) = path.last() {
            let i = iters.last_mut().unwrap();
            if let Some(&w) = adj[v].get(*i) {
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        path.push(w);
                        iters.push(0);
                    }
                    1 => {
                        let pos = path.iter().position(|&x| x == w).unwrap();
                        return Some(path[pos..].to_vec());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                path.pop();
                iters.pop();
            }
        }
    }
    None
}
