//! Random abstract graphs carrying vertex-disjoint loops, and random moves on them.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use symdyn::abstract_graph::{graph_violations, rewire, AbstractGraph, NLoop, RbsMove};
use symdyn::language::Side;

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: AbstractGraph,
    pub loops: Vec<NLoop>,
}

/// A graph with `e` loops of length 2..=5 plus up to three outside vertices.
/// Each loop starts with a left special followed by a right special, so it
/// has at least one edge a move can act on. Returns `None` when the random
/// wiring fails the notation checks.
pub fn random_instance<R: Rng>(rng: &mut R, e: usize) -> Option<Instance> {
    let mut vertices: Vec<(String, Side)> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut loops = Vec::new();
    for c in 1..=e {
        let n = rng.gen_range(2..=5);
        let first = vertices.len();
        for i in 0..n {
            let side = match i {
                0 => Side::Left,
                1 => Side::Right,
                _ if rng.gen_bool(0.5) => Side::Left,
                _ => Side::Right,
            };
            vertices.push((format!("c{c}_{i}"), side));
        }
        let mut lp = Vec::new();
        for i in 0..n {
            lp.push(edges.len());
            edges.push((first + i, first + (i + 1) % n));
        }
        loops.push(NLoop { edges: lp, color: c as u32 });
    }
    let on_loop = vertices.len();
    for i in 0..rng.gen_range(0..=3) {
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        vertices.push((format!("x{i}"), side));
    }

    // Remaining degree after the loop edges.
    let mut outs = Vec::new();
    let mut ins = Vec::new();
    for (v, (_, side)) in vertices.iter().enumerate() {
        let looped = usize::from(v < on_loop);
        let extra = rng.gen_range(0..=1);
        match side {
            Side::Left => {
                ins.extend(std::iter::repeat(v).take(2 + extra - looped));
                outs.extend(std::iter::repeat(v).take(1 - looped));
            }
            Side::Right => {
                ins.extend(std::iter::repeat(v).take(1 - looped));
                outs.extend(std::iter::repeat(v).take(2 + extra - looped));
            }
        }
    }
    let lefts: Vec<usize> = (0..vertices.len()).filter(|&v| vertices[v].1 == Side::Left).collect();
    let rights: Vec<usize> = (0..vertices.len()).filter(|&v| vertices[v].1 == Side::Right).collect();
    while outs.len() < ins.len() {
        outs.push(*rights.choose(rng)?);
    }
    while ins.len() < outs.len() {
        ins.push(*lefts.choose(rng)?);
    }
    for _ in 0..20 {
        ins.shuffle(rng);
        if outs.iter().zip(&ins).all(|(a, b)| a != b) {
            let mut all = edges.clone();
            all.extend(outs.iter().copied().zip(ins.iter().copied()));
            let g = AbstractGraph::new(vertices.clone(), all).ok()?;
            return graph_violations(&g).is_empty().then_some(Instance { graph: g, loops });
        }
    }
    None
}

pub fn random_valid_instance<R: Rng>(rng: &mut R, e: usize) -> Instance {
    loop {
        if let Some(inst) = random_instance(rng, e) {
            return inst;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Twist,
    Shrink,
    Outside,
}

/// Every move of the given kind that leaves the graph strongly connected.
pub fn moves_of_kind(inst: &Instance, kind: Kind) -> Vec<RbsMove> {
    let g = &inst.graph;
    let mut out = Vec::new();
    let loop_vertices: BTreeSet<usize> = inst.loops.iter().flat_map(|lp| lp.vertices(g)).collect();
    match kind {
        Kind::Twist | Kind::Shrink => {
            for lp in &inst.loops {
                let n = lp.len();
                for p in 0..n {
                    let e0 = lp.edges[p];
                    let (u, v) = g.edge(e0);
                    if g.side(u) != Side::Left || g.side(v) != Side::Right {
                        continue;
                    }
                    let e1 = lp.edges[(p + n - 1) % n];
                    let f1 = lp.edges[(p + 1) % n];
                    if kind == Kind::Twist {
                        out.push(RbsMove { bispecial: e0, into_v: e1, out_of_u: f1 });
                        continue;
                    }
                    if n == 2 {
                        continue;
                    }
                    let count = |side| lp.vertices(g).into_iter().filter(|&x| g.side(x) == side).count();
                    if count(Side::Left) >= 2 {
                        for o in g.out_edges(v).into_iter().filter(|&o| o != f1) {
                            out.push(RbsMove { bispecial: e0, into_v: e1, out_of_u: o });
                        }
                    }
                    if count(Side::Right) >= 2 {
                        for i in g.in_edges(u).into_iter().filter(|&i| i != e1) {
                            out.push(RbsMove { bispecial: e0, into_v: i, out_of_u: f1 });
                        }
                    }
                }
            }
        }
        Kind::Outside => {
            for (e0, &(u, v)) in g.edges().iter().enumerate() {
                if g.side(u) != Side::Left || g.side(v) != Side::Right || loop_vertices.contains(&u) || loop_vertices.contains(&v) {
                    continue;
                }
                for i in g.in_edges(u).into_iter().filter(|&i| i != e0) {
                    for o in g.out_edges(v).into_iter().filter(|&o| o != e0) {
                        out.push(RbsMove { bispecial: e0, into_v: i, out_of_u: o });
                    }
                }
            }
        }
    }
    out.retain(|&mv| rewire(g, mv).map(|h| h.strongly_connected()).unwrap_or(false));
    out
}

/// Weak components of the loop-deleted graph, with each component's loop
/// vertices grouped by loop, computed by union-find.
pub fn brute_components(g: &AbstractGraph, loops: &[NLoop]) -> BTreeSet<(Vec<usize>, Vec<Vec<usize>>)> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let loop_edges: BTreeSet<usize> = loops.iter().flat_map(|lp| lp.edges.iter().copied()).collect();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !loop_edges.contains(&e) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups
        .into_values()
        .map(|comp| {
            let tags = loops.iter().map(|lp| comp.iter().copied().filter(|&v| lp.contains_vertex(g, v)).collect()).collect();
            (comp, tags)
        })
        .collect()
}

/// The same set with every vertex list sorted, for comparison with the library.
pub fn normalize(set: &BTreeSet<(Vec<usize>, Vec<Vec<usize>>)>) -> BTreeSet<(Vec<usize>, Vec<Vec<usize>>)> {
    set.iter()
        .map(|(c, t)| {
            let mut c = c.clone();
            c.sort_unstable();
            let t = t
                .iter()
                .map(|s| {
                    let mut s = s.clone();
                    s.sort_unstable();
                    s
                })
                .collect();
            (c, t)
        })
        .collect()
}
