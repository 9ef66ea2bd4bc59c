use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::xi::build_xi;
use super::{coloring_violations, graph_violations, AbstractGraph, Coloring, NLoop, Side};
use crate::error::{Error, Result};

/// Graphs up to this many vertices are searched exhaustively.
pub const SEARCH_EXHAUSTIVE_MAX_VERTICES: usize = 8;
const MAX_CYCLES: usize = 20_000;
const RANDOM_SAMPLES: usize = 20_000;

/// Simple directed circuits as edge lists, each listed once, starting at its
/// smallest vertex. Stops after `cap` circuits; the flag says whether it did.
fn simple_cycles(g: &AbstractGraph, cap: usize) -> (Vec<Vec<usize>>, bool) {
    let n = g.vertex_count();
    let outs: Vec<Vec<usize>> = (0..n).map(|v| g.out_edges(v)).collect();
    let mut found = Vec::new();
    for s in 0..n {
        let mut on_path = vec![false; n];
        let mut path = Vec::new();
        if dfs(g, &outs, s, s, &mut on_path, &mut path, &mut found, cap) {
            return (found, true);
        }
    }
    found.sort_by_key(|c: &Vec<usize>| (c.len(), c.clone()));
    (found, false)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &AbstractGraph,
    outs: &[Vec<usize>],
    start: usize,
    v: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    cap: usize,
) -> bool {
    on_path[v] = true;
    for &e in &outs[v] {
        let w = g.edge(e).1;
        if w == start {
            path.push(e);
            found.push(path.clone());
            path.pop();
            if found.len() >= cap {
                return true;
            }
        } else if w > start && !on_path[w] {
            path.push(e);
            if dfs(g, outs, start, w, on_path, path, found, cap) {
                return true;
            }
            path.pop();
        }
    }
    on_path[v] = false;
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub e_target: usize,
    pub found: Option<(Coloring, Vec<NLoop>)>,
    /// True when every family of disjoint circuits was examined.
    pub exhaustive: bool,
    pub cycles: usize,
    pub families_examined: u64,
    pub seed: Option<u64>,
    pub note: String,
}

/// Whether coloring the loops (and nothing else) passes the color rules and
/// gives a connected Ξ with an empty move log.
fn family_works(g: &AbstractGraph, loops: &[NLoop]) -> Option<Coloring> {
    let c = Coloring::from_loops(g, loops);
    if !coloring_violations(g, &c).is_empty() {
        return None;
    }
    build_xi(g, loops, &[]).ok().filter(|b| b.xi.connected).map(|_| c)
}

fn to_loops(cycles: &[Vec<usize>], pick: &[usize]) -> Vec<NLoop> {
    pick.iter().enumerate().map(|(i, &c)| NLoop { edges: cycles[c].clone(), color: i as u32 + 1 }).collect()
}

/// Looks for `e_target` vertex-disjoint circuits of length at most
/// `max_len` whose coloring satisfies Rules List 1 and whose Ξ is
/// connected. Extra colored edges cannot change Ξ, so only loop colorings
/// are tried. Small graphs are searched exhaustively, larger ones by
/// seeded random sampling.
pub fn search_colorings(g: &AbstractGraph, e_target: usize, max_len: Option<usize>, seed: u64) -> Result<SearchOutcome> {
    let problems = graph_violations(g);
    if !problems.is_empty() {
        return Err(Error::InvalidGraph(format!("{} notation violations, first: {}", problems.len(), problems[0].detail)));
    }
    if g.vertex_count() > 64 {
        return Err(Error::InvalidParameters("search is limited to 64 vertices".into()));
    }
    let (mut cycles, capped) = simple_cycles(g, MAX_CYCLES);
    if let Some(m) = max_len {
        cycles.retain(|c| c.len() <= m);
    }
    let masks: Vec<u64> = cycles.iter().map(|c| c.iter().fold(0u64, |m, &e| m | 1 << g.edge(e).0)).collect();
    let mut examined = 0u64;
    if e_target == 0 {
        return Ok(SearchOutcome {
            e_target,
            found: Some((Coloring::uncolored(g), Vec::new())),
            exhaustive: true,
            cycles: cycles.len(),
            families_examined: 0,
            seed: None,
            note: "E = 0 needs no loops".into(),
        });
    }
    if g.vertex_count() <= SEARCH_EXHAUSTIVE_MAX_VERTICES {
        let mut pick = Vec::new();
        let found = backtrack(g, &cycles, &masks, e_target, 0, 0, &mut pick, &mut examined);
        let exhaustive = !capped;
        let note = match (&found, exhaustive) {
            (Some(_), _) => format!("found after {examined} families"),
            (None, true) => format!("no family of {e_target} loops works; all {examined} families examined"),
            (None, false) => format!("circuit enumeration hit the cap of {MAX_CYCLES}; search is partial"),
        };
        return Ok(SearchOutcome { e_target, found, exhaustive, cycles: cycles.len(), families_examined: examined, seed: None, note });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    for _ in 0..RANDOM_SAMPLES {
        order.shuffle(&mut rng);
        let mut used = 0u64;
        let mut pick = Vec::new();
        for &c in &order {
            if masks[c] & used == 0 {
                used |= masks[c];
                pick.push(c);
                if pick.len() == e_target {
                    break;
                }
            }
        }
        if pick.len() < e_target {
            continue;
        }
        examined += 1;
        let loops = to_loops(&cycles, &pick);
        if let Some(c) = family_works(g, &loops) {
            return Ok(SearchOutcome {
                e_target,
                found: Some((c, loops)),
                exhaustive: false,
                cycles: cycles.len(),
                families_examined: examined,
                seed: Some(seed),
                note: "found by random sampling".into(),
            });
        }
    }
    Ok(SearchOutcome {
        e_target,
        found: None,
        exhaustive: false,
        cycles: cycles.len(),
        families_examined: examined,
        seed: Some(seed),
        note: format!("random sampling found nothing in {RANDOM_SAMPLES} draws; not a certificate"),
    })
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g: &AbstractGraph,
    cycles: &[Vec<usize>],
    masks: &[u64],
    target: usize,
    from: usize,
    used: u64,
    pick: &mut Vec<usize>,
    examined: &mut u64,
) -> Option<(Coloring, Vec<NLoop>)> {
    if pick.len() == target {
        *examined += 1;
        let loops = to_loops(cycles, pick);
        return family_works(g, &loops).map(|c| (c, loops));
    }
    for c in from..cycles.len() {
        if masks[c] & used == 0 {
            pick.push(c);
            if let Some(hit) = backtrack(g, cycles, masks, target, c + 1, used | masks[c], pick, examined) {
                return Some(hit);
            }
            pick.pop();
        }
    }
    None
}

/// Every graph with `kl` left and `kr` right specials and `k + kl + kr`
/// edges meeting the degree rules, up to relabeling within each side
/// (degree sequences are taken non-increasing). Self-loops and strong
/// connectivity are not filtered here.
pub fn enumerate_graphs(k: usize, kl: usize, kr: usize) -> Vec<AbstractGraph> {
    let mut out = Vec::new();
    if kl == 0 || kr == 0 {
        return out;
    }
    let names: Vec<(String, Side)> = (1..=kl)
        .map(|i| (format!("u{i}"), Side::Left))
        .chain((1..=kr).map(|i| (format!("v{i}"), Side::Right)))
        .collect();
    for left_in in partitions(k + kl, kl, 2) {
        for right_out in partitions(k + kr, kr, 2) {
            let outdeg: Vec<usize> = std::iter::repeat(1).take(kl).chain(right_out.iter().copied()).collect();
            let indeg: Vec<usize> = left_in.iter().copied().chain(std::iter::repeat(1).take(kr)).collect();
            let mut cap = indeg.clone();
            let mut edges = Vec::new();
            fill_rows(0, 0, &outdeg, &mut cap, &mut edges, &mut |edges| {
                out.push(AbstractGraph::new(names.clone(), edges.to_vec()).expect("indices in range"));
            });
        }
    }
    out
}

/// Non-increasing sequences of `parts` integers, each at least `min`, summing to `total`.
fn partitions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in (min..=max.min(total)).rev() {
            if total - x < min * (parts - 1) {
                continue;
            }
            cur.push(x);
            go(total - x, parts - 1, min, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= min * parts {
        go(total, parts, min, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Distributes the out-stubs of each row over the column capacities; edges
/// from one row are emitted in non-decreasing target order.
fn fill_rows(
    row: usize,
    min_col: usize,
    outdeg: &[usize],
    cap: &mut [usize],
    edges: &mut Vec<(usize, usize)>,
    emit: &mut dyn FnMut(&[(usize, usize)]),
) {
    if row == outdeg.len() {
        emit(edges);
        return;
    }
    let placed = edges.iter().filter(|e| e.0 == row).count();
    if placed == outdeg[row] {
        fill_rows(row + 1, 0, outdeg, cap, edges, emit);
        return;
    }
    for col in min_col..cap.len() {
        if cap[col] > 0 {
            cap[col] -= 1;
            edges.push((row, col));
            fill_rows(row, col, outdeg, cap, edges, emit);
            edges.pop();
            cap[col] += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeSearch {
    pub k: usize,
    pub e_target: usize,
    pub max_vertices: usize,
    /// Degree-valid graphs generated.
    pub graphs_generated: u64,
    /// Graphs passing every notation check, whose loop families were searched.
    pub graphs_examined: u64,
    pub found: Option<(AbstractGraph, Coloring, Vec<NLoop>)>,
    /// True when every examined graph was searched exhaustively.
    pub exhaustive: bool,
}

/// Runs [`search_colorings`] over every valid graph with the given `K` and
/// at most `max_vertices` vertices.
pub fn search_shapes(k: usize, e_target: usize, max_vertices: usize, max_len: Option<usize>, seed: u64) -> Result<ShapeSearch> {
    let mut report = ShapeSearch {
        k,
        e_target,
        max_vertices,
        graphs_generated: 0,
        graphs_examined: 0,
        found: None,
        exhaustive: true,
    };
    for kl in 1..=k {
        for kr in 1..=k {
            if kl + kr > max_vertices {
                continue;
            }
            for g in enumerate_graphs(k, kl, kr) {
                report.graphs_generated += 1;
                if !graph_violations(&g).is_empty() {
                    continue;
                }
                report.graphs_examined += 1;
                let out = search_colorings(&g, e_target, max_len, seed)?;
                report.exhaustive &= out.exhaustive;
                if let Some((c, loops)) = out.found {
                    report.found = Some((g, c, loops));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
