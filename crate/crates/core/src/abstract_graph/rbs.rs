use serde::{Deserialize, Serialize};

use super::{coloring_violations, AbstractGraph, Coloring, NLoop, Side};
use crate::error::{Error, Result};

/// A regular bispecial move on the edge `bispecial` from a left special `u`
/// to a right special `v`. `into_v` is the in-edge of `u` that will end at
/// `v`; `out_of_u` is the out-edge of `v` that will start at `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RbsMove {
    pub bispecial: usize,
    pub into_v: usize,
    pub out_of_u: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    Twist,
    ShrinkU,
    ShrinkV,
    Collapse,
    Outside,
}

/// The rewired graph without any admissibility check beyond incidence.
/// The bispecial edge is reversed to run `v -> u`; other in-edges of `u`
/// and out-edges of `v` keep their ends except the two chosen ones.
pub fn rewire(g: &AbstractGraph, mv: RbsMove) -> Result<AbstractGraph> {
    let m = g.edge_count();
    if [mv.bispecial, mv.into_v, mv.out_of_u].iter().any(|&e| e >= m) {
        return Err(Error::InadmissibleMove(format!("edge out of range in {mv:?}")));
    }
    let (u, v) = g.edge(mv.bispecial);
    if u == v || g.side(u) != Side::Left || g.side(v) != Side::Right {
        return Err(Error::InadmissibleMove(format!("edge {} does not run from a left special to a right special", mv.bispecial)));
    }
    if g.edge(mv.into_v).1 != u {
        return Err(Error::InadmissibleMove(format!("edge {} does not end at {}", mv.into_v, g.name(u))));
    }
    if g.edge(mv.out_of_u).0 != v {
        return Err(Error::InadmissibleMove(format!("edge {} does not start at {}", mv.out_of_u, g.name(v))));
    }
    let mut out = g.clone();
    for e in 0..m {
        if e == mv.bispecial {
            out.set_edge(e, (v, u));
            continue;
        }
        let (a, b) = g.edge(e);
        let to = if b == u && e == mv.into_v { v } else { b };
        let from = if a == v && e == mv.out_of_u { u } else { a };
        out.set_edge(e, (from, to));
    }
    if out.profile() != g.profile() {
        return Err(Error::Consistency("RBS rewiring changed the degree profile".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RbsOutcome {
    pub graph: AbstractGraph,
    pub coloring: Coloring,
    /// Whether the completed coloring passes the color rules. When no
    /// completion does, `u`, `v` and the bispecial edge are set to 0.
    pub coloring_valid: bool,
}

/// Applies a move, refusing it when the result is not strongly connected,
/// and completes the coloring on `u`, `v` and the bispecial edge by the
/// least-change rule.
pub fn apply_rbs(g: &AbstractGraph, c: &Coloring, mv: RbsMove) -> Result<RbsOutcome> {
    let graph = rewire(g, mv)?;
    if !graph.strongly_connected() {
        return Err(Error::InadmissibleMove(format!("the graph after {mv:?} is not strongly connected")));
    }
    let (u, v) = g.edge(mv.bispecial);
    let old = [c.vertices[u], c.vertices[v], c.edges[mv.bispecial]];
    let mut palette: Vec<u32> = vec![0];
    for e in graph.in_edges(u).into_iter().chain(graph.out_edges(u)).chain(graph.in_edges(v)).chain(graph.out_edges(v)) {
        palette.push(c.edges[e]);
    }
    palette.extend(old);
    palette.sort_unstable();
    palette.dedup();
    let mut candidates = Vec::new();
    for &a in &palette {
        for &b in &palette {
            for &x in &palette {
                let cand = [a, b, x];
                let changes = (0..3).filter(|&i| cand[i] != old[i]).count();
                candidates.push((changes, cand));
            }
        }
    }
    candidates.sort();
    let mut coloring = c.clone();
    for (_, [a, b, x]) in candidates {
        coloring.vertices[u] = a;
        coloring.vertices[v] = b;
        coloring.edges[mv.bispecial] = x;
        if coloring_violations(&graph, &coloring).is_empty() {
            return Ok(RbsOutcome { graph, coloring, coloring_valid: true });
        }
    }
    coloring.vertices[u] = 0;
    coloring.vertices[v] = 0;
    coloring.edges[mv.bispecial] = 0;
    Ok(RbsOutcome { graph, coloring, coloring_valid: false })
}

/// Kind of `mv` relative to `lp`. Shrinks are refused on 2-loops and when the
/// ejected vertex is the only one of its side on the loop.
pub fn classify_move(g: &AbstractGraph, mv: RbsMove, lp: &NLoop) -> Result<MoveKind> {
    let Some(p) = lp.edges.iter().position(|&e| e == mv.bispecial) else {
        return Ok(MoveKind::Outside);
    };
    let n = lp.len();
    let e1 = lp.edges[(p + n - 1) % n];
    let f1 = lp.edges[(p + 1) % n];
    match (mv.into_v == e1, mv.out_of_u == f1) {
        (true, true) => Ok(MoveKind::Twist),
        (false, false) => Ok(MoveKind::Collapse),
        (i1, _) => {
            if n == 2 {
                return Err(Error::InadmissibleMove("a shrink is never allowed in a 2-loop".into()));
            }
            // i0 = 1 sends the loop edge into v, so u leaves the loop.
            let (kind, side) = if i1 { (MoveKind::ShrinkU, Side::Left) } else { (MoveKind::ShrinkV, Side::Right) };
            let same_side = lp.vertices(g).into_iter().filter(|&x| g.side(x) == side).count();
            if same_side < 2 {
                return Err(Error::InadmissibleMove(format!("shrink would remove the only {side:?} special vertex of the loop")));
            }
            Ok(kind)
        }
    }
}

impl NLoop {
    /// The loop after a move of the given kind: shrinks drop the bispecial
    /// edge, collapses destroy the loop.
    pub fn after(&self, mv: RbsMove, kind: MoveKind) -> Option<NLoop> {
        match kind {
            MoveKind::Collapse => None,
            MoveKind::ShrinkU | MoveKind::ShrinkV => {
                Some(NLoop { edges: self.edges.iter().copied().filter(|&e| e != mv.bispecial).collect(), color: self.color })
            }
            MoveKind::Twist | MoveKind::Outside => Some(self.clone()),
        }
    }
}
