use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::rbs::{classify_move, rewire, MoveKind, RbsMove};
use super::{AbstractGraph, NLoop, Side};
use crate::digraph;
use crate::error::{Error, Result};

/// Loops must be valid circuits, pairwise vertex-disjoint and distinctly colored.
pub fn check_conditions_a(g: &AbstractGraph, loops: &[NLoop]) -> Result<()> {
    let mut seen = BTreeSet::new();
    let mut colors = BTreeSet::new();
    for lp in loops {
        lp.check(g)?;
        if !colors.insert(lp.color) {
            return Err(Error::InvalidGraph(format!("color {} used by two loops", lp.color)));
        }
        for v in lp.vertices(g) {
            if !seen.insert(v) {
                return Err(Error::InvalidGraph(format!("vertex {} lies on two loops", g.name(v))));
            }
        }
    }
    Ok(())
}

fn loop_of(loops: &[NLoop], e: usize) -> Option<usize> {
    loops.iter().position(|lp| lp.edges.contains(&e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum XiVertex {
    Vertex { index: usize, name: String },
    Loop { color: u32, side: Side },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiEdge {
    pub a: usize,
    pub b: usize,
    /// Edge index in the graph the moves were applied to.
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiGraph {
    pub vertices: Vec<XiVertex>,
    pub edges: Vec<XiEdge>,
    pub k: i64,
    pub e: usize,
    pub connected: bool,
}

impl XiGraph {
    pub fn label(&self, i: usize) -> String {
        match &self.vertices[i] {
            XiVertex::Vertex { name, .. } => name.clone(),
            XiVertex::Loop { color, side } => format!("nu{color}_{}", side.short()),
        }
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        digraph::weak_components(self.vertices.len(), &pairs)
    }

    /// Edge multiset as sorted label pairs.
    pub fn edge_labels(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|e| {
                let (x, y) = (self.label(e.a), self.label(e.b));
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph Xi {\n");
        for i in 0..self.vertices.len() {
            let shape = if matches!(self.vertices[i], XiVertex::Loop { .. }) { "doublecircle" } else { "circle" };
            s.push_str(&format!("  \"{}\" [shape={shape}];\n", self.label(i)));
        }
        for e in &self.edges {
            s.push_str(&format!("  \"{}\" -- \"{}\" [label=\"e{}\"];\n", self.label(e.a), self.label(e.b), e.edge));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiBuild {
    pub xi: XiGraph,
    /// The graph after the twist and shrink moves.
    pub graph: AbstractGraph,
    pub loops: Vec<NLoop>,
    /// Indices into the move log of moves skipped because they touch no loop.
    pub skipped: Vec<usize>,
}

/// Applies the twist and shrink moves of `moves` to `g`, deletes the loop
/// edges and collapses the left (right) specials of each loop to one vertex.
pub fn build_xi(g: &AbstractGraph, loops: &[NLoop], moves: &[RbsMove]) -> Result<XiBuild> {
    check_conditions_a(g, loops)?;
    let mut graph = g.clone();
    let mut loops = loops.to_vec();
    let mut skipped = Vec::new();
    for (i, &mv) in moves.iter().enumerate() {
        let Some(j) = loop_of(&loops, mv.bispecial) else {
            skipped.push(i);
            continue;
        };
        let kind = classify_move(&graph, mv, &loops[j])?;
        if kind == MoveKind::Collapse {
            return Err(Error::Precondition(format!("move {i} collapses the loop of color {}", loops[j].color)));
        }
        graph = rewire(&graph, mv)?;
        loops[j] = loops[j].after(mv, kind).expect("twist and shrink keep the loop");
        loops[j].check(&graph)?;
    }
    let nv = graph.vertex_count();
    let mut psi = vec![usize::MAX; nv];
    let mut vertices = Vec::new();
    for lp in &loops {
        for side in [Side::Left, Side::Right] {
            let id = vertices.len();
            vertices.push(XiVertex::Loop { color: lp.color, side });
            for v in lp.vertices(&graph).into_iter().filter(|&v| graph.side(v) == side) {
                psi[v] = id;
            }
        }
    }
    for v in 0..nv {
        if psi[v] == usize::MAX {
            psi[v] = vertices.len();
            vertices.push(XiVertex::Vertex { index: v, name: graph.name(v).to_string() });
        }
    }
    let loop_edges: BTreeSet<usize> = loops.iter().flat_map(|lp| lp.edges.iter().copied()).collect();
    let edges: Vec<XiEdge> = (0..graph.edge_count())
        .filter(|e| !loop_edges.contains(e))
        .map(|e| {
            let (a, b) = graph.edge(e);
            XiEdge { a: psi[a], b: psi[b], edge: e }
        })
        .collect();
    let k = g.k();
    let e = loops.len();
    if edges.len() as i64 - vertices.len() as i64 != k - 2 * e as i64 {
        return Err(Error::Consistency(format!(
            "Xi has {} edges and {} vertices but K - 2E = {}",
            edges.len(),
            vertices.len(),
            k - 2 * e as i64
        )));
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|x| (x.a, x.b)).collect();
    let connected = digraph::weakly_connected(vertices.len(), &pairs);
    Ok(XiBuild { xi: XiGraph { vertices, edges, k, e, connected }, graph, loops, skipped })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub xi_connected: bool,
    pub e: usize,
    pub k: i64,
    /// `2E <= K + 1`.
    pub bound_satisfied: bool,
    pub xi_vertices: usize,
    pub xi_edges: usize,
    /// `K - 2E >= -1`, which any connected Ξ needs since it has at least
    /// `#vertices - 1` edges. Computed from K and E alone.
    pub counting_allows_connected: bool,
    /// Components of a disconnected Ξ, by label.
    pub cut: Option<Vec<Vec<String>>>,
    pub note: String,
}

/// Builds Ξ from the move log and reports the connectivity verdict next to
/// the counting argument.
pub fn bound_check(g: &AbstractGraph, loops: &[NLoop], moves: &[RbsMove]) -> Result<BoundReport> {
    let built = build_xi(g, loops, moves)?;
    let xi = &built.xi;
    let e = loops.len();
    let k = g.k();
    let bound_satisfied = 2 * e as i64 <= k + 1;
    let counting = k - 2 * e as i64 >= -1;
    if xi.connected && !counting {
        return Err(Error::Consistency("connected Xi with fewer than #vertices - 1 edges".into()));
    }
    let cut = (!xi.connected).then(|| xi.components().iter().map(|c| c.iter().map(|&i| xi.label(i)).collect()).collect());
    let note = match (xi.connected, counting) {
        (true, _) => format!("Xi connected, so E = {e} <= (K+1)/2 = {}", (k + 1) as f64 / 2.0),
        (false, false) => format!(
            "E = {e} is impossible for K = {k}: Xi would need #edges - #vertices = {} < -1 to be connected",
            k - 2 * e as i64
        ),
        (false, true) => "Xi disconnected: the coloring or the move log breaks Rules List 1 or the itinerary rules; re-examine them".into(),
    };
    Ok(BoundReport {
        xi_connected: xi.connected,
        e,
        k,
        bound_satisfied,
        xi_vertices: xi.vertices.len(),
        xi_edges: xi.edges.len(),
        counting_allows_connected: counting,
        cut,
        note,
    })
}

/// Weak components of the graph with loop edges deleted, and for each
/// component the vertices of each loop it contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentTags {
    pub components: Vec<Vec<usize>>,
    /// `tags[i][j]`: vertices of loop `j` in component `i`, sorted.
    pub tags: Vec<Vec<Vec<usize>>>,
}

impl ComponentTags {
    /// Order-free form used for comparisons.
    pub fn canonical(&self) -> BTreeSet<(Vec<usize>, Vec<Vec<usize>>)> {
        self.components.iter().cloned().zip(self.tags.iter().cloned()).collect()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.components.iter().position(|c| c.contains(&v)).expect("components partition the vertices")
    }
}

pub fn components_and_tags(g: &AbstractGraph, loops: &[NLoop]) -> Result<ComponentTags> {
    check_conditions_a(g, loops)?;
    let loop_edges: BTreeSet<usize> = loops.iter().flat_map(|lp| lp.edges.iter().copied()).collect();
    let kept: Vec<(usize, usize)> = (0..g.edge_count()).filter(|e| !loop_edges.contains(e)).map(|e| g.edge(e)).collect();
    let components = digraph::weak_components(g.vertex_count(), &kept);
    let loop_vertices: Vec<BTreeSet<usize>> = loops.iter().map(|lp| lp.vertices(g).into_iter().collect()).collect();
    let tags = components
        .iter()
        .map(|c| loop_vertices.iter().map(|lv| c.iter().copied().filter(|v| lv.contains(v)).collect()).collect())
        .collect();
    Ok(ComponentTags { components, tags })
}

/// Move classes of the component bookkeeping: twists (A), shrinks (B) and
/// moves away from every loop (C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveClass {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "effect", rename_all = "lowercase")]
pub enum Effect {
    Unchanged,
    /// Components `i1` and `i2` (indices before the move, possibly equal)
    /// become component `j` (index after), and `removed` leaves its loop.
    Merged { i1: usize, i2: usize, j: usize, removed: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEffect {
    pub class: MoveClass,
    pub effect: Effect,
    pub before: ComponentTags,
    pub after: ComponentTags,
    pub graph: AbstractGraph,
    pub loops: Vec<NLoop>,
    /// Whether the predicted effect matches recomputation from scratch.
    pub verified: bool,
}

/// Applies one move and checks the predicted change in components and tags.
pub fn move_effect(g: &AbstractGraph, loops: &[NLoop], mv: RbsMove) -> Result<MoveEffect> {
    let before = components_and_tags(g, loops)?;
    let (u, v) = g.edge(mv.bispecial);
    let (class, kind, j) = match loop_of(loops, mv.bispecial) {
        Some(j) => {
            let kind = classify_move(g, mv, &loops[j])?;
            match kind {
                MoveKind::Twist => (MoveClass::A, kind, Some(j)),
                MoveKind::ShrinkU | MoveKind::ShrinkV => (MoveClass::B, kind, Some(j)),
                _ => return Err(Error::InadmissibleMove("a collapse is not a move of kind A, B or C".into())),
            }
        }
        None => {
            if loops.iter().any(|lp| lp.contains_vertex(g, u) || lp.contains_vertex(g, v)) {
                return Err(Error::InadmissibleMove("move touches a loop vertex without using a loop edge".into()));
            }
            (MoveClass::C, MoveKind::Outside, None)
        }
    };
    let graph = rewire(g, mv)?;
    let mut new_loops = loops.to_vec();
    if let Some(j) = j {
        new_loops[j] = loops[j].after(mv, kind).expect("kinds A and B keep the loop");
    }
    let after = components_and_tags(&graph, &new_loops)?;
    let (effect, predicted) = if class == MoveClass::B {
        let x = if kind == MoveKind::ShrinkU { u } else { v };
        let j = j.unwrap();
        let (i1, i2) = (before.component_of(u), before.component_of(v));
        let mut predicted = before.canonical();
        let p1 = (before.components[i1].clone(), before.tags[i1].clone());
        let p2 = (before.components[i2].clone(), before.tags[i2].clone());
        predicted.remove(&p1);
        predicted.remove(&p2);
        let mut merged: Vec<usize> = p1.0.iter().chain(&p2.0).copied().collect();
        merged.sort_unstable();
        merged.dedup();
        let mut tags: Vec<Vec<usize>> = p1
            .1
            .iter()
            .zip(&p2.1)
            .map(|(a, b)| {
                let mut t: Vec<usize> = a.iter().chain(b).copied().collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        tags[j].retain(|&y| y != x);
        predicted.insert((merged, tags));
        let jj = after.component_of(u);
        (Effect::Merged { i1, i2, j: jj, removed: x }, predicted)
    } else {
        (Effect::Unchanged, before.canonical())
    };
    let verified = predicted == after.canonical();
    Ok(MoveEffect { class, effect, before, after, graph, loops: new_loops, verified })
}
