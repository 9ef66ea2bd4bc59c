//! Abstract special-vertex graphs with colorings and colored loops, the RBS
//! rewriting move, itineraries and the quotient graph Ξ.
//!
//! Vertices and edges are addressed by index. Edge indices survive every
//! move, so an edge keeps its identity through an itinerary.

mod itinerary;
mod rbs;
mod search;
mod xi;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::digraph;
use crate::error::{Error, Result};
pub use crate::language::Side;

pub use itinerary::{itinerary_check, restrict, EventKind, Itinerary, ItineraryStep, ItineraryVerdict, LoopEvent};
pub use rbs::{apply_rbs, classify_move, rewire, MoveKind, RbsMove, RbsOutcome};
pub use search::{enumerate_graphs, search_colorings, search_shapes, SearchOutcome, ShapeSearch, SEARCH_EXHAUSTIVE_MAX_VERTICES};
pub use xi::{
    bound_check, build_xi, check_conditions_a, components_and_tags, move_effect, BoundReport, ComponentTags, Effect,
    MoveClass, MoveEffect, XiBuild, XiEdge, XiGraph, XiVertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub name: String,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
}

/// On-disk form of a graph: vertices by name, edges by endpoint names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

/// A directed multigraph whose vertices are tagged left or right special.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphSpec", into = "GraphSpec")]
pub struct AbstractGraph {
    names: Vec<String>,
    sides: Vec<Side>,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphSpec> for AbstractGraph {
    type Error = Error;

    fn try_from(spec: GraphSpec) -> Result<Self> {
        let index: BTreeMap<&str, usize> = spec.vertices.iter().enumerate().map(|(i, v)| (v.name.as_str(), i)).collect();
        if index.len() != spec.vertices.len() {
            return Err(Error::InvalidGraph("duplicate vertex name".into()));
        }
        let look = |name: &str| index.get(name).copied().ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {name:?}")));
        let edges = spec.edges.iter().map(|e| Ok((look(&e.from)?, look(&e.to)?))).collect::<Result<Vec<_>>>()?;
        AbstractGraph::new(spec.vertices.into_iter().map(|v| (v.name, v.side)).collect(), edges)
    }
}

impl From<AbstractGraph> for GraphSpec {
    fn from(g: AbstractGraph) -> Self {
        GraphSpec {
            edges: g.edges.iter().map(|&(a, b)| EdgeSpec { from: g.names[a].clone(), to: g.names[b].clone() }).collect(),
            vertices: g.names.into_iter().zip(g.sides).map(|(name, side)| VertexSpec { name, side }).collect(),
        }
    }
}

impl AbstractGraph {
    /// Only checks that edge endpoints exist; see [`validate`] for the rest.
    pub fn new(vertices: Vec<(String, Side)>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has an endpoint out of range")));
        }
        let (names, sides) = vertices.into_iter().unzip();
        Ok(Self { names, sides, edges })
    }

    /// Builds a graph from `"name:l"` / `"name:r"` vertex tokens and edges by name.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let vertices = vertices
            .iter()
            .map(|t| {
                let (name, side) = t.rsplit_once(':').ok_or_else(|| Error::Parse(format!("vertex {t:?} lacks :l or :r")))?;
                let side = match side {
                    "l" => Side::Left,
                    "r" => Side::Right,
                    _ => return Err(Error::Parse(format!("vertex {t:?} lacks :l or :r"))),
                };
                Ok(VertexSpec { name: name.to_string(), side })
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = edges.iter().map(|&(a, b)| EdgeSpec { from: a.into(), to: b.into() }).collect();
        Self::try_from(GraphSpec { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub(crate) fn set_edge(&mut self, e: usize, ends: (usize, usize)) {
        self.edges[e] = ends;
    }

    pub fn in_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].1 == v).collect()
    }

    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].0 == v).collect()
    }

    pub fn count_side(&self, side: Side) -> usize {
        self.sides.iter().filter(|&&s| s == side).count()
    }

    /// `#edges - #vertices`.
    pub fn k(&self) -> i64 {
        self.edges.len() as i64 - self.names.len() as i64
    }

    pub fn strongly_connected(&self) -> bool {
        digraph::strongly_connected(self.names.len(), &self.edges)
    }

    /// Multiset of (side, in-degree, out-degree) over the vertices.
    pub fn profile(&self) -> BTreeMap<(Side, usize, usize), usize> {
        let mut indeg = vec![0; self.names.len()];
        let mut outdeg = vec![0; self.names.len()];
        for &(a, b) in &self.edges {
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        let mut out = BTreeMap::new();
        for v in 0..self.names.len() {
            *out.entry((self.sides[v], indeg[v], outdeg[v])).or_insert(0) += 1;
        }
        out
    }
}

/// Colors of vertices and edges; 0 means uncolored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub vertices: Vec<u32>,
    pub edges: Vec<u32>,
}

impl Coloring {
    pub fn uncolored(g: &AbstractGraph) -> Self {
        Self { vertices: vec![0; g.vertex_count()], edges: vec![0; g.edge_count()] }
    }

    /// Colors every loop's vertices and edges with the loop color.
    pub fn from_loops(g: &AbstractGraph, loops: &[NLoop]) -> Self {
        let mut c = Self::uncolored(g);
        for lp in loops {
            for &e in &lp.edges {
                c.edges[e] = lp.color;
                c.vertices[g.edge(e).0] = lp.color;
            }
        }
        c
    }

    pub fn max_color(&self) -> u32 {
        self.vertices.iter().chain(&self.edges).copied().max().unwrap_or(0)
    }
}

/// A colored directed circuit, stored by edge so parallel edges stay distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NLoop {
    pub edges: Vec<usize>,
    pub color: u32,
}

impl NLoop {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices in circuit order, starting at the tail of the first edge.
    pub fn vertices(&self, g: &AbstractGraph) -> Vec<usize> {
        self.edges.iter().map(|&e| g.edge(e).0).collect()
    }

    pub fn contains_vertex(&self, g: &AbstractGraph, v: usize) -> bool {
        self.edges.iter().any(|&e| g.edge(e).0 == v)
    }

    /// Checks the circuit is closed, vertex self-avoiding, of length at least 2
    /// and carries a nonzero color.
    pub fn check(&self, g: &AbstractGraph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGraph(format!("loop of color {}: {m}", self.color)));
        if self.color == 0 {
            return bad("color 0".into());
        }
        if self.edges.len() < 2 {
            return bad(format!("length {}", self.edges.len()));
        }
        if let Some(&e) = self.edges.iter().find(|&&e| e >= g.edge_count()) {
            return bad(format!("edge {e} out of range"));
        }
        let n = self.edges.len();
        for i in 0..n {
            if g.edge(self.edges[i]).1 != g.edge(self.edges[(i + 1) % n]).0 {
                return bad(format!("edges {} and {} do not chain", self.edges[i], self.edges[(i + 1) % n]));
            }
        }
        let mut vs = self.vertices(g);
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != n {
            return bad("revisits a vertex".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleList {
    Notation,
    Rules1,
    Rules2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub list: RuleList,
    pub item: u8,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

fn violation(list: RuleList, item: u8, detail: String) -> Violation {
    Violation { list, item, detail }
}

/// Structural checks: vertex and edge counts, degrees, strong connectivity,
/// no self-loops.
pub fn graph_violations(g: &AbstractGraph) -> Vec<Violation> {
    use RuleList::Notation;
    let mut out = Vec::new();
    let (kl, kr, k) = (g.count_side(Side::Left), g.count_side(Side::Right), g.k());
    if k < 1 {
        out.push(violation(Notation, 4, format!("#edges - #vertices = {k}, need K >= 1")));
    }
    if kl == 0 || kr == 0 || kl as i64 > k.max(0) || kr as i64 > k.max(0) {
        out.push(violation(Notation, 1, format!("K_l = {kl}, K_r = {kr} must lie in [1, K] for K = {k}")));
    }
    for v in 0..g.vertex_count() {
        let (i, o) = (g.in_edges(v).len(), g.out_edges(v).len());
        match g.side(v) {
            Side::Left if i < 2 || o != 1 => {
                out.push(violation(Notation, 2, format!("left special {} has in {i}, out {o}", g.name(v))))
            }
            Side::Right if i != 1 || o < 2 => {
                out.push(violation(Notation, 3, format!("right special {} has in {i}, out {o}", g.name(v))))
            }
            _ => {}
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            out.push(violation(Notation, 5, format!("edge {e} is a self-loop at {}", g.name(a))));
        }
    }
    if !g.strongly_connected() {
        out.push(violation(Notation, 5, "not strongly connected".into()));
    }
    out
}

/// Color checks: colored edges force endpoint colors, and Rules List 1.
pub fn coloring_violations(g: &AbstractGraph, c: &Coloring) -> Vec<Violation> {
    use RuleList::{Notation, Rules1};
    let mut out = Vec::new();
    if c.vertices.len() != g.vertex_count() || c.edges.len() != g.edge_count() {
        out.push(violation(Notation, 6, "coloring does not match the graph's size".into()));
        return out;
    }
    let top = c.max_color();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let ce = c.edges[e];
        if ce != 0 && (c.vertices[a] != ce || c.vertices[b] != ce) {
            out.push(violation(Notation, 8, format!("edge {e} has color {ce} but its endpoints have {} and {}", c.vertices[a], c.vertices[b])));
        }
    }
    for color in 1..=top {
        let on = |side| (0..g.vertex_count()).any(|v| g.side(v) == side && c.vertices[v] == color);
        if !on(Side::Left) || !on(Side::Right) {
            out.push(violation(Rules1, 2, format!("color {color} lacks a left or a right special vertex")));
        }
    }
    for v in 0..g.vertex_count() {
        let cv = c.vertices[v];
        if cv == 0 {
            continue;
        }
        let has_in = g.in_edges(v).iter().any(|&e| c.edges[e] == cv);
        let has_out = g.out_edges(v).iter().any(|&e| c.edges[e] == cv);
        if !has_in || !has_out {
            out.push(violation(Rules1, 3, format!("vertex {} of color {cv} lacks an in- or out-edge of its color", g.name(v))));
        }
    }
    for e in 0..g.edge_count() {
        let ce = c.edges[e];
        if ce == 0 {
            continue;
        }
        let mono: Vec<(usize, usize)> = (0..g.edge_count()).filter(|&f| c.edges[f] == ce).map(|f| g.edge(f)).collect();
        let (a, b) = g.edge(e);
        if !digraph::reach(g.vertex_count(), &mono, b)[a] {
            out.push(violation(Rules1, 4, format!("edge {e} of color {ce} is on no circuit of its color")));
        }
    }
    out
}

/// Checks a graph and optionally a coloring. Colors are taken to range over
/// `0..=E` with `E` the largest color used, so Rules List 1 item 1 only
/// fails through [`validate_with_colors`].
pub fn validate(g: &AbstractGraph, c: Option<&Coloring>) -> Verdict {
    let mut violations = graph_violations(g);
    if let Some(c) = c {
        violations.extend(coloring_violations(g, c));
    }
    Verdict { valid: violations.is_empty(), violations }
}

/// [`validate`] with a declared number of colors `e`.
pub fn validate_with_colors(g: &AbstractGraph, c: &Coloring, e: u32) -> Verdict {
    let mut v = validate(g, Some(c));
    if c.max_color() > e {
        v.violations.push(violation(RuleList::Rules1, 1, format!("color {} exceeds E = {e}", c.max_color())));
        v.valid = false;
    }
    v
}

const PALETTE: [&str; 9] = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];

fn color_name(c: u32) -> &'static str {
    if c == 0 {
        "gray50"
    } else {
        PALETTE[1 + (c as usize - 1) % (PALETTE.len() - 1)]
    }
}

/// DOT rendering; loops become clusters, colors come from a fixed palette.
pub fn to_dot(g: &AbstractGraph, c: Option<&Coloring>, loops: &[NLoop]) -> String {
    let mut s = String::from("digraph Lambda {\n  rankdir=LR;\n");
    let mut in_cluster = vec![false; g.vertex_count()];
    for lp in loops {
        let _ = writeln!(s, "  subgraph cluster_loop{} {{\n    label=\"loop {} (N={})\";\n    color={};", lp.color, lp.color, lp.len(), color_name(lp.color));
        for v in lp.vertices(g) {
            in_cluster[v] = true;
            vertex_line(&mut s, g, c, v, "    ");
        }
        s.push_str("  }\n");
    }
    for v in (0..g.vertex_count()).filter(|&v| !in_cluster[v]) {
        vertex_line(&mut s, g, c, v, "  ");
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let col = c.map_or(0, |c| c.edges[e]);
        let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"e{e}\", color={}];", g.name(a), g.name(b), color_name(col));
    }
    s.push_str("}\n");
    s
}

fn vertex_line(s: &mut String, g: &AbstractGraph, c: Option<&Coloring>, v: usize, indent: &str) {
    let col = c.map_or(0, |c| c.vertices[v]);
    let shape = if g.side(v) == Side::Left { "invtriangle" } else { "triangle" };
    let _ = writeln!(s, "{indent}\"{}\" [shape={shape}, color={}];", g.name(v), color_name(col));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sturmian() -> (AbstractGraph, Coloring) {
        let g = AbstractGraph::from_names(&["u:l", "v:r"], &[("u", "v"), ("v", "u"), ("v", "u")]).unwrap();
        let c = Coloring { vertices: vec![1, 1], edges: vec![1, 1, 0] };
        (g, c)
    }

    #[test]
    fn sturmian_shape_is_valid() {
        let (g, c) = sturmian();
        assert_eq!(g.k(), 1);
        let v = validate(&g, Some(&c));
        assert!(v.valid, "{:?}", v.violations);
    }

    #[test]
    fn endpoint_color_mismatch() {
        let (g, mut c) = sturmian();
        c.vertices[1] = 0;
        let v = validate(&g, Some(&c));
        assert!(v.violations.iter().any(|x| x.list == RuleList::Notation && x.item == 8));
    }

    #[test]
    fn self_loop_rejected() {
        let g = AbstractGraph::from_names(&["u:l", "v:r"], &[("u", "v"), ("v", "u"), ("u", "u")]).unwrap();
        assert!(graph_violations(&g).iter().any(|x| x.detail.contains("self-loop")));
    }

    #[test]
    fn serde_round_trip() {
        let (g, _) = sturmian();
        let text = serde_json::to_string(&g).unwrap();
        let back: AbstractGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(g, back);
    }
}
