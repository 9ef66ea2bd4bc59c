use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::rbs::{apply_rbs, classify_move, MoveKind, RbsMove};
use super::{coloring_violations, graph_violations, AbstractGraph, Coloring, NLoop};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum EventKind {
    Shrink,
    /// The loop color passes along `entering` and `leaving`, edges outside
    /// the loop ending at and starting from it.
    Spread { entering: usize, leaving: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopEvent {
    pub color: u32,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItineraryStep {
    pub moves: Vec<RbsMove>,
    /// Coloring of the graph after the moves.
    pub coloring: Coloring,
    pub events: Vec<LoopEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Itinerary {
    pub graph: AbstractGraph,
    pub coloring: Coloring,
    pub loops: Vec<NLoop>,
    pub steps: Vec<ItineraryStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItineraryViolation {
    /// Step index, or `None` for the initial state.
    pub step: Option<usize>,
    pub item: u8,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItineraryVerdict {
    pub valid: bool,
    pub violations: Vec<ItineraryViolation>,
    /// Live loops before each step and after the last one.
    pub loops_per_state: Vec<Vec<NLoop>>,
    /// Graphs after each step.
    pub graphs: Vec<AbstractGraph>,
    /// The twist and shrink moves of the whole itinerary in order.
    pub loop_moves: Vec<RbsMove>,
}

/// Checks an itinerary item by item. Item numbers follow the definition:
/// 1 moves apply, 2 only twists and shrinks touch live loops, 3 event rules,
/// 4 twists before shrinks, 5 loop bookkeeping, 6 coloring agreement,
/// 7 loops remain until the last state. Number 0 flags the initial state.
pub fn itinerary_check(it: &Itinerary) -> ItineraryVerdict {
    let mut violations = Vec::new();
    let mut push = |step: Option<usize>, item: u8, detail: String| violations.push(ItineraryViolation { step, item, detail });
    let mut graph = it.graph.clone();
    let mut coloring = it.coloring.clone();
    let mut live = it.loops.clone();
    let mut loops_per_state = vec![live.clone()];
    let mut graphs = Vec::new();
    let mut loop_moves = Vec::new();

    for v in graph_violations(&graph).into_iter().chain(coloring_violations(&graph, &coloring)) {
        push(None, 0, format!("{:?} item {}: {}", v.list, v.item, v.detail));
    }
    if let Err(e) = super::check_conditions_a(&graph, &live) {
        push(None, 0, e.to_string());
    }
    for lp in &live {
        if lp.edges.iter().any(|&e| coloring.edges[e] != lp.color) || lp.vertices(&graph).iter().any(|&x| coloring.vertices[x] != lp.color) {
            push(None, 0, format!("loop of color {} is not colored by its color", lp.color));
        }
    }

    for (s, step) in it.steps.iter().enumerate() {
        let at = Some(s);
        if live.is_empty() {
            push(at, 7, "no live loops before this step".into());
        }
        let mut touched_vertices = BTreeSet::new();
        let mut touched_edges = BTreeSet::new();
        let mut shrunk: BTreeMap<u32, usize> = BTreeMap::new();
        let mut ejected = Vec::new();
        let mut broken = BTreeSet::new();
        for (m, &mv) in step.moves.iter().enumerate() {
            if mv.bispecial >= graph.edge_count() {
                push(at, 1, format!("move {m} names a missing edge"));
                break;
            }
            let (u, v) = graph.edge(mv.bispecial);
            if let Some(j) = live.iter().position(|lp| lp.edges.contains(&mv.bispecial)) {
                match classify_move(&graph, mv, &live[j]) {
                    Ok(MoveKind::Twist) => {
                        if shrunk.contains_key(&live[j].color) {
                            push(at, 4, format!("twist after a shrink on loop {}", live[j].color));
                        }
                    }
                    Ok(kind @ (MoveKind::ShrinkU | MoveKind::ShrinkV)) => {
                        *shrunk.entry(live[j].color).or_insert(0) += 1;
                        ejected.push(if kind == MoveKind::ShrinkU { u } else { v });
                    }
                    Ok(_) => {
                        push(at, 2, format!("move {m} collapses loop {}", live[j].color));
                        broken.insert(live[j].color);
                    }
                    Err(e) => push(at, 2, format!("move {m}: {e}")),
                }
            }
            match apply_rbs(&graph, &coloring, mv) {
                Ok(out) => {
                    if let Some(j) = live.iter().position(|lp| lp.edges.contains(&mv.bispecial)) {
                        if let Ok(kind) = classify_move(&graph, mv, &live[j]) {
                            match live[j].after(mv, kind) {
                                Some(lp) => live[j] = lp,
                                None => {
                                    live.remove(j);
                                }
                            }
                            if kind != MoveKind::Collapse {
                                loop_moves.push(mv);
                            }
                        }
                    }
                    graph = out.graph;
                    coloring = out.coloring;
                }
                Err(e) => {
                    push(at, 1, format!("move {m}: {e}"));
                    break;
                }
            }
            touched_vertices.extend([u, v]);
            touched_edges.insert(mv.bispecial);
        }
        let next = &step.coloring;
        if next.vertices.len() != graph.vertex_count() || next.edges.len() != graph.edge_count() {
            push(at, 6, "coloring does not match the graph's size".into());
            graphs.push(graph.clone());
            loops_per_state.push(live.clone());
            continue;
        }
        for v in coloring_violations(&graph, next) {
            push(at, 6, format!("{:?} item {}: {}", v.list, v.item, v.detail));
        }
        let prev = &coloring;
        for x in (0..graph.vertex_count()).filter(|x| !touched_vertices.contains(x)) {
            if prev.vertices[x] != next.vertices[x] && !ejected.contains(&x) {
                push(at, 6, format!("vertex {} changed color away from the moves", graph.name(x)));
            }
        }
        for e in (0..graph.edge_count()).filter(|e| !touched_edges.contains(e)) {
            if prev.edges[e] != next.edges[e] {
                push(at, 6, format!("edge {e} changed color away from the moves"));
            }
        }

        if step.events.is_empty() {
            push(at, 3, "no shrink or spread event".into());
        }
        let mut declared: BTreeMap<u32, Vec<&EventKind>> = BTreeMap::new();
        for ev in &step.events {
            declared.entry(ev.color).or_default().push(&ev.kind);
        }
        let live_colors: BTreeSet<u32> = live.iter().map(|l| l.color).chain(broken.iter().copied()).collect();
        let mut spread = BTreeSet::new();
        for (&color, kinds) in &declared {
            if !live_colors.contains(&color) {
                push(at, 3, format!("event for loop {color}, which is not live"));
                continue;
            }
            let has_shrink = kinds.iter().any(|k| matches!(k, EventKind::Shrink));
            let spreads: Vec<(usize, usize)> = kinds
                .iter()
                .filter_map(|k| match k {
                    EventKind::Spread { entering, leaving } => Some((*entering, *leaving)),
                    EventKind::Shrink => None,
                })
                .collect();
            if has_shrink && !spreads.is_empty() {
                push(at, 3, format!("loop {color} both shrinks and spreads"));
            }
            if has_shrink && !shrunk.contains_key(&color) {
                push(at, 3, format!("loop {color} declared shrunk but no shrink move acts on it"));
            }
            if !spreads.is_empty() {
                if shrunk.contains_key(&color) {
                    push(at, 3, format!("loop {color} shrinks and spreads in one step"));
                }
                match live.iter().find(|l| l.color == color) {
                    Some(lp) => {
                        for &(inc, out) in &spreads {
                            if let Some(d) = spread_problem(&graph, next, lp, inc, out) {
                                push(at, 3, format!("loop {color}: {d}"));
                            }
                        }
                    }
                    None => push(at, 2, format!("loop {color} was destroyed before spreading")),
                }
                spread.insert(color);
            }
        }
        for (&color, _) in shrunk.iter().filter(|(c, _)| !declared.contains_key(c)) {
            push(at, 3, format!("loop {color} shrinks without a declared event"));
        }
        for color in &broken {
            if !spread.contains(color) {
                push(at, 2, format!("loop {color} collapsed without spreading"));
            }
        }
        for lp in live.iter().filter(|l| spread.contains(&l.color)) {
            if lp.edges.iter().any(|&e| next.edges[e] != lp.color) || lp.vertices(&graph).iter().any(|&x| next.vertices[x] != lp.color) {
                push(at, 6, format!("spread loop {} lost its color", lp.color));
            }
        }
        live.retain(|l| !spread.contains(&l.color));
        for lp in &live {
            if let Err(e) = lp.check(&graph) {
                push(at, 5, e.to_string());
            }
            if lp.edges.iter().any(|&e| next.edges[e] != lp.color) || lp.vertices(&graph).iter().any(|&x| next.vertices[x] != lp.color) {
                push(at, 6, format!("live loop {} lost its color", lp.color));
            }
        }
        for &x in &ejected {
            if next.vertices[x] != 0 {
                push(at, 6, format!("ejected vertex {} is still colored", graph.name(x)));
            }
        }
        coloring = next.clone();
        graphs.push(graph.clone());
        loops_per_state.push(live.clone());
    }
    if !live.is_empty() {
        push(None, 7, format!("{} loops still live after the last step", live.len()));
    }
    ItineraryVerdict { valid: violations.is_empty(), violations, loops_per_state, graphs, loop_moves }
}

fn spread_problem(g: &AbstractGraph, c: &Coloring, lp: &NLoop, entering: usize, leaving: usize) -> Option<String> {
    let m = g.edge_count();
    if entering >= m || leaving >= m {
        return Some("spread edge out of range".into());
    }
    if lp.edges.contains(&entering) || lp.edges.contains(&leaving) {
        return Some("spread edge lies on the loop".into());
    }
    if !lp.contains_vertex(g, g.edge(entering).1) {
        return Some(format!("edge {entering} does not enter the loop"));
    }
    if !lp.contains_vertex(g, g.edge(leaving).0) {
        return Some(format!("edge {leaving} does not leave the loop"));
    }
    if c.edges[entering] != lp.color || c.edges[leaving] != lp.color {
        return Some("spread edges do not carry the loop color".into());
    }
    None
}

/// The sub-itinerary following only the loops whose colors are in `keep`.
/// Steps with no event on a kept loop are merged into the next kept step;
/// steps after the last kept loop spreads are dropped.
pub fn restrict(it: &Itinerary, keep: &[u32]) -> Result<(Itinerary, Vec<usize>)> {
    let keep: BTreeSet<u32> = keep.iter().copied().collect();
    let loops: Vec<NLoop> = it.loops.iter().filter(|l| keep.contains(&l.color)).cloned().collect();
    let mut steps = Vec::new();
    let mut indices = vec![0];
    let mut pending: Vec<RbsMove> = Vec::new();
    let mut alive: BTreeSet<u32> = loops.iter().map(|l| l.color).collect();
    for (s, step) in it.steps.iter().enumerate() {
        if alive.is_empty() {
            break;
        }
        pending.extend(step.moves.iter().copied());
        let events: Vec<LoopEvent> = step.events.iter().filter(|e| alive.contains(&e.color)).cloned().collect();
        if events.is_empty() {
            continue;
        }
        for e in &events {
            if matches!(e.kind, EventKind::Spread { .. }) {
                alive.remove(&e.color);
            }
        }
        steps.push(ItineraryStep { moves: std::mem::take(&mut pending), coloring: step.coloring.clone(), events });
        indices.push(s + 1);
    }
    Ok((Itinerary { graph: it.graph.clone(), coloring: it.coloring.clone(), loops, steps }, indices))
}
