//! Rauzy graphs, special Rauzy graphs and their evolution between
//! consecutive bispecial lengths.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abstract_graph::{rewire, AbstractGraph, RbsMove};
use crate::digraph;
use crate::error::{Error, Result};
use crate::language::{LanguageOracle, Side};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RauzyEdge {
    pub from: usize,
    pub to: usize,
    pub word: Word,
}

/// `Γ_n`: factors of length `n`, joined by the factors of length `n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RauzyGraph {
    pub n: usize,
    pub vertices: Vec<Word>,
    pub edges: Vec<RauzyEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub strong: bool,
    pub weak: bool,
}

fn connectivity_of(n: usize, edges: &[(usize, usize)]) -> Connectivity {
    Connectivity { strong: digraph::strongly_connected(n, edges), weak: digraph::weakly_connected(n, edges) }
}

pub fn build_rauzy(oracle: &LanguageOracle, n: usize) -> Result<RauzyGraph> {
    check_n(oracle, n)?;
    let vertices: Vec<Word> = oracle.factors(n).iter().cloned().collect();
    let index: BTreeMap<&[Letter], usize> = vertices.iter().enumerate().map(|(i, w)| (w.letters(), i)).collect();
    let edges: Vec<RauzyEdge> = oracle
        .factors(n + 1)
        .iter()
        .map(|w| RauzyEdge { from: index[&w.letters()[..n]], to: index[&w.letters()[1..]], word: w.clone() })
        .collect();
    let g = RauzyGraph { n, vertices, edges };
    for (v, w) in g.vertices.iter().enumerate() {
        let indeg = g.edges.iter().filter(|e| e.to == v).count();
        let outdeg = g.edges.iter().filter(|e| e.from == v).count();
        if indeg != oracle.left_letters(w.letters()).len() || outdeg != oracle.right_letters(w.letters()).len() {
            return Err(Error::Consistency(format!("degrees of {w} disagree with its extensions")));
        }
    }
    Ok(g)
}

fn check_n(oracle: &LanguageOracle, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    if n + 2 > oracle.horizon() {
        return Err(Error::HorizonTooSmall { needed: n + 2, available: oracle.horizon() });
    }
    Ok(())
}

impl RauzyGraph {
    fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }

    pub fn connectivity(&self) -> Connectivity {
        connectivity_of(self.vertices.len(), &self.pairs())
    }

    pub fn is_special(&self, v: usize, side: Side) -> bool {
        let deg = match side {
            Side::Left => self.edges.iter().filter(|e| e.to == v).count(),
            Side::Right => self.edges.iter().filter(|e| e.from == v).count(),
        };
        deg >= 2
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut s = format!("digraph Gamma_{} {{\n", self.n);
        for w in &self.vertices {
            let _ = writeln!(s, "  \"{}\";", w.render(alphabet));
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertices[e.from].render(alphabet),
                self.vertices[e.to].render(alphabet),
                e.word.render(alphabet)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// A simple circuit of `Γ_n` through vertices that are not `side`-special.
pub fn special_free_circuit(graph: &RauzyGraph, side: Side) -> Option<Vec<Word>> {
    let allowed: Vec<bool> = (0..graph.vertices.len()).map(|v| !graph.is_special(v, side)).collect();
    digraph::find_cycle(graph.vertices.len(), &graph.pairs(), &allowed)
        .map(|c| c.into_iter().map(|v| graph.vertices[v].clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpVertex {
    pub word: Word,
    /// `Left` for left special words and the left half of a bispecial.
    pub side: Side,
    pub bispecial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpEdge {
    pub from: usize,
    pub to: usize,
    /// The branchless path as a word; the bispecial word itself for an internal edge.
    pub path: Word,
    pub internal: bool,
}

/// `Γ_n^sp`: special words as vertices, with each bispecial split in two and
/// joined by an internal edge, and branchless paths as the other edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialRauzyGraph {
    pub n: usize,
    pub vertices: Vec<SpVertex>,
    pub edges: Vec<SpEdge>,
    /// Set when some walk met no special word within `|L_n|` steps.
    pub partial: bool,
    pub self_loops: usize,
    /// `p(n+1) - p(n)`.
    pub growth: i64,
    /// Whether both sums of excess degrees equal `growth`.
    pub degree_identity: bool,
}

pub fn build_special_rauzy(oracle: &LanguageOracle, n: usize) -> Result<SpecialRauzyGraph> {
    check_n(oracle, n)?;
    let left: BTreeSet<Word> = oracle.special_words(n, Side::Left)?.into_iter().collect();
    let right: BTreeSet<Word> = oracle.special_words(n, Side::Right)?.into_iter().collect();
    let mut vertices = Vec::new();
    for w in left.union(&right) {
        let bi = left.contains(w) && right.contains(w);
        if left.contains(w) {
            vertices.push(SpVertex { word: w.clone(), side: Side::Left, bispecial: bi });
        }
        if right.contains(w) {
            vertices.push(SpVertex { word: w.clone(), side: Side::Right, bispecial: bi });
        }
    }
    let index: BTreeMap<(Word, Side), usize> =
        vertices.iter().enumerate().map(|(i, v)| ((v.word.clone(), v.side), i)).collect();
    let cap = oracle.complexity(n) + 1;
    let mut edges = Vec::new();
    let mut partial = false;
    for (i, v) in vertices.iter().enumerate() {
        if v.side == Side::Left && v.bispecial {
            edges.push(SpEdge { from: i, to: index[&(v.word.clone(), Side::Right)], path: v.word.clone(), internal: true });
            continue;
        }
        for c in oracle.right_letters(v.word.letters()) {
            let mut path = v.word.letters().to_vec();
            path.push(c);
            let mut target = None;
            for _ in 0..cap {
                let window = &path[path.len() - n..];
                if left.contains(window) {
                    target = Some(index[&(Word::from_slice(window)?, Side::Left)]);
                    break;
                }
                if right.contains(window) {
                    target = Some(index[&(Word::from_slice(window)?, Side::Right)]);
                    break;
                }
                let next = oracle.right_letters(window);
                if next.len() != 1 {
                    break;
                }
                path.push(next[0]);
            }
            match target {
                Some(to) => edges.push(SpEdge { from: i, to, path: Word::new(path)?, internal: false }),
                None => partial = true,
            }
        }
    }
    let self_loops = edges.iter().filter(|e| e.from == e.to).count();
    let growth = oracle.complexity(n + 1) as i64 - oracle.complexity(n) as i64;
    let mut g = SpecialRauzyGraph { n, vertices, edges, partial, self_loops, growth, degree_identity: false };
    let (mut sl, mut sr) = (0i64, 0i64);
    for v in 0..g.vertices.len() {
        match g.vertices[v].side {
            Side::Left => sl += g.in_degree(v) as i64 - 1,
            Side::Right => sr += g.out_degree(v) as i64 - 1,
        }
    }
    g.degree_identity = !partial && sl == growth && sr == growth;
    Ok(g)
}

impl SpecialRauzyGraph {
    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.to == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    pub fn count_side(&self, side: Side) -> usize {
        self.vertices.iter().filter(|v| v.side == side).count()
    }

    pub fn connectivity(&self) -> Connectivity {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        connectivity_of(self.vertices.len(), &pairs)
    }

    pub fn vertex_label(&self, v: usize, alphabet: &Alphabet) -> String {
        let x = &self.vertices[v];
        if x.bispecial {
            format!("{}^{}", x.word.render(alphabet), x.side.short())
        } else {
            x.word.render(alphabet)
        }
    }

    pub fn index_of(&self, word: &[Letter], side: Side) -> Option<usize> {
        self.vertices.iter().position(|v| v.word.letters() == word && v.side == side)
    }

    /// The same graph with vertex and edge indices kept.
    pub fn to_abstract(&self, alphabet: &Alphabet) -> Result<AbstractGraph> {
        let vertices = (0..self.vertices.len())
            .map(|v| (format!("{}:{}", self.vertices[v].word.render(alphabet), self.vertices[v].side.short()), self.vertices[v].side))
            .collect();
        AbstractGraph::new(vertices, self.edges.iter().map(|e| (e.from, e.to)).collect())
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut s = format!("digraph Gamma_sp_{} {{\n", self.n);
        for v in 0..self.vertices.len() {
            let shape = if self.vertices[v].side == Side::Left { "invtriangle" } else { "triangle" };
            let _ = writeln!(s, "  \"{}\" [shape={shape}];", self.vertex_label(v, alphabet));
        }
        for e in &self.edges {
            let style = if e.internal { ", style=dashed" } else { "" };
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"{style}];",
                self.vertex_label(e.from, alphabet),
                self.vertex_label(e.to, alphabet),
                e.path.len()
            );
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representatives {
    pub edge: usize,
    /// The path word the windows were taken from.
    pub path: Word,
    /// Set for an internal edge, whose path is rewritten as `âwb̂`.
    pub rewritten: bool,
    /// 1-based window positions with their words.
    pub windows: Vec<(usize, Word)>,
}

/// Length-`n` windows of an edge's path that only that edge's path can pass
/// through: the first is dropped after a right special, the last before a
/// left special.
pub fn representatives(oracle: &LanguageOracle, graph: &SpecialRauzyGraph, edge: usize) -> Result<Representatives> {
    let e = graph.edges.get(edge).ok_or_else(|| Error::InvalidParameters(format!("no edge {edge}")))?;
    let n = graph.n;
    let (path, from_right, to_left) = if e.internal {
        let reg = oracle.is_regular_bispecial(e.path.letters())?;
        let (a, b) = reg.hats().ok_or_else(|| Error::RbcNotEstablished(format!("bispecial {} is not regular", e.path)))?;
        let mut p = vec![a];
        p.extend_from_slice(e.path.letters());
        p.push(b);
        (Word::new(p)?, true, true)
    } else {
        (e.path.clone(), graph.vertices[e.from].side == Side::Right, graph.vertices[e.to].side == Side::Left)
    };
    let last = path.len() - n + 1;
    let windows = (1..=last)
        .filter(|&j| !(from_right && j == 1) && !(to_left && j == last))
        .map(|j| Ok((j, path.sub(j, j + n - 1)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Representatives { edge, path, rewritten: e.internal, windows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RbsEvent {
    pub word: Word,
    pub a_hat: Letter,
    pub b_hat: Letter,
    /// Move on the edge indices of `Γ_ñ^sp`.
    pub mv: RbsMove,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NprimeBound {
    pub k: usize,
    pub c: i64,
    pub kn_plus_c: i64,
    pub k1n_plus_c: i64,
    pub within_kn_plus_c: bool,
    pub within_k1n_plus_c: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvolutionStep {
    pub n: usize,
    pub n_tilde: usize,
    pub n_prime: usize,
    /// Vertex `i` of `Γ_n^sp` is vertex `vertex_map[i]` of `Γ_ñ^sp`.
    pub vertex_map: Vec<usize>,
    /// Edge `i` of `Γ_n^sp` is edge `edge_map[i]` of `Γ_ñ^sp`.
    pub edge_map: Vec<usize>,
    pub rbs_events: Vec<RbsEvent>,
    /// Moves applied in order and in reverse order give the same graph.
    pub order_independent: bool,
    /// Vertex `i` of `Γ_ñ^sp` is vertex `next_vertex_map[i]` of `Γ_{n'}^sp`.
    pub next_vertex_map: Vec<usize>,
    /// Edge `i` of the predicted graph is edge `next_edge_map[i]` of `Γ_{n'}^sp`.
    pub next_edge_map: Vec<usize>,
    /// Every matched edge's old path is a factor of its new path.
    pub paths_consistent: bool,
    pub profile_preserved: bool,
    pub bound: Option<NprimeBound>,
    pub graph: SpecialRauzyGraph,
    pub next: SpecialRauzyGraph,
}

/// Least `m >= n` with a bispecial of length `m`, among lengths whose
/// regularity can be decided.
pub fn next_bispecial_length(oracle: &LanguageOracle, n: usize) -> Result<usize> {
    let h = oracle.horizon();
    if n + 3 > h {
        return Err(Error::HorizonTooSmall { needed: n + 3, available: h });
    }
    for m in n..=h - 3 {
        if !oracle.bispecial_words(m)?.is_empty() {
            return Ok(m);
        }
    }
    Err(Error::HorizonTooSmall { needed: h + 1, available: h })
}

/// Matches the edges of `a` to those of `b` under a vertex map, preferring
/// pairs whose old path is a factor of the new one.
fn match_edges(
    a_edges: &[(usize, usize)],
    a_paths: &[&[Letter]],
    vmap: &[usize],
    b: &SpecialRauzyGraph,
) -> Option<(Vec<usize>, bool)> {
    let m = a_edges.len();
    if b.edges.len() != m {
        return None;
    }
    let mut strict = Vec::new();
    let mut loose = Vec::new();
    for (i, &(x, y)) in a_edges.iter().enumerate() {
        for (j, f) in b.edges.iter().enumerate() {
            if f.from == vmap[x] && f.to == vmap[y] {
                loose.push((i, j));
                if is_factor(a_paths[i], f.path.letters()) {
                    strict.push((i, j));
                }
            }
        }
    }
    if let Some(mm) = digraph::perfect_matching(m, &strict) {
        return Some((mm, true));
    }
    digraph::perfect_matching(m, &loose).map(|mm| (mm, false))
}

fn is_factor(needle: &[Letter], hay: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

fn map_vertices(oracle: &LanguageOracle, from: &SpecialRauzyGraph, to: &SpecialRauzyGraph) -> Result<Vec<usize>> {
    let mut maps = BTreeMap::new();
    for side in [Side::Left, Side::Right] {
        for (a, b) in oracle.special_extension_map(side, from.n, to.n)? {
            maps.insert((a, side), b);
        }
    }
    let out = from
        .vertices
        .iter()
        .map(|v| {
            let image = &maps[&(v.word.clone(), v.side)];
            to.index_of(image.letters(), v.side)
                .ok_or_else(|| Error::Consistency(format!("no vertex for the image of {}", v.word)))
        })
        .collect::<Result<Vec<usize>>>()?;
    let distinct: BTreeSet<usize> = out.iter().copied().collect();
    if distinct.len() != out.len() || out.len() != to.vertices.len() {
        return Err(Error::Consistency(format!("special graphs at {} and {} have different vertices", from.n, to.n)));
    }
    Ok(out)
}

/// Carries `Γ_n^sp` to `Γ_{n'}^sp`, where `n' = ñ + 1` and `ñ` is the first
/// bispecial length from `n` on. Checks that nothing changes up to `ñ`,
/// predicts `Γ_{n'}^sp` by applying one RBS move per bispecial of length
/// `ñ`, and matches the prediction against the graph built directly.
pub fn evolve(oracle: &LanguageOracle, n: usize) -> Result<EvolutionStep> {
    let alphabet = oracle.alphabet();
    let n_tilde = next_bispecial_length(oracle, n)?;
    let n_prime = n_tilde + 1;
    if !oracle.rbc_on(n, n_tilde)? {
        return Err(Error::RbcNotEstablished(format!("irregular bispecial with length in [{n}, {n_tilde}]")));
    }
    let graph = build_special_rauzy(oracle, n)?;
    let tilde = build_special_rauzy(oracle, n_tilde)?;
    let next = build_special_rauzy(oracle, n_prime)?;
    for g in [&graph, &tilde, &next] {
        if g.partial {
            return Err(Error::HorizonTooSmall { needed: oracle.horizon() + 1, available: oracle.horizon() });
        }
    }

    let vertex_map = map_vertices(oracle, &graph, &tilde)?;
    let pairs: Vec<(usize, usize)> = graph.edges.iter().map(|e| (e.from, e.to)).collect();
    let paths: Vec<&[Letter]> = graph.edges.iter().map(|e| e.path.letters()).collect();
    let (edge_map, _) = match_edges(&pairs, &paths, &vertex_map, &tilde)
        .ok_or_else(|| Error::Consistency(format!("special graphs at {n} and {n_tilde} differ")))?;

    let mut rbs_events = Vec::new();
    for w in oracle.bispecial_words(n_tilde)? {
        let reg = oracle.is_regular_bispecial(w.letters())?;
        let (a_hat, b_hat) = reg.hats().expect("checked regular above");
        let u = tilde.index_of(w.letters(), Side::Left).expect("bispecial has a left vertex");
        let v = tilde.index_of(w.letters(), Side::Right).expect("bispecial has a right vertex");
        let e0 = tilde.edges.iter().position(|e| e.internal && e.from == u).expect("internal edge");
        let into_v = tilde
            .edges
            .iter()
            .position(|e| e.to == u && e.path.letters()[e.path.len() - n_tilde - 1] == a_hat)
            .ok_or_else(|| Error::Consistency(format!("no edge enters {w} through its left hat")))?;
        let out_of_u = tilde
            .edges
            .iter()
            .position(|e| e.from == v && e.path.letters()[n_tilde] == b_hat)
            .ok_or_else(|| Error::Consistency(format!("no edge leaves {w} through its right hat")))?;
        rbs_events.push(RbsEvent { word: w, a_hat, b_hat, mv: RbsMove { bispecial: e0, into_v, out_of_u } });
    }

    let base = tilde.to_abstract(alphabet)?;
    let forward = rbs_events.iter().try_fold(base.clone(), |g, ev| rewire(&g, ev.mv))?;
    let backward = rbs_events.iter().rev().try_fold(base.clone(), |g, ev| rewire(&g, ev.mv))?;
    let order_independent = forward == backward;

    let next_vertex_map = map_vertices(oracle, &tilde, &next)?;
    let tilde_paths: Vec<&[Letter]> = tilde.edges.iter().map(|e| e.path.letters()).collect();
    let (next_edge_map, paths_consistent) = match_edges(forward.edges(), &tilde_paths, &next_vertex_map, &next)
        .ok_or_else(|| Error::Consistency(format!("predicted graph does not match the special graph at {n_prime}")))?;

    let profile_preserved = graph.to_abstract(alphabet)?.profile() == next.to_abstract(alphabet)?.profile();
    let bound = oracle.growth_profile()?.ecg.map(|ecg| {
        let kn = ecg.k as i64 * n as i64 + ecg.c;
        let k1n = (ecg.k as i64 + 1) * n as i64 + ecg.c;
        NprimeBound {
            k: ecg.k,
            c: ecg.c,
            kn_plus_c: kn,
            k1n_plus_c: k1n,
            within_kn_plus_c: n_prime as i64 <= kn,
            within_k1n_plus_c: n_prime as i64 <= k1n,
        }
    });
    Ok(EvolutionStep {
        n,
        n_tilde,
        n_prime,
        vertex_map,
        edge_map,
        rbs_events,
        order_independent,
        next_vertex_map,
        next_edge_map,
        paths_consistent,
        profile_preserved,
        bound,
        graph,
        next,
    })
}

/// A run of evolution steps with vertex and edge identities carried from the
/// first graph, so the RBS moves form a move log on one abstract graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub start: usize,
    pub graph: AbstractGraph,
    pub steps: Vec<EvolutionStep>,
    /// Moves of each step on the stable edge identities of `graph`.
    pub moves: Vec<Vec<RbsMove>>,
    /// The move log reproduces every directly built graph.
    pub consistent: bool,
    /// Why the run stopped before `n_max`, if it did.
    pub stopped: Option<String>,
}

/// Evolves from `n` while the next length stays at most `n_max`. A step that
/// fails for lack of horizon ends the run; other errors are returned.
pub fn evolve_chain(oracle: &LanguageOracle, n: usize, n_max: usize) -> Result<EvolutionTrace> {
    let alphabet = oracle.alphabet();
    let first = build_special_rauzy(oracle, n)?;
    let graph = first.to_abstract(alphabet)?;
    // id -> index in the current special graph, for vertices and edges
    let mut vcur: Vec<usize> = (0..graph.vertex_count()).collect();
    let mut ecur: Vec<usize> = (0..graph.edge_count()).collect();
    let mut lambda = graph.clone();
    let mut steps = Vec::new();
    let mut moves = Vec::new();
    let mut consistent = true;
    let mut stopped = None;
    let mut cur = n;
    loop {
        let step = match evolve(oracle, cur) {
            Ok(s) => s,
            Err(e) if e.is_horizon() && !steps.is_empty() => {
                stopped = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        };
        if step.n_prime > n_max {
            break;
        }
        let ids_tilde: Vec<usize> = ecur.iter().map(|&i| step.edge_map[i]).collect();
        let id_of = |t: usize| ids_tilde.iter().position(|&x| x == t).expect("edge map is a bijection");
        let mv: Vec<RbsMove> = step
            .rbs_events
            .iter()
            .map(|ev| RbsMove { bispecial: id_of(ev.mv.bispecial), into_v: id_of(ev.mv.into_v), out_of_u: id_of(ev.mv.out_of_u) })
            .collect();
        for &m in &mv {
            lambda = rewire(&lambda, m)?;
        }
        vcur = vcur.iter().map(|&i| step.next_vertex_map[step.vertex_map[i]]).collect();
        ecur = ids_tilde.iter().map(|&t| step.next_edge_map[t]).collect();
        for (id, &(a, b)) in lambda.edges().iter().enumerate() {
            let e = &step.next.edges[ecur[id]];
            consistent &= e.from == vcur[a] && e.to == vcur[b];
        }
        cur = step.n_prime;
        moves.push(mv);
        steps.push(step);
    }
    Ok(EvolutionTrace { start: n, graph, steps, moves, consistent, stopped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{oracle_from_prefix, substitution_fixed_point, Substitution};

    fn fib(h: usize) -> LanguageOracle {
        let x = substitution_fixed_point(&Substitution::fibonacci(), 4000).unwrap();
        oracle_from_prefix(&x, h).unwrap()
    }

    #[test]
    fn fibonacci_gamma_4() {
        let o = fib(20);
        let g = build_rauzy(&o, 4).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (5, 6));
        let sp = build_special_rauzy(&o, 4).unwrap();
        assert_eq!((sp.vertices.len(), sp.edges.len()), (2, 3));
        assert!(sp.degree_identity && !sp.partial && sp.self_loops == 0);
    }

    #[test]
    fn fibonacci_evolves_from_4_to_7() {
        let o = fib(30);
        let s = evolve(&o, 4).unwrap();
        assert_eq!((s.n_tilde, s.n_prime), (6, 7));
        assert_eq!(s.rbs_events.len(), 1);
        assert!(s.order_independent && s.paths_consistent && s.profile_preserved);
    }

    #[test]
    fn periodic_circuit() {
        let a = Alphabet::from_chars("01").unwrap();
        let x: Vec<Letter> = (0..200).map(|i| (i % 2) as Letter).collect();
        let o = LanguageOracle::from_prefix(a, &x, 10, "(01)").unwrap();
        let g = build_rauzy(&o, 2).unwrap();
        assert_eq!(special_free_circuit(&g, Side::Left).map(|c| c.len()), Some(2));
    }
}
