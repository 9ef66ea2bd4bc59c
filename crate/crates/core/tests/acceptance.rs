//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::brute::{brute_decompose, brute_power, brute_run};
use common::lambda::{brute_components, moves_of_kind, normalize, random_valid_instance, Instance, Kind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdyn::abstract_graph::{
    bound_check, build_xi, move_effect, search_shapes, validate, Effect, MoveClass, RbsMove,
};
use symdyn::density::{special_density_floor, special_window_check};
use symdyn::exit_words::{
    check_overlap_bound, classify_occurrence, decompose, repeated_windows, Classification, Representation,
};
use symdyn::language::Side;
use symdyn::rauzy::{build_special_rauzy, evolve_chain};
use symdyn::word::{count_occurrences, least_shift_step, minimal_step, valid_steps};
use symdyn::{Alphabet, LanguageOracle, Letter};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn binary_words(min: usize, max: usize) -> impl Iterator<Item = Vec<Letter>> {
    (min..=max).flat_map(|n| (0u32..1 << n).map(move |m| (0..n).map(|i| ((m >> i) & 1) as Letter).collect()))
}

fn c1_sturmian_baseline() -> Outcome {
    let t = Instant::now();
    let (_, o) = common::fib(100_000, 60);
    for n in 1..=60 {
        ensure(o.complexity(n) == n + 1, || format!("p({n}) = {}", o.complexity(n)))?;
    }
    let ecg = o.growth_profile().map_err(|e| e.to_string())?.ecg.ok_or("no constant growth")?;
    ensure(ecg.k == 1, || format!("K = {}", ecg.k))?;
    let rbc = o.check_rbc(1).map_err(|e| e.to_string())?;
    ensure(rbc.holds && rbc.violations.is_empty(), || format!("{} RBC violations", rbc.violations.len()))?;
    let mut graphs = 0;
    for n in 1..=57 {
        for w in o.factors(n) {
            let g = o.extension_graph(w.letters()).map_err(|e| e.to_string())?;
            ensure(g.is_tree, || format!("extension graph of {w} is not a tree"))?;
            graphs += 1;
        }
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("p(n) = n+1 for n <= 60, K = 1, RBC up to {}, {graphs} trees, {:.1?}", rbc.max_length_checked, t.elapsed()))
}

fn c2_iet_growth() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    for (spec, d) in [(common::iet3_spec(), 3usize), (common::iet4_spec(), 4)] {
        let (_, o) = common::iet(&spec, 100_000, 40);
        let g = o.growth_profile().map_err(|e| e.to_string())?;
        let ecg = g.ecg.ok_or_else(|| format!("{d}-IET: no constant growth"))?;
        ensure(ecg.k == d - 1, || format!("{d}-IET: K = {}", ecg.k))?;
        for n in ecg.n0..g.differences.len() {
            ensure(g.differences[n] == (d - 1) as i64, || format!("{d}-IET: p({}) - p({n}) = {}", n + 1, g.differences[n]))?;
        }
        let rbc = o.check_rbc(ecg.n0).map_err(|e| e.to_string())?;
        ensure(rbc.holds, || format!("{d}-IET: {} RBC violations", rbc.violations.len()))?;
        notes.push(format!("{d}-IET K={} from n0={}", ecg.k, ecg.n0));
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{}, {:.1?}", notes.join("; "), t.elapsed()))
}

fn c3_exit_words() -> Outcome {
    let w: Vec<Letter> = vec![1; 4];
    // A sequence holding 0 1^15 0 among shorter blocks; z is read off it.
    let mut x = Vec::new();
    for k in [1usize, 2, 15, 3, 1, 15, 2] {
        x.push(0);
        x.extend(std::iter::repeat(1).take(k));
    }
    let x: Vec<Letter> = x.iter().copied().cycle().take(4000).collect();
    let c = x.windows(17).position(|win| win[0] == 0 && win[16] == 0 && win[1..16].iter().all(|&a| a == 1)).ok_or("no 0 1^15 0")? + 1;
    let z = x[c - 1..c + 16].to_vec();

    let paper = [(3, Representation { p: vec![0], r: 4, s: vec![1, 1, 0] }), (2, Representation { p: vec![0, 1], r: 6, s: vec![0] })];
    let mut extra = 0;
    for (q, want) in &paper {
        let reps = decompose(&z, &w, *q).map_err(|e| e.to_string())?;
        ensure(reps.contains(want), || format!("q={q}: {want:?} missing from {reps:?}"))?;
        ensure(reps == brute_decompose(&z, &w, *q), || format!("q={q}: differs from the split-by-split check"))?;
        extra += reps.len() - 1;
    }
    ensure(least_shift_step(&w) == Some(1), || "least step of 1111 is not 1".into())?;
    let q1 = decompose(&z, &w, 1).map_err(|e| e.to_string())?;
    ensure(q1.len() == 1, || format!("q=1 gives {} representations", q1.len()))?;
    let count = count_occurrences(&z, &w);
    ensure(q1[0].r == count && count == 12, || format!("q=1: r = {}, |z|_w = {count}", q1[0].r))?;
    match classify_occurrence(&x, &w, c + 5, 1).map_err(|e| e.to_string())? {
        Classification::InsideExitWord { start, exit } => {
            ensure(start == c && exit.z.letters() == z.as_slice() && exit.r == 12, || format!("classified as {start} {:?}", exit.z))?;
        }
        other => return Err(format!("occurrence classified as {other:?}")),
    }
    Ok(format!(
        "both representations reproduced exactly ({extra} further valid splits for q=3,2, all checked against the definition); q=1 unique with r = |z|_w = 12"
    ))
}

fn c4_lemma_suites() -> Outcome {
    let t = Instant::now();
    let full = LanguageOracle::full_shift(Alphabet::from_chars("01").unwrap(), 18).unwrap();
    let mut words = 0;
    for w in binary_words(1, 12) {
        let qs: Vec<usize> = valid_steps(&w, &full).map_err(|e| e.to_string())?.iter().map(|c| c.q).collect();
        for &a in &qs {
            for &b in &qs {
                ensure(qs.contains(&num_integer::gcd(a, b)), || format!("{w:?}: gcd({a},{b}) not a valid step"))?;
            }
        }
        if let Some(m) = minimal_step(&w, &full).map_err(|e| e.to_string())? {
            ensure(qs.iter().all(|q| q % m == 0), || format!("{w:?}: minimal step {m} does not divide {qs:?}"))?;
            ensure(repeated_windows(&w, m).map_err(|e| e.to_string())?.is_empty(), || format!("{w:?}: repeated window"))?;
        }
        words += 1;
    }

    let mut occurrences = 0;
    let mut pairs = 0;
    for (x, o) in [common::fib(10_000, 30), common::iet(&common::iet3_spec(), 10_000, 30)] {
        let x = &x.letters;
        for n in 2..=12 {
            for w in o.factors(n) {
                let Some(q) = minimal_step(w.letters(), &o).map_err(|e| e.to_string())? else { continue };
                let w = w.letters();
                for j in symdyn::word::occurrences(x, w).positions {
                    let (a, b) = brute_run(x, w, j, q);
                    match classify_occurrence(x, w, j, q) {
                        Ok(Classification::SuffixOfPower { r }) => {
                            ensure(a == 0 && brute_power(w, q, r).ends_with(&x[..j + n - 1]), || format!("{w:?} at {j}: bad suffix case"))?;
                        }
                        Ok(Classification::InsideExitWord { start, exit }) => {
                            ensure(a > 0 && b < x.len(), || format!("{w:?} at {j}: both cases hold"))?;
                            ensure(start == a && exit.z.letters() == &x[a - 1..=b], || format!("{w:?} at {j}: wrong exit word"))?;
                            ensure(brute_decompose(exit.z.letters(), w, q).len() == 1, || format!("{w:?} at {j}: representation not unique"))?;
                        }
                        Err(e) => ensure(e.is_horizon() && b == x.len(), || format!("{w:?} at {j}: {e}"))?,
                    }
                    occurrences += 1;
                }
                let rep = check_overlap_bound(x, w, q).map_err(|e| e.to_string())?;
                ensure(rep.violations == 0, || format!("{w:?}: {} overlap violations", rep.violations))?;
                pairs += rep.pairs.len();
            }
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{words} binary words, {occurrences} occurrences classified, {pairs} overlap pairs, {:.1?}", t.elapsed()))
}

fn c5_rauzy_structure() -> Outcome {
    let mut notes = Vec::new();
    for (name, (_, o), k) in [("Fibonacci", common::fib(100_000, 60), 1usize), ("3-IET", common::iet(&common::iet3_spec(), 100_000, 40), 2)] {
        let n0 = o.growth_profile().map_err(|e| e.to_string())?.ecg.ok_or("no constant growth")?.n0.max(1);
        for n in n0..=o.horizon() - 3 {
            let sp = build_special_rauzy(&o, n).map_err(|e| e.to_string())?;
            let (kl, kr) = (sp.count_side(Side::Left), sp.count_side(Side::Right));
            ensure(sp.vertices.len() == kl + kr && sp.edges.len() == k + kl + kr, || {
                format!("{name} n={n}: {} vertices, {} edges", sp.vertices.len(), sp.edges.len())
            })?;
            ensure(sp.self_loops == 0, || format!("{name} n={n}: self-loop"))?;
        }
        let start = n0.max(2);
        let chain = evolve_chain(&o, start, o.horizon() - 3).map_err(|e| e.to_string())?;
        let events: usize = chain.steps.iter().map(|s| s.rbs_events.len()).sum();
        ensure(events >= 5, || format!("{name}: only {events} RBS events"))?;
        ensure(chain.steps.iter().all(|s| s.profile_preserved && s.order_independent && s.paths_consistent), || {
            format!("{name}: an evolution step changed the profile or depends on order")
        })?;
        notes.push(format!("{name} {events} events"));
    }
    Ok(notes.join("; "))
}

fn random_log<R: Rng>(rng: &mut R, inst: &Instance, steps: usize) -> Vec<RbsMove> {
    let mut cur = inst.clone();
    let mut log = Vec::new();
    for _ in 0..steps {
        let kind = if rng.gen_bool(0.5) { Kind::Twist } else { Kind::Shrink };
        let Some(&mv) = moves_of_kind(&cur, kind).choose(rng) else { continue };
        let m = move_effect(&cur.graph, &cur.loops, mv).expect("generated moves are admissible");
        cur = Instance { graph: m.graph, loops: m.loops };
        log.push(mv);
    }
    log
}

fn c6_xi_arithmetic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut connected, mut moves) = (0, 0);
    let trials = 200;
    for _ in 0..trials {
        let e = rng.gen_range(1..=3);
        let inst = random_valid_instance(&mut rng, e);
        let steps = rng.gen_range(0..=6);
        let log = random_log(&mut rng, &inst, steps);
        moves += log.len();
        let k = inst.graph.k();
        let b = build_xi(&inst.graph, &inst.loops, &log).map_err(|e| e.to_string())?;
        let diff = b.xi.edges.len() as i64 - b.xi.vertices.len() as i64;
        ensure(diff == k - 2 * e as i64, || format!("#edges - #vertices = {diff}, K - 2E = {}", k - 2 * e as i64))?;
        let r = bound_check(&inst.graph, &inst.loops, &log).map_err(|e| e.to_string())?;
        // Counting: a connected graph on V vertices has at least V - 1 edges.
        let counting = k - 2 * e as i64 >= -1;
        ensure(r.counting_allows_connected == counting, || "counting inequality disagrees".into())?;
        if r.xi_connected {
            ensure(r.xi_edges + 1 >= r.xi_vertices && counting, || "connected Xi with too few edges".into())?;
            ensure(2 * e as i64 <= k + 1 && r.bound_satisfied, || format!("connected Xi with E = {e}, K = {k}"))?;
            connected += 1;
        }
    }
    Ok(format!("{trials} instances, {moves} logged moves, {connected} with connected Xi"))
}

fn c7_component_moves() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = [0usize; 3];
    let mut merges = 0;
    while seen.iter().sum::<usize>() < 1200 || seen.iter().any(|&s| s < 100) {
        let e = rng.gen_range(1..=3);
        let inst = random_valid_instance(&mut rng, e);
        for (i, (kind, class)) in [(Kind::Twist, MoveClass::A), (Kind::Shrink, MoveClass::B), (Kind::Outside, MoveClass::C)].into_iter().enumerate() {
            let Some(&mv) = moves_of_kind(&inst, kind).choose(&mut rng) else { continue };
            let m = move_effect(&inst.graph, &inst.loops, mv).map_err(|e| e.to_string())?;
            let before = brute_components(&inst.graph, &inst.loops);
            let after = brute_components(&m.graph, &m.loops);
            ensure(m.class == class && m.verified, || format!("{mv:?}: class {:?}, verified {}", m.class, m.verified))?;
            ensure(normalize(&m.after.canonical()) == after, || format!("{mv:?}: components differ from recomputation"))?;
            match class {
                MoveClass::A | MoveClass::C => {
                    ensure(before == after && m.effect == Effect::Unchanged, || format!("{mv:?}: components changed"))?;
                }
                MoveClass::B => {
                    let Effect::Merged { removed, .. } = m.effect else { return Err(format!("{mv:?}: no merge reported")) };
                    let (u, v) = inst.graph.edge(mv.bispecial);
                    let pick = |x: usize| before.iter().find(|c| c.0.contains(&x)).unwrap().clone();
                    let (cu, cv) = (pick(u), pick(v));
                    let mut predicted: BTreeSet<_> = before.iter().filter(|c| **c != cu && **c != cv).cloned().collect();
                    let mut comp: Vec<usize> = cu.0.iter().chain(&cv.0).copied().collect::<BTreeSet<_>>().into_iter().collect();
                    comp.sort_unstable();
                    let j = inst.loops.iter().position(|lp| lp.edges.contains(&mv.bispecial)).unwrap();
                    let tags: Vec<Vec<usize>> = (0..inst.loops.len())
                        .map(|l| {
                            let mut t: BTreeSet<usize> = cu.1[l].iter().chain(&cv.1[l]).copied().collect();
                            if l == j {
                                t.remove(&removed);
                            }
                            t.into_iter().collect()
                        })
                        .collect();
                    ensure(removed == u || removed == v, || "removed vertex is not an end of e0".into())?;
                    predicted.insert((comp, tags));
                    ensure(predicted == after, || format!("{mv:?}: merge prediction differs"))?;
                    merges += usize::from(cu != cv);
                }
            }
            seen[i] += 1;
        }
    }
    Ok(format!("A {} / B {} / C {} moves, {merges} merging distinct components", seen[0], seen[1], seen[2]))
}

fn c8_density_floor() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let fib = common::fib_prefix(100_000);
    let iet = common::iet_prefix(&common::iet3_spec(), 100_000);
    for (name, x, k, ns, sides) in [
        ("Fibonacci", fib, 1usize, [4usize, 8, 16], vec![Side::Left]),
        ("3-IET", iet, 2, [5, 10, 20], vec![Side::Left, Side::Right]),
    ] {
        let o = symdyn::generators::oracle_from_prefix(&x, 40).map_err(|e| e.to_string())?;
        let mut worst = f64::INFINITY;
        for n in ns {
            for &side in &sides {
                let f = special_density_floor(&o, &x, n, side, k, 0.05).map_err(|e| e.to_string())?;
                ensure(f.pass, || format!("{name} n={n} {side:?}: best {:.3} < 1/{k} - 0.05", f.best))?;
                worst = worst.min(f.best);
                let wc = special_window_check(&o, &x.letters, n, side, k).map_err(|e| e.to_string())?;
                ensure(wc.failures == 0, || format!("{name} n={n} {side:?}: {} windows without a special word", wc.failures))?;
            }
        }
        notes.push(format!("{name} min best D_est {worst:.3}"));
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("{}, {:.1?}", notes.join("; "), t.elapsed()))
}

fn c9_tightness() -> Outcome {
    let k3 = search_shapes(3, 2, 8, Some(2), 9).map_err(|e| e.to_string())?;
    let (g, c, loops) = k3.found.ok_or("no K=3 graph with two 2-loops")?;
    ensure(validate(&g, Some(&c)).valid && loops.len() == 2 && loops.iter().all(|l| l.len() == 2), || "found coloring is not valid".into())?;
    ensure(loops[0].color != loops[1].color, || "loops share a color".into())?;
    let k2 = search_shapes(2, 2, 8, None, 9).map_err(|e| e.to_string())?;
    ensure(k2.found.is_none(), || "E=2 found for K=2".into())?;
    ensure(k2.exhaustive && k2.graphs_examined > 0, || "K=2 search was not exhaustive".into())?;
    Ok(format!(
        "K=3 E=2 on {} vertices; K=2 E=2 impossible across {} graphs with at most 8 vertices (exhaustive)",
        g.vertex_count(),
        k2.graphs_examined
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Sturmian baseline", c1_sturmian_baseline),
        ("IET growth", c2_iet_growth),
        ("exit-word reproduction", c3_exit_words),
        ("lemma property suites", c4_lemma_suites),
        ("Rauzy structure", c5_rauzy_structure),
        ("Xi arithmetic", c6_xi_arithmetic),
        ("component moves", c7_component_moves),
        ("density floor", c8_density_floor),
        ("tightness probe", c9_tightness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
