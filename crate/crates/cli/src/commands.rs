use std::fs;
use std::io::Write;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};
use symdyn::abstract_graph::{
    bound_check, build_xi, itinerary_check, search_colorings, to_dot, validate, validate_with_colors, AbstractGraph, Coloring, Itinerary, NLoop,
};
use symdyn::density::{density_estimate, special_density_floor, special_window_check};
use symdyn::exit_words::{decompose, enumerate_exit_words};
use symdyn::generators::SequencePrefix;
use symdyn::rauzy::{build_rauzy, build_special_rauzy, evolve_chain};
use symdyn::word::shift_matches;
use symdyn::{Alphabet, Error, LanguageOracle, Side};

use crate::input::{load_prefix, oracle, parse_range, read_json};
use crate::{
    AbstractArgs, AnalyzeArgs, Command, Common, DensityArgs, EvolveArgs, ExitArgs, Format, RauzyArgs, SideArg, XiArgs, SCHEMA_VERSION,
};

/// What a command produced: the JSON report, named DOT files and whether
/// the verdict it reports is a success.
struct Output {
    report: Value,
    dots: Vec<(String, String)>,
    ok: bool,
    horizon: Option<usize>,
}

impl Output {
    fn new(report: Value, horizon: Option<usize>) -> Self {
        Self { report, dots: Vec::new(), ok: true, horizon }
    }
}

pub fn run(cmd: &Command) -> Result<()> {
    let (common, out) = match cmd {
        Command::Analyze(a) => (&a.common, analyze(a)?),
        Command::Rauzy(a) => (&a.common, rauzy(a)?),
        Command::Evolve(a) => (&a.common, evolve(a)?),
        Command::Exitwords(a) => (&a.common, exitwords(a)?),
        Command::Density(a) => (&a.common, density(a)?),
        Command::Abstract(a) => (&a.common, abstract_graph(a)?),
        Command::Xi(a) => (&a.common, xi(a)?),
    };
    emit(cmd, common, &out)?;
    if !out.ok {
        bail!("verdict failed; see the report");
    }
    Ok(())
}

fn emit(cmd: &Command, common: &Common, out: &Output) -> Result<()> {
    let config = serde_json::to_value(cmd)?;
    let envelope = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "symdyn",
        "version": env!("CARGO_PKG_VERSION"),
        "command": config["command"],
        "config": config,
        "horizon": out.horizon,
        "report": out.report,
    });
    let text = serde_json::to_string_pretty(&envelope)? + "\n";
    if let Some(dir) = &common.out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        fs::write(dir.join("report.json"), &text)?;
        for (name, dot) in &out.dots {
            fs::write(dir.join(format!("{name}.dot")), dot)?;
        }
        return Ok(());
    }
    let body = match common.format {
        Format::Json => text,
        Format::Dot => {
            if out.dots.is_empty() {
                bail!("this command has no DOT output");
            }
            out.dots.iter().map(|(_, d)| d.as_str()).collect()
        }
    };
    match std::io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

struct Loaded {
    prefix: SequencePrefix,
    oracle: LanguageOracle,
}

fn load(input: &crate::SourceArgs, common: &Common) -> Result<Loaded> {
    let prefix = load_prefix(input)?;
    let oracle = oracle(&prefix, common.horizon)?;
    Ok(Loaded { prefix, oracle })
}

/// Lengths past `H - 3` leave no room to look at extensions of bispecials.
fn need(n: usize, horizon: usize) -> Result<()> {
    if n + 3 > horizon {
        return Err(Error::HorizonTooSmall { needed: n + 3, available: horizon }.into());
    }
    Ok(())
}

fn render(a: &Alphabet, w: &[symdyn::Letter]) -> String {
    a.render(w)
}

fn source_info(l: &Loaded) -> Value {
    json!({
        "label": l.prefix.label,
        "alphabet": l.prefix.alphabet.symbols(),
        "prefix_length": l.prefix.len(),
    })
}

fn growth_k(o: &LanguageOracle) -> Result<usize> {
    let g = o.growth_profile()?;
    g.ecg.map(|e| e.k).ok_or_else(|| anyhow::anyhow!("no eventually constant growth within the horizon; pass --k"))
}

fn analyze(a: &AnalyzeArgs) -> Result<Output> {
    let l = load(&a.input, &a.common)?;
    let growth = l.oracle.growth_profile()?;
    let n_min = growth.ecg.map_or(1, |e| e.n0.max(1));
    let rbc = l.oracle.check_rbc(n_min)?;
    let alpha = l.oracle.alphabet();
    let violations: Vec<Value> = rbc
        .violations
        .iter()
        .map(|v| json!({ "word": v.word.render(alpha), "regularity": v.regularity }))
        .collect();
    let report = json!({
        "source": source_info(&l),
        "growth": growth,
        "rbc": {
            "holds": rbc.holds,
            "n_min": rbc.n_min,
            "max_length_checked": rbc.max_length_checked,
            "bispecials_checked": rbc.bispecials_checked,
            "n0_estimate": rbc.n0_estimate,
            "violations": violations,
        },
        "periodicity": l.oracle.periodicity_check(),
    });
    Ok(Output::new(report, Some(l.oracle.horizon())))
}

fn rauzy(a: &RauzyArgs) -> Result<Output> {
    let l = load(&a.input, &a.common)?;
    need(a.n, l.oracle.horizon())?;
    let alpha = l.oracle.alphabet();
    let g = build_rauzy(&l.oracle, a.n)?;
    let sp = build_special_rauzy(&l.oracle, a.n)?;
    let report = json!({
        "source": source_info(&l),
        "n": a.n,
        "rauzy": {
            "vertices": g.vertices.len(),
            "edges": g.edges.len(),
            "connectivity": g.connectivity(),
            "left_special": (0..g.vertices.len()).filter(|&v| g.is_special(v, Side::Left)).map(|v| g.vertices[v].render(alpha)).collect::<Vec<_>>(),
            "right_special": (0..g.vertices.len()).filter(|&v| g.is_special(v, Side::Right)).map(|v| g.vertices[v].render(alpha)).collect::<Vec<_>>(),
        },
        "special": {
            "vertices": (0..sp.vertices.len()).map(|v| sp.vertex_label(v, alpha)).collect::<Vec<_>>(),
            "edges": sp.edges.iter().map(|e| json!({ "from": e.from, "to": e.to, "path": e.path.render(alpha), "internal": e.internal })).collect::<Vec<_>>(),
            "left": sp.count_side(Side::Left),
            "right": sp.count_side(Side::Right),
            "growth": sp.growth,
            "degree_identity": sp.degree_identity,
            "self_loops": sp.self_loops,
            "partial": sp.partial,
            "connectivity": sp.connectivity(),
        },
    });
    let mut out = Output::new(report, Some(l.oracle.horizon()));
    out.dots.push((format!("rauzy_{}", a.n), g.to_dot(alpha)));
    out.dots.push((format!("special_{}", a.n), sp.to_dot(alpha)));
    Ok(out)
}

fn evolve(a: &EvolveArgs) -> Result<Output> {
    let (lo, hi) = parse_range(&a.n)?;
    let l = load(&a.input, &a.common)?;
    need(hi, l.oracle.horizon())?;
    let alpha = l.oracle.alphabet();
    // Events are indexed by the length n' they reach; the chain starts one below.
    let start = lo.saturating_sub(1).max(1);
    let trace = evolve_chain(&l.oracle, start, hi)?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .zip(&trace.moves)
        .map(|(s, moves)| {
            let events: Vec<Value> = s
                .rbs_events
                .iter()
                .map(|e| {
                    json!({
                        "word": e.word.render(alpha),
                        "a_hat": alpha.symbol(e.a_hat),
                        "b_hat": alpha.symbol(e.b_hat),
                        "move": e.mv,
                    })
                })
                .collect();
            json!({
                "n": s.n,
                "n_tilde": s.n_tilde,
                "n_prime": s.n_prime,
                "events": events,
                "moves": moves,
                "order_independent": s.order_independent,
                "paths_consistent": s.paths_consistent,
                "profile_preserved": s.profile_preserved,
                "bound": s.bound,
                "vertices_before": s.graph.vertices.len(),
                "vertices_after": s.next.vertices.len(),
            })
        })
        .collect();
    let report = json!({
        "source": source_info(&l),
        "range": [lo, hi],
        "start": trace.start,
        "graph": trace.graph,
        "steps": steps,
        "consistent": trace.consistent,
        "stopped": trace.stopped,
    });
    let mut out = Output::new(report, Some(l.oracle.horizon()));
    for s in &trace.steps {
        out.dots.push((format!("special_{}", s.n_tilde), s.graph.to_dot(alpha)));
    }
    if let Some(last) = trace.steps.last() {
        out.dots.push((format!("special_{}", last.n_prime), last.next.to_dot(alpha)));
    }
    Ok(out)
}

fn exitwords(a: &ExitArgs) -> Result<Output> {
    let l = load(&a.input, &a.common)?;
    let alpha = l.oracle.alphabet();
    let w = alpha.parse_letters(&a.w)?;
    if w.is_empty() {
        return Err(Error::EmptyWord.into());
    }
    let en = enumerate_exit_words(&w, a.q, &l.oracle)?;
    let other_steps: Vec<usize> = (1..w.len()).filter(|&q| shift_matches(&w, q)).collect();
    let rep = |r: &symdyn::exit_words::Representation| json!({ "p": render(alpha, &r.p), "r": r.r, "s": render(alpha, &r.s) });
    let mut words = Vec::new();
    for (ew, reps) in en.words.iter().zip(&en.representations) {
        let mut by_step = serde_json::Map::new();
        for &q in &other_steps {
            let all = decompose(ew.z.letters(), &w, q)?;
            by_step.insert(q.to_string(), Value::Array(all.iter().map(rep).collect()));
        }
        words.push(json!({
            "z": ew.z.render(alpha),
            "p": render(alpha, &ew.p),
            "r": ew.r,
            "s": render(alpha, &ew.s),
            "canonical": ew.canonical,
            "representations": reps.iter().map(rep).collect::<Vec<_>>(),
            "by_step": by_step,
        }));
    }
    let k = l.oracle.growth_profile()?.ecg.map(|e| e.k);
    let report = json!({
        "source": source_info(&l),
        "w": render(alpha, &w),
        "q": a.q,
        "steps": other_steps,
        "count": en.words.len(),
        "count_margin": k.map(|k| en.count_margin(k)),
        "partial": en.partial,
        "cut_length": en.cut_length,
        "max_r_per_ps": en.max_r_per_ps,
        "words": words,
    });
    Ok(Output::new(report, Some(l.oracle.horizon())))
}

fn density(a: &DensityArgs) -> Result<Output> {
    let l = load(&a.input, &a.common)?;
    let alpha = l.oracle.alphabet();
    let k = match a.k {
        Some(k) => k,
        None => growth_k(&l.oracle)?,
    };
    if k == 0 {
        bail!("K must be positive");
    }
    let mut report = json!({ "source": source_info(&l), "k": k, "theta_tol": a.theta_tol });
    let mut ok = true;
    if let Some(text) = &a.w {
        let w = alpha.parse_letters(text)?;
        let d = density_estimate(&w, &l.prefix.letters, k)?;
        let theta = a.theta.unwrap_or(1.0 / (4 * k) as f64);
        report["word"] = json!({
            "w": render(alpha, &w),
            "block_len": d.block_len,
            "blocks": d.n_max,
            "d_est": d.d_est,
            "theta": theta,
            "pass": d.d_est >= theta,
        });
    }
    if a.special {
        let n = a.n.context("--special needs --n")?;
        need(n, l.oracle.horizon())?;
        let sides = match a.side {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => vec![Side::Left, Side::Right],
        };
        let mut checks = Vec::new();
        for side in sides {
            let f = special_density_floor(&l.oracle, &l.prefix, n, side, k, a.theta_tol)?;
            let wc = special_window_check(&l.oracle, &l.prefix.letters, n, side, k)?;
            ok &= f.pass && wc.failures == 0;
            let estimates: Vec<Value> = f.estimates.iter().map(|(w, d)| json!({ "w": w.render(alpha), "d_est": d })).collect();
            checks.push(json!({
                "side": side,
                "threshold": f.threshold,
                "best": f.best,
                "pass": f.pass,
                "estimates": estimates,
                "windows": wc,
            }));
        }
        report["special"] = Value::Array(checks);
        report["pass"] = json!(ok);
    } else if a.w.is_none() {
        bail!("give --special with --n, or --w");
    }
    Ok(Output::new(report, Some(l.oracle.horizon())))
}

#[derive(Deserialize)]
struct GraphFile {
    graph: AbstractGraph,
    coloring: Option<Coloring>,
    #[serde(default)]
    loops: Vec<NLoop>,
    /// Number of colors E the coloring is meant to use.
    colors: Option<u32>,
}

fn abstract_graph(a: &AbstractArgs) -> Result<Output> {
    let f: GraphFile = read_json(&a.graph)?;
    for lp in &f.loops {
        lp.check(&f.graph)?;
    }
    let coloring = f.coloring.clone().or_else(|| (!f.loops.is_empty()).then(|| Coloring::from_loops(&f.graph, &f.loops)));
    let verdict = match (&coloring, f.colors) {
        (Some(c), Some(e)) => validate_with_colors(&f.graph, c, e),
        (c, _) => validate(&f.graph, c.as_ref()),
    };
    let mut report = json!({
        "vertices": f.graph.vertex_count(),
        "edges": f.graph.edge_count(),
        "k": f.graph.k(),
        "verdict": verdict,
    });
    let mut out = Output::new(Value::Null, None);
    out.dots.push(("graph".into(), to_dot(&f.graph, coloring.as_ref(), &f.loops)));
    if let Some(e) = a.search {
        let s = search_colorings(&f.graph, e, a.max_len, a.common.seed)?;
        if let Some((c, loops)) = &s.found {
            out.dots.push(("found".into(), to_dot(&f.graph, Some(c), loops)));
        }
        report["search"] = serde_json::to_value(&s)?;
    }
    out.ok = verdict.valid;
    out.report = report;
    Ok(out)
}

fn xi(a: &XiArgs) -> Result<Output> {
    let it: Itinerary = read_json(&a.itinerary)?;
    let verdict = itinerary_check(&it);
    let mut report = json!({ "itinerary": verdict });
    let mut out = Output::new(Value::Null, None);
    out.dots.push(("itinerary".into(), to_dot(&it.graph, Some(&it.coloring), &it.loops)));
    if verdict.valid {
        let built = build_xi(&it.graph, &it.loops, &verdict.loop_moves)?;
        let bound = bound_check(&it.graph, &it.loops, &verdict.loop_moves)?;
        report["xi"] = json!({
            "vertices": (0..built.xi.vertices.len()).map(|i| built.xi.label(i)).collect::<Vec<_>>(),
            "edges": built.xi.edge_labels(),
            "skipped_moves": built.skipped,
        });
        report["bound"] = serde_json::to_value(&bound)?;
        out.dots.push(("xi".into(), built.xi.to_dot()));
    }
    out.ok = verdict.valid;
    out.report = report;
    Ok(out)
}
