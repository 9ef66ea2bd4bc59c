//! Block densities: how often a word starts inside consecutive blocks of
//! length `(K+1)n`, estimated on a finite prefix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exit_words::ExitWord;
use crate::generators::SequencePrefix;
use crate::language::{LanguageOracle, Side};
use crate::word::{Letter, Word};

/// Fewer complete blocks than this and no estimate is attempted.
pub const MIN_BLOCKS: usize = 4;
/// Block count required by the special-word floor check.
pub const FLOOR_BLOCKS: usize = 32;

fn starts(x: &[Letter], w: &[Letter]) -> Vec<bool> {
    let mut out = vec![false; x.len()];
    if !w.is_empty() && w.len() <= x.len() {
        for (i, win) in x.windows(w.len()).enumerate() {
            out[i] = win == w;
        }
    }
    out
}

/// 1 when some occurrence of `w` starts in block `j` (1-based) of length `(K+1)n`.
pub fn block_indicator(w: &[Letter], x: &[Letter], j: usize, k: usize) -> Result<bool> {
    let n = w.len();
    let b = (k + 1) * n;
    if n == 0 || j == 0 {
        return Err(Error::Precondition("need a non-empty word and j >= 1".into()));
    }
    if j * b + n - 1 > x.len() {
        return Err(Error::PrefixTooShort(format!("block {j} needs {} letters", j * b + n - 1)));
    }
    Ok(((j - 1) * b..j * b).any(|i| &x[i..i + n] == w))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDensity {
    pub w: Word,
    pub k: usize,
    pub block_len: usize,
    pub n_max: usize,
    /// `S_N` for `N = 1..=n_max`.
    pub s: Vec<usize>,
    /// Maximum of `S_N / N` over `N` in `[ceil(n_max/2), n_max]`.
    pub d_est: f64,
}

impl BlockDensity {
    pub fn d(&self, n: usize) -> f64 {
        self.s[n - 1] as f64 / n as f64
    }
}

pub fn density_estimate(w: &[Letter], x: &[Letter], k: usize) -> Result<BlockDensity> {
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let b = (k + 1) * n;
    let n_max = (x.len() + 1).saturating_sub(n) / b;
    if n_max < MIN_BLOCKS {
        return Err(Error::PrefixTooShort(format!("only {n_max} complete blocks of length {b}")));
    }
    let hit = starts(x, w);
    let mut s = Vec::with_capacity(n_max);
    let mut total = 0;
    for j in 0..n_max {
        total += usize::from(hit[j * b..(j + 1) * b].iter().any(|&h| h));
        s.push(total);
    }
    let lo = n_max.div_ceil(2);
    let d_est = (lo..=n_max).map(|m| s[m - 1] as f64 / m as f64).fold(0.0, f64::max);
    Ok(BlockDensity { w: Word::from_slice(w)?, k, block_len: b, n_max, s, d_est })
}

fn require_growth(oracle: &LanguageOracle, n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("periodic language: K = 0".into()));
    }
    let g = oracle.growth_profile()?;
    match g.ecg {
        Some(e) if e.k == k && n >= e.n0 => Ok(()),
        Some(e) => Err(Error::Precondition(format!("growth is {} from n = {}, asked for K = {k} at n = {n}", e.k, e.n0))),
        None => Err(Error::Precondition("no constant growth tail within the horizon".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloorReport {
    pub n: usize,
    pub side: Side,
    pub k: usize,
    pub threshold: f64,
    pub estimates: Vec<(Word, f64)>,
    pub best: f64,
    pub pass: bool,
}

/// Checks that some `side`-special word of length `n` has estimated density
/// at least `1/K - theta_tol` in `x`.
pub fn special_density_floor(
    oracle: &LanguageOracle,
    x: &SequencePrefix,
    n: usize,
    side: Side,
    k: usize,
    theta_tol: f64,
) -> Result<FloorReport> {
    require_growth(oracle, n, k)?;
    let blocks = (x.len() + 1).saturating_sub(n) / ((k + 1) * n);
    if blocks < FLOOR_BLOCKS {
        return Err(Error::PrefixTooShort(format!("{blocks} blocks, need {FLOOR_BLOCKS}")));
    }
    let mut estimates = Vec::new();
    for w in oracle.special_words(n, side)? {
        let d = density_estimate(w.letters(), &x.letters, k)?.d_est;
        estimates.push((w, d));
    }
    let best = estimates.iter().map(|e| e.1).fold(0.0, f64::max);
    let threshold = 1.0 / k as f64 - theta_tol;
    Ok(FloorReport { n, side, k, threshold, estimates, best, pass: best >= threshold })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub n: usize,
    pub side: Side,
    pub window_len: usize,
    pub windows: usize,
    pub failures: usize,
    /// 1-based start of the first window with no special factor.
    pub first_failure: Option<usize>,
}

/// Exact check that every window `x[j .. j+(K+2)n-2]` contains a `side`-special factor of length `n`.
pub fn special_window_check(oracle: &LanguageOracle, x: &[Letter], n: usize, side: Side, k: usize) -> Result<WindowReport> {
    let specials = oracle.special_words(n, side)?;
    let window_len = (k + 2) * n - 1;
    if x.len() < window_len {
        return Err(Error::PrefixTooShort(format!("need at least {window_len} letters")));
    }
    let is_special: Vec<bool> = x.windows(n).map(|win| specials.binary_search_by(|s| s.letters().cmp(win)).is_ok()).collect();
    let span = (k + 1) * n;
    let windows = x.len() - window_len + 1;
    let mut count: usize = is_special[..span].iter().filter(|&&b| b).count();
    let mut failures = 0;
    let mut first_failure = None;
    for j in 0..windows {
        if j > 0 {
            count -= usize::from(is_special[j - 1]);
            count += usize::from(is_special[j + span - 1]);
        }
        if count == 0 {
            failures += 1;
            first_failure.get_or_insert(j + 1);
        }
    }
    Ok(WindowReport { n, side, window_len, windows, failures, first_failure })
}

/// Inequalities between densities of related words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InequalityCase {
    /// `D(sub) >= |sub| / (2|w|) D(w)` for a subword `sub` of `w`.
    Subword { w: Word, sub: Word },
    /// Some word of `family` (all of one length `m`) starts between any two
    /// occurrences of `w`; then one of them has density at least
    /// `D(w) / (p(1 + 3n/m))`, or `D(w) / 4p` when `m >= n`.
    LoopWords { w: Word, family: Vec<Word> },
    /// `D(w) >= D(z)/(3K+9)` for each exit word, and some exit word has
    /// `D(z) >= D(w) / ((2K+3)|X|)`.
    ExitDensity { w: Word, exits: Vec<ExitWord> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityResult {
    pub lemma: String,
    pub hypothesis_holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub passed: bool,
    pub note: Option<String>,
}

fn result(lemma: &str, hypothesis_holds: bool, lhs: f64, rhs: f64) -> InequalityResult {
    let passed = hypothesis_holds && lhs >= rhs;
    let note = (!passed).then(|| {
        if hypothesis_holds {
            "finite-size artifact: estimate below the limiting bound".to_string()
        } else {
            "hypothesis not met on this prefix".to_string()
        }
    });
    InequalityResult { lemma: lemma.into(), hypothesis_holds, lhs, rhs, margin: lhs - rhs, passed, note }
}

pub fn inequality_diagnostics(x: &[Letter], k: usize, cases: &[InequalityCase]) -> Result<Vec<InequalityResult>> {
    let mut out = Vec::new();
    for case in cases {
        match case {
            InequalityCase::Subword { w, sub } => {
                let hyp = w.letters().windows(sub.len()).any(|win| win == sub.letters());
                let dw = density_estimate(w.letters(), x, k)?.d_est;
                let ds = density_estimate(sub.letters(), x, k)?.d_est;
                out.push(result("subword", hyp, ds, sub.len() as f64 / (2.0 * w.len() as f64) * dw));
            }
            InequalityCase::LoopWords { w, family } => {
                let n = w.len();
                let m = family.first().map_or(0, Word::len);
                let same_len = m > 0 && family.iter().all(|z| z.len() == m);
                let hyp = same_len && loop_words_hypothesis(x, w.letters(), family);
                let dw = density_estimate(w.letters(), x, k)?.d_est;
                let best = family
                    .iter()
                    .map(|z| density_estimate(z.letters(), x, k).map(|d| d.d_est))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                let p = family.len() as f64;
                out.push(result("loop-words", hyp, best, dw / (p * (1.0 + 3.0 * n as f64 / m.max(1) as f64))));
                if m >= n {
                    out.push(result("loop-words (m >= n)", hyp, best, dw / (4.0 * p)));
                }
            }
            InequalityCase::ExitDensity { w, exits } => {
                let hyp = !exits.is_empty() && exits.iter().all(|e| e.w == *w && e.canonical);
                let dw = density_estimate(w.letters(), x, k)?.d_est;
                let dz = exits
                    .iter()
                    .map(|e| density_estimate(e.z.letters(), x, k).map(|d| d.d_est))
                    .collect::<Result<Vec<_>>>()?;
                let worst = dz.iter().copied().fold(0.0, f64::max);
                out.push(result("exit density upper", hyp, dw, worst / (3 * k + 9) as f64));
                let best = dz.iter().copied().fold(0.0, f64::max);
                let bound = dw / ((2 * k + 3) as f64 * exits.len().max(1) as f64);
                out.push(result("exit density lower", hyp, best, bound));
            }
        }
    }
    Ok(out)
}

/// Between every two consecutive occurrences `j < j'` of `w` in `x` with room
/// for both words after `j'`, some family member starts in `[j, j')`.
fn loop_words_hypothesis(x: &[Letter], w: &[Letter], family: &[Word]) -> bool {
    let m = family[0].len();
    let limit = x.len().saturating_sub(w.len().max(m));
    let occ: Vec<usize> = crate::word::occurrences(x, w).positions.into_iter().filter(|&j| j <= limit).collect();
    let mut z_start = vec![false; x.len()];
    for z in family {
        for j in crate::word::occurrences(x, z.letters()).positions {
            z_start[j - 1] = true;
        }
    }
    occ.windows(2).all(|p| z_start[p[0] - 1..p[1] - 1].iter().any(|&b| b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "labels", rename_all = "lowercase")]
pub enum ColorOutcome {
    Color(String),
    Uncolored,
    Ambiguous(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColorEstimate {
    pub ladder: Vec<Word>,
    pub theta: f64,
    /// Per candidate: the maximum estimated density over the second half of the ladder.
    pub estimates: Vec<(String, f64)>,
    pub outcome: ColorOutcome,
}

/// Thresholded color of a vertex ladder: the unique candidate measure whose
/// generic prefix gives some late ladder word density at least `theta`.
pub fn color_estimate(ladder: &[Word], candidates: &[(String, SequencePrefix)], k: usize, theta: f64) -> Result<ColorEstimate> {
    if ladder.is_empty() {
        return Err(Error::Precondition("empty ladder".into()));
    }
    if k == 0 || !(theta > 0.0 && theta < 1.0 / (2.0 * k as f64)) {
        return Err(Error::InvalidParameters(format!("theta must lie in (0, 1/(2K)), got {theta}")));
    }
    let tail = &ladder[ladder.len() / 2..];
    let mut estimates = Vec::new();
    for (label, prefix) in candidates {
        let mut best: f64 = 0.0;
        for v in tail {
            best = best.max(density_estimate(v.letters(), &prefix.letters, k)?.d_est);
        }
        estimates.push((label.clone(), best));
    }
    let passing: Vec<String> = estimates.iter().filter(|e| e.1 >= theta).map(|e| e.0.clone()).collect();
    let outcome = match passing.len() {
        0 => ColorOutcome::Uncolored,
        1 => ColorOutcome::Color(passing[0].clone()),
        _ => ColorOutcome::Ambiguous(passing),
    };
    Ok(ColorEstimate { ladder: ladder.to_vec(), theta, estimates, outcome })
}
