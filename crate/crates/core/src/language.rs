//! Finite-horizon language oracles and the combinatorics built on them:
//! extension sets, special and bispecial words, extension graphs, growth
//! profiles and regular-bispecial checks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Side::Left => "l",
            Side::Right => "r",
        }
    }
}

/// Factor sets `L_1, ..., L_H` of a factor-closed, extendable language.
#[derive(Debug, Clone)]
pub struct LanguageOracle {
    alphabet: Alphabet,
    levels: Vec<BTreeSet<Word>>,
    source: String,
    trimmed: usize,
}

impl LanguageOracle {
    /// Builds an oracle from explicit factor sets (`levels[n-1]` holds the words
    /// of length `n`) and checks factor closure and two-sided extendability.
    pub fn from_levels(alphabet: Alphabet, levels: Vec<BTreeSet<Word>>, source: impl Into<String>) -> Result<Self> {
        let oracle = Self { alphabet, levels, source: source.into(), trimmed: 0 };
        oracle.validate()?;
        Ok(oracle)
    }

    /// Every word of length at most `horizon`.
    pub fn full_shift(alphabet: Alphabet, horizon: usize) -> Result<Self> {
        Self::from_predicate(alphabet, horizon, "full shift", |_| true)
    }

    /// Words accepted by a factorial predicate, grown level by level.
    pub fn from_predicate(
        alphabet: Alphabet,
        horizon: usize,
        source: impl Into<String>,
        accept: impl Fn(&[Letter]) -> bool,
    ) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::HorizonTooSmall { needed: 1, available: 0 });
        }
        let k = alphabet.len() as Letter;
        let mut levels: Vec<BTreeSet<Word>> = Vec::with_capacity(horizon);
        let first: BTreeSet<Word> = (0..k).map(|a| Word::new(vec![a]).unwrap()).filter(|w| accept(w.letters())).collect();
        levels.push(first);
        for _ in 1..horizon {
            let prev = levels.last().unwrap();
            let next: BTreeSet<Word> = prev
                .iter()
                .flat_map(|w| (0..k).map(move |b| w.concat(&[b])))
                .filter(|w| accept(w.letters()))
                .collect();
            levels.push(next);
        }
        Self::from_levels(alphabet, levels, source)
    }

    /// Factor sets of a finite prefix. Words that only occur next to the ends
    /// of the prefix and so cannot be extended on both sides are trimmed (the
    /// number is reported by [`LanguageOracle::trimmed`]).
    pub fn from_prefix(alphabet: Alphabet, x: &[Letter], horizon: usize, source: impl Into<String>) -> Result<Self> {
        let n = x.len();
        if horizon == 0 || 4 * horizon > n {
            return Err(Error::PrefixTooShort(format!("horizon {horizon} needs a prefix of length >= {}", 4 * horizon)));
        }
        if let Some(&bad) = x.iter().find(|&&l| l as usize >= alphabet.len()) {
            return Err(Error::AlphabetMismatch(format!("letter index {bad} outside alphabet")));
        }
        // Class of the window starting at each position, refined one length at a time.
        let mut class: Vec<u32> = x.iter().map(|&l| l as u32).collect();
        let mut levels = Vec::with_capacity(horizon);
        for len in 1..=horizon {
            let count = n + 1 - len;
            if len > 1 {
                let mut ids: HashMap<(u32, Letter), u32> = HashMap::new();
                for i in 0..count {
                    let key = (class[i], x[i + len - 1]);
                    let next = ids.len() as u32;
                    class[i] = *ids.entry(key).or_insert(next);
                }
                class.truncate(count);
            }
            let mut seen: HashMap<u32, usize> = HashMap::new();
            for (i, &c) in class.iter().enumerate() {
                seen.entry(c).or_insert(i);
            }
            let set: BTreeSet<Word> = seen.values().map(|&i| Word::from_slice(&x[i..i + len]).unwrap()).collect();
            levels.push(set);
        }
        let trimmed = trim_to_language(&mut levels);
        if levels[0].is_empty() {
            return Err(Error::InvalidOracle("trimming removed every word".into()));
        }
        let oracle = Self { alphabet, levels, source: source.into(), trimmed };
        oracle.validate()?;
        Ok(oracle)
    }

    fn validate(&self) -> Result<()> {
        let h = self.horizon();
        if h == 0 || self.levels[0].is_empty() {
            return Err(Error::InvalidOracle("empty language".into()));
        }
        for (i, level) in self.levels.iter().enumerate() {
            for w in level {
                if w.len() != i + 1 {
                    return Err(Error::InvalidOracle(format!("word {w} filed under length {}", i + 1)));
                }
                if w.letters().iter().any(|&l| l as usize >= self.alphabet.len()) {
                    return Err(Error::AlphabetMismatch(format!("word {w} uses a letter outside the alphabet")));
                }
                if i > 0 {
                    let prev = &self.levels[i - 1];
                    if !prev.contains(&w.letters()[1..]) || !prev.contains(&w.letters()[..i]) {
                        return Err(Error::InvalidOracle(format!("not factor closed at {w}")));
                    }
                }
            }
        }
        for n in 1..h.saturating_sub(1) {
            let middles: BTreeSet<&[Letter]> = self.levels[n + 1].iter().map(|w| &w.letters()[1..=n]).collect();
            if let Some(w) = self.levels[n - 1].iter().find(|w| !middles.contains(w.letters())) {
                return Err(Error::InvalidOracle(format!("word {w} has no two-sided extension")));
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn horizon(&self) -> usize {
        self.levels.len()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Number of prefix windows dropped because they could not be extended.
    pub fn trimmed(&self) -> usize {
        self.trimmed
    }

    /// Words of length `n`, in alphabet order. Empty outside `1..=H`.
    pub fn factors(&self, n: usize) -> &BTreeSet<Word> {
        static EMPTY: BTreeSet<Word> = BTreeSet::new();
        if n == 0 || n > self.horizon() {
            return &EMPTY;
        }
        &self.levels[n - 1]
    }

    /// Factor complexity `p(n)`.
    pub fn complexity(&self, n: usize) -> usize {
        self.factors(n).len()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        !w.is_empty() && w.len() <= self.horizon() && self.levels[w.len() - 1].contains(w)
    }

    fn require_len(&self, len: usize, margin: usize) -> Result<()> {
        if len == 0 {
            return Err(Error::EmptyWord);
        }
        if len + margin > self.horizon() {
            return Err(Error::HorizonTooSmall { needed: len + margin, available: self.horizon() });
        }
        Ok(())
    }

    fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.alphabet.len() as Letter
    }

    pub(crate) fn left_letters(&self, w: &[Letter]) -> Vec<Letter> {
        let mut buf = Vec::with_capacity(w.len() + 1);
        self.letters()
            .filter(|&a| {
                buf.clear();
                buf.push(a);
                buf.extend_from_slice(w);
                self.contains(&buf)
            })
            .collect()
    }

    pub(crate) fn right_letters(&self, w: &[Letter]) -> Vec<Letter> {
        let mut buf = w.to_vec();
        buf.push(0);
        let last = buf.len() - 1;
        self.letters()
            .filter(|&b| {
                buf[last] = b;
                self.contains(&buf)
            })
            .collect()
    }

    pub(crate) fn side_letters(&self, w: &[Letter], side: Side) -> Vec<Letter> {
        match side {
            Side::Left => self.left_letters(w),
            Side::Right => self.right_letters(w),
        }
    }

    /// `Ex^l`, `Ex^r`, `Ex^{lr}` and the multiplicity of a factor.
    pub fn extensions(&self, w: &[Letter]) -> Result<Extensions> {
        self.require_len(w.len(), 2)?;
        if !self.contains(w) {
            return Err(Error::NotAFactor);
        }
        let left = self.left_letters(w);
        let right = self.right_letters(w);
        let mut buf = Vec::with_capacity(w.len() + 2);
        let mut both = Vec::new();
        for &a in &left {
            for &b in &right {
                buf.clear();
                buf.push(a);
                buf.extend_from_slice(w);
                buf.push(b);
                if self.contains(&buf) {
                    both.push((a, b));
                }
            }
        }
        let multiplicity = both.len() as i64 - left.len() as i64 - right.len() as i64 + 1;
        Ok(Extensions { left, right, both, multiplicity })
    }

    pub fn is_special(&self, w: &[Letter], side: Side) -> Result<bool> {
        self.require_len(w.len(), 1)?;
        Ok(self.contains(w) && self.side_letters(w, side).len() >= 2)
    }

    /// `side`-special words of length `n`, in alphabet order.
    pub fn special_words(&self, n: usize, side: Side) -> Result<Vec<Word>> {
        self.require_len(n, 1)?;
        Ok(self.factors(n).iter().filter(|w| self.side_letters(w.letters(), side).len() >= 2).cloned().collect())
    }

    pub fn bispecial_words(&self, n: usize) -> Result<Vec<Word>> {
        self.require_len(n, 1)?;
        Ok(self
            .factors(n)
            .iter()
            .filter(|w| self.left_letters(w.letters()).len() >= 2 && self.right_letters(w.letters()).len() >= 2)
            .cloned()
            .collect())
    }

    /// Whether a bispecial `w` has exactly one `b` with `wb` left special and
    /// exactly one `a` with `aw` right special.
    pub fn is_regular_bispecial(&self, w: &[Letter]) -> Result<Regularity> {
        self.require_len(w.len(), 3)?;
        if !self.contains(w) {
            return Err(Error::NotAFactor);
        }
        let left = self.left_letters(w);
        let right = self.right_letters(w);
        if left.len() < 2 || right.len() < 2 {
            return Err(Error::Precondition("word is not bispecial".into()));
        }
        let mut buf = w.to_vec();
        let wb: Vec<Letter> = right
            .iter()
            .copied()
            .filter(|&b| {
                buf.push(b);
                let special = self.left_letters(&buf).len() >= 2;
                buf.pop();
                special
            })
            .collect();
        let aw: Vec<Letter> = left
            .iter()
            .copied()
            .filter(|&a| {
                let mut v = vec![a];
                v.extend_from_slice(w);
                self.right_letters(&v).len() >= 2
            })
            .collect();
        Ok(Regularity { regular: wb.len() == 1 && aw.len() == 1, left_special_right_letters: wb, right_special_left_letters: aw })
    }

    pub fn extension_graph(&self, w: &[Letter]) -> Result<ExtensionGraph> {
        let ex = self.extensions(w)?;
        Ok(ExtensionGraph::new(ex.left, ex.right, ex.both))
    }

    pub fn growth_profile(&self) -> Result<GrowthProfile> {
        let h = self.horizon();
        let complexity: Vec<usize> = (1..=h).map(|n| self.complexity(n)).collect();
        let differences: Vec<i64> = complexity.windows(2).map(|p| p[1] as i64 - p[0] as i64).collect();
        for n in 1..h.saturating_sub(1) {
            let d = differences[n - 1];
            for side in [Side::Left, Side::Right] {
                let sum: i64 = self
                    .factors(n)
                    .iter()
                    .map(|w| self.side_letters(w.letters(), side).len() as i64 - 1)
                    .filter(|&e| e > 0)
                    .sum();
                if sum != d {
                    return Err(Error::Consistency(format!(
                        "p({})-p({n}) = {d} but {side:?} special extensions sum to {sum}",
                        n + 1
                    )));
                }
            }
        }
        let ecg = eventually_constant(&complexity, &differences);
        Ok(GrowthProfile { horizon: h, complexity, differences, ecg })
    }

    /// Classifies every bispecial of length `n_min..=H-3`.
    pub fn check_rbc(&self, n_min: usize) -> Result<RbcReport> {
        let n_min = n_min.max(1);
        let h = self.horizon();
        if n_min + 3 > h {
            return Err(Error::HorizonTooSmall { needed: n_min + 3, available: h });
        }
        let max_len = h - 3;
        let mut checked = 0;
        let mut violations = Vec::new();
        for n in n_min..=max_len {
            for w in self.bispecial_words(n)? {
                checked += 1;
                let reg = self.is_regular_bispecial(w.letters())?;
                if !reg.regular {
                    violations.push(RbcViolation { word: w, regularity: reg });
                }
            }
        }
        let n0_estimate = violations.iter().map(|v| v.word.len() + 1).max().unwrap_or(n_min);
        Ok(RbcReport {
            holds: violations.is_empty(),
            horizon: h,
            n_min,
            max_length_checked: max_len,
            bispecials_checked: checked,
            violations,
            n0_estimate,
        })
    }

    /// Whether every bispecial with length in `lo..=hi` is regular.
    pub fn rbc_on(&self, lo: usize, hi: usize) -> Result<bool> {
        for n in lo.max(1)..=hi {
            for w in self.bispecial_words(n)? {
                if !self.is_regular_bispecial(w.letters())?.regular {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Least `n0` with `p(n0) <= n0` and the least period visible at the horizon.
    pub fn periodicity_check(&self) -> PeriodicityReport {
        let h = self.horizon();
        let n0 = (1..=h).find(|&n| self.complexity(n) <= n);
        let period = n0.and_then(|_| {
            let top = self.factors(h);
            (1..h).find(|&p| top.iter().all(|w| crate::word::shift_matches(w.letters(), p)))
        });
        PeriodicityReport { horizon: h, periodic: n0.is_some(), n0, period }
    }

    /// Maps each `side`-special word of length `n1` to the unique `side`-special
    /// word of length `n2` extending it (as a prefix for left, suffix for right).
    /// Uniqueness needs regular bispecials of every length in `n1..n2`.
    pub fn special_extension_map(&self, side: Side, n1: usize, n2: usize) -> Result<Vec<(Word, Word)>> {
        if n1 == 0 || n1 > n2 {
            return Err(Error::Precondition(format!("need 1 <= n1 <= n2, got {n1}, {n2}")));
        }
        self.require_len(n2, 1)?;
        if n2 > n1 {
            self.require_len(n2 - 1, 3)?;
            if !self.rbc_on(n1, n2 - 1)? {
                return Err(Error::RbcNotEstablished(format!("irregular bispecial with length in [{n1}, {}]", n2 - 1)));
            }
        }
        let targets = self.special_words(n2, side)?;
        let mut out = Vec::new();
        for w in self.special_words(n1, side)? {
            let hits: Vec<&Word> = targets
                .iter()
                .filter(|t| match side {
                    Side::Left => t.letters().starts_with(w.letters()),
                    Side::Right => t.letters().ends_with(w.letters()),
                })
                .collect();
            if hits.len() != 1 {
                return Err(Error::Consistency(format!("{side:?} special {w} has {} extensions of length {n2}", hits.len())));
            }
            out.push((w, hits[0].clone()));
        }
        Ok(out)
    }

    /// Follows each `side`-special word of length `n1` through its unique special
    /// extensions and reports the length from which its `side` extension set
    /// stays fixed up to the horizon.
    pub fn extension_stabilization(&self, side: Side, n1: usize) -> Result<Vec<Stabilization>> {
        let h = self.horizon();
        self.require_len(n1, 3)?;
        let mut out = Vec::new();
        for w in self.special_words(n1, side)? {
            let mut cur = w.clone();
            let mut sets = vec![self.side_letters(cur.letters(), side)];
            let mut broken_at = None;
            for m in n1 + 1..=h - 1 {
                let cands: Vec<Word> = self
                    .special_words(m, side)?
                    .into_iter()
                    .filter(|t| match side {
                        Side::Left => t.letters().starts_with(cur.letters()),
                        Side::Right => t.letters().ends_with(cur.letters()),
                    })
                    .collect();
                if cands.len() != 1 {
                    broken_at = Some(m);
                    break;
                }
                cur = cands[0].clone();
                sets.push(self.side_letters(cur.letters(), side));
            }
            let last = sets.last().unwrap().clone();
            let stable_from = n1 + sets.iter().rposition(|s| *s != last).map_or(0, |i| i + 1);
            out.push(Stabilization { word: w, stable_from, last_length: n1 + sets.len() - 1, extensions: last, broken_at });
        }
        Ok(out)
    }
}

/// Removes words that cannot be extended on both sides, and words whose
/// factors were removed, until nothing changes. Returns how many went.
fn trim_to_language(levels: &mut [BTreeSet<Word>]) -> usize {
    let h = levels.len();
    let mut removed = 0;
    loop {
        let mut changed = false;
        for n in 1..h.saturating_sub(1) {
            let middles: BTreeSet<Vec<Letter>> = levels[n + 1].iter().map(|w| w.letters()[1..=n].to_vec()).collect();
            let before = levels[n - 1].len();
            levels[n - 1].retain(|w| middles.contains(w.letters()));
            removed += before - levels[n - 1].len();
            changed |= before != levels[n - 1].len();
        }
        for n in 2..=h {
            let (lo, hi) = levels.split_at_mut(n - 1);
            let prev = &lo[n - 2];
            let before = hi[0].len();
            hi[0].retain(|w| prev.contains(&w.letters()[1..]) && prev.contains(&w.letters()[..n - 1]));
            removed += before - hi[0].len();
            changed |= before != hi[0].len();
        }
        if !changed {
            return removed;
        }
    }
}

fn eventually_constant(complexity: &[usize], differences: &[i64]) -> Option<Ecg> {
    let last = *differences.last()?;
    let tail = differences.iter().rev().take_while(|&&d| d == last).count();
    let min_tail = 2.max(differences.len().div_ceil(2));
    if tail < min_tail || last < 0 {
        return None;
    }
    let n0 = differences.len() - tail + 1;
    let c = complexity[n0 - 1] as i64 - last * n0 as i64;
    Some(Ecg { k: last as usize, n0, c })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extensions {
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub both: Vec<(Letter, Letter)>,
    /// `|Ex^{lr}| - |Ex^l| - |Ex^r| + 1`.
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub regular: bool,
    /// Letters `b` with `wb` left special.
    pub left_special_right_letters: Vec<Letter>,
    /// Letters `a` with `aw` right special.
    pub right_special_left_letters: Vec<Letter>,
}

impl Regularity {
    /// `(a_hat, b_hat)` when regular.
    pub fn hats(&self) -> Option<(Letter, Letter)> {
        self.regular.then(|| (self.right_special_left_letters[0], self.left_special_right_letters[0]))
    }
}

/// Bipartite graph on `Ex^l` (left copy) and `Ex^r` (right copy) with an edge per pair in `Ex^{lr}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionGraph {
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub edges: Vec<(Letter, Letter)>,
    pub connected: bool,
    pub is_tree: bool,
}

impl ExtensionGraph {
    pub fn new(left: Vec<Letter>, right: Vec<Letter>, edges: Vec<(Letter, Letter)>) -> Self {
        let nl = left.len();
        let nv = nl + right.len();
        let pairs: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let i = left.iter().position(|&x| x == a).unwrap();
                (i, nl + right.iter().position(|&x| x == b).unwrap())
            })
            .collect();
        let connected = crate::digraph::weakly_connected(nv, &pairs);
        let is_tree = connected && edges.len() + 1 == nv;
        Self { left, right, edges, connected, is_tree }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ecg {
    /// Eventual value of `p(n+1) - p(n)`.
    pub k: usize,
    /// First `n` of the constant tail.
    pub n0: usize,
    /// `p(n) = k n + c` on the tail.
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthProfile {
    pub horizon: usize,
    /// `p(1), ..., p(H)`.
    pub complexity: Vec<usize>,
    /// `p(n+1) - p(n)` for `n = 1..H-1`.
    pub differences: Vec<i64>,
    /// Present when the differences are constant on at least the last half.
    pub ecg: Option<Ecg>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RbcViolation {
    pub word: Word,
    pub regularity: Regularity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RbcReport {
    pub holds: bool,
    pub horizon: usize,
    pub n_min: usize,
    pub max_length_checked: usize,
    pub bispecials_checked: usize,
    pub violations: Vec<RbcViolation>,
    /// One more than the longest irregular bispecial seen, or `n_min`.
    pub n0_estimate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub horizon: usize,
    pub periodic: bool,
    pub n0: Option<usize>,
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub word: Word,
    pub stable_from: usize,
    pub last_length: usize,
    pub extensions: Vec<Letter>,
    /// Length at which the special extension stopped being unique, if it did.
    pub broken_at: Option<usize>,
}

/// Largest gap between consecutive occurrences of each length-`n` factor of `x`.
pub fn return_gaps(x: &[Letter], n: usize) -> BTreeMap<Vec<Letter>, usize> {
    let mut last: HashMap<&[Letter], usize> = HashMap::new();
    let mut gaps: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
    if n == 0 || n > x.len() {
        return gaps;
    }
    for (i, win) in x.windows(n).enumerate() {
        let gap = last.insert(win, i).map_or(i + 1, |j| i - j);
        let e = gaps.entry(win.to_vec()).or_insert(0);
        *e = (*e).max(gap);
    }
    gaps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib_prefix(n: usize) -> Vec<Letter> {
        let mut x = vec![0u8];
        while x.len() < n {
            x = x.iter().flat_map(|&l| if l == 0 { vec![0, 1] } else { vec![0] }).collect();
        }
        x.truncate(n);
        x
    }

    #[test]
    fn prefix_factor_sets_small() {
        let a = Alphabet::from_chars("ab").unwrap();
        let x = a.parse_letters("abaababaabaab").unwrap();
        let o = LanguageOracle::from_prefix(a.clone(), &x, 3, "fib").unwrap();
        let l3: Vec<String> = o.factors(3).iter().map(|w| w.render(&a)).collect();
        assert_eq!(l3, vec!["aab", "aba", "baa", "bab"]);
        assert_eq!(o.trimmed(), 0);
    }

    #[test]
    fn horizon_margin() {
        let a = Alphabet::from_chars("ab").unwrap();
        let x = fib_prefix(100);
        assert!(matches!(LanguageOracle::from_prefix(a, &x, 26, ""), Err(Error::PrefixTooShort(_))));
    }

    #[test]
    fn trimming_drops_boundary_words() {
        let a = Alphabet::from_chars("ab").unwrap();
        let mut x = vec![1u8, 1];
        for _ in 0..30 {
            x.extend_from_slice(&[0, 1]);
        }
        let o = LanguageOracle::from_prefix(a, &x, 4, "").unwrap();
        assert!(!o.contains(&[1, 1]));
        assert!(o.trimmed() > 0);
        assert_eq!(o.complexity(3), 2);
    }

    #[test]
    fn fibonacci_extensions_of_a() {
        let a = Alphabet::from_chars("ab").unwrap();
        let o = LanguageOracle::from_prefix(a, &fib_prefix(400), 20, "").unwrap();
        let ex = o.extensions(&[0]).unwrap();
        assert_eq!(ex.both, vec![(0, 1), (1, 0), (1, 1)]);
        assert_eq!(ex.multiplicity, 0);
        assert_eq!(o.is_regular_bispecial(&[0]).unwrap().hats(), Some((1, 1)));
        assert!(o.extension_graph(&[0]).unwrap().is_tree);
    }

    #[test]
    fn predicate_language_growth() {
        let a = Alphabet::from_chars("01").unwrap();
        let o = LanguageOracle::from_predicate(a, 5, "at most one 1", |w| w.iter().filter(|&&l| l == 1).count() <= 1).unwrap();
        let g = o.growth_profile().unwrap();
        assert_eq!(g.complexity, vec![2, 3, 4, 5, 6]);
        assert_eq!(g.ecg, Some(Ecg { k: 1, n0: 1, c: 1 }));
    }

    #[test]
    fn non_closed_levels_rejected() {
        let a = Alphabet::from_chars("ab").unwrap();
        let l1: BTreeSet<Word> = [Word::new(vec![0]).unwrap()].into();
        let l2: BTreeSet<Word> = [Word::new(vec![0, 1]).unwrap()].into();
        assert!(matches!(LanguageOracle::from_levels(a, vec![l1, l2], ""), Err(Error::InvalidOracle(_))));
    }
}
