//! Exit words: maximal stretches of a periodic walk `w^{q*r}` together with the
//! letter that enters the walk and the letter that leaves it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::language::LanguageOracle;
use crate::word::{self, count_occurrences, least_shift_step, power_letters, shift_matches, Letter, Word};

/// One way of writing `z = p · w^{q*r} · s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Representation {
    pub p: Vec<Letter>,
    pub r: usize,
    pub s: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExitWord {
    pub z: Word,
    pub w: Word,
    pub q: usize,
    pub r: usize,
    pub p: Vec<Letter>,
    pub s: Vec<Letter>,
    /// True when `q` is the minimal step of `w` in the language used.
    pub canonical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExitEnumeration {
    pub w: Word,
    pub q: usize,
    pub words: Vec<ExitWord>,
    /// Every representation found, keyed like `words`.
    pub representations: Vec<Vec<Representation>>,
    /// Some walk reached the horizon before leaving the loop.
    pub partial: bool,
    pub cut_length: Option<usize>,
    /// Largest number of distinct `r` seen for one `(p, s)` pair.
    pub max_r_per_ps: usize,
}

impl ExitEnumeration {
    /// `2K^2 - count`, negative when the count exceeds the bound at this length.
    pub fn count_margin(&self, k: usize) -> i64 {
        2 * (k * k) as i64 - self.words.len() as i64
    }
}

fn check_period(w: &[Letter], q: usize) -> Result<()> {
    if q == 0 || q >= w.len() {
        return Err(Error::StepTooLarge { q, n: w.len() });
    }
    if !shift_matches(w, q) {
        return Err(Error::InvalidStep { q });
    }
    Ok(())
}

/// Letter of `w^{q*inf}` at offset `t` from the start of `w`, extended to the left periodically.
fn periodic_at(w: &[Letter], q: usize, t: i64) -> Letter {
    word::periodic_letter(w, q, t.rem_euclid(q as i64) as usize)
}

/// Items 2 and 3 of the definition, checked directly on the words.
pub fn is_exit_representation(z: &[Letter], w: &[Letter], q: usize, rep: &Representation) -> bool {
    let (p, s, r) = (&rep.p, &rep.s, rep.r);
    if p.is_empty() || s.is_empty() || p.len() > q || s.len() > q || r == 0 || !shift_matches(w, q) || q >= w.len() {
        return false;
    }
    let mid = power_letters(w, q, r);
    let next = power_letters(w, q, r + 1);
    let mut pm = p.clone();
    pm.extend_from_slice(&mid);
    let mut ms = mid.clone();
    ms.extend_from_slice(s);
    let mut whole = pm.clone();
    whole.extend_from_slice(s);
    whole == z
        && !next.ends_with(&pm)
        && next.ends_with(&pm[1..])
        && !next.starts_with(&ms)
        && next.starts_with(&ms[..ms.len() - 1])
}

/// All representations of `z` as an exit word for `w` with step `q`
/// (membership in a language is not checked here).
///
/// When `q` is the least period of `w` at most `n/2` the representation is
/// unique and `w` occurs exactly `r` times in `z`; this is checked.
pub fn decompose(z: &[Letter], w: &[Letter], q: usize) -> Result<Vec<Representation>> {
    check_period(w, q)?;
    let n = w.len();
    let mut reps = Vec::new();
    for lp in 1..=q {
        for ls in 1..=q {
            let Some(mid) = z.len().checked_sub(lp + ls) else { continue };
            if mid < n || (mid - n) % q != 0 {
                continue;
            }
            let rep = Representation { p: z[..lp].to_vec(), r: (mid - n) / q + 1, s: z[z.len() - ls..].to_vec() };
            if is_exit_representation(z, w, q, &rep) {
                reps.push(rep);
            }
        }
    }
    reps.sort();
    if least_shift_step(w) == Some(q) {
        if reps.len() > 1 {
            return Err(Error::Consistency(format!("{} representations with minimal step {q}", reps.len())));
        }
        if let Some(rep) = reps.first() {
            let count = count_occurrences(z, w);
            if count != rep.r {
                return Err(Error::Consistency(format!("|z|_w = {count} but r = {}", rep.r)));
            }
        }
    }
    Ok(reps)
}

/// Every exit word of `w` with step `q` up to the horizon.
///
/// The walk starts from each letter entering the loop of `w^{q*2}` and follows
/// the loop until the language forces it off; every departure is an exit word.
/// Steps above `n/2` are accepted as long as `w^{q*2}` is in the language.
pub fn enumerate_exit_words(w: &[Letter], q: usize, oracle: &LanguageOracle) -> Result<ExitEnumeration> {
    check_period(w, q)?;
    let n = w.len();
    let h = oracle.horizon();
    if n + q > h {
        return Err(Error::HorizonTooSmall { needed: n + q, available: h });
    }
    if !oracle.contains(&power_letters(w, q, 2)) {
        return Err(Error::InvalidStep { q });
    }
    let canonical = n + n / 2 <= h && word::minimal_step(w, oracle)? == Some(q);
    let k = oracle.alphabet().len() as Letter;
    let mut found: BTreeMap<Vec<Letter>, Vec<Representation>> = BTreeMap::new();
    let mut partial = false;
    for lp in 1..=q {
        let tail: Vec<Letter> = (0..lp - 1).map(|i| periodic_at(w, q, i as i64 - (lp as i64 - 1))).collect();
        let forbidden = periodic_at(w, q, -(lp as i64));
        for a in (0..k).filter(|&a| a != forbidden) {
            let mut cur = vec![a];
            cur.extend_from_slice(&tail);
            cur.extend_from_slice(w);
            if cur.len() > h {
                partial = true;
                continue;
            }
            if !oracle.contains(&cur) {
                continue;
            }
            let mut t = n;
            loop {
                if cur.len() == h {
                    partial = true;
                    break;
                }
                let next = periodic_at(w, q, t as i64);
                let r = (t - n) / q + 1;
                let loop_end = lp + n + (r - 1) * q;
                for b in (0..k).filter(|&b| b != next) {
                    cur.push(b);
                    if oracle.contains(&cur) {
                        let rep = Representation { p: cur[..lp].to_vec(), r, s: cur[loop_end..].to_vec() };
                        found.entry(cur.clone()).or_default().push(rep);
                    }
                    cur.pop();
                }
                cur.push(next);
                if !oracle.contains(&cur) {
                    break;
                }
                t += 1;
            }
        }
    }
    let w_word = Word::from_slice(w)?;
    let mut words = Vec::new();
    let mut representations = Vec::new();
    let mut per_ps: BTreeMap<(Vec<Letter>, Vec<Letter>), std::collections::BTreeSet<usize>> = BTreeMap::new();
    for (z, mut reps) in found {
        reps.sort();
        reps.dedup();
        for rep in &reps {
            if !is_exit_representation(&z, w, q, rep) {
                return Err(Error::Consistency("enumerated word fails the exit-word definition".into()));
            }
            per_ps.entry((rep.p.clone(), rep.s.clone())).or_default().insert(rep.r);
        }
        let best = reps.iter().max_by(|x, y| x.r.cmp(&y.r).then(y.p.len().cmp(&x.p.len()))).unwrap().clone();
        words.push(ExitWord {
            z: Word::new(z)?,
            w: w_word.clone(),
            q,
            r: best.r,
            p: best.p,
            s: best.s,
            canonical,
        });
        representations.push(reps);
    }
    let max_r_per_ps = per_ps.values().map(|s| s.len()).max().unwrap_or(0);
    Ok(ExitEnumeration {
        w: w_word,
        q,
        words,
        representations,
        partial,
        cut_length: partial.then_some(h),
        max_r_per_ps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Classification {
    /// `x[1..j+n-1]` is a suffix of `w^{q*r}`.
    SuffixOfPower { r: usize },
    /// The occurrence lies in the exit word starting at `start` (1-based).
    InsideExitWord { start: usize, exit: ExitWord },
}

/// Decides which of the two cases holds for the occurrence of `w` at `j` (1-based) in `x`.
/// `q` should be the minimal step of `w` in the language of `x`.
pub fn classify_occurrence(x: &[Letter], w: &[Letter], j: usize, q: usize) -> Result<Classification> {
    let n = w.len();
    if q == 0 || 2 * q > n {
        return Err(Error::StepTooLarge { q, n });
    }
    if !shift_matches(w, q) {
        return Err(Error::InvalidStep { q });
    }
    if j == 0 || j + n - 1 > x.len() || &x[j - 1..j - 1 + n] != w {
        return Err(Error::Precondition(format!("w does not occur at {j}")));
    }
    let start = j - 1;
    let mut left = start;
    while left > 0 && x[left - 1] == periodic_at(w, q, left as i64 - 1 - start as i64) {
        left -= 1;
    }
    if left == 0 {
        return Ok(Classification::SuffixOfPower { r: (j - 1).div_ceil(q) + 1 });
    }
    let j1 = left + 1;
    let mut right = start + n;
    while right < x.len() && x[right] == periodic_at(w, q, (right - start) as i64) {
        right += 1;
    }
    if right == x.len() {
        return Err(Error::PrefixTooShort(format!("periodic run through {j} reaches the end of the prefix")));
    }
    let j2 = right + 1 - n;
    let z = &x[j1 - 2..=right];
    let before = (j - j1) / q;
    let after = (j2 - j) / q;
    let lp = (j - j1) % q + 1;
    let ls = (j2 - j) % q + 1;
    let rep = Representation { p: z[..lp].to_vec(), r: before + after + 1, s: z[z.len() - ls..].to_vec() };
    if !is_exit_representation(z, w, q, &rep) {
        return Err(Error::Consistency(format!("block around {j} is not an exit word")));
    }
    Ok(Classification::InsideExitWord {
        start: j1 - 1,
        exit: ExitWord {
            z: Word::from_slice(z)?,
            w: Word::from_slice(w)?,
            q,
            r: rep.r,
            p: rep.p,
            s: rep.s,
            canonical: true,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapPair {
    pub i: usize,
    pub i_next: usize,
    pub z_len: usize,
    pub z_next_len: usize,
    pub r: usize,
    pub r_next: usize,
    /// `|x[i .. i'+|z'|-1]|_w`.
    pub occurrences: usize,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    pub exit_occurrences: usize,
    pub pairs: Vec<OverlapPair>,
    pub violations: usize,
    /// Occurrences of `w` left unclassified because the prefix ended inside a periodic run.
    pub unresolved: usize,
}

/// Pairs consecutive exit-word occurrences in `x` and checks
/// `i' >= i + |z| - n` and that at least `r + r'` copies of `w` sit in between.
pub fn check_overlap_bound(x: &[Letter], w: &[Letter], q: usize) -> Result<OverlapReport> {
    let n = w.len();
    let mut exits: BTreeMap<usize, ExitWord> = BTreeMap::new();
    let mut unresolved = 0;
    for j in word::occurrences(x, w).positions {
        match classify_occurrence(x, w, j, q) {
            Ok(Classification::InsideExitWord { start, exit }) => {
                if let Some(prev) = exits.get(&start) {
                    if prev.z != exit.z {
                        return Err(Error::Consistency(format!("two exit words start at {start}")));
                    }
                }
                exits.insert(start, exit);
            }
            Ok(Classification::SuffixOfPower { .. }) => {}
            Err(e) if e.is_horizon() => unresolved += 1,
            Err(e) => return Err(e),
        }
    }
    let list: Vec<(usize, ExitWord)> = exits.into_iter().collect();
    let mut pairs = Vec::new();
    for win in list.windows(2) {
        let (i, z) = (&win[0].0, &win[0].1);
        let (i2, z2) = (&win[1].0, &win[1].1);
        let end = i2 + z2.z.len() - 1;
        let occ = count_occurrences(&x[i - 1..end], w);
        let satisfied = *i2 + n >= i + z.z.len() && occ >= z.r + z2.r;
        pairs.push(OverlapPair {
            i: *i,
            i_next: *i2,
            z_len: z.z.len(),
            z_next_len: z2.z.len(),
            r: z.r,
            r_next: z2.r,
            occurrences: occ,
            satisfied,
        });
    }
    let violations = pairs.iter().filter(|p| !p.satisfied).count();
    Ok(OverlapReport { exit_occurrences: list.len(), pairs, violations, unresolved })
}

/// Pairs `i < j <= q` whose length-`n` windows of `w^{q*2}` coincide.
pub fn repeated_windows(w: &[Letter], q: usize) -> Result<Vec<(usize, usize)>> {
    check_period(w, q)?;
    let n = w.len();
    let wq2 = power_letters(w, q, 2);
    let mut out = Vec::new();
    for i in 1..=q {
        for j in i + 1..=q {
            if wq2[i - 1..i - 1 + n] == wq2[j - 1..j - 1 + n] {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}
