//! Words over a finite ordered alphabet, occurrence counting and periodic powers.
//!
//! Letters are stored as indices into an [`Alphabet`]; the order of the
//! alphabet is the order used everywhere a deterministic listing is needed.
//! Public positions are 1-based.

use std::borrow::Borrow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::LanguageOracle;

/// Letter index into an alphabet.
pub type Letter = u8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols".into()));
        }
        if symbols.len() > Letter::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) || s.contains(',') {
                return Err(Error::InvalidAlphabet(format!("bad symbol {s:?}")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Self { symbols })
    }

    /// Alphabet whose symbols are the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets accept a plain string
    /// (whitespace ignored); otherwise symbols are whitespace separated.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        if self.single_char() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| self.letter(c.encode_utf8(&mut [0; 4])))
                .collect()
        } else {
            text.split_whitespace().map(|t| self.letter(t)).collect()
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::new(self.parse_letters(text)?)
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        letters
            .iter()
            .map(|&l| self.symbol(l))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A non-empty finite word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Self(letters))
    }

    pub fn from_slice(letters: &[Letter]) -> Result<Self> {
        Self::new(letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// 1-based inclusive slice `w[i..j]`.
    pub fn sub(&self, i: usize, j: usize) -> Result<Word> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::Precondition(format!("bad range [{i},{j}] for length {}", self.len())));
        }
        Word::from_slice(&self.0[i - 1..j])
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render(&self.0)
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for Word {
    /// Letter indices, used when no alphabet is at hand.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrences {
    pub count: usize,
    /// 1-based start positions, increasing.
    pub positions: Vec<usize>,
}

/// All (possibly overlapping) occurrences of `needle` in `haystack`.
pub fn occurrences(haystack: &[Letter], needle: &[Letter]) -> Occurrences {
    let positions: Vec<usize> = if needle.is_empty() || needle.len() > haystack.len() {
        Vec::new()
    } else {
        haystack
            .windows(needle.len())
            .enumerate()
            .filter(|(_, win)| *win == needle)
            .map(|(i, _)| i + 1)
            .collect()
    };
    Occurrences { count: positions.len(), positions }
}

/// Counts occurrences of `needle` without collecting positions.
pub fn count_occurrences(haystack: &[Letter], needle: &[Letter]) -> usize {
    if needle.is_empty() || needle.len() > haystack.len() {
        return 0;
    }
    haystack.windows(needle.len()).filter(|win| *win == needle).count()
}

/// `w[q+1..n] == w[1..n-q]`, i.e. `w` has period `q`.
pub fn shift_matches(w: &[Letter], q: usize) -> bool {
    q >= 1 && q <= w.len() && w[q..] == w[..w.len() - q]
}

fn check_step(w: &[Letter], q: usize) -> Result<()> {
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if q == 0 || q >= n {
        return Err(Error::StepTooLarge { q, n });
    }
    if !shift_matches(w, q) {
        return Err(Error::InvalidStep { q });
    }
    Ok(())
}

/// The word `w^{q*r}` of length `n + (r-1)q` in which `w` occurs at 1, q+1, ..., (r-1)q+1.
///
/// Any period `q < n` of `w` is accepted; the `q <= n/2` bound belongs to
/// valid steps, not to the power itself.
pub fn power(w: &[Letter], q: usize, r: usize) -> Result<Word> {
    check_step(w, q)?;
    if r == 0 {
        return Err(Error::Precondition("power needs r >= 1".into()));
    }
    Ok(Word(power_letters(w, q, r)))
}

/// Unchecked power; callers guarantee `shift_matches(w, q)`.
pub(crate) fn power_letters(w: &[Letter], q: usize, r: usize) -> Vec<Letter> {
    let n = w.len();
    let mut out = Vec::with_capacity(n + (r - 1) * q);
    out.extend_from_slice(w);
    for _ in 1..r {
        out.extend_from_slice(&w[n - q..]);
    }
    out
}

/// Letter at 0-based offset `t` of the infinite periodic word `w^{q*inf}`.
pub(crate) fn periodic_letter(w: &[Letter], q: usize, t: usize) -> Letter {
    w[t % q]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// Period of `w` but `w^{q*2}` is not in the language.
    ShiftMatchOnly,
    LanguageValid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepCertificate {
    pub q: usize,
    pub kind: StepKind,
}

/// Every `q <= n/2` that is a period of `w`, tagged with whether it is valid in the language.
pub fn step_diagnostics(w: &[Letter], oracle: &LanguageOracle) -> Result<Vec<StepCertificate>> {
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let needed = n + n / 2;
    if needed > oracle.horizon() {
        return Err(Error::HorizonTooSmall { needed, available: oracle.horizon() });
    }
    Ok((1..=n / 2)
        .filter(|&q| shift_matches(w, q))
        .map(|q| {
            let valid = oracle.contains(&power_letters(w, q, 2));
            StepCertificate { q, kind: if valid { StepKind::LanguageValid } else { StepKind::ShiftMatchOnly } }
        })
        .collect())
}

pub fn valid_steps(w: &[Letter], oracle: &LanguageOracle) -> Result<Vec<StepCertificate>> {
    Ok(step_diagnostics(w, oracle)?
        .into_iter()
        .filter(|c| c.kind == StepKind::LanguageValid)
        .collect())
}

/// Least valid step of `w`, if any. Every other valid step is a multiple of it.
pub fn minimal_step(w: &[Letter], oracle: &LanguageOracle) -> Result<Option<usize>> {
    let steps = valid_steps(w, oracle)?;
    let min = steps.first().map(|c| c.q);
    if let Some(m) = min {
        if let Some(bad) = steps.iter().find(|c| c.q % m != 0) {
            return Err(Error::Consistency(format!("valid step {} not a multiple of {m}", bad.q)));
        }
    }
    Ok(min)
}

/// Least `q <= n/2` with `shift_matches(w, q)`, ignoring any language.
pub fn least_shift_step(w: &[Letter]) -> Option<usize> {
    (1..=w.len() / 2).find(|&q| shift_matches(w, q))
}
