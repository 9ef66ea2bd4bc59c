//! Sources of sequences: interval exchange codings, substitution fixed points,
//! rotation codings and sequence files. All arithmetic is exact.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::LanguageOracle;
use crate::word::{Alphabet, Letter};

pub type Rational = Ratio<i128>;

/// A finite prefix of a one-sided sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePrefix {
    pub alphabet: Alphabet,
    pub letters: Vec<Letter>,
    pub label: String,
}

impl SequencePrefix {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Oracle of all factors of length at most `horizon`; needs `horizon <= N/4`.
pub fn oracle_from_prefix(prefix: &SequencePrefix, horizon: usize) -> Result<LanguageOracle> {
    let label = format!("{} N={} H={horizon}", prefix.label, prefix.len());
    LanguageOracle::from_prefix(prefix.alphabet.clone(), &prefix.letters, horizon, label)
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim().parse::<Rational>().map_err(|_| Error::Parse(format!("bad rational {text:?}")))
}

/// Value of the continued fraction `[a0; a1, a2, ...]`.
pub fn convergent(terms: &[u64]) -> Result<Rational> {
    let (&last, rest) = terms.split_last().ok_or_else(|| Error::InvalidParameters("empty continued fraction".into()))?;
    let mut acc = Rational::from_integer(last as i128);
    for &a in rest.iter().rev() {
        if acc == Rational::from_integer(0) {
            return Err(Error::InvalidParameters("zero partial quotient".into()));
        }
        acc = Rational::from_integer(a as i128) + acc.recip();
    }
    Ok(acc)
}

/// Interval exchange on `[0,1)`: interval `i` has length `lambda[i-1]` and is
/// moved to slot `pi[i-1]`. Intervals are closed on the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iet {
    pub lambda: Vec<Rational>,
    pub pi: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IetSpec {
    pub d: usize,
    pub lambda: Vec<String>,
    pub pi: Vec<usize>,
    pub z: String,
}

impl IetSpec {
    pub fn parse(&self) -> Result<(Iet, Rational)> {
        if self.lambda.len() != self.d {
            return Err(Error::InvalidParameters(format!("expected {} lengths, got {}", self.d, self.lambda.len())));
        }
        let lambda = self.lambda.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok((Iet::new(lambda, self.pi.clone())?, parse_rational(&self.z)?))
    }
}

impl Iet {
    pub fn new(lambda: Vec<Rational>, pi: Vec<usize>) -> Result<Self> {
        let d = lambda.len();
        if d < 2 {
            return Err(Error::InvalidParameters("an IET needs at least two intervals".into()));
        }
        if pi.len() != d {
            return Err(Error::InvalidParameters("permutation length differs from d".into()));
        }
        let mut seen = vec![false; d];
        for &p in &pi {
            if p == 0 || p > d || seen[p - 1] {
                return Err(Error::InvalidParameters(format!("{pi:?} is not a permutation of 1..{d}")));
            }
            seen[p - 1] = true;
        }
        if lambda.iter().any(|l| *l <= Rational::from_integer(0)) {
            return Err(Error::InvalidParameters("lengths must be positive".into()));
        }
        if lambda.iter().copied().sum::<Rational>() != Rational::from_integer(1) {
            return Err(Error::InvalidParameters("lengths must sum to 1".into()));
        }
        Ok(Self { lambda, pi })
    }

    pub fn d(&self) -> usize {
        self.lambda.len()
    }

    /// Everything scaled by the common denominator: `(D, starts, image_starts)`.
    fn integer_form(&self) -> Result<(i128, Vec<i128>, Vec<i128>)> {
        let den = self.lambda.iter().fold(1i128, |acc, l| acc.lcm(l.denom()));
        let lens: Vec<i128> = self
            .lambda
            .iter()
            .map(|l| l.numer().checked_mul(den / l.denom()))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidParameters("denominators too large".into()))?;
        let d = self.d();
        let mut starts = vec![0i128; d];
        for i in 1..d {
            starts[i] = starts[i - 1] + lens[i - 1];
        }
        let image_starts: Vec<i128> = (0..d)
            .map(|i| (0..d).filter(|&j| self.pi[j] < self.pi[i]).map(|j| lens[j]).sum())
            .collect();
        Ok((den, starts, image_starts))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeaneDiagnostic {
    /// True when some orbit point landed on a discontinuity of `f` or `f^-1`.
    pub connection: bool,
    /// First such step (0 is `z` itself) and the point hit, as `"p/q"`.
    pub first_hit: Option<(usize, String)>,
}

/// `x_i = j` iff `f^{i-1}(z)` lies in interval `j`. Letters are `1..=d`.
pub fn iet_encode(iet: &Iet, z: Rational, n: usize) -> Result<(SequencePrefix, KeaneDiagnostic)> {
    let zero = Rational::from_integer(0);
    if z < zero || z >= Rational::from_integer(1) {
        return Err(Error::InvalidParameters("z must lie in [0,1)".into()));
    }
    let (base, starts, image_starts) = iet.integer_form()?;
    let den = base.lcm(z.denom());
    let scale = den / base;
    let starts: Vec<i128> = starts.iter().map(|s| s * scale).collect();
    let image_starts: Vec<i128> = image_starts.iter().map(|s| s * scale).collect();
    let shifts: Vec<i128> = starts.iter().zip(&image_starts).map(|(s, t)| t - s).collect();
    let mut breaks: Vec<i128> = starts[1..].iter().chain(&image_starts).copied().filter(|&b| b != 0).collect();
    breaks.sort_unstable();
    let mut point = z.numer() * (den / z.denom());
    let d = iet.d();
    let mut letters = Vec::with_capacity(n);
    let mut first_hit = None;
    for step in 0..n {
        if first_hit.is_none() && breaks.binary_search(&point).is_ok() {
            first_hit = Some((step, Rational::new(point, den).to_string()));
        }
        let j = starts.partition_point(|&s| s <= point) - 1;
        letters.push(j as Letter);
        point += shifts[j];
    }
    let alphabet = Alphabet::new((1..=d).map(|i| i.to_string()))?;
    Ok((
        SequencePrefix { alphabet, letters, label: format!("{d}-IET") },
        KeaneDiagnostic { connection: first_hit.is_some(), first_hit },
    ))
}

/// Substitution with a growing seed letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub alphabet: Alphabet,
    pub images: Vec<Vec<Letter>>,
    pub seed: Letter,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubstitutionSpec {
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, String>,
    pub seed: String,
}

impl SubstitutionSpec {
    pub fn parse(&self) -> Result<Substitution> {
        let alphabet = Alphabet::new(self.alphabet.clone())?;
        let mut images = Vec::with_capacity(alphabet.len());
        for s in alphabet.symbols() {
            let rhs = self.rules.get(s).ok_or_else(|| Error::InvalidParameters(format!("no rule for {s:?}")))?;
            images.push(alphabet.parse_letters(rhs)?);
        }
        if let Some(extra) = self.rules.keys().find(|k| alphabet.letter(k).is_err()) {
            return Err(Error::UnknownSymbol(extra.clone()));
        }
        let seed = alphabet.letter(&self.seed)?;
        Substitution::new(alphabet, images, seed)
    }
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Vec<Letter>>, seed: Letter) -> Result<Self> {
        if images.len() != alphabet.len() || images.iter().any(Vec::is_empty) {
            return Err(Error::InvalidParameters("every letter needs a non-empty image".into()));
        }
        let s = &images[seed as usize];
        if s[0] != seed || s.len() < 2 {
            return Err(Error::InvalidParameters("seed image must start with the seed and have length >= 2".into()));
        }
        Ok(Self { alphabet, images, seed })
    }

    pub fn fibonacci() -> Self {
        Self::new(Alphabet::from_chars("ab").unwrap(), vec![vec![0, 1], vec![0]], 0).unwrap()
    }

    pub fn thue_morse() -> Self {
        Self::new(Alphabet::from_chars("01").unwrap(), vec![vec![0, 1], vec![1, 0]], 0).unwrap()
    }
}

/// Prefix of length `n` of the fixed point starting with the seed.
pub fn substitution_fixed_point(sub: &Substitution, n: usize) -> Result<SequencePrefix> {
    let mut x = vec![sub.seed];
    while x.len() < n {
        let next: Vec<Letter> = x.iter().flat_map(|&l| sub.images[l as usize].iter().copied()).collect();
        if next.len() <= x.len() {
            return Err(Error::InvalidParameters("substitution does not grow".into()));
        }
        x = next;
    }
    x.truncate(n);
    Ok(SequencePrefix { alphabet: sub.alphabet.clone(), letters: x, label: "substitution".into() })
}

/// `x_i = 1` iff `{(i-1) alpha}` lies in `[1 - alpha, 1)`.
pub fn rotation_coding(alpha: Rational, n: usize) -> Result<SequencePrefix> {
    if alpha <= Rational::from_integer(0) || alpha >= Rational::from_integer(1) {
        return Err(Error::InvalidParameters("alpha must lie in (0,1)".into()));
    }
    let (p, q) = (*alpha.numer(), *alpha.denom());
    let mut letters = Vec::with_capacity(n);
    let mut frac = 0i128;
    for _ in 0..n {
        letters.push(u8::from(frac >= q - p));
        frac = (frac + p) % q;
    }
    Ok(SequencePrefix { alphabet: Alphabet::from_chars("01")?, letters, label: format!("rotation {alpha}") })
}

/// Reads `alphabet: s1,s2,...` followed by whitespace separated symbols.
/// With single-character symbols a token may also be a run of symbols.
pub fn parse_sequence_file(text: &str) -> Result<SequencePrefix> {
    let mut lines = text.lines().skip_while(|l| l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty sequence file".into()))?;
    let rest = header
        .trim()
        .strip_prefix("alphabet:")
        .ok_or_else(|| Error::Parse("first line must be `alphabet: s1,s2,...`".into()))?;
    let alphabet = Alphabet::new(rest.split(',').map(|s| s.trim().to_string()))?;
    let mut letters = Vec::new();
    for line in lines {
        for token in line.split_whitespace() {
            match alphabet.letter(token) {
                Ok(l) => letters.push(l),
                Err(e) => {
                    if alphabet.symbols().iter().all(|s| s.chars().count() == 1) {
                        letters.extend(alphabet.parse_letters(token)?);
                    } else {
                        return Err(e);
                    }
                }
            }
        }
    }
    if letters.is_empty() {
        return Err(Error::Parse("sequence file has no symbols".into()));
    }
    Ok(SequencePrefix { alphabet, letters, label: "file".into() })
}

pub fn render_sequence_file(prefix: &SequencePrefix) -> String {
    let mut out = format!("alphabet: {}\n", prefix.alphabet.symbols().join(","));
    for chunk in prefix.letters.chunks(64) {
        let line: Vec<&str> = chunk.iter().map(|&l| prefix.alphabet.symbol(l)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
