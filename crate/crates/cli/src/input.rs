use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use symdyn::generators::{iet_encode, oracle_from_prefix, parse_sequence_file, substitution_fixed_point, IetSpec, SequencePrefix, SubstitutionSpec};
use symdyn::LanguageOracle;

use crate::SourceArgs;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("malformed {}", path.display()))
}

pub fn load_prefix(args: &SourceArgs) -> Result<SequencePrefix> {
    let s = &args.source;
    let mut prefix = if let Some(p) = &s.substitution {
        let spec: SubstitutionSpec = read_json(p)?;
        let sub = spec.parse().with_context(|| format!("bad substitution in {}", p.display()))?;
        substitution_fixed_point(&sub, args.length)?
    } else if let Some(p) = &s.iet {
        let spec: IetSpec = read_json(p)?;
        let (iet, z) = spec.parse().with_context(|| format!("bad IET in {}", p.display()))?;
        iet_encode(&iet, z, args.length)?.0
    } else if let Some(p) = &s.seq {
        parse_sequence_file(&read(p)?).with_context(|| format!("bad sequence file {}", p.display()))?
    } else {
        bail!("no input given");
    };
    let name = [&s.substitution, &s.iet, &s.seq].into_iter().flatten().next().unwrap();
    prefix.label = name.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(prefix)
}

pub fn oracle(prefix: &SequencePrefix, horizon: usize) -> Result<LanguageOracle> {
    if horizon < 4 {
        bail!("horizon must be at least 4, got {horizon}");
    }
    Ok(oracle_from_prefix(prefix, horizon)?)
}

/// `A..B` (B excluded) or `A..=B`, returned as an inclusive pair.
pub fn parse_range(text: &str) -> Result<(usize, usize)> {
    let (a, b, inclusive) = if let Some((a, b)) = text.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = text.split_once("..") {
        (a, b, false)
    } else {
        let n: usize = text.trim().parse().with_context(|| format!("bad range {text:?}"))?;
        return Ok((n, n));
    };
    let a: usize = a.trim().parse().with_context(|| format!("bad range {text:?}"))?;
    let b: usize = b.trim().parse().with_context(|| format!("bad range {text:?}"))?;
    let hi = if inclusive { b } else { b.checked_sub(1).context("empty range")? };
    if a == 0 || hi < a {
        bail!("empty or invalid range {text:?}");
    }
    Ok((a, hi))
}
