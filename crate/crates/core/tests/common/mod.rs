#![allow(dead_code)]

use symdyn::generators::{iet_encode, oracle_from_prefix, substitution_fixed_point, IetSpec, SequencePrefix, Substitution};
use symdyn::LanguageOracle;

pub fn fib_prefix(n: usize) -> SequencePrefix {
    substitution_fixed_point(&Substitution::fibonacci(), n).unwrap()
}

pub fn fib(n: usize, h: usize) -> (SequencePrefix, LanguageOracle) {
    let x = fib_prefix(n);
    let o = oracle_from_prefix(&x, h).unwrap();
    (x, o)
}

pub fn iet3_spec() -> IetSpec {
    IetSpec {
        d: 3,
        lambda: vec!["309016994/1000000000".into(), "292893219/1000000000".into(), "398089787/1000000000".into()],
        pi: vec![3, 2, 1],
        z: "0".into(),
    }
}

pub fn iet4_spec() -> IetSpec {
    IetSpec {
        d: 4,
        lambda: vec![
            "309016994/1000000000".into(),
            "292893219/1000000000".into(),
            "141421356/1000000000".into(),
            "256668431/1000000000".into(),
        ],
        pi: vec![4, 3, 2, 1],
        z: "0".into(),
    }
}

pub fn iet_prefix(spec: &IetSpec, n: usize) -> SequencePrefix {
    let (iet, z) = spec.parse().unwrap();
    iet_encode(&iet, z, n).unwrap().0
}

pub fn iet(spec: &IetSpec, n: usize, h: usize) -> (SequencePrefix, LanguageOracle) {
    let x = iet_prefix(spec, n);
    let o = oracle_from_prefix(&x, h).unwrap();
    (x, o)
}
pub mod lambda;
pub mod brute;
