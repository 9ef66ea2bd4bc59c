mod common;

use std::collections::BTreeSet;

use common::brute::{brute_decompose, brute_power, brute_run};
use proptest::prelude::*;
use symdyn::exit_words::{
    check_overlap_bound, classify_occurrence, decompose, enumerate_exit_words, is_exit_representation, repeated_windows,
    Classification, Representation,
};
use symdyn::language::Side;
use symdyn::word::{minimal_step, valid_steps};
use symdyn::{Alphabet, LanguageOracle, Letter};

fn letters(s: &str) -> Vec<Letter> {
    s.bytes().map(|b| b - b'0').collect()
}

fn paper_z() -> Vec<Letter> {
    let mut z = vec![0];
    z.extend([1; 15]);
    z.push(0);
    z
}

#[test]
fn paper_remark_representations() {
    let z = paper_z();
    let w = letters("1111");
    // The remark lists one choice per step; with a non-minimal step the flanks
    // can trade letters, so every split of the same r is returned.
    let q3 = decompose(&z, &w, 3).unwrap();
    assert!(q3.contains(&Representation { p: letters("0"), r: 4, s: letters("110") }));
    assert_eq!(q3.len(), 3);
    assert!(q3.iter().all(|rep| rep.r == 4));
    let q2 = decompose(&z, &w, 2).unwrap();
    assert!(q2.contains(&Representation { p: letters("01"), r: 6, s: letters("0") }));
    assert_eq!(q2.len(), 2);
    let q1 = decompose(&z, &w, 1).unwrap();
    assert_eq!(q1, vec![Representation { p: letters("0"), r: 12, s: letters("0") }]);
    assert_eq!(symdyn::word::count_occurrences(&z, &w), 12);
    for q in 1..=3 {
        assert_eq!(decompose(&z, &w, q).unwrap(), brute_decompose(&z, &w, q));
    }
}

#[test]
fn paper_word_in_a_context_oracle() {
    // 0 1^15 0 inside a sequence whose other blocks are short.
    let mut x = Vec::new();
    for k in [1usize, 2, 15, 3, 1, 15, 2] {
        x.push(0);
        x.extend(std::iter::repeat(1).take(k));
    }
    let x: Vec<Letter> = x.iter().copied().cycle().take(4000).collect();
    let o = LanguageOracle::from_prefix(Alphabet::from_chars("01").unwrap(), &x, 24, "blocks").unwrap();
    let w = letters("1111");
    for (q, rep) in [(3, ("0", 4, "110")), (2, ("01", 6, "0"))] {
        let e = enumerate_exit_words(&w, q, &o).unwrap();
        let i = e.words.iter().position(|ew| ew.z.letters() == paper_z().as_slice()).unwrap();
        let want = Representation { p: letters(rep.0), r: rep.1, s: letters(rep.2) };
        assert!(e.representations[i].contains(&want));
        assert!(!e.words[i].canonical);
    }
    let e = enumerate_exit_words(&w, 1, &o).unwrap();
    let z = e.words.iter().find(|ew| ew.z.letters() == paper_z().as_slice()).unwrap();
    assert!(z.canonical);
    assert_eq!((z.r, z.p.clone(), z.s.clone()), (12, vec![0], vec![0]));

    // The occurrence of 1111 five letters into the block sits inside it.
    let c = x.windows(17).position(|win| win == paper_z().as_slice()).unwrap() + 1;
    match classify_occurrence(&x, &w, c + 5, 1).unwrap() {
        Classification::InsideExitWord { start, exit } => {
            assert_eq!(start, c);
            assert_eq!(exit.z.letters(), paper_z().as_slice());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for (_, o) in [common::fib(20_000, 28), common::iet(&common::iet3_spec(), 40_000, 28)] {
        enumeration_matches_on(&o);
    }
}

fn enumeration_matches_on(o: &LanguageOracle) {
    let h = o.horizon();
    let mut checked = 0;
    for n in 2..=16 {
        for w in o.factors(n) {
            let w = w.letters();
            for cert in valid_steps(w, &o).unwrap() {
                let q = cert.q;
                let e = enumerate_exit_words(w, q, &o).unwrap();
                let got: BTreeSet<Vec<Letter>> = e.words.iter().map(|z| z.z.letters().to_vec()).collect();
                let mut brute = BTreeSet::new();
                for len in n + 2..=h {
                    for z in o.factors(len) {
                        if !brute_decompose(z.letters(), w, q).is_empty() {
                            brute.insert(z.letters().to_vec());
                        }
                    }
                }
                assert_eq!(got, brute, "w={w:?} q={q}");
                for (ew, reps) in e.words.iter().zip(&e.representations) {
                    assert_eq!(*reps, brute_decompose(ew.z.letters(), w, q));
                }
                // RBC oracle: at most two values of r per flank pair.
                assert!(e.max_r_per_ps <= 2);
                checked += 1;
            }
        }
    }
    assert!(checked >= 4, "{checked}");
}

#[test]
fn sturmian_left_special_exit_count() {
    let (_, o) = common::fib(20_000, 40);
    let mut seen = 0;
    for n in 2..=20 {
        let w = o.special_words(n, Side::Left).unwrap().remove(0);
        if let Some(q) = minimal_step(w.letters(), &o).unwrap() {
            let e = enumerate_exit_words(w.letters(), q, &o).unwrap();
            assert!(e.count_margin(1) >= 0, "n={n}: {} exit words", e.words.len());
            seen += 1;
        }
    }
    assert!(seen >= 3);
}

#[test]
fn no_repeat_for_short_binary_words() {
    let o = LanguageOracle::full_shift(Alphabet::from_chars("01").unwrap(), 15).unwrap();
    for n in 2..=10usize {
        for m in 0u32..1 << n {
            let w: Vec<Letter> = (0..n).map(|i| ((m >> i) & 1) as Letter).collect();
            let steps: Vec<usize> = valid_steps(&w, &o).unwrap().iter().map(|c| c.q).collect();
            for &q in &steps {
                for (i, j) in repeated_windows(&w, q).unwrap() {
                    assert!(steps.contains(&(j - i)), "{w:?} q={q} windows {i},{j}");
                }
            }
            if let Some(&q) = steps.first() {
                assert!(repeated_windows(&w, q).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn classification_on_fibonacci_and_iet() {
    let sources = [common::fib(10_000, 30), common::iet(&common::iet3_spec(), 10_000, 30)];
    for (x, o) in &sources {
        let x = &x.letters;
        for n in [3, 5, 8] {
            for w in o.factors(n) {
                let Some(q) = minimal_step(w.letters(), o).unwrap() else { continue };
                let w = w.letters();
                for j in symdyn::word::occurrences(x, w).positions {
                    let (a, b) = brute_run(x, w, j, q);
                    match classify_occurrence(x, w, j, q) {
                        Ok(Classification::SuffixOfPower { r }) => {
                            assert_eq!(a, 0);
                            assert!(brute_power(w, q, r).ends_with(&x[..j + n - 1]));
                        }
                        Ok(Classification::InsideExitWord { start, exit }) => {
                            assert!(a > 0 && b < x.len());
                            assert_eq!(start, a);
                            assert_eq!(exit.z.letters(), &x[a - 1..=b]);
                            assert_eq!(brute_decompose(exit.z.letters(), w, q).len(), 1);
                        }
                        Err(e) => assert!(e.is_horizon() && b == x.len()),
                    }
                }
                let rep = check_overlap_bound(x, w, q).unwrap();
                assert_eq!(rep.violations, 0);
            }
        }
    }
}

#[test]
fn suffix_of_power_at_start() {
    let w = letters("0100100");
    let x: Vec<Letter> = brute_power(&w, 3, 30);
    for m in 0..5 {
        let j = 3 * m + 1;
        assert!(matches!(classify_occurrence(&x, &w, j, 3), Ok(Classification::SuffixOfPower { .. })));
    }
    assert!(classify_occurrence(&x, &w, 2, 3).is_err());
}

#[test]
fn adjacent_exit_words() {
    // x = z z z ... with z = 0110: each exit word starts right after the last.
    let x: Vec<Letter> = letters("0110").iter().copied().cycle().take(400).collect();
    let rep = check_overlap_bound(&x, &letters("11"), 1).unwrap();
    assert!(rep.exit_occurrences > 50);
    for p in &rep.pairs {
        assert!(p.satisfied);
        assert_eq!(p.i_next, p.i + p.z_len);
    }
    // With 011 repeated consecutive copies of 0110 share their zero.
    let x: Vec<Letter> = letters("011").iter().copied().cycle().take(400).collect();
    let rep = check_overlap_bound(&x, &letters("11"), 1).unwrap();
    for p in &rep.pairs {
        assert!(p.satisfied);
        assert_eq!(p.i_next, p.i + p.z_len - 1);
        assert!(p.occurrences >= p.r + p.r_next);
    }
}

proptest! {
    #[test]
    fn decompose_matches_brute_force(z in prop::collection::vec(0u8..2, 3..24), base in prop::collection::vec(0u8..2, 1..4), extra in 1usize..5) {
        let q = base.len();
        let w: Vec<Letter> = (0..q + extra).map(|t| base[t % q]).collect();
        let got = decompose(&z, &w, q);
        let brute = brute_decompose(&z, &w, q);
        match got {
            Ok(reps) => {
                prop_assert_eq!(&reps, &brute);
                for r in &reps {
                    prop_assert!(is_exit_representation(&z, &w, q, r));
                }
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn planted_exit_words_decompose(base in prop::collection::vec(0u8..2, 1..4), extra in 0usize..4, r in 1usize..5) {
        let q = base.len();
        let w: Vec<Letter> = (0..q + 1 + extra).map(|t| base[t % q]).collect();
        prop_assume!(symdyn::word::least_shift_step(&w) == Some(q));
        let mid = brute_power(&w, q, r);
        // Flanks that break the period on both sides.
        let mut z = vec![1 - w[q - 1]];
        z.extend(&mid);
        z.push(1 - w[mid.len() % q]);
        let reps = decompose(&z, &w, q).unwrap();
        prop_assert_eq!(reps.clone(), vec![Representation { p: z[..1].to_vec(), r, s: z[z.len() - 1..].to_vec() }]);
        prop_assert_eq!(symdyn::word::count_occurrences(&z, &w), r);
    }
}
