//! Direct constructions used as oracles for the exit-word code.

use symdyn::exit_words::Representation;
use symdyn::Letter;

/// `w^{q*r}` by laying copies of `w` down at multiples of `q`.
pub fn brute_power(w: &[Letter], q: usize, r: usize) -> Vec<Letter> {
    let mut out = vec![None; w.len() + (r - 1) * q];
    for i in 0..r {
        for (k, &a) in w.iter().enumerate() {
            assert!(out[i * q + k].is_none() || out[i * q + k] == Some(a));
            out[i * q + k] = Some(a);
        }
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Every `(p, r, s)` with `z = p w^{q*r} s` meeting the flank conditions, found by trying all splits.
pub fn brute_decompose(z: &[Letter], w: &[Letter], q: usize) -> Vec<Representation> {
    let mut out = Vec::new();
    for lp in 1..=q.min(z.len()) {
        for ls in 1..=q.min(z.len() - lp) {
            for r in 1..=z.len() {
                let mid = brute_power(w, q, r);
                if lp + mid.len() + ls != z.len() || z[lp..lp + mid.len()] != mid[..] {
                    continue;
                }
                let next = brute_power(w, q, r + 1);
                let pm = &z[..lp + mid.len()];
                let ms = &z[lp..];
                let left_ok = !next.ends_with(pm) && next.ends_with(&pm[1..]);
                let right_ok = !next.starts_with(ms) && next.starts_with(&ms[..ms.len() - 1]);
                if left_ok && right_ok {
                    out.push(Representation { p: z[..lp].to_vec(), r, s: z[z.len() - ls..].to_vec() });
                }
            }
        }
    }
    out.sort();
    out
}

/// Start of the maximal run of `x` agreeing with the `q`-periodic extension of the
/// occurrence of `w` at `j`, and one past its end (0-based, half open).
pub fn brute_run(x: &[Letter], w: &[Letter], j: usize, q: usize) -> (usize, usize) {
    let s = j - 1;
    let expect = |t: usize| -> Letter {
        let off = (t as i64 - s as i64).rem_euclid(q as i64) as usize;
        w[off]
    };
    let mut a = s;
    while a > 0 && x[a - 1] == expect(a - 1) {
        a -= 1;
    }
    let mut b = s + w.len();
    while b < x.len() && x[b] == expect(b) {
        b += 1;
    }
    (a, b)
}
