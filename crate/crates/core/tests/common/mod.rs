#![allow(dead_code)]

pub mod groups;

use std::path::PathBuf;

use arith_equiv::exact::{is_irreducible_over_q, IntPoly};
use arith_equiv::nf::{make_field, NumberField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn field(coeffs: &[i64]) -> NumberField {
    make_field(&IntPoly::from_i64(coeffs)).unwrap()
}

/// Seeded corpus of monic irreducible polynomials of degree 2..=6 with
/// coefficients in [-9, 9].
pub fn random_fields(count: usize, seed: u64) -> Vec<NumberField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(1);
        let f = IntPoly::from_i64(&c);
        if c[0] != 0 && is_irreducible_over_q(&f).unwrap() {
            out.push(make_field(&f).unwrap());
        }
    }
    out
}

/// All partitions of `n` as ascending sequences.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=n {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}
