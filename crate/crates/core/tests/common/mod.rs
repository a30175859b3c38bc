#![allow(dead_code)]

use elder_core::{Barcode, BarcodeFlags, CriticalSequence};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

/// Min-first alternating permutations of `1..=n`, by brute force over all
/// permutations with a direct pattern check.
pub fn alternating_permutations(n: usize) -> Vec<Vec<f64>> {
    (1..=n)
        .permutations(n)
        .filter(|p| {
            p.windows(2)
                .enumerate()
                .all(|(i, w)| if i % 2 == 0 { w[0] < w[1] } else { w[0] > w[1] })
        })
        .map(|p| p.into_iter().map(|v| v as f64).collect())
        .collect()
}

/// All critical sequences on `1..=2k-1` for `k = 2..=max_minima`.
pub fn small_sequences(max_minima: usize) -> Vec<CriticalSequence> {
    (2..=max_minima)
        .flat_map(|k| alternating_permutations(2 * k - 1))
        .map(|v| CriticalSequence::new(&v).unwrap())
        .collect()
}

/// A random barcode with `n` bars, distinct births and deaths, and a random
/// nesting pattern: the smallest value is the essential birth, the others are
/// shuffled and paired.
pub fn random_barcode<R: Rng>(rng: &mut R, n: usize) -> Barcode {
    let mut pool: Vec<u32> = (0..400).collect();
    pool.shuffle(rng);
    let mut values: Vec<f64> = pool[..2 * n - 1].iter().map(|&v| f64::from(v) / 4.0 - 20.0).collect();
    values.sort_by(f64::total_cmp);
    let essential = values[0];
    let mut rest = values[1..].to_vec();
    rest.shuffle(rng);
    let mut pairs = vec![(essential, None)];
    for pair in rest.chunks(2) {
        let (lo, hi) = if pair[0] < pair[1] { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
        pairs.push((lo, Some(hi)));
    }
    Barcode::from_pairs(&pairs, BarcodeFlags::MORSE).unwrap()
}
