//! Reference implementations shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use ubmlab::rng::RngStream;
use ubmlab::spectral::CircleMeasure;

/// Mass quantum of [`random_lattice_measure`].
pub const UNITS: usize = 8;

/// A measure with at most `UNITS` atoms whose weights are multiples of
/// `1 / UNITS`, returned together with its unit-mass atoms (an atom of
/// weight `k / UNITS` appears `k` times).
pub fn random_lattice_measure(rng: &mut RngStream) -> (CircleMeasure, Vec<f64>) {
    let atoms = 1 + (rng.uniform() * UNITS as f64) as usize % UNITS;
    let angles: Vec<f64> = (0..atoms).map(|_| PI - 2.0 * PI * rng.uniform()).collect();
    // Each atom gets one unit; the rest are spread at random.
    let mut counts = vec![1usize; atoms];
    for _ in atoms..UNITS {
        counts[(rng.uniform() * atoms as f64) as usize % atoms] += 1;
    }
    let units: Vec<f64> = angles
        .iter()
        .zip(&counts)
        .flat_map(|(&a, &c)| std::iter::repeat_n(a, c))
        .collect();
    let pairs = angles
        .iter()
        .zip(&counts)
        .map(|(&a, &c)| (a, c as f64 / UNITS as f64));
    (CircleMeasure::from_pairs(pairs).unwrap(), units)
}

/// Exact W1 between two uniform measures on equally many points by
/// enumerating every assignment. With unit masses the transport polytope
/// is the Birkhoff polytope, whose vertices are the permutations, so this
/// is the LP optimum.
pub fn brute_force_w1(a: &[f64], b: &[f64], cost: impl Fn(f64, f64) -> f64) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let c: Vec<Vec<f64>> = a
        .iter()
        .map(|&x| b.iter().map(|&y| cost(x, y)).collect())
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut perm, 0, &c, &mut best);
    best / n as f64
}

fn permute(perm: &mut [usize], k: usize, c: &[Vec<f64>], best: &mut f64) {
    if k == perm.len() {
        let total: f64 = perm.iter().enumerate().map(|(i, &j)| c[i][j]).sum();
        *best = best.min(total);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, c, best);
        perm.swap(k, i);
    }
}
