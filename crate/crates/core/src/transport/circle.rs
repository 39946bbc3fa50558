//! Closed-form W1 on the circle for arc-length cost.
//!
//! With `F` and `G` the distribution functions of the two measures started
//! at an arbitrary cut point, `W1 = min_s int_0^{2 pi} |F - G - s|`, and a
//! minimizing `s` is any weighted median of the step function `F - G`.

use std::f64::consts::PI;

use crate::spectral::CircleMeasure;

/// One constant piece of `F - G`: its value and its length.
#[derive(Clone, Copy, Debug)]
struct Piece {
    value: f64,
    len: f64,
}

fn difference_pieces(mu: &CircleMeasure, nu: &CircleMeasure) -> Vec<Piece> {
    // Positions measured from the cut at -pi, so x in [0, 2 pi).
    let pos = |a: f64| {
        let x = a + PI;
        if x >= 2.0 * PI {
            0.0
        } else {
            x
        }
    };
    let mut events: Vec<(f64, f64)> = Vec::with_capacity(mu.len() + nu.len());
    events.extend(
        mu.atoms()
            .iter()
            .zip(mu.weights())
            .map(|(&a, &w)| (pos(a), w)),
    );
    events.extend(
        nu.atoms()
            .iter()
            .zip(nu.weights())
            .map(|(&a, &w)| (pos(a), -w)),
    );
    events.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut pieces = Vec::with_capacity(events.len() + 1);
    let mut x_prev = 0.0;
    let mut level = 0.0;
    let mut i = 0;
    while i < events.len() {
        let x = events[i].0;
        if x > x_prev {
            pieces.push(Piece {
                value: level,
                len: x - x_prev,
            });
        }
        while i < events.len() && events[i].0 == x {
            level += events[i].1;
            i += 1;
        }
        x_prev = x;
    }
    if 2.0 * PI > x_prev {
        pieces.push(Piece {
            value: level,
            len: 2.0 * PI - x_prev,
        });
    }
    pieces
}

/// Lowest value `s` with at least half the total length at or below it.
fn weighted_median(pieces: &mut [Piece]) -> f64 {
    pieces.sort_by(|a, b| a.value.total_cmp(&b.value));
    let total: f64 = pieces.iter().map(|p| p.len).sum();
    let mut acc = 0.0;
    for p in pieces.iter() {
        acc += p.len;
        if acc >= 0.5 * total {
            return p.value;
        }
    }
    pieces.last().map_or(0.0, |p| p.value)
}

/// Exact W1 between atomic measures under arc-length cost.
pub fn w1_geodesic(mu: &CircleMeasure, nu: &CircleMeasure) -> f64 {
    let mut pieces = difference_pieces(mu, nu);
    let s = weighted_median(&mut pieces);
    pieces.iter().map(|p| p.len * (p.value - s).abs()).sum()
}

/// Arc-length distance between two angles.
pub fn arc_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Euclidean distance between `e^{ia}` and `e^{ib}`.
pub fn chord_distance(a: f64, b: f64) -> f64 {
    2.0 * (0.5 * arc_distance(a, b)).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_prefers_lowest() {
        let mut p = vec![
            Piece {
                value: 1.0,
                len: 1.0,
            },
            Piece {
                value: 0.0,
                len: 1.0,
            },
        ];
        assert_eq!(weighted_median(&mut p), 0.0);
    }

    #[test]
    fn distances() {
        assert!((arc_distance(PI, -PI)).abs() < 1e-15);
        assert!((arc_distance(3.0, -3.0) - (2.0 * PI - 6.0)).abs() < 1e-14);
        assert!((chord_distance(0.0, PI) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn atom_at_pi_is_same_as_minus_pi() {
        let a = CircleMeasure::point_mass(PI);
        let b = CircleMeasure::point_mass(-PI + 1e-9);
        assert!(w1_geodesic(&a, &b) < 2e-9);
    }
}
