//! Wasserstein-1 distances on the circle.
//!
//! The geodesic cost is solved exactly by the weighted-median formula, the
//! chordal cost by an exact transportation simplex; the two are within a
//! factor pi/2 of each other.
//!
//! ```text
//! cargo run --release --example circle_transport
//! ```

use std::f64::consts::PI;

use ubmlab::spectral::CircleMeasure;
use ubmlab::transport::{
    quantile_discretize, w1_discrete, w1_to_continuous, CostKind, UniformCircle,
};

fn main() -> ubmlab::Result<()> {
    let mu = CircleMeasure::from_pairs([(0.0, 0.5), (PI / 2.0, 0.25), (-2.5, 0.25)])?;
    let nu = CircleMeasure::from_pairs([(3.0, 0.5), (-1.0, 0.5)])?;
    for kind in [
        CostKind::Geodesic,
        CostKind::ChordalExact,
        CostKind::ChordalSandwich,
    ] {
        let r = w1_discrete(&mu, &nu, kind)?;
        println!(
            "{kind:<16?} value {:.6}  bracket [{:.6}, {:.6}]",
            r.value, r.lower, r.upper
        );
    }

    // Point masses rotated by phi are exactly phi apart.
    let p = CircleMeasure::point_mass(0.2);
    println!("\nrotations of a point mass:");
    for phi in [0.5, 1.5, 3.0] {
        let r = w1_discrete(&p, &p.rotated(phi), CostKind::Geodesic)?;
        println!("  phi = {phi}: W1 = {:.6}", r.value);
    }

    // m equally spaced atoms are pi / (2m) from the uniform measure; the
    // bracket from the quantile discretization contains that value.
    println!("\nlattice of m atoms against the uniform measure:");
    for m in [64usize, 256, 1024] {
        let lattice = quantile_discretize(&UniformCircle, m)?.measure;
        let r = w1_to_continuous(
            &lattice.rotated(PI / m as f64),
            &UniformCircle,
            4 * m,
            CostKind::Geodesic,
        )?;
        println!(
            "  m = {m:>4}: bracket [{:.2e}, {:.2e}]  exact {:.2e}",
            r.lower,
            r.upper,
            PI / (2.0 * m as f64)
        );
    }
    Ok(())
}
