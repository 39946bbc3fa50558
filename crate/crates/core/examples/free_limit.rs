//! The large-N limit of the spectral measure: moments, density, support
//! and distance to the uniform measure.
//!
//! ```text
//! cargo run --release --example free_limit
//! ```

use std::f64::consts::PI;

use num_rational::BigRational;
use ubmlab::free::{
    factorial_envelope, moment, q_polynomial, w1_between_times, w1_to_uniform, FreeMeasureModel,
};

fn main() -> ubmlab::Result<()> {
    println!("moments m_k(t):");
    for t in [0.5, 1.0, 4.0] {
        let m: Vec<String> = (1..=5)
            .map(|k| Ok(format!("{:>10.6}", moment(k, t)?)))
            .collect::<ubmlab::Result<_>>()?;
        println!("  t={t:<4}{}", m.join(""));
    }

    println!("\ndensity on a coarse grid (arc support below t = 4):");
    for t in [1.0, 2.0, 4.0, 8.0] {
        let model = FreeMeasureModel::new(t)?;
        let row: Vec<String> = (0..=6)
            .map(|i| format!("{:>8.4}", model.density(PI * i as f64 / 6.0)))
            .collect();
        let support = match model.support_half_width() {
            Some(a) => format!("arc [-{a:.3}, {a:.3}]"),
            None => "whole circle".to_string(),
        };
        println!("  t={t:<4}{}   {support}", row.join(""));
    }

    println!("\nW1 to uniform and between times:");
    for t in [2.0, 4.0, 8.0, 16.0] {
        let r = w1_to_uniform(t, 4096)?;
        println!(
            "  W1(nu_{t}, uniform) = {:.4e}  (discretization error <= {:.1e})",
            r.value, r.discretization_error
        );
    }
    let r = w1_between_times(1.0, 2.0, 4096)?;
    println!("  W1(nu_1, nu_2) in [{:.4}, {:.4}]", r.lower, r.upper);

    println!("\nexact polynomial bound at t = 3, sum of |coefficients| t^j / envelope:");
    let t = BigRational::from_integer(3.into());
    for k in [1usize, 5, 10, 20] {
        let q = q_polynomial(k)?;
        let ratio = q.absolute_sum_exact(&t) / factorial_envelope(k, &t);
        println!(
            "  k={k:>2}: {:.3e}",
            num_traits::ToPrimitive::to_f64(&ratio).unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
