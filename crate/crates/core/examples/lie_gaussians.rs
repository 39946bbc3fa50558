//! Standard Gaussians on the Lie algebras u(N) and su(N).
//!
//! For `<A, B>_N = N Re tr(A B*)` a standard Gaussian has
//! `E <X, X>_N = dim`, which is `N^2` on u(N) and `N^2 - 1` on su(N).
//!
//! ```text
//! cargo run --release --example lie_gaussians
//! ```

use ubmlab::lie::{gaussian_su, gaussian_u};
use ubmlab::rng::RngStream;

fn main() -> ubmlab::Result<()> {
    let samples = 2000;
    for n in [2usize, 4, 8, 16] {
        let mut rng = RngStream::new(1, n as u64);
        let (mut u_norm, mut su_norm, mut su_trace) = (0.0, 0.0, 0.0f64);
        for _ in 0..samples {
            u_norm += gaussian_u(n, &mut rng)?.metric_norm_sq();
            let y = gaussian_su(n, &mut rng)?;
            su_norm += y.metric_norm_sq();
            su_trace = su_trace.max(y.trace().norm());
        }
        let m = samples as f64;
        println!(
            "N={n:>2}  E|X|^2 on u(N): {:>8.3} (expect {:>3})  on su(N): {:>8.3} (expect {:>3})  max |tr| on su(N): {su_trace:.1e}",
            u_norm / m,
            n * n,
            su_norm / m,
            n * n - 1,
        );
    }
    Ok(())
}
