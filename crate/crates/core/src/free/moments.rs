//! Moments `int z^k d nu_t = e^{-kt/2} Q_k(t)` of the free unitary
//! Brownian motion distribution.
//!
//! The alternating sum defining `Q_k` has terms up to `(tk)^{k-1}/k!`, so
//! plain double precision loses every significant digit around k = 20,
//! t = 10. [`moment`] evaluates it in double-double arithmetic with a
//! running error bound and falls back to exact rationals (every `f64` is a
//! dyadic rational) when the bound is too loose.
//!
//! [`moment_sequence`] is the fast path used by the density model: the
//! identity `Q_k(t) = L^{(1)}_{k-1}(kt) / k` with the three-term Laguerre
//! recurrence, rescaled to stay in range.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::qpoly::{ln_abs, q_polynomial};
use crate::error::{Error, Result};

/// Relative accuracy [`moment`] guarantees for representable results.
pub const MOMENT_REL_TOL: f64 = 1e-10;

/// Largest order evaluated with the exact-rational fallback.
pub const EXACT_ORDER_CAP: usize = 512;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self {
            hi: s,
            lo: b - (s - a),
        }
    }

    fn two_prod(a: f64, b: f64) -> Self {
        let p = a * b;
        Self {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    pub fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let s = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(s.hi, s.lo + t.lo)
    }

    pub fn mul(self, o: Self) -> Self {
        let p = Self::two_prod(self.hi, o.hi);
        let lo = p.lo + (self.hi * o.lo + self.lo * o.hi);
        Self::quick_two_sum(p.hi, lo)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn rational_to_dd(r: &BigRational) -> DoubleDouble {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return DoubleDouble { hi, lo: 0.0 };
    }
    let rest = r - BigRational::from_float(hi).expect("finite");
    DoubleDouble {
        hi,
        lo: rest.to_f64().unwrap_or(0.0),
    }
}

/// Result of a checked evaluation of `Q_k(t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QValue {
    pub value: f64,
    /// Bound on `|computed - exact|`; zero for the exact route.
    pub abs_error_bound: f64,
    pub exact: bool,
}

/// `Q_k(t)` in double-double with an a-priori error bound.
pub fn q_value_extended(k: usize, t: f64) -> Result<QValue> {
    let q = q_polynomial(k)?;
    let coeffs: Vec<DoubleDouble> = q.coefficients().iter().map(rational_to_dd).collect();
    let tt = DoubleDouble::from_f64(t);
    let mut acc = DoubleDouble::from_f64(0.0);
    let mut abs_sum = 0.0f64;
    for c in coeffs.iter().rev() {
        acc = acc.mul(tt).add(*c);
        abs_sum = abs_sum * t.abs() + c.hi.abs();
    }
    // Each Horner step contributes a few units of 2^-104 relative to the
    // running absolute sum; coefficient rounding adds 2^-106 per term.
    let unit = 2f64.powi(-104);
    let bound = 8.0 * (k as f64 + 1.0) * unit * abs_sum * 1.01;
    Ok(QValue {
        value: acc.to_f64(),
        abs_error_bound: bound,
        exact: false,
    })
}

/// `Q_k(t)` exactly, rounded once at the end. Returns `(sign, ln|Q|)` so
/// huge values do not overflow; `sign == 0` means `Q = 0`.
pub fn q_value_exact_log(k: usize, t: f64) -> Result<(i8, f64)> {
    let q = q_polynomial(k)?;
    let tr = BigRational::from_float(t).ok_or(Error::Domain {
        value: t,
        domain: "finite t",
    })?;
    let v = q.eval_exact(&tr);
    if v.is_zero() {
        return Ok((0, f64::NEG_INFINITY));
    }
    let sign = if v.is_negative() { -1 } else { 1 };
    Ok((sign, ln_abs(&v)))
}

/// `int z^k d nu_t(z) = e^{-kt/2} Q_k(t)`, relative error at most
/// [`MOMENT_REL_TOL`] whenever the result is a normal `f64`.
pub fn moment(k: usize, t: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain {
            value: t,
            domain: "t >= 0",
        });
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let decay = -(k as f64) * t / 2.0;
    let ext = q_value_extended(k, t)?;
    if ext.value.is_finite() && ext.abs_error_bound <= 0.01 * MOMENT_REL_TOL * ext.value.abs() {
        return Ok(ext.value.signum() * (ext.value.abs().ln() + decay).exp());
    }
    if k > EXACT_ORDER_CAP {
        let rel = if ext.value != 0.0 {
            ext.abs_error_bound / ext.value.abs()
        } else {
            f64::INFINITY
        };
        return Err(Error::PrecisionLoss { k, t, bound: rel });
    }
    let (sign, ln_q) = q_value_exact_log(k, t)?;
    if sign == 0 {
        return Ok(0.0);
    }
    Ok(f64::from(sign) * (ln_q + decay).exp())
}

/// `m_1, ..., m_kmax` at time `t` by the Laguerre recurrence.
pub fn moment_sequence(t: f64, k_max: usize) -> Vec<f64> {
    (1..=k_max).map(|k| moment_laguerre(k, t)).collect()
}

/// `e^{-kt/2} L^{(1)}_{k-1}(kt) / k`.
pub fn moment_laguerre(k: usize, t: f64) -> f64 {
    let x = k as f64 * t;
    // L_0 = 1, L_1 = 2 - x, (n+1) L_{n+1} = (2n + 2 - x) L_n - (n+1) L_{n-1}
    let mut prev = 1.0f64;
    let mut cur = 2.0 - x;
    let mut log_scale = 0.0f64;
    if k == 1 {
        cur = prev;
    } else {
        for n in 1..(k - 1) {
            let nf = n as f64;
            let next = ((2.0 * nf + 2.0 - x) * cur - (nf + 1.0) * prev) / (nf + 1.0);
            prev = cur;
            cur = next;
            let mag = cur.abs().max(prev.abs());
            if mag > 1e150 {
                prev /= mag;
                cur /= mag;
                log_scale += mag.ln();
            }
        }
    }
    if cur == 0.0 {
        return 0.0;
    }
    cur.signum() * (cur.abs().ln() + log_scale - x / 2.0 - (k as f64).ln()).exp()
}
