//! The polynomials `Q_k(t) = sum_{j<k} (-tk)^j / (j+1)! * C(k-1, j)` with
//! exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QPolynomial {
    k: usize,
    /// Coefficient of `t^j` at index `j`.
    coefficients: Vec<BigRational>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact coefficients of `Q_k`.
pub fn q_polynomial(k: usize) -> Result<QPolynomial> {
    if k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let neg_k = -BigInt::from(k);
    let mut power = BigInt::one();
    let coefficients = (0..k)
        .map(|j| {
            let c = BigRational::new(&power * binomial(k - 1, j), factorial(j + 1));
            power *= &neg_k;
            c
        })
        .collect();
    Ok(QPolynomial { k, coefficients })
}

impl QPolynomial {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.k - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, t: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// `A_k(t) = Q_k(-t)`, the sum of absolute terms for `t >= 0`.
    pub fn absolute_sum_exact(&self, t: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c.abs())
    }

    pub fn coefficient_f64(&self, j: usize) -> f64 {
        self.coefficients[j].to_f64().unwrap_or(f64::NAN)
    }
}

/// `t^{k-1} k ((k-1)!)^2`, exact.
pub fn factorial_envelope(k: usize, t: &BigRational) -> BigRational {
    let f = factorial(k - 1);
    let mut p = BigRational::one();
    for _ in 1..k {
        p *= t;
    }
    p * BigRational::from_integer(BigInt::from(k) * &f * &f)
}

/// Natural log of `|x|` for a nonzero rational of any size.
pub fn ln_abs(x: &BigRational) -> f64 {
    fn ln_big(v: &BigInt) -> f64 {
        let bits = v.bits();
        if bits <= 1000 {
            return v.abs().to_f64().unwrap().ln();
        }
        let shift = bits - 64;
        let top: BigInt = v.abs() >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(x.numer()) - ln_big(x.denom())
}
