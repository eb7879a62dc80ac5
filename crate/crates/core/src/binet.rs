//! Complex continuation of the Binet formulae:
//!
//! ```text
//! g(t) = λ1^t + λ2^t,    h(t) = (λ1^t - λ2^t) / √D,    λ2^t = e^{iπt} / λ1^t
//! ```
//!
//! The branch `(-1)^t = e^{iπt}` is fixed; `e^{-iπt}` would mirror every
//! helix through the xz-plane.

use std::fmt;

use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::precision::Real;
use crate::sequence::MetallicParams;

/// A finite complex number. Constructors reject NaN and infinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue(Complex64);

impl ComplexValue {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(ComplexValue(Complex64::new(re, im)))
        } else {
            Err(Error::NonFinite("complex value"))
        }
    }

    pub(crate) fn from_complex(z: Complex64, what: &'static str) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(ComplexValue(z))
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn as_complex(&self) -> Complex64 {
        self.0
    }

    /// `|self - other|`.
    pub fn distance(&self, other: &ComplexValue) -> f64 {
        (self.0 - other.0).norm()
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0.re, self.0.im)
    }
}

/// `λ1` and `ln λ1` carried at the working precision `T`.
#[derive(Debug, Clone, Copy)]
pub struct Roots<T> {
    pub lambda1: T,
    pub ln_lambda1: T,
    pub sqrt_d: T,
}

impl<T: Real> Roots<T> {
    pub fn new(params: &MetallicParams) -> Self {
        let sqrt_d = T::from_f64(params.d() as f64).sqrt();
        let two = T::from_f64(2.0);
        let lambda1 = (T::from_f64(params.p() as f64) + sqrt_d) / two;
        Roots {
            lambda1,
            ln_lambda1: lambda1.ln(),
            sqrt_d,
        }
    }
}

/// `(λ1^t, λ2^t)` at precision `T`.
pub fn root_powers<T: Real>(roots: &Roots<T>, t: T) -> (T, Complex<T>) {
    let big = (t * roots.ln_lambda1).exp();
    let (c, s) = t.cos_sin_pi();
    (big, Complex::new(c / big, s / big))
}

pub fn g_in<T: Real>(roots: &Roots<T>, t: T) -> Complex<T> {
    let (big, small) = root_powers(roots, t);
    Complex::new(big, T::zero()) + small
}

pub fn h_in<T: Real>(roots: &Roots<T>, t: T) -> Complex<T> {
    let (big, small) = root_powers(roots, t);
    (Complex::new(big, T::zero()) - small).unscale(roots.sqrt_d)
}

fn finish<T: Real>(z: Complex<T>, what: &'static str) -> Result<ComplexValue> {
    ComplexValue::from_complex(Complex64::new(z.re.to_f64(), z.im.to_f64()), what)
}

fn f64_roots(params: &MetallicParams) -> Roots<f64> {
    Roots {
        lambda1: params.lambda1(),
        ln_lambda1: params.ln_lambda1(),
        sqrt_d: params.sqrt_d(),
    }
}

/// `λ2^t = (cos πt + i sin πt) / λ1^t`.
pub fn lambda2_pow(params: &MetallicParams, t: f64) -> Result<ComplexValue> {
    params.check_horizon(t)?;
    let (_, small) = root_powers(&f64_roots(params), t);
    finish(small, "λ2^t")
}

/// Complex continuation of the P-Lucas sequence; `g(k) = L_k`.
pub fn g_eval(params: &MetallicParams, t: f64) -> Result<ComplexValue> {
    params.check_horizon(t)?;
    finish(g_in(&f64_roots(params), t), "g(t)")
}

/// Complex continuation of the P-Fibonacci sequence; `h(k) = F_k`.
pub fn h_eval(params: &MetallicParams, t: f64) -> Result<ComplexValue> {
    params.check_horizon(t)?;
    finish(h_in(&f64_roots(params), t), "h(t)")
}
