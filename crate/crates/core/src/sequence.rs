//! Exact P-Lucas / P-Fibonacci terms and their floating-point Binet values.
//!
//! Both families satisfy `X_{n+2} = P X_{n+1} + X_n`; Lucas starts from
//! `(2, P)` and Fibonacci from `(0, 1)`. Negative indices run the recurrence
//! backwards, `X_k = X_{k+2} - P X_{k+1}`, which is the only extension to all
//! of ℤ that keeps the recurrence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest accepted `P`; keeps `D = P² + 4` exact in an `f64`.
pub const MAX_P: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    Lucas,
    Fibonacci,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Lucas => "lucas",
            SequenceKind::Fibonacci => "fibonacci",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The integer parameter `P` together with `D = P² + 4` and the roots of
/// `λ² - Pλ - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetallicParams {
    p: u64,
    d: u64,
    sqrt_d: f64,
    lambda1: f64,
    lambda2: f64,
    ln_lambda1: f64,
}

impl MetallicParams {
    pub fn new(p: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::Domain(format!(
                "P must be a positive integer, got {p}"
            )));
        }
        let p = p as u64;
        if p > MAX_P {
            return Err(Error::Domain(format!("P must not exceed {MAX_P}, got {p}")));
        }
        let d = p * p + 4;
        let sqrt_d = (d as f64).sqrt();
        let lambda1 = (p as f64 + sqrt_d) / 2.0;
        // (P - √D)/2 cancels badly for large P; λ1 λ2 = -1 gives it stably.
        let lambda2 = -1.0 / lambda1;
        Ok(MetallicParams {
            p,
            d,
            sqrt_d,
            lambda1,
            lambda2,
            ln_lambda1: lambda1.ln(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn sqrt_d(&self) -> f64 {
        self.sqrt_d
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn ln_lambda1(&self) -> f64 {
        self.ln_lambda1
    }

    /// Largest `|t|` for which `λ1^t` and `λ1^-t` stay comfortably finite:
    /// `|t| ln λ1 <= ln(f64::MAX) - 2`.
    pub fn horizon(&self) -> f64 {
        (f64::MAX.ln() - 2.0) / self.ln_lambda1
    }

    pub fn within_horizon(&self, t: f64) -> bool {
        t.is_finite() && t.abs() <= self.horizon()
    }

    pub(crate) fn check_horizon(&self, t: f64) -> Result<()> {
        if self.within_horizon(t) {
            Ok(())
        } else {
            Err(Error::Overflow { p: self.p, arg: t })
        }
    }
}

impl FromStr for MetallicParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("P must be a positive integer, got `{s}`")))?;
        MetallicParams::new(p)
    }
}

pub fn make_params(p: i64) -> Result<MetallicParams> {
    MetallicParams::new(p)
}

fn seeds(kind: SequenceKind, p: u64) -> (BigInt, BigInt) {
    match kind {
        SequenceKind::Lucas => (BigInt::from(2), BigInt::from(p)),
        SequenceKind::Fibonacci => (BigInt::zero(), BigInt::from(1)),
    }
}

/// `(X_k, X_{k+1})` by stepping from the seeds in either direction.
fn pair_at(kind: SequenceKind, p: u64, k: i64) -> (BigInt, BigInt) {
    let p_big = BigInt::from(p);
    let (mut a, mut b) = seeds(kind, p);
    if k >= 0 {
        for _ in 0..k {
            let next = &p_big * &b + &a;
            a = std::mem::replace(&mut b, next);
        }
    } else {
        for _ in 0..(-k) {
            let prev = &b - &p_big * &a;
            b = std::mem::replace(&mut a, prev);
        }
    }
    (a, b)
}

pub fn term(params: &MetallicParams, kind: SequenceKind, k: i64) -> BigInt {
    pair_at(kind, params.p, k).0
}

/// Exact `L_k` for any integer `k`.
pub fn lucas(params: &MetallicParams, k: i64) -> BigInt {
    term(params, SequenceKind::Lucas, k)
}

/// Exact `F_k` for any integer `k`.
pub fn fibonacci(params: &MetallicParams, k: i64) -> BigInt {
    term(params, SequenceKind::Fibonacci, k)
}

/// A contiguous run of exact terms `X_lo ..= X_hi`, built in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceWindow {
    kind: SequenceKind,
    p: u64,
    start: i64,
    values: Vec<BigInt>,
}

impl SequenceWindow {
    pub fn new(params: &MetallicParams, kind: SequenceKind, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty index range [{lo}, {hi}]")));
        }
        let p_big = BigInt::from(params.p);
        let len = (hi - lo) as usize + 1;
        let mut values = Vec::with_capacity(len);
        let (a, b) = pair_at(kind, params.p, lo);
        values.push(a);
        if len > 1 {
            values.push(b);
        }
        while values.len() < len {
            let n = values.len();
            let next = &p_big * &values[n - 1] + &values[n - 2];
            values.push(next);
        }
        Ok(SequenceWindow {
            kind,
            p: params.p,
            start: lo,
            values,
        })
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn range(&self) -> (i64, i64) {
        (self.start, self.start + self.values.len() as i64 - 1)
    }

    /// Term at index `k`, or `None` outside the window.
    pub fn get(&self, k: i64) -> Option<&BigInt> {
        let offset = k.checked_sub(self.start)?;
        usize::try_from(offset)
            .ok()
            .and_then(|i| self.values.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        (self.start..).zip(self.values.iter())
    }
}

/// Floating-point Binet value of `L_n` or `F_n`.
///
/// Fails with [`Error::Overflow`] once `n ln λ1` passes `ln(f64::MAX) - 2`.
pub fn binet_float(params: &MetallicParams, kind: SequenceKind, n: u32) -> Result<f64> {
    let n_f = f64::from(n);
    params.check_horizon(n_f)?;
    let n_i = n as i32;
    let big = params.lambda1.powi(n_i);
    let small = params.lambda2.powi(n_i);
    let value = match kind {
        SequenceKind::Lucas => big + small,
        SequenceKind::Fibonacci => (big - small) / params.sqrt_d,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            p: params.p,
            arg: n_f,
        })
    }
}

/// Relative gap `|approx - exact| / max(1, |exact|)` against an exact term.
pub fn relative_gap(approx: f64, exact: &BigInt) -> f64 {
    let exact = exact.to_f64().unwrap_or(f64::INFINITY);
    (approx - exact).abs() / exact.abs().max(1.0)
}
