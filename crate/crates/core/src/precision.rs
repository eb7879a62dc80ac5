//! Scalar types for evaluating the complex continuations.
//!
//! [`Real`] abstracts over `f64` and [`DoubleDouble`] so the same Binet code
//! can run at double or double-double precision. The definitional helix maps
//! subtract terms of size `λ1^{2t}` to leave something of size `R`; at `P=3`,
//! `t=10` the terms are near `2.4e10`, whose ulp already exceeds `1e-6`, so
//! that route is evaluated with [`DoubleDouble`] (about 32 significant digits).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Rem, Sub};

use num_traits::{Num, One, Zero};

/// Real scalar with the transcendental functions the Binet maps need.
pub trait Real: Copy + fmt::Debug + PartialOrd + Num + Neg<Output = Self> {
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    /// `(cos πx, sin πx)`, exact at integers and half-integers.
    fn cos_sin_pi(self) -> (Self, Self);
    fn is_finite(self) -> bool;
}

/// Splits `x = 2n + q/2 + s` with integer `q` and `|s| <= 1/4`, returning
/// `(q mod 4, s)`.
fn reduce_half_turns(x: f64) -> (i64, f64) {
    let r = x - 2.0 * (x / 2.0).round();
    let q = (2.0 * r).round();
    (q as i64, r - 0.5 * q)
}

fn rotate_quadrant<T: Real>(q: i64, c: T, s: T) -> (T, T) {
    match q.rem_euclid(4) {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn ln(self) -> Self {
        f64::ln(self)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn cos_sin_pi(self) -> (Self, Self) {
        if !self.is_finite() {
            return (f64::NAN, f64::NAN);
        }
        let (q, s) = reduce_half_turns(self);
        let (c, sn) = if s == 0.0 {
            (1.0, 0.0)
        } else {
            let theta = std::f64::consts::PI * s;
            (theta.cos(), theta.sin())
        };
        rotate_quadrant(q, c, sn)
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };
    pub const PI: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN_2: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DoubleDouble::from(q1).mul_f64(b);
        let q2 = r.hi / b;
        let r = r - DoubleDouble::from(q2).mul_f64(b);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from(q3)
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (hi, lo) = quick_two_sum(hi, self.lo.floor());
            DoubleDouble { hi, lo }
        } else {
            DoubleDouble { hi, lo: 0.0 }
        }
    }

    pub fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            -(-self).floor()
        }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplies by `2^k` exactly (barring overflow/underflow).
    fn ldexp(self, k: i32) -> Self {
        let half = k / 2;
        let a = 2f64.powi(half);
        let b = 2f64.powi(k - half);
        DoubleDouble {
            hi: self.hi * a * b,
            lo: self.lo * a * b,
        }
    }

    /// `(cos θ, sin θ)` by Taylor series, for `|θ| <= π/4`.
    fn cos_sin_small(theta: Self) -> (Self, Self) {
        let sq = theta * theta;
        let threshold = 1e-34;
        let mut sin = theta;
        let mut term = theta;
        let mut i = 2.0;
        loop {
            term = -(term * sq).div_f64(i * (i + 1.0));
            sin += term;
            if term.hi.abs() <= threshold {
                break;
            }
            i += 2.0;
        }
        let mut cos = DoubleDouble::ONE;
        let mut term = DoubleDouble::ONE;
        let mut i = 1.0;
        loop {
            term = -(term * sq).div_f64(i * (i + 1.0));
            cos += term;
            if term.hi.abs() <= threshold {
                break;
            }
            i += 2.0;
        }
        (cos, sin)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hi)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;

    fn rem(self, b: Self) -> Self {
        self - b * (self / b).trunc()
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble::ZERO
    }

    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble::ONE
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = std::num::ParseFloatError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        // Only decimal text is meaningful for a binary float pair.
        debug_assert_eq!(radix, 10);
        s.parse::<f64>().map(DoubleDouble::from)
    }
}

impl Real for DoubleDouble {
    fn from_f64(x: f64) -> Self {
        DoubleDouble::from(x)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn exp(self) -> Self {
        if self.hi > 709.8 {
            return DoubleDouble::from(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return DoubleDouble::ZERO;
        }
        if self.is_zero() {
            return DoubleDouble::ONE;
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        // |r| <= ln2/2, scaled by 2^-10 so the series converges fast.
        let r = (self - DoubleDouble::LN_2.mul_f64(k)).ldexp(-10);
        let mut term = r;
        let mut expm1 = r;
        let mut i = 2.0;
        while term.hi.abs() > 1e-36 {
            term = (term * r).div_f64(i);
            expm1 += term;
            i += 1.0;
        }
        // (1 + e)^2 - 1 = 2e + e², ten times.
        for _ in 0..10 {
            expm1 = expm1.mul_f64(2.0) + expm1 * expm1;
        }
        (expm1 + DoubleDouble::ONE).ldexp(k as i32)
    }

    fn ln(self) -> Self {
        if self.hi <= 0.0 || !self.hi.is_finite() {
            return DoubleDouble::from(f64::ln(self.hi));
        }
        let mut y = DoubleDouble::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - DoubleDouble::ONE;
        }
        y
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::from(f64::sqrt(self.hi));
        }
        let x = self.hi.sqrt();
        let y = DoubleDouble::from(x);
        let correction = (self - y * y).hi * (0.5 / x);
        let (hi, lo) = two_sum(x, correction);
        DoubleDouble { hi, lo }
    }

    fn cos_sin_pi(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            let nan = DoubleDouble::from(f64::NAN);
            return (nan, nan);
        }
        let turns = DoubleDouble::from(2.0 * (self.hi / 2.0).round());
        let r = self - turns;
        let q = (2.0 * r.hi).round();
        let s = r - DoubleDouble::from(0.5 * q);
        let (c, sn) = if s.is_zero() {
            (DoubleDouble::ONE, DoubleDouble::ZERO)
        } else {
            DoubleDouble::cos_sin_small(DoubleDouble::PI * s)
        };
        rotate_quadrant(q as i64, c, sn)
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Dd = DoubleDouble;

    fn close(a: Dd, b: Dd, rel: f64) -> bool {
        let scale = b.abs().hi.max(1e-300);
        (a - b).abs().hi <= rel * scale
    }

    #[test]
    fn arithmetic_keeps_the_low_word() {
        let third = Dd::ONE / Dd::from(3.0);
        let back = third * Dd::from(3.0);
        assert!(close(back, Dd::ONE, 1e-31));
        let tiny = Dd::from(1.0) + Dd::from(1e-20);
        assert_eq!(tiny.hi(), 1.0);
        assert_eq!(tiny.lo(), 1e-20);
        assert!(close(
            Dd::from(2.0).sqrt() * Dd::from(2.0).sqrt(),
            Dd::from(2.0),
            1e-31
        ));
    }

    #[test]
    fn exp_ln_round_trip() {
        for &x in &[-30.0, -1.5, -1e-3, 0.25, 1.0, 2.5, 17.0, 123.456] {
            let x = Dd::from(x);
            assert!(close(x.exp().ln(), x, 1e-29), "{x:?}");
        }
        // e = 2.718281828459045 + 1.4456468917292502e-16
        let e = Dd::ONE.exp();
        assert_eq!(e.hi(), std::f64::consts::E);
        assert!((e.lo() - 1.445_646_891_729_250_2e-16).abs() < 1e-30);
        assert!(close(Dd::LN_2.exp(), Dd::from(2.0), 1e-31));
    }

    #[test]
    fn exp_is_multiplicative() {
        let a = Dd::from(3.7) + Dd::from(1e-17);
        let b = Dd::from(-1.9);
        assert!(close((a + b).exp(), a.exp() * b.exp(), 1e-30));
    }

    #[test]
    fn trig_exact_at_integers_and_halves() {
        for k in -6i64..=6 {
            let (c, s) = Dd::from(k as f64).cos_sin_pi();
            assert_eq!(c.to_f64(), if k % 2 == 0 { 1.0 } else { -1.0 });
            assert_eq!(s.to_f64(), 0.0);
            let (c, s) = <f64 as Real>::cos_sin_pi(k as f64 + 0.5);
            assert_eq!(c, 0.0);
            assert_eq!(s, if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 });
        }
    }

    #[test]
    fn trig_pythagorean_and_agrees_with_f64() {
        for i in -40..40 {
            let x = i as f64 * 0.173 + 0.01;
            let (c, s) = Dd::from(x).cos_sin_pi();
            assert!(close(c * c + s * s, Dd::ONE, 1e-30));
            let (cf, sf) = <f64 as Real>::cos_sin_pi(x);
            assert!((c.to_f64() - cf).abs() < 1e-14);
            assert!((s.to_f64() - sf).abs() < 1e-14);
            assert!((cf - (std::f64::consts::PI * x).cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn rem_and_trunc() {
        let r = Dd::from(7.5) % Dd::from(2.0);
        assert_eq!(r.to_f64(), 1.5);
        assert_eq!((Dd::from(-7.5)).trunc().to_f64(), -7.0);
        assert_eq!(Dd::from(3.0).floor().to_f64(), 3.0);
    }
}
