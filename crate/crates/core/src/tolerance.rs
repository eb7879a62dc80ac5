//! Numeric tolerances shared by the continuous maps and their checks.

/// Tolerance record for every floating-point comparison in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|g(t+2) - P g(t+1) - g(t)| <= recurrence * (1 + |g(t+2)|)`.
    pub recurrence: f64,
    /// Relative agreement of `g(k)`, `h(k)` and Binet values with exact terms.
    pub integer_match: f64,
    /// Imaginary residue of `λ2^k` at integer `k`.
    pub imag_at_integer: f64,
    /// `|ψ_def - ψ_closed| <= closed_form * R`.
    pub closed_form: f64,
    /// `|x² + y² - R²| <= cylinder * R²`.
    pub cylinder: f64,
    /// Per-component slack of the `(0, 0, 2)` pitch displacement.
    pub pitch: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        recurrence: 1e-8,
        integer_match: 1e-9,
        imag_at_integer: 1e-12,
        closed_form: 1e-6,
        cylinder: 1e-6,
        pitch: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
