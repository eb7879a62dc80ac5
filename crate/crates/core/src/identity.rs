//! Exact verification of the quadratic Lucas/Fibonacci identities, Pell
//! certificates, and coefficient discovery for identity templates.
//!
//! Every identity in the catalog has the shape
//!
//! ```text
//! Σ c_i(P) · m_i(k) = r(P) · (-1)^k
//! ```
//!
//! where each `m_i` is one of the quadratic monomials in [`Monomial`] and the
//! coefficients are polynomials `a + b·P²`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{solve_exact, Solve};
use crate::sequence::{MetallicParams, SequenceKind, SequenceWindow};

/// Quadratic products of neighbouring terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monomial {
    /// `L_k²`
    LucasSquare,
    /// `L_{k-1} L_{k+1}`
    LucasNeighbors,
    /// `F_k²`
    FibonacciSquare,
    /// `F_{k-1} F_{k+1}`
    FibonacciNeighbors,
    /// `L_{2k}`
    LucasDoubleIndex,
}

impl Monomial {
    pub fn symbol(self) -> &'static str {
        match self {
            Monomial::LucasSquare => "L_k^2",
            Monomial::LucasNeighbors => "L_{k-1}L_{k+1}",
            Monomial::FibonacciSquare => "F_k^2",
            Monomial::FibonacciNeighbors => "F_{k-1}F_{k+1}",
            Monomial::LucasDoubleIndex => "L_{2k}",
        }
    }
}

/// `constant + p_squared · P²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyP2 {
    pub constant: i64,
    pub p_squared: i64,
}

const fn poly(constant: i64, p_squared: i64) -> PolyP2 {
    PolyP2 {
        constant,
        p_squared,
    }
}

impl PolyP2 {
    pub fn eval(self, p: u64) -> BigInt {
        let p = BigInt::from(p);
        BigInt::from(self.constant) + BigInt::from(self.p_squared) * &p * &p
    }
}

impl fmt::Display for PolyP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant, self.p_squared) {
            (c, 0) => write!(f, "{c}"),
            (0, b) => write!(f, "{b}*P^2"),
            (c, b) if b < 0 => write!(f, "{c} - {}*P^2", -b),
            (c, b) => write!(f, "{c} + {b}*P^2"),
        }
    }
}

/// Exact `L` and `F` windows covering every index a set of identities needs.
struct Terms {
    lucas: SequenceWindow,
    fib: SequenceWindow,
}

impl Terms {
    fn new(params: &MetallicParams, k_min: i64, k_max: i64) -> Result<Self> {
        let lo = (k_min - 1).min(2 * k_min);
        let hi = (k_max + 1).max(2 * k_max);
        Ok(Terms {
            lucas: SequenceWindow::new(params, SequenceKind::Lucas, lo, hi)?,
            fib: SequenceWindow::new(params, SequenceKind::Fibonacci, lo, hi)?,
        })
    }

    fn at(w: &SequenceWindow, k: i64) -> &BigInt {
        w.get(k).expect("index inside the prepared window")
    }

    fn eval(&self, m: Monomial, k: i64) -> BigInt {
        let (l, f) = (&self.lucas, &self.fib);
        match m {
            Monomial::LucasSquare => Self::at(l, k) * Self::at(l, k),
            Monomial::LucasNeighbors => Self::at(l, k - 1) * Self::at(l, k + 1),
            Monomial::FibonacciSquare => Self::at(f, k) * Self::at(f, k),
            Monomial::FibonacciNeighbors => Self::at(f, k - 1) * Self::at(f, k + 1),
            Monomial::LucasDoubleIndex => Self::at(l, 2 * k).clone(),
        }
    }
}

fn alternating(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticIdentity {
    pub terms: &'static [(Monomial, PolyP2)],
    pub rhs: PolyP2,
}

impl QuadraticIdentity {
    fn sides(&self, terms: &Terms, p: u64, k: i64) -> (BigInt, BigInt) {
        let lhs = self
            .terms
            .iter()
            .map(|(m, c)| c.eval(p) * terms.eval(*m, k))
            .sum();
        (lhs, self.rhs.eval(p) * alternating(k))
    }
}

use Monomial::*;

/// The identity catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `L_k² - L_{k-1}L_{k+1} = D(-1)^k`
    CassiniLucas,
    /// `F_{k-1}F_{k+1} - F_k² = (-1)^k`
    CassiniFibonacci,
    /// `L_k² - L_{2k} = 2(-1)^k`
    DoubleIndex,
    /// `L_k² - D F_k² = 4(-1)^k`
    PellForm,
    /// `L_k² - L_{k-1}L_{k+1} - (P²+3)(F_{k-1}F_{k+1} - F_k²) = (-1)^k`
    Psi4Expanded,
    /// `L_k² - (P²+2)F_k² - 2F_{k-1}F_{k+1} = 2(-1)^k`
    Psi5Expanded,
    /// As commonly printed: `L_k² - (P²+3)F_k² - 2F_{k-1}F_{k+1} = 3(-1)^k`. Fails.
    Psi6Printed,
    /// As commonly printed: `L_{k-1}L_{k+1} - (L_k² + F_k²) + 2F_{k-1}F_{k+1} = D(-1)^k`. Fails.
    Psi7Printed,
    /// `L_k² - (P²+3)F_k² - F_{k-1}F_{k+1} = 3(-1)^k`
    Psi6Corrected,
    /// `L_{k-1}L_{k+1} - L_k² + 2D(F_{k-1}F_{k+1} - F_k²) = D(-1)^k`
    Psi7Corrected,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::CassiniLucas,
        IdentityId::CassiniFibonacci,
        IdentityId::DoubleIndex,
        IdentityId::PellForm,
        IdentityId::Psi4Expanded,
        IdentityId::Psi5Expanded,
        IdentityId::Psi6Printed,
        IdentityId::Psi7Printed,
        IdentityId::Psi6Corrected,
        IdentityId::Psi7Corrected,
    ];

    /// Identities that hold for every `P` and `k`.
    pub const CONSISTENT: [IdentityId; 8] = [
        IdentityId::CassiniLucas,
        IdentityId::CassiniFibonacci,
        IdentityId::DoubleIndex,
        IdentityId::PellForm,
        IdentityId::Psi4Expanded,
        IdentityId::Psi5Expanded,
        IdentityId::Psi6Corrected,
        IdentityId::Psi7Corrected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::CassiniLucas => "cassini-lucas",
            IdentityId::CassiniFibonacci => "cassini-fibonacci",
            IdentityId::DoubleIndex => "double-index",
            IdentityId::PellForm => "pell-form",
            IdentityId::Psi4Expanded => "psi4-expanded",
            IdentityId::Psi5Expanded => "psi5-expanded",
            IdentityId::Psi6Printed => "psi6-printed",
            IdentityId::Psi7Printed => "psi7-printed",
            IdentityId::Psi6Corrected => "psi6-corrected",
            IdentityId::Psi7Corrected => "psi7-corrected",
        }
    }

    pub fn definition(self) -> QuadraticIdentity {
        const ONE: PolyP2 = poly(1, 0);
        const NEG_ONE: PolyP2 = poly(-1, 0);
        const D: PolyP2 = poly(4, 1);
        let (terms, rhs): (&'static [(Monomial, PolyP2)], PolyP2) = match self {
            IdentityId::CassiniLucas => (&[(LucasSquare, ONE), (LucasNeighbors, NEG_ONE)], D),
            IdentityId::CassiniFibonacci => (
                &[(FibonacciNeighbors, ONE), (FibonacciSquare, NEG_ONE)],
                ONE,
            ),
            IdentityId::DoubleIndex => (
                &[(LucasSquare, ONE), (LucasDoubleIndex, NEG_ONE)],
                poly(2, 0),
            ),
            IdentityId::PellForm => (
                const { &[(LucasSquare, ONE), (FibonacciSquare, poly(-4, -1))] },
                poly(4, 0),
            ),
            IdentityId::Psi4Expanded => (
                const {
                    &[
                        (LucasSquare, ONE),
                        (LucasNeighbors, NEG_ONE),
                        (FibonacciNeighbors, poly(-3, -1)),
                        (FibonacciSquare, poly(3, 1)),
                    ]
                },
                ONE,
            ),
            IdentityId::Psi5Expanded => (
                const {
                    &[
                        (LucasSquare, ONE),
                        (FibonacciSquare, poly(-2, -1)),
                        (FibonacciNeighbors, poly(-2, 0)),
                    ]
                },
                poly(2, 0),
            ),
            IdentityId::Psi6Printed => (
                const {
                    &[
                        (LucasSquare, ONE),
                        (FibonacciSquare, poly(-3, -1)),
                        (FibonacciNeighbors, poly(-2, 0)),
                    ]
                },
                poly(3, 0),
            ),
            IdentityId::Psi7Printed => (
                const {
                    &[
                        (LucasNeighbors, ONE),
                        (LucasSquare, NEG_ONE),
                        (FibonacciSquare, NEG_ONE),
                        (FibonacciNeighbors, poly(2, 0)),
                    ]
                },
                D,
            ),
            // Coefficients produced by `discover_coefficients(TemplateId::Psi6, ..)`.
            IdentityId::Psi6Corrected => (
                const {
                    &[
                        (LucasSquare, ONE),
                        (FibonacciSquare, poly(-3, -1)),
                        (FibonacciNeighbors, NEG_ONE),
                    ]
                },
                poly(3, 0),
            ),
            // Coefficients produced by `discover_coefficients(TemplateId::Psi7, ..)`.
            IdentityId::Psi7Corrected => (
                const {
                    &[
                        (LucasNeighbors, ONE),
                        (LucasSquare, NEG_ONE),
                        (FibonacciNeighbors, poly(8, 2)),
                        (FibonacciSquare, poly(-8, -2)),
                    ]
                },
                D,
            ),
        };
        QuadraticIdentity { terms, rhs }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub k: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    AllPass,
    Failures,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub p: u64,
    pub k_range: (i64, i64),
    /// Sorted by `k`.
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn status(&self) -> Status {
        if self.failures.is_empty() {
            Status::AllPass
        } else {
            Status::Failures
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::AllPass
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity: {}", self.identity)?;
        writeln!(f, "P: {}", self.p)?;
        writeln!(f, "range: [{}, {}]", self.k_range.0, self.k_range.1)?;
        let status = match self.status() {
            Status::AllPass => "AllPass",
            Status::Failures => "Failures",
        };
        writeln!(f, "status: {status}")?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "  k={} lhs={} rhs={}", fail.k, fail.lhs, fail.rhs)?;
        }
        Ok(())
    }
}

/// Renders reports as blank-line separated blocks.
pub fn render_reports(reports: &[IdentityReport]) -> String {
    reports
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

fn check_identity(
    identity: IdentityId,
    def: &QuadraticIdentity,
    params: &MetallicParams,
    k_min: i64,
    k_max: i64,
) -> Result<IdentityReport> {
    if k_min > k_max {
        return Err(Error::Domain(format!("empty k range [{k_min}, {k_max}]")));
    }
    let terms = Terms::new(params, k_min, k_max)?;
    let failures = (k_min..=k_max)
        .filter_map(|k| {
            let (lhs, rhs) = def.sides(&terms, params.p(), k);
            (lhs != rhs).then_some(IdentityFailure { k, lhs, rhs })
        })
        .collect();
    Ok(IdentityReport {
        identity,
        p: params.p(),
        k_range: (k_min, k_max),
        failures,
    })
}

/// Checks `identity` exactly for every `k` in `k_min..=k_max`.
pub fn verify_identity(
    identity: IdentityId,
    p: i64,
    k_min: i64,
    k_max: i64,
) -> Result<IdentityReport> {
    let params = MetallicParams::new(p)?;
    check_identity(identity, &identity.definition(), &params, k_min, k_max)
}

/// Runs an arbitrary identity definition; used to probe deliberately broken
/// variants of the catalog.
pub fn verify_definition(
    label: IdentityId,
    def: &QuadraticIdentity,
    p: i64,
    k_min: i64,
    k_max: i64,
) -> Result<IdentityReport> {
    let params = MetallicParams::new(p)?;
    check_identity(label, def, &params, k_min, k_max)
}

/// Solution `(x, y) = (L_k, F_k)` of `x² - D y² = 4(-1)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellWitness {
    pub p: u64,
    pub d: u64,
    pub k: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub rhs: BigInt,
}

impl PellWitness {
    pub fn holds(&self) -> bool {
        &self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y == self.rhs
    }
}

impl fmt::Display for PellWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} x={} y={} x^2-{}*y^2={}",
            self.k, self.x, self.y, self.d, self.rhs
        )
    }
}

/// Builds and checks the Pell certificate for index `k`.
///
/// # Panics
///
/// If the certificate does not hold, which would mean the sequence engine
/// is broken.
pub fn pell_certificate(params: &MetallicParams, k: i64) -> PellWitness {
    let w = SequenceWindow::new(params, SequenceKind::Lucas, k, k).expect("single index");
    let v = SequenceWindow::new(params, SequenceKind::Fibonacci, k, k).expect("single index");
    let witness = PellWitness {
        p: params.p(),
        d: params.d(),
        k,
        x: w.get(k).expect("in window").clone(),
        y: v.get(k).expect("in window").clone(),
        rhs: BigInt::from(4 * alternating(k)),
    };
    assert!(witness.holds(), "Pell certificate failed: {witness}");
    witness
}

/// Identity templates with unknown coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TemplateId {
    /// `L_k² - L_{k-1}L_{k+1} + a F_{k-1}F_{k+1} + b F_k² = (-1)^k`
    Psi4,
    /// `L_k² + a F_k² + b F_{k-1}F_{k+1} = 2(-1)^k`
    Psi5,
    /// `L_k² + a F_k² + b F_{k-1}F_{k+1} = 3(-1)^k`
    Psi6,
    /// `L_{k-1}L_{k+1} - L_k² + a F_{k-1}F_{k+1} + b F_k² = D(-1)^k`
    Psi7,
    /// `a L_k² + b L_{k-1}L_{k+1} + c F_k² + d F_{k-1}F_{k+1} = D(-1)^k`;
    /// underdetermined, since ψ1 alone already satisfies it.
    Psi7Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Template {
    pub fixed: &'static [(Monomial, PolyP2)],
    pub unknowns: &'static [Monomial],
    pub rhs: PolyP2,
}

impl TemplateId {
    pub const ALL: [TemplateId; 5] = [
        TemplateId::Psi4,
        TemplateId::Psi5,
        TemplateId::Psi6,
        TemplateId::Psi7,
        TemplateId::Psi7Free,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TemplateId::Psi4 => "psi4",
            TemplateId::Psi5 => "psi5",
            TemplateId::Psi6 => "psi6",
            TemplateId::Psi7 => "psi7",
            TemplateId::Psi7Free => "psi7-free",
        }
    }

    pub fn template(self) -> Template {
        const ONE: PolyP2 = poly(1, 0);
        match self {
            TemplateId::Psi4 => Template {
                fixed: const { &[(LucasSquare, ONE), (LucasNeighbors, poly(-1, 0))] },
                unknowns: &[FibonacciNeighbors, FibonacciSquare],
                rhs: ONE,
            },
            TemplateId::Psi5 => Template {
                fixed: &[(LucasSquare, ONE)],
                unknowns: &[FibonacciSquare, FibonacciNeighbors],
                rhs: poly(2, 0),
            },
            TemplateId::Psi6 => Template {
                fixed: &[(LucasSquare, ONE)],
                unknowns: &[FibonacciSquare, FibonacciNeighbors],
                rhs: poly(3, 0),
            },
            TemplateId::Psi7 => Template {
                fixed: const { &[(LucasNeighbors, ONE), (LucasSquare, poly(-1, 0))] },
                unknowns: &[FibonacciNeighbors, FibonacciSquare],
                rhs: poly(4, 1),
            },
            TemplateId::Psi7Free => Template {
                fixed: &[],
                unknowns: &[
                    LucasSquare,
                    LucasNeighbors,
                    FibonacciSquare,
                    FibonacciNeighbors,
                ],
                rhs: poly(4, 1),
            },
        }
    }
}

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TemplateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        TemplateId::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| Error::UnknownTemplate(s.to_string()))
    }
}

/// Coefficient `constant + p_squared·P²` found for one unknown monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveredCoefficient {
    pub monomial: Monomial,
    pub constant: BigRational,
    pub p_squared: BigRational,
}

impl DiscoveredCoefficient {
    /// The coefficient as an integer polynomial, if both parts are integers
    /// that fit in `i64`.
    pub fn as_poly(&self) -> Option<PolyP2> {
        use num_traits::ToPrimitive;
        let int = |r: &BigRational| r.is_integer().then(|| r.to_integer().to_i64()).flatten();
        Some(poly(int(&self.constant)?, int(&self.p_squared)?))
    }
}

/// A set of `(P, k)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckGrid {
    pub p_values: Vec<i64>,
    pub k_values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSolution {
    pub template: TemplateId,
    pub coefficients: Vec<DiscoveredCoefficient>,
    /// Pairs the coefficients were solved from.
    pub fitted_on: CheckGrid,
    /// Disjoint pairs the solved identity was re-checked on.
    pub reverified_on: CheckGrid,
}

impl fmt::Display for CoeffSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "template: {}", self.template)?;
        for c in &self.coefficients {
            writeln!(
                f,
                "  {}: {} + ({})*P^2",
                c.monomial.symbol(),
                c.constant,
                c.p_squared
            )?;
        }
        let span = |g: &CheckGrid| {
            let ks = (g.k_values.first(), g.k_values.last());
            format!(
                "P in {:?}, k in [{}, {}]",
                g.p_values,
                ks.0.copied().unwrap_or(0),
                ks.1.copied().unwrap_or(0)
            )
        };
        writeln!(f, "fitted: {}", span(&self.fitted_on))?;
        writeln!(f, "reverified: {}", span(&self.reverified_on))
    }
}

fn terms_for(params: &MetallicParams, k_values: &[i64]) -> Result<Terms> {
    let k_min = *k_values.iter().min().expect("non-empty k set");
    let k_max = *k_values.iter().max().expect("non-empty k set");
    Terms::new(params, k_min, k_max)
}

/// Residual `lhs - rhs` of a template with concrete coefficients at `(P, k)`.
fn residual(
    template: &Template,
    coeffs: &[(Monomial, BigRational)],
    terms: &Terms,
    p: u64,
    k: i64,
) -> BigRational {
    let fixed: BigInt = template
        .fixed
        .iter()
        .map(|(m, c)| c.eval(p) * terms.eval(*m, k))
        .sum();
    let unknown: BigRational = coeffs
        .iter()
        .map(|(m, c)| c * BigRational::from_integer(terms.eval(*m, k)))
        .sum();
    BigRational::from_integer(fixed) + unknown
        - BigRational::from_integer(template.rhs.eval(p) * alternating(k))
}

/// Default disjoint grid for re-verification: the two `P` values after the
/// fitted ones, `k ∈ [-10, 50]`.
fn default_reverify(fit_p: &[i64]) -> CheckGrid {
    let top = fit_p.iter().copied().max().unwrap_or(0);
    CheckGrid {
        p_values: vec![top + 1, top + 2],
        k_values: (-10..=50).collect(),
    }
}

/// Solves for the unknown coefficients of `template`, each of the form
/// `a + b·P²`, from the exact equations at every `(P, k)` pair, then
/// re-verifies the result on a disjoint set of `P` values.
pub fn discover_coefficients(
    template: TemplateId,
    p_set: &[i64],
    k_set: &[i64],
) -> Result<CoeffSolution> {
    let fit = CheckGrid {
        p_values: p_set.to_vec(),
        k_values: k_set.to_vec(),
    };
    let reverify = default_reverify(p_set);
    discover_coefficients_with(template, fit, reverify)
}

pub fn discover_coefficients_with(
    template_id: TemplateId,
    fit: CheckGrid,
    reverify: CheckGrid,
) -> Result<CoeffSolution> {
    let template = template_id.template();
    let unknowns = 2 * template.unknowns.len();
    let equations = fit.p_values.len() * fit.k_values.len();
    if equations < unknowns + 2 {
        return Err(Error::InsufficientEquations {
            equations,
            unknowns,
            needed: unknowns + 2,
        });
    }
    if fit.p_values.iter().any(|p| reverify.p_values.contains(p)) {
        return Err(Error::Domain(
            "re-verification grid must use different P values".into(),
        ));
    }
    if reverify.k_values.is_empty() || reverify.p_values.is_empty() {
        return Err(Error::Domain("re-verification grid is empty".into()));
    }

    let mut rows = Vec::with_capacity(equations);
    let mut rhs = Vec::with_capacity(equations);
    for &p in &fit.p_values {
        let params = MetallicParams::new(p)?;
        let terms = terms_for(&params, &fit.k_values)?;
        let p2 = BigInt::from(p) * BigInt::from(p);
        for &k in &fit.k_values {
            let mut row = Vec::with_capacity(unknowns);
            for m in template.unknowns {
                let v = terms.eval(*m, k);
                row.push(v.clone());
                row.push(v * &p2);
            }
            let fixed: BigInt = template
                .fixed
                .iter()
                .map(|(m, c)| c.eval(params.p()) * terms.eval(*m, k))
                .sum();
            rows.push(row);
            rhs.push(template.rhs.eval(params.p()) * alternating(k) - fixed);
        }
    }

    let solution = match solve_exact(&rows, &rhs) {
        Solve::Unique(x) => x,
        Solve::Underdetermined { rank } => return Err(Error::Underdetermined { rank, unknowns }),
        Solve::Inconsistent => {
            return Err(Error::NoExactSolution(format!(
                "template {template_id} has no exact coefficients on the fitting grid"
            )))
        }
    };
    let coefficients: Vec<DiscoveredCoefficient> = template
        .unknowns
        .iter()
        .enumerate()
        .map(|(i, &monomial)| DiscoveredCoefficient {
            monomial,
            constant: solution[2 * i].clone(),
            p_squared: solution[2 * i + 1].clone(),
        })
        .collect();

    for &p in &reverify.p_values {
        let params = MetallicParams::new(p)?;
        let terms = terms_for(&params, &reverify.k_values)?;
        let p2 = BigRational::from_integer(BigInt::from(p) * BigInt::from(p));
        let concrete: Vec<(Monomial, BigRational)> = coefficients
            .iter()
            .map(|c| (c.monomial, &c.constant + &c.p_squared * &p2))
            .collect();
        for &k in &reverify.k_values {
            let r = residual(&template, &concrete, &terms, params.p(), k);
            if !r.is_zero() {
                return Err(Error::NoExactSolution(format!(
                    "template {template_id} fails re-verification at P={p}, k={k} (residual {r})"
                )));
            }
        }
    }

    Ok(CoeffSolution {
        template: template_id,
        coefficients,
        fitted_on: fit,
        reverified_on: reverify,
    })
}
