//! Helices built from P-Lucas and P-Fibonacci sequences.
//!
//! The crate is layered bottom-up:
//!
//! * [`sequence`] generates exact terms `L_k`, `F_k` for any integer `k` and
//!   evaluates the classical Binet formulae in floating point.
//! * [`binet`] continues the Binet formulae to real arguments, giving the
//!   complex-valued maps `g(t)` and `h(t)` on the principal branch
//!   `(-1)^t = e^{iπt}`.
//! * [`helix`] evaluates the helix maps `ψ1..ψ7` and `ℒ`, samples them as
//!   3D curves, enumerates lattice points and composes double helices.
//! * [`identity`] checks the integer identities behind those maps in exact
//!   arithmetic, emits Pell certificates and rediscovers identity
//!   coefficients with an exact linear solve ([`linalg`]).
//! * [`export`] writes curves and reports as CSV, JSON, OBJ, SVG and text.
//!
//! [`precision`] provides the double-double scalar used to evaluate the
//! definitional form of the helix maps without losing the cancellation.

pub mod binet;
pub mod error;
pub mod export;
pub mod helix;
pub mod identity;
pub mod linalg;
pub mod precision;
pub mod sequence;
pub mod tolerance;

pub use binet::{g_eval, h_eval, lambda2_pow, ComplexValue};
pub use error::{Error, Result};
pub use helix::{
    compose_double_helix, curve_sample, helix_point, lattice_points, psi_closed, psi_def,
    CurveSamples, DoubleHelix, HelixSpec, LatticePoint, MapId, Sign,
};
pub use identity::{
    discover_coefficients, pell_certificate, verify_identity, CoeffSolution, IdentityId,
    IdentityReport, PellWitness, TemplateId,
};
pub use sequence::{binet_float, fibonacci, lucas, make_params, MetallicParams, SequenceKind};
pub use tolerance::Tolerances;
