use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument {arg} exceeds the evaluation horizon for P={p}")]
    Overflow { p: u64, arg: f64 },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("grid of {points} points exceeds the cap of {cap}")]
    GridTooLarge { points: usize, cap: usize },

    #[error("strand grids do not match")]
    GridMismatch,

    #[error("closed form and definition disagree for {map} at t={t}: |Δ|={delta:e}")]
    VerificationFailed {
        map: &'static str,
        t: f64,
        delta: f64,
    },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown template `{0}`")]
    UnknownTemplate(String),

    #[error("{equations} equations cannot determine {unknowns} unknowns (need at least {needed})")]
    InsufficientEquations {
        equations: usize,
        unknowns: usize,
        needed: usize,
    },

    #[error("system is underdetermined: rank {rank} < {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },

    #[error("no exact solution: {0}")]
    NoExactSolution(String),

    #[error("nothing to export: {0}")]
    Empty(&'static str),

    #[error("unsupported export: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
