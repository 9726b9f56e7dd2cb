//! Littlewood-Richardson fillings as invariants of matrix pairs over the
//! discrete valuation ring `R = Q[t]_(t)`.
//!
//! - [`dvr`]: exact arithmetic in `R` and its fraction field.
//! - [`matrix`]: matrices over `R`, minors, Smith form, LU.
//! - [`tableaux`]: partitions and LR fillings.
//! - [`realize`]: a pair `(D_μ, N)` for a given filling.
//! - [`generic`]: the group action and reduction to μ-generic form.
//! - [`extract`]: the filling of a pair.
//! - [`cli`]: the `lrpairs` command.

pub mod cli;
pub mod dvr;
pub mod extract;
pub mod generic;
pub mod matrix;
pub mod realize;
pub mod tableaux;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] dvr::RingError),
    #[error(transparent)]
    Matrix(#[from] matrix::MatrixError),
    #[error(transparent)]
    Tableaux(#[from] tableaux::TableauxError),
    #[error(transparent)]
    Realize(#[from] realize::RealizeError),
    #[error(transparent)]
    Generic(#[from] generic::GenericError),
    #[error(transparent)]
    Extract(#[from] extract::ExtractError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
