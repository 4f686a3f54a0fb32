//! Generalized FGM copulas built from multivariate Bernoulli distributions.

pub mod association;
pub mod bernoulli;
pub mod copula;
pub mod error;
pub mod exchangeable;
pub mod io;
pub mod quadrature;
pub mod sampling;
pub mod tables;

pub use bernoulli::{BernoulliPmf, MarginVector, MomentMap};
pub use copula::{BivariateGfgm, GfgmCopula};
pub use error::{Error, Result};
