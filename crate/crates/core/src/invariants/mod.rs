//! Enumerative invariants: the Tutte polynomial and the configuration.

mod config;
mod tutte;

pub use config::{config_isomorphic, configuration, Configuration};
pub use tutte::{tutte_polynomial, TuttePolynomial, TUTTE_LIMIT};
