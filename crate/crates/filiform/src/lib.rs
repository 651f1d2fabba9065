//! Exact-arithmetic verification engine for degenerations to
//! 9-dimensional filiform Lie algebras.
//!
//! The crate builds each filiform algebra of the shipped catalog from its
//! top structure constants, assembles the linear deformations
//! `mu_t = mu + t*mu_D` and their conjugating families `g_t`, and checks
//! the degeneration identity `mu_1(g(x), g(y)) = g(mu_t(x, y))` as an
//! exact rational-function identity. Nonzero residuals on verbatim
//! catalog formulas are reported as findings, never silently corrected.

pub mod catalog;
pub mod cli;
pub mod deform;
pub mod degen;
pub mod deriv;
pub mod exact;
pub mod lie;
pub mod linalg;
