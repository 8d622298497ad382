//! Continuous-time quantum walks on unitary Cayley graphs `X_n` and
//! quadratic unitary Cayley graphs `G_n`. Spectra and state-transfer
//! decisions are exact; a float simulator cross-checks them.
//!
//! ```
//! use qwalk::graphs::Family;
//! use qwalk::statetransfer::Analysis;
//!
//! let a = Analysis::run(Family::QuadraticUnitary, 14).unwrap();
//! assert!(a.fr.holds && a.pgfr.holds);
//! assert!(a.disagreements().is_empty());
//! ```

pub mod acceptance;
mod error;
pub mod exactfield;
pub mod format;
pub mod graphs;
pub mod numtheory;
pub mod spectra;
pub mod statetransfer;
pub mod walk;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/state-transfer.md")]
    mod state_transfer {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
