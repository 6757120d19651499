//! Exact-arithmetic workbench for the q-deformed Witt/Virasoro operator
//! calculus: q-difference operators in normal form, the bilinear central-term
//! functionals and their property verifiers, the derived qKdV-type evolution
//! equations with their classical limit, the associated hierarchy coefficient
//! calculus, and a truncated-Laurent spectral simulator.

pub mod central;
pub mod error;
pub mod euler;
pub mod hierarchy;
pub mod jacobi;
pub mod laurent;
pub mod qfield;
pub mod qop;
pub mod report;
pub mod sim;
pub mod verify;

pub use error::{Error, Result};
