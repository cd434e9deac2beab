//! Squeezed and displaced states of the unit harmonic oscillator.
//!
//! * [`gaussian_state`]: closed-form `S(t)`, `D(t)`, `N(t)` and `Ψ(x, t)`.
//! * [`heisenberg`]: the operator `iα(t)P + β(t)X`, its eigenstates and residuals.
//! * [`fock`]: Hermite-function expansion and spectral propagation, the
//!   independent oracle, plus the overlap-ratio phase construction.
//! * [`symplectic`]: unit-determinant 2×2 maps and their squeeze action.
//! * [`verify`]: the oracle and invariant checks run by `squeeze verify`.
//!
//! Units: `ħ = m = ω = 1`.

pub mod error;
pub mod fock;
pub mod gaussian_state;
pub mod grid;
pub mod heisenberg;
pub mod symplectic;
pub mod verify;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use fock::{FockBasis, FockExpansion};
pub use gaussian_state::{EvolvedParams, SqueezedDisplacedState};
pub use grid::{Grid, GridFunction};
pub use heisenberg::{HeisenbergRotation, OperatorCoeffs};
pub use symplectic::{SymplecticMatrix, SymplecticProduct};
