//! Supersymmetric factorization of the sech², Rosen–Morse II and
//! Jacobi-type Schrödinger problems, with exact ladder algebra and
//! independent numerical oracles.
//!
//! * [`exact_algebra`]: closed-form waves `c (1−t)^a (1+t)^b P(t)`, `t = tanh z`.
//! * [`coordinate_maps`]: the angular charts `θ(z)`.
//! * [`susy_core`]: superpotentials, partner potentials, shape invariance.
//! * [`spectra`]: closed-form levels and eigenfunctions.
//! * [`special_oracle`]: Jacobi, Gegenbauer and associated Legendre polynomials.
//! * [`numeric_oracle`]: finite differences, Sturm bisection, scattering.
//! * [`cli`]: the `susy-jacobi` command line.

pub mod cli;
pub mod coordinate_maps;
pub mod error;
pub mod exact_algebra;
pub mod numeric_oracle;
pub mod report;
pub mod special_oracle;
pub mod spectra;
pub mod susy_core;
pub mod verification;

pub use error::{Error, Result};
pub use exact_algebra::{HypWave, LadderParam, Rational, TanhPoly};
pub use numeric_oracle::{Grid, TridiagonalOperator};
pub use spectra::{PotentialFamily, SpectrumEntry};
