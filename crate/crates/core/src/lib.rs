//! Normalized associated Legendre polynomials `T_l^m` and spherical harmonics as
//! a single unitary irreducible representation of `so(3,2)`.
//!
//! The crate is organized around the weight lattice `{(l, m) : |m| <= l}`:
//!
//! * [`index`]: mode indices, truncation windows and sparse coefficient vectors.
//! * [`alp`]: pointwise evaluation of `T_l^m(x)` and its derivatives.
//! * [`quadrature`]: Gauss-Legendre rules and grid samples.
//! * [`algebra`]: the twelve ladder/diagonal generators as exact sparse operators,
//!   commutators, Casimirs, mode generation from the vacuum and diagonal spectra.
//! * [`diffops`]: the differential realizations of the generators acting on grids
//!   and the reconstruction of the Legendre equation from each Casimir.
//! * [`transforms`]: per-channel Legendre analysis/synthesis, inner products and
//!   Parseval checks.
//! * [`sphere`]: spherical harmonics, the phase-dressed generators and the
//!   spherical transform.
//! * [`verify`]: verification suites producing deterministic JSON reports.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`
//! directory; the `so32` binary is a thin command-line front end.

pub mod algebra;
pub mod alp;
pub mod diffops;
pub mod error;
pub mod index;
pub mod io;
pub mod quadrature;
pub mod sphere;
pub mod transforms;
pub mod verify;

pub use algebra::{Casimir, GeneratorName, SparseOperator};
pub use alp::{eval_t, eval_t_derivative};
pub use error::{Error, Result};
pub use index::{CoeffVector, ModeIndex, Truncation};
pub use quadrature::{gauss_legendre, GridFunction, QuadratureRule};
