//! Heat traces, weighted eigenvalue counting and degeneration asymptotics
//! for hyperbolic surfaces.
//!
//! The crate is `no_std` (it needs `alloc`); file formats and the command
//! line live in the `spectra` crate.
#![no_std]
// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counting;
pub mod error;
pub mod hyperbolic;
pub mod policy;
pub mod quad;
pub mod specfun;
pub mod sweep;
pub mod trace;
pub mod xform;

pub use counting::{Threshold, Weight};
pub use error::{Error, Result};
pub use hyperbolic::{Cylinder, HeatKernelQuery};
pub use policy::TruncationPolicy;
pub use sweep::{Schedule, SweepResult, SweepRow};
pub use trace::{LengthSpectrum, PinchingSet, SpectralData};
pub use xform::ContourSpec;
