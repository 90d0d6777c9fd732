//! Fractional calculus toolkit: fractional derivative operators, symmetric
//! stable laws, anomalous-diffusion solvers and continuous-time random walks,
//! and the fractional eigenfunctions of the Helmholtz, wave and paraxial wave
//! equations.

// `!(x <= y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Published quadrature and Lanczos coefficients are kept as printed.
#![allow(clippy::excessive_precision)]

pub mod diffusion;
pub mod error;
pub mod fracops;
pub mod grid;
pub mod io;
pub mod paraxial;
pub mod quad;
pub mod rng;
pub mod specfun;
pub mod spectral;
pub mod stable;
pub mod wavemodes;

pub use diffusion::{CtrwModel, InitialData, Propagator, Propagator2D, WalkEnsemble};
pub use error::{Error, Result};
pub use fracops::{AsymmetryWeights, FractionalOrder, SampledFunction, TimeOrder};
pub use grid::{Grid1D, Grid2D};
pub use io::{Format, Table};
pub use paraxial::{BeamField, BeamSpec, BeamVariant};
pub use specfun::ComplexScalar;
pub use stable::{SampleSet, StableParams};
pub use wavemodes::{FieldOnGrid, ModeFamily, ModeSpec, Sign, WaveVector};
