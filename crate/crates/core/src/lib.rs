//! Upper bounds on the number of functionally independent generalized
//! rational first integrals of polynomial differential systems, computed
//! from resonant lattices of spectra, Kowalevskaya exponents of balances,
//! and Floquet multipliers — cross-validated by an exact brute-force
//! first-integral search oracle.

pub mod scalar;
pub mod poly;
pub mod ratfn;
pub mod matrix;
pub mod vfield;
pub mod parse;
pub mod spectral;
pub mod intlat;
pub mod resonance;
pub mod quasihomog;
pub mod floquet;
pub mod oracle;
pub mod report;

pub use poly::{Mono, Poly};
pub use ratfn::RationalFn;
pub use scalar::{GaussRat, ScalarValue};
pub use vfield::VectorField;
