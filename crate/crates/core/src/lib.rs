//! Spectra and "accidental" energy-level degeneracies of deformed oscillators.
//!
//! Three families of deformed oscillators are covered:
//!
//! - Biedenharn–Macfarlane (BM) with a phase deformation `q = e^{iθ}`,
//!   whose levels coincide at rational angles ([`bm`]).
//! - Tamm–Dancoff (TD) with real `q ∈ (0, 1]`, whose levels coincide at the
//!   real roots of a low-degree polynomial ([`td`]).
//! - The two-parameter `q,p` oscillator on the unit square, where each level
//!   pair is degenerate along an implicit curve `F(q, p) = 0` ([`qp`]).
//!
//! All energies are in units where `ħω = 1`.

pub mod bm;
pub mod bracket;
pub mod error;
pub mod numerics;
pub mod qp;
pub mod spectrum;
pub mod td;

pub use bm::AngleFamily;
pub use bracket::{Oscillator, PhaseDeformation, RealDeformation};
pub use error::{Error, Result};
pub use numerics::{Bracket, Polynomial, RootResult};
pub use qp::{CurveSample, CurveSpec};
pub use spectrum::{EnergyLevel, TruncatedRep};
pub use td::{DegeneracyPair, TdRoot};
