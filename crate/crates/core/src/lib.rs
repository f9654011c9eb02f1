//! Dynamics, intermode correlations and tripartite entanglement of a chain of
//! three pumped Kerr oscillators, closed or subject to amplitude or phase
//! damping.
//!
//! Units: `ħ = 1`, and `χ = 1` wherever parameters are given as ratios.
//! Basis states `|n₁n₂n₃⟩` are ordered with mode 1 most significant.

pub mod cli;
pub mod closed;
pub mod correlations;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod integrate;
pub mod io;
pub mod linalg;
pub mod open;

pub use closed::{Branch, PureState, SchrodingerMethod};
pub use entanglement::{EntanglementReport, Subtype, Thresholds};
pub use error::{Error, Result};
pub use hilbert::{DampingKind, DissipatorScale, HilbertSpace, Mode, SystemParams};
pub use open::{DensityMatrix, LindbladGenerator};
