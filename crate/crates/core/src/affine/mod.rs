//! Term rewriting over affine and Virasoro modes.

pub mod coeff;
pub mod engine;
pub mod poly;
pub mod sugawara;

pub use coeff::{Coeff, Var};
pub use engine::{Engine, EngineMode, HwContext, StateVector, MAX_LEVEL};
pub use poly::{word_level, GeneratorSymbol, Kind, OperatorPoly, Sector, Word};
pub use sugawara::{coset_commutation_check, coset_virasoro, sub_sugawara_mode, sugawara_mode, CommutationReport};
