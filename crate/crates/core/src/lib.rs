//! Zadoff-Chu sequences: generation, correlation, closed-form DFT and the
//! band-limited continuous-time waveform.

pub mod bench;
pub mod cli;
pub mod continuous;
pub mod dft;
pub mod error;
pub mod io;
pub mod number_theory;
pub mod sequence;
pub mod verify;

pub use error::{Result, ZcError};
pub use number_theory::{LegendreTable, PrimeModulus};
pub use sequence::{generate, ComplexSequence, ZcParams};
