//! Driven, dissipative qubit-pair dynamics.
//!
//! A two-qubit system with ZZ and XX couplings is driven by a sech pulse and
//! evolved under a Lindblad master equation with amplitude damping, local
//! pure dephasing and pulse-gated collective dephasing. Recorded states are
//! reduced to negativity, geometric discord and the memory-assisted entropic
//! uncertainty.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the `pulsecorr` crate.
#![no_std]

extern crate alloc;

pub mod hamiltonian;
pub mod lindblad;
pub mod measures;
pub mod oracle;
pub mod qmath;
pub mod scenarios;

pub use hamiltonian::{PulseParams, SystemParams};
pub use lindblad::{evolve, DecoherenceRates, SimulationConfig, Trajectory};
pub use measures::CorrelationSample;
pub use qmath::{ComplexMatrix, C64};
pub use scenarios::{builtin_scenarios, run_scenario, FigureScenario, InitialStateKind};
