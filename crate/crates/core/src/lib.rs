//! Two-photon linear-optical simulation of a controlled-SWAP gate acting on
//! one control qubit and two `d`-level targets.
//!
//! The control lives in the joint polarization of a photon pair (`HH`/`VV`);
//! each photon's spatial mode carries one target. The gate is a beam
//! displacer stage, `d` parallel Mach–Zehnder blocks, and a second displacer
//! stage: `2 + 3d` elements at depth 5.

pub mod angle;
pub mod circuits;
pub mod cli;
pub mod components;
pub mod error;
pub mod fidelity;
pub mod fock;
pub mod report;

pub use circuits::{
    build_cswap, build_prep, decode_logical, encode_logical, gate_modes, parse_circuit,
    source_state, write_circuit, CircuitLayout, ElementKind, ElementOp, LogicalTensor, PrepParams,
    Role, TargetModes,
};
pub use components::{
    bd_matrix, bs_matrix, mz_cross_matrix, phase_value, vbs_matrix, ImperfectionParams, Mat2,
    SplitCoeffs,
};
pub use error::{Error, Result};
pub use fidelity::{
    average_fidelity_d2, average_fidelity_sampled, check_oracle, gate_fidelity_at,
    ideal_cswap_tensor, state_fidelity, table1, GateEvaluator, GateInput, InputAngles,
};
pub use fock::{ModeId, ModeSet, OccupationKey, Polarization, SlotId, TwoPhotonState};
