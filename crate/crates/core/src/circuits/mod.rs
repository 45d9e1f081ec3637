//! Circuit layouts: state preparation and the controlled-SWAP gate.
//!
//! Inside the gate each spatial mode carries two rails. The bypass rail is
//! the `H` slot of the mode and the block rail is its `V` slot, so a beam
//! displacer stage is a 2×2 map on the `(H, V)` slot pair of every mode and
//! the Mach–Zehnder blocks act on `V` slots only.

mod build;
mod file;
mod logical;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::components::{bd_matrix, bs_matrix, phase_value, vbs_matrix, Mat2, SplitCoeffs};
use crate::error::{Error, Result};
use crate::fock::{ModeId, ModeSet, Polarization, SlotId, TwoPhotonState};

pub use build::{build_cswap, build_prep, gate_modes, source_state, PrepParams, TargetModes};
pub use file::{parse_circuit, write_circuit};
pub use logical::{decode_logical, encode_logical, LogicalTensor};

/// Polarization slot treated as the block rail inside the gate.
pub const BLOCK_RAIL: Polarization = Polarization::V;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    BdLeft,
    BdRight,
    Bs,
    Vbs,
    Phase,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::BdLeft => "BD-left",
            ElementKind::BdRight => "BD-right",
            ElementKind::Bs => "BS",
            ElementKind::Vbs => "VBS",
            ElementKind::Phase => "PHASE",
        })
    }
}

/// Source parameters an element was built from; kept for serialization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ElementParams {
    Bd { r: f64, theta: f64 },
    Bs { eps: f64 },
    Vbs(SplitCoeffs),
    Phase { dphi: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Targets {
    /// The `(H, V)` slot pair of every listed mode.
    PolarizationPairs(Vec<ModeId>),
    /// Both polarizations of the ordered mode pair `(input, output)`.
    ModePair(ModeId, ModeId),
    /// An ordered pair of slots.
    SlotPair(SlotId, SlotId),
    Slot(SlotId),
}

impl Targets {
    fn modes(&self) -> Vec<ModeId> {
        match self {
            Targets::PolarizationPairs(m) => m.clone(),
            Targets::ModePair(a, b) => vec![*a, *b],
            Targets::SlotPair(a, b) => vec![a.mode, b.mode],
            Targets::Slot(s) => vec![s.mode],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Action {
    Unitary(Mat2),
    Phase(Complex64),
}

/// One optical element placed in a layout.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementOp {
    kind: ElementKind,
    targets: Targets,
    params: ElementParams,
    action: Action,
    layer: usize,
}

impl ElementOp {
    pub fn bd_left(modes: Vec<ModeId>, r: f64, theta: f64) -> Result<Self> {
        let m = bd_matrix(r, theta)?;
        Ok(Self::raw(
            ElementKind::BdLeft,
            Targets::PolarizationPairs(modes),
            ElementParams::Bd { r, theta },
            Action::Unitary(m),
        ))
    }

    /// Recombining displacer: the adjoint of the separating matrix.
    pub fn bd_right(modes: Vec<ModeId>, r: f64, theta: f64) -> Result<Self> {
        let m = bd_matrix(r, theta)?.adjoint();
        Ok(Self::raw(
            ElementKind::BdRight,
            Targets::PolarizationPairs(modes),
            ElementParams::Bd { r, theta },
            Action::Unitary(m),
        ))
    }

    /// Beam splitter between the block rails of two modes.
    pub fn block_bs(u: ModeId, v: ModeId, eps: f64) -> Result<Self> {
        if u == v {
            return Err(Error::CoincidentSlots);
        }
        Ok(Self::raw(
            ElementKind::Bs,
            Targets::SlotPair(SlotId::new(u, BLOCK_RAIL), SlotId::new(v, BLOCK_RAIL)),
            ElementParams::Bs { eps },
            Action::Unitary(bs_matrix(eps)?),
        ))
    }

    /// Phase shifter on the block rail of one mode.
    pub fn block_phase(u: ModeId, dphi: f64) -> Result<Self> {
        if !dphi.is_finite() {
            return Err(Error::InvalidImperfection(format!("dphi = {dphi}")));
        }
        Ok(Self::raw(
            ElementKind::Phase,
            Targets::Slot(SlotId::new(u, BLOCK_RAIL)),
            ElementParams::Phase { dphi },
            Action::Phase(phase_value(dphi)),
        ))
    }

    /// Variable beam splitter acting on both polarizations of `input`.
    pub fn vbs(input: ModeId, output: ModeId, c: SplitCoeffs) -> Result<Self> {
        if input == output {
            return Err(Error::CoincidentSlots);
        }
        Ok(Self::raw(
            ElementKind::Vbs,
            Targets::ModePair(input, output),
            ElementParams::Vbs(c),
            Action::Unitary(vbs_matrix(c)),
        ))
    }

    fn raw(kind: ElementKind, targets: Targets, params: ElementParams, action: Action) -> Self {
        ElementOp {
            kind,
            targets,
            params,
            action,
            layer: 0,
        }
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn targets(&self) -> &Targets {
        &self.targets
    }

    pub fn params(&self) -> ElementParams {
        self.params
    }

    pub fn action(&self) -> Action {
        self.action
    }

    /// Depth layer, starting at 1. Zero until placed in a layout.
    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn apply(&self, state: &TwoPhotonState) -> Result<TwoPhotonState> {
        match (&self.targets, self.action) {
            (Targets::PolarizationPairs(modes), Action::Unitary(m)) => {
                let mut s = state.clone();
                for &mode in modes {
                    s = s.apply_two_mode_unitary(
                        &m,
                        SlotId::new(mode, Polarization::H),
                        SlotId::new(mode, Polarization::V),
                    )?;
                }
                Ok(s)
            }
            (Targets::ModePair(a, b), Action::Unitary(m)) => {
                let mut s = state.clone();
                for pol in Polarization::BOTH {
                    s = s.apply_two_mode_unitary(&m, SlotId::new(*a, pol), SlotId::new(*b, pol))?;
                }
                Ok(s)
            }
            (Targets::SlotPair(a, b), Action::Unitary(m)) => {
                state.apply_two_mode_unitary(&m, *a, *b)
            }
            (Targets::Slot(slot), Action::Phase(p)) => state.apply_single_slot_phase(p, *slot),
            _ => Err(Error::Circuit(format!(
                "{} has inconsistent targets",
                self.kind
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Prep,
    Gate,
}

/// An ordered sequence of elements over a declared mode set.
///
/// Layers are assigned as elements are pushed: each element lands one layer
/// after the latest element sharing a spatial mode with it.
#[derive(Clone, Debug)]
pub struct CircuitLayout {
    modes: Arc<ModeSet>,
    ops: Vec<ElementOp>,
    dim: usize,
    role: Role,
    frontier: HashMap<ModeId, usize>,
}

impl CircuitLayout {
    pub fn new(modes: Arc<ModeSet>, dim: usize, role: Role) -> Self {
        CircuitLayout {
            modes,
            ops: Vec::new(),
            dim,
            role,
            frontier: HashMap::new(),
        }
    }

    pub fn push(&mut self, mut op: ElementOp) -> Result<()> {
        let touched = op.targets.modes();
        if let Some(bad) = touched.iter().find(|m| !self.modes.contains(**m)) {
            return Err(Error::UnknownMode(format!("#{}", bad.index())));
        }
        let layer = 1 + touched
            .iter()
            .map(|m| self.frontier.get(m).copied().unwrap_or(0))
            .max()
            .unwrap_or(0);
        for m in touched {
            self.frontier.insert(m, layer);
        }
        op.layer = layer;
        self.ops.push(op);
        Ok(())
    }

    pub fn modes(&self) -> &Arc<ModeSet> {
        &self.modes
    }

    pub fn ops(&self) -> &[ElementOp] {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Each beam-displacer stage counts as one element.
    pub fn element_count(&self) -> usize {
        self.ops.len()
    }

    pub fn count_of(&self, kind: ElementKind) -> usize {
        self.ops.iter().filter(|op| op.kind == kind).count()
    }

    pub fn depth(&self) -> usize {
        self.ops.iter().map(|op| op.layer).max().unwrap_or(0)
    }

    /// Applies every element in order.
    pub fn run(&self, input: &TwoPhotonState) -> Result<TwoPhotonState> {
        if **input.modes() != *self.modes {
            return Err(Error::ModeSetMismatch);
        }
        let mut state = input.clone();
        for op in &self.ops {
            state = op.apply(&state)?;
        }
        debug_assert!((state.norm() - input.norm()).abs() < 1e-9);
        Ok(state)
    }
}

/// Free-function form of [`CircuitLayout::run`].
pub fn run(layout: &CircuitLayout, input: &TwoPhotonState) -> Result<TwoPhotonState> {
    layout.run(input)
}
