use std::sync::Arc;

use num_complex::Complex64;

use super::{CircuitLayout, ElementOp, Role};
use crate::components::{ImperfectionParams, SplitCoeffs, UNITARITY_TOL};
use crate::error::{Error, Result};
use crate::fock::{ModeId, ModeSet, OccupationKey, Polarization, SlotId, TwoPhotonState};

/// Spatial modes of a dimension-`d` gate, split by the target they encode.
///
/// `first[i]` carries value `i` of the first target qudit and `second[j]`
/// value `j` of the second. For d = 2 the labels are `a b | c d`, for d = 3
/// `a b e | c d f`, and above that `a0 … a{d−1} | b0 … b{d−1}`.
#[derive(Clone, Debug)]
pub struct TargetModes {
    pub modes: Arc<ModeSet>,
    pub first: Vec<ModeId>,
    pub second: Vec<ModeId>,
}

impl TargetModes {
    pub fn dim(&self) -> usize {
        self.first.len()
    }

    /// Target value encoded by `mode`: `(side, value)` with side 0 or 1.
    pub fn value_of(&self, mode: ModeId) -> Option<(usize, usize)> {
        if let Some(i) = self.first.iter().position(|m| *m == mode) {
            return Some((0, i));
        }
        self.second.iter().position(|m| *m == mode).map(|j| (1, j))
    }
}

pub fn gate_modes(d: usize) -> Result<TargetModes> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let (first, second): (Vec<String>, Vec<String>) = match d {
        2 => (vec!["a".into(), "b".into()], vec!["c".into(), "d".into()]),
        3 => (
            vec!["a".into(), "b".into(), "e".into()],
            vec!["c".into(), "d".into(), "f".into()],
        ),
        _ => (
            (0..d).map(|i| format!("a{i}")).collect(),
            (0..d).map(|j| format!("b{j}")).collect(),
        ),
    };
    let modes = Arc::new(ModeSet::new(first.iter().chain(second.iter()).cloned())?);
    let ids =
        |labels: &[String]| -> Result<Vec<ModeId>> { labels.iter().map(|l| modes.id(l)).collect() };
    Ok(TargetModes {
        first: ids(&first)?,
        second: ids(&second)?,
        modes,
    })
}

/// Parameters of the preparation stage.
///
/// Each target side is a sequential chain of `d − 1` variable beam splitters.
/// Step `m` leaves amplitude `t_m` in the running mode, which becomes the leaf
/// for value `m − 1`, and sends `s_m` on to the next mode. Leaf amplitudes are
/// `u_0 = t_1`, `u_1 = s_1 t_2`, …, `u_{d−1} = s_1 ⋯ s_{d−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrepParams {
    control: [Complex64; 2],
    first_chain: Vec<SplitCoeffs>,
    second_chain: Vec<SplitCoeffs>,
}

impl PrepParams {
    pub fn new(
        control: [Complex64; 2],
        first_chain: Vec<SplitCoeffs>,
        second_chain: Vec<SplitCoeffs>,
    ) -> Result<Self> {
        let n = control[0].norm_sqr() + control[1].norm_sqr();
        if (n - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::UnnormalizedControl(n));
        }
        if first_chain.len() != second_chain.len() {
            return Err(Error::DimensionMismatch {
                expected: first_chain.len() + 1,
                got: second_chain.len() + 1,
            });
        }
        if first_chain.is_empty() {
            return Err(Error::DimensionTooSmall(1));
        }
        Ok(PrepParams {
            control,
            first_chain,
            second_chain,
        })
    }

    /// Chains that realize the given normalized per-target amplitude vectors.
    pub fn from_amplitudes(
        control: [Complex64; 2],
        first: &[Complex64],
        second: &[Complex64],
    ) -> Result<Self> {
        Self::new(control, chain_for(first)?, chain_for(second)?)
    }

    /// Qubit-target input `(αδν, αδμ, αγν, αγμ, βδν, βδμ, βγν, βγμ)` over
    /// `|000⟩ … |111⟩`: the first target is `δ|0⟩ + γ|1⟩`, the second
    /// `ν|0⟩ + μ|1⟩`.
    pub fn qubits(alpha: f64, beta: f64, gamma: f64, delta: f64, mu: f64, nu: f64) -> Result<Self> {
        let c = |x: f64| Complex64::new(x, 0.0);
        Self::from_amplitudes([c(alpha), c(beta)], &[c(delta), c(gamma)], &[c(nu), c(mu)])
    }

    /// `α = cos x, β = sin x, γ = cos y, δ = sin y, μ = cos z, ν = sin z`.
    pub fn from_angles(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::qubits(x.cos(), x.sin(), y.cos(), y.sin(), z.cos(), z.sin())
    }

    pub fn dim(&self) -> usize {
        self.first_chain.len() + 1
    }

    pub fn control(&self) -> [Complex64; 2] {
        self.control
    }

    pub fn first_chain(&self) -> &[SplitCoeffs] {
        &self.first_chain
    }

    pub fn second_chain(&self) -> &[SplitCoeffs] {
        &self.second_chain
    }

    pub fn first_amplitudes(&self) -> Vec<Complex64> {
        leaf_amplitudes(&self.first_chain)
    }

    pub fn second_amplitudes(&self) -> Vec<Complex64> {
        leaf_amplitudes(&self.second_chain)
    }
}

fn leaf_amplitudes(chain: &[SplitCoeffs]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(chain.len() + 1);
    let mut running = Complex64::new(1.0, 0.0);
    for c in chain {
        out.push(running * c.t());
        running *= c.s();
    }
    out.push(running);
    out
}

fn chain_for(amps: &[Complex64]) -> Result<Vec<SplitCoeffs>> {
    if amps.len() < 2 {
        return Err(Error::DimensionTooSmall(amps.len()));
    }
    let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if (total - 1.0).abs() > UNITARITY_TOL {
        return Err(Error::UnnormalizedSplit(total));
    }
    // tail[i] = ‖amps[i..]‖
    let mut tail = vec![0.0_f64; amps.len() + 1];
    for i in (0..amps.len()).rev() {
        tail[i] = (tail[i + 1].powi(2) + amps[i].norm_sqr()).sqrt();
    }
    let last = amps.len() - 2;
    let mut chain = Vec::with_capacity(amps.len() - 1);
    for i in 0..=last {
        if tail[i] < 1e-300 {
            chain.push(SplitCoeffs::real(1.0, 0.0)?);
            continue;
        }
        let t = amps[i] / tail[i];
        let s = if i == last {
            amps[i + 1] / tail[i]
        } else {
            Complex64::new(tail[i + 1] / tail[i], 0.0)
        };
        chain.push(SplitCoeffs::new(t, s)?);
    }
    Ok(chain)
}

/// The entangled source `α |a₀H, b₀H⟩ + β |a₀V, b₀V⟩` in the value-0 modes.
pub fn source_state(modes: &TargetModes, control: [Complex64; 2]) -> Result<TwoPhotonState> {
    let key = |pol| {
        OccupationKey::new(
            SlotId::new(modes.first[0], pol),
            SlotId::new(modes.second[0], pol),
        )
    };
    TwoPhotonState::make_state(
        &modes.modes,
        [
            (key(Polarization::H), control[0]),
            (key(Polarization::V), control[1]),
        ],
    )
}

/// Two mirrored chains of `d − 1` variable beam splitters.
pub fn build_prep(d: usize, p: &PrepParams) -> Result<CircuitLayout> {
    let tm = gate_modes(d)?;
    if p.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: p.dim(),
        });
    }
    let mut layout = CircuitLayout::new(Arc::clone(&tm.modes), d, Role::Prep);
    for (modes, chain) in [(&tm.first, &p.first_chain), (&tm.second, &p.second_chain)] {
        for (m, c) in chain.iter().enumerate() {
            layout.push(ElementOp::vbs(modes[m], modes[m + 1], *c)?)?;
        }
    }
    Ok(layout)
}

/// The controlled-SWAP gate: a separating displacer stage, `d` parallel
/// Mach–Zehnder blocks pairing `first[k]` with `second[k]`, and the
/// recombining displacer stage.
pub fn build_cswap(d: usize, imp: &ImperfectionParams) -> Result<CircuitLayout> {
    imp.validate()?;
    let tm = gate_modes(d)?;
    let all: Vec<ModeId> = tm.modes.ids().collect();
    let mut layout = CircuitLayout::new(Arc::clone(&tm.modes), d, Role::Gate);
    layout.push(ElementOp::bd_left(all.clone(), imp.r, imp.theta)?)?;
    let pairs: Vec<(ModeId, ModeId)> = tm
        .first
        .iter()
        .copied()
        .zip(tm.second.iter().copied())
        .collect();
    for &(u, v) in &pairs {
        layout.push(ElementOp::block_bs(u, v, imp.eps)?)?;
    }
    for &(u, _) in &pairs {
        layout.push(ElementOp::block_phase(u, imp.dphi)?)?;
    }
    for &(u, v) in &pairs {
        layout.push(ElementOp::block_bs(u, v, imp.eps)?)?;
    }
    layout.push(ElementOp::bd_right(all, imp.r, imp.theta)?)?;
    Ok(layout)
}
