//! Ideal-gate oracle, state and gate fidelities, averages and sweeps.

mod quadrature;
mod sweep;

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuits::{
    build_cswap, build_prep, decode_logical, encode_logical, gate_modes, source_state,
    CircuitLayout, LogicalTensor, PrepParams, Role,
};
use crate::components::{ImperfectionParams, SplitCoeffs};
use crate::error::{Error, Result};
use crate::fock::TwoPhotonState;

pub use quadrature::{
    neumaier_sum, periodic_nodes, periodic_trapezoid, periodic_trapezoid_3d, NeumaierSum,
};
pub use sweep::{sweep, InputSelector, Range, SweepParam, SweepSpec, SweepTable};

/// Smallest quadrature grid accepted by [`average_fidelity_d2`].
pub const MIN_QUAD_N: usize = 8;
pub const DEFAULT_QUAD_N: usize = 48;

/// The logical action of the ideal gate: `(0,i,j) ↦ (0,i,j)`, `(1,i,j) ↦ (1,j,i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalPermutation {
    dim: usize,
}

impl LogicalPermutation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn map(&self, k: usize, i: usize, j: usize) -> (usize, usize, usize) {
        if k == 0 {
            (k, i, j)
        } else {
            (k, j, i)
        }
    }

    pub fn apply(&self, t: &LogicalTensor) -> Result<LogicalTensor> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.dim(),
            });
        }
        let mut out = LogicalTensor::zeros(self.dim);
        for (k, i, j) in t.indices() {
            let (k2, i2, j2) = self.map(k, i, j);
            out.set(k2, i2, j2, t.get(k, i, j));
        }
        Ok(out)
    }
}

pub fn ideal_cswap_tensor(d: usize) -> Result<LogicalPermutation> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    Ok(LogicalPermutation { dim: d })
}

/// `|⟨ideal|real⟩|²` after normalizing both states, clamped to `[0, 1]`.
pub fn state_fidelity(real: &TwoPhotonState, ideal: &TwoPhotonState) -> Result<f64> {
    let overlap = ideal.inner_product(real)?;
    let (nr, ni) = (real.norm(), ideal.norm());
    if nr == 0.0 || ni == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok((overlap.norm_sqr() / (nr * nr * ni * ni)).clamp(0.0, 1.0))
}

/// Qubit-target input angles: `α = cos x, β = sin x, γ = cos y, δ = sin y,
/// μ = cos z, ν = sin z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InputAngles {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl InputAngles {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "angles ({x}, {y}, {z}) must be finite"
            )));
        }
        Ok(InputAngles { x, y, z })
    }

    /// Angles whose product state is the basis state `|kij⟩`.
    ///
    /// Value 0 of a target sits on `δ`/`ν`, so it needs `y` or `z` = π/2.
    pub fn for_basis(k: usize, i: usize, j: usize) -> Self {
        let q = |on: bool| if on { FRAC_PI_2 } else { 0.0 };
        InputAngles {
            x: q(k == 1),
            y: q(i == 0),
            z: q(j == 0),
        }
    }

    pub fn prep(&self) -> Result<PrepParams> {
        PrepParams::from_angles(self.x, self.y, self.z)
    }

    /// Logical amplitudes in `(k, i, j)` order.
    pub fn amplitudes(&self) -> [f64; 8] {
        let c = [self.x.cos(), self.x.sin()];
        let u = [self.y.sin(), self.y.cos()];
        let v = [self.z.sin(), self.z.cos()];
        product_d2(c, u, v)
    }
}

fn product_d2(c: [f64; 2], u: [f64; 2], v: [f64; 2]) -> [f64; 8] {
    let mut out = [0.0; 8];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                out[4 * k + 2 * i + j] = c[k] * u[i] * v[j];
            }
        }
    }
    out
}

/// How the gate input is described.
#[derive(Clone, Debug)]
pub enum GateInput {
    /// Qubit targets only.
    Angles(InputAngles),
    Prep(PrepParams),
    /// Encoded directly; may be entangled across the three systems.
    Tensor(LogicalTensor),
}

impl GateInput {
    pub fn basis(d: usize, k: usize, i: usize, j: usize) -> Result<Self> {
        if k > 1 || i >= d || j >= d {
            return Err(Error::InvalidInput(format!(
                "basis state |{k}{i}{j}> out of range for d = {d}"
            )));
        }
        Ok(GateInput::Tensor(LogicalTensor::basis(d, k, i, j)))
    }

    /// Photonic input state, produced by the ideal preparation stage where
    /// applicable.
    pub fn prepare(&self, d: usize) -> Result<TwoPhotonState> {
        match self {
            GateInput::Angles(a) => {
                if d != 2 {
                    return Err(Error::InvalidInput(format!(
                        "angle inputs describe qubit targets; use d = 2, not {d}"
                    )));
                }
                prepare_from(d, &a.prep()?)
            }
            GateInput::Prep(p) => prepare_from(d, p),
            GateInput::Tensor(t) => encode_logical(d, t),
        }
    }
}

fn prepare_from(d: usize, p: &PrepParams) -> Result<TwoPhotonState> {
    let tm = gate_modes(d)?;
    build_prep(d, p)?.run(&source_state(&tm, p.control())?)
}

/// An imperfect gate paired with the ideal reference gate of the same dimension.
#[derive(Clone, Debug)]
pub struct GateEvaluator {
    dim: usize,
    real: CircuitLayout,
    ideal: CircuitLayout,
}

impl GateEvaluator {
    pub fn new(d: usize, imp: &ImperfectionParams) -> Result<Self> {
        Self::with_gate(build_cswap(d, imp)?)
    }

    /// Uses an arbitrary gate layout, e.g. one loaded from a circuit file.
    pub fn with_gate(real: CircuitLayout) -> Result<Self> {
        if real.role() != Role::Gate {
            return Err(Error::Circuit(
                "layout has no beam-displacer stages; it is not a gate".into(),
            ));
        }
        let d = real.dim();
        let ideal = build_cswap(d, &ImperfectionParams::IDEAL)?;
        if **real.modes() != **ideal.modes() {
            return Err(Error::ModeSetMismatch);
        }
        Ok(GateEvaluator {
            dim: d,
            real,
            ideal,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn real_gate(&self) -> &CircuitLayout {
        &self.real
    }

    pub fn fidelity(&self, input: &GateInput) -> Result<f64> {
        let psi = input.prepare(self.dim)?;
        state_fidelity(&self.real.run(&psi)?, &self.ideal.run(&psi)?)
    }

    pub fn kernel(&self) -> Result<OverlapKernel> {
        let d = self.dim;
        let basis: Vec<TwoPhotonState> = LogicalTensor::zeros(d)
            .indices()
            .map(|(k, i, j)| encode_logical(d, &LogicalTensor::basis(d, k, i, j)))
            .collect::<Result<_>>()?;
        let real: Vec<TwoPhotonState> = basis
            .iter()
            .map(|s| self.real.run(s))
            .collect::<Result<_>>()?;
        let ideal: Vec<TwoPhotonState> = basis
            .iter()
            .map(|s| self.ideal.run(s))
            .collect::<Result<_>>()?;
        let n = basis.len();
        let mut k = vec![Complex64::new(0.0, 0.0); n * n];
        for (a, ia) in ideal.iter().enumerate() {
            for (b, rb) in real.iter().enumerate() {
                k[a * n + b] = ia.inner_product(rb)?;
            }
        }
        Ok(OverlapKernel::from_matrix(d, k))
    }
}

pub fn gate_fidelity_at(d: usize, input: &GateInput, imp: &ImperfectionParams) -> Result<f64> {
    GateEvaluator::new(d, imp)?.fidelity(input)
}

/// `K[a][b] = ⟨G_ideal e_a | G_real e_b⟩` over logical basis states.
///
/// For a leakage-free normalized input `λ`, the gate fidelity is `|λ† K λ|²`.
#[derive(Clone, Debug)]
pub struct OverlapKernel {
    dim: usize,
    n: usize,
    k: Vec<Complex64>,
    // (K + Kᵀ)/2 with off-diagonal entries doubled, upper triangle, for real inputs
    sym: Vec<Complex64>,
}

impl OverlapKernel {
    fn from_matrix(dim: usize, k: Vec<Complex64>) -> Self {
        let n = 2 * dim * dim;
        let mut sym = Vec::with_capacity(n * (n + 1) / 2);
        for a in 0..n {
            sym.push(k[a * n + a]);
            for b in a + 1..n {
                sym.push(k[a * n + b] + k[b * n + a]);
            }
        }
        OverlapKernel { dim, n, k, sym }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.k[a * self.n + b]
    }

    pub fn fidelity(&self, t: &LogicalTensor) -> Result<f64> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.dim(),
            });
        }
        let lam = t.amps();
        let norm = t.norm_sqr();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        let mut q = Complex64::new(0.0, 0.0);
        for (a, la) in lam.iter().enumerate() {
            let row: Complex64 = lam
                .iter()
                .enumerate()
                .map(|(b, lb)| self.get(a, b) * lb)
                .sum();
            q += la.conj() * row;
        }
        Ok((q.norm_sqr() / (norm * norm)).clamp(0.0, 1.0))
    }

    /// Same as [`fidelity`](Self::fidelity) for a real amplitude vector.
    pub fn fidelity_real(&self, lam: &[f64]) -> f64 {
        debug_assert_eq!(lam.len(), self.n);
        let mut q = Complex64::new(0.0, 0.0);
        let mut norm = 0.0;
        let mut idx = 0;
        for a in 0..self.n {
            norm += lam[a] * lam[a];
            let mut row = Complex64::new(0.0, 0.0);
            for &lb in &lam[a..] {
                row += self.sym[idx] * lb;
                idx += 1;
            }
            q += row * lam[a];
        }
        (q.norm_sqr() / (norm * norm)).clamp(0.0, 1.0)
    }

    /// Trapezoid estimate of the qubit-target average over `[0, 2π)³`.
    pub fn average_d2(&self, n: usize) -> Result<f64> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim,
            });
        }
        if n < MIN_QUAD_N {
            return Err(Error::QuadratureTooCoarse {
                min: MIN_QUAD_N,
                got: n,
            });
        }
        let nodes = periodic_nodes(n);
        let cs: Vec<(f64, f64)> = nodes.iter().map(|t| (t.cos(), t.sin())).collect();
        let mut acc = NeumaierSum::new();
        for &(cx, sx) in &cs {
            for &(cy, sy) in &cs {
                for &(cz, sz) in &cs {
                    let lam = product_d2([cx, sx], [sy, cy], [sz, cz]);
                    acc.add(self.fidelity_real(&lam));
                }
            }
        }
        Ok(acc.value() / (n * n * n) as f64)
    }

    /// Monte Carlo mean over random control and chain-splitter angles.
    pub fn average_sampled(&self, samples: usize, seed: u64) -> Result<SampledAverage> {
        if samples < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 samples, got {samples}"
            )));
        }
        let d = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sum = NeumaierSum::new();
        let mut sum_sq = NeumaierSum::new();
        let mut lam = vec![0.0; self.n];
        for _ in 0..samples {
            let x: f64 = rng.gen_range(0.0..TAU);
            let mut chain = || -> Vec<SplitCoeffs> {
                (1..d)
                    .map(|_| SplitCoeffs::from_angle(rng.gen_range(0.0..TAU)))
                    .collect()
            };
            let (first, second) = (chain(), chain());
            let p = PrepParams::new([x.cos().into(), x.sin().into()], first, second)?;
            let (u, v) = (p.first_amplitudes(), p.second_amplitudes());
            let c = [x.cos(), x.sin()];
            for k in 0..2 {
                for i in 0..d {
                    for j in 0..d {
                        lam[(k * d + i) * d + j] = c[k] * u[i].re * v[j].re;
                    }
                }
            }
            let f = self.fidelity_real(&lam);
            sum.add(f);
            sum_sq.add(f * f);
        }
        let m = samples as f64;
        let mean = sum.value() / m;
        let var = ((sum_sq.value() / m - mean * mean) * m / (m - 1.0)).max(0.0);
        Ok(SampledAverage {
            mean,
            std_error: (var / m).sqrt(),
            samples,
            seed,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampledAverage {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Qubit-target average fidelity by the periodic trapezoid rule with `n`
/// nodes per axis.
pub fn average_fidelity_d2(imp: &ImperfectionParams, n: usize) -> Result<f64> {
    if n < MIN_QUAD_N {
        return Err(Error::QuadratureTooCoarse {
            min: MIN_QUAD_N,
            got: n,
        });
    }
    GateEvaluator::new(2, imp)?.kernel()?.average_d2(n)
}

/// Sampled average over product inputs prepared with uniformly random
/// splitter angles. Any `d ≥ 2`.
pub fn average_fidelity_sampled(
    d: usize,
    imp: &ImperfectionParams,
    samples: usize,
    seed: u64,
) -> Result<SampledAverage> {
    GateEvaluator::new(d, imp)?
        .kernel()?
        .average_sampled(samples, seed)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisFidelity {
    pub label: String,
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub angles: InputAngles,
    pub fidelity: f64,
}

/// Fidelities of the eight qubit-target basis inputs, each prepared from its
/// angles.
pub fn table1(imp: &ImperfectionParams) -> Result<Vec<BasisFidelity>> {
    table1_for(&GateEvaluator::new(2, imp)?)
}

pub fn table1_for(eval: &GateEvaluator) -> Result<Vec<BasisFidelity>> {
    if eval.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: eval.dim(),
        });
    }
    LogicalTensor::zeros(2)
        .indices()
        .map(|(k, i, j)| {
            let angles = InputAngles::for_basis(k, i, j);
            Ok(BasisFidelity {
                label: basis_label(k, i, j),
                k,
                i,
                j,
                angles,
                fidelity: eval.fidelity(&GateInput::Angles(angles))?,
            })
        })
        .collect()
}

pub fn basis_label(k: usize, i: usize, j: usize) -> String {
    format!("|{k}{i}{j}>")
}

/// Outcome of checking a gate against the ideal permutation on every
/// logical basis state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub dim: usize,
    pub cases: usize,
    pub max_amplitude_error: f64,
    pub max_leakage: f64,
    /// First basis input whose output misses a tolerance.
    pub first_failure: Option<(usize, usize, usize)>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} basis states, max amplitude error {:.2e}, max leakage {:.2e}",
            self.cases, self.max_amplitude_error, self.max_leakage
        )?;
        if let Some((k, i, j)) = self.first_failure {
            write!(f, ", first failure on {}", basis_label(k, i, j))?;
        }
        Ok(())
    }
}

pub const ORACLE_AMP_TOL: f64 = 1e-10;
pub const ORACLE_LEAK_TOL: f64 = 1e-12;

pub fn check_oracle(gate: &CircuitLayout) -> Result<OracleReport> {
    let d = gate.dim();
    let perm = ideal_cswap_tensor(d)?;
    let mut report = OracleReport {
        dim: d,
        cases: 0,
        max_amplitude_error: 0.0,
        max_leakage: 0.0,
        first_failure: None,
    };
    for (k, i, j) in LogicalTensor::zeros(d).indices() {
        let input = LogicalTensor::basis(d, k, i, j);
        let out = decode_logical(&gate.run(&encode_logical(d, &input)?)?, d)?;
        let err = out.max_abs_diff(&perm.apply(&input)?);
        report.cases += 1;
        report.max_amplitude_error = report.max_amplitude_error.max(err);
        report.max_leakage = report.max_leakage.max(out.leakage());
        if report.first_failure.is_none()
            && (err > ORACLE_AMP_TOL || out.leakage() > ORACLE_LEAK_TOL)
        {
            report.first_failure = Some((k, i, j));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{OccupationKey, Polarization};

    fn nominal() -> ImperfectionParams {
        ImperfectionParams::nominal()
    }

    #[test]
    fn permutation() {
        let p = ideal_cswap_tensor(3).unwrap();
        assert_eq!(p.map(1, 0, 1), (1, 1, 0));
        assert_eq!(p.map(0, 2, 1), (0, 2, 1));
        for (k, i, j) in LogicalTensor::zeros(3).indices() {
            let (a, b, c) = p.map(k, i, j);
            assert_eq!(p.map(a, b, c), (k, i, j));
        }
        assert!(ideal_cswap_tensor(1).is_err());
    }

    #[test]
    fn state_fidelity_basics() {
        let tm = gate_modes(2).unwrap();
        let m = &tm.modes;
        let key = |a: &str, b: &str| {
            OccupationKey::new(
                m.slot(a, Polarization::H).unwrap(),
                m.slot(b, Polarization::H).unwrap(),
            )
        };
        let psi = TwoPhotonState::make_state(
            m,
            [
                (key("a", "c"), Complex64::new(0.6, 0.0)),
                (key("b", "d"), Complex64::new(0.0, 0.8)),
            ],
        )
        .unwrap();
        assert!((state_fidelity(&psi, &psi).unwrap() - 1.0).abs() < 1e-15);
        let rotated = psi.scaled(Complex64::from_polar(1.0, 0.7));
        assert!((state_fidelity(&rotated, &psi).unwrap() - 1.0).abs() < 1e-15);
        let other =
            TwoPhotonState::make_state(m, [(key("a", "d"), Complex64::new(1.0, 0.0))]).unwrap();
        assert_eq!(state_fidelity(&other, &psi).unwrap(), 0.0);
        let foreign = encode_logical(3, &LogicalTensor::basis(3, 0, 0, 0)).unwrap();
        assert_eq!(state_fidelity(&foreign, &psi), Err(Error::ModeSetMismatch));
    }

    #[test]
    fn basis_angles_prepare_basis_states() {
        for (k, i, j) in LogicalTensor::zeros(2).indices() {
            let psi = GateInput::Angles(InputAngles::for_basis(k, i, j))
                .prepare(2)
                .unwrap();
            let t = decode_logical(&psi, 2).unwrap();
            assert!((t.get(k, i, j).norm() - 1.0).abs() < 1e-15, "{k}{i}{j}");
        }
    }

    #[test]
    fn ideal_gate_is_perfect() {
        let eval = GateEvaluator::new(2, &ImperfectionParams::IDEAL).unwrap();
        let input = GateInput::Angles(InputAngles::new(0.3, 1.1, -2.0).unwrap());
        assert!((eval.fidelity(&input).unwrap() - 1.0).abs() < 1e-12);
        let avg = average_fidelity_d2(&ImperfectionParams::IDEAL, 8).unwrap();
        assert!((avg - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_matches_direct_route() {
        let eval = GateEvaluator::new(2, &nominal()).unwrap();
        let kern = eval.kernel().unwrap();
        for (x, y, z) in [(0.3, 1.1, -2.0), (FRAC_PI_2, 0.0, 0.0), (2.5, 0.4, 5.9)] {
            let a = InputAngles::new(x, y, z).unwrap();
            let direct = eval.fidelity(&GateInput::Angles(a)).unwrap();
            let lam = a.amplitudes();
            assert!((kern.fidelity_real(&lam) - direct).abs() < 1e-12);
            let t = LogicalTensor::from_flat(2, lam.iter().map(|&v| v.into()).collect()).unwrap();
            assert!((kern.fidelity(&t).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_matches_direct_route_qutrit_complex() {
        let eval = GateEvaluator::new(3, &nominal()).unwrap();
        let kern = eval.kernel().unwrap();
        let u = [
            Complex64::new(0.5, 0.5),
            Complex64::new(0.0, 0.5),
            Complex64::new(0.5, 0.0),
        ];
        let v = [
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -0.8),
        ];
        let c = [Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)];
        let p = PrepParams::from_amplitudes(c, &u, &v).unwrap();
        let direct = eval.fidelity(&GateInput::Prep(p)).unwrap();
        let t = LogicalTensor::product(c, &u, &v).unwrap();
        assert!((kern.fidelity(&t).unwrap() - direct).abs() < 1e-12);
        assert!(direct < 1.0 && direct > 0.9);
    }

    #[test]
    fn quadrature_is_exact_beyond_degree_four() {
        let k = GateEvaluator::new(2, &nominal()).unwrap().kernel().unwrap();
        let a = k.average_d2(8).unwrap();
        let b = k.average_d2(16).unwrap();
        assert!((a - b).abs() < 1e-13);
        assert_eq!(
            k.average_d2(7),
            Err(Error::QuadratureTooCoarse { min: 8, got: 7 })
        );
    }

    #[test]
    fn sampled_average_is_deterministic_and_tracks_quadrature() {
        let imp = nominal();
        let s1 = average_fidelity_sampled(2, &imp, 4000, 7).unwrap();
        let s2 = average_fidelity_sampled(2, &imp, 4000, 7).unwrap();
        assert_eq!(s1, s2);
        let q = average_fidelity_d2(&imp, 16).unwrap();
        assert!(
            (s1.mean - q).abs() < 5.0 * s1.std_error + 1e-9,
            "{s1:?} vs {q}"
        );
        let ideal = average_fidelity_sampled(4, &ImperfectionParams::IDEAL, 50, 1).unwrap();
        assert!((ideal.mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn table1_symmetries() {
        let rows = table1(&nominal()).unwrap();
        assert_eq!(rows.len(), 8);
        let f = |l: &str| rows.iter().find(|r| r.label == l).unwrap().fidelity;
        // same-block pairs (both photons in one interferometer) and split pairs
        assert!((f("|000>") - f("|011>")).abs() < 1e-12);
        assert!((f("|001>") - f("|010>")).abs() < 1e-12);
        // leaked two-photon amplitudes interfere only in the same-block case
        let gap = (f("|000>") - f("|001>")).abs();
        assert!(gap > 1e-7 && gap < 1e-5, "{gap}");
        assert!((f("|100>") - f("|111>")).abs() < 1e-6);
        assert!((f("|101>") - f("|110>")).abs() < 1e-6);
        assert!(f("|100>") < f("|101>"));
    }

    #[test]
    fn oracle_on_ideal_and_imperfect() {
        let ideal = build_cswap(3, &ImperfectionParams::IDEAL).unwrap();
        let r = check_oracle(&ideal).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.cases, 18);
        let bad = check_oracle(&build_cswap(2, &nominal()).unwrap()).unwrap();
        assert!(!bad.passed());
    }
}
