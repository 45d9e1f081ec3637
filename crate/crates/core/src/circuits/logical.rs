use std::fmt;

use num_complex::Complex64;

use super::build::gate_modes;
use crate::error::{Error, Result};
use crate::fock::{OccupationKey, Polarization, SlotId, TwoPhotonState};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Logical amplitudes `λ[k][i][j]` plus the weight found outside the
/// logical subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalTensor {
    dim: usize,
    amps: Vec<Complex64>,
    leakage: f64,
}

impl LogicalTensor {
    pub fn zeros(dim: usize) -> Self {
        LogicalTensor {
            dim,
            amps: vec![ZERO; 2 * dim * dim],
            leakage: 0.0,
        }
    }

    pub fn basis(dim: usize, k: usize, i: usize, j: usize) -> Self {
        let mut t = Self::zeros(dim);
        t.set(k, i, j, Complex64::new(1.0, 0.0));
        t
    }

    /// `λ[k][i][j] = control[k] · first[i] · second[j]`.
    pub fn product(
        control: [Complex64; 2],
        first: &[Complex64],
        second: &[Complex64],
    ) -> Result<Self> {
        let dim = first.len();
        if second.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: second.len(),
            });
        }
        let mut t = Self::zeros(dim);
        for (k, ck) in control.iter().enumerate() {
            for (i, ui) in first.iter().enumerate() {
                for (j, vj) in second.iter().enumerate() {
                    t.set(k, i, j, ck * ui * vj);
                }
            }
        }
        Ok(t)
    }

    /// Builds from a flat slice in `(k, i, j)` row-major order.
    pub fn from_flat(dim: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 2 * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: 2 * dim * dim,
                got: amps.len(),
            });
        }
        Ok(LogicalTensor {
            dim,
            amps,
            leakage: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, k: usize, i: usize, j: usize) -> usize {
        assert!(
            k < 2 && i < self.dim && j < self.dim,
            "logical index out of range"
        );
        (k * self.dim + i) * self.dim + j
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> Complex64 {
        self.amps[self.index(k, i, j)]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Complex64) {
        let idx = self.index(k, i, j);
        self.amps[idx] = v;
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest entrywise deviation from `other`, ignoring leakage.
    pub fn max_abs_diff(&self, other: &LogicalTensor) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `(k, i, j)` triples in storage order.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let d = self.dim;
        (0..2).flat_map(move |k| (0..d).flat_map(move |i| (0..d).map(move |j| (k, i, j))))
    }
}

impl fmt::Display for LogicalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, i, j) in self.indices() {
            let a = self.get(k, i, j);
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a:.6})|{k}{i}{j}>")?;
        }
        if first {
            f.write_str("0")?;
        }
        if self.leakage > 0.0 {
            write!(f, " [leakage {:.3e}]", self.leakage)?;
        }
        Ok(())
    }
}

fn control_pol(k: usize) -> Polarization {
    if k == 0 {
        Polarization::H
    } else {
        Polarization::V
    }
}

/// Control `0 ↦ HH`, `1 ↦ VV`; target values select the spatial modes.
pub fn encode_logical(d: usize, t: &LogicalTensor) -> Result<TwoPhotonState> {
    if t.dim != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: t.dim,
        });
    }
    if t.leakage > 0.0 {
        return Err(Error::LeakyTensor(t.leakage));
    }
    let n = t.norm_sqr();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::UnnormalizedTensor(n));
    }
    let tm = gate_modes(d)?;
    let terms = t.indices().filter_map(|(k, i, j)| {
        let a = t.get(k, i, j);
        (a != ZERO).then(|| {
            let pol = control_pol(k);
            (
                OccupationKey::new(
                    SlotId::new(tm.first[i], pol),
                    SlotId::new(tm.second[j], pol),
                ),
                a,
            )
        })
    });
    TwoPhotonState::make_state(&tm.modes, terms)
}

/// Reads logical amplitudes back out; everything else counts as leakage.
pub fn decode_logical(state: &TwoPhotonState, d: usize) -> Result<LogicalTensor> {
    let tm = gate_modes(d)?;
    if **state.modes() != *tm.modes {
        return Err(Error::ModeSetMismatch);
    }
    let mut t = LogicalTensor::zeros(d);
    let mut leakage = 0.0;
    for (key, amp) in state.iter() {
        let (a, b) = key.slots();
        let logical = match (a.pol == b.pol, tm.value_of(a.mode), tm.value_of(b.mode)) {
            (true, Some((0, i)), Some((1, j))) | (true, Some((1, j)), Some((0, i))) => {
                Some((if a.pol == Polarization::H { 0 } else { 1 }, i, j))
            }
            _ => None,
        };
        match logical {
            Some((k, i, j)) => t.set(k, i, j, *amp),
            None => leakage += amp.norm_sqr(),
        }
    }
    t.leakage = leakage;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::bs_matrix;
    use Polarization::{H, V};

    #[test]
    fn qubit_encoding() {
        let t = LogicalTensor::basis(2, 1, 0, 1);
        let s = encode_logical(2, &t).unwrap();
        let m = s.modes();
        let key = OccupationKey::new(m.slot("a", V).unwrap(), m.slot("d", V).unwrap());
        assert_eq!(s.amplitude(&key), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn qutrit_encoding() {
        let s = encode_logical(3, &LogicalTensor::basis(3, 0, 2, 0)).unwrap();
        let m = s.modes();
        let key = OccupationKey::new(m.slot("e", H).unwrap(), m.slot("c", H).unwrap());
        assert_eq!(s.amplitude(&key), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn roundtrip() {
        let d = 3;
        let mut t = LogicalTensor::zeros(d);
        let n = (2 * d * d) as f64;
        for (idx, (k, i, j)) in t.clone().indices().enumerate() {
            t.set(k, i, j, Complex64::from_polar(1.0 / n.sqrt(), idx as f64));
        }
        let back = decode_logical(&encode_logical(d, &t).unwrap(), d).unwrap();
        assert!(back.max_abs_diff(&t) < 1e-15);
        assert!(back.leakage() < 1e-15);
    }

    #[test]
    fn bunched_is_leakage() {
        let s = encode_logical(2, &LogicalTensor::basis(2, 0, 0, 0)).unwrap();
        let m = s.modes().clone();
        let out = s
            .apply_two_mode_unitary(
                &bs_matrix(0.0).unwrap(),
                m.slot("a", H).unwrap(),
                m.slot("c", H).unwrap(),
            )
            .unwrap();
        let t = decode_logical(&out, 2).unwrap();
        assert!((t.leakage() - 1.0).abs() < 1e-15);
        assert!(t.norm_sqr() < 1e-30);
    }

    #[test]
    fn encode_errors() {
        let mut t = LogicalTensor::basis(2, 0, 0, 0);
        t.leakage = 0.1;
        assert!(matches!(encode_logical(2, &t), Err(Error::LeakyTensor(_))));
        assert!(matches!(
            encode_logical(3, &LogicalTensor::basis(2, 0, 0, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            encode_logical(2, &LogicalTensor::zeros(2)),
            Err(Error::UnnormalizedTensor(_))
        ));
    }
}
