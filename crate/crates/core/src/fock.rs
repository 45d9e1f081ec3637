//! Exact two-photon states over (spatial mode × polarization) slots.
//!
//! States are stored in the occupation-number basis: a key names the two
//! occupied slots, and a bunched key (both photons in one slot) is the
//! unit-norm state `(s†)²/√2 |vac⟩`. Amplitudes are kept in a `BTreeMap`
//! so iteration, and therefore every sum, has a fixed order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::components::Mat2;
use crate::error::{Error, Result};

/// Amplitudes smaller than this are dropped after every element.
pub const PRUNE_BELOW: f64 = 1e-15;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::H, Polarization::V];
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::H => "H",
            Polarization::V => "V",
        })
    }
}

/// Index of a spatial mode inside a [`ModeSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeId(pub(crate) u16);

impl ModeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Declared spatial-mode labels, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeSet {
    labels: Vec<String>,
}

impl ModeSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for label in labels {
            let label = label.into();
            if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(Error::InvalidModeLabel(label));
            }
            if out.contains(&label) {
                return Err(Error::DuplicateMode(label));
            }
            out.push(label);
        }
        if out.len() > u16::MAX as usize {
            return Err(Error::Circuit("too many modes".into()));
        }
        Ok(ModeSet { labels: out })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id(&self, label: &str) -> Result<ModeId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| ModeId(i as u16))
            .ok_or_else(|| Error::UnknownMode(label.to_string()))
    }

    pub fn label(&self, id: ModeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn slot(&self, label: &str, pol: Polarization) -> Result<SlotId> {
        Ok(SlotId::new(self.id(label)?, pol))
    }

    pub fn contains(&self, id: ModeId) -> bool {
        id.index() < self.labels.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = ModeId> + '_ {
        (0..self.labels.len()).map(|i| ModeId(i as u16))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotId {
    pub mode: ModeId,
    pub pol: Polarization,
}

impl SlotId {
    pub fn new(mode: ModeId, pol: Polarization) -> Self {
        SlotId { mode, pol }
    }
}

/// An unordered pair of occupied slots, stored in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupationKey {
    lo: SlotId,
    hi: SlotId,
}

impl OccupationKey {
    pub fn new(a: SlotId, b: SlotId) -> Self {
        if a <= b {
            OccupationKey { lo: a, hi: b }
        } else {
            OccupationKey { lo: b, hi: a }
        }
    }

    pub fn slots(&self) -> (SlotId, SlotId) {
        (self.lo, self.hi)
    }

    pub fn is_bunched(&self) -> bool {
        self.lo == self.hi
    }

    fn touches(&self, slot: SlotId) -> usize {
        (self.lo == slot) as usize + (self.hi == slot) as usize
    }
}

/// A two-photon state. Immutable: every operation returns a new value.
#[derive(Clone, Debug)]
pub struct TwoPhotonState {
    modes: Arc<ModeSet>,
    amps: BTreeMap<OccupationKey, Complex64>,
}

impl TwoPhotonState {
    /// Builds a normalized state; duplicate keys are summed first.
    pub fn make_state<I>(modes: &Arc<ModeSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OccupationKey, Complex64)>,
    {
        Self::from_terms_unnormalized(modes, terms)?.normalize()
    }

    /// Like [`make_state`](Self::make_state) but keeps the raw amplitudes.
    pub fn from_terms_unnormalized<I>(modes: &Arc<ModeSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OccupationKey, Complex64)>,
    {
        let mut amps = BTreeMap::new();
        for (key, amp) in terms {
            for slot in [key.lo, key.hi] {
                if !modes.contains(slot.mode) {
                    return Err(Error::UnknownMode(format!("#{}", slot.mode.index())));
                }
            }
            *amps.entry(key).or_insert(ZERO) += amp;
        }
        let mut state = TwoPhotonState {
            modes: Arc::clone(modes),
            amps,
        };
        state.prune();
        Ok(state)
    }

    /// Convenience constructor from `(label, pol, label, pol, amplitude)` terms.
    pub fn from_labels(
        modes: &Arc<ModeSet>,
        terms: &[(&str, Polarization, &str, Polarization, Complex64)],
    ) -> Result<Self> {
        let keyed = terms
            .iter()
            .map(|&(m1, p1, m2, p2, amp)| {
                Ok((
                    OccupationKey::new(modes.slot(m1, p1)?, modes.slot(m2, p2)?),
                    amp,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::make_state(modes, keyed)
    }

    pub fn modes(&self) -> &Arc<ModeSet> {
        &self.modes
    }

    pub fn amplitude(&self, key: &OccupationKey) -> Complex64 {
        self.amps.get(key).copied().unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OccupationKey, &Complex64)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        let mut out = TwoPhotonState {
            modes: Arc::clone(&self.modes),
            amps: self.amps.iter().map(|(k2, a)| (*k2, a * k)).collect(),
        };
        out.prune();
        out
    }

    /// Unnormalized sum `self + other`.
    pub fn plus(&self, other: &TwoPhotonState) -> Result<Self> {
        self.check_modes(other)?;
        let mut amps = self.amps.clone();
        for (key, amp) in &other.amps {
            *amps.entry(*key).or_insert(ZERO) += amp;
        }
        let mut out = TwoPhotonState {
            modes: Arc::clone(&self.modes),
            amps,
        };
        out.prune();
        Ok(out)
    }

    /// `⟨self|other⟩` in the orthonormal occupation basis.
    pub fn inner_product(&self, other: &TwoPhotonState) -> Result<Complex64> {
        self.check_modes(other)?;
        let (small, large, conj_small) = if self.amps.len() <= other.amps.len() {
            (&self.amps, &other.amps, true)
        } else {
            (&other.amps, &self.amps, false)
        };
        let mut acc = ZERO;
        for (key, a) in small {
            if let Some(b) = large.get(key) {
                acc += if conj_small {
                    a.conj() * b
                } else {
                    b.conj() * a
                };
            }
        }
        Ok(acc)
    }

    /// Applies a two-slot linear optical element to both photons.
    pub fn apply_two_mode_unitary(&self, m: &Mat2, u: SlotId, v: SlotId) -> Result<Self> {
        m.ensure_unitary()?;
        if u == v {
            return Err(Error::CoincidentSlots);
        }
        self.check_slot(u)?;
        self.check_slot(v)?;
        Ok(self.transform(|slot| {
            if slot == u {
                Image::Two([(u, m.get(0, 0)), (v, m.get(1, 0))])
            } else if slot == v {
                Image::Two([(u, m.get(0, 1)), (v, m.get(1, 1))])
            } else {
                Image::Same
            }
        }))
    }

    /// Multiplies every photon found in `slot` by `phase`.
    pub fn apply_single_slot_phase(&self, phase: Complex64, slot: SlotId) -> Result<Self> {
        let modulus = phase.norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular(modulus));
        }
        self.check_slot(slot)?;
        let mut out = self.clone();
        for (key, amp) in out.amps.iter_mut() {
            match key.touches(slot) {
                0 => {}
                1 => *amp *= phase,
                _ => *amp *= phase * phase,
            }
        }
        out.prune();
        Ok(out)
    }

    fn transform(&self, image: impl Fn(SlotId) -> Image) -> Self {
        let sqrt2 = std::f64::consts::SQRT_2;
        let mut amps: BTreeMap<OccupationKey, Complex64> = BTreeMap::new();
        for (key, &amp) in &self.amps {
            let (a, b) = key.slots();
            let (ia, ib) = (image(a), image(b));
            if matches!((&ia, &ib), (Image::Same, Image::Same)) {
                *amps.entry(*key).or_insert(ZERO) += amp;
                continue;
            }
            // polynomial coefficient of a†b†|vac⟩ for this basis term
            let coef = if key.is_bunched() { amp / sqrt2 } else { amp };
            for (sa, xa) in ia.terms(a) {
                for (sb, xb) in ib.terms(b) {
                    let c = coef * xa * xb;
                    let (k, c) = if sa == sb {
                        (OccupationKey::new(sa, sa), c * sqrt2)
                    } else {
                        (OccupationKey::new(sa, sb), c)
                    };
                    *amps.entry(k).or_insert(ZERO) += c;
                }
            }
        }
        let mut out = TwoPhotonState {
            modes: Arc::clone(&self.modes),
            amps,
        };
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.amps.retain(|_, a| a.norm() >= PRUNE_BELOW);
    }

    fn check_modes(&self, other: &TwoPhotonState) -> Result<()> {
        if Arc::ptr_eq(&self.modes, &other.modes) || *self.modes == *other.modes {
            Ok(())
        } else {
            Err(Error::ModeSetMismatch)
        }
    }

    fn check_slot(&self, slot: SlotId) -> Result<()> {
        if self.modes.contains(slot.mode) {
            Ok(())
        } else {
            Err(Error::UnknownMode(format!("#{}", slot.mode.index())))
        }
    }
}

enum Image {
    Same,
    Two([(SlotId, Complex64); 2]),
}

impl Image {
    fn terms(&self, slot: SlotId) -> Vec<(SlotId, Complex64)> {
        match self {
            Image::Same => vec![(slot, Complex64::new(1.0, 0.0))],
            Image::Two(t) => t.iter().copied().filter(|(_, c)| *c != ZERO).collect(),
        }
    }
}

impl fmt::Display for TwoPhotonState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (key, amp) in &self.amps {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let (a, b) = key.slots();
            write!(
                f,
                "({:.6})|{}{},{}{}>",
                amp,
                self.modes.label(a.mode),
                a.pol,
                self.modes.label(b.mode),
                b.pol
            )?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
