//! 2×2 transfer matrices for the optical elements, ideal and imperfect.
//!
//! Every matrix acts on creation operators column-wise: for an element on
//! the ordered slot pair `(u, v)`, `u† → m[0][0]·u† + m[1][0]·v†` and
//! `v† → m[0][1]·u† + m[1][1]·v†`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on unitarity of matrices accepted as element inputs.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);

    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub fn real(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Mat2::new(m00.into(), m01.into(), m10.into(), m11.into())
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        Mat2::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), b)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn scale(&self, k: f64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Distance of `M†M` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::IDENTITY)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub(crate) fn ensure_unitary(&self) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation <= UNITARITY_TOL {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// The four scalar imperfections of the gate elements.
///
/// * `r` – beam-displacer polarization extinction ratio (≥ 0)
/// * `theta` – beam-displacer mirror-mount deviation, radians
/// * `dphi` – phase-shifter mismatch, radians
/// * `eps` – transmission deviation of the 50:50 beam splitters (> −1)
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ImperfectionParams {
    pub r: f64,
    pub theta: f64,
    pub dphi: f64,
    pub eps: f64,
}

impl ImperfectionParams {
    pub const IDEAL: ImperfectionParams = ImperfectionParams {
        r: 0.0,
        theta: 0.0,
        dphi: 0.0,
        eps: 0.0,
    };

    /// Realistic operating point: r = 1e-3, θ = 5e-3 rad, Δφ = π/36, ε = 0.02.
    pub fn nominal() -> Self {
        ImperfectionParams {
            r: 1e-3,
            theta: 5e-3,
            dphi: PI / 36.0,
            eps: 0.02,
        }
    }

    pub fn is_ideal(&self) -> bool {
        *self == Self::IDEAL
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("r", self.r),
            ("theta", self.theta),
            ("dphi", self.dphi),
            ("eps", self.eps),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidImperfection(format!(
                    "{name} = {v} is not finite"
                )));
            }
        }
        if self.r < 0.0 {
            return Err(Error::InvalidImperfection(format!(
                "r = {} must be >= 0",
                self.r
            )));
        }
        if self.eps <= -1.0 {
            return Err(Error::InvalidImperfection(format!(
                "eps = {} must be > -1",
                self.eps
            )));
        }
        Ok(())
    }
}

/// Stay (`t`) and cross (`s`) amplitudes of a variable beam splitter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitCoeffs {
    t: Complex64,
    s: Complex64,
}

impl SplitCoeffs {
    pub fn new(t: Complex64, s: Complex64) -> Result<Self> {
        let n = t.norm_sqr() + s.norm_sqr();
        if (n - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::UnnormalizedSplit(n));
        }
        Ok(SplitCoeffs { t, s })
    }

    pub fn real(t: f64, s: f64) -> Result<Self> {
        Self::new(t.into(), s.into())
    }

    /// `(cos a, sin a)`, always normalized.
    pub fn from_angle(a: f64) -> Self {
        SplitCoeffs {
            t: a.cos().into(),
            s: a.sin().into(),
        }
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }
}

/// Imperfect 50:50 beam splitter: `[[1+ε, 1], [1, −1−ε]] / √(ε²+2ε+2)`.
pub fn bs_matrix(eps: f64) -> Result<Mat2> {
    if !eps.is_finite() || eps <= -1.0 {
        return Err(Error::InvalidImperfection(format!(
            "eps = {eps} must be finite and > -1"
        )));
    }
    let k = 1.0 / (eps * eps + 2.0 * eps + 2.0).sqrt();
    Ok(Mat2::real(1.0 + eps, 1.0, 1.0, -1.0 - eps).scale(k))
}

/// Imperfect beam displacer in the `{H, V}` basis of one spatial mode.
pub fn bd_matrix(r: f64, theta: f64) -> Result<Mat2> {
    if !r.is_finite() || r < 0.0 || !theta.is_finite() {
        return Err(Error::InvalidImperfection(format!(
            "beam displacer needs finite r >= 0 and theta, got r = {r}, theta = {theta}"
        )));
    }
    let sr = r.sqrt();
    let (sin, cos) = theta.sin_cos();
    let k = 1.0 / (1.0 + r).sqrt();
    Ok(Mat2::real(
        cos - sr * sin,
        sin + sr * cos,
        -sr * cos - sin,
        -sr * sin + cos,
    )
    .scale(k))
}

/// Phase factor `e^{i(π − Δφ)}` of the nominal π phase shifter.
pub fn phase_value(dphi: f64) -> Complex64 {
    Complex64::from_polar(1.0, PI - dphi)
}

/// Unitary completion `[[t, −s*], [s, t*]]` of a variable beam splitter.
pub fn vbs_matrix(c: SplitCoeffs) -> Mat2 {
    Mat2::new(c.t, -c.s.conj(), c.s, c.t.conj())
}

/// One Mach–Zehnder block: beam splitter, phase on the first arm, beam
/// splitter. Ideal parameters give the signed cross `[[0, −1], [−1, 0]]`.
pub fn mz_cross_matrix(eps: f64, dphi: f64) -> Result<Mat2> {
    let bs = bs_matrix(eps)?;
    let phase = Mat2::diag(phase_value(dphi), Complex64::new(1.0, 0.0));
    Ok(bs * phase * bs)
}
