use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::{GateEvaluator, GateInput, InputAngles};
use crate::angle::parse_real;
use crate::circuits::PrepParams;
use crate::components::ImperfectionParams;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    R,
    Theta,
    Dphi,
    Eps,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::R => "r",
            SweepParam::Theta => "theta",
            SweepParam::Dphi => "dphi",
            SweepParam::Eps => "eps",
        }
    }

    pub fn set(self, imp: &mut ImperfectionParams, value: f64) {
        match self {
            SweepParam::R => imp.r = value,
            SweepParam::Theta => imp.theta = value,
            SweepParam::Dphi => imp.dphi = value,
            SweepParam::Eps => imp.eps = value,
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(SweepParam::R),
            "theta" => Ok(SweepParam::Theta),
            "dphi" => Ok(SweepParam::Dphi),
            "eps" => Ok(SweepParam::Eps),
            _ => Err(Error::InvalidSweep(format!(
                "unknown parameter `{s}` (expected r, theta, dphi or eps)"
            ))),
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `count` equispaced samples from `lo` to `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Range {
    lo: f64,
    hi: f64,
    count: usize,
}

impl Range {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidSweep(format!(
                "range bounds {lo}, {hi} must be finite"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidSweep(format!(
                "range lower bound {lo} exceeds upper bound {hi}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidSweep(format!(
                "range needs at least 2 samples, got {count}"
            )));
        }
        Ok(Range { lo, hi, count })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn values(&self) -> Vec<f64> {
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == last {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

/// `lo:hi:count`, bounds in the usual real-number syntax.
impl FromStr for Range {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(Error::InvalidSweep(format!(
                "range `{s}` is not of the form lo:hi:count"
            )));
        };
        let count = count.trim().parse().map_err(|_| {
            Error::InvalidSweep(format!("sample count `{count}` is not a positive integer"))
        })?;
        Range::new(parse_real(lo)?, parse_real(hi)?, count)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum InputSelector {
    Basis { k: usize, i: usize, j: usize },
    Angles(InputAngles),
    Average,
}

impl InputSelector {
    pub fn describe(&self) -> String {
        match self {
            InputSelector::Basis { k, i, j } => super::basis_label(*k, *i, *j),
            InputSelector::Angles(a) => format!("angles x={} y={} z={}", a.x, a.y, a.z),
            InputSelector::Average => "average".to_string(),
        }
    }
}

/// `kij` digits (e.g. `101`), `angles:x,y,z`, or `average`.
impl FromStr for InputSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "average" {
            return Ok(InputSelector::Average);
        }
        if let Some(rest) = s.strip_prefix("angles:") {
            let v: Vec<f64> = rest.split(',').map(parse_real).collect::<Result<_>>()?;
            let [x, y, z] = v[..] else {
                return Err(Error::InvalidInput(format!(
                    "`{s}` needs exactly three angles"
                )));
            };
            return Ok(InputSelector::Angles(InputAngles::new(x, y, z)?));
        }
        let digits: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| {
                Error::InvalidInput(format!("`{s}` is not kij digits, angles:x,y,z, or average"))
            })?;
        match digits[..] {
            [k, i, j] if k <= 1 => Ok(InputSelector::Basis { k, i, j }),
            [_, _, _] => Err(Error::InvalidInput(format!(
                "control value in `{s}` must be 0 or 1"
            ))),
            _ => Err(Error::InvalidInput(format!(
                "`{s}` needs three digits k, i, j"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSpec {
    /// One axis for a curve, two for a grid.
    pub axes: Vec<(SweepParam, Range)>,
    pub fixed: ImperfectionParams,
    pub input: InputSelector,
    pub quad_n: usize,
    /// Sample count and seed for averages with `d ≥ 3`.
    pub samples: usize,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        match self.axes.as_slice() {
            [_] => {}
            [(a, _), (b, _)] if a != b => {}
            [_, _] => {
                return Err(Error::InvalidSweep(
                    "grid axes must sweep different parameters".into(),
                ))
            }
            _ => {
                return Err(Error::InvalidSweep(format!(
                    "expected 1 or 2 axes, got {}",
                    self.axes.len()
                )))
            }
        }
        self.fixed.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

impl InputSelector {
    /// Fidelity of `eval` for this selector. Basis states go through the ideal
    /// preparation stage; averages use the trapezoid rule for `d = 2` and
    /// seeded sampling above.
    pub fn evaluate(
        &self,
        eval: &GateEvaluator,
        quad_n: usize,
        samples: usize,
        seed: u64,
    ) -> Result<f64> {
        let d = eval.dim();
        match *self {
            InputSelector::Basis { k, i, j } => {
                if i >= d || j >= d {
                    return Err(Error::InvalidInput(format!(
                        "basis state |{k}{i}{j}> out of range for d = {d}"
                    )));
                }
                let one_hot = |n: usize, at: usize| -> Vec<Complex64> {
                    (0..n)
                        .map(|m| if m == at { 1.0 } else { 0.0 }.into())
                        .collect()
                };
                let c = one_hot(2, k);
                let p = PrepParams::from_amplitudes([c[0], c[1]], &one_hot(d, i), &one_hot(d, j))?;
                eval.fidelity(&GateInput::Prep(p))
            }
            InputSelector::Angles(a) => eval.fidelity(&GateInput::Angles(a)),
            InputSelector::Average if d == 2 => eval.kernel()?.average_d2(quad_n),
            InputSelector::Average => Ok(eval.kernel()?.average_sampled(samples, seed)?.mean),
        }
    }
}

fn point_fidelity(d: usize, imp: &ImperfectionParams, spec: &SweepSpec) -> Result<f64> {
    spec.input.evaluate(
        &GateEvaluator::new(d, imp)?,
        spec.quad_n,
        spec.samples,
        spec.seed,
    )
}

/// Evaluates the selected fidelity along one axis, or on a grid with the
/// first axis outermost.
pub fn sweep(spec: &SweepSpec, d: usize) -> Result<SweepTable> {
    spec.validate()?;
    let mut columns: Vec<String> = spec
        .axes
        .iter()
        .map(|(p, _)| p.name().to_string())
        .collect();
    columns.push("fidelity".into());
    let mut rows = Vec::new();
    let (p0, r0) = spec.axes[0];
    for v0 in r0.values() {
        let mut imp = spec.fixed;
        p0.set(&mut imp, v0);
        match spec.axes.get(1) {
            None => rows.push(vec![v0, point_fidelity(d, &imp, spec)?]),
            Some(&(p1, r1)) => {
                for v1 in r1.values() {
                    p1.set(&mut imp, v1);
                    rows.push(vec![v0, v1, point_fidelity(d, &imp, spec)?]);
                }
            }
        }
    }
    Ok(SweepTable { columns, rows })
}
