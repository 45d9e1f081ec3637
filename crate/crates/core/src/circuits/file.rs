//! Line-oriented circuit description.
//!
//! ```text
//! # comment
//! mode a
//! vbs <in> <out> <t> <s>      variable splitter on both polarizations
//! bs <u> <v> <eps>            beam splitter between block rails
//! phase <u> <dphi>            phase shifter on a block rail
//! bd left|right <r> <theta>   displacer stage over every declared mode
//! ```
//!
//! All `mode` lines come before the first element. Parameters accept the
//! same syntax as the command line (`pi/36`, `1e-3`, …); VBS amplitudes may
//! also be complex (`0.6+0.8i`). Numbers are written back with the shortest
//! representation that parses to the same `f64`.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use super::{CircuitLayout, ElementKind, ElementOp, ElementParams, Role, Targets};
use crate::angle::parse_real;
use crate::components::SplitCoeffs;
use crate::error::{Error, Result};
use crate::fock::{ModeId, ModeSet};

pub fn parse_circuit(text: &str) -> Result<CircuitLayout> {
    let mut labels: Vec<String> = Vec::new();
    let mut body: Vec<(usize, Vec<&str>)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if words[0] == "mode" {
            if !body.is_empty() {
                return Err(syntax(line, "mode declarations must precede all elements"));
            }
            if words.len() != 2 {
                return Err(syntax(line, "expected `mode <label>`"));
            }
            if labels.iter().any(|l| l == words[1]) {
                return Err(syntax(line, &format!("duplicate mode `{}`", words[1])));
            }
            labels.push(words[1].to_string());
        } else {
            body.push((line, words));
        }
    }
    if labels.is_empty() {
        return Err(Error::Circuit("no modes declared".into()));
    }
    let modes = Arc::new(ModeSet::new(labels).map_err(|e| syntax(0, &e.to_string()))?);
    let has_bd = body.iter().any(|(_, w)| w[0] == "bd");
    let role = if has_bd { Role::Gate } else { Role::Prep };
    let mut layout = CircuitLayout::new(Arc::clone(&modes), modes.len() / 2, role);

    for (line, words) in body {
        let at = |e: Error| syntax(line, &e.to_string());
        let mode = |label: &str| modes.id(label).map_err(at);
        let real = |s: &str| parse_real(s).map_err(at);
        let arity = |n: usize, form: &str| {
            if words.len() == n {
                Ok(())
            } else {
                Err(syntax(line, &format!("expected `{form}`")))
            }
        };
        let op = match words[0] {
            "vbs" => {
                arity(5, "vbs <in> <out> <t> <s>")?;
                let t = complex(words[3]).map_err(at)?;
                let s = complex(words[4]).map_err(at)?;
                ElementOp::vbs(
                    mode(words[1])?,
                    mode(words[2])?,
                    SplitCoeffs::new(t, s).map_err(at)?,
                )
            }
            "bs" => {
                arity(4, "bs <u> <v> <eps>")?;
                ElementOp::block_bs(mode(words[1])?, mode(words[2])?, real(words[3])?)
            }
            "phase" => {
                arity(3, "phase <u> <dphi>")?;
                ElementOp::block_phase(mode(words[1])?, real(words[2])?)
            }
            "bd" => {
                arity(4, "bd left|right <r> <theta>")?;
                let all: Vec<ModeId> = modes.ids().collect();
                let (r, theta) = (real(words[2])?, real(words[3])?);
                match words[1] {
                    "left" => ElementOp::bd_left(all, r, theta),
                    "right" => ElementOp::bd_right(all, r, theta),
                    other => return Err(syntax(line, &format!("unknown bd side `{other}`"))),
                }
            }
            other => return Err(syntax(line, &format!("unknown directive `{other}`"))),
        }
        .map_err(at)?;
        layout.push(op).map_err(at)?;
    }
    Ok(layout)
}

pub fn write_circuit(layout: &CircuitLayout) -> String {
    let modes = layout.modes();
    let mut out = String::new();
    for label in modes.labels() {
        let _ = writeln!(out, "mode {label}");
    }
    for op in layout.ops() {
        let name = |m: ModeId| modes.label(m);
        let line = match (op.kind(), op.targets(), op.params()) {
            (ElementKind::BdLeft, _, ElementParams::Bd { r, theta }) => {
                format!("bd left {r} {theta}")
            }
            (ElementKind::BdRight, _, ElementParams::Bd { r, theta }) => {
                format!("bd right {r} {theta}")
            }
            (ElementKind::Bs, Targets::SlotPair(u, v), ElementParams::Bs { eps }) => {
                format!("bs {} {} {eps}", name(u.mode), name(v.mode))
            }
            (ElementKind::Phase, Targets::Slot(u), ElementParams::Phase { dphi }) => {
                format!("phase {} {dphi}", name(u.mode))
            }
            (ElementKind::Vbs, Targets::ModePair(a, b), ElementParams::Vbs(c)) => format!(
                "vbs {} {} {} {}",
                name(*a),
                name(*b),
                fmt_complex(c.t()),
                fmt_complex(c.s())
            ),
            _ => unreachable!("element constructors keep kind, targets and params consistent"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn complex(s: &str) -> Result<Complex64> {
    if let Ok(v) = parse_real(s) {
        return Ok(Complex64::new(v, 0.0));
    }
    Complex64::from_str(s)
        .ok()
        .filter(|c| c.re.is_finite() && c.im.is_finite())
        .ok_or_else(|| Error::ParseNumber(s.to_string()))
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("{c}")
    }
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::CircuitSyntax {
        line,
        msg: msg.to_string(),
    }
}
