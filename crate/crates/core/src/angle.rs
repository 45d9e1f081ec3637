//! Parsing of real-valued parameters, including exact multiples of π.
//!
//! Accepted forms: plain decimals (`0.02`, `1e-3`), fractions (`1/3`),
//! and π expressions such as `pi`, `-pi/2`, `pi/36`, `2pi/3`, `2*pi/3`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub fn parse_real(text: &str) -> Result<f64> {
    let err = || Error::ParseNumber(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let value = if let Some(pos) = body.find("pi") {
        let coef = body[..pos].trim_end_matches('*');
        let coef = if coef.is_empty() {
            1.0
        } else {
            plain(coef).ok_or_else(err)?
        };
        let rest = &body[pos + 2..];
        let denom = if rest.is_empty() {
            1.0
        } else {
            let d = rest.strip_prefix('/').ok_or_else(err)?;
            plain(d).ok_or_else(err)?
        };
        PI * coef / denom
    } else if let Some((num, den)) = body.split_once('/') {
        plain(num).ok_or_else(err)? / plain(den).ok_or_else(err)?
    } else {
        plain(body).ok_or_else(err)?
    };
    if value.is_finite() {
        Ok(sign * value)
    } else {
        Err(err())
    }
}

fn plain(s: &str) -> Option<f64> {
    if s.starts_with(['+', '-']) {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Adapter for clap's `value_parser`.
pub fn parse_real_arg(text: &str) -> Result<f64, String> {
    parse_real(text).map_err(|e| e.to_string())
}
