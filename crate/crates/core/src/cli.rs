//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::angle::parse_real_arg;
use crate::circuits::{
    build_cswap, parse_circuit, write_circuit, CircuitLayout, ElementKind, Role,
};
use crate::components::ImperfectionParams;
use crate::error::{Error, Result};
use crate::fidelity::{
    check_oracle, sweep, table1_for, GateEvaluator, InputSelector, Range, SweepParam, SweepSpec,
    DEFAULT_QUAD_N,
};
use crate::report::{format_sig, Cell, Table, SIG_DIGITS};

pub const MAX_DIM: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "cswap",
    version,
    about = "Linear-optical controlled-SWAP gate simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check gates against the ideal permutation, element count and depth.
    Verify(VerifyArgs),
    /// Per-input fidelities, the basis-state table, or the input average.
    Fidelity(FidelityArgs),
    /// Fidelity along one imperfection parameter, or over a grid of two.
    Sweep(SweepArgs),
    /// Load, summarize and print a circuit file, or emit a built gate.
    Circuit(CircuitArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ImperfectionArgs {
    /// Beam-displacer extinction ratio.
    #[arg(long, value_parser = parse_real_arg, default_value = "1e-3")]
    pub r: f64,
    /// Beam-displacer mount deviation, radians.
    #[arg(long, value_parser = parse_real_arg, default_value = "5e-3")]
    pub theta: f64,
    /// Phase-shifter mismatch, radians.
    #[arg(long, value_parser = parse_real_arg, default_value = "pi/36")]
    pub dphi: f64,
    /// Beam-splitter transmission imperfection.
    #[arg(long, value_parser = parse_real_arg, default_value = "0.02")]
    pub eps: f64,
    /// Zero all imperfections.
    #[arg(long, conflicts_with_all = ["r", "theta", "dphi", "eps"])]
    pub ideal: bool,
}

impl ImperfectionArgs {
    pub fn params(&self) -> Result<ImperfectionParams> {
        let p = if self.ideal {
            ImperfectionParams::IDEAL
        } else {
            ImperfectionParams {
                r: self.r,
                theta: self.theta,
                dphi: self.dphi,
                eps: self.eps,
            }
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the result table here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Inclusive dimension range, `N` or `LO..HI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for DimRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a dimension"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if lo < 2 || hi > MAX_DIM || lo > hi {
            return Err(format!(
                "dimension range must lie within 2..{MAX_DIM}, got {s}"
            ));
        }
        Ok(DimRange { lo, hi })
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Dimensions to check, `N` or `LO..HI` (inclusive).
    #[arg(long, default_value = "2..6", conflicts_with = "circuit")]
    pub dim: DimRange,
    /// Check this gate file instead of the built gates.
    #[arg(long, value_name = "FILE")]
    pub circuit: Option<PathBuf>,
}

fn parse_selector(s: &str) -> std::result::Result<InputSelector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_param(s: &str) -> std::result::Result<SweepParam, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<Range, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    /// Target dimension.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=MAX_DIM as u64))]
    pub dim: u64,
    #[command(flatten)]
    pub imp: ImperfectionArgs,
    /// Input state: `kij` basis digits or `angles:x,y,z`.
    #[arg(long, value_parser = parse_selector, conflicts_with_all = ["table1", "average"])]
    pub input: Option<InputSelector>,
    /// Fidelities of the eight qubit-target basis inputs (the default for d = 2).
    #[arg(long, conflicts_with = "average")]
    pub table1: bool,
    /// Average over the input family.
    #[arg(long)]
    pub average: bool,
    /// Trapezoid nodes per axis for the d = 2 average.
    #[arg(long, default_value_t = DEFAULT_QUAD_N)]
    pub quad_n: usize,
    /// Sampled inputs for averages with d >= 3.
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Evaluate this gate file instead of the built gate.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["dim", "r", "theta", "dphi", "eps", "ideal"])]
    pub circuit: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=MAX_DIM as u64))]
    pub dim: u64,
    /// Fixed values for the parameters not being swept.
    #[command(flatten)]
    pub imp: ImperfectionArgs,
    /// Swept parameter (r, theta, dphi, eps); give twice for a grid.
    #[arg(long, value_parser = parse_param, required = true, num_args = 1)]
    pub param: Vec<SweepParam>,
    /// Range `lo:hi:count` for each --param, in the same order.
    #[arg(long, value_parser = parse_range, required = true, num_args = 1)]
    pub range: Vec<Range>,
    /// `kij` basis digits, `angles:x,y,z`, or `average`.
    #[arg(long, value_parser = parse_selector, default_value = "average")]
    pub input: InputSelector,
    #[arg(long, default_value_t = DEFAULT_QUAD_N)]
    pub quad_n: usize,
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// Circuit file to load.
    #[arg(value_name = "FILE", required_unless_present = "emit")]
    pub file: Option<PathBuf>,
    /// Print the circuit in canonical form after loading.
    #[arg(long)]
    pub print: bool,
    /// Emit the built gate instead of loading a file.
    #[arg(long, conflicts_with = "file")]
    pub emit: bool,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=MAX_DIM as u64))]
    pub dim: u64,
    #[command(flatten)]
    pub imp: ImperfectionArgs,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Runs one command, writing the report to `out`. `Ok(false)` means a
/// requested check failed.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Fidelity(a) => cmd_fidelity(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Circuit(a) => cmd_circuit(&a, out),
    }
}

fn load_circuit(path: &Path) -> Result<CircuitLayout> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_circuit(&text)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify_layout(label: &str, gate: &CircuitLayout, out: &mut dyn Write) -> Result<bool> {
    let d = gate.dim();
    let oracle = check_oracle(gate)?;
    let expect = 2 + 3 * d;
    let count_ok = gate.element_count() == expect;
    let depth_ok = gate.depth() == 5;
    writeln!(
        out,
        "{label}: oracle {} ({oracle}); elements {} (expected {expect}) {}; depth {} (expected 5) {}",
        pass(oracle.passed()),
        gate.element_count(),
        pass(count_ok),
        gate.depth(),
        pass(depth_ok),
    )?;
    Ok(oracle.passed() && count_ok && depth_ok)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let mut all = true;
    if let Some(path) = &a.circuit {
        let gate = load_circuit(path)?;
        if gate.role() != Role::Gate {
            return Err(Error::Circuit(format!(
                "{} is not a gate layout",
                path.display()
            )));
        }
        all &= verify_layout(
            &format!("{} (d={})", path.display(), gate.dim()),
            &gate,
            out,
        )?;
    } else {
        for d in a.dim.lo..=a.dim.hi {
            let gate = build_cswap(d, &ImperfectionParams::IDEAL)?;
            all &= verify_layout(&format!("d={d}"), &gate, out)?;
        }
    }
    writeln!(
        out,
        "verify: {}",
        if all { "all checks passed" } else { "FAILED" }
    )?;
    Ok(all)
}

fn cmd_fidelity(a: &FidelityArgs, out: &mut dyn Write) -> Result<bool> {
    let eval = match &a.circuit {
        Some(path) => GateEvaluator::with_gate(load_circuit(path)?)?,
        None => GateEvaluator::new(a.dim as usize, &a.imp.params()?)?,
    };
    let d = eval.dim();
    let fmt = |v: f64| format_sig(v, SIG_DIGITS);
    let mut table;
    if let Some(sel) = a.input {
        let f = sel.evaluate(&eval, a.quad_n, a.samples, a.seed)?;
        writeln!(out, "F({}) = {}", sel.describe(), fmt(f))?;
        table = Table::new(["input", "fidelity"]);
        table.push(vec![sel.describe().into(), f.into()])?;
    } else if a.average {
        let kernel = eval.kernel()?;
        table = Table::new(["method", "points", "fidelity", "std_error"]);
        if d == 2 {
            let f = kernel.average_d2(a.quad_n)?;
            writeln!(
                out,
                "average fidelity (trapezoid, {} nodes per axis) = {}",
                a.quad_n,
                fmt(f)
            )?;
            table.push(vec![
                "trapezoid".into(),
                Cell::Int(a.quad_n as i64),
                f.into(),
                0.0.into(),
            ])?;
        } else {
            let s = kernel.average_sampled(a.samples, a.seed)?;
            writeln!(
                out,
                "average fidelity (sampled, {} inputs, seed {}) = {} +/- {}",
                s.samples,
                s.seed,
                fmt(s.mean),
                format_sig(s.std_error, 3)
            )?;
            table.push(vec![
                "sampled".into(),
                Cell::Int(s.samples as i64),
                s.mean.into(),
                s.std_error.into(),
            ])?;
        }
    } else {
        if d != 2 {
            return Err(Error::InvalidInput(format!(
                "the basis-state table covers d = 2; for d = {d} pass --input or --average"
            )));
        }
        let rows = table1_for(&eval)?;
        let get = |l: &str| {
            rows.iter()
                .find(|r| r.label == l)
                .map(|r| r.fidelity)
                .expect("all labels present")
        };
        let zero: Vec<f64> = rows
            .iter()
            .filter(|r| r.k == 0)
            .map(|r| r.fidelity)
            .collect();
        let spread = zero.iter().cloned().fold(f64::MIN, f64::max)
            - zero.iter().cloned().fold(f64::MAX, f64::min);
        writeln!(out, "{:<10} {:<24} fidelity", "input", "angles (x, y, z)")?;
        writeln!(
            out,
            "{:<10} {:<24} {:.6}",
            "|0ij>", "x=0, y,z in {0, pi/2}", zero[0]
        )?;
        for (label, angles) in [
            ("|100>", "x=y=z=pi/2"),
            ("|111>", "x=pi/2, y=z=0"),
            ("|101>", "x=pi/2, y=pi/2, z=0"),
            ("|110>", "x=pi/2, y=0, z=pi/2"),
        ] {
            writeln!(out, "{label:<10} {angles:<24} {:.6}", get(label))?;
        }
        writeln!(out, "spread over |0ij>: {spread:.2e}")?;
        table = Table::new(["input", "x", "y", "z", "fidelity"]);
        for r in &rows {
            table.push(vec![
                r.label.clone().into(),
                r.angles.x.into(),
                r.angles.y.into(),
                r.angles.z.into(),
                r.fidelity.into(),
            ])?;
        }
    }
    if let Some(path) = &a.output.out {
        emit(out, Some(path), &render(&table, a.output.format))?;
    }
    Ok(true)
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<bool> {
    if a.param.len() != a.range.len() {
        return Err(Error::InvalidSweep(format!(
            "{} --param values but {} --range values",
            a.param.len(),
            a.range.len()
        )));
    }
    let spec = SweepSpec {
        axes: a
            .param
            .iter()
            .copied()
            .zip(a.range.iter().copied())
            .collect(),
        fixed: a.imp.params()?,
        input: a.input,
        quad_n: a.quad_n,
        samples: a.samples,
        seed: a.seed,
    };
    let result = sweep(&spec, a.dim as usize)?;
    let mut table = Table::new(result.columns.iter().cloned());
    for row in &result.rows {
        table.push(row.iter().map(|v| Cell::Num(*v)).collect())?;
    }
    emit(
        out,
        a.output.out.as_deref(),
        &render(&table, a.output.format),
    )?;
    Ok(true)
}

fn cmd_circuit(a: &CircuitArgs, out: &mut dyn Write) -> Result<bool> {
    if a.emit {
        let gate = build_cswap(a.dim as usize, &a.imp.params()?)?;
        emit(out, a.out.as_deref(), &write_circuit(&gate))?;
        return Ok(true);
    }
    let path = a
        .file
        .as_deref()
        .expect("clap requires FILE without --emit");
    let layout = load_circuit(path)?;
    if a.print {
        emit(out, a.out.as_deref(), &write_circuit(&layout))?;
        return Ok(true);
    }
    let role = match layout.role() {
        Role::Gate => "gate",
        Role::Prep => "preparation",
    };
    writeln!(out, "{}: {role} circuit", path.display())?;
    writeln!(out, "modes: {}", layout.modes().labels().join(" "))?;
    writeln!(out, "dimension: {}", layout.dim())?;
    writeln!(out, "elements: {}", layout.element_count())?;
    for kind in [
        ElementKind::BdLeft,
        ElementKind::Bs,
        ElementKind::Phase,
        ElementKind::BdRight,
        ElementKind::Vbs,
    ] {
        let n = layout.count_of(kind);
        if n > 0 {
            writeln!(out, "  {kind}: {n}")?;
        }
    }
    writeln!(out, "depth: {}", layout.depth())?;
    Ok(true)
}
