//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cswap::circuits::{ElementOp, Role};
use cswap::fidelity::{sweep, InputSelector, Range, SweepParam, SweepSpec};
use cswap::{
    average_fidelity_d2, bs_matrix, build_cswap, build_prep, check_oracle, decode_logical,
    gate_modes, mz_cross_matrix, source_state, table1, CircuitLayout, GateEvaluator, GateInput,
    ImperfectionParams, OccupationKey, Polarization, PrepParams, SlotId, SplitCoeffs,
    TwoPhotonState,
};

const TABLE_TOL: f64 = 1e-3;
const EQUALITY_TOL: f64 = 1e-6;
const AVERAGE_TARGET: f64 = 0.994;
const AVERAGE_TOL: f64 = 2e-3;
const REF_0IJ: f64 = 0.999;
const REF_100: f64 = 0.986;
const REF_101: f64 = 0.995;

struct Outcome {
    ok: bool,
    detail: String,
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    let in_time = took < budget;
    out.detail = format!(
        "{} | {:.3}s (budget {}s)",
        out.detail,
        took.as_secs_f64(),
        budget.as_secs_f64()
    );
    out.ok &= in_time;
    out
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn criterion_1() -> Outcome {
    let mut ok = true;
    let mut worst = (0.0f64, 0.0f64);
    let mut notes = Vec::new();
    for d in 2..=6 {
        let r = check_oracle(&build_cswap(d, &ImperfectionParams::IDEAL).unwrap()).unwrap();
        worst.0 = worst.0.max(r.max_amplitude_error);
        worst.1 = worst.1.max(r.max_leakage);
        if !r.passed() {
            ok = false;
            notes.push(format!("d={d}: {r}"));
        }
    }
    Outcome {
        ok,
        detail: format!(
            "d=2..6, max amplitude error {:.2e} (tol 1e-10), max leakage {:.2e} (tol 1e-12){}",
            worst.0,
            worst.1,
            if notes.is_empty() {
                String::new()
            } else {
                format!("; {}", notes.join("; "))
            }
        ),
    }
}

fn criterion_2() -> Outcome {
    let gate = build_cswap(2, &ImperfectionParams::IDEAL).unwrap();
    let tm = gate_modes(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (x, y, z): (f64, f64, f64) = (
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
        );
        let (al, be, ga, de, mu, nu) = (x.cos(), x.sin(), y.cos(), y.sin(), z.cos(), z.sin());
        let p = PrepParams::from_angles(x, y, z).unwrap();
        let psi = build_prep(2, &p)
            .unwrap()
            .run(&source_state(&tm, p.control()).unwrap())
            .unwrap();
        let out = decode_logical(&gate.run(&psi).unwrap(), 2).unwrap();
        let want = [
            al * de * nu,
            al * de * mu,
            al * ga * nu,
            al * ga * mu,
            be * de * nu,
            be * ga * nu,
            be * de * mu,
            be * ga * mu,
        ];
        for (got, w) in out.amps().iter().zip(want) {
            worst = worst.max((got - c(w)).norm());
        }
        worst = worst.max(out.leakage().sqrt());
    }
    Outcome {
        ok: worst <= 1e-12,
        detail: format!("100 random (x,y,z), max amplitude error {worst:.2e} (tol 1e-12)"),
    }
}

fn criterion_3() -> Outcome {
    let rows = table1(&ImperfectionParams::nominal()).unwrap();
    let f = |l: &str| rows.iter().find(|r| r.label == l).unwrap().fidelity;
    let zero: Vec<f64> = ["|000>", "|001>", "|010>", "|011>"]
        .iter()
        .map(|l| f(l))
        .collect();
    let zero_spread = zero.iter().cloned().fold(f64::MIN, f64::max)
        - zero.iter().cloned().fold(f64::MAX, f64::min);
    let mut fails = Vec::new();
    for (l, v) in ["|000>", "|001>", "|010>", "|011>"].iter().zip(&zero) {
        if (v - REF_0IJ).abs() > TABLE_TOL {
            fails.push(format!("{l} {v:.6} vs {REF_0IJ}"));
        }
    }
    for (l, target) in [
        ("|100>", REF_100),
        ("|111>", REF_100),
        ("|101>", REF_101),
        ("|110>", REF_101),
    ] {
        if (f(l) - target).abs() > TABLE_TOL {
            fails.push(format!("{l} {:.6} vs {target}", f(l)));
        }
    }
    if zero_spread > EQUALITY_TOL {
        fails.push(format!("|0ij> spread {zero_spread:.2e} > 1e-6"));
    }
    for (a, b) in [("|100>", "|111>"), ("|101>", "|110>")] {
        if (f(a) - f(b)).abs() > EQUALITY_TOL {
            fails.push(format!("{a} != {b}"));
        }
    }
    Outcome {
        ok: fails.is_empty(),
        detail: format!(
            "F(|0ij>)={:.6} F(|100>)={:.6} F(|111>)={:.6} F(|101>)={:.6} F(|110>)={:.6}{}",
            zero[0],
            f("|100>"),
            f("|111>"),
            f("|101>"),
            f("|110>"),
            if fails.is_empty() {
                String::new()
            } else {
                format!("; off: {}", fails.join(", "))
            }
        ),
    }
}

fn criterion_4() -> Outcome {
    let nominal = ImperfectionParams::nominal();
    let a48 = average_fidelity_d2(&nominal, 48).unwrap();
    let a96 = average_fidelity_d2(&nominal, 96).unwrap();
    let conv = (a48 - a96).abs();
    let value_ok = (a48 - AVERAGE_TARGET).abs() <= AVERAGE_TOL;
    Outcome {
        ok: value_ok && conv < 1e-5,
        detail: format!(
            "avg(48)={a48:.6} (target {AVERAGE_TARGET} +/- {AVERAGE_TOL}) {}, |avg(48)-avg(96)|={conv:.2e} (tol 1e-5)",
            if value_ok { "in range" } else { "out of range" }
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for d in 2..=10 {
        let g = build_cswap(d, &ImperfectionParams::IDEAL).unwrap();
        if g.element_count() != 2 + 3 * d || g.depth() != 5 {
            bad.push(format!(
                "d={d}: {} elements, depth {}",
                g.element_count(),
                g.depth()
            ));
        }
    }
    let (n2, n3) = (
        build_cswap(2, &ImperfectionParams::IDEAL)
            .unwrap()
            .element_count(),
        build_cswap(3, &ImperfectionParams::IDEAL)
            .unwrap()
            .element_count(),
    );
    Outcome {
        ok: bad.is_empty() && n2 == 8 && n3 == 11,
        detail: format!(
            "d=2: {n2} elements, d=3: {n3} elements, depth 5 for d=2..10{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.join("; "))
            }
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for d in 2..=5 {
        let eval = GateEvaluator::new(d, &ImperfectionParams::IDEAL).unwrap();
        for _ in 0..50 {
            let x: f64 = rng.gen_range(0.0..2.0 * PI);
            let mut chain = || {
                (1..d)
                    .map(|_| SplitCoeffs::from_angle(rng.gen_range(0.0..2.0 * PI)))
                    .collect::<Vec<_>>()
            };
            let (first, second) = (chain(), chain());
            let p =
                PrepParams::new([c(x.cos()), Complex64::new(0.0, x.sin())], first, second).unwrap();
            let f = eval.fidelity(&GateInput::Prep(p)).unwrap();
            worst = worst.max((f - 1.0).abs());
        }
    }
    Outcome {
        ok: worst <= 1e-10,
        detail: format!("d=2..5, 50 random inputs each, max |F-1| = {worst:.2e} (tol 1e-10)"),
    }
}

fn random_layout(rng: &mut ChaCha8Rng) -> (CircuitLayout, TwoPhotonState) {
    let tm = gate_modes(3).unwrap();
    let ids: Vec<_> = tm.modes.ids().collect();
    let mut layout = CircuitLayout::new(Arc::clone(&tm.modes), 3, Role::Gate);
    for _ in 0..30 {
        let u = ids[rng.gen_range(0..ids.len())];
        let v = loop {
            let v = ids[rng.gen_range(0..ids.len())];
            if v != u {
                break v;
            }
        };
        let op = match rng.gen_range(0..5) {
            0 => ElementOp::bd_left(
                ids.clone(),
                rng.gen_range(0.0..0.5),
                rng.gen_range(-1.0..1.0),
            ),
            1 => ElementOp::bd_right(
                ids.clone(),
                rng.gen_range(0.0..0.5),
                rng.gen_range(-1.0..1.0),
            ),
            2 => ElementOp::block_bs(u, v, rng.gen_range(-0.5..0.5)),
            3 => ElementOp::block_phase(u, rng.gen_range(-PI..PI)),
            _ => ElementOp::vbs(u, v, SplitCoeffs::from_angle(rng.gen_range(0.0..2.0 * PI))),
        };
        layout.push(op.unwrap()).unwrap();
    }
    let s = |m: usize, p| SlotId::new(ids[m], p);
    let psi = TwoPhotonState::make_state(
        &tm.modes,
        [
            (
                OccupationKey::new(s(0, Polarization::H), s(3, Polarization::H)),
                c(0.6),
            ),
            (
                OccupationKey::new(s(1, Polarization::V), s(1, Polarization::V)),
                Complex64::new(0.0, 0.8),
            ),
        ],
    )
    .unwrap();
    (layout, psi)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut drift = 0.0f64;
    for _ in 0..50 {
        let (layout, mut psi) = random_layout(&mut rng);
        for op in layout.ops() {
            let before = psi.norm();
            psi = op.apply(&psi).unwrap();
            drift = drift.max((psi.norm() - before).abs());
        }
    }
    let tm = gate_modes(2).unwrap();
    let (a, cc) = (
        tm.modes.slot("a", Polarization::H).unwrap(),
        tm.modes.slot("c", Polarization::H).unwrap(),
    );
    let hom = TwoPhotonState::make_state(&tm.modes, [(OccupationKey::new(a, cc), c(1.0))])
        .unwrap()
        .apply_two_mode_unitary(&bs_matrix(0.0).unwrap(), a, cc)
        .unwrap();
    let hom_ok = hom.len() == 2
        && hom
            .iter()
            .all(|(k, amp)| k.is_bunched() && (amp.norm_sqr() - 0.5).abs() < 1e-15);
    let mz = mz_cross_matrix(0.0, 0.0).unwrap();
    let target = [[0.0, -1.0], [-1.0, 0.0]];
    let mz_err = (0..4)
        .map(|k| (mz.get(k / 2, k % 2) - c(target[k / 2][k % 2])).norm())
        .fold(0.0, f64::max);
    Outcome {
        ok: drift <= 1e-12 && hom_ok && mz_err <= 1e-15,
        detail: format!(
            "norm drift {drift:.2e} over 1500 random elements (tol 1e-12), HOM bunched-only {hom_ok}, MZ(0,0) error {mz_err:.1e} (tol 1e-15)"
        ),
    }
}

fn curve(param: SweepParam, hi: f64, input: &str) -> Vec<f64> {
    let spec = SweepSpec {
        axes: vec![(param, Range::new(0.0, hi, 50).unwrap())],
        fixed: ImperfectionParams::nominal(),
        input: input.parse::<InputSelector>().unwrap(),
        quad_n: 48,
        samples: 0,
        seed: 0,
    };
    sweep(&spec, 2).unwrap().column("fidelity").unwrap()
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, param, hi, input, target) in [
        ("r sweep", SweepParam::R, 1e-3, "000", REF_0IJ),
        ("theta sweep", SweepParam::Theta, 5e-3, "000", REF_0IJ),
        ("eps sweep", SweepParam::Eps, 0.02, "100", REF_100),
        ("dphi sweep", SweepParam::Dphi, PI / 36.0, "100", REF_100),
    ] {
        let f = curve(param, hi, input);
        let monotone = f.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        let end = *f.last().unwrap();
        let end_ok = (end - target).abs() <= TABLE_TOL;
        ok &= monotone && end_ok;
        notes.push(format!(
            "{name}: {} end {end:.6} vs {target} {}",
            if monotone { "monotone" } else { "NOT monotone" },
            if end_ok { "ok" } else { "off" }
        ));
    }
    let grid = |a: SweepParam, ahi: f64, b: SweepParam, bhi: f64| {
        let spec = SweepSpec {
            axes: vec![
                (a, Range::new(0.0, ahi, 5).unwrap()),
                (b, Range::new(0.0, bhi, 5).unwrap()),
            ],
            fixed: ImperfectionParams::nominal(),
            input: InputSelector::Average,
            quad_n: 48,
            samples: 0,
            seed: 0,
        };
        let t = sweep(&spec, 2).unwrap();
        (t.rows[0][2], t.rows.last().unwrap()[2])
    };
    // the two grid corners at the operating point must equal criterion 4's value
    let a48 = average_fidelity_d2(&ImperfectionParams::nominal(), 48).unwrap();
    for (name, (origin, corner)) in [
        (
            "r-theta grid",
            grid(SweepParam::R, 1e-3, SweepParam::Theta, 5e-3),
        ),
        (
            "eps-dphi grid",
            grid(SweepParam::Eps, 0.02, SweepParam::Dphi, PI / 36.0),
        ),
    ] {
        let corner_ok =
            (corner - AVERAGE_TARGET).abs() <= AVERAGE_TOL && (corner - a48).abs() < 1e-12;
        ok &= corner_ok && origin >= corner;
        notes.push(format!(
            "{name}: corner {corner:.6} vs {AVERAGE_TARGET} {}",
            if corner_ok { "ok" } else { "off" }
        ));
    }
    Outcome {
        ok,
        detail: notes.join("; "),
    }
}

type Criterion = (usize, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "oracle equivalence", Duration::from_secs(5), criterion_1),
        (
            2,
            "qubit closed-form output",
            Duration::from_secs(60),
            criterion_2,
        ),
        (
            3,
            "basis-state fidelity table",
            Duration::from_secs(1),
            criterion_3,
        ),
        (4, "average fidelity", Duration::from_secs(60), criterion_4),
        (
            5,
            "element count and depth",
            Duration::from_secs(1),
            criterion_5,
        ),
        (6, "ideal limit", Duration::from_secs(60), criterion_6),
        (
            7,
            "physics properties",
            Duration::from_secs(60),
            criterion_7,
        ),
        (8, "parameter sweeps", Duration::from_secs(120), criterion_8),
    ];
    let mut failed = 0;
    for (n, name, budget, f) in criteria {
        let out = timed(budget, f);
        println!(
            "[{}] criterion {n} ({name}): {}",
            if out.ok { "PASS" } else { "FAIL" },
            out.detail
        );
        if !out.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
