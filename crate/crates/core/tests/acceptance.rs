//! One line per acceptance criterion, then a non-zero exit if any failed.
//!
//! Runs without the libtest harness so the lines are always printed.

use hbounds::coeff::{
    a_bound, b_bound, capital_psi, log_phi_difference, log_psi, log_psi_difference, max_scaled_bound, phi, psi, q_sign, rho, tau,
    theorem4_closed_form, Coefficient, FamilyOrder,
};
use hbounds::numerics::{minimize_by_difference, SolverConfig};
use hbounds::oracle::{cross_check, OracleConfig, CONSISTENCY_SLACK};
use hbounds::radii::{
    distortion_floor, floor3_closed_form, least_index_for_radius, n_threshold, radius_root,
    section_margin, t_bound_chain, tail_closed_form_p4, x_n_and_rl, Family, ReferenceCurve,
};
use std::time::{Duration, Instant};

const SWEEP_CAP: u64 = 10_000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Exact integer match; an off-by-one answer is reported as boundary-sensitive
/// and does not count as a pass.
fn integer_match(got: u64, want: u64) -> (bool, String) {
    match got.abs_diff(want) {
        0 => (true, format!("{got}")),
        1 => (false, format!("{got} (boundary-sensitive, expected {want})")),
        _ => (false, format!("{got} (expected {want})")),
    }
}

fn table1() -> Outcome {
    let table = [
        (2, 0.0635798),
        (3, 0.0952634),
        (4, 0.12535),
        (5, 0.153603),
        (10, 0.269796),
        (50, 0.625779),
        (100, 0.753905),
        (354, 0.900055),
    ];
    let cfg = SolverConfig::default();
    let mut worst = 0.0f64;
    for (n, want) in table {
        match radius_root(n, n, Family::Alpha52, &cfg) {
            Ok(r) => worst = worst.max((r.radius - want).abs()),
            Err(e) => return outcome(false, format!("n={n}: {e}")),
        }
    }
    outcome(worst <= 5e-4, format!("max |diff| {worst:.3e} (tol 5e-4)"))
}

fn corollary1() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (r, want) in [(0.25, 81), (std::f64::consts::E.recip(), 131), (0.5, 220)] {
        match n_threshold(r) {
            Ok(n) => {
                let (pass, s) = integer_match(n, want);
                ok &= pass;
                parts.push(s);
            }
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(ok, format!("N(1/4), N(1/e), N(1/2) = {}", parts.join(", ")))
}

fn corollary2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (r, want) in [(0.25, 10), (0.5, 29), (0.75, 98)] {
        match least_index_for_radius(r, Family::Alpha52) {
            Ok(n) => {
                let (pass, s) = integer_match(n, want);
                ok &= pass;
                parts.push(s);
            }
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(ok, format!("least n for 1/4, 1/2, 3/4 = {}", parts.join(", ")))
}

fn theorem1() -> Outcome {
    let order = FamilyOrder::S0H;
    let n17 = |n: u64| (n as f64).powi(17);
    let sweep = |c, lo| max_scaled_bound(c, order, lo, SWEEP_CAP, n17).map(|m| m.ratio);
    let (a, b, a19, b18) = match (
        sweep(Coefficient::A, 3),
        sweep(Coefficient::B, 3),
        sweep(Coefficient::A, 19),
        sweep(Coefficient::B, 18),
    ) {
        (Ok(a), Ok(b), Ok(c), Ok(d)) => (a, b, c, d),
        _ => return outcome(false, "sweep failed"),
    };
    // the minimum over r can be no larger than any sampled value of psi_n
    let mut grid_ok = true;
    for n in [3u64, 7, 19, 100, 1000] {
        let bound = a_bound(n, order).unwrap().bound.ln();
        let sampled = (1..2000)
            .map(|i| log_psi(n, i as f64 / 2000.0, order).unwrap())
            .fold(f64::INFINITY, f64::min);
        grid_ok &= bound <= sampled + 1e-12 && sampled - bound < 1e-3;
    }
    let ok = a <= 5.24e-6 && b <= 2.32e-7 && a19 <= 4.1006e-6 && b18 <= 2.25e-7 && grid_ok;
    outcome(
        ok,
        format!("max a/n^17 {a:.5e}, b/n^17 {b:.5e}, a/n^17 (n>=19) {a19:.5e}, b/n^17 (n>=18) {b18:.5e}"),
    )
}

fn theorem4() -> Outcome {
    let order = FamilyOrder::CONJECTURED;
    let mut worst = 0.0f64;
    for n in 3..=500u64 {
        let (ca, cb) = theorem4_closed_form(n).unwrap();
        let a = a_bound(n, order).unwrap().bound;
        let b = b_bound(n, order).unwrap().bound;
        worst = worst.max(rel(ca, a)).max(rel(cb, b));
    }
    let n3 = |n: u64| (n as f64).powi(3);
    let ea = max_scaled_bound(Coefficient::A, order, 3, SWEEP_CAP, n3).unwrap().ratio;
    let eb = max_scaled_bound(Coefficient::B, order, 3, SWEEP_CAP, n3).unwrap().ratio;
    outcome(
        worst <= 1e-10 && ea <= 0.75 && eb <= 0.43,
        format!("closed-form rel diff {worst:.2e}; max a/n^3 {ea:.6}, b/n^3 {eb:.6}"),
    )
}

fn capital_psi_grid() -> Outcome {
    let k = 1000;
    let xs: Vec<f64> = (0..k)
        .map(|i| (2f64.ln() + (1e6f64.ln() - 2f64.ln()) * i as f64 / (k - 1) as f64).exp())
        .collect();
    let v: Vec<f64> = xs.iter().map(|&x| capital_psi(x).unwrap()).collect();
    let bounded = v.iter().all(|&p| p <= 1.0);
    let increasing = v.windows(2).all(|w| w[1] > w[0]);
    let tail = capital_psi(1e6).unwrap();
    let q_ok = (0..=1000).all(|i| {
        let q = q_sign(2.0 + 998.0 * i as f64 / 1000.0).unwrap();
        q.factored > 0.0 && q.expanded > 0.0
    });
    outcome(
        bounded && increasing && tail > 0.999 && q_ok,
        format!("Psi<=1 {bounded}, increasing {increasing}, Psi(1e6) {tail:.7}, q1^2-q2^2>0 {q_ok}"),
    )
}

/// `(59/50) Σ_{k>n} k^4 r^(k-1)` summed term by term.
fn tail_p4_direct(n: u64, r: f64) -> f64 {
    let mut s = 0.0;
    let mut k = n + 1;
    loop {
        let t = (k as f64).powi(4) * r.powi(k as i32 - 1);
        s += t;
        if t < 1e-18 * s {
            break;
        }
        k += 1;
    }
    59.0 / 50.0 * s
}

fn floor_from_definition(alpha: f64, r: f64) -> f64 {
    let ln_u = (-r).ln_1p() - r.ln_1p();
    (alpha * ln_u).exp() * -(2.0 * alpha * ln_u).exp_m1() / (4.0 * alpha * r)
}

fn identities() -> Outcome {
    let mut fails = Vec::new();

    let rs: Vec<f64> = (1..1000).map(|i| i as f64 / 1000.0).collect();
    let fact = rs
        .iter()
        .map(|&r| rel(floor_from_definition(3.0, r), floor3_closed_form(r).unwrap()))
        .fold(0.0, f64::max);
    let lib = rs
        .iter()
        .map(|&r| rel(distortion_floor(3.0, r).unwrap(), floor3_closed_form(r).unwrap()))
        .fold(0.0, f64::max);
    if fact.max(lib) > 1e-14 {
        fails.push(format!("factorization {fact:.2e} / {lib:.2e}"));
    }

    let mut tail = 0.0f64;
    for n in [2u64, 5, 10, 50] {
        for r in [0.1, 0.3, 0.6, 0.9] {
            tail = tail.max(rel(tail_closed_form_p4(n, r).unwrap(), tail_p4_direct(n, r)));
        }
    }
    if tail > 1e-12 {
        fails.push(format!("p=4 tail {tail:.2e}"));
    }

    let mut shift = 0.0f64;
    for order in [FamilyOrder::S0H, FamilyOrder::CONJECTURED] {
        for n in 3..=40u64 {
            for i in 1..20 {
                let r = i as f64 / 20.0;
                let lhs = phi(n, r, order).unwrap();
                let rhs = (n - 1) as f64 / n as f64 * psi(n - 1, r, order).unwrap();
                shift = shift.max(rel(lhs, rhs));
            }
        }
    }
    if shift > 1e-12 {
        fails.push(format!("phi/psi shift {shift:.2e}"));
    }

    let floor_gap = (distortion_floor(17.0, 1e-8).unwrap() - 1.0).abs();
    if floor_gap > 1e-6 {
        fails.push(format!("floor limit {floor_gap:.2e}"));
    }

    // golden section driven by exact log differences of psi_n and phi_n
    let cfg = SolverConfig::default();
    let mut arg = 0.0f64;
    let mut stat = 0.0f64;
    for order in [FamilyOrder::S0H, FamilyOrder::CONJECTURED] {
        for n in (3..=60u64).chain([100, 500, 1000, SWEEP_CAP]) {
            let t = tau(n, order).unwrap();
            let d = |x, y| log_psi_difference(n, x, y, order).unwrap();
            let (x, _) = minimize_by_difference(d, 1e-6, 1.0 - 1e-6, &cfg).unwrap();
            arg = arg.max((x - t).abs());
            let p = rho(n, order).unwrap();
            let d = |x, y| log_phi_difference(n, x, y, order).unwrap();
            let (x, _) = minimize_by_difference(d, 1e-6, 1.0 - 1e-6, &cfg).unwrap();
            arg = arg.max((x - p).abs());
            // tau_n -> 1, so the step shrinks with the distance to the edge
            let h = 1e-4 * (1.0 - t).min(t);
            let d = log_psi_difference(n, t + h, t - h, order).unwrap() / (2.0 * h);
            stat = stat.max(d.abs());
        }
    }
    if arg > 1e-8 {
        fails.push(format!("minimizer {arg:.2e}"));
    }
    if stat > 1e-4 {
        fails.push(format!("stationarity {stat:.2e}"));
    }

    let detail = format!(
        "factorization {:.1e}, tail {tail:.1e}, shift {shift:.1e}, floor {floor_gap:.1e}, argmin {arg:.1e}, d/dr {stat:.1e}",
        fact.max(lib)
    );
    if fails.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; failing: {}", fails.join(", ")))
    }
}

fn theorem5() -> Outcome {
    let c = t_bound_chain(20).unwrap();
    let head = c.t1 <= 0.000555 && c.t2 <= 4787.08 * 1.01 && c.t3 <= 0.333 * 1.01 && c.t <= 0.885 * 1.01;
    let mut t_max = 0.0f64;
    let mut dominated = 0usize;
    for n in 20..=SWEEP_CAP {
        t_max = t_max.max(t_bound_chain(n).unwrap().t);
        let (_, rl) = x_n_and_rl(n, ReferenceCurve::Conjectured).unwrap();
        // the margin decreases in r, so a positive margin at r^L puts the root beyond it
        if section_margin(Family::Alpha52, n, n, rl).unwrap() <= 0.0 {
            dominated += 1;
        }
    }
    let cfg = SolverConfig::default();
    let direct = [20u64, 21, 50, 354, 1000, 5000, SWEEP_CAP].iter().all(|&n| {
        let (_, rl) = x_n_and_rl(n, ReferenceCurve::Conjectured).unwrap();
        radius_root(n, n, Family::Alpha52, &cfg).unwrap().radius > rl
    });
    outcome(
        head && t_max < 1.0 && dominated == 0 && direct,
        format!(
            "T1 {:.6}, T2 {:.2}, T3 {:.4}, t {:.4} at n=20; max t {t_max:.4}; r_nn <= r^L at {dominated} n",
            c.t1, c.t2, c.t3, c.t
        ),
    )
}

fn oracle() -> Outcome {
    let cfg = OracleConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2u64, 3, 5, 10] {
        for family in [Family::Alpha52, Family::Alpha17] {
            match cross_check(n, family, &cfg) {
                Ok(v) => {
                    let g = v.guaranteed_radius.unwrap_or(f64::NAN);
                    let pass = v.estimated_radius >= g - CONSISTENCY_SLACK;
                    ok &= pass;
                    if family == Family::Alpha52 {
                        parts.push(format!("n={n}: est {:.3} >= {g:.4}", v.estimated_radius));
                    } else if !pass {
                        parts.push(format!("n={n} alpha17 guarantee {g:.4} exceeds estimate"));
                    }
                }
                Err(e) => return outcome(false, format!("n={n} {family}: {e}")),
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 9] = [
        (1, "tabulated order-5/2 radii", table1, Some(Duration::from_secs(10))),
        (2, "order-17 thresholds N(r)", corollary1, Some(Duration::from_secs(5))),
        (3, "order-5/2 least indices", corollary2, Some(Duration::from_secs(10))),
        (4, "n^17 coefficient envelopes", theorem1, Some(Duration::from_secs(5))),
        (5, "order-5/2 closed forms and n^3 envelopes", theorem4, None),
        (6, "Psi and q-sign grids", capital_psi_grid, None),
        (7, "identity and consistency suite", identities, None),
        (8, "t-chain and r^L dominance", theorem5, None),
        (9, "oracle consistency", oracle, Some(Duration::from_secs(120))),
    ];
    let mut all = true;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| outcome(false, "panicked"));
        let took = start.elapsed();
        let in_time = budget.map_or(true, |b| took <= b);
        let ok = res.ok && in_time;
        all &= ok;
        let timing = match budget {
            Some(b) => format!("{:.2}s of {}s", took.as_secs_f64(), b.as_secs()),
            None => format!("{:.2}s", took.as_secs_f64()),
        };
        println!(
            "{} criterion {id:>2} {name}: {} [{timing}]",
            if ok { "PASS" } else { "FAIL" },
            res.detail
        );
    }
    // universally quantified claims are only sampled; 4 to 8 carry the sweeps
    println!(
        "{} criterion 10 universal claims: sampled by sweeps to n = {SWEEP_CAP} in criteria 4-8, not proved",
        if all { "PASS" } else { "FAIL" }
    );
    if !all {
        std::process::exit(1);
    }
}
