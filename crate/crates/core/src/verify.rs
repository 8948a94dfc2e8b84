//! The full claim suite behind `hbounds verify`.

use crate::coeff::{
    a_bound, b_bound, capital_psi, log_phi_difference, log_psi, log_psi_difference, max_scaled_bound, phi, psi, q_sign, rho, tau,
    theorem4_closed_form, Coefficient, FamilyOrder,
};
use crate::error::{Error, Result};
use crate::numerics::{minimize_by_difference, SolverConfig};
use crate::oracle::{guaranteed_radius, koebe_section_estimate, OracleConfig, CONSISTENCY_SLACK};
use crate::radii::{
    distortion_floor, floor3_closed_form, k_ratio, least_index_for_radius, n_threshold,
    phi1_derivative, r_nn_theorem2, radius_root, section_margin, t_bound_chain, tail_closed_form_p4,
    tail_sum, tail_upper_bound_p18, u1_derivative, u_constant_recomputed, u_function, x_n_and_rl,
    Family, ReferenceCurve, TailSpec, U_MONOTONE_FROM,
};
use crate::report::{Check, ClaimRecord, ClaimValue, Report};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Indices and radii of the eight tabulated order-5/2 radii.
pub const TABLE1: [(u64, f64); 8] = [
    (2, 0.0635798),
    (3, 0.0952634),
    (4, 0.12535),
    (5, 0.153603),
    (10, 0.269796),
    (50, 0.625779),
    (100, 0.753905),
    (354, 0.900055),
];

pub const TABLE1_TOLERANCE: f64 = 5e-4;

/// Section indices checked by the grid oracle.
pub const ORACLE_INDICES: [u64; 4] = [2, 3, 5, 10];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Upper end of every index sweep.
    pub n_cap: u64,
    pub solver: SolverConfig,
    pub oracle: OracleConfig,
    /// Replaces the tolerance of the named claims.
    pub tolerance_overrides: BTreeMap<String, f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_cap: 10_000,
            solver: SolverConfig::default(),
            oracle: OracleConfig::default(),
            tolerance_overrides: BTreeMap::new(),
        }
    }
}

struct Suite {
    claims: Vec<ClaimRecord>,
}

impl Suite {
    fn push(
        &mut self,
        id: &str,
        check: Check,
        claimed: impl Into<ClaimValue>,
        tolerance: f64,
        citation: &str,
        computed: Result<ClaimValue>,
    ) -> &mut ClaimRecord {
        let record = match computed {
            Ok(v) => ClaimRecord::new(id, check, claimed, Some(v), tolerance, citation),
            Err(e) => ClaimRecord::new(id, check, claimed, None, tolerance, citation)
                .with_note(format!("computation failed: {e}")),
        };
        self.claims.push(record);
        self.claims.last_mut().expect("just pushed")
    }

    fn real(&mut self, id: &str, check: Check, claimed: f64, tol: f64, cite: &str, v: Result<f64>) -> &mut ClaimRecord {
        self.push(id, check, claimed, tol, cite, v.map(ClaimValue::Real))
    }

    fn integer(&mut self, id: &str, claimed: u64, cite: &str, v: Result<u64>) -> &mut ClaimRecord {
        self.push(id, Check::ExactInteger, claimed, 0.0, cite, v.map(ClaimValue::from))
    }

    fn count(&mut self, id: &str, cite: &str, v: Result<usize>) -> &mut ClaimRecord {
        self.push(id, Check::AtMost, 0u64, 0.0, cite, v.map(|c| ClaimValue::from(c as u64)))
    }
}

fn note(record: &mut ClaimRecord, text: impl Into<String>) {
    if record.note.is_none() {
        record.note = Some(text.into());
    }
}

fn max_of(mut values: impl Iterator<Item = Result<f64>>) -> Result<f64> {
    values.try_fold(f64::NEG_INFINITY, |m, v| v.map(|v| m.max(v)))
}

fn min_of(mut values: impl Iterator<Item = Result<f64>>) -> Result<f64> {
    values.try_fold(f64::INFINITY, |m, v| v.map(|v| m.min(v)))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Points `lo · (hi/lo)^(i/(count-1))`.
fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln();
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo * (ratio * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

fn strict_increase_failures(values: &[f64]) -> usize {
    values.windows(2).filter(|w| !(w[1] > w[0])).count()
}

pub fn run(opts: &VerifyOptions) -> Result<Report> {
    if opts.n_cap < 20 {
        return Err(Error::Config(format!("n_cap must be at least 20, got {}", opts.n_cap)));
    }
    opts.solver.validate()?;
    opts.oracle.validate()?;
    let mut s = Suite { claims: Vec::new() };
    theorem1(&mut s, opts);
    theorem1_internals(&mut s);
    identities(&mut s, opts);
    theorem4(&mut s, opts);
    theorem2(&mut s, opts);
    table1(&mut s, opts);
    corollaries(&mut s);
    theorem5(&mut s, opts);
    oracle(&mut s, opts);

    let claims = s
        .claims
        .into_iter()
        .map(|c| match opts.tolerance_overrides.get(&c.id) {
            Some(&tol) => c.with_tolerance(tol),
            None => c,
        })
        .collect();
    Ok(Report::new(claims))
}

fn theorem1(s: &mut Suite, opts: &VerifyOptions) {
    let order = FamilyOrder::S0H;
    let cap = opts.n_cap;
    let n17 = |n: u64| (n as f64).powi(17);
    let sweep = |coef, lo, hi| max_scaled_bound(coef, order, lo, hi, n17);

    let r = sweep(Coefficient::A, 3, cap);
    let at = r.as_ref().map(|m| m.n).unwrap_or(0);
    let c = s.real("thm1.a.envelope", Check::AtMost, 5.24e-6, 0.0, "Theorem 1: |a_n| <= 5.24e-6 n^17",
        r.map(|m| m.ratio));
    note(c, format!("max of a_bound/n^17 over [3, {cap}], attained at n = {at}"));
    let r = sweep(Coefficient::B, 3, cap);
    let at = r.as_ref().map(|m| m.n).unwrap_or(0);
    let c = s.real("thm1.b.envelope", Check::AtMost, 2.32e-7, 0.0, "Theorem 1: |b_n| <= 2.32e-7 n^17",
        r.map(|m| m.ratio));
    note(c, format!("max of b_bound/n^17 over [3, {cap}], attained at n = {at}"));

    s.real("thm1.a.range_3_18", Check::AtMost, 5.24e-6, 0.0,
        "Theorem 1 proof: A(tau_n)B(tau_n) <= 5.24e-6 n^17 for 3 <= n <= 18",
        sweep(Coefficient::A, 3, 18).map(|m| m.ratio));
    s.real("thm1.b.range_3_18", Check::AtMost, 2.32e-7, 0.0,
        "Theorem 1 proof: A_1(rho_n)B_1(rho_n) <= 2.32e-7 n^17 for 3 <= n <= 18",
        sweep(Coefficient::B, 3, 18).map(|m| m.ratio));

    let c = s.real("thm1.remark.a_n19", Check::AtMost, 4.1006e-6, 0.0,
        "Remark after Theorem 1: 5.24 may be replaced by 4.1006 for n >= 19",
        sweep(Coefficient::A, 19, cap).map(|m| m.ratio));
    note(c, format!("max of a_bound/n^17 over [19, {cap}]"));
    let shifted = max_scaled_bound(Coefficient::A, order, 19, cap, |n| ((n - 3) as f64).powi(17));
    let c = s.real("thm1.remark.a_n19_shifted", Check::AtMost, 4.1006e-6, 0.0,
        "Theorem 1 proof: 4.1006e-6 (n-3)^17 chain for n >= 19", shifted.map(|m| m.ratio));
    note(c, format!("max of a_bound/(n-3)^17 over [19, {cap}]; the other reading of the remark"));
    let c = s.real("thm1.remark.b_n18", Check::AtMost, 2.25e-7, 0.0,
        "Theorem 1 proof: ~2.25e-7 n^17 for all n >= 18",
        sweep(Coefficient::B, 18, cap).map(|m| m.ratio));
    note(c, format!("max of b_bound/n^17 over [18, {cap}]"));
}

fn theorem1_internals(s: &mut Suite) {
    let grid = log_grid(2.0, 1e6, 1000);
    let values: Result<Vec<f64>> = grid.iter().map(|&x| capital_psi(x)).collect();
    let cite = "Theorem 1 proof: Psi(x) <= 1 for all x >= 2";
    match values {
        Ok(v) => {
            let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            s.real("thm1.Psi.max", Check::AtMost, 1.0, 0.0, cite, Ok(max));
            s.count("thm1.Psi.monotone", "Theorem 1 proof: Psi is increasing",
                Ok(strict_increase_failures(&v)));
        }
        Err(e) => {
            s.real("thm1.Psi.max", Check::AtMost, 1.0, 0.0, cite, Err(e.clone()));
            s.count("thm1.Psi.monotone", "Theorem 1 proof: Psi is increasing", Err(e));
        }
    }
    s.real("thm1.Psi.limit", Check::AtLeast, 0.999, 0.0, "Theorem 1 proof: Psi(x) -> 1",
        capital_psi(1e6));

    let xs: Vec<f64> = (0..1000).map(|i| 2.0 + 998.0 * i as f64 / 999.0).collect();
    s.real("thm1.q.positive", Check::AtLeast, 0.0, 0.0,
        "Theorem 1 proof: q_1^2 - q_2^2 > 0 for x >= 2",
        min_of(xs.iter().map(|&x| q_sign(x).map(|q| q.factored.min(q.expanded)))));
    s.real("thm1.q.x2", Check::Near, 8_363_520.0, 1e-6,
        "Theorem 1 proof: 24(x+2)^2(44x^3 + 5381x^2 + 6438x - 12972) at x = 2",
        q_sign(2.0).map(|q| q.factored));
    s.real("thm1.q.routes", Check::AtMost, 1e-8, 0.0,
        "Theorem 1 proof: factored and expanded q_1^2 - q_2^2 agree",
        max_of(xs.iter().map(|&x| q_sign(x).map(|q| q.relative_gap()))));
}

fn identities(s: &mut Suite, opts: &VerifyOptions) {
    let r_grid: Vec<f64> = (1..1000).map(|i| i as f64 / 1000.0).collect();
    s.real("ident.phi_factorization", Check::AtMost, 1e-14, 0.0,
        "Theorem 5 proof: phi(r) = (1-r)^3(3+10r^2+3r^4)/(3(1+r)^9)",
        max_of(r_grid.iter().map(|&r| Ok(rel(distortion_floor(3.0, r)?, floor3_closed_form(r)?)))));

    let mut pairs = Vec::new();
    for n in [2u64, 5, 10] {
        for r in [0.1, 0.3, 0.6] {
            pairs.push((n, r));
        }
    }
    s.real("ident.tail_p4", Check::AtMost, 1e-12, 0.0,
        "Theorem 5 proof: closed form of (59/50) sum k^4 r^(k-1)",
        max_of(pairs.iter().map(|&(n, r)| {
            let direct = tail_sum(&TailSpec::new(4, 59.0 / 50.0, n + 1)?, r)?;
            Ok(rel(direct, tail_closed_form_p4(n, r)?))
        })));

    let mut worst = Ok(0.0f64);
    'outer: for order in [FamilyOrder::S0H, FamilyOrder::CONJECTURED] {
        for n in 3..=60u64 {
            for i in 1..50 {
                let r = i as f64 / 50.0;
                let v = phi(n, r, order).and_then(|lhs| {
                    Ok(rel(lhs, (n - 1) as f64 / n as f64 * psi(n - 1, r, order)?))
                });
                match v {
                    Ok(v) => worst = worst.map(|w| w.max(v)),
                    Err(e) => {
                        worst = Err(e);
                        break 'outer;
                    }
                }
            }
        }
    }
    s.real("ident.b_shift", Check::AtMost, 1e-12, 0.0,
        "Theorem 1 proof: b_n growth is ((n-1)/n) psi_{n-1}", worst);

    s.real("ident.floor17_limit", Check::AtMost, 1e-4, 0.0,
        "Theorem 2 proof: C_17(r) -> 1 as r -> 0", distortion_floor(17.0, 1e-6).map(|v| (v - 1.0).abs()));

    let mut tau_gap = Ok(0.0f64);
    let mut rho_gap = Ok(0.0f64);
    let mut stationarity = Ok(0.0f64);
    for order in [FamilyOrder::S0H, FamilyOrder::CONJECTURED] {
        for n in (3..=60u64).chain([100, 500, 1000]) {
            let t = tau(n, order).and_then(|t| {
                let d = |x, y| log_psi_difference(n, x, y, order).unwrap_or(f64::NAN);
                let (x, _) = minimize_by_difference(d, 1e-6, 1.0 - 1e-6, &opts.solver)?;
                let h = 1e-7;
                let fd = (log_psi(n, t + h, order)? - log_psi(n, t - h, order)?) / (2.0 * h);
                Ok(((x - t).abs(), fd.abs()))
            });
            tau_gap = tau_gap.and_then(|g| t.as_ref().map(|v| g.max(v.0)).map_err(Clone::clone));
            stationarity = stationarity.and_then(|g| t.as_ref().map(|v| g.max(v.1)).map_err(Clone::clone));
            let r = rho(n, order).and_then(|p| {
                let d = |x, y| log_phi_difference(n, x, y, order).unwrap_or(f64::NAN);
                let (x, _) = minimize_by_difference(d, 1e-6, 1.0 - 1e-6, &opts.solver)?;
                Ok((x - p).abs())
            });
            rho_gap = rho_gap.and_then(|g| r.map(|v| g.max(v)));
        }
    }
    s.real("ident.tau_minimizer", Check::AtMost, 1e-8, 0.0,
        "Theorem 1 proof: tau_n is the point of minimum", tau_gap);
    s.real("ident.rho_minimizer", Check::AtMost, 1e-8, 0.0,
        "Theorem 1 proof: rho_n minimizes the b_n growth", rho_gap);
    s.real("ident.stationarity", Check::AtMost, 1e-4, 0.0,
        "Theorem 1 proof: (log psi_n(r))' = 0 at tau_n", stationarity);

    let mut ratio = Ok(0.0f64);
    for &(n, a) in &[(200u64, 2.0), (400, 1.5), (1000, 3.0), (120, 1.2)] {
        for &r in &[0.01, 0.05, 0.1, 0.2, 0.4, 0.6] {
            let v = match tail_upper_bound_p18(n, r, a) {
                Ok(bound) => tail_sum(&TailSpec::new(18, 1.0, n + 1).unwrap(), r).map(|d| d / bound),
                Err(Error::Precondition(_)) => continue,
                Err(e) => Err(e),
            };
            ratio = ratio.and_then(|m| v.map(|v| m.max(v)));
        }
    }
    s.real("ident.tail_p18", Check::AtMost, 1.0, 0.0,
        "Theorem 2 proof: sum k^18 r^(k-1) <= 18! r^(n(a-1)/a-2) / |log r|^19", ratio);
}

fn theorem4(s: &mut Suite, opts: &VerifyOptions) {
    let order = FamilyOrder::CONJECTURED;
    s.real("thm4.closed_form", Check::AtMost, 1e-10, 0.0,
        "Theorem 4: displayed closed forms",
        max_of((3..=500u64).map(|n| {
            let (a, b) = theorem4_closed_form(n)?;
            Ok(rel(a, a_bound(n, order)?.bound).max(rel(b, b_bound(n, order)?.bound)))
        })));
    let n3 = |n: u64| (n as f64).powi(3);
    s.real("thm4.a.envelope", Check::AtMost, 0.75, 0.0, "Theorem 4: |a_n| <= 3n^3/4",
        max_scaled_bound(Coefficient::A, order, 3, opts.n_cap, n3).map(|m| m.ratio));
    s.real("thm4.b.envelope", Check::AtMost, 0.43, 0.0, "Theorem 4: |b_n| <= 43n^3/100",
        max_scaled_bound(Coefficient::B, order, 3, opts.n_cap, n3).map(|m| m.ratio));
}

fn theorem2(s: &mut Suite, opts: &VerifyOptions) {
    let count = 10_000;
    let grid: Vec<f64> = (0..count)
        .map(|i| U_MONOTONE_FROM + (1.0 - U_MONOTONE_FROM) * i as f64 / count as f64)
        .collect();
    let u: Result<Vec<f64>> = grid.iter().map(|&r| u_function(r)).collect();
    s.count("thm2.U.monotone", "Theorem 2 proof: U is strictly increasing on (0.016155, 1)",
        u.map(|v| strict_increase_failures(&v)));
    s.real("thm2.U1_derivative", Check::AtLeast, 0.0, 0.0,
        "Theorem 2 proof: U_1'(r) > 0 for r >= 0.016155",
        min_of(grid.iter().map(|&r| u1_derivative(r))));
    let c = s.real("thm2.U.constant", Check::Informational, 28.5, 0.0,
        "Theorem 2: constant -28.5 in U(r)", Ok(u_constant_recomputed()));
    note(c, "recomputed as ln(68 * 54.72e-7 * 18!)");

    s.real("thm2.r_nn.n2", Check::AtLeast, f64::MIN_POSITIVE, 0.0,
        "Theorem 2 proof: the lower bound is obtainable for all n >= 2",
        r_nn_theorem2(2, &opts.solver).map(|r| r.radius));
    s.real("thm2.r_nn.n81", Check::AtLeast, 0.25, 0.0, "Corollary 1 (i): |z| < 1/4 whenever n >= 81",
        r_nn_theorem2(81, &opts.solver).map(|r| r.radius));
    s.real("thm2.r_nn.n220", Check::AtLeast, 0.5, 0.0, "Corollary 1 (iii): |z| < 1/2 whenever n >= 220",
        r_nn_theorem2(220, &opts.solver).map(|r| r.radius));
}

fn table1(s: &mut Suite, opts: &VerifyOptions) {
    for (n, value) in TABLE1 {
        s.real(&format!("table1.n{n}"), Check::Near, value, TABLE1_TOLERANCE,
            &format!("Table 1: n = {n}"),
            radius_root(n, n, Family::Alpha52, &opts.solver).map(|r| r.radius));
    }
}

fn corollaries(s: &mut Suite) {
    s.integer("cor1.quarter", 81, "Corollary 1 (i): n >= 81 for r = 1/4", n_threshold(0.25));
    s.integer("cor1.inv_e", 131, "Corollary 1 (ii): n >= 131 for r = 1/e",
        n_threshold((-1.0f64).exp()));
    s.integer("cor1.half", 220, "Corollary 1 (iii): n >= 220 for r = 1/2", n_threshold(0.5));
    for (id, r, n, cite) in [
        ("cor2.quarter", 0.25, 10, "Corollary 2 (i): r = 1/4 whenever n >= 10"),
        ("cor2.half", 0.5, 29, "Corollary 2 (ii): r = 1/2 whenever n >= 29"),
        ("cor2.three_quarters", 0.75, 98, "Corollary 2 (iii): r = 3/4 whenever n >= 98"),
    ] {
        s.integer(id, n, cite, least_index_for_radius(r, Family::Alpha52));
    }
}

fn theorem5(s: &mut Suite, opts: &VerifyOptions) {
    let chain = t_bound_chain(20);
    let pick = |f: fn(&crate::radii::TChain) -> f64| chain.as_ref().map(f).map_err(Clone::clone);
    let cite = "Theorem 5 proof";
    s.real("thm5.T1_20", Check::AtMost, 0.000555, 0.0, cite, pick(|c| c.t1));
    let c = s.real("thm5.T1.printed_bound", Check::Informational, 0.000555, 0.0,
        "Theorem 5 proof: T_1 bound at n = 20 ~ 0.000555", pick(|c| c.t1_bound));
    note(c, "177 / (50 * 2^7 * (2 - log log 20 / log 20)^8)");
    s.real("thm5.S2_20", Check::Near, 4787.08, 0.005, "Theorem 5 proof: S_2(20) ~ 4787.08",
        pick(|c| c.s2));
    s.real("thm5.T2_20", Check::AtMost, 4787.08 * 1.01, 0.0, cite, pick(|c| c.t2));
    s.real("thm5.T3_20", Check::AtMost, 0.333 * 1.01, 0.0, "Theorem 5 proof: S_3(x_20/20) ~ 0.333",
        pick(|c| c.t3));
    s.real("thm5.t_20", Check::AtMost, 0.885 * 1.01, 0.0, "Theorem 5 proof: t(x_n, n) <= 0.885",
        pick(|c| c.t));

    let chains: Result<Vec<_>> = (20..=opts.n_cap).into_par_iter().map(t_bound_chain).collect();
    let sup = |f: fn(&crate::radii::TChain) -> f64| {
        chains.as_ref().map(|cs| cs.iter().map(f).fold(f64::NEG_INFINITY, f64::max)).map_err(Clone::clone)
    };
    s.real("thm5.T1.sup", Check::AtMost, 0.000555, 0.0, "Theorem 5 proof: T_1(n) <= 0.000555 for n >= 20",
        sup(|c| c.t1));
    s.real("thm5.T2.sup", Check::AtMost, 4787.08 * 1.01, 0.0,
        "Theorem 5 proof: T_2(n) <= S_2(20) for n >= 20", sup(|c| c.t2));
    s.real("thm5.T3.sup", Check::AtMost, 0.333 * 1.01, 0.0,
        "Theorem 5 proof: T_3(n) <= 0.333 for n >= 20", sup(|c| c.t3));
    let c = s.real("thm5.t.sup", Check::AtMost, 1.0, 0.0,
        "Theorem 5 proof: t(x_n, n) <= 1 for all n >= 20", sup(|c| c.t));
    note(c, format!("max over [20, {}]", opts.n_cap));

    s.real("thm5.phi1_decreasing", Check::AtMost, 0.0, 0.0,
        "Theorem 5 proof: phi_1'(r) < 0 on [0, 1)",
        Ok((0..1000).map(|i| phi1_derivative(i as f64 / 1000.0)).fold(f64::NEG_INFINITY, f64::max)));
    s.count("thm5.k_increasing", "Theorem 5 proof: k(n, r) is increasing in r",
        [2u64, 10, 100, 1000].iter().try_fold(0usize, |acc, &n| {
            let v: Result<Vec<f64>> = (1..1000).map(|i| k_ratio(n, i as f64 / 1000.0)).collect();
            // values that underflowed to zero carry no ordering information
            v.map(|v| {
                let kept: Vec<f64> = v.into_iter().filter(|&k| k > 1e-300).collect();
                acc + strict_increase_failures(&kept)
            })
        }));

    // φ(n,n,·) is decreasing, so r_{n,n} > r^L exactly when φ(n,n,r^L) > 0
    let failures: Result<usize> = (20..=opts.n_cap)
        .into_par_iter()
        .map(|n| {
            let (_, rl) = x_n_and_rl(n, ReferenceCurve::Conjectured)?;
            section_margin(Family::Alpha52, n, n, rl).map(|v| usize::from(v <= 0.0))
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().sum());
    let c = s.count("thm5.rL.dominance", "Theorem 5: r_{n,n} > 1 - (8 log n - 4 log log n)/n for n >= 20",
        failures);
    note(c, format!("count of n in [20, {}] with phi(n, n, r^L) <= 0", opts.n_cap));

    let sample: Vec<u64> = (20..=opts.n_cap).step_by(97).chain([opts.n_cap]).collect();
    let gaps = sample
        .par_iter()
        .map(|&n| {
            let (_, rl) = x_n_and_rl(n, ReferenceCurve::Conjectured)?;
            Ok(radius_root(n, n, Family::Alpha52, &opts.solver)?.radius - rl)
        })
        .collect::<Vec<Result<f64>>>();
    let c = s.real("thm5.rL.root_gap", Check::AtLeast, 0.0, 0.0,
        "Theorem 5: r_{n,n} > r^L_{n,n}", min_of(gaps.into_iter()));
    note(c, format!("min of r_nn - r^L over {} sampled n", sample.len()));
}

fn oracle(s: &mut Suite, opts: &VerifyOptions) {
    for n in ORACLE_INDICES {
        let verdict = koebe_section_estimate(n, &opts.oracle);
        for family in [Family::Alpha52, Family::Alpha17] {
            let id = format!("oracle.n{n}.{family}");
            let cite = match family {
                Family::Alpha52 => "Theorem 5: guaranteed radius is a lower bound",
                Family::Alpha17 => "Theorem 2: guaranteed radius is a lower bound",
            };
            let guarantee = guaranteed_radius(n, family, &opts.solver);
            let estimate = verdict.as_ref().map(|v| v.estimated_radius).map_err(Clone::clone);
            let claimed = *guarantee.as_ref().unwrap_or(&f64::NAN);
            let computed = guarantee.and(estimate);
            let c = s.real(&id, Check::AtLeast, claimed, CONSISTENCY_SLACK, cite, computed);
            let detail = match &verdict {
                Ok(v) => match v.first_violation {
                    Some(viol) => format!(
                        "grid oracle on the harmonic Koebe section s_{{{n},{n}}}; first violation at rho = {} ({:?})",
                        viol.rho, viol.kind
                    ),
                    None => format!("grid oracle on the harmonic Koebe section s_{{{n},{n}}}; no violation"),
                },
                Err(_) => String::new(),
            };
            note(c, detail);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_ends() {
        let g = log_grid(2.0, 1e6, 1000);
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 2.0);
        assert_eq!(g[999], 1e6);
        assert_eq!(strict_increase_failures(&g), 0);
        assert_eq!(strict_increase_failures(&[1.0, 1.0, 2.0, 1.5]), 2);
    }

    #[test]
    fn small_cap_rejected() {
        let opts = VerifyOptions { n_cap: 19, ..Default::default() };
        assert!(run(&opts).is_err());
    }
}
