use hbounds::coeff::{a_bound, b_bound, FamilyOrder};
use hbounds::numerics::SolverConfig;
use hbounds::radii::{least_index_for_radius, radius_root, section_margin, Family};
use hbounds::report::Status;
use hbounds::verify::{run, VerifyOptions};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn margin_changes_sign_at_the_root(n in 2u64..400, m_off in 0u64..3) {
        let m = n + m_off;
        let r = radius_root(n, m, Family::Alpha52, &SolverConfig::default()).unwrap();
        prop_assert!(r.bracket.0 <= r.radius && r.radius <= r.bracket.1);
        prop_assert!(section_margin(Family::Alpha52, n, m, r.bracket.0 * (1.0 - 1e-6)).unwrap() > 0.0);
        prop_assert!(section_margin(Family::Alpha52, n, m, (r.bracket.1 * (1.0 + 1e-6)).min(0.999_999)).unwrap() < 0.0);
    }

    #[test]
    fn radius_grows_with_the_index(n in 2u64..2000) {
        let cfg = SolverConfig::default();
        let a = radius_root(n, n, Family::Alpha52, &cfg).unwrap().radius;
        let b = radius_root(n + 1, n + 1, Family::Alpha52, &cfg).unwrap().radius;
        prop_assert!(b > a);
    }

    #[test]
    fn least_index_is_tight(r in 0.05f64..0.95) {
        let n = least_index_for_radius(r, Family::Alpha52).unwrap();
        let cfg = SolverConfig::default();
        prop_assert!(radius_root(n, n, Family::Alpha52, &cfg).unwrap().radius >= r - 1e-9);
        if n > 2 {
            prop_assert!(radius_root(n - 1, n - 1, Family::Alpha52, &cfg).unwrap().radius < r + 1e-9);
        }
    }

    #[test]
    fn b_bound_below_a_bound(n in 3u64..5000) {
        for order in [FamilyOrder::S0H, FamilyOrder::CONJECTURED] {
            prop_assert!(b_bound(n, order).unwrap().bound < a_bound(n, order).unwrap().bound);
        }
    }
}

#[test]
fn reduced_sweep_report() {
    let opts = VerifyOptions { n_cap: 200, ..VerifyOptions::default() };
    let report = run(&opts).unwrap();
    assert!(report.passed(), "{:?}", report.claims.iter().filter(|c| c.status == Status::Fail).collect::<Vec<_>>());
    let mut ids: Vec<&str> = report.claims.iter().map(|c| c.id.as_str()).collect();
    let total = ids.len();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), total, "claim ids are unique");
    assert_eq!(report.get("cor2.three_quarters").unwrap().status, Status::Pass);

    let mut tampered = opts.clone();
    tampered.tolerance_overrides.insert("table1.n354".into(), 0.0);
    let report = run(&tampered).unwrap();
    assert!(!report.passed());
    assert_eq!(report.get("table1.n354").unwrap().status, Status::Fail);
}

#[test]
fn small_cap_is_rejected() {
    let opts = VerifyOptions { n_cap: 19, ..VerifyOptions::default() };
    assert!(run(&opts).is_err());
}
