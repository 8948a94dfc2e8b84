//! Normalized harmonic mappings `f = h + conj(g)` given by truncated power
//! series, the harmonic Koebe function, sections, and the pointwise
//! univalence functional.

use crate::error::{domain, Error, Result};
use num_complex::Complex64;
use num_rational::Ratio;
use std::f64::consts::{FRAC_PI_2, TAU};

pub type Rational = Ratio<i128>;

/// Truncated coefficients of `h(z) = Σ a_k z^k` and `g(z) = Σ b_k z^k`.
///
/// Index `0` of each vector holds the `k = 1` coefficient. Both vectors always
/// have the same length (the truncation order).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl CoefficientSeries {
    /// Builds a series from `a_1..` and `b_1..`. The shorter vector is padded
    /// with zeros. `a_1` must be exactly 1.
    pub fn new(mut a: Vec<Complex64>, mut b: Vec<Complex64>) -> Result<Self> {
        if a.first() != Some(&Complex64::new(1.0, 0.0)) {
            return domain("a_1 must equal 1");
        }
        if a.iter().chain(b.iter()).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return domain("coefficients must be finite");
        }
        let order = a.len().max(b.len());
        a.resize(order, Complex64::new(0.0, 0.0));
        b.resize(order, Complex64::new(0.0, 0.0));
        Ok(Self { a, b })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(a: &[f64], b: &[f64]) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(c(a), c(b))
    }

    pub fn identity() -> Self {
        Self {
            a: vec![Complex64::new(1.0, 0.0)],
            b: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// Coefficients `a_1..a_order`.
    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    /// Coefficients `b_1..b_order`.
    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    /// `a_k` for `k >= 1`, zero past the truncation.
    pub fn a_k(&self, k: usize) -> Complex64 {
        k.checked_sub(1)
            .and_then(|i| self.a.get(i).copied())
            .unwrap_or_default()
    }

    pub fn b_k(&self, k: usize) -> Complex64 {
        k.checked_sub(1)
            .and_then(|i| self.b.get(i).copied())
            .unwrap_or_default()
    }

    /// True when `b_1 = 0`, i.e. the series belongs to the normalized class.
    pub fn is_normalized(&self) -> bool {
        self.b[0] == Complex64::new(0.0, 0.0)
    }

    /// `h'(z)` and `g'(z)`.
    pub fn derivatives(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut dh = Complex64::new(0.0, 0.0);
        let mut dg = Complex64::new(0.0, 0.0);
        for k in (1..=self.order()).rev() {
            dh = dh * z + self.a[k - 1] * k as f64;
            dg = dg * z + self.b[k - 1] * k as f64;
        }
        (dh, dg)
    }

    fn analytic_parts(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut h = Complex64::new(0.0, 0.0);
        let mut g = Complex64::new(0.0, 0.0);
        for k in (0..self.order()).rev() {
            h = (h + self.a[k]) * z;
            g = (g + self.b[k]) * z;
        }
        (h, g)
    }
}

/// `(A_n, B_n) = ((n+1)(2n+1)/6, (n-1)(2n-1)/6)`, the harmonic Koebe coefficients.
pub fn koebe_coefficients(n: u64) -> Result<(Rational, Rational)> {
    if n < 2 {
        return domain(format!("Koebe coefficients start at n = 2, got {n}"));
    }
    let n = i128::from(n);
    Ok((
        Rational::new((n + 1) * (2 * n + 1), 6),
        Rational::new((n - 1) * (2 * n - 1), 6),
    ))
}

fn rational_to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// The harmonic Koebe function truncated at `order`.
pub fn harmonic_koebe(order: usize) -> Result<CoefficientSeries> {
    if order < 1 {
        return domain("order must be at least 1");
    }
    let mut a = vec![Complex64::new(1.0, 0.0)];
    let mut b = vec![Complex64::new(0.0, 0.0)];
    for n in 2..=order as u64 {
        let (an, bn) = koebe_coefficients(n)?;
        a.push(Complex64::new(rational_to_f64(an), 0.0));
        b.push(Complex64::new(rational_to_f64(bn), 0.0));
    }
    CoefficientSeries::new(a, b)
}

/// Closed form `H(z) + conj(G(z))` of the harmonic Koebe function.
pub fn koebe_closed_form(z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let one = Complex64::new(1.0, 0.0);
    let d = (one - z).powi(3);
    let z2 = z * z;
    let z3 = z2 * z;
    let h = (z - z2 * 0.5 + z3 / 6.0) / d;
    let g = (z2 * 0.5 + z3 / 6.0) / d;
    Ok(h + g.conj())
}

fn check_disk(z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return domain(format!("|z| must be < 1, got {}", z.norm()));
    }
    Ok(())
}

/// `f(z) = h(z) + conj(g(z))` over the truncation.
pub fn evaluate(f: &CoefficientSeries, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let (h, g) = f.analytic_parts(z);
    Ok(h + g.conj())
}

/// The section `s_{n,m}(f)`: `a` truncated at `n`, `b` at `m`.
pub fn section(f: &CoefficientSeries, n: usize, m: usize) -> Result<CoefficientSeries> {
    if n < 1 || m < 1 {
        return domain("section indices must be at least 1");
    }
    let a = f.a.iter().copied().take(n).collect();
    let b = f.b.iter().copied().take(m).collect();
    CoefficientSeries::new(a, b)
}

/// Argument of the univalence functional: `z = rho·e^{i·phi}` and the
/// half-difference angle `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbePoint {
    rho: f64,
    phi: f64,
    t: f64,
}

impl ProbePoint {
    pub fn new(rho: f64, phi: f64, t: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return domain(format!("rho must lie in (0, 1), got {rho}"));
        }
        if !(t > 0.0 && t <= FRAC_PI_2) {
            return domain(format!("t must lie in (0, pi/2], got {t}"));
        }
        if !phi.is_finite() {
            return domain("phi must be finite");
        }
        Ok(Self { rho, phi, t })
    }

    /// The probe for the pair of boundary points `rho·e^{i·eta}` and `rho·e^{i·psi}`.
    pub fn from_pair(rho: f64, eta: f64, psi: f64) -> Result<Self> {
        Self::new(rho, 0.5 * (eta + psi), 0.5 * (eta - psi))
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
    pub fn phi(&self) -> f64 {
        self.phi
    }
    pub fn t(&self) -> f64 {
        self.t
    }
    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.rho, self.phi)
    }
}

/// Values `sin(k t)/sin(t)` for `k = 1..=order`, via the Chebyshev
/// recurrence `U_k = 2cos(t)·U_{k-1} − U_{k-2}`. Well defined at `t = 0`.
pub(crate) fn sine_ratios(t: f64, order: usize, out: &mut Vec<f64>) {
    out.clear();
    let c2 = 2.0 * t.cos();
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..order {
        out.push(cur);
        let next = c2 * cur - prev;
        prev = cur;
        cur = next;
    }
}

/// `c_k = a_k z^k − conj(b_k z^k)` for `k = 1..=order`.
pub(crate) fn functional_terms(f: &CoefficientSeries, z: Complex64, out: &mut Vec<Complex64>) {
    out.clear();
    let mut zk = z;
    for k in 0..f.order() {
        out.push(f.a[k] * zk - (f.b[k] * zk).conj());
        zk *= z;
    }
}

/// The difference quotient `(f(ρe^{iη}) − f(ρe^{iψ})) / (ρe^{iη} − ρe^{iψ})`,
/// written as `(1/z) Σ_k (a_k z^k − conj(b_k z^k))·sin(kt)/sin(t)`.
///
/// The series is univalent on the unit disk iff this is nonzero for every
/// `z ≠ 0` in the disk and every `t ∈ (0, π/2]` (given sense preservation).
pub fn univalence_functional(f: &CoefficientSeries, p: &ProbePoint) -> Complex64 {
    let mut terms = Vec::with_capacity(f.order());
    let mut ratios = Vec::with_capacity(f.order());
    functional_terms(f, p.z(), &mut terms);
    sine_ratios(p.t, f.order(), &mut ratios);
    terms.iter().zip(&ratios).map(|(c, u)| c * u).sum::<Complex64>() / p.z()
}

/// The `t → 0⁺` limit `(1/z) Σ k (a_k z^k − conj(b_k z^k))`.
pub fn univalence_functional_limit(f: &CoefficientSeries, z: Complex64) -> Complex64 {
    let mut terms = Vec::with_capacity(f.order());
    functional_terms(f, z, &mut terms);
    terms.iter().enumerate().map(|(i, c)| c * (i + 1) as f64).sum::<Complex64>() / z
}

/// Minimum of `|h'(z)| − |g'(z)|` over the polar grid of `|z| <= rho` with
/// `samples` angles and `samples / 4` radii (the circle `|z| = rho` included).
pub fn sense_preserving_margin(f: &CoefficientSeries, rho: f64, samples: usize) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return domain(format!("rho must lie in (0, 1), got {rho}"));
    }
    if samples < 8 {
        return Err(Error::Config(format!("need at least 8 samples, got {samples}")));
    }
    let radial = (samples / 4).max(2);
    let (dh, dg) = f.derivatives(Complex64::new(0.0, 0.0));
    let mut margin = dh.norm() - dg.norm();
    for j in 1..=radial {
        let r = rho * j as f64 / radial as f64;
        margin = margin.min(circle_margin(f, r, samples));
    }
    Ok(margin)
}

/// Minimum of `|h'| − |g'|` over `samples` equally spaced points of `|z| = r`.
pub(crate) fn circle_margin(f: &CoefficientSeries, r: f64, samples: usize) -> f64 {
    let step = TAU / samples as f64;
    (0..samples)
        .map(|i| {
            let (dh, dg) = f.derivatives(Complex64::from_polar(r, i as f64 * step));
            dh.norm() - dg.norm()
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn koebe_coefficient_values() {
        let q = |n, d| Rational::new(n, d);
        assert_eq!(koebe_coefficients(2).unwrap(), (q(5, 2), q(1, 2)));
        assert_eq!(koebe_coefficients(3).unwrap(), (q(14, 3), q(5, 3)));
        assert_eq!(koebe_coefficients(10).unwrap(), (q(77, 2), q(57, 2)));
        assert!(koebe_coefficients(1).is_err());
        assert!(koebe_coefficients(0).is_err());
    }

    #[test]
    fn koebe_difference_is_n() {
        for n in 2..2000u64 {
            let (a, b) = koebe_coefficients(n).unwrap();
            assert_eq!(a - b, Rational::from_integer(n as i128));
        }
    }

    #[test]
    fn koebe_series_truncations() {
        assert_eq!(harmonic_koebe(1).unwrap(), CoefficientSeries::identity());
        let k2 = harmonic_koebe(2).unwrap();
        assert_eq!(k2.a(), &[c(1.0, 0.0), c(2.5, 0.0)]);
        assert_eq!(k2.b(), &[c(0.0, 0.0), c(0.5, 0.0)]);
        let k3 = harmonic_koebe(3).unwrap();
        assert!((k3.a_k(3).re - 14.0 / 3.0).abs() < 1e-15);
        assert!((k3.b_k(3).re - 5.0 / 3.0).abs() < 1e-15);
        assert!(harmonic_koebe(0).is_err());
    }

    #[test]
    fn evaluate_basics() {
        let id = CoefficientSeries::identity();
        assert_eq!(evaluate(&id, c(0.3, 0.1)).unwrap(), c(0.3, 0.1));
        let f = CoefficientSeries::from_real(&[1.0], &[0.0, 0.5]).unwrap();
        let v = evaluate(&f, c(0.2, 0.0)).unwrap();
        assert!((v - c(0.2 + 0.02, 0.0)).norm() < 1e-16);
        assert!(evaluate(&id, c(1.0, 0.0)).is_err());
        assert!(evaluate(&id, c(0.8, 0.7)).is_err());
    }

    #[test]
    fn koebe_series_near_slit_tip() {
        // on the real axis H + G = (r + r^3/3)/(1-r)^3, which tends to -1/6 as r -> -1
        let k = harmonic_koebe(2000).unwrap();
        let r: f64 = -0.999;
        let closed = koebe_closed_form(c(r, 0.0)).unwrap();
        let real_axis = (r + r.powi(3) / 3.0) / (1.0 - r).powi(3);
        assert!((closed.re - real_axis).abs() < 1e-14);
        assert!((closed.re + 1.0 / 6.0).abs() < 1e-2);
        // 2000 terms are far too few at -0.999: the last term is ~3.6e5
        assert!(evaluate(&k, c(r, 0.0)).unwrap().re > 1e3);
        let series = evaluate(&k, c(-0.99, 0.0)).unwrap();
        assert!((series.re + 1.0 / 6.0).abs() < 1e-2);
        assert!(series.im.abs() < 1e-12);
    }

    #[test]
    fn koebe_series_matches_closed_form_in_disk() {
        let k = harmonic_koebe(2000).unwrap();
        for i in 0..24 {
            for &r in &[0.1, 0.5, 0.75, 0.9] {
                let z = Complex64::from_polar(r, i as f64 * TAU / 24.0);
                let d = (evaluate(&k, z).unwrap() - koebe_closed_form(z).unwrap()).norm();
                assert!(d < 1e-9, "z = {z}: {d}");
            }
        }
    }

    #[test]
    fn sections() {
        let k = harmonic_koebe(10).unwrap();
        assert_eq!(section(&k, 1, 1).unwrap(), CoefficientSeries::identity());
        let s = section(&k, 3, 2).unwrap();
        assert_eq!(s.order(), 3);
        assert!((s.a_k(3).re - 14.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.b_k(2), c(0.5, 0.0));
        assert_eq!(s.b_k(3), c(0.0, 0.0));
        assert_eq!(section(&k, 10, 12).unwrap(), k);
        assert!(section(&k, 0, 1).is_err());
    }

    #[test]
    fn functional_identity_and_killed_term() {
        let id = CoefficientSeries::identity();
        let p = ProbePoint::new(0.7, 1.1, 0.4).unwrap();
        assert!((univalence_functional(&id, &p) - c(1.0, 0.0)).norm() < 1e-15);

        let f = CoefficientSeries::from_real(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        let p = ProbePoint::new(0.5, 0.3, FRAC_PI_2).unwrap();
        assert!((univalence_functional(&f, &p) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn functional_is_the_difference_quotient() {
        let f = section(&harmonic_koebe(6).unwrap(), 6, 5).unwrap();
        let (rho, eta, psi) = (0.3, 1.3, -0.4);
        let p = ProbePoint::from_pair(rho, eta, psi).unwrap();
        let w1 = Complex64::from_polar(rho, eta);
        let w2 = Complex64::from_polar(rho, psi);
        let q = (evaluate(&f, w1).unwrap() - evaluate(&f, w2).unwrap()) / (w1 - w2);
        assert!((univalence_functional(&f, &p) - q).norm() < 1e-13);
    }

    #[test]
    fn functional_small_t_limit() {
        let f = harmonic_koebe(12).unwrap();
        for &phi in &[0.0, 0.7, 2.0, -2.5] {
            let p = ProbePoint::new(0.4, phi, 1e-6).unwrap();
            let lim = univalence_functional_limit(&f, p.z());
            assert!((univalence_functional(&f, &p) - lim).norm() < 1e-8);
        }
    }

    #[test]
    fn probe_validation() {
        assert!(ProbePoint::new(0.5, 0.0, 0.0).is_err());
        assert!(ProbePoint::new(0.5, 0.0, PI).is_err());
        assert!(ProbePoint::new(1.0, 0.0, 0.3).is_err());
        assert!(ProbePoint::new(0.5, 0.0, FRAC_PI_2).is_ok());
    }

    #[test]
    fn second_section_functional_grid() {
        let s = section(&harmonic_koebe(10).unwrap(), 2, 2).unwrap();
        let mut min = f64::INFINITY;
        for i in 0..200 {
            for j in 1..=200 {
                let p = ProbePoint::new(0.06, i as f64 * TAU / 200.0, j as f64 * FRAC_PI_2 / 200.0)
                    .unwrap();
                min = min.min(univalence_functional(&s, &p).norm());
            }
        }
        assert!(min > 0.0);
    }

    #[test]
    fn margins() {
        let id = CoefficientSeries::identity();
        assert_eq!(sense_preserving_margin(&id, 0.9, 256).unwrap(), 1.0);
        let f = CoefficientSeries::from_real(&[1.0], &[0.0, 1.0]).unwrap();
        assert!((sense_preserving_margin(&f, 0.4, 64).unwrap() - 0.2).abs() < 1e-15);
        let k = harmonic_koebe(50).unwrap();
        let s = section(&k, 50, 50).unwrap();
        assert!(sense_preserving_margin(&s, 0.0635, 256).unwrap() > 0.0);
        assert!(sense_preserving_margin(&id, 0.5, 7).is_err());
        assert!(sense_preserving_margin(&id, 1.0, 8).is_err());
    }

    proptest! {
        #[test]
        fn evaluate_is_linear_in_coefficients(
            a2 in -3.0f64..3.0, a3 in -3.0f64..3.0, b2 in -3.0f64..3.0, b3 in -3.0f64..3.0,
            x in -0.6f64..0.6, y in -0.6f64..0.6,
        ) {
            let z = c(x, y);
            let f1 = CoefficientSeries::from_real(&[1.0, a2, 0.0], &[0.0, b2, 0.0]).unwrap();
            let f2 = CoefficientSeries::from_real(&[1.0, 0.0, a3], &[0.0, 0.0, b3]).unwrap();
            let merged = CoefficientSeries::from_real(&[1.0, a2, a3], &[0.0, b2, b3]).unwrap();
            // both parts carry z, the merged series carries it once
            let lhs = evaluate(&merged, z).unwrap();
            let rhs = evaluate(&f1, z).unwrap() + evaluate(&f2, z).unwrap() - z;
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn section_idempotent(n in 1usize..15, m in 1usize..15) {
            let k = harmonic_koebe(12).unwrap();
            let s = section(&k, n, m).unwrap();
            prop_assert_eq!(section(&s, n, m).unwrap(), s.clone());
            prop_assert!(s.order() <= 12);
        }
    }
}
