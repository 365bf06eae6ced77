//! Closed-form constants, limit laws and the numerical solvers behind them.
//!
//! Every function here is pure. Formulas denominated in `d - 2 p_2` return
//! [`Error::Undefined`] when `d <= 2 p_2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::graph::DegreeStats;

/// Degree-law parameters shared by the giant-component formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryContext {
    pub p2: f64,
    pub d: f64,
    pub theta: f64,
}

impl TheoryContext {
    pub fn new(p2: f64, d: f64, theta: f64) -> Result<Self> {
        check_pd(p2, d)?;
        if theta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "theta must be positive, got {theta}"
            )));
        }
        Ok(Self { p2, d, theta })
    }
}

fn check_pd(p2: f64, d: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p2) {
        return Err(Error::InvalidParameter(format!(
            "p2 must lie in [0,1], got {p2}"
        )));
    }
    if d <= 2.0 * p2 {
        return Err(Error::Undefined(format!(
            "need d > 2 p2, got d={d}, p2={p2}"
        )));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "theta must be positive, got {theta}"
        )))
    }
}

/// `2θ / sqrt(2π)`, the prefactor of the `k^{-1/2}` failure-size tail.
pub fn tail_constant(theta: f64) -> f64 {
    2.0 * theta / (2.0 * PI).sqrt()
}

/// Star-topology tail `2θ/sqrt(2π) · sqrt((m-k)/m) · k^{-1/2}`.
pub fn star_tail(m: usize, k: usize, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if k == 0 || k >= m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= m-1, got k={k}, m={m}"
        )));
    }
    let (m, k) = (m as f64, k as f64);
    Ok(tail_constant(theta) * ((m - k) / m).sqrt() / k.sqrt())
}

/// Probability that the cascade disconnects the network,
/// `2θ/sqrt(2π) · (2p_2/(d-2p_2))^{1/4} · Γ(3/4) · m^{-1/4}`.
pub fn disconnect_constant(theta: f64, p2: f64, d: f64, m: f64) -> Result<f64> {
    check_theta(theta)?;
    check_pd(p2, d)?;
    let a = 2.0 * p2 / (d - 2.0 * p2);
    Ok(tail_constant(theta) * a.powf(0.25) * gamma(0.75) * m.powf(-0.25))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function (Lanczos, g = 7), about 15 significant digits.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

fn rayleigh_rate(p2: f64, d: f64) -> Result<f64> {
    check_pd(p2, d)?;
    if p2 == 0.0 {
        return Err(Error::Undefined(
            "Rayleigh law degenerates at p2 = 0".into(),
        ));
    }
    Ok(2.0 * p2 / (d - 2.0 * p2))
}

/// Limit density of the scaled first-disconnection time.
pub fn rayleigh_pdf(x: f64, p2: f64, d: f64) -> Result<f64> {
    let a = rayleigh_rate(p2, d)?;
    if x < 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * a * x * (-a * x * x).exp())
}

pub fn rayleigh_cdf(x: f64, p2: f64, d: f64) -> Result<f64> {
    let a = rayleigh_rate(p2, d)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(-(-a * x * x).exp_m1())
}

pub fn rayleigh_quantile(u: f64, p2: f64, d: f64) -> Result<f64> {
    let a = rayleigh_rate(p2, d)?;
    Ok((-(-u).ln_1p() / a).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutsideGiantConstants {
    /// Limit of `(m/i²) Σ_k (k-1) L_k`, the scaled edge count in lines.
    pub edges_in_lines: f64,
    /// Limit of `(m/i²) (N_0 + Σ_k k L_k)`.
    pub vertices_outside: f64,
}

pub fn outside_giant_constants(p2: f64, d: f64) -> Result<OutsideGiantConstants> {
    check_pd(p2, d)?;
    let den = (d - 2.0 * p2).powi(2);
    Ok(OutsideGiantConstants {
        edges_in_lines: 4.0 * p2 * p2 / den,
        vertices_outside: 2.0 * d * p2 / den,
    })
}

/// First moment of `L'_k` (lines with `k` vertices in the exploded graph)
/// after removing `i` of `m` edges: `(i²/m)(1/4)(1+2p_2/d)²(2p_2/d)^{k-2}`.
pub fn line_first_moment(k: usize, p2: f64, d: f64, i: f64, m: f64) -> Result<f64> {
    check_pd(p2, d)?;
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "line length k must be >= 2, got {k}"
        )));
    }
    let r = 2.0 * p2 / d;
    Ok(i * i / m * 0.25 * (1.0 + r).powi(2) * r.powi(k as i32 - 2))
}

/// Connectivity after percolation with `q = c/sqrt(m)`:
/// `(unconditioned, conditioned-on-initially-connected)`.
pub fn connectivity_probs(c: f64, p2: f64, d: f64) -> Result<(f64, f64)> {
    check_pd(p2, d)?;
    if c <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "c must be positive, got {c}"
        )));
    }
    let conditioned = (-2.0 * c * c * p2 / (d - 2.0 * p2)).exp();
    Ok((((d - 2.0 * p2) / d).sqrt() * conditioned, conditioned))
}

fn check_subcritical(q: f64, stats: &DegreeStats) -> Result<()> {
    let qc = stats
        .q_c
        .ok_or_else(|| Error::Undefined("no percolation threshold: E[D(D-1)] <= E[D]".into()))?;
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "q must lie in [0,1), got {q}"
        )));
    }
    if q >= qc {
        return Err(Error::Undefined(format!("q = {q} is not below q_c = {qc}")));
    }
    Ok(())
}

/// Bisection to `tol` on a sign-changing bracket `[lo, hi]`.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Scan points on `[0, 1)`: a uniform grid, then a geometric approach to 1.
fn scan_points() -> impl Iterator<Item = f64> {
    (0..256)
        .map(|j| j as f64 / 256.0)
        .chain((9..52).map(|j| 1.0 - 0.5f64.powi(j)))
}

/// Smallest root on `[0, 1)` where `f` first changes sign, if any.
fn smallest_root<F: Fn(f64) -> f64>(f: F, tol: f64) -> Option<f64> {
    let mut prev: Option<(f64, f64)> = None;
    for x in scan_points() {
        let fx = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if let Some((px, pf)) = prev {
            if (pf > 0.0) != (fx > 0.0) {
                return Some(bisect(&f, px, x, tol));
            }
        }
        prev = Some((x, fx));
    }
    None
}

const ROOT_TOL: f64 = 1e-13;

/// The ρ equation exactly as printed in the percolation literature summary:
/// `s G'_D(1 - s - ρ s) + (1 - s) d = ρ d` with `s = (1-q)^{1/2}`.
pub fn rho_printed(q: f64, stats: &DegreeStats) -> Result<f64> {
    check_subcritical(q, stats)?;
    let s = (1.0 - q).sqrt();
    let d = stats.d_bar;
    let f = |r: f64| s * stats.pgf_derivative(1.0 - s - r * s) + (1.0 - s) * d - r * d;
    let (f0, f1) = (f(0.0), f(1.0));
    if f0 == 0.0 {
        return Ok(0.0);
    }
    if (f0 > 0.0) == (f1 > 0.0) {
        return Err(Error::Undefined(format!(
            "printed rho equation has no root in [0,1] at q={q}"
        )));
    }
    Ok(bisect(f, 0.0, 1.0, ROOT_TOL))
}

/// `ξ = (1-ρ)/sqrt(1-q) + (1-ρ)²/2` with ρ from [`rho_printed`]. Kept for
/// comparison only: it does not reduce to 1 at `q = 0` and disagrees with
/// simulation; use [`xi`].
pub fn xi_printed(q: f64, stats: &DegreeStats) -> Result<f64> {
    let r = rho_printed(q, stats)?;
    Ok((1.0 - r) / (1.0 - q).sqrt() + (1.0 - r).powi(2) / 2.0)
}

/// Residual of the printed ρ equation.
pub fn rho_printed_residual(q: f64, rho: f64, stats: &DegreeStats) -> f64 {
    let s = (1.0 - q).sqrt();
    let d = stats.d_bar;
    s * stats.pgf_derivative(1.0 - s - rho * s) + (1.0 - s) * d - rho * d
}

/// Half-edge extinction probability of the exploded graph: smallest root in
/// `[0,1)` of `s G'_D(1 - s + ρ s) + (1 - s) d = ρ d`, `s = (1-q)^{1/2}`.
pub fn rho(q: f64, stats: &DegreeStats) -> Result<f64> {
    check_subcritical(q, stats)?;
    let s = (1.0 - q).sqrt();
    let d = stats.d_bar;
    let f = |r: f64| s * stats.pgf_derivative(1.0 - s + r * s) + (1.0 - s) * d - r * d;
    smallest_root(f, ROOT_TOL)
        .ok_or_else(|| Error::Undefined(format!("no rho root below 1 at q={q}")))
}

pub fn rho_residual(q: f64, rho: f64, stats: &DegreeStats) -> f64 {
    let s = (1.0 - q).sqrt();
    let d = stats.d_bar;
    s * stats.pgf_derivative(1.0 - s + rho * s) + (1.0 - s) * d - rho * d
}

/// Limit fraction of the surviving edges that lie in the giant after
/// percolation with removal probability `q < q_c`:
/// `ξ = 2(1-ρ)/sqrt(1-q) - (1-ρ)²/(1-q)`.
///
/// The exploded graph keeps `(d/2)(1-ρ²) n` giant edges; deleting the
/// appended degree-one vertices attached to the giant removes
/// `(1-s) d (1-ρ) n` of them.
pub fn xi(q: f64, stats: &DegreeStats) -> Result<f64> {
    let r = rho(q, stats)?;
    let keep = 1.0 - q;
    Ok(2.0 * (1.0 - r) / keep.sqrt() - (1.0 - r).powi(2) / keep)
}

/// The same limit by direct thinning: retained degrees are `Bin(D, 1-q)`,
/// the half-edge extinction probability η solves `d η = G'_D(q + (1-q) η)`,
/// and the giant holds a fraction `1 - η²` of the surviving edges.
pub fn xi_by_thinning(q: f64, stats: &DegreeStats) -> Result<f64> {
    check_subcritical(q, stats)?;
    let d = stats.d_bar;
    let keep = 1.0 - q;
    let g = |e: f64| d * e - stats.pgf_derivative(1.0 - keep + keep * e);
    let eta = smallest_root(g, ROOT_TOL)
        .ok_or_else(|| Error::Undefined(format!("no extinction root below 1 at q={q}")))?;
    Ok(1.0 - eta * eta)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `β_α`, the smallest `x` with `∫_0^x ξ(q) dq = α`.
pub fn beta_alpha(alpha: f64, stats: &DegreeStats) -> Result<f64> {
    let qc = stats
        .q_c
        .ok_or_else(|| Error::Undefined("no percolation threshold".into()))?;
    if alpha < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "alpha must be >= 0, got {alpha}"
        )));
    }
    if alpha == 0.0 {
        return Ok(0.0);
    }
    let xi_or_zero = |q: f64| xi(q, stats).unwrap_or(0.0);
    let top = qc * (1.0 - 1e-9);
    let total = integrate(xi_or_zero, 0.0, top, 1e-10);
    if alpha >= total {
        return Err(Error::Undefined(format!(
            "alpha = {alpha} exceeds the integral {total:.6} of xi up to q_c"
        )));
    }
    let h = |x: f64| integrate(xi_or_zero, 0.0, x, 1e-11) - alpha;
    Ok(bisect(h, 0.0, top, 1e-9))
}

/// Extinction probability of a Poisson(λ) branching process: smallest root
/// of `η = exp(-λ(1-η))`.
pub fn er_extinction(lambda: f64) -> Result<f64> {
    if lambda <= 1.0 {
        return Err(Error::Undefined(format!(
            "no giant for lambda = {lambda} <= 1"
        )));
    }
    let f = |e: f64| (-lambda * (1.0 - e)).exp() - e;
    smallest_root(f, ROOT_TOL).ok_or_else(|| Error::Undefined("no extinction root".into()))
}

/// Positive root of `η = 1 - exp(-λη)`, the fixed point written in the
/// Erdős–Rényi experiment description. Its root equals `1 - er_extinction`.
pub fn er_printed_fixed_point(lambda: f64) -> Result<f64> {
    if lambda <= 1.0 {
        return Err(Error::Undefined(format!(
            "no positive root for lambda = {lambda} <= 1"
        )));
    }
    let f = |e: f64| 1.0 - (-lambda * e).exp() - e;
    Ok(bisect(f, 1e-9, 1.0, ROOT_TOL))
}

/// Limit vertex fraction of the Erdős–Rényi giant.
pub fn er_giant_fraction(lambda: f64) -> Result<f64> {
    Ok(1.0 - er_extinction(lambda)?)
}

/// Limit edge count of the Erdős–Rényi giant per vertex, `λ(1-η²)/2`.
pub fn er_giant_edges_per_vertex(lambda: f64) -> Result<f64> {
    let eta = er_extinction(lambda)?;
    Ok(lambda * (1.0 - eta * eta) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{erased_experiment_sequence, two_three_sequence};
    use crate::graph::degree_stats;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn tail_and_star_constants() {
        assert!(close(tail_constant(1.0), 0.797_884_560_8, 1e-10));
        let s = star_tail(10_000, 100, 1.0).unwrap();
        assert!(close(s, 0.079_39, 1e-5), "{s}");
        assert!(star_tail(10, 10, 1.0).is_err());
        assert!(star_tail(10, 0, 1.0).is_err());
        assert!(star_tail(10, 3, -1.0).is_err());
    }

    #[test]
    fn gamma_accuracy() {
        assert!(close(gamma(0.75), 1.225_416_702_465_177_6, 1e-13));
        assert!(close(gamma(0.5), PI.sqrt(), 1e-13));
        assert!(close(gamma(5.0), 24.0, 1e-11));
        assert!(close(gamma(0.25), 3.625_609_908_221_908, 1e-12));
    }

    #[test]
    fn disconnect_constant_value() {
        let c = disconnect_constant(1.0, 0.5, 2.5, 1.0).unwrap();
        // 0.7978845608 * (2/3)^{1/4} * 1.2254167025
        assert!(close(c, 0.883_488_787_556_669, 1e-12), "{c}");
        let at = disconnect_constant(1.0, 0.5, 2.5, 10_000.0).unwrap();
        assert!(close(at, c / 10.0, 1e-12));
        assert!(disconnect_constant(1.0, 0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn rayleigh_law() {
        let f1 = rayleigh_pdf(1.0, 0.5, 2.5).unwrap();
        assert!(close(f1, 4.0 / 3.0 * (-2.0f64 / 3.0).exp(), 1e-15));
        assert!(close(f1, 0.6846, 1e-4));
        assert_eq!(rayleigh_cdf(0.0, 0.5, 2.5).unwrap(), 0.0);
        assert!(close(rayleigh_cdf(50.0, 0.5, 2.5).unwrap(), 1.0, 1e-15));
        let total = integrate(|x| rayleigh_pdf(x, 0.5, 2.5).unwrap(), 0.0, 12.0, 1e-12);
        assert!(close(total, 1.0, 1e-8), "{total}");
        assert!(rayleigh_pdf(1.0, 0.0, 2.5).is_err());
        assert!(rayleigh_pdf(1.0, 0.5, 0.9).is_err());
        let u = rayleigh_cdf(rayleigh_quantile(0.3, 0.5, 2.5).unwrap(), 0.5, 2.5).unwrap();
        assert!(close(u, 0.3, 1e-14));
    }

    #[test]
    fn rayleigh_cdf_is_antiderivative() {
        let h = 1e-5;
        for j in 1..=100 {
            let x = j as f64 * 0.04;
            let num = (rayleigh_cdf(x + h, 0.5, 2.5).unwrap()
                - rayleigh_cdf(x - h, 0.5, 2.5).unwrap())
                / (2.0 * h);
            assert!(
                close(num, rayleigh_pdf(x, 0.5, 2.5).unwrap(), 1e-6),
                "x={x}"
            );
        }
    }

    #[test]
    fn outside_giant_and_line_moments() {
        let c = outside_giant_constants(0.4, 2.8).unwrap();
        assert!(close(c.edges_in_lines, 0.16, 1e-14));
        assert!(close(c.vertices_outside, 0.56, 1e-14));
        let c = outside_giant_constants(0.5, 2.5).unwrap();
        assert!(close(c.edges_in_lines, 4.0 / 9.0, 1e-14));
        let z = outside_giant_constants(0.0, 2.5).unwrap();
        assert_eq!((z.edges_in_lines, z.vertices_outside), (0.0, 0.0));
        let l2 = line_first_moment(2, 0.5, 2.5, 1e3, 1e5).unwrap();
        assert!(close(l2, 4.9, 1e-12));
        assert_eq!(line_first_moment(3, 0.0, 2.5, 1e3, 1e5).unwrap(), 0.0);
        assert!(line_first_moment(1, 0.5, 2.5, 1e3, 1e5).is_err());
    }

    #[test]
    fn connectivity_constants() {
        let (un, co) = connectivity_probs(1.0, 0.5, 2.5).unwrap();
        assert!(close(co, (-2.0f64 / 3.0).exp(), 1e-15));
        assert!(close(co, 0.5134, 1e-4));
        assert!(close(un, 0.3977, 1e-4));
        assert!(close(un / co, (0.6f64).sqrt(), 1e-15));
        let (_, small) = connectivity_probs(1e-6, 0.5, 2.5).unwrap();
        assert!(close(small, 1.0, 1e-9));
        assert!(connectivity_probs(0.0, 0.5, 2.5).is_err());
    }

    #[test]
    fn xi_routes_agree_and_start_at_one() {
        let st = degree_stats(&two_three_sequence(1000).unwrap()).unwrap();
        assert_eq!(xi(0.0, &st).unwrap(), 1.0);
        for seq in [
            two_three_sequence(1000).unwrap(),
            erased_experiment_sequence(2000).unwrap(),
        ] {
            let st = degree_stats(&seq).unwrap();
            let qc = st.q_c.unwrap();
            // every edge is in the giant at q = 0 unless there are leaves
            let r0 = rho(0.0, &st).unwrap();
            assert!(close(xi(0.0, &st).unwrap(), 1.0 - r0 * r0, 1e-9));
            for j in 1..20 {
                let q = qc * j as f64 / 20.0;
                let a = xi(q, &st).unwrap();
                let b = xi_by_thinning(q, &st).unwrap();
                assert!(close(a, b, 1e-9), "q={q}: {a} vs {b}");
                assert!(a > 0.0 && a <= 1.0);
                let r = rho(q, &st).unwrap();
                assert!(rho_residual(q, r, &st).abs() < 1e-9);
            }
            assert!(xi(qc, &st).is_err());
        }
    }

    #[test]
    fn printed_xi_is_solvable_but_not_a_fraction() {
        let st = degree_stats(&two_three_sequence(1000).unwrap()).unwrap();
        let r = rho_printed(0.1, &st).unwrap();
        assert!(rho_printed_residual(0.1, r, &st).abs() < 1e-9);
        let p = xi_printed(0.1, &st).unwrap();
        assert!(p > 1.0, "printed xi(0.1) = {p}");
        // at q = 0 it gives 3/2 rather than 1
        let p0 = xi_printed(0.0, &st).unwrap();
        assert!(close(p0, 1.5, 1e-12), "{p0}");
        assert!(close(xi(0.1, &st).unwrap(), 0.991_041, 1e-6));
    }

    #[test]
    fn beta_alpha_monotone_and_vanishing() {
        let st = degree_stats(&two_three_sequence(1000).unwrap()).unwrap();
        assert_eq!(beta_alpha(0.0, &st).unwrap(), 0.0);
        let small = beta_alpha(1e-4, &st).unwrap();
        assert!(small < 2e-4);
        let mut prev = 0.0;
        for a in [0.01, 0.05, 0.1, 0.15, 0.2] {
            let b = beta_alpha(a, &st).unwrap();
            assert!(b > prev);
            let back = integrate(|q| xi(q, &st).unwrap(), 0.0, b, 1e-11);
            assert!(close(back, a, 1e-7));
            prev = b;
        }
        assert!(beta_alpha(0.9, &st).is_err());
    }

    #[test]
    fn er_fixed_points() {
        let eta = er_extinction(2.0).unwrap();
        assert!(close(eta, 0.203_187_869_979_979, 1e-10));
        assert!(close(
            er_giant_fraction(2.0).unwrap(),
            0.796_812_130_020_021,
            1e-10
        ));
        let printed = er_printed_fixed_point(2.0).unwrap();
        assert!(close(printed, 1.0 - eta, 1e-10));
        assert!(er_extinction(1.0).is_err());
        assert!(close(
            er_giant_edges_per_vertex(2.0).unwrap(),
            1.0 - eta * eta,
            1e-14
        ));
    }
}
