//! Random-walk representation of the cascade.
//!
//! The centered walk `S_i = Σ (1 - Exp_j)` and its bridge pinned at
//! `S_{m+1} = 0`, first-passage times below moving boundaries, and the
//! giant-increment walk `S_{i,m} = Σ (L_{j,m} - Exp_j)` read off a removal
//! trace.

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::generators::sample_connected_cm;
use crate::graph::DegreeSequence;
use crate::removal::{build_trace, RemovalTrace};
use crate::rng::replicate;
use crate::stats::{Proportion, Z95};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncrementLaw {
    /// `1 - Exp(1)`, independent.
    Exponential,
    /// `1 - Exp(1)` conditioned on `S_{m+1} = 0`.
    Bridge,
    /// `L_{i,m} - Exp(1)`.
    GiantIncrement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkPath {
    /// `S_0 = 0, S_1, ..., S_T`.
    pub values: Vec<f64>,
    pub law: IncrementLaw,
}

impl WalkPath {
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }
}

pub fn sample_walk<R: Rng + ?Sized>(k: usize, rng: &mut R) -> WalkPath {
    let mut values = Vec::with_capacity(k + 1);
    let mut s = 0.0;
    values.push(s);
    for _ in 0..k {
        let e: f64 = Exp1.sample(rng);
        s += 1.0 - e;
        values.push(s);
    }
    WalkPath {
        values,
        law: IncrementLaw::Exponential,
    }
}

/// Bridge of `m + 1` steps: exponentials rescaled to sum to `m + 1`.
pub fn sample_bridge<R: Rng + ?Sized>(m: usize, rng: &mut R) -> WalkPath {
    let exps: Vec<f64> = (0..=m).map(|_| Exp1.sample(rng)).collect();
    let scale = (m + 1) as f64 / exps.iter().sum::<f64>();
    let mut values = Vec::with_capacity(m + 2);
    let mut s = 0.0;
    values.push(s);
    for e in exps {
        s += 1.0 - e * scale;
        values.push(s);
    }
    WalkPath {
        values,
        law: IncrementLaw::Bridge,
    }
}

/// Rescaled exponentials of a bridge of `m + 1` steps, drawn one at a time
/// through uniform spacings, so a walk that stops early costs little.
pub struct BridgeIncrements<'a, R: ?Sized> {
    rng: &'a mut R,
    total: usize,
    drawn: usize,
    mass: f64,
}

impl<'a, R: Rng + ?Sized> BridgeIncrements<'a, R> {
    pub fn new(m: usize, rng: &'a mut R) -> Self {
        Self {
            rng,
            total: m + 1,
            drawn: 0,
            mass: 1.0,
        }
    }
}

impl<R: Rng + ?Sized> Iterator for BridgeIncrements<'_, R> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.drawn == self.total {
            return None;
        }
        let left = self.total - self.drawn;
        let spacing = if left == 1 {
            self.mass
        } else {
            // first of `left` uniform spacings of the remaining mass
            let v: f64 = self.rng.random();
            self.mass * -((v.ln() / (left - 1) as f64).exp_m1())
        };
        self.mass -= spacing;
        self.drawn += 1;
        Some(spacing * self.total as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    Constant(f64),
    /// `level` up to step `l`, then `±i^γ`.
    PowerAfter {
        level: f64,
        l: usize,
        gamma: f64,
        sign: Sign,
    },
    /// `levels[j]` on `breakpoints[j-1] < i <= breakpoints[j]`; the last
    /// level holds beyond the last breakpoint.
    Piecewise {
        levels: Vec<f64>,
        breakpoints: Vec<usize>,
    },
    /// Explicit `g_1, g_2, ...`.
    Series(Vec<f64>),
}

impl Boundary {
    /// `1 - θ` up to `l`, then `i^γ` (`Sign::Plus`) or `-i^γ`.
    pub fn power_after(theta: f64, l: usize, gamma: f64, sign: Sign) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (0, 1/2), got {gamma}"
            )));
        }
        if l == 0 {
            return Err(Error::InvalidParameter("l must be >= 1".into()));
        }
        Ok(Boundary::PowerAfter {
            level: 1.0 - theta,
            l,
            gamma,
            sign,
        })
    }

    pub fn piecewise(levels: Vec<f64>, breakpoints: Vec<usize>) -> Result<Self> {
        if levels.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidParameter(
                "piecewise boundary needs one more level than breakpoints".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("breakpoints must increase".into()));
        }
        Ok(Boundary::Piecewise {
            levels,
            breakpoints,
        })
    }

    /// Boundary value at step `i >= 1`, or `None` past the end of a series.
    pub fn at(&self, i: usize) -> Option<f64> {
        match self {
            Boundary::Constant(c) => Some(*c),
            Boundary::PowerAfter {
                level,
                l,
                gamma,
                sign,
            } => Some(if i <= *l {
                *level
            } else {
                let p = (i as f64).powf(*gamma);
                match sign {
                    Sign::Plus => p,
                    Sign::Minus => -p,
                }
            }),
            Boundary::Piecewise {
                levels,
                breakpoints,
            } => Some(levels[breakpoints.partition_point(|&b| b < i)]),
            Boundary::Series(v) => i.checked_sub(1).and_then(|j| v.get(j)).copied(),
        }
    }
}

/// `min { i >= 1 : S_i < b(i) }`, or `horizon + 1`.
pub fn first_passage(path: &WalkPath, b: &Boundary) -> Result<usize> {
    for (i, &s) in path.values.iter().enumerate().skip(1) {
        let g = b.at(i).ok_or(Error::OutOfRange {
            index: i,
            max: i - 1,
        })?;
        if s < g {
            return Ok(i);
        }
    }
    Ok(path.horizon() + 1)
}

/// First passages of one free walk below several boundaries (common random
/// numbers). The walk is extended only until every boundary is crossed or
/// `horizon` is reached.
pub fn first_passages<R: Rng + ?Sized>(
    boundaries: &[&Boundary],
    horizon: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let mut out = vec![horizon + 1; boundaries.len()];
    let mut open = boundaries.len();
    let mut s = 0.0;
    for i in 1..=horizon {
        if open == 0 {
            break;
        }
        let e: f64 = Exp1.sample(rng);
        s += 1.0 - e;
        for (t, b) in out.iter_mut().zip(boundaries) {
            if *t <= horizon {
                continue;
            }
            let g = b.at(i).ok_or(Error::OutOfRange {
                index: i,
                max: i - 1,
            })?;
            if s < g {
                *t = i;
                open -= 1;
            }
        }
    }
    Ok(out)
}

/// `P̂(T_b > k)` over `reps` free walks.
pub fn fpt_tail(b: &Boundary, k: usize, reps: usize, master_seed: u64) -> Result<Proportion> {
    let ts = replicate(master_seed, reps, |_, rng| {
        first_passages(&[b], k, rng).map(|t| t[0])
    });
    let mut flags = Vec::with_capacity(reps);
    for t in ts {
        flags.push(t? > k);
    }
    Ok(Proportion::from_flags(flags))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceRatio {
    /// Survivors past `k` under the moving boundary.
    pub moving: Proportion,
    /// Survivors past `k` under the constant boundary `1 - θ`.
    pub constant: Proportion,
    pub ratio: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Paired estimate of `P(T_g > k) / P(T_{1-θ} > k)` for `g = g^±`.
///
/// With common random numbers one survivor set contains the other, so the
/// ratio is a binomial proportion (or its reciprocal) and gets a Wilson
/// interval.
pub fn boundary_equivalence_ratio(
    sign: Sign,
    theta: f64,
    l: usize,
    gamma: f64,
    k: usize,
    reps: usize,
    master_seed: u64,
) -> Result<EquivalenceRatio> {
    let g = Boundary::power_after(theta, l, gamma, sign)?;
    let c = Boundary::Constant(1.0 - theta);
    let pairs = replicate(master_seed, reps, |_, rng| {
        first_passages(&[&g, &c], k, rng)
    });
    let (mut both, mut only_g, mut only_c) = (0usize, 0usize, 0usize);
    for p in pairs {
        let p = p?;
        match (p[0] > k, p[1] > k) {
            (true, true) => both += 1,
            (true, false) => only_g += 1,
            (false, true) => only_c += 1,
            _ => {}
        }
    }
    let moving = Proportion::new(both + only_g, reps);
    let constant = Proportion::new(both + only_c, reps);
    let ratio = moving.p_hat() / constant.p_hat();
    let (ci_low, ci_high) = match sign {
        Sign::Plus => Proportion::new(both, both + only_c).wilson(Z95),
        Sign::Minus => {
            let (lo, hi) = Proportion::new(both, both + only_g).wilson(Z95);
            (1.0 / hi, 1.0 / lo)
        }
    };
    Ok(EquivalenceRatio {
        moving,
        constant,
        ratio,
        ci_low,
        ci_high,
    })
}

/// `L_{1,m}(θ), ..., L_{m+1,m}(θ)` for one trace.
#[derive(Debug, Clone, PartialEq)]
pub struct GiantIncrements {
    pub theta: f64,
    pub values: Vec<f64>,
}

impl GiantIncrements {
    pub fn m(&self) -> usize {
        self.values.len() - 1
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `Y_{i,m} = Σ_{j<=i} (1 - L_{j,m})` for `i = 0..=m+1`.
    pub fn excursion(&self) -> Vec<f64> {
        let mut y = Vec::with_capacity(self.values.len() + 1);
        let mut acc = 0.0;
        y.push(acc);
        for &l in &self.values {
            acc += 1.0 - l;
            y.push(acc);
        }
        y
    }

    /// Whether `|Y_{i,m}| > i^γ` for some `1 <= i <= k`.
    pub fn excursion_exceeds(&self, k: usize, gamma: f64) -> bool {
        let mut acc = 0.0;
        for (j, &l) in self.values.iter().take(k).enumerate() {
            acc += 1.0 - l;
            if acc.abs() > ((j + 1) as f64).powf(gamma) {
                return true;
            }
        }
        false
    }
}

pub fn giant_increments(trace: &RemovalTrace, theta: f64) -> GiantIncrements {
    let m = trace.m();
    let giant = trace.giant_edges();
    let in_giant = trace.in_giant();
    let mut values = Vec::with_capacity(m + 1);
    values.push(theta);
    let mut sum = theta;
    for i in 2..=m + 1 {
        let l = if in_giant[i - 2] {
            (m as f64 + 1.0 - sum) / giant[i - 2] as f64
        } else {
            0.0
        };
        values.push(l);
        sum += l;
    }
    GiantIncrements { theta, values }
}

fn tau_from<I: Iterator<Item = f64>>(inc: &GiantIncrements, theta: f64, exps: I) -> usize {
    let m = inc.m();
    let floor = 1.0 - theta;
    let mut s = 0.0;
    for (i, (l, e)) in inc.values[..m].iter().zip(exps).enumerate() {
        s += l - e;
        if s < floor {
            return i + 1;
        }
    }
    m + 1
}

/// `τ_m = min { i <= m : S_{i,m} < 1 - θ }` with free exponentials and the
/// increments `L_{j,m}(1)`; `m + 1` if no crossing.
pub fn tau_m<R: Rng + ?Sized>(inc: &GiantIncrements, theta: f64, rng: &mut R) -> usize {
    let exps = std::iter::repeat_with(|| -> f64 { Exp1.sample(rng) });
    tau_from(inc, theta, exps)
}

/// `τ_m` on the bridge, conditioned on `S_{m+1,m} = 0`.
pub fn tau_m_bridge<R: Rng + ?Sized>(inc: &GiantIncrements, theta: f64, rng: &mut R) -> usize {
    let m = inc.m();
    tau_from(inc, theta, BridgeIncrements::new(m, rng))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauTails {
    pub unconditioned: Proportion,
    pub conditioned: Proportion,
    pub sampler_failures: usize,
}

/// `(P̂(τ_m > k), P̂(τ_m > k | S_{m+1,m} = 0))` on the connected
/// configuration model.
pub fn tau_tail_vs_bridge(
    seq: &DegreeSequence,
    theta: f64,
    k: usize,
    reps: usize,
    master_seed: u64,
    max_attempts: usize,
) -> Result<TauTails> {
    if k > seq.m() {
        return Err(Error::OutOfRange {
            index: k,
            max: seq.m(),
        });
    }
    let rows = replicate(
        master_seed,
        reps,
        |_, rng| -> Result<Option<(bool, bool)>> {
            let g = match sample_connected_cm(seq, rng, max_attempts) {
                Ok(s) => s.graph,
                Err(Error::ConnectivityExhausted { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let trace = build_trace(&g, rng)?;
            let inc = giant_increments(&trace, 1.0);
            let free = tau_m(&inc, theta, rng) > k;
            let pinned = tau_m_bridge(&inc, theta, rng) > k;
            Ok(Some((free, pinned)))
        },
    );
    let (mut fs, mut ps, mut n, mut failures) = (0, 0, 0, 0);
    for r in rows {
        match r? {
            Some((f, p)) => {
                fs += f as usize;
                ps += p as usize;
                n += 1;
            }
            None => failures += 1,
        }
    }
    Ok(TauTails {
        unconditioned: Proportion::new(fs, n),
        conditioned: Proportion::new(ps, n),
        sampler_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{square_lattice, star};
    use crate::rng::stream;

    #[test]
    fn bridge_returns_to_zero() {
        let mut rng = stream(1, 0);
        for m in [1usize, 10, 1000] {
            let p = sample_bridge(m, &mut rng);
            assert_eq!(p.horizon(), m + 1);
            assert_eq!(p.values[0], 0.0);
            assert!(p.values[m + 1].abs() < 1e-9);
            let lazy: f64 = BridgeIncrements::new(m, &mut rng).map(|e| 1.0 - e).sum();
            assert!(lazy.abs() < 1e-9);
            assert_eq!(BridgeIncrements::new(m, &mut rng).count(), m + 1);
        }
    }

    #[test]
    fn free_walk_moments() {
        let reps = 100_000;
        let xs: Vec<f64> = replicate(2, reps, |_, rng| sample_walk(100, rng).values[100]);
        let (mean, se) = crate::stats::mean_se(&xs);
        assert!(mean.abs() < 3.0 * se, "{mean} {se}");
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
        // sd of the sample variance is about 100 * sqrt(8 / reps) here
        assert!(
            (var - 100.0).abs() < 3.0 * 100.0 * (8.0 / reps as f64).sqrt(),
            "{var}"
        );
    }

    #[test]
    fn lazy_bridge_matches_batch_in_mean() {
        let reps = 20_000;
        let m = 20;
        let lazy = replicate(4, reps, |_, rng| {
            BridgeIncrements::new(m, rng).take(5).sum::<f64>()
        });
        let batch = replicate(5, reps, |_, rng| -sample_bridge(m, rng).values[5] + 5.0);
        let (a, sa) = crate::stats::mean_se(&lazy);
        let (b, sb) = crate::stats::mean_se(&batch);
        assert!((a - 5.0).abs() < 4.0 * sa && (b - 5.0).abs() < 4.0 * sb);
        let d = crate::stats::ks_two_sample(&lazy, &batch);
        assert!(crate::stats::ks_two_sample_pvalue(d, reps, reps) > 0.001);
    }

    #[test]
    fn first_passage_rules() {
        let path = WalkPath {
            values: vec![0.0, 0.5, -0.2, 0.3],
            law: IncrementLaw::Exponential,
        };
        assert_eq!(first_passage(&path, &Boundary::Constant(0.0)).unwrap(), 2);
        assert_eq!(first_passage(&path, &Boundary::Constant(-1.0)).unwrap(), 4);
        assert_eq!(
            first_passage(&path, &Boundary::Constant(f64::INFINITY)).unwrap(),
            1
        );
        assert!(first_passage(&path, &Boundary::Series(vec![-1.0])).is_err());
        let pw = Boundary::piecewise(vec![-1.0, 0.4], vec![2]).unwrap();
        assert_eq!(pw.at(2), Some(-1.0));
        assert_eq!(pw.at(3), Some(0.4));
        assert_eq!(first_passage(&path, &pw).unwrap(), 3);
        assert!(Boundary::power_after(1.0, 5, 0.6, Sign::Plus).is_err());
        let gp = Boundary::power_after(1.0, 5, 0.3, Sign::Minus).unwrap();
        assert_eq!(gp.at(5), Some(0.0));
        assert!((gp.at(6).unwrap() + 6f64.powf(0.3)).abs() < 1e-15);
    }

    #[test]
    fn single_step_survival() {
        let p = fpt_tail(&Boundary::Constant(0.0), 1, 100_000, 3).unwrap();
        let want = 1.0 - (-1.0f64).exp();
        assert!((p.p_hat() - want).abs() < 3.0 * p.se());
    }

    #[test]
    fn lower_boundary_never_stops_earlier() {
        let hi = Boundary::Constant(0.0);
        let lo = Boundary::power_after(1.0, 10, 0.3, Sign::Minus).unwrap();
        for rep in 0..2000 {
            let mut rng = stream(6, rep);
            let t = first_passages(&[&hi, &lo], 500, &mut rng).unwrap();
            assert!(t[1] >= t[0]);
        }
    }

    #[test]
    fn ratio_is_one_for_identical_boundaries() {
        let r = boundary_equivalence_ratio(Sign::Plus, 1.0, 200, 0.3, 200, 5000, 9).unwrap();
        assert_eq!(r.ratio, 1.0);
        assert_eq!(r.moving, r.constant);
    }

    #[test]
    fn giant_increments_on_star_are_one() {
        let trace = build_trace(&star(50), &mut stream(1, 2)).unwrap();
        let inc = giant_increments(&trace, 1.0);
        assert!(inc.values.iter().all(|&l| (l - 1.0).abs() < 1e-12));
        assert!(inc.excursion().iter().all(|y| y.abs() < 1e-10));
    }

    #[test]
    fn giant_increments_identities() {
        for rep in 0..200 {
            let mut rng = stream(7, rep);
            let trace = build_trace(&square_lattice(8), &mut rng).unwrap();
            let m = trace.m();
            for theta in [1.0, 0.3, 4.0] {
                let inc = giant_increments(&trace, theta);
                assert_eq!(inc.values.len(), m + 1);
                assert!((inc.sum() - (m + 1) as f64).abs() < 1e-9 * m as f64);
                for i in 2..=m + 1 {
                    // once the sum reaches m + 1 later giant steps add zero too
                    if !trace.in_giant()[i - 2] {
                        assert_eq!(inc.values[i - 1], 0.0);
                    } else if i <= trace.first_disconnect() {
                        assert!(inc.values[i - 1] > 0.0);
                    }
                }
            }
            let inc = giant_increments(&trace, 1.0);
            for i in 2..trace.first_disconnect().min(m) {
                let l = inc.values[i - 1];
                assert!(
                    l >= 1.0 - 1e-12 && l <= 1.0 + 2.0 / (m - i) as f64,
                    "i={i} l={l}"
                );
            }
            let t = tau_m(&inc, 1.0, &mut rng);
            assert!((1..=m + 1).contains(&t));
        }
    }

    #[test]
    fn tau_tails_trivial_threshold() {
        let seq = crate::generators::two_three_sequence(40).unwrap();
        let t = tau_tail_vs_bridge(&seq, 1.0, 0, 50, 1, 1000).unwrap();
        assert_eq!(t.unconditioned.p_hat(), 1.0);
        assert_eq!(t.conditioned.p_hat(), 1.0);
    }
}
