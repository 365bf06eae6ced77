//! Estimators and goodness-of-fit statistics.

/// Two-sided 97.5% standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Binomial count with Wald standard error and Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Proportion {
    pub successes: usize,
    pub trials: usize,
}

impl Proportion {
    pub fn new(successes: usize, trials: usize) -> Self {
        assert!(
            successes <= trials,
            "{successes} successes in {trials} trials"
        );
        Self { successes, trials }
    }

    pub fn from_flags<I: IntoIterator<Item = bool>>(flags: I) -> Self {
        let (mut s, mut t) = (0, 0);
        for f in flags {
            s += f as usize;
            t += 1;
        }
        Self::new(s, t)
    }

    pub fn p_hat(&self) -> f64 {
        if self.trials == 0 {
            return f64::NAN;
        }
        self.successes as f64 / self.trials as f64
    }

    pub fn se(&self) -> f64 {
        let p = self.p_hat();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    pub fn wilson(&self, z: f64) -> (f64, f64) {
        if self.trials == 0 {
            return (0.0, 1.0);
        }
        let n = self.trials as f64;
        let p = self.p_hat();
        let z2 = z * z;
        let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
        let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        // clamp guards rounding at p = 0 or 1
        (
            (centre - half).max(0.0).min(p),
            (centre + half).min(1.0).max(p),
        )
    }

    pub fn wilson95(&self) -> (f64, f64) {
        self.wilson(Z95)
    }
}

/// Sample mean and its standard error.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Kolmogorov distance between the empirical law of `samples` and `cdf`.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Survival function of the Kolmogorov distribution,
/// `Q(λ) = 2 Σ (-1)^{j-1} exp(-2 j² λ²)`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=200 {
        let j = j as f64;
        let term = (-2.0 * j * j * lambda * lambda).exp();
        sum += if j as u64 % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Asymptotic p-value of a one-sample distance `d` over `n` points, with
/// the usual small-sample correction of the argument.
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    let rn = (n as f64).sqrt();
    kolmogorov_q((rn + 0.12 + 0.11 / rn) * d)
}

pub fn ks_two_sample_pvalue(d: f64, na: usize, nb: usize) -> f64 {
    let ne = (na * nb) as f64 / (na + nb) as f64;
    let rn = ne.sqrt();
    kolmogorov_q((rn + 0.12 + 0.11 / rn) * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use rand::Rng;

    #[test]
    fn proportion_basics() {
        let p = Proportion::new(30, 100);
        assert!((p.p_hat() - 0.3).abs() < 1e-15);
        assert!((p.se() - (0.3f64 * 0.7 / 100.0).sqrt()).abs() < 1e-15);
        let (lo, hi) = p.wilson95();
        assert!(
            (lo - 0.219_1).abs() < 1e-3 && (hi - 0.396_0).abs() < 1e-3,
            "{lo} {hi}"
        );
        let (lo, hi) = Proportion::new(0, 50).wilson95();
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.1);
        let (lo, hi) = Proportion::new(50, 50).wilson95();
        assert!(lo < 1.0 && hi == 1.0);
        assert_eq!(
            Proportion::from_flags([true, false, true]),
            Proportion::new(2, 3)
        );
    }

    #[test]
    fn wilson_coverage() {
        let mut rng = stream(42, 0);
        for &(p, n) in &[(0.02, 200usize), (0.3, 50), (0.5, 1000)] {
            let trials = 10_000;
            let mut covered = 0;
            for _ in 0..trials {
                let s = (0..n).filter(|_| rng.random::<f64>() < p).count();
                let (lo, hi) = Proportion::new(s, n).wilson95();
                covered += (lo <= p && p <= hi) as usize;
            }
            let cov = covered as f64 / trials as f64;
            assert!((0.93..=0.97).contains(&cov), "p={p} n={n}: {cov}");
        }
    }

    #[test]
    fn mean_and_se() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert!(mean_se(&[]).0.is_nan());
    }

    #[test]
    fn ks_distances() {
        // points at the midpoints of n equal cells sit 1/(2n) from the cdf
        let xs: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) / 10.0).collect();
        assert!((ks_one_sample(&xs, |x| x.clamp(0.0, 1.0)) - 0.05).abs() < 1e-12);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((ks_two_sample(&[1.0, 3.0], &[2.0, 4.0]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kolmogorov_tail_values() {
        // reference values of the Kolmogorov survival function
        assert!((kolmogorov_q(1.0) - 0.269_999_671_9).abs() < 1e-8);
        assert!((kolmogorov_q(1.358_1) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_q(1.627_6) - 0.01).abs() < 1e-4);
        assert_eq!(kolmogorov_q(0.0), 1.0);
    }

    #[test]
    fn ks_calibration_on_uniforms() {
        let mut rejections = 0;
        for rep in 0..400 {
            let mut rng = stream(8, rep);
            let xs: Vec<f64> = (0..500).map(|_| rng.random()).collect();
            let d = ks_one_sample(&xs, |x| x);
            rejections += (ks_pvalue(d, xs.len()) < 0.05) as usize;
        }
        // about 20 expected
        assert!((5..=40).contains(&rejections), "{rejections}");
    }
}
