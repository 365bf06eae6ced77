//! Replicated experiments, their estimators and CSV output.
//!
//! Replication `r` always draws from `rng::stream(master_seed, r)`, and
//! results are reduced in replication order, so every report is a pure
//! function of the `ExperimentSpec`. A replication whose graph sampler gives up is
//! counted as a sampler failure and skipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cascade::{run_cascade, run_star_cascade, CascadeConfig, SurplusAssignment};
use crate::error::{Error, Result};
use crate::generators::{
    chained_stars, er_giant, erased_connected_cm, erased_experiment_sequence, explode, percolate,
    sample_connected_cm, square_lattice, star, two_three_sequence,
};
use crate::graph::{degree_stats, pair_half_edges, DegreeSequence, MultiGraph};
use crate::removal::{build_trace, census_of_graph};
use crate::rng::replicate;
use crate::stats::{ks_one_sample, ks_pvalue, mean_se, Proportion};
use crate::theory;
use crate::walk::{first_passages, Boundary, Sign};

pub const DEFAULT_MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphFamily {
    /// Configuration model conditioned on connectivity.
    ConnectedCm(DegreeSequence),
    /// Simple graph: erased configuration model, largest component.
    ErasedCm(DegreeSequence),
    /// `side x side` grid.
    Lattice(usize),
    Star(usize),
    ErGiant {
        n: usize,
        lambda: f64,
    },
    ChainedStars {
        count: usize,
        size: usize,
    },
}

impl GraphFamily {
    /// Families by name: `cm` (half degree 2, half degree 3), `cm-erased`
    /// (the erased-model degree recipe), `lattice` (`n` is the side),
    /// `star` (`n` leaves), `er`, `chained-stars` (`n` stars of 4 edges).
    pub fn from_name(name: &str, n: usize, lambda: f64) -> Result<Self> {
        Ok(match name {
            "cm" => GraphFamily::ConnectedCm(two_three_sequence(n)?),
            "cm-erased" => GraphFamily::ErasedCm(erased_experiment_sequence(n)?),
            "lattice" => GraphFamily::Lattice(n),
            "star" => GraphFamily::Star(n),
            "er" => GraphFamily::ErGiant { n, lambda },
            "chained-stars" => GraphFamily::ChainedStars { count: n, size: 4 },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown graph family '{other}'"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::ConnectedCm(_) => "cm",
            GraphFamily::ErasedCm(_) => "cm-erased",
            GraphFamily::Lattice(_) => "lattice",
            GraphFamily::Star(_) => "star",
            GraphFamily::ErGiant { .. } => "er",
            GraphFamily::ChainedStars { .. } => "chained-stars",
        }
    }

    /// One graph, or `None` if the sampler gave up.
    pub fn sample<R: rand::Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_attempts: usize,
    ) -> Result<Option<MultiGraph>> {
        let g = match self {
            GraphFamily::ConnectedCm(seq) => match sample_connected_cm(seq, rng, max_attempts) {
                Ok(s) => s.graph,
                Err(Error::ConnectivityExhausted { .. }) => return Ok(None),
                Err(e) => return Err(e),
            },
            GraphFamily::ErasedCm(seq) => match erased_connected_cm(seq, rng) {
                Ok(g) => g,
                Err(Error::EmptyAfterErasure) => return Ok(None),
                Err(e) => return Err(e),
            },
            GraphFamily::Lattice(side) => square_lattice(*side),
            GraphFamily::Star(m) => star(*m),
            GraphFamily::ErGiant { n, lambda } => er_giant(*n, *lambda, rng)?,
            GraphFamily::ChainedStars { count, size } => chained_stars(*count, *size),
        };
        Ok(Some(g))
    }

    pub fn sequence(&self) -> Option<&DegreeSequence> {
        match self {
            GraphFamily::ConnectedCm(s) | GraphFamily::ErasedCm(s) => Some(s),
            _ => None,
        }
    }

    /// `(p_2, d)` of the degree law, for configuration-model families.
    pub fn degree_law(&self) -> Option<(f64, f64)> {
        let st = degree_stats(self.sequence()?).ok()?;
        Some((st.p2, st.d_bar))
    }
}

/// Failure-size threshold, absolute or as a fraction of `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Abs(usize),
    Frac(f64),
}

impl Threshold {
    pub fn resolve(&self, m: usize) -> usize {
        match *self {
            Threshold::Abs(k) => k,
            Threshold::Frac(f) => ((f * m as f64).round() as usize).max(1),
        }
    }

    fn sort_key(&self) -> (u8, f64) {
        match *self {
            Threshold::Abs(k) => (0, k as f64),
            Threshold::Frac(f) => (1, f),
        }
    }
}

/// Comma-separated thresholds: `50,100` or `f:0.05,f:0.1`.
pub fn parse_k_grid(text: &str) -> Result<Vec<Threshold>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let t = if let Some(f) = tok.strip_prefix("f:") {
            let f: f64 = f
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad fraction '{tok}'")))?;
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "fraction {f} outside (0,1]"
                )));
            }
            Threshold::Frac(f)
        } else {
            let k: usize = tok
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad threshold '{tok}'")))?;
            if k == 0 {
                return Err(Error::InvalidParameter("thresholds must be >= 1".into()));
            }
            Threshold::Abs(k)
        };
        out.push(t);
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("empty k grid".into()));
    }
    if out.windows(2).any(|w| w[0].sort_key() >= w[1].sort_key()) {
        return Err(Error::InvalidParameter(
            "k grid must be strictly increasing".into(),
        ));
    }
    Ok(out)
}

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad integer '{t}'")))
        })
        .collect()
}

pub fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad number '{t}'")))
        })
        .collect()
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: lineno + 1,
            msg: format!("expected key=value, got '{line}'"),
        })?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "empty key".into(),
            });
        }
        map.insert(k.to_string(), v.trim().to_string());
    }
    Ok(map)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub family: GraphFamily,
    pub theta: f64,
    pub reps: usize,
    pub k_grid: Vec<Threshold>,
    pub master_seed: u64,
    /// Removal counts at which censuses are taken.
    pub checkpoints: Vec<usize>,
    pub max_attempts: usize,
}

impl ExperimentSpec {
    pub fn new(family: GraphFamily, theta: f64, reps: usize, master_seed: u64) -> Result<Self> {
        let spec = Self {
            family,
            theta,
            reps,
            k_grid: vec![Threshold::Abs(1)],
            master_seed,
            checkpoints: Vec::new(),
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_k_grid(mut self, k_grid: Vec<Threshold>) -> Self {
        self.k_grid = k_grid;
        self
    }

    pub fn with_checkpoints(mut self, checkpoints: Vec<usize>) -> Self {
        self.checkpoints = checkpoints;
        self
    }

    pub fn validate(&self) -> Result<()> {
        CascadeConfig::new(self.theta)?;
        if self.reps == 0 {
            return Err(Error::InvalidParameter("reps must be >= 1".into()));
        }
        if self.max_attempts == 0 {
            return Err(Error::InvalidParameter("max_attempts must be >= 1".into()));
        }
        Ok(())
    }

    /// Builds a spec from config keys `family, n, lambda, theta, reps, k,
    /// seed, checkpoints, max_attempts`.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let num = |k: &str, default: &str| -> Result<f64> {
            get(k)
                .unwrap_or(default)
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad value for {k}")))
        };
        let int = |k: &str, default: &str| -> Result<u64> {
            get(k)
                .unwrap_or(default)
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad value for {k}")))
        };
        let family = GraphFamily::from_name(
            get("family").unwrap_or("cm"),
            int("n", "2000")? as usize,
            num("lambda", "2")?,
        )?;
        let mut spec = Self::new(
            family,
            num("theta", "1")?,
            int("reps", "1000")? as usize,
            int("seed", "1")?,
        )?;
        if let Some(k) = get("k") {
            spec.k_grid = parse_k_grid(k)?;
        }
        if let Some(c) = get("checkpoints") {
            spec.checkpoints = parse_usize_list(c)?;
        }
        spec.max_attempts = int("max_attempts", &DEFAULT_MAX_ATTEMPTS.to_string())? as usize;
        spec.validate()?;
        Ok(spec)
    }
}

/// One cascade replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeRow {
    pub rep: usize,
    pub m: usize,
    pub theta: f64,
    pub a: usize,
    pub a_hat: usize,
    pub a_tilde: usize,
    pub t: usize,
    pub reached_disconnection: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub k: usize,
    pub p_hat: f64,
    pub se: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub theory: f64,
}

impl TailEstimate {
    fn new(k: usize, p: Proportion, theta: f64) -> Self {
        let (ci_low, ci_high) = p.wilson95();
        Self {
            k,
            p_hat: p.p_hat(),
            se: p.se(),
            ci_low,
            ci_high,
            theory: theory::tail_constant(theta) / (k as f64).sqrt(),
        }
    }

    /// `k^{1/2} P̂(A >= k)`.
    pub fn scaled(&self) -> f64 {
        self.p_hat * (self.k as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub estimates: Vec<TailEstimate>,
    pub rows: Vec<CascadeRow>,
    pub sampler_failures: usize,
    pub mean_m: f64,
}

pub fn run_failure_tail(spec: &ExperimentSpec) -> Result<TailReport> {
    spec.validate()?;
    let cfg = CascadeConfig::new(spec.theta)?;
    let results = replicate(
        spec.master_seed,
        spec.reps,
        |rep, rng| -> Result<Option<CascadeRow>> {
            if let GraphFamily::Star(m) = spec.family {
                let a = run_star_cascade(m, spec.theta, rng);
                return Ok(Some(CascadeRow {
                    rep,
                    m,
                    theta: spec.theta,
                    a,
                    a_hat: a,
                    a_tilde: 0,
                    t: 1,
                    reached_disconnection: a >= 1,
                }));
            }
            let Some(g) = spec.family.sample(rng, spec.max_attempts)? else {
                return Ok(None);
            };
            let trace = build_trace(&g, rng)?;
            let caps = SurplusAssignment::sample(trace.m(), rng);
            let r = run_cascade(&trace, &caps, &cfg)?;
            Ok(Some(CascadeRow {
                rep,
                m: trace.m(),
                theta: spec.theta,
                a: r.a,
                a_hat: r.a_hat,
                a_tilde: r.a_tilde,
                t: r.t,
                reached_disconnection: r.reached_disconnection,
            }))
        },
    );
    let mut rows = Vec::with_capacity(spec.reps);
    let mut failures = 0;
    for r in results {
        match r? {
            Some(row) => rows.push(row),
            None => failures += 1,
        }
    }
    let mean_m = rows.iter().map(|r| r.m as f64).sum::<f64>() / rows.len().max(1) as f64;
    let estimates = spec
        .k_grid
        .iter()
        .map(|th| {
            let p = Proportion::from_flags(rows.iter().map(|r| r.a >= th.resolve(r.m)));
            TailEstimate::new(th.resolve(mean_m.round() as usize), p, spec.theta)
        })
        .collect();
    Ok(TailReport {
        estimates,
        rows,
        sampler_failures: failures,
        mean_m,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisconnectReport {
    /// `(rep, T/sqrt(m))` for every replication that produced a graph.
    pub samples: Vec<(usize, f64)>,
    pub sampler_failures: usize,
}

impl DisconnectReport {
    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.1).collect()
    }
}

pub fn run_first_disconnect(spec: &ExperimentSpec) -> Result<DisconnectReport> {
    spec.validate()?;
    let results = replicate(
        spec.master_seed,
        spec.reps,
        |rep, rng| -> Result<Option<(usize, f64)>> {
            let Some(g) = spec.family.sample(rng, spec.max_attempts)? else {
                return Ok(None);
            };
            let trace = build_trace(&g, rng)?;
            Ok(Some((
                rep,
                trace.first_disconnect() as f64 / (trace.m() as f64).sqrt(),
            )))
        },
    );
    let mut samples = Vec::new();
    let mut failures = 0;
    for r in results {
        match r? {
            Some(s) => samples.push(s),
            None => failures += 1,
        }
    }
    Ok(DisconnectReport {
        samples,
        sampler_failures: failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub distance: f64,
    pub p_value: f64,
}

/// One-sample KS of scaled disconnection times against the Rayleigh law.
pub fn rayleigh_ks(samples: &[f64], p2: f64, d: f64) -> Result<KsOutcome> {
    theory::rayleigh_cdf(1.0, p2, d)?;
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    let distance = ks_one_sample(samples, |x| {
        theory::rayleigh_cdf(x, p2, d).unwrap_or(f64::NAN)
    });
    Ok(KsOutcome {
        distance,
        p_value: ks_pvalue(distance, samples.len()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutsideRow {
    pub i: usize,
    pub ratio_mean: f64,
    pub ratio_se: f64,
    pub theory: Option<f64>,
    pub samples: usize,
}

/// `(m/i²) |Ẽ_m(i)|` at each checkpoint `i`.
pub fn run_outside_giant(spec: &ExperimentSpec) -> Result<(Vec<OutsideRow>, usize)> {
    spec.validate()?;
    if spec.checkpoints.is_empty() {
        return Err(Error::InvalidParameter("no checkpoints given".into()));
    }
    let results = replicate(
        spec.master_seed,
        spec.reps,
        |_, rng| -> Result<Option<Vec<Option<f64>>>> {
            let Some(g) = spec.family.sample(rng, spec.max_attempts)? else {
                return Ok(None);
            };
            let trace = build_trace(&g, rng)?;
            let m = trace.m() as f64;
            Ok(Some(
                spec.checkpoints
                    .iter()
                    .map(|&i| {
                        (i <= trace.m() && i > 0)
                            .then(|| m / (i * i) as f64 * trace.outside_edges(i) as f64)
                    })
                    .collect(),
            ))
        },
    );
    let mut per_checkpoint = vec![Vec::new(); spec.checkpoints.len()];
    let mut failures = 0;
    for r in results {
        match r? {
            Some(v) => {
                for (slot, x) in per_checkpoint.iter_mut().zip(v) {
                    slot.extend(x);
                }
            }
            None => failures += 1,
        }
    }
    let theory = spec
        .family
        .degree_law()
        .and_then(|(p2, d)| theory::outside_giant_constants(p2, d).ok())
        .map(|c| c.edges_in_lines);
    let rows = spec
        .checkpoints
        .iter()
        .zip(per_checkpoint)
        .map(|(&i, xs)| {
            let (ratio_mean, ratio_se) = mean_se(&xs);
            OutsideRow {
                i,
                ratio_mean,
                ratio_se,
                theory,
                samples: xs.len(),
            }
        })
        .collect();
    Ok((rows, failures))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusRow {
    /// Vertices per line.
    pub k: usize,
    pub count_mean: f64,
    pub count_se: f64,
    pub theory: f64,
}

/// Mean number of isolated lines with `k = 2..=k_max` vertices in the
/// exploded graph at `q = i/m`, against the first-moment formula.
pub fn run_census_moments(
    seq: &DegreeSequence,
    i: usize,
    k_max: usize,
    reps: usize,
    master_seed: u64,
) -> Result<Vec<CensusRow>> {
    let m = seq.m();
    if i == 0 || i >= m {
        return Err(Error::OutOfRange {
            index: i,
            max: m - 1,
        });
    }
    let st = degree_stats(seq)?;
    let q = i as f64 / m as f64;
    let results = replicate(master_seed, reps, |_, rng| -> Result<Vec<usize>> {
        let out = explode(seq, q, rng)?;
        let census = census_of_graph(&out.intermediate);
        Ok((2..=k_max).map(|k| census.lines_with(k)).collect())
    });
    let mut counts = vec![Vec::with_capacity(reps); k_max.saturating_sub(1)];
    for r in results {
        for (slot, c) in counts.iter_mut().zip(r?) {
            slot.push(c as f64);
        }
    }
    (2..=k_max)
        .zip(counts)
        .map(|(k, xs)| {
            let (count_mean, count_se) = mean_se(&xs);
            Ok(CensusRow {
                k,
                count_mean,
                count_se,
                theory: theory::line_first_moment(k, st.p2, st.d_bar, i as f64, m as f64)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectivityRow {
    pub c: f64,
    pub q: f64,
    /// Percolated graph connected, given a connected start.
    pub conditioned: Proportion,
    /// Same without conditioning the start.
    pub unconditioned: Proportion,
    pub theory_conditioned: f64,
    pub theory_unconditioned: f64,
    pub sampler_failures: usize,
}

/// Connectivity after percolation with `q = c/sqrt(m)`.
pub fn run_connectivity(
    seq: &DegreeSequence,
    c_grid: &[f64],
    reps: usize,
    master_seed: u64,
    max_attempts: usize,
) -> Result<Vec<ConnectivityRow>> {
    let st = degree_stats(seq)?;
    let m = seq.m() as f64;
    c_grid
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let q = c / m.sqrt();
            if !(0.0..1.0).contains(&q) {
                return Err(Error::InvalidParameter(format!("q = {q} outside [0,1)")));
            }
            let (tu, tc) = theory::connectivity_probs(c, st.p2, st.d_bar)?;
            let seed = master_seed.wrapping_add(j as u64);
            let results = replicate(seed, reps, |_, rng| -> Result<(Option<bool>, bool)> {
                let cond = match sample_connected_cm(seq, rng, max_attempts) {
                    Ok(s) => Some(percolate(&s.graph, q, rng)?.is_connected()),
                    Err(Error::ConnectivityExhausted { .. }) => None,
                    Err(e) => return Err(e),
                };
                let g = pair_half_edges(seq, rng);
                Ok((cond, percolate(&g, q, rng)?.is_connected()))
            });
            let (mut cs, mut cn, mut us, mut failures) = (0, 0, 0, 0);
            for r in results {
                let (cond, unc) = r?;
                match cond {
                    Some(b) => {
                        cs += b as usize;
                        cn += 1;
                    }
                    None => failures += 1,
                }
                us += unc as usize;
            }
            Ok(ConnectivityRow {
                c,
                q,
                conditioned: Proportion::new(cs, cn),
                unconditioned: Proportion::new(us, reps),
                theory_conditioned: tc,
                theory_unconditioned: tu,
                sampler_failures: failures,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Constant,
    GPlus,
    GMinus,
}

impl BoundaryKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "const" | "constant" => Ok(BoundaryKind::Constant),
            "gplus" => Ok(BoundaryKind::GPlus),
            "gminus" => Ok(BoundaryKind::GMinus),
            _ => Err(Error::InvalidParameter(format!("unknown boundary '{s}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoundaryKind::Constant => "const",
            BoundaryKind::GPlus => "gplus",
            BoundaryKind::GMinus => "gminus",
        }
    }
}

/// Length `l` of the initial flat stretch of `g^±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlatLength {
    Abs(usize),
    /// `l = round(k^a)`.
    Power(f64),
}

impl FlatLength {
    /// `250` or `k^0.6`.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(a) = s.strip_prefix("k^") {
            let a: f64 = a
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad exponent in '{s}'")))?;
            return Ok(FlatLength::Power(a));
        }
        s.parse()
            .map(FlatLength::Abs)
            .map_err(|_| Error::InvalidParameter(format!("bad flat length '{s}'")))
    }

    pub fn resolve(&self, k: usize) -> usize {
        match *self {
            FlatLength::Abs(l) => l,
            FlatLength::Power(a) => ((k as f64).powf(a).round() as usize).max(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FptSpec {
    pub theta: f64,
    pub gamma: f64,
    pub l: FlatLength,
    pub k_grid: Vec<usize>,
    pub boundaries: Vec<BoundaryKind>,
    pub reps: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FptRow {
    pub k: usize,
    pub boundary: BoundaryKind,
    pub estimate: Proportion,
    pub theory: f64,
}

/// First-passage tails `P̂(T_g > k)`; all boundaries at one `k` share the
/// same walks.
pub fn run_fpt(spec: &FptSpec) -> Result<Vec<FptRow>> {
    CascadeConfig::new(spec.theta)?;
    let mut rows = Vec::new();
    for &k in &spec.k_grid {
        let l = spec.l.resolve(k);
        let bs = spec
            .boundaries
            .iter()
            .map(|b| match b {
                BoundaryKind::Constant => Ok(Boundary::Constant(1.0 - spec.theta)),
                BoundaryKind::GPlus => Boundary::power_after(spec.theta, l, spec.gamma, Sign::Plus),
                BoundaryKind::GMinus => {
                    Boundary::power_after(spec.theta, l, spec.gamma, Sign::Minus)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Boundary> = bs.iter().collect();
        let ts = replicate(spec.master_seed, spec.reps, |_, rng| {
            first_passages(&refs, k, rng)
        });
        let mut survivors = vec![0usize; bs.len()];
        for t in ts {
            for (s, &t) in survivors.iter_mut().zip(&t?) {
                *s += (t > k) as usize;
            }
        }
        for (b, s) in spec.boundaries.iter().zip(survivors) {
            rows.push(FptRow {
                k,
                boundary: *b,
                estimate: Proportion::new(s, spec.reps),
                theory: theory::tail_constant(spec.theta) / (k as f64).sqrt(),
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GiantFraction {
    pub mean: f64,
    pub se: f64,
    pub theory: f64,
    pub sampler_failures: usize,
}

/// Giant edges over `(1-q) m` after percolating the erased configuration
/// model, against `ξ(q)`.
pub fn run_giant_fraction(
    seq: &DegreeSequence,
    q: f64,
    reps: usize,
    master_seed: u64,
) -> Result<GiantFraction> {
    let st = degree_stats(seq)?;
    let theory = theory::xi(q, &st)?;
    let results = replicate(master_seed, reps, |_, rng| -> Result<Option<f64>> {
        let g = match erased_connected_cm(seq, rng) {
            Ok(g) => g,
            Err(Error::EmptyAfterErasure) => return Ok(None),
            Err(e) => return Err(e),
        };
        let p = percolate(&g, q, rng)?;
        let giant = p.largest_component().map_or(0, |c| c.m());
        Ok(Some(giant as f64 / ((1.0 - q) * g.m() as f64)))
    });
    let mut xs = Vec::new();
    let mut failures = 0;
    for r in results {
        match r? {
            Some(x) => xs.push(x),
            None => failures += 1,
        }
    }
    let (mean, se) = mean_se(&xs);
    Ok(GiantFraction {
        mean,
        se,
        theory,
        sampler_failures: failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingTimeProbes {
    /// Traces with `υ(k) <= k - k^a`.
    pub upsilon_low: Proportion,
    /// Traces with `ϱ(k) > k + k^b`.
    pub varrho_high: Proportion,
    pub sampler_failures: usize,
}

/// Frequencies of the two stopping-time deviations on connected
/// configuration-model traces.
pub fn run_stopping_time_probes(
    seq: &DegreeSequence,
    k: usize,
    upsilon_exponent: f64,
    varrho_exponent: f64,
    reps: usize,
    master_seed: u64,
    max_attempts: usize,
) -> Result<StoppingTimeProbes> {
    let kf = k as f64;
    let low = kf - kf.powf(upsilon_exponent);
    let high = kf + kf.powf(varrho_exponent);
    let results = replicate(
        master_seed,
        reps,
        |_, rng| -> Result<Option<(bool, bool)>> {
            let g = match sample_connected_cm(seq, rng, max_attempts) {
                Ok(s) => s.graph,
                Err(Error::ConnectivityExhausted { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let trace = build_trace(&g, rng)?;
            Ok(Some((
                trace.upsilon(k)? as f64 <= low,
                trace.varrho(k)? as f64 > high,
            )))
        },
    );
    let (mut u, mut v, mut n, mut failures) = (0, 0, 0, 0);
    for r in results {
        match r? {
            Some((a, b)) => {
                u += a as usize;
                v += b as usize;
                n += 1;
            }
            None => failures += 1,
        }
    }
    Ok(StoppingTimeProbes {
        upsilon_low: Proportion::new(u, n),
        varrho_high: Proportion::new(v, n),
        sampler_failures: failures,
    })
}

/// `(giant edges, components)` of a graph, components counting isolated
/// vertices.
pub fn giant_and_components(g: &MultiGraph) -> (usize, usize) {
    let (_, k) = g.component_labels();
    (g.largest_component().map_or(0, |c| c.m()), k)
}

/// `(giant edges, components)` per replication.
pub type Summaries = Vec<(usize, usize)>;

/// Summaries of `reps` explosion samples and `reps` percolated
/// configuration-model samples, in that order.
pub fn explosion_vs_percolation(
    seq: &DegreeSequence,
    q: f64,
    reps: usize,
    master_seed: u64,
) -> Result<(Summaries, Summaries)> {
    let exploded = replicate(master_seed, reps, |_, rng| {
        explode(seq, q, rng).map(|o| giant_and_components(&o.graph))
    });
    let percolated = replicate(master_seed ^ 0x5bd1_e995, reps, |_, rng| {
        let g = pair_half_edges(seq, rng);
        percolate(&g, q, rng).map(|p| giant_and_components(&p))
    });
    Ok((
        exploded.into_iter().collect::<Result<_>>()?,
        percolated.into_iter().collect::<Result<_>>()?,
    ))
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn tails_csv(estimates: &[TailEstimate]) -> String {
    let mut s = String::from("k,p_hat,se,ci_low,ci_high,theory\n");
    for e in estimates {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            e.k, e.p_hat, e.se, e.ci_low, e.ci_high, e.theory
        );
    }
    s
}

pub fn cascade_rows_csv(rows: &[CascadeRow]) -> String {
    let mut s = String::from("rep,m,theta,A,A_hat,A_tilde,T,reached_disconnection\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.rep, r.m, r.theta, r.a, r.a_hat, r.a_tilde, r.t, r.reached_disconnection as u8
        );
    }
    s
}

pub fn disconnect_csv(samples: &[(usize, f64)]) -> String {
    let mut s = String::from("rep,t_scaled\n");
    for (rep, t) in samples {
        let _ = writeln!(s, "{rep},{t}");
    }
    s
}

pub fn outside_csv(rows: &[OutsideRow]) -> String {
    let mut s = String::from("i,ratio_mean,ratio_se,theory\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            r.i,
            r.ratio_mean,
            r.ratio_se,
            opt(r.theory)
        );
    }
    s
}

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut s = String::from("k,count_mean,theory\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{}", r.k, r.count_mean, r.theory);
    }
    s
}

pub fn connectivity_csv(rows: &[ConnectivityRow]) -> String {
    let mut s = String::from("c,q,conditioned,p_hat,se,theory\n");
    for r in rows {
        for (flag, p, t) in [
            (1, r.conditioned, r.theory_conditioned),
            (0, r.unconditioned, r.theory_unconditioned),
        ] {
            let _ = writeln!(s, "{},{},{flag},{},{},{t}", r.c, r.q, p.p_hat(), p.se());
        }
    }
    s
}

pub fn fpt_csv(rows: &[FptRow]) -> String {
    let mut s = String::from("k,boundary,p_hat,se,theory\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.k,
            r.boundary.name(),
            r.estimate.p_hat(),
            r.estimate.se(),
            r.theory
        );
    }
    s
}
