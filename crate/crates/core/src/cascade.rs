//! Load-surge cascade on top of a removal trace.
//!
//! Surplus capacities are the order statistics of `m` uniforms, attached to
//! the trace positionally: the `j`-th smallest capacity belongs to the edge
//! removed at step `j`. Every edge in a component carries the same surge
//! `l`; a failure in a component with `E` edges raises it to
//! `l + (1 - l)/E`. A component whose next edge (in removal order) holds
//! its capacity stops for good; a component that splits hands its surge to
//! both halves.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::generators::sample_connected_cm;
use crate::graph::{degree_stats, DegreeSequence};
use crate::removal::{build_trace, RemovalTrace};
use crate::rng::replicate;
use crate::theory;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeConfig {
    pub theta: f64,
}

impl CascadeConfig {
    pub fn new(theta: f64) -> Result<Self> {
        if theta > 0.0 && theta.is_finite() {
            Ok(Self { theta })
        } else {
            Err(Error::InvalidParameter(format!(
                "theta must be positive, got {theta}"
            )))
        }
    }
}

/// Sorted surplus capacities `U_(1) <= ... <= U_(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurplusAssignment {
    sorted: Vec<f64>,
}

impl SurplusAssignment {
    /// Uniform order statistics from normalized exponential partial sums,
    /// which avoids the sort.
    pub fn sample<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut sorted = Vec::with_capacity(m);
        let mut acc = 0.0;
        for _ in 0..m {
            let e: f64 = Exp1.sample(rng);
            acc += e;
            sorted.push(acc);
        }
        let e: f64 = Exp1.sample(rng);
        let total = acc + e;
        for u in &mut sorted {
            *u /= total;
        }
        Self { sorted }
    }

    pub fn from_sorted(sorted: Vec<f64>) -> Result<Self> {
        if sorted.iter().any(|u| !(0.0..=1.0).contains(u)) {
            return Err(Error::InvalidParameter(
                "capacities must lie in [0,1]".into(),
            ));
        }
        if sorted.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("capacities must be sorted".into()));
        }
        Ok(Self { sorted })
    }

    /// Sorts arbitrary capacities in `[0,1]`.
    pub fn from_unsorted(mut caps: Vec<f64>) -> Result<Self> {
        caps.sort_by(f64::total_cmp);
        Self::from_sorted(caps)
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }
}

/// State of one live component during the cascade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentLoadState {
    pub surge: f64,
    /// Failures perceived along this component's lineage.
    pub perceived: usize,
    pub alive_edges: usize,
}

/// Where the cascade ended inside one component lineage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentStop {
    /// Split-forest node.
    pub node: usize,
    /// Removal step of the edge that held, or `None` if the component
    /// failed completely.
    pub step: Option<usize>,
    pub state: ComponentLoadState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FailureEvent {
    pub edge: u32,
    pub step: usize,
    /// Surge that broke the edge.
    pub surge: f64,
    /// Edges in the component just before the failure.
    pub edges_before: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CascadeResult {
    pub a: usize,
    pub a_hat: usize,
    pub a_tilde: usize,
    /// First-disconnection time of the trace.
    pub t: usize,
    pub reached_disconnection: bool,
    pub stops: Vec<ComponentStop>,
}

pub fn run_cascade(
    trace: &RemovalTrace,
    capacities: &SurplusAssignment,
    cfg: &CascadeConfig,
) -> Result<CascadeResult> {
    simulate(trace, capacities, cfg, None)
}

/// [`run_cascade`] that also returns every failure in chronological order.
pub fn run_cascade_logged(
    trace: &RemovalTrace,
    capacities: &SurplusAssignment,
    cfg: &CascadeConfig,
) -> Result<(CascadeResult, Vec<FailureEvent>)> {
    let mut log = Vec::new();
    let res = simulate(trace, capacities, cfg, Some(&mut log))?;
    Ok((res, log))
}

struct Pending {
    state: ComponentLoadState,
    cursor: usize,
}

fn simulate(
    trace: &RemovalTrace,
    capacities: &SurplusAssignment,
    cfg: &CascadeConfig,
    mut log: Option<&mut Vec<FailureEvent>>,
) -> Result<CascadeResult> {
    let m = trace.m();
    CascadeConfig::new(cfg.theta)?;
    if capacities.len() != m {
        return Err(Error::CapacityMismatch {
            expected: m,
            got: capacities.len(),
        });
    }
    let caps = capacities.sorted();
    let forest = trace.forest();
    let in_giant = trace.in_giant();
    let l0 = cfg.theta / m as f64;

    // Components are served in global removal order, so failures come out
    // chronologically.
    let mut pending: Vec<Option<Pending>> = (0..forest.nodes().len()).map(|_| None).collect();
    let mut heap = BinaryHeap::new();
    let activate = |node: usize,
                    state: ComponentLoadState,
                    pending: &mut Vec<Option<Pending>>,
                    heap: &mut BinaryHeap<Reverse<(usize, usize)>>| {
        let first = forest.members(node)[0] as usize;
        pending[node] = Some(Pending { state, cursor: 0 });
        heap.push(Reverse((trace.position(first), node)));
    };
    for &r in forest.roots() {
        let state = ComponentLoadState {
            surge: l0,
            perceived: 0,
            alive_edges: forest.nodes()[r].edges_at_birth,
        };
        activate(r, state, &mut pending, &mut heap);
    }

    let (mut a, mut a_hat) = (0usize, 0usize);
    let mut stops = Vec::new();
    while let Some(Reverse((step, node))) = heap.pop() {
        let p = pending[node].as_mut().expect("active node");
        let members = forest.members(node);
        let edge = members[p.cursor];
        let st = &mut p.state;
        if caps[step] >= st.surge {
            stops.push(ComponentStop {
                node,
                step: Some(step),
                state: *st,
            });
            pending[node] = None;
            continue;
        }
        a += 1;
        a_hat += in_giant[step] as usize;
        if let Some(log) = log.as_deref_mut() {
            log.push(FailureEvent {
                edge,
                step,
                surge: st.surge,
                edges_before: st.alive_edges,
            });
        }
        st.surge += (1.0 - st.surge) / st.alive_edges as f64;
        st.alive_edges -= 1;
        st.perceived += 1;
        p.cursor += 1;
        if p.cursor < members.len() {
            let next = members[p.cursor] as usize;
            heap.push(Reverse((trace.position(next), node)));
            continue;
        }
        let state = *st;
        pending[node] = None;
        let children = &forest.nodes()[node].children;
        if children.is_empty() {
            stops.push(ComponentStop {
                node,
                step: None,
                state,
            });
        }
        for &c in children {
            let child = ComponentLoadState {
                alive_edges: forest.nodes()[c].edges_at_birth,
                ..state
            };
            activate(c, child, &mut pending, &mut heap);
        }
    }

    let t = trace.first_disconnect();
    Ok(CascadeResult {
        a,
        a_hat,
        a_tilde: a - a_hat,
        t,
        reached_disconnection: a >= t,
        stops,
    })
}

/// Surge after `i - 1` failures in a component that never split:
/// `θ/m + (i-1)(1-θ/m)/m`.
pub fn connected_phase_surge(m: usize, theta: f64, i: usize) -> f64 {
    let l0 = theta / m as f64;
    l0 + (i as f64 - 1.0) * (1.0 - l0) / m as f64
}

/// Failure count on a star with `m` edges. Capacities are generated one
/// order statistic at a time, so the cost is proportional to the result.
pub fn run_star_cascade<R: Rng + ?Sized>(m: usize, theta: f64, rng: &mut R) -> usize {
    let mut u = 0.0f64;
    for i in 1..=m {
        // minimum of the m - i + 1 remaining uniforms on [u, 1]
        let v: f64 = rng.random();
        let remaining = (m - i + 1) as f64;
        u = 1.0 - (1.0 - u) * (v.ln() / remaining).exp();
        if u >= connected_phase_surge(m, theta, i) {
            return i - 1;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisconnectionEstimate {
    pub hits: usize,
    pub valid_reps: usize,
    /// Replications skipped because no connected graph was found.
    pub sampler_failures: usize,
    pub p_hat: f64,
    pub se: f64,
    /// `None` when the degree law sits outside the formula's domain.
    pub theory: Option<f64>,
}

/// Monte Carlo frequency of `A >= T` on the connected configuration model.
pub fn estimate_disconnection_hit(
    seq: &DegreeSequence,
    theta: f64,
    master_seed: u64,
    reps: usize,
    max_attempts: usize,
) -> Result<DisconnectionEstimate> {
    let cfg = CascadeConfig::new(theta)?;
    let outcomes = replicate(master_seed, reps, |_, rng| -> Result<Option<bool>> {
        let g = match sample_connected_cm(seq, rng, max_attempts) {
            Ok(s) => s.graph,
            Err(Error::ConnectivityExhausted { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let trace = build_trace(&g, rng)?;
        let caps = SurplusAssignment::sample(trace.m(), rng);
        Ok(Some(
            run_cascade(&trace, &caps, &cfg)?.reached_disconnection,
        ))
    });
    let mut hits = 0;
    let mut valid = 0;
    let mut failures = 0;
    for o in outcomes {
        match o? {
            Some(h) => {
                valid += 1;
                hits += h as usize;
            }
            None => failures += 1,
        }
    }
    let p_hat = if valid > 0 {
        hits as f64 / valid as f64
    } else {
        f64::NAN
    };
    let se = (p_hat * (1.0 - p_hat) / valid as f64).sqrt();
    let st = degree_stats(seq)?;
    let theory = theory::disconnect_constant(theta, st.p2, st.d_bar, seq.m() as f64).ok();
    Ok(DisconnectionEstimate {
        hits,
        valid_reps: valid,
        sampler_failures: failures,
        p_hat,
        se,
        theory,
    })
}
