//! Samplers for the graph families used in the experiments.

use rand::seq::index::sample as sample_indices;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{pair_half_edges, DegreeSequence, MultiGraph};

/// Half degree-2, half degree-3 vertices (`p_2 = 1/2`, `d = 5/2`).
pub fn two_three_sequence(n: usize) -> Result<DegreeSequence> {
    DegreeSequence::from_counts(&[(2, n / 2), (3, n - n / 2)])
}

/// Degree recipe of the erased configuration-model experiment:
/// `n_1 = n_4 = ceil(n^(1/3))`, `n_2 = n_3 = n/2 - ceil(n^(1/3))`.
pub fn erased_experiment_sequence(n: usize) -> Result<DegreeSequence> {
    let c = (n as f64).cbrt().ceil() as usize;
    let half = n / 2;
    if half < c {
        return Err(Error::InvalidParameter(format!(
            "n={n} too small for the recipe"
        )));
    }
    DegreeSequence::from_counts(&[(1, c), (2, half - c), (3, n - half - c), (4, c)])
}

#[derive(Debug, Clone)]
pub struct ConnectedSample {
    pub graph: MultiGraph,
    pub attempts: usize,
}

/// Rejection sampler for the configuration model conditioned on being
/// connected.
pub fn sample_connected_cm<R: Rng + ?Sized>(
    seq: &DegreeSequence,
    rng: &mut R,
    max_attempts: usize,
) -> Result<ConnectedSample> {
    if max_attempts == 0 {
        return Err(Error::InvalidParameter(
            "max_attempts must be positive".into(),
        ));
    }
    for attempt in 1..=max_attempts {
        let g = pair_half_edges(seq, rng);
        if g.is_connected() {
            return Ok(ConnectedSample {
                graph: g,
                attempts: attempt,
            });
        }
    }
    Err(Error::ConnectivityExhausted {
        attempts: max_attempts,
    })
}

/// Merges parallel edges, drops self-loops and keeps the largest component.
pub fn erase(g: &MultiGraph) -> Result<MultiGraph> {
    let mut simple: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    simple.sort_unstable();
    simple.dedup();
    MultiGraph::new(g.n(), simple)
        .largest_component()
        .ok_or(Error::EmptyAfterErasure)
}

/// Configuration model made simple, restricted to its largest component.
pub fn erased_connected_cm<R: Rng + ?Sized>(
    seq: &DegreeSequence,
    rng: &mut R,
) -> Result<MultiGraph> {
    erase(&pair_half_edges(seq, rng))
}

/// Deletes every edge independently with probability `q`.
pub fn percolate<R: Rng + ?Sized>(g: &MultiGraph, q: f64, rng: &mut R) -> Result<MultiGraph> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "q must lie in [0,1], got {q}"
        )));
    }
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|_| !rng.random_bool(q))
        .collect();
    Ok(MultiGraph::new(g.n(), edges))
}

#[derive(Debug, Clone)]
pub struct ExplosionOutcome {
    /// The percolated graph on the original `n` vertices (relabelled).
    pub graph: MultiGraph,
    /// `d'`: thinned degrees followed by `R_n` appended degree-one vertices.
    pub exploded_sequence: DegreeSequence,
    /// `R_n`, the number of removed half-edges.
    pub removed_half_edges: usize,
    /// The paired graph on `N = n + R_n` vertices before degree-one removal.
    pub intermediate: MultiGraph,
    /// Vertices of `intermediate` deleted in the last step.
    pub removed_vertices: Vec<u32>,
}

/// Per-half-edge removal probability of the explosion construction.
pub fn explosion_half_edge_probability(q: f64) -> f64 {
    1.0 - (1.0 - q).sqrt()
}

/// Explosion construction of the percolated configuration model:
/// thin half-edges, add one degree-one vertex per removed half-edge, pair,
/// then delete that many degree-one vertices chosen uniformly.
pub fn explode<R: Rng + ?Sized>(
    seq: &DegreeSequence,
    q: f64,
    rng: &mut R,
) -> Result<ExplosionOutcome> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "q must lie in [0,1), got {q}"
        )));
    }
    let p = explosion_half_edge_probability(q);
    let mut degrees: Vec<u32> = seq
        .degrees()
        .iter()
        .map(|&d| (0..d).filter(|_| !rng.random_bool(p)).count() as u32)
        .collect();
    let n = seq.n();
    let removed: usize =
        seq.degree_sum() as usize - degrees.iter().map(|&d| d as usize).sum::<usize>();
    degrees.extend(std::iter::repeat_n(1, removed));
    let exploded_sequence = DegreeSequence::new(degrees)?;
    let intermediate = pair_half_edges(&exploded_sequence, rng);

    let ones: Vec<u32> = exploded_sequence
        .degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 1)
        .map(|(v, _)| v as u32)
        .collect();
    let mut removed_vertices: Vec<u32> = sample_indices(rng, ones.len(), removed)
        .into_iter()
        .map(|i| ones[i])
        .collect();
    removed_vertices.sort_unstable();

    let total = n + removed;
    let mut new_id = vec![0u32; total];
    let mut gone = vec![false; total];
    for &v in &removed_vertices {
        gone[v as usize] = true;
    }
    let mut next = 0u32;
    for v in 0..total {
        if !gone[v] {
            new_id[v] = next;
            next += 1;
        }
    }
    let edges = intermediate
        .edges()
        .iter()
        .filter(|&&(u, v)| !gone[u as usize] && !gone[v as usize])
        .map(|&(u, v)| (new_id[u as usize], new_id[v as usize]))
        .collect();
    Ok(ExplosionOutcome {
        graph: MultiGraph::new(next as usize, edges),
        exploded_sequence,
        removed_half_edges: removed,
        intermediate,
        removed_vertices,
    })
}

/// Hub `0` joined to leaves `1..=m`.
pub fn star(m: usize) -> MultiGraph {
    MultiGraph::new(m + 1, (1..=m as u32).map(|l| (0, l)).collect())
}

/// `side x side` grid with open boundaries.
pub fn square_lattice(side: usize) -> MultiGraph {
    let id = |r: usize, c: usize| (r * side + c) as u32;
    let mut edges = Vec::with_capacity(2 * side * side.saturating_sub(1));
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    MultiGraph::new(side * side, edges)
}

/// Largest component of `G(n, lambda/n)`.
pub fn er_giant<R: Rng + ?Sized>(n: usize, lambda: f64, rng: &mut R) -> Result<MultiGraph> {
    if lambda <= 1.0 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "er_giant needs lambda > 1 and n >= 2, got lambda={lambda}, n={n}"
        )));
    }
    let p = (lambda / n as f64).min(1.0);
    let mut edges = Vec::new();
    if p >= 1.0 {
        for v in 1..n as u32 {
            for w in 0..v {
                edges.push((w, v));
            }
        }
    } else {
        // geometric skipping over the pairs (w, v), w < v
        let log_q = (1.0 - p).ln();
        let (mut v, mut w): (i64, i64) = (1, -1);
        let n = n as i64;
        while v < n {
            let r: f64 = 1.0 - rng.random::<f64>();
            w += 1 + (r.ln() / log_q).floor() as i64;
            while w >= v && v < n {
                w -= v;
                v += 1;
            }
            if v < n {
                edges.push((w as u32, v as u32));
            }
        }
    }
    MultiGraph::new(n, edges)
        .largest_component()
        .ok_or(Error::EmptyAfterErasure)
}

/// `CS(n, s)`: `n` stars with `s` leaves each, hubs joined in a ring, so
/// there are `(s+1) n` vertices and `(s+1) n` edges for `n >= 3`.
/// With two stars the hubs share one edge; a lone star has no ring edge.
pub fn chained_stars(n_components: usize, star_size: usize) -> MultiGraph {
    let block = star_size + 1;
    let hub = |c: usize| (c * block) as u32;
    let mut edges = Vec::with_capacity(n_components * block);
    for c in 0..n_components {
        for l in 1..=star_size {
            edges.push((hub(c), hub(c) + l as u32));
        }
    }
    match n_components {
        0 | 1 => {}
        2 => edges.push((hub(0), hub(1))),
        k => {
            for c in 0..k {
                edges.push((hub(c), hub((c + 1) % k)));
            }
        }
    }
    MultiGraph::new(n_components * block, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn connected_cm_on_triangle_degrees() {
        let seq = DegreeSequence::new(vec![2, 2, 2]).unwrap();
        for s in 0..200 {
            let out = sample_connected_cm(&seq, &mut stream(s, 0), 1000).unwrap();
            assert!(out.graph.is_connected());
            assert!(out.attempts >= 1);
        }
    }

    #[test]
    fn four_leaves_never_connect() {
        let seq = DegreeSequence::new(vec![1, 1, 1, 1]).unwrap();
        // two disjoint edges always, so never connected on four vertices
        let err = sample_connected_cm(&seq, &mut stream(0, 0), 50).unwrap_err();
        assert_eq!(err, Error::ConnectivityExhausted { attempts: 50 });
    }

    #[test]
    fn erasure_of_two_two() {
        let seq = DegreeSequence::new(vec![2, 2]).unwrap();
        let mut ok = 0;
        let reps = 30_000;
        for s in 0..reps {
            match erased_connected_cm(&seq, &mut stream(s, 0)) {
                Ok(g) => {
                    assert_eq!(g.n(), 2);
                    assert_eq!(g.edges(), &[(0, 1)]);
                    ok += 1;
                }
                Err(e) => assert_eq!(e, Error::EmptyAfterErasure),
            }
        }
        let f = ok as f64 / reps as f64;
        let sigma = (2.0 / 9.0 / reps as f64).sqrt();
        assert!((f - 2.0 / 3.0).abs() < 3.0 * sigma, "{f}");
        assert_eq!(
            erased_connected_cm(&DegreeSequence::new(vec![2]).unwrap(), &mut stream(0, 0))
                .unwrap_err(),
            Error::EmptyAfterErasure
        );
    }

    #[test]
    fn erased_output_is_simple_and_connected() {
        let seq = erased_experiment_sequence(500).unwrap();
        assert_eq!(seq.n(), 500);
        assert_eq!(seq.m(), 625);
        for s in 0..50 {
            let g = erased_connected_cm(&seq, &mut stream(s, 1)).unwrap();
            assert!(g.is_simple());
            assert!(g.is_connected());
        }
    }

    #[test]
    fn erased_recipe_edge_count_near_five_quarters_n() {
        let n = 2000;
        let seq = erased_experiment_sequence(n).unwrap();
        assert_eq!(seq.m(), 5 * n / 4);
        let mut rng = stream(5, 0);
        let g = erased_connected_cm(&seq, &mut rng).unwrap();
        let gap = (g.m() as f64 - 1.25 * n as f64).abs();
        assert!(gap < 0.05 * n as f64, "m = {}", g.m());
    }

    #[test]
    fn percolation_extremes_and_binomial_mean() {
        let g = square_lattice(20);
        let mut rng = stream(3, 0);
        assert_eq!(percolate(&g, 0.0, &mut rng).unwrap().edges(), g.edges());
        assert_eq!(percolate(&g, 1.0, &mut rng).unwrap().m(), 0);
        assert!(percolate(&g, 1.5, &mut rng).is_err());

        let m = g.m() as f64;
        let reps = 4000;
        let removed: f64 = (0..reps)
            .map(|_| m - percolate(&g, 0.3, &mut rng).unwrap().m() as f64)
            .sum::<f64>()
            / reps as f64;
        let sigma = (m * 0.3 * 0.7 / reps as f64).sqrt();
        assert!((removed - 0.3 * m).abs() < 3.0 * sigma, "{removed}");
    }

    #[test]
    fn explosion_probability_formula() {
        assert!((explosion_half_edge_probability(0.19) - 0.1).abs() < 1e-15);
        assert_eq!(explosion_half_edge_probability(0.0), 0.0);
    }

    #[test]
    fn explosion_at_zero_is_plain_pairing() {
        let seq = two_three_sequence(200).unwrap();
        let out = explode(&seq, 0.0, &mut stream(9, 0)).unwrap();
        assert_eq!(out.removed_half_edges, 0);
        assert_eq!(out.graph.degree(), seq.degrees());
        assert_eq!(out.graph, out.intermediate);
    }

    #[test]
    fn explosion_structure() {
        let seq = two_three_sequence(400).unwrap();
        for s in 0..50 {
            let out = explode(&seq, 0.2, &mut stream(s, 2)).unwrap();
            let r = out.removed_half_edges;
            assert_eq!(out.exploded_sequence.n(), seq.n() + r);
            assert_eq!(out.intermediate.n(), seq.n() + r);
            assert_eq!(out.graph.n(), seq.n());
            assert_eq!(out.removed_vertices.len(), r);
            for &v in &out.removed_vertices {
                assert_eq!(out.intermediate.degree()[v as usize], 1);
            }
            assert_eq!(out.exploded_sequence.degree_sum(), seq.degree_sum());
        }
    }

    #[test]
    fn family_sizes() {
        let s = star(7);
        assert_eq!((s.n(), s.m()), (8, 7));
        let l = square_lattice(3);
        assert_eq!((l.n(), l.m()), (9, 12));
        assert!(l.is_connected());
        for n in [3, 10, 500] {
            let cs = chained_stars(n, 4);
            assert_eq!((cs.n(), cs.m()), (5 * n, 5 * n));
            assert!(cs.is_connected());
        }
        let g = er_giant(500, 2.0, &mut stream(1, 0)).unwrap();
        assert!(g.is_connected());
        assert!(er_giant(500, 1.0, &mut stream(1, 0)).is_err());
    }
}
