//! Degree sequences, multigraphs and half-edge pairing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// Prescribed degrees `d_1, ..., d_n` together with the degree counts `n_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    counts: BTreeMap<u32, usize>,
}

impl DegreeSequence {
    /// Builds a sequence, rejecting an odd degree sum.
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
        if sum % 2 == 1 {
            return Err(Error::OddDegreeSum(sum));
        }
        let mut counts = BTreeMap::new();
        for &d in &degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        Ok(Self { degrees, counts })
    }

    /// Vertices are laid out by ascending degree.
    pub fn from_counts(counts: &[(u32, usize)]) -> Result<Self> {
        let mut sorted: Vec<(u32, usize)> = counts.to_vec();
        sorted.sort_unstable();
        let mut degrees = Vec::with_capacity(sorted.iter().map(|c| c.1).sum());
        for (d, c) in sorted {
            degrees.extend(std::iter::repeat_n(d, c));
        }
        Self::new(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// `n_i`, the number of vertices of degree `i`.
    pub fn count(&self, degree: u32) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u32, usize> {
        &self.counts
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    /// Edge count `m = Σ d_i / 2`.
    pub fn m(&self) -> usize {
        (self.degree_sum() / 2) as usize
    }

    pub fn max_degree(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Parses either one degree per line or `degree:count` per line.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degrees = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: idx + 1,
                msg: format!("{msg}: {line:?}"),
            };
            if let Some((d, c)) = line.split_once(':') {
                let d: u32 = d.trim().parse().map_err(|_| bad("bad degree"))?;
                let c: usize = c.trim().parse().map_err(|_| bad("bad count"))?;
                degrees.extend(std::iter::repeat_n(d, c));
            } else {
                degrees.push(line.parse().map_err(|_| bad("bad degree"))?);
            }
        }
        Self::new(degrees)
    }

    pub fn to_plain_text(&self) -> String {
        let mut s = String::with_capacity(self.degrees.len() * 3);
        for d in &self.degrees {
            let _ = writeln!(s, "{d}");
        }
        s
    }

    pub fn to_count_text(&self) -> String {
        let mut s = String::new();
        for (d, c) in &self.counts {
            let _ = writeln!(s, "{d}:{c}");
        }
        s
    }
}

/// Empirical moments of a degree sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    pub d_bar: f64,
    pub p2: f64,
    /// `E[D(D-1)]` under the empirical law.
    pub second_factorial_moment: f64,
    /// Critical removal probability, `None` when `E[D(D-1)] <= E[D]`.
    pub q_c: Option<f64>,
    /// `pmf[i]` is the fraction of vertices of degree `i`.
    pub pmf: Vec<f64>,
}

impl DegreeStats {
    /// Probability generating function `G_D(x)`.
    pub fn pgf(&self, x: f64) -> f64 {
        self.pmf.iter().rev().fold(0.0, |acc, &p| acc * x + p)
    }

    /// `G_D'(x)`.
    pub fn pgf_derivative(&self, x: f64) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &p)| acc * x + k as f64 * p)
    }

    pub fn p(&self, degree: usize) -> f64 {
        self.pmf.get(degree).copied().unwrap_or(0.0)
    }
}

pub fn degree_stats(seq: &DegreeSequence) -> Result<DegreeStats> {
    let n = seq.n();
    if n == 0 {
        return Err(Error::InvalidParameter("empty degree sequence".into()));
    }
    let nf = n as f64;
    let mut pmf = vec![0.0; seq.max_degree() as usize + 1];
    let mut first = 0.0;
    let mut fact2 = 0.0;
    for (&d, &c) in seq.counts() {
        let df = d as f64;
        pmf[d as usize] = c as f64 / nf;
        first += df * c as f64;
        fact2 += df * (df - 1.0) * c as f64;
    }
    let d_bar = first / nf;
    let second_factorial_moment = fact2 / nf;
    let q_c = (second_factorial_moment > d_bar).then(|| 1.0 - d_bar / second_factorial_moment);
    Ok(DegreeStats {
        d_bar,
        p2: seq.count(2) as f64 / nf,
        second_factorial_moment,
        q_c,
        pmf,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Per-clause evaluation of the regularity conditions at this finite `n`.
/// Advisory only; samplers accept any even-sum sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub clauses: Vec<Clause>,
}

impl RegularityReport {
    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

pub fn validate_regularity(seq: &DegreeSequence, epsilon: f64) -> Result<RegularityReport> {
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/4), got {epsilon}"
        )));
    }
    if seq.degree_sum() % 2 == 1 {
        return Err(Error::OddDegreeSum(seq.degree_sum()));
    }
    let n = seq.n() as f64;
    let n0 = seq.count(0);
    let n1 = seq.count(1);
    let n2 = seq.count(2);
    let p2 = n2 as f64 / n;
    let bound = n.powf(0.25 - epsilon);
    let dmax = seq.max_degree();
    let d_bar = seq.degree_sum() as f64 / n;
    let clauses = vec![
        Clause {
            name: "no_isolated",
            passed: n0 == 0,
            detail: format!("n_0 = {n0}"),
        },
        Clause {
            name: "few_degree_one",
            passed: (n1 as f64) <= n.sqrt(),
            detail: format!("n_1 = {n1} <= sqrt(n) = {:.4}", n.sqrt()),
        },
        Clause {
            name: "no_degree_one",
            passed: n1 == 0,
            detail: format!("n_1 = {n1}"),
        },
        Clause {
            name: "p2_interior",
            passed: p2 > 0.0 && p2 < 1.0,
            detail: format!("n_2/n = {p2:.6}"),
        },
        Clause {
            name: "max_degree",
            passed: (dmax as f64) < bound,
            detail: format!("max degree {dmax} < n^(1/4 - eps) = {bound:.6}"),
        },
        Clause {
            name: "finite_mean",
            passed: d_bar.is_finite(),
            detail: format!("mean degree {d_bar:.6}"),
        },
    ];
    Ok(RegularityReport { clauses })
}

/// Undirected multigraph; self-loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    degree: Vec<u32>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degree = vec![0u32; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        Self { n, edges, degree }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degree.clone()).expect("a graph has even degree sum")
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|&(u, v)| {
            let key = if u <= v { (u, v) } else { (v, u) };
            u != v && seen.insert(key)
        })
    }

    /// Component label per vertex, labels numbered by first appearance.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut dsu = DisjointSets::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u as usize, v as usize);
        }
        let mut label = vec![usize::MAX; self.n];
        let mut root_label = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, slot) in label.iter_mut().enumerate() {
            let r = dsu.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            *slot = root_label[r];
        }
        (label, next)
    }

    /// Every vertex, isolated ones included, lies in one component.
    /// The empty graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut dsu = DisjointSets::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u as usize, v as usize);
        }
        dsu.components() == 1
    }

    /// Largest component by edge count, ties broken by the smallest vertex
    /// index it contains; vertices relabelled in increasing original order.
    /// `None` when the graph has no edges.
    pub fn largest_component(&self) -> Option<MultiGraph> {
        if self.edges.is_empty() {
            return None;
        }
        let (label, k) = self.component_labels();
        let mut edge_count = vec![0usize; k];
        for &(u, _) in &self.edges {
            edge_count[label[u as usize]] += 1;
        }
        // labels follow first appearance, so the lowest label has the lowest vertex
        let best = (0..k).max_by_key(|&c| (edge_count[c], std::cmp::Reverse(c)))?;
        let mut new_id = vec![u32::MAX; self.n];
        let mut next = 0u32;
        for v in 0..self.n {
            if label[v] == best {
                new_id[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, _)| label[u as usize] == best)
            .map(|&(u, v)| (new_id[u as usize], new_id[v as usize]))
            .collect();
        Some(MultiGraph::new(next as usize, edges))
    }

    pub fn to_edge_list_text(&self) -> String {
        let mut s = String::with_capacity(self.edges.len() * 12 + 32);
        let _ = writeln!(s, "# n={} m={}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut m_decl: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: idx + 1, msg };
            if let Some(rest) = line.strip_prefix('#') {
                for tok in rest.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("n=") {
                        n = Some(v.parse().map_err(|_| bad(format!("bad n: {v}")))?);
                    } else if let Some(v) = tok.strip_prefix("m=") {
                        m_decl = Some(v.parse().map_err(|_| bad(format!("bad m: {v}")))?);
                    }
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad(format!("expected `u v`, got {line:?}")));
            };
            let u: u32 = a.parse().map_err(|_| bad(format!("bad vertex {a}")))?;
            let v: u32 = b.parse().map_err(|_| bad(format!("bad vertex {b}")))?;
            edges.push((u, v));
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            msg: "missing `# n=<n> m=<m>` header".into(),
        })?;
        if let Some(m) = m_decl {
            if m != edges.len() {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("header declares m={m} but {} edges follow", edges.len()),
                });
            }
        }
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u as usize >= n || v as usize >= n)
        {
            return Err(Error::Parse {
                line: 1,
                msg: format!("edge ({u}, {v}) references a vertex >= n={n}"),
            });
        }
        Ok(Self::new(n, edges))
    }
}

/// Uniform perfect matching of the half-edges: shuffle the half-edge list
/// and pair positions `(2j, 2j+1)`.
pub fn pair_half_edges<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> MultiGraph {
    let mut half: Vec<u32> = Vec::with_capacity(seq.degree_sum() as usize);
    for (v, &d) in seq.degrees().iter().enumerate() {
        half.extend(std::iter::repeat_n(v as u32, d as usize));
    }
    half.shuffle(rng);
    let edges = half.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    MultiGraph::new(seq.n(), edges)
}
