//! Sequential uniform edge removal.
//!
//! The removal permutation is fixed up front, so the whole component
//! history is computed offline: edges are added back in reverse order to a
//! union-find over the vertices, and every merge seen in reverse is a split
//! forward in time. The resulting [`SplitForest`] holds, for every
//! edge-component that ever exists, the edges removed while it is alive.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::generators::sample_connected_cm;
use crate::graph::{DegreeSequence, MultiGraph};

/// One edge-component of the removal history.
///
/// It is born when its parent splits (or at time zero for a root) and
/// loses its `members` one at a time in removal order. The last member is
/// the split edge; removing it leaves the `children` components, which
/// hold the surviving edges. A removal that only detaches an isolated
/// vertex is not a split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestNode {
    pub edges_at_birth: usize,
    /// Removal step of the split edge.
    pub split_step: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    members: (usize, usize),
}

impl ForestNode {
    /// Edges alive just before the split edge is removed.
    pub fn edges_at_split(&self) -> usize {
        self.edges_at_birth - (self.members.1 - self.members.0) + 1
    }

    pub fn member_count(&self) -> usize {
        self.members.1 - self.members.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitForest {
    nodes: Vec<ForestNode>,
    roots: Vec<usize>,
    /// Member edges of all nodes, grouped by node, ascending removal step.
    member_edges: Vec<u32>,
    node_of_edge: Vec<u32>,
}

impl SplitForest {
    pub fn nodes(&self) -> &[ForestNode] {
        &self.nodes
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Edges removed while `node` is alive, in removal order.
    pub fn members(&self, node: usize) -> &[u32] {
        let (a, b) = self.nodes[node].members;
        &self.member_edges[a..b]
    }

    pub fn node_of_edge(&self, edge: usize) -> usize {
        self.node_of_edge[edge] as usize
    }

    /// Edges of the component containing `node` at its birth, by walking
    /// the subtree.
    pub fn resolve_edges(&self, node: usize) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            out.extend_from_slice(self.members(x));
            stack.extend(self.nodes[x].children.iter().copied());
        }
        out
    }

    /// Checks `edges_at_split = 1 + Σ children edges_at_birth` everywhere.
    pub fn conservation_holds(&self) -> bool {
        self.nodes.iter().all(|nd| {
            let kids: usize = nd
                .children
                .iter()
                .map(|&c| self.nodes[c].edges_at_birth)
                .sum();
            nd.edges_at_split() == 1 + kids
        })
    }
}

/// Full history of one uniform removal permutation.
#[derive(Debug, Clone)]
pub struct RemovalTrace {
    graph: MultiGraph,
    order: Vec<u32>,
    position: Vec<u32>,
    forest: SplitForest,
    giant_edges: Vec<u32>,
    in_giant: Vec<bool>,
    kappa_prefix: Vec<u32>,
    first_disconnect: usize,
}

/// Uniformly random removal order.
pub fn build_trace<R: Rng + ?Sized>(g: &MultiGraph, rng: &mut R) -> Result<RemovalTrace> {
    let mut order: Vec<u32> = (0..g.m() as u32).collect();
    order.shuffle(rng);
    RemovalTrace::from_order(g.clone(), order)
}

#[derive(Clone, Copy)]
struct RootInfo {
    edges: u32,
    min_vertex: u32,
    node: u32,
}

const NO_NODE: u32 = u32::MAX;

fn beats(a: &RootInfo, b: &RootInfo) -> bool {
    a.edges > b.edges || (a.edges == b.edges && a.min_vertex < b.min_vertex)
}

impl RemovalTrace {
    /// Builds the trace for an explicit removal order (a permutation of the
    /// edge indices).
    pub fn from_order(graph: MultiGraph, order: Vec<u32>) -> Result<Self> {
        let m = graph.m();
        if m == 0 {
            return Err(Error::InvalidParameter("graph has no edges".into()));
        }
        if order.len() != m {
            return Err(Error::InvalidParameter(format!(
                "order has {} entries for {m} edges",
                order.len()
            )));
        }
        let mut position = vec![u32::MAX; m];
        for (step, &e) in order.iter().enumerate() {
            let slot = position
                .get_mut(e as usize)
                .ok_or_else(|| Error::InvalidParameter(format!("edge index {e} >= m")))?;
            if *slot != u32::MAX {
                return Err(Error::InvalidParameter(format!(
                    "edge {e} repeated in order"
                )));
            }
            *slot = step as u32;
        }

        let n = graph.n();
        let mut dsu = DisjointSets::new(n);
        let mut info: Vec<RootInfo> = (0..n as u32)
            .map(|v| RootInfo {
                edges: 0,
                min_vertex: v,
                node: NO_NODE,
            })
            .collect();
        let mut best = 0usize;

        let mut giant_edges = vec![0u32; m + 1];
        let mut in_giant = vec![false; m];
        let mut connected = vec![false; m + 1];
        connected[m] = n <= 1;

        let mut nodes: Vec<ForestNode> = Vec::new();
        let mut node_of_edge = vec![NO_NODE; m];

        for step in (0..m).rev() {
            let e = order[step] as usize;
            let (u, v) = graph.edges()[e];
            let (ru, rv) = (dsu.find(u as usize), dsu.find(v as usize));
            let absorbed_best = best == ru || best == rv;
            let root = if ru == rv {
                let r = ru;
                if info[r].node == NO_NODE {
                    info[r].node = new_node(&mut nodes, step, Vec::new());
                }
                node_of_edge[e] = info[r].node;
                info[r].edges += 1;
                r
            } else {
                let (iu, iv) = (info[ru], info[rv]);
                let node = match (iu.node, iv.node) {
                    (NO_NODE, NO_NODE) => new_node(&mut nodes, step, Vec::new()),
                    (x, NO_NODE) | (NO_NODE, x) => x,
                    (x, y) => new_node(&mut nodes, step, vec![x as usize, y as usize]),
                };
                node_of_edge[e] = node;
                let r = dsu.union(ru, rv).expect("distinct roots");
                info[r] = RootInfo {
                    edges: iu.edges + iv.edges + 1,
                    min_vertex: iu.min_vertex.min(iv.min_vertex),
                    node,
                };
                r
            };
            if absorbed_best || beats(&info[root], &info[best]) {
                best = root;
            }
            giant_edges[step] = info[best].edges;
            in_giant[step] = root == best;
            connected[step] = dsu.components() == 1;
        }

        let first_disconnect = (0..=m).find(|&t| !connected[t]).unwrap_or(m + 1);

        let mut kappa_prefix = vec![0u32; m + 1];
        for i in 0..m {
            kappa_prefix[i + 1] = kappa_prefix[i] + in_giant[i] as u32;
        }

        let forest = finish_forest(nodes, &order, node_of_edge);
        Ok(Self {
            graph,
            order,
            position,
            forest,
            giant_edges,
            in_giant,
            kappa_prefix,
            first_disconnect,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    /// Removal order: `order()[j]` is the edge removed at step `j + 1`.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Zero-based removal step of each edge.
    pub fn position(&self, edge: usize) -> usize {
        self.position[edge] as usize
    }

    pub fn forest(&self) -> &SplitForest {
        &self.forest
    }

    /// `|Ê_m(i)|` for `i = 0..=m`.
    pub fn giant_edges(&self) -> &[u32] {
        &self.giant_edges
    }

    /// `|Ẽ_m(i)| = m - i - |Ê_m(i)|`.
    pub fn outside_edges(&self, i: usize) -> usize {
        self.m() - i - self.giant_edges[i] as usize
    }

    /// `in_giant()[i]`: the edge removed at step `i + 1` lay in the largest
    /// component of the graph left after `i` removals.
    pub fn in_giant(&self) -> &[bool] {
        &self.in_giant
    }

    /// Smallest number of removals after which the graph (isolated vertices
    /// included) is disconnected; `m + 1` if that never happens.
    pub fn first_disconnect(&self) -> usize {
        self.first_disconnect
    }

    /// Edges removed by step `i`, sorted by index.
    pub fn removed_set(&self, i: usize) -> Vec<u32> {
        let mut s = self.order[..i].to_vec();
        s.sort_unstable();
        s
    }

    /// Edges removed from the giant among the first `i` removals.
    pub fn kappa(&self, i: usize) -> Result<usize> {
        if i > self.m() {
            return Err(Error::OutOfRange {
                index: i,
                max: self.m(),
            });
        }
        Ok(self.kappa_prefix[i] as usize)
    }

    /// `min { j : j + |Ẽ_m(j)| >= k }`.
    pub fn upsilon(&self, k: usize) -> Result<usize> {
        self.check_k(k)?;
        // j + |Ẽ(j)| = m - |Ê(j)|, non-decreasing in j
        let limit = (self.m() - k) as u32;
        Ok(self.giant_edges.partition_point(|&g| g > limit))
    }

    /// `min { j : κ(j) >= k }`, or `m + 1` if never reached.
    pub fn varrho(&self, k: usize) -> Result<usize> {
        self.check_k(k)?;
        let j = self.kappa_prefix.partition_point(|&c| (c as usize) < k);
        Ok(if j > self.m() { self.m() + 1 } else { j })
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.m() {
            return Err(Error::OutOfRange {
                index: k,
                max: self.m(),
            });
        }
        Ok(())
    }

    /// The graph left after `i` removals, on the original vertex set.
    pub fn remaining_graph(&self, i: usize) -> Result<MultiGraph> {
        if i > self.m() {
            return Err(Error::OutOfRange {
                index: i,
                max: self.m(),
            });
        }
        let edges = self.order[i..]
            .iter()
            .map(|&e| self.graph.edges()[e as usize])
            .collect();
        Ok(MultiGraph::new(self.graph.n(), edges))
    }

    /// Trace summary with header `i,giant_edges,outside_edges,in_giant`.
    /// The final row (`i = m`) leaves `in_giant` empty.
    pub fn summary_csv(&self) -> String {
        let mut s = String::from("i,giant_edges,outside_edges,in_giant\n");
        for i in 0..=self.m() {
            let flag = match self.in_giant.get(i) {
                Some(&b) => (b as u8).to_string(),
                None => String::new(),
            };
            let _ = writeln!(
                s,
                "{i},{},{},{flag}",
                self.giant_edges[i],
                self.outside_edges(i)
            );
        }
        s
    }
}

fn new_node(nodes: &mut Vec<ForestNode>, step: usize, children: Vec<usize>) -> u32 {
    let id = nodes.len();
    for &c in &children {
        nodes[c].parent = Some(id);
    }
    nodes.push(ForestNode {
        edges_at_birth: 0,
        split_step: step,
        parent: None,
        children,
        members: (0, 0),
    });
    id as u32
}

fn finish_forest(mut nodes: Vec<ForestNode>, order: &[u32], node_of_edge: Vec<u32>) -> SplitForest {
    let k = nodes.len();
    let mut count = vec![0usize; k + 1];
    for &x in &node_of_edge {
        count[x as usize + 1] += 1;
    }
    for i in 0..k {
        count[i + 1] += count[i];
    }
    for (i, nd) in nodes.iter_mut().enumerate() {
        nd.members = (count[i], count[i + 1]);
    }
    let mut fill = count.clone();
    let mut member_edges = vec![0u32; order.len()];
    for &e in order {
        let x = node_of_edge[e as usize] as usize;
        member_edges[fill[x]] = e;
        fill[x] += 1;
    }
    // children are created before their parents
    for i in 0..k {
        let kids: usize = nodes[i]
            .children
            .iter()
            .map(|&c| nodes[c].edges_at_birth)
            .sum();
        nodes[i].edges_at_birth = nodes[i].member_count() + kids;
    }
    let roots = (0..k).filter(|&i| nodes[i].parent.is_none()).collect();
    SplitForest {
        nodes,
        roots,
        member_edges,
        node_of_edge,
    }
}

/// Classification of the components outside the largest one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentCensus {
    /// `N_0`, isolated vertices.
    pub isolated_vertices: usize,
    /// `L_k`: line components keyed by vertex count `k` (so `k - 1` edges).
    pub lines: BTreeMap<usize, usize>,
    /// `C_k`: cycle components keyed by edge count.
    pub cycles: BTreeMap<usize, usize>,
    /// Edges in components with a vertex of degree at least three.
    pub complex_edges: usize,
    pub giant_edges: usize,
}

impl ComponentCensus {
    pub fn line_edges(&self) -> usize {
        self.lines.iter().map(|(&k, &c)| (k - 1) * c).sum()
    }

    pub fn line_vertices(&self) -> usize {
        self.lines.iter().map(|(&k, &c)| k * c).sum()
    }

    pub fn cycle_edges(&self) -> usize {
        self.cycles.iter().map(|(&k, &c)| k * c).sum()
    }

    /// All edges outside the largest component.
    pub fn outside_edges(&self) -> usize {
        self.line_edges() + self.cycle_edges() + self.complex_edges
    }

    pub fn lines_with(&self, vertices: usize) -> usize {
        self.lines.get(&vertices).copied().unwrap_or(0)
    }
}

/// Census of a graph, treating the largest component (edge count, then
/// smallest vertex) as the giant.
pub fn census_of_graph(g: &MultiGraph) -> ComponentCensus {
    let (label, k) = g.component_labels();
    let mut vertices = vec![0usize; k];
    let mut edges = vec![0usize; k];
    let mut max_deg = vec![0u32; k];
    for (&c, &d) in label.iter().zip(g.degree()) {
        vertices[c] += 1;
        max_deg[c] = max_deg[c].max(d);
    }
    for &(u, _) in g.edges() {
        edges[label[u as usize]] += 1;
    }
    let giant = (0..k).max_by_key(|&c| (edges[c], std::cmp::Reverse(c)));
    let mut census = ComponentCensus::default();
    for c in 0..k {
        if Some(c) == giant {
            census.giant_edges = edges[c];
            continue;
        }
        if edges[c] == 0 {
            census.isolated_vertices += 1;
        } else if max_deg[c] >= 3 {
            census.complex_edges += edges[c];
        } else if edges[c] + 1 == vertices[c] {
            *census.lines.entry(vertices[c]).or_insert(0) += 1;
        } else {
            *census.cycles.entry(edges[c]).or_insert(0) += 1;
        }
    }
    census
}

pub fn census_at(trace: &RemovalTrace, i: usize) -> Result<ComponentCensus> {
    Ok(census_of_graph(&trace.remaining_graph(i)?))
}

/// `T_{n,d} / sqrt(m)` on one connected configuration-model sample.
pub fn first_disconnect_sample<R: Rng + ?Sized>(
    seq: &DegreeSequence,
    rng: &mut R,
    max_attempts: usize,
) -> Result<f64> {
    let g = sample_connected_cm(seq, rng, max_attempts)?.graph;
    let trace = build_trace(&g, rng)?;
    Ok(trace.first_disconnect() as f64 / (trace.m() as f64).sqrt())
}
