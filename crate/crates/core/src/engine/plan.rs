//! Contraction plans: binary merge trees over the vertex set.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::network::{EdgeRef, TensorNetwork};
use crate::planar::lr::lr_embedding;
use crate::planar::check_planarity;

use super::separator::{separate_positions, SeparatorStep};

/// Subtrees of at most this many vertices are merged as a simple chain.
pub const DEFAULT_LEAF_CUTOFF: usize = 4;

/// Clusters are grown before separating while their boundary stays at most
/// this many times the maximum vertex degree.
pub const COARSEN_FACTOR: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanNodeKind {
    /// A single vertex, by id.
    Leaf(usize),
    /// Merge of two earlier nodes, by index.
    Merge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanNode {
    pub kind: PlanNodeKind,
    /// Edges leaving the subtree (internal edges with one end outside, and external edges).
    pub cut: Vec<EdgeRef>,
    /// Predicted rank: `cut.len()`.
    pub rank: usize,
}

/// Nodes are stored children-first; the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContractionPlan {
    pub nodes: Vec<PlanNode>,
}

impl ContractionPlan {
    pub fn root(&self) -> Option<&PlanNode> {
        self.nodes.last()
    }

    /// Leaf vertex ids in node order.
    pub fn leaves(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter_map(|n| match n.kind {
                PlanNodeKind::Leaf(v) => Some(v),
                PlanNodeKind::Merge(..) => None,
            })
            .collect()
    }

    /// Largest predicted rank over all nodes, leaves included.
    pub fn max_rank(&self) -> usize {
        self.nodes.iter().map(|n| n.rank).max().unwrap_or(0)
    }

    pub fn merges(&self) -> usize {
        self.nodes.len().saturating_sub(self.leaves().len())
    }

    /// Checks the tree shape and that the leaves are exactly the vertices of `net`.
    pub fn validate(&self, net: &TensorNetwork) -> Result<()> {
        let mut used = vec![false; self.nodes.len()];
        let mut seen = vec![false; net.num_vertices()];
        for (i, n) in self.nodes.iter().enumerate() {
            match n.kind {
                PlanNodeKind::Leaf(v) => {
                    let pos = net.position(v).ok_or(Error::UnknownVertex(v))?;
                    if std::mem::replace(&mut seen[pos], true) {
                        return Err(Error::BadPlan(format!("vertex {v} appears twice")));
                    }
                }
                PlanNodeKind::Merge(a, b) => {
                    for c in [a, b] {
                        if c >= i || std::mem::replace(&mut used[c], true) {
                            return Err(Error::BadPlan(format!("node {i} has bad child {c}")));
                        }
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BadPlan("plan misses a vertex".into()));
        }
        let roots = used.iter().filter(|u| !**u).count();
        if roots > 1 {
            return Err(Error::BadPlan(format!("{roots} roots")));
        }
        Ok(())
    }
}

/// Builds plan nodes from a merge tree and fills in cuts via tree LCAs.
struct PlanBuilder {
    kinds: Vec<PlanNodeKind>,
}

impl PlanBuilder {
    fn new() -> Self {
        PlanBuilder { kinds: Vec::new() }
    }

    fn leaf(&mut self, id: usize) -> usize {
        self.kinds.push(PlanNodeKind::Leaf(id));
        self.kinds.len() - 1
    }

    fn merge(&mut self, a: usize, b: usize) -> usize {
        self.kinds.push(PlanNodeKind::Merge(a, b));
        self.kinds.len() - 1
    }

    /// Left-to-right chain over existing nodes.
    fn chain_nodes(&mut self, nodes: &[usize]) -> Option<usize> {
        let mut acc: Option<usize> = None;
        for &l in nodes {
            acc = Some(match acc {
                None => l,
                Some(a) => self.merge(a, l),
            });
        }
        acc
    }

    fn finish(self, net: &TensorNetwork) -> ContractionPlan {
        let k = self.kinds.len();
        let mut parent = vec![usize::MAX; k];
        let mut leaf_of = vec![usize::MAX; net.num_vertices()];
        for (i, kind) in self.kinds.iter().enumerate() {
            match *kind {
                PlanNodeKind::Leaf(v) => leaf_of[net.position(v).expect("plan vertex")] = i,
                PlanNodeKind::Merge(a, b) => {
                    parent[a] = i;
                    parent[b] = i;
                }
            }
        }
        // children precede parents, so depth can be filled from the root down
        let mut depth = vec![0usize; k];
        for i in (0..k).rev() {
            if parent[i] != usize::MAX {
                depth[i] = depth[parent[i]] + 1;
            }
        }
        let mut cut: Vec<Vec<EdgeRef>> = vec![Vec::new(); k];
        for (e, _) in net.edges().iter().enumerate() {
            let (pa, pb) = net.edge_positions(e);
            let (mut x, mut y) = (leaf_of[pa], leaf_of[pb]);
            while x != y {
                if depth[x] >= depth[y] {
                    cut[x].push(EdgeRef::Internal(e));
                    x = parent[x];
                } else {
                    cut[y].push(EdgeRef::Internal(e));
                    y = parent[y];
                }
            }
        }
        for (j, (ep, _)) in net.external().iter().enumerate() {
            let mut x = leaf_of[net.position(ep.vertex).expect("endpoint")];
            while x != usize::MAX {
                cut[x].push(EdgeRef::External(j));
                x = parent[x];
            }
        }
        let nodes = self
            .kinds
            .into_iter()
            .zip(cut)
            .map(|(kind, mut cut)| {
                cut.sort_by_key(|r| match *r {
                    EdgeRef::Internal(e) => (0, e),
                    EdgeRef::External(j) => (1, j),
                });
                PlanNode {
                    kind,
                    rank: cut.len(),
                    cut,
                }
            })
            .collect();
        ContractionPlan { nodes }
    }
}

/// Clusters left after greedy pair merging, each already a plan node.
struct Clusters {
    /// Alive cluster positions (first member), sorted by lowest member id.
    alive: Vec<usize>,
    node: Vec<usize>,
    rep: Vec<usize>,
    nbr: Vec<BTreeMap<usize, usize>>,
}

/// Repeatedly merges the adjacent pair whose union has the fewest boundary
/// edges (ties to the lowest vertex ids), skipping pairs `accept` rejects.
fn greedy_merge(net: &TensorNetwork, b: &mut PlanBuilder, accept: impl Fn(usize, usize, usize) -> bool) -> Clusters {
    let n = net.num_vertices();
    // cluster state indexed by vertex position of its first member
    let mut node: Vec<usize> = (0..n).map(|p| b.leaf(net.vertices()[p].id)).collect();
    let mut rep: Vec<usize> = net.vertices().iter().map(|v| v.id).collect();
    let mut deg: Vec<usize> = vec![0; n];
    let mut nbr: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    let mut alive = vec![true; n];
    let mut version = vec![0u64; n];
    for p in 0..n {
        deg[p] = net.degree(p);
    }
    for e in 0..net.edges().len() {
        let (a, c) = net.edge_positions(e);
        if a == c {
            deg[a] -= 2;
        } else {
            *nbr[a].entry(c).or_default() += 1;
            *nbr[c].entry(a).or_default() += 1;
        }
    }
    type Item = Reverse<(usize, usize, usize, usize, usize, u64, u64)>;
    let mut heap: BinaryHeap<Item> = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<Item>, a: usize, c: usize, deg: &[usize], nbr: &[BTreeMap<usize, usize>], rep: &[usize], version: &[u64]| {
        let shared = nbr[a][&c];
        let score = deg[a] + deg[c] - 2 * shared;
        if accept(score, deg[a], deg[c]) {
            let (lo, hi) = (rep[a].min(rep[c]), rep[a].max(rep[c]));
            heap.push(Reverse((score, lo, hi, a, c, version[a], version[c])));
        }
    };
    for a in 0..n {
        for &c in nbr[a].keys() {
            if a < c {
                push(&mut heap, a, c, &deg, &nbr, &rep, &version);
            }
        }
    }
    while let Some(Reverse((_, _, _, a, c, va, vc))) = heap.pop() {
        if !alive[a] || !alive[c] || version[a] != va || version[c] != vc {
            continue;
        }
        // merge c into a
        let shared = nbr[a].remove(&c).unwrap_or(0);
        nbr[c].remove(&a);
        deg[a] = deg[a] + deg[c] - 2 * shared;
        let moved = std::mem::take(&mut nbr[c]);
        for (x, cnt) in moved {
            nbr[x].remove(&c);
            *nbr[x].entry(a).or_default() += cnt;
            *nbr[a].entry(x).or_default() += cnt;
        }
        alive[c] = false;
        node[a] = b.merge(node[a], node[c]);
        rep[a] = rep[a].min(rep[c]);
        version[a] += 1;
        let ns: Vec<usize> = nbr[a].keys().copied().collect();
        for x in ns {
            push(&mut heap, a, x, &deg, &nbr, &rep, &version);
        }
    }
    let mut rest: Vec<usize> = (0..n).filter(|&p| alive[p]).collect();
    rest.sort_by_key(|&p| rep[p]);
    Clusters { alive: rest, node, rep, nbr }
}

/// Greedy baseline: repeatedly merge the adjacent pair whose result has the
/// smallest rank (ties to the lowest vertex ids); leftover components are
/// chained by lowest id.
pub fn build_plan_greedy(net: &TensorNetwork) -> ContractionPlan {
    let mut b = PlanBuilder::new();
    let cl = greedy_merge(net, &mut b, |_, _, _| true);
    let roots: Vec<usize> = cl.alive.iter().map(|&p| cl.node[p]).collect();
    b.chain_nodes(&roots);
    b.finish(net)
}

/// One recursion step of the separator planner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub n: usize,
    pub separator: usize,
    pub largest_part: usize,
}

/// Separator sizes seen while planning, for checking the balance and size bounds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeparatorTrace {
    pub steps: Vec<TraceEntry>,
}

impl SeparatorTrace {
    /// True iff every step had parts of at most `2n/3` and a separator of at most `ceil(sqrt(8n))`.
    pub fn bounds_hold(&self) -> bool {
        self.steps
            .iter()
            .all(|s| 3 * s.largest_part <= 2 * s.n && s.separator <= ceil_sqrt(8 * s.n))
    }
}

pub(crate) fn ceil_sqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

/// Plan from recursive planar separators.
pub fn build_plan_separator(net: &TensorNetwork) -> Result<ContractionPlan> {
    build_plan_separator_traced(net, DEFAULT_LEAF_CUTOFF).map(|(p, _)| p)
}

/// Same, with an explicit leaf cutoff, also returning the recursion trace.
pub fn build_plan_separator_traced(
    net: &TensorNetwork,
    cutoff: usize,
) -> Result<(ContractionPlan, SeparatorTrace)> {
    build_plan_separator_with(net, cutoff, COARSEN_FACTOR)
}

/// Full control: `coarsen = 0` skips coarsening and separates the network
/// itself; otherwise clusters may grow to `coarsen` times the maximum degree.
pub fn build_plan_separator_with(
    net: &TensorNetwork,
    cutoff: usize,
    coarsen: usize,
) -> Result<(ContractionPlan, SeparatorTrace)> {
    if !check_planarity(net).is_planar() {
        return Err(Error::NotPlanarInput);
    }
    let mut b = PlanBuilder::new();
    // Coarsen first: greedy merges whose boundary stays within a constant
    // multiple of the maximum degree. Clusters are connected, so the quotient
    // graph stays planar, and its degree is bounded by the same constant.
    let bound = coarsen * (0..net.num_vertices()).map(|p| net.degree(p)).max().unwrap_or(0);
    let cl = greedy_merge(net, &mut b, |score, da, dc| coarsen > 0 && score <= da.max(dc).max(bound));
    let index: HashMap<usize, usize> = cl.alive.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let adj: Vec<Vec<usize>> = cl.alive.iter().map(|&p| cl.nbr[p].keys().map(|q| index[q]).collect()).collect();
    let rot = lr_embedding(&adj).ok_or(Error::NotPlanarInput)?;
    let leaf: Vec<usize> = cl.alive.iter().map(|&p| cl.node[p]).collect();
    let key: Vec<usize> = cl.alive.iter().map(|&p| cl.rep[p]).collect();
    let mut trace = SeparatorTrace::default();
    let all: Vec<usize> = (0..cl.alive.len()).collect();
    let ctx = Quotient { rot: &rot, leaf: &leaf, key: &key, cutoff: cutoff.max(1) };
    recurse(&ctx, &all, &mut b, &mut trace)?;
    Ok((b.finish(net), trace))
}

struct Quotient<'a> {
    rot: &'a [Vec<usize>],
    leaf: &'a [usize],
    key: &'a [usize],
    cutoff: usize,
}

fn recurse(q: &Quotient, set: &[usize], b: &mut PlanBuilder, trace: &mut SeparatorTrace) -> Result<Option<usize>> {
    if set.len() <= q.cutoff {
        let mut v: Vec<usize> = set.to_vec();
        v.sort_by_key(|&p| q.key[p]);
        let nodes: Vec<usize> = v.iter().map(|&p| q.leaf[p]).collect();
        return Ok(b.chain_nodes(&nodes));
    }
    let local: HashMap<usize, usize> = set.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let sub: Vec<Vec<usize>> = set
        .iter()
        .map(|&p| q.rot[p].iter().filter_map(|x| local.get(x).copied()).collect())
        .collect();
    let SeparatorStep { separator, parts } = separate_positions(&sub)?;
    trace.steps.push(TraceEntry {
        n: set.len(),
        separator: separator.len(),
        largest_part: parts[0].len().max(parts[1].len()),
    });
    let lift = |xs: &[usize]| -> Vec<usize> { xs.iter().map(|&i| set[i]).collect() };
    let (mut small, big) = if parts[0].len() <= parts[1].len() {
        (lift(&parts[0]), lift(&parts[1]))
    } else {
        (lift(&parts[1]), lift(&parts[0]))
    };
    small.extend(lift(&separator));
    let (left, right) = if small.is_empty() || big.is_empty() {
        let mut all: Vec<usize> = set.to_vec();
        all.sort_by_key(|&p| q.key[p]);
        let mid = all.len() / 2;
        (all[..mid].to_vec(), all[mid..].to_vec())
    } else {
        small.sort_unstable();
        (small, big)
    };
    let l = recurse(q, &left, b, trace)?;
    let r = recurse(q, &right, b, trace)?;
    Ok(match (l, r) {
        (Some(l), Some(r)) => Some(b.merge(l, r)),
        (x, None) | (None, x) => x,
    })
}
