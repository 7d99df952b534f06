//! Rotation systems of tensor networks and the planarity check.

use std::collections::BTreeMap;

use crate::network::TensorNetwork;

use super::lr::lr_embedding;

/// Per-vertex cyclic order of edge ends.
///
/// An edge end ("dart") is `2e + s`: side `s` of internal edge `e`, where
/// side 0 is the edge's first endpoint. Vertices are indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<usize>>,
    ends: Vec<(usize, usize)>,
    faces: usize,
    components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonPlanarWitness {
    /// A simple planar graph on `vertices > 2` vertices has at most `3V - 6` edges.
    EdgeBound { vertices: usize, edges: usize },
    /// The left-right constraints are unsatisfiable (a Kuratowski subgraph exists).
    Conflict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NotPlanar(NonPlanarWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn embedding(self) -> Option<PlanarEmbedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NotPlanar(_) => None,
        }
    }
}

fn components(n: usize, ends: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for &(a, b) in ends {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

/// Number of face orbits of a rotation system (isolated vertices count one face each).
pub(crate) fn count_faces(ends: &[(usize, usize)], rotation: &[Vec<usize>]) -> usize {
    let tail = |d: usize| if d % 2 == 0 { ends[d / 2].0 } else { ends[d / 2].1 };
    let mut pos = vec![usize::MAX; 2 * ends.len()];
    for r in rotation {
        for (i, &d) in r.iter().enumerate() {
            pos[d] = i;
        }
    }
    let mut seen = vec![false; 2 * ends.len()];
    let mut faces = rotation.iter().filter(|r| r.is_empty()).count();
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let t = d ^ 1;
            let r = &rotation[tail(t)];
            d = r[(pos[t] + 1) % r.len()];
        }
    }
    faces
}

impl PlanarEmbedding {
    /// Wraps a rotation system, returning `None` unless every dart appears
    /// once at its tail and Euler's formula holds.
    pub fn from_rotation(ends: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Option<Self> {
        let mut count = vec![0u8; 2 * ends.len()];
        for (v, r) in rotation.iter().enumerate() {
            for &d in r {
                let tail = if d % 2 == 0 { ends.get(d / 2)?.0 } else { ends.get(d / 2)?.1 };
                if tail != v {
                    return None;
                }
                count[d] += 1;
            }
        }
        if count.iter().any(|&c| c != 1) {
            return None;
        }
        let faces = count_faces(&ends, &rotation);
        let components = components(rotation.len(), &ends);
        let emb = PlanarEmbedding { rotation, ends, faces, components };
        emb.euler_holds().then_some(emb)
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn faces(&self) -> usize {
        self.faces
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Darts around the vertex at position `pos`.
    pub fn rotation(&self, pos: usize) -> &[usize] {
        &self.rotation[pos]
    }

    /// `V - E + F = 2C`, faces counted per component (so `V - E + F = 2`
    /// when connected).
    pub fn euler_holds(&self) -> bool {
        self.rotation.len() + self.faces == self.ends.len() + 2 * self.components
    }

    /// Ports of the vertex at `pos` in rotation order (internal edges only;
    /// external edges follow in port order).
    pub fn port_order(&self, net: &TensorNetwork, pos: usize) -> Vec<usize> {
        let id = net.vertices()[pos].id;
        let mut ports: Vec<usize> = self.rotation[pos]
            .iter()
            .map(|&d| {
                let (a, b) = net.edges()[d / 2];
                let ep = if d % 2 == 0 { a } else { b };
                debug_assert_eq!(ep.vertex, id);
                ep.port
            })
            .collect();
        let mut external: Vec<usize> = net
            .external()
            .iter()
            .filter(|(ep, _)| ep.vertex == id)
            .map(|(ep, _)| ep.port)
            .collect();
        external.sort_unstable();
        ports.extend(external);
        ports
    }

    /// Rotation of the underlying simple graph (loops dropped, each bundle of
    /// parallel edges reduced to its lowest edge), as neighbour positions.
    pub fn simple_rotation(&self, _net: &TensorNetwork) -> Vec<Vec<usize>> {
        let mut keep: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if a != b {
                keep.entry((a.min(b), a.max(b))).or_insert(e);
            }
        }
        self.rotation
            .iter()
            .enumerate()
            .map(|(v, r)| {
                r.iter()
                    .filter_map(|&d| {
                        let (a, b) = self.ends[d / 2];
                        let w = if a == v { b } else { a };
                        (a != b && keep[&(a.min(b), a.max(b))] == d / 2).then_some(w)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Planarity of the network's graph (external edges ignored), with an
/// embedding that satisfies Euler's formula when planar.
pub fn check_planarity(net: &TensorNetwork) -> Planarity {
    let n = net.num_vertices();
    let ends: Vec<(usize, usize)> = (0..net.edges().len()).map(|e| net.edge_positions(e)).collect();
    let mut bundles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut loops: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in ends.iter().enumerate() {
        if a == b {
            loops[a].push(e);
        } else {
            bundles.entry((a.min(b), a.max(b))).or_default().push(e);
        }
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in bundles.keys() {
        adj[a].push(b);
        adj[b].push(a);
    }
    if n > 2 && bundles.len() > 3 * n - 6 {
        return Planarity::NotPlanar(NonPlanarWitness::EdgeBound {
            vertices: n,
            edges: bundles.len(),
        });
    }
    let Some(simple) = lr_embedding(&adj) else {
        return Planarity::NotPlanar(NonPlanarWitness::Conflict);
    };
    let dart = |e: usize, v: usize| 2 * e + (ends[e].0 != v) as usize;
    let rotation: Vec<Vec<usize>> = simple
        .iter()
        .enumerate()
        .map(|(v, nbrs)| {
            let mut r: Vec<usize> = loops[v].iter().flat_map(|&l| [2 * l, 2 * l + 1]).collect();
            for &w in nbrs {
                let bundle = &bundles[&(v.min(w), v.max(w))];
                // parallel edges nest: reversed order at the far end
                if v < w {
                    r.extend(bundle.iter().map(|&e| dart(e, v)));
                } else {
                    r.extend(bundle.iter().rev().map(|&e| dart(e, v)));
                }
            }
            r
        })
        .collect();
    let emb = PlanarEmbedding::from_rotation(ends, rotation).expect("planar rotation satisfies Euler's formula");
    Planarity::Planar(emb)
}

/// True iff the network is planar with the endpoints of `ports` (external
/// labels) all on one face, in the given cyclic order.
pub fn ports_on_outer_face(net: &TensorNetwork, ports: &[String]) -> bool {
    let n = net.num_vertices();
    let k = ports.len();
    let mut edges: Vec<(usize, usize)> = (0..net.edges().len())
        .map(|e| net.edge_positions(e))
        .filter(|(a, b)| a != b)
        .collect();
    for (i, p) in ports.iter().enumerate() {
        let Some(j) = net.external_index(p) else { return false };
        let ep = net.external()[j].0;
        edges.push((net.position(ep.vertex).expect("endpoint"), n + i));
    }
    match k {
        0 | 1 => {}
        2 => edges.push((n, n + 1)),
        _ => edges.extend((0..k).map(|i| (n + i, n + (i + 1) % k))),
    }
    let mut adj = vec![Vec::new(); n + k];
    let mut seen = std::collections::HashSet::new();
    for (a, b) in edges {
        if seen.insert((a.min(b), a.max(b))) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    lr_embedding(&adj).is_some()
}
