//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tnplanar::{Endpoint, NetworkBuilder, Tensor, TensorNetwork};

/// Chords `(a, b)` and `(c, d)` of a convex polygon cross.
fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let (c, d) = (c.min(d), c.max(d));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Random multigraph edge list on `n` vertices; with `planar`, only
/// non-crossing chords of a convex polygon (plus loops and parallels).
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, max_edges: usize, planar: bool) -> Vec<(usize, usize)> {
    let m = rng.gen_range(0..=max_edges);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut attempts = 0;
    while edges.len() < m && attempts < 20 * max_edges + 20 {
        attempts += 1;
        let a = rng.gen_range(0..n);
        let b = if rng.gen_bool(0.1) { a } else { rng.gen_range(0..n) };
        if planar && a != b && edges.iter().any(|&e| e.0 != e.1 && chords_cross(e, (a, b))) {
            continue;
        }
        edges.push((a, b));
    }
    edges
}

/// Random tensor of the given arity: dense (small arities) or symmetric, entries in `0..4`.
pub fn random_tensor(rng: &mut ChaCha8Rng, arity: usize) -> Tensor {
    if arity > 10 || rng.gen_bool(0.5) {
        let w: Vec<u64> = (0..=arity).map(|_| rng.gen_range(0..4)).collect();
        Tensor::symmetric_u64(&w)
    } else {
        let t: Vec<u64> = (0..1usize << arity).map(|_| rng.gen_range(0..4)).collect();
        Tensor::dense_u64(arity, &t)
    }
}

/// Network on an edge list with shuffled port numbers and the given tensors.
pub fn network_from_edges(
    rng: &mut ChaCha8Rng,
    n: usize,
    edges: &[(usize, usize)],
    mut tensor: impl FnMut(&mut ChaCha8Rng, usize) -> Tensor,
) -> TensorNetwork {
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut ports: Vec<Vec<usize>> = deg
        .iter()
        .map(|&d| {
            let mut p: Vec<usize> = (0..d).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let mut b = NetworkBuilder::new();
    for &d in &deg {
        let t = tensor(rng, d);
        b.add_vertex(t);
    }
    for &(x, y) in edges {
        let px = ports[x].pop().expect("port");
        let py = ports[y].pop().expect("port");
        b.connect(Endpoint::new(x, px), Endpoint::new(y, py));
    }
    b.build().expect("generated network is well formed")
}

/// Closed network with at most `max_edges` internal edges.
pub fn random_network(rng: &mut ChaCha8Rng, max_edges: usize, planar: bool) -> TensorNetwork {
    let n = rng.gen_range(1..=7);
    let edges = random_edges(rng, n, max_edges, planar);
    network_from_edges(rng, n, &edges, random_tensor)
}

/// Random symmetric-only network (degree unconstrained), for the planarizer passes.
pub fn random_symmetric_network(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> TensorNetwork {
    let edges = random_edges(rng, n, max_edges, false);
    network_from_edges(rng, n, &edges, |rng, d| {
        let w: Vec<u64> = (0..=d).map(|_| rng.gen_range(1..3)).collect();
        Tensor::symmetric_u64(&w)
    })
}
