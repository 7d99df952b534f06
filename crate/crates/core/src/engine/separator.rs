//! Balanced planar separators.
//!
//! Three phases, cheapest first: a single BFS level; a pair of BFS levels
//! bracketing the median level; and finally a fundamental cycle of a BFS
//! tree in a triangulation of the graph between those two levels.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::network::TensorNetwork;
use crate::planar::PlanarEmbedding;

use super::plan::ceil_sqrt;

/// `separator`, `parts[0]` and `parts[1]` partition the vertex ids; no edge
/// joins the two parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorResult {
    pub separator: Vec<usize>,
    pub parts: [Vec<usize>; 2],
}

/// Separator of a planar network: parts of at most `2N/3` vertices and a
/// separator of at most `ceil(sqrt(8N))`.
pub fn planar_separator(net: &TensorNetwork, embedding: &PlanarEmbedding) -> Result<SeparatorResult> {
    if embedding.num_vertices() != net.num_vertices() {
        return Err(Error::NotPlanarInput);
    }
    let rot = embedding.simple_rotation(net);
    let step = separate_positions(&rot)?;
    let ids = |xs: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = xs.iter().map(|&p| net.vertices()[p].id).collect();
        v.sort_unstable();
        v
    };
    Ok(SeparatorResult {
        separator: ids(&step.separator),
        parts: [ids(&step.parts[0]), ids(&step.parts[1])],
    })
}

pub(crate) struct SeparatorStep {
    pub separator: Vec<usize>,
    pub parts: [Vec<usize>; 2],
}

/// Separator of the simple planar graph given by its rotation system.
pub(crate) fn separate_positions(rot: &[Vec<usize>]) -> Result<SeparatorStep> {
    let n = rot.len();
    if n < 3 {
        return Ok(SeparatorStep {
            separator: (0..n).collect(),
            parts: [Vec::new(), Vec::new()],
        });
    }
    let comps = components(rot, &vec![false; n]);
    let separator = match comps.iter().find(|c| 3 * c.len() > 2 * n) {
        None => Vec::new(),
        Some(c) => separate_component(rot, c, n)?,
    };
    let mut removed = vec![false; n];
    for &s in &separator {
        removed[s] = true;
    }
    let parts = pack(components(rot, &removed), n);
    let largest = parts[0].len().max(parts[1].len());
    if 3 * largest > 2 * n || separator.len() > ceil_sqrt(8 * n) {
        return Err(Error::BadPlan(format!(
            "separator bounds violated: n={n}, |S|={}, largest part={largest}",
            separator.len()
        )));
    }
    Ok(SeparatorStep { separator, parts })
}

fn components(rot: &[Vec<usize>], removed: &[bool]) -> Vec<Vec<usize>> {
    let n = rot.len();
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in &rot[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Splits pieces (each at most `2n/3`) into two parts of at most `2n/3`.
fn pack(mut pieces: Vec<Vec<usize>>, n: usize) -> [Vec<usize>; 2] {
    pieces.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut parts = [Vec::new(), Vec::new()];
    if let Some(first) = pieces.first() {
        if 3 * first.len() >= n {
            parts[0] = pieces[0].clone();
            parts[1] = pieces[1..].concat();
        } else {
            for p in pieces {
                let i = (parts[1].len() < parts[0].len()) as usize;
                parts[i].extend(p);
            }
        }
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    parts
}

struct Bfs {
    level: HashMap<usize, usize>,
    parent: HashMap<usize, usize>,
    levels: Vec<Vec<usize>>,
}

fn bfs(rot: &[Vec<usize>], root: usize) -> Bfs {
    let mut level = HashMap::from([(root, 0)]);
    let mut parent = HashMap::new();
    let mut levels = vec![vec![root]];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let l = level[&v];
        for &w in &rot[v] {
            if let std::collections::hash_map::Entry::Vacant(e) = level.entry(w) {
                e.insert(l + 1);
                parent.insert(w, v);
                if levels.len() == l + 1 {
                    levels.push(Vec::new());
                }
                levels[l + 1].push(w);
                queue.push_back(w);
            }
        }
    }
    Bfs { level, parent, levels }
}

fn separate_component(rot: &[Vec<usize>], comp: &[usize], n: usize) -> Result<Vec<usize>> {
    let bound = ceil_sqrt(8 * n);
    let r0 = comp[0];
    let first = bfs(rot, r0);
    let far = *first.levels.last().and_then(|l| l.first()).unwrap_or(&r0);

    // single level
    let mut best: Option<Vec<usize>> = None;
    for tree in [&first, &bfs(rot, far)] {
        let mut below = 0;
        for lv in &tree.levels {
            let above = comp.len() - below - lv.len();
            if lv.len() <= bound
                && 3 * below <= 2 * n
                && 3 * above <= 2 * n
                && best.as_ref().is_none_or(|b| lv.len() < b.len())
            {
                best = Some(lv.clone());
            }
            below += lv.len();
        }
    }
    if let Some(s) = best {
        return Ok(s);
    }

    // two levels around the median
    let levels = &first.levels;
    let r = levels.len() - 1;
    let nc = comp.len();
    let size = |l: isize| -> usize {
        if l < 0 || l as usize > r {
            0
        } else {
            levels[l as usize].len()
        }
    };
    let mut prefix = 0;
    let mut l1 = 0;
    for (i, lv) in levels.iter().enumerate() {
        if 2 * (prefix + lv.len()) >= nc {
            l1 = i;
            break;
        }
        prefix += lv.len();
    }
    let k = prefix;
    let l1 = l1 as isize;
    let l0 = (-1..=l1)
        .rev()
        .find(|&l| {
            let a = size(l) + 2 * (l1 - l) as usize;
            a * a <= 4 * k
        })
        .unwrap_or(-1);
    let l2 = (l1 + 1..=r as isize + 1)
        .find(|&l| {
            let a = size(l) + 2 * (l - l1 - 1) as usize;
            a * a <= 4 * (nc - k)
        })
        .unwrap_or(r as isize + 1);
    let mut sep: Vec<usize> = Vec::new();
    for l in [l0, l2] {
        if l >= 0 && (l as usize) <= r {
            sep.extend(&levels[l as usize]);
        }
    }
    let middle: Vec<usize> = ((l0 + 1)..l2).flat_map(|l| levels[l as usize].iter().copied()).collect();
    if 3 * middle.len() <= 2 * n {
        return Ok(sep);
    }

    // fundamental cycle inside the middle levels
    let cycle = middle_cycle(rot, &first, l0, l2, &middle, n)?;
    sep.extend(cycle);
    Ok(sep)
}

/// Planar graph with explicit darts: dart `2e + s` leaves `ends[e][s]`.
struct DartGraph {
    ends: Vec<[usize; 2]>,
    rot: Vec<Vec<usize>>,
}

impl DartGraph {
    fn tail(&self, d: usize) -> usize {
        self.ends[d / 2][d % 2]
    }

    /// Face index of every dart, and the number of faces.
    fn faces(&self) -> (Vec<usize>, usize) {
        let mut pos = vec![0; 2 * self.ends.len()];
        for r in &self.rot {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut face = vec![usize::MAX; 2 * self.ends.len()];
        let mut count = 0;
        for start in 0..face.len() {
            if face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while face[d] == usize::MAX {
                face[d] = count;
                let t = d ^ 1;
                let r = &self.rot[self.tail(t)];
                d = r[(pos[t] + 1) % r.len()];
            }
            count += 1;
        }
        (face, count)
    }

    fn face_walks(&self) -> Vec<Vec<usize>> {
        let (face, count) = self.faces();
        let mut pos = vec![0; 2 * self.ends.len()];
        for r in &self.rot {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut walks = vec![Vec::new(); count];
        let mut done = vec![false; count];
        for start in 0..face.len() {
            let f = face[start];
            if done[f] {
                continue;
            }
            done[f] = true;
            let mut d = start;
            loop {
                walks[f].push(d);
                let t = d ^ 1;
                let r = &self.rot[self.tail(t)];
                d = r[(pos[t] + 1) % r.len()];
                if d == start {
                    break;
                }
            }
        }
        walks
    }
}

fn middle_cycle(
    rot: &[Vec<usize>],
    tree: &Bfs,
    l0: isize,
    l2: isize,
    middle: &[usize],
    n: usize,
) -> Result<Vec<usize>> {
    let in_middle = |v: usize| {
        let l = tree.level[&v] as isize;
        l > l0 && l < l2
    };
    let shrunk = l0 >= 0;
    // H vertices: [root] + middle
    let offset = shrunk as usize;
    let h_of: HashMap<usize, usize> = middle.iter().enumerate().map(|(i, &v)| (v, i + offset)).collect();
    let root_h = if shrunk { 0 } else { h_of[&tree.levels[0][0]] };
    let mut g = DartGraph { ends: Vec::new(), rot: vec![Vec::new(); middle.len() + offset] };
    let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();

    // rotation of the contracted root: walk around the BFS tree of the low levels
    let mut first_emit: HashMap<usize, usize> = HashMap::new();
    let mut root_order: Vec<usize> = Vec::new();
    if shrunk {
        let low = |v: usize| tree.level[&v] as isize <= l0;
        let r0 = tree.levels[0][0];
        // stack of (vertex, start index, steps taken)
        let mut stack: Vec<(usize, usize, usize)> = vec![(r0, 0, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, start, step) = *top;
            let deg = rot[v].len();
            let limit = if v == r0 { deg } else { deg - 1 };
            if step >= limit {
                stack.pop();
                continue;
            }
            top.2 += 1;
            let w = rot[v][(start + step) % deg];
            if low(w) && tree.parent.get(&w) == Some(&v) {
                let back = rot[w].iter().position(|&x| x == v).expect("symmetric");
                stack.push((w, back + 1, 0));
            } else if !low(w) && in_middle(w) && !first_emit.contains_key(&w) {
                first_emit.insert(w, v);
                root_order.push(w);
            }
        }
    }
    let mut add_edge = |g: &mut DartGraph, a: usize, b: usize| -> usize {
        *edge_of.entry((a.min(b), a.max(b))).or_insert_with(|| {
            g.ends.push([a.min(b), a.max(b)]);
            g.ends.len() - 1
        })
    };
    let dart = |g: &DartGraph, e: usize, from: usize| 2 * e + (g.ends[e][0] != from) as usize;
    if shrunk {
        for &w in &root_order {
            let e = add_edge(&mut g, 0, h_of[&w]);
            let d = dart(&g, e, 0);
            g.rot[0].push(d);
        }
    }
    for &v in middle {
        let hv = h_of[&v];
        for &w in &rot[v] {
            let hw = if in_middle(w) {
                h_of[&w]
            } else if shrunk && tree.level[&w] as isize <= l0 {
                if first_emit.get(&v) != Some(&w) {
                    continue;
                }
                0
            } else {
                continue;
            };
            let e = add_edge(&mut g, hv, hw);
            let d = dart(&g, e, hv);
            g.rot[hv].push(d);
        }
    }

    // triangulate: a new vertex inside every non-triangular face
    let real = g.rot.len();
    let mut insert_after: HashMap<usize, usize> = HashMap::new();
    for walk in g.face_walks() {
        if walk.len() == 3 {
            continue;
        }
        let z = g.rot.len();
        g.rot.push(Vec::new());
        let mut zdarts = Vec::new();
        for i in 0..walk.len() {
            let corner = g.tail(walk[i]);
            g.ends.push([z, corner]);
            let e = g.ends.len() - 1;
            zdarts.push(2 * e);
            let prev_in = walk[(i + walk.len() - 1) % walk.len()] ^ 1;
            insert_after.insert(prev_in, 2 * e + 1);
        }
        zdarts.reverse();
        g.rot[z] = zdarts;
    }
    for v in 0..real {
        let old = std::mem::take(&mut g.rot[v]);
        for d in old {
            g.rot[v].push(d);
            if let Some(&x) = insert_after.get(&d) {
                g.rot[v].push(x);
            }
        }
    }

    // spanning tree: BFS parents for real vertices, lowest corner for face vertices
    let total = g.rot.len();
    let mut depth = vec![0usize; total];
    let mut parent = vec![usize::MAX; total];
    let mut tree_edge = vec![false; g.ends.len()];
    for &v in middle {
        let hv = h_of[&v];
        if hv == root_h {
            continue;
        }
        depth[hv] = (tree.level[&v] as isize - l0.max(0)) as usize;
        let p = tree.parent[&v];
        let hp = if in_middle(p) { h_of[&p] } else { 0 };
        parent[hv] = hp;
        tree_edge[edge_of[&(hv.min(hp), hv.max(hp))]] = true;
    }
    for z in real..total {
        let (d, _) = g.rot[z]
            .iter()
            .map(|&d| (d, depth[g.tail(d ^ 1)]))
            .min_by_key(|&(d, dep)| (dep, d))
            .expect("face vertex has corners");
        parent[z] = g.tail(d ^ 1);
        depth[z] = depth[parent[z]] + 1;
        tree_edge[d / 2] = true;
    }

    // dual spanning tree on the non-tree edges
    let (face, nf) = g.faces();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for e in 0..g.ends.len() {
        if !tree_edge[e] {
            let (a, b) = (face[2 * e], face[2 * e + 1]);
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    let weight = |h: usize| (h < real && h != if shrunk { 0 } else { usize::MAX }) as usize;
    let mut face_w = vec![0usize; nf];
    let mut rep = vec![0usize; total];
    for h in 0..total {
        if let Some(&d) = g.rot[h].first() {
            rep[h] = face[d];
            face_w[rep[h]] += weight(h);
        }
    }
    let mut dual_parent_edge = vec![usize::MAX; nf];
    let mut tin = vec![0usize; nf];
    let mut tout = vec![0usize; nf];
    let mut sub_w = face_w.clone();
    let mut visited = vec![false; nf];
    let mut order = Vec::with_capacity(nf);
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    visited[0] = true;
    tin[0] = 0;
    order.push(0);
    let mut clock = 1;
    while let Some(top) = stack.last_mut() {
        let (f, i) = *top;
        if i < adj[f].len() {
            top.1 += 1;
            let (x, e) = adj[f][i];
            if !visited[x] {
                visited[x] = true;
                dual_parent_edge[x] = e;
                tin[x] = clock;
                clock += 1;
                order.push(x);
                stack.push((x, 0));
            }
        } else {
            tout[f] = clock;
            stack.pop();
        }
    }
    if order.len() != nf {
        return Err(Error::NotPlanarInput);
    }
    for &f in order.iter().rev() {
        let e = dual_parent_edge[f];
        if e != usize::MAX {
            let p = if face[2 * e] == f { face[2 * e + 1] } else { face[2 * e] };
            sub_w[p] += sub_w[f];
        }
    }

    let total_w = middle.len();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for e in 0..g.ends.len() {
        if tree_edge[e] {
            continue;
        }
        let (fa, fb) = (face[2 * e], face[2 * e + 1]);
        let child = if dual_parent_edge[fa] == e { fa } else { fb };
        let [mut a, mut b] = g.ends[e];
        let mut cycle = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                cycle.push(a);
                a = parent[a];
            } else {
                cycle.push(b);
                b = parent[b];
            }
        }
        cycle.push(a);
        let inside_cycle: usize = cycle
            .iter()
            .filter(|&&h| tin[child] <= tin[rep[h]] && tin[rep[h]] < tout[child])
            .map(|&h| weight(h))
            .sum();
        let cycle_w: usize = cycle.iter().map(|&h| weight(h)).sum();
        let inside = sub_w[child] - inside_cycle;
        let outside = total_w - inside - cycle_w;
        if 3 * inside <= 2 * n && 3 * outside <= 2 * n && best.as_ref().is_none_or(|(w, _)| cycle_w < *w) {
            best = Some((cycle_w, cycle));
        }
    }
    let (_, cycle) = best.ok_or_else(|| Error::BadPlan("no balanced fundamental cycle".into()))?;
    Ok(cycle
        .into_iter()
        .filter(|&h| weight(h) == 1)
        .map(|h| middle[h - offset])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Endpoint, NetworkBuilder};
    use crate::planar::{check_planarity, Planarity};
    use crate::tensor::Tensor;

    fn embed(net: &TensorNetwork) -> PlanarEmbedding {
        match check_planarity(net) {
            Planarity::Planar(e) => e,
            Planarity::NotPlanar(w) => panic!("not planar: {w:?}"),
        }
    }

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> TensorNetwork {
        let mut deg = vec![0; n];
        for &(a, b) in edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut b = NetworkBuilder::new();
        for d in &deg {
            b.add_vertex(Tensor::unit(*d));
        }
        let mut used = vec![0; n];
        for &(x, y) in edges {
            let (px, py) = (used[x], used[y]);
            used[x] += 1;
            used[y] += 1;
            b.connect(Endpoint::new(x, px), Endpoint::new(y, py));
        }
        b.build().unwrap()
    }

    fn check(net: &TensorNetwork) -> SeparatorResult {
        let s = planar_separator(net, &embed(net)).unwrap();
        let n = net.num_vertices();
        let mut all: Vec<usize> = s.separator.iter().chain(&s.parts[0]).chain(&s.parts[1]).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..n).collect::<Vec<_>>());
        assert!(3 * s.parts[0].len() <= 2 * n && 3 * s.parts[1].len() <= 2 * n);
        assert!(s.separator.len() <= ceil_sqrt(8 * n));
        for &(a, b) in net.edges() {
            let side = |v: usize| (s.parts[0].contains(&v), s.parts[1].contains(&v));
            let (x, y) = (side(a.vertex), side(b.vertex));
            assert!(!(x.0 && y.1) && !(x.1 && y.0), "edge crosses parts");
        }
        s
    }

    #[test]
    fn path_of_nine() {
        let edges: Vec<_> = (0..8).map(|i| (i, i + 1)).collect();
        let s = check(&from_edges(9, &edges));
        assert_eq!(s.separator.len(), 1);
        assert!(s.parts.iter().all(|p| p.len() <= 6));
    }

    #[test]
    fn triangle() {
        let s = check(&from_edges(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(s.separator.len() <= 2);
    }

    #[test]
    fn five_by_five_grid() {
        let k = 5;
        let mut edges = Vec::new();
        for r in 0..k {
            for c in 0..k {
                if c + 1 < k {
                    edges.push((r * k + c, r * k + c + 1));
                }
                if r + 1 < k {
                    edges.push((r * k + c, (r + 1) * k + c));
                }
            }
        }
        let s = check(&from_edges(k * k, &edges));
        assert!(s.separator.len() <= 15);
        assert!(s.parts.iter().all(|p| p.len() <= 16));
    }

    #[test]
    fn wheel_needs_the_cycle_phase() {
        // hub + rim: every BFS from the hub has one huge level
        let m = 40;
        let mut edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
        edges.extend((1..=m).map(|i| (i, i % m + 1)));
        check(&from_edges(m + 1, &edges));
    }

    #[test]
    fn nested_triangles() {
        // concentric triangles joined level to level: shallow BFS, fat levels
        let layers = 30;
        let mut edges = Vec::new();
        for l in 0..layers {
            for i in 0..3 {
                edges.push((3 * l + i, 3 * l + (i + 1) % 3));
                if l + 1 < layers {
                    edges.push((3 * l + i, 3 * (l + 1) + i));
                    edges.push((3 * l + i, 3 * (l + 1) + (i + 1) % 3));
                }
            }
        }
        check(&from_edges(3 * layers, &edges));
    }

    #[test]
    fn disconnected_pieces() {
        let s = check(&from_edges(6, &[(0, 1), (2, 3), (4, 5)]));
        assert!(s.separator.is_empty());
    }
}
