//! Left-right planarity test with embedding construction.
//!
//! Works on simple graphs given as adjacency lists over `0..n`; returns a
//! rotation system (cyclic neighbour order per vertex) when planar.

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Cyclic order with O(1) insertion next to a known neighbour.
#[derive(Default, Clone)]
struct Ring {
    cw: std::collections::HashMap<usize, (usize, usize)>, // w -> (cw next, ccw next)
    first: Option<usize>,
}

impl Ring {
    fn insert_cw_after(&mut self, w: usize, r: Option<usize>) {
        match r {
            None => {
                self.cw.insert(w, (w, w));
                self.first = Some(w);
            }
            Some(r) => {
                let next = self.cw[&r].0;
                self.cw.get_mut(&r).unwrap().0 = w;
                self.cw.insert(w, (next, r));
                self.cw.get_mut(&next).unwrap().1 = w;
            }
        }
    }

    fn insert_ccw_before(&mut self, w: usize, r: Option<usize>) {
        match r {
            None => self.insert_cw_after(w, None),
            Some(r) => {
                let prev = self.cw[&r].1;
                self.insert_cw_after(w, Some(prev));
                if self.first == Some(r) {
                    self.first = Some(w);
                }
            }
        }
    }

    fn insert_first(&mut self, w: usize) {
        let f = self.first;
        self.insert_ccw_before(w, f);
    }

    fn order(&self) -> Vec<usize> {
        let Some(f) = self.first else { return Vec::new() };
        let mut out = vec![f];
        let mut x = self.cw[&f].0;
        while x != f {
            out.push(x);
            x = self.cw[&x].0;
        }
        out
    }
}

struct Lr<'a> {
    adj: &'a [Vec<usize>],
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    // per oriented edge
    src: Vec<usize>,
    dst: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    refe: Vec<usize>,
    side: Vec<i64>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    oriented: std::collections::HashSet<(usize, usize)>,
    edge_id: std::collections::HashMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    ordered: Vec<Vec<usize>>,
    stack: Vec<ConflictPair>,
    next_pair: usize,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    rings: Vec<Ring>,
}

impl<'a> Lr<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Lr {
            adj,
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            src: Vec::new(),
            dst: Vec::new(),
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting: Vec::new(),
            refe: Vec::new(),
            side: Vec::new(),
            lowpt_edge: Vec::new(),
            stack_bottom: Vec::new(),
            oriented: Default::default(),
            edge_id: Default::default(),
            out: vec![Vec::new(); n],
            ordered: vec![Vec::new(); n],
            stack: Vec::new(),
            next_pair: 0,
            left_ref: vec![NONE; n],
            right_ref: vec![NONE; n],
            rings: vec![Ring::default(); n],
        }
    }

    fn add_oriented(&mut self, v: usize, w: usize) -> usize {
        let e = self.src.len();
        self.src.push(v);
        self.dst.push(w);
        self.lowpt.push(0);
        self.lowpt2.push(0);
        self.nesting.push(0);
        self.refe.push(NONE);
        self.side.push(1);
        self.lowpt_edge.push(NONE);
        self.stack_bottom.push(NONE);
        self.oriented.insert((v.min(w), v.max(w)));
        self.edge_id.insert((v, w), e);
        self.out[v].push(e);
        e
    }

    fn orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if self.oriented.contains(&(v.min(w), v.max(w))) {
                continue;
            }
            let vw = self.add_oriented(v, w);
            self.lowpt[vw] = self.height[v];
            self.lowpt2[vw] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orientation(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting[vw] += 1;
            }
            if e != NONE {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn top_id(&self) -> usize {
        self.stack.last().map_or(NONE, |p| p.id)
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn new_pair(&mut self, left: Interval, right: Interval) -> ConflictPair {
        self.next_pair += 1;
        ConflictPair { id: self.next_pair, left, right }
    }

    fn testing(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let ordered = self.ordered[v].clone();
        for (idx, &ei) in ordered.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.top_id();
            if ei == self.parent_edge[w] {
                if !self.testing(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                let p = self.new_pair(Interval::EMPTY, Interval { low: ei, high: ei });
                self.stack.push(p);
            }
            if self.lowpt[ei] < self.height[v] {
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.new_pair(Interval::EMPTY, Interval::EMPTY);
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are stacked");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refe[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refe[q.right.low] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(top.left, ei) || self.conflicting(top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.refe[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.refe[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.refe[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.refe[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.refe[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.refe[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("e has a return edge");
            let (hl, hr) = (top.left.high, top.right.high);
            if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                self.refe[e] = hl;
            } else {
                self.refe[e] = hr;
            }
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        // iterative: follow the reference chain, then unwind
        let mut chain = vec![e];
        let mut x = e;
        while self.refe[x] != NONE {
            x = self.refe[x];
            chain.push(x);
        }
        for i in (0..chain.len() - 1).rev() {
            let (a, b) = (chain[i], chain[i + 1]);
            self.side[a] *= self.side[b];
            self.refe[a] = NONE;
        }
        self.side[e]
    }

    fn embedding(&mut self, v: usize) {
        let ordered = self.ordered[v].clone();
        for ei in ordered {
            let w = self.dst[ei];
            if ei == self.parent_edge[w] {
                self.rings[w].insert_first(v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.embedding(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.rings[w].insert_cw_after(v, Some(r));
            } else {
                let r = self.left_ref[w];
                self.rings[w].insert_ccw_before(v, Some(r));
                self.left_ref[w] = v;
            }
        }
    }

    fn run(mut self) -> Option<Vec<Vec<usize>>> {
        let n = self.adj.len();
        let m: usize = self.adj.iter().map(|a| a.len()).sum::<usize>() / 2;
        if n > 2 && m > 3 * n - 6 {
            return None;
        }
        let mut roots = Vec::new();
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                roots.push(v);
                self.orientation(v);
            }
        }
        for v in 0..n {
            let mut o = self.out[v].clone();
            o.sort_by_key(|&e| self.nesting[e]);
            self.ordered[v] = o;
        }
        for &r in &roots {
            if !self.testing(r) {
                return None;
            }
        }
        for e in 0..self.src.len() {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        for v in 0..n {
            let mut o = self.out[v].clone();
            o.sort_by_key(|&e| self.nesting[e]);
            let mut prev = None;
            for &e in &o {
                self.rings[v].insert_cw_after(self.dst[e], prev);
                prev = Some(self.dst[e]);
            }
            self.ordered[v] = o;
        }
        for &r in &roots {
            self.embedding(r);
        }
        Some(self.rings.iter().map(Ring::order).collect())
    }
}

/// Rotation system of a simple graph if it is planar.
///
/// Runs on a dedicated thread with a large stack: the depth-first passes
/// recurse once per tree edge.
pub(crate) fn lr_embedding(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    if adj.len() < 2_000 {
        return Lr::new(adj).run();
    }
    let owned = adj.to_vec();
    std::thread::Builder::new()
        .stack_size(64 * 1024 * 1024 + adj.len() * 4096)
        .spawn(move || Lr::new(&owned).run())
        .expect("spawn planarity thread")
        .join()
        .expect("planarity thread")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn adj_of(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn small_complete_graphs() {
        assert!(lr_embedding(&adj_of(4, &complete(4))).is_some());
        assert!(lr_embedding(&adj_of(5, &complete(5))).is_none());
        let mut k5e = complete(5);
        k5e.pop();
        assert!(lr_embedding(&adj_of(5, &k5e)).is_some());
    }

    #[test]
    fn k33() {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        assert!(lr_embedding(&adj_of(6, &edges)).is_none());
        assert!(lr_embedding(&adj_of(6, &edges[..8])).is_some());
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        assert!(lr_embedding(&adj_of(10, &e)).is_none());
    }

    #[test]
    fn rotation_lists_cover_neighbours() {
        let adj = adj_of(4, &complete(4));
        let rot = lr_embedding(&adj).unwrap();
        for v in 0..4 {
            let mut a = rot[v].clone();
            a.sort_unstable();
            let mut b = adj[v].clone();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }
}
