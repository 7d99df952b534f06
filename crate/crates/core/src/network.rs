//! Tensor networks over the Boolean domain and their defining sum-product.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tensor::{Count, Tensor};

/// Default bound on the number of internal edges enumerated by [`TensorNetwork::evaluate_brute`].
pub const DEFAULT_BRUTE_CAP: usize = 30;

/// A (vertex id, port index) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub vertex: usize,
    pub port: usize,
}

impl Endpoint {
    pub fn new(vertex: usize, port: usize) -> Self {
        Endpoint { vertex, port }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub tensor: Tensor,
}

/// What occupies a vertex port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeRef {
    Internal(usize),
    External(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkStats {
    pub vertices: usize,
    pub max_degree: usize,
    pub edge_count: usize,
    pub is_closed: bool,
}

/// A multigraph with a tensor on every vertex. Self-loops and parallel
/// edges are allowed; every port is used by exactly one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorNetwork {
    vertices: Vec<Vertex>,
    edges: Vec<(Endpoint, Endpoint)>,
    external: Vec<(Endpoint, String)>,
    index: HashMap<usize, usize>,
    incidence: Vec<Vec<EdgeRef>>,
}

impl TensorNetwork {
    /// Validates and builds a network.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(Endpoint, Endpoint)>,
        external: Vec<(Endpoint, String)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (pos, v) in vertices.iter().enumerate() {
            if index.insert(v.id, pos).is_some() {
                return Err(Error::DuplicateVertex(v.id));
            }
        }
        let mut slots: Vec<Vec<Option<EdgeRef>>> = vertices
            .iter()
            .map(|v| vec![None; v.tensor.arity()])
            .collect();
        let mut degree = vec![0usize; vertices.len()];
        let mut place = |ep: Endpoint, r: EdgeRef| -> Result<()> {
            let pos = *index.get(&ep.vertex).ok_or(Error::DanglingEndpoint {
                vertex: ep.vertex,
                port: ep.port,
            })?;
            degree[pos] += 1;
            match slots[pos].get_mut(ep.port) {
                Some(slot @ None) => {
                    *slot = Some(r);
                    Ok(())
                }
                Some(Some(_)) => Err(Error::PortConflict {
                    vertex: ep.vertex,
                    port: ep.port,
                    detail: "port used twice",
                }),
                // out-of-range ports are reported below as an arity mismatch
                None => Ok(()),
            }
        };
        for (i, &(a, b)) in edges.iter().enumerate() {
            place(a, EdgeRef::Internal(i))?;
            place(b, EdgeRef::Internal(i))?;
        }
        let mut labels = std::collections::HashSet::new();
        for (j, (ep, label)) in external.iter().enumerate() {
            if !labels.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            place(*ep, EdgeRef::External(j))?;
        }
        let mut incidence = Vec::with_capacity(vertices.len());
        for (pos, v) in vertices.iter().enumerate() {
            let arity = v.tensor.arity();
            if degree[pos] != arity {
                return Err(Error::ArityMismatch {
                    vertex: v.id,
                    arity,
                    degree: degree[pos],
                });
            }
            let mut ports = Vec::with_capacity(arity);
            for (port, slot) in slots[pos].iter().enumerate() {
                ports.push(slot.ok_or(Error::PortConflict {
                    vertex: v.id,
                    port,
                    detail: "port unused",
                })?);
            }
            incidence.push(ports);
        }
        Ok(TensorNetwork {
            vertices,
            edges,
            external,
            index,
            incidence,
        })
    }

    pub fn empty() -> Self {
        Self::new(vec![], vec![], vec![]).expect("empty network is valid")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Endpoint, Endpoint)] {
        &self.edges
    }

    pub fn external(&self) -> &[(Endpoint, String)] {
        &self.external
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_closed(&self) -> bool {
        self.external.is_empty()
    }

    /// Position of a vertex id in [`Self::vertices`].
    pub fn position(&self, id: usize) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn vertex(&self, id: usize) -> Option<&Vertex> {
        self.position(id).map(|p| &self.vertices[p])
    }

    /// Port occupancy of the vertex at position `pos`.
    pub fn incidence(&self, pos: usize) -> &[EdgeRef] {
        &self.incidence[pos]
    }

    /// Positions of the two endpoints of internal edge `e`.
    pub fn edge_positions(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e];
        (self.index[&a.vertex], self.index[&b.vertex])
    }

    pub fn degree(&self, pos: usize) -> usize {
        self.incidence[pos].len()
    }

    pub fn external_index(&self, label: &str) -> Option<usize> {
        self.external.iter().position(|(_, l)| l == label)
    }

    pub fn stats(&self) -> NetworkStats {
        NetworkStats {
            vertices: self.vertices.len(),
            max_degree: self.incidence.iter().map(Vec::len).max().unwrap_or(0),
            edge_count: self.edges.len(),
            is_closed: self.is_closed(),
        }
    }

    /// Copy with the tensor at `id` replaced; the arity must match.
    pub fn with_tensor(&self, id: usize, tensor: Tensor) -> Result<Self> {
        let mut vertices = self.vertices.clone();
        let pos = self.position(id).ok_or(Error::UnknownVertex(id))?;
        vertices[pos].tensor = tensor;
        Self::new(vertices, self.edges.clone(), self.external.clone())
    }

    /// The defining sum-product, enumerating every internal edge assignment.
    /// `ext[j]` is the bit on external edge `j`.
    pub fn evaluate_brute(&self, ext: &[bool]) -> Result<Count> {
        self.evaluate_brute_with_cap(ext, DEFAULT_BRUTE_CAP)
    }

    pub fn evaluate_brute_with_cap(&self, ext: &[bool], cap: usize) -> Result<Count> {
        if ext.len() != self.external.len() {
            return Err(Error::BadAssignment(format!(
                "{} bits for {} external edges",
                ext.len(),
                self.external.len()
            )));
        }
        let m = self.edges.len();
        if m > cap || m >= 63 {
            return Err(Error::TooLarge {
                what: "internal edge set",
                size: m,
                cap,
            });
        }
        let mut total = Count::zero();
        for assignment in 0u64..1u64 << m {
            let mut prod = Count::one();
            for (pos, v) in self.vertices.iter().enumerate() {
                let idx = self.incidence[pos].iter().fold(0usize, |acc, r| {
                    let bit = match *r {
                        EdgeRef::Internal(e) => (assignment >> e) & 1 == 1,
                        EdgeRef::External(j) => ext[j],
                    };
                    (acc << 1) | bit as usize
                });
                let val = v.tensor.value(idx);
                if val.is_zero() {
                    prod = Count::zero();
                    break;
                }
                prod *= val;
            }
            total += prod;
        }
        Ok(total)
    }

    /// Brute-force dense tensor over the external edges, in external order.
    pub fn function_table_brute(&self) -> Result<Tensor> {
        let k = self.external.len();
        let mut table = Vec::with_capacity(1 << k);
        for idx in 0..1usize << k {
            let bits = crate::tensor::decode_assignment(idx, k);
            table.push(self.evaluate_brute(&bits)?);
        }
        Tensor::dense(k, table)
    }

    /// Merges `u` and `v` into one vertex (keeping `u`'s id), summing every
    /// edge between them. Remaining ports: those of `u`, then of `v`, in order.
    pub fn contract_pair(&self, u: usize, v: usize) -> Result<Self> {
        let pu = self.position(u).ok_or(Error::UnknownVertex(u))?;
        let pv = self.position(v).ok_or(Error::UnknownVertex(v))?;
        if pu == pv {
            return Err(Error::BadPlan(format!("cannot merge vertex {u} with itself")));
        }
        let shared_of = |r: &EdgeRef| -> Option<usize> {
            match *r {
                EdgeRef::Internal(e) => {
                    let (a, b) = self.edge_positions(e);
                    ((a == pu && b == pv) || (a == pv && b == pu)).then_some(e)
                }
                EdgeRef::External(_) => None,
            }
        };
        let mut shared: Vec<usize> = self.incidence[pu].iter().filter_map(shared_of).collect();
        shared.sort_unstable();
        shared.dedup();
        let shared_slot: HashMap<usize, usize> =
            shared.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        // Source of each port bit: Ok(result port) or Err(shared slot).
        let mut next = 0;
        let mut route = |pos: usize| -> Vec<std::result::Result<usize, usize>> {
            self.incidence[pos]
                .iter()
                .map(|r| match shared_of(r) {
                    Some(e) => Err(shared_slot[&e]),
                    None => {
                        next += 1;
                        Ok(next - 1)
                    }
                })
                .collect()
        };
        let route_u = route(pu);
        let route_v = route(pv);
        let arity = next;
        let s = shared.len();

        let tu = &self.vertices[pu].tensor;
        let tv = &self.vertices[pv].tensor;
        let index_of = |routes: &[std::result::Result<usize, usize>], out: usize, sh: usize| {
            routes.iter().fold(0usize, |acc, r| {
                let bit = match *r {
                    Ok(p) => (out >> (arity - 1 - p)) & 1,
                    Err(k) => (sh >> k) & 1,
                };
                (acc << 1) | bit
            })
        };
        let mut table = Vec::with_capacity(1 << arity);
        for out in 0..1usize << arity {
            let mut acc = Count::zero();
            for sh in 0..1usize << s {
                let a = tu.value(index_of(&route_u, out, sh));
                if a.is_zero() {
                    continue;
                }
                acc += a * tv.value(index_of(&route_v, out, sh));
            }
            table.push(acc);
        }

        let remap = |ep: Endpoint| -> Endpoint {
            if ep.vertex == u {
                Endpoint::new(u, *route_u[ep.port].as_ref().expect("unshared port"))
            } else if ep.vertex == v {
                Endpoint::new(u, *route_v[ep.port].as_ref().expect("unshared port"))
            } else {
                ep
            }
        };
        let mut vertices = self.vertices.clone();
        vertices[pu].tensor = Tensor::dense(arity, table)?;
        vertices.remove(pv);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| !shared_slot.contains_key(e))
            .map(|(_, &(a, b))| (remap(a), remap(b)))
            .collect();
        let external = self
            .external
            .iter()
            .map(|(ep, l)| (remap(*ep), l.clone()))
            .collect();
        Self::new(vertices, edges, external)
    }

    /// Sums the diagonal of the self-loop joining ports `a` and `b` of `id`.
    pub fn trace_self_loop(&self, id: usize, a: usize, b: usize) -> Result<Self> {
        let pos = self.position(id).ok_or(Error::UnknownVertex(id))?;
        let not_loop = Error::NotALoop { vertex: id, a, b };
        let ports = &self.incidence[pos];
        let e = match (ports.get(a), ports.get(b)) {
            (Some(EdgeRef::Internal(x)), Some(EdgeRef::Internal(y))) if x == y && a != b => *x,
            _ => return Err(not_loop),
        };
        let t = &self.vertices[pos].tensor;
        let d = t.arity();
        let kept: Vec<usize> = (0..d).filter(|&p| p != a && p != b).collect();
        let arity = d - 2;
        let mut table = Vec::with_capacity(1 << arity);
        for out in 0..1usize << arity {
            let mut base = 0usize;
            for (i, &p) in kept.iter().enumerate() {
                if (out >> (arity - 1 - i)) & 1 == 1 {
                    base |= 1 << (d - 1 - p);
                }
            }
            let both = (1 << (d - 1 - a)) | (1 << (d - 1 - b));
            table.push(t.value(base) + t.value(base | both));
        }
        let new_port = |p: usize| kept.iter().position(|&k| k == p).expect("kept port");
        let remap = |ep: Endpoint| {
            if ep.vertex == id {
                Endpoint::new(id, new_port(ep.port))
            } else {
                ep
            }
        };
        let mut vertices = self.vertices.clone();
        vertices[pos].tensor = Tensor::dense(arity, table)?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(x, y))| (remap(x), remap(y)))
            .collect();
        let external = self
            .external
            .iter()
            .map(|(ep, l)| (remap(*ep), l.clone()))
            .collect();
        Self::new(vertices, edges, external)
    }

    /// Same network with vertex ids renumbered 0.. in position order.
    pub fn renumbered(&self) -> Self {
        let remap = |ep: Endpoint| Endpoint::new(self.index[&ep.vertex], ep.port);
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| Vertex {
                id: i,
                tensor: v.tensor.clone(),
            })
            .collect();
        let edges = self.edges.iter().map(|&(a, b)| (remap(a), remap(b))).collect();
        let external = self
            .external
            .iter()
            .map(|(ep, l)| (remap(*ep), l.clone()))
            .collect();
        Self::new(vertices, edges, external).expect("renumbering preserves validity")
    }
}

/// Incremental construction with sequential vertex ids.
#[derive(Debug, Default, Clone)]
pub struct NetworkBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<(Endpoint, Endpoint)>,
    external: Vec<(Endpoint, String)>,
    next_id: usize,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, tensor: Tensor) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        self.vertices.push(Vertex { id, tensor });
        id
    }

    pub fn connect(&mut self, a: Endpoint, b: Endpoint) -> usize {
        self.edges.push((a, b));
        self.edges.len() - 1
    }

    pub fn connect_ports(&mut self, u: usize, pu: usize, v: usize, pv: usize) -> usize {
        self.connect(Endpoint::new(u, pu), Endpoint::new(v, pv))
    }

    pub fn external(&mut self, at: Endpoint, label: impl Into<String>) {
        self.external.push((at, label.into()));
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn build(self) -> Result<TensorNetwork> {
        TensorNetwork::new(self.vertices, self.edges, self.external)
    }
}
