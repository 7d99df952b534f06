//! Crossing replacement, degree reduction and the restricted-function expansion.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gadget::{
    build_crossing_gadget, build_eq_chain, build_neq2, build_restricted_crossing_gadget,
    build_symmetric_gadget, substitute, Gadget,
};
use crate::network::{Endpoint, NetworkBuilder, TensorNetwork, Vertex};
use crate::tensor::{Count, Tensor};

use super::drawing::Drawing;
use super::embedding::{check_planarity, Planarity};

/// Vertices of at least this degree are replaced by `reduce_degree`.
pub const DEFAULT_THRESHOLD: usize = 6;

/// Which crossing gadget to splice in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Nine vertices: `=_3`, `=_4` and `XOR_3`.
    Standard,
    /// Only `=_3`, `OR_2` and `≠_3`.
    Restricted,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Variant::Standard),
            "restricted" => Ok(Variant::Restricted),
            _ => Err(Error::Format(format!("unknown variant {s:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Standard => "standard",
            Variant::Restricted => "restricted",
        })
    }
}

/// Replaces every crossing of `drawing` by a crossing gadget.
///
/// Each edge is cut at its crossings in chord order; at a crossing of
/// edges `e < f`, `e` runs through ports N→S and `f` through E→W.
/// Original vertices keep their ids.
pub fn replace_crossings(net: &TensorNetwork, drawing: &Drawing, variant: Variant) -> Result<TensorNetwork> {
    let gadget = match variant {
        Variant::Standard => build_crossing_gadget(),
        Variant::Restricted => build_restricted_crossing_gadget(),
    };
    let base = net.vertices().iter().map(|v| v.id + 1).max().unwrap_or(0);
    let stride = gadget.body.vertices().iter().map(|v| v.id + 1).max().unwrap_or(0);
    let index: HashMap<(usize, usize), usize> =
        drawing.crossings.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let shift = |c: usize, ep: Endpoint| Endpoint::new(base + c * stride + ep.vertex, ep.port);
    let port = |c: usize, i: usize| shift(c, gadget.port_endpoint(i));

    let mut vertices: Vec<Vertex> = net.vertices().to_vec();
    let mut edges = Vec::with_capacity(net.edges().len() + drawing.crossings.len() * (gadget.body.edges().len() + 2));
    for (e, &(a, b)) in net.edges().iter().enumerate() {
        let mut prev = a;
        for &(f, _) in drawing.along.get(e).map(Vec::as_slice).unwrap_or(&[]) {
            let key = (e.min(f), e.max(f));
            let c = *index.get(&key).ok_or_else(|| Error::BadPlan(format!("crossing {key:?} not listed")))?;
            // ports are N, E, S, W
            let (input, output) = if e < f { (0, 2) } else { (1, 3) };
            edges.push((prev, port(c, input)));
            prev = port(c, output);
        }
        edges.push((prev, b));
    }
    for c in 0..drawing.crossings.len() {
        vertices.extend(gadget.body.vertices().iter().map(|v| Vertex {
            id: base + c * stride + v.id,
            tensor: v.tensor.clone(),
        }));
        edges.extend(gadget.body.edges().iter().map(|&(x, y)| (shift(c, x), shift(c, y))));
    }
    TensorNetwork::new(vertices, edges, net.external().to_vec())
}

/// Port order of every vertex, following a planar embedding when there is one.
fn rotation_ports(net: &TensorNetwork) -> Vec<Vec<usize>> {
    match check_planarity(net) {
        Planarity::Planar(emb) => (0..net.num_vertices()).map(|p| emb.port_order(net, p)).collect(),
        Planarity::NotPlanar(_) => (0..net.num_vertices()).map(|p| (0..net.degree(p)).collect()).collect(),
    }
}

/// Replaces every vertex of degree `>= threshold` by its symmetric-function
/// gadget, splicing ports in rotation order so planarity is kept.
pub fn reduce_degree(net: &TensorNetwork, threshold: usize) -> Result<TensorNetwork> {
    let targets: Vec<(usize, usize)> = (0..net.num_vertices())
        .filter(|&p| net.degree(p) >= threshold)
        .map(|p| (p, net.vertices()[p].id))
        .collect();
    if targets.is_empty() {
        return Ok(net.clone());
    }
    let mut weights = Vec::new();
    for &(p, id) in &targets {
        let w = net.vertices()[p]
            .tensor
            .symmetric_weights()
            .ok_or(Error::NonSymmetricHighDegree { vertex: id, degree: net.degree(p) })?;
        weights.push(w);
    }
    let rot = rotation_ports(net);
    let mut out = net.clone();
    let mut cache: HashMap<Vec<Count>, Gadget> = HashMap::new();
    for (&(p, id), w) in targets.iter().zip(weights) {
        let g = match cache.get(&w) {
            Some(g) => g.clone(),
            None => {
                let g = build_symmetric_gadget(&w)?;
                cache.insert(w, g.clone());
                g
            }
        };
        out = substitute(&out, id, &g, &rot[p])?;
    }
    Ok(out)
}

fn is_equality(t: &Tensor) -> bool {
    t.symmetric_weights().is_some_and(|w| {
        w.len() >= 2 && w.iter().enumerate().all(|(i, x)| *x == Count::from((i == 0 || i + 1 == w.len()) as u8))
    })
}

fn is_neq2(t: &Tensor) -> bool {
    t.arity() == 2 && t.symmetric_weights().is_some_and(|w| w == [0u8, 1, 0].map(Count::from))
}

/// `=_1` as a `=_3` with a self-loop.
fn eq1_gadget() -> Gadget {
    let mut b = NetworkBuilder::new();
    let v = b.add_vertex(Tensor::equality(3));
    b.external(Endpoint::new(v, 0), "p0");
    b.connect_ports(v, 1, v, 2);
    Gadget::new(b.build().expect("valid"), vec!["p0".into()]).expect("port")
}

/// Rewrites equality and `≠_2` vertices into `=_3` and `≠_3` only:
/// `=_k` (k ≥ 4) becomes a chain of `=_3`, `=_2` is spliced out, `=_1`
/// becomes a `=_3` with a self-loop and `≠_2` becomes a `≠_3`/`=_3` pair.
pub fn expand_restricted(net: &TensorNetwork) -> Result<TensorNetwork> {
    let rot = rotation_ports(net);
    let mut out = net.clone();
    let neq2 = build_neq2();
    let eq1 = eq1_gadget();
    let mut chains: HashMap<usize, Gadget> = HashMap::new();
    for (p, v) in net.vertices().iter().enumerate() {
        let t = &v.tensor;
        let k = t.arity();
        if is_equality(t) && k >= 4 {
            if let std::collections::hash_map::Entry::Vacant(e) = chains.entry(k) {
                e.insert(build_eq_chain(k)?);
            }
            out = substitute(&out, v.id, &chains[&k], &rot[p])?;
        } else if is_equality(t) && k == 1 {
            out = substitute(&out, v.id, &eq1, &[0])?;
        } else if is_neq2(t) {
            out = substitute(&out, v.id, &neq2, &rot[p])?;
        }
    }
    let eq2: Vec<usize> = out
        .vertices()
        .iter()
        .filter(|v| v.tensor.arity() == 2 && is_equality(&v.tensor))
        .map(|v| v.id)
        .collect();
    for id in eq2 {
        out = splice_wire(&out, id)?;
    }
    Ok(out)
}

/// Removes an `=_2` vertex, joining its two neighbours directly.
fn splice_wire(net: &TensorNetwork, id: usize) -> Result<TensorNetwork> {
    let pos = net.position(id).ok_or(Error::UnknownVertex(id))?;
    let mut vertices: Vec<Vertex> = net.vertices().to_vec();
    vertices.remove(pos);
    let mut ends: Vec<Option<Endpoint>> = vec![None, None];
    let mut edges = Vec::new();
    let mut self_loop = false;
    for &(a, b) in net.edges() {
        match (a.vertex == id, b.vertex == id) {
            (true, true) => self_loop = true,
            (true, false) => ends[a.port] = Some(b),
            (false, true) => ends[b.port] = Some(a),
            (false, false) => edges.push((a, b)),
        }
    }
    let mut external = Vec::new();
    let mut dangling: Option<String> = None;
    for (ep, label) in net.external() {
        if ep.vertex == id {
            dangling = Some(label.clone());
            ends[ep.port] = None;
        } else {
            external.push((*ep, label.clone()));
        }
    }
    if self_loop {
        // a closed =_2 loop is worth 2: two =_3 self-loops joined by an edge
        let next = vertices.iter().map(|v| v.id + 1).max().unwrap_or(0);
        for i in 0..2 {
            vertices.push(Vertex { id: next + i, tensor: Tensor::equality(3) });
            edges.push((Endpoint::new(next + i, 1), Endpoint::new(next + i, 2)));
        }
        edges.push((Endpoint::new(next, 0), Endpoint::new(next + 1, 0)));
    } else {
        match (ends[0], ends[1], dangling) {
            (Some(x), Some(y), _) => edges.push((x, y)),
            (Some(x), None, Some(l)) | (None, Some(x), Some(l)) => external.push((x, l)),
            _ => return Ok(net.clone()),
        }
    }
    TensorNetwork::new(vertices, edges, external)
}
