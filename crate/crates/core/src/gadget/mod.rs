//! Planar gadgets: network fragments that stand in for a single tensor.

mod crossing;
mod symmetric;
pub mod tables;

pub use crossing::{
    build_crossing_gadget, build_eq_chain, build_neq2, build_restricted_crossing_gadget,
    build_two_of_three, build_xor3_from_two_of_three, crossing_tensor, restricted_two_of_three,
    restricted_xor3,
};
pub use symmetric::build_symmetric_gadget;
pub use tables::{table_a, table_b, table_c, table_chain, table_d, NamedFunction};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::network::{Endpoint, TensorNetwork, Vertex};
use crate::tensor::{decode_assignment, Tensor};

/// A network fragment with an ordered list of external ports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub body: TensorNetwork,
    pub ports: Vec<String>,
}

impl Gadget {
    /// Checks that `ports` lists each external label of `body` exactly once.
    pub fn new(body: TensorNetwork, ports: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for p in &ports {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
            if body.external_index(p).is_none() {
                return Err(Error::Format(format!("port {p:?} is not an external edge")));
            }
        }
        if ports.len() != body.external().len() {
            return Err(Error::Format(format!(
                "{} ports for {} external edges",
                ports.len(),
                body.external().len()
            )));
        }
        Ok(Gadget { body, ports })
    }

    pub fn arity(&self) -> usize {
        self.ports.len()
    }

    /// Body endpoint that carries port `i`.
    pub fn port_endpoint(&self, i: usize) -> Endpoint {
        let j = self.body.external_index(&self.ports[i]).expect("validated port");
        self.body.external()[j].0
    }

    /// Exact dense function of the gadget in port order.
    pub fn function_table(&self) -> Result<Tensor> {
        let raw = crate::engine::open_function_table(&self.body)?;
        self.reorder(&raw)
    }

    /// Same, by the brute-force definition (bounded by the brute cap).
    pub fn function_table_brute(&self) -> Result<Tensor> {
        let raw = self.body.function_table_brute()?;
        self.reorder(&raw)
    }

    fn reorder(&self, raw: &Tensor) -> Result<Tensor> {
        let k = self.arity();
        let ext_of_port: Vec<usize> = (0..k)
            .map(|i| self.body.external_index(&self.ports[i]).expect("validated port"))
            .collect();
        let mut table = Vec::with_capacity(1 << k);
        for idx in 0..1usize << k {
            let bits = decode_assignment(idx, k);
            let mut ext = vec![false; k];
            for (i, &j) in ext_of_port.iter().enumerate() {
                ext[j] = bits[i];
            }
            table.push(raw.value_at(&ext).clone());
        }
        Tensor::dense(k, table)
    }

    /// Every vertex tensor of the body.
    pub fn tensors(&self) -> impl Iterator<Item = &Tensor> {
        self.body.vertices().iter().map(|v| &v.tensor)
    }

    /// Planar with all ports on one face in port order.
    pub fn is_planar_with_ports_outside(&self) -> bool {
        crate::planar::ports_on_outer_face(&self.body, &self.ports)
    }
}

/// True iff the gadget's function equals `target` on every port assignment.
///
/// Small bodies are enumerated directly; larger ones are contracted exactly.
pub fn verify_gadget(g: &Gadget, target: &Tensor) -> Result<bool> {
    if target.arity() != g.arity() {
        return Ok(false);
    }
    let table = if g.body.edges().len() <= crate::network::DEFAULT_BRUTE_CAP.min(16) {
        g.function_table_brute()?
    } else {
        g.function_table()?
    };
    Ok(table.entries().eq(target.entries()))
}

/// Brute-force-only verification; fails with `TooLarge` above the cap.
pub fn verify_gadget_brute(g: &Gadget, target: &Tensor) -> Result<bool> {
    if target.arity() != g.arity() {
        return Ok(false);
    }
    Ok(g.function_table_brute()?.entries().eq(target.entries()))
}

/// Replaces vertex `id` by `gadget`; gadget port `i` takes over vertex port
/// `port_for[i]`. Gadget vertices get fresh ids above the current maximum.
pub fn substitute(
    net: &TensorNetwork,
    id: usize,
    gadget: &Gadget,
    port_for: &[usize],
) -> Result<TensorNetwork> {
    let pos = net.position(id).ok_or(Error::UnknownVertex(id))?;
    let degree = net.degree(pos);
    if port_for.len() != gadget.arity() || gadget.arity() != degree {
        return Err(Error::ArityMismatch {
            vertex: id,
            arity: gadget.arity(),
            degree,
        });
    }
    let offset = net.vertices().iter().map(|v| v.id + 1).max().unwrap_or(0);
    let shift = |ep: Endpoint| Endpoint::new(ep.vertex + offset, ep.port);
    let mut gadget_end: HashMap<usize, Endpoint> = HashMap::new();
    for (i, &p) in port_for.iter().enumerate() {
        if gadget_end.insert(p, shift(gadget.port_endpoint(i))).is_some() {
            return Err(Error::PortConflict {
                vertex: id,
                port: p,
                detail: "port assigned to two gadget ports",
            });
        }
    }
    let remap = |ep: Endpoint| {
        if ep.vertex == id {
            gadget_end[&ep.port]
        } else {
            ep
        }
    };
    let mut vertices: Vec<Vertex> = net.vertices().to_vec();
    vertices.remove(pos);
    vertices.extend(gadget.body.vertices().iter().map(|v| Vertex {
        id: v.id + offset,
        tensor: v.tensor.clone(),
    }));
    let mut edges: Vec<_> = net.edges().iter().map(|&(a, b)| (remap(a), remap(b))).collect();
    edges.extend(gadget.body.edges().iter().map(|&(a, b)| (shift(a), shift(b))));
    let external = net
        .external()
        .iter()
        .map(|(ep, l)| (remap(*ep), l.clone()))
        .collect();
    TensorNetwork::new(vertices, edges, external)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::NetworkBuilder;
    use crate::tensor::Count;

    #[test]
    fn substitution_preserves_value() {
        // star: OR_3 center with three free leaves, center replaced by its gadget
        let mut b = NetworkBuilder::new();
        let c = b.add_vertex(Tensor::or(3));
        for p in 0..3 {
            let leaf = b.add_vertex(Tensor::unit(1));
            b.connect_ports(c, p, leaf, 0);
        }
        let net = b.build().unwrap();
        let g = build_symmetric_gadget(&[0u64, 1, 1, 1].map(Count::from)).unwrap();
        let out = substitute(&net, c, &g, &[0, 1, 2]).unwrap();
        assert_eq!(out.evaluate_brute(&[]).unwrap(), Count::from(7u8));
    }

    #[test]
    fn gadget_port_validation() {
        let mut b = NetworkBuilder::new();
        let v = b.add_vertex(Tensor::unit(1));
        b.external(Endpoint::new(v, 0), "a");
        let body = b.build().unwrap();
        assert!(Gadget::new(body.clone(), vec!["b".into()]).is_err());
        assert!(Gadget::new(body.clone(), vec![]).is_err());
        assert!(Gadget::new(body, vec!["a".into()]).is_ok());
    }
}

/// Copies `g`'s body into `b`; returns the endpoint of every port, in port order.
pub(crate) fn instantiate(b: &mut crate::network::NetworkBuilder, g: &Gadget) -> Vec<Endpoint> {
    let ids: HashMap<usize, usize> = g
        .body
        .vertices()
        .iter()
        .map(|v| (v.id, b.add_vertex(v.tensor.clone())))
        .collect();
    let map = |ep: Endpoint| Endpoint::new(ids[&ep.vertex], ep.port);
    for &(x, y) in g.body.edges() {
        b.connect(map(x), map(y));
    }
    (0..g.arity()).map(|i| map(g.port_endpoint(i))).collect()
}

/// A gadget together with the function it must realize.
#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub name: String,
    pub gadget: Gadget,
    pub target: Tensor,
}

/// Weights used for the symmetric-gadget rows of the suite.
pub fn suite_weights(n: usize) -> Vec<crate::tensor::Count> {
    (0..=n).map(|i| crate::tensor::Count::from((i * 7 + 3) % 5)).collect()
}

/// Every gadget this crate builds, paired with its target function.
pub fn verification_suite() -> Vec<SuiteCase> {
    let case = |name: &str, gadget: Gadget, target: Tensor| SuiteCase {
        name: name.to_string(),
        gadget,
        target,
    };
    let two_of_three = Tensor::symmetric_u64(&[0, 0, 1, 0]);
    let xor3 = Tensor::symmetric_u64(&[0, 1, 0, 1]);
    let mut cases = vec![
        case("crossing", build_crossing_gadget(), crossing_tensor()),
        case("restricted-crossing", build_restricted_crossing_gadget(), crossing_tensor()),
        case("two-of-three", build_two_of_three(), two_of_three.clone()),
        case("restricted-two-of-three", restricted_two_of_three(), two_of_three),
        case("xor3", build_xor3_from_two_of_three(), xor3.clone()),
        case("restricted-xor3", restricted_xor3(), xor3),
        case("neq2", build_neq2(), Tensor::symmetric_u64(&[0, 1, 0])),
    ];
    for k in 2..=6 {
        cases.push(case(&format!("eq-chain k={k}"), build_eq_chain(k).expect("k >= 2"), Tensor::equality(k)));
    }
    for n in 1..=8 {
        let w = suite_weights(n);
        let g = build_symmetric_gadget(&w).expect("non-empty weights");
        cases.push(case(&format!("symmetric n={n}"), g, Tensor::symmetric(n, w).expect("n + 1 weights")));
    }
    cases
}
