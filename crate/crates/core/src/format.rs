//! JSON interchange for networks and gadgets.
//!
//! ```json
//! {"vertices":[{"id":0,"tensor":{"kind":"symmetric","arity":1,"values":["1","1"]}}],
//!  "edges":[],
//!  "external":[[[0,0],"x"]]}
//! ```
//! Values are decimal strings so counts of any size survive the trip.
//! Gadgets append a `"ports"` array of external labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::Gadget;
use crate::network::{Endpoint, TensorNetwork, Vertex};
use crate::tensor::{Count, Tensor};

#[derive(Debug, Serialize, Deserialize)]
struct JsonTensor {
    kind: String,
    arity: usize,
    values: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonVertex {
    id: usize,
    tensor: JsonTensor,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonNetwork {
    vertices: Vec<JsonVertex>,
    edges: Vec<[[usize; 2]; 2]>,
    external: Vec<([usize; 2], String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ports: Option<Vec<String>>,
}

fn tensor_to_json(t: &Tensor) -> JsonTensor {
    let (kind, arity, values) = match t {
        Tensor::Dense { arity, table } => ("dense", *arity, table),
        Tensor::Symmetric { arity, weights } => ("symmetric", *arity, weights),
    };
    JsonTensor {
        kind: kind.to_string(),
        arity,
        values: values.iter().map(Count::to_string).collect(),
    }
}

fn tensor_from_json(t: JsonTensor) -> Result<Tensor> {
    let values = t
        .values
        .iter()
        .map(|s| {
            s.parse::<Count>()
                .map_err(|_| Error::Format(format!("not a nonnegative integer: {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    match t.kind.as_str() {
        "dense" => Tensor::dense(t.arity, values),
        "symmetric" => Tensor::symmetric(t.arity, values),
        other => Err(Error::Format(format!("unknown tensor kind {other:?}"))),
    }
}

fn ep(e: Endpoint) -> [usize; 2] {
    [e.vertex, e.port]
}

fn to_json_struct(net: &TensorNetwork, ports: Option<Vec<String>>) -> JsonNetwork {
    JsonNetwork {
        vertices: net
            .vertices()
            .iter()
            .map(|v| JsonVertex {
                id: v.id,
                tensor: tensor_to_json(&v.tensor),
            })
            .collect(),
        edges: net.edges().iter().map(|&(a, b)| [ep(a), ep(b)]).collect(),
        external: net
            .external()
            .iter()
            .map(|(e, l)| (ep(*e), l.clone()))
            .collect(),
        ports,
    }
}

fn from_json_struct(j: JsonNetwork) -> Result<(TensorNetwork, Option<Vec<String>>)> {
    let vertices = j
        .vertices
        .into_iter()
        .map(|v| {
            Ok(Vertex {
                id: v.id,
                tensor: tensor_from_json(v.tensor)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mk = |a: [usize; 2]| Endpoint::new(a[0], a[1]);
    let edges = j.edges.into_iter().map(|[a, b]| (mk(a), mk(b))).collect();
    let external = j.external.into_iter().map(|(a, l)| (mk(a), l)).collect();
    Ok((TensorNetwork::new(vertices, edges, external)?, j.ports))
}

pub fn network_to_json(net: &TensorNetwork) -> String {
    serde_json::to_string_pretty(&to_json_struct(net, None)).expect("serializable")
}

pub fn network_from_json(text: &str) -> Result<TensorNetwork> {
    let j: JsonNetwork = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    Ok(from_json_struct(j)?.0)
}

pub fn gadget_to_json(g: &Gadget) -> String {
    serde_json::to_string_pretty(&to_json_struct(&g.body, Some(g.ports.clone())))
        .expect("serializable")
}

pub fn gadget_from_json(text: &str) -> Result<Gadget> {
    let j: JsonNetwork = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let (body, ports) = from_json_struct(j)?;
    let ports = ports.ok_or_else(|| Error::Format("gadget is missing \"ports\"".into()))?;
    Gadget::new(body, ports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::NetworkBuilder;

    #[test]
    fn parses_documented_shape() {
        let text = r#"{"vertices":[{"id":0,"tensor":{"kind":"symmetric","arity":1,"values":["1","1"]}}],
                      "edges":[],"external":[[[0,0],"x"]]}"#;
        let net = network_from_json(text).unwrap();
        assert_eq!(net.num_vertices(), 1);
        assert_eq!(net.external()[0].1, "x");
    }

    #[test]
    fn big_values_survive() {
        let big: Count = "123456789012345678901234567890".parse().unwrap();
        let mut b = NetworkBuilder::new();
        b.add_vertex(Tensor::symmetric(0, vec![big.clone()]).unwrap());
        let net = b.build().unwrap();
        let back = network_from_json(&network_to_json(&net)).unwrap();
        assert_eq!(back, net);
        assert_eq!(*back.vertices()[0].tensor.value(0), big);
    }

    #[test]
    fn rejects_garbage() {
        assert!(network_from_json("{").is_err());
        let bad = r#"{"vertices":[{"id":0,"tensor":{"kind":"weird","arity":0,"values":["1"]}}],"edges":[],"external":[]}"#;
        assert!(matches!(network_from_json(bad), Err(Error::Format(_))));
        let neg = r#"{"vertices":[{"id":0,"tensor":{"kind":"dense","arity":0,"values":["-1"]}}],"edges":[],"external":[]}"#;
        assert!(network_from_json(neg).is_err());
    }
}
