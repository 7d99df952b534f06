//! Crossing gadgets and the small gadgets used to restrict their function set.

use crate::error::{Error, Result};
use crate::network::{Endpoint, NetworkBuilder};
use crate::tensor::Tensor;

use super::{instantiate, substitute, Gadget};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Two independent wires crossing: one iff `N = S` and `E = W`.
pub fn crossing_tensor() -> Tensor {
    let table: Vec<u64> = (0..16usize)
        .map(|i| {
            let (n, e, s, w) = (i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
            (n == s && e == w) as u64
        })
        .collect();
    Tensor::dense_u64(4, &table)
}

/// Nine-vertex crossing gadget laid out as a 3x3 grid.
///
/// The four corners are `=_3` and carry the ports (N, E, S, W clockwise);
/// the four edge midpoints are `XOR_3` and the center is `=_4`. With the
/// center at one the midpoints make neighbouring corners equal, with it at
/// zero they make them differ, so opposite corners always agree.
pub fn build_crossing_gadget() -> Gadget {
    let mut b = NetworkBuilder::new();
    let eq3 = Tensor::symmetric_u64(&[1, 0, 0, 1]);
    let xor3 = Tensor::symmetric_u64(&[0, 1, 0, 1]);
    // row-major f1..f9
    let f: Vec<usize> = (0..9)
        .map(|i| match i {
            0 | 2 | 6 | 8 => b.add_vertex(eq3.clone()),
            4 => b.add_vertex(Tensor::symmetric_u64(&[1, 0, 0, 0, 1])),
            _ => b.add_vertex(xor3.clone()),
        })
        .collect();
    // corner ports: 0 = external, 1 and 2 = the two adjacent midpoints
    b.external(Endpoint::new(f[0], 0), "N");
    b.external(Endpoint::new(f[2], 0), "E");
    b.external(Endpoint::new(f[8], 0), "S");
    b.external(Endpoint::new(f[6], 0), "W");
    // midpoint ports: 0 and 1 = corners, 2 = center
    b.connect_ports(f[0], 1, f[1], 0);
    b.connect_ports(f[1], 1, f[2], 1);
    b.connect_ports(f[2], 2, f[5], 0);
    b.connect_ports(f[5], 1, f[8], 1);
    b.connect_ports(f[8], 2, f[7], 1);
    b.connect_ports(f[7], 0, f[6], 2);
    b.connect_ports(f[6], 1, f[3], 1);
    b.connect_ports(f[3], 0, f[0], 2);
    // center ports follow the midpoints clockwise: f2, f6, f8, f4
    b.connect_ports(f[1], 2, f[4], 0);
    b.connect_ports(f[5], 2, f[4], 1);
    b.connect_ports(f[7], 2, f[4], 2);
    b.connect_ports(f[3], 2, f[4], 3);
    Gadget::new(b.build().expect("crossing gadget is well formed"), labels(&["N", "E", "S", "W"]))
        .expect("ports match")
}

/// `=_k` as a path of `k - 2` vertices of `=_3` (a plain identity wire for `k = 2`).
pub fn build_eq_chain(k: usize) -> Result<Gadget> {
    if k < 2 {
        return Err(Error::BadArity(k));
    }
    let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
    let mut b = NetworkBuilder::new();
    if k == 2 {
        let v = b.add_vertex(Tensor::dense_u64(2, &[1, 0, 0, 1]));
        b.external(Endpoint::new(v, 0), names[0].clone());
        b.external(Endpoint::new(v, 1), names[1].clone());
        return Gadget::new(b.build()?, names);
    }
    let path: Vec<usize> = (0..k - 2).map(|_| b.add_vertex(Tensor::equality(3))).collect();
    b.external(Endpoint::new(path[0], 0), names[0].clone());
    for (i, &v) in path.iter().enumerate() {
        b.external(Endpoint::new(v, 1), names[i + 1].clone());
        if let Some(&next) = path.get(i + 1) {
            b.connect_ports(v, 2, next, 0);
        }
    }
    b.external(Endpoint::new(path[k - 3], 2), names[k - 1].clone());
    Gadget::new(b.build()?, names)
}

/// `≠_2` from one `≠_3` and one `=_3` sharing two parallel edges.
pub fn build_neq2() -> Gadget {
    let mut b = NetworkBuilder::new();
    let neq = b.add_vertex(Tensor::symmetric_u64(&[0, 1, 1, 0]));
    let eq = b.add_vertex(Tensor::equality(3));
    b.external(Endpoint::new(neq, 0), "a");
    b.connect_ports(neq, 1, eq, 0);
    b.connect_ports(neq, 2, eq, 1);
    b.external(Endpoint::new(eq, 2), "b");
    Gadget::new(b.build().expect("valid"), labels(&["a", "b"])).expect("ports match")
}

/// The 2-of-3 function `[0,0,1,0]` from `≠_3`, `=_4` and `OR_2`.
///
/// A `≠_3` hub rejects constant inputs; every input is copied by a `=_4`
/// into the hub and into two of the three pairwise `OR_2` checks, which
/// reject two zeros.
pub fn build_two_of_three() -> Gadget {
    let mut b = NetworkBuilder::new();
    let hub = b.add_vertex(Tensor::symmetric_u64(&[0, 1, 1, 0]));
    // copy ports in cyclic order: input, OR to the next copy, hub, OR to the previous copy
    let copies: Vec<usize> = (0..3).map(|_| b.add_vertex(Tensor::equality(4))).collect();
    let ors: Vec<usize> = (0..3).map(|_| b.add_vertex(Tensor::or(2))).collect();
    for i in 0..3 {
        b.external(Endpoint::new(copies[i], 0), format!("x{i}"));
        b.connect_ports(copies[i], 2, hub, i);
        b.connect_ports(copies[i], 1, ors[i], 0);
        b.connect_ports(copies[(i + 1) % 3], 3, ors[i], 1);
    }
    Gadget::new(b.build().expect("valid"), labels(&["x0", "x1", "x2"])).expect("ports match")
}

/// [`build_two_of_three`] with every `=_4` split into two `=_3`.
pub fn restricted_two_of_three() -> Gadget {
    let mut g = build_two_of_three();
    let eq4 = build_eq_chain(4).expect("k = 4");
    let copies: Vec<usize> = g
        .body
        .vertices()
        .iter()
        .filter(|v| v.tensor == Tensor::equality(4))
        .map(|v| v.id)
        .collect();
    for id in copies {
        g.body = substitute(&g.body, id, &eq4, &[0, 1, 2, 3]).expect("arity 4");
    }
    g
}

fn xor3_from(two_of_three: &Gadget, neq2: &Gadget) -> Gadget {
    let mut b = NetworkBuilder::new();
    let t: Vec<Vec<Endpoint>> = (0..3).map(|_| instantiate(&mut b, two_of_three)).collect();
    for i in 0..3 {
        // triangle side between T_i and T_{i+1}
        b.connect(t[i][1], t[(i + 1) % 3][2]);
        let leg = instantiate(&mut b, neq2);
        b.connect(leg[1], t[i][0]);
        b.external(leg[0], format!("z{i}"));
    }
    Gadget::new(b.build().expect("valid"), labels(&["z0", "z1", "z2"])).expect("ports match")
}

/// `XOR_3` from three 2-of-3 gadgets in a triangle, each fed through a `≠_2`.
///
/// The triangle alone accepts even-weight inputs exactly once; negating the
/// three inputs turns that into odd parity.
pub fn build_xor3_from_two_of_three() -> Gadget {
    let mut b = NetworkBuilder::new();
    let v = b.add_vertex(Tensor::symmetric_u64(&[0, 1, 0]));
    b.external(Endpoint::new(v, 0), "a");
    b.external(Endpoint::new(v, 1), "b");
    let neq2 = Gadget::new(b.build().expect("valid"), labels(&["a", "b"])).expect("ports");
    xor3_from(&build_two_of_three(), &neq2)
}

/// `XOR_3` using only `=_3`, `OR_2` and `≠_3`.
pub fn restricted_xor3() -> Gadget {
    xor3_from(&restricted_two_of_three(), &build_neq2())
}

/// Crossing gadget whose vertex functions are all `=_3`, `OR_2` or `≠_3`.
pub fn build_restricted_crossing_gadget() -> Gadget {
    let base = build_crossing_gadget();
    let xor = restricted_xor3();
    let eq4 = build_eq_chain(4).expect("k = 4");
    let mut body = base.body.clone();
    for v in base.body.vertices() {
        let arity = v.tensor.arity();
        if v.tensor == Tensor::symmetric_u64(&[0, 1, 0, 1]) {
            body = substitute(&body, v.id, &xor, &[0, 1, 2]).expect("arity 3");
        } else if arity == 4 {
            body = substitute(&body, v.id, &eq4, &[0, 1, 2, 3]).expect("arity 4");
        }
    }
    Gadget::new(body, base.ports).expect("ports unchanged")
}
