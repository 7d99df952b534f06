//! CNF model counting through planar tensor networks.
//!
//! Every variable becomes two equality vertices (one per polarity) joined
//! through a `≠_2` vertex; every clause becomes an OR vertex wired to its
//! literals. The network's value is the number of satisfying assignments
//! of the variables that occur.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::engine::{contract_full, ContractionStats, Strategy};
use crate::error::{Error, Result};
use crate::network::{Endpoint, NetworkBuilder, TensorNetwork};
use crate::planar::{
    check_planarity, circular_drawing_with_trials, expand_restricted, reduce_degree,
    replace_crossings, Variant, DEFAULT_THRESHOLD, DEFAULT_TRIALS,
};
use crate::tensor::{Count, Tensor};

/// Largest variable count [`brute_count`] enumerates.
pub const BRUTE_MAX_VARS: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i64>>,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

impl CnfFormula {
    /// Validates literals (`±1..=±num_vars`, no empty clause) and drops
    /// repeated literals within a clause.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        let mut pos = vec![0; num_vars];
        let mut neg = vec![0; num_vars];
        let mut out = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::Syntax { line: 0, msg: format!("clause {j} is empty") });
            }
            let mut c: Vec<i64> = Vec::with_capacity(clause.len());
            for lit in clause {
                let v = lit.unsigned_abs() as usize;
                if lit == 0 || v > num_vars {
                    return Err(Error::Syntax { line: 0, msg: format!("literal {lit} out of range") });
                }
                if !c.contains(&lit) {
                    c.push(lit);
                    if lit > 0 {
                        pos[v - 1] += 1;
                    } else {
                        neg[v - 1] += 1;
                    }
                }
            }
            out.push(c);
        }
        Ok(CnfFormula { num_vars, clauses: out, pos, neg })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    /// Occurrences of `x_var` (1-based).
    pub fn positive_count(&self, var: usize) -> usize {
        self.pos[var - 1]
    }

    /// Occurrences of `¬x_var` (1-based).
    pub fn negative_count(&self, var: usize) -> usize {
        self.neg[var - 1]
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Variables (1-based) that appear in no clause.
    pub fn unused_vars(&self) -> Vec<usize> {
        (1..=self.num_vars).filter(|&v| self.pos[v - 1] + self.neg[v - 1] == 0).collect()
    }

    pub fn with_clause(&self, clause: Vec<i64>) -> Result<Self> {
        let mut c = self.clauses.clone();
        c.push(clause);
        CnfFormula::new(self.num_vars, c)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Strict DIMACS parse: a clause count differing from the header is an error.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let (f, warning) = parse_dimacs_lenient(text)?;
    match warning {
        Some(w) => Err(w),
        None => Ok(f),
    }
}

/// DIMACS parse that reports a header/clause-count mismatch as a warning.
pub fn parse_dimacs_lenient(text: &str) -> Result<(CnfFormula, Option<Error>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            let bad = || Error::Syntax { line: line_no, msg: format!("bad header {t:?}") };
            if header.is_some() || parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(bad());
            }
            let n = parts[2].parse().map_err(|_| bad())?;
            let m = parts[3].parse().map_err(|_| bad())?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::Syntax { line: line_no, msg: "clause before header".into() });
        };
        for tok in t.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::Syntax { line: line_no, msg: format!("bad literal {tok:?}") })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::Syntax { line: line_no, msg: "empty clause".into() });
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n {
                return Err(Error::Syntax { line: line_no, msg: format!("variable {lit} exceeds {n}") });
            } else {
                current.push(lit);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::Syntax { line: 0, msg: "missing 'p cnf' header".into() });
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    let warning = (clauses.len() != m).then_some(Error::HeaderMismatch { declared: m, found: clauses.len() });
    Ok((CnfFormula::new(n, clauses)?, warning))
}

/// Incidence network of a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfNetwork {
    pub network: TensorNetwork,
    /// Variables left out of the network; each doubles the count.
    pub unused_vars: usize,
}

/// Builds the incidence network: for each used variable `=_{a+1}` and
/// `=_{b+1}` vertices joined through a `≠_2` vertex, and one `OR_d` vertex per clause.
pub fn cnf_to_network(f: &CnfFormula) -> CnfNetwork {
    let mut b = NetworkBuilder::new();
    let used: Vec<usize> = (1..=f.num_vars).filter(|&v| f.pos[v - 1] + f.neg[v - 1] > 0).collect();
    // literal vertex of (variable, polarity) and its next free port
    let mut lit_vertex = vec![[usize::MAX; 2]; f.num_vars + 1];
    let mut next_port = vec![[1usize; 2]; f.num_vars + 1];
    for &v in &used {
        let p = b.add_vertex(Tensor::equality(f.pos[v - 1] + 1));
        let n = b.add_vertex(Tensor::equality(f.neg[v - 1] + 1));
        let neq = b.add_vertex(Tensor::dense_u64(2, &[0, 1, 1, 0]));
        b.connect_ports(p, 0, neq, 0);
        b.connect_ports(n, 0, neq, 1);
        lit_vertex[v] = [p, n];
    }
    for clause in &f.clauses {
        let c = b.add_vertex(Tensor::or(clause.len()));
        for (k, &lit) in clause.iter().enumerate() {
            let v = lit.unsigned_abs() as usize;
            let side = (lit < 0) as usize;
            let port = next_port[v][side];
            next_port[v][side] += 1;
            b.connect(Endpoint::new(lit_vertex[v][side], port), Endpoint::new(c, k));
        }
    }
    CnfNetwork {
        network: b.build().expect("incidence network is well formed"),
        unused_vars: f.num_vars - used.len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub strategy: Strategy,
    pub variant: Variant,
    pub seed: u64,
    pub trials: usize,
    pub threshold: usize,
    /// Reduce degrees before planarizing instead of after.
    pub reduce_first: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            strategy: Strategy::Separator,
            variant: Variant::Standard,
            seed: 0,
            trials: DEFAULT_TRIALS,
            threshold: DEFAULT_THRESHOLD,
            reduce_first: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub count: Count,
    pub stats: ContractionStats,
    pub unused_vars: usize,
    pub input_vertices: usize,
    pub input_edges: usize,
    pub crossings: usize,
    /// Vertices right after crossing replacement.
    pub planar_vertices: usize,
    /// The network that was contracted.
    pub final_network: TensorNetwork,
}

/// Incidence network → drawing → crossing gadgets → degree reduction → contraction.
pub fn run_pipeline(f: &CnfFormula, opts: &PipelineOptions) -> Result<PipelineReport> {
    let CnfNetwork { network, unused_vars } = cnf_to_network(f);
    let input_vertices = network.num_vertices();
    let input_edges = network.edges().len();
    let mut net = network;
    if opts.reduce_first {
        net = reduce_degree(&net, opts.threshold)?;
    }
    let drawing = circular_drawing_with_trials(&net, opts.seed, opts.trials)?;
    net = replace_crossings(&net, &drawing, opts.variant)?;
    let planar_vertices = net.num_vertices();
    ensure_planar(&net)?;
    if opts.variant == Variant::Restricted {
        net = expand_restricted(&net)?;
        ensure_planar(&net)?;
    }
    if !opts.reduce_first {
        net = reduce_degree(&net, opts.threshold)?;
        ensure_planar(&net)?;
    }
    let (value, stats) = contract_full(&net, opts.strategy)?;
    Ok(PipelineReport {
        count: value << unused_vars,
        stats,
        unused_vars,
        input_vertices,
        input_edges,
        crossings: drawing.crossing_count(),
        planar_vertices,
        final_network: net,
    })
}

fn ensure_planar(net: &TensorNetwork) -> Result<()> {
    if check_planarity(net).is_planar() {
        Ok(())
    } else {
        Err(Error::NotPlanarInput)
    }
}

/// Model count through the planar pipeline.
pub fn count_models(f: &CnfFormula, strategy: Strategy, variant: Variant) -> Result<Count> {
    let opts = PipelineOptions { strategy, variant, ..Default::default() };
    run_pipeline(f, &opts).map(|r| r.count)
}

/// Model count by enumerating all `2^n` assignments.
pub fn brute_count(f: &CnfFormula) -> Result<Count> {
    let n = f.num_vars;
    if n > BRUTE_MAX_VARS {
        return Err(Error::TooLarge { what: "variables", size: n, cap: BRUTE_MAX_VARS });
    }
    let masks: Vec<(u64, u64)> = f
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0u64, 0u64), |(p, q), &l| {
                let bit = 1u64 << (l.unsigned_abs() - 1);
                if l > 0 {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect();
    let mut count = 0u64;
    for x in 0u64..1 << n {
        if masks.iter().all(|&(p, q)| x & p != 0 || !x & q != 0) {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// `m <= c * n`.
pub fn is_sparse(f: &CnfFormula, c: f64) -> bool {
    (f.clauses.len() as f64) <= c * f.num_vars as f64
}

/// True iff every tensor is an OR, `=_3` (`[1,0,0,1]`) or `≠_3` (`[0,1,1,0]`).
pub fn restricted_audit(net: &TensorNetwork) -> bool {
    net.vertices().iter().all(|v| {
        let Some(w) = v.tensor.symmetric_weights() else { return false };
        let is_or = w.len() >= 2 && w[0].is_zero() && w[1..].iter().all(One::is_one);
        let c = |xs: [u8; 4]| w == xs.map(Count::from);
        is_or || c([1, 0, 0, 1]) || c([0, 1, 1, 0])
    })
}

/// Random formula with `num_clauses` clauses of `width` distinct variables.
pub fn random_cnf(num_vars: usize, num_clauses: usize, width: usize, rng: &mut impl Rng) -> CnfFormula {
    let width = width.min(num_vars).max(1);
    let clauses = (0..num_clauses)
        .map(|_| {
            let vars = rand::seq::index::sample(rng, num_vars, width);
            vars.iter()
                .map(|v| if rng.gen_bool(0.5) { v as i64 + 1 } else { -(v as i64 + 1) })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("generated literals are in range")
}
