//! Exact plan execution.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::network::{EdgeRef, TensorNetwork};
use crate::planar::{check_planarity, Planarity};
use crate::tensor::{Count, Tensor};

use super::factor::Factor;
use super::plan::{build_plan_greedy, build_plan_separator, ContractionPlan, PlanNodeKind};

/// Default bound: no intermediate table may hold more than `2^30` entries.
pub const DEFAULT_RANK_CAP: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ContractionStats {
    /// Largest arity of any tensor formed, leaves included.
    pub max_rank: usize,
    /// Largest number of stored (nonzero) entries in any table.
    pub table_entries_peak: usize,
    pub merges: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Separator,
    Greedy,
    Brute,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "separator" => Ok(Strategy::Separator),
            "greedy" => Ok(Strategy::Greedy),
            "brute" => Ok(Strategy::Brute),
            _ => Err(Error::Format(format!("unknown strategy {s:?}"))),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Separator => "separator",
            Strategy::Greedy => "greedy",
            Strategy::Brute => "brute",
        })
    }
}

fn var_of(net: &TensorNetwork, r: EdgeRef) -> usize {
    match r {
        EdgeRef::Internal(e) => e,
        EdgeRef::External(j) => net.edges().len() + j,
    }
}

/// Runs `plan`, returning the final factor (over the external edges).
fn run(net: &TensorNetwork, plan: &ContractionPlan, cap: u32, stats: &mut ContractionStats) -> Result<Factor> {
    plan.validate(net)?;
    let mut slots: Vec<Option<Factor>> = Vec::with_capacity(plan.nodes.len());
    let note = |f: &Factor, stats: &mut ContractionStats| {
        stats.max_rank = stats.max_rank.max(f.rank());
        stats.table_entries_peak = stats.table_entries_peak.max(f.table.len());
    };
    for node in &plan.nodes {
        let f = match node.kind {
            PlanNodeKind::Leaf(id) => {
                let pos = net.position(id).ok_or(Error::UnknownVertex(id))?;
                let vars: Vec<usize> = net.incidence(pos).iter().map(|&r| var_of(net, r)).collect();
                Factor::leaf(&net.vertices()[pos].tensor, &vars)
            }
            PlanNodeKind::Merge(a, b) => {
                let fa = slots[a].take().expect("child consumed once");
                let fb = slots[b].take().expect("child consumed once");
                stats.merges += 1;
                fa.merge(&fb, cap)?
            }
        };
        note(&f, stats);
        if f.table.is_empty() {
            // a zero factor makes the whole network zero
            let mut vars: Vec<usize> = (0..net.external().len()).map(|j| net.edges().len() + j).collect();
            vars.sort_unstable();
            return Ok(Factor { vars, table: Default::default() });
        }
        slots.push(Some(f));
    }
    Ok(slots
        .pop()
        .flatten()
        .unwrap_or_else(|| Factor { vars: Vec::new(), table: [(Vec::new(), Count::one())].into() }))
}

/// Exact value of a closed network along `plan`, with the default rank cap.
pub fn execute_plan(net: &TensorNetwork, plan: &ContractionPlan) -> Result<(Count, ContractionStats)> {
    execute_plan_with_cap(net, plan, DEFAULT_RANK_CAP)
}

pub fn execute_plan_with_cap(
    net: &TensorNetwork,
    plan: &ContractionPlan,
    cap: u32,
) -> Result<(Count, ContractionStats)> {
    if !net.is_closed() {
        return Err(Error::HasExternalEdges(net.external().len()));
    }
    // predicted ranks are exact factor arities, so refuse before allocating
    if plan.max_rank() > cap as usize {
        return Err(Error::RankOverflow { rank: plan.max_rank(), cap: cap as usize });
    }
    let start = Instant::now();
    let mut stats = ContractionStats::default();
    let f = run(net, plan, cap, &mut stats)?;
    stats.wall_time = start.elapsed();
    Ok((f.value(&[]), stats))
}

/// Dense function table of an open network over its external edges, in
/// external-edge order.
pub fn open_function_table(net: &TensorNetwork) -> Result<Tensor> {
    let plan = build_plan_greedy(net);
    let mut stats = ContractionStats::default();
    let f = run(net, &plan, DEFAULT_RANK_CAP, &mut stats)?;
    let k = net.external().len();
    let m = net.edges().len();
    // position of external j among the factor's variables
    let at: Vec<Option<usize>> = (0..k).map(|j| f.vars.iter().position(|&v| v == m + j)).collect();
    let mut table = Vec::with_capacity(1 << k);
    for idx in 0..1usize << k {
        let mut bits = vec![false; f.vars.len()];
        for (j, p) in at.iter().enumerate() {
            if let Some(p) = p {
                bits[*p] = idx >> (k - 1 - j) & 1 == 1;
            }
        }
        table.push(if f.table.is_empty() { Count::zero() } else { f.value(&bits) });
    }
    Tensor::dense(k, table)
}

/// Fully contracts a closed network with the chosen strategy.
pub fn contract_full(net: &TensorNetwork, strategy: Strategy) -> Result<(Count, ContractionStats)> {
    if !net.is_closed() {
        return Err(Error::HasExternalEdges(net.external().len()));
    }
    match strategy {
        Strategy::Separator => {
            if let Planarity::NotPlanar(_) = check_planarity(net) {
                return Err(Error::NotPlanarInput);
            }
            let plan = build_plan_separator(net)?;
            execute_plan(net, &plan)
        }
        Strategy::Greedy => execute_plan(net, &build_plan_greedy(net)),
        Strategy::Brute => {
            let start = Instant::now();
            let value = net.evaluate_brute(&[])?;
            let stats = ContractionStats {
                max_rank: net.edges().len(),
                table_entries_peak: 0,
                merges: 0,
                wall_time: start.elapsed(),
            };
            Ok((value, stats))
        }
    }
}
