//! Scaling benchmarks: measured contraction rank against network size.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{random_cnf, run_pipeline, PipelineOptions};
use crate::engine::{build_plan_separator, execute_plan_with_cap, DEFAULT_RANK_CAP};
use crate::error::{Error, Result};
use crate::network::{Endpoint, NetworkBuilder, TensorNetwork};
use crate::tensor::{Count, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Grid,
    RandomPlanar,
    Cnf,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Family::Grid),
            "random-planar" => Ok(Family::RandomPlanar),
            "cnf" => Ok(Family::Cnf),
            _ => Err(Error::Format(format!("unknown family {s:?}"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Grid => "grid",
            Family::RandomPlanar => "random-planar",
            Family::Cnf => "cnf",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub max_rank: usize,
    pub wall_ms: u128,
    pub value_digest: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `log2(max_rank)` against `log2(N)`.
    pub slope: Option<f64>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("family,N,max_rank,wall_ms,value_digest\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{},{}\n", r.family, r.n, r.max_rank, r.wall_ms, r.value_digest));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    pub seed: u64,
    /// Record wall time; off gives byte-identical reports across runs.
    pub timing: bool,
    /// Only plans whose predicted rank is at most this are executed.
    pub exec_cap: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { seed: 0, timing: true, exec_cap: 18 }
    }
}

/// Marker digest for rows whose contraction was not run.
pub const RANK_OVERFLOW: &str = "rank-overflow";

/// First 16 decimal digits and the digit count, e.g. `1267650600228229~31`.
pub fn digest(value: &Count) -> String {
    let s = value.to_string();
    format!("{}~{}", &s[..s.len().min(16)], s.len())
}

/// `k x k` grid with all-ones symmetric tensors.
pub fn grid_network(k: usize) -> TensorNetwork {
    let neighbours = |r: usize, c: usize| {
        let mut v = Vec::new();
        if r > 0 {
            v.push((r - 1, c));
        }
        if c > 0 {
            v.push((r, c - 1));
        }
        if c + 1 < k {
            v.push((r, c + 1));
        }
        if r + 1 < k {
            v.push((r + 1, c));
        }
        v
    };
    let mut b = NetworkBuilder::new();
    for r in 0..k {
        for c in 0..k {
            let d = neighbours(r, c).len();
            b.add_vertex(Tensor::symmetric_u64(&vec![1; d + 1]));
        }
    }
    for r in 0..k {
        for c in 0..k {
            for (i, (r2, c2)) in neighbours(r, c).into_iter().enumerate() {
                if (r2, c2) > (r, c) {
                    let j = neighbours(r2, c2).iter().position(|&x| x == (r, c)).expect("symmetric");
                    b.connect(Endpoint::new(r * k + c, i), Endpoint::new(r2 * k + c2, j));
                }
            }
        }
    }
    b.build().expect("grid is well formed")
}

/// Planar network on `n` vertices: a partial grid with random cell
/// diagonals, some edges dropped, and random small dense tensors.
pub fn random_planar_network(n: usize, rng: &mut impl Rng) -> TensorNetwork {
    let k = (1..).find(|k| k * k >= n).unwrap_or(1);
    let mut edges = Vec::new();
    for v in 0..n {
        let c = v % k;
        let mut cand = vec![];
        if c + 1 < k {
            cand.push(v + 1);
        }
        cand.push(v + k);
        if c + 1 < k && rng.gen_bool(0.5) {
            cand.push(v + k + 1);
        }
        for w in cand {
            if w < n && rng.gen_bool(0.8) {
                edges.push((v, w));
            }
        }
    }
    let mut deg = vec![0usize; n];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut b = NetworkBuilder::new();
    for &d in &deg {
        let table: Vec<u64> = (0..1usize << d).map(|_| rng.gen_range(0..3)).collect();
        b.add_vertex(Tensor::dense_u64(d, &table));
    }
    let mut used = vec![0usize; n];
    for (x, y) in edges {
        let (px, py) = (used[x], used[y]);
        used[x] += 1;
        used[y] += 1;
        b.connect(Endpoint::new(x, px), Endpoint::new(y, py));
    }
    b.build().expect("valid")
}

fn run_network(family: Family, net: &TensorNetwork, opts: &BenchOptions) -> Result<BenchRow> {
    let start = Instant::now();
    let plan = build_plan_separator(net)?;
    let planned = plan.max_rank();
    let (max_rank, value_digest) = if planned <= opts.exec_cap {
        match execute_plan_with_cap(net, &plan, DEFAULT_RANK_CAP) {
            Ok((v, stats)) => (stats.max_rank, digest(&v)),
            Err(Error::RankOverflow { .. }) => (planned, RANK_OVERFLOW.to_string()),
            Err(e) => return Err(e),
        }
    } else {
        (planned, RANK_OVERFLOW.to_string())
    };
    Ok(BenchRow {
        family,
        n: net.num_vertices(),
        max_rank,
        wall_ms: if opts.timing { start.elapsed().as_millis() } else { 0 },
        value_digest,
    })
}

/// Runs one family over the given sizes (vertex counts; grids round to the
/// nearest square, CNF sizes are variable counts).
pub fn run_bench(family: Family, sizes: &[usize], opts: &BenchOptions) -> Result<BenchReport> {
    let mut rows = Vec::new();
    for (i, &size) in sizes.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
        let row = match family {
            Family::Grid => {
                let k = ((size as f64).sqrt().round() as usize).max(1);
                run_network(family, &grid_network(k), opts)?
            }
            Family::RandomPlanar => run_network(family, &random_planar_network(size.max(1), &mut rng), opts)?,
            Family::Cnf => {
                let n = size.max(1);
                let phi = random_cnf(n, n + n / 2, 3, &mut rng);
                let start = Instant::now();
                let popts = PipelineOptions { seed: opts.seed, ..Default::default() };
                let (max_rank, value_digest) = match run_pipeline(&phi, &popts) {
                    Ok(r) => (r.stats.max_rank, digest(&r.count)),
                    Err(Error::RankOverflow { rank, .. }) => (rank, RANK_OVERFLOW.to_string()),
                    Err(e) => return Err(e),
                };
                BenchRow {
                    family,
                    n,
                    max_rank,
                    wall_ms: if opts.timing { start.elapsed().as_millis() } else { 0 },
                    value_digest,
                }
            }
        };
        rows.push(row);
    }
    rows.sort_by_key(|r| (r.family, r.n));
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.max_rank > 0 && r.n > 1)
        .map(|r| ((r.n as f64).log2(), (r.max_rank as f64).log2()))
        .collect();
    Ok(BenchReport { rows, slope: fit_slope(&points) })
}

/// Least-squares slope; `None` with fewer than two distinct x values.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (points.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}
