//! Position measurement, the probability matrix of an operator, and its
//! collapsed multigraph.
//!
//! Column `coin * 2^n + position` of the probability matrix is the distribution
//! of the walker's position after `steps` applications of the operator to
//! `|coin> (x) |position>`. It is obtained by squaring `U^steps` entrywise and
//! summing its block rows.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{dim_err, Error, Result};
use crate::linalg::{hadamard_product, ComplexMatrix};
use crate::walk::{EvolutionOperator, WalkerState};

const SUM_TOL: f64 = 1e-10;

/// Default weight below which arcs are left out of the collapsed multigraph.
pub const DEFAULT_PRUNE_EPSILON: f64 = 1e-12;

/// Coin-block colours, cycled for more than four coin states.
pub const COIN_COLORS: [&str; 4] = ["red", "blue", "green", "black"];

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    /// Validates range and normalization.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidArgument("empty probability vector".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(-SUM_TOL..=1.0 + SUM_TOL).contains(*p)) {
            return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() >= SUM_TOL {
            return Err(Error::InvalidArgument(format!("probabilities sum to {sum}")));
        }
        Ok(Self { probs })
    }

    pub fn uniform(n_nodes: usize) -> Self {
        Self {
            probs: vec![1.0 / n_nodes as f64; n_nodes],
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.probs.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn sum(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Index of the smallest probability (first one on ties).
    pub fn argmin(&self) -> usize {
        self.probs
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, &p)| if p < best.1 { (i, p) } else { best })
            .0
    }
}

impl std::ops::Index<usize> for ProbabilityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.probs[i]
    }
}

/// `P[j] = sum_i |amplitude(i, j)|^2`.
pub fn node_probabilities(state: &WalkerState) -> ProbabilityVector {
    let nodes = state.n_nodes();
    let mut probs = vec![0.0; nodes];
    for (k, a) in state.amplitudes().as_slice().iter().enumerate() {
        probs[k % nodes] += a.norm_sqr();
    }
    ProbabilityVector { probs }
}

/// Half the L1 norm of `p - q`.
pub fn l1_distance(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    if p.n_nodes() != q.n_nodes() {
        return Err(dim_err("l1_distance", p.n_nodes(), q.n_nodes()));
    }
    Ok(0.5 * p.probs.iter().zip(&q.probs).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// `conj(U^steps) . U^steps`, the entrywise transition probabilities before the
/// block rows are summed. Exposed for debugging.
pub fn transition_probabilities(u: &EvolutionOperator, steps: usize) -> Result<ComplexMatrix> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let power = u.matrix().pow(steps)?;
    hadamard_product(&power.conj(), &power)
}

/// `n_nodes x (m * n_nodes)` row-block matrix of position distributions.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityMatrix {
    n_nodes: usize,
    coin_dim: usize,
    data: Vec<f64>,
}

impl ProbabilityMatrix {
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn coin_dim(&self) -> usize {
        self.coin_dim
    }

    pub fn n_cols(&self) -> usize {
        self.n_nodes * self.coin_dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n_cols() + col]
    }

    /// Distribution for the initial state `|coin> (x) |position>`.
    pub fn column(&self, coin: usize, position: usize) -> Vec<f64> {
        let col = coin * self.n_nodes + position;
        (0..self.n_nodes).map(|r| self.get(r, col)).collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.n_cols())
            .map(|c| (0..self.n_nodes).map(|r| self.get(r, c)).sum())
            .collect()
    }

    /// One matrix row per line, shortest round-trip decimal formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.n_nodes {
            let row: Vec<String> = (0..self.n_cols()).map(|c| self.get(r, c).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    /// Parses the CSV written by [`ProbabilityMatrix::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let rows: Vec<Vec<f64>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(',')
                    .map(|f| f.trim().parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let n_nodes = rows.len();
        if n_nodes == 0 || rows.iter().any(|r| r.len() != rows[0].len()) || rows[0].len() % n_nodes != 0 {
            return Err(Error::Parse("ragged or empty probability matrix".into()));
        }
        let coin_dim = rows[0].len() / n_nodes;
        Ok(Self {
            n_nodes,
            coin_dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Sidecar describing which column ranges belong to which coin state.
    pub fn sidecar(&self) -> MatrixSidecar {
        let bits = self.coin_dim.trailing_zeros() as usize;
        MatrixSidecar {
            rows: self.n_nodes,
            cols: self.n_cols(),
            row_meaning: "measured position node".into(),
            column_index: "coin * n_nodes + position of the initial basis state".into(),
            coin_blocks: (0..self.coin_dim)
                .map(|coin| CoinBlock {
                    coin,
                    label: format!("|{:0width$b}>", coin, width = bits.max(1)),
                    first_column: coin * self.n_nodes,
                    last_column: (coin + 1) * self.n_nodes - 1,
                    color: coin_color(coin).into(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixSidecar {
    pub rows: usize,
    pub cols: usize,
    pub row_meaning: String,
    pub column_index: String,
    pub coin_blocks: Vec<CoinBlock>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinBlock {
    pub coin: usize,
    pub label: String,
    pub first_column: usize,
    pub last_column: usize,
    pub color: String,
}

pub fn coin_color(coin: usize) -> &'static str {
    COIN_COLORS[coin % COIN_COLORS.len()]
}

/// Probability matrix of `u^steps`.
pub fn probability_matrix(u: &EvolutionOperator, steps: usize) -> Result<ProbabilityMatrix> {
    let v = transition_probabilities(u, steps)?;
    let nodes = u.n_nodes();
    let dim = nodes * nodes;
    let mut data = vec![0.0; nodes * dim];
    for row in 0..dim {
        let target = row % nodes;
        let acc = &mut data[target * dim..(target + 1) * dim];
        for (a, z) in acc.iter_mut().zip(v.row(row)) {
            *a += z.re;
        }
    }
    Ok(ProbabilityMatrix {
        n_nodes: nodes,
        coin_dim: nodes,
        data,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Arc {
    pub coin_block: usize,
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
}

/// Weighted arcs obtained by merging every same-endpoint arc of one coin block.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollapsedMultigraph {
    pub n_nodes: usize,
    pub coin_dim: usize,
    pub arcs: Vec<Arc>,
}

impl CollapsedMultigraph {
    pub fn from_probability_matrix(mp: &ProbabilityMatrix, prune_epsilon: f64) -> Self {
        let nodes = mp.n_nodes();
        let mut arcs = Vec::new();
        for coin in 0..mp.coin_dim() {
            for src in 0..nodes {
                for dst in 0..nodes {
                    let weight = mp.get(dst, coin * nodes + src);
                    if weight >= prune_epsilon {
                        arcs.push(Arc {
                            coin_block: coin,
                            src,
                            dst,
                            weight,
                        });
                    }
                }
            }
        }
        Self {
            n_nodes: nodes,
            coin_dim: mp.coin_dim(),
            arcs,
        }
    }

    /// Sum of outgoing weights for `(coin_block, src)`.
    pub fn out_weight(&self, coin_block: usize, src: usize) -> f64 {
        self.arcs
            .iter()
            .filter(|a| a.coin_block == coin_block && a.src == src)
            .map(|a| a.weight)
            .sum()
    }

    /// Graphviz digraph with one colour per coin block; labels carry the
    /// weight to six significant digits.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph collapsed {\n");
        for v in 0..self.n_nodes {
            let _ = writeln!(out, "  {v};");
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  {} -> {} [color=\"{}\", label=\"{}\", coin={}];",
                a.src,
                a.dst,
                coin_color(a.coin_block),
                format_significant(a.weight, 6),
                a.coin_block
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn collapse_multigraph(
    u: &EvolutionOperator,
    steps: usize,
    prune_epsilon: f64,
) -> Result<CollapsedMultigraph> {
    let mp = probability_matrix(u, steps)?;
    Ok(CollapsedMultigraph::from_probability_matrix(&mp, prune_epsilon))
}

/// Formats `x` with `digits` significant digits, dropping trailing zeros.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
