//! Complete-graph adjacency matrices and the two shift-operator models built
//! from them.
//!
//! A shift operator is assembled from a decomposition of the adjacency matrix
//! into 0/1 blocks. The SWAP model uses one single-entry block per ordered pair
//! of nodes; the CNOT model uses the XOR permutations `j -> j ^ i`, which makes
//! the shift block-diagonal in the coin. Node `k` is labelled by the `n`-bit
//! binary string of `k`, least significant bit first on the qubit wires.

use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};
use crate::linalg::{is_unitary, Complex, ComplexMatrix, DEFAULT_TOL};

/// Largest register size accepted by [`complete_adjacency`].
pub const MAX_ADJACENCY_QUBITS: usize = 12;

/// Square matrix of arc multiplicities, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    n_nodes: usize,
    entries: Vec<u32>,
}

impl Adjacency {
    pub fn new(n_nodes: usize, entries: Vec<u32>) -> Result<Self> {
        if n_nodes == 0 || entries.len() != n_nodes * n_nodes {
            return Err(dim_err("Adjacency::new", n_nodes * n_nodes, entries.len()));
        }
        Ok(Self { n_nodes, entries })
    }

    fn zeros(n_nodes: usize) -> Self {
        Self {
            n_nodes,
            entries: vec![0; n_nodes * n_nodes],
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n_nodes + col]
    }

    fn set(&mut self, row: usize, col: usize, value: u32) {
        self.entries[row * self.n_nodes + col] = value;
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.chunks(self.n_nodes).map(|r| r.iter().sum()).collect()
    }

    pub fn is_complete_with_loops(&self) -> bool {
        self.entries.iter().all(|&e| e == 1)
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n_nodes, self.n_nodes, |i, j| {
            Complex::new(self.get(i, j) as f64, 0.0)
        })
    }

    fn add_assign(&mut self, other: &Adjacency) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }
}

/// Adjacency of the complete graph with self-loops on `2^n` nodes.
pub fn complete_adjacency(n: usize) -> Result<Adjacency> {
    if !(1..=MAX_ADJACENCY_QUBITS).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: format!("1..={MAX_ADJACENCY_QUBITS}"),
        });
    }
    let nodes = 1usize << n;
    Ok(Adjacency {
        n_nodes: nodes,
        entries: vec![1; nodes * nodes],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftModel {
    Swap,
    Cnot,
}

impl std::fmt::Display for ShiftModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ShiftModel::Swap => "swap",
            ShiftModel::Cnot => "cnot",
        })
    }
}

/// Blocks whose sum is a complete-graph adjacency.
///
/// SWAP model: `blocks[i * m + j]` is `B_ij`, the single-entry matrix `|i><j|`.
/// CNOT model: `blocks[i]` is `B_i`, the permutation `j -> j ^ i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftDecomposition {
    model: ShiftModel,
    n: usize,
    blocks: Vec<Adjacency>,
}

impl ShiftDecomposition {
    pub fn model(&self) -> ShiftModel {
        self.model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_nodes(&self) -> usize {
        1 << self.n
    }

    pub fn blocks(&self) -> &[Adjacency] {
        &self.blocks
    }

    /// `B_ij` for the SWAP model.
    pub fn swap_block(&self, i: usize, j: usize) -> Option<&Adjacency> {
        match self.model {
            ShiftModel::Swap => self.blocks.get(i * self.n_nodes() + j),
            ShiftModel::Cnot => None,
        }
    }

    /// `B_i` for the CNOT model.
    pub fn cnot_block(&self, i: usize) -> Option<&Adjacency> {
        match self.model {
            ShiftModel::Cnot => self.blocks.get(i),
            ShiftModel::Swap => None,
        }
    }

    pub fn block_sum(&self) -> Adjacency {
        let mut sum = Adjacency::zeros(self.n_nodes());
        for b in &self.blocks {
            sum.add_assign(b);
        }
        sum
    }
}

/// Splits a complete-graph adjacency into shift blocks for `model`.
pub fn decompose(adj: &Adjacency, model: ShiftModel) -> Result<ShiftDecomposition> {
    let nodes = adj.n_nodes();
    if !nodes.is_power_of_two() || nodes < 2 || !adj.is_complete_with_loops() {
        return Err(Error::UnsupportedGraph(
            "only complete graphs with self-loops on 2^n nodes can be decomposed".into(),
        ));
    }
    let n = nodes.trailing_zeros() as usize;
    let blocks = match model {
        ShiftModel::Swap => (0..nodes * nodes)
            .map(|ij| {
                let mut b = Adjacency::zeros(nodes);
                b.set(ij / nodes, ij % nodes, 1);
                b
            })
            .collect(),
        ShiftModel::Cnot => (0..nodes)
            .map(|i| {
                let mut b = Adjacency::zeros(nodes);
                for k in 0..nodes {
                    b.set(k ^ i, k, 1);
                }
                b
            })
            .collect(),
    };
    Ok(ShiftDecomposition { model, n, blocks })
}

/// Bipartite shift acting on the coin-major space of dimension `4^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftOperator {
    matrix: ComplexMatrix,
    model: Option<ShiftModel>,
    n: usize,
}

impl ShiftOperator {
    /// Wraps an externally supplied matrix without checking the Kraus
    /// conditions; use [`verify_kraus`] on the result.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let n = qubits_for_dim(matrix.rows())
            .filter(|_| matrix.is_square())
            .ok_or_else(|| {
                dim_err(
                    "ShiftOperator::from_matrix",
                    "square matrix of dimension 4^n",
                    format!("{}x{}", matrix.rows(), matrix.cols()),
                )
            })?;
        Ok(Self {
            matrix,
            model: None,
            n,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `None` for operators loaded from a file.
    pub fn model(&self) -> Option<ShiftModel> {
        self.model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_nodes(&self) -> usize {
        1 << self.n
    }

    pub fn to_csv(&self) -> String {
        self.matrix.to_csv()
    }
}

/// `n` such that `dim == 4^n`, for `n >= 1`.
pub fn qubits_for_dim(dim: usize) -> Option<usize> {
    if dim < 4 || !dim.is_power_of_two() || dim.trailing_zeros() % 2 != 0 {
        return None;
    }
    Some(dim.trailing_zeros() as usize / 2)
}

/// Places the transposed blocks into the shift matrix and validates it.
pub fn assemble_shift(dec: &ShiftDecomposition) -> Result<ShiftOperator> {
    let nodes = dec.n_nodes();
    let dim = nodes * nodes;
    let mut matrix = ComplexMatrix::zeros(dim, dim);
    let mut place = |bi: usize, bj: usize, block: &Adjacency| {
        for r in 0..nodes {
            for c in 0..nodes {
                let v = block.get(c, r);
                if v != 0 {
                    matrix[(bi * nodes + r, bj * nodes + c)] = Complex::new(v as f64, 0.0);
                }
            }
        }
    };
    match dec.model {
        ShiftModel::Swap => {
            for i in 0..nodes {
                for j in 0..nodes {
                    place(i, j, &dec.blocks[i * nodes + j]);
                }
            }
        }
        ShiftModel::Cnot => {
            for (i, b) in dec.blocks.iter().enumerate() {
                place(i, i, b);
            }
        }
    }
    let shift = ShiftOperator {
        matrix,
        model: Some(dec.model),
        n: dec.n,
    };
    if !verify_kraus(&shift, DEFAULT_TOL) || !is_unitary(&shift.matrix, DEFAULT_TOL)? {
        return Err(Error::InvalidDecomposition(format!(
            "{} blocks do not satisfy the Kraus conditions",
            dec.model
        )));
    }
    Ok(shift)
}

/// Shift operator of `K_{2^n}` in the given model.
pub fn complete_shift(n: usize, model: ShiftModel) -> Result<ShiftOperator> {
    assemble_shift(&decompose(&complete_adjacency(n)?, model)?)
}

/// Checks `sum_i B_ik^dagger B_il = delta_kl I` over block columns and
/// `sum_j B_kj B_lj^dagger = delta_kl I` over block rows, where `B_ij` are the
/// `2^n x 2^n` blocks of the shift.
pub fn verify_kraus(s: &ShiftOperator, tol: f64) -> bool {
    let m = s.matrix();
    let nodes = s.n_nodes();
    let columns = block_gram(m, nodes, tol);
    let rows = block_gram(&m.dagger(), nodes, tol);
    columns && rows
}

/// Block form of `m^dagger m == I`: block `(k, l)` of the Gram matrix is
/// `sum_i B_ik^dagger B_il`. Accumulated over nonzero row entries.
fn block_gram(m: &ComplexMatrix, block: usize, tol: f64) -> bool {
    let dim = m.rows();
    let zero = Complex::new(0.0, 0.0);
    let mut gram = vec![zero; dim * dim];
    let mut nz: Vec<(usize, Complex)> = Vec::new();
    for r in 0..dim {
        nz.clear();
        nz.extend(m.row(r).iter().copied().enumerate().filter(|(_, z)| *z != zero));
        for &(a, za) in &nz {
            for &(b, zb) in &nz {
                gram[a * dim + b] += za.conj() * zb;
            }
        }
    }
    let blocks = dim / block;
    for k in 0..blocks {
        for l in 0..blocks {
            for p in 0..block {
                for q in 0..block {
                    let expected = if k == l && p == q { 1.0 } else { 0.0 };
                    let got = gram[(k * block + p) * dim + l * block + q];
                    if (got - Complex::new(expected, 0.0)).norm() >= tol {
                        return false;
                    }
                }
            }
        }
    }
    true
}
