//! Coins, evolution operators and walker states.
//!
//! Every vector and operator on the walk space uses the coin-major composite
//! index `coin * 2^n + position`: the state is a stack of `2^n` position
//! subvectors, one per coin basis state.

use std::collections::BTreeMap;

use crate::error::{dim_err, Error, Result};
use crate::graphs::{qubits_for_dim, ShiftModel, ShiftOperator};
use crate::linalg::{
    apply, kron, unitarity_deviation, Complex, ComplexMatrix, ComplexVector, DEFAULT_TOL,
};

/// `H^{(x)n}`, built as an `n`-fold Kronecker power of the one-qubit Hadamard.
pub fn hadamard_coin(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: ">= 1".into(),
        });
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = ComplexMatrix::from_real(2, 2, &[s, s, s, -s])?;
    let mut acc = h.clone();
    for _ in 1..n {
        acc = kron(&acc, &h);
    }
    Ok(acc)
}

/// Grover diffusion coin `2/2^n J - I`.
pub fn grover_coin(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: ">= 1".into(),
        });
    }
    let dim = 1usize << n;
    let off = 2.0 / dim as f64;
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
        Complex::new(if i == j { off - 1.0 } else { off }, 0.0)
    }))
}

/// How the coin acts on each position.
#[derive(Clone, Debug)]
pub enum CoinSpec {
    /// The same coin everywhere: `C (x) I`.
    Uniform(ComplexMatrix),
    /// `sum_k C_k (x) |k><k|`; every position needs an entry.
    PositionDependent(BTreeMap<usize, ComplexMatrix>),
    /// `C0 (x) I + (C1 - C0) (x) |t><t|`: `marked` acts at `target`, `base`
    /// everywhere else.
    Perturbed {
        base: ComplexMatrix,
        marked: ComplexMatrix,
        target: usize,
    },
}

impl CoinSpec {
    /// Perturbed coin with the identity at the target.
    pub fn perturbed(base: ComplexMatrix, target: usize) -> Self {
        let dim = base.rows();
        CoinSpec::Perturbed {
            base,
            marked: ComplexMatrix::identity(dim),
            target,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoinSpec::Uniform(_) => "uniform".into(),
            CoinSpec::PositionDependent(_) => "position-dependent".into(),
            CoinSpec::Perturbed { target, .. } => format!("perturbed(target={target})"),
        }
    }

    fn constituents(&self) -> Vec<&ComplexMatrix> {
        match self {
            CoinSpec::Uniform(c) => vec![c],
            CoinSpec::PositionDependent(map) => map.values().collect(),
            CoinSpec::Perturbed { base, marked, .. } => vec![base, marked],
        }
    }
}

/// Full coin operator on the `4^n`-dimensional walk space.
pub fn coin_operator(spec: &CoinSpec, n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: ">= 1".into(),
        });
    }
    let nodes = 1usize << n;
    for c in spec.constituents() {
        if c.rows() != nodes || c.cols() != nodes {
            return Err(dim_err(
                "coin_operator",
                format!("{nodes}x{nodes} coin"),
                format!("{}x{}", c.rows(), c.cols()),
            ));
        }
        let dev = unitarity_deviation(c)?;
        if dev >= DEFAULT_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
    }
    let dim = nodes * nodes;
    match spec {
        CoinSpec::Uniform(c) => Ok(kron(c, &ComplexMatrix::identity(nodes))),
        CoinSpec::PositionDependent(map) => {
            if let Some(missing) = (0..nodes).find(|k| !map.contains_key(k)) {
                return Err(Error::IncompleteSpec(format!("no coin for position {missing}")));
            }
            if let Some(extra) = map.keys().find(|&&k| k >= nodes) {
                return Err(Error::IncompleteSpec(format!(
                    "coin given for position {extra}, graph has {nodes} nodes"
                )));
            }
            let mut m = ComplexMatrix::zeros(dim, dim);
            for (&k, c) in map {
                for a in 0..nodes {
                    for b in 0..nodes {
                        m[(a * nodes + k, b * nodes + k)] = c[(a, b)];
                    }
                }
            }
            Ok(m)
        }
        CoinSpec::Perturbed {
            base,
            marked,
            target,
        } => {
            if *target >= nodes {
                return Err(Error::OutOfRange {
                    what: "target",
                    value: *target,
                    bound: format!("< {nodes}"),
                });
            }
            let projector = ComplexMatrix::from_fn(nodes, nodes, |i, j| {
                Complex::new(if i == *target && j == *target { 1.0 } else { 0.0 }, 0.0)
            });
            let everywhere = kron(base, &ComplexMatrix::identity(nodes));
            let correction = kron(&marked.sub(base)?, &projector);
            everywhere.add(&correction)
        }
    }
}

/// Records how an evolution operator was built.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub shift_model: Option<ShiftModel>,
    pub coin: String,
    pub init_layer: bool,
}

/// Unitary one-step operator of the walk.
#[derive(Clone, Debug)]
pub struct EvolutionOperator {
    matrix: ComplexMatrix,
    n: usize,
    provenance: Provenance,
}

impl EvolutionOperator {
    /// Wraps an arbitrary matrix after checking its shape and unitarity.
    pub fn from_matrix(matrix: ComplexMatrix, provenance: Provenance) -> Result<Self> {
        let n = qubits_for_dim(matrix.rows())
            .filter(|_| matrix.is_square())
            .ok_or_else(|| {
                dim_err(
                    "EvolutionOperator",
                    "square matrix of dimension 4^n",
                    format!("{}x{}", matrix.rows(), matrix.cols()),
                )
            })?;
        let dev = unitarity_deviation(&matrix)?;
        if dev >= DEFAULT_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(Self {
            matrix,
            n,
            provenance,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(1 << (2 * n)),
            n,
            provenance: Provenance {
                shift_model: None,
                coin: "identity".into(),
                init_layer: false,
            },
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_nodes(&self) -> usize {
        1 << self.n
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// `S * C`, optionally followed (on the right) by `H^{(x)2n}` on both registers.
pub fn evolution_operator(
    s: &ShiftOperator,
    c: &CoinSpec,
    with_init_layer: bool,
) -> Result<EvolutionOperator> {
    let n = s.n();
    let coin = coin_operator(c, n)?;
    let mut matrix = s.matrix().matmul(&coin)?;
    if with_init_layer {
        matrix = matrix.matmul(&hadamard_coin(2 * n)?)?;
    }
    EvolutionOperator::from_matrix(
        matrix,
        Provenance {
            shift_model: s.model(),
            coin: c.label(),
            init_layer: with_init_layer,
        },
    )
}

/// Normalized amplitude vector over the coin-major composite basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkerState {
    n: usize,
    amplitudes: ComplexVector,
}

const NORM_TOL: f64 = 1e-10;

impl WalkerState {
    pub fn from_amplitudes(amplitudes: ComplexVector) -> Result<Self> {
        let n = qubits_for_dim(amplitudes.dim())
            .ok_or_else(|| dim_err("WalkerState", "4^n amplitudes", amplitudes.dim()))?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() >= NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "walker state has norm {norm}, expected 1"
            )));
        }
        Ok(Self { n, amplitudes })
    }

    /// Equal superposition over all `4^n` composite basis states.
    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << (2 * n);
        let a = Complex::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self {
            n,
            amplitudes: ComplexVector::from(vec![a; dim]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_nodes(&self) -> usize {
        1 << self.n
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// Amplitude of `|coin> (x) |position>`.
    pub fn amplitude(&self, coin: usize, position: usize) -> Complex {
        self.amplitudes[coin * self.n_nodes() + position]
    }

    pub fn to_csv(&self) -> String {
        self.amplitudes.to_csv()
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        Self::from_amplitudes(ComplexVector::from_csv(text)?)
    }
}

/// `|coin> (x) |position>`.
pub fn basis_state(n: usize, coin: usize, position: usize) -> Result<WalkerState> {
    let nodes = 1usize << n;
    for (what, value) in [("coin", coin), ("position", position)] {
        if value >= nodes {
            return Err(Error::OutOfRange {
                what,
                value,
                bound: format!("< {nodes}"),
            });
        }
    }
    Ok(WalkerState {
        n,
        amplitudes: ComplexVector::basis(nodes * nodes, coin * nodes + position)?,
    })
}

/// Applies `u` to `state` `steps` times.
pub fn evolve(state: &WalkerState, u: &EvolutionOperator, steps: usize) -> Result<WalkerState> {
    if u.n() != state.n() {
        return Err(dim_err("evolve", u.matrix().cols(), state.amplitudes.dim()));
    }
    let mut amplitudes = state.amplitudes.clone();
    for _ in 0..steps {
        amplitudes = apply(u.matrix(), &amplitudes)?;
    }
    Ok(WalkerState {
        n: state.n,
        amplitudes,
    })
}
