//! The search-complement walk on `K_{2^n}`.
//!
//! One step of the walk with shift `S = sum_i |i><i| (x) |j ^ i><j|`, the
//! target-controlled coin `C' = H^{(x)n} (x) |t><t| + I (x) (I - |t><t|)` and a
//! Hadamard layer on the position register:
//!
//! ```text
//! U = S * C' * (I (x) H^{(x)n})
//! ```
//!
//! Starting from `|r> (x) |s>`, the measured position is `t ^ r` with
//! probability `1/4^n` and any other node with probability `1/4^n + 1/2^n`.
//!
//! Three independent routes compute the distribution: the dense operator, gate
//! application on the amplitude vector, and the closed form. [`cross_validate`]
//! checks that they agree.
//!
//! Suppression of `t ^ r` holds for every basis coin `r`. With the usual
//! `r = 0` start the suppressed node is the target itself, which is why the
//! coin-`|0>` block of the probability matrix is the one usually quoted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{complete_shift, ShiftModel};
use crate::linalg::{kron, ComplexMatrix};
use crate::probability::{node_probabilities, ProbabilityVector};
use crate::statevector::{apply_cnot, apply_controlled, apply_single, hadamard, ControlLine};
use crate::walk::{
    basis_state, evolution_operator, evolve, hadamard_coin, CoinSpec, EvolutionOperator,
    Provenance, WalkerState,
};

/// Largest `n` for which the `4^n x 4^n` operator is materialized.
pub const MAX_DENSE_QUBITS: usize = 6;
/// Largest `n` for the statevector path (`4^n` amplitudes).
pub const MAX_STATEVECTOR_QUBITS: usize = 12;
/// Agreement required between the three computation routes.
pub const CROSS_VALIDATION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementSpec {
    pub n: usize,
    pub target: usize,
    pub coin_init: usize,
    pub pos_init: usize,
}

impl ComplementSpec {
    pub fn new(n: usize, target: usize, coin_init: usize, pos_init: usize) -> Result<Self> {
        if !(1..=MAX_STATEVECTOR_QUBITS).contains(&n) {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                bound: format!("1..={MAX_STATEVECTOR_QUBITS}"),
            });
        }
        let nodes = 1usize << n;
        for (what, value) in [("target", target), ("coin_init", coin_init), ("pos_init", pos_init)] {
            if value >= nodes {
                return Err(Error::OutOfRange {
                    what,
                    value,
                    bound: format!("< {nodes}"),
                });
            }
        }
        Ok(Self {
            n,
            target,
            coin_init,
            pos_init,
        })
    }

    /// Walker starting at `|0> (x) |0>`.
    pub fn canonical(n: usize, target: usize) -> Result<Self> {
        Self::new(n, target, 0, 0)
    }

    pub fn n_nodes(&self) -> usize {
        1 << self.n
    }

    /// The node whose probability drops to `1/4^n`.
    pub fn suppressed_node(&self) -> usize {
        self.target ^ self.coin_init
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[serde(rename = "dense")]
    DenseOperator,
    Statevector,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::DenseOperator => "dense",
            Method::Statevector => "statevector",
            Method::ClosedForm => "closed-form",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplementResult {
    pub spec: ComplementSpec,
    pub distribution: ProbabilityVector,
    pub suppressed_node: usize,
    pub method: Method,
}

#[derive(Serialize)]
struct ResultJson<'a> {
    n: usize,
    target: usize,
    coin_init: usize,
    pos_init: usize,
    method: Method,
    distribution: &'a [f64],
    suppressed_node: usize,
}

impl ComplementResult {
    fn from_distribution(spec: ComplementSpec, distribution: ProbabilityVector, method: Method) -> Self {
        Self {
            spec,
            distribution,
            suppressed_node: spec.suppressed_node(),
            method,
        }
    }

    pub fn suppressed_probability(&self) -> f64 {
        self.distribution[self.suppressed_node]
    }

    /// Largest probability among the remaining nodes.
    pub fn other_probability(&self) -> f64 {
        self.distribution
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != self.suppressed_node)
            .map(|(_, &p)| p)
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ResultJson {
            n: self.spec.n,
            target: self.spec.target,
            coin_init: self.spec.coin_init,
            pos_init: self.spec.pos_init,
            method: self.method,
            distribution: self.distribution.as_slice(),
            suppressed_node: self.suppressed_node,
        })
        .expect("result serializes")
    }
}

fn check_dense(n: usize, target: usize) -> Result<()> {
    if !(1..=MAX_DENSE_QUBITS).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: format!("1..={MAX_DENSE_QUBITS} for dense operators"),
        });
    }
    if target >= 1 << n {
        return Err(Error::OutOfRange {
            what: "target",
            value: target,
            bound: format!("< {}", 1usize << n),
        });
    }
    Ok(())
}

/// `S * C' * (I (x) H^{(x)n})` as a dense matrix.
pub fn build_complement_operator(n: usize, target: usize) -> Result<EvolutionOperator> {
    build_complement_operator_with_shift(n, target, ShiftModel::Cnot)
}

/// The same construction over either complete-graph shift. Only the CNOT
/// shift gives the complement distribution.
pub fn build_complement_operator_with_shift(
    n: usize,
    target: usize,
    model: ShiftModel,
) -> Result<EvolutionOperator> {
    check_dense(n, target)?;
    let nodes = 1usize << n;
    let shift = complete_shift(n, model)?;
    // H on the coin at the target, identity elsewhere
    let oracle = crate::walk::coin_operator(
        &CoinSpec::Perturbed {
            base: ComplexMatrix::identity(nodes),
            marked: hadamard_coin(n)?,
            target,
        },
        n,
    )?;
    let position_layer = kron(&ComplexMatrix::identity(nodes), &hadamard_coin(n)?);
    let matrix = shift.matrix().matmul(&oracle)?.matmul(&position_layer)?;
    EvolutionOperator::from_matrix(
        matrix,
        Provenance {
            shift_model: Some(model),
            coin: format!("complement oracle(target={target})"),
            init_layer: false,
        },
    )
}

/// The unsynthesized form `S * C'' * H^{(x)2n}` with the perturbed coin
/// `C'' = H (x) I + (I - H) (x) |t><t|` and a Hadamard layer on both registers.
pub fn perturbed_search_operator(n: usize, target: usize) -> Result<EvolutionOperator> {
    check_dense(n, target)?;
    let shift = complete_shift(n, ShiftModel::Cnot)?;
    evolution_operator(&shift, &CoinSpec::perturbed(hadamard_coin(n)?, target), true)
}

pub fn run_complement_dense(spec: &ComplementSpec) -> Result<ComplementResult> {
    let u = build_complement_operator(spec.n, spec.target)?;
    dense_result(spec, &u)
}

fn dense_result(spec: &ComplementSpec, u: &EvolutionOperator) -> Result<ComplementResult> {
    let psi = evolve(&basis_state(spec.n, spec.coin_init, spec.pos_init)?, u, 1)?;
    Ok(ComplementResult::from_distribution(
        *spec,
        node_probabilities(&psi),
        Method::DenseOperator,
    ))
}

/// Exact distribution: `1/4^n` at `t ^ r`, `1/4^n + 1/2^n` elsewhere.
pub fn closed_form_distribution(spec: &ComplementSpec) -> ComplementResult {
    let nodes = spec.n_nodes();
    let low = 1.0 / (nodes as f64 * nodes as f64);
    let high = low + 1.0 / nodes as f64;
    let suppressed = spec.suppressed_node();
    let probs = (0..nodes).map(|k| if k == suppressed { low } else { high }).collect();
    ComplementResult::from_distribution(
        *spec,
        ProbabilityVector::new(probs).expect("closed form is normalized"),
        Method::ClosedForm,
    )
}

/// Applies the circuit gate by gate to the `4^n` amplitudes: Hadamards on the
/// position register, `H^{(x)n}` on the coin controlled by position `t`, then
/// the CNOT cascade from coin qubit `i` to position qubit `i`.
pub fn run_complement_statevector(spec: &ComplementSpec) -> Result<ComplementResult> {
    let n = spec.n;
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: format!("1..={MAX_STATEVECTOR_QUBITS}"),
        });
    }
    let psi = basis_state(n, spec.coin_init, spec.pos_init)?;
    let mut amps = psi.amplitudes().clone().into_vec();
    let h = hadamard();
    for q in 0..n {
        apply_single(&mut amps, q, &h);
    }
    let controls: Vec<ControlLine> = (0..n).map(|q| (q, (spec.target >> q) & 1 == 1)).collect();
    for i in 0..n {
        apply_controlled(&mut amps, &controls, n + i, &h);
    }
    for i in 0..n {
        apply_cnot(&mut amps, n + i, i);
    }
    let state = WalkerState::from_amplitudes(amps.into())?;
    Ok(ComplementResult::from_distribution(
        *spec,
        node_probabilities(&state),
        Method::Statevector,
    ))
}

/// Per-`n` summary of a cross-validation run.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub n: usize,
    pub cases: usize,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidationReport {
    pub n_max: usize,
    pub cases: usize,
    pub max_deviation: f64,
    pub levels: Vec<LevelReport>,
}

/// Basis starts checked for each target: all of them up to `n = 4`, a fixed
/// spread of corners and interior points beyond.
pub fn sampled_starts(n: usize) -> Vec<(usize, usize)> {
    let nodes = 1usize << n;
    if n <= 4 {
        return (0..nodes).flat_map(|r| (0..nodes).map(move |s| (r, s))).collect();
    }
    let picks = sampled_targets(n);
    picks.iter().flat_map(|&r| picks.iter().map(move |&s| (r, s))).collect()
}

/// Targets checked at level `n`: all of them up to `n = 4`, then a spread of four.
pub fn sampled_targets(n: usize) -> Vec<usize> {
    let nodes = 1usize << n;
    if n <= 4 {
        return (0..nodes).collect();
    }
    vec![0, 1, nodes / 2 + 1, nodes - 1]
}

/// Runs dense, statevector and closed-form routes for every `n <= n_max`,
/// the targets of [`sampled_targets`] and the starts of [`sampled_starts`].
pub fn cross_validate(n_max: usize) -> Result<CrossValidationReport> {
    cross_validate_with(n_max, build_complement_operator)
}

/// Same as [`cross_validate`] with a caller-supplied dense operator builder.
pub fn cross_validate_with(
    n_max: usize,
    build: impl Fn(usize, usize) -> Result<EvolutionOperator>,
) -> Result<CrossValidationReport> {
    if !(1..=MAX_DENSE_QUBITS).contains(&n_max) {
        return Err(Error::OutOfRange {
            what: "n_max",
            value: n_max,
            bound: format!("1..={MAX_DENSE_QUBITS}"),
        });
    }
    let mut levels = Vec::new();
    for n in 1..=n_max {
        let mut level = LevelReport {
            n,
            cases: 0,
            max_deviation: 0.0,
        };
        for target in sampled_targets(n) {
            let u = build(n, target)?;
            for (r, s) in sampled_starts(n) {
                let spec = ComplementSpec::new(n, target, r, s)?;
                let exact = closed_form_distribution(&spec);
                let routes = [dense_result(&spec, &u)?, run_complement_statevector(&spec)?];
                for got in &routes {
                    let dev = max_deviation(&got.distribution, &exact.distribution);
                    level.max_deviation = level.max_deviation.max(dev);
                    if dev >= CROSS_VALIDATION_TOL {
                        return Err(validation_error(&spec, got.method, Method::ClosedForm, dev));
                    }
                    let sum_dev = (got.distribution.sum() - 1.0).abs();
                    if sum_dev >= CROSS_VALIDATION_TOL {
                        return Err(validation_error(&spec, got.method, Method::ClosedForm, sum_dev));
                    }
                    if got.distribution.argmin() != spec.suppressed_node() {
                        return Err(validation_error(&spec, got.method, Method::ClosedForm, dev));
                    }
                }
                let dev = max_deviation(&routes[0].distribution, &routes[1].distribution);
                level.max_deviation = level.max_deviation.max(dev);
                if dev >= CROSS_VALIDATION_TOL {
                    return Err(validation_error(&spec, Method::DenseOperator, Method::Statevector, dev));
                }
                level.cases += 1;
            }
        }
        log::debug!("n={n}: {} cases, max deviation {:e}", level.cases, level.max_deviation);
        levels.push(level);
    }
    Ok(CrossValidationReport {
        n_max,
        cases: levels.iter().map(|l| l.cases).sum(),
        max_deviation: levels.iter().map(|l| l.max_deviation).fold(0.0, f64::max),
        levels,
    })
}

fn max_deviation(a: &ProbabilityVector, b: &ProbabilityVector) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::DenseOperator => "dense",
        Method::Statevector => "statevector",
        Method::ClosedForm => "closed-form",
    }
}

fn validation_error(spec: &ComplementSpec, left: Method, right: Method, deviation: f64) -> Error {
    Error::Validation {
        n: spec.n,
        target: spec.target,
        coin_init: spec.coin_init,
        pos_init: spec.pos_init,
        left: method_name(left),
        right: method_name(right),
        deviation,
    }
}
